//! Bounded brute-force model finding for equational theories.
//!
//! Operation tables are enumerated cell by cell in a fixed order
//! (signature order, then row-major within each table), pruned as soon as
//! a partially filled table definitely violates an identity. The output
//! order is the lexicographic order of the concatenated tables and does
//! not depend on the worker count; a capped run is an exact prefix of the
//! uncapped one.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::algebra::{next_env, Algebra, EvalError, Identity, Signature, Term};
use crate::exec;
use crate::maltsev::pair_permutes_at;
use crate::paperlab::MonoidStructure;
use crate::relcalc::{
    enumerate_compatible, properties, BinRelation, EnumLimits, RelConstraint,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("size range {min}..={max} is invalid (need 1 <= min <= max <= 64)")]
    InvalidSizes { min: usize, max: usize },
    #[error("identity {index} is ill-formed: {source}")]
    BadIdentity {
        index: usize,
        #[source]
        source: EvalError,
    },
    #[error("permutation degree in the predicate must be >= 2, got {n}")]
    PredicateDegree { n: usize },
}

/// Caps for a search run.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    /// Bound on the number of table-cell assignments examined.
    pub candidate_cap: u64,
    /// Optional wall-clock budget. A run cut off by time keeps the
    /// deterministic order but its length depends on the machine.
    pub time_budget: Option<Duration>,
    /// Worker threads; cap-limited and complete runs are bitwise
    /// identical for every value.
    pub workers: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            candidate_cap: 10_000_000,
            time_budget: None,
            workers: 1,
        }
    }
}

/// Relational side conditions from a closed catalog; each reuses an
/// already-tested module operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    None,
    /// A compatible preorder that is not symmetric.
    HasNoncongruencePreorder,
    /// An ordered congruence pair whose alternating composites differ.
    HasNonpermutingCongruencePair { n: usize },
    /// A monoid whose addition is a homomorphism (unit on a one-element
    /// subuniverse).
    HasInternalMonoid,
}

/// What to search for.
#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub signature: Signature,
    pub identities: Vec<Identity>,
    pub min_size: usize,
    pub max_size: usize,
    pub predicate: Predicate,
    /// Keep one representative per isomorphism class (carrier
    /// permutations fixing constants). Off by default so counts stay raw.
    pub dedup_isomorphic: bool,
    pub limits: SearchLimits,
}

impl SearchSpec {
    pub fn new(signature: Signature, identities: Vec<Identity>, sizes: (usize, usize)) -> Self {
        SearchSpec {
            signature,
            identities,
            min_size: sizes.0,
            max_size: sizes.1,
            predicate: Predicate::None,
            dedup_isomorphic: false,
            limits: SearchLimits::default(),
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.min_size < 1 || self.min_size > self.max_size || self.max_size > 64 {
            return Err(SearchError::InvalidSizes {
                min: self.min_size,
                max: self.max_size,
            });
        }
        if let Predicate::HasNonpermutingCongruencePair { n } = self.predicate {
            if n < 2 {
                return Err(SearchError::PredicateDegree { n });
            }
        }
        for (index, id) in self.identities.iter().enumerate() {
            for term in [&id.lhs, &id.rhs] {
                if let Err(source) = validate_term(&self.signature, term, id.vars, &mut Vec::new())
                {
                    return Err(SearchError::BadIdentity { index, source });
                }
            }
        }
        Ok(())
    }
}

fn validate_term(
    sig: &Signature,
    term: &Term,
    vars: usize,
    path: &mut Vec<usize>,
) -> Result<(), EvalError> {
    match term {
        Term::Var(i) => {
            if *i >= vars {
                return Err(EvalError::VarOutOfRange {
                    index: *i,
                    env_len: vars,
                    path: path.clone(),
                });
            }
            Ok(())
        }
        Term::App { op, args } => {
            let idx = sig.index_of(op).ok_or(EvalError::UnknownSymbol {
                name: op.clone(),
                path: path.clone(),
            })?;
            if sig.arity(idx) != args.len() {
                return Err(EvalError::ArityMismatch {
                    name: op.clone(),
                    expected: sig.arity(idx),
                    got: args.len(),
                    path: path.clone(),
                });
            }
            for (k, a) in args.iter().enumerate() {
                path.push(k);
                validate_term(sig, a, vars, path)?;
                path.pop();
            }
            Ok(())
        }
    }
}

/// Which limit stopped a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitHit {
    CandidateCap { cap: u64 },
    TimeBudget,
}

/// Result of [`enumerate_models`]: the models found, how much of the
/// space was examined, and whether the sweep finished.
#[derive(Debug, Clone)]
pub struct ModelEnumeration {
    pub models: Vec<Algebra>,
    pub candidates_examined: u64,
    pub complete: bool,
    pub limit: Option<LimitHit>,
}

// terms with symbol indices resolved against the search signature
enum PTerm {
    Var(usize),
    App(usize, Vec<PTerm>),
}

fn compile(sig: &Signature, term: &Term) -> PTerm {
    match term {
        Term::Var(i) => PTerm::Var(*i),
        Term::App { op, args } => PTerm::App(
            sig.index_of(op).expect("validated"),
            args.iter().map(|a| compile(sig, a)).collect(),
        ),
    }
}

fn eval_partial(tables: &[Vec<Option<usize>>], size: usize, t: &PTerm, env: &[usize]) -> Option<usize> {
    match t {
        PTerm::Var(i) => Some(env[*i]),
        PTerm::App(op, args) => {
            let mut idx = 0;
            for a in args {
                idx = idx * size + eval_partial(tables, size, a, env)?;
            }
            tables[*op][idx]
        }
    }
}

struct CompiledIdentity {
    lhs: PTerm,
    rhs: PTerm,
    envs: Vec<Vec<usize>>,
}

struct BranchRun {
    nodes_used: u64,
    timed_out: bool,
    hit_cap: bool,
    /// models with the branch-local node count at which each was emitted
    models: Vec<(u64, Vec<Vec<usize>>)>,
}

struct Dfs<'a> {
    size: usize,
    cells: &'a [(usize, usize)],
    identities: &'a [CompiledIdentity],
    cap: u64,
    deadline: Option<Instant>,
    nodes: u64,
    hit_cap: bool,
    timed_out: bool,
    models: Vec<(u64, Vec<Vec<usize>>)>,
}

impl Dfs<'_> {
    fn consistent(&self, tables: &[Vec<Option<usize>>]) -> bool {
        for id in self.identities {
            for env in &id.envs {
                let l = eval_partial(tables, self.size, &id.lhs, env);
                let r = eval_partial(tables, self.size, &id.rhs, env);
                if let (Some(l), Some(r)) = (l, r) {
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, tables: &mut Vec<Vec<Option<usize>>>, depth: usize) {
        if depth == self.cells.len() {
            let concrete: Vec<Vec<usize>> = tables
                .iter()
                .map(|t| t.iter().map(|c| c.expect("leaf is fully assigned")).collect())
                .collect();
            self.models.push((self.nodes, concrete));
            return;
        }
        let (op, idx) = self.cells[depth];
        for v in 0..self.size {
            if self.nodes >= self.cap {
                self.hit_cap = true;
                return;
            }
            if let Some(deadline) = self.deadline {
                if self.nodes.is_multiple_of(1024) && Instant::now() >= deadline {
                    self.timed_out = true;
                    return;
                }
            }
            self.nodes += 1;
            tables[op][idx] = Some(v);
            if self.consistent(tables) {
                self.run(tables, depth + 1);
            }
            tables[op][idx] = None;
            if self.hit_cap || self.timed_out {
                return;
            }
        }
    }
}

/// All models of the search spec, size by size, in lexicographic table
/// order.
pub fn enumerate_models(spec: &SearchSpec) -> Result<ModelEnumeration, SearchError> {
    spec.validate()?;
    let deadline = spec.limits.time_budget.map(|b| Instant::now() + b);
    let mut out = ModelEnumeration {
        models: Vec::new(),
        candidates_examined: 0,
        complete: true,
        limit: None,
    };
    for size in spec.min_size..=spec.max_size {
        let remaining = spec.limits.candidate_cap - out.candidates_examined;
        let run = enumerate_size(spec, size, remaining, deadline);
        out.candidates_examined += run.nodes_used;
        let mut size_models: Vec<Algebra> = run
            .models
            .into_iter()
            .map(|(_, tables)| {
                Algebra::new(size, spec.signature.clone(), tables).expect("tables are total")
            })
            .collect();
        if spec.dedup_isomorphic {
            let mut seen = std::collections::HashSet::new();
            size_models.retain(|m| seen.insert(canonical_algebra_key(m)));
        }
        out.models.extend(size_models);
        if run.hit_cap {
            out.complete = false;
            out.limit = Some(LimitHit::CandidateCap {
                cap: spec.limits.candidate_cap,
            });
            break;
        }
        if run.timed_out {
            out.complete = false;
            out.limit = Some(LimitHit::TimeBudget);
            break;
        }
    }
    Ok(out)
}

fn enumerate_size(
    spec: &SearchSpec,
    size: usize,
    cap: u64,
    deadline: Option<Instant>,
) -> BranchRun {
    let cells: Vec<(usize, usize)> = (0..spec.signature.len())
        .flat_map(|op| {
            (0..size.pow(spec.signature.arity(op) as u32)).map(move |idx| (op, idx))
        })
        .collect();
    let identities: Vec<CompiledIdentity> = spec
        .identities
        .iter()
        .map(|id| {
            let mut envs = Vec::new();
            let mut env = vec![0usize; id.vars];
            loop {
                envs.push(env.clone());
                if id.vars == 0 || !next_env(&mut env, size) {
                    break;
                }
            }
            CompiledIdentity {
                lhs: compile(&spec.signature, &id.lhs),
                rhs: compile(&spec.signature, &id.rhs),
                envs,
            }
        })
        .collect();

    let fresh_tables = || -> Vec<Vec<Option<usize>>> {
        (0..spec.signature.len())
            .map(|op| vec![None; size.pow(spec.signature.arity(op) as u32)])
            .collect()
    };

    if cells.is_empty() {
        // empty signature: the single carrier is vacuously a model
        return BranchRun {
            nodes_used: 0,
            timed_out: false,
            hit_cap: false,
            models: vec![(0, Vec::new())],
        };
    }

    let run_branch = |&first_value: &usize| -> BranchRun {
        let mut dfs = Dfs {
            size,
            cells: &cells,
            identities: &identities,
            cap,
            deadline,
            nodes: 0,
            hit_cap: false,
            timed_out: false,
            models: Vec::new(),
        };
        let mut tables = fresh_tables();
        if cap == 0 {
            return BranchRun {
                nodes_used: 0,
                timed_out: false,
                hit_cap: true,
                models: Vec::new(),
            };
        }
        dfs.nodes = 1;
        let (op, idx) = cells[0];
        tables[op][idx] = Some(first_value);
        if dfs.consistent(&tables) {
            dfs.run(&mut tables, 1);
        }
        BranchRun {
            nodes_used: dfs.nodes,
            timed_out: dfs.timed_out,
            hit_cap: dfs.hit_cap,
            models: dfs.models,
        }
    };

    let first_values: Vec<usize> = (0..size).collect();
    let branches = exec::chunk_map(spec.limits.workers, &first_values, run_branch);

    // stitch the branches back into the sequential order and cut at the cap
    let mut merged = BranchRun {
        nodes_used: 0,
        timed_out: false,
        hit_cap: false,
        models: Vec::new(),
    };
    for branch in branches {
        for (local, tables) in branch.models {
            if merged.nodes_used + local <= cap {
                merged.models.push((merged.nodes_used + local, tables));
            }
        }
        if branch.timed_out {
            merged.nodes_used += branch.nodes_used;
            merged.timed_out = true;
            break;
        }
        if branch.hit_cap || merged.nodes_used + branch.nodes_used > cap {
            merged.nodes_used = cap;
            merged.hit_cap = true;
            break;
        }
        merged.nodes_used += branch.nodes_used;
    }
    merged
}

/// Minimal concatenated-table form of an algebra under carrier
/// permutations that fix the value of every constant.
pub fn canonical_algebra_key(alg: &Algebra) -> Vec<usize> {
    let size = alg.size();
    let fixed: Vec<usize> = (0..alg.signature().len())
        .filter(|&op| alg.signature().arity(op) == 0)
        .map(|op| alg.apply(op, &[]))
        .collect();
    let mut best: Option<Vec<usize>> = None;
    let mut perm: Vec<usize> = (0..size).collect();
    loop {
        if fixed.iter().all(|&c| perm[c] == c) {
            let mut key = Vec::new();
            for op in 0..alg.signature().len() {
                let arity = alg.signature().arity(op);
                let mut transformed = vec![0usize; size.pow(arity as u32)];
                let mut args = vec![0usize; arity];
                loop {
                    let mut idx = 0;
                    for &a in &args {
                        idx = idx * size + perm[a];
                    }
                    transformed[idx] = perm[alg.apply(op, &args)];
                    if arity == 0 || !next_env(&mut args, size) {
                        break;
                    }
                }
                key.extend(transformed);
            }
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.expect("identity permutation always qualifies")
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// The object a predicate attaches to a found model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredicateWitness {
    /// `Predicate::None` holds trivially.
    Trivial,
    NoncongruencePreorder(BinRelation),
    NonpermutingCongruencePair {
        r: BinRelation,
        s: BinRelation,
        n: usize,
        pair: (usize, usize),
    },
    InternalMonoid(MonoidStructure),
}

/// Outcome of [`find_model`].
#[derive(Debug, Clone)]
pub enum FindOutcome {
    Found {
        model: Algebra,
        witness: PredicateWitness,
    },
    /// The full range was enumerated and no model satisfies the
    /// predicate; conclusive for the searched sizes.
    NoneWithinBounds,
    /// A limit was hit before the range was exhausted.
    Inconclusive(LimitHit),
}

fn eval_predicate(model: &Algebra, predicate: Predicate) -> Option<PredicateWitness> {
    let rel_limits = EnumLimits {
        max_size: model.size(),
        workers: 1,
    };
    match predicate {
        Predicate::None => Some(PredicateWitness::Trivial),
        Predicate::HasNoncongruencePreorder => {
            let preorders = enumerate_compatible(model, RelConstraint::Preorder, &rel_limits)
                .expect("within the per-model cap");
            preorders
                .into_iter()
                .find(|p| !properties(p).symmetric)
                .map(PredicateWitness::NoncongruencePreorder)
        }
        Predicate::HasNonpermutingCongruencePair { n } => {
            let congruences =
                enumerate_compatible(model, RelConstraint::Equivalence, &rel_limits)
                    .expect("within the per-model cap");
            for r in &congruences {
                for s in &congruences {
                    let verdict = pair_permutes_at(r, s, n).expect("n validated");
                    if let crate::maltsev::PermutOutcome::Fails(
                        crate::maltsev::PermutWitness::AlternatingComposite { pair, .. },
                    ) = verdict.outcome
                    {
                        return Some(PredicateWitness::NonpermutingCongruencePair {
                            r: r.clone(),
                            s: s.clone(),
                            n,
                            pair,
                        });
                    }
                }
            }
            None
        }
        Predicate::HasInternalMonoid => enumerate_internal_monoids(model)
            .into_iter()
            .next()
            .map(PredicateWitness::InternalMonoid),
    }
}

/// First model (in enumeration order) satisfying the predicate, with the
/// predicate's witness attached.
pub fn find_model(spec: &SearchSpec) -> Result<FindOutcome, SearchError> {
    let enumeration = enumerate_models(spec)?;
    for model in &enumeration.models {
        if let Some(witness) = eval_predicate(model, spec.predicate) {
            return Ok(FindOutcome::Found {
                model: model.clone(),
                witness,
            });
        }
    }
    if enumeration.complete {
        Ok(FindOutcome::NoneWithinBounds)
    } else {
        Ok(FindOutcome::Inconclusive(
            enumeration.limit.expect("incomplete runs carry their limit"),
        ))
    }
}

/// All internal monoid structures on `alg`: the unit spans a one-element
/// subuniverse and the addition is a homomorphism out of the square.
/// Ordered by unit, then lexicographically by table.
pub fn enumerate_internal_monoids(alg: &Algebra) -> Vec<MonoidStructure> {
    let size = alg.size();
    let square = crate::algebra::product_algebra(alg, alg).expect("same signature");
    let mut out = Vec::new();
    for unit in 0..size {
        let closed = (0..alg.signature().len()).all(|op| {
            let args = vec![unit; alg.signature().arity(op)];
            alg.apply(op, &args) == unit
        });
        if !closed {
            continue;
        }
        // unit row and column are forced; enumerate the rest
        let free: Vec<(usize, usize)> = (0..size)
            .flat_map(|x| (0..size).map(move |y| (x, y)))
            .filter(|&(x, y)| x != unit && y != unit)
            .collect();
        let mut values = vec![0usize; free.len()];
        loop {
            let mut table = vec![0usize; size * size];
            for e in 0..size {
                table[unit * size + e] = e;
                table[e * size + unit] = e;
            }
            for (&(x, y), &v) in free.iter().zip(&values) {
                table[x * size + y] = v;
            }
            if let Ok(monoid) = MonoidStructure::new(size, table, unit) {
                let hom = crate::algebra::is_homomorphism(&monoid.as_map(), &square, alg)
                    .expect("dimensions match by construction");
                if hom.holds() {
                    out.push(monoid);
                }
            }
            if free.is_empty() || !next_env(&mut values, size) {
                break;
            }
        }
    }
    out
}
