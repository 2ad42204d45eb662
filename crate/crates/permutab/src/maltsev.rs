//! Deciding and cross-validating congruence n-permutability.
//!
//! Three routes are implemented and checked against each other:
//!
//! - pairwise permutation of relations: `RSRS... = SRSR...` with `n`
//!   alternating factors on each side;
//! - the Hagemann relation conditions, quantified exhaustively over all
//!   compatible reflexive relations on an algebra: the converse and the
//!   n-th power of every such relation must lie inside its (n-1)-st power;
//! - Hagemann-Mitschke term search: the free ternary algebra of the
//!   variety generated by a finite algebra is its ternary clone, the
//!   subalgebra of functions `carrier^3 -> carrier` generated by the three
//!   projections, so a complete clone sweep decides whether a chain
//!   `t_1..t_{n-1}` with `t_1(x,y,y)=x`, `t_i(x,x,y)=t_{i+1}(x,y,y)` and
//!   `t_{n-1}(x,x,y)=y` exists in that variety.
//!
//! A capped clone sweep is reported as inconclusive, never as a
//! refutation.

use std::collections::HashMap;

use thiserror::Error;

use crate::algebra::{next_env, Algebra, EvalError, Identity, Signature, Term};
use crate::exec;
use crate::relcalc::{
    compose, converse, enumerate_compatible, relation_power, BinRelation, EnumLimits,
    RelConstraint, RelError,
};
use crate::report::{CheckItem, Report, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MaltsevError {
    #[error("n-permutability is defined for n >= 2, got {n}")]
    DegreeTooSmall { n: usize },
    #[error(transparent)]
    Relation(#[from] RelError),
}

/// Clone generation stopped at the cap with the partial count.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("ternary clone exceeded the cap of {cap} operations ({generated} generated so far)")]
pub struct CloneCapExceeded {
    pub cap: usize,
    pub generated: usize,
}

/// Cap and worker count for clone generation. The result, including
/// provenance terms and generation order, is identical for every worker
/// count.
#[derive(Debug, Clone, Copy)]
pub struct CloneLimits {
    pub cap: usize,
    pub workers: usize,
}

impl Default for CloneLimits {
    fn default() -> Self {
        CloneLimits {
            cap: 100_000,
            workers: 1,
        }
    }
}

/// A tabulated finitary operation on a carrier, with the first term that
/// produced it during clone generation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOperation {
    size: usize,
    arity: usize,
    table: Vec<usize>,
    provenance: Option<Term>,
}

impl TermOperation {
    /// Wraps a raw table with no provenance. Panics on an ill-shaped or
    /// out-of-range table.
    pub fn new(size: usize, arity: usize, table: Vec<usize>) -> Self {
        assert!(size >= 1, "empty carrier");
        assert_eq!(table.len(), size.pow(arity as u32), "table length");
        for &v in &table {
            assert!(v < size, "table entry out of range");
        }
        TermOperation {
            size,
            arity,
            table,
            provenance: None,
        }
    }

    /// Tabulates `term` over all argument tuples of the given arity and
    /// keeps it as provenance.
    pub fn from_term(alg: &Algebra, term: &Term, arity: usize) -> Result<Self, EvalError> {
        let mut table = Vec::with_capacity(alg.size().pow(arity as u32));
        let mut env = vec![0usize; arity];
        loop {
            table.push(crate::algebra::eval_term(alg, term, &env)?);
            if !next_env(&mut env, alg.size()) {
                break;
            }
        }
        Ok(TermOperation {
            size: alg.size(),
            arity,
            table,
            provenance: Some(term.clone()),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn provenance(&self) -> Option<&Term> {
        self.provenance.as_ref()
    }

    pub fn apply(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        let mut idx = 0;
        for &a in args {
            idx = idx * self.size + a;
        }
        self.table[idx]
    }
}

/// The ternary clone of `alg`: all functions `carrier^3 -> carrier`
/// generated from the three projections by pointwise application of the
/// basic operations (constants adjoined automatically), deduplicated by
/// table and returned in breadth-first generation order.
pub fn ternary_clone(
    alg: &Algebra,
    limits: &CloneLimits,
) -> Result<Vec<TermOperation>, CloneCapExceeded> {
    let n = alg.size();
    let cells = n * n * n;
    let mut elems: Vec<TermOperation> = Vec::new();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();

    let push = |elems: &mut Vec<TermOperation>,
                    seen: &mut HashMap<Vec<usize>, usize>,
                    table: Vec<usize>,
                    prov: Term|
     -> Result<bool, CloneCapExceeded> {
        if seen.contains_key(&table) {
            return Ok(false);
        }
        if elems.len() >= limits.cap {
            return Err(CloneCapExceeded {
                cap: limits.cap,
                generated: elems.len(),
            });
        }
        seen.insert(table.clone(), elems.len());
        elems.push(TermOperation {
            size: n,
            arity: 3,
            table,
            provenance: Some(prov),
        });
        Ok(true)
    };

    // projections, then constants, in a fixed order
    for v in 0..3 {
        let mut table = Vec::with_capacity(cells);
        let mut env = vec![0usize; 3];
        loop {
            table.push(env[v]);
            if !next_env(&mut env, n) {
                break;
            }
        }
        push(&mut elems, &mut seen, table, Term::var(v))?;
    }
    for op in 0..alg.signature().len() {
        if alg.signature().arity(op) == 0 {
            let c = alg.apply(op, &[]);
            push(
                &mut elems,
                &mut seen,
                vec![c; cells],
                Term::constant(alg.signature().name(op)),
            )?;
        }
    }

    let mut frontier_start = 0;
    while frontier_start < elems.len() {
        let current = elems.len();
        // all applications with at least one argument in the frontier,
        // in (symbol, lexicographic tuple) order
        let mut work: Vec<(usize, Vec<usize>)> = Vec::new();
        for op in 0..alg.signature().len() {
            let arity = alg.signature().arity(op);
            if arity == 0 {
                continue;
            }
            let mut picks = vec![0usize; arity];
            loop {
                if picks.iter().any(|&i| i >= frontier_start) {
                    work.push((op, picks.clone()));
                }
                if !next_env(&mut picks, current) {
                    break;
                }
            }
        }
        let tables = exec::chunk_map(limits.workers, &work, |(op, picks)| {
            let mut table = Vec::with_capacity(cells);
            let mut args = vec![0usize; alg.signature().arity(*op)];
            for cell in 0..cells {
                for (slot, &i) in args.iter_mut().zip(picks.iter()) {
                    *slot = elems[i].table[cell];
                }
                table.push(alg.apply(*op, &args));
            }
            table
        });
        frontier_start = current;
        for ((op, picks), table) in work.into_iter().zip(tables) {
            let prov = Term::app(
                alg.signature().name(op),
                picks
                    .iter()
                    .map(|&i| elems[i].provenance().expect("clone elements carry terms").clone()),
            );
            push(&mut elems, &mut seen, table, prov)?;
        }
    }
    Ok(elems)
}

/// Verdict of an n-permutability check, with a re-verifiable witness on
/// failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutabilityVerdict {
    pub n: usize,
    pub outcome: PermutOutcome,
}

impl PermutabilityVerdict {
    pub fn holds(&self) -> bool {
        matches!(self.outcome, PermutOutcome::Holds)
    }

    fn holds_at(n: usize) -> Self {
        PermutabilityVerdict {
            n,
            outcome: PermutOutcome::Holds,
        }
    }

    fn fails_at(n: usize, witness: PermutWitness) -> Self {
        PermutabilityVerdict {
            n,
            outcome: PermutOutcome::Fails(witness),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermutOutcome {
    Holds,
    Fails(PermutWitness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermutWitness {
    /// `pair` separates the alternating composites `rsrs...` and
    /// `srsr...`; `in_r_first` tells which side contains it.
    AlternatingComposite {
        r: BinRelation,
        s: BinRelation,
        pair: (usize, usize),
        in_r_first: bool,
    },
    /// `pair` is in the converse of `relation` but not in its (n-1)-st
    /// power.
    ConverseEscapes {
        relation: BinRelation,
        pair: (usize, usize),
    },
    /// `pair` is in the n-th power of `relation` but not in its (n-1)-st.
    PowerEscapes {
        relation: BinRelation,
        pair: (usize, usize),
    },
}

/// Compares the alternating composites of `r` and `s` with `n` factors on
/// each side.
pub fn pair_permutes_at(
    r: &BinRelation,
    s: &BinRelation,
    n: usize,
) -> Result<PermutabilityVerdict, MaltsevError> {
    if n < 2 {
        return Err(MaltsevError::DegreeTooSmall { n });
    }
    let mut r_first = r.clone();
    let mut s_first = s.clone();
    for k in 1..n {
        let (next_r, next_s) = if k % 2 == 1 {
            (compose(&r_first, s)?, compose(&s_first, r)?)
        } else {
            (compose(&r_first, r)?, compose(&s_first, s)?)
        };
        r_first = next_r;
        s_first = next_s;
    }
    let d1 = r_first.first_pair_not_in(&s_first);
    let d2 = s_first.first_pair_not_in(&r_first);
    let witness = match (d1, d2) {
        (None, None) => return Ok(PermutabilityVerdict::holds_at(n)),
        (Some(p), None) => (p, true),
        (None, Some(p)) => (p, false),
        (Some(p), Some(q)) => {
            if p <= q {
                (p, true)
            } else {
                (q, false)
            }
        }
    };
    Ok(PermutabilityVerdict::fails_at(
        n,
        PermutWitness::AlternatingComposite {
            r: r.clone(),
            s: s.clone(),
            pair: witness.0,
            in_r_first: witness.1,
        },
    ))
}

/// Hagemann's conditions at degree `n`: for every compatible reflexive
/// relation `R` on `alg`, both the converse of `R` and the n-th power of
/// `R` must lie in the (n-1)-st power. Reports the first failing relation
/// (enumeration order) with the condition and pair.
pub fn hagemann_check(
    alg: &Algebra,
    n: usize,
    limits: &EnumLimits,
) -> Result<PermutabilityVerdict, MaltsevError> {
    if n < 2 {
        return Err(MaltsevError::DegreeTooSmall { n });
    }
    for relation in enumerate_compatible(alg, RelConstraint::Reflexive, limits)? {
        let lower = relation_power(&relation, n - 1)?;
        if let Some(pair) = converse(&relation).first_pair_not_in(&lower) {
            return Ok(PermutabilityVerdict::fails_at(
                n,
                PermutWitness::ConverseEscapes { relation, pair },
            ));
        }
        if let Some(pair) = relation_power(&relation, n)?.first_pair_not_in(&lower) {
            return Ok(PermutabilityVerdict::fails_at(
                n,
                PermutWitness::PowerEscapes { relation, pair },
            ));
        }
    }
    Ok(PermutabilityVerdict::holds_at(n))
}

/// Runs [`pair_permutes_at`] over all ordered pairs of congruences of
/// `alg`.
pub fn congruence_permutability_check(
    alg: &Algebra,
    n: usize,
    limits: &EnumLimits,
) -> Result<PermutabilityVerdict, MaltsevError> {
    if n < 2 {
        return Err(MaltsevError::DegreeTooSmall { n });
    }
    let congruences = enumerate_compatible(alg, RelConstraint::Equivalence, limits)?;
    for r in &congruences {
        for s in &congruences {
            let verdict = pair_permutes_at(r, s, n)?;
            if !verdict.holds() {
                return Ok(verdict);
            }
        }
    }
    Ok(PermutabilityVerdict::holds_at(n))
}

/// Outcome of a Hagemann-Mitschke chain search. `Absent` is conclusive
/// for the variety generated by the algebra (the clone was fully
/// saturated); a capped sweep is `Inconclusive`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HmSearch {
    Chain(Vec<TermOperation>),
    Absent,
    Inconclusive(CloneCapExceeded),
}

impl HmSearch {
    pub fn chain(&self) -> Option<&[TermOperation]> {
        match self {
            HmSearch::Chain(c) => Some(c),
            _ => None,
        }
    }
}

/// Searches the ternary clone of `alg` for a Hagemann-Mitschke chain of
/// length `n-1`. The reported chain is the lexicographically least in
/// generation order, so witnesses are reproducible.
pub fn find_hm_terms(
    alg: &Algebra,
    n: usize,
    limits: &CloneLimits,
) -> Result<HmSearch, MaltsevError> {
    if n < 2 {
        return Err(MaltsevError::DegreeTooSmall { n });
    }
    let clone = match ternary_clone(alg, limits) {
        Ok(c) => c,
        Err(cap) => return Ok(HmSearch::Inconclusive(cap)),
    };
    Ok(match hm_chain_in_clone(alg.size(), &clone, n) {
        Some(indices) => HmSearch::Chain(indices.into_iter().map(|i| clone[i].clone()).collect()),
        None => HmSearch::Absent,
    })
}

/// `(s,t) -> e(s,t,t)` of a ternary table, flattened over pairs.
fn left_signature(size: usize, table: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(size * size);
    for s in 0..size {
        for t in 0..size {
            out.push(table[(s * size + t) * size + t]);
        }
    }
    out
}

/// `(s,t) -> e(s,s,t)`.
fn right_signature(size: usize, table: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(size * size);
    for s in 0..size {
        for t in 0..size {
            out.push(table[(s * size + s) * size + t]);
        }
    }
    out
}

fn hm_chain_in_clone(size: usize, clone: &[TermOperation], n: usize) -> Option<Vec<usize>> {
    let len = n - 1;
    let l_sigs: Vec<Vec<usize>> = clone.iter().map(|e| left_signature(size, &e.table)).collect();
    let r_sigs: Vec<Vec<usize>> = clone
        .iter()
        .map(|e| right_signature(size, &e.table))
        .collect();
    let first: Vec<usize> = (0..size).flat_map(|s| (0..size).map(move |_| s)).collect();
    let last: Vec<usize> = (0..size).flat_map(|_| 0..size).collect();

    let mut by_left: HashMap<&[usize], Vec<usize>> = HashMap::new();
    for (i, sig) in l_sigs.iter().enumerate() {
        by_left.entry(sig.as_slice()).or_default().push(i);
    }

    // can[pos][e]: element e at position pos (0-based) extends to a full
    // chain; filled from the last position backwards
    let mut can = vec![vec![false; clone.len()]; len];
    for (e, sig) in r_sigs.iter().enumerate() {
        can[len - 1][e] = *sig == last;
    }
    for pos in (0..len.saturating_sub(1)).rev() {
        for e in 0..clone.len() {
            can[pos][e] = by_left
                .get(r_sigs[e].as_slice())
                .is_some_and(|next| next.iter().any(|&e2| can[pos + 1][e2]));
        }
    }

    // forward greedy pick of the least index at each position
    let mut chain = Vec::with_capacity(len);
    let start = by_left
        .get(first.as_slice())?
        .iter()
        .copied()
        .find(|&e| can[0][e])?;
    chain.push(start);
    for pos in 1..len {
        let prev = chain[pos - 1];
        let next = by_left
            .get(r_sigs[prev].as_slice())?
            .iter()
            .copied()
            .find(|&e| can[pos][e])?;
        chain.push(next);
    }
    Some(chain)
}

/// Outcome of a [`permutability_degree`] sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeSearch {
    Degree { n: usize, chain: Vec<TermOperation> },
    NoneUpTo { max_n: usize },
    Inconclusive(CloneCapExceeded),
}

/// Least `n` in `2..=max_n` for which Hagemann-Mitschke terms exist in the
/// variety generated by `alg`.
pub fn permutability_degree(
    alg: &Algebra,
    max_n: usize,
    limits: &CloneLimits,
) -> Result<DegreeSearch, MaltsevError> {
    if max_n < 2 {
        return Err(MaltsevError::DegreeTooSmall { n: max_n });
    }
    let clone = match ternary_clone(alg, limits) {
        Ok(c) => c,
        Err(cap) => return Ok(DegreeSearch::Inconclusive(cap)),
    };
    for n in 2..=max_n {
        if let Some(indices) = hm_chain_in_clone(alg.size(), &clone, n) {
            return Ok(DegreeSearch::Degree {
                n,
                chain: indices.into_iter().map(|i| clone[i].clone()).collect(),
            });
        }
    }
    Ok(DegreeSearch::NoneUpTo { max_n })
}

/// Signature `t1..t_{k}` of ternary symbols, used to re-install a found
/// chain as a standalone algebra.
pub fn chain_signature(terms: usize) -> Signature {
    Signature::new((1..=terms).map(|i| (format!("θ{i}"), 3))).expect("distinct names")
}

/// Packages a chain of ternary operations as an algebra over
/// [`chain_signature`].
pub fn chain_algebra(size: usize, chain: &[TermOperation]) -> Algebra {
    let tables = chain.iter().map(|op| op.table.clone()).collect();
    Algebra::new(size, chain_signature(chain.len()), tables).expect("chain tables are total")
}

/// The Hagemann-Mitschke identities for a chain of `n-1` ternary symbols
/// named as in [`chain_signature`].
pub fn hm_identities(n: usize) -> Vec<Identity> {
    let names: Vec<String> = (1..n).map(|i| format!("θ{i}")).collect();
    hm_identities_named(&names)
}

/// The same identities over arbitrary ternary symbol names, one per chain
/// position.
pub fn hm_identities_named(names: &[String]) -> Vec<Identity> {
    assert!(!names.is_empty(), "a chain needs at least one symbol");
    let x = Term::var(0);
    let y = Term::var(1);
    let theta = |i: usize, a: &Term, b: &Term, c: &Term| {
        Term::app(names[i].as_str(), [a.clone(), b.clone(), c.clone()])
    };
    let k = names.len();
    let mut out = vec![Identity::new(2, theta(0, &x, &y, &y), x.clone())];
    for i in 0..k - 1 {
        out.push(Identity::new(
            2,
            theta(i, &x, &x, &y),
            theta(i + 1, &x, &y, &y),
        ));
    }
    out.push(Identity::new(2, theta(k - 1, &x, &x, &y), y.clone()));
    out
}

/// Instance-checks the equivalences asserted between the three routes: a
/// chain at `n` forces both the Hagemann conditions and congruence
/// permutation at `n`, and the existence of a chain at any degree forces
/// every compatible preorder to equal its converse.
pub fn cross_validate(
    alg: &Algebra,
    max_n: usize,
    clone_limits: &CloneLimits,
    enum_limits: &EnumLimits,
) -> Result<Report, MaltsevError> {
    if max_n < 2 {
        return Err(MaltsevError::DegreeTooSmall { n: max_n });
    }
    let mut report = Report::new("cross-validate");
    let clone = match ternary_clone(alg, clone_limits) {
        Ok(c) => c,
        Err(cap) => {
            report.push(CheckItem::inconclusive(
                "ternary clone",
                format!("{cap}; implications not checked"),
            ));
            return Ok(report);
        }
    };
    report.push(
        CheckItem::pass("ternary clone").with_note(format!("{} operations", clone.len())),
    );
    let mut found_any = false;
    for n in 2..=max_n {
        match hm_chain_in_clone(alg.size(), &clone, n) {
            Some(indices) => {
                found_any = true;
                report.push(
                    CheckItem::pass(format!("hm-terms at n={n}"))
                        .with_note(format!("chain {indices:?}")),
                );
                for (name, verdict) in [
                    (
                        format!("hagemann conditions at n={n}"),
                        hagemann_check(alg, n, enum_limits)?,
                    ),
                    (
                        format!("congruence permutation at n={n}"),
                        congruence_permutability_check(alg, n, enum_limits)?,
                    ),
                ] {
                    report.push(match verdict.outcome {
                        PermutOutcome::Holds => CheckItem::pass(name),
                        PermutOutcome::Fails(w) => {
                            CheckItem::fail(name, permut_witness(&w)).critical()
                        }
                    });
                }
            }
            None => {
                report.push(
                    CheckItem::pass(format!("hm-terms at n={n}"))
                        .with_note("no chain (conclusive)"),
                );
            }
        }
    }
    if found_any {
        let preorders = enumerate_compatible(alg, RelConstraint::Preorder, enum_limits)?;
        let mut item = CheckItem::pass("compatible preorders are symmetric");
        for p in &preorders {
            if let Some(pair) = converse(p).first_pair_not_in(p) {
                item = CheckItem::fail(
                    "compatible preorders are symmetric",
                    Witness::RelationPair {
                        relation: p.pairs(),
                        pair,
                    },
                )
                .critical();
                break;
            }
        }
        report.push(item.with_note(format!("{} compatible preorders", preorders.len())));
    }
    Ok(report)
}

/// Renders a permutability witness as report data.
pub fn permut_witness(w: &PermutWitness) -> Witness {
    match w {
        PermutWitness::AlternatingComposite { r, s, pair, .. } => {
            Witness::RelationPairOfRelations {
                left: r.pairs(),
                right: s.pairs(),
                pair: *pair,
            }
        }
        PermutWitness::ConverseEscapes { relation, pair }
        | PermutWitness::PowerEscapes { relation, pair } => Witness::RelationPair {
            relation: relation.pairs(),
            pair: *pair,
        },
    }
}
