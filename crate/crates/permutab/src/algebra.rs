//! Finite algebras as operation tables, term evaluation and exhaustive
//! identity checking.
//!
//! Carriers are dense index sets `0..size`; display names live in an
//! optional label map so that table indexing stays trivial. Operation
//! tables are stored flat in row-major order with the leftmost argument
//! as the major index; this order is part of the interchange format.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("carrier must be non-empty")]
    EmptyCarrier,
    #[error("duplicate operation symbol `{name}`")]
    DuplicateSymbol { name: String },
    #[error("expected {expected} operation tables, got {got}")]
    TableCount { expected: usize, got: usize },
    #[error("table for `{op}` has {got} entries, expected {expected}")]
    TableLength {
        op: String,
        expected: usize,
        got: usize,
    },
    #[error("table for `{op}` contains {value} at position {index}, outside carrier 0..{size}")]
    EntryOutOfRange {
        op: String,
        index: usize,
        value: usize,
        size: usize,
    },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("operations have different signatures")]
    SignatureMismatch,
    #[error("seed element {element} outside carrier 0..{size}")]
    SeedOutOfRange { element: usize, size: usize },
    #[error("map has {got} entries, expected {expected}")]
    MapLength { expected: usize, got: usize },
    #[error("map image {value} at {index} outside codomain 0..{cod}")]
    MapOutOfRange {
        index: usize,
        value: usize,
        cod: usize,
    },
    #[error("map dimensions {dom}->{cod} do not match algebras {expected_dom}->{expected_cod}")]
    MapDimensions {
        dom: usize,
        cod: usize,
        expected_dom: usize,
        expected_cod: usize,
    },
    #[error("maps are not composable: first ends at {mid}, second starts at {expected}")]
    NotComposable { mid: usize, expected: usize },
}

/// Term evaluation errors, each carrying the path (child indices from the
/// root) of the offending subterm.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("unknown operation `{name}` at subterm {path:?}")]
    UnknownSymbol { name: String, path: Vec<usize> },
    #[error("operation `{name}` expects {expected} arguments, got {got} at subterm {path:?}")]
    ArityMismatch {
        name: String,
        expected: usize,
        got: usize,
        path: Vec<usize>,
    },
    #[error("variable {index} out of range for environment of length {env_len} at subterm {path:?}")]
    VarOutOfRange {
        index: usize,
        env_len: usize,
        path: Vec<usize>,
    },
    #[error("environment value {value} outside carrier 0..{size}")]
    EnvOutOfRange { value: usize, size: usize },
}

/// An operation symbol: a name and an arity (arity 0 means constant).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpSymbol {
    pub name: String,
    pub arity: usize,
}

/// An ordered list of operation symbols with unique names.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    symbols: Vec<OpSymbol>,
}

impl Signature {
    pub fn new<N: Into<String>>(
        symbols: impl IntoIterator<Item = (N, usize)>,
    ) -> Result<Self, AlgebraError> {
        let symbols: Vec<OpSymbol> = symbols
            .into_iter()
            .map(|(name, arity)| OpSymbol {
                name: name.into(),
                arity,
            })
            .collect();
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].iter().any(|t| t.name == s.name) {
                return Err(AlgebraError::DuplicateSymbol {
                    name: s.name.clone(),
                });
            }
        }
        Ok(Signature { symbols })
    }

    pub fn symbols(&self) -> &[OpSymbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn arity(&self, op: usize) -> usize {
        self.symbols[op].arity
    }

    pub fn name(&self, op: usize) -> &str {
        &self.symbols[op].name
    }
}

/// A finite algebra: a carrier `0..size` and one full table per symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    size: usize,
    signature: Signature,
    tables: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Algebra {
    pub fn new(
        size: usize,
        signature: Signature,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self, AlgebraError> {
        if size == 0 {
            return Err(AlgebraError::EmptyCarrier);
        }
        if tables.len() != signature.len() {
            return Err(AlgebraError::TableCount {
                expected: signature.len(),
                got: tables.len(),
            });
        }
        for (op, table) in tables.iter().enumerate() {
            let expected = size.pow(signature.arity(op) as u32);
            if table.len() != expected {
                return Err(AlgebraError::TableLength {
                    op: signature.name(op).to_string(),
                    expected,
                    got: table.len(),
                });
            }
            for (index, &value) in table.iter().enumerate() {
                if value >= size {
                    return Err(AlgebraError::EntryOutOfRange {
                        op: signature.name(op).to_string(),
                        index,
                        value,
                        size,
                    });
                }
            }
        }
        Ok(Algebra {
            size,
            signature,
            tables,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.len() != self.size {
            return Err(AlgebraError::LabelCount {
                expected: self.size,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of an element: its label if one is set, else its index.
    pub fn label(&self, element: usize) -> String {
        match &self.labels {
            Some(l) => l[element].clone(),
            None => element.to_string(),
        }
    }

    /// Flat row-major table index for an argument tuple.
    fn table_index(&self, args: &[usize]) -> usize {
        let mut idx = 0;
        for &a in args {
            idx = idx * self.size + a;
        }
        idx
    }

    /// Applies operation `op` to `args`. Arguments must be in range and
    /// match the arity.
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.signature.arity(op));
        debug_assert!(args.iter().all(|&a| a < self.size));
        self.tables[op][self.table_index(args)]
    }
}

/// A term over a signature: a variable or an application by symbol name.
/// Names are resolved against an algebra's signature at evaluation time.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    App { op: String, args: Vec<Term> },
}

impl Term {
    pub fn var(index: usize) -> Term {
        Term::Var(index)
    }

    pub fn app(op: impl Into<String>, args: impl IntoIterator<Item = Term>) -> Term {
        Term::App {
            op: op.into(),
            args: args.into_iter().collect(),
        }
    }

    pub fn constant(op: impl Into<String>) -> Term {
        Term::app(op, [])
    }

    /// Largest variable index occurring in the term, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Term::Var(i) => Some(*i),
            Term::App { args, .. } => args.iter().filter_map(Term::max_var).max(),
        }
    }
}

/// Conventional variable names x, y, z, w, then v4, v5, ...
pub fn var_name(index: usize) -> String {
    match index {
        0 => "x".to_string(),
        1 => "y".to_string(),
        2 => "z".to_string(),
        3 => "w".to_string(),
        i => format!("v{i}"),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "{}", var_name(*i)),
            Term::App { op, args } => {
                if args.is_empty() {
                    return write!(f, "{op}");
                }
                write!(f, "{op}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// An equation `lhs = rhs` over a declared number of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub vars: usize,
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    pub fn new(vars: usize, lhs: Term, rhs: Term) -> Self {
        debug_assert!(lhs.max_var().is_none_or(|m| m < vars));
        debug_assert!(rhs.max_var().is_none_or(|m| m < vars));
        Identity { vars, lhs, rhs }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Evaluates `term` in `alg` under the variable assignment `env` by
/// structural recursion through the operation tables.
pub fn eval_term(alg: &Algebra, term: &Term, env: &[usize]) -> Result<usize, EvalError> {
    for &v in env {
        if v >= alg.size() {
            return Err(EvalError::EnvOutOfRange {
                value: v,
                size: alg.size(),
            });
        }
    }
    let mut path = Vec::new();
    eval_at(alg, term, env, &mut path)
}

fn eval_at(
    alg: &Algebra,
    term: &Term,
    env: &[usize],
    path: &mut Vec<usize>,
) -> Result<usize, EvalError> {
    match term {
        Term::Var(i) => {
            if *i >= env.len() {
                return Err(EvalError::VarOutOfRange {
                    index: *i,
                    env_len: env.len(),
                    path: path.clone(),
                });
            }
            Ok(env[*i])
        }
        Term::App { op, args } => {
            let idx = alg.signature().index_of(op).ok_or(EvalError::UnknownSymbol {
                name: op.clone(),
                path: path.clone(),
            })?;
            let arity = alg.signature().arity(idx);
            if args.len() != arity {
                return Err(EvalError::ArityMismatch {
                    name: op.clone(),
                    expected: arity,
                    got: args.len(),
                    path: path.clone(),
                });
            }
            let mut values = Vec::with_capacity(args.len());
            for (k, a) in args.iter().enumerate() {
                path.push(k);
                values.push(eval_at(alg, a, env, path)?);
                path.pop();
            }
            Ok(alg.apply(idx, &values))
        }
    }
}

/// Result of an exhaustive identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityCheck {
    Holds,
    /// The first violating environment in lexicographic order.
    Counterexample { env: Vec<usize> },
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityCheck::Holds)
    }
}

/// Evaluates both sides of `id` over all `size^vars` environments in
/// lexicographic order and reports the first violation.
pub fn check_identity(alg: &Algebra, id: &Identity) -> Result<IdentityCheck, EvalError> {
    let mut env = vec![0usize; id.vars];
    loop {
        if eval_term(alg, &id.lhs, &env)? != eval_term(alg, &id.rhs, &env)? {
            return Ok(IdentityCheck::Counterexample { env });
        }
        if !next_env(&mut env, alg.size()) {
            return Ok(IdentityCheck::Holds);
        }
    }
}

/// Advances `env` to the lexicographic successor; false when exhausted.
pub(crate) fn next_env(env: &mut [usize], size: usize) -> bool {
    for slot in env.iter_mut().rev() {
        *slot += 1;
        if *slot < size {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Product of two algebras over the same signature. The carrier is
/// `0..a.size*b.size` with pair `(x, y)` at index `x * b.size + y`;
/// operations act componentwise.
pub fn product_algebra(a: &Algebra, b: &Algebra) -> Result<Algebra, AlgebraError> {
    if a.signature() != b.signature() {
        return Err(AlgebraError::SignatureMismatch);
    }
    let size = a.size() * b.size();
    let mut tables = Vec::with_capacity(a.signature().len());
    for op in 0..a.signature().len() {
        let arity = a.signature().arity(op);
        let mut table = Vec::with_capacity(size.pow(arity as u32));
        let mut args = vec![0usize; arity];
        loop {
            let left: Vec<usize> = args.iter().map(|&p| p / b.size()).collect();
            let right: Vec<usize> = args.iter().map(|&p| p % b.size()).collect();
            table.push(a.apply(op, &left) * b.size() + b.apply(op, &right));
            if !next_env(&mut args, size) {
                break;
            }
        }
        tables.push(table);
    }
    let product = Algebra::new(size, a.signature().clone(), tables)?;
    match (a.labels(), b.labels()) {
        (Some(la), Some(lb)) => {
            let labels = (0..size)
                .map(|p| format!("({},{})", la[p / b.size()], lb[p % b.size()]))
                .collect();
            product.with_labels(labels)
        }
        _ => Ok(product),
    }
}

/// The two projection maps of [`product_algebra`].
pub fn product_projections(a: &Algebra, b: &Algebra) -> (FiniteMap, FiniteMap) {
    let size = a.size() * b.size();
    let first = FiniteMap::new(size, a.size(), (0..size).map(|p| p / b.size()).collect())
        .expect("projection in range");
    let second = FiniteMap::new(size, b.size(), (0..size).map(|p| p % b.size()).collect())
        .expect("projection in range");
    (first, second)
}

/// Least subset of the carrier containing `seed` and closed under all
/// operations, computed by worklist saturation. Constants are adjoined
/// automatically.
pub fn generated_subuniverse(
    alg: &Algebra,
    seed: &BTreeSet<usize>,
) -> Result<BTreeSet<usize>, AlgebraError> {
    for &e in seed {
        if e >= alg.size() {
            return Err(AlgebraError::SeedOutOfRange {
                element: e,
                size: alg.size(),
            });
        }
    }
    let mut universe = seed.clone();
    for op in 0..alg.signature().len() {
        if alg.signature().arity(op) == 0 {
            universe.insert(alg.apply(op, &[]));
        }
    }
    loop {
        let mut added = false;
        let members: Vec<usize> = universe.iter().copied().collect();
        if members.is_empty() {
            return Ok(universe);
        }
        for op in 0..alg.signature().len() {
            let arity = alg.signature().arity(op);
            if arity == 0 {
                continue;
            }
            let mut picks = vec![0usize; arity];
            loop {
                let args: Vec<usize> = picks.iter().map(|&i| members[i]).collect();
                if universe.insert(alg.apply(op, &args)) {
                    added = true;
                }
                if !next_env(&mut picks, members.len()) {
                    break;
                }
            }
        }
        if !added {
            return Ok(universe);
        }
    }
}

/// A total function between dense carriers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMap {
    dom: usize,
    cod: usize,
    image: Vec<usize>,
}

impl FiniteMap {
    pub fn new(dom: usize, cod: usize, image: Vec<usize>) -> Result<Self, AlgebraError> {
        if image.len() != dom {
            return Err(AlgebraError::MapLength {
                expected: dom,
                got: image.len(),
            });
        }
        for (index, &value) in image.iter().enumerate() {
            if value >= cod {
                return Err(AlgebraError::MapOutOfRange { index, value, cod });
            }
        }
        Ok(FiniteMap { dom, cod, image })
    }

    pub fn identity(size: usize) -> FiniteMap {
        FiniteMap {
            dom: size,
            cod: size,
            image: (0..size).collect(),
        }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &FiniteMap) -> Result<FiniteMap, AlgebraError> {
        if self.cod != other.dom {
            return Err(AlgebraError::NotComposable {
                mid: self.cod,
                expected: other.dom,
            });
        }
        Ok(FiniteMap {
            dom: self.dom,
            cod: other.cod,
            image: self.image.iter().map(|&x| other.image[x]).collect(),
        })
    }
}

/// Result of a homomorphism check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomCheck {
    Holds,
    /// First argument tuple (in symbol order, then lexicographic) where
    /// `map(op(args))` and `op(map(args))` disagree.
    Violation {
        op: String,
        args: Vec<usize>,
        mapped_result: usize,
        result_of_mapped: usize,
    },
}

impl HomCheck {
    pub fn holds(&self) -> bool {
        matches!(self, HomCheck::Holds)
    }
}

/// Checks `map(op(args)) = op(map(args))` for every symbol and tuple.
pub fn is_homomorphism(
    map: &FiniteMap,
    dom: &Algebra,
    cod: &Algebra,
) -> Result<HomCheck, AlgebraError> {
    if dom.signature() != cod.signature() {
        return Err(AlgebraError::SignatureMismatch);
    }
    if map.dom() != dom.size() || map.cod() != cod.size() {
        return Err(AlgebraError::MapDimensions {
            dom: map.dom(),
            cod: map.cod(),
            expected_dom: dom.size(),
            expected_cod: cod.size(),
        });
    }
    for op in 0..dom.signature().len() {
        let arity = dom.signature().arity(op);
        let mut args = vec![0usize; arity];
        loop {
            let mapped: Vec<usize> = args.iter().map(|&a| map.apply(a)).collect();
            let mapped_result = map.apply(dom.apply(op, &args));
            let result_of_mapped = cod.apply(op, &mapped);
            if mapped_result != result_of_mapped {
                return Ok(HomCheck::Violation {
                    op: dom.signature().name(op).to_string(),
                    args,
                    mapped_result,
                    result_of_mapped,
                });
            }
            if arity == 0 || !next_env(&mut args, dom.size()) {
                break;
            }
        }
    }
    Ok(HomCheck::Holds)
}
