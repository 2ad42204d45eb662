//! Finite internal categories in sets.
//!
//! A [`FinCategory`] stores objects and morphisms as dense indices with a
//! partial composition table. Composition order: `comp(beta, gamma)` is the
//! composite "gamma after beta" (first `beta`, then `gamma`), defined
//! exactly when `cod(beta) = dom(gamma)`. Both orders are common; the whole
//! module, including every witness, uses this one.
//!
//! The central construction is the composability relation `S` on
//! morphisms: `(beta, alpha)` is in `S` when some `gamma` has
//! `comp(beta, gamma) = alpha`. `S` is always reflexive and transitive;
//! [`groupoidify`] turns its symmetry into a two-sided inversion map and
//! reports the first asymmetric pair otherwise. In finite sets, membership
//! in the image of a span is decided pointwise, so no generalised-element
//! machinery is needed.

use thiserror::Error;

use crate::relcalc::{self, BinRelation};

/// Constructor and validation errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatError {
    #[error("a finite category here has 1..={max} morphisms and at least one object, got {objects} objects / {morphisms} morphisms")]
    UnsupportedSizes {
        objects: usize,
        morphisms: usize,
        max: usize,
    },
    #[error("{field} has {got} entries, expected {expected}")]
    FieldLength {
        field: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{field}[{index}] = {value} is out of range 0..{max}")]
    IndexOutOfRange {
        field: &'static str,
        index: usize,
        value: usize,
        max: usize,
    },
    #[error("composition table defines ({left},{right}) twice")]
    DuplicateComposite { left: usize, right: usize },
    #[error("category axioms fail: {0:?}")]
    InvalidCategory(Vec<CategoryViolation>),
    #[error("category is not thin: morphisms {first} and {second} share endpoints")]
    NotThin { first: usize, second: usize },
    #[error("relation is not a preorder (reflexive: {reflexive}, transitive: {transitive})")]
    NotPreorder { reflexive: bool, transitive: bool },
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

/// A single category-axiom violation, as reported by [`validate_category`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategoryViolation {
    /// `id(object)` does not have the object as both endpoints.
    IdentityEndpoints {
        object: usize,
        morphism: usize,
        dom: usize,
        cod: usize,
    },
    /// Composable pair without a composite.
    MissingComposite { left: usize, right: usize },
    /// Composite defined on a non-composable pair.
    SpuriousComposite { left: usize, right: usize },
    /// Composite endpoints disagree with the outer morphisms.
    CompositeEndpoints {
        left: usize,
        right: usize,
        composite: usize,
    },
    /// `comp(id(dom m), m) != m` or `comp(m, id(cod m)) != m`.
    UnitLaw { morphism: usize },
    /// `comp(comp(a,b),c) != comp(a,comp(b,c))` at a composable triple.
    Associativity { first: usize, second: usize, third: usize },
}

/// A finite category: `objects` and `morphisms` are sizes of dense index
/// ranges; `comp` is total on composable pairs once the category is valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: usize,
    morphisms: usize,
    dom: Vec<usize>,
    cod: Vec<usize>,
    id: Vec<usize>,
    comp: Vec<Option<usize>>,
}

impl FinCategory {
    /// Builds a category from raw data, checking only structural sanity
    /// (lengths, ranges, duplicate entries). Axioms are checked separately
    /// by [`validate_category`], so deliberately broken tables can be
    /// constructed and diagnosed.
    pub fn new(
        objects: usize,
        morphisms: usize,
        dom: Vec<usize>,
        cod: Vec<usize>,
        id: Vec<usize>,
        comp_entries: &[(usize, usize, usize)],
    ) -> Result<Self, CatError> {
        if objects == 0 || morphisms == 0 || morphisms > relcalc::MAX_CARRIER {
            return Err(CatError::UnsupportedSizes {
                objects,
                morphisms,
                max: relcalc::MAX_CARRIER,
            });
        }
        for (field, vec, expected, max) in [
            ("dom", &dom, morphisms, objects),
            ("cod", &cod, morphisms, objects),
            ("id", &id, objects, morphisms),
        ] {
            if vec.len() != expected {
                return Err(CatError::FieldLength {
                    field,
                    expected,
                    got: vec.len(),
                });
            }
            for (index, &value) in vec.iter().enumerate() {
                if value >= max {
                    return Err(CatError::IndexOutOfRange {
                        field,
                        index,
                        value,
                        max,
                    });
                }
            }
        }
        let mut comp = vec![None; morphisms * morphisms];
        for &(left, right, result) in comp_entries {
            for (field, value) in [("comp.left", left), ("comp.right", right), ("comp.result", result)]
            {
                if value >= morphisms {
                    return Err(CatError::IndexOutOfRange {
                        field,
                        index: 0,
                        value,
                        max: morphisms,
                    });
                }
            }
            let slot = &mut comp[left * morphisms + right];
            if slot.is_some() {
                return Err(CatError::DuplicateComposite { left, right });
            }
            *slot = Some(result);
        }
        Ok(FinCategory {
            objects,
            morphisms,
            dom,
            cod,
            id,
            comp,
        })
    }

    /// One-object category of a monoid given by its multiplication table.
    pub fn from_monoid(size: usize, table: &[usize], unit: usize) -> Result<Self, CatError> {
        if table.len() != size * size {
            return Err(CatError::FieldLength {
                field: "monoid table",
                expected: size * size,
                got: table.len(),
            });
        }
        let entries: Vec<(usize, usize, usize)> = (0..size)
            .flat_map(|b| (0..size).map(move |g| (b, g, 0)))
            .map(|(b, g, _)| (b, g, table[b * size + g]))
            .collect();
        FinCategory::new(1, size, vec![0; size], vec![0; size], vec![unit], &entries)
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn morphisms(&self) -> usize {
        self.morphisms
    }

    pub fn dom(&self, m: usize) -> usize {
        self.dom[m]
    }

    pub fn cod(&self, m: usize) -> usize {
        self.cod[m]
    }

    pub fn id(&self, o: usize) -> usize {
        self.id[o]
    }

    /// `comp(beta, gamma)` = the composite "gamma after beta", when defined.
    pub fn comp(&self, beta: usize, gamma: usize) -> Option<usize> {
        self.comp[beta * self.morphisms + gamma]
    }

    /// Composition entries `(left, right, result)` in row-major order.
    pub fn comp_entries(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.morphisms {
            for g in 0..self.morphisms {
                if let Some(r) = self.comp(b, g) {
                    out.push((b, g, r));
                }
            }
        }
        out
    }

    fn require_valid(&self) -> Result<(), CatError> {
        let violations = validate_category(self);
        if violations.is_empty() {
            Ok(())
        } else {
            Err(CatError::InvalidCategory(violations))
        }
    }
}

/// Checks every category axiom exhaustively and lists all violations.
pub fn validate_category(c: &FinCategory) -> Vec<CategoryViolation> {
    let mut out = Vec::new();
    for o in 0..c.objects {
        let m = c.id[o];
        if c.dom[m] != o || c.cod[m] != o {
            out.push(CategoryViolation::IdentityEndpoints {
                object: o,
                morphism: m,
                dom: c.dom[m],
                cod: c.cod[m],
            });
        }
    }
    for b in 0..c.morphisms {
        for g in 0..c.morphisms {
            let composable = c.cod[b] == c.dom[g];
            match c.comp(b, g) {
                None if composable => out.push(CategoryViolation::MissingComposite {
                    left: b,
                    right: g,
                }),
                Some(_) if !composable => out.push(CategoryViolation::SpuriousComposite {
                    left: b,
                    right: g,
                }),
                Some(h) if composable && (c.dom[h] != c.dom[b] || c.cod[h] != c.cod[g]) => {
                    out.push(CategoryViolation::CompositeEndpoints {
                        left: b,
                        right: g,
                        composite: h,
                    });
                }
                _ => {}
            }
        }
    }
    for m in 0..c.morphisms {
        let left_unit = c.comp(c.id[c.dom[m]], m);
        let right_unit = c.comp(m, c.id[c.cod[m]]);
        if left_unit.is_some_and(|v| v != m) || right_unit.is_some_and(|v| v != m) {
            out.push(CategoryViolation::UnitLaw { morphism: m });
        }
    }
    for a in 0..c.morphisms {
        for b in 0..c.morphisms {
            if c.cod[a] != c.dom[b] {
                continue;
            }
            for d in 0..c.morphisms {
                if c.cod[b] != c.dom[d] {
                    continue;
                }
                let left = c.comp(a, b).and_then(|ab| c.comp(ab, d));
                let right = c.comp(b, d).and_then(|bd| c.comp(a, bd));
                if let (Some(l), Some(r)) = (left, right) {
                    if l != r {
                        out.push(CategoryViolation::Associativity {
                            first: a,
                            second: b,
                            third: d,
                        });
                    }
                }
            }
        }
    }
    out
}

/// True when no two distinct morphisms share both endpoints.
pub fn is_thin(c: &FinCategory) -> Result<bool, CatError> {
    c.require_valid()?;
    Ok(thin_witness(c).is_none())
}

fn thin_witness(c: &FinCategory) -> Option<(usize, usize)> {
    for a in 0..c.morphisms {
        for b in (a + 1)..c.morphisms {
            if c.dom[a] == c.dom[b] && c.cod[a] == c.cod[b] {
                return Some((a, b));
            }
        }
    }
    None
}

/// Views a reflexive transitive relation as a thin category: objects are
/// carrier elements, morphisms are the pairs of `r` in row-major order.
pub fn preorder_to_category(r: &BinRelation) -> Result<FinCategory, CatError> {
    let props = relcalc::properties(r);
    if !props.is_preorder() {
        return Err(CatError::NotPreorder {
            reflexive: props.reflexive,
            transitive: props.transitive,
        });
    }
    let pairs = r.pairs();
    let index_of = |x: usize, y: usize| pairs.binary_search(&(x, y)).expect("pair present");
    let dom: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let cod: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    let id: Vec<usize> = (0..r.size()).map(|o| index_of(o, o)).collect();
    let mut entries = Vec::new();
    for (b, &(x, y)) in pairs.iter().enumerate() {
        for (g, &(y2, z)) in pairs.iter().enumerate() {
            if y == y2 {
                entries.push((b, g, index_of(x, z)));
            }
        }
    }
    let c = FinCategory::new(r.size(), pairs.len(), dom, cod, id, &entries)?;
    debug_assert!(validate_category(&c).is_empty());
    Ok(c)
}

/// The underlying relation `{(dom a, cod a)}` of a thin category.
pub fn category_to_relation(c: &FinCategory) -> Result<BinRelation, CatError> {
    c.require_valid()?;
    if let Some((first, second)) = thin_witness(c) {
        return Err(CatError::NotThin { first, second });
    }
    if c.objects > relcalc::MAX_CARRIER {
        return Err(CatError::Internal(format!(
            "object count {} exceeds relation carrier bound",
            c.objects
        )));
    }
    let mut r = BinRelation::empty(c.objects);
    for m in 0..c.morphisms {
        r.insert(c.dom[m], c.cod[m]);
    }
    Ok(r)
}

/// The relation `S` on morphisms: `(beta, alpha)` is in `S` when some
/// `gamma` has `comp(beta, gamma) = alpha` — the image of the span formed
/// by first projection and composition on composable pairs.
pub fn composability_relation(c: &FinCategory) -> Result<BinRelation, CatError> {
    c.require_valid()?;
    let mut s = BinRelation::empty(c.morphisms);
    for b in 0..c.morphisms {
        for g in 0..c.morphisms {
            if let Some(a) = c.comp(b, g) {
                s.insert(b, a);
            }
        }
    }
    Ok(s)
}

/// What [`s_properties`] reports: reflexivity and transitivity of `S` are
/// guaranteed for valid categories, so only symmetry is informative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SProperties {
    pub symmetric: bool,
}

/// Asserts that `S` is reflexive and transitive (anything else means a bug
/// in this module, reported as a hard error) and reports its symmetry.
pub fn s_properties(c: &FinCategory) -> Result<SProperties, CatError> {
    let s = composability_relation(c)?;
    let props = relcalc::properties(&s);
    if !props.reflexive || !props.transitive {
        return Err(CatError::Internal(format!(
            "composability relation must be reflexive and transitive, got {props:?}"
        )));
    }
    Ok(SProperties {
        symmetric: props.symmetric,
    })
}

/// Result of a left-cancellation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CancellationCheck {
    Holds,
    /// First (lexicographic in `gamma`, `beta`, `delta`) triple with
    /// `comp(beta, gamma) = comp(delta, gamma)` and `beta != delta`.
    Violation {
        gamma: usize,
        beta: usize,
        delta: usize,
    },
}

impl CancellationCheck {
    pub fn holds(&self) -> bool {
        matches!(self, CancellationCheck::Holds)
    }
}

/// Checks `comp(beta, gamma) = comp(delta, gamma) implies beta = delta`
/// over all triples with matching composability.
pub fn has_left_cancellation(c: &FinCategory) -> Result<CancellationCheck, CatError> {
    c.require_valid()?;
    for gamma in 0..c.morphisms {
        for beta in 0..c.morphisms {
            let Some(bg) = c.comp(beta, gamma) else {
                continue;
            };
            for delta in 0..c.morphisms {
                if delta == beta {
                    continue;
                }
                if c.comp(delta, gamma) == Some(bg) {
                    return Ok(CancellationCheck::Violation { gamma, beta, delta });
                }
            }
        }
    }
    Ok(CancellationCheck::Holds)
}

/// A two-sided inversion: `comp(a, inv(a)) = id(dom a)` and
/// `comp(inv(a), a) = id(cod a)` for every morphism `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversionMap {
    inv: Vec<usize>,
}

impl InversionMap {
    pub fn inv(&self, m: usize) -> usize {
        self.inv[m]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.inv
    }
}

/// Why a category is not a groupoid: a pair `(beta, alpha)` in `S` whose
/// mirror `(alpha, beta)` is missing (first such pair, row-major).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidFailure {
    pub witness: (usize, usize),
}

/// Outcome of [`groupoidify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Groupoidify {
    Groupoid(InversionMap),
    NotGroupoid(GroupoidFailure),
}

/// Constructs a two-sided inversion from the symmetry of `S`, or returns
/// the first asymmetric pair of `S`.
///
/// When `S` is symmetric, every morphism `a` has some `g` with
/// `comp(a, g) = id(dom a)` and some `h` with `comp(h, a) = id(cod a)`;
/// the least such indices are selected and must coincide. A missing
/// candidate or a mismatch would contradict the symmetry of `S` and is
/// raised as a hard internal error, never patched over.
pub fn groupoidify(c: &FinCategory) -> Result<Groupoidify, CatError> {
    let s = composability_relation(c)?;
    for (beta, alpha) in s.pairs() {
        if !s.contains(alpha, beta) {
            return Ok(Groupoidify::NotGroupoid(GroupoidFailure {
                witness: (beta, alpha),
            }));
        }
    }
    let mut inv = Vec::with_capacity(c.morphisms);
    for a in 0..c.morphisms {
        let left_id = c.id[c.dom[a]];
        let right_id = c.id[c.cod[a]];
        let post = (0..c.morphisms).find(|&g| c.comp(a, g) == Some(left_id));
        let pre = (0..c.morphisms).find(|&g| c.comp(g, a) == Some(right_id));
        match (post, pre) {
            (Some(g), Some(h)) if g == h => inv.push(g),
            (Some(g), Some(h)) => {
                return Err(CatError::Internal(format!(
                    "selected inverses for morphism {a} differ: {g} vs {h}"
                )))
            }
            _ => {
                return Err(CatError::Internal(format!(
                    "symmetric S but no inverse candidate for morphism {a}"
                )))
            }
        }
    }
    let map = InversionMap { inv };
    for a in 0..c.morphisms {
        let g = map.inv(a);
        if c.comp(a, g) != Some(c.id[c.dom[a]]) || c.comp(g, a) != Some(c.id[c.cod[a]]) {
            return Err(CatError::Internal(format!(
                "inversion invariant fails at morphism {a}"
            )));
        }
    }
    Ok(Groupoidify::Groupoid(map))
}

/// True when every morphism has a two-sided inverse.
pub fn is_groupoid(c: &FinCategory) -> Result<bool, CatError> {
    Ok(matches!(groupoidify(c)?, Groupoidify::Groupoid(_)))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Canonical encoding under object and non-identity-morphism relabeling.
/// Assumes the identities-first normal form `id(o) = o`.
fn canonical_encoding(c: &FinCategory) -> Vec<usize> {
    let o = c.objects;
    let m = c.morphisms;
    let k = m - o;
    let mut best: Option<Vec<usize>> = None;
    for obj_perm in permutations(o) {
        for non_id_perm in permutations(k) {
            let relabel = |x: usize| -> usize {
                if x < o {
                    obj_perm[x]
                } else {
                    o + non_id_perm[x - o]
                }
            };
            let mut dom = vec![0; m];
            let mut cod = vec![0; m];
            for x in 0..m {
                dom[relabel(x)] = obj_perm[c.dom[x]];
                cod[relabel(x)] = obj_perm[c.cod[x]];
            }
            let mut comp = vec![usize::MAX; m * m];
            for (b, g, r) in c.comp_entries() {
                comp[relabel(b) * m + relabel(g)] = relabel(r);
            }
            let mut enc = vec![o, m];
            enc.extend(&dom);
            enc.extend(&cod);
            enc.extend(&comp);
            if best.as_ref().is_none_or(|b| enc < *b) {
                best = Some(enc);
            }
        }
    }
    best.expect("at least the identity relabeling")
}

/// Exhaustively enumerates all valid finite categories with at most
/// `max_morphisms` morphisms, one representative per isomorphism class,
/// in a deterministic order.
///
/// Representatives are in the identities-first normal form: object `o`'s
/// identity is morphism `o`. The bound keeps the sweep at desk scale
/// (`max_morphisms = 4` yields 70 classes).
pub fn enumerate_categories(max_morphisms: usize) -> Vec<FinCategory> {
    let mut seen = std::collections::BTreeMap::new();
    for m in 1..=max_morphisms {
        for o in 1..=m {
            enumerate_dom_cod(o, m, &mut seen);
        }
    }
    seen.into_values().collect()
}

fn enumerate_dom_cod(
    o: usize,
    m: usize,
    seen: &mut std::collections::BTreeMap<Vec<usize>, FinCategory>,
) {
    let k = m - o;
    // dom/cod of the k non-identity morphisms, each over o objects
    let mut assignment = vec![0usize; 2 * k];
    loop {
        let mut dom: Vec<usize> = (0..o).collect();
        let mut cod: Vec<usize> = (0..o).collect();
        for i in 0..k {
            dom.push(assignment[2 * i]);
            cod.push(assignment[2 * i + 1]);
        }
        fill_compositions(o, m, &dom, &cod, seen);
        if !crate::algebra::next_env(&mut assignment, o) {
            break;
        }
    }
}

fn fill_compositions(
    o: usize,
    m: usize,
    dom: &[usize],
    cod: &[usize],
    seen: &mut std::collections::BTreeMap<Vec<usize>, FinCategory>,
) {
    // composable pairs; unit laws force every pair involving an identity
    let mut entries: Vec<(usize, usize, usize)> = Vec::new();
    let mut free: Vec<(usize, usize)> = Vec::new();
    for (b, &cb) in cod.iter().enumerate() {
        for (g, &dg) in dom.iter().enumerate() {
            if cb != dg {
                continue;
            }
            if b < o {
                entries.push((b, g, g));
            } else if g < o {
                entries.push((b, g, b));
            } else {
                free.push((b, g));
            }
        }
    }
    let candidates: Vec<Vec<usize>> = free
        .iter()
        .map(|&(b, g)| {
            (0..m)
                .filter(|&h| dom[h] == dom[b] && cod[h] == cod[g])
                .collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut choice = vec![0usize; free.len()];
    'outer: loop {
        let mut all = entries.clone();
        for (i, &(b, g)) in free.iter().enumerate() {
            all.push((b, g, candidates[i][choice[i]]));
        }
        let cat = FinCategory::new(
            o,
            m,
            dom.to_vec(),
            cod.to_vec(),
            (0..o).collect(),
            &all,
        )
        .expect("structurally sound by construction");
        if validate_category(&cat).is_empty() {
            let enc = canonical_encoding(&cat);
            seen.entry(enc).or_insert(cat);
        }
        // advance the mixed-radix choice vector
        for i in (0..choice.len()).rev() {
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                continue 'outer;
            }
            choice[i] = 0;
        }
        break;
    }
}
