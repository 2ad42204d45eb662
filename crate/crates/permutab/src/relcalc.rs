//! The calculus of binary relations on finite carriers.
//!
//! Relations use boolean-matrix semantics with one machine word per row,
//! which bounds carriers at 64 elements — far above desk scale. The
//! composite written `RS` by juxtaposition is `compose(R, S)` under the
//! left-to-right convention: `(x,z)` is in `RS` when some `y` has
//! `(x,y) in R` and `(y,z) in S`.
//!
//! Relations carry no reference to an algebra; compatibility (being a
//! subalgebra of the square) is a separate check so the same relation can
//! be examined against several structures.

use std::fmt;

use thiserror::Error;

use crate::algebra::{next_env, Algebra};
use crate::exec;

pub const MAX_CARRIER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelError {
    #[error("relations have different carrier sizes: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("relation size {size} and algebra size {alg} differ")]
    AlgebraSizeMismatch { size: usize, alg: usize },
    #[error("pair ({x},{y}) outside carrier 0..{size}")]
    PairOutOfRange { x: usize, y: usize, size: usize },
    #[error("relation powers are defined for exponents >= 1")]
    ZeroPower,
    #[error("carrier size {size} exceeds the supported maximum {max}")]
    CarrierTooLarge { size: usize, max: usize },
    #[error("carrier size {size} exceeds the relation-enumeration cap {cap}")]
    EnumerationCapExceeded { size: usize, cap: usize },
}

/// A binary relation on `0..size` stored as row bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinRelation {
    size: usize,
    rows: Vec<u64>,
}

impl BinRelation {
    pub fn empty(size: usize) -> BinRelation {
        assert!((1..=MAX_CARRIER).contains(&size), "carrier size {size} unsupported");
        BinRelation {
            size,
            rows: vec![0; size],
        }
    }

    pub fn diagonal(size: usize) -> BinRelation {
        let mut r = BinRelation::empty(size);
        for i in 0..size {
            r.rows[i] |= 1 << i;
        }
        r
    }

    pub fn full(size: usize) -> BinRelation {
        let mut r = BinRelation::empty(size);
        let mask = if size == 64 { u64::MAX } else { (1u64 << size) - 1 };
        for row in &mut r.rows {
            *row = mask;
        }
        r
    }

    pub fn from_pairs(
        size: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<BinRelation, RelError> {
        if size == 0 || size > MAX_CARRIER {
            return Err(RelError::CarrierTooLarge {
                size,
                max: MAX_CARRIER,
            });
        }
        let mut r = BinRelation::empty(size);
        for (x, y) in pairs {
            if x >= size || y >= size {
                return Err(RelError::PairOutOfRange { x, y, size });
            }
            r.rows[x] |= 1 << y;
        }
        Ok(r)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x] >> y & 1 == 1
    }

    pub(crate) fn insert(&mut self, x: usize, y: usize) {
        debug_assert!(x < self.size && y < self.size);
        self.rows[x] |= 1 << y;
    }

    /// Number of pairs.
    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.len());
        for x in 0..self.size {
            let mut row = self.rows[x];
            while row != 0 {
                let y = row.trailing_zeros() as usize;
                out.push((x, y));
                row &= row - 1;
            }
        }
        out
    }

    /// First pair of `self` that is missing from `other`, row-major.
    pub fn first_pair_not_in(&self, other: &BinRelation) -> Option<(usize, usize)> {
        for x in 0..self.size {
            let diff = self.rows[x] & !other.rows[x];
            if diff != 0 {
                return Some((x, diff.trailing_zeros() as usize));
            }
        }
        None
    }

    pub fn union(&self, other: &BinRelation) -> Result<BinRelation, RelError> {
        self.check_size(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a | b)
            .collect();
        Ok(BinRelation {
            size: self.size,
            rows,
        })
    }

    fn check_size(&self, other: &BinRelation) -> Result<(), RelError> {
        if self.size != other.size {
            return Err(RelError::SizeMismatch {
                left: self.size,
                right: other.size,
            });
        }
        Ok(())
    }
}

impl fmt::Display for BinRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (x, y)) in self.pairs().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({x},{y})")?;
        }
        write!(f, "}}")
    }
}

/// `{(x,z) | exists y: (x,y) in r and (y,z) in s}`.
pub fn compose(r: &BinRelation, s: &BinRelation) -> Result<BinRelation, RelError> {
    r.check_size(s)?;
    let mut out = BinRelation::empty(r.size);
    for x in 0..r.size {
        let mut row = r.rows[x];
        while row != 0 {
            let y = row.trailing_zeros() as usize;
            out.rows[x] |= s.rows[y];
            row &= row - 1;
        }
    }
    Ok(out)
}

/// `{(y,x) | (x,y) in r}`.
pub fn converse(r: &BinRelation) -> BinRelation {
    let mut out = BinRelation::empty(r.size);
    for (x, y) in r.pairs() {
        out.insert(y, x);
    }
    out
}

/// `r` composed with itself `n` times; `n = 0` is rejected.
pub fn relation_power(r: &BinRelation, n: usize) -> Result<BinRelation, RelError> {
    if n == 0 {
        return Err(RelError::ZeroPower);
    }
    let mut out = r.clone();
    for _ in 1..n {
        out = compose(&out, r)?;
    }
    Ok(out)
}

/// Reflexivity, symmetry and transitivity flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelProperties {
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
}

impl RelProperties {
    pub fn is_preorder(&self) -> bool {
        self.reflexive && self.transitive
    }

    pub fn is_equivalence(&self) -> bool {
        self.reflexive && self.symmetric && self.transitive
    }
}

/// Computes all three flags by exhaustive check.
pub fn properties(r: &BinRelation) -> RelProperties {
    let reflexive = (0..r.size).all(|i| r.contains(i, i));
    let symmetric = *r == converse(r);
    let transitive = match compose(r, r) {
        Ok(rr) => rr.first_pair_not_in(r).is_none(),
        Err(_) => unreachable!("same relation"),
    };
    RelProperties {
        reflexive,
        symmetric,
        transitive,
    }
}

/// True when every pair of `r` is in `s`.
pub fn is_subrelation(r: &BinRelation, s: &BinRelation) -> Result<bool, RelError> {
    r.check_size(s)?;
    Ok(r.first_pair_not_in(s).is_none())
}

/// Least transitive relation containing `r`, by iterated composition up
/// to the fixpoint.
pub fn transitive_closure(r: &BinRelation) -> BinRelation {
    let mut acc = r.clone();
    loop {
        let step = compose(&acc, &acc).expect("same carrier");
        let next = acc.union(&step).expect("same carrier");
        if next == acc {
            return acc;
        }
        acc = next;
    }
}

/// Result of a compatibility check (`r` as a subset of the square of the
/// algebra must be closed under all operations applied componentwise).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompatCheck {
    Holds,
    /// First (symbol order, then lexicographic over row-major pair lists)
    /// operation application that escapes the relation.
    Violation {
        op: String,
        args: Vec<(usize, usize)>,
        result: (usize, usize),
    },
}

impl CompatCheck {
    pub fn holds(&self) -> bool {
        matches!(self, CompatCheck::Holds)
    }
}

/// Checks that `r` is closed under all operations of `alg` applied
/// componentwise. Constants count: the pair `(c,c)` must be present.
pub fn is_compatible(r: &BinRelation, alg: &Algebra) -> Result<CompatCheck, RelError> {
    if r.size() != alg.size() {
        return Err(RelError::AlgebraSizeMismatch {
            size: r.size(),
            alg: alg.size(),
        });
    }
    let pairs = r.pairs();
    for op in 0..alg.signature().len() {
        let arity = alg.signature().arity(op);
        if arity == 0 {
            let c = alg.apply(op, &[]);
            if !r.contains(c, c) {
                return Ok(CompatCheck::Violation {
                    op: alg.signature().name(op).to_string(),
                    args: vec![],
                    result: (c, c),
                });
            }
            continue;
        }
        if pairs.is_empty() {
            continue;
        }
        let mut picks = vec![0usize; arity];
        loop {
            let args: Vec<(usize, usize)> = picks.iter().map(|&i| pairs[i]).collect();
            let left = alg.apply(op, &args.iter().map(|p| p.0).collect::<Vec<_>>());
            let right = alg.apply(op, &args.iter().map(|p| p.1).collect::<Vec<_>>());
            if !r.contains(left, right) {
                return Ok(CompatCheck::Violation {
                    op: alg.signature().name(op).to_string(),
                    args,
                    result: (left, right),
                });
            }
            if !next_env(&mut picks, pairs.len()) {
                break;
            }
        }
    }
    Ok(CompatCheck::Holds)
}

/// Least compatible equivalence relation containing `r`: saturation under
/// the diagonal, symmetry, transitivity and componentwise operation
/// closure, to the fixpoint.
pub fn congruence_generated(alg: &Algebra, r: &BinRelation) -> Result<BinRelation, RelError> {
    if r.size() != alg.size() {
        return Err(RelError::AlgebraSizeMismatch {
            size: r.size(),
            alg: alg.size(),
        });
    }
    let mut acc = r.union(&BinRelation::diagonal(r.size()))?;
    loop {
        let mut next = transitive_closure(&acc.union(&converse(&acc))?);
        let pairs = next.pairs();
        for op in 0..alg.signature().len() {
            let arity = alg.signature().arity(op);
            if arity == 0 {
                continue; // (c,c) is already on the diagonal
            }
            let mut picks = vec![0usize; arity];
            loop {
                let left =
                    alg.apply(op, &picks.iter().map(|&i| pairs[i].0).collect::<Vec<_>>());
                let right =
                    alg.apply(op, &picks.iter().map(|&i| pairs[i].1).collect::<Vec<_>>());
                next.insert(left, right);
                if !next_env(&mut picks, pairs.len()) {
                    break;
                }
            }
        }
        if next == acc {
            return Ok(acc);
        }
        acc = next;
    }
}

/// Constraint classes for [`enumerate_compatible`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelConstraint {
    Any,
    Reflexive,
    Preorder,
    Equivalence,
}

impl RelConstraint {
    fn admits(&self, r: &BinRelation) -> bool {
        match self {
            RelConstraint::Any => true,
            RelConstraint::Reflexive => properties(r).reflexive,
            RelConstraint::Preorder => properties(r).is_preorder(),
            RelConstraint::Equivalence => properties(r).is_equivalence(),
        }
    }
}

/// Caps and worker count for relation enumeration.
#[derive(Debug, Clone, Copy)]
pub struct EnumLimits {
    /// Largest carrier for which the `2^(size^2)` sweep is attempted.
    pub max_size: usize,
    /// Worker threads; the result is identical for any value.
    pub workers: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_size: 4,
            workers: 1,
        }
    }
}

/// All compatible relations on `alg` satisfying `constraint`, ordered by
/// pair count and then lexicographically by their sorted pair lists.
pub fn enumerate_compatible(
    alg: &Algebra,
    constraint: RelConstraint,
    limits: &EnumLimits,
) -> Result<Vec<BinRelation>, RelError> {
    let n = alg.size();
    if n > limits.max_size {
        return Err(RelError::EnumerationCapExceeded {
            size: n,
            cap: limits.max_size,
        });
    }
    // With a reflexivity constraint the diagonal is forced, so only the
    // off-diagonal cells are enumerated.
    let forced_diagonal = !matches!(constraint, RelConstraint::Any);
    let free_cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| !(forced_diagonal && x == y))
        .collect();
    let base = if forced_diagonal {
        BinRelation::diagonal(n)
    } else {
        BinRelation::empty(n)
    };

    let masks: Vec<u64> = (0..(1u64 << free_cells.len())).collect();
    let chunks = exec::chunk_map(limits.workers, &masks, |&mask| {
        let mut r = base.clone();
        for (bit, &(x, y)) in free_cells.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                r.insert(x, y);
            }
        }
        if constraint.admits(&r) && is_compatible(&r, alg).expect("sizes match").holds() {
            Some(r)
        } else {
            None
        }
    });
    let mut rels: Vec<BinRelation> = chunks.into_iter().flatten().collect();
    rels.sort_by_cached_key(|r| (r.len(), r.pairs()));
    Ok(rels)
}

/// Searches for a carrier bijection sending `a` to `b` while fixing every
/// element listed in `fixed`. Returns the bijection as an image vector.
pub fn isomorphic_fixing(
    a: &BinRelation,
    b: &BinRelation,
    fixed: &[usize],
) -> Option<Vec<usize>> {
    if a.size() != b.size() || a.len() != b.len() {
        return None;
    }
    let n = a.size();
    let mut perm: Vec<usize> = (0..n).collect();
    permute_search(a, b, fixed, &mut perm, 0)
}

fn permute_search(
    a: &BinRelation,
    b: &BinRelation,
    fixed: &[usize],
    perm: &mut Vec<usize>,
    at: usize,
) -> Option<Vec<usize>> {
    let n = a.size();
    if at == n {
        let mapped: Vec<(usize, usize)> = {
            let mut m: Vec<(usize, usize)> =
                a.pairs().into_iter().map(|(x, y)| (perm[x], perm[y])).collect();
            m.sort_unstable();
            m
        };
        return if mapped == b.pairs() {
            Some(perm.clone())
        } else {
            None
        };
    }
    if fixed.contains(&at) {
        return if perm[at] == at {
            permute_search(a, b, fixed, perm, at + 1)
        } else {
            None
        };
    }
    for k in at..n {
        if fixed.contains(&perm[k]) && perm[k] != at {
            continue;
        }
        perm.swap(at, k);
        if !fixed.contains(&perm[at]) || perm[at] == at {
            if let Some(found) = permute_search(a, b, fixed, perm, at + 1) {
                return Some(found);
            }
        }
        perm.swap(at, k);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paperlab;

    fn rel_r() -> BinRelation {
        paperlab::relation_r()
    }

    fn subtr_a() -> Algebra {
        paperlab::subtraction_a()
    }

    /// Independent oracle: boolean matrix product by triple loop.
    fn oracle_compose(r: &BinRelation, s: &BinRelation) -> BinRelation {
        let n = r.size();
        let mut out = BinRelation::empty(n);
        for x in 0..n {
            for z in 0..n {
                for y in 0..n {
                    if r.contains(x, y) && s.contains(y, z) {
                        out.insert(x, z);
                    }
                }
            }
        }
        out
    }

    fn all_relations(n: usize) -> Vec<BinRelation> {
        (0..(1u64 << (n * n)))
            .map(|mask| {
                let mut r = BinRelation::empty(n);
                for bit in 0..(n * n) {
                    if mask >> bit & 1 == 1 {
                        r.insert(bit / n, bit % n);
                    }
                }
                r
            })
            .collect()
    }

    #[test]
    fn compose_matches_matrix_oracle_exhaustively() {
        for n in 1..=2 {
            let rels = all_relations(n);
            for r in &rels {
                for s in &rels {
                    assert_eq!(compose(r, s).unwrap(), oracle_compose(r, s));
                }
            }
        }
    }

    #[test]
    fn rel_r_is_idempotent_under_composition() {
        let r = rel_r();
        assert_eq!(compose(&r, &r).unwrap(), r);
        assert_eq!(relation_power(&r, 3).unwrap(), r);
    }

    #[test]
    fn diagonal_is_neutral() {
        let r = rel_r();
        let d = BinRelation::diagonal(3);
        assert_eq!(compose(&d, &r).unwrap(), r);
        assert_eq!(compose(&r, &d).unwrap(), r);
    }

    #[test]
    fn single_chain_composition() {
        let r = BinRelation::from_pairs(3, [(0, 1)]).unwrap();
        let s = BinRelation::from_pairs(3, [(1, 2)]).unwrap();
        assert_eq!(
            compose(&r, &s).unwrap(),
            BinRelation::from_pairs(3, [(0, 2)]).unwrap()
        );
    }

    #[test]
    fn converse_of_rel_r() {
        let expected = BinRelation::from_pairs(3, [(0, 0), (1, 1), (2, 2), (2, 1)]).unwrap();
        assert_eq!(converse(&rel_r()), expected);
    }

    #[test]
    fn converse_is_involutive_and_antidistributes() {
        for r in all_relations(2) {
            assert_eq!(converse(&converse(&r)), r);
            for s in all_relations(2) {
                assert_eq!(
                    converse(&compose(&r, &s).unwrap()),
                    compose(&converse(&s), &converse(&r)).unwrap()
                );
            }
        }
    }

    #[test]
    fn power_rejects_zero_and_fixes_one() {
        let r = rel_r();
        assert_eq!(relation_power(&r, 0), Err(RelError::ZeroPower));
        assert_eq!(relation_power(&r, 1).unwrap(), r);
        let arrow = BinRelation::from_pairs(2, [(0, 1)]).unwrap();
        assert!(relation_power(&arrow, 2).unwrap().is_empty());
    }

    #[test]
    fn properties_of_the_named_relations() {
        let p = properties(&rel_r());
        assert!(p.reflexive && p.transitive && !p.symmetric);

        let d = properties(&BinRelation::diagonal(3));
        assert!(d.reflexive && d.symmetric && d.transitive);

        let e = properties(&BinRelation::empty(3));
        assert!(!e.reflexive && e.symmetric && e.transitive);
    }

    #[test]
    fn subrelation_is_reflexive_and_detects_asymmetry() {
        let r = rel_r();
        assert!(is_subrelation(&r, &r).unwrap());
        assert!(is_subrelation(&BinRelation::empty(3), &r).unwrap());
        assert!(!is_subrelation(&r, &converse(&r)).unwrap());
    }

    #[test]
    fn transitive_closure_examples() {
        let chain = BinRelation::from_pairs(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            transitive_closure(&chain),
            BinRelation::from_pairs(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
        );
        assert_eq!(transitive_closure(&rel_r()), rel_r());
        assert_eq!(transitive_closure(&BinRelation::empty(3)), BinRelation::empty(3));
    }

    #[test]
    fn transitive_closure_is_least_fixpoint() {
        for r in all_relations(2) {
            let c = transitive_closure(&r);
            assert!(properties(&c).transitive);
            assert!(is_subrelation(&r, &c).unwrap());
            // minimality: c is contained in every transitive superset
            for t in all_relations(2) {
                if properties(&t).transitive && is_subrelation(&r, &t).unwrap() {
                    assert!(is_subrelation(&c, &t).unwrap());
                }
            }
        }
    }

    #[test]
    fn rel_r_is_compatible_with_a() {
        assert!(is_compatible(&rel_r(), &subtr_a()).unwrap().holds());
        assert!(is_compatible(&converse(&rel_r()), &subtr_a()).unwrap().holds());
        assert!(is_compatible(&BinRelation::diagonal(3), &subtr_a())
            .unwrap()
            .holds());
    }

    #[test]
    fn compatibility_violation_carries_rerunnable_witness() {
        let r = BinRelation::from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1)]).unwrap();
        match is_compatible(&r, &subtr_a()).unwrap() {
            CompatCheck::Violation { op, args, result } => {
                let alg = subtr_a();
                let idx = alg.signature().index_of(&op).unwrap();
                let left = alg.apply(idx, &args.iter().map(|p| p.0).collect::<Vec<_>>());
                let right = alg.apply(idx, &args.iter().map(|p| p.1).collect::<Vec<_>>());
                assert_eq!((left, right), result);
                assert!(!r.contains(left, right));
            }
            CompatCheck::Holds => panic!("expected violation"),
        }
    }

    #[test]
    fn congruence_generated_by_rel_r() {
        let expected =
            BinRelation::from_pairs(3, [(0, 0), (1, 1), (2, 2), (1, 2), (2, 1)]).unwrap();
        assert_eq!(congruence_generated(&subtr_a(), &rel_r()).unwrap(), expected);
        assert_eq!(expected.len(), 5);
    }

    #[test]
    fn congruence_generated_fixes_congruences() {
        let d = BinRelation::diagonal(3);
        assert_eq!(congruence_generated(&subtr_a(), &d).unwrap(), d);
        let f = BinRelation::full(3);
        assert_eq!(congruence_generated(&subtr_a(), &f).unwrap(), f);
    }

    #[test]
    fn enumerate_compatible_counts_on_a() {
        let alg = subtr_a();
        let limits = EnumLimits::default();
        let any = enumerate_compatible(&alg, RelConstraint::Any, &limits).unwrap();
        let refl = enumerate_compatible(&alg, RelConstraint::Reflexive, &limits).unwrap();
        let pre = enumerate_compatible(&alg, RelConstraint::Preorder, &limits).unwrap();
        let equ = enumerate_compatible(&alg, RelConstraint::Equivalence, &limits).unwrap();
        assert_eq!(any.len(), 62);
        assert_eq!(refl.len(), 8);
        assert_eq!(pre.len(), 5);
        assert_eq!(equ.len(), 3);
        assert!(pre.contains(&rel_r()));
        assert!(equ.contains(&BinRelation::diagonal(3)));
        assert!(equ.contains(&BinRelation::full(3)));
        // ordering: the diagonal (3 pairs) precedes R (4 pairs), which
        // precedes its converse by the lexicographic tiebreak
        assert_eq!(pre[0], BinRelation::diagonal(3));
        assert_eq!(pre[1], rel_r());
        assert_eq!(pre[2], converse(&rel_r()).union(&BinRelation::diagonal(3)).unwrap());
    }

    #[test]
    fn enumeration_cap_is_reported() {
        let alg = paperlab::group_klein4();
        let limits = EnumLimits {
            max_size: 3,
            workers: 1,
        };
        assert_eq!(
            enumerate_compatible(&alg, RelConstraint::Any, &limits),
            Err(RelError::EnumerationCapExceeded { size: 4, cap: 3 })
        );
    }

    #[test]
    fn enumeration_is_worker_independent() {
        let alg = subtr_a();
        for constraint in [
            RelConstraint::Any,
            RelConstraint::Reflexive,
            RelConstraint::Preorder,
            RelConstraint::Equivalence,
        ] {
            let one = enumerate_compatible(
                &alg,
                constraint,
                &EnumLimits {
                    max_size: 4,
                    workers: 1,
                },
            )
            .unwrap();
            let many = enumerate_compatible(
                &alg,
                constraint,
                &EnumLimits {
                    max_size: 4,
                    workers: 5,
                },
            )
            .unwrap();
            assert_eq!(one, many);
        }
    }

    #[test]
    fn congruence_generated_is_least_congruence() {
        // cross-check against the intersection of all congruences
        // containing the seed, over every relation on each small fixture
        for alg in [
            subtr_a(),
            paperlab::implication_z(),
            paperlab::group_z2(),
        ] {
            let n = alg.size();
            let congruences =
                enumerate_compatible(&alg, RelConstraint::Equivalence, &EnumLimits::default())
                    .unwrap();
            for r in all_relations(n) {
                let generated = congruence_generated(&alg, &r).unwrap();
                let mut meet = BinRelation::full(n);
                for c in &congruences {
                    if is_subrelation(&r, c).unwrap() {
                        let mut m = BinRelation::empty(n);
                        for (x, y) in meet.pairs() {
                            if c.contains(x, y) {
                                m.insert(x, y);
                            }
                        }
                        meet = m;
                    }
                }
                assert_eq!(generated, meet, "seed {r}");
            }
        }
    }

    #[test]
    fn compatibility_is_preserved_by_the_calculus() {
        // converse, composition and transitive closure of compatible
        // relations stay compatible (subalgebras of the square are closed
        // under these constructions); exhaustive at size 3
        let alg = subtr_a();
        let compat =
            enumerate_compatible(&alg, RelConstraint::Any, &EnumLimits::default()).unwrap();
        for r in &compat {
            assert!(is_compatible(&converse(r), &alg).unwrap().holds());
            assert!(is_compatible(&transitive_closure(r), &alg).unwrap().holds());
            for s in &compat {
                assert!(is_compatible(&compose(r, s).unwrap(), &alg).unwrap().holds());
            }
        }
    }

    #[test]
    fn size_mismatches_are_rejected() {
        let r2 = BinRelation::diagonal(2);
        let r3 = BinRelation::diagonal(3);
        assert_eq!(
            compose(&r2, &r3),
            Err(RelError::SizeMismatch { left: 2, right: 3 })
        );
        assert_eq!(
            is_subrelation(&r2, &r3),
            Err(RelError::SizeMismatch { left: 2, right: 3 })
        );
        assert_eq!(
            is_compatible(&r2, &subtr_a()),
            Err(RelError::AlgebraSizeMismatch { size: 2, alg: 3 })
        );
        assert_eq!(
            BinRelation::from_pairs(2, [(0, 5)]),
            Err(RelError::PairOutOfRange { x: 0, y: 5, size: 2 })
        );
    }

    #[test]
    fn isomorphism_search_fixing_elements() {
        let r = rel_r();
        let mirrored = BinRelation::from_pairs(3, [(0, 0), (1, 1), (2, 2), (2, 1)]).unwrap();
        let perm = isomorphic_fixing(&r, &mirrored, &[0]).unwrap();
        assert_eq!(perm[0], 0);
        assert_eq!(
            isomorphic_fixing(&r, &BinRelation::diagonal(3), &[0]),
            None
        );
        // fixing everything only admits equality
        assert!(isomorphic_fixing(&r, &r, &[0, 1, 2]).is_some());
        assert!(isomorphic_fixing(&r, &mirrored, &[0, 1, 2]).is_none());
    }
}
