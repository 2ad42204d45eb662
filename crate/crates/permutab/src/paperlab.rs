//! A catalog of small worked structures and re-verification of every
//! checkable claim about them.
//!
//! The catalog covers two implication algebras `X`, `Y` and a third `Z`
//! sitting in a punctual span over them whose pairing map misses one
//! element of the product; a three-element subtraction algebra `A`
//! carrying a compatible preorder `R` that is reflexive and transitive but
//! not symmetric; the group algebras used as permutable baselines; and the
//! identity schemas (implication, subtraction, permutability chains) the
//! checks instantiate.
//!
//! Element labels follow the sources the tables were transcribed from:
//! `1,2,3` for the implication examples and `0,a,b` for the subtraction
//! example, mapped to indices `0,1,2` in table order, so reports render in
//! the original notation.

use thiserror::Error;

use crate::algebra::{
    check_identity, is_homomorphism, product_algebra, Algebra, AlgebraError, EvalError,
    FiniteMap, Identity, Signature, Term,
};
use crate::catfin::FinCategory;
use crate::maltsev::{self, congruence_permutability_check, hagemann_check, PermutOutcome};
use crate::relcalc::{
    congruence_generated, is_compatible, is_subrelation, properties, BinRelation, EnumLimits,
    RelError,
};
use crate::report::{CheckItem, Report, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PaperlabError {
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("algebra needs a binary `s` and a nullary `0` in its signature")]
    NotSubtractionSignature,
    #[error("algebra needs exactly {expected} ternary symbols, got {got}")]
    NotChainSignature { expected: usize, got: usize },
    #[error("monoid carrier {monoid} does not match algebra carrier {algebra}")]
    CarrierMismatch { monoid: usize, algebra: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Relation(#[from] RelError),
}

// ---------------------------------------------------------------------
// fixtures
// ---------------------------------------------------------------------

fn implication_signature() -> Signature {
    Signature::new([("·", 2)]).expect("one symbol")
}

fn subtraction_signature() -> Signature {
    Signature::new([("s", 2), ("0", 0)]).expect("two symbols")
}

/// Two-element implication algebra on `{1,2}`.
pub fn implication_x() -> Algebra {
    Algebra::new(2, implication_signature(), vec![vec![0, 1, 0, 0]])
        .expect("fixture table")
        .with_labels(vec!["1".into(), "2".into()])
        .expect("two labels")
}

/// Two-element implication algebra on `{1,3}`.
pub fn implication_y() -> Algebra {
    Algebra::new(2, implication_signature(), vec![vec![0, 1, 0, 0]])
        .expect("fixture table")
        .with_labels(vec!["1".into(), "3".into()])
        .expect("two labels")
}

/// Three-element implication algebra on `{1,2,3}`.
pub fn implication_z() -> Algebra {
    Algebra::new(
        3,
        implication_signature(),
        vec![vec![0, 1, 2, 0, 0, 2, 0, 1, 0]],
    )
    .expect("fixture table")
    .with_labels(vec!["1".into(), "2".into(), "3".into()])
    .expect("three labels")
}

/// Three-element subtraction algebra on `{0,a,b}`.
pub fn subtraction_a() -> Algebra {
    Algebra::new(
        3,
        subtraction_signature(),
        vec![vec![0, 0, 0, 1, 0, 0, 2, 0, 0], vec![0]],
    )
    .expect("fixture table")
    .with_labels(vec!["0".into(), "a".into(), "b".into()])
    .expect("three labels")
}

/// The reflexive transitive non-symmetric relation
/// `{(0,0),(a,a),(b,b),(a,b)}` on the carrier of [`subtraction_a`].
pub fn relation_r() -> BinRelation {
    BinRelation::from_pairs(3, [(0, 0), (1, 1), (2, 2), (1, 2)]).expect("in range")
}

/// The two-element group as an algebra with `+`, `-` and `0`.
pub fn group_z2() -> Algebra {
    Algebra::new(
        2,
        Signature::new([("+", 2), ("-", 1), ("0", 0)]).expect("three symbols"),
        vec![vec![0, 1, 1, 0], vec![0, 1], vec![0]],
    )
    .expect("group tables")
}

/// The Klein four-group (exponent-two group on four elements).
pub fn group_klein4() -> Algebra {
    let mul: Vec<usize> = (0..4).flat_map(|x| (0..4).map(move |y| x ^ y)).collect();
    Algebra::new(
        4,
        Signature::new([("+", 2), ("-", 1), ("0", 0)]).expect("three symbols"),
        vec![mul, vec![0, 1, 2, 3], vec![0]],
    )
    .expect("group tables")
}

/// The two-element group packaged as a permutability algebra: a single
/// ternary symbol tabulating `x - y + z`.
pub fn perm2_z2() -> Algebra {
    let table: Vec<usize> = (0..8).map(|i| (i ^ (i >> 1) ^ (i >> 2)) & 1).collect();
    Algebra::new(2, maltsev::chain_signature(1), vec![table]).expect("chain table")
}

/// The punctual span around `Z`: inclusions `s: X -> Z`, `t: Y -> Z` and
/// retractions `f: Z -> X`, `g: Z -> Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanBundle {
    pub x: Algebra,
    pub y: Algebra,
    pub z: Algebra,
    pub s: FiniteMap,
    pub t: FiniteMap,
    pub f: FiniteMap,
    pub g: FiniteMap,
}

pub fn span_fgst() -> SpanBundle {
    SpanBundle {
        x: implication_x(),
        y: implication_y(),
        z: implication_z(),
        s: FiniteMap::new(2, 3, vec![0, 1]).expect("inclusion"),
        t: FiniteMap::new(2, 3, vec![0, 2]).expect("inclusion"),
        f: FiniteMap::new(3, 2, vec![0, 1, 0]).expect("retraction"),
        g: FiniteMap::new(3, 2, vec![0, 0, 1]).expect("retraction"),
    }
}

/// A named list of identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySet {
    pub name: String,
    pub identities: Vec<Identity>,
}

/// `(xy)x = x`, `(xy)y = (yx)x`, `x(yz) = y(xz)`.
pub fn implication_identities() -> IdentitySet {
    let dot = |a: Term, b: Term| Term::app("·", [a, b]);
    let (x, y, z) = (Term::var(0), Term::var(1), Term::var(2));
    IdentitySet {
        name: "implication".into(),
        identities: vec![
            Identity::new(2, dot(dot(x.clone(), y.clone()), x.clone()), x.clone()),
            Identity::new(
                2,
                dot(dot(x.clone(), y.clone()), y.clone()),
                dot(dot(y.clone(), x.clone()), x.clone()),
            ),
            Identity::new(
                3,
                dot(x.clone(), dot(y.clone(), z.clone())),
                dot(y.clone(), dot(x.clone(), z.clone())),
            ),
        ],
    }
}

/// `s(x,x) = 0` and `s(x,0) = x`.
///
/// The second axiom is occasionally misquoted as `s(x,0) = 0`; the
/// standard definition and the fixture table both satisfy `s(x,0) = x`,
/// which is what the catalog encodes.
pub fn subtraction_identities() -> IdentitySet {
    let s = |a: Term, b: Term| Term::app("s", [a, b]);
    let zero = Term::constant("0");
    let x = Term::var(0);
    IdentitySet {
        name: "subtraction".into(),
        identities: vec![
            Identity::new(1, s(x.clone(), x.clone()), zero.clone()),
            Identity::new(1, s(x.clone(), zero.clone()), x.clone()),
        ],
    }
}

/// The permutability chain identities for degree `n`, over the symbols of
/// [`maltsev::chain_signature`].
pub fn perm_identities(n: usize) -> IdentitySet {
    IdentitySet {
        name: format!("perm{n}"),
        identities: maltsev::hm_identities(n),
    }
}

/// A fixture payload.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum FixturePayload {
    Algebra(Algebra),
    Relation(BinRelation),
    Category(FinCategory),
    Span(SpanBundle),
    Identities(IdentitySet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub payload: FixturePayload,
}

/// Names accepted by [`load_fixture`]. `identities-perm(n)` is
/// parametrized; the listing shows the first few degrees.
pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = [
        "impl-X",
        "impl-Y",
        "impl-Z",
        "subtr-A",
        "rel-R",
        "span-fgst",
        "group-z2",
        "group-klein4",
        "perm2-z2",
        "identities-implication",
        "identities-subtraction",
    ]
    .map(String::from)
    .to_vec();
    for n in 2..=6 {
        names.push(format!("identities-perm{n}"));
    }
    names
}

pub fn load_fixture(name: &str) -> Result<Fixture, PaperlabError> {
    let payload = match name {
        "impl-X" => FixturePayload::Algebra(implication_x()),
        "impl-Y" => FixturePayload::Algebra(implication_y()),
        "impl-Z" => FixturePayload::Algebra(implication_z()),
        "subtr-A" => FixturePayload::Algebra(subtraction_a()),
        "group-z2" => FixturePayload::Algebra(group_z2()),
        "group-klein4" => FixturePayload::Algebra(group_klein4()),
        "perm2-z2" => FixturePayload::Algebra(perm2_z2()),
        "rel-R" => FixturePayload::Relation(relation_r()),
        "span-fgst" => FixturePayload::Span(span_fgst()),
        "identities-implication" => FixturePayload::Identities(implication_identities()),
        "identities-subtraction" => FixturePayload::Identities(subtraction_identities()),
        other => match other
            .strip_prefix("identities-perm")
            .and_then(|d| d.parse::<usize>().ok())
        {
            Some(n) if (2..=64).contains(&n) => FixturePayload::Identities(perm_identities(n)),
            _ => return Err(PaperlabError::UnknownFixture(name.to_string())),
        },
    };
    Ok(Fixture {
        name: name.to_string(),
        payload,
    })
}

/// All algebra fixtures with their names, for sweeps.
pub fn fixture_algebras() -> Vec<(String, Algebra)> {
    [
        "impl-X",
        "impl-Y",
        "impl-Z",
        "subtr-A",
        "group-z2",
        "group-klein4",
        "perm2-z2",
    ]
    .iter()
    .map(|name| {
        let Ok(Fixture {
            payload: FixturePayload::Algebra(alg),
            ..
        }) = load_fixture(name)
        else {
            unreachable!("algebra fixture")
        };
        (name.to_string(), alg)
    })
    .collect()
}

// ---------------------------------------------------------------------
// monoid structures
// ---------------------------------------------------------------------

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("plus table has {got} entries, expected {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("plus table entry {value} outside carrier 0..{size}")]
    EntryOutOfRange { value: usize, size: usize },
    #[error("unit {unit} outside carrier 0..{size}")]
    UnitOutOfRange { unit: usize, size: usize },
    #[error("unit law fails at {element}")]
    NotUnit { element: usize },
    #[error("associativity fails at ({x},{y},{z})")]
    NotAssociative { x: usize, y: usize, z: usize },
}

/// A monoid on a dense carrier, validated at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidStructure {
    size: usize,
    plus: Vec<usize>,
    unit: usize,
}

impl MonoidStructure {
    pub fn new(size: usize, plus: Vec<usize>, unit: usize) -> Result<Self, MonoidError> {
        if plus.len() != size * size {
            return Err(MonoidError::TableLength {
                expected: size * size,
                got: plus.len(),
            });
        }
        if let Some(&value) = plus.iter().find(|&&v| v >= size) {
            return Err(MonoidError::EntryOutOfRange { value, size });
        }
        if unit >= size {
            return Err(MonoidError::UnitOutOfRange { unit, size });
        }
        let m = MonoidStructure { size, plus, unit };
        for e in 0..size {
            if m.plus(unit, e) != e || m.plus(e, unit) != e {
                return Err(MonoidError::NotUnit { element: e });
            }
        }
        for x in 0..size {
            for y in 0..size {
                for z in 0..size {
                    if m.plus(m.plus(x, y), z) != m.plus(x, m.plus(y, z)) {
                        return Err(MonoidError::NotAssociative { x, y, z });
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn plus(&self, x: usize, y: usize) -> usize {
        self.plus[x * self.size + y]
    }

    pub fn table(&self) -> &[usize] {
        &self.plus
    }

    /// The addition as a map out of the square carrier, pairing
    /// `(x,y) -> x*size + y` as in [`product_algebra`].
    pub fn as_map(&self) -> FiniteMap {
        FiniteMap::new(self.size * self.size, self.size, self.plus.clone())
            .expect("validated table")
    }
}

// ---------------------------------------------------------------------
// verification bundles
// ---------------------------------------------------------------------

fn identity_item(alg: &Algebra, scope: &str, id: &Identity) -> CheckItem {
    use crate::algebra::IdentityCheck;
    let name = format!("{scope}: {id}");
    match check_identity(alg, id) {
        Ok(IdentityCheck::Holds) => CheckItem::pass(name),
        Ok(IdentityCheck::Counterexample { env }) => CheckItem::fail(name, Witness::Env(env)),
        Err(e) => CheckItem::fail(name, Witness::Text(e.to_string())),
    }
}

fn hom_item(name: &str, map: &FiniteMap, dom: &Algebra, cod: &Algebra) -> CheckItem {
    use crate::algebra::HomCheck;
    match is_homomorphism(map, dom, cod) {
        Ok(HomCheck::Holds) => CheckItem::pass(name),
        Ok(HomCheck::Violation {
            op,
            args,
            mapped_result,
            result_of_mapped,
        }) => CheckItem::fail(
            name,
            Witness::HomomorphismBreak {
                op,
                args,
                mapped_result,
                result_of_mapped,
            },
        ),
        Err(e) => CheckItem::fail(name, Witness::Text(e.to_string())),
    }
}

/// Checks the punctual span on an arbitrary bundle; see
/// [`verify_punctual_span`] for the catalog instance.
pub fn verify_span_bundle(b: &SpanBundle) -> Report {
    let mut report = Report::new("punctual span");
    for (name, set, alg) in [
        ("X satisfies the implication identities", implication_identities(), &b.x),
        ("Y satisfies the implication identities", implication_identities(), &b.y),
        ("Z satisfies the implication identities", implication_identities(), &b.z),
    ] {
        for id in &set.identities {
            report.push(identity_item(alg, name, id));
        }
    }
    report.push(hom_item("s is a homomorphism X -> Z", &b.s, &b.x, &b.z));
    report.push(hom_item("t is a homomorphism Y -> Z", &b.t, &b.y, &b.z));
    report.push(hom_item("f is a homomorphism Z -> X", &b.f, &b.z, &b.x));
    report.push(hom_item("g is a homomorphism Z -> Y", &b.g, &b.z, &b.y));

    for (name, inclusion, retraction, side) in [
        ("f after s is the identity on X", &b.s, &b.f, b.x.size()),
        ("g after t is the identity on Y", &b.t, &b.g, b.y.size()),
    ] {
        let item = match inclusion.then(retraction) {
            Ok(round) if round == FiniteMap::identity(side) => CheckItem::pass(name),
            Ok(round) => CheckItem::fail(
                name,
                Witness::Text(format!("composite image {:?}", round.image())),
            ),
            Err(e) => CheckItem::fail(name, Witness::Text(e.to_string())),
        };
        report.push(item);
    }

    // the pointed element is the derived constant x·x
    let pointed = |alg: &Algebra| -> Option<usize> {
        let dot = alg.signature().index_of("·")?;
        let p = alg.apply(dot, &[0, 0]);
        (0..alg.size()).all(|e| alg.apply(dot, &[e, e]) == p).then_some(p)
    };
    for (name, first, second, target) in [
        ("g after s is constant at the point of Y", &b.s, &b.g, pointed(&b.y)),
        ("f after t is constant at the point of X", &b.t, &b.f, pointed(&b.x)),
    ] {
        let item = match (first.then(second), target) {
            (Ok(round), Some(p)) if round.image().iter().all(|&v| v == p) => {
                CheckItem::pass(name)
            }
            (Ok(round), _) => CheckItem::fail(
                name,
                Witness::Text(format!("composite image {:?}", round.image())),
            ),
            (Err(e), _) => CheckItem::fail(name, Witness::Text(e.to_string())),
        };
        report.push(item);
    }

    // the pairing z -> (f(z), g(z)) misses one element of the product
    let mut image: Vec<(usize, usize)> = (0..b.z.size())
        .map(|z| (b.f.apply(z), b.g.apply(z)))
        .collect();
    image.sort_unstable();
    image.dedup();
    let product = b.x.size() * b.y.size();
    let name = "the pairing of f and g misses one element of the product";
    report.push(if image.len() == 3 && product == 4 {
        CheckItem::pass(name).with_note(format!(
            "image {{{}}} of {product} product elements",
            image
                .iter()
                .map(|&(x, y)| format!("({},{})", b.x.label(x), b.y.label(y)))
                .collect::<Vec<_>>()
                .join(",")
        ))
    } else {
        CheckItem::fail(name, Witness::Relation(image))
    });
    report
}

/// Re-verifies the punctual-span construction on the catalog fixtures.
pub fn verify_punctual_span() -> Report {
    verify_span_bundle(&span_fgst())
}

/// Checks the subtraction algebra and its preorder; see
/// [`verify_subtraction_example`] for the catalog instance.
pub fn verify_subtraction_pair(alg: &Algebra, r: &BinRelation) -> Report {
    let mut report = Report::new("subtraction example");
    for id in &subtraction_identities().identities {
        report.push(identity_item(alg, "A satisfies the subtraction identities", id));
    }
    report.push(match is_compatible(r, alg) {
        Ok(crate::relcalc::CompatCheck::Holds) => CheckItem::pass("R is compatible with A"),
        Ok(crate::relcalc::CompatCheck::Violation { op, args, result }) => CheckItem::fail(
            "R is compatible with A",
            Witness::CompatibilityBreak { op, args, result },
        ),
        Err(e) => CheckItem::fail("R is compatible with A", Witness::Text(e.to_string())),
    });
    let props = properties(r);
    for (name, good) in [
        ("R is reflexive", props.reflexive),
        ("R is transitive", props.transitive),
        ("R is not symmetric", !props.symmetric),
    ] {
        report.push(if good {
            CheckItem::pass(name)
        } else {
            CheckItem::fail(name, Witness::Relation(r.pairs()))
        });
    }
    let name = "the congruence generated by R strictly contains R";
    report.push(match congruence_generated(alg, r) {
        Ok(theta) => {
            let strict = is_subrelation(r, &theta).unwrap_or(false) && theta != *r;
            if strict {
                CheckItem::pass(name).with_note(format!("{} pairs vs {}", theta.len(), r.len()))
            } else {
                CheckItem::fail(name, Witness::Relation(theta.pairs()))
            }
        }
        Err(e) => CheckItem::fail(name, Witness::Text(e.to_string())),
    });
    report
}

/// Re-verifies the final-example claims on the catalog fixtures.
pub fn verify_subtraction_example() -> Report {
    verify_subtraction_pair(&subtraction_a(), &relation_r())
}

/// Verifies that an internal monoid on a subtraction algebra is an
/// abelian group with `s(0,x)` as inversion and `s(x,s(0,y))` as its
/// addition.
///
/// Precondition failures (identities, internality of the unit, the
/// homomorphism property of the addition) are reported as ordinary
/// failures; a conclusion failure under valid preconditions would refute
/// the derivation itself and is flagged as critical.
pub fn verify_subtractive_monoid(
    alg: &Algebra,
    m: &MonoidStructure,
) -> Result<Report, PaperlabError> {
    let s = alg
        .signature()
        .index_of("s")
        .filter(|&i| alg.signature().arity(i) == 2)
        .ok_or(PaperlabError::NotSubtractionSignature)?;
    let zero_op = alg
        .signature()
        .index_of("0")
        .filter(|&i| alg.signature().arity(i) == 0)
        .ok_or(PaperlabError::NotSubtractionSignature)?;
    if m.size() != alg.size() {
        return Err(PaperlabError::CarrierMismatch {
            monoid: m.size(),
            algebra: alg.size(),
        });
    }
    let zero = alg.apply(zero_op, &[]);
    let mut report = Report::new("subtractive monoid");

    for id in &subtraction_identities().identities {
        report.push(identity_item(alg, "precondition: subtraction identities", id));
    }
    report.push(if m.unit() == zero {
        CheckItem::pass("precondition: the unit is the pointed element")
    } else {
        CheckItem::fail(
            "precondition: the unit is the pointed element",
            Witness::Pair(m.unit(), zero),
        )
        .with_note("an internal unit factors through the constant")
    });
    let square = product_algebra(alg, alg)?;
    report.push(hom_item(
        "precondition: the addition is a homomorphism",
        &m.as_map(),
        &square,
        alg,
    ));

    if !report.passed() {
        for name in [
            "conclusion: s(0,x) is a two-sided inverse",
            "conclusion: the addition is commutative",
            "conclusion: the addition is s(x,s(0,y))",
        ] {
            report.push(CheckItem::inconclusive(name, "preconditions failed"));
        }
        return Ok(report);
    }

    let inv = |x: usize| alg.apply(s, &[zero, x]);
    let mut item = CheckItem::pass("conclusion: s(0,x) is a two-sided inverse");
    for x in 0..alg.size() {
        if m.plus(x, inv(x)) != zero || m.plus(inv(x), x) != zero {
            item = CheckItem::fail(
                "conclusion: s(0,x) is a two-sided inverse",
                Witness::Pair(x, inv(x)),
            )
            .critical();
            break;
        }
    }
    report.push(item);

    let mut item = CheckItem::pass("conclusion: the addition is commutative");
    'comm: for x in 0..alg.size() {
        for y in 0..alg.size() {
            if m.plus(x, y) != m.plus(y, x) {
                item = CheckItem::fail(
                    "conclusion: the addition is commutative",
                    Witness::Pair(x, y),
                )
                .critical();
                break 'comm;
            }
        }
    }
    report.push(item);

    let mut item = CheckItem::pass("conclusion: the addition is s(x,s(0,y))");
    'uniq: for x in 0..alg.size() {
        for y in 0..alg.size() {
            if m.plus(x, y) != alg.apply(s, &[x, inv(y)]) {
                item = CheckItem::fail(
                    "conclusion: the addition is s(x,s(0,y))",
                    Witness::Pair(x, y),
                )
                .critical();
                break 'uniq;
            }
        }
    }
    report.push(item);
    Ok(report)
}

/// Verifies a permutability-chain algebra: the chain identities must hold,
/// and then the Hagemann conditions and congruence permutation at the same
/// degree must hold as well (a downstream failure under valid identities
/// is critical).
pub fn verify_perm_algebra(alg: &Algebra, n: usize) -> Result<Report, PaperlabError> {
    let expected = n.saturating_sub(1);
    let symbols = alg.signature().symbols();
    if symbols.len() != expected || symbols.iter().any(|s| s.arity != 3) {
        return Err(PaperlabError::NotChainSignature {
            expected,
            got: symbols.len(),
        });
    }
    let mut report = Report::new(format!("permutability algebra at n={n}"));
    let names: Vec<String> = symbols.iter().map(|s| s.name.clone()).collect();
    for id in maltsev::hm_identities_named(&names) {
        report.push(identity_item(alg, "chain identity", &id));
    }
    if !report.passed() {
        for name in ["hagemann conditions", "congruence permutation"] {
            report.push(CheckItem::inconclusive(name, "chain identities failed"));
        }
        return Ok(report);
    }
    let limits = EnumLimits::default();
    for (name, verdict) in [
        (
            format!("hagemann conditions at n={n}"),
            hagemann_check(alg, n, &limits),
        ),
        (
            format!("congruence permutation at n={n}"),
            congruence_permutability_check(alg, n, &limits),
        ),
    ] {
        report.push(match verdict {
            Ok(v) => match v.outcome {
                PermutOutcome::Holds => CheckItem::pass(name),
                PermutOutcome::Fails(w) => {
                    CheckItem::fail(name, maltsev::permut_witness(&w)).critical()
                }
            },
            Err(e) => CheckItem::inconclusive(name, e.to_string()),
        });
    }
    Ok(report)
}

/// Sweeps every subtraction algebra up to `max_size` (exhaustively, via
/// the model search) and re-verifies the abelian-group conclusions on
/// every internal monoid found.
pub fn verify_monoid_sweep(max_size: usize) -> Report {
    let mut report = Report::new("subtractive monoids");
    let spec = crate::search::SearchSpec::new(
        subtraction_signature(),
        subtraction_identities().identities,
        (1, max_size),
    );
    let run = match crate::search::enumerate_models(&spec) {
        Ok(run) if run.complete => run,
        Ok(_) => {
            report.push(CheckItem::inconclusive(
                "subtraction algebra sweep",
                "enumeration hit a limit",
            ));
            return report;
        }
        Err(e) => {
            report.push(CheckItem::inconclusive("subtraction algebra sweep", e.to_string()));
            return report;
        }
    };
    let mut monoids = 0usize;
    for (idx, alg) in run.models.iter().enumerate() {
        for m in crate::search::enumerate_internal_monoids(alg) {
            monoids += 1;
            let sub = verify_subtractive_monoid(alg, &m)
                .expect("searched algebras have the subtraction signature");
            if sub.passed() {
                report.push(
                    CheckItem::pass(format!("algebra {idx} (size {}): abelian group", alg.size()))
                        .with_note(format!("plus table {:?}", m.table())),
                );
            } else {
                for item in sub.items {
                    let mut renamed = item;
                    renamed.name = format!("algebra {idx}: {}", renamed.name);
                    report.push(renamed);
                }
            }
        }
    }
    report.push(
        CheckItem::pass("sweep").with_note(format!(
            "{} algebras up to size {max_size}, {monoids} internal monoids",
            run.models.len()
        )),
    );
    report
}

/// Chain-identity regression: the packaged two-element group chain at
/// degree 2, and the chain found on `X` reinstalled as an algebra at
/// degree 3.
pub fn verify_perm_regression() -> Report {
    let mut report = Report::new("permutability algebras");
    let direct = verify_perm_algebra(&perm2_z2(), 2).expect("fixture signature");
    for mut item in direct.items {
        item.name = format!("perm2-z2: {}", item.name);
        report.push(item);
    }
    match maltsev::find_hm_terms(&implication_x(), 3, &maltsev::CloneLimits::default()) {
        Ok(maltsev::HmSearch::Chain(chain)) => {
            let packaged = maltsev::chain_algebra(implication_x().size(), &chain);
            let nested = verify_perm_algebra(&packaged, 3).expect("chain signature");
            for mut item in nested.items {
                item.name = format!("chain from X at n=3: {}", item.name);
                report.push(item);
            }
        }
        Ok(other) => {
            report.push(CheckItem::fail(
                "chain from X at n=3",
                Witness::Text(format!("expected a chain, search returned {other:?}")),
            ));
        }
        Err(e) => {
            report.push(CheckItem::inconclusive("chain from X at n=3", e.to_string()));
        }
    }
    report
}

/// Every fixture claim in one report: identities per algebra, the span,
/// the subtraction example.
pub fn verify_fixture_catalog() -> Report {
    let mut report = Report::new("fixture catalog");
    for (name, alg) in fixture_algebras() {
        let sets: Vec<IdentitySet> = match name.as_str() {
            "impl-X" | "impl-Y" | "impl-Z" => vec![implication_identities()],
            "subtr-A" => vec![subtraction_identities()],
            "perm2-z2" => vec![perm_identities(2)],
            _ => vec![],
        };
        for set in &sets {
            for id in &set.identities {
                report.push(identity_item(&alg, &name, id));
            }
        }
    }
    for item in verify_punctual_span().items {
        report.push(item);
    }
    for item in verify_subtraction_example().items {
        report.push(item);
    }
    report
}
