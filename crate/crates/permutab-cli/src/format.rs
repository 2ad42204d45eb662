//! The JSON document format.
//!
//! Every file is a schema-versioned tagged container:
//!
//! ```json
//! {"schema": 1, "kind": "algebra", "algebra": {...}}
//! ```
//!
//! Payload shapes (all arrays flat, row-major, leftmost argument major):
//!
//! - algebra: `{"size": N, "ops": {name: {"arity": k, "table": [...]}},
//!   "labels": [...]}`; symbol order in files is the sorted key order of
//!   the `ops` map.
//! - relation: `{"size": N, "pairs": [[i,j], ...]}` emitted sorted
//!   lexicographically, plus optional `labels`.
//! - category: `{"objects": O, "morphisms": M, "dom": [...], "cod": [...],
//!   "id": [...], "comp": [[b,g,result], ...]}`.
//! - map bundle: named `{"dom": n, "cod": m, "image": [...]}` entries.
//! - identities: terms are `{"var": i}` or `{"op": name, "args": [...]}`.
//!
//! Emission is canonical (sorted keys, sorted pair lists), so parsing an
//! emitted document reproduces it bit-exactly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use permutab::algebra::{Algebra, FiniteMap, Identity, Signature, Term};
use permutab::catfin::FinCategory;
use permutab::paperlab::{Fixture, FixturePayload, IdentitySet, SpanBundle};
use permutab::relcalc::BinRelation;
use permutab::report::{Report, Status, Witness};
use permutab::search::{Predicate, SearchSpec};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {got} (this build reads {SCHEMA_VERSION})")]
    Schema { got: u32 },
    #[error("expected a {expected} document, got {got}")]
    WrongKind {
        expected: &'static str,
        got: &'static str,
    },
    #[error("invalid {what}: {detail}")]
    Invalid { what: &'static str, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub schema: u32,
    #[serde(flatten)]
    pub body: Body,
}

impl Document {
    pub fn new(body: Body) -> Self {
        Document {
            schema: SCHEMA_VERSION,
            body,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Body {
    Algebra { algebra: DocAlgebra },
    Relation { relation: DocRelation },
    Category { category: DocCategory },
    MapBundle { maps: BTreeMap<String, DocMap> },
    Identities { identities: DocIdentities },
    SearchSpec { search: DocSearch },
    Report { report: DocReport },
}

impl Body {
    pub fn kind(&self) -> &'static str {
        match self {
            Body::Algebra { .. } => "algebra",
            Body::Relation { .. } => "relation",
            Body::Category { .. } => "category",
            Body::MapBundle { .. } => "map-bundle",
            Body::Identities { .. } => "identities",
            Body::SearchSpec { .. } => "search-spec",
            Body::Report { .. } => "report",
        }
    }
}

pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    let doc: Document = serde_json::from_str(text)?;
    if doc.schema != SCHEMA_VERSION {
        return Err(FormatError::Schema { got: doc.schema });
    }
    Ok(doc)
}

pub fn to_json(doc: &Document) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}

// ---------------------------------------------------------------------
// algebra
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocOp {
    pub arity: usize,
    pub table: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocAlgebra {
    pub size: usize,
    pub ops: BTreeMap<String, DocOp>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl DocAlgebra {
    pub fn from_algebra(alg: &Algebra) -> Self {
        let mut ops = BTreeMap::new();
        for (i, sym) in alg.signature().symbols().iter().enumerate() {
            ops.insert(
                sym.name.clone(),
                DocOp {
                    arity: sym.arity,
                    table: alg.table(i).to_vec(),
                },
            );
        }
        DocAlgebra {
            size: alg.size(),
            ops,
            labels: alg.labels().map(|l| l.to_vec()),
        }
    }

    pub fn to_algebra(&self) -> Result<Algebra, FormatError> {
        let signature = Signature::new(self.ops.iter().map(|(n, op)| (n.clone(), op.arity)))
            .map_err(|e| FormatError::Invalid {
                what: "algebra",
                detail: e.to_string(),
            })?;
        let tables = self.ops.values().map(|op| op.table.clone()).collect();
        let alg =
            Algebra::new(self.size, signature, tables).map_err(|e| FormatError::Invalid {
                what: "algebra",
                detail: e.to_string(),
            })?;
        match &self.labels {
            Some(labels) => alg
                .with_labels(labels.clone())
                .map_err(|e| FormatError::Invalid {
                    what: "algebra labels",
                    detail: e.to_string(),
                }),
            None => Ok(alg),
        }
    }
}

// ---------------------------------------------------------------------
// relation
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocRelation {
    pub size: usize,
    pub pairs: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl DocRelation {
    pub fn from_relation(r: &BinRelation, labels: Option<&[String]>) -> Self {
        DocRelation {
            size: r.size(),
            pairs: r.pairs(),
            labels: labels.map(|l| l.to_vec()),
        }
    }

    pub fn to_relation(&self) -> Result<BinRelation, FormatError> {
        BinRelation::from_pairs(self.size, self.pairs.iter().copied()).map_err(|e| {
            FormatError::Invalid {
                what: "relation",
                detail: e.to_string(),
            }
        })
    }
}

// ---------------------------------------------------------------------
// category
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocCategory {
    pub objects: usize,
    pub morphisms: usize,
    pub dom: Vec<usize>,
    pub cod: Vec<usize>,
    pub id: Vec<usize>,
    pub comp: Vec<(usize, usize, usize)>,
}

impl DocCategory {
    pub fn from_category(c: &FinCategory) -> Self {
        DocCategory {
            objects: c.objects(),
            morphisms: c.morphisms(),
            dom: (0..c.morphisms()).map(|m| c.dom(m)).collect(),
            cod: (0..c.morphisms()).map(|m| c.cod(m)).collect(),
            id: (0..c.objects()).map(|o| c.id(o)).collect(),
            comp: c.comp_entries(),
        }
    }

    pub fn to_category(&self) -> Result<FinCategory, FormatError> {
        FinCategory::new(
            self.objects,
            self.morphisms,
            self.dom.clone(),
            self.cod.clone(),
            self.id.clone(),
            &self.comp,
        )
        .map_err(|e| FormatError::Invalid {
            what: "category",
            detail: e.to_string(),
        })
    }
}

// ---------------------------------------------------------------------
// finite maps
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocMap {
    pub dom: usize,
    pub cod: usize,
    pub image: Vec<usize>,
}

impl DocMap {
    pub fn from_map(m: &FiniteMap) -> Self {
        DocMap {
            dom: m.dom(),
            cod: m.cod(),
            image: m.image().to_vec(),
        }
    }

    pub fn to_map(&self) -> Result<FiniteMap, FormatError> {
        FiniteMap::new(self.dom, self.cod, self.image.clone()).map_err(|e| {
            FormatError::Invalid {
                what: "map",
                detail: e.to_string(),
            }
        })
    }
}

// ---------------------------------------------------------------------
// identities
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DocTerm {
    Var { var: usize },
    App {
        op: String,
        #[serde(default)]
        args: Vec<DocTerm>,
    },
}

impl DocTerm {
    pub fn from_term(t: &Term) -> Self {
        match t {
            Term::Var(i) => DocTerm::Var { var: *i },
            Term::App { op, args } => DocTerm::App {
                op: op.clone(),
                args: args.iter().map(DocTerm::from_term).collect(),
            },
        }
    }

    pub fn to_term(&self) -> Term {
        match self {
            DocTerm::Var { var } => Term::Var(*var),
            DocTerm::App { op, args } => Term::App {
                op: op.clone(),
                args: args.iter().map(DocTerm::to_term).collect(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocIdentity {
    pub vars: usize,
    pub lhs: DocTerm,
    pub rhs: DocTerm,
}

impl DocIdentity {
    pub fn from_identity(id: &Identity) -> Self {
        DocIdentity {
            vars: id.vars,
            lhs: DocTerm::from_term(&id.lhs),
            rhs: DocTerm::from_term(&id.rhs),
        }
    }

    pub fn to_identity(&self) -> Identity {
        Identity::new(self.vars, self.lhs.to_term(), self.rhs.to_term())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocIdentities {
    pub name: String,
    pub identities: Vec<DocIdentity>,
}

impl DocIdentities {
    pub fn from_set(set: &IdentitySet) -> Self {
        DocIdentities {
            name: set.name.clone(),
            identities: set
                .identities
                .iter()
                .map(DocIdentity::from_identity)
                .collect(),
        }
    }

    pub fn to_set(&self) -> IdentitySet {
        IdentitySet {
            name: self.name.clone(),
            identities: self.identities.iter().map(|i| i.to_identity()).collect(),
        }
    }
}

// ---------------------------------------------------------------------
// search specs
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DocPredicate {
    None,
    HasNoncongruencePreorder,
    HasNonpermutingCongruencePair(usize),
    HasInternalMonoid,
}

impl DocPredicate {
    pub fn to_predicate(self) -> Predicate {
        match self {
            DocPredicate::None => Predicate::None,
            DocPredicate::HasNoncongruencePreorder => Predicate::HasNoncongruencePreorder,
            DocPredicate::HasNonpermutingCongruencePair(n) => {
                Predicate::HasNonpermutingCongruencePair { n }
            }
            DocPredicate::HasInternalMonoid => Predicate::HasInternalMonoid,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocSearch {
    pub signature: BTreeMap<String, usize>,
    pub identities: Vec<DocIdentity>,
    pub sizes: (usize, usize),
    pub predicate: DocPredicate,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub dedup_isomorphic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate_cap: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_budget_secs: Option<u64>,
}

impl DocSearch {
    pub fn to_spec(&self) -> Result<SearchSpec, FormatError> {
        let signature = Signature::new(self.signature.iter().map(|(n, &a)| (n.clone(), a)))
            .map_err(|e| FormatError::Invalid {
                what: "search signature",
                detail: e.to_string(),
            })?;
        let mut spec = SearchSpec::new(
            signature,
            self.identities.iter().map(|i| i.to_identity()).collect(),
            self.sizes,
        );
        spec.predicate = self.predicate.to_predicate();
        spec.dedup_isomorphic = self.dedup_isomorphic;
        if let Some(cap) = self.candidate_cap {
            spec.limits.candidate_cap = cap;
        }
        if let Some(secs) = self.time_budget_secs {
            spec.limits.time_budget = Some(std::time::Duration::from_secs(secs));
        }
        Ok(spec)
    }
}

// ---------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DocStatus {
    Pass,
    Inconclusive,
    Fail,
}

impl From<Status> for DocStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Pass => DocStatus::Pass,
            Status::Inconclusive => DocStatus::Inconclusive,
            Status::Fail => DocStatus::Fail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum DocWitness {
    Env { env: Vec<usize> },
    Pair { pair: (usize, usize) },
    Relation { pairs: Vec<(usize, usize)> },
    RelationPair {
        pairs: Vec<(usize, usize)>,
        pair: (usize, usize),
    },
    AlternatingComposites {
        left: Vec<(usize, usize)>,
        right: Vec<(usize, usize)>,
        pair: (usize, usize),
    },
    CompatibilityBreak {
        op: String,
        args: Vec<(usize, usize)>,
        result: (usize, usize),
    },
    HomomorphismBreak {
        op: String,
        args: Vec<usize>,
        mapped_result: usize,
        result_of_mapped: usize,
    },
    MorphismPair { pair: (usize, usize) },
    CancellationTriple {
        gamma: usize,
        beta: usize,
        delta: usize,
    },
    Text { text: String },
}

impl DocWitness {
    pub fn from_witness(w: &Witness) -> Self {
        match w {
            Witness::Env(env) => DocWitness::Env { env: env.clone() },
            Witness::Pair(a, b) => DocWitness::Pair { pair: (*a, *b) },
            Witness::Relation(pairs) => DocWitness::Relation {
                pairs: pairs.clone(),
            },
            Witness::RelationPair { relation, pair } => DocWitness::RelationPair {
                pairs: relation.clone(),
                pair: *pair,
            },
            Witness::RelationPairOfRelations { left, right, pair } => {
                DocWitness::AlternatingComposites {
                    left: left.clone(),
                    right: right.clone(),
                    pair: *pair,
                }
            }
            Witness::CompatibilityBreak { op, args, result } => DocWitness::CompatibilityBreak {
                op: op.clone(),
                args: args.clone(),
                result: *result,
            },
            Witness::HomomorphismBreak {
                op,
                args,
                mapped_result,
                result_of_mapped,
            } => DocWitness::HomomorphismBreak {
                op: op.clone(),
                args: args.clone(),
                mapped_result: *mapped_result,
                result_of_mapped: *result_of_mapped,
            },
            Witness::MorphismPair(a, b) => DocWitness::MorphismPair { pair: (*a, *b) },
            Witness::CancellationTriple { gamma, beta, delta } => DocWitness::CancellationTriple {
                gamma: *gamma,
                beta: *beta,
                delta: *delta,
            },
            Witness::Text(text) => DocWitness::Text { text: text.clone() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocItem {
    pub name: String,
    pub status: DocStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<DocWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub critical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocReport {
    pub title: String,
    pub status: DocStatus,
    pub items: Vec<DocItem>,
}

impl DocReport {
    pub fn from_report(r: &Report) -> Self {
        DocReport {
            title: r.title.clone(),
            status: r.status().into(),
            items: r
                .items
                .iter()
                .map(|i| DocItem {
                    name: i.name.clone(),
                    status: i.status.into(),
                    witness: i.witness.as_ref().map(DocWitness::from_witness),
                    note: i.note.clone(),
                    critical: i.critical,
                })
                .collect(),
        }
    }
}

// ---------------------------------------------------------------------
// document constructors and extractors
// ---------------------------------------------------------------------

pub fn algebra_document(alg: &Algebra) -> Document {
    Document::new(Body::Algebra {
        algebra: DocAlgebra::from_algebra(alg),
    })
}

pub fn relation_document(r: &BinRelation, labels: Option<&[String]>) -> Document {
    Document::new(Body::Relation {
        relation: DocRelation::from_relation(r, labels),
    })
}

pub fn category_document(c: &FinCategory) -> Document {
    Document::new(Body::Category {
        category: DocCategory::from_category(c),
    })
}

pub fn identities_document(set: &IdentitySet) -> Document {
    Document::new(Body::Identities {
        identities: DocIdentities::from_set(set),
    })
}

pub fn span_document(span: &SpanBundle) -> Document {
    let mut maps = BTreeMap::new();
    maps.insert("f".to_string(), DocMap::from_map(&span.f));
    maps.insert("g".to_string(), DocMap::from_map(&span.g));
    maps.insert("s".to_string(), DocMap::from_map(&span.s));
    maps.insert("t".to_string(), DocMap::from_map(&span.t));
    Document::new(Body::MapBundle { maps })
}

pub fn report_document(r: &Report) -> Document {
    Document::new(Body::Report {
        report: DocReport::from_report(r),
    })
}

pub fn fixture_document(fixture: &Fixture) -> Document {
    match &fixture.payload {
        FixturePayload::Algebra(alg) => algebra_document(alg),
        FixturePayload::Relation(r) => {
            // the catalog relation lives on the subtraction carrier
            let labels = if fixture.name == "rel-R" {
                Some(vec!["0".to_string(), "a".to_string(), "b".to_string()])
            } else {
                None
            };
            relation_document(r, labels.as_deref())
        }
        FixturePayload::Category(c) => category_document(c),
        FixturePayload::Span(span) => span_document(span),
        FixturePayload::Identities(set) => identities_document(set),
    }
}

pub fn expect_algebra(doc: &Document) -> Result<Algebra, FormatError> {
    match &doc.body {
        Body::Algebra { algebra } => algebra.to_algebra(),
        other => Err(FormatError::WrongKind {
            expected: "algebra",
            got: other.kind(),
        }),
    }
}

pub fn expect_relation(doc: &Document) -> Result<(BinRelation, Option<Vec<String>>), FormatError> {
    match &doc.body {
        Body::Relation { relation } => {
            Ok((relation.to_relation()?, relation.labels.clone()))
        }
        other => Err(FormatError::WrongKind {
            expected: "relation",
            got: other.kind(),
        }),
    }
}

pub fn expect_category(doc: &Document) -> Result<FinCategory, FormatError> {
    match &doc.body {
        Body::Category { category } => category.to_category(),
        other => Err(FormatError::WrongKind {
            expected: "category",
            got: other.kind(),
        }),
    }
}

pub fn expect_identities(doc: &Document) -> Result<IdentitySet, FormatError> {
    match &doc.body {
        Body::Identities { identities } => Ok(identities.to_set()),
        other => Err(FormatError::WrongKind {
            expected: "identities",
            got: other.kind(),
        }),
    }
}

pub fn expect_search(doc: &Document) -> Result<(SearchSpec, DocSearch), FormatError> {
    match &doc.body {
        Body::SearchSpec { search } => Ok((search.to_spec()?, search.clone())),
        other => Err(FormatError::WrongKind {
            expected: "search-spec",
            got: other.kind(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use permutab::paperlab;

    #[test]
    fn unknown_schema_versions_are_rejected() {
        let text = r#"{"schema": 99, "kind": "relation", "relation": {"size": 1, "pairs": []}}"#;
        assert!(matches!(
            parse_document(text),
            Err(FormatError::Schema { got: 99 })
        ));
    }

    #[test]
    fn kind_mismatch_is_reported() {
        let doc = relation_document(&paperlab::relation_r(), None);
        assert!(matches!(
            expect_algebra(&doc),
            Err(FormatError::WrongKind {
                expected: "algebra",
                got: "relation"
            })
        ));
    }

    #[test]
    fn invalid_tables_are_rejected_with_detail() {
        let text = r#"{"schema": 1, "kind": "algebra", "algebra": {"size": 2, "ops": {"f": {"arity": 1, "table": [0, 9]}}}}"#;
        let doc = parse_document(text).unwrap();
        match expect_algebra(&doc) {
            Err(FormatError::Invalid { what, detail }) => {
                assert_eq!(what, "algebra");
                assert!(detail.contains('9'), "{detail}");
            }
            other => panic!("expected invalid, got {other:?}"),
        }
    }

    #[test]
    fn term_documents_cover_both_shapes() {
        let term = permutab::algebra::Term::app(
            "s",
            [permutab::algebra::Term::var(0), permutab::algebra::Term::constant("0")],
        );
        let doc = DocTerm::from_term(&term);
        let json = serde_json::to_string(&doc).unwrap();
        let back: DocTerm = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_term(), term);
    }
}
