//! Command implementations.
//!
//! Every command returns its rendered output plus a process exit code:
//! 0 when the property holds or an object was produced, 1 when a checked
//! property fails (with a witness — still a successful run), 2 on usage
//! or input errors, 3 when a cap or limit made the result inconclusive.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use permutab::algebra::{check_identity, Algebra, IdentityCheck};
use permutab::catfin::{
    category_to_relation, composability_relation, groupoidify, has_left_cancellation, is_thin,
    preorder_to_category, validate_category, CancellationCheck, CatError, FinCategory,
    Groupoidify,
};
use permutab::maltsev::{
    self, cross_validate, find_hm_terms, hagemann_check, pair_permutes_at, permutability_degree,
    CloneLimits, DegreeSearch, HmSearch, MaltsevError, PermutOutcome, TermOperation,
};
use permutab::paperlab::{self, IdentitySet};
use permutab::relcalc::{
    compose, congruence_generated, converse, is_compatible, properties, relation_power,
    transitive_closure, BinRelation, CompatCheck, EnumLimits, RelError,
};
use permutab::report::{CheckItem, Report, Status, Witness};
use permutab::search::{self, FindOutcome, Predicate, PredicateWitness};

use crate::format::{self, Document, FormatError};
use crate::render::{self, LabelContext};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Document {
        path: PathBuf,
        source: FormatError,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

/// Rendered output plus the process exit code.
pub struct CmdResult {
    pub exit: u8,
    pub output: String,
}

impl CmdResult {
    fn new(exit: u8, output: String) -> Self {
        CmdResult { exit, output }
    }
}

/// Caps shared by clone generation and the model search; the environment
/// variable `PERMUTAB_CAP` overrides the defaults, a `--cap` flag
/// overrides both.
pub fn resolve_cap(flag: Option<u64>, default: u64) -> u64 {
    flag.or_else(|| {
        std::env::var("PERMUTAB_CAP")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(default)
}

fn read_document(path: &Path) -> Result<Document, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    format::parse_document(&text).map_err(|source| CliError::Document {
        path: path.to_path_buf(),
        source,
    })
}

fn load_algebra(path: &Path) -> Result<Algebra, CliError> {
    let doc = read_document(path)?;
    format::expect_algebra(&doc).map_err(|source| CliError::Document {
        path: path.to_path_buf(),
        source,
    })
}

fn load_relation(path: &Path) -> Result<(BinRelation, Option<Vec<String>>), CliError> {
    let doc = read_document(path)?;
    format::expect_relation(&doc).map_err(|source| CliError::Document {
        path: path.to_path_buf(),
        source,
    })
}

fn load_identities(path: &Path) -> Result<IdentitySet, CliError> {
    let doc = read_document(path)?;
    format::expect_identities(&doc).map_err(|source| CliError::Document {
        path: path.to_path_buf(),
        source,
    })
}

fn emit_document(doc: &Document, out: Option<&Path>) -> Result<CmdResult, CliError> {
    let text = format::to_json(doc);
    match out {
        Some(path) => {
            fs::write(path, text.as_bytes()).map_err(|source| CliError::Write {
                path: path.to_path_buf(),
                source,
            })?;
            Ok(CmdResult::new(EXIT_PASS, String::new()))
        }
        None => Ok(CmdResult::new(EXIT_PASS, text)),
    }
}

fn report_result(report: &Report, ctx: &LabelContext, json: bool) -> CmdResult {
    let exit = match report.status() {
        Status::Pass => EXIT_PASS,
        Status::Fail => EXIT_FAIL,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    };
    let output = if json {
        format::to_json(&format::report_document(report))
    } else {
        render::render_report(report, ctx)
    };
    CmdResult::new(exit, output)
}

fn identity_item(alg: &Algebra, id: &permutab::algebra::Identity) -> Result<CheckItem, CliError> {
    let name = format!("{id}");
    match check_identity(alg, id) {
        Ok(IdentityCheck::Holds) => Ok(CheckItem::pass(name)),
        Ok(IdentityCheck::Counterexample { env }) => Ok(CheckItem::fail(name, Witness::Env(env))),
        Err(e) => Err(CliError::usage(format!("identity {id} does not fit the algebra: {e}"))),
    }
}

// ---------------------------------------------------------------------
// identity and relation commands
// ---------------------------------------------------------------------

pub fn check_identities(algebra: &Path, identities: &Path, json: bool) -> Result<CmdResult, CliError> {
    let alg = load_algebra(algebra)?;
    let set = load_identities(identities)?;
    let mut report = Report::new(format!("check-identities: {}", set.name));
    for id in &set.identities {
        report.push(identity_item(&alg, id)?);
    }
    Ok(report_result(&report, &LabelContext::for_elements(alg.labels()), json))
}

fn rel_usage(e: RelError) -> CliError {
    CliError::usage(e.to_string())
}

pub fn relcalc_compose(left: &Path, right: &Path, out: Option<&Path>) -> Result<CmdResult, CliError> {
    let (l, labels) = load_relation(left)?;
    let (r, _) = load_relation(right)?;
    let result = compose(&l, &r).map_err(rel_usage)?;
    emit_document(&format::relation_document(&result, labels.as_deref()), out)
}

pub fn relcalc_converse(relation: &Path, out: Option<&Path>) -> Result<CmdResult, CliError> {
    let (r, labels) = load_relation(relation)?;
    emit_document(&format::relation_document(&converse(&r), labels.as_deref()), out)
}

pub fn relcalc_power(relation: &Path, n: usize, out: Option<&Path>) -> Result<CmdResult, CliError> {
    let (r, labels) = load_relation(relation)?;
    let result = relation_power(&r, n).map_err(rel_usage)?;
    emit_document(&format::relation_document(&result, labels.as_deref()), out)
}

pub fn relcalc_closure(relation: &Path, out: Option<&Path>) -> Result<CmdResult, CliError> {
    let (r, labels) = load_relation(relation)?;
    emit_document(
        &format::relation_document(&transitive_closure(&r), labels.as_deref()),
        out,
    )
}

pub fn relcalc_properties(relation: &Path, json: bool) -> Result<CmdResult, CliError> {
    let (r, labels) = load_relation(relation)?;
    let props = properties(&r);
    let mut report = Report::new("relation properties");
    for (name, value) in [
        ("reflexive", props.reflexive),
        ("symmetric", props.symmetric),
        ("transitive", props.transitive),
    ] {
        report.push(CheckItem::pass(name).with_note(value.to_string()));
    }
    Ok(report_result(&report, &LabelContext::for_elements(labels.as_deref()), json))
}

pub fn compatible(relation: &Path, algebra: &Path, json: bool) -> Result<CmdResult, CliError> {
    let (r, _) = load_relation(relation)?;
    let alg = load_algebra(algebra)?;
    let mut report = Report::new("compatibility");
    match is_compatible(&r, &alg).map_err(rel_usage)? {
        CompatCheck::Holds => report.push(CheckItem::pass("relation is compatible")),
        CompatCheck::Violation { op, args, result } => report.push(CheckItem::fail(
            "relation is compatible",
            Witness::CompatibilityBreak { op, args, result },
        )),
    }
    Ok(report_result(&report, &LabelContext::for_elements(alg.labels()), json))
}

pub fn congruence_gen(algebra: &Path, relation: &Path, out: Option<&Path>) -> Result<CmdResult, CliError> {
    let alg = load_algebra(algebra)?;
    let (r, labels) = load_relation(relation)?;
    let theta = congruence_generated(&alg, &r).map_err(rel_usage)?;
    let labels = labels.or_else(|| alg.labels().map(|l| l.to_vec()));
    emit_document(&format::relation_document(&theta, labels.as_deref()), out)
}

// ---------------------------------------------------------------------
// permutability commands
// ---------------------------------------------------------------------

fn maltsev_usage(e: MaltsevError) -> CliError {
    CliError::usage(e.to_string())
}

fn permut_report(title: String, verdict: maltsev::PermutabilityVerdict) -> Report {
    let mut report = Report::new(title);
    match verdict.outcome {
        PermutOutcome::Holds => {
            report.push(CheckItem::pass(format!("holds at n={}", verdict.n)));
        }
        PermutOutcome::Fails(w) => {
            report.push(CheckItem::fail(
                format!("fails at n={}", verdict.n),
                maltsev::permut_witness(&w),
            ));
        }
    }
    report
}

pub fn permutes(left: &Path, right: &Path, n: usize, json: bool) -> Result<CmdResult, CliError> {
    let (l, labels) = load_relation(left)?;
    let (r, _) = load_relation(right)?;
    let verdict = pair_permutes_at(&l, &r, n).map_err(maltsev_usage)?;
    let report = permut_report("pair permutation".into(), verdict);
    Ok(report_result(&report, &LabelContext::for_elements(labels.as_deref()), json))
}

pub fn hagemann(algebra: &Path, n: usize, max_size: Option<usize>, json: bool) -> Result<CmdResult, CliError> {
    let alg = load_algebra(algebra)?;
    let limits = EnumLimits {
        max_size: max_size.unwrap_or(EnumLimits::default().max_size),
        workers: 1,
    };
    let ctx = LabelContext::for_elements(alg.labels());
    match hagemann_check(&alg, n, &limits) {
        Ok(verdict) => Ok(report_result(&permut_report("hagemann conditions".into(), verdict), &ctx, json)),
        Err(MaltsevError::Relation(RelError::EnumerationCapExceeded { size, cap })) => {
            let mut report = Report::new("hagemann conditions");
            report.push(CheckItem::inconclusive(
                format!("relation enumeration skipped at n={n}"),
                format!("carrier size {size} exceeds the cap {cap}"),
            ));
            Ok(report_result(&report, &ctx, json))
        }
        Err(e) => Err(maltsev_usage(e)),
    }
}

fn chain_items(chain: &[TermOperation]) -> Vec<CheckItem> {
    chain
        .iter()
        .enumerate()
        .map(|(i, op)| {
            let term = op
                .provenance()
                .map(|t| t.to_string())
                .unwrap_or_else(|| "<tabulated>".to_string());
            CheckItem::pass(format!("θ{}", i + 1))
                .with_note(format!("{term}; table {:?}", op.table()))
        })
        .collect()
}

pub fn clone_ops(algebra: &Path, cap: Option<u64>, workers: usize, json: bool) -> Result<CmdResult, CliError> {
    let alg = load_algebra(algebra)?;
    let limits = CloneLimits {
        cap: resolve_cap(cap, CloneLimits::default().cap as u64) as usize,
        workers,
    };
    let mut report = Report::new("ternary clone");
    match maltsev::ternary_clone(&alg, &limits) {
        Ok(clone) => {
            report.push(CheckItem::pass("saturated").with_note(format!("{} operations", clone.len())));
            let result = report_result(&report, &LabelContext::default(), json);
            if json {
                return Ok(result);
            }
            let mut output = result.output;
            for (i, op) in clone.iter().enumerate() {
                let term = op.provenance().map(|t| t.to_string()).unwrap_or_default();
                output.push_str(&format!("{i:4}: {term}\n"));
            }
            Ok(CmdResult::new(result.exit, output))
        }
        Err(e) => {
            report.push(CheckItem::inconclusive("saturated", e.to_string()));
            Ok(report_result(&report, &LabelContext::default(), json))
        }
    }
}

pub fn hm_terms(algebra: &Path, n: usize, cap: Option<u64>, workers: usize, json: bool) -> Result<CmdResult, CliError> {
    let alg = load_algebra(algebra)?;
    let limits = CloneLimits {
        cap: resolve_cap(cap, CloneLimits::default().cap as u64) as usize,
        workers,
    };
    let mut report = Report::new(format!("hagemann-mitschke terms at n={n}"));
    match find_hm_terms(&alg, n, &limits).map_err(maltsev_usage)? {
        HmSearch::Chain(chain) => {
            for item in chain_items(&chain) {
                report.push(item);
            }
        }
        HmSearch::Absent => {
            report.push(CheckItem::fail(
                "chain exists",
                Witness::Text("no chain; the clone was fully saturated".into()),
            ));
        }
        HmSearch::Inconclusive(e) => {
            report.push(CheckItem::inconclusive("chain exists", e.to_string()));
        }
    }
    Ok(report_result(&report, &LabelContext::default(), json))
}

pub fn degree(algebra: &Path, max_n: usize, cap: Option<u64>, workers: usize, json: bool) -> Result<CmdResult, CliError> {
    let alg = load_algebra(algebra)?;
    let limits = CloneLimits {
        cap: resolve_cap(cap, CloneLimits::default().cap as u64) as usize,
        workers,
    };
    let mut report = Report::new("permutability degree");
    match permutability_degree(&alg, max_n, &limits).map_err(maltsev_usage)? {
        DegreeSearch::Degree { n, chain } => {
            report.push(CheckItem::pass(format!("degree {n}")));
            for item in chain_items(&chain) {
                report.push(item);
            }
        }
        DegreeSearch::NoneUpTo { max_n } => {
            report.push(CheckItem::fail(
                format!("no degree up to {max_n}"),
                Witness::Text("the saturated clone admits no chain at any degree in range".into()),
            ));
        }
        DegreeSearch::Inconclusive(e) => {
            report.push(CheckItem::inconclusive("degree search", e.to_string()));
        }
    }
    Ok(report_result(&report, &LabelContext::default(), json))
}

pub fn run_cross_validate(
    algebra: &Path,
    max_n: usize,
    cap: Option<u64>,
    max_size: Option<usize>,
    workers: usize,
    json: bool,
) -> Result<CmdResult, CliError> {
    let alg = load_algebra(algebra)?;
    let clone_limits = CloneLimits {
        cap: resolve_cap(cap, CloneLimits::default().cap as u64) as usize,
        workers,
    };
    let enum_limits = EnumLimits {
        max_size: max_size.unwrap_or(EnumLimits::default().max_size),
        workers,
    };
    let report = cross_validate(&alg, max_n, &clone_limits, &enum_limits).map_err(maltsev_usage)?;
    Ok(report_result(&report, &LabelContext::for_elements(alg.labels()), json))
}

// ---------------------------------------------------------------------
// category commands
// ---------------------------------------------------------------------

fn cat_usage(e: CatError) -> CliError {
    CliError::usage(e.to_string())
}

/// A category input: either a category document or a preorder relation
/// to convert; the latter also yields morphism names for rendering.
pub struct CategoryInput {
    pub category: FinCategory,
    pub morphism_names: Option<Vec<String>>,
}

pub fn load_category_input(category: Option<&Path>, preorder: Option<&Path>) -> Result<CategoryInput, CliError> {
    match (category, preorder) {
        (Some(path), None) => {
            let doc = read_document(path)?;
            let category = format::expect_category(&doc).map_err(|source| CliError::Document {
                path: path.to_path_buf(),
                source,
            })?;
            Ok(CategoryInput {
                category,
                morphism_names: None,
            })
        }
        (None, Some(path)) => {
            let (r, labels) = load_relation(path)?;
            let category = preorder_to_category(&r).map_err(cat_usage)?;
            let names = render::preorder_morphism_names(&r, labels.as_deref());
            Ok(CategoryInput {
                category,
                morphism_names: Some(names),
            })
        }
        _ => Err(CliError::usage(
            "provide exactly one of --category FILE or --preorder FILE",
        )),
    }
}

fn morphism_ctx(input: &CategoryInput) -> LabelContext {
    LabelContext {
        elements: None,
        morphisms: input.morphism_names.clone(),
    }
}

pub fn category_validate(input: &CategoryInput, json: bool) -> Result<CmdResult, CliError> {
    let violations = validate_category(&input.category);
    let mut report = Report::new("category axioms");
    if violations.is_empty() {
        report.push(CheckItem::pass("all axioms hold"));
    } else {
        for v in violations {
            report.push(CheckItem::fail("axiom violation", Witness::Text(format!("{v:?}"))));
        }
    }
    Ok(report_result(&report, &morphism_ctx(input), json))
}

pub fn category_thin(input: &CategoryInput, json: bool) -> Result<CmdResult, CliError> {
    let thin = is_thin(&input.category).map_err(cat_usage)?;
    let mut report = Report::new("thinness");
    report.push(if thin {
        CheckItem::pass("category is thin")
    } else {
        CheckItem::fail("category is thin", Witness::Text("two morphisms share endpoints".into()))
    });
    Ok(report_result(&report, &morphism_ctx(input), json))
}

pub fn category_from_preorder(relation: &Path, out: Option<&Path>) -> Result<CmdResult, CliError> {
    let (r, _) = load_relation(relation)?;
    let c = preorder_to_category(&r).map_err(cat_usage)?;
    emit_document(&format::category_document(&c), out)
}

pub fn category_to_preorder(input: &CategoryInput, out: Option<&Path>) -> Result<CmdResult, CliError> {
    let r = category_to_relation(&input.category).map_err(cat_usage)?;
    emit_document(&format::relation_document(&r, None), out)
}

pub fn category_s_relation(input: &CategoryInput, out: Option<&Path>) -> Result<CmdResult, CliError> {
    let s = composability_relation(&input.category).map_err(cat_usage)?;
    emit_document(
        &format::relation_document(&s, input.morphism_names.as_deref()),
        out,
    )
}

pub fn category_cancel(input: &CategoryInput, json: bool) -> Result<CmdResult, CliError> {
    let mut report = Report::new("left cancellation");
    match has_left_cancellation(&input.category).map_err(cat_usage)? {
        CancellationCheck::Holds => report.push(CheckItem::pass("left cancellation holds")),
        CancellationCheck::Violation { gamma, beta, delta } => report.push(CheckItem::fail(
            "left cancellation holds",
            Witness::CancellationTriple { gamma, beta, delta },
        )),
    }
    Ok(report_result(&report, &morphism_ctx(input), json))
}

pub fn category_groupoidify(input: &CategoryInput, json: bool) -> Result<CmdResult, CliError> {
    let mut report = Report::new("groupoidify");
    match groupoidify(&input.category).map_err(cat_usage)? {
        Groupoidify::Groupoid(inv) => {
            let ctx = morphism_ctx(input);
            let rendering: Vec<String> = inv
                .as_slice()
                .iter()
                .enumerate()
                .map(|(m, &i)| {
                    format!(
                        "{} -> {}",
                        render_morphism(&ctx, m),
                        render_morphism(&ctx, i)
                    )
                })
                .collect();
            report.push(
                CheckItem::pass("two-sided inversion constructed")
                    .with_note(rendering.join(", ")),
            );
        }
        Groupoidify::NotGroupoid(failure) => {
            let (beta, alpha) = failure.witness;
            report.push(CheckItem::fail(
                "two-sided inversion constructed",
                Witness::MorphismPair(beta, alpha),
            ));
        }
    }
    Ok(report_result(&report, &morphism_ctx(input), json))
}

fn render_morphism(ctx: &LabelContext, m: usize) -> String {
    match &ctx.morphisms {
        Some(names) if m < names.len() => names[m].clone(),
        _ => m.to_string(),
    }
}

// ---------------------------------------------------------------------
// paper regression, search, fixtures
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaperCheck {
    Span,
    Subtraction,
    Monoid,
    Perm,
}

pub fn verify_paper(what: Option<PaperCheck>, json: bool) -> Result<CmdResult, CliError> {
    let reports: Vec<Report> = match what {
        Some(PaperCheck::Span) => vec![paperlab::verify_punctual_span()],
        Some(PaperCheck::Subtraction) => vec![paperlab::verify_subtraction_example()],
        Some(PaperCheck::Monoid) => vec![paperlab::verify_monoid_sweep(3)],
        Some(PaperCheck::Perm) => vec![paperlab::verify_perm_regression()],
        None => vec![
            paperlab::verify_punctual_span(),
            paperlab::verify_subtraction_example(),
            paperlab::verify_monoid_sweep(3),
            paperlab::verify_perm_regression(),
        ],
    };
    let mut combined = Report::new("paper regression");
    for r in reports {
        for mut item in r.items {
            item.name = format!("{}: {}", r.title, item.name);
            combined.push(item);
        }
    }
    Ok(report_result(&combined, &LabelContext::default(), json))
}

pub struct SearchOverrides {
    pub sizes: Option<(usize, usize)>,
    pub cap: Option<u64>,
    pub workers: usize,
    pub dedup: bool,
    pub out: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
}

pub fn run_search(spec_path: &Path, overrides: &SearchOverrides, json: bool) -> Result<CmdResult, CliError> {
    let doc = read_document(spec_path)?;
    let (mut spec, _) = format::expect_search(&doc).map_err(|source| CliError::Document {
        path: spec_path.to_path_buf(),
        source,
    })?;
    if let Some((lo, hi)) = overrides.sizes {
        spec.min_size = lo;
        spec.max_size = hi;
    }
    spec.limits.candidate_cap = resolve_cap(overrides.cap, spec.limits.candidate_cap);
    spec.limits.workers = overrides.workers;
    if overrides.dedup {
        spec.dedup_isomorphic = true;
    }

    if spec.predicate == Predicate::None {
        let run = search::enumerate_models(&spec).map_err(|e| CliError::usage(e.to_string()))?;
        if let Some(dir) = &overrides.out_dir {
            fs::create_dir_all(dir).map_err(|source| CliError::Write {
                path: dir.clone(),
                source,
            })?;
            for (i, model) in run.models.iter().enumerate() {
                let path = dir.join(format!("model-{i:05}.json"));
                fs::write(&path, format::to_json(&format::algebra_document(model)))
                    .map_err(|source| CliError::Write { path, source })?;
            }
        }
        let mut output = String::new();
        if overrides.out_dir.is_none() {
            if json {
                for model in &run.models {
                    output.push_str(&serde_json::to_string(&format::algebra_document(model)).expect("serializes"));
                    output.push('\n');
                }
            } else {
                for (i, model) in run.models.iter().enumerate() {
                    output.push_str(&format!("model {i}: size {}\n", model.size()));
                    for (s, sym) in model.signature().symbols().iter().enumerate() {
                        output.push_str(&format!("  {} (arity {}): {:?}\n", sym.name, sym.arity, model.table(s)));
                    }
                }
            }
        }
        output.push_str(&format!(
            "{} models, {} candidates examined, {}\n",
            run.models.len(),
            run.candidates_examined,
            if run.complete { "complete" } else { "limit hit" }
        ));
        let exit = if run.complete { EXIT_PASS } else { EXIT_INCONCLUSIVE };
        return Ok(CmdResult::new(exit, output));
    }

    let mut report = Report::new("model search");
    let exit = match search::find_model(&spec).map_err(|e| CliError::usage(e.to_string()))? {
        FindOutcome::Found { model, witness } => {
            report.push(
                CheckItem::pass(format!("model found at size {}", model.size())).with_note(
                    serde_json::to_string(&format::DocAlgebra::from_algebra(&model))
                        .expect("serializes"),
                ),
            );
            report.push(witness_item(&witness));
            if let Some(path) = &overrides.out {
                fs::write(path, format::to_json(&format::algebra_document(&model)))
                    .map_err(|source| CliError::Write {
                        path: path.clone(),
                        source,
                    })?;
            }
            EXIT_PASS
        }
        FindOutcome::NoneWithinBounds => {
            report.push(CheckItem::fail(
                "model found",
                Witness::Text("no model in the searched sizes satisfies the predicate".into()),
            ));
            EXIT_FAIL
        }
        FindOutcome::Inconclusive(limit) => {
            report.push(CheckItem::inconclusive("model found", format!("{limit:?}")));
            EXIT_INCONCLUSIVE
        }
    };
    let rendered = if json {
        format::to_json(&format::report_document(&report))
    } else {
        render::render_report(&report, &LabelContext::default())
    };
    Ok(CmdResult::new(exit, rendered))
}

fn witness_item(witness: &PredicateWitness) -> CheckItem {
    match witness {
        PredicateWitness::Trivial => CheckItem::pass("witness").with_note("none required"),
        PredicateWitness::NoncongruencePreorder(p) => CheckItem::pass("witness")
            .with_note("compatible preorder, not symmetric")
            .with_witness(Witness::Relation(p.pairs())),
        PredicateWitness::NonpermutingCongruencePair { r, s, n, pair } => CheckItem::pass("witness")
            .with_note(format!("congruences do not {n}-permute"))
            .with_witness(Witness::RelationPairOfRelations {
                left: r.pairs(),
                right: s.pairs(),
                pair: *pair,
            }),
        PredicateWitness::InternalMonoid(m) => CheckItem::pass("witness")
            .with_note(format!("internal monoid, plus table {:?}, unit {}", m.table(), m.unit())),
    }
}

pub fn fixtures_list() -> CmdResult {
    let mut output = String::new();
    for name in paperlab::fixture_names() {
        output.push_str(&name);
        output.push('\n');
    }
    CmdResult::new(EXIT_PASS, output)
}

pub fn fixtures_export(name: &str, out: Option<&Path>) -> Result<CmdResult, CliError> {
    let fixture = paperlab::load_fixture(name)
        .map_err(|e| CliError::usage(e.to_string()))?;
    emit_document(&format::fixture_document(&fixture), out)
}

pub fn fixtures_export_all(dir: &Path) -> Result<CmdResult, CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Write {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut output = String::new();
    for name in paperlab::fixture_names() {
        let fixture = paperlab::load_fixture(&name).expect("listed fixtures load");
        let path = dir.join(format!("{name}.json"));
        fs::write(&path, format::to_json(&format::fixture_document(&fixture)))
            .map_err(|source| CliError::Write { path: path.clone(), source })?;
        output.push_str(&format!("{}\n", path.display()));
    }
    Ok(CmdResult::new(EXIT_PASS, output))
}
