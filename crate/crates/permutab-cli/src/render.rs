//! Human-readable rendering of reports and witnesses.
//!
//! Machine output (`--json`) always uses raw indices; the human form maps
//! elements through the label context when one is available (algebra
//! labels, relation labels, or morphism names derived from a preorder).

use permutab::report::{Report, Status, Witness};

#[derive(Debug, Clone, Default)]
pub struct LabelContext {
    /// Names for carrier elements.
    pub elements: Option<Vec<String>>,
    /// Names for morphisms (category reports).
    pub morphisms: Option<Vec<String>>,
}

impl LabelContext {
    pub fn for_elements(labels: Option<&[String]>) -> Self {
        LabelContext {
            elements: labels.map(|l| l.to_vec()),
            morphisms: None,
        }
    }

    fn element(&self, e: usize) -> String {
        match &self.elements {
            Some(l) if e < l.len() => l[e].clone(),
            _ => e.to_string(),
        }
    }

    fn morphism(&self, m: usize) -> String {
        match &self.morphisms {
            Some(l) if m < l.len() => l[m].clone(),
            _ => m.to_string(),
        }
    }

    fn pair(&self, p: (usize, usize)) -> String {
        format!("({},{})", self.element(p.0), self.element(p.1))
    }

    fn pairs(&self, ps: &[(usize, usize)]) -> String {
        let body: Vec<String> = ps.iter().map(|&p| self.pair(p)).collect();
        format!("{{{}}}", body.join(", "))
    }
}

pub fn render_witness(w: &Witness, ctx: &LabelContext) -> String {
    match w {
        Witness::Env(env) => {
            let binds: Vec<String> = env
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    format!(
                        "{}={}",
                        permutab::algebra::var_name(i),
                        ctx.element(v)
                    )
                })
                .collect();
            format!("at [{}]", binds.join(", "))
        }
        Witness::Pair(a, b) => format!("at {}", ctx.pair((*a, *b))),
        Witness::Relation(pairs) => ctx.pairs(pairs),
        Witness::RelationPair { relation, pair } => {
            format!("relation {} at pair {}", ctx.pairs(relation), ctx.pair(*pair))
        }
        Witness::RelationPairOfRelations { left, right, pair } => format!(
            "R = {}, S = {}, separating pair {}",
            ctx.pairs(left),
            ctx.pairs(right),
            ctx.pair(*pair)
        ),
        Witness::CompatibilityBreak { op, args, result } => format!(
            "{op} applied to {} gives {}, which is outside the relation",
            args.iter().map(|&p| ctx.pair(p)).collect::<Vec<_>>().join(", "),
            ctx.pair(*result)
        ),
        Witness::HomomorphismBreak {
            op,
            args,
            mapped_result,
            result_of_mapped,
        } => format!(
            "{op} at ({}): map(op(..)) = {} but op(map(..)) = {}",
            args.iter().map(|&a| ctx.element(a)).collect::<Vec<_>>().join(","),
            ctx.element(*mapped_result),
            ctx.element(*result_of_mapped)
        ),
        Witness::MorphismPair(beta, alpha) => format!(
            "({}, {}) is in S but its mirror is not",
            ctx.morphism(*beta),
            ctx.morphism(*alpha)
        ),
        Witness::CancellationTriple { gamma, beta, delta } => format!(
            "gamma={} composed with beta={} and delta={} agree",
            ctx.morphism(*gamma),
            ctx.morphism(*beta),
            ctx.morphism(*delta)
        ),
        Witness::Text(text) => text.clone(),
    }
}

pub fn render_report(report: &Report, ctx: &LabelContext) -> String {
    let mut out = format!("== {} : {}\n", report.title, report.status());
    for item in &report.items {
        let mark = match item.status {
            Status::Pass => "  ok  ",
            Status::Inconclusive => "  ??  ",
            Status::Fail => " FAIL ",
        };
        out.push_str(&format!("[{mark}] {}", item.name));
        if let Some(w) = &item.witness {
            out.push_str(&format!(" -- {}", render_witness(w, ctx)));
        }
        if let Some(n) = &item.note {
            out.push_str(&format!(" ({n})"));
        }
        if item.critical && item.status == Status::Fail {
            out.push_str(" [CRITICAL]");
        }
        out.push('\n');
    }
    out
}

/// Morphism names for a category built from a preorder: the row-major
/// pair list rendered through the element labels.
pub fn preorder_morphism_names(
    r: &permutab::relcalc::BinRelation,
    labels: Option<&[String]>,
) -> Vec<String> {
    let ctx = LabelContext::for_elements(labels);
    r.pairs().into_iter().map(|p| ctx.pair(p)).collect()
}
