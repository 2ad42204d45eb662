//! Structured verdicts shared by the verification operations.
//!
//! A [`Report`] is a named list of checks, each passing, failing with a
//! witness, or inconclusive (a search hit its cap). Witnesses carry enough
//! raw data to re-run the failing check without the original inputs.

use std::fmt;

/// Outcome of a single check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Inconclusive => write!(f, "inconclusive"),
            Status::Fail => write!(f, "FAIL"),
        }
    }
}

/// Raw data pinpointing a failure. Elements and morphisms are carrier
/// indices; a consumer with the fixture's label map can re-render them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A variable assignment (value of variable i at position i).
    Env(Vec<usize>),
    /// A pair of carrier elements.
    Pair(usize, usize),
    /// A full relation as a sorted pair list.
    Relation(Vec<(usize, usize)>),
    /// A relation together with one offending pair.
    RelationPair {
        relation: Vec<(usize, usize)>,
        pair: (usize, usize),
    },
    /// Two relations and a pair separating the alternating composites.
    RelationPairOfRelations {
        left: Vec<(usize, usize)>,
        right: Vec<(usize, usize)>,
        pair: (usize, usize),
    },
    /// An operation applied to pairs escaped the relation.
    CompatibilityBreak {
        op: String,
        args: Vec<(usize, usize)>,
        result: (usize, usize),
    },
    /// map(op(args)) != op(map(args)) at this argument tuple.
    HomomorphismBreak {
        op: String,
        args: Vec<usize>,
        mapped_result: usize,
        result_of_mapped: usize,
    },
    /// Morphism indices (beta, alpha) with (beta, alpha) in S but not
    /// (alpha, beta).
    MorphismPair(usize, usize),
    /// gamma∘beta = gamma∘delta with beta != delta.
    CancellationTriple {
        gamma: usize,
        beta: usize,
        delta: usize,
    },
    /// Free-form context for failures with no structured shape.
    Text(String),
}

/// One named check inside a [`Report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckItem {
    pub name: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub note: Option<String>,
    /// A critical failure contradicts a verified premise rather than an
    /// input; reports single these out so they are never skimmed over.
    pub critical: bool,
}

impl CheckItem {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckItem {
            name: name.into(),
            status: Status::Pass,
            witness: None,
            note: None,
            critical: false,
        }
    }

    pub fn fail(name: impl Into<String>, witness: Witness) -> Self {
        CheckItem {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness),
            note: None,
            critical: false,
        }
    }

    pub fn inconclusive(name: impl Into<String>, note: impl Into<String>) -> Self {
        CheckItem {
            name: name.into(),
            status: Status::Inconclusive,
            witness: None,
            note: Some(note.into()),
            critical: false,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn critical(mut self) -> Self {
        self.critical = true;
        self
    }
}

/// A bundle of checks with an overall verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub items: Vec<CheckItem>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            items: Vec::new(),
        }
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    /// Worst status over all items (`Fail` > `Inconclusive` > `Pass`).
    pub fn status(&self) -> Status {
        self.items
            .iter()
            .map(|i| i.status)
            .max()
            .unwrap_or(Status::Pass)
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_status_wins() {
        let mut r = Report::new("t");
        assert_eq!(r.status(), Status::Pass);
        r.push(CheckItem::pass("a"));
        r.push(CheckItem::inconclusive("b", "capped"));
        assert_eq!(r.status(), Status::Inconclusive);
        r.push(CheckItem::fail("c", Witness::Pair(0, 1)));
        assert_eq!(r.status(), Status::Fail);
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }
}
