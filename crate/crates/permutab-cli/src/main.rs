use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use permutab_cli::commands::{self, CategoryInput, CliError, CmdResult, PaperCheck, SearchOverrides};

/// Finite universal-algebra and relation-calculus workbench.
///
/// Exit codes: 0 = property holds or object produced, 1 = property fails
/// (with witness), 2 = usage or input error, 3 = inconclusive (a cap or
/// limit was hit). `PERMUTAB_CAP` overrides default search and clone caps.
#[derive(Parser)]
#[command(name = "permutab", version, about)]
struct Cli {
    /// Emit machine-readable JSON (indices instead of labels)
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check an identity set against an algebra, exhaustively
    CheckIdentities {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        identities: PathBuf,
    },
    /// Binary relation calculus
    #[command(subcommand)]
    Relcalc(RelcalcCmd),
    /// Check that a relation is a subalgebra of the algebra's square
    Compatible {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Least compatible equivalence containing a relation
    CongruenceGen {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        relation: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the alternating composites of two relations
    Permutes {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Hagemann's relation conditions over all compatible reflexive relations
    Hagemann {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        n: usize,
        /// Largest carrier admitted for the relation sweep
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Saturate the ternary clone and list its operations
    #[command(name = "clone")]
    CloneOps {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Search the clone for a Hagemann-Mitschke chain at degree n
    HmTerms {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Least degree with a Hagemann-Mitschke chain
    Degree {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Instance-check the implications between the permutability routes
    CrossValidate {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Finite internal categories
    #[command(subcommand)]
    Category(CategoryCmd),
    /// Re-verify the catalog claims (span, subtraction, monoid, perm)
    VerifyPaper {
        #[arg(value_enum)]
        what: Option<PaperWhat>,
    },
    /// Enumerate or find finite models of a search spec
    Search {
        #[arg(long)]
        spec: PathBuf,
        /// Override the size range, e.g. 2..3
        #[arg(long)]
        sizes: Option<String>,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Keep one representative per isomorphism class
        #[arg(long)]
        dedup: bool,
        /// Write the found model here (predicate searches)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write every model as a file in this directory
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// The built-in fixture catalog
    #[command(subcommand)]
    Fixtures(FixturesCmd),
}

#[derive(Subcommand)]
enum RelcalcCmd {
    /// Relational composition, left to right
    Compose {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Converse {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// n-th relational power (n >= 1)
    Power {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transitive closure
    Closure {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reflexivity, symmetry, transitivity flags
    Properties {
        #[arg(long)]
        relation: PathBuf,
    },
}

#[derive(Args)]
struct CategoryInputArgs {
    /// A category document
    #[arg(long)]
    category: Option<PathBuf>,
    /// A reflexive transitive relation to view as a thin category
    #[arg(long)]
    preorder: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CategoryCmd {
    /// Check all category axioms and list violations
    Validate {
        #[command(flatten)]
        input: CategoryInputArgs,
    },
    /// At most one morphism per ordered pair of objects?
    Thin {
        #[command(flatten)]
        input: CategoryInputArgs,
    },
    /// Preorder to thin category
    FromPreorder {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Thin category back to its relation
    ToPreorder {
        #[command(flatten)]
        input: CategoryInputArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The composability relation S on morphisms
    SRelation {
        #[command(flatten)]
        input: CategoryInputArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Left cancellation check
    Cancel {
        #[command(flatten)]
        input: CategoryInputArgs,
    },
    /// Construct a two-sided inversion or report the obstruction
    Groupoidify {
        #[command(flatten)]
        input: CategoryInputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PaperWhat {
    Span,
    Subtraction,
    Monoid,
    Perm,
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// Names of all built-in fixtures
    List,
    /// Write a fixture as a document
    Export {
        #[arg(long, conflicts_with = "all")]
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Export the whole catalog
        #[arg(long, requires = "dir")]
        all: bool,
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

fn parse_sizes(text: &str) -> Result<(usize, usize), CliError> {
    let parts: Vec<&str> = text.split("..").collect();
    let parsed = match parts.as_slice() {
        [single] => single.parse().map(|n: usize| (n, n)).ok(),
        [lo, hi] => lo.parse().ok().zip(hi.parse().ok()),
        _ => None,
    };
    parsed.ok_or_else(|| CliError::Usage(format!("cannot parse size range `{text}` (use a..b)")))
}

fn dispatch(cli: Cli) -> Result<CmdResult, CliError> {
    let json = cli.json;
    match cli.command {
        Cmd::CheckIdentities { algebra, identities } => {
            commands::check_identities(&algebra, &identities, json)
        }
        Cmd::Relcalc(op) => match op {
            RelcalcCmd::Compose { left, right, out } => {
                commands::relcalc_compose(&left, &right, out.as_deref())
            }
            RelcalcCmd::Converse { relation, out } => {
                commands::relcalc_converse(&relation, out.as_deref())
            }
            RelcalcCmd::Power { relation, n, out } => {
                commands::relcalc_power(&relation, n, out.as_deref())
            }
            RelcalcCmd::Closure { relation, out } => {
                commands::relcalc_closure(&relation, out.as_deref())
            }
            RelcalcCmd::Properties { relation } => commands::relcalc_properties(&relation, json),
        },
        Cmd::Compatible { relation, algebra } => commands::compatible(&relation, &algebra, json),
        Cmd::CongruenceGen { algebra, relation, out } => {
            commands::congruence_gen(&algebra, &relation, out.as_deref())
        }
        Cmd::Permutes { left, right, n } => commands::permutes(&left, &right, n, json),
        Cmd::Hagemann { algebra, n, max_size } => {
            commands::hagemann(&algebra, n, max_size, json)
        }
        Cmd::CloneOps { algebra, cap, workers } => {
            commands::clone_ops(&algebra, cap, workers, json)
        }
        Cmd::HmTerms { algebra, n, cap, workers } => {
            commands::hm_terms(&algebra, n, cap, workers, json)
        }
        Cmd::Degree { algebra, max_n, cap, workers } => {
            commands::degree(&algebra, max_n, cap, workers, json)
        }
        Cmd::CrossValidate { algebra, max_n, cap, max_size, workers } => {
            commands::run_cross_validate(&algebra, max_n, cap, max_size, workers, json)
        }
        Cmd::Category(op) => {
            let load = |input: &CategoryInputArgs| -> Result<CategoryInput, CliError> {
                commands::load_category_input(input.category.as_deref(), input.preorder.as_deref())
            };
            match op {
                CategoryCmd::Validate { input } => commands::category_validate(&load(&input)?, json),
                CategoryCmd::Thin { input } => commands::category_thin(&load(&input)?, json),
                CategoryCmd::FromPreorder { relation, out } => {
                    commands::category_from_preorder(&relation, out.as_deref())
                }
                CategoryCmd::ToPreorder { input, out } => {
                    commands::category_to_preorder(&load(&input)?, out.as_deref())
                }
                CategoryCmd::SRelation { input, out } => {
                    commands::category_s_relation(&load(&input)?, out.as_deref())
                }
                CategoryCmd::Cancel { input } => commands::category_cancel(&load(&input)?, json),
                CategoryCmd::Groupoidify { input } => {
                    commands::category_groupoidify(&load(&input)?, json)
                }
            }
        }
        Cmd::VerifyPaper { what } => {
            let what = what.map(|w| match w {
                PaperWhat::Span => PaperCheck::Span,
                PaperWhat::Subtraction => PaperCheck::Subtraction,
                PaperWhat::Monoid => PaperCheck::Monoid,
                PaperWhat::Perm => PaperCheck::Perm,
            });
            commands::verify_paper(what, json)
        }
        Cmd::Search { spec, sizes, cap, workers, dedup, out, out_dir } => {
            let sizes = sizes.as_deref().map(parse_sizes).transpose()?;
            let overrides = SearchOverrides {
                sizes,
                cap,
                workers,
                dedup,
                out,
                out_dir,
            };
            commands::run_search(&spec, &overrides, json)
        }
        Cmd::Fixtures(op) => match op {
            FixturesCmd::List => Ok(commands::fixtures_list()),
            FixturesCmd::Export { name, out, all, dir } => {
                if all {
                    commands::fixtures_export_all(dir.as_deref().expect("clap requires --dir"))
                } else {
                    let name = name.ok_or_else(|| {
                        CliError::Usage("provide --name NAME or --all --dir DIR".into())
                    })?;
                    commands::fixtures_export(&name, out.as_deref())
                }
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(result) => {
            if !result.output.is_empty() {
                print!("{}", result.output);
                if !result.output.ends_with('\n') {
                    println!();
                }
            }
            ExitCode::from(result.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::EXIT_USAGE)
        }
    }
}
