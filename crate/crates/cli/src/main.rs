use clap::{Args, Parser, Subcommand};
use lie_color::glcolor::{classify_subalgebra, color_bracket, GradedSubalgebra, GradedTuple, Mode};
use lie_color::grading::{BiCharacterTable, GradingGroup};
use lie_color::json::{
    self, BicharacterInput, BicharacterJson, CatalogEntryJson, ColorMatrixJson, FamilyJson, HgmuJson, MuJson,
    TriangulationJson, VerdictJson,
};
use lie_color::maximal::{self, Variant};
use lie_color::musolve::{self, AbelianColorAlgebra, IndexReading};
use lie_color::reduce;
use lie_color::verify;
use lie_color::Error;
use serde::Serialize;
use std::io::{Read, Write};
use std::process::ExitCode;

/// Abelian subalgebras of Lie color algebras over prime fields. All output is JSON.
#[derive(Parser)]
#[command(name = "lie-color", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// The grading group and commutation factor. Without `--eps` or `--cyclic`
/// the grading is trivial.
#[derive(Args, Clone)]
struct Grading {
    /// Bi-character as inline JSON or `@path`: {"factors":[..],"eps":[[..]]} or {"cyclic":k,"omega":s}.
    #[arg(long, conflicts_with = "cyclic")]
    eps: Option<String>,
    /// Shorthand for ε(a,b) = ω^{ab} on Z_k.
    #[arg(long)]
    cyclic: Option<u64>,
    #[arg(long, allow_hyphen_values = true, requires = "cyclic")]
    omega: Option<i64>,
    /// Field characteristic; by default the smallest admissible prime ≥ 5.
    #[arg(long)]
    prime: Option<u64>,
}

impl Grading {
    fn resolve(&self) -> Result<BiCharacterTable, Error> {
        if let Some(s) = &self.eps {
            return json::parse_bicharacter(&read_inline(s)?, self.prime);
        }
        if let Some(k) = self.cyclic {
            return BicharacterInput::Cyclic { cyclic: k, omega: self.omega.unwrap_or(1), prime: None }
                .resolve(self.prime);
        }
        let g = GradingGroup::trivial();
        let f = json::field_for(&g, self.prime)?;
        Ok(BiCharacterTable::trivial(g, f))
    }
}

#[derive(Args)]
struct Input {
    /// Subalgebra JSON file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    input: String,
}

impl Input {
    fn subalgebra(&self, eps: &BiCharacterTable) -> Result<GradedSubalgebra, Error> {
        let s = if self.input == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
            s
        } else {
            read_file(&self.input)?
        };
        json::parse_subalgebra(&s, eps.group(), eps.field())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the bi-character axioms and print the validated table.
    Validate {
        #[command(flatten)]
        grading: Grading,
    },
    /// Color bracket of two homogeneous matrices.
    Bracket {
        #[command(flatten)]
        grading: Grading,
        #[arg(long)]
        tuple: String,
        /// ColorMatrix JSON, inline or `@path`.
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Simultaneously triangulate an abelian subalgebra.
    Triangulate {
        #[command(flatten)]
        grading: Grading,
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "prenil")]
        mode: Mode,
    },
    /// Decompose an abelian subalgebra of strictly upper triangular matrices into generalized matrix units.
    Hgmu {
        #[command(flatten)]
        grading: Grading,
        #[command(flatten)]
        input: Input,
    },
    /// Build one of the block families E, F, E', F'.
    ConstructMaximal {
        #[command(flatten)]
        grading: Grading,
        #[arg(long)]
        variant: Variant,
        /// Degrees of the basis positions; defaults to all zero with `--m`.
        #[arg(long, required_unless_present = "m")]
        tuple: Option<String>,
        #[arg(long, conflicts_with = "tuple")]
        m: Option<usize>,
    },
    /// The listed maximal abelian representatives for m = 2, 3, with flags, maximality and invariants.
    Catalog {
        #[command(flatten)]
        grading: Grading,
        #[arg(long, required_unless_present = "tuple")]
        m: Option<usize>,
        #[arg(long, conflicts_with = "m")]
        tuple: Option<String>,
        #[arg(long)]
        mode: Mode,
        #[arg(long, default_value_t = 100_000)]
        effort: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide whether an abelian subalgebra is maximal among those satisfying the mode.
    CheckMaximal {
        #[command(flatten)]
        grading: Grading,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        mode: Mode,
        /// Exhaust candidate spaces with at most this many points; sample this many otherwise.
        #[arg(long, default_value_t = 100_000)]
        effort: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Minimal faithful dimension of an abelian color algebra over Z_k.
    Mu {
        #[arg(long)]
        k: u64,
        /// Graded dimensions in the order of degrees 1, 2, ..., k-1, 0.
        #[arg(long)]
        dims: String,
        #[arg(long)]
        mode: Mode,
        /// ω for the commutation factor used to verify the embedding.
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        omega: i64,
        #[arg(long)]
        prime: Option<u64>,
        /// Impose the capacity inequality only on residues 1, ..., k-1.
        #[arg(long)]
        strict_index_range: bool,
    },
    /// Grow random abelian subalgebras and report any beating the dimension bound.
    SearchCounterexample {
        #[command(flatten)]
        grading: Grading,
        #[arg(long)]
        tuple: String,
        #[arg(long)]
        mode: Mode,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rank and orthogonality identities for a commuting upper triangular family.
    AppendixCheck {
        #[command(flatten)]
        grading: Grading,
        #[command(flatten)]
        input: Input,
    },
}

fn read_file(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn read_inline(s: &str) -> Result<String, Error> {
    match s.strip_prefix('@') {
        Some(path) => read_file(path),
        None => Ok(s.to_string()),
    }
}

fn emit<T: Serialize>(value: &T) -> Result<(), Error> {
    let line = serde_json::to_string(value).expect("output types serialize");
    // a closed pipe downstream is not an error
    let _ = writeln!(std::io::stdout().lock(), "{line}");
    Ok(())
}

fn tuple_arg(eps: &BiCharacterTable, tuple: Option<&str>, m: Option<usize>) -> Result<GradedTuple, Error> {
    match (tuple, m) {
        (Some(t), _) => json::parse_tuple(&read_inline(t)?, eps.group()),
        (None, Some(m)) => Ok(GradedTuple::new(eps.group().clone(), vec![eps.group().zero(); m])),
        (None, None) => Err(Error::Parse("either --tuple or --m is required".into())),
    }
}

fn run(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Validate { grading } => emit(&BicharacterJson::from_table(&grading.resolve()?)),
        Command::Bracket { grading, tuple, x, y } => {
            let eps = grading.resolve()?;
            let t = json::parse_tuple(&read_inline(&tuple)?, eps.group())?;
            let x = json::parse_color_matrix(&read_inline(&x)?, &t, eps.field())?;
            let y = json::parse_color_matrix(&read_inline(&y)?, &t, eps.field())?;
            emit(&ColorMatrixJson::from_matrix(&color_bracket(&x, &y, &eps)?, eps.group()))
        }
        Command::Triangulate { grading, input, mode } => {
            let eps = grading.resolve()?;
            let a = input.subalgebra(&eps)?;
            emit(&TriangulationJson::new(&reduce::triangulate(&a, mode, &eps)?))
        }
        Command::Hgmu { grading, input } => {
            let eps = grading.resolve()?;
            let a = input.subalgebra(&eps)?;
            let dec = reduce::hgmu_decompose(&a, &eps)?;
            let check = reduce::check_hgmu(&a, &dec, &eps);
            emit(&HgmuJson::new(&dec, check))
        }
        Command::ConstructMaximal { grading, variant, tuple, m } => {
            let eps = grading.resolve()?;
            let t = tuple_arg(&eps, tuple.as_deref(), m)?;
            let fam = maximal::construct(variant, &t, &eps);
            let profile = maximal::graded_dim_profile(variant, &t).ok();
            emit(&FamilyJson::new(&fam, profile))
        }
        Command::Catalog { grading, m, tuple, mode, effort, seed } => {
            let eps = grading.resolve()?;
            let t = tuple_arg(&eps, tuple.as_deref(), m)?;
            let entries = maximal::small_m_catalog(&t, &eps, mode)?;
            let out: Vec<CatalogEntryJson> = entries
                .iter()
                .map(|e| {
                    let Some(a) = &e.algebra else {
                        return CatalogEntryJson::new(e, None, None, None);
                    };
                    let flags = classify_subalgebra(a, &eps);
                    let verdict = maximal::is_maximal_abelian(a, mode, &eps, effort, seed)
                        .ok()
                        .map(|v| VerdictJson::new(&v, eps.group()));
                    let fp = maximal::fingerprint(a, &eps).ok();
                    CatalogEntryJson::new(e, Some(flags), verdict, fp)
                })
                .collect();
            emit(&out)
        }
        Command::CheckMaximal { grading, input, mode, effort, seed } => {
            let eps = grading.resolve()?;
            let a = input.subalgebra(&eps)?;
            let v = maximal::is_maximal_abelian(&a, mode, &eps, effort, seed)?;
            emit(&VerdictJson::new(&v, eps.group()))
        }
        Command::Mu { k, dims, mode, omega, prime, strict_index_range } => {
            let l = AbelianColorAlgebra::from_profile(k, &json::parse_dims(&dims)?)?;
            let reading = if strict_index_range { IndexReading::Strict } else { IndexReading::All };
            let mut cert = musolve::compute_mu(&l, mode, reading)?;
            let faithful = match &cert.embedding {
                Some(emb) => {
                    let eps = BicharacterInput::Cyclic { cyclic: k, omega, prime: None }.resolve(prime)?;
                    cert.embedding = Some(emb.over(eps.field()));
                    Some(musolve::faithful_check(&l, &cert, &eps))
                }
                None => None,
            };
            emit(&MuJson::new(&cert, faithful))
        }
        Command::SearchCounterexample { grading, tuple, mode, trials, seed } => {
            let eps = grading.resolve()?;
            let t = json::parse_tuple(&read_inline(&tuple)?, eps.group())?;
            emit(&verify::random_abelian_search(&t, &eps, mode, trials, seed))
        }
        Command::AppendixCheck { grading, input } => {
            let eps = grading.resolve()?;
            let a = input.subalgebra(&eps)?;
            let w = verify::appendix_identities(a.basis(), a.tuple(), &eps)?;
            emit(&serde_json::json!({ "holds": w.checks.holds(), "witness": w }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let body = serde_json::json!({ "error": e.code(), "detail": e.to_string() });
            eprintln!("{body}");
            ExitCode::from(if e.is_parse() { 2 } else { 1 })
        }
    }
}
