use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use telinv::apps::{curl_components, scalar_triple, CurlInput};
use telinv::harness::{run_trials, sparse_suite, TrialConfig};
use telinv::inv::{self, Method};
use telinv::mat::{fmt_f64, minor_by_deletion, minor_by_formula, parse_matrix, random_matrix, write_matrix};
use telinv::{Error, Matrix, ReprKind};

const EXIT_SINGULAR: u8 = 2;
const EXIT_USAGE: u8 = 3;
const EXIT_UNSUPPORTED: u8 = 4;

#[derive(Parser)]
#[command(name = "telinv", version, about = "Closed-form determinants and inverses")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Telescope,
    Oracle,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Closed => Method::ClosedForm,
            MethodArg::Telescope => Method::Telescope,
            MethodArg::Oracle => Method::Oracle,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReprArg {
    Direct,
    Gamma,
    Cosine,
    Bessel,
    Hermite,
}

impl From<ReprArg> for ReprKind {
    fn from(r: ReprArg) -> Self {
        match r {
            ReprArg::Direct => ReprKind::Direct,
            ReprArg::Gamma => ReprKind::Gamma,
            ReprArg::Cosine => ReprKind::Cosine,
            ReprArg::Bessel => ReprKind::Bessel,
            ReprArg::Hermite => ReprKind::Hermite,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MinorBy {
    Deletion,
    Formula,
}

#[derive(clap::Args)]
struct Source {
    /// Matrix JSON file
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    input: Option<PathBuf>,
    /// Side of a seeded standard-normal matrix
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Draw complex entries for --random
    #[arg(long)]
    complex: bool,
    /// Defaults to closed for side ≤ 5 and telescope above
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    #[arg(long, value_enum, default_value = "direct")]
    repr: ReprArg,
}

#[derive(Subcommand)]
enum Verb {
    /// Print the determinant as `re im`
    Det(Source),
    /// Print the inverse as JSON and the residual max |A·X − I|
    Invert(Source),
    /// Print a minor matrix as JSON
    Minor {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        row: usize,
        #[arg(long)]
        col: usize,
        #[arg(long, value_enum, default_value = "formula")]
        by: MinorBy,
    },
    /// List the signed products of the determinant expansion
    Expand {
        #[arg(long)]
        size: usize,
    },
    /// Monte-Carlo MSE experiment against elimination
    Validate {
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 5)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        #[arg(long, value_enum, default_value = "direct")]
        repr: ReprArg,
        #[arg(long)]
        complex: bool,
        /// Histogram CSV destination
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the three sparse patterns against the oracles
    SparseCheck {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Vec<f64>,
    },
    /// Curl components from scale factors and partials
    Curl {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        h: Vec<f64>,
        /// Row-major d[i][j] = ∂(h_i F_i)/∂u_j
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        d: Vec<f64>,
    },
    /// Signed triple product and absolute volume
    Volume {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        c: Vec<f64>,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Lib(Error::Singular) => EXIT_SINGULAR,
        Failure::Lib(Error::Unsupported(_) | Error::Capacity { .. } | Error::ReprMismatch { .. }) => {
            EXIT_UNSUPPORTED
        }
        Failure::Lib(Error::Domain(_) | Error::Parse { .. }) | Failure::Io(_) => EXIT_USAGE,
    }
}

fn load(src: &Source) -> Result<Matrix, Failure> {
    match (&src.input, src.random) {
        (Some(path), _) => read_matrix(path),
        (None, Some(n)) if n >= 1 => Ok(random_matrix(n, src.seed, src.complex)),
        _ => Err(Error::Domain("--random needs a positive side".into()).into()),
    }
}

fn read_matrix(path: &PathBuf) -> Result<Matrix, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(parse_matrix(&bytes)?)
}

fn resolve(method: Option<MethodArg>, n: usize) -> Method {
    method.map_or_else(|| Method::default_for(n), Method::from)
}

fn expect_len(name: &str, v: &[f64], len: usize) -> Result<(), Failure> {
    if v.len() != len {
        return Err(Error::Domain(format!("--{name} needs {len} comma-separated values")).into());
    }
    Ok(())
}

fn run(verb: Verb) -> Result<String, Failure> {
    let mut out = String::new();
    match verb {
        Verb::Det(src) => {
            let a = load(&src)?;
            let d = inv::det_by(&a, resolve(src.method, a.n()), src.repr.into())?;
            out.push_str(&format!("{} {}\n", fmt_f64(d.re), fmt_f64(d.im)));
        }
        Verb::Invert(src) => {
            let a = load(&src)?;
            let x = inv::inverse_by(&a, resolve(src.method, a.n()), src.repr.into())?;
            if x.near_singular {
                eprintln!("warning: determinant is tiny relative to the row scale");
            }
            out.push_str(&write_matrix(&x.matrix));
            out.push('\n');
            out.push_str(&format!("residual {}\n", fmt_f64(a.residual(&x.matrix)?)));
        }
        Verb::Minor { input, row, col, by } => {
            let a = read_matrix(&input)?;
            let m = match by {
                MinorBy::Deletion => minor_by_deletion(&a, row, col)?,
                MinorBy::Formula => minor_by_formula(&a, row, col)?,
            };
            out.push_str(&write_matrix(&m));
            out.push('\n');
        }
        Verb::Expand { size } => {
            for t in inv::expand_terms(size)? {
                out.push_str(&t.to_string());
                out.push('\n');
            }
        }
        Verb::Validate { trials, size, seed, method, repr, complex, out: path } => {
            let cfg = TrialConfig {
                trials,
                size,
                seed,
                method: resolve(method, size),
                repr: repr.into(),
                complex,
            };
            let report = run_trials(&cfg)?;
            fs::write(&path, report.to_csv())
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            out.push_str(&report.summary_json());
            out.push('\n');
        }
        Verb::SparseCheck { values } => {
            expect_len("values", &values, 5)?;
            let xs: [Complex64; 5] = std::array::from_fn(|k| Complex64::new(values[k], 0.0));
            out.push_str("case det_re det_im det_error inverse_error result\n");
            for r in sparse_suite(&xs)? {
                out.push_str(&format!(
                    "{} {} {} {} {} {}\n",
                    r.case,
                    fmt_f64(r.det.re),
                    fmt_f64(r.det.im),
                    fmt_f64(r.det_error),
                    fmt_f64(r.inverse_error),
                    if r.pass { "pass" } else { "fail" }
                ));
            }
        }
        Verb::Curl { h, d } => {
            expect_len("h", &h, 3)?;
            expect_len("d", &d, 9)?;
            let inp = CurlInput {
                h: [h[0], h[1], h[2]],
                d: std::array::from_fn(|i| std::array::from_fn(|j| d[3 * i + j])),
            };
            let c = curl_components(&inp)?;
            out.push_str(&format!("{} {} {}\n", fmt_f64(c[0]), fmt_f64(c[1]), fmt_f64(c[2])));
        }
        Verb::Volume { a, b, c } => {
            expect_len("a", &a, 3)?;
            expect_len("b", &b, 3)?;
            expect_len("c", &c, 3)?;
            let v = scalar_triple([a[0], a[1], a[2]], [b[0], b[1], b[2]], [c[0], c[1], c[2]]);
            out.push_str(&format!("signed {}\nvolume {}\n", fmt_f64(v), fmt_f64(v.abs())));
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.verb) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Lib(e) => eprintln!("error: {e}"),
                Failure::Io(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(exit_code(&f))
        }
    }
}
