//! Command-line front end. [`dispatch`] runs one invocation and returns the
//! exit code with everything that would be printed, so tests can drive it
//! without spawning processes.

pub mod config;

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use satcert_core::cobordisms::{self, reverse_orientation, CobordismLabel};
use satcert_core::covers::{double_cover_decomposition, satellite_alexander_trivial};
use satcert_core::cs_invariants::{compactness_check, tau_brieskorn_family};
use satcert_core::exactmath::{definiteness, smith_normal_form, IntMatrix, SymIntMatrix};
use satcert_core::fs_invariant::{r_invariant, BrieskornSphere, RInvariantOptions};
use satcert_core::obstruction::{certify_family, chain_table, generate_family, Family, Verdict};
use satcert_core::{FamilyTriple, InvalidParams, SatelliteParams};

pub use config::{Config, ConfigError, OutputFormat};

#[derive(Debug, Parser)]
#[command(name = "satcert", version, about = "Independence certificates for satellites of torus knots")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, env = "SATCERT_FORMAT")]
    pub format: Option<OutputFormat>,
    /// Working precision in bits for numeric evaluation.
    #[arg(long, global = true, env = "SATCERT_PRECISION", default_value_t = 128)]
    pub precision: usize,
    /// Largest accepted distance from an integer.
    #[arg(long, global = true, env = "SATCERT_TOLERANCE", default_value_t = 1e-6)]
    pub tolerance: f64,
    /// Seed for randomized subcommands.
    #[arg(long, global = true, env = "SATCERT_SEED", default_value_t = 0)]
    pub seed: u64,
}

impl GlobalArgs {
    fn config(&self) -> Result<Config, ConfigError> {
        Config {
            precision_bits: self.precision,
            integrality_tolerance: self.tolerance,
            output_format: self.format,
            seed: self.seed,
        }
        .validate()
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fintushel–Stern invariant R(a1, a2, a3).
    RInvariant {
        a1: u64,
        a2: u64,
        a3: u64,
        /// Ceiling for automatic precision doubling.
        #[arg(long, default_value_t = 4096)]
        max_precision: usize,
    },
    /// Chern–Simons minimum of Σ(p, q, kpq - 1).
    Tau { p: u64, q: u64, k: u64 },
    /// Compactness inequalities for a terminal end and boundary entries.
    Compactness {
        /// Terminal parameters "p,q,k".
        #[arg(long)]
        terminal: String,
        /// Boundary entries "p,q,k;p,q,k;...".
        #[arg(long, default_value = "")]
        boundary: String,
    },
    /// Decomposition of the double branched cover of D_n(T_{p,q}).
    Cover { n: u64, p: u64, q: u64 },
    /// One of the definite cobordisms Z, R, P.
    Cobordism {
        label: String,
        n: u64,
        p: u64,
        q: u64,
        /// Crossing changes used by Z (default: the unknotting number).
        #[arg(long)]
        crossings: Option<u64>,
        /// Reverse the orientation of the record.
        #[arg(long)]
        reversed: bool,
    },
    /// Independence certificate for a family "n,p,q;n,p,q;...".
    Certify {
        #[arg(long)]
        family: String,
        /// Relation coefficients "c1,c2,..." used to assemble X.
        #[arg(long, allow_hyphen_values = true)]
        coefficients: Option<String>,
    },
    /// Extend a start member into a family satisfying the chain inequality.
    Generate {
        /// First member "n,p,q".
        #[arg(long)]
        start: String,
        #[arg(long)]
        count: usize,
        /// Keep the twist count fixed.
        #[arg(long)]
        fix_n: Option<u64>,
    },
    /// Smith normal form of an integer matrix "a,b;c,d".
    Snf {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Definiteness of a symmetric integer matrix.
    Definiteness {
        #[arg(allow_hyphen_values = true, required_unless_present = "random")]
        matrix: Option<String>,
        /// Classify a random symmetric matrix of this size (entries in [-5, 5]).
        #[arg(long, conflicts_with = "matrix")]
        random: Option<usize>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

/// A domain error, reported as `error[module::Name]: message`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainError {
    pub module: &'static str,
    pub name: &'static str,
    pub message: String,
}

impl From<satcert_core::Error> for DomainError {
    fn from(e: satcert_core::Error) -> Self {
        DomainError {
            module: e.module(),
            name: e.name(),
            message: e.to_string(),
        }
    }
}

fn invalid(module: &'static str) -> impl Fn(InvalidParams) -> DomainError {
    move |e| DomainError {
        module,
        name: "InvalidParams",
        message: e.to_string(),
    }
}

fn core_err<E: Into<satcert_core::Error>>(e: E) -> DomainError {
    DomainError::from(e.into())
}

/// One result in every format it supports.
struct Rendered {
    json: String,
    text: String,
    csv: Option<String>,
    default: OutputFormat,
    /// Nonzero exit code for a successful run with a negative verdict.
    code: i32,
}

impl Rendered {
    fn new<T: Serialize>(value: &T, text: String, default: OutputFormat) -> Self {
        let mut json = serde_json::to_string_pretty(value).expect("serializable");
        json.push('\n');
        Rendered {
            json,
            text,
            csv: None,
            default,
            code: 0,
        }
    }

    fn with_csv(mut self, rows: Vec<Vec<String>>) -> Self {
        self.csv = Some(csv(&rows));
        self
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv(rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(|s| csv_field(s)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

fn strings<const N: usize>(items: [&dyn ToString; N]) -> Vec<String> {
    items.iter().map(|x| x.to_string()).collect()
}

fn parse_triples(s: &str) -> Result<Vec<FamilyTriple>, InvalidParams> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

fn parse_coefficients(s: &str) -> Result<Vec<i64>, DomainError> {
    s.split(',')
        .map(str::trim)
        .map(|t| {
            t.parse().map_err(|_| DomainError {
                module: "obstruction",
                name: "InvalidParams",
                message: format!("invalid parameters: not an integer coefficient: {t:?}"),
            })
        })
        .collect()
}

fn random_symmetric(dim: usize, rng: &mut ChaCha8Rng) -> SymIntMatrix {
    let mut m = IntMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let v = BigInt::from(rng.gen_range(-5i64..=5));
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    SymIntMatrix::new(m).expect("symmetric by construction")
}

fn run(command: &Command, config: &Config) -> Result<Rendered, DomainError> {
    use OutputFormat::{Json, Text};
    let rendered = match command {
        Command::RInvariant {
            a1,
            a2,
            a3,
            max_precision,
        } => {
            let sphere = BrieskornSphere::positive(*a1, *a2, *a3).map_err(invalid("fs_invariant"))?;
            let options = RInvariantOptions {
                precision_bits: config.precision_bits,
                tolerance: config.integrality_tolerance,
                max_precision_bits: (*max_precision).max(config.precision_bits),
            };
            let r = r_invariant(&sphere, &options).map_err(core_err)?;
            let residual = format!("{:e}", r.residual);
            let text = format!(
                "sphere: {sphere}\nnumeric: {}\nrounded: {}\nresidual: {residual}\nprecision_bits: {}\n",
                r.numeric_string(),
                r.rounded,
                r.precision_bits
            );
            let rows = vec![
                strings([&"a1", &"a2", &"a3", &"numeric", &"rounded", &"residual", &"precision_bits"]),
                strings([a1, a2, a3, &r.numeric_string(), &r.rounded, &residual, &r.precision_bits]),
            ];
            Rendered::new(&r, text, Text).with_csv(rows)
        }
        Command::Tau { p, q, k } => {
            let t = FamilyTriple::new(*p, *q, *k).map_err(invalid("cs_invariants"))?;
            let tau = tau_brieskorn_family(&t);
            #[derive(Serialize)]
            struct TauOut<'a> {
                sphere: String,
                tau: &'a satcert_core::cs_invariants::TauValue,
            }
            let out = TauOut {
                sphere: t.brieskorn().to_string(),
                tau: &tau,
            };
            let rows = vec![
                strings([&"p", &"q", &"k", &"tau"]),
                strings([p, q, k, &tau]),
            ];
            Rendered::new(&out, format!("{tau}\n"), Text).with_csv(rows)
        }
        Command::Compactness { terminal, boundary } => {
            let terminal: FamilyTriple = terminal.parse().map_err(invalid("cs_invariants"))?;
            let boundary = parse_triples(boundary).map_err(invalid("cs_invariants"))?;
            let report = compactness_check(&boundary, &terminal);
            let mut text = format!("p1 = {}\n", report.pontryagin);
            let mut rows = vec![strings([&"comparison", &"lhs", &"rhs", &"holds"])];
            for c in &report.comparisons {
                let _ = writeln!(text, "{}: {} < {} {}", c.label, c.lhs, c.rhs, c.holds);
                rows.push(strings([&c.label, &c.lhs, &c.rhs, &c.holds]));
            }
            let _ = writeln!(text, "compact: {}", report.compact);
            Rendered::new(&report, text, Text).with_csv(rows)
        }
        Command::Cover { n, p, q } => {
            let s = SatelliteParams::new(*n, *p, *q).map_err(invalid("covers"))?;
            let d = double_cover_decomposition(&s);
            let alexander = satellite_alexander_trivial(&s);
            #[derive(Serialize)]
            struct CoverOut<'a> {
                #[serde(flatten)]
                decomposition: &'a satcert_core::covers::CoverDecomposition,
                alexander: &'a satcert_core::covers::AlexanderReport,
            }
            let text = format!(
                "Σ₂({s}) = (S³ ∖ N(T(2,{}))) ∪ 2(S³ ∖ N(T({},{})))\nφ1 = {}\nφ2 = {}\nalexander polynomial trivial: {}\n",
                d.exterior_link.q, p, q, d.gluings[0], d.gluings[1], alexander.trivial
            );
            Rendered::new(
                &CoverOut {
                    decomposition: &d,
                    alexander: &alexander,
                },
                text,
                Json,
            )
        }
        Command::Cobordism {
            label,
            n,
            p,
            q,
            crossings,
            reversed,
        } => {
            let label: CobordismLabel = label.parse().map_err(invalid("cobordisms"))?;
            let s = SatelliteParams::new(*n, *p, *q).map_err(invalid("cobordisms"))?;
            let mut r = cobordisms::build(label, &s, *crossings).map_err(core_err)?;
            if *reversed {
                r = reverse_orientation(&r);
            }
            let outgoing: Vec<String> = r.outgoing.iter().map(ToString::to_string).collect();
            let text = format!(
                "{}{}({s}): {} -> {}\nform: {}\ndefiniteness: {}\nsurgery slope: {}\nh1_z2_trivial: {}\n",
                if r.reversed { "-" } else { "" },
                r.label,
                r.incoming,
                if outgoing.is_empty() { "∅".to_string() } else { outgoing.join(" ⊔ ") },
                r.form,
                r.definiteness,
                r.surgery_slope,
                r.h1_z2_trivial
            );
            Rendered::new(&r, text, Json)
        }
        Command::Certify { family, coefficients } => {
            let family: Family = family.parse().map_err(invalid("obstruction"))?;
            let coefficients = coefficients.as_deref().map(parse_coefficients).transpose()?;
            let cert = certify_family(&family, coefficients.as_deref()).map_err(core_err)?;
            let mut text = String::new();
            for c in &cert.chain_checks {
                let _ = writeln!(text, "{}: {} < {} {}", c.index, c.lhs, c.rhs, c.ok);
            }
            let _ = writeln!(text, "form: {}", cert.total_form_definiteness);
            let verdict = match cert.verdict {
                Verdict::Independent => "Independent".to_string(),
                Verdict::CriterionFails { index } => format!("CriterionFails({index})"),
            };
            let _ = writeln!(text, "verdict: {verdict}");
            let mut rows = vec![strings([&"index", &"lhs", &"rhs", &"ok"])];
            rows.extend(cert.chain_checks.iter().map(|c| strings([&c.index, &c.lhs, &c.rhs, &c.ok])));
            let mut out = Rendered::new(&cert, text, Json).with_csv(rows);
            out.code = if cert.is_independent() { 0 } else { 1 };
            out
        }
        Command::Generate { start, count, fix_n } => {
            let start: SatelliteParams = start.parse().map_err(invalid("obstruction"))?;
            if *count == 0 {
                return Err(invalid("obstruction")(InvalidParams("count must be positive".into())));
            }
            let family = generate_family(start, *count, *fix_n).map_err(invalid("obstruction"))?;
            let table = chain_table(&family);
            let mut rows = vec![strings([&"index", &"n", &"p", &"q", &"lhs", &"rhs"])];
            rows.extend(table.iter().map(|r| strings([&r.index, &r.n, &r.p, &r.q, &r.lhs, &r.rhs])));
            let text = format!("{family}\n");
            Rendered::new(&table, text, OutputFormat::Csv).with_csv(rows)
        }
        Command::Snf { matrix } => {
            let m: IntMatrix = matrix.parse().map_err(core_err)?;
            let snf = smith_normal_form(&m);
            let diag: Vec<String> = snf.diagonal.iter().map(ToString::to_string).collect();
            let text = format!(
                "diagonal: [{}]\nleft: {}\nright: {}\n",
                diag.join(", "),
                snf.left,
                snf.right
            );
            let mut rows = vec![vec!["diagonal".to_string()]];
            rows.extend(diag.into_iter().map(|d| vec![d]));
            Rendered::new(&snf, text, Text).with_csv(rows)
        }
        Command::Definiteness { matrix, random } => {
            let form = match (matrix, random) {
                (Some(s), _) => {
                    let m: IntMatrix = s.parse().map_err(core_err)?;
                    SymIntMatrix::new(m).map_err(core_err)?
                }
                (None, Some(dim)) => random_symmetric(*dim, &mut ChaCha8Rng::seed_from_u64(config.seed)),
                (None, None) => unreachable!("clap requires one of matrix, --random"),
            };
            let class = definiteness(&form);
            #[derive(Serialize)]
            struct DefOut<'a> {
                form: &'a SymIntMatrix,
                definiteness: satcert_core::exactmath::Definiteness,
            }
            let text = if random.is_some() {
                format!("form: {form}\n{class}\n")
            } else {
                format!("{class}\n")
            };
            let rows = vec![strings([&"form", &"definiteness"]), strings([&form, &class])];
            Rendered::new(
                &DefOut {
                    form: &form,
                    definiteness: class,
                },
                text,
                Text,
            )
            .with_csv(rows)
        }
    };
    Ok(rendered)
}

/// Parses `argv` (program name first) and runs it.
///
/// Exit codes: 0 on success, 1 on a domain error or a negative certificate,
/// 2 on a usage or configuration error.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    let config = match cli.global.config() {
        Ok(c) => c,
        Err(e) => {
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error[cli::InvalidConfig]: {e}\n"),
            }
        }
    };
    match run(&cli.command, &config) {
        Ok(r) => {
            let format = config.output_format.unwrap_or(r.default);
            let stdout = match format {
                OutputFormat::Json => r.json,
                OutputFormat::Text => r.text,
                OutputFormat::Csv => match r.csv {
                    Some(csv) => csv,
                    None => {
                        return Outcome {
                            code: 2,
                            stdout: String::new(),
                            stderr: "error[cli::UnsupportedFormat]: this subcommand has no csv output\n".into(),
                        }
                    }
                },
            };
            Outcome {
                code: r.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error[{}::{}]: {}\n", e.module, e.name, e.message),
        },
    }
}
