use clap::{Args, Parser, Subcommand, ValueEnum};
use rigid4::construct::{goursat_params, goursat_triple, integral_triple, is_irreducible, GIISpectra, Gauge};
use rigid4::exactnum::{fmt_rat, parse_rat, Rat};
use rigid4::group::{enumerate_group_with, Workers, DEFAULT_CAP};
use rigid4::hermitian::{arcs_definite, finite_monodromy, finite_monodromy_par, hermitian_matrix, param_definite};
use rigid4::obstruction::quaternion_class;
use rigid4::ode::{ode_coefficients, series_solutions, LinearOperator, SingularPoint};
use rigid4::search::{search_finite, search_moduli_q, to_csv, SearchBounds};
use rigid4::stargraph::StarDiagram;
use rigid4::verify::{check, Identity};
use serde::Serialize;
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rigid4", version, about = "Exact computations with rank-4 rigid local systems of Goursat type II")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct SpectraArgs {
    /// Nontrivial exponents of T0, e.g. 1/3,2/3
    #[arg(long)]
    alpha: String,
    /// Exponents of the two T1 eigenvalues, e.g. 0,1/2
    #[arg(long)]
    beta: String,
    /// The four exponents of T_inf
    #[arg(long)]
    gamma: String,
}

impl SpectraArgs {
    fn spectra(&self) -> rigid4::Result<GIISpectra> {
        fn split(s: &str) -> Vec<&str> {
            s.split(',').map(str::trim).collect()
        }
        GIISpectra::parse(&split(&self.alpha), &split(&self.beta), &split(&self.gamma))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TripleKind {
    /// Goursat's normal form over the field of the exponents
    Goursat,
    /// The integral form over the smallest cyclotomic field
    Integral,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduce a star diagram to decide rigidity
    Rigid {
        /// A Goursat name (GI..GVII) or `n:leg;leg;..`
        #[arg(long)]
        diagram: String,
        #[arg(long, value_enum, default_value = "text")]
        format: TraceFormat,
    },
    /// Build a monodromy triple
    Construct {
        #[command(flatten)]
        s: SpectraArgs,
        #[arg(long, value_enum, default_value = "goursat")]
        triple: TripleKind,
    },
    /// Decide irreducibility
    Irreducible {
        #[command(flatten)]
        s: SpectraArgs,
    },
    /// Invariant Hermitian form: signature, definiteness criteria, finiteness
    Hermitian {
        #[command(flatten)]
        s: SpectraArgs,
        /// Galois twist at which the signature is evaluated
        #[arg(long, default_value_t = 1)]
        twist: i64,
        /// Also test definiteness in every embedding
        #[arg(long)]
        all_twists: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Enumerate the monodromy group
    Group {
        #[command(flatten)]
        s: SpectraArgs,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "integral")]
        triple: TripleKind,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Quaternion obstruction for field of moduli Q
    Obstruction {
        #[command(flatten)]
        s: SpectraArgs,
    },
    /// Goursat's fourth-order equation and its holomorphic solutions at 0
    Ode {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        gamma: String,
        #[arg(long, default_value_t = 8)]
        terms: usize,
    },
    /// Local exponents of an operator read from a JSON file
    Indicial {
        /// JSON list of coefficient polynomials, or the output of `ode`
        #[arg(long)]
        op: std::path::PathBuf,
        /// 0, 1 or inf
        #[arg(long)]
        at: String,
    },
    /// Check the series identities of the explicit algebraic solutions
    Verify {
        /// degree5, degree8, psi-xi, trinomial, power; all when omitted
        #[arg(long)]
        identity: Option<String>,
        #[arg(long, default_value_t = 25)]
        terms: usize,
    },
    /// Exhaustive searches
    Search {
        #[command(subcommand)]
        which: SearchCmd,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Finite-monodromy orbits within denominator bounds
    Finite {
        #[arg(long, default_value_t = 6)]
        max_abd: u64,
        #[arg(long, default_value_t = 30)]
        max_gd: u64,
        /// Keep only these conductors (comma separated)
        #[arg(long)]
        conductors: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Irreducible systems with field of moduli Q
    ModuliQ {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable output")
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

fn read_operator(path: &std::path::Path) -> rigid4::Result<LinearOperator> {
    let text = std::fs::read_to_string(path).map_err(|e| rigid4::Error::Other(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| rigid4::Error::Other(e.to_string()))?;
    let v = v.get("operator").cloned().unwrap_or(v);
    let rows: Vec<Vec<String>> = serde_json::from_value(v).map_err(|e| rigid4::Error::Other(e.to_string()))?;
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_rat(s)).collect::<rigid4::Result<Vec<Rat>>>())
        .collect::<rigid4::Result<Vec<_>>>()?;
    LinearOperator::new(rows)
}

fn pair(s: &str) -> rigid4::Result<(Rat, Rat)> {
    let v: Vec<Rat> = s.split(',').map(parse_rat).collect::<rigid4::Result<_>>()?;
    match v.as_slice() {
        [a, b] => Ok((a.clone(), b.clone())),
        _ => Err(rigid4::Error::Parse(s.to_string())),
    }
}

fn quad(s: &str) -> rigid4::Result<[Rat; 4]> {
    let v: Vec<Rat> = s.split(',').map(parse_rat).collect::<rigid4::Result<_>>()?;
    v.try_into().map_err(|_| rigid4::Error::Parse(s.to_string()))
}

fn run(cmd: Cmd) -> rigid4::Result<String> {
    Ok(match cmd {
        Cmd::Rigid { diagram, format } => {
            let d: StarDiagram = diagram.parse()?;
            let out = d.is_rigid()?;
            match format {
                TraceFormat::Json => pretty(&out),
                TraceFormat::Text => {
                    let mut s = d.render();
                    for (m, next) in &out.trace {
                        s.push_str(&format!("{m:?}:\n{}", next.render()));
                    }
                    if let Some(f) = &out.failure {
                        s.push_str(&format!(
                            "move C fails on leg {}: central {} vs neighbor {}\n",
                            f.leg, f.central, f.neighbor
                        ));
                    }
                    s.push_str(if out.rigid { "rigid" } else { "not rigid" });
                    s
                }
            }
        }
        Cmd::Construct { s, triple } => {
            let s = s.spectra()?;
            let t = match triple {
                TripleKind::Goursat => goursat_triple(&s.normalize_twist().0, &Gauge::Default)?,
                TripleKind::Integral => integral_triple(&s)?,
            };
            pretty(&t)
        }
        Cmd::Irreducible { s } => {
            let w = is_irreducible(&s.spectra()?);
            pretty(&json!({ "irreducible": w.is_irreducible(), "witness": w }))
        }
        Cmd::Hermitian { s, twist, all_twists, jobs } => {
            let s = s.spectra()?;
            let n = s.normalize_twist().0;
            let p = goursat_params(&n)?;
            let sig = hermitian_matrix(&p).signature(twist)?;
            let twisted = n.galois(twist);
            let (arcs, cert) = arcs_definite(&twisted)?;
            let mut out = json!({
                "twist": twist,
                "signature": sig,
                "verdict": sig.verdict(),
                "param_definite": param_definite(&p, twist)?,
                "arcs_definite": arcs,
                "arcs": cert,
            });
            if all_twists {
                let rep = if jobs > 1 { finite_monodromy_par(&s)? } else { finite_monodromy(&s)? };
                out["finite"] = json!(rep.finite);
                out["twists"] = json!(rep.twists);
            }
            pretty(&out)
        }
        Cmd::Group { s, cap, triple, jobs } => {
            let s = s.spectra()?;
            let t = match triple {
                TripleKind::Goursat => goursat_triple(&s.normalize_twist().0, &Gauge::Default)?,
                TripleKind::Integral => integral_triple(&s)?,
            };
            let workers = if jobs > 1 { Workers::Parallel } else { Workers::Single };
            let gens: Vec<_> = t.generators().into_iter().cloned().collect();
            let rep = if jobs > 1 {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .map_err(|e| rigid4::Error::Other(e.to_string()))?
                    .install(|| enumerate_group_with(&gens, cap, workers))?
            } else {
                enumerate_group_with(&gens, cap, workers)?
            };
            pretty(&rep)
        }
        Cmd::Obstruction { s } => {
            let q = quaternion_class(&s.spectra()?)?;
            pretty(&json!({ "D": q.disc, "mu": q.mu, "ramified": q.ramified }))
        }
        Cmd::Ode { alpha, gamma, terms } => {
            let c = ode_coefficients(pair(&alpha)?, quad(&gamma)?);
            let (p0, p1) = series_solutions(&c, terms)?;
            let op: Vec<Vec<String>> = c.operator().coeffs().iter().map(|p| rats(p)).collect();
            let series = |p: &rigid4::ode::PowerSeries| p.to_rats().map(|v| rats(&v)).unwrap_or_default();
            pretty(&json!({
                "coefficients": c,
                "operator": op,
                "phi0": series(&p0),
                "phi1": series(&p1),
            }))
        }
        Cmd::Indicial { op, at } => {
            let op = read_operator(&op)?;
            let at: SingularPoint = at.parse()?;
            let ind = op.indicial(at)?;
            pretty(&json!({
                "at": at.to_string(),
                "polynomial": rats(&ind.polynomial),
                "roots": rats(&ind.roots),
                "residual": rats(&ind.residual),
            }))
        }
        Cmd::Verify { identity, terms } => {
            let ids: Vec<Identity> = match identity {
                Some(s) => vec![s.parse()?],
                None => Identity::ALL.to_vec(),
            };
            let reports = ids.into_iter().map(|id| check(id, terms)).collect::<rigid4::Result<Vec<_>>>()?;
            pretty(&reports)
        }
        Cmd::Search { which } => match which {
            SearchCmd::Finite { max_abd, max_gd, conductors, jobs, format } => {
                let mut b = SearchBounds::new(max_abd, max_gd)?;
                if let Some(c) = conductors {
                    let list = c
                        .split(',')
                        .filter(|x| !x.trim().is_empty())
                        .map(|x| x.trim().parse::<u64>().map_err(|_| rigid4::Error::Parse(x.to_string())))
                        .collect::<rigid4::Result<Vec<u64>>>()?;
                    b = b.with_conductors(list);
                }
                let hits = search_finite(&b, jobs)?;
                match format {
                    Format::Json => pretty(&hits),
                    Format::Csv => to_csv(&hits).trim_end().to_string(),
                }
            }
            SearchCmd::ModuliQ { format } => {
                let hits = search_moduli_q()?;
                match format {
                    Format::Json => pretty(&hits),
                    Format::Csv => to_csv(&hits).trim_end().to_string(),
                }
            }
        },
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(out) => {
            // a closed pipe (`| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
