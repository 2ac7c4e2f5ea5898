//! `cbdiv`: ranks, divisor classes and certificates from the command line.
//!
//! Exit codes: 0 success, 1 failing reproduction criteria, 2 bad input,
//! 3 internal consistency failure.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use cbdiv::criteria::{
    additive_check, certify, critical_level, scaling_check, theta_level, vanishing_test,
    verify_certificate, Certificate,
};
use cbdiv::divisor::symmetric_class;
use cbdiv::hassett::compare;
use cbdiv::reproduce::run_all;
use cbdiv::tensor::coinvariant_dim;
use cbdiv::{
    degree_on_m04, fcurve_intersection, fusion_rank, intersection_vector, rank_quantum,
    rank_verlinde, BundleSpec, Error, FCurve, HassettWeights, Rational64, Result,
};

#[derive(Parser)]
#[command(
    name = "cbdiv",
    version,
    about = "Conformal blocks divisors on M_{0,n} in type A"
)]
struct Cli {
    /// Worker threads for F-curve sums (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    KacWalton,
    Verlinde,
    Quantum,
    /// Run all three and fail if they disagree.
    All,
}

#[derive(Args)]
struct BundleArgs {
    /// `sl4`, `sl_4` or `4`.
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    level: u32,
    /// Semicolon-separated weights, e.g. "[1,0,0,0];[3,1,1,0]^3" or "w1;2w1+w3^3".
    #[arg(long)]
    weights: String,
}

impl BundleArgs {
    fn spec(&self) -> Result<BundleSpec> {
        BundleSpec::parse(&self.algebra, self.level, &self.weights)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Rank of the conformal blocks bundle.
    Rank {
        #[command(flatten)]
        bundle: BundleArgs,
        #[arg(long, value_enum, default_value_t = Backend::KacWalton)]
        backend: Backend,
    },
    /// Dimension of the invariants in the tensor product (the level is ignored).
    Coinv {
        #[command(flatten)]
        bundle: BundleArgs,
    },
    /// Degree on M_{0,4}.
    Degree {
        #[command(flatten)]
        bundle: BundleArgs,
    },
    /// Intersection with one F-curve, e.g. --blocks "1|2|3|4,5,6".
    Fcurve {
        #[command(flatten)]
        bundle: BundleArgs,
        #[arg(long)]
        blocks: String,
    },
    /// Full intersection vector, plus the B_j coefficients for symmetric weights.
    Class {
        #[command(flatten)]
        bundle: BundleArgs,
    },
    /// Theta and critical levels and the vanishing verdict they give.
    Levels {
        #[command(flatten)]
        bundle: BundleArgs,
    },
    /// Vanishing or nonvanishing certificate.
    Nonvanishing {
        #[command(flatten)]
        bundle: BundleArgs,
        /// Search auxiliary row pairs, trying at most this many candidates.
        #[arg(long, num_args = 0..=1, default_missing_value = "100000")]
        search_aux: Option<u64>,
    },
    /// D(mu + nu, l + m) = D(mu, l) + D(nu, m) under the rank one hypotheses.
    Decompose {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        mu_level: u32,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        nu_level: u32,
    },
    /// D(N lambda, N l) = N D(lambda, l) for a rank one bundle.
    Scale {
        #[command(flatten)]
        bundle: BundleArgs,
        #[arg(long)]
        factor: u32,
    },
    /// Compare the curves contracted by D with those contracted by a Hassett reduction.
    HassettCompare {
        #[command(flatten)]
        bundle: BundleArgs,
        /// Hassett weights, e.g. "1/4^9".
        #[arg(long)]
        hassett: String,
    },
    /// Run the acceptance suite and print a pass/fail table.
    Reproduce {
        /// Only these criteria, e.g. "1,5,7".
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

fn rank_report(spec: &BundleSpec, backend: Backend) -> Result<Value> {
    let rank = match backend {
        Backend::KacWalton => fusion_rank(spec)?,
        Backend::Verlinde => rank_verlinde(spec)?,
        Backend::Quantum => rank_quantum(spec)?,
        Backend::All => {
            let (k, v, q) = (
                fusion_rank(spec)?,
                rank_verlinde(spec)?,
                rank_quantum(spec)?,
            );
            if k != v || k != q {
                return Err(Error::InternalConsistency(format!(
                    "backends disagree for {spec}: Kac-Walton {k}, Verlinde {v}, quantum {q}"
                )));
            }
            k
        }
    };
    Ok(json!({ "rank": rank }))
}

fn certificate_report(cert: &Certificate) -> Result<Value> {
    let mut v =
        serde_json::to_value(cert).map_err(|e| Error::InternalConsistency(e.to_string()))?;
    if let Value::Object(m) = &mut v {
        m.insert("verified".into(), Value::Bool(verify_certificate(cert)?));
    }
    Ok(v)
}

fn class_report(spec: &BundleSpec) -> Result<Value> {
    let dc = intersection_vector(spec, true)?;
    let values: Map<String, Value> = dc
        .values
        .iter()
        .map(|(f, &v)| {
            let key = if dc.up_to_symmetry {
                f.class_key()
            } else {
                f.to_string()
            };
            (key, json!(v))
        })
        .collect();
    let mut out = json!({
        "n": dc.n,
        "up_to_symmetry": dc.up_to_symmetry,
        "intersections": values,
        "zero": dc.is_zero(),
    });
    if dc.up_to_symmetry && spec.n() >= 4 {
        let b = symmetric_class::<Rational64>(spec)?;
        let b: Map<String, Value> = b
            .iter()
            .map(|(j, q)| (j.to_string(), json!(q.to_string())))
            .collect();
        out["symmetric_B"] = Value::Object(b);
    }
    Ok(out)
}

fn execute(command: &Command) -> Result<(Value, bool)> {
    let value = match command {
        Command::Rank { bundle, backend } => rank_report(&bundle.spec()?, *backend)?,
        Command::Coinv { bundle } => {
            json!({ "coinvariants": coinvariant_dim(bundle.spec()?.weights())? })
        }
        Command::Degree { bundle } => {
            let spec = bundle.spec()?;
            json!({ "degree": degree_on_m04(&spec.algebra(), spec.weights())? })
        }
        Command::Fcurve { bundle, blocks } => {
            let spec = bundle.spec()?;
            let f = FCurve::new(spec.n(), cbdiv::syntax::parse_blocks(blocks)?)?;
            json!({ "fcurve": f.to_string(), "intersection": fcurve_intersection(&spec, &f)? })
        }
        Command::Class { bundle } => class_report(&bundle.spec()?)?,
        Command::Levels { bundle } => {
            let spec = bundle.spec()?;
            let cert = vanishing_test(&spec);
            json!({
                "level": spec.level(),
                "theta": theta_level::<Rational64>(spec.weights()).to_string(),
                "critical": critical_level(spec.rank_plus_one(), spec.weights()),
                "verdict": cert.verdict,
                "rule": cert.rule,
            })
        }
        Command::Nonvanishing { bundle, search_aux } => {
            certificate_report(&certify(&bundle.spec()?, *search_aux)?)?
        }
        Command::Decompose {
            algebra,
            mu,
            mu_level,
            nu,
            nu_level,
        } => {
            let mu = BundleSpec::parse(algebra, *mu_level, mu)?;
            let nu = BundleSpec::parse(algebra, *nu_level, nu)?;
            certificate_report(&additive_check(&mu, &nu)?)?
        }
        Command::Scale { bundle, factor } => {
            certificate_report(&scaling_check(&bundle.spec()?, *factor)?)?
        }
        Command::HassettCompare { bundle, hassett } => {
            let report = compare(&bundle.spec()?, &HassettWeights::parse(hassett)?)?;
            json!({
                "up_to_symmetry": report.up_to_symmetry,
                "identical": report.identical(),
                "both": report.both,
                "only_divisor": report.only_divisor,
                "only_hassett": report.only_hassett,
            })
        }
        Command::Reproduce { only } => {
            let outcomes = run_all(only);
            let all_passed = outcomes.iter().all(|o| o.passed);
            let v = serde_json::to_value(&outcomes)
                .map_err(|e| Error::InternalConsistency(e.to_string()))?;
            return Ok((
                json!({ "criteria": v, "all_passed": all_passed }),
                all_passed,
            ));
        }
    };
    Ok((value, true))
}

fn text(value: &Value, indent: usize, out: &mut String) {
    match value {
        Value::Object(m) => {
            for (k, v) in m {
                match v {
                    Value::Object(_) | Value::Array(_) if !is_flat(v) => {
                        out.push_str(&format!("{:indent$}{k}:\n", ""));
                        text(v, indent + 2, out);
                    }
                    _ => out.push_str(&format!("{:indent$}{k}: {}\n", "", scalar(v))),
                }
            }
        }
        Value::Array(items) => {
            for v in items {
                out.push_str(&format!("{:indent$}-\n", ""));
                text(v, indent + 2, out);
            }
        }
        v => out.push_str(&format!("{:indent$}{}\n", "", scalar(v))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

fn reproduce_table(value: &Value) -> String {
    let mut out = String::new();
    for o in value["criteria"].as_array().into_iter().flatten() {
        let status = if o["passed"] == Value::Bool(true) {
            "PASS"
        } else {
            "FAIL"
        };
        out.push_str(&format!(
            "{:>2}  {status}  {:>8} ms  {}\n",
            o["id"].to_string(),
            o["elapsed_ms"].to_string(),
            o["anchor"].as_str().unwrap_or_default()
        ));
        if let Some(e) = o["error"].as_str() {
            out.push_str(&format!("      error: {e}\n"));
        }
        for c in o["checks"].as_array().into_iter().flatten() {
            if c["passed"] == Value::Bool(false) {
                out.push_str(&format!(
                    "      failed: {}: {}\n",
                    c["label"].as_str().unwrap_or_default(),
                    c["detail"].as_str().unwrap_or_default()
                ));
            }
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: could not start the thread pool: {e}");
            return ExitCode::from(3);
        }
    }
    match execute(&cli.command) {
        Ok((value, ok)) => {
            match (cli.format, &cli.command) {
                (Format::Json, _) => println!("{value}"),
                (Format::Text, Command::Reproduce { .. }) => print!("{}", reproduce_table(&value)),
                (Format::Text, _) => {
                    let mut s = String::new();
                    text(&value, 0, &mut s);
                    print!("{s}");
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 3 } else { 2 })
        }
    }
}
