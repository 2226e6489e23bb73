//! `equm`: evaluate, compare and audit decision models from the command line.
//!
//! Exit codes: 0 when every requested check holds, 1 when one fails,
//! 2 on load or usage errors, 3 when an id is unknown.

mod examples;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use equm::auditor::{audit, solver::solve_mixture_relation};
use equm::criteria::{maximin_compare_oracle, maximin_mixture, maximin_utilities, MaximinSpec};
use equm::formats::{parse_model_as, render_report, ModelDocument, OutputMode};
use equm::pref::{prefers, Regime};
use equm::{fixtures, Error, NsReal, Postulate, QOrdering};
use num_rational::BigRational;

#[derive(Parser)]
#[command(name = "equm", version, about = "Exact expected qualitative utility")]
struct Cli {
    /// Model file (TOML), or `builtin:NAME` for a bundled example
    #[arg(long, global = true)]
    model: Option<String>,
    /// Read the model under this regime instead of its own
    #[arg(long, global = true, value_parser = parse_regime)]
    regime: Option<Regime>,
    /// Mixture weights used by the audit are k/D
    #[arg(long = "grid-denominator", global = true)]
    grid_denominator: Option<u32>,
    /// Rounds of mixing applied to the generators before auditing
    #[arg(long = "closure-depth", global = true)]
    closure_depth: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Human)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Human,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Relation {
    Greater,
    Equivalent,
    Less,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact utility of a lottery, outcome or act
    Eval { id: String },
    /// Compare two alternatives
    Compare { a: String, b: String },
    /// Check the rationality postulates on the model's structure
    Audit {
        /// Postulate to check (repeatable); defaults to the regime's set
        #[arg(long = "postulate")]
        postulates: Vec<String>,
    },
    /// Weights α in (0, 1) with α·P + (1−α)·R in the given relation to Q
    Witness {
        p: String,
        q: String,
        r: String,
        #[arg(long, value_enum, default_value_t = Relation::Equivalent)]
        relation: Relation,
    },
    /// Compare maximin mixtures `I,λ,J` (λ·x_I + (1−λ)·x_J) pairwise
    Maximin {
        n: usize,
        /// Mixtures written `I,λ,J` with I < J; defaults to every pair at λ = 1/2
        mixtures: Vec<String>,
    },
    /// Reproduce the bundled examples and report pass/fail for each
    Examples,
}

fn parse_regime(s: &str) -> Result<Regime, String> {
    Regime::from_tag(s).ok_or_else(|| format!("unknown regime `{s}` (std, ns-util, ns-prob, ns)"))
}

/// Failure modes, mapped to exit codes.
enum Failure {
    Load(String),
    Unknown(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownId(_) | Error::UnknownState(_) => Failure::Unknown(e.to_string()),
            other => Failure::Load(other.to_string()),
        }
    }
}

fn quote(v: &str) -> String {
    if v.contains([' ', '"', '=']) {
        format!("\"{}\"", v.replace('"', "\\\""))
    } else {
        v.to_string()
    }
}

fn load(cli: &Cli) -> Result<ModelDocument, Failure> {
    let spec = cli
        .model
        .as_deref()
        .ok_or_else(|| Failure::Load("this command needs --model".into()))?;
    let text = match spec.strip_prefix("builtin:") {
        Some(name) => fixtures::ALL
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| t.to_string())
            .ok_or_else(|| Failure::Load(format!("no bundled model `{name}`")))?,
        None => std::fs::read_to_string(PathBuf::from(spec))
            .map_err(|e| Failure::Load(format!("{spec}: {e}")))?,
    };
    let mut doc = parse_model_as(&text, cli.regime)?;
    if let Some(d) = cli.grid_denominator {
        doc.audit.grid = d;
    }
    if let Some(d) = cli.closure_depth {
        doc.audit.depth = d;
    }
    Ok(doc)
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let machine = matches!(cli.output, Output::Machine);
    match &cli.command {
        Command::Eval { id } => {
            let doc = load(cli)?;
            let v = doc.value(id)?;
            let st = if doc.regime == Regime::NsProb {
                Some(v.standard_part()?)
            } else {
                None
            };
            if machine {
                let mut line = format!("VALUE id={} value={}", quote(id), quote(&v.to_string()));
                if let Some(s) = &st {
                    line.push_str(&format!(" standard-part={s}"));
                }
                println!("{line}");
            } else {
                println!("{v}");
                if let Some(s) = st {
                    println!("standard part: {s}");
                }
            }
            Ok(true)
        }
        Command::Compare { a, b } => {
            let doc = load(cli)?;
            let (va, vb) = (doc.value(a)?, doc.value(b)?);
            let ord = doc.compare(a, b)?;
            if machine {
                println!("{ord}");
            } else {
                println!("{ord}");
                println!("  u({a}) = {va}");
                println!("  u({b}) = {vb}");
            }
            Ok(true)
        }
        Command::Audit { postulates } => {
            let doc = load(cli)?;
            let ps = if postulates.is_empty() {
                doc.postulates()
            } else {
                postulates
                    .iter()
                    .map(|n| {
                        Postulate::from_name(n)
                            .ok_or_else(|| Failure::Load(format!("unknown postulate `{n}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?
            };
            let report = audit(&doc.structure()?, &ps)?;
            let mode = if machine { OutputMode::Machine } else { OutputMode::Human };
            print!("{}", render_report(&report, mode));
            Ok(report.all_hold())
        }
        Command::Witness { p, q, r, relation } => {
            let doc = load(cli)?;
            let rel = match relation {
                Relation::Greater => QOrdering::Greater,
                Relation::Equivalent => QOrdering::Equivalent,
                Relation::Less => QOrdering::Less,
            };
            let set = solve_mixture_relation(&doc.value(p)?, &doc.value(r)?, &doc.value(q)?, rel, doc.regime)?;
            let chosen = set.witness();
            if machine {
                let c = chosen.as_ref().map_or("none".to_string(), |c| c.to_string());
                println!("WITNESS set={} chosen={c}", quote(&set.to_string()));
            } else {
                println!("{set}");
            }
            Ok(chosen.is_some())
        }
        Command::Maximin { n, mixtures } => maximin(*n, mixtures, machine),
        Command::Examples => {
            let results = examples::run();
            let mut ok = true;
            for (name, r) in &results {
                match r {
                    Ok(detail) if machine => println!("EXAMPLE {name} PASS {}", quote(detail)),
                    Ok(detail) => println!("{name:13} pass  {detail}"),
                    Err(why) if machine => println!("EXAMPLE {name} FAIL {}", quote(why)),
                    Err(why) => println!("{name:13} FAIL  {why}"),
                }
                ok &= r.is_ok();
            }
            Ok(ok)
        }
    }
}

type Mixture = (usize, BigRational, usize);

fn parse_mixture(s: &str) -> Result<Mixture, Failure> {
    let bad = || Failure::Load(format!("mixture `{s}`: expected I,λ,J"));
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [i, w, j] = parts[..] else { return Err(bad()) };
    let w: NsReal = w.parse().map_err(|_| bad())?;
    if !w.is_standard() {
        return Err(bad());
    }
    let w = w.standard_part()?;
    Ok((i.parse().map_err(|_| bad())?, w, j.parse().map_err(|_| bad())?))
}

fn maximin(n: usize, mixtures: &[String], machine: bool) -> Result<bool, Failure> {
    let spec = MaximinSpec::new(n)?;
    let u = maximin_utilities(spec);
    let items: Vec<Mixture> = if mixtures.is_empty() {
        let half = BigRational::new(1.into(), 2.into());
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| (i, half.clone(), j))
            .collect()
    } else {
        mixtures.iter().map(|s| parse_mixture(s)).collect::<Result<_, _>>()?
    };
    let label = |(i, w, j): &Mixture| format!("{w}*x_{i} + {}*x_{j}", BigRational::from_integer(1.into()) - w);
    if machine {
        for i in 0..n {
            println!("UTILITY x_{i} {}", quote(&u.get(&spec.outcome(i)).unwrap().to_string()));
        }
    } else {
        for i in 0..n {
            println!("u(x_{i}) = {}", u.get(&spec.outcome(i)).unwrap());
        }
        println!();
    }
    let width = items.iter().map(|m| label(m).len()).max().unwrap_or(0);
    let mut agree = true;
    for a in &items {
        for b in &items {
            let la = maximin_mixture(spec, a.0, &a.1, a.2)?;
            let lb = maximin_mixture(spec, b.0, &b.1, b.2)?;
            let got = prefers(&la, &lb, &u, Regime::NsUtil)?;
            let want = maximin_compare_oracle((a.0, &a.1, a.2), (b.0, &b.1, b.2))?;
            agree &= got == want;
            if machine {
                println!(
                    "COMPARE a={} b={} result={got} maximin={want}",
                    quote(&format!("{},{},{}", a.0, a.1, a.2)),
                    quote(&format!("{},{},{}", b.0, b.1, b.2))
                );
            } else {
                let mark = if got == want { "" } else { "  (maximin disagrees)" };
                println!("{:width$}  {:11}  {}{mark}", label(a), got.name(), label(b));
            }
        }
    }
    Ok(agree)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Load(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Unknown(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
