use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adjstring::catalog::{self, CatalogEntry};
use adjstring::functors::{Side, StringFunctor};
use adjstring::graded::{hilbert_csv, hilbert_json, PresentedModule, Window};
use adjstring::poly::FreeElement;
use adjstring::schema::{module_from_json, module_to_json};
use adjstring::verify::{self, Report};
use adjstring::Error;
use clap::{Parser, Subcommand};

/// Change-of-groups functors on graded modules, computed exactly.
#[derive(Parser)]
#[command(name = "adjstring", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or show catalog entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Apply one functor of the string to a module file.
    Apply {
        /// Catalog name or path to an entry file.
        #[arg(long)]
        entry: String,
        /// theta_dagger, theta_lower_star, theta_upper_star, theta_shriek_lower or theta_shriek_upper.
        #[arg(long)]
        functor: String,
        #[arg(long)]
        module: PathBuf,
        /// Degree window LO:HI for the Hilbert function.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run the verification suites.
    Check {
        /// Catalog name or path to an entry file.
        #[arg(long, conflicts_with = "all")]
        entry: Option<String>,
        /// Every catalog entry (the default).
        #[arg(long)]
        all: bool,
        /// Only the adjunction whose left member is this functor.
        #[arg(long)]
        pair: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Recompute the SO(3), O(2) example.
    ReproduceExample {
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Show the relative dualizing module of an entry and its comparison.
    Dualizing {
        #[arg(long)]
        entry: String,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show {
        name: String,
        #[arg(long)]
        json: bool,
    },
}

/// A failed run: exit code 1 for verification or validation failures, 2 for
/// usage and data errors.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Json(_) | Error::Io(_) | Error::UnknownEntry { .. } => 2,
            Error::InvalidModule(_) | Error::RingMismatch { .. } | Error::Inhomogeneous(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn window(arg: Option<&str>, default: Window) -> Result<Window, Failure> {
    if let Some(w) = arg {
        return Ok(w.parse()?);
    }
    match std::env::var("ADJSTRING_WINDOW") {
        Ok(w) => w
            .parse()
            .map_err(|e: Error| usage(format!("ADJSTRING_WINDOW: {e}"))),
        Err(_) => Ok(default),
    }
}

fn load(entry: &str) -> Result<CatalogEntry, Failure> {
    let path = Path::new(entry);
    if catalog::NAMES.contains(&entry) || !(path.exists() || entry.ends_with(".json")) {
        return Ok(catalog::load_entry(entry)?);
    }
    Ok(catalog::load_entry_file(path)?)
}

fn parse_functor(s: &str) -> Result<StringFunctor, Failure> {
    StringFunctor::parse(s).ok_or_else(|| {
        let names: Vec<&str> = StringFunctor::ALL.iter().map(|f| f.cli_name()).collect();
        usage(format!(
            "unknown functor `{s}`; expected one of {}",
            names.join(", ")
        ))
    })
}

/// Generators, relations and group action in readable form.
fn describe_module(m: &PresentedModule) -> String {
    let ring = m.ring();
    let element = |x: &FreeElement| {
        let parts: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| {
                if *p == ring.one() {
                    format!("g{i}")
                } else {
                    format!("({})*g{i}", ring.format(p))
                }
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    };
    let mut out = String::new();
    let degs: Vec<String> = m
        .gen_degrees()
        .iter()
        .enumerate()
        .map(|(i, d)| format!("g{i}: {d}"))
        .collect();
    out.push_str(&format!("generator degrees: {}\n", degs.join(", ")));
    for rel in m.relations() {
        out.push_str(&format!("relation: {} = 0\n", element(rel)));
    }
    if let (Some(twist), Some(group)) = (m.twist(), m.group()) {
        for a in group.elements().filter(|&a| a != group.identity()) {
            let imgs: Vec<String> = twist.gen_action[a]
                .iter()
                .enumerate()
                .map(|(i, x)| format!("g{i} ↦ {}", element(x)))
                .collect();
            out.push_str(&format!(
                "action of {}: {}\n",
                group.name(a),
                imgs.join(", ")
            ));
        }
    }
    out
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {{
        $out.push_str(&format!($($arg)*));
        $out.push('\n');
    }};
}

fn print_json(out: &mut String, v: &serde_json::Value) {
    say!(out, "{}", serde_json::to_string_pretty(v).expect("json"));
}

fn finish(out: &mut String, report: &Report, json: bool) -> Result<(), Failure> {
    if json {
        print_json(out, &report.to_json());
    } else {
        out.push_str(&report.table());
    }
    if report.pass() {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: format!("{} checks failed", report.failures().count()),
        })
    }
}

fn run(cli: Cli, out: &mut String) -> Result<(), Failure> {
    match cli.command {
        Command::Catalog {
            action: CatalogAction::List,
        } => {
            for name in catalog::NAMES {
                say!(out, "{name}");
            }
            Ok(())
        }
        Command::Catalog {
            action: CatalogAction::Show { name, json },
        } => {
            let entry = load(&name)?;
            if json {
                print_json(out, &entry.to_json());
            } else {
                out.push_str(&entry.describe());
            }
            Ok(())
        }
        Command::Apply {
            entry,
            functor,
            module,
            window: w,
            json,
        } => {
            let w = window(w.as_deref(), Window::DEFAULT)?;
            let entry = load(&entry)?;
            let f = parse_functor(&functor)?;
            let (ring, action) = match f.domain() {
                Side::Target => (
                    entry.target_ring().clone(),
                    &entry.change.target_twist.action,
                ),
                _ => (
                    entry.source_ring().clone(),
                    &entry.change.source_twist.action,
                ),
            };
            let text = std::fs::read_to_string(&module).map_err(Error::from)?;
            let m = module_from_json(&text, &ring, Some(action))?;
            let string = entry.adjoint_string()?;
            let image = string.functor(f).apply(&m)?;
            let hf = image.hilbert_function(w);
            if json {
                print_json(
                    out,
                    &serde_json::json!({
                        "functor": f.cli_name(),
                        "entry": entry.name,
                        "window": w.to_string(),
                        "module": module_to_json(&image),
                        "hilbert": hilbert_json(&hf),
                    }),
                );
            } else {
                say!(out, "{} over {}", f.symbol(), image.ring().name());
                out.push_str(&describe_module(&image));
                say!(out, "presentation: {}", module_to_json(&image));
                say!(out, "hilbert function on {w}:");
                out.push_str(&hilbert_csv(&hf));
            }
            Ok(())
        }
        Command::Check {
            entry,
            all,
            pair,
            window: w,
            json,
        } => {
            let w = window(w.as_deref(), Window::DEFAULT)?;
            let only = pair.as_deref().map(parse_functor).transpose()?;
            if only == Some(StringFunctor::ThetaShriekUpper) {
                return Err(usage(
                    "θ^! has no right adjoint in the string; name the left member of a pair",
                ));
            }
            let report = match entry {
                Some(e) if !all => verify::check_entry(&load(&e)?, only, w),
                _ => {
                    let mut report = Report::new("checks for all catalog entries", w);
                    for name in catalog::NAMES {
                        report.extend(verify::check_entry(&catalog::load_entry(name)?, only, w));
                    }
                    report
                }
            };
            finish(out, &report, json)
        }
        Command::ReproduceExample { window: w, json } => {
            let w = match w {
                Some(w) => w.parse().map_err(Failure::from)?,
                None => verify::EXAMPLE_WINDOW,
            };
            finish(out, &verify::reproduce_paper_example(w)?, json)
        }
        Command::Dualizing {
            entry,
            window: w,
            json,
        } => {
            let w = window(w.as_deref(), Window::DEFAULT)?;
            let entry = load(&entry)?;
            let dual = entry.connected.dualizing();
            let summary = dual.summary(w);
            if json {
                print_json(out, &serde_json::to_value(&summary).expect("json"));
            } else {
                say!(
                    out,
                    "D = Hom_{}({}, {})",
                    entry.source_ring().name(),
                    entry.target_ring().name(),
                    entry.source_ring().name()
                );
                let s = entry.target_ring();
                let gens: Vec<String> = entry
                    .basis
                    .iter()
                    .zip(entry.verified.degrees())
                    .enumerate()
                    .map(|(i, (b, e))| format!("g{i} = ({})^* in degree {}", s.format(b), -e))
                    .collect();
                say!(out, "generators: {}", gens.join(", "));
                for r in &summary.relations {
                    say!(out, "relation: {r}");
                }
                if let Some(d) = summary.generator_degree {
                    say!(out, "generator degree: {d}");
                }
                if let Some(signs) = &summary.generator_sign {
                    let group = &entry.change.target_twist.group;
                    let parts: Vec<String> = group
                        .elements()
                        .map(|a| format!("{}: {:+}", group.name(a), signs[a]))
                        .collect();
                    say!(out, "group on the generator: {}", parts.join(", "));
                }
                say!(out, "comparison: {}", summary.comparison);
                say!(out, "hilbert function on {w}:");
                out.push_str(&hilbert_csv(&summary.hilbert));
            }
            match dual.comparison() {
                Ok(_) => Ok(()),
                Err(e) => Err(Failure {
                    code: 1,
                    message: e.to_string(),
                }),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    // A closed pipe downstream is not an error.
    let _ = std::io::stdout().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
