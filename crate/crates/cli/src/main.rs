use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use vpd_core::diagram::sort_canonical;
use vpd_core::sweep::{self, CheckKind, SweepOptions};
use vpd_core::{bvpd, mvpd, pipedream, support};
use vpd_core::{Diagram, DiagramKind, Error, Limits, Permutation};

/// Pipe dreams, vertical-less pipe dreams and Grothendieck polynomials.
#[derive(Parser)]
#[command(name = "vpd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grothendieck polynomial of w, single or double.
    Poly {
        #[arg(long, value_parser = parse_perm)]
        w: Permutation,
        #[arg(long)]
        double: bool,
        #[arg(long)]
        json: bool,
    },
    /// Top-degree component with positive signs.
    Top {
        #[arg(long, value_parser = parse_perm)]
        w: Permutation,
        #[arg(long)]
        json: bool,
    },
    /// List PD(w), MVPD(w) or BVPD(w).
    Enumerate {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_parser = parse_perm)]
        w: Permutation,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
    },
    /// Apply one of the bijections to a diagram.
    Map {
        #[arg(long, value_enum)]
        which: MapArg,
        #[arg(long, value_parser = parse_perm)]
        w: Permutation,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Build an MVPD of weight wt(M)·x_i from a non-top M.
    ConstructUp {
        #[arg(long, value_parser = parse_perm)]
        w: Permutation,
        #[command(flatten)]
        input: InputArgs,
        /// Render every intermediate diagram to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Exhaustive sweep of one property over S_n.
    Check {
        #[arg(long, value_parser = parse_check)]
        what: CheckKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        inverse_fireworks_only: bool,
        /// Allow n above the default bound of 7.
        #[arg(long)]
        force: bool,
    },
    /// Print a diagram in the text format.
    Render {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Diagram file in text or JSON format; `-` reads stdin.
    #[arg(long = "in", value_name = "FILE")]
    path: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Pd,
    Mvpd,
    Bvpd,
}

impl From<KindArg> for DiagramKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Pd => DiagramKind::Pd,
            KindArg::Mvpd => DiagramKind::Mvpd,
            KindArg::Bvpd => DiagramKind::Bvpd,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    Phi,
    PhiInv,
    Mb,
    Bm,
    Psi,
    PsiInv,
}

impl MapArg {
    fn source(self) -> DiagramKind {
        match self {
            MapArg::Phi | MapArg::PsiInv => DiagramKind::Pd,
            MapArg::PhiInv | MapArg::Mb => DiagramKind::Mvpd,
            MapArg::Bm | MapArg::Psi => DiagramKind::Bvpd,
        }
    }

    fn apply(self, d: &Diagram, w: &Permutation) -> vpd_core::Result<Diagram> {
        match self {
            MapArg::Phi => mvpd::phi(d, w),
            MapArg::PhiInv => mvpd::phi_inverse(d, w),
            MapArg::Mb => bvpd::m_to_b(d, w),
            MapArg::Bm => bvpd::b_to_m(d, w),
            MapArg::Psi => bvpd::psi(d, w),
            MapArg::PsiInv => bvpd::psi_inverse(d, w),
        }
    }
}

fn parse_perm(s: &str) -> Result<Permutation, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_check(s: &str) -> Result<CheckKind, String> {
    s.parse().map_err(|e: Error| {
        let names: Vec<&str> = CheckKind::ALL.iter().map(|k| k.name()).collect();
        format!("{e}; expected one of {}", names.join(", "))
    })
}

enum Failure {
    /// A verification did not hold; the message carries the witness.
    Check(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut s = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    Ok(s)
}

fn is_json(input: &str) -> bool {
    input.trim_start().starts_with('{')
}

fn print_json(value: &impl serde::Serialize) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("{s}");
    Ok(())
}

fn emit_diagram(d: &Diagram, as_json: bool) -> Result<(), Failure> {
    if as_json {
        print_json(&d.to_json())
    } else {
        println!("{}", d.render_text());
        Ok(())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Poly { w, double, json } => {
            let g = if double {
                pipedream::double_grothendieck(&w)?
            } else {
                pipedream::grothendieck(&w)?
            };
            if json {
                print_json(&json!({ "w": w, "double": double, "terms": g.to_json() }))?;
            } else {
                println!("{g}");
            }
        }
        Command::Top { w, json } => {
            let top = if w.is_inverse_fireworks() {
                bvpd::top_grothendieck_via_bvpd(&w)?
            } else {
                eprintln!("note: {w} is not inverse fireworks; using the pipe dream enumeration");
                pipedream::grothendieck(&w)?.top_component()?.abs()
            };
            if json {
                print_json(&json!({ "w": w, "terms": top.to_json() }))?;
            } else {
                println!("{top}");
            }
        }
        Command::Enumerate { kind, w, json, .. } => {
            let mut ds = match kind {
                KindArg::Pd => pipedream::pd_set(&w)?,
                KindArg::Mvpd => mvpd::mvpd_set(&w)?.members,
                KindArg::Bvpd => bvpd::enumerate_bvpd(&w)?,
            };
            sort_canonical(&mut ds);
            if json {
                let all: Vec<_> = ds.iter().map(Diagram::to_json).collect();
                print_json(&all)?;
            } else {
                let blocks: Vec<String> = ds.iter().map(Diagram::render_text).collect();
                if !blocks.is_empty() {
                    println!("{}", blocks.join("\n\n"));
                }
            }
        }
        Command::Map { which, w, input } => {
            let text = read_input(&input.path)?;
            let d = Diagram::parse_auto(&text, Some(which.source()), Some(w.n()))?;
            emit_diagram(&which.apply(&d, &w)?, is_json(&text))?;
        }
        Command::ConstructUp { w, input, trace } => {
            let text = read_input(&input.path)?;
            let m = Diagram::parse_auto(&text, Some(DiagramKind::Mvpd), Some(w.n()))?;
            let cert = support::construct_up(&m, &w)?;
            if trace {
                eprintln!("input:\n{}\n", m.render_text());
                for (step, d) in cert.steps.iter().zip(&cert.trail) {
                    eprintln!("{:?} at ({}, {}):\n{}\n", step.op, step.cell[0], step.cell[1], d.render_text());
                }
            }
            print_json(&cert)?;
        }
        Command::Check {
            what,
            n,
            inverse_fireworks_only,
            force,
        } => {
            let options = SweepOptions {
                inverse_fireworks_only,
                limits: if force { Limits::forced() } else { Limits::default() },
            };
            let report = sweep::run(what, n, &options)?;
            println!("{report}");
            if !report.passed() {
                return Err(Failure::Check(format!("{} failures", report.failures.len())));
            }
        }
        Command::Render { input, kind } => {
            let text = read_input(&input.path)?;
            let d = Diagram::parse_auto(&text, kind.map(Into::into), None)?;
            println!("{}", d.render_text());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
