//! Command-line front end: verification runs, Sandling basis listings,
//! subgroup computation, and catalog listing.
//!
//! Exit codes: 0 = success / all checks pass, 1 = check failure,
//! 2 = usage or parse error. Data goes to stdout, diagnostics to stderr.

use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand};

use f2g::formulas::{self, GroupProfile, T2Variant};
use f2g::group::{canonicalize_involution, parse_descriptor, AbelianTwoGroup, InvolutionSpec};
use f2g::harness::{catalog_groups, involution_cases, report_csv, run_catalog, RunOptions};
use f2g::textfmt::format_element;
use f2g::units::{
    basis_unit, sandling_index_sets, symmetric_units, t_subgroup, two_torsion_units, unit_order,
    unit_order_formula, unitary_units_explicit, w_subgroup, UnitSubgroup,
};
use f2g::{GroupAlgebra, Result};

#[derive(Parser)]
#[command(
    name = "f2g",
    about = "Unit groups of F2[G] for finite abelian 2-groups: construction, \
             closed-form order predictions, and oracle verification",
    long_about = None
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

const DESCRIPTOR_HELP: &str = "Group descriptor, e.g. 4x2:inv=1 \
    (cyclic factor orders joined by 'x'; inv lists 1-based inverted \
    generator positions; omit ':inv=...' to invert everything; 'inv=' \
    alone is the identity involution)";

#[derive(Subcommand)]
enum Cmd {
    /// Run prediction-vs-oracle checks on one case or the whole catalog
    Verify {
        #[arg(help = DESCRIPTOR_HELP)]
        descriptor: Option<String>,
        /// Largest group order for the explicit catalog tier
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        /// Emit the full report as JSON
        #[arg(long)]
        json: bool,
        /// Emit the per-case summary as CSV
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        /// Which |S^2| exponent reading decides pass/fail
        #[arg(long, default_value = "t2_proof")]
        variant: String,
        /// Run the raw-split side-suite alongside the canonical catalog
        #[arg(long, default_value_t = true, action = ArgAction::Set,
              num_args = 0..=1, default_missing_value = "true")]
        include_noncanonical: bool,
    },
    /// Full catalog run emitting the complete JSON report
    Report {
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        #[arg(long, default_value = "t2_proof")]
        variant: String,
        /// Also write the CSV summary to this path
        #[arg(long)]
        csv: Option<std::path::PathBuf>,
    },
    /// List the Sandling basis of V(FG) with orders and invariants
    Basis {
        #[arg(help = DESCRIPTOR_HELP)]
        descriptor: String,
        #[arg(long)]
        json: bool,
    },
    /// Construct one distinguished subgroup and print its data
    Compute {
        #[arg(help = DESCRIPTOR_HELP)]
        descriptor: String,
        /// One of: S, V_eta, W, T, V2
        #[arg(long, value_parser = ["S", "V_eta", "W", "T", "V2"])]
        subgroup: String,
        /// Also compute the abelian invariants
        #[arg(long)]
        invariants: bool,
        /// Print only the closed-form order (no enumeration; any size)
        #[arg(long)]
        order_only: bool,
        #[arg(long)]
        json: bool,
    },
    /// List every catalog case descriptor up to a given order
    ListGroups {
        #[arg(long, default_value_t = 32)]
        max_order: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Verify {
            descriptor,
            max_order,
            json,
            csv,
            variant,
            include_noncanonical,
        } => {
            let variant: T2Variant = variant.parse()?;
            let opts = RunOptions {
                max_order,
                structural_order: if descriptor.is_none() && max_order >= 16 {
                    Some(32)
                } else {
                    None
                },
                include_noncanonical,
                variant,
                single: descriptor
                    .as_deref()
                    .map(parse_descriptor)
                    .transpose()?,
            };
            let report = run_catalog(&opts)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else if csv {
                print!("{}", report_csv(&report));
            } else {
                for c in &report.cases {
                    println!(
                        "case {:<28} [{}, {:?}] {}",
                        c.case, c.suite, c.mode, c.status
                    );
                }
                let s = &report.summary;
                println!(
                    "summary: {} cases, {} passed, {} failed; {} checks, {} failures, {} degenerate",
                    s.cases, s.passed, s.failed, s.checks_run, s.checks_failed, s.degenerate_checks
                );
                if s.statement_variant_disagreements.is_empty() {
                    println!("t2 statement variant: agreed with the oracle everywhere");
                } else {
                    println!(
                        "t2 statement variant disagreed (proof variant agreed) on {} case(s): {}",
                        s.statement_variant_disagreements.len(),
                        s.statement_variant_disagreements.join(", ")
                    );
                }
            }
            Ok(if report.summary.failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Report {
            max_order,
            variant,
            csv,
        } => {
            let opts = RunOptions {
                max_order,
                variant: variant.parse()?,
                ..RunOptions::default()
            };
            let report = run_catalog(&opts)?;
            if let Some(path) = csv {
                std::fs::write(&path, report_csv(&report))
                    .map_err(|e| f2g::Error::Invalid(format!("writing {path:?}: {e}")))?;
            }
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(if report.summary.failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Basis { descriptor, json } => cmd_basis(&descriptor, json),
        Cmd::Compute {
            descriptor,
            subgroup,
            invariants,
            order_only,
            json,
        } => cmd_compute(&descriptor, &subgroup, invariants, order_only, json),
        Cmd::ListGroups { max_order } => {
            for orders in catalog_groups(max_order) {
                let group = AbelianTwoGroup::new(orders)?;
                for raw in involution_cases(&group) {
                    println!("{}", f2g::group::format_descriptor(&group, &raw));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_case(descriptor: &str) -> Result<(GroupAlgebra, InvolutionSpec)> {
    let (group, raw) = parse_descriptor(descriptor)?;
    let spec = canonicalize_involution(&group, &raw)?;
    Ok((GroupAlgebra::new(group), spec))
}

fn cmd_basis(descriptor: &str, json: bool) -> Result<ExitCode> {
    let (alg, spec) = parse_case(descriptor)?;
    let sets = sandling_index_sets(&alg, &spec);
    let mut rows = Vec::new();
    let mut orders = Vec::new();
    for alpha in &sets.l {
        let u = basis_unit(&alg, alpha)?;
        let formula = unit_order_formula(&alg, alpha)?;
        let computed = unit_order(&alg, &u);
        orders.push(formula);
        rows.push((alpha.clone(), format_element(&alg, &u), formula, computed));
    }
    orders.sort_unstable_by(|a, b| b.cmp(a));
    if json {
        let items: Vec<_> = rows
            .iter()
            .map(|(alpha, text, formula, computed)| {
                serde_json::json!({
                    "alpha": alpha,
                    "element": text,
                    "order_formula": formula,
                    "order_computed": computed,
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "descriptor": descriptor,
                "basis": items,
                "v_invariants": orders,
            }))
            .unwrap()
        );
    } else {
        for (alpha, text, formula, computed) in &rows {
            println!("u_{alpha:?} = {text}  order {formula} (computed {computed})");
        }
        println!(
            "V(FG) invariants: {{{}}}",
            orders
                .iter()
                .map(|o| o.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_compute(
    descriptor: &str,
    subgroup: &str,
    invariants: bool,
    order_only: bool,
    json: bool,
) -> Result<ExitCode> {
    let (alg, spec) = parse_case(descriptor)?;
    if order_only {
        let profile = GroupProfile::new(alg.group(), &spec);
        let log2 = match subgroup {
            "S" => formulas::t1(&profile),
            "V_eta" => formulas::v_eta_log(&profile),
            "W" => formulas::w_pow_log(&profile, 0),
            "T" => Some(formulas::t_log(&profile)),
            "V2" => Some(formulas::v_tor2_log(&profile)),
            _ => unreachable!(),
        }
        .ok_or_else(|| f2g::Error::Invalid("order formula is undefined here".into()))?;
        if json {
            println!(
                "{}",
                serde_json::json!({
                    "descriptor": descriptor,
                    "subgroup": subgroup,
                    "order_log2": log2,
                })
            );
        } else {
            println!("subgroup {subgroup} of {descriptor}: order 2^{log2}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let sub: UnitSubgroup = match subgroup {
        "S" => symmetric_units(&alg, &spec)?,
        "V_eta" => unitary_units_explicit(&alg, &spec)?,
        "W" => {
            let sets = sandling_index_sets(&alg, &spec);
            w_subgroup(&alg, &spec, &sets)?
        }
        "T" => {
            let sets = sandling_index_sets(&alg, &spec);
            t_subgroup(&alg, &sets)?
        }
        "V2" => two_torsion_units(&alg)?,
        _ => unreachable!(),
    };
    let inv = if invariants || json {
        Some(sub.invariants(&alg))
    } else {
        None
    };
    if json {
        let elements: Vec<String> = sub.iter().map(|x| format_element(&alg, x)).collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "descriptor": descriptor,
                "subgroup": subgroup,
                "order": sub.order(),
                "invariants": inv.unwrap(),
                "elements": elements,
            }))
            .unwrap()
        );
    } else {
        println!("subgroup {subgroup} of {descriptor}");
        println!("order {}", sub.order());
        if let Some(inv) = inv {
            println!(
                "invariants {{{}}}",
                inv.iter()
                    .map(|o| o.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}
