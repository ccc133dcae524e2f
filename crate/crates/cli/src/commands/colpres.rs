use super::{err, read_json, step_cap, with_jobs, write_output, CmdResult};
use clap::{Subcommand, ValueEnum};
use placto_core::crystal::{CrystalType, Family};
use placto_core::crystal_rewriting::{
    build_column_presentation, cohere_direct, cohere_via_hw, hw_critical_branchings,
    load_presentation, save_presentation, CrystalPresentation, TracedCell,
};
use placto_core::rewriting::{cell_to_dot, cells_to_json, critical_branchings, Strategy};
use serde_json::json;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CellFormat {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Leftmost,
    Rightmost,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Leftmost => Strategy::Leftmost,
            StrategyArg::Rightmost => Strategy::Rightmost,
        }
    }
}

#[derive(Subcommand)]
pub enum ColpresCmd {
    /// Build the type A column presentation.
    Build {
        #[arg(long, default_value = "A")]
        family: Family,
        #[arg(long)]
        rank: u8,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List critical branchings of a saved presentation.
    Criticals {
        presentation: PathBuf,
        /// Keep only branchings with highest-weight source.
        #[arg(long)]
        hw_only: bool,
        #[arg(long, value_enum, default_value_t = CellFormat::Text)]
        format: CellFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Complete the critical branchings into a coherent extension.
    Cohere {
        presentation: PathBuf,
        /// Complete only at highest weight and expand by lowering.
        #[arg(long)]
        via_hw: bool,
        #[arg(long, value_enum, default_value_t = StrategyArg::Leftmost)]
        strategy: StrategyArg,
        /// Parallel completion width; output does not depend on it.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = CellFormat::Json)]
        format: CellFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run both pipelines and diff them (exit 0 iff identical).
    Compare {
        presentation: PathBuf,
        #[arg(long, value_enum, default_value_t = StrategyArg::Leftmost)]
        strategy: StrategyArg,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn load(path: &Path) -> Result<(CrystalPresentation, i32), super::CliError> {
    let cp = load_presentation(&read_json(path)?)?;
    if !cp.certificate.is_valid() {
        eprintln!("certificate failure: {}", cp.certificate.violations[0]);
        return Ok((cp, 1));
    }
    Ok((cp, 0))
}

pub fn run(cmd: ColpresCmd) -> CmdResult {
    match cmd {
        ColpresCmd::Build {
            family,
            rank,
            output,
        } => {
            if family != Family::A {
                return Err(err(
                    "only family A presentations are built; load other families from files",
                ));
            }
            let ty = CrystalType::new(family, rank)?;
            let cp = build_column_presentation(&ty)?;
            let rendered = serde_json::to_string_pretty(&save_presentation(&cp))? + "\n";
            write_output(output.as_ref(), &rendered)?;
            eprintln!(
                "generators={} rules={} certificate={}",
                cp.presentation().generators().len(),
                cp.presentation().rules().len(),
                if cp.certificate.is_valid() {
                    "valid"
                } else {
                    "INVALID"
                }
            );
            Ok(if cp.certificate.is_valid() { 0 } else { 1 })
        }
        ColpresCmd::Criticals {
            presentation,
            hw_only,
            format,
            output,
        } => {
            let (cp, status) = load(&presentation)?;
            if status != 0 {
                return Ok(status);
            }
            let pres = cp.presentation();
            let list = if hw_only {
                hw_critical_branchings(&cp)?
            } else {
                critical_branchings(pres)
            };
            let rendered = match format {
                CellFormat::Json => {
                    let items: Vec<_> = list
                        .iter()
                        .map(|b| {
                            json!({
                                "source": pres.display_word(&b.source(pres)),
                                "left": { "rule": b.left.rule, "position": b.left.position() },
                                "right": { "rule": b.right.rule, "position": b.right.position() },
                                "kind": format!("{:?}", b.kind(pres)),
                            })
                        })
                        .collect();
                    serde_json::to_string_pretty(&json!({
                        "schema_version": placto_core::SCHEMA_VERSION,
                        "criticals": items,
                    }))? + "\n"
                }
                _ => {
                    let mut s = format!("{} critical branchings\n", list.len());
                    for b in &list {
                        s.push_str(&format!(
                            "{}  (r{} @{} | r{} @{})\n",
                            pres.display_word(&b.source(pres)),
                            b.left.rule,
                            b.left.position(),
                            b.right.rule,
                            b.right.position()
                        ));
                    }
                    s
                }
            };
            write_output(output.as_ref(), &rendered)?;
            Ok(0)
        }
        ColpresCmd::Cohere {
            presentation,
            via_hw,
            strategy,
            jobs,
            format,
            output,
        } => {
            let (cp, status) = load(&presentation)?;
            if status != 0 {
                return Ok(status);
            }
            let strategy = strategy.into();
            let cap = step_cap();
            let pres = cp.presentation();
            let (cells, extras): (Vec<_>, Option<Vec<serde_json::Value>>) = if via_hw {
                let traced = with_jobs(jobs, || cohere_via_hw(&cp, strategy, cap))??;
                let extras = traced
                    .iter()
                    .map(|t: &TracedCell| {
                        json!({
                            "hw_source": pres.display_word(&t.hw_source),
                            "lowering": t.lowering,
                        })
                    })
                    .collect();
                (traced.into_iter().map(|t| t.cell).collect(), Some(extras))
            } else {
                (
                    with_jobs(jobs, || cohere_direct(&cp, strategy, cap))??,
                    None,
                )
            };
            let rendered = match format {
                CellFormat::Dot => {
                    let mut s = String::new();
                    for (k, c) in cells.iter().enumerate() {
                        if let Some(extra) = extras.as_ref().and_then(|e| e.get(k)) {
                            s.push_str(&format!(
                                "// hw_source={} lowering={}\n",
                                extra["hw_source"], extra["lowering"]
                            ));
                        }
                        s.push_str(&cell_to_dot(pres, c));
                    }
                    s
                }
                CellFormat::Text => {
                    let mut s = format!("{} cells\n", cells.len());
                    for c in &cells {
                        let (l, r) = c.side_lengths();
                        s.push_str(&format!(
                            "{} -> {}  sides {}/{}\n",
                            pres.display_word(&c.branching.source(pres)),
                            pres.display_word(&c.endpoint(pres)),
                            l,
                            r
                        ));
                    }
                    s
                }
                CellFormat::Json => {
                    serde_json::to_string_pretty(&cells_to_json(pres, &cells, extras.as_deref()))?
                        + "\n"
                }
            };
            write_output(output.as_ref(), &rendered)?;
            let hw_count = hw_critical_branchings(&cp)?.len();
            eprintln!(
                "cells={} criticals={} hw_criticals={}",
                cells.len(),
                cells.len(),
                hw_count
            );
            Ok(0)
        }
        ColpresCmd::Compare {
            presentation,
            strategy,
            jobs,
        } => {
            let (cp, status) = load(&presentation)?;
            if status != 0 {
                return Ok(status);
            }
            let strategy = strategy.into();
            let cap = step_cap();
            let pres = cp.presentation();
            let (direct, traced) = with_jobs(jobs, || {
                let d = cohere_direct(&cp, strategy, cap);
                let t = cohere_via_hw(&cp, strategy, cap);
                (d, t)
            })?;
            let (direct, traced) = (direct?, traced?);
            let mut mismatches = 0usize;
            if direct.len() != traced.len() {
                println!(
                    "cell counts differ: direct {} vs highest-weight {}",
                    direct.len(),
                    traced.len()
                );
                mismatches += 1;
            }
            for (d, t) in direct.iter().zip(&traced) {
                if d != &t.cell {
                    println!(
                        "cells differ at {}",
                        pres.display_word(&d.branching.source(pres))
                    );
                    mismatches += 1;
                }
            }
            println!(
                "compared {} cells ({} at highest weight): {}",
                direct.len(),
                traced.iter().filter(|t| t.lowering.is_empty()).count(),
                if mismatches == 0 {
                    "identical"
                } else {
                    "DIFFERENT"
                }
            );
            Ok(if mismatches == 0 { 0 } else { 1 })
        }
    }
}
