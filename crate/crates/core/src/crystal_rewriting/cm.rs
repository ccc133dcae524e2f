//! Compatibility checks between the operators and the path compositions.
//!
//! On sampled steps and composable paths this verifies that source and target
//! commute with every operator, that transport distributes over vertical
//! composition and over whiskering, and that formal inverses cancel after
//! transport. Violations are data; a fault-injected rule set shows up here as
//! missing transported rules.

use super::coherence::gen_words_up_to;
use super::transport::{kashiwara_on_path, kashiwara_on_step};
use super::CrystalPresentation;
use crate::crystal::Dir;
use crate::crystal_rewriting::CrystalRewriteError;
use crate::rewriting::{steps_at, RewritePath, Step};

#[derive(Debug, Clone)]
pub struct CmViolation {
    /// "CM3", "CM4", or "inverse".
    pub axiom: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct CmReport {
    pub checked: usize,
    pub violations: Vec<CmViolation>,
}

impl CmReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Run the checks over every step and composable step pair with source length
/// at most `max_source_len` generators.
pub fn verify_cm_axioms(
    cp: &CrystalPresentation,
    max_source_len: usize,
) -> Result<CmReport, CrystalRewriteError> {
    let pres = cp.presentation();
    let mut report = CmReport::default();
    let words = gen_words_up_to(pres.generators().len(), max_source_len);
    let ops: Vec<(u8, Dir)> = cp
        .base()
        .labels()
        .flat_map(|i| [(i, Dir::Raise), (i, Dir::Lower)])
        .collect();

    for w in &words {
        for step in steps_at(pres, w) {
            for &(i, dir) in &ops {
                report.checked += 1;
                check_step_globular(cp, &step, i, dir, &mut report);
                check_inverse_cancellation(cp, &step, i, dir, &mut report);
            }
            // vertical composition with every continuation
            for next in steps_at(pres, &step.target(pres)) {
                let mut path = RewritePath::identity(w.clone());
                path.push(pres, step.clone()).expect("chains");
                path.push(pres, next).expect("chains");
                for &(i, dir) in &ops {
                    report.checked += 1;
                    check_star1(cp, &path, i, dir, &mut report);
                }
            }
        }
    }

    // whiskering distributes: contexts of one generator on either side
    for r in pres.rules() {
        let step = Step::forward(r.id, Vec::new(), Vec::new());
        let path = {
            let mut p = RewritePath::identity(r.lhs.clone());
            p.push(pres, step).expect("chains");
            p
        };
        for t in 0..pres.generators().len() as u32 {
            for v in 0..pres.generators().len() as u32 {
                for &(i, dir) in &ops {
                    report.checked += 1;
                    check_whisker(cp, &path, &[t], &[v], i, dir, &mut report);
                }
            }
        }
    }
    Ok(report)
}

fn check_step_globular(
    cp: &CrystalPresentation,
    step: &Step,
    i: u8,
    dir: Dir,
    report: &mut CmReport,
) {
    let pres = cp.presentation();
    let moved = match kashiwara_on_step(cp, step, i, dir) {
        Ok(m) => m,
        Err(e) => {
            report.violations.push(CmViolation {
                axiom: "CM3",
                detail: format!("step transport failed: {e}"),
            });
            return;
        }
    };
    let src = cp.kashiwara_on_word(&step.source(pres), i, dir);
    let tgt = cp.kashiwara_on_word(&step.target(pres), i, dir);
    let (Ok(src), Ok(tgt)) = (src, tgt) else {
        report.violations.push(CmViolation {
            axiom: "CM3",
            detail: "endpoint transport failed".into(),
        });
        return;
    };
    match (&moved, &src, &tgt) {
        (None, None, None) => {}
        (Some(m), Some(s), Some(t)) => {
            if &m.source(pres) != s || &m.target(pres) != t {
                report.violations.push(CmViolation {
                    axiom: "CM3",
                    detail: format!("source/target do not commute with the operator on {m:?}"),
                });
            }
        }
        _ => report.violations.push(CmViolation {
            axiom: "CM3",
            detail: "zero behavior differs between a step and its endpoints".into(),
        }),
    }
}

fn check_star1(
    cp: &CrystalPresentation,
    path: &RewritePath,
    i: u8,
    dir: Dir,
    report: &mut CmReport,
) {
    let pres = cp.presentation();
    let whole = match kashiwara_on_path(cp, path, i, dir) {
        Ok(w) => w,
        Err(e) => {
            report.violations.push(CmViolation {
                axiom: "CM4",
                detail: format!("path transport failed: {e}"),
            });
            return;
        }
    };
    let parts: Vec<Option<Step>> = path
        .steps
        .iter()
        .map(|s| kashiwara_on_step(cp, s, i, dir).unwrap_or(None))
        .collect();
    match whole {
        None => {
            if parts.iter().any(|p| p.is_some()) {
                report.violations.push(CmViolation {
                    axiom: "CM4",
                    detail: "composite vanished but a factor survived".into(),
                });
            }
        }
        Some(moved) => {
            if parts.iter().any(|p| p.is_none())
                || moved.steps != parts.into_iter().flatten().collect::<Vec<_>>()
            {
                report.violations.push(CmViolation {
                    axiom: "CM4",
                    detail: format!(
                        "transport does not distribute over composition at {}",
                        pres.display_word(&path.source)
                    ),
                });
            }
        }
    }
}

fn check_whisker(
    cp: &CrystalPresentation,
    path: &RewritePath,
    t: &[u32],
    v: &[u32],
    i: u8,
    dir: Dir,
    report: &mut CmReport,
) {
    let pres = cp.presentation();
    let whiskered = path.whisker(t, v);
    let moved = match kashiwara_on_path(cp, &whiskered, i, dir) {
        Ok(m) => m,
        Err(e) => {
            report.violations.push(CmViolation {
                axiom: "CM4",
                detail: format!("whisker transport failed: {e}"),
            });
            return;
        }
    };
    let Some(moved) = moved else { return };
    // the operator hit exactly one of t, the path, or v
    let t_moved = cp.kashiwara_on_word(t, i, dir).unwrap_or(None);
    let v_moved = cp.kashiwara_on_word(v, i, dir).unwrap_or(None);
    let p_moved = kashiwara_on_path(cp, path, i, dir).unwrap_or(None);
    let candidates: Vec<RewritePath> = [
        t_moved.map(|tm| path.whisker(&tm, v)),
        p_moved.map(|pm| pm.whisker(t, v)),
        v_moved.map(|vm| path.whisker(t, &vm)),
    ]
    .into_iter()
    .flatten()
    .collect();
    if !candidates.contains(&moved) {
        report.violations.push(CmViolation {
            axiom: "CM4",
            detail: format!(
                "whiskered transport matches no factor action at {}",
                pres.display_word(&whiskered.source)
            ),
        });
    }
}

fn check_inverse_cancellation(
    cp: &CrystalPresentation,
    step: &Step,
    i: u8,
    dir: Dir,
    report: &mut CmReport,
) {
    let pres = cp.presentation();
    let forward = match kashiwara_on_step(cp, step, i, dir) {
        Ok(Some(s)) => s,
        Ok(None) => return,
        Err(e) => {
            report.violations.push(CmViolation {
                axiom: "inverse",
                detail: format!("transport failed: {e}"),
            });
            return;
        }
    };
    match kashiwara_on_step(cp, &step.inverse(), i, dir) {
        Ok(Some(backward)) => {
            if backward != forward.inverse()
                || backward.source(pres) != forward.target(pres)
                || backward.target(pres) != forward.source(pres)
            {
                report.violations.push(CmViolation {
                    axiom: "inverse",
                    detail: "transported inverse does not cancel".into(),
                });
            }
        }
        _ => report.violations.push(CmViolation {
            axiom: "inverse",
            detail: "inverse vanished while the step survived".into(),
        }),
    }
}
