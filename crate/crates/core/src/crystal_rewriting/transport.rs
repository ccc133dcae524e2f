//! Kashiwara operators on steps, paths, branchings and coherence cells.
//!
//! An operator applied to the source of a step changes one letter, hence one
//! generator chunk, which lies in the left context, the rewritten block, or
//! the right context. The step transports accordingly: contexts move as
//! words, the block moves by replacing the rule with its transported rule,
//! which the certificate guarantees to exist.

use super::{CrystalPresentation, CrystalRewriteError};
use crate::crystal::{to_highest_weight, word_op, Dir, RaisingPath};
use crate::rewriting::{Branching, CoherenceCell, RewritePath, Step, StepDir};

fn changed_chunk(
    cp: &CrystalPresentation,
    shape: &[u32],
    old: &[crate::crystal::Letter],
    new: &[crate::crystal::Letter],
) -> usize {
    let pos = old
        .iter()
        .zip(new)
        .position(|(a, b)| a != b)
        .expect("operator changes exactly one letter");
    let mut at = 0;
    for (k, &g) in shape.iter().enumerate() {
        at += cp.column(g).len();
        if pos < at {
            return k;
        }
    }
    unreachable!("changed position lies inside the word")
}

/// Transport a step; `None` when the operator vanishes on the source.
pub fn kashiwara_on_step(
    cp: &CrystalPresentation,
    step: &Step,
    i: u8,
    dir: Dir,
) -> Result<Option<Step>, CrystalRewriteError> {
    let pres = cp.presentation();
    let src = step.source(pres);
    let flat = cp.flatten(&src);
    let Some(new_flat) = word_op(cp.base(), &flat, i, dir)? else {
        return Ok(None);
    };
    let chunk = changed_chunk(cp, &src, &flat, &new_flat);
    let rule = &pres.rules()[step.rule];
    let block_len = match step.dir {
        StepDir::Forward => rule.lhs.len(),
        StepDir::Backward => rule.rhs.len(),
    };
    let new_src = cp.rechunk(&new_flat, &src)?;
    let t_len = step.left.len();
    let transported = if chunk < t_len {
        Step {
            rule: step.rule,
            left: new_src[..t_len].to_vec(),
            right: step.right.clone(),
            dir: step.dir,
        }
    } else if chunk < t_len + block_len {
        // the operator hits the rewritten block: move to the transported rule
        let lhs = cp.kashiwara_on_word(&rule.lhs, i, dir)?;
        let rhs = cp.kashiwara_on_word(&rule.rhs, i, dir)?;
        let (Some(lhs), Some(rhs)) = (lhs, rhs) else {
            return Err(CrystalRewriteError::Certificate(format!(
                "operator vanishes on one side of rule {} only",
                step.rule
            )));
        };
        let id = cp.rule_id(&lhs, &rhs).ok_or_else(|| {
            CrystalRewriteError::Certificate(format!(
                "transported rule {} => {} is missing",
                pres.display_word(&lhs),
                pres.display_word(&rhs)
            ))
        })?;
        Step {
            rule: id,
            left: step.left.clone(),
            right: step.right.clone(),
            dir: step.dir,
        }
    } else {
        Step {
            rule: step.rule,
            left: step.left.clone(),
            right: new_src[t_len + block_len..].to_vec(),
            dir: step.dir,
        }
    };
    debug_assert_eq!(cp.flatten(&transported.source(pres)), new_flat);
    Ok(Some(transported))
}

/// Elementwise transport of a path; `None` iff the source transports to zero.
pub fn kashiwara_on_path(
    cp: &CrystalPresentation,
    path: &RewritePath,
    i: u8,
    dir: Dir,
) -> Result<Option<RewritePath>, CrystalRewriteError> {
    let Some(source) = cp.kashiwara_on_word(&path.source, i, dir)? else {
        return Ok(None);
    };
    let mut out = RewritePath::identity(source);
    for step in &path.steps {
        let moved = kashiwara_on_step(cp, step, i, dir)?.ok_or_else(|| {
            CrystalRewriteError::Certificate(
                "operator vanished mid-path while the source survived".into(),
            )
        })?;
        out.push(cp.presentation(), moved)?;
    }
    Ok(Some(out))
}

/// Componentwise transport of a branching; the classification tag is
/// preserved because positions and rule block lengths are.
pub fn kashiwara_on_branching(
    cp: &CrystalPresentation,
    b: &Branching,
    i: u8,
    dir: Dir,
) -> Result<Option<Branching>, CrystalRewriteError> {
    let left = kashiwara_on_step(cp, &b.left, i, dir)?;
    let right = kashiwara_on_step(cp, &b.right, i, dir)?;
    match (left, right) {
        (Some(l), Some(r)) => Ok(Some(Branching::new(cp.presentation(), l, r)?)),
        (None, None) => Ok(None),
        _ => Err(CrystalRewriteError::Certificate(
            "branching components vanished separately".into(),
        )),
    }
}

/// Componentwise transport of a coherence cell.
pub fn kashiwara_on_cell(
    cp: &CrystalPresentation,
    cell: &CoherenceCell,
    i: u8,
    dir: Dir,
) -> Result<Option<CoherenceCell>, CrystalRewriteError> {
    let Some(branching) = kashiwara_on_branching(cp, &cell.branching, i, dir)? else {
        return Ok(None);
    };
    let left = kashiwara_on_path(cp, &cell.left_completion, i, dir)?;
    let right = kashiwara_on_path(cp, &cell.right_completion, i, dir)?;
    let (Some(left_completion), Some(right_completion)) = (left, right) else {
        return Err(CrystalRewriteError::Certificate(
            "cell components vanished separately".into(),
        ));
    };
    let out = CoherenceCell {
        branching,
        left_completion,
        right_completion,
    };
    out.validate(cp.presentation())?;
    Ok(Some(out))
}

/// Raise a branching to its highest-weight representative, recording the
/// raising path of its source word (smallest label first).
pub fn raise_branching_to_hw(
    cp: &CrystalPresentation,
    b: &Branching,
) -> Result<(Branching, RaisingPath), CrystalRewriteError> {
    let flat = cp.flatten(&b.source(cp.presentation()));
    let (_, path) = to_highest_weight(cp.base(), &flat)?;
    let mut cur = b.clone();
    for &i in &path.ops {
        cur = kashiwara_on_branching(cp, &cur, i, Dir::Raise)?.ok_or_else(|| {
            CrystalRewriteError::Internal("raising vanished on a branching".into())
        })?;
    }
    Ok((cur, path))
}

/// Replay a raising path reversed, lowering a cell back down the component.
pub fn lower_cell(
    cp: &CrystalPresentation,
    cell: &CoherenceCell,
    path: &RaisingPath,
) -> Result<CoherenceCell, CrystalRewriteError> {
    let mut cur = cell.clone();
    for &i in path.ops.iter().rev() {
        cur = kashiwara_on_cell(cp, &cur, i, Dir::Lower)?.ok_or_else(|| {
            CrystalRewriteError::Internal("lowering vanished while replaying a path".into())
        })?;
    }
    Ok(cur)
}
