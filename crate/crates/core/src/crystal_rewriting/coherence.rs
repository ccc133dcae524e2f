//! Coherent extensions of crystal presentations, directly and through the
//! highest-weight reduction.
//!
//! The direct route completes every critical branching with a normalization
//! strategy. The reduced route completes only the critical branchings whose
//! source is of highest weight, then recovers every other cell by lowering
//! the highest-weight cell along the reversed raising path of its source.
//! For leftmost and rightmost strategies the two routes agree cell by cell.

use super::transport::{lower_cell, raise_branching_to_hw};
use super::{CrystalPresentation, CrystalRewriteError};
use crate::crystal::RaisingPath;
use crate::rewriting::{
    check_confluence_newman, complete_branching, critical_branchings, Branching, BranchingKey,
    CoherenceCell, CompletionOutcome, ConfluenceReport, GenWord, Strategy,
};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// The restriction of a presentation's rewriting to highest-weight sources.
#[derive(Debug, Clone)]
pub struct HighestWeightSystem {
    /// Rules whose left-hand side flattens to a highest-weight word.
    pub hw_rule_ids: Vec<usize>,
    /// Critical branchings with highest-weight source.
    pub hw_criticals: Vec<Branching>,
}

/// All generator words of length `<= maxlen` in length-then-lex order.
pub fn gen_words_up_to(n_gens: usize, maxlen: usize) -> Vec<GenWord> {
    let mut out: Vec<GenWord> = vec![Vec::new()];
    let mut layer: Vec<GenWord> = vec![Vec::new()];
    for _ in 0..maxlen {
        let mut next = Vec::with_capacity(layer.len() * n_gens);
        for w in &layer {
            for g in 0..n_gens as u32 {
                let mut e = w.clone();
                e.push(g);
                next.push(e);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn hw_system(cp: &CrystalPresentation) -> Result<HighestWeightSystem, CrystalRewriteError> {
    let mut hw_rule_ids = Vec::new();
    for r in cp.presentation().rules() {
        if cp.is_hw(&r.lhs)? {
            hw_rule_ids.push(r.id);
        }
    }
    Ok(HighestWeightSystem {
        hw_rule_ids,
        hw_criticals: hw_critical_branchings(cp)?,
    })
}

/// Critical branchings whose source word is of highest weight.
pub fn hw_critical_branchings(
    cp: &CrystalPresentation,
) -> Result<Vec<Branching>, CrystalRewriteError> {
    let pres = cp.presentation();
    let mut out = Vec::new();
    for b in critical_branchings(pres) {
        if cp.is_hw(&b.source(pres))? {
            out.push(b);
        }
    }
    Ok(out)
}

fn complete_or_fail(
    cp: &CrystalPresentation,
    b: &Branching,
    strategy: Strategy,
    step_cap: usize,
) -> Result<CoherenceCell, CrystalRewriteError> {
    match complete_branching(cp.presentation(), b, strategy, step_cap)? {
        CompletionOutcome::Cell(c) => Ok(c),
        CompletionOutcome::NotJoinable {
            left_nf, right_nf, ..
        } => Err(CrystalRewriteError::Internal(format!(
            "critical branching at {} is not confluent: {} versus {}",
            cp.presentation().display_word(&b.source(cp.presentation())),
            cp.presentation().display_word(&left_nf),
            cp.presentation().display_word(&right_nf),
        ))),
    }
}

/// Complete every critical branching with the strategy. Output is ordered by
/// the branching key and independent of the parallelism.
pub fn cohere_direct(
    cp: &CrystalPresentation,
    strategy: Strategy,
    step_cap: usize,
) -> Result<Vec<CoherenceCell>, CrystalRewriteError> {
    let crits = critical_branchings(cp.presentation());
    crits
        .par_iter()
        .map(|b| complete_or_fail(cp, b, strategy, step_cap))
        .collect()
}

/// A cell recovered from highest weight, with its provenance: the
/// highest-weight representative branching and the lowering labels applied to
/// its cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracedCell {
    pub cell: CoherenceCell,
    pub hw_source: GenWord,
    pub hw_key: BranchingKey,
    /// Lowering labels, in application order.
    pub lowering: Vec<u8>,
}

/// Complete only the highest-weight criticals, then produce every cell by
/// lowering its representative's cell. Index-aligned with [`cohere_direct`].
pub fn cohere_via_hw(
    cp: &CrystalPresentation,
    strategy: Strategy,
    step_cap: usize,
) -> Result<Vec<TracedCell>, CrystalRewriteError> {
    let pres = cp.presentation();
    let crits = critical_branchings(pres);
    let mut hw_cells: BTreeMap<BranchingKey, CoherenceCell> = BTreeMap::new();
    for b in &crits {
        if cp.is_hw(&b.source(pres))? {
            hw_cells.insert(b.key(pres), complete_or_fail(cp, b, strategy, step_cap)?);
        }
    }
    let raised: Vec<(Branching, RaisingPath)> = crits
        .par_iter()
        .map(|b| raise_branching_to_hw(cp, b))
        .collect::<Result<_, _>>()?;
    crits
        .par_iter()
        .zip(raised)
        .map(|(b, (hw, path))| {
            let hw_key = hw.key(pres);
            let cell0 = hw_cells.get(&hw_key).ok_or_else(|| {
                CrystalRewriteError::Internal(format!(
                    "no highest-weight cell for representative at {}",
                    pres.display_word(&hw.source(pres))
                ))
            })?;
            let cell = lower_cell(cp, cell0, &path)?;
            if &cell.branching != b {
                return Err(CrystalRewriteError::Internal(
                    "lowered cell does not sit over its branching".into(),
                ));
            }
            Ok(TracedCell {
                cell,
                hw_source: hw.source(pres),
                hw_key,
                lowering: path.ops.iter().rev().copied().collect(),
            })
        })
        .collect()
}

/// Desk-scale confluence check: local confluence of the (optionally
/// highest-weight) criticals plus termination evidence over all generator
/// words up to `universe_len`, restricted to highest-weight sources when
/// `hw_only` is set.
pub fn check_confluence(
    cp: &CrystalPresentation,
    hw_only: bool,
    strategy: Strategy,
    step_cap: usize,
    universe_len: usize,
) -> Result<ConfluenceReport, CrystalRewriteError> {
    let pres = cp.presentation();
    let mut universe = gen_words_up_to(pres.generators().len(), universe_len);
    if hw_only {
        let mut filtered = Vec::new();
        for w in universe {
            if cp.is_hw(&w)? {
                filtered.push(w);
            }
        }
        universe = filtered;
    }
    let hw_filter = |b: &Branching| {
        cp.is_hw(&b.source(cp.presentation()))
            .expect("generator words are valid")
    };
    let filter: Option<&dyn Fn(&Branching) -> bool> = if hw_only { Some(&hw_filter) } else { None };
    Ok(check_confluence_newman(
        pres, &universe, strategy, step_cap, filter,
    ))
}
