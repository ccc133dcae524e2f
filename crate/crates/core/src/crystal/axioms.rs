//! Crystal axiom checking on a batch of words.
//!
//! Verifies, for every word and label: the coroot pairing identity
//! `phi - epsilon = <wt, alpha_i^vee>`, the weight shift by a simple root
//! under each operator, mutual inversion of raising and lowering, and the
//! single-edge / finite-string conditions on the base graph. Violations are
//! data, not errors.

use super::word::{epsilon, phi, weight, word_op};
use super::{CrystalError, CrystalType, Dir, Letter, Word};
use rayon::prelude::*;
use std::collections::HashSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    /// Which axiom failed: "C1", "C3", "C4", "P1", or "P2".
    pub axiom: &'static str,
    pub word: Word,
    pub label: u8,
    pub detail: String,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) label {} word {:?}: {}",
            self.axiom, self.label, self.word, self.detail
        )
    }
}

/// Check the crystal axioms on every word in `words`. The base-graph
/// conditions are checked once. Report order follows input order.
pub fn check_axioms(ty: &CrystalType, words: &[Word]) -> Result<Vec<AxiomViolation>, CrystalError> {
    let mut out = check_base_graph(ty);
    let per_word: Vec<Vec<AxiomViolation>> = words
        .par_iter()
        .map(|w| check_word_axioms(ty, w))
        .collect::<Result<_, _>>()?;
    out.extend(per_word.into_iter().flatten());
    Ok(out)
}

fn check_word_axioms(ty: &CrystalType, w: &Word) -> Result<Vec<AxiomViolation>, CrystalError> {
    let mut out = Vec::new();
    let wt = weight(ty, w);
    for i in ty.labels() {
        let eps = epsilon(ty, w, i)? as i64;
        let ph = phi(ty, w, i)? as i64;
        let pairing = ty.coroot_pairing(&wt, i);
        if ph - eps != pairing {
            out.push(AxiomViolation {
                axiom: "C1",
                word: w.clone(),
                label: i,
                detail: format!("phi - epsilon = {} but pairing = {}", ph - eps, pairing),
            });
        }
        if let Some(up) = word_op(ty, w, i, Dir::Raise)? {
            if weight(ty, &up) != wt.add(ty.simple_root(i)) {
                out.push(AxiomViolation {
                    axiom: "C3",
                    word: w.clone(),
                    label: i,
                    detail: "raising did not add the simple root".into(),
                });
            }
            if word_op(ty, &up, i, Dir::Lower)?.as_ref() != Some(w) {
                out.push(AxiomViolation {
                    axiom: "C4",
                    word: w.clone(),
                    label: i,
                    detail: "lowering does not invert raising".into(),
                });
            }
        }
        if let Some(down) = word_op(ty, w, i, Dir::Lower)? {
            if weight(ty, &down) != wt.sub(ty.simple_root(i)) {
                out.push(AxiomViolation {
                    axiom: "C3",
                    word: w.clone(),
                    label: i,
                    detail: "lowering did not subtract the simple root".into(),
                });
            }
            if word_op(ty, &down, i, Dir::Raise)?.as_ref() != Some(w) {
                out.push(AxiomViolation {
                    axiom: "C4",
                    word: w.clone(),
                    label: i,
                    detail: "raising does not invert lowering".into(),
                });
            }
        }
    }
    Ok(out)
}

/// (P1) at most one in/out `i`-edge per letter, (P2) no infinite `i`-string:
/// on a finite base this is acyclicity of each `i`-edge relation.
fn check_base_graph(ty: &CrystalType) -> Vec<AxiomViolation> {
    let mut out = Vec::new();
    for i in ty.labels() {
        let mut targets: HashSet<Letter> = HashSet::new();
        for &x in ty.letters() {
            if let Ok(Some(y)) = ty.letter_op(x, i, Dir::Lower) {
                if !targets.insert(y) {
                    out.push(AxiomViolation {
                        axiom: "P1",
                        word: vec![x],
                        label: i,
                        detail: format!("two {i}-edges enter {y}"),
                    });
                }
            }
        }
        for &x in ty.letters() {
            let mut seen = HashSet::from([x]);
            let mut cur = x;
            while let Ok(Some(y)) = ty.letter_op(cur, i, Dir::Lower) {
                if !seen.insert(y) {
                    out.push(AxiomViolation {
                        axiom: "P2",
                        word: vec![x],
                        label: i,
                        detail: format!("cyclic {i}-string through {x}"),
                    });
                    break;
                }
                cur = y;
            }
        }
    }
    out
}

/// All words over the base of length `<= maxlen`, empty word included, in
/// length-then-lexicographic order. Shared by the axiom harness and tests.
pub fn words_up_to(ty: &CrystalType, maxlen: usize) -> Vec<Word> {
    let mut out: Vec<Word> = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..maxlen {
        let mut next = Vec::with_capacity(layer.len() * ty.letters().len());
        for w in &layer {
            for &x in ty.letters() {
                let mut e = w.clone();
                e.push(x);
                next.push(e);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
