//! String rewriting compatible with a crystal structure.
//!
//! A crystal presentation is a presentation whose generators carry letter
//! words and whose rule set is closed under the Kashiwara operators, with
//! source and target transported together. Operators act on a generator word
//! through its flattened letter word and re-chunk along the recorded column
//! boundaries, which are preserved because an operator changes a single
//! letter and never a length.
//!
//! The payoff is the highest-weight reduction: termination, confluence, and
//! the generating coherence cells of such a presentation are determined by
//! the words and critical branchings whose source is of highest weight.

mod cm;
mod coherence;
mod transport;

pub use cm::{verify_cm_axioms, CmReport, CmViolation};
pub use coherence::{
    check_confluence, cohere_direct, cohere_via_hw, gen_words_up_to, hw_critical_branchings,
    hw_system, HighestWeightSystem, TracedCell,
};
pub use transport::{
    kashiwara_on_branching, kashiwara_on_cell, kashiwara_on_path, kashiwara_on_step, lower_cell,
    raise_branching_to_hw,
};

use crate::crystal::{
    is_highest_weight, parse_word_text, word_op, word_to_string, CrystalError, CrystalType, Dir,
    Family, Word,
};
use crate::plactic::{enumerate_columns, p_tableau, PlacticError};
use crate::rewriting::{
    presentation_from_json, presentation_to_json, Gen, GenWord, Presentation2, RewriteError,
};
use crate::SCHEMA_VERSION;
use serde_json::{json, Value};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrystalRewriteError {
    #[error(transparent)]
    Crystal(#[from] CrystalError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Plactic(#[from] PlacticError),
    #[error("certificate violation: {0}")]
    Certificate(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
    #[error("bad presentation file: {0}")]
    BadFile(String),
}

/// One certificate finding; an empty list certifies a crystal presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateViolation {
    pub rule: usize,
    pub label: u8,
    pub dir: Dir,
    pub reason: String,
}

impl std::fmt::Display for CertificateViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let op = match self.dir {
            Dir::Raise => "e",
            Dir::Lower => "f",
        };
        write!(
            f,
            "rule {} under {}_{}: {}",
            self.rule, op, self.label, self.reason
        )
    }
}

/// Outcome of [`check_crystal_presentation`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Certificate {
    pub violations: Vec<CertificateViolation>,
}

impl Certificate {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A presentation whose generators are letter words over a classical base.
#[derive(Debug, Clone)]
pub struct CrystalPresentation {
    base: CrystalType,
    pres: Presentation2,
    columns: Vec<Word>,
    col_index: HashMap<Word, Gen>,
    rule_index: HashMap<(GenWord, GenWord), usize>,
    pub certificate: Certificate,
}

impl CrystalPresentation {
    /// Assemble from explicit generator words and rules, then certify.
    pub fn assemble(
        base: CrystalType,
        columns: Vec<Word>,
        rule_pairs: Vec<(GenWord, GenWord)>,
    ) -> Result<CrystalPresentation, CrystalRewriteError> {
        let mut col_index = HashMap::new();
        for (k, c) in columns.iter().enumerate() {
            base.check_word(c)?;
            if c.is_empty() {
                return Err(CrystalRewriteError::BadFile("empty generator word".into()));
            }
            if col_index.insert(c.clone(), k as Gen).is_some() {
                return Err(CrystalRewriteError::BadFile(format!(
                    "duplicate generator `{}`",
                    word_to_string(c)
                )));
            }
        }
        let names = columns.iter().map(|c| word_to_string(c)).collect();
        let pres = Presentation2::new(names, rule_pairs)?;
        let rule_index = pres
            .rules()
            .iter()
            .map(|r| ((r.lhs.clone(), r.rhs.clone()), r.id))
            .collect();
        let mut cp = CrystalPresentation {
            base,
            pres,
            columns,
            col_index,
            rule_index,
            certificate: Certificate::default(),
        };
        cp.certificate = check_crystal_presentation(&cp);
        Ok(cp)
    }

    /// Rule lookup by both sides.
    pub fn rule_id(&self, lhs: &[Gen], rhs: &[Gen]) -> Option<usize> {
        self.rule_index.get(&(lhs.to_vec(), rhs.to_vec())).copied()
    }

    pub fn base(&self) -> &CrystalType {
        &self.base
    }

    pub fn presentation(&self) -> &Presentation2 {
        &self.pres
    }

    pub fn column(&self, g: Gen) -> &Word {
        &self.columns[g as usize]
    }

    pub fn generator_of(&self, column: &Word) -> Option<Gen> {
        self.col_index.get(column).copied()
    }

    /// Concatenate the generator letter words.
    pub fn flatten(&self, w: &[Gen]) -> Word {
        let mut out = Vec::new();
        for &g in w {
            out.extend_from_slice(self.column(g));
        }
        out
    }

    pub fn flat_len(&self, w: &[Gen]) -> usize {
        w.iter().map(|&g| self.column(g).len()).sum()
    }

    /// Re-chunk a flattened word along the column boundaries of `shape`.
    /// Every chunk must be a generator again; a miss means the rule set is
    /// not closed under the operators.
    pub fn rechunk(
        &self,
        flat: &[crate::crystal::Letter],
        shape: &[Gen],
    ) -> Result<GenWord, CrystalRewriteError> {
        let mut out = Vec::with_capacity(shape.len());
        let mut at = 0;
        for &g in shape {
            let len = self.column(g).len();
            let chunk = &flat[at..at + len];
            let gen = self.col_index.get(chunk).copied().ok_or_else(|| {
                CrystalRewriteError::Certificate(format!(
                    "chunk `{}` is not a generator",
                    word_to_string(chunk)
                ))
            })?;
            out.push(gen);
            at += len;
        }
        Ok(out)
    }

    /// Kashiwara operator on a generator word: act on the flattened letter
    /// word, then re-chunk along the same boundaries.
    pub fn kashiwara_on_word(
        &self,
        w: &[Gen],
        i: u8,
        dir: Dir,
    ) -> Result<Option<GenWord>, CrystalRewriteError> {
        let flat = self.flatten(w);
        match word_op(&self.base, &flat, i, dir)? {
            Some(new_flat) => Ok(Some(self.rechunk(&new_flat, w)?)),
            None => Ok(None),
        }
    }

    /// Highest-weight predicate on the flattened word.
    pub fn is_hw(&self, w: &[Gen]) -> Result<bool, CrystalRewriteError> {
        Ok(is_highest_weight(&self.base, &self.flatten(w))?)
    }

    /// Group rule ids into orbits under the operators; deleting whole orbits
    /// preserves closure (used for fault injection in tests and checks).
    pub fn rule_orbits(&self) -> Result<Vec<Vec<usize>>, CrystalRewriteError> {
        let mut seen = vec![false; self.pres.rules().len()];
        let mut orbits = Vec::new();
        for start in 0..self.pres.rules().len() {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut frontier = vec![start];
            while let Some(id) = frontier.pop() {
                let rule = &self.pres.rules()[id];
                for i in self.base.labels() {
                    for dir in [Dir::Raise, Dir::Lower] {
                        let lhs = self.kashiwara_on_word(&rule.lhs, i, dir)?;
                        let rhs = self.kashiwara_on_word(&rule.rhs, i, dir)?;
                        if let (Some(lhs), Some(rhs)) = (lhs, rhs) {
                            if let Some(next) = self.rule_id(&lhs, &rhs) {
                                if !seen[next] {
                                    seen[next] = true;
                                    orbit.push(next);
                                    frontier.push(next);
                                }
                            }
                        }
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    /// Same generators, rules restricted to `keep`; re-certified.
    pub fn restrict_rules(
        &self,
        keep: &[usize],
    ) -> Result<CrystalPresentation, CrystalRewriteError> {
        let pairs = keep
            .iter()
            .map(|&id| {
                let r = &self.pres.rules()[id];
                (r.lhs.clone(), r.rhs.clone())
            })
            .collect();
        CrystalPresentation::assemble(self.base.clone(), self.columns.clone(), pairs)
    }
}

/// Certify closure: for every rule and operator, source and target vanish
/// together, and when they survive the transported pair is again a rule.
/// Also enforces the family bound on the number of columns in rule targets
/// (two for A/B/C/D, three for G2).
pub fn check_crystal_presentation(cp: &CrystalPresentation) -> Certificate {
    let mut violations = Vec::new();
    let rhs_bound = match cp.base.family() {
        Family::G2 => 3,
        _ => 2,
    };
    for rule in cp.pres.rules() {
        if rule.rhs.len() > rhs_bound {
            violations.push(CertificateViolation {
                rule: rule.id,
                label: 0,
                dir: Dir::Lower,
                reason: format!(
                    "target has {} columns, exceeding the family bound {}",
                    rule.rhs.len(),
                    rhs_bound
                ),
            });
        }
        for i in cp.base.labels() {
            for dir in [Dir::Raise, Dir::Lower] {
                let lhs = cp.kashiwara_on_word(&rule.lhs, i, dir);
                let rhs = cp.kashiwara_on_word(&rule.rhs, i, dir);
                let mut violate = |reason: String| {
                    violations.push(CertificateViolation {
                        rule: rule.id,
                        label: i,
                        dir,
                        reason,
                    })
                };
                match (lhs, rhs) {
                    (Ok(None), Ok(None)) => {}
                    (Ok(Some(l)), Ok(Some(r))) => {
                        if cp.rule_id(&l, &r).is_none() {
                            violate(format!(
                                "transported rule {} => {} is missing",
                                cp.pres.display_word(&l),
                                cp.pres.display_word(&r)
                            ));
                        }
                    }
                    (Ok(Some(_)), Ok(None)) => {
                        violate("operator vanishes on the target but not the source".into())
                    }
                    (Ok(None), Ok(Some(_))) => {
                        violate("operator vanishes on the source but not the target".into())
                    }
                    (Err(e), _) | (_, Err(e)) => violate(e.to_string()),
                }
            }
        }
    }
    Certificate { violations }
}

/// The column presentation of the type A plactic monoid: generators are the
/// strictly increasing words, and each non-tableau pair rewrites to the
/// column decomposition of its insertion tableau.
pub fn build_column_presentation(
    ty: &CrystalType,
) -> Result<CrystalPresentation, CrystalRewriteError> {
    if ty.family() != Family::A {
        return Err(CrystalRewriteError::Plactic(PlacticError::NotTypeA(
            ty.family(),
        )));
    }
    let columns = enumerate_columns(ty)?;
    let col_index: HashMap<&Word, Gen> = columns
        .iter()
        .enumerate()
        .map(|(k, c)| (c, k as Gen))
        .collect();
    let mut rules = Vec::new();
    for (g1, c1) in columns.iter().enumerate() {
        for (g2, c2) in columns.iter().enumerate() {
            let mut letters = c1.clone();
            letters.extend_from_slice(c2);
            let tableau = p_tableau(ty, &letters)?;
            if tableau.columns.len() > 2 {
                return Err(CrystalRewriteError::Internal(format!(
                    "insertion of two columns produced {} columns",
                    tableau.columns.len()
                )));
            }
            // Columns right to left, matching the reading order.
            let rhs: GenWord = tableau.columns.iter().rev().map(|c| col_index[c]).collect();
            let lhs: GenWord = vec![g1 as Gen, g2 as Gen];
            if lhs != rhs {
                rules.push((lhs, rhs));
            }
        }
    }
    CrystalPresentation::assemble(ty.clone(), columns, rules)
}

/// Serialize with a `{family, rank}` header on top of the generic format.
pub fn save_presentation(cp: &CrystalPresentation) -> Value {
    let mut v = presentation_to_json(&cp.pres);
    let obj = v.as_object_mut().expect("object");
    obj.insert("family".into(), json!(cp.base.family().to_string()));
    obj.insert("rank".into(), json!(cp.base.rank()));
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    v
}

/// Load and re-certify; certificate failures are stored, not fatal.
pub fn load_presentation(v: &Value) -> Result<CrystalPresentation, CrystalRewriteError> {
    let family: Family = v
        .get("family")
        .and_then(|f| f.as_str())
        .ok_or_else(|| CrystalRewriteError::BadFile("missing `family`".into()))?
        .parse()?;
    let rank = v
        .get("rank")
        .and_then(|r| r.as_u64())
        .ok_or_else(|| CrystalRewriteError::BadFile("missing `rank`".into()))?;
    let base = CrystalType::new(family, rank as u8)?;
    let pres = presentation_from_json(v)?;
    let columns: Vec<Word> = pres
        .generators()
        .iter()
        .map(|name| {
            let w = parse_word_text(name)
                .ok_or_else(|| CrystalRewriteError::BadFile(format!("bad generator `{name}`")))?;
            base.check_word(&w)?;
            Ok(w)
        })
        .collect::<Result<_, CrystalRewriteError>>()?;
    let pairs = pres
        .rules()
        .iter()
        .map(|r| (r.lhs.clone(), r.rhs.clone()))
        .collect();
    CrystalPresentation::assemble(base, columns, pairs)
}
