//! Branchings, critical pairs, completion, and confluence reports.

use super::{
    normalize, steps_at, Gen, GenWord, Presentation2, RewriteError, RewritePath, Step, Strategy,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// The branching taxonomy: identical steps, disjoint redexes, or overlapping
/// redexes (nested or partially overlapping).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BranchingKind {
    Aspherical,
    Peiffer,
    Inclusion,
    Overlap,
}

impl BranchingKind {
    pub fn is_overlapping(self) -> bool {
        matches!(self, BranchingKind::Inclusion | BranchingKind::Overlap)
    }
}

/// A pair of steps with a common source, ordered by (position, rule id).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Branching {
    pub left: Step,
    pub right: Step,
}

impl Branching {
    pub fn new(p: &Presentation2, a: Step, b: Step) -> Result<Branching, RewriteError> {
        if a.source(p) != b.source(p) {
            return Err(RewriteError::SourcesDiffer);
        }
        let (left, right) = if (a.position(), a.rule) <= (b.position(), b.rule) {
            (a, b)
        } else {
            (b, a)
        };
        Ok(Branching { left, right })
    }

    pub fn source(&self, p: &Presentation2) -> GenWord {
        self.left.source(p)
    }

    pub fn kind(&self, p: &Presentation2) -> BranchingKind {
        classify(p, &self.left, &self.right)
    }

    /// Stable identity: source word plus the two step signatures.
    pub fn key(&self, p: &Presentation2) -> BranchingKey {
        BranchingKey {
            source: self.source(p),
            left: (self.left.rule, self.left.position()),
            right: (self.right.rule, self.right.position()),
        }
    }
}

/// Alignment key for branchings and their cells.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BranchingKey {
    pub source: GenWord,
    pub left: (usize, usize),
    pub right: (usize, usize),
}

/// Classify two steps with equal sources.
pub fn classify_branching(
    p: &Presentation2,
    a: &Step,
    b: &Step,
) -> Result<BranchingKind, RewriteError> {
    if a.source(p) != b.source(p) {
        return Err(RewriteError::SourcesDiffer);
    }
    Ok(classify(p, a, b))
}

fn classify(p: &Presentation2, a: &Step, b: &Step) -> BranchingKind {
    if a == b {
        return BranchingKind::Aspherical;
    }
    let (s1, e1) = redex_interval(p, a);
    let (s2, e2) = redex_interval(p, b);
    if e1 <= s2 || e2 <= s1 {
        return BranchingKind::Peiffer;
    }
    if (s1 <= s2 && e2 <= e1) || (s2 <= s1 && e1 <= e2) {
        BranchingKind::Inclusion
    } else {
        BranchingKind::Overlap
    }
}

fn redex_interval(p: &Presentation2, s: &Step) -> (usize, usize) {
    let len = p.rules()[s.rule].lhs.len();
    (s.position(), s.position() + len)
}

/// Enumerate the critical branchings: partial overlaps of one lhs suffix with
/// another lhs prefix, and proper factor inclusions. Mirror duplicates are
/// removed; aspherical and Peiffer shapes never arise by construction.
pub fn critical_branchings(p: &Presentation2) -> Vec<Branching> {
    let mut set: BTreeSet<Branching> = BTreeSet::new();
    for r1 in p.rules() {
        for r2 in p.rules() {
            let (l1, l2) = (&r1.lhs, &r2.lhs);
            // proper overlap: nonempty proper suffix of l1 = proper prefix of l2
            for k in 1..l1.len().min(l2.len()) {
                if l1[l1.len() - k..] == l2[..k] {
                    let f = Step::forward(r1.id, Vec::new(), l2[k..].to_vec());
                    let g = Step::forward(r2.id, l1[..l1.len() - k].to_vec(), Vec::new());
                    set.insert(Branching::new(p, f, g).expect("glued source"));
                }
            }
            // inclusion: l2 a factor of l1, skipping the aspherical diagonal
            if l2.len() <= l1.len() {
                for pos in 0..=l1.len() - l2.len() {
                    if r1.id == r2.id && pos == 0 && l1.len() == l2.len() {
                        continue;
                    }
                    if l1[pos..pos + l2.len()] == l2[..] {
                        let f = Step::forward(r1.id, Vec::new(), Vec::new());
                        let g =
                            Step::forward(r2.id, l1[..pos].to_vec(), l1[pos + l2.len()..].to_vec());
                        set.insert(Branching::new(p, f, g).expect("factor source"));
                    }
                }
            }
        }
    }
    set.into_iter().collect()
}

/// A generating coherence cell: a branching together with the two
/// normalization paths that close its confluence diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherenceCell {
    pub branching: Branching,
    /// Completion of the left branch, from `target(branching.left)`.
    pub left_completion: RewritePath,
    /// Completion of the right branch, from `target(branching.right)`.
    pub right_completion: RewritePath,
}

impl CoherenceCell {
    /// Number of steps on each side, branching step included.
    pub fn side_lengths(&self) -> (usize, usize) {
        (
            1 + self.left_completion.len(),
            1 + self.right_completion.len(),
        )
    }

    pub fn endpoint(&self, p: &Presentation2) -> GenWord {
        self.left_completion.target(p)
    }

    /// Both composites must share source and target.
    pub fn validate(&self, p: &Presentation2) -> Result<(), RewriteError> {
        if self.branching.left.target(p) != self.left_completion.source
            || self.branching.right.target(p) != self.right_completion.source
        {
            return Err(RewriteError::ComposeMismatch(
                self.branching.left.target(p),
                self.left_completion.source.clone(),
            ));
        }
        if self.left_completion.target(p) != self.right_completion.target(p) {
            return Err(RewriteError::ComposeMismatch(
                self.left_completion.target(p),
                self.right_completion.target(p),
            ));
        }
        Ok(())
    }
}

/// Outcome of completing a local branching: a cell, or a non-confluence
/// witness carrying the two distinct normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompletionOutcome {
    Cell(CoherenceCell),
    NotJoinable {
        branching: Branching,
        left_nf: GenWord,
        right_nf: GenWord,
    },
}

impl CompletionOutcome {
    pub fn cell(self) -> Option<CoherenceCell> {
        match self {
            CompletionOutcome::Cell(c) => Some(c),
            CompletionOutcome::NotJoinable { .. } => None,
        }
    }
}

/// Normalize both targets of a local branching with the strategy; equal
/// normal forms close the diagram.
pub fn complete_branching(
    p: &Presentation2,
    b: &Branching,
    strategy: Strategy,
    step_cap: usize,
) -> Result<CompletionOutcome, RewriteError> {
    let (nf1, path1) = normalize(p, &b.left.target(p), strategy, step_cap)?;
    let (nf2, path2) = normalize(p, &b.right.target(p), strategy, step_cap)?;
    if nf1 == nf2 {
        Ok(CompletionOutcome::Cell(CoherenceCell {
            branching: b.clone(),
            left_completion: path1,
            right_completion: path2,
        }))
    } else {
        Ok(CompletionOutcome::NotJoinable {
            branching: b.clone(),
            left_nf: nf1,
            right_nf: nf2,
        })
    }
}

/// Result of a confluence check.
#[derive(Debug, Clone, Default)]
pub struct ConfluenceReport {
    pub criticals: usize,
    /// Branchings whose normal forms disagree.
    pub not_joinable: Vec<(BranchingKey, GenWord, GenWord)>,
    /// Non-termination diagnostics hit during the check.
    pub diagnostics: Vec<RewriteError>,
    /// Words of the termination universe that failed to normalize.
    pub termination_failures: Vec<GenWord>,
}

impl ConfluenceReport {
    pub fn is_clean(&self) -> bool {
        self.not_joinable.is_empty()
            && self.diagnostics.is_empty()
            && self.termination_failures.is_empty()
    }
}

/// Complete every critical branching (restricted by `filter` when given).
pub fn check_local_confluence(
    p: &Presentation2,
    strategy: Strategy,
    step_cap: usize,
    filter: Option<&dyn Fn(&Branching) -> bool>,
) -> ConfluenceReport {
    let mut report = ConfluenceReport::default();
    for b in critical_branchings(p) {
        if let Some(f) = filter {
            if !f(&b) {
                continue;
            }
        }
        report.criticals += 1;
        match complete_branching(p, &b, strategy, step_cap) {
            Ok(CompletionOutcome::Cell(_)) => {}
            Ok(CompletionOutcome::NotJoinable {
                left_nf, right_nf, ..
            }) => report.not_joinable.push((b.key(p), left_nf, right_nf)),
            Err(e) => report.diagnostics.push(e),
        }
    }
    report
}

/// Local confluence plus desk-scale termination evidence: every word of the
/// universe must normalize without a cycle diagnostic.
pub fn check_confluence_newman(
    p: &Presentation2,
    universe: &[GenWord],
    strategy: Strategy,
    step_cap: usize,
    filter: Option<&dyn Fn(&Branching) -> bool>,
) -> ConfluenceReport {
    let mut report = check_local_confluence(p, strategy, step_cap, filter);
    for w in universe {
        if normalize(p, w, strategy, step_cap).is_err() {
            report.termination_failures.push(w.clone());
        }
    }
    report
}

/// Test oracle: minimal overlapping branchings found by enumerating all local
/// branchings on all words up to the stated length over the full alphabet and
/// keeping the ones with no strictly smaller context. Exponential in the
/// alphabet; only for small presentations.
pub fn brute_force_critical_sources(p: &Presentation2, max_len: usize) -> Vec<Branching> {
    let gens: Vec<Gen> = (0..p.generators().len() as u32).collect();
    let mut words: Vec<GenWord> = vec![Vec::new()];
    let mut layer: Vec<GenWord> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &g in &gens {
                let mut e = w.clone();
                e.push(g);
                next.push(e);
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    let mut out = BTreeSet::new();
    for w in &words {
        let steps = steps_at(p, w);
        for a in &steps {
            for b in &steps {
                if (a.position(), a.rule) >= (b.position(), b.rule) {
                    continue;
                }
                if !classify(p, a, b).is_overlapping() {
                    continue;
                }
                let (s1, e1) = redex_interval(p, a);
                let (s2, e2) = redex_interval(p, b);
                let minimal = s1.min(s2) == 0 && e1.max(e2) == w.len();
                if minimal {
                    out.insert(Branching {
                        left: a.clone(),
                        right: b.clone(),
                    });
                }
            }
        }
    }
    out.into_iter().collect()
}
