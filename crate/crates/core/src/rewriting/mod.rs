//! String rewriting over a finite alphabet of opaque generators.
//!
//! A presentation is an alphabet plus oriented rules between words. Steps
//! apply one rule inside a context, paths chain steps, and branchings pair
//! steps with a common source. Critical branchings are the minimal
//! overlapping ones; completing them with a normalization strategy yields the
//! generating coherence cells of a convergent presentation.

mod branching;
mod io;

pub use branching::{
    brute_force_critical_sources, check_confluence_newman, check_local_confluence,
    classify_branching, complete_branching, critical_branchings, Branching, BranchingKey,
    BranchingKind, CoherenceCell, CompletionOutcome, ConfluenceReport,
};
pub use io::{cell_to_dot, cells_to_json, presentation_from_json, presentation_to_json};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index into a presentation's alphabet.
pub type Gen = u32;
/// A word over the generators.
pub type GenWord = Vec<Gen>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("rule {0} does not exist")]
    BadRule(usize),
    #[error("generator {0} is out of range")]
    BadGenerator(Gen),
    #[error("invalid rule: {0}")]
    InvalidRule(String),
    #[error("paths do not chain: target {0:?} versus source {1:?}")]
    ComposeMismatch(GenWord, GenWord),
    #[error("branching sources differ")]
    SourcesDiffer,
    #[error("rewriting from {from:?} revisited {word:?} after {steps} steps")]
    Cycle {
        from: GenWord,
        word: GenWord,
        steps: usize,
    },
    #[error("rewriting from {from:?} exceeded the step cap {cap}")]
    StepCapExceeded { from: GenWord, cap: usize },
    #[error("bad presentation file: {0}")]
    BadFile(String),
}

/// An oriented rule; `id` is its index in the presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub id: usize,
    pub lhs: GenWord,
    pub rhs: GenWord,
}

/// Generators plus oriented rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation2 {
    generators: Vec<String>,
    rules: Vec<Rule>,
}

impl Presentation2 {
    /// Build a presentation; rule ids are assigned in list order.
    pub fn new(
        generators: Vec<String>,
        rule_pairs: Vec<(GenWord, GenWord)>,
    ) -> Result<Presentation2, RewriteError> {
        let n = generators.len() as u32;
        let mut rules = Vec::with_capacity(rule_pairs.len());
        for (id, (lhs, rhs)) in rule_pairs.into_iter().enumerate() {
            if lhs.is_empty() {
                return Err(RewriteError::InvalidRule("empty left-hand side".into()));
            }
            if lhs == rhs {
                return Err(RewriteError::InvalidRule(format!(
                    "rule {id} has equal sides"
                )));
            }
            for &g in lhs.iter().chain(rhs.iter()) {
                if g >= n {
                    return Err(RewriteError::BadGenerator(g));
                }
            }
            rules.push(Rule { id, lhs, rhs });
        }
        for (k, r) in rules.iter().enumerate() {
            if rules[..k].iter().any(|q| q.lhs == r.lhs && q.rhs == r.rhs) {
                return Err(RewriteError::InvalidRule(format!(
                    "duplicate rule {:?} => {:?}",
                    r.lhs, r.rhs
                )));
            }
        }
        Ok(Presentation2 { generators, rules })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_name(&self, g: Gen) -> &str {
        &self.generators[g as usize]
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, id: usize) -> Result<&Rule, RewriteError> {
        self.rules.get(id).ok_or(RewriteError::BadRule(id))
    }

    pub fn find_rule(&self, lhs: &[Gen], rhs: &[Gen]) -> Option<usize> {
        self.rules.iter().position(|r| r.lhs == lhs && r.rhs == rhs)
    }

    /// Keep only the listed rules, renumbering ids; used to carve
    /// sub-presentations out of a built one.
    pub fn restrict_rules(&self, keep: &[usize]) -> Result<Presentation2, RewriteError> {
        let mut pairs = Vec::new();
        for &id in keep {
            let r = self.rule(id)?;
            pairs.push((r.lhs.clone(), r.rhs.clone()));
        }
        Presentation2::new(self.generators.clone(), pairs)
    }

    pub fn display_word(&self, w: &[Gen]) -> String {
        if w.is_empty() {
            return "ε".into();
        }
        w.iter()
            .map(|&g| self.generator_name(g))
            .collect::<Vec<_>>()
            .join("·")
    }
}

/// Orientation of a step: `Forward` applies a rule left to right, `Backward`
/// is the formal inverse. Shipped pipelines only produce forward steps;
/// inverses exist for the zig-zag identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StepDir {
    Forward,
    Backward,
}

/// One rule application inside a context: source is `left · lhs · right`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Step {
    pub rule: usize,
    pub left: GenWord,
    pub right: GenWord,
    pub dir: StepDir,
}

impl Step {
    pub fn forward(rule: usize, left: GenWord, right: GenWord) -> Step {
        Step {
            rule,
            left,
            right,
            dir: StepDir::Forward,
        }
    }

    /// Offset of the rewritten block.
    pub fn position(&self) -> usize {
        self.left.len()
    }

    pub fn inverse(&self) -> Step {
        Step {
            dir: match self.dir {
                StepDir::Forward => StepDir::Backward,
                StepDir::Backward => StepDir::Forward,
            },
            ..self.clone()
        }
    }

    fn block<'a>(&self, p: &'a Presentation2, source_side: bool) -> &'a [Gen] {
        let r = &p.rules[self.rule];
        let fwd = self.dir == StepDir::Forward;
        if source_side == fwd {
            &r.lhs
        } else {
            &r.rhs
        }
    }

    pub fn source(&self, p: &Presentation2) -> GenWord {
        self.glue(p, true)
    }

    pub fn target(&self, p: &Presentation2) -> GenWord {
        self.glue(p, false)
    }

    fn glue(&self, p: &Presentation2, source_side: bool) -> GenWord {
        let block = self.block(p, source_side);
        let mut w = Vec::with_capacity(self.left.len() + block.len() + self.right.len());
        w.extend_from_slice(&self.left);
        w.extend_from_slice(block);
        w.extend_from_slice(&self.right);
        w
    }
}

/// A chain of steps; the empty path is the identity 2-cell on its source.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RewritePath {
    pub source: GenWord,
    pub steps: Vec<Step>,
}

impl RewritePath {
    pub fn identity(source: GenWord) -> RewritePath {
        RewritePath {
            source,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, p: &Presentation2, step: Step) -> Result<(), RewriteError> {
        let expected = self.target(p);
        if step.source(p) != expected {
            return Err(RewriteError::ComposeMismatch(expected, step.source(p)));
        }
        self.steps.push(step);
        Ok(())
    }

    pub fn target(&self, p: &Presentation2) -> GenWord {
        match self.steps.last() {
            Some(s) => s.target(p),
            None => self.source.clone(),
        }
    }

    /// The word after `n` steps.
    pub fn word_at(&self, p: &Presentation2, n: usize) -> GenWord {
        if n == 0 {
            self.source.clone()
        } else {
            self.steps[n - 1].target(p)
        }
    }

    /// Vertical composition: `self` then `other`.
    pub fn compose(
        &self,
        p: &Presentation2,
        other: &RewritePath,
    ) -> Result<RewritePath, RewriteError> {
        if self.target(p) != other.source {
            return Err(RewriteError::ComposeMismatch(
                self.target(p),
                other.source.clone(),
            ));
        }
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        Ok(RewritePath {
            source: self.source.clone(),
            steps,
        })
    }

    /// Horizontal composition with identity contexts: every step keeps its
    /// rule and shifts by `|t|`, with the contexts extended on both sides.
    pub fn whisker(&self, t: &[Gen], v: &[Gen]) -> RewritePath {
        let mut source = t.to_vec();
        source.extend_from_slice(&self.source);
        source.extend_from_slice(v);
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let mut left = t.to_vec();
                left.extend_from_slice(&s.left);
                let mut right = s.right.clone();
                right.extend_from_slice(v);
                Step {
                    rule: s.rule,
                    left,
                    right,
                    dir: s.dir,
                }
            })
            .collect();
        RewritePath { source, steps }
    }
}

/// Extremal-redex normalization strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

impl std::str::FromStr for Strategy {
    type Err = RewriteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "leftmost" => Ok(Strategy::Leftmost),
            "rightmost" => Ok(Strategy::Rightmost),
            other => Err(RewriteError::BadFile(format!("unknown strategy `{other}`"))),
        }
    }
}

/// All forward rule occurrences in `w`, sorted by position then rule id.
pub fn steps_at(p: &Presentation2, w: &[Gen]) -> Vec<Step> {
    let mut out = Vec::new();
    for pos in 0..=w.len() {
        for r in p.rules() {
            if pos + r.lhs.len() <= w.len() && w[pos..pos + r.lhs.len()] == r.lhs[..] {
                out.push(Step::forward(
                    r.id,
                    w[..pos].to_vec(),
                    w[pos + r.lhs.len()..].to_vec(),
                ));
            }
        }
    }
    out
}

/// Minimum of `steps_at` under (position, rule id); `None` on a normal form.
pub fn leftmost_step(p: &Presentation2, w: &[Gen]) -> Option<Step> {
    steps_at(p, w).into_iter().next()
}

/// Maximum of `steps_at` under (position, rule id); `None` on a normal form.
pub fn rightmost_step(p: &Presentation2, w: &[Gen]) -> Option<Step> {
    steps_at(p, w).into_iter().last()
}

pub fn is_normal_form(p: &Presentation2, w: &[Gen]) -> bool {
    leftmost_step(p, w).is_none()
}

/// Iterate the strategy's step to a normal form, returning the realized path.
/// A revisited word or an exceeded cap yields a non-termination diagnostic.
pub fn normalize(
    p: &Presentation2,
    w: &[Gen],
    strategy: Strategy,
    step_cap: usize,
) -> Result<(GenWord, RewritePath), RewriteError> {
    let mut path = RewritePath::identity(w.to_vec());
    let mut cur = w.to_vec();
    let mut seen = std::collections::HashSet::new();
    seen.insert(cur.clone());
    loop {
        let step = match strategy {
            Strategy::Leftmost => leftmost_step(p, &cur),
            Strategy::Rightmost => rightmost_step(p, &cur),
        };
        let Some(step) = step else {
            return Ok((cur, path));
        };
        cur = step.target(p);
        path.steps.push(step);
        if !seen.insert(cur.clone()) {
            return Err(RewriteError::Cycle {
                from: w.to_vec(),
                word: cur,
                steps: path.len(),
            });
        }
        if path.len() > step_cap {
            return Err(RewriteError::StepCapExceeded {
                from: w.to_vec(),
                cap: step_cap,
            });
        }
    }
}

/// Both reducedness clauses: each lhs is a normal form for the presentation
/// without its own rule, and each rhs is a normal form for the whole
/// presentation.
pub fn is_reduced(p: &Presentation2) -> bool {
    p.rules().iter().all(|r| {
        let lhs_ok = p
            .rules()
            .iter()
            .all(|q| q.id == r.id || !contains_factor(&r.lhs, &q.lhs));
        let rhs_ok = p.rules().iter().all(|q| !contains_factor(&r.rhs, &q.lhs));
        lhs_ok && rhs_ok
    })
}

fn contains_factor(w: &[Gen], pat: &[Gen]) -> bool {
    !pat.is_empty() && pat.len() <= w.len() && w.windows(pat.len()).any(|win| win == pat)
}
