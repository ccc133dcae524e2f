//! Crystal bases of classical type and Kashiwara operators on words.
//!
//! A crystal base is a finite `I`-labeled digraph on a set of letters, with at
//! most one incoming and one outgoing `i`-edge per vertex (the chains and the
//! type-D fork). Words over the letters inherit a crystal structure through
//! the tensor rule, which decides whether a raising or lowering operator acts
//! on the left or the right part of a word by comparing `phi` of the prefix
//! with `epsilon` of the suffix.

mod axioms;
mod component;
mod word;

pub use axioms::{check_axioms, words_up_to, AxiomViolation};
pub use component::{connected_component, ComponentGraph};
pub use word::{
    epsilon, is_highest_weight, phi, replay_lowering, to_highest_weight, weight, word_op,
    word_op_recursive, RaisingPath,
};

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// The five classical families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
            Family::C => write!(f, "C"),
            Family::D => write!(f, "D"),
            Family::G2 => write!(f, "G2"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = CrystalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "G2" | "G" => Ok(Family::G2),
            other => Err(CrystalError::BadFamily(other.to_string())),
        }
    }
}

/// A letter of a classical crystal base.
///
/// Encoded as a signed integer: `k` for an unbarred letter, `-k` for the
/// barred letter, `0` for the zero letter of types B and G2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(pub i8);

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A word over a crystal base; the empty word is the monoid identity.
pub type Word = Vec<Letter>;

/// Direction of a Kashiwara operator: `Raise` is `e_i`, `Lower` is `f_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    Raise,
    Lower,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Raise => Dir::Lower,
            Dir::Lower => Dir::Raise,
        }
    }
}

/// Integer weight vector. Length is fixed by the crystal type: number of
/// letters for type A, the rank for B/C/D, and 2 for G2 (fundamental-weight
/// coordinates).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(dim: usize) -> Weight {
        Weight(vec![0; dim])
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrystalError {
    #[error("unknown family `{0}`")]
    BadFamily(String),
    #[error("invalid rank {rank} for family {family}")]
    BadRank { family: Family, rank: u8 },
    #[error("letter {letter} is not in the {family}_{rank} base")]
    BadLetter {
        family: Family,
        rank: u8,
        letter: Letter,
    },
    #[error("label {0} is out of range")]
    BadLabel(u8),
    #[error("cannot parse `{0}` as a word")]
    BadWord(String),
    #[error("raising exceeded the step cap {0}; the edge tables are corrupt")]
    RaisingDiverged(usize),
    #[error("component exceeded the vertex cap {cap} (partial size {partial})")]
    ComponentCapExceeded { cap: usize, partial: usize },
}

/// One classical crystal base: family, rank, edge tables, letter weights and
/// simple-root data.
///
/// For family A the alphabet has `rank + 1` letters and the operator labels
/// are `1..=rank` (rank counts labels, not letters).
#[derive(Debug, Clone)]
pub struct CrystalType {
    family: Family,
    rank: u8,
    letters: Vec<Letter>,
    index: HashMap<Letter, usize>,
    // lower[x][i-1] = target of the i-edge out of x, raise[x][i-1] = source of
    // the i-edge into x
    lower: Vec<Vec<Option<usize>>>,
    raise: Vec<Vec<Option<usize>>>,
    weights: Vec<Weight>,
    simple_roots: Vec<Weight>,
}

impl CrystalType {
    pub fn new(family: Family, rank: u8) -> Result<CrystalType, CrystalError> {
        let bad = || CrystalError::BadRank { family, rank };
        match family {
            Family::A | Family::B | Family::C if rank < 1 => return Err(bad()),
            Family::D if rank < 2 => return Err(bad()),
            Family::G2 if rank != 2 => return Err(bad()),
            _ => {}
        }
        let n = rank as i8;
        // Chain of letters with edge labels between consecutive entries.
        // Type D is the one non-chain case and is assembled separately.
        let (letters, chain_labels): (Vec<Letter>, Vec<u8>) = match family {
            Family::A => ((1..=n + 1).map(Letter).collect(), (1..=rank).collect()),
            Family::B => {
                let mut ls: Vec<Letter> = (1..=n).map(Letter).collect();
                ls.push(Letter(0));
                ls.extend((1..=n).rev().map(|k| Letter(-k)));
                let mut labels: Vec<u8> = (1..=rank).collect();
                labels.push(rank);
                labels.extend((1..rank).rev());
                (ls, labels)
            }
            Family::C => {
                let mut ls: Vec<Letter> = (1..=n).map(Letter).collect();
                ls.extend((1..=n).rev().map(|k| Letter(-k)));
                let mut labels: Vec<u8> = (1..=rank).collect();
                labels.extend((1..rank).rev());
                (ls, labels)
            }
            Family::G2 => (
                vec![
                    Letter(1),
                    Letter(2),
                    Letter(3),
                    Letter(0),
                    Letter(-3),
                    Letter(-2),
                    Letter(-1),
                ],
                vec![1, 2, 1, 1, 2, 1],
            ),
            Family::D => {
                // Listed in a fixed order; edges are added after indexing.
                let mut ls: Vec<Letter> = (1..=n).map(Letter).collect();
                ls.extend((1..=n).rev().map(|k| Letter(-k)));
                (ls, Vec::new())
            }
        };

        let index: HashMap<Letter, usize> =
            letters.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let mut lower = vec![vec![None; rank as usize]; letters.len()];
        let mut raise = vec![vec![None; rank as usize]; letters.len()];
        let mut add_edge = |src: Letter, label: u8, dst: Letter| {
            let (s, d) = (index[&src], index[&dst]);
            lower[s][label as usize - 1] = Some(d);
            raise[d][label as usize - 1] = Some(s);
        };
        if family == Family::D {
            for k in 1..n - 1 {
                add_edge(Letter(k), k as u8, Letter(k + 1));
                add_edge(Letter(-(k + 1)), k as u8, Letter(-k));
            }
            add_edge(Letter(n - 1), rank - 1, Letter(n));
            add_edge(Letter(n - 1), rank, Letter(-n));
            add_edge(Letter(n), rank, Letter(-(n - 1)));
            add_edge(Letter(-n), rank - 1, Letter(-(n - 1)));
        } else {
            for (k, &label) in chain_labels.iter().enumerate() {
                add_edge(letters[k], label, letters[k + 1]);
            }
        }

        let simple_roots = simple_roots(family, rank);
        let weights = match family {
            Family::G2 => {
                // Fixed by walking the chain: wt(next) = wt(prev) - alpha_label.
                let mut ws = vec![Weight(vec![1, 0])];
                for (k, &label) in chain_labels.iter().enumerate() {
                    ws.push(ws[k].sub(&simple_roots[label as usize - 1]));
                }
                ws
            }
            _ => letters
                .iter()
                .map(|&Letter(v)| {
                    let dim = if family == Family::A {
                        rank as usize + 1
                    } else {
                        rank as usize
                    };
                    let mut w = vec![0i64; dim];
                    if v > 0 {
                        w[v as usize - 1] = 1;
                    } else if v < 0 {
                        w[(-v) as usize - 1] = -1;
                    }
                    Weight(w)
                })
                .collect(),
        };

        Ok(CrystalType {
            family,
            rank,
            letters,
            index,
            lower,
            raise,
            weights,
            simple_roots,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    /// Letters in chain order (for D: unbarred, then barred).
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Operator labels `1..=rank`.
    pub fn labels(&self) -> impl Iterator<Item = u8> + Clone {
        1..=self.rank
    }

    pub fn contains(&self, x: Letter) -> bool {
        self.index.contains_key(&x)
    }

    pub fn check_word(&self, w: &[Letter]) -> Result<(), CrystalError> {
        for &x in w {
            if !self.contains(x) {
                return Err(CrystalError::BadLetter {
                    family: self.family,
                    rank: self.rank,
                    letter: x,
                });
            }
        }
        Ok(())
    }

    pub(crate) fn check_label(&self, i: u8) -> Result<(), CrystalError> {
        if i == 0 || i > self.rank {
            return Err(CrystalError::BadLabel(i));
        }
        Ok(())
    }

    /// Follow the `i`-edge out of (`Lower`) or into (`Raise`) the letter.
    /// `None` is the absorbing zero result.
    pub fn letter_op(&self, x: Letter, i: u8, dir: Dir) -> Result<Option<Letter>, CrystalError> {
        self.check_label(i)?;
        let idx = *self.index.get(&x).ok_or(CrystalError::BadLetter {
            family: self.family,
            rank: self.rank,
            letter: x,
        })?;
        let table = match dir {
            Dir::Lower => &self.lower,
            Dir::Raise => &self.raise,
        };
        Ok(table[idx][i as usize - 1].map(|k| self.letters[k]))
    }

    /// Number of `i`-edges that can be followed from `x` in direction `dir`
    /// before hitting zero. Strings in the base crystals have length at most 2.
    pub(crate) fn letter_string(&self, x: Letter, i: u8, dir: Dir) -> u32 {
        let mut n = 0;
        let mut cur = x;
        while let Some(next) = self.letter_op(cur, i, dir).expect("letter in base") {
            n += 1;
            cur = next;
        }
        n
    }

    pub fn letter_weight(&self, x: Letter) -> &Weight {
        &self.weights[self.index[&x]]
    }

    pub fn simple_root(&self, i: u8) -> &Weight {
        &self.simple_roots[i as usize - 1]
    }

    /// Pairing of a weight with the simple coroot `alpha_i^vee`.
    pub fn coroot_pairing(&self, w: &Weight, i: u8) -> i64 {
        let k = i as usize - 1;
        let n = self.rank as usize;
        match self.family {
            Family::A => w.0[k] - w.0[k + 1],
            Family::B => {
                if i < self.rank {
                    w.0[k] - w.0[k + 1]
                } else {
                    2 * w.0[n - 1]
                }
            }
            Family::C => {
                if i < self.rank {
                    w.0[k] - w.0[k + 1]
                } else {
                    w.0[n - 1]
                }
            }
            Family::D => {
                if i < self.rank {
                    w.0[k] - w.0[k + 1]
                } else {
                    w.0[n - 2] + w.0[n - 1]
                }
            }
            Family::G2 => w.0[k],
        }
    }

    pub fn weight_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank as usize + 1,
            Family::G2 => 2,
            _ => self.rank as usize,
        }
    }

    /// Length in edges of the longest directed path in the base crystal.
    /// Bounds the number of raising steps per letter.
    pub(crate) fn diameter(&self) -> usize {
        match self.family {
            Family::A => self.rank as usize,
            Family::B => 2 * self.rank as usize,
            Family::C => 2 * self.rank as usize - 1,
            Family::D => 2 * self.rank as usize - 1,
            Family::G2 => 6,
        }
    }

    /// Test-support fault injection: drop the `i`-edge out of `x` from both
    /// tables, leaving an inconsistent base crystal.
    #[doc(hidden)]
    pub fn corrupt_edge(&mut self, x: Letter, i: u8) {
        let idx = self.index[&x];
        if let Some(dst) = self.lower[idx][i as usize - 1].take() {
            self.raise[dst][i as usize - 1] = None;
        }
    }

    /// Parse a word: contiguous digits (`132`), or whitespace-separated signed
    /// integers (`1 -2 0`). Letters are validated against this base.
    pub fn parse_word(&self, s: &str) -> Result<Word, CrystalError> {
        let s = s.trim();
        let w = parse_word_text(s).ok_or_else(|| CrystalError::BadWord(s.to_string()))?;
        self.check_word(&w)?;
        Ok(w)
    }
}

/// Parse without validating letters against a base.
pub fn parse_word_text(s: &str) -> Option<Word> {
    let s = s.trim();
    if s.is_empty() {
        return Some(Vec::new());
    }
    if s.chars().all(|c| c.is_ascii_digit()) {
        return Some(
            s.chars()
                .map(|c| Letter(c.to_digit(10).unwrap() as i8))
                .collect(),
        );
    }
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        out.push(Letter(tok.parse::<i8>().ok()?));
    }
    Some(out)
}

/// Render a word: contiguous digits when every letter is a single positive
/// digit, otherwise space-separated signed integers.
pub fn word_to_string(w: &[Letter]) -> String {
    if !w.is_empty() && w.iter().all(|&Letter(v)| (1..=9).contains(&v)) {
        w.iter().map(|l| l.to_string()).collect()
    } else {
        w.iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn simple_roots(family: Family, rank: u8) -> Vec<Weight> {
    let n = rank as usize;
    let basis = |dim: usize, k: usize, v: i64| {
        let mut w = vec![0i64; dim];
        w[k] = v;
        Weight(w)
    };
    match family {
        Family::A => (0..n)
            .map(|k| {
                let mut w = vec![0i64; n + 1];
                w[k] = 1;
                w[k + 1] = -1;
                Weight(w)
            })
            .collect(),
        Family::B | Family::C | Family::D => (0..n)
            .map(|k| {
                if k + 1 < n {
                    let mut w = vec![0i64; n];
                    w[k] = 1;
                    w[k + 1] = -1;
                    Weight(w)
                } else {
                    match family {
                        Family::B => basis(n, n - 1, 1),
                        Family::C => basis(n, n - 1, 2),
                        Family::D => {
                            let mut w = vec![0i64; n];
                            w[n - 2] = 1;
                            w[n - 1] = 1;
                            Weight(w)
                        }
                        _ => unreachable!(),
                    }
                }
            })
            .collect(),
        // Fundamental-weight coordinates: alpha_j reads off the j-th column of
        // the Cartan matrix, so coroot pairing is coordinate projection.
        Family::G2 => vec![Weight(vec![2, -1]), Weight(vec![-3, 2])],
    }
}
