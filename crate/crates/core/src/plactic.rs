//! Type-A tableaux, column reading, Schensted column insertion, and plactic
//! equivalence decided through the crystal structure.
//!
//! A tableau is stored as its columns, left to right, each strictly
//! increasing top to bottom; rows weakly increase and column lengths weakly
//! decrease. The reading concatenates columns right to left, top to bottom.
//! Insertion enters at the leftmost column and bumps to the right.

use crate::crystal::{
    replay_lowering, to_highest_weight, weight, word_to_string, CrystalError, CrystalType, Family,
    Letter, Word,
};
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlacticError {
    #[error("operation requires a type A crystal, got {0}")]
    NotTypeA(Family),
    #[error("tableaux over different alphabets ({0} and {1} letters)")]
    RankMismatch(usize, usize),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("word of length {len} exceeds the Knuth closure bound {bound}")]
    OracleBound { len: usize, bound: usize },
    #[error(transparent)]
    Crystal(#[from] CrystalError),
}

/// A semistandard Young tableau over the type A alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tableau {
    /// Columns left to right, each strictly increasing top to bottom.
    pub columns: Vec<Vec<Letter>>,
}

impl Tableau {
    pub fn empty() -> Tableau {
        Tableau {
            columns: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn len(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn validate(&self) -> Result<(), PlacticError> {
        for c in &self.columns {
            if c.is_empty() {
                return Err(PlacticError::InvalidTableau("empty column".into()));
            }
            if !is_column(c) {
                return Err(PlacticError::InvalidTableau(format!(
                    "column {:?} is not strictly increasing",
                    c
                )));
            }
        }
        for pair in self.columns.windows(2) {
            let (l, r) = (&pair[0], &pair[1]);
            if r.len() > l.len() {
                return Err(PlacticError::InvalidTableau(
                    "column lengths must weakly decrease".into(),
                ));
            }
            for (a, b) in l.iter().zip(r.iter()) {
                if a > b {
                    return Err(PlacticError::InvalidTableau(
                        "rows must weakly increase".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Row-major ASCII rendering.
    pub fn render(&self) -> String {
        let rows = self.columns.first().map_or(0, |c| c.len());
        let mut out = String::new();
        for r in 0..rows {
            let cells: Vec<String> = self
                .columns
                .iter()
                .filter_map(|c| c.get(r))
                .map(|x| x.to_string())
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Strict-increase test; columns are the generators of the column
/// presentation.
pub fn is_column(w: &[Letter]) -> bool {
    w.windows(2).all(|p| p[0] < p[1])
}

/// All non-empty strictly increasing words over the type A alphabet of `ty`,
/// ordered by length then lexicographically. There are `2^m - 1` of them for
/// `m` letters.
pub fn enumerate_columns(ty: &CrystalType) -> Result<Vec<Word>, PlacticError> {
    if ty.family() != Family::A {
        return Err(PlacticError::NotTypeA(ty.family()));
    }
    let letters = ty.letters();
    let mut out: Vec<Word> = Vec::new();
    for mask in 1u32..(1 << letters.len()) {
        let col: Word = letters
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &x)| x)
            .collect();
        out.push(col);
    }
    out.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
    Ok(out)
}

/// Read the columns right to left, top to bottom.
pub fn read_columns(t: &Tableau) -> Word {
    let mut out = Vec::with_capacity(t.len());
    for c in t.columns.iter().rev() {
        out.extend_from_slice(c);
    }
    out
}

/// Insert one letter: step 1 starts a tableau, 2a appends below the first
/// column, 2b replaces the minimal entry `>= x` and bumps it into the rest.
pub fn insert(x: Letter, t: &Tableau) -> Tableau {
    if t.is_empty() {
        return Tableau {
            columns: vec![vec![x]],
        };
    }
    let first = &t.columns[0];
    let rest = Tableau {
        columns: t.columns[1..].to_vec(),
    };
    if x > *first.last().expect("columns are non-empty") {
        let mut col = first.clone();
        col.push(x);
        let mut columns = vec![col];
        columns.extend(rest.columns);
        return Tableau { columns };
    }
    let j = first.iter().position(|&y| x <= y).expect("x <= last entry");
    let bumped = first[j];
    let mut col = first.clone();
    col[j] = x;
    let mut columns = vec![col];
    columns.extend(insert(bumped, &rest).columns);
    Tableau { columns }
}

/// Left-to-right insertion of a word.
pub fn p_tableau(ty: &CrystalType, w: &[Letter]) -> Result<Tableau, PlacticError> {
    if ty.family() != Family::A {
        return Err(PlacticError::NotTypeA(ty.family()));
    }
    ty.check_word(w)?;
    let mut t = Tableau::empty();
    for &x in w {
        t = insert(x, &t);
    }
    Ok(t)
}

/// Tableau product: insert the reading of `t2` followed by the reading of
/// `t1`.
pub fn product(ty: &CrystalType, t1: &Tableau, t2: &Tableau) -> Result<Tableau, PlacticError> {
    let mut w = read_columns(t2);
    w.extend(read_columns(t1));
    p_tableau(ty, &w)
}

/// Decide whether the pointed crystal isomorphism between the components of
/// `w1` and `w2` exists and carries `w1` to `w2`: raise `w1` recording the
/// path, compare highest weights and lengths, then replay the path downward
/// from the highest-weight word of `w2`.
pub fn plactic_equiv(ty: &CrystalType, w1: &[Letter], w2: &[Letter]) -> Result<bool, PlacticError> {
    ty.check_word(w1)?;
    ty.check_word(w2)?;
    if w1.len() != w2.len() {
        return Ok(false);
    }
    let (h1, path) = to_highest_weight(ty, w1)?;
    let (h2, _) = to_highest_weight(ty, w2)?;
    if weight(ty, &h1) != weight(ty, &h2) {
        return Ok(false);
    }
    match replay_lowering(ty, &h2, &path)? {
        Some(image) => Ok(image == w2),
        None => Ok(false),
    }
}

/// Test-support oracle: breadth-first closure under the plactic exchange
/// moves matching this insertion convention,
/// `xzy ~ zxy` for `x < y <= z` and `yxz ~ yzx` for `x <= y < z`,
/// intersected with `{w2}`. Exponential; guarded by `bound`.
pub fn knuth_oracle_equiv(
    w1: &[Letter],
    w2: &[Letter],
    bound: usize,
) -> Result<bool, PlacticError> {
    for w in [w1, w2] {
        if w.len() > bound {
            return Err(PlacticError::OracleBound {
                len: w.len(),
                bound,
            });
        }
    }
    if w1.len() != w2.len() {
        return Ok(false);
    }
    let mut seen: HashSet<Word> = HashSet::from([w1.to_vec()]);
    let mut queue: VecDeque<Word> = VecDeque::from([w1.to_vec()]);
    while let Some(w) = queue.pop_front() {
        if w == w2 {
            return Ok(true);
        }
        for next in knuth_neighbors(&w) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

fn knuth_neighbors(w: &[Letter]) -> Vec<Word> {
    let mut out = Vec::new();
    for k in 0..w.len().saturating_sub(2) {
        let (a, b, c) = (w[k], w[k + 1], w[k + 2]);
        // xzy <-> zxy with x < y <= z swaps the first two letters.
        if (a < c && c <= b) || (b < c && c <= a) {
            let mut n = w.to_vec();
            n.swap(k, k + 1);
            out.push(n);
        }
        // yxz <-> yzx with x <= y < z swaps the last two letters.
        if (b <= a && a < c) || (c <= a && a < b) {
            let mut n = w.to_vec();
            n.swap(k + 1, k + 2);
            out.push(n);
        }
    }
    out
}

/// Tableau as a JSON value: list of columns, each a list of letters.
pub fn tableau_to_json(t: &Tableau) -> serde_json::Value {
    serde_json::json!({
        "columns": t.columns.iter().map(|c| word_to_string(c)).collect::<Vec<_>>(),
    })
}

pub fn tableau_from_json(v: &serde_json::Value) -> Result<Tableau, PlacticError> {
    let cols = v
        .get("columns")
        .and_then(|c| c.as_array())
        .ok_or_else(|| PlacticError::InvalidTableau("missing `columns` array".into()))?;
    let mut columns = Vec::new();
    for c in cols {
        let s = c
            .as_str()
            .ok_or_else(|| PlacticError::InvalidTableau("column must be a string".into()))?;
        let w = crate::crystal::parse_word_text(s)
            .ok_or_else(|| PlacticError::InvalidTableau(format!("bad column `{s}`")))?;
        columns.push(w);
    }
    let t = Tableau { columns };
    t.validate()?;
    Ok(t)
}
