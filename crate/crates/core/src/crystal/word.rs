//! Kashiwara operators on words via the tensor rule.
//!
//! The binary rule compares `phi` of the left factor with `epsilon` of the
//! right factor: `e_i` acts on the left when `phi >= epsilon`, `f_i` acts on
//! the left when `phi > epsilon`. [`word_op_recursive`] evaluates it literally
//! on the left-nested bracketing; [`word_op`] is the equivalent linear-time
//! signature scan, validated against the recursive form in the test suite.

use super::{CrystalError, CrystalType, Dir, Letter, Weight, Word};
use serde::{Deserialize, Serialize};

/// Record of raising operators applied on the way to a highest-weight word,
/// in application order. Replaying it reversed as lowering operators walks
/// back down.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RaisingPath {
    pub ops: Vec<u8>,
}

/// Sum of the letter weights.
pub fn weight(ty: &CrystalType, w: &[Letter]) -> Weight {
    let mut acc = Weight::zero(ty.weight_dim());
    for &x in w {
        acc = acc.add(ty.letter_weight(x));
    }
    acc
}

/// Reduced signature of `w` for label `i`: positions of the surviving minus
/// signs (raisable slots, left to right) and surviving plus signs (lowerable
/// slots). Every surviving minus precedes every surviving plus.
fn reduced_signature(ty: &CrystalType, w: &[Letter], i: u8) -> (Vec<usize>, Vec<usize>) {
    let mut minus: Vec<usize> = Vec::new();
    let mut plus: Vec<usize> = Vec::new();
    for (pos, &x) in w.iter().enumerate() {
        let eps = ty.letter_string(x, i, Dir::Raise);
        let phi = ty.letter_string(x, i, Dir::Lower);
        for _ in 0..eps {
            if plus.pop().is_none() {
                minus.push(pos);
            }
        }
        for _ in 0..phi {
            plus.push(pos);
        }
    }
    (minus, plus)
}

/// Apply `e_i` (`Raise`) or `f_i` (`Lower`) to a word. `None` is the absorbing
/// zero result. The output differs from `w` in exactly one position, where one
/// letter moves one step along its `i`-string.
pub fn word_op(
    ty: &CrystalType,
    w: &[Letter],
    i: u8,
    dir: Dir,
) -> Result<Option<Word>, CrystalError> {
    ty.check_word(w)?;
    ty.check_label(i)?;
    let (minus, plus) = reduced_signature(ty, w, i);
    let pos = match dir {
        Dir::Raise => minus.last().copied(),
        Dir::Lower => plus.first().copied(),
    };
    let Some(pos) = pos else { return Ok(None) };
    let moved = ty
        .letter_op(w[pos], i, dir)?
        .expect("surviving sign implies a base edge");
    let mut out = w.to_vec();
    out[pos] = moved;
    Ok(Some(out))
}

/// Literal recursive evaluation of the binary tensor rule on the left-nested
/// bracketing, with `epsilon`/`phi` computed by iterated application. Costly;
/// kept as the reference the scan is checked against.
pub fn word_op_recursive(
    ty: &CrystalType,
    w: &[Letter],
    i: u8,
    dir: Dir,
) -> Result<Option<Word>, CrystalError> {
    ty.check_word(w)?;
    ty.check_label(i)?;
    Ok(op_rec(ty, w, i, dir))
}

fn op_rec(ty: &CrystalType, w: &[Letter], i: u8, dir: Dir) -> Option<Word> {
    match w.len() {
        0 => None,
        1 => ty
            .letter_op(w[0], i, dir)
            .expect("validated")
            .map(|x| vec![x]),
        n => {
            let (u, v) = (&w[..n - 1], w[n - 1]);
            let phi_u = count_rec(ty, u, i, Dir::Lower);
            let eps_v = ty.letter_string(v, i, Dir::Raise);
            let act_left = match dir {
                Dir::Raise => phi_u >= eps_v,
                Dir::Lower => phi_u > eps_v,
            };
            if act_left {
                let mut out = op_rec(ty, u, i, dir)?;
                out.push(v);
                Some(out)
            } else {
                let moved = ty.letter_op(v, i, dir).expect("validated")?;
                let mut out = u.to_vec();
                out.push(moved);
                Some(out)
            }
        }
    }
}

fn count_rec(ty: &CrystalType, w: &[Letter], i: u8, dir: Dir) -> u32 {
    let mut n = 0;
    let mut cur = w.to_vec();
    while let Some(next) = op_rec(ty, &cur, i, dir) {
        n += 1;
        cur = next;
    }
    n
}

/// Largest `n` with `e_i^n.w` nonzero, by iterated application.
pub fn epsilon(ty: &CrystalType, w: &[Letter], i: u8) -> Result<u32, CrystalError> {
    iterate_count(ty, w, i, Dir::Raise)
}

/// Largest `n` with `f_i^n.w` nonzero, by iterated application.
pub fn phi(ty: &CrystalType, w: &[Letter], i: u8) -> Result<u32, CrystalError> {
    iterate_count(ty, w, i, Dir::Lower)
}

fn iterate_count(ty: &CrystalType, w: &[Letter], i: u8, dir: Dir) -> Result<u32, CrystalError> {
    let mut n = 0;
    let mut cur = w.to_vec();
    while let Some(next) = word_op(ty, &cur, i, dir)? {
        n += 1;
        cur = next;
    }
    Ok(n)
}

/// True when every raising operator vanishes on `w`.
pub fn is_highest_weight(ty: &CrystalType, w: &[Letter]) -> Result<bool, CrystalError> {
    ty.check_word(w)?;
    for i in ty.labels() {
        let (minus, _) = reduced_signature(ty, w, i);
        if !minus.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Raise `w` to the unique highest-weight word of its component, applying the
/// smallest applicable label first, and record the path.
pub fn to_highest_weight(
    ty: &CrystalType,
    w: &[Letter],
) -> Result<(Word, RaisingPath), CrystalError> {
    ty.check_word(w)?;
    let cap = w.len() * ty.diameter() + 1;
    let mut cur = w.to_vec();
    let mut path = RaisingPath::default();
    for _ in 0..cap {
        let mut raised = false;
        for i in ty.labels() {
            if let Some(next) = word_op(ty, &cur, i, Dir::Raise)? {
                cur = next;
                path.ops.push(i);
                raised = true;
                break;
            }
        }
        if !raised {
            return Ok((cur, path));
        }
    }
    Err(CrystalError::RaisingDiverged(cap))
}

/// Replay a recorded raising path, reversed, as lowering operators starting
/// from `from`. Returns `None` if any step vanishes (the components are not
/// isomorphic).
pub fn replay_lowering(
    ty: &CrystalType,
    from: &[Letter],
    path: &RaisingPath,
) -> Result<Option<Word>, CrystalError> {
    let mut cur = from.to_vec();
    for &i in path.ops.iter().rev() {
        match word_op(ty, &cur, i, Dir::Lower)? {
            Some(next) => cur = next,
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::Family;

    fn ty_a(rank: u8) -> CrystalType {
        CrystalType::new(Family::A, rank).unwrap()
    }

    fn w(ty: &CrystalType, s: &str) -> Word {
        ty.parse_word(s).unwrap()
    }

    #[test]
    fn lowering_acts_on_left_factor() {
        let t = ty_a(1);
        assert_eq!(
            word_op(&t, &w(&t, "11"), 1, Dir::Lower).unwrap(),
            Some(w(&t, "21"))
        );
    }

    #[test]
    fn raise_inverts_lower() {
        let t = ty_a(2);
        assert_eq!(
            word_op(&t, &w(&t, "21"), 1, Dir::Raise).unwrap(),
            Some(w(&t, "11"))
        );
    }

    #[test]
    fn highest_weight_word_kills_all_raises() {
        let t = ty_a(2);
        for i in [1, 2] {
            assert_eq!(word_op(&t, &w(&t, "121"), i, Dir::Raise).unwrap(), None);
        }
    }

    #[test]
    fn out_of_range_labels_are_rejected() {
        let t = ty_a(2);
        for i in [0u8, 3, 99] {
            assert!(matches!(
                word_op(&t, &w(&t, "12"), i, Dir::Lower),
                Err(crate::crystal::CrystalError::BadLabel(_))
            ));
        }
    }

    #[test]
    fn epsilon_phi_examples() {
        let t = ty_a(2);
        assert_eq!(epsilon(&t, &w(&t, "2"), 1).unwrap(), 1);
        assert_eq!(phi(&t, &w(&t, "2"), 1).unwrap(), 0);
        assert_eq!(epsilon(&t, &[], 1).unwrap(), 0);
        assert_eq!(phi(&t, &[], 1).unwrap(), 0);
        let t1 = ty_a(1);
        assert_eq!(phi(&t1, &w(&t1, "11"), 1).unwrap(), 2);
    }

    #[test]
    fn weight_examples() {
        let t = ty_a(2);
        assert_eq!(weight(&t, &w(&t, "132")), Weight(vec![1, 1, 1]));
        assert_eq!(weight(&t, &[]), Weight(vec![0, 0, 0]));
        let b = CrystalType::new(Family::B, 2).unwrap();
        assert_eq!(
            weight(&b, &b.parse_word("1 -1").unwrap()),
            Weight(vec![0, 0])
        );
    }

    #[test]
    fn to_highest_weight_examples() {
        let t = ty_a(2);
        let (h, p) = to_highest_weight(&t, &w(&t, "132")).unwrap();
        assert_eq!(h, w(&t, "121"));
        assert_eq!(p.ops, vec![2, 1]);

        let (h, p) = to_highest_weight(&t, &w(&t, "121")).unwrap();
        assert_eq!(h, w(&t, "121"));
        assert!(p.ops.is_empty());

        // isomorphic component, same highest weight, different vertex
        let (h, _) = to_highest_weight(&t, &w(&t, "312")).unwrap();
        assert_eq!(h, w(&t, "112"));
        assert_eq!(weight(&t, &h), Weight(vec![2, 1, 0]));
    }

    #[test]
    fn to_highest_weight_idempotent() {
        let t = ty_a(2);
        for word in all_words(&t, 4) {
            let (h, _) = to_highest_weight(&t, &word).unwrap();
            let (h2, p2) = to_highest_weight(&t, &h).unwrap();
            assert_eq!(h, h2);
            assert!(p2.ops.is_empty());
        }
    }

    fn all_words(ty: &CrystalType, maxlen: usize) -> Vec<Word> {
        let mut out: Vec<Word> = vec![Vec::new()];
        let mut layer: Vec<Word> = vec![Vec::new()];
        for _ in 0..maxlen {
            let mut next = Vec::new();
            for word in &layer {
                for &x in ty.letters() {
                    let mut e = word.clone();
                    e.push(x);
                    next.push(e);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    #[test]
    fn scan_matches_recursive_rule() {
        for ty in [
            ty_a(2),
            CrystalType::new(Family::B, 2).unwrap(),
            CrystalType::new(Family::G2, 2).unwrap(),
        ] {
            for word in all_words(&ty, 3) {
                for i in ty.labels() {
                    for dir in [Dir::Raise, Dir::Lower] {
                        assert_eq!(
                            word_op(&ty, &word, i, dir).unwrap(),
                            word_op_recursive(&ty, &word, i, dir).unwrap(),
                            "family {} word {:?} label {} {:?}",
                            ty.family(),
                            word,
                            i,
                            dir
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn one_position_changes() {
        let t = CrystalType::new(Family::C, 2).unwrap();
        for word in all_words(&t, 3) {
            for i in t.labels() {
                for dir in [Dir::Raise, Dir::Lower] {
                    if let Some(next) = word_op(&t, &word, i, dir).unwrap() {
                        let diff = word.iter().zip(&next).filter(|(a, b)| a != b).count();
                        assert_eq!(diff, 1);
                        assert_eq!(word.len(), next.len());
                    }
                }
            }
        }
    }

    #[test]
    fn mutual_inverse_pointwise() {
        let t = ty_a(2);
        for word in all_words(&t, 3) {
            for i in t.labels() {
                if let Some(up) = word_op(&t, &word, i, Dir::Raise).unwrap() {
                    assert_eq!(word_op(&t, &up, i, Dir::Lower).unwrap(), Some(word.clone()));
                }
                if let Some(down) = word_op(&t, &word, i, Dir::Lower).unwrap() {
                    assert_eq!(
                        word_op(&t, &down, i, Dir::Raise).unwrap(),
                        Some(word.clone())
                    );
                }
            }
        }
    }

    #[test]
    fn raising_shifts_weight_by_simple_root() {
        let t = CrystalType::new(Family::D, 2).unwrap();
        for word in all_words(&t, 3) {
            for i in t.labels() {
                if let Some(up) = word_op(&t, &word, i, Dir::Raise).unwrap() {
                    assert_eq!(weight(&t, &up), weight(&t, &word).add(t.simple_root(i)));
                }
            }
        }
    }

    // Any bracketing of the tensor product gives the same operator action;
    // evaluated with the epsilon/phi combination rule as a third route.
    #[test]
    fn tensor_rule_bracketing_independent() {
        #[derive(Clone)]
        enum Tree {
            Leaf(usize),
            Node(Box<Tree>, Box<Tree>),
        }

        fn brackets(lo: usize, hi: usize) -> Vec<Tree> {
            if hi - lo == 1 {
                return vec![Tree::Leaf(lo)];
            }
            let mut out = Vec::new();
            for mid in lo + 1..hi {
                for l in brackets(lo, mid) {
                    for r in brackets(mid, hi) {
                        out.push(Tree::Node(Box::new(l.clone()), Box::new(r)));
                    }
                }
            }
            out
        }

        fn eps_phi(ty: &CrystalType, w: &[Letter], tree: &Tree, i: u8) -> (i64, i64) {
            match tree {
                Tree::Leaf(k) => (
                    ty.letter_string(w[*k], i, Dir::Raise) as i64,
                    ty.letter_string(w[*k], i, Dir::Lower) as i64,
                ),
                Tree::Node(l, r) => {
                    let (el, pl) = eps_phi(ty, w, l, i);
                    let (er, pr) = eps_phi(ty, w, r, i);
                    (el + (er - pl).max(0), pr + (pl - er).max(0))
                }
            }
        }

        fn apply(ty: &CrystalType, w: &mut Word, tree: &Tree, i: u8, dir: Dir) -> bool {
            match tree {
                Tree::Leaf(k) => match ty.letter_op(w[*k], i, dir).unwrap() {
                    Some(x) => {
                        w[*k] = x;
                        true
                    }
                    None => false,
                },
                Tree::Node(l, r) => {
                    let (_, pl) = eps_phi(ty, w, l, i);
                    let (er, _) = eps_phi(ty, w, r, i);
                    let act_left = match dir {
                        Dir::Raise => pl >= er,
                        Dir::Lower => pl > er,
                    };
                    if act_left {
                        apply(ty, w, l, i, dir)
                    } else {
                        apply(ty, w, r, i, dir)
                    }
                }
            }
        }

        let t = CrystalType::new(Family::B, 2).unwrap();
        for word in all_words(&t, 4) {
            if word.is_empty() {
                continue;
            }
            for i in t.labels() {
                for dir in [Dir::Raise, Dir::Lower] {
                    let expected = word_op(&t, &word, i, dir).unwrap();
                    for tree in brackets(0, word.len()) {
                        let mut scratch = word.clone();
                        let ok = apply(&t, &mut scratch, &tree, i, dir);
                        let got = if ok { Some(scratch) } else { None };
                        assert_eq!(got, expected);
                    }
                }
            }
        }
    }

    mod prop {
        use super::*;
        use proptest::prelude::*;

        fn arb_type() -> impl Strategy<Value = CrystalType> {
            prop_oneof![
                (1u8..=4).prop_map(|r| CrystalType::new(Family::A, r).unwrap()),
                (1u8..=3).prop_map(|r| CrystalType::new(Family::B, r).unwrap()),
                (1u8..=3).prop_map(|r| CrystalType::new(Family::C, r).unwrap()),
                (2u8..=3).prop_map(|r| CrystalType::new(Family::D, r).unwrap()),
                Just(CrystalType::new(Family::G2, 2).unwrap()),
            ]
        }

        fn arb_word(maxlen: usize) -> impl Strategy<Value = (CrystalType, Word)> {
            arb_type().prop_flat_map(move |ty| {
                let letters = ty.letters().to_vec();
                proptest::collection::vec(0..letters.len(), 0..=maxlen).prop_map(move |idx| {
                    (ty.clone(), idx.into_iter().map(|k| letters[k]).collect())
                })
            })
        }

        proptest! {
            #[test]
            fn scan_agrees_with_recursive_rule(
                (ty, w) in arb_word(6),
                pick in 0u8..8,
                raise in proptest::bool::ANY,
            ) {
                let i = pick % ty.rank() + 1;
                let dir = if raise { Dir::Raise } else { Dir::Lower };
                prop_assert_eq!(
                    word_op(&ty, &w, i, dir).unwrap(),
                    word_op_recursive(&ty, &w, i, dir).unwrap()
                );
            }

            #[test]
            fn weight_is_additive_under_splits(
                (ty, w) in arb_word(8),
                cut in 0usize..=8,
            ) {
                let cut = cut.min(w.len());
                let (u, v) = w.split_at(cut);
                prop_assert_eq!(weight(&ty, &w), weight(&ty, u).add(&weight(&ty, v)));
            }

            #[test]
            fn raising_inverts_lowering(
                (ty, w) in arb_word(8),
                pick in 0u8..8,
            ) {
                let i = pick % ty.rank() + 1;
                if let Some(down) = word_op(&ty, &w, i, Dir::Lower).unwrap() {
                    prop_assert_eq!(word_op(&ty, &down, i, Dir::Raise).unwrap(), Some(w));
                }
            }

            #[test]
            fn raising_terminates_at_a_fixed_point(
                (ty, w) in arb_word(8),
            ) {
                let (hw, path) = to_highest_weight(&ty, &w).unwrap();
                prop_assert!(super::super::is_highest_weight(&ty, &hw).unwrap());
                prop_assert_eq!(replay_lowering(&ty, &hw, &path).unwrap(), Some(w));
            }
        }
    }
}
