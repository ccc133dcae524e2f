//! Acceptance suite. Each test checks one gate criterion at its stated
//! tolerance (all exact) and prints a single pass/fail line.

use placto_core::crystal::{
    check_axioms, is_highest_weight, word_op, words_up_to, CrystalType, Dir, Family,
};
use placto_core::crystal_rewriting::{
    build_column_presentation, check_confluence, cohere_direct, cohere_via_hw, gen_words_up_to,
    hw_critical_branchings, kashiwara_on_branching, kashiwara_on_cell, kashiwara_on_path,
    CrystalPresentation,
};
use placto_core::plactic::{knuth_oracle_equiv, p_tableau, plactic_equiv, read_columns};
use placto_core::rewriting::{
    complete_branching, critical_branchings, normalize, steps_at, Branching, CompletionOutcome,
    GenWord, Strategy,
};
use std::time::{Duration, Instant};

const STEP_CAP: usize = 10_000;

fn gate(number: u32, name: &str, budget: Duration, run: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    let verdict = if outcome.is_ok() && elapsed <= budget {
        "PASS"
    } else {
        "FAIL"
    };
    println!("acceptance {number:02} {name}: {verdict} ({elapsed:.2?})");
    if let Err(msg) = outcome {
        panic!("criterion {number} failed: {msg}");
    }
    assert!(
        elapsed <= budget,
        "criterion {number} exceeded its {budget:?} budget: {elapsed:?}"
    );
}

fn col_a(letters: u8) -> CrystalPresentation {
    let ty = CrystalType::new(Family::A, letters - 1).expect("valid rank");
    build_column_presentation(&ty).expect("column presentation builds")
}

#[test]
fn acceptance_01_crystal_axioms() {
    gate(1, "crystal axioms", Duration::from_secs(30), || {
        for (family, rank, maxlen) in [
            (Family::A, 3, 5),
            (Family::B, 2, 4),
            (Family::C, 2, 4),
            (Family::D, 4, 3),
            (Family::G2, 2, 4),
        ] {
            let ty = CrystalType::new(family, rank).map_err(|e| e.to_string())?;
            let words = words_up_to(&ty, maxlen);
            let violations = check_axioms(&ty, &words).map_err(|e| e.to_string())?;
            if !violations.is_empty() {
                return Err(format!(
                    "{family}_{rank}: {} violations, first: {}",
                    violations.len(),
                    violations[0]
                ));
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_02_oracle_equivalence() {
    gate(2, "oracle equivalence", Duration::from_secs(60), || {
        let ty = CrystalType::new(Family::A, 2).unwrap();
        let words = words_up_to(&ty, 5);
        let mut pairs = 0u64;
        for w1 in &words {
            for w2 in &words {
                let crystal = plactic_equiv(&ty, w1, w2).map_err(|e| e.to_string())?;
                let oracle = knuth_oracle_equiv(w1, w2, 5).map_err(|e| e.to_string())?;
                if crystal != oracle {
                    return Err(format!(
                        "disagreement on {w1:?} vs {w2:?}: crystal {crystal}, oracle {oracle}"
                    ));
                }
                pairs += 1;
            }
        }
        assert_eq!(pairs, (words.len() * words.len()) as u64);
        Ok(())
    });
}

#[test]
fn acceptance_03_insertion_is_a_crystal_morphism() {
    gate(3, "insertion morphism", Duration::from_secs(60), || {
        let ty = CrystalType::new(Family::A, 2).unwrap();
        for w in words_up_to(&ty, 5) {
            let reading = read_columns(&p_tableau(&ty, &w).map_err(|e| e.to_string())?);
            for i in ty.labels() {
                for dir in [Dir::Raise, Dir::Lower] {
                    let lhs = word_op(&ty, &w, i, dir)
                        .map_err(|e| e.to_string())?
                        .map(|v| read_columns(&p_tableau(&ty, &v).unwrap()));
                    let rhs = word_op(&ty, &reading, i, dir).map_err(|e| e.to_string())?;
                    if lhs != rhs {
                        return Err(format!("not a morphism at {w:?}, label {i}, {dir:?}"));
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_04_column_presentation_validity() {
    gate(
        4,
        "column presentation validity",
        Duration::from_secs(120),
        || {
            for letters in [2u8, 3, 4] {
                let cp = col_a(letters);
                if !placto_core::rewriting::is_reduced(cp.presentation()) {
                    return Err(format!("{letters} letters: not reduced"));
                }
                if !cp.certificate.is_valid() {
                    return Err(format!(
                        "{letters} letters: certificate violation {}",
                        cp.certificate.violations[0]
                    ));
                }
                // termination over every 3-generator word plus local confluence
                let report = check_confluence(&cp, false, Strategy::Leftmost, STEP_CAP, 3)
                    .map_err(|e| e.to_string())?;
                if !report.is_clean() {
                    return Err(format!("{letters} letters: {report:?}"));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_05_hexagon_bound() {
    gate(5, "hexagon bound", Duration::from_secs(120), || {
        for letters in [2u8, 3, 4] {
            let cp = col_a(letters);
            for cell in
                cohere_direct(&cp, Strategy::Leftmost, STEP_CAP).map_err(|e| e.to_string())?
            {
                let (l, r) = cell.side_lengths();
                if l > 3 || r > 3 {
                    return Err(format!(
                        "{letters} letters: cell at {} has sides {l}/{r}",
                        cp.presentation()
                            .display_word(&cell.branching.source(cp.presentation()))
                    ));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_06_highest_weight_reduction() {
    gate(
        6,
        "highest-weight reduction",
        Duration::from_secs(300),
        || {
            for letters in [2u8, 3, 4] {
                let cp = col_a(letters);
                let pres = cp.presentation();
                let direct =
                    cohere_direct(&cp, Strategy::Leftmost, STEP_CAP).map_err(|e| e.to_string())?;
                let traced =
                    cohere_via_hw(&cp, Strategy::Leftmost, STEP_CAP).map_err(|e| e.to_string())?;
                if direct.len() != traced.len() {
                    return Err(format!(
                        "{letters} letters: {} direct cells vs {} reduced",
                        direct.len(),
                        traced.len()
                    ));
                }
                for (d, t) in direct.iter().zip(&traced) {
                    if d.branching.key(pres) != t.cell.branching.key(pres) {
                        return Err(format!("{letters} letters: alignment keys differ"));
                    }
                    if d != &t.cell {
                        return Err(format!(
                            "{letters} letters: cells differ at {}",
                            pres.display_word(&d.branching.source(pres))
                        ));
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_07_reduced_newman_cpl() {
    gate(7, "reduced Newman/CPL", Duration::from_secs(120), || {
        // verdicts agree on the convergent instances
        for letters in [2u8, 3] {
            let cp = col_a(letters);
            let full = check_confluence(&cp, false, Strategy::Leftmost, STEP_CAP, 3)
                .map_err(|e| e.to_string())?;
            let hw = check_confluence(&cp, true, Strategy::Leftmost, STEP_CAP, 3)
                .map_err(|e| e.to_string())?;
            if !(full.is_clean() && hw.is_clean()) {
                return Err(format!("{letters} letters: expected both checks clean"));
            }
        }
        // fault injection: deleting any rule orbit preserves the certificate
        // and both checks must agree; at least one deletion breaks confluence
        let cp = col_a(3);
        let orbits = cp.rule_orbits().map_err(|e| e.to_string())?;
        let all: Vec<usize> = (0..cp.presentation().rules().len()).collect();
        let mut saw_non_confluent = false;
        for orbit in &orbits {
            let keep: Vec<usize> = all
                .iter()
                .copied()
                .filter(|id| !orbit.contains(id))
                .collect();
            let broken = cp.restrict_rules(&keep).map_err(|e| e.to_string())?;
            if !broken.certificate.is_valid() {
                return Err("orbit deletion must preserve closure".into());
            }
            let full = check_confluence(&broken, false, Strategy::Leftmost, STEP_CAP, 3)
                .map_err(|e| e.to_string())?;
            let hw = check_confluence(&broken, true, Strategy::Leftmost, STEP_CAP, 3)
                .map_err(|e| e.to_string())?;
            if full.is_clean() != hw.is_clean() {
                return Err("full and highest-weight verdicts disagree".into());
            }
            saw_non_confluent |= !full.is_clean();
        }
        if !saw_non_confluent {
            return Err("no orbit deletion produced a non-confluent instance".into());
        }
        Ok(())
    });
}

#[test]
fn acceptance_08_transport_properties() {
    gate(8, "Kashiwara transport", Duration::from_secs(240), || {
        for letters in [2u8, 3] {
            let cp = col_a(letters);
            transport_properties(&cp)?;
        }
        // the same transfer properties on a non-confluent crystal instance
        let cp = col_a(3);
        let merge_orbit = {
            let orbits = cp.rule_orbits().map_err(|e| e.to_string())?;
            let rule = cp
                .presentation()
                .rules()
                .iter()
                .find(|r| r.rhs.len() == 1)
                .expect("a merge rule exists")
                .id;
            orbits.into_iter().find(|o| o.contains(&rule)).unwrap()
        };
        let keep: Vec<usize> = (0..cp.presentation().rules().len())
            .filter(|id| !merge_orbit.contains(id))
            .collect();
        let broken = cp.restrict_rules(&keep).map_err(|e| e.to_string())?;
        transport_properties(&broken)?;
        Ok(())
    });
}

fn transport_properties(cp: &CrystalPresentation) -> Result<(), String> {
    let pres = cp.presentation();
    let ops: Vec<(u8, Dir)> = cp
        .base()
        .labels()
        .flat_map(|i| [(i, Dir::Raise), (i, Dir::Lower)])
        .collect();
    let words = gen_words_up_to(pres.generators().len(), 3);
    for w in &words {
        // paths: length preservation and pointwise commutation
        let (_, path) =
            normalize(pres, w, Strategy::Leftmost, STEP_CAP).map_err(|e| e.to_string())?;
        for &(i, dir) in &ops {
            if let Some(moved) = kashiwara_on_path(cp, &path, i, dir).map_err(|e| e.to_string())? {
                if moved.len() != path.len() {
                    return Err(format!("length not preserved at {w:?}"));
                }
                for n in 0..=path.len() {
                    if cp
                        .kashiwara_on_word(&path.word_at(pres, n), i, dir)
                        .map_err(|e| e.to_string())?
                        != Some(moved.word_at(pres, n))
                    {
                        return Err(format!("pointwise commutation fails at {w:?}, entry {n}"));
                    }
                }
            }
        }
        // branchings: tag preservation and confluence transfer
        let steps = steps_at(pres, w);
        for a in &steps {
            for b in &steps {
                if (a.position(), a.rule) > (b.position(), b.rule) {
                    continue;
                }
                let br = Branching::new(pres, a.clone(), b.clone()).map_err(|e| e.to_string())?;
                let joinable = is_joinable(pres, &br)?;
                for &(i, dir) in &ops {
                    let Some(moved) =
                        kashiwara_on_branching(cp, &br, i, dir).map_err(|e| e.to_string())?
                    else {
                        continue;
                    };
                    if moved.kind(pres) != br.kind(pres) {
                        return Err(format!("tag not preserved at {w:?}"));
                    }
                    if is_joinable(pres, &moved)? != joinable {
                        return Err(format!("confluence transfer fails at {w:?}"));
                    }
                    // completions are transports of one another
                    if joinable {
                        let cell = complete_branching(pres, &br, Strategy::Leftmost, STEP_CAP)
                            .map_err(|e| e.to_string())?
                            .cell()
                            .unwrap();
                        let moved_cell =
                            complete_branching(pres, &moved, Strategy::Leftmost, STEP_CAP)
                                .map_err(|e| e.to_string())?
                                .cell()
                                .unwrap();
                        let transported = kashiwara_on_cell(cp, &cell, i, dir)
                            .map_err(|e| e.to_string())?
                            .ok_or("cell transport vanished")?;
                        if transported != moved_cell {
                            return Err(format!("completion transport fails at {w:?}"));
                        }
                    }
                }
            }
        }
    }
    // criticals transport to criticals
    let crits = critical_branchings(pres);
    let keys: std::collections::BTreeSet<_> = crits.iter().map(|b| b.key(pres)).collect();
    for b in &crits {
        for &(i, dir) in &ops {
            if let Some(moved) = kashiwara_on_branching(cp, b, i, dir).map_err(|e| e.to_string())? {
                if !keys.contains(&moved.key(pres)) {
                    return Err("critical did not transport to a critical".into());
                }
            }
        }
    }
    Ok(())
}

fn is_joinable(pres: &placto_core::Presentation2, b: &Branching) -> Result<bool, String> {
    match complete_branching(pres, b, Strategy::Leftmost, STEP_CAP).map_err(|e| e.to_string())? {
        CompletionOutcome::Cell(_) => Ok(true),
        CompletionOutcome::NotJoinable { .. } => Ok(false),
    }
}

#[test]
fn acceptance_09_highest_weight_submonoid() {
    gate(
        9,
        "highest-weight submonoid",
        Duration::from_secs(120),
        || {
            let cp = col_a(4);
            let pres = cp.presentation();
            // the generators c_k with reading 12..k
            let ty = cp.base().clone();
            let c: Vec<u32> = (1..=4)
                .map(|k| {
                    let col: Vec<_> = (1..=k).map(placto_core::Letter).collect();
                    cp.generator_of(&col).expect("c_k generator")
                })
                .collect();
            // rules over the c-subalphabet are exactly the adjacent swaps
            let mut swaps = Vec::new();
            for r in pres.rules() {
                if r.lhs.iter().all(|g| c.contains(g)) {
                    swaps.push((r.lhs.clone(), r.rhs.clone()));
                }
            }
            let mut expected: Vec<(GenWord, GenWord)> = Vec::new();
            for i in 0..4 {
                for j in 0..4 {
                    if i > j {
                        expected.push((vec![c[i], c[j]], vec![c[j], c[i]]));
                    }
                }
            }
            swaps.sort();
            expected.sort();
            if swaps != expected {
                return Err(format!("swap family mismatch: {swaps:?}"));
            }
            // normal forms of highest-weight words of <= 4 columns are exactly the
            // weakly index-sorted c-products
            let mut hw_nfs = std::collections::BTreeSet::new();
            for w in gen_words_up_to(pres.generators().len(), 4) {
                if !is_highest_weight(&ty, &cp.flatten(&w)).map_err(|e| e.to_string())? {
                    continue;
                }
                let (nf, _) =
                    normalize(pres, &w, Strategy::Leftmost, STEP_CAP).map_err(|e| e.to_string())?;
                let sorted_c_product = nf.iter().all(|g| c.contains(g))
                    && nf.windows(2).all(|p| {
                        let ki = c.iter().position(|&g| g == p[0]).unwrap();
                        let kj = c.iter().position(|&g| g == p[1]).unwrap();
                        ki <= kj
                    });
                if !sorted_c_product {
                    return Err(format!(
                        "highest-weight word {} normalizes to {}, not a sorted c-product",
                        pres.display_word(&w),
                        pres.display_word(&nf)
                    ));
                }
                hw_nfs.insert(nf);
            }
            // conversely, every weakly sorted c-product of <= 4 columns shows up
            let mut expected_nfs = std::collections::BTreeSet::new();
            expected_nfs.insert(Vec::new());
            for len in 1..=4usize {
                fn rec(
                    c: &[u32],
                    len: usize,
                    start: usize,
                    cur: &mut GenWord,
                    out: &mut std::collections::BTreeSet<GenWord>,
                ) {
                    if cur.len() == len {
                        out.insert(cur.clone());
                        return;
                    }
                    for k in start..c.len() {
                        cur.push(c[k]);
                        rec(c, len, k, cur, out);
                        cur.pop();
                    }
                }
                rec(&c, len, 0, &mut Vec::new(), &mut expected_nfs);
            }
            if hw_nfs != expected_nfs {
                return Err(format!(
                    "normal-form sets differ: got {}, expected {}",
                    hw_nfs.len(),
                    expected_nfs.len()
                ));
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_10_determinism() {
    gate(10, "determinism", Duration::from_secs(120), || {
        let cp = col_a(3);
        let render = |threads: usize| -> Result<String, String> {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| e.to_string())?;
            pool.install(|| {
                let cells =
                    cohere_direct(&cp, Strategy::Leftmost, STEP_CAP).map_err(|e| e.to_string())?;
                let json = placto_core::rewriting::cells_to_json(cp.presentation(), &cells, None);
                serde_json::to_string_pretty(&json).map_err(|e| e.to_string())
            })
        };
        let one = render(1)?;
        let four = render(4)?;
        let four_again = render(4)?;
        if one != four || four != four_again {
            return Err("outputs differ across thread counts".into());
        }
        Ok(())
    });
}

#[test]
fn acceptance_hw_criticals_are_the_hw_slice() {
    // supporting invariant for criteria 6-8: the highest-weight criticals are
    // exactly the criticals with highest-weight source
    let cp = col_a(3);
    let pres = cp.presentation();
    let hw = hw_critical_branchings(&cp).unwrap();
    for b in critical_branchings(pres) {
        let is_hw = cp.is_hw(&b.source(pres)).unwrap();
        assert_eq!(hw.contains(&b), is_hw);
    }
}
