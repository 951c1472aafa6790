//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion, all checks exact.

use std::collections::BTreeSet;
use std::time::Instant;

use stringcone::cluster::{opt_sequence, potential, potential_via_separation, principal_tracking, Seed};
use stringcone::cone::{box_points, cone_points, psi, psi_compat_check, CaMatrix, StringSystem};
use stringcone::headline::{compare_printed, headline_report, D4_CORRECTED, D4_PRINTED};
use stringcone::lie::{CartanDatum, Move, Word};
use stringcone::poly::LaurentPolynomial;
use stringcone::polyhedral::{brute_force_redundancy, classify_redundancy, random_system, InequalitySystem, Status};
use stringcone::scan::{scan_conjectures, ScanOptions, WordSource};
use stringcone::special::{
    nice_cone_report, nice_machinery, simply_braided, trail_forms, trail_forms_subword, tubes_potential,
    SubwordVariant, TrailConvention, DEFAULT_WEYL_CAP,
};

fn cartan(t: &str) -> CartanDatum {
    t.parse().unwrap()
}

fn word(letters: &[usize]) -> Word {
    Word::from_one_based(letters).unwrap()
}

fn verdict(n: &str, what: &str, ok: bool, start: Instant, detail: &str) -> bool {
    println!(
        "[{}] criterion {n}: {what} ({detail}; {:.2}s)",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    ok
}

fn headline(n: &str, w: &[usize]) -> bool {
    let start = Instant::now();
    let c = cartan("D4");
    let i = word(w);
    let rep = headline_report(&c, &i, 1).unwrap();
    let mut ok = true;
    for (what, pass) in rep.checks() {
        println!("    [{}] {what}", if pass { "PASS" } else { "FAIL" });
        ok &= pass;
    }
    let cmp = compare_printed(&c, &i).unwrap();
    println!(
        "    printed polynomial: {} terms match; only computed {:?}; only printed {:?}",
        cmp.matched, cmp.only_computed, cmp.only_printed
    );
    verdict(
        n,
        &format!("D4 letter-2 potential and cone on {i}"),
        ok,
        start,
        &format!("{} monomials, {} facets", rep.monomials, rep.facets),
    )
}

#[test]
fn criterion_01_d4_headline() {
    assert!(headline("1", &D4_PRINTED));
}

#[test]
fn criterion_01b_d4_headline_on_cube_of_2134() {
    assert!(headline("1b", &D4_CORRECTED));
}

#[test]
fn criterion_02_d4_single_monomials() {
    let start = Instant::now();
    let c = cartan("D4");
    let i = word(&D4_PRINTED);
    let mut ok = true;
    for l in [2, 3] {
        let p = potential(&c, &i, l).unwrap();
        let f = i.last_occurrence(l).unwrap();
        let single = p == LaurentPolynomial::var(i.len(), p.chart(), f, -1);
        println!("    [{}] W_{} = {p}", if single { "PASS" } else { "FAIL" }, l + 1);
        ok &= single;
    }
    let w1 = potential(&c, &i, 0).unwrap();
    println!("    [INFO] W_1 = {w1} ({} monomials; claimed a single inverse frozen variable)", w1.num_terms());
    assert!(verdict(
        "2",
        "letters 3 and 4 give single inverse frozen variables on the printed word",
        ok,
        start,
        &format!("W_1 has {} terms", w1.num_terms())
    ));
}

#[test]
fn criterion_03_a2_closed_forms() {
    let start = Instant::now();
    let c = cartan("A2");
    let sys = StringSystem::new(&c, &word(&[1, 2, 1])).unwrap();
    let s1 = sys.letter(0).varsigma.to_string();
    let s2 = sys.letter(1).varsigma.to_string();
    let rep = classify_redundancy(&InequalitySystem::from_string_system(&sys, None).unwrap()).unwrap();
    let forms: BTreeSet<Vec<i64>> = rep.entries.iter().map(|e| e.inequality.form.clone()).collect();
    let expected: BTreeSet<Vec<i64>> = [vec![1, 0, 0], vec![0, 1, -1], vec![0, 0, 1]].into();
    let ok = s1 == "x3" && s2 == "x1 + x2*x3^-1" && forms == expected && rep.facet_count() == 3 && rep.is_irredundant();
    assert!(verdict(
        "3",
        "A2 closed forms and string cone",
        ok,
        start,
        &format!("varsigma_1 = {s1}, varsigma_2 = {s2}, {} facets", rep.facet_count())
    ));
}

#[test]
fn criterion_04_type_a_irredundant() {
    let start = Instant::now();
    let c = cartan("A3");
    let mut pairs = 0;
    let mut bad = Vec::new();
    for i in c.all_longest_words() {
        let sys = StringSystem::new(&c, &i).unwrap();
        let whole = classify_redundancy(&InequalitySystem::from_string_system(&sys, None).unwrap()).unwrap();
        if !whole.is_irredundant() {
            bad.push(format!("{i} whole system"));
        }
        for ls in &sys.letters {
            pairs += 1;
            let own =
                classify_redundancy(&InequalitySystem::from_polynomial(ls.letter, &ls.varsigma).unwrap()).unwrap();
            if !ls.varsigma.is_multiplicity_free() || !own.is_irredundant() {
                bad.push(format!("{i} letter {}", ls.letter + 1));
            }
        }
    }
    let ok = pairs == 48 && bad.is_empty();
    assert!(verdict(
        "4",
        "A3 string systems are multiplicity-free and irredundant",
        ok,
        start,
        &format!("{pairs} pairs, failures {bad:?}")
    ));
}

#[test]
fn criterion_05_minuscule_oracles() {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for (t, letters) in [("A3", vec![0, 1, 2]), ("D4", vec![0, 2, 3])] {
        let c = cartan(t);
        for i in c.all_longest_words() {
            let sys = StringSystem::new(&c, &i).unwrap();
            for &l in &letters {
                checked += 1;
                let trop: BTreeSet<Vec<i64>> = sys.letter(l).tropical.vectors().into_iter().collect();
                let sub = trail_forms_subword(&c, &i, l, SubwordVariant::Prefix).unwrap();
                let trails = trail_forms(&c, &i, l, TrailConvention::Dual).unwrap();
                if trop != sub || trop != trails {
                    bad.push(format!("{t} {i} letter {}", l + 1));
                }
            }
        }
    }
    assert!(verdict(
        "5",
        "tropical forms equal subword and trail forms for minuscule letters",
        bad.is_empty(),
        start,
        &format!("{checked} pairs, failures {bad:?}")
    ));
}

#[test]
fn criterion_06_structural_invariants() {
    let start = Instant::now();
    let mut pairs = 0;
    let mut failures: Vec<String> = Vec::new();
    for (t, step) in [("A3", 1), ("D4", 97)] {
        let c = cartan(t);
        for i in c.all_longest_words().step_by(step) {
            let det = CaMatrix::from_word(&c, &i).unwrap().determinant();
            if det != 1.into() && det != (-1).into() {
                failures.push(format!("{t} {i}: determinant {det}"));
            }
            let seed = Seed::from_word(&c, &i).unwrap();
            for k in (0..seed.len()).filter(|&k| !seed.is_frozen(k)) {
                if !seed.mutate(k).unwrap().mutate(k).unwrap().same_quiver(&seed) {
                    failures.push(format!("{t} {i}: mutation at {} not involutive", k + 1));
                }
            }
            for (j, mv) in c.neighbors(&i) {
                if let Move::Braid(k) = mv {
                    let got = seed.mutate(k - 1).unwrap().swap(k, k + 1);
                    if !got.same_quiver(&Seed::from_word(&c, &j).unwrap()) {
                        failures.push(format!("{t} {i}: seed mismatch across {mv}"));
                    }
                }
            }
            let sys = StringSystem::new(&c, &i).unwrap();
            for l in 0..c.rank() {
                pairs += 1;
                let w = potential(&c, &i, l).unwrap();
                let f = i.last_occurrence(l).unwrap();
                if !w.all_exponents_nonpositive() {
                    failures.push(format!("{t} {i} {}: positive exponent", l + 1));
                }
                if !w.divisible_by_inverse_var(f) {
                    failures.push(format!("{t} {i} {}: no common frozen factor", l + 1));
                }
                if !sys.letter(l).varsigma.has_nonnegative_integer_coeffs() {
                    failures.push(format!("{t} {i} {}: coefficients", l + 1));
                }
                let seq = opt_sequence(&c, &i, l).unwrap();
                let d = principal_tracking(&c, &i, &seq.steps).unwrap();
                if !d.sign_coherent() || !d.constant_terms_one() {
                    failures.push(format!("{t} {i} {}: c-vectors or F-polynomials", l + 1));
                }
                if potential_via_separation(&c, &i, l).unwrap() != w {
                    failures.push(format!("{t} {i} {}: separation formula", l + 1));
                }
            }
        }
    }
    let ok = pairs >= 50 && failures.is_empty();
    assert!(verdict(
        "6",
        "structural invariants on a fixed sample",
        ok,
        start,
        &format!("{pairs} pairs, failures {failures:?}")
    ));
}

#[test]
fn criterion_07_psi_compatibility() {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for t in ["A2", "A3"] {
        let c = cartan(t);
        let words: Vec<Word> = c.all_longest_words().collect();
        let systems: Vec<StringSystem> = words.iter().map(|w| StringSystem::new(&c, w).unwrap()).collect();
        let letters: Vec<usize> = (0..c.rank()).collect();
        let points: Vec<Vec<Vec<i64>>> = systems.iter().map(|s| cone_points(s, 4, 0, 0)).collect();
        assert_eq!(box_points(words[0].len(), 4, 0, 0).len(), 5usize.pow(words[0].len() as u32));
        for (a, i) in words.iter().enumerate() {
            for (b, j) in words.iter().enumerate() {
                let map = psi(&c, i, j).unwrap();
                let r = psi_compat_check(&systems[a], &systems[b], &map, &letters, &points[a]).unwrap();
                checked += r.checked;
                let images: BTreeSet<Vec<i64>> = points[a].iter().map(|p| map.apply(p).unwrap()).collect();
                if !r.ok() || images.len() != points[a].len() {
                    bad.push(format!("{t} {i} -> {j}"));
                }
            }
        }
    }
    assert!(verdict(
        "7",
        "Psi preserves tropical potentials and is a bijection on cone points",
        bad.is_empty(),
        start,
        &format!("{checked} identities, failures {bad:?}")
    ));
}

fn lp_agrees(sys: &InequalitySystem) -> bool {
    let lp = classify_redundancy(sys).unwrap();
    let dd = brute_force_redundancy(sys).unwrap();
    lp.entries.iter().zip(&dd.facet).all(|(e, &f)| (e.status == Status::Facet) == f)
}

#[test]
fn criterion_08_lp_matches_double_description() {
    let start = Instant::now();
    let mut systems = 0;
    let mut bad = Vec::new();
    for t in ["A2", "A3", "D4"] {
        let c = cartan(t);
        let step = if t == "D4" { 23 } else { 1 };
        let mut words: Vec<Word> = c.all_longest_words().step_by(step).collect();
        if t == "D4" {
            words.push(word(&D4_PRINTED));
            words.push(word(&D4_CORRECTED));
        }
        for i in words {
            let sys = StringSystem::new(&c, &i).unwrap();
            let mut variants = vec![InequalitySystem::from_string_system(&sys, None).unwrap()];
            for ls in &sys.letters {
                variants.push(InequalitySystem::from_string_system(&sys, Some(&[ls.letter])).unwrap());
            }
            for (k, v) in variants.iter().enumerate() {
                // Single-letter systems of rank < N are not pointed; only the full system is required there.
                if k > 0 && brute_force_redundancy(v).is_err() {
                    continue;
                }
                systems += 1;
                if !lp_agrees(v) {
                    bad.push(format!("{t} {i} variant {k}"));
                }
            }
        }
    }
    for seed in 0..20 {
        systems += 1;
        if !lp_agrees(&random_system(5, 12, seed)) {
            bad.push(format!("random seed {seed}"));
        }
    }
    assert!(verdict(
        "8",
        "LP redundancy agrees with double description",
        bad.is_empty(),
        start,
        &format!("{systems} systems, failures {bad:?}")
    ));
}

#[test]
fn criterion_09_closed_forms() {
    let start = Instant::now();
    let mut witnesses = 0;
    let mut bad = Vec::new();
    for t in ["A3", "D4"] {
        let c = cartan(t);
        for i in c.all_longest_words() {
            for l in 0..c.rank() {
                if let Some(w) = simply_braided(&c, &i, l).unwrap() {
                    witnesses += 1;
                    if tubes_potential(&c, &i, &w).unwrap() != potential(&c, &i, l).unwrap() {
                        bad.push(format!("{t} {i} letter {}", l + 1));
                    }
                }
            }
        }
    }
    let mut nice = 0;
    for t in ["A2", "A3", "A4"] {
        let c = cartan(t);
        for w in nice_machinery(&c, DEFAULT_WEYL_CAP).unwrap().nice_words {
            nice += 1;
            let r = nice_cone_report(&c, &w).unwrap();
            let all = |v: &[bool]| v.iter().all(|&b| b);
            if !all(&r.simply_braided) || !all(&r.multiplicity_free) || !all(&r.irredundant) {
                bad.push(format!("nice word {t} {w}"));
            }
        }
    }
    let ok = witnesses > 0 && nice > 0 && bad.is_empty();
    assert!(verdict(
        "9",
        "tube formula and nice words",
        ok,
        start,
        &format!("{witnesses} witnesses, {nice} nice words, failures {bad:?}")
    ));
}

#[test]
fn criterion_10_scan_integrity() {
    let start = Instant::now();
    let c = cartan("D4");
    let (s, records) =
        scan_conjectures(&c, &WordSource::All { cap: None, seed: 0 }, &ScanOptions::default(), None).unwrap();
    let consistent = records.iter().all(|r| {
        r.nomulti_ok == (!r.multiplicity_free || r.redundant.is_empty())
            && r.mult2_ok == r.redundant_coeffs.iter().all(|q| q != "1")
            && r.conjmu2_ok == (r.multiplicity_free == r.redundant.is_empty())
    });
    println!("    [INFO] redundant with coefficient 1: {:?}", s.mult2_counterexamples);
    println!("    [INFO] irredundant but not multiplicity-free: {} pairs", s.conjmu2_counterexamples.len());
    let ok = s.records == 2316 * 4 && consistent && s.hard_ok();
    let detail = format!(
        "{} records, {} multiplicity-free, {} irredundant, {} nomulti violations, {} cross-letter, {} coefficient-1 redundancies",
        s.records,
        s.multiplicity_free,
        s.irredundant,
        s.nomulti_violations.len(),
        s.cross_letter_violations.len(),
        s.mult2_counterexamples.len()
    );
    assert!(verdict("10", "conjecture scan over all D4 words", ok, start, &detail));
}
