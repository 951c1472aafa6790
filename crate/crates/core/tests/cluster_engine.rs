use stringcone::cluster::{
    opt_sequence, potential, potential_via_mutations, potential_via_separation, potential_via_target,
    principal_tracking, Seed, SeedConvention,
};
use stringcone::lie::{CartanDatum, Move, Word};
use stringcone::poly::LaurentPolynomial;

fn d4() -> CartanDatum {
    "D4".parse().unwrap()
}

fn braid_lemma_failures(c: &CartanDatum, conv: SeedConvention) -> (usize, usize) {
    let mut bad = 0;
    let mut total = 0;
    for i in c.all_longest_words() {
        let s = Seed::from_word_with(c, &i, conv).unwrap();
        for (j, mv) in c.neighbors(&i) {
            let expect = Seed::from_word_with(c, &j, conv).unwrap();
            let k = mv.position();
            let got = match mv {
                Move::Braid(_) => s.mutate(k - 1).unwrap().swap(k, k + 1),
                Move::Commute(_) => s.swap(k, k + 1),
            };
            total += 1;
            if !got.same_quiver(&expect) {
                bad += 1;
            }
        }
    }
    (bad, total)
}

#[test]
fn braid_lemma_holds_on_a3_and_d4() {
    for t in ["A3", "D4"] {
        let c: CartanDatum = t.parse().unwrap();
        let (bad, total) = braid_lemma_failures(&c, SeedConvention::default());
        assert_eq!(bad, 0, "{t}: {bad} of {total} edges");
        assert!(total > 0);
    }
}

#[test]
fn reversed_type_ii_convention_breaks_braid_lemma() {
    let c: CartanDatum = "A3".parse().unwrap();
    let conv = SeedConvention { reverse_type_ii: true, cartan_filter: true };
    let (bad, _) = braid_lemma_failures(&c, conv);
    assert!(bad > 0);
}

#[test]
fn mutation_is_involutive() {
    let c = d4();
    for i in c.all_longest_words().step_by(97) {
        let s = Seed::from_word(&c, &i).unwrap();
        for k in 0..s.len() {
            if !s.is_frozen(k) {
                assert!(s.mutate(k).unwrap().mutate(k).unwrap().same_quiver(&s));
            }
        }
    }
}

#[test]
fn potentials_have_expected_shape() {
    for t in ["A3", "D4"] {
        let c: CartanDatum = t.parse().unwrap();
        for i in c.all_longest_words().step_by(53) {
            for letter in 0..c.rank() {
                let p = potential(&c, &i, letter).unwrap();
                assert!(p.all_exponents_nonpositive(), "{t} {i} {letter}: {p}");
                assert!(p.has_nonnegative_integer_coeffs());
                let f = i.last_occurrence(letter).unwrap();
                assert!(p.divisible_by_inverse_var(f), "{t} {i} {letter}: {p}");
            }
        }
    }
}

#[test]
fn separation_formula_matches() {
    for t in ["A3", "D4"] {
        let c: CartanDatum = t.parse().unwrap();
        for i in c.all_longest_words().step_by(41) {
            for letter in 0..c.rank() {
                let seq = opt_sequence(&c, &i, letter).unwrap();
                let d = principal_tracking(&c, &i, &seq.steps).unwrap();
                assert!(d.sign_coherent());
                assert!(d.constant_terms_one());
                assert_eq!(potential_via_separation(&c, &i, letter).unwrap(), potential(&c, &i, letter).unwrap());
            }
        }
    }
}

#[test]
fn potential_is_path_independent() {
    let c = d4();
    let all: Vec<Word> = c.all_longest_words().collect();
    for word in ["2 1 4 2 3 2 4 2 1 2 3 4", "2 1 3 4 2 1 3 4 2 1 3 4"] {
        let i: Word = word.parse().unwrap();
        let reference = potential(&c, &i, 1).unwrap();
        let targets: Vec<&Word> = all.iter().filter(|w| w.last() == Some(1)).collect();
        for tgt in targets.iter().take(4).chain(targets.iter().rev().take(4)) {
            assert_eq!(potential_via_target(&c, &i, tgt).unwrap(), reference);
        }
    }
}

#[test]
fn explicit_mutation_sequence_reproduces_potential() {
    let c = d4();
    let i: Word = "2 1 3 4 2 1 3 4 2 1 3 4".parse().unwrap();
    let s = Seed::from_word(&c, &i).unwrap();
    let seq: Vec<usize> = [6, 3, 5, 4, 3, 1, 2, 7, 6, 8].iter().map(|k| k - 1).collect();
    let via = potential_via_mutations(&s, &seq, 8).unwrap();
    assert_eq!(via, potential(&c, &i, 1).unwrap());
    assert_eq!(via.num_terms(), 27);
}

#[test]
fn optimized_sets() {
    let c = d4();
    let printed = Seed::from_word(&c, &"2 1 4 2 3 2 4 2 1 2 3 4".parse().unwrap()).unwrap();
    assert_eq!(printed.optimized_frozen(), vec![10, 11]);
    let corrected = Seed::from_word(&c, &"2 1 3 4 2 1 3 4 2 1 3 4".parse().unwrap()).unwrap();
    assert_eq!(corrected.optimized_frozen(), vec![9, 10, 11]);
}

#[test]
fn printed_d4_word_potential_counts() {
    let c = d4();
    let i: Word = "2 1 4 2 3 2 4 2 1 2 3 4".parse().unwrap();
    let sizes: Vec<usize> = (0..4).map(|l| potential(&c, &i, l).unwrap().num_terms()).collect();
    assert_eq!(sizes, vec![2, 21, 1, 1]);
    let j: Word = "2 1 3 4 2 1 3 4 2 1 3 4".parse().unwrap();
    let sizes: Vec<usize> = (0..4).map(|l| potential(&c, &j, l).unwrap().num_terms()).collect();
    assert_eq!(sizes, vec![1, 27, 1, 1]);
    let w2: LaurentPolynomial = potential(&c, &j, 1).unwrap();
    let hist = w2.coefficient_histogram();
    assert_eq!(hist.len(), 2);
}
