use std::collections::BTreeSet;

use stringcone::cluster::potential;
use stringcone::cone::StringSystem;
use stringcone::lie::{CartanDatum, Word};
use stringcone::special::{
    enumerate_trails, nice_cone_report, nice_machinery, simply_braided, trail_forms, trail_forms_subword,
    tubes_potential, SubwordVariant, TrailConvention, DEFAULT_WEYL_CAP,
};

fn tropical_forms(sys: &StringSystem, letter: usize) -> BTreeSet<Vec<i64>> {
    sys.letter(letter).tropical.vectors().into_iter().collect()
}

#[test]
fn tubes_match_potential_where_witnessed() {
    for t in ["A3", "D4"] {
        let c: CartanDatum = t.parse().unwrap();
        let mut witnessed = 0;
        for i in c.all_longest_words().step_by(7) {
            for letter in 0..c.rank() {
                if let Some(w) = simply_braided(&c, &i, letter).unwrap() {
                    witnessed += 1;
                    assert_eq!(
                        tubes_potential(&c, &i, &w).unwrap(),
                        potential(&c, &i, letter).unwrap(),
                        "{t} {i} {letter}"
                    );
                    assert_eq!(w.middle_roots.len(), w.moves.braid_count());
                }
            }
        }
        assert!(witnessed > 0);
    }
}

#[test]
fn oracles_agree_with_tropicalization() {
    let a3: CartanDatum = "A3".parse().unwrap();
    for i in a3.all_longest_words() {
        let sys = StringSystem::new(&a3, &i).unwrap();
        for letter in 0..3 {
            let trop = tropical_forms(&sys, letter);
            assert_eq!(trail_forms_subword(&a3, &i, letter, SubwordVariant::Prefix).unwrap(), trop, "{i} {letter}");
            assert_eq!(trail_forms(&a3, &i, letter, TrailConvention::Dual).unwrap(), trop, "{i} {letter}");
        }
    }
    let d4: CartanDatum = "D4".parse().unwrap();
    for i in d4.all_longest_words().step_by(29) {
        let sys = StringSystem::new(&d4, &i).unwrap();
        for letter in [0, 2, 3] {
            let trop = tropical_forms(&sys, letter);
            assert_eq!(trail_forms_subword(&d4, &i, letter, SubwordVariant::Prefix).unwrap(), trop, "{i} {letter}");
            assert_eq!(trail_forms(&d4, &i, letter, TrailConvention::Dual).unwrap(), trop, "{i} {letter}");
        }
    }
}

#[test]
fn trails_are_weight_chains() {
    let c: CartanDatum = "A3".parse().unwrap();
    let i = c.longest_word();
    for t in enumerate_trails(&c, &i, 1, TrailConvention::Dual).unwrap() {
        assert_eq!(t.weights.len(), i.len() + 1);
        for (k, &ck) in t.c.iter().enumerate() {
            let l = i.letters()[k];
            let a = c.simple_root_weight(l);
            let expect: Vec<i64> = t.weights[k].iter().zip(&a).map(|(x, y)| x - i64::from(ck) * y).collect();
            assert_eq!(t.weights[k + 1], expect);
        }
    }
}

#[test]
fn nice_words_are_simply_braided_and_irredundant() {
    for t in ["A2", "A3", "A4"] {
        let c: CartanDatum = t.parse().unwrap();
        let data = nice_machinery(&c, DEFAULT_WEYL_CAP).unwrap();
        assert!(!data.nice_words.is_empty());
        for w in &data.nice_words {
            let r = nice_cone_report(&c, w).unwrap();
            assert!(r.simply_braided.iter().all(|&b| b), "{t} {w}");
            assert!(r.multiplicity_free.iter().all(|&b| b), "{t} {w}");
            assert!(r.irredundant.iter().all(|&b| b), "{t} {w}");
        }
    }
}

#[test]
fn literal_total_order_cone_differs() {
    let c: CartanDatum = "A2".parse().unwrap();
    let r = nice_cone_report(&c, &Word::from_one_based(&[1, 2, 1]).unwrap()).unwrap();
    assert_eq!(r.facets, 3);
    assert!(!r.total_order_cone_matches);
}
