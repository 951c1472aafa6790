//! Simply-braided and nice words, and the trail/subword oracles for minuscule letters.

use std::collections::{BTreeSet, HashSet};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cone::StringSystem;
use crate::error::{Error, Result};
use crate::lie::{CartanDatum, Family, Move, MoveSequence, PositiveRoot, WeylElement, Word, DEFAULT_BFS_CAP};
use crate::poly::{Chart, ExponentVector, LaurentPolynomial, Rational};
use crate::polyhedral::{classify_redundancy, cones_equal, InequalitySystem};

/// Move path to a word ending in the letter, using only 3-term moves whose
/// leftmost affected root is `α_{letter*}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplyBraidedWitness {
    pub letter: usize,
    pub moves: MoveSequence,
    /// Middle root `β_k` of each 3-term move, in the convex order of the word it acts on.
    pub middle_roots: Vec<PositiveRoot>,
}

fn braid_allowed(c: &CartanDatum, u: &Word, m: Move, target: usize) -> bool {
    match m {
        Move::Commute(_) => true,
        Move::Braid(k) => {
            let mut v = vec![0i64; c.rank()];
            v[u.letters()[k - 1]] = 1;
            for t in (0..k - 1).rev() {
                c.reflect_root(u.letters()[t], &mut v);
            }
            PositiveRoot(v).is_simple(target)
        }
    }
}

pub fn simply_braided(c: &CartanDatum, i: &Word, letter: usize) -> Result<Option<SimplyBraidedWitness>> {
    c.require_longest(i)?;
    c.check_letter(letter)?;
    let target = c.i_star(letter);
    let found = c.bfs(i, |w| w.last() == Some(letter), |u, m| braid_allowed(c, u, m, target), DEFAULT_BFS_CAP)?;
    found.map(|moves| witness_from_moves(c, letter, moves)).transpose()
}

fn witness_from_moves(c: &CartanDatum, letter: usize, moves: MoveSequence) -> Result<SimplyBraidedWitness> {
    let words = moves.words(c)?;
    let mut middle_roots = Vec::new();
    for (t, m) in moves.moves.iter().enumerate() {
        if let Move::Braid(k) = m {
            middle_roots.push(c.convex_order(&words[t])?[*k].clone());
        }
    }
    Ok(SimplyBraidedWitness { letter, moves, middle_roots })
}

/// Closed form `X_f^{-1}(1 + X_{m_s}^{-1} + X_{m_s}^{-1}X_{m_{s−1}}^{-1} + …)` where
/// `f` is the frozen vertex of the letter and `m_1, …, m_s` are the mutated vertices
/// of the witness, expressed in the labeling of the initial seed.
pub fn tubes_potential(c: &CartanDatum, i: &Word, w: &SimplyBraidedWitness) -> Result<LaurentPolynomial> {
    let invalid = |m: &str| Error::InvalidWitness(m.to_string());
    if w.moves.source != *i {
        return Err(invalid("witness starts at a different word"));
    }
    c.require_longest(i)?;
    let words = w.moves.words(c).map_err(|e| invalid(&e.to_string()))?;
    if words.last().unwrap().last() != Some(w.letter) {
        return Err(invalid("target word does not end in the letter"));
    }
    let target = c.i_star(w.letter);
    let n = i.len();
    let mut lab: Vec<usize> = (0..n).collect();
    let mut muts = Vec::new();
    for (t, &m) in w.moves.moves.iter().enumerate() {
        if !braid_allowed(c, &words[t], m, target) {
            return Err(invalid(&format!("3-term move {m} violates the root condition")));
        }
        let k = m.position();
        if m.is_braid() {
            muts.push(lab[k - 1]);
        }
        lab.swap(k, k + 1);
    }
    let f = i.last_occurrence(w.letter).expect("reduced word of w0 contains every letter");
    let mut cur = ExponentVector::unit(n, f, -1);
    let mut p = LaurentPolynomial::monomial(n, Chart::X, Rational::one(), cur.clone());
    for &m in muts.iter().rev() {
        cur.0[m] -= 1;
        p.add_term(cur.clone(), Rational::one());
    }
    Ok(p)
}

/// `letter` is minuscule in the diagram restricted to `nodes`.
fn minuscule_in(c: &CartanDatum, nodes: &[usize], letter: usize) -> bool {
    let sub: Vec<Vec<i64>> = nodes.iter().map(|&a| nodes.iter().map(|&b| c.c(a, b)).collect()).collect();
    let pos = nodes.iter().position(|&x| x == letter).expect("letter among nodes");
    crate::lie::positive_roots_of(&sub).iter().all(|r| r.0[pos] <= 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceData {
    pub good_enumerations: Vec<Vec<usize>>,
    pub nice_words: Vec<Word>,
}

/// Default bound on `|W|` for the nice-word machinery.
pub const DEFAULT_WEYL_CAP: u128 = 100_000;

pub fn good_enumerations(c: &CartanDatum) -> Vec<Vec<usize>> {
    fn rec(c: &CartanDatum, rest: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for idx in 0..rest.len() {
            let p = rest[idx];
            if minuscule_in(c, rest, p) {
                rest.remove(idx);
                prefix.push(p);
                rec(c, rest, prefix, out);
                prefix.pop();
                rest.insert(idx, p);
            }
        }
    }
    let mut out = Vec::new();
    rec(c, &mut (0..c.rank()).collect(), &mut Vec::new(), &mut out);
    out
}

/// `τ_1 ⋯ τ_n` with `τ_j = w₀(J_{j−1}) w₀(J_j)`, `J_j = {p_1, …, p_j}`.
pub fn nice_word(c: &CartanDatum, enumeration: &[usize]) -> Word {
    let mut out = Vec::new();
    let mut prev = Word::default();
    for j in 1..=enumeration.len() {
        let cur = c.parabolic_longest(&enumeration[..j]);
        let mut cat = prev.0.clone();
        cat.extend(cur.0.iter());
        let tau = WeylElement::from_word(c, &Word(cat));
        out.extend(c.reduced_words(&tau).next().expect("reduced word").0);
        prev = cur;
    }
    Word(out)
}

pub fn nice_machinery(c: &CartanDatum, weyl_cap: u128) -> Result<NiceData> {
    if c.family() == Family::E && c.rank() == 8 {
        return Err(Error::Unsupported("nice words do not exist in type E8".into()));
    }
    if c.weyl_order() > weyl_cap {
        return Err(Error::SizeLimit(format!("|W| = {} exceeds the cap {weyl_cap}", c.weyl_order())));
    }
    let good = good_enumerations(c);
    let mut words: Vec<Word> = good.iter().map(|e| nice_word(c, e)).collect();
    words.sort();
    words.dedup();
    Ok(NiceData { good_enumerations: good, nice_words: words })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceConeReport {
    pub word: Vec<usize>,
    pub multiplicity_free: Vec<bool>,
    pub irredundant: Vec<bool>,
    pub simply_braided: Vec<bool>,
    pub facets: usize,
    /// The cone `t_k ≥ t_{k'}` for all `k < k'` equals the ς-cone.
    pub total_order_cone_matches: bool,
}

pub fn nice_cone_report(c: &CartanDatum, i: &Word) -> Result<NiceConeReport> {
    let sys = StringSystem::new(c, i)?;
    let n = i.len();
    let mut mf = Vec::new();
    let mut irr = Vec::new();
    let mut sb = Vec::new();
    for ls in &sys.letters {
        mf.push(ls.varsigma.is_multiplicity_free());
        let r = classify_redundancy(&InequalitySystem::from_polynomial(ls.letter, &ls.varsigma)?)?;
        irr.push(r.is_irredundant());
        sb.push(simply_braided(c, i, ls.letter)?.is_some());
    }
    let whole = InequalitySystem::from_string_system(&sys, None)?;
    let facets = classify_redundancy(&whole)?.facet_count();
    let mut literal = Vec::new();
    for k in 0..n {
        for l in k + 1..n {
            let mut f = vec![0i64; n];
            f[k] = 1;
            f[l] = -1;
            literal.push(f);
        }
    }
    let literal = InequalitySystem::from_forms(n, &literal)?;
    Ok(NiceConeReport {
        word: i.one_based(),
        multiplicity_free: mf,
        irredundant: irr,
        simply_braided: sb,
        facets,
        total_order_cone_matches: cones_equal(&whole, &literal)?,
    })
}

/// Which reflections enter the coefficient of `t_k` in the subword oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubwordVariant {
    /// Chosen positions before `k`.
    Prefix,
    /// Chosen positions before `k` and the first chosen position after it.
    PrefixAndNext,
}

/// Which fundamental weight the trails live over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrailConvention {
    /// Orbit of `ω_{i*}`, from `ω_{i*}` to `w₀ s_{i*} ω_{i*}`.
    Dual,
    /// Orbit of `ω_i`, from `ω_i` to `w₀ s_i ω_i`.
    Literal,
}

fn require_minuscule(c: &CartanDatum, letter: usize) -> Result<()> {
    c.check_letter(letter)?;
    if !c.is_minuscule(letter) {
        return Err(Error::NotMinuscule(letter + 1));
    }
    Ok(())
}

/// Subwords of `i` that are reduced words of `u(letter*)`, as position lists.
pub fn coset_subwords(c: &CartanDatum, i: &Word, j: usize) -> Vec<Vec<usize>> {
    let u = c.coset_data(j).u;
    let ue = WeylElement::from_word(c, &u);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        c: &CartanDatum,
        i: &Word,
        k: usize,
        v: Vec<i64>,
        left: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            out.push(chosen.clone());
            return;
        }
        if i.len() - k < left {
            return;
        }
        let l = i.letters()[k];
        if v[l] < 0 {
            let mut w = v.clone();
            c.reflect_weight(l, &mut w);
            chosen.push(k);
            rec(c, i, k + 1, w, left - 1, chosen, out);
            chosen.pop();
        }
        rec(c, i, k + 1, v, left, chosen, out);
    }
    rec(c, i, 0, ue.rho_image(), ue.length(), &mut chosen, &mut out);
    out
}

pub fn trail_forms_subword(
    c: &CartanDatum,
    i: &Word,
    letter: usize,
    variant: SubwordVariant,
) -> Result<BTreeSet<Vec<i64>>> {
    require_minuscule(c, letter)?;
    c.require_longest(i)?;
    let j = c.i_star(letter);
    let mut forms = BTreeSet::new();
    for sub in coset_subwords(c, i, j) {
        let mut d = vec![0i64; i.len()];
        for (k, dk) in d.iter_mut().enumerate() {
            if sub.contains(&k) {
                continue;
            }
            let mut refl: Vec<usize> = sub.iter().copied().filter(|&p| p < k).collect();
            if variant == SubwordVariant::PrefixAndNext {
                if let Some(&p) = sub.iter().find(|&&p| p > k) {
                    refl.push(p);
                }
            }
            let mut v = vec![0i64; c.rank()];
            v[i.letters()[k]] = 1;
            for &p in refl.iter().rev() {
                c.reflect_root(i.letters()[p], &mut v);
            }
            *dk = v[j];
        }
        forms.insert(d);
    }
    Ok(forms)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trail {
    pub weights: Vec<Vec<i64>>,
    pub c: Vec<u8>,
    pub d: Vec<i64>,
}

fn orbit(c: &CartanDatum, start: Vec<i64>) -> Vec<Vec<i64>> {
    let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for i in 0..c.rank() {
            let mut w = v.clone();
            c.reflect_weight(i, &mut w);
            if seen.insert(w.clone()) {
                stack.push(w);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

pub fn enumerate_trails(c: &CartanDatum, i: &Word, letter: usize, conv: TrailConvention) -> Result<Vec<Trail>> {
    require_minuscule(c, letter)?;
    c.require_longest(i)?;
    let j = match conv {
        TrailConvention::Dual => c.i_star(letter),
        TrailConvention::Literal => letter,
    };
    let n = i.len();
    let mut start = vec![0i64; c.rank()];
    start[j] = 1;
    let mut end = start.clone();
    c.reflect_weight(j, &mut end);
    let end = c.longest_element().apply(&end);
    let orb = orbit(c, start.clone());
    let lowered = |g: &[i64], l: usize| -> Vec<i64> {
        let a = c.simple_root_weight(l);
        g.iter().zip(&a).map(|(x, y)| x - y).collect()
    };
    // reach[k]: weights at step k from which `end` is reachable.
    let mut reach: Vec<HashSet<Vec<i64>>> = vec![HashSet::new(); n + 1];
    reach[n].insert(end.clone());
    for k in (1..=n).rev() {
        let l = i.letters()[k - 1];
        let next = reach[k].clone();
        for g in &orb {
            if next.contains(g) || (g[l] == 1 && next.contains(&lowered(g, l))) {
                reach[k - 1].insert(g.clone());
            }
        }
    }
    let mut out = Vec::new();
    if !reach[0].contains(&start) {
        return Ok(out);
    }
    let mut weights = vec![start];
    let mut cs = Vec::new();
    fn rec(
        i: &Word,
        k: usize,
        reach: &[HashSet<Vec<i64>>],
        lowered: &dyn Fn(&[i64], usize) -> Vec<i64>,
        weights: &mut Vec<Vec<i64>>,
        cs: &mut Vec<u8>,
        out: &mut Vec<Trail>,
    ) {
        if k == i.len() {
            let d = (0..k).map(|t| weights[t][i.letters()[t]] - i64::from(cs[t])).collect();
            out.push(Trail { weights: weights.clone(), c: cs.clone(), d });
            return;
        }
        let l = i.letters()[k];
        let g = weights[k].clone();
        let mut options = vec![(0u8, g.clone())];
        if g[l] == 1 {
            options.push((1u8, lowered(&g, l)));
        }
        for (ck, next) in options {
            if reach[k + 1].contains(&next) {
                weights.push(next);
                cs.push(ck);
                rec(i, k + 1, reach, lowered, weights, cs, out);
                weights.pop();
                cs.pop();
            }
        }
    }
    rec(i, 0, &reach, &lowered, &mut weights, &mut cs, &mut out);
    Ok(out)
}

pub fn trail_forms(c: &CartanDatum, i: &Word, letter: usize, conv: TrailConvention) -> Result<BTreeSet<Vec<i64>>> {
    Ok(enumerate_trails(c, i, letter, conv)?.into_iter().map(|t| t.d).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::potential;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn a2_witnesses() {
        let c: CartanDatum = "A2".parse().unwrap();
        let i = w("1 2 1");
        let w1 = simply_braided(&c, &i, 0).unwrap().unwrap();
        assert!(w1.moves.is_empty());
        assert_eq!(tubes_potential(&c, &i, &w1).unwrap().to_string(), "X3^-1");
        let w2 = simply_braided(&c, &i, 1).unwrap().unwrap();
        assert_eq!(w2.moves.moves, vec![Move::Braid(1)]);
        let t = tubes_potential(&c, &i, &w2).unwrap();
        assert_eq!(t.num_terms(), 2);
        assert_eq!(t, potential(&c, &i, 1).unwrap());
    }

    #[test]
    fn invalid_witness_rejected() {
        let c: CartanDatum = "A2".parse().unwrap();
        let i = w("1 2 1");
        let bad = SimplyBraidedWitness { letter: 1, moves: MoveSequence::empty(i.clone()), middle_roots: vec![] };
        assert!(matches!(tubes_potential(&c, &i, &bad), Err(Error::InvalidWitness(_))));
    }

    #[test]
    fn nice_words_small() {
        let a3: CartanDatum = "A3".parse().unwrap();
        assert_eq!(nice_word(&a3, &[0, 1, 2]), w("1 2 1 3 2 1"));
        let a4: CartanDatum = "A4".parse().unwrap();
        assert_eq!(nice_word(&a4, &[0, 1, 2, 3]), w("1 2 1 3 2 1 4 3 2 1"));
        let e8: CartanDatum = "E8".parse().unwrap();
        assert!(matches!(nice_machinery(&e8, u128::MAX), Err(Error::Unsupported(_))));
        let d5: CartanDatum = "D5".parse().unwrap();
        assert!(matches!(nice_machinery(&d5, 100), Err(Error::SizeLimit(_))));
        let data = nice_machinery(&a3, DEFAULT_WEYL_CAP).unwrap();
        assert!(data.good_enumerations.contains(&vec![0, 1, 2]));
        for nw in &data.nice_words {
            assert!(a3.is_longest_word(nw));
        }
    }

    #[test]
    fn parabolic() {
        let a3: CartanDatum = "A3".parse().unwrap();
        assert_eq!(a3.parabolic_longest(&[0, 1]), w("1 2 1"));
        assert_eq!(a3.parabolic_longest(&[]), Word::default());
        assert_eq!(a3.parabolic_longest(&[0, 2]), w("1 3"));
    }

    #[test]
    fn a2_oracles() {
        let c: CartanDatum = "A2".parse().unwrap();
        let i = w("1 2 1");
        let s2 = trail_forms_subword(&c, &i, 1, SubwordVariant::Prefix).unwrap();
        assert_eq!(s2, BTreeSet::from([vec![1, 0, 0], vec![0, 1, -1]]));
        let s1 = trail_forms_subword(&c, &i, 0, SubwordVariant::Prefix).unwrap();
        assert_eq!(s1, BTreeSet::from([vec![0, 0, 1]]));
        let t2 = enumerate_trails(&c, &i, 1, TrailConvention::Dual).unwrap();
        assert_eq!(t2.len(), 2);
        assert_eq!(t2.iter().map(|t| t.d.clone()).collect::<BTreeSet<_>>(), s2);
        assert_eq!(trail_forms(&c, &i, 0, TrailConvention::Dual).unwrap(), s1);
        assert_ne!(trail_forms(&c, &i, 0, TrailConvention::Literal).unwrap(), s1);
        let d4: CartanDatum = "D4".parse().unwrap();
        let i = d4.longest_word();
        assert!(matches!(trail_forms_subword(&d4, &i, 1, SubwordVariant::Prefix), Err(Error::NotMinuscule(2))));
    }

    #[test]
    fn trail_json() {
        let c: CartanDatum = "A2".parse().unwrap();
        let t = enumerate_trails(&c, &w("1 2 1"), 0, TrailConvention::Dual).unwrap();
        let j = serde_json::to_string(&t).unwrap();
        assert!(j.contains(r#""d":[0,0,1]"#), "{j}");
    }
}
