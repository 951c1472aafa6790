//! The torus map ĈA, the functions ς, string-cone systems and the Ψ transition maps.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cluster::potential;
use crate::error::{Error, Result};
use crate::lie::{CartanDatum, Move, Word};
use crate::poly::{LaurentPolynomial, PolyJson, TropicalForm};

/// Exponent matrix of ĈA: row `k` lists the exponents of `X_k` in the `x` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaMatrix {
    e: Vec<Vec<i64>>,
}

impl CaMatrix {
    pub fn from_word(c: &CartanDatum, i: &Word) -> Result<Self> {
        c.require_longest(i)?;
        let n = i.len();
        let kp = i.k_plus_all();
        let l = i.letters();
        let mut e = vec![vec![0i64; n]; n];
        for k in 0..n {
            for m in 0..n {
                e[k][m] = if m == k || m == kp[k] {
                    -1
                } else if k < m && m < kp[k] {
                    -c.c(l[k], l[m])
                } else {
                    0
                };
            }
        }
        let ca = CaMatrix { e };
        let d = ca.determinant();
        if d.abs() != BigInt::one() {
            return Err(Error::Convention(format!("ĈA matrix has determinant {d}")));
        }
        Ok(ca)
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.e
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        determinant(&self.e)
    }
}

pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

/// `ς_{i,letter}`: the potential summand pulled back through ĈA.
pub fn varsigma(c: &CartanDatum, i: &Word, letter: usize) -> Result<LaurentPolynomial> {
    let ca = CaMatrix::from_word(c, i)?;
    potential(c, i, letter)?.substitute_monomials(ca.rows())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterSystem {
    pub letter: usize,
    pub varsigma: LaurentPolynomial,
    pub tropical: TropicalForm,
}

/// ς and its tropical forms for every letter; the cone is `⟨u, t⟩ ≥ 0` for every form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringSystem {
    pub word: Word,
    pub letters: Vec<LetterSystem>,
}

impl StringSystem {
    pub fn new(c: &CartanDatum, i: &Word) -> Result<Self> {
        let ca = CaMatrix::from_word(c, i)?;
        let letters = (0..c.rank())
            .map(|letter| {
                let vs = potential(c, i, letter)?.substitute_monomials(ca.rows())?;
                let tropical = vs.tropicalize()?;
                Ok(LetterSystem { letter, varsigma: vs, tropical })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StringSystem { word: i.clone(), letters })
    }

    pub fn dim(&self) -> usize {
        self.word.len()
    }

    pub fn letter(&self, letter: usize) -> &LetterSystem {
        &self.letters[letter]
    }

    /// All forms as `(letter, vector)`.
    pub fn labeled_forms(&self) -> Vec<(usize, Vec<i64>)> {
        self.letters.iter().flat_map(|ls| ls.tropical.vectors().into_iter().map(move |v| (ls.letter, v))).collect()
    }

    pub fn contains(&self, t: &[i64]) -> bool {
        self.letters.iter().all(|ls| ls.tropical.eval(t).is_none_or(|v| v >= 0))
    }

    pub fn eval(&self, letter: usize, t: &[i64]) -> Option<i64> {
        self.letters[letter].tropical.eval(t)
    }

    pub fn to_json(&self) -> StringSystemJson {
        let letters = self
            .letters
            .iter()
            .map(|ls| {
                let terms: PolyJson = ls.varsigma.to_json();
                ((ls.letter + 1).to_string(), LetterJson { terms: terms.terms, forms: ls.tropical.vectors() })
            })
            .collect();
        StringSystemJson { word: self.word.one_based(), letters }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LetterJson {
    pub terms: Vec<crate::poly::TermJson>,
    pub forms: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringSystemJson {
    pub word: Vec<usize>,
    pub letters: BTreeMap<String, LetterJson>,
}

pub fn string_system(c: &CartanDatum, i: &Word) -> Result<StringSystem> {
    StringSystem::new(c, i)
}

/// Composition of elementary Ψ steps, one per braid move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinearMap {
    n: usize,
    steps: Vec<Move>,
}

impl PiecewiseLinearMap {
    pub fn identity(n: usize) -> Self {
        PiecewiseLinearMap { n, steps: Vec::new() }
    }

    pub fn from_moves(n: usize, steps: Vec<Move>) -> Self {
        PiecewiseLinearMap { n, steps }
    }

    pub fn steps(&self) -> &[Move] {
        &self.steps
    }

    pub fn apply(&self, x: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        let mut x = x.to_vec();
        for &m in &self.steps {
            apply_step(&mut x, m);
        }
        Ok(x)
    }

    /// Each elementary step is an involution, so the inverse replays them backwards.
    pub fn inverse(&self) -> Self {
        let mut steps = self.steps.clone();
        steps.reverse();
        PiecewiseLinearMap { n: self.n, steps }
    }
}

fn apply_step(x: &mut [i64], m: Move) {
    match m {
        Move::Commute(k) => x.swap(k, k + 1),
        Move::Braid(k) => {
            let (a, b, c) = (x[k - 1], x[k], x[k + 1]);
            x[k - 1] = c.max(b - a);
            x[k] = a + c;
            x[k + 1] = a.min(b - c);
        }
    }
}

pub fn psi(c: &CartanDatum, i: &Word, j: &Word) -> Result<PiecewiseLinearMap> {
    c.require_longest(i)?;
    c.require_longest(j)?;
    let path = c.move_path(i, j)?;
    Ok(PiecewiseLinearMap::from_moves(i.len(), path.moves))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatReport {
    /// Identity checks at points inside the source cone.
    pub checked: usize,
    pub mismatches: Vec<(Vec<i64>, usize)>,
    /// Cone points whose image leaves the target cone.
    pub mapped_outside: usize,
    /// Cone points where Ψ⁻¹∘Ψ is not the identity.
    pub inverse_failures: usize,
    /// Identity checks at points outside the source cone (reported only).
    pub outside_checked: usize,
    pub outside_mismatches: usize,
}

impl CompatReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.mapped_outside == 0 && self.inverse_failures == 0
    }
}

/// Checks `[ς_{i,l}]_trop(t) = [ς_{j,l}]_trop(Ψ(t))` for the given letters and points.
pub fn psi_compat_check(
    source: &StringSystem,
    target: &StringSystem,
    map: &PiecewiseLinearMap,
    letters: &[usize],
    points: &[Vec<i64>],
) -> Result<CompatReport> {
    let inv = map.inverse();
    let mut r = CompatReport::default();
    for t in points {
        let inside = source.contains(t);
        let y = map.apply(t)?;
        for &l in letters {
            let same = source.eval(l, t) == target.eval(l, &y);
            if inside {
                r.checked += 1;
                if !same {
                    r.mismatches.push((t.clone(), l));
                }
            } else {
                r.outside_checked += 1;
                if !same {
                    r.outside_mismatches += 1;
                }
            }
        }
        if inside {
            if !target.contains(&y) {
                r.mapped_outside += 1;
            }
            if inv.apply(&y)? != *t {
                r.inverse_failures += 1;
            }
        }
    }
    Ok(r)
}

/// Lattice points of the box `[0, bound]^N`: exhaustive for `N ≤ 6`, otherwise
/// `samples` seeded uniform draws.
pub fn box_points(n: usize, bound: i64, samples: usize, seed: u64) -> Vec<Vec<i64>> {
    if n <= 6 {
        let side = (bound + 1) as usize;
        let total = side.pow(n as u32);
        (0..total)
            .map(|mut idx| {
                let mut v = vec![0i64; n];
                for x in v.iter_mut().rev() {
                    *x = (idx % side) as i64;
                    idx /= side;
                }
                v
            })
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).map(|_| (0..n).map(|_| rng.random_range(0..=bound)).collect()).collect()
    }
}

/// Box points that lie in the cone of `sys`.
pub fn cone_points(sys: &StringSystem, bound: i64, samples: usize, seed: u64) -> Vec<Vec<i64>> {
    box_points(sys.dim(), bound, samples, seed).into_iter().filter(|t| sys.contains(t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CartanDatum {
        "A2".parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn a2_ca_matrix() {
        let ca = CaMatrix::from_word(&a2(), &w("1 2 1")).unwrap();
        assert_eq!(ca.rows(), &[vec![-1, 1, -1], vec![0, -1, 1], vec![0, 0, -1]]);
        assert_eq!(ca.determinant(), BigInt::from(-1));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[vec![2, 1], vec![1, 1]]), BigInt::one());
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
        assert_eq!(determinant(&[vec![0, 2, 1], vec![1, 0, 3], vec![2, 1, 0]]), BigInt::from(13));
    }

    #[test]
    fn a2_varsigma() {
        let c = a2();
        let i = w("1 2 1");
        assert_eq!(varsigma(&c, &i, 0).unwrap().to_string(), "x3");
        assert_eq!(varsigma(&c, &i, 1).unwrap(), LaurentPolynomial::parse("x1 + x2*x3^-1", 3).unwrap());
        let sys = string_system(&c, &i).unwrap();
        let mut forms: Vec<Vec<i64>> = sys.labeled_forms().into_iter().map(|(_, v)| v).collect();
        forms.sort();
        assert_eq!(forms, vec![vec![0, 0, 1], vec![0, 1, -1], vec![1, 0, 0]]);
        assert!(sys.contains(&[1, 1, 0]));
        assert!(!sys.contains(&[0, 0, 1]));
    }

    #[test]
    fn a2_psi() {
        let c = a2();
        let m = psi(&c, &w("1 2 1"), &w("2 1 2")).unwrap();
        assert_eq!(m.apply(&[1, 1, 0]).unwrap(), vec![0, 1, 1]);
        assert_eq!(m.inverse().apply(&[0, 1, 1]).unwrap(), vec![1, 1, 0]);
        let id = psi(&c, &w("1 2 1"), &w("1 2 1")).unwrap();
        assert_eq!(id, PiecewiseLinearMap::identity(3));
        let src = string_system(&c, &w("2 1 2")).unwrap();
        let dst = string_system(&c, &w("1 2 1")).unwrap();
        let back = psi(&c, &w("2 1 2"), &w("1 2 1")).unwrap();
        let y = back.apply(&[0, 1, 1]).unwrap();
        assert_eq!(y, vec![1, 1, 0]);
        assert_eq!(src.eval(0, &[0, 1, 1]), Some(0));
        assert_eq!(dst.eval(0, &y), Some(0));
    }

    #[test]
    fn json_shape() {
        let sys = string_system(&a2(), &w("1 2 1")).unwrap();
        let j = serde_json::to_string(&sys.to_json()).unwrap();
        assert!(j.starts_with(
            r#"{"word":[1,2,1],"letters":{"1":{"terms":[{"coeff":"1","exp":[0,0,1]}],"forms":[[0,0,1]]}"#
        ));
    }

    #[test]
    fn box_sampling() {
        assert_eq!(box_points(2, 4, 0, 0).len(), 25);
        let a = box_points(8, 4, 10, 7);
        assert_eq!(a, box_points(8, 4, 10, 7));
        assert_eq!(a.len(), 10);
    }
}
