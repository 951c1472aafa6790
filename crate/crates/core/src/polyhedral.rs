//! Exact redundancy analysis for homogeneous inequality systems `⟨a, t⟩ ≥ 0`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cone::StringSystem;
use crate::error::{Error, Result};
use crate::poly::{format_rational, LaurentPolynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub letter: usize,
    pub monomial: usize,
    #[serde(with = "rational_str")]
    pub coeff: Rational,
}

mod rational_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        crate::poly::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub form: Vec<i64>,
    pub labels: Vec<Label>,
}

impl Inequality {
    pub fn letters(&self) -> Vec<usize> {
        let mut l: Vec<usize> = self.labels.iter().map(|x| x.letter).collect();
        l.dedup();
        l
    }

    /// Largest coefficient among the merged labels.
    pub fn max_coeff(&self) -> Rational {
        self.labels.iter().map(|l| l.coeff.clone()).max().unwrap_or_else(Rational::one)
    }
}

/// Labeled forms with duplicates merged into label unions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalitySystem {
    pub dim: usize,
    pub inequalities: Vec<Inequality>,
}

impl InequalitySystem {
    pub fn new(dim: usize) -> Self {
        InequalitySystem { dim, inequalities: Vec::new() }
    }

    pub fn push(&mut self, form: Vec<i64>, label: Label) -> Result<()> {
        if form.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: form.len() });
        }
        match self.inequalities.iter_mut().find(|q| q.form == form) {
            Some(q) => {
                q.labels.push(label);
                q.labels.sort();
            }
            None => self.inequalities.push(Inequality { form, labels: vec![label] }),
        }
        Ok(())
    }

    pub fn from_forms(dim: usize, forms: &[Vec<i64>]) -> Result<Self> {
        let mut s = Self::new(dim);
        for (k, f) in forms.iter().enumerate() {
            s.push(f.clone(), Label { letter: 0, monomial: k, coeff: Rational::one() })?;
        }
        Ok(s)
    }

    /// Tropical forms of one letter's ς, labeled with their coefficients.
    pub fn from_polynomial(letter: usize, p: &LaurentPolynomial) -> Result<Self> {
        let mut s = Self::new(p.nvars());
        for (k, (e, c)) in p.terms().enumerate() {
            s.push(e.as_i64(), Label { letter, monomial: k, coeff: c.clone() })?;
        }
        Ok(s)
    }

    pub fn from_string_system(sys: &StringSystem, letters: Option<&[usize]>) -> Result<Self> {
        let mut s = Self::new(sys.dim());
        for ls in &sys.letters {
            if letters.is_some_and(|l| !l.contains(&ls.letter)) {
                continue;
            }
            for (k, (e, c)) in ls.varsigma.terms().enumerate() {
                s.push(e.as_i64(), Label { letter: ls.letter, monomial: k, coeff: c.clone() })?;
            }
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty()
    }

    pub fn forms(&self) -> Vec<Vec<i64>> {
        self.inequalities.iter().map(|q| q.form.clone()).collect()
    }

    pub fn contains(&self, t: &[i64]) -> bool {
        self.inequalities.iter().all(|q| q.form.iter().zip(t).map(|(a, b)| a * b).sum::<i64>() >= 0)
    }
}

/// Non-negative weights with `Σ r_m g_m = a₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    /// `(generator index, weight)` for the nonzero weights, by index.
    pub weights: Vec<(usize, Rational)>,
}

impl FarkasCertificate {
    pub fn verify(&self, a0: &[i64], gens: &[Vec<i64>]) -> bool {
        let mut acc = vec![Rational::zero(); a0.len()];
        for (j, r) in &self.weights {
            if r.is_negative() {
                return false;
            }
            for (x, &g) in acc.iter_mut().zip(&gens[*j]) {
                *x += r * BigRational::from_integer(BigInt::from(g));
            }
        }
        acc.iter().zip(a0).all(|(x, &a)| *x == BigRational::from_integer(BigInt::from(a)))
    }

    pub fn to_json(&self) -> Vec<(usize, String)> {
        self.weights.iter().map(|(j, r)| (*j, format_rational(r))).collect()
    }
}

/// Exact phase-1 simplex with Bland's rule: is `a₀` in the conic hull of `gens`?
pub fn farkas_member(a0: &[i64], gens: &[Vec<i64>]) -> Result<Option<FarkasCertificate>> {
    let d = a0.len();
    if let Some(g) = gens.iter().find(|g| g.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: g.len() });
    }
    if a0.iter().all(|&x| x == 0) {
        return Ok(Some(FarkasCertificate { weights: Vec::new() }));
    }
    let m = gens.len();
    if m == 0 {
        return Ok(None);
    }
    // Columns: gens (0..m), artificials (m..m+d), rhs (m+d).
    let cols = m + d + 1;
    let rhs = m + d;
    let big = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut t: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let s = if a0[i] < 0 { -1 } else { 1 };
            let mut row = vec![Rational::zero(); cols];
            for j in 0..m {
                row[j] = big(s * gens[j][i]);
            }
            row[m + i] = Rational::one();
            row[rhs] = big(s * a0[i]);
            row
        })
        .collect();
    let mut basis: Vec<usize> = (m..m + d).collect();
    // Reduced costs of the phase-1 objective Σ artificials.
    let mut cost = vec![Rational::zero(); cols];
    for row in &t {
        for j in 0..m {
            cost[j] -= &row[j];
        }
        cost[rhs] -= &row[rhs];
    }
    while let Some(enter) = (0..m + d).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[rhs] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // Unbounded below cannot happen for a phase-1 objective bounded by 0.
            return Err(Error::Convention("phase-1 simplex reported an unbounded ray".into()));
        };
        let piv = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x /= &piv;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        let f = cost[enter].clone();
        for (x, p) in cost.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
        basis[r] = enter;
    }
    if !cost[rhs].is_zero() {
        return Ok(None);
    }
    let mut weights: Vec<(usize, Rational)> = basis
        .iter()
        .enumerate()
        .filter(|(i, &b)| b < m && !t[*i][rhs].is_zero())
        .map(|(i, &b)| (b, t[i][rhs].clone()))
        .collect();
    weights.sort_by_key(|(j, _)| *j);
    let cert = FarkasCertificate { weights };
    if !cert.verify(a0, gens) {
        return Err(Error::Convention("Farkas certificate failed verification".into()));
    }
    Ok(Some(cert))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Facet,
    /// Certificate indices refer to positions in the system.
    Redundant(FarkasCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportEntry {
    pub inequality: Inequality,
    pub status: Status,
    /// Number of monomials merged into this form beyond the first.
    pub duplicates: usize,
    /// The certificate needs a generator carrying a different letter.
    pub cross_letter: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedundancyReport {
    pub dim: usize,
    pub entries: Vec<ReportEntry>,
}

impl RedundancyReport {
    pub fn facet_count(&self) -> usize {
        self.entries.iter().filter(|e| e.status == Status::Facet).count()
    }

    pub fn redundant(&self) -> Vec<&ReportEntry> {
        self.entries.iter().filter(|e| e.status != Status::Facet).collect()
    }

    pub fn duplicate_count(&self) -> usize {
        self.entries.iter().map(|e| e.duplicates).sum()
    }

    pub fn any_cross_letter(&self) -> bool {
        self.entries.iter().any(|e| e.cross_letter)
    }

    pub fn is_irredundant(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Facet) && self.duplicate_count() == 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|e| {
                let (status, cert) = match &e.status {
                    Status::Facet => ("facet", serde_json::Value::Null),
                    Status::Redundant(c) => ("redundant", serde_json::json!(c.to_json())),
                };
                serde_json::json!({
                    "form": e.inequality.form,
                    "labels": e.inequality.labels,
                    "status": status,
                    "certificate": cert,
                    "duplicates": e.duplicates,
                    "cross_letter": e.cross_letter,
                })
            })
            .collect();
        serde_json::json!({
            "dim": self.dim,
            "facets": self.facet_count(),
            "redundant": self.redundant().len(),
            "duplicates": self.duplicate_count(),
            "cross_letter": self.any_cross_letter(),
            "entries": entries,
        })
    }
}

/// Each inequality is redundant iff its normal lies in the cone of all the others.
pub fn classify_redundancy(sys: &InequalitySystem) -> Result<RedundancyReport> {
    let forms = sys.forms();
    let entries = (0..forms.len())
        .map(|i| {
            let others: Vec<usize> = (0..forms.len()).filter(|&j| j != i).collect();
            let gens: Vec<Vec<i64>> = others.iter().map(|&j| forms[j].clone()).collect();
            let q = &sys.inequalities[i];
            let status = match farkas_member(&forms[i], &gens)? {
                None => Status::Facet,
                Some(c) => Status::Redundant(FarkasCertificate {
                    weights: c.weights.into_iter().map(|(j, r)| (others[j], r)).collect(),
                }),
            };
            let cross_letter = match &status {
                Status::Facet => false,
                Status::Redundant(_) => {
                    // Certificates are not unique; ask whether one exists within the own letters.
                    let own = q.letters();
                    let same: Vec<Vec<i64>> = others
                        .iter()
                        .filter(|&&j| sys.inequalities[j].letters().iter().any(|l| own.contains(l)))
                        .map(|&j| forms[j].clone())
                        .collect();
                    farkas_member(&forms[i], &same)?.is_none()
                }
            };
            Ok(ReportEntry { inequality: q.clone(), status, duplicates: q.labels.len() - 1, cross_letter })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RedundancyReport { dim: sys.dim, entries })
}

/// Irredundant subsystem by sequential deletion in descending lexicographic order.
pub fn facets(sys: &InequalitySystem) -> Result<InequalitySystem> {
    let mut order: Vec<usize> = (0..sys.len()).collect();
    order.sort_by(|&a, &b| sys.inequalities[b].form.cmp(&sys.inequalities[a].form));
    let mut kept = vec![true; sys.len()];
    for &i in &order {
        let gens: Vec<Vec<i64>> =
            (0..sys.len()).filter(|&j| j != i && kept[j]).map(|j| sys.inequalities[j].form.clone()).collect();
        if farkas_member(&sys.inequalities[i].form, &gens)?.is_some() {
            kept[i] = false;
        }
    }
    Ok(InequalitySystem {
        dim: sys.dim,
        inequalities: (0..sys.len()).filter(|&i| kept[i]).map(|i| sys.inequalities[i].clone()).collect(),
    })
}

/// The two systems cut out the same cone (each normal lies in the other's dual cone).
pub fn cones_equal(a: &InequalitySystem, b: &InequalitySystem) -> Result<bool> {
    let fa = a.forms();
    let fb = b.forms();
    for f in &fa {
        if farkas_member(f, &fb)?.is_none() {
            return Ok(false);
        }
    }
    for f in &fb {
        if farkas_member(f, &fa)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Limits of the double-description oracle.
pub const BRUTE_MAX_DIM: usize = 12;
pub const BRUTE_MAX_ROWS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteReport {
    pub rays: Vec<Vec<BigInt>>,
    /// Per inequality: defines a facet not already defined by an earlier parallel row.
    pub facet: Vec<bool>,
}

impl BruteReport {
    pub fn facet_count(&self) -> usize {
        self.facet.iter().filter(|&&f| f).count()
    }
}

/// Independent facet oracle: extreme rays by double description, then a row is a
/// facet iff its tight rays span a hyperplane and no other row is parallel to it.
/// Requires a full-dimensional pointed cone.
pub fn brute_force_redundancy(sys: &InequalitySystem) -> Result<BruteReport> {
    let d = sys.dim;
    let rows = sys.forms();
    if d > BRUTE_MAX_DIM || rows.len() > BRUTE_MAX_ROWS {
        return Err(Error::SizeLimit(format!(
            "double description limited to dimension {BRUTE_MAX_DIM} and {BRUTE_MAX_ROWS} rows"
        )));
    }
    let rows_big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let basis = independent_rows(&rows_big, d);
    if basis.len() < d {
        return Err(Error::Unsupported("cone is not pointed (inequality rank below dimension)".into()));
    }
    let rays = double_description(&rows_big, &basis, d);
    if rank(&rays) < d {
        return Err(Error::Unsupported("cone is not full-dimensional".into()));
    }
    let mut facet = Vec::with_capacity(rows.len());
    for (i, a) in rows_big.iter().enumerate() {
        let tight: Vec<Vec<BigInt>> = rays.iter().filter(|r| dot(a, r).is_zero()).cloned().collect();
        let defines = rank(&tight) == d - 1;
        let parallel = rows_big.iter().enumerate().any(|(j, b)| j != i && positively_parallel(a, b));
        facet.push(defines && !parallel);
    }
    Ok(BruteReport { rays, facet })
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn positively_parallel(a: &[BigInt], b: &[BigInt]) -> bool {
    // a = λ b with λ > 0
    let n = a.len();
    for i in 0..n {
        for j in 0..n {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    (0..n).any(|i| !a[i].is_zero() && a[i].signum() == b[i].signum())
}

fn normalize(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Rank over the rationals by fraction-free elimination.
pub fn rank(vs: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = vs.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let (a, b) = (m[r][c].clone(), m[i][c].clone());
                for k in 0..cols {
                    m[i][k] = &m[i][k] * &a - &m[r][k] * &b;
                }
                normalize(&mut m[i]);
            }
        }
        r += 1;
    }
    r
}

fn independent_rows(rows: &[Vec<BigInt>], d: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut acc: Vec<Vec<BigInt>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        acc.push(r.clone());
        if rank(&acc) > chosen.len() {
            chosen.push(i);
            if chosen.len() == d {
                break;
            }
        } else {
            acc.pop();
        }
    }
    chosen
}

/// Solves `A_B x = e_k` for every `k` and scales the columns of `A_B^{-1}` to integers.
fn initial_rays(rows: &[Vec<BigInt>], basis: &[usize], d: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigRational>> = basis
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let mut r: Vec<BigRational> = rows[b].iter().map(|x| BigRational::from_integer(x.clone())).collect();
            r.extend((0..d).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&i| !m[i][c].is_zero()).expect("basis rows are independent");
        m.swap(c, p);
        let piv = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x /= &piv;
        }
        let prow = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
            }
        }
    }
    // Columns of the inverse are the rays.
    (0..d)
        .map(|k| {
            let col: Vec<BigRational> = (0..d).map(|i| m[i][d + k].clone()).collect();
            let l = col.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let mut v: Vec<BigInt> =
                col.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
            normalize(&mut v);
            v
        })
        .collect()
}

fn double_description(rows: &[Vec<BigInt>], basis: &[usize], d: usize) -> Vec<Vec<BigInt>> {
    let mut rays = initial_rays(rows, basis, d);
    let mut processed: Vec<usize> = basis.to_vec();
    for (i, a) in rows.iter().enumerate() {
        if basis.contains(&i) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, r)).collect();
        let zero_sets: Vec<Vec<usize>> =
            rays.iter().map(|r| processed.iter().copied().filter(|&j| dot(&rows[j], r).is_zero()).collect()).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut next: Vec<Vec<BigInt>> =
            (0..rays.len()).filter(|&k| !vals[k].is_negative()).map(|k| rays[k].clone()).collect();
        for &p in &pos {
            for &q in &neg {
                let common: Vec<usize> = zero_sets[p].iter().copied().filter(|j| zero_sets[q].contains(j)).collect();
                if common.len() + 2 < d {
                    continue;
                }
                let dominated =
                    (0..rays.len()).any(|r| r != p && r != q && common.iter().all(|j| zero_sets[r].contains(j)));
                if dominated {
                    continue;
                }
                let sub: Vec<Vec<BigInt>> = common.iter().map(|&j| rows[j].clone()).collect();
                if rank(&sub) != d - 2 {
                    continue;
                }
                let mut v: Vec<BigInt> =
                    rays[q].iter().zip(&rays[p]).map(|(n, pp)| &vals[p] * n - &vals[q] * pp).collect();
                normalize(&mut v);
                if !next.contains(&v) {
                    next.push(v);
                }
            }
        }
        rays = next;
        processed.push(i);
    }
    rays.sort();
    rays
}

/// Random system with interior point `(1,…,1)` and full rank.
pub fn random_system(dim: usize, count: usize, seed: u64) -> InequalitySystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut forms: Vec<Vec<i64>> = Vec::new();
        while forms.len() < count {
            let f: Vec<i64> = (0..dim).map(|_| rng.random_range(-3..=3)).collect();
            if f.iter().sum::<i64>() > 0 && !forms.contains(&f) {
                forms.push(f);
            }
        }
        let big: Vec<Vec<BigInt>> = forms.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        if rank(&big) == dim {
            return InequalitySystem::from_forms(dim, &forms).expect("forms have the right length");
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPoint {
    pub exp: Vec<i64>,
    #[serde(with = "rational_str")]
    pub coeff: Rational,
    pub vertex: bool,
}

/// Whether each monomial's exponent is a vertex of the Newton polytope.
pub fn newton_vertex_report(p: &LaurentPolynomial) -> Result<Vec<NewtonPoint>> {
    let pts: Vec<(Vec<i64>, Rational)> = p.terms().map(|(e, c)| (e.as_i64(), c.clone())).collect();
    let lift = |v: &[i64]| {
        let mut w = v.to_vec();
        w.push(1);
        w
    };
    pts.iter()
        .enumerate()
        .map(|(i, (u, c))| {
            let others: Vec<Vec<i64>> =
                pts.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, (v, _))| lift(v)).collect();
            let inside = farkas_member(&lift(u), &others)?.is_some();
            Ok(NewtonPoint { exp: u.clone(), coeff: c.clone(), vertex: !inside })
        })
        .collect()
}

/// Histogram helper for reports: coefficient ↦ count.
pub fn coefficient_multiset(sys: &InequalitySystem) -> BTreeMap<Rational, usize> {
    let mut h = BTreeMap::new();
    for q in &sys.inequalities {
        for l in &q.labels {
            *h.entry(l.coeff.clone()).or_insert(0) += 1;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_frac;

    #[test]
    fn farkas_examples() {
        let g = vec![vec![1, 0], vec![0, 1]];
        let c = farkas_member(&[1, 1], &g).unwrap().unwrap();
        assert_eq!(c.weights, vec![(0, rat_frac(1, 1)), (1, rat_frac(1, 1))]);
        assert!(farkas_member(&[-1, 0], &g).unwrap().is_none());
        assert!(farkas_member(&[1], &g).is_err());
        let half = farkas_member(&[1, 1], &[vec![2, 0], vec![0, 2]]).unwrap().unwrap();
        assert_eq!(half.weights, vec![(0, rat_frac(1, 2)), (1, rat_frac(1, 2))]);
    }

    #[test]
    fn redundancy_small() {
        let sys = InequalitySystem::from_forms(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let r = classify_redundancy(&sys).unwrap();
        assert_eq!(r.facet_count(), 2);
        match &r.entries[2].status {
            Status::Redundant(c) => assert_eq!(c.weights, vec![(0, rat_frac(1, 1)), (1, rat_frac(1, 1))]),
            s => panic!("{s:?}"),
        }
        assert_eq!(facets(&sys).unwrap().len(), 2);
        let b = brute_force_redundancy(&sys).unwrap();
        assert_eq!(b.facet, vec![true, true, false]);
    }

    #[test]
    fn a2_system_brute() {
        let sys = InequalitySystem::from_forms(3, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, -1]]).unwrap();
        let b = brute_force_redundancy(&sys).unwrap();
        assert_eq!(b.facet_count(), 3);
        let mut rays: Vec<Vec<i64>> =
            b.rays.iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
        rays.sort();
        assert_eq!(rays, vec![vec![0, 1, 0], vec![0, 1, 1], vec![1, 0, 0]]);
        assert_eq!(classify_redundancy(&sys).unwrap().facet_count(), 3);
    }

    #[test]
    fn parallel_rows() {
        let sys = InequalitySystem::from_forms(2, &[vec![1, 0], vec![2, 0], vec![0, 1]]).unwrap();
        let r = classify_redundancy(&sys).unwrap();
        assert_eq!(r.facet_count(), 1);
        let b = brute_force_redundancy(&sys).unwrap();
        assert_eq!(b.facet_count(), 1);
        assert_eq!(facets(&sys).unwrap().len(), 2);
    }

    #[test]
    fn duplicates_merge() {
        let mut s = InequalitySystem::new(2);
        s.push(vec![1, 0], Label { letter: 0, monomial: 0, coeff: Rational::one() }).unwrap();
        s.push(vec![1, 0], Label { letter: 1, monomial: 3, coeff: Rational::one() }).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.inequalities[0].labels.len(), 2);
        assert!(s.push(vec![1], Label { letter: 0, monomial: 0, coeff: Rational::one() }).is_err());
    }

    #[test]
    fn newton_vertices() {
        let p = LaurentPolynomial::parse("1 + 2*x1 + x1^2", 1).unwrap();
        let r = newton_vertex_report(&p).unwrap();
        let v: Vec<bool> = r.iter().map(|x| x.vertex).collect();
        assert_eq!(v, vec![true, false, true]);
        let q = LaurentPolynomial::parse("x1 + x2", 2).unwrap();
        assert!(newton_vertex_report(&q).unwrap().iter().all(|x| x.vertex));
    }

    #[test]
    fn random_systems_agree_with_oracle() {
        for seed in 0..20 {
            let sys = random_system(5, 9, seed);
            let r = classify_redundancy(&sys).unwrap();
            let b = brute_force_redundancy(&sys).unwrap();
            let lp: Vec<bool> = r.entries.iter().map(|e| e.status == Status::Facet).collect();
            assert_eq!(lp, b.facet, "seed {seed}");
            assert!(cones_equal(&sys, &facets(&sys).unwrap()).unwrap());
        }
    }
}
