//! Exact Laurent polynomials over the rationals and their tropicalizations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Which torus the variables live on: cluster `X` coordinates or string `x` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chart {
    X,
    #[serde(rename = "x")]
    Lower,
}

impl Chart {
    fn symbol(self) -> char {
        match self {
            Chart::X => 'X',
            Chart::Lower => 'x',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<i32>);

impl ExponentVector {
    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn unit(n: usize, k: usize, e: i32) -> Self {
        let mut v = vec![0; n];
        v[k] = e;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn dot(&self, t: &[i64]) -> i64 {
        self.0.iter().zip(t).map(|(&a, &b)| i64::from(a) * b).sum()
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&a| i64::from(a)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    nvars: usize,
    chart: Chart,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize, chart: Chart) -> Self {
        LaurentPolynomial { nvars, chart, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, chart: Chart, c: Rational) -> Self {
        Self::monomial(nvars, chart, c, ExponentVector::zero(nvars))
    }

    pub fn one(nvars: usize, chart: Chart) -> Self {
        Self::constant(nvars, chart, Rational::one())
    }

    pub fn monomial(nvars: usize, chart: Chart, coeff: Rational, exp: ExponentVector) -> Self {
        assert_eq!(exp.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars, chart);
        if !coeff.is_zero() {
            p.terms.insert(exp, coeff);
        }
        p
    }

    /// `var_k^e` with coefficient 1.
    pub fn var(nvars: usize, chart: Chart, k: usize, e: i32) -> Self {
        Self::monomial(nvars, chart, Rational::one(), ExponentVector::unit(nvars, k, e))
    }

    pub fn from_terms<I>(nvars: usize, chart: Chart, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, ExponentVector)>,
    {
        let mut p = Self::zero(nvars, chart);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn with_chart(mut self, chart: Chart) -> Self {
        self.chart = chart;
        self
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.nvars != o.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: o.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&-o)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let mut r = Self::zero(self.nvars, self.chart);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.nvars, self.chart);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut r = Self::zero(self.nvars, self.chart);
        for (e, x) in &self.terms {
            r.add_term(e.clone(), x * c);
        }
        r
    }

    pub fn mul_monomial(&self, m: &ExponentVector) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            chart: self.chart,
            terms: self.terms.iter().map(|(e, c)| (e.add(m), c.clone())).collect(),
        }
    }

    /// Shifts every exponent vector by `−m`.
    pub fn divide_by_monomial(&self, m: &ExponentVector) -> Result<Self> {
        if m.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: m.len() });
        }
        Ok(LaurentPolynomial {
            nvars: self.nvars,
            chart: self.chart,
            terms: self.terms.iter().map(|(e, c)| (e.sub(m), c.clone())).collect(),
        })
    }

    /// Exact division by `(1 + var_k)^times`, fails if the remainder is nonzero.
    pub fn div_one_plus_var(&self, k: usize, times: u32) -> Result<Self> {
        let mut p = self.clone();
        for _ in 0..times {
            p = p.div_one_plus_var_once(k)?;
        }
        Ok(p)
    }

    fn div_one_plus_var_once(&self, k: usize) -> Result<Self> {
        // Group by the exponents of the other variables, then synthetic division in var_k.
        let mut groups: BTreeMap<Vec<i32>, BTreeMap<i32, Rational>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut key = e.0.clone();
            let d = key[k];
            key[k] = 0;
            groups.entry(key).or_default().insert(d, c.clone());
        }
        let mut out = Self::zero(self.nvars, self.chart);
        for (key, mut uni) in groups {
            let lo = *uni.keys().next().unwrap();
            let hi = *uni.keys().next_back().unwrap();
            for d in lo..hi {
                let c = uni.remove(&d).unwrap_or_else(Rational::zero);
                if c.is_zero() {
                    continue;
                }
                let next = uni.entry(d + 1).or_insert_with(Rational::zero);
                *next -= &c;
                let mut e = key.clone();
                e[k] = d;
                out.add_term(ExponentVector(e), c);
            }
            if uni.get(&hi).is_some_and(|c| !c.is_zero()) {
                return Err(Error::Convention(format!("polynomial not divisible by (1 + var{})", k + 1)));
            }
        }
        Ok(out)
    }

    /// Exact quotient `self / d` in the Laurent ring, or `None` if `d` does not divide.
    pub fn exact_div(&self, d: &Self) -> Result<Option<Self>> {
        self.check_same(d)?;
        if d.is_zero() {
            return Ok(None);
        }
        if self.is_zero() {
            return Ok(Some(Self::zero(self.nvars, self.chart)));
        }
        let n = self.nvars;
        // Newton polytopes add, so quotient exponents lie in a box.
        let range = |p: &Self, j: usize| {
            let it = p.terms.keys().map(|e| e.0[j]);
            (it.clone().min().unwrap(), it.max().unwrap())
        };
        let bounds: Vec<(i32, i32)> = (0..n)
            .map(|j| {
                let (pl, ph) = range(self, j);
                let (dl, dh) = range(d, j);
                (pl - dl, ph - dh)
            })
            .collect();
        let (lead_e, lead_c) = d.terms.iter().next_back().unwrap();
        let mut r = self.clone();
        let mut q = Self::zero(n, self.chart);
        while let Some((re, rc)) = r.terms.iter().next_back() {
            let e = re.sub(lead_e);
            if e.0.iter().zip(&bounds).any(|(&x, &(lo, hi))| x < lo || x > hi) {
                return Ok(None);
            }
            let c = rc / lead_c;
            let t = Self::monomial(n, self.chart, c.clone(), e.clone());
            r = &r - &(&t * d);
            q.add_term(e, c);
        }
        Ok(Some(q))
    }

    /// Substitutes `X_k := ∏_ℓ x_ℓ^{E[k][ℓ]}`, i.e. maps the exponent `a` to `aᵀE`.
    /// Composition: `substitute(substitute(p, E), F) == substitute(p, E·F)`.
    pub fn substitute_monomials(&self, e: &[Vec<i64>]) -> Result<Self> {
        if e.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: e.len() });
        }
        let m = e.first().map_or(0, |r| r.len());
        if let Some(r) = e.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch { expected: m, found: r.len() });
        }
        let mut out = Self::zero(m, Chart::Lower);
        for (a, c) in &self.terms {
            let v: Vec<i32> = (0..m)
                .map(|l| {
                    let s: i64 = (0..self.nvars).map(|k| i64::from(a.0[k]) * e[k][l]).sum();
                    i32::try_from(s).expect("exponent overflow")
                })
                .collect();
            out.add_term(ExponentVector(v), c.clone());
        }
        Ok(out)
    }

    /// Renames variable `k` to `perm[k]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars, self.chart);
        for (e, c) in &self.terms {
            let mut v = vec![0; self.nvars];
            for (k, &x) in e.0.iter().enumerate() {
                v[perm[k]] = x;
            }
            out.add_term(ExponentVector(v), c.clone());
        }
        out
    }

    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            chart: self.chart,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut v = e.clone();
                    v.0.swap(a, b);
                    (v, c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes `var_k ↦ var_k^{-1}` for every variable.
    pub fn invert_vars(&self) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            chart: self.chart,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (ExponentVector(e.0.iter().map(|x| -x).collect()), c.clone()))
                .collect(),
        }
    }

    /// Substitutes polynomials for the variables; negative powers require invertible
    /// (monomial) images.
    pub fn compose(&self, images: &[LaurentPolynomial]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: images.len() });
        }
        let m = images.first().map_or(0, |p| p.nvars);
        let chart = images.first().map_or(self.chart, |p| p.chart);
        let mut out = Self::zero(m, chart);
        for (e, c) in &self.terms {
            let mut t = Self::constant(m, chart, c.clone());
            for (k, &x) in e.0.iter().enumerate() {
                if x > 0 {
                    t = t.checked_mul(&images[k].pow(x as u32))?;
                } else if x < 0 {
                    let inv = images[k].monomial_inverse().ok_or_else(|| {
                        Error::Convention(format!("negative power of non-monomial image for var{}", k + 1))
                    })?;
                    t = t.checked_mul(&inv.pow((-x) as u32))?;
                }
            }
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }

    fn monomial_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let neg = ExponentVector(e.0.iter().map(|x| -x).collect());
        Some(Self::monomial(self.nvars, self.chart, c.recip(), neg))
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&ExponentVector::zero(self.nvars))
    }

    pub fn is_subtraction_free(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    pub fn has_nonnegative_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn all_exponents_nonpositive(&self) -> bool {
        self.terms.keys().all(|e| e.0.iter().all(|&x| x <= 0))
    }

    pub fn all_exponents_nonnegative(&self) -> bool {
        self.terms.keys().all(|e| e.0.iter().all(|&x| x >= 0))
    }

    /// Every monomial carries `var_k` with exponent at most −1.
    pub fn divisible_by_inverse_var(&self, k: usize) -> bool {
        !self.is_zero() && self.terms.keys().all(|e| e.0[k] <= -1)
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.terms.keys().all(|e| e.0.iter().all(|x| x.abs() <= 1))
    }

    /// Coefficient multiset as a map coefficient ↦ count.
    pub fn coefficient_histogram(&self) -> BTreeMap<Rational, usize> {
        let mut h = BTreeMap::new();
        for c in self.terms.values() {
            *h.entry(c.clone()).or_insert(0) += 1;
        }
        h
    }

    pub fn tropicalize(&self) -> Result<TropicalForm> {
        if !self.is_subtraction_free() {
            return Err(Error::NotSubtractionFree);
        }
        Ok(TropicalForm { nvars: self.nvars, forms: self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect() })
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.nvars,
            chart: self.chart,
            terms: self.terms.iter().map(|(e, c)| TermJson { coeff: format_rational(c), exp: e.0.clone() }).collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((parse_rational(&t.coeff)?, ExponentVector(t.exp.clone()))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(j.vars, j.chart, terms)
    }

    /// Parses text like `x1 + 2*x2*x3^-1` in an ambient space of `nvars` variables.
    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("{m} in polynomial '{s}'"));
        let mut chart = None;
        let mut p = Self::zero(nvars, Chart::X);
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned == "0" {
            return Ok(p);
        }
        // Split at '+'/'-' that start a term (not exponent signs).
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in cleaned.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') && prev.is_some() {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && prev.is_none() {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        terms.push((neg, cur));
        for (neg, t) in terms {
            if t.is_empty() {
                return Err(bad("empty term"));
            }
            let mut coeff = Rational::one();
            let mut exp = vec![0i32; nvars];
            for f in t.split('*') {
                let first = f.chars().next().ok_or_else(|| bad("empty factor"))?;
                if first == 'x' || first == 'X' {
                    let ch = if first == 'X' { Chart::X } else { Chart::Lower };
                    if chart.is_some_and(|c| c != ch) {
                        return Err(bad("mixed charts"));
                    }
                    chart = Some(ch);
                    let (idx, e) = match f[1..].split_once('^') {
                        Some((i, e)) => (i, e.parse::<i32>().map_err(|_| bad("bad exponent"))?),
                        None => (&f[1..], 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
                    if idx == 0 || idx > nvars {
                        return Err(bad("variable index out of range"));
                    }
                    exp[idx - 1] += e;
                } else {
                    coeff *= parse_rational(f)?;
                }
            }
            if neg {
                coeff = -coeff;
            }
            p.add_term(ExponentVector(exp), coeff);
        }
        p.chart = chart.unwrap_or(Chart::X);
        Ok(p)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let sym = self.chart.symbol();
        // Highest lexicographic term first.
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (k, &x) in e.0.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(format!("{sym}{}", k + 1)),
                    _ => factors.push(format!("{sym}{}^{x}", k + 1)),
                }
            }
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let coeff = format_rational(&a);
            match (factors.is_empty(), a.is_one()) {
                (true, _) => f.write_str(&coeff)?,
                (false, true) => f.write_str(&factors.join("*"))?,
                (false, false) => write!(f, "{coeff}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPolynomial {
    type Err = Error;

    /// Ambient size is the largest variable index that occurs.
    fn from_str(s: &str) -> Result<Self> {
        let n = s
            .split(['x', 'X'])
            .skip(1)
            .filter_map(|t| t.chars().take_while(|c| c.is_ascii_digit()).collect::<String>().parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        Self::parse(s, n)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            nvars: self.nvars,
            chart: self.chart,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

// Operator forms panic on mismatched ambient sizes; use the checked_* methods
// for fallible arithmetic.
impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        self.checked_add(o).expect("ambient size mismatch")
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        self.checked_sub(o).expect("ambient size mismatch")
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        self.checked_mul(o).expect("ambient size mismatch")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exp: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: usize,
    pub chart: Chart,
    pub terms: Vec<TermJson>,
}

/// Min-plus shadow of a subtraction-free Laurent polynomial: `t ↦ min_u ⟨u, t⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalForm {
    nvars: usize,
    forms: Vec<(ExponentVector, Rational)>,
}

impl TropicalForm {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Linear forms with their merged coefficient annotations, in lexicographic order.
    pub fn forms(&self) -> &[(ExponentVector, Rational)] {
        &self.forms
    }

    pub fn vectors(&self) -> Vec<Vec<i64>> {
        self.forms.iter().map(|(e, _)| e.as_i64()).collect()
    }

    /// `None` for the empty form (tropical zero, +∞).
    pub fn eval(&self, t: &[i64]) -> Option<i64> {
        self.forms.iter().map(|(e, _)| e.dot(t)).min()
    }

    /// Largest coefficient annotation, used by the multiplicity conjecture checks.
    pub fn max_coeff(&self) -> Option<&Rational> {
        self.forms.iter().map(|(_, c)| c).max()
    }
}

/// Coefficient of an integer-valued rational, for reporting.
pub fn rational_to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> LaurentPolynomial {
        LaurentPolynomial::parse(s, n).unwrap()
    }

    #[test]
    fn basic_arithmetic() {
        let a = p("x1 + x2", 2);
        let b = p("x1 - x2", 2);
        assert_eq!(&a * &b, p("x1^2 - x2^2", 2));
        assert!((&a + &(-&a)).is_zero());
        let q = p("x1*x2^-1 + x1", 2);
        let r = q.divide_by_monomial(&ExponentVector(vec![1, 0])).unwrap();
        assert_eq!(r, p("x2^-1 + 1", 2));
        assert!(a.checked_add(&p("x1", 3)).is_err());
        assert!(q.divide_by_monomial(&ExponentVector(vec![1])).is_err());
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let q = p("2*X9^-1*X5^-1 + 1/3*X2 - X1^-2 + 5", 9);
        let again = LaurentPolynomial::parse(&q.to_string(), 9).unwrap();
        assert_eq!(q, again);
        assert_eq!(p("x3", 3).to_string(), "x3");
        assert_eq!(LaurentPolynomial::zero(2, Chart::X).to_string(), "0");
    }

    #[test]
    fn json_roundtrip() {
        let q = p("x1 + 1/2*x2*x3^-1", 3);
        let j = serde_json::to_string(&q.to_json()).unwrap();
        assert_eq!(j, r#"{"vars":3,"chart":"x","terms":[{"coeff":"1/2","exp":[0,1,-1]},{"coeff":"1","exp":[1,0,0]}]}"#);
        let back: PolyJson = serde_json::from_str(&j).unwrap();
        assert_eq!(LaurentPolynomial::from_json(&back).unwrap(), q);
    }

    #[test]
    fn monomial_substitution() {
        // ĈA matrix of A2 word (1,2,1)
        let e = vec![vec![-1, 1, -1], vec![0, -1, 1], vec![0, 0, -1]];
        let w = p("X2^-1", 3);
        assert_eq!(w.substitute_monomials(&e).unwrap(), p("x2*x3^-1", 3));
        let w2 = p("X2^-1 + X1^-1*X2^-1", 3);
        assert_eq!(w2.substitute_monomials(&e).unwrap(), p("x2*x3^-1 + x1", 3));
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(w2.substitute_monomials(&id).unwrap(), w2.clone().with_chart(Chart::Lower));
        assert!(w2.substitute_monomials(&id[..2]).is_err());
    }

    #[test]
    fn substitution_matches_expansion() {
        let e = vec![vec![-1, 1, -1], vec![0, -1, 1], vec![0, 0, -1]];
        let images: Vec<LaurentPolynomial> = e
            .iter()
            .map(|row| {
                LaurentPolynomial::monomial(
                    3,
                    Chart::Lower,
                    rat(1),
                    ExponentVector(row.iter().map(|&x| x as i32).collect()),
                )
            })
            .collect();
        let w = p("X2^-1 + X1^-1*X2^-1 + 3*X1^2*X3", 3);
        assert_eq!(w.compose(&images).unwrap(), w.substitute_monomials(&e).unwrap());
    }

    #[test]
    fn tropical() {
        let q = p("x1 + x2*x3^-1", 3);
        let t = q.tropicalize().unwrap();
        assert_eq!(t.vectors(), vec![vec![0, 1, -1], vec![1, 0, 0]]);
        assert_eq!(t.eval(&[0, 1, 0]), Some(0));
        let m = p("x3", 3).tropicalize().unwrap();
        assert_eq!(m.eval(&[4, 5, 7]), Some(7));
        assert!(p("x1 - x2", 2).tropicalize().is_err());
        assert!(q.is_multiplicity_free());
        assert!(!p("x1^2", 1).is_multiplicity_free());
        assert!(LaurentPolynomial::zero(3, Chart::X).is_multiplicity_free());
    }

    #[test]
    fn division() {
        let a = p("1 + X1", 2);
        let b = p("X2^-1 + X1*X2^-1 + X1^-1", 2);
        let prod = &(&a * &a) * &b;
        assert_eq!(prod.div_one_plus_var(0, 2).unwrap(), b);
        assert!(b.div_one_plus_var(0, 1).is_err());
        let f = p("1 + x1 + x2 + x1*x2^2", 2);
        let g = p("x1^-1 + 3*x2", 2);
        assert_eq!((&f * &g).exact_div(&g).unwrap(), Some(f.clone()));
        assert_eq!((&f * &g).exact_div(&f).unwrap(), Some(g.clone()));
        assert_eq!(f.exact_div(&g).unwrap(), None);
        assert_eq!(p("1 + x1^2", 1).exact_div(&p("1 + x1", 1)).unwrap(), None);
    }
}
