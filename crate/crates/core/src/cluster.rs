//! Seeds attached to reduced words, mutation, and potentials on cluster charts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{CartanDatum, Move, MoveSequence, Word, DEFAULT_BFS_CAP};
use crate::poly::{Chart, ExponentVector, LaurentPolynomial, Rational};
use num_traits::One;

/// Arrow-direction conventions for the quiver of a reduced word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedConvention {
    /// Reverse type (ii) arrows (`k → ℓ` instead of `ℓ → k`).
    pub reverse_type_ii: bool,
    /// Require `c_{i_k,i_ℓ} ≠ 0` for type (ii) arrows.
    pub cartan_filter: bool,
}

impl Default for SeedConvention {
    fn default() -> Self {
        SeedConvention { reverse_type_ii: false, cartan_filter: true }
    }
}

/// Skew-symmetric exchange matrix with a frozen mask. `omega[k][l] > 0` counts arrows `k → l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    omega: Vec<Vec<i64>>,
    frozen: Vec<bool>,
    word: Option<Word>,
}

impl Seed {
    pub fn new(omega: Vec<Vec<i64>>, frozen: Vec<bool>) -> Result<Self> {
        let n = omega.len();
        if frozen.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: frozen.len() });
        }
        for (k, row) in omega.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            for l in 0..n {
                if row[l] != -omega[l][k] {
                    return Err(Error::Parse(format!("exchange matrix not skew-symmetric at ({}, {})", k + 1, l + 1)));
                }
            }
        }
        let mut s = Seed { omega, frozen, word: None };
        s.erase_frozen_arrows();
        Ok(s)
    }

    pub fn from_word(c: &CartanDatum, w: &Word) -> Result<Self> {
        Self::from_word_with(c, w, SeedConvention::default())
    }

    pub fn from_word_with(c: &CartanDatum, w: &Word, conv: SeedConvention) -> Result<Self> {
        c.require_longest(w)?;
        let n = w.len();
        let kp = w.k_plus_all();
        let l = w.letters();
        let mut omega = vec![vec![0i64; n]; n];
        for k in 0..n {
            for m in k + 1..n {
                if m == kp[k] {
                    omega[k][m] += 1;
                    omega[m][k] -= 1;
                } else if m < kp[k] && kp[k] < kp[m] && (!conv.cartan_filter || c.c(l[k], l[m]) != 0) {
                    let (a, b) = if conv.reverse_type_ii { (k, m) } else { (m, k) };
                    omega[a][b] += 1;
                    omega[b][a] -= 1;
                }
            }
        }
        let frozen = kp.iter().map(|&x| x == n).collect();
        let mut s = Seed { omega, frozen, word: Some(w.clone()) };
        s.erase_frozen_arrows();
        Ok(s)
    }

    fn erase_frozen_arrows(&mut self) {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                if self.frozen[i] && self.frozen[j] {
                    self.omega[i][j] = 0;
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn omega(&self) -> &[Vec<i64>] {
        &self.omega
    }

    #[inline]
    pub fn b(&self, i: usize, j: usize) -> i64 {
        self.omega[i][j]
    }

    pub fn is_frozen(&self, k: usize) -> bool {
        self.frozen[k]
    }

    pub fn frozen_mask(&self) -> &[bool] {
        &self.frozen
    }

    pub fn frozen(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.frozen[k]).collect()
    }

    pub fn word(&self) -> Option<&Word> {
        self.word.as_ref()
    }

    pub fn mutate(&self, k: usize) -> Result<Seed> {
        if self.frozen[k] {
            return Err(Error::FrozenMutation(k + 1));
        }
        let n = self.len();
        let o = &self.omega;
        let mut p = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                p[i][j] =
                    if i == k || j == k { -o[i][j] } else { o[i][j] + o[i][k].signum() * (o[i][k] * o[k][j]).max(0) };
            }
        }
        let mut s = Seed { omega: p, frozen: self.frozen.clone(), word: None };
        s.erase_frozen_arrows();
        Ok(s)
    }

    /// Exchanges the labels of vertices `a` and `b`.
    pub fn swap(&self, a: usize, b: usize) -> Seed {
        let n = self.len();
        let perm: Vec<usize> = (0..n)
            .map(|i| {
                if i == a {
                    b
                } else if i == b {
                    a
                } else {
                    i
                }
            })
            .collect();
        self.relabel(&perm)
    }

    /// Vertex `i` becomes vertex `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Seed {
        let n = self.len();
        let mut p = vec![vec![0i64; n]; n];
        let mut fr = vec![false; n];
        for i in 0..n {
            fr[perm[i]] = self.frozen[i];
            for j in 0..n {
                p[perm[i]][perm[j]] = self.omega[i][j];
            }
        }
        Seed { omega: p, frozen: fr, word: None }
    }

    pub fn apply_step(&self, step: &MutationStep) -> Result<Seed> {
        let mut s = match step.vertex {
            Some(k) => self.mutate(k)?,
            None => self.clone(),
        };
        if let Some((a, b)) = step.swap {
            s = s.swap(a, b);
        }
        Ok(s)
    }

    /// Every arrow between `f` and a mutable vertex points into `f`.
    pub fn is_optimized_for(&self, f: usize) -> bool {
        self.frozen[f] && (0..self.len()).all(|j| self.frozen[j] || self.omega[j][f] >= 0)
    }

    pub fn optimized_frozen(&self) -> Vec<usize> {
        self.frozen().into_iter().filter(|&f| self.is_optimized_for(f)).collect()
    }

    pub fn same_quiver(&self, o: &Seed) -> bool {
        self.omega == o.omega && self.frozen == o.frozen
    }

    pub fn to_json(&self) -> SeedJson {
        SeedJson {
            n: self.len(),
            omega: self.omega.clone(),
            frozen: self.frozen().iter().map(|k| k + 1).collect(),
            word: self.word.as_ref().map(|w| w.one_based()),
        }
    }

    pub fn from_json(j: &SeedJson) -> Result<Self> {
        let mut frozen = vec![false; j.n];
        for &f in &j.frozen {
            if f == 0 || f > j.n {
                return Err(Error::Parse(format!("frozen vertex {f} out of range")));
            }
            frozen[f - 1] = true;
        }
        let mut s = Seed::new(j.omega.clone(), frozen)?;
        s.word = j.word.as_ref().map(|w| Word::from_one_based(w)).transpose()?;
        Ok(s)
    }

    /// Pull a polynomial in the chart of `μ_k(self)` back to the chart of `self`.
    pub fn pullback_x(&self, p: &LaurentPolynomial, k: usize) -> Result<LaurentPolynomial> {
        pullback_x(p, self, k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    pub n: usize,
    pub omega: Vec<Vec<i64>>,
    pub frozen: Vec<usize>,
    pub word: Option<Vec<usize>>,
}

/// A mutation (if any) followed by a relabeling swap (if any).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationStep {
    pub vertex: Option<usize>,
    pub swap: Option<(usize, usize)>,
}

impl MutationStep {
    /// Seed-level translation of a braid move: a 3-term move at `k` is `μ_{k−1}` then
    /// the swap of `k, k+1`; a 2-term move at `k` is the swap alone.
    pub fn from_move(m: Move) -> Self {
        match m {
            Move::Commute(k) => MutationStep { vertex: None, swap: Some((k, k + 1)) },
            Move::Braid(k) => MutationStep { vertex: Some(k - 1), swap: Some((k, k + 1)) },
        }
    }
}

impl std::fmt::Display for MutationStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.vertex {
            Some(k) => write!(f, "mutate v{}", k + 1)?,
            None => f.write_str("relabel")?,
        }
        if let Some((a, b)) = self.swap {
            write!(f, ", swap v{} <-> v{}", a + 1, b + 1)?;
        }
        Ok(())
    }
}

/// X-pullback through `μ_k`: `X_k' ↦ X_k^{-1}`, `X_i' ↦ X_i (1 + X_k^{−sgn Ω_ik})^{−Ω_ik}`.
pub fn pullback_x(p: &LaurentPolynomial, s: &Seed, k: usize) -> Result<LaurentPolynomial> {
    let n = s.len();
    if p.nvars() != n {
        return Err(Error::DimensionMismatch { expected: n, found: p.nvars() });
    }
    if s.is_frozen(k) {
        return Err(Error::FrozenMutation(k + 1));
    }
    if p.is_zero() {
        return Ok(p.clone());
    }
    // X'^a = X^m (1 + X_k)^e with e = −Σ_{i≠k} Ω_ik a_i.
    let mut groups: std::collections::BTreeMap<i64, LaurentPolynomial> = std::collections::BTreeMap::new();
    for (a, c) in p.terms() {
        let mut m = a.0.clone();
        m[k] = -a.0[k];
        let mut e = 0i64;
        for i in 0..n {
            if i == k {
                continue;
            }
            let b = s.b(i, k);
            e -= b * i64::from(a.0[i]);
            m[k] += (b.max(0) * i64::from(a.0[i])) as i32;
        }
        groups.entry(e).or_insert_with(|| LaurentPolynomial::zero(n, p.chart())).add_term(ExponentVector(m), c.clone());
    }
    let emin = *groups.keys().next().unwrap();
    let emax = *groups.keys().next_back().unwrap();
    let one_plus = &LaurentPolynomial::one(n, p.chart()) + &LaurentPolynomial::var(n, p.chart(), k, 1);
    let base = emin.min(0);
    let mut total = LaurentPolynomial::zero(n, p.chart());
    // Horner-style accumulation of Σ q_e (1+X_k)^{e − base}.
    let mut e = emax;
    loop {
        if let Some(q) = groups.get(&e) {
            total = &total + q;
        }
        if e == base {
            break;
        }
        total = &total * &one_plus;
        e -= 1;
    }
    if base < 0 {
        total = total
            .div_one_plus_var(k, (-base) as u32)
            .map_err(|_| Error::Convention(format!("pullback through mutation at v{} is not Laurent", k + 1)))?;
    }
    Ok(total)
}

/// A-cluster exchange: `A_k' = (∏_{Ω_jk>0} A_j^{Ω_jk} + ∏_{Ω_jk<0} A_j^{−Ω_jk}) / A_k`.
pub fn mutate_a(a: &[LaurentPolynomial], s: &Seed, k: usize) -> Result<Vec<LaurentPolynomial>> {
    let n = s.len();
    if a.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a.len() });
    }
    if s.is_frozen(k) {
        return Err(Error::FrozenMutation(k + 1));
    }
    let m = a[k].nvars();
    let chart = a[k].chart();
    let mut pos = LaurentPolynomial::one(m, chart);
    let mut neg = LaurentPolynomial::one(m, chart);
    for j in 0..n {
        let b = s.b(j, k);
        if b > 0 {
            pos = pos.checked_mul(&a[j].pow(b as u32))?;
        } else if b < 0 {
            neg = neg.checked_mul(&a[j].pow((-b) as u32))?;
        }
    }
    let num = pos.checked_add(&neg)?;
    let q =
        num.exact_div(&a[k])?.ok_or_else(|| Error::Convention(format!("A-exchange at v{} is not Laurent", k + 1)))?;
    let mut out = a.to_vec();
    out[k] = q;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptSequence {
    pub target_word: Word,
    pub moves: MoveSequence,
    pub steps: Vec<MutationStep>,
}

/// Shortest move path from `i` to a word ending in `letter`, and its seed translation.
pub fn opt_sequence(c: &CartanDatum, i: &Word, letter: usize) -> Result<OptSequence> {
    c.require_longest(i)?;
    c.check_letter(letter)?;
    let moves = c
        .bfs(i, |w| w.last() == Some(letter), |_, _| true, DEFAULT_BFS_CAP)?
        .expect("a reduced word of w0 ending in any letter exists");
    from_moves(c, moves)
}

fn from_moves(c: &CartanDatum, moves: MoveSequence) -> Result<OptSequence> {
    let target_word = moves.target(c)?;
    let steps = moves.moves.iter().map(|&m| MutationStep::from_move(m)).collect();
    Ok(OptSequence { target_word, moves, steps })
}

/// Potential summand of `letter` in the chart of `Σ_i`.
pub fn potential(c: &CartanDatum, i: &Word, letter: usize) -> Result<LaurentPolynomial> {
    let seq = opt_sequence(c, i, letter)?;
    potential_along(c, &seq.moves)
}

/// Pulls `X_N^{-1}` back along a move sequence whose target word ends in the letter.
pub fn potential_along(c: &CartanDatum, moves: &MoveSequence) -> Result<LaurentPolynomial> {
    let words = moves.words(c)?;
    let n = moves.source.len();
    c.require_longest(&moves.source)?;
    let mut p = LaurentPolynomial::var(n, Chart::X, n - 1, -1);
    for t in (0..moves.moves.len()).rev() {
        let m = moves.moves[t];
        let k = m.position();
        p = p.swap_vars(k, k + 1);
        if let Move::Braid(_) = m {
            let s = Seed::from_word(c, &words[t])?;
            p = pullback_x(&p, &s, k - 1)?;
        }
    }
    Ok(p)
}

/// Potential computed along the shortest path to a specific target word.
pub fn potential_via_target(c: &CartanDatum, i: &Word, target: &Word) -> Result<LaurentPolynomial> {
    let path = c.move_path(i, target)?;
    potential_along(c, &path)
}

/// Potential of frozen vertex `f` along an explicit mutation sequence that ends
/// in a seed optimized for `f`.
pub fn potential_via_mutations(seed: &Seed, vertices: &[usize], f: usize) -> Result<LaurentPolynomial> {
    let mut seeds = vec![seed.clone()];
    for &k in vertices {
        let next = seeds.last().unwrap().mutate(k)?;
        seeds.push(next);
    }
    let last = seeds.last().unwrap();
    if !last.is_optimized_for(f) {
        return Err(Error::Convention(format!("mutation sequence does not optimize v{}", f + 1)));
    }
    let n = seed.len();
    let mut p = LaurentPolynomial::var(n, Chart::X, f, -1);
    for (t, &k) in vertices.iter().enumerate().rev() {
        p = pullback_x(&p, &seeds[t], k)?;
    }
    Ok(p)
}

/// One human-readable line per step of the optimized sequence.
pub fn trace_lines(c: &CartanDatum, i: &Word, letter: usize) -> Result<Vec<String>> {
    let seq = opt_sequence(c, i, letter)?;
    let words = seq.moves.words(c)?;
    Ok(seq
        .moves
        .moves
        .iter()
        .zip(&seq.steps)
        .enumerate()
        .map(|(t, (m, s))| format!("step {}: {} on {} -> {}; {}", t + 1, m, words[t], words[t + 1], s))
        .collect())
}

/// c-vectors (columns) and F-polynomials with principal coefficients at the initial seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalData {
    pub seed: Seed,
    /// `c[j][k]`: entry `j` of the c-vector of vertex `k`.
    pub c: Vec<Vec<i64>>,
    pub f: Vec<LaurentPolynomial>,
}

impl PrincipalData {
    pub fn initial(seed: &Seed) -> Self {
        let n = seed.len();
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 1;
        }
        let f = (0..n).map(|_| LaurentPolynomial::one(n, Chart::X)).collect();
        PrincipalData { seed: seed.clone(), c, f }
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        let s = &self.seed;
        let n = s.len();
        let new_seed = s.mutate(k)?;
        let y = |j: usize, e: i64| LaurentPolynomial::var(n, Chart::X, j, e as i32);
        let mut pos = LaurentPolynomial::one(n, Chart::X);
        let mut neg = LaurentPolynomial::one(n, Chart::X);
        for j in 0..n {
            let cjk = self.c[j][k];
            if cjk > 0 {
                pos = &pos * &y(j, cjk);
            } else if cjk < 0 {
                neg = &neg * &y(j, -cjk);
            }
            let b = s.b(j, k);
            if b > 0 {
                pos = &pos * &self.f[j].pow(b as u32);
            } else if b < 0 {
                neg = &neg * &self.f[j].pow((-b) as u32);
            }
        }
        let fk = (&pos + &neg)
            .exact_div(&self.f[k])?
            .ok_or_else(|| Error::Convention(format!("F-polynomial at v{} is not a polynomial", k + 1)))?;
        let mut f = self.f.clone();
        f[k] = fk;
        let mut c = self.c.clone();
        for j in 0..n {
            let cjk = self.c[j][k];
            for l in 0..n {
                c[j][l] = if l == k { -cjk } else { self.c[j][l] + cjk.signum() * (cjk * s.b(k, l)).max(0) };
            }
        }
        Ok(PrincipalData { seed: new_seed, c, f })
    }

    pub fn swap(&self, a: usize, b: usize) -> Self {
        let mut c = self.c.clone();
        for row in c.iter_mut() {
            row.swap(a, b);
        }
        let mut f = self.f.clone();
        f.swap(a, b);
        PrincipalData { seed: self.seed.swap(a, b), c, f }
    }

    pub fn apply_step(&self, step: &MutationStep) -> Result<Self> {
        let mut d = match step.vertex {
            Some(k) => self.mutate(k)?,
            None => self.clone(),
        };
        if let Some((a, b)) = step.swap {
            d = d.swap(a, b);
        }
        Ok(d)
    }

    pub fn sign_coherent(&self) -> bool {
        let n = self.c.len();
        (0..n).all(|k| {
            let col = (0..n).map(|j| self.c[j][k]);
            col.clone().all(|x| x >= 0) || col.clone().all(|x| x <= 0)
        })
    }

    pub fn constant_terms_one(&self) -> bool {
        self.f.iter().all(|p| p.constant_term().is_one())
    }
}

pub fn principal_tracking(c: &CartanDatum, i: &Word, steps: &[MutationStep]) -> Result<PrincipalData> {
    let seed = Seed::from_word(c, i)?;
    let mut d = PrincipalData::initial(&seed);
    for s in steps {
        d = d.apply_step(s)?;
    }
    Ok(d)
}

/// Potential assembled from c-vectors and F-polynomials:
/// `W = ∏_j X_j^{−c_{j,f}} · ∏_j F_j(X^{-1})^{Ω_t[j][f]}` at the optimized seed.
pub fn potential_via_separation(c: &CartanDatum, i: &Word, letter: usize) -> Result<LaurentPolynomial> {
    let seq = opt_sequence(c, i, letter)?;
    let d = principal_tracking(c, i, &seq.steps)?;
    let n = i.len();
    let f = n - 1;
    if !d.seed.is_optimized_for(f) {
        return Err(Error::Convention(format!("final seed is not optimized for v{}", f + 1)));
    }
    let mono = ExponentVector((0..n).map(|j| -(d.c[j][f] as i32)).collect());
    let mut w = LaurentPolynomial::monomial(n, Chart::X, Rational::one(), mono);
    let mut den = LaurentPolynomial::one(n, Chart::X);
    for j in 0..n {
        let e = d.seed.b(j, f);
        let fj = d.f[j].invert_vars();
        if e > 0 {
            w = &w * &fj.pow(e as u32);
        } else if e < 0 {
            den = &den * &fj.pow((-e) as u32);
        }
    }
    w.exact_div(&den)?
        .ok_or_else(|| Error::Convention("separation formula did not produce a Laurent polynomial".into()))
}
