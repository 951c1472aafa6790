//! Simply-laced Cartan data, Weyl group elements, reduced words and braid moves.
//!
//! Letters and positions are 0-based in memory. Text forms (`Display`, `FromStr`)
//! use the 1-based labels of the Dynkin diagram.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
        };
        f.write_str(s)
    }
}

/// Simply-laced Cartan matrix together with its positive roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    family: Family,
    rank: usize,
    matrix: Vec<Vec<i64>>,
    roots: Vec<PositiveRoot>,
}

impl CartanDatum {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let valid = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !valid {
            return Err(Error::InvalidCartanType { family: family.to_string(), rank });
        }
        let edges: Vec<(usize, usize)> = match family {
            Family::A => (0..rank - 1).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e: Vec<_> = (0..rank - 3).map(|i| (i, i + 1)).collect();
                e.push((rank - 3, rank - 2));
                e.push((rank - 3, rank - 1));
                e
            }
            Family::E => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..rank - 1).map(|i| (i, i + 1)));
                e
            }
        };
        let mut matrix = vec![vec![0i64; rank]; rank];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in edges {
            matrix[a][b] = -1;
            matrix[b][a] = -1;
        }
        let roots = positive_roots_of(&matrix);
        Ok(CartanDatum { family, rank, matrix, roots })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.roots
    }

    /// Length of the longest element, i.e. the number of positive roots.
    pub fn num_positive_roots(&self) -> usize {
        self.roots.len()
    }

    /// Order of the Weyl group, saturating at `u128::MAX` (never reached for A/D/E at sane ranks).
    pub fn weyl_order(&self) -> u128 {
        let fact = |m: usize| (1..=m as u128).fold(1u128, |a, b| a.saturating_mul(b));
        match (self.family, self.rank) {
            (Family::A, n) => fact(n + 1),
            (Family::D, n) => (1u128 << (n - 1)).saturating_mul(fact(n)),
            (Family::E, 6) => 51_840,
            (Family::E, 7) => 2_903_040,
            (Family::E, _) => 696_729_600,
        }
    }

    pub fn check_letter(&self, letter: usize) -> Result<()> {
        if letter >= self.rank {
            return Err(Error::LetterOutOfRange { letter: letter + 1, rank: self.rank });
        }
        Ok(())
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        w.0.iter().try_for_each(|&l| self.check_letter(l))
    }

    /// Simple reflection on a weight in the fundamental-weight basis.
    pub fn reflect_weight(&self, i: usize, v: &mut [i64]) {
        let vi = v[i];
        if vi != 0 {
            for (j, x) in v.iter_mut().enumerate() {
                *x -= self.matrix[i][j] * vi;
            }
        }
    }

    /// Simple reflection on a root-lattice vector in simple-root coordinates.
    pub fn reflect_root(&self, i: usize, v: &mut [i64]) {
        let s: i64 = (0..self.rank).map(|j| self.matrix[i][j] * v[j]).sum();
        v[i] -= s;
    }

    /// Simple root `α_i` written in the fundamental-weight basis.
    pub fn simple_root_weight(&self, i: usize) -> Vec<i64> {
        self.matrix[i].clone()
    }

    pub fn longest_element(&self) -> WeylElement {
        WeylElement::from_word(self, &self.longest_word())
    }

    /// Lexicographically smallest reduced word of `w₀`.
    pub fn longest_word(&self) -> Word {
        let v = vec![-1i64; self.rank];
        first_reduced_word(self, v)
    }

    /// Image of `letter` under `i ↦ i*` where `w₀ω_i = −ω_{i*}`.
    pub fn i_star(&self, letter: usize) -> usize {
        let w0 = self.longest_element();
        let col: Vec<i64> = (0..self.rank).map(|j| -w0.matrix[j][letter]).collect();
        col.iter().position(|&x| x == 1).expect("-w0 permutes the fundamental weights")
    }

    pub fn is_minuscule(&self, letter: usize) -> bool {
        self.roots.iter().all(|r| r.0[letter] <= 1)
    }

    /// Longest element of the parabolic subgroup generated by `nodes`, lexicographically first word.
    pub fn parabolic_longest(&self, nodes: &[usize]) -> Word {
        let mut v = vec![1i64; self.rank];
        while let Some(&j) = nodes.iter().find(|&&j| v[j] > 0) {
            self.reflect_weight(j, &mut v);
        }
        first_reduced_word(self, v)
    }

    /// Minimal coset data for `letter`: the longest word of the parabolic subgroup
    /// generated by the other letters, and the minimal representative `u` of
    /// `W_J s_i w₀`.
    pub fn coset_data(&self, letter: usize) -> CosetData {
        let n = self.rank;
        let in_j = |j: usize| j != letter;
        let nodes: Vec<usize> = (0..n).filter(|&j| in_j(j)).collect();
        let parabolic_longest = self.parabolic_longest(&nodes);

        let mut v = vec![-1i64; n];
        self.reflect_weight(letter, &mut v);
        while let Some(j) = (0..n).find(|&j| in_j(j) && v[j] < 0) {
            self.reflect_weight(j, &mut v);
        }
        let u = first_reduced_word(self, v);
        CosetData { parabolic_longest, u }
    }

    /// Parse a word given in 1-based text form and check its letters.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let w: Word = s.parse()?;
        self.check_word(&w)?;
        Ok(w)
    }

    pub fn word_props(&self, w: &Word) -> Result<WordProps> {
        self.check_word(w)?;
        let element = WeylElement::from_word(self, w);
        let length = element.length();
        Ok(WordProps { reduced: length == w.len(), length, element })
    }

    pub fn is_reduced(&self, w: &Word) -> bool {
        self.check_word(w).is_ok() && self.convex_order_unchecked(w).iter().all(|b| b.iter().all(|&x| x >= 0))
    }

    pub fn is_longest_word(&self, w: &Word) -> bool {
        w.len() == self.num_positive_roots() && self.is_reduced(w)
    }

    pub fn require_longest(&self, w: &Word) -> Result<()> {
        self.check_word(w)?;
        if !self.is_longest_word(w) {
            if !self.is_reduced(w) {
                return Err(Error::NotReduced(w.to_string()));
            }
            return Err(Error::NotLongest(w.to_string()));
        }
        Ok(())
    }

    fn convex_order_unchecked(&self, w: &Word) -> Vec<Vec<i64>> {
        let n = self.rank;
        (0..w.len())
            .map(|k| {
                let mut v = vec![0i64; n];
                v[w.0[k]] = 1;
                for t in (0..k).rev() {
                    self.reflect_root(w.0[t], &mut v);
                }
                v
            })
            .collect()
    }

    /// `β_k = s_{i_1}⋯s_{i_{k−1}}(α_{i_k})` for a reduced word.
    pub fn convex_order(&self, w: &Word) -> Result<Vec<PositiveRoot>> {
        self.check_word(w)?;
        let order = self.convex_order_unchecked(w);
        if order.iter().any(|b| b.iter().any(|&x| x < 0)) {
            return Err(Error::NotReduced(w.to_string()));
        }
        Ok(order.into_iter().map(PositiveRoot).collect())
    }

    /// Reduced words of `w` in lexicographic order.
    pub fn reduced_words(&self, w: &WeylElement) -> ReducedWords<'_> {
        ReducedWords::new(self, w.rho_image())
    }

    pub fn all_longest_words(&self) -> ReducedWords<'_> {
        ReducedWords::new(self, vec![-1; self.rank])
    }

    pub fn apply_move(&self, w: &Word, mv: Move) -> Result<Word> {
        let bad = || Error::IllegalMove { mv: mv.to_string(), word: w.to_string() };
        let l = &w.0;
        let mut out = l.clone();
        match mv {
            Move::Commute(k) => {
                if k + 1 >= l.len() || self.c(l[k], l[k + 1]) != 0 {
                    return Err(bad());
                }
                out.swap(k, k + 1);
            }
            Move::Braid(k) => {
                if k == 0 || k + 1 >= l.len() || l[k - 1] != l[k + 1] || self.c(l[k], l[k + 1]) != -1 {
                    return Err(bad());
                }
                let (a, b) = (l[k - 1], l[k]);
                out[k - 1] = b;
                out[k] = a;
                out[k + 1] = b;
            }
        }
        Ok(Word(out))
    }

    /// All legal moves out of `w`, sorted by the resulting word.
    pub fn neighbors(&self, w: &Word) -> Vec<(Word, Move)> {
        let l = &w.0;
        let mut out = Vec::new();
        for k in 0..l.len().saturating_sub(1) {
            if self.c(l[k], l[k + 1]) == 0 {
                let mut v = l.clone();
                v.swap(k, k + 1);
                out.push((Word(v), Move::Commute(k)));
            }
        }
        for k in 1..l.len().saturating_sub(1) {
            if l[k - 1] == l[k + 1] && self.c(l[k], l[k + 1]) == -1 {
                let mut v = l.clone();
                let (a, b) = (l[k - 1], l[k]);
                v[k - 1] = b;
                v[k] = a;
                v[k + 1] = b;
                out.push((Word(v), Move::Braid(k)));
            }
        }
        out.sort();
        out
    }

    /// Breadth-first search in the word graph for the first word satisfying `goal`.
    /// `allow` filters moves; neighbors are visited in lexicographic order.
    pub fn bfs<G, A>(&self, start: &Word, goal: G, allow: A, cap: usize) -> Result<Option<MoveSequence>>
    where
        G: Fn(&Word) -> bool,
        A: Fn(&Word, Move) -> bool,
    {
        let mut prev: HashMap<Word, Option<(Word, Move)>> = HashMap::new();
        prev.insert(start.clone(), None);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(u) = queue.pop_front() {
            if goal(&u) {
                let mut moves = Vec::new();
                let mut x = u;
                while let Some((p, m)) = prev[&x].clone() {
                    moves.push(m);
                    x = p;
                }
                moves.reverse();
                return Ok(Some(MoveSequence { source: start.clone(), moves }));
            }
            for (nb, mv) in self.neighbors(&u) {
                if prev.contains_key(&nb) || !allow(&u, mv) {
                    continue;
                }
                if prev.len() >= cap {
                    return Err(Error::SizeLimit(format!("word graph search exceeded {cap} words")));
                }
                prev.insert(nb.clone(), Some((u.clone(), mv)));
                queue.push_back(nb);
            }
        }
        Ok(None)
    }

    /// Shortest move sequence from `i` to `j`.
    pub fn move_path(&self, i: &Word, j: &Word) -> Result<MoveSequence> {
        let pi = self.word_props(i)?;
        let pj = self.word_props(j)?;
        if !pi.reduced {
            return Err(Error::NotReduced(i.to_string()));
        }
        if !pj.reduced {
            return Err(Error::NotReduced(j.to_string()));
        }
        if pi.element != pj.element {
            return Err(Error::DifferentElements(i.to_string(), j.to_string()));
        }
        self.bfs(i, |w| w == j, |_, _| true, DEFAULT_BFS_CAP)?
            .ok_or_else(|| Error::DifferentElements(i.to_string(), j.to_string()))
    }
}

/// Default bound on visited words in word-graph searches.
pub const DEFAULT_BFS_CAP: usize = 5_000_000;

impl FromStr for CartanDatum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(Error::Parse(format!("unknown Cartan type '{s}'"))),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::Parse(format!("bad rank in Cartan type '{s}'")))?;
        CartanDatum::new(fam, rank)
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Positive roots of an arbitrary simply-laced Cartan matrix, sorted.
pub fn positive_roots_of(matrix: &[Vec<i64>]) -> Vec<PositiveRoot> {
    let n = matrix.len();
    let mut seen = std::collections::BTreeSet::new();
    let mut stack: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    while let Some(r) = stack.pop() {
        if !seen.insert(r.clone()) {
            continue;
        }
        for i in 0..n {
            let mut s = r.clone();
            let d: i64 = (0..n).map(|j| matrix[i][j] * r[j]).sum();
            s[i] -= d;
            if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) {
                stack.push(s);
            }
        }
    }
    seen.into_iter().map(PositiveRoot).collect()
}

fn first_reduced_word(c: &CartanDatum, v: Vec<i64>) -> Word {
    ReducedWords::new(c, v).next().expect("every element has a reduced word")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetData {
    pub parabolic_longest: Word,
    pub u: Word,
}

#[derive(Debug, Clone)]
pub struct WordProps {
    pub element: WeylElement,
    pub reduced: bool,
    pub length: usize,
}

/// Sequence of letters, 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn from_one_based(letters: &[usize]) -> Result<Self> {
        letters
            .iter()
            .map(|&l| l.checked_sub(1).ok_or_else(|| Error::Parse("letters are 1-based".into())))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&l| l + 1).collect()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// `k⁺`: next position carrying the same letter, or `len()` if none.
    pub fn k_plus(&self, k: usize) -> usize {
        let l = self.0[k];
        (k + 1..self.len()).find(|&j| self.0[j] == l).unwrap_or(self.len())
    }

    pub fn k_plus_all(&self) -> Vec<usize> {
        (0..self.len()).map(|k| self.k_plus(k)).collect()
    }

    /// Position of the last occurrence of `letter`.
    pub fn last_occurrence(&self, letter: usize) -> Option<usize> {
        self.0.iter().rposition(|&l| l == letter)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .split(|c: char| c.is_whitespace() || c == ',' || c == '(' || c == ')' || c == '[' || c == ']')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad letter '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        Word::from_one_based(&letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| (l + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Weyl group element as an integer matrix on the weight lattice (fundamental-weight basis).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    matrix: Vec<Vec<i64>>,
    length: usize,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        let mut m = vec![vec![0; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        WeylElement { matrix: m, length: 0 }
    }

    pub fn from_word(c: &CartanDatum, w: &Word) -> Self {
        let n = c.rank();
        let mut m = Self::identity(n).matrix;
        // Right multiplication by s_i acts on column i.
        for &i in &w.0 {
            for row in m.iter_mut() {
                row[i] -= (0..n).map(|j| c.c(i, j) * row[j]).sum::<i64>();
            }
        }
        let mut e = WeylElement { matrix: m, length: 0 };
        e.length = e.compute_length(c);
        e
    }

    fn compute_length(&self, c: &CartanDatum) -> usize {
        let wr = self.rho_image();
        c.positive_roots().iter().filter(|b| b.0.iter().zip(&wr).map(|(x, y)| x * y).sum::<i64>() < 0).count()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// `wρ` in the fundamental-weight basis.
    pub fn rho_image(&self) -> Vec<i64> {
        self.matrix.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.matrix.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn left_descents(&self) -> Vec<usize> {
        self.rho_image().iter().enumerate().filter(|(_, &x)| x < 0).map(|(i, _)| i).collect()
    }
}

/// Lazy lexicographic enumeration of reduced words, driven by the `wρ` vector.
pub struct ReducedWords<'a> {
    c: &'a CartanDatum,
    stack: Vec<(Vec<i64>, usize)>,
    prefix: Vec<usize>,
    done: bool,
}

impl<'a> ReducedWords<'a> {
    fn new(c: &'a CartanDatum, v: Vec<i64>) -> Self {
        ReducedWords { c, stack: vec![(v, 0)], prefix: Vec::new(), done: false }
    }
}

impl Iterator for ReducedWords<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let n = self.c.rank();
        while let Some((v, next)) = self.stack.last_mut() {
            if v.iter().all(|&x| x > 0) {
                let out = Word(self.prefix.clone());
                self.stack.pop();
                self.prefix.pop();
                return Some(out);
            }
            match (*next..n).find(|&i| v[i] < 0) {
                Some(i) => {
                    *next = i + 1;
                    let mut u = v.clone();
                    self.c.reflect_weight(i, &mut u);
                    self.prefix.push(i);
                    self.stack.push((u, 0));
                }
                None => {
                    self.stack.pop();
                    self.prefix.pop();
                }
            }
        }
        self.done = true;
        None
    }
}

/// Positive root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PositiveRoot(pub Vec<i64>);

impl PositiveRoot {
    pub fn is_simple(&self, i: usize) -> bool {
        self.0.iter().enumerate().all(|(j, &x)| x == i64::from(j == i))
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// A 2-term move swaps positions `k, k+1`; a 3-term move rewrites `k−1, k, k+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Move {
    Commute(usize),
    Braid(usize),
}

impl Move {
    pub fn position(&self) -> usize {
        match *self {
            Move::Commute(k) | Move::Braid(k) => k,
        }
    }

    pub fn is_braid(&self) -> bool {
        matches!(self, Move::Braid(_))
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Commute(k) => write!(f, "2-term@{}", k + 1),
            Move::Braid(k) => write!(f, "3-term@{}", k + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSequence {
    pub source: Word,
    pub moves: Vec<Move>,
}

impl MoveSequence {
    pub fn empty(source: Word) -> Self {
        MoveSequence { source, moves: Vec::new() }
    }

    /// Source word followed by every intermediate word, ending at the target.
    pub fn words(&self, c: &CartanDatum) -> Result<Vec<Word>> {
        let mut out = vec![self.source.clone()];
        for &m in &self.moves {
            let next = c.apply_move(out.last().unwrap(), m)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn target(&self, c: &CartanDatum) -> Result<Word> {
        Ok(self.words(c)?.pop().unwrap())
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn braid_count(&self) -> usize {
        self.moves.iter().filter(|m| m.is_braid()).count()
    }
}
