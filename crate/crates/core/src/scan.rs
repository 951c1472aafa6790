//! Conjecture scanner over reduced words: multiplicity, redundancy and letter separation.

use std::collections::BTreeSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::StringSystem;
use crate::error::{Error, Result};
use crate::lie::{CartanDatum, Word};
use crate::poly::{format_rational, Rational};
use crate::polyhedral::{classify_redundancy, farkas_member, InequalitySystem, Status};

/// Upper bound on words enumerated when resolving a capped word source.
pub const ENUMERATION_LIMIT: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordSource {
    List(Vec<Word>),
    /// All reduced words of `w₀`; if there are more than `cap`, a seeded uniform
    /// sample of `cap` words in lexicographic order.
    All {
        cap: Option<usize>,
        seed: u64,
    },
}

impl WordSource {
    pub fn resolve(&self, c: &CartanDatum) -> Result<Vec<Word>> {
        match self {
            WordSource::List(v) => {
                for w in v {
                    c.require_longest(w)?;
                }
                Ok(v.clone())
            }
            WordSource::All { cap, seed } => {
                let mut all = Vec::new();
                for w in c.all_longest_words() {
                    if all.len() == ENUMERATION_LIMIT {
                        return Err(Error::SizeLimit(format!("more than {ENUMERATION_LIMIT} reduced words")));
                    }
                    all.push(w);
                }
                match cap {
                    Some(cap) if all.len() > *cap => {
                        let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                        let mut idx: Vec<usize> = sample(&mut rng, all.len(), *cap).into_vec();
                        idx.sort_unstable();
                        Ok(idx.into_iter().map(|i| all[i].clone()).collect())
                    }
                    _ => Ok(all),
                }
            }
        }
    }
}

/// One JSON line per (word, letter). Letters and words are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub word: Vec<usize>,
    pub letter: usize,
    pub monomials: usize,
    pub multiplicity_free: bool,
    pub facets: usize,
    pub redundant: Vec<Vec<i64>>,
    pub redundant_coeffs: Vec<String>,
    pub coeff_gt1: Vec<Vec<i64>>,
    /// Irredundant within the letter but redundant once other letters are added.
    pub cross_letter: Vec<Vec<i64>>,
    /// Multiplicity-free implies irredundant.
    pub nomulti_ok: bool,
    /// Every redundant form carries a coefficient greater than 1.
    pub mult2_ok: bool,
    /// Irredundant if and only if multiplicity-free.
    pub conjmu2_ok: bool,
}

impl ScanRecord {
    pub fn key(&self) -> (Vec<usize>, usize) {
        (self.word.clone(), self.letter)
    }
}

/// Records for every letter of one word.
pub fn scan_word(c: &CartanDatum, w: &Word, letters: &[usize]) -> Result<Vec<ScanRecord>> {
    let sys = StringSystem::new(c, w)?;
    let all_forms: Vec<(usize, Vec<i64>)> = sys.labeled_forms();
    letters
        .iter()
        .map(|&letter| {
            let ls = sys.letter(letter);
            let isys = InequalitySystem::from_polynomial(letter, &ls.varsigma)?;
            let rep = classify_redundancy(&isys)?;
            let mut redundant = Vec::new();
            let mut redundant_coeffs = Vec::new();
            let mut cross_letter = Vec::new();
            let mut mult2_ok = true;
            for e in &rep.entries {
                let form = &e.inequality.form;
                match e.status {
                    Status::Redundant(_) => {
                        let coeff = e.inequality.max_coeff();
                        if coeff <= Rational::from_integer(1.into()) {
                            mult2_ok = false;
                        }
                        redundant.push(form.clone());
                        redundant_coeffs.push(format_rational(&coeff));
                    }
                    Status::Facet => {
                        let gens: Vec<Vec<i64>> = all_forms
                            .iter()
                            .filter(|(l, v)| !(*l == letter && v == form))
                            .map(|(_, v)| v.clone())
                            .collect();
                        if farkas_member(form, &gens)?.is_some() {
                            cross_letter.push(form.clone());
                        }
                    }
                }
            }
            let coeff_gt1: Vec<Vec<i64>> = ls
                .varsigma
                .terms()
                .filter(|(_, c)| **c > Rational::from_integer(1.into()))
                .map(|(e, _)| e.as_i64())
                .collect();
            let mf = ls.varsigma.is_multiplicity_free();
            let irredundant = redundant.is_empty();
            Ok(ScanRecord {
                word: w.one_based(),
                letter: letter + 1,
                monomials: ls.varsigma.num_terms(),
                multiplicity_free: mf,
                facets: rep.facet_count(),
                redundant,
                redundant_coeffs,
                coeff_gt1,
                cross_letter,
                nomulti_ok: !mf || irredundant,
                mult2_ok,
                conjmu2_ok: mf == irredundant,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub records: usize,
    pub resumed: usize,
    pub multiplicity_free: usize,
    pub irredundant: usize,
    pub nomulti_violations: Vec<(Vec<usize>, usize)>,
    pub cross_letter_violations: Vec<(Vec<usize>, usize)>,
    pub mult2_counterexamples: Vec<(Vec<usize>, usize)>,
    pub conjmu2_counterexamples: Vec<(Vec<usize>, usize)>,
}

impl ScanSummary {
    fn absorb(&mut self, r: &ScanRecord) {
        self.records += 1;
        if r.multiplicity_free {
            self.multiplicity_free += 1;
        }
        if r.redundant.is_empty() {
            self.irredundant += 1;
        }
        if !r.nomulti_ok {
            self.nomulti_violations.push(r.key());
        }
        if !r.cross_letter.is_empty() {
            self.cross_letter_violations.push(r.key());
        }
        if !r.mult2_ok {
            self.mult2_counterexamples.push(r.key());
        }
        if !r.conjmu2_ok {
            self.conjmu2_counterexamples.push(r.key());
        }
    }

    /// The proven statements (multiplicity-free ⇒ irredundant, letter separation) hold.
    pub fn hard_ok(&self) -> bool {
        self.nomulti_violations.is_empty() && self.cross_letter_violations.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub letters: Option<Vec<usize>>,
    pub threads: Option<usize>,
    /// Words per flushed batch when writing to a file.
    pub batch: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            letters: None,
            threads: std::env::var("STRINGCONE_THREADS").ok().and_then(|s| s.parse().ok()),
            batch: 64,
        }
    }
}

fn read_existing(path: &Path) -> Result<Vec<ScanRecord>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let f = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for line in f.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        // A torn final line from an interrupted run is skipped and recomputed.
        if let Ok(r) = serde_json::from_str::<ScanRecord>(&line) {
            out.push(r);
        }
    }
    Ok(out)
}

/// Runs the scan; with `out` set, appends JSON lines and skips keys already present.
pub fn scan_conjectures(
    c: &CartanDatum,
    source: &WordSource,
    opts: &ScanOptions,
    out: Option<&Path>,
) -> Result<(ScanSummary, Vec<ScanRecord>)> {
    let words = source.resolve(c)?;
    let letters: Vec<usize> = opts.letters.clone().unwrap_or_else(|| (0..c.rank()).collect());
    for &l in &letters {
        c.check_letter(l)?;
    }
    let existing = match out {
        Some(p) => read_existing(p)?,
        None => Vec::new(),
    };
    let done: BTreeSet<(Vec<usize>, usize)> = existing.iter().map(|r| r.key()).collect();
    let mut summary = ScanSummary::default();
    for r in &existing {
        summary.absorb(r);
    }
    summary.resumed = existing.len();
    let todo: Vec<(Word, Vec<usize>)> = words
        .iter()
        .filter_map(|w| {
            let ls: Vec<usize> = letters.iter().copied().filter(|&l| !done.contains(&(w.one_based(), l + 1))).collect();
            (!ls.is_empty()).then(|| (w.clone(), ls))
        })
        .collect();
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(t) = opts.threads {
            b = b.num_threads(t);
        }
        b.build().map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?
    };
    let mut writer = match out {
        Some(p) => Some(OpenOptions::new().create(true).append(true).open(p)?),
        None => None,
    };
    let mut records = existing;
    for chunk in todo.chunks(opts.batch.max(1)) {
        let batch: Vec<Vec<ScanRecord>> =
            pool.install(|| chunk.par_iter().map(|(w, ls)| scan_word(c, w, ls)).collect::<Result<Vec<_>>>())?;
        for r in batch.into_iter().flatten() {
            if let Some(f) = writer.as_mut() {
                writeln!(f, "{}", serde_json::to_string(&r)?)?;
            }
            summary.absorb(&r);
            records.push(r);
        }
        if let Some(f) = writer.as_mut() {
            f.flush()?;
        }
    }
    Ok((summary, records))
}
