//! Command-line front end. `run` parses arguments, executes one command and returns the exit code.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cluster::{potential, trace_lines};
use crate::cone::{psi, varsigma, StringSystem};
use crate::error::{Error, Result};
use crate::headline::{compare_printed, headline_report, D4_CORRECTED, D4_PRINTED};
use crate::lie::{CartanDatum, Word};
use crate::poly::{format_rational, LaurentPolynomial};
use crate::polyhedral::{classify_redundancy, InequalitySystem, Status};
use crate::scan::{scan_conjectures, ScanOptions, WordSource};
use crate::special::{enumerate_trails, trail_forms_subword, SubwordVariant, TrailConvention};

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONVENTION: i32 = 3;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// Everything a command needs. Loaded from `--config`, then overridden by flags.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    #[serde(rename = "type")]
    pub cartan_type: Option<String>,
    pub words: Vec<String>,
    /// 1-based.
    pub letters: Vec<usize>,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub trail_convention: Option<TrailConvention>,
    pub subword_variant: Option<SubwordVariant>,
    pub seed: u64,
    pub cap: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    fn cartan(&self) -> Result<CartanDatum> {
        self.cartan_type.as_deref().ok_or_else(|| Error::Parse("missing --type".into()))?.parse()
    }

    fn word(&self, c: &CartanDatum) -> Result<Word> {
        let w = self.words.first().ok_or_else(|| Error::Parse("missing --word".into()))?;
        c.parse_word(w)
    }

    fn letters(&self, c: &CartanDatum) -> Result<Vec<usize>> {
        if self.letters.is_empty() {
            return Ok((0..c.rank()).collect());
        }
        self.letters
            .iter()
            .map(|&l| {
                if l == 0 || l > c.rank() {
                    Err(Error::LetterOutOfRange { letter: l, rank: c.rank() })
                } else {
                    Ok(l - 1)
                }
            })
            .collect()
    }
}

#[derive(Debug, Parser)]
#[command(name = "stringcone", version, about = "String cones from cluster potentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Cartan type, e.g. A3 or D4.
    #[arg(long = "type", global = true)]
    cartan_type: Option<String>,
    /// Reduced word, 1-based letters.
    #[arg(long, global = true)]
    word: Option<String>,
    /// Letter (1-based); repeatable.
    #[arg(long, global = true)]
    letter: Vec<usize>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// JSON RunConfig supplying defaults for the other flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Cap on enumerated or scanned words.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Print the move sequence used to reach an optimized seed.
    #[arg(long, global = true)]
    trace: bool,
    /// Print the effective configuration and exit.
    #[arg(long, global = true)]
    dump_config: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Potential summands in the cluster chart of the word.
    Potential,
    /// Potential summands pulled back to string coordinates.
    Varsigma,
    /// Tropical inequalities of every letter.
    Cone,
    /// Facet / redundancy classification with Farkas certificates.
    Facets,
    /// Map a point between the string cones of two words.
    Psi {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        point: String,
    },
    /// Trails and subword forms for a minuscule letter.
    Trails {
        #[arg(long, value_enum)]
        convention: Option<TrailArg>,
    },
    /// Conjecture scan over reduced words; `--output` receives JSON lines.
    Scan {
        /// Scan every reduced word of w0 (default when no --word is given).
        #[arg(long)]
        all: bool,
    },
    /// D4 example: potentials, facets and the printed polynomial.
    VerifyD4,
    /// Reduced words of w0.
    Words,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TrailArg {
    Dual,
    Literal,
}

fn effective_config(common: &Common) -> Result<RunConfig> {
    let mut cfg = match &common.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(t) = &common.cartan_type {
        cfg.cartan_type = Some(t.clone());
    }
    if let Some(w) = &common.word {
        cfg.words = vec![w.clone()];
    }
    if !common.letter.is_empty() {
        cfg.letters = common.letter.clone();
    }
    if let Some(f) = common.format {
        cfg.format = f;
    }
    if let Some(o) = &common.output {
        cfg.output = Some(o.clone());
    }
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    if let Some(c) = common.cap {
        cfg.cap = Some(c);
    }
    Ok(cfg)
}

fn parse_point(s: &str) -> Result<Vec<i64>> {
    s.split(|ch: char| ch.is_whitespace() || ch == ',' || ch == '(' || ch == ')')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad point coordinate '{t}'"))))
        .collect()
}

fn tuple(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn csv_string(rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).map_err(|e| Error::Unsupported(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Unsupported(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn poly_rows(rows: &mut Vec<Vec<String>>, letter: usize, p: &LaurentPolynomial) {
    for (e, q) in p.terms() {
        let mut r = vec![(letter + 1).to_string(), format_rational(q)];
        r.extend(e.0.iter().map(|x| x.to_string()));
        rows.push(r);
    }
}

fn polynomials(cfg: &RunConfig, trace: bool, pulled_back: bool) -> Result<String> {
    let c = cfg.cartan()?;
    let i = cfg.word(&c)?;
    let letters = cfg.letters(&c)?;
    let mut polys = Vec::new();
    for &l in &letters {
        let p = if pulled_back { varsigma(&c, &i, l)? } else { potential(&c, &i, l)? };
        polys.push((l, p));
    }
    let name = if pulled_back { "varsigma" } else { "W" };
    Ok(match cfg.format {
        Format::Text => {
            let mut s = String::new();
            for (l, p) in &polys {
                if trace {
                    for line in trace_lines(&c, &i, *l)? {
                        s.push_str(&format!("# {line}\n"));
                    }
                }
                if letters.len() == 1 {
                    s.push_str(&format!("{p}\n"));
                } else {
                    s.push_str(&format!("{name}_{} = {p}\n", l + 1));
                }
            }
            s
        }
        Format::Json => {
            let m: serde_json::Map<String, serde_json::Value> = polys
                .iter()
                .map(|(l, p)| Ok(((l + 1).to_string(), serde_json::to_value(p.to_json())?)))
                .collect::<Result<_>>()?;
            serde_json::to_string_pretty(&json!({ "word": i.one_based(), "letters": m }))? + "\n"
        }
        Format::Csv => {
            let mut rows = vec![];
            let mut head = vec!["letter".to_string(), "coeff".to_string()];
            head.extend((1..=i.len()).map(|k| format!("e{k}")));
            rows.push(head);
            for (l, p) in &polys {
                poly_rows(&mut rows, *l, p);
            }
            csv_string(rows)?
        }
    })
}

fn cone(cfg: &RunConfig) -> Result<String> {
    let c = cfg.cartan()?;
    let i = cfg.word(&c)?;
    let sys = StringSystem::new(&c, &i)?;
    let letters = cfg.letters(&c)?;
    Ok(match cfg.format {
        Format::Json => serde_json::to_string_pretty(&sys.to_json())? + "\n",
        Format::Text => {
            let mut s = format!("word {i}, dimension {}\n", sys.dim());
            for &l in &letters {
                for v in sys.letter(l).tropical.vectors() {
                    s.push_str(&format!("letter {}: {} >= 0\n", l + 1, linear_form(&v)));
                }
            }
            s
        }
        Format::Csv => {
            let mut rows = vec![];
            let mut head = vec!["letter".to_string()];
            head.extend((1..=i.len()).map(|k| format!("t{k}")));
            rows.push(head);
            for &l in &letters {
                for v in sys.letter(l).tropical.vectors() {
                    let mut r = vec![(l + 1).to_string()];
                    r.extend(v.iter().map(|x| x.to_string()));
                    rows.push(r);
                }
            }
            csv_string(rows)?
        }
    })
}

fn linear_form(v: &[i64]) -> String {
    let mut s = String::new();
    for (k, &a) in v.iter().enumerate().filter(|(_, a)| **a != 0) {
        let mag = if a.abs() == 1 { String::new() } else { a.abs().to_string() };
        match (s.is_empty(), a < 0) {
            (true, false) => {}
            (true, true) => s.push('-'),
            (false, false) => s.push_str(" + "),
            (false, true) => s.push_str(" - "),
        }
        s.push_str(&format!("{mag}t{}", k + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn facets(cfg: &RunConfig) -> Result<String> {
    let c = cfg.cartan()?;
    let i = cfg.word(&c)?;
    let sys = StringSystem::new(&c, &i)?;
    let letters = cfg.letters(&c)?;
    let isys = InequalitySystem::from_string_system(&sys, Some(&letters))?;
    let rep = classify_redundancy(&isys)?;
    Ok(match cfg.format {
        Format::Json => serde_json::to_string_pretty(&rep.to_json())? + "\n",
        Format::Text => {
            let mut s = format!("{} facets, {} redundant\n", rep.facet_count(), rep.redundant().len());
            for e in &rep.entries {
                let status = match &e.status {
                    Status::Facet => "facet".to_string(),
                    Status::Redundant(cert) => {
                        let parts: Vec<String> = cert
                            .to_json()
                            .iter()
                            .map(|(j, r)| format!("{r}*{}", tuple(&isys.inequalities[*j].form)))
                            .collect();
                        format!("redundant = {}", parts.join(" + "))
                    }
                };
                s.push_str(&format!("{} {status}\n", tuple(&e.inequality.form)));
            }
            s
        }
        Format::Csv => {
            let mut rows = vec![vec!["form".to_string(), "status".into(), "letters".into(), "max_coeff".into()]];
            for e in &rep.entries {
                let st = if e.status == Status::Facet { "facet" } else { "redundant" };
                let ls: Vec<String> = e.inequality.letters().iter().map(|l| (l + 1).to_string()).collect();
                rows.push(vec![
                    tuple(&e.inequality.form),
                    st.into(),
                    ls.join(" "),
                    format_rational(&e.inequality.max_coeff()),
                ]);
            }
            csv_string(rows)?
        }
    })
}

fn psi_cmd(cfg: &RunConfig, from: &str, to: &str, point: &str) -> Result<String> {
    let c = cfg.cartan()?;
    let i = c.parse_word(from)?;
    let j = c.parse_word(to)?;
    let x = parse_point(point)?;
    let y = psi(&c, &i, &j)?.apply(&x)?;
    Ok(match cfg.format {
        Format::Json => {
            serde_json::to_string(&json!({ "from": i.one_based(), "to": j.one_based(), "point": x, "image": y }))?
                + "\n"
        }
        Format::Text | Format::Csv => tuple(&y) + "\n",
    })
}

fn trails(cfg: &RunConfig, conv: Option<TrailArg>) -> Result<String> {
    let c = cfg.cartan()?;
    let i = cfg.word(&c)?;
    let conv = match conv {
        Some(TrailArg::Dual) => TrailConvention::Dual,
        Some(TrailArg::Literal) => TrailConvention::Literal,
        None => cfg.trail_convention.unwrap_or(TrailConvention::Dual),
    };
    let variant = cfg.subword_variant.unwrap_or(SubwordVariant::Prefix);
    let mut out = serde_json::Map::new();
    let mut text = String::new();
    for l in cfg.letters(&c)? {
        let ts = enumerate_trails(&c, &i, l, conv)?;
        let sub = trail_forms_subword(&c, &i, l, variant)?;
        let trop: std::collections::BTreeSet<Vec<i64>> =
            StringSystem::new(&c, &i)?.letter(l).tropical.vectors().into_iter().collect();
        let tf: std::collections::BTreeSet<Vec<i64>> = ts.iter().map(|t| t.d.clone()).collect();
        text.push_str(&format!(
            "letter {}: {} trails, trails==subwords {}, trails==tropical {}\n",
            l + 1,
            ts.len(),
            tf == sub,
            tf == trop
        ));
        for t in &ts {
            text.push_str(&format!("  d={} c={:?}\n", tuple(&t.d), t.c));
        }
        out.insert(
            (l + 1).to_string(),
            json!({ "trails": ts, "subword_forms": sub, "tropical_forms": trop, "agree": tf == sub && tf == trop }),
        );
    }
    Ok(match cfg.format {
        Format::Json => serde_json::to_string_pretty(&out)? + "\n",
        _ => text,
    })
}

fn words(cfg: &RunConfig) -> Result<String> {
    let c = cfg.cartan()?;
    let ws: Vec<Word> = match cfg.cap {
        Some(cap) => c.all_longest_words().take(cap).collect(),
        None => c.all_longest_words().collect(),
    };
    Ok(match cfg.format {
        Format::Json => serde_json::to_string(&ws.iter().map(|w| w.one_based()).collect::<Vec<_>>())? + "\n",
        _ => ws.iter().map(|w| w.to_string() + "\n").collect(),
    })
}

fn scan(cfg: &RunConfig, all: bool) -> Result<(String, bool)> {
    let c = cfg.cartan()?;
    let source = if all || cfg.words.is_empty() {
        WordSource::All { cap: cfg.cap, seed: cfg.seed }
    } else {
        WordSource::List(cfg.words.iter().map(|w| c.parse_word(w)).collect::<Result<_>>()?)
    };
    let letters = (!cfg.letters.is_empty()).then(|| cfg.letters(&c)).transpose()?;
    let opts = ScanOptions { letters, ..ScanOptions::default() };
    let (summary, _) = scan_conjectures(&c, &source, &opts, cfg.output.as_deref())?;
    let ok = summary.hard_ok();
    let s = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&summary)? + "\n",
        _ => format!(
            "records {} (resumed {})\nmultiplicity-free {}\nirredundant {}\nmultiplicity-free but redundant {}\ncross-letter certificates {}\nredundant with coefficient 1 {}\nirredundant but not multiplicity-free {}\n",
            summary.records,
            summary.resumed,
            summary.multiplicity_free,
            summary.irredundant,
            summary.nomulti_violations.len(),
            summary.cross_letter_violations.len(),
            summary.mult2_counterexamples.len(),
            summary.conjmu2_counterexamples.len(),
        ),
    };
    Ok((s, ok))
}

fn verify_d4(cfg: &RunConfig) -> Result<(String, bool)> {
    let c: CartanDatum = "D4".parse()?;
    let mut all_ok = true;
    let mut text = String::new();
    let mut reports = Vec::new();
    for (name, w) in [("printed", D4_PRINTED), ("corrected", D4_CORRECTED)] {
        let i = Word::from_one_based(&w)?;
        let rep = headline_report(&c, &i, 1)?;
        let cmp = compare_printed(&c, &i)?;
        text.push_str(&format!("{name} word {i}\n"));
        let mut ok = true;
        for (what, pass) in rep.checks() {
            ok &= pass;
            text.push_str(&format!("  [{}] letter 2: {what}\n", if pass { "PASS" } else { "FAIL" }));
        }
        for (l, &size) in rep.letter_sizes.iter().enumerate() {
            if l == 1 {
                continue;
            }
            let pass = size == 1;
            ok &= pass;
            text.push_str(&format!(
                "  [{}] letter {}: single monomial (found {size})\n",
                if pass { "PASS" } else { "FAIL" },
                l + 1
            ));
        }
        text.push_str(&format!(
            "  printed polynomial: {} of {} terms match under relabeling {:?}; only computed {:?}; only printed {:?}\n",
            cmp.matched, rep.monomials, cmp.relabeling, cmp.only_computed, cmp.only_printed
        ));
        if name == "printed" {
            all_ok &= ok;
        }
        reports.push(json!({ "name": name, "ok": ok, "report": rep, "printed_comparison": cmp }));
    }
    let s = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&json!({ "ok": all_ok, "words": reports }))? + "\n",
        _ => text + &format!("verify-d4: {}\n", if all_ok { "PASS" } else { "FAIL" }),
    };
    Ok((s, all_ok))
}

fn execute(cli: &Cli, cfg: &RunConfig) -> Result<(String, bool)> {
    let cfg = cfg.clone();
    if cli.common.dump_config {
        return Ok((cfg.to_json()? + "\n", true));
    }
    let trace = cli.common.trace;
    match &cli.command {
        Command::Potential => Ok((polynomials(&cfg, trace, false)?, true)),
        Command::Varsigma => Ok((polynomials(&cfg, trace, true)?, true)),
        Command::Cone => Ok((cone(&cfg)?, true)),
        Command::Facets => Ok((facets(&cfg)?, true)),
        Command::Psi { from, to, point } => Ok((psi_cmd(&cfg, from, to, point)?, true)),
        Command::Trails { convention } => Ok((trails(&cfg, *convention)?, true)),
        Command::Scan { all } => scan(&cfg, *all),
        Command::VerifyD4 => verify_d4(&cfg),
        Command::Words => Ok((words(&cfg)?, true)),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_convention_violation() {
        EXIT_CONVENTION
    } else if e.is_usage_error() {
        EXIT_USAGE
    } else {
        EXIT_FAILURE
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = if code == 0 { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    let writes_file = matches!(cli.command, Command::Scan { .. }) || cli.common.dump_config;
    match effective_config(&cli.common).and_then(|cfg| Ok((execute(&cli, &cfg)?, cfg))) {
        Ok(((s, ok), cfg)) => {
            let target = if writes_file { None } else { cfg.output };
            let res = match target {
                Some(p) => fs::write(p, s),
                None => stdout.write_all(s.as_bytes()),
            };
            if let Err(e) = res {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_FAILURE;
            }
            if ok {
                0
            } else {
                EXIT_FAILURE
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
