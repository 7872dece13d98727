//! Command line front end: expression parsing, dispatch and report text.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::json;

use crate::builders::{big_diagram, koszul, mapping_cone, taylor_resolution, ChainMap};
use crate::error::{Error, Result};
use crate::homology::{complex_cycle_detail, Cycle};
use crate::ideal::{MonomialIdeal, PrimeSupport};
use crate::poly::{ExponentVector, Polynomial, Rational, Term};
use crate::residue::pl_verify;
use crate::serial::{ChainMapJson, ComplexJson, ConeDocument, CycleJson, FiltrationJson, MapDocument};
use crate::suite::{acceptance_checks, lift_filtration_step, sign_suite};
use crate::supercomplex::Complex;

/// Exit status for a check that ran and failed.
pub const EXIT_VERIFICATION_FAILED: u8 = 4;

/// Maps an error onto the exit status of its category.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Json(_) | Error::Io(_) => 2,
        Error::Precondition(_)
        | Error::Domain(_)
        | Error::Dimension { .. }
        | Error::Contract(_)
        | Error::Composition(_)
        | Error::ResolutionDefect(_)
        | Error::Resource(_) => 3,
        Error::InternalConsistency(_) => 1,
    }
}

// ---------------------------------------------------------------------------
// expressions

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum VarName {
    Indexed(usize),
    Letter(char),
}

/// How variable names map to indices: `x1, x2, …` (any letter prefix, the
/// number is the index) or single letters ranked `x, y, z, w` and then
/// alphabetically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Naming {
    letters: Option<Vec<char>>,
    n: usize,
}

impl Naming {
    pub fn nvars(&self) -> usize { self.n }

    fn index(&self, v: VarName, position: usize) -> Result<usize> {
        match (v, &self.letters) {
            (VarName::Indexed(i), None) => Ok(i - 1),
            (VarName::Letter(c), Some(letters)) => letters
                .iter()
                .position(|&l| l == c)
                .ok_or_else(|| Error::parse(position, format!("unknown variable {}", c))),
            _ => Err(Error::parse(position, "indexed variables and single letters cannot be mixed")),
        }
    }

    pub fn name(&self, i: usize) -> String {
        match &self.letters {
            Some(l) => l[i].to_string(),
            None => format!("x{}", i + 1),
        }
    }
}

fn letter_rank(c: char) -> (usize, char) {
    match "xyzw".find(c) {
        Some(i) => (i, c),
        None => (4, c),
    }
}

type RawTerm = (Rational, Vec<(VarName, u32, usize)>);

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self { Lexer { chars: src.char_indices().collect(), pos: 0, src } }

    fn offset(&self) -> usize { self.chars.get(self.pos).map_or(self.src.len(), |c| c.0) }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> { self.chars.get(self.pos).map(|c| c.1) }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.chars[start..self.pos].iter().map(|c| c.1).collect::<String>().parse().ok()
    }

    fn term(&mut self) -> Result<RawTerm> {
        self.skip_ws();
        let mut coeff = Rational::from_integer(1.into());
        if self.eat('-') {
            coeff = -coeff;
        } else {
            self.eat('+');
        }
        self.skip_ws();
        let mut factors = Vec::new();
        let mut first = true;
        loop {
            self.skip_ws();
            let at = self.offset();
            match self.peek() {
                Some(c) if c.is_ascii_digit() && first => {
                    let num = self.number().ok_or_else(|| Error::parse(at, "number too large"))?;
                    let mut value = Rational::from_integer(num.into());
                    if self.eat('/') {
                        let at = self.offset();
                        let den = self.number().filter(|&d| d != 0).ok_or_else(|| Error::parse(at, "expected a nonzero denominator"))?;
                        value /= Rational::from_integer(den.into());
                    }
                    coeff *= value;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    self.pos += 1;
                    let digits_at = self.pos;
                    let var = match self.number_here() {
                        Some(0) => return Err(Error::parse(at, "variable indices start at 1")),
                        Some(i) => VarName::Indexed(i as usize),
                        None if self.pos == digits_at => VarName::Letter(c),
                        None => return Err(Error::parse(at, "bad variable index")),
                    };
                    let mut exp = 1;
                    if self.eat('^') {
                        let at = self.offset();
                        exp = self.number().and_then(|e| u32::try_from(e).ok()).ok_or_else(|| Error::parse(at, "expected an exponent"))?;
                    }
                    factors.push((var, exp, at));
                }
                Some(c) => return Err(Error::parse(at, format!("unexpected character {:?}", c))),
                None => return Err(Error::parse(at, "expected a monomial")),
            }
            first = false;
            if !self.eat('*') {
                break;
            }
        }
        Ok((coeff, factors))
    }

    /// Digits immediately after a letter, without skipping whitespace.
    fn number_here(&mut self) -> Option<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            self.chars[start..self.pos].iter().map(|c| c.1).collect::<String>().parse().ok()
        }
    }
}

fn parse_raw(s: &str) -> Result<Vec<RawTerm>> {
    let mut lx = Lexer::new(s);
    lx.skip_ws();
    if lx.peek().is_none() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut terms = vec![lx.term()?];
    loop {
        lx.skip_ws();
        match lx.peek() {
            None => break,
            Some(',') => {
                lx.pos += 1;
                terms.push(lx.term()?);
            }
            Some(c) => return Err(Error::parse(lx.offset(), format!("expected ',' but found {:?}", c))),
        }
    }
    Ok(terms)
}

fn naming_for<'a>(names: impl Iterator<Item = &'a (VarName, usize)>, declared: Option<usize>) -> Result<Naming> {
    let mut indexed = 0usize;
    let mut letters: Vec<char> = Vec::new();
    let mut kind: Option<(bool, usize)> = None;
    for (v, at) in names {
        let is_letter = matches!(v, VarName::Letter(_));
        match kind {
            Some((k, _)) if k != is_letter => {
                return Err(Error::parse(*at, "indexed variables and single letters cannot be mixed"))
            }
            _ => kind = Some((is_letter, *at)),
        }
        match v {
            VarName::Indexed(i) => indexed = indexed.max(*i),
            VarName::Letter(c) => {
                if !letters.contains(c) {
                    letters.push(*c);
                }
            }
        }
    }
    letters.sort_by_key(|&c| letter_rank(c));
    let letter_mode = kind.is_some_and(|k| k.0);
    let used = if letter_mode { letters.len() } else { indexed };
    let n = match declared {
        Some(d) if d < used => return Err(Error::parse(0, format!("{} variables declared but {} used", d, used))),
        Some(d) => d,
        None => used,
    };
    if letter_mode {
        if n > letters.len() {
            return Err(Error::parse(0, "extra declared variables need indexed names"));
        }
        Ok(Naming { letters: Some(letters), n })
    } else {
        Ok(Naming { letters: None, n })
    }
}

fn resolve(raw: &[RawTerm], naming: &Naming) -> Result<Vec<Term>> {
    raw.iter()
        .map(|(c, factors)| {
            let mut e = vec![0u32; naming.n];
            for (v, k, at) in factors {
                e[naming.index(*v, *at)?] += k;
            }
            Ok(Term::new(c.clone(), ExponentVector::new(e)))
        })
        .collect()
}

/// Parses a comma-separated list of terms such as `"3/2*x^2, x*y"`.
pub fn parse_terms(s: &str, declared: Option<usize>) -> Result<(Vec<Term>, Naming)> {
    let raw = parse_raw(s)?;
    let names: Vec<(VarName, usize)> = raw.iter().flat_map(|(_, f)| f.iter().map(|(v, _, at)| (*v, *at))).collect();
    let naming = naming_for(names.iter(), declared)?;
    if naming.n == 0 {
        return Err(Error::parse(0, "no variables"));
    }
    Ok((resolve(&raw, &naming)?, naming))
}

/// Parses `"x1^2, x1*x2, x2^2"` or `"x*z, x*w, y*z, y*w"` into a minimalized
/// monomial ideal. Coefficients are ignored apart from being nonzero.
pub fn parse_ideal_expr(s: &str) -> Result<MonomialIdeal> { Ok(parse_ideal_with(s, None)?.0) }

pub fn parse_ideal_with(s: &str, declared: Option<usize>) -> Result<(MonomialIdeal, Naming)> {
    let (terms, naming) = parse_terms(s, declared)?;
    if terms.iter().any(|t| t.is_zero()) {
        return Err(Error::parse(0, "zero generator"));
    }
    let ideal = MonomialIdeal::minimalize(naming.n, terms.into_iter().map(|t| t.exponents).collect())?;
    Ok((ideal, naming))
}

/// Parses a prime such as `"x,y"` or `"x1, x3"` against an existing naming.
pub fn parse_prime(s: &str, naming: &Naming) -> Result<PrimeSupport> {
    let raw = parse_raw(s)?;
    let mut vars = Vec::new();
    for (_, factors) in &raw {
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(Error::parse(0, "a prime is a list of single variables"));
        }
        let (v, _, at) = factors[0];
        let i = naming.index(v, at)?;
        if i >= naming.n {
            return Err(Error::parse(at, "variable outside the ring"));
        }
        vars.push(i);
    }
    PrimeSupport::new(naming.n, vars)
}

// ---------------------------------------------------------------------------
// command line

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "cyclekit", version, about = "Cycles, multiplicities and resolutions of monomial complexes")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Default, Args)]
pub struct Input {
    /// Monomial ideal, e.g. "x1^2, x1*x2, x2^2"; the complex is its Taylor resolution
    #[arg(long)]
    pub ideal: Option<String>,
    /// Tuple whose Koszul complex is used
    #[arg(long)]
    pub koszul: Option<String>,
    /// Path to a JSON document
    #[arg(long)]
    pub complex: Option<PathBuf>,
    /// Number of variables, when more than the expression uses
    #[arg(long)]
    pub nvars: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cycles of the homology modules and of the complex
    Cycle {
        #[command(flatten)]
        input: Input,
        /// Only show the part of this codimension
        #[arg(long)]
        codim: Option<usize>,
        /// Only show this homology level
        #[arg(long)]
        level: Option<i32>,
    },
    /// Hilbert–Samuel and geometric multiplicities of O/I
    Mult {
        #[arg(long)]
        ideal: String,
        /// Prime at which to localize, e.g. "x,y"
        #[arg(long)]
        prime: Option<String>,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// A prime filtration of O/I and its replay
    Filtration {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Koszul complex of a tuple of terms
    Koszul {
        #[arg(long)]
        tuple: String,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Taylor resolution of a monomial ideal
    Taylor {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Mapping cone of a chain map (JSON) or of a filtration step
    Cone {
        #[command(flatten)]
        step: StepInput,
    },
    /// Lift a map given at level 0 (JSON) or a filtration step inclusion
    Lift {
        #[command(flatten)]
        step: StepInput,
    },
    /// Split a complex with homology in levels ≤ k into the rows G and F
    Bigdiagram {
        #[command(flatten)]
        input: Input,
        /// The top homology level k
        #[arg(long)]
        level: i32,
        /// JSON resolution of coker φ_k when it is not cyclic
        #[arg(long)]
        resolution: Option<PathBuf>,
    },
    /// Verification suites
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Run every acceptance check and print a table
    Report {
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Debug, Default, Args)]
pub struct StepInput {
    /// Chain map document
    #[arg(long)]
    pub complex: Option<PathBuf>,
    /// Ideal whose prime filtration supplies the map
    #[arg(long)]
    pub ideal: Option<String>,
    /// Filtration step, starting at 1
    #[arg(long, default_value_t = 1)]
    pub step: usize,
    #[arg(long)]
    pub nvars: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// Residue functional, ideal length and Koszul H_0 for coordinate powers
    Pl {
        #[arg(long)]
        tuple: String,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Randomized sign identities
    Signs {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

/// The text to print and whether a verification failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub output: String,
    pub failed: bool,
}

impl Report {
    fn ok(output: String) -> Self { Report { output, failed: false } }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))?;
    Ok(serde_json::from_str(&text)?)
}

fn to_json<T: Serialize>(v: &T) -> String { serde_json::to_string_pretty(v).expect("serializable") + "\n" }

fn load_complex(input: &Input) -> Result<(Complex, Naming)> {
    match (&input.ideal, &input.koszul, &input.complex) {
        (Some(i), None, None) => {
            let (ideal, naming) = parse_ideal_with(i, input.nvars)?;
            Ok((taylor_resolution(&ideal)?, naming))
        }
        (None, Some(t), None) => {
            let (tuple, naming) = parse_terms(t, input.nvars)?;
            Ok((koszul(&tuple)?, naming))
        }
        (None, None, Some(p)) => {
            let c = read_json::<ComplexJson>(p)?.build()?;
            let n = c.nvars();
            Ok((c, Naming { letters: None, n }))
        }
        _ => Err(Error::precondition("give exactly one of --ideal, --koszul, --complex")),
    }
}

fn prime_label(p: &PrimeSupport, naming: &Naming) -> String {
    format!("[{}]", p.variables().iter().map(|&i| naming.name(i)).collect::<Vec<_>>().join(", "))
}

fn monomial_label(e: &ExponentVector, naming: &Naming) -> String {
    let factors: Vec<String> = (0..e.len())
        .filter(|&i| e.get(i) > 0)
        .map(|i| if e.get(i) == 1 { naming.name(i) } else { format!("{}^{}", naming.name(i), e.get(i)) })
        .collect();
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join("*")
    }
}

fn polynomial_label(p: &Polynomial, naming: &Naming) -> String {
    let mut out = String::new();
    for (k, (e, c)) in p.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
        let m = monomial_label(e, naming);
        let a = c.abs();
        let body = if a.is_one() { m } else if e.is_zero() { a.to_string() } else { format!("{}*{}", a, m) };
        out.push_str(match (k, c.is_negative()) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn cycle_lines(out: &mut String, label: &str, c: &Cycle, naming: &Naming) {
    if c.is_zero() {
        let _ = writeln!(out, "{}: 0", label);
    } else {
        let _ = writeln!(out, "{}:", label);
        for (p, m) in c.components() {
            let _ = writeln!(out, "  {}·{}", m, prime_label(p, naming));
        }
    }
}

fn complex_text(c: &Complex, naming: &Naming) -> String {
    let mut out = String::new();
    for m in c.modules() {
        let gens: Vec<String> = m.generators.iter().map(|g| monomial_label(g, naming)).collect();
        let _ = writeln!(out, "level {}: rank {} [{}]", m.level, m.rank(), gens.join(", "));
    }
    for (k, d) in c.differentials().iter().enumerate() {
        let _ = writeln!(out, "differential {}:", k + 1);
        for ((r, col), _) in d.entries() {
            let _ = writeln!(out, "  ({}, {}) {}", r, col, polynomial_label(&d.polynomial(*r, *col), naming));
        }
    }
    out
}

fn chain_map_text(a: &ChainMap, naming: &Naming) -> String {
    let mut out = String::new();
    for (l, b) in a.blocks().iter().enumerate() {
        let _ = writeln!(out, "block {} ({} × {}):", l, b.rows(), b.cols());
        for ((r, c), _) in b.entries() {
            let _ = writeln!(out, "  ({}, {}) {}", r, c, polynomial_label(&b.polynomial(*r, *c), naming));
        }
    }
    out
}

fn step_map(step: &StepInput) -> Result<(ChainMap, Naming)> {
    match (&step.complex, &step.ideal) {
        (Some(p), None) => {
            let doc: MapDocument = read_json(p)?;
            let source = doc.source.build()?;
            let target = doc.target.build()?;
            let blocks = doc.chain_map.build_blocks(&source, &target)?;
            let naming = Naming { letters: None, n: source.nvars() };
            let map = if blocks.len() > source.length() || doc.chain_map.degree != 0 {
                ChainMap::new(source, target, doc.chain_map.degree, blocks)?
            } else {
                crate::builders::extend_chain_map(&source, &target, blocks)?
            };
            Ok((map, naming))
        }
        (None, Some(i)) => {
            let (ideal, naming) = parse_ideal_with(i, step.nvars)?;
            let f = ideal.prime_filtration()?;
            if step.step == 0 || step.step > f.steps.len() {
                return Err(Error::precondition(format!("the filtration has steps 1..={}", f.steps.len())));
            }
            Ok((lift_filtration_step(&f, step.step - 1)?, naming))
        }
        _ => Err(Error::precondition("give exactly one of --complex, --ideal")),
    }
}

/// Runs one command and returns its output.
pub fn run(cli: &Cli) -> Result<Report> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Cycle { input, codim, level } => {
            let (e, naming) = load_complex(input)?;
            let detail = complex_cycle_detail(&e)?;
            let pick = |c: &Cycle| codim.map_or_else(|| c.clone(), |p| c.codim_part(p));
            let levels: Vec<(usize, Cycle)> = detail
                .levels
                .iter()
                .enumerate()
                .filter(|(l, _)| level.map_or(true, |k| k as usize == *l))
                .map(|(l, c)| (l, pick(c)))
                .collect();
            if json {
                let lv: BTreeMap<String, CycleJson> = levels.iter().map(|(l, c)| (l.to_string(), CycleJson::of(c))).collect();
                return Ok(Report::ok(to_json(&json!({ "levels": lv, "total": CycleJson::of(&pick(&detail.total)) }))));
            }
            let mut out = String::new();
            for (l, c) in &levels {
                cycle_lines(&mut out, &format!("H_{}", l), c, &naming);
            }
            cycle_lines(&mut out, "total", &pick(&detail.total), &naming);
            Ok(Report::ok(out))
        }
        Command::Mult { ideal, prime, nvars } => {
            let (i, naming) = parse_ideal_with(ideal, *nvars)?;
            if let Some(p) = prime {
                let p = parse_prime(p, &naming)?;
                let g = i.geometric_multiplicity(&p)?;
                return Ok(Report::ok(if json {
                    to_json(&json!({ "prime": p.variables(), "geometric": g }))
                } else {
                    format!("geometric: {}\n", g)
                }));
            }
            let primes = i.minimal_primes()?;
            let artinian = primes.len() == 1 && primes[0].codim() == i.nvars();
            if !artinian {
                let mut cycle = Cycle::zero();
                for p in &primes {
                    cycle.add_component(p.clone(), i.geometric_multiplicity(p)? as i64);
                }
                if json {
                    return Ok(Report::ok(to_json(&json!({ "geometric": CycleJson::of(&cycle) }))));
                }
                let mut out = String::new();
                cycle_lines(&mut out, "geometric", &cycle, &naming);
                return Ok(Report::ok(out));
            }
            let (fit, volume) = i.hilbert_samuel_both()?;
            if Rational::from_integer(fit.into()) != volume {
                return Err(Error::InternalConsistency(format!("power fit {} but volume {}", fit, volume)));
            }
            let g = i.geometric_multiplicity(&primes[0])?;
            Ok(Report::ok(if json {
                to_json(&json!({ "hilbert_samuel": fit, "geometric": g }))
            } else {
                format!("hilbert_samuel: {}, geometric: {}\n", fit, g)
            }))
        }
        Command::Filtration { ideal, nvars } => {
            let (i, naming) = parse_ideal_with(ideal, *nvars)?;
            let f = i.prime_filtration()?;
            let replay = f.replay();
            if json {
                let mut v = serde_json::to_value(FiltrationJson::of(&f))?;
                v["valid"] = json!(replay.is_ok());
                return Ok(Report { output: to_json(&v), failed: replay.is_err() });
            }
            let mut out = String::new();
            for (k, s) in f.steps.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{}: witness {}, prime {}",
                    k + 1,
                    monomial_label(&s.witness, &naming),
                    prime_label(&s.prime, &naming)
                );
            }
            let _ = match &replay {
                Ok(()) => writeln!(out, "replay: PASS"),
                Err(e) => writeln!(out, "replay: FAIL ({})", e),
            };
            Ok(Report { output: out, failed: replay.is_err() })
        }
        Command::Koszul { tuple, nvars } => {
            let (terms, naming) = parse_terms(tuple, *nvars)?;
            let k = koszul(&terms)?;
            Ok(Report::ok(if json { to_json(&ComplexJson::of(&k)) } else { complex_text(&k, &naming) }))
        }
        Command::Taylor { ideal, nvars } => {
            let (i, naming) = parse_ideal_with(ideal, *nvars)?;
            let t = taylor_resolution(&i)?;
            Ok(Report::ok(if json { to_json(&ComplexJson::of(&t)) } else { complex_text(&t, &naming) }))
        }
        Command::Cone { step } => {
            let (a, naming) = step_map(step)?;
            let c = mapping_cone(&a)?;
            Ok(Report::ok(if json { to_json(&ConeDocument::of(&c)) } else { complex_text(&c.cone, &naming) }))
        }
        Command::Lift { step } => {
            let (a, naming) = step_map(step)?;
            Ok(Report::ok(if json { to_json(&MapDocument::of(&a)) } else { chain_map_text(&a, &naming) }))
        }
        Command::Bigdiagram { input, level, resolution } => {
            let (e, _) = load_complex(input)?;
            let res = resolution.as_deref().map(|p| read_json::<ComplexJson>(p)?.build()).transpose()?;
            let d = big_diagram(&e, *level, res.as_ref())?;
            if json {
                let v = json!({
                    "k": d.k,
                    "rows_verified": d.rows_verified,
                    "g": ComplexJson::of(&d.g),
                    "b": ChainMapJson::of(&d.b),
                    "f": ComplexJson::of(&d.f),
                    "a": ChainMapJson::of(&d.a),
                });
                return Ok(Report { output: to_json(&v), failed: !d.rows_verified });
            }
            let ranks = |c: &Complex| (0..=c.length() as i32).map(|l| c.rank(l).to_string()).collect::<Vec<_>>().join(" ");
            let out = format!(
                "G ranks: {}\nF ranks: {}\nbox: {}\nrows: {}\n",
                ranks(&d.g),
                ranks(&d.f),
                d.bound,
                if d.rows_verified { "PASS" } else { "FAIL" }
            );
            Ok(Report { output: out, failed: !d.rows_verified })
        }
        Command::Verify { what: Verify::Pl { tuple, nvars } } => {
            let r = pl_verify(&parse_terms(tuple, *nvars)?.0)?;
            let functional = r.functional.as_ref().map_or("not a multiple of δ0".to_string(), |m| m.to_string());
            let output = if json {
                to_json(&json!({
                    "expected": r.expected,
                    "functional": r.functional.as_ref().map(|m| m.to_string()),
                    "ideal_length": r.ideal_length,
                    "koszul_h0": r.koszul_h0,
                    "passed": r.passed,
                }))
            } else {
                format!(
                    "functional: {}\nideal_length: {}\nkoszul_h0: {}\n{}\n",
                    functional,
                    r.ideal_length,
                    r.koszul_h0,
                    if r.passed { "PASS" } else { "FAIL" }
                )
            };
            Ok(Report { output, failed: !r.passed })
        }
        Command::Verify { what: Verify::Signs { seed, trials } } => {
            let checks = sign_suite(*seed, *trials);
            Ok(checks_report(&checks, json))
        }
        Command::Report { seed } => Ok(checks_report(&acceptance_checks(*seed)?, json)),
    }
}

fn checks_report(checks: &[crate::suite::Check], json: bool) -> Report {
    let failed = checks.iter().any(|c| !c.passed());
    let output = if json {
        let rows: Vec<_> = checks
            .iter()
            .map(|c| {
                json!({
                    "check": c.name,
                    "anchor": c.anchor,
                    "instances": c.instances,
                    "passed": c.passed(),
                    "failures": c.failures,
                })
            })
            .collect();
        to_json(&json!({ "checks": rows, "passed": !failed }))
    } else {
        let mut out = String::new();
        for c in checks {
            let _ = writeln!(out, "{}", c);
        }
        let _ = writeln!(out, "{}", if failed { "FAIL" } else { "PASS" });
        out
    };
    Report { output, failed }
}
