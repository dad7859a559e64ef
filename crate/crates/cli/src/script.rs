//! Session scripts: one ring, named ideals and towers, then commands.
//!
//! ```text
//! ring N=2 p=5
//! ideal a: x1, x2
//! tower T: blowup chart=root point=(0,0); blowup chart=1 set=(x1=0,x2=0)
//! bridge T a
//! ```

use std::collections::BTreeSet;
use std::str::FromStr;

use divlift::polyring::parse::parse_poly;
use divlift::polyring::{default_names, Prime, QPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("SyntaxError at {line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("UnknownName at {line}:{col}: {name} is not declared")]
    UnknownName { line: usize, col: usize, name: String },
    #[error("RingMismatch at line {line}: {message}")]
    RingMismatch { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Prime(u64),
    Rationals,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    pub n: usize,
    pub field: Field,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub ideal: String,
    pub exponent: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepDecl {
    pub chart: usize,
    /// 0-based coordinate and constant, sorted.
    pub constraints: Vec<(usize, BigRational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Keval { tower: String, divisor: Option<usize> },
    Veval { tower: String, divisor: Option<usize>, ideal: String },
    Logdisc { tower: String, divisor: Option<usize>, factors: Vec<Factor> },
    Zeval { tower: String, divisor: Option<usize>, ideal: String },
    Lct { ideal: String, cap: Option<u32>, toric: bool },
    Mld { factors: Vec<Factor>, cap: Option<u32> },
    Notlc { factors: Vec<Factor>, cap: Option<u32> },
    Heights { ideal: String },
    Jets { ideal: String, m: usize },
    Bridge { tower: String, ideals: Vec<String>, exponents: Vec<Vec<BigRational>> },
    VerifyLift { tower: String, ideal: String, lift: Vec<QPoly> },
    Crosschar { factors: Vec<Factor>, cap: Option<u32> },
    Suspend { tower: String, ideal: String },
    Selftest,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Ideal { name: String, gens: Vec<QPoly> },
    Tower { name: String, steps: Vec<StepDecl> },
    /// A command with its source text.
    Command { text: String, command: Command },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub ring: Ring,
    pub stmts: Vec<(usize, Stmt)>,
}

impl Script {
    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.stmts.iter().filter_map(|(_, s)| match s {
            Stmt::Command { command, .. } => Some(command),
            _ => None,
        })
    }
}

#[derive(Debug, Clone)]
struct Tok<'a> {
    text: &'a str,
    col: usize,
}

/// Splits on whitespace, keeping parenthesized groups in one token.
fn tokens(s: &str, base_col: usize) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start: Option<usize> = None;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch.is_whitespace() && depth <= 0 {
            if let Some(st) = start.take() {
                out.push(Tok { text: &s[st..i], col: base_col + st });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push(Tok { text: &s[st..], col: base_col + st });
    }
    out
}

fn is_ident(s: &str) -> bool {
    let mut it = s.chars();
    matches!(it.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && it.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_divisor(s: &str) -> Option<usize> {
    s.strip_prefix('E').and_then(|d| d.parse::<usize>().ok()).filter(|&d| d >= 1)
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let den = BigInt::from_str(b.trim()).ok()?;
            if den.is_zero() {
                return None;
            }
            Some(BigRational::new(BigInt::from_str(a.trim()).ok()?, den))
        }
        None => Some(BigRational::from_integer(BigInt::from_str(s).ok()?)),
    }
}

struct Parser {
    ring: Option<Ring>,
    ideals: BTreeSet<String>,
    towers: BTreeSet<String>,
    line: usize,
}

type PResult<T> = std::result::Result<T, ScriptError>;

impl Parser {
    fn syntax<T>(&self, col: usize, message: impl Into<String>) -> PResult<T> {
        Err(ScriptError::Syntax { line: self.line, col, message: message.into() })
    }

    fn ring(&self, col: usize) -> PResult<&Ring> {
        match &self.ring {
            Some(r) => Ok(r),
            None => self.syntax(col, "a ring declaration must come first"),
        }
    }

    fn names(&self) -> Vec<String> {
        default_names(self.ring.as_ref().map_or(0, |r| r.n))
    }

    fn check_in_ring(&self, f: &QPoly) -> PResult<()> {
        if let Some(Ring { field: Field::Prime(p), .. }) = &self.ring {
            let pb = BigInt::from(*p);
            if let Some((_, c)) = f.terms().iter().find(|(_, c)| (c.denom() % &pb).is_zero()) {
                return Err(ScriptError::RingMismatch {
                    line: self.line,
                    message: format!("constant {c} is not defined modulo {p}"),
                });
            }
        }
        Ok(())
    }

    /// Comma-separated polynomials starting at byte `col0` (0-based) of the line.
    fn polys(&self, src: &str, col0: usize) -> PResult<Vec<QPoly>> {
        let names = self.names();
        let mut out = Vec::new();
        let mut offset = 0;
        for part in src.split(',') {
            if part.trim().is_empty() {
                return self.syntax(col0 + offset + 1, "empty generator");
            }
            match parse_poly(part, &names) {
                Ok(f) => {
                    self.check_in_ring(&f)?;
                    out.push(f);
                }
                Err(e) => return self.syntax(col0 + offset + e.offset + 1, e.message),
            }
            offset += part.len() + 1;
        }
        Ok(out)
    }

    fn decl_name<'a>(&self, tok: Option<&Tok<'a>>, kind: &str, end_col: usize) -> PResult<(String, usize)> {
        let Some(t) = tok else {
            return self.syntax(end_col, format!("missing {kind} name"));
        };
        let name = t.text.strip_suffix(':').unwrap_or(t.text);
        if !is_ident(name) || parse_divisor(name).is_some() {
            return self.syntax(t.col + 1, format!("invalid {kind} name {name:?}"));
        }
        if self.ideals.contains(name) || self.towers.contains(name) {
            return self.syntax(t.col + 1, format!("{name} is already declared"));
        }
        Ok((name.to_string(), t.col))
    }

    fn ideal_ref(&self, t: &Tok) -> PResult<String> {
        if !self.ideals.contains(t.text) {
            return Err(ScriptError::UnknownName { line: self.line, col: t.col + 1, name: t.text.to_string() });
        }
        Ok(t.text.to_string())
    }

    fn tower_ref(&self, t: Option<&Tok>, end_col: usize) -> PResult<String> {
        let Some(t) = t else {
            return self.syntax(end_col, "missing tower name");
        };
        if !self.towers.contains(t.text) {
            return Err(ScriptError::UnknownName { line: self.line, col: t.col + 1, name: t.text.to_string() });
        }
        Ok(t.text.to_string())
    }

    fn factor(&self, t: &Tok) -> PResult<Factor> {
        let (name, exp) = match t.text.split_once('^') {
            Some((n, e)) => {
                let Some(q) = parse_rational(e).filter(|q| q > &BigRational::zero()) else {
                    return self.syntax(t.col + n.len() + 2, format!("bad exponent {e:?}"));
                };
                (n, q)
            }
            None => (t.text, BigRational::from_integer(1.into())),
        };
        let ideal = self.ideal_ref(&Tok { text: name, col: t.col })?;
        Ok(Factor { ideal, exponent: exp })
    }

    fn step(&self, src: &str, col0: usize, n: usize) -> PResult<StepDecl> {
        let toks = tokens(src, col0);
        let Some(first) = toks.first() else {
            return self.syntax(col0 + 1, "empty tower step");
        };
        if first.text != "blowup" {
            return self.syntax(first.col + 1, format!("expected `blowup`, found {:?}", first.text));
        }
        let mut chart = None;
        let mut constraints = None;
        for t in &toks[1..] {
            let Some((key, val)) = t.text.split_once('=') else {
                return self.syntax(t.col + 1, format!("expected key=value, found {:?}", t.text));
            };
            let vcol = t.col + key.len() + 2;
            match key {
                "chart" => {
                    chart = Some(if val == "root" {
                        0
                    } else {
                        match val.parse::<usize>() {
                            Ok(c) => c,
                            Err(_) => return self.syntax(vcol, format!("bad chart {val:?}")),
                        }
                    })
                }
                "point" | "set" => {
                    let Some(inner) = val.strip_prefix('(').and_then(|v| v.strip_suffix(')')) else {
                        return self.syntax(vcol, "expected a parenthesized list");
                    };
                    let items: Vec<&str> = inner.split(',').collect();
                    let mut cs = Vec::new();
                    if key == "point" {
                        if items.len() != n {
                            return self.syntax(vcol, format!("point needs {n} coordinates, got {}", items.len()));
                        }
                        for (j, it) in items.iter().enumerate() {
                            let Some(c) = parse_rational(it) else {
                                return self.syntax(vcol, format!("bad constant {:?}", it.trim()));
                            };
                            cs.push((j, c));
                        }
                    } else {
                        for it in items {
                            let Some((var, c)) = it.split_once('=') else {
                                return self.syntax(vcol, format!("expected x<i>=<c>, found {:?}", it.trim()));
                            };
                            let var = var.trim();
                            let j = match var.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
                                Some(j) if (1..=n).contains(&j) => j - 1,
                                _ => return self.syntax(vcol, format!("unknown variable {var:?}")),
                            };
                            let Some(c) = parse_rational(c) else {
                                return self.syntax(vcol, format!("bad constant {:?}", c.trim()));
                            };
                            if cs.iter().any(|(k, _)| *k == j) {
                                return self.syntax(vcol, format!("{var} constrained twice"));
                            }
                            cs.push((j, c));
                        }
                        cs.sort_by_key(|(j, _)| *j);
                    }
                    for (_, c) in &cs {
                        self.check_in_ring(&QPoly::constant(&(), 0, c.clone()))?;
                    }
                    constraints = Some(cs);
                }
                _ => return self.syntax(t.col + 1, format!("unknown step key {key:?}")),
            }
        }
        let end = col0 + src.len();
        let Some(chart) = chart else { return self.syntax(end, "step needs chart=") };
        let Some(constraints) = constraints else { return self.syntax(end, "step needs point= or set=") };
        Ok(StepDecl { chart, constraints })
    }

    fn opt_u32(&self, t: &Tok, key: &str, val: &str) -> PResult<u32> {
        match val.parse::<u32>() {
            Ok(v) => Ok(v),
            Err(_) => self.syntax(t.col + key.len() + 2, format!("bad value for {key}: {val:?}")),
        }
    }

    fn command(&mut self, verb: &Tok, rest: &[Tok], line: &str) -> PResult<Command> {
        let end = line.len() + 1;
        self.ring(verb.col + 1)?;
        // optional divisor after the tower
        let tower_div = |p: &Parser, rest: &[Tok]| -> PResult<(String, Option<usize>, usize)> {
            let tower = p.tower_ref(rest.first(), end)?;
            match rest.get(1).and_then(|t| parse_divisor(t.text)) {
                Some(d) => Ok((tower, Some(d), 2)),
                None => Ok((tower, None, 1)),
            }
        };
        let one_ideal = |p: &Parser, rest: &[Tok]| -> PResult<String> {
            match rest {
                [t] => p.ideal_ref(t),
                [] => p.syntax(end, "missing ideal name"),
                [_, extra, ..] => p.syntax(extra.col + 1, format!("unexpected {:?}", extra.text)),
            }
        };
        let mut cap = None;
        let mut plain: Vec<&Tok> = Vec::new();
        let mut toric = false;
        let mut m = None;
        let mut exponents = Vec::new();
        for t in rest {
            if let Some((key, val)) = t.text.split_once('=') {
                match key {
                    "cap" => cap = Some(self.opt_u32(t, key, val)?),
                    "m" => m = Some(self.opt_u32(t, key, val)? as usize),
                    "e" => {
                        let inner = val.trim_start_matches('(').trim_end_matches(')');
                        let mut v = Vec::new();
                        for item in inner.split(',') {
                            match parse_rational(item).filter(|q| q > &BigRational::zero()) {
                                Some(q) => v.push(q),
                                None => return self.syntax(t.col + 3, format!("bad exponent {:?}", item.trim())),
                            }
                        }
                        exponents.push(v);
                    }
                    _ => return self.syntax(t.col + 1, format!("unknown option {key:?}")),
                }
            } else if t.text == "toric" && verb.text == "lct" {
                toric = true;
            } else {
                plain.push(t);
            }
        }
        let plain: Vec<Tok> = plain.into_iter().cloned().collect();
        let factors = |p: &Parser, ts: &[Tok]| -> PResult<Vec<Factor>> {
            if ts.is_empty() {
                return p.syntax(end, "expected at least one ideal");
            }
            ts.iter().map(|t| p.factor(t)).collect()
        };
        let cmd = match verb.text {
            "keval" => {
                let (tower, divisor, used) = tower_div(self, &plain)?;
                if let Some(t) = plain.get(used) {
                    return self.syntax(t.col + 1, format!("unexpected {:?}", t.text));
                }
                Command::Keval { tower, divisor }
            }
            "veval" | "zeval" => {
                let (tower, divisor, used) = tower_div(self, &plain)?;
                let ideal = one_ideal(self, &plain[used..])?;
                if verb.text == "veval" {
                    Command::Veval { tower, divisor, ideal }
                } else {
                    Command::Zeval { tower, divisor, ideal }
                }
            }
            "logdisc" => {
                let (tower, divisor, used) = tower_div(self, &plain)?;
                let mut fs = Vec::new();
                for t in &plain[used..] {
                    fs.push(self.factor(t)?);
                }
                Command::Logdisc { tower, divisor, factors: fs }
            }
            "lct" => Command::Lct { ideal: one_ideal(self, &plain)?, cap, toric },
            "mld" => Command::Mld { factors: factors(self, &plain)?, cap },
            "notlc" => Command::Notlc { factors: factors(self, &plain)?, cap },
            "crosschar" => Command::Crosschar { factors: factors(self, &plain)?, cap },
            "heights" => Command::Heights { ideal: one_ideal(self, &plain)? },
            "jets" => {
                let Some(m) = m else { return self.syntax(end, "jets needs m=<level>") };
                Command::Jets { ideal: one_ideal(self, &plain)?, m }
            }
            "bridge" => {
                let tower = self.tower_ref(plain.first(), end)?;
                let ideals = plain[1..].iter().map(|t| self.ideal_ref(t)).collect::<PResult<Vec<_>>>()?;
                Command::Bridge { tower, ideals, exponents }
            }
            "suspend" => {
                let tower = self.tower_ref(plain.first(), end)?;
                Command::Suspend { tower, ideal: one_ideal(self, &plain[1.min(plain.len())..])? }
            }
            "selftest" => {
                if let Some(t) = plain.first() {
                    return self.syntax(t.col + 1, format!("unexpected {:?}", t.text));
                }
                Command::Selftest
            }
            other => return self.syntax(verb.col + 1, format!("unknown command {other:?}")),
        };
        Ok(cmd)
    }

    fn verify_lift(&self, line: &str) -> PResult<Command> {
        let Some(eq) = line.find('=') else {
            return self.syntax(line.len() + 1, "verifylift needs `= <generators>`");
        };
        let head = tokens(&line[..eq], 0);
        let tower = self.tower_ref(head.get(1), eq + 1)?;
        let ideal = match head.get(2) {
            Some(t) => self.ideal_ref(t)?,
            None => return self.syntax(eq + 1, "missing ideal name"),
        };
        if let Some(t) = head.get(3) {
            return self.syntax(t.col + 1, format!("unexpected {:?}", t.text));
        }
        let lift = self.polys(&line[eq + 1..], eq + 1)?;
        Ok(Command::VerifyLift { tower, ideal, lift })
    }

    fn statement(&mut self, line: &str) -> PResult<Option<Stmt>> {
        let toks = tokens(line, 0);
        let Some(verb) = toks.first() else { return Ok(None) };
        match verb.text {
            "ring" => {
                if self.ring.is_some() {
                    return Err(ScriptError::RingMismatch {
                        line: self.line,
                        message: "a script declares exactly one ring".into(),
                    });
                }
                let mut n = None;
                let mut field = None;
                for t in &toks[1..] {
                    match t.text.split_once('=') {
                        Some(("N", v)) => match v.parse::<usize>() {
                            Ok(v) if v >= 2 => n = Some(v),
                            _ => return self.syntax(t.col + 3, format!("N must be an integer >= 2, got {v:?}")),
                        },
                        Some(("p", v)) => match v.parse::<u64>() {
                            Ok(0) => field = Some(Field::Rationals),
                            Ok(p) if Prime::new(p).is_ok() => field = Some(Field::Prime(p)),
                            _ => return self.syntax(t.col + 3, format!("p must be 0 or a prime below 2^31, got {v:?}")),
                        },
                        None if t.text == "Q" => field = Some(Field::Rationals),
                        _ => return self.syntax(t.col + 1, format!("unexpected {:?}", t.text)),
                    }
                }
                let Some(n) = n else { return self.syntax(line.len() + 1, "ring needs N=<dimension>") };
                let Some(field) = field else { return self.syntax(line.len() + 1, "ring needs p=<prime> or Q") };
                self.ring = Some(Ring { n, field });
                Ok(None)
            }
            "ideal" => {
                self.ring(verb.col + 1)?;
                let Some(colon) = line.find(':') else {
                    return self.syntax(line.len() + 1, "expected `ideal <name>: <generators>`");
                };
                let head = tokens(&line[..colon], 0);
                let (name, _) = self.decl_name(head.get(1), "ideal", colon + 1)?;
                if let Some(t) = head.get(2) {
                    return self.syntax(t.col + 1, format!("unexpected {:?}", t.text));
                }
                let gens = self.polys(&line[colon + 1..], colon + 1)?;
                self.ideals.insert(name.clone());
                Ok(Some(Stmt::Ideal { name, gens }))
            }
            "tower" => {
                let n = self.ring(verb.col + 1)?.n;
                let Some(colon) = line.find(':') else {
                    return self.syntax(line.len() + 1, "expected `tower <name>: <steps>`");
                };
                let head = tokens(&line[..colon], 0);
                let (name, _) = self.decl_name(head.get(1), "tower", colon + 1)?;
                let mut steps = Vec::new();
                let body = &line[colon + 1..];
                let mut offset = colon + 1;
                if !body.trim().is_empty() {
                    for part in body.split(';') {
                        steps.push(self.step(part, offset, n)?);
                        offset += part.len() + 1;
                    }
                }
                self.towers.insert(name.clone());
                Ok(Some(Stmt::Tower { name, steps }))
            }
            "verifylift" => {
                self.ring(verb.col + 1)?;
                let saved = self.ring.clone();
                // generators of a lift are rationals even when the ring is F_p
                self.ring = saved.clone().map(|r| Ring { field: Field::Rationals, ..r });
                let cmd = self.verify_lift(line);
                self.ring = saved;
                Ok(Some(Stmt::Command { text: line.trim().to_string(), command: cmd? }))
            }
            _ => {
                let command = self.command(verb, &toks[1..], line)?;
                Ok(Some(Stmt::Command { text: line.trim().to_string(), command }))
            }
        }
    }
}

/// Parses a whole script; the first error stops parsing.
pub fn parse_script(text: &str) -> Result<Script, ScriptError> {
    let mut p = Parser { ring: None, ideals: BTreeSet::new(), towers: BTreeSet::new(), line: 0 };
    let mut stmts = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        p.line = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if let Some(s) = p.statement(line)? {
            stmts.push((p.line, s));
        }
    }
    match p.ring {
        Some(ring) => Ok(Script { ring, stmts }),
        None => Err(ScriptError::Syntax { line: p.line.max(1), col: 1, message: "script has no ring declaration".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_basic_script() {
        let s = parse_script(
            "ring N=2 p=5\nideal a: x1, x2\ntower T: blowup chart=root point=(0,0); blowup chart=1 set=(x1=0, x2=0)\nbridge T a\n",
        )
        .unwrap();
        assert_eq!(s.ring, Ring { n: 2, field: Field::Prime(5) });
        assert_eq!(s.stmts.len(), 3);
        let Stmt::Tower { steps, .. } = &s.stmts[1].1 else { panic!() };
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[1].chart, 1);
        assert_eq!(
            s.commands().next(),
            Some(&Command::Bridge { tower: "T".into(), ideals: vec!["a".into()], exponents: vec![] })
        );
    }

    #[test]
    fn reports_misspelled_variable_with_location() {
        let err = parse_script("ring N=2 p=5\nideal a: x1, x3\n").unwrap_err();
        assert_eq!(err, ScriptError::Syntax { line: 2, col: 14, message: "unknown variable 'x3'".into() });
    }

    #[test]
    fn reports_unknown_names() {
        let err = parse_script("ring N=2 p=5\nlct b\n").unwrap_err();
        assert!(matches!(err, ScriptError::UnknownName { line: 2, ref name, .. } if name == "b"));
        let err = parse_script("ring N=2 p=5\nideal a: x1\nkeval T\n").unwrap_err();
        assert!(matches!(err, ScriptError::UnknownName { line: 3, .. }));
    }

    #[test]
    fn ring_errors() {
        assert!(matches!(
            parse_script("ring N=2 p=5\nring N=3 p=5\n").unwrap_err(),
            ScriptError::RingMismatch { line: 2, .. }
        ));
        assert!(matches!(
            parse_script("ring N=2 p=5\nideal a: x1/5\n").unwrap_err(),
            ScriptError::RingMismatch { line: 2, .. }
        ));
        assert!(matches!(parse_script("ideal a: x1\n").unwrap_err(), ScriptError::Syntax { line: 1, .. }));
        assert!(matches!(parse_script("ring N=2 p=6\n").unwrap_err(), ScriptError::Syntax { .. }));
    }

    #[test]
    fn factors_options_and_lifts() {
        let s = parse_script(
            "ring N=2 Q\nideal a: x1, x2\nideal b: x1\nmld a^1/2 b cap=3\nlct a toric\ntower T:\nbridge T a b e=(1,2) e=1/2,1/2\n",
        )
        .unwrap();
        let cmds: Vec<&Command> = s.commands().collect();
        let half = BigRational::new(1.into(), 2.into());
        let one = BigRational::from_integer(1.into());
        assert_eq!(
            cmds[0],
            &Command::Mld {
                factors: vec![
                    Factor { ideal: "a".into(), exponent: half.clone() },
                    Factor { ideal: "b".into(), exponent: one.clone() }
                ],
                cap: Some(3)
            }
        );
        assert_eq!(cmds[1], &Command::Lct { ideal: "a".into(), cap: None, toric: true });
        let Command::Bridge { exponents, .. } = cmds[2] else { panic!() };
        assert_eq!(exponents, &vec![vec![one, BigRational::from_integer(2.into())], vec![half.clone(), half]]);
        let s = parse_script("ring N=2 p=5\nideal a: x2 + 4*x1\ntower T: blowup chart=root point=(0,0)\nverifylift T a = x2 - x1\n")
            .unwrap();
        assert!(matches!(s.commands().next(), Some(Command::VerifyLift { lift, .. }) if lift.len() == 1));
    }
}
