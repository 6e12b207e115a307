use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::FarkasError;

/// An affine form over named variables with exact rational coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinForm {
    terms: BTreeMap<String, BigRational>,
    constant: BigRational,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LinForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        LinForm {
            terms: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn var(name: &str) -> Self {
        Self::term(rat(1), name)
    }

    pub fn term(coef: BigRational, name: &str) -> Self {
        let mut f = Self::zero();
        f.add_term(name, coef);
        f
    }

    pub fn add_term(&mut self, name: &str, coef: BigRational) {
        let entry = self.terms.entry(name.to_string()).or_insert_with(BigRational::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(name);
        }
    }

    pub fn add_constant(&mut self, c: BigRational) {
        self.constant += c;
    }

    pub fn coefficient(&self, name: &str) -> BigRational {
        self.terms.get(name).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> &BigRational {
        &self.constant
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &BigRational)> {
        self.terms.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.terms.keys().map(String::as_str)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    /// Every coefficient and the constant are `>= 0`, so the form is
    /// nonnegative whenever all variables are.
    pub fn is_nonnegative(&self) -> bool {
        !self.constant.is_negative() && self.terms.values().all(|c| c.is_positive())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LinForm {
            terms: self.terms.iter().map(|(n, c)| (n.clone(), c * k)).collect(),
            constant: &self.constant * k,
        }
    }

    pub fn evaluate(&self, values: &BTreeMap<String, i64>) -> Result<BigRational, FarkasError> {
        let mut total = self.constant.clone();
        for (name, c) in &self.terms {
            let v = values
                .get(name)
                .ok_or_else(|| FarkasError::MissingVariable(name.clone()))?;
            total += c * rat(*v);
        }
        Ok(total)
    }

    pub fn parse(text: &str) -> Result<Self, FarkasError> {
        Parser::new(text).form()
    }

    /// Rendering with Unicode minus signs.
    pub fn pretty(&self) -> String {
        self.to_string().replace(" - ", " − ").replace("-", "−")
    }
}

impl Add for LinForm {
    type Output = LinForm;
    fn add(mut self, rhs: LinForm) -> LinForm {
        for (n, c) in rhs.terms {
            self.add_term(&n, c);
        }
        self.constant += rhs.constant;
        self
    }
}

impl Neg for LinForm {
    type Output = LinForm;
    fn neg(self) -> LinForm {
        self.scale(&-rat(1))
    }
}

impl Sub for LinForm {
    type Output = LinForm;
    fn sub(self, rhs: LinForm) -> LinForm {
        self + (-rhs)
    }
}

fn fmt_coef(c: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.is_integer() {
        if !c.is_one() {
            write!(f, "{}", c.numer())?;
        }
        Ok(())
    } else {
        write!(f, "{}/{}*", c.numer(), c.denom())
    }
}

/// Set sizes first, then component counts, edge counts, and `g` last.
fn display_class(name: &str) -> u8 {
    if name.starts_with('|') {
        0
    } else if name.starts_with("c_") {
        1
    } else if name.starts_with("e(") {
        2
    } else {
        3
    }
}

/// `name` with every digit run zero-padded, so `A_4` sorts before `A_10`.
fn natural_key(name: &str) -> String {
    let mut out = String::with_capacity(name.len() + 8);
    let mut digits = String::new();
    for ch in name.chars().chain(std::iter::once('\0')) {
        if ch.is_ascii_digit() {
            digits.push(ch);
            continue;
        }
        if !digits.is_empty() {
            out.push_str(&format!("{digits:0>6}"));
            digits.clear();
        }
        if ch != '\0' {
            out.push(ch);
        }
    }
    out
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut ordered: Vec<(&String, &BigRational)> = self.terms.iter().collect();
        ordered.sort_by_cached_key(|(name, _)| (display_class(name), natural_key(name)));
        for (name, c) in ordered {
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            fmt_coef(&mag, f)?;
            f.write_str(name)?;
            first = false;
        }
        if first {
            return write!(f, "{}", self.constant);
        }
        if !self.constant.is_zero() {
            let sign = if self.constant.is_negative() { " - " } else { " + " };
            write!(f, "{sign}{}", self.constant.abs())?;
        }
        Ok(())
    }
}

impl Serialize for LinForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub(super) struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    pub(super) fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err(&self, msg: &str) -> FarkasError {
        FarkasError::Syntax {
            text: self.src.to_string(),
            msg: format!("{msg} at byte {}", self.pos),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&pred) {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    /// `p` or `p/q`.
    pub(super) fn rational(&mut self) -> Result<Option<BigRational>, FarkasError> {
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Ok(None);
        }
        let p: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
        if self.peek() == Some('/') {
            self.bump();
            let d = self.take_while(|c| c.is_ascii_digit());
            let q: BigInt = d.parse().map_err(|_| self.err("bad denominator"))?;
            if q.is_zero() {
                return Err(self.err("zero denominator"));
            }
            return Ok(Some(BigRational::new(p, q)));
        }
        Ok(Some(BigRational::from_integer(p)))
    }

    fn variable(&mut self) -> Result<Option<String>, FarkasError> {
        let start = self.pos;
        match self.peek() {
            Some('|') => {
                self.bump();
                self.take_while(|c| c != '|');
                if self.bump() != Some('|') {
                    return Err(self.err("unclosed |"));
                }
            }
            Some('e') if self.rest().starts_with("e(") => {
                self.take_while(|c| c != ')');
                if self.bump() != Some(')') {
                    return Err(self.err("unclosed e("));
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
            }
            _ => return Ok(None),
        }
        Ok(Some(self.src[start..self.pos].to_string()))
    }

    fn at_form_end(&self) -> bool {
        let r = self.rest();
        r.is_empty() || r.starts_with(['<', '>', '=', '≤', '≥', ';'])
    }

    pub(super) fn form(&mut self) -> Result<LinForm, FarkasError> {
        let mut f = LinForm::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            if self.at_form_end() {
                if first {
                    return Err(self.err("empty form"));
                }
                return Ok(f);
            }
            let mut sign = rat(1);
            match self.peek() {
                Some('+') if !first => {
                    self.bump();
                }
                Some('-' | '−') => {
                    self.bump();
                    sign = -sign;
                }
                _ if !first => return Err(self.err("expected + or -")),
                _ => {}
            }
            self.skip_ws();
            let coef = self.rational()?;
            if coef.is_some() {
                self.skip_ws();
                if self.peek() == Some('*') {
                    self.bump();
                    self.skip_ws();
                }
            }
            let var = self.variable()?;
            match (coef, var) {
                (None, None) => return Err(self.err("expected a term")),
                (c, None) => f.add_constant(sign * c.unwrap()),
                (c, Some(v)) => f.add_term(&v, sign * c.unwrap_or_else(|| rat(1))),
            }
            first = false;
        }
    }

    /// The relation symbol, if any, at the cursor.
    pub(super) fn sense(&mut self) -> Option<Sense> {
        self.skip_ws();
        for (tok, s) in [
            ("<=", Sense::Le),
            (">=", Sense::Ge),
            ("≤", Sense::Le),
            ("≥", Sense::Ge),
            ("=", Sense::Eq),
        ] {
            if self.rest().starts_with(tok) {
                self.pos += tok.len();
                return Some(s);
            }
        }
        None
    }

    pub(super) fn finished(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        })
    }
}
