use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use super::linform::{rat, LinForm, Parser};
use super::{FarkasError, Inequality};
use crate::certificate::Mode;

const FULL: &str = include_str!("../../data/derivation_full.txt");
const SIMPLE: &str = include_str!("../../data/derivation_simple.txt");

pub fn builtin_table(mode: Mode) -> &'static str {
    match mode {
        Mode::Full => FULL,
        Mode::Simple => SIMPLE,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationStep {
    pub name: String,
    pub multipliers: Vec<(BigRational, String)>,
    pub slacks: Vec<LinForm>,
    pub claim: Inequality,
}

impl fmt::Display for DerivationStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: ", self.name)?;
        let terms: Vec<String> = self.multipliers.iter().map(|(m, id)| format!("{m}*{id}")).collect();
        f.write_str(&terms.join(" + "))?;
        for s in &self.slacks {
            write!(f, " ; slack {s}")?;
        }
        write!(f, " ; gives {}", self.claim)
    }
}

fn table_err(line: usize, msg: impl Into<String>) -> FarkasError {
    FarkasError::Table { line, msg: msg.into() }
}

fn parse_multiplier(line: usize, term: &str) -> Result<(BigRational, String), FarkasError> {
    let (coef, id) = match term.split_once('*') {
        Some((c, id)) => {
            let mut p = Parser::new(c.trim());
            let m = p
                .rational()?
                .filter(|_| p.finished())
                .ok_or_else(|| table_err(line, format!("bad multiplier `{c}`")))?;
            (m, id.trim())
        }
        None => (rat(1), term.trim()),
    };
    if id.is_empty() || id.contains(char::is_whitespace) {
        return Err(table_err(line, format!("bad inequality id `{id}`")));
    }
    Ok((coef, id.to_string()))
}

fn parse_step(line: usize, text: &str) -> Result<DerivationStep, FarkasError> {
    let body = text
        .strip_prefix("step ")
        .ok_or_else(|| table_err(line, "block must start with `step`"))?;
    let (name, rest) = body
        .split_once(':')
        .ok_or_else(|| table_err(line, "missing `:` after step name"))?;
    let name = name.trim().to_string();
    let mut parts = rest.split(';');
    let combo = parts.next().unwrap_or("").trim();
    let multipliers = if combo.is_empty() {
        Vec::new()
    } else {
        combo
            .split('+')
            .map(|t| parse_multiplier(line, t))
            .collect::<Result<_, _>>()?
    };
    let mut slacks = Vec::new();
    let mut claim = None;
    for part in parts {
        let part = part.trim();
        if let Some(form) = part.strip_prefix("slack ") {
            slacks.push(LinForm::parse(form.trim())?);
        } else if let Some(ineq) = part.strip_prefix("gives ") {
            if claim.is_some() {
                return Err(table_err(line, "more than one `gives`"));
            }
            claim = Some(Inequality::parse(name.clone(), ineq.trim())?);
        } else {
            return Err(table_err(line, format!("unexpected clause `{part}`")));
        }
    }
    let claim = claim.ok_or_else(|| table_err(line, "missing `gives`"))?;
    Ok(DerivationStep {
        name,
        multipliers,
        slacks,
        claim,
    })
}

/// Parses a derivation table: `#` comments, one step per block of
/// consecutive lines, blocks separated by blank lines.
pub fn parse_table(text: &str) -> Result<Vec<DerivationStep>, FarkasError> {
    let mut steps = Vec::new();
    let mut block = String::new();
    let mut start = 0;
    let flush = |block: &mut String, start: usize, steps: &mut Vec<DerivationStep>| -> Result<(), FarkasError> {
        if !block.trim().is_empty() {
            steps.push(parse_step(start, block.trim())?);
        }
        block.clear();
        Ok(())
    };
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if raw.trim().is_empty() {
            flush(&mut block, start, &mut steps)?;
            continue;
        }
        if line.is_empty() {
            continue;
        }
        if block.is_empty() {
            start = k + 1;
        }
        block.push(' ');
        block.push_str(line);
    }
    flush(&mut block, start, &mut steps)?;
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_single_step() {
        let t = "# comment\nstep s: 2*a + b\n  ; slack 4c_4 ; gives x <= y\n\nstep t: 1/2*s ; gives x <= 2y\n";
        let steps = parse_table(t).unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0].name, "s");
        assert_eq!(steps[0].multipliers, vec![(rat(2), "a".into()), (rat(1), "b".into())]);
        assert_eq!(steps[0].slacks, vec![LinForm::parse("4c_4").unwrap()]);
        assert_eq!(steps[1].multipliers[0].0, BigRational::new(1.into(), 2.into()));
        let again = parse_table(&steps[0].to_string()).unwrap();
        assert_eq!(again[0], steps[0]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_table("\n\nstep s: x*a ; gives x <= y").unwrap_err();
        assert!(matches!(err, FarkasError::Table { line: 3, .. }), "{err}");
        assert!(parse_table("step s: a").is_err());
        assert!(parse_table("stop s: a ; gives x <= y").is_err());
    }

    #[test]
    fn builtin_tables_parse() {
        assert!(!parse_table(builtin_table(Mode::Full)).unwrap().is_empty());
        assert!(!parse_table(builtin_table(Mode::Simple)).unwrap().is_empty());
    }
}
