//! Exact replay of the inequality derivations behind the vertex bounds.
//!
//! Every hypothesis is a linear inequality over named nonnegative integer
//! quantities. A derivation step claims an inequality and justifies it by
//! nonnegative rational multipliers on earlier inequalities plus explicitly
//! discarded nonnegative slack forms; the claim must equal the weighted sum
//! plus the slacks as an exact identity of linear forms.

mod hypotheses;
mod linform;
mod table;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

pub use hypotheses::{hypotheses, variable_universe};
pub use linform::{rat, LinForm, Sense};
pub use table::{builtin_table, parse_table, DerivationStep};

use crate::certificate::Mode;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FarkasError {
    #[error("cannot parse `{text}`: {msg}")]
    Syntax { text: String, msg: String },
    #[error("table line {line}: {msg}")]
    Table { line: usize, msg: String },
    #[error("step {step}: unknown inequality `{id}`")]
    UnknownId { step: String, id: String },
    #[error("step {step}: negative multiplier on `{id}`")]
    NegativeMultiplier { step: String, id: String },
    #[error("step {step}: slack `{form}` is not nonnegative")]
    NegativeSlack { step: String, form: String },
    #[error("step {step}: identity fails, residual {residual}")]
    StepFailed { step: String, residual: String },
    #[error("step {0} is defined twice")]
    DuplicateStep(String),
    #[error("`{0}` is not a declared variable")]
    UnknownVariable(String),
    #[error("no value for variable `{0}`")]
    MissingVariable(String),
    #[error("final inequality `{got}` differs from the target `{expected}`")]
    TargetMismatch { expected: String, got: String },
    #[error("table has no steps")]
    EmptyTable,
}

/// A named relation `lhs sense rhs`. Equalities are registered as the two
/// halves `<id>.le` and `<id>.ge`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub id: String,
    pub lhs: LinForm,
    pub sense: Sense,
    pub rhs: LinForm,
}

impl Inequality {
    pub fn new(id: impl Into<String>, lhs: LinForm, sense: Sense, rhs: LinForm) -> Self {
        Inequality {
            id: id.into(),
            lhs,
            sense,
            rhs,
        }
    }

    pub fn parse(id: impl Into<String>, text: &str) -> Result<Self, FarkasError> {
        let mut p = linform::Parser::new(text);
        let lhs = p.form()?;
        let sense = p.sense().ok_or_else(|| FarkasError::Syntax {
            text: text.to_string(),
            msg: "missing relation".into(),
        })?;
        let rhs = p.form()?;
        if !p.finished() {
            return Err(FarkasError::Syntax {
                text: text.to_string(),
                msg: "trailing input".into(),
            });
        }
        Ok(Inequality::new(id, lhs, sense, rhs))
    }

    /// The form `f` with the relation meaning `f >= 0`. Equalities normalise
    /// like `>=`.
    pub fn normalized(&self) -> LinForm {
        match self.sense {
            Sense::Le => self.rhs.clone() - self.lhs.clone(),
            Sense::Ge | Sense::Eq => self.lhs.clone() - self.rhs.clone(),
        }
    }

    /// `<id>.le` and `<id>.ge` for an equality; the inequality itself
    /// otherwise.
    pub fn halves(&self) -> Vec<Inequality> {
        match self.sense {
            Sense::Eq => vec![
                Inequality::new(format!("{}.le", self.id), self.lhs.clone(), Sense::Le, self.rhs.clone()),
                Inequality::new(format!("{}.ge", self.id), self.lhs.clone(), Sense::Ge, self.rhs.clone()),
            ],
            _ => vec![self.clone()],
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.lhs
            .variables()
            .chain(self.rhs.variables())
            .map(str::to_string)
            .collect()
    }

    /// Same relation up to moving terms across and positive scaling is not
    /// accepted; this is equality of the normalised forms.
    pub fn same_as(&self, other: &Inequality) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn pretty(&self) -> String {
        let sense = match self.sense {
            Sense::Le => "≤",
            Sense::Ge => "≥",
            Sense::Eq => "=",
        };
        format!("{} {} {}", self.lhs.pretty(), sense, self.rhs.pretty())
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.sense, self.rhs)
    }
}

/// Nonnegative combination of inequalities, as the form asserted `>= 0`.
pub fn combine(items: &[(BigRational, &Inequality)]) -> Result<LinForm, FarkasError> {
    let mut total = LinForm::zero();
    for (m, ineq) in items {
        if m.is_negative() {
            return Err(FarkasError::NegativeMultiplier {
                step: String::new(),
                id: ineq.id.clone(),
            });
        }
        total = total + ineq.normalized().scale(m);
    }
    Ok(total)
}

/// Known inequalities by id: hypotheses (with equality halves) and the
/// results of verified steps.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    known: BTreeMap<String, Inequality>,
}

impl Registry {
    pub fn new(hyps: &[Inequality]) -> Self {
        let mut r = Registry::default();
        for h in hyps {
            for half in h.halves() {
                r.known.insert(half.id.clone(), half);
            }
        }
        r
    }

    pub fn for_mode(mode: Mode) -> Self {
        Registry::new(&hypotheses(mode))
    }

    pub fn get(&self, id: &str) -> Option<&Inequality> {
        self.known.get(id)
    }

    pub fn insert(&mut self, ineq: Inequality) {
        self.known.insert(ineq.id.clone(), ineq);
    }

    pub fn remove(&mut self, id: &str) -> Option<Inequality> {
        self.known.remove(id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.known.keys().map(String::as_str)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepCheck {
    pub ok: bool,
    /// `claimed - (sum of multiplier * form) - slacks`, zero when ok.
    pub residual: LinForm,
}

/// Checks one step against the registry without registering it.
pub fn verify_step(step: &DerivationStep, registry: &Registry) -> Result<StepCheck, FarkasError> {
    let mut items = Vec::with_capacity(step.multipliers.len());
    for (m, id) in &step.multipliers {
        let ineq = registry.get(id).ok_or_else(|| FarkasError::UnknownId {
            step: step.name.clone(),
            id: id.clone(),
        })?;
        if m.is_negative() {
            return Err(FarkasError::NegativeMultiplier {
                step: step.name.clone(),
                id: id.clone(),
            });
        }
        items.push((m.clone(), ineq));
    }
    let mut residual = step.claim.normalized() - combine(&items)?;
    for s in &step.slacks {
        if !s.is_nonnegative() {
            return Err(FarkasError::NegativeSlack {
                step: step.name.clone(),
                form: s.to_string(),
            });
        }
        residual = residual - s.clone();
    }
    Ok(StepCheck {
        ok: residual.is_zero(),
        residual,
    })
}

/// Integer form of a final bound `a|V(G)| <= b g + c`: with `b/a` integral,
/// `|V(G)| <= (b/a) g + floor(c/a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundedBound {
    pub slope: i64,
    pub intercept: i64,
}

impl RoundedBound {
    pub fn at(&self, g: i64) -> i64 {
        self.slope * g + self.intercept
    }
}

impl fmt::Display for RoundedBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.intercept.cmp(&0) {
            std::cmp::Ordering::Less => write!(f, "|V(G)| <= {}g - {}", self.slope, -self.intercept),
            std::cmp::Ordering::Equal => write!(f, "|V(G)| <= {}g", self.slope),
            std::cmp::Ordering::Greater => write!(f, "|V(G)| <= {}g + {}", self.slope, self.intercept),
        }
    }
}

/// Rounds `ineq` when it has the shape `a|V(G)| <= b g + c` with `a > 0` and
/// `a | b`.
pub fn round_vertex_bound(ineq: &Inequality) -> Option<RoundedBound> {
    let f = ineq.normalized();
    let vars: Vec<&str> = f.variables().collect();
    if vars.iter().any(|v| *v != "|V(G)|" && *v != "g") {
        return None;
    }
    let a = -f.coefficient("|V(G)|");
    if !a.is_positive() {
        return None;
    }
    let slope = f.coefficient("g") / &a;
    let c = f.constant_term() / &a;
    if !slope.is_integer() {
        return None;
    }
    let intercept = c.numer().div_floor(c.denom());
    let to_i64 = |x: &BigInt| i64::try_from(x).ok();
    Some(RoundedBound {
        slope: to_i64(slope.numer())?,
        intercept: to_i64(&intercept)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub name: String,
    pub claim: Inequality,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationLog {
    pub mode: Mode,
    pub steps: Vec<StepRecord>,
    pub conclusion: Inequality,
    pub rounded: Option<RoundedBound>,
}

/// Target of each built-in derivation.
pub fn target(mode: Mode) -> Inequality {
    let text = match mode {
        Mode::Full => "21|V(G)| <= 273g - 72",
        Mode::Simple => "|V(G)| <= 25g - 12",
    };
    Inequality::parse("target", text).expect("target parses")
}

/// Replays `steps` in order, registering each verified claim under its step
/// name. The last claim must match `target(mode)`.
pub fn verify_derivation(
    mode: Mode,
    steps: &[DerivationStep],
    mut registry: Registry,
) -> Result<DerivationLog, FarkasError> {
    let universe = variable_universe();
    let mut records = Vec::new();
    for step in steps {
        for v in step.claim.variables() {
            if !universe.contains(&v) {
                return Err(FarkasError::UnknownVariable(v));
            }
        }
        if registry.get(&step.name).is_some() {
            return Err(FarkasError::DuplicateStep(step.name.clone()));
        }
        let check = verify_step(step, &registry)?;
        if !check.ok {
            return Err(FarkasError::StepFailed {
                step: step.name.clone(),
                residual: check.residual.to_string(),
            });
        }
        let mut claim = step.claim.clone();
        claim.id = step.name.clone();
        registry.insert(claim.clone());
        records.push(StepRecord {
            name: step.name.clone(),
            claim,
            ok: true,
        });
    }
    let conclusion = records.last().ok_or(FarkasError::EmptyTable)?.claim.clone();
    let expected = target(mode);
    if !conclusion.same_as(&expected) {
        return Err(FarkasError::TargetMismatch {
            expected: expected.to_string(),
            got: conclusion.to_string(),
        });
    }
    Ok(DerivationLog {
        mode,
        rounded: round_vertex_bound(&conclusion),
        steps: records,
        conclusion,
    })
}

/// Replays the bundled table for `mode`.
pub fn verify_paper_derivation(mode: Mode) -> Result<DerivationLog, FarkasError> {
    let steps = parse_table(builtin_table(mode))?;
    verify_derivation(mode, &steps, Registry::for_mode(mode))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instantiation {
    pub holds: bool,
    /// Value of the normalised form (`>= 0` when the relation holds).
    pub gap: String,
}

/// Substitutes instance values into `ineq`.
pub fn instantiate(ineq: &Inequality, values: &BTreeMap<String, i64>) -> Result<Instantiation, FarkasError> {
    let v = ineq.normalized().evaluate(values)?;
    let holds = match ineq.sense {
        Sense::Eq => v.is_zero(),
        _ => !v.is_negative(),
    };
    Ok(Instantiation {
        holds,
        gap: v.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ineq(id: &str, text: &str) -> Inequality {
        Inequality::parse(id, text).unwrap()
    }

    #[test]
    fn combine_trivial() {
        let x = ineq("x", "x >= 0");
        let y = ineq("y", "y >= 0");
        let f = combine(&[(rat(2), &x), (rat(3), &y)]).unwrap();
        assert_eq!(f, LinForm::parse("2x + 3y").unwrap());
        let a = ineq("a", "x >= 1");
        let b = ineq("b", "-x >= -1");
        assert!(combine(&[(rat(1), &a), (rat(1), &b)]).unwrap().is_zero());
        assert!(combine(&[(rat(-1), &a)]).is_err());
    }

    #[test]
    fn equality_halves() {
        let e = ineq("eq", "x = y + 1");
        let h = e.halves();
        assert_eq!(h[0].id, "eq.le");
        assert_eq!(h[1].id, "eq.ge");
        assert_eq!(h[0].normalized(), -h[1].normalized());
    }

    #[test]
    fn normalisation_keeps_orientation() {
        let i = ineq("i", "4|U_5| <= 38|S_4| + 10g");
        assert_eq!(i.sense, Sense::Le);
        assert_eq!(i.lhs.to_string(), "4|U_5|");
        assert_eq!(i.normalized().to_string(), "38|S_4| - 4|U_5| + 10g");
    }

    #[test]
    fn rounding() {
        let r = round_vertex_bound(&ineq("f", "21|V(G)| <= 273g - 72")).unwrap();
        assert_eq!((r.slope, r.intercept), (13, -4));
        assert_eq!(r.at(1), 9);
        assert_eq!(r.to_string(), "|V(G)| <= 13g - 4");
        let r = round_vertex_bound(&ineq("f", "|V(G)| <= 25g - 12")).unwrap();
        assert_eq!((r.slope, r.intercept), (25, -12));
        assert!(round_vertex_bound(&ineq("f", "2|V(G)| <= 3g")).is_none());
    }

    #[test]
    fn instantiate_values() {
        let vals = BTreeMap::from([("x".to_string(), 2), ("y".to_string(), 3)]);
        let i = instantiate(&ineq("i", "x <= y"), &vals).unwrap();
        assert!(i.holds);
        assert_eq!(i.gap, "1");
        let i = instantiate(&ineq("i", "x = y"), &vals).unwrap();
        assert!(!i.holds);
        assert!(instantiate(&ineq("i", "z <= y"), &vals).is_err());
    }
}
