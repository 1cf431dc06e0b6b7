//! Quantum integers and the built-in quadratic addition rules.
//!
//! The quantum integer `[n]_q` is the polynomial `1 + q + ... + q^{n-1}`,
//! with `[0]_q = 0`. Four addition rules ship as ready-made values: the
//! fundamental rule, two further quadratic rules and the linear rule
//! `a + q^m b` embedded as a quadratic rule with an identically-zero
//! product coefficient.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::Error;
use crate::polyring::{Poly, Rat};
use crate::rules::{PairTable, QuadRule, SeqTable};

/// The quantum integer `[n]_q = 1 + q + ... + q^{n-1}`, with `[0]_q = 0`.
pub fn quantum_int(n: usize) -> Poly {
    Poly::from_coeffs(vec![Rat::one(); n])
}

/// The indicator of n = 1, as a constant polynomial.
pub(crate) fn delta(n: usize) -> Poly {
    if n == 1 {
        Poly::one()
    } else {
        Poly::zero()
    }
}

/// Names of the built-in addition rules, spelled exactly as the CLI accepts
/// them: `fundamental`, `rule1`, `rule2`, `linear_example`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleName {
    Fundamental,
    Rule1,
    Rule2,
    LinearExample,
}

impl RuleName {
    pub const ALL: [RuleName; 4] = [
        RuleName::Fundamental,
        RuleName::Rule1,
        RuleName::Rule2,
        RuleName::LinearExample,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleName::Fundamental => "fundamental",
            RuleName::Rule1 => "rule1",
            RuleName::Rule2 => "rule2",
            RuleName::LinearExample => "linear_example",
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "fundamental" => Ok(RuleName::Fundamental),
            "rule1" => Ok(RuleName::Rule1),
            "rule2" => Ok(RuleName::Rule2),
            "linear_example" => Ok(RuleName::LinearExample),
            other => Err(Error::UnknownRuleName(other.to_string())),
        }
    }
}

/// Build a built-in rule tabulated up to `horizon`.
///
/// Coefficient families:
/// - fundamental: `r'_n = 1 - d_n`, `s'_m = 1 - d_m`, `t'_{m,n} = q - 1 + d_m + d_n`
/// - rule1: `(1, 1, q - 1)`
/// - rule2: `(q^n, q^m, 1 - q)`
/// - linear_example: `(1, q^m, 0)`
///
/// where `d_k` is 1 at k = 1 and 0 otherwise.
pub fn named_rule(name: RuleName, horizon: usize) -> QuadRule {
    assert!(horizon >= 1, "horizon must be positive");
    let one_minus_q = Poly::one() - Poly::q();
    let q_minus_one = Poly::q() - Poly::one();
    let (r, s, t) = match name {
        RuleName::Fundamental => (
            SeqTable::from_fn(horizon, |n| Poly::one() - delta(n)),
            SeqTable::from_fn(horizon, |m| Poly::one() - delta(m)),
            PairTable::from_fn(horizon, |m, n| &(&q_minus_one + &delta(m)) + &delta(n)),
        ),
        RuleName::Rule1 => (
            SeqTable::from_fn(horizon, |_| Poly::one()),
            SeqTable::from_fn(horizon, |_| Poly::one()),
            PairTable::from_fn(horizon, |_, _| q_minus_one.clone()),
        ),
        RuleName::Rule2 => (
            SeqTable::from_fn(horizon, |n| Poly::monomial(Rat::one(), n)),
            SeqTable::from_fn(horizon, |m| Poly::monomial(Rat::one(), m)),
            PairTable::from_fn(horizon, |_, _| one_minus_q.clone()),
        ),
        RuleName::LinearExample => (
            SeqTable::from_fn(horizon, |_| Poly::one()),
            SeqTable::from_fn(horizon, |m| Poly::monomial(Rat::one(), m)),
            PairTable::from_fn(horizon, |_, _| Poly::zero()),
        ),
    };
    QuadRule::from_tables(r, s, t).expect("built-in tables share one horizon")
}
