//! Classification of quadratic addition rules: every rule corresponds to a
//! pair of sequences (U, V) on top of the fundamental rule.
//!
//! `rule_from_uv` realizes the forward direction
//! (`r'_n = u_n [n]_q + 1 - d_n`, `s'_m = v_m [m]_q + 1 - d_m`,
//! `t'_{m,n} = q - 1 - u_n - v_m + d_m + d_n`), `extract_uv` inverts it by
//! exact division, and `normalize` runs the division-algorithm standard form
//! on arbitrary tables, splitting them into a zero identity plus a residual
//! that is the fundamental rule exactly when the input verifies.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::zero_identity_from_uv;
use crate::polyring::Poly;
use crate::quantum::{delta, named_rule, quantum_int, RuleName};
use crate::rules::{PairTable, QuadRule, SeqTable};

/// Outcome of the division-algorithm standard form: the extracted (U, V),
/// the residual rule, and whether the residual is exactly the fundamental
/// rule (always true for inputs that verify).
#[derive(Debug, Clone, Serialize)]
pub struct NormalizationResult {
    #[serde(rename = "U")]
    pub u: SeqTable,
    #[serde(rename = "V")]
    pub v: SeqTable,
    pub residual: QuadRule,
    pub is_fundamental: bool,
}

/// The (U, V) pair in its file form: `{"U": [Poly...], "V": [Poly...]}`
/// with both sequences populated to one horizon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UvTables {
    #[serde(rename = "U")]
    pub u: SeqTable,
    #[serde(rename = "V")]
    pub v: SeqTable,
}

impl UvTables {
    pub fn new(u: SeqTable, v: SeqTable) -> Result<Self> {
        if u.horizon() != v.horizon() {
            return Err(Error::MalformedTables(format!(
                "U has {} entries but V has {}",
                u.horizon(),
                v.horizon()
            )));
        }
        if u.horizon() == 0 {
            return Err(Error::MalformedTables("U and V must be nonempty".into()));
        }
        Ok(UvTables { u, v })
    }

    pub fn horizon(&self) -> usize {
        self.u.horizon()
    }

    /// Re-validate after deserialization.
    pub fn validate(self) -> Result<Self> {
        UvTables::new(self.u, self.v)
    }
}

/// Build the addition rule determined by (U, V). The result always
/// verifies and caches its parameterization.
pub fn rule_from_uv(u_seq: &SeqTable, v_seq: &SeqTable, horizon: usize) -> QuadRule {
    assert!(
        horizon >= 1 && horizon <= u_seq.horizon() && horizon <= v_seq.horizon(),
        "sequences must be populated to the requested horizon"
    );
    let q_minus_one = Poly::q() - Poly::one();
    let r = SeqTable::from_fn(horizon, |n| {
        &(u_seq.get(n) * &quantum_int(n)) + &(Poly::one() - delta(n))
    });
    let s = SeqTable::from_fn(horizon, |m| {
        &(v_seq.get(m) * &quantum_int(m)) + &(Poly::one() - delta(m))
    });
    let t = PairTable::from_fn(horizon, |m, n| {
        &(&(&q_minus_one - u_seq.get(n)) - v_seq.get(m)) + &(delta(m) + delta(n))
    });
    QuadRule::from_tables(r, s, t)
        .expect("tables constructed at one horizon")
        .with_uv(u_seq.truncated(horizon), v_seq.truncated(horizon))
}

/// Invert the classification: recover (U, V) from a rule's tables by exact
/// division of `r'_n - 1 + d_n` by `[n]_q` (and symmetrically for V), then
/// re-assert the `t'` formula. Tables that fail either step are not
/// addition rules.
pub fn extract_uv(rule: &QuadRule, horizon: usize) -> Result<(SeqTable, SeqTable)> {
    assert!(
        horizon <= rule.horizon(),
        "extraction horizon {horizon} exceeds rule horizon {}",
        rule.horizon()
    );
    let mut u_entries = Vec::with_capacity(horizon);
    for n in 1..=horizon {
        let numer = &(rule.r(n) - &Poly::one()) + &delta(n);
        let (quot, rem) = numer.divrem(&quantum_int(n))?;
        if !rem.is_zero() {
            return Err(Error::NotAQuantumAdditionRule(format!(
                "[{n}]_q does not divide r'_{n} - 1 + d_{n}"
            )));
        }
        u_entries.push(quot);
    }
    let mut v_entries = Vec::with_capacity(horizon);
    for m in 1..=horizon {
        let numer = &(rule.s(m) - &Poly::one()) + &delta(m);
        let (quot, rem) = numer.divrem(&quantum_int(m))?;
        if !rem.is_zero() {
            return Err(Error::NotAQuantumAdditionRule(format!(
                "[{m}]_q does not divide s'_{m} - 1 + d_{m}"
            )));
        }
        v_entries.push(quot);
    }
    let u_seq = SeqTable::from_entries(u_entries);
    let v_seq = SeqTable::from_entries(v_entries);

    let q_minus_one = Poly::q() - Poly::one();
    for m in 1..=horizon {
        for n in 1..=horizon {
            let expected =
                &(&(&q_minus_one - u_seq.get(n)) - v_seq.get(m)) + &(delta(m) + delta(n));
            if rule.t(m, n) != &expected {
                return Err(Error::NotAQuantumAdditionRule(format!(
                    "t'_{{{m},{n}}} does not match q - 1 - u_{n} - v_{m} + d_{m} + d_{n}"
                )));
            }
        }
    }
    Ok((u_seq, v_seq))
}

/// Division-algorithm standard form. Accepts arbitrary tables: divides
/// `r'_n` by `[n]_q` and `s'_m` by `[m]_q`, subtracts the zero identity
/// built from the quotients, and reports whether the residual equals the
/// fundamental rule. Inputs that verify always normalize to it.
pub fn normalize(rule: &QuadRule, horizon: usize) -> NormalizationResult {
    assert!(
        horizon <= rule.horizon(),
        "normalization horizon {horizon} exceeds rule horizon {}",
        rule.horizon()
    );
    let mut u_entries = Vec::with_capacity(horizon);
    let mut r_entries = Vec::with_capacity(horizon);
    for n in 1..=horizon {
        let (quot, rem) = rule
            .r(n)
            .divrem(&quantum_int(n))
            .expect("quantum integers are nonzero for n >= 1");
        debug_assert!(rem.degree() < n - 1);
        u_entries.push(quot);
        r_entries.push(rem);
    }
    let mut v_entries = Vec::with_capacity(horizon);
    let mut s_entries = Vec::with_capacity(horizon);
    for m in 1..=horizon {
        let (quot, rem) = rule
            .s(m)
            .divrem(&quantum_int(m))
            .expect("quantum integers are nonzero for m >= 1");
        debug_assert!(rem.degree() < m - 1);
        v_entries.push(quot);
        s_entries.push(rem);
    }
    let u_seq = SeqTable::from_entries(u_entries);
    let v_seq = SeqTable::from_entries(v_entries);

    // Subtracting the zero identity of (U, V) leaves the remainders in the
    // linear slots and t + u_n + v_m in the product slot.
    let zi = zero_identity_from_uv(&u_seq, &v_seq, horizon);
    let t = PairTable::from_fn(horizon, |m, n| rule.t(m, n) - zi.w(m, n));
    let residual = QuadRule::from_tables(
        SeqTable::from_entries(r_entries),
        SeqTable::from_entries(s_entries),
        t,
    )
    .expect("tables constructed at one horizon");

    let is_fundamental = residual.same_tables(&named_rule(RuleName::Fundamental, horizon));
    NormalizationResult {
        u: u_seq,
        v: v_seq,
        residual,
        is_fundamental,
    }
}
