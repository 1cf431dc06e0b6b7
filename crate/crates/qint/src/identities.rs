//! Quadratic and linear zero identities: construction from a pair of
//! sequences, exact verification, decomposition back into the pair, and the
//! degree bound that every verified identity satisfies.
//!
//! A zero identity is a triple `(u'_n, v'_m, w'_{m,n})` with
//! `u'_n [m]_q + v'_m [n]_q + w'_{m,n} [m]_q [n]_q = 0` for all m, n. Every
//! such triple arises from sequences (U, V) as `u'_n = u_n [n]_q`,
//! `v'_m = v_m [m]_q`, `w'_{m,n} = -(u_n + v_m)`, and the difference of any
//! two addition rules is one.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyring::{Poly, Rat};
use crate::quantum::quantum_int;
use crate::rules::{Failure, PairTable, QuadRule, SeqTable, VerifyReport};

/// A quadratic zero identity tabulated up to a horizon, optionally carrying
/// the (U, V) witness it was constructed from.
#[derive(Debug, Clone)]
pub struct ZeroIdentity {
    horizon: usize,
    u: SeqTable,
    v: SeqTable,
    w: PairTable,
    witness: Option<(SeqTable, SeqTable)>,
}

impl ZeroIdentity {
    /// Assemble an identity from raw tables, which must share one horizon.
    pub fn from_tables(u: SeqTable, v: SeqTable, w: PairTable) -> Result<Self> {
        let horizon = u.horizon();
        if horizon == 0 {
            return Err(Error::MalformedTables(
                "zero identity horizon must be positive".into(),
            ));
        }
        if v.horizon() != horizon || w.horizon() != horizon {
            return Err(Error::MalformedTables(format!(
                "table horizons disagree: u={}, v={}, w={}",
                horizon,
                v.horizon(),
                w.horizon()
            )));
        }
        Ok(ZeroIdentity {
            horizon,
            u,
            v,
            w,
            witness: None,
        })
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn u(&self, n: usize) -> &Poly {
        self.u.get(n)
    }

    pub fn v(&self, m: usize) -> &Poly {
        self.v.get(m)
    }

    pub fn w(&self, m: usize, n: usize) -> &Poly {
        self.w.get(m, n)
    }

    pub fn u_table(&self) -> &SeqTable {
        &self.u
    }

    pub fn v_table(&self) -> &SeqTable {
        &self.v
    }

    pub fn w_table(&self) -> &PairTable {
        &self.w
    }

    /// The cached (U, V) witness, present only on identities built from one.
    pub fn witness(&self) -> Option<(&SeqTable, &SeqTable)> {
        self.witness.as_ref().map(|(u, v)| (u, v))
    }

    pub fn same_tables(&self, other: &ZeroIdentity) -> bool {
        self.u == other.u && self.v == other.v && self.w == other.w
    }
}

impl Serialize for ZeroIdentity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("N", &self.horizon)?;
        map.serialize_entry("u", &self.u)?;
        map.serialize_entry("v", &self.v)?;
        map.serialize_entry("w", &self.w)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for ZeroIdentity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            #[serde(rename = "N")]
            n: usize,
            u: SeqTable,
            v: SeqTable,
            w: PairTable,
        }
        let raw = Raw::deserialize(deserializer)?;
        let zi = ZeroIdentity::from_tables(raw.u, raw.v, raw.w).map_err(D::Error::custom)?;
        if zi.horizon() != raw.n {
            return Err(D::Error::custom(format!(
                "declared N = {} does not match table horizon {}",
                raw.n,
                zi.horizon()
            )));
        }
        Ok(zi)
    }
}

/// Build the zero identity `u'_n = u_n [n]_q`, `v'_m = v_m [m]_q`,
/// `w'_{m,n} = -(u_n + v_m)` from sequences populated to `horizon`.
/// The result always verifies.
pub fn zero_identity_from_uv(u_seq: &SeqTable, v_seq: &SeqTable, horizon: usize) -> ZeroIdentity {
    assert!(
        horizon >= 1 && horizon <= u_seq.horizon() && horizon <= v_seq.horizon(),
        "sequences must be populated to the requested horizon"
    );
    let u = SeqTable::from_fn(horizon, |n| u_seq.get(n) * &quantum_int(n));
    let v = SeqTable::from_fn(horizon, |m| v_seq.get(m) * &quantum_int(m));
    let w = PairTable::from_fn(horizon, |m, n| -&(u_seq.get(n) + v_seq.get(m)));
    ZeroIdentity {
        horizon,
        u,
        v,
        w,
        witness: Some((u_seq.truncated(horizon), v_seq.truncated(horizon))),
    }
}

/// Symbolically check `u'_n [m]_q + v'_m [n]_q + w'_{m,n} [m]_q [n]_q = 0`
/// for all pairs up to `horizon`. The defect of a failing pair is the
/// nonzero left side.
pub fn verify_zero_identity(zi: &ZeroIdentity, horizon: usize) -> VerifyReport {
    assert!(
        horizon <= zi.horizon(),
        "verification horizon {horizon} exceeds identity horizon {}",
        zi.horizon()
    );
    let qi: Vec<Poly> = (0..=horizon).map(quantum_int).collect();
    let mut failures = Vec::new();
    for m in 1..=horizon {
        for n in 1..=horizon {
            let linear = &(zi.u(n) * &qi[m]) + &(zi.v(m) * &qi[n]);
            let defect = &linear + &(&(zi.w(m, n) * &qi[m]) * &qi[n]);
            if !defect.is_zero() {
                failures.push(Failure { m, n, defect });
            }
        }
    }
    VerifyReport { horizon, failures }
}

/// Recover the (U, V) pair of a verified zero identity via the m = 1 and
/// n = 1 specializations: `u_n = -(v'_1 + w'_{1,n})`, `v_m = -(u'_1 + w'_{m,1})`.
/// All defining equations are re-asserted; tables that fail any of them are
/// rejected rather than silently mis-decomposed.
pub fn decompose_zero_identity(zi: &ZeroIdentity, horizon: usize) -> Result<(SeqTable, SeqTable)> {
    assert!(
        horizon <= zi.horizon(),
        "decomposition horizon {horizon} exceeds identity horizon {}",
        zi.horizon()
    );
    let report = verify_zero_identity(zi, horizon);
    if !report.passed() {
        let f = &report.failures[0];
        return Err(Error::NotAZeroIdentity(format!(
            "identity fails at ({}, {}) with defect {}",
            f.m, f.n, f.defect
        )));
    }

    let u_seq = SeqTable::from_fn(horizon, |n| -&(zi.v(1) + zi.w(1, n)));
    let v_seq = SeqTable::from_fn(horizon, |m| -&(zi.u(1) + zi.w(m, 1)));

    for n in 1..=horizon {
        if zi.u(n) != &(u_seq.get(n) * &quantum_int(n)) {
            return Err(Error::NotAZeroIdentity(format!(
                "u'_{n} is not u_{n} [{n}]_q"
            )));
        }
    }
    for m in 1..=horizon {
        if zi.v(m) != &(v_seq.get(m) * &quantum_int(m)) {
            return Err(Error::NotAZeroIdentity(format!(
                "v'_{m} is not v_{m} [{m}]_q"
            )));
        }
    }
    for m in 1..=horizon {
        for n in 1..=horizon {
            if zi.w(m, n) != &-&(u_seq.get(n) + v_seq.get(m)) {
                return Err(Error::NotAZeroIdentity(format!(
                    "w'_{{{m},{n}}} is not -(u_{n} + v_{m})"
                )));
            }
        }
    }
    Ok((u_seq, v_seq))
}

/// Degree bound on verified zero identities: `deg(u'_n) < n - 1` forces
/// `u'_n = 0`, and symmetrically for `v'_m`. Returns true when every index
/// up to `horizon` satisfies the implication; on a verified identity a
/// false return indicates an implementation bug.
pub fn check_degree_bound(zi: &ZeroIdentity, horizon: usize) -> bool {
    assert!(horizon <= zi.horizon());
    for n in 1..=horizon {
        let u = zi.u(n);
        if u.degree() < n - 1 && !u.is_zero() {
            return false;
        }
    }
    for m in 1..=horizon {
        let v = zi.v(m);
        if v.degree() < m - 1 && !v.is_zero() {
            return false;
        }
    }
    true
}

/// The componentwise difference of two rule tables, which is a zero
/// identity whenever both rules verify.
pub fn rule_difference(a: &QuadRule, b: &QuadRule) -> Result<ZeroIdentity> {
    if a.horizon() != b.horizon() {
        return Err(Error::MalformedTables(format!(
            "rule horizons disagree: {} vs {}",
            a.horizon(),
            b.horizon()
        )));
    }
    let horizon = a.horizon();
    ZeroIdentity::from_tables(
        SeqTable::from_fn(horizon, |n| a.r(n) - b.r(n)),
        SeqTable::from_fn(horizon, |m| a.s(m) - b.s(m)),
        PairTable::from_fn(horizon, |m, n| a.t(m, n) - b.t(m, n)),
    )
}

/// `rule + lambda * identity`, which verifies whenever both inputs do.
pub fn add_scaled_identity(rule: &QuadRule, zi: &ZeroIdentity, lambda: &Rat) -> Result<QuadRule> {
    if rule.horizon() != zi.horizon() {
        return Err(Error::MalformedTables(format!(
            "horizons disagree: rule {} vs identity {}",
            rule.horizon(),
            zi.horizon()
        )));
    }
    let horizon = rule.horizon();
    QuadRule::from_tables(
        SeqTable::from_fn(horizon, |n| rule.r(n) + &zi.u(n).scalar_mul(lambda)),
        SeqTable::from_fn(horizon, |m| rule.s(m) + &zi.v(m).scalar_mul(lambda)),
        PairTable::from_fn(horizon, |m, n| {
            rule.t(m, n) + &zi.w(m, n).scalar_mul(lambda)
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{rat, rat_int};
    use crate::quantum::{named_rule, RuleName};
    use crate::rules::verify_rule;

    fn constant_seq(horizon: usize, p: &Poly) -> SeqTable {
        SeqTable::from_fn(horizon, |_| p.clone())
    }

    #[test]
    fn all_zero_identity() {
        let zi = zero_identity_from_uv(&SeqTable::zeros(6), &SeqTable::zeros(6), 6);
        assert!(verify_zero_identity(&zi, 6).passed());
        for n in 1..=6 {
            assert!(zi.u(n).is_zero());
            assert!(zi.v(n).is_zero());
        }
        let (u, v) = decompose_zero_identity(&zi, 6).unwrap();
        assert_eq!(u, SeqTable::zeros(6));
        assert_eq!(v, SeqTable::zeros(6));
        assert!(check_degree_bound(&zi, 6));
    }

    #[test]
    fn commutativity_identity() {
        // u_n = 1, v_m = 0 gives [n]_q [m]_q - [m]_q [n]_q = 0
        let zi = zero_identity_from_uv(&constant_seq(5, &Poly::one()), &SeqTable::zeros(5), 5);
        for n in 1..=5 {
            assert_eq!(zi.u(n), &quantum_int(n));
            assert!(zi.v(n).is_zero());
        }
        assert_eq!(zi.w(3, 2), &Poly::from_int_coeffs(&[-1]));
        assert!(verify_zero_identity(&zi, 5).passed());
    }

    #[test]
    fn linear_identity_from_z() {
        // u_n = z, v_m = -z reproduces the linear zero identity (w' = 0)
        let z = Poly::q();
        let zi = zero_identity_from_uv(&constant_seq(6, &z), &constant_seq(6, &(-&z)), 6);
        for m in 1..=6 {
            assert_eq!(zi.u(m), &(&z * &quantum_int(m)));
            assert_eq!(zi.v(m), &-&(&z * &quantum_int(m)));
            for n in 1..=6 {
                assert!(zi.w(m, n).is_zero());
            }
        }
        assert!(verify_zero_identity(&zi, 6).passed());

        // decomposition recovers u_n = q, v_m = -q
        let (u, v) = decompose_zero_identity(&zi, 6).unwrap();
        assert_eq!(u, constant_seq(6, &z));
        assert_eq!(v, constant_seq(6, &(-&z)));

        // z = 1: u'_n = [n]_q has degree exactly n - 1, bound vacuous
        let zi1 = zero_identity_from_uv(
            &constant_seq(6, &Poly::one()),
            &constant_seq(6, &Poly::from_int_coeffs(&[-1])),
            6,
        );
        assert!(check_degree_bound(&zi1, 6));
    }

    #[test]
    fn perturbed_identity_fails_at_origin() {
        let zi = zero_identity_from_uv(&SeqTable::zeros(3), &SeqTable::zeros(3), 3);
        let w = PairTable::from_fn(3, |m, n| {
            if (m, n) == (1, 1) {
                zi.w(1, 1) + &Poly::one()
            } else {
                zi.w(m, n).clone()
            }
        });
        let bad = ZeroIdentity::from_tables(zi.u_table().clone(), zi.v_table().clone(), w).unwrap();
        let report = verify_zero_identity(&bad, 3);
        assert_eq!(report.failures.len(), 1);
        assert_eq!((report.failures[0].m, report.failures[0].n), (1, 1));
        assert_eq!(report.failures[0].defect, Poly::one());

        let err = decompose_zero_identity(&bad, 3).unwrap_err();
        assert!(matches!(err, Error::NotAZeroIdentity(_)));
    }

    #[test]
    fn round_trip_on_mixed_tables() {
        let u = SeqTable::from_entries(vec![
            Poly::from_int_coeffs(&[1, -2]),
            Poly::zero(),
            Poly::from_coeffs(vec![rat(1, 2), rat_int(3)]),
            Poly::q(),
        ]);
        let v = SeqTable::from_entries(vec![
            Poly::from_int_coeffs(&[0, 0, 5]),
            Poly::from_int_coeffs(&[-1]),
            Poly::one(),
            Poly::zero(),
        ]);
        let zi = zero_identity_from_uv(&u, &v, 4);
        assert!(verify_zero_identity(&zi, 4).passed());
        let (u2, v2) = decompose_zero_identity(&zi, 4).unwrap();
        assert_eq!(u2, u);
        assert_eq!(v2, v);
        assert!(check_degree_bound(&zi, 4));
    }

    #[test]
    fn difference_of_rules_is_zero_identity() {
        let horizon = 10;
        for a in RuleName::ALL {
            for b in RuleName::ALL {
                let zi = rule_difference(&named_rule(a, horizon), &named_rule(b, horizon)).unwrap();
                assert!(
                    verify_zero_identity(&zi, horizon).passed(),
                    "difference {a} - {b} is not a zero identity"
                );
            }
        }
    }

    #[test]
    fn rule_plus_scaled_identity_still_verifies() {
        let horizon = 8;
        let rule = named_rule(RuleName::Rule1, horizon);
        let zi = rule_difference(&named_rule(RuleName::Rule2, horizon), &rule).unwrap();
        for lambda in [rat_int(1), rat_int(-3), rat(2, 5)] {
            let shifted = add_scaled_identity(&rule, &zi, &lambda).unwrap();
            assert!(verify_rule(&shifted, horizon).passed());
        }
    }

    #[test]
    fn zero_identity_json_round_trip() {
        let zi = zero_identity_from_uv(
            &constant_seq(3, &Poly::q()),
            &constant_seq(3, &Poly::one()),
            3,
        );
        let json = serde_json::to_string(&zi).unwrap();
        let back: ZeroIdentity = serde_json::from_str(&json).unwrap();
        assert!(back.same_tables(&zi));
        assert!(back.witness().is_none());
    }
}
