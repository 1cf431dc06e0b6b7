//! Quadratic addition rules over a finite horizon: representation,
//! application, exact verification and a randomized evaluation cross-check.
//!
//! A rule is the coefficient triple `(r'_n, s'_m, t'_{m,n})` of
//! `[m+n]_q = r'_n [m]_q + s'_m [n]_q + t'_{m,n} [m]_q [n]_q`. Infinite
//! sequences are tabulated up to an explicit horizon N; verification sweeps
//! are exhaustive over `1 <= m, n <= N` and reports are ordered by (m, n).

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyring::{Poly, Rat};
use crate::quantum::quantum_int;

/// Default horizon used by the CLI when none is requested.
pub const DEFAULT_HORIZON: usize = 20;

/// A sequence of polynomials indexed 1..=N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqTable {
    entries: Vec<Poly>,
}

impl SeqTable {
    pub fn from_entries(entries: Vec<Poly>) -> Self {
        SeqTable { entries }
    }

    pub fn from_fn(horizon: usize, f: impl FnMut(usize) -> Poly) -> Self {
        SeqTable {
            entries: (1..=horizon).map(f).collect(),
        }
    }

    /// The all-zero sequence up to `horizon`.
    pub fn zeros(horizon: usize) -> Self {
        SeqTable::from_fn(horizon, |_| Poly::zero())
    }

    pub fn horizon(&self) -> usize {
        self.entries.len()
    }

    /// 1-based lookup; panics outside 1..=horizon.
    pub fn get(&self, index: usize) -> &Poly {
        assert!(
            index >= 1 && index <= self.entries.len(),
            "sequence index {index} outside 1..={}",
            self.entries.len()
        );
        &self.entries[index - 1]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    /// Restrict to the first `horizon` entries.
    pub fn truncated(&self, horizon: usize) -> SeqTable {
        assert!(horizon <= self.horizon());
        SeqTable {
            entries: self.entries[..horizon].to_vec(),
        }
    }
}

impl Serialize for SeqTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SeqTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(SeqTable {
            entries: Vec::<Poly>::deserialize(deserializer)?,
        })
    }
}

/// A table of polynomials indexed by pairs (m, n) in 1..=N squared,
/// stored row-major by m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairTable {
    horizon: usize,
    entries: Vec<Poly>,
}

impl PairTable {
    pub fn from_fn(horizon: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(horizon * horizon);
        for m in 1..=horizon {
            for n in 1..=horizon {
                entries.push(f(m, n));
            }
        }
        PairTable { horizon, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let horizon = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != horizon {
                return Err(Error::MalformedTables(format!(
                    "pair table row {} has {} entries, expected {horizon}",
                    i + 1,
                    row.len()
                )));
            }
        }
        Ok(PairTable {
            horizon,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// 1-based lookup; panics outside the horizon square.
    pub fn get(&self, m: usize, n: usize) -> &Poly {
        assert!(
            m >= 1 && m <= self.horizon && n >= 1 && n <= self.horizon,
            "pair index ({m}, {n}) outside 1..={}",
            self.horizon
        );
        &self.entries[(m - 1) * self.horizon + (n - 1)]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Poly]> {
        self.entries.chunks(self.horizon.max(1))
    }
}

impl Serialize for PairTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.rows())
    }
}

impl<'de> Deserialize<'de> for PairTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Poly>>::deserialize(deserializer)?;
        PairTable::from_rows(rows).map_err(D::Error::custom)
    }
}

/// A quadratic addition rule tabulated up to a horizon, optionally carrying
/// the (U, V) parameterization it was constructed from.
#[derive(Debug, Clone)]
pub struct QuadRule {
    horizon: usize,
    r: SeqTable,
    s: SeqTable,
    t: PairTable,
    uv: Option<(SeqTable, SeqTable)>,
}

impl QuadRule {
    /// Assemble a rule from raw tables, which must share one horizon.
    pub fn from_tables(r: SeqTable, s: SeqTable, t: PairTable) -> Result<Self> {
        let horizon = r.horizon();
        if horizon == 0 {
            return Err(Error::MalformedTables(
                "rule horizon must be positive".into(),
            ));
        }
        if s.horizon() != horizon || t.horizon() != horizon {
            return Err(Error::MalformedTables(format!(
                "table horizons disagree: r={}, s={}, t={}",
                horizon,
                s.horizon(),
                t.horizon()
            )));
        }
        Ok(QuadRule {
            horizon,
            r,
            s,
            t,
            uv: None,
        })
    }

    pub(crate) fn with_uv(mut self, u: SeqTable, v: SeqTable) -> Self {
        debug_assert_eq!(u.horizon(), self.horizon);
        debug_assert_eq!(v.horizon(), self.horizon);
        self.uv = Some((u, v));
        self
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn r(&self, n: usize) -> &Poly {
        self.r.get(n)
    }

    pub fn s(&self, m: usize) -> &Poly {
        self.s.get(m)
    }

    pub fn t(&self, m: usize, n: usize) -> &Poly {
        self.t.get(m, n)
    }

    pub fn r_table(&self) -> &SeqTable {
        &self.r
    }

    pub fn s_table(&self) -> &SeqTable {
        &self.s
    }

    pub fn t_table(&self) -> &PairTable {
        &self.t
    }

    /// The cached (U, V) parameterization, present only on rules built
    /// from one.
    pub fn uv(&self) -> Option<(&SeqTable, &SeqTable)> {
        self.uv.as_ref().map(|(u, v)| (u, v))
    }

    /// Exact coefficient-table equality, ignoring any cached (U, V).
    pub fn same_tables(&self, other: &QuadRule) -> bool {
        self.r == other.r && self.s == other.s && self.t == other.t
    }
}

impl Serialize for QuadRule {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("N", &self.horizon)?;
        map.serialize_entry("r", &self.r)?;
        map.serialize_entry("s", &self.s)?;
        map.serialize_entry("t", &self.t)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for QuadRule {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            #[serde(rename = "N")]
            n: usize,
            r: SeqTable,
            s: SeqTable,
            t: PairTable,
        }
        let raw = Raw::deserialize(deserializer)?;
        let rule = QuadRule::from_tables(raw.r, raw.s, raw.t).map_err(D::Error::custom)?;
        if rule.horizon() != raw.n {
            return Err(D::Error::custom(format!(
                "declared N = {} does not match table horizon {}",
                raw.n,
                rule.horizon()
            )));
        }
        Ok(rule)
    }
}

/// One failing pair in a verification sweep. `defect` is the left-over
/// polynomial: the rule combination minus its target (the target is
/// `[m+n]_q` for addition rules, `f_{m+n}` for functional equations and 0
/// for zero identities).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub m: usize,
    pub n: usize,
    pub defect: Poly,
}

/// Outcome of an exhaustive sweep; an empty failure list is a pass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub horizon: usize,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compute `r'_n a + s'_m b + t'_{m,n} a b`.
pub fn apply_rule(rule: &QuadRule, m: usize, n: usize, a: &Poly, b: &Poly) -> Result<Poly> {
    if m < 1 || n < 1 || m > rule.horizon() || n > rule.horizon() {
        return Err(Error::IndexOutOfHorizon {
            m,
            n,
            horizon: rule.horizon(),
        });
    }
    let linear = &(rule.r(n) * a) + &(rule.s(m) * b);
    Ok(&linear + &(&(rule.t(m, n) * a) * b))
}

/// Symbolically check `[m+n]_q = r'_n [m]_q + s'_m [n]_q + t'_{m,n} [m]_q [n]_q`
/// for all `1 <= m, n <= horizon`. Failures are report content, not errors.
pub fn verify_rule(rule: &QuadRule, horizon: usize) -> VerifyReport {
    assert!(
        horizon <= rule.horizon(),
        "verification horizon {horizon} exceeds rule horizon {}",
        rule.horizon()
    );
    let qi: Vec<Poly> = (0..=2 * horizon).map(quantum_int).collect();
    let mut failures = Vec::new();
    for m in 1..=horizon {
        for n in 1..=horizon {
            let combined = apply_rule(rule, m, n, &qi[m], &qi[n]).expect("indices in horizon");
            let defect = &combined - &qi[m + n];
            if !defect.is_zero() {
                failures.push(Failure { m, n, defect });
            }
        }
    }
    VerifyReport { horizon, failures }
}

/// Randomized cross-check of the same identity: for `trials` seeded random
/// rational points x, compare both sides of the addition identity evaluated
/// at x for every pair. Mismatches never occur when [`verify_rule`] passes;
/// a nonzero defect polynomial survives evaluation except at its finitely
/// many roots.
pub fn spot_check_rule(rule: &QuadRule, horizon: usize, trials: usize, seed: u64) -> VerifyReport {
    assert!(
        horizon <= rule.horizon(),
        "spot-check horizon {horizon} exceeds rule horizon {}",
        rule.horizon()
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Rat> = (0..trials).map(|_| random_point(&mut rng)).collect();

    // Evaluate every table entry once per point, then sweep pairs with
    // scalar arithmetic only.
    let mut failures: Vec<Failure> = Vec::new();
    for x in &points {
        let qi: Vec<Rat> = (0..=2 * horizon)
            .map(|k| quantum_int(k).eval_at(x))
            .collect();
        let r: Vec<Rat> = (1..=horizon).map(|n| rule.r(n).eval_at(x)).collect();
        let s: Vec<Rat> = (1..=horizon).map(|m| rule.s(m).eval_at(x)).collect();
        for m in 1..=horizon {
            for n in 1..=horizon {
                let t = rule.t(m, n).eval_at(x);
                let lhs = &r[n - 1] * &qi[m] + &s[m - 1] * &qi[n] + t * &qi[m] * &qi[n];
                let residue = lhs - &qi[m + n];
                if !residue.is_zero() && !failures.iter().any(|f| f.m == m && f.n == n) {
                    failures.push(Failure {
                        m,
                        n,
                        defect: Poly::constant(residue),
                    });
                }
            }
        }
    }
    failures.sort_by_key(|f| (f.m, f.n));
    VerifyReport { horizon, failures }
}

fn random_point(rng: &mut impl Rng) -> Rat {
    let numer = rng.gen_range(-1000i64..=1000);
    let denom = rng.gen_range(1i64..=60);
    crate::polyring::rat(numer, denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{named_rule, RuleName};

    #[test]
    fn apply_fundamental_at_origin() {
        let rule = named_rule(RuleName::Fundamental, 4);
        let got = apply_rule(&rule, 1, 1, &Poly::one(), &Poly::one()).unwrap();
        assert_eq!(got, quantum_int(2));
    }

    #[test]
    fn apply_rule1_produces_quantum_three() {
        // 1 + (1+q) - (1-q)(1+q) = 1 + q + q^2
        let rule = named_rule(RuleName::Rule1, 4);
        let got = apply_rule(&rule, 1, 2, &quantum_int(1), &quantum_int(2)).unwrap();
        assert_eq!(got, quantum_int(3));
    }

    #[test]
    fn apply_to_zeros_vanishes() {
        for name in RuleName::ALL {
            let rule = named_rule(name, 5);
            for m in 1..=5 {
                for n in 1..=5 {
                    let got = apply_rule(&rule, m, n, &Poly::zero(), &Poly::zero()).unwrap();
                    assert!(got.is_zero());
                }
            }
        }
    }

    #[test]
    fn apply_outside_horizon_errors() {
        let rule = named_rule(RuleName::Rule1, 3);
        let err = apply_rule(&rule, 4, 1, &Poly::one(), &Poly::one()).unwrap_err();
        assert_eq!(
            err,
            Error::IndexOutOfHorizon {
                m: 4,
                n: 1,
                horizon: 3
            }
        );
        assert!(apply_rule(&rule, 0, 1, &Poly::one(), &Poly::one()).is_err());
    }

    #[test]
    fn named_rules_verify_at_20() {
        for name in RuleName::ALL {
            let rule = named_rule(name, 20);
            let report = verify_rule(&rule, 20);
            assert!(report.passed(), "{name} failed: {:?}", report.failures);
        }
    }

    #[test]
    fn corrupted_rule_fails_exactly_where_corrupted() {
        let rule = named_rule(RuleName::Rule1, 2);
        let t = PairTable::from_fn(2, |m, n| {
            if (m, n) == (2, 2) {
                Poly::q()
            } else {
                rule.t(m, n).clone()
            }
        });
        let bad = QuadRule::from_tables(rule.r_table().clone(), rule.s_table().clone(), t).unwrap();
        let report = verify_rule(&bad, 2);
        assert_eq!(report.failures.len(), 1);
        let failure = &report.failures[0];
        assert_eq!((failure.m, failure.n), (2, 2));
        // defect = q[2]^2 - (q-1)[2]^2 = (1+q)^2
        assert_eq!(failure.defect, Poly::from_int_coeffs(&[1, 2, 1]));
    }

    #[test]
    fn symmetric_on_quantum_integers() {
        // both orderings of a verified rule give [m+n]_q
        for name in RuleName::ALL {
            let rule = named_rule(name, 8);
            for m in 1..=8 {
                for n in 1..=8 {
                    let a = apply_rule(&rule, m, n, &quantum_int(m), &quantum_int(n)).unwrap();
                    let b = apply_rule(&rule, n, m, &quantum_int(n), &quantum_int(m)).unwrap();
                    assert_eq!(a, b);
                    assert_eq!(a, quantum_int(m + n));
                }
            }
        }
    }

    #[test]
    fn spot_check_passes_on_sound_rules() {
        for name in RuleName::ALL {
            let rule = named_rule(name, 10);
            let report = spot_check_rule(&rule, 10, 5, 1);
            assert!(report.passed());
        }
    }

    #[test]
    fn spot_check_flags_corruption() {
        let rule = named_rule(RuleName::Rule2, 6);
        let r = SeqTable::from_fn(6, |n| {
            if n == 3 {
                Poly::one()
            } else {
                rule.r(n).clone()
            }
        });
        let bad = QuadRule::from_tables(r, rule.s_table().clone(), rule.t_table().clone()).unwrap();
        let symbolic = verify_rule(&bad, 6);
        assert!(!symbolic.passed());
        for seed in 0..20 {
            let sampled = spot_check_rule(&bad, 6, 5, seed);
            assert!(!sampled.passed(), "seed {seed} missed the corruption");
            // sampled failures are a subset of the symbolic ones
            for f in &sampled.failures {
                assert!(symbolic.failures.iter().any(|g| (g.m, g.n) == (f.m, f.n)));
            }
        }
    }

    #[test]
    fn spot_check_at_one_gives_integer_addition() {
        // at q = 1 both sides of the rule1 identity equal m + n
        let rule = named_rule(RuleName::Rule1, 6);
        let one = crate::polyring::rat_int(1);
        for m in 1..=6usize {
            for n in 1..=6usize {
                let lhs = apply_rule(&rule, m, n, &quantum_int(m), &quantum_int(n))
                    .unwrap()
                    .eval_at(&one);
                assert_eq!(lhs, crate::polyring::rat_int((m + n) as i64));
                assert_eq!(quantum_int(m + n).eval_at(&one), lhs);
            }
        }
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Poly>();
        assert_send_sync::<SeqTable>();
        assert_send_sync::<PairTable>();
        assert_send_sync::<QuadRule>();
        assert_send_sync::<VerifyReport>();
    }

    #[test]
    fn rule_json_round_trip() {
        let rule = named_rule(RuleName::Rule2, 3);
        let json = serde_json::to_string(&rule).unwrap();
        let back: QuadRule = serde_json::from_str(&json).unwrap();
        assert!(back.same_tables(&rule));
        assert_eq!(back.horizon(), 3);
        assert!(back.uv().is_none());
    }

    #[test]
    fn rule_json_rejects_mismatched_tables() {
        let bad = r#"{"N":2,"r":[{"coeffs":["1"]}],"s":[{"coeffs":["1"]},{"coeffs":["1"]}],"t":[[{"coeffs":[]},{"coeffs":[]}],[{"coeffs":[]},{"coeffs":[]}]]}"#;
        assert!(serde_json::from_str::<QuadRule>(bad).is_err());
        let ragged = r#"{"N":1,"r":[{"coeffs":["1"]}],"s":[{"coeffs":["1"]}],"t":[[{"coeffs":[]},{"coeffs":[]}]]}"#;
        assert!(serde_json::from_str::<QuadRule>(ragged).is_err());
    }
}
