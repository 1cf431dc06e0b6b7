//! Functional equations associated to quadratic addition rules: inductive
//! solution generation from a seed polynomial, full consistency checking,
//! closed-form solutions for the three built-in quadratic rules, and the
//! linear necessary condition on seeds.
//!
//! A candidate solution is determined by its seed `f_1 = h` through
//! `f_n = r'_{n-1} h + s'_1 f_{n-1} + t'_{1,n-1} h f_{n-1}`. Whether the
//! whole family satisfies `f_{m+n} = r'_n f_m + s'_m f_n + t'_{m,n} f_m f_n`
//! is checked exhaustively; the seeds 0 and 1 always work.

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyring::Poly;
use crate::quantum::RuleName;
use crate::rules::{apply_rule, Failure, QuadRule, SeqTable, VerifyReport};

/// A finite sequence `f_1..f_N` generated from a seed by a rule.
#[derive(Debug, Clone)]
pub struct SolutionSeq {
    seed: Poly,
    f: SeqTable,
}

impl SolutionSeq {
    /// Assemble from raw entries; `f_1` must equal the seed.
    pub fn from_entries(seed: Poly, entries: Vec<Poly>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::MalformedTables(
                "solution sequence must contain f_1".into(),
            ));
        }
        if entries[0] != seed {
            return Err(Error::MalformedTables("f_1 does not equal the seed".into()));
        }
        Ok(SolutionSeq {
            seed,
            f: SeqTable::from_entries(entries),
        })
    }

    pub fn seed(&self) -> &Poly {
        &self.seed
    }

    pub fn horizon(&self) -> usize {
        self.f.horizon()
    }

    /// 1-based access to `f_n`.
    pub fn f(&self, n: usize) -> &Poly {
        self.f.get(n)
    }

    pub fn f_table(&self) -> &SeqTable {
        &self.f
    }
}

impl Serialize for SolutionSeq {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("h", &self.seed)?;
        map.serialize_entry("N", &self.horizon())?;
        map.serialize_entry("f", &self.f)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for SolutionSeq {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            h: Poly,
            #[serde(rename = "N")]
            n: usize,
            f: Vec<Poly>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.f.len() != raw.n {
            return Err(D::Error::custom(format!(
                "declared N = {} does not match {} entries",
                raw.n,
                raw.f.len()
            )));
        }
        SolutionSeq::from_entries(raw.h, raw.f).map_err(D::Error::custom)
    }
}

/// Generate `f_1 = h`, `f_n = h (+) f_{n-1}` up to `horizon`, which may
/// exceed the rule horizon by one (generation of `f_n` reads the rule at
/// index n - 1).
pub fn generate_sequence(rule: &QuadRule, seed: &Poly, horizon: usize) -> Result<SolutionSeq> {
    if horizon == 0 || horizon > rule.horizon() + 1 {
        return Err(Error::IndexOutOfHorizon {
            m: 1,
            n: horizon.saturating_sub(1),
            horizon: rule.horizon(),
        });
    }
    let mut entries = Vec::with_capacity(horizon);
    entries.push(seed.clone());
    for n in 2..=horizon {
        let prev = &entries[n - 2];
        entries.push(apply_rule(rule, 1, n - 1, seed, prev)?);
    }
    Ok(SolutionSeq {
        seed: seed.clone(),
        f: SeqTable::from_entries(entries),
    })
}

/// Exhaustively check `f_{m+n} = r'_n f_m + s'_m f_n + t'_{m,n} f_m f_n`
/// over all pairs with `m + n <= horizon`. An empty failure list certifies
/// both the functional equation and consistency up to the horizon.
pub fn check_functional_equation(
    rule: &QuadRule,
    seq: &SolutionSeq,
    horizon: usize,
) -> VerifyReport {
    assert!(
        horizon <= seq.horizon(),
        "check horizon {horizon} exceeds sequence horizon {}",
        seq.horizon()
    );
    assert!(
        horizon == 0 || horizon - 1 <= rule.horizon(),
        "check horizon {horizon} needs rule indices up to {}",
        horizon.saturating_sub(1)
    );
    let mut failures = Vec::new();
    for m in 1..=horizon.saturating_sub(1) {
        for n in 1..=horizon - m {
            let combined =
                apply_rule(rule, m, n, seq.f(m), seq.f(n)).expect("indices below horizon");
            let defect = &combined - seq.f(m + n);
            if !defect.is_zero() {
                failures.push(Failure { m, n, defect });
            }
        }
    }
    VerifyReport { horizon, failures }
}

/// Closed-form solution of the functional equation for a built-in rule with
/// seed `h`, valid for n >= 1:
///
/// - fundamental: `f_1 = h`, and for n >= 2
///   `h (1 - (qh)^n) / (1 - qh) + q^{n-2} h^{n-1} (h - 1)`
/// - rule1: `(1 - (1 - (1-q) h)^n) / (1 - q)`
/// - rule2: `((q + (1-q) h)^n - q^n) / (1 - q)`
///
/// The divisions are exact by construction; a leftover remainder signals a
/// bug, not bad input. `linear_example` has no closed form here.
pub fn closed_form(name: RuleName, seed: &Poly, n: usize) -> Result<Poly> {
    assert!(n >= 1, "closed forms are defined for n >= 1");
    let one = Poly::one();
    let one_minus_q = Poly::one() - Poly::q();
    match name {
        RuleName::Fundamental => {
            if n == 1 {
                return Ok(seed.clone());
            }
            let qh = Poly::q() * seed;
            let geometric = (seed * &(&one - &qh.pow(n))).exact_div(&(&one - &qh))?;
            let tail = &Poly::monomial(crate::polyring::rat_int(1), n - 2)
                * &(&seed.pow(n - 1) * &(seed - &one));
            Ok(&geometric + &tail)
        }
        RuleName::Rule1 => {
            let base = &one - &(&one_minus_q * seed);
            (&one - &base.pow(n)).exact_div(&one_minus_q)
        }
        RuleName::Rule2 => {
            let base = &Poly::q() + &(&one_minus_q * seed);
            (&base.pow(n) - &Poly::q().pow(n)).exact_div(&one_minus_q)
        }
        RuleName::LinearExample => Err(Error::UnknownRuleName(
            "linear_example has no closed form here".into(),
        )),
    }
}

/// How the linear necessary condition `A h = B` constrains candidate seeds.
/// The seeds 0 and 1 are admissible for every rule regardless of verdict,
/// and the condition is necessary only: a `UNIQUE_CANDIDATE` is not thereby
/// proven to generate a solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeedVerdict {
    /// A = 0 and B = 0: every polynomial seed satisfies the condition.
    AllSeeds,
    /// A = 0 but B != 0: no seed beyond 0 and 1 satisfies it.
    OnlyTrivial,
    /// A != 0 and A divides B: exactly one further candidate.
    UniqueCandidate(Poly),
    /// A != 0 and A does not divide B: no polynomial candidate beyond 0 and 1.
    NoPolynomialCandidate,
}

impl SeedVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            SeedVerdict::AllSeeds => "ALL_SEEDS",
            SeedVerdict::OnlyTrivial => "ONLY_TRIVIAL",
            SeedVerdict::UniqueCandidate(_) => "UNIQUE_CANDIDATE",
            SeedVerdict::NoPolynomialCandidate => "NO_POLYNOMIAL_CANDIDATE",
        }
    }
}

/// The constraint coefficients `A = (u_2 - v_2 - u_1 + v_1)(q + 1 - u_1 - v_1)`
/// and `B = u_1^2 - v_1^2 - (u_2 - v_2)(q + 1)`, with the verdict on
/// candidate seeds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub a: Poly,
    pub b: Poly,
    pub verdict: SeedVerdict,
}

impl Serialize for AdmissibilityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let candidate = match &self.verdict {
            SeedVerdict::UniqueCandidate(c) => Some(c),
            _ => None,
        };
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("A", &self.a)?;
        map.serialize_entry("B", &self.b)?;
        map.serialize_entry("verdict", self.verdict.label())?;
        if let Some(c) = candidate {
            map.serialize_entry("candidate", c)?;
        }
        map.end()
    }
}

/// Coefficient polynomials (A', B', C') of the consistency cubic
/// `A' x^3 + B' x^2 + C' x` in the seed, read off indices 1 and 2 of
/// (U, V). 0 and 1 are always roots of the cubic.
pub fn cubic_coefficients(u_seq: &SeqTable, v_seq: &SeqTable) -> (Poly, Poly, Poly) {
    assert!(
        u_seq.horizon() >= 2 && v_seq.horizon() >= 2,
        "cubic coefficients read (U, V) at indices 1 and 2"
    );
    let q_plus_one = Poly::q() + Poly::one();
    let u1 = u_seq.get(1);
    let v1 = v_seq.get(1);
    let du = u_seq.get(2) - v_seq.get(2); // u_2 - v_2
    let sum1 = u1 + v1;
    let diff1 = u1 - v1;
    let squares = &(u1 * u1) - &(v1 * v1); // u_1^2 - v_1^2

    let a = &(&du - &diff1) * &(&q_plus_one - &sum1);
    let b = &(&(&du * &sum1) + &(&q_plus_one * &diff1)) - &(&squares + &squares);
    let c = &squares - &(&du * &q_plus_one);
    (a, b, c)
}

/// Evaluate the necessary condition on seeds for the rule parameterized by
/// (U, V): after factoring the roots 0 and 1 out of the consistency cubic,
/// a seed must satisfy `A h = B`.
pub fn admissibility(u_seq: &SeqTable, v_seq: &SeqTable) -> AdmissibilityReport {
    // Dividing the cubic by x(x - 1) leaves A' x - C', so the condition
    // A h = B has A = A' and B = C'.
    let (a, _, c) = cubic_coefficients(u_seq, v_seq);
    let b = c;
    let verdict = if a.is_zero() {
        if b.is_zero() {
            SeedVerdict::AllSeeds
        } else {
            SeedVerdict::OnlyTrivial
        }
    } else {
        match b.divrem(&a).expect("A is nonzero") {
            (quot, rem) if rem.is_zero() => SeedVerdict::UniqueCandidate(quot),
            _ => SeedVerdict::NoPolynomialCandidate,
        }
    };
    AdmissibilityReport { a, b, verdict }
}

/// Empirical sufficiency probe: generate from the seed and check the
/// functional equation up to `horizon`. The recommended default horizon
/// is [`DEFAULT_SEED_TEST_HORIZON`].
pub fn test_seed(rule: &QuadRule, seed: &Poly, horizon: usize) -> Result<bool> {
    let seq = generate_sequence(rule, seed, horizon)?;
    Ok(check_functional_equation(rule, &seq, horizon).passed())
}

/// Default horizon for [`test_seed`], comfortably past the reach of the
/// m + n <= 4 derivation behind the necessary condition.
pub const DEFAULT_SEED_TEST_HORIZON: usize = 12;
