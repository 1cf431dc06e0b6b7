//! Exact symbolic computation with quantum integers.
//!
//! The quantum integer `[n]_q = 1 + q + ... + q^{n-1}` satisfies
//! `[m]_q + q^m [n]_q = [m+n]_q`, and more generally admits quadratic
//! addition rules `[m+n]_q = r'_n [m]_q + s'_m [n]_q + t'_{m,n} [m]_q [n]_q`.
//! This crate implements, verifies and explores those rules over the exact
//! rational polynomial ring:
//!
//! - [`polyring`]: dense exact polynomials over arbitrary-precision rationals;
//! - [`quantum`]: quantum integers and the built-in addition rules;
//! - [`rules`]: rule tables, application, exhaustive verification and a
//!   randomized evaluation cross-check;
//! - [`identities`]: quadratic zero identities, their construction from a
//!   pair of sequences and the inverse decomposition;
//! - [`classify`]: the division-algorithm standard form and the bijection
//!   between rules and (U, V) pairs over the fundamental rule;
//! - [`funceq`]: the associated functional equations, inductive solution
//!   generation, closed forms and the necessary condition on seeds;
//! - [`text`]: the polynomial input grammar and plain/LaTeX/JSON renderers;
//! - [`sampling`]: seeded random tables for fuzz-style checks.
//!
//! All values are immutable after construction and all operations are pure;
//! everything is safe to share across threads.

pub mod classify;
pub mod error;
pub mod funceq;
pub mod identities;
pub mod polyring;
pub mod quantum;
pub mod rules;
pub mod sampling;
pub mod text;

pub use classify::{extract_uv, normalize, rule_from_uv, NormalizationResult, UvTables};
pub use error::{Error, Result};
pub use funceq::{
    admissibility, check_functional_equation, closed_form, cubic_coefficients, generate_sequence,
    test_seed, AdmissibilityReport, SeedVerdict, SolutionSeq, DEFAULT_SEED_TEST_HORIZON,
};
pub use identities::{
    add_scaled_identity, check_degree_bound, decompose_zero_identity, rule_difference,
    verify_zero_identity, zero_identity_from_uv, ZeroIdentity,
};
pub use polyring::{rat, rat_from_str, rat_int, Degree, Poly, Rat};
pub use quantum::{named_rule, quantum_int, RuleName};
pub use rules::{
    apply_rule, spot_check_rule, verify_rule, Failure, PairTable, QuadRule, SeqTable, VerifyReport,
    DEFAULT_HORIZON,
};
pub use text::{parse_poly, render_poly, PolyFormat};
