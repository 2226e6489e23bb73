//! Exact expected qualitative utility.
//!
//! Numbers are finite Laurent polynomials in a positive infinitesimal `ε`
//! with rational coefficients ([`NsReal`]). On top of them the crate
//! provides the qualitative order `≻`, lotteries and expected utility under
//! several regimes, Anscombe–Aumann acts, a maximin encoding, and an
//! auditor that checks rationality postulates on finitely generated
//! structures and returns replayable counterexamples.
//!
//! ```
//! use equm::{NsReal, QOrdering};
//!
//! let x: NsReal = "1 + eps".parse().unwrap();
//! let y = NsReal::one();
//! assert!(x > y);
//! assert_eq!(x.qcompare(&y), QOrdering::Equivalent);
//! ```

pub mod acts;
pub mod auditor;
pub mod criteria;
pub mod error;
pub mod fixtures;
pub mod formats;
pub mod nsreal;
pub mod pref;

pub use acts::{act_prefers, act_utility, constant_act, is_null, AaModel, Act, Belief, StateSpace};
pub use auditor::{audit, AuditReport, Certificate, Postulate, PrefStructure, Verdict};
pub use criteria::{maximin_compare_oracle, maximin_utilities, MaximinSpec};
pub use error::{Error, Result};
pub use formats::{parse_lottery, parse_model, ModelDocument};
pub use nsreal::{NsReal, QOrdering};
pub use pref::{
    check_property_p, expected_utility, is_negligible, mix, overrides, prefers, Lottery,
    PrefOrdering, Regime, UtilityAssignment,
};
