//! Local-unitary classification of three-qubit GHZ-class pure states.
//!
//! Every three-qubit pure state can be brought, by one unitary per qubit, to
//! the five-term canonical form
//!
//! ```text
//! λ₀∣000⟩ + λ₁e^{iφ}∣100⟩ + λ₂∣101⟩ + λ₃∣110⟩ + λ₄∣111⟩
//! ```
//!
//! with λᵢ ≥ 0, Σλᵢ² = 1 and a single phase φ ∈ [0, 2π). The state belongs to
//! the GHZ SLOCC class exactly when λ₀λ₄ ≠ 0. On that class this crate
//!
//! * computes the canonical form of arbitrary amplitudes together with a
//!   witness unitary triple ([`asd::compute_asd`]),
//! * evaluates the parameters γ, J₁, J₄, ϱ, ι, the local-unitary invariant
//!   |ln ϱ| and the entanglement measure 1/(1 + |ln ϱ|)
//!   ([`invariants::compute_invariants`]),
//! * applies the ϱ–ι transformation that produces the only other canonical
//!   form a state can have ([`invariants::rho_iota_transform`]),
//! * classifies states into ten families (P₁–P₄, R₁–R₂, C₁–C₄), each split
//!   into a prime (ϱ = 1) and a double-prime (ϱ ≠ 1) subfamily, and decides
//!   LU equivalence of two canonical forms analytically ([`classify`]),
//! * cross-checks every analytic decision with a brute-force fidelity
//!   maximization over local unitaries ([`oracle`]).
//!
//! All numerical kernels are generic over the scalar type through [`Scalar`];
//! the `*64` aliases at the crate root fix `f64`, which is the precision the
//! default [`Tolerances`] are written for.

use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use thiserror::Error;

pub mod asd;
pub mod classify;
pub mod invariants;
pub mod oracle;
pub mod qstate;
pub mod selftest;

pub use asd::AsdState;
pub use classify::{
    ClassificationReport, EquivalenceDecision, Family, FamilyLabel, Subfamily, UniquenessModality,
};
pub use invariants::GhzInvariants;
pub use oracle::OracleVerdict;
pub use qstate::{LocalUnitary, LocalUnitaryTriple, PureState};

/// Floating-point scalar the numerical kernels are generic over.
///
/// Blanket-implemented for anything float-like; in practice `f32` and `f64`.
/// Default tolerances target `f64`; `f32` works mechanically but cannot meet
/// them.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + NumAssign
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// Lossy conversion from an `f64` literal into the working scalar type.
#[inline]
pub(crate) fn real<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal must convert into the scalar type")
}

/// Widening conversion used when embedding scalar diagnostics in errors.
#[inline]
pub(crate) fn to_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Comparison thresholds shared by every module.
///
/// All decision procedures in this crate (zero tests on Schmidt coefficients,
/// the γ = 0 branch, φ ∈ {0, π} membership, ϱ = 1 membership, coefficientwise
/// state comparison, oracle accept/reject) read their thresholds from one of
/// these records so that tests, the CLI and library callers agree on what
/// "equal" means. [`Tolerances::scaled`] rescales every field uniformly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances<T> {
    /// Unit-norm check on state vectors and Schmidt coefficient tuples.
    pub norm: T,
    /// Entrywise deviation of u†u from the identity.
    pub unitary: T,
    /// Below this a Schmidt coefficient counts as vanishing.
    pub zero: T,
    /// Below this |γ| the state is treated as γ = 0 (positive branch).
    pub gamma: T,
    /// Radial distance within which φ snaps to 0 or π.
    pub phase: T,
    /// |ϱ − 1| threshold for prime-subfamily membership.
    pub rho: T,
    /// Coefficientwise comparison of two canonical forms.
    pub cmp: T,
    /// Three-tangle threshold for the GHZ-class cross-check.
    pub tangle: T,
    /// Sup-norm residual allowed when validating a decomposition witness.
    pub residual: T,
    /// Fidelity shortfall under which the oracle declares equivalence.
    pub oracle: T,
    /// Fidelity ceiling a failed oracle search must stay below for an
    /// analytic "inequivalent" verdict to count as confirmed.
    pub oracle_reject: T,
    /// Gap beyond which the ϱ-test and its family closed form must agree.
    pub consistency: T,
}

impl<T: Scalar> Default for Tolerances<T> {
    fn default() -> Self {
        Tolerances {
            norm: real(1e-12),
            unitary: real(1e-12),
            zero: real(1e-9),
            gamma: real(1e-9),
            phase: real(1e-9),
            rho: real(1e-9),
            cmp: real(1e-9),
            tangle: real(1e-10),
            residual: real(1e-10),
            oracle: real(1e-8),
            oracle_reject: real(1e-6),
            consistency: real(1e-8),
        }
    }
}

impl<T: Scalar> Tolerances<T> {
    /// Every threshold multiplied by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        Tolerances {
            norm: self.norm * factor,
            unitary: self.unitary * factor,
            zero: self.zero * factor,
            gamma: self.gamma * factor,
            phase: self.phase * factor,
            rho: self.rho * factor,
            cmp: self.cmp * factor,
            tangle: self.tangle * factor,
            residual: self.residual * factor,
            oracle: self.oracle * factor,
            oracle_reject: self.oracle_reject * factor,
            consistency: self.consistency * factor,
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("state vector is not normalized: |Σ|ampᵢ|² − 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    #[error("matrix is not unitary: max entrywise |u†u − 1| = {deviation:.3e}")]
    NonUnitary { deviation: f64 },

    #[error("cannot normalize a zero state vector")]
    ZeroVector,

    #[error("invalid Schmidt coefficients: {reason}")]
    InvalidAsd { reason: String },

    #[error(
        "state is not in the GHZ SLOCC class: requires λ₀ and λ₄ nonvanishing, got λ₀ = {lambda0:.3e}, λ₄ = {lambda4:.3e}"
    )]
    NotGhzClass { lambda0: f64, lambda4: f64 },

    #[error("phase-shift unitaries need λ₂λ₃ = 0 and λ₀λ₁λ₄ ≠ 0: {reason}")]
    PhaseShiftDomain { reason: String },

    #[error("unknown family label {input:?}: expected one of P1..P4, R1, R2, C1..C4 followed by ' or ''")]
    UnknownLabel { input: String },

    #[error("canonical-form search failed on every branch; per-branch sup residuals: {residuals:?}")]
    DecompositionFailed { residuals: Vec<f64> },

    #[error(
        "uniqueness cross-check disagrees: |ϱ − 1| = {rho_gap:.3e} vs family closed-form residual {closed_form_gap:.3e}"
    )]
    InconsistentUniqueness { rho_gap: f64, closed_form_gap: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub type Tolerances64 = Tolerances<f64>;
pub type PureState64 = PureState<f64>;
pub type LocalUnitary64 = LocalUnitary<f64>;
pub type LocalUnitaryTriple64 = LocalUnitaryTriple<f64>;
pub type AsdState64 = AsdState<f64>;
pub type GhzInvariants64 = GhzInvariants<f64>;
pub type OracleVerdict64 = OracleVerdict<f64>;
