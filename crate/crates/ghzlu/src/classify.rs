//! The ten-family, twenty-subfamily LU partition of the GHZ class.
//!
//! A GHZ-class ASD falls into exactly one family:
//!
//! * γ = 0 → positive families P₁–P₄, distinguished by which of λ₁, λ₂, λ₃
//!   vanish (P₁ none of λ₂, λ₃; P₂ only λ₃ present; P₃ only λ₂; P₄ neither);
//! * γ ≠ 0, λ₂λ₃ ≠ 0, φ ∈ {0, π} → real families: R₁ for 5-LBPS states with
//!   ι ≠ 0, R₂ for the rest (λ₁ = 0, or 5-LBPS with ι = 0);
//! * γ ≠ 0, λ₂λ₃ = 0 → complex families C₁ (λ₂ = 0), C₂ (λ₃ = 0),
//!   C₃ (λ₂ = λ₃ = 0), phases playing no role;
//! * otherwise (5-LBPS, φ ∉ {0, π}) → C₄.
//!
//! Each family splits into a prime subfamily (ϱ = 1, where the ASD is
//! unique) and a double-prime subfamily (ϱ ≠ 1, where the state has exactly
//! the two ASDs exchanged by the ϱ–ι transformation). LU equivalence inside
//! a family reduces to coefficient comparison against that partner, for
//! C₁–C₃ ignoring phases, and for C₄ with the twist that a ϱ = 1 class is
//! {ψ, ψ*} while a ϱ ≠ 1 state is never LU-equivalent to its conjugate.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::asd::AsdState;
use crate::invariants::{compute_invariants, phase_shift_unitaries, rho_iota_transform, GhzInvariants};
use crate::qstate::LocalUnitaryTriple;
use crate::{to_f64, Error, Result, Scalar, Tolerances};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    P1,
    P2,
    P3,
    P4,
    R1,
    R2,
    C1,
    C2,
    C3,
    C4,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::P1,
        Family::P2,
        Family::P3,
        Family::P4,
        Family::R1,
        Family::R2,
        Family::C1,
        Family::C2,
        Family::C3,
        Family::C4,
    ];

    fn as_str(self) -> &'static str {
        match self {
            Family::P1 => "P1",
            Family::P2 => "P2",
            Family::P3 => "P3",
            Family::P4 => "P4",
            Family::R1 => "R1",
            Family::R2 => "R2",
            Family::C1 => "C1",
            Family::C2 => "C2",
            Family::C3 => "C3",
            Family::C4 => "C4",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subfamily {
    /// ϱ = 1: the ASD is unique and the state is a fixed point of the ϱ–ι
    /// transformation.
    Prime,
    /// ϱ ≠ 1: exactly two ASDs, swapped by the transformation.
    DoublePrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyLabel {
    pub family: Family,
    pub subfamily: Subfamily,
}

impl FamilyLabel {
    pub fn new(family: Family, subfamily: Subfamily) -> Self {
        FamilyLabel { family, subfamily }
    }

    /// Every label, primes first within each family.
    pub fn all() -> [FamilyLabel; 20] {
        let mut out = [FamilyLabel::new(Family::P1, Subfamily::Prime); 20];
        for (i, family) in Family::ALL.into_iter().enumerate() {
            out[2 * i] = FamilyLabel::new(family, Subfamily::Prime);
            out[2 * i + 1] = FamilyLabel::new(family, Subfamily::DoublePrime);
        }
        out
    }
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = match self.subfamily {
            Subfamily::Prime => "'",
            Subfamily::DoublePrime => "''",
        };
        write!(f, "{}{}", self.family, suffix)
    }
}

impl FromStr for FamilyLabel {
    type Err = Error;

    /// Accepts `P1'`, `C4''` and the typographic variants `P1′`, `C4″`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::UnknownLabel {
            input: s.to_string(),
        };
        let (stem, subfamily) = if let Some(stem) = s
            .strip_suffix("''")
            .or_else(|| s.strip_suffix('″'))
            .or_else(|| s.strip_suffix("′′"))
        {
            (stem, Subfamily::DoublePrime)
        } else if let Some(stem) = s.strip_suffix('\'').or_else(|| s.strip_suffix('′')) {
            (stem, Subfamily::Prime)
        } else {
            return Err(err());
        };
        let family = Family::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(stem))
            .ok_or_else(err)?;
        Ok(FamilyLabel { family, subfamily })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UniquenessModality {
    /// The ASD is unique (or the two ASDs coincide) as a literal tuple.
    Strict,
    /// Unique up to the free phase of the ∣100⟩ term (families C₁–C₃).
    UpToPhase,
    /// Unique up to complex conjugation (family C₄).
    UpToConjugate,
}

/// Everything [`classify`] knows about one state.
///
/// `margins` maps condition names to signed distances from the decision
/// boundaries: negative values lie inside the special region the condition
/// tests (γ = 0, φ real, λᵢ = 0, ι = 0, ϱ = 1). Small magnitudes flag labels
/// that could flip under perturbation.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport<T> {
    pub label: FamilyLabel,
    pub invariants: GhzInvariants<T>,
    pub lbps: usize,
    pub margins: BTreeMap<String, T>,
    pub unique_asd: bool,
    pub uniqueness_modality: UniquenessModality,
}

fn modality_of(family: Family) -> UniquenessModality {
    match family {
        Family::C1 | Family::C2 | Family::C3 => UniquenessModality::UpToPhase,
        Family::C4 => UniquenessModality::UpToConjugate,
        _ => UniquenessModality::Strict,
    }
}

/// Distance of φ to the nearest of {0, π} (2π counts as 0).
fn phi_real_distance<T: Scalar>(phi: T) -> T {
    phi.min((phi - T::PI()).abs()).min(T::TAU() - phi)
}

fn family_of<T: Scalar>(asd: &AsdState<T>, inv: &GhzInvariants<T>, tol: &Tolerances<T>) -> Family {
    let l = asd.lambda();
    let l1 = l[1] > tol.zero;
    let l2 = l[2] > tol.zero;
    let l3 = l[3] > tol.zero;

    if inv.gamma.norm() <= tol.gamma {
        // γ = 0 forces effective positivity; the P families are told apart by
        // the support pattern of λ₂, λ₃ (λ₁ ≈ λ₂λ₃/λ₄ tags along).
        return match (l2, l3) {
            (true, true) => Family::P1,
            (false, true) => Family::P2,
            (true, false) => Family::P3,
            (false, false) => Family::P4,
        };
    }
    if l2 && l3 {
        if phi_real_distance(asd.phi()) <= tol.phase {
            // Real branch; λ₀, λ₂, λ₃, λ₄ all nonvanishing here.
            if l1 && inv.iota.norm() > tol.zero {
                return Family::R1;
            }
            return Family::R2;
        }
        return Family::C4;
    }
    match (l2, l3) {
        (false, true) => Family::C1,
        (true, false) => Family::C2,
        (false, false) => Family::C3,
        (true, true) => unreachable!("handled above"),
    }
}

/// Assigns the family/subfamily label, with invariants, LBPS count,
/// decision margins and the uniqueness verdict.
pub fn classify<T: Scalar>(
    asd: &AsdState<T>,
    tol: &Tolerances<T>,
) -> Result<ClassificationReport<T>> {
    let inv = compute_invariants(asd, tol)?;
    let l = asd.lambda();

    let family = family_of(asd, &inv, tol);
    let rho_gap = (inv.rho - T::one()).abs();
    let subfamily = if rho_gap <= tol.rho {
        Subfamily::Prime
    } else {
        Subfamily::DoublePrime
    };

    let mut margins = BTreeMap::new();
    margins.insert("gamma_zero".to_string(), inv.gamma.norm() - tol.gamma);
    margins.insert("rho_unit".to_string(), rho_gap - tol.rho);
    margins.insert(
        "phi_real".to_string(),
        phi_real_distance(asd.phi()) - tol.phase,
    );
    margins.insert("iota_zero".to_string(), inv.iota.norm() - tol.zero);
    margins.insert("lambda1_zero".to_string(), l[1] - tol.zero);
    margins.insert("lambda2_zero".to_string(), l[2] - tol.zero);
    margins.insert("lambda3_zero".to_string(), l[3] - tol.zero);

    Ok(ClassificationReport {
        label: FamilyLabel { family, subfamily },
        lbps: asd.lbps_count(tol),
        margins,
        unique_asd: rho_gap <= tol.rho,
        uniqueness_modality: modality_of(family),
        invariants: inv,
    })
}

/// Outcome of the analytic LU-equivalence decision.
#[derive(Clone, Debug)]
pub struct EquivalenceDecision<T> {
    pub equivalent: bool,
    /// Which rule decided, in plain words.
    pub reason: String,
    /// A local-unitary triple mapping the first state onto the second, when
    /// one is analytically available (identity or diagonal phase shifts).
    pub witness: Option<LocalUnitaryTriple<T>>,
    /// Set when the pair is equivalent but the witness requires the
    /// brute-force search to construct.
    pub witness_via_oracle: bool,
}

impl<T> EquivalenceDecision<T> {
    fn inequivalent(reason: String) -> Self {
        EquivalenceDecision {
            equivalent: false,
            reason,
            witness: None,
            witness_via_oracle: false,
        }
    }
}

/// Decides whether two GHZ-class ASDs describe LU-equivalent states.
///
/// The necessary conditions (equal ∣ln ϱ∣, same family) are tested first;
/// membership of `b` in the LU class of `a` is then a coefficient comparison
/// against `a` and its ϱ–ι partner, ignoring phases for C₁–C₃, and treating
/// the conjugate pair specially in C₄.
pub fn decide_lu_equivalence<T: Scalar>(
    a: &AsdState<T>,
    b: &AsdState<T>,
    tol: &Tolerances<T>,
) -> Result<EquivalenceDecision<T>> {
    let ra = classify(a, tol)?;
    let rb = classify(b, tol)?;

    let ln_gap = (ra.invariants.ln_rho_abs - rb.invariants.ln_rho_abs).abs();
    if ln_gap > tol.cmp {
        return Ok(EquivalenceDecision::inequivalent(format!(
            "LU invariant |ln ϱ| differs: {:.9} vs {:.9}",
            to_f64(ra.invariants.ln_rho_abs),
            to_f64(rb.invariants.ln_rho_abs),
        )));
    }
    if ra.label.family != rb.label.family {
        return Ok(EquivalenceDecision::inequivalent(format!(
            "families differ: {} vs {}",
            ra.label, rb.label,
        )));
    }

    let family = ra.label.family;
    let partner = rho_iota_transform(a, tol)?;
    let d_self = b.tuple_distance(a);
    let d_partner = b.tuple_distance(&partner);

    if matches!(family, Family::C1 | Family::C2 | Family::C3) {
        // Phases are freely adjustable by the diagonal unitaries of
        // phase_shift_unitaries, so compare magnitudes only.
        if b.tuple_distance_ignoring_phase(a) <= tol.cmp {
            let witness = if d_self <= tol.cmp {
                Some(LocalUnitaryTriple::identity())
            } else {
                phase_shift_unitaries(a, b.phi(), tol).ok()
            };
            let witness_via_oracle = witness.is_none();
            return Ok(EquivalenceDecision {
                equivalent: true,
                reason: format!("same {family} coefficients, phases are not LU invariants here"),
                witness,
                witness_via_oracle,
            });
        }
        if b.tuple_distance_ignoring_phase(&partner) <= tol.cmp {
            return Ok(EquivalenceDecision {
                equivalent: true,
                reason: format!("ϱ–ι transform partner in {family}, up to free phases"),
                witness: None,
                witness_via_oracle: true,
            });
        }
        return Ok(EquivalenceDecision::inequivalent(format!(
            "both in {family} with matching |ln ϱ| but neither the same state (up to phases) nor ϱ–ι partners",
        )));
    }

    if d_self <= tol.cmp {
        return Ok(EquivalenceDecision {
            equivalent: true,
            reason: "identical ASD".to_string(),
            witness: Some(LocalUnitaryTriple::identity()),
            witness_via_oracle: false,
        });
    }
    if d_partner <= tol.cmp {
        let reason = if family == Family::C4 && ra.label.subfamily == Subfamily::Prime {
            "conjugate pair: for C4 with ϱ = 1 the LU class is {ψ, ψ*}".to_string()
        } else {
            "ϱ–ι transform partner".to_string()
        };
        return Ok(EquivalenceDecision {
            equivalent: true,
            reason,
            witness: None,
            witness_via_oracle: true,
        });
    }
    if family == Family::C4 && b.tuple_distance(&a.conjugate(tol)) <= tol.cmp {
        // Same coefficients with φ ↦ 2π − φ, and ϱ ≠ 1 (the ϱ = 1 case was
        // caught by the partner test): the NCLU situation.
        return Ok(EquivalenceDecision::inequivalent(
            "C4'' NCLU: a C4 state with ϱ ≠ 1 is not LU-equivalent to its complex conjugate"
                .to_string(),
        ));
    }
    Ok(EquivalenceDecision::inequivalent(format!(
        "both in {family} with matching |ln ϱ| but neither identical nor ϱ–ι partners",
    )))
}

fn closed_form_gap<T: Scalar>(
    asd: &AsdState<T>,
    family: Family,
    tol: &Tolerances<T>,
) -> Option<T> {
    let l = asd.lambda();
    let half = T::one() / (T::one() + T::one());
    match family {
        Family::P1 | Family::P2 | Family::P3 | Family::P4 => Some((l[0] * l[0] - half).abs()),
        Family::R1 | Family::R2 => {
            let delta = asd.delta(tol)?;
            Some((l[0] * l[0] + l[1] * l[1] - half - delta * l[1] * l[2] * l[3] / l[4]).abs())
        }
        Family::C1 | Family::C2 | Family::C3 => Some((l[0] * l[0] + l[1] * l[1] - half).abs()),
        Family::C4 => None,
    }
}

/// Whether the ASD is the state's only one (⇔ ϱ = 1), and in what sense.
///
/// The ϱ test is cross-checked against the family's closed-form uniqueness
/// condition (λ₀² = 1/2 for P; λ₀² + λ₁² = 1/2 + δλ₁λ₂λ₃/λ₄ for R;
/// λ₀² + λ₁² = 1/2 for C₁–C₃); a decisive disagreement is reported as an
/// internal-consistency error rather than silently resolved.
pub fn is_asd_unique<T: Scalar>(
    asd: &AsdState<T>,
    tol: &Tolerances<T>,
) -> Result<(bool, UniquenessModality)> {
    let report = classify(asd, tol)?;
    let rho_gap = (report.invariants.rho - T::one()).abs();

    if let Some(closed_gap) = closed_form_gap(asd, report.label.family, tol) {
        let rho_says_unique = rho_gap <= tol.rho;
        let closed_says_unique = closed_gap <= tol.rho;
        if rho_says_unique != closed_says_unique && rho_gap.max(closed_gap) > tol.consistency {
            return Err(Error::InconsistentUniqueness {
                rho_gap: to_f64(rho_gap),
                closed_form_gap: to_f64(closed_gap),
            });
        }
    }
    Ok((rho_gap <= tol.rho, report.uniqueness_modality))
}

/// The canonical representative of the state's ASDs.
///
/// ϱ > 1 picks the ϱ–ι partner (the ϱ < 1 member); C₁–C₃ normalize the free
/// phase to 0; a C₄ state with ϱ = 1 picks the member of {ψ, ψ*} whose phase
/// lies in [0, π]. Idempotent by construction.
pub fn canonical_asd<T: Scalar>(asd: &AsdState<T>, tol: &Tolerances<T>) -> Result<AsdState<T>> {
    let report = classify(asd, tol)?;
    let family = report.label.family;

    let mut out = if report.invariants.rho > T::one() + tol.rho {
        rho_iota_transform(asd, tol)?
    } else {
        asd.clone()
    };
    match family {
        Family::C1 | Family::C2 | Family::C3 => {
            out = AsdState::new(*out.lambda(), T::zero(), tol)?;
        }
        Family::C4 => {
            if report.label.subfamily == Subfamily::Prime && out.phi() > T::PI() {
                out = out.conjugate(tol);
            }
        }
        _ => {}
    }
    Ok(out)
}
