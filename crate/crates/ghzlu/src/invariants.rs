//! The parameters γ, ϱ, ι of GHZ-class canonical forms and the ϱ–ι
//! transformation.
//!
//! For an ASD (λ₀, λ₁e^{iφ}, λ₂, λ₃, λ₄) with λ₀λ₄ ≠ 0,
//!
//! ```text
//! γ = λ₁λ₄e^{iφ} − λ₂λ₃            J₁ = ∣γ∣²       J₄ = (λ₀λ₄)²
//! ϱ = √(J₄+J₁) / √((λ₂²+λ₄²)(λ₃²+λ₄²))
//! ι = (λ₂λ₃ + γ*/ϱ²) / λ₄
//! ```
//!
//! The ϱ–ι transformation ((1/ϱ)λ₀, ϱι, ϱλ₂, ϱλ₃, ϱλ₄) produces the only
//! other ASD the state can have; it is an involution with ϱ′ϱ = 1 and
//! ι′ = ϱλ₁e^{iφ}. Consequently ∣ln ϱ∣ is a local-unitary invariant, and
//! 1/(1 + ∣ln ϱ∣) ∈ (0, 1] is an entanglement measure that equals 1 exactly
//! on the states with unique ASD. [`phase_shift_unitaries`] realizes the
//! diagonal local unitaries that retarget φ when λ₂λ₃ = 0, the reason phases
//! are ignored when comparing such states.

use num_complex::Complex;

use crate::asd::AsdState;
use crate::qstate::{LocalUnitary, LocalUnitaryTriple};
use crate::{to_f64, Error, Result, Scalar, Tolerances};

/// The derived quantities of one GHZ-class ASD.
#[derive(Clone, Debug, PartialEq)]
pub struct GhzInvariants<T> {
    pub gamma: Complex<T>,
    pub j1: T,
    pub j4: T,
    pub rho: T,
    pub iota: Complex<T>,
    /// ∣ln ϱ∣, equal on every ASD of the same LU class.
    pub ln_rho_abs: T,
    /// 1/(1 + ∣ln ϱ∣).
    pub measure: T,
}

fn require_ghz_class<T: Scalar>(asd: &AsdState<T>, tol: &Tolerances<T>) -> Result<()> {
    if asd.is_ghz_class(tol) {
        Ok(())
    } else {
        Err(Error::NotGhzClass {
            lambda0: to_f64(asd.lambda()[0]),
            lambda4: to_f64(asd.lambda()[4]),
        })
    }
}

pub fn compute_invariants<T: Scalar>(
    asd: &AsdState<T>,
    tol: &Tolerances<T>,
) -> Result<GhzInvariants<T>> {
    require_ghz_class(asd, tol)?;
    let l = asd.lambda();

    let gamma = asd.lambda1_complex().scale(l[4]) - Complex::new(l[2] * l[3], T::zero());
    let j1 = gamma.norm_sqr();
    let j4 = (l[0] * l[4]) * (l[0] * l[4]);
    let rho = (j4 + j1).sqrt() / ((l[2] * l[2] + l[4] * l[4]) * (l[3] * l[3] + l[4] * l[4])).sqrt();
    let iota = (Complex::new(l[2] * l[3], T::zero()) + gamma.conj().unscale(rho * rho)).unscale(l[4]);
    let ln_rho_abs = rho.ln().abs();
    let measure = T::one() / (T::one() + ln_rho_abs);

    Ok(GhzInvariants {
        gamma,
        j1,
        j4,
        rho,
        iota,
        ln_rho_abs,
        measure,
    })
}

/// ((1/ϱ)λ₀, ϱι, ϱλ₂, ϱλ₃, ϱλ₄), the other ASD of the same state.
///
/// The complex entry ϱι is stored in polar form (λ₁′, φ′). That the result
/// is unit-norm is a theorem, not an arrangement, so the constructor check
/// doubles as a consistency test of the formulas.
pub fn rho_iota_transform<T: Scalar>(
    asd: &AsdState<T>,
    tol: &Tolerances<T>,
) -> Result<AsdState<T>> {
    let inv = compute_invariants(asd, tol)?;
    let l = asd.lambda();
    let z1 = inv.iota.scale(inv.rho);
    AsdState::new(
        [
            l[0] / inv.rho,
            z1.norm(),
            inv.rho * l[2],
            inv.rho * l[3],
            inv.rho * l[4],
        ],
        z1.arg(),
        tol,
    )
}

/// ∣ln ϱ∣.
pub fn lu_invariant_ln_rho<T: Scalar>(asd: &AsdState<T>, tol: &Tolerances<T>) -> Result<T> {
    Ok(compute_invariants(asd, tol)?.ln_rho_abs)
}

/// 1/(1 + ∣ln ϱ∣).
pub fn entanglement_measure<T: Scalar>(asd: &AsdState<T>, tol: &Tolerances<T>) -> Result<T> {
    Ok(compute_invariants(asd, tol)?.measure)
}

/// Diagonal local unitaries moving the ASD phase to `target_phase`.
///
/// Defined on states with λ₂λ₃ = 0 and λ₀λ₁λ₄ ≠ 0, which therefore have a
/// continuum of ASDs differing only in φ. With Δ = target − φ, the λ₃ = 0
/// case uses U^A = diag(e^{iφ₁}, e^{i(2φ₁+φ₂)}), U^B = diag(e^{−iφ₁}, e^{−iφ₁}),
/// U^C = diag(1, e^{−i(φ₂+φ₁)}) under φ₁ + φ₂ = Δ, and the λ₂ = 0 case uses
/// U^A = diag(e^{iα}, e^{iβ}), U^B = diag(e^{−iα}, e^{−iβ}), U^C = 1 under
/// β − α = Δ. The free parameters are fixed as φ₁ = 0 and α = 0.
pub fn phase_shift_unitaries<T: Scalar>(
    asd: &AsdState<T>,
    target_phase: T,
    tol: &Tolerances<T>,
) -> Result<LocalUnitaryTriple<T>> {
    let l = asd.lambda();
    if l[2] > tol.zero && l[3] > tol.zero {
        return Err(Error::PhaseShiftDomain {
            reason: format!(
                "λ₂λ₃ = {:.3e} does not vanish",
                to_f64(l[2] * l[3])
            ),
        });
    }
    if l[0] <= tol.zero || l[1] <= tol.zero || l[4] <= tol.zero {
        return Err(Error::PhaseShiftDomain {
            reason: format!(
                "λ₀λ₁λ₄ = {:.3e} vanishes, the phase is not free or not present",
                to_f64(l[0] * l[1] * l[4])
            ),
        });
    }

    let delta = target_phase - asd.phi();
    let zero = T::zero();
    if l[2] <= tol.zero {
        // α = 0, β = Δ.
        Ok(LocalUnitaryTriple {
            a: LocalUnitary::phase_diag(zero, delta),
            b: LocalUnitary::phase_diag(zero, -delta),
            c: LocalUnitary::identity(),
        })
    } else {
        // λ₃ = 0 here; φ₁ = 0, φ₂ = Δ.
        Ok(LocalUnitaryTriple {
            a: LocalUnitary::phase_diag(zero, delta),
            b: LocalUnitary::identity(),
            c: LocalUnitary::phase_diag(zero, -delta),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{apply_local_unitaries, overlap};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    fn asd(lambda: [f64; 5], phi: f64) -> AsdState<f64> {
        AsdState::new(lambda, phi, &tol()).unwrap()
    }

    fn normalized(mut lambda: [f64; 5]) -> [f64; 5] {
        let n = lambda.iter().map(|l| l * l).sum::<f64>().sqrt();
        for l in lambda.iter_mut() {
            *l /= n;
        }
        lambda
    }

    fn random_ghz_asd(rng: &mut ChaCha8Rng) -> AsdState<f64> {
        let mut lambda = [0.0; 5];
        for l in lambda.iter_mut() {
            *l = 0.15 + 0.85 * rng.gen::<f64>();
        }
        asd(normalized(lambda), rng.gen::<f64>() * std::f64::consts::TAU)
    }

    fn ghz_asd() -> AsdState<f64> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        asd([r, 0.0, 0.0, 0.0, r], 0.0)
    }

    fn phi_tuple() -> AsdState<f64> {
        asd([0.5, 0.0, 0.5, 0.5, 0.5], 0.0)
    }

    fn phi_prime_tuple() -> AsdState<f64> {
        let s = std::f64::consts::SQRT_2;
        asd([s / 2.0, s / 4.0, s / 4.0, s / 4.0, s / 4.0], std::f64::consts::PI)
    }

    #[test]
    fn ghz_reference_values() {
        let inv = compute_invariants(&ghz_asd(), &tol()).unwrap();
        assert!(inv.gamma.norm() < 1e-15);
        assert!(inv.j1 < 1e-15);
        assert!((inv.j4 - 0.25).abs() < 1e-15);
        assert!((inv.rho - 1.0).abs() < 1e-15);
        assert!(inv.iota.norm() < 1e-15);
        assert_eq!(inv.ln_rho_abs, 0.0);
        assert_eq!(inv.measure, 1.0);
    }

    #[test]
    fn hadamard_pair_reference_values() {
        let inv = compute_invariants(&phi_tuple(), &tol()).unwrap();
        assert!((inv.gamma - C::new(-0.25, 0.0)).norm() < 1e-15);
        assert!((inv.rho - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((inv.iota - C::new(-0.5, 0.0)).norm() < 1e-12);
        assert!((inv.ln_rho_abs - 0.5 * std::f64::consts::LN_2).abs() < 1e-12);
        assert!((inv.measure - 1.0 / (1.0 + 0.5 * std::f64::consts::LN_2)).abs() < 1e-12);

        let inv_p = compute_invariants(&phi_prime_tuple(), &tol()).unwrap();
        assert!((inv_p.rho - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!((inv.rho * inv_p.rho - 1.0).abs() < 1e-12);
        assert!((inv.ln_rho_abs - inv_p.ln_rho_abs).abs() < 1e-12);
        assert!((inv.measure - inv_p.measure).abs() < 1e-12);
    }

    #[test]
    fn transform_maps_phi_to_phi_prime_and_fixes_ghz() {
        let out = rho_iota_transform(&phi_tuple(), &tol()).unwrap();
        assert!(out.tuple_distance(&phi_prime_tuple()) < 1e-12);

        let ghz = rho_iota_transform(&ghz_asd(), &tol()).unwrap();
        assert!(ghz.tuple_distance(&ghz_asd()) < 1e-15);

        assert!(matches!(
            rho_iota_transform(&asd([1.0, 0.0, 0.0, 0.0, 0.0], 0.0), &tol()),
            Err(Error::NotGhzClass { .. })
        ));
    }

    #[test]
    fn involution_reciprocity_and_iota_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        for _ in 0..500 {
            let a = random_ghz_asd(&mut rng);
            let inv = compute_invariants(&a, &tol()).unwrap();
            let b = rho_iota_transform(&a, &tol()).unwrap();
            let inv_b = compute_invariants(&b, &tol()).unwrap();

            assert!((inv.rho * inv_b.rho - 1.0).abs() < 1e-10);
            let expected_iota = asd_lambda1(&a).scale(inv.rho);
            assert!((inv_b.iota - expected_iota).norm() < 1e-10);

            let back = rho_iota_transform(&b, &tol()).unwrap();
            assert!(back.tuple_distance(&a) < 1e-10);
        }
    }

    fn asd_lambda1(a: &AsdState<f64>) -> C {
        a.lambda1_complex()
    }

    #[test]
    fn gamma_zero_closed_forms() {
        // λ₁λ₄ = λ₂λ₃ with φ = 0 makes γ vanish; then ϱ = λ₀/√(1−λ₀²) and
        // ι = λ₁.
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..200 {
            let l2 = 0.2 + 0.6 * rng.gen::<f64>();
            let l3 = 0.2 + 0.6 * rng.gen::<f64>();
            let l4 = 0.2 + 0.6 * rng.gen::<f64>();
            let l1 = l2 * l3 / l4;
            let l0 = 0.2 + 0.6 * rng.gen::<f64>();
            let a = asd(normalized([l0, l1, l2, l3, l4]), 0.0);
            let l = a.lambda();

            let inv = compute_invariants(&a, &tol()).unwrap();
            assert!(inv.gamma.norm() < 1e-15);
            assert!((inv.rho - l[0] / (1.0 - l[0] * l[0]).sqrt()).abs() < 1e-10);
            assert!((inv.iota - C::new(l[1], 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn lambda23_zero_closed_forms() {
        // Phase-stripped states with λ₂λ₃ = 0: ι = λ₁/ϱ² and
        // ϱ = √(λ₀²+λ₁²)/√(1−λ₀²−λ₁²).
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for k in 0..200 {
            let mut lambda = [0.0; 5];
            for l in lambda.iter_mut() {
                *l = 0.2 + 0.6 * rng.gen::<f64>();
            }
            if k % 3 == 0 {
                lambda[2] = 0.0;
            } else if k % 3 == 1 {
                lambda[3] = 0.0;
            } else {
                lambda[2] = 0.0;
                lambda[3] = 0.0;
            }
            let a = asd(normalized(lambda), 0.0);
            let l = a.lambda();

            let inv = compute_invariants(&a, &tol()).unwrap();
            let s = l[0] * l[0] + l[1] * l[1];
            assert!((inv.rho - (s / (1.0 - s)).sqrt()).abs() < 1e-10);
            assert!((inv.iota - C::new(l[1] / (inv.rho * inv.rho), 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn phase_shift_case_1() {
        let a = asd([0.6, 0.5, 0.3, 0.0, 0.3f64.sqrt()], 0.4);
        let t = phase_shift_unitaries(&a, 1.7, &tol()).unwrap();
        let moved = apply_local_unitaries(&a.reconstruct(), &t);
        let target = asd([0.6, 0.5, 0.3, 0.0, 0.3f64.sqrt()], 1.7).reconstruct();
        let dist = (0..8)
            .map(|i| (moved.amplitudes()[i] - target.amplitudes()[i]).norm())
            .fold(0.0, f64::max);
        assert!(dist < 1e-10);
    }

    #[test]
    fn phase_shift_case_2() {
        let a = asd(
            [0.6, 0.5, 0.0, 0.0, 0.39f64.sqrt()],
            std::f64::consts::FRAC_PI_3,
        );
        let t = phase_shift_unitaries(&a, 0.0, &tol()).unwrap();
        let moved = apply_local_unitaries(&a.reconstruct(), &t);
        let target = asd([0.6, 0.5, 0.0, 0.0, 0.39f64.sqrt()], 0.0).reconstruct();
        let dist = (0..8)
            .map(|i| (moved.amplitudes()[i] - target.amplitudes()[i]).norm())
            .fold(0.0, f64::max);
        assert!(dist < 1e-10);
    }

    #[test]
    fn phase_shift_to_current_phase_is_the_identity() {
        let a = asd([0.6, 0.5, 0.3, 0.0, 0.3f64.sqrt()], 0.4);
        let t = phase_shift_unitaries(&a, 0.4, &tol()).unwrap();
        let moved = apply_local_unitaries(&a.reconstruct(), &t);
        assert!((overlap(&a.reconstruct(), &moved).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn phase_shift_domain_errors() {
        // Both λ₂ and λ₃ nonzero: the phase is a genuine invariant there.
        let busy = asd(normalized([0.5, 0.5, 0.5, 0.5, 0.5]), 0.3);
        assert!(matches!(
            phase_shift_unitaries(&busy, 1.0, &tol()),
            Err(Error::PhaseShiftDomain { .. })
        ));
        // λ₁ = 0: there is no phase to move.
        let no_phase = asd(normalized([0.5, 0.0, 0.5, 0.0, 0.5]), 0.0);
        assert!(matches!(
            phase_shift_unitaries(&no_phase, 1.0, &tol()),
            Err(Error::PhaseShiftDomain { .. })
        ));
    }

    #[test]
    fn convenience_accessors_match_the_record() {
        let a = phi_tuple();
        let inv = compute_invariants(&a, &tol()).unwrap();
        assert_eq!(lu_invariant_ln_rho(&a, &tol()).unwrap(), inv.ln_rho_abs);
        assert_eq!(entanglement_measure(&a, &tol()).unwrap(), inv.measure);
    }
}
