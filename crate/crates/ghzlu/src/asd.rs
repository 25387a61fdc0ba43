//! The generalized Schmidt decomposition (ASD) of three-qubit states.
//!
//! Every three-qubit pure state is local-unitarily equivalent to
//!
//! ```text
//! λ₀∣000⟩ + λ₁e^{iφ}∣100⟩ + λ₂∣101⟩ + λ₃∣110⟩ + λ₄∣111⟩
//! ```
//!
//! with λᵢ ≥ 0, Σλᵢ² = 1, φ ∈ [0, 2π). [`compute_asd`] constructs this form:
//! slice the amplitude tensor along qubit A into 2×2 blocks T₀, T₁, pick the
//! qubit-A rotation making the new first slice singular (a projective
//! quadratic in the rotation's top row), zero the off corner of that slice
//! with singular-vector rotations on B and C, and sweep all remaining phases
//! into the ∣100⟩ term with diagonal factors. The quadratic has at most two
//! roots, so a state admits at most two ASDs; the returned one maximizes λ₀
//! and the other is recovered by the ϱ–ι transformation.

use num_complex::Complex;

use crate::qstate::{LocalUnitary, LocalUnitaryTriple, PureState};
use crate::{real, to_f64, Error, Result, Scalar, Tolerances};

/// Schmidt coefficients λ₀..λ₄ plus the phase φ of the ∣100⟩ term.
///
/// Stored φ lives in [0, 2π), is snapped to exactly 0 or π when within
/// `tol.phase` of them (family membership is discontinuous there), and is
/// normalized to 0 whenever λ₁ < `tol.zero` since it is then meaningless.
#[derive(Clone, Debug, PartialEq)]
pub struct AsdState<T> {
    lambda: [T; 5],
    phi: T,
}

impl<T: Scalar> AsdState<T> {
    pub fn new(lambda: [T; 5], phi: T, tol: &Tolerances<T>) -> Result<Self> {
        for (i, &l) in lambda.iter().enumerate() {
            if !(l >= T::zero()) || !l.is_finite() {
                return Err(Error::InvalidAsd {
                    reason: format!("λ{i} = {} must be a nonnegative finite real", to_f64(l)),
                });
            }
        }
        let norm_sqr = lambda.iter().map(|l| *l * *l).fold(T::zero(), |s, x| s + x);
        let deviation = (norm_sqr - T::one()).abs();
        if deviation > tol.norm {
            return Err(Error::NotNormalized {
                deviation: to_f64(deviation),
            });
        }
        if !phi.is_finite() {
            return Err(Error::InvalidAsd {
                reason: format!("phase φ = {} must be finite", to_f64(phi)),
            });
        }

        let tau = T::TAU();
        let mut phi = phi - (phi / tau).floor() * tau;
        if phi >= tau {
            phi = T::zero();
        }
        if phi <= tol.phase || tau - phi <= tol.phase {
            phi = T::zero();
        } else if (phi - T::PI()).abs() <= tol.phase {
            phi = T::PI();
        }
        if lambda[1] < tol.zero {
            phi = T::zero();
        }
        Ok(AsdState { lambda, phi })
    }

    pub fn lambda(&self) -> &[T; 5] {
        &self.lambda
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    /// λ₁e^{iφ} as a complex number.
    pub fn lambda1_complex(&self) -> Complex<T> {
        Complex::from_polar(self.lambda[1], self.phi)
    }

    /// Amplitudes of the canonical form in the computational basis.
    pub fn reconstruct(&self) -> PureState<T> {
        let zero = Complex::new(T::zero(), T::zero());
        let mut amp = [zero; 8];
        amp[0] = Complex::new(self.lambda[0], T::zero());
        amp[4] = self.lambda1_complex();
        amp[5] = Complex::new(self.lambda[2], T::zero());
        amp[6] = Complex::new(self.lambda[3], T::zero());
        amp[7] = Complex::new(self.lambda[4], T::zero());
        PureState { amp }
    }

    /// The ASD of the conjugated state: same coefficients, φ ↦ 2π − φ.
    pub fn conjugate(&self, tol: &Tolerances<T>) -> Self {
        AsdState::new(self.lambda, T::TAU() - self.phi, tol)
            .expect("conjugation preserves ASD validity")
    }

    /// Number of Schmidt coefficients above `tol.zero` (the i of "i-LBPS").
    pub fn lbps_count(&self, tol: &Tolerances<T>) -> usize {
        self.lambda.iter().filter(|&&l| l > tol.zero).count()
    }

    /// GHZ SLOCC membership: λ₀ and λ₄ both nonvanishing.
    pub fn is_ghz_class(&self, tol: &Tolerances<T>) -> bool {
        self.lambda[0] > tol.zero && self.lambda[4] > tol.zero
    }

    /// δ = +1 for φ = 0, δ = −1 for φ = π, `None` off the real axis.
    pub(crate) fn delta(&self, tol: &Tolerances<T>) -> Option<T> {
        if self.phi <= tol.phase || T::TAU() - self.phi <= tol.phase {
            Some(T::one())
        } else if (self.phi - T::PI()).abs() <= tol.phase {
            Some(-T::one())
        } else {
            None
        }
    }

    /// Sup distance between coefficient tuples, the ∣100⟩ entries compared as
    /// complex numbers.
    pub(crate) fn tuple_distance(&self, other: &Self) -> T {
        let mut d = (self.lambda1_complex() - other.lambda1_complex()).norm();
        for i in [0usize, 2, 3, 4] {
            let di = (self.lambda[i] - other.lambda[i]).abs();
            if di > d {
                d = di;
            }
        }
        d
    }

    /// Sup distance with the phases discarded (λ₁ compared by magnitude).
    pub(crate) fn tuple_distance_ignoring_phase(&self, other: &Self) -> T {
        let mut d = T::zero();
        for i in 0..5 {
            let di = (self.lambda[i] - other.lambda[i]).abs();
            if di > d {
                d = di;
            }
        }
        d
    }
}

fn det2<T: Scalar>(m: &[[Complex<T>; 2]; 2]) -> Complex<T> {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Roots of c₂u₀₀² + c₁u₀₀u₀₁ + c₀u₀₁² = 0 as projective pairs (u₀₀ : u₀₁),
/// organized to avoid cancellation and division by vanishing leading terms.
fn projective_quadratic_roots<T: Scalar>(
    c2: Complex<T>,
    c1: Complex<T>,
    c0: Complex<T>,
) -> Vec<(Complex<T>, Complex<T>)> {
    let one = Complex::new(T::one(), T::zero());
    let zero = Complex::new(T::zero(), T::zero());

    let scale = c2.norm().max(c1.norm()).max(c0.norm());
    if !(scale > T::zero()) {
        // Identically satisfied: every qubit-A rotation works.
        return vec![(one, zero), (zero, one)];
    }
    let c2 = c2.unscale(scale);
    let c1 = c1.unscale(scale);
    let c0 = c0.unscale(scale);
    let tiny = T::epsilon() * real::<T>(100.0);

    if c2.norm() <= tiny && c1.norm() <= tiny {
        // c₀u₀₁² = 0 with c₀ of order one: double root.
        return vec![(one, zero)];
    }
    if c2.norm() <= tiny {
        return vec![(one, zero), (-c0, c1)];
    }
    let disc = c1 * c1 - (c2 * c0).scale(real(4.0));
    let mut s = disc.sqrt();
    if (c1 + s).norm() < (c1 - s).norm() {
        s = -s;
    }
    let q = -(c1 + s).unscale(real(2.0));
    if q.norm() <= tiny {
        // Forces c₀ ≈ 0: u₀₀(c₂u₀₀ + c₁u₀₁) = 0.
        return vec![(zero, one), (-c1, c2)];
    }
    vec![(q, c2), (c0, q)]
}

/// Top singular pair (u, v) of a 2×2 matrix, m·v = σu with σ the larger
/// singular value; falls back to basis vectors when m vanishes.
fn top_singular_pair<T: Scalar>(m: &[[Complex<T>; 2]; 2]) -> ([Complex<T>; 2], [Complex<T>; 2]) {
    let e0 = [
        Complex::new(T::one(), T::zero()),
        Complex::new(T::zero(), T::zero()),
    ];

    let h00 = m[0][0].norm_sqr() + m[1][0].norm_sqr();
    let h11 = m[0][1].norm_sqr() + m[1][1].norm_sqr();
    let h01 = m[0][0].conj() * m[0][1] + m[1][0].conj() * m[1][1];
    let tr = h00 + h11;
    if !(tr > T::zero()) {
        return (e0, e0);
    }
    let gap = ((h00 - h11) * (h00 - h11) + real::<T>(4.0) * h01.norm_sqr()).sqrt();
    let mu = (tr + gap) / real::<T>(2.0);

    let cand_a = [h01, Complex::new(mu - h00, T::zero())];
    let cand_b = [Complex::new(mu - h11, T::zero()), h01.conj()];
    let na = (cand_a[0].norm_sqr() + cand_a[1].norm_sqr()).sqrt();
    let nb = (cand_b[0].norm_sqr() + cand_b[1].norm_sqr()).sqrt();
    let floor = tr * T::epsilon() * real::<T>(100.0);
    let v = if na >= nb && na > floor {
        [cand_a[0].unscale(na), cand_a[1].unscale(na)]
    } else if nb > floor {
        [cand_b[0].unscale(nb), cand_b[1].unscale(nb)]
    } else {
        // H is (numerically) a multiple of the identity.
        e0
    };

    let mv = [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ];
    let sigma = (mv[0].norm_sqr() + mv[1].norm_sqr()).sqrt();
    let u = if sigma > tr.sqrt() * T::epsilon() * real::<T>(100.0) {
        [mv[0].unscale(sigma), mv[1].unscale(sigma)]
    } else {
        e0
    };
    (u, v)
}

/// Completes a unit first row (a, b) to the unitary [[a, b], [−b̄, ā]].
fn complete_row<T: Scalar>(a: Complex<T>, b: Complex<T>) -> LocalUnitary<T> {
    LocalUnitary {
        u: [[a, b], [-b.conj(), a.conj()]],
    }
}

fn apply_on_stride<T: Scalar>(amp: &mut [Complex<T>; 8], u: &LocalUnitary<T>, stride: usize) {
    for base in 0..8 {
        if base & stride == 0 {
            let x0 = amp[base];
            let x1 = amp[base + stride];
            amp[base] = u.u[0][0] * x0 + u.u[0][1] * x1;
            amp[base + stride] = u.u[1][0] * x0 + u.u[1][1] * x1;
        }
    }
}

struct BranchCandidate<T> {
    asd: Result<AsdState<T>>,
    witness: LocalUnitaryTriple<T>,
    residual: T,
}

fn branch_candidate<T: Scalar>(
    state: &PureState<T>,
    root: (Complex<T>, Complex<T>),
    tol: &Tolerances<T>,
) -> BranchCandidate<T> {
    let n = (root.0.norm_sqr() + root.1.norm_sqr()).sqrt();
    let ua = complete_row(root.0.unscale(n), root.1.unscale(n));

    let mut amp = state.amp;
    apply_on_stride(&mut amp, &ua, 4);

    let t0 = [[amp[0], amp[1]], [amp[2], amp[3]]];
    let (u, v) = top_singular_pair(&t0);
    let ub = complete_row(u[0].conj(), u[1].conj());
    let uc = complete_row(v[0], v[1]);
    apply_on_stride(&mut amp, &ub, 2);
    apply_on_stride(&mut amp, &uc, 1);

    // Sweep phases into diagonal factors: with D = diag(e^{ia₀}, e^{ia₁}) on A
    // and analogously (b₀, b₁), (c₀, c₁) on B and C, making the ∣000⟩, ∣101⟩,
    // ∣110⟩, ∣111⟩ entries real nonnegative fixes four phase sums; b₀ = c₀ = 0
    // uses up the leftover freedom.
    let th0 = amp[0].arg();
    let th5 = amp[5].arg();
    let th6 = amp[6].arg();
    let th7 = amp[7].arg();
    let a0 = -th0;
    let a1 = th7 - th5 - th6;
    let b1 = th5 - th7;
    let c1 = th6 - th7;
    let da = LocalUnitary::phase_diag(a0, a1);
    let db = LocalUnitary::phase_diag(T::zero(), b1);
    let dc = LocalUnitary::phase_diag(T::zero(), c1);
    apply_on_stride(&mut amp, &da, 4);
    apply_on_stride(&mut amp, &db, 2);
    apply_on_stride(&mut amp, &dc, 1);

    let witness = LocalUnitaryTriple {
        a: da.compose(&ua),
        b: db.compose(&ub),
        c: dc.compose(&uc),
    };

    let lambda = [
        amp[0].norm(),
        amp[4].norm(),
        amp[5].norm(),
        amp[6].norm(),
        amp[7].norm(),
    ];
    let phi = amp[4].arg();

    // Distance of the transformed vector from an exact canonical form with
    // these raw coefficients; the snapping done by AsdState::new is a
    // representation choice and deliberately not charged against it.
    let mut residual = amp[1].norm().max(amp[2].norm()).max(amp[3].norm());
    for (slot, ideal) in [
        (0usize, Complex::new(lambda[0], T::zero())),
        (4, Complex::from_polar(lambda[1], phi)),
        (5, Complex::new(lambda[2], T::zero())),
        (6, Complex::new(lambda[3], T::zero())),
        (7, Complex::new(lambda[4], T::zero())),
    ] {
        residual = residual.max((amp[slot] - ideal).norm());
    }

    BranchCandidate {
        asd: AsdState::new(lambda, phi, tol),
        witness,
        residual,
    }
}

/// All valid decomposition branches (one or two), plus every branch residual
/// for diagnostics. For a GHZ-class state with ϱ ≠ 1 the two branches are the
/// state's two distinct ASDs.
pub(crate) fn compute_asd_branches<T: Scalar>(
    state: &PureState<T>,
    tol: &Tolerances<T>,
) -> (Vec<(AsdState<T>, LocalUnitaryTriple<T>)>, Vec<T>) {
    let t0 = [[state.amp[0], state.amp[1]], [state.amp[2], state.amp[3]]];
    let t1 = [[state.amp[4], state.amp[5]], [state.amp[6], state.amp[7]]];
    let c2 = det2(&t0);
    let c0 = det2(&t1);
    let c1 = t0[0][0] * t1[1][1] + t1[0][0] * t0[1][1] - t0[0][1] * t1[1][0] - t1[0][1] * t0[1][0];

    let mut branches = Vec::new();
    let mut residuals = Vec::new();
    for root in projective_quadratic_roots(c2, c1, c0) {
        let cand = branch_candidate(state, root, tol);
        residuals.push(cand.residual);
        if cand.residual <= tol.residual {
            if let Ok(asd) = cand.asd {
                branches.push((asd, cand.witness));
            }
        }
    }
    (branches, residuals)
}

/// Canonical form of `state` together with a witness triple t satisfying
/// apply_local_unitaries(state, t) = reconstruct(asd) up to `tol.residual`.
///
/// When both quadratic roots yield valid decompositions the one with the
/// larger λ₀ is returned (ties keep the first), a deterministic choice that
/// for GHZ-class states selects the branch with ϱ ≥ 1.
pub fn compute_asd<T: Scalar>(
    state: &PureState<T>,
    tol: &Tolerances<T>,
) -> Result<(AsdState<T>, LocalUnitaryTriple<T>)> {
    let (mut branches, residuals) = compute_asd_branches(state, tol);
    if branches.is_empty() {
        return Err(Error::DecompositionFailed {
            residuals: residuals.into_iter().map(to_f64).collect(),
        });
    }
    let mut best = 0;
    for i in 1..branches.len() {
        if branches[i].0.lambda[0] > branches[best].0.lambda[0] {
            best = i;
        }
    }
    Ok(branches.swap_remove(best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{compute_invariants, rho_iota_transform};
    use crate::qstate::{apply_local_unitaries, haar_random_triple, three_tangle};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    fn asd(lambda: [f64; 5], phi: f64) -> AsdState<f64> {
        AsdState::new(lambda, phi, &tol()).unwrap()
    }

    fn phi_tuple() -> AsdState<f64> {
        asd([0.5, 0.0, 0.5, 0.5, 0.5], 0.0)
    }

    fn phi_prime_tuple() -> AsdState<f64> {
        let s = std::f64::consts::SQRT_2;
        asd([s / 2.0, s / 4.0, s / 4.0, s / 4.0, s / 4.0], std::f64::consts::PI)
    }

    /// Random GHZ-class ASD with coefficients bounded away from zero.
    fn random_ghz_asd(rng: &mut ChaCha8Rng) -> AsdState<f64> {
        let mut lambda = [0.0; 5];
        for l in lambda.iter_mut() {
            *l = 0.15 + 0.85 * rng.gen::<f64>();
        }
        let n = lambda.iter().map(|l| l * l).sum::<f64>().sqrt();
        for l in lambda.iter_mut() {
            *l /= n;
        }
        asd(lambda, rng.gen::<f64>() * std::f64::consts::TAU)
    }

    fn max_amp_dist(a: &PureState<f64>, b: &PureState<f64>) -> f64 {
        (0..8)
            .map(|i| (a.amp[i] - b.amp[i]).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn reconstruct_places_coefficients() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let ghz = asd([r, 0.0, 0.0, 0.0, r], 0.0).reconstruct();
        assert_eq!(ghz.amp, PureState::<f64>::ghz().amp);

        let phi = phi_tuple().reconstruct();
        for (i, expected) in [(0, 0.5), (5, 0.5), (6, 0.5), (7, 0.5)] {
            assert_eq!(phi.amp[i], C::new(expected, 0.0));
        }
        assert_eq!(phi.amp[4], C::new(0.0, 0.0));

        let pp = phi_prime_tuple().reconstruct();
        let q = std::f64::consts::SQRT_2 / 4.0;
        assert!((pp.amp[4] - C::new(-q, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn validation_rejects_bad_tuples() {
        assert!(matches!(
            AsdState::new([0.5, -0.1, 0.5, 0.5, 0.5], 0.0, &tol()),
            Err(Error::InvalidAsd { .. })
        ));
        assert!(matches!(
            AsdState::new([0.5, 0.0, 0.0, 0.0, 0.5], 0.0, &tol()),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            AsdState::new([0.5, 0.0, 0.5, 0.5, 0.5], f64::NAN, &tol()),
            Err(Error::InvalidAsd { .. })
        ));
    }

    #[test]
    fn phase_is_folded_and_snapped() {
        let l = [0.5, 0.5, 0.5, 0.35, f64::sqrt(1.0 - 0.25 * 3.0 - 0.1225)];
        assert!((asd(l, -std::f64::consts::FRAC_PI_2).phi() - 1.5 * std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(asd(l, std::f64::consts::TAU - 1e-12).phi(), 0.0);
        assert_eq!(asd(l, std::f64::consts::PI + 1e-12).phi(), std::f64::consts::PI);
        // Phase of a vanishing λ₁ is meaningless and normalized away.
        assert_eq!(asd([0.5, 0.0, 0.5, 0.5, 0.5], 2.0).phi(), 0.0);
    }

    #[test]
    fn lbps_and_class_predicates() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let ghz = asd([r, 0.0, 0.0, 0.0, r], 0.0);
        assert_eq!(ghz.lbps_count(&tol()), 2);
        assert!(ghz.is_ghz_class(&tol()));

        assert_eq!(phi_tuple().lbps_count(&tol()), 4);
        assert_eq!(phi_prime_tuple().lbps_count(&tol()), 5);

        assert!(!asd([1.0, 0.0, 0.0, 0.0, 0.0], 0.0).is_ghz_class(&tol()));
    }

    #[test]
    fn decomposes_ghz() {
        let (a, t) = compute_asd(&PureState::<f64>::ghz(), &tol()).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((a.lambda[0] - r).abs() < 1e-12);
        assert!((a.lambda[4] - r).abs() < 1e-12);
        assert!(a.lambda[1].abs().max(a.lambda[2].abs()).max(a.lambda[3].abs()) < 1e-12);
        assert_eq!(a.phi(), 0.0);
        let moved = apply_local_unitaries(&PureState::ghz(), &t);
        assert!(max_amp_dist(&moved, &a.reconstruct()) < 1e-10);
    }

    #[test]
    fn decomposes_hadamard_image_of_phi() {
        // H⊗H⊗H∣φ⟩ is ∣φ′⟩; its two ASDs are the ∣φ⟩ and ∣φ′⟩ tuples and the
        // λ₀ tie-break must pick the latter (the ϱ = √2 branch).
        let hhh = LocalUnitaryTriple::uniform(&LocalUnitary::hadamard());
        let state = apply_local_unitaries(&phi_tuple().reconstruct(), &hhh);

        let (a, t) = compute_asd(&state, &tol()).unwrap();
        assert!(a.tuple_distance(&phi_prime_tuple()) < 1e-10);
        assert!(max_amp_dist(&apply_local_unitaries(&state, &t), &a.reconstruct()) < 1e-10);

        let (branches, _) = compute_asd_branches(&state, &tol());
        assert_eq!(branches.len(), 2);
        let mut dists: Vec<f64> = branches
            .iter()
            .map(|(b, _)| b.tuple_distance(&phi_tuple()).min(b.tuple_distance(&phi_prime_tuple())))
            .collect();
        dists.sort_by(f64::total_cmp);
        assert!(dists[1] < 1e-10);
    }

    #[test]
    fn branch_pair_is_the_transform_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..50 {
            let a = random_ghz_asd(&mut rng);
            let other = rho_iota_transform(&a, &tol()).unwrap();
            let (branches, _) = compute_asd_branches(&a.reconstruct(), &tol());
            assert_eq!(branches.len(), 2);
            for (b, _) in &branches {
                let d = b.tuple_distance(&a).min(b.tuple_distance(&other));
                assert!(d < 1e-8, "branch matches neither ASD, distance {d}");
            }
        }
    }

    #[test]
    fn witnesses_hold_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..50 {
            let mut amp = [C::new(0.0, 0.0); 8];
            for a in amp.iter_mut() {
                *a = C::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
            }
            let s = PureState::from_unnormalized(amp).unwrap();
            let (a, t) = compute_asd(&s, &tol()).unwrap();
            assert!(max_amp_dist(&apply_local_unitaries(&s, &t), &a.reconstruct()) < 1e-10);
        }
    }

    #[test]
    fn round_trip_preserves_invariant_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let a = random_ghz_asd(&mut rng);
            let inv_a = compute_invariants(&a, &tol()).unwrap();
            let (b, _) = compute_asd(&a.reconstruct(), &tol()).unwrap();
            let inv_b = compute_invariants(&b, &tol()).unwrap();
            assert!((inv_a.j1 - inv_b.j1).abs() < 1e-9);
            assert!((inv_a.j4 - inv_b.j4).abs() < 1e-9);
            // compute_asd lands on the ϱ ≥ 1 branch, the input may be either.
            let rho = if inv_a.rho >= 1.0 { inv_a.rho } else { 1.0 / inv_a.rho };
            assert!((rho - inv_b.rho).abs() < 1e-9);
        }
    }

    #[test]
    fn w_state_is_not_ghz_class() {
        let w = 1.0 / 3f64.sqrt();
        let mut amp = [C::new(0.0, 0.0); 8];
        amp[1] = C::new(w, 0.0);
        amp[2] = C::new(w, 0.0);
        amp[4] = C::new(w, 0.0);
        let state = PureState::new(amp, &tol()).unwrap();
        let (a, _) = compute_asd(&state, &tol()).unwrap();
        assert!(!a.is_ghz_class(&tol()));
        // Same verdict from the tangle, which never sees the decomposition.
        assert!(three_tangle(&state) < tol().tangle);
    }

    #[test]
    fn product_state_decomposes() {
        let mut amp = [C::new(0.0, 0.0); 8];
        amp[0] = C::new(1.0, 0.0);
        let (a, _) = compute_asd(&PureState::new(amp, &tol()).unwrap(), &tol()).unwrap();
        assert!((a.lambda[0] - 1.0).abs() < 1e-12);
        assert!(!a.is_ghz_class(&tol()));
    }

    #[test]
    fn conjugation_flips_the_phase() {
        // ϱ ≈ 1.509 > 1 here, so compute_asd returns the input branch and the
        // recovered phase of the conjugate is 2π − π/2.
        let s = asd([0.8, 0.3, 0.3, 0.3, 0.3], std::f64::consts::FRAC_PI_2);
        let conj_state = s.reconstruct().conjugate();
        let (a, _) = compute_asd(&conj_state, &tol()).unwrap();
        assert!((a.phi() - 1.5 * std::f64::consts::PI).abs() < 1e-10);
        assert!(a.tuple_distance(&s.conjugate(&tol())) < 1e-10);
    }

    #[test]
    fn asd_of_haar_moved_state_preserves_ln_rho() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..25 {
            let a = random_ghz_asd(&mut rng);
            let reference = compute_invariants(&a, &tol()).unwrap().ln_rho_abs;
            let t = haar_random_triple::<f64, _>(&mut rng);
            let moved = apply_local_unitaries(&a.reconstruct(), &t);
            let (b, _) = compute_asd(&moved, &tol()).unwrap();
            let recovered = compute_invariants(&b, &tol()).unwrap().ln_rho_abs;
            assert!((reference - recovered).abs() < 1e-8);
        }
    }
}
