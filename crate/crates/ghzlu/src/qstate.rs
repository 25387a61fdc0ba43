//! Three-qubit pure states, local unitaries and their action.
//!
//! Amplitudes are stored in binary-counting order ∣000⟩, ∣001⟩, …, ∣111⟩ with
//! qubit A most significant, so qubit A, B, C live on strides 4, 2, 1. The
//! three-tangle (four times the absolute Cayley hyperdeterminant) doubles as
//! an independent GHZ-class detector: it is nonzero exactly on the GHZ SLOCC
//! class.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{real, to_f64, Error, Result, Scalar, Tolerances};

/// A normalized three-qubit state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState<T> {
    pub(crate) amp: [Complex<T>; 8],
}

impl<T: Scalar> PureState<T> {
    /// Wraps amplitudes after checking Σ∣ampᵢ∣² = 1 against `tol.norm`.
    pub fn new(amp: [Complex<T>; 8], tol: &Tolerances<T>) -> Result<Self> {
        let norm_sqr = amp.iter().map(|a| a.norm_sqr()).fold(T::zero(), |s, x| s + x);
        let deviation = (norm_sqr - T::one()).abs();
        if deviation > tol.norm {
            return Err(Error::NotNormalized {
                deviation: to_f64(deviation),
            });
        }
        Ok(PureState { amp })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn from_unnormalized(amp: [Complex<T>; 8]) -> Result<Self> {
        let norm_sqr = amp.iter().map(|a| a.norm_sqr()).fold(T::zero(), |s, x| s + x);
        let norm = norm_sqr.sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        let mut amp = amp;
        for a in amp.iter_mut() {
            *a = a.unscale(norm);
        }
        Ok(PureState { amp })
    }

    /// (∣000⟩ + ∣111⟩)/√2.
    pub fn ghz() -> Self {
        let mut amp = [Complex::new(T::zero(), T::zero()); 8];
        let r = real::<T>(std::f64::consts::FRAC_1_SQRT_2);
        amp[0] = Complex::new(r, T::zero());
        amp[7] = Complex::new(r, T::zero());
        PureState { amp }
    }

    pub fn amplitudes(&self) -> &[Complex<T>; 8] {
        &self.amp
    }

    /// Entrywise complex conjugation (an exact involution).
    pub fn conjugate(&self) -> Self {
        let mut amp = self.amp;
        for a in amp.iter_mut() {
            *a = a.conj();
        }
        PureState { amp }
    }
}

/// ⟨a∣b⟩.
pub fn overlap<T: Scalar>(a: &PureState<T>, b: &PureState<T>) -> Complex<T> {
    let mut acc = Complex::new(T::zero(), T::zero());
    for i in 0..8 {
        acc += a.amp[i].conj() * b.amp[i];
    }
    acc
}

/// A 2×2 unitary acting on a single qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalUnitary<T> {
    pub(crate) u: [[Complex<T>; 2]; 2],
}

impl<T: Scalar> LocalUnitary<T> {
    /// Wraps a matrix after checking u†u = 1 entrywise against `tol.unitary`.
    pub fn new(u: [[Complex<T>; 2]; 2], tol: &Tolerances<T>) -> Result<Self> {
        let mut deviation = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut g = Complex::new(T::zero(), T::zero());
                for k in 0..2 {
                    g += u[k][i].conj() * u[k][j];
                }
                let target = if i == j { T::one() } else { T::zero() };
                let d = (g - Complex::new(target, T::zero())).norm();
                if d > deviation {
                    deviation = d;
                }
            }
        }
        if deviation > tol.unitary {
            return Err(Error::NonUnitary {
                deviation: to_f64(deviation),
            });
        }
        Ok(LocalUnitary { u })
    }

    pub fn identity() -> Self {
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        LocalUnitary {
            u: [[one, zero], [zero, one]],
        }
    }

    pub fn hadamard() -> Self {
        let r = Complex::new(real::<T>(std::f64::consts::FRAC_1_SQRT_2), T::zero());
        LocalUnitary {
            u: [[r, r], [r, -r]],
        }
    }

    /// diag(e^{iα}, e^{iβ}).
    pub fn phase_diag(alpha: T, beta: T) -> Self {
        let zero = Complex::new(T::zero(), T::zero());
        LocalUnitary {
            u: [[Complex::cis(alpha), zero], [zero, Complex::cis(beta)]],
        }
    }

    pub fn matrix(&self) -> &[[Complex<T>; 2]; 2] {
        &self.u
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let u = &self.u;
        LocalUnitary {
            u: [
                [u[0][0].conj(), u[1][0].conj()],
                [u[0][1].conj(), u[1][1].conj()],
            ],
        }
    }

    /// Matrix product `self · rhs` (so `self` acts second).
    pub fn compose(&self, rhs: &Self) -> Self {
        let a = &self.u;
        let b = &rhs.u;
        let mut u = [[Complex::new(T::zero(), T::zero()); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                u[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        LocalUnitary { u }
    }

    /// Entrywise complex conjugate (not the adjoint).
    pub fn conjugate(&self) -> Self {
        let u = &self.u;
        LocalUnitary {
            u: [
                [u[0][0].conj(), u[0][1].conj()],
                [u[1][0].conj(), u[1][1].conj()],
            ],
        }
    }
}

/// One unitary per qubit; the operator a ⊗ b ⊗ c.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalUnitaryTriple<T> {
    pub a: LocalUnitary<T>,
    pub b: LocalUnitary<T>,
    pub c: LocalUnitary<T>,
}

impl<T: Scalar> LocalUnitaryTriple<T> {
    pub fn new(a: LocalUnitary<T>, b: LocalUnitary<T>, c: LocalUnitary<T>) -> Self {
        LocalUnitaryTriple { a, b, c }
    }

    pub fn identity() -> Self {
        LocalUnitaryTriple {
            a: LocalUnitary::identity(),
            b: LocalUnitary::identity(),
            c: LocalUnitary::identity(),
        }
    }

    /// The same unitary on all three qubits, e.g. H ⊗ H ⊗ H.
    pub fn uniform(u: &LocalUnitary<T>) -> Self {
        LocalUnitaryTriple {
            a: u.clone(),
            b: u.clone(),
            c: u.clone(),
        }
    }

    /// Factorwise product (self.a · rhs.a, …); `self` acts second.
    pub fn compose(&self, rhs: &Self) -> Self {
        LocalUnitaryTriple {
            a: self.a.compose(&rhs.a),
            b: self.b.compose(&rhs.b),
            c: self.c.compose(&rhs.c),
        }
    }

    pub fn dagger(&self) -> Self {
        LocalUnitaryTriple {
            a: self.a.dagger(),
            b: self.b.dagger(),
            c: self.c.dagger(),
        }
    }
}

fn apply_on_stride<T: Scalar>(amp: &mut [Complex<T>; 8], u: &[[Complex<T>; 2]; 2], stride: usize) {
    for base in 0..8 {
        if base & stride == 0 {
            let x0 = amp[base];
            let x1 = amp[base + stride];
            amp[base] = u[0][0] * x0 + u[0][1] * x1;
            amp[base + stride] = u[1][0] * x0 + u[1][1] * x1;
        }
    }
}

/// (a ⊗ b ⊗ c)·state. Unitarity of the factors guarantees the output norm.
pub fn apply_local_unitaries<T: Scalar>(
    state: &PureState<T>,
    t: &LocalUnitaryTriple<T>,
) -> PureState<T> {
    let mut amp = state.amp;
    apply_on_stride(&mut amp, &t.a.u, 4);
    apply_on_stride(&mut amp, &t.b.u, 2);
    apply_on_stride(&mut amp, &t.c.u, 1);
    PureState { amp }
}

/// Three-tangle τ = 4·∣Det(ψ)∣ with Det the 2×2×2 Cayley hyperdeterminant.
///
/// τ is invariant under local unitaries and vanishes exactly off the GHZ
/// SLOCC class; on a canonical-form state it reduces to 4(λ₀λ₄)².
pub fn three_tangle<T: Scalar>(state: &PureState<T>) -> T {
    let p = &state.amp;
    let (a000, a001, a010, a011) = (p[0], p[1], p[2], p[3]);
    let (a100, a101, a110, a111) = (p[4], p[5], p[6], p[7]);

    let d1 = a000 * a000 * a111 * a111
        + a001 * a001 * a110 * a110
        + a010 * a010 * a101 * a101
        + a100 * a100 * a011 * a011;
    let d2 = a000 * a111 * a011 * a100
        + a000 * a111 * a101 * a010
        + a000 * a111 * a110 * a001
        + a011 * a100 * a101 * a010
        + a011 * a100 * a110 * a001
        + a101 * a010 * a110 * a001;
    let d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;

    let two = real::<T>(2.0);
    let four = real::<T>(4.0);
    let det = d1 - d2.scale(two) + d3.scale(four);
    four * det.norm()
}

fn standard_normal<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> T {
    // Drawn in f64 regardless of T so that a fixed seed produces the same
    // matrix (up to rounding) at every precision.
    let x: f64 = rng.sample(StandardNormal);
    real(x)
}

/// A Haar-distributed 2×2 unitary, deterministic for a fixed RNG state.
///
/// Gram–Schmidt on a complex Ginibre matrix; normalizing the columns makes
/// the R factor's diagonal positive, which is exactly the phase convention
/// under which QR sampling is Haar.
pub fn haar_random_local_unitary<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> LocalUnitary<T> {
    let floor = real::<T>(1e-6);
    loop {
        let mut z = [[Complex::new(T::zero(), T::zero()); 2]; 2];
        for row in z.iter_mut() {
            for entry in row.iter_mut() {
                *entry = Complex::new(standard_normal(rng), standard_normal(rng));
            }
        }
        let r00 = (z[0][0].norm_sqr() + z[1][0].norm_sqr()).sqrt();
        if r00 < floor {
            continue;
        }
        let q0 = [z[0][0].unscale(r00), z[1][0].unscale(r00)];
        let r01 = q0[0].conj() * z[0][1] + q0[1].conj() * z[1][1];
        let w = [z[0][1] - q0[0] * r01, z[1][1] - q0[1] * r01];
        let r11 = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
        if r11 < floor {
            continue;
        }
        let q1 = [w[0].unscale(r11), w[1].unscale(r11)];
        return LocalUnitary {
            u: [[q0[0], q1[0]], [q0[1], q1[1]]],
        };
    }
}

/// Three independent Haar unitaries.
pub fn haar_random_triple<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> LocalUnitaryTriple<T> {
    LocalUnitaryTriple {
        a: haar_random_local_unitary(rng),
        b: haar_random_local_unitary(rng),
        c: haar_random_local_unitary(rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    fn cz(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn state(amp: [C; 8]) -> PureState<f64> {
        PureState::new(amp, &Tolerances::default()).unwrap()
    }

    fn phi_state() -> PureState<f64> {
        let h = 0.5;
        let mut amp = [cz(0.0, 0.0); 8];
        amp[0] = cz(h, 0.0);
        amp[5] = cz(h, 0.0);
        amp[6] = cz(h, 0.0);
        amp[7] = cz(h, 0.0);
        state(amp)
    }

    fn phi_prime_state() -> PureState<f64> {
        let s = std::f64::consts::SQRT_2;
        let mut amp = [cz(0.0, 0.0); 8];
        amp[0] = cz(s / 2.0, 0.0);
        amp[4] = cz(-s / 4.0, 0.0);
        amp[5] = cz(s / 4.0, 0.0);
        amp[6] = cz(s / 4.0, 0.0);
        amp[7] = cz(s / 4.0, 0.0);
        state(amp)
    }

    fn max_amp_dist(a: &PureState<f64>, b: &PureState<f64>) -> f64 {
        (0..8)
            .map(|i| (a.amp[i] - b.amp[i]).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn rejects_unnormalized_input() {
        let mut amp = [cz(0.0, 0.0); 8];
        amp[0] = cz(0.9, 0.0);
        assert!(matches!(
            PureState::new(amp, &Tolerances::default()),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            PureState::<f64>::from_unnormalized([cz(0.0, 0.0); 8]),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn rejects_non_unitary_matrix() {
        let m = [[cz(1.0, 0.0), cz(0.0, 0.0)], [cz(0.0, 0.0), cz(0.5, 0.0)]];
        assert!(matches!(
            LocalUnitary::new(m, &Tolerances::default()),
            Err(Error::NonUnitary { .. })
        ));
    }

    #[test]
    fn identity_triple_is_a_no_op() {
        let ghz = PureState::<f64>::ghz();
        let out = apply_local_unitaries(&ghz, &LocalUnitaryTriple::identity());
        assert_eq!(out.amp, ghz.amp);
    }

    #[test]
    fn hadamard_cubed_maps_phi_to_phi_prime() {
        let hhh = LocalUnitaryTriple::uniform(&LocalUnitary::hadamard());
        let out = apply_local_unitaries(&phi_state(), &hhh);
        assert!(max_amp_dist(&out, &phi_prime_state()) < 1e-12);
        // H is an involution, so the map goes both ways.
        let back = apply_local_unitaries(&phi_prime_state(), &hhh);
        assert!(max_amp_dist(&back, &phi_state()) < 1e-12);
    }

    #[test]
    fn haar_triples_preserve_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let mut amp = [cz(0.0, 0.0); 8];
            for a in amp.iter_mut() {
                *a = cz(standard_normal(&mut rng), standard_normal(&mut rng));
            }
            let s = PureState::from_unnormalized(amp).unwrap();
            let t = haar_random_triple::<f64, _>(&mut rng);
            let out = apply_local_unitaries(&s, &t);
            let n: f64 = out.amp.iter().map(|a| a.norm_sqr()).sum();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn overlap_matches_independent_kronecker_product() {
        // ⟨φ∣φ′⟩ recomputed as ⟨φ∣(H⊗H⊗H)∣φ⟩ with an explicitly assembled
        // 8×8 matrix, and against the hand value 5√2/8.
        let h = LocalUnitary::<f64>::hadamard();
        let mut big = [[cz(0.0, 0.0); 8]; 8];
        for (i, row) in big.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let (ia, ib, ic) = (i >> 2 & 1, i >> 1 & 1, i & 1);
                let (ja, jb, jc) = (j >> 2 & 1, j >> 1 & 1, j & 1);
                *entry = h.u[ia][ja] * h.u[ib][jb] * h.u[ic][jc];
            }
        }
        let phi = phi_state();
        let mut image = [cz(0.0, 0.0); 8];
        for (i, out) in image.iter_mut().enumerate() {
            for j in 0..8 {
                *out += big[i][j] * phi.amp[j];
            }
        }
        let oracle: C = (0..8).map(|i| phi.amp[i].conj() * image[i]).sum();

        let got = overlap(&phi, &phi_prime_state());
        assert!((got - oracle).norm() < 1e-14);
        let hand = 5.0 * std::f64::consts::SQRT_2 / 8.0;
        assert!((got - cz(hand, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn overlap_special_values() {
        let ghz = PureState::<f64>::ghz();
        assert!((overlap(&ghz, &ghz) - cz(1.0, 0.0)).norm() < 1e-15);

        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut amp = [cz(0.0, 0.0); 8];
        amp[0] = cz(r, 0.0);
        amp[7] = cz(-r, 0.0);
        let minus = state(amp);
        assert!(overlap(&ghz, &minus).norm() < 1e-15);
    }

    #[test]
    fn haar_sampling_is_deterministic_and_unitary() {
        let u1 = haar_random_local_unitary::<f64, _>(&mut ChaCha8Rng::seed_from_u64(42));
        let u2 = haar_random_local_unitary::<f64, _>(&mut ChaCha8Rng::seed_from_u64(42));
        assert_eq!(u1.u, u2.u);

        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let u = haar_random_local_unitary::<f64, _>(&mut rng);
            assert!(LocalUnitary::new(u.u, &tol).is_ok());
        }
    }

    #[test]
    fn haar_top_left_modulus_is_uniform() {
        // For Haar-distributed 2×2 unitaries, ∣u₀₀∣² ~ Uniform[0,1].
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 10_000;
        let mut acc = 0.0;
        for _ in 0..n {
            let u = haar_random_local_unitary::<f64, _>(&mut rng);
            acc += u.u[0][0].norm_sqr();
        }
        let mean = acc / n as f64;
        assert!((mean - 0.5).abs() < 0.02, "mean ∣u₀₀∣² = {mean}");
    }

    #[test]
    fn conjugation_is_an_involution_fixing_real_states() {
        let phi = phi_state();
        assert_eq!(phi.conjugate().amp, phi.amp);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut amp = [cz(0.0, 0.0); 8];
        for a in amp.iter_mut() {
            *a = cz(standard_normal(&mut rng), standard_normal(&mut rng));
        }
        let s = PureState::from_unnormalized(amp).unwrap();
        assert_eq!(s.conjugate().conjugate().amp, s.amp);
    }

    #[test]
    fn tangle_reference_values() {
        assert!((three_tangle(&PureState::<f64>::ghz()) - 1.0).abs() < 1e-14);

        let mut amp = [cz(0.0, 0.0); 8];
        amp[0] = cz(1.0, 0.0);
        assert_eq!(three_tangle(&state(amp)), 0.0);

        // W state: zero tangle although genuinely entangled.
        let w = 1.0 / 3f64.sqrt();
        let mut amp = [cz(0.0, 0.0); 8];
        amp[1] = cz(w, 0.0);
        amp[2] = cz(w, 0.0);
        amp[4] = cz(w, 0.0);
        assert!(three_tangle(&state(amp)) < 1e-15);
    }

    #[test]
    fn tangle_equals_4_j4_on_canonical_form_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..200 {
            let mut l = [0.0; 5];
            for x in l.iter_mut() {
                *x = rng.gen::<f64>();
            }
            let n = l.iter().map(|x| x * x).sum::<f64>().sqrt();
            for x in l.iter_mut() {
                *x /= n;
            }
            let phi = rng.gen::<f64>() * std::f64::consts::TAU;
            let mut amp = [cz(0.0, 0.0); 8];
            amp[0] = cz(l[0], 0.0);
            amp[4] = C::from_polar(l[1], phi);
            amp[5] = cz(l[2], 0.0);
            amp[6] = cz(l[3], 0.0);
            amp[7] = cz(l[4], 0.0);
            let s = state(amp);
            let j4 = (l[0] * l[4]).powi(2);
            assert!((three_tangle(&s) - 4.0 * j4).abs() < 1e-10);
        }
    }

    #[test]
    fn tangle_is_locally_unitary_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..1000 {
            let mut amp = [cz(0.0, 0.0); 8];
            for a in amp.iter_mut() {
                *a = cz(standard_normal(&mut rng), standard_normal(&mut rng));
            }
            let s = PureState::from_unnormalized(amp).unwrap();
            let t = haar_random_triple::<f64, _>(&mut rng);
            let moved = apply_local_unitaries(&s, &t);
            assert!((three_tangle(&s) - three_tangle(&moved)).abs() < 1e-10);
        }
    }

    #[test]
    fn compose_and_dagger_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let u = haar_random_local_unitary::<f64, _>(&mut rng);
        let v = haar_random_local_unitary::<f64, _>(&mut rng);
        let tol = Tolerances::default();
        assert!(LocalUnitary::new(u.compose(&v).u, &tol).is_ok());

        let id = u.dagger().compose(&u);
        let eye = LocalUnitary::<f64>::identity();
        for i in 0..2 {
            for j in 0..2 {
                assert!((id.u[i][j] - eye.u[i][j]).norm() < 1e-14);
            }
        }
    }
}
