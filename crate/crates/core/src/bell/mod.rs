//! Relativistic spin measurements and the CHSH inequality.
//!
//! Spin along a direction `a⃗` is measured with the normalised
//! Pauli–Lubanski observable `â(p) = a⃗_p·σ⃗`, where `a⃗_p` is the detector
//! direction as seen from the particle rest frame. A measurement setup holds
//! rest-frame directions; a [`FrameDescriptor`] decides how they are turned
//! into operators for an observer moving along `+x̂` relative to the source
//! (rapidity `ξ`), with the particles moving along `±ẑ` (rapidity `η`).
//!
//! The state passed to [`correlation`] and [`chsh`] must be the state as seen
//! in that frame, i.e. [`FrameDescriptor::observe`] applied to the source
//! state.

mod maximize;

pub use maximize::{chsh_maximize, MaximizeOptions};

use nalgebra::{Matrix2, Matrix4, Vector3, Vector4};

use crate::qubits::{Operator, PureState};
use crate::relativity::{
    boost, sigma_dot, standard_boost, wigner_angle, wigner_rotation, Branch, FourVector,
    LorentzTransform, Rapidity,
};
use crate::states::boost_total;
use crate::{Complex, Error, Real, Result};

/// Unit spatial direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction<T: Real>(Vector3<T>);

impl<T: Real> Direction<T> {
    /// Accepts `v` only if it has unit norm.
    pub fn new(v: Vector3<T>) -> Result<Self> {
        let n = v.norm();
        let tol = T::lit(1e-12).max(T::default_epsilon() * T::lit(8.0));
        if (n - T::one()).abs() > tol {
            return Err(Error::InvalidDirection(n.to_f64()));
        }
        Ok(Direction(v))
    }

    /// Normalises any vector with nonvanishing length.
    pub fn normalized(v: Vector3<T>) -> Result<Self> {
        let n = v.norm();
        if !(n > T::lit(1e-12)) {
            return Err(Error::SingularDirection(n.to_f64()));
        }
        Ok(Direction(v / n))
    }

    /// `(sin θ cos φ, sin θ sin φ, cos θ)`.
    pub fn from_angles(polar: T, azimuth: T) -> Self {
        Direction(Vector3::new(
            polar.sin() * azimuth.cos(),
            polar.sin() * azimuth.sin(),
            polar.cos(),
        ))
    }

    /// Polar angle in `[0, π]` and azimuth in `(−π, π]`.
    pub fn angles(&self) -> (T, T) {
        let v = self.0;
        (v.z.max(-T::one()).min(T::one()).acos(), v.y.atan2(v.x))
    }

    /// In-plane direction `(cos φ, sin φ, 0)`.
    pub fn planar(azimuth: T) -> Self {
        Direction(Vector3::new(azimuth.cos(), azimuth.sin(), T::zero()))
    }

    pub fn x() -> Self {
        Direction(Vector3::x())
    }

    pub fn y() -> Self {
        Direction(Vector3::y())
    }

    pub fn z() -> Self {
        Direction(Vector3::z())
    }

    #[inline]
    pub fn vector(&self) -> &Vector3<T> {
        &self.0
    }

    /// `(0, a⃗)`.
    pub fn lift(&self) -> FourVector<T> {
        FourVector::spacelike(self.0)
    }
}

/// The four CHSH directions `(a, α′, b, β′)`; `a`, `α′` for Alice and `b`,
/// `β′` for Bob.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSetup<T: Real> {
    pub a: Direction<T>,
    pub a_prime: Direction<T>,
    pub b: Direction<T>,
    pub b_prime: Direction<T>,
}

impl<T: Real> MeasurementSetup<T> {
    /// `a = x̂`, `α′ = ŷ`, `b = (x̂+ŷ)/√2`, `β′ = (−x̂+ŷ)/√2`: maximal
    /// violation for the singlet.
    pub fn planar_optimal() -> Self {
        let q = T::FRAC_PI_4();
        MeasurementSetup {
            a: Direction::x(),
            a_prime: Direction::y(),
            b: Direction::planar(q),
            b_prime: Direction::planar(T::lit(3.0) * q),
        }
    }

    /// Builds the setup from `(polar, azimuth)` pairs in the order
    /// `a, α′, b, β′`.
    pub fn from_angles(angles: &[T; 8]) -> Self {
        let d = |i: usize| Direction::from_angles(angles[2 * i], angles[2 * i + 1]);
        MeasurementSetup {
            a: d(0),
            a_prime: d(1),
            b: d(2),
            b_prime: d(3),
        }
    }

    pub fn angles(&self) -> [T; 8] {
        let mut out = [T::zero(); 8];
        for (i, d) in [self.a, self.a_prime, self.b, self.b_prime]
            .iter()
            .enumerate()
        {
            let (p, a) = d.angles();
            out[2 * i] = p;
            out[2 * i + 1] = a;
        }
        out
    }
}

/// How rest-frame measurement directions are used by a moving observer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DirectionConvention {
    /// Directions are carried into the frame as `a″ = Λ L(p) (0, a⃗)`.
    #[default]
    Transformed,
    /// The observer reuses `(0, a⃗)` with the same components.
    Verbatim,
}

/// Kinematics of the source and the observing frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameDescriptor<T: Real> {
    /// Particle rapidity along `±ẑ` in the source frame.
    pub eta: Rapidity<T>,
    /// Observer rapidity: the frame is related to the source by a boost
    /// along `−x̂`. Zero is the source frame.
    pub xi: Rapidity<T>,
    pub mass: T,
    pub directions: DirectionConvention,
}

impl<T: Real> FrameDescriptor<T> {
    pub fn new(eta: T, xi: T) -> Result<Self> {
        Ok(FrameDescriptor {
            eta: Rapidity::new(eta)?,
            xi: Rapidity::new(xi)?,
            mass: T::one(),
            directions: DirectionConvention::Transformed,
        })
    }

    /// Source frame with particles at rest.
    pub fn rest() -> Self {
        FrameDescriptor {
            eta: Rapidity::zero(),
            xi: Rapidity::zero(),
            mass: T::one(),
            directions: DirectionConvention::Transformed,
        }
    }

    pub fn with_directions(mut self, directions: DirectionConvention) -> Self {
        self.directions = directions;
        self
    }

    pub fn delta(&self) -> T {
        wigner_angle(self.eta, self.xi)
    }

    /// `Λ`: boost along `−x̂` with rapidity `ξ`.
    pub fn lambda(&self) -> LorentzTransform<T> {
        boost(self.xi, &-Vector3::x()).expect("unit axis")
    }

    /// Source-frame momentum of a branch.
    pub fn source_momentum(&self, branch: Branch) -> FourVector<T> {
        FourVector::momentum(self.mass, self.eta, &(Vector3::z() * branch.sign::<T>()))
            .expect("unit axis")
    }

    /// Momentum of a branch as seen by the observer, `Λp±`.
    pub fn observed_momentum(&self, branch: Branch) -> FourVector<T> {
        self.lambda().apply(&self.source_momentum(branch))
    }

    /// Momenta indexed by the momentum-qubit value (`0 ↦ p₋`, `1 ↦ p₊`).
    pub fn branch_momenta(&self) -> [FourVector<T>; 2] {
        [
            self.observed_momentum(Branch::Minus),
            self.observed_momentum(Branch::Plus),
        ]
    }

    /// The source state as seen in this frame.
    pub fn observe(&self, state: &PureState<T>) -> Result<PureState<T>> {
        boost_total(state, self.delta())
    }

    /// Per momentum-qubit value, the map taking `(0, a⃗)` to a four-vector whose
    /// normalised spatial part is the rest-frame spin direction.
    fn branch_maps(&self) -> Result<[Matrix4<T>; 2]> {
        let lambda = self.lambda();
        let map = |branch: Branch| -> Result<Matrix4<T>> {
            let p = self.source_momentum(branch);
            let m = match self.directions {
                DirectionConvention::Transformed => wigner_rotation(&lambda, &p)?,
                DirectionConvention::Verbatim => standard_boost(&lambda.apply(&p))?.inverse(),
            };
            Ok(*m.matrix())
        };
        Ok([map(Branch::Minus)?, map(Branch::Plus)?])
    }
}

fn normalized_spatial<T: Real>(v: &Vector4<T>) -> Result<Vector3<T>> {
    let s = Vector3::new(v[1], v[2], v[3]);
    let n = s.norm();
    if !(n > T::lit(1e-12)) {
        return Err(Error::SingularObservable(n.to_f64()));
    }
    Ok(s / n)
}

/// `â = a⃗·σ⃗` for a particle at rest.
pub fn rest_spin_observable<T: Real>(a: &Direction<T>) -> Matrix2<Complex<T>> {
    sigma_dot(a.vector())
}

/// Rest-frame spin direction for detector direction `a⃗` and particle momentum
/// `p`, from the velocity decomposition
/// `a⃗_p = (√(1−β²) a⃗⊥ + a⃗∥) / √(1 + β²(a∥² − 1))`.
pub fn pauli_lubanski_direction<T: Real>(
    a: &Direction<T>,
    p: &FourVector<T>,
) -> Result<Direction<T>> {
    let m = p.invariant_mass()?;
    let pv = p.spatial();
    let pn = pv.norm();
    if pn == T::zero() {
        return Ok(*a);
    }
    let beta = pn / p.t();
    let along = pv / pn;
    let a_par = along * a.vector().dot(&along);
    let a_perp = a.vector() - a_par;
    // √(1−β²) = m/p⁰ without cancellation
    let num = a_perp * (m / p.t()) + a_par;
    let den2 = T::one() + beta * beta * (a_par.norm_squared() - T::one());
    if !(den2 > T::lit(1e-24)) {
        return Err(Error::SingularObservable(
            den2.max(T::zero()).sqrt().to_f64(),
        ));
    }
    Ok(Direction(num / den2.sqrt()))
}

/// Rest-frame spin direction from the pull-back form: the normalised spatial
/// part of `L⁻¹(p) a`, for an arbitrary direction four-vector `a`.
pub fn rest_frame_direction<T: Real>(a: &FourVector<T>, p: &FourVector<T>) -> Result<Direction<T>> {
    let back = standard_boost(p)?.inverse().apply(a);
    Ok(Direction(normalized_spatial(back.components())?))
}

/// `â(p) = a⃗_p·σ⃗`.
pub fn pauli_lubanski_observable<T: Real>(
    a: &Direction<T>,
    p: &FourVector<T>,
) -> Result<Matrix2<Complex<T>>> {
    Ok(sigma_dot(pauli_lubanski_direction(a, p)?.vector()))
}

/// `a″ = Λ a`.
pub fn transform_direction<T: Real>(
    lambda: &LorentzTransform<T>,
    a: &FourVector<T>,
) -> FourVector<T> {
    lambda.apply(a)
}

/// `a⃗″ / |a⃗″|`.
pub fn normalize_spatial<T: Real>(a: &FourVector<T>) -> Result<Direction<T>> {
    Direction::normalized(a.spatial())
}

/// Which particle an observable belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Qubits `(momA, spinA) = (0, 2)`.
    Alice,
    /// Qubits `(momB, spinB) = (1, 3)`.
    Bob,
}

/// Observable on one particle's (momentum ⊗ spin) qubit pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SideObservable<T: Real> {
    pub side: Side,
    pub matrix: Matrix4<Complex<T>>,
}

fn block_diagonal<T: Real>(blocks: &[Matrix2<Complex<T>>; 2]) -> Matrix4<Complex<T>> {
    let mut m = Matrix4::zeros();
    for (k, b) in blocks.iter().enumerate() {
        m.fixed_view_mut::<2, 2>(2 * k, 2 * k).copy_from(b);
    }
    m
}

/// `Σ_m |m⟩⟨m| ⊗ â(p_m)` with `branch_momenta[m]` the momentum of qubit value
/// `m`.
pub fn joint_observable<T: Real>(
    a: &Direction<T>,
    branch_momenta: &[FourVector<T>; 2],
    side: Side,
) -> Result<SideObservable<T>> {
    let blocks = [
        pauli_lubanski_observable(a, &branch_momenta[0])?,
        pauli_lubanski_observable(a, &branch_momenta[1])?,
    ];
    Ok(SideObservable {
        side,
        matrix: block_diagonal(&blocks),
    })
}

/// Same as [`joint_observable`] but from explicit per-branch spin directions.
pub fn joint_observable_from_directions<T: Real>(
    directions: &[Direction<T>; 2],
    side: Side,
) -> SideObservable<T> {
    SideObservable {
        side,
        matrix: block_diagonal(&[
            sigma_dot(directions[0].vector()),
            sigma_dot(directions[1].vector()),
        ]),
    }
}

impl<T: Real> SideObservable<T> {
    /// Lifts the operator to the four-qubit register.
    pub fn embed(&self) -> Operator<T> {
        let id = Matrix4::<Complex<T>>::identity();
        match self.side {
            Side::Alice => two_party_operator(&self.matrix, &id),
            Side::Bob => two_party_operator(&id, &self.matrix),
        }
    }
}

/// `A ⊗ B` with `A` on qubits `(0, 2)` and `B` on `(1, 3)`, each local
/// operator indexed as `2·mom + spin`.
pub fn two_party_operator<T: Real>(
    alice: &Matrix4<Complex<T>>,
    bob: &Matrix4<Complex<T>>,
) -> Operator<T> {
    let local = |i: usize| {
        let (m0, m1, s0, s1) = ((i >> 3) & 1, (i >> 2) & 1, (i >> 1) & 1, i & 1);
        (2 * m0 + s0, 2 * m1 + s1)
    };
    Operator::from_fn(16, 16, |i, j| {
        let ((ai, bi), (aj, bj)) = (local(i), local(j));
        alice[(ai, aj)] * bob[(bi, bj)]
    })
}

/// Rest-frame spin directions of `a` on each momentum branch.
fn branch_directions<T: Real>(maps: &[Matrix4<T>; 2], a: &Direction<T>) -> Result<[Vector3<T>; 2]> {
    let lifted = Vector4::new(T::zero(), a.0.x, a.0.y, a.0.z);
    Ok([
        normalized_spatial(&(maps[0] * lifted))?,
        normalized_spatial(&(maps[1] * lifted))?,
    ])
}

/// Precomputed frame data for repeated correlation evaluations on one state.
pub(crate) struct Evaluator<T: Real> {
    maps: [Matrix4<T>; 2],
    /// Spin amplitudes for each momentum pair `(mA, mB)`.
    spins: [[[Complex<T>; 4]; 2]; 2],
}

impl<T: Real> Evaluator<T> {
    pub(crate) fn new(state: &PureState<T>, frame: &FrameDescriptor<T>) -> Result<Self> {
        if state.qubit_count() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 16,
                actual: state.dim(),
            });
        }
        let mut spins = [[[Complex::new(T::zero(), T::zero()); 4]; 2]; 2];
        for ma in 0..2 {
            for mb in 0..2 {
                for s in 0..4 {
                    spins[ma][mb][s] = state.amplitude(8 * ma + 4 * mb + s);
                }
            }
        }
        Ok(Evaluator {
            maps: frame.branch_maps()?,
            spins,
        })
    }

    pub(crate) fn correlation(&self, a: &Direction<T>, b: &Direction<T>) -> Result<T> {
        let na = branch_directions(&self.maps, a)?;
        let nb = branch_directions(&self.maps, b)?;
        let mut total = T::zero();
        for ma in 0..2 {
            let sa = sigma_dot(&na[ma]);
            for mb in 0..2 {
                let sb = sigma_dot(&nb[mb]);
                let psi = &self.spins[ma][mb];
                let mut acc = Complex::new(T::zero(), T::zero());
                for i in 0..4 {
                    if psi[i].norm_sqr() == T::zero() {
                        continue;
                    }
                    for j in 0..4 {
                        let op = sa[(i >> 1, j >> 1)] * sb[(i & 1, j & 1)];
                        acc += psi[i].conj() * op * psi[j];
                    }
                }
                total += acc.re;
            }
        }
        Ok(total)
    }

    pub(crate) fn chsh(&self, setup: &MeasurementSetup<T>) -> Result<T> {
        let e_ab = self.correlation(&setup.a, &setup.b)?;
        let e_abp = self.correlation(&setup.a, &setup.b_prime)?;
        let e_apbp = self.correlation(&setup.a_prime, &setup.b_prime)?;
        let e_apb = self.correlation(&setup.a_prime, &setup.b)?;
        Ok((e_ab - e_abp).abs() + (e_apbp + e_apb).abs())
    }
}

/// `E(a, b) = ⟨ψ| â ⊗ b̂ |ψ⟩` in the given frame.
pub fn correlation<T: Real>(
    state: &PureState<T>,
    a: &Direction<T>,
    b: &Direction<T>,
    frame: &FrameDescriptor<T>,
) -> Result<T> {
    Evaluator::new(state, frame)?.correlation(a, b)
}

/// The four correlations of a CHSH setup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshReport<T: Real> {
    pub e_ab: T,
    pub e_ab_prime: T,
    pub e_a_prime_b_prime: T,
    pub e_a_prime_b: T,
    pub value: T,
}

pub fn chsh_report<T: Real>(
    state: &PureState<T>,
    setup: &MeasurementSetup<T>,
    frame: &FrameDescriptor<T>,
) -> Result<ChshReport<T>> {
    let ev = Evaluator::new(state, frame)?;
    let e_ab = ev.correlation(&setup.a, &setup.b)?;
    let e_ab_prime = ev.correlation(&setup.a, &setup.b_prime)?;
    let e_a_prime_b_prime = ev.correlation(&setup.a_prime, &setup.b_prime)?;
    let e_a_prime_b = ev.correlation(&setup.a_prime, &setup.b)?;
    Ok(ChshReport {
        e_ab,
        e_ab_prime,
        e_a_prime_b_prime,
        e_a_prime_b,
        value: (e_ab - e_ab_prime).abs() + (e_a_prime_b_prime + e_a_prime_b).abs(),
    })
}

/// `S = |E(a,b) − E(a,β′)| + |E(α′,β′) + E(α′,b)|`.
pub fn chsh<T: Real>(
    state: &PureState<T>,
    setup: &MeasurementSetup<T>,
    frame: &FrameDescriptor<T>,
) -> Result<T> {
    Evaluator::new(state, frame)?.chsh(setup)
}

#[cfg(test)]
mod tests;
