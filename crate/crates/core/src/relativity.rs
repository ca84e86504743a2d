//! Four-vector kinematics, pure boosts and the Wigner little-group rotation.
//!
//! Natural units (ħ = c = 1), metric `g = diag(1, −1, −1, −1)`. Boosts are
//! active: `boost(ξ, n̂)` maps the rest momentum `(m, 0)` to
//! `(m cosh ξ, m sinh ξ n̂)`.
//!
//! Spin-½ representation of a rotation by `θ` about `n̂` is
//! `exp(−iθ n̂·σ/2)`. With the observer boost along `−x̂` and particle momenta
//! along `±ẑ`, the Wigner rotation of the `p₊` branch is a rotation by `−δ`
//! about `ŷ` and that of `p₋` by `+δ`, which is exactly [`wigner_su2`] with
//! [`Branch::Plus`] / [`Branch::Minus`]. [`Branch::y_rotation_angle`] holds
//! this sign map.

use std::ops::Mul;

use nalgebra::{ComplexField, Matrix2, Matrix3, Matrix4, Vector3, Vector4};

use crate::{Complex, Error, Real, Result};

/// Contravariant four-vector `(t, x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector<T: Real>(Vector4<T>);

impl<T: Real> FourVector<T> {
    pub fn new(t: T, x: T, y: T, z: T) -> Self {
        FourVector(Vector4::new(t, x, y, z))
    }

    pub fn from_parts(t: T, spatial: Vector3<T>) -> Self {
        Self::new(t, spatial.x, spatial.y, spatial.z)
    }

    /// Purely spatial four-vector `(0, v)`.
    pub fn spacelike(v: Vector3<T>) -> Self {
        Self::from_parts(T::zero(), v)
    }

    /// Rest momentum `k = (m, 0, 0, 0)`.
    pub fn rest(mass: T) -> Self {
        Self::new(mass, T::zero(), T::zero(), T::zero())
    }

    /// Momentum of a particle of mass `m` moving with rapidity `η` along the
    /// unit vector `axis`.
    pub fn momentum(mass: T, rapidity: Rapidity<T>, axis: &Vector3<T>) -> Result<Self> {
        let axis = unit_axis(axis)?;
        let eta = rapidity.value();
        Ok(Self::from_parts(
            mass * eta.cosh(),
            axis * (mass * eta.sinh()),
        ))
    }

    #[inline]
    pub fn t(&self) -> T {
        self.0[0]
    }

    #[inline]
    pub fn spatial(&self) -> Vector3<T> {
        Vector3::new(self.0[1], self.0[2], self.0[3])
    }

    #[inline]
    pub fn components(&self) -> &Vector4<T> {
        &self.0
    }

    /// `t² − |x|²`.
    pub fn minkowski_sqr(&self) -> T {
        self.t() * self.t() - self.spatial().norm_squared()
    }

    /// Invariant mass of a future-directed timelike vector.
    pub fn invariant_mass(&self) -> Result<T> {
        let m2 = self.minkowski_sqr();
        if self.t() <= T::zero() || m2 <= T::zero() {
            return Err(Error::InvalidMomentum(format!(
                "p⁰ = {}, p·p = {}",
                self.t().to_f64(),
                m2.to_f64()
            )));
        }
        Ok(m2.sqrt())
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self.0 - other.0).amax()
    }
}

/// Real 4×4 matrix preserving the Minkowski metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzTransform<T: Real>(Matrix4<T>);

fn metric<T: Real>() -> Matrix4<T> {
    Matrix4::from_diagonal(&Vector4::new(T::one(), -T::one(), -T::one(), -T::one()))
}

impl<T: Real> LorentzTransform<T> {
    pub fn identity() -> Self {
        LorentzTransform(Matrix4::identity())
    }

    /// Accepts `m` if `mᵀ g m = g` within the scalar tolerance.
    pub fn from_matrix(m: Matrix4<T>) -> Result<Self> {
        let lt = LorentzTransform(m);
        let defect = lt.metric_defect();
        if defect > T::tolerance() {
            return Err(Error::InvalidMomentum(format!(
                "matrix is not metric preserving (defect {})",
                defect.to_f64()
            )));
        }
        Ok(lt)
    }

    #[inline]
    pub fn matrix(&self) -> &Matrix4<T> {
        &self.0
    }

    pub fn apply(&self, v: &FourVector<T>) -> FourVector<T> {
        FourVector(self.0 * v.0)
    }

    /// `Λ⁻¹ = g Λᵀ g`.
    pub fn inverse(&self) -> Self {
        let g = metric::<T>();
        LorentzTransform(g * self.0.transpose() * g)
    }

    /// Largest entry of `|Λᵀ g Λ − g|`.
    pub fn metric_defect(&self) -> T {
        let g = metric::<T>();
        (self.0.transpose() * g * self.0 - g).amax()
    }

    pub fn spatial_block(&self) -> Matrix3<T> {
        self.0.fixed_view::<3, 3>(1, 1).into_owned()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self.0 - other.0).amax()
    }
}

impl<T: Real> Mul for LorentzTransform<T> {
    type Output = LorentzTransform<T>;

    fn mul(self, rhs: Self) -> Self {
        LorentzTransform(self.0 * rhs.0)
    }
}

/// Boost rapidity; the associated velocity is `tanh` of the value.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Rapidity<T: Real>(T);

impl<T: Real> Rapidity<T> {
    pub fn new(value: T) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidRapidity(value.to_f64()));
        }
        Ok(Rapidity(value))
    }

    pub fn zero() -> Self {
        Rapidity(T::zero())
    }

    pub fn from_velocity(beta: T) -> Result<Self> {
        if !(beta.abs() < T::one()) {
            return Err(Error::InvalidRapidity(beta.to_f64()));
        }
        let half = T::lit(0.5);
        Ok(Rapidity(
            half * ((T::one() + beta) / (T::one() - beta)).ln(),
        ))
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }

    #[inline]
    pub fn velocity(self) -> T {
        self.0.tanh()
    }
}

fn unit_axis<T: Real>(axis: &Vector3<T>) -> Result<Vector3<T>> {
    let n = axis.norm();
    if (n - T::one()).abs() > T::lit(1e-12).max(T::default_epsilon() * T::lit(8.0)) {
        return Err(Error::InvalidDirection(n.to_f64()));
    }
    Ok(*axis)
}

/// Pure boost with rapidity `ξ` along the unit vector `axis`.
pub fn boost<T: Real>(xi: Rapidity<T>, axis: &Vector3<T>) -> Result<LorentzTransform<T>> {
    let n = unit_axis(axis)?;
    let (gamma, gamma_beta) = (xi.value().cosh(), xi.value().sinh());
    let mut m = Matrix4::identity();
    m[(0, 0)] = gamma;
    for i in 0..3 {
        m[(0, i + 1)] = gamma_beta * n[i];
        m[(i + 1, 0)] = gamma_beta * n[i];
        for j in 0..3 {
            m[(i + 1, j + 1)] += (gamma - T::one()) * n[i] * n[j];
        }
    }
    Ok(LorentzTransform(m))
}

/// The pure boost `L(p)` with `L(p) k = p` for `k = (m, 0, 0, 0)`.
pub fn standard_boost<T: Real>(p: &FourVector<T>) -> Result<LorentzTransform<T>> {
    let m = p.invariant_mass()?;
    let v = p.spatial();
    let pn = v.norm();
    if pn == T::zero() {
        return Ok(LorentzTransform::identity());
    }
    // γ = p⁰/m and γβ = |p|/m, taken directly to avoid asinh round-off
    let (gamma, gamma_beta) = (p.t() / m, pn / m);
    let n = v / pn;
    let mut out = Matrix4::identity();
    out[(0, 0)] = gamma;
    for i in 0..3 {
        out[(0, i + 1)] = gamma_beta * n[i];
        out[(i + 1, 0)] = gamma_beta * n[i];
        for j in 0..3 {
            out[(i + 1, j + 1)] += (gamma - T::one()) * n[i] * n[j];
        }
    }
    Ok(LorentzTransform(out))
}

/// `W(Λ, p) = L⁻¹(Λp) Λ L(p)`.
///
/// The product is taken in SL(2, ℂ) and mapped back with [`vector_rep`]. Boost
/// spinors grow like `e^{η/2}` rather than `e^η`, so the cancellation down to
/// a rotation loses far fewer digits than the 4×4 product would at large
/// rapidity.
pub fn wigner_rotation<T: Real>(
    lambda: &LorentzTransform<T>,
    p: &FourVector<T>,
) -> Result<LorentzTransform<T>> {
    // Λp has the mass of p; recomputing it from Λp would cancel to O(γ²ε)
    let m = p.invariant_mass()?;
    let p_lambda = lambda.apply(p);
    if p_lambda.t() <= T::zero() {
        return Err(Error::InvalidMomentum(
            "Λ reverses the time direction".into(),
        ));
    }
    let b_p = boost_spinor(p, m);
    let b_back = sl2_inverse(&boost_spinor(&p_lambda, m));
    Ok(vector_rep(&(b_back * spinor(lambda) * b_p)))
}

fn pauli<T: Real>(mu: usize) -> Matrix2<Complex<T>> {
    let mut e = Vector3::zeros();
    if mu == 0 {
        return Matrix2::identity();
    }
    e[mu - 1] = T::one();
    sigma_dot(&e)
}

/// Spinor image of `L(p)`: `cosh(η/2) + sinh(η/2) n̂·σ⃗`.
pub fn spinor_standard_boost<T: Real>(p: &FourVector<T>) -> Result<Matrix2<Complex<T>>> {
    Ok(boost_spinor(p, p.invariant_mass()?))
}

fn boost_spinor<T: Real>(p: &FourVector<T>, m: T) -> Matrix2<Complex<T>> {
    let v = p.spatial();
    let pn = v.norm();
    if pn == T::zero() {
        return Matrix2::identity();
    }
    // cosh(η/2) = √((γ+1)/2), sinh(η/2) = sinh η / (2 cosh(η/2))
    let c = ((p.t() / m + T::one()) * T::lit(0.5)).sqrt();
    let s = pn / m / (T::lit(2.0) * c);
    let id = Matrix2::<Complex<T>>::identity();
    id * Complex::new(c, T::zero()) + sigma_dot(&(v / pn)) * Complex::new(s, T::zero())
}

/// Inverse of a unimodular 2×2 matrix.
fn sl2_inverse<T: Real>(a: &Matrix2<Complex<T>>) -> Matrix2<Complex<T>> {
    let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
    Matrix2::new(a[(1, 1)], -a[(0, 1)], -a[(1, 0)], a[(0, 0)]) / det
}

/// `Λ^μ_ν = ½ tr(σ_μ A σ_ν A†)` for `A ∈ SL(2, ℂ)`, i.e. `x·σ ↦ A (x·σ) A†`.
pub fn vector_rep<T: Real>(a: &Matrix2<Complex<T>>) -> LorentzTransform<T> {
    let ad = a.adjoint();
    let half = T::lit(0.5);
    let mut m = Matrix4::zeros();
    for nu in 0..4 {
        let x = a * pauli::<T>(nu) * ad;
        for mu in 0..4 {
            m[(mu, nu)] = (pauli::<T>(mu) * x).trace().re * half;
        }
    }
    LorentzTransform(m)
}

/// One of the two SL(2, ℂ) preimages of a proper orthochronous `Λ`.
pub fn spinor<T: Real>(lambda: &LorentzTransform<T>) -> Matrix2<Complex<T>> {
    // Σ Λ^μ_ν σ_μ σ_ν is proportional to A unless A has zero trace (a
    // rotation by π); then go through Λ R₀ with a quarter turn R₀.
    let raw = |l: &Matrix4<T>| -> Matrix2<Complex<T>> {
        let mut m = Matrix2::zeros();
        for mu in 0..4 {
            for nu in 0..4 {
                if l[(mu, nu)] != T::zero() {
                    m += pauli::<T>(mu) * pauli::<T>(nu) * Complex::new(l[(mu, nu)], T::zero());
                }
            }
        }
        m
    };
    let normalize = |m: Matrix2<Complex<T>>| {
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        (m / ComplexField::sqrt(det), det.norm_sqr().sqrt())
    };
    let scale = lambda.matrix().norm_squared();
    let (a, size) = normalize(raw(lambda.matrix()));
    if size > scale * T::lit(1e-3) {
        return a;
    }
    let axes = [Vector3::x(), Vector3::y(), Vector3::z()];
    let mut best = (a, size);
    for axis in axes {
        let r0 = su2_from_rotation(&axis, T::FRAC_PI_2());
        let (b, size) = normalize(raw(&(lambda.matrix() * vector_rep(&r0).matrix())));
        if size > best.1 {
            best = (b * r0.adjoint(), size);
        }
    }
    best.0
}

/// Wigner angle for a particle with rapidity `η` seen from an observer
/// boosted perpendicularly with rapidity `ξ`:
/// `tan δ = sinh η sinh ξ / (cosh η + cosh ξ)`.
pub fn wigner_angle<T: Real>(eta: Rapidity<T>, xi: Rapidity<T>) -> T {
    let (e, x) = (eta.value(), xi.value());
    // numerator and denominator divided by cosh η cosh ξ so that large
    // rapidities do not overflow
    let num = e.tanh() * x.tanh();
    let den = T::one() / e.cosh() + T::one() / x.cosh();
    num.atan2(den)
}

/// Momentum branch `p₊` (along `+ẑ`) or `p₋` (along `−ẑ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign<T: Real>(self) -> T {
        match self {
            Branch::Plus => T::one(),
            Branch::Minus => -T::one(),
        }
    }

    /// Angle of the branch's Wigner rotation about `+ŷ`.
    pub fn y_rotation_angle<T: Real>(self, delta: T) -> T {
        -self.sign::<T>() * delta
    }
}

/// `U±(δ) = [[cos δ/2, ±sin δ/2], [∓sin δ/2, cos δ/2]]` on the `(↑, ↓)` basis.
pub fn wigner_su2<T: Real>(delta: T, branch: Branch) -> Matrix2<Complex<T>> {
    let half = delta * T::lit(0.5);
    let (c, s) = (half.cos(), branch.sign::<T>() * half.sin());
    let r = |x: T| Complex::new(x, T::zero());
    Matrix2::new(r(c), r(s), r(-s), r(c))
}

/// `n̂·σ⃗` for a real 3-vector.
pub fn sigma_dot<T: Real>(n: &Vector3<T>) -> Matrix2<Complex<T>> {
    let z = T::zero();
    Matrix2::new(
        Complex::new(n.z, z),
        Complex::new(n.x, -n.y),
        Complex::new(n.x, n.y),
        Complex::new(-n.z, z),
    )
}

/// `exp(−iθ n̂·σ/2)` for a unit axis.
pub fn su2_from_rotation<T: Real>(axis: &Vector3<T>, angle: T) -> Matrix2<Complex<T>> {
    let half = angle * T::lit(0.5);
    let id = Matrix2::<Complex<T>>::identity();
    id * Complex::new(half.cos(), T::zero()) - sigma_dot(axis) * Complex::new(T::zero(), half.sin())
}

/// Angle of a rotation about the y axis, read from the (z, x) entries.
pub fn y_rotation_angle<T: Real>(r: &Matrix3<T>) -> T {
    r[(0, 2)].atan2(r[(0, 0)])
}

/// Axis and angle (in `[0, π]`) of a proper rotation matrix.
pub fn axis_angle<T: Real>(r: &Matrix3<T>) -> (Vector3<T>, T) {
    let two = T::lit(2.0);
    // antisymmetric part: 2 sin θ n̂
    let v = Vector3::new(
        r[(2, 1)] - r[(1, 2)],
        r[(0, 2)] - r[(2, 0)],
        r[(1, 0)] - r[(0, 1)],
    );
    let cos = (r.trace() - T::one()) / two;
    let sin2 = v.norm();
    let angle = sin2.atan2(cos * two);
    if sin2 > T::lit(1e-6) {
        return (v / sin2, angle);
    }
    if cos > T::zero() {
        // near identity; axis is irrelevant when the angle vanishes
        let axis = if sin2 > T::zero() {
            v / sin2
        } else {
            Vector3::z()
        };
        return (axis, angle);
    }
    // near π: (R + I)/2 ≈ n̂ n̂ᵀ
    let s = (r + Matrix3::identity()) / two;
    let k = (0..3)
        .max_by(|&a, &b| s[(a, a)].partial_cmp(&s[(b, b)]).unwrap())
        .unwrap_or(0);
    let nk = s[(k, k)].max(T::zero()).sqrt();
    let mut axis = Vector3::new(s[(0, k)], s[(1, k)], s[(2, k)]) / nk;
    axis.normalize_mut();
    // fix the sign from the residual antisymmetric part where available
    if v.dot(&axis) < T::zero() {
        axis = -axis;
    }
    (axis, angle)
}
