//! Dense multi-qubit states and density matrices.
//!
//! Basis ordering is big-endian: for qubits `(q0, q1, .., q_{n-1})` the basis
//! label `b0 b1 .. b_{n-1}` sits at amplitude index `Σ b_q · 2^(n-1-q)`. In the
//! four-qubit system the qubits have the fixed meaning given by
//! [`QubitIndex`].

use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::{Complex, Error, Real, Result};

/// Largest register handled by this module.
pub const MAX_QUBITS: usize = 4;

/// Dense complex operator.
pub type Operator<T> = DMatrix<Complex<T>>;

/// Role of each qubit in the two-particle register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QubitIndex {
    MomentumA = 0,
    MomentumB = 1,
    SpinA = 2,
    SpinB = 3,
}

impl QubitIndex {
    pub const ALL: [QubitIndex; 4] = [
        QubitIndex::MomentumA,
        QubitIndex::MomentumB,
        QubitIndex::SpinA,
        QubitIndex::SpinB,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Result<Self> {
        Self::ALL.get(i).copied().ok_or(Error::InvalidQubit(i))
    }
}

/// A set of qubit indices, stored as a bitmask (bit `q` ⇔ qubit `q`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct QubitSet(u8);

impl QubitSet {
    pub const EMPTY: QubitSet = QubitSet(0);

    pub(crate) const fn from_bits(bits: u8) -> Self {
        QubitSet(bits)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut set = QubitSet::EMPTY;
        for q in indices {
            if q >= MAX_QUBITS {
                return Err(Error::InvalidQubit(q));
            }
            set.0 |= 1 << q;
        }
        Ok(set)
    }

    /// All qubits `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_QUBITS);
        QubitSet(((1u16 << n) - 1) as u8)
    }

    #[inline]
    pub fn contains(self, q: usize) -> bool {
        q < MAX_QUBITS && self.0 & (1 << q) != 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Complement within the register `0..n`.
    pub fn complement(self, n: usize) -> Self {
        QubitSet(Self::full(n).0 & !self.0)
    }

    pub fn is_subset(self, other: QubitSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_QUBITS).filter(move |&q| self.contains(q))
    }

    /// True if every member is below `n`.
    pub fn fits(self, n: usize) -> bool {
        self.is_subset(Self::full(n))
    }
}

impl From<QubitIndex> for QubitSet {
    fn from(q: QubitIndex) -> Self {
        QubitSet(1 << q.index())
    }
}

impl fmt::Debug for QubitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Splits a big-endian basis index of an `n`-qubit register into the index
/// over the kept qubits and the index over the traced qubits, both big-endian
/// in ascending qubit order.
fn split_index(index: usize, n: usize, keep: QubitSet) -> (usize, usize) {
    let (mut kept, mut traced) = (0, 0);
    for q in 0..n {
        let bit = (index >> (n - 1 - q)) & 1;
        if keep.contains(q) {
            kept = (kept << 1) | bit;
        } else {
            traced = (traced << 1) | bit;
        }
    }
    (kept, traced)
}

fn check_keep(keep: QubitSet, n: usize) -> Result<()> {
    if keep.is_empty() || !keep.fits(n) || keep.len() == n {
        return Err(Error::InvalidPartition(format!(
            "kept qubits {keep:?} must be a nonempty proper subset of 0..{n}"
        )));
    }
    Ok(())
}

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() || dim > 1 << MAX_QUBITS {
        return Err(Error::DimensionMismatch {
            expected: 1 << MAX_QUBITS,
            actual: dim,
        });
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Kronecker product with big-endian convention: the left operand's qubits
/// become the high bits.
pub trait TensorProduct<Rhs = Self> {
    type Output;

    fn tensor(&self, rhs: &Rhs) -> Self::Output;
}

pub fn tensor_product<A: TensorProduct>(a: &A, b: &A) -> A::Output {
    a.tensor(b)
}

impl<T: Real> TensorProduct for Operator<T> {
    type Output = Operator<T>;

    fn tensor(&self, rhs: &Self) -> Operator<T> {
        self.kronecker(rhs)
    }
}

/// Normalised pure state of one to four qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T: Real> {
    amplitudes: DVector<Complex<T>>,
    qubits: usize,
}

impl<T: Real> PureState<T> {
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let qubits = qubits_for_dim(amplitudes.len())?;
        let state = PureState {
            amplitudes: DVector::from_vec(amplitudes),
            qubits,
        };
        state.check_norm()?;
        Ok(state)
    }

    pub fn from_real(amplitudes: &[T]) -> Result<Self> {
        Self::new(
            amplitudes
                .iter()
                .map(|&a| Complex::new(a, T::zero()))
                .collect(),
        )
    }

    /// Computational basis state `|index⟩` of an `n`-qubit register.
    pub fn basis(qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << qubits;
        qubits_for_dim(dim)?;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: index,
            });
        }
        let mut amplitudes = DVector::from_element(dim, Complex::new(T::zero(), T::zero()));
        amplitudes[index] = Complex::new(T::one(), T::zero());
        Ok(PureState { amplitudes, qubits })
    }

    pub(crate) fn from_vector_unchecked(amplitudes: DVector<Complex<T>>) -> Self {
        let qubits = amplitudes.len().trailing_zeros() as usize;
        PureState { amplitudes, qubits }
    }

    fn check_norm(&self) -> Result<()> {
        let n = self.norm_sqr();
        if (n - T::one()).abs() > T::tolerance() {
            return Err(Error::NotNormalized(n.to_f64()));
        }
        Ok(())
    }

    #[inline]
    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &DVector<Complex<T>> {
        &self.amplitudes
    }

    #[inline]
    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Largest componentwise amplitude difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm_sqr().sqrt()))
    }

    /// Applies an operator; fails unless the result is still normalised.
    pub fn apply(&self, op: &Operator<T>) -> Result<Self> {
        if op.nrows() != self.dim() || op.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: op.nrows(),
            });
        }
        let out = PureState {
            amplitudes: op * &self.amplitudes,
            qubits: self.qubits,
        };
        out.check_norm()?;
        Ok(out)
    }

    /// `⟨ψ|op|ψ⟩`.
    pub fn expectation(&self, op: &Operator<T>) -> Result<Complex<T>> {
        if op.nrows() != self.dim() || op.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: op.nrows(),
            });
        }
        Ok(self.amplitudes.dotc(&(op * &self.amplitudes)))
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn density(&self) -> DensityMatrix<T> {
        DensityMatrix {
            entries: &self.amplitudes * self.amplitudes.adjoint(),
            qubits: self.qubits,
        }
    }

    /// Reduced state on `keep`, computed from the amplitude matrix `M` with
    /// rows indexed by the kept qubits: `ρ = M M†`.
    pub fn reduced(&self, keep: QubitSet) -> Result<DensityMatrix<T>> {
        check_keep(keep, self.qubits)?;
        let kept_dim = 1 << keep.len();
        let traced_dim = self.dim() / kept_dim;
        let mut m = DMatrix::from_element(kept_dim, traced_dim, Complex::new(T::zero(), T::zero()));
        for (i, a) in self.amplitudes.iter().enumerate() {
            let (k, t) = split_index(i, self.qubits, keep);
            m[(k, t)] = *a;
        }
        Ok(DensityMatrix {
            entries: &m * m.adjoint(),
            qubits: keep.len(),
        })
    }
}

impl<T: Real> TensorProduct for PureState<T> {
    type Output = PureState<T>;

    fn tensor(&self, rhs: &Self) -> PureState<T> {
        PureState {
            amplitudes: self.amplitudes.kronecker(&rhs.amplitudes),
            qubits: self.qubits + rhs.qubits,
        }
    }
}

/// Density matrix of one to four qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    entries: Operator<T>,
    qubits: usize,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity, unit trace and positivity (eigenvalues ≥ −tol).
    pub fn new(entries: Operator<T>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                expected: entries.nrows(),
                actual: entries.ncols(),
            });
        }
        let qubits = qubits_for_dim(entries.nrows())?;
        let rho = DensityMatrix { entries, qubits };
        let tol = T::tolerance();
        let herm = rho.hermiticity_defect();
        if herm > tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (defect {})",
                herm.to_f64()
            )));
        }
        let tr = rho.trace();
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace {} + {}i",
                tr.re.to_f64(),
                tr.im.to_f64()
            )));
        }
        let min = rho.eigenvalues()[0];
        if min < -tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {}",
                min.to_f64()
            )));
        }
        Ok(rho)
    }

    /// `I/d` on `qubits` qubits.
    pub fn maximally_mixed(qubits: usize) -> Result<Self> {
        let dim = 1usize << qubits;
        qubits_for_dim(dim)?;
        let w = Complex::new(T::one() / T::lit(dim as f64), T::zero());
        Ok(DensityMatrix {
            entries: Operator::from_diagonal_element(dim, dim, w),
            qubits,
        })
    }

    #[inline]
    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    #[inline]
    pub fn entries(&self) -> &Operator<T> {
        &self.entries
    }

    pub fn trace(&self) -> Complex<T> {
        self.entries.trace()
    }

    /// `max |ρ_ij − conj(ρ_ji)|`.
    pub fn hermiticity_defect(&self) -> T {
        let d = self.dim();
        let mut worst = T::zero();
        for i in 0..d {
            for j in i..d {
                worst = worst.max(
                    (self.entries[(i, j)] - self.entries[(j, i)].conj())
                        .norm_sqr()
                        .sqrt(),
                );
            }
        }
        worst
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<T> {
        let mut ev: Vec<T> = self
            .entries
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        ev
    }

    /// `Tr ρ²`, evaluated as `Σ_ij ρ_ij ρ_ji`.
    pub fn purity(&self) -> T {
        let d = self.dim();
        let mut acc = T::zero();
        for i in 0..d {
            for j in 0..d {
                acc += (self.entries[(i, j)] * self.entries[(j, i)]).re;
            }
        }
        acc
    }

    /// `1 − Tr ρ²`.
    pub fn linear_entropy(&self) -> T {
        T::one() - self.purity()
    }

    /// Traces out every qubit not in `keep`; kept qubits stay in ascending
    /// order.
    pub fn partial_trace(&self, keep: QubitSet) -> Result<Self> {
        check_keep(keep, self.qubits)?;
        let kept_dim = 1 << keep.len();
        let split: Vec<(usize, usize)> = (0..self.dim())
            .map(|i| split_index(i, self.qubits, keep))
            .collect();
        let mut out =
            Operator::from_element(kept_dim, kept_dim, Complex::new(T::zero(), T::zero()));
        for (i, &(ki, ti)) in split.iter().enumerate() {
            for (j, &(kj, tj)) in split.iter().enumerate() {
                if ti == tj {
                    out[(ki, kj)] += self.entries[(i, j)];
                }
            }
        }
        Ok(DensityMatrix {
            entries: out,
            qubits: keep.len(),
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm_sqr().sqrt()))
    }
}

impl<T: Real> TensorProduct for DensityMatrix<T> {
    type Output = DensityMatrix<T>;

    fn tensor(&self, rhs: &Self) -> DensityMatrix<T> {
        DensityMatrix {
            entries: self.entries.kronecker(&rhs.entries),
            qubits: self.qubits + rhs.qubits,
        }
    }
}

pub fn partial_trace<T: Real>(rho: &DensityMatrix<T>, keep: QubitSet) -> Result<DensityMatrix<T>> {
    rho.partial_trace(keep)
}

pub fn linear_entropy<T: Real>(rho: &DensityMatrix<T>) -> T {
    rho.linear_entropy()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn keep(ix: &[usize]) -> QubitSet {
        QubitSet::from_indices(ix.iter().copied()).unwrap()
    }

    #[test]
    fn identity_tensor_identity() {
        let i2 = Operator::<f64>::identity(2, 2);
        assert_eq!(tensor_product(&i2, &i2), Operator::<f64>::identity(4, 4));
    }

    #[test]
    fn one_tensor_zero_is_index_two() {
        let one = PureState::<f64>::basis(1, 1).unwrap();
        let zero = PureState::<f64>::basis(1, 0).unwrap();
        let s = one.tensor(&zero);
        assert_eq!(s.qubit_count(), 2);
        assert_eq!(s.amplitude(2), c(1.0));
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bell_superposition_has_unit_norm() {
        let one = PureState::<f64>::basis(1, 1).unwrap();
        let zero = PureState::<f64>::basis(1, 0).unwrap();
        let a = one.tensor(&zero);
        let b = zero.tensor(&one);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = (a.amplitudes() + b.amplitudes()) * c(h);
        let psi = PureState::new(v.iter().copied().collect()).unwrap();
        assert!((psi.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            PureState::<f64>::from_real(&[1.0, 1.0]),
            Err(Error::NotNormalized(_))
        ));
        assert!(PureState::<f64>::from_real(&[1.0, 0.0, 0.0]).is_err());
        let not_psd = Operator::<f64>::from_diagonal(&DVector::from_vec(vec![c(1.5), c(-0.5)]));
        assert!(matches!(
            DensityMatrix::new(not_psd),
            Err(Error::InvalidDensityMatrix(_))
        ));
    }

    #[test]
    fn product_state_reduces_to_factor() {
        let a = PureState::<f64>::from_real(&[0.6, 0.8]).unwrap();
        let b = PureState::<f64>::from_real(&[0.8, -0.6]).unwrap();
        let rho = a.tensor(&b).density();
        let ra = rho.partial_trace(keep(&[0])).unwrap();
        assert!(ra.max_abs_diff(&a.density()) < 1e-15);
        assert!((ra.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = PureState::<f64>::from_real(&[0.0, h, h, 0.0]).unwrap();
        let r = psi.density().partial_trace(keep(&[0])).unwrap();
        let mixed = DensityMatrix::<f64>::maximally_mixed(1).unwrap();
        assert!(r.max_abs_diff(&mixed) < 1e-15);
    }

    #[test]
    fn invalid_keep_sets() {
        let psi = PureState::<f64>::basis(4, 3).unwrap();
        let rho = psi.density();
        assert!(matches!(
            rho.partial_trace(QubitSet::EMPTY),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            rho.partial_trace(QubitSet::full(4)),
            Err(Error::InvalidPartition(_))
        ));
        assert!(psi.reduced(QubitSet::EMPTY).is_err());
        assert!(matches!(
            QubitSet::from_indices([4]),
            Err(Error::InvalidQubit(4))
        ));
    }

    #[test]
    fn linear_entropy_examples() {
        let pure = PureState::<f64>::from_real(&[0.6, 0.0, 0.0, 0.8])
            .unwrap()
            .density();
        assert!(linear_entropy(&pure).abs() < 1e-12);
        let m1 = DensityMatrix::<f64>::maximally_mixed(1).unwrap();
        assert!((m1.linear_entropy() - 0.5).abs() < 1e-15);
        let m2 = DensityMatrix::<f64>::maximally_mixed(2).unwrap();
        assert!((m2.linear_entropy() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn density_validation_accepts_valid() {
        let psi = PureState::<f64>::from_real(&[0.6, 0.0, 0.0, 0.8]).unwrap();
        assert!(DensityMatrix::new(psi.density().entries().clone()).is_ok());
    }

    #[test]
    fn works_in_single_precision() {
        let h = std::f32::consts::FRAC_1_SQRT_2;
        let psi = PureState::<f32>::from_real(&[0.0, h, h, 0.0]).unwrap();
        let r = psi.reduced(QubitSet::from_indices([1]).unwrap()).unwrap();
        assert!((r.linear_entropy() - 0.5).abs() < 1e-6);
    }

    fn random_state(n: usize) -> impl Strategy<Value = PureState<f64>> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n).prop_filter_map(
            "nonzero",
            |v| {
                let norm: f64 = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
                (norm > 1e-3).then(|| {
                    PureState::new(
                        v.iter()
                            .map(|&(a, b)| Complex::new(a / norm, b / norm))
                            .collect(),
                    )
                    .unwrap()
                })
            },
        )
    }

    proptest! {
        #[test]
        fn nested_trace_is_consistent(psi in random_state(4), outer in 1u8..15, inner_mask in 1u8..15) {
            let outer = QubitSet::from_indices((0..4).filter(|q| outer & (1 << q) != 0)).unwrap();
            let rho = psi.density();
            let direct_keep = QubitSet::from_indices(outer.iter().filter(|&q| inner_mask & (1 << q) != 0)).unwrap();
            prop_assume!(!direct_keep.is_empty() && direct_keep != outer);
            // positions of direct_keep inside the ascending list of `outer`
            let rel: Vec<usize> = outer.iter().enumerate().filter(|(_, q)| direct_keep.contains(*q)).map(|(i, _)| i).collect();
            let stepwise = rho.partial_trace(outer).unwrap()
                .partial_trace(QubitSet::from_indices(rel).unwrap()).unwrap();
            let direct = rho.partial_trace(direct_keep).unwrap();
            prop_assert!(stepwise.max_abs_diff(&direct) < 1e-12);
        }

        #[test]
        fn traces_are_unit_and_routes_agree(psi in random_state(4), mask in 1u8..15) {
            let k = QubitSet::from_indices((0..4).filter(|q| mask & (1 << q) != 0)).unwrap();
            let via_rho = psi.density().partial_trace(k).unwrap();
            let via_amps = psi.reduced(k).unwrap();
            prop_assert!((via_rho.trace().re - 1.0).abs() < 1e-12);
            prop_assert!(via_rho.max_abs_diff(&via_amps) < 1e-12);
            prop_assert!(via_rho.hermiticity_defect() < 1e-12);
        }

        #[test]
        fn schmidt_symmetry(psi in random_state(4), mask in 1u8..15) {
            let k = QubitSet::from_indices((0..4).filter(|q| mask & (1 << q) != 0)).unwrap();
            let a = psi.reduced(k).unwrap().linear_entropy();
            let b = psi.reduced(k.complement(4)).unwrap().linear_entropy();
            prop_assert!((a - b).abs() < 1e-12);
            let d = (1 << k.len().min(4 - k.len())) as f64;
            prop_assert!(a >= -1e-12 && a <= 1.0 - 1.0 / d + 1e-12);
        }

        #[test]
        fn tensor_is_associative(a in random_state(1), b in random_state(1), c2 in random_state(2)) {
            let left = a.tensor(&b).tensor(&c2);
            let right = a.tensor(&b.tensor(&c2));
            prop_assert!(left.max_abs_diff(&right) < 1e-12);
        }
    }
}
