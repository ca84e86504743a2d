//! Parameterised momentum and spin states and their boost.
//!
//! Momentum qubits encode `|p₊⟩ ↦ |1⟩`, `|p₋⟩ ↦ |0⟩`; spin qubits encode
//! `|↑⟩ ↦ |0⟩`, `|↓⟩ ↦ |1⟩`. The boost acts as a momentum-controlled pair of
//! Wigner rotations: `U₊⊗U₋` on the spins in branch `|p₊,p₋⟩ = |10⟩` and
//! `U₋⊗U₊` in branch `|p₋,p₊⟩ = |01⟩`. Momentum labels become `Λp±` but stay
//! orthogonal, so momentum amplitudes are untouched.

use nalgebra::{DVector, Matrix2, Matrix4};

use crate::qubits::{PureState, TensorProduct};
use crate::relativity::{wigner_angle, wigner_su2, Branch, Rapidity};
use crate::{Complex, Error, Real, Result};

/// Momentum-register index of `|p₊, p₋⟩`.
pub const BRANCH_PLUS_MINUS: usize = 0b10;
/// Momentum-register index of `|p₋, p₊⟩`.
pub const BRANCH_MINUS_PLUS: usize = 0b01;

/// Two-particle spin state families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpinFamily<T: Real> {
    /// `cos β |↑↓⟩ + sin β |↓↑⟩`.
    BellPsi { beta: T },
    /// `sin θ cos φ |↑↑⟩ + sin θ sin φ (|↑↓⟩ + |↓↑⟩)/√2 + cos θ |↓↓⟩`.
    Triplet { theta: T, phi: T },
}

impl<T: Real> SpinFamily<T> {
    /// `(|↑↓⟩ − |↓↑⟩)/√2`.
    pub fn singlet() -> Self {
        SpinFamily::BellPsi {
            beta: -T::FRAC_PI_4(),
        }
    }

    /// `(|↑↓⟩ + |↓↑⟩)/√2`.
    pub fn psi_plus() -> Self {
        SpinFamily::BellPsi {
            beta: T::FRAC_PI_4(),
        }
    }

    /// `(|↑↑⟩ + |↓↓⟩)/√2`.
    pub fn phi_plus() -> Self {
        SpinFamily::Triplet {
            theta: T::FRAC_PI_4(),
            phi: T::zero(),
        }
    }

    /// `|↑↑⟩`.
    pub fn up_up() -> Self {
        SpinFamily::Triplet {
            theta: T::FRAC_PI_2(),
            phi: T::zero(),
        }
    }

    /// Real amplitudes on `(↑↑, ↑↓, ↓↑, ↓↓)`.
    pub fn amplitudes(&self) -> [T; 4] {
        match *self {
            SpinFamily::BellPsi { beta } => [T::zero(), beta.cos(), beta.sin(), T::zero()],
            SpinFamily::Triplet { theta, phi } => {
                let sym = theta.sin() * phi.sin() * T::FRAC_1_SQRT_2();
                [theta.sin() * phi.cos(), sym, sym, theta.cos()]
            }
        }
    }
}

/// Wigner angle given directly or through the particle/observer rapidities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WignerAngle<T: Real> {
    Direct(T),
    Rapidities { eta: Rapidity<T>, xi: Rapidity<T> },
}

impl<T: Real> WignerAngle<T> {
    pub fn delta(&self) -> T {
        match *self {
            WignerAngle::Direct(d) => d,
            WignerAngle::Rapidities { eta, xi } => wigner_angle(eta, xi),
        }
    }
}

/// Initial momentum parameter, spin state and boost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario<T: Real> {
    pub alpha: T,
    pub spin: SpinFamily<T>,
    pub angle: WignerAngle<T>,
}

impl<T: Real> Scenario<T> {
    pub fn new(alpha: T, spin: SpinFamily<T>, delta: T) -> Self {
        Scenario {
            alpha,
            spin,
            angle: WignerAngle::Direct(delta),
        }
    }

    pub fn delta(&self) -> T {
        self.angle.delta()
    }

    pub fn initial_state(&self) -> PureState<T> {
        compose_total(&momentum_state(self.alpha), &spin_state(&self.spin))
            .expect("two-qubit factors")
    }

    pub fn boosted_state(&self) -> PureState<T> {
        boost_total(&self.initial_state(), self.delta()).expect("opposite-momentum support")
    }
}

/// `cos α |p₊,p₋⟩ + sin α |p₋,p₊⟩`.
pub fn momentum_state<T: Real>(alpha: T) -> PureState<T> {
    let mut amps = [T::zero(); 4];
    amps[BRANCH_PLUS_MINUS] = alpha.cos();
    amps[BRANCH_MINUS_PLUS] = alpha.sin();
    real_state(&amps)
}

pub fn spin_state<T: Real>(family: &SpinFamily<T>) -> PureState<T> {
    real_state(&family.amplitudes())
}

fn real_state<T: Real>(amps: &[T]) -> PureState<T> {
    PureState::from_vector_unchecked(DVector::from_iterator(
        amps.len(),
        amps.iter().map(|&a| Complex::new(a, T::zero())),
    ))
}

/// `|ψ⟩_mom ⊗ |ψ⟩_spin` on qubits `(momA, momB, spinA, spinB)`.
pub fn compose_total<T: Real>(mom: &PureState<T>, spin: &PureState<T>) -> Result<PureState<T>> {
    for part in [mom, spin] {
        if part.qubit_count() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                actual: part.dim(),
            });
        }
    }
    Ok(mom.tensor(spin))
}

fn spin_pair<T: Real>(a: &Matrix2<Complex<T>>, b: &Matrix2<Complex<T>>) -> Matrix4<Complex<T>> {
    a.kronecker(b)
}

/// Applies the boost with Wigner angle `delta` to a four-qubit state
/// supported on the opposite-momentum branches.
pub fn boost_total<T: Real>(state: &PureState<T>, delta: T) -> Result<PureState<T>> {
    if state.qubit_count() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 16,
            actual: state.dim(),
        });
    }
    let amps = state.amplitudes();
    let eps = T::tolerance();
    for branch in [0b00usize, 0b11] {
        if (0..4).any(|s| amps[4 * branch + s].norm_sqr().sqrt() > eps) {
            return Err(Error::UnsupportedScenario(branch));
        }
    }
    let (up, um) = (
        wigner_su2(delta, Branch::Plus),
        wigner_su2(delta, Branch::Minus),
    );
    let mut out = amps.clone();
    for (branch, op) in [
        (BRANCH_PLUS_MINUS, spin_pair(&up, &um)),
        (BRANCH_MINUS_PLUS, spin_pair(&um, &up)),
    ] {
        let base = 4 * branch;
        let spins = op * amps.fixed_rows::<4>(base);
        out.fixed_rows_mut::<4>(base).copy_from(&spins);
    }
    Ok(PureState::from_vector_unchecked(out))
}
