//! Linear-entropy entanglement across bipartitions of the four qubits.
//!
//! For a bipartition `A|B` the entanglement is `Σ (1 − Tr ρ²)` over the
//! reduced states of both blocks, so a maximally entangled qubit pair
//! scores 1. The "one versus three" measure sums the linear entropies of the four
//! single-qubit marginals instead.
//!
//! The closed forms below are reference expressions used to cross-check the
//! numeric pipeline; they are never the source of truth.

use std::fmt;
use std::str::FromStr;

use crate::qubits::{PureState, QubitSet};
use crate::states::Scenario;
use crate::{Error, Real, Result};

/// A split of the qubits `{0, 1, 2, 3}` into a block and its complement.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bipartition {
    block: QubitSet,
}

impl Bipartition {
    /// Spins `{2, 3}` against momenta `{0, 1}`.
    pub const SPIN_VS_MOM: Bipartition = Bipartition {
        block: QubitSet::from_bits(0b0011),
    };
    /// Particle A `{0, 2}` against particle B `{1, 3}`.
    pub const ALICE_BOB: Bipartition = Bipartition {
        block: QubitSet::from_bits(0b0101),
    };
    /// `{momA, spinB}` against `{momB, spinA}`.
    pub const CROSS: Bipartition = Bipartition {
        block: QubitSet::from_bits(0b1001),
    };

    pub fn new(block: QubitSet) -> Result<Self> {
        if block.is_empty() || !block.fits(4) || block.len() == 4 {
            return Err(Error::InvalidPartition(format!(
                "{block:?} is not a nonempty proper subset of {{0, 1, 2, 3}}"
            )));
        }
        Ok(Bipartition { block })
    }

    pub fn singleton(qubit: usize) -> Result<Self> {
        Self::new(QubitSet::from_indices([qubit])?)
    }

    #[inline]
    pub fn block_a(&self) -> QubitSet {
        self.block
    }

    #[inline]
    pub fn block_b(&self) -> QubitSet {
        self.block.complement(4)
    }
}

impl fmt::Debug for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}|{:?}", self.block_a(), self.block_b())
    }
}

fn require_four<T: Real>(state: &PureState<T>) -> Result<()> {
    if state.qubit_count() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 16,
            actual: state.dim(),
        });
    }
    Ok(())
}

/// Sum of the linear entropies of both blocks' reduced states.
pub fn partition_entanglement<T: Real>(state: &PureState<T>, part: &Bipartition) -> Result<T> {
    require_four(state)?;
    let a = state.reduced(part.block_a())?.linear_entropy();
    let b = state.reduced(part.block_b())?.linear_entropy();
    Ok(a + b)
}

/// Sum of the four single-qubit linear entropies.
pub fn one_vs_three_total<T: Real>(state: &PureState<T>) -> Result<T> {
    require_four(state)?;
    (0..4).try_fold(T::zero(), |acc, q| {
        Ok(acc
            + state
                .reduced(QubitSet::from_indices([q])?)?
                .linear_entropy())
    })
}

/// Which entanglement quantity to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Study {
    OneVsThree,
    Partition(Bipartition),
}

pub fn entanglement<T: Real>(state: &PureState<T>, study: Study) -> Result<T> {
    match study {
        Study::OneVsThree => one_vs_three_total(state),
        Study::Partition(p) => partition_entanglement(state, &p),
    }
}

/// Boosted minus unboosted entanglement, computed numerically.
pub fn entanglement_delta<T: Real>(scenario: &Scenario<T>, study: Study) -> Result<T> {
    let before = entanglement(&scenario.initial_state(), study)?;
    let after = entanglement(&scenario.boosted_state(), study)?;
    Ok(after - before)
}

/// Reference expressions for the Bell-ψ spin family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellForm {
    OneVsThreeUnboosted,
    OneVsThreeBoosted,
    OneVsThreeDiff,
    SpinMomBoosted,
    AliceBob,
}

/// Reference expressions for the triplet spin family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TripletForm {
    OneVsThreeDiff,
    SpinMomBoosted,
    AliceBob,
}

impl BellForm {
    pub const ALL: [BellForm; 5] = [
        BellForm::OneVsThreeUnboosted,
        BellForm::OneVsThreeBoosted,
        BellForm::OneVsThreeDiff,
        BellForm::SpinMomBoosted,
        BellForm::AliceBob,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BellForm::OneVsThreeUnboosted => "one-v-three-unboosted",
            BellForm::OneVsThreeBoosted => "one-v-three-boosted",
            BellForm::OneVsThreeDiff => "one-v-three-diff",
            BellForm::SpinMomBoosted => "spinmom-boosted",
            BellForm::AliceBob => "alice-bob",
        }
    }
}

impl TripletForm {
    pub const ALL: [TripletForm; 3] = [
        TripletForm::OneVsThreeDiff,
        TripletForm::SpinMomBoosted,
        TripletForm::AliceBob,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TripletForm::OneVsThreeDiff => "one-v-three-diff",
            TripletForm::SpinMomBoosted => "spinmom-boosted",
            TripletForm::AliceBob => "alice-bob",
        }
    }
}

impl FromStr for BellForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownTag(s.to_owned()))
    }
}

impl FromStr for TripletForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownTag(s.to_owned()))
    }
}

/// Closed-form entanglement for `cos α|p₊p₋⟩ + sin α|p₋p₊⟩` times
/// `cos β|↑↓⟩ + sin β|↓↑⟩`, boosted with Wigner angle `δ`.
///
/// The Alice–Bob expression uses the constant 16; with 10 it would fail both
/// `E(0, 0) = 0` and `E(π/4, π/4) = 3/2` (see `DISCREPANCIES.md`).
pub fn closed_form_bell<T: Real>(form: BellForm, alpha: T, beta: T, delta: T) -> T {
    let l = T::lit;
    let (a2, a4) = (l(2.0) * alpha, l(4.0) * alpha);
    let (b2, b4) = (l(2.0) * beta, l(4.0) * beta);
    let sd2 = delta.sin().powi(2);
    match form {
        BellForm::OneVsThreeUnboosted => l(0.5) * (l(2.0) - a4.cos() - b4.cos()),
        BellForm::OneVsThreeBoosted => {
            (l(18.0)
                - l(10.0) * a4.cos()
                - l(6.0) * b4.cos()
                - l(2.0) * a4.cos() * b4.cos()
                - l(8.0) * (l(2.0) * delta).cos() * a2.sin().powi(2) * b2.cos().powi(2))
                / l(16.0)
        }
        BellForm::OneVsThreeDiff => sd2 * a2.sin().powi(2) * b2.cos().powi(2),
        BellForm::SpinMomBoosted => {
            l(0.5)
                * sd2
                * a2.sin().powi(2)
                * (T::one() - b2.sin())
                * (l(3.0) + (l(2.0) * delta).cos() + l(2.0) * sd2 * b2.sin())
        }
        BellForm::AliceBob => (l(16.0) - (l(3.0) + a4.cos()) * (l(3.0) + b4.cos())) / l(8.0),
    }
}

/// Closed-form entanglement for the triplet family
/// `sin θ cos φ|↑↑⟩ + sin θ sin φ(|↑↓⟩+|↓↑⟩)/√2 + cos θ|↓↓⟩`.
pub fn closed_form_triplet<T: Real>(form: TripletForm, alpha: T, theta: T, phi: T, delta: T) -> T {
    let l = T::lit;
    let s2a = (l(2.0) * alpha).sin().powi(2);
    let sd2 = delta.sin().powi(2);
    let (st, ct) = (theta.sin(), theta.cos());
    let proj = (ct + phi.cos() * st).powi(2);
    match form {
        TripletForm::OneVsThreeDiff => {
            -l(0.25)
                * sd2
                * s2a
                * proj
                * (l(-5.0)
                    + (l(2.0) * theta).cos()
                    + l(2.0) * st * st * (l(2.0) * phi).cos()
                    + l(4.0) * (l(2.0) * theta).sin() * phi.cos())
        }
        TripletForm::SpinMomBoosted => {
            let f1 = l(2.0) * (l(2.0) * delta).cos() * (l(3.0) + (l(2.0) * theta).cos())
                - l(2.0) * (l(2.0) * theta).cos();
            let f2 = l(8.0)
                * sd2
                * ((l(2.0) * phi).cos() * st * st + l(2.0) * phi.cos() * (l(2.0) * theta).sin());
            T::one() - alpha.cos().powi(4) - alpha.sin().powi(4)
                + sd2 * s2a * proj * (l(26.0) + f1 - f2) / l(32.0)
                - s2a * (l(10.0) + f1 - f2).powi(2) / l(512.0)
        }
        TripletForm::AliceBob => {
            let c4a = (l(4.0) * alpha).cos();
            let bracket = -l(12.0) * (l(2.0) * theta).cos() - l(13.0) * (l(4.0) * theta).cos()
                + l(16.0)
                    * (l(3.0) + l(5.0) * (l(2.0) * theta).cos())
                    * (l(2.0) * phi).cos()
                    * st
                    * st
                + l(8.0) * (l(4.0) * phi).cos() * st.powi(4)
                - l(256.0) * ct * phi.cos() * st.powi(3) * phi.sin().powi(2);
            (l(203.0) - l(103.0) * c4a + (l(3.0) + c4a) * bracket) / l(256.0)
        }
    }
}
