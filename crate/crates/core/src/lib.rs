//! Two massive spin-½ particles modelled as four qubits (two momentum, two
//! spin), boosted through Wigner rotations.
//!
//! The crate is organised bottom-up:
//!
//! - [`qubits`]: dense complex states and density matrices, tensor products,
//!   partial traces and linear entropy.
//! - [`relativity`]: four-vectors, Lorentz boosts, the Wigner little-group
//!   rotation and its spin-½ representation.
//! - [`states`]: the parameterised momentum and spin states and the
//!   momentum-controlled Wigner rotation of the spins.
//! - [`entanglement`]: linear-entropy entanglement across bipartitions of the
//!   four qubits, with closed-form reference expressions.
//! - [`bell`]: Pauli–Lubanski spin observables, frame-covariant measurement
//!   directions and CHSH evaluation/maximisation.
//!
//! Everything is generic over a [`Real`] scalar (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`, which is what the tests and the
//! command-line front end use.
//!
//! ```
//! use std::f64::consts::FRAC_PI_2;
//! use relent::entanglement::{closed_form_bell, entanglement_delta};
//! use relent::{BellForm, Scenario, SpinFamily, Study};
//!
//! let s = Scenario::new(0.3, SpinFamily::BellPsi { beta: 0.2 }, FRAC_PI_2);
//! let change = entanglement_delta(&s, Study::OneVsThree)?;
//! let reference = closed_form_bell(BellForm::OneVsThreeDiff, 0.3, 0.2, FRAC_PI_2);
//! assert!((change - reference).abs() < 1e-12);
//! # Ok::<(), relent::Error>(())
//! ```

pub mod bell;
pub mod entanglement;
mod error;
pub mod nelder_mead;
pub mod qubits;
pub mod relativity;
mod scalar;
pub mod states;

pub use error::{Error, Result};
pub use scalar::Real;

pub use bell::{DirectionConvention, MaximizeOptions};
pub use entanglement::{BellForm, Bipartition, Study, TripletForm};
pub use qubits::{Operator, QubitIndex, QubitSet};
pub use relativity::Branch;
pub use states::{SpinFamily, WignerAngle};

/// Complex amplitude type used throughout.
pub type Complex<T> = num_complex::Complex<T>;

pub type PureState = qubits::PureState<f64>;
pub type DensityMatrix = qubits::DensityMatrix<f64>;
pub type FourVector = relativity::FourVector<f64>;
pub type LorentzTransform = relativity::LorentzTransform<f64>;
pub type Rapidity = relativity::Rapidity<f64>;
pub type Scenario = states::Scenario<f64>;
pub type Direction = bell::Direction<f64>;
pub type MeasurementSetup = bell::MeasurementSetup<f64>;
pub type FrameDescriptor = bell::FrameDescriptor<f64>;
