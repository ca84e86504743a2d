use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Evaluator, FrameDescriptor, MeasurementSetup};
use crate::nelder_mead::NelderMead;
use crate::qubits::PureState;
use crate::{Real, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximizeOptions {
    /// Random starts in addition to the planar optimal setup.
    pub restarts: usize,
    pub seed: u64,
    /// Local re-runs from the incumbent with a shrinking simplex.
    pub polish_rounds: usize,
    pub max_evaluations: usize,
}

impl Default for MaximizeOptions {
    fn default() -> Self {
        MaximizeOptions {
            restarts: 16,
            seed: 0,
            polish_rounds: 3,
            max_evaluations: 20_000,
        }
    }
}

/// Searches the eight measurement angles for the largest CHSH value.
///
/// Deterministic for a given seed: starts are drawn from a ChaCha8 stream and
/// a later start replaces the incumbent only on a strict improvement.
pub fn chsh_maximize<T: Real>(
    state: &PureState<T>,
    frame: &FrameDescriptor<T>,
    options: &MaximizeOptions,
) -> Result<(MeasurementSetup<T>, T)> {
    let ev = Evaluator::new(state, frame)?;
    // evaluate once up front so errors surface here rather than as NaN
    let planar = MeasurementSetup::planar_optimal();
    ev.chsh(&planar)?;

    let objective = |x: &[T]| -> T {
        let angles: [T; 8] = x.try_into().expect("eight angles");
        match ev.chsh(&MeasurementSetup::from_angles(&angles)) {
            Ok(s) => -s,
            Err(_) => T::zero(),
        }
    };
    let nm = NelderMead {
        initial_step: T::lit(0.6),
        max_evaluations: options.max_evaluations,
        ..NelderMead::default()
    };

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut starts = vec![planar.angles().to_vec()];
    for _ in 0..options.restarts {
        let x: Vec<T> = (0..8)
            .map(|i| {
                let u: f64 = rng.random();
                let span = if i % 2 == 0 {
                    std::f64::consts::PI
                } else {
                    std::f64::consts::TAU
                };
                T::lit(u * span)
            })
            .collect();
        starts.push(x);
    }

    let improves = |new: T, old: T| new < old - T::lit(1e-12);
    let mut best: Option<(Vec<T>, T)> = None;
    for start in &starts {
        let m = nm.minimize(objective, start);
        if best.as_ref().is_none_or(|(_, v)| improves(m.value, *v)) {
            best = Some((m.point, m.value));
        }
    }
    let (mut point, mut value) = best.expect("at least one start");

    let mut step = T::lit(0.1);
    for _ in 0..options.polish_rounds {
        let m = NelderMead {
            initial_step: step,
            ..nm
        }
        .minimize(objective, &point);
        if m.value < value {
            point = m.point;
            value = m.value;
        }
        step *= T::lit(0.1);
    }

    let angles: [T; 8] = point.as_slice().try_into().expect("eight angles");
    Ok((MeasurementSetup::from_angles(&angles), -value))
}
