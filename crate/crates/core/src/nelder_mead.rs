//! Derivative-free simplex minimisation.

use std::cell::Cell;

use crate::Real;

/// Nelder–Mead settings with the standard reflection/expansion/contraction
/// coefficients (1, 2, ½, ½).
#[derive(Debug, Clone, Copy)]
pub struct NelderMead<T: Real> {
    /// Edge length of the initial right-angled simplex.
    pub initial_step: T,
    /// Stop once the spread of simplex values drops below this.
    pub f_tolerance: T,
    /// ...and every vertex is within this distance of the best one.
    pub x_tolerance: T,
    pub max_evaluations: usize,
}

impl<T: Real> Default for NelderMead<T> {
    fn default() -> Self {
        NelderMead {
            initial_step: T::lit(0.5),
            f_tolerance: T::lit(1e-14),
            x_tolerance: T::lit(1e-9),
            max_evaluations: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum<T: Real> {
    pub point: Vec<T>,
    pub value: T,
    pub evaluations: usize,
}

impl<T: Real> NelderMead<T> {
    pub fn minimize<F>(&self, mut f: F, start: &[T]) -> Minimum<T>
    where
        F: FnMut(&[T]) -> T,
    {
        let n = start.len();
        let evaluations = Cell::new(0usize);
        let mut eval = |x: &[T]| {
            evaluations.set(evaluations.get() + 1);
            let v = f(x);
            // NaN never wins a comparison
            if v.is_finite() {
                v
            } else {
                T::max_value().unwrap_or_else(|| T::lit(f64::MAX))
            }
        };

        let mut simplex: Vec<Vec<T>> = Vec::with_capacity(n + 1);
        simplex.push(start.to_vec());
        for i in 0..n {
            let mut v = start.to_vec();
            v[i] += self.initial_step;
            simplex.push(v);
        }
        let mut values: Vec<T> = simplex.iter().map(|x| eval(x)).collect();

        let half = T::lit(0.5);
        let two = T::lit(2.0);
        let along = |c: &[T], x: &[T], t: T| -> Vec<T> {
            c.iter()
                .zip(x)
                .map(|(&ci, &xi)| ci + t * (xi - ci))
                .collect()
        };

        loop {
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
            simplex = order.iter().map(|&i| simplex[i].clone()).collect();
            values = order.iter().map(|&i| values[i]).collect();

            let spread = values[n] - values[0];
            let size = simplex[1..]
                .iter()
                .flat_map(|v| v.iter().zip(&simplex[0]).map(|(&a, &b)| (a - b).abs()))
                .fold(T::zero(), |m, d| m.max(d));
            if (spread <= self.f_tolerance && size <= self.x_tolerance)
                || evaluations.get() >= self.max_evaluations
            {
                break;
            }

            let mut centroid = vec![T::zero(); n];
            for v in &simplex[..n] {
                for (c, &x) in centroid.iter_mut().zip(v) {
                    *c += x;
                }
            }
            let inv = T::one() / T::lit(n as f64);
            centroid.iter_mut().for_each(|c| *c *= inv);

            let worst = simplex[n].clone();
            let reflected = along(&centroid, &worst, -T::one());
            let fr = eval(&reflected);
            if fr < values[0] {
                let expanded = along(&centroid, &worst, -two);
                let fe = eval(&expanded);
                if fe < fr {
                    simplex[n] = expanded;
                    values[n] = fe;
                } else {
                    simplex[n] = reflected;
                    values[n] = fr;
                }
                continue;
            }
            if fr < values[n - 1] {
                simplex[n] = reflected;
                values[n] = fr;
                continue;
            }
            let (contracted, fc) = if fr < values[n] {
                let c = along(&centroid, &worst, -half);
                let fc = eval(&c);
                (c, fc)
            } else {
                let c = along(&centroid, &worst, half);
                let fc = eval(&c);
                (c, fc)
            };
            if fc < values[n].min(fr) {
                simplex[n] = contracted;
                values[n] = fc;
                continue;
            }
            // shrink towards the best vertex
            let best = simplex[0].clone();
            for i in 1..=n {
                simplex[i] = along(&best, &simplex[i], half);
                values[i] = eval(&simplex[i]);
            }
        }

        Minimum {
            point: simplex.swap_remove(0),
            value: values[0],
            evaluations: evaluations.get(),
        }
    }
}
