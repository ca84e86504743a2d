//! CHSH evaluation for one state in one frame.

use nalgebra::Vector3;
use relent::bell::{
    chsh_maximize, chsh_report, ChshReport, Direction, FrameDescriptor, MeasurementSetup,
};
use relent::states::Scenario;
use relent::{DirectionConvention, MaximizeOptions, SpinFamily};
use serde_json::{json, Value};

use crate::parse::format_sig;
use crate::CliError;

const DIGITS: usize = 15;

#[derive(Debug, Clone, PartialEq)]
pub struct ChshConfig {
    pub alpha: f64,
    pub spin: SpinFamily<f64>,
    pub eta: f64,
    pub xi: f64,
    pub directions: DirectionConvention,
    /// `a, α′, b, β′` as unit vectors; the planar optimal setup if absent.
    pub setup: Option<[[f64; 3]; 4]>,
    /// Searches the setup instead of using `setup`.
    pub optimize: Option<MaximizeOptions>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChshOutcome {
    pub delta: f64,
    pub setup: MeasurementSetup<f64>,
    pub report: ChshReport<f64>,
    pub optimized: bool,
}

fn direction(v: [f64; 3]) -> Result<Direction<f64>, CliError> {
    Direction::normalized(Vector3::from(v)).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn run(config: &ChshConfig) -> Result<ChshOutcome, CliError> {
    let frame = FrameDescriptor::new(config.eta, config.xi)
        .map_err(|e| CliError::Usage(e.to_string()))?
        .with_directions(config.directions);
    let source = Scenario::new(config.alpha, config.spin, 0.0).initial_state();
    let state = frame.observe(&source)?;
    let (setup, optimized) = match (&config.optimize, config.setup) {
        (Some(opts), _) => (chsh_maximize(&state, &frame, opts)?.0, true),
        (None, Some([a, ap, b, bp])) => (
            MeasurementSetup {
                a: direction(a)?,
                a_prime: direction(ap)?,
                b: direction(b)?,
                b_prime: direction(bp)?,
            },
            false,
        ),
        (None, None) => (MeasurementSetup::planar_optimal(), false),
    };
    let report = chsh_report(&state, &setup, &frame)?;
    Ok(ChshOutcome {
        delta: frame.delta(),
        setup,
        report,
        optimized,
    })
}

impl ChshOutcome {
    pub fn text(&self) -> String {
        let f = |x: f64| format_sig(x, DIGITS);
        let r = &self.report;
        let mut s = format!(
            "delta={}\nE(a,b)={}\nE(a,b')={}\nE(a',b')={}\nE(a',b)={}\nS={}\n",
            f(self.delta),
            f(r.e_ab),
            f(r.e_ab_prime),
            f(r.e_a_prime_b_prime),
            f(r.e_a_prime_b),
            f(r.value),
        );
        if self.optimized {
            let angles: Vec<String> = self.setup.angles().iter().map(|&x| f(x)).collect();
            s.push_str(&format!("angles={}\n", angles.join(",")));
        }
        s
    }

    pub fn json(&self) -> Value {
        let r = &self.report;
        let dirs: Vec<Value> = [
            self.setup.a,
            self.setup.a_prime,
            self.setup.b,
            self.setup.b_prime,
        ]
        .iter()
        .map(|d| json!([d.vector().x, d.vector().y, d.vector().z]))
        .collect();
        let mut v = json!({
            "delta": self.delta,
            "E_ab": r.e_ab,
            "E_ab_prime": r.e_ab_prime,
            "E_a_prime_b_prime": r.e_a_prime_b_prime,
            "E_a_prime_b": r.e_a_prime_b,
            "S": r.value,
            "directions": dirs,
        });
        if self.optimized {
            v["angles"] = json!(self.setup.angles());
        }
        v
    }
}
