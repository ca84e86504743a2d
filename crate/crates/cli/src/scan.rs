//! Parameter-grid scans of partition entanglement.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use relent::entanglement::{closed_form_bell, closed_form_triplet, entanglement};
use relent::relativity::{wigner_angle, Rapidity};
use relent::states::Scenario;
use relent::{BellForm, Bipartition, SpinFamily, Study, TripletForm};
use serde_json::{Map, Value};

use crate::parse::{format_sig, Range};
use crate::CliError;

pub const CSV_HEADER: &str = "family,alpha,beta_or_theta,phi_or_blank,delta,partition,\
E_unboosted,E_boosted,E_delta,closed_form_value_or_blank,abs_error_vs_closed_form_or_blank";

/// Rows whose numeric value deviates from the closed form by more than this
/// are flagged.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-10;

const DIGITS: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Bell,
    Triplet,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Bell => "bell",
            Family::Triplet => "triplet",
        }
    }
}

impl FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "bell" => Ok(Family::Bell),
            "triplet" => Ok(Family::Triplet),
            _ => Err(CliError::Usage(format!(
                "unknown family `{s}` (bell|triplet)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partition {
    OneVsThree,
    OneVsThreeDiff,
    SpinVsMom,
    AliceBob,
    Cross,
}

impl Partition {
    pub const ALL: [Partition; 5] = [
        Partition::OneVsThree,
        Partition::OneVsThreeDiff,
        Partition::SpinVsMom,
        Partition::AliceBob,
        Partition::Cross,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Partition::OneVsThree => "one-vs-three",
            Partition::OneVsThreeDiff => "one-vs-three-diff",
            Partition::SpinVsMom => "spin-vs-mom",
            Partition::AliceBob => "alice-bob",
            Partition::Cross => "cross",
        }
    }

    pub fn study(self) -> Study {
        match self {
            Partition::OneVsThree | Partition::OneVsThreeDiff => Study::OneVsThree,
            Partition::SpinVsMom => Study::Partition(Bipartition::SPIN_VS_MOM),
            Partition::AliceBob => Study::Partition(Bipartition::ALICE_BOB),
            Partition::Cross => Study::Partition(Bipartition::CROSS),
        }
    }

    /// Closed-form reference for this partition, and whether it is compared
    /// against the change (`true`) or the boosted value (`false`).
    fn closed_form(
        self,
        family: Family,
        alpha: f64,
        b: f64,
        phi: f64,
        delta: f64,
    ) -> Option<(f64, bool)> {
        match family {
            Family::Bell => {
                let (form, diff) = match self {
                    Partition::OneVsThree => (BellForm::OneVsThreeBoosted, false),
                    Partition::OneVsThreeDiff => (BellForm::OneVsThreeDiff, true),
                    Partition::SpinVsMom => (BellForm::SpinMomBoosted, false),
                    // the cross split carries the same entanglement as Alice|Bob
                    Partition::AliceBob | Partition::Cross => (BellForm::AliceBob, false),
                };
                Some((closed_form_bell(form, alpha, b, delta), diff))
            }
            Family::Triplet => {
                let (form, diff) = match self {
                    Partition::OneVsThree => return None,
                    Partition::OneVsThreeDiff => (TripletForm::OneVsThreeDiff, true),
                    Partition::SpinVsMom => (TripletForm::SpinMomBoosted, false),
                    Partition::AliceBob | Partition::Cross => (TripletForm::AliceBob, false),
                };
                Some((closed_form_triplet(form, alpha, b, phi, delta), diff))
            }
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Partition {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Partition::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown partition `{s}` (one-vs-three|one-vs-three-diff|spin-vs-mom|alice-bob|cross)"
                ))
            })
    }
}

/// Wigner angles to scan: given directly or through rapidities.
#[derive(Debug, Clone, PartialEq)]
pub enum FrameSpec {
    Delta(Range),
    /// Every (η, ξ) pair, η outer.
    Rapidities {
        eta: Range,
        xi: Range,
    },
}

impl FrameSpec {
    pub fn deltas(&self) -> Result<Vec<f64>, CliError> {
        match self {
            FrameSpec::Delta(r) => Ok(r.values()),
            FrameSpec::Rapidities { eta, xi } => {
                let mut out = Vec::new();
                for e in eta.values() {
                    for x in xi.values() {
                        let e = Rapidity::new(e).map_err(|err| CliError::Usage(err.to_string()))?;
                        let x = Rapidity::new(x).map_err(|err| CliError::Usage(err.to_string()))?;
                        out.push(wigner_angle(e, x));
                    }
                }
                Ok(out)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(CliError::Usage(format!("unknown format `{s}` (csv|json)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub family: Family,
    pub alpha: Range,
    /// β for the Bell family, θ for the triplet family.
    pub spin: Range,
    /// Triplet only.
    pub phi: Range,
    pub frame: FrameSpec,
    pub partitions: Vec<Partition>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub family: Family,
    pub alpha: f64,
    pub spin: f64,
    pub phi: Option<f64>,
    pub delta: f64,
    pub partition: Partition,
    pub unboosted: f64,
    pub boosted: f64,
    pub change: f64,
    pub closed_form: Option<f64>,
    pub abs_error: Option<f64>,
}

impl Row {
    pub fn mismatch(&self) -> bool {
        self.abs_error
            .is_some_and(|e| !(e <= CLOSED_FORM_TOLERANCE))
    }

    fn error_cell(&self) -> String {
        match self.abs_error {
            None => String::new(),
            Some(e) if self.mismatch() => format!("MISMATCH:{}", format_sig(e, DIGITS)),
            Some(e) => format_sig(e, DIGITS),
        }
    }

    pub fn csv_line(&self) -> String {
        let num = |x: f64| format_sig(x, DIGITS);
        let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
        [
            self.family.name().to_string(),
            num(self.alpha),
            num(self.spin),
            opt(self.phi),
            num(self.delta),
            self.partition.name().to_string(),
            num(self.unboosted),
            num(self.boosted),
            num(self.change),
            opt(self.closed_form),
            self.error_cell(),
        ]
        .join(",")
    }

    pub fn json(&self) -> Value {
        // numbers go through the same 15-digit rounding as the CSV
        let num = |x: f64| -> Value {
            let s = format_sig(x, DIGITS);
            serde_json::Number::from_f64(s.parse().expect("formatted float"))
                .map(Value::Number)
                .unwrap_or(Value::Null)
        };
        let opt = |x: Option<f64>| x.map(num).unwrap_or(Value::Null);
        let mut m = Map::new();
        m.insert("family".into(), self.family.name().into());
        m.insert("alpha".into(), num(self.alpha));
        m.insert("beta_or_theta".into(), num(self.spin));
        m.insert("phi_or_blank".into(), opt(self.phi));
        m.insert("delta".into(), num(self.delta));
        m.insert("partition".into(), self.partition.name().into());
        m.insert("E_unboosted".into(), num(self.unboosted));
        m.insert("E_boosted".into(), num(self.boosted));
        m.insert("E_delta".into(), num(self.change));
        m.insert("closed_form_value_or_blank".into(), opt(self.closed_form));
        let err = if self.mismatch() {
            Value::String(self.error_cell())
        } else {
            opt(self.abs_error)
        };
        m.insert("abs_error_vs_closed_form_or_blank".into(), err);
        Value::Object(m)
    }
}

struct Cell {
    alpha: f64,
    spin: f64,
    phi: Option<f64>,
    delta: f64,
    partition: Partition,
}

fn evaluate(family: Family, cell: &Cell) -> Result<Row, CliError> {
    let spin = match family {
        Family::Bell => SpinFamily::BellPsi { beta: cell.spin },
        Family::Triplet => SpinFamily::Triplet {
            theta: cell.spin,
            phi: cell.phi.unwrap_or(0.0),
        },
    };
    let scenario = Scenario::new(cell.alpha, spin, cell.delta);
    let study = cell.partition.study();
    let unboosted = entanglement(&scenario.initial_state(), study)?;
    let boosted = entanglement(&scenario.boosted_state(), study)?;
    let change = boosted - unboosted;
    let reference = cell.partition.closed_form(
        family,
        cell.alpha,
        cell.spin,
        cell.phi.unwrap_or(0.0),
        cell.delta,
    );
    let (closed_form, abs_error) = match reference {
        None => (None, None),
        Some((v, true)) => (Some(v), Some((change - v).abs())),
        Some((v, false)) => (Some(v), Some((boosted - v).abs())),
    };
    Ok(Row {
        family,
        alpha: cell.alpha,
        spin: cell.spin,
        phi: cell.phi,
        delta: cell.delta,
        partition: cell.partition,
        unboosted,
        boosted,
        change,
        closed_form,
        abs_error,
    })
}

/// Evaluates the grid. Rows are row-major over (α, β|θ, φ, δ, partition)
/// whatever the thread count.
pub fn scan(config: &ScanConfig) -> Result<Vec<Row>, CliError> {
    if config.partitions.is_empty() {
        return Err(CliError::Usage("no partition selected".into()));
    }
    let phis: Vec<Option<f64>> = match config.family {
        Family::Bell => {
            if config.phi != Range::single(0.0) {
                return Err(CliError::Usage(
                    "--phi applies to the triplet family only".into(),
                ));
            }
            vec![None]
        }
        Family::Triplet => config.phi.values().into_iter().map(Some).collect(),
    };
    let deltas = config.frame.deltas()?;
    let mut cells = Vec::new();
    for alpha in config.alpha.values() {
        for spin in config.spin.values() {
            for &phi in &phis {
                for &delta in &deltas {
                    for &partition in &config.partitions {
                        cells.push(Cell {
                            alpha,
                            spin,
                            phi,
                            delta,
                            partition,
                        });
                    }
                }
            }
        }
    }
    cells
        .par_iter()
        .map(|c| evaluate(config.family, c))
        .collect()
}

pub fn write_rows<W: Write>(rows: &[Row], format: Format, out: &mut W) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            out.write_all(CSV_HEADER.as_bytes())?;
            out.write_all(b"\n")?;
            for r in rows {
                out.write_all(r.csv_line().as_bytes())?;
                out.write_all(b"\n")?;
            }
        }
        Format::Json => {
            let v = Value::Array(rows.iter().map(Row::json).collect());
            serde_json::to_writer_pretty(&mut *out, &v)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    use super::*;

    fn bell(alpha: Range, beta: Range, delta: f64, partition: Partition) -> ScanConfig {
        ScanConfig {
            family: Family::Bell,
            alpha,
            spin: beta,
            phi: Range::single(0.0),
            frame: FrameSpec::Delta(Range::single(delta)),
            partitions: vec![partition],
            format: Format::Csv,
        }
    }

    #[test]
    fn egg_tray_three_by_three() {
        let g = Range::new(0.0, FRAC_PI_2, 3).unwrap();
        let rows = scan(&bell(g, g, FRAC_PI_2, Partition::OneVsThreeDiff)).unwrap();
        let got: Vec<f64> = rows.iter().map(|r| r.change).collect();
        let want = [0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "{got:?}");
        }
        assert!(rows.iter().all(|r| !r.mismatch()));
        // row-major: α outer
        assert_eq!(rows[3].alpha, FRAC_PI_4);
        assert_eq!(rows[3].spin, 0.0);
    }

    #[test]
    fn zero_delta_means_zero_change() {
        let g = Range::new(0.0, PI, 5).unwrap();
        for p in Partition::ALL {
            for r in scan(&bell(g, g, 0.0, p)).unwrap() {
                assert!(r.change.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn triplet_alice_bob_never_changes() {
        let cfg = ScanConfig {
            family: Family::Triplet,
            alpha: Range::new(0.0, PI, 4).unwrap(),
            spin: Range::new(0.0, PI, 4).unwrap(),
            phi: Range::new(0.0, PI, 3).unwrap(),
            frame: FrameSpec::Delta(Range::new(0.0, FRAC_PI_2, 3).unwrap()),
            partitions: vec![Partition::AliceBob],
            format: Format::Csv,
        };
        let rows = scan(&cfg).unwrap();
        assert_eq!(rows.len(), 4 * 4 * 3 * 3);
        for r in rows {
            assert!(r.change.abs() < 1e-10);
            assert!(!r.mismatch());
        }
    }

    #[test]
    fn rapidity_frames() {
        let f = FrameSpec::Rapidities {
            eta: Range::single(1.0),
            xi: "0:1:2".parse().unwrap(),
        };
        let d = f.deltas().unwrap();
        assert_eq!(d[0], 0.0);
        assert!((d[1] - 0.4207839616380729).abs() < 1e-15);
    }

    #[test]
    fn csv_layout() {
        let rows = scan(&bell(
            Range::single(FRAC_PI_4),
            Range::single(0.0),
            FRAC_PI_2,
            Partition::OneVsThreeDiff,
        ))
        .unwrap();
        let mut buf = Vec::new();
        write_rows(&rows, Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.split_terminator('\n').collect();
        assert_eq!(lines[0], CSV_HEADER);
        let cells: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(cells.len(), 11);
        assert_eq!(cells[0], "bell");
        assert_eq!(cells[1], "0.785398163397448");
        assert_eq!(cells[3], "");
        assert_eq!(cells[5], "one-vs-three-diff");
        assert!(!text.contains('\r'));
    }

    #[test]
    fn flags_mismatches() {
        let mut r = scan(&bell(
            Range::single(0.3),
            Range::single(0.2),
            0.5,
            Partition::AliceBob,
        ))
        .unwrap()[0]
            .clone();
        assert!(!r.mismatch());
        r.abs_error = Some(3e-4);
        assert!(r.mismatch());
        assert!(r.csv_line().ends_with(",MISMATCH:0.0003"));
        assert_eq!(
            r.json()["abs_error_vs_closed_form_or_blank"],
            "MISMATCH:0.0003"
        );
    }

    #[test]
    fn json_mirrors_csv_fields() {
        let rows = scan(&bell(
            Range::single(0.3),
            Range::single(0.2),
            0.5,
            Partition::Cross,
        ))
        .unwrap();
        let v = rows[0].json();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys.join(","), CSV_HEADER);
        assert!(v["phi_or_blank"].is_null());
    }

    #[test]
    fn bell_rejects_phi() {
        let mut cfg = bell(
            Range::single(0.0),
            Range::single(0.0),
            0.0,
            Partition::Cross,
        );
        cfg.phi = Range::single(1.0);
        assert!(matches!(scan(&cfg), Err(CliError::Usage(_))));
    }
}
