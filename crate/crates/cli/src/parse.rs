//! Angle literals, `start:stop:steps` ranges and number formatting.

use std::f64::consts::PI;
use std::str::FromStr;

use crate::CliError;

/// Parses a radian value: a float, or a multiple/fraction of `pi` such as
/// `pi/4`, `-3pi/4`, `2*pi`, `0.5pi`.
pub fn parse_angle(s: &str) -> Result<f64, CliError> {
    let bad = || CliError::Usage(format!("invalid angle `{s}`"));
    let t = s.trim().to_ascii_lowercase();
    let v = match t.find("pi") {
        None => t.parse::<f64>().map_err(|_| bad())?,
        Some(at) => {
            let coef = t[..at].trim_end_matches('*').trim();
            let coef = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| bad())?,
            };
            let rest = t[at + 2..].trim();
            let den = match rest.strip_prefix('/') {
                None if rest.is_empty() => 1.0,
                None => return Err(bad()),
                Some(d) => d.trim().parse::<f64>().map_err(|_| bad())?,
            };
            if den == 0.0 {
                return Err(bad());
            }
            coef * PI / den
        }
    };
    if !v.is_finite() {
        return Err(bad());
    }
    Ok(v)
}

/// Evenly spaced grid including both ends. A single value is a one-point
/// range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Range {
    pub fn single(v: f64) -> Self {
        Range {
            start: v,
            stop: v,
            steps: 1,
        }
    }

    pub fn new(start: f64, stop: f64, steps: usize) -> Result<Self, CliError> {
        if !start.is_finite() || !stop.is_finite() {
            return Err(CliError::Usage("range ends must be finite".into()));
        }
        if steps == 0 {
            return Err(CliError::Usage("range needs at least one step".into()));
        }
        if stop < start {
            return Err(CliError::Usage(format!(
                "range stop {stop} is below start {start}"
            )));
        }
        if steps == 1 && stop != start {
            return Err(CliError::Usage(
                "a one-step range needs start == stop".into(),
            ));
        }
        Ok(Range { start, stop, steps })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (i as f64) / last
                }
            })
            .collect()
    }
}

impl FromStr for Range {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => Ok(Range::single(parse_angle(v)?)),
            [a, b, n] => {
                let steps = n
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("invalid step count `{n}`")))?;
                Range::new(parse_angle(a)?, parse_angle(b)?, steps)
            }
            _ => Err(CliError::Usage(format!(
                "invalid range `{s}`, expected start:stop:steps"
            ))),
        }
    }
}

/// Parses `x,y,z` into a unit vector (normalising it).
pub fn parse_direction(s: &str) -> Result<[f64; 3], CliError> {
    let bad = || CliError::Usage(format!("invalid direction `{s}`, expected x,y,z"));
    let v: Vec<f64> = s
        .split(',')
        .map(|c| c.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let [x, y, z] = v[..] else { return Err(bad()) };
    let n = (x * x + y * y + z * z).sqrt();
    if !(n > 1e-12) || !n.is_finite() {
        return Err(bad());
    }
    Ok([x / n, y / n, z / n])
}

/// `%.{digits}g`: fixed notation for moderate exponents, scientific otherwise,
/// trailing zeros removed.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let p = digits.max(1);
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_literals() {
        assert_eq!(parse_angle("0.25").unwrap(), 0.25);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("pi/4").unwrap(), PI / 4.0);
        assert_eq!(parse_angle("-pi/2").unwrap(), -PI / 2.0);
        assert_eq!(parse_angle("3pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_angle("2*pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_angle("PI/8").unwrap(), PI / 8.0);
        for bad in ["", "abc", "pi/0", "pi4", "1/2", "nan", "inf", "pi/x"] {
            assert!(parse_angle(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn ranges() {
        let r: Range = "0:pi:3".parse().unwrap();
        assert_eq!(r.values(), vec![0.0, PI / 2.0, PI]);
        let r: Range = "pi/4".parse().unwrap();
        assert_eq!(r.values(), vec![PI / 4.0]);
        let r: Range = "0:1:21".parse().unwrap();
        let v = r.values();
        assert_eq!(v.len(), 21);
        assert_eq!(v[20], 1.0);
        assert!((v[10] - 0.5).abs() < 1e-15);
        for bad in ["1:0:3", "0:1:0", "0:1", "0:1:2:3", "0:1:x", "0:1:1"] {
            assert!(bad.parse::<Range>().is_err(), "{bad}");
        }
        assert!("2:2:1".parse::<Range>().is_ok());
    }

    #[test]
    fn directions() {
        assert_eq!(parse_direction("1,0,0").unwrap(), [1.0, 0.0, 0.0]);
        let d = parse_direction("1, 1, 0").unwrap();
        assert!((d[0] - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(parse_direction("0,0,0").is_err());
        assert!(parse_direction("1,0").is_err());
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(0.0, 15), "0");
        assert_eq!(format_sig(-0.0, 15), "0");
        assert_eq!(format_sig(1.0, 15), "1");
        assert_eq!(format_sig(0.1 + 0.2, 15), "0.3");
        assert_eq!(format_sig(PI, 15), "3.14159265358979");
        assert_eq!(format_sig(PI, 12), "3.14159265359");
        assert_eq!(format_sig(-2.5e-17, 15), "-2.5e-17");
        assert_eq!(format_sig(1.5e20, 15), "1.5e+20");
        assert_eq!(format_sig(123456.0, 3), "1.23e+05");
        assert_eq!(format_sig(0.0001234, 15), "0.0001234");
        assert_eq!(format_sig(1e-5, 15), "1e-05");
    }
}
