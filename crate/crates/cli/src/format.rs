//! Number formatting and argument parsers shared by the subcommands.

use std::f64::consts::PI;

/// Rounds to 6 significant digits.
pub fn sig6(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

/// Text form of `sig6(x)` for CSV cells. Very small or very large magnitudes
/// switch to exponent notation.
pub fn num(x: f64) -> String {
    let r = sig6(x);
    if r != 0.0 && (r.abs() < 1e-4 || r.abs() >= 1e15) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

/// Parses angles such as `pi`, `-pi/2`, `3pi/4`, `2*pi` or `1.5708`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let lower = compact.to_ascii_lowercase();
    let (numer, denom) = match lower.split_once('/') {
        Some((n, d)) => {
            let d: f64 = d.parse().map_err(|_| format!("bad angle denominator in '{s}'"))?;
            if d == 0.0 {
                return Err(format!("zero denominator in '{s}'"));
            }
            (n, d)
        }
        None => (lower.as_str(), 1.0),
    };
    let value = match numer.strip_suffix("pi") {
        Some(coef) => {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| format!("bad angle coefficient in '{s}'"))?,
            };
            c * PI
        }
        None => numer.parse::<f64>().map_err(|_| format!("cannot parse angle '{s}'"))?,
    };
    let v = value / denom;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("angle '{s}' is not finite"))
    }
}

/// Parses four comma-separated probabilities.
pub fn parse_probs(s: &str) -> Result<[f64; 4], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("expected 4 comma-separated probabilities, got {}", parts.len()));
    }
    let mut p = [0.0; 4];
    for (slot, part) in p.iter_mut().zip(parts) {
        *slot = part.parse().map_err(|_| format!("cannot parse probability '{part}'"))?;
    }
    Ok(p)
}
