//! Angles on the command line: plain reals or multiples of π such as
//! `pi/48`, `-pi/12`, `2pi`, `3*pi/4`.

use std::f64::consts::PI;

pub fn parse_angle(text: &str) -> Result<f64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.replace('π', "pi").to_ascii_lowercase();
    if let Ok(v) = s.parse::<f64>() {
        return Ok(v);
    }
    let bad = || format!("cannot parse angle `{text}`");
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s.strip_prefix('+').unwrap_or(&s)),
    };
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d.parse::<f64>().map_err(|_| bad())?)),
        None => (body, None),
    };
    let coeff = numer.strip_suffix("pi").ok_or_else(bad)?;
    let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
    let coeff = if coeff.is_empty() {
        1.0
    } else {
        coeff.parse::<f64>().map_err(|_| bad())?
    };
    let value = sign * coeff * PI / denom.unwrap_or(1.0);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_angle("0.25").unwrap(), 0.25);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("pi/48").unwrap(), PI / 48.0);
        assert_eq!(parse_angle("-pi/12").unwrap(), -PI / 12.0);
        assert_eq!(parse_angle("2pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_angle("3*pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_angle("π/24").unwrap(), PI / 24.0);
        assert!(parse_angle("pie").is_err());
        assert!(parse_angle("pi/0").is_err());
        assert!(parse_angle("x").is_err());
    }
}
