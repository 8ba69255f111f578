//! `%.Ng`-style number formatting.

/// Formats `x` with `digits` significant digits the way C's `%.{digits}g`
/// does: fixed notation for moderate exponents, scientific otherwise, with
/// trailing zeros removed.
pub fn format_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
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
    fn matches_printf_g() {
        assert_eq!(
            format_sig(std::f64::consts::FRAC_PI_2, 17),
            "1.5707963267948966"
        );
        assert_eq!(format_sig(-std::f64::consts::PI, 17), "-3.1415926535897931");
        assert_eq!(format_sig(0.5, 17), "0.5");
        assert_eq!(format_sig(2.0, 12), "2");
        assert_eq!(format_sig(0.0, 12), "0");
        assert_eq!(format_sig(1.0e-7, 12), "1e-07");
        assert_eq!(format_sig(0.000123456, 3), "0.000123");
        assert_eq!(format_sig(123456.0, 3), "1.23e+05");
        assert_eq!(format_sig(0.1 + 0.2, 17), "0.30000000000000004");
        assert_eq!(format_sig(0.1 + 0.2, 12), "0.3");
    }
}
