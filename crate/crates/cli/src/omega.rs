//! Angle expressions: `FLOAT`, `FLOATpi`, `pi`, `[FLOAT]pi/INT`.

use std::f64::consts::PI;

use sepsearch_core::phase_solver::OmegaParam;

use crate::CliError;

/// A parsed oracle phase with the text it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedOmega {
    /// Input text, trimmed; used verbatim as the output label.
    pub label: String,
    pub param: OmegaParam<f64>,
}

/// An angle in radians plus, for integer multiples of `π/d`, the exact
/// fraction `(c, d)` meaning `c·π/d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle {
    pub value: f64,
    pub pi_fraction: Option<(i64, u64)>,
}

fn parse_error(position: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        position,
        message: message.into(),
    }
}

fn parse_float(text: &str, offset: usize) -> Result<f64, CliError> {
    if let Some(bad) = text
        .char_indices()
        .find(|&(_, c)| !(c.is_ascii_digit() || matches!(c, '.' | '+' | '-' | 'e' | 'E')))
    {
        return Err(parse_error(offset + bad.0, format!("unexpected character '{}'", bad.1)));
    }
    let v: f64 = text
        .parse()
        .map_err(|_| parse_error(offset, format!("'{text}' is not a number")))?;
    if !v.is_finite() {
        return Err(parse_error(offset, "number is not finite"));
    }
    Ok(v)
}

/// Parses an angle without any range check.
pub fn parse_angle(text: &str) -> Result<Angle, CliError> {
    let lead = text.len() - text.trim_start().len();
    let t = text.trim();
    if t.is_empty() {
        return Err(parse_error(0, "empty angle"));
    }
    let Some(at) = t.find("pi") else {
        return Ok(Angle {
            value: parse_float(t, lead)?,
            pi_fraction: None,
        });
    };
    let coef = match &t[..at] {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => parse_float(c, lead)?,
    };
    let rest = &t[at + 2..];
    let denom = if rest.is_empty() {
        1
    } else if let Some(d) = rest.strip_prefix('/') {
        let pos = lead + at + 3;
        if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_error(pos, "expected a positive integer after '/'"));
        }
        match d.parse::<u64>() {
            Ok(0) | Err(_) => return Err(parse_error(pos, "denominator must be a positive integer")),
            Ok(v) => v,
        }
    } else {
        return Err(parse_error(lead + at + 2, "expected '/' or end of input after 'pi'"));
    };
    let integral = coef.fract() == 0.0 && coef.abs() < 2f64.powi(53);
    Ok(Angle {
        value: coef * PI / denom as f64,
        pi_fraction: integral.then_some((coef as i64, denom)),
    })
}

/// Parses an oracle phase: the angle must lie in `(−π, π]` and be nonzero.
///
/// `c·π/d` with integer `c` keeps its kickback form `2π·c/(2d)`, so `pi/2`
/// carries `(1, 4)`.
pub fn parse_omega(text: &str) -> Result<ParsedOmega, CliError> {
    let angle = parse_angle(text)?;
    if angle.value == 0.0 {
        return Err(CliError::Core(sepsearch_core::Error::Domain(
            "omega = 0 leaves the state unchanged; choose a nonzero phase".into(),
        )));
    }
    let param = match angle.pi_fraction {
        Some((c, d)) => OmegaParam::from_rational(c, 2 * d)?,
        None => OmegaParam::new(angle.value)?,
    };
    Ok(ParsedOmega {
        label: text.trim().to_string(),
        param,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        let p = parse_omega("pi/2").unwrap();
        assert_eq!(p.param.value, std::f64::consts::FRAC_PI_2);
        assert_eq!(p.param.rational, Some((1, 4)));
        assert_eq!(parse_omega("2pi/3").unwrap().param.value, 2.0943951023931953);
        assert_eq!(parse_omega("pi").unwrap().param.rational, Some((1, 2)));
        assert_eq!(parse_omega("-pi/2").unwrap().param.value, -PI / 2.0);
        assert_eq!(parse_omega("0.5pi").unwrap().param.rational, None);
        let one = parse_omega(" 1.0 ").unwrap();
        assert_eq!((one.param.value, one.label.as_str()), (1.0, "1.0"));
        assert_eq!(parse_omega("4pi/5").unwrap().param.rational, Some((2, 5)));
    }

    #[test]
    fn zero_and_range_are_domain_errors() {
        assert!(matches!(parse_omega("0"), Err(CliError::Core(_))));
        assert!(matches!(parse_omega("0pi"), Err(CliError::Core(_))));
        assert!(matches!(parse_omega("3pi/2"), Err(CliError::Core(_))));
        assert!(matches!(parse_omega("-pi"), Err(CliError::Core(_))));
        assert!(parse_angle("3pi/2").is_ok());
    }

    #[test]
    fn parse_errors_carry_position() {
        let pos = |s: &str| match parse_omega(s) {
            Err(CliError::Parse { position, .. }) => position,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("pi/"), 3);
        assert_eq!(pos("2pi/x"), 4);
        assert_eq!(pos("pix"), 2);
        assert_eq!(pos("1.2a"), 3);
        assert_eq!(pos("pi/0"), 3);
        assert_eq!(pos(""), 0);
    }
}
