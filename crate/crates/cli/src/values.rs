//! Parsers for command-line values that clap cannot handle on its own.

use subspace_lab::linalg::{c, C64};

/// Reads `re+imi` forms such as `2+0i`, `-1.5-2i`, `3`, `2i`, `-i`, `1e-3+2e-1i`.
pub fn parse_complex(src: &str) -> Result<C64, String> {
    let s: String = src.chars().filter(|ch| !ch.is_whitespace()).collect();
    let bad = || format!("cannot read {src:?} as a complex number (expected re+imi)");
    if s.is_empty() {
        return Err(bad());
    }
    let z = match s.strip_suffix('i') {
        Some(body) => split_imaginary(body).ok_or_else(bad)?,
        None => c(s.parse::<f64>().map_err(|_| bad())?, 0.0),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

fn split_imaginary(body: &str) -> Option<C64> {
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |t: &str| match t {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        t => t.parse::<f64>().ok(),
    };
    match split {
        Some(k) => Some(c(body[..k].parse::<f64>().ok()?, imag(&body[k..])?)),
        None => Some(c(0.0, imag(body)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let cases = [
            ("2+0i", c(2.0, 0.0)),
            ("-1.5-2i", c(-1.5, -2.0)),
            ("3", c(3.0, 0.0)),
            ("2i", c(0.0, 2.0)),
            ("-i", c(0.0, -1.0)),
            ("1+i", c(1.0, 1.0)),
            ("1e-3+2e-1i", c(1e-3, 0.2)),
            ("-2E+1-1e-2i", c(-20.0, -0.01)),
            (" 0.5 + 0.5i ", c(0.5, 0.5)),
        ];
        for (src, want) in cases {
            assert_eq!(parse_complex(src).unwrap(), want, "{src}");
        }
    }

    #[test]
    fn complex_rejects() {
        for src in ["", "i2", "2+", "abc", "1+2j", "1++2i", "nan", "inf+0i"] {
            assert!(parse_complex(src).is_err(), "{src}");
        }
    }
}
