//! Command-line value syntax: complex numbers `a+bi` and gwh structure presets.

use fsusy_core::constructions::Structure;
use fsusy_core::{Grading64, C64};

/// Splits `text` before each top-level sign, keeping signs that belong to
/// an exponent (`1e-3`).
fn signed_terms(text: &str) -> Vec<&str> {
    let bytes = text.as_bytes();
    let mut cuts = vec![0];
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E' | b'+' | b'-') {
            cuts.push(i);
        }
    }
    cuts.push(bytes.len());
    cuts.windows(2).map(|w| &text[w[0]..w[1]]).collect()
}

fn real_part(text: &str, whole: &str) -> Result<f64, String> {
    let body = text.strip_prefix('+').unwrap_or(text);
    match body {
        "" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => body
            .parse::<f64>()
            .map_err(|_| format!("invalid complex number `{whole}` (expected a+bi)")),
    }
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` (no spaces; `i` alone is the imaginary unit).
pub fn parse_complex(text: &str) -> Result<C64, String> {
    if text.is_empty() || text.contains(char::is_whitespace) {
        return Err(format!("invalid complex number `{text}` (expected a+bi without spaces)"));
    }
    let terms = signed_terms(text);
    if terms.len() > 2 {
        return Err(format!("invalid complex number `{text}` (expected a+bi)"));
    }
    let mut z = C64::new(0.0, 0.0);
    let (mut seen_re, mut seen_im) = (false, false);
    for t in terms {
        if let Some(coeff) = t.strip_suffix('i') {
            if seen_im {
                return Err(format!("invalid complex number `{text}` (two imaginary parts)"));
            }
            z.im = real_part(coeff, text)?;
            seen_im = true;
        } else {
            if seen_re || seen_im {
                return Err(format!("invalid complex number `{text}` (expected a+bi)"));
            }
            if t.strip_prefix(['+', '-']).unwrap_or(t).is_empty() {
                return Err(format!("invalid complex number `{text}`"));
            }
            z.re = real_part(t, text)?;
            seen_re = true;
        }
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(format!("complex number `{text}` is not finite"));
    }
    Ok(z)
}

/// `c0 + c1 K + c2 K^2 + ...` with real or imaginary coefficients, e.g. `1+0.5K`.
fn parse_kpoly_text(text: &str, k: usize) -> Result<Vec<C64>, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut coeffs = vec![C64::new(0.0, 0.0); k];
    for term in signed_terms(&compact) {
        let (coeff, power) = match term.find('K') {
            None => (term, 0),
            Some(at) => {
                let rest = &term[at + 1..];
                let power = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|p| p.parse::<usize>().ok())
                        .ok_or_else(|| format!("invalid power of K in `{term}`"))?
                };
                (&term[..at], power)
            }
        };
        let value = match coeff.strip_prefix('+').unwrap_or(coeff) {
            "" => C64::new(1.0, 0.0),
            "-" => C64::new(-1.0, 0.0),
            c => parse_complex(c.strip_suffix('*').unwrap_or(c))?,
        };
        // K^k = 1
        coeffs[power % k] += value;
    }
    Ok(coeffs)
}

/// Structure presets: `ones`, `affine:c`, `kpoly:c0,c1,...`, or a
/// K-polynomial such as `1+0.5K`.
pub fn parse_structure(text: &str, g: &Grading64) -> Result<Structure<f64>, String> {
    let k = g.k();
    if text == "ones" {
        return Ok(Structure::ones(k));
    }
    if let Some(c) = text.strip_prefix("affine:") {
        return Ok(Structure::affine(parse_complex(c)?, g));
    }
    if let Some(list) = text.strip_prefix("kpoly:") {
        let coeffs = list.split(',').map(parse_complex).collect::<Result<Vec<_>, _>>()?;
        if coeffs.is_empty() || coeffs.len() > k {
            return Err(format!("kpoly needs between 1 and k = {k} coefficients, got {}", coeffs.len()));
        }
        return Ok(Structure::kpoly(&coeffs, g));
    }
    if text.contains('K') {
        let coeffs = parse_kpoly_text(text, k)?;
        return Ok(Structure::kpoly(&coeffs, g).relabeled(text));
    }
    Err(format!(
        "unknown structure `{text}` (expected ones, affine:c, kpoly:c0,c1,... or a polynomial in K such as 1+0.5K)"
    ))
}
