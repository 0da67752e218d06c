//! Tiny parser for holomorphic polynomials given on the command line.
//!
//! Accepted forms are sums of terms `c`, `c*z^k`, `c z^k`, `z^k`, `z` where `c` is a
//! real number, a number followed by `i`, or a bare `i`. Examples: `z`, `0.1`,
//! `1 - 0.5i*z^2`, `i*z^3 + 2z`.

use conformal_hodge::{HolomorphicSeries, C64};

pub fn parse_series(text: &str, budget: usize) -> Result<HolomorphicSeries, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty expression".into());
    }
    let mut coeffs = vec![C64::new(0.0, 0.0); budget + 1];
    let mut rest = s.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let sign = match rest.as_bytes()[0] {
            b'+' => {
                rest = &rest[1..];
                1.0
            }
            b'-' => {
                rest = &rest[1..];
                -1.0
            }
            _ if first => 1.0,
            _ => return Err(format!("expected '+' or '-' before '{rest}'")),
        };
        first = false;
        let end = next_term_end(rest);
        let (c, k) = parse_term(&rest[..end])?;
        if k > budget {
            return Err(format!("power z^{k} exceeds degree {budget}"));
        }
        coeffs[k] += c * sign;
        rest = &rest[end..];
    }
    Ok(HolomorphicSeries::new(coeffs).resized(budget).value)
}

/// End of the current term: the next `+`/`-` that is not part of an exponent in a number.
fn next_term_end(s: &str) -> usize {
    let b = s.as_bytes();
    for i in 1..b.len() {
        if (b[i] == b'+' || b[i] == b'-') && !matches!(b[i - 1], b'e' | b'E') {
            return i;
        }
    }
    b.len()
}

fn parse_term(t: &str) -> Result<(C64, usize), String> {
    if t.is_empty() {
        return Err("dangling sign".into());
    }
    let (coef_part, power) = match t.find('z') {
        Some(pos) => {
            let tail = &t[pos + 1..];
            let k = if tail.is_empty() {
                1
            } else if let Some(p) = tail.strip_prefix('^') {
                p.parse::<usize>().map_err(|_| format!("bad exponent in '{t}'"))?
            } else {
                return Err(format!("unexpected '{tail}' after z"));
            };
            (t[..pos].trim_end_matches('*'), k)
        }
        None => (t, 0),
    };
    let c = if coef_part.is_empty() {
        C64::new(1.0, 0.0)
    } else if coef_part == "i" {
        C64::new(0.0, 1.0)
    } else if let Some(num) = coef_part.strip_suffix('i') {
        let v: f64 = num.trim_end_matches('*').parse().map_err(|_| format!("bad coefficient '{coef_part}'"))?;
        C64::new(0.0, v)
    } else {
        C64::new(coef_part.parse().map_err(|_| format!("bad coefficient '{coef_part}'"))?, 0.0)
    };
    Ok((c, power))
}
