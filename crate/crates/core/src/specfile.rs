//! Potential spec files: a line-oriented UTF-8 key-value format.
//!
//! ```text
//! # any comment
//! schema = potential/1
//! base_point = 0
//! h11 = [0, 1i]              # coefficients ascending in z
//! h32 = [0, -1/2] / [1]      # optional "/ [denominator]"
//! grid = polar 0.2:1.95:5 0:6.283185307179586:4
//! lambda = 1, 1i
//! ```
//!
//! Coefficients are Gaussian rationals: `3`, `-1/2`, `0.25`, `i`, `-2i`,
//! `1/3i`, and sums `a+bi` / `a-bi`. Decimals are converted exactly.
//! Missing h entries default to zero. Parse errors carry line numbers.

use crate::error::{CoreError, Result};
use crate::exact::{GRat, Q};
use crate::grid::GridSpec;
use crate::mat::C64;
use crate::potential::PotentialSpec;
use crate::ratfn::{RationalFn, UPoly};
use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

/// Everything a spec file can carry.
pub struct SpecFile {
    pub potential: PotentialSpec,
    pub grid: Option<GridSpec>,
    pub lambdas: Option<Vec<C64>>,
}

fn err(line: usize, msg: impl Into<String>) -> CoreError {
    CoreError::SpecParse {
        line,
        msg: msg.into(),
    }
}

/// Parse a rational number, possibly written as a decimal.
fn parse_rational(s: &str, line: usize) -> Result<Q> {
    let s = s.trim();
    if s.is_empty() {
        return Err(err(line, "empty number"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| err(line, format!("bad integer '{num}'")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| err(line, format!("bad integer '{den}'")))?;
        if d.is_zero() {
            return Err(err(line, "zero denominator"));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let neg = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        let whole: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits
                .parse()
                .map_err(|_| err(line, format!("bad decimal '{s}'")))?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err(line, format!("bad decimal '{s}'")));
        }
        let frac: BigInt = frac_part
            .parse()
            .map_err(|_| err(line, format!("bad decimal '{s}'")))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mut q = Q::from_integer(whole) + Q::new(frac, scale);
        if neg {
            q = -q;
        }
        return Ok(q);
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| err(line, format!("bad number '{s}'")))?;
    Ok(Q::from_integer(n))
}

/// Parse one Gaussian-rational literal.
pub fn parse_grat(s: &str, line: usize) -> Result<GRat> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err(line, "empty number"));
    }
    // Split a trailing imaginary term off a sum: scan for '+'/'-' that is
    // not the leading sign.
    let bytes = s.as_bytes();
    let mut split_at = None;
    for k in (1..bytes.len()).rev() {
        if bytes[k] == b'+' || bytes[k] == b'-' {
            split_at = Some(k);
            break;
        }
    }
    if let Some(k) = split_at {
        let (head, tail) = s.split_at(k);
        if tail.len() > 1 || tail == "+" || tail == "-" {
            let head_val = parse_grat(head, line)?;
            let tail_val = parse_grat(tail, line)?;
            if !(head_val.im.is_zero() || tail_val.im.is_zero()) {
                return Err(err(line, format!("malformed complex literal '{s}'")));
            }
            return Ok(&head_val + &tail_val);
        }
    }
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        let q = match body {
            "" | "+" => Q::one(),
            "-" => -Q::one(),
            other => parse_rational(other, line)?,
        };
        return Ok(GRat::new(Q::zero(), q));
    }
    Ok(GRat::new(parse_rational(&s, line)?, Q::zero()))
}

/// Parse `[c0, c1, ...]` into ascending coefficients.
fn parse_coeff_list(s: &str, line: usize) -> Result<Vec<GRat>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| err(line, format!("expected [..] coefficient list, got '{s}'")))?;
    let inner = inner.trim();
    if inner.is_empty() {
        return Ok(vec![]);
    }
    inner
        .split(',')
        .map(|tok| parse_grat(tok, line))
        .collect()
}

fn parse_ratfn(s: &str, line: usize) -> Result<RationalFn> {
    let (num_s, den_s) = match split_top_level_slash(s) {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let num = UPoly::from_coeffs(parse_coeff_list(num_s, line)?);
    let den = match den_s {
        None => UPoly::constant(GRat::one()),
        Some(d) => {
            let p = UPoly::from_coeffs(parse_coeff_list(d, line)?);
            if p.is_zero() {
                return Err(err(line, "zero denominator polynomial"));
            }
            p
        }
    };
    Ok(RationalFn::new(num, den))
}

/// Split at a '/' that sits between the two bracketed lists.
fn split_top_level_slash(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (k, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '/' if depth == 0 => return Some((&s[..k], &s[k + 1..])),
            _ => {}
        }
    }
    None
}

fn parse_range(tok: &str, line: usize) -> Result<(f64, f64, usize)> {
    let parts: Vec<&str> = tok.split(':').collect();
    if parts.len() != 3 {
        return Err(err(line, format!("expected lo:hi:count, got '{tok}'")));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| err(line, format!("bad float '{}'", parts[0])))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| err(line, format!("bad float '{}'", parts[1])))?;
    let n: usize = parts[2]
        .parse()
        .map_err(|_| err(line, format!("bad count '{}'", parts[2])))?;
    if n == 0 {
        return Err(err(line, "count must be at least 1"));
    }
    Ok((lo, hi, n))
}

/// Parse a grid description: `polar r0:r1:nr theta0:theta1:ntheta` or
/// `rect x0:x1:nx y0:y1:ny`.
pub fn parse_grid(s: &str, line: usize) -> Result<GridSpec> {
    let mut toks = s.split_whitespace();
    let kind = toks.next().ok_or_else(|| err(line, "empty grid spec"))?;
    let a = toks
        .next()
        .ok_or_else(|| err(line, "grid needs two ranges"))?;
    let b = toks
        .next()
        .ok_or_else(|| err(line, "grid needs two ranges"))?;
    if toks.next().is_some() {
        return Err(err(line, "trailing tokens in grid spec"));
    }
    let (a0, a1, an) = parse_range(a, line)?;
    let (b0, b1, bn) = parse_range(b, line)?;
    match kind {
        "polar" => Ok(GridSpec::Polar {
            r0: a0,
            r1: a1,
            nr: an,
            theta0: b0,
            theta1: b1,
            ntheta: bn,
        }),
        "rect" => Ok(GridSpec::Rect {
            x0: a0,
            x1: a1,
            nx: an,
            y0: b0,
            y1: b1,
            ny: bn,
        }),
        other => Err(err(line, format!("unknown grid kind '{other}'"))),
    }
}

/// Parse a comma-separated list of unit complex numbers.
pub fn parse_lambdas(s: &str, line: usize) -> Result<Vec<C64>> {
    let mut out = vec![];
    for tok in s.split(',') {
        let g = parse_grat(tok, line)?;
        let lam = g.to_c64();
        if (lam.norm() - 1.0).abs() > 1e-12 {
            return Err(err(
                line,
                format!("lambda '{}' is not unit modulus", tok.trim()),
            ));
        }
        out.push(lam);
    }
    if out.is_empty() {
        return Err(err(line, "empty lambda list"));
    }
    Ok(out)
}

/// Parse a complete potential spec document.
pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let mut h: [[RationalFn; 2]; 4] = Default::default();
    let mut seen = [[false; 2]; 4];
    let mut base_point = GRat::zero();
    let mut grid = None;
    let mut lambdas = None;
    let mut schema_seen = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.split_once('#') {
            Some((head, _)) => head,
            None => raw,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(line, "expected 'key = value'"))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "schema" => {
                if value != "potential/1" {
                    return Err(err(line, format!("unsupported schema '{value}'")));
                }
                schema_seen = true;
            }
            "base_point" => {
                base_point = parse_grat(value, line)?;
            }
            "grid" => {
                grid = Some(parse_grid(value, line)?);
            }
            "lambda" => {
                lambdas = Some(parse_lambdas(value, line)?);
            }
            k if k.len() == 3 && k.starts_with('h') => {
                let row = k.as_bytes()[1]
                    .checked_sub(b'1')
                    .filter(|r| *r < 4)
                    .ok_or_else(|| err(line, format!("unknown key '{k}'")))?;
                let col = k.as_bytes()[2]
                    .checked_sub(b'1')
                    .filter(|c| *c < 2)
                    .ok_or_else(|| err(line, format!("unknown key '{k}'")))?;
                let (row, col) = (row as usize, col as usize);
                if seen[row][col] {
                    return Err(err(line, format!("duplicate key '{k}'")));
                }
                seen[row][col] = true;
                h[row][col] = parse_ratfn(value, line)?;
            }
            other => return Err(err(line, format!("unknown key '{other}'"))),
        }
    }
    if !schema_seen {
        return Err(err(0, "missing 'schema = potential/1' line"));
    }
    let potential = PotentialSpec::new(h, base_point)?;
    Ok(SpecFile {
        potential,
        grid,
        lambdas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q_ratio;

    #[test]
    fn parses_the_sphere_case_spec() {
        let text = "\
# sphere case
schema = potential/1
base_point = 0
h11 = [0, 1i]
h21 = [0, -1i]
h31 = [-1]
h41 = [1i]
h12 = [-1/2i]
h22 = [-1/2i]
h32 = [0, -1/2]
h42 = [0, -1/2i]
grid = polar 0.2:1.95:5 0:6.283185307179586:4
lambda = 1, 1i
";
        let spec = parse_spec(text).unwrap();
        assert_eq!(spec.grid.as_ref().unwrap().points().len(), 20);
        assert_eq!(spec.lambdas.as_ref().unwrap().len(), 2);
        // Matches the built-in case.
        let (builtin, _) = crate::golden_inputs::sphere_case_potential().unwrap();
        let z = C64::new(0.3, 0.7);
        let a = spec.potential.b1_hat_at(z).unwrap();
        let b = builtin.b1_hat_at(z).unwrap();
        assert!((&a - &b).norm_max() < 1e-14);
    }

    #[test]
    fn number_forms() {
        assert_eq!(parse_grat("3", 1).unwrap(), GRat::from_int(3));
        assert_eq!(parse_grat("-1/2", 1).unwrap(), GRat::from_ratio(-1, 2));
        assert_eq!(
            parse_grat("0.25", 1).unwrap(),
            GRat::from_ratio(1, 4)
        );
        assert_eq!(parse_grat("i", 1).unwrap(), GRat::i());
        assert_eq!(
            parse_grat("-2i", 1).unwrap(),
            GRat::new(q_ratio(0, 1), q_ratio(-2, 1))
        );
        assert_eq!(
            parse_grat("1/3i", 1).unwrap(),
            GRat::new(q_ratio(0, 1), q_ratio(1, 3))
        );
        assert_eq!(
            parse_grat("1+2i", 1).unwrap(),
            GRat::new(q_ratio(1, 1), q_ratio(2, 1))
        );
        assert_eq!(
            parse_grat("-0.5-0.25i", 1).unwrap(),
            GRat::new(q_ratio(-1, 2), q_ratio(-1, 4))
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "schema = potential/1\nh11 = [0, 1i\n";
        match parse_spec(text) {
            Err(CoreError::SpecParse { line, .. }) => assert_eq!(line, 2),
            Err(other) => panic!("unexpected error {other:?}"),
            Ok(_) => panic!("parse should fail"),
        }

        let text = "schema = potential/1\nh99 = [1]\n";
        match parse_spec(text) {
            Err(CoreError::SpecParse { line, .. }) => assert_eq!(line, 2),
            Err(other) => panic!("unexpected error {other:?}"),
            Ok(_) => panic!("parse should fail"),
        }
    }

    #[test]
    fn rational_entries_parse() {
        // A double pole with matched isotropic partner integrates fine.
        let text = "\
schema = potential/1
h31 = [1] / [1, -2, 1]
h41 = [1i] / [1, -2, 1]
";
        let spec = parse_spec(text).unwrap();
        assert!(!spec.potential.h[2][0].is_polynomial());
    }

    #[test]
    fn non_unit_lambda_rejected() {
        let text = "schema = potential/1\nlambda = 2\n";
        assert!(matches!(
            parse_spec(text),
            Err(CoreError::SpecParse { line: 2, .. })
        ));
    }
}
