//! Text format for tuples: six whitespace-separated fields
//! `s₀ s₁ s₂ b₀ b₁ b₂`, each `p`, `p/q`, or `p/q±kε` where `k` is an
//! integer or `a/b` and may be omitted (meaning 1). `eps` is accepted for
//! `ε`. `#` starts a comment; blank lines are skipped.

use alloc::format;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::error::{Error, Result};

use super::conditions::ExponentTuple;
use super::extended::{ExtendedRational, Rational};

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num = num.strip_prefix('+').unwrap_or(num);
    let p: i64 = num.parse().map_err(|_| bad())?;
    let q: i64 = den.parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Ratio::new(p, q))
}

/// Parse one field.
pub fn parse_extended(field: &str) -> Result<ExtendedRational> {
    let f = field.trim();
    if f.is_empty() {
        return Err(Error::Parse("empty exponent field".into()));
    }
    let stripped = f.strip_suffix('ε').or_else(|| f.strip_suffix("eps"));
    let Some(head) = stripped else {
        return Ok(ExtendedRational::from_rational(parse_rational(f)?));
    };
    // split at the last sign that is not the leading one
    let cut = head
        .char_indices()
        .skip(1)
        .filter(|(_, c)| *c == '+' || *c == '-')
        .map(|(i, _)| i)
        .last();
    let (q_text, k_text) = match cut {
        Some(i) => (&head[..i], &head[i..]),
        None => ("", head),
    };
    let q = if q_text.is_empty() {
        Ratio::from_integer(0)
    } else {
        parse_rational(q_text)?
    };
    let k = match k_text.trim() {
        "" | "+" => Ratio::from_integer(1),
        "-" => Ratio::from_integer(-1),
        t => parse_rational(t).map_err(|_| Error::Parse(format!("bad ε coefficient in {f:?}")))?,
    };
    Ok(ExtendedRational::new(q, k))
}

/// Parse one line of six fields (comments already removed).
pub fn parse_tuple(line: &str) -> Result<ExponentTuple> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 6 {
        return Err(Error::Parse(format!(
            "expected 6 fields, found {}: {line:?}",
            fields.len()
        )));
    }
    let mut v = [ExtendedRational::zero(); 6];
    for (slot, f) in v.iter_mut().zip(&fields) {
        *slot = parse_extended(f)?;
    }
    Ok(ExponentTuple::from_array(v))
}

/// Parse a whole file, returning `(line number, tuple)` pairs.
pub fn parse_tuple_file(text: &str) -> Result<Vec<(usize, ExponentTuple)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let t = parse_tuple(line).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
        out.push((i + 1, t));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn er(p: i64, d: i64, kp: i64, kd: i64) -> ExtendedRational {
        ExtendedRational::from_parts(p, d, kp, kd)
    }

    #[test]
    fn field_forms() {
        assert_eq!(parse_extended("1/4").unwrap(), er(1, 4, 0, 1));
        assert_eq!(parse_extended("-3").unwrap(), er(-3, 1, 0, 1));
        assert_eq!(parse_extended("1/4-ε").unwrap(), er(1, 4, -1, 1));
        assert_eq!(parse_extended("-1/4-2ε").unwrap(), er(-1, 4, -2, 1));
        assert_eq!(parse_extended("1/2+eps").unwrap(), er(1, 2, 1, 1));
        assert_eq!(parse_extended("1/4+1/4ε").unwrap(), er(1, 4, 1, 4));
        assert_eq!(parse_extended("ε").unwrap(), er(0, 1, 1, 1));
        assert_eq!(parse_extended("-2eps").unwrap(), er(0, 1, -2, 1));
        assert!(parse_extended("1/0").is_err());
        assert!(parse_extended("x").is_err());
    }

    #[test]
    fn display_round_trips() {
        for v in [
            er(1, 4, -1, 1),
            er(-1, 2, 2, 1),
            er(0, 1, -1, 4),
            er(3, 1, 0, 1),
            er(0, 1, 1, 1),
        ] {
            assert_eq!(parse_extended(&v.to_string()).unwrap(), v);
        }
    }

    #[test]
    fn file_with_comments() {
        let text = "# header\n1/4-ε 3/10 3/10 -1/4-ε 1/2+ε 1/2+ε  # mid\n\n0 0 0 1/2 1/2 1/2\n";
        let t = parse_tuple_file(text).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].0, 2);
        assert!(parse_tuple_file("1 2 3").is_err());
    }
}
