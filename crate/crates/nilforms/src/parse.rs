//! Textual input formats: structure-equation files, forms, metrics.
//!
//! Grammar. A structure file is line-oriented; `#` starts a comment.
//!   dim = <n>
//!   d<i> = <term> [+|- <term>]...        (omitted generators are closed)
//!   metric = diag(<scalar>,...)          (or: metric = matrix [r1; r2; ...])
//! A term is `<coeff>*<monomial>`, a bare monomial, or a bare coefficient;
//! a coefficient is `(<rat>,<rat>)` meaning re + im*i, or a scalar in the
//! `a/b+c/d*i` syntax; a monomial is `^`-joined factors `e<j>` / `~e<j>`.
//! Factor order is free (the sign is absorbed), but a repeated factor in one
//! term is rejected as suspicious input.

use crate::error::ParseError;
use crate::form::{Form, Monomial};
use crate::metric::HermitianMetric;
use crate::scalar::Q;
use crate::structure::StructurePresentation;

#[derive(Debug)]
pub struct ParsedStructure {
    pub presentation: StructurePresentation,
    pub metric: Option<HermitianMetric>,
}

pub fn parse_structure_text(text: &str) -> Result<ParsedStructure, ParseError> {
    let mut dim: Option<usize> = None;
    let mut d_lines: Vec<(usize, usize, String)> = Vec::new(); // (lineno, index, rhs)
    let mut metric_line: Option<(usize, String)> = None;

    for (lineno0, raw) in text.lines().enumerate() {
        let lineno = lineno0 + 1;
        let line = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| ParseError::new(lineno, 1, "expected `name = value`"))?;
        let lhs = lhs.trim();
        let rhs = rhs.trim();
        if lhs == "dim" {
            if dim.is_some() {
                return Err(ParseError::new(lineno, 1, "duplicate dim line"));
            }
            let n: usize = rhs
                .parse()
                .map_err(|_| ParseError::new(lineno, 1, format!("bad dimension `{rhs}`")))?;
            if n == 0 || n > crate::form::MAX_DIM {
                return Err(ParseError::new(
                    lineno,
                    1,
                    format!("dimension must lie in 1..={}", crate::form::MAX_DIM),
                ));
            }
            dim = Some(n);
        } else if let Some(istr) = lhs.strip_prefix('d') {
            let i: usize = istr
                .parse()
                .map_err(|_| ParseError::new(lineno, 1, format!("unknown identifier `{lhs}`")))?;
            d_lines.push((lineno, i, rhs.to_string()));
        } else if lhs == "metric" {
            if metric_line.is_some() {
                return Err(ParseError::new(lineno, 1, "duplicate metric line"));
            }
            metric_line = Some((lineno, rhs.to_string()));
        } else {
            return Err(ParseError::new(lineno, 1, format!("unknown identifier `{lhs}`")));
        }
    }

    let n = dim.ok_or_else(|| ParseError::new(1, 1, "missing `dim = <n>` line"))?;
    let mut d_eta: Vec<Form> = (0..n).map(|_| Form::zero(n)).collect();
    let mut seen = vec![false; n];
    for (lineno, i, rhs) in d_lines {
        if i == 0 || i > n {
            return Err(ParseError::new(
                lineno,
                1,
                format!("index {i} inconsistent with dim = {n}"),
            ));
        }
        if seen[i - 1] {
            return Err(ParseError::new(lineno, 1, format!("duplicate line for d{i}")));
        }
        seen[i - 1] = true;
        let f = parse_form_at(n, &rhs, lineno)?;
        for (m, _) in f.terms() {
            if m.degree() != 2 {
                return Err(ParseError::new(
                    lineno,
                    1,
                    "structure equations must be sums of degree-2 monomials",
                ));
            }
        }
        d_eta[i - 1] = f;
    }
    let presentation = StructurePresentation::new(n, d_eta)
        .map_err(|e| ParseError::new(1, 1, e.to_string()))?;
    let metric = match metric_line {
        None => None,
        Some((lineno, rhs)) => Some(
            parse_metric(n, &rhs).map_err(|mut e| {
                e.line = lineno;
                e
            })?,
        ),
    };
    Ok(ParsedStructure { presentation, metric })
}

/// Split on top-level `+`/`-` (not inside parentheses, not the leading sign,
/// not inside a scalar like `1+2*i`' s... every `+`/`-` outside parens is a
/// term boundary except at position 0).
fn split_terms(s: &str) -> Vec<(i32, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut sign = 1i32;
    let mut at_start = true;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 && !at_start => {
                if !cur.trim().is_empty() {
                    out.push((sign, cur.trim().to_string()));
                }
                cur = String::new();
                sign = if ch == '-' { -1 } else { 1 };
            }
            '-' if depth == 0 && at_start => {
                sign = -sign;
            }
            '+' if depth == 0 && at_start => {}
            _ => {
                if !ch.is_whitespace() {
                    at_start = false;
                }
                cur.push(ch);
            }
        }
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    }
    out
}

/// A coefficient token: `(re,im)` tuple or the scalar display syntax.
fn parse_coeff(s: &str) -> Result<Q, String> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let (re, im) = inner
            .split_once(',')
            .ok_or_else(|| format!("expected `(re,im)` in `{s}`"))?;
        let re: Q = re.trim().parse().map_err(|e| format!("{e}"))?;
        let im: Q = im.trim().parse().map_err(|e| format!("{e}"))?;
        if !re.is_real() || !im.is_real() {
            return Err(format!("tuple parts must be rational in `{s}`"));
        }
        Ok(Q::new(re.re, im.re))
    } else {
        s.parse::<Q>()
    }
}

pub fn parse_monomial(s: &str) -> Result<Monomial, ParseError> {
    let s = s.trim();
    if s == "1" {
        return Ok(Monomial::ONE);
    }
    let factors = parse_factors(s, 1)?;
    let mut u = 0u32;
    let mut b = 0u32;
    for (i, barred) in factors {
        let bit = 1u32 << (i - 1);
        if barred {
            b |= bit;
        } else {
            u |= bit;
        }
    }
    Ok(Monomial { unbarred: u, barred: b })
}

fn parse_factors(s: &str, lineno: usize) -> Result<Vec<(usize, bool)>, ParseError> {
    let mut factors = Vec::new();
    for piece in s.split('^') {
        let piece = piece.trim();
        let (barred, rest) = match piece.strip_prefix('~') {
            Some(r) => (true, r),
            None => (false, piece),
        };
        let idx = rest
            .strip_prefix('e')
            .ok_or_else(|| ParseError::new(lineno, 1, format!("bad factor `{piece}`")))?;
        let i: usize = idx
            .parse()
            .map_err(|_| ParseError::new(lineno, 1, format!("bad factor index `{piece}`")))?;
        if i == 0 {
            return Err(ParseError::new(lineno, 1, "factor indices are 1-based"));
        }
        if factors.contains(&(i, barred)) {
            return Err(ParseError::new(
                lineno,
                1,
                format!("repeated factor `{piece}` makes the term zero; suspicious input"),
            ));
        }
        factors.push((i, barred));
    }
    Ok(factors)
}

pub fn parse_form(n: usize, s: &str) -> Result<Form, ParseError> {
    parse_form_at(n, s, 1)
}

fn parse_form_at(n: usize, s: &str, lineno: usize) -> Result<Form, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseError::new(lineno, 1, "empty form"));
    }
    if s == "0" {
        return Ok(Form::zero(n));
    }
    let mut acc = Form::zero(n);
    for (sign, term) in split_terms(s) {
        // Separate an optional coefficient from an optional monomial at the
        // first top-level `*` that is followed by a factor.
        let bytes = term.as_bytes();
        let mut depth = 0;
        let mut split_at: Option<usize> = None;
        for k in 0..bytes.len() {
            match bytes[k] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'*' if depth == 0 && k + 1 < bytes.len() => {
                    let c = bytes[k + 1];
                    if c == b'e' || c == b'~' {
                        split_at = Some(k);
                        break;
                    }
                }
                _ => {}
            }
        }
        let (coeff, mono_str): (Q, Option<&str>) = match split_at {
            Some(k) => {
                let c = parse_coeff(&term[..k])
                    .map_err(|e| ParseError::new(lineno, k.max(1), e))?;
                (c, Some(term[k + 1..].trim()))
            }
            None => {
                if term.starts_with('e') || term.starts_with('~') {
                    (Q::one(), Some(term.as_str()))
                } else {
                    let c = parse_coeff(&term).map_err(|e| ParseError::new(lineno, 1, e))?;
                    (c, None)
                }
            }
        };
        let coeff = if sign < 0 { -coeff } else { coeff };
        match mono_str {
            None => {
                acc.add_term(Monomial::ONE, coeff);
            }
            Some(ms) => {
                let factors = parse_factors(ms, lineno)?;
                for &(i, _) in &factors {
                    if i > n {
                        return Err(ParseError::new(
                            lineno,
                            1,
                            format!("index e{i} out of range for dim = {n}"),
                        ));
                    }
                }
                let piece = Form::from_factors(n, coeff, &factors);
                acc = acc.add(&piece);
            }
        }
    }
    Ok(acc)
}

/// Metric syntax: `id`, `diag(s1,...,sn)`, or `matrix [r1c1, r1c2; r2c1, ...]`.
pub fn parse_metric(n: usize, s: &str) -> Result<HermitianMetric, ParseError> {
    let s = s.trim();
    if s == "id" {
        return Ok(HermitianMetric::identity(n));
    }
    if let Some(inner) = s.strip_prefix("diag(").and_then(|t| t.strip_suffix(')')) {
        let entries = split_commas(inner);
        if entries.len() != n {
            return Err(ParseError::new(
                1,
                1,
                format!("diag needs {n} entries, got {}", entries.len()),
            ));
        }
        let mut diag = Vec::new();
        for e in entries {
            diag.push(parse_coeff(&e).map_err(|e| ParseError::new(1, 1, e))?);
        }
        return HermitianMetric::diagonal(diag).map_err(|e| ParseError::new(1, 1, e.to_string()));
    }
    if let Some(inner) = s.strip_prefix("matrix").map(str::trim) {
        let inner = inner
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| ParseError::new(1, 1, "expected matrix [ ... ]"))?;
        let mut rows = Vec::new();
        for row in inner.split(';') {
            let mut out_row = Vec::new();
            for e in split_commas(row) {
                out_row.push(parse_coeff(&e).map_err(|e| ParseError::new(1, 1, e))?);
            }
            rows.push(out_row);
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(ParseError::new(1, 1, format!("matrix must be {n}x{n}")));
        }
        return HermitianMetric::new(rows).map_err(|e| ParseError::new(1, 1, e.to_string()));
    }
    Err(ParseError::new(1, 1, format!("bad metric syntax `{s}`")))
}

/// Comma split that respects parentheses (for `(re,im)` entries).
fn split_commas(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur = String::new();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_simple_structure_file() {
        let text = "# a three-dimensional example\n\
                    dim = 3\n\
                    d3 = (0,1)*e1^~e1\n";
        let parsed = parse_structure_text(text).unwrap();
        let pres = parsed.presentation;
        assert_eq!(pres.dim(), 3);
        assert_eq!(
            pres.d_generator(3),
            &Form::monomial(3, Q::i(), &[1], &[1])
        );
        assert!(pres.d_generator(1).is_zero());
        assert!(parsed.metric.is_none());
    }

    #[test]
    fn kodaira_product_file_matches_catalog() {
        let text = "dim = 4\nd2 = e1^~e1\nd4 = e3^~e3\nmetric = diag(1,1,1,1)\n";
        let parsed = parse_structure_text(text).unwrap();
        let from_catalog = crate::catalog::build("kt_kt", &[("A", "1"), ("B", "1")]).unwrap();
        for i in 1..=4 {
            assert_eq!(parsed.presentation.d_generator(i), from_catalog.d_generator(i));
        }
        assert!(parsed.metric.is_some());
    }

    #[test]
    fn repeated_factor_is_flagged() {
        let text = "dim = 2\nd2 = (1,0)*e1^e1\n";
        let err = parse_structure_text(text).unwrap_err();
        assert!(err.to_string().contains("repeated factor"), "{err}");
        assert_eq!(err.line, 2);
    }

    #[test]
    fn unknown_identifier_and_range_errors() {
        assert!(parse_structure_text("dim = 2\nfoo = 1\n").is_err());
        assert!(parse_structure_text("dim = 2\nd5 = e1^e2\n").is_err());
        let err = parse_structure_text("dim = 2\nd2 = e1^e3\n").unwrap_err();
        assert!(err.to_string().contains("out of range"), "{err}");
        // degree must be 2
        assert!(parse_structure_text("dim = 2\nd2 = e1\n").is_err());
    }

    #[test]
    fn form_roundtrip_through_display() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        for _ in 0..300 {
            let n = rng.gen_range(1..=4);
            let mut f = Form::zero(n);
            for p in 0..=n {
                for q in 0..=n {
                    for m in crate::form::basis_monomials(n, p, q) {
                        if rng.gen_bool(0.12) {
                            f.add_term(
                                m,
                                Q::from_parts(
                                    rng.gen_range(-9..=9),
                                    rng.gen_range(1..=4),
                                    rng.gen_range(-9..=9),
                                    rng.gen_range(1..=4),
                                ),
                            );
                        }
                    }
                }
            }
            let s = f.to_string();
            let back = parse_form(n, &s).unwrap();
            assert_eq!(back, f, "roundtrip of `{s}`");
        }
    }

    #[test]
    fn signed_and_unsorted_terms() {
        // ~e2^e1 = -e1^~e2, and a leading minus flips it back.
        let f = parse_form(2, "-~e2^e1").unwrap();
        assert_eq!(f, Form::monomial(2, Q::one(), &[1], &[2]));
        let g = parse_form(2, "1/2 - 2*e1^e2 + (0,-1)*e2^~e1").unwrap();
        let expected = Form::constant(2, Q::from_ratio(1, 2))
            .add(&Form::monomial(2, Q::from_int(-2), &[1, 2], &[]))
            .add(&Form::monomial(2, -Q::i(), &[2], &[1]));
        assert_eq!(g, expected);
    }

    #[test]
    fn metric_syntaxes() {
        assert!(parse_metric(2, "id").is_ok());
        assert!(parse_metric(2, "diag(1,1/2)").is_ok());
        assert!(parse_metric(2, "diag(1)").is_err());
        let m = parse_metric(2, "matrix [2, (0,1); (0,-1), 1]").unwrap();
        assert_eq!(m.entry(0, 1), &Q::i());
        // not positive definite
        assert!(parse_metric(2, "matrix [1, 2; 2, 1]").is_err());
        // irrational or malformed coefficients are rejected
        assert!(parse_metric(2, "diag(1.5, 1)").is_err());
        assert!(parse_metric(2, "diag(sqrt2, 1)").is_err());
    }
}
