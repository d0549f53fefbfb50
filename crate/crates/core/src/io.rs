//! Plain-text formats.
//!
//! An element of `F_q` is written as its `k` coordinates in the basis
//! `1, xi, ..., xi^(k-1)`, separated by commas (`3`, `1,2`). Elements of
//! `F_{q^2}` (unitary data) use the `2k` coordinates in powers of `zeta`.
//!
//! A matrix file starts with `rows cols`, followed by one line per row with
//! entries separated by whitespace. A form file starts with
//! `kind d GF(p^k)` and is followed by the `d` rows of the defining matrix
//! (the upper triangular `M` for quadratic forms). Blank lines and lines
//! starting with `#` are ignored everywhere.

use crate::error::{Error, Result};
use crate::ff::{Elt, FieldCtx};
use crate::forms::{Form, FormKind};
use crate::la::Matrix;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn format_elt(f: &FieldCtx, a: Elt, big: bool) -> String {
    let c = if big {
        f.coeffs_q2(a)
    } else {
        f.coeffs_q(a).expect("element of the subfield")
    };
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Parses an element; `line` is only used for error messages.
pub fn parse_elt(f: &FieldCtx, s: &str, big: bool, line: usize) -> Result<Elt> {
    let n = if big { 2 * f.k() as usize } else { f.k() as usize };
    let mut coeffs = Vec::with_capacity(n);
    for part in s.split(',') {
        let v: u64 = part
            .trim()
            .parse()
            .map_err(|_| perr(line, format!("`{s}` is not a field element")))?;
        if v >= f.p() {
            return Err(perr(line, format!("coefficient {v} is not below p = {}", f.p())));
        }
        coeffs.push(v);
    }
    if coeffs.len() != n {
        return Err(perr(line, format!("expected {n} coefficients in `{s}`, found {}", coeffs.len())));
    }
    if big {
        f.from_coeffs_q2(&coeffs)
    } else {
        f.from_coeffs_q(&coeffs)
    }
    .map_err(|e| perr(line, e.to_string()))
}

/// Parses `GF(p^k)`, `GF(q)` or a bare prime power `q`.
pub fn parse_field(s: &str) -> Result<(u64, u32)> {
    let bad = || perr(0, format!("`{s}` is not a field of the form GF(p^k)"));
    let t = s.trim();
    let inner = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(t);
    if let Some((p, k)) = inner.split_once('^') {
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let k: u32 = k.trim().parse().map_err(|_| bad())?;
        return Ok((p, k));
    }
    let q: u64 = inner.parse().map_err(|_| bad())?;
    if q < 2 {
        return Err(bad());
    }
    let p = (2..=q).find(|d| q % d == 0).expect("q >= 2");
    let (mut r, mut k) = (q, 0u32);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    if r != 1 {
        return Err(perr(0, format!("{q} is not a prime power")));
    }
    Ok((p, k))
}

// non-comment lines with their 1-based numbers
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn format_matrix(f: &FieldCtx, m: &Matrix, big: bool) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|&a| format_elt(f, a, big)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn parse_rows<'a>(
    f: &FieldCtx,
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    rows: usize,
    cols: usize,
    big: bool,
    last: usize,
) -> Result<Matrix> {
    let mut data = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let (no, l) = lines
            .next()
            .ok_or_else(|| perr(last, format!("expected {rows} rows, found {r}")))?;
        let entries: Vec<&str> = l.split_whitespace().collect();
        if entries.len() != cols {
            return Err(perr(no, format!("expected {cols} entries, found {}", entries.len())));
        }
        for e in entries {
            data.push(parse_elt(f, e, big, no)?);
        }
    }
    Matrix::from_vec(rows, cols, data)
}

pub fn parse_matrix(f: &FieldCtx, text: &str, big: bool) -> Result<Matrix> {
    let last = text.lines().count().max(1);
    let mut lines = content_lines(text);
    let (no, header) = lines.next().ok_or_else(|| perr(1, "empty matrix file"))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| perr(no, format!("bad matrix header `{header}`"))))
        .collect::<Result<_>>()?;
    let [rows, cols] = dims[..] else {
        return Err(perr(no, format!("matrix header must be `rows cols`, got `{header}`")));
    };
    let m = parse_rows(f, &mut lines, rows, cols, big, last)?;
    if let Some((no, _)) = lines.next() {
        return Err(perr(no, "trailing data after matrix"));
    }
    Ok(m)
}

/// Header of a form file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormHeader {
    pub kind: FormKind,
    pub d: usize,
    pub p: u64,
    pub k: u32,
}

pub fn read_form_header(text: &str) -> Result<FormHeader> {
    let (no, header) = content_lines(text).next().ok_or_else(|| perr(1, "empty form file"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let [kind, d, field] = parts[..] else {
        return Err(perr(no, format!("form header must be `kind d GF(p^k)`, got `{header}`")));
    };
    let kind: FormKind = kind.parse().map_err(|_| perr(no, format!("unknown form kind `{kind}`")))?;
    let d: usize = d.parse().map_err(|_| perr(no, format!("bad dimension `{d}`")))?;
    let (p, k) = parse_field(field).map_err(|e| match e {
        Error::Parse { msg, .. } => perr(no, msg),
        e => e,
    })?;
    Ok(FormHeader { kind, d, p, k })
}

pub fn parse_form(f: &FieldCtx, text: &str) -> Result<Form> {
    let h = read_form_header(text)?;
    let last = text.lines().count().max(1);
    let mut lines = content_lines(text);
    let (hno, _) = lines.next().expect("header was read");
    if (h.p, h.k) != (f.p(), f.k()) {
        return Err(perr(hno, format!("form is over GF({}^{}), expected {}", h.p, h.k, f.header())));
    }
    let big = h.kind == FormKind::Unitary;
    let m = parse_rows(f, &mut lines, h.d, h.d, big, last)?;
    if let Some((no, _)) = lines.next() {
        return Err(perr(no, "trailing data after form"));
    }
    Form::new(f, h.kind, m).map_err(|e| perr(hno, e.to_string()))
}

pub fn format_form(f: &FieldCtx, form: &Form) -> String {
    let big = form.kind() == FormKind::Unitary;
    let mut out = format!("{} {} {}\n", form.kind().name(), form.dim(), f.header());
    let m = form.matrix();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|&a| format_elt(f, a, big)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
