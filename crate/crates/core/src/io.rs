//! Serialization: grid functions as CSV (`t,value` rows) and JSON
//! (`{base, values[]}`), kernel dumps, and report rendering.
//!
//! All floating-point output uses 17 significant digits, so emitted numbers
//! round-trip bit-exactly and downstream diffs are byte-stable. JSON objects
//! are written with a fixed field order for the same reason.

use serde::Deserialize;

use crate::bvp::{NonexistenceReport, Spectrum, VerificationReport};
use crate::calculus::GridFunction;
use crate::error::{Error, Result};
use crate::greens::{ClosedFormBounds, GreensKernel, KernelStats};
use crate::mittag::ZeroExclusionReport;

/// Render an `f64` with 17 significant digits (`{:.16e}`), enough to
/// reconstruct the exact bit pattern on parse.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `"key":value` pairs joined into a JSON object, in the given order.
pub fn json_object(fields: &[(&str, String)]) -> String {
    let body: Vec<String> = fields.iter().map(|(k, v)| format!("\"{k}\":{v}")).collect();
    format!("{{{}}}", body.join(","))
}

/// JSON array from rendered elements.
pub fn json_array(items: impl IntoIterator<Item = String>) -> String {
    let body: Vec<String> = items.into_iter().collect();
    format!("[{}]", body.join(","))
}

fn json_str(s: &str) -> String {
    // field content here is alphanumeric plus underscores; no escapes needed
    format!("\"{s}\"")
}

// ---------------------------------------------------------------------------
// GridFunction
// ---------------------------------------------------------------------------

/// CSV rows `t,value`, one grid point per line, 17-digit values.
pub fn grid_to_csv(u: &GridFunction) -> String {
    let mut out = String::new();
    for (t, v) in u.iter() {
        out.push_str(&format!("{t},{}\n", fmt_f64(v)));
    }
    out
}

/// Parse CSV rows `t,value`. Rows may arrive in any order; duplicate or
/// missing interior `t` is an error.
pub fn grid_from_csv(text: &str) -> Result<GridFunction> {
    let mut rows: Vec<(i64, f64)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (ts, vs) = line
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("line {}: expected `t,value`", lineno + 1)))?;
        let t: i64 = ts
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad index {ts:?}", lineno + 1)))?;
        let v: f64 = vs
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad value {vs:?}", lineno + 1)))?;
        rows.push((t, v));
    }
    if rows.is_empty() {
        return Err(Error::Parse("no data rows".into()));
    }
    rows.sort_by_key(|r| r.0);
    for w in rows.windows(2) {
        if w[1].0 == w[0].0 {
            return Err(Error::Parse(format!("duplicate grid point t = {}", w[0].0)));
        }
        if w[1].0 != w[0].0 + 1 {
            return Err(Error::Parse(format!(
                "gap in grid between t = {} and {}",
                w[0].0, w[1].0
            )));
        }
    }
    GridFunction::new(rows[0].0, rows.into_iter().map(|r| r.1).collect())
}

#[derive(Deserialize)]
struct GridJson {
    base: i64,
    values: Vec<f64>,
}

/// JSON `{"base":…,"values":[…]}` with 17-digit values.
pub fn grid_to_json(u: &GridFunction) -> String {
    json_object(&[
        ("base", u.base().to_string()),
        ("values", json_array(u.values().iter().map(|&v| fmt_f64(v)))),
    ])
}

/// Parse JSON `{base, values[]}`.
pub fn grid_from_json(text: &str) -> Result<GridFunction> {
    let parsed: GridJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("grid JSON: {e}")))?;
    GridFunction::new(parsed.base, parsed.values)
}

/// Parse a grid function from CSV or JSON text (sniffed from the leading
/// character) and validate its base and length.
pub fn parse_grid(text: &str, expected_base: i64, expected_len: usize) -> Result<GridFunction> {
    let trimmed = text.trim_start();
    let grid = if trimmed.starts_with('{') {
        grid_from_json(text)?
    } else {
        grid_from_csv(text)?
    };
    if grid.base() != expected_base || grid.len() != expected_len {
        return Err(Error::ShapeMismatch(format!(
            "expected grid based at {expected_base} with {expected_len} points, got base {} with \
             {} points",
            grid.base(),
            grid.len()
        )));
    }
    Ok(grid)
}

// ---------------------------------------------------------------------------
// Kernel
// ---------------------------------------------------------------------------

/// CSV matrix: header row of s-indices (first cell `t`), then one row per
/// grid point `t` with the kernel entries.
pub fn kernel_to_csv(k: &GreensKernel) -> String {
    let mut out = String::from("t");
    for s in k.s_start()..=k.s_end() {
        out.push_str(&format!(",{s}"));
    }
    out.push('\n');
    for t in k.t_start()..=k.t_end() {
        out.push_str(&t.to_string());
        for v in k.row(t) {
            out.push_str(&format!(",{}", fmt_f64(*v)));
        }
        out.push('\n');
    }
    out
}

/// JSON `{kind, a, b, alpha, entries[[…]]}`.
pub fn kernel_to_json(k: &GreensKernel) -> String {
    let rows = (k.t_start()..=k.t_end()).map(|t| json_array(k.row(t).iter().map(|&v| fmt_f64(v))));
    json_object(&[
        ("kind", json_str(k.kind().as_str())),
        ("a", k.domain().a().to_string()),
        ("b", k.domain().b().to_string()),
        ("alpha", fmt_f64(k.alpha())),
        ("entries", json_array(rows)),
    ])
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// `{min, max, argmax{t,s}, rowsum_max, argmax_row}`.
pub fn stats_to_json(st: &KernelStats) -> String {
    json_object(&[
        ("min", fmt_f64(st.min)),
        ("max", fmt_f64(st.max)),
        (
            "argmax",
            json_object(&[
                ("t", st.argmax.0.to_string()),
                ("s", st.argmax.1.to_string()),
            ]),
        ),
        ("rowsum_max", fmt_f64(st.rowsum_max)),
        ("argmax_row", st.argmax_row.to_string()),
    ])
}

/// `{max, rowsum_max}`.
pub fn bounds_to_json(cb: &ClosedFormBounds) -> String {
    json_object(&[
        ("max", fmt_f64(cb.max)),
        ("rowsum_max", fmt_f64(cb.rowsum_max)),
    ])
}

/// `{residual_interior_max, residual_at_a2, predicted_residual_at_a2,
/// bc_values{…}, pass}`.
pub fn verification_to_json(rep: &VerificationReport) -> String {
    let bc: Vec<(&str, String)> = rep
        .bc_values
        .iter()
        .map(|(k, v)| (k.as_str(), fmt_f64(*v)))
        .collect();
    json_object(&[
        ("residual_interior_max", fmt_f64(rep.residual_interior_max)),
        ("residual_at_a2", fmt_f64(rep.residual_at_a2)),
        (
            "predicted_residual_at_a2",
            fmt_f64(rep.predicted_residual_at_a2),
        ),
        ("bc_values", json_object(&bc)),
        ("pass", rep.pass.to_string()),
    ])
}

/// `{kind, a, b, alpha, eigenvalues[{re,im}], eigen_bound, min_abs_lambda}`.
pub fn spectrum_to_json(s: &Spectrum, eigen_bound: f64) -> String {
    let eigs = s
        .eigenvalues
        .iter()
        .map(|l| json_object(&[("re", fmt_f64(l.re)), ("im", fmt_f64(l.im))]));
    json_object(&[
        ("kind", json_str(s.kind.as_str())),
        ("a", s.domain.a().to_string()),
        ("b", s.domain.b().to_string()),
        ("alpha", fmt_f64(s.alpha)),
        ("eigenvalues", json_array(eigs)),
        ("eigen_bound", fmt_f64(eigen_bound)),
        ("min_abs_lambda", fmt_f64(s.min_abs_lambda())),
    ])
}

/// `{kind, alpha, n, radius, samples, min_abs_value, sign_changes}`.
pub fn scan_to_json(rep: &ZeroExclusionReport) -> String {
    json_object(&[
        ("kind", json_str(rep.kind.as_str())),
        ("alpha", fmt_f64(rep.alpha)),
        ("n", rep.n.to_string()),
        ("radius", fmt_f64(rep.radius)),
        ("samples", rep.samples.to_string()),
        ("min_abs_value", fmt_f64(rep.min_abs_value)),
        ("sign_changes", rep.sign_changes.to_string()),
    ])
}

/// `{bound, total, guaranteed_no_nontrivial}`.
pub fn nonexistence_to_json(rep: &NonexistenceReport) -> String {
    json_object(&[
        ("bound", fmt_f64(rep.bound)),
        ("total", fmt_f64(rep.total)),
        (
            "guaranteed_no_nontrivial",
            rep.guaranteed_no_nontrivial.to_string(),
        ),
    ])
}
