use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SdpError};
use crate::problem::{SdpProblem, SparseRow};
use crate::symmat::SymMatrix;

/// `[i, j, value]`, one-based, `i <= j`, unscaled value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(usize, usize, f64)", into = "(usize, usize, f64)")]
struct Entry {
    i: usize,
    j: usize,
    value: f64,
}

impl TryFrom<(usize, usize, f64)> for Entry {
    type Error = String;

    fn try_from((i, j, value): (usize, usize, f64)) -> std::result::Result<Self, String> {
        if i == 0 || j == 0 {
            return Err(format!("entry ({i}, {j}): indices are one-based"));
        }
        if i > j {
            return Err(format!("entry ({i}, {j}) is below the diagonal; use i <= j"));
        }
        Ok(Entry { i, j, value })
    }
}

impl From<Entry> for (usize, usize, f64) {
    fn from(e: Entry) -> Self {
        (e.i, e.j, e.value)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Constraint {
    entries: Vec<Entry>,
    rhs: f64,
}

fn default_sign() -> f64 {
    1.0
}

fn is_default_sign(s: &f64) -> bool {
    *s == 1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    n: usize,
    #[serde(default = "default_sign", skip_serializing_if = "is_default_sign")]
    objective_sign: f64,
    objective: Vec<Entry>,
    #[serde(default)]
    equalities: Vec<Constraint>,
    #[serde(default)]
    inequalities: Vec<Constraint>,
}

fn semantic_error(message: String) -> SdpError {
    SdpError::parse(0, message)
}

fn zero_based(n: usize, entries: &[Entry], context: &str) -> Result<Vec<(usize, usize, f64)>> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(entries.len());
    for e in entries {
        if e.j > n {
            return Err(semantic_error(format!(
                "{context}: entry ({}, {}) outside a {n}x{n} matrix",
                e.i, e.j
            )));
        }
        if !seen.insert((e.i, e.j)) {
            log::warn!("{context}: duplicate entry ({}, {}); values summed", e.i, e.j);
        }
        out.push((e.i - 1, e.j - 1, e.value));
    }
    Ok(out)
}

fn rows(n: usize, cons: &[Constraint], kind: &str) -> Result<(Vec<SparseRow>, Vec<f64>)> {
    let mut a = Vec::with_capacity(cons.len());
    let mut b = Vec::with_capacity(cons.len());
    for (k, c) in cons.iter().enumerate() {
        let ents = zero_based(n, &c.entries, &format!("{kind}[{k}]"))?;
        a.push(SparseRow::from_entries(n, &ents)?);
        b.push(c.rhs);
    }
    Ok((a, b))
}

/// Parses the JSON problem document:
///
/// ```json
/// { "name": "trace2", "n": 2,
///   "objective": [[1, 1, 1.0], [2, 2, 1.0]],
///   "equalities": [{ "entries": [[1, 1, 1.0], [2, 2, 1.0]], "rhs": 1.0 }],
///   "inequalities": [{ "entries": [[1, 2, 1.0]], "rhs": 0.5 }] }
/// ```
///
/// An entry `[i, j, v]` with `i < j` sets both `(i, j)` and `(j, i)` to `v`.
/// Syntax errors report the offending line; range errors report the
/// constraint path with line 0.
pub fn parse_extended(text: &str) -> Result<SdpProblem> {
    let doc: Document = serde_json::from_str(text).map_err(|e| SdpError::parse(e.line(), e.to_string()))?;
    let n = doc.n;
    if n == 0 {
        return Err(semantic_error("n must be positive".into()));
    }
    let mut c = SymMatrix::zeros(n);
    for (i, j, v) in zero_based(n, &doc.objective, "objective")? {
        c.set(i, j, c.get(i, j) + v);
    }
    let (a, b) = rows(n, &doc.equalities, "equalities")?;
    let (g, h) = rows(n, &doc.inequalities, "inequalities")?;
    if doc.objective_sign != 1.0 && doc.objective_sign != -1.0 {
        return Err(semantic_error(format!("objective_sign must be 1 or -1, got {}", doc.objective_sign)));
    }
    let name = doc.name.unwrap_or_else(|| "problem".into());
    Ok(SdpProblem::new(name, c, a, b, g, h)?.with_objective_sign(doc.objective_sign))
}

fn one_based(ents: Vec<(usize, usize, f64)>) -> Vec<Entry> {
    ents.into_iter()
        .map(|(i, j, value)| Entry { i: i + 1, j: j + 1, value })
        .collect()
}

/// Serializes a problem as a pretty-printed extended document.
pub fn write_extended(prob: &SdpProblem) -> Result<String> {
    let n = prob.n();
    let c = prob.c();
    let mut objective = Vec::new();
    for j in 0..n {
        for i in 0..=j {
            let v = c.get(i, j);
            if v != 0.0 {
                objective.push(Entry { i: i + 1, j: j + 1, value: v });
            }
        }
    }
    let cons = |rows: &[SparseRow], rhs: &[f64]| -> Vec<Constraint> {
        rows.iter()
            .zip(rhs)
            .map(|(r, &rhs)| Constraint {
                entries: one_based(r.entries(n)),
                rhs,
            })
            .collect()
    };
    let doc = Document {
        name: Some(prob.name().to_string()),
        n,
        objective_sign: prob.objective_sign(),
        objective,
        equalities: cons(prob.a(), prob.b()),
        inequalities: cons(prob.g(), prob.h()),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_pinned_document() {
        let text = r#"{"n": 2, "objective": [[1,1,1],[2,2,1]],
            "equalities": [{"entries": [[1,1,1],[2,2,1]], "rhs": 1}]}"#;
        let p = parse_extended(text).unwrap();
        assert_eq!(p.c(), &SymMatrix::identity(2));
        assert_eq!(p.a()[0].to_sym(2), SymMatrix::identity(2));
        assert_eq!((p.m(), p.p()), (1, 0));
    }

    #[test]
    fn off_diagonal_inequality_is_symmetrized() {
        let text = r#"{"n": 2, "objective": [],
            "equalities": [{"entries": [[1,1,1]], "rhs": 1}],
            "inequalities": [{"entries": [[1,2,1]], "rhs": 0.5}]}"#;
        let p = parse_extended(text).unwrap();
        let g = p.g()[0].to_sym(2);
        assert_eq!(g.get(0, 1), 1.0);
        assert_eq!(g.get(1, 0), 1.0);
        assert_eq!(g.get(0, 0), 0.0);
        assert_eq!(p.h(), &[0.5]);
    }

    #[test]
    fn rejects_lower_triangle_and_range() {
        let lower = "{\"n\": 2,\n\"objective\": [[2,1,1]]}";
        match parse_extended(lower) {
            Err(SdpError::Parse { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("below the diagonal"), "{message}");
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_extended(r#"{"n": 2, "objective": [[1,3,1]], "equalities": [{"entries": [[1,1,1]], "rhs": 1}]}"#).is_err());
        assert!(parse_extended(r#"{"n": 2, "objective": [[0,1,1]]}"#).is_err());
        assert!(parse_extended("not json").is_err());
    }

    #[test]
    fn round_trip_toy() {
        let p = crate::instances::toy_mimo();
        let back = parse_extended(&write_extended(&p).unwrap()).unwrap();
        assert_eq!(back.name(), p.name());
        assert_eq!(back.c(), p.c());
        assert_eq!(back.b(), p.b());
        assert_eq!(back.h(), p.h());
        assert_eq!(back.a().len(), p.a().len());
    }
}
