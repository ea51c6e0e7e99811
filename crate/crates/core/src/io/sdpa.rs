use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Result, SdpError};
use crate::problem::{SdpProblem, SparseRow};
use crate::symmat::SymMatrix;

/// One nonzero of an SDPA sparse file. Indices are one-based as in the file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdpaEntry {
    /// `0` is the objective matrix `F0`, `1..=m` the constraint matrices.
    pub matrix: usize,
    pub block: usize,
    pub i: usize,
    pub j: usize,
    pub value: f64,
    /// Source line, for diagnostics.
    pub line: usize,
}

/// Raw contents of an SDPA sparse (`.dat-s`) file.
#[derive(Debug, Clone, PartialEq)]
pub struct SdpaFile {
    pub m_cons: usize,
    /// Negative sizes denote diagonal blocks.
    pub block_sizes: Vec<i64>,
    pub c_vec: Vec<f64>,
    pub entries: Vec<SdpaEntry>,
}

fn tokens(line: &str) -> impl Iterator<Item = &str> {
    line.split(|c: char| c.is_whitespace() || matches!(c, ',' | '{' | '}' | '(' | ')'))
        .filter(|t| !t.is_empty())
}

fn parse_real(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>()
        .or_else(|_| tok.replace(['D', 'd'], "e").parse::<f64>())
        .map_err(|_| SdpError::parse(line, format!("expected a number, found '{tok}'")))
}

fn parse_int(tok: &str, line: usize, what: &str) -> Result<i64> {
    if let Ok(v) = tok.parse::<i64>() {
        return Ok(v);
    }
    // some writers emit integers as "2.0"
    match parse_real(tok, line) {
        Ok(v) if v.fract() == 0.0 && v.abs() < 1e15 => Ok(v as i64),
        _ => Err(SdpError::parse(line, format!("expected an integer {what}, found '{tok}'"))),
    }
}

fn is_comment(line: &str) -> bool {
    let t = line.trim_start();
    t.starts_with('"') || t.starts_with('*')
}

impl SdpaFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l))
            .skip_while(|(_, l)| is_comment(l) || l.trim().is_empty())
            .filter(|(_, l)| !l.trim().is_empty());

        // The m and nblocks lines may carry trailing annotations such as "=mdim".
        let mut header_value = |what: &str| -> Result<(usize, i64)> {
            let (ln, l) = lines
                .next()
                .ok_or_else(|| SdpError::parse(0, format!("missing {what}")))?;
            let tok = tokens(l)
                .next()
                .ok_or_else(|| SdpError::parse(ln, format!("missing {what}")))?;
            Ok((ln, parse_int(tok, ln, what)?))
        };
        let (ln, m) = header_value("number of constraints")?;
        if m < 0 {
            return Err(SdpError::parse(ln, format!("negative constraint count {m}")));
        }
        let (ln, nblocks) = header_value("number of blocks")?;
        if nblocks <= 0 {
            return Err(SdpError::parse(ln, format!("block count must be positive, got {nblocks}")));
        }
        let (m, nblocks) = (m as usize, nblocks as usize);

        let mut block_sizes = Vec::with_capacity(nblocks);
        let mut last_line = ln;
        while block_sizes.len() < nblocks {
            let (ln, l) = lines
                .next()
                .ok_or_else(|| SdpError::parse(last_line, "unexpected end of file in block sizes"))?;
            last_line = ln;
            for tok in tokens(l).take(nblocks - block_sizes.len()) {
                let s = parse_int(tok, ln, "block size")?;
                if s == 0 {
                    return Err(SdpError::parse(ln, "block size 0"));
                }
                block_sizes.push(s);
            }
        }

        let mut c_vec = Vec::with_capacity(m);
        while c_vec.len() < m {
            let (ln, l) = lines
                .next()
                .ok_or_else(|| SdpError::parse(last_line, "unexpected end of file in the c vector"))?;
            last_line = ln;
            for tok in tokens(l).take(m - c_vec.len()) {
                c_vec.push(parse_real(tok, ln)?);
            }
        }

        let mut entries = Vec::new();
        for (ln, l) in lines {
            if is_comment(l) {
                continue;
            }
            let toks: Vec<&str> = tokens(l).collect();
            if toks.len() != 5 {
                return Err(SdpError::parse(ln, format!("expected 5 fields, found {}", toks.len())));
            }
            let idx = |k: usize, what: &str| -> Result<usize> {
                let v = parse_int(toks[k], ln, what)?;
                usize::try_from(v).map_err(|_| SdpError::parse(ln, format!("negative {what} {v}")))
            };
            let entry = SdpaEntry {
                matrix: idx(0, "matrix number")?,
                block: idx(1, "block number")?,
                i: idx(2, "row index")?,
                j: idx(3, "column index")?,
                value: parse_real(toks[4], ln)?,
                line: ln,
            };
            check_entry(&entry, m, &block_sizes)?;
            entries.push(entry);
        }
        Ok(SdpaFile {
            m_cons: m,
            block_sizes,
            c_vec,
            entries,
        })
    }

    /// Order of the block-diagonal embedding.
    pub fn dimension(&self) -> usize {
        self.block_sizes.iter().map(|s| s.unsigned_abs() as usize).sum()
    }

    /// Embeds all blocks into one matrix. `C = -F0` and the objective sign is
    /// `-1`, so reported objectives follow the maximization convention of the
    /// format.
    pub fn to_problem(&self, name: impl Into<String>) -> Result<SdpProblem> {
        let n = self.dimension();
        let offsets: Vec<usize> = self
            .block_sizes
            .iter()
            .scan(0usize, |acc, s| {
                let off = *acc;
                *acc += s.unsigned_abs() as usize;
                Some(off)
            })
            .collect();

        let mut seen: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
        let mut per_matrix: Vec<Vec<(usize, usize, f64)>> = vec![Vec::new(); self.m_cons + 1];
        for e in &self.entries {
            check_entry(e, self.m_cons, &self.block_sizes)?;
            if let Some(first) = seen.insert((e.matrix, e.block, e.i, e.j), e.line) {
                log::warn!(
                    "line {}: duplicate entry ({}, {}, {}, {}) first seen on line {first}; values summed",
                    e.line,
                    e.matrix,
                    e.block,
                    e.i,
                    e.j
                );
            }
            let off = offsets[e.block - 1];
            per_matrix[e.matrix].push((off + e.i - 1, off + e.j - 1, e.value));
        }

        let mut c = SymMatrix::zeros(n);
        for &(i, j, v) in &per_matrix[0] {
            c.set(i, j, c.get(i, j) - v);
        }
        let a = per_matrix[1..]
            .iter()
            .map(|ents| SparseRow::from_entries(n, ents))
            .collect::<Result<Vec<_>>>()?;
        Ok(SdpProblem::new(name, c, a, self.c_vec.clone(), vec![], vec![])?.with_objective_sign(-1.0))
    }
}

fn check_entry(e: &SdpaEntry, m: usize, block_sizes: &[i64]) -> Result<()> {
    let ln = e.line;
    if e.matrix > m {
        return Err(SdpError::parse(ln, format!("matrix number {} exceeds m = {m}", e.matrix)));
    }
    if e.block == 0 || e.block > block_sizes.len() {
        return Err(SdpError::parse(
            ln,
            format!("block number {} outside 1..={}", e.block, block_sizes.len()),
        ));
    }
    let size = block_sizes[e.block - 1];
    let dim = size.unsigned_abs() as usize;
    if e.i == 0 || e.j == 0 || e.i > dim || e.j > dim {
        return Err(SdpError::parse(
            ln,
            format!("index ({}, {}) outside block {} of size {dim}", e.i, e.j, e.block),
        ));
    }
    if e.i > e.j {
        return Err(SdpError::parse(
            ln,
            format!("entry ({}, {}) is below the diagonal; only upper-triangle entries are allowed", e.i, e.j),
        ));
    }
    if size < 0 && e.i != e.j {
        return Err(SdpError::parse(
            ln,
            format!("off-diagonal entry ({}, {}) in diagonal block {}", e.i, e.j, e.block),
        ));
    }
    if !e.value.is_finite() {
        return Err(SdpError::parse(ln, format!("non-finite value {}", e.value)));
    }
    Ok(())
}

/// Parses SDPA sparse text into a problem named `"sdpa"`.
pub fn parse_sdpa(text: &str) -> Result<SdpProblem> {
    SdpaFile::parse(text)?.to_problem("sdpa")
}

fn push_upper(out: &mut String, matrix: usize, s: &SymMatrix) {
    let n = s.n();
    for j in 0..n {
        for i in 0..=j {
            let v = s.get(i, j);
            if v != 0.0 {
                let _ = writeln!(out, "{matrix} 1 {} {} {v:e}", i + 1, j + 1);
            }
        }
    }
}

/// Writes a single-block problem without inequalities. The objective is
/// stored as `F0 = -C`, so parsing the output back gives objective sign `-1`.
pub fn write_sdpa(prob: &SdpProblem) -> Result<String> {
    if prob.p() > 0 {
        return Err(SdpError::InvalidProblem(
            "SDPA format has no inequality constraints".into(),
        ));
    }
    let n = prob.n();
    let mut out = String::new();
    let _ = writeln!(out, "\"{}", prob.name().replace(['\n', '\r'], " "));
    let _ = writeln!(out, "{} =mdim", prob.m());
    let _ = writeln!(out, "1 =nblocks");
    let _ = writeln!(out, "{n}");
    let c: Vec<String> = prob.b().iter().map(|v| format!("{v:e}")).collect();
    let _ = writeln!(out, "{}", c.join(" "));
    let mut f0 = prob.c().clone();
    f0.scale(-1.0);
    push_upper(&mut out, 0, &f0);
    for (k, row) in prob.a().iter().enumerate() {
        push_upper(&mut out, k + 1, &row.to_sym(n));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOY: &str = "\"toy problem\n1\n1\n2\n1.0\n1 1 1 1 1.0\n1 1 2 2 1.0\n";

    #[test]
    fn trace_toy() {
        let p = parse_sdpa(TOY).unwrap();
        assert_eq!((p.n(), p.m(), p.p()), (2, 1, 0));
        assert_eq!(p.c(), &SymMatrix::zeros(2));
        assert_eq!(p.a()[0].to_sym(2), SymMatrix::identity(2));
        assert_eq!(p.b(), &[1.0]);
        assert_eq!(p.objective_sign(), -1.0);
    }

    #[test]
    fn sdplib_header_annotations_and_braces() {
        let text = "* comment\n\"another\n1 =mdim\n2 =nblocks\n{2, -2}\n{3.5}\n0 1 1 2 2.0\n1 2 1 1 1.0\n1 2 2 2 1.0\n";
        let f = SdpaFile::parse(text).unwrap();
        assert_eq!(f.block_sizes, vec![2, -2]);
        assert_eq!(f.c_vec, vec![3.5]);
        let p = f.to_problem("x").unwrap();
        assert_eq!(p.n(), 4);
        assert_eq!(p.c().get(0, 1), -2.0);
        assert_eq!(p.a()[0].to_sym(4), SymMatrix::from_diagonal(&[0.0, 0.0, 1.0, 1.0]));
    }

    #[test]
    fn rejections_carry_line_numbers() {
        let lower = "1\n1\n2\n1.0\n1 1 2 1 1.0\n";
        match parse_sdpa(lower) {
            Err(SdpError::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
        let diag_off = "1\n1\n-2\n1.0\n1 1 1 2 1.0\n";
        assert!(matches!(parse_sdpa(diag_off), Err(SdpError::Parse { line: 5, .. })));
        let bad_tok = "1\n1\n2\nabc\n";
        assert!(matches!(parse_sdpa(bad_tok), Err(SdpError::Parse { line: 4, .. })));
        let bad_block = "1\n1\n2\n1.0\n1 2 1 1 1.0\n";
        assert!(parse_sdpa(bad_block).is_err());
        let bad_matrix = "1\n1\n2\n1.0\n2 1 1 1 1.0\n";
        assert!(parse_sdpa(bad_matrix).is_err());
        assert!(parse_sdpa("").is_err());
        assert!(parse_sdpa("1\n1\n2\n1.0\n1 1 1 1\n").is_err());
    }

    #[test]
    fn duplicates_are_summed() {
        let text = "1\n1\n2\n1.0\n1 1 1 1 0.25\n1 1 1 1 0.75\n1 1 2 2 1.0\n";
        let p = parse_sdpa(text).unwrap();
        assert_eq!(p.a()[0].to_sym(2), SymMatrix::identity(2));
    }

    #[test]
    fn write_then_parse() {
        let p = parse_sdpa(TOY).unwrap();
        let back = parse_sdpa(&write_sdpa(&p).unwrap()).unwrap();
        assert_eq!(back.c(), p.c());
        assert_eq!(back.a(), p.a());
        assert_eq!(back.b(), p.b());
    }
}
