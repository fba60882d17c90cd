//! DIMACS CNF reader.
//!
//! Accepts the `c ind v1 v2 ... 0` comment convention for projection
//! supports (multiple such lines accumulate, and they may appear anywhere).
//! Clauses may span lines. The header's variable and clause counts are
//! enforced exactly.

use crate::encode::cnf::CnfFormula;
use crate::error::{Error, Result};

pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut support: Vec<usize> = Vec::new();
    let mut tokens: Vec<(i64, usize)> = Vec::new(); // literal, line number

    let syntax = |line: usize, msg: String| Error::Syntax { line, col: 1, msg };

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("c ind") {
            let mut terminated = false;
            for tok in rest.split_whitespace() {
                if terminated {
                    return Err(syntax(lineno, "tokens after `0` in `c ind` line".into()));
                }
                let v: i64 = tok
                    .parse()
                    .map_err(|_| syntax(lineno, format!("bad index `{tok}` in `c ind` line")))?;
                if v == 0 {
                    terminated = true;
                } else if v < 0 {
                    return Err(syntax(lineno, format!("negative index `{v}` in `c ind` line")));
                } else {
                    support.push(v as usize);
                }
            }
            if !terminated {
                return Err(syntax(lineno, "`c ind` line not terminated by `0`".into()));
            }
            continue;
        }
        if line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(syntax(lineno, "duplicate `p` header".into()));
            }
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if fields.len() != 3 || fields[0] != "cnf" {
                return Err(syntax(lineno, "header must be `p cnf <vars> <clauses>`".into()));
            }
            let num_vars: usize = fields[1]
                .parse()
                .map_err(|_| syntax(lineno, format!("bad variable count `{}`", fields[1])))?;
            let num_clauses: usize = fields[2]
                .parse()
                .map_err(|_| syntax(lineno, format!("bad clause count `{}`", fields[2])))?;
            header = Some((num_vars, num_clauses));
            continue;
        }
        if header.is_none() {
            return Err(syntax(lineno, "clause data before `p cnf` header".into()));
        }
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| syntax(lineno, format!("bad literal `{tok}`")))?;
            tokens.push((lit, lineno));
        }
    }

    let (num_vars, num_clauses) =
        header.ok_or_else(|| syntax(text.lines().count().max(1), "missing `p cnf` header".into()))?;

    let mut clauses: Vec<Vec<i32>> = Vec::with_capacity(num_clauses);
    let mut current: Vec<i32> = Vec::new();
    let mut last_line = 1;
    for (lit, lineno) in tokens {
        last_line = lineno;
        if lit == 0 {
            clauses.push(std::mem::take(&mut current));
            continue;
        }
        if lit.unsigned_abs() as usize > num_vars {
            return Err(syntax(
                lineno,
                format!("literal `{lit}` exceeds declared variable count {num_vars}"),
            ));
        }
        current.push(lit as i32);
    }
    if !current.is_empty() {
        return Err(syntax(last_line, "unterminated clause at end of input".into()));
    }
    if clauses.len() != num_clauses {
        return Err(syntax(
            last_line,
            format!(
                "header declares {num_clauses} clauses but {} were found",
                clauses.len()
            ),
        ));
    }
    for &v in &support {
        if v > num_vars {
            return Err(syntax(
                1,
                format!("projection index {v} exceeds declared variable count {num_vars}"),
            ));
        }
    }
    if support.is_empty() {
        support = (1..=num_vars).collect();
    }

    Ok(CnfFormula {
        num_vars,
        clauses,
        support,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::cnf::render_dimacs;

    #[test]
    fn parses_simple_formula() {
        let text = "c a comment\np cnf 3 2\n1 -2 0\n2 3 0\n";
        let cnf = parse_dimacs(text).unwrap();
        assert_eq!(cnf.num_vars, 3);
        assert_eq!(cnf.clauses, vec![vec![1, -2], vec![2, 3]]);
        assert_eq!(cnf.support, vec![1, 2, 3]);
    }

    #[test]
    fn clauses_may_span_lines() {
        let text = "p cnf 4 2\n1 2\n3 0 -4\n0\n";
        let cnf = parse_dimacs(text).unwrap();
        assert_eq!(cnf.clauses, vec![vec![1, 2, 3], vec![-4]]);
    }

    #[test]
    fn ind_lines_set_the_support() {
        let text = "c ind 1 3 0\np cnf 4 1\n1 2 0\n";
        let cnf = parse_dimacs(text).unwrap();
        assert_eq!(cnf.support, vec![1, 3]);
        // Accumulation across several lines, before or after the header.
        let text = "c ind 1 0\np cnf 4 1\nc ind 2 4 0\n1 2 0\n";
        let cnf = parse_dimacs(text).unwrap();
        assert_eq!(cnf.support, vec![1, 2, 4]);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_dimacs("1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 2\n").is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 3 0\n").is_err());
        assert!(parse_dimacs("p cnf x 1\n1 0\n").is_err());
        assert!(parse_dimacs("c ind 1\np cnf 2 1\n1 0\n").is_err());
        assert!(parse_dimacs("c ind 3 0\np cnf 2 1\n1 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\np cnf 2 1\n1 0\n").is_err());
    }

    #[test]
    fn round_trips_rendered_output() {
        let cnf = CnfFormula {
            num_vars: 12,
            clauses: vec![vec![1, -5], vec![2, 3, -12], vec![-7]],
            support: (1..=12).collect(),
        };
        let text = render_dimacs(&cnf);
        let back = parse_dimacs(&text).unwrap();
        assert_eq!(back.num_vars, cnf.num_vars);
        assert_eq!(back.clauses, cnf.clauses);
        assert_eq!(back.support, cnf.support);
    }
}
