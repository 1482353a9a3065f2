//! DIMACS CNF reading and writing.
//!
//! Accepted input: `c` comment lines, one `p cnf <nvars> <nclauses>`
//! header, then whitespace-separated signed integers where `0` terminates a
//! clause. Clauses may span lines. A `%` line (as in the SATLIB archives)
//! ends the clause section.

use std::fmt::Write as _;

use crate::cnf::{Clause, CnfFormula, Literal};
use crate::error::{Error, Result};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses DIMACS CNF text. Duplicate literals and duplicate clauses are
/// merged; clauses with a complementary pair are rejected.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(u64, u64)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut clause_line = 0;
    let mut read_clauses = 0u64;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(parse_error(line_no, "duplicate problem line"));
            }
            header = Some(parse_header(line, line_no)?);
            continue;
        }
        let Some((nvars, _)) = header else {
            return Err(parse_error(line_no, "clause data before `p cnf` header"));
        };
        for token in line.split_whitespace() {
            let value: i64 = token
                .parse()
                .map_err(|_| parse_error(line_no, format!("invalid literal `{token}`")))?;
            if value == 0 {
                let clause = Clause::new(current.drain(..)).map_err(|e| match e {
                    Error::Tautology { clause } => parse_error(
                        clause_line.max(line_no),
                        format!("clause {clause} contains a complementary pair"),
                    ),
                    other => other,
                })?;
                clauses.push(clause);
                read_clauses += 1;
                continue;
            }
            if value.unsigned_abs() > nvars {
                return Err(parse_error(
                    line_no,
                    format!("variable {} exceeds declared count {nvars}", value.unsigned_abs()),
                ));
            }
            if current.is_empty() {
                clause_line = line_no;
            }
            current.push(Literal::from_dimacs(value).expect("non-zero literal"));
        }
    }

    let Some((_, nclauses)) = header else {
        return Err(parse_error(0, "missing `p cnf` header"));
    };
    if !current.is_empty() {
        return Err(parse_error(clause_line, "last clause is not terminated by 0"));
    }
    if read_clauses != nclauses {
        return Err(parse_error(
            0,
            format!("header declares {nclauses} clauses but {read_clauses} were read"),
        ));
    }
    Ok(CnfFormula::new(clauses))
}

fn parse_header(line: &str, line_no: usize) -> Result<(u64, u64)> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    match parts.as_slice() {
        ["p", "cnf", nvars, nclauses] => {
            let nvars = nvars
                .parse::<u64>()
                .map_err(|_| parse_error(line_no, format!("invalid variable count `{nvars}`")))?;
            let nclauses = nclauses
                .parse::<u64>()
                .map_err(|_| parse_error(line_no, format!("invalid clause count `{nclauses}`")))?;
            if nvars > u64::from(u32::MAX) {
                return Err(parse_error(line_no, "variable count out of range"));
            }
            Ok((nvars, nclauses))
        }
        _ => Err(parse_error(line_no, format!("malformed problem line `{line}`"))),
    }
}

/// Writes `formula` in canonical DIMACS form. The declared variable count is
/// the largest variable id in use.
pub fn write_dimacs(formula: &CnfFormula) -> String {
    let nvars = formula.max_variable().map_or(0, |v| v.id());
    let mut out = format!("p cnf {nvars} {}\n", formula.len());
    for clause in formula.clauses() {
        for lit in clause.literals() {
            let _ = write!(out, "{} ", lit.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_clause() {
        let f = parse_dimacs("p cnf 3 1\n1 2 -3 0").unwrap();
        assert_eq!(f, CnfFormula::from_dimacs(&[&[1, 2, -3]]));
    }

    #[test]
    fn merges_duplicate_clauses() {
        let f = parse_dimacs("p cnf 2 2\n1 0\n1 0").unwrap();
        assert_eq!(f, CnfFormula::from_dimacs(&[&[1]]));
    }

    #[test]
    fn rejects_complementary_pair() {
        let err = parse_dimacs("p cnf 1 1\n1 -1 0").unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("complementary"), "{message}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn comments_and_multiline_clauses() {
        let text = "c hello\nc world\np cnf 4 2\n1 -2\n 3 0 -4\n0\n";
        let f = parse_dimacs(text).unwrap();
        assert_eq!(f, CnfFormula::from_dimacs(&[&[1, -2, 3], &[-4]]));
    }

    #[test]
    fn satlib_trailer_is_ignored() {
        let f = parse_dimacs("p cnf 2 1\n1 2 0\n%\n0\n").unwrap();
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn error_cases_report_lines() {
        for (text, line) in [
            ("p cnf x 1\n1 0", 1),
            ("p dnf 1 1\n1 0", 1),
            ("p cnf 2 1\n1 a 0", 2),
            ("p cnf 2 1\n1 3 0", 2),
            ("1 0\np cnf 1 1", 1),
        ] {
            match parse_dimacs(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert!(parse_dimacs("p cnf 2 1\n1 2").is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 2 0").is_err());
        assert!(parse_dimacs("").is_err());
    }

    #[test]
    fn writes_canonical_form() {
        let f = CnfFormula::from_dimacs(&[&[-2, 1]]);
        assert_eq!(write_dimacs(&f), "p cnf 2 1\n1 -2 0\n");
        assert_eq!(write_dimacs(&CnfFormula::default()), "p cnf 0 0\n");
        let empty_clause = CnfFormula::new([Clause::empty()]);
        assert_eq!(write_dimacs(&empty_clause), "p cnf 0 1\n0\n");
    }

    #[test]
    fn empty_clause_round_trips() {
        let f = CnfFormula::new([Clause::empty(), Clause::from_dimacs(&[2])]);
        assert_eq!(parse_dimacs(&write_dimacs(&f)).unwrap(), f);
    }
}
