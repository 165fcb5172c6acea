//! DIMACS CNF reading and writing, restricted to clause sizes 1 and 2.
//!
//! Accepted shape: optional comment lines starting with 'c', one header
//! `p cnf <vars> <clauses>`, then one clause per line as literals terminated
//! by 0. The clause count in the header is informational and not enforced;
//! literal magnitudes must stay within the declared variable count.

use crate::error::{Error, Result};
use crate::formula::{Clause, Formula, Lit, Var};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse(input: &str) -> Result<Formula> {
    let mut declared_vars: Option<u32> = None;
    let mut clauses: Vec<Clause> = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if declared_vars.is_some() {
                return Err(parse_err(lineno, "duplicate header"));
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 4 || tokens[0] != "p" || tokens[1] != "cnf" {
                return Err(parse_err(lineno, "malformed header, expected 'p cnf <vars> <clauses>'"));
            }
            let n: u32 = tokens[2]
                .parse()
                .map_err(|_| parse_err(lineno, "variable count is not a number"))?;
            let _m: u64 = tokens[3]
                .parse()
                .map_err(|_| parse_err(lineno, "clause count is not a number"))?;
            declared_vars = Some(n);
            continue;
        }
        let Some(n) = declared_vars else {
            return Err(parse_err(lineno, "clause before 'p cnf' header"));
        };
        let mut lits: Vec<Lit> = Vec::with_capacity(2);
        let mut terminated = false;
        for token in line.split_whitespace() {
            if terminated {
                return Err(parse_err(lineno, "tokens after clause terminator"));
            }
            let value: i64 = token
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad literal token '{token}'")))?;
            if value == 0 {
                terminated = true;
                continue;
            }
            let magnitude = value.unsigned_abs();
            if magnitude > u64::from(n) {
                return Err(parse_err(
                    lineno,
                    format!("literal {value} outside declared range of {n} variables"),
                ));
            }
            lits.push(Lit::new(Var::new(magnitude as u32), value > 0));
        }
        if !terminated {
            return Err(parse_err(lineno, "clause line missing terminating 0"));
        }
        match lits.as_slice() {
            [a] => clauses.push(Clause::unit(*a)),
            [a, b] => clauses.push(Clause::binary(*a, *b)),
            [] => return Err(parse_err(lineno, "empty clause")),
            more => {
                return Err(parse_err(
                    lineno,
                    format!("clause has {} literals, at most 2 supported", more.len()),
                ))
            }
        }
    }

    if declared_vars.is_none() {
        return Err(parse_err(input.lines().count().max(1), "missing 'p cnf' header"));
    }
    Ok(Formula::new(clauses))
}

/// Writes the clause list back out. Accumulated truth is not representable
/// in CNF, so only freshly built formulas round-trip exactly.
pub fn serialize(f: &Formula) -> String {
    let n = f.vars().iter().map(|v| v.id()).max().unwrap_or(0);
    let mut out = format!("p cnf {} {}\n", n, f.clause_count());
    for c in f.clauses() {
        for l in c.literals() {
            out.push_str(&l.to_dimacs().to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_header_and_clauses() {
        let text = "c example\nc\np cnf 4 3\n1 -2 0\n-3 0\n2 4 0\n";
        let f = parse(text).unwrap();
        assert_eq!(f.clause_count(), 3);
        assert_eq!(f.n_vars(), 4);
        assert_eq!(f.count_unit(Lit::from_dimacs(-3).unwrap()), 1);
    }

    #[test]
    fn header_clause_count_is_not_enforced() {
        let f = parse("p cnf 2 99\n1 2 0\n").unwrap();
        assert_eq!(f.clause_count(), 1);
    }

    #[test]
    fn rejects_wide_clauses_with_line_number() {
        let err = parse("p cnf 3 1\n1 2 3 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn rejects_out_of_range_literals() {
        let err = parse("p cnf 2 1\n1 -5 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn rejects_trailing_tokens_and_missing_terminator() {
        assert!(parse("p cnf 2 2\n1 0 2 0\n").is_err());
        assert!(parse("p cnf 2 1\n1 2\n").is_err());
    }

    #[test]
    fn rejects_clause_before_header() {
        let err = parse("1 2 0\np cnf 2 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn round_trips_through_serialize() {
        let text = "p cnf 5 4\n1 -2 0\n-3 0\n2 4 0\n5 5 0\n";
        let f = parse(text).unwrap();
        let again = parse(&serialize(&f)).unwrap();
        assert!(f.multiset_eq(&again));
    }

    #[test]
    fn duplicate_literal_collapses_to_unit() {
        let f = parse("p cnf 1 1\n1 1 0\n").unwrap();
        assert_eq!(f.clauses()[0], Clause::unit(Lit::from_dimacs(1).unwrap()));
    }
}
