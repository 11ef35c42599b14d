//! Not-all-equal 3SAT instances: representation, parsing, evaluation and a
//! brute-force oracle.
//!
//! The text format is DIMACS-like:
//!
//! ```text
//! c optional comment
//! p nae3sat 4 3
//! 1 2 3 0
//! 1 2 4 0
//! -1 3 4 0
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest variable count accepted by [`brute_force_nae_sat`] unless a cap is given.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("missing `p nae3sat <n> <m>` header")]
    MissingHeader,
    #[error("line {line}: clause has {count} literals, expected 3")]
    ClauseArity { line: usize, count: usize },
    #[error("line {line}: variable index {var} out of range 1..={n}")]
    VariableOutOfRange { line: usize, var: i64, n: usize },
    #[error("line {line}: clause is missing its `0` terminator")]
    MissingTerminator { line: usize },
    #[error("line {line}: unexpected token `{token}`")]
    BadToken { line: usize, token: String },
    #[error("header declares {declared} clauses but {found} were given")]
    ClauseCount { declared: usize, found: usize },
    #[error("formula needs at least one variable and one clause")]
    Empty,
    #[error("assignment has {got} values, formula has {expected} variables")]
    AssignmentLength { expected: usize, got: usize },
    #[error("brute force is capped at {cap} variables, formula has {n}")]
    CapExceeded { n: usize, cap: usize },
}

/// A possibly negated variable. Variables are numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    /// Builds a literal from a signed DIMACS integer. Returns `None` for 0.
    pub fn from_dimacs(value: i64) -> Option<Self> {
        if value == 0 {
            return None;
        }
        Some(Literal {
            var: value.unsigned_abs() as usize,
            negated: value < 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        if self.negated {
            -(self.var as i64)
        } else {
            self.var as i64
        }
    }

    pub fn eval(self, values: &[bool]) -> bool {
        values[self.var - 1] != self.negated
    }

    pub fn complement(self) -> Self {
        Literal {
            var: self.var,
            negated: !self.negated,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬X{}", self.var)
        } else {
            write!(f, "X{}", self.var)
        }
    }
}

/// An ordered triple of literals; repeats are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Clause {
    pub literals: [Literal; 3],
}

impl Clause {
    pub fn new(literals: [Literal; 3]) -> Self {
        Clause { literals }
    }

    pub fn from_dimacs(values: [i64; 3]) -> Option<Self> {
        Some(Clause {
            literals: [
                Literal::from_dimacs(values[0])?,
                Literal::from_dimacs(values[1])?,
                Literal::from_dimacs(values[2])?,
            ],
        })
    }

    /// True when the clause has at least one true and one false literal.
    pub fn nae_satisfied(&self, values: &[bool]) -> bool {
        let trues = self.literals.iter().filter(|l| l.eval(values)).count();
        trues == 1 || trues == 2
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.literals.contains(&lit)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    n: usize,
    clauses: Vec<Clause>,
}

impl Formula {
    pub fn new(n: usize, clauses: Vec<Clause>) -> Result<Self, FormulaError> {
        if n == 0 || clauses.is_empty() {
            return Err(FormulaError::Empty);
        }
        for (idx, clause) in clauses.iter().enumerate() {
            for lit in clause.literals {
                if lit.var == 0 || lit.var > n {
                    return Err(FormulaError::VariableOutOfRange {
                        line: idx + 1,
                        var: lit.to_dimacs(),
                        n,
                    });
                }
            }
        }
        Ok(Formula { n, clauses })
    }

    /// Convenience constructor from signed integer triples.
    pub fn from_dimacs(n: usize, clauses: &[[i64; 3]]) -> Result<Self, FormulaError> {
        let mut out = Vec::with_capacity(clauses.len());
        for (idx, c) in clauses.iter().enumerate() {
            match Clause::from_dimacs(*c) {
                Some(clause) => out.push(clause),
                None => {
                    return Err(FormulaError::VariableOutOfRange {
                        line: idx + 1,
                        var: 0,
                        n,
                    })
                }
            }
        }
        Formula::new(n, out)
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn to_dimacs_string(&self) -> String {
        let mut out = format!("p nae3sat {} {}\n", self.n, self.clauses.len());
        for clause in &self.clauses {
            let [a, b, c] = clause.literals.map(Literal::to_dimacs);
            out.push_str(&format!("{a} {b} {c} 0\n"));
        }
        out
    }
}

impl FromStr for Formula {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

/// Truth values for `X1..Xn`, stored at index `var - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn complement(&self) -> Self {
        Assignment {
            values: self.values.iter().map(|v| !v).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.values {
            f.write_str(if *v { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, FormulaError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(FormulaError::MalformedHeader {
                    line: line_no,
                    reason: "duplicate header".into(),
                });
            }
            header = Some(parse_header(line, line_no)?);
            continue;
        }
        let Some((n, _)) = header else {
            return Err(FormulaError::MissingHeader);
        };

        let mut lits = Vec::with_capacity(3);
        let mut terminated = false;
        for token in line.split_whitespace() {
            if terminated {
                return Err(FormulaError::BadToken {
                    line: line_no,
                    token: token.to_string(),
                });
            }
            let value: i64 = token.parse().map_err(|_| FormulaError::BadToken {
                line: line_no,
                token: token.to_string(),
            })?;
            match Literal::from_dimacs(value) {
                None => terminated = true,
                Some(lit) => {
                    if lit.var > n {
                        return Err(FormulaError::VariableOutOfRange {
                            line: line_no,
                            var: value,
                            n,
                        });
                    }
                    lits.push(lit);
                }
            }
        }
        if !terminated {
            return Err(FormulaError::MissingTerminator { line: line_no });
        }
        if lits.len() != 3 {
            return Err(FormulaError::ClauseArity {
                line: line_no,
                count: lits.len(),
            });
        }
        clauses.push(Clause::new([lits[0], lits[1], lits[2]]));
    }

    let (n, m) = header.ok_or(FormulaError::MissingHeader)?;
    if clauses.len() != m {
        return Err(FormulaError::ClauseCount {
            declared: m,
            found: clauses.len(),
        });
    }
    Formula::new(n, clauses)
}

fn parse_header(line: &str, line_no: usize) -> Result<(usize, usize), FormulaError> {
    let malformed = |reason: &str| FormulaError::MalformedHeader {
        line: line_no,
        reason: reason.to_string(),
    };
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 4 || parts[0] != "p" {
        return Err(malformed("expected `p nae3sat <n> <m>`"));
    }
    if parts[1] != "nae3sat" {
        return Err(malformed("format tag must be `nae3sat`"));
    }
    let n: usize = parts[2].parse().map_err(|_| malformed("bad variable count"))?;
    let m: usize = parts[3].parse().map_err(|_| malformed("bad clause count"))?;
    if n == 0 || m == 0 {
        return Err(malformed("counts must be positive"));
    }
    Ok((n, m))
}

/// Every clause contains both a true and a false literal under `a`.
pub fn nae_eval(f: &Formula, a: &Assignment) -> Result<bool, FormulaError> {
    if a.len() != f.n {
        return Err(FormulaError::AssignmentLength {
            expected: f.n,
            got: a.len(),
        });
    }
    Ok(f.clauses.iter().all(|c| c.nae_satisfied(&a.values)))
}

/// Tries every assignment in binary order with `X1` as the most significant
/// bit and returns the first NAE-satisfying one.
pub fn brute_force_nae_sat(f: &Formula) -> Result<Option<Assignment>, FormulaError> {
    brute_force_nae_sat_capped(f, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn brute_force_nae_sat_capped(
    f: &Formula,
    cap: usize,
) -> Result<Option<Assignment>, FormulaError> {
    if f.n > cap {
        return Err(FormulaError::CapExceeded { n: f.n, cap });
    }
    let mut values = vec![false; f.n];
    for bits in 0u64..(1u64 << f.n) {
        for (i, v) in values.iter_mut().enumerate() {
            *v = (bits >> (f.n - 1 - i)) & 1 == 1;
        }
        if f.clauses.iter().all(|c| c.nae_satisfied(&values)) {
            return Ok(Some(Assignment::new(values)));
        }
    }
    Ok(None)
}
