//! Exact-arithmetic certification of `p_g`-ideals in two-dimensional normal
//! local domains.
//!
//! * [`lattice`]: dual resolution graphs as negative-definite lattices
//!   (pairings, fundamental and canonical cycles, `Z^perp`, Artin's test).
//! * [`hilbert`]: Kato's Riemann-Roch, normal Hilbert coefficients and the
//!   equivalent `p_g`-ideal criteria on numerical data.
//! * [`brieskorn`]: monomial-count oracles for Brieskorn-Pham hypersurfaces.
//! * [`polyalg`]: sparse polynomials over `Q`, Groebner bases, the Jacobian
//!   criterion on extended Rees presentations and double-point tests.

pub mod brieskorn;
pub mod hilbert;
pub mod lattice;
pub mod polyalg;

use std::fmt;

/// Error from one of the line-oriented input formats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number, 0 when the error concerns the file as a whole.
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

/// `C(n, k)` for `n` possibly negative, with `C(n, k) = 0` when `n < k`.
/// This is the convention the closed forms rely on (`C(e-k, 3) = 0` once
/// `e - k < 3`).
pub fn binomial(n: i64, k: u32) -> i64 {
    if n < i64::from(k) || n < 0 {
        return 0;
    }
    let mut acc: i64 = 1;
    for i in 0..i64::from(k) {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
