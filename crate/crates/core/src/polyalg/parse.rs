//! Polynomial input syntax: a sum of terms `c*x^a*y^b*z^c` with integer or
//! rational coefficients, variables from `{x, y, z}` or `{X, Y, Z, U}`.
//! Whitespace is ignored; errors report the character offset.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Monomial, SparsePolynomial};
use super::PolyError;

type Terms = Vec<(BigRational, Monomial)>;

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Case {
    Lower,
    Upper,
}

fn error(offset: usize, message: impl Into<String>) -> PolyError {
    PolyError::Parse {
        offset,
        message: message.into(),
    }
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(o, _)| o)
            .unwrap_or(self.end)
    }

    fn number(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(error(self.offset(), "expected a number"));
        }
        let digits: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn exponent(&mut self) -> Result<u32, PolyError> {
        let at = self.offset();
        let n = self.number()?;
        u32::try_from(n).map_err(|_| error(at, "exponent too large"))
    }

    /// One factor: a number (optionally `p/q`) or a variable with optional
    /// exponent. Returns the coefficient and monomial it contributes.
    fn factor(&mut self, case: &mut Option<Case>) -> Result<(BigRational, Monomial), PolyError> {
        let at = self.offset();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.number()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let den_at = self.offset();
                    let den = self.number()?;
                    if den.is_zero() {
                        return Err(error(den_at, "zero denominator"));
                    }
                    return Ok((BigRational::new(num, den), Monomial::ONE));
                }
                Ok((BigRational::from_integer(num), Monomial::ONE))
            }
            Some(c) => {
                let (index, this_case) = match c {
                    'x' => (0, Case::Lower),
                    'y' => (1, Case::Lower),
                    'z' => (2, Case::Lower),
                    'X' => (0, Case::Upper),
                    'Y' => (1, Case::Upper),
                    'Z' => (2, Case::Upper),
                    'U' => (3, Case::Upper),
                    other => return Err(error(at, format!("unexpected character `{other}`"))),
                };
                match case {
                    Some(existing) if *existing != this_case => {
                        return Err(error(at, "cannot mix {x,y,z} with {X,Y,Z,U}"));
                    }
                    _ => *case = Some(this_case),
                }
                self.pos += 1;
                let mut e = 1;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    e = self.exponent()?;
                }
                let mut m = Monomial::ONE;
                m.0[index] = e;
                Ok((BigRational::one(), m))
            }
            None => Err(error(at, "unexpected end of input")),
        }
    }

    fn parse(&mut self) -> Result<(Terms, Option<Case>), PolyError> {
        let mut case = None;
        let mut terms = Vec::new();
        if self.peek().is_none() {
            return Err(error(0, "empty polynomial"));
        }
        let mut first = true;
        while self.peek().is_some() {
            let mut sign = BigRational::one();
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    sign = -sign;
                    self.pos += 1;
                }
                Some(c) if !first => {
                    return Err(error(
                        self.offset(),
                        format!("expected `+` or `-`, found `{c}`"),
                    ))
                }
                _ => {}
            }
            first = false;
            let (mut coeff, mut mono) = self.factor(&mut case)?;
            while self.peek() == Some('*') {
                self.pos += 1;
                let (c, m) = self.factor(&mut case)?;
                coeff *= c;
                mono = mono * m;
            }
            terms.push((sign * coeff, mono));
        }
        Ok((terms, case))
    }
}

impl SparsePolynomial {
    /// Parses a polynomial; the arity is 4 for `{X,Y,Z,U}`, 3 otherwise.
    pub fn parse(s: &str) -> Result<Self, PolyError> {
        let mut parser = Parser {
            chars: s
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            end: s.len(),
        };
        let (terms, case) = parser.parse()?;
        let arity = if case == Some(Case::Upper) { 4 } else { 3 };
        let mut p = SparsePolynomial::zero(arity);
        for (c, m) in terms {
            p.add_term(m, c);
        }
        Ok(p)
    }
}

impl FromStr for SparsePolynomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}
