use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{PolyError, Result};

/// Maximum number of variables.
pub const MAX_VARS: usize = 4;

const LOWER: [&str; 3] = ["x", "y", "z"];
const UPPER: [&str; 4] = ["X", "Y", "Z", "U"];

/// Variable names for a given arity: `x, y, z` for three variables and
/// `X, Y, Z, U` for four.
pub fn variable_names(arity: usize) -> &'static [&'static str] {
    match arity {
        4 => &UPPER,
        n => &LOWER[..n.min(3)],
    }
}

/// Exponent vector. Positions past the polynomial's arity are always zero.
///
/// The ordering is graded reverse lexicographic with variable 0 largest,
/// i.e. `X > Y > Z > U`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut e = [0; MAX_VARS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = other.0[i] - self.0[i];
        }
        Monomial(e)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut e = [0; MAX_VARS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i].max(other.0[i]);
        }
        Monomial(e)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Set of variables occurring, as a bit mask.
    pub fn support(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }
}

// exponent vectors add under multiplication
#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(rhs.0) {
            *a += b;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for i in (0..MAX_VARS).rev() {
                if self.0[i] != other.0[i] {
                    // smaller exponent in the last differing variable wins
                    return other.0[i].cmp(&self.0[i]);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Exact multivariate polynomial over `Q` in at most four variables.
///
/// Terms are kept in a map ordered by [`Monomial`]'s grevlex order, so the
/// leading term is the last entry. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    arity: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl SparsePolynomial {
    pub fn zero(arity: usize) -> Self {
        assert!(arity <= MAX_VARS, "at most {MAX_VARS} variables");
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: BigRational) -> Self {
        Self::term(arity, Monomial::ONE, c)
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, BigRational::one())
    }

    pub fn term(arity: usize, m: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero(arity);
        debug_assert!(m.0[arity..].iter().all(|&e| e == 0));
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(arity: usize, i: usize) -> Self {
        assert!(i < arity);
        Self::term(arity, Monomial::var(i), BigRational::one())
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs; exponents
    /// beyond `arity` must be zero.
    pub fn from_terms(arity: usize, terms: &[(i64, [u32; MAX_VARS])]) -> Self {
        let mut p = Self::zero(arity);
        for &(c, e) in terms {
            assert!(e[arity..].iter().all(|&x| x == 0), "exponent beyond arity");
            p.add_term(Monomial(e), BigRational::from_integer(BigInt::from(c)));
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.keys().next_back().copied()
    }

    /// Largest total degree of a term.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `m`-adic order: smallest total degree of a term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(PolyError::Arity {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.arity);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(*m1 * *m2, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        Self {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        Self {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, x)| (*k * *m, x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.arity);
        for _ in 0..k {
            out = out.mul(self).expect("same arity");
        }
        out
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        if var >= self.arity {
            return Err(PolyError::Argument(format!(
                "variable index {var} out of range for arity {}",
                self.arity
            )));
        }
        let mut out = Self::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut d = *m;
            d.0[var] -= 1;
            out.add_term(d, c * BigRational::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Scales to integer coefficients with gcd 1 and positive leading
    /// coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let den_lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num_gcd = self.terms.values().fold(BigInt::zero(), |acc, c| {
            acc.gcd(&(c.numer() * (&den_lcm / c.denom())))
        });
        let mut factor = BigRational::new(den_lcm, num_gcd);
        if self
            .leading_term()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// True if `self = c * m * other` for a constant `c` and monomial `m`.
    pub fn is_term_multiple_of(&self, other: &Self) -> bool {
        if self.arity != other.arity || self.len() != other.len() || other.is_zero() {
            return false;
        }
        let (lm_s, lc_s) = self.leading_term().expect("nonzero");
        let (lm_o, lc_o) = other.leading_term().expect("nonzero");
        if !lm_o.divides(lm_s) {
            return false;
        }
        let m = lm_o.quotient_of(lm_s);
        let c = lc_s / lc_o;
        other.mul_term(&m, &c) == *self
    }

    /// Sets variable `var` to 1 (arity unchanged).
    pub fn substitute_one(&self, var: usize) -> Self {
        let mut out = Self::zero(self.arity);
        for (m, c) in &self.terms {
            let mut e = *m;
            e.0[var] = 0;
            out.add_term(e, c.clone());
        }
        out
    }

    /// Reinterprets the polynomial with a different number of variables;
    /// fails if a dropped variable occurs.
    pub fn with_arity(&self, arity: usize) -> Result<Self> {
        if arity > MAX_VARS {
            return Err(PolyError::Argument(format!(
                "arity {arity} exceeds {MAX_VARS}"
            )));
        }
        if self
            .terms
            .keys()
            .any(|m| m.0[arity..].iter().any(|&e| e > 0))
        {
            return Err(PolyError::Argument(format!(
                "polynomial uses variables beyond the first {arity}"
            )));
        }
        Ok(Self {
            arity,
            terms: self.terms.clone(),
        })
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0[..self.arity].iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Largest bit length among numerators and denominators.
    pub fn max_coefficient_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for SparsePolynomial {
    /// Ascending order, e.g. `X^2+Y^3*U+Z^7*U^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = variable_names(self.arity);
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if negative {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            let factors: Vec<String> = (0..self.arity)
                .filter(|&i| m.0[i] > 0)
                .map(|i| match m.0[i] {
                    1 => names[i].to_string(),
                    e => format!("{}^{e}", names[i]),
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
