//! Brute-force oracles for Brieskorn-Pham hypersurfaces `x^p + y^q + z^r`.
//!
//! Everything here counts monomials of a basis obtained from the rewriting
//! rule `x^p -> -(y^q + z^r)`: the quotient has the monomials
//! `x^a y^b z^c` with `a < p` as a basis.

use num_integer::Integer;
use thiserror::Error;

use crate::binomial;
use crate::hilbert::NumericalIdealDatum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrieskornError {
    #[error("exponents must all be >= 2, got ({0}, {1}, {2})")]
    Exponent(u64, u64, u64),
    #[error("Fermat degree must be >= 2, got {0}")]
    Degree(u64),
    #[error("scale factor must be positive")]
    Scale,
}

/// `f = x^p + y^q + z^r` with the weights making it quasi-homogeneous.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BrieskornDescriptor {
    exponents: (u64, u64, u64),
    weights: (u64, u64, u64),
    degree: u64,
}

impl BrieskornDescriptor {
    /// Uses the smallest common degree `d = lcm(p, q, r)` with weights
    /// `(d/p, d/q, d/r)`.
    pub fn new(p: u64, q: u64, r: u64) -> Result<Self, BrieskornError> {
        if p < 2 || q < 2 || r < 2 {
            return Err(BrieskornError::Exponent(p, q, r));
        }
        let d = p.lcm(&q).lcm(&r);
        Ok(Self {
            exponents: (p, q, r),
            weights: (d / p, d / q, d / r),
            degree: d,
        })
    }

    /// Same hypersurface with every weight (and the degree) multiplied by `k`.
    pub fn scaled(&self, k: u64) -> Result<Self, BrieskornError> {
        if k == 0 {
            return Err(BrieskornError::Scale);
        }
        let (a, b, c) = self.weights;
        Ok(Self {
            exponents: self.exponents,
            weights: (a * k, b * k, c * k),
            degree: self.degree * k,
        })
    }

    pub fn exponents(&self) -> (u64, u64, u64) {
        self.exponents
    }

    pub fn weights(&self) -> (u64, u64, u64) {
        self.weights
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// `a(A) = d - w_x - w_y - w_z`.
    pub fn a_invariant(&self) -> i64 {
        let (a, b, c) = self.weights;
        self.degree as i64 - (a + b + c) as i64
    }

    /// Geometric genus of the quasi-homogeneous singularity: the number of
    /// basis monomials of weighted degree `0..=a(A)`.
    pub fn weighted_pg(&self) -> u64 {
        let top = self.a_invariant();
        if top < 0 {
            return 0;
        }
        let top = top as u64;
        let (p, _, _) = self.exponents;
        let (wx, wy, wz) = self.weights;
        let mut count = 0;
        let mut a = 0;
        while a < p && a * wx <= top {
            let rest_a = top - a * wx;
            let mut b = 0;
            while b * wy <= rest_a {
                count += (rest_a - b * wy) / wz + 1;
                b += 1;
            }
            a += 1;
        }
        count
    }
}

/// `l(A / m^{n+1})` for `A = k[x,y,z]/(x^e + y^e + z^e)`, by counting basis
/// monomials `x^a y^b z^c` with `a <= e-1` and `a + b + c <= n`.
pub fn fermat_colength(e: u64, n: u64) -> u64 {
    let mut count = 0;
    for a in 0..e.min(n + 1) {
        for b in 0..=(n - a) {
            for _c in 0..=(n - a - b) {
                count += 1;
            }
        }
    }
    count
}

/// The piecewise closed form for `l(A / m^{n+1})` on the Fermat surface:
/// `C(n+3, 3)` for `n <= e-1`, and
/// `e C(n+2, 2) - e(e-1)/2 (n+1) + e(e-1)(e-2)/6` for `n >= e`.
pub fn fermat_closed_form(e: u64, n: u64) -> i64 {
    let (e, n) = (e as i64, n as i64);
    if n < e {
        (n + 1) * (n + 2) * (n + 3) / 6
    } else {
        e * binomial(n + 2, 2) - e * (e - 1) / 2 * (n + 1) + e * (e - 1) * (e - 2) / 6
    }
}

/// `h^1(O_X(-kZ)) = C(e-k, 3)` for `k = 1..=e`, where `Z` represents the
/// maximal ideal of the Fermat surface of degree `e`.
pub fn fermat_h1_sequence(e: u64) -> Vec<i64> {
    (1..=e).map(|k| binomial(e as i64 - k as i64, 3)).collect()
}

/// Numerical datum of the maximal ideal of `x^e + y^e + z^e`:
/// `Z^2 = -e`, `Z.K = e(e-2)`, `p_g = C(e, 3)`, `h1[k] = C(e-k, 3)`, padded
/// with zeros to length `p_g + 1`.
pub fn fermat_datum(e: u64) -> Result<NumericalIdealDatum, BrieskornError> {
    if e < 2 {
        return Err(BrieskornError::Degree(e));
    }
    let ei = e as i64;
    let pg = binomial(ei, 3);
    let mut h1 = fermat_h1_sequence(e);
    h1.resize(h1.len().max(pg as usize + 1), 0);
    let d = NumericalIdealDatum::new(-ei, ei * (ei - 2), pg, h1)
        .expect("the Fermat closed forms satisfy every datum invariant");
    Ok(d.with_label(format!("fermat{e}")))
}
