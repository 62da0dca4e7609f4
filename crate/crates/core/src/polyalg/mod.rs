//! Exact polynomial algebra for hypersurface certificates.
//!
//! The ring-side route to certifying that the maximal ideal `m` of
//! `k[x,y,z]/(f)` is a `p_g`-ideal goes through the extended Rees algebra
//! `R'(m) = k[X,Y,Z,U]/(F)`: being a hypersurface it is Cohen-Macaulay, so it
//! is normal iff it satisfies `(R1)`, which the Jacobian criterion reduces to
//! a dimension count computed from a Groebner basis.

mod groebner;
mod parse;
mod poly;

pub use groebner::{
    dimension_from_basis, groebner_basis, groebner_basis_with_budget, is_groebner_basis, reduce,
    s_polynomial, Budget, MonomialOrder,
};
pub use poly::{variable_names, Monomial, SparsePolynomial, MAX_VARS};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: {left} vs {right} variables")]
    Arity { left: usize, right: usize },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("zero polynomial not allowed here")]
    Zero,
    #[error("{0}")]
    Argument(String),
}

pub type Result<T> = std::result::Result<T, PolyError>;

/// Homogenizes `f(x, y, z)` into the equation of the extended Rees algebra
/// of `m`: with `X = xt, Y = yt, Z = zt, U = 1/t`, a term `c x^i y^j z^k`
/// becomes `c X^i Y^j Z^k U^(i+j+k-o)`, where `o` is the order of `f`.
pub fn extended_rees_f(f: &SparsePolynomial) -> Result<SparsePolynomial> {
    if f.arity() != 3 {
        return Err(PolyError::Arity {
            left: 3,
            right: f.arity(),
        });
    }
    let order = f.order().ok_or(PolyError::Zero)?;
    let mut out = SparsePolynomial::zero(4);
    for (m, c) in f.terms() {
        let mut e = m.0;
        e[3] = m.degree() - order;
        out.add_term(Monomial(e), c.clone());
    }
    Ok(out)
}

/// The partial derivatives of `F` together with `F`, made primitive. Zero
/// generators and generators that are a term multiple of an earlier (or
/// later) one are dropped, e.g. `F = X^2` gives `(X)`.
pub fn jacobian_ideal(f: &SparsePolynomial) -> Result<Vec<SparsePolynomial>> {
    if f.is_zero() {
        return Err(PolyError::Zero);
    }
    let mut gens: Vec<SparsePolynomial> = Vec::with_capacity(f.arity() + 1);
    for v in 0..f.arity() {
        gens.push(f.partial_derivative(v)?.primitive());
    }
    gens.push(f.primitive());
    gens.retain(|g| !g.is_zero());

    let mut kept: Vec<SparsePolynomial> = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let redundant = gens.iter().enumerate().any(|(j, h)| {
            j != i && g.is_term_multiple_of(h) && (!h.is_term_multiple_of(g) || j < i)
        });
        if !redundant {
            kept.push(g.clone());
        }
    }
    Ok(kept)
}

/// Krull dimension of `k[vars]/(gens)`; the unit ideal gives -1.
pub fn ideal_dimension(gens: &[SparsePolynomial]) -> Result<i64> {
    ideal_dimension_with_budget(gens, Budget::default())
}

pub fn ideal_dimension_with_budget(gens: &[SparsePolynomial], budget: Budget) -> Result<i64> {
    let arity = gens
        .first()
        .map(SparsePolynomial::arity)
        .ok_or_else(|| PolyError::Argument("empty generator list".into()))?;
    let basis = groebner_basis_with_budget(gens, MonomialOrder::GrevLex, budget)?;
    Ok(dimension_from_basis(&basis, arity))
}

/// Outcome of the Jacobian-criterion check on a hypersurface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct R1Report {
    pub generators: Vec<SparsePolynomial>,
    /// Dimension of the singular locus in affine space (-1 if empty).
    pub singular_dimension: i64,
    /// Dimension of the hypersurface itself.
    pub hypersurface_dimension: i64,
}

impl R1Report {
    /// `(R1)` holds iff the singular locus has codimension at least 2.
    pub fn passes(&self) -> bool {
        self.singular_dimension <= self.hypersurface_dimension - 2
    }
}

/// Jacobian criterion for `(R1)` on `k[vars]/(F)`. `F` is assumed
/// irreducible (not checked). For four variables the test is
/// `dim Sing <= 1`; since a hypersurface is Cohen-Macaulay, passing
/// certifies normality.
pub fn r1_report(f: &SparsePolynomial) -> Result<R1Report> {
    r1_report_with_budget(f, Budget::default())
}

pub fn r1_report_with_budget(f: &SparsePolynomial, budget: Budget) -> Result<R1Report> {
    let generators = jacobian_ideal(f)?;
    let singular_dimension = ideal_dimension_with_budget(&generators, budget)?;
    Ok(R1Report {
        generators,
        singular_dimension,
        hypersurface_dimension: f.arity() as i64 - 1,
    })
}

pub fn r1_hypersurface_test(f: &SparsePolynomial) -> Result<bool> {
    Ok(r1_report(f)?.passes())
}

/// Checks that `g` is a polynomial in `y, z` vanishing at the origin and
/// returns its order.
fn double_point_order(g: &SparsePolynomial) -> Result<u32> {
    if g.arity() != 3 {
        return Err(PolyError::Arity {
            left: 3,
            right: g.arity(),
        });
    }
    if g.terms().any(|(m, _)| m.exponent(0) > 0) {
        return Err(PolyError::Argument(
            "g must be a polynomial in y and z only".into(),
        ));
    }
    let order = g.order().ok_or(PolyError::Zero)?;
    if order == 0 {
        return Err(PolyError::Argument("g must vanish at the origin".into()));
    }
    Ok(order)
}

/// For `A = k[[x,y,z]]/(x^2 + g(y,z))` with an isolated singularity: `m` is
/// a `p_g`-ideal iff `g` has order at most 3. Order `<= 2` is a rational
/// double point; order 3 is the non-rational Gorenstein case where `m` is
/// stable and all its powers are integrally closed; order `>= 4` fails
/// normality of the Rees algebra.
pub fn double_point_pg_test(g: &SparsePolynomial) -> Result<bool> {
    Ok(double_point_order(g)? <= 3)
}

/// The bound used by [`double_point_stability`] when none is given.
pub fn default_stability_bound(g: &SparsePolynomial) -> Result<u32> {
    Ok(double_point_order(g)?.max(2) + 2)
}

/// Decides `m^2 = Q m` with `Q = (y, z)` in `A = k[x,y,z]/(x^2 + g)` by
/// comparing the images of both ideals in `A / m^(D+1)`, using the basis
/// `x^a y^b z^c` (`a <= 1`, degree `<= D`) and the rewriting rule
/// `x^2 -> -g`.
pub fn double_point_stability(g: &SparsePolynomial, bound: u32) -> Result<bool> {
    let order = double_point_order(g)?;
    if order < 2 {
        return Err(PolyError::Argument("g must have order >= 2".into()));
    }
    if bound < 4 {
        return Err(PolyError::Argument(format!("degree bound {bound} < 4")));
    }
    let quotient = TruncatedDoublePoint::new(g.clone(), bound);
    let p = |s: &str| SparsePolynomial::parse(s).expect("literal");
    let m_squared: Vec<SparsePolynomial> = ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"].map(p).into();
    let q_m: Vec<SparsePolynomial> = ["x*y", "x*z", "y^2", "y*z", "z^2"].map(p).into();

    let big = quotient.span(&m_squared);
    let small = quotient.span(&q_m);
    let rank_big = rank(big.clone());
    let rank_small = rank(small.clone());
    let rank_union = rank(big.into_iter().chain(small).collect());
    Ok(rank_big == rank_small && rank_union == rank_big)
}

/// `k[x,y,z]/(x^2 + g) + m^(D+1)` with the monomial basis `x^a y^b z^c`,
/// `a <= 1`, `a + b + c <= D`.
struct TruncatedDoublePoint {
    g: SparsePolynomial,
    bound: u32,
    basis: Vec<Monomial>,
}

impl TruncatedDoublePoint {
    fn new(g: SparsePolynomial, bound: u32) -> Self {
        let mut basis = Vec::new();
        for a in 0..=1u32 {
            for b in 0..=bound.saturating_sub(a) {
                for c in 0..=(bound - a - b) {
                    basis.push(Monomial([a, b, c, 0]));
                }
            }
        }
        Self { g, bound, basis }
    }

    fn truncate(&self, p: &SparsePolynomial) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero(3);
        for (m, c) in p.terms() {
            if m.degree() <= self.bound {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    /// Rewrites `x^2 -> -g` until every term has `x`-degree at most 1. Since
    /// `g` has order >= 2 the rewriting never lowers degrees, so truncating
    /// along the way is exact.
    fn normal_form(&self, p: &SparsePolynomial) -> SparsePolynomial {
        let minus_g = self.g.neg();
        let mut current = self.truncate(p);
        loop {
            let mut done = SparsePolynomial::zero(3);
            let mut pending = SparsePolynomial::zero(3);
            for (m, c) in current.terms() {
                if m.exponent(0) >= 2 {
                    let mut rest = *m;
                    rest.0[0] -= 2;
                    pending = pending.add(&minus_g.mul_term(&rest, c)).expect("arity 3");
                } else {
                    done.add_term(*m, c.clone());
                }
            }
            if pending.is_zero() {
                return done;
            }
            current = self.truncate(&done.add(&pending).expect("arity 3"));
        }
    }

    fn coordinates(&self, p: &SparsePolynomial) -> Vec<BigRational> {
        let nf = self.normal_form(p);
        self.basis.iter().map(|m| nf.coefficient(m)).collect()
    }

    /// Coordinate vectors spanning the image of the ideal generated by
    /// `gens` (as an `A`-module, multiplied by every basis monomial).
    fn span(&self, gens: &[SparsePolynomial]) -> Vec<Vec<BigRational>> {
        let mut rows = Vec::new();
        for g in gens {
            for m in &self.basis {
                let shifted = g.mul_term(m, &BigRational::one());
                if shifted.order().unwrap_or(0) > self.bound {
                    continue;
                }
                rows.push(self.coordinates(&shifted));
            }
        }
        rows
    }
}

/// Rank by exact Gaussian elimination.
#[allow(clippy::needless_range_loop)]
fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map(Vec::len).unwrap_or(0);
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        for i in (r + 1)..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] / &pivot;
            for j in col..cols {
                let t = &factor * &rows[r][j];
                rows[i][j] -= t;
            }
        }
        r += 1;
    }
    r
}

/// Integer points of the grid `{0..k}^arity` where all generators vanish.
pub fn grid_zero_count(gens: &[SparsePolynomial], arity: usize, k: i64) -> usize {
    let mut count = 0;
    let total = (k + 1).pow(arity as u32);
    for idx in 0..total {
        let mut rest = idx;
        let point: Vec<BigRational> = (0..arity)
            .map(|_| {
                let v = rest % (k + 1);
                rest /= k + 1;
                BigRational::from_integer(BigInt::from(v))
            })
            .collect();
        if gens.iter().all(|g| g.eval(&point).is_zero()) {
            count += 1;
        }
    }
    count
}
