//! Buchberger's algorithm over `Q` with the normal selection strategy.

use num_traits::One;

use super::poly::{Monomial, SparsePolynomial};
use super::{PolyError, Result};

/// Monomial orders available for Groebner computations. Only graded reverse
/// lexicographic with `X > Y > Z > U` is supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
}

/// Hard limits for a Groebner computation. Exceeding any of them aborts
/// with [`PolyError::Budget`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_basis: usize,
    pub max_coefficient_bits: u64,
    pub max_pairs: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_basis: 512,
            max_coefficient_bits: 8192,
            max_pairs: 50_000,
        }
    }
}

/// Full normal form of `f` modulo `basis` (every term is reduced).
pub fn reduce(f: &SparsePolynomial, basis: &[SparsePolynomial]) -> SparsePolynomial {
    let mut p = f.clone();
    let mut remainder = SparsePolynomial::zero(f.arity());
    let nonzero: Vec<&SparsePolynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
    while let Some((m, c)) = p.leading_term().map(|(m, c)| (*m, c.clone())) {
        let divisor = nonzero.iter().find(|g| lead(g).divides(&m));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading_term().expect("nonzero");
                let factor = -(&c / lc);
                let q = lm.quotient_of(&m);
                p = p
                    .add(&g.mul_term(&q, &factor))
                    .expect("reduction keeps arity");
            }
            None => {
                remainder.add_term(m, c.clone());
                p.add_term(m, -c);
            }
        }
    }
    remainder
}

pub fn s_polynomial(f: &SparsePolynomial, g: &SparsePolynomial) -> SparsePolynomial {
    let (Some((mf, cf)), Some((mg, cg))) = (f.leading_term(), g.leading_term()) else {
        return SparsePolynomial::zero(f.arity());
    };
    let l = mf.lcm(mg);
    let a = f.mul_term(&mf.quotient_of(&l), &cf.recip());
    let b = g.mul_term(&mg.quotient_of(&l), &cg.recip());
    a.sub(&b).expect("same arity")
}

/// True iff every S-polynomial of `basis` reduces to zero modulo `basis`.
pub fn is_groebner_basis(basis: &[SparsePolynomial]) -> bool {
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            if !reduce(&s_polynomial(&basis[i], &basis[j]), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

pub fn groebner_basis(
    gens: &[SparsePolynomial],
    order: MonomialOrder,
) -> Result<Vec<SparsePolynomial>> {
    groebner_basis_with_budget(gens, order, Budget::default())
}

/// Reduced Groebner basis (monic, sorted by leading monomial). The unit
/// ideal yields `[1]`.
pub fn groebner_basis_with_budget(
    gens: &[SparsePolynomial],
    _order: MonomialOrder,
    budget: Budget,
) -> Result<Vec<SparsePolynomial>> {
    let arity = gens
        .first()
        .map(SparsePolynomial::arity)
        .ok_or_else(|| PolyError::Argument("empty generator list".into()))?;
    if let Some(g) = gens.iter().find(|g| g.arity() != arity) {
        return Err(PolyError::Arity {
            left: arity,
            right: g.arity(),
        });
    }

    let mut basis: Vec<SparsePolynomial> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for g in gens {
        let r = reduce(g, &basis);
        if !r.is_zero() {
            push_element(&mut basis, &mut pairs, r.monic(), budget)?;
        }
    }

    let mut processed = 0usize;
    while !pairs.is_empty() {
        processed += 1;
        if processed > budget.max_pairs {
            return Err(PolyError::Budget(format!(
                "more than {} critical pairs",
                budget.max_pairs
            )));
        }
        // normal strategy: smallest lcm first, ties by position
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| (pair_lcm(&basis, i, j), i, j))
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(k);
        let (li, lj) = (lead(&basis[i]), lead(&basis[j]));
        if li.is_coprime(&lj) || chain_criterion(&basis, &pairs, i, j) {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(vec![SparsePolynomial::one(arity)]);
        }
        push_element(&mut basis, &mut pairs, r.monic(), budget)?;
    }

    Ok(reduce_basis(basis))
}

fn lead(p: &SparsePolynomial) -> Monomial {
    p.leading_monomial().expect("basis elements are nonzero")
}

fn pair_lcm(basis: &[SparsePolynomial], i: usize, j: usize) -> Monomial {
    lead(&basis[i]).lcm(&lead(&basis[j]))
}

/// Buchberger's second criterion: `(i, j)` is redundant if some other
/// leading monomial divides `lcm(lt_i, lt_j)` and both pairs with it have
/// already been treated.
fn chain_criterion(
    basis: &[SparsePolynomial],
    pending: &[(usize, usize)],
    i: usize,
    j: usize,
) -> bool {
    let l = pair_lcm(basis, i, j);
    let is_pending = |a: usize, b: usize| {
        let key = (a.min(b), a.max(b));
        pending.contains(&key)
    };
    (0..basis.len()).any(|k| {
        k != i && k != j && lead(&basis[k]).divides(&l) && !is_pending(i, k) && !is_pending(j, k)
    })
}

fn push_element(
    basis: &mut Vec<SparsePolynomial>,
    pairs: &mut Vec<(usize, usize)>,
    g: SparsePolynomial,
    budget: Budget,
) -> Result<()> {
    if basis.len() >= budget.max_basis {
        return Err(PolyError::Budget(format!(
            "basis grew past {} elements",
            budget.max_basis
        )));
    }
    let bits = g.max_coefficient_bits();
    if bits > budget.max_coefficient_bits {
        return Err(PolyError::Budget(format!(
            "coefficient of {bits} bits exceeds {}",
            budget.max_coefficient_bits
        )));
    }
    let n = basis.len();
    pairs.extend((0..n).map(|i| (i, n)));
    basis.push(g);
    Ok(())
}

/// Minimalizes, interreduces and normalizes to monic form.
fn reduce_basis(mut basis: Vec<SparsePolynomial>) -> Vec<SparsePolynomial> {
    basis.sort_by_key(lead);
    let mut minimal: Vec<SparsePolynomial> = Vec::new();
    for g in basis {
        let lg = lead(&g);
        if !minimal.iter().any(|h| lead(h).divides(&lg)) {
            minimal.retain(|h| !lg.divides(&lead(h)));
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<SparsePolynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, g)| g.clone())
            .collect();
        reduced.push(reduce(&minimal[k], &others).monic());
    }
    reduced.sort_by_key(lead);
    debug_assert!(reduced
        .iter()
        .all(|g| g.leading_term().map(|(_, c)| c.is_one()).unwrap_or(false)));
    reduced
}

/// Krull dimension of `k[vars]/I` from the leading monomials of a Groebner
/// basis: the largest set of variables containing the support of no leading
/// monomial. The unit ideal gives -1.
pub fn dimension_from_basis(basis: &[SparsePolynomial], arity: usize) -> i64 {
    if basis.iter().any(SparsePolynomial::is_constant) {
        return -1;
    }
    let supports: Vec<u32> = basis.iter().map(|g| lead(g).support()).collect();
    (0u32..(1 << arity))
        .filter(|&s| supports.iter().all(|&lm| lm & !s != 0))
        .map(|s| i64::from(s.count_ones()))
        .max()
        .unwrap_or(0)
}
