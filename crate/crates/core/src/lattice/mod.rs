//! Weighted dual graphs of exceptional divisors viewed as intersection lattices.
//!
//! A [`DualGraph`] stores the exceptional curves `E_i` (self-intersection and
//! genus) and their mutual intersection numbers. Cycles are integer vectors
//! indexed by vertex position; canonical cycles may carry rational
//! coefficients and live in [`RationalCycle`].

mod format;

pub use format::{parse_graph_file, GraphFile};

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("edge joins vertex `{0}` to itself")]
    SelfLoop(String),
    #[error("edge multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("cycle has {found} coefficients but the graph has {expected} vertices")]
    Support { expected: usize, found: usize },
    #[error("cycle has a negative coefficient at vertex `{0}`")]
    NegativeCoefficient(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex `{id}` has self-intersection {value}, expected <= -1")]
    SelfIntersection { id: String, value: i64 },
    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("anti-nef closure exceeded the coefficient bound {0}")]
    NonTermination(i64),
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
    #[error("internal error: {0}")]
    Internal(&'static str),
}

pub type Result<T> = std::result::Result<T, LatticeError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub self_intersection: i64,
    pub genus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub a: String,
    pub b: String,
    pub multiplicity: u32,
}

/// Weighted dual graph of an exceptional divisor.
///
/// Construction only checks structure (unique ids, known endpoints, no
/// loops). The geometric invariants are checked by [`DualGraph::validate`],
/// so that invalid lattices can still be inspected, e.g. by
/// [`is_negative_definite`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    index: HashMap<String, usize>,
    matrix: Vec<Vec<i64>>,
}

impl DualGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(LatticeError::DuplicateVertex(v.id.clone()));
            }
        }
        let n = vertices.len();
        let mut matrix = vec![vec![0i64; n]; n];
        for (i, v) in vertices.iter().enumerate() {
            matrix[i][i] = v.self_intersection;
        }
        for e in &edges {
            let a = *index
                .get(&e.a)
                .ok_or_else(|| LatticeError::UnknownVertex(e.a.clone()))?;
            let b = *index
                .get(&e.b)
                .ok_or_else(|| LatticeError::UnknownVertex(e.b.clone()))?;
            if a == b {
                return Err(LatticeError::SelfLoop(e.a.clone()));
            }
            if e.multiplicity == 0 {
                return Err(LatticeError::ZeroMultiplicity);
            }
            let m = i64::from(e.multiplicity);
            matrix[a][b] += m;
            matrix[b][a] += m;
        }
        Ok(Self {
            vertices,
            edges,
            index,
            matrix,
        })
    }

    /// Convenience constructor from `(id, self_intersection, genus)` triples
    /// and `(a, b, multiplicity)` edges.
    pub fn from_triples(
        vertices: &[(&str, i64, u32)],
        edges: &[(&str, &str, u32)],
    ) -> Result<Self> {
        Self::new(
            vertices
                .iter()
                .map(|&(id, s, g)| Vertex {
                    id: id.to_string(),
                    self_intersection: s,
                    genus: g,
                })
                .collect(),
            edges
                .iter()
                .map(|&(a, b, m)| Edge {
                    a: a.to_string(),
                    b: b.to_string(),
                    multiplicity: m,
                })
                .collect(),
        )
    }

    /// Checks connectedness, `E_i^2 <= -1` and negative definiteness.
    pub fn validate(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(LatticeError::Empty);
        }
        for v in &self.vertices {
            if v.self_intersection > -1 {
                return Err(LatticeError::SelfIntersection {
                    id: v.id.clone(),
                    value: v.self_intersection,
                });
            }
        }
        if !self.is_connected() {
            return Err(LatticeError::Disconnected);
        }
        if !is_negative_definite(self) {
            return Err(LatticeError::NotNegativeDefinite);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// The intersection matrix: self-intersections on the diagonal, summed
    /// edge multiplicities off it.
    pub fn intersection_matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.matrix[i]
            .iter()
            .enumerate()
            .filter(move |&(j, &m)| j != i && m != 0)
            .map(|(j, _)| j)
    }

    fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.len()).collect();
        self.components_of(&all).len() <= 1
    }

    /// Connected components of the full subgraph on `subset`, each sorted,
    /// ordered by smallest member.
    fn components_of(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut inside = vec![false; self.len()];
        for &i in subset {
            inside[i] = true;
        }
        let mut seen = vec![false; self.len()];
        let mut components = Vec::new();
        for &start in subset {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(i) = stack.pop() {
                comp.push(i);
                for j in self.neighbours(i) {
                    if inside[j] && !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components.sort_by_key(|c| c[0]);
        components
    }

    /// Full subgraph on the given vertex positions.
    pub fn induced_subgraph(&self, positions: &[usize]) -> Result<Self> {
        let keep: std::collections::HashSet<&str> = positions
            .iter()
            .map(|&i| self.vertices[i].id.as_str())
            .collect();
        let vertices = positions
            .iter()
            .map(|&i| self.vertices[i].clone())
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| keep.contains(e.a.as_str()) && keep.contains(e.b.as_str()))
            .cloned()
            .collect();
        Self::new(vertices, edges)
    }

    /// Builds a cycle from `(id, coefficient)` pairs; missing ids get 0.
    pub fn cycle<S: AsRef<str>>(&self, pairs: &[(S, i64)]) -> Result<Cycle> {
        let mut coeffs = vec![0; self.len()];
        for (id, c) in pairs {
            let i = self
                .index_of(id.as_ref())
                .ok_or_else(|| LatticeError::UnknownVertex(id.as_ref().to_string()))?;
            coeffs[i] += *c;
        }
        Ok(Cycle::new(coeffs))
    }

    /// The reduced exceptional cycle `E = sum E_i`.
    pub fn reduced_cycle(&self) -> Cycle {
        Cycle::new(vec![1; self.len()])
    }

    /// The cycle `E_i`.
    pub fn vertex_cycle(&self, i: usize) -> Cycle {
        let mut coeffs = vec![0; self.len()];
        coeffs[i] = 1;
        Cycle::new(coeffs)
    }

    fn check_support(&self, len: usize) -> Result<()> {
        if len != self.len() {
            return Err(LatticeError::Support {
                expected: self.len(),
                found: len,
            });
        }
        Ok(())
    }

    /// `(Z . E_i)_i`.
    pub fn pairings_with_vertices(&self, z: &Cycle) -> Result<Vec<i64>> {
        self.check_support(z.len())?;
        self.matrix.iter().map(|row| dot(row, &z.coeffs)).collect()
    }

    /// `K_X . E_i = -E_i^2 - 2 + 2 g_i` by adjunction.
    pub fn canonical_degrees(&self) -> Vec<i64> {
        self.vertices
            .iter()
            .map(|v| -v.self_intersection - 2 + 2 * i64::from(v.genus))
            .collect()
    }
}

fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    a.iter().zip(b).try_fold(0i64, |acc, (&x, &y)| {
        x.checked_mul(y)
            .and_then(|p| acc.checked_add(p))
            .ok_or(LatticeError::Overflow)
    })
}

/// Integral cycle on a dual graph, coefficients indexed by vertex position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    coeffs: Vec<i64>,
}

impl Cycle {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self { coeffs }
    }

    pub fn zero(len: usize) -> Self {
        Self::new(vec![0; len])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn max_coefficient(&self) -> i64 {
        self.coeffs.iter().copied().max().unwrap_or(0)
    }

    /// Coefficientwise `self >= other`.
    pub fn dominates(&self, other: &Cycle) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a >= b)
    }

    pub fn to_rational(&self) -> RationalCycle {
        RationalCycle::new(
            self.coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// Renders as `id=coeff,...` with the graph's vertex ids.
    pub fn display_with<'a>(&'a self, g: &'a DualGraph) -> impl fmt::Display + 'a {
        CycleDisplay {
            ids: g.vertices.iter().map(|v| v.id.as_str()).collect(),
            values: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl std::ops::Add for &Cycle {
    type Output = Cycle;

    fn add(self, rhs: &Cycle) -> Cycle {
        Cycle::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

/// Cycle with rational coefficients (canonical cycles).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCycle {
    coeffs: Vec<BigRational>,
}

impl RationalCycle {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn display_with<'a>(&'a self, g: &'a DualGraph) -> impl fmt::Display + 'a {
        CycleDisplay {
            ids: g.vertices.iter().map(|v| v.id.as_str()).collect(),
            values: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

struct CycleDisplay<'a> {
    ids: Vec<&'a str>,
    values: Vec<String>,
}

impl fmt::Display for CycleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (id, v)) in self.ids.iter().zip(&self.values).enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{id}={v}")?;
        }
        Ok(())
    }
}

/// `Z^T M W` for integral cycles.
pub fn pairing(g: &DualGraph, z: &Cycle, w: &Cycle) -> Result<i64> {
    g.check_support(w.len())?;
    let zm = g.pairings_with_vertices(z)?;
    dot(&zm, &w.coeffs)
}

/// `Z^T M W` over the rationals.
pub fn pairing_rational(
    g: &DualGraph,
    z: &RationalCycle,
    w: &RationalCycle,
) -> Result<BigRational> {
    g.check_support(z.coeffs.len())?;
    g.check_support(w.coeffs.len())?;
    let mut acc = BigRational::zero();
    for (i, row) in g.matrix.iter().enumerate() {
        if z.coeffs[i].is_zero() {
            continue;
        }
        let mut row_sum = BigRational::zero();
        for (j, &m) in row.iter().enumerate() {
            if m != 0 {
                row_sum += &w.coeffs[j] * BigRational::from_integer(BigInt::from(m));
            }
        }
        acc += &z.coeffs[i] * row_sum;
    }
    Ok(acc)
}

/// `Z . K_X`, always an integer since `K_X . E_i` is.
pub fn canonical_pairing(g: &DualGraph, z: &Cycle) -> Result<i64> {
    g.check_support(z.len())?;
    dot(&g.canonical_degrees(), &z.coeffs)
}

/// Leading principal minors of the intersection matrix, computed exactly
/// by fraction-free (Bareiss) elimination.
pub fn leading_principal_minors(g: &DualGraph) -> Vec<BigInt> {
    let n = g.len();
    let mut a: Vec<Vec<BigInt>> = g
        .matrix
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            // Later minors need pivoting to compute, but a zero minor already
            // rules out definiteness; fill the remainder by direct expansion.
            for m in (k + 1)..n {
                minors.push(determinant(&g.matrix, m + 1));
            }
            return minors;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                a[i][j] = (&pivot * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = pivot;
    }
    minors
}

/// Determinant of the leading `size x size` block, with row pivoting.
#[allow(clippy::needless_range_loop)]
fn determinant(m: &[Vec<i64>], size: usize) -> BigInt {
    let mut a: Vec<Vec<BigRational>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| BigRational::from_integer(BigInt::from(m[i][j])))
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for k in 0..size {
        let Some(p) = (k..size).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        for i in (k + 1)..size {
            let factor = &a[i][k] / &pivot;
            for j in k..size {
                let t = &factor * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    det.to_integer()
}

/// Sylvester's criterion: the `k`-th leading principal minor has sign
/// `(-1)^k` for every `k`.
pub fn is_negative_definite(g: &DualGraph) -> bool {
    if g.is_empty() {
        return false;
    }
    leading_principal_minors(g)
        .iter()
        .enumerate()
        .all(|(k, d)| {
            if k % 2 == 0 {
                d.is_negative()
            } else {
                d.is_positive()
            }
        })
}

/// `Z . E_i <= 0` for every vertex.
pub fn is_anti_nef(g: &DualGraph, z: &Cycle) -> Result<bool> {
    check_effective(g, z)?;
    Ok(g.pairings_with_vertices(z)?.iter().all(|&p| p <= 0))
}

fn check_effective(g: &DualGraph, z: &Cycle) -> Result<()> {
    g.check_support(z.len())?;
    if let Some(i) = z.coeffs.iter().position(|&c| c < 0) {
        return Err(LatticeError::NegativeCoefficient(g.vertices[i].id.clone()));
    }
    Ok(())
}

/// Coefficient bound for the closure loop: `64 * sum |E_i^2|`, scaled by the
/// largest starting coefficient.
fn closure_bound(g: &DualGraph, z: &Cycle) -> i64 {
    let base: i64 = 64
        * g.vertices
            .iter()
            .map(|v| v.self_intersection.abs())
            .sum::<i64>();
    base.max(1).saturating_mul(z.max_coefficient().max(1))
}

/// The least anti-nef cycle `W >= Z`, raising the lowest-index vertex with
/// positive pairing at each step.
pub fn anti_nef_closure(g: &DualGraph, z: &Cycle) -> Result<Cycle> {
    let order: Vec<usize> = (0..g.len()).collect();
    anti_nef_closure_in_order(g, z, &order)
}

/// Anti-nef closure where each step raises the first vertex of `order` whose
/// pairing with the current cycle is positive. The result does not depend on
/// `order` when the graph is negative definite.
pub fn anti_nef_closure_in_order(g: &DualGraph, z: &Cycle, order: &[usize]) -> Result<Cycle> {
    check_effective(g, z)?;
    let bound = closure_bound(g, z);
    let mut w = z.coeffs.clone();
    let mut pairings = g.pairings_with_vertices(z)?;
    loop {
        let Some(&i) = order.iter().find(|&&i| pairings[i] > 0) else {
            return Ok(Cycle::new(w));
        };
        w[i] += 1;
        if w[i] > bound {
            return Err(LatticeError::NonTermination(bound));
        }
        for (p, row) in pairings.iter_mut().zip(&g.matrix) {
            *p += row[i];
        }
    }
}

/// Artin's fundamental cycle: the anti-nef closure of the reduced cycle.
pub fn fundamental_cycle(g: &DualGraph) -> Result<Cycle> {
    anti_nef_closure(g, &g.reduced_cycle())
}

/// Solves `Z_K . E_i = E_i^2 + 2 - 2 g_i` exactly, so that `K_X = -Z_K`
/// numerically.
#[allow(clippy::needless_range_loop)]
pub fn canonical_cycle(g: &DualGraph) -> Result<RationalCycle> {
    let n = g.len();
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut a: Vec<Vec<BigRational>> = g
        .matrix
        .iter()
        .zip(&g.vertices)
        .map(|(row, v)| {
            let mut r: Vec<BigRational> = row.iter().map(|&x| q(x)).collect();
            r.push(q(v.self_intersection + 2 - 2 * i64::from(v.genus)));
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n)
            .find(|&r| !a[r][k].is_zero())
            .ok_or(LatticeError::Internal("singular intersection matrix"))?;
        a.swap(p, k);
        let pivot = a[k][k].clone();
        for j in k..=n {
            a[k][j] = &a[k][j] / &pivot;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].clone();
            for j in k..=n {
                let t = &factor * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    Ok(RationalCycle::new(
        a.into_iter().map(|mut r| r.pop().unwrap()).collect(),
    ))
}

/// Connected components of `Z^perp`, the full subgraph on the vertices with
/// `Z . E_i = 0`.
pub fn z_perp(g: &DualGraph, z: &Cycle) -> Result<Vec<DualGraph>> {
    z_perp_positions(g, z)?
        .iter()
        .map(|comp| g.induced_subgraph(comp))
        .collect()
}

/// As [`z_perp`], returning vertex positions.
pub fn z_perp_positions(g: &DualGraph, z: &Cycle) -> Result<Vec<Vec<usize>>> {
    let pairings = g.pairings_with_vertices(z)?;
    let orth: Vec<usize> = (0..g.len()).filter(|&i| pairings[i] == 0).collect();
    Ok(g.components_of(&orth))
}

/// `p_a(Z) = (Z^2 + Z.K)/2 + 1`.
pub fn arithmetic_genus(g: &DualGraph, z: &Cycle) -> Result<i64> {
    let zz = pairing(g, z, z)?;
    let zk = canonical_pairing(g, z)?;
    Ok((zz + zk) / 2 + 1)
}

/// Artin's criterion: rational iff the fundamental cycle has arithmetic
/// genus zero.
pub fn artin_rational_test(g: &DualGraph) -> Result<bool> {
    let zf = fundamental_cycle(g)?;
    Ok(arithmetic_genus(g, &zf)? == 0)
}

/// Standard ADE configurations (all vertices `-2`, genus 0).
pub mod ade {
    use super::{DualGraph, Result};

    fn build(n: usize, edges: &[(usize, usize)]) -> Result<DualGraph> {
        let ids: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
        let vertices: Vec<(&str, i64, u32)> = ids.iter().map(|s| (s.as_str(), -2, 0)).collect();
        let edges: Vec<(&str, &str, u32)> = edges
            .iter()
            .map(|&(a, b)| (ids[a].as_str(), ids[b].as_str(), 1))
            .collect();
        DualGraph::from_triples(&vertices, &edges)
    }

    /// Chain of `n` vertices.
    pub fn a(n: usize) -> Result<DualGraph> {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        build(n, &edges)
    }

    /// Chain `e1 - ... - e(n-1)` with `en` attached to `e(n-2)`.
    pub fn d(n: usize) -> Result<DualGraph> {
        assert!(n >= 4);
        let mut edges: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
        edges.push((n - 3, n - 1));
        build(n, &edges)
    }

    /// Chain `e1 - ... - e(n-1)` with `en` attached to `e3`.
    pub fn e(n: usize) -> Result<DualGraph> {
        assert!((6..=8).contains(&n));
        let mut edges: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
        edges.push((2, n - 1));
        build(n, &edges)
    }
}
