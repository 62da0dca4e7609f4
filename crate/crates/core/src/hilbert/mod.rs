//! Normal Hilbert coefficients and `p_g`-ideal criteria from numerical data.
//!
//! An ideal `I = I_Z` represented by an anti-nef cycle `Z` is described here
//! only through its numerical shadow: `Z^2`, `Z.K_X`, the geometric genus
//! `p_g` and the sequence `h^1(O_X(-nZ))`. The sequence itself is analytic
//! data; what can be checked combinatorially is checked on construction.

mod format;

pub use format::{parse_datum_file, DatumFile};

use std::fmt;

use thiserror::Error;

use crate::lattice::{self, Cycle, DualGraph, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("Z^2 = {0} must be negative")]
    NonNegativeSquare(i64),
    #[error("Z^2 + Z.K = {zz} + {zk} is odd")]
    Parity { zz: i64, zk: i64 },
    #[error("p_g = {0} must be nonnegative")]
    NegativeGenus(i64),
    #[error("h1 sequence has {len} entries, need at least p_g + 1 = {needed}")]
    ShortSequence { len: usize, needed: usize },
    #[error("h1[{n}] = {value} lies outside [0, p_g = {pg}]")]
    OutOfBounds { n: usize, value: i64, pg: i64 },
    #[error("h1 increases at n = {n}")]
    Increasing { n: usize },
    #[error("h1 is not convex at n = {n}: h1[n] - h1[n+1] < h1[n+1] - h1[n+2]")]
    NotConvex { n: usize },
    #[error("h1 is not constant from n = p_g on (changes at n = {n})")]
    NotStabilized { n: usize },
    #[error("colength at n = {n} is {value}, expected a positive, strictly increasing sequence")]
    Colength { n: u64, value: i64 },
    #[error("multiplicity {e0} is smaller than the colength {colength} of I")]
    MultiplicityBelowColength { e0: i64, colength: i64 },
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("argument out of range: {0}")]
    Argument(String),
    #[error("cycle is not anti-nef")]
    NotAntiNef,
    #[error("arithmetic overflow")]
    Overflow,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub type Result<T> = std::result::Result<T, HilbertError>;

/// Numerical data of an ideal `I_Z`: `Z^2`, `Z.K_X`, `p_g(A)` and
/// `h1[n] = h^1(O_X(-nZ))` for `n = 1..=N`, extended constantly past `N`.
///
/// Invariants, checked by [`NumericalIdealDatum::new`]:
/// `Z^2 < 0`, `Z^2 + Z.K` even, `N >= p_g + 1`, `0 <= h1[n] <= p_g`, the
/// sequence (with `h1[0] = p_g`) is nonincreasing, convex and constant from
/// `n = p_g` on, and the Riemann-Roch colengths are positive, strictly
/// increasing and bounded by the multiplicity at `n = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalIdealDatum {
    label: Option<String>,
    zz: i64,
    zk: i64,
    pg: i64,
    h1: Vec<i64>,
}

impl NumericalIdealDatum {
    pub fn new(zz: i64, zk: i64, pg: i64, h1: Vec<i64>) -> Result<Self> {
        let d = Self {
            label: None,
            zz,
            zk,
            pg,
            h1,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Datum of `I_Z` for an anti-nef cycle on a graph, with `Z^2` and `Z.K`
    /// read off the lattice.
    pub fn from_cycle(g: &DualGraph, z: &Cycle, pg: i64, h1: Vec<i64>) -> Result<Self> {
        if z.is_zero() || !lattice::is_anti_nef(g, z)? {
            return Err(HilbertError::NotAntiNef);
        }
        let zz = lattice::pairing(g, z, z)?;
        let zk = lattice::canonical_pairing(g, z)?;
        Self::new(zz, zk, pg, h1)
    }

    /// Datum of a cycle on a rational singularity: `p_g = 0`, `h1 = 0`.
    pub fn rational(zz: i64, zk: i64) -> Result<Self> {
        Self::new(zz, zk, 0, vec![0])
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn zz(&self) -> i64 {
        self.zz
    }

    pub fn zk(&self) -> i64 {
        self.zk
    }

    pub fn pg(&self) -> i64 {
        self.pg
    }

    /// The stored prefix `h1[1..=N]`.
    pub fn h1_prefix(&self) -> &[i64] {
        &self.h1
    }

    /// `h^1(O_X(-nZ))`, with `h1(0) = p_g` and constant extension past `N`.
    pub fn h1(&self, n: usize) -> i64 {
        match n {
            0 => self.pg,
            n if n <= self.h1.len() => self.h1[n - 1],
            _ => *self
                .h1
                .last()
                .expect("validated datum has a nonempty h1 sequence"),
        }
    }

    /// The datum of `I^n`, represented by `nZ`: `(nZ)^2 = n^2 Z^2`,
    /// `nZ.K = n Z.K` and `h1'[m] = h1[nm]`.
    pub fn power(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(HilbertError::Argument("power must be positive".into()));
        }
        let k = n as i64;
        let zz = k.checked_mul(k).and_then(|k2| k2.checked_mul(self.zz));
        let zk = k.checked_mul(self.zk);
        let (Some(zz), Some(zk)) = (zz, zk) else {
            return Err(HilbertError::Overflow);
        };
        let len = self.h1.len().max(self.pg as usize + 1);
        let h1 = (1..=len).map(|m| self.h1(n * m)).collect();
        let d = Self::new(zz, zk, self.pg, h1)?;
        Ok(match &self.label {
            Some(l) => d.with_label(format!("{l}^{n}")),
            None => d,
        })
    }

    fn validate(&self) -> Result<()> {
        if self.zz >= 0 {
            return Err(HilbertError::NonNegativeSquare(self.zz));
        }
        if (self.zz + self.zk).rem_euclid(2) != 0 {
            return Err(HilbertError::Parity {
                zz: self.zz,
                zk: self.zk,
            });
        }
        if self.pg < 0 {
            return Err(HilbertError::NegativeGenus(self.pg));
        }
        let needed = self.pg as usize + 1;
        if self.h1.len() < needed {
            return Err(HilbertError::ShortSequence {
                len: self.h1.len(),
                needed,
            });
        }
        let n_max = self.h1.len();
        for n in 1..=n_max {
            let v = self.h1(n);
            if !(0..=self.pg).contains(&v) {
                return Err(HilbertError::OutOfBounds {
                    n,
                    value: v,
                    pg: self.pg,
                });
            }
        }
        for n in 0..n_max {
            if self.h1(n + 1) > self.h1(n) {
                return Err(HilbertError::Increasing { n });
            }
        }
        // h1[n] >= 2 h1[n+1] - h1[n+2], from 0 -> O(-nZ) -> O(-(n+1)Z)^2 -> O(-(n+2)Z) -> 0.
        for n in 0..n_max {
            if self.h1(n) - self.h1(n + 1) < self.h1(n + 1) - self.h1(n + 2) {
                return Err(HilbertError::NotConvex { n });
            }
        }
        let stable = self.h1(self.pg as usize);
        for n in (self.pg as usize)..=n_max {
            if self.h1(n) != stable {
                return Err(HilbertError::NotStabilized { n });
            }
        }

        // The colength difference is eventually governed by the linear term
        // -((2n+1) zz + zk)/2, so checking up to the point where that term is
        // positive (and past the stored prefix) covers every n.
        let colength_1 = self.kato_colength(1)?;
        if colength_1 < 1 {
            return Err(HilbertError::Colength {
                n: 1,
                value: colength_1,
            });
        }
        let linear_from = (self.zk.unsigned_abs() / self.zz.unsigned_abs()) as usize + 2;
        let horizon = (n_max + 1).max(linear_from) as u64;
        let mut prev = colength_1;
        for n in 2..=horizon {
            let c = self.kato_colength(n)?;
            if c <= prev {
                return Err(HilbertError::Colength { n, value: c });
            }
            prev = c;
        }
        let e0 = -self.zz;
        if e0 < colength_1 {
            return Err(HilbertError::MultiplicityBelowColength {
                e0,
                colength: colength_1,
            });
        }
        Ok(())
    }

    /// Kato's Riemann-Roch: `l(A / closure(I^n)) = -(n^2 Z^2 + n Z.K)/2 + p_g - h1[n]`.
    pub fn kato_colength(&self, n: u64) -> Result<i64> {
        if n == 0 {
            return Err(HilbertError::Argument("colength needs n >= 1".into()));
        }
        let n128 = i128::from(n);
        let twice = n128 * n128 * i128::from(self.zz) + n128 * i128::from(self.zk);
        if twice % 2 != 0 {
            return Err(HilbertError::Parity {
                zz: self.zz,
                zk: self.zk,
            });
        }
        let h1 = usize::try_from(n)
            .map(|n| self.h1(n))
            .unwrap_or_else(|_| self.h1(usize::MAX));
        let value = -twice / 2 + i128::from(self.pg) - i128::from(h1);
        i64::try_from(value).map_err(|_| HilbertError::Overflow)
    }

    /// `(e0bar, e1bar, e2bar) = (-Z^2, (-Z^2 + Z.K)/2, p_g - h1[n])` for any
    /// `n >= p_g`.
    pub fn coefficients(&self) -> Result<NormalHilbertCoefficients> {
        if (self.zz + self.zk).rem_euclid(2) != 0 {
            return Err(HilbertError::Parity {
                zz: self.zz,
                zk: self.zk,
            });
        }
        let e0bar = -self.zz;
        let e1bar = (-self.zz + self.zk) / 2;
        let e2bar = self.pg - self.h1(self.pg as usize);
        if e1bar < 0 {
            return Err(HilbertError::Inconsistent(format!(
                "e1bar = {e1bar} is negative"
            )));
        }
        Ok(NormalHilbertCoefficients {
            e0bar,
            e1bar,
            e2bar,
        })
    }

    /// Least `n >= 0` with `h1[n] = h1[n+1]`; never exceeds `p_g`.
    pub fn stabilization_index(&self) -> usize {
        (0..)
            .find(|&n| self.h1(n) == self.h1(n + 1))
            .expect("a validated sequence is eventually constant")
    }

    /// Evaluates all three equivalent `p_g`-ideal criteria and insists they
    /// agree.
    pub fn pg_ideal_test(&self) -> Result<PgIdealReport> {
        let coeffs = self.coefficients()?;
        let colength = self.kato_colength(1)?;
        let h1_1 = self.h1(1);
        let report = PgIdealReport {
            pg: self.pg,
            h1_1,
            e1bar: coeffs.e1bar,
            e0_minus_colength: coeffs.e0bar - colength,
            e2bar: coeffs.e2bar,
        };
        let evidence = report.evidence();
        if evidence.iter().any(|&b| b != evidence[0]) {
            return Err(HilbertError::Inconsistent(format!(
                "p_g criteria disagree: h1[1]=p_g {}, e1bar=e0-l(A/I) {}, e2bar=0 {}",
                evidence[0], evidence[1], evidence[2]
            )));
        }
        Ok(report)
    }
}

impl fmt::Display for NumericalIdealDatum {
    /// Writes the datum-file line for this datum.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "datum {} zz={} zk={} pg={} h1=",
            self.label.as_deref().unwrap_or("d"),
            self.zz,
            self.zk,
            self.pg
        )?;
        for (i, v) in self.h1.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// `(e0bar, e1bar, e2bar)` of the normal Hilbert polynomial
/// `P(n) = e0bar C(n+2, 2) - e1bar C(n+1, 1) + e2bar`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalHilbertCoefficients {
    pub e0bar: i64,
    pub e1bar: i64,
    pub e2bar: i64,
}

impl NormalHilbertCoefficients {
    /// `P(n)`, which equals `l(A / closure(I^{n+1}))` for `n >= p_g - 1`.
    pub fn eval(&self, n: u64) -> i64 {
        let n = n as i64;
        self.e0bar * ((n + 2) * (n + 1) / 2) - self.e1bar * (n + 1) + self.e2bar
    }
}

impl fmt::Display for NormalHilbertCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.e0bar, self.e1bar, self.e2bar)
    }
}

/// Outcome of the three-way `p_g`-ideal test, with the quantities compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PgIdealReport {
    pub pg: i64,
    pub h1_1: i64,
    pub e1bar: i64,
    pub e0_minus_colength: i64,
    pub e2bar: i64,
}

impl PgIdealReport {
    /// `[h1[1] = p_g, e1bar = e0 - l(A/I), e2bar = 0]`.
    pub fn evidence(&self) -> [bool; 3] {
        [
            self.h1_1 == self.pg,
            self.e1bar == self.e0_minus_colength,
            self.e2bar == 0,
        ]
    }

    pub fn verdict(&self) -> bool {
        self.evidence()[0]
    }
}

/// `epsilon(Z, Z') = p_g - h1(Z) - h1(Z') + h1(Z + Z')`, the colength of
/// `a I_{Z'} + b I_Z` in `I_{Z+Z'}`; it must lie in `[0, p_g]` and vanish
/// whenever `Z` is a `p_g`-cycle.
pub fn epsilon(pg: i64, h1_z: i64, h1_w: i64, h1_zw: i64) -> Result<i64> {
    for (name, v) in [("h1(Z)", h1_z), ("h1(Z')", h1_w), ("h1(Z+Z')", h1_zw)] {
        if !(0..=pg).contains(&v) {
            return Err(HilbertError::Argument(format!(
                "{name} = {v} outside [0, {pg}]"
            )));
        }
    }
    let eps = pg - h1_z - h1_w + h1_zw;
    if !(0..=pg).contains(&eps) {
        return Err(HilbertError::Inconsistent(format!(
            "epsilon = {eps} outside [0, {pg}]"
        )));
    }
    if h1_z == pg && eps != 0 {
        return Err(HilbertError::Inconsistent(format!(
            "Z is a p_g-cycle but epsilon = {eps}"
        )));
    }
    Ok(eps)
}

/// `p_g(A) = e2bar(I_Z) + sum p_g(A_i)` over the singularities obtained by
/// contracting the components of `Z^perp`.
pub fn pg_additivity_check(pg_total: u64, e2bar: u64, component_pgs: &[u64]) -> bool {
    pg_total == e2bar + component_pgs.iter().sum::<u64>()
}

/// The bigraded Rees algebra `R(I, J)` is Cohen-Macaulay and normal iff both
/// ideals are `p_g`-ideals.
pub fn multi_rees_verdict(d1: &NumericalIdealDatum, d2: &NumericalIdealDatum) -> Result<bool> {
    if d1.pg != d2.pg {
        return Err(HilbertError::Argument(format!(
            "data come from different singularities (p_g {} vs {})",
            d1.pg, d2.pg
        )));
    }
    Ok(d1.pg_ideal_test()?.verdict() && d2.pg_ideal_test()?.verdict())
}
