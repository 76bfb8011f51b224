//! The logarithmic unit lattice of `Z C_n` and balancing of projection
//! norms by nearest-plane rounding.
//!
//! Coordinates are indexed by the irrational frequency classes of `C_n`
//! (those of order not in `{1, 2, 3, 4, 6}`); a unit has eigenvalues of
//! absolute value one on every rational class.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{self, LatticePoint};
use crate::error::{Error, Result};
use crate::repdecomp::{cyclic_components, projection_norms, IsotypicComponent};
use crate::units::{layer_translation, EquivalenceMove, Normalizer, SignedPerm, UnitElement};

fn dotf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Irrational components of `C_n`.
pub fn log_components(n: usize) -> Vec<IsotypicComponent> {
    cyclic_components(n)
        .into_iter()
        .filter(|c| !c.rational)
        .collect()
}

/// `L(u) = (log |lambda_alpha(u)|^2)_alpha` over the irrational classes.
pub fn log_map(u: &UnitElement) -> Result<Vec<f64>> {
    let spec = u
        .spectrum()
        .ok_or_else(|| Error::Unsupported("log map of a non-circulant unit".into()))?;
    Ok(log_components(u.degree())
        .iter()
        .map(|c| spec[c.frequency()].ln())
        .collect())
}

/// `N(z) = (log ||z_alpha||^2)_alpha` over the irrational classes.
pub fn log_norms(z: &[BigInt]) -> Result<Vec<f64>> {
    let comps = log_components(z.len());
    let prof = projection_norms(z, &comps);
    let mut out = Vec::with_capacity(comps.len());
    for (i, v) in prof.component_norms.iter().enumerate() {
        if *v <= 10.0 * prof.error_bound || *v <= 0.0 {
            return Err(Error::ZeroProjection(comps[i].frequency()));
        }
        out.push(v.ln());
    }
    Ok(out)
}

/// The lattice spanned by `L(u)` for a family of units.
#[derive(Clone, Debug)]
pub struct LogLattice {
    n: usize,
    units: Vec<UnitElement>,
    log_vectors: Vec<Vec<f64>>,
    gram_schmidt: Vec<Vec<f64>>,
}

impl LogLattice {
    /// Builds the lattice from infinite-order circulant units, which must be
    /// independent.
    pub fn new(n: usize, units: Vec<UnitElement>) -> Result<Self> {
        let mut log_vectors = Vec::with_capacity(units.len());
        let mut gram_schmidt: Vec<Vec<f64>> = Vec::with_capacity(units.len());
        for u in &units {
            if u.degree() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: u.degree(),
                });
            }
            let l = log_map(u)?;
            let mut b = l.clone();
            for q in &gram_schmidt {
                let c = dotf(&b, q) / dotf(q, q);
                for (x, y) in b.iter_mut().zip(q) {
                    *x -= c * y;
                }
            }
            if dotf(&b, &b).sqrt() <= 1e-9 * (1.0 + dotf(&l, &l).sqrt()) {
                return Err(Error::Invalid("units are not independent".into()));
            }
            gram_schmidt.push(b);
            log_vectors.push(l);
        }
        Ok(LogLattice {
            n,
            units,
            log_vectors,
            gram_schmidt,
        })
    }

    pub fn from_normalizer(norm: &Normalizer) -> Result<Self> {
        let n = norm
            .cyclic_order()
            .ok_or_else(|| Error::Unsupported("log lattice of a non-cyclic group".into()))?;
        Self::new(n, norm.units().to_vec())
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn units(&self) -> &[UnitElement] {
        &self.units
    }

    pub fn log_vectors(&self) -> &[Vec<f64>] {
        &self.log_vectors
    }

    pub fn rank(&self) -> usize {
        self.units.len()
    }

    /// Number of coordinates (irrational classes).
    pub fn dimension(&self) -> usize {
        log_components(self.n).len()
    }

    /// Whether the lattice is full in the zero-sum hyperplane.
    pub fn is_full(&self) -> bool {
        self.dimension() == 0 || self.rank() + 1 == self.dimension()
    }

    /// `exp` of the largest coordinate spread over the nearest-plane cell,
    /// bounding the ratio of projection norms after balancing. Infinite when
    /// the lattice is not full.
    pub fn d_impl(&self) -> f64 {
        if !self.is_full() {
            return f64::INFINITY;
        }
        let k = self.dimension();
        let mut best: f64 = 0.0;
        for a in 0..k {
            for b in a + 1..k {
                let s: f64 = self
                    .gram_schmidt
                    .iter()
                    .map(|v| 0.5 * (v[a] - v[b]).abs())
                    .sum();
                best = best.max(s);
            }
        }
        best.exp()
    }

    /// Babai nearest-plane coefficients of a lattice vector close to `target`.
    pub fn nearest_plane(&self, target: &[f64]) -> Vec<i64> {
        let r = self.rank();
        let mut y = target.to_vec();
        let mut coeffs = vec![0i64; r];
        for i in (0..r).rev() {
            let q = &self.gram_schmidt[i];
            let c = (dotf(&y, q) / dotf(q, q)).round();
            coeffs[i] = c as i64;
            for (x, b) in y.iter_mut().zip(&self.log_vectors[i]) {
                *x -= c * b;
            }
        }
        coeffs
    }

    /// `prod_i u_i^{a_i}`.
    pub fn unit_product(&self, exps: &[i64]) -> UnitElement {
        let mut acc = UnitElement::identity(self.n);
        for (u, &e) in self.units.iter().zip(exps) {
            if e != 0 {
                acc = acc.mul(&u.pow(e));
            }
        }
        acc
    }
}

/// Result of balancing.
#[derive(Clone, Debug)]
pub struct Balanced {
    pub unit: UnitElement,
    pub exponents: Vec<i64>,
    pub point: LatticePoint,
    /// `max / min` of the projection norms of `point`.
    pub ratio: f64,
    pub d_impl: f64,
}

/// Ratio `max / min` of projection norms over the irrational classes.
pub fn spread(z: &[BigInt]) -> Result<f64> {
    let l = log_norms(z)?;
    let hi = l.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = l.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok((hi - lo).exp())
}

/// Finds `c` in the unit lattice with `L(c) + N(z) - S` in the nearest-plane
/// cell, where `S` is the mean of `N(z)`.
pub fn balance_point(z: &[BigInt], lat: &LogLattice) -> Result<Balanced> {
    let nz = log_norms(z)?;
    let mean = nz.iter().sum::<f64>() / nz.len().max(1) as f64;
    let target: Vec<f64> = nz.iter().map(|v| mean - v).collect();
    let exponents = lat.nearest_plane(&target);
    let unit = lat.unit_product(&exponents);
    let point = unit.apply(z);
    let ratio = spread(&point)?;
    Ok(Balanced {
        unit,
        exponents,
        point,
        ratio,
        d_impl: lat.d_impl(),
    })
}

/// A point together with a move reaching it.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub point: LatticePoint,
    pub witness: EquivalenceMove,
}

fn better(a: &[BigInt], b: &[BigInt]) -> bool {
    let (na, nb) = (arith::norm_sq(a), arith::norm_sq(b));
    na < nb || (na == nb && a < b)
}

/// Local search for a short representative: translations along `1` put the
/// layer in `1..=d`; then single generator moves `u^p` (`0 < |p| <= radius`)
/// and the negation are applied while they strictly decrease the norm.
pub fn reduce_min_norm(z: &[BigInt], norm: &Normalizer, radius: i64) -> Result<Reduced> {
    crate::error::check_dim(norm.degree(), z.len())?;
    let d = z.len();
    let mut mv = EquivalenceMove::translation(layer_translation(z));
    let mut cur = mv.apply(z);
    let mut steps: Vec<EquivalenceMove> = Vec::new();
    for u in norm.units() {
        for p in 1..=radius.max(0) {
            steps.push(EquivalenceMove::from_unit(&u.pow(p)));
            steps.push(EquivalenceMove::from_unit(&u.pow(-p)));
        }
    }
    steps.push(EquivalenceMove::from_signed_perm(&SignedPerm::negation(d)));
    loop {
        let mut best: Option<(LatticePoint, EquivalenceMove)> = None;
        for s in &steps {
            let y = s.apply(&cur);
            let tr = EquivalenceMove::translation(layer_translation(&y));
            let y = tr.apply(&y);
            let improves = match &best {
                None => arith::norm_sq(&y) < arith::norm_sq(&cur),
                Some((b, _)) => better(&y, b),
            };
            if improves && arith::norm_sq(&y) < arith::norm_sq(&cur) {
                best = Some((y, s.then(&tr)));
            }
        }
        match best {
            Some((y, step)) => {
                mv = mv.then(&step);
                cur = y;
            }
            None => break,
        }
    }
    debug_assert_eq!(mv.apply(z), cur);
    Ok(Reduced {
        point: cur,
        witness: mv,
    })
}

/// Whether `z` projects to zero on some irrational class.
pub fn has_zero_projection(z: &[BigInt]) -> bool {
    z.iter().all(|x| x.is_zero()) || log_norms(z).is_err()
}
