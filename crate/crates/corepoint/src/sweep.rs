//! Exhaustive enumeration of the integer points of a bounded polytope
//! `{y : A y <= b}` by a coordinate sweep with interval propagation.
//!
//! Two coordinate systems are tried: the given one, and one adapted to a set
//! of facets with small slack ranges (via the column Hermite form of those
//! rows). The cheaper one by a volume estimate is swept.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::{ceil_div, dot, floor_div, to_i128};
use crate::error::{Error, Result};
use crate::lp::{maximize, LpOutcome};
use crate::matrix::{column_hermite, IntMatrix};

/// Range of a linear functional over the polytope.
pub(crate) trait Bounds {
    fn range(&self, a: &[BigInt]) -> Result<(BigInt, BigInt)>;
}

/// Bounds from the vertex list of the polytope.
pub(crate) struct VertexBounds<'a>(pub &'a [Vec<BigInt>]);

impl Bounds for VertexBounds<'_> {
    fn range(&self, a: &[BigInt]) -> Result<(BigInt, BigInt)> {
        let mut it = self.0.iter().map(|v| dot(a, v));
        let first = it.next().ok_or(Error::EmptyPolytope)?;
        Ok(it.fold((first.clone(), first), |(lo, hi), x| {
            (lo.min(x.clone()), hi.max(x))
        }))
    }
}

/// Bounds by exact linear programming over `A y <= b`.
pub(crate) struct LpBounds<'a> {
    pub rows: &'a [Vec<BigInt>],
    pub rhs: &'a [BigInt],
}

impl Bounds for LpBounds<'_> {
    fn range(&self, a: &[BigInt]) -> Result<(BigInt, BigInt)> {
        let q = |v: &[BigInt]| -> Vec<BigRational> {
            v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
        };
        let rows: Vec<Vec<BigRational>> = self.rows.iter().map(|r| q(r)).collect();
        let rhs = q(self.rhs);
        let c = q(a);
        let neg: Vec<BigRational> = c.iter().map(|x| -x.clone()).collect();
        let hi = match maximize(&c, &rows, &rhs, &[], &[]) {
            LpOutcome::Optimal { value, .. } => value.floor().to_integer(),
            LpOutcome::Infeasible => return Err(Error::EmptyPolytope),
            LpOutcome::Unbounded => {
                return Err(Error::Invalid("polytope is unbounded".into()))
            }
        };
        let lo = match maximize(&neg, &rows, &rhs, &[], &[]) {
            LpOutcome::Optimal { value, .. } => (-value).ceil().to_integer(),
            LpOutcome::Infeasible => return Err(Error::EmptyPolytope),
            LpOutcome::Unbounded => {
                return Err(Error::Invalid("polytope is unbounded".into()))
            }
        };
        Ok((lo, hi))
    }
}

struct Sweep {
    rows: Vec<Vec<i128>>,
    rhs: Vec<i128>,
    lo: Vec<i128>,
    hi: Vec<i128>,
    /// `restmin[j][i] = sum_{l >= i} min(row_j[l] lo_l, row_j[l] hi_l)`.
    restmin: Vec<Vec<i128>>,
}

impl Sweep {
    fn new(rows: Vec<Vec<i128>>, rhs: Vec<i128>, lo: Vec<i128>, hi: Vec<i128>) -> Self {
        let r = lo.len();
        let restmin = rows
            .iter()
            .map(|row| {
                let mut acc = vec![0i128; r + 1];
                for l in (0..r).rev() {
                    acc[l] = acc[l + 1] + (row[l] * lo[l]).min(row[l] * hi[l]);
                }
                acc
            })
            .collect();
        Sweep {
            rows,
            rhs,
            lo,
            hi,
            restmin,
        }
    }

    fn run(&self, budget: u64, f: &mut dyn FnMut(&[i128]) -> bool) -> Result<bool> {
        let r = self.lo.len();
        let mut w = vec![0i128; r];
        let mut partial = vec![0i128; self.rows.len()];
        let mut nodes = 0u64;
        self.descend(0, &mut w, &mut partial, &mut nodes, budget, f)
    }

    fn descend(
        &self,
        i: usize,
        w: &mut Vec<i128>,
        partial: &mut Vec<i128>,
        nodes: &mut u64,
        budget: u64,
        f: &mut dyn FnMut(&[i128]) -> bool,
    ) -> Result<bool> {
        let r = self.lo.len();
        if i == r {
            return Ok(f(w));
        }
        let mut lb = self.lo[i];
        let mut ub = self.hi[i];
        for (j, row) in self.rows.iter().enumerate() {
            let c = row[i];
            let cap = self.rhs[j] - partial[j] - self.restmin[j][i + 1];
            if c > 0 {
                ub = ub.min(floor_div(cap, c));
            } else if c < 0 {
                lb = lb.max(ceil_div(cap, c));
            } else if cap < 0 {
                return Ok(true);
            }
            if lb > ub {
                return Ok(true);
            }
        }
        for v in lb..=ub {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::BudgetExceeded(format!(
                    "lattice enumeration visited more than {budget} nodes"
                )));
            }
            w[i] = v;
            for (j, row) in self.rows.iter().enumerate() {
                partial[j] += row[i] * v;
            }
            let go_on = self.descend(i + 1, w, partial, nodes, budget, f);
            for (j, row) in self.rows.iter().enumerate() {
                partial[j] -= row[i] * v;
            }
            if !go_on? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn small(x: &BigInt) -> Result<i128> {
    match to_i128(x) {
        Some(v) if v.abs() < (1i128 << 60) => Ok(v),
        _ => Err(Error::Unsupported(format!(
            "coefficient {x} too large for lattice enumeration"
        ))),
    }
}

fn to_small_rows(rows: &[Vec<BigInt>]) -> Result<Vec<Vec<i128>>> {
    rows.iter()
        .map(|r| r.iter().map(small).collect())
        .collect()
}

fn volume_estimate(widths: impl Iterator<Item = f64>) -> f64 {
    widths.fold(1.0, |acc, w| acc * w.max(1.0))
}

/// Visits every integer `y` with `rows . y <= rhs` in the given coordinate
/// order. The callback returns `false` to stop; the return value is `false`
/// exactly when stopped early.
pub(crate) fn sweep_points(
    rows: &[Vec<BigInt>],
    rhs: &[BigInt],
    dim: usize,
    bounds: &dyn Bounds,
    budget: u64,
    f: &mut dyn FnMut(&[BigInt]) -> bool,
) -> Result<bool> {
    if dim == 0 {
        if rhs.iter().all(|b| !b.is_negative()) {
            return Ok(f(&[]));
        }
        return Ok(true);
    }
    let mut lo = Vec::with_capacity(dim);
    let mut hi = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut e = vec![BigInt::zero(); dim];
        e[i] = BigInt::from(1);
        let (a, b) = match bounds.range(&e) {
            Ok(x) => x,
            Err(Error::EmptyPolytope) => return Ok(true),
            Err(e) => return Err(e),
        };
        lo.push(small(&a)?);
        hi.push(small(&b)?);
    }
    let sweep = Sweep::new(to_small_rows(rows)?, rhs.iter().map(small).collect::<Result<_>>()?, lo, hi);
    sweep.run(budget, &mut |w| {
        let y: Vec<BigInt> = w.iter().map(|&v| BigInt::from(v)).collect();
        f(&y)
    })
}

/// Visits every integer point of the bounded polytope `{y : rows . y <= rhs}`
/// (in an unspecified order), choosing the cheaper of the direct sweep and
/// the facet-adapted sweep.
pub(crate) fn for_each_point(
    rows: &[Vec<BigInt>],
    rhs: &[BigInt],
    dim: usize,
    bounds: &dyn Bounds,
    budget: u64,
    f: &mut dyn FnMut(&[BigInt]) -> bool,
) -> Result<bool> {
    if dim == 0 || rows.is_empty() {
        return sweep_points(rows, rhs, dim, bounds, budget, f);
    }
    let mut id_widths = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut e = vec![BigInt::zero(); dim];
        e[i] = BigInt::from(1);
        match bounds.range(&e) {
            Ok((a, b)) => id_widths.push(crate::arith::big_to_f64(&(b - a)) + 1.0),
            Err(Error::EmptyPolytope) => return Ok(true),
            Err(e) => return Err(e),
        }
    }
    let id_cost = volume_estimate(id_widths.into_iter());
    if id_cost < 1e5 {
        return sweep_points(rows, rhs, dim, bounds, budget, f);
    }
    // facet-adapted coordinates
    let mut ranges = Vec::with_capacity(rows.len());
    let mut lows = Vec::with_capacity(rows.len());
    for (row, b) in rows.iter().zip(rhs) {
        let (lo, _) = match bounds.range(row) {
            Ok(x) => x,
            Err(Error::EmptyPolytope) => return Ok(true),
            Err(e) => return Err(e),
        };
        ranges.push(b - &lo);
        lows.push(lo);
    }
    if ranges.iter().any(|r| r.is_negative()) {
        return Ok(true);
    }
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| ranges[a].cmp(&ranges[b]));
    let mut chosen: Vec<usize> = Vec::new();
    for &j in &order {
        let mut trial = chosen.clone();
        trial.push(j);
        let m = IntMatrix::from_rows(trial.iter().map(|&k| rows[k].clone()).collect())?;
        if column_hermite(&m).rank == trial.len() {
            chosen = trial;
            if chosen.len() == dim {
                break;
            }
        }
    }
    if chosen.len() < dim {
        return sweep_points(rows, rhs, dim, bounds, budget, f);
    }
    let r = IntMatrix::from_rows(chosen.iter().map(|&k| rows[k].clone()).collect())?;
    let ch = column_hermite(&r);
    let slack_cost = volume_estimate(
        (0..dim).map(|i| crate::arith::big_to_f64(&ranges[chosen[i]]) / crate::arith::big_to_f64(ch.h.get(i, i)) + 1.0),
    );
    if id_cost <= slack_cost {
        return sweep_points(rows, rhs, dim, bounds, budget, f);
    }
    let u = ch.u;
    let u_inv = u.inverse().expect("unimodular transform");
    // the implied lower bounds of the chosen rows make each adapted
    // coordinate two-sided
    let mut all_rows = rows.to_vec();
    let mut all_rhs = rhs.to_vec();
    for &k in &chosen {
        all_rows.push(rows[k].iter().map(|x| -x).collect());
        all_rhs.push(-&lows[k]);
    }
    let a = IntMatrix::from_rows(all_rows)?;
    let au = a.mul(&u);
    let new_rows = au.to_rows();
    struct Mapped<'a> {
        inner: &'a dyn Bounds,
        u_inv: &'a IntMatrix,
    }
    impl Bounds for Mapped<'_> {
        fn range(&self, c: &[BigInt]) -> Result<(BigInt, BigInt)> {
            // c . t with t = U^-1 y is (c^T U^-1) . y
            self.inner.range(&self.u_inv.vec_mul(c))
        }
    }
    let mapped = Mapped {
        inner: bounds,
        u_inv: &u_inv,
    };
    sweep_points(&new_rows, &all_rhs, dim, &mapped, budget, &mut |t| {
        let y = u.mul_vec(t);
        f(&y)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::point;

    #[test]
    fn square_and_triangle() {
        // 0 <= y0, y1 and y0 + y1 <= 2
        let rows = vec![point(&[-1, 0]), point(&[0, -1]), point(&[1, 1])];
        let rhs = point(&[0, 0, 2]);
        let verts = vec![point(&[0, 0]), point(&[2, 0]), point(&[0, 2])];
        let mut seen = Vec::new();
        sweep_points(&rows, &rhs, 2, &VertexBounds(&verts), 1000, &mut |y| {
            seen.push(y.to_vec());
            true
        })
        .unwrap();
        assert_eq!(seen.len(), 6);
        let lp = LpBounds { rows: &rows, rhs: &rhs };
        assert_eq!(lp.range(&point(&[1, 0])).unwrap(), (BigInt::from(0), BigInt::from(2)));
    }

    #[test]
    fn thin_polytope_uses_adapted_coordinates() {
        // 0 <= 1000 y0 + 999 y1 <= 3, 0 <= y0 - y1 + 5000 <= 10000
        let rows = vec![point(&[1000, 999]), point(&[-1000, -999]), point(&[1, -1]), point(&[-1, 1])];
        let rhs = point(&[3, 0, 5000, 5000]);
        let lp = LpBounds { rows: &rows, rhs: &rhs };
        let mut count = 0;
        for_each_point(&rows, &rhs, 2, &lp, 100_000, &mut |y| {
            let v = 1000 * &y[0] + 999 * &y[1];
            assert!(v >= BigInt::from(0) && v <= BigInt::from(3));
            count += 1;
            true
        })
        .unwrap();
        let mut brute = 0;
        for a in -3000i64..3000 {
            for b in -3000i64..3000 {
                let v = 1000 * a + 999 * b;
                if (0..=3).contains(&v) && (a - b).abs() <= 5000 {
                    brute += 1;
                }
            }
        }
        assert_eq!(count, brute);
    }
}
