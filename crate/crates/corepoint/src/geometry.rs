//! Orbit polytopes: membership, facets, integer points and the core-point
//! test.

use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, dot, LatticePoint};
use crate::error::{check_dim, Error, Result};
use crate::groups::PermGroup;
use crate::lp::feasible_standard;
use crate::matrix::{column_hermite, integer_kernel, solve_integer, IntMatrix};
use crate::sweep::{for_each_point, Bounds, VertexBounds};

/// Default cap on enumeration nodes.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Largest ambient dimension accepted by brute-force facet enumeration.
pub const MAX_FACET_DIMENSION: usize = 8;

/// Cap on the number of vertex subsets examined by facet enumeration.
pub const MAX_FACET_SUBSETS: u64 = 500_000;

/// The inequality `normal . x <= offset`, or the equation `normal . x = offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

/// Equations of the affine hull and facet inequalities inside it.
///
/// Facet normals are primitive integer vectors lying in the direction space
/// of the affine hull, so each facet has exactly one such normal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetDescription {
    pub equations: Vec<Halfspace>,
    pub facets: Vec<Halfspace>,
}

impl FacetDescription {
    /// Whether `x` satisfies all equations and inequalities.
    pub fn satisfied_by(&self, x: &[BigInt]) -> bool {
        self.equations.iter().all(|h| dot(&h.normal, x) == h.offset)
            && self.facets.iter().all(|h| dot(&h.normal, x) <= h.offset)
    }
}

/// `conv(G z)`.
#[derive(Debug)]
pub struct OrbitPolytope {
    group: PermGroup,
    base: LatticePoint,
    vertices: Vec<LatticePoint>,
    facets: OnceLock<FacetDescription>,
}

impl Clone for OrbitPolytope {
    fn clone(&self) -> Self {
        let p = OrbitPolytope {
            group: self.group.clone(),
            base: self.base.clone(),
            vertices: self.vertices.clone(),
            facets: OnceLock::new(),
        };
        if let Some(f) = self.facets.get() {
            let _ = p.facets.set(f.clone());
        }
        p
    }
}

impl OrbitPolytope {
    pub fn new(group: &PermGroup, base: &[BigInt]) -> Result<Self> {
        let vertices = group.orbit(base)?;
        Ok(OrbitPolytope {
            group: group.clone(),
            base: base.to_vec(),
            vertices,
            facets: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn base(&self) -> &LatticePoint {
        &self.base
    }

    /// The orbit, sorted lexicographically.
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Sum of coordinates shared by all vertices.
    pub fn layer(&self) -> BigInt {
        arith::sum(&self.base)
    }

    /// Facet description, computed once.
    pub fn facets(&self) -> Result<&FacetDescription> {
        if let Some(f) = self.facets.get() {
            return Ok(f);
        }
        let f = facets_of_points(&self.vertices)?;
        let _ = self.facets.set(f);
        Ok(self.facets.get().expect("just set"))
    }

    /// Whether `x` is a convex combination of the vertices (exact LP).
    pub fn contains(&self, x: &[BigRational]) -> Result<bool> {
        check_dim(self.base.len(), x.len())?;
        let d = x.len();
        let m = self.vertices.len();
        let mut a = Vec::with_capacity(d + 1);
        for i in 0..d {
            a.push(
                self.vertices
                    .iter()
                    .map(|v| BigRational::from_integer(v[i].clone()))
                    .collect::<Vec<_>>(),
            );
        }
        a.push(vec![BigRational::one(); m]);
        let mut b = x.to_vec();
        b.push(BigRational::one());
        Ok(feasible_standard(&a, &b).is_some())
    }

    /// All integer points, sorted lexicographically.
    pub fn integral_points(&self) -> Result<Vec<LatticePoint>> {
        self.integral_points_with_budget(DEFAULT_BUDGET)
    }

    pub fn integral_points_with_budget(&self, budget: u64) -> Result<Vec<LatticePoint>> {
        let mut out = Vec::new();
        self.visit_points(budget, &mut |x| {
            out.push(x.to_vec());
            true
        })?;
        out.sort();
        Ok(out)
    }

    /// Whether the vertices are the only integer points.
    pub fn is_core(&self) -> Result<bool> {
        self.is_core_with_budget(DEFAULT_BUDGET)
    }

    pub fn is_core_with_budget(&self, budget: u64) -> Result<bool> {
        if has_integral_centroid(&self.vertices) || simplex_witness(&self.vertices, SIMPLEX_TRIES) {
            return Ok(false);
        }
        let verts: HashSet<&LatticePoint> = self.vertices.iter().collect();
        let completed = self.visit_points(budget, &mut |x| verts.contains(&x.to_vec()))?;
        Ok(completed)
    }

    fn visit_points(&self, budget: u64, f: &mut dyn FnMut(&[BigInt]) -> bool) -> Result<bool> {
        if self.vertices.len() == 1 {
            return Ok(f(&self.vertices[0]));
        }
        match self.facets() {
            Ok(desc) => visit_with_facets(&self.vertices, desc, budget, f),
            Err(Error::BudgetExceeded(_)) | Err(Error::FacetDimension(_)) => {
                visit_with_lp(self, budget, f)
            }
            Err(e) => Err(e),
        }
    }
}

/// Orbits up to this size have every vertex subset tried by
/// [`has_integral_centroid`]; larger ones only the full orbit.
const CENTROID_SUBSET_LIMIT: usize = 12;

/// Whether the centroid of some set of at least two vertices is integral.
/// Orbit points lie on a sphere, so such a centroid is an integer point of the
/// polytope that is not a vertex.
fn has_integral_centroid(vertices: &[LatticePoint]) -> bool {
    let n = vertices.len();
    if n < 2 {
        return false;
    }
    let small: Option<Vec<Vec<i128>>> = vertices
        .iter()
        .map(|v| v.iter().map(arith::to_i128).collect::<Option<Vec<i128>>>())
        .collect();
    let Some(vs) = small.filter(|vs| vs.iter().flatten().all(|x| x.abs() < 1 << 64)) else {
        let total = vertices.iter().fold(vec![BigInt::zero(); vertices[0].len()], |acc, v| arith::add(&acc, v));
        let m = BigInt::from(n);
        return total.iter().all(|x| (x % &m).is_zero());
    };
    fn rec(vs: &[Vec<i128>], i: usize, sum: &mut Vec<i128>, size: i128) -> bool {
        if size >= 2 && sum.iter().all(|x| x % size == 0) {
            return true;
        }
        for j in i..vs.len() {
            for (a, b) in sum.iter_mut().zip(&vs[j]) {
                *a += b;
            }
            let hit = rec(vs, j + 1, sum, size + 1);
            for (a, b) in sum.iter_mut().zip(&vs[j]) {
                *a -= b;
            }
            if hit {
                return true;
            }
        }
        false
    }
    let d = vs[0].len();
    if n <= CENTROID_SUBSET_LIMIT {
        rec(&vs, 0, &mut vec![0; d], 0)
    } else {
        let total: Vec<i128> = (0..d).map(|k| vs.iter().map(|v| v[k]).sum()).collect();
        total.iter().all(|x| x % n as i128 == 0)
    }
}

/// Random roundings tried by [`simplex_witness`].
const SIMPLEX_TRIES: usize = 48;

/// `adj(V)` and `det(V)` for a square matrix with columns `cols`, by
/// fraction-free Gauss-Jordan elimination. `None` on overflow or singularity;
/// the result is checked by `V adj(V) = det(V) I`.
fn small_adjugate(cols: &[Vec<i128>]) -> Option<(Vec<Vec<i128>>, i128)> {
    let n = cols.len();
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            let mut row: Vec<i128> = cols.iter().map(|c| c[i]).collect();
            row.extend((0..n).map(|j| i128::from(i == j)));
            row
        })
        .collect();
    let mut prev: i128 = 1;
    for k in 0..n {
        let p = (k..n).find(|&r| m[r][k] != 0)?;
        m.swap(k, p);
        let pivot = m[k][k];
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = m[i][k];
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let v = pivot.checked_mul(m[i][j])?.checked_sub(f.checked_mul(m[k][j])?)?;
                m[i][j] = v / prev;
            }
            m[i][k] = 0;
        }
        prev = pivot;
    }
    let det = prev;
    let adj: Vec<Vec<i128>> = m.iter().map(|row| row[n..].to_vec()).collect();
    for i in 0..n {
        for j in 0..n {
            let mut acc: i128 = 0;
            for (l, c) in cols.iter().enumerate() {
                acc = acc.checked_add(c[i].checked_mul(adj[l][j])?)?;
            }
            if acc != if i == j { det } else { 0 } {
                return None;
            }
        }
    }
    Some((adj, det))
}

/// Looks for a non-vertex integer point of a full-dimensional orbit simplex
/// (as many vertices as coordinates) by rounding pseudo-random interior
/// points. A `true` answer is a proof; `false` decides nothing.
fn simplex_witness(vertices: &[LatticePoint], tries: usize) -> bool {
    let n = vertices.len();
    if n < 3 || n != vertices[0].len() {
        return false;
    }
    let Some(cols) = vertices
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| arith::to_i128(x).filter(|y| y.abs() < 1 << 20))
                .collect::<Option<Vec<i128>>>()
        })
        .collect::<Option<Vec<_>>>()
    else {
        return false;
    };
    let k: i128 = cols[0].iter().sum();
    if k == 0 {
        return false;
    }
    let Some((adj, det)) = small_adjugate(&cols) else {
        return false;
    };
    let inside = |x: &[i128]| {
        adj.iter().all(|row| {
            let mu: i128 = row.iter().zip(x).map(|(a, b)| a * b).sum();
            mu.signum() * det.signum() >= 0
        })
    };
    let mut state: u64 = 0x2545_f491_4f6c_dd1d ^ (n as u64);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        ((state >> 11) as f64 + 0.5) / (1u64 << 53) as f64
    };
    let mut x = vec![0i128; n];
    for _ in 0..tries {
        let w: Vec<f64> = (0..n).map(|_| -next().ln()).collect();
        let total: f64 = w.iter().sum();
        let y: Vec<f64> = (0..n)
            .map(|i| cols.iter().zip(&w).map(|(c, wj)| c[i] as f64 * wj).sum::<f64>() / total)
            .collect();
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi.round() as i128;
        }
        // restore the layer by moving the coordinates rounded furthest
        let mut excess: i128 = x.iter().sum::<i128>() - k;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            let ra = x[a] as f64 - y[a];
            let rb = x[b] as f64 - y[b];
            rb.partial_cmp(&ra).unwrap_or(std::cmp::Ordering::Equal)
        });
        let mut i = 0;
        while excess > 0 {
            x[order[i % n]] -= 1;
            excess -= 1;
            i += 1;
        }
        let mut i = n;
        while excess < 0 {
            i -= 1;
            x[order[i % n]] += 1;
            excess += 1;
            if i == 0 {
                i = n;
            }
        }
        if inside(&x) && !cols.iter().any(|c| c == &x) {
            return true;
        }
    }
    false
}

/// `P(G, z)` contains only its vertices as integer points.
pub fn is_core_point(g: &PermGroup, z: &[BigInt]) -> Result<bool> {
    OrbitPolytope::new(g, z)?.is_core()
}

pub fn integral_points(p: &OrbitPolytope) -> Result<Vec<LatticePoint>> {
    p.integral_points()
}

pub fn contains(p: &OrbitPolytope, x: &[BigRational]) -> Result<bool> {
    p.contains(x)
}

pub fn facets(p: &OrbitPolytope) -> Result<FacetDescription> {
    p.facets().cloned()
}

/// Equations of the affine hull of a point set, as primitive rows with
/// first nonzero entry positive.
fn hull_equations(points: &[LatticePoint]) -> Vec<Halfspace> {
    let d = points[0].len();
    let diffs: Vec<Vec<BigInt>> = points[1..].iter().map(|p| arith::sub(p, &points[0])).collect();
    let kernel = if diffs.is_empty() {
        IntMatrix::identity(d)
    } else {
        integer_kernel(&IntMatrix::from_rows(diffs).expect("equal lengths"))
    };
    // reduce the kernel basis to Hermite form for a canonical choice
    let kt = kernel.transpose();
    let reduced = if kt.rows() > 0 {
        row_hermite(&kt)
    } else {
        kt
    };
    (0..reduced.rows())
        .map(|i| {
            let mut n = arith::primitive(reduced.row(i));
            if n.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                n = n.into_iter().map(|x| -x).collect();
            }
            let offset = dot(&n, &points[0]);
            Halfspace { normal: n, offset }
        })
        .collect()
}

/// Row Hermite form (via the column form of the transpose).
fn row_hermite(a: &IntMatrix) -> IntMatrix {
    let ch = column_hermite(&a.transpose());
    ch.h.columns(0, ch.rank).transpose()
}

fn subset_count(n: usize, k: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 0..k as u64 {
        c = c.saturating_mul(n as u64 - i) / (i + 1);
    }
    c
}

/// Facets of `conv(points)` by brute force over vertex subsets.
pub fn facets_of_points(points: &[LatticePoint]) -> Result<FacetDescription> {
    if points.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let d = points[0].len();
    if d > MAX_FACET_DIMENSION {
        return Err(Error::FacetDimension(d));
    }
    let equations = hull_equations(points);
    let k = d - equations.len();
    if k == 0 {
        return Ok(FacetDescription {
            equations,
            facets: Vec::new(),
        });
    }
    let subsets = subset_count(points.len(), k);
    if subsets > MAX_FACET_SUBSETS {
        return Err(Error::BudgetExceeded(format!(
            "{subsets} vertex subsets for facet enumeration"
        )));
    }
    let eq_matrix = IntMatrix::from_rows(equations.iter().map(|h| h.normal.clone()).collect())
        .unwrap_or_else(|_| IntMatrix::zeros(0, d));
    let dirs = if equations.is_empty() {
        IntMatrix::identity(d)
    } else {
        integer_kernel(&eq_matrix)
    };
    // coordinates of points in the direction basis pairing
    let pair: Vec<Vec<BigInt>> = points.iter().map(|p| dirs.vec_mul(p)).collect();
    let mut found: HashSet<Vec<BigInt>> = HashSet::new();
    let mut facets = Vec::new();
    let n = points.len();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        // normal c (in direction coordinates) orthogonal to differences
        let base = &pair[idx[0]];
        let rows: Vec<Vec<BigInt>> = idx[1..].iter().map(|&j| arith::sub(&pair[j], base)).collect();
        let ker = if rows.is_empty() {
            IntMatrix::identity(k)
        } else {
            integer_kernel(&IntMatrix::from_rows(rows).expect("equal lengths"))
        };
        if ker.cols() == 1 {
            let normal = arith::primitive(&dirs.mul_vec(&ker.column(0)));
            let vals: Vec<BigInt> = points.iter().map(|p| dot(&normal, p)).collect();
            let at = dot(&normal, &points[idx[0]]);
            let all_le = vals.iter().all(|v| v <= &at);
            let all_ge = vals.iter().all(|v| v >= &at);
            let oriented = if all_le && !all_ge {
                Some((normal, at))
            } else if all_ge && !all_le {
                Some((normal.into_iter().map(|x| -x).collect(), -at))
            } else {
                None
            };
            if let Some((nrm, off)) = oriented {
                if found.insert(nrm.clone()) {
                    facets.push(Halfspace {
                        normal: nrm,
                        offset: off,
                    });
                }
            }
        }
        let mut p = k;
        while p > 0 && idx[p - 1] == n - k + p - 1 {
            p -= 1;
        }
        if p == 0 {
            break;
        }
        idx[p - 1] += 1;
        for t in p..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
    facets.sort_by(|a, b| b.normal.cmp(&a.normal));
    Ok(FacetDescription { equations, facets })
}

/// An affine lattice `x = origin + K y` containing all integer points of an
/// affine subspace, with a left inverse `y = L (x - origin)`.
pub(crate) struct AffineLattice {
    pub origin: LatticePoint,
    pub basis: IntMatrix,
    pub left_inverse: IntMatrix,
}

impl AffineLattice {
    pub fn of_equations(d: usize, equations: &[Halfspace]) -> Option<Self> {
        if equations.is_empty() {
            return Some(AffineLattice {
                origin: vec![BigInt::zero(); d],
                basis: IntMatrix::identity(d),
                left_inverse: IntMatrix::identity(d),
            });
        }
        let e = IntMatrix::from_rows(equations.iter().map(|h| h.normal.clone()).collect()).ok()?;
        let f: Vec<BigInt> = equations.iter().map(|h| h.offset.clone()).collect();
        Self::of_system(&e, &f)
    }

    pub fn of_system(e: &IntMatrix, f: &[BigInt]) -> Option<Self> {
        let d = e.cols();
        let (origin, _) = solve_integer(e, f)?;
        let ch = column_hermite(e);
        let basis = ch.u.columns(ch.rank, d);
        let u_inv = ch.u.inverse().expect("unimodular");
        let left_inverse = IntMatrix::from_fn(d - ch.rank, d, |i, j| u_inv.get(ch.rank + i, j).clone());
        Some(AffineLattice {
            origin,
            basis,
            left_inverse,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn point(&self, y: &[BigInt]) -> LatticePoint {
        arith::add(&self.origin, &self.basis.mul_vec(y))
    }

    pub fn coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.left_inverse.mul_vec(&arith::sub(x, &self.origin))
    }

    /// Rewrites `a . x <= b` as a constraint on `y`.
    pub fn pull_back(&self, h: &Halfspace) -> (Vec<BigInt>, BigInt) {
        (self.basis.vec_mul(&h.normal), &h.offset - dot(&h.normal, &self.origin))
    }
}

fn visit_with_facets(
    vertices: &[LatticePoint],
    desc: &FacetDescription,
    budget: u64,
    f: &mut dyn FnMut(&[BigInt]) -> bool,
) -> Result<bool> {
    let d = vertices[0].len();
    let lat = match AffineLattice::of_equations(d, &desc.equations) {
        Some(l) => l,
        None => return Ok(true),
    };
    let mut rows = Vec::with_capacity(desc.facets.len());
    let mut rhs = Vec::with_capacity(desc.facets.len());
    for h in &desc.facets {
        let (r, b) = lat.pull_back(h);
        rows.push(r);
        rhs.push(b);
    }
    let ys: Vec<Vec<BigInt>> = vertices.iter().map(|v| lat.coords(v)).collect();
    let bounds = VertexBounds(&ys);
    for_each_point(&rows, &rhs, lat.dim(), &bounds, budget, &mut |y| f(&lat.point(y)))
}

/// Fallback for polytopes with too many vertex subsets: sweep the integer
/// box of the layer and test membership by exact LP.
fn visit_with_lp(p: &OrbitPolytope, budget: u64, f: &mut dyn FnMut(&[BigInt]) -> bool) -> Result<bool> {
    let verts = p.vertices();
    let d = verts[0].len();
    let equations = hull_equations(verts);
    let lat = match AffineLattice::of_equations(d, &equations) {
        Some(l) => l,
        None => return Ok(true),
    };
    let ys: Vec<Vec<BigInt>> = verts.iter().map(|v| lat.coords(v)).collect();
    let bounds = VertexBounds(&ys);
    let r = lat.dim();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..r {
        let mut e = vec![BigInt::zero(); r];
        e[i] = BigInt::one();
        let (lo, hi) = bounds.range(&e)?;
        rows.push(e.clone());
        rhs.push(hi);
        rows.push(e.iter().map(|x| -x).collect());
        rhs.push(-lo);
    }
    let mut err = None;
    let res = crate::sweep::sweep_points(&rows, &rhs, r, &bounds, budget, &mut |y| {
        let x = lat.point(y);
        match p.contains(&arith::to_rational(&x)) {
            Ok(true) => f(&x),
            Ok(false) => true,
            Err(e) => {
                err = Some(e);
                false
            }
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(res),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::point;

    #[test]
    fn hull_equations_of_a_layer() {
        let g = PermGroup::cyclic(5);
        let p = OrbitPolytope::new(&g, &point(&[1, 0, 0, 0, 0])).unwrap();
        let f = p.facets().unwrap();
        assert_eq!(f.equations.len(), 1);
        assert_eq!(f.equations[0].normal, point(&[1, 1, 1, 1, 1]));
        assert_eq!(f.facets.len(), 5);
    }

    #[test]
    fn affine_lattice_round_trip() {
        let eq = vec![Halfspace {
            normal: point(&[1, 1, 1]),
            offset: BigInt::from(4),
        }];
        let lat = AffineLattice::of_equations(3, &eq).unwrap();
        let x = point(&[7, -5, 2]);
        assert_eq!(lat.point(&lat.coords(&x)), x);
    }
}
