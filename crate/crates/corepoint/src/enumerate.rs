//! Canonical forms for normalizer equivalence and layerwise enumeration of
//! core points up to equivalence.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{self, LatticePoint};
use crate::balance::{balance_point, log_components, LogLattice};
use crate::error::{check_dim, Error, Result};
use crate::geometry::OrbitPolytope;
use crate::groups::PermGroup;
use crate::units::{layer_translation, EquivalenceMove, Normalizer, SignedPerm, UnitElement};

/// Default exploration radius around the descended point.
pub const DEFAULT_RADIUS: i64 = 2;

/// A canonical representative and a move from the input to it.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub point: LatticePoint,
    pub witness: EquivalenceMove,
}

/// Moves the layer into `{1, .., floor(d/2)} ∪ {d}`, using `-I` when that
/// shortens it.
fn normalize_layer(z: &[BigInt]) -> EquivalenceMove {
    let d = z.len();
    let t = EquivalenceMove::translation(layer_translation(z));
    let y = t.apply(z);
    let r: BigInt = y.iter().sum();
    let dd = BigInt::from(d);
    let back = &dd - &r;
    if back >= BigInt::one() && back < r {
        let neg = EquivalenceMove::from_signed_perm(&SignedPerm::negation(d))
            .with_shift(vec![BigInt::one(); d]);
        t.then(&neg)
    } else {
        t
    }
}

/// Signed permutations (with their shifts) that keep the normalized layer
/// `r` of a `d`-dimensional point.
fn layer_preserving(norm: &Normalizer, r: &BigInt) -> Vec<EquivalenceMove> {
    let d = norm.degree();
    let dd = BigInt::from(d);
    let two_r: BigInt = r * 2;
    let neg_shift = if (&two_r % &dd).is_zero() {
        Some(&two_r / &dd)
    } else {
        None
    };
    norm.torsion()
        .iter()
        .filter_map(|s| {
            let mv = EquivalenceMove::from_signed_perm(s);
            if s.sign > 0 {
                Some(mv)
            } else {
                neg_shift.as_ref().map(|c| mv.with_shift(vec![c.clone(); d]))
            }
        })
        .collect()
}

fn unit_step_set(units: &[UnitElement]) -> Vec<EquivalenceMove> {
    let r = units.len();
    let mut out = Vec::new();
    for i in 0..r {
        out.push(EquivalenceMove::from_unit(&units[i]));
        out.push(EquivalenceMove::from_unit(&units[i].inv()));
    }
    for i in 0..r {
        for j in i + 1..r {
            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                out.push(EquivalenceMove::from_unit(&units[i].pow(a).mul(&units[j].pow(b))));
            }
        }
    }
    out
}

fn box_moves(units: &[UnitElement], radius: i64) -> Vec<EquivalenceMove> {
    let r = units.len();
    let mut out = Vec::new();
    if r == 0 {
        return out;
    }
    let mut e = vec![-radius; r];
    loop {
        if e.iter().any(|&x| x != 0) {
            let mut u = UnitElement::identity(units[0].degree());
            for (ui, &ei) in units.iter().zip(&e) {
                if ei != 0 {
                    u = u.mul(&ui.pow(ei));
                }
            }
            out.push(EquivalenceMove::from_unit(&u));
        }
        let mut k = 0;
        loop {
            if k == r {
                return out;
            }
            e[k] += 1;
            if e[k] <= radius {
                break;
            }
            e[k] = -radius;
            k += 1;
        }
    }
}

/// The canonical representative with the default radius.
pub fn canonical_form(norm: &Normalizer, z: &[BigInt]) -> Result<Canonical> {
    canonical_form_with_radius(norm, z, DEFAULT_RADIUS)
}

/// Canonical representative of the normalizer class of `z`.
///
/// The layer is normalized, the point is balanced (when possible), a greedy
/// descent over the unit generators minimizes the norm, all points in a box
/// of the given radius around the result are examined, and among the
/// shortest ones the lexicographically smallest image under the
/// layer-preserving signed permutations is returned.
pub fn canonical_form_with_radius(norm: &Normalizer, z: &[BigInt], radius: i64) -> Result<Canonical> {
    check_dim(norm.degree(), z.len())?;
    let mut mv = normalize_layer(z);
    let mut cur = mv.apply(z);
    let units = norm.units();
    if !units.is_empty() && norm.cyclic_order().is_some() && !log_components(z.len()).is_empty() {
        if let Ok(lat) = LogLattice::from_normalizer(norm) {
            if let Ok(b) = balance_point(&cur, &lat) {
                mv = mv.then(&EquivalenceMove::from_unit(&b.unit));
                cur = b.point;
            }
        }
    }
    let steps = unit_step_set(units);
    let boxed = box_moves(units, radius);
    let mut candidates: Vec<(LatticePoint, EquivalenceMove)>;
    loop {
        // greedy descent
        loop {
            let n0 = arith::norm_sq(&cur);
            let mut best: Option<(BigInt, usize, LatticePoint)> = None;
            for (i, s) in steps.iter().enumerate() {
                let y = s.apply(&cur);
                let ny = arith::norm_sq(&y);
                if ny < n0 && best.as_ref().is_none_or(|(b, _, _)| &ny < b) {
                    best = Some((ny, i, y));
                }
            }
            match best {
                Some((_, i, y)) => {
                    mv = mv.then(&steps[i]);
                    cur = y;
                }
                None => break,
            }
        }
        // box exploration
        let n0 = arith::norm_sq(&cur);
        let mut min = n0.clone();
        candidates = vec![(cur.clone(), mv.clone())];
        let mut lower: Option<(LatticePoint, EquivalenceMove)> = None;
        for b in &boxed {
            let y = b.apply(&cur);
            let ny = arith::norm_sq(&y);
            if ny < min {
                min = ny;
                lower = Some((y, mv.then(b)));
            } else if ny == min && lower.is_none() {
                candidates.push((y, mv.then(b)));
            }
        }
        match lower {
            Some((y, m)) => {
                cur = y;
                mv = m;
            }
            None => break,
        }
    }
    let r: BigInt = cur.iter().sum();
    let tors = layer_preserving(norm, &r);
    let mut best: Option<(LatticePoint, EquivalenceMove)> = None;
    for (p, m) in &candidates {
        for t in &tors {
            let y = t.apply(p);
            if best.as_ref().is_none_or(|(b, _)| &y < b) {
                best = Some((y, m.then(t)));
            }
        }
    }
    let (point, witness) = best.expect("identity is layer preserving");
    debug_assert_eq!(witness.apply(z), point);
    Ok(Canonical { point, witness })
}

/// One normalizer class of core points.
#[derive(Clone, Debug)]
pub struct CoreClass {
    pub canonical: LatticePoint,
    pub layer: BigInt,
    pub norm_sq: BigInt,
    /// Representatives found (up to permutations in the normalizer) with
    /// moves mapping each onto `canonical`.
    pub witnesses: Vec<(LatticePoint, EquivalenceMove)>,
    /// Number of points of the searched ball lying in the class.
    pub class_size_found: usize,
}

/// `M(k) = k^2/d + C + (|classes| - 1) C D_impl`.
pub fn norm_bound(lat: &LogLattice, c_const: &BigRational, layer: &BigInt) -> Result<f64> {
    let d = lat.degree();
    let comps = lat.dimension();
    if comps == 0 || !crate::repdecomp::is_prime(d) {
        return Err(Error::Unsupported("norm bound needs a cyclic group of prime degree".into()));
    }
    let fixed = BigRational::new(layer * layer, BigInt::from(d));
    let c = c_const.to_f64().unwrap_or(f64::NAN);
    Ok(fixed.to_f64().unwrap_or(f64::NAN) + c + (comps as f64 - 1.0) * c * lat.d_impl())
}

/// The constant `C` used by default: `48/5` for degree 5.
pub fn default_c_const(d: usize) -> Option<BigRational> {
    (d == 5).then(|| BigRational::new(BigInt::from(48), BigInt::from(5)))
}

/// Integer points with coordinate sum `k` and squared norm at most `m`, in
/// lexicographic order.
pub fn layer_ball_points(d: usize, k: i64, m: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for_each_layer_ball_point(d, k, m, &mut |x| {
        out.push(x.to_vec());
        true
    });
    out
}

/// Streaming form of [`layer_ball_points`]; stops when `f` returns `false`,
/// and then returns `false`.
pub fn for_each_layer_ball_point(d: usize, k: i64, m: i64, f: &mut dyn FnMut(&[i64]) -> bool) -> bool {
    fn rec(d: usize, i: usize, rem_sum: i64, rem_norm: i64, cur: &mut Vec<i64>, f: &mut dyn FnMut(&[i64]) -> bool) -> bool {
        let left = (d - i) as i64;
        if left == 1 {
            if rem_sum * rem_sum <= rem_norm {
                cur.push(rem_sum);
                let go = f(cur);
                cur.pop();
                return go;
            }
            return true;
        }
        let r = (rem_norm as f64).sqrt() as i64 + 1;
        for x in -r..=r {
            let nn = rem_norm - x * x;
            if nn < 0 {
                continue;
            }
            let s = rem_sum - x;
            // remaining coordinates need at least s^2 / (left - 1)
            if s * s > nn * (left - 1) {
                continue;
            }
            cur.push(x);
            let go = rec(d, i + 1, s, nn, cur, f);
            cur.pop();
            if !go {
                return false;
            }
        }
        true
    }
    if d == 0 || m < 0 {
        return true;
    }
    rec(d, 0, k, m, &mut Vec::with_capacity(d), f)
}

/// Options for [`enumerate_core_classes`].
#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    pub radius: i64,
    /// Keep only classes whose canonical point is a core point of this group.
    pub subgroup_filter: Option<PermGroup>,
    pub budget: u64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            radius: DEFAULT_RADIUS,
            subgroup_filter: None,
            budget: crate::geometry::DEFAULT_BUDGET,
        }
    }
}

/// All core points `z` with `sum z = layer` and `||z||^2 <= m`, grouped into
/// normalizer classes by canonical form, ordered by norm then
/// lexicographically.
pub fn enumerate_core_classes(
    norm: &Normalizer,
    layer: i64,
    m: f64,
    opts: &EnumerateOptions,
) -> Result<Vec<CoreClass>> {
    let g = norm.group();
    let d = g.degree();
    if !m.is_finite() || m < 0.0 {
        return Err(Error::Invalid(format!("invalid norm bound {m}")));
    }
    let positive: Vec<Vec<usize>> = norm
        .torsion()
        .iter()
        .filter(|s| s.sign > 0)
        .map(|s| s.perm.clone())
        .collect();
    let mut classes: BTreeMap<LatticePoint, CoreClass> = BTreeMap::new();
    let mut visited = 0u64;
    let mut failure: Option<Error> = None;
    let mut image = vec![0i64; d];
    let mut orbit: Vec<Vec<i64>> = Vec::with_capacity(positive.len());
    for_each_layer_ball_point(d, layer, m.floor() as i64, &mut |raw| {
        visited += 1;
        if visited > opts.budget {
            failure = Some(Error::BudgetExceeded(format!("more than {} candidates", opts.budget)));
            return false;
        }
        // one representative per signed-permutation orbit within the layer
        orbit.clear();
        for perm in &positive {
            for (i, &x) in raw.iter().enumerate() {
                image[perm[i]] = x;
            }
            if image.as_slice() < raw {
                return true;
            }
            orbit.push(image.clone());
        }
        orbit.sort();
        orbit.dedup();
        let z = arith::point(raw);
        let mut step = || -> Result<()> {
            if !OrbitPolytope::new(g, &z)?.is_core_with_budget(opts.budget)? {
                return Ok(());
            }
            let c = canonical_form_with_radius(norm, &z, opts.radius)?;
            let entry = classes.entry(c.point.clone()).or_insert_with(|| CoreClass {
                layer: arith::sum(&c.point),
                norm_sq: arith::norm_sq(&c.point),
                canonical: c.point.clone(),
                witnesses: Vec::new(),
                class_size_found: 0,
            });
            entry.class_size_found += orbit.len();
            entry.witnesses.push((z.clone(), c.witness));
            Ok(())
        };
        match step() {
            Ok(()) => true,
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let mut out: Vec<CoreClass> = classes.into_values().collect();
    if let Some(h) = &opts.subgroup_filter {
        let mut kept = Vec::new();
        for c in out {
            if OrbitPolytope::new(h, &c.canonical)?.is_core_with_budget(opts.budget)? {
                kept.push(c);
            }
        }
        out = kept;
    }
    out.sort_by(|a, b| (&a.norm_sq, &a.canonical).cmp(&(&b.norm_sq, &b.canonical)));
    Ok(out)
}

/// Serializes classes as `[{canonical, layer, norm_sq, class_size_found}]`.
pub fn classes_to_json(classes: &[CoreClass]) -> serde_json::Value {
    use crate::matrix::int_to_json;
    serde_json::Value::Array(
        classes
            .iter()
            .map(|c| {
                serde_json::json!({
                    "canonical": c.canonical.iter().map(int_to_json).collect::<Vec<_>>(),
                    "layer": int_to_json(&c.layer),
                    "norm_sq": int_to_json(&c.norm_sq),
                    "class_size_found": c.class_size_found,
                })
            })
            .collect(),
    )
}
