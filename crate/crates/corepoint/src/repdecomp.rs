//! Real decomposition of `R^n` under the cyclic group `C_n`, projection
//! norms, the finiteness test for the normalizer, and the QI test.
//!
//! The component of frequency class `{j, n-j}` is the real span of the
//! Fourier vectors `(zeta^{ij})_i` and `(zeta^{-ij})_i`. Its order is
//! `n / gcd(j, n)`, and it is spanned by rational vectors exactly when the
//! order is 1, 2, 3, 4 or 6.

use num_complex::Complex;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{self, big_to_f64};
use crate::error::{Error, Result};
use crate::groups::PermGroup;
use crate::units::commutant_basis;

/// One real irreducible component (or the fixed space) of `C_n` on `R^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicComponent {
    /// `{j, n-j}`, or `{j}` when `j = 0` or `2j = n`.
    pub frequencies: Vec<usize>,
    pub order: usize,
    pub real_dimension: usize,
    pub rational: bool,
}

impl IsotypicComponent {
    /// The smallest frequency of the class.
    pub fn frequency(&self) -> usize {
        self.frequencies[0]
    }

    pub fn is_fixed(&self) -> bool {
        self.frequencies[0] == 0
    }
}

fn is_rational_order(m: usize) -> bool {
    matches!(m, 1 | 2 | 3 | 4 | 6)
}

/// Components of `R^n` under `C_n`, one per frequency `j = 0..=n/2`.
pub fn cyclic_components(n: usize) -> Vec<IsotypicComponent> {
    (0..=n / 2)
        .map(|j| {
            let order = n / j.gcd(&n);
            let frequencies = if j == 0 || 2 * j == n {
                vec![j]
            } else {
                vec![j, n - j]
            };
            IsotypicComponent {
                real_dimension: frequencies.len(),
                frequencies,
                order,
                rational: is_rational_order(order),
            }
        })
        .collect()
}

/// Squared norms of the projections of a point onto components.
#[derive(Clone, Debug)]
pub struct SpectrumProfile {
    /// `||z_alpha||^2` for each requested component, in the order given.
    pub component_norms: Vec<f64>,
    /// Exact `k^2 / n` for the fixed space.
    pub fixed_norm: BigRational,
    /// Absolute error bound on every entry of `component_norms`, on top of
    /// a relative rounding error of two ulps from the final conversion.
    pub error_bound: f64,
}

impl SpectrumProfile {
    /// Sum of the non-fixed component norms over the given components.
    pub fn nonfixed_total(&self, components: &[IsotypicComponent]) -> f64 {
        components
            .iter()
            .zip(&self.component_norms)
            .filter(|(c, _)| !c.is_fixed())
            .map(|(_, v)| v)
            .sum()
    }
}

/// Per-frequency weights turning `|z^_j|^2` into a component norm.
fn weight(n: usize, j: usize) -> f64 {
    if j == 0 || 2 * j == n {
        1.0 / n as f64
    } else {
        2.0 / n as f64
    }
}

/// Projection norms of `z` onto the given components of `C_n`, `n = len(z)`.
pub fn projection_norms(z: &[BigInt], components: &[IsotypicComponent]) -> SpectrumProfile {
    let n = z.len();
    let (spec, err) = arith::power_spectrum(z);
    let k: BigInt = z.iter().sum();
    let component_norms: Vec<f64> = components
        .iter()
        .map(|c| spec[c.frequency()] * weight(n, c.frequency()))
        .collect();
    SpectrumProfile {
        component_norms,
        fixed_norm: BigRational::new(&k * &k, BigInt::from(n.max(1))),
        error_bound: err * 2.0 / n.max(1) as f64,
    }
}

/// `|lambda_j|^2` of the circulant with first column `c`, for `j = 0..=n/2`,
/// with an absolute error bound.
pub(crate) fn circulant_eigen_magnitudes(c: &[BigInt]) -> (Vec<f64>, f64) {
    arith::power_spectrum(c)
}

/// Whether the normalizer of `C_n` in `GL(n, Z)` is finite.
///
/// This holds when every component is rational; in the regular
/// representation the components are pairwise non-isomorphic.
pub fn normalizer_finite(n: usize) -> bool {
    cyclic_components(n).iter().all(|c| c.rational)
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p))
}

/// Whether a transitive group acts on the orthogonal complement of its fixed
/// space without proper rational invariant subspaces.
///
/// For the standard cyclic group this is primality of `n`. Otherwise the
/// commutant algebra must be commutative and a generic element of it must
/// have an irreducible minimal polynomial of degree `dim - 1` on the
/// complement of the fixed space.
pub fn is_qi_group(g: &PermGroup) -> Result<bool> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if let Some(n) = g.standard_cyclic_order() {
        return Ok(n == 1 || is_prime(n));
    }
    let ring = commutant_basis(g);
    let basis = &ring.basis;
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if basis[i].mul(&basis[j]) != basis[j].mul(&basis[i]) {
                return Ok(false);
            }
        }
    }
    let want = basis.len() - 1;
    if want <= 1 {
        return Ok(true);
    }
    let d = g.degree();
    let mut seed: u64 = 0x9e37_79b9_7f4a_7c15;
    for _ in 0..16 {
        let mut a = crate::matrix::IntMatrix::zeros(d, d);
        for b in basis {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let c = BigInt::from(((seed >> 33) % 97) as i64 - 48);
            a = crate::matrix::IntMatrix::from_fn(d, d, |i, j| a.get(i, j) + &c * b.get(i, j));
        }
        let mu: BigInt = a.row(0).iter().sum();
        let p = char_poly(&a);
        let (q, r) = poly_divrem(&p, &[-BigRational::from_integer(mu), BigRational::one()]);
        debug_assert!(r.iter().all(|x| x.is_zero()));
        let sq = squarefree(&q);
        if poly_degree(&sq) != want {
            continue;
        }
        return irreducible(&sq);
    }
    Err(Error::Invalid(
        "could not find a generic element of the commutant".into(),
    ))
}

type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(|x| x.is_zero()) {
        p.pop();
    }
    p
}

fn poly_degree(p: &[BigRational]) -> usize {
    trim(p.to_vec()).len().saturating_sub(1)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    let lead = b[db].clone();
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lead;
        if !c.is_zero() {
            for (i, bi) in b.iter().enumerate() {
                r[k + i] -= &c * bi;
            }
        }
        q[k] = c;
    }
    (trim(q), trim(r))
}

fn poly_gcd(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !(y.len() == 1 && y[0].is_zero()) {
        let (_, r) = poly_divrem(&x, &y);
        x = y;
        y = r;
    }
    let lead = x.last().cloned().unwrap_or_else(BigRational::one);
    x.iter().map(|c| c / &lead).collect()
}

fn squarefree(p: &[BigRational]) -> Poly {
    let deriv: Poly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    if deriv.is_empty() {
        return p.to_vec();
    }
    let g = poly_gcd(p, &deriv);
    poly_divrem(p, &g).0
}

/// Characteristic polynomial by the Faddeev-LeVerrier recursion.
fn char_poly(a: &crate::matrix::IntMatrix) -> Poly {
    let n = a.rows();
    let ar: Vec<Vec<BigRational>> = a
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // m <- a m + c_{n-k+1} I
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for l in 0..n {
                    if !ar[i][l].is_zero() && !m[l][j].is_zero() {
                        s += &ar[i][l] * &m[l][j];
                    }
                }
                if i == j {
                    s += &coeffs[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = BigRational::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &ar[i][l] * &m[l][i];
            }
        }
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    coeffs
}

/// Irreducibility over the rationals of a squarefree polynomial: numeric
/// roots propose factors, exact division confirms them.
/// Complex roots of a monic polynomial (ascending coefficients) by
/// Aberth iteration.
fn poly_roots(monic: &[f64]) -> Vec<Complex<f64>> {
    let deg = monic.len() - 1;
    let eval = |z: Complex<f64>| {
        let mut v = Complex::new(0.0, 0.0);
        let mut dv = Complex::new(0.0, 0.0);
        for c in monic.iter().rev() {
            dv = dv * z + v;
            v = v * z + *c;
        }
        (v, dv)
    };
    let bound = 1.0 + monic[..deg].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex<f64>> = (0..deg)
        .map(|k| Complex::from_polar(0.5 * bound, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / deg as f64))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..deg {
            let (v, dv) = eval(z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let s: Complex<f64> = (0..deg)
                .filter(|&j| j != k)
                .map(|j| Complex::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let w = ratio / (Complex::new(1.0, 0.0) - ratio * s);
            z[k] -= w;
            moved = moved.max(w.norm() / (1.0 + z[k].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn irreducible(p: &[BigRational]) -> Result<bool> {
    let deg = poly_degree(p);
    if deg <= 1 {
        return Ok(true);
    }
    if deg > 20 {
        return Err(Error::Unsupported(format!(
            "irreducibility test for degree {deg}"
        )));
    }
    let lead = p[deg].clone();
    let monic: Vec<f64> = p
        .iter()
        .map(|c| (c / &lead).to_f64().unwrap_or(f64::NAN))
        .collect();
    let roots = poly_roots(&monic);
    // integer content of p
    let denom_lcm = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&denom_lcm / c.denom())).collect();
    let lead_int = ints[deg].abs();
    let divisors: Vec<BigInt> = {
        let l = lead_int.to_u64().unwrap_or(1).max(1);
        (1..=l).filter(|c| l.is_multiple_of(*c)).map(BigInt::from).collect()
    };
    for size in 1..=deg / 2 {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mut f = vec![Complex::new(1.0, 0.0)];
            for &i in &idx {
                let mut g = vec![Complex::new(0.0, 0.0); f.len() + 1];
                for (k, c) in f.iter().enumerate() {
                    g[k + 1] += *c;
                    g[k] -= *c * roots[i];
                }
                f = g;
            }
            if f.iter().all(|c| c.im.abs() < 1e-6 * (1.0 + c.re.abs())) {
                for c in &divisors {
                    let cf = big_to_f64(c);
                    let cand: Option<Vec<BigInt>> = f
                        .iter()
                        .map(|x| {
                            let v = x.re * cf;
                            ((v - v.round()).abs() < 1e-6 * (1.0 + v.abs()))
                                .then(|| BigInt::from(v.round() as i64))
                        })
                        .collect();
                    if let Some(cand) = cand {
                        let cr: Poly = cand.into_iter().map(BigRational::from_integer).collect();
                        let (_, r) = poly_divrem(p, &cr);
                        if r.iter().all(|x| x.is_zero()) {
                            return Ok(false);
                        }
                    }
                }
            }
            // next combination
            let mut k = size;
            while k > 0 && idx[k - 1] == deg - size + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            for t in k..size {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }
    Ok(true)
}
