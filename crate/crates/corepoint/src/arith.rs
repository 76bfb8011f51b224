//! Small exact-arithmetic helpers and a fixed-point cosine table used for
//! spectral computations on circulant data.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An integer vector.
pub type LatticePoint = Vec<BigInt>;
/// A rational vector.
pub type RationalVector = Vec<BigRational>;

/// Builds a lattice point from machine integers.
pub fn point(v: &[i64]) -> LatticePoint {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Builds a rational number `p/q`.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn to_rational(v: &[BigInt]) -> RationalVector {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(a: &[BigInt]) -> BigInt {
    a.iter().map(|x| x * x).sum()
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> LatticePoint {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> LatticePoint {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[BigInt], s: &BigInt) -> LatticePoint {
    a.iter().map(|x| x * s).collect()
}

pub fn sum(a: &[BigInt]) -> BigInt {
    a.iter().sum()
}

/// The gcd of all entries (zero for the zero vector).
pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides by the content; the zero vector is returned unchanged.
pub fn primitive(a: &[BigInt]) -> LatticePoint {
    let g = content(a);
    if g.is_zero() {
        a.to_vec()
    } else {
        a.iter().map(|x| x / &g).collect()
    }
}

/// Clears denominators of a rational vector, returning the primitive integer
/// vector with the same direction (positive multiple).
pub fn clear_denominators(v: &[BigRational]) -> LatticePoint {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    primitive(&ints)
}

/// Extended gcd: returns `(g, x, y)` with `x*a + y*b = g >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn lex_cmp(a: &[BigInt], b: &[BigInt]) -> std::cmp::Ordering {
    a.cmp(b)
}

/// `x` as an `f64` scaled by `2^-shift`, without intermediate overflow.
pub(crate) fn scaled_to_f64(x: &BigInt, shift: u64) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().unwrap_or(0.0) * 2f64.powi(-(shift as i32));
    }
    let drop = bits - 64;
    let top: BigInt = x >> drop;
    top.to_f64().unwrap_or(0.0) * 2f64.powi(drop as i32 - shift as i32)
}

pub(crate) fn big_to_f64(x: &BigInt) -> f64 {
    scaled_to_f64(x, 0)
}

fn atan_inv(x: u64, prec: u64) -> BigInt {
    let one = BigInt::one() << prec;
    let x2 = BigInt::from(x * x);
    let mut power = &one / BigInt::from(x);
    let mut total = power.clone();
    let mut k: u64 = 1;
    loop {
        power = &power / &x2;
        let term = &power / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            total -= term;
        } else {
            total += term;
        }
        k += 1;
    }
    total
}

/// `pi * 2^prec`, via Machin's formula.
fn pi_fixed(prec: u64) -> BigInt {
    let guard = 16;
    let p = prec + guard;
    let v = atan_inv(5, p) * 16 - atan_inv(239, p) * 4;
    v >> guard
}

/// `cos(theta) * 2^prec` for `theta * 2^prec` given with `0 <= theta <= pi`.
fn cos_fixed(theta: &BigInt, prec: u64) -> BigInt {
    let one = BigInt::one() << prec;
    let t2 = (theta * theta) >> prec;
    let mut term = one.clone();
    let mut total = one;
    let mut i: u64 = 1;
    loop {
        term = ((&term * &t2) >> prec) / BigInt::from((2 * i - 1) * (2 * i));
        if term.is_zero() {
            break;
        }
        if i % 2 == 1 {
            total -= &term;
        } else {
            total += &term;
        }
        i += 1;
    }
    total
}

type CosTable = Rc<Vec<BigInt>>;

thread_local! {
    static COS_CACHE: RefCell<HashMap<(usize, u64), CosTable>> = RefCell::new(HashMap::new());
}

/// `cos(2*pi*k/n) * 2^prec` for `k = 0..n`, with absolute error a few units
/// in the last place. Cached per `(n, prec)`.
pub(crate) fn cos_table(n: usize, prec: u64) -> Rc<Vec<BigInt>> {
    if let Some(t) = COS_CACHE.with(|c| c.borrow().get(&(n, prec)).cloned()) {
        return t;
    }
    let guard = 24;
    let p = prec + guard;
    let pi = pi_fixed(p);
    let mut table = Vec::with_capacity(n);
    for k in 0..n {
        let kk = k.min(n - k);
        let theta = (&pi * BigInt::from(2 * kk)) / BigInt::from(n);
        table.push(cos_fixed(&theta, p) >> guard);
    }
    let table = Rc::new(table);
    COS_CACHE.with(|c| c.borrow_mut().insert((n, prec), table.clone()));
    table
}

/// Cyclic autocorrelation `r_k = sum_i c_i c_{i+k}`.
pub(crate) fn autocorrelation(c: &[BigInt]) -> Vec<BigInt> {
    let n = c.len();
    (0..n)
        .map(|k| (0..n).map(|i| &c[i] * &c[(i + k) % n]).sum())
        .collect()
}

/// Squared DFT magnitudes `|c^_j|^2` for `j = 0..=n/2`, together with a bound
/// on the absolute error of every returned value.
///
/// Each value is `sum_k r_k cos(2 pi j k / n)` evaluated in fixed point with
/// enough bits that values near zero keep full relative precision.
pub(crate) fn power_spectrum(c: &[BigInt]) -> (Vec<f64>, f64) {
    let n = c.len();
    if n == 0 {
        return (Vec::new(), 0.0);
    }
    let r = autocorrelation(c);
    let bits = r.iter().map(|x| x.bits()).max().unwrap_or(0).max(1);
    let degree = (n as u64 / 2).max(1);
    let prec = (degree * bits + 96).div_ceil(256) * 256;
    let table = cos_table(n, prec);
    let abs_sum: BigInt = r.iter().map(|x| x.abs()).sum();
    let err = scaled_to_f64(&abs_sum, prec) * 16.0 + f64::MIN_POSITIVE;
    let mut out = Vec::with_capacity(n / 2 + 1);
    for j in 0..=n / 2 {
        let mut acc = BigInt::zero();
        for (k, rk) in r.iter().enumerate() {
            if rk.is_zero() {
                continue;
            }
            acc += rk * &table[(j * k) % n];
        }
        if acc.sign() == Sign::Minus && scaled_to_f64(&-&acc, prec) < err {
            acc = BigInt::zero();
        }
        out.push(scaled_to_f64(&acc, prec));
    }
    (out, err)
}

/// Floor division for `i128`.
pub(crate) fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

pub(crate) fn ceil_div(a: i128, b: i128) -> i128 {
    -floor_div(-a, b)
}

pub(crate) fn to_i128(x: &BigInt) -> Option<i128> {
    x.to_i128()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_table_matches_f64() {
        let t = cos_table(7, 128);
        for (k, v) in t.iter().enumerate() {
            let want = (2.0 * std::f64::consts::PI * k as f64 / 7.0).cos();
            assert!((scaled_to_f64(v, 128) - want).abs() < 1e-15);
        }
    }

    #[test]
    fn spectrum_of_basis_vector_is_flat() {
        let (s, _) = power_spectrum(&point(&[1, 0, 0, 0, 0]));
        for v in s {
            assert!((v - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(floor_div(-7, 2), -4);
        assert_eq!(ceil_div(-7, 2), -3);
        assert_eq!(floor_div(7, -2), -4);
        assert_eq!(ceil_div(7, 2), 4);
    }
}
