//! The integer commutant of a permutation group, its units, the normalizer
//! of the group in `GL(d, Z)`, and equivalence moves `z -> S z + t`.
//!
//! For the cyclic group `C_n` the commutant is the group ring `Z C_n`,
//! realized as circulant matrices. An element with coefficients `c` (so
//! `c = sum_k c_k g^k`) is the matrix `M[i][j] = c[(i - j) mod n]`; its first
//! column is `c`.

use std::collections::{HashMap, HashSet, VecDeque};

use num_complex::Complex;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{self, big_to_f64, LatticePoint};
use crate::error::{check_dim, Error, Result};
use crate::groups::{self, permutation_matrix, Perm, PermGroup};
use crate::matrix::IntMatrix;
use crate::repdecomp::{self, circulant_eigen_magnitudes};

/// A Z-basis of the integer matrices commuting with a permutation group.
#[derive(Clone, Debug)]
pub struct CommutantRing {
    pub group: PermGroup,
    /// One 0/1 matrix per orbit of the group on pairs of points.
    pub basis: Vec<IntMatrix>,
}

impl CommutantRing {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Orbits of the group on ordered pairs, each sorted, listed by smallest pair.
pub fn orbitals(g: &PermGroup) -> Vec<Vec<(usize, usize)>> {
    let d = g.degree();
    let mut seen = vec![false; d * d];
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if seen[i * d + j] {
                continue;
            }
            seen[i * d + j] = true;
            let mut orbit = vec![(i, j)];
            let mut k = 0;
            while k < orbit.len() {
                let (a, b) = orbit[k];
                for p in g.generators() {
                    let (x, y) = (p[a], p[b]);
                    if !seen[x * d + y] {
                        seen[x * d + y] = true;
                        orbit.push((x, y));
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
    }
    out
}

/// The orbital matrices: a Z-basis of `{B : B g = g B for all g in G}`.
pub fn commutant_basis(g: &PermGroup) -> CommutantRing {
    let d = g.degree();
    let basis = orbitals(g)
        .into_iter()
        .map(|orb| {
            let mut m = IntMatrix::zeros(d, d);
            for (i, j) in orb {
                m.set(i, j, BigInt::one());
            }
            m
        })
        .collect();
    CommutantRing {
        group: g.clone(),
        basis,
    }
}

/// An invertible integer matrix commuting with a group.
#[derive(Clone, Debug)]
pub struct UnitElement {
    matrix: IntMatrix,
    inverse: IntMatrix,
    /// The eigenvalue on the all-ones vector, when it is an eigenvector.
    fixed_eigenvalue: Option<i8>,
    /// `|lambda_j|^2` for `j = 0..=n/2` when the matrix is a circulant.
    spectrum: Option<Vec<f64>>,
}

impl PartialEq for UnitElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for UnitElement {}

impl UnitElement {
    /// Wraps a matrix with a known inverse; checks only `M M^-1 = I`.
    pub fn from_parts(matrix: IntMatrix, inverse: IntMatrix) -> Result<Self> {
        if !matrix.is_square() || !matrix.mul(&inverse).is_identity() {
            return Err(Error::NotUnimodular);
        }
        let d = matrix.rows();
        let ones = vec![BigInt::one(); d];
        let image = matrix.mul_vec(&ones);
        let fixed_eigenvalue = if d > 0 && image.iter().all(|x| x == &image[0]) {
            image[0].to_i8()
        } else {
            None
        };
        let spectrum = circulant_coefficients(&matrix).map(|c| circulant_eigen_magnitudes(&c).0);
        Ok(UnitElement {
            matrix,
            inverse,
            fixed_eigenvalue,
            spectrum,
        })
    }

    /// The unit of `Z C_n` with the given coefficients.
    pub fn from_group_ring(coeffs: &[BigInt]) -> Result<Self> {
        let inv = gr_inverse(coeffs).ok_or(Error::NotUnimodular)?;
        Self::from_parts(circulant(coeffs), circulant(&inv))
    }

    pub fn identity(d: usize) -> Self {
        Self::from_parts(IntMatrix::identity(d), IntMatrix::identity(d)).expect("identity")
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &IntMatrix {
        &self.inverse
    }

    pub fn fixed_eigenvalue(&self) -> Option<i8> {
        self.fixed_eigenvalue
    }

    /// `|lambda_j|^2` for `j = 0..=n/2` (circulant units only).
    pub fn spectrum(&self) -> Option<&[f64]> {
        self.spectrum.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.matrix.rows()
    }

    /// Group-ring coefficients when the matrix is a circulant.
    pub fn coefficients(&self) -> Option<Vec<BigInt>> {
        circulant_coefficients(&self.matrix)
    }

    pub fn inv(&self) -> UnitElement {
        Self::from_parts(self.inverse.clone(), self.matrix.clone()).expect("valid inverse")
    }

    pub fn mul(&self, other: &UnitElement) -> UnitElement {
        Self::from_parts(self.matrix.mul(&other.matrix), other.inverse.mul(&self.inverse))
            .expect("product of units")
    }

    pub fn pow(&self, e: i64) -> UnitElement {
        let k = e.unsigned_abs() as u32;
        let (m, i) = (self.matrix.pow(k), self.inverse.pow(k));
        if e >= 0 {
            Self::from_parts(m, i).expect("power of a unit")
        } else {
            Self::from_parts(i, m).expect("power of a unit")
        }
    }

    pub fn apply(&self, z: &[BigInt]) -> LatticePoint {
        self.matrix.mul_vec(z)
    }

    pub fn apply_inverse(&self, z: &[BigInt]) -> LatticePoint {
        self.inverse.mul_vec(z)
    }

    /// The multiplicative order if it is at most `max`.
    pub fn finite_order(&self, max: usize) -> Option<usize> {
        if let Some(c) = self.coefficients() {
            let mut one = vec![BigInt::zero(); c.len()];
            one[0] = BigInt::one();
            let mut p = c.clone();
            for k in 1..=max {
                if p == one {
                    return Some(k);
                }
                p = gr_mul(&p, &c);
            }
            return None;
        }
        let mut p = self.matrix.clone();
        for k in 1..=max {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul(&self.matrix);
        }
        None
    }
}

/// The circulant matrix with first column `c`.
pub fn circulant(c: &[BigInt]) -> IntMatrix {
    let n = c.len();
    IntMatrix::from_fn(n, n, |i, j| c[(i + n - j) % n].clone())
}

/// The first column, if the matrix is a circulant.
pub fn circulant_coefficients(m: &IntMatrix) -> Option<Vec<BigInt>> {
    let n = m.rows();
    if !m.is_square() || n == 0 {
        return None;
    }
    let c = m.column(0);
    for i in 0..n {
        for j in 0..n {
            if m.get(i, j) != &c[(i + n - j) % n] {
                return None;
            }
        }
    }
    Some(c)
}

/// Validates a centralizer unit: the matrix must commute with the group and
/// have determinant `+1` or `-1`.
pub fn verify_unit(m: &IntMatrix, g: &PermGroup) -> Result<UnitElement> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    check_dim(g.degree(), m.rows())?;
    if !g.commutes_with(m) {
        return Err(Error::NonCommuting);
    }
    if let Some(c) = circulant_coefficients(m) {
        let inv = gr_inverse(&c).ok_or(Error::NotUnimodular)?;
        return UnitElement::from_parts(m.clone(), circulant(&inv));
    }
    if !m.det().abs().is_one() {
        return Err(Error::NotUnimodular);
    }
    let inv = m.inverse().ok_or(Error::NotUnimodular)?;
    UnitElement::from_parts(m.clone(), inv)
}

/// Cyclic convolution in `Z C_n`.
pub(crate) fn gr_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len();
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[(i + j) % n] += x * y;
            }
        }
    }
    out
}

pub(crate) fn gr_pow(a: &[BigInt], mut e: u64) -> Vec<BigInt> {
    let n = a.len();
    let mut acc = vec![BigInt::zero(); n];
    acc[0] = BigInt::one();
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = gr_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = gr_mul(&base, &base);
        }
    }
    acc
}

fn gr_unit_pow(a: &[BigInt], a_inv: &[BigInt], e: i64) -> Vec<BigInt> {
    if e >= 0 {
        gr_pow(a, e as u64)
    } else {
        gr_pow(a_inv, (-e) as u64)
    }
}

/// Solves `circulant(a) x = e_0` modulo the prime `p`.
fn inverse_mod_p(a: &[BigInt], p: u64) -> Option<Vec<u64>> {
    let n = a.len();
    let pb = BigInt::from(p);
    let red: Vec<u64> = a
        .iter()
        .map(|x| x.mod_floor(&pb).to_u64().expect("reduced"))
        .collect();
    let mut m: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut row: Vec<u64> = (0..n).map(|j| red[(i + n - j) % n]).collect();
            row.push(u64::from(i == 0));
            row
        })
        .collect();
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let powm = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulm(r, b);
            }
            b = mulm(b, b);
            e >>= 1;
        }
        r
    };
    for c in 0..n {
        let piv = (c..n).find(|&r| m[r][c] != 0)?;
        m.swap(c, piv);
        let inv = powm(m[c][c], p - 2);
        for x in m[c].iter_mut() {
            *x = mulm(*x, inv);
        }
        for r in 0..n {
            if r != c && m[r][c] != 0 {
                let f = m[r][c];
                for k in c..=n {
                    let sub = mulm(f, m[c][k]);
                    m[r][k] = (m[r][k] + p - sub) % p;
                }
            }
        }
    }
    Some(m.iter().map(|row| row[n]).collect())
}

/// Inverse in `Z C_n`, by Newton lifting `w -> w (2 - a w)` of an inverse
/// modulo a prime until the exact product is one.
pub(crate) fn gr_inverse(a: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = a.len();
    if n == 0 {
        return None;
    }
    let mut one = vec![BigInt::zero(); n];
    one[0] = BigInt::one();
    // Hadamard bound on the entries of the inverse of a unimodular matrix
    let norm2: BigInt = a.iter().map(|x| x * x).sum();
    let limit = (n as u64) * (norm2.bits() / 2 + 1) + 8;
    const P: u64 = 2_147_483_647;
    let mut w: Vec<BigInt> = inverse_mod_p(a, P)?.into_iter().map(BigInt::from).collect();
    let mut q = BigInt::from(P);
    loop {
        let half = &q >> 1;
        let centered: Vec<BigInt> = w
            .iter()
            .map(|x| {
                let r = x.mod_floor(&q);
                if r > half { r - &q } else { r }
            })
            .collect();
        if gr_mul(a, &centered) == one {
            return Some(centered);
        }
        if q.bits() > 2 * limit {
            return None;
        }
        q = &q * &q;
        let aw = gr_mul(a, &centered);
        let two_minus: Vec<BigInt> = aw
            .iter()
            .enumerate()
            .map(|(i, x)| if i == 0 { BigInt::from(2) - x } else { -x })
            .collect();
        w = gr_mul(&centered, &two_minus)
            .into_iter()
            .map(|x| x.mod_floor(&q))
            .collect();
    }
}

/// Torsion units of `Z C_n` are exactly `+-g^t`.
fn is_trivial_unit(a: &[BigInt]) -> bool {
    let nz: Vec<_> = a.iter().filter(|x| !x.is_zero()).collect();
    nz.len() == 1 && nz[0].abs().is_one()
}

/// `(log |lambda_j|^2)_j` over the non-fixed frequency classes `j = 1..=n/2`.
pub(crate) fn log_vector(coeffs: &[BigInt]) -> Vec<f64> {
    let (spec, _) = circulant_eigen_magnitudes(coeffs);
    spec[1..].iter().map(|v| v.ln()).collect()
}

fn dotf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn multiplicative_order(i: usize, n: usize) -> usize {
    let mut k = 1;
    let mut p = i % n;
    while p != 1 % n {
        p = (p * i) % n;
        k += 1;
    }
    k
}

/// Raw Bass cyclic units `(1 + g + .. + g^{i-1})^k + ((1 - i^k)/n) N`.
pub fn raw_bass_units(n: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for i in 2..n {
        if i.gcd(&n) != 1 {
            continue;
        }
        let k = multiplicative_order(i, n);
        let mut base = vec![BigInt::zero(); n];
        for j in 0..i {
            base[j % n] += 1;
        }
        let mut u = gr_pow(&base, k as u64);
        let ik = BigInt::from(i).pow(k as u32);
        let corr = (BigInt::one() - ik) / BigInt::from(n);
        for c in u.iter_mut() {
            *c += &corr;
        }
        out.push(u);
    }
    out
}

const ROOT_TRIAL_CAP: u64 = 300_000;

/// Searches `w` with `w^m = +-g^t prod_i b_i^{e_i}` for some exponent vector
/// `e != 0 (mod m)`, returning `(w, index of a basis entry with e_i = 1)`.
fn find_root(basis: &[Vec<BigInt>], inverses: &[Vec<BigInt>], m: usize) -> Option<(Vec<BigInt>, usize)> {
    let n = basis[0].len();
    let r = basis.len();
    let half = n / 2;
    let real_freqs = if n.is_multiple_of(2) { 2 } else { 1 };
    let complex_freqs = half + 1 - real_freqs;
    let m64 = m as u64;
    let trials = m64
        .checked_pow(complex_freqs as u32)
        .and_then(|p| p.checked_mul(if m == 2 { 1u64 << real_freqs } else { 1 }))
        .zip(m64.checked_pow(r as u32).map(|p| (p - 1) / (m64 - 1)))
        .and_then(|(p, e)| p.checked_mul(e))
        .and_then(|x| x.checked_mul(2 * n as u64));
    if trials.is_none_or(|x| x > ROOT_TRIAL_CAP) {
        return None;
    }
    let zeta = |e: f64| Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * e / n as f64);
    let mut e = vec![0usize; r];
    loop {
        // next exponent vector with first nonzero entry equal to 1
        let mut k = r;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            e[k] += 1;
            if e[k] < m {
                break;
            }
            e[k] = 0;
        }
        let lead = match e.iter().position(|&x| x != 0) {
            Some(p) if e[p] == 1 => p,
            _ => continue,
        };
        let mut v = vec![BigInt::zero(); n];
        v[0] = BigInt::one();
        for (i, &ei) in e.iter().enumerate() {
            if ei > 0 {
                v = gr_mul(&v, &gr_unit_pow(&basis[i], &inverses[i], ei as i64));
            }
        }
        let vf: Vec<f64> = v.iter().map(big_to_f64).collect();
        let vhat: Vec<Complex<f64>> = (0..=half)
            .map(|j| {
                (0..n)
                    .map(|k| zeta(-((j * k) as f64)) * vf[k])
                    .sum()
            })
            .collect();
        for sign in [1.0f64, -1.0] {
            for t in 0..n {
                let target: Vec<Complex<f64>> = (0..=half)
                    .map(|j| vhat[j] * zeta(-((t * j) as f64)) * sign)
                    .collect();
                if let Some(w) = root_candidates(&target, n, m) {
                    for cand in w {
                        let mut tv = vec![BigInt::zero(); n];
                        for (k, c) in v.iter().enumerate() {
                            tv[(k + t) % n] = if sign > 0.0 { c.clone() } else { -c };
                        }
                        if gr_pow(&cand, m as u64) == tv {
                            return Some((cand, lead));
                        }
                    }
                }
            }
        }
    }
}

/// Integer candidates `w` whose DFT is an `m`-th root of `target` at every
/// frequency `0..=n/2`.
fn root_candidates(target: &[Complex<f64>], n: usize, m: usize) -> Option<Vec<Vec<BigInt>>> {
    let half = n / 2;
    let mut choices: Vec<Vec<Complex<f64>>> = Vec::with_capacity(half + 1);
    for (j, t) in target.iter().enumerate() {
        let real = j == 0 || 2 * j == n;
        let r = t.norm().powf(1.0 / m as f64);
        let arg = t.arg();
        let mut roots = Vec::new();
        for q in 0..m {
            let c = Complex::from_polar(r, (arg + 2.0 * std::f64::consts::PI * q as f64) / m as f64);
            if real {
                if c.im.abs() < 1e-7 * (1.0 + r) {
                    roots.push(Complex::new(c.re, 0.0));
                }
            } else {
                roots.push(c);
            }
        }
        if roots.is_empty() {
            return None;
        }
        choices.push(roots);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; half + 1];
    loop {
        let mut w = Vec::with_capacity(n);
        let mut ok = true;
        for k in 0..n {
            let mut s = Complex::new(0.0, 0.0);
            for j in 0..n {
                let (jj, conj) = if j <= half { (j, false) } else { (n - j, true) };
                let mut val = choices[jj][idx[jj]];
                if conj {
                    val = val.conj();
                }
                s += val * Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * ((k * j) % n) as f64 / n as f64);
            }
            let x = s.re / n as f64;
            if (x - x.round()).abs() > 1e-4 || x.abs() > 1e15 {
                ok = false;
                break;
            }
            w.push(BigInt::from(x.round() as i64));
        }
        if ok {
            out.push(w);
        }
        let mut p = 0;
        loop {
            if p > half {
                return Some(out);
            }
            idx[p] += 1;
            if idx[p] < choices[p].len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

/// A representative of `+-g^t w` with augmentation `+1`, symmetric when some
/// rotation is symmetric.
fn normalize_unit(w: &[BigInt]) -> Vec<BigInt> {
    let n = w.len();
    let aug: BigInt = w.iter().sum();
    let w: Vec<BigInt> = if aug.is_negative() { w.iter().map(|x| -x).collect() } else { w.to_vec() };
    for t in 0..n {
        let r: Vec<BigInt> = (0..n).map(|k| w[(k + t) % n].clone()).collect();
        if (0..n).all(|k| r[k] == r[(n - k) % n]) {
            return r;
        }
    }
    w
}

/// An independent, root-saturated family of Bass units of `Z C_n`.
///
/// Raw Bass units are collected until their log vectors are independent;
/// then `m`-th roots (up to torsion) of products of basis elements are
/// extracted for small primes `m` as long as the search stays small. The
/// result generates a finite-index subgroup of the units modulo torsion.
pub fn bass_units(n: usize) -> Vec<UnitElement> {
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut logs: Vec<Vec<f64>> = Vec::new();
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    for u in raw_bass_units(n) {
        if is_trivial_unit(&u) {
            continue;
        }
        let l = log_vector(&u);
        let mut res = l.clone();
        for q in &ortho {
            let c = dotf(&res, q) / dotf(q, q);
            for (x, y) in res.iter_mut().zip(q) {
                *x -= c * y;
            }
        }
        if dotf(&res, &res).sqrt() > 1e-7 * (1.0 + dotf(&l, &l).sqrt()) {
            ortho.push(res);
            logs.push(l);
            basis.push(u);
        }
    }
    if basis.is_empty() {
        return Vec::new();
    }
    let mut inverses: Vec<Vec<BigInt>> = basis.iter().map(|b| gr_inverse(b).expect("unit")).collect();
    loop {
        let mut changed = false;
        for m in [2usize, 3, 5, 7] {
            while let Some((w, i)) = find_root(&basis, &inverses, m) {
                inverses[i] = gr_inverse(&w).expect("root of a unit is a unit");
                basis[i] = w;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    reduce_basis(&mut basis, &mut inverses);
    let mut out: Vec<(Vec<f64>, UnitElement)> = basis
        .iter()
        .map(|b| {
            let mut w = normalize_unit(b);
            let l = log_vector(&w);
            if l[0] > 0.0 {
                w = normalize_unit(&gr_inverse(&w).expect("unit"));
            }
            let l = log_vector(&w);
            (l, UnitElement::from_group_ring(&w).expect("unit"))
        })
        .collect();
    out.sort_by(|a, b| dotf(&a.0, &a.0).partial_cmp(&dotf(&b.0, &b.0)).unwrap());
    out.into_iter().map(|(_, u)| u).collect()
}

/// Pairwise size reduction of the log vectors.
fn reduce_basis(basis: &mut [Vec<BigInt>], inverses: &mut [Vec<BigInt>]) {
    let r = basis.len();
    for _ in 0..50 {
        let logs: Vec<Vec<f64>> = basis.iter().map(|b| log_vector(b)).collect();
        let mut changed = false;
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                let c = (dotf(&logs[i], &logs[j]) / dotf(&logs[j], &logs[j])).round() as i64;
                if c != 0 {
                    basis[i] = gr_mul(&basis[i], &gr_unit_pow(&basis[j], &inverses[j], -c));
                    inverses[i] = gr_mul(&inverses[i], &gr_unit_pow(&basis[j], &inverses[j], c));
                    changed = true;
                    break;
                }
            }
            if changed {
                break;
            }
        }
        if !changed {
            return;
        }
    }
}

/// Whether `u1 u2^-1` has finite order, checked up to order `2n`.
pub fn equal_up_to_torsion(u1: &UnitElement, u2: &UnitElement) -> bool {
    let q = u1.mul(&u2.inv());
    q.finite_order(2 * u1.degree().max(1)).is_some()
}

/// A signed permutation matrix `x -> sign * (p x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    pub sign: i8,
    pub perm: Perm,
}

impl SignedPerm {
    pub fn identity(d: usize) -> Self {
        SignedPerm {
            sign: 1,
            perm: groups::identity(d),
        }
    }

    pub fn negation(d: usize) -> Self {
        SignedPerm {
            sign: -1,
            perm: groups::identity(d),
        }
    }

    pub fn from_perm(perm: Perm) -> Self {
        SignedPerm { sign: 1, perm }
    }

    pub fn apply(&self, z: &[BigInt]) -> LatticePoint {
        let y = groups::act_unchecked(&self.perm, z);
        if self.sign < 0 {
            y.into_iter().map(|x| -x).collect()
        } else {
            y
        }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        SignedPerm {
            sign: self.sign * other.sign,
            perm: groups::compose(&self.perm, &other.perm),
        }
    }

    pub fn inverse(&self) -> SignedPerm {
        SignedPerm {
            sign: self.sign,
            perm: groups::inverse(&self.perm),
        }
    }

    pub fn matrix(&self) -> IntMatrix {
        let p = permutation_matrix(&self.perm);
        if self.sign < 0 {
            p.neg()
        } else {
            p
        }
    }
}

/// One generator of a normalizer.
#[derive(Clone, Debug)]
pub enum NormalizerElement {
    Torsion(SignedPerm),
    Unit(UnitElement),
}

impl NormalizerElement {
    pub fn matrix(&self) -> IntMatrix {
        match self {
            NormalizerElement::Torsion(s) => s.matrix(),
            NormalizerElement::Unit(u) => u.matrix().clone(),
        }
    }

    pub fn inverse_matrix(&self) -> IntMatrix {
        match self {
            NormalizerElement::Torsion(s) => s.inverse().matrix(),
            NormalizerElement::Unit(u) => u.inverse_matrix().clone(),
        }
    }

    pub fn to_move(&self) -> EquivalenceMove {
        match self {
            NormalizerElement::Torsion(s) => EquivalenceMove::from_signed_perm(s),
            NormalizerElement::Unit(u) => EquivalenceMove::from_unit(u),
        }
    }
}

/// Generators of the normalizer of `C_n` in `GL(n, Z)`: `-I`, the cycle, the
/// multipliers `i -> k i` for `k` prime to `n`, and the Bass units.
pub fn normalizer_generators(n: usize) -> Vec<NormalizerElement> {
    let mut out = vec![
        NormalizerElement::Torsion(SignedPerm::negation(n)),
        NormalizerElement::Torsion(SignedPerm::from_perm(groups::shift(n))),
    ];
    for k in 2..n {
        if k.gcd(&n) == 1 {
            out.push(NormalizerElement::Torsion(SignedPerm::from_perm(groups::multiplier(n, k))));
        }
    }
    out.extend(bass_units(n).into_iter().map(NormalizerElement::Unit));
    out
}

/// Generators of the normalizer of `Sym(d)`: `-I` and the group itself.
pub fn symmetric_normalizer_generators(d: usize) -> Vec<NormalizerElement> {
    let mut out = vec![NormalizerElement::Torsion(SignedPerm::negation(d))];
    for g in PermGroup::symmetric(d).generators() {
        out.push(NormalizerElement::Torsion(SignedPerm::from_perm(g.clone())));
    }
    out
}

/// The normalizer of a group, split into a finite part of signed
/// permutations and a free part of centralizer units with fixed
/// eigenvalue `+1`.
#[derive(Clone, Debug)]
pub struct Normalizer {
    group: PermGroup,
    torsion_generators: Vec<SignedPerm>,
    torsion: Vec<SignedPerm>,
    units: Vec<UnitElement>,
    cyclic: Option<usize>,
}

impl Normalizer {
    /// The normalizer of the standard `C_n`.
    pub fn cyclic(n: usize) -> Self {
        let gens = normalizer_generators(n);
        let mut tg = Vec::new();
        let mut units = Vec::new();
        for g in gens {
            match g {
                NormalizerElement::Torsion(s) => tg.push(s),
                NormalizerElement::Unit(u) => units.push(u),
            }
        }
        let mut torsion = Vec::new();
        for sign in [1i8, -1] {
            for k in 1..=n {
                if k.gcd(&n) != 1 && n > 1 {
                    continue;
                }
                let sigma = groups::multiplier(n, k % n.max(1));
                for s in 0..n {
                    let rot: Perm = (0..n).map(|i| (i + s) % n).collect();
                    torsion.push(SignedPerm {
                        sign,
                        perm: groups::compose(&rot, &sigma),
                    });
                }
                if n == 1 {
                    break;
                }
            }
        }
        torsion.sort_by(|a, b| (a.sign < 0, &a.perm).cmp(&(b.sign < 0, &b.perm)));
        torsion.dedup();
        Normalizer {
            group: PermGroup::cyclic(n),
            torsion_generators: tg,
            torsion,
            units,
            cyclic: Some(n),
        }
    }

    /// The normalizer of `Sym(d)`: `{+-P}`.
    pub fn symmetric(d: usize) -> Self {
        let g = PermGroup::symmetric(d);
        let mut torsion = Vec::new();
        for sign in [1i8, -1] {
            for p in g.elements().expect("small symmetric group") {
                torsion.push(SignedPerm { sign, perm: p.clone() });
            }
        }
        let tg = symmetric_normalizer_generators(d)
            .into_iter()
            .filter_map(|e| match e {
                NormalizerElement::Torsion(s) => Some(s),
                NormalizerElement::Unit(_) => None,
            })
            .collect();
        Normalizer {
            group: g,
            torsion_generators: tg,
            torsion,
            units: Vec::new(),
            cyclic: None,
        }
    }

    /// A user-supplied normalizer: signed permutations normalizing the
    /// group and units commuting with it (fixing the all-ones vector).
    pub fn custom(group: PermGroup, torsion_generators: Vec<SignedPerm>, units: Vec<UnitElement>) -> Result<Self> {
        let d = group.degree();
        for s in &torsion_generators {
            check_dim(d, s.perm.len())?;
            if !group.is_normalized_by(&s.matrix(), &s.inverse().matrix())? {
                return Err(Error::NonNormalizing);
            }
        }
        for u in &units {
            check_dim(d, u.degree())?;
            if !group.commutes_with(u.matrix()) {
                return Err(Error::NonCommuting);
            }
        }
        let mut seen: HashSet<SignedPerm> = HashSet::new();
        let mut queue = VecDeque::new();
        let id = SignedPerm::identity(d);
        seen.insert(id.clone());
        queue.push_back(id);
        let mut gens = torsion_generators.clone();
        gens.extend(group.generators().iter().map(|g| SignedPerm::from_perm(g.clone())));
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    if seen.len() > groups::DEFAULT_ELEMENT_CAP {
                        return Err(Error::ElementCap(groups::DEFAULT_ELEMENT_CAP));
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut torsion: Vec<SignedPerm> = seen.into_iter().collect();
        torsion.sort_by(|a, b| (a.sign < 0, &a.perm).cmp(&(b.sign < 0, &b.perm)));
        let cyclic = group.standard_cyclic_order();
        Ok(Normalizer {
            group,
            torsion_generators,
            torsion,
            units,
            cyclic,
        })
    }

    /// The built-in normalizer for the standard cyclic group or the full
    /// symmetric group.
    pub fn for_group(g: &PermGroup) -> Result<Self> {
        if let Some(n) = g.standard_cyclic_order() {
            return Ok(Self::cyclic(n));
        }
        if g.is_full_symmetric() {
            return Ok(Self::symmetric(g.degree()));
        }
        Err(Error::Unsupported(
            "normalizer generators are built in for the standard cyclic and symmetric groups only".into(),
        ))
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    /// All elements of the finite part.
    pub fn torsion(&self) -> &[SignedPerm] {
        &self.torsion
    }

    pub fn torsion_generators(&self) -> &[SignedPerm] {
        &self.torsion_generators
    }

    /// Free generators of the centralizer modulo torsion.
    pub fn units(&self) -> &[UnitElement] {
        &self.units
    }

    pub fn cyclic_order(&self) -> Option<usize> {
        self.cyclic
    }

    pub fn generators(&self) -> Vec<NormalizerElement> {
        self.torsion_generators
            .iter()
            .cloned()
            .map(NormalizerElement::Torsion)
            .chain(self.units.iter().cloned().map(NormalizerElement::Unit))
            .collect()
    }
}

/// An affine map `z -> S z + t` with `S` in the normalizer and `t` fixed by
/// the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceMove {
    linear: IntMatrix,
    inverse: IntMatrix,
    shift: LatticePoint,
}

impl EquivalenceMove {
    pub fn new(linear: IntMatrix, shift: LatticePoint) -> Result<Self> {
        check_dim(linear.rows(), shift.len())?;
        let inverse = linear.inverse().ok_or(Error::NotUnimodular)?;
        Ok(EquivalenceMove {
            linear,
            inverse,
            shift,
        })
    }

    pub fn identity(d: usize) -> Self {
        EquivalenceMove {
            linear: IntMatrix::identity(d),
            inverse: IntMatrix::identity(d),
            shift: vec![BigInt::zero(); d],
        }
    }

    pub fn translation(t: LatticePoint) -> Self {
        let d = t.len();
        EquivalenceMove {
            linear: IntMatrix::identity(d),
            inverse: IntMatrix::identity(d),
            shift: t,
        }
    }

    pub fn from_unit(u: &UnitElement) -> Self {
        EquivalenceMove {
            linear: u.matrix().clone(),
            inverse: u.inverse_matrix().clone(),
            shift: vec![BigInt::zero(); u.degree()],
        }
    }

    pub fn from_signed_perm(s: &SignedPerm) -> Self {
        EquivalenceMove {
            linear: s.matrix(),
            inverse: s.inverse().matrix(),
            shift: vec![BigInt::zero(); s.perm.len()],
        }
    }

    /// `(S, t)` for a unit and a shift.
    pub fn with_shift(mut self, t: LatticePoint) -> Self {
        self.shift = t;
        self
    }

    pub fn linear(&self) -> &IntMatrix {
        &self.linear
    }

    pub fn linear_inverse(&self) -> &IntMatrix {
        &self.inverse
    }

    pub fn shift(&self) -> &LatticePoint {
        &self.shift
    }

    pub fn apply(&self, z: &[BigInt]) -> LatticePoint {
        arith::add(&self.linear.mul_vec(z), &self.shift)
    }

    /// `next` after `self`.
    pub fn then(&self, next: &EquivalenceMove) -> EquivalenceMove {
        EquivalenceMove {
            linear: next.linear.mul(&self.linear),
            inverse: self.inverse.mul(&next.inverse),
            shift: arith::add(&next.linear.mul_vec(&self.shift), &next.shift),
        }
    }

    pub fn inverse(&self) -> EquivalenceMove {
        let t = self.inverse.mul_vec(&self.shift);
        EquivalenceMove {
            linear: self.inverse.clone(),
            inverse: self.linear.clone(),
            shift: t.into_iter().map(|x| -x).collect(),
        }
    }

    /// Checks that `t` is fixed and that `S` normalizes the group.
    pub fn validate(&self, g: &PermGroup) -> Result<()> {
        check_dim(g.degree(), self.shift.len())?;
        if !g.fixes(&self.shift) {
            return Err(Error::Invalid("shift is not fixed by the group".into()));
        }
        if !self.linear.mul(&self.inverse).is_identity() {
            return Err(Error::NotUnimodular);
        }
        if !g.is_normalized_by(&self.linear, &self.inverse)? {
            return Err(Error::NonNormalizing);
        }
        Ok(())
    }
}

/// `S z + t`.
pub fn apply_move(mv: &EquivalenceMove, z: &[BigInt]) -> Result<LatticePoint> {
    check_dim(mv.shift.len(), z.len())?;
    Ok(mv.apply(z))
}

/// Whether `w - z` is fixed by the group.
pub fn translation_equivalent(g: &PermGroup, z: &[BigInt], w: &[BigInt]) -> Result<bool> {
    check_dim(g.degree(), z.len())?;
    check_dim(g.degree(), w.len())?;
    Ok(g.fixes(&arith::sub(w, z)))
}

/// Outcome of a bounded equivalence search.
#[derive(Clone, Debug)]
pub enum Verdict {
    /// A move mapping the first point to the second.
    Equivalent(EquivalenceMove),
    /// No witness found within the budget; not a proof of inequivalence.
    NotFound,
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent(_))
    }
}

/// The translation along `1` moving the layer of `z` into `1..=d`.
pub(crate) fn layer_translation(z: &[BigInt]) -> LatticePoint {
    let d = BigInt::from(z.len());
    let k: BigInt = z.iter().sum();
    let r = (&k - BigInt::one()).mod_floor(&d) + BigInt::one();
    let s = (r - k) / &d;
    vec![s; z.len()]
}

/// Searches a move `w = S z + t` for transitive groups.
///
/// Canonical forms are compared first; when they differ, a breadth-first
/// search over generator moves (with translations normalizing the layer) runs
/// until `budget` points have been visited.
pub fn normalizer_equivalent(
    norm: &Normalizer,
    z: &[BigInt],
    w: &[BigInt],
    budget: usize,
) -> Result<Verdict> {
    let g = norm.group();
    check_dim(g.degree(), z.len())?;
    check_dim(g.degree(), w.len())?;
    if translation_equivalent(g, z, w)? {
        return Ok(Verdict::Equivalent(EquivalenceMove::translation(arith::sub(w, z))));
    }
    let cz = crate::enumerate::canonical_form(norm, z)?;
    let cw = crate::enumerate::canonical_form(norm, w)?;
    if cz.point == cw.point {
        return Ok(Verdict::Equivalent(cz.witness.then(&cw.witness.inverse())));
    }
    let bound = 4 * arith::norm_sq(z).max(arith::norm_sq(w)) + BigInt::from(g.degree());
    let mut moves: Vec<EquivalenceMove> = Vec::new();
    for gen in norm.generators() {
        let mv = gen.to_move();
        moves.push(mv.inverse());
        moves.push(mv);
    }
    let start_t = EquivalenceMove::translation(layer_translation(z));
    let start = start_t.apply(z);
    let mut seen: HashMap<LatticePoint, EquivalenceMove> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone(), start_t);
    queue.push_back(start);
    while let Some(x) = queue.pop_front() {
        let path = seen[&x].clone();
        if translation_equivalent(g, &x, w)? {
            let fin = path.then(&EquivalenceMove::translation(arith::sub(w, &x)));
            return Ok(Verdict::Equivalent(fin));
        }
        if seen.len() >= budget {
            continue;
        }
        for mv in &moves {
            let y = mv.apply(&x);
            let tr = EquivalenceMove::translation(layer_translation(&y));
            let y2 = tr.apply(&y);
            if arith::norm_sq(&y2) > bound || seen.contains_key(&y2) {
                continue;
            }
            seen.insert(y2.clone(), path.then(mv).then(&tr));
            queue.push_back(y2);
        }
    }
    Ok(Verdict::NotFound)
}

/// `|lambda_j|^2` of a circulant unit indexed by component.
pub fn unit_component_magnitudes(u: &UnitElement, components: &[repdecomp::IsotypicComponent]) -> Option<Vec<f64>> {
    let s = u.spectrum()?;
    Some(components.iter().map(|c| s[c.frequency()]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::point;

    #[test]
    fn group_ring_product_matches_matrices() {
        let a = point(&[1, 2, 0, -1, 3]);
        let b = point(&[0, 1, 1, 0, -2]);
        assert_eq!(circulant(&gr_mul(&a, &b)), circulant(&a).mul(&circulant(&b)));
    }

    #[test]
    fn layer_translation_lands_in_range() {
        for k in -12i64..12 {
            let z = point(&[k, 0, 0, 0, 0]);
            let t = layer_translation(&z);
            let s: BigInt = arith::add(&z, &t).iter().sum();
            assert!(s >= BigInt::one() && s <= BigInt::from(5), "{k}");
        }
    }

    #[test]
    fn raw_bass_units_are_units() {
        for n in [5usize, 7, 8, 9] {
            for u in raw_bass_units(n) {
                assert!(gr_inverse(&u).is_some(), "n={n} {u:?}");
            }
        }
    }

    #[test]
    fn move_composition() {
        let u = UnitElement::from_group_ring(&point(&[-1, 1, 0, 0, 1])).unwrap();
        let a = EquivalenceMove::from_unit(&u).with_shift(point(&[2, 2, 2, 2, 2]));
        let b = EquivalenceMove::from_signed_perm(&SignedPerm::from_perm(groups::shift(5)));
        let z = point(&[3, -1, 0, 4, 1]);
        assert_eq!(a.then(&b).apply(&z), b.apply(&a.apply(&z)));
        assert_eq!(a.inverse().apply(&a.apply(&z)), z);
    }
}
