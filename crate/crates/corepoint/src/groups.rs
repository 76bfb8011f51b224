//! Permutation groups acting on `Z^d` by permuting coordinates.
//!
//! A permutation is an index array `g` on `{0, .., d-1}`. It acts on vectors
//! by `(g z)[g(i)] = z[i]`, so `g` sends the basis vector `e_i` to
//! `e_{g(i)}`. Composition `compose(g, h)` is `g` after `h`.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::arith::LatticePoint;
use crate::error::{check_dim, Error, Result};
use crate::matrix::IntMatrix;

pub type Perm = Vec<usize>;

/// Default cap on the number of enumerated group elements.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

pub fn identity(d: usize) -> Perm {
    (0..d).collect()
}

/// `g` after `h`.
pub fn compose(g: &[usize], h: &[usize]) -> Perm {
    h.iter().map(|&i| g[i]).collect()
}

pub fn inverse(g: &[usize]) -> Perm {
    let mut inv = vec![0; g.len()];
    for (i, &gi) in g.iter().enumerate() {
        inv[gi] = i;
    }
    inv
}

pub fn is_permutation(g: &[usize]) -> bool {
    let mut seen = vec![false; g.len()];
    for &x in g {
        if x >= g.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// The action `result[g(i)] = z[i]`.
pub fn act(g: &[usize], z: &[BigInt]) -> Result<LatticePoint> {
    check_dim(g.len(), z.len())?;
    Ok(act_unchecked(g, z))
}

pub(crate) fn act_unchecked<T: Clone + Default>(g: &[usize], z: &[T]) -> Vec<T> {
    let mut out = vec![T::default(); z.len()];
    for (i, &gi) in g.iter().enumerate() {
        out[gi] = z[i].clone();
    }
    out
}

/// The permutation matrix `P` with `P e_i = e_{g(i)}`.
pub fn permutation_matrix(g: &[usize]) -> IntMatrix {
    let d = g.len();
    let mut m = IntMatrix::zeros(d, d);
    for (i, &gi) in g.iter().enumerate() {
        m.set(gi, i, BigInt::one());
    }
    m
}

/// The cyclic shift `i -> i + 1 mod n`.
pub fn shift(n: usize) -> Perm {
    (0..n).map(|i| (i + 1) % n).collect()
}

/// The multiplier permutation `i -> k i mod n`.
pub fn multiplier(n: usize, k: usize) -> Perm {
    (0..n).map(|i| (k * i) % n).collect()
}

/// Parses one permutation in 1-based cycle notation, e.g. `(1,4)(2,3)`.
/// Cycles are applied right to left.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
    let mut perm = identity(degree);
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::InvalidPermutation(format!("expected '(' in {text:?}")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::InvalidPermutation(format!("unclosed cycle in {text:?}")))?;
        let inner = &rest[1..close];
        let mut labels = Vec::new();
        for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let v: usize = tok
                .parse()
                .map_err(|_| Error::InvalidPermutation(format!("bad label {tok:?}")))?;
            if v == 0 || v > degree {
                return Err(Error::InvalidPermutation(format!(
                    "label {v} outside 1..={degree}"
                )));
            }
            labels.push(v - 1);
        }
        let set: HashSet<_> = labels.iter().collect();
        if set.len() != labels.len() {
            return Err(Error::InvalidPermutation(format!("repeated label in {text:?}")));
        }
        cycles.push(labels);
        rest = rest[close + 1..].trim_start();
    }
    for labels in cycles.iter().rev() {
        let mut c = identity(degree);
        for (k, &a) in labels.iter().enumerate() {
            c[a] = labels[(k + 1) % labels.len()];
        }
        perm = compose(&c, &perm);
    }
    Ok(perm)
}

/// Largest label mentioned in a cycle string.
fn max_label(text: &str) -> usize {
    text.split(|c: char| !c.is_ascii_digit())
        .filter_map(|t| t.parse::<usize>().ok())
        .max()
        .unwrap_or(0)
}

/// A finite permutation group given by generators.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    cap: usize,
    elements: OnceLock<Vec<Perm>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let g = PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            cap: self.cap,
            elements: OnceLock::new(),
        };
        if let Some(e) = self.elements.get() {
            let _ = g.elements.set(e.clone());
        }
        g
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.generators == other.generators
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        for g in &generators {
            check_dim(degree, g.len())?;
            if !is_permutation(g) {
                return Err(Error::InvalidPermutation(format!("{g:?} is not a bijection")));
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            cap: DEFAULT_ELEMENT_CAP,
            elements: OnceLock::new(),
        })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self.elements = OnceLock::new();
        self
    }

    pub fn trivial(d: usize) -> Self {
        Self::new(d, vec![]).expect("valid degree")
    }

    /// `C_n` generated by `i -> i + 1`.
    pub fn cyclic(n: usize) -> Self {
        Self::new(n, vec![shift(n)]).expect("valid cycle")
    }

    /// `D_n` generated by `i -> i + 1` and the reflection `i -> n - 2 - i`.
    ///
    /// For `n = 5` this is the group generated by `(1,2,3,4,5)` and `(1,4)(2,3)`.
    pub fn dihedral(n: usize) -> Self {
        let refl: Perm = (0..n).map(|i| (2 * n - 2 - i) % n).collect();
        Self::new(n, vec![shift(n), refl]).expect("valid generators")
    }

    pub fn symmetric(d: usize) -> Self {
        let mut gens = Vec::new();
        if d >= 2 {
            let mut t = identity(d);
            t.swap(0, 1);
            gens.push(t);
            if d >= 3 {
                gens.push(shift(d));
            }
        }
        Self::new(d, gens).expect("valid generators")
    }

    /// Parses generators in 1-based cycle notation separated by `;` or by a
    /// comma between cycles, e.g. `(1,2,3,4,5),(1,4)(2,3)`. The degree
    /// defaults to the largest label.
    pub fn from_cycles(text: &str, degree: Option<usize>) -> Result<Self> {
        let d = degree.unwrap_or_else(|| max_label(text));
        let mut pieces = Vec::new();
        let (mut depth, mut start) = (0i32, 0usize);
        for (i, c) in text.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' | ';' if depth == 0 => {
                    pieces.push(&text[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        pieces.push(&text[start..]);
        let gens = pieces
            .into_iter()
            .filter(|s| !s.trim().is_empty())
            .map(|s| parse_cycles(s, d))
            .collect::<Result<Vec<_>>>()?;
        Self::new(d, gens)
    }

    /// Parses `{"degree": 5, "generators": [[1,2,3,4,0]]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
        let degree = v
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Invalid("missing integer field \"degree\"".into()))?
            as usize;
        let gens = v
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Invalid("missing array field \"generators\"".into()))?;
        let mut out = Vec::new();
        for g in gens {
            let arr = g
                .as_array()
                .ok_or_else(|| Error::Invalid("generator must be an array".into()))?;
            let p = arr
                .iter()
                .map(|x| x.as_u64().map(|x| x as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Invalid("generator entries must be integers".into()))?;
            out.push(p);
        }
        Self::new(degree, out)
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({"degree": self.degree, "generators": self.generators}).to_string()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// All elements, enumerated by breadth-first closure.
    pub fn elements(&self) -> Result<&[Perm]> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let id = identity(self.degree);
        let mut seen: HashSet<Perm> = HashSet::new();
        let mut queue = VecDeque::new();
        let mut list = Vec::new();
        seen.insert(id.clone());
        queue.push_back(id.clone());
        list.push(id);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = compose(g, &x);
                if seen.insert(y.clone()) {
                    if list.len() >= self.cap {
                        return Err(Error::ElementCap(self.cap));
                    }
                    list.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let _ = self.elements.set(list);
        Ok(self.elements.get().expect("just set"))
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    pub fn contains(&self, g: &[usize]) -> Result<bool> {
        Ok(self.elements()?.iter().any(|x| x == g))
    }

    /// Orbits of the group on `{0, .., d-1}`.
    pub fn point_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut orbits = Vec::new();
        for s in 0..self.degree {
            if seen[s] {
                continue;
            }
            let mut orbit = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for g in &self.generators {
                    if !seen[g[x]] {
                        seen[g[x]] = true;
                        orbit.push(g[x]);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.point_orbits().len() == 1
    }

    /// The orbit `G z`, sorted lexicographically.
    pub fn orbit(&self, z: &[BigInt]) -> Result<Vec<LatticePoint>> {
        check_dim(self.degree, z.len())?;
        let mut seen: HashSet<LatticePoint> = HashSet::new();
        let mut queue = vec![z.to_vec()];
        seen.insert(z.to_vec());
        while let Some(x) = queue.pop() {
            for g in &self.generators {
                let y = act_unchecked(g, &x);
                if !seen.contains(&y) {
                    if seen.len() >= self.cap {
                        return Err(Error::ElementCap(self.cap));
                    }
                    seen.insert(y.clone());
                    queue.push(y);
                }
            }
        }
        let mut v: Vec<_> = seen.into_iter().collect();
        v.sort();
        Ok(v)
    }

    pub fn fixes(&self, z: &[BigInt]) -> bool {
        self.generators.iter().all(|g| act_unchecked(g, z) == z)
    }

    /// Orthogonal projection onto the fixed space: the average over each
    /// orbit of coordinates.
    pub fn project_fixed(&self, z: &[BigInt]) -> Result<Vec<BigRational>> {
        check_dim(self.degree, z.len())?;
        let mut out = vec![BigRational::zero(); self.degree];
        for orbit in self.point_orbits() {
            let s: BigInt = orbit.iter().map(|&i| &z[i]).sum();
            let avg = BigRational::new(s, BigInt::from(orbit.len()));
            for &i in &orbit {
                out[i] = avg.clone();
            }
        }
        Ok(out)
    }

    /// The layer `sum_i z_i` of `z`; only defined for transitive groups.
    pub fn layer_of(&self, z: &[BigInt]) -> Result<BigInt> {
        check_dim(self.degree, z.len())?;
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        Ok(z.iter().sum())
    }

    /// Whether a matrix commutes with every generator.
    pub fn commutes_with(&self, m: &IntMatrix) -> bool {
        self.generators.iter().all(|g| {
            let p = permutation_matrix(g);
            p.mul(m) == m.mul(&p)
        })
    }

    /// Whether `S g S^-1` lies in the group for every generator.
    pub fn is_normalized_by(&self, s: &IntMatrix, s_inv: &IntMatrix) -> Result<bool> {
        let elems: HashSet<IntMatrix> = self.elements()?.iter().map(|e| permutation_matrix(e)).collect();
        Ok(self
            .generators
            .iter()
            .all(|g| elems.contains(&s.mul(&permutation_matrix(g)).mul(s_inv))))
    }

    /// `Some(n)` when this is exactly the standard cyclic group `<i -> i+1>`.
    pub fn standard_cyclic_order(&self) -> Option<usize> {
        let n = self.degree;
        let mut g = n;
        for p in &self.generators {
            let k = p[0];
            if (0..n).any(|i| p[i] != (i + k) % n) {
                return None;
            }
            g = num_integer::gcd(g, k);
        }
        (g == 1 || n == 1).then_some(n)
    }

    /// Whether this is the full symmetric group.
    pub fn is_full_symmetric(&self) -> bool {
        let d = self.degree;
        if d > 9 {
            return false;
        }
        let fact: usize = (1..=d).product();
        self.order().map(|o| o == fact).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::point;

    #[test]
    fn cycle_parsing() {
        let g = parse_cycles("(1,2,3,4,5)", 5).unwrap();
        assert_eq!(g, vec![1, 2, 3, 4, 0]);
        let r = parse_cycles("(1,4)(2,3)", 5).unwrap();
        assert_eq!(r, vec![3, 2, 1, 0, 4]);
        assert_eq!(parse_cycles("(2,3,5,4)", 5).unwrap(), multiplier(5, 2));
        assert!(parse_cycles("(1,1)", 5).is_err());
        assert!(parse_cycles("(1,6)", 5).is_err());
    }

    #[test]
    fn dihedral_matches_cycle_notation() {
        let d5 = PermGroup::from_cycles("(1,2,3,4,5);(1,4)(2,3)", None).unwrap();
        assert_eq!(d5.order().unwrap(), 10);
        assert_eq!(d5.generators(), PermGroup::dihedral(5).generators());
    }

    #[test]
    fn standard_cyclic_detection() {
        assert_eq!(PermGroup::cyclic(5).standard_cyclic_order(), Some(5));
        assert_eq!(PermGroup::dihedral(5).standard_cyclic_order(), None);
        assert_eq!(PermGroup::symmetric(4).standard_cyclic_order(), None);
        assert!(PermGroup::symmetric(4).is_full_symmetric());
    }

    #[test]
    fn json_round_trip() {
        let g = PermGroup::from_json(r#"{"degree": 5, "generators": [[1,2,3,4,0]]}"#).unwrap();
        assert_eq!(g, PermGroup::cyclic(5));
        assert_eq!(PermGroup::from_json(&g.to_json()).unwrap(), g);
        assert!(PermGroup::from_json(r#"{"degree": 3, "generators": [[0,0,1]]}"#).is_err());
    }

    #[test]
    fn matrix_action_agrees() {
        let g = shift(5);
        let z = point(&[1, 2, 3, 4, 5]);
        assert_eq!(permutation_matrix(&g).mul_vec(&z), act(&g, &z).unwrap());
    }
}
