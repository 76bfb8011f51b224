//! Integer linear programs with a permutation symmetry: text I/O,
//! symmetry checks, unimodular substitutions `x = S x' + t`, coefficient
//! reduction over the normalizer, hard instances from core points, and a
//! brute-force feasibility oracle.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, LatticePoint};
use crate::balance::{balance_point, has_zero_projection, LogLattice};
use crate::error::{check_dim, Error, Result};
use crate::geometry::{AffineLattice, OrbitPolytope, DEFAULT_BUDGET};
use crate::groups::PermGroup;
use crate::lp::{maximize, LpOutcome};
use crate::matrix::IntMatrix;
use crate::sweep::{for_each_point, sweep_points, Bounds, LpBounds};
use crate::units::{Normalizer, UnitElement};

type Rat = BigRational;

/// Box volume above which the oracle switches from a plain coordinate sweep
/// to a sweep over the solution lattice of the equations.
pub const PLAIN_BOX_LIMIT: f64 = 1e9;

/// `max c.x` subject to `A x <= b`, `E x = f`, `x` integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpInstance {
    pub name: String,
    pub dim: usize,
    pub a: Vec<Vec<Rat>>,
    pub b: Vec<Rat>,
    pub e: Vec<Vec<Rat>>,
    pub f: Vec<Rat>,
    pub c: Vec<Rat>,
}

fn int(x: &BigInt) -> Rat {
    Rat::from_integer(x.clone())
}

fn ints(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(int).collect()
}

fn rat_dot(a: &[Rat], x: &[BigInt]) -> Rat {
    a.iter().zip(x).fold(Rat::zero(), |acc, (p, q)| acc + p * int(q))
}

impl IlpInstance {
    /// Feasibility instance over `Z^dim` with no constraints.
    pub fn new(dim: usize) -> Self {
        IlpInstance {
            name: String::new(),
            dim,
            a: Vec::new(),
            b: Vec::new(),
            e: Vec::new(),
            f: Vec::new(),
            c: vec![Rat::zero(); dim],
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn push_inequality(&mut self, row: Vec<Rat>, rhs: Rat) -> Result<()> {
        check_dim(self.dim, row.len())?;
        self.a.push(row);
        self.b.push(rhs);
        Ok(())
    }

    pub fn push_equation(&mut self, row: Vec<Rat>, rhs: Rat) -> Result<()> {
        check_dim(self.dim, row.len())?;
        self.e.push(row);
        self.f.push(rhs);
        Ok(())
    }

    pub fn set_objective(&mut self, c: Vec<Rat>) -> Result<()> {
        check_dim(self.dim, c.len())?;
        self.c = c;
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        check_dim(self.dim, self.c.len())?;
        check_dim(self.a.len(), self.b.len())?;
        check_dim(self.e.len(), self.f.len())?;
        for r in self.a.iter().chain(&self.e) {
            check_dim(self.dim, r.len())?;
        }
        Ok(())
    }

    /// Whether `x` satisfies every constraint.
    pub fn satisfied_by(&self, x: &[BigInt]) -> bool {
        x.len() == self.dim
            && self.a.iter().zip(&self.b).all(|(r, b)| rat_dot(r, x) <= *b)
            && self.e.iter().zip(&self.f).all(|(r, f)| rat_dot(r, x) == *f)
    }

    pub fn objective_value(&self, x: &[BigInt]) -> Rat {
        rat_dot(&self.c, x)
    }

    /// Coefficient statistics of the constraint matrix `(A ; E)`.
    pub fn stats(&self) -> CoefficientStats {
        let mut max_abs = Rat::zero();
        let mut sum_of_squares = Rat::zero();
        for x in self.a.iter().chain(&self.e).flatten() {
            let ax = x.abs();
            if ax > max_abs {
                max_abs = ax;
            }
            sum_of_squares += x * x;
        }
        CoefficientStats {
            max_abs,
            sum_of_squares,
        }
    }

    /// Largest absolute entry of `A`.
    pub fn max_abs_inequality(&self) -> Rat {
        self.a
            .iter()
            .flatten()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Rat::zero)
    }
}

/// Size of the constraint coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientStats {
    pub max_abs: Rat,
    pub sum_of_squares: Rat,
}

// ---------------------------------------------------------------- text format

fn fmt_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Serializes an instance; [`parse_instance`] reads it back exactly.
pub fn write_instance(p: &IlpInstance) -> String {
    let mut s = String::new();
    if !p.name.is_empty() {
        let _ = writeln!(s, "name {}", p.name);
    }
    let _ = writeln!(s, "dim {}", p.dim);
    let row = |r: &[Rat]| r.iter().map(fmt_rat).collect::<Vec<_>>().join(" ");
    if p.c.iter().any(|x| !x.is_zero()) {
        let _ = writeln!(s, "obj {}", row(&p.c));
    }
    for (r, f) in p.e.iter().zip(&p.f) {
        let _ = writeln!(s, "eq {} = {}", row(r), fmt_rat(f));
    }
    for (r, b) in p.a.iter().zip(&p.b) {
        let _ = writeln!(s, "ineq {} <= {}", row(r), fmt_rat(b));
    }
    s
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn syntax(t: (usize, usize), message: impl Into<String>) -> Error {
    Error::Syntax {
        line: t.0,
        column: t.1,
        message: message.into(),
    }
}

fn parse_rat(t: &Token) -> Result<Rat> {
    let bad = || syntax((t.line, t.column), format!("expected a rational, found `{}`", t.text));
    match t.text.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p).map_err(|_| bad())?;
            let q = BigInt::from_str(q).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(syntax((t.line, t.column), "zero denominator"));
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(BigInt::from_str(t.text).map_err(|_| bad())?)),
    }
}

/// Parses the line-oriented instance format. Statements end at a newline
/// or `;`, and `#` starts a comment.
pub fn parse_instance(text: &str) -> Result<IlpInstance> {
    let mut dim: Option<usize> = None;
    let mut name = String::new();
    let mut obj: Option<Vec<Rat>> = None;
    let mut eqs: Vec<(Vec<Rat>, Rat)> = Vec::new();
    let mut ineqs: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut start = 0usize;
        for stmt in content.split(';') {
            let base = start;
            start += stmt.len() + 1;
            // tokens with 1-based columns
            let mut toks: Vec<Token> = Vec::new();
            let mut i = 0;
            let bytes = stmt.as_bytes();
            while i < bytes.len() {
                if bytes[i].is_ascii_whitespace() {
                    i += 1;
                    continue;
                }
                let s = i;
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
                    i += 1;
                }
                toks.push(Token {
                    text: &stmt[s..i],
                    line,
                    column: base + s + 1,
                });
            }
            let Some(head) = toks.first() else { continue };
            let at = (head.line, head.column);
            match head.text {
                "name" => {
                    let off = toks.get(1).map(|t| t.column - 1 - base).unwrap_or(stmt.len());
                    name = stmt[off..].trim().to_string();
                }
                "dim" => {
                    if toks.len() != 2 {
                        return Err(syntax(at, "expected `dim <d>`"));
                    }
                    let d = toks[1]
                        .text
                        .parse::<usize>()
                        .map_err(|_| syntax((line, toks[1].column), "expected a dimension"))?;
                    if dim.is_some() {
                        return Err(syntax(at, "duplicate `dim`"));
                    }
                    dim = Some(d);
                }
                "obj" => {
                    obj = Some(toks[1..].iter().map(parse_rat).collect::<Result<_>>()?);
                }
                "eq" | "ineq" => {
                    let rel = if head.text == "eq" { "=" } else { "<=" };
                    let pos = toks
                        .iter()
                        .position(|t| t.text == rel)
                        .ok_or_else(|| syntax(at, format!("missing `{rel}`")))?;
                    if pos + 2 != toks.len() {
                        return Err(syntax(at, format!("expected one right-hand side after `{rel}`")));
                    }
                    let row = toks[1..pos].iter().map(parse_rat).collect::<Result<Vec<_>>>()?;
                    let rhs = parse_rat(&toks[pos + 1])?;
                    if head.text == "eq" {
                        eqs.push((row, rhs));
                    } else {
                        ineqs.push((row, rhs));
                    }
                }
                other => return Err(syntax(at, format!("unknown directive `{other}`"))),
            }
        }
    }
    let d = dim.ok_or_else(|| syntax((1, 1), "missing `dim`"))?;
    let mut p = IlpInstance::new(d);
    p.name = name;
    if let Some(c) = obj {
        p.set_objective(c)?;
    }
    for (r, f) in eqs {
        p.push_equation(r, f)?;
    }
    for (r, b) in ineqs {
        p.push_inequality(r, b)?;
    }
    Ok(p)
}

// ---------------------------------------------------------------- symmetry

/// Row scaled by a positive rational to a primitive integer vector; with
/// `sign_free`, also made to have a positive first nonzero entry.
fn canonical_row(row: &[Rat], rhs: &Rat, sign_free: bool) -> LatticePoint {
    let mut v = row.to_vec();
    v.push(rhs.clone());
    let mut p = arith::primitive(&arith::clear_denominators(&v));
    if sign_free && p.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        p = p.into_iter().map(|x| -x).collect();
    }
    p
}

fn row_multiset(rows: &[Vec<Rat>], rhs: &[Rat], sign_free: bool) -> HashMap<LatticePoint, usize> {
    let mut m = HashMap::new();
    for (r, b) in rows.iter().zip(rhs) {
        *m.entry(canonical_row(r, b, sign_free)).or_insert(0) += 1;
    }
    m
}

/// `row . P_g`, i.e. `j -> row[g(j)]`.
fn permute_row(row: &[Rat], g: &[usize]) -> Vec<Rat> {
    (0..row.len()).map(|j| row[g[j]].clone()).collect()
}

/// Whether every generator of `g` maps the constraint system and objective
/// onto themselves.
pub fn check_invariance(p: &IlpInstance, g: &PermGroup) -> Result<bool> {
    check_dim(p.dim, g.degree())?;
    let ineq = row_multiset(&p.a, &p.b, false);
    let eq = row_multiset(&p.e, &p.f, true);
    for gen in g.generators() {
        let a: Vec<Vec<Rat>> = p.a.iter().map(|r| permute_row(r, gen)).collect();
        let e: Vec<Vec<Rat>> = p.e.iter().map(|r| permute_row(r, gen)).collect();
        if row_multiset(&a, &p.b, false) != ineq || row_multiset(&e, &p.f, true) != eq {
            return Ok(false);
        }
        if permute_row(&p.c, gen) != p.c {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------- substitution

fn row_times(row: &[Rat], s: &IntMatrix) -> Vec<Rat> {
    (0..s.cols())
        .map(|j| {
            row.iter()
                .enumerate()
                .fold(Rat::zero(), |acc, (i, r)| acc + r * int(s.get(i, j)))
        })
        .collect()
}

/// The instance in the variables `x'` with `x = S x' + t`.
pub fn transform(p: &IlpInstance, s: &IntMatrix, t: &[BigInt]) -> Result<IlpInstance> {
    p.validate()?;
    check_dim(p.dim, s.rows())?;
    check_dim(p.dim, t.len())?;
    if !s.is_square() || s.det().abs() != BigInt::one() {
        return Err(Error::NotUnimodular);
    }
    let mut q = IlpInstance::new(p.dim);
    q.name = p.name.clone();
    for (r, b) in p.a.iter().zip(&p.b) {
        q.push_inequality(row_times(r, s), b - rat_dot(r, t))?;
    }
    for (r, f) in p.e.iter().zip(&p.f) {
        q.push_equation(row_times(r, s), f - rat_dot(r, t))?;
    }
    q.c = row_times(&p.c, s);
    Ok(q)
}

/// Constant `c . t` to add to the objective of the transformed instance.
pub fn objective_shift(p: &IlpInstance, t: &[BigInt]) -> Rat {
    rat_dot(&p.c, t)
}

/// Outcome of [`improve_formulation`].
#[derive(Clone, Debug)]
pub struct ReformulationReport {
    pub s: UnitElement,
    pub t: LatticePoint,
    pub before: CoefficientStats,
    pub after: CoefficientStats,
    /// Indices into the move list (generators followed by their inverses).
    pub steps: Vec<usize>,
    pub moves: Vec<UnitElement>,
    pub instance: IlpInstance,
    /// Whether the step budget ran out while moves still improved.
    pub exhausted: bool,
}

/// Greedy descent of the sum of squared constraint coefficients over the
/// normalizer generators of `g` and their inverses.
pub fn improve_formulation(p: &IlpInstance, g: &PermGroup, budget: usize) -> Result<ReformulationReport> {
    let norm = invariant_normalizer(p, g)?;
    greedy(p, &norm, p.clone(), UnitElement::identity(p.dim), budget)
}

/// Like [`improve_formulation`], but first balances the longest inequality
/// row with nearest-plane rounding in the log lattice, so that a single
/// substitution replaces a long run of greedy steps. Needs a cyclic group;
/// without units of infinite order this is plain greedy descent.
pub fn improve_formulation_nearest_plane(
    p: &IlpInstance,
    g: &PermGroup,
    budget: usize,
) -> Result<ReformulationReport> {
    let norm = invariant_normalizer(p, g)?;
    let lat = LogLattice::from_normalizer(&norm)?;
    let longest = p
        .a
        .iter()
        .map(|r| arith::primitive(&arith::clear_denominators(r)))
        .max_by_key(|r| arith::norm_sq(r));
    let start = match longest {
        Some(row) if lat.rank() > 0 && !has_zero_projection(&row) => {
            // rows transform as a -> S^T a, so balance with the transpose
            let u = balance_point(&row, &lat)?.unit;
            UnitElement::from_parts(u.matrix().transpose(), u.inverse_matrix().transpose())?
        }
        _ => UnitElement::identity(p.dim),
    };
    let cur = transform(p, start.matrix(), &vec![BigInt::zero(); p.dim])?;
    let mut rep = greedy(&cur, &norm, cur.clone(), start, budget)?;
    rep.before = p.stats();
    Ok(rep)
}

fn invariant_normalizer(p: &IlpInstance, g: &PermGroup) -> Result<Normalizer> {
    if !check_invariance(p, g)? {
        return Err(Error::Invalid("instance is not invariant under the group".into()));
    }
    Normalizer::for_group(g)
}

fn greedy(
    p: &IlpInstance,
    norm: &Normalizer,
    mut cur: IlpInstance,
    mut s: UnitElement,
    budget: usize,
) -> Result<ReformulationReport> {
    let mut moves: Vec<UnitElement> = Vec::new();
    for gen in norm.generators() {
        moves.push(UnitElement::from_parts(gen.matrix(), gen.inverse_matrix())?);
    }
    let k = moves.len();
    for i in 0..k {
        let inv = moves[i].inv();
        moves.push(inv);
    }
    let before = p.stats();
    let mut steps = Vec::new();
    let mut exhausted = false;
    loop {
        let cost = cur.stats().sum_of_squares;
        let mut best: Option<(Rat, usize, IlpInstance)> = None;
        for (i, m) in moves.iter().enumerate() {
            let q = transform(&cur, m.matrix(), &vec![BigInt::zero(); p.dim])?;
            let c = q.stats().sum_of_squares;
            if c < cost && best.as_ref().is_none_or(|(b, _, _)| &c < b) {
                best = Some((c, i, q));
            }
        }
        let Some((_, i, q)) = best else { break };
        if steps.len() >= budget {
            exhausted = true;
            break;
        }
        s = s.mul(&moves[i]);
        steps.push(i);
        cur = q;
    }
    Ok(ReformulationReport {
        s,
        t: vec![BigInt::zero(); p.dim],
        after: cur.stats(),
        before,
        steps,
        moves,
        instance: cur,
        exhausted,
    })
}

// ---------------------------------------------------------------- hard instances

fn rotate_left(v: &[BigInt], k: usize) -> Vec<BigInt> {
    let n = v.len();
    (0..n).map(|i| v[(i + k) % n].clone()).collect()
}

/// `{sum x = layer, facets with offsets lowered by shrink}` for the orbit
/// polytope of a core point. For cyclic groups the facet rows are listed
/// orbit by orbit, starting from the lexicographically largest normal and
/// rotating left, so that each orbit forms a circulant block.
pub fn generate_hard_instance(g: &PermGroup, z: &[BigInt], shrink: &BigInt) -> Result<IlpInstance> {
    check_dim(g.degree(), z.len())?;
    let poly = OrbitPolytope::new(g, z)?;
    if !poly.is_core()? {
        return Err(Error::NotCorePoint);
    }
    let desc = poly.facets()?;
    let mut remaining: Vec<_> = desc.facets.clone();
    let mut ordered = Vec::with_capacity(remaining.len());
    let cyclic = g.standard_cyclic_order().is_some();
    while !remaining.is_empty() {
        let first = remaining.remove(0);
        if cyclic {
            let mut block = vec![first.clone()];
            for k in 1..g.degree() {
                let r = rotate_left(&first.normal, k);
                if let Some(pos) = remaining.iter().position(|h| h.normal == r) {
                    block.push(remaining.remove(pos));
                }
            }
            ordered.extend(block);
        } else {
            ordered.push(first);
        }
    }
    let d = g.degree();
    let mut p = IlpInstance::new(d).with_name(format!(
        "hard instance from ({})",
        z.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    ));
    for h in &desc.equations {
        p.push_equation(ints(&h.normal), int(&h.offset))?;
    }
    for h in &ordered {
        p.push_inequality(ints(&h.normal), int(&(&h.offset - shrink)))?;
    }
    if !real_feasible(&p) {
        return Err(Error::EmptyPolytope);
    }
    Ok(p)
}

/// Whether the linear relaxation has a solution (exact LP).
pub fn real_feasible(p: &IlpInstance) -> bool {
    let zero = vec![Rat::zero(); p.dim];
    !matches!(maximize(&zero, &p.a, &p.b, &p.e, &p.f), LpOutcome::Infeasible)
}

// ---------------------------------------------------------------- oracle

/// Integer bounds `[lo, hi]` per coordinate.
pub type IntBox = Vec<(BigInt, BigInt)>;

/// Per-coordinate bounds of the linear relaxation, rounded inward.
pub fn derive_box(p: &IlpInstance) -> Result<IntBox> {
    p.validate()?;
    let mut out = Vec::with_capacity(p.dim);
    for i in 0..p.dim {
        let mut c = vec![Rat::zero(); p.dim];
        c[i] = Rat::one();
        let hi = match maximize(&c, &p.a, &p.b, &p.e, &p.f) {
            LpOutcome::Optimal { value, .. } => value.floor().to_integer(),
            LpOutcome::Infeasible => return Err(Error::EmptyPolytope),
            LpOutcome::Unbounded => return Err(Error::Invalid(format!("coordinate {i} is unbounded"))),
        };
        c[i] = -Rat::one();
        let lo = match maximize(&c, &p.a, &p.b, &p.e, &p.f) {
            LpOutcome::Optimal { value, .. } => (-value).ceil().to_integer(),
            LpOutcome::Infeasible => return Err(Error::EmptyPolytope),
            LpOutcome::Unbounded => return Err(Error::Invalid(format!("coordinate {i} is unbounded"))),
        };
        out.push((lo, hi));
    }
    Ok(out)
}

/// Integer rows: `a.x <= b` scaled to integers with the right-hand side
/// rounded down.
fn integral_inequalities(p: &IlpInstance) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (r, b) in p.a.iter().zip(&p.b) {
        let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let l = Rat::from_integer(l);
        rows.push(r.iter().map(|x| (x * &l).to_integer()).collect());
        rhs.push((b * &l).floor().to_integer());
    }
    (rows, rhs)
}

/// Integer equations, or `None` when some equation has no integer solution
/// even on its own.
fn integral_equations(p: &IlpInstance) -> Option<(Vec<Vec<BigInt>>, Vec<BigInt>)> {
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (r, f) in p.e.iter().zip(&p.f) {
        let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let l = Rat::from_integer(l);
        let fl = f * &l;
        if !fl.is_integer() {
            return None;
        }
        rows.push(r.iter().map(|x| (x * &l).to_integer()).collect());
        rhs.push(fl.to_integer());
    }
    Some((rows, rhs))
}

struct BoxBounds<'a>(&'a [(i128, i128)]);

impl Bounds for BoxBounds<'_> {
    fn range(&self, a: &[BigInt]) -> Result<(BigInt, BigInt)> {
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (x, &(l, h)) in a.iter().zip(self.0) {
            let (p, q) = (x * BigInt::from(l), x * BigInt::from(h));
            if p <= q {
                lo += p;
                hi += q;
            } else {
                lo += q;
                hi += p;
            }
        }
        Ok((lo, hi))
    }
}

/// Some integer solution inside the box, or `None` when there is none.
///
/// Boxes of volume at most [`PLAIN_BOX_LIMIT`] are swept coordinate by
/// coordinate and the lexicographically first solution is returned. Larger
/// boxes are searched over the integer solutions of the equations, bounded
/// by exact LP; then the returned solution is not necessarily the first.
pub fn brute_force_feasible(p: &IlpInstance, bx: &[(BigInt, BigInt)]) -> Result<Option<LatticePoint>> {
    brute_force_feasible_with_budget(p, bx, DEFAULT_BUDGET)
}

pub fn brute_force_feasible_with_budget(
    p: &IlpInstance,
    bx: &[(BigInt, BigInt)],
    budget: u64,
) -> Result<Option<LatticePoint>> {
    p.validate()?;
    check_dim(p.dim, bx.len())?;
    if bx.iter().any(|(l, h)| l > h) {
        return Ok(None);
    }
    let Some((erows, erhs)) = integral_equations(p) else {
        return Ok(None);
    };
    let (mut rows, mut rhs) = integral_inequalities(p);
    let volume: f64 = bx
        .iter()
        .map(|(l, h)| arith::big_to_f64(&(h - l)) + 1.0)
        .product();
    let d = p.dim;
    let mut found: Option<LatticePoint> = None;
    if volume <= PLAIN_BOX_LIMIT {
        for (r, f) in erows.iter().zip(&erhs) {
            rows.push(r.clone());
            rhs.push(f.clone());
            rows.push(r.iter().map(|x| -x).collect());
            rhs.push(-f);
        }
        let small: Vec<(i128, i128)> = bx
            .iter()
            .map(|(l, h)| Ok((arith::to_i128(l).ok_or(Error::Invalid("box too large".into()))?, arith::to_i128(h).ok_or(Error::Invalid("box too large".into()))?)))
            .collect::<Result<_>>()?;
        sweep_points(&rows, &rhs, d, &BoxBounds(&small), budget, &mut |x| {
            found = Some(x.to_vec());
            false
        })?;
        return Ok(found);
    }
    let lattice = if erows.is_empty() {
        AffineLattice::of_equations(d, &[])
    } else {
        AffineLattice::of_system(&IntMatrix::from_rows(erows)?, &erhs)
    };
    let Some(lat) = lattice else { return Ok(None) };
    let k = lat.dim();
    // constraints on y with x = origin + K y
    let mut yrows = Vec::new();
    let mut yrhs = Vec::new();
    for (r, b) in rows.iter().zip(&rhs) {
        yrows.push(lat.basis.vec_mul(r));
        yrhs.push(b - arith::dot(r, &lat.origin));
    }
    for (i, (l, h)) in bx.iter().enumerate() {
        let kr = lat.basis.row(i).to_vec();
        yrows.push(kr.clone());
        yrhs.push(h - &lat.origin[i]);
        yrows.push(kr.iter().map(|x| -x).collect());
        yrhs.push(&lat.origin[i] - l);
    }
    let bounds = LpBounds {
        rows: &yrows,
        rhs: &yrhs,
    };
    for_each_point(&yrows, &yrhs, k, &bounds, budget, &mut |y| {
        found = Some(lat.point(y));
        false
    })?;
    Ok(found)
}
