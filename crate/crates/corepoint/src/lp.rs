//! Exact rational linear programming: a dense-tableau two-phase simplex with
//! Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Rat = BigRational;

/// Result of a linear program.
#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rat>, value: Rat },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost . y` over the current basis, restricted to columns
    /// `< allowed`. Returns false when unbounded.
    fn run(&mut self, cost: &[Rat], allowed: usize) -> bool {
        loop {
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rc = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !self.rows[i][j].is_zero() && !cost[b].is_zero() {
                        rc -= &cost[b] * &self.rows[i][j];
                    }
                }
                if rc.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Maximizes `c . y` subject to `A y = b`, `y >= 0`.
pub fn solve_standard(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let ncols = n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Rat> = a[i]
            .iter()
            .map(|x| if flip { -x.clone() } else { x.clone() })
            .collect();
        for k in 0..m {
            row.push(if k == i { Rat::one() } else { Rat::zero() });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        ncols,
    };
    let mut phase1 = vec![Rat::zero(); ncols];
    for v in phase1.iter_mut().skip(n) {
        *v = -Rat::one();
    }
    t.run(&phase1, ncols);
    if (0..m).any(|i| t.basis[i] >= n && !t.rhs(i).is_zero()) {
        return LpOutcome::Infeasible;
    }
    // drive artificial variables out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    let mut cost = c.to_vec();
    cost.extend((0..m).map(|_| Rat::zero()));
    if !t.run(&cost, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &bi) in t.basis.iter().enumerate() {
        if bi < n {
            x[bi] = t.rhs(i).clone();
        }
    }
    let value = x.iter().zip(c).map(|(a, b)| a * b).sum();
    LpOutcome::Optimal { x, value }
}

/// Some `y >= 0` with `A y = b`, if one exists.
pub fn feasible_standard(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.first().map_or(0, |r| r.len());
    match solve_standard(a, b, &vec![Rat::zero(); n]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// Maximizes `c . x` over free `x` subject to `A x <= b` and `E x = f`.
pub fn maximize(c: &[Rat], a: &[Vec<Rat>], b: &[Rat], e: &[Vec<Rat>], f: &[Rat]) -> LpOutcome {
    let d = c.len();
    let m = a.len();
    // variables: x+ (d), x- (d), slacks (m)
    let width = 2 * d + m;
    let mut rows = Vec::with_capacity(m + e.len());
    let mut rhs = Vec::with_capacity(m + e.len());
    for (i, row) in a.iter().enumerate() {
        let mut r = Vec::with_capacity(width);
        r.extend(row.iter().cloned());
        r.extend(row.iter().map(|x| -x.clone()));
        r.extend((0..m).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
        rows.push(r);
        rhs.push(b[i].clone());
    }
    for (i, row) in e.iter().enumerate() {
        let mut r = Vec::with_capacity(width);
        r.extend(row.iter().cloned());
        r.extend(row.iter().map(|x| -x.clone()));
        r.extend((0..m).map(|_| Rat::zero()));
        rows.push(r);
        rhs.push(f[i].clone());
    }
    let mut cost = Vec::with_capacity(width);
    cost.extend(c.iter().cloned());
    cost.extend(c.iter().map(|x| -x.clone()));
    cost.extend((0..m).map(|_| Rat::zero()));
    match solve_standard(&rows, &rhs, &cost) {
        LpOutcome::Optimal { x, value } => {
            let xs = (0..d).map(|j| &x[j] - &x[d + j]).collect();
            LpOutcome::Optimal { x: xs, value }
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn small_program() {
        // max x + y s.t. x <= 2, y <= 3, x + y <= 4
        let a = vec![
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1)],
            vec![rat(1, 1), rat(1, 1)],
        ];
        let b = vec![rat(2, 1), rat(3, 1), rat(4, 1)];
        match maximize(&[rat(1, 1), rat(1, 1)], &a, &b, &[], &[]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(4, 1)),
            o => panic!("{o:?}"),
        }
        match maximize(&[rat(-1, 1), rat(0, 1)], &a, &b, &[], &[]) {
            LpOutcome::Unbounded => {}
            o => panic!("{o:?}"),
        }
        let e = vec![vec![rat(1, 1), rat(0, 1)]];
        match maximize(&[rat(0, 1), rat(1, 1)], &a, &b, &e, &[rat(3, 1)]) {
            LpOutcome::Infeasible => {}
            o => panic!("{o:?}"),
        }
    }
}
