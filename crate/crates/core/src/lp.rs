//! Exact two-phase simplex method with Bland's rule.
//!
//! Solves `max cᵀx` subject to `A x = b`, `x ≥ 0` over ℚ.

use num_traits::{One, Signed, Zero};

use crate::field::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// Rows of `[A | b]` in the current basis.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..=self.ncols {
                let v = &self.rows[r][j] * &f;
                self.rows[i][j] -= v;
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs of `cost` for the current basis.
    fn reduced(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut d = cost.to_vec();
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = cost[b].clone();
            if cb.is_zero() {
                continue;
            }
            for (j, dj) in d.iter_mut().enumerate() {
                *dj -= &cb * &self.rows[r][j];
            }
        }
        d
    }

    /// Maximizes `cost` over columns `allowed`; returns false if unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let d = self.reduced(cost);
            let Some(enter) = (0..allowed).find(|&j| d[j].is_positive()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }
}

pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    // artificial variables n..n+m give the initial basis
    let ncols = n + m;
    let rows: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let s = |x: &Rational| if flip { -x.clone() } else { x.clone() };
            let mut row: Vec<Rational> = a[i].iter().map(s).collect();
            row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            row.push(s(&b[i]));
            row
        })
        .collect();
    let mut t = Tableau { rows, basis: (n..n + m).collect(), ncols };

    let phase1: Vec<Rational> = (0..ncols).map(|j| if j >= n { -Rational::one() } else { Rational::zero() }).collect();
    t.optimize(&phase1, ncols);
    if (0..m).any(|r| t.basis[r] >= n && !t.rhs(r).is_zero()) {
        return LpOutcome::Infeasible;
    }
    // drive remaining zero-level artificials out of the basis where possible
    for r in 0..m {
        if t.basis[r] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, j);
            }
        }
    }
    let mut cost: Vec<Rational> = c.to_vec();
    cost.extend((0..m).map(|_| Rational::zero()));
    // redundant rows keep their artificial at level zero; it never re-enters
    if !t.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            x[bv] = t.rhs(r).clone();
        }
    }
    let value = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    LpOutcome::Optimal { value, x }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, qi};
    use crate::linalg::solve_unique;
    use crate::polyhedron::combinations;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    /// Best basic feasible solution by enumerating column bases.
    fn oracle(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> Option<Rational> {
        let n = c.len();
        // drop redundant equalities first
        let mut aug: Vec<Vec<Rational>> = a.iter().zip(b).map(|(r, x)| r.iter().chain([x]).cloned().collect()).collect();
        let pivots = crate::linalg::rref(&mut aug);
        if pivots.contains(&n) {
            return None;
        }
        let m = pivots.len();
        let a: Vec<Vec<Rational>> = aug[..m].iter().map(|r| r[..n].to_vec()).collect();
        let b: Vec<Rational> = aug[..m].iter().map(|r| r[n].clone()).collect();
        let (a, b) = (&a[..], &b[..]);
        let mut best: Option<Rational> = None;
        for cols in combinations(n, m) {
            let sub: Vec<Vec<Rational>> = a.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
            let Some(xb) = solve_unique(&sub, b) else { continue };
            if xb.iter().any(|x| x.is_negative()) {
                continue;
            }
            let val: Rational = cols.iter().zip(&xb).map(|(&j, x)| &c[j] * x).sum();
            if best.as_ref().is_none_or(|b| val > *b) {
                best = Some(val);
            }
        }
        best
    }

    #[test]
    fn simplex_picks_largest_weight() {
        let out = maximize(&v(&[1, 3, 2]), &[v(&[1, 1, 1])], &v(&[1]));
        assert_eq!(out, LpOutcome::Optimal { value: qi(3), x: v(&[0, 1, 0]) });
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 with slacks
        let a = vec![v(&[1, 0, 1, 0, 0]), v(&[0, 2, 0, 1, 0]), v(&[3, 2, 0, 0, 1])];
        let out = maximize(&v(&[3, 5, 0, 0, 0]), &a, &v(&[4, 12, 18]));
        let LpOutcome::Optimal { value, x } = out else { panic!() };
        assert_eq!(value, qi(36));
        assert_eq!((x[0].clone(), x[1].clone()), (qi(2), qi(6)));
    }

    #[test]
    fn infeasible_and_unbounded() {
        assert_eq!(maximize(&v(&[1, 0]), &[v(&[1, 1])], &v(&[-1])), LpOutcome::Infeasible);
        assert_eq!(maximize(&v(&[1, 0]), &[v(&[1, -1])], &v(&[0])), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        let a = vec![v(&[1, 1]), v(&[2, 2])];
        let out = maximize(&[q(1, 2), qi(1)], &a, &v(&[1, 2]));
        assert_eq!(out, LpOutcome::Optimal { value: qi(1), x: v(&[0, 1]) });
    }

    proptest! {
        #[test]
        fn matches_vertex_enumeration(
            rows in prop::collection::vec(prop::collection::vec(0i64..5, 4), 1..3),
            rhs in prop::collection::vec(1i64..6, 2),
            cost in prop::collection::vec(-4i64..5, 4),
        ) {
            let a: Vec<Vec<Rational>> = rows.iter().map(|r| v(r)).collect();
            let b: Vec<Rational> = rhs[..a.len()].iter().map(|&x| qi(x)).collect();
            let c = v(&cost);
            // bounded because every column has a positive entry or is zero with cost ≤ 0
            let bounded = (0..4).all(|j| a.iter().any(|r| r[j].is_positive()));
            prop_assume!(bounded);
            match (maximize(&c, &a, &b), oracle(&c, &a, &b)) {
                (LpOutcome::Optimal { value, x }, Some(best)) => {
                    prop_assert_eq!(value, best);
                    for (row, bi) in a.iter().zip(&b) {
                        let lhs: Rational = row.iter().zip(&x).map(|(p, q)| p * q).sum();
                        prop_assert_eq!(&lhs, bi);
                    }
                }
                (LpOutcome::Infeasible, None) => {}
                (got, want) => prop_assert!(false, "simplex {:?} vs oracle {:?}", got, want),
            }
        }
    }
}
