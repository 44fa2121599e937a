//! Small exact linear algebra over ℚ and ℚ(√d), plus integer lattice kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{FieldElement, Rational};

/// Field operations needed by Gaussian elimination.
pub trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Scalar for FieldElement {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<T: Scalar>(m: &mut [Vec<T>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = T::one().div(&m[r][c]);
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = m[r][j].mul(&f);
                    m[i][j] = m[i][j].sub(&v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Scalar>(rows: &[Vec<T>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : A x = 0}` for `A` with `ncols` columns.
pub fn nullspace<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); ncols];
            v[f] = T::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = T::zero().sub(&m[i][f]);
            }
            v
        })
        .collect()
}

/// Unique solution of `A x = b`, if the system is consistent with full column rank.
pub fn solve_unique<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&n) || pivots.len() != n {
        return None;
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}

/// Some solution of `A x = b`, or `None` if inconsistent.
pub fn solve_any<T: Scalar>(a: &[Vec<T>], b: &[T], ncols: usize) -> Option<Vec<T>> {
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![T::zero(); ncols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = m[i][ncols].clone();
    }
    Some(x)
}

pub fn det<T: Scalar>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return T::zero();
        };
        if p != c {
            a.swap(p, c);
            d = T::zero().sub(&d);
        }
        d = d.mul(&a[c][c]);
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].div(&a[c][c]);
            for j in c..n {
                let v = a[c][j].mul(&f);
                a[i][j] = a[i][j].sub(&v);
            }
        }
    }
    d
}

pub fn det_int(m: &[Vec<i64>]) -> BigInt {
    let q: Vec<Vec<Rational>> =
        m.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
    det(&q).to_integer()
}

/// Scales a nonzero rational vector to the primitive integer vector with the same direction.
pub fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Lattice basis of `{x ∈ ℤⁿ : A x = 0}` via unimodular column operations.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let m = a.len();
    // work on columns: cols[j] is column j of A, u[j] the matching column of U
    let mut cols: Vec<Vec<BigInt>> = (0..n).map(|j| (0..m).map(|i| a[i][j].clone()).collect()).collect();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut next = 0;
    for row in 0..m {
        if next == n {
            break;
        }
        // gcd-reduce entries of this row among columns next..n
        loop {
            let nz: Vec<usize> = (next..n).filter(|&j| !cols[j][row].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&j| cols[j][row].abs()).expect("nonempty");
            cols.swap(next, piv);
            u.swap(next, piv);
            let mut done = true;
            for j in next + 1..n {
                if cols[j][row].is_zero() {
                    continue;
                }
                let qt = cols[j][row].div_floor(&cols[next][row]);
                for i in 0..m {
                    let t = &cols[next][i] * &qt;
                    cols[j][i] -= t;
                }
                for i in 0..n {
                    let t = &u[next][i] * &qt;
                    u[j][i] -= t;
                }
                if !cols[j][row].is_zero() {
                    done = false;
                }
            }
            if done {
                next += 1;
                break;
            }
        }
    }
    (next..n).map(|j| u[j].clone()).collect()
}

/// Lattice basis of `span(vectors) ∩ ℤⁿ`.
pub fn saturated_basis(vectors: &[Vec<Rational>], n: usize) -> Vec<Vec<BigInt>> {
    let perp = nullspace(vectors, n);
    let perp_int: Vec<Vec<BigInt>> = perp.iter().map(|v| primitive(v)).collect();
    if perp_int.is_empty() {
        return (0..n)
            .map(|j| (0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
    }
    integer_kernel(&perp_int, n)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn to_rational_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

pub fn bigint_to_rational_vec(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, qi};

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]];
        // 2(12-1) - 1(4-0) + 0 = 18
        assert_eq!(det_int(&m), BigInt::from(18));
        assert_eq!(det_int(&[vec![1, 1], vec![0, 1]]), BigInt::one());
        assert_eq!(det_int(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
    }

    #[test]
    fn nullspace_and_solve() {
        let a = vec![vec![qi(1), qi(1), qi(0)], vec![qi(0), qi(1), qi(1)]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![qi(1), qi(-1), qi(1)]);
        let x = solve_unique(&[vec![qi(2), qi(0)], vec![qi(0), qi(4)]], &[qi(1), qi(1)]).unwrap();
        assert_eq!(x, vec![q(1, 2), q(1, 4)]);
        assert!(solve_unique(&a, &[qi(0), qi(0)]).is_none());
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&[q(1, 2), q(-1, 3)]), vec![BigInt::from(3), BigInt::from(-2)]);
        assert_eq!(primitive(&[qi(4), qi(6)]), vec![BigInt::from(2), BigInt::from(3)]);
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // 2x + 4y = 0 → kernel generated by (2, -1)
        let k = integer_kernel(&[vec![BigInt::from(2), BigInt::from(4)]], 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(v == &vec![BigInt::from(2), BigInt::from(-1)] || v == &vec![BigInt::from(-2), BigInt::from(1)]);
        // span{(2, 2, 0)} ∩ Z^3 = Z(1, 1, 0)
        let b = saturated_basis(&[vec![qi(2), qi(2), qi(0)]], 3);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![BigInt::one(), BigInt::one(), BigInt::zero()]);
    }
}
