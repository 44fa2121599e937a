//! Exact vertex/ray enumeration for polyhedra in low dimension.
//!
//! Brute force over active constraint sets; intended for ambient dimension
//! at most 4 and a few dozen constraints.

use num_traits::{Signed, Zero};

use crate::field::Rational;
use crate::linalg::{dot, nullspace, primitive, rank, solve_unique};

/// `⟨normal, y⟩ ≥ offset` (or `=` when used as an equality).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Constraint {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Self {
        Constraint { normal, offset }
    }

    pub fn slack(&self, y: &[Rational]) -> Rational {
        dot(&self.normal, y) - &self.offset
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polyhedron {
    pub dim: usize,
    pub equalities: Vec<Constraint>,
    pub inequalities: Vec<Constraint>,
}

/// Minkowski description `conv(vertices) + cone(rays) + span(lineality)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VRep {
    pub vertices: Vec<Vec<Rational>>,
    /// Extreme rays, each scaled to a primitive integer vector.
    pub rays: Vec<Vec<Rational>>,
    pub lineality: Vec<Vec<Rational>>,
}

impl VRep {
    /// A point in the relative interior (for a pointed or non-pointed polyhedron).
    pub fn relative_interior_point(&self) -> Option<Vec<Rational>> {
        let n = self.vertices.first()?.len();
        let k = Rational::from_integer(self.vertices.len().into());
        let mut p: Vec<Rational> = (0..n).map(|i| self.vertices.iter().map(|v| v[i].clone()).sum::<Rational>() / &k).collect();
        for r in &self.rays {
            for (x, d) in p.iter_mut().zip(r) {
                *x += d;
            }
        }
        Some(p)
    }

    /// Affine dimension of the polyhedron.
    pub fn dimension(&self) -> usize {
        let Some(v0) = self.vertices.first() else { return 0 };
        let mut dirs: Vec<Vec<Rational>> =
            self.vertices.iter().skip(1).map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect()).collect();
        dirs.extend(self.rays.iter().cloned());
        dirs.extend(self.lineality.iter().cloned());
        if dirs.is_empty() {
            0
        } else {
            rank(&dirs)
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }
}

impl Polyhedron {
    pub fn new(dim: usize) -> Self {
        Polyhedron { dim, ..Default::default() }
    }

    pub fn contains(&self, y: &[Rational]) -> bool {
        self.equalities.iter().all(|c| c.slack(y).is_zero())
            && self.inequalities.iter().all(|c| !c.slack(y).is_negative())
    }

    /// Vertices, extreme rays and lineality; `None` when empty.
    pub fn vrep(&self) -> Option<VRep> {
        let n = self.dim;
        let all_normals: Vec<Vec<Rational>> =
            self.equalities.iter().chain(&self.inequalities).map(|c| c.normal.clone()).collect();
        let lineality = if all_normals.is_empty() {
            unit_basis(n)
        } else {
            nullspace(&all_normals, n)
        };
        // equations cutting out a section transverse to the lineality space
        let mut eqs: Vec<Constraint> = self.equalities.clone();
        eqs.extend(lineality.iter().map(|l| Constraint::new(l.clone(), Rational::zero())));
        let eq_rank = if eqs.is_empty() { 0 } else { rank(&eqs.iter().map(|c| c.normal.clone()).collect::<Vec<_>>()) };
        let free = n - eq_rank;

        let mut vertices: Vec<Vec<Rational>> = Vec::new();
        for subset in combinations(self.inequalities.len(), free) {
            let rows: Vec<&Constraint> = eqs.iter().chain(subset.iter().map(|&i| &self.inequalities[i])).collect();
            let a: Vec<Vec<Rational>> = rows.iter().map(|c| c.normal.clone()).collect();
            if rank(&a) != n {
                continue;
            }
            let b: Vec<Rational> = rows.iter().map(|c| c.offset.clone()).collect();
            let Some(y) = solve_consistent(&a, &b, n) else { continue };
            if self.inequalities.iter().all(|c| !c.slack(&y).is_negative()) && !vertices.contains(&y) {
                vertices.push(y);
            }
        }
        if vertices.is_empty() {
            return None;
        }

        let mut rays: Vec<Vec<Rational>> = Vec::new();
        if free >= 1 {
            for subset in combinations(self.inequalities.len(), free - 1) {
                let mut a: Vec<Vec<Rational>> = eqs.iter().map(|c| c.normal.clone()).collect();
                a.extend(subset.iter().map(|&i| self.inequalities[i].normal.clone()));
                if !a.is_empty() && rank(&a) != n - 1 {
                    continue;
                }
                let ns = if a.is_empty() { unit_basis(n) } else { nullspace(&a, n) };
                if ns.len() != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let d: Vec<Rational> = ns[0].iter().map(|x| x * Rational::from_integer(sign.into())).collect();
                    if self.inequalities.iter().all(|c| !dot(&c.normal, &d).is_negative()) {
                        let d: Vec<Rational> =
                            primitive(&d).into_iter().map(Rational::from_integer).collect();
                        if !rays.contains(&d) {
                            rays.push(d);
                        }
                    }
                }
            }
        }
        vertices.sort();
        rays.sort();
        Some(VRep { vertices, rays, lineality })
    }
}

fn solve_consistent(a: &[Vec<Rational>], b: &[Rational], n: usize) -> Option<Vec<Rational>> {
    // the system may be overdetermined; pick independent rows then verify
    let y = solve_unique(a, b)?;
    debug_assert_eq!(y.len(), n);
    Some(y)
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }).collect()
}

pub fn unit_basis(n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|i| unit(n, i)).collect()
}

/// All `k`-subsets of `0..m` in lexicographic order.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + m - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
