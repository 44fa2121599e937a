//! Random inputs and independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tropmob::entropy::{standard_simplex, FamilyMember, MeasureFamily, MemberPart};
use tropmob::field::Rational;
use tropmob::lattice::{check_balancing, dual_complex, lower_hull_subdivision, LiftedLaurentPolynomial};
use tropmob::measures::{pullback_measure, pushforward, total_mass, Atom, ComplexMeasure, WeightedCell};
use tropmob::pl::{corner_locus, dilation_factor, tropicalize, tropicalize_monomial_map, PlFunction, PlMap};

pub fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rq(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn random_rational(rng: &mut ChaCha8Rng, span: i64, max_den: i64) -> Rational {
    rq(rng.random_range(-span..=span), rng.random_range(1..=max_den))
}

/// Plane support of 3 to `max_points` distinct lattice points in `[0, 4]²`, not collinear,
/// with integer lifts in `[-5, 5]`.
pub fn random_lifted(rng: &mut ChaCha8Rng, max_points: usize) -> LiftedLaurentPolynomial {
    let mut grid: Vec<[i64; 2]> = (0..5).flat_map(|a| (0..5).map(move |b| [a, b])).collect();
    loop {
        grid.shuffle(rng);
        let k = rng.random_range(3..=max_points);
        let pts = &grid[..k];
        let collinear = pts.iter().all(|p| cross(pts[0], pts[1], *p) == 0);
        if collinear {
            continue;
        }
        let terms: Vec<(Vec<i64>, i64, Rational)> =
            pts.iter().map(|p| (p.to_vec(), 1, r(rng.random_range(-5..=5)))).collect();
        let borrowed: Vec<(&[i64], i64, Rational)> = terms.iter().map(|(e, c, l)| (e.as_slice(), *c, l.clone())).collect();
        return LiftedLaurentPolynomial::from_ints(2, &borrowed).expect("distinct exponents");
    }
}

fn cross(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex hull vertices in counter-clockwise order (monotone chain).
pub fn hull2(points: &[[i64; 2]]) -> Vec<[i64; 2]> {
    let mut p = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut lower: Vec<[i64; 2]> = Vec::new();
    for &x in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], x) <= 0 {
            lower.pop();
        }
        lower.push(x);
    }
    let mut upper: Vec<[i64; 2]> = Vec::new();
    for &x in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], x) <= 0 {
            upper.pop();
        }
        upper.push(x);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Twice the area, i.e. the normalized lattice area.
pub fn double_area(h: &[[i64; 2]]) -> i64 {
    (0..h.len()).map(|i| cross([0, 0], h[i], h[(i + 1) % h.len()])).sum::<i64>().abs()
}

fn pt2(v: &[i64]) -> [i64; 2] {
    [v[0], v[1]]
}

/// Plane through three lifted points: `(a, b, c)` with `v = a·x + b·y + c`.
fn plane(p: [[i64; 2]; 3], v: [&Rational; 3]) -> (Rational, Rational, Rational) {
    let d = r(cross(p[0], p[1], p[2]));
    let (x1, y1) = (r(p[1][0] - p[0][0]), r(p[1][1] - p[0][1]));
    let (x2, y2) = (r(p[2][0] - p[0][0]), r(p[2][1] - p[0][1]));
    let (dv1, dv2) = (v[1] - v[0], v[2] - v[0]);
    let a = (&dv1 * &y2 - &dv2 * &y1) / &d;
    let b = (&x1 * &dv2 - &x2 * &dv1) / &d;
    let c = v[0] - &a * r(p[0][0]) - &b * r(p[0][1]);
    (a, b, c)
}

fn primitive_int(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Regularity, duality counts, balancing and corner-locus agreement for a plane lifted support.
pub fn check_tropical(f: &LiftedLaurentPolynomial) -> Result<(), String> {
    let s = lower_hull_subdivision(f);
    let exps: Vec<[i64; 2]> = s.points.iter().map(|p| pt2(p)).collect();

    // strict-above regularity against an independently computed lifting plane
    let mut area = 0;
    let mut edges: BTreeMap<([i64; 2], [i64; 2]), Vec<usize>> = BTreeMap::new();
    for (ci, cell) in s.cells.iter().enumerate() {
        let cpts: Vec<[i64; 2]> = cell.iter().map(|&i| exps[i]).collect();
        let h = hull2(&cpts);
        if h.len() < 3 {
            return Err(format!("cell {ci} is not two-dimensional"));
        }
        let (a, b, c) = plane([h[0], h[1], h[2]], {
            let idx = |q: [i64; 2]| cell[cpts.iter().position(|x| *x == q).unwrap()];
            [&s.lifts[idx(h[0])], &s.lifts[idx(h[1])], &s.lifts[idx(h[2])]]
        });
        for (i, e) in exps.iter().enumerate() {
            let height = &a * r(e[0]) + &b * r(e[1]) + &c;
            let on = s.lifts[i] == height;
            if on != cell.contains(&i) || s.lifts[i] < height {
                return Err(format!("cell {ci}: point {e:?} violates the lower hull"));
            }
            if s.lift_residual(ci, i) != &s.lifts[i] - &height {
                return Err(format!("cell {ci}: residual mismatch at {e:?}"));
            }
        }
        area += double_area(&h);
        for k in 0..h.len() {
            let (p, q) = (h[k], h[(k + 1) % h.len()]);
            edges.entry((p.min(q), p.max(q))).or_default().push(ci);
        }
    }
    let all_hull = hull2(&exps.iter().copied().filter(|e| s.cells.iter().flatten().any(|&i| exps[i] == *e)).collect::<Vec<_>>());
    if area != double_area(&hull2(&exps)) || area != double_area(&all_hull) {
        return Err("cells do not tile the Newton polygon".into());
    }

    // duality: one vertex per cell, one edge per interior edge, one ray per boundary edge
    let p = dual_complex(f).map_err(|e| e.to_string())?;
    if p.vertices.len() != s.cells.len() || p.faces_of_dim(0).count() != s.cells.len() {
        return Err("dual vertex count differs from cell count".into());
    }
    let dual_points: Vec<[i64; 2]> = p.points.iter().map(|x| pt2(x)).collect();
    let mut seen = BTreeSet::new();
    for (_, face) in p.faces_of_dim(1) {
        let cps: Vec<[i64; 2]> = face.cell.iter().map(|&i| dual_points[i]).collect();
        let key = (*cps.iter().min().unwrap(), *cps.iter().max().unwrap());
        let Some(cells) = edges.get(&key) else {
            return Err(format!("dual edge {key:?} is not an edge of the subdivision"));
        };
        let expected_vertices: BTreeSet<usize> = cells.iter().copied().collect();
        let got: BTreeSet<usize> = face.vertices.iter().copied().collect();
        if got != expected_vertices || face.rays.len() != usize::from(cells.len() == 1) {
            return Err(format!("dual edge {key:?} has the wrong incidence"));
        }
        let len = BigInt::from((key.1[0] - key.0[0]).gcd(&(key.1[1] - key.0[1])));
        if face.weight.as_ref() != Some(&len) {
            return Err(format!("dual edge {key:?} has weight {:?}, expected {len}", face.weight));
        }
        seen.insert(key);
    }
    if seen.len() != edges.len() {
        return Err(format!("{} subdivision edges, {} dual edges", edges.len(), seen.len()));
    }

    // balancing, recomputed from the dual geometry
    match check_balancing(&p) {
        Ok(v) if v.holds => {}
        other => return Err(format!("balancing check failed: {other:?}")),
    }
    for vi in 0..p.vertices.len() {
        let mut sum = [BigInt::zero(), BigInt::zero()];
        for (_, face) in p.faces_of_dim(1).filter(|(_, f)| f.vertices.contains(&vi)) {
            let dir: Vec<Rational> = if face.vertices.len() == 2 {
                let other = face.vertices.iter().find(|&&w| w != vi).unwrap();
                p.vertices[*other].iter().zip(&p.vertices[vi]).map(|(a, b)| a - b).collect()
            } else {
                face.rays[0].iter().map(|x| Rational::from_integer(x.clone())).collect()
            };
            let u = primitive_int(&dir);
            let w = face.weight.clone().unwrap();
            sum[0] += &w * &u[0];
            sum[1] += &w * &u[1];
        }
        if !sum[0].is_zero() || !sum[1].is_zero() {
            return Err(format!("vertex {vi} is unbalanced: {sum:?}"));
        }
    }

    // the corner locus has the same strata as the dual complex
    let l = tropicalize(f);
    let locus = corner_locus(&l);
    let strata_locus: BTreeSet<(usize, BTreeSet<Vec<i64>>)> = locus
        .pieces
        .iter()
        .map(|c| (c.vrep.dimension(), c.indices.iter().map(|&i| l.pieces()[i].linear.clone()).collect()))
        .collect();
    let strata_dual: BTreeSet<(usize, BTreeSet<Vec<i64>>)> =
        p.faces.iter().map(|fc| (fc.dim, fc.cell.iter().map(|&i| p.points[i].clone()).collect())).collect();
    if strata_locus != strata_dual {
        return Err("corner locus strata differ from dual faces".into());
    }
    for (vi, (_, face)) in p.faces_of_dim(0).enumerate() {
        let piece = locus.pieces.iter().find(|c| {
            c.vrep.dimension() == 0
                && c.indices.iter().map(|&i| l.pieces()[i].linear.clone()).collect::<BTreeSet<_>>()
                    == face.cell.iter().map(|&i| p.points[i].clone()).collect()
        });
        if piece.map(|c| &c.vrep.vertices[0]) != Some(&p.vertices[face.vertices[0]]) {
            return Err(format!("dual vertex {vi} is not a corner point"));
        }
    }
    Ok(())
}

fn det_oracle(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        _ => (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det_oracle(&minor)
            })
            .sum(),
    }
}

/// Square integer matrix with entries in `[-4, 4]` and `1 ≤ |det| ≤ 10`, plus a rational shift.
pub fn random_map(rng: &mut ChaCha8Rng, n: usize) -> (PlMap, i64) {
    loop {
        let a: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.random_range(-4..=4)).collect()).collect();
        let d = det_oracle(&a).abs();
        if (1..=10).contains(&d) {
            let b = (0..n).map(|_| random_rational(rng, 6, 4)).collect();
            return (tropicalize_monomial_map(a, b).expect("square"), d);
        }
    }
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| random_rational(rng, 8, 5)).collect()
}

/// Atomic or Lebesgue measure with one to three pieces.
pub fn random_measure(rng: &mut ChaCha8Rng, n: usize) -> ComplexMeasure {
    let k = rng.random_range(1..=3);
    if rng.random_bool(0.5) {
        let atoms = (0..k)
            .map(|_| Atom { anchor: random_point(rng, n), mass: rq(rng.random_range(1..=9), rng.random_range(1..=4)) })
            .collect();
        return ComplexMeasure::Atomic(atoms);
    }
    let mut cells = Vec::new();
    while cells.len() < k {
        let dim = rng.random_range(1..=n);
        let vertices: Vec<Vec<Rational>> = (0..=dim).map(|_| random_point(rng, n)).collect();
        let dirs: Vec<Vec<Rational>> = vertices[1..].iter().map(|v| v.iter().zip(&vertices[0]).map(|(a, b)| a - b).collect()).collect();
        if rank_oracle(dirs) != dim {
            continue;
        }
        let rays = if rng.random_bool(0.25) { vec![(0..n).map(|_| r(rng.random_range(-2..=2))).collect::<Vec<_>>()] } else { vec![] };
        if rays.iter().any(|ray: &Vec<Rational>| ray.iter().all(Zero::is_zero)) {
            continue;
        }
        cells.push(WeightedCell { vertices, rays, density: rq(rng.random_range(1..=9), rng.random_range(1..=4)) });
    }
    ComplexMeasure::Lebesgue(cells)
}

fn rank_oracle(mut rows: Vec<Vec<Rational>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[rank][c];
                let pivot = rows[rank].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `Φ_* Φ^* μ = δ μ`, exactly, with `δ` from an independent determinant.
pub fn check_projection(phi: &PlMap, expected_delta: i64, m: &ComplexMeasure) -> Result<(), String> {
    let delta = dilation_factor(phi).map_err(|e| e.to_string())?;
    if delta.0 != BigInt::from(expected_delta) {
        return Err(format!("δ = {}, expected {expected_delta}", delta.0));
    }
    let up = pullback_measure(phi, m).map_err(|e| e.to_string())?;
    let back = pushforward(phi, &up).map_err(|e| e.to_string())?;
    if !back.same_measure(&m.scaled(&r(expected_delta))) {
        return Err(format!("Φ_*Φ^*μ ≠ δμ for δ = {expected_delta}"));
    }
    let (before, after) = (total_mass(m), total_mass(&back));
    if after.total != &before.total * r(expected_delta) {
        return Err("total mass not scaled by δ".into());
    }
    Ok(())
}

fn corner_line(n: usize) -> PlFunction {
    let mut pieces: Vec<(Vec<i64>, Rational)> = vec![(vec![0; n], r(0))];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        pieces.push((e, r(0)));
    }
    let borrowed: Vec<(&[i64], Rational)> = pieces.iter().map(|(e, c)| (e.as_slice(), c.clone())).collect();
    PlFunction::from_ints(n, &borrowed).expect("valid pieces")
}

/// Family over the standard simplex in `ℝ²` whose members average one to three atomic parts
/// anchored at the origin. Returns the family and the brute-force member maximum.
pub fn random_family(rng: &mut ChaCha8Rng) -> (MeasureFamily, Rational) {
    let members_n = rng.random_range(1..=8);
    let mut members = Vec::new();
    let mut best: Option<Rational> = None;
    for i in 0..members_n {
        let parts_n = rng.random_range(1..=3);
        let masses: Vec<Rational> = (0..parts_n).map(|_| rq(rng.random_range(0..=12), rng.random_range(1..=4))).collect();
        let parts = masses
            .iter()
            .map(|m| MemberPart {
                pl: corner_line(2),
                measure: ComplexMeasure::Atomic(vec![Atom { anchor: vec![r(0), r(0)], mass: m.clone() }]),
            })
            .collect();
        let avg = masses.iter().sum::<Rational>() / r(parts_n as i64);
        best = Some(best.map_or(avg.clone(), |b: Rational| b.max(avg)));
        members.push(FamilyMember { label: format!("m{i}"), parts });
    }
    let best = best.expect("nonempty");
    let bound = &best + rq(rng.random_range(0..=3), 2);
    let bound = if bound.is_positive() { bound } else { r(1) };
    (MeasureFamily::new(standard_simplex(2), bound, members).expect("valid family"), best)
}
