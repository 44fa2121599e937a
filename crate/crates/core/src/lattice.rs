//! Supports, Newton polytopes, regular subdivisions and the dual complex.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{LatticeError, ParseError};
use crate::field::{Field, FieldElement, Rational};
use crate::linalg::{bigint_to_rational_vec, dot, nullspace, primitive, rank, saturated_basis, solve_unique, to_rational_vec};
use crate::polyhedron::combinations;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedTerm {
    pub exp: Vec<i64>,
    pub coeff: FieldElement,
    pub lift: Rational,
}

/// `f = Σ a_j t^{v(j)} x^j`, terms kept sorted by exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedLaurentPolynomial {
    n: usize,
    field: Field,
    terms: Vec<LiftedTerm>,
}

impl LiftedLaurentPolynomial {
    pub fn new(n: usize, field: Field, mut terms: Vec<LiftedTerm>) -> Result<Self, ParseError> {
        if n == 0 {
            return Err(ParseError::Schema("n must be at least 1".into()));
        }
        if terms.is_empty() {
            return Err(ParseError::Schema("at least one term required".into()));
        }
        for t in &terms {
            if t.exp.len() != n {
                return Err(ParseError::Schema(format!("exponent {:?} has length {} but n = {n}", t.exp, t.exp.len())));
            }
            if t.coeff.is_zero() {
                return Err(ParseError::Schema(format!("zero coefficient at {:?}", t.exp)));
            }
            if !field.contains(&t.coeff) {
                return Err(ParseError::Field(format!("coefficient {} not in the declared field", t.coeff)));
            }
        }
        terms.sort_by(|a, b| a.exp.cmp(&b.exp));
        if terms.windows(2).any(|w| w[0].exp == w[1].exp) {
            return Err(ParseError::Schema("repeated exponent".into()));
        }
        Ok(LiftedLaurentPolynomial { n, field, terms })
    }

    /// Integer coefficients and lifts; convenient for fixtures and tests.
    pub fn from_ints(n: usize, terms: &[(&[i64], i64, Rational)]) -> Result<Self, ParseError> {
        let terms = terms
            .iter()
            .map(|(e, c, v)| LiftedTerm { exp: e.to_vec(), coeff: FieldElement::from_int(*c), lift: v.clone() })
            .collect();
        Self::new(n, Field::Rational, terms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &[LiftedTerm] {
        &self.terms
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.iter().map(|t| t.exp.clone()).collect()
    }

    pub fn lifts(&self) -> Vec<Rational> {
        self.terms.iter().map(|t| t.lift.clone()).collect()
    }

    /// Same support and coefficients, new lifts (in term order).
    pub fn with_lifts(&self, lifts: &[Rational]) -> Self {
        let mut f = self.clone();
        for (t, v) in f.terms.iter_mut().zip(lifts) {
            t.lift = v.clone();
        }
        f
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shifted(&self, shift: &[i64]) -> Self {
        let mut f = self.clone();
        for t in &mut f.terms {
            for (e, s) in t.exp.iter_mut().zip(shift) {
                *e += s;
            }
        }
        f
    }
}

/// `⟨normal, x⟩ ≥ offset`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolytope {
    pub n: usize,
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    /// Inner normals chosen inside the linear span of the polytope.
    pub facets: Vec<Facet>,
    /// Equations `⟨normal, x⟩ = offset` of the affine hull when `dim < n`.
    pub equations: Vec<Facet>,
}

impl NewtonPolytope {
    pub fn contains(&self, p: &[i64]) -> bool {
        let p: Vec<BigInt> = p.iter().map(|&x| BigInt::from(x)).collect();
        let val = |f: &Facet| f.normal.iter().zip(&p).map(|(a, b)| a * b).sum::<BigInt>();
        self.facets.iter().all(|f| val(f) >= f.offset) && self.equations.iter().all(|f| val(f) == f.offset)
    }
}

pub(crate) struct HullFacet {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
    pub members: Vec<usize>,
}

pub(crate) struct Hull {
    pub dim: usize,
    pub equations: Vec<Vec<Rational>>,
    pub facets: Vec<HullFacet>,
}

fn diffs(points: &[Vec<Rational>], base: &[Rational]) -> Vec<Vec<Rational>> {
    points.iter().map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect()).collect()
}

pub(crate) fn affine_dim(points: &[Vec<Rational>]) -> usize {
    match points.first() {
        None => 0,
        Some(p0) => {
            let d = diffs(&points[1..], p0);
            if d.is_empty() {
                0
            } else {
                rank(&d)
            }
        }
    }
}

/// Facets of `conv(points)` relative to its affine hull, by brute force over point subsets.
pub(crate) fn hull(points: &[Vec<Rational>]) -> Hull {
    let n = points.first().map_or(0, |p| p.len());
    let dim = affine_dim(points);
    let dirs = diffs(&points[1..], &points[0]);
    let equations = if dirs.is_empty() { crate::polyhedron::unit_basis(n) } else { nullspace(&dirs, n) };
    let mut facets: Vec<HullFacet> = Vec::new();
    if dim == 0 {
        return Hull { dim, equations, facets };
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for subset in combinations(points.len(), dim) {
        let base = &points[subset[0]];
        let mut rows = diffs(&subset[1..].iter().map(|&i| points[i].clone()).collect::<Vec<_>>(), base);
        if !rows.is_empty() && rank(&rows) != dim - 1 {
            continue;
        }
        rows.extend(equations.iter().cloned());
        let ns = nullspace(&rows, n);
        if ns.len() != 1 {
            continue;
        }
        let mut normal = primitive(&ns[0]);
        let a = bigint_to_rational_vec(&normal);
        let h = dot(&a, base);
        let vals: Vec<Rational> = points.iter().map(|p| dot(&a, p) - &h).collect();
        let offset = if vals.iter().all(|v| !v.is_negative()) {
            h
        } else if vals.iter().all(|v| !v.is_positive()) {
            normal = normal.into_iter().map(|x| -x).collect();
            -h
        } else {
            continue;
        };
        let members: Vec<usize> = (0..points.len()).filter(|&i| vals[i].is_zero()).collect();
        if seen.insert(members.clone()) {
            facets.push(HullFacet { normal, offset, members });
        }
    }
    Hull { dim, equations, facets }
}

pub fn support_polytope(f: &LiftedLaurentPolynomial) -> NewtonPolytope {
    let pts: Vec<Vec<Rational>> = f.support().iter().map(|p| to_rational_vec(p)).collect();
    let h = hull(&pts);
    let support = f.support();
    let vertices: Vec<Vec<i64>> = if h.dim == 0 {
        vec![support[0].clone()]
    } else {
        (0..pts.len())
            .filter(|&i| {
                let normals: Vec<Vec<Rational>> = h
                    .facets
                    .iter()
                    .filter(|fc| fc.members.contains(&i))
                    .map(|fc| bigint_to_rational_vec(&fc.normal))
                    .collect();
                !normals.is_empty() && rank(&normals) == h.dim
            })
            .map(|i| support[i].clone())
            .collect()
    };
    let mut facets: Vec<Facet> =
        h.facets.iter().map(|fc| Facet { normal: fc.normal.clone(), offset: fc.offset.to_integer() }).collect();
    facets.sort();
    let mut equations: Vec<Facet> = h
        .equations
        .iter()
        .map(|e| {
            let normal = primitive(e);
            let offset = dot(&bigint_to_rational_vec(&normal), &pts[0]).to_integer();
            Facet { normal, offset }
        })
        .collect();
    equations.sort();
    NewtonPolytope { n: f.n(), dim: h.dim, vertices, facets, equations }
}

/// Lattice coordinates on the affine hull of a support.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Frame {
    origin: Vec<Rational>,
    basis: Vec<Vec<Rational>>,
}

impl Frame {
    fn new(points: &[Vec<Rational>]) -> Self {
        let n = points[0].len();
        let dim = affine_dim(points);
        if dim == n {
            return Frame { origin: vec![Rational::zero(); n], basis: crate::polyhedron::unit_basis(n) };
        }
        let dirs = diffs(&points[1..], &points[0]);
        let basis: Vec<Vec<Rational>> = if dim == 0 {
            Vec::new()
        } else {
            saturated_basis(&dirs, n).iter().map(|b| bigint_to_rational_vec(b)).collect()
        };
        Frame { origin: points[0].clone(), basis }
    }

    fn coords(&self, p: &[Rational]) -> Vec<Rational> {
        if self.basis.is_empty() {
            return Vec::new();
        }
        let n = p.len();
        let a: Vec<Vec<Rational>> = (0..n).map(|i| self.basis.iter().map(|b| b[i].clone()).collect()).collect();
        let rhs: Vec<Rational> = p.iter().zip(&self.origin).map(|(x, o)| x - o).collect();
        solve_unique(&a, &rhs).expect("point lies in the affine hull")
    }
}

/// Maximal cells of the regular subdivision induced by the lifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularSubdivision {
    pub n: usize,
    pub dim: usize,
    pub points: Vec<Vec<i64>>,
    pub lifts: Vec<Rational>,
    /// Each cell lists indices into `points`, ascending; cells in lexicographic order.
    pub cells: Vec<Vec<usize>>,
    /// Per cell, `(slope, intercept)` of the lifting hyperplane in lattice coordinates of the hull.
    pub heights: Vec<(Vec<Rational>, Rational)>,
    frame_coords: Vec<Vec<Rational>>,
}

impl RegularSubdivision {
    /// `v(j) − h_C(j)`: zero on the cell, positive off it.
    pub fn lift_residual(&self, cell: usize, point: usize) -> Rational {
        let (w, w0) = &self.heights[cell];
        &self.lifts[point] - dot(w, &self.frame_coords[point]) - w0
    }

    /// Normalized lattice volume of a cell that is a simplex; `None` otherwise.
    pub fn simplex_volume(&self, cell: usize) -> Option<BigInt> {
        let c = &self.cells[cell];
        if c.len() != self.dim + 1 {
            return None;
        }
        let base = &self.frame_coords[c[0]];
        let m: Vec<Vec<Rational>> =
            c[1..].iter().map(|&i| self.frame_coords[i].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        if m.is_empty() {
            return Some(BigInt::from(1));
        }
        Some(crate::linalg::det(&m).abs().to_integer())
    }
}

/// Simplices of a pulling triangulation of `conv(points[idx])`.
fn triangulate(points: &[Vec<Rational>], idx: &[usize]) -> Vec<Vec<usize>> {
    let sub: Vec<Vec<Rational>> = idx.iter().map(|&i| points[i].clone()).collect();
    if affine_dim(&sub) == 0 {
        return vec![vec![idx[0]]];
    }
    let apex = idx[0];
    let mut out = Vec::new();
    for fc in hull(&sub).facets {
        let face: Vec<usize> = fc.members.iter().map(|&m| idx[m]).collect();
        if face.iter().any(|&i| points[i] == points[apex]) {
            continue;
        }
        for mut t in triangulate(points, &face) {
            t.insert(0, apex);
            out.push(t);
        }
    }
    out
}

/// Volume of `conv(points)` normalized so that unimodular simplices of the
/// saturated lattice in its affine hull have volume 1; a point has volume 1.
pub fn lattice_volume(points: &[Vec<Rational>]) -> Rational {
    if points.is_empty() {
        return Rational::zero();
    }
    let frame = Frame::new(points);
    let coords: Vec<Vec<Rational>> = points.iter().map(|p| frame.coords(p)).collect();
    if frame.basis.is_empty() {
        return Rational::from_integer(1.into());
    }
    let idx: Vec<usize> = (0..points.len()).collect();
    triangulate(points, &idx)
        .iter()
        .map(|t| {
            let base = &coords[t[0]];
            let m: Vec<Vec<Rational>> =
                t[1..].iter().map(|&i| coords[i].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
            crate::linalg::det(&m).abs()
        })
        .sum()
}

pub fn lower_hull_subdivision(f: &LiftedLaurentPolynomial) -> RegularSubdivision {
    let points = f.support();
    let lifts = f.lifts();
    let pts: Vec<Vec<Rational>> = points.iter().map(|p| to_rational_vec(p)).collect();
    let frame = Frame::new(&pts);
    let coords: Vec<Vec<Rational>> = pts.iter().map(|p| frame.coords(p)).collect();
    let d = frame.basis.len();
    let mut found: Vec<(Vec<usize>, Vec<Rational>, Rational)> = Vec::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for subset in combinations(points.len(), d + 1) {
        let a: Vec<Vec<Rational>> = subset
            .iter()
            .map(|&i| {
                let mut r = coords[i].clone();
                r.push(Rational::from_integer(1.into()));
                r
            })
            .collect();
        let b: Vec<Rational> = subset.iter().map(|&i| lifts[i].clone()).collect();
        let Some(sol) = solve_unique(&a, &b) else { continue };
        let (w, w0) = (sol[..d].to_vec(), sol[d].clone());
        let res: Vec<Rational> = (0..points.len()).map(|i| &lifts[i] - dot(&w, &coords[i]) - &w0).collect();
        if res.iter().any(|r| r.is_negative()) {
            continue;
        }
        let cell: Vec<usize> = (0..points.len()).filter(|&i| res[i].is_zero()).collect();
        if seen.insert(cell.clone()) {
            found.push((cell, w, w0));
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    let (cells, heights) = found.into_iter().map(|(c, w, w0)| (c, (w, w0))).unzip();
    RegularSubdivision { n: f.n(), dim: d, points, lifts, cells, heights, frame_coords: coords }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Index of the first offending cell or face.
    pub offending: Option<usize>,
    pub reason: Option<String>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict { holds: true, offending: None, reason: None }
    }

    fn fail(i: usize, reason: String) -> Self {
        Verdict { holds: false, offending: Some(i), reason: Some(reason) }
    }
}

pub fn is_unimodular_triangulation(s: &RegularSubdivision) -> Verdict {
    for i in 0..s.cells.len() {
        match s.simplex_volume(i) {
            None => return Verdict::fail(i, format!("cell {:?} is not a simplex", s.cells[i])),
            Some(v) if v != BigInt::from(1) => {
                return Verdict::fail(i, format!("cell {:?} has normalized volume {v}", s.cells[i]))
            }
            _ => {}
        }
    }
    Verdict::pass()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualFace {
    pub dim: usize,
    /// The dual subdivision cell (indices into `DualComplex::points`).
    pub cell: Vec<usize>,
    /// Indices into `DualComplex::vertices`.
    pub vertices: Vec<usize>,
    /// Primitive directions of the unbounded part.
    pub rays: Vec<Vec<BigInt>>,
    /// Lattice length of the dual edge; set on top-dimensional faces only.
    pub weight: Option<BigInt>,
}

impl DualFace {
    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualComplex {
    pub n: usize,
    pub points: Vec<Vec<i64>>,
    /// One vertex per maximal cell, in subdivision cell order.
    pub vertices: Vec<Vec<Rational>>,
    /// Faces sorted by dimension, then by dual cell.
    pub faces: Vec<DualFace>,
}

impl DualComplex {
    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = (usize, &DualFace)> {
        self.faces.iter().enumerate().filter(move |(_, f)| f.dim == k)
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

/// All faces of dimension ≥ 1 of `conv(points[idx])`, as sorted index sets.
fn positive_dim_faces(points: &[Vec<Rational>], idx: &[usize], out: &mut BTreeSet<Vec<usize>>) {
    let sub: Vec<Vec<Rational>> = idx.iter().map(|&i| points[i].clone()).collect();
    if affine_dim(&sub) == 0 || !out.insert(idx.to_vec()) {
        return;
    }
    for fc in hull(&sub).facets {
        let face: Vec<usize> = fc.members.iter().map(|&m| idx[m]).collect();
        positive_dim_faces(points, &face, out);
    }
}

fn lattice_length(a: &[i64], b: &[i64]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |g, (x, y)| g.gcd(&BigInt::from(y - x)))
}

pub fn dual_complex(f: &LiftedLaurentPolynomial) -> Result<DualComplex, LatticeError> {
    let n = f.n();
    let s = lower_hull_subdivision(f);
    if s.points.len() == 1 {
        return Ok(DualComplex { n, points: s.points, vertices: Vec::new(), faces: Vec::new() });
    }
    if s.dim < n {
        return Err(LatticeError::DegenerateDual(format!(
            "support spans a {}-dimensional hull in dimension {n}",
            s.dim
        )));
    }
    let pts: Vec<Vec<Rational>> = s.points.iter().map(|p| to_rational_vec(p)).collect();
    let vertices: Vec<Vec<Rational>> = s.heights.iter().map(|(w, _)| w.iter().map(|x| -x).collect()).collect();
    let delta = hull(&pts);

    let mut cells: BTreeSet<Vec<usize>> = BTreeSet::new();
    for c in &s.cells {
        positive_dim_faces(&pts, c, &mut cells);
    }
    let mut faces: Vec<DualFace> = cells
        .into_iter()
        .map(|cell| {
            let k = affine_dim(&cell.iter().map(|&i| pts[i].clone()).collect::<Vec<_>>());
            let verts: Vec<usize> =
                (0..s.cells.len()).filter(|&m| cell.iter().all(|i| s.cells[m].contains(i))).collect();
            let mut rays: Vec<Vec<BigInt>> = delta
                .facets
                .iter()
                .filter(|fc| cell.iter().all(|i| fc.members.contains(i)))
                .map(|fc| fc.normal.clone())
                .collect();
            rays.sort();
            let weight = (k == 1).then(|| {
                let ends: Vec<&Vec<i64>> = cell.iter().map(|&i| &s.points[i]).collect();
                let lo = ends.iter().min().expect("edge has points");
                let hi = ends.iter().max().expect("edge has points");
                lattice_length(lo, hi)
            });
            DualFace { dim: n - k, cell, vertices: verts, rays, weight }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.cell).cmp(&(b.dim, &b.cell)));
    Ok(DualComplex { n, points: s.points, vertices, faces })
}

/// Weighted primitive directions around every codimension-one face sum to zero.
pub fn check_balancing(p: &DualComplex) -> Result<Verdict, LatticeError> {
    let n = p.n;
    if n > 3 {
        return Err(LatticeError::DimensionUnsupported(n));
    }
    if n < 2 {
        return Ok(Verdict::pass());
    }
    for (fi, face) in p.faces_of_dim(n - 2) {
        let pts: Vec<Vec<Rational>> = face.cell.iter().map(|&i| to_rational_vec(&p.points[i])).collect();
        let lattice: Vec<Vec<Rational>> =
            saturated_basis(&diffs(&pts[1..], &pts[0]), n).iter().map(|b| bigint_to_rational_vec(b)).collect();
        let mut total = vec![BigInt::zero(); lattice.len()];
        for (_, edge) in p.faces_of_dim(n - 1) {
            if !edge.cell.iter().all(|i| face.cell.contains(i)) {
                continue;
            }
            let dir: Vec<Rational> = if let Some(&v) = edge.vertices.iter().find(|v| !face.vertices.contains(v)) {
                let w = face.vertices[0];
                p.vertices[v].iter().zip(&p.vertices[w]).map(|(a, b)| a - b).collect()
            } else if let Some(r) = edge.rays.iter().find(|r| !face.rays.contains(r)) {
                bigint_to_rational_vec(r)
            } else {
                return Ok(Verdict::fail(fi, format!("adjacent face dual to {:?} has no direction", edge.cell)));
            };
            let phi: Vec<Rational> = lattice.iter().map(|b| dot(&dir, b)).collect();
            let weight = edge.weight.clone().unwrap_or_default();
            for (t, c) in total.iter_mut().zip(primitive(&phi)) {
                *t += &weight * c;
            }
        }
        if total.iter().any(|x| !x.is_zero()) {
            return Ok(Verdict::fail(fi, format!("weighted sum {total:?} at face dual to {:?}", face.cell)));
        }
    }
    Ok(Verdict::pass())
}
