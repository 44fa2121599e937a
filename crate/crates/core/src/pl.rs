//! Min-plus piecewise-linear functions, corner loci and integer PL maps.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::PlError;
use crate::field::Rational;
use crate::lattice::LiftedLaurentPolynomial;
use crate::linalg::{det_int, dot, to_rational_vec};
use crate::polyhedron::{Constraint, Polyhedron, VRep};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffinePiece {
    pub linear: Vec<i64>,
    pub constant: Rational,
}

impl AffinePiece {
    pub fn eval(&self, y: &[Rational]) -> Rational {
        dot(&to_rational_vec(&self.linear), y) + &self.constant
    }
}

/// `ℓ(y) = min_i (⟨a_i, y⟩ + c_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlFunction {
    n: usize,
    pieces: Vec<AffinePiece>,
}

impl PlFunction {
    pub fn new(n: usize, pieces: Vec<AffinePiece>) -> Result<Self, PlError> {
        if pieces.is_empty() {
            return Err(PlError::Invalid("at least one affine piece required".into()));
        }
        if let Some(p) = pieces.iter().find(|p| p.linear.len() != n) {
            return Err(PlError::DimensionMismatch { expected: n, found: p.linear.len() });
        }
        for (i, p) in pieces.iter().enumerate() {
            if pieces[..i].contains(p) {
                return Err(PlError::Invalid(format!("repeated piece {:?}", p.linear)));
            }
        }
        Ok(PlFunction { n, pieces })
    }

    pub fn from_ints(n: usize, pieces: &[(&[i64], Rational)]) -> Result<Self, PlError> {
        Self::new(n, pieces.iter().map(|(a, c)| AffinePiece { linear: a.to_vec(), constant: c.clone() }).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    /// Same function with only the pieces that are minimal on a full-dimensional region, sorted.
    pub fn reduced(&self) -> PlFunction {
        let mut pieces: Vec<AffinePiece> = Vec::new();
        let mut sorted = self.pieces.clone();
        sorted.sort();
        // equal slopes: only the smallest constant can matter
        for p in sorted {
            if pieces.last().is_none_or(|q: &AffinePiece| q.linear != p.linear) {
                pieces.push(p);
            }
        }
        let keep: Vec<AffinePiece> = (0..pieces.len())
            .filter(|&i| {
                let region = dominance_region(self.n, &pieces, &[i]);
                region.vrep().is_some_and(|v| v.dimension() == self.n)
            })
            .map(|i| pieces[i].clone())
            .collect();
        PlFunction { n: self.n, pieces: keep }
    }

    /// Equality as functions on ℚⁿ.
    pub fn same_function(&self, other: &PlFunction) -> bool {
        self.n == other.n && self.reduced() == other.reduced()
    }
}

pub fn tropicalize(f: &LiftedLaurentPolynomial) -> PlFunction {
    let pieces = f.terms().iter().map(|t| AffinePiece { linear: t.exp.clone(), constant: t.lift.clone() }).collect();
    PlFunction { n: f.n(), pieces }
}

/// Exact minimum and the full set of minimizing piece indices.
pub fn eval_pl(l: &PlFunction, y: &[Rational]) -> Result<(Rational, Vec<usize>), PlError> {
    if y.len() != l.n {
        return Err(PlError::DimensionMismatch { expected: l.n, found: y.len() });
    }
    let vals: Vec<Rational> = l.pieces.iter().map(|p| p.eval(y)).collect();
    let min = vals.iter().min().expect("nonempty").clone();
    let arg = (0..vals.len()).filter(|&i| vals[i] == min).collect();
    Ok((min, arg))
}

pub fn on_corner_locus(l: &PlFunction, y: &[Rational]) -> Result<bool, PlError> {
    Ok(eval_pl(l, y)?.1.len() >= 2)
}

/// `{y : pieces in S tie and are ≤ all others}`.
fn dominance_region(n: usize, pieces: &[AffinePiece], s: &[usize]) -> Polyhedron {
    let a0 = to_rational_vec(&pieces[s[0]].linear);
    let c0 = &pieces[s[0]].constant;
    let row = |k: usize| {
        let ak = to_rational_vec(&pieces[k].linear);
        Constraint::new(ak.iter().zip(&a0).map(|(x, y)| x - y).collect(), c0 - &pieces[k].constant)
    };
    let mut p = Polyhedron::new(n);
    p.equalities = s[1..].iter().map(|&k| row(k)).collect();
    p.inequalities = (0..pieces.len()).filter(|k| !s.contains(k)).map(row).collect();
    p
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerPiece {
    /// Pieces attaining the minimum throughout the relative interior.
    pub indices: Vec<usize>,
    pub region: Polyhedron,
    pub vrep: VRep,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerLocus {
    pub n: usize,
    pub pieces: Vec<CornerPiece>,
}

impl CornerLocus {
    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, y: &[Rational]) -> bool {
        self.pieces.iter().any(|p| p.region.contains(y))
    }
}

/// Stratified corner locus, enumerating achieving index sets; intended for n ≤ 3.
pub fn corner_locus(l: &PlFunction) -> CornerLocus {
    let m = l.pieces.len();
    let mut pieces = Vec::new();
    // regions shrink as the index set grows, so only extend sets with nonempty regions
    let mut frontier: BTreeSet<Vec<usize>> = (0..m).map(|i| vec![i]).collect();
    while !frontier.is_empty() {
        let mut next = BTreeSet::new();
        for s in &frontier {
            for j in s[s.len() - 1] + 1..m {
                let mut t = s.clone();
                t.push(j);
                let faces_alive = (0..s.len()).all(|k| {
                    let mut u = t.clone();
                    u.remove(k);
                    frontier.contains(&u)
                });
                if !faces_alive {
                    continue;
                }
                let region = dominance_region(l.n, &l.pieces, &t);
                let Some(vrep) = region.vrep() else { continue };
                let y = vrep.relative_interior_point().expect("nonempty");
                let (_, arg) = eval_pl(l, &y).expect("dimension checked");
                if arg == t {
                    pieces.push(CornerPiece { indices: t.clone(), region, vrep });
                }
                next.insert(t);
            }
        }
        frontier = next;
    }
    pieces.sort_by(|a, b| a.indices.cmp(&b.indices));
    CornerLocus { n: l.n, pieces }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlMapCell {
    pub region: Polyhedron,
    /// `m × n` integer linear part.
    pub matrix: Vec<Vec<i64>>,
    pub shift: Vec<Rational>,
}

impl PlMapCell {
    pub fn apply(&self, y: &[Rational]) -> Vec<Rational> {
        self.matrix.iter().zip(&self.shift).map(|(row, b)| dot(&to_rational_vec(row), y) + b).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlMap {
    pub source_dim: usize,
    pub target_dim: usize,
    pub cells: Vec<PlMapCell>,
}

impl PlMap {
    pub fn new(source_dim: usize, target_dim: usize, cells: Vec<PlMapCell>) -> Result<Self, PlError> {
        if cells.is_empty() {
            return Err(PlError::Invalid("a PL map needs at least one cell".into()));
        }
        for c in &cells {
            if c.matrix.len() != target_dim || c.shift.len() != target_dim {
                return Err(PlError::DimensionMismatch { expected: target_dim, found: c.matrix.len() });
            }
            if let Some(r) = c.matrix.iter().find(|r| r.len() != source_dim) {
                return Err(PlError::DimensionMismatch { expected: source_dim, found: r.len() });
            }
            if c.region.dim != source_dim {
                return Err(PlError::DimensionMismatch { expected: source_dim, found: c.region.dim });
            }
        }
        Ok(PlMap { source_dim, target_dim, cells })
    }

    pub fn identity(n: usize) -> Self {
        let a = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        tropicalize_monomial_map(a, vec![Rational::zero(); n]).expect("square identity")
    }

    pub fn is_single_cell(&self) -> bool {
        self.cells.len() == 1
    }

    pub fn apply(&self, y: &[Rational]) -> Option<Vec<Rational>> {
        self.cells.iter().find(|c| c.region.contains(y)).map(|c| c.apply(y))
    }

    /// `self ∘ other` for single-cell maps.
    pub fn compose(&self, other: &PlMap) -> Result<PlMap, PlError> {
        if other.target_dim != self.source_dim {
            return Err(PlError::DimensionMismatch { expected: self.source_dim, found: other.target_dim });
        }
        if !self.is_single_cell() || !other.is_single_cell() {
            return Err(PlError::Invalid("composition is implemented for single-cell maps".into()));
        }
        let (a, b) = (&self.cells[0], &other.cells[0]);
        let matrix: Vec<Vec<i64>> = a
            .matrix
            .iter()
            .map(|row| (0..other.source_dim).map(|j| row.iter().zip(&b.matrix).map(|(x, brow)| x * brow[j]).sum()).collect())
            .collect();
        let shift = a.apply(&b.shift);
        tropicalize_monomial_map(matrix, shift)
    }
}

/// `y ↦ A y + b`, the tropicalization of `x ↦ c · x^A`.
pub fn tropicalize_monomial_map(a: Vec<Vec<i64>>, b: Vec<Rational>) -> Result<PlMap, PlError> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    PlMap::new(n, m, vec![PlMapCell { region: Polyhedron::new(n), matrix: a, shift: b }])
}

/// `Φ*ℓ = ℓ ∘ Φ`; must be one PL function on every cell.
pub fn pullback_pl(phi: &PlMap, l: &PlFunction) -> Result<PlFunction, PlError> {
    if l.n != phi.target_dim {
        return Err(PlError::DimensionMismatch { expected: phi.target_dim, found: l.n });
    }
    let mut result: Option<PlFunction> = None;
    for cell in &phi.cells {
        let mut pieces: Vec<AffinePiece> = l
            .pieces
            .iter()
            .map(|p| AffinePiece {
                linear: (0..phi.source_dim).map(|j| p.linear.iter().zip(&cell.matrix).map(|(a, row)| a * row[j]).sum()).collect(),
                constant: &p.constant + dot(&to_rational_vec(&p.linear), &cell.shift),
            })
            .collect();
        pieces.sort();
        pieces.dedup_by(|x, y| x.linear == y.linear);
        let f = PlFunction { n: phi.source_dim, pieces };
        match &result {
            None => result = Some(f),
            Some(g) if g.same_function(&f) => {}
            Some(_) => return Err(PlError::NonGlobalPullback),
        }
    }
    let f = result.expect("at least one cell");
    Ok(if phi.is_single_cell() { f } else { f.reduced() })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DilationFactor(pub BigInt);

impl DilationFactor {
    pub fn as_rational(&self) -> Rational {
        Rational::from_integer(self.0.clone())
    }
}

pub fn dilation_factor(phi: &PlMap) -> Result<DilationFactor, PlError> {
    if phi.source_dim != phi.target_dim {
        return Err(PlError::DimensionMismatch { expected: phi.source_dim, found: phi.target_dim });
    }
    let mut delta: Option<BigInt> = None;
    for (i, cell) in phi.cells.iter().enumerate() {
        let d = det_int(&cell.matrix).abs();
        if d.is_zero() {
            return Err(PlError::NotMeasureScaling(format!("linear part is singular on cell {i}")));
        }
        match &delta {
            None => delta = Some(d),
            Some(prev) if *prev == d => {}
            Some(prev) => {
                return Err(PlError::NotMeasureScaling(format!("|det| is {prev} on cell 0 but {d} on cell {i}")))
            }
        }
    }
    Ok(DilationFactor(delta.expect("at least one cell")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, qi};

    fn line() -> PlFunction {
        PlFunction::from_ints(2, &[(&[0, 0], qi(0)), (&[1, 0], qi(0)), (&[0, 1], qi(0))]).unwrap()
    }

    fn pt(v: &[i64]) -> Vec<Rational> {
        to_rational_vec(v)
    }

    #[test]
    fn evaluation_reports_all_minimizers() {
        let l = line();
        assert_eq!(eval_pl(&l, &pt(&[2, 3])).unwrap(), (qi(0), vec![0]));
        assert_eq!(eval_pl(&l, &pt(&[0, 0])).unwrap(), (qi(0), vec![0, 1, 2]));
        assert_eq!(eval_pl(&l, &pt(&[-1, -1])).unwrap(), (qi(-1), vec![1, 2]));
        assert!(eval_pl(&l, &pt(&[1])).is_err());
    }

    #[test]
    fn tropical_line_corner_locus() {
        let c = corner_locus(&line());
        assert_eq!(c.pieces.len(), 4);
        let vertex = c.pieces.iter().find(|p| p.indices == vec![0, 1, 2]).unwrap();
        assert_eq!(vertex.vrep.vertices, vec![pt(&[0, 0])]);
        let rays: Vec<Vec<Rational>> = c.pieces.iter().filter(|p| p.indices.len() == 2).flat_map(|p| p.vrep.rays.clone()).collect();
        for r in [[1, 0], [0, 1], [-1, -1]] {
            assert!(rays.contains(&pt(&r)));
        }
        assert!(c.contains(&pt(&[5, 0])));
        assert!(!c.contains(&pt(&[1, 1])));
    }

    #[test]
    fn degenerate_corner_loci() {
        let single = PlFunction::from_ints(2, &[(&[1, 2], qi(0))]).unwrap();
        assert!(corner_locus(&single).is_empty());
        let dominated = PlFunction::from_ints(2, &[(&[1, 0], qi(0)), (&[1, 0], qi(1))]).unwrap();
        assert!(corner_locus(&dominated).is_empty());
        assert_eq!(dominated.reduced().pieces().len(), 1);
    }

    #[test]
    fn reduction_drops_redundant_pieces() {
        // y + 1 ≥ min(0, 2y) everywhere
        let l = PlFunction::from_ints(1, &[(&[0], qi(0)), (&[2], qi(0)), (&[1], qi(1))]).unwrap();
        let r = PlFunction::from_ints(1, &[(&[0], qi(0)), (&[2], qi(0))]).unwrap();
        assert!(l.same_function(&r));
        assert!(!l.same_function(&line()));
    }

    #[test]
    fn rejects_bad_pl_data() {
        assert!(PlFunction::new(2, vec![]).is_err());
        assert!(PlFunction::from_ints(2, &[(&[1], qi(0))]).is_err());
        assert!(PlFunction::from_ints(1, &[(&[1], qi(0)), (&[1], qi(0))]).is_err());
    }

    #[test]
    fn pullbacks() {
        let two = tropicalize_monomial_map(vec![vec![2, 0], vec![0, 2]], vec![qi(0), qi(0)]).unwrap();
        let expected = PlFunction::from_ints(2, &[(&[0, 0], qi(0)), (&[0, 2], qi(0)), (&[2, 0], qi(0))]).unwrap();
        assert!(pullback_pl(&two, &line()).unwrap().same_function(&expected));
        assert!(pullback_pl(&PlMap::identity(2), &line()).unwrap().same_function(&line()));
        let shear = tropicalize_monomial_map(vec![vec![1, 1], vec![0, 1]], vec![qi(0), qi(0)]).unwrap();
        let l = PlFunction::from_ints(2, &[(&[1, 0], qi(0)), (&[0, 1], qi(0))]).unwrap();
        let expected = PlFunction::from_ints(2, &[(&[1, 1], qi(0)), (&[0, 1], qi(0))]).unwrap();
        assert!(pullback_pl(&shear, &l).unwrap().same_function(&expected));
    }

    #[test]
    fn shifts_enter_constants() {
        let phi = tropicalize_monomial_map(vec![vec![1]], vec![q(1, 2)]).unwrap();
        let l = PlFunction::from_ints(1, &[(&[0], qi(0)), (&[3], qi(1))]).unwrap();
        let p = pullback_pl(&phi, &l).unwrap();
        let y = vec![q(-2, 3)];
        assert_eq!(eval_pl(&p, &y).unwrap().0, eval_pl(&l, &phi.apply(&y).unwrap()).unwrap().0);
    }

    fn two_cell_map(second: i64) -> PlMap {
        let mut left = Polyhedron::new(2);
        left.inequalities.push(Constraint::new(pt(&[-1, 0]), qi(0)));
        let mut right = Polyhedron::new(2);
        right.inequalities.push(Constraint::new(pt(&[1, 0]), qi(0)));
        PlMap::new(
            2,
            2,
            vec![
                PlMapCell { region: left, matrix: vec![vec![1, 0], vec![0, 1]], shift: vec![qi(0), qi(0)] },
                PlMapCell { region: right, matrix: vec![vec![second, 0], vec![0, 1]], shift: vec![qi(0), qi(0)] },
            ],
        )
        .unwrap()
    }

    #[test]
    fn dilation_factors() {
        let frob = tropicalize_monomial_map((0..3).map(|i| (0..3).map(|j| if i == j { 2 } else { 0 }).collect()).collect(), vec![qi(0); 3]).unwrap();
        assert_eq!(dilation_factor(&frob).unwrap(), DilationFactor(BigInt::from(8)));
        assert_eq!(dilation_factor(&PlMap::identity(4)).unwrap(), DilationFactor(BigInt::from(1)));
        let shear = tropicalize_monomial_map(vec![vec![1, 1], vec![0, 1]], vec![qi(0), qi(0)]).unwrap();
        assert_eq!(dilation_factor(&shear).unwrap().0, BigInt::from(1));
        assert!(matches!(dilation_factor(&two_cell_map(2)), Err(PlError::NotMeasureScaling(_))));
        assert_eq!(dilation_factor(&two_cell_map(-1)).unwrap().0, BigInt::from(1));
        let singular = tropicalize_monomial_map(vec![vec![1, 1], vec![1, 1]], vec![qi(0), qi(0)]).unwrap();
        assert!(matches!(dilation_factor(&singular), Err(PlError::NotMeasureScaling(_))));
        let proj = tropicalize_monomial_map(vec![vec![1, 0]], vec![qi(0)]).unwrap();
        assert!(matches!(dilation_factor(&proj), Err(PlError::DimensionMismatch { .. })));
    }

    #[test]
    fn multi_cell_pullback_must_agree() {
        // on the two halves the map differs, so min(y1, 0) pulls back differently
        let l = PlFunction::from_ints(2, &[(&[1, 0], qi(0)), (&[0, 0], qi(0))]).unwrap();
        assert!(matches!(pullback_pl(&two_cell_map(2), &l), Err(PlError::NonGlobalPullback)));
        // constant in the first coordinate: both cells agree
        let l = PlFunction::from_ints(2, &[(&[0, 1], qi(0)), (&[0, 0], qi(0))]).unwrap();
        assert!(pullback_pl(&two_cell_map(2), &l).unwrap().same_function(&l));
    }
}
