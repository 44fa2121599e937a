//! Local orders of vanishing, atomic and Lebesgue measures, and their transport along PL maps.

use num_traits::{One, Signed, Zero};

use crate::error::MeasureError;
use crate::field::{fmt_rational, Rational};
use crate::lattice::{lattice_volume, DualComplex};
use crate::linalg::{bigint_to_rational_vec, det_int, primitive, rank, solve_unique, to_rational_vec};
use crate::pl::{eval_pl, PlFunction, PlMap, PlMapCell};
use crate::poly::Polynomial;

/// A hypersurface `f = 0` through the origin, smooth in the coordinate `solve_for`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalChart {
    n: usize,
    f: Polynomial,
    solve_for: usize,
    truncation: Option<u32>,
}

impl LocalChart {
    pub fn new(f: Polynomial, solve_for: usize, truncation: Option<u32>) -> Result<Self, MeasureError> {
        let n = f.nvars();
        if solve_for >= n {
            return Err(MeasureError::Invalid(format!("solve_for = {solve_for} but n = {n}")));
        }
        if truncation == Some(0) {
            return Err(MeasureError::Invalid("truncation degree must be at least 1".into()));
        }
        if !f.coeff(&vec![0; n]).is_zero() {
            return Err(MeasureError::Invalid("f does not vanish at the origin".into()));
        }
        let mut e = vec![0; n];
        e[solve_for] = 1;
        if f.coeff(&e).is_zero() {
            return Err(MeasureError::NotSmoothPoint(format!("df/dx{solve_for} vanishes at the origin")));
        }
        Ok(LocalChart { n, f, solve_for, truncation })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn solve_for(&self) -> usize {
        self.solve_for
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    /// Explicit truncation, or `2 · deg g · deg f`.
    pub fn truncation_for(&self, g: &Polynomial) -> u32 {
        self.truncation.unwrap_or_else(|| {
            let dg = g.total_degree().unwrap_or(0).max(1);
            let df = self.f.total_degree().unwrap_or(1).max(1);
            2 * dg * df
        })
    }

    /// The implicit solution `w = φ(z)` of `f(z, w) = 0`, truncated at degree `d`.
    pub fn implicit_solution(&self, d: u32) -> Polynomial {
        let w = self.solve_for;
        let mut e = vec![0; self.n];
        e[w] = 1;
        let c = self.f.coeff(&e);
        let rest = &self.f - &Polynomial::monomial(e, c.clone());
        let scale = -c.inv().expect("nonzero by construction");
        let mut phi = Polynomial::zero(self.n);
        // pass k makes φ exact through degree k, so it only needs terms up to k
        for k in 1..=d {
            phi = rest.substitute(w, &phi, Some(k)).scale(&scale);
        }
        phi
    }
}

/// `g(z, φ(z))` truncated at total degree `d`.
pub fn restrict_to_hypersurface(chart: &LocalChart, g: &Polynomial, d: u32) -> Result<Polynomial, MeasureError> {
    Ok(restrict_all(chart, std::slice::from_ref(g), d)?.remove(0))
}

/// [`restrict_to_hypersurface`] for several polynomials, sharing one implicit solve.
pub fn restrict_all(chart: &LocalChart, gs: &[Polynomial], d: u32) -> Result<Vec<Polynomial>, MeasureError> {
    if let Some(g) = gs.iter().find(|g| g.nvars() != chart.n) {
        return Err(MeasureError::Invalid(format!("g has {} variables, chart has {}", g.nvars(), chart.n)));
    }
    if d == 0 {
        return Err(MeasureError::Invalid("truncation degree must be at least 1".into()));
    }
    let phi = chart.implicit_solution(d);
    Ok(gs.iter().map(|g| g.substitute(chart.solve_for, &phi, Some(d))).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Determined(u32),
    /// Vanishes to order greater than the truncation degree.
    Undetermined(u32),
}

impl Order {
    pub fn determined(self) -> Result<u32, MeasureError> {
        match self {
            Order::Determined(k) => Ok(k),
            Order::Undetermined(d) => Err(MeasureError::Undetermined(d)),
        }
    }
}

pub fn local_order(chart: &LocalChart, g: &Polynomial) -> Result<Order, MeasureError> {
    let d = chart.truncation_for(g);
    let r = restrict_to_hypersurface(chart, g, d)?;
    Ok(match r.order() {
        Some(k) => Order::Determined(k),
        None => Order::Undetermined(d),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Atom {
    pub anchor: Vec<Rational>,
    pub mass: Rational,
}

/// A polyhedral cell `conv(vertices) + cone(rays)` carrying a constant density.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeightedCell {
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
    pub density: Rational,
}

impl WeightedCell {
    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    fn canonical(mut self) -> Self {
        self.vertices.sort();
        self.vertices.dedup();
        self.rays = self.rays.iter().map(|r| bigint_to_rational_vec(&primitive(r))).collect();
        self.rays.sort();
        self.rays.dedup();
        self
    }

    /// Affinely independent points spanning the cell.
    fn frame_simplex(&self) -> Vec<Vec<Rational>> {
        let v0 = &self.vertices[0];
        let mut chosen = vec![v0.clone()];
        let mut dirs: Vec<Vec<Rational>> = Vec::new();
        let candidates = self.vertices[1..]
            .iter()
            .cloned()
            .chain(self.rays.iter().map(|r| v0.iter().zip(r).map(|(a, b)| a + b).collect()));
        for p in candidates {
            let d: Vec<Rational> = p.iter().zip(v0).map(|(a, b)| a - b).collect();
            let mut trial = dirs.clone();
            trial.push(d);
            if rank(&trial) == trial.len() {
                dirs = trial;
                chosen.push(p);
            }
        }
        chosen
    }

    pub fn dimension(&self) -> usize {
        self.frame_simplex().len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexMeasure {
    Atomic(Vec<Atom>),
    Lebesgue(Vec<WeightedCell>),
}

impl ComplexMeasure {
    /// Sorted, with coincident atoms or cells merged and zero parts dropped.
    pub fn canonical(&self) -> ComplexMeasure {
        match self {
            ComplexMeasure::Atomic(atoms) => {
                let mut atoms = atoms.clone();
                atoms.sort();
                let mut out: Vec<Atom> = Vec::new();
                for a in atoms {
                    match out.last_mut() {
                        Some(last) if last.anchor == a.anchor => last.mass += a.mass,
                        _ => out.push(a),
                    }
                }
                out.retain(|a| !a.mass.is_zero());
                ComplexMeasure::Atomic(out)
            }
            ComplexMeasure::Lebesgue(cells) => {
                let mut cells: Vec<WeightedCell> = cells.iter().cloned().map(WeightedCell::canonical).collect();
                cells.sort_by(|a, b| (&a.vertices, &a.rays).cmp(&(&b.vertices, &b.rays)));
                let mut out: Vec<WeightedCell> = Vec::new();
                for c in cells {
                    match out.last_mut() {
                        Some(last) if last.vertices == c.vertices && last.rays == c.rays => last.density += c.density,
                        _ => out.push(c),
                    }
                }
                out.retain(|c| !c.density.is_zero());
                ComplexMeasure::Lebesgue(out)
            }
        }
    }

    pub fn same_measure(&self, other: &ComplexMeasure) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn scaled(&self, c: &Rational) -> ComplexMeasure {
        match self {
            ComplexMeasure::Atomic(atoms) => ComplexMeasure::Atomic(
                atoms.iter().map(|a| Atom { anchor: a.anchor.clone(), mass: &a.mass * c }).collect(),
            ),
            ComplexMeasure::Lebesgue(cells) => ComplexMeasure::Lebesgue(
                cells.iter().map(|x| WeightedCell { density: &x.density * c, ..x.clone() }).collect(),
            ),
        }
    }

    pub fn validate(&self) -> Result<(), MeasureError> {
        let neg = match self {
            ComplexMeasure::Atomic(atoms) => atoms.iter().any(|a| a.mass.is_negative()),
            ComplexMeasure::Lebesgue(cells) => {
                if cells.iter().any(|c| c.vertices.is_empty()) {
                    return Err(MeasureError::Invalid("cell without vertices".into()));
                }
                cells.iter().any(|c| c.density.is_negative())
            }
        };
        if neg {
            return Err(MeasureError::Invalid("negative mass or density".into()));
        }
        Ok(())
    }

    /// Density 1 on every top-dimensional face of the complex.
    pub fn euclidean_on(p: &DualComplex) -> ComplexMeasure {
        let top = p.n.saturating_sub(1);
        let cells = p
            .faces_of_dim(top)
            .map(|(_, f)| WeightedCell {
                vertices: f.vertices.iter().map(|&v| p.vertices[v].clone()).collect(),
                rays: f.rays.iter().map(|r| bigint_to_rational_vec(r)).collect(),
                density: Rational::one(),
            })
            .collect();
        ComplexMeasure::Lebesgue(cells)
    }
}

pub fn atomic_measure(
    anchor: &[Rational],
    l: &PlFunction,
    chart: &LocalChart,
    s: &Polynomial,
    n: u32,
) -> Result<ComplexMeasure, MeasureError> {
    if n == 0 {
        return Err(MeasureError::Invalid("N must be positive".into()));
    }
    let on_locus = eval_pl(l, anchor).map_err(|e| MeasureError::Invalid(e.to_string()))?.1.len() >= 2;
    if !on_locus {
        let shown: Vec<String> = anchor.iter().map(fmt_rational).collect();
        return Err(MeasureError::AnchorOffCornerLocus(format!("({})", shown.join(", "))));
    }
    let k = local_order(chart, s)?.determined()?;
    Ok(ComplexMeasure::Atomic(vec![Atom {
        anchor: anchor.to_vec(),
        mass: Rational::new(k.into(), n.into()),
    }]))
}

fn cell_of<'a>(phi: &'a PlMap, c: &WeightedCell) -> Option<&'a PlMapCell> {
    phi.cells.iter().find(|m| {
        c.vertices.iter().all(|v| m.region.contains(v))
            && c.rays.iter().all(|r| {
                let v0 = &c.vertices[0];
                let tip: Vec<Rational> = v0.iter().zip(r).map(|(a, b)| a + b).collect();
                m.region.contains(&tip)
            })
    })
}

fn linear_image(m: &PlMapCell, d: &[Rational]) -> Vec<Rational> {
    m.matrix.iter().map(|row| row.iter().zip(d).map(|(&a, x)| Rational::from_integer(a.into()) * x).sum()).collect()
}

fn image_cell(m: &PlMapCell, c: &WeightedCell) -> Result<WeightedCell, MeasureError> {
    let dirs: Vec<Vec<Rational>> = c
        .frame_simplex()
        .iter()
        .skip(1)
        .map(|p| p.iter().zip(&c.vertices[0]).map(|(a, b)| a - b).collect())
        .collect();
    let images: Vec<Vec<Rational>> = dirs.iter().map(|d| linear_image(m, d)).collect();
    if !dirs.is_empty() && rank(&images) != dirs.len() {
        return Err(MeasureError::NotCellwiseInjective(format!("{:?}", m.matrix)));
    }
    let src = c.frame_simplex();
    let dst: Vec<Vec<Rational>> = src.iter().map(|p| m.apply(p)).collect();
    let ratio = lattice_volume(&src) / lattice_volume(&dst);
    Ok(WeightedCell {
        vertices: c.vertices.iter().map(|v| m.apply(v)).collect(),
        rays: c.rays.iter().map(|r| linear_image(m, r)).collect(),
        density: &c.density * ratio,
    })
}

pub fn pushforward(phi: &PlMap, m: &ComplexMeasure) -> Result<ComplexMeasure, MeasureError> {
    let out = match m {
        ComplexMeasure::Atomic(atoms) => ComplexMeasure::Atomic(
            atoms
                .iter()
                .map(|a| {
                    let y = phi.apply(&a.anchor).ok_or_else(|| MeasureError::Invalid("atom outside the map's domain".into()))?;
                    Ok(Atom { anchor: y, mass: a.mass.clone() })
                })
                .collect::<Result<_, MeasureError>>()?,
        ),
        ComplexMeasure::Lebesgue(cells) => ComplexMeasure::Lebesgue(
            cells
                .iter()
                .map(|c| {
                    let cell = cell_of(phi, c).ok_or_else(|| {
                        MeasureError::NotCellwiseInjective("measure cell is not inside a single map cell".into())
                    })?;
                    image_cell(cell, c)
                })
                .collect::<Result<_, MeasureError>>()?,
        ),
    };
    Ok(out.canonical())
}

fn invertible_cells(phi: &PlMap) -> Result<Vec<(&PlMapCell, Rational)>, MeasureError> {
    if phi.source_dim != phi.target_dim {
        return Err(MeasureError::NotCellwiseInjective("map is not square".into()));
    }
    phi.cells
        .iter()
        .map(|c| {
            let d = det_int(&c.matrix).abs();
            if d.is_zero() {
                Err(MeasureError::NotCellwiseInjective(format!("singular linear part {:?}", c.matrix)))
            } else {
                Ok((c, Rational::from_integer(d)))
            }
        })
        .collect()
}

fn preimage_point(c: &PlMapCell, y: &[Rational]) -> Option<Vec<Rational>> {
    let a: Vec<Vec<Rational>> = c.matrix.iter().map(|r| to_rational_vec(r)).collect();
    let rhs: Vec<Rational> = y.iter().zip(&c.shift).map(|(a, b)| a - b).collect();
    solve_unique(&a, &rhs).filter(|x| c.region.contains(x))
}

fn pull(phi: &PlMap, m: &ComplexMeasure, covering: bool) -> Result<ComplexMeasure, MeasureError> {
    let cells = invertible_cells(phi)?;
    let out = match m {
        ComplexMeasure::Atomic(atoms) => {
            let mut out = Vec::new();
            for a in atoms {
                let (x, det) = cells
                    .iter()
                    .find_map(|(c, det)| preimage_point(c, &a.anchor).map(|x| (x, det)))
                    .ok_or_else(|| MeasureError::NoPreimage(format!("{:?}", a.anchor.iter().map(fmt_rational).collect::<Vec<_>>())))?;
                let mass = if covering { &a.mass * det } else { a.mass.clone() };
                out.push(Atom { anchor: x, mass });
            }
            ComplexMeasure::Atomic(out)
        }
        ComplexMeasure::Lebesgue(wcells) => {
            let mut out = Vec::new();
            for w in wcells {
                let found = cells.iter().find_map(|(c, det)| {
                    let verts: Option<Vec<Vec<Rational>>> = w.vertices.iter().map(|v| preimage_point(c, v)).collect();
                    let verts = verts?;
                    let a: Vec<Vec<Rational>> = c.matrix.iter().map(|r| to_rational_vec(r)).collect();
                    let rays: Option<Vec<Vec<Rational>>> = w.rays.iter().map(|r| solve_unique(&a, r)).collect();
                    let pre = WeightedCell { vertices: verts, rays: rays?, density: w.density.clone() };
                    cell_of(phi, &pre).is_some().then_some((c, pre, det))
                });
                let (c, pre, det) = found.ok_or_else(|| MeasureError::NoPreimage("cell outside the image".into()))?;
                let src = pre.frame_simplex();
                let dst: Vec<Vec<Rational>> = src.iter().map(|p| c.apply(p)).collect();
                let ratio = lattice_volume(&dst) / lattice_volume(&src);
                let density = &w.density * ratio * if covering { det.clone() } else { Rational::one() };
                out.push(WeightedCell { density, ..pre });
            }
            ComplexMeasure::Lebesgue(out)
        }
    };
    Ok(out.canonical())
}

/// Pullback along the degree-`|det A|` covering: total mass is multiplied by `δ`,
/// so that `pushforward(Φ, pullback_measure(Φ, m)) = δ · m`.
pub fn pullback_measure(phi: &PlMap, m: &ComplexMeasure) -> Result<ComplexMeasure, MeasureError> {
    pull(phi, m, true)
}

/// Pullback of the density as a top form: density times `|det A|` on the preimage cell.
pub fn form_pullback(phi: &PlMap, m: &ComplexMeasure) -> Result<ComplexMeasure, MeasureError> {
    pull(phi, m, false)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MassReport {
    pub total: Rational,
    /// Per atom or cell; `None` for unbounded cells, which are excluded from the total.
    pub parts: Vec<Option<Rational>>,
    pub unbounded_support: bool,
}

pub fn total_mass(m: &ComplexMeasure) -> MassReport {
    let parts: Vec<Option<Rational>> = match m {
        ComplexMeasure::Atomic(atoms) => atoms.iter().map(|a| Some(a.mass.clone())).collect(),
        ComplexMeasure::Lebesgue(cells) => cells
            .iter()
            .map(|c| c.is_bounded().then(|| &c.density * lattice_volume(&c.vertices)))
            .collect(),
    };
    let total = parts.iter().flatten().sum();
    let unbounded_support = parts.iter().any(|p| p.is_none());
    MassReport { total, parts, unbounded_support }
}

/// Convenience for fixtures: the chart polynomial as integer terms.
pub fn chart_from_int_terms(
    n: usize,
    terms: &[(&[u32], i64)],
    solve_for: usize,
    truncation: Option<u32>,
) -> Result<LocalChart, MeasureError> {
    LocalChart::new(Polynomial::from_int_terms(n, terms), solve_for, truncation)
}
