//! Families of corner-locus measures, the entropy constant and the chain inequality.

use num_traits::{One, Signed, Zero};

use crate::error::{EntropyError, MeasureError};
use crate::field::{fmt_rational, Rational};
use crate::linalg::{rank, solve_any};
use crate::lp::{maximize, LpOutcome};
use crate::measures::{atomic_measure, restrict_to_hypersurface, total_mass, Atom, ComplexMeasure};
use crate::mobility::{Convention, MobilityCertificate};
use crate::pl::{dilation_factor, eval_pl, pullback_pl, AffinePiece, DilationFactor, PlFunction, PlMap};
use crate::poly::Polynomial;

/// A PL function together with an atomic measure on its corner locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberPart {
    pub pl: PlFunction,
    pub measure: ComplexMeasure,
}

/// A member's measure is the average of its parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub label: String,
    pub parts: Vec<MemberPart>,
}

impl FamilyMember {
    pub fn single(label: impl Into<String>, pl: PlFunction, measure: ComplexMeasure) -> Self {
        FamilyMember { label: label.into(), parts: vec![MemberPart { pl, measure }] }
    }

    pub fn measure(&self) -> ComplexMeasure {
        let k = Rational::from_integer((self.parts.len() as u64).into());
        let atoms: Vec<Atom> = self
            .parts
            .iter()
            .flat_map(|p| match &p.measure {
                ComplexMeasure::Atomic(a) => a.clone(),
                ComplexMeasure::Lebesgue(_) => Vec::new(),
            })
            .map(|a| Atom { mass: a.mass / &k, anchor: a.anchor })
            .collect();
        ComplexMeasure::Atomic(atoms).canonical()
    }

    pub fn mass(&self) -> Rational {
        total_mass(&self.measure()).total
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureFamily {
    /// Vertices of the base simplex.
    pub base: Vec<Vec<Rational>>,
    pub bound: Rational,
    pub members: Vec<FamilyMember>,
}

impl MeasureFamily {
    pub fn new(base: Vec<Vec<Rational>>, bound: Rational, members: Vec<FamilyMember>) -> Result<Self, EntropyError> {
        let fam = MeasureFamily { base, bound, members };
        fam.validate()?;
        Ok(fam)
    }

    pub fn dim(&self) -> usize {
        self.base.first().map_or(0, Vec::len)
    }

    pub fn validate(&self) -> Result<(), EntropyError> {
        check_simplex(&self.base)?;
        if !self.bound.is_positive() {
            return Err(EntropyError::MassBoundViolated(format!("bound {} is not positive", fmt_rational(&self.bound))));
        }
        let n = self.dim();
        for m in &self.members {
            if m.parts.is_empty() {
                return Err(MeasureError::Invalid(format!("member {} has no parts", m.label)).into());
            }
            for p in &m.parts {
                if p.pl.n() != n {
                    return Err(MeasureError::Invalid(format!("member {} lives in dimension {}", m.label, p.pl.n())).into());
                }
                let ComplexMeasure::Atomic(atoms) = &p.measure else {
                    return Err(MeasureError::Invalid(format!("member {} is not atomic", m.label)).into());
                };
                p.measure.validate()?;
                for a in atoms {
                    let (_, argmin) = eval_pl(&p.pl, &a.anchor).map_err(EntropyError::Pl)?;
                    if argmin.len() < 2 {
                        let shown: Vec<String> = a.anchor.iter().map(fmt_rational).collect();
                        return Err(MeasureError::AnchorOffCornerLocus(format!("({})", shown.join(", "))).into());
                    }
                }
            }
            if m.mass() > self.bound {
                return Err(EntropyError::MassBoundViolated(m.label.clone()));
            }
        }
        Ok(())
    }

    /// Every measure multiplied by `c`; the bound is left alone and not re-validated.
    pub fn scaled_measures(&self, c: &Rational) -> MeasureFamily {
        let members = self
            .members
            .iter()
            .map(|m| FamilyMember {
                label: m.label.clone(),
                parts: m.parts.iter().map(|p| MemberPart { pl: p.pl.clone(), measure: p.measure.scaled(c) }).collect(),
            })
            .collect();
        MeasureFamily { base: self.base.clone(), bound: self.bound.clone(), members }
    }

    /// Measures and bound both multiplied by `c`.
    pub fn scaled(&self, c: &Rational) -> MeasureFamily {
        let mut f = self.scaled_measures(c);
        f.bound = &self.bound * c;
        f
    }
}

fn check_simplex(base: &[Vec<Rational>]) -> Result<(), EntropyError> {
    let Some(first) = base.first() else {
        return Err(EntropyError::NotASimplex("no vertices".into()));
    };
    if base.iter().any(|v| v.len() != first.len()) {
        return Err(EntropyError::NotASimplex("vertices of different dimensions".into()));
    }
    let rows: Vec<Vec<Rational>> = base.iter().map(|v| v.iter().cloned().chain([Rational::one()]).collect()).collect();
    if rank(&rows) != base.len() {
        return Err(EntropyError::NotASimplex("vertices are affinely dependent".into()));
    }
    Ok(())
}

/// `{0, e_1, …, e_n}`.
pub fn standard_simplex(n: usize) -> Vec<Vec<Rational>> {
    let mut out = vec![vec![Rational::zero(); n]];
    for i in 0..n {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        out.push(v);
    }
    out
}

/// Barycentric coordinates of `p` with respect to the base simplex.
fn barycentric(base: &[Vec<Rational>], p: &[Rational]) -> Result<Vec<Rational>, EntropyError> {
    let k = base.len();
    let mut a: Vec<Vec<Rational>> = (0..p.len()).map(|i| base.iter().map(|v| v[i].clone()).collect()).collect();
    a.push(vec![Rational::one(); k]);
    let mut b = p.to_vec();
    b.push(Rational::one());
    solve_any(&a, &b, k).ok_or_else(|| EntropyError::NotASimplex("mass centre outside the affine span of the base".into()))
}

/// `(barycentric mass centre, total mass)`; massless members sit at the first vertex.
pub fn embed_member(base: &[Vec<Rational>], m: &FamilyMember) -> Result<Vec<Rational>, EntropyError> {
    let ComplexMeasure::Atomic(atoms) = m.measure() else { unreachable!("members are atomic") };
    let mass: Rational = atoms.iter().map(|a| a.mass.clone()).sum();
    let n = base[0].len();
    let mut coords = if mass.is_zero() {
        let mut e = vec![Rational::zero(); base.len()];
        e[0] = Rational::one();
        e
    } else {
        let centre: Vec<Rational> =
            (0..n).map(|i| atoms.iter().map(|a| &a.anchor[i] * &a.mass).sum::<Rational>() / &mass).collect();
        barycentric(base, &centre)?
    };
    coords.push(mass);
    Ok(coords)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalFamily {
    pub selection: Vec<usize>,
    /// `(1/N) Σ π_i^* dμ_{ℓ_i}`, with coincident atoms merged.
    pub measure: ComplexMeasure,
    pub mass: Rational,
}

pub fn diagonal_family(fam: &MeasureFamily, selection: &[usize]) -> Result<DiagonalFamily, EntropyError> {
    if selection.is_empty() {
        return Err(EntropyError::EmptyFamily);
    }
    if let Some(&i) = selection.iter().find(|&&i| i >= fam.members.len()) {
        return Err(EntropyError::BadSelection(i));
    }
    let n = Rational::from_integer((selection.len() as u64).into());
    let atoms: Vec<Atom> = selection
        .iter()
        .flat_map(|&i| match fam.members[i].measure() {
            ComplexMeasure::Atomic(a) => a,
            ComplexMeasure::Lebesgue(_) => Vec::new(),
        })
        .map(|a| Atom { mass: a.mass / &n, anchor: a.anchor })
        .collect();
    let measure = ComplexMeasure::Atomic(atoms).canonical();
    let mass = total_mass(&measure).total;
    if mass > fam.bound {
        return Err(EntropyError::MassBoundViolated(format!("average of {selection:?}")));
    }
    Ok(DiagonalFamily { selection: selection.to_vec(), measure, mass })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntropyResult {
    pub c: Rational,
    pub ent: Rational,
    /// Lowest-index member at a maximizing vertex of the hull.
    pub witness: usize,
    pub witness_point: Vec<Rational>,
    /// Plain maximum of member masses.
    pub oracle: Rational,
}

impl EntropyResult {
    pub fn agrees_with_oracle(&self) -> bool {
        self.c == self.oracle
    }
}

pub fn entropy_constant(fam: &MeasureFamily) -> Result<EntropyResult, EntropyError> {
    if fam.members.is_empty() {
        return Err(EntropyError::EmptyFamily);
    }
    check_simplex(&fam.base)?;
    let points: Vec<Vec<Rational>> = fam.members.iter().map(|m| embed_member(&fam.base, m)).collect::<Result<_, _>>()?;
    let k = points[0].len() - 1;
    // maximize the mass coordinate over convex combinations of the embedded points
    let cost: Vec<Rational> = points.iter().map(|p| p[k].clone()).collect();
    let ones = vec![Rational::one(); points.len()];
    let LpOutcome::Optimal { value, x } = maximize(&cost, &[ones], &[Rational::one()]) else {
        unreachable!("weights on a nonempty simplex are feasible and bounded")
    };
    let best = points.iter().map(|p| p[k].clone()).max().expect("nonempty");
    let witness = (0..points.len()).find(|&j| x[j].is_positive() && points[j][k] == value).unwrap_or_else(|| {
        points.iter().position(|p| p[k] == best).expect("maximum attained")
    });
    Ok(EntropyResult {
        ent: &value / &fam.bound,
        c: value,
        witness,
        witness_point: points[witness].clone(),
        oracle: best,
    })
}

/// `min(0, trop(s|_X))` on the chart coordinates of `X`, with trivial valuation.
pub fn section_pl(cert: &MobilityCertificate, s: &Polynomial) -> Result<PlFunction, EntropyError> {
    let chart = &cert.system.chart;
    let d = chart.truncation_for(s);
    let series = restrict_to_hypersurface(chart, s, d)?;
    let w = chart.solve_for();
    let drop_w = |e: &[u32]| -> Vec<i64> {
        e.iter().enumerate().filter(|&(i, _)| i != w).map(|(_, &x)| i64::from(x)).collect()
    };
    let mut pieces = vec![AffinePiece { linear: vec![0; chart.n() - 1], constant: Rational::zero() }];
    for (e, _) in series.terms() {
        let p = AffinePiece { linear: drop_w(e), constant: Rational::zero() };
        if !pieces.contains(&p) {
            pieces.push(p);
        }
    }
    Ok(PlFunction::new(chart.n() - 1, pieces)?)
}

/// One member per certificate: its generators averaged (family-average) or its generic member.
pub fn mobility_family(certs: &[MobilityCertificate], anchors: &[Vec<Rational>]) -> Result<MeasureFamily, EntropyError> {
    if certs.is_empty() {
        return Err(EntropyError::EmptyFamily);
    }
    if anchors.len() != certs.len() {
        return Err(MeasureError::Invalid(format!("{} anchors for {} certificates", anchors.len(), certs.len())).into());
    }
    let dim = certs[0].system.chart.n() - 1;
    let mut members = Vec::new();
    for (i, (cert, anchor)) in certs.iter().zip(anchors).enumerate() {
        if cert.system.chart.n() - 1 != dim || anchor.len() != dim {
            return Err(MeasureError::Invalid(format!("certificate {i} has a different dimension")).into());
        }
        let sections: Vec<Polynomial> = match cert.convention {
            Convention::FamilyAverage => cert.system.generators.clone(),
            Convention::GenericMember => {
                let n = cert.system.chart.n();
                vec![cert.system.generators.iter().zip(&cert.generic.coefficients).fold(Polynomial::zero(n), |acc, (g, c)| {
                    &acc + &g.scale(&c.clone().into())
                })]
            }
        };
        let mut parts = Vec::new();
        for s in &sections {
            let pl = section_pl(cert, s)?;
            let measure = atomic_measure(anchor, &pl, &cert.system.chart, s, cert.system.n)?;
            parts.push(MemberPart { pl, measure });
        }
        members.push(FamilyMember { label: format!("{}[{i}]", cert.convention), parts });
    }
    let bound = certs.iter().map(|c| c.ratio.clone()).max().expect("nonempty");
    MeasureFamily::new(standard_simplex(dim), bound, members)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportMatch {
    pub member_x: usize,
    pub member_y: usize,
    pub mass: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneityCheck {
    pub delta: Rational,
    pub ent: Rational,
    pub scaled_ent: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub delta: DilationFactor,
    pub transport: Vec<TransportMatch>,
    pub homogeneity: HomogeneityCheck,
    pub sup_x: Rational,
    pub sup_y: Rational,
    pub sup_holds: bool,
}

impl ChainReport {
    pub fn all_pass(&self) -> bool {
        self.homogeneity.holds && self.sup_holds
    }
}

fn part_mass(p: &MemberPart) -> Rational {
    total_mass(&p.measure).total
}

/// Transports every member of `fam_x` along `Φ` into `fam_y`, then compares suprema.
pub fn chain_inequality_check(
    fam_x: &MeasureFamily,
    fam_y: &MeasureFamily,
    phi: &PlMap,
    delta: &DilationFactor,
) -> Result<ChainReport, EntropyError> {
    let computed = dilation_factor(phi)?;
    if computed != *delta {
        return Err(EntropyError::DilationMismatch { given: delta.0.to_string(), computed: computed.0.to_string() });
    }
    let mut transport = Vec::new();
    for (i, mx) in fam_x.members.iter().enumerate() {
        let pulled: Vec<(PlFunction, Rational)> =
            mx.parts.iter().map(|p| Ok((pullback_pl(phi, &p.pl)?, part_mass(p)))).collect::<Result<_, EntropyError>>()?;
        let found = fam_y.members.iter().position(|my| {
            my.parts.len() == pulled.len()
                && my.parts.iter().zip(&pulled).all(|(q, (l, m))| q.pl.same_function(l) && part_mass(q) == *m)
        });
        match found {
            Some(k) => transport.push(TransportMatch { member_x: i, member_y: k, mass: mx.mass() }),
            None => {
                // report the first part without any counterpart in the target family
                let part = pulled
                    .iter()
                    .position(|(l, m)| !fam_y.members.iter().flat_map(|my| &my.parts).any(|q| q.pl.same_function(l) && part_mass(q) == *m))
                    .unwrap_or(0);
                return Err(EntropyError::TransportFailure { member: i, part });
            }
        }
    }
    let d = delta.as_rational();
    let ex = entropy_constant(fam_x)?;
    let scaled = entropy_constant(&fam_x.scaled_measures(&d))?;
    let homogeneity = HomogeneityCheck {
        holds: scaled.ent == &d * &ex.ent,
        delta: d,
        ent: ex.ent.clone(),
        scaled_ent: scaled.ent,
    };
    let ey = entropy_constant(fam_y)?;
    Ok(ChainReport {
        delta: delta.clone(),
        transport,
        homogeneity,
        sup_holds: ey.c >= ex.c,
        sup_x: ex.c,
        sup_y: ey.c,
    })
}
