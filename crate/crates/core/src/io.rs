//! JSON formats for inputs and reports. Every number is an exact string.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::amoeba::{AmoebaSample, ConvergenceProfile};
use crate::entropy::{ChainReport, DiagonalFamily, EntropyResult, FamilyMember, MeasureFamily, MemberPart};
use crate::error::ParseError;
use crate::field::{fmt_rational, parse_rational, Field, FieldElement, Rational};
use crate::lattice::{DualComplex, LiftedLaurentPolynomial, LiftedTerm, NewtonPolytope, RegularSubdivision, Verdict};
use crate::measures::{Atom, ComplexMeasure, LocalChart, MassReport, WeightedCell};
use crate::mobility::{ConeWitness, LinearSystemSpec, MobilityCertificate, NoetherFanoReport, SegreReport};
use crate::pl::{tropicalize_monomial_map, AffinePiece, CornerLocus, PlFunction, PlMap};
use crate::fixtures::MobilityFixture;
use crate::poly::Polynomial;

pub const MAX_INPUT_BYTES: usize = 1 << 20;
pub const MAX_VARS: usize = 8;
pub const MAX_TERMS: usize = 4096;
pub const MAX_EXPONENT: i64 = 256;
pub const MAX_TRUNCATION: u32 = 32;
pub const MAX_MEMBERS: usize = 1024;

fn schema(msg: impl Into<String>) -> ParseError {
    ParseError::Schema(msg.into())
}

fn from_str<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T, ParseError> {
    if s.len() > MAX_INPUT_BYTES {
        return Err(schema(format!("input larger than {MAX_INPUT_BYTES} bytes")));
    }
    Ok(serde_json::from_str(s)?)
}

fn check_dim(n: usize) -> Result<(), ParseError> {
    if n == 0 || n > MAX_VARS {
        return Err(schema(format!("dimension {n} outside 1..={MAX_VARS}")));
    }
    Ok(())
}

fn rat(s: &str) -> Result<Rational, ParseError> {
    parse_rational(s)
}

fn rats(v: &[String]) -> Result<Vec<Rational>, ParseError> {
    v.iter().map(|s| rat(s)).collect()
}

pub fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum FieldJson {
    Rational,
    Quadratic { d: u64 },
}

impl FieldJson {
    fn to_field(self) -> Result<Field, ParseError> {
        match self {
            FieldJson::Rational => Ok(Field::Rational),
            FieldJson::Quadratic { d } => Field::quadratic(d),
        }
    }

    fn from_field(f: Field) -> Self {
        match f.radicand() {
            None => FieldJson::Rational,
            Some(d) => FieldJson::Quadratic { d },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    exp: Vec<i64>,
    coeff: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lift: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolynomialJson {
    n: usize,
    field: FieldJson,
    terms: Vec<TermJson>,
}

impl PolynomialJson {
    fn checked_terms(&self) -> Result<(Field, Vec<(Vec<i64>, FieldElement, Option<Rational>)>), ParseError> {
        check_dim(self.n)?;
        if self.terms.len() > MAX_TERMS {
            return Err(schema(format!("more than {MAX_TERMS} terms")));
        }
        let field = self.field.to_field()?;
        let mut out = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.exp.len() != self.n {
                return Err(schema(format!("exponent {:?} has length {}, n = {}", t.exp, t.exp.len(), self.n)));
            }
            if t.exp.iter().any(|e| e.abs() > MAX_EXPONENT) {
                return Err(schema(format!("exponent {:?} exceeds {MAX_EXPONENT}", t.exp)));
            }
            let c = field.parse(&t.coeff)?;
            let lift = t.lift.as_deref().map(rat).transpose()?;
            out.push((t.exp.clone(), c, lift));
        }
        Ok((field, out))
    }

    fn into_lifted(self) -> Result<LiftedLaurentPolynomial, ParseError> {
        let (field, terms) = self.checked_terms()?;
        let terms = terms
            .into_iter()
            .map(|(exp, coeff, lift)| LiftedTerm { exp, coeff, lift: lift.unwrap_or_default() })
            .collect();
        LiftedLaurentPolynomial::new(self.n, field, terms)
    }

    fn into_polynomial(self) -> Result<Polynomial, ParseError> {
        let (_, terms) = self.checked_terms()?;
        if terms.is_empty() {
            return Err(schema("at least one term required"));
        }
        let mut p = Polynomial::zero(self.n);
        for (i, (exp, c, lift)) in terms.into_iter().enumerate() {
            if lift.is_some_and(|v| v != Rational::default()) {
                return Err(schema("polynomial terms carry no lifts"));
            }
            if exp.iter().any(|&e| e < 0) {
                return Err(schema(format!("negative exponent {exp:?}")));
            }
            if c.is_zero() {
                return Err(schema(format!("zero coefficient in term {i}")));
            }
            let e: Vec<u32> = exp.iter().map(|&x| x as u32).collect();
            if !p.coeff(&e).is_zero() {
                return Err(schema(format!("repeated exponent {exp:?}")));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

pub fn parse_lifted(s: &str) -> Result<LiftedLaurentPolynomial, ParseError> {
    from_str::<PolynomialJson>(s)?.into_lifted()
}

pub fn lifted_to_json(f: &LiftedLaurentPolynomial) -> Value {
    json!({
        "n": f.n(),
        "field": FieldJson::from_field(f.field()),
        "terms": f.terms().iter().map(|t| json!({
            "exp": t.exp,
            "coeff": t.coeff.to_string(),
            "lift": fmt_rational(&t.lift),
        })).collect::<Vec<_>>(),
    })
}

pub fn parse_polynomial(s: &str) -> Result<Polynomial, ParseError> {
    from_str::<PolynomialJson>(s)?.into_polynomial()
}

fn polynomial_json(p: &Polynomial) -> PolynomialJson {
    PolynomialJson {
        n: p.nvars(),
        field: FieldJson::from_field(p.field()),
        terms: p
            .terms()
            .map(|(e, c)| TermJson { exp: e.iter().map(|&x| i64::from(x)).collect(), coeff: c.to_string(), lift: None })
            .collect(),
    }
}

pub fn polynomial_to_json(p: &Polynomial) -> Value {
    serde_json::to_value(polynomial_json(p)).expect("serializable")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlMapJson {
    matrix: Vec<Vec<i64>>,
    shift: Vec<String>,
}

pub fn parse_plmap(s: &str) -> Result<PlMap, ParseError> {
    let m: PlMapJson = from_str(s)?;
    if m.matrix.is_empty() || m.matrix.len() > MAX_VARS {
        return Err(schema("matrix must have 1..=8 rows"));
    }
    let cols = m.matrix[0].len();
    check_dim(cols)?;
    if m.matrix.iter().any(|r| r.len() != cols) {
        return Err(schema("ragged matrix"));
    }
    if m.matrix.iter().flatten().any(|a| a.abs() > 1 << 20) {
        return Err(schema("matrix entry too large"));
    }
    if m.shift.len() != m.matrix.len() {
        return Err(schema("shift length differs from the number of rows"));
    }
    tropicalize_monomial_map(m.matrix, rats(&m.shift)?).map_err(|e| schema(e.to_string()))
}

/// Single-cell maps only; `None` otherwise.
pub fn plmap_to_json(phi: &PlMap) -> Option<Value> {
    let [cell] = phi.cells.as_slice() else { return None };
    Some(json!({ "matrix": cell.matrix, "shift": rational_strings(&cell.shift) }))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PieceJson {
    exp: Vec<i64>,
    lift: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlFunctionJson {
    n: usize,
    terms: Vec<PieceJson>,
}

impl PlFunctionJson {
    fn build(self) -> Result<PlFunction, ParseError> {
        check_dim(self.n)?;
        if self.terms.len() > MAX_TERMS {
            return Err(schema(format!("more than {MAX_TERMS} pieces")));
        }
        let pieces = self
            .terms
            .into_iter()
            .map(|p| {
                if p.exp.iter().any(|e| e.abs() > MAX_EXPONENT) {
                    return Err(schema(format!("slope {:?} exceeds {MAX_EXPONENT}", p.exp)));
                }
                Ok(AffinePiece { linear: p.exp, constant: rat(&p.lift)? })
            })
            .collect::<Result<Vec<_>, ParseError>>()?;
        PlFunction::new(self.n, pieces).map_err(|e| schema(e.to_string()))
    }

    fn of(l: &PlFunction) -> Self {
        PlFunctionJson {
            n: l.n(),
            terms: l.pieces().iter().map(|p| PieceJson { exp: p.linear.clone(), lift: fmt_rational(&p.constant) }).collect(),
        }
    }
}

pub fn parse_pl_function(s: &str) -> Result<PlFunction, ParseError> {
    from_str::<PlFunctionJson>(s)?.build()
}

pub fn pl_function_to_json(l: &PlFunction) -> Value {
    serde_json::to_value(PlFunctionJson::of(l)).expect("serializable")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChartJson {
    n: usize,
    f: PolynomialJson,
    solve_for: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    truncation: Option<u32>,
}

impl ChartJson {
    fn build(self) -> Result<LocalChart, ParseError> {
        check_dim(self.n)?;
        if self.f.n != self.n {
            return Err(schema(format!("chart n = {} but f has n = {}", self.n, self.f.n)));
        }
        if self.solve_for >= self.n {
            return Err(schema(format!("solve_for {} out of range", self.solve_for)));
        }
        if self.truncation.is_some_and(|d| d > MAX_TRUNCATION) {
            return Err(schema(format!("truncation above {MAX_TRUNCATION}")));
        }
        let f = self.f.into_polynomial()?;
        if f.total_degree().is_some_and(|d| d > 16) {
            return Err(schema("chart equation degree above 16"));
        }
        LocalChart::new(f, self.solve_for, self.truncation).map_err(|e| schema(e.to_string()))
    }

    fn of(c: &LocalChart) -> Self {
        ChartJson { n: c.n(), f: polynomial_json(c.f()), solve_for: c.solve_for(), truncation: c.truncation() }
    }
}

pub fn parse_chart(s: &str) -> Result<LocalChart, ParseError> {
    from_str::<ChartJson>(s)?.build()
}

pub fn chart_to_json(c: &LocalChart) -> Value {
    serde_json::to_value(ChartJson::of(c)).expect("serializable")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomJson {
    anchor: Vec<String>,
    mass: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellJson {
    vertices: Vec<Vec<String>>,
    #[serde(default)]
    rays: Vec<Vec<String>>,
    density: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum MeasureJson {
    Atomic { atoms: Vec<AtomJson> },
    Lebesgue { cells: Vec<CellJson> },
}

fn points(v: &[Vec<String>]) -> Result<Vec<Vec<Rational>>, ParseError> {
    v.iter().map(|p| rats(p)).collect()
}

fn point_strings(v: &[Vec<Rational>]) -> Vec<Vec<String>> {
    v.iter().map(|p| rational_strings(p)).collect()
}

impl MeasureJson {
    fn build(self) -> Result<ComplexMeasure, ParseError> {
        let m = match self {
            MeasureJson::Atomic { atoms } => {
                if atoms.len() > MAX_TERMS {
                    return Err(schema("too many atoms"));
                }
                let atoms = atoms
                    .iter()
                    .map(|a| Ok(Atom { anchor: rats(&a.anchor)?, mass: rat(&a.mass)? }))
                    .collect::<Result<Vec<_>, ParseError>>()?;
                let dims: Vec<usize> = atoms.iter().map(|a| a.anchor.len()).collect();
                if dims.iter().any(|&d| d != dims[0] || d == 0 || d > MAX_VARS) {
                    return Err(schema("atom anchors must share a dimension in 1..=8"));
                }
                ComplexMeasure::Atomic(atoms)
            }
            MeasureJson::Lebesgue { cells } => {
                if cells.len() > MAX_TERMS {
                    return Err(schema("too many cells"));
                }
                let cells = cells
                    .iter()
                    .map(|c| {
                        Ok(WeightedCell { vertices: points(&c.vertices)?, rays: points(&c.rays)?, density: rat(&c.density)? })
                    })
                    .collect::<Result<Vec<_>, ParseError>>()?;
                let mut dims = cells.iter().flat_map(|c| c.vertices.iter().chain(&c.rays)).map(Vec::len);
                if let Some(d0) = dims.next() {
                    if d0 == 0 || d0 > MAX_VARS || dims.any(|d| d != d0) {
                        return Err(schema("cell coordinates must share a dimension in 1..=8"));
                    }
                }
                if cells.iter().any(|c| c.vertices.len() + c.rays.len() > 64) {
                    return Err(schema("cell with more than 64 generators"));
                }
                ComplexMeasure::Lebesgue(cells)
            }
        };
        m.validate().map_err(|e| schema(e.to_string()))?;
        Ok(m)
    }

    fn of(m: &ComplexMeasure) -> Self {
        match m {
            ComplexMeasure::Atomic(atoms) => MeasureJson::Atomic {
                atoms: atoms.iter().map(|a| AtomJson { anchor: rational_strings(&a.anchor), mass: fmt_rational(&a.mass) }).collect(),
            },
            ComplexMeasure::Lebesgue(cells) => MeasureJson::Lebesgue {
                cells: cells
                    .iter()
                    .map(|c| CellJson {
                        vertices: point_strings(&c.vertices),
                        rays: point_strings(&c.rays),
                        density: fmt_rational(&c.density),
                    })
                    .collect(),
            },
        }
    }
}

pub fn parse_measure(s: &str) -> Result<ComplexMeasure, ParseError> {
    from_str::<MeasureJson>(s)?.build()
}

pub fn measure_to_json(m: &ComplexMeasure) -> Value {
    serde_json::to_value(MeasureJson::of(m)).expect("serializable")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartJson {
    pl: PlFunctionJson,
    measure: MeasureJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MemberJson {
    label: String,
    parts: Vec<PartJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    base: Vec<Vec<String>>,
    bound: String,
    members: Vec<MemberJson>,
}

pub fn parse_family(s: &str) -> Result<MeasureFamily, ParseError> {
    let f: FamilyJson = from_str(s)?;
    if f.members.len() > MAX_MEMBERS || f.base.len() > MAX_VARS + 1 {
        return Err(schema("family too large"));
    }
    let members = f
        .members
        .into_iter()
        .map(|m| {
            let parts = m
                .parts
                .into_iter()
                .map(|p| Ok(MemberPart { pl: p.pl.build()?, measure: p.measure.build()? }))
                .collect::<Result<Vec<_>, ParseError>>()?;
            Ok(FamilyMember { label: m.label, parts })
        })
        .collect::<Result<Vec<_>, ParseError>>()?;
    let base = points(&f.base)?;
    MeasureFamily::new(base, rat(&f.bound)?, members).map_err(|e| schema(e.to_string()))
}

pub fn family_to_json(f: &MeasureFamily) -> Value {
    let fam = FamilyJson {
        base: point_strings(&f.base),
        bound: fmt_rational(&f.bound),
        members: f
            .members
            .iter()
            .map(|m| MemberJson {
                label: m.label.clone(),
                parts: m.parts.iter().map(|p| PartJson { pl: PlFunctionJson::of(&p.pl), measure: MeasureJson::of(&p.measure) }).collect(),
            })
            .collect(),
    };
    serde_json::to_value(fam).expect("serializable")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FixtureJson {
    name: String,
    #[serde(rename = "N")]
    n: u32,
    chart: ChartJson,
    generators: Vec<PolynomialJson>,
    #[serde(default)]
    note: String,
}

pub fn parse_fixture(s: &str) -> Result<MobilityFixture, ParseError> {
    let f: FixtureJson = from_str(s)?;
    if f.n == 0 || f.n > 64 {
        return Err(schema("N outside 1..=64"));
    }
    if f.generators.is_empty() || f.generators.len() > 16 {
        return Err(schema("between 1 and 16 generators required"));
    }
    let chart = f.chart.build()?;
    let generators = f.generators.into_iter().map(PolynomialJson::into_polynomial).collect::<Result<Vec<_>, _>>()?;
    let system = LinearSystemSpec::new(f.n, generators, chart).map_err(|e| schema(e.to_string()))?;
    Ok(MobilityFixture { name: f.name, system, note: f.note })
}

pub fn fixture_to_json(f: &MobilityFixture) -> Value {
    let fx = FixtureJson {
        name: f.name.clone(),
        n: f.system.n,
        chart: ChartJson::of(&f.system.chart),
        generators: f.system.generators.iter().map(polynomial_json).collect(),
        note: f.note.clone(),
    };
    serde_json::to_value(fx).expect("serializable")
}

pub fn parse_field_element(s: &str) -> Result<FieldElement, ParseError> {
    if s.len() > 4096 {
        return Err(schema("number string too long"));
    }
    s.parse()
}

fn bigints(v: &[num_bigint::BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn verdict_json(v: &Verdict) -> Value {
    json!({ "holds": v.holds, "offending": v.offending, "reason": v.reason })
}

pub fn polytope_to_json(p: &NewtonPolytope) -> Value {
    let facet = |f: &crate::lattice::Facet| json!({ "normal": bigints(&f.normal), "offset": f.offset.to_string() });
    json!({
        "n": p.n,
        "dim": p.dim,
        "vertices": p.vertices,
        "facets": p.facets.iter().map(facet).collect::<Vec<_>>(),
        "equations": p.equations.iter().map(facet).collect::<Vec<_>>(),
    })
}

pub fn subdivision_to_json(s: &RegularSubdivision, unimodular: &Verdict) -> Value {
    json!({
        "points": s.points,
        "lifts": rational_strings(&s.lifts),
        "dim": s.dim,
        "cells": s.cells,
        "unimodular": verdict_json(unimodular),
    })
}

pub fn dual_to_json(p: &DualComplex, balanced: Option<&Verdict>) -> Value {
    json!({
        "n": p.n,
        "vertices": point_strings(&p.vertices),
        "faces": p.faces.iter().map(|f| json!({
            "dim": f.dim,
            "cell": f.cell,
            "vertices": f.vertices,
            "rays": f.rays.iter().map(|r| bigints(r)).collect::<Vec<_>>(),
            "weight": f.weight.as_ref().map(ToString::to_string),
        })).collect::<Vec<_>>(),
        "balanced": balanced.map(verdict_json),
    })
}

pub fn corner_locus_to_json(l: &CornerLocus) -> Value {
    json!({
        "n": l.n,
        "pieces": l.pieces.iter().map(|p| json!({
            "indices": p.indices,
            "vertices": point_strings(&p.vrep.vertices),
            "rays": point_strings(&p.vrep.rays),
            "lineality": point_strings(&p.vrep.lineality),
        })).collect::<Vec<_>>(),
    })
}

pub fn mass_report_to_json(m: &MassReport) -> Value {
    json!({
        "total": fmt_rational(&m.total),
        "parts": m.parts.iter().map(|p| p.as_ref().map(fmt_rational)).collect::<Vec<_>>(),
        "unbounded_support": m.unbounded_support,
    })
}

pub fn certificate_to_json(c: &MobilityCertificate) -> Value {
    json!({
        "convention": c.convention.name(),
        "N": c.system.n,
        "generators": c.system.generators.iter().map(polynomial_to_json).collect::<Vec<_>>(),
        "mobile": c.verdict.mobile,
        "member_orders": c.member_orders,
        "generic_order": c.generic.order,
        "generic_coefficients": rational_strings(&c.generic.coefficients),
        "family_average": fmt_rational(&c.family_average),
        "multiplicity": fmt_rational(&c.multiplicity()),
        "ratio": fmt_rational(&c.ratio),
    })
}

fn field_strings(v: &[FieldElement]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn cone_witness_to_json(w: &ConeWitness) -> Value {
    json!({
        "vertex": field_strings(&w.vertex),
        "verified": w.verified,
        "attempts": w.attempts,
        "samples": w.samples.iter().map(|s| json!({
            "point": field_strings(&s.point),
            "parameters": rational_strings(&s.parameters),
            "residuals": s.residuals.iter().map(|r| field_strings(r)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn segre_to_json(r: &SegreReport) -> Value {
    json!({
        "alpha": r.alpha.to_string(),
        "alpha_squared": r.alpha_squared.to_string(),
        "alpha_identity": r.alpha_identity.to_string(),
        "residual": r.residual.to_string(),
        "residual_polynomial": polynomial_to_json(&r.residual),
        "independent_of_x2": r.independent_of_x2,
        "matches_cone": r.matches_cone,
    })
}

pub fn noether_fano_to_json(r: &NoetherFanoReport) -> Value {
    json!({
        "m_y": fmt_rational(&r.m_y),
        "m_x": fmt_rational(&r.m_x),
        "delta": r.delta.to_string(),
        "holds": r.holds,
        "caveat": r.caveat,
    })
}

pub fn entropy_to_json(r: &EntropyResult) -> Value {
    json!({
        "C": fmt_rational(&r.c),
        "ent": fmt_rational(&r.ent),
        "witness": r.witness,
        "witness_point": rational_strings(&r.witness_point),
        "member_max": fmt_rational(&r.oracle),
        "lp_matches_member_max": r.agrees_with_oracle(),
    })
}

pub fn diagonal_to_json(d: &DiagonalFamily) -> Value {
    json!({ "selection": d.selection, "measure": measure_to_json(&d.measure), "mass": fmt_rational(&d.mass) })
}

pub fn chain_to_json(r: &ChainReport) -> Value {
    json!({
        "delta": r.delta.0.to_string(),
        "transport": r.transport.iter().map(|t| json!({
            "member_x": t.member_x, "member_y": t.member_y, "mass": fmt_rational(&t.mass),
        })).collect::<Vec<_>>(),
        "homogeneity": {
            "delta": fmt_rational(&r.homogeneity.delta),
            "ent": fmt_rational(&r.homogeneity.ent),
            "scaled_ent": fmt_rational(&r.homogeneity.scaled_ent),
            "holds": r.homogeneity.holds,
        },
        "sup_x": fmt_rational(&r.sup_x),
        "sup_y": fmt_rational(&r.sup_y),
        "sup_holds": r.sup_holds,
        "all_pass": r.all_pass(),
    })
}

pub fn amoeba_sample_to_json(s: &AmoebaSample) -> Value {
    json!({
        "t": s.t,
        "seed": s.seed,
        "fibers": s.fibers,
        "points": s.points.iter().map(|p| vec![p[0], p[1]]).collect::<Vec<_>>(),
    })
}

pub fn profile_to_json(p: &ConvergenceProfile) -> Value {
    json!({
        "box": [p.bbox.lo, p.bbox.hi],
        "entries": p.entries.iter().map(|e| json!({
            "t": e.t, "distance": e.distance, "inlier_fraction": e.inlier_fraction, "points": e.points,
        })).collect::<Vec<_>>(),
        "note": "one-sided distance from sample points in the box to the corner locus",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, qi};
    use crate::fixtures::{cubic_pencil, projective_pencil, square_curve};
    use num_traits::Signed;
    use proptest::prelude::*;

    #[test]
    fn polynomial_format() {
        let s = r#"{"n":2,"field":{"type":"quadratic","d":2},"terms":[
            {"exp":[0,0],"coeff":"1","lift":"0"},
            {"exp":[1,0],"coeff":"1/2+3*sqrt(2)","lift":"-1/3"}]}"#;
        let f = parse_lifted(s).unwrap();
        assert_eq!(f.terms()[1].lift, q(-1, 3));
        assert_eq!(parse_lifted(&lifted_to_json(&f).to_string()).unwrap(), f);
        // coefficient outside the declared field
        let bad = s.replace("\"d\":2}", "\"d\":3}");
        assert!(matches!(parse_lifted(&bad), Err(ParseError::Field(_))));
        assert!(matches!(parse_lifted("{"), Err(ParseError::Json(_))));
        assert!(matches!(parse_lifted(&s.replace("1/2+", "1/0+")), Err(ParseError::Number(_))));
        let big = s.replace("[1,0]", "[1000,0]");
        assert!(matches!(parse_lifted(&big), Err(ParseError::Schema(_))));
    }

    #[test]
    fn plain_polynomials_reject_lifts_and_negatives() {
        let ok = r#"{"n":2,"field":{"type":"rational"},"terms":[{"exp":[2,0],"coeff":"3"},{"exp":[0,1],"coeff":"-1"}]}"#;
        let p = parse_polynomial(ok).unwrap();
        assert_eq!(parse_polynomial(&polynomial_to_json(&p).to_string()).unwrap(), p);
        assert!(parse_polynomial(&ok.replace("[2,0]", "[-2,0]")).is_err());
        assert!(parse_polynomial(&ok.replace("\"coeff\":\"3\"", "\"coeff\":\"3\",\"lift\":\"1\"")).is_err());
        assert!(parse_polynomial(&ok.replace("[0,1]", "[2,0]")).is_err());
    }

    #[test]
    fn plmap_format() {
        let phi = parse_plmap(r#"{"matrix":[[2,0],[0,2]],"shift":["0","1/2"]}"#).unwrap();
        assert_eq!(phi.apply(&[qi(1), qi(1)]).unwrap(), vec![qi(2), q(5, 2)]);
        assert_eq!(parse_plmap(&plmap_to_json(&phi).unwrap().to_string()).unwrap(), phi);
        assert!(parse_plmap(r#"{"matrix":[[1,0],[0]],"shift":["0","0"]}"#).is_err());
        assert!(parse_plmap(r#"{"matrix":[[1]],"shift":[]}"#).is_err());
    }

    #[test]
    fn fixture_round_trip() {
        for fx in [cubic_pencil(), projective_pencil(3)] {
            let back = parse_fixture(&fixture_to_json(&fx).to_string()).unwrap();
            assert_eq!(back, fx);
        }
    }

    #[test]
    fn measures_and_families() {
        let m = parse_measure(r#"{"type":"atomic","atoms":[{"anchor":["0","0"],"mass":"3/2"}]}"#).unwrap();
        assert_eq!(parse_measure(&measure_to_json(&m).to_string()).unwrap(), m);
        assert!(parse_measure(r#"{"type":"atomic","atoms":[{"anchor":["0"],"mass":"-1"}]}"#).is_err());
        let fam = r#"{"base":[["0","0"],["1","0"],["0","1"]],"bound":"1","members":[{"label":"a","parts":[
            {"pl":{"n":2,"terms":[{"exp":[0,0],"lift":"0"},{"exp":[1,0],"lift":"0"}]},
             "measure":{"type":"atomic","atoms":[{"anchor":["0","5"],"mass":"1"}]}}]}]}"#;
        let f = parse_family(fam).unwrap();
        assert_eq!(parse_family(&family_to_json(&f).to_string()).unwrap(), f);
        assert!(parse_family(&fam.replace("\"bound\":\"1\"", "\"bound\":\"1/2\"")).is_err());
    }

    #[test]
    fn reports_are_stable() {
        let f = square_curve();
        let s = crate::lattice::lower_hull_subdivision(&f);
        let v = crate::lattice::is_unimodular_triangulation(&s);
        let a = subdivision_to_json(&s, &v).to_string();
        assert_eq!(a, subdivision_to_json(&s, &v).to_string());
        assert_eq!(serde_json::from_str::<Value>(&a).unwrap().to_string(), a);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..7).prop_map(|(a, b)| q(a, b))
    }

    proptest! {
        #[test]
        fn lifted_round_trip(
            terms in prop::collection::btree_map((0i64..4, -2i64..3), (1i64..9, small_rational(), any::<bool>()), 1..8),
        ) {
            let terms: Vec<LiftedTerm> = terms
                .into_iter()
                .map(|((a, b), (c, v, irr))| LiftedTerm {
                    exp: vec![a, b],
                    coeff: if irr { FieldElement::quadratic(qi(c), v.clone(), 5) } else { FieldElement::from_int(c) },
                    lift: v,
                })
                .collect();
            let f = LiftedLaurentPolynomial::new(2, Field::Quadratic(5), terms).unwrap();
            prop_assert_eq!(parse_lifted(&lifted_to_json(&f).to_string()).unwrap(), f);
        }

        #[test]
        fn pl_function_round_trip(pieces in prop::collection::btree_map(prop::collection::vec(-3i64..4, 3), small_rational(), 1..6)) {
            let l = PlFunction::new(3, pieces.into_iter().map(|(linear, constant)| AffinePiece { linear, constant }).collect()).unwrap();
            prop_assert_eq!(parse_pl_function(&pl_function_to_json(&l).to_string()).unwrap(), l);
        }

        #[test]
        fn lebesgue_round_trip(cells in prop::collection::vec((prop::collection::vec(small_rational(), 2), small_rational()), 1..5)) {
            let m = ComplexMeasure::Lebesgue(cells.into_iter().map(|(v, d)| WeightedCell {
                vertices: vec![v.clone(), v.iter().map(|x| x + qi(1)).collect()],
                rays: vec![vec![qi(1), qi(0)]],
                density: d.abs(),
            }).collect());
            prop_assert_eq!(parse_measure(&measure_to_json(&m).to_string()).unwrap(), m);
        }

        #[test]
        fn field_element_strings(a in small_rational(), b in small_rational()) {
            let x = FieldElement::quadratic(a, b, 3);
            prop_assert_eq!(parse_field_element(&x.to_string()).unwrap(), x);
        }
    }
}
