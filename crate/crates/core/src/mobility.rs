//! Mobility certificates for pencils, cone-vertex sampling and the Noether–Fano comparison.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{MeasureError, MobilityError};
use crate::field::{FieldElement, Rational};
use crate::linalg::{nullspace, rank};
use crate::measures::{local_order, restrict_all, LocalChart};
use crate::pl::DilationFactor;
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystemSpec {
    /// The multiplier `N`: generators are sections of `L^⊗N`.
    pub n: u32,
    pub generators: Vec<Polynomial>,
    pub chart: LocalChart,
}

impl LinearSystemSpec {
    pub fn new(n: u32, generators: Vec<Polynomial>, chart: LocalChart) -> Result<Self, MobilityError> {
        if n == 0 {
            return Err(MobilityError::InvalidSystem("N must be positive".into()));
        }
        if generators.is_empty() {
            return Err(MobilityError::InvalidSystem("at least one generator required".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.nvars() != chart.n() {
                return Err(MobilityError::InvalidSystem(format!(
                    "generator {i} has {} variables, chart has {}",
                    g.nvars(),
                    chart.n()
                )));
            }
            if g.total_degree().is_some_and(|d| d > n) {
                return Err(MobilityError::InvalidSystem(format!("generator {i} has degree above N = {n}")));
            }
        }
        Ok(LinearSystemSpec { n, generators, chart })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobilityVerdict {
    pub mobile: bool,
    /// Nontrivial common factor (or the hypersurface equation) when not mobile.
    pub witness: Option<Polynomial>,
}

pub fn is_mobile_pencil(sys: &LinearSystemSpec) -> Result<MobilityVerdict, MobilityError> {
    if sys.generators.len() != 2 {
        return Err(MobilityError::UnsupportedRank(sys.generators.len()));
    }
    let (a, b) = (&sys.generators[0], &sys.generators[1]);
    let g = a.gcd(b);
    if !g.is_unit() {
        return Ok(MobilityVerdict { mobile: false, witness: Some(g) });
    }
    let f = sys.chart.f();
    if f.divides(a) || f.divides(b) {
        return Ok(MobilityVerdict { mobile: false, witness: Some(f.clone()) });
    }
    Ok(MobilityVerdict { mobile: true, witness: None })
}

pub fn member_orders(sys: &LinearSystemSpec) -> Result<Vec<u32>, MobilityError> {
    sys.generators.iter().map(|g| Ok(local_order(&sys.chart, g)?.determined()?)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericOrder {
    pub order: u32,
    /// Coefficients of the first sampled member attaining the minimum.
    pub coefficients: Vec<Rational>,
}

fn random_nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = loop {
        let x = rng.random_range(-9i64..=9);
        if x != 0 {
            break x;
        }
    };
    Rational::new(num.into(), rng.random_range(1i64..=9).into())
}

pub fn generic_member_order(sys: &LinearSystemSpec, trials: usize, seed: u64) -> Result<GenericOrder, MobilityError> {
    if trials == 0 {
        return Err(MobilityError::InvalidSystem("at least one trial required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<GenericOrder> = None;
    // restriction is linear in the section, so restrict the generators once per degree
    let mut restricted: BTreeMap<u32, Vec<Polynomial>> = BTreeMap::new();
    for _ in 0..trials {
        let c: Vec<Rational> = sys.generators.iter().map(|_| random_nonzero_rational(&mut rng)).collect();
        let combine = |gs: &[Polynomial]| {
            gs.iter()
                .zip(&c)
                .fold(Polynomial::zero(sys.chart.n()), |acc, (g, ci)| &acc + &g.scale(&FieldElement::rational(ci.clone())))
        };
        let d = sys.chart.truncation_for(&combine(&sys.generators));
        if let std::collections::btree_map::Entry::Vacant(e) = restricted.entry(d) {
            e.insert(restrict_all(&sys.chart, &sys.generators, d)?);
        }
        let k = combine(&restricted[&d]).order().ok_or(MeasureError::Undetermined(d))?;
        if best.as_ref().is_none_or(|b| k < b.order) {
            best = Some(GenericOrder { order: k, coefficients: c });
        }
    }
    Ok(best.expect("trials > 0"))
}

pub fn family_averaged_multiplicity(sys: &LinearSystemSpec) -> Result<Rational, MobilityError> {
    let orders = member_orders(sys)?;
    let sum: u64 = orders.iter().map(|&k| u64::from(k)).sum();
    Ok(Rational::new(sum.into(), (orders.len() as u64).into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    GenericMember,
    FamilyAverage,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::GenericMember => "generic-member",
            Convention::FamilyAverage => "family-average",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "generic-member" => Some(Convention::GenericMember),
            "family-average" => Some(Convention::FamilyAverage),
            _ => None,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Lower bound `mult/N` for the mobility threshold under one convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobilityCertificate {
    pub system: LinearSystemSpec,
    pub convention: Convention,
    pub verdict: MobilityVerdict,
    pub member_orders: Vec<u32>,
    pub generic: GenericOrder,
    pub family_average: Rational,
    pub ratio: Rational,
}

impl MobilityCertificate {
    /// Multiplicity under the certificate's convention.
    pub fn multiplicity(&self) -> Rational {
        match self.convention {
            Convention::GenericMember => Rational::from_integer(self.generic.order.into()),
            Convention::FamilyAverage => self.family_average.clone(),
        }
    }
}

pub fn certificate(
    sys: &LinearSystemSpec,
    convention: Convention,
    trials: usize,
    seed: u64,
) -> Result<MobilityCertificate, MobilityError> {
    let verdict = is_mobile_pencil(sys)?;
    if !verdict.mobile {
        let w = verdict.witness.as_ref().map(|p| p.to_string()).unwrap_or_default();
        return Err(MobilityError::NotMobile(format!("common factor {w}")));
    }
    let member_orders = member_orders(sys)?;
    let generic = generic_member_order(sys, trials, seed)?;
    let family_average = family_averaged_multiplicity(sys)?;
    let mut cert = MobilityCertificate {
        system: sys.clone(),
        convention,
        verdict,
        member_orders,
        generic,
        family_average,
        ratio: Rational::zero(),
    };
    cert.ratio = cert.multiplicity() / Rational::from_integer(sys.n.into());
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSample {
    pub point: Vec<FieldElement>,
    pub parameters: Vec<Rational>,
    /// Equation values at `o + s (p − o)`, one row per parameter.
    pub residuals: Vec<Vec<FieldElement>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeWitness {
    pub vertex: Vec<FieldElement>,
    pub samples: Vec<ConeSample>,
    pub attempts: usize,
    pub verified: bool,
}

const LINE_PARAMETERS: [(i64, i64); 5] = [(-2, 1), (-1, 2), (1, 3), (2, 1), (5, 1)];

/// Substitutes univariate polynomials for every variable of `f`.
fn compose(f: &Polynomial, subs: &[Polynomial]) -> Polynomial {
    let mut out = Polynomial::zero(1);
    for (e, c) in f.terms() {
        let mut t = Polynomial::constant(1, c.clone());
        for (sub, &k) in subs.iter().zip(e) {
            if k > 0 {
                t = &t * &sub.pow(k);
            }
        }
        out = &out + &t;
    }
    out
}

/// Coefficients of a univariate polynomial, split into rational and irrational parts.
fn rational_parts(p: &Polynomial) -> Vec<Vec<Rational>> {
    let deg = p.total_degree().unwrap_or(0) as usize;
    let coeffs: Vec<FieldElement> = (0..=deg).map(|k| p.coeff(&[k as u32])).collect();
    let re: Vec<Rational> = coeffs.iter().map(|c| c.rational_part().clone()).collect();
    let im: Vec<Rational> = coeffs.iter().map(|c| c.irrational_part().clone()).collect();
    vec![re, im]
}

fn eval_rational(p: &[Rational], t: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
}

fn divisors(n: &BigInt, cap: u64) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > cap {
        return None;
    }
    Some((1..=n).filter(|d| n % d == 0).map(BigInt::from).collect())
}

/// Rational roots of an integer-scaled polynomial (ascending coefficients), by the rational root theorem.
fn rational_roots(p: &[Rational]) -> Option<Vec<Rational>> {
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let hi = ints.iter().rposition(|c| !c.is_zero())?;
    let lo = ints.iter().position(|c| !c.is_zero())?;
    let mut roots = Vec::new();
    if lo > 0 {
        roots.push(Rational::zero());
    }
    if hi == lo {
        return Some(roots);
    }
    let nums = divisors(&ints[lo], 1_000_000)?;
    let dens = divisors(&ints[hi], 1_000_000)?;
    for a in &nums {
        for b in &dens {
            for s in [a.clone(), -a.clone()] {
                let t = Rational::new(s, b.clone());
                if !roots.contains(&t) && eval_rational(p, &t).is_zero() {
                    roots.push(t);
                }
            }
        }
    }
    Some(roots)
}

fn random_sparse(rng: &mut ChaCha8Rng, dim: usize) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..dim).map(|_| if rng.random_bool(0.5) { 0 } else { rng.random_range(-2i64..=2) }).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Samples points `p` of the projective variety and checks that each line `o p` lies on it.
pub fn cone_vertex_check(
    equations: &[Polynomial],
    o: &[FieldElement],
    samples: usize,
    seed: u64,
) -> Result<ConeWitness, MobilityError> {
    let k = o.len();
    if equations.is_empty() || equations.iter().any(|e| e.nvars() != k) {
        return Err(MobilityError::InvalidSystem("equations must share the vertex's coordinates".into()));
    }
    if o.iter().all(|x| x.is_zero()) {
        return Err(MobilityError::InvalidSystem("vertex must be a nonzero vector".into()));
    }
    if let Some(e) = equations.iter().find(|e| !e.eval(o).is_zero()) {
        return Err(MobilityError::PointNotOnVariety(format!("equation {e} does not vanish at the vertex")));
    }
    let (linear, nonlinear): (Vec<&Polynomial>, Vec<&Polynomial>) =
        equations.iter().partition(|e| e.total_degree().is_some_and(|d| d <= 1));
    // parametrize the linear span cut out by the degree-one equations
    let rows: Vec<Vec<FieldElement>> =
        linear.iter().map(|e| (0..k).map(|i| e.coeff(&unit_exp(k, i))).collect()).collect();
    let basis: Vec<Vec<FieldElement>> = if rows.is_empty() {
        (0..k).map(|i| (0..k).map(|j| FieldElement::from_int(i64::from(i == j))).collect()).collect()
    } else {
        nullspace(&rows, k)
    };
    let r = basis.len();
    let param_point = |u: &[Rational]| -> Vec<FieldElement> {
        (0..k)
            .map(|i| {
                basis.iter().zip(u).fold(FieldElement::zero(), |acc, (b, ui)| acc + &b[i] * &FieldElement::rational(ui.clone()))
            })
            .collect()
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = 200 * samples.max(1);
    let mut attempts = 0;
    let mut found: Vec<(Vec<FieldElement>, Vec<Rational>)> = Vec::new();
    while found.len() < samples {
        if attempts >= budget {
            return Err(MobilityError::SamplingExhausted(attempts));
        }
        attempts += 1;
        let a: Vec<Rational> = random_sparse(&mut rng, r).into_iter().map(|x| Rational::from_integer(x.into())).collect();
        let b: Vec<Rational> = random_sparse(&mut rng, r).into_iter().map(|x| Rational::from_integer(x.into())).collect();
        let pa = param_point(&a);
        let pb = param_point(&b);
        let line: Vec<Polynomial> = (0..k)
            .map(|i| {
                let mut p = Polynomial::constant(1, pa[i].clone());
                p.add_term(vec![1], pb[i].clone());
                p
            })
            .collect();
        let polys: Vec<Vec<Rational>> = nonlinear.iter().flat_map(|e| rational_parts(&compose(e, &line))).collect();
        let nonzero: Vec<&Vec<Rational>> = polys.iter().filter(|p| p.iter().any(|c| !c.is_zero())).collect();
        let mut candidates: Vec<Vec<FieldElement>> = Vec::new();
        match nonzero.first() {
            None => candidates.push(pa.clone()),
            Some(first) => {
                for t in rational_roots(first).unwrap_or_default() {
                    if nonzero.iter().all(|p| eval_rational(p, &t).is_zero()) {
                        let tf = FieldElement::rational(t);
                        candidates.push(pa.iter().zip(&pb).map(|(x, y)| x + &(y * &tf)).collect());
                    }
                }
                // the point at infinity of the line
                candidates.push(pb.clone());
            }
        }
        for p in candidates {
            if rank(&[o.to_vec(), p.clone()]) < 2 || found.iter().any(|(q, _)| rank(&[q.clone(), p.clone()]) < 2) {
                continue;
            }
            if equations.iter().all(|e| e.eval(&p).is_zero()) {
                let params: Vec<Rational> = LINE_PARAMETERS.iter().map(|&(a, b)| Rational::new(a.into(), b.into())).collect();
                found.push((p, params));
                break;
            }
        }
    }
    let samples: Vec<ConeSample> = found
        .into_iter()
        .map(|(p, params)| {
            let residuals = params
                .iter()
                .map(|s| {
                    let s = FieldElement::rational(s.clone());
                    let x: Vec<FieldElement> = o.iter().zip(&p).map(|(oi, pi)| oi + &(&s * &(pi - oi))).collect();
                    equations.iter().map(|e| e.eval(&x)).collect()
                })
                .collect();
            ConeSample { point: p, parameters: params, residuals }
        })
        .collect();
    let verified = samples.iter().all(|s| s.residuals.iter().flatten().all(|r| r.is_zero()));
    Ok(ConeWitness { vertex: o.to_vec(), samples, attempts, verified })
}

fn unit_exp(k: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; k];
    e[i] = 1;
    e
}

/// `α = 1 + √2`, so that `α² = 3 + 2√2`.
pub fn segre_alpha() -> FieldElement {
    FieldElement::quadratic(Rational::one(), Rational::one(), 2)
}

/// `x0⁴ + x0x4³ + x1⁴ − 6x1²x2² + x2⁴ + x3⁴ + x3³x4` on ℙ⁴.
pub fn segre_quartic() -> Polynomial {
    Polynomial::from_int_terms(
        5,
        &[
            (&[4, 0, 0, 0, 0], 1),
            (&[1, 0, 0, 0, 3], 1),
            (&[0, 4, 0, 0, 0], 1),
            (&[0, 2, 2, 0, 0], -6),
            (&[0, 0, 4, 0, 0], 1),
            (&[0, 0, 0, 4, 0], 1),
            (&[0, 0, 0, 3, 1], 1),
        ],
    )
}

/// The cone `x0⁴ + x0x4³ + x3⁴ + x3³x4` on ℙ⁴.
pub fn segre_cone() -> Polynomial {
    Polynomial::from_int_terms(
        5,
        &[(&[4, 0, 0, 0, 0], 1), (&[1, 0, 0, 0, 3], 1), (&[0, 0, 0, 4, 0], 1), (&[0, 0, 0, 3, 1], 1)],
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegreReport {
    pub alpha: FieldElement,
    pub alpha_squared: FieldElement,
    /// `α⁴ − 6α² + 1`.
    pub alpha_identity: FieldElement,
    pub residual: Polynomial,
    pub independent_of_x2: bool,
    pub matches_cone: bool,
}

pub fn segre_section() -> SegreReport {
    let alpha = segre_alpha();
    let a2 = alpha.pow(2);
    let identity = alpha.pow(4) - &a2 * &FieldElement::from_int(6) + FieldElement::from_int(1);
    let sub = Polynomial::var(5, 2).scale(&alpha);
    let residual = segre_quartic().substitute(1, &sub, None);
    SegreReport {
        alpha,
        alpha_squared: a2,
        alpha_identity: identity,
        independent_of_x2: !residual.uses_var(2),
        matches_cone: residual == segre_cone(),
        residual,
    }
}

/// The vertex `[0 : α : 1 : 0 : 0]` and the equations `{F, x1 − αx2}`.
pub fn segre_cone_data() -> (Vec<Polynomial>, Vec<FieldElement>) {
    let alpha = segre_alpha();
    let mut plane = Polynomial::var(5, 1);
    plane.add_term(vec![0, 0, 1, 0, 0], -alpha.clone());
    let o = vec![FieldElement::zero(), alpha, FieldElement::one(), FieldElement::zero(), FieldElement::zero()];
    (vec![segre_quartic(), plane], o)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    Certificate(Box<MobilityCertificate>),
    Exact(Rational),
}

impl Bound {
    pub fn value(&self) -> Rational {
        match self {
            Bound::Certificate(c) => c.ratio.clone(),
            Bound::Exact(r) => r.clone(),
        }
    }

    fn convention(&self) -> Option<Convention> {
        match self {
            Bound::Certificate(c) => Some(c.convention),
            Bound::Exact(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoetherFanoReport {
    pub m_y: Rational,
    pub m_x: Rational,
    pub delta: BigInt,
    pub holds: bool,
    pub caveat: &'static str,
}

pub const ONE_SIDED_CAVEAT: &str =
    "certificates are lower bounds; a failed comparison of lower bounds rules out the map only when the Y bound is exact";

pub fn noether_fano_check(y: &Bound, x: &Bound, delta: &DilationFactor) -> Result<NoetherFanoReport, MobilityError> {
    if let (Some(cy), Some(cx)) = (y.convention(), x.convention()) {
        if cy != cx {
            return Err(MobilityError::ConventionMismatch(cy.name().into(), cx.name().into()));
        }
    }
    let (m_y, m_x) = (y.value(), x.value());
    Ok(NoetherFanoReport { holds: m_y >= m_x, m_y, m_x, delta: delta.0.clone(), caveat: ONE_SIDED_CAVEAT })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, qi};
    use crate::measures::chart_from_int_terms;

    /// f = w + z1^2 + z2^2 on (w, z1, z2)
    fn chart() -> LocalChart {
        chart_from_int_terms(3, &[(&[1, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1)], 0, Some(8)).unwrap()
    }

    fn var(i: usize) -> Polynomial {
        Polynomial::var(3, i)
    }

    fn system(n: u32, gens: Vec<Polynomial>) -> LinearSystemSpec {
        LinearSystemSpec::new(n, gens, chart()).unwrap()
    }

    #[test]
    fn system_validation() {
        assert!(LinearSystemSpec::new(0, vec![var(1)], chart()).is_err());
        assert!(LinearSystemSpec::new(1, vec![], chart()).is_err());
        assert!(LinearSystemSpec::new(1, vec![var(1).pow(2)], chart()).is_err());
        assert!(LinearSystemSpec::new(1, vec![Polynomial::var(2, 0)], chart()).is_err());
    }

    #[test]
    fn pencils_and_common_factors() {
        assert!(is_mobile_pencil(&system(1, vec![var(1), var(2)])).unwrap().mobile);
        let l = &var(1) + &var(2);
        let v = is_mobile_pencil(&system(2, vec![var(1).pow(2), &var(1) * &l])).unwrap();
        assert!(!v.mobile);
        assert_eq!(v.witness, Some(var(1)));
        let f = chart().f().clone();
        assert!(!is_mobile_pencil(&system(2, vec![f, var(1)])).unwrap().mobile);
        assert!(matches!(
            is_mobile_pencil(&system(1, vec![var(0), var(1), var(2)])),
            Err(MobilityError::UnsupportedRank(3))
        ));
    }

    #[test]
    fn orders_and_conventions() {
        // w has order 2 on X, z1 order 1
        let sys = system(2, vec![var(0), var(1).pow(2)]);
        assert_eq!(member_orders(&sys).unwrap(), vec![2, 2]);
        let sys = system(2, vec![var(0).pow(2), var(1)]);
        assert_eq!(member_orders(&sys).unwrap(), vec![4, 1]);
        assert_eq!(family_averaged_multiplicity(&sys).unwrap(), q(5, 2));
        assert_eq!(generic_member_order(&sys, 5, 0).unwrap().order, 1);
        let fam = certificate(&sys, Convention::FamilyAverage, 5, 0).unwrap();
        assert_eq!(fam.ratio, q(5, 4));
        let gen = certificate(&sys, Convention::GenericMember, 5, 0).unwrap();
        assert_eq!(gen.ratio, q(1, 2));
        let bad = system(2, vec![var(1).pow(2), &var(1) * &var(2)]);
        assert!(matches!(certificate(&bad, Convention::FamilyAverage, 3, 0), Err(MobilityError::NotMobile(_))));
    }

    #[test]
    fn generic_order_is_seeded() {
        let sys = system(2, vec![var(0).pow(2), var(1)]);
        assert_eq!(generic_member_order(&sys, 4, 7).unwrap(), generic_member_order(&sys, 4, 7).unwrap());
    }

    #[test]
    fn rational_root_extraction() {
        // (t - 1/2)(t + 3) t = t^3 + 5/2 t^2 - 3/2 t
        let p = vec![qi(0), q(-3, 2), q(5, 2), qi(1)];
        let mut r = rational_roots(&p).unwrap();
        r.sort();
        assert_eq!(r, vec![qi(-3), qi(0), q(1, 2)]);
        assert_eq!(rational_roots(&[qi(1), qi(0), qi(1)]).unwrap(), vec![]);
    }

    #[test]
    fn segre_identity() {
        let r = segre_section();
        assert_eq!(r.alpha_squared, FieldElement::quadratic(qi(3), qi(2), 2));
        assert!(r.alpha_identity.is_zero());
        assert!(r.independent_of_x2);
        assert!(r.matches_cone);
    }

    #[test]
    fn quadric_tangent_section_is_a_cone() {
        // x0 x1 - x2 x3 with the tangent plane x1 = 0 at o = [1:0:0:0]
        let quadric = Polynomial::from_int_terms(4, &[(&[1, 1, 0, 0], 1), (&[0, 0, 1, 1], -1)]);
        let plane = Polynomial::var(4, 1);
        let o: Vec<FieldElement> = [1, 0, 0, 0].iter().map(|&x| FieldElement::from_int(x)).collect();
        let w = cone_vertex_check(&[quadric.clone(), plane], &o, 5, 0).unwrap();
        assert!(w.verified);
        assert_eq!(w.samples.len(), 5);
        // without the tangent plane the quadric is not a cone over o
        let w = cone_vertex_check(&[quadric], &o, 5, 0).unwrap();
        assert!(!w.verified);
    }

    #[test]
    fn vertex_must_lie_on_variety() {
        let quadric = Polynomial::from_int_terms(4, &[(&[1, 1, 0, 0], 1), (&[0, 0, 1, 1], -1)]);
        let o: Vec<FieldElement> = [1, 1, 0, 0].iter().map(|&x| FieldElement::from_int(x)).collect();
        assert!(matches!(cone_vertex_check(&[quadric], &o, 1, 0), Err(MobilityError::PointNotOnVariety(_))));
    }

    #[test]
    fn noether_fano_comparisons() {
        let one = DilationFactor(BigInt::from(8));
        let r = noether_fano_check(&Bound::Exact(qi(1)), &Bound::Exact(qi(1)), &one).unwrap();
        assert!(r.holds);
        let r = noether_fano_check(&Bound::Exact(qi(1)), &Bound::Exact(q(3, 2)), &one).unwrap();
        assert!(!r.holds);
        let sys = system(2, vec![var(0).pow(2), var(1)]);
        let a = Bound::Certificate(Box::new(certificate(&sys, Convention::FamilyAverage, 3, 0).unwrap()));
        let b = Bound::Certificate(Box::new(certificate(&sys, Convention::GenericMember, 3, 0).unwrap()));
        assert!(matches!(noether_fano_check(&a, &b, &one), Err(MobilityError::ConventionMismatch(..))));
        assert!(noether_fano_check(&a, &a, &one).unwrap().holds);
    }
}
