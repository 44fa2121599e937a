//! Sampled amoebas of plane curves and their distance to the tropical curve.
//!
//! The degeneration is `f_t = Σ a_j t^{v(j)} x^j` with `y = log|x| / log t`, so that as
//! `t → 0` the amoeba converges to the corner locus of `min_j (v(j) + ⟨j, y⟩)`.

use std::f64::consts::TAU;

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::AmoebaError;
use crate::field::{rational_to_f64, Rational};
use crate::lattice::LiftedLaurentPolynomial;
use crate::pl::{corner_locus, tropicalize, CornerLocus};

/// Axis-aligned box `[lo, hi]²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub lo: f64,
    pub hi: f64,
}

impl BoundingBox {
    pub fn square(r: f64) -> Self {
        BoundingBox { lo: -r, hi: r }
    }

    pub fn contains(&self, p: &[f64; 2]) -> bool {
        p.iter().all(|&x| x >= self.lo && x <= self.hi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmoebaSample {
    pub t: f64,
    pub points: Vec<[f64; 2]>,
    pub seed: u64,
    pub fibers: usize,
}

impl AmoebaSample {
    /// `t,y1,y2` rows with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,y1,y2\n");
        for p in &self.points {
            s.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", self.t, p[0], p[1]));
        }
        s
    }
}

/// Retries per fiber before giving up on the whole sample.
const FIBER_RETRIES: usize = 32;
const RESIDUAL_TOL: f64 = 1e-8;

struct Term {
    exp: [i64; 2],
    coeff: Complex<f64>,
}

fn numeric_terms(f: &LiftedLaurentPolynomial, t: f64) -> Vec<Term> {
    f.terms()
        .iter()
        .map(|term| Term {
            exp: [term.exp[0], term.exp[1]],
            coeff: Complex::new(term.coeff.to_f64() * t.powf(rational_to_f64(&term.lift)), 0.0),
        })
        .collect()
}

fn cpow(z: Complex<f64>, k: i64) -> Complex<f64> {
    z.powi(k as i32)
}

/// Roots of `Σ c_k z^k` (ascending coefficients) from the companion matrix, polished by Newton steps.
fn polynomial_roots(c: &[Complex<f64>]) -> Vec<Complex<f64>> {
    let Some(d) = c.iter().rposition(|x| x.norm() > 0.0) else { return Vec::new() };
    if d == 0 {
        return Vec::new();
    }
    let lead = c[d];
    let mut m = DMatrix::<Complex<f64>>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = Complex::new(1.0, 0.0);
    }
    for i in 0..d {
        m[(i, d - 1)] = -c[i] / lead;
    }
    let Some(eig) = m.schur().eigenvalues() else { return Vec::new() };
    eig.iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..3 {
                let (mut p, mut dp) = (Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
                for &ck in c[..=d].iter().rev() {
                    dp = dp * z + p;
                    p = p * z + ck;
                }
                if dp.norm() == 0.0 {
                    break;
                }
                z -= p / dp;
            }
            z
        })
        .collect()
}

/// Torus roots on one fiber: `fixed` is the value of the other coordinate.
fn fiber_points(terms: &[Term], solve: usize, fixed: Complex<f64>, log_t: f64) -> Vec<[f64; 2]> {
    let other = 1 - solve;
    let lo = terms.iter().map(|t| t.exp[solve]).min().expect("terms");
    let hi = terms.iter().map(|t| t.exp[solve]).max().expect("terms");
    let mut c = vec![Complex::new(0.0, 0.0); (hi - lo + 1) as usize];
    for t in terms {
        c[(t.exp[solve] - lo) as usize] += t.coeff * cpow(fixed, t.exp[other]);
    }
    let mut out = Vec::new();
    for z in polynomial_roots(&c) {
        if z.norm() == 0.0 || !z.re.is_finite() || !z.im.is_finite() {
            continue;
        }
        let mut x = [Complex::new(0.0, 0.0); 2];
        x[solve] = z;
        x[other] = fixed;
        let values: Vec<Complex<f64>> = terms.iter().map(|t| t.coeff * cpow(x[0], t.exp[0]) * cpow(x[1], t.exp[1])).collect();
        let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let residual = values.iter().sum::<Complex<f64>>().norm();
        if residual <= RESIDUAL_TOL * scale {
            out.push([x[0].norm().ln() / log_t, x[1].norm().ln() / log_t]);
        }
    }
    out
}

/// Samples `fibers` random fibers over the box, each drawn from its own ChaCha stream.
pub fn sample_amoeba(
    f: &LiftedLaurentPolynomial,
    t: f64,
    fibers: usize,
    seed: u64,
    bbox: BoundingBox,
) -> Result<AmoebaSample, AmoebaError> {
    if f.n() != 2 {
        return Err(AmoebaError::Precondition(format!("curves only, got n = {}", f.n())));
    }
    if f.terms().len() < 2 {
        return Err(AmoebaError::NoRoots);
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(AmoebaError::Precondition(format!("t = {t} is outside (0, 1)")));
    }
    if bbox.lo >= bbox.hi {
        return Err(AmoebaError::Precondition("empty bounding box".into()));
    }
    let terms = numeric_terms(f, t);
    let span = |i: usize| {
        let e: Vec<i64> = terms.iter().map(|x| x.exp[i]).collect();
        e.iter().max().unwrap() - e.iter().min().unwrap()
    };
    let solve = if span(1) > 0 { 1 } else { 0 };
    let log_t = t.ln();
    let per_fiber: Vec<Result<Vec<[f64; 2]>, AmoebaError>> = (0..fibers)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            for _ in 0..FIBER_RETRIES {
                let y: f64 = rng.random_range(bbox.lo..=bbox.hi);
                let theta: f64 = rng.random_range(0.0..TAU);
                let fixed = Complex::from_polar(t.powf(y), theta);
                let pts = fiber_points(&terms, solve, fixed, log_t);
                if !pts.is_empty() {
                    return Ok(pts);
                }
            }
            Err(AmoebaError::BudgetExhausted(FIBER_RETRIES))
        })
        .collect();
    let mut points = Vec::new();
    for r in per_fiber {
        points.extend(r?);
    }
    points.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    Ok(AmoebaSample { t, points, seed, fibers })
}

fn dist_segment(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let s = if len2 == 0.0 { 0.0 } else { (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0) };
    (p[0] - a[0] - s * d[0]).hypot(p[1] - a[1] - s * d[1])
}

/// `lower = None` gives a full line, `Some(0.0)` a ray.
fn dist_line(p: [f64; 2], a: [f64; 2], d: [f64; 2], lower: Option<f64>) -> f64 {
    let len2 = d[0] * d[0] + d[1] * d[1];
    let mut s = ((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2;
    if let Some(lo) = lower {
        s = s.max(lo);
    }
    (p[0] - a[0] - s * d[0]).hypot(p[1] - a[1] - s * d[1])
}

fn to_pt(v: &[Rational]) -> [f64; 2] {
    [rational_to_f64(&v[0]), rational_to_f64(&v[1])]
}

/// Euclidean distance from `p` to the nearest piece of a plane corner locus.
pub fn distance_to_locus(p: [f64; 2], locus: &CornerLocus) -> f64 {
    let exact = [Rational::from_float(p[0]), Rational::from_float(p[1])];
    let mut best = f64::INFINITY;
    for piece in &locus.pieces {
        if let [Some(x), Some(y)] = &exact {
            if piece.region.contains(&[x.clone(), y.clone()]) {
                return 0.0;
            }
        }
        let vr = &piece.vrep;
        let verts: Vec<[f64; 2]> = vr.vertices.iter().map(|v| to_pt(v)).collect();
        for (i, a) in verts.iter().enumerate() {
            best = best.min(dist_segment(p, *a, *a));
            for b in &verts[i + 1..] {
                best = best.min(dist_segment(p, *a, *b));
            }
            for r in &vr.rays {
                best = best.min(dist_line(p, *a, to_pt(r), Some(0.0)));
            }
            for l in &vr.lineality {
                best = best.min(dist_line(p, *a, to_pt(l), None));
            }
        }
    }
    best
}

/// One-sided distance from the in-box sample points to the locus; `None` if nothing is in the box.
pub fn hausdorff_to_tropical(sample: &AmoebaSample, locus: &CornerLocus, bbox: BoundingBox) -> Option<f64> {
    let inside: Vec<[f64; 2]> = sample.points.iter().copied().filter(|p| bbox.contains(p)).collect();
    if inside.is_empty() || locus.is_empty() {
        return None;
    }
    Some(inside.par_iter().map(|&p| distance_to_locus(p, locus)).reduce(|| 0.0, f64::max))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileEntry {
    pub t: f64,
    pub distance: f64,
    pub inlier_fraction: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceProfile {
    pub bbox: BoundingBox,
    pub entries: Vec<ProfileEntry>,
}

impl ConvergenceProfile {
    /// Each distance is at most `(1 + tol)` times the previous one.
    pub fn non_increasing_within(&self, tol: f64) -> bool {
        self.entries.windows(2).all(|w| w[1].distance <= (1.0 + tol) * w[0].distance)
    }

    pub fn final_distance(&self) -> Option<f64> {
        self.entries.last().map(|e| e.distance)
    }
}

pub fn convergence_profile(
    f: &LiftedLaurentPolynomial,
    ts: &[f64],
    fibers: usize,
    seed: u64,
    bbox: BoundingBox,
) -> Result<ConvergenceProfile, AmoebaError> {
    if ts.is_empty() || ts.windows(2).any(|w| w[1] >= w[0]) {
        return Err(AmoebaError::Precondition("t values must be strictly decreasing".into()));
    }
    let locus = corner_locus(&tropicalize(f));
    if locus.is_empty() {
        return Err(AmoebaError::NoRoots);
    }
    let mut entries = Vec::new();
    for &t in ts {
        let sample = sample_amoeba(f, t, fibers, seed, bbox)?;
        let inside = sample.points.iter().filter(|p| bbox.contains(p)).count();
        let distance = hausdorff_to_tropical(&sample, &locus, bbox).unwrap_or(0.0);
        entries.push(ProfileEntry {
            t,
            distance,
            inlier_fraction: if sample.points.is_empty() { 0.0 } else { inside as f64 / sample.points.len() as f64 },
            points: sample.points.len(),
        });
    }
    Ok(ConvergenceProfile { bbox, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::qi;
    use crate::pl::PlFunction;

    fn line() -> LiftedLaurentPolynomial {
        LiftedLaurentPolynomial::from_ints(2, &[(&[0, 0], 1, qi(0)), (&[1, 0], 1, qi(0)), (&[0, 1], 1, qi(0))]).unwrap()
    }

    fn tropical_line() -> CornerLocus {
        corner_locus(&PlFunction::from_ints(2, &[(&[0, 0], qi(0)), (&[1, 0], qi(0)), (&[0, 1], qi(0))]).unwrap())
    }

    #[test]
    fn companion_roots() {
        // (z - 2)(z + 3) = z^2 + z - 6
        let c = [Complex::new(-6.0, 0.0), Complex::new(1.0, 0.0), Complex::new(1.0, 0.0)];
        let mut r: Vec<f64> = polynomial_roots(&c).iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        assert!((r[0] + 3.0).abs() < 1e-12 && (r[1] - 2.0).abs() < 1e-12);
        assert!(polynomial_roots(&[Complex::new(1.0, 0.0)]).is_empty());
    }

    #[test]
    fn preconditions() {
        let bbox = BoundingBox::square(3.0);
        let mono = LiftedLaurentPolynomial::from_ints(2, &[(&[5, 0], 1, qi(0))]).unwrap();
        assert_eq!(sample_amoeba(&mono, 0.1, 10, 0, bbox), Err(AmoebaError::NoRoots));
        assert!(matches!(sample_amoeba(&line(), 1.0, 10, 0, bbox), Err(AmoebaError::Precondition(_))));
        let one_d = LiftedLaurentPolynomial::from_ints(1, &[(&[0], 1, qi(0)), (&[1], 1, qi(0))]).unwrap();
        assert!(matches!(sample_amoeba(&one_d, 0.1, 10, 0, bbox), Err(AmoebaError::Precondition(_))));
        assert!(matches!(
            convergence_profile(&line(), &[0.1, 0.2], 10, 0, bbox),
            Err(AmoebaError::Precondition(_))
        ));
    }

    #[test]
    fn vertical_line_amoeba() {
        let f = LiftedLaurentPolynomial::from_ints(2, &[(&[0, 0], 1, qi(0)), (&[1, 0], 1, qi(0))]).unwrap();
        let s = sample_amoeba(&f, 0.1, 200, 0, BoundingBox::square(3.0)).unwrap();
        assert_eq!(s.points.len(), 200);
        assert!(s.points.iter().all(|p| p[0].abs() < 1e-12));
    }

    #[test]
    fn sampling_is_deterministic() {
        let bbox = BoundingBox::square(3.0);
        let a = sample_amoeba(&line(), 0.1, 300, 7, bbox).unwrap();
        let b = sample_amoeba(&line(), 0.1, 300, 7, bbox).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_ne!(a.points, sample_amoeba(&line(), 0.1, 300, 8, bbox).unwrap().points);
    }

    #[test]
    fn point_to_locus_distances() {
        let locus = tropical_line();
        assert_eq!(distance_to_locus([2.0, 0.0], &locus), 0.0);
        assert_eq!(distance_to_locus([-1.5, -1.5], &locus), 0.0);
        assert!((distance_to_locus([1.0, 1.0], &locus) - 1.0).abs() < 1e-12);
        assert!((distance_to_locus([-1.0, 0.0], &locus) - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn on_locus_samples_have_zero_distance() {
        let sample = AmoebaSample { t: 0.1, points: vec![[0.0, 0.0], [1.0, 0.0], [0.0, 2.5], [-1.0, -1.0]], seed: 0, fibers: 4 };
        let d = hausdorff_to_tropical(&sample, &tropical_line(), BoundingBox::square(3.0)).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn line_amoeba_is_close_at_small_t() {
        let bbox = BoundingBox::square(3.0);
        let s = sample_amoeba(&line(), 0.1, 2000, 0, bbox).unwrap();
        let d = hausdorff_to_tropical(&s, &tropical_line(), bbox).unwrap();
        assert!(d < 0.5, "distance {d}");
    }
}
