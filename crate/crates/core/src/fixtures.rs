//! Built-in fixtures: the cubic and quartic pencils, projective pencils, Frobenius maps,
//! amoeba curves and cone-vertex examples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{qi, FieldElement, Rational};
use crate::lattice::LiftedLaurentPolynomial;
use crate::measures::LocalChart;
use crate::mobility::LinearSystemSpec;
use crate::pl::{tropicalize_monomial_map, PlMap};
use crate::poly::Polynomial;

/// Seed of the pseudo-random coefficients of the cubic and quartic fixtures.
pub const FORM_SEED: u64 = 20_240_301;

/// A named linear system with a note on how genericity was checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobilityFixture {
    pub name: String,
    pub system: LinearSystemSpec,
    pub note: String,
}

fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![degree]];
    }
    let mut out = Vec::new();
    for k in (0..=degree).rev() {
        for mut rest in monomials(nvars - 1, degree - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// Homogeneous form with nonzero integer coefficients in `[-5, 5]`.
pub fn random_form(rng: &mut ChaCha8Rng, nvars: usize, degree: u32) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for e in monomials(nvars, degree) {
        let c = loop {
            let c = rng.random_range(-5i64..=5);
            if c != 0 {
                break c;
            }
        };
        p.add_term(e, FieldElement::from_int(c));
    }
    p
}

/// `q_1, …, q_d` in four affine coordinates, drawn from [`FORM_SEED`].
pub fn forms(degree: u32) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(FORM_SEED + u64::from(degree));
    (1..=degree).map(|k| random_form(&mut rng, 4, k)).collect()
}

fn hypersurface_pencil(degree: u32, name: &str) -> MobilityFixture {
    let q = forms(degree);
    let f = q.iter().fold(Polynomial::zero(4), |acc, x| &acc + x);
    let chart = LocalChart::new(f, 0, Some(8)).expect("q1 has a nonzero x1 coefficient");
    let system = LinearSystemSpec::new(2, vec![q[0].pow(2), q[1].clone()], chart).expect("degrees fit N = 2");
    MobilityFixture {
        name: name.into(),
        system,
        note: format!(
            "coefficients of q_1..q_{degree} drawn uniformly from [-5,5]\\{{0}} with ChaCha8 seed {}; \
             genericity is asserted through gcd(q_1^2, q_2) = 1, not proved",
            FORM_SEED + u64::from(degree)
        ),
    }
}

/// `f = q1 + q2 + q3` in the chart `x0 ≠ 0`, pencil `⟨q1², q2⟩`, `N = 2`.
pub fn cubic_pencil() -> MobilityFixture {
    hypersurface_pencil(3, "cubic")
}

/// `f = q1 + q2 + q3 + q4`, same pencil.
pub fn quartic_pencil() -> MobilityFixture {
    hypersurface_pencil(4, "quartic")
}

/// `ℙ^m` as the hyperplane `w = 0` in chart coordinates `(x1, …, xm, w)`.
pub fn projective_chart(m: usize) -> LocalChart {
    LocalChart::new(Polynomial::var(m + 1, m), m, None).expect("w is a smooth coordinate")
}

/// Hyperplane sections `⟨x1, x2⟩` through the origin of `ℙ^m`, `N = 1`.
pub fn projective_pencil(m: usize) -> MobilityFixture {
    frobenius_pencil(m, 1)
}

/// Pullback of the projective pencil along `x_i ↦ x_i^d`: `⟨x1^d, x2^d⟩`, `N = d`.
pub fn frobenius_pencil(m: usize, d: u32) -> MobilityFixture {
    assert!(m >= 2 && d >= 1);
    let gens = vec![Polynomial::var(m + 1, 0).pow(d), Polynomial::var(m + 1, 1).pow(d)];
    let system = LinearSystemSpec::new(d, gens, projective_chart(m)).expect("valid pencil");
    let name = if d == 1 { format!("projective-{m}") } else { format!("frobenius-{m}-{d}") };
    MobilityFixture { name, system, note: "hyperplane sections through o".into() }
}

/// Tropicalized Frobenius `y ↦ d·y` on `ℝ^m`.
pub fn frobenius_map(m: usize, d: i64) -> PlMap {
    let a = (0..m).map(|i| (0..m).map(|j| if i == j { d } else { 0 }).collect()).collect();
    tropicalize_monomial_map(a, vec![qi(0); m]).expect("square integer matrix")
}

pub fn tropical_line() -> LiftedLaurentPolynomial {
    LiftedLaurentPolynomial::from_ints(2, &[(&[0, 0], 1, qi(0)), (&[1, 0], 1, qi(0)), (&[0, 1], 1, qi(0))]).unwrap()
}

/// `1 + x1 + x2 + t·x1x2`.
pub fn square_curve() -> LiftedLaurentPolynomial {
    LiftedLaurentPolynomial::from_ints(
        2,
        &[(&[0, 0], 1, qi(0)), (&[1, 0], 1, qi(0)), (&[0, 1], 1, qi(0)), (&[1, 1], 1, qi(1))],
    )
    .unwrap()
}

/// `1 + x1 + x2 + t⁻¹·x1x2`.
pub fn conic_curve() -> LiftedLaurentPolynomial {
    LiftedLaurentPolynomial::from_ints(
        2,
        &[(&[0, 0], 1, qi(0)), (&[1, 0], 1, qi(0)), (&[0, 1], 1, qi(0)), (&[1, 1], 1, qi(-1))],
    )
    .unwrap()
}

pub fn amoeba_curves() -> Vec<(&'static str, LiftedLaurentPolynomial)> {
    vec![("line", tropical_line()), ("square", square_curve()), ("conic", conic_curve())]
}

fn int_point(xs: &[i64]) -> Vec<FieldElement> {
    xs.iter().map(|&x| FieldElement::from_int(x)).collect()
}

/// `x0x1 − x2x3` cut by its tangent plane `x1 = 0` at `[1:0:0:0]`.
pub fn quadric_tangent_cone() -> (Vec<Polynomial>, Vec<FieldElement>) {
    let quadric = Polynomial::from_int_terms(4, &[(&[1, 1, 0, 0], 1), (&[0, 0, 1, 1], -1)]);
    (vec![quadric, Polynomial::var(4, 1)], int_point(&[1, 0, 0, 0]))
}

/// Fermat cubic surface with the point `[1:−1:0:0]`, which is not a cone vertex.
pub fn fermat_wrong_vertex() -> (Vec<Polynomial>, Vec<FieldElement>) {
    let cubic = Polynomial::from_int_terms(4, &[(&[3, 0, 0, 0], 1), (&[0, 3, 0, 0], 1), (&[0, 0, 3, 0], 1), (&[0, 0, 0, 3], 1)]);
    (vec![cubic], int_point(&[1, -1, 0, 0]))
}

/// Origin of the chart tropical space of dimension `m`.
pub fn origin(m: usize) -> Vec<Rational> {
    vec![qi(0); m]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mobility::{family_averaged_multiplicity, is_mobile_pencil, member_orders};

    #[test]
    fn form_shapes() {
        let q = forms(3);
        assert_eq!(q.iter().map(|p| p.len()).collect::<Vec<_>>(), vec![4, 10, 20]);
        assert!(q.iter().enumerate().all(|(k, p)| p.is_homogeneous() && p.total_degree() == Some(k as u32 + 1)));
        assert_eq!(forms(3), forms(3));
    }

    #[test]
    fn cubic_fixture_is_generic_enough() {
        let fx = cubic_pencil();
        assert!(is_mobile_pencil(&fx.system).unwrap().mobile);
        assert_eq!(member_orders(&fx.system).unwrap(), vec![4, 2]);
        assert_eq!(family_averaged_multiplicity(&fx.system).unwrap(), qi(3));
    }

    #[test]
    fn projective_pencils() {
        for m in [2, 3] {
            let fx = projective_pencil(m);
            assert_eq!(member_orders(&fx.system).unwrap(), vec![1, 1]);
            let fr = frobenius_pencil(m, 3);
            assert_eq!(member_orders(&fr.system).unwrap(), vec![3, 3]);
        }
    }
}
