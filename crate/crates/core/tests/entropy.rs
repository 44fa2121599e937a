mod support;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use support::random_family;
use tropmob::entropy::{chain_inequality_check, diagonal_family, entropy_constant, mobility_family, MeasureFamily};
use tropmob::field::{q, qi, Rational};
use tropmob::fixtures::{cubic_pencil, frobenius_map, frobenius_pencil, origin, projective_pencil, MobilityFixture};
use tropmob::mobility::{certificate, noether_fano_check, Bound, Convention, MobilityCertificate};
use tropmob::pl::{dilation_factor, DilationFactor};

fn cert(fx: &MobilityFixture, conv: Convention) -> MobilityCertificate {
    certificate(&fx.system, conv, 16, 0).unwrap()
}

fn family(fx: &MobilityFixture, conv: Convention) -> MeasureFamily {
    let c = cert(fx, conv);
    let dim = c.system.chart.n() - 1;
    mobility_family(&[c], &[origin(dim)]).unwrap()
}

#[test]
fn lp_equals_member_max() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for i in 0..100 {
        let (fam, best) = random_family(&mut rng);
        let r = entropy_constant(&fam).unwrap();
        assert_eq!(r.c, best, "family {i}");
        assert_eq!(r.ent, &best / &fam.bound);
        assert!(r.agrees_with_oracle());
        assert_eq!(fam.members[r.witness].mass(), r.c);
    }
}

#[test]
fn mobility_families_have_unit_entropy() {
    for conv in [Convention::FamilyAverage, Convention::GenericMember] {
        for fx in [cubic_pencil(), projective_pencil(3), projective_pencil(2)] {
            let r = entropy_constant(&family(&fx, conv)).unwrap();
            assert_eq!(r.ent, qi(1), "{} {conv}", fx.name);
        }
    }
    let r = entropy_constant(&family(&cubic_pencil(), Convention::FamilyAverage)).unwrap();
    assert_eq!(r.c, q(3, 2));
}

#[test]
fn homogeneity() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let mut fams: Vec<MeasureFamily> = (0..10).map(|_| random_family(&mut rng).0).collect();
    fams.push(family(&cubic_pencil(), Convention::FamilyAverage));
    for fam in fams {
        let base = entropy_constant(&fam).unwrap();
        for d in [qi(2), qi(3), q(7, 2)] {
            let scaled = entropy_constant(&fam.scaled_measures(&d)).unwrap();
            assert_eq!(scaled.ent, &d * &base.ent);
            // scaling the bound along with the measures leaves ent unchanged
            assert_eq!(entropy_constant(&fam.scaled(&d)).unwrap().ent, base.ent);
        }
    }
}

#[test]
fn diagonal_averages_stay_in_the_family_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..50 {
        let (fam, _) = random_family(&mut rng);
        let sel: Vec<usize> = (0..rng.random_range(1..=6)).map(|_| rng.random_range(0..fam.members.len())).collect();
        let d = diagonal_family(&fam, &sel).unwrap();
        let expected: Rational = sel.iter().map(|&i| fam.members[i].mass()).sum::<Rational>() / Rational::from_integer((sel.len() as i64).into());
        assert_eq!(d.mass, expected);
        assert!(d.mass <= fam.bound);
    }
}

#[test]
fn frobenius_chain() {
    for m in [2usize, 3] {
        for d in [2u32, 3] {
            let phi = frobenius_map(m, i64::from(d));
            let delta = dilation_factor(&phi).unwrap();
            assert_eq!(delta.0, BigInt::from(d).pow(m as u32));
            let x = family(&projective_pencil(m), Convention::FamilyAverage);
            let y = family(&frobenius_pencil(m, d), Convention::FamilyAverage);
            let r = chain_inequality_check(&x, &y, &phi, &delta).unwrap();
            assert!(r.all_pass() && !r.transport.is_empty());
            assert_eq!((r.sup_x.clone(), r.sup_y.clone()), (qi(1), qi(1)));
            assert_eq!(r.homogeneity.scaled_ent, Rational::from_integer(delta.0.clone()));
        }
    }
}

#[test]
fn noether_fano_instances() {
    let p = Bound::Certificate(Box::new(cert(&projective_pencil(3), Convention::FamilyAverage)));
    let fr = Bound::Certificate(Box::new(cert(&frobenius_pencil(3, 2), Convention::FamilyAverage)));
    let delta = dilation_factor(&frobenius_map(3, 2)).unwrap();
    let r = noether_fano_check(&fr, &p, &delta).unwrap();
    assert!(r.holds);
    assert_eq!((r.m_y, r.m_x), (qi(1), qi(1)));
    let cubic = Bound::Certificate(Box::new(cert(&cubic_pencil(), Convention::FamilyAverage)));
    let r = noether_fano_check(&Bound::Exact(qi(1)), &cubic, &DilationFactor(BigInt::from(1))).unwrap();
    assert!(!r.holds);
    assert_eq!(r.m_x, q(3, 2));
    let generic = Bound::Certificate(Box::new(cert(&cubic_pencil(), Convention::GenericMember)));
    assert!(noether_fano_check(&p, &generic, &delta).is_err());
}
