use carlitz_spiegel::classgroup::{class_group, p_torsion_dlogs, verify_witness, ClassGroupConfig};
use carlitz_spiegel::differentials::OmegaR;
use carlitz_spiegel::frame::Frame;
use carlitz_spiegel::gf::Gf;
use carlitz_spiegel::ideals::split_prime;
use carlitz_spiegel::infinity::InfinitePlaces;
use carlitz_spiegel::linalg::rank_of;
use carlitz_spiegel::norm::NormEvaluator;
use carlitz_spiegel::poly::{APoly, Poly};
use carlitz_spiegel::riemann_roch::pole_basis;
use carlitz_spiegel::tower::{FieldTower, PrimeData};
use carlitz_spiegel::units::{cyclotomic_unit, cyclotomic_units, dlog, dlog_matrix, expected_rank, saturate_units, unit_module, unit_profile};
use carlitz_spiegel::zeta::{genus, zeta_numerator};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tower(q: u64, p: &str) -> FieldTower {
    FieldTower::new(PrimeData::parse(q, p).unwrap()).unwrap()
}

fn ap(s: &str, t: &FieldTower) -> APoly {
    Poly::parse(s, 'T', t.k()).unwrap()
}

#[test]
fn cyclotomic_unit_cocycle() {
    let t = tower(3, "T^2+1");
    let k = t.k();
    let (a, b) = (ap("T+1", &t), ap("T+2", &t));
    let lhs = cyclotomic_unit(&t, &a.mul(&b, k));
    let rhs = t.mul(&t.apply(t.galois(&b).unwrap(), &cyclotomic_unit(&t, &a)), &cyclotomic_unit(&t, &b));
    assert_eq!(lhs, rhs);
    assert_eq!(cyclotomic_unit(&t, &APoly::one()), t.one());
    for u in cyclotomic_units(&t).unwrap().units {
        assert!(t.norm(&u).is_one());
    }
}

#[test]
fn saturation_reaches_the_expected_rank_and_is_idempotent() {
    for (q, p) in [(2, "T^2+T+1"), (3, "T^2+1"), (2, "T^3+T+1"), (4, "T^2+T+2")] {
        let t = tower(q, p);
        let om = OmegaR::new(&t);
        let frame = Frame::new(&om);
        let set = saturate_units(&om, &frame, &cyclotomic_units(&t).unwrap()).unwrap();
        assert_eq!(set.len(), expected_rank(&t));
        let again = saturate_units(&om, &frame, &set).unwrap();
        assert_eq!(again.units, set.units);
        assert_eq!(unit_module(&om, &frame, &set).unwrap().eigen_dims(), unit_profile(&t));
    }
    assert_eq!(expected_rank(&tower(2, "T^2+T+1")), 2);
}

#[test]
fn multiplying_by_a_pth_power_keeps_the_span() {
    let t = tower(3, "T^2+T+2");
    let om = OmegaR::new(&t);
    let frame = Frame::new(&om);
    let base = saturate_units(&om, &frame, &cyclotomic_units(&t).unwrap()).unwrap();
    let mut twisted = base.clone();
    let v3 = t.pow(&base.units[1], 3);
    twisted.units[0] = t.mul(&base.units[0], &v3);
    twisted.inverses[0] = t.mul(&base.inverses[0], &t.pow(&base.inverses[1], 3));
    let out = saturate_units(&om, &frame, &twisted).unwrap();
    let fp = Gf::prime(3).unwrap();
    let a = dlog_matrix(&om, &frame, &base).unwrap();
    let b = dlog_matrix(&om, &frame, &out).unwrap();
    let both: Vec<Vec<u32>> = a.iter().chain(&b).cloned().collect();
    assert_eq!(rank_of(&both, &fp), base.len());
}

#[test]
fn dlog_examples() {
    let t = tower(2, "T^2+T+1");
    let om = OmegaR::new(&t);
    assert!(dlog(&om, &t.one()).unwrap().is_zero());
    let u = t.add(&t.lambda(), &t.from_a(APoly::x()));
    let v = cyclotomic_units(&t).unwrap().units[1].clone();
    let du = dlog(&om, &u).unwrap();
    assert_eq!(om.cartier(&du).unwrap(), du);
    let uv = dlog(&om, &t.mul(&u, &v)).unwrap();
    assert_eq!(uv, om.add(&du, &dlog(&om, &v).unwrap()));
    assert!(dlog(&om, &t.lambda()).is_err());
}

#[test]
fn splitting_examples() {
    let t = tower(2, "T^2+T+1");
    for under in ["T", "T+1"] {
        let primes = split_prime(&t, &ap(under, &t)).unwrap();
        assert_eq!(primes.len(), 1);
        assert_eq!(primes[0].residue_degree, 3);
    }
    let q = split_prime(&t, t.prime_data().prime()).unwrap();
    assert_eq!(q.len(), 1);
    assert_eq!(q[0].valuation(&t, &t.lambda()), 1);
    assert_eq!(q[0].valuation(&t, &t.from_a(t.prime_data().prime().clone())), t.degree());
}

#[test]
fn zeta_examples() {
    let z = zeta_numerator(&tower(2, "T^2+T+1")).unwrap();
    assert_eq!((z.genus, z.coeffs.clone()), (0, vec![1]));
    let z = zeta_numerator(&tower(2, "T^3+T+1")).unwrap();
    assert_eq!(z.genus, 3);
    assert_eq!(z.coeffs.len(), 7);
    for i in 0..=3 {
        assert_eq!(z.coeffs[6 - i], 2i128.pow(3 - i as u32) * z.coeffs[i]);
    }
    assert_eq!(genus(4, 2), 5);
    assert_eq!(genus(2, 4), 14);
}

#[test]
fn genus_zero_class_group_is_trivial() {
    let t = tower(2, "T^2+T+1");
    let om = OmegaR::new(&t);
    let frame = Frame::new(&om);
    let units = saturate_units(&om, &frame, &cyclotomic_units(&t).unwrap()).unwrap();
    let z = zeta_numerator(&t).unwrap();
    let c = class_group(&om, &units, &z, &ClassGroupConfig::default()).unwrap();
    assert_eq!(c.pic_order(), BigInt::from(1));
    assert_eq!(c.cl0_order, BigInt::from(1));
    assert!(p_torsion_dlogs(&om, &c).unwrap().is_empty());
}

#[test]
fn class_number_matches_zeta_for_cubics() {
    let t = tower(2, "T^3+T+1");
    let om = OmegaR::new(&t);
    let frame = Frame::new(&om);
    let units = saturate_units(&om, &frame, &cyclotomic_units(&t).unwrap()).unwrap();
    let z = zeta_numerator(&t).unwrap();
    let c = class_group(&om, &units, &z, &ClassGroupConfig::default()).unwrap();
    assert_eq!(c.cl0_order, BigInt::from(z.class_number()));
    assert_eq!(z.class_number(), 71);
}

#[test]
fn two_torsion_witnesses_over_f4() {
    let t = tower(4, "T^2+T+2");
    let om = OmegaR::new(&t);
    let frame = Frame::new(&om);
    let units = saturate_units(&om, &frame, &cyclotomic_units(&t).unwrap()).unwrap();
    let z = zeta_numerator(&t).unwrap();
    let c = class_group(&om, &units, &z, &ClassGroupConfig::default()).unwrap();
    assert_eq!(c.p_rank(2), 4);
    assert_eq!(c.witnesses.len(), 4);
    let dl = p_torsion_dlogs(&om, &c).unwrap();
    for (w, d) in c.witnesses.iter().zip(&dl) {
        verify_witness(&t, &c, w).unwrap();
        assert_eq!(om.cartier(d).unwrap(), *d);
        let alpha = c.witness_element(&t, w);
        let u = &units.units[0];
        let shifted = om.dlog(&t.to_l(&t.mul(&alpha, u))).unwrap();
        assert_eq!(shifted, om.add(d, &dlog(&om, u).unwrap()));
    }
}

#[test]
fn riemann_roch_dimensions() {
    let t = tower(2, "T^3+T^2+1");
    let inf = InfinitePlaces::new(&t);
    let g = genus(2, 3);
    for m in [2 * g - 1, 2 * g + 4] {
        let b = pole_basis(&t, &inf, g, 0, m).unwrap();
        assert_eq!(b.dim(), m + 1 - g);
        let gaps = (1..=m).filter(|p| !b.pole_orders().contains(p)).count();
        assert_eq!(gaps, g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn interpolated_norm_matches_determinant(seed in any::<u64>()) {
        let t = tower(3, "T^2+2T+2");
        let inf = InfinitePlaces::new(&t);
        let ev = NormEvaluator::new(&t, &inf, 120).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = t.from_coords((0..t.degree()).map(|_| APoly::from_code(rng.gen_range(1..81), 3)).collect());
        prop_assert_eq!(ev.norm(&x).unwrap().unwrap(), t.norm(&x));
    }

    #[test]
    fn norm_is_multiplicative(seed in any::<u64>()) {
        let t = tower(2, "T^3+T+1");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut r = || t.from_coords((0..t.degree()).map(|_| APoly::from_code(rng.gen_range(0..16), 2)).collect());
        let (x, y) = (r(), r());
        prop_assert_eq!(t.norm(&t.mul(&x, &y)), t.norm(&x).mul(&t.norm(&y), t.k()));
    }
}
