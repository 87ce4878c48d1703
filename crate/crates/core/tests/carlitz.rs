use carlitz_spiegel::carlitz::{carlitz_action, torsion_polynomial, ExpSeries};
use carlitz_spiegel::gf::Gf;
use carlitz_spiegel::poly::{irreducibles, APoly, Poly};
use proptest::prelude::*;

fn ap(s: &str, k: &Gf) -> APoly {
    Poly::parse(s, 'T', k).unwrap()
}

#[test]
fn phi_t_is_tx_plus_xq() {
    for q in [2u64, 3, 4, 5] {
        let k = Gf::new(q).unwrap();
        let xs = carlitz_action(&APoly::x(), &k).to_x_coeffs(&k);
        let mut want = vec![APoly::zero(); q as usize + 1];
        want[1] = APoly::x();
        want[q as usize] = APoly::one();
        assert_eq!(xs, want);
    }
}

#[test]
fn torsion_polynomial_of_t() {
    for q in [2u64, 3, 4] {
        let k = Gf::new(q).unwrap();
        let f = torsion_polynomial(&APoly::x(), &k).unwrap();
        assert_eq!(f.len(), q as usize);
        assert_eq!(f[0], APoly::x());
        assert!(f[1..q as usize - 1].iter().all(|c| c.is_zero()));
    }
}

#[test]
fn torsion_polynomial_over_f2_quadratic() {
    let k = Gf::new(2).unwrap();
    let p = ap("T^2+T+1", &k);
    let f = torsion_polynomial(&p, &k).unwrap();
    assert_eq!(f, vec![p.clone(), p, APoly::zero(), APoly::one()]);
}

#[test]
fn every_desk_prime_is_eisenstein_of_full_degree() {
    for (q, d) in [(2u64, 2usize), (2, 3), (3, 2), (4, 2), (2, 4)] {
        let k = Gf::new(q).unwrap();
        for p in irreducibles(&k, d) {
            let f = torsion_polynomial(&p, &k).unwrap();
            assert_eq!(f.len() - 1, q.pow(d as u32) as usize - 1);
        }
    }
}

#[test]
fn exp_coefficients() {
    let k = Gf::new(3).unwrap();
    let e = ExpSeries::new(3, &k);
    assert_eq!(e.factorial(0), &APoly::one());
    assert_eq!(e.factorial(1), &ap("T^3+2T", &k));
}

#[test]
fn exp_functional_equation_to_q_cubed() {
    for q in [2u64, 3, 4] {
        let k = Gf::new(q).unwrap();
        let e = ExpSeries::new(4, &k);
        for code in 1..q.pow(2) {
            assert!(e.satisfies_functional_equation(&APoly::from_code(code, q as u32), &k));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn action_is_a_ring_homomorphism(a in 0u64..729, b in 0u64..729) {
        let k = Gf::new(3).unwrap();
        let (a, b) = (APoly::from_code(a, 3), APoly::from_code(b, 3));
        let (pa, pb) = (carlitz_action(&a, &k), carlitz_action(&b, &k));
        prop_assert_eq!(carlitz_action(&a.mul(&b, &k), &k), pa.compose(&pb, &k));
        prop_assert_eq!(carlitz_action(&a.add(&b, &k), &k), pa.add(&pb, &k));
        prop_assert_eq!(pa.tau_degree(), a.deg());
    }
}
