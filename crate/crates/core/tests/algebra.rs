use carlitz_spiegel::gf::Gf;
use carlitz_spiegel::linalg::FqMatrix;
use carlitz_spiegel::poly::{irreducibles, APoly, Poly};
use carlitz_spiegel::snf::{smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn names(q: u64, d: usize) -> Vec<String> {
    let k = Gf::new(q).unwrap();
    irreducibles(&k, d).iter().map(|p| p.format("T")).collect()
}

#[test]
fn irreducible_lists() {
    assert_eq!(names(2, 1), ["T", "T+1"]);
    assert_eq!(names(2, 2), ["T^2+T+1"]);
    assert_eq!(names(3, 2), ["T^2+1", "T^2+T+2", "T^2+2T+2"]);
    assert_eq!(names(2, 3).len(), 2);
    assert_eq!(names(2, 4).len(), 3);
    assert_eq!(names(4, 2).len(), 6);
}

#[test]
fn listed_cubics_have_no_linear_factor() {
    for q in [2u64, 3, 4] {
        let k = Gf::new(q).unwrap();
        for p in irreducibles(&k, 3) {
            for g in irreducibles(&k, 1) {
                assert!(!g.divides(&p, &k), "{} divides {}", g.format("T"), p.format("T"));
            }
        }
    }
}

#[test]
fn snf_of_diag_2_3() {
    let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
    let s = smith_normal_form(&m);
    assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_remultiplies(entries in proptest::collection::vec(-30i64..30, 20)) {
        let rows: Vec<Vec<i64>> = entries.chunks(5).map(|c| c.to_vec()).collect();
        let m = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.s.clone());
        prop_assert!(s.u.det().abs().is_one());
        prop_assert!(s.v.det().abs().is_one());
        let d = s.diagonal();
        for w in d.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated(entries in proptest::collection::vec(0u32..4, 24), q in prop::sample::select(vec![2u64, 3, 4])) {
        let k = Gf::new(q).unwrap();
        let rows: Vec<Vec<u32>> = entries.chunks(6).map(|c| c.iter().map(|&x| x % q as u32).collect()).collect();
        let m = FqMatrix::from_rows(&rows);
        let ker = m.kernel(&k);
        prop_assert_eq!(ker.len() + m.rank(&k), 6);
        for v in &ker {
            prop_assert!(m.mul_vec(v, &k).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn polynomial_division_identity(a in 0u64..6561, b in 1u64..729) {
        let k = Gf::new(3).unwrap();
        let a = APoly::from_code(a, 3);
        let b = APoly::from_code(b, 3);
        let r = a.rem(&b, &k);
        let diff = a.sub(&r, &k);
        prop_assert!(b.divides(&diff, &k));
        prop_assert!(r.deg().map_or(true, |dr| dr < b.deg().unwrap()));
    }

    #[test]
    fn parse_format_roundtrip(code in 0u64..65536) {
        let k = Gf::new(4).unwrap();
        let p = Poly::from_code(code, 4);
        prop_assert_eq!(Poly::parse(&p.format("T"), 'T', &k).unwrap(), p);
    }
}
