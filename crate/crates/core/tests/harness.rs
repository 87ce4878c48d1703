use carlitz_spiegel::classgroup::{class_group, ClassGroupConfig};
use carlitz_spiegel::differentials::OmegaR;
use carlitz_spiegel::frame::Frame;
use carlitz_spiegel::harness::{alpha, build_fixed_space, probe_completeness, remark_check, run_spiegel, theta, FixedDifferentialSpace, HarnessConfig};
use carlitz_spiegel::local::LocalExpansion;
use carlitz_spiegel::poly::APoly;
use carlitz_spiegel::report::{RemarkOutcome, Status};
use carlitz_spiegel::tower::{FieldTower, PrimeData};
use carlitz_spiegel::units::{cyclotomic_units, saturate_units};
use carlitz_spiegel::zeta::zeta_numerator;
use carlitz_spiegel::ErrorClass;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tower(q: u64, p: &str) -> FieldTower {
    FieldTower::new(PrimeData::parse(q, p).unwrap()).unwrap()
}

fn space(om: &OmegaR) -> FixedDifferentialSpace {
    let t = om.tower();
    let frame = Frame::new(om);
    let units = saturate_units(om, &frame, &cyclotomic_units(t).unwrap()).unwrap();
    let z = zeta_numerator(t).unwrap();
    let class = class_group(om, &units, &z, &ClassGroupConfig::default()).unwrap();
    build_fixed_space(om, &frame, &units, &class).unwrap()
}

#[test]
fn fixed_space_of_the_baseline() {
    let t = tower(2, "T^2+T+1");
    let om = OmegaR::new(&t);
    let s = space(&om);
    assert_eq!((s.units.len(), s.witnesses.len()), (2, 0));
    for w in s.basis() {
        assert_eq!(om.cartier(w).unwrap(), *w);
    }
    assert_eq!(s.module.eigen_dims(), vec![0, 1, 1]);
    assert_eq!(s.pic_module().dim(), 0);
}

#[test]
fn teichmuller_scalar_of_t() {
    let t = tower(2, "T^2+T+1");
    let loc = LocalExpansion::new(&t, t.degree() + 1);
    let tbar = loc.expand_a(&APoly::x()).coeff(0);
    let x = t.add(&t.from_a(APoly::x()), &t.pow(&t.lambda(), 3));
    let s = loc.expand_r(&x);
    assert_eq!(s.coeffs(), &[tbar, 0, 0, 0]);
}

#[test]
fn theta_and_alpha_over_f4() {
    let t = tower(4, "T^2+T+2");
    let om = OmegaR::new(&t);
    let s = space(&om);
    let th = theta(&om, &s).unwrap();
    assert_eq!(th.matrix.cols(), s.dim());
    assert_eq!(th.kernel.len() + th.matrix.rank(t.residue()), s.dim());
    let a = alpha(&s, &th).unwrap();
    assert_eq!(a.image.dim() + a.coker.dim(), s.pic_module().dim());
    assert!(a.ker.eigen_dims().iter().all(|&x| x <= 1));
    assert!(a.coker.eigen_dims().iter().all(|&x| x <= 1));
}

#[test]
fn probes_detect_a_missing_unit() {
    let t = tower(3, "T^2+1");
    let om = OmegaR::new(&t);
    let full = space(&om);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    assert_eq!(probe_completeness(&om, &full, 10, &mut rng).unwrap().misses, 0);
    let mut short = full.clone();
    short.units.remove(0);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    assert!(probe_completeness(&om, &short, 10, &mut rng).unwrap().misses > 0);
}

#[test]
fn remark_shape() {
    for (q, p, count) in [(3, "T^2+1", 4), (2, "T^3+T+1", 0)] {
        let t = tower(q, p);
        let om = OmegaR::new(&t);
        let s = space(&om);
        let th = theta(&om, &s).unwrap();
        let r = remark_check(&t, &th.kernel_module, &s.pic_module());
        assert_eq!(r.vacuous, q == 2);
        assert_eq!(r.characters.len(), count);
        assert!(r.characters.iter().all(|e| e.outcome != RemarkOutcome::Violated));
    }
}

#[test]
fn bad_primes_are_usage_errors() {
    for (q, p) in [(2, "T^2+1"), (2, "T"), (4, "T^2+T+1"), (6, "T"), (3, "2T+1")] {
        let e = run_spiegel(q, p, &HarnessConfig::default()).unwrap_err();
        assert_eq!(e.class(), ErrorClass::Usage, "q={q} p={p}");
    }
}

#[test]
fn reports_are_deterministic_and_render() {
    let cfg = HarnessConfig { seed: 9, ..HarnessConfig::default() };
    let a = run_spiegel(3, "T^2+T+2", &cfg).unwrap();
    let b = run_spiegel(3, "T^2+T+2", &cfg).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.status, Status::Pass);
    assert_eq!(a.oracles.checksum.len(), 64);
    let md = a.to_markdown();
    assert!(md.contains("Status: **PASS**"));
    assert!(md.contains("| probe_completeness | pass |"));
    let other = run_spiegel(3, "T^2+T+2", &HarnessConfig { seed: 10, ..cfg }).unwrap();
    assert_eq!(other.dims, a.dims);
}

#[test]
fn linear_primes_pass() {
    for (q, p) in [(3, "T"), (3, "T+2"), (4, "T+1"), (5, "T+3"), (7, "T")] {
        let r = run_spiegel(q, p, &HarnessConfig::default()).unwrap();
        assert!(r.passed(), "q={q} p={p}: {:?}", r.first_failure);
    }
}
