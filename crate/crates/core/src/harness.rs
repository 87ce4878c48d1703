//! The full per-prime pipeline: the space of Cartier-fixed differentials,
//! the reduction map θ, the morphism α, and the per-character verdicts.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::carlitz::{carlitz_action, torsion_polynomial, ExpSeries};
use crate::classgroup::{class_group, p_torsion_dlogs, verify_witness, ClassData, ClassGroupConfig};
use crate::delta::DeltaModule;
use crate::differentials::{filtration_report, kernel_one_minus_cd, local_cartier, one_minus_cd, Differential, OmegaR};
use crate::error::{Error, ErrorClass, Result};
use crate::frame::Frame;
use crate::gf::{Elem, Gf};
use crate::linalg::{rank_of, FqMatrix};
use crate::local::LocalExpansion;
use crate::poly::APoly;
use crate::report::{CarlitzChecks, RemarkOutcome, RemarkReport, SpiegelReport, Verdict};
use crate::tower::{FieldTower, PrimeData, REl};
use crate::units::{cyclotomic_units, expected_rank, saturate_units, unit_module, unit_profile, UnitSet};
use crate::zeta::zeta_numerator;

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub seed: u64,
    pub probes: usize,
    pub cartier_samples: usize,
    pub class_group: ClassGroupConfig,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig { seed: 0, probes: 100, cartier_samples: 20, class_group: ClassGroupConfig::default() }
    }
}

/// `Ω_R^{c=1}` with basis `dlog u_i` followed by `dlog α_j`.
#[derive(Clone, Debug)]
pub struct FixedDifferentialSpace {
    pub units: Vec<Differential>,
    pub witnesses: Vec<Differential>,
    /// `A/p ⊗ Ω_R^{c=1}` in the same basis.
    pub module: DeltaModule,
}

impl FixedDifferentialSpace {
    pub fn dim(&self) -> usize {
        self.units.len() + self.witnesses.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &Differential> {
        self.units.iter().chain(&self.witnesses)
    }

    /// `A/p ⊗ Pic(R)[p]`, the quotient by the unit part.
    pub fn pic_module(&self) -> DeltaModule {
        self.module.quotient(&self.unit_vectors()).expect("unit part is Δ-stable")
    }

    fn unit_vectors(&self) -> Vec<Vec<Elem>> {
        let n = self.dim();
        (0..self.units.len())
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect()
    }
}

pub fn build_fixed_space(om: &OmegaR, frame: &Frame, units: &UnitSet, class: &ClassData) -> Result<FixedDifferentialSpace> {
    let t = om.tower();
    let unit_dlogs: Vec<Differential> = units.units.iter().map(|u| crate::units::dlog(om, u)).collect::<Result<_>>()?;
    let witnesses = p_torsion_dlogs(om, class)?;
    let pic_rank = class.p_rank(t.p());
    if witnesses.len() != pic_rank {
        return Err(Error::DimensionMismatch(format!("{} witnesses for a p-rank of {pic_rank}", witnesses.len())));
    }
    for w in unit_dlogs.iter().chain(&witnesses) {
        if om.cartier(w)? != *w {
            return Err(Error::OracleMismatch("logarithmic differential is not Cartier-fixed".into()));
        }
    }
    let all: Vec<&Differential> = unit_dlogs.iter().chain(&witnesses).collect();
    let total = all.len();
    let kvecs: Vec<Vec<Elem>> = all.iter().map(|w| frame.k_coords(w)).collect::<Result<_>>()?;
    let rank = if total == 0 { 0 } else { rank_of(&kvecs, t.k()) };
    if rank != total {
        return Err(Error::DimensionMismatch(format!(
            "k-rank of dlog basis is {rank}, expected {} + {pic_rank}",
            unit_dlogs.len()
        )));
    }
    let field = t.prime_data().residue_arc();
    let module = if total == 0 {
        DeltaModule::zero(field, t.generator_code(), t.degree())
    } else {
        let fp = Gf::prime(t.p())?;
        let pvecs: Vec<Vec<Elem>> = all.iter().map(|w| frame.p_coords(w)).collect::<Result<_>>()?;
        let basis = FqMatrix::from_cols(pvecs[0].len(), &pvecs);
        let mut m = FqMatrix::zeros(total, total);
        for (j, w) in all.iter().enumerate() {
            let img = om.apply_galois(t.delta0(), w);
            let coords = basis
                .solve(&frame.p_coords(&img)?, &fp)
                .ok_or_else(|| Error::DimensionMismatch("fixed space is not Δ-stable".into()))?;
            for (i, c) in coords.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        let labels = units
            .labels
            .iter()
            .map(|l| format!("dlog {l}"))
            .chain((0..witnesses.len()).map(|j| format!("dlog alpha_{j}")))
            .collect();
        DeltaModule::new(field, t.generator_code(), t.degree(), m, labels)
    };
    Ok(FixedDifferentialSpace { units: unit_dlogs, witnesses, module })
}

/// `θ(a ⊗ ω) = τ(a) ω mod q^(q^d)` and its kernel.
#[derive(Clone, Debug)]
pub struct Theta {
    /// Columns are the reductions of the basis, in the basis `λ^i dλ`.
    pub matrix: FqMatrix,
    pub kernel: Vec<Vec<Elem>>,
    pub kernel_module: DeltaModule,
}

pub fn theta(om: &OmegaR, space: &FixedDifferentialSpace) -> Result<Theta> {
    let t = om.tower();
    let f = t.residue();
    let len = t.degree() + 1;
    let loc = LocalExpansion::new(t, len);
    let cols: Vec<Vec<Elem>> = space.basis().map(|w| Ok(om.reduce(w, &loc)?.coeffs().to_vec())).collect::<Result<_>>()?;
    let dim = space.dim();
    let matrix = if dim == 0 { FqMatrix::zeros(len, 0) } else { FqMatrix::from_cols(len, &cols) };
    if dim > 0 {
        let local = crate::differentials::local_module(t, len);
        let lhs = matrix.mul(space.module.action(), f);
        let rhs = local.action().mul(&matrix, f);
        if lhs != rhs {
            return Err(Error::OracleMismatch("θ is not Δ-equivariant".into()));
        }
    }
    let kernel = if dim == 0 { Vec::new() } else { matrix.kernel(f) };
    let kernel_module = space
        .module
        .subspace(&kernel)
        .ok_or_else(|| Error::OracleMismatch("ker θ is not Δ-stable".into()))?;
    Ok(Theta { matrix, kernel, kernel_module })
}

#[derive(Clone, Debug)]
pub struct Alpha {
    pub ker: DeltaModule,
    pub image: DeltaModule,
    pub coker: DeltaModule,
}

/// `α`: `ker θ` projected to the witness coordinates, landing in
/// `A/p ⊗ Pic(R)[p]`.
pub fn alpha(space: &FixedDifferentialSpace, th: &Theta) -> Result<Alpha> {
    let f = space.module.field();
    let r = space.units.len();
    let dim = space.dim();
    let s = dim - r;
    let pic = space.pic_module();
    let projected: Vec<Vec<Elem>> = th.kernel.iter().map(|v| v[r..].to_vec()).collect();
    let ker_vectors: Vec<Vec<Elem>> = if th.kernel.is_empty() {
        Vec::new()
    } else if s == 0 {
        th.kernel.clone()
    } else {
        let p = FqMatrix::from_cols(s, &projected);
        p.kernel(f)
            .into_iter()
            .map(|y| {
                let mut v = vec![0; dim];
                for (c, col) in y.iter().zip(&th.kernel) {
                    for (vi, &x) in v.iter_mut().zip(col) {
                        *vi = f.add(*vi, f.mul(*c, x));
                    }
                }
                v
            })
            .collect()
    };
    let ker = space
        .module
        .subspace(&ker_vectors)
        .ok_or_else(|| Error::OracleMismatch("ker α is not Δ-stable".into()))?;
    let image_basis = crate::linalg::span_basis(&projected, s, f);
    let image = pic.subspace(&image_basis).ok_or_else(|| Error::OracleMismatch("image of α is not Δ-stable".into()))?;
    let coker = pic.quotient(&image_basis).ok_or_else(|| Error::OracleMismatch("image of α is not Δ-stable".into()))?;
    Ok(Alpha { ker, image, coker })
}

/// Whether `ω^j` is nontrivial on `k^×`.
fn nontrivial_on_constants(t: &FieldTower, j: usize) -> bool {
    j % (t.q() as usize - 1) != 0
}

pub fn remark_check(t: &FieldTower, hom: &DeltaModule, pic: &DeltaModule) -> RemarkReport {
    let mut outcomes = Vec::new();
    for j in (0..t.degree()).filter(|&j| nontrivial_on_constants(t, j)) {
        let hom_dim = hom.eigen_dim(j);
        let pic_dim = pic.eigen_dim(j);
        let outcome = if hom_dim > 0 {
            log::info!("remark: character {j} skipped, Hom part has dimension {hom_dim}");
            RemarkOutcome::Skipped
        } else if pic_dim <= 1 {
            RemarkOutcome::Holds
        } else {
            RemarkOutcome::Violated
        };
        outcomes.push(crate::report::RemarkEntry { character: j, hom_dim, pic_dim, outcome });
    }
    if outcomes.is_empty() {
        log::info!("remark: vacuous, no character is nontrivial on k^x");
    }
    RemarkReport { vacuous: outcomes.is_empty(), characters: outcomes }
}

/// Exact coordinates of `h ω0` with `h ∈ R`: the `T^j` coefficient of
/// coordinate `i` sits at index `j n + i`.
fn flatten(h: &REl, n: usize) -> Vec<Elem> {
    let width = h.coords().iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
    let mut v = vec![0; width * n];
    for (i, c) in h.coords().iter().enumerate() {
        for (j, &x) in c.coeffs().iter().enumerate() {
            v[j * n + i] = x;
        }
    }
    v
}

fn unflatten(t: &FieldTower, v: &[Elem]) -> REl {
    let n = t.degree();
    let coords = (0..n).map(|i| APoly::from_coeffs(v.iter().skip(i).step_by(n).copied().collect())).collect();
    t.from_coords(coords)
}

fn integral_coefficient(om: &OmegaR, w: &Differential) -> Result<REl> {
    let t = om.tower();
    t.to_r(&om.omega0_coefficient(w)).ok_or_else(|| Error::OracleMismatch("differential is not integral".into()))
}

/// Row echelon form over `k`, with each row optionally tracking its
/// expression in the inserted vectors.
struct Echelon<'a> {
    k: &'a Gf,
    rows: Vec<(usize, Vec<Elem>, Vec<Elem>)>,
    inserted: usize,
}

fn axpy(y: &mut Vec<Elem>, a: Elem, x: &[Elem], k: &Gf) {
    if y.len() < x.len() {
        y.resize(x.len(), 0);
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = k.add(*yi, k.mul(a, xi));
    }
}

impl<'a> Echelon<'a> {
    fn new(k: &'a Gf) -> Self {
        Echelon { k, rows: Vec::new(), inserted: 0 }
    }

    /// Reduces `v`; returns the residue and the combination `c` with
    /// `v = residue + Σ c_i x_i`.
    fn reduce(&self, v: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
        let k = self.k;
        let mut v = v.to_vec();
        let mut combo = vec![0; self.inserted];
        for (pivot, row, rc) in &self.rows {
            let c = v.get(*pivot).copied().unwrap_or(0);
            if c != 0 {
                axpy(&mut v, k.neg(c), row, k);
                axpy(&mut combo, c, rc, k);
            }
        }
        (v, combo)
    }

    /// Inserts `v` if independent; returns whether it was.
    fn insert(&mut self, v: &[Elem]) -> bool {
        let k = self.k;
        let (mut r, combo) = self.reduce(v);
        let Some(pivot) = r.iter().position(|&x| x != 0) else { return false };
        let mut rc: Vec<Elem> = combo.iter().map(|&c| k.neg(c)).collect();
        rc.resize(self.inserted + 1, 0);
        rc[self.inserted] = 1;
        let inv = k.inv(r[pivot]);
        r.iter_mut().for_each(|x| *x = k.mul(*x, inv));
        rc.iter_mut().for_each(|x| *x = k.mul(*x, inv));
        for (_, row, c) in self.rows.iter_mut() {
            let a = row.get(pivot).copied().unwrap_or(0);
            if a != 0 {
                axpy(row, k.neg(a), &r, k);
                axpy(c, k.neg(a), &rc, k);
            }
        }
        self.rows.push((pivot, r, rc));
        self.inserted += 1;
        true
    }

    fn contains(&self, v: &[Elem]) -> bool {
        self.reduce(v).0.iter().all(|&x| x == 0)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ProbeSummary {
    pub probes: usize,
    pub fixed_vectors: usize,
    pub krylov_steps: usize,
    pub max_krylov: usize,
    /// Fixed differentials outside the constructed space.
    pub misses: usize,
}

const MAX_KRYLOV: usize = 4096;

/// For each probe `h ω0`, closes the span of its `c`-orbit, computes the
/// fixed vectors of `c` on it exactly, and tests them against the span of
/// the constructed basis.
pub fn probe_completeness(om: &OmegaR, space: &FixedDifferentialSpace, probes: usize, rng: &mut ChaCha8Rng) -> Result<ProbeSummary> {
    let t = om.tower();
    let k = t.k();
    let n = t.degree();
    let q = t.q() as u64;
    let mut known = Echelon::new(k);
    for w in space.basis() {
        known.insert(&flatten(&integral_coefficient(om, w)?, n));
    }
    let mut summary = ProbeSummary { probes, ..Default::default() };
    for _ in 0..probes {
        let coords = (0..n).map(|_| APoly::from_code(rng.gen_range(0..q.pow(3)), q as u32)).collect();
        let h = t.from_coords(coords);
        let mut orbit = Echelon::new(k);
        let mut xs: Vec<Vec<Elem>> = Vec::new();
        let mut w = om.from_omega0_coefficient(&t.to_l(&h));
        let relation = loop {
            let v = flatten(&integral_coefficient(om, &w)?, n);
            let (res, combo) = orbit.reduce(&v);
            if res.iter().all(|&x| x == 0) {
                break combo;
            }
            if xs.len() >= MAX_KRYLOV {
                return Err(Error::OracleMismatch("Cartier orbit did not close".into()));
            }
            orbit.insert(&v);
            xs.push(v);
            w = om.cartier(&w)?;
        };
        let m = xs.len();
        summary.krylov_steps += m;
        summary.max_krylov = summary.max_krylov.max(m);
        if m == 0 {
            continue;
        }
        // Matrix of c - 1 on the orbit span in the basis x_0 .. x_{m-1}.
        let mut cm = FqMatrix::zeros(m, m);
        for i in 0..m {
            if i + 1 < m {
                cm[(i + 1, i)] = 1;
            } else {
                for (r, &c) in relation.iter().enumerate() {
                    cm[(r, i)] = c;
                }
            }
            cm[(i, i)] = k.sub(cm[(i, i)], 1);
        }
        for y in cm.kernel(k) {
            let mut v = Vec::new();
            for (c, x) in y.iter().zip(&xs) {
                if *c != 0 {
                    axpy(&mut v, *c, x, k);
                }
            }
            let fixed = om.from_omega0_coefficient(&t.to_l(&unflatten(t, &v)));
            if om.cartier(&fixed)? != fixed {
                return Err(Error::OracleMismatch("Krylov fixed vector is not Cartier-fixed".into()));
            }
            summary.fixed_vectors += 1;
            if !known.contains(&v) {
                summary.misses += 1;
            }
        }
    }
    Ok(summary)
}

fn random_r(t: &FieldTower, rng: &mut ChaCha8Rng, deg: u32) -> REl {
    let q = t.q() as u64;
    let coords = (0..t.degree()).map(|_| APoly::from_code(rng.gen_range(0..q.pow(deg + 1)), q as u32)).collect();
    t.from_coords(coords)
}

/// Number of random integral differentials on which the closed-form
/// Cartier operator and the series one agree modulo `q^(q^d)`.
pub fn cartier_agreement(om: &OmegaR, samples: usize, rng: &mut ChaCha8Rng) -> Result<usize> {
    let t = om.tower();
    let top = t.degree() + 1;
    let wide = LocalExpansion::new(t, top * t.q() as usize);
    let narrow = LocalExpansion::new(t, top);
    for _ in 0..samples {
        let w = om.make_differential(&random_r(t, rng, 2), &random_r(t, rng, 2));
        let local = local_cartier(&om.reduce(&w, &wide)?, t)?;
        let global = om.reduce(&om.cartier(&w)?, &narrow)?;
        if local != global {
            return Err(Error::OracleMismatch("global and local Cartier operators disagree".into()));
        }
    }
    Ok(samples)
}

/// `c(dλ) = 0`, `dλ ≠ 0` modulo `q`, and `(1 - c^d)(dλ) ≠ 0`.
fn cartier_facts(om: &OmegaR) -> Result<(bool, bool, bool)> {
    let t = om.tower();
    let dl = om.d_lambda();
    let kills = om.cartier(&dl)?.is_zero();
    let len = t.degree() + 1;
    let red = om.reduce(&dl, &LocalExpansion::new(t, len))?;
    let nonzero_mod_q = red.coeffs()[0] != 0;
    let image = one_minus_cd(&red, t)?;
    Ok((kills, nonzero_mod_q, !image.is_zero()))
}

/// Composition over all pairs of degree at most two, Eisenstein at `p`,
/// and the exponential functional equation through `z^(q^3)`.
pub fn carlitz_checks(pd: &PrimeData) -> CarlitzChecks {
    let k = pd.k();
    let q = pd.q() as u64;
    let polys: Vec<APoly> = (0..q.pow(3)).map(|c| APoly::from_code(c, q as u32)).collect();
    let actions: Vec<_> = polys.iter().map(|a| carlitz_action(a, k)).collect();
    let mut compositions = 0;
    let mut composition_ok = true;
    for (a, pa) in polys.iter().zip(&actions) {
        for (b, pb) in polys.iter().zip(&actions) {
            compositions += 1;
            if carlitz_action(&a.mul(b, k), k) != pa.compose(pb, k) {
                composition_ok = false;
            }
        }
    }
    let eisenstein = torsion_polynomial(pd.prime(), k).is_ok();
    let exp = ExpSeries::new(4, k);
    let exp_args = [APoly::x(), APoly::from_code(q + 1, q as u32), pd.prime().clone()];
    let exp_ok = exp_args.iter().all(|a| exp.satisfies_functional_equation(a, k));
    CarlitzChecks { compositions, composition_ok, eisenstein, exp_order: q.pow(3), exp_ok }
}

fn first_failure(dims: &[usize], bound: impl Fn(usize) -> usize) -> Option<usize> {
    dims.iter().enumerate().find(|&(j, &d)| d > bound(j)).map(|(j, _)| j)
}

struct Run {
    report: SpiegelReport,
    started: Instant,
}

impl Run {
    fn verdict(&mut self, name: &str, pass: bool, character: Option<usize>) {
        self.report.verdicts.push(Verdict { name: name.into(), pass, character, detail: None });
    }

    fn dims(&mut self, name: &str, m: &DeltaModule) {
        self.report.dims.insert(name.into(), m.eigen_dims());
    }

    fn stage(&mut self, name: &str) {
        log::info!("{}: {} done after {:?}", self.report.p_poly, name, self.started.elapsed());
    }
}

/// Runs the whole pipeline for one prime. Falsified claims produce a
/// report with status `FAILED`; usage and internal errors are returned.
pub fn run_spiegel(q: u64, p_poly: &str, cfg: &HarnessConfig) -> Result<SpiegelReport> {
    let pd = PrimeData::parse(q, p_poly)?;
    let tower = FieldTower::new(pd)?;
    let mut run = Run { report: SpiegelReport::new(q, tower.prime_data().prime().format("T"), tower.d(), cfg.seed), started: Instant::now() };
    match pipeline(&tower, cfg, &mut run) {
        Ok(()) => {}
        Err(e) if e.class() == ErrorClass::Falsified => {
            let character = match &e {
                Error::TheoremViolation { character, .. } => *character,
                _ => None,
            };
            run.report.verdicts.push(Verdict { name: "pipeline".into(), pass: false, character, detail: Some(e.to_string()) });
        }
        Err(e) => return Err(e),
    }
    run.report.finish();
    Ok(run.report)
}

fn pipeline(t: &FieldTower, cfg: &HarnessConfig, run: &mut Run) -> Result<()> {
    let n = t.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let carlitz = carlitz_checks(t.prime_data());
    run.verdict("carlitz_layer", carlitz.composition_ok && carlitz.eisenstein && carlitz.exp_ok, None);
    run.report.oracles.carlitz = Some(carlitz);
    run.stage("carlitz");

    let filt = filtration_report(t)?;
    run.verdict("filtration_characters", filt.characters.iter().enumerate().all(|(i, &c)| c == (i + 1) % n), None);
    run.report.dims.insert("omega_mod_q_qd".into(), filt.dims.clone());
    let table_bad = first_failure(&filt.dims, |j| if j == 1 % n { 2 } else { 1 })
        .or_else(|| filt.dims.iter().position(|&d| d == 0));
    run.verdict("eigenspace_table", table_bad.is_none(), table_bad);

    let om = OmegaR::new(t);
    let (kills, nonzero, image) = cartier_facts(&om)?;
    run.verdict("cartier_kills_dlambda", kills, None);
    run.verdict("dlambda_nonzero_mod_q", nonzero, None);
    run.verdict("one_minus_cd_dlambda_nonzero", image, None);
    let kcd = kernel_one_minus_cd(t)?;
    run.dims("ker_one_minus_cd", &kcd);
    let c = kcd.cyclicity();
    run.verdict("ker_one_minus_cd_cyclic", c.cyclic && kcd.eigen_dim(1 % n) == 1, c.witness);
    run.report.oracles.cartier_agreement = cartier_agreement(&om, cfg.cartier_samples, &mut rng)?;
    run.verdict("cartier_oracle", run.report.oracles.cartier_agreement >= cfg.cartier_samples, None);
    run.stage("differentials");

    let frame = Frame::new(&om);
    let units = saturate_units(&om, &frame, &cyclotomic_units(t)?)?;
    let umod = unit_module(&om, &frame, &units)?;
    run.dims("units", &umod);
    run.report.oracles.unit_rank = units.len();
    run.verdict("unit_rank", units.len() == expected_rank(t), None);
    let profile = unit_profile(t);
    let udims = umod.eigen_dims();
    let bad = udims.iter().zip(&profile).position(|(a, b)| a != b);
    run.verdict("unit_profile", bad.is_none(), bad);
    run.stage("units");

    let zeta = zeta_numerator(t)?;
    let class = class_group(&om, &units, &zeta, &cfg.class_group)?;
    for w in &class.witnesses {
        verify_witness(t, &class, w)?;
    }
    record_class_data(run, &zeta, &class);
    let h = num_bigint::BigInt::from(zeta.class_number());
    run.verdict("class_number_oracle", class.cl0_order == h, None);
    let g = zeta.genus;
    let qi = t.q() as i128;
    let weil = zeta.coeffs.len() == 2 * g + 1
        && (0..=g).all(|i| zeta.coeffs[2 * g - i] == qi.pow((g - i) as u32) * zeta.coeffs[i]);
    run.verdict("weil_symmetry", weil, None);
    if g == 0 {
        run.verdict("genus_zero_trivial_pic", class.pic_order() == num_bigint::BigInt::from(1), None);
    }
    run.stage("class group");

    let space = build_fixed_space(&om, &frame, &units, &class)?;
    run.dims("fixed_space", &space.module);
    run.verdict(
        "fixed_space_dimension",
        space.dim() == units.len() + class.p_rank(t.p()) && space.units.len() == expected_rank(t),
        None,
    );
    let pic = space.pic_module();
    run.dims("pic_p", &pic);

    let th = theta(&om, &space)?;
    run.dims("hom_h_lambda", &th.kernel_module);
    let al = alpha(&space, &th)?;
    run.dims("ker_alpha", &al.ker);
    run.dims("coker_alpha", &al.coker);
    let kc = al.ker.cyclicity();
    run.verdict("ker_alpha_cyclic", kc.cyclic, kc.witness);
    let kdims = al.ker.eigen_dims();
    let bad = first_failure(&kdims, |j| profile[j]);
    run.verdict("ker_alpha_in_units", bad.is_none(), bad);
    let cc = al.coker.cyclicity();
    run.verdict("coker_alpha_cyclic", cc.cyclic, cc.witness);
    let bad = first_failure(&al.coker.eigen_dims(), |j| kcd.eigen_dim(j));
    run.verdict("coker_alpha_bounded", bad.is_none(), bad);
    run.stage("alpha");

    let remark = remark_check(t, &th.kernel_module, &pic);
    let bad = remark.characters.iter().find(|e| e.outcome == RemarkOutcome::Violated).map(|e| e.character);
    run.verdict("remark", bad.is_none(), bad);
    run.report.remark = remark;

    let probes = probe_completeness(&om, &space, cfg.probes, &mut rng)?;
    run.report.oracles.probes = probes.probes;
    run.report.oracles.probe_fixed_vectors = probes.fixed_vectors;
    run.report.timings.insert("krylov_steps".into(), probes.krylov_steps as u64);
    run.report.timings.insert("max_krylov".into(), probes.max_krylov as u64);
    run.verdict("probe_completeness", probes.misses == 0 && probes.probes >= cfg.probes, None);
    run.stage("probes");
    Ok(())
}

fn record_class_data(run: &mut Run, zeta: &crate::zeta::ZetaData, class: &ClassData) {
    let o = &mut run.report.oracles;
    o.genus = zeta.genus;
    o.zeta_coeffs = zeta.coeffs.iter().map(|c| c.to_string()).collect();
    o.class_number = zeta.class_number().to_string();
    o.cl0_order = class.cl0_order.to_string();
    o.pic_invariants = class.pic_invariants.iter().map(|c| c.to_string()).collect();
    o.factor_base_bound = class.factor_base.bound;
    o.factor_base_size = class.factor_base.len();
    o.witnesses = class.witnesses.len();
    let timings: &mut BTreeMap<String, u64> = &mut run.report.timings;
    timings.insert("relation_candidates".into(), class.candidates_tried as u64);
    timings.insert("relations".into(), class.relations.len() as u64);
}
