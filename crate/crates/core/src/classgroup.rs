//! `Cl^0(L)` and `Pic(R)` from factor-base relations.
//!
//! Divisors are supported on the finite primes of degree at most `B` and
//! the infinite places. Principal divisors of enumerated elements of `R`,
//! together with all their Galois conjugates, span a lattice whose index
//! in the degree-zero divisors must equal `P(1)`. `Pic(R)` is the quotient
//! of the finite part by the projected lattice.

use std::collections::BTreeMap;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::differentials::{Differential, OmegaR};
use crate::error::{Error, Result};
use crate::gf::Gf;
use crate::ideals::{galois_permutation, residue_degree, split_prime, FinitePrime};
use crate::infinity::InfinitePlaces;
use crate::norm::NormEvaluator;
use crate::poly::{irreducibles, APoly};
use crate::riemann_roch::{pole_basis, LevelIter};
use crate::snf::{smith_normal_form, HermiteBasis, IntMatrix};
use crate::tower::{FieldTower, REl};
use crate::units::UnitSet;
use crate::zeta::ZetaData;

/// Largest norm degree handled by interpolation.
const NORM_POINTS: usize = 255;

#[derive(Clone, Debug)]
pub struct ClassGroupConfig {
    /// Initial factor-base degree bound; `None` picks the generation bound
    /// from the point counts.
    pub bound: Option<usize>,
    /// Largest factor-base degree tried before giving up.
    pub max_bound: usize,
    /// Largest pole order enumerated.
    pub max_pole: usize,
    /// Candidates examined without progress before the bound is raised.
    pub stall: usize,
    /// Bound on the number of relations examined when looking for witnesses.
    pub witness_bound: usize,
}

impl Default for ClassGroupConfig {
    fn default() -> Self {
        ClassGroupConfig { bound: None, max_bound: 24, max_pole: NORM_POINTS, stall: 200_000, witness_bound: 1 << 20 }
    }
}

#[derive(Clone, Debug)]
pub struct FactorBase {
    pub bound: usize,
    pub primes: Vec<FinitePrime>,
    /// Code of the prime below, mapped to the index range of its primes.
    groups: HashMap<u64, (usize, usize)>,
    unders: Vec<APoly>,
    /// `δ0` on finite primes: `perm[i]` is the index of `δ0(P_i)`.
    perm: Vec<usize>,
}

impl FactorBase {
    pub fn new(t: &FieldTower, bound: usize) -> Result<Self> {
        let k = t.k();
        let q = t.q();
        let gen = t.prime_data().lift(t.generator_code());
        let mut fb = FactorBase { bound, primes: Vec::new(), groups: HashMap::new(), unders: Vec::new(), perm: Vec::new() };
        for e in 1..=bound.max(t.d()) {
            for under in irreducibles(k, e) {
                let is_p = under == *t.prime_data().prime();
                if !is_p && e * residue_degree(t, &under) > bound {
                    continue;
                }
                let ps = split_prime(t, &under)?;
                let start = fb.primes.len();
                fb.perm.extend(galois_permutation(t, &ps, &gen).into_iter().map(|j| j + start));
                fb.primes.extend(ps);
                fb.groups.insert(under.code(q), (start, fb.primes.len()));
                fb.unders.push(under);
            }
        }
        Ok(fb)
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.primes.iter().map(|p| p.label()).collect()
    }
}

/// Divisor of `σ^conj(elements[source])`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub source: usize,
    pub conj: usize,
    pub finite: Vec<(usize, i64)>,
    pub infinite: Vec<i64>,
}

/// `𝔞^p = (α)` with `α = Π σ^conj(β_source)^e`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub ideal: Vec<(usize, i64)>,
    /// `(relation index, exponent)`.
    pub factors: Vec<(usize, u32)>,
    /// Coordinates of the class in `Pic(R)[p]`.
    pub class: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct ClassData {
    pub factor_base: FactorBase,
    pub elements: Vec<REl>,
    pub relations: Vec<Relation>,
    pub cl0_order: BigInt,
    pub pic_invariants: Vec<BigInt>,
    /// Index of the divisors of the given units in the degree-zero divisors
    /// at infinity, divided by the same index for all units of `R`.
    pub unit_index: BigInt,
    pub witnesses: Vec<Witness>,
    pub candidates_tried: usize,
}

impl ClassData {
    pub fn pic_order(&self) -> BigInt {
        self.pic_invariants.iter().product()
    }

    /// `dim_{F_p} Pic(R)[p]`.
    pub fn p_rank(&self, p: u32) -> usize {
        let p = BigInt::from(p);
        self.pic_invariants.iter().filter(|s| s.is_multiple_of(&p)).count()
    }

    pub fn witness_element(&self, t: &FieldTower, w: &Witness) -> REl {
        let mut acc = t.one();
        for &(r, e) in &w.factors {
            let rel = &self.relations[r];
            let b = t.apply(t.delta_pow(rel.conj), &self.elements[rel.source]);
            acc = t.mul(&acc, &t.pow(&b, e as u64));
        }
        acc
    }
}

struct Search<'a> {
    t: &'a FieldTower,
    fb: &'a FactorBase,
    inf: &'a InfinitePlaces<'a>,
    inf_perm: Vec<usize>,
    norms: NormEvaluator,
}

impl Search<'_> {
    fn columns(&self) -> usize {
        self.fb.len() + self.inf.count()
    }

    /// Divisor of `x` if it is supported on the factor base; `bound`
    /// caps `deg N(x)` when known.
    fn relation(&self, x: &REl, bound: Option<usize>) -> Result<Option<(Vec<(usize, i64)>, Vec<i64>)>> {
        let t = self.t;
        let k = t.k();
        let q = t.q();
        let norm = match bound {
            Some(b) => self.norms.norm_bounded(x, b)?,
            None => self.norms.norm(x)?,
        };
        let mut n = match norm {
            Some(n) => n,
            None => t.norm(x),
        };
        let total = n.deg().ok_or_else(|| Error::Degenerate("zero norm".into()))? as i64;
        let mut finite = Vec::new();
        for under in &self.fb.unders {
            if n.deg() == Some(0) {
                break;
            }
            let mut m = 0;
            while let Some(r) = n.div_exact(under, k) {
                n = r;
                m += 1;
            }
            if m == 0 {
                continue;
            }
            let (a, b) = self.fb.groups[&under.code(q)];
            let mut acc = 0;
            for i in a..b {
                let pr = &self.fb.primes[i];
                let v = pr.valuation(t, x);
                if v > 0 {
                    finite.push((i, v as i64));
                    acc += v * pr.residue_degree;
                }
            }
            if acc != m {
                return Err(Error::OracleMismatch(format!("valuations above {} do not match the norm", under.format("T"))));
            }
        }
        if n.deg() != Some(0) {
            return Ok(None);
        }
        let infinite = self.inf.valuations(x)?;
        let s: i64 = infinite.iter().sum();
        if s != -total {
            return Err(Error::OracleMismatch("infinite valuations violate the product formula".into()));
        }
        Ok(Some((finite, infinite)))
    }

    /// Divisor of `δ0^e(x)` from the divisor of `x`.
    fn conjugate(&self, finite: &[(usize, i64)], infinite: &[i64], e: usize) -> (Vec<(usize, i64)>, Vec<i64>) {
        let mut f = finite.to_vec();
        let mut inf = infinite.to_vec();
        for _ in 0..e {
            f = f.iter().map(|&(i, v)| (self.fb.perm[i], v)).collect();
            inf = self.inf_perm.iter().map(|&j| inf[j]).collect();
        }
        f.sort_unstable();
        (f, inf)
    }

    fn dense(&self, rel: &Relation) -> Vec<i64> {
        let mut v = vec![0; self.columns()];
        for &(i, e) in &rel.finite {
            v[i] = e;
        }
        v[self.fb.len()..].copy_from_slice(&rel.infinite);
        v
    }
}

/// Smallest `m` with `N_m > (2g - 2) q^(m/2)`, or `g` when the available
/// counts do not reach it.
///
/// A nontrivial unramified character trivial on all places of degree at
/// most `m` would have an L-polynomial of degree `2g - 2` whose power sums
/// equal `N_m` up to sign, and those are bounded by `(2g - 2) q^(m/2)`. So
/// places of degree at most `m`, with a place of degree one, generate
/// `Cl(L)`.
pub fn generation_bound(zeta: &ZetaData, q: u32) -> usize {
    let c = (2 * zeta.genus as u128).saturating_sub(2);
    zeta.counts
        .iter()
        .enumerate()
        .find(|&(i, &n)| (n as u128).pow(2) > c * c * (q as u128).pow(i as u32 + 1))
        .map_or(zeta.genus.max(1), |(i, _)| i + 1)
}

/// Word prime used to track the rank of the relation lattice.
const RANK_PRIME: u64 = (1 << 61) - 1;

/// Candidates evaluated between lattice updates.
const CHUNK: usize = 2048;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % RANK_PRIME as u128) as u64
}

fn invmod(a: u64) -> u64 {
    let mut r = 1;
    let mut b = a;
    let mut e = RANK_PRIME - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    r
}

/// Relation rows. The rank is tracked modulo a word prime; once it is
/// full the kept rows seed an exact Hermite basis.
struct RelationLattice {
    dim: usize,
    pivots: Vec<Option<Vec<u64>>>,
    rank: usize,
    kept: Vec<Vec<i64>>,
    hermite: Option<HermiteBasis>,
}

impl RelationLattice {
    fn new(dim: usize) -> Self {
        RelationLattice { dim, pivots: vec![None; dim], rank: 0, kept: Vec::new(), hermite: None }
    }

    fn rank(&self) -> usize {
        self.hermite.as_ref().map_or(self.rank, |h| h.rank())
    }

    fn index(&self) -> Option<BigInt> {
        self.hermite.as_ref().and_then(|h| h.index())
    }

    fn has_index(&self, h: &BigInt) -> bool {
        self.dim == 0 && h.is_one() || self.index().is_some_and(|i| &i == h)
    }

    /// Returns whether the row is kept.
    fn insert(&mut self, v: &[i64]) -> bool {
        if let Some(h) = self.hermite.as_mut() {
            return h.insert(v);
        }
        let mut w: Vec<u64> = v.iter().map(|&x| x.rem_euclid(RANK_PRIME as i64) as u64).collect();
        let mut independent = false;
        for c in 0..self.dim {
            if w[c] == 0 {
                continue;
            }
            match &self.pivots[c] {
                Some(row) => {
                    let s = RANK_PRIME - w[c];
                    for j in c..self.dim {
                        w[j] = (w[j] + mulmod(s, row[j])) % RANK_PRIME;
                    }
                }
                None => {
                    let inv = invmod(w[c]);
                    for x in w.iter_mut() {
                        *x = mulmod(*x, inv);
                    }
                    self.pivots[c] = Some(w);
                    self.rank += 1;
                    independent = true;
                    break;
                }
            }
        }
        if !independent && self.kept.len() >= 2 * self.dim {
            return false;
        }
        self.kept.push(v.to_vec());
        if self.rank == self.dim {
            let mut h = HermiteBasis::new(self.dim);
            for row in self.kept.drain(..) {
                h.insert(&row);
            }
            self.hermite = Some(h);
        }
        true
    }
}

/// Computes `Cl^0(L)` and `Pic(R)`, checking `|Cl^0(L)| = P(1)`.
pub fn class_group(om: &OmegaR, units: &UnitSet, zeta: &ZetaData, cfg: &ClassGroupConfig) -> Result<ClassData> {
    let t = om.tower();
    let h = BigInt::from(zeta.class_number());
    let mut bound = cfg.bound.unwrap_or_else(|| generation_bound(zeta, t.q()).max(t.d()));
    let mut last_size = None;
    loop {
        let size = FactorBase::new(t, bound)?.len();
        if last_size == Some(size) && bound < cfg.max_bound {
            bound += 1;
            continue;
        }
        last_size = Some(size);
        match class_group_at(om, units, &h, zeta.genus, bound, cfg)? {
            Some(data) => return Ok(data),
            None if bound < cfg.max_bound => {
                log::info!("factor base bound {bound} insufficient, raising");
                bound += 1;
            }
            None => {
                return Err(Error::OracleMismatch(format!(
                    "relation lattice never reached index P(1) = {h} up to bound {}",
                    cfg.max_bound
                )))
            }
        }
    }
}

fn class_group_at(
    om: &OmegaR,
    units: &UnitSet,
    h: &BigInt,
    genus: usize,
    bound: usize,
    cfg: &ClassGroupConfig,
) -> Result<Option<ClassData>> {
    let t = om.tower();
    let fb = FactorBase::new(t, bound)?;
    let inf = InfinitePlaces::new(t);
    let gen = t.prime_data().lift(t.generator_code());
    let norms = NormEvaluator::new(t, &inf, NORM_POINTS)?;
    let search = Search { t, fb: &fb, inf: &inf, inf_perm: inf.permutation(&gen), norms };
    let cols = search.columns();
    let n = t.degree();
    let mut lattice = RelationLattice::new(cols - 1);
    let mut elements: Vec<REl> = Vec::new();
    let mut relations: Vec<Relation> = Vec::new();
    let mut add = |x: REl, finite: Vec<(usize, i64)>, infinite: Vec<i64>, conjugates: bool, lattice: &mut RelationLattice| {
        let source = elements.len();
        elements.push(x);
        let count = if conjugates { n } else { 1 };
        for e in 0..count {
            let (f, i) = search.conjugate(&finite, &infinite, e);
            let rel = Relation { source, conj: e, finite: f, infinite: i };
            let v = search.dense(&rel);
            if lattice.insert(&v[..cols - 1]) {
                relations.push(rel);
            }
        }
    };
    for u in &units.units {
        let infinite = inf.valuations(u)?;
        add(u.clone(), Vec::new(), infinite, true, &mut lattice);
    }
    for under in fb.unders.clone() {
        let x = t.from_a(under);
        if let Some((f, i)) = search.relation(&x, None)? {
            add(x, f, i, false, &mut lattice);
        }
    }
    let mut tried = 0;
    let mut since_progress = 0;
    let mut state = (lattice.rank(), lattice.index());
    let mut basis = pole_basis(t, &inf, genus, 0, (2 * genus).max(1) + 3)?;
    let mut pole = 1;
    'outer: while !lattice.has_index(h) && pole <= cfg.max_pole {
        if pole > basis.bound {
            basis = pole_basis(t, &inf, genus, 0, basis.bound + 4)?;
        }
        let mut it = LevelIter::new(t, &basis, pole);
        loop {
            let batch: Vec<REl> = it.by_ref().take(CHUNK).collect();
            if batch.is_empty() {
                break;
            }
            tried += batch.len();
            since_progress += batch.len();
            let found: Vec<Option<(Vec<(usize, i64)>, Vec<i64>)>> =
                batch.par_iter().map(|x| search.relation(x, Some(pole))).collect::<Result<_>>()?;
            for (x, r) in batch.into_iter().zip(found) {
                if let Some((f, i)) = r {
                    add(x, f, i, true, &mut lattice);
                    if lattice.has_index(h) {
                        break 'outer;
                    }
                }
            }
            let now = (lattice.rank(), lattice.index());
            if now != state {
                state = now;
                since_progress = 0;
            } else if since_progress > cfg.stall && bound < cfg.max_bound {
                break 'outer;
            }
        }
        log::debug!(
            "bound {bound} pole {pole}: tried {tried}, rank {} of {}, index {:?}",
            lattice.rank(),
            cols - 1,
            lattice.index()
        );
        pole += 1;
    }
    if !lattice.has_index(h) {
        if let Some(i) = lattice.index() {
            log::info!("bound {bound}: relation lattice index {i}, P(1) = {h}");
        }
        return Ok(None);
    }
    let lattice = lattice.hermite.expect("full rank");
    let f = fb.len();
    // Rows pivoting on finite columns carry the whole finite projection.
    let basis = lattice.basis();
    let fin_rows: Vec<Vec<BigInt>> = basis.iter().filter(|r| r[..f].iter().any(|x| !x.is_zero())).map(|r| r[..f].to_vec()).collect();
    let inf_pivots: BigInt = basis
        .iter()
        .filter(|r| r[..f].iter().all(|x| x.is_zero()))
        .map(|r| r.iter().find(|x| !x.is_zero()).unwrap().abs())
        .product();
    let pic_invariants: Vec<BigInt>;
    let snf;
    if f == 0 {
        pic_invariants = Vec::new();
        snf = None;
    } else {
        let m = IntMatrix::from_rows(&fin_rows);
        let s = smith_normal_form(&m);
        let diag = s.diagonal();
        if diag.len() < f || diag.iter().any(|x| x.is_zero()) {
            return Err(Error::OracleMismatch("finite projection of the relation lattice is not of full rank".into()));
        }
        pic_invariants = diag.into_iter().filter(|x| !x.is_one()).collect();
        snf = Some(s);
    }
    let pic_order: BigInt = pic_invariants.iter().product();
    if &(&pic_order * &inf_pivots) != h {
        return Err(Error::OracleMismatch(format!("|Pic R| · [D∞ : div R^×] = {} ≠ {h}", &pic_order * &inf_pivots)));
    }
    // Cyclotomic unit index.
    let mut ulat = HermiteBasis::new(inf.count() - 1);
    for u in &units.units {
        let v = inf.valuations(u)?;
        for e in 0..n {
            let (_, i) = search.conjugate(&[], &v, e);
            ulat.insert(&i[..inf.count() - 1]);
        }
    }
    let unit_index = match ulat.index() {
        Some(i) if inf.count() > 1 => i / &inf_pivots,
        _ if inf.count() == 1 => BigInt::one(),
        _ => return Err(Error::RankDeficit { found: ulat.rank(), expected: inf.count() - 1 }),
    };
    let mut data = ClassData {
        factor_base: fb.clone(),
        elements,
        relations,
        cl0_order: h.clone(),
        pic_invariants,
        unit_index,
        witnesses: Vec::new(),
        candidates_tried: tried,
    };
    if let Some(s) = snf {
        data.witnesses = find_witnesses(t, &data, &s, cfg.witness_bound)?;
    }
    Ok(Some(data))
}

/// Witnesses for a basis of `Pic(R)[p]`, from combinations of relations
/// whose finite parts vanish modulo `p`.
fn find_witnesses(t: &FieldTower, data: &ClassData, snf: &crate::snf::Snf, limit: usize) -> Result<Vec<Witness>> {
    let p = t.p();
    let pb = BigInt::from(p);
    let f = data.factor_base.len();
    let diag = snf.diagonal();
    let ptors: Vec<usize> = (0..f).filter(|&i| diag[i].is_multiple_of(&pb)).collect();
    let want = ptors.len();
    if want == 0 {
        return Ok(Vec::new());
    }
    let fp = Gf::prime(p)?;
    let class_of = |x: &[i64]| -> Vec<u32> {
        ptors
            .iter()
            .map(|&i| {
                let y: BigInt = (0..f).filter(|&j| x[j] != 0).map(|j| BigInt::from(x[j]) * &snf.v[(j, i)]).sum();
                let step = &diag[i] / &pb;
                let r = y.mod_floor(&diag[i]);
                debug_assert!(r.is_multiple_of(&step));
                (r / step).mod_floor(&pb).to_u32().unwrap()
            })
            .collect()
    };
    // Echelon form mod p with tracked combinations.
    let mut echelon: BTreeMap<usize, (Vec<u32>, BTreeMap<usize, u32>)> = BTreeMap::new();
    let mut witnesses: Vec<Witness> = Vec::new();
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for (ri, rel) in data.relations.iter().enumerate().take(limit) {
        if rel.finite.is_empty() {
            continue;
        }
        let mut v = vec![0u32; f];
        for &(i, e) in &rel.finite {
            v[i] = e.rem_euclid(p as i64) as u32;
        }
        let mut combo: BTreeMap<usize, u32> = BTreeMap::from([(ri, 1)]);
        for (&c, (row, rc)) in &echelon {
            if v[c] == 0 {
                continue;
            }
            let s = fp.neg(v[c]);
            for j in 0..f {
                v[j] = fp.add(v[j], fp.mul(s, row[j]));
            }
            for (&r, &e) in rc {
                let x = combo.entry(r).or_insert(0);
                *x = fp.add(*x, fp.mul(s, e));
            }
            combo.retain(|_, e| *e != 0);
        }
        if let Some(c) = v.iter().position(|&x| x != 0) {
            let inv = fp.inv(v[c]);
            v.iter_mut().for_each(|x| *x = fp.mul(*x, inv));
            combo.values_mut().for_each(|x| *x = fp.mul(*x, inv));
            // Keep the echelon reduced below new pivots.
            echelon.insert(c, (v, combo));
            continue;
        }
        let mut sum = vec![0i64; f];
        for (&r, &e) in &combo {
            for &(i, x) in &data.relations[r].finite {
                sum[i] += e as i64 * x;
            }
        }
        if sum.iter().any(|x| x % p as i64 != 0) {
            return Err(Error::OracleMismatch("kernel combination is not divisible by p".into()));
        }
        let ideal: Vec<i64> = sum.iter().map(|x| x / p as i64).collect();
        let class = class_of(&ideal);
        let mut trial = classes.clone();
        trial.push(class.clone());
        if crate::linalg::rank_of(&trial, &fp) > classes.len() {
            classes.push(class.clone());
            witnesses.push(Witness {
                ideal: ideal.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| (i, e)).collect(),
                factors: combo.into_iter().collect(),
                class,
            });
            if witnesses.len() == want {
                return Ok(witnesses);
            }
        }
    }
    Err(Error::WitnessNotFound(format!("found {} of {want} independent p-torsion classes", witnesses.len())))
}

/// Checks `𝔞^p = (α)` by computing `α` and its valuations.
pub fn verify_witness(t: &FieldTower, data: &ClassData, w: &Witness) -> Result<()> {
    let alpha = data.witness_element(t, w);
    let p = t.p() as i64;
    let fb = &data.factor_base;
    for &(i, e) in &w.ideal {
        let v = fb.primes[i].valuation(t, &alpha) as i64;
        if v != p * e {
            return Err(Error::OracleMismatch(format!("witness valuation at {} is {v}, expected {}", fb.primes[i].label(), p * e)));
        }
    }
    let deg: i64 = w.ideal.iter().map(|&(i, e)| e * fb.primes[i].degree() as i64).sum();
    if t.norm(&alpha).deg() != Some((p * deg) as usize) {
        return Err(Error::OracleMismatch("witness norm has support outside the ideal".into()));
    }
    Ok(())
}

/// `dα/α` for every witness; each must be integral.
pub fn p_torsion_dlogs(om: &OmegaR, data: &ClassData) -> Result<Vec<Differential>> {
    let t = om.tower();
    let mut cache: HashMap<usize, Differential> = HashMap::new();
    let mut out = Vec::new();
    for w in &data.witnesses {
        let mut acc = om.zero();
        for &(r, e) in &w.factors {
            let rel = &data.relations[r];
            if !cache.contains_key(&rel.source) {
                cache.insert(rel.source, om.dlog(&t.to_l(&data.elements[rel.source]))?);
            }
            let base = om.apply_galois(t.delta_pow(rel.conj), &cache[&rel.source]);
            acc = om.add(&acc, &om.scale_const(&base, e));
        }
        if !acc.is_integral() {
            return Err(Error::NotIntegral(format!("witness with ideal {:?}", w.ideal)));
        }
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::PrimeData;

    #[test]
    fn conjugate_divisors_match_galois_images() {
        for (q, p, b) in [(4, "T^2+2T+1", 4), (3, "T^2+1", 3)] {
            let t = FieldTower::new(PrimeData::parse(q, p).unwrap()).unwrap();
            let fb = FactorBase::new(&t, b).unwrap();
            let inf = InfinitePlaces::new(&t);
            let gen = t.prime_data().lift(t.generator_code());
            let norms = NormEvaluator::new(&t, &inf, NORM_POINTS).unwrap();
            let search = Search { t: &t, fb: &fb, inf: &inf, inf_perm: inf.permutation(&gen), norms };
            let s = t.galois(&gen).unwrap();
            let mut checked = 0;
            let g = crate::zeta::genus(q, t.d());
            let basis = pole_basis(&t, &inf, g, 0, 2 * g + 6).unwrap();
            for x in (1..=basis.bound).flat_map(|m| LevelIter::new(&t, &basis, m).take(200)) {
                let Some((f, i)) = search.relation(&x, None).unwrap() else { continue };
                let y = t.apply(s, &x);
                let (gf, gi) = search.relation(&y, None).unwrap().expect("conjugate of a relation is a relation");
                let (cf, ci) = search.conjugate(&f, &i, 1);
                let mut gf = gf;
                gf.sort_unstable();
                assert_eq!((cf, ci), (gf, gi), "q={q} p={p}");
                checked += 1;
            }
            assert!(checked > 10);
        }
    }
}
