//! Cyclotomic units, saturation modulo `p`-th powers, and the unit module
//! `A/p ⊗ R^×`.

use crate::carlitz::carlitz_action;
use crate::delta::DeltaModule;
use crate::differentials::{Differential, OmegaR};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::gf::Gf;
use crate::linalg::FqMatrix;
use crate::poly::APoly;
use crate::tower::{FieldTower, REl};

/// Units of `R` with certified inverses.
#[derive(Clone, Debug)]
pub struct UnitSet {
    pub units: Vec<REl>,
    pub inverses: Vec<REl>,
    pub labels: Vec<String>,
    pub saturated: bool,
}

impl UnitSet {
    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }
}

/// `(q^d - 1)/(q - 1) - 1`.
pub fn expected_rank(t: &FieldTower) -> usize {
    t.degree() / (t.q() as usize - 1) - 1
}

/// Monic representatives of `(A/p)^× / k^×` other than `1`, in code order.
pub fn unit_indices(t: &FieldTower) -> Vec<APoly> {
    let q = t.q() as u64;
    (1..t.d())
        .flat_map(|m| (q.pow(m as u32)..2 * q.pow(m as u32)).map(move |c| APoly::from_code(c, q as u32)))
        .collect()
}

/// `φ_a(λ) / λ`.
pub fn cyclotomic_unit(t: &FieldTower, a: &APoly) -> REl {
    let phi = carlitz_action(a, t.k());
    let xs = phi.to_x_coeffs(t.k());
    t.from_xpoly(&xs[1..])
}

pub fn cyclotomic_units(t: &FieldTower) -> Result<UnitSet> {
    let mut set = UnitSet { units: Vec::new(), inverses: Vec::new(), labels: Vec::new(), saturated: false };
    for a in unit_indices(t) {
        let u = cyclotomic_unit(t, &a);
        if !t.norm(&u).is_one() {
            return Err(Error::OracleMismatch(format!("N(u_{}) ≠ 1", a.format("T"))));
        }
        set.inverses.push(t.unit_inverse(&u)?);
        set.units.push(u);
        set.labels.push(format!("u_{{{}}}", a.format("T")));
    }
    Ok(set)
}

/// `du / u` for a unit `u`.
pub fn dlog(om: &OmegaR, u: &REl) -> Result<Differential> {
    let t = om.tower();
    if !t.is_unit(u) {
        return Err(Error::NotAUnit);
    }
    om.dlog(&t.to_l(u))
}

fn product(t: &FieldTower, units: &[REl], inverses: &[REl], exps: &[i64]) -> REl {
    let mut acc = t.one();
    for ((u, ui), &e) in units.iter().zip(inverses).zip(exps) {
        let base = if e >= 0 { u } else { ui };
        acc = t.mul(&acc, &t.pow(base, e.unsigned_abs()));
    }
    acc
}

/// `F_p`-coordinates of `dlog u` for every unit.
pub fn dlog_matrix(om: &OmegaR, frame: &Frame, set: &UnitSet) -> Result<Vec<Vec<u32>>> {
    set.units.iter().map(|u| frame.p_coords(&dlog(om, u)?)).collect()
}

/// Replaces units by `p`-th roots of products until no `F_p`-combination is
/// a `p`-th power. The test uses the kernel of the `dlog` map, which is
/// exactly the `p`-th powers.
pub fn saturate_units(om: &OmegaR, frame: &Frame, set: &UnitSet) -> Result<UnitSet> {
    let t = om.tower();
    let p = t.p() as i64;
    let fp = Gf::prime(t.p())?;
    let mut out = set.clone();
    let limit = 64 * (set.len() + 1);
    for _ in 0..limit {
        let vectors = dlog_matrix(om, frame, &out)?;
        let kernel = if vectors.is_empty() { Vec::new() } else { FqMatrix::from_rows(&vectors).left_kernel(&fp) };
        let Some(e) = kernel.first() else {
            out.saturated = true;
            let want = expected_rank(t);
            if out.len() != want {
                return Err(Error::RankDeficit { found: out.len(), expected: want });
            }
            return Ok(out);
        };
        let i0 = e.iter().rposition(|&c| c != 0).unwrap();
        let scale = fp.inv(e[i0]);
        let exps: Vec<i64> = e.iter().map(|&c| fp.mul(c, scale) as i64).collect();
        let x = product(t, &out.units, &out.inverses, &exps);
        let y = t
            .pth_root(&t.to_l(&x))
            .and_then(|y| t.to_r(&y))
            .ok_or_else(|| Error::OracleMismatch("dlog kernel element is not a p-th power".into()))?;
        if y.coords()[1..].iter().all(|c| c.is_zero()) && y.coords()[0].deg() == Some(0) {
            // The combination is trivial: the unit was dependent on the others.
            out.units.remove(i0);
            out.inverses.remove(i0);
            out.labels.remove(i0);
            continue;
        }
        let yi = t.unit_inverse(&y)?;
        let label = format!("root_{p}({})", exps.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","));
        out.units[i0] = y;
        out.inverses[i0] = yi;
        out.labels[i0] = label;
    }
    Err(Error::OracleMismatch("saturation did not terminate".into()))
}

/// `A/p ⊗ R^×` with `Δ` acting through its action on `dlog` vectors.
pub fn unit_module(om: &OmegaR, frame: &Frame, set: &UnitSet) -> Result<DeltaModule> {
    let t = om.tower();
    let fp = Gf::prime(t.p())?;
    let r = set.len();
    let field = t.prime_data().residue_arc();
    if r == 0 {
        return Ok(DeltaModule::zero(field, t.generator_code(), t.degree()));
    }
    let vectors = dlog_matrix(om, frame, set)?;
    let basis = FqMatrix::from_cols(vectors[0].len(), &vectors);
    let mut m = FqMatrix::zeros(r, r);
    for (j, u) in set.units.iter().enumerate() {
        let img = om.apply_galois(t.delta0(), &dlog(om, u)?);
        let coords = basis
            .solve(&frame.p_coords(&img)?, &fp)
            .ok_or_else(|| Error::OracleMismatch("unit span is not Δ-stable".into()))?;
        for (i, c) in coords.into_iter().enumerate() {
            m[(i, j)] = c;
        }
    }
    Ok(DeltaModule::new(field, t.generator_code(), t.degree(), m, set.labels.clone()))
}

/// Eigenspace profile predicted for `A/p ⊗ R^×`: one at nontrivial
/// characters trivial on `k^×`, zero elsewhere.
pub fn unit_profile(t: &FieldTower) -> Vec<usize> {
    let q1 = t.q() as usize - 1;
    (0..t.degree()).map(|j| usize::from(j != 0 && j % q1 == 0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::PrimeData;

    #[test]
    fn u_t_over_f2() {
        let t = FieldTower::new(PrimeData::parse(2, "T^2+T+1").unwrap()).unwrap();
        let u = cyclotomic_unit(&t, &APoly::x());
        assert_eq!(u, t.add(&t.lambda(), &t.from_a(APoly::x())));
        assert_eq!(cyclotomic_unit(&t, &APoly::one()), t.one());
        let set = cyclotomic_units(&t).unwrap();
        assert_eq!(set.len(), 2);
    }
}
