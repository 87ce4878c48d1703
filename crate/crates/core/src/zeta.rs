//! Zeta numerator of `L` by point counting on the plane model `f(T, x) = 0`.

use rayon::prelude::*;

use crate::carlitz::carlitz_action;
use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::poly::least_primitive;
use crate::tower::FieldTower;

/// Largest extension field enumerated when counting points.
pub const MAX_COUNT_FIELD: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaData {
    pub genus: usize,
    /// `N_m` for `m = 1, 2, ...`.
    pub counts: Vec<u64>,
    /// Coefficients `a_0 .. a_2g` of `P(t)`.
    pub coeffs: Vec<i128>,
    /// Number of coefficients checked against the functional equation.
    pub symmetry_checks: usize,
}

impl ZetaData {
    /// `P(1) = |Cl^0(L)|`.
    pub fn class_number(&self) -> i128 {
        self.coeffs.iter().sum()
    }
}

/// Genus from the tame Riemann-Hurwitz formula.
pub fn genus(q: u64, d: usize) -> usize {
    let n = q.pow(d as u32) as i64 - 1;
    let two_g_minus_2 = -2 * n + (n - 1) * d as i64 + n * (q as i64 - 2) / (q as i64 - 1);
    ((two_g_minus_2 + 2) / 2) as usize
}

/// Number of infinite places, all of degree one.
pub fn infinite_places(q: u64, d: usize) -> usize {
    (q.pow(d as u32) as usize - 1) / (q as usize - 1)
}

/// Number of `F_{q^m}`-points on the smooth affine model.
pub fn affine_points(tower: &FieldTower, m: usize) -> Result<u64> {
    let k = tower.k();
    let q = tower.q() as u64;
    let size = q.pow(m as u32);
    if size > MAX_COUNT_FIELD {
        return Err(Error::SizeBound { what: "point-count field size", value: size, limit: MAX_COUNT_FIELD });
    }
    let big = if m == 1 { Gf::new(q)? } else { Gf::extension(k, least_primitive(k, m).coeffs())? };
    let p = big.characteristic() as u64;
    let dim = (big.degree()) as usize;
    let phi = carlitz_action(tower.prime_data().prime(), k);
    let phi_coeffs: Vec<_> = phi.coeffs().to_vec();
    // basis_pows[i][j] = (p^j)^(q^i)
    let basis: Vec<Elem> = (0..dim).map(|j| p.pow(j as u32) as Elem).collect();
    let basis_pows: Vec<Vec<Elem>> = (0..phi_coeffs.len())
        .map(|i| basis.iter().map(|&b| big.pow(b, q.pow(i as u32))).collect())
        .collect();
    let prime = tower.prime_data().prime().clone();
    let total: u64 = (0..size as Elem)
        .into_par_iter()
        .map(|t| {
            let cs: Vec<Elem> = phi_coeffs.iter().map(|c| eval_in(c.coeffs(), t, &big)).collect();
            let cols: Vec<Elem> = (0..dim)
                .map(|j| {
                    cs.iter()
                        .enumerate()
                        .fold(0, |acc, (i, &c)| big.add(acc, big.mul(c, basis_pows[i][j])))
                })
                .collect();
            let rank = rank_fp(&cols, p as u32, dim);
            let kernel = p.pow((dim - rank) as u32);
            let at_zero = u64::from(eval_in(prime.coeffs(), t, &big) == 0);
            kernel - 1 + at_zero
        })
        .sum();
    Ok(total)
}

/// Evaluates a polynomial with coefficients in the subfield `F_q` at `t`.
fn eval_in(coeffs: &[Elem], t: Elem, big: &Gf) -> Elem {
    coeffs.iter().rev().fold(0, |acc, &c| big.add(big.mul(acc, t), c))
}

/// Rank over `F_p` of vectors given by their base-`p` digit codes.
fn rank_fp(vectors: &[Elem], p: u32, dim: usize) -> usize {
    if p == 2 {
        let mut basis = [0u32; 32];
        let mut rank = 0;
        for &v in vectors {
            let mut x = v;
            while x != 0 {
                let top = 31 - x.leading_zeros() as usize;
                if basis[top] == 0 {
                    basis[top] = x;
                    rank += 1;
                    break;
                }
                x ^= basis[top];
            }
        }
        return rank;
    }
    let fp = Gf::prime(p).expect("prime characteristic");
    let rows: Vec<Vec<Elem>> = vectors
        .iter()
        .map(|&v| {
            let mut x = v;
            (0..dim)
                .map(|_| {
                    let r = x % p;
                    x /= p;
                    r
                })
                .collect()
        })
        .collect();
    crate::linalg::rank_of(&rows, &fp)
}

/// Point counts for `m = 1..=g+extra`, the numerator by Newton's identities,
/// and a check of the functional equation on every coefficient beyond `g`.
pub fn zeta_numerator(tower: &FieldTower) -> Result<ZetaData> {
    let q = tower.q() as u64;
    let g = genus(q, tower.d());
    let inf = infinite_places(q, tower.d()) as u64;
    if g == 0 {
        let n1 = affine_points(tower, 1)? + inf;
        if n1 != q + 1 {
            return Err(Error::SymmetryViolation(format!("genus 0 but N_1 = {n1}")));
        }
        return Ok(ZetaData { genus: 0, counts: vec![n1], coeffs: vec![1], symmetry_checks: 0 });
    }
    let mut counts = Vec::new();
    let mut m = 1;
    loop {
        let size = q.checked_pow(m as u32).unwrap_or(u64::MAX);
        if m > g && (size > MAX_COUNT_FIELD || m >= g + 3) {
            break;
        }
        if size > MAX_COUNT_FIELD {
            return Err(Error::SizeBound { what: "point-count field size", value: size, limit: MAX_COUNT_FIELD });
        }
        counts.push(affine_points(tower, m)? + inf);
        m += 1;
    }
    let big_m = counts.len();
    let s: Vec<i128> = (1..=big_m)
        .map(|i| 1 + (q as i128).pow(i as u32) - counts[i - 1] as i128)
        .collect();
    let mut a = vec![1i128];
    for j in 1..=big_m.min(2 * g) {
        let acc: i128 = (1..=j).map(|i| s[i - 1] * a[j - i]).sum();
        if acc % j as i128 != 0 {
            return Err(Error::SymmetryViolation(format!("Newton identity not integral at {j}")));
        }
        a.push(-acc / j as i128);
    }
    let qi = q as i128;
    let mut checks = 0;
    for i in g + 1..a.len() {
        if a[i] != qi.pow((i - g) as u32) * a[2 * g - i] {
            return Err(Error::SymmetryViolation(format!("a_{i} = {} vs a_{} = {}", a[i], 2 * g - i, a[2 * g - i])));
        }
        checks += 1;
    }
    let mut coeffs = a.clone();
    coeffs.truncate(g + 1);
    for i in g + 1..=2 * g {
        coeffs.push(qi.pow((i - g) as u32) * coeffs[2 * g - i]);
    }
    if coeffs[2 * g] != qi.pow(g as u32) {
        return Err(Error::SymmetryViolation("leading coefficient is not q^g".into()));
    }
    Ok(ZetaData { genus: g, counts, coeffs, symmetry_checks: checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::PrimeData;

    #[test]
    fn genus_values() {
        assert_eq!(genus(2, 2), 0);
        assert_eq!(genus(2, 3), 3);
        assert_eq!(genus(3, 2), 2);
        assert_eq!(genus(4, 2), 5);
        assert_eq!(genus(2, 4), 14);
        assert_eq!(infinite_places(3, 2), 4);
    }

    #[test]
    fn genus_zero_is_one() {
        let t = FieldTower::new(PrimeData::parse(2, "T^2+T+1").unwrap()).unwrap();
        let z = zeta_numerator(&t).unwrap();
        assert_eq!(z.coeffs, vec![1]);
        assert_eq!(z.class_number(), 1);
    }

    #[test]
    fn affine_count_matches_brute_force() {
        let t = FieldTower::new(PrimeData::parse(3, "T^2+1").unwrap()).unwrap();
        let k = t.k();
        let f = t.torsion_poly();
        let mut brute = 0;
        for tt in 0..3 {
            for x in 0..3 {
                let v = f.iter().rev().fold(0, |acc, c| k.add(k.mul(acc, x), c.eval(tt, k)));
                brute += u64::from(v == 0);
            }
        }
        assert_eq!(affine_points(&t, 1).unwrap(), brute);
    }
}
