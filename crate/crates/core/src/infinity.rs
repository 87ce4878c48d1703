//! Valuations at the infinite places of `L`.
//!
//! With `T = -π^(1-q)`, the completion of `L` at an infinite place is
//! `F_q((π))`. The embedding used here sends `λ` to `e_C(π̃/p)`, where
//! `π̃ = π^(-q) Π_{i≥1} (1 - T^(1-q^i))^(-1)` is the Carlitz period. The
//! place `w_b`, for monic `b` of degree below `d`, is `β ↦ ord_π ι(σ_b β)`.

use std::sync::RwLock;

use crate::carlitz::ExpSeries;
use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::poly::APoly;
use crate::tower::{FieldTower, REl};
use crate::units::unit_indices;

/// `Σ c_i π^(val+i) + O(π^(val+len))`. An empty coefficient list means the
/// value is zero to the stated precision `val`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    val: i64,
    coeffs: Vec<Elem>,
}

impl Laurent {
    pub fn new(val: i64, coeffs: Vec<Elem>) -> Self {
        let lead = coeffs.iter().position(|&c| c != 0).unwrap_or(coeffs.len());
        Laurent { val: val + lead as i64, coeffs: coeffs[lead..].to_vec() }
    }

    /// Valuation if known (nonzero to the working precision).
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn abs_prec(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    pub fn coeff(&self, e: i64) -> Elem {
        if e < self.val {
            return 0;
        }
        let i = (e - self.val) as usize;
        assert!(i < self.coeffs.len(), "coefficient beyond precision");
        self.coeffs[i]
    }

    /// A polynomial in `T` with relative precision `rel`.
    pub fn from_apoly(a: &APoly, q: u32, rel: usize, k: &Gf) -> Laurent {
        let Some(deg) = a.deg() else {
            return Laurent { val: i64::MAX / 4, coeffs: Vec::new() };
        };
        let step = q as usize - 1;
        let val = -(step as i64) * deg as i64;
        let mut v = vec![0; rel];
        for (kk, &c) in a.coeffs().iter().enumerate() {
            let pos = (deg - kk) * step;
            if pos < rel && c != 0 {
                let sign = if kk % 2 == 1 { k.neg(c) } else { c };
                v[pos] = sign;
            }
        }
        Laurent::new(val, v)
    }

    pub fn mul(&self, o: &Laurent, k: &Gf) -> Laurent {
        let n = self.coeffs.len().min(o.coeffs.len());
        let mut v = vec![0; n];
        for i in 0..n {
            let a = self.coeffs[i];
            if a == 0 {
                continue;
            }
            for j in 0..n - i {
                let b = o.coeffs[j];
                if b != 0 {
                    v[i + j] = k.add(v[i + j], k.mul(a, b));
                }
            }
        }
        Laurent::new(self.val + o.val, v)
    }

    pub fn add(&self, o: &Laurent, k: &Gf) -> Laurent {
        let abs = self.abs_prec().min(o.abs_prec());
        let val = self.val.min(o.val);
        if abs <= val {
            return Laurent { val: abs, coeffs: Vec::new() };
        }
        let v = (val..abs)
            .map(|e| {
                let a = if e >= self.val { self.coeffs[(e - self.val) as usize] } else { 0 };
                let b = if e >= o.val { o.coeffs[(e - o.val) as usize] } else { 0 };
                k.add(a, b)
            })
            .collect();
        Laurent::new(val, v)
    }

    pub fn neg(&self, k: &Gf) -> Laurent {
        Laurent { val: self.val, coeffs: self.coeffs.iter().map(|&c| k.neg(c)).collect() }
    }

    pub fn inv(&self, k: &Gf) -> Option<Laurent> {
        let n = self.coeffs.len();
        if n == 0 {
            return None;
        }
        let i0 = k.inv(self.coeffs[0]);
        let mut v = vec![0; n];
        v[0] = i0;
        for m in 1..n {
            let mut acc = 0;
            for j in 1..=m {
                acc = k.add(acc, k.mul(self.coeffs[j], v[m - j]));
            }
            v[m] = k.neg(k.mul(acc, i0));
        }
        Some(Laurent { val: -self.val, coeffs: v })
    }

    /// `x ↦ x^q`; constants are fixed.
    pub fn frobenius(&self, q: u32) -> Laurent {
        let q = q as usize;
        let mut v = vec![0; self.coeffs.len() * q];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * q] = c;
        }
        Laurent { val: self.val * q as i64, coeffs: v }
    }

    /// Multiplies by a polynomial in `T`, keeping the relative precision.
    pub fn mul_apoly(&self, a: &APoly, q: u32, k: &Gf) -> Laurent {
        let Some(deg) = a.deg() else {
            return Laurent { val: i64::MAX / 4, coeffs: Vec::new() };
        };
        let step = q as usize - 1;
        let n = self.coeffs.len();
        let mut v = vec![0; n];
        for (kk, &c) in a.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = if kk % 2 == 1 { k.neg(c) } else { c };
            let pos = (deg - kk) * step;
            for i in 0..n.saturating_sub(pos) {
                let s = self.coeffs[i];
                if s != 0 {
                    v[i + pos] = k.add(v[i + pos], k.mul(c, s));
                }
            }
        }
        Laurent::new(self.val - (step * deg) as i64, v)
    }
}

/// Expansions of the conjugates of `λ` at the chosen infinite place.
struct Conjugates {
    rel: usize,
    /// `powers[b][i] = ι(σ_b λ)^i`.
    powers: Vec<Vec<Laurent>>,
}

pub struct InfinitePlaces<'a> {
    tower: &'a FieldTower,
    /// Monic representatives `b`, in code order, starting with `1`.
    reps: Vec<APoly>,
    cache: RwLock<Option<Conjugates>>,
}

impl<'a> InfinitePlaces<'a> {
    pub fn new(tower: &'a FieldTower) -> Self {
        let mut reps = vec![APoly::one()];
        reps.extend(unit_indices(tower));
        InfinitePlaces { tower, reps, cache: RwLock::new(None) }
    }

    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[APoly] {
        &self.reps
    }

    /// Index of the place `w_b` for any `b` prime to `p`.
    pub fn index_of(&self, b: &APoly) -> usize {
        let t = self.tower;
        let k = t.k();
        let r = b.rem(t.prime_data().prime(), k).monic(k);
        self.reps.iter().position(|x| *x == r).expect("coset representative")
    }

    /// `v_{w_b}(σ_a β) = v_{w_{ab}}(β)`: returns the index map `b ↦ ab`.
    pub fn permutation(&self, a: &APoly) -> Vec<usize> {
        let k = self.tower.k();
        self.reps.iter().map(|b| self.index_of(&a.mul(b, k))).collect()
    }

    /// `ι(σ_b λ) = e_C(b π̃ / p)` with relative precision about `rel`.
    pub fn conjugate(&self, b: &APoly, rel: usize) -> Laurent {
        let t = self.tower;
        let k = t.k();
        let q = t.q();
        let work = rel + 4 * t.degree() * q as usize;
        // π̃ π^q = Π (1 - π^m_i)^{-1}, m_i = (q-1)(q^i - 1).
        let mut period = Laurent::new(0, {
            let mut v = vec![0; work];
            v[0] = 1;
            v
        });
        let mut i = 1u32;
        loop {
            let m = (q as usize - 1) * ((q as usize).pow(i) - 1);
            if m >= work {
                break;
            }
            let mut geo = vec![0; work];
            let mut e = 0;
            while e < work {
                geo[e] = 1;
                e += m;
            }
            period = period.mul(&Laurent::new(0, geo), k);
            i += 1;
        }
        let period = Laurent { val: period.val - q as i64, coeffs: period.coeffs };
        let p_inv = Laurent::from_apoly(t.prime_data().prime(), q, work, k).inv(k).unwrap();
        let z = period.mul(&p_inv, k).mul_apoly(b, q, k);
        let vz = z.val;
        // Terms z^(q^j) / D_j; stop once their valuation exceeds the
        // precision of the leading term.
        let target = vz + work as i64;
        let mut acc = z.clone();
        let mut zj = z;
        let mut j = 1;
        loop {
            zj = zj.frobenius(q);
            let exp = ExpSeries::new(j + 1, k);
            let dj = Laurent::from_apoly(exp.factorial(j), q, work, k).inv(k).unwrap();
            let term = zj.mul(&dj, k);
            if term.val >= target {
                break;
            }
            acc = acc.add(&term, k);
            j += 1;
        }
        acc
    }

    fn ensure(&self, rel: usize) {
        if self.cache.read().unwrap().as_ref().is_some_and(|c| c.rel >= rel) {
            return;
        }
        let t = self.tower;
        let k = t.k();
        let powers = self
            .reps
            .iter()
            .map(|b| {
                let lam = self.conjugate(b, rel);
                let mut pw = vec![Laurent::new(0, {
                    let mut v = vec![0; lam.coeffs.len()];
                    v[0] = 1;
                    v
                })];
                for i in 1..t.degree() {
                    pw.push(pw[i - 1].mul(&lam, k));
                }
                pw
            })
            .collect();
        *self.cache.write().unwrap() = Some(Conjugates { rel, powers });
    }

    fn embed_with(&self, x: &REl, b_index: usize) -> Laurent {
        let t = self.tower;
        let k = t.k();
        let guard = self.cache.read().unwrap();
        let pw = &guard.as_ref().unwrap().powers[b_index];
        let mut acc: Option<Laurent> = None;
        for (i, c) in x.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = pw[i].mul_apoly(c, t.q(), k);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term, k),
            });
        }
        acc.unwrap_or(Laurent { val: i64::MAX / 4, coeffs: Vec::new() })
    }

    /// `ι(σ_b x)`, the image of `x` in `F_q((π))` under the `b`-th embedding.
    pub fn embed(&self, x: &REl, b_index: usize, rel: usize) -> Laurent {
        self.ensure(rel);
        self.embed_with(x, b_index)
    }

    /// `v_w(x)` at every infinite place; `x ≠ 0`.
    pub fn valuations(&self, x: &REl) -> Result<Vec<i64>> {
        if x.is_zero() {
            return Err(Error::Degenerate("valuation of zero".into()));
        }
        let mut rel = 64 + 8 * self.tower.degree();
        loop {
            self.ensure(rel);
            let vals: Vec<Option<i64>> =
                (0..self.count()).map(|b| self.embed_with(x, b).valuation()).collect();
            if vals.iter().all(|v| v.is_some()) {
                return Ok(vals.into_iter().map(|v| v.unwrap()).collect());
            }
            rel *= 2;
            if rel > 1 << 16 {
                return Err(Error::Degenerate("infinite valuation not determined".into()));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carlitz::carlitz_action;
    use crate::tower::PrimeData;

    fn tower(q: u64, p: &str) -> FieldTower {
        FieldTower::new(PrimeData::parse(q, p).unwrap()).unwrap()
    }

    #[test]
    fn conjugate_is_a_torsion_point() {
        for (q, p) in [(2, "T^2+T+1"), (3, "T^2+1"), (4, "T^2+T+2"), (2, "T^3+T+1")] {
            let t = tower(q, p);
            let k = t.k();
            let inf = InfinitePlaces::new(&t);
            let lam = inf.conjugate(&APoly::one(), 100);
            let phi = carlitz_action(t.prime_data().prime(), k);
            let val = phi.eval_with(&lam, |c, x| x.mul_apoly(c, t.q(), k), |x| x.frobenius(t.q()), |x, y| x.add(y, k), Laurent::new(0, vec![0; 400]));
            // φ_p(λ) vanishes to the available precision.
            assert!(val.valuation().is_none(), "q={q} p={p}");
            assert!(val.abs_prec() > lam.valuation().unwrap() + 20);
        }
    }

    #[test]
    fn product_formula() {
        for (q, p) in [(2, "T^2+T+1"), (3, "T^2+1"), (2, "T^3+T+1")] {
            let t = tower(q, p);
            let inf = InfinitePlaces::new(&t);
            let k = t.k();
            let elems = [
                t.lambda(),
                t.from_a(APoly::x()),
                t.add(&t.lambda_pow(2), &t.from_a(APoly::x().add(&APoly::one(), k))),
            ];
            for x in elems {
                let vals = inf.valuations(&x).unwrap();
                let s: i64 = vals.iter().sum();
                assert_eq!(s, -(t.norm(&x).deg().unwrap() as i64), "q={q} p={p}");
            }
            // T has a pole of order q - 1 at each infinite place.
            let vt = inf.valuations(&t.from_a(APoly::x())).unwrap();
            assert!(vt.iter().all(|&v| v == 1 - q as i64));
        }
    }
}
