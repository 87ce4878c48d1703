//! Expansions at the totally ramified prime `q = (λ)`.
//!
//! The completion of `R` at `q` is `F_{q^d}[[λ]]`, with the residue field
//! embedded through Teichmüller representatives. `T` maps to the unique
//! series `t(λ)` with `t(0) = T mod p` solving `f(t, λ) = 0`.

use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::poly::APoly;
use crate::tower::{FieldTower, GaloisElement, LEl, REl};

/// `c_0 + c_1 λ + ... + c_{N-1} λ^{N-1} + O(λ^N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<Elem>,
}

impl Series {
    pub fn zero(prec: usize) -> Self {
        Series { coeffs: vec![0; prec] }
    }

    pub fn constant(c: Elem, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if prec > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    pub fn monomial(c: Elem, e: usize, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if e < prec {
            s.coeffs[e] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Elem>) -> Self {
        Series { coeffs }
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn truncate(&self, prec: usize) -> Series {
        assert!(prec <= self.prec(), "cannot raise precision");
        Series { coeffs: self.coeffs[..prec].to_vec() }
    }

    pub fn add(&self, o: &Series, f: &Gf) -> Series {
        let n = self.prec().min(o.prec());
        Series { coeffs: (0..n).map(|i| f.add(self.coeffs[i], o.coeffs[i])).collect() }
    }

    pub fn sub(&self, o: &Series, f: &Gf) -> Series {
        let n = self.prec().min(o.prec());
        Series { coeffs: (0..n).map(|i| f.sub(self.coeffs[i], o.coeffs[i])).collect() }
    }

    pub fn neg(&self, f: &Gf) -> Series {
        Series { coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn scale(&self, c: Elem, f: &Gf) -> Series {
        Series { coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect() }
    }

    pub fn mul(&self, o: &Series, f: &Gf) -> Series {
        let n = self.prec().min(o.prec());
        let mut v = vec![0; n];
        for (i, &a) in self.coeffs[..n].iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs[..n - i].iter().enumerate() {
                if b != 0 {
                    v[i + j] = f.add(v[i + j], f.mul(a, b));
                }
            }
        }
        Series { coeffs: v }
    }

    /// Multiplies by `λ^e`, keeping the precision.
    pub fn shift(&self, e: usize) -> Series {
        let n = self.prec();
        let mut v = vec![0; n];
        for i in e..n {
            v[i] = self.coeffs[i - e];
        }
        Series { coeffs: v }
    }

    /// Divides by `λ^e`, losing `e` terms of precision; the first `e`
    /// coefficients must vanish.
    pub fn unshift(&self, e: usize) -> Option<Series> {
        if self.coeffs[..e.min(self.prec())].iter().any(|&c| c != 0) {
            return None;
        }
        Some(Series { coeffs: self.coeffs[e.min(self.prec())..].to_vec() })
    }

    /// Inverse of a series with nonzero constant term.
    pub fn inv(&self, f: &Gf) -> Option<Series> {
        let n = self.prec();
        let c0 = *self.coeffs.first()?;
        if c0 == 0 {
            return None;
        }
        let i0 = f.inv(c0);
        let mut v = vec![0; n];
        v[0] = i0;
        for m in 1..n {
            let mut acc = 0;
            for j in 1..=m {
                acc = f.add(acc, f.mul(self.coeffs[j], v[m - j]));
            }
            v[m] = f.neg(f.mul(acc, i0));
        }
        Some(Series { coeffs: v })
    }

    pub fn pow(&self, mut e: u64, f: &Gf) -> Series {
        let mut acc = Series::constant(1, self.prec());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b, f);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b, f);
            }
        }
        acc
    }

    /// `self(s)` for `s` without constant term.
    pub fn compose(&self, s: &Series, f: &Gf) -> Series {
        assert_eq!(s.coeff(0), 0, "inner series must vanish at 0");
        let n = self.prec().min(s.prec());
        let mut acc = Series::zero(n);
        for &c in self.coeffs[..n].iter().rev() {
            acc = acc.mul(s, f);
            acc.coeffs[0] = f.add(acc.coeffs[0], c);
        }
        acc
    }

    /// Formal derivative; the result has one term less precision.
    pub fn derivative(&self, f: &Gf) -> Series {
        let n = self.prec();
        Series {
            coeffs: (1..n).map(|i| f.mul(self.coeffs[i], f.from_int(i as i64))).collect(),
        }
    }

    /// Evaluates a polynomial with coefficients in the subfield `F_q`.
    pub fn eval_poly(a: &APoly, t: &Series, f: &Gf) -> Series {
        let mut acc = Series::zero(t.prec());
        for &c in a.coeffs().iter().rev() {
            acc = acc.mul(t, f);
            if t.prec() > 0 {
                acc.coeffs[0] = f.add(acc.coeffs[0], c);
            }
        }
        acc
    }
}

/// Expansion data of the tower at `q` to a fixed precision.
#[derive(Clone, Debug)]
pub struct LocalExpansion<'a> {
    tower: &'a FieldTower,
    prec: usize,
    t: Series,
}

impl<'a> LocalExpansion<'a> {
    pub fn new(tower: &'a FieldTower, prec: usize) -> Self {
        let f = tower.residue();
        let poly = tower.torsion_poly();
        let mut t = Series::constant(tower.prime_data().reduce(&APoly::x()), 1.min(prec).max(1));
        let mut cur = 1;
        while cur < prec {
            cur = (2 * cur).min(prec);
            let mut tt = Series::zero(cur);
            tt.coeffs[..t.prec()].copy_from_slice(t.coeffs());
            let mut g = Series::zero(cur);
            let mut gd = Series::zero(cur);
            for (i, c) in poly.iter().enumerate().rev() {
                if i >= cur {
                    continue;
                }
                let ci = Series::eval_poly(c, &tt, f).shift(i);
                let di = Series::eval_poly(&c.derivative(tower.k()), &tt, f).shift(i);
                g = g.add(&ci, f);
                gd = gd.add(&di, f);
            }
            let step = g.mul(&gd.inv(f).expect("∂f/∂T is a unit at q"), f);
            t = tt.sub(&step, f);
        }
        let t = if prec == 0 { Series::zero(0) } else { t };
        LocalExpansion { tower, prec, t }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn tower(&self) -> &FieldTower {
        self.tower
    }

    pub fn residue(&self) -> &Gf {
        self.tower.residue()
    }

    /// Image of `T`.
    pub fn t(&self) -> &Series {
        &self.t
    }

    pub fn expand_a(&self, a: &APoly) -> Series {
        Series::eval_poly(a, &self.t, self.residue())
    }

    pub fn expand_r(&self, x: &REl) -> Series {
        let f = self.residue();
        let mut acc = Series::zero(self.prec);
        for (i, c) in x.coords().iter().enumerate() {
            if i >= self.prec || c.is_zero() {
                continue;
            }
            acc = acc.add(&self.expand_a(c).shift(i), f);
        }
        acc
    }

    /// Expansion of an element of `L` that is integral at `q`.
    pub fn expand_l(&self, x: &LEl) -> Result<Series> {
        let f = self.residue();
        let tw = self.tower;
        if x.den().is_one() {
            return Ok(self.expand_r(x.num()));
        }
        let v = x.den().valuation(tw.prime_data().prime(), tw.k()) * tw.degree();
        let wide = LocalExpansion::new(tw, self.prec + v);
        let num = wide.expand_r(x.num()).unshift(v).ok_or(Error::PoleAtQ)?;
        let den = wide.expand_a(x.den()).unshift(v).expect("p^e has λ-valuation e n");
        Ok(num.mul(&den.inv(f).expect("unit after removing λ-power"), f))
    }

    /// Expansion of `σ(λ)`.
    pub fn galois_image(&self, s: GaloisElement) -> Series {
        self.expand_r(self.tower.galois_image(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::PrimeData;

    fn tower(q: u64, p: &str) -> FieldTower {
        FieldTower::new(PrimeData::parse(q, p).unwrap()).unwrap()
    }

    #[test]
    fn t_solves_the_torsion_equation() {
        for (q, p) in [(2, "T^2+T+1"), (3, "T^2+1"), (4, "T^2+T+2"), (2, "T^3+T+1")] {
            let tw = tower(q, p);
            let loc = LocalExpansion::new(&tw, 40);
            let f = tw.residue();
            assert_eq!(loc.t().coeff(0), tw.q());
            let mut acc = Series::zero(40);
            for (i, c) in tw.torsion_poly().iter().enumerate() {
                acc = acc.add(&loc.expand_a(c).shift(i), f);
            }
            assert!(acc.is_zero(), "q={q} p={p}");
        }
    }

    #[test]
    fn prime_is_lambda_cubed_over_lambda_plus_one() {
        let tw = tower(2, "T^2+T+1");
        let loc = LocalExpansion::new(&tw, 4);
        let e = loc.expand_a(tw.prime_data().prime());
        assert_eq!(e.coeffs(), &[0, 0, 0, 1]);
    }

    #[test]
    fn expansion_is_a_ring_map() {
        let tw = tower(3, "T^2+1");
        let loc = LocalExpansion::new(&tw, 30);
        let f = tw.residue();
        let k = tw.k();
        let a = tw.add(&tw.lambda_pow(3), &tw.from_a(APoly::x().add(&APoly::one(), k)));
        let b = tw.add(&tw.lambda(), &tw.scale(&APoly::x(), &tw.lambda_pow(5)));
        let lhs = loc.expand_r(&tw.mul(&a, &b));
        let rhs = loc.expand_r(&a).mul(&loc.expand_r(&b), f);
        assert_eq!(lhs, rhs);
        let inv = tw.inverse(&a).unwrap();
        let e = loc.expand_l(&inv).unwrap();
        assert_eq!(e.mul(&loc.expand_r(&a), f), Series::constant(1, 30));
        let bad = tw.inverse(&tw.lambda()).unwrap();
        assert_eq!(loc.expand_l(&bad), Err(Error::PoleAtQ));
    }

    #[test]
    fn series_inverse_and_compose() {
        let f = Gf::new(5).unwrap();
        let s = Series::from_coeffs(vec![2, 1, 3, 0, 4]);
        assert_eq!(s.mul(&s.inv(&f).unwrap(), &f), Series::constant(1, 5));
        let inner = Series::from_coeffs(vec![0, 1, 1, 0, 0]);
        let x = Series::from_coeffs(vec![0, 1, 0, 0, 0]);
        assert_eq!(x.compose(&inner, &f), inner);
    }
}
