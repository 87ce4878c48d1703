//! Elements of `K = F_q(T)` as reduced fractions.

use crate::gf::Gf;
use crate::poly::APoly;

/// `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: APoly,
    den: APoly,
}

impl RatFunc {
    pub fn new(num: APoly, den: APoly, k: &Gf) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: APoly::one() };
        }
        let g = num.gcd(&den, k);
        let num = num.div_exact(&g, k).unwrap();
        let den = den.div_exact(&g, k).unwrap();
        let c = k.inv(den.lc());
        RatFunc { num: num.scale(c, k), den: den.scale(c, k) }
    }

    pub fn from_poly(a: APoly) -> Self {
        RatFunc { num: a, den: APoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(APoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(APoly::one())
    }

    pub fn num(&self) -> &APoly {
        &self.num
    }

    pub fn den(&self) -> &APoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc, k: &Gf) -> RatFunc {
        let num = self.num.mul(&o.den, k).add(&o.num.mul(&self.den, k), k);
        RatFunc::new(num, self.den.mul(&o.den, k), k)
    }

    pub fn sub(&self, o: &RatFunc, k: &Gf) -> RatFunc {
        self.add(&o.neg(k), k)
    }

    pub fn neg(&self, k: &Gf) -> RatFunc {
        RatFunc { num: self.num.neg(k), den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFunc, k: &Gf) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num, k), self.den.mul(&o.den, k), k)
    }

    pub fn inv(&self, k: &Gf) -> RatFunc {
        RatFunc::new(self.den.clone(), self.num.clone(), k)
    }

    pub fn div(&self, o: &RatFunc, k: &Gf) -> RatFunc {
        self.mul(&o.inv(k), k)
    }

    /// `self^(q^s)`, computed coefficientwise since constants are fixed.
    pub fn frobenius(&self, s: u32, k: &Gf) -> RatFunc {
        let qs = (k.order() as u64).pow(s);
        let spread = |a: &APoly| {
            let mut v = vec![0; a.coeffs().len().saturating_sub(1) * qs as usize + 1];
            for (i, &c) in a.coeffs().iter().enumerate() {
                v[i * qs as usize] = c;
            }
            APoly::from_coeffs(v)
        };
        RatFunc { num: spread(&self.num), den: spread(&self.den) }
    }

    /// The `p`-th root in `K`, when `self` lies in `K^p`.
    pub fn pth_root(&self, k: &Gf) -> Option<RatFunc> {
        Some(RatFunc { num: self.num.pth_root(k)?, den: self.den.pth_root(k)? })
    }
}
