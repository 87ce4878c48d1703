//! Table-driven finite fields.
//!
//! Every field is described by a [`Gf`] context. Elements are plain `u32`
//! codes: the code of an element is the integer whose base-`p` digits are its
//! coordinates over the prime field. For an extension built over a base field
//! `B` with modulus `M(z)`, the element `sum c_i z^i` has code
//! `sum code(c_i) * |B|^i`, so the base field sits inside the extension with
//! unchanged codes. Addition is digitwise mod `p`, multiplication goes through
//! discrete log tables.

use std::fmt;

use crate::error::{Error, Result};

/// A field element code. Meaningful only together with its [`Gf`].
pub type Elem = u32;

/// Largest field order we are willing to tabulate.
pub const MAX_ORDER: u64 = 1 << 22;

/// Conway polynomials (low-to-high coefficients, monic) for the small
/// non-prime fields used in reports.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 2, &[3, 6, 1]),
];

/// A finite field of order `p^degree` together with its arithmetic tables.
#[derive(Clone)]
pub struct Gf {
    p: u32,
    degree: u32,
    order: u32,
    base_order: u32,
    modulus: Vec<Elem>,
    generator: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
    add_table: Option<Vec<Elem>>,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gf")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("order", &self.order)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.order == other.order
            && self.base_order == other.base_order
            && self.modulus == other.modulus
    }
}

impl Eq for Gf {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q` as `p^e`, if it is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p as u32, e))
}

impl Gf {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p as u64) || p as u64 > MAX_ORDER {
            return Err(Error::Unsupported(format!("{p} is not a supported prime")));
        }
        let order = p;
        let mut exp = vec![0; 2 * (order as usize - 1).max(1)];
        let mut log = vec![0; order as usize];
        let generator = if p == 2 {
            1
        } else {
            let pf = prime_factors(p as u64 - 1);
            (2..p)
                .find(|&g| {
                    pf.iter()
                        .all(|r| pow_mod_u64(g as u64, (p as u64 - 1) / r, p as u64) != 1)
                })
                .expect("prime field has a primitive root")
        };
        let mut cur = 1u64;
        for i in 0..(order - 1) as usize {
            exp[i] = cur as u32;
            exp[i + order as usize - 1] = cur as u32;
            log[cur as usize] = i as u32;
            cur = cur * generator as u64 % p as u64;
        }
        let mut f = Gf {
            p,
            degree: 1,
            order,
            base_order: p,
            modulus: vec![0, 1],
            generator,
            exp,
            log,
            add_table: None,
        };
        f.build_add_table();
        Ok(f)
    }

    /// `F_q` for a prime power `q`, using a stored Conway polynomial when one
    /// is known and the least primitive polynomial over `F_p` otherwise.
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) =
            prime_power(q).ok_or_else(|| Error::Unsupported(format!("{q} is not a prime power")))?;
        if q > MAX_ORDER {
            return Err(Error::Unsupported(format!("field order {q} too large")));
        }
        let fp = Gf::prime(p)?;
        if e == 1 {
            return Ok(fp);
        }
        let modulus = match CONWAY.iter().find(|(cp, ce, _)| *cp == p && *ce == e) {
            Some((_, _, m)) => m.to_vec(),
            None => crate::poly::least_primitive(&fp, e as usize).coeffs().to_vec(),
        };
        Gf::extension(&fp, &modulus)
    }

    /// The extension `base[z] / (modulus)`. The modulus must be monic and
    /// irreducible over `base`; this is checked.
    pub fn extension(base: &Gf, modulus: &[Elem]) -> Result<Self> {
        let m = modulus.len().saturating_sub(1);
        if m == 0 || *modulus.last().unwrap() != 1 {
            return Err(Error::Unsupported("extension modulus must be monic of degree >= 1".into()));
        }
        let order = (base.order as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
        if order > MAX_ORDER {
            return Err(Error::SizeBound { what: "field order", value: order, limit: MAX_ORDER });
        }
        let mpoly = crate::poly::Poly::from_coeffs(modulus.to_vec());
        if !mpoly.is_irreducible(base) {
            return Err(Error::Unsupported("extension modulus is reducible".into()));
        }
        let order = order as u32;
        let bq = base.order;
        let to_vec = |mut c: u32| -> Vec<Elem> {
            let mut v = vec![0; m];
            for slot in v.iter_mut() {
                *slot = c % bq;
                c /= bq;
            }
            v
        };
        let to_code = |v: &[Elem]| -> u32 { v.iter().rev().fold(0, |acc, &d| acc * bq + d) };
        let mul_slow = |a: &[Elem], b: &[Elem]| -> Vec<Elem> {
            let mut prod = vec![0; 2 * m - 1];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    prod[i + j] = base.add(prod[i + j], base.mul(x, y));
                }
            }
            for k in (m..prod.len()).rev() {
                let c = prod[k];
                if c == 0 {
                    continue;
                }
                for (i, &mc) in modulus[..m].iter().enumerate() {
                    prod[k - m + i] = base.sub(prod[k - m + i], base.mul(c, mc));
                }
                prod[k] = 0;
            }
            prod.truncate(m);
            prod
        };
        let pow_slow = |a: &[Elem], mut k: u64| -> Vec<Elem> {
            let mut acc = to_vec(1);
            let mut b = a.to_vec();
            while k > 0 {
                if k & 1 == 1 {
                    acc = mul_slow(&acc, &b);
                }
                b = mul_slow(&b, &b);
                k >>= 1;
            }
            acc
        };
        let pf = prime_factors(order as u64 - 1);
        let one = to_vec(1);
        let generator = (1..order)
            .find(|&g| {
                let gv = to_vec(g);
                pf.iter().all(|r| pow_slow(&gv, (order as u64 - 1) / r) != one)
            })
            .expect("finite field has a primitive element");
        let gv = to_vec(generator);
        let mut exp = vec![0; 2 * (order as usize - 1)];
        let mut log = vec![0; order as usize];
        let mut cur = one.clone();
        let shift_by_z = generator == bq;
        for i in 0..(order - 1) as usize {
            let code = to_code(&cur);
            exp[i] = code;
            exp[i + order as usize - 1] = code;
            log[code as usize] = i as u32;
            cur = if shift_by_z {
                let top = cur[m - 1];
                let mut next = vec![0; m];
                next[1..m].copy_from_slice(&cur[..m - 1]);
                if top != 0 {
                    for (slot, &mc) in next.iter_mut().zip(&modulus[..m]) {
                        *slot = base.sub(*slot, base.mul(top, mc));
                    }
                }
                next
            } else {
                mul_slow(&cur, &gv)
            };
        }
        let mut f = Gf {
            p: base.p,
            degree: base.degree * m as u32,
            order,
            base_order: bq,
            modulus: modulus.to_vec(),
            generator,
            exp,
            log,
            add_table: None,
        };
        f.build_add_table();
        Ok(f)
    }

    fn build_add_table(&mut self) {
        if self.p == 2 || self.order > 1024 {
            return;
        }
        let q = self.order as usize;
        let mut tab = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                tab[a * q + b] = self.add_digits(a as u32, b as u32);
            }
        }
        self.add_table = Some(tab);
    }

    fn add_digits(&self, mut a: Elem, mut b: Elem) -> Elem {
        let p = self.p;
        let mut out = 0;
        let mut w = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
            w *= p;
        }
        out
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Order of the field this one was built over (itself for prime fields).
    pub fn base_order(&self) -> u32 {
        self.base_order
    }

    /// Defining polynomial over the base field, low-to-high.
    pub fn modulus(&self) -> &[Elem] {
        &self.modulus
    }

    /// The primitive element with least code.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else if let Some(t) = &self.add_table {
            t[a as usize * self.order as usize + b as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a == 0 {
            return a;
        }
        let p = self.p;
        let (mut a, mut out, mut w) = (a, 0, 1);
        while a > 0 {
            out += ((p - a % p) % p) * w;
            a /= p;
            w *= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero");
        let l = self.log[a as usize];
        if l == 0 {
            1
        } else {
            self.exp[(self.order - 1 - l) as usize]
        }
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64 * (k % (self.order as u64 - 1)) % (self.order as u64 - 1);
        self.exp[l as usize]
    }

    /// `a^k` for a possibly negative exponent; `a` must be nonzero when `k < 0`.
    pub fn pow_signed(&self, a: Elem, k: i64) -> Elem {
        if k >= 0 {
            self.pow(a, k as u64)
        } else {
            self.pow(self.inv(a), k.unsigned_abs())
        }
    }

    /// Discrete log to the base of [`Gf::generator`].
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `generator^k`.
    pub fn exp(&self, k: u64) -> Elem {
        self.exp[(k % (self.order as u64 - 1)) as usize]
    }

    /// The unique `y` with `y^(p^s) = a`; Frobenius is a bijection.
    pub fn root_p_power(&self, a: Elem, s: u32) -> Elem {
        if a == 0 || self.order == 2 {
            return a;
        }
        let n = self.order as u64 - 1;
        let mut ps = 1u64;
        for _ in 0..s {
            ps = ps * self.p as u64 % n;
        }
        let inv = mod_inverse(ps, n).expect("p is prime to the group order");
        let l = self.log[a as usize] as u64 * inv % n;
        self.exp[l as usize]
    }

    /// The unique `p`-th root of `a`.
    pub fn frobenius_inv(&self, a: Elem) -> Elem {
        self.root_p_power(a, 1)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> u64 {
        let n = self.order as u64 - 1;
        let l = self.log[a as usize] as u64;
        n / num_integer::gcd(n, l)
    }

    /// Coordinates over the prime field, low digit first.
    pub fn prime_digits(&self, mut a: Elem) -> Vec<u32> {
        let mut v = vec![0; self.degree as usize];
        for slot in v.iter_mut() {
            *slot = a % self.p;
            a /= self.p;
        }
        v
    }

    /// Canonical text encoding: the prime-field integer itself for prime
    /// fields, the bracketed coordinate vector otherwise.
    pub fn format(&self, a: Elem) -> String {
        if self.degree == 1 {
            a.to_string()
        } else {
            let d: Vec<String> = self.prime_digits(a).iter().map(|x| x.to_string()).collect();
            format!("[{}]", d.join(","))
        }
    }

    /// Iterator over all elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order
    }

    /// The image of the prime-field integer `n`.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }
}

pub(crate) fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for q in [2u64, 3, 4, 5, 8, 9] {
            let f = Gf::new(q).unwrap();
            for _ in 0..300 {
                let a = rng.gen_range(0..f.order());
                let b = rng.gen_range(0..f.order());
                let c = rng.gen_range(0..f.order());
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
            }
        }
    }

    #[test]
    fn inverse_frobenius() {
        for q in [2u64, 3, 4, 5, 8, 9, 16, 25, 27] {
            let f = Gf::new(q).unwrap();
            let (p, e) = prime_power(q).unwrap();
            for a in f.elements() {
                let r = f.pow(a, (p as u64).pow(e - 1));
                assert_eq!(f.pow(r, p as u64), a);
                assert_eq!(f.frobenius_inv(a), r);
            }
        }
    }

    #[test]
    fn conway_moduli_are_primitive() {
        for &(p, e, m) in CONWAY {
            let f = Gf::new((p as u64).pow(e)).unwrap();
            assert_eq!(f.modulus(), m);
            assert_eq!(f.generator(), p, "z is primitive for ({p},{e})");
        }
    }

    #[test]
    fn prime_field_subfield_codes() {
        let f9 = Gf::new(9).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(f9.mul(a, b), a * b % 3);
                assert_eq!(f9.add(a, b), (a + b) % 3);
            }
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(Gf::new(6).is_err());
        assert!(Gf::new(1).is_err());
        assert!(Gf::prime(9).is_err());
    }
}
