//! Dense univariate polynomials over a [`Gf`].
//!
//! Coefficients are stored low-to-high with no trailing zeros, so the zero
//! polynomial is the empty vector and its degree is `None`.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{prime_factors, Elem, Gf};

#[derive(Clone, PartialEq, Eq, Hash, Default, Debug, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

/// Elements of `A = F_q[T]`.
pub type APoly = Poly;

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    /// The variable itself.
    pub fn x() -> Self {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn constant(c: Elem) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Elem, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Decodes the integer `code = sum c_i * q^i` into the polynomial
    /// `sum c_i x^i`. This is the enumeration order used throughout.
    pub fn from_code(mut code: u64, q: u32) -> Self {
        let mut v = Vec::new();
        while code > 0 {
            v.push((code % q as u64) as Elem);
            code /= q as u64;
        }
        Poly { coeffs: v }
    }

    pub fn code(&self, q: u32) -> u64 {
        self.coeffs.iter().rev().fold(0u64, |acc, &c| acc * q as u64 + c as u64)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial sent to `-1`.
    pub fn degree_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn add(&self, o: &Poly, f: &Gf) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect();
        Poly::from_coeffs(v)
    }

    pub fn sub(&self, o: &Poly, f: &Gf) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect();
        Poly::from_coeffs(v)
    }

    pub fn neg(&self, f: &Gf) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn add_assign(&mut self, o: &Poly, f: &Gf) {
        if self.coeffs.len() < o.coeffs.len() {
            self.coeffs.resize(o.coeffs.len(), 0);
        }
        for (a, &b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *a = f.add(*a, b);
        }
        self.normalize();
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn scale(&self, c: Elem, f: &Gf) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        Poly { coeffs: v }
    }

    pub fn mul(&self, o: &Poly, f: &Gf) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                if b != 0 {
                    v[i + j] = f.add(v[i + j], f.mul(a, b));
                }
            }
        }
        Poly::from_coeffs(v)
    }

    pub fn pow(&self, mut k: u64, f: &Gf) -> Poly {
        let mut acc = Poly::one();
        let mut b = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b, f);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b, f);
            }
        }
        acc
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn divrem(&self, d: &Poly, f: &Gf) -> (Poly, Poly) {
        let dd = d.deg().expect("division by zero polynomial");
        let Some(sd) = self.deg() else {
            return (Poly::zero(), Poly::zero());
        };
        if sd < dd {
            return (Poly::zero(), self.clone());
        }
        let inv_lc = f.inv(d.lc());
        let mut r = self.coeffs.clone();
        let mut qv = vec![0; sd - dd + 1];
        for k in (dd..=sd).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            let t = f.mul(c, inv_lc);
            qv[k - dd] = t;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                if dc != 0 {
                    r[k - dd + i] = f.sub(r[k - dd + i], f.mul(t, dc));
                }
            }
        }
        r.truncate(dd);
        (Poly::from_coeffs(qv), Poly::from_coeffs(r))
    }

    pub fn rem(&self, d: &Poly, f: &Gf) -> Poly {
        self.divrem(d, f).1
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly, f: &Gf) -> Option<Poly> {
        let (q, r) = self.divrem(d, f);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly, f: &Gf) -> bool {
        other.rem(self, f).is_zero()
    }

    pub fn monic(&self, f: &Gf) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f.inv(self.lc()), f)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, o: &Poly, f: &Gf) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Returns `(g, s, t)` with `g = s*self + t*o` and `g` monic.
    pub fn xgcd(&self, o: &Poly, f: &Gf) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (qt, r) = r0.divrem(&r1, f);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&qt.mul(&s1, f), f);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&qt.mul(&t1, f), f);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = f.inv(r0.lc());
        (r0.scale(c, f), s0.scale(c, f), t0.scale(c, f))
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Poly, f: &Gf) -> Option<Poly> {
        let (g, s, _) = self.rem(m, f).xgcd(m, f);
        g.is_one().then(|| s.rem(m, f))
    }

    pub fn mul_mod(&self, o: &Poly, m: &Poly, f: &Gf) -> Poly {
        self.mul(o, f).rem(m, f)
    }

    pub fn pow_mod(&self, mut k: u64, m: &Poly, f: &Gf) -> Poly {
        let mut acc = Poly::one().rem(m, f);
        let mut b = self.rem(m, f);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_mod(&b, m, f);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul_mod(&b, m, f);
            }
        }
        acc
    }

    /// `self^(q^s) mod m` through `s` successive `q`-th powers.
    pub fn frobenius_mod(&self, q: u64, s: usize, m: &Poly, f: &Gf) -> Poly {
        let mut a = self.rem(m, f);
        for _ in 0..s {
            a = a.pow_mod(q, m, f);
        }
        a
    }

    pub fn eval(&self, x: Elem, f: &Gf) -> Elem {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self(g)`.
    pub fn compose(&self, g: &Poly, f: &Gf) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &c| acc.mul(g, f).add(&Poly::constant(c), f))
    }

    pub fn derivative(&self, f: &Gf) -> Poly {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
            .collect();
        Poly::from_coeffs(v)
    }

    /// Applies `c -> c^(1/p^s)` to every coefficient.
    pub fn map_root_p_power(&self, s: u32, f: &Gf) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|&c| f.root_p_power(c, s)).collect() }
    }

    /// The `p`-th root when every exponent is a multiple of `p`.
    pub fn pth_root(&self, f: &Gf) -> Option<Poly> {
        let p = f.characteristic() as usize;
        if self.coeffs.iter().enumerate().any(|(i, &c)| c != 0 && i % p != 0) {
            return None;
        }
        let v = self.coeffs.iter().step_by(p).map(|&c| f.frobenius_inv(c)).collect();
        Some(Poly::from_coeffs(v))
    }

    /// Multiplicity of `d` in `self` (`self` nonzero, `d` nonconstant).
    pub fn valuation(&self, d: &Poly, f: &Gf) -> usize {
        let mut v = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(d, f) {
            v += 1;
            cur = q;
        }
        v
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self, f: &Gf) -> bool {
        let Some(m) = self.deg() else { return false };
        if m == 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        let q = f.order() as u64;
        let g = self.monic(f);
        let x = Poly::x();
        if !x.frobenius_mod(q, m, &g, f).sub(&x, f).is_zero() {
            return false;
        }
        prime_factors(m as u64).into_iter().all(|r| {
            let h = x.frobenius_mod(q, m / r as usize, &g, f).sub(&x, f);
            h.gcd(&g, f).is_one()
        })
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(g, e)` with
    /// `self = prod g^e`, the `g` squarefree and pairwise coprime.
    pub fn squarefree(&self, f: &Gf) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.deg().unwrap_or(0) == 0 {
            return out;
        }
        let a = self.monic(f);
        let c0 = a.gcd(&a.derivative(f), f);
        let mut w = a.div_exact(&c0, f).unwrap();
        let mut c = c0;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c, f);
            let z = w.div_exact(&y, f).unwrap();
            if !z.is_one() {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.div_exact(&w, f).unwrap();
        }
        if !c.is_one() {
            let r = c.pth_root(f).expect("remaining cofactor is a p-th power");
            let p = f.characteristic() as usize;
            for (g, e) in r.squarefree(f) {
                out.push((g, e * p));
            }
        }
        out
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by degree then code.
    pub fn factor(&self, f: &Gf) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        for (g, e) in self.squarefree(f) {
            for (h, deg) in distinct_degree(&g, f) {
                for irr in equal_degree(&h, deg, f) {
                    out.push((irr, e));
                }
            }
        }
        out.sort_by(|a, b| {
            a.0.deg().cmp(&b.0.deg()).then(a.0.code(f.order()).cmp(&b.0.code(f.order())))
        });
        // merge equal factors coming from different squarefree layers
        let mut merged: Vec<(Poly, usize)> = Vec::new();
        for (g, e) in out {
            match merged.last_mut() {
                Some((h, m)) if *h == g => *m += e,
                _ => merged.push((g, e)),
            }
        }
        merged
    }

    /// Distinct roots in the field.
    pub fn roots(&self, f: &Gf) -> Vec<Elem> {
        let mut r: Vec<Elem> = self
            .factor(f)
            .into_iter()
            .filter(|(g, _)| g.deg() == Some(1))
            .map(|(g, _)| f.neg(g.coeff(0)))
            .collect();
        r.sort_unstable();
        r
    }

    /// Human form in the variable `var`, e.g. `T^2+T+1`; a non-unit
    /// coefficient is written as its field code in front of the monomial.
    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('+');
            }
            match (i, c) {
                (0, c) => write!(s, "{c}").unwrap(),
                (_, 1) => {}
                (_, c) => write!(s, "{c}").unwrap(),
            }
            match i {
                0 => {}
                1 => s.push_str(var),
                _ => write!(s, "{var}^{i}").unwrap(),
            }
        }
        s
    }

    /// Parses the human form produced by [`Poly::format`]. Coefficients are
    /// field codes; an optional `*` may separate coefficient and monomial and
    /// a leading `-` negates a term.
    pub fn parse(s: &str, var: char, f: &Gf) -> Result<Poly> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for ch in cleaned.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut acc = Poly::zero();
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term.strip_prefix('+').unwrap_or(&term)),
            };
            let bad = || Error::Parse(format!("bad term `{term}` in `{s}`"));
            let (coef_str, mono) = match body.find(var) {
                Some(pos) => (&body[..pos], Some(&body[pos + var.len_utf8()..])),
                None => (body, None),
            };
            let coef_str = coef_str.trim_end_matches('*');
            let c: Elem = if coef_str.is_empty() {
                if mono.is_none() {
                    return Err(bad());
                }
                1
            } else {
                coef_str.parse().map_err(|_| bad())?
            };
            if c >= f.order() {
                return Err(Error::Parse(format!(
                    "coefficient {c} is not a code of F_{}",
                    f.order()
                )));
            }
            let k = match mono {
                None => 0,
                Some("") => 1,
                Some(rest) => rest
                    .strip_prefix('^')
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(bad)?,
            };
            let c = if neg { f.neg(c) } else { c };
            acc = acc.add(&Poly::monomial(c, k), f);
        }
        Ok(acc)
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(g: &Poly, f: &Gf) -> Vec<(Poly, usize)> {
    let q = f.order() as u64;
    let mut out = Vec::new();
    let mut rest = g.clone();
    let x = Poly::x();
    let mut h = x.clone();
    let mut i = 0;
    while let Some(dr) = rest.deg() {
        if dr < 2 * (i + 1) {
            if dr > 0 {
                out.push((rest.clone(), dr));
            }
            break;
        }
        i += 1;
        h = h.pow_mod(q, &rest, f);
        let gi = h.sub(&x, f).gcd(&rest, f);
        if !gi.is_one() {
            rest = rest.div_exact(&gi, f).unwrap();
            h = h.rem(&rest, f);
            out.push((gi, i));
        }
    }
    out
}

/// Splits a monic squarefree product of irreducibles of degree `deg`.
fn equal_degree(g: &Poly, deg: usize, f: &Gf) -> Vec<Poly> {
    let n = g.deg().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == deg {
        return vec![g.clone()];
    }
    let q = f.order() as u64;
    let p = f.characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
    loop {
        let a = Poly::from_coeffs((0..n).map(|_| rng.gen_range(0..f.order())).collect());
        if a.deg().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace to F_2: a + a^2 + ... + a^(2^(k-1)), k = deg * log2(q)
            let k = deg * f.degree() as usize;
            let mut t = a.rem(g, f);
            let mut acc = t.clone();
            for _ in 1..k {
                t = t.mul_mod(&t, g, f);
                acc = acc.add(&t, f);
            }
            acc
        } else {
            // a^((q^deg - 1)/2) = prod_i (a^((q-1)/2))^(q^i)
            let c = a.pow_mod((q - 1) / 2, g, f);
            let mut acc = c.clone();
            let mut t = c;
            for _ in 1..deg {
                t = t.pow_mod(q, g, f);
                acc = acc.mul_mod(&t, g, f);
            }
            acc.sub(&Poly::one(), f)
        };
        let d = b.gcd(g, f);
        if let Some(dd) = d.deg() {
            if dd > 0 && dd < n {
                let e = g.div_exact(&d, f).unwrap();
                let mut out = equal_degree(&d, deg, f);
                out.extend(equal_degree(&e, deg, f));
                return out;
            }
        }
    }
}

/// All monic irreducible polynomials of degree `d`, in code order.
pub fn irreducibles(f: &Gf, d: usize) -> Vec<Poly> {
    assert!(d >= 1, "degree must be positive");
    let q = f.order() as u64;
    let start = q.pow(d as u32);
    (start..2 * start)
        .map(|code| Poly::from_code(code, f.order()))
        .filter(|p| p.is_monic() && p.deg() == Some(d) && p.is_irreducible(f))
        .collect()
}

/// Number of monic irreducibles of degree `d` over `F_q` (necklace count).
pub fn necklace_count(q: u64, d: usize) -> u64 {
    let mut total: i64 = 0;
    for k in 1..=d {
        if d % k == 0 {
            total += mobius(d / k) * (q as i64).pow(k as u32);
        }
    }
    (total / d as i64) as u64
}

fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// The least (in code order) primitive polynomial of degree `m` over `f`.
pub fn least_primitive(f: &Gf, m: usize) -> Poly {
    let q = f.order() as u64;
    let order = q.pow(m as u32) - 1;
    let pf = prime_factors(order);
    let x = Poly::x();
    let start = q.pow(m as u32);
    (start..2 * start)
        .map(|code| Poly::from_code(code, f.order()))
        .find(|p| {
            p.is_monic()
                && p.coeff(0) != 0
                && p.is_irreducible(f)
                && pf.iter().all(|r| !x.pow_mod(order / r, p, f).is_one())
        })
        .expect("primitive polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_irreducible(p: &Poly, f: &Gf) -> bool {
        let d = p.deg().unwrap();
        let q = f.order() as u64;
        for dd in 1..=d / 2 {
            for code in q.pow(dd as u32)..2 * q.pow(dd as u32) {
                let g = Poly::from_code(code, f.order());
                if g.is_monic() && g.divides(p, f) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn irreducibles_small_cases() {
        let f2 = Gf::new(2).unwrap();
        let lin: Vec<String> = irreducibles(&f2, 1).iter().map(|p| p.format("T")).collect();
        assert_eq!(lin, ["T", "T+1"]);
        let quad: Vec<String> = irreducibles(&f2, 2).iter().map(|p| p.format("T")).collect();
        assert_eq!(quad, ["T^2+T+1"]);
        let f3 = Gf::new(3).unwrap();
        let quad3: Vec<String> = irreducibles(&f3, 2).iter().map(|p| p.format("T")).collect();
        assert_eq!(quad3, ["T^2+1", "T^2+T+2", "T^2+2T+2"]);
    }

    #[test]
    fn irreducible_counts_match_necklaces_and_brute_force() {
        for q in [2u64, 3, 4, 5] {
            let f = Gf::new(q).unwrap();
            for d in 1..=4usize {
                if q.pow(d as u32) > 700 {
                    continue;
                }
                let irr = irreducibles(&f, d);
                assert_eq!(irr.len() as u64, necklace_count(q, d), "q={q} d={d}");
                for p in &irr {
                    assert!(brute_irreducible(p, &f));
                }
            }
        }
    }

    #[test]
    fn parse_and_format() {
        let f2 = Gf::new(2).unwrap();
        let p = Poly::parse("T^2+T+1", 'T', &f2).unwrap();
        assert_eq!(p.coeffs(), &[1, 1, 1]);
        assert_eq!(p.format("T"), "T^2+T+1");
        let f4 = Gf::new(4).unwrap();
        let p = Poly::parse("T^2 + 2*T + 3", 'T', &f4).unwrap();
        assert_eq!(p.coeffs(), &[3, 2, 1]);
        assert_eq!(p.format("T"), "T^2+2T+3");
        let f3 = Gf::new(3).unwrap();
        assert_eq!(Poly::parse("T^2-1", 'T', &f3).unwrap().coeffs(), &[2, 0, 1]);
        assert!(Poly::parse("T^2+5", 'T', &f3).is_err());
        assert!(Poly::parse("T^x", 'T', &f3).is_err());
    }

    #[test]
    fn factor_recomposes() {
        let f3 = Gf::new(3).unwrap();
        let p = Poly::parse("T^7+2T^5+T^4+T^2+2", 'T', &f3).unwrap();
        let fac = p.factor(&f3);
        let mut prod = Poly::one();
        for (g, e) in &fac {
            assert!(g.is_irreducible(&f3));
            prod = prod.mul(&g.pow(*e as u64, &f3), &f3);
        }
        assert_eq!(prod, p);
    }

    proptest! {
        #[test]
        fn factorization_is_complete(code in 2u64..4096, qi in 0usize..4) {
            let q = [2u64, 3, 4, 5][qi];
            let f = Gf::new(q).unwrap();
            let p = Poly::from_code(code, f.order()).monic(&f);
            prop_assume!(p.deg().unwrap_or(0) > 0);
            let mut prod = Poly::one();
            for (g, e) in p.factor(&f) {
                prop_assert!(g.is_irreducible(&f));
                prod = prod.mul(&g.pow(e as u64, &f), &f);
            }
            prop_assert_eq!(prod, p);
        }

        #[test]
        fn xgcd_identity(a in 0u64..5000, b in 1u64..5000) {
            let f = Gf::new(5).unwrap();
            let pa = Poly::from_code(a, 5);
            let pb = Poly::from_code(b, 5);
            let (g, s, t) = pa.xgcd(&pb, &f);
            prop_assert_eq!(s.mul(&pa, &f).add(&t.mul(&pb, &f), &f), g.clone());
            prop_assert!(g.divides(&pa, &f) && g.divides(&pb, &f));
        }
    }
}
