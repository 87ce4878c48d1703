//! The Carlitz module `phi_T = T + tau` and its exponential.

use crate::error::{Error, Result};
use crate::gf::Gf;
use crate::poly::APoly;
use crate::ratfunc::RatFunc;

/// `sum c_i x^(q^i)` with coefficients in `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedPoly {
    coeffs: Vec<APoly>,
}

/// Raises every coefficient-polynomial to the `q^s` power: constants are
/// fixed, so only the exponents of `T` spread out.
pub fn frobenius_apoly(a: &APoly, s: u32, k: &Gf) -> APoly {
    let qs = (k.order() as usize).pow(s);
    if a.is_zero() || qs == 1 {
        return a.clone();
    }
    let mut v = vec![0; (a.coeffs().len() - 1) * qs + 1];
    for (i, &c) in a.coeffs().iter().enumerate() {
        v[i * qs] = c;
    }
    APoly::from_coeffs(v)
}

impl LinearizedPoly {
    pub fn new(mut coeffs: Vec<APoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LinearizedPoly { coeffs }
    }

    pub fn identity() -> Self {
        LinearizedPoly { coeffs: vec![APoly::one()] }
    }

    pub fn coeffs(&self) -> &[APoly] {
        &self.coeffs
    }

    /// Index of the top `tau`-power, `None` for the zero map.
    pub fn tau_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, o: &Self, k: &Gf) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = APoly::zero();
        let v = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = o.coeffs.get(i).unwrap_or(&zero);
                a.add(b, k)
            })
            .collect();
        Self::new(v)
    }

    /// `self o other`: `x -> self(other(x))`.
    pub fn compose(&self, o: &Self, k: &Gf) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::new(Vec::new());
        }
        let mut v = vec![APoly::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let term = a.mul(&frobenius_apoly(b, i as u32, k), k);
                v[i + j].add_assign(&term, k);
            }
        }
        Self::new(v)
    }

    /// Dense coefficient list in `x` (index = exponent).
    pub fn to_x_coeffs(&self, k: &Gf) -> Vec<APoly> {
        let q = k.order() as usize;
        let Some(top) = self.tau_degree() else {
            return Vec::new();
        };
        let mut v = vec![APoly::zero(); q.pow(top as u32) + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[q.pow(i as u32)] = c.clone();
        }
        v
    }

    /// Evaluates at a point of an arbitrary commutative `F_q`-algebra given
    /// by its operations.
    pub fn eval_with<R: Clone>(
        &self,
        x: &R,
        scalar: impl Fn(&APoly, &R) -> R,
        qth_power: impl Fn(&R) -> R,
        add: impl Fn(&R, &R) -> R,
        zero: R,
    ) -> R {
        let mut acc = zero;
        let mut xp = x.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xp = qth_power(&xp);
            }
            if !c.is_zero() {
                acc = add(&acc, &scalar(c, &xp));
            }
        }
        acc
    }
}

/// `phi_a` as a linearized polynomial.
pub fn carlitz_action(a: &APoly, k: &Gf) -> LinearizedPoly {
    // Horner in T: phi_{a0 + T a'} = a0 + phi_T o phi_{a'}, and
    // phi_T o P = T*P + tau*P.
    let mut acc = LinearizedPoly::new(Vec::new());
    for &c in a.coeffs().iter().rev() {
        let tp: Vec<APoly> = acc.coeffs.iter().map(|x| x.shift(1)).collect();
        let mut v = vec![APoly::zero(); acc.coeffs.len() + 1];
        for (i, x) in tp.into_iter().enumerate() {
            v[i].add_assign(&x, k);
        }
        for (i, x) in acc.coeffs.iter().enumerate() {
            v[i + 1].add_assign(&frobenius_apoly(x, 1, k), k);
        }
        v[0].add_assign(&APoly::constant(c), k);
        acc = LinearizedPoly::new(v);
    }
    acc
}

/// The torsion polynomial `phi_p(x) / x` as a dense coefficient list in `x`,
/// after checking it is Eisenstein at `p`.
pub fn torsion_polynomial(prime: &APoly, k: &Gf) -> Result<Vec<APoly>> {
    let phi = carlitz_action(prime, k);
    let full = phi.to_x_coeffs(k);
    if !full[0].is_zero() {
        return Err(Error::EisensteinFailure("phi_p has a constant term".into()));
    }
    let f: Vec<APoly> = full[1..].to_vec();
    check_eisenstein(&f, prime, k)?;
    Ok(f)
}

pub fn check_eisenstein(f: &[APoly], prime: &APoly, k: &Gf) -> Result<()> {
    let n = f.len() - 1;
    if !f[n].is_one() {
        return Err(Error::EisensteinFailure("not monic".into()));
    }
    for (i, c) in f[..n].iter().enumerate() {
        if !prime.divides(c, k) {
            return Err(Error::EisensteinFailure(format!("coefficient of x^{i} not divisible by p")));
        }
    }
    if prime.mul(prime, k).divides(&f[0], k) {
        return Err(Error::EisensteinFailure("constant term divisible by p^2".into()));
    }
    Ok(())
}

/// Truncated Carlitz exponential `sum_{i<N} z^(q^i) / D_i`.
#[derive(Clone, Debug)]
pub struct ExpSeries {
    coeffs: Vec<RatFunc>,
}

impl ExpSeries {
    pub fn new(n: usize, k: &Gf) -> Self {
        assert!(n >= 1, "truncation order must be positive");
        let mut denoms = vec![APoly::one()];
        for i in 1..n {
            let t_qi = APoly::monomial(1, (k.order() as usize).pow(i as u32));
            let bracket = t_qi.sub(&APoly::x(), k);
            let prev = frobenius_apoly(&denoms[i - 1], 1, k);
            denoms.push(bracket.mul(&prev, k));
        }
        let coeffs = denoms.into_iter().map(|d| RatFunc::new(APoly::one(), d, k)).collect();
        ExpSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `e_i`, the coefficient of `z^(q^i)`.
    pub fn coeff(&self, i: usize) -> &RatFunc {
        &self.coeffs[i]
    }

    /// Carlitz factorial `D_i`.
    pub fn factorial(&self, i: usize) -> &APoly {
        self.coeffs[i].den()
    }

    /// Checks `exp(a z) = phi_a(exp z)` on all coefficients below `z^(q^N)`.
    pub fn satisfies_functional_equation(&self, a: &APoly, k: &Gf) -> bool {
        let phi = carlitz_action(a, k);
        let a_rat = RatFunc::from_poly(a.clone());
        (0..self.order()).all(|m| {
            let lhs = self.coeffs[m].mul(&a_rat.frobenius(m as u32, k), k);
            let mut rhs = RatFunc::zero();
            for (j, c) in phi.coeffs().iter().enumerate().take(m + 1) {
                let term = RatFunc::from_poly(c.clone())
                    .mul(&self.coeffs[m - j].frobenius(j as u32, k), k);
                rhs = rhs.add(&term, k);
            }
            lhs == rhs
        })
    }
}
