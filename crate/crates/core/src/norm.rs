//! Norms `N_{L/K}(β)` by evaluation and interpolation.
//!
//! `N(β)(t) = Res_x(f(t, x), β(t, x))` at points `t` of an extension of
//! `k`; the degree of `N(β)` is bounded through the valuations of `λ` at
//! the infinite places.

use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::infinity::InfinitePlaces;
use crate::poly::{least_primitive, APoly, Poly};
use crate::tower::{FieldTower, REl};

pub struct NormEvaluator {
    big: Gf,
    q: u32,
    /// `f(t, x)` at every evaluation point.
    fvals: Vec<Poly>,
    /// `v_w(λ)` at every infinite place.
    lambda_vals: Vec<i64>,
}

/// `Res(a, b)` over a field, `a` and `b` nonzero.
pub fn resultant(a: &Poly, b: &Poly, f: &Gf) -> Elem {
    let mut a = a.clone();
    let mut b = b.clone();
    let mut res: Elem = 1;
    loop {
        let n = a.deg().unwrap();
        let Some(m) = b.deg() else { return 0 };
        if m == 0 {
            return f.mul(res, f.pow(b.lc(), n as u64));
        }
        let r = a.rem(&b, f);
        let Some(dr) = r.deg() else { return 0 };
        if n % 2 == 1 && m % 2 == 1 {
            res = f.neg(res);
        }
        res = f.mul(res, f.pow(b.lc(), (n - dr) as u64));
        a = b;
        b = r;
    }
}

/// Coefficients of the polynomial of degree below `xs.len()` through the
/// given points.
pub fn interpolate(xs: &[Elem], ys: &[Elem], f: &Gf) -> Vec<Elem> {
    let m = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..m {
        for i in (j..m).rev() {
            let num = f.sub(dd[i], dd[i - 1]);
            let den = f.sub(xs[i], xs[i - j]);
            dd[i] = f.div(num, den);
        }
    }
    let mut c = vec![0; m];
    for i in (0..m).rev() {
        // c <- c * (x - xs[i]) + dd[i]
        for j in (1..m).rev() {
            c[j] = f.sub(c[j - 1], f.mul(c[j], xs[i]));
        }
        c[0] = f.sub(dd[i], f.mul(c[0], xs[i]));
    }
    c
}

impl NormEvaluator {
    /// Supports norms of degree up to `max_degree`.
    pub fn new(t: &FieldTower, inf: &InfinitePlaces, max_degree: usize) -> Result<Self> {
        let k = t.k();
        let q = t.q();
        let mut m = 1;
        while (q as u64).pow(m as u32) <= max_degree as u64 {
            m += 1;
        }
        let big = if m == 1 { Gf::new(q as u64)? } else { Gf::extension(k, least_primitive(k, m).coeffs())? };
        let npts = (max_degree + 1).min(big.order() as usize);
        let fvals = (0..npts as Elem)
            .map(|x| Poly::from_coeffs(t.torsion_poly().iter().map(|c| c.eval(x, &big)).collect()))
            .collect();
        let lambda_vals = inf.valuations(&t.lambda())?;
        Ok(NormEvaluator { big, q, fvals, lambda_vals })
    }

    pub fn max_degree(&self) -> usize {
        self.fvals.len() - 1
    }

    /// Upper bound for `deg N(x)`.
    pub fn degree_bound(&self, x: &REl) -> usize {
        let step = self.q as i64 - 1;
        self.lambda_vals
            .iter()
            .map(|&vl| {
                x.coords()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| step * c.degree_i64() - i as i64 * vl)
                    .max()
                    .unwrap_or(0)
            })
            .sum::<i64>()
            .max(0) as usize
    }

    /// `N(x)`, or `None` when the degree bound exceeds the supported range.
    pub fn norm(&self, x: &REl) -> Result<Option<APoly>> {
        self.norm_bounded(x, self.degree_bound(x))
    }

    /// `N(x)` given `deg N(x) ≤ bound`.
    pub fn norm_bounded(&self, x: &REl, bound: usize) -> Result<Option<APoly>> {
        if bound > self.max_degree() {
            return Ok(None);
        }
        let f = &self.big;
        let xs: Vec<Elem> = (0..=bound as Elem).collect();
        let ys: Vec<Elem> = xs
            .iter()
            .map(|&pt| {
                let b = Poly::from_coeffs(x.coords().iter().map(|c| c.eval(pt, f)).collect());
                if b.is_zero() {
                    0
                } else {
                    resultant(&self.fvals[pt as usize], &b, f)
                }
            })
            .collect();
        let c = interpolate(&xs, &ys, f);
        if c.iter().any(|&v| v >= self.q) {
            return Err(Error::OracleMismatch("interpolated norm has coefficients outside k".into()));
        }
        Ok(Some(APoly::from_coeffs(c)))
    }
}
