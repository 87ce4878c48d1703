//! Riemann-Roch spaces `L(m w)` for one infinite place `w`.
//!
//! Elements of `L(m w)` have no finite poles, so they lie in `R`; their
//! norms have degree at most their pole order at `w`. The space is cut
//! out of the span of `T^j λ^i` by the vanishing of polar coefficients at
//! every infinite place, and the span is enlarged until the dimension
//! reaches `m + 1 - g`.

use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::infinity::{InfinitePlaces, Laurent};
use crate::linalg::FqMatrix;
use crate::poly::APoly;
use crate::tower::{FieldTower, REl};

/// Basis of `L(m w)` with distinct pole orders at `w`, in increasing
/// pole order. The basis is reduced: each element has zero coefficient
/// at the leading pole order of every other element.
#[derive(Clone, Debug)]
pub struct PoleBasis {
    pub place: usize,
    pub bound: usize,
    /// `(pole order, element)`.
    pub elements: Vec<(usize, REl)>,
}

impl PoleBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// Pole orders present, the Weierstrass non-gaps up to the bound.
    pub fn pole_orders(&self) -> Vec<usize> {
        self.elements.iter().map(|(p, _)| *p).collect()
    }
}

/// Computes `L(m w_place)`; requires `m ≥ 2g - 1` so that the target
/// dimension is `m + 1 - g`.
pub fn pole_basis(t: &FieldTower, inf: &InfinitePlaces, genus: usize, place: usize, m: usize) -> Result<PoleBasis> {
    if m + 1 < 2 * genus {
        return Err(Error::Unsupported(format!("pole bound {m} below 2g - 1 = {}", 2 * genus - 1)));
    }
    let target = m + 1 - genus;
    let k = t.k();
    let q = t.q();
    let n = t.degree();
    let step = q as i64 - 1;
    let lam_vals = inf.valuations(&t.lambda())?;
    let max_lam_pole = lam_vals.iter().map(|v| -v).max().unwrap_or(0).max(0) as usize;
    let mut j_max = 0usize;
    loop {
        let monomials: Vec<(usize, usize)> = (0..=j_max).flat_map(|j| (0..n).map(move |i| (i, j))).collect();
        let deepest = step as usize * j_max + max_lam_pole * n;
        let rel = deepest + m + 16;
        let mut rows: Vec<Vec<Elem>> = Vec::new();
        let mut polar: Vec<Elem> = Vec::new();
        let mut orders: Vec<i64> = Vec::new();
        for b in 0..inf.count() {
            let bound = if b == place { -(m as i64) } else { 0 };
            let series: Vec<Laurent> = monomials.iter().map(|&(i, j)| inf.embed(&monomial(t, i, j), b, rel)).collect();
            let low = series.iter().filter_map(|s| s.valuation()).min().unwrap_or(bound);
            if series.iter().any(|s| s.abs_prec() < bound + 1) {
                return Err(Error::Degenerate("insufficient precision for Riemann-Roch space".into()));
            }
            for e in low..bound {
                rows.push(series.iter().map(|s| s.coeff(e)).collect());
            }
            if b == place {
                // Coefficients from π^(-m) to π^0 order the basis by pole.
                for e in -(m as i64)..=0 {
                    orders.push(e);
                    polar.extend(series.iter().map(|s| s.coeff(e)));
                }
            }
        }
        let kernel = if rows.is_empty() {
            identity(monomials.len())
        } else {
            FqMatrix::from_rows(&rows).kernel(k)
        };
        if kernel.len() > target {
            return Err(Error::OracleMismatch(format!("dim L({m} w) = {} exceeds {target}", kernel.len())));
        }
        if kernel.len() == target {
            // Leading coefficients at w for each kernel vector.
            let width = monomials.len();
            let lead: Vec<Vec<Elem>> = kernel
                .iter()
                .map(|v| {
                    orders
                        .iter()
                        .enumerate()
                        .map(|(r, _)| {
                            let row = &polar[r * width..(r + 1) * width];
                            row.iter().zip(v).fold(0, |acc, (&a, &c)| k.add(acc, k.mul(a, c)))
                        })
                        .collect()
                })
                .collect();
            // Row-reduce [lead | kernel] so pivots sit on distinct pole orders.
            let mut aug = FqMatrix::from_rows(
                &lead.iter().zip(&kernel).map(|(l, v)| l.iter().chain(v.iter()).copied().collect()).collect::<Vec<_>>(),
            );
            let pivots = aug.rref(k);
            let mut elements = Vec::with_capacity(target);
            for (r, &c) in pivots.iter().enumerate() {
                if c >= orders.len() {
                    return Err(Error::OracleMismatch("element of L(m w) without pole data".into()));
                }
                let pole = (-orders[c]) as usize;
                let coeffs: Vec<Elem> = (0..width).map(|s| aug[(r, orders.len() + s)]).collect();
                elements.push((pole, combine(t, &monomials, &coeffs)));
            }
            elements.sort_by_key(|(p, _)| *p);
            return Ok(PoleBasis { place, bound: m, elements });
        }
        j_max += 1;
        if j_max > m + n {
            return Err(Error::OracleMismatch(format!("L({m} w) stalled at dimension {} below {target}", kernel.len())));
        }
    }
}

fn identity(n: usize) -> Vec<Vec<Elem>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as Elem).collect()).collect()
}

fn monomial(t: &FieldTower, i: usize, j: usize) -> REl {
    let mut coords = vec![APoly::zero(); i + 1];
    coords[i] = APoly::monomial(1, j);
    t.from_xpoly(&coords)
}

fn combine(t: &FieldTower, monomials: &[(usize, usize)], coeffs: &[Elem]) -> REl {
    let n = t.degree();
    let mut cols: Vec<Vec<Elem>> = vec![Vec::new(); n];
    for (&(i, j), &c) in monomials.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        if cols[i].len() <= j {
            cols[i].resize(j + 1, 0);
        }
        cols[i][j] = c;
    }
    t.from_coords(cols.into_iter().map(APoly::from_coeffs).collect())
}

/// Elements of `L(m w)` with pole order exactly `pole`, normalised to a
/// unit leading coefficient, as combinations of the basis. Deterministic
/// order.
pub struct LevelIter<'a> {
    t: &'a FieldTower,
    top: &'a REl,
    lower: Vec<&'a REl>,
    digits: Vec<Elem>,
    done: bool,
}

impl<'a> LevelIter<'a> {
    pub fn new(t: &'a FieldTower, basis: &'a PoleBasis, pole: usize) -> Self {
        let top = basis.elements.iter().find(|(p, _)| *p == pole).map(|(_, x)| x);
        let lower: Vec<&REl> = basis.elements.iter().filter(|(p, _)| *p < pole).map(|(_, x)| x).collect();
        let digits = vec![0; lower.len()];
        match top {
            Some(top) => LevelIter { t, top, lower, digits, done: false },
            None => LevelIter { t, top: &basis.elements[0].1, lower: Vec::new(), digits: Vec::new(), done: true },
        }
    }
}

impl Iterator for LevelIter<'_> {
    type Item = REl;

    fn next(&mut self) -> Option<REl> {
        if self.done {
            return None;
        }
        let t = self.t;
        let mut x = self.top.clone();
        for (c, y) in self.digits.iter().zip(&self.lower) {
            if *c != 0 {
                x = t.add(&x, &t.scale(&APoly::from_coeffs(vec![*c]), y));
            }
        }
        let q = t.q();
        self.done = true;
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < q {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::PrimeData;
    use crate::zeta::genus;

    #[test]
    fn dimensions_and_norm_degrees() {
        for (q, p) in [(3, "T^2+1"), (2, "T^3+T+1"), (4, "T^2+T+2")] {
            let t = FieldTower::new(PrimeData::parse(q, p).unwrap()).unwrap();
            let inf = InfinitePlaces::new(&t);
            let g = genus(q as u64, t.d());
            let m = 2 * g + 3;
            let basis = pole_basis(&t, &inf, g, 0, m).unwrap();
            assert_eq!(basis.dim(), m + 1 - g);
            assert_eq!(basis.elements[0].0, 0);
            for (pole, x) in &basis.elements {
                let v = inf.valuations(x).unwrap();
                assert_eq!(v[0], -(*pole as i64));
                assert!(v[1..].iter().all(|&e| e >= 0));
                let total: i64 = v.iter().sum();
                assert_eq!(t.norm(x).deg(), Some((-total) as usize));
            }
        }
    }
}
