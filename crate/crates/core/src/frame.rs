//! Coordinates of Cartier-fixed differentials by their expansion at `q`.
//!
//! A nonzero differential that is regular on `Spec R` with at most simple
//! poles at infinity has divisor of degree `2g - 2`, so it cannot vanish
//! modulo `q^M` once `M d > 2g - 2 + #∞`. Below that bound the expansion map
//! is injective on such differentials.

use crate::differentials::{Differential, OmegaR};
use crate::error::Result;
use crate::gf::Elem;
use crate::local::LocalExpansion;
use crate::tower::FieldTower;
use crate::zeta::{genus, infinite_places};

pub struct Frame<'a> {
    loc: LocalExpansion<'a>,
    om: &'a OmegaR<'a>,
}

/// Smallest precision that separates logarithmic differentials, but never
/// below `q^d`.
pub fn separating_precision(tower: &FieldTower) -> usize {
    let q = tower.q() as u64;
    let d = tower.d();
    let bound = 2 * genus(q, d) as i64 - 2 + infinite_places(q, d) as i64;
    let m = (bound.max(0) as usize) / d + 1;
    m.max(tower.degree() + 1)
}

impl<'a> Frame<'a> {
    pub fn new(om: &'a OmegaR<'a>) -> Self {
        let prec = separating_precision(om.tower());
        Frame { loc: LocalExpansion::new(om.tower(), prec), om }
    }

    pub fn prec(&self) -> usize {
        self.loc.prec()
    }

    pub fn expansion(&self) -> &LocalExpansion<'a> {
        &self.loc
    }

    /// Residue-field coordinates `c_0 .. c_{M-1}`.
    pub fn residue_coords(&self, w: &Differential) -> Result<Vec<Elem>> {
        Ok(self.om.reduce(w, &self.loc)?.coeffs().to_vec())
    }

    /// Coordinates over `F_q`: each residue coefficient split into its `d`
    /// base-`q` digits.
    pub fn k_coords(&self, w: &Differential) -> Result<Vec<Elem>> {
        let t = self.om.tower();
        Ok(split_digits(&self.residue_coords(w)?, t.q(), t.d()))
    }

    /// Coordinates over `F_p`.
    pub fn p_coords(&self, w: &Differential) -> Result<Vec<Elem>> {
        let t = self.om.tower();
        let digits = (t.k().degree() as usize) * t.d();
        Ok(split_digits(&self.residue_coords(w)?, t.p(), digits))
    }
}

pub fn split_digits(v: &[Elem], base: u32, width: usize) -> Vec<Elem> {
    let mut out = Vec::with_capacity(v.len() * width);
    for &c in v {
        let mut x = c;
        for _ in 0..width {
            out.push(x % base);
            x /= base;
        }
    }
    out
}
