//! Finite-dimensional `(A/p)[Δ]`-modules given by the matrix of `δ0`.

use std::sync::Arc;

use crate::gf::{Elem, Gf};
use crate::linalg::FqMatrix;

/// Characters are `ω^j`, `j = 0 .. |Δ| - 1`, with `ω(δ0) = g`.
#[derive(Clone, Debug)]
pub struct DeltaModule {
    field: Arc<Gf>,
    generator: Elem,
    order: usize,
    action: FqMatrix,
    labels: Vec<String>,
}

/// Cyclicity verdict with the first character whose eigenspace is too big.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cyclicity {
    pub cyclic: bool,
    pub witness: Option<usize>,
}

impl DeltaModule {
    /// `field` is `A/p`, `generator` is `ω(δ0)` and `order` is `|Δ|`.
    pub fn new(field: Arc<Gf>, generator: Elem, order: usize, action: FqMatrix, labels: Vec<String>) -> Self {
        assert_eq!(action.rows(), action.cols());
        assert_eq!(labels.len(), action.rows());
        DeltaModule { field, generator, order, action, labels }
    }

    pub fn zero(field: Arc<Gf>, generator: Elem, order: usize) -> Self {
        Self::new(field, generator, order, FqMatrix::zeros(0, 0), Vec::new())
    }

    /// The group algebra with basis `δ0^k`.
    pub fn regular(field: Arc<Gf>, generator: Elem, order: usize) -> Self {
        let mut m = FqMatrix::zeros(order, order);
        for k in 0..order {
            m[((k + 1) % order, k)] = 1;
        }
        let labels = (0..order).map(|k| format!("delta0^{k}")).collect();
        Self::new(field, generator, order, m, labels)
    }

    /// One-dimensional module on which `Δ` acts through `ω^j`.
    pub fn character(field: Arc<Gf>, generator: Elem, order: usize, j: usize) -> Self {
        let v = field.pow(generator, j as u64);
        let m = FqMatrix::from_rows(&[vec![v]]);
        Self::new(field, generator, order, m, vec![format!("omega^{j}")])
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<Gf> {
        self.field.clone()
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.action.rows()
    }

    pub fn action(&self) -> &FqMatrix {
        &self.action
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn chi(&self, j: usize) -> Elem {
        self.field.pow(self.generator, j as u64)
    }

    /// Checks `δ0^|Δ| = 1`.
    pub fn action_has_correct_order(&self) -> bool {
        self.action.pow(self.order as u64, &self.field) == FqMatrix::identity(self.dim())
    }

    pub fn eigen_dim(&self, j: usize) -> usize {
        let f = &self.field;
        let m = self.action.sub(&FqMatrix::identity(self.dim()).scale(self.chi(j), f), f);
        self.dim() - m.rank(f)
    }

    /// `dim M(ω^j)` for every `j`.
    pub fn eigen_dims(&self) -> Vec<usize> {
        (0..self.order).map(|j| self.eigen_dim(j)).collect()
    }

    /// Basis of the `ω^j`-eigenspace.
    pub fn eigenspace(&self, j: usize) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let m = self.action.sub(&FqMatrix::identity(self.dim()).scale(self.chi(j), f), f);
        m.kernel(f)
    }

    /// `e_j = -Σ_k χ_j(δ0^k)^{-1} δ0^k`, using `|Δ|^{-1} = -1` in `A/p`.
    pub fn projector(&self, j: usize) -> FqMatrix {
        let f = &self.field;
        let m = self.dim();
        let mut acc = FqMatrix::zeros(m, m);
        let mut power = FqMatrix::identity(m);
        let inv = f.inv(self.chi(j));
        let mut coeff = 1;
        for _ in 0..self.order {
            acc = acc.add(&power.scale(coeff, f), f);
            power = power.mul(&self.action, f);
            coeff = f.mul(coeff, inv);
        }
        acc.scale(f.neg(1), f)
    }

    /// Idempotence, orthogonality and completeness of the projectors, and
    /// agreement of their ranks with the eigenspace dimensions.
    pub fn projectors_consistent(&self) -> bool {
        let f = &self.field;
        let m = self.dim();
        let ps: Vec<FqMatrix> = (0..self.order).map(|j| self.projector(j)).collect();
        let mut sum = FqMatrix::zeros(m, m);
        for (j, p) in ps.iter().enumerate() {
            if p.mul(p, f) != *p || p.rank(f) != self.eigen_dim(j) {
                return false;
            }
            sum = sum.add(p, f);
        }
        if sum != FqMatrix::identity(m) {
            return false;
        }
        (0..self.order).all(|i| (0..self.order).all(|j| i == j || ps[i].mul(&ps[j], f).is_zero()))
    }

    pub fn cyclicity(&self) -> Cyclicity {
        let witness = (0..self.order).find(|&j| self.eigen_dim(j) > 1);
        Cyclicity { cyclic: witness.is_none(), witness }
    }

    pub fn direct_sum(&self, o: &DeltaModule) -> DeltaModule {
        let (a, b) = (self.dim(), o.dim());
        let mut m = FqMatrix::zeros(a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                m[(i, j)] = self.action[(i, j)];
            }
        }
        for i in 0..b {
            for j in 0..b {
                m[(a + i, a + j)] = o.action[(i, j)];
            }
        }
        let labels = self.labels.iter().chain(&o.labels).cloned().collect();
        DeltaModule::new(self.field.clone(), self.generator, self.order, m, labels)
    }

    /// Restriction to a stable subspace given by a basis (as vectors).
    /// Returns `None` if the span is not stable.
    pub fn subspace(&self, basis: &[Vec<Elem>]) -> Option<DeltaModule> {
        let f = &self.field;
        let r = basis.len();
        if r == 0 {
            return Some(DeltaModule::zero(self.field.clone(), self.generator, self.order));
        }
        let b = FqMatrix::from_cols(self.dim(), basis);
        let mut m = FqMatrix::zeros(r, r);
        for (j, v) in basis.iter().enumerate() {
            let img = self.action.mul_vec(v, f);
            let coords = b.solve(&img, f)?;
            for i in 0..r {
                m[(i, j)] = coords[i];
            }
        }
        let labels = (0..r).map(|i| format!("sub[{i}]")).collect();
        Some(DeltaModule::new(self.field.clone(), self.generator, self.order, m, labels))
    }

    /// The quotient by a stable subspace; `None` if it is not stable.
    pub fn quotient(&self, basis: &[Vec<Elem>]) -> Option<DeltaModule> {
        let f = &self.field;
        let n = self.dim();
        let sub = crate::linalg::span_basis(basis, n, f);
        self.subspace(&sub)?;
        // Complete the basis with standard vectors.
        let mut full = sub.clone();
        let mut comp = Vec::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            let mut trial = full.clone();
            trial.push(e.clone());
            if crate::linalg::rank_of(&trial, f) > full.len() {
                full = trial;
                comp.push(e);
            }
        }
        let s = sub.len();
        let r = comp.len();
        let p = FqMatrix::from_cols(n, &full);
        let pinv = p.inverse(f).expect("completed basis is invertible");
        let conj = pinv.mul(&self.action, f).mul(&p, f);
        let mut m = FqMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                m[(i, j)] = conj[(s + i, s + j)];
            }
        }
        let labels = (0..r).map(|i| format!("quot[{i}]")).collect();
        Some(DeltaModule::new(self.field.clone(), self.generator, self.order, m, labels))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn f4() -> Arc<Gf> {
        let k = Gf::new(2).unwrap();
        let p = Poly::parse("T^2+T+1", 'T', &k).unwrap();
        Arc::new(Gf::extension(&k, p.coeffs()).unwrap())
    }

    #[test]
    fn regular_module_is_cyclic_with_unit_dims() {
        let f = f4();
        let g = f.generator();
        let m = DeltaModule::regular(f, g, 3);
        assert_eq!(m.eigen_dims(), vec![1, 1, 1]);
        assert!(m.cyclicity().cyclic);
        assert!(m.projectors_consistent());
        assert!(m.action_has_correct_order());
        let doubled = m.direct_sum(&m);
        assert_eq!(doubled.eigen_dims(), vec![2, 2, 2]);
        assert_eq!(doubled.cyclicity().witness, Some(0));
    }

    #[test]
    fn zero_module_and_character_sum() {
        let f = f4();
        let g = f.generator();
        let z = DeltaModule::zero(f.clone(), g, 3);
        assert!(z.cyclicity().cyclic);
        let l = DeltaModule::character(f, g, 3, 1);
        assert_eq!(l.eigen_dims(), vec![0, 1, 0]);
        let ll = l.direct_sum(&l);
        assert_eq!(ll.cyclicity(), Cyclicity { cyclic: false, witness: Some(1) });
    }

    #[test]
    fn subspace_and_quotient_dims_add_up() {
        let f = f4();
        let g = f.generator();
        let m = DeltaModule::regular(f.clone(), g, 3);
        let e1 = m.eigenspace(1);
        let sub = m.subspace(&e1).unwrap();
        let quo = m.quotient(&e1).unwrap();
        assert_eq!(sub.eigen_dims(), vec![0, 1, 0]);
        assert_eq!(quo.eigen_dims(), vec![1, 0, 1]);
        assert!(m.subspace(&[vec![1, 0, 0]]).is_none());
    }
}
