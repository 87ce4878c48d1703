//! Dense linear algebra over a finite field.

use crate::gf::{Elem, Gf};

/// Row-major dense matrix over a [`Gf`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl FqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FqMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        FqMatrix { rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vec<Elem>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, o: &FqMatrix, f: &Gf) -> FqMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                let orow = o.row(k);
                let base = i * o.cols;
                for (j, &b) in orow.iter().enumerate() {
                    if b != 0 {
                        out.data[base + j] = f.add(out.data[base + j], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elem], f: &Gf) -> Vec<Elem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, o: &FqMatrix, f: &Gf) -> FqMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| f.add(a, b)).collect();
        FqMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &FqMatrix, f: &Gf) -> FqMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FqMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Elem, f: &Gf) -> FqMatrix {
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        FqMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, mut k: u64, f: &Gf) -> FqMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(self.rows);
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

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, f: &Gf) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self[(i, c)] != 0) else {
                continue;
            };
            self.swap_rows(r, piv);
            let inv = f.inv(self[(r, c)]);
            for j in c..self.cols {
                self[(r, j)] = f.mul(self[(r, j)], inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self[(i, c)];
                if factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.mul(factor, self[(r, j)]);
                    self[(i, j)] = f.sub(self[(i, j)], v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, f: &Gf) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of the right null space `{x : M x = 0}`.
    pub fn kernel(&self, f: &Gf) -> Vec<Vec<Elem>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m[(r, fc)]);
                }
                v
            })
            .collect()
    }

    /// Basis of the left null space `{y : y M = 0}`.
    pub fn left_kernel(&self, f: &Gf) -> Vec<Vec<Elem>> {
        self.transpose().kernel(f)
    }

    /// Some `x` with `M x = b`, if one exists.
    pub fn solve(&self, b: &[Elem], f: &Gf) -> Option<Vec<Elem>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        let pivots = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)];
        }
        Some(x)
    }

    pub fn inverse(&self, f: &Gf) -> Option<FqMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Some(Self::zeros(0, 0));
        }
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = 1;
        }
        let pivots = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)];
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for FqMatrix {
    type Output = Elem;
    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FqMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Row-reduced basis of the span of `vectors`.
pub fn span_basis(vectors: &[Vec<Elem>], len: usize, f: &Gf) -> Vec<Vec<Elem>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = FqMatrix::from_rows(vectors);
    debug_assert_eq!(m.cols(), len);
    let r = m.rref(f).len();
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

/// Rank of a list of vectors of common length.
pub fn rank_of(vectors: &[Vec<Elem>], f: &Gf) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    FqMatrix::from_rows(vectors).rank(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_and_zero_kernels() {
        let f = Gf::new(3).unwrap();
        assert!(FqMatrix::identity(4).kernel(&f).is_empty());
        assert_eq!(FqMatrix::zeros(3, 3).kernel(&f).len(), 3);
    }

    #[test]
    fn kernel_invariant_under_row_reduction() {
        let f = Gf::new(4).unwrap();
        let m = FqMatrix::from_rows(&[vec![1, 2, 3, 0], vec![2, 3, 1, 1], vec![3, 1, 2, 1]]);
        let mut r = m.clone();
        r.rref(&f);
        assert_eq!(m.kernel(&f).len(), r.kernel(&f).len());
    }

    proptest! {
        #[test]
        fn kernel_rank_nullity(entries in proptest::collection::vec(0u32..9, 20), cols in 2usize..6) {
            let f = Gf::new(9).unwrap();
            let rows = entries.len() / cols;
            prop_assume!(rows > 0);
            let data: Vec<Vec<u32>> = (0..rows).map(|i| entries[i*cols..(i+1)*cols].to_vec()).collect();
            let m = FqMatrix::from_rows(&data);
            let ker = m.kernel(&f);
            prop_assert_eq!(ker.len() + m.rank(&f), cols);
            for v in &ker {
                prop_assert!(m.mul_vec(v, &f).iter().all(|&x| x == 0));
            }
            prop_assert_eq!(rank_of(&ker, &f), ker.len());
        }

        #[test]
        fn inverse_roundtrip(entries in proptest::collection::vec(0u32..5, 16)) {
            let f = Gf::new(5).unwrap();
            let rows: Vec<Vec<u32>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let m = FqMatrix::from_rows(&rows);
            if let Some(inv) = m.inverse(&f) {
                prop_assert_eq!(m.mul(&inv, &f), FqMatrix::identity(4));
            } else {
                prop_assert!(m.rank(&f) < 4);
            }
        }
    }
}
