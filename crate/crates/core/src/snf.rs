//! Integer matrices: Smith normal form with transforms and an incremental
//! Hermite basis for relation lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone().into();
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free elimination (square matrices only).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            if piv != k {
                a.swap_rows(piv, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * prev
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self.data[r * self.cols + j];
            self.data[r * self.cols + j] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// `U * M * V = S` with `U`, `V` unimodular and `S` diagonal with
/// `s_1 | s_2 | ...`, all `s_i >= 0`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = &a[(i, j)];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            a.swap_rows(t, bi);
            u.swap_rows(t, bi);
            a.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let mut dirty = false;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let qt = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row(i, t, &qt);
                u.add_row(i, t, &qt);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let qt = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col(j, t, &qt);
                v.add_col(j, t, &qt);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            let piv = a[(t, t)].clone();
            let offender = (t + 1..r)
                .find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&piv)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { u, s: a, v }
}

/// Invariant factors (diagonal of the Smith form), zeros included.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    smith_normal_form(m).diagonal()
}

/// Incrementally maintained Hermite basis of a sublattice of `Z^n`.
#[derive(Clone, Debug)]
pub struct HermiteBasis {
    n: usize,
    /// `rows[c]` is the basis row whose pivot sits in column `c`.
    rows: Vec<Option<Vec<BigInt>>>,
}

impl HermiteBasis {
    pub fn new(n: usize) -> Self {
        HermiteBasis { n, rows: vec![None; n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }

    /// Adds a vector to the lattice. Returns `true` if the lattice changed.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.insert_big(v)
    }

    pub fn insert_big(&mut self, mut v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.n);
        let mut changed = false;
        for c in 0..self.n {
            if v[c].is_zero() {
                continue;
            }
            match self.rows[c].take() {
                None => {
                    if v[c].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.rows[c] = Some(v);
                    self.reduce_above(c);
                    return true;
                }
                Some(h) => {
                    if v[c].is_multiple_of(&h[c]) {
                        let k = &v[c] / &h[c];
                        for (x, y) in v.iter_mut().zip(&h) {
                            *x -= &k * y;
                        }
                        self.rows[c] = Some(h);
                        continue;
                    }
                    let eg = h[c].extended_gcd(&v[c]);
                    let (g, s, t) = (eg.gcd, eg.x, eg.y);
                    let hc = &h[c] / &g;
                    let vc = &v[c] / &g;
                    let new_h: Vec<BigInt> =
                        h.iter().zip(&v).map(|(a, b)| &s * a + &t * b).collect();
                    let new_v: Vec<BigInt> =
                        h.iter().zip(&v).map(|(a, b)| &hc * b - &vc * a).collect();
                    self.rows[c] = Some(new_h);
                    self.reduce_above(c);
                    v = new_v;
                    changed = true;
                }
            }
        }
        changed
    }

    /// Reduces entries in column `c` of earlier rows modulo the pivot.
    fn reduce_above(&mut self, c: usize) {
        let Some(piv_row) = self.rows[c].clone() else { return };
        let piv = piv_row[c].clone();
        for r in 0..c {
            if let Some(row) = self.rows[r].as_mut() {
                let k = row[c].div_floor(&piv);
                if !k.is_zero() {
                    for (x, y) in row.iter_mut().zip(&piv_row) {
                        *x -= &k * y;
                    }
                }
            }
        }
    }

    /// Nonzero basis rows in pivot order.
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().flatten().cloned().collect()
    }

    /// Basis rows as an integer matrix.
    pub fn matrix(&self) -> IntMatrix {
        let b = self.basis();
        let mut m = IntMatrix::zeros(b.len(), self.n);
        for (i, row) in b.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// Index of the lattice in `Z^n` when it has full rank.
    pub fn index(&self) -> Option<BigInt> {
        if self.rank() < self.n {
            return None;
        }
        Some(self.rows.iter().flatten().enumerate().map(|(i, r)| r[i].clone()).product())
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        for c in 0..self.n {
            if v[c].is_zero() {
                continue;
            }
            let Some(h) = &self.rows[c] else { return false };
            if !v[c].is_multiple_of(&h[c]) {
                return false;
            }
            let k = &v[c] / &h[c];
            for (x, y) in v.iter_mut().zip(h) {
                *x -= &k * y;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(m: &IntMatrix) -> Snf {
        let snf = smith_normal_form(m);
        assert_eq!(snf.u.mul(m).mul(&snf.v), snf.s);
        assert!(snf.u.det().abs().is_one());
        assert!(snf.v.det().abs().is_one());
        let d = snf.diagonal();
        for i in 0..snf.s.rows() {
            for j in 0..snf.s.cols() {
                if i != j {
                    assert!(snf.s[(i, j)].is_zero());
                }
            }
        }
        for w in d.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]), "{:?}", d);
            }
        }
        snf
    }

    #[test]
    fn diag_2_3() {
        let m = IntMatrix::from_rows(&[vec![2i64, 0], vec![0, 3]]);
        assert_eq!(check(&m).diagonal(), big(&[1, 6]));
    }

    #[test]
    fn zero_matrix() {
        let m = IntMatrix::zeros(3, 2);
        assert_eq!(check(&m).diagonal(), big(&[0, 0]));
    }

    #[test]
    fn hermite_index_matches_determinant() {
        let rows = [vec![4i64, 2, 0], vec![2, 6, 2], vec![0, 2, 8], vec![6, 8, 10]];
        let mut h = HermiteBasis::new(3);
        for r in &rows {
            h.insert(r);
        }
        let snf = smith_normal_form(&IntMatrix::from_rows(&rows));
        let prod: BigInt = snf.diagonal().iter().product();
        assert_eq!(h.index().unwrap(), prod);
        assert!(h.contains(&big(&[6, 8, 10])));
        assert!(!h.contains(&big(&[1, 0, 0])));
    }

    proptest! {
        #[test]
        fn random_4x4(entries in proptest::collection::vec(-20i64..20, 16)) {
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            check(&IntMatrix::from_rows(&rows));
        }

        #[test]
        fn invariant_factors_ignore_permutations(entries in proptest::collection::vec(-9i64..9, 12), perm in 0usize..6) {
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let base = invariant_factors(&IntMatrix::from_rows(&rows));
            let orders = [[0,1,2],[0,2,1],[1,0,2],[1,2,0],[2,0,1],[2,1,0]];
            let permuted: Vec<Vec<i64>> = orders[perm].iter().map(|&i| {
                let mut r = rows[i].clone();
                r.rotate_left(perm % 4);
                r
            }).collect();
            prop_assert_eq!(base, invariant_factors(&IntMatrix::from_rows(&permuted)));
        }

        #[test]
        fn hermite_matches_snf(entries in proptest::collection::vec(-6i64..6, 15)) {
            let rows: Vec<Vec<i64>> = entries.chunks(3).map(|c| c.to_vec()).collect();
            let mut h = HermiteBasis::new(3);
            for r in &rows { h.insert(r); }
            let d = invariant_factors(&IntMatrix::from_rows(&rows));
            let rank = d.iter().filter(|x| !x.is_zero()).count();
            prop_assert_eq!(h.rank(), rank);
            if rank == 3 {
                let prod: BigInt = d.iter().product();
                prop_assert_eq!(h.index().unwrap(), prod);
            }
            for r in &rows { prop_assert!(h.contains(&big(r))); }
        }
    }
}
