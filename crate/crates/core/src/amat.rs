//! Fraction-free elimination over `A = F_q[T]`.

use crate::gf::Gf;
use crate::poly::APoly;

/// Result of eliminating `[M | B]` with `M` square and nonsingular:
/// `M X = scale * B` and `det M = scale * sign`.
#[derive(Clone, Debug)]
pub struct FractionFree {
    pub scale: APoly,
    pub det: APoly,
    /// `X` stored column by column (one vector per right-hand side).
    pub solutions: Vec<Vec<APoly>>,
}

/// Bareiss Gauss-Jordan elimination. `m` is given as rows; `rhs` as columns.
/// Returns `None` when `m` is singular.
pub fn bareiss_solve(m: &[Vec<APoly>], rhs: &[Vec<APoly>], k: &Gf) -> Option<FractionFree> {
    let n = m.len();
    let r = rhs.len();
    let w = n + r;
    let mut a: Vec<Vec<APoly>> = (0..n)
        .map(|i| {
            let mut row = m[i].clone();
            assert_eq!(row.len(), n, "matrix must be square");
            row.extend(rhs.iter().map(|c| c[i].clone()));
            row
        })
        .collect();
    let mut prev = APoly::one();
    let mut negate = false;
    for col in 0..n {
        let piv = (col..n)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| a[i][col].deg())?;
        if piv != col {
            a.swap(piv, col);
            negate = !negate;
        }
        let pivot_row = a[col].clone();
        let pv = pivot_row[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == col {
                continue;
            }
            let factor = row[col].clone();
            for j in 0..w {
                if j == col {
                    continue;
                }
                let t = pv.mul(&row[j], k).sub(&factor.mul(&pivot_row[j], k), k);
                row[j] = t.div_exact(&prev, k).expect("Bareiss division is exact");
            }
            row[col] = APoly::zero();
        }
        prev = pv;
    }
    let scale = prev;
    let det = if negate { scale.neg(k) } else { scale.clone() };
    let solutions = (0..r).map(|c| (0..n).map(|i| a[i][n + c].clone()).collect()).collect();
    Some(FractionFree { scale, det, solutions })
}

/// Determinant by fraction-free elimination.
pub fn det(m: &[Vec<APoly>], k: &Gf) -> APoly {
    match bareiss_solve(m, &[], k) {
        Some(ff) => ff.det,
        None => APoly::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat_vec(m: &[Vec<APoly>], x: &[APoly], k: &Gf) -> Vec<APoly> {
        m.iter()
            .map(|row| row.iter().zip(x).fold(APoly::zero(), |acc, (a, b)| acc.add(&a.mul(b, k), k)))
            .collect()
    }

    /// Cofactor expansion, only for tiny sizes.
    fn det_naive(m: &[Vec<APoly>], k: &Gf) -> APoly {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = APoly::zero();
        for j in 0..n {
            let minor: Vec<Vec<APoly>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let t = m[0][j].mul(&det_naive(&minor, k), k);
            acc = if j % 2 == 0 { acc.add(&t, k) } else { acc.sub(&t, k) };
        }
        acc
    }

    proptest! {
        #[test]
        fn solves_and_matches_cofactor_det(codes in proptest::collection::vec(0u64..81, 16), b in proptest::collection::vec(0u64..27, 4)) {
            let k = Gf::new(3).unwrap();
            let m: Vec<Vec<APoly>> = codes.chunks(4).map(|r| r.iter().map(|&c| APoly::from_code(c, 3)).collect()).collect();
            let bv: Vec<APoly> = b.iter().map(|&c| APoly::from_code(c, 3)).collect();
            let want = det_naive(&m, &k);
            match bareiss_solve(&m, &[bv.clone()], &k) {
                None => prop_assert!(want.is_zero()),
                Some(ff) => {
                    prop_assert_eq!(&ff.det, &want);
                    let lhs = mat_vec(&m, &ff.solutions[0], &k);
                    let rhs: Vec<APoly> = bv.iter().map(|v| v.mul(&ff.scale, &k)).collect();
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
