//! Finite primes of `R` and their valuations.
//!
//! For `P ≠ p` the prime `P` is unramified and `f mod P` splits over `A/P`
//! into distinct irreducibles `g_1 .. g_r`; the primes above `P` are
//! `(P, g_i(λ))`. Valuations use an element `τ_i` with `τ_i / P` of
//! valuation `-1` at `P_i` and integral at every other prime.

use std::sync::Arc;

use crate::carlitz::carlitz_action;
use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::poly::{APoly, Poly};
use crate::tower::{FieldTower, REl};

#[derive(Clone, Debug)]
pub struct FinitePrime {
    /// The prime of `A` below.
    pub under: APoly,
    /// `A/P` (absent for the prime above `p`, whose residue field is `A/p`).
    field: Option<Arc<Gf>>,
    /// Factor of `f mod P` defining this prime, coefficients in `A/P`.
    pub factor: Poly,
    tau: REl,
    /// Residue degree over `A/P`.
    pub residue_degree: usize,
}

impl FinitePrime {
    /// Degree over `F_q`.
    pub fn degree(&self) -> usize {
        self.under.deg().unwrap() * self.residue_degree
    }

    pub fn is_above_p(&self) -> bool {
        self.field.is_none()
    }

    pub fn label(&self) -> String {
        if self.is_above_p() {
            return "(λ)".into();
        }
        format!("({}, {})", self.under.format("T"), self.factor.format("λ"))
    }

    /// Whether `x ∈ P_i`.
    pub fn contains(&self, t: &FieldTower, x: &REl) -> bool {
        let k = t.k();
        let Some(field) = &self.field else {
            return x.coords()[0].rem(&self.under, k).is_zero();
        };
        let q = t.q();
        let red: Vec<Elem> =
            x.coords().iter().map(|c| c.rem(&self.under, k).code(q) as Elem).collect();
        Poly::from_coeffs(red).rem(&self.factor, field).is_zero()
    }

    /// `v_{P_i}(x)` for `x ∈ R`, `x ≠ 0`.
    pub fn valuation(&self, t: &FieldTower, x: &REl) -> usize {
        assert!(!x.is_zero(), "valuation of zero");
        let mut v = 0;
        let mut y = x.clone();
        while self.contains(t, &y) {
            let z = t.mul(&y, &self.tau);
            y = t.div_a(&z, &self.under).expect("τ-division is exact on the prime");
            v += 1;
        }
        v
    }
}

/// `A/P` as a field, with codes matching `APoly::code`.
pub fn residue_field(t: &FieldTower, under: &APoly) -> Result<Gf> {
    Gf::extension(t.k(), under.coeffs())
}

/// `φ_a(x)` reduced over `A/P`.
fn carlitz_mod(t: &FieldTower, a: &APoly, under: &APoly) -> Poly {
    let k = t.k();
    let xs = carlitz_action(a, k).to_x_coeffs(k);
    Poly::from_coeffs(xs.iter().map(|c| c.rem(under, k).code(t.q()) as Elem).collect())
}

/// Lifts a polynomial over `A/P` to `R` through `λ`.
fn lift(t: &FieldTower, g: &Poly) -> REl {
    let q = t.q();
    let coeffs: Vec<APoly> = g.coeffs().iter().map(|&c| APoly::from_code(c as u64, q)).collect();
    t.from_xpoly(&coeffs)
}

/// The primes of `R` above the monic irreducible `under`.
pub fn split_prime(t: &FieldTower, under: &APoly) -> Result<Vec<FinitePrime>> {
    let k = t.k();
    if !under.is_monic() || !under.is_irreducible(k) {
        return Err(Error::NotIrreducible(under.format("T")));
    }
    let pd = t.prime_data();
    if under == pd.prime() {
        // λ^(-1) = -(f_1 + f_2 λ + ... + λ^(n-1)) / p.
        let f = t.torsion_poly();
        let tau = t.neg(&t.from_xpoly(&f[1..]));
        return Ok(vec![FinitePrime {
            under: under.clone(),
            field: None,
            factor: Poly::x(),
            tau,
            residue_degree: 1,
        }]);
    }
    let field = Arc::new(residue_field(t, under)?);
    let q = t.q();
    let fred = Poly::from_coeffs(t.torsion_poly().iter().map(|c| c.rem(under, k).code(q) as Elem).collect());
    let factors: Vec<Poly> = fred.factor(&field).into_iter().map(|(g, e)| {
        debug_assert_eq!(e, 1);
        g
    }).collect();
    let mut out = Vec::with_capacity(factors.len());
    for (i, g) in factors.iter().enumerate() {
        let mut tau = t.one();
        for (j, h) in factors.iter().enumerate() {
            if j != i {
                tau = t.mul(&tau, &lift(t, h));
            }
        }
        let tau = t.from_coords(tau.coords().iter().map(|c| c.rem(under, k)).collect());
        out.push(FinitePrime {
            under: under.clone(),
            field: Some(field.clone()),
            factor: g.clone(),
            tau,
            residue_degree: g.deg().unwrap(),
        });
    }
    Ok(out)
}

/// `σ_a` on the primes above one prime of `A`: entry `i` is the index of
/// `σ_a(P_i)`.
pub fn galois_permutation(t: &FieldTower, primes: &[FinitePrime], a: &APoly) -> Vec<usize> {
    let Some(first) = primes.first() else { return Vec::new() };
    let Some(field) = &first.field else { return vec![0] };
    let phi = carlitz_mod(t, a, &first.under);
    primes
        .iter()
        .map(|pi| {
            let img = pi.factor.compose(&phi, field);
            primes
                .iter()
                .position(|pj| img.rem(&pj.factor, field).is_zero())
                .expect("Galois image of a prime is a prime above the same place")
        })
        .collect()
}

/// Residue degree of primes above `under`: the order of `under` in
/// `(A/p)^×`, or `1` for `p` itself.
pub fn residue_degree(t: &FieldTower, under: &APoly) -> usize {
    let pd = t.prime_data();
    if under == pd.prime() {
        return 1;
    }
    pd.residue().mult_order(pd.reduce(under)) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::PrimeData;

    fn tower(q: u64, p: &str) -> FieldTower {
        FieldTower::new(PrimeData::parse(q, p).unwrap()).unwrap()
    }

    #[test]
    fn splitting_matches_frobenius_order() {
        let t = tower(3, "T^2+1");
        let k = t.k();
        for d in 1..=3 {
            for under in crate::poly::irreducibles(k, d) {
                let primes = split_prime(&t, &under).unwrap();
                let f = residue_degree(&t, &under);
                assert!(primes.iter().all(|p| p.residue_degree == f));
                assert_eq!(primes.len() * f, if under == *t.prime_data().prime() { 1 } else { t.degree() });
            }
        }
    }

    #[test]
    fn valuations_of_rational_primes() {
        let t = tower(2, "T^3+T+1");
        let k = t.k();
        for under in crate::poly::irreducibles(k, 2).into_iter().chain([t.prime_data().prime().clone()]) {
            let primes = split_prime(&t, &under).unwrap();
            let e = if under == *t.prime_data().prime() { t.degree() } else { 1 };
            let x = t.from_a(under.pow(2, k));
            for pr in &primes {
                assert_eq!(pr.valuation(&t, &x), 2 * e);
            }
        }
        let lam = t.lambda();
        let pq = split_prime(&t, t.prime_data().prime()).unwrap();
        assert_eq!(pq[0].valuation(&t, &lam), 1);
    }
}
