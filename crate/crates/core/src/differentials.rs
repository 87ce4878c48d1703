//! Kähler differentials of `R`, the `q`-Cartier operator, and reductions
//! modulo powers of `q = (λ)`.
//!
//! Since the affine model `f(T, x) = 0` is smooth, `Ω_R` is free of rank one
//! over `R` with generator `ω0 = dλ / f_T(λ)`. A differential `g dλ` is
//! integral exactly when `g f_T ∈ R`.

use crate::delta::DeltaModule;
use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::linalg::FqMatrix;
use crate::local::{LocalExpansion, Series};
use crate::poly::APoly;
use crate::tower::{FieldTower, GaloisElement, LEl, REl};

/// `g dλ` with `g ∈ L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Differential {
    g: LEl,
    integral: bool,
}

impl Differential {
    pub fn coefficient(&self) -> &LEl {
        &self.g
    }

    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_zero()
    }
}

/// `Σ c_i λ^i dλ` modulo `λ^N dλ`, coefficients in `A/p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalDifferential {
    coeffs: Series,
}

impl LocalDifferential {
    pub fn new(coeffs: Series) -> Self {
        LocalDifferential { coeffs }
    }

    pub fn from_vec(coeffs: Vec<Elem>) -> Self {
        LocalDifferential { coeffs: Series::from_coeffs(coeffs) }
    }

    pub fn prec(&self) -> usize {
        self.coeffs.prec()
    }

    pub fn coeffs(&self) -> &[Elem] {
        self.coeffs.coeffs()
    }

    pub fn series(&self) -> &Series {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn truncate(&self, n: usize) -> LocalDifferential {
        LocalDifferential { coeffs: self.coeffs.truncate(n) }
    }
}

/// Differential calculus on a fixed tower.
#[derive(Debug)]
pub struct OmegaR<'a> {
    tower: &'a FieldTower,
    /// `f(T, x)^(q-1)` by powers of `x`.
    f_pow: Vec<APoly>,
}

fn xpoly_mul(a: &[APoly], b: &[APoly], k: &Gf) -> Vec<APoly> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![APoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                v[i + j].add_assign(&x.mul(y, k), k);
            }
        }
    }
    v
}

impl<'a> OmegaR<'a> {
    pub fn new(tower: &'a FieldTower) -> Self {
        let k = tower.k();
        let mut f_pow = vec![APoly::one()];
        for _ in 1..tower.q() {
            f_pow = xpoly_mul(&f_pow, tower.torsion_poly(), k);
        }
        OmegaR { tower, f_pow }
    }

    pub fn tower(&self) -> &FieldTower {
        self.tower
    }

    fn k(&self) -> &Gf {
        self.tower.k()
    }

    /// Normal form, flagging integrality.
    pub fn from_coefficient(&self, g: LEl) -> Differential {
        let h = self.tower.lmul(&g, &self.tower.to_l(self.tower.f_t()));
        Differential { integral: h.den().is_one(), g }
    }

    /// `h ω0` for `h ∈ L`.
    pub fn from_omega0_coefficient(&self, h: &LEl) -> Differential {
        let g = self.tower.lmul(h, self.tower.f_t_inverse());
        Differential { integral: h.den().is_one(), g }
    }

    /// `h` with `ω = h ω0`.
    pub fn omega0_coefficient(&self, w: &Differential) -> LEl {
        self.tower.lmul(&w.g, &self.tower.to_l(self.tower.f_t()))
    }

    pub fn zero(&self) -> Differential {
        self.from_coefficient(self.tower.to_l(&self.tower.zero()))
    }

    /// `dλ`.
    pub fn d_lambda(&self) -> Differential {
        self.from_coefficient(self.tower.to_l(&self.tower.one()))
    }

    /// `a dT + b dλ`, using `dT = -(f_x / f_T) dλ`.
    pub fn make_differential(&self, a: &REl, b: &REl) -> Differential {
        let t = self.tower;
        let num = t.sub(&t.mul(b, t.f_t()), &t.mul(a, t.f_x()));
        self.from_coefficient(t.lmul(&t.to_l(&num), t.f_t_inverse()))
    }

    /// `dh` for `h ∈ R`.
    pub fn d(&self, h: &REl) -> Differential {
        let (h_t, h_x) = self.partials(h);
        self.make_differential(&h_t, &h_x)
    }

    /// Partial derivatives of the canonical representative.
    fn partials(&self, h: &REl) -> (REl, REl) {
        let t = self.tower;
        let k = self.k();
        let h_t = t.from_coords(h.coords().iter().map(|c| c.derivative(k)).collect());
        let mut hx: Vec<APoly> = h
            .coords()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(k.from_int(i as i64), k))
            .collect();
        hx.push(APoly::zero());
        (h_t, t.from_coords(hx))
    }

    /// `dx / x` for `x ∈ L^×`.
    pub fn dlog(&self, x: &LEl) -> Result<Differential> {
        let t = self.tower;
        let k = self.k();
        let inv = t.linv(x).ok_or_else(|| Error::NotInvertible("zero".into()))?;
        let num = x.num();
        let d_num = self.d(num);
        let num_inv = t.lmul(&inv, &t.frac(t.one(), x.den().clone()));
        let first = self.scale(&d_num, &num_inv);
        // d(den)/den = den'/den dT
        let den = x.den();
        let dd = self.make_differential(&t.from_a(den.derivative(k)), &t.zero());
        let second = self.scale(&dd, &t.frac(t.one(), den.clone()));
        Ok(self.sub(&first, &second))
    }

    pub fn add(&self, a: &Differential, b: &Differential) -> Differential {
        self.from_coefficient(self.tower.ladd(&a.g, &b.g))
    }

    pub fn sub(&self, a: &Differential, b: &Differential) -> Differential {
        self.from_coefficient(self.tower.lsub(&a.g, &b.g))
    }

    pub fn scale(&self, w: &Differential, c: &LEl) -> Differential {
        self.from_coefficient(self.tower.lmul(&w.g, c))
    }

    pub fn scale_const(&self, w: &Differential, c: Elem) -> Differential {
        let t = self.tower;
        self.scale(w, &t.to_l(&t.from_a(APoly::constant(c))))
    }

    /// `σ(g dλ) = σ(g) dσ(λ)`.
    pub fn apply_galois(&self, s: GaloisElement, w: &Differential) -> Differential {
        let t = self.tower;
        let ds = self.d(t.galois_image(s));
        self.scale(&ds, &t.apply_l(s, &w.g))
    }

    /// The `q`-Cartier operator.
    pub fn cartier(&self, w: &Differential) -> Result<Differential> {
        let t = self.tower;
        let k = self.k();
        let q = t.q() as usize;
        let h = self.omega0_coefficient(w);
        // c((H/D) ω0) = (1/D) c(D^(q-1) H ω0)
        let den = h.den().clone();
        let big = t.scale(&den.pow(q as u64 - 1, k), h.num());
        let core = self.cartier_core(big.coords());
        if core.len() > t.degree() {
            return Err(Error::NotIntegralAfterClear);
        }
        let mut coords = core;
        coords.resize(t.degree(), APoly::zero());
        let out = t.frac(t.from_coords(coords), den);
        Ok(self.from_omega0_coefficient(&out))
    }

    /// `∇(F^(q-1) H)`: keeps `T^a x^b` with `a ≡ b ≡ -1 (mod q)` and maps it
    /// to `T^((a+1)/q - 1) x^((b+1)/q - 1)`. Coefficients lie in `F_q`, where
    /// the `q`-th root is the identity.
    fn cartier_core(&self, h: &[APoly]) -> Vec<APoly> {
        let k = self.k();
        let q = self.tower.q() as usize;
        let top = h.len() + self.f_pow.len() - 1;
        let mut out = Vec::new();
        let mut b = q - 1;
        while b < top {
            let mut acc = APoly::zero();
            for (i, hi) in h.iter().enumerate() {
                if i > b || hi.is_zero() {
                    continue;
                }
                if let Some(fj) = self.f_pow.get(b - i) {
                    if !fj.is_zero() {
                        acc.add_assign(&hi.mul(fj, k), k);
                    }
                }
            }
            let c: Vec<Elem> = acc.coeffs().iter().skip(q - 1).step_by(q).copied().collect();
            out.push(APoly::from_coeffs(c));
            b += q;
        }
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }

    /// The class of an integral differential in `Ω_R / q^N Ω_R`.
    pub fn reduce(&self, w: &Differential, loc: &LocalExpansion) -> Result<LocalDifferential> {
        if !w.integral {
            return Err(Error::PoleAtQ);
        }
        Ok(LocalDifferential::new(loc.expand_l(&w.g)?))
    }
}

/// `Σ a_j λ^j dλ ↦ Σ a_{qj+q-1}^(1/q) λ^j dλ`.
pub fn local_cartier(l: &LocalDifferential, tower: &FieldTower) -> Result<LocalDifferential> {
    let q = tower.q() as usize;
    let n = l.prec();
    if n < q {
        return Err(Error::TruncationTooShort { have: n, need: q });
    }
    let f = tower.residue();
    let e = tower.k().degree();
    let out = (0..n / q).map(|j| f.root_p_power(l.coeffs()[q * j + q - 1], e)).collect();
    Ok(LocalDifferential::from_vec(out))
}

/// `(1 - c^d)` from `Ω_R / q^(q^d)` to `Ω_R / q`.
pub fn one_minus_cd(l: &LocalDifferential, tower: &FieldTower) -> Result<LocalDifferential> {
    let full = tower.degree() + 1;
    if l.prec() != full {
        return Err(Error::TruncationTooShort { have: l.prec(), need: full });
    }
    let mut cur = l.clone();
    for _ in 0..tower.d() {
        cur = local_cartier(&cur, tower)?;
    }
    debug_assert_eq!(cur.prec(), 1);
    let f = tower.residue();
    Ok(LocalDifferential::from_vec(vec![f.sub(l.coeffs()[0], cur.coeffs()[0])]))
}

/// `σ(Σ c_i λ^i dλ) = Σ c_i s^i s' dλ` with `s = σ(λ)`; the coefficients are
/// Teichmüller representatives, which `Δ` fixes.
pub fn local_galois(l: &LocalDifferential, s_series: &Series, f: &Gf) -> LocalDifferential {
    let n = l.prec();
    assert!(s_series.prec() > n, "σ(λ) needs one extra term");
    let ds = s_series.derivative(f).truncate(n);
    let s = s_series.truncate(n);
    LocalDifferential::new(l.series().compose(&s, f).mul(&ds, f))
}

/// `Ω_R / q^N Ω_R` as a `Δ`-module in the basis `λ^i dλ`.
pub fn local_module(tower: &FieldTower, n: usize) -> DeltaModule {
    let f = tower.residue();
    let loc = LocalExpansion::new(tower, n + 1);
    let s = loc.galois_image(tower.delta0());
    let mut m = FqMatrix::zeros(n, n);
    for i in 0..n {
        let img = local_galois(&LocalDifferential::new(Series::monomial(1, i, n)), &s, f);
        for (r, &c) in img.coeffs().iter().enumerate() {
            m[(r, i)] = c;
        }
    }
    let labels = (0..n).map(|i| format!("lambda^{i} dlambda")).collect();
    DeltaModule::new(tower.prime_data().residue_arc(), tower.generator_code(), tower.degree(), m, labels)
}

/// Graded pieces of the `q`-adic filtration and the eigenspace table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationReport {
    /// Character exponent of `Δ` on `λ^i dλ` modulo `q^(i+1)`, for each `i`.
    pub characters: Vec<usize>,
    /// `dim (Ω_R / q^(q^d))(ω^j)`.
    pub dims: Vec<usize>,
}

pub fn filtration_report(tower: &FieldTower) -> Result<FiltrationReport> {
    let n = tower.degree();
    let len = n + 1;
    let f = tower.residue();
    let loc = LocalExpansion::new(tower, len + 1);
    let mut characters = Vec::with_capacity(len);
    for i in 0..len {
        let basis = LocalDifferential::new(Series::monomial(1, i, len));
        for e in 0..n {
            let s = tower.delta_pow(e);
            let img = local_galois(&basis, &loc.galois_image(s), f);
            let want = f.pow(tower.teichmuller(s), i as u64 + 1);
            let low_ok = img.coeffs()[..i].iter().all(|&c| c == 0);
            if !low_ok || img.coeffs()[i] != want {
                return Err(Error::FiltrationMismatch(format!(
                    "λ^{i} dλ under δ0^{e} is not multiplied by ω^{} modulo q^{}",
                    i + 1,
                    i + 1
                )));
            }
        }
        characters.push((i + 1) % n);
    }
    let module = local_module(tower, len);
    let dims = module.eigen_dims();
    for (j, &dm) in dims.iter().enumerate() {
        let want = if j == 1 % n { 2 } else { 1 };
        if dm != want {
            return Err(Error::FiltrationMismatch(format!(
                "eigenspace ω^{j} of Ω_R/q^(q^d) has dimension {dm}, expected {want}"
            )));
        }
    }
    Ok(FiltrationReport { characters, dims })
}

/// `ker(1 - c^d)` on `Ω_R / q^(q^d) Ω_R` as a `Δ`-module.
pub fn kernel_one_minus_cd(tower: &FieldTower) -> Result<DeltaModule> {
    let len = tower.degree() + 1;
    let module = local_module(tower, len);
    let f = tower.residue();
    let mut row = vec![0; len];
    for (i, r) in row.iter_mut().enumerate() {
        let mut e = vec![0; len];
        e[i] = 1;
        *r = one_minus_cd(&LocalDifferential::from_vec(e), tower)?.coeffs()[0];
    }
    let kernel = FqMatrix::from_rows(&[row]).kernel(f);
    let sub = module
        .subspace(&kernel)
        .ok_or_else(|| Error::violation("ker(1 - c^d) is Δ-stable", None))?;
    let c = sub.cyclicity();
    if !c.cyclic {
        return Err(Error::violation("ker(1 - c^d) is cyclic", c.witness));
    }
    if sub.eigen_dim(1 % tower.degree()) != 1 {
        return Err(Error::violation("the ω-part of ker(1 - c^d) is one-dimensional", Some(1)));
    }
    Ok(sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::PrimeData;

    fn tower(q: u64, p: &str) -> FieldTower {
        FieldTower::new(PrimeData::parse(q, p).unwrap()).unwrap()
    }

    #[test]
    fn dt_over_f2() {
        let t = tower(2, "T^2+T+1");
        let om = OmegaR::new(&t);
        let k = t.k();
        let w = om.make_differential(&t.one(), &t.zero());
        // (λ² + T² + T + 1) / (λ + 1)
        let num = t.add(&t.lambda_pow(2), &t.from_a(t.prime_data().prime().clone()));
        let den = t.add(&t.lambda(), &t.one());
        let lhs = t.lmul(w.coefficient(), &t.to_l(&den));
        assert_eq!(lhs, t.to_l(&num));
        assert!(w.is_integral());
        assert_eq!(om.make_differential(&t.zero(), &t.one()), om.d_lambda());
        let _ = k;
    }

    #[test]
    fn cartier_monomials() {
        for (q, p) in [(2, "T^2+T+1"), (3, "T^2+1"), (3, "T"), (4, "T^2+T+2")] {
            let t = tower(q, p);
            let om = OmegaR::new(&t);
            assert!(om.cartier(&om.d_lambda()).unwrap().is_zero());
            let w = om.from_coefficient(t.to_l(&t.lambda_pow(t.q() as usize - 1)));
            assert_eq!(om.cartier(&w).unwrap(), om.d_lambda(), "q={q} p={p}");
        }
    }

    #[test]
    fn dlog_is_cartier_fixed() {
        let t = tower(2, "T^2+T+1");
        let om = OmegaR::new(&t);
        let u = t.add(&t.lambda(), &t.from_a(APoly::x()));
        let w = om.dlog(&t.to_l(&u)).unwrap();
        assert!(w.is_integral());
        assert_eq!(om.cartier(&w).unwrap(), w);
    }

    #[test]
    fn reduction_examples() {
        let t = tower(2, "T^2+T+1");
        let om = OmegaR::new(&t);
        let loc = LocalExpansion::new(&t, 4);
        let f = t.residue();
        assert_eq!(om.reduce(&om.d_lambda(), &loc).unwrap().coeffs(), &[1, 0, 0, 0]);
        let w = om.from_coefficient(t.to_l(&t.lambda_pow(4)));
        assert!(om.reduce(&w, &loc).unwrap().is_zero());
        let w = om.from_coefficient(t.to_l(&t.from_a(t.prime_data().prime().clone())));
        assert_eq!(om.reduce(&w, &loc).unwrap().coeffs(), &[0, 0, 0, 1]);
        let _ = f;
    }

    #[test]
    fn one_minus_cd_examples() {
        let t = tower(2, "T^2+T+1");
        let d_lambda = LocalDifferential::from_vec(vec![1, 0, 0, 0]);
        assert_eq!(one_minus_cd(&d_lambda, &t).unwrap().coeffs(), &[1]);
        let top = LocalDifferential::from_vec(vec![0, 0, 0, 1]);
        assert_eq!(one_minus_cd(&top, &t).unwrap().coeffs(), &[t.residue().neg(1)]);
        let both = LocalDifferential::from_vec(vec![1, 0, 0, 1]);
        assert_eq!(one_minus_cd(&both, &t).unwrap().coeffs(), &[0]);
        assert!(local_cartier(&LocalDifferential::from_vec(vec![1]), &t).is_err());
    }

    #[test]
    fn filtration_and_kernel() {
        for (q, p) in [(2, "T^2+T+1"), (3, "T^2+1"), (2, "T^3+T+1")] {
            let t = tower(q, p);
            let rep = filtration_report(&t).unwrap();
            assert_eq!(rep.characters[0], 1);
            assert_eq!(rep.characters[t.degree()], 1);
            let ker = kernel_one_minus_cd(&t).unwrap();
            assert_eq!(ker.dim(), t.degree());
        }
        let t = tower(2, "T^2+T+1");
        assert_eq!(filtration_report(&t).unwrap().dims, vec![1, 2, 1]);
    }
}
