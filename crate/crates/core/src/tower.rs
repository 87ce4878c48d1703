//! The cyclotomic field `L = K(λ)`, its order `R = A[λ]`, and the Galois
//! group `Δ` acting through the Teichmüller character.

use std::sync::{Arc, OnceLock};

use crate::amat::bareiss_solve;
use crate::carlitz::{carlitz_action, torsion_polynomial};
use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::poly::{APoly, Poly};
use crate::ratfunc::RatFunc;

/// Default ceiling on `[L:K] = q^d - 1`.
pub const DEFAULT_MAX_DEGREE: u64 = 64;

/// A base field `F_q`, a monic irreducible `p` of degree `d`, and `A/p`.
#[derive(Clone, Debug)]
pub struct PrimeData {
    k: Arc<Gf>,
    prime: APoly,
    residue: Arc<Gf>,
}

impl PrimeData {
    pub fn new(k: Arc<Gf>, prime: APoly) -> Result<Self> {
        let shown = prime.format("T");
        if prime.deg().unwrap_or(0) == 0 || !prime.is_monic() {
            return Err(Error::NotIrreducible(format!("{shown} (must be monic of positive degree)")));
        }
        if !prime.is_irreducible(&k) {
            return Err(Error::NotIrreducible(shown));
        }
        let residue = Arc::new(Gf::extension(&k, prime.coeffs())?);
        Ok(PrimeData { k, prime, residue })
    }

    pub fn parse(q: u64, text: &str) -> Result<Self> {
        let k = Arc::new(Gf::new(q)?);
        let prime = Poly::parse(text, 'T', &k)?;
        Self::new(k, prime)
    }

    pub fn k(&self) -> &Gf {
        &self.k
    }

    pub fn k_arc(&self) -> Arc<Gf> {
        self.k.clone()
    }

    pub fn q(&self) -> u32 {
        self.k.order()
    }

    pub fn p(&self) -> u32 {
        self.k.characteristic()
    }

    pub fn prime(&self) -> &APoly {
        &self.prime
    }

    pub fn d(&self) -> usize {
        self.prime.deg().unwrap()
    }

    /// `q^d - 1`, the order of `Δ`.
    pub fn n(&self) -> usize {
        self.residue.order() as usize - 1
    }

    /// The residue field `A/p`.
    pub fn residue(&self) -> &Gf {
        &self.residue
    }

    pub fn residue_arc(&self) -> Arc<Gf> {
        self.residue.clone()
    }

    pub fn reduce(&self, a: &APoly) -> Elem {
        a.rem(&self.prime, &self.k).code(self.q()) as Elem
    }

    pub fn lift(&self, c: Elem) -> APoly {
        APoly::from_code(c as u64, self.q())
    }
}

/// Element of `R` in the basis `λ^0, ..., λ^(n-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct REl(Vec<APoly>);

impl REl {
    pub fn coords(&self) -> &[APoly] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// Largest `T`-degree among the coordinates.
    pub fn height(&self) -> usize {
        self.0.iter().filter_map(|c| c.deg()).max().unwrap_or(0)
    }
}

/// Element of `L` as `num / den` with `den` monic in `A`, coprime to the
/// content of `num`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LEl {
    num: REl,
    den: APoly,
}

impl LEl {
    pub fn num(&self) -> &REl {
        &self.num
    }

    pub fn den(&self) -> &APoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// `σ_a` for a unit `a` of `A/p`, recorded by its discrete log to base `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaloisElement {
    log: usize,
}

impl GaloisElement {
    /// Exponent `k` with `σ = δ0^k`.
    pub fn log(&self) -> usize {
        self.log
    }
}

#[derive(Debug)]
pub struct FieldTower {
    pd: PrimeData,
    f: Vec<APoly>,
    n: usize,
    gen_code: Elem,
    images: Vec<REl>,
    f_x: REl,
    f_t: REl,
    f_t_inv: OnceLock<LEl>,
    pth_inverse: OnceLock<(APoly, Vec<Vec<APoly>>)>,
}

impl FieldTower {
    pub fn new(pd: PrimeData) -> Result<Self> {
        Self::with_limit(pd, DEFAULT_MAX_DEGREE)
    }

    pub fn with_limit(pd: PrimeData, max_degree: u64) -> Result<Self> {
        let n = pd.n();
        if n as u64 > max_degree {
            return Err(Error::SizeBound { what: "q^d - 1", value: n as u64, limit: max_degree });
        }
        if n == 1 {
            return Err(Error::Degenerate("q^d - 1 = 1, so L = K and Δ is trivial".into()));
        }
        let k = pd.k();
        let f = torsion_polynomial(pd.prime(), k)?;
        let f_x = REl((1..=n).map(|i| f[i].scale(k.from_int(i as i64), k)).collect());
        let f_t = REl(f[..n].iter().map(|c| c.derivative(k)).collect());
        let gen_code = pd.residue().generator();
        let mut tower = FieldTower {
            pd,
            f,
            n,
            gen_code,
            images: Vec::new(),
            f_x,
            f_t,
            f_t_inv: OnceLock::new(),
            pth_inverse: OnceLock::new(),
        };
        tower.images = (0..n)
            .map(|e| {
                let a = tower.pd.lift(tower.pd.residue().exp(e as u64));
                tower.carlitz_at_lambda(&a)
            })
            .collect();
        tower.check_discriminant()?;
        Ok(tower)
    }

    fn check_discriminant(&self) -> Result<()> {
        let disc = self.norm(&self.f_x);
        let v = if disc.is_zero() { usize::MAX } else { disc.valuation(self.pd.prime(), self.k()) };
        if v != self.n - 1 {
            return Err(Error::OracleMismatch(format!(
                "discriminant valuation {v} at p, expected {}",
                self.n - 1
            )));
        }
        Ok(())
    }

    pub fn prime_data(&self) -> &PrimeData {
        &self.pd
    }

    pub fn k(&self) -> &Gf {
        self.pd.k()
    }

    pub fn q(&self) -> u32 {
        self.pd.q()
    }

    pub fn p(&self) -> u32 {
        self.pd.p()
    }

    pub fn d(&self) -> usize {
        self.pd.d()
    }

    pub fn residue(&self) -> &Gf {
        self.pd.residue()
    }

    /// `[L:K] = q^d - 1`.
    pub fn degree(&self) -> usize {
        self.n
    }

    /// Coefficients of the torsion polynomial, low to high.
    pub fn torsion_poly(&self) -> &[APoly] {
        &self.f
    }

    /// `∂f/∂x` evaluated at `λ`.
    pub fn f_x(&self) -> &REl {
        &self.f_x
    }

    /// `∂f/∂T` evaluated at `λ`.
    pub fn f_t(&self) -> &REl {
        &self.f_t
    }

    pub fn f_t_inverse(&self) -> &LEl {
        self.f_t_inv.get_or_init(|| self.inverse(&self.f_t).expect("∂f/∂T is nonzero"))
    }

    // ---- R arithmetic ----

    pub fn zero(&self) -> REl {
        REl(vec![APoly::zero(); self.n])
    }

    pub fn one(&self) -> REl {
        self.from_a(APoly::one())
    }

    pub fn from_a(&self, a: APoly) -> REl {
        let mut v = vec![APoly::zero(); self.n];
        v[0] = a;
        REl(v)
    }

    pub fn lambda(&self) -> REl {
        self.lambda_pow(1)
    }

    pub fn lambda_pow(&self, e: usize) -> REl {
        if e < self.n {
            let mut v = vec![APoly::zero(); self.n];
            v[e] = APoly::one();
            REl(v)
        } else {
            let mut m = vec![APoly::zero(); e + 1];
            m[e] = APoly::one();
            self.from_xpoly(&m)
        }
    }

    /// Builds an element from coordinates, which must have length `n`.
    pub fn from_coords(&self, coords: Vec<APoly>) -> REl {
        assert_eq!(coords.len(), self.n, "wrong number of coordinates");
        REl(coords)
    }

    /// Reduces a polynomial in `x` (coefficients low to high) modulo `f`.
    pub fn from_xpoly(&self, coeffs: &[APoly]) -> REl {
        let k = self.k();
        let mut v: Vec<APoly> = coeffs.to_vec();
        let n = self.n;
        for top in (n..v.len()).rev() {
            let c = std::mem::take(&mut v[top]);
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                if !self.f[i].is_zero() {
                    let t = c.mul(&self.f[i], k);
                    v[top - n + i] = v[top - n + i].sub(&t, k);
                }
            }
        }
        v.resize(n, APoly::zero());
        REl(v)
    }

    pub fn add(&self, a: &REl, b: &REl) -> REl {
        let k = self.k();
        REl(a.0.iter().zip(&b.0).map(|(x, y)| x.add(y, k)).collect())
    }

    pub fn sub(&self, a: &REl, b: &REl) -> REl {
        let k = self.k();
        REl(a.0.iter().zip(&b.0).map(|(x, y)| x.sub(y, k)).collect())
    }

    pub fn neg(&self, a: &REl) -> REl {
        let k = self.k();
        REl(a.0.iter().map(|x| x.neg(k)).collect())
    }

    pub fn scale(&self, c: &APoly, a: &REl) -> REl {
        let k = self.k();
        REl(a.0.iter().map(|x| x.mul(c, k)).collect())
    }

    pub fn mul(&self, a: &REl, b: &REl) -> REl {
        let k = self.k();
        let mut v = vec![APoly::zero(); 2 * self.n - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j].add_assign(&x.mul(y, k), k);
                }
            }
        }
        self.from_xpoly(&v)
    }

    pub fn pow(&self, a: &REl, mut e: u64) -> REl {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    pub fn mul_lambda(&self, a: &REl) -> REl {
        let mut v = Vec::with_capacity(self.n + 1);
        v.push(APoly::zero());
        v.extend(a.0.iter().cloned());
        self.from_xpoly(&v)
    }

    /// Evaluates `Σ c_i x^i` at `s ∈ R`.
    pub fn eval_xpoly(&self, coeffs: &[APoly], s: &REl) -> REl {
        let mut acc = self.zero();
        for c in coeffs.iter().rev() {
            acc = self.mul(&acc, s);
            acc.0[0].add_assign(c, self.k());
        }
        acc
    }

    /// Rows of the matrix of multiplication by `b` in the basis `λ^i`.
    pub fn mult_matrix(&self, b: &REl) -> Vec<Vec<APoly>> {
        let mut cols = Vec::with_capacity(self.n);
        let mut cur = b.clone();
        for j in 0..self.n {
            if j > 0 {
                cur = self.mul_lambda(&cur);
            }
            cols.push(cur.0.clone());
        }
        (0..self.n).map(|i| (0..self.n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// `N_{L/K}(b)`.
    pub fn norm(&self, b: &REl) -> APoly {
        crate::amat::det(&self.mult_matrix(b), self.k())
    }

    pub fn is_unit(&self, b: &REl) -> bool {
        self.norm(b).deg() == Some(0)
    }

    /// `b^{-1}` in `L`; `None` for zero.
    pub fn inverse(&self, b: &REl) -> Option<LEl> {
        let e0 = self.one().0;
        let ff = bareiss_solve(&self.mult_matrix(b), &[e0], self.k())?;
        let num = REl(ff.solutions.into_iter().next().unwrap());
        Some(self.frac(num, ff.scale))
    }

    /// `b^{-1}` in `R` when `b` is a unit.
    pub fn unit_inverse(&self, b: &REl) -> Result<REl> {
        let inv = self.inverse(b).ok_or(Error::NotAUnit)?;
        self.to_r(&inv).ok_or(Error::NotAUnit)
    }

    /// Exact division by an element of `A`, when possible.
    pub fn div_a(&self, b: &REl, c: &APoly) -> Option<REl> {
        let k = self.k();
        b.0.iter().map(|x| x.div_exact(c, k)).collect::<Option<Vec<_>>>().map(REl)
    }

    // ---- L arithmetic ----

    pub fn frac(&self, num: REl, den: APoly) -> LEl {
        let k = self.k();
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return LEl { num, den: APoly::one() };
        }
        let mut g = den.clone();
        for c in &num.0 {
            if g.deg() == Some(0) {
                break;
            }
            g = g.gcd(c, k);
        }
        let inv_lc = k.inv(den.lc());
        let g = g.monic(k);
        let num = self.div_a(&num, &g).unwrap();
        let den = den.div_exact(&g, k).unwrap();
        LEl { num: self.scale(&APoly::constant(inv_lc), &num), den: den.scale(inv_lc, k) }
    }

    pub fn to_l(&self, r: &REl) -> LEl {
        LEl { num: r.clone(), den: APoly::one() }
    }

    /// The element as a member of `R`, if integral.
    pub fn to_r(&self, x: &LEl) -> Option<REl> {
        if x.den.is_one() {
            Some(x.num.clone())
        } else {
            None
        }
    }

    pub fn ladd(&self, a: &LEl, b: &LEl) -> LEl {
        let k = self.k();
        let num = self.add(&self.scale(&b.den, &a.num), &self.scale(&a.den, &b.num));
        self.frac(num, a.den.mul(&b.den, k))
    }

    pub fn lsub(&self, a: &LEl, b: &LEl) -> LEl {
        self.ladd(a, &self.lneg(b))
    }

    pub fn lneg(&self, a: &LEl) -> LEl {
        LEl { num: self.neg(&a.num), den: a.den.clone() }
    }

    pub fn lmul(&self, a: &LEl, b: &LEl) -> LEl {
        self.frac(self.mul(&a.num, &b.num), a.den.mul(&b.den, self.k()))
    }

    pub fn lscale(&self, c: &RatFunc, a: &LEl) -> LEl {
        let k = self.k();
        self.frac(self.scale(c.num(), &a.num), a.den.mul(c.den(), k))
    }

    pub fn linv(&self, a: &LEl) -> Option<LEl> {
        let inv = self.inverse(&a.num)?;
        Some(self.frac(self.scale(&a.den, &inv.num), inv.den))
    }

    pub fn lpow(&self, a: &LEl, e: u64) -> LEl {
        self.frac(self.pow(&a.num, e), a.den.pow(e, self.k()))
    }

    // ---- Galois action ----

    fn carlitz_at_lambda(&self, a: &APoly) -> REl {
        let phi = carlitz_action(a, self.k());
        let q = self.q() as u64;
        phi.eval_with(
            &self.lambda(),
            |c, x| self.scale(c, x),
            |x| self.pow(x, q),
            |x, y| self.add(x, y),
            self.zero(),
        )
    }

    /// `φ_a(λ)` reduced into `R`, for any `a ∈ A`.
    pub fn carlitz_lambda(&self, a: &APoly) -> REl {
        self.carlitz_at_lambda(a)
    }

    /// The generator `δ0 = σ_g` of `Δ`.
    pub fn delta0(&self) -> GaloisElement {
        GaloisElement { log: 1 % self.n }
    }

    pub fn delta_pow(&self, e: usize) -> GaloisElement {
        GaloisElement { log: e % self.n }
    }

    /// The residue code of the generator `g` of `(A/p)^×`.
    pub fn generator_code(&self) -> Elem {
        self.gen_code
    }

    pub fn galois(&self, a: &APoly) -> Result<GaloisElement> {
        let c = self.pd.reduce(a);
        let log = self
            .residue()
            .log(c)
            .ok_or_else(|| Error::NotInvertible(a.format("T")))?;
        Ok(GaloisElement { log: log as usize })
    }

    pub fn compose(&self, s: GaloisElement, t: GaloisElement) -> GaloisElement {
        GaloisElement { log: (s.log + t.log) % self.n }
    }

    /// `ω(σ_a) = a mod p`.
    pub fn teichmuller(&self, s: GaloisElement) -> Elem {
        self.residue().exp(s.log as u64)
    }

    /// `σ(λ)`.
    pub fn galois_image(&self, s: GaloisElement) -> &REl {
        &self.images[s.log]
    }

    pub fn apply(&self, s: GaloisElement, x: &REl) -> REl {
        if s.log == 0 {
            return x.clone();
        }
        self.eval_xpoly(&x.0, &self.images[s.log])
    }

    pub fn apply_l(&self, s: GaloisElement, x: &LEl) -> LEl {
        LEl { num: self.apply(s, &x.num), den: x.den.clone() }
    }

    // ---- p-th powers ----

    fn pth_system(&self) -> &(APoly, Vec<Vec<APoly>>) {
        self.pth_inverse.get_or_init(|| {
            let p = self.p() as usize;
            let cols: Vec<Vec<APoly>> = (0..self.n).map(|i| self.lambda_pow(p * i).0).collect();
            let rows: Vec<Vec<APoly>> =
                (0..self.n).map(|i| (0..self.n).map(|j| cols[j][i].clone()).collect()).collect();
            let rhs: Vec<Vec<APoly>> = (0..self.n).map(|i| self.lambda_pow(i).0).collect();
            let ff = bareiss_solve(&rows, &rhs, self.k()).expect("λ^p generates L");
            (ff.scale, ff.solutions)
        })
    }

    /// The unique `y ∈ L` with `y^p = x`, if it exists.
    pub fn pth_root(&self, x: &LEl) -> Option<LEl> {
        let k = self.k();
        let p = self.p() as u64;
        if x.is_zero() {
            return Some(x.clone());
        }
        // x = X/D is a p-th power iff X D^(p-1) is one.
        let dp = x.den.pow(p - 1, k);
        let big = self.scale(&dp, &x.num);
        let (scale, inv_cols) = self.pth_system();
        // z = M^{-1} big where M has columns λ^{p i}; inverse columns are
        // the images of the basis vectors λ^i.
        let mut z = vec![APoly::zero(); self.n];
        for (i, c) in big.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, zj) in z.iter_mut().enumerate() {
                zj.add_assign(&c.mul(&inv_cols[i][j], k), k);
            }
        }
        let mut ys = Vec::with_capacity(self.n);
        for zi in z {
            let r = RatFunc::new(zi, scale.clone(), k).pth_root(k)?;
            ys.push(r);
        }
        let den = ys.iter().fold(APoly::one(), |acc, r| {
            let g = acc.gcd(r.den(), k);
            acc.mul(&r.den().div_exact(&g, k).unwrap(), k)
        });
        let num: Vec<APoly> = ys
            .iter()
            .map(|r| r.num().mul(&den.div_exact(r.den(), k).unwrap(), k))
            .collect();
        let y_big = self.frac(REl(num), den);
        Some(self.frac(y_big.num, y_big.den.mul(&x.den, k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(q: u64, p: &str) -> FieldTower {
        FieldTower::new(PrimeData::parse(q, p).unwrap()).unwrap()
    }

    #[test]
    fn rejects_reducible_and_degenerate() {
        assert!(matches!(PrimeData::parse(2, "T^2"), Err(Error::NotIrreducible(_))));
        let pd = PrimeData::parse(2, "T").unwrap();
        assert!(matches!(FieldTower::new(pd), Err(Error::Degenerate(_))));
        let pd = PrimeData::parse(2, "T^4+T+1").unwrap();
        assert!(matches!(FieldTower::with_limit(pd, 10), Err(Error::SizeBound { .. })));
    }

    #[test]
    fn lambda_relation_for_prime_t() {
        let t = tower(5, "T");
        assert_eq!(t.degree(), 4);
        let lam4 = t.pow(&t.lambda(), 4);
        let k = t.k();
        assert_eq!(lam4, t.from_a(Poly::parse("T", 'T', k).unwrap().neg(k)));
    }

    #[test]
    fn sigma_t_over_f2() {
        let t = tower(2, "T^2+T+1");
        let k = t.k();
        let s = t.galois(&Poly::parse("T", 'T', k).unwrap()).unwrap();
        let want = t.add(&t.lambda_pow(2), &t.scale(&APoly::x(), &t.lambda()));
        assert_eq!(t.galois_image(s), &want);
        assert_eq!(t.teichmuller(s), 2);
    }

    #[test]
    fn inverse_and_norm() {
        let t = tower(3, "T^2+1");
        let k = t.k();
        let b = t.add(&t.lambda(), &t.from_a(Poly::parse("T+2", 'T', k).unwrap()));
        let inv = t.inverse(&b).unwrap();
        let prod = t.lmul(&t.to_l(&b), &inv);
        assert_eq!(prod, t.to_l(&t.one()));
        // The norm of λ is ± the constant term of f.
        let nl = t.norm(&t.lambda());
        assert!(nl == t.torsion_poly()[0] || nl == t.torsion_poly()[0].neg(k));
    }

    #[test]
    fn pth_roots() {
        let t = tower(2, "T^2+T+1");
        let y = t.add(&t.lambda(), &t.from_a(APoly::x()));
        let sq = t.to_l(&t.mul(&y, &y));
        assert_eq!(t.pth_root(&sq), Some(t.to_l(&y)));
        assert_eq!(t.pth_root(&t.to_l(&t.lambda())), None);
        assert_eq!(t.pth_root(&t.to_l(&t.from_a(APoly::x()))), None);
        let frac = t.frac(y.clone(), APoly::x().add(&APoly::one(), t.k()));
        let f2 = t.lmul(&frac, &frac);
        assert_eq!(t.pth_root(&f2), Some(frac));
    }
}
