//! Two-dimensional affine toric varieties in normal form
//! `σ = cone(e_2, p e_1 - q e_2)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::ambient::AmbientPolynomial;
use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::newton::{LatticePolynomial, ToricVariety};
use crate::polyhedral::newton_polyhedron::to_local;
use crate::upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceData {
    pub p: i64,
    pub q: i64,
    pub smooth: bool,
    /// `a_2, ..., a_{n-1}` with `p/(p-q) = [[a_2, ..., a_{n-1}]]`.
    pub hj_digits: Vec<i64>,
    /// `μ_1, ..., μ_n`.
    pub generators: Vec<LatticePoint>,
    pub ambient_dim: usize,
    /// `a_i = 2` for `3 <= i <= n-2`.
    pub determinantal: bool,
}

fn validate(p: i64, q: i64) -> Result<bool> {
    if p == 1 && q == 0 {
        return Ok(true);
    }
    if !(0 < q && q < p) {
        return Err(Error::RangeError(p, q));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    Ok(false)
}

/// Hirzebruch–Jung digits of `p/(p-q)`; empty for the smooth case.
pub fn hj_expansion(p: i64, q: i64) -> Result<Vec<i64>> {
    if validate(p, q)? {
        return Ok(Vec::new());
    }
    let (mut num, mut den) = (p, p - q);
    let mut digits = Vec::new();
    loop {
        let a = Integer::div_ceil(&num, &den);
        digits.push(a);
        let rest = a * den - num;
        if rest == 0 {
            return Ok(digits);
        }
        num = den;
        den = rest;
    }
}

/// Evaluates `a_1 - 1/(a_2 - 1/(...))` exactly.
pub fn hj_value(digits: &[i64]) -> BigRational {
    let mut acc: Option<BigRational> = None;
    for &a in digits.iter().rev() {
        let a = BigRational::from_integer(BigInt::from(a));
        acc = Some(match acc {
            None => a,
            Some(x) => a - x.recip(),
        });
    }
    acc.unwrap_or_else(BigRational::zero)
}

pub fn semigroup_generators(p: i64, q: i64) -> Result<SurfaceData> {
    let smooth = validate(p, q)?;
    if smooth {
        return Ok(SurfaceData {
            p,
            q,
            smooth,
            hj_digits: Vec::new(),
            generators: vec![LatticePoint::from_i64(&[1, 0]), LatticePoint::from_i64(&[0, 1])],
            ambient_dim: 2,
            determinantal: false,
        });
    }
    let digits = hj_expansion(p, q)?;
    let mut mu = vec![[1i64, 0], [1, 1]];
    for &a in &digits {
        let n = mu.len();
        let next = [a * mu[n - 1][0] - mu[n - 2][0], a * mu[n - 1][1] - mu[n - 2][1]];
        mu.push(next);
    }
    let last = *mu.last().expect("at least two generators");
    if last != [q, p] {
        return Err(Error::InvalidInput(format!(
            "generator recursion ended at ({}, {}) instead of ({q}, {p})",
            last[0], last[1]
        )));
    }
    let n = mu.len();
    // digits[i - 2] is a_i; the tag needs a_3..a_{n-2}.
    let determinantal = (3..=n.saturating_sub(2)).all(|i| digits[i - 2] == 2);
    Ok(SurfaceData {
        p,
        q,
        smooth,
        hj_digits: digits,
        generators: mu.iter().map(|m| LatticePoint::from_i64(m)).collect(),
        ambient_dim: n,
        determinantal,
    })
}

impl SurfaceData {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        semigroup_generators(p, q)
    }

    /// The toric variety with `σ = cone(e_2, p e_1 - q e_2)`.
    pub fn variety(&self) -> Result<ToricVariety> {
        let rays = [
            LatticePoint::from_i64(&[0, 1]),
            LatticePoint::from_i64(&[self.p, -self.q]),
        ];
        ToricVariety::new(&rays, self.generators.clone())
    }

    /// Connector exponent `a_l - 2` for `2 <= l <= n-1`.
    fn connector(&self, l: usize) -> u64 {
        (self.hj_digits[l - 2] - 2) as u64
    }
}

/// A binomial `z^plus - z^minus` in ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Binomial {
    pub plus: Vec<u64>,
    pub minus: Vec<u64>,
}

impl Binomial {
    pub fn to_polynomial(&self) -> AmbientPolynomial {
        let mut p = AmbientPolynomial::new(self.plus.len());
        p.add_term(self.plus.clone(), BigRational::one());
        p.add_term(self.minus.clone(), -BigRational::one());
        p
    }
}

/// Quasiminors `z_i z_{j+1} - z_{i+1} (Π_{l=i}^{j-1} z_{l+1}^{a_{l+1}-2}) z_j`
/// for `1 <= i < j <= n-1`.
pub fn quasimatrix_equations(s: &SurfaceData) -> Vec<Binomial> {
    let n = s.ambient_dim;
    let mut out = Vec::new();
    if s.smooth || n < 3 {
        return out;
    }
    for i in 1..n {
        for j in (i + 1)..n {
            let mut plus = vec![0u64; n];
            plus[i - 1] += 1;
            plus[j] += 1;
            let mut minus = vec![0u64; n];
            minus[i] += 1;
            minus[j - 1] += 1;
            for l in i..j {
                minus[l] += s.connector(l + 1);
            }
            out.push(Binomial { plus, minus });
        }
    }
    out
}

pub fn monomial_to_lattice(exps: &[u64], s: &SurfaceData) -> Result<LatticePoint> {
    if exps.len() != s.ambient_dim {
        return Err(Error::LengthMismatch {
            expected: s.ambient_dim,
            got: exps.len(),
        });
    }
    let mut v = [BigInt::zero(), BigInt::zero()];
    for (e, g) in exps.iter().zip(&s.generators) {
        v[0] += &g.0[0] * BigInt::from(*e);
        v[1] += &g.0[1] * BigInt::from(*e);
    }
    Ok(LatticePoint(v.to_vec()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub face_id: usize,
    pub dim: usize,
    /// `z_i = t^{μ_i}` when `μ_i` lies on the face, `None` when `z_i = 0`.
    pub parametrization: Vec<Option<LatticePoint>>,
}

pub fn orbit_decomposition(s: &SurfaceData) -> Result<Vec<Orbit>> {
    let x = s.variety()?;
    Ok(x.faces
        .iter()
        .map(|f| Orbit {
            face_id: f.id,
            dim: f.dim,
            parametrization: s
                .generators
                .iter()
                .map(|g| f.contains(g).then(|| g.clone()))
                .collect(),
        })
        .collect())
}

/// Whether the support meets both rays of `σ̌`.
pub fn meets_both_rays(x: &ToricVariety, g: &LatticePolynomial) -> bool {
    x.faces.iter().filter(|f| f.dim == 1).all(|f| g.meets(f))
}

pub fn has_isolated_singularity(g: &AmbientPolynomial, s: &SurfaceData) -> Result<bool> {
    let x = s.variety()?;
    Ok(meets_both_rays(&x, &g.to_lattice(&x)?))
}

/// The ambient formulation: `g` contains a pure power of `z_1` and of `z_n`.
pub fn has_pure_end_powers(g: &AmbientPolynomial, s: &SurfaceData) -> bool {
    let n = s.ambient_dim;
    let pure = |idx: usize| {
        g.terms
            .keys()
            .any(|e| e[idx] > 0 && e.iter().enumerate().all(|(j, &k)| j == idx || k == 0))
    };
    pure(0) && pure(n - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "face", rename_all = "snake_case")]
pub enum PrepolarVerdict {
    Prepolar,
    /// `g` misses a ray of `σ̌`, so its singularity is not isolated.
    NotIsolated,
    /// `f` and `g` share a component along the orbit of the given face.
    CommonComponent(usize),
}

impl PrepolarVerdict {
    pub fn is_prepolar(self) -> bool {
        self == PrepolarVerdict::Prepolar
    }
}

pub fn is_prepolar(
    g: &AmbientPolynomial,
    f: &AmbientPolynomial,
    s: &SurfaceData,
) -> Result<PrepolarVerdict> {
    let x = s.variety()?;
    prepolar_verdict(&x, &g.to_lattice(&x)?, &f.to_lattice(&x)?)
}

/// Surface prepolarity on lattice polynomials of any 2-dimensional variety.
pub fn prepolar_verdict(
    x: &ToricVariety,
    g: &LatticePolynomial,
    f: &LatticePolynomial,
) -> Result<PrepolarVerdict> {
    if x.d != 2 {
        return Err(Error::InvalidInput("prepolarity is decided for surfaces only".into()));
    }
    if !meets_both_rays(x, g) {
        return Ok(PrepolarVerdict::NotIsolated);
    }
    for face in x.faces.iter().filter(|f| f.dim == 1) {
        if !g.meets(face) && !f.meets(face) {
            return Ok(PrepolarVerdict::CommonComponent(face.id));
        }
    }
    let full = x.full_face();
    let a = bivariate(g, full)?;
    let b = bivariate(f, full)?;
    if share_factor(&a, &b) {
        return Ok(PrepolarVerdict::CommonComponent(full.id));
    }
    Ok(PrepolarVerdict::Prepolar)
}

/// Polynomial in `(t_1, t_2)` stored as `t_2`-degree → coefficient in `t_1`.
type Bivariate = Vec<UPoly>;

fn bivariate(p: &LatticePolynomial, face: &crate::polyhedral::Face) -> Result<Bivariate> {
    let mut terms: BTreeMap<(i64, i64), BigRational> = BTreeMap::new();
    for (v, c) in &p.terms {
        let l = to_local(face, v)?;
        let e0 = i64::try_from(&l[0]).map_err(|_| Error::InvalidInput("exponent too large".into()))?;
        let e1 = i64::try_from(&l[1]).map_err(|_| Error::InvalidInput("exponent too large".into()))?;
        *terms.entry((e0, e1)).or_insert_with(BigRational::zero) += c;
    }
    terms.retain(|_, c| !c.is_zero());
    let min0 = terms.keys().map(|e| e.0).min().unwrap_or(0);
    let min1 = terms.keys().map(|e| e.1).min().unwrap_or(0);
    let deg1 = terms.keys().map(|e| e.1 - min1).max().unwrap_or(0) as usize;
    let mut rows: Vec<Vec<BigRational>> = vec![Vec::new(); deg1 + 1];
    for ((e0, e1), c) in terms {
        let row = &mut rows[(e1 - min1) as usize];
        let k = (e0 - min0) as usize;
        if row.len() <= k {
            row.resize(k + 1, BigRational::zero());
        }
        row[k] = c;
    }
    Ok(rows.into_iter().map(UPoly::new).collect())
}

fn content(p: &Bivariate) -> UPoly {
    p.iter().fold(UPoly::zero(), |g, c| g.gcd(c))
}

fn specialize(p: &Bivariate, t1: &BigRational) -> UPoly {
    UPoly::new(p.iter().map(|c| c.eval(t1)).collect())
}

/// True when the two polynomials have a nonconstant common factor.
fn share_factor(a: &Bivariate, b: &Bivariate) -> bool {
    if content(a).gcd(&content(b)).degree().unwrap_or(0) > 0 {
        return true;
    }
    let da = a.len() - 1;
    let db = b.len() - 1;
    if da == 0 || db == 0 {
        return false;
    }
    // A factor of positive t_2-degree makes the t_2-resultant vanish; that
    // resultant has t_1-degree at most `bound`, so `bound + 1` nonvanishing
    // checks at points with nonzero leading coefficients decide it.
    let deg_t1 = |p: &Bivariate| p.iter().filter_map(UPoly::degree).max().unwrap_or(0);
    let bound = deg_t1(a) * db + deg_t1(b) * da;
    let mut good = 0;
    let mut t = 0i64;
    while good <= bound {
        t += 1;
        let pt = BigRational::from_integer(BigInt::from(t));
        if a[da].eval(&pt).is_zero() || b[db].eval(&pt).is_zero() {
            continue;
        }
        good += 1;
        let g = specialize(a, &pt).gcd(&specialize(b, &pt));
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb(n: usize, terms: &[(&[u64], i64)]) -> AmbientPolynomial {
        let mut p = AmbientPolynomial::new(n);
        for (e, c) in terms {
            p.add_term(e.to_vec(), BigRational::from_integer(BigInt::from(*c)));
        }
        p
    }

    #[test]
    fn hj_examples() {
        assert_eq!(hj_expansion(2, 1).unwrap(), vec![2]);
        assert_eq!(hj_expansion(3, 1).unwrap(), vec![2, 2]);
        assert_eq!(hj_expansion(5, 2).unwrap(), vec![2, 3]);
        assert_eq!(hj_value(&[2, 3]), BigRational::new(5.into(), 3.into()));
        assert_eq!(hj_expansion(4, 2), Err(Error::NotCoprime(4, 2)));
        assert_eq!(hj_expansion(2, 3), Err(Error::RangeError(2, 3)));
    }

    #[test]
    fn generator_examples() {
        let s = semigroup_generators(2, 1).unwrap();
        assert_eq!(s.generators, vec![
            LatticePoint::from_i64(&[1, 0]),
            LatticePoint::from_i64(&[1, 1]),
            LatticePoint::from_i64(&[1, 2])
        ]);
        let s = semigroup_generators(5, 2).unwrap();
        assert_eq!(s.generators.last().unwrap(), &LatticePoint::from_i64(&[2, 5]));
        assert_eq!(s.ambient_dim, 4);
        let s = semigroup_generators(4, 1).unwrap();
        assert_eq!(s.ambient_dim, 5);
        assert!(s.determinantal);
        let smooth = semigroup_generators(1, 0).unwrap();
        assert!(smooth.smooth);
        assert!(quasimatrix_equations(&smooth).is_empty());
    }

    #[test]
    fn quadric_cone_equation() {
        let s = semigroup_generators(2, 1).unwrap();
        let eqs = quasimatrix_equations(&s);
        assert_eq!(eqs, vec![Binomial { plus: vec![1, 0, 1], minus: vec![0, 2, 0] }]);
        let s = semigroup_generators(5, 2).unwrap();
        let eqs = quasimatrix_equations(&s);
        assert_eq!(eqs.len(), 3);
        assert!(eqs.contains(&Binomial { plus: vec![0, 1, 0, 1], minus: vec![0, 0, 3, 0] }));
    }

    #[test]
    fn isolated_and_prepolar_examples() {
        let s = semigroup_generators(2, 1).unwrap();
        let g = amb(3, &[(&[1, 0, 0], 1), (&[0, 0, 2], -1)]);
        let f = amb(3, &[(&[0, 2, 0], 1), (&[3, 0, 0], -1)]);
        assert!(has_isolated_singularity(&g, &s).unwrap());
        assert!(!has_isolated_singularity(&f, &s).unwrap());
        assert_eq!(is_prepolar(&g, &f, &s).unwrap(), PrepolarVerdict::Prepolar);
        assert_eq!(is_prepolar(&f, &f, &s).unwrap(), PrepolarVerdict::NotIsolated);
        let z2 = amb(3, &[(&[0, 1, 0], 1)]);
        assert!(!is_prepolar(&z2, &f, &s).unwrap().is_prepolar());
        let ends = amb(3, &[(&[1, 0, 0], 1), (&[0, 0, 1], 1)]);
        assert!(has_isolated_singularity(&ends, &s).unwrap());
    }

    #[test]
    fn shared_factor_on_the_dense_orbit() {
        let s = semigroup_generators(2, 1).unwrap();
        let g = amb(3, &[(&[1, 0, 0], 1), (&[0, 0, 1], 1)]);
        // f = g * z2 shares the component g = 0.
        let f = amb(3, &[(&[1, 1, 0], 1), (&[0, 1, 1], 1)]);
        assert_eq!(is_prepolar(&g, &f, &s).unwrap(), PrepolarVerdict::CommonComponent(3));
    }

    #[test]
    fn orbits_of_the_quadric_cone() {
        let s = semigroup_generators(2, 1).unwrap();
        let o = orbit_decomposition(&s).unwrap();
        assert_eq!(o.iter().map(|x| x.dim).collect::<Vec<_>>(), vec![0, 1, 1, 2]);
        assert_eq!(o[1].parametrization, vec![Some(LatticePoint::from_i64(&[1, 0])), None, None]);
        assert_eq!(o[2].parametrization, vec![None, None, Some(LatticePoint::from_i64(&[1, 2]))]);
    }
}
