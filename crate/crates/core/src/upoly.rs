//! Small exact polynomial toolkit over `Q`: univariate arithmetic, gcd and
//! rational roots, plus Laurent polynomials restricted to lines.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Univariate polynomial, coefficients from degree 0 upwards, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly(pub Vec<BigRational>);

impl UPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: BigRational) -> Self {
        UPoly::new(vec![c])
    }

    /// `a + b t`.
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        UPoly::new(vec![a, b])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let c = (0..n)
            .map(|i| {
                let a = self.0.get(i).cloned().unwrap_or_else(BigRational::zero);
                let b = o.0.get(i).cloned().unwrap_or_else(BigRational::zero);
                a + b
            })
            .collect();
        UPoly::new(c)
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }

    pub fn scale(&self, k: &BigRational) -> UPoly {
        UPoly::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u64) -> UPoly {
        let mut out = UPoly::constant(BigRational::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.lead().expect("nonzero").clone();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = &r[k + dd] / &lead;
            if !coef.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[k + j] -= &coef * dc;
                }
            }
            q[k] = coef;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn monic(&self) -> UPoly {
        match self.lead() {
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
            None => UPoly::zero(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Removes every factor `(t - r)` from `self`.
    pub fn strip_root(&self, r: &BigRational) -> UPoly {
        let lin = UPoly::linear(-r.clone(), BigRational::one());
        let mut p = self.clone();
        while !p.is_zero() && p.degree() > Some(0) && p.eval(r).is_zero() {
            p = p.div_rem(&lin).0;
        }
        p
    }

    /// Distinct rational roots in increasing order. The search gives up
    /// (returning what it found) when the integer coefficients are too
    /// large to enumerate divisors.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let mut roots = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let mut p = self.clone();
        if p.0[0].is_zero() {
            roots.push(BigRational::zero());
            p = p.strip_root(&BigRational::zero());
        }
        let ints = p.integer_coefficients();
        let (Some(c0), Some(cn)) = (ints.first(), ints.last()) else {
            return roots;
        };
        let (Some(ps), Some(qs)) = (divisors(c0), divisors(cn)) else {
            return roots;
        };
        let mut cands = Vec::new();
        for a in &ps {
            for b in &qs {
                let r = BigRational::new(a.clone(), b.clone());
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands {
            if p.eval(&r).is_zero() {
                roots.push(r);
            }
        }
        roots.sort();
        roots
    }

    /// Primitive integer multiple of the polynomial.
    pub fn integer_coefficients(&self) -> Vec<BigInt> {
        let den = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * &den).to_integer()).collect();
        crate::lattice::make_primitive(ints)
    }
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let s = n.sqrt();
    for d in 1..=s {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d != n / d {
                out.push(BigInt::from(n / d));
            }
        }
    }
    Some(out)
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn det(m: &[Vec<UPoly>]) -> UPoly {
    match m.len() {
        0 => UPoly::constant(BigRational::one()),
        1 => m[0][0].clone(),
        n => {
            let mut acc = UPoly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<UPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].mul(&det(&minor));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// Laurent polynomial in `nvars` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<i64>, BigRational>,
}

impl MPoly {
    pub fn new(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, exp: Vec<i64>, c: BigRational) {
        let entry = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *entry += c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    /// Multiplies by the monomial making every exponent nonnegative with
    /// each variable's minimal exponent equal to zero.
    pub fn shifted(&self) -> MPoly {
        let mut mins = vec![i64::MAX; self.nvars];
        for e in self.terms.keys() {
            for (m, x) in mins.iter_mut().zip(e) {
                *m = (*m).min(*x);
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(&mins).map(|(x, m)| x - m).collect(), c.clone()))
            .collect();
        MPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Partial derivative of a polynomial with nonnegative exponents.
    pub fn partial(&self, i: usize) -> MPoly {
        let mut out = MPoly::new(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * BigRational::from_integer(BigInt::from(e[i])));
            }
        }
        out
    }

    /// Restriction to the line `y = a + t b`; exponents must be nonnegative.
    pub fn on_line(&self, a: &[BigRational], b: &[BigRational]) -> UPoly {
        let lines: Vec<UPoly> = a
            .iter()
            .zip(b)
            .map(|(x, y)| UPoly::linear(x.clone(), y.clone()))
            .collect();
        let mut acc = UPoly::zero();
        for (e, c) in &self.terms {
            let mut term = UPoly::constant(c.clone());
            for (l, &k) in lines.iter().zip(e) {
                term = term.mul(&l.pow(k as u64));
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn eval(&self, y: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in y.iter().zip(e) {
                t *= if k >= 0 {
                    num_traits::pow(v.clone(), k as usize)
                } else {
                    num_traits::pow(v.recip(), (-k) as usize)
                };
            }
            acc += t;
        }
        acc
    }
}
