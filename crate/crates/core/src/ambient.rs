//! Polynomials in the ambient coordinates `z_1, ..., z_n` of an embedded
//! toric variety, before they are pushed to the lattice.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::newton::{LatticePolynomial, ToricVariety};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientPolynomial {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u64>, BigRational>,
}

impl AmbientPolynomial {
    pub fn new(nvars: usize) -> Self {
        AmbientPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, exps: Vec<u64>, c: BigRational) {
        let e = self.terms.entry(exps.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &AmbientPolynomial) -> AmbientPolynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> AmbientPolynomial {
        let mut out = AmbientPolynomial::new(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    /// Pushes every monomial to its lattice point through the generators.
    pub fn to_lattice(&self, x: &ToricVariety) -> Result<LatticePolynomial> {
        let mut p = LatticePolynomial::new();
        for (e, c) in &self.terms {
            p.add_term(x.monomial(e)?, c.clone());
        }
        Ok(p)
    }

    /// Terms in graded-lex order, highest first.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u64>, &BigRational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| grlex(b.0, a.0));
        t
    }
}

fn grlex(a: &[u64], b: &[u64]) -> Ordering {
    let da: u64 = a.iter().sum();
    let db: u64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl fmt::Display for AmbientPolynomial {
    /// Canonical form: graded-lex descending, explicit signs, `z1..zn`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| {
                    if k == 1 {
                        format!("z{}", j + 1)
                    } else {
                        format!("z{}^{}", j + 1, k)
                    }
                })
                .collect();
            let coeff = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            if vars.is_empty() {
                write!(f, "{coeff}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
