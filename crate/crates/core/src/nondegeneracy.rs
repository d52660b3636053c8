//! Randomized search for degeneracy witnesses.
//!
//! For every face `Δ` met by the function and every compact face of the
//! product polyhedron `Γ₊(f_Δ) ∩ Δ`, the `u`-parts of the components are
//! rewritten as Laurent polynomials on the torus of the lattice spanned by
//! their exponent differences. A common zero at which the Jacobian drops
//! rank is searched exactly when that torus is one-dimensional and along
//! random rational lines otherwise. Finding nothing is not a certificate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::lattice::{
    combinations, dot, right_inverse, saturation, solve_left, sub, LatticePoint,
};
use crate::newton::{fmt_rational, random_rational, restricted_polyhedron, CompleteIntersection, ToricVariety};
use crate::polyhedral::newton_polyhedron::to_local;
use crate::polyhedral::Face;
use crate::upoly::{det, MPoly, UPoly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessPoint {
    /// Coordinates on the torus of the face, dual to the basis of `M(S ∩ Δ)`.
    Rational { coords: Vec<String> },
    /// A root of `polynomial` in `t`, placed on the line `base + t * direction`
    /// in the coordinates `y_k = x^{b_k}` of the listed monomials.
    Algebraic {
        monomials: Vec<LatticePoint>,
        base: Vec<String>,
        direction: Vec<String>,
        polynomial: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub face_id: usize,
    pub u: LatticePoint,
    pub point: WitnessPoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    NoWitnessFound,
    DegenerateWitness(Witness),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeuristicReport {
    pub seed: u64,
    pub trials: u32,
    pub cases_checked: usize,
    pub result: Verdict,
}

impl HeuristicReport {
    pub fn is_degenerate(&self) -> bool {
        matches!(self.result, Verdict::DegenerateWitness(_))
    }
}

/// Deterministic per-case seed derived from the user seed.
pub(crate) fn mix_seed(seed: u64, parts: &[u64]) -> u64 {
    let mut z = seed;
    for &p in parts {
        z = z.wrapping_add(p.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
    }
    z
}

pub fn nondegeneracy_heuristic(
    x: &ToricVariety,
    ci: &CompleteIntersection,
    trials: u32,
    seed: u64,
) -> Result<HeuristicReport> {
    let trials = trials.max(1);
    let k = ci.k();
    let mut cases = 0;
    for face in x.faces.iter().filter(|fc| fc.dim > 0 && ci.function().meets(fc)) {
        let comps: Vec<usize> = (0..k - 1)
            .filter(|&j| ci.components[j].meets(face))
            .chain(std::iter::once(k - 1))
            .collect();
        let polys: Vec<Vec<(Vec<BigInt>, BigRational)>> = comps
            .iter()
            .map(|&j| local_terms(&ci.components[j], face))
            .collect::<Result<_>>()?;
        let mut product = restricted_polyhedron(&ci.components[comps[0]], face)?;
        for &j in &comps[1..] {
            product = product.minkowski_sum(&restricted_polyhedron(&ci.components[j], face)?)?;
        }
        for (case, (_, u)) in product.all_compact_faces().into_iter().enumerate() {
            cases += 1;
            let parts: Vec<Vec<(Vec<BigInt>, BigRational)>> =
                polys.iter().map(|p| initial_part(p, &u)).collect();
            let case_seed = mix_seed(seed, &[face.id as u64, case as u64]);
            if let Some(point) = search_case(&parts, face.dim, trials, case_seed) {
                return Ok(HeuristicReport {
                    seed,
                    trials,
                    cases_checked: cases,
                    result: Verdict::DegenerateWitness(Witness {
                        face_id: face.id,
                        u: LatticePoint(u),
                        point,
                    }),
                });
            }
        }
    }
    Ok(HeuristicReport {
        seed,
        trials,
        cases_checked: cases,
        result: Verdict::NoWitnessFound,
    })
}

fn local_terms(
    p: &crate::newton::LatticePolynomial,
    face: &Face,
) -> Result<Vec<(Vec<BigInt>, BigRational)>> {
    p.terms
        .iter()
        .filter(|(v, _)| face.contains(v))
        .map(|(v, c)| Ok((to_local(face, v)?, c.clone())))
        .collect()
}

fn initial_part(
    terms: &[(Vec<BigInt>, BigRational)],
    u: &[BigInt],
) -> Vec<(Vec<BigInt>, BigRational)> {
    let min = terms.iter().map(|(e, _)| dot(u, e)).min().expect("nonempty");
    terms
        .iter()
        .filter(|(e, _)| dot(u, e) == min)
        .cloned()
        .collect()
}

/// Looks for a singular common zero of the given `u`-parts on the torus.
fn search_case(
    parts: &[Vec<(Vec<BigInt>, BigRational)>],
    r: usize,
    trials: u32,
    seed: u64,
) -> Option<WitnessPoint> {
    let mut diffs = Vec::new();
    for p in parts {
        for (e, _) in p {
            diffs.push(sub(e, &p[0].0));
        }
    }
    if diffs.iter().all(|d| d.iter().all(Zero::is_zero)) {
        return None;
    }
    let w_basis = saturation(&diffs, r);
    let w = w_basis.len();
    let eqs: Vec<MPoly> = parts
        .iter()
        .map(|p| {
            let mut m = MPoly::new(w);
            for (e, c) in p {
                let coords = solve_left(&w_basis, &sub(e, &p[0].0)).expect("difference in span");
                let exp: Vec<i64> = coords
                    .iter()
                    .map(|x| i64::try_from(x.to_integer()).expect("small exponent"))
                    .collect();
                m.add_term(exp, c.clone());
            }
            m.shifted()
        })
        .collect();
    if eqs.iter().any(|e| e.terms.len() == 1) {
        return None;
    }
    let q = eqs.len();
    let jac: Vec<Vec<MPoly>> = eqs.iter().map(|e| (0..w).map(|i| e.partial(i)).collect()).collect();

    let zero = BigRational::zero();
    let one = BigRational::one();
    let mut lines: Vec<(Vec<BigRational>, Vec<BigRational>)> = Vec::new();
    if w == 1 {
        lines.push((vec![zero.clone()], vec![one.clone()]));
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let a = (0..w).map(|_| random_rational(&mut rng)).collect();
            let b = (0..w).map(|_| random_rational(&mut rng)).collect();
            lines.push((a, b));
        }
    }

    for (a, b) in lines {
        let mut g = UPoly::zero();
        for e in &eqs {
            g = g.gcd(&e.on_line(&a, &b));
        }
        if q <= w {
            for cols in combinations(w, q) {
                if g.degree().unwrap_or(0) == 0 {
                    break;
                }
                let m: Vec<Vec<UPoly>> = jac
                    .iter()
                    .map(|row| cols.iter().map(|&c| row[c].on_line(&a, &b)).collect())
                    .collect();
                g = g.gcd(&det(&m));
            }
        }
        // Discard roots where the line leaves the torus.
        for (ai, bi) in a.iter().zip(&b) {
            if !bi.is_zero() {
                g = g.strip_root(&(-ai / bi));
            }
        }
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        let lam = right_inverse(&w_basis, r).expect("saturated lattice has a right inverse");
        if let Some(t) = g.rational_roots().into_iter().next() {
            let y: Vec<BigRational> = a.iter().zip(&b).map(|(ai, bi)| ai + &t * bi).collect();
            let coords = (0..r)
                .map(|i| {
                    let mut v = BigRational::one();
                    for (k, yk) in y.iter().enumerate() {
                        let e = &lam[i][k];
                        let p = i32::try_from(e).expect("small exponent");
                        v *= if p >= 0 {
                            num_traits::pow(yk.clone(), p as usize)
                        } else {
                            num_traits::pow(yk.recip(), (-p) as usize)
                        };
                    }
                    fmt_rational(&v)
                })
                .collect();
            return Some(WitnessPoint::Rational { coords });
        }
        return Some(WitnessPoint::Algebraic {
            monomials: w_basis.into_iter().map(LatticePoint).collect(),
            base: a.iter().map(fmt_rational).collect(),
            direction: b.iter().map(fmt_rational).collect(),
            polynomial: g.0.iter().map(fmt_rational).collect(),
        });
    }
    None
}
