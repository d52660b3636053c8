//! Normalized lattice volumes, mixed volumes and the facet coefficients
//! `d_i` and `K_i`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{
    dot, express_in_basis, kernel_basis, rank, solve_left, sub, LatticePoint, SublatticeBasis,
};
use crate::polyhedral::polyhedron::{affine_frame, hull_vertices, Polyhedron};
use crate::polyhedral::NewtonPolyhedron;

/// How mixed volumes of point-like multisets are counted in `K_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum VolumeConvention {
    /// Standard mixed-volume theory: a point argument contributes 0.
    Strict,
    /// A composition whose Minkowski sum is a single point contributes 1,
    /// extending the zero-dimensional convention `Vol = 1`.
    #[default]
    PaperExample,
}

impl VolumeConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            VolumeConvention::Strict => "strict",
            VolumeConvention::PaperExample => "paper-example",
        }
    }
}

impl fmt::Display for VolumeConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VolumeConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(VolumeConvention::Strict),
            "paper-example" | "paper_example" => Ok(VolumeConvention::PaperExample),
            other => Err(Error::InvalidInput(format!(
                "unknown mode {other:?}, expected strict or paper-example"
            ))),
        }
    }
}

impl Serialize for VolumeConvention {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// A lattice polytope together with the lattice its volume is measured in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    pub vertices: Vec<LatticePoint>,
    pub reference_lattice: SublatticeBasis,
}

impl LatticePolytope {
    pub fn new(vertices: Vec<LatticePoint>, reference_lattice: SublatticeBasis) -> Self {
        LatticePolytope {
            vertices,
            reference_lattice,
        }
    }

    /// Vertex differences in reference-lattice coordinates.
    fn local_coords(&self) -> Result<Vec<Vec<BigInt>>> {
        let base = self
            .vertices
            .first()
            .ok_or_else(|| Error::InvalidInput("polytope without vertices".into()))?;
        self.vertices
            .iter()
            .map(|v| express_in_basis(&v.sub(base), &self.reference_lattice))
            .collect()
    }

    pub fn is_point(&self) -> bool {
        self.vertices.iter().all(|v| *v == self.vertices[0])
    }
}

/// `dim! * Euclidean volume` measured in the reference lattice.
///
/// Returns 1 for `dim == 0` and 0 when the polytope is flatter than `dim`.
pub fn normalized_volume(p: &LatticePolytope, dim: usize) -> Result<BigInt> {
    let coords = p.local_coords()?;
    if dim == 0 {
        return Ok(BigInt::one());
    }
    let aff = rank(&coords);
    if aff < dim {
        return Ok(BigInt::zero());
    }
    if aff > dim {
        return Err(Error::DimensionMismatch(format!(
            "polytope has affine dimension {aff}, more than {dim}"
        )));
    }
    let (_, _, frame) = affine_frame(&coords);
    Ok(full_volume(&hull_vertices(&frame), dim))
}

/// Normalized volume of a full-dimensional polytope in `Z^m`, by the pyramid
/// decomposition from its lexicographically first vertex.
fn full_volume(points: &[Vec<BigInt>], m: usize) -> BigInt {
    match m {
        0 => return BigInt::one(),
        1 => {
            let xs = points.iter().map(|p| &p[0]);
            let max = xs.clone().max().expect("nonempty");
            let min = xs.min().expect("nonempty");
            return max - min;
        }
        _ => {}
    }
    let poly = Polyhedron::new(points.to_vec(), Vec::new(), m).expect("full-dimensional polytope");
    let verts = poly.vertices();
    let apex = &verts[0];
    let mut total = BigInt::zero();
    for facet in &poly.facets {
        let height = dot(&facet.normal, apex) - &facet.offset;
        if height.is_zero() {
            continue;
        }
        let on: Vec<Vec<BigInt>> = verts
            .iter()
            .filter(|v| dot(&facet.normal, v) == facet.offset)
            .cloned()
            .collect();
        let ker = kernel_basis(std::slice::from_ref(&facet.normal), m);
        let base = on[0].clone();
        let sub_pts: Vec<Vec<BigInt>> = on
            .iter()
            .map(|v| {
                solve_left(&ker, &sub(v, &base))
                    .expect("facet lies in the normal's kernel")
                    .into_iter()
                    .map(|x| x.to_integer())
                    .collect()
            })
            .collect();
        total += height * full_volume(&sub_pts, m - 1);
    }
    total
}

/// Normalized mixed volume by polarization of normalized volumes.
pub fn mixed_volume(ps: &[LatticePolytope], m: usize) -> Result<BigInt> {
    if ps.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "mixed volume of rank {m} needs {m} polytopes, got {}",
            ps.len()
        )));
    }
    if m == 0 {
        return Ok(BigInt::one());
    }
    let lattice = &ps[0].reference_lattice;
    for p in ps {
        if p.reference_lattice != *lattice || lattice.rank != m {
            return Err(Error::DimensionMismatch(
                "mixed volume arguments must share one reference lattice of rank m".into(),
            ));
        }
        if p.vertices.is_empty() {
            return Err(Error::InvalidInput("polytope without vertices".into()));
        }
    }
    let mut acc = BigInt::zero();
    for mask in 1u32..(1u32 << m) {
        let mut sum: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); lattice.ambient_rank]];
        for (i, p) in ps.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(sum.len() * p.vertices.len());
            for s in &sum {
                for v in &p.vertices {
                    next.push(s.iter().zip(&v.0).map(|(a, b)| a + b).collect());
                }
            }
            sum = hull_vertices(&next);
        }
        let poly = LatticePolytope::new(sum.into_iter().map(LatticePoint).collect(), lattice.clone());
        let vol = normalized_volume(&poly, m)?;
        if (m - mask.count_ones() as usize) % 2 == 0 {
            acc += vol;
        } else {
            acc -= vol;
        }
    }
    let fact: BigInt = (1..=m).map(BigInt::from).product();
    let (q, r) = acc.div_rem(&fact);
    debug_assert!(r.is_zero(), "polarization is divisible by m!");
    Ok(q)
}

/// `min_{w ∈ Γ₊(f_k) ∩ Δ} <u, w>` for a local normal `u`.
pub fn d_coefficient(u: &LatticePoint, fk_on_face: &NewtonPolyhedron) -> Result<BigInt> {
    Ok(fk_on_face.supporting_face(u)?.1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KCoefficient {
    #[serde(serialize_with = "crate::lattice::serialize_bigint")]
    pub value: BigInt,
    /// Set when no composition is admissible and the sum is empty.
    pub no_admissible_composition: bool,
}

/// Sum over compositions `α` of `face_dim - 1` (with `α_q >= 1` for `q < m`)
/// of the mixed volume of the multiset taking `gamma_faces[q]` `α_q` times.
///
/// All polytopes must share one reference lattice of rank `face_dim - 1`.
pub fn k_coefficient(
    face_dim: usize,
    m: usize,
    gamma_faces: &[LatticePolytope],
    mode: VolumeConvention,
) -> Result<KCoefficient> {
    if gamma_faces.len() != m || m == 0 {
        return Err(Error::LengthMismatch {
            expected: m,
            got: gamma_faces.len(),
        });
    }
    if face_dim <= 1 {
        return Ok(KCoefficient {
            value: BigInt::one(),
            no_admissible_composition: false,
        });
    }
    let n = face_dim - 1;
    if n < m - 1 {
        return Ok(KCoefficient {
            value: BigInt::zero(),
            no_admissible_composition: true,
        });
    }
    let mut value = BigInt::zero();
    for alpha in compositions(n, m) {
        let mut multiset = Vec::with_capacity(n);
        for (q, &a) in alpha.iter().enumerate() {
            for _ in 0..a {
                multiset.push(gamma_faces[q].clone());
            }
        }
        if mode == VolumeConvention::PaperExample && multiset.iter().all(|p| p.is_point()) {
            value += 1;
        } else {
            value += mixed_volume(&multiset, n)?;
        }
    }
    Ok(KCoefficient {
        value,
        no_admissible_composition: false,
    })
}

/// Compositions of `n` into `m` parts, the first `m-1` positive and the last
/// nonnegative, in lexicographic order.
pub(crate) fn compositions(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 1..=rest {
            if rest - a + 1 < left - 1 {
                break;
            }
            cur.push(a);
            rec(rest - a, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 || n + 1 < m {
        return out;
    }
    rec(n, m, &mut Vec::new(), &mut out);
    out
}

/// Lattice length of a segment or 0 for a point: the content of the difference.
pub fn lattice_length(a: &LatticePoint, b: &LatticePoint) -> BigInt {
    crate::lattice::content(&a.sub(b).0).abs()
}
