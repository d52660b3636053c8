//! Newton polyhedra `conv(support) + Δ` on a face `Δ` of `σ̌`.
//!
//! Computations run in the coordinates of the generator sublattice
//! `M(S ∩ Δ)`, so normals are automatically taken in its dual.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use super::cone::Face;
use super::polyhedron::Polyhedron;
use crate::error::{Error, Result};
use crate::lattice::{express_in_basis, make_primitive, solve_left, LatticePoint, SublatticeBasis};

/// Point coordinates in the basis of `M(S ∩ Δ)`.
pub fn to_local(face: &Face, p: &LatticePoint) -> Result<Vec<BigInt>> {
    if !face.contains(p) {
        return Err(Error::SupportOutsideCone(p.to_string()));
    }
    express_in_basis(p, &face.generator_sublattice)
        .map_err(|_| Error::SupportOutsideCone(p.to_string()))
}

pub fn to_ambient(basis: &SublatticeBasis, local: &[BigInt]) -> LatticePoint {
    basis.point_from_coords(local)
}

/// Rays of the face, as primitive integer directions in local coordinates.
pub fn local_rays(face: &Face) -> Vec<Vec<BigInt>> {
    let rows = face.generator_sublattice.rows();
    face.span_rays
        .iter()
        .map(|r| {
            let c = solve_left(&rows, &r.0).expect("face rays lie in the span of its generators");
            let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            make_primitive(c.iter().map(|x| (x * &den).to_integer()).collect())
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct NewtonPolyhedron {
    pub face_id: usize,
    pub support_points: Vec<LatticePoint>,
    pub vertices: Vec<LatticePoint>,
    pub basis: SublatticeBasis,
    pub local: Polyhedron,
}

/// A compact face with its vertices in ambient and local coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompactFace {
    pub dim: usize,
    pub vertices: Vec<LatticePoint>,
    #[serde(skip)]
    pub local_vertices: Vec<Vec<BigInt>>,
    /// Primitive inner normal in local coordinates; present for faces of the
    /// requested dimension.
    pub inner_normal: Option<LatticePoint>,
    /// Set for maximal compact faces whose dimension is below the request.
    pub below_target_dim: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompactFaceSet {
    pub target_dim: usize,
    pub faces: Vec<CompactFace>,
}

impl CompactFaceSet {
    /// Faces of exactly the requested dimension.
    pub fn facets(&self) -> impl Iterator<Item = &CompactFace> {
        self.faces.iter().filter(|f| !f.below_target_dim)
    }
}

/// `conv(support) + Δ` for support points lying on the face `Δ`.
pub fn newton_polyhedron(support: &[LatticePoint], face: &Face) -> Result<NewtonPolyhedron> {
    if support.is_empty() {
        return Err(Error::InvalidInput("empty support".into()));
    }
    let rays = local_rays(face);
    let mut local_pts = Vec::with_capacity(support.len());
    for p in support {
        local_pts.push(to_local(face, p)?);
    }
    let local = Polyhedron::new(local_pts, rays, face.dim)?;
    Ok(from_local(face.id, support.to_vec(), face.generator_sublattice.clone(), local))
}

fn from_local(
    face_id: usize,
    support_points: Vec<LatticePoint>,
    basis: SublatticeBasis,
    local: Polyhedron,
) -> NewtonPolyhedron {
    let vertices = local
        .vertices()
        .iter()
        .map(|v| basis.point_from_coords(v))
        .collect();
    NewtonPolyhedron {
        face_id,
        support_points,
        vertices,
        basis,
        local,
    }
}

impl NewtonPolyhedron {
    pub fn dim(&self) -> usize {
        self.local.dim
    }

    /// Compact faces of dimension `target_dim`, each with its primitive inner
    /// normal, followed by flagged maximal compact faces of lower dimension.
    pub fn compact_faces(&self, target_dim: usize) -> CompactFaceSet {
        let compact: Vec<_> = self.local.faces.iter().filter(|f| f.is_compact()).collect();
        let mut faces = Vec::new();
        for f in &compact {
            let maximal = !compact.iter().any(|g| {
                g.dim > f.dim && f.points.iter().all(|p| g.points.contains(p))
            });
            if f.dim == target_dim || (f.dim < target_dim && maximal) {
                let local_vertices = self.local.face_vertices(f);
                let inner_normal = (f.dim == target_dim)
                    .then(|| LatticePoint(self.local.relative_interior_normal(f)));
                faces.push(CompactFace {
                    dim: f.dim,
                    vertices: local_vertices
                        .iter()
                        .map(|v| self.basis.point_from_coords(v))
                        .collect(),
                    local_vertices,
                    inner_normal,
                    below_target_dim: f.dim < target_dim,
                });
            }
        }
        CompactFaceSet { target_dim, faces }
    }

    /// Every compact face with a normal from the relative interior of its
    /// normal cone (local coordinates).
    pub fn all_compact_faces(&self) -> Vec<(Vec<Vec<BigInt>>, Vec<BigInt>)> {
        self.local
            .faces
            .iter()
            .filter(|f| f.is_compact())
            .map(|f| (self.local.face_vertices(f), self.local.relative_interior_normal(f)))
            .collect()
    }

    /// Vertices (ambient) minimizing the local functional `u`, and the minimum.
    pub fn supporting_face(&self, u: &LatticePoint) -> Result<(Vec<LatticePoint>, BigInt)> {
        if u.rank() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "normal {u} has rank {} but the face has dimension {}",
                u.rank(),
                self.dim()
            )));
        }
        let (verts, min) = self.local.supporting_face(&u.0)?;
        Ok((
            verts.iter().map(|v| self.basis.point_from_coords(v)).collect(),
            min,
        ))
    }

    /// Local-coordinate version of [`Self::supporting_face`].
    pub fn supporting_face_local(&self, u: &[BigInt]) -> Result<(Vec<Vec<BigInt>>, BigInt)> {
        self.local.supporting_face(u)
    }

    pub fn minkowski_sum(&self, other: &NewtonPolyhedron) -> Result<NewtonPolyhedron> {
        let local = self.local.minkowski_sum(&other.local)?;
        let support = local
            .vertices()
            .iter()
            .map(|v| self.basis.point_from_coords(v))
            .collect();
        Ok(from_local(self.face_id, support, self.basis.clone(), local))
    }

    /// True when the ambient point lies in the polyhedron.
    pub fn contains(&self, face: &Face, p: &LatticePoint) -> bool {
        match to_local(face, p) {
            Ok(c) => self.local.contains(&c),
            Err(_) => false,
        }
    }

    /// Pairs each compact facet with its normal and the minimal value of the
    /// normal, in local coordinates.
    pub fn compact_facet_inequalities(&self) -> Vec<(Vec<BigInt>, BigInt)> {
        let target = self.dim().saturating_sub(1);
        self.compact_faces(target)
            .facets()
            .map(|f| {
                let u = f.inner_normal.clone().expect("facets carry normals").0;
                let min = crate::lattice::dot(&u, &f.local_vertices[0]);
                (u, min)
            })
            .collect()
    }
}

/// Strict positivity of `u` on every ray, i.e. `u ∈ Int(Δ̌)`.
pub fn positive_on_rays(u: &[BigInt], rays: &[Vec<BigInt>]) -> bool {
    rays.iter().all(|r| crate::lattice::dot(u, r).is_positive())
}
