//! Rational polyhedral cones, duality and the face lattice of `σ̌`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::dd::facet_normals;
use crate::error::{Error, Result};
use crate::lattice::{
    primitive_vector, rank, sublattice_basis, LatticePoint, SublatticeBasis,
};

/// A cone generated by primitive rays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cone {
    pub ambient_rank: usize,
    pub rays: Vec<LatticePoint>,
}

impl Cone {
    /// Normalizes the generators to primitive vectors and drops duplicates.
    /// Redundant (non-extremal) generators are removed when the cone is full
    /// dimensional and pointed.
    pub fn new(rays: &[LatticePoint]) -> Result<Self> {
        let first = rays.first().ok_or(Error::EmptyGenerators)?;
        let d = first.rank();
        let mut set = BTreeSet::new();
        for r in rays {
            if r.rank() != d {
                return Err(Error::DimensionMismatch(format!(
                    "ray {r} has rank {} but {d} was expected",
                    r.rank()
                )));
            }
            set.insert(primitive_vector(r)?.0);
        }
        let mut cone = Cone {
            ambient_rank: d,
            rays: set.into_iter().collect(),
        };
        if cone.is_full_dimensional() && cone.is_strongly_convex() {
            cone.rays = cone.extremal_rays();
        }
        Ok(cone)
    }

    fn rows(&self) -> Vec<Vec<BigInt>> {
        self.rays.iter().map(|r| r.0.clone()).collect()
    }

    pub fn is_full_dimensional(&self) -> bool {
        rank(&self.rows()) == self.ambient_rank
    }

    /// True when the cone contains no line. Only meaningful for full
    /// dimensional cones, where it is equivalent to the dual being full
    /// dimensional.
    pub fn is_strongly_convex(&self) -> bool {
        match facet_normals(&self.rows(), self.ambient_rank) {
            Ok(normals) => rank(&normals) == self.ambient_rank,
            Err(_) => false,
        }
    }

    fn extremal_rays(&self) -> Vec<LatticePoint> {
        let normals = facet_normals(&self.rows(), self.ambient_rank).unwrap_or_default();
        self.rays
            .iter()
            .filter(|r| {
                let tight: Vec<Vec<BigInt>> = normals
                    .iter()
                    .filter(|n| crate::lattice::dot(n, &r.0).is_zero())
                    .cloned()
                    .collect();
                rank(&tight) + 1 == self.ambient_rank
            })
            .cloned()
            .collect()
    }

    /// True when `p` lies in the cone.
    pub fn contains(&self, p: &LatticePoint) -> bool {
        let normals = facet_normals(&self.rows(), self.ambient_rank).unwrap_or_default();
        normals
            .iter()
            .all(|n| !crate::lattice::dot(n, &p.0).is_negative())
    }
}

/// The dual cone `{u : <u, v> >= 0 for all v in c}` with primitive rays.
pub fn dual_cone(c: &Cone) -> Result<Cone> {
    if !c.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let normals = facet_normals(&c.rows(), c.ambient_rank)?;
    if rank(&normals) != c.ambient_rank {
        return Err(Error::NotStronglyConvex);
    }
    Ok(Cone {
        ambient_rank: c.ambient_rank,
        rays: normals.into_iter().map(LatticePoint).collect(),
    })
}

/// A face `Δ` of `σ̌`, corresponding to the torus orbit `T_Δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub id: usize,
    pub dim: usize,
    /// Rays of `σ̌` lying on the face.
    pub span_rays: Vec<LatticePoint>,
    /// Rays of `σ` orthogonal to the face; they span the dual face `τ`.
    pub dual_face_rays: Vec<LatticePoint>,
    /// Indices of the semigroup generators lying on the face.
    pub generator_indices: Vec<usize>,
    /// `M(S ∩ Δ)`, the lattice generated by those generators.
    pub generator_sublattice: SublatticeBasis,
    pub dual_sublattice_rank: usize,
}

impl Face {
    /// True when `p` (assumed in `σ̌`) lies on this face.
    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.dual_face_rays.iter().all(|t| t.dot(p).is_zero())
    }

    /// True when the dual face `τ` is a regular cone, i.e. the variety is
    /// smooth along `T_Δ`.
    pub fn dual_face_is_regular(&self) -> bool {
        if self.dual_face_rays.is_empty() {
            return true;
        }
        let rows: Vec<Vec<BigInt>> = self.dual_face_rays.iter().map(|r| r.0.clone()).collect();
        if rank(&rows) != rows.len() {
            return false;
        }
        sublattice_basis(&self.dual_face_rays)
            .map(|b| b.index_in_saturation == BigInt::from(1))
            .unwrap_or(false)
    }
}

/// All faces of `sigma_dual`, from `{0}` up to the whole cone, ordered by
/// dimension and then by their sorted ray lists.
pub fn face_lattice(
    sigma: &Cone,
    sigma_dual: &Cone,
    generators: &[LatticePoint],
) -> Result<Vec<Face>> {
    let d = sigma_dual.ambient_rank;
    let n_rays = sigma_dual.rays.len();
    let facet_sets: Vec<BTreeSet<usize>> = sigma
        .rays
        .iter()
        .map(|t| {
            (0..n_rays)
                .filter(|&i| t.dot(&sigma_dual.rays[i]).is_zero())
                .collect()
        })
        .collect();

    let whole: BTreeSet<usize> = (0..n_rays).collect();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    seen.insert(whole.clone());
    let mut queue = vec![whole];
    while let Some(f) = queue.pop() {
        for s in &facet_sets {
            let next: BTreeSet<usize> = f.intersection(s).copied().collect();
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    seen.insert(BTreeSet::new());

    let mut faces = Vec::new();
    for set in seen {
        let span_rays: Vec<LatticePoint> = set.iter().map(|&i| sigma_dual.rays[i].clone()).collect();
        let rows: Vec<Vec<BigInt>> = span_rays.iter().map(|r| r.0.clone()).collect();
        let dim = rank(&rows);
        let dual_face_rays: Vec<LatticePoint> = sigma
            .rays
            .iter()
            .filter(|t| span_rays.iter().all(|r| t.dot(r).is_zero()))
            .cloned()
            .collect();
        let generator_indices: Vec<usize> = (0..generators.len())
            .filter(|&i| dual_face_rays.iter().all(|t| t.dot(&generators[i]).is_zero()))
            .collect();
        let on_face: Vec<LatticePoint> =
            generator_indices.iter().map(|&i| generators[i].clone()).collect();
        let generator_sublattice = if on_face.is_empty() {
            SublatticeBasis::zero(d)
        } else {
            sublattice_basis(&on_face)?
        };
        if generator_sublattice.rank != dim {
            return Err(Error::InvalidInput(format!(
                "semigroup generators span rank {} on a face of dimension {dim}",
                generator_sublattice.rank
            )));
        }
        faces.push(Face {
            id: 0,
            dim,
            span_rays,
            dual_sublattice_rank: d - dim,
            dual_face_rays,
            generator_indices,
            generator_sublattice,
        });
    }
    faces.sort_by(|a, b| (a.dim, &a.span_rays).cmp(&(b.dim, &b.span_rays)));
    for (i, f) in faces.iter_mut().enumerate() {
        f.id = i;
    }
    Ok(faces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::from_i64(c)
    }

    #[test]
    fn dual_of_cusp_cone() {
        let sigma = Cone::new(&[pt(&[0, 1]), pt(&[2, -1])]).unwrap();
        let dual = dual_cone(&sigma).unwrap();
        assert_eq!(dual.rays, vec![pt(&[1, 0]), pt(&[1, 2])]);
        assert_eq!(dual_cone(&dual).unwrap().rays, sigma.rays);
    }

    #[test]
    fn non_pointed_cone_is_rejected() {
        let c = Cone::new(&[pt(&[1, 0]), pt(&[-1, 0]), pt(&[0, 1])]).unwrap();
        assert_eq!(dual_cone(&c), Err(Error::NotStronglyConvex));
        let flat = Cone::new(&[pt(&[1, 0])]).unwrap();
        assert_eq!(dual_cone(&flat), Err(Error::NotFullDimensional));
    }

    #[test]
    fn quadric_cone_has_four_faces() {
        let sigma = Cone::new(&[pt(&[0, 1]), pt(&[2, -1])]).unwrap();
        let dual = dual_cone(&sigma).unwrap();
        let gens = [pt(&[1, 0]), pt(&[1, 1]), pt(&[1, 2])];
        let faces = face_lattice(&sigma, &dual, &gens).unwrap();
        assert_eq!(faces.len(), 4);
        assert_eq!(faces.iter().map(|f| f.dim).collect::<Vec<_>>(), vec![0, 1, 1, 2]);
        assert_eq!(faces[1].span_rays, vec![pt(&[1, 0])]);
        assert_eq!(faces[2].span_rays, vec![pt(&[1, 2])]);
        assert_eq!(faces[3].generator_indices, vec![0, 1, 2]);
        assert!(faces.iter().skip(1).all(|f| f.dual_face_is_regular()));
        assert!(!faces[0].dual_face_is_regular());
    }
}
