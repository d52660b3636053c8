//! Exact polyhedra `conv(points) + cone(rays)` in a coordinate lattice `Z^r`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::dd::facet_normals;
use crate::error::{Error, Result};
use crate::lattice::{dot, make_primitive, rank, saturation, solve_left, sub};

/// A facet inequality `normal . x >= offset` with a primitive normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

/// A nonempty face, described by the generators it contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFace {
    pub dim: usize,
    /// Indices into `Polyhedron::points` lying on the face.
    pub points: Vec<usize>,
    /// Indices into `Polyhedron::rays` parallel to the face.
    pub rays: Vec<usize>,
    /// Indices into `Polyhedron::facets` containing the face.
    pub facets: Vec<usize>,
}

impl PolyFace {
    pub fn is_compact(&self) -> bool {
        self.rays.is_empty()
    }
}

/// Full-dimensional polyhedron with cached H-representation and faces.
#[derive(Debug, Clone)]
pub struct Polyhedron {
    pub dim: usize,
    pub points: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
    pub facets: Vec<Halfspace>,
    pub faces: Vec<PolyFace>,
}

impl Polyhedron {
    /// Builds the polyhedron; `points` must be nonempty and together with
    /// `rays` affinely span `R^dim`.
    pub fn new(points: Vec<Vec<BigInt>>, rays: Vec<Vec<BigInt>>, dim: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("polyhedron without points".into()));
        }
        let points: Vec<Vec<BigInt>> = points
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let rays: Vec<Vec<BigInt>> = rays
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .map(make_primitive)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();

        let mut homog: Vec<Vec<BigInt>> = Vec::new();
        for p in &points {
            let mut h = vec![BigInt::one()];
            h.extend(p.iter().cloned());
            homog.push(h);
        }
        for r in &rays {
            let mut h = vec![BigInt::zero()];
            h.extend(r.iter().cloned());
            homog.push(h);
        }
        let normals = facet_normals(&homog, dim + 1)?;
        let facets: Vec<Halfspace> = normals
            .into_iter()
            .filter(|n| n[1..].iter().any(|x| !x.is_zero()))
            .map(|n| Halfspace {
                offset: -n[0].clone(),
                normal: n[1..].to_vec(),
            })
            .collect();

        let mut poly = Polyhedron {
            dim,
            points,
            rays,
            facets,
            faces: Vec::new(),
        };
        poly.faces = poly.enumerate_faces();
        Ok(poly)
    }

    fn point_on(&self, f: &Halfspace, i: usize) -> bool {
        dot(&f.normal, &self.points[i]) == f.offset
    }

    fn ray_on(&self, f: &Halfspace, i: usize) -> bool {
        dot(&f.normal, &self.rays[i]).is_zero()
    }

    fn enumerate_faces(&self) -> Vec<PolyFace> {
        type Inc = (Vec<usize>, Vec<usize>);
        let facet_inc: Vec<Inc> = self
            .facets
            .iter()
            .map(|f| {
                (
                    (0..self.points.len()).filter(|&i| self.point_on(f, i)).collect(),
                    (0..self.rays.len()).filter(|&i| self.ray_on(f, i)).collect(),
                )
            })
            .collect();
        let whole: Inc = ((0..self.points.len()).collect(), (0..self.rays.len()).collect());
        let mut seen: BTreeSet<Inc> = BTreeSet::new();
        let mut queue = vec![whole.clone()];
        seen.insert(whole);
        while let Some(face) = queue.pop() {
            for inc in &facet_inc {
                let pts: Vec<usize> = face.0.iter().copied().filter(|i| inc.0.contains(i)).collect();
                if pts.is_empty() {
                    continue;
                }
                let rys: Vec<usize> = face.1.iter().copied().filter(|i| inc.1.contains(i)).collect();
                let next = (pts, rys);
                if seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
        }
        let mut faces: Vec<PolyFace> = seen
            .into_iter()
            .map(|(pts, rys)| {
                let facets = (0..self.facets.len())
                    .filter(|&k| {
                        pts.iter().all(|&i| facet_inc[k].0.contains(&i))
                            && rys.iter().all(|&i| facet_inc[k].1.contains(&i))
                    })
                    .collect();
                let base = &self.points[pts[0]];
                let mut dirs: Vec<Vec<BigInt>> =
                    pts[1..].iter().map(|&i| sub(&self.points[i], base)).collect();
                dirs.extend(rys.iter().map(|&i| self.rays[i].clone()));
                PolyFace {
                    dim: rank(&dirs),
                    points: pts,
                    rays: rys,
                    facets,
                }
            })
            .collect();
        faces.sort_by(|a, b| {
            (a.dim, self.face_key(a)).cmp(&(b.dim, self.face_key(b)))
        });
        faces
    }

    fn face_key(&self, f: &PolyFace) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
        (
            f.points.iter().map(|&i| self.points[i].clone()).collect(),
            f.rays.iter().map(|&i| self.rays[i].clone()).collect(),
        )
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> Vec<Vec<BigInt>> {
        self.faces
            .iter()
            .filter(|f| f.dim == 0)
            .map(|f| self.points[f.points[0]].clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Vertices of a face, in lexicographic order.
    pub fn face_vertices(&self, face: &PolyFace) -> Vec<Vec<BigInt>> {
        let all = self.vertices();
        face.points
            .iter()
            .map(|&i| self.points[i].clone())
            .filter(|p| all.contains(p))
            .collect()
    }

    /// Compact faces of the given dimension.
    pub fn compact_faces_of_dim(&self, dim: usize) -> Vec<&PolyFace> {
        self.faces
            .iter()
            .filter(|f| f.is_compact() && f.dim == dim)
            .collect()
    }

    /// A normal vector whose minimum over the polyhedron is attained exactly
    /// on `face`: the sum of the facet normals containing it, made primitive.
    pub fn relative_interior_normal(&self, face: &PolyFace) -> Vec<BigInt> {
        let mut u = vec![BigInt::zero(); self.dim];
        for &k in &face.facets {
            for (x, y) in u.iter_mut().zip(&self.facets[k].normal) {
                *x += y;
            }
        }
        make_primitive(u)
    }

    /// Minimal value of `u` over the polyhedron and the vertices attaining it.
    pub fn supporting_face(&self, u: &[BigInt]) -> Result<(Vec<Vec<BigInt>>, BigInt)> {
        if self.rays.iter().any(|r| dot(u, r).is_negative()) {
            return Err(Error::UnboundedBelow);
        }
        let verts = self.vertices();
        let min = verts
            .iter()
            .map(|v| dot(u, v))
            .min()
            .expect("a polyhedron with points has a vertex");
        let face = verts.into_iter().filter(|v| dot(u, v) == min).collect();
        Ok((face, min))
    }

    /// Membership test via the facet inequalities.
    pub fn contains(&self, p: &[BigInt]) -> bool {
        self.facets.iter().all(|f| dot(&f.normal, p) >= f.offset)
    }

    pub fn minkowski_sum(&self, other: &Polyhedron) -> Result<Polyhedron> {
        let a = self.vertices();
        let b = other.vertices();
        let mut pts = Vec::with_capacity(a.len() * b.len());
        for x in &a {
            for y in &b {
                pts.push(x.iter().zip(y).map(|(s, t)| s + t).collect());
            }
        }
        let mut rays = self.rays.clone();
        rays.extend(other.rays.iter().cloned());
        Polyhedron::new(pts, rays, self.dim)
    }
}

/// Coordinates of `points` in an affine lattice frame of their own hull.
///
/// Returns `(base, basis, coords)` where `basis` spans the saturation of the
/// differences `points - base` and `coords` are integral coordinates in it.
pub(crate) fn affine_frame(
    points: &[Vec<BigInt>],
) -> (Vec<BigInt>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let base = points[0].clone();
    let n = base.len();
    let diffs: Vec<Vec<BigInt>> = points.iter().map(|p| sub(p, &base)).collect();
    let basis = if diffs.iter().all(|d| d.iter().all(Zero::is_zero)) {
        Vec::new()
    } else {
        saturation(&diffs, n)
    };
    let coords = diffs
        .iter()
        .map(|d| {
            solve_left(&basis, d)
                .expect("difference lies in its own span")
                .into_iter()
                .map(|x| x.to_integer())
                .collect()
        })
        .collect();
    (base, basis, coords)
}

/// Vertices of `conv(points)` for points of any affine dimension.
pub(crate) fn hull_vertices(points: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let uniq: Vec<Vec<BigInt>> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if uniq.len() <= 2 {
        return uniq;
    }
    let (_, basis, coords) = affine_frame(&uniq);
    let poly = Polyhedron::new(coords.clone(), Vec::new(), basis.len())
        .expect("points span their own affine frame");
    let local = poly.vertices();
    uniq.into_iter()
        .zip(coords)
        .filter(|(_, c)| local.contains(c))
        .map(|(p, _)| p)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cusp_newton_polyhedron() {
        let p = Polyhedron::new(
            vec![v(&[3, 0]), v(&[2, 2])],
            vec![v(&[1, 0]), v(&[1, 2])],
            2,
        )
        .unwrap();
        assert_eq!(p.vertices(), vec![v(&[2, 2]), v(&[3, 0])]);
        let edges = p.compact_faces_of_dim(1);
        assert_eq!(edges.len(), 1);
        assert_eq!(p.relative_interior_normal(edges[0]), v(&[2, 1]));
        let (face, min) = p.supporting_face(&v(&[2, 1])).unwrap();
        assert_eq!(face.len(), 2);
        assert_eq!(min, BigInt::from(6));
        assert_eq!(p.supporting_face(&v(&[-1, 0])), Err(Error::UnboundedBelow));
    }

    #[test]
    fn interior_point_is_not_a_vertex() {
        let p = Polyhedron::new(
            vec![v(&[4, 0]), v(&[3, 2]), v(&[4, 6]), v(&[5, 4])],
            vec![v(&[1, 0]), v(&[1, 2])],
            2,
        )
        .unwrap();
        assert_eq!(p.vertices(), vec![v(&[3, 2]), v(&[4, 0]), v(&[4, 6])]);
        let normals: Vec<Vec<BigInt>> = p
            .compact_faces_of_dim(1)
            .into_iter()
            .map(|f| p.relative_interior_normal(f))
            .collect();
        assert_eq!(normals.len(), 2);
        assert!(normals.contains(&v(&[2, 1])));
        assert!(normals.contains(&v(&[4, -1])));
    }

    #[test]
    fn hull_of_collinear_points() {
        let h = hull_vertices(&[v(&[0, 0]), v(&[1, 1]), v(&[3, 3]), v(&[2, 2])]);
        assert_eq!(h, vec![v(&[0, 0]), v(&[3, 3])]);
        let sq = hull_vertices(&[v(&[0, 0]), v(&[2, 0]), v(&[0, 2]), v(&[2, 2]), v(&[1, 1])]);
        assert_eq!(sq.len(), 4);
    }
}
