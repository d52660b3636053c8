//! Toric varieties, polynomials on them, and the per-face data `I(Δ)`,
//! `m(Δ)`, `u_i`, `d_i`, `K_i` consumed by the Brasselet formulas.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{dot, kernel_basis, sublattice_basis, LatticePoint, SublatticeBasis};
use crate::polyhedral::newton_polyhedron::to_local;
use crate::polyhedral::{dual_cone, face_lattice, newton_polyhedron, Cone, Face, NewtonPolyhedron};
use crate::volume::{k_coefficient, KCoefficient, LatticePolytope, VolumeConvention};

/// An affine toric variety `X_σ` with a chosen list of semigroup generators;
/// the generators are the ambient coordinates `z_1, ..., z_n`.
#[derive(Debug, Clone, Serialize)]
pub struct ToricVariety {
    pub d: usize,
    pub sigma: Cone,
    pub sigma_dual: Cone,
    pub generators: Vec<LatticePoint>,
    pub faces: Vec<Face>,
}

impl ToricVariety {
    pub fn new(sigma_rays: &[LatticePoint], generators: Vec<LatticePoint>) -> Result<Self> {
        let sigma = Cone::new(sigma_rays)?;
        let sigma_dual = dual_cone(&sigma)?;
        let d = sigma.ambient_rank;
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for g in &generators {
            if g.rank() != d {
                return Err(Error::DimensionMismatch(format!(
                    "generator {g} has rank {} but the variety has rank {d}",
                    g.rank()
                )));
            }
            if !sigma_dual.contains(g) {
                return Err(Error::InvalidInput(format!(
                    "generator {g} is outside the dual cone"
                )));
            }
        }
        let lattice = sublattice_basis(&generators)?;
        if lattice.rank != d {
            return Err(Error::InvalidInput(format!(
                "generators span rank {} instead of {d}",
                lattice.rank
            )));
        }
        let faces = face_lattice(&sigma, &sigma_dual, &generators)?;
        Ok(ToricVariety {
            d,
            sigma,
            sigma_dual,
            generators,
            faces,
        })
    }

    /// `C^n` as the toric variety of the positive orthant.
    pub fn affine_space(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("affine space needs n >= 1".into()));
        }
        let unit: Vec<LatticePoint> = (0..n)
            .map(|i| {
                let mut v = vec![0i64; n];
                v[i] = 1;
                LatticePoint::from_i64(&v)
            })
            .collect();
        ToricVariety::new(&unit, unit.clone())
    }

    pub fn ambient_dim(&self) -> usize {
        self.generators.len()
    }

    pub fn full_face(&self) -> &Face {
        self.faces.last().expect("a variety has at least one face")
    }

    pub fn face(&self, id: usize) -> Result<&Face> {
        self.faces
            .get(id)
            .ok_or_else(|| Error::InvalidInput(format!("no face with id {id}")))
    }

    /// Lattice point of the monomial `z^e`.
    pub fn monomial(&self, exps: &[u64]) -> Result<LatticePoint> {
        if exps.len() != self.generators.len() {
            return Err(Error::LengthMismatch {
                expected: self.generators.len(),
                got: exps.len(),
            });
        }
        let mut out = vec![BigInt::zero(); self.d];
        for (e, g) in exps.iter().zip(&self.generators) {
            for (o, x) in out.iter_mut().zip(&g.0) {
                *o += x * BigInt::from(*e);
            }
        }
        Ok(LatticePoint(out))
    }

    /// True when every generator is a standard basis vector, i.e. `X = C^d`.
    pub fn is_affine_space(&self) -> bool {
        self.generators.len() == self.d
            && self.generators.iter().all(|g| {
                g.0.iter().filter(|x| x.is_one()).count() == 1
                    && g.0.iter().filter(|x| !x.is_zero()).count() == 1
            })
    }
}

/// `Σ a_v · v` with exact rational coefficients, zero coefficients dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LatticePolynomial {
    pub terms: BTreeMap<LatticePoint, BigRational>,
}

impl LatticePolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (LatticePoint, BigRational)>>(it: I) -> Self {
        let mut p = Self::new();
        for (v, c) in it {
            p.add_term(v, c);
        }
        p
    }

    pub fn add_term(&mut self, v: LatticePoint, c: BigRational) {
        let e = self.terms.entry(v.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<LatticePoint> {
        self.terms.keys().cloned().collect()
    }

    pub fn has_origin(&self) -> bool {
        self.terms.keys().any(LatticePoint::is_zero)
    }

    /// Terms whose exponent lies on the face.
    pub fn restrict(&self, face: &Face) -> LatticePolynomial {
        LatticePolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(v, _)| face.contains(v))
                .map(|(v, c)| (v.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn meets(&self, face: &Face) -> bool {
        self.terms.keys().any(|v| face.contains(v))
    }

    pub fn add(&self, other: &LatticePolynomial) -> LatticePolynomial {
        let mut out = self.clone();
        for (v, c) in &other.terms {
            out.add_term(v.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> LatticePolynomial {
        if k.is_zero() {
            return LatticePolynomial::new();
        }
        LatticePolynomial {
            terms: self.terms.iter().map(|(v, c)| (v.clone(), c * k)).collect(),
        }
    }
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Serialize for LatticePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            point: &'a LatticePoint,
            coeff: String,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(point, c)| Term {
                point,
                coeff: fmt_rational(c),
            })
            .collect();
        terms.serialize(s)
    }
}

/// `(f_1, ..., f_k)`: the first `k-1` components cut out `X^g`, the last is
/// the function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompleteIntersection {
    pub components: Vec<LatticePolynomial>,
    pub whitney_assertion: bool,
}

impl CompleteIntersection {
    pub fn hypersurface(f: LatticePolynomial) -> Self {
        CompleteIntersection {
            components: vec![f],
            whitney_assertion: true,
        }
    }

    pub fn pair(g: LatticePolynomial, f: LatticePolynomial, whitney_assertion: bool) -> Self {
        CompleteIntersection {
            components: vec![g, f],
            whitney_assertion,
        }
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn function(&self) -> &LatticePolynomial {
        self.components.last().expect("at least one component")
    }

    pub(crate) fn validate(&self, x: &ToricVariety) -> Result<()> {
        if self.components.is_empty() || self.k() > x.d {
            return Err(Error::InvalidInput(format!(
                "a complete intersection on a rank {} variety needs 1..={} components, got {}",
                x.d,
                x.d,
                self.k()
            )));
        }
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                return Err(Error::ZeroPolynomial(format!("component {}", i + 1)));
            }
            if c.has_origin() {
                return Err(Error::OriginInSupport);
            }
            for v in c.terms.keys() {
                if v.rank() != x.d || !x.sigma_dual.contains(v) {
                    return Err(Error::SupportOutsideCone(v.to_string()));
                }
            }
        }
        Ok(())
    }
}

/// One compact facet `γ_i` of `Γ₊(f_Δ) ∩ Δ` with its coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetData {
    pub vertices: Vec<LatticePoint>,
    /// Primitive inner normal in coordinates of `M(S ∩ Δ)`.
    pub u: LatticePoint,
    /// Vertices of `γ(f_j)_i` for `j ∈ I(Δ) ∪ {k}`, in that order.
    pub supporting_faces: Vec<Vec<LatticePoint>>,
    pub d: BigInt,
    pub k: KCoefficient,
}

impl Serialize for FacetData {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FacetData", 5)?;
        st.serialize_field("vertices", &self.vertices)?;
        st.serialize_field("u", &self.u)?;
        st.serialize_field("supporting_faces", &self.supporting_faces)?;
        st.serialize_field("d", &crate::lattice::JsonInt(&self.d))?;
        st.serialize_field("k", &crate::lattice::JsonInt(&self.k.value))?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceInvariantData {
    pub face_id: usize,
    pub face_dim: usize,
    /// `I(Δ)`, as 1-based component indices.
    pub i_set: Vec<usize>,
    pub m: usize,
    /// `dim Δ < m(Δ)`: the face contributes nothing.
    pub dim_too_small: bool,
    pub facets: Vec<FacetData>,
}

/// Newton polyhedron of the terms of `p` lying on `face`.
pub(crate) fn restricted_polyhedron(p: &LatticePolynomial, face: &Face) -> Result<NewtonPolyhedron> {
    let support: Vec<LatticePoint> = p.terms.keys().filter(|v| face.contains(v)).cloned().collect();
    newton_polyhedron(&support, face)
}

/// Lattice `ker(u) ∩ Z^r` in local coordinates.
pub(crate) fn hyperplane_lattice(u: &[BigInt]) -> Result<SublatticeBasis> {
    let r = u.len();
    let ker = kernel_basis(std::slice::from_ref(&u.to_vec()), r);
    if ker.is_empty() {
        return Ok(SublatticeBasis::zero(r));
    }
    sublattice_basis(&ker.into_iter().map(LatticePoint).collect::<Vec<_>>())
}

pub fn face_invariant_data(
    x: &ToricVariety,
    ci: &CompleteIntersection,
    face: &Face,
    mode: VolumeConvention,
) -> Result<FaceInvariantData> {
    ci.validate(x)?;
    let k = ci.k();
    let fk = ci.function();
    if !fk.meets(face) {
        return Err(Error::FaceMissesNewtonPolygon(face.id));
    }
    let i_set: Vec<usize> = (0..k - 1).filter(|&j| ci.components[j].meets(face)).collect();
    let m = i_set.len() + 1;
    let mut components: Vec<NewtonPolyhedron> = Vec::with_capacity(m);
    for &j in &i_set {
        components.push(restricted_polyhedron(&ci.components[j], face)?);
    }
    components.push(restricted_polyhedron(fk, face)?);
    facet_data(face, i_set, components, mode)
}

/// Shared core of [`face_invariant_data`], also used with a forced `I(Δ)`.
pub(crate) fn facet_data(
    face: &Face,
    i_set: Vec<usize>,
    components: Vec<NewtonPolyhedron>,
    mode: VolumeConvention,
) -> Result<FaceInvariantData> {
    let m = components.len();
    let mut product = components[0].clone();
    for c in &components[1..] {
        product = product.minkowski_sum(c)?;
    }
    let r = face.dim;
    let target = r.saturating_sub(1);
    let basis = &face.generator_sublattice;
    let mut facets = Vec::new();
    for cf in product.compact_faces(target).facets() {
        let u = cf.inner_normal.clone().expect("facets carry normals");
        debug_assert!(in_open_dual(&u.0, face));
        let lattice = hyperplane_lattice(&u.0)?;
        let mut supporting = Vec::with_capacity(m);
        let mut gammas = Vec::with_capacity(m);
        for c in &components {
            let (verts, _) = c.supporting_face_local(&u.0)?;
            supporting.push(verts.iter().map(|v| basis.point_from_coords(v)).collect());
            gammas.push(LatticePolytope::new(
                verts.into_iter().map(LatticePoint).collect(),
                lattice.clone(),
            ));
        }
        let (_, d) = components[m - 1].supporting_face_local(&u.0)?;
        let k = k_coefficient(r, m, &gammas, mode)?;
        facets.push(FacetData {
            vertices: cf.vertices.clone(),
            u,
            supporting_faces: supporting,
            d,
            k,
        });
    }
    Ok(FaceInvariantData {
        face_id: face.id,
        face_dim: r,
        i_set: i_set.iter().map(|j| j + 1).collect(),
        m,
        dim_too_small: r < m,
        facets,
    })
}

/// Outcome of [`newton_preserving_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreservingReport {
    pub holds: bool,
    pub reasons: Vec<String>,
    /// The random multiplier used for the constructive confirmation.
    pub verified_with: Option<String>,
}

/// Checks `Γ₊(h) ⊆ Γ₊(f)` with `Γ₊(h) ∩ Δ` avoiding every compact face of
/// `Γ₊(f) ∩ Δ` on each face `Δ` met by `supp h`. When it holds, the Newton
/// polyhedron of `f + c h` is confirmed to equal that of `f` for a random `c`.
pub fn newton_preserving_check(
    x: &ToricVariety,
    f: &LatticePolynomial,
    h: &LatticePolynomial,
    seed: u64,
) -> Result<PreservingReport> {
    let mut reasons = Vec::new();
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("base polynomial".into()));
    }
    if h.is_zero() {
        return Ok(PreservingReport {
            holds: true,
            reasons,
            verified_with: None,
        });
    }
    let full = x.full_face();
    let gamma_f = restricted_polyhedron(f, full)?;
    for v in h.terms.keys() {
        if !x.sigma_dual.contains(v) {
            return Err(Error::SupportOutsideCone(v.to_string()));
        }
        if !gamma_f.contains(full, v) {
            reasons.push(format!("{v} lies outside the Newton polyhedron of the base"));
        }
    }
    if reasons.is_empty() {
        for face in x.faces.iter().filter(|fc| fc.dim > 0 && h.meets(fc)) {
            let on_f = restricted_polyhedron(f, face)?;
            let pts: Vec<Vec<BigInt>> = h
                .terms
                .keys()
                .filter(|v| face.contains(v))
                .map(|v| to_local(face, v))
                .collect::<Result<_>>()?;
            for (verts, u) in on_f.all_compact_faces() {
                let level = dot(&u, &verts[0]);
                let min = pts.iter().map(|p| dot(&u, p)).min().expect("h meets the face");
                if min <= level {
                    let shown: Vec<String> = verts
                        .iter()
                        .map(|v| on_f.basis.point_from_coords(v).to_string())
                        .collect();
                    reasons.push(format!(
                        "on face {} the deformation touches the compact face [{}]",
                        face.id,
                        shown.join(", ")
                    ));
                }
            }
        }
    }
    let mut verified_with = None;
    if reasons.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_rational(&mut rng);
        let deformed = f.add(&h.scale(&c));
        let a = restricted_polyhedron(&deformed, full)?;
        if a.vertices != gamma_f.vertices {
            reasons.push(format!(
                "Newton polyhedron changes for multiplier {}",
                fmt_rational(&c)
            ));
        } else {
            verified_with = Some(fmt_rational(&c));
        }
    }
    Ok(PreservingReport {
        holds: reasons.is_empty(),
        reasons,
        verified_with,
    })
}

/// Nonzero rational with numerator and denominator bounded by 1000.
pub(crate) fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    loop {
        let n: i64 = rng.gen_range(-1000..=1000);
        let d: i64 = rng.gen_range(1..=1000);
        if n != 0 {
            return BigRational::new(BigInt::from(n), BigInt::from(d));
        }
    }
}

/// `f_Δ` data for every face meeting the function, in face order.
pub fn all_face_data(
    x: &ToricVariety,
    ci: &CompleteIntersection,
    mode: VolumeConvention,
) -> Result<Vec<FaceInvariantData>> {
    x.faces
        .iter()
        .filter(|fc| ci.function().meets(fc))
        .map(|fc| face_invariant_data(x, ci, fc, mode))
        .collect()
}

/// True when `u` is strictly positive on every ray of the face (local coords).
pub(crate) fn in_open_dual(u: &[BigInt], face: &Face) -> bool {
    crate::polyhedral::newton_polyhedron::local_rays(face)
        .iter()
        .all(|r| dot(u, r).is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::from_i64(c)
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn quadric_cone() -> ToricVariety {
        ToricVariety::new(
            &[pt(&[0, 1]), pt(&[2, -1])],
            vec![pt(&[1, 0]), pt(&[1, 1]), pt(&[1, 2])],
        )
        .unwrap()
    }

    fn poly(terms: &[(&[i64], i64)]) -> LatticePolynomial {
        LatticePolynomial::from_terms(terms.iter().map(|(v, c)| (pt(v), q(*c))))
    }

    #[test]
    fn cusp_face_data_on_full_face() {
        let x = quadric_cone();
        let g = poly(&[(&[1, 0], 1), (&[2, 4], -1)]);
        let f = poly(&[(&[2, 2], 1), (&[3, 0], -1)]);
        let ci = CompleteIntersection::pair(g, f, true);
        let data = face_invariant_data(&x, &ci, &x.faces[3], VolumeConvention::PaperExample).unwrap();
        assert_eq!(data.i_set, vec![1]);
        assert_eq!(data.m, 2);
        let us: Vec<LatticePoint> = data.facets.iter().map(|f| f.u.clone()).collect();
        assert_eq!(us, vec![pt(&[2, 1]), pt(&[4, -1])]);
        assert!(data.facets.iter().all(|f| f.d == BigInt::from(6)));
        assert!(data.facets.iter().all(|f| f.k.value == BigInt::one()));
        let strict = face_invariant_data(&x, &ci, &x.faces[3], VolumeConvention::Strict).unwrap();
        assert_eq!(strict.facets[0].k.value, BigInt::zero());
        assert_eq!(strict.facets[1].k.value, BigInt::one());
        for fd in &data.facets {
            assert!(in_open_dual(&fd.u.0, &x.faces[3]));
        }
    }

    #[test]
    fn ray_faces_of_the_cusp() {
        let x = quadric_cone();
        let f = poly(&[(&[2, 2], 1), (&[3, 0], -1)]);
        let ci = CompleteIntersection::hypersurface(f);
        let d1 = face_invariant_data(&x, &ci, &x.faces[1], VolumeConvention::Strict).unwrap();
        assert_eq!(d1.m, 1);
        assert_eq!(d1.facets.len(), 1);
        assert_eq!(d1.facets[0].vertices, vec![pt(&[3, 0])]);
        assert_eq!(d1.facets[0].d, BigInt::from(3));
        assert_eq!(d1.facets[0].k.value, BigInt::one());
        assert_eq!(
            face_invariant_data(&x, &ci, &x.faces[2], VolumeConvention::Strict),
            Err(Error::FaceMissesNewtonPolygon(2))
        );
    }

    #[test]
    fn preserving_examples() {
        let x = quadric_cone();
        let f = poly(&[(&[2, 2], 1), (&[3, 0], -1)]);
        let h = poly(&[(&[4, 4], -1)]);
        assert!(newton_preserving_check(&x, &f, &h, 7).unwrap().holds);
        let g = poly(&[(&[1, 0], 1), (&[2, 4], -1)]);
        let l = poly(&[(&[3, 6], 1)]);
        assert!(newton_preserving_check(&x, &g, &l, 7).unwrap().holds);
        let same = newton_preserving_check(&x, &f, &f, 7).unwrap();
        assert!(!same.holds);
        assert!(!same.reasons.is_empty());
        let below = poly(&[(&[1, 1], 1)]);
        assert!(!newton_preserving_check(&x, &f, &below, 7).unwrap().holds);
    }

    #[test]
    fn monomials_map_through_generators() {
        let x = quadric_cone();
        assert_eq!(x.monomial(&[0, 2, 0]).unwrap(), pt(&[2, 2]));
        assert_eq!(x.monomial(&[3, 0, 0]).unwrap(), pt(&[3, 0]));
        assert_eq!(x.monomial(&[0, 0, 2]).unwrap(), pt(&[2, 4]));
        assert!(matches!(x.monomial(&[1, 0]), Err(Error::LengthMismatch { .. })));
        assert!(ToricVariety::affine_space(3).unwrap().is_affine_space());
        assert!(!x.is_affine_space());
    }
}
