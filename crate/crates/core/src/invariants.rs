//! Brasselet numbers and the invariants derived from them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{serialize_bigint, sublattice_basis, JsonInt, LatticePoint};
use crate::newton::{
    face_invariant_data, facet_data, fmt_rational, newton_preserving_check, restricted_polyhedron,
    CompleteIntersection, LatticePolynomial, PreservingReport, ToricVariety,
};
use crate::nondegeneracy::mix_seed;
use crate::polyhedral::Face;
use crate::toric_surface::prepolar_verdict;
use crate::volume::{normalized_volume, LatticePolytope, VolumeConvention};

/// Local Euler obstruction values along the orbits `T_Δ`, keyed by face id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EulerTable {
    pub values: BTreeMap<usize, BigInt>,
    pub origin_value: Option<BigInt>,
}

impl EulerTable {
    /// 1 on every positive-dimensional face.
    pub fn ones(x: &ToricVariety) -> Self {
        EulerTable {
            values: x
                .faces
                .iter()
                .filter(|f| f.dim > 0)
                .map(|f| (f.id, BigInt::one()))
                .collect(),
            origin_value: None,
        }
    }

    /// 1 on every positive-dimensional face along which `X` is smooth; other
    /// faces are left for the caller to fill in.
    pub fn smooth_strata(x: &ToricVariety) -> Self {
        EulerTable {
            values: x
                .faces
                .iter()
                .filter(|f| f.dim > 0 && f.dual_face_is_regular())
                .map(|f| (f.id, BigInt::one()))
                .collect(),
            origin_value: None,
        }
    }

    pub fn set(&mut self, face_id: usize, value: BigInt) {
        self.values.insert(face_id, value);
    }

    pub fn get(&self, face: &Face, full_dim: usize) -> Result<BigInt> {
        if face.dim == full_dim {
            return Ok(BigInt::one());
        }
        self.values
            .get(&face.id)
            .cloned()
            .ok_or(Error::EulerTableIncomplete(face.id))
    }
}

/// One facet's share of a face term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetTerm {
    pub vertices: Vec<LatticePoint>,
    pub u: LatticePoint,
    pub d: Option<BigInt>,
    pub k: Option<BigInt>,
    /// `Vol_Z(conv(β_i ∪ {0}))` or `d_i K_i`.
    pub value: BigInt,
}

impl Serialize for FacetTerm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FacetTerm", 5)?;
        st.serialize_field("vertices", &self.vertices)?;
        st.serialize_field("u", &self.u)?;
        st.serialize_field("d", &self.d.as_ref().map(JsonInt))?;
        st.serialize_field("k", &self.k.as_ref().map(JsonInt))?;
        st.serialize_field("value", &JsonInt(&self.value))?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceTerm {
    pub face_id: usize,
    pub face_dim: usize,
    pub m: usize,
    pub sign: i32,
    pub volume_sum: BigInt,
    pub eu_value: BigInt,
    pub contribution: BigInt,
    pub facets: Vec<FacetTerm>,
}

impl Serialize for FaceTerm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FaceTerm", 8)?;
        st.serialize_field("face_id", &self.face_id)?;
        st.serialize_field("face_dim", &self.face_dim)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("sign", &self.sign)?;
        st.serialize_field("volume_sum", &JsonInt(&self.volume_sum))?;
        st.serialize_field("eu_value", &JsonInt(&self.eu_value))?;
        st.serialize_field("contribution", &JsonInt(&self.contribution))?;
        st.serialize_field("facets", &self.facets)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedFace {
    pub face_id: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub invariant: &'static str,
    pub per_face_terms: Vec<FaceTerm>,
    pub skipped_faces: Vec<SkippedFace>,
    pub total: BigInt,
    pub mode: VolumeConvention,
    pub assumptions: Vec<String>,
}

impl Serialize for InvariantReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("InvariantReport", 6)?;
        st.serialize_field("invariant", self.invariant)?;
        st.serialize_field("mode", &self.mode)?;
        st.serialize_field("per_face_terms", &self.per_face_terms)?;
        st.serialize_field("skipped_faces", &self.skipped_faces)?;
        st.serialize_field("total", &JsonInt(&self.total))?;
        st.serialize_field("assumptions", &self.assumptions)?;
        st.end()
    }
}

impl InvariantReport {
    fn new(invariant: &'static str, mode: VolumeConvention) -> Self {
        InvariantReport {
            invariant,
            per_face_terms: Vec::new(),
            skipped_faces: Vec::new(),
            total: BigInt::zero(),
            mode,
            assumptions: Vec::new(),
        }
    }

    fn push(&mut self, term: FaceTerm) {
        self.total += &term.contribution;
        self.per_face_terms.push(term);
    }

    fn skip(&mut self, face: &Face, reason: &str) {
        self.skipped_faces.push(SkippedFace {
            face_id: face.id,
            reason: reason.to_string(),
        });
    }

    /// Recomputes the total from the per-face terms.
    pub fn recomputed_total(&self) -> BigInt {
        self.per_face_terms
            .iter()
            .map(|t| BigInt::from(t.sign) * &t.volume_sum * &t.eu_value)
            .sum()
    }
}

fn sign(exp: usize) -> i32 {
    if exp % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_function(f: &LatticePolynomial) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("function".into()));
    }
    if f.has_origin() {
        return Err(Error::OriginInSupport);
    }
    Ok(())
}

fn standard_lattice(r: usize) -> Result<crate::lattice::SublatticeBasis> {
    let unit: Vec<LatticePoint> = (0..r)
        .map(|i| {
            let mut v = vec![0i64; r];
            v[i] = 1;
            LatticePoint::from_i64(&v)
        })
        .collect();
    sublattice_basis(&unit)
}

/// `Σ_{Δ ∩ supp f ≠ ∅} (-1)^{dim Δ - 1} (Σ_i Vol_Z(conv(β_i ∪ {0}))) Eu(T_Δ)`.
pub fn brasselet_hypersurface(
    x: &ToricVariety,
    f: &LatticePolynomial,
    eu: &EulerTable,
    mode: VolumeConvention,
) -> Result<InvariantReport> {
    check_function(f)?;
    CompleteIntersection::hypersurface(f.clone()).validate(x)?;
    let mut rep = InvariantReport::new("brasselet_hypersurface", mode);
    for face in &x.faces {
        if face.dim == 0 || !f.meets(face) {
            rep.skip(face, "support misses the face");
            continue;
        }
        let r = face.dim;
        let poly = restricted_polyhedron(f, face)?;
        let lattice = standard_lattice(r)?;
        let mut facets = Vec::new();
        let mut volume_sum = BigInt::zero();
        for cf in poly.compact_faces(r - 1).facets() {
            let mut pts: Vec<LatticePoint> =
                cf.local_vertices.iter().cloned().map(LatticePoint).collect();
            pts.push(LatticePoint::zero(r));
            let vol = normalized_volume(&LatticePolytope::new(pts, lattice.clone()), r)?;
            volume_sum += &vol;
            facets.push(FacetTerm {
                vertices: cf.vertices.clone(),
                u: cf.inner_normal.clone().expect("facets carry normals"),
                d: None,
                k: None,
                value: vol,
            });
        }
        let eu_value = eu.get(face, x.d)?;
        let s = sign(r - 1);
        let contribution = BigInt::from(s) * &volume_sum * &eu_value;
        rep.push(FaceTerm {
            face_id: face.id,
            face_dim: r,
            m: 1,
            sign: s,
            volume_sum,
            eu_value,
            contribution,
            facets,
        });
    }
    Ok(rep)
}

fn facet_terms(data: &crate::newton::FaceInvariantData) -> (BigInt, Vec<FacetTerm>) {
    let mut sum = BigInt::zero();
    let facets = data
        .facets
        .iter()
        .map(|fd| {
            let value = &fd.d * &fd.k.value;
            sum += &value;
            FacetTerm {
                vertices: fd.vertices.clone(),
                u: fd.u.clone(),
                d: Some(fd.d.clone()),
                k: Some(fd.k.value.clone()),
                value,
            }
        })
        .collect();
    (sum, facets)
}

/// `Σ_{dim Δ ≥ m(Δ)} (-1)^{dim Δ - m(Δ)} (Σ_i d_i K_i) Eu_{X^g}(T_Δ ∩ X^g)`.
pub fn brasselet_ci(
    x: &ToricVariety,
    ci: &CompleteIntersection,
    eu_on_xg: &EulerTable,
    mode: VolumeConvention,
) -> Result<InvariantReport> {
    check_function(ci.function())?;
    let mut rep = InvariantReport::new("brasselet_ci", mode);
    rep.assumptions.push(format!(
        "whitney stratification of the complete intersection asserted: {}",
        ci.whitney_assertion
    ));
    for face in &x.faces {
        if face.dim == 0 || !ci.function().meets(face) {
            rep.skip(face, "function support misses the face");
            continue;
        }
        let data = face_invariant_data(x, ci, face, mode)?;
        if data.dim_too_small {
            rep.skip(face, "face dimension below m");
            continue;
        }
        let (volume_sum, facets) = facet_terms(&data);
        let eu_value = eu_on_xg.get(face, x.d)?;
        let s = sign(face.dim - data.m);
        let contribution = BigInt::from(s) * &volume_sum * &eu_value;
        rep.push(FaceTerm {
            face_id: face.id,
            face_dim: face.dim,
            m: data.m,
            sign: s,
            volume_sum,
            eu_value,
            contribution,
            facets,
        });
    }
    Ok(rep)
}

/// Prepolar variant: `m(Δ) = 2` on every face of dimension at least 2 met by
/// `f`, weighted by `Eu_X(T_Δ)`.
pub fn brasselet_ci_prepolar(
    x: &ToricVariety,
    ci: &CompleteIntersection,
    eu_on_x: &EulerTable,
    mode: VolumeConvention,
) -> Result<InvariantReport> {
    if ci.k() != 2 {
        return Err(Error::InvalidInput(format!(
            "the prepolar formula needs exactly two components, got {}",
            ci.k()
        )));
    }
    let g = &ci.components[0];
    let f = ci.function();
    check_function(f)?;
    check_function(g)?;
    let mut rep = InvariantReport::new("brasselet_ci_prepolar", mode);
    if x.d == 2 {
        let verdict = prepolar_verdict(x, g, f)?;
        if !verdict.is_prepolar() {
            return Err(Error::NotPrepolar(format!("{verdict:?}")));
        }
        rep.assumptions.push("prepolarity verified on the surface".into());
    } else {
        rep.assumptions.push("prepolarity asserted by the caller".into());
    }
    for face in &x.faces {
        if face.dim < 2 || !f.meets(face) {
            rep.skip(face, "face dimension below 2 or function support misses it");
            continue;
        }
        if !g.meets(face) {
            return Err(Error::NotPrepolar(format!(
                "the hypersurface misses the orbit of face {}",
                face.id
            )));
        }
        let comps = vec![restricted_polyhedron(g, face)?, restricted_polyhedron(f, face)?];
        let data = facet_data(face, vec![0], comps, mode)?;
        let (volume_sum, facets) = facet_terms(&data);
        let eu_value = eu_on_x.get(face, x.d)?;
        let s = sign(face.dim - 2);
        let contribution = BigInt::from(s) * &volume_sum * &eu_value;
        rep.push(FaceTerm {
            face_id: face.id,
            face_dim: face.dim,
            m: 2,
            sign: s,
            volume_sum,
            eu_value,
            contribution,
            facets,
        });
    }
    Ok(rep)
}

/// `Eu_f(0) = Eu(0) - B`.
pub fn euler_obstruction_of_function(eu_origin: &BigInt, b: &InvariantReport) -> BigInt {
    eu_origin - &b.total
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuOriginReport {
    pub value: BigInt,
    pub seed: u64,
    /// Coefficients of the two random linear forms.
    pub draws: Vec<Vec<i64>>,
}

impl Serialize for EuOriginReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("EuOriginReport", 3)?;
        st.serialize_field("value", &JsonInt(&self.value))?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("draws", &self.draws)?;
        st.end()
    }
}

fn linear_form(x: &ToricVariety, coeffs: &[i64]) -> LatticePolynomial {
    LatticePolynomial::from_terms(
        x.generators
            .iter()
            .zip(coeffs)
            .map(|(g, &c)| (g.clone(), BigRational::from_integer(BigInt::from(c)))),
    )
}

fn draw_coefficients(n: usize, seed: u64) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| loop {
            let c: i64 = rng.gen_range(-1000..=1000);
            if c != 0 {
                break c;
            }
        })
        .collect()
}

/// Runs `b` on two random linear forms and on the coefficient-free one and
/// returns the common value.
fn agree_on_linear_forms<F>(x: &ToricVariety, seed: u64, mut b: F) -> Result<EuOriginReport>
where
    F: FnMut(&LatticePolynomial) -> Result<BigInt>,
{
    let n = x.generators.len();
    let draws = vec![
        draw_coefficients(n, mix_seed(seed, &[1])),
        draw_coefficients(n, mix_seed(seed, &[2])),
    ];
    let free = b(&linear_form(x, &vec![1; n]))?;
    for d in &draws {
        let v = b(&linear_form(x, d))?;
        if v != free {
            return Err(Error::GenericityFailure(free.to_string(), v.to_string()));
        }
    }
    Ok(EuOriginReport {
        value: free,
        seed,
        draws,
    })
}

/// `Eu_X(0) = B_{L,X}(0)` for a generic linear form `L`.
pub fn euler_obstruction_origin(
    x: &ToricVariety,
    eu_positive_faces: &EulerTable,
    seed: u64,
) -> Result<EuOriginReport> {
    agree_on_linear_forms(x, seed, |l| {
        Ok(brasselet_hypersurface(x, l, eu_positive_faces, VolumeConvention::Strict)?.total)
    })
}

/// `Eu_{X^g}(0) = B_{L,X^g}(0)` where `X^g = {g_1 = ... = 0}`.
pub fn euler_obstruction_origin_on_ci(
    x: &ToricVariety,
    g: &[LatticePolynomial],
    eu_on_xg: &EulerTable,
    mode: VolumeConvention,
    seed: u64,
) -> Result<EuOriginReport> {
    agree_on_linear_forms(x, seed, |l| {
        let mut comps = g.to_vec();
        comps.push(l.clone());
        let ci = CompleteIntersection {
            components: comps,
            whitney_assertion: true,
        };
        Ok(brasselet_ci(x, &ci, eu_on_xg, mode)?.total)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorseReport {
    #[serde(serialize_with = "serialize_bigint")]
    pub value: BigInt,
    pub warning: Option<String>,
}

/// `n = (-1)^{d-1} (B_{f,X}(0) - B_{f,X^g}(0))`.
pub fn morse_number(b_on_x: &InvariantReport, b_on_xg: &InvariantReport, d: usize) -> MorseReport {
    let value = BigInt::from(sign(d - 1)) * (&b_on_x.total - &b_on_xg.total);
    let mut warning = None;
    if value < BigInt::zero() {
        warning = Some("negative Morse count: a recorded assumption does not hold".into());
    } else if b_on_x.mode != b_on_xg.mode {
        warning = Some("the two Brasselet numbers use different volume conventions".into());
    }
    MorseReport { value, warning }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GsvReport {
    #[serde(serialize_with = "serialize_bigint")]
    pub value: BigInt,
    pub on_x: InvariantReport,
    pub on_xg: InvariantReport,
}

/// Difference of the two Brasselet-type sums with constant weight 1.
pub fn gsv_index(
    x: &ToricVariety,
    g: &LatticePolynomial,
    f: &LatticePolynomial,
    mode: VolumeConvention,
) -> Result<GsvReport> {
    let ones = EulerTable::ones(x);
    let on_x = brasselet_hypersurface(x, f, &ones, mode)?;
    let ci = CompleteIntersection::pair(g.clone(), f.clone(), true);
    let on_xg = brasselet_ci_prepolar(x, &ci, &ones, mode)?;
    Ok(GsvReport {
        value: &on_x.total - &on_xg.total,
        on_x,
        on_xg,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MilnorReport {
    #[serde(serialize_with = "serialize_bigint")]
    pub mu: BigInt,
    #[serde(serialize_with = "serialize_bigint")]
    pub euler_characteristic: BigInt,
    pub n: usize,
    /// The support meets every coordinate axis.
    pub convenient: bool,
}

/// `μ = (-1)^{n-1} (χ - 1)` with `χ` the Brasselet number on `C^n`.
pub fn milnor_number(x: &ToricVariety, f: &LatticePolynomial) -> Result<MilnorReport> {
    if !x.is_affine_space() {
        return Err(Error::InvalidInput(
            "the Milnor number is computed on affine space only".into(),
        ));
    }
    let chi = brasselet_hypersurface(x, f, &EulerTable::ones(x), VolumeConvention::Strict)?.total;
    let n = x.d;
    let mu = BigInt::from(sign(n - 1)) * (&chi - BigInt::one());
    let convenient = x.faces.iter().filter(|fc| fc.dim == 1).all(|fc| f.meets(fc));
    Ok(MilnorReport {
        mu,
        euler_characteristic: chi,
        n,
        convenient,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruceRobertsReport {
    #[serde(serialize_with = "serialize_bigint")]
    pub value: BigInt,
    #[serde(serialize_with = "serialize_bigint")]
    pub milnor: BigInt,
    #[serde(serialize_with = "serialize_bigint")]
    pub eu_xg_origin: BigInt,
    #[serde(serialize_with = "serialize_bigint")]
    pub brasselet_f_xg: BigInt,
    #[serde(serialize_with = "serialize_bigint")]
    pub eu_f_xg: BigInt,
}

/// `μ_BR = μ(f) + Eu_{X^g}(0) + (-1)^{n-1} (Eu_{f,X^g}(0) + 1)` on `C^n`.
pub fn bruce_roberts(
    x: &ToricVariety,
    g: &LatticePolynomial,
    f: &LatticePolynomial,
    mode: VolumeConvention,
    seed: u64,
) -> Result<BruceRobertsReport> {
    let mu = milnor_number(x, f)?.mu;
    let ones = EulerTable::ones(x);
    let eu0 = euler_obstruction_origin_on_ci(x, std::slice::from_ref(g), &ones, mode, seed)?.value;
    let ci = CompleteIntersection::pair(g.clone(), f.clone(), true);
    let b = brasselet_ci(x, &ci, &ones, mode)?.total;
    let eu_f = &eu0 - &b;
    let n = x.d;
    let value = &mu + &eu0 + BigInt::from(sign(n - 1)) * (&eu_f + BigInt::one());
    Ok(BruceRobertsReport {
        value,
        milnor: mu,
        eu_xg_origin: eu0,
        brasselet_f_xg: b,
        eu_f_xg: eu_f,
    })
}

/// Invariants evaluated at one parameter sample `(s, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleRow {
    pub s: BigRational,
    pub t: BigRational,
    pub b_x: BigInt,
    pub eu_f: BigInt,
    pub b_xg: Option<BigInt>,
    pub morse: Option<BigInt>,
    pub gsv: Option<BigInt>,
}

impl SampleRow {
    fn label(&self) -> String {
        format!("(s={}, t={})", fmt_rational(&self.s), fmt_rational(&self.t))
    }

    fn values(&self) -> Vec<(&'static str, Option<&BigInt>)> {
        vec![
            ("B_X", Some(&self.b_x)),
            ("Eu_f", Some(&self.eu_f)),
            ("B_Xg", self.b_xg.as_ref()),
            ("n", self.morse.as_ref()),
            ("GSV", self.gsv.as_ref()),
        ]
    }
}

impl Serialize for SampleRow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SampleRow", 7)?;
        st.serialize_field("s", &fmt_rational(&self.s))?;
        st.serialize_field("t", &fmt_rational(&self.t))?;
        st.serialize_field("b_x", &JsonInt(&self.b_x))?;
        st.serialize_field("eu_f", &JsonInt(&self.eu_f))?;
        st.serialize_field("b_xg", &self.b_xg.as_ref().map(JsonInt))?;
        st.serialize_field("morse", &self.morse.as_ref().map(JsonInt))?;
        st.serialize_field("gsv", &self.gsv.as_ref().map(JsonInt))?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelledCheck {
    pub name: String,
    pub report: PreservingReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub mode: VolumeConvention,
    pub conditions: Vec<LabelledCheck>,
    pub samples: Vec<SampleRow>,
    pub constant: bool,
}

/// A base pair `(g, f)` (or just `f`) and the deformations
/// `f_t = f + t Σ h_j`, `g_s = g + s Σ l_i`.
#[derive(Debug, Clone)]
pub struct Family {
    pub g: Option<LatticePolynomial>,
    pub f: LatticePolynomial,
    pub h: Vec<LatticePolynomial>,
    pub l: Vec<LatticePolynomial>,
}

/// The default parameter grid `{0, 1, -1, 2}²`.
pub fn default_samples() -> Vec<(BigRational, BigRational)> {
    let vals = [0i64, 1, -1, 2];
    let mut out = Vec::new();
    for &s in &vals {
        for &t in &vals {
            out.push((
                BigRational::from_integer(BigInt::from(s)),
                BigRational::from_integer(BigInt::from(t)),
            ));
        }
    }
    out
}

/// Evaluates the invariants along a family and checks they do not move.
pub fn family_constancy_report(
    x: &ToricVariety,
    family: &Family,
    eu: &EulerTable,
    samples: &[(BigRational, BigRational)],
    mode: VolumeConvention,
    seed: u64,
) -> Result<FamilyReport> {
    let mut conditions = Vec::new();
    for (j, h) in family.h.iter().enumerate() {
        let name = format!("h{}", j + 1);
        let report = newton_preserving_check(x, &family.f, h, mix_seed(seed, &[10, j as u64]))?;
        if !report.holds {
            return Err(Error::ConditionViolated(name));
        }
        conditions.push(LabelledCheck { name, report });
    }
    if !family.l.is_empty() && family.g.is_none() {
        return Err(Error::InvalidInput("deformations of g given without g".into()));
    }
    if let Some(g) = &family.g {
        for (i, l) in family.l.iter().enumerate() {
            let name = format!("l{}", i + 1);
            let report = newton_preserving_check(x, g, l, mix_seed(seed, &[20, i as u64]))?;
            if !report.holds {
                return Err(Error::ConditionViolated(name));
            }
            conditions.push(LabelledCheck { name, report });
        }
    }

    let eu0 = euler_obstruction_origin(x, eu, seed)?.value;
    let sum = |ps: &[LatticePolynomial]| ps.iter().fold(LatticePolynomial::new(), |a, p| a.add(p));
    let h_sum = sum(&family.h);
    let l_sum = sum(&family.l);
    let mut rows: Vec<SampleRow> = Vec::new();
    for (s, t) in samples {
        let f_t = family.f.add(&h_sum.scale(t));
        let b_x = brasselet_hypersurface(x, &f_t, eu, mode)?;
        let eu_f = euler_obstruction_of_function(&eu0, &b_x);
        let mut row = SampleRow {
            s: s.clone(),
            t: t.clone(),
            b_x: b_x.total.clone(),
            eu_f,
            b_xg: None,
            morse: None,
            gsv: None,
        };
        if let Some(g) = &family.g {
            let g_s = g.add(&l_sum.scale(s));
            let ci = CompleteIntersection::pair(g_s.clone(), f_t.clone(), true);
            let b_xg = brasselet_ci_prepolar(x, &ci, eu, mode)?;
            row.morse = Some(morse_number(&b_x, &b_xg, x.d).value);
            row.b_xg = Some(b_xg.total);
            row.gsv = Some(gsv_index(x, &g_s, &f_t, mode)?.value);
        }
        if let Some(first) = rows.first() {
            for ((name, a), (_, b)) in first.values().into_iter().zip(row.values()) {
                if a != b {
                    return Err(Error::NotConstant {
                        invariant: name.to_string(),
                        first: first.label(),
                        second: row.label(),
                    });
                }
            }
        }
        rows.push(row);
    }
    Ok(FamilyReport {
        mode,
        conditions,
        samples: rows,
        constant: true,
    })
}
