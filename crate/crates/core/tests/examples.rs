use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use toric_newton::invariants::{
    brasselet_ci_prepolar, brasselet_hypersurface, bruce_roberts, euler_obstruction_of_function,
    euler_obstruction_origin, family_constancy_report, gsv_index, morse_number, EulerTable, Family,
};
use toric_newton::io::parse_polynomial;
use toric_newton::lattice::LatticePoint;
use toric_newton::newton::{
    face_invariant_data, newton_preserving_check, CompleteIntersection, LatticePolynomial,
    ToricVariety,
};
use toric_newton::nondegeneracy::nondegeneracy_heuristic;
use toric_newton::toric_surface::{
    has_isolated_singularity, has_pure_end_powers, is_prepolar, orbit_decomposition,
    PrepolarVerdict, SurfaceData,
};
use toric_newton::volume::VolumeConvention;
use toric_newton::Error;

fn pt(c: &[i64]) -> LatticePoint {
    LatticePoint::from_i64(c)
}

fn quadric() -> (SurfaceData, ToricVariety) {
    let s = SurfaceData::new(2, 1).unwrap();
    let x = s.variety().unwrap();
    (s, x)
}

fn on(x: &ToricVariety, text: &str) -> LatticePolynomial {
    parse_polynomial(text, x.generators.len()).unwrap().to_lattice(x).unwrap()
}

#[test]
fn parsed_inputs_land_on_the_expected_lattice_points() {
    let (_, x) = quadric();
    let f = on(&x, "z2^2 - z1^3");
    let one = BigRational::one();
    assert_eq!(f.terms.get(&pt(&[2, 2])), Some(&one));
    assert_eq!(f.terms.get(&pt(&[3, 0])), Some(&-one.clone()));
    let g = on(&x, "z1 - z3^2");
    assert_eq!(g.support(), vec![pt(&[1, 0]), pt(&[2, 4])]);
}

#[test]
fn face_data_on_the_rays() {
    let (_, x) = quadric();
    let f = CompleteIntersection::hypersurface(on(&x, "z2^2 - z1^3"));
    let ray = &x.faces[1];
    assert_eq!(ray.span_rays, vec![pt(&[1, 0])]);
    let data = face_invariant_data(&x, &f, ray, VolumeConvention::PaperExample).unwrap();
    assert_eq!(data.m, 1);
    assert_eq!(data.facets.len(), 1);
    assert_eq!(data.facets[0].vertices, vec![pt(&[3, 0])]);
    assert_eq!(data.facets[0].d, BigInt::from(3));
    assert_eq!(data.facets[0].k.value, BigInt::one());
    assert_eq!(
        face_invariant_data(&x, &f, &x.faces[2], VolumeConvention::PaperExample).unwrap_err(),
        Error::FaceMissesNewtonPolygon(2)
    );
}

#[test]
fn non_degenerate_pair_of_the_cusp_example() {
    let (_, x) = quadric();
    let ci = CompleteIntersection::pair(on(&x, "z1 - z3^2"), on(&x, "z2^2 - z1^3"), true);
    assert!(!nondegeneracy_heuristic(&x, &ci, 100, 17).unwrap().is_degenerate());
}

#[test]
fn plane_curves() {
    let c2 = ToricVariety::affine_space(2).unwrap();
    let ones = EulerTable::ones(&c2);
    let a1 = brasselet_hypersurface(&c2, &on(&c2, "x^2 + y^2"), &ones, VolumeConvention::Strict).unwrap();
    assert_eq!(a1.total, BigInt::zero());
    let eu0 = euler_obstruction_origin(&c2, &ones, 5).unwrap().value;
    assert_eq!(eu0, BigInt::one());
    let lin = brasselet_hypersurface(&c2, &on(&c2, "2x - 7y"), &ones, VolumeConvention::Strict).unwrap();
    assert_eq!(euler_obstruction_of_function(&eu0, &lin), BigInt::zero());
    let gsv = gsv_index(&c2, &on(&c2, "x - y"), &on(&c2, "x + 2y"), VolumeConvention::Strict).unwrap();
    assert_eq!(gsv.value, BigInt::zero());
}

#[test]
fn smooth_germs_have_euler_obstruction_one() {
    for d in 2..=3 {
        let x = ToricVariety::affine_space(d).unwrap();
        let e = euler_obstruction_origin(&x, &EulerTable::smooth_strata(&x), 8).unwrap();
        assert_eq!(e.value, BigInt::one());
    }
}

#[test]
fn generic_linear_form_on_the_quadric_cone() {
    let (_, x) = quadric();
    let eu = EulerTable::ones(&x);
    let eu0 = euler_obstruction_origin(&x, &eu, 2).unwrap().value;
    let b = brasselet_hypersurface(&x, &on(&x, "3z1 - 5z2 + 11z3"), &eu, VolumeConvention::Strict).unwrap();
    assert_eq!(b.total, eu0);
    assert_eq!(euler_obstruction_of_function(&eu0, &b), BigInt::zero());
}

#[test]
fn morse_count_vanishes_for_equal_reports() {
    let (_, x) = quadric();
    let b = brasselet_hypersurface(&x, &on(&x, "z2^2 - z1^3"), &EulerTable::ones(&x), VolumeConvention::Strict)
        .unwrap();
    let m = morse_number(&b, &b, 2);
    assert_eq!(m.value, BigInt::zero());
    assert!(m.warning.is_none());
}

#[test]
fn deformed_prepolar_numbers() {
    let (_, x) = quadric();
    let eu = EulerTable::ones(&x);
    for (s, t) in [(0, 0), (1, 1), (2, -1), (-1, 2)] {
        let f = on(&x, &format!("z2^2 - z1^3 - {t}*z1^2*z3^2").replace("- -", "+ "));
        let g = on(&x, &format!("z1 - z3^2 + {s}*z3^3"));
        let ci = CompleteIntersection::pair(g, f, true);
        let r = brasselet_ci_prepolar(&x, &ci, &eu, VolumeConvention::PaperExample).unwrap();
        assert_eq!(r.total, BigInt::from(12), "s={s} t={t}");
    }
}

#[test]
fn bruce_roberts_family_is_constant() {
    let c3 = ToricVariety::affine_space(3).unwrap();
    let g = on(&c3, "x*z - y^2");
    let base = bruce_roberts(&c3, &g, &on(&c3, "3x - 2y + 5z"), VolumeConvention::Strict, 1).unwrap();
    assert_eq!(base.value, BigInt::one());
    for t in [1i64, -1, 2] {
        let f = on(&c3, &format!("3x - 2y + 5z + {t}*x*y"));
        let v = bruce_roberts(&c3, &g, &f, VolumeConvention::Strict, 1).unwrap();
        assert_eq!(v.value, base.value);
    }
}

#[test]
fn preserving_check_examples() {
    let (_, x) = quadric();
    let f = on(&x, "z2^2 - z1^3");
    let g = on(&x, "z1 - z3^2");
    assert!(newton_preserving_check(&x, &f, &on(&x, "-z1^2*z3^2"), 1).unwrap().holds);
    assert!(newton_preserving_check(&x, &g, &on(&x, "z3^3"), 1).unwrap().holds);
    assert!(!newton_preserving_check(&x, &f, &f, 1).unwrap().holds);
}

#[test]
fn family_edge_cases() {
    let (_, x) = quadric();
    let eu = EulerTable::ones(&x);
    let f = on(&x, "z2^2 - z1^3");
    let samples = vec![(BigRational::zero(), BigRational::zero()), (BigRational::one(), BigRational::one())];
    let plain = Family { g: None, f: f.clone(), h: vec![], l: vec![] };
    let r = family_constancy_report(&x, &plain, &eu, &samples, VolumeConvention::PaperExample, 0).unwrap();
    assert!(r.constant);
    assert_eq!(r.samples[1].b_x, BigInt::from(-3));
    let bad = Family { g: None, f: f.clone(), h: vec![f], l: vec![] };
    assert_eq!(
        family_constancy_report(&x, &bad, &eu, &samples, VolumeConvention::PaperExample, 0).unwrap_err(),
        Error::ConditionViolated("h1".into())
    );
}

#[test]
fn surface_hypotheses() {
    let (s, _) = quadric();
    let p = |t: &str| parse_polynomial(t, 3).unwrap();
    assert!(has_isolated_singularity(&p("z1 - z3^2"), &s).unwrap());
    assert!(!has_isolated_singularity(&p("z2^2 - z1^3"), &s).unwrap());
    assert!(has_isolated_singularity(&p("z1 + z3"), &s).unwrap());
    for g in ["z1 - z3^2", "z2^2 - z1^3", "z2", "z1 + z3 + z2^5"] {
        assert_eq!(has_isolated_singularity(&p(g), &s).unwrap(), has_pure_end_powers(&p(g), &s));
    }
    assert_eq!(is_prepolar(&p("z1 - z3^2"), &p("z2^2 - z1^3"), &s).unwrap(), PrepolarVerdict::Prepolar);
    assert!(!is_prepolar(&p("z2^2 - z1^3"), &p("z2^2 - z1^3"), &s).unwrap().is_prepolar());
    assert!(!is_prepolar(&p("z2"), &p("z1 + z3"), &s).unwrap().is_prepolar());
}

#[test]
fn orbits_of_the_quadric_cone() {
    let (s, _) = quadric();
    let orbits = orbit_decomposition(&s).unwrap();
    assert_eq!(orbits.iter().map(|o| o.dim).collect::<Vec<_>>(), vec![0, 1, 1, 2]);
    assert_eq!(orbits[1].parametrization, vec![Some(pt(&[1, 0])), None, None]);
    assert_eq!(orbits[2].parametrization, vec![None, None, Some(pt(&[1, 2]))]);
    assert!(orbits[3].parametrization.iter().all(Option::is_some));
}
