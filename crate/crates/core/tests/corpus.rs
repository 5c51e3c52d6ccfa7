mod common;

use common::*;
use num_traits::Zero;
use ruledsym::algebra::parse::parse_unipoly;
use ruledsym::algebra::{rat, Field, NfElem, RatFunc, UniPoly};
use ruledsym::corpus::{self, Entry};
use ruledsym::isometry::{
    check_orthogonal, full_pipeline, group_closed, is_involutive, verify_symmetry, FixedLocus, Kind, Mode, Symmetry, SymmetryReport,
};
use ruledsym::phi::cmp_solutions;
use ruledsym::surface::RuledSurface;

fn all_mode(e: &Entry) -> (&'static RuledSurface, &'static SymmetryReport) {
    let a = analysed(e.name);
    (&a.surface, &a.report)
}

#[test]
fn every_reported_isometry_is_a_symmetry() {
    for e in corpus::ALL {
        let (s, r) = all_mode(e);
        assert!(r.count(Kind::Identity) == 1, "{}: identity missing", e.name);
        for f in &r.symmetries {
            assert!(check_orthogonal(&f.q), "{}: Q not orthogonal", e.name);
            assert!(verify_symmetry(s, &f.phi, &f.q, &f.b, &f.c), "{}", e.name);
            assert!(pointwise_holds(s, &f.q, &f.b, f), "{}: pointwise check failed for {:?}", e.name, f.kind());
        }
        assert!(group_closed(&r.symmetries), "{}: not a group", e.name);
    }
}

#[test]
fn distinct_isometries_have_distinct_reparametrizations() {
    for e in corpus::ALL {
        let (_, r) = all_mode(e);
        let n = r.symmetries.len();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (&r.symmetries[i].phi, &r.symmetries[j].phi);
                assert_ne!(cmp_solutions(a, b), std::cmp::Ordering::Equal, "{}", e.name);
            }
        }
    }
}

#[test]
fn cones_centred_at_the_origin_have_linear_symmetries() {
    for e in corpus::ALL.iter().filter(|e| e.p.is_none()) {
        let (_, r) = all_mode(e);
        for f in &r.symmetries {
            assert!(f.b.iter().all(|x| x.is_zero()), "{}", e.name);
            assert!(f.c.is_zero(), "{}", e.name);
        }
        let c = full_pipeline(&e.surface(), Mode::Conical).unwrap();
        assert!(same_sets(&r.symmetries.iter().collect::<Vec<_>>(), &c.symmetries.iter().collect::<Vec<_>>()));
    }
}

#[test]
fn involution_mode_is_the_involutive_subset() {
    for (a, inv) in corpus_all().iter().zip(corpus_involutions()) {
        let (e, r, inv) = (a.entry, &a.report, &inv.report);
        let filtered: Vec<&Symmetry> = r.symmetries.iter().filter(|f| is_involutive(f)).collect();
        let got: Vec<&Symmetry> = inv.symmetries.iter().collect();
        assert!(same_sets(&filtered, &got), "{}", e.name);
        assert!(got.iter().all(|f| f.kind().is_involution()));
    }
}

#[test]
fn expected_kind_counts() {
    let expect: &[(&str, [usize; 5])] = &[
        // reflection, rotation, axial, central, rotoreflection
        ("crossed-scroll", [0, 0, 0, 0, 0]),
        ("nonic-scroll", [2, 0, 3, 0, 2]),
        ("septic-scroll-a", [1, 0, 0, 0, 0]),
        ("septic-scroll-b", [1, 0, 0, 0, 0]),
        ("quintic-scroll", [1, 0, 0, 0, 0]),
        ("four-leaf-cone", [5, 2, 5, 1, 2]),
        ("quadratic-scroll", [0, 0, 1, 0, 0]),
        ("cubic-cone", [1, 0, 1, 1, 0]),
        ("odd-scroll", [0, 0, 0, 1, 0]),
        ("mirror-scroll", [0, 0, 1, 0, 0]),
        ("high-degree-scroll", [4, 2, 1, 0, 0]),
        ("triple-turn-cone", [3, 2, 3, 1, 2]),
    ];
    for (name, c) in expect {
        let (_, r) = all_mode(corpus::by_name(name).unwrap());
        let got = [Kind::Reflection, Kind::Rotation, Kind::Axial, Kind::Central, Kind::Rotoreflection].map(|k| r.count(k));
        assert_eq!(&got, c, "{name}");
    }
}

/// The printed worked example: with the first two direction components in the printed
/// order, -t^6 q(1/t) is diag(1,-1,-1) q(t), not the stated diag(-1,1,-1) q(t). With the
/// components exchanged the stated Q, b and c satisfy the surface identity.
#[test]
fn worked_example_component_order() {
    let q1 = parse_unipoly("-t^6+7t^4-7t^2+1").unwrap();
    let q2 = parse_unipoly("2t(t^4-6t^2+1)").unwrap();
    // -t^6 f(1/t) for degree-6 f is the coefficient reversal, negated
    let flip = |f: &UniPoly| {
        let mut c = f.coeffs().to_vec();
        c.resize(7, rat(0));
        c.reverse();
        UniPoly::new(c).neg()
    };
    assert_eq!(flip(&q1), q1);
    assert_eq!(flip(&q2), q2.neg());

    let printed = corpus::CROSSED_SCROLL.surface();
    let swapped = corpus::NONIC_SCROLL.surface();
    let (_, r) = all_mode(&corpus::NONIC_SCROLL);
    let stated = r
        .symmetries
        .iter()
        .find(|f| f.q == diag([-1, 1, -1]) && f.b == ints([4, 0, 10]))
        .expect("stated axial symmetry");
    let c = RatFunc::new(parse_unipoly("-(t^8+1)").unwrap(), parse_unipoly("t").unwrap()).map(|a| NfElem::rational(a.clone()));
    assert_eq!(stated.c, c);
    assert!(pointwise_holds(&swapped, &stated.q, &stated.b, stated));
    assert!(!pointwise_holds(&printed, &stated.q, &stated.b, stated));
    let FixedLocus::Line { point, direction } = &stated.class.locus else { panic!("axis expected") };
    assert_eq!(direction, &ints([0, 1, 0]));
    assert_eq!((&point[0], &point[2]), (&NfElem::from_int(2), &NfElem::from_int(5)));

    let (_, lit) = all_mode(&corpus::CROSSED_SCROLL);
    assert_eq!(lit.symmetries.len(), 1);
}

#[test]
fn cylinder_is_rejected() {
    let s = RuledSurface::from_strings("cyl", None, &["t+1", "2t+2", "3t+3"]).unwrap();
    for m in [Mode::All, Mode::Involutions, Mode::Conical] {
        assert_eq!(full_pipeline(&s, m).unwrap_err().code(), "CYLINDRICAL_INPUT");
    }
}

/// A linear direction curve gives a positive-dimensional reparametrization family; the
/// pipeline may refuse, but anything it returns must check out.
#[test]
fn linear_direction_never_gives_a_wrong_answer() {
    let cases: [(Option<[&str; 3]>, [&str; 3]); 3] = [
        (Some(["t^2", "0", "t^3"]), ["t", "1", "t+1"]),
        (None, ["t", "1", "2t-3"]),
        (Some(["0", "t^2", "0"]), ["1", "t", "0"]),
    ];
    for (p, q) in cases {
        let s = RuledSurface::from_strings("lin", p.as_ref(), &q).unwrap();
        for m in [Mode::All, Mode::Involutions] {
            match full_pipeline(&s, m) {
                Err(e) => assert_eq!(e.code(), "POSITIVE_DIMENSIONAL"),
                Ok(r) => {
                    for f in &r.symmetries {
                        assert!(verify_symmetry(&s, &f.phi, &f.q, &f.b, &f.c));
                        assert!(pointwise_holds(&s, &f.q, &f.b, f));
                    }
                }
            }
        }
    }
}

#[test]
fn conical_mode_needs_a_vertex() {
    let s = corpus::NONIC_SCROLL.surface();
    assert_eq!(full_pipeline(&s, Mode::Conical).unwrap_err().code(), "NOT_CONICAL");
}

#[test]
fn translated_cone_keeps_its_group() {
    // four-leaf cone with the vertex moved to (1, 2, 3): p = (1, 2, 3) + t q
    let e = &corpus::FOUR_LEAF_CONE;
    let p: Vec<String> = (0..3).map(|i| format!("{} + t*({})", i + 1, e.q[i])).collect();
    let s = RuledSurface::from_strings("moved", Some(&[&p[0], &p[1], &p[2]]), &e.q).unwrap();
    assert_eq!(s.vertex().unwrap(), [rat(1), rat(2), rat(3)]);
    let r = full_pipeline(&s, Mode::Conical).unwrap();
    assert_eq!(r.symmetries.len(), 16);
    let v = ints([1, 2, 3]);
    for f in &r.symmetries {
        let qv = ruledsym::isometry::mat_vec(&f.q, &v);
        for i in 0..3 {
            assert_eq!(qv[i].add_ref(&f.b[i]), v[i]);
        }
    }
}

#[test]
fn mesh_rows_satisfy_the_parametrization_exactly() {
    use ruledsym::mesh::{sample, MeshSpec};
    let s = corpus::NONIC_SCROLL.surface();
    let spec = MeshSpec { t_range: (rat(-2), rat(2)), s_range: (rat(-1), rat(1)), t_samples: 50, s_samples: 20 };
    let m = sample(&s, &spec).unwrap();
    assert_eq!(m.rows.len(), 1000);
    assert!(m.skipped_t.is_empty());
    for r in &m.rows {
        for i in 0..3 {
            let p = s.p[i].num().eval(&r.t) / s.p[i].den().eval(&r.t);
            assert_eq!(r.x[i], p + &r.s * s.q[i].eval(&r.t));
        }
    }
}
