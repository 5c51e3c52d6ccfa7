mod common;

use common::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use ruledsym::algebra::parse::{parse_multipoly, parse_ratfunc, parse_unipoly};
use ruledsym::algebra::roots::{real_roots, sturm_count_all};
use ruledsym::algebra::{eval_interval, rat, ratio, AlgebraicNumber, Budget, Field, NfElem, RatFunc, Rational, UniPoly};
use ruledsym::isometry::{check_orthogonal, classify, det3, full_pipeline, is_involutive, mat_vec, FixedLocus, Kind, Mat3, Mode, Vec3N};
use ruledsym::phi::{filter_involutions, solve_involutions, solve_phi, PhiMode};
use ruledsym::surface::{is_cylindrical, normalize_direction, solve_linear, RuledSurface};

fn poly(c: Vec<i64>) -> UniPoly {
    UniPoly::from_ints(&c)
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-5i64..=5, 1..=max_deg + 1).prop_filter_map("zero", |c| {
        let p = poly(c);
        (!p.is_zero()).then_some(p)
    })
}

fn ratfunc() -> impl Strategy<Value = RatFunc<Rational>> {
    (nonzero_poly(3), nonzero_poly(2)).prop_map(|(n, d)| RatFunc::new(n, d))
}

fn is_canonical(f: &RatFunc<Rational>) -> bool {
    f.den().lc() == rat(1) && f.num().gcd(f.den()).deg() == 0
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn normalization_keeps_direction(a in nonzero_poly(3), b in nonzero_poly(3), c in nonzero_poly(3), r in ratfunc()) {
        let raw = [&a, &b, &c].map(|x| RatFunc::from_poly((*x).clone()).mul(&r));
        let q = normalize_direction(&raw).unwrap();
        let g = q[0].gcd(&q[1]).gcd(&q[2]);
        prop_assert_eq!(g.deg(), 0);
        for i in 0..3 {
            for j in 0..3 {
                let lhs = RatFunc::from_poly(q[i].clone()).mul(&raw[j]);
                let rhs = RatFunc::from_poly(q[j].clone()).mul(&raw[i]);
                prop_assert_eq!(lhs, rhs);
            }
        }
        let scaled = [0, 1, 2].map(|i| q[i].mul(&a));
        prop_assert_eq!(is_cylindrical(&q), is_cylindrical(&scaled));
    }

    #[test]
    fn polynomial_text_round_trips(p in nonzero_poly(7)) {
        prop_assert_eq!(parse_unipoly(&p.to_string_var("t")).unwrap(), p);
    }

    #[test]
    fn rational_function_text_round_trips(f in ratfunc()) {
        prop_assert_eq!(parse_ratfunc(&f.to_string_var("t")).unwrap(), f);
    }

    #[test]
    fn surface_json_round_trips(p in prop::array::uniform3(ratfunc()), q in prop::array::uniform3(nonzero_poly(3))) {
        let ps = p.clone().map(|f| f.to_string_var("t"));
        let qs = q.clone().map(|f| f.to_string_var("t"));
        let s = RuledSurface::from_strings("r", Some(&[&ps[0], &ps[1], &ps[2]]), &[&qs[0], &qs[1], &qs[2]]).unwrap();
        let doc = serde_json::to_string(&s.to_json()).unwrap();
        let back = RuledSurface::from_json_str(&doc, "x").unwrap();
        prop_assert_eq!(&back.p, &s.p);
        prop_assert_eq!(&back.q, &s.q);
        prop_assert_eq!(back.n, s.n);
        prop_assert_eq!(back.name, s.name);
    }

    #[test]
    fn rational_function_arithmetic_stays_canonical(f in ratfunc(), g in ratfunc(), a in -3i64..=3, b in 1i64..=3) {
        prop_assume!(!g.is_zero());
        for h in [f.add(&g), f.sub(&g), f.mul(&g), f.div(&g), f.compose_mobius(&rat(a), &rat(1), &rat(1), &rat(b))] {
            prop_assert!(is_canonical(&h));
        }
    }

    #[test]
    fn gcd_divides_and_cofactors_are_coprime(a in nonzero_poly(4), b in nonzero_poly(4), c in nonzero_poly(3)) {
        let (x, y) = (a.mul(&c), b.mul(&c));
        let g = x.gcd(&y);
        prop_assert!(g.divides(&x) && g.divides(&y));
        prop_assert!(c.monic().divides(&g));
        prop_assert_eq!(x.exact_div(&g).gcd(&y.exact_div(&g)).deg(), 0);
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(a in nonzero_poly(3), b in nonzero_poly(3), c in nonzero_poly(2)) {
        prop_assume!(a.deg() > 0 && b.deg() > 0);
        let planted = a.mul(&c).resultant(&b.mul(&c));
        prop_assert_eq!(planted.is_zero(), c.deg() > 0 || a.gcd(&b).deg() > 0);
        prop_assert_eq!(a.resultant(&b).is_zero(), a.gcd(&b).deg() > 0);
    }

    #[test]
    fn planted_real_roots_are_found(
        roots in prop::collection::btree_set(-6i64..=6, 0..4),
        den in 1i64..=4,
        m in prop::sample::select(vec![2i64, 3, 5, 6, 7]),
        k in 1i64..=4,
    ) {
        let mut p = UniPoly::from_ints(&[m, 0, -1]).mul(&UniPoly::from_ints(&[k, 0, 1]));
        for r in &roots {
            p = p.mul(&UniPoly::from_ints(&[-r, den]));
        }
        let found = real_roots(&p);
        prop_assert_eq!(found.len(), roots.len() + 2);
        prop_assert_eq!(sturm_count_all(&p), roots.len() + 2);
        let exact: Vec<Rational> = found.iter().filter_map(|a| a.as_rational().cloned()).collect();
        let want: Vec<Rational> = roots.iter().map(|r| ratio(*r, den)).collect();
        prop_assert_eq!(exact, want);
        for a in &found {
            prop_assert!(a.minimal_poly().divides(&p));
        }
    }

    #[test]
    fn certified_evaluation_matches_planted_identities(
        m in prop::sample::select(vec![2i64, 3, 5]),
        y in -4i64..=4,
        r in nonzero_poly(2),
        e in 5u32..40,
    ) {
        let root = real_roots(&UniPoly::from_ints(&[-m, 0, 1]))[1].clone();
        let rs = r.to_string_var("x");
        let zero = parse_multipoly(&format!("(x^2-{m})*({rs})*(y+1)"), &["x", "y"]).unwrap();
        let pt = [root.clone(), AlgebraicNumber::from_rational(rat(y))];
        prop_assert!(eval_interval(&zero, &pt, &Budget::default()).unwrap().is_zero());
        let off = parse_multipoly(&format!("(x^2-{m})*({rs})*(y+1) + 1/2^{e}"), &["x", "y"]).unwrap();
        prop_assert_eq!(eval_interval(&off, &pt, &Budget::default()).unwrap().sign(), 1);
    }
}

/// Cayley transform of a skew matrix: an exact rational rotation.
fn cayley(a: i64, b: i64, c: i64) -> Mat3 {
    let k = a * a + b * b + c * c + 1;
    let m = [
        [1 + a * a - b * b - c * c, 2 * (a * b - c), 2 * (a * c + b)],
        [2 * (a * b + c), 1 - a * a + b * b - c * c, 2 * (b * c - a)],
        [2 * (a * c - b), 2 * (b * c + a), 1 - a * a - b * b + c * c],
    ];
    m.map(|r| r.map(|x| NfElem::rational(ratio(x, k))))
}

fn signed_permutation(perm: usize, signs: [bool; 3]) -> Mat3 {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let p = perms[perm];
    std::array::from_fn(|i| {
        std::array::from_fn(|j| if p[i] == j { NfElem::from_int(if signs[i] { -1 } else { 1 }) } else { NfElem::zero() })
    })
}

fn orthogonal() -> impl Strategy<Value = Mat3> {
    prop_oneof![
        (-3i64..=3, -3i64..=3, -3i64..=3, any::<bool>()).prop_map(|(a, b, c, neg)| {
            let q = cayley(a, b, c);
            if neg { q.map(|r| r.map(|x| x.neg_ref())) } else { q }
        }),
        (0usize..6, any::<[bool; 3]>()).prop_map(|(p, s)| signed_permutation(p, s)),
    ]
}

fn fixed(q: &Mat3, b: &Vec3N, x: &Vec3N) -> bool {
    let y = mat_vec(q, x);
    (0..3).all(|i| y[i].add_ref(&b[i]) == x[i])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn classification_is_consistent(q in orthogonal(), b in prop::array::uniform3(-4i64..=4), use_fixed in any::<bool>(), x0 in prop::array::uniform3(-3i64..=3)) {
        prop_assert!(check_orthogonal(&q));
        // either a random b or one that forces x0 to be fixed
        let b: Vec3N = if use_fixed {
            let qx = mat_vec(&q, &ints(x0));
            std::array::from_fn(|i| NfElem::from_int(x0[i]).sub_ref(&qx[i]))
        } else {
            ints(b)
        };
        let det = det3(&q);
        match classify(&q, &b) {
            Err(_) => {
                prop_assert!(!use_fixed);
                // (I - Q) x = b really has no solution
                let rows: Vec<Vec<NfElem>> = (0..3)
                    .map(|i| (0..3).map(|j| NfElem::from_int((i == j) as i64).sub_ref(&q[i][j])).collect())
                    .collect();
                prop_assert!(solve_linear(&rows, &b, 3).is_none());
            }
            Ok(c) => {
                prop_assert_eq!(det == NfElem::one(), matches!(c.kind, Kind::Identity | Kind::Rotation | Kind::Axial));
                match &c.locus {
                    FixedLocus::AllSpace => prop_assert!(b.iter().all(|x| x.is_zero())),
                    FixedLocus::Point(p) => prop_assert!(fixed(&q, &b, p)),
                    FixedLocus::Line { point, direction } => {
                        prop_assert!(fixed(&q, &b, point));
                        let far: Vec3N = std::array::from_fn(|i| point[i].add_ref(&direction[i].mul_ref(&NfElem::from_int(7))));
                        prop_assert!(fixed(&q, &b, &far));
                    }
                    FixedLocus::Plane { normal, offset } => {
                        let nn = ruledsym::isometry::dot(normal, normal);
                        let p: Vec3N = std::array::from_fn(|i| normal[i].mul_ref(offset).div_ref(&nn));
                        prop_assert!(fixed(&q, &b, &p));
                    }
                }
                let composed = (ruledsym::isometry::mat_mul(&q, &q), std::array::from_fn(|i| mat_vec(&q, &b)[i].add_ref(&b[i])));
                prop_assert_eq!(c.kind.is_involution(), ruledsym::isometry::is_identity(&composed));
                if use_fixed {
                    prop_assert!(fixed(&q, &b, &ints(x0)));
                }
                if let Some((cos, sin)) = &c.angle {
                    let w = [q[2][1].sub_ref(&q[1][2]), q[0][2].sub_ref(&q[2][0]), q[1][0].sub_ref(&q[0][1])];
                    let w2 = ruledsym::isometry::dot(&w, &w).as_rational().unwrap();
                    let s2 = sin.mul_ref(sin).as_rational().unwrap();
                    prop_assert_eq!(s2.clone() * rat(4), w2);
                    prop_assert_eq!(cos.mul_ref(cos).as_rational().unwrap() + s2, rat(1));
                }
            }
        }
    }
}

fn norm_at(q: &[UniPoly; 3], x: &NfElem) -> NfElem {
    q.iter().fold(NfElem::zero(), |acc, c| {
        let v = c.map(|a| NfElem::rational(a.clone())).eval(x);
        acc.add_ref(&v.mul_ref(&v))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    /// Every reparametrization returned satisfies k^2 (gamma t + delta)^(2n) |q(psi)|^2 = |q|^2
    /// at sample points, and the involution solver agrees with filtering.
    #[test]
    fn reparametrizations_preserve_the_norm(q in prop::array::uniform3(nonzero_poly(3))) {
        let raw = q.clone().map(RatFunc::from_poly);
        let q = normalize_direction(&raw).unwrap();
        prop_assume!(!is_cylindrical(&q));
        let n = q.iter().map(|c| c.deg()).max().unwrap();
        prop_assume!(n >= 2);
        let all = solve_phi(&q, n, PhiMode::All).unwrap();
        prop_assert!(all.iter().any(|s| s.is_identity()));
        for s in &all {
            for t in [ratio(3, 7), rat(-2), ratio(5, 2)] {
                let tn = NfElem::rational(t);
                let den = s.gamma.mul_ref(&tn).add_ref(&s.delta);
                if den.is_zero() {
                    continue;
                }
                let psi = s.alpha.mul_ref(&tn).add_ref(&s.beta).div_ref(&den);
                let lhs = s.k.mul_ref(&s.k).mul_ref(&Field::pow(&den, 2 * n as u32)).mul_ref(&norm_at(&q, &psi));
                prop_assert_eq!(lhs, norm_at(&q, &tn));
            }
        }
        let inv = solve_involutions(&q, n).unwrap();
        prop_assert_eq!(inv.len(), filter_involutions(&all, n).len());
    }

    /// A surface built to be symmetric under z -> -z with t -> -t always reports that
    /// reflection, and everything reported checks out pointwise.
    #[test]
    fn planted_reflection_is_found(
        e in prop::array::uniform2(prop::collection::vec(-3i64..=3, 2)),
        o in prop::collection::vec(-3i64..=3, 2),
        pe in prop::array::uniform2(prop::collection::vec(-3i64..=3, 2)),
        po in prop::collection::vec(-3i64..=3, 2),
    ) {
        // even polynomials in the first two slots, odd in the third
        let even = |c: &Vec<i64>| UniPoly::from_ints(&[c[0], 0, c[1], 0, 1]);
        let odd = |c: &Vec<i64>| UniPoly::from_ints(&[0, c[0], 0, c[1], 0, 1]);
        let q = [even(&e[0]), even(&e[1]), odd(&o)];
        let p = [even(&pe[0]), even(&pe[1]), odd(&po)];
        let qs = q.clone().map(|f| f.to_string_var("t"));
        let ps = p.clone().map(|f| f.to_string_var("t"));
        let s = RuledSurface::from_strings("planted", Some(&[&ps[0], &ps[1], &ps[2]]), &[&qs[0], &qs[1], &qs[2]]).unwrap();
        prop_assume!(!s.is_cylindrical());
        let r = full_pipeline(&s, Mode::All);
        prop_assume!(r.is_ok());
        let r = r.unwrap();
        let z = diag([1, 1, -1]);
        prop_assert!(r.symmetries.iter().any(|f| f.q == z && f.b.iter().all(|x| x.is_zero())));
        for f in &r.symmetries {
            prop_assert!(pointwise_holds(&s, &f.q, &f.b, f));
        }
        let inv = full_pipeline(&s, Mode::Involutions).unwrap();
        let filtered: Vec<_> = r.symmetries.iter().filter(|f| is_involutive(f)).collect();
        prop_assert!(same_sets(&filtered, &inv.symmetries.iter().collect::<Vec<_>>()));
    }
}

#[test]
fn budget_error_without_fallback() {
    let root = real_roots(&UniPoly::from_ints(&[-2, 0, 1]))[1].clone();
    let p = parse_multipoly("x^2-2", &["x"]).unwrap();
    let b = Budget { exact_fallback: false, ..Budget::from_bits(30) };
    assert_eq!(eval_interval(&p, &[root], &b).unwrap_err().code(), "PRECISION_BUDGET");
}
