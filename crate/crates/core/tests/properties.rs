use proptest::prelude::*;
use rht_core::blowup::{blowup_betti, leray_hirsch_betti, lemma2_check_scaled, projectivize, LemmaTarget};
use rht_core::cohom::{class_basis, class_coords, cup};
use rht_core::massey::{standard_indeterminacy, triple_massey, triple_massey_with_primitives};
use rht_core::models::{abelian, chevalley_eilenberg, cpn, heisenberg, kodaira_thurston, vn, vn_model};
use rht_core::qlin::{format_rational, int, kernel_basis, parse_rational, rat, QMatrix};
use rht_core::symp::{codifferential, omega_standard, symplectic_star, torus_form, SymplecticForm};
use rht_core::{betti, betti_profile, CohomClass, Dga, Element};

fn models() -> Vec<Dga> {
    vec![
        chevalley_eilenberg(&heisenberg()).unwrap(),
        kodaira_thurston(),
        vn_model(4).unwrap(),
        vn_model(5).unwrap(),
        abelian(3),
        cpn(2).unwrap(),
    ]
}

fn element(dga: &Dga, q: u32, coeffs: &[i64]) -> Element {
    let dim = dga.slice_dim(q).unwrap();
    let v: Vec<_> = (0..dim).map(|i| int(coeffs[i % coeffs.len()])).collect();
    dga.element(q, &v).unwrap()
}

fn sign(p: u32) -> i64 {
    if p % 2 == 0 { 1 } else { -1 }
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 1..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn leibniz(mi in 0usize..6, p in 0u32..4, q in 0u32..4, a in coeffs(), b in coeffs()) {
        let dga = &models()[mi];
        prop_assume!(p + q < dga.degree_cap());
        let (u, v) = (element(dga, p, &a), element(dga, q, &b));
        let lhs = dga.differential(&(&u * &v));
        let rhs = &(&dga.differential(&u) * &v) + &(&u * &dga.differential(&v)).scale(&int(sign(p)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn associative_and_graded_commutative(
        mi in 0usize..6, p in 0u32..3, q in 0u32..3, r in 0u32..3,
        a in coeffs(), b in coeffs(), c in coeffs(),
    ) {
        let dga = &models()[mi];
        let (u, v, w) = (element(dga, p, &a), element(dga, q, &b), element(dga, r, &c));
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
        prop_assert_eq!(&u * &v, (&v * &u).scale(&int(sign(p * q))));
    }

    #[test]
    fn d_squared_vanishes(mi in 0usize..6, q in 0u32..5, a in coeffs()) {
        let dga = &models()[mi];
        prop_assume!(q < dga.degree_cap());
        let u = element(dga, q, &a);
        prop_assert!(dga.differential(&dga.differential(&u)).is_zero());
    }

    #[test]
    fn cup_ignores_representative(mi in 0usize..4, a in coeffs(), b in coeffs()) {
        let dga = &models()[mi];
        for q in 1..=2u32 {
            for x in class_basis(dga, q).unwrap() {
                for y in class_basis(dga, 1).unwrap() {
                    let shift = dga.differential(&element(dga, q - 1, &a));
                    let x2 = CohomClass { degree: q, representative: &x.representative + &shift };
                    let y2 = CohomClass {
                        degree: 1,
                        representative: &y.representative + &dga.differential(&element(dga, 0, &b)),
                    };
                    let lhs = class_coords(dga, &cup(dga, &x, &y).unwrap()).unwrap();
                    let rhs = class_coords(dga, &cup(dga, &x2, &y2).unwrap()).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn massey_ignores_primitive_choice(n in 3usize..7, a in coeffs(), b in coeffs()) {
        let dga = vn_model(n).unwrap();
        let x1 = CohomClass { degree: 1, representative: dga.parse("x1").unwrap() };
        let x2 = CohomClass { degree: 1, representative: dga.parse("x2").unwrap() };
        let base = triple_massey(&dga, &x2, &x1, &x2).unwrap();
        let (g, h) = base.primitives.clone().unwrap();
        let z1 = kernel_basis(dga.d_matrix(1).unwrap());
        let pick = |c: &[i64]| {
            let mut acc = vec![int(0); z1.ambient_dim()];
            for (i, v) in z1.basis().iter().enumerate() {
                for (s, x) in acc.iter_mut().zip(v) {
                    *s += x * int(c[i % c.len()]);
                }
            }
            dga.element(1, &acc).unwrap()
        };
        let v = triple_massey_with_primitives(
            &dga, &x2, &x1, &x2,
            &g + &pick(&a), &h + &pick(&b),
            &standard_indeterminacy(&x2, &x1, &x2),
        ).unwrap();
        prop_assert_eq!(v.nontrivial, base.nontrivial);
        prop_assert_eq!(v.reduced, base.reduced);
    }

    #[test]
    fn massey_is_linear_in_outer_slot(s in 1i64..5) {
        let dga = chevalley_eilenberg(&heisenberg()).unwrap();
        let x1 = CohomClass { degree: 1, representative: dga.parse("x1").unwrap() };
        let x2 = CohomClass { degree: 1, representative: dga.parse("x2").unwrap() };
        let sx2 = CohomClass { degree: 1, representative: x2.representative.scale(&int(s)) };
        let v = triple_massey(&dga, &x1, &x1, &x2).unwrap();
        let w = triple_massey(&dga, &x1, &x1, &sx2).unwrap();
        prop_assert_eq!(w.reduced.unwrap(), v.reduced.unwrap().scale(&int(s)));
    }

    #[test]
    fn star_involution_and_delta_squared_on_random_forms(n in 2usize..4, a in coeffs()) {
        let f = torus_form(n);
        for q in 0..=(2 * n as u32) {
            let u = element(f.dga(), q, &a);
            let s = symplectic_star(&f, &u).unwrap();
            prop_assert_eq!(symplectic_star(&f, &s).unwrap(), u.clone());
            let du = codifferential(&f, &u).unwrap();
            prop_assert!(codifferential(&f, &du).unwrap().is_zero());
        }
    }

    #[test]
    fn lemma2_invariant_under_scaling(num in 1i64..7, den in 1i64..5, neg in any::<bool>()) {
        let s = rat(if neg { -num } else { num }, den);
        for t in [LemmaTarget::KodairaThurston, LemmaTarget::M4] {
            prop_assert!(lemma2_check_scaled(t, 3, &[], &s).unwrap().nontrivial());
        }
    }

    #[test]
    fn blowup_profile_invariants(half in 0usize..3, extra in 2u32..5, seed in prop::collection::vec(0usize..5, 3)) {
        let dim = 2 * half;
        let mut b = vec![0usize; dim + 1];
        for i in 0..=half {
            let v = if i == 0 { 1 } else { seed[i % seed.len()] };
            b[i] = v;
            b[dim - i] = v;
        }
        let n = half as u32 + extra;
        let p = blowup_betti(n, &b).unwrap();
        prop_assert!(p.duality);
        prop_assert!(p.euler_identity);
        prop_assert_eq!(p.betti.len(), 2 * n as usize + 1);
    }

    #[test]
    fn rational_text_round_trip(num in -1000i64..1000, den in 1i64..1000) {
        let r = rat(num, den);
        prop_assert_eq!(parse_rational(&format_rational(&r)), Some(r));
    }
}

#[test]
fn jacobi_iff_d_squared_zero() {
    for n in 3..=8 {
        let l = vn(n).unwrap();
        assert!(l.jacobi_check().passed());
        assert!(chevalley_eilenberg(&l).unwrap().validate().d_squared_zero);
    }
    let mut broken = rht_core::models::LieAlgebra::new(5);
    broken.set_bracket(1, 2, 3, int(1)).unwrap();
    broken.set_bracket(3, 5, 4, int(1)).unwrap();
    assert!(!broken.jacobi_check().passed());
    assert!(rht_core::models::chevalley_eilenberg_unchecked(&broken).is_err());
}

#[test]
fn poincare_duality_and_euler_on_nilpotent_models() {
    let mut ms: Vec<Dga> = (3..=8).map(|n| vn_model(n).unwrap()).collect();
    ms.push(kodaira_thurston());
    ms.push(abelian(4));
    for dga in ms {
        let n = dga.algebra().len() as u32;
        let b = betti_profile(&dga, n).unwrap();
        for q in 0..=n as usize {
            assert_eq!(b[q], b[n as usize - q], "{:?}", b);
        }
        let chi: i64 = b.iter().enumerate().map(|(i, &x)| sign(i as u32) * x as i64).sum();
        assert_eq!(chi, 0);
    }
}

#[test]
fn leray_hirsch_additivity_on_three_bases() {
    let bases = [
        rht_core::models::point(),
        kodaira_thurston(),
        vn_model(4).unwrap(),
    ];
    for base in &bases {
        for k in 2..=3 {
            let p = projectivize(base, k, &[]).unwrap();
            for q in 0..=p.total.degree_cap() {
                assert_eq!(
                    betti(&p.total, q).unwrap(),
                    leray_hirsch_betti(base, k, q).unwrap(),
                    "k = {k}, q = {q}"
                );
            }
        }
    }
}

#[test]
fn star_involution_on_basis_forms() {
    let forms: Vec<SymplecticForm> = vec![torus_form(2), torus_form(3), omega_standard(2).unwrap(), omega_standard(3).unwrap()];
    for f in forms {
        let n2 = f.dga().algebra().len() as u32;
        for q in 0..=n2 {
            let dim = f.dga().slice_dim(q).unwrap();
            for i in 0..dim {
                let mut v = vec![int(0); dim];
                v[i] = int(1);
                let u = f.dga().element(q, &v).unwrap();
                assert_eq!(symplectic_star(&f, &symplectic_star(&f, &u).unwrap()).unwrap(), u);
                let du = codifferential(&f, &u).unwrap();
                assert!(codifferential(&f, &du).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn symplectic_matrix_is_antisymmetric() {
    let f = omega_standard(3).unwrap();
    let w = f.matrix();
    let t = w.transpose();
    let neg = QMatrix::from_rows(w.cols(), (0..w.rows()).map(|i| w.row(i).iter().map(|x| -x).collect()).collect());
    assert_eq!(t, neg);
}
