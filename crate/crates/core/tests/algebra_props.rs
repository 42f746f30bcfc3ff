use manin_core::gln;
use manin_core::manin::{self, ManinTriple};
use manin_core::{LieAlgebra, Matrix, Scalar, Vector};
use proptest::prelude::*;

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -2i64..=2, -2i64..=2).prop_map(|(a, b, c)| {
        &(&Scalar::integer(a) + &(&Scalar::integer(b) * &Scalar::sqrt2())) + &(&Scalar::integer(c) * &Scalar::i())
    })
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(small_scalar(), n * n)
        .prop_map(move |entries| Matrix::from_rows(entries.chunks(n).map(|r| r.to_vec()).collect()).unwrap())
        .prop_filter("singular", |m| !m.determinant().unwrap().is_zero())
}

fn gl2_double() -> LieAlgebra {
    gln::build_gln_double(2).unwrap().algebra().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn change_of_basis_composes(t1 in invertible(6), t2 in invertible(6)) {
        let alg = gl2_double();
        let twice = alg.change_of_basis(&t1).unwrap().change_of_basis(&t2).unwrap();
        let once = alg.change_of_basis(&(&t1 * &t2)).unwrap();
        prop_assert!(twice.structure_equal(&once));
    }

    #[test]
    fn change_of_basis_preserves_jacobi(t in invertible(6)) {
        prop_assert!(gl2_double().change_of_basis(&t).unwrap().check_jacobi().is_empty());
    }

    #[test]
    fn killing_form_transports_by_congruence(t in invertible(6)) {
        let alg = gl2_double();
        let moved = alg.change_of_basis(&t).unwrap();
        prop_assert_eq!(moved.killing_form(), alg.killing_form().transported(&t).unwrap());
    }

    #[test]
    fn double_jacobi_iff_compatible_lie_halves(side in 0usize..2, p in 0usize..3, q in 0usize..3, r in 0usize..3, c in small_scalar()) {
        prop_assume!(p < q);
        let mut halves = [gln::build_s_plus(2).unwrap(), gln::build_s_minus(2).unwrap()];
        let mut tensor = halves[side].tensor().clone();
        let mut v = tensor.get(p, q);
        v.add_term(r, &c);
        tensor.set(p, q, v).unwrap();
        halves[side] = LieAlgebra::new(halves[side].labels().to_vec(), tensor).unwrap();
        let [plus, minus] = halves;
        let compat = manin::check_compatibility(plus.tensor(), minus.tensor()).unwrap().is_empty();
        let lie = plus.check_jacobi().is_empty() && minus.check_jacobi().is_empty();
        let t = ManinTriple::new_unchecked(plus, minus).unwrap();
        let double = manin::build_double_unchecked(&t).algebra().check_jacobi().is_empty();
        prop_assert_eq!(double, compat && lie);
    }
}

#[test]
fn killing_form_is_ad_invariant_on_gln() {
    for n in 1..=3 {
        let alg = gln::build_gln_tn(n).unwrap();
        let k = alg.killing_form();
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                for c in 0..alg.dim() {
                    let lhs = k.eval(&alg.bracket_basis(a, b), &Vector::basis(c));
                    let rhs = k.eval(&Vector::basis(a), &alg.bracket_basis(b, c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn killing_form_matches_trace_formula() {
    // K(X, Y) = 2n tr(XY) - 2 tr(X) tr(Y) on gl(n), zero on the central block
    for n in 1..=3 {
        let alg = gln::build_gln_tn(n).unwrap();
        let k = alg.killing_form();
        let mats = gln::fundamental_matrices(n);
        let two_n = Scalar::integer(2 * n as i64);
        for p in 0..alg.dim() {
            for q in 0..alg.dim() {
                let expected = &(&two_n * &mats[p].trace_of_product(&mats[q])) - &(&Scalar::integer(2) * &(&mats[p].trace() * &mats[q].trace()));
                assert_eq!(*k.get(p, q), expected, "n = {}, ({}, {})", n, p, q);
            }
        }
        assert_ne!(k, gln::oscillator_form(n).unwrap());
    }
}

#[test]
fn dimensions() {
    for n in 1..=5 {
        assert_eq!(gln::build_s_plus(n).unwrap().dim(), n * (n + 1) / 2);
        assert_eq!(gln::build_gln_double(n).unwrap().dim(), n * n + n);
    }
}
