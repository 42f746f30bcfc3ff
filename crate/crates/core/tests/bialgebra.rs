use manin_core::bialg::{self, Cocommutator, Verdict};
use manin_core::gln::{self, GlnIndex};
use manin_core::manin;
use manin_core::{Scalar, TwoTensor, Vector};

fn e(k: usize) -> Vector {
    Vector::basis(k)
}

fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

fn strip_central(n: usize, delta: &Cocommutator, generators: &[usize]) -> Cocommutator {
    let mut out = delta.clone();
    for &p in generators {
        let kept = delta.get(p).filter(|&(a, b)| {
            !matches!(GlnIndex::unflatten(n, a), GlnIndex::I(_)) && !matches!(GlnIndex::unflatten(n, b), GlnIndex::I(_))
        });
        out.set(p, kept).unwrap();
    }
    out
}

#[test]
fn stripping_central_terms_from_f12_only_breaks_the_cocycle() {
    let alg = gln::build_gln_tn(2).unwrap();
    let delta = gln::gln_cocommutator(2).unwrap();
    assert!(bialg::check_cocycle(&alg, &delta).unwrap().is_empty());
    let f12 = GlnIndex::F(0, 1).flatten(2);
    let f21 = GlnIndex::F(1, 0).flatten(2);
    let one = strip_central(2, &delta, &[f12]);
    assert!(!bialg::check_cocycle(&alg, &one).unwrap().is_empty());
    // removing them from both is exactly the coboundary of r_s, still a cocycle
    let both = strip_central(2, &delta, &[f12, f21]);
    assert!(bialg::check_cocycle(&alg, &both).unwrap().is_empty());
}

#[test]
fn double_and_transported_cocommutators_are_bialgebras() {
    for n in 1..=3 {
        let t = gln::build_gln_triple(n).unwrap();
        let d = manin::build_double(&t).unwrap();
        let delta = bialg::cocommutator_from_triple(&t);
        assert!(bialg::check_cojacobi(&delta).is_empty());
        assert!(bialg::check_cocycle(d.algebra(), &delta).unwrap().is_empty());
        let moved = gln::gln_cocommutator(n).unwrap();
        assert!(bialg::check_cojacobi(&moved).is_empty());
        assert!(bialg::check_cocycle(&gln::build_gln_tn(n).unwrap(), &moved).unwrap().is_empty());
    }
}

#[test]
fn cocommutator_blocks_match_structure_tensors() {
    // delta(Z_p) = -c_p^{qr} Z_q (x) Z_r and delta(z^p) = f^p_{qr} z^q (x) z^r
    let t = gln::build_gln_triple(3).unwrap();
    let m = t.m();
    let delta = bialg::cocommutator_from_triple(&t);
    for p in 0..m {
        for q in 0..m {
            for r in 0..m {
                let c = t.s_minus().tensor().coefficient(q, r, p);
                assert_eq!(delta.get(p).coeff(&(q, r)), -&c);
                let f = t.s_plus().tensor().coefficient(q, r, p);
                assert_eq!(delta.get(m + p).coeff(&(m + q, m + r)), f);
            }
        }
    }
}

#[test]
fn coboundary_kills_cartan_generators() {
    let alg = gln::build_gln_tn(2).unwrap();
    let r = gln::gln_rmatrix(2).unwrap();
    let delta = bialg::coboundary(&alg, &r).unwrap();
    for g in [GlnIndex::H(0), GlnIndex::H(1), GlnIndex::I(0), GlnIndex::I(1)] {
        assert!(delta.get(g.flatten(2)).is_zero());
    }
}

#[test]
fn coboundary_rejects_non_invariant_symmetric_part() {
    let alg = gln::build_gln_tn(2).unwrap();
    let h1 = GlnIndex::H(0).flatten(2);
    let f12 = GlnIndex::F(0, 1).flatten(2);
    let r = TwoTensor::tensor(&e(h1), &e(h1));
    assert!(bialg::coboundary(&alg, &r).is_err());
    assert!(matches!(bialg::coboundary(&alg, &TwoTensor::tensor(&e(f12), &e(99))), Err(bialg::BialgError::IndexOutOfRange { .. })));
}

#[test]
fn split_twist_rank_three() {
    let r = gln::gln_rmatrix(3).unwrap();
    let (r_s, r_t) = bialg::split_twist(3, &r).unwrap();
    let f = |i, j| e(GlnIndex::F(i, j).flatten(3));
    let expected = TwoTensor::wedge(&f(1, 0), &f(0, 1))
        .plus(&TwoTensor::wedge(&f(2, 0), &f(0, 2)))
        .plus(&TwoTensor::wedge(&f(2, 1), &f(1, 2)))
        .scaled(&s("1/2"));
    assert_eq!(r_s, expected);
    assert_eq!(r_s.plus(&r_t), r);
    assert_eq!(r_t.len(), 6);
}

#[test]
fn schouten_rank_three_and_zero() {
    let t = gln::build_gln_triple(3).unwrap();
    let d = manin::build_double(&t).unwrap();
    let (_, skew) = bialg::build_rmatrix(&t);
    assert_eq!(bialg::schouten_check(d.algebra(), &skew).verdict, Verdict::Quasitriangular);
    assert_eq!(bialg::schouten_check(d.algebra(), &TwoTensor::new()).verdict, Verdict::Triangular);
}

#[test]
fn schouten_detects_non_invariant_bracket() {
    // r = F12 ^ F23 on gl(3): [[r,r]] is proportional to F12^F23^F13, which has
    // H1-weight 2
    let alg = gln::build_gln_tn(3).unwrap();
    let r = TwoTensor::wedge(&e(GlnIndex::F(0, 1).flatten(3)), &e(GlnIndex::F(1, 2).flatten(3)));
    let report = bialg::schouten_check(&alg, &r);
    assert_eq!(report.verdict, Verdict::NotInvariant);
    assert!(report.non_invariant.find(&[GlnIndex::H(0).flatten(3)]).is_some());
    // a 2-dimensional subalgebra carries no 3-vectors
    let r = TwoTensor::wedge(&e(GlnIndex::H(0).flatten(3)), &e(GlnIndex::F(0, 1).flatten(3)));
    assert_eq!(bialg::schouten_check(&alg, &r).verdict, Verdict::Triangular);
}

#[test]
fn express_in_basis_round_trip() {
    let t = gln::build_gln_triple(2).unwrap();
    let delta = bialg::cocommutator_from_triple(&t);
    let m = gln::gln_change_of_basis(2).unwrap();
    let there = bialg::express_in_basis(&delta, &m).unwrap();
    let back = bialg::express_in_basis(&there, &m.inverse().unwrap()).unwrap();
    assert_eq!(back, delta);
    let singular = manin_core::Matrix::zeros(6, 6);
    assert!(bialg::express_in_basis(&delta, &singular).is_err());
}

#[test]
fn closed_form_rank_four() {
    assert_eq!(gln::gln_cocommutator(4).unwrap(), gln::delta_closed_form(4).unwrap());
}
