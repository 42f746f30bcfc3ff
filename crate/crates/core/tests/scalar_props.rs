use manin_core::expr::parse_scalar;
use manin_core::{Rational, Scalar};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..30, 1i64..8).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (rational(), rational(), rational(), rational()).prop_map(|(a, b, c, d)| Scalar::new(a, b, c, d))
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x - &x, Scalar::zero());
    }

    #[test]
    fn multiplication_is_commutative_associative_distributive(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &Scalar::one(), x.clone());
    }

    #[test]
    fn nonzero_elements_are_invertible(x in scalar()) {
        prop_assume!(!x.is_zero());
        let inv = x.inv().unwrap();
        prop_assert_eq!(&x * &inv, Scalar::one());
        prop_assert_eq!(Scalar::one().checked_div(&x).unwrap(), inv);
    }

    #[test]
    fn print_then_parse_is_identity(x in scalar()) {
        let text = x.to_string();
        prop_assert_eq!(parse_scalar(&text).unwrap(), x);
    }

    #[test]
    fn conjugation_is_a_ring_map(x in scalar(), y in scalar()) {
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
    }
}

#[test]
fn generators_square_as_expected() {
    assert_eq!(&Scalar::sqrt2() * &Scalar::sqrt2(), Scalar::integer(2));
    assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::integer(-1));
    assert_eq!(&Scalar::inv_sqrt2() * &Scalar::sqrt2(), Scalar::one());
}

#[test]
fn division_by_zero_is_an_error() {
    assert!(Scalar::zero().inv().is_err());
    assert!(parse_scalar("1/(sqrt2 - sqrt2)").is_err());
}
