use gross_core::grossnum::{parse, rational, GrossScalar, Magnitude};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn term() -> impl Strategy<Value = GrossScalar> {
    (-20i64..=20, 1i64..=6, -3i64..=3, 1i64..=2).prop_map(|(n, d, p, q)| {
        GrossScalar::term(rational::ratio(n, d), rational::ratio(p, q))
    })
}

fn polynomial() -> impl Strategy<Value = GrossScalar> {
    prop::collection::vec(term(), 1..4).prop_map(|ts| ts.into_iter().sum())
}

fn scalar() -> impl Strategy<Value = GrossScalar> {
    prop_oneof![
        3 => polynomial(),
        1 => (polynomial(), polynomial()).prop_filter_map("zero denominator", |(a, b)| a.checked_div(&b).ok()),
    ]
}

fn positive_rational() -> impl Strategy<Value = GrossScalar> {
    (1i64..10_000, 1i64..100).prop_map(|(n, d)| GrossScalar::from_rational(rational::ratio(n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_is_a_commutative_group(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &GrossScalar::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn multiplication_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &GrossScalar::one(), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn order_is_compatible(a in scalar(), b in scalar(), c in scalar()) {
        if a > b {
            prop_assert!(&a + &c > &b + &c);
            if c.is_positive() {
                prop_assert!(&a * &c > &b * &c);
            }
        }
    }

    #[test]
    fn order_is_total(a in scalar(), b in scalar(), c in scalar()) {
        let relations = [a < b, a == b, a > b];
        prop_assert_eq!(relations.iter().filter(|x| **x).count(), 1);
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
    }

    #[test]
    fn grossone_is_beyond_every_finite_number(d in positive_rational(), e in positive_rational()) {
        prop_assert!(GrossScalar::grossone() > d);
        let tiny = &d * &GrossScalar::grossone_pow(rational::int(-1));
        prop_assert!(tiny < e);
        prop_assert!(tiny.is_positive());
        prop_assert_eq!(tiny.classify(), Magnitude::Infinitesimal);
    }

    #[test]
    fn leading_powers_add_under_multiplication(a in scalar(), b in scalar()) {
        if let (Some(pa), Some(pb)) = (a.leading_power(), b.leading_power()) {
            prop_assert_eq!((&a * &b).leading_power(), Some(pa + pb));
        }
    }

    #[test]
    fn printed_literals_parse_back(a in scalar()) {
        let text = a.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
    }
}

#[test]
fn classification_examples() {
    let s = |t: &str| t.parse::<GrossScalar>().unwrap();
    assert_eq!(s("0").classify(), Magnitude::Zero);
    assert_eq!(s("-3.5").classify(), Magnitude::Finite);
    assert_eq!(s("g^-1/2").classify(), Magnitude::Infinitesimal);
    assert_eq!(s("5-g^2").classify(), Magnitude::Infinite);
    assert_eq!(s("20/(0.04g-0.4)").classify(), Magnitude::Infinitesimal);
    assert!(s("5-g^2").is_negative());
}
