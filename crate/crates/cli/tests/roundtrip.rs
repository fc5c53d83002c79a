use betti_cli::parse::{parse_ideal, serialize, IdealExpression, ParseErrorKind};
use betti_core::{GradedIdeal, Polynomial};
use proptest::prelude::*;

fn names_strategy() -> impl Strategy<Value = Vec<String>> {
    prop_oneof![
        (1usize..=5).prop_map(|n| (1..=n).map(|i| format!("x{i}")).collect()),
        (1usize..=4).prop_map(|n| ["x", "y", "z", "w"][..n]
            .iter()
            .map(|s| s.to_string())
            .collect()),
        Just(vec!["a".to_string(), "bb".to_string(), "c2".to_string()]),
        Just(vec!["x1".to_string(), "x10".to_string(), "x2".to_string()]),
    ]
}

fn homogeneous(n: usize) -> impl Strategy<Value = Polynomial> {
    (0u32..=4).prop_flat_map(move |d| {
        let term = (
            prop::collection::vec(0..=d, n)
                .prop_filter("degree", move |e| e.iter().sum::<u32>() == d),
            prop_oneof![-7i64..=-1, 1i64..=7],
        );
        prop::collection::vec(term, 1..=3)
            .prop_map(move |terms| Polynomial::from_int_terms(n, terms))
            .prop_filter("nonzero", |p| !p.is_zero())
    })
}

fn expression() -> impl Strategy<Value = IdealExpression> {
    names_strategy().prop_flat_map(|names| {
        let n = names.len();
        prop::collection::vec(homogeneous(n), 1..=4).prop_map(move |gens| {
            IdealExpression::from_ideal(names.clone(), GradedIdeal::new(n, gens).unwrap())
        })
    })
}

proptest! {
    #[test]
    fn parse_inverts_serialize(expr in expression()) {
        let text = serialize(&expr);
        let back = parse_ideal(&text).unwrap();
        prop_assert_eq!(&back, &expr);
        prop_assert_eq!(serialize(&back), text);
        prop_assert_eq!(back.ideal, expr.ideal);
    }

    #[test]
    fn whitespace_is_ignored(expr in expression()) {
        let text = serialize(&expr);
        let spaced: String = text
            .chars()
            .flat_map(|c| match c {
                '(' | ')' | ',' | '+' | '^' | '*' | '=' | ';' => vec![' ', c, ' '],
                _ => vec![c],
            })
            .collect();
        prop_assert_eq!(parse_ideal(&spaced).unwrap(), expr);
    }
}

#[test]
fn mixed_degree_generators_keep_source_order() {
    let e = parse_ideal("ring x1..x4; I = (x1*x2^3 + x3^4, x1 + x2 + x4, x2^3)").unwrap();
    assert_eq!(e.source_degrees(), vec![4, 1, 3]);
    assert!(!e.is_monomial());
    let again = parse_ideal(&serialize(&e)).unwrap();
    assert_eq!(again, e);
}

#[test]
fn signed_coefficients_and_optional_star() {
    let e = parse_ideal("ring x,y; (-2x^2 + 3 x y, y^2)").unwrap();
    assert_eq!(e.generators.len(), 2);
    assert_eq!(e.generators[0].num_terms(), 2);
}

#[test]
fn error_kinds() {
    let err = parse_ideal("(x + y^2)").unwrap_err();
    assert!(
        matches!(err.kind, ParseErrorKind::NotHomogeneous { index: 0, .. }),
        "{err}"
    );
    assert!(err.to_string().contains('1') && err.to_string().contains('2'));
    let err = parse_ideal("ring x,y; (x, z)").unwrap_err();
    assert!(matches!(err.kind, ParseErrorKind::UnknownVariable(_)));
    let err = parse_ideal("()").unwrap_err();
    assert_eq!(err.pos, 1);
    let err = parse_ideal("(x - x)").unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::EmptyIdeal);
}
