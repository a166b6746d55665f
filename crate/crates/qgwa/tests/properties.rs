//! Randomized property tests: field axioms, the h -> q h action, exactness of
//! normal-form multiplication, and compatibility of automorphism composition
//! with the pointwise action on elements.

use std::sync::Arc;

use proptest::prelude::*;

use qgwa::autogroup::{default_i0, Automorphism};
use qgwa::exactfield::{rat, FieldContext, FieldElement};
use qgwa::gwacore::{GwaElement, QuantumGwa};
use qgwa::polynomials::{BaseKind, FactoredPoly, LaurentPoly};

const CONDUCTORS: [u64; 4] = [1, 3, 4, 12];

fn element_strategy(conductor: u64) -> impl Strategy<Value = FieldElement> {
    let degree = FieldContext::new(conductor).degree();
    prop::collection::vec((-4i64..=4, 1i64..=3), degree).prop_map(move |coeffs| {
        let k = FieldContext::new(conductor);
        let mut acc = k.zero();
        let mut z_power = k.one();
        for (n, d) in coeffs {
            acc = &acc + &(&z_power * &k.from_rational(rat(n, d)));
            z_power = &z_power * &k.zeta();
        }
        acc
    })
}

fn nonzero_element(conductor: u64) -> impl Strategy<Value = FieldElement> {
    element_strategy(conductor).prop_filter("nonzero", |e| !e.is_zero())
}

fn poly_strategy(conductor: u64, base_kind: BaseKind) -> impl Strategy<Value = LaurentPoly> {
    let lo = if base_kind == BaseKind::Laurent { -3i64 } else { 0 };
    prop::collection::btree_map(lo..=3i64, element_strategy(conductor), 0..4).prop_map(
        move |terms| {
            let k = FieldContext::new(conductor);
            let mut acc = LaurentPoly::zero(k, base_kind);
            for (e, c) in terms {
                acc = acc.add(&LaurentPoly::monomial(k, base_kind, e, c));
            }
            acc
        },
    )
}

/// A small algebra with a nonzero, non-one q and a nontrivial defining polynomial.
fn algebra_strategy() -> impl Strategy<Value = Arc<QuantumGwa>> {
    (
        prop::sample::select(&CONDUCTORS[..]),
        prop::bool::ANY,
        1i64..=5,
        2i64..=4,
        0u32..3,
    )
        .prop_map(|(conductor, laurent, q_num, q_den, extra_roots)| {
            let k = FieldContext::new(conductor);
            let base_kind = if laurent { BaseKind::Laurent } else { BaseKind::Poly };
            let q = if q_num == q_den {
                k.from_rational(rat(q_num + 1, q_den))
            } else {
                k.from_rational(rat(q_num, q_den))
            };
            let mut roots = vec![(k.from_int(1), 1u32)];
            for i in 0..extra_roots {
                roots.push((k.from_int(2 + i as i64), 1));
            }
            let a = FactoredPoly::new(k, base_kind, k.one(), 0, roots).expect("valid polynomial");
            QuantumGwa::new(base_kind, q, a).expect("valid algebra")
        })
}

fn gwa_element_strategy(
    algebra: Arc<QuantumGwa>,
) -> impl Strategy<Value = GwaElement> {
    let conductor = algebra.context().conductor();
    let base_kind = algebra.base_kind();
    prop::collection::btree_map(-2i64..=2, poly_strategy(conductor, base_kind), 0..3).prop_map(
        move |parts| {
            let mut acc = GwaElement::zero(&algebra);
            for (grade, d) in parts {
                acc = acc
                    .add(&GwaElement::monomial_component(&algebra, grade, d))
                    .expect("same algebra");
            }
            acc
        },
    )
}

/// A diagonal automorphism that passes validation for the given algebra.
fn diagonal_strategy(
    algebra: Arc<QuantumGwa>,
) -> impl Strategy<Value = Automorphism> {
    let conductor = algebra.context().conductor();
    let laurent = algebra.base_kind() == BaseKind::Laurent;
    (0u64..conductor.max(1), nonzero_element(conductor), 0i64..=1).prop_map(
        move |(gamma_pow, mu, hpow)| {
            let k = algebra.context();
            // gamma must satisfy gamma^g = 1 for the exponent-gap gcd g of a;
            // the strategy's a always has a nonzero constant term and degree
            // >= 1 term, so g = 1 unless the support says otherwise. Use
            // gamma = 1 when a power of zeta fails validation.
            let gamma = k.zeta().pow(gamma_pow as i64);
            let mu_hpower = if laurent { hpow } else { 0 };
            let candidate = Automorphism::new(false, gamma, mu.clone(), mu_hpower, default_i0(&algebra))
                .expect("nonzero parameters");
            match candidate.validate(&algebra) {
                Ok(phi) => phi,
                Err(_) => Automorphism::new(false, k.one(), mu, mu_hpower, default_i0(&algebra))
                    .expect("nonzero parameters")
                    .validate(&algebra)
                    .expect("identity gamma always validates"),
            }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ring_axioms(
        (a, b, c) in prop::sample::select(&CONDUCTORS[..]).prop_flat_map(|n| {
            (element_strategy(n), element_strategy(n), element_strategy(n))
        })
    ) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn field_inverses(
        a in prop::sample::select(&CONDUCTORS[..]).prop_flat_map(nonzero_element)
    ) {
        let inv = a.inverse().expect("nonzero element inverts");
        prop_assert!((&a * &inv).is_one());
        prop_assert_eq!(a.pow(3).pow(-1), a.pow(-3));
    }

    #[test]
    fn sigma_is_a_ring_map(
        (algebra, d1, d2) in algebra_strategy().prop_flat_map(|alg| {
            let n = alg.context().conductor();
            let b = alg.base_kind();
            (Just(alg), poly_strategy(n, b), poly_strategy(n, b))
        }),
        power in -3i64..=3,
    ) {
        let lhs = algebra.sigma(&d1.add(&d2), power);
        prop_assert_eq!(lhs, algebra.sigma(&d1, power).add(&algebra.sigma(&d2, power)));
        let lhs = algebra.sigma(&d1.mul(&d2), power);
        prop_assert_eq!(lhs, algebra.sigma(&d1, power).mul(&algebra.sigma(&d2, power)));
    }

    #[test]
    fn multiplication_is_associative(
        (u, v, w) in algebra_strategy().prop_flat_map(|alg| {
            (
                gwa_element_strategy(alg.clone()),
                gwa_element_strategy(alg.clone()),
                gwa_element_strategy(alg),
            )
        })
    ) {
        let left = u.mul(&v).unwrap().mul(&w).unwrap();
        let right = u.mul(&v.mul(&w).unwrap()).unwrap();
        prop_assert_eq!(left.components(), right.components());
    }

    #[test]
    fn automorphism_is_an_algebra_map(
        (phi, u, v) in algebra_strategy().prop_flat_map(|alg| {
            (
                diagonal_strategy(alg.clone()),
                gwa_element_strategy(alg.clone()),
                gwa_element_strategy(alg),
            )
        })
    ) {
        let lhs = u.mul(&v).unwrap().apply_automorphism(&phi).unwrap();
        let rhs = u
            .apply_automorphism(&phi)
            .unwrap()
            .mul(&v.apply_automorphism(&phi).unwrap())
            .unwrap();
        prop_assert_eq!(lhs.components(), rhs.components());
    }

    #[test]
    fn composition_matches_pointwise_action(
        (algebra, phi, psi, u) in algebra_strategy().prop_flat_map(|alg| {
            (
                Just(alg.clone()),
                diagonal_strategy(alg.clone()),
                diagonal_strategy(alg.clone()),
                gwa_element_strategy(alg),
            )
        })
    ) {
        let composed = phi.compose(&psi, &algebra).unwrap();
        let lhs = u.apply_automorphism(&composed).unwrap();
        let rhs = u
            .apply_automorphism(&psi)
            .unwrap()
            .apply_automorphism(&phi)
            .unwrap();
        prop_assert_eq!(lhs.components(), rhs.components());
    }

    #[test]
    fn inverse_undoes_the_action(
        (algebra, phi, u) in algebra_strategy().prop_flat_map(|alg| {
            (
                Just(alg.clone()),
                diagonal_strategy(alg.clone()),
                gwa_element_strategy(alg),
            )
        })
    ) {
        let inv = phi.inverse(&algebra).unwrap();
        let round_trip = u
            .apply_automorphism(&phi)
            .unwrap()
            .apply_automorphism(&inv)
            .unwrap();
        prop_assert_eq!(round_trip.components(), u.components());
    }
}
