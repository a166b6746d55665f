//! Acceptance suite: each test prints one pass/fail line for its criterion.
//! The criteria pin down the closed-form fixed rings, the classification
//! theorems, and the randomized oracle cross-checks at fixed truncation
//! bounds, with strict runtime budgets.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qgwa::autogroup::Automorphism;
use qgwa::exactfield::{rat, FieldContext, FieldElement};
use qgwa::fixedring::{
    fixed_ring_diagonal, fixed_ring_omega, probe_gcd_failure, verify_fixed_ring,
    FixedRingPresentation,
};
use qgwa::gwacore::{GwaElement, PowerSide, QuantumGwa};
use qgwa::polynomials::{BaseKind, FactoredPoly, LaurentPoly};
use qgwa::rootprops::{
    classify_a_multiplicity, gldim, gldim_fixed, simplicity_transfer, twisted_calabi_yau,
    Gldim, RootAnalysis, DEFAULT_K_BOUND,
};

fn criterion<F: FnOnce() + std::panic::UnwindSafe>(number: u32, name: &str, body: F) {
    let start = Instant::now();
    let result = std::panic::catch_unwind(body);
    let elapsed = start.elapsed();
    match result {
        Ok(()) => println!("criterion {number} ({name}): pass [{elapsed:.2?}]"),
        Err(e) => {
            println!("criterion {number} ({name}): FAIL [{elapsed:.2?}]");
            std::panic::resume_unwind(e);
        }
    }
}

fn algebra(
    conductor: u64,
    base_kind: BaseKind,
    q: FieldElement,
    unit: FieldElement,
    h_power: i64,
    roots: Vec<(FieldElement, u32)>,
) -> Arc<QuantumGwa> {
    let k = FieldContext::new(conductor);
    let a = FactoredPoly::new(k, base_kind, unit, h_power, roots).expect("valid polynomial");
    QuantumGwa::new(base_kind, q, a).expect("valid algebra")
}

fn eta(gamma: FieldElement, mu: FieldElement, i0: i64) -> Automorphism {
    Automorphism::eta(gamma, mu, i0).expect("nonzero parameters")
}

fn biquadratic() -> (Arc<QuantumGwa>, Automorphism) {
    let k = FieldContext::new(3);
    let alg = algebra(
        3,
        BaseKind::Laurent,
        k.from_rational(rat(1, 2)),
        k.one(),
        0,
        vec![
            (k.from_int(1), 1),
            (k.from_int(-1), 1),
            (k.from_int(2), 1),
            (k.from_int(-2), 1),
        ],
    );
    let phi = eta(k.from_int(-1), k.zeta(), 0);
    (alg, phi)
}

#[test]
fn criterion_01_biquadratic_closed_form() {
    criterion(1, "closed form for the biquadratic Laurent example", || {
        let (alg, phi) = biquadratic();
        let k = alg.context();
        let d = match fixed_ring_diagonal(&alg, &phi).expect("hypotheses hold") {
            FixedRingPresentation::DiagonalGwa(d) => d,
            other => panic!("expected a diagonal presentation, got {other:?}"),
        };
        assert_eq!((d.m, d.n), (3, 2));
        assert_eq!(d.q_prime, k.from_rational(rat(1, 64)));
        let expected = FactoredPoly::new(
            k,
            BaseKind::Laurent,
            k.from_int(4096),
            0,
            vec![
                (k.from_int(1), 2),
                (k.from_int(4), 1),
                (k.from_rational(rat(1, 4)), 2),
                (k.from_rational(rat(1, 16)), 1),
            ],
        )
        .expect("valid polynomial");
        assert_eq!(
            d.big_a.expand(),
            expected.expand(),
            "A(H) must equal 4096(H-1)^2(H-4)(H-1/4)^2(H-1/16) exactly"
        );
        let g = gldim(&alg, DEFAULT_K_BOUND).expect("classifiable");
        assert_eq!(g.value, Gldim::Two);
        let gf = gldim_fixed(&alg, &phi, DEFAULT_K_BOUND).expect("classifiable");
        assert_eq!(gf.value, Gldim::Infinite);
        let r = qgwa::rootprops::rigidity(&alg, &phi).expect("rigidity decidable");
        assert!(!r.isomorphic, "fixed ring must not be isomorphic to R");
    });
}

#[test]
fn criterion_02_h_squared_example() {
    criterion(2, "a = h^2 with n = 2, m = 1", || {
        let k = FieldContext::new(1);
        let alg = algebra(
            1,
            BaseKind::Poly,
            k.from_rational(rat(1, 2)),
            k.one(),
            2,
            vec![],
        );
        let phi = eta(k.from_int(-1), k.one(), 2);
        let d = match fixed_ring_diagonal(&alg, &phi).expect("hypotheses hold") {
            FixedRingPresentation::DiagonalGwa(d) => d,
            other => panic!("expected a diagonal presentation, got {other:?}"),
        };
        assert_eq!((d.m, d.n), (1, 2));
        // A(H) = H exactly
        assert!(d.big_a.unit().is_one());
        assert_eq!(d.big_a.h_power(), 1);
        assert!(d.big_a.roots().is_empty());
        assert_eq!(
            gldim(&alg, DEFAULT_K_BOUND).expect("classifiable").value,
            Gldim::Infinite
        );
        assert_eq!(
            gldim_fixed(&alg, &phi, DEFAULT_K_BOUND).expect("classifiable").value,
            Gldim::Two
        );
    });
}

#[test]
fn criterion_03_linear_example_m_three() {
    criterion(3, "a = h - 1 with n = 1, m = 3", || {
        for q_rat in [Some(rat(1, 2)), None] {
            let k = FieldContext::new(3);
            let q = match &q_rat {
                Some(r) => k.from_rational(r.clone()),
                None => k.from_int(-1),
            };
            let alg = algebra(
                3,
                BaseKind::Poly,
                q.clone(),
                k.one(),
                0,
                vec![(k.from_int(1), 1)],
            );
            let phi = eta(k.one(), k.zeta(), 1);
            let d = match fixed_ring_diagonal(&alg, &phi).expect("hypotheses hold") {
                FixedRingPresentation::DiagonalGwa(d) => d,
                other => panic!("expected a diagonal presentation, got {other:?}"),
            };
            assert_eq!((d.m, d.n), (3, 1));
            // A equals (h-1)(h-q)(h-q^2) up to the computed leading unit
            let mut expected = LaurentPoly::one(k, BaseKind::Poly);
            for i in 0..3 {
                let factor = LaurentPoly::var(k, BaseKind::Poly)
                    .sub(&LaurentPoly::constant(k, BaseKind::Poly, q.pow(i)));
                expected = expected.mul(&factor);
            }
            assert_eq!(
                d.big_a.expand(),
                expected.scale(d.big_a.unit()),
                "A must be the unit times (h-1)(h-q)(h-q^2)"
            );
            let analysis = RootAnalysis::build(&alg, 1, 3).expect("analysis applies");
            let class = classify_a_multiplicity(&analysis).expect("classifiable");
            if q_rat.is_none() {
                // q = -1: the roots 1, -1, 1 include a repeat
                assert!(class.multiple, "A must have a multiple root at q = -1");
            } else {
                assert!(!class.multiple, "A must be squarefree at q = 1/2");
            }
        }
    });
}

/// Deterministic random suite of valid diagonal configurations:
/// gcd(m, n) = 1, deg a <= 8, both base kinds, torsion and non-torsion q.
fn random_diagonal_suite(count: usize) -> Vec<(Arc<QuantumGwa>, Automorphism)> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0401);
    let coprime_pairs: Vec<(u64, u64)> = (1..=6u64)
        .flat_map(|n| (1..=6u64).map(move |m| (n, m)))
        .filter(|&(n, m)| num_integer::gcd(n, m) == 1 && n * m > 1)
        .collect();
    let mut suite = Vec::new();
    while suite.len() < count {
        let torsion_q = suite.len() % 3 == 2;
        let &(n, m) = &coprime_pairs[rng.random_range(0..coprime_pairs.len())];
        // torsion q needs ord(q) coprime-ish to n m inside one cyclotomic
        // field; keep that field small so exact arithmetic stays fast
        if torsion_q && num_integer::lcm(n, m) > 8 {
            continue;
        }
        let (conductor, q_order) = if torsion_q {
            // smallest multiplicative order not dividing n m, preferring a
            // small ambient conductor
            let t = (3..=16u64)
                .filter(|t| (n * m) % t != 0)
                .min_by_key(|&t| num_integer::lcm(num_integer::lcm(n, m), t))
                .expect("an admissible order exists");
            (num_integer::lcm(num_integer::lcm(n, m), t), Some(t))
        } else {
            (num_integer::lcm(n, m), None)
        };
        let k = FieldContext::new(conductor);
        let q = match q_order {
            Some(t) => k
                .root_of_unity(t)
                .expect("conductor provides the torsion order"),
            None => {
                let num = rng.random_range(2..=4i64);
                let den = rng.random_range(1..=3i64);
                if num == den {
                    k.from_int(num + 1)
                } else {
                    k.from_rational(rat(num, den))
                }
            }
        };
        let laurent = rng.random_bool(0.5);
        let base_kind = if laurent { BaseKind::Laurent } else { BaseKind::Poly };
        // a must be gamma-stable: build it from full zeta_n-orbits of roots,
        // keeping the total degree at most 8
        let orbit_budget = (8 / n.max(1)) as usize;
        let orbit_count = rng.random_range(1..=orbit_budget.max(1));
        let mut roots: Vec<(FieldElement, u32)> = Vec::new();
        let zeta_n = k.root_of_unity(n).expect("n divides the conductor");
        for _ in 0..orbit_count {
            let seed_root = k.from_int(rng.random_range(1..=3));
            let mut r = seed_root;
            for _ in 0..n {
                roots.push((r.clone(), 1));
                r = &r * &zeta_n;
            }
        }
        // collapse repeated roots into multiplicities
        let mut merged: Vec<(FieldElement, u32)> = Vec::new();
        for (r, mult) in roots {
            match merged.iter_mut().find(|(s, _)| *s == r) {
                Some((_, m0)) => *m0 += mult,
                None => merged.push((r, mult)),
            }
        }
        let h_power = if laurent || !rng.random_bool(0.3) {
            0
        } else {
            n as i64 // keeps the degree (hence the default i0) divisible by n
        };
        if h_power + (n as i64) * (orbit_count as i64) > 8 {
            continue;
        }
        let k_ctx = k;
        let a = FactoredPoly::new(k_ctx, base_kind, k_ctx.one(), h_power, merged)
            .expect("valid polynomial");
        let alg = match QuantumGwa::new(base_kind, q, a) {
            Ok(a) => a,
            Err(_) => continue,
        };
        let gamma = match k_ctx.root_of_unity(n) {
            Some(g) => g,
            None => continue,
        };
        let mu = k_ctx.root_of_unity(m).expect("m divides the conductor");
        let i0 = qgwa::autogroup::default_i0(&alg);
        let phi = eta(gamma, mu, i0);
        if phi.validate(&alg).is_err() {
            continue;
        }
        if fixed_ring_diagonal(&alg, &phi).is_err() {
            continue;
        }
        suite.push((alg, phi));
    }
    suite
}

#[test]
fn criterion_04_randomized_verification_suite() {
    criterion(4, "25 randomized configurations verified at bounds (12, 24)", || {
        let start = Instant::now();
        let suite = random_diagonal_suite(25);
        for (i, (alg, phi)) in suite.iter().enumerate() {
            let presentation = fixed_ring_diagonal(alg, phi).expect("already checked");
            verify_fixed_ring(alg, phi, &presentation, 12, 24).unwrap_or_else(|e| {
                panic!("configuration {i} failed verification: {e}")
            });
        }
        assert!(
            start.elapsed() < Duration::from_secs(60),
            "suite exceeded the 60 s budget: {:?}",
            start.elapsed()
        );
    });
}

#[test]
fn criterion_05_transfer_cross_checks() {
    criterion(5, "global dimension and simplicity transfer cross-checks", || {
        let suite = random_diagonal_suite(25);
        for (i, (alg, phi)) in suite.iter().enumerate() {
            let d = match fixed_ring_diagonal(alg, phi).expect("already checked") {
                FixedRingPresentation::DiagonalGwa(d) => d,
                other => panic!("expected a diagonal presentation, got {other:?}"),
            };
            // the transfer theorem must agree with classifying the emitted
            // presentation directly
            let via_theorem = gldim_fixed(alg, phi, DEFAULT_K_BOUND)
                .unwrap_or_else(|e| panic!("configuration {i}: {e}"));
            let direct = gldim(&d.algebra, DEFAULT_K_BOUND)
                .unwrap_or_else(|e| panic!("configuration {i}: {e}"));
            if via_theorem.complete && direct.complete {
                assert_eq!(
                    via_theorem.value, direct.value,
                    "configuration {i}: transfer disagrees with the direct classification"
                );
            }
            if alg.base_kind() == BaseKind::Laurent {
                // simplicity_transfer raises a cross-check error on any
                // violation of the biconditional
                let t = simplicity_transfer(alg, phi, DEFAULT_K_BOUND)
                    .unwrap_or_else(|e| panic!("configuration {i}: {e}"));
                if t.original.complete && t.fixed.complete {
                    assert_eq!(t.original.simple, t.fixed.simple);
                }
            }
        }
    });
}

#[test]
fn criterion_06_composition_calculus() {
    criterion(6, "compose/inverse/order on 100+ random automorphism pairs", || {
        let mut rng = StdRng::seed_from_u64(0x5eed_0601);
        let k = FieldContext::new(12);
        // Poly algebra at q = -1 with monomial a admits every diagonal
        // automorphism and Omega
        let poly_alg = algebra(12, BaseKind::Poly, k.from_int(-1), k.one(), 1, vec![]);
        // Laurent algebra admits mu with an h-power
        let laurent_alg = algebra(
            12,
            BaseKind::Laurent,
            k.from_rational(rat(1, 2)),
            k.one(),
            0,
            vec![(k.from_int(1), 1), (k.from_int(-1), 1)],
        );
        let gens = |alg: &Arc<QuantumGwa>| {
            [
                GwaElement::gen_x(alg),
                GwaElement::gen_y(alg),
                GwaElement::gen_h(alg),
            ]
        };
        let mut checked = 0;
        for trial in 0..120 {
            let on_poly = trial % 3 != 2;
            let alg = if on_poly { &poly_alg } else { &laurent_alg };
            let i0 = qgwa::autogroup::default_i0(alg);
            let random_phi = |rng: &mut StdRng| -> Automorphism {
                let omega = on_poly && rng.random_bool(0.4);
                let gamma = if on_poly {
                    k.zeta().pow(rng.random_range(0..12))
                } else {
                    k.from_int(if rng.random_bool(0.5) { 1 } else { -1 })
                };
                let mu = k.zeta().pow(rng.random_range(0..12));
                let hpow = if on_poly { 0 } else { rng.random_range(-1..=1) };
                Automorphism::new(omega, gamma, mu, hpow, i0)
                    .expect("nonzero parameters")
                    .validate(alg)
                    .expect("parameters satisfy the structural conditions")
            };
            let phi = random_phi(&mut rng);
            let psi = random_phi(&mut rng);
            let composed = phi.compose(&psi, alg).expect("composable");
            let inv = phi.inverse(alg).expect("invertible");
            for g in gens(alg) {
                // composition rule, checked by exact pointwise action
                let lhs = g.apply_automorphism(&composed).expect("acts");
                let rhs = g
                    .apply_automorphism(&psi)
                    .expect("acts")
                    .apply_automorphism(&phi)
                    .expect("acts");
                assert_eq!(lhs.components(), rhs.components());
                // inverse rule
                let round = g
                    .apply_automorphism(&phi)
                    .expect("acts")
                    .apply_automorphism(&inv)
                    .expect("acts");
                assert_eq!(round.components(), g.components());
            }
            // order rule: phi^order = id and no smaller power is
            if let Some(order) = phi.order(alg).expect("order computable") {
                let mut acc = Automorphism::identity(alg);
                for _ in 0..order {
                    acc = phi.compose(&acc, alg).expect("composable");
                }
                assert!(acc.is_identity(), "phi^order must be the identity");
                for d in 1..order {
                    if order % d == 0 {
                        let mut acc = Automorphism::identity(alg);
                        for _ in 0..d {
                            acc = phi.compose(&acc, alg).expect("composable");
                        }
                        assert!(!acc.is_identity(), "order {order} is not minimal: {d}");
                    }
                }
            }
            // Omega^2 = id
            if on_poly {
                let omega = Automorphism::pure_omega(alg);
                let square = omega.compose(&omega, alg).expect("composable");
                assert!(square.is_identity());
            }
            checked += 1;
        }
        assert!(checked >= 100);
    });
}

#[test]
fn criterion_07_omega_invariant_identities() {
    criterion(7, "Omega-case commutation identities on random polynomials", || {
        let mut rng = StdRng::seed_from_u64(0x5eed_0701);
        for trial in 0..12 {
            let k = FieldContext::new(4);
            let deg = rng.random_range(1..=4u32);
            let mut roots = Vec::new();
            for _ in 0..deg {
                let mut r = k.from_int(rng.random_range(1..=4));
                if rng.random_bool(0.5) {
                    r = -&r;
                }
                match roots.iter_mut().find(|(s, _): &&mut (FieldElement, u32)| *s == r) {
                    Some((_, m)) => *m += 1,
                    None => roots.push((r, 1)),
                }
            }
            let alg = algebra(4, BaseKind::Poly, k.from_int(-1), k.one(), 0, roots);
            let mu = k.zeta().pow(rng.random_range(0..4));
            let i0 = qgwa::autogroup::default_i0(&alg);
            let phi = Automorphism::new(true, k.one(), mu, 0, i0)
                .expect("nonzero parameters");
            let o = match fixed_ring_omega(&alg, &phi)
                .unwrap_or_else(|e| panic!("trial {trial}: {e}"))
            {
                FixedRingPresentation::OmegaInvariants(o) => o,
                other => panic!("expected the invariant presentation, got {other:?}"),
            };
            // the full gamma = 1 relation list (including YX - XY = A and
            // X^2 - Y^2 = B) holds under exact multiplication, and the
            // brute-force invariants lie in the presented span
            verify_fixed_ring(&alg, &phi, &FixedRingPresentation::OmegaInvariants(o.clone()), 4, 6)
                .unwrap_or_else(|e| panic!("trial {trial}: {e}"));
            // A(H)H and B(H) are polynomials in H^2 = h^2
            for (poly, name) in [(o.cap_a.shift(1), "A(H)H"), (o.cap_b.clone(), "B(H)")] {
                assert!(
                    poly.coeffs().keys().all(|e| e % 2 == 0),
                    "{name} must lie in k[H^2]"
                );
            }
        }
    });
}

#[test]
fn criterion_08_gcd_probe() {
    criterion(8, "gcd failure probe at n = 6, m = 4", || {
        let k = FieldContext::new(12);
        // a = h^6 - 1 is stable under gamma of order 6; i0 = 0 makes
        // x^2 h^3 and y^2 h^3 fixed monomials
        let roots: Vec<(FieldElement, u32)> = (0..6)
            .map(|i| (k.root_of_unity(6).expect("zeta_6 exists").pow(i), 1))
            .collect();
        let alg = algebra(12, BaseKind::Poly, k.from_rational(rat(1, 2)), k.one(), 0, roots);
        let gamma = k.root_of_unity(6).expect("zeta_6 exists");
        let mu = k.root_of_unity(4).expect("zeta_4 exists");
        let phi = eta(gamma, mu, 0);
        let probe = probe_gcd_failure(&alg, &phi, 4, 8).expect("probe runs");
        assert_eq!((probe.n, probe.m, probe.gcd), (6, 4, 2));
        assert!(
            probe.generators.len() > 3,
            "minimal truncated generating set must exceed three elements, got {}",
            probe.generators.len()
        );
        let contains = |grade: i64, h_exp: i64| {
            probe.generators.iter().any(|g| {
                g.components().len() == 1
                    && g.component(grade).coeffs().keys().copied().collect::<Vec<_>>() == vec![h_exp]
            })
        };
        assert!(contains(-2, 3), "y^2 h^3 must be reported as a generator");
        assert!(contains(2, 3), "x^2 h^3 must be reported as a generator");
    });
}

#[test]
fn criterion_09_power_product_identities() {
    criterion(9, "m-fold power products match the closed forms", || {
        let mut rng = StdRng::seed_from_u64(0x5eed_0901);
        for _ in 0..8 {
            let conductor = [1u64, 3, 4][rng.random_range(0..3)];
            let k = FieldContext::new(conductor);
            let laurent = rng.random_bool(0.5);
            let base_kind = if laurent { BaseKind::Laurent } else { BaseKind::Poly };
            let q = k.from_rational(rat(rng.random_range(2..=5), rng.random_range(1..=3)));
            if q.is_one() {
                continue;
            }
            let deg = rng.random_range(1..=3u32);
            let roots: Vec<(FieldElement, u32)> =
                (0..deg).map(|i| (k.from_int(1 + i as i64), 1)).collect();
            let alg = algebra(conductor, base_kind, q, k.one(), 0, roots);
            let x = GwaElement::gen_x(&alg);
            let y = GwaElement::gen_y(&alg);
            for m in 1..=6u32 {
                let xm = x.pow(m).expect("multiplies");
                let ym = y.pow(m).expect("multiplies");
                let yx = ym.mul(&xm).expect("multiplies");
                let xy = xm.mul(&ym).expect("multiplies");
                assert_eq!(
                    yx,
                    GwaElement::from_base(&alg, alg.power_product_identity(m, PowerSide::YX)),
                    "y^m x^m closed form"
                );
                assert_eq!(
                    xy,
                    GwaElement::from_base(&alg, alg.power_product_identity(m, PowerSide::XY)),
                    "x^m y^m closed form"
                );
            }
        }
    });
}

#[test]
fn criterion_10_nakayama_is_an_algebra_map() {
    criterion(10, "Nakayama automorphism on simple-root algebras", || {
        let configs: Vec<(u64, i64, Vec<i64>)> = vec![
            (1, 2, vec![1]),
            (1, 3, vec![1, 2]),
            (1, 5, vec![1, 2, 3]),
            (3, 2, vec![1, -1]),
            (4, 7, vec![1, 2, -2]),
            (1, 2, vec![2, 3, 4, 5]),
        ];
        for (conductor, q_int, root_ints) in configs {
            let k = FieldContext::new(conductor);
            let roots = root_ints
                .iter()
                .map(|&r| (k.from_int(r), 1))
                .collect::<Vec<_>>();
            let alg = algebra(conductor, BaseKind::Poly, k.from_int(q_int), k.one(), 0, roots);
            let cy = twisted_calabi_yau(&alg).expect("classifier applies");
            assert!(cy.twisted_cy, "simple roots must give a twisted Calabi-Yau algebra");
            let nu = cy.nakayama.expect("Nakayama automorphism emitted");
            // nu(x) = q x, nu(y) = q^{-1} y, nu(h) = h -- and it is an algebra
            // map (relation preservation is re-verified inside the classifier)
            let q = alg.q().clone();
            let x = GwaElement::gen_x(&alg);
            let y = GwaElement::gen_y(&alg);
            let h = GwaElement::gen_h(&alg);
            assert_eq!(x.apply_automorphism(&nu).expect("acts"), x.scale(&q));
            assert_eq!(
                y.apply_automorphism(&nu).expect("acts"),
                y.scale(&q.inverse().expect("q nonzero"))
            );
            assert_eq!(h.apply_automorphism(&nu).expect("acts"), h);
        }
    });
}
