use cyclic_leibniz::sampling::{self, trial_rng};
use cyclic_leibniz::*;
use num_traits::Zero;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Scalar {
    Scalar::new(re, im)
}

fn tol() -> Tol {
    Tol::default()
}

/// Complex number with modulus in `[lo, hi]` and arbitrary phase.
fn annulus(lo: f64, hi: f64) -> impl Strategy<Value = Scalar> {
    (lo..=hi, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Scalar::from_polar(r, t))
}

fn unit_box() -> impl Strategy<Value = Scalar> {
    (-1.0..=1.0, -1.0..=1.0).prop_map(|(re, im)| c(re, im))
}

/// Tail of dimension `n` whose first nonzero entry sits at power `k`.
fn typed_tail(n_max: usize) -> impl Strategy<Value = (usize, usize, Vec<Scalar>)> {
    (2..=n_max)
        .prop_flat_map(|n| (Just(n), 2..=n))
        .prop_flat_map(|(n, k)| {
            (
                Just(n),
                Just(k),
                proptest::collection::vec(annulus(1e-2, 10.0), n + 1 - k),
            )
        })
        .prop_map(|(n, k, tail)| {
            let mut full = vec![Scalar::zero(); k - 2];
            full.extend(tail);
            (n, k, full)
        })
}

fn algebra_strategy(n_max: usize) -> impl Strategy<Value = Algebra> {
    typed_tail(n_max).prop_map(|(n, _, tail)| Algebra::build(n, tail, tol()).unwrap())
}

fn element(n: usize) -> impl Strategy<Value = Vector> {
    proptest::collection::vec(unit_box(), n).prop_map(Element::new)
}

/// Products written straight from the defining relations: `a·aʲ = aʲ⁺¹`,
/// `a·aⁿ = Σ αⱼaʲ`, everything else zero.
fn table_from_definition(a: &Algebra) -> MultiplicationTable<f64> {
    let n = a.dim();
    let mut t = MultiplicationTable::zero(n);
    for j in 1..=n {
        let value = if j < n {
            Element::basis(n, j + 1)
        } else {
            let mut coords = vec![Scalar::zero()];
            coords.extend_from_slice(a.tail());
            Element::new(coords)
        };
        t.set(1, j, value).unwrap();
    }
    t
}

fn max_dev(xs: &[Scalar], ys: &[Scalar]) -> f64 {
    xs.iter()
        .zip(ys)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Ascending coefficients of `∏ (t − rᵢ)`.
fn poly_from_roots(roots: &[Scalar]) -> Vec<Scalar> {
    let mut p = vec![c(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Scalar::zero(); p.len() + 1];
        for (i, &q) in p.iter().enumerate() {
            next[i + 1] += q;
            next[i] -= q * r;
        }
        p = next;
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn principal_root_power_recovers_base(x in annulus(1e-3, 1e3), p in -6i64..=6, q in 1u64..=8) {
        let r = principal_root(x, p, q).unwrap();
        let lhs = r.powi(q as i32);
        let rhs = x.powi(p as i32);
        prop_assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm().max(1.0), "{lhs} vs {rhs}");
    }

    #[test]
    fn approx_eq_is_reflexive_and_symmetric(x in annulus(0.0, 10.0), y in annulus(0.0, 10.0)) {
        prop_assert!(approx_eq(x, x, tol()));
        prop_assert_eq!(approx_eq(x, y, tol()), approx_eq(y, x, tol()));
    }

    #[test]
    fn multiplication_matches_definition((a, x, y, z, s) in algebra_strategy(12).prop_flat_map(|a| {
        let n = a.dim();
        (Just(a), element(n), element(n), element(n), annulus(0.1, 10.0))
    })) {
        let table = table_from_definition(&a);
        let direct = a.multiply(&x, &y).unwrap();
        prop_assert!(max_dev(direct.coords(), table.mul(&x, &y).coords()) < 1e-12);

        // bilinear in each slot
        let left = a.multiply(&(&x + &(s * &z)), &y).unwrap();
        let expect = &direct + &(s * &a.multiply(&z, &y).unwrap());
        prop_assert!(max_dev(left.coords(), expect.coords()) < 1e-10);
        let right = a.multiply(&x, &(&y + &(s * &z))).unwrap();
        let expect = &direct + &(s * &a.multiply(&x, &z).unwrap());
        prop_assert!(max_dev(right.coords(), expect.coords()) < 1e-10);

        // higher basis vectors annihilate from the left, exactly
        for j in 2..=a.dim() {
            prop_assert!(a.multiply(&a.basis(j), &x).unwrap().is_exact_zero());
        }
    }

    #[test]
    fn leibniz_identity_holds(a in algebra_strategy(12)) {
        let report = table_from_definition(&a).verify_leibniz(tol());
        prop_assert!(report.passed, "{}", report);
        prop_assert!(a.verify_leibniz().passed);
    }

    #[test]
    fn characteristic_polynomial_read_from_tail(a in algebra_strategy(12)) {
        let n = a.dim();
        let mut expected = vec![Scalar::zero(); n + 1];
        for (i, &alpha) in a.tail().iter().enumerate() {
            expected[i + 1] = -alpha;
        }
        expected[n] = c(1.0, 0.0);
        prop_assert!(max_dev(&a.char_poly(), &expected) < 1e-12);
        prop_assert!(a.cayley_hamilton_residual() < 1e-8);
    }

    #[test]
    fn powers_of_a_are_the_standard_basis(a in algebra_strategy(12)) {
        let powers = a.power_basis(&a.generator()).unwrap();
        for (j, p) in powers.iter().enumerate() {
            prop_assert_eq!(p, &a.basis(j + 1));
        }
    }

    /// `x·xⁿ` equals the formula law evaluated on the powers of `x`.
    #[test]
    fn generator_law_reproduces_top_product((a, x) in algebra_strategy(8).prop_flat_map(|a| {
        let n = a.dim();
        (Just(a), (annulus(0.1, 10.0), element(n)).prop_map(|(c1, mut x)| {
            let mut coords = x.coords().to_vec();
            coords[0] = c1;
            x = Element::new(coords);
            x
        }))
    })) {
        let law = generator_law(&a, x.leading()).unwrap();
        let powers = a.power_basis(&x).unwrap();
        let top = a.multiply(&x, powers.last().unwrap()).unwrap();
        let mut rebuilt = Element::zero(a.dim());
        for (power, &coeff) in (2..).zip(law.coefficients()) {
            rebuilt = &rebuilt + &(coeff * &powers[power - 1]);
        }
        let scale = top.max_norm().max(1.0);
        prop_assert!((&top - &rebuilt).max_norm() / scale < 1e-9);
        prop_assert_eq!(law.leading_power(tol()), detect_type(&a).k());
    }

    #[test]
    fn type_is_invariant_under_generator_change((a, s) in (algebra_strategy(10), annulus(0.1, 10.0))) {
        let law = generator_law(&a, s).unwrap();
        let b = Algebra::build(a.dim(), law.into_coefficients(), tol()).unwrap();
        prop_assert_eq!(detect_type(&a), detect_type(&b));
    }

    #[test]
    fn rescaled_generator_gives_an_isomorphic_algebra((a, s) in (algebra_strategy(8), annulus(0.5, 2.0))) {
        let law = generator_law(&a, s).unwrap();
        let b = Algebra::build(a.dim(), law.into_coefficients(), tol()).unwrap();
        prop_assert!(isomorphic(&a, &b));
        prop_assert!(isomorphic_by_orbit(&a, &b));
    }

    #[test]
    fn normalize_is_idempotent(a in algebra_strategy(12)) {
        let form = normalize(&a);
        let again = normalize(&form.to_algebra(tol()));
        prop_assert!(again.approx_eq(&form, tol()), "{:?} vs {:?}", form, again);
    }

    #[test]
    fn canonical_and_orbit_isomorphism_agree((a, b) in (2usize..=6).prop_flat_map(|n| {
        let tail = move || proptest::collection::vec(annulus(1e-2, 10.0), n - 1);
        (tail(), tail()).prop_map(move |(x, y)| {
            (Algebra::build(n, x, tol()).unwrap(), Algebra::build(n, y, tol()).unwrap())
        })
    })) {
        prop_assert_eq!(isomorphic(&a, &b), isomorphic_by_orbit(&a, &b));
    }

    #[test]
    fn rotations_compose((d, g, i, j) in (1usize..=6).prop_flat_map(|d| {
        (Just(d), proptest::collection::vec(annulus(1e-2, 10.0), d), 0..=d, 0..=d)
    })) {
        let g = GammaTuple::new(g);
        let composed = g.rotate(i).rotate(j);
        prop_assert!(composed.approx_eq(&g.rotate(i + j), Tolerance::new(1e-9).unwrap()));
        prop_assert!(g.rotate(d + 1).approx_eq(&g, tol()));
        let members = orbit(&g, tol());
        prop_assert_eq!((d + 1) % members.len(), 0);
        for m in &members {
            prop_assert!(equivalent(&g, m, tol()).unwrap());
            prop_assert!(equivalent(m, &g, tol()).unwrap());
            for other in &members {
                prop_assert!(equivalent(m, other, tol()).unwrap());
            }
        }
    }
}

#[test]
fn generic_tuples_have_full_orbits() {
    let mut rng = trial_rng(5, 0);
    for d in 1..=8 {
        for _ in 0..50 {
            let g = GammaTuple::new(
                (0..d)
                    .map(|_| sampling::complex_in_annulus::<f64, _>(&mut rng, 0.1, 10.0))
                    .collect(),
            );
            assert_eq!(orbit(&g, tol()).len(), d + 1);
        }
    }
}

#[test]
fn dimension_three_classes_are_separated_by_gamma() {
    let mut rng = trial_rng(9, 0);
    for _ in 0..100 {
        let g: Scalar = sampling::complex_in_annulus(&mut rng, 0.1, 10.0);
        let h: Scalar = sampling::complex_in_annulus(&mut rng, 0.1, 10.0);
        let a = Algebra::build(3, vec![c(1.0, 0.0), g], tol()).unwrap();
        let b = Algebra::build(3, vec![c(1.0, 0.0), h], tol()).unwrap();
        let expected = (g - h).norm().min((g + h).norm()) <= 1e-9;
        assert_eq!(isomorphic(&a, &b), expected, "{g} {h}");
    }
}

/// Generators are exactly the elements `p(a)` with `p` nonzero on every
/// eigenvalue of left multiplication by `a`. Tails are built from chosen
/// eigenvalues so that vanishing ones can be planted.
#[test]
fn generator_tests_agree_on_both_sides_of_the_boundary() {
    let mut rng = trial_rng(17, 0);
    for n in 2..=8 {
        for _ in 0..40 {
            let roots: Vec<Scalar> = (0..n - 1)
                .map(|_| sampling::complex_in_annulus(&mut rng, 0.3, 3.0))
                .collect();
            // tⁿ⁻¹ − Σ αⱼ tʲ⁻² = ∏ (t − rᵢ)
            let tail: Vec<Scalar> = poly_from_roots(&roots)[..n - 1]
                .iter()
                .map(|z| -z)
                .collect();
            let a = Algebra::build(n, tail, tol()).unwrap();

            let q: Vec<Scalar> = (0..n - 1)
                .map(|_| sampling::complex_in_annulus(&mut rng, 0.3, 3.0))
                .collect();
            let mut planted = vec![Scalar::zero(); n];
            for (i, &qi) in q.iter().enumerate() {
                planted[i + 1] += qi;
                planted[i] -= qi * roots[0];
            }
            let x = a.element(planted).unwrap();
            assert!(!a.is_generator(&x).unwrap(), "n={n} roots {roots:?}");
            assert!(law_by_linear_solve(&a, &x).is_err());

            let mut coords = vec![Scalar::zero(); n];
            coords[1] = c(1.0, 0.0);
            let x = a.element(coords).unwrap();
            assert!(!a.is_generator(&x).unwrap());
            assert!(law_by_linear_solve(&a, &x).is_err());

            let (x, _, conditioned) = well_conditioned_generator(&mut rng, &a);
            if conditioned {
                assert!(a.is_generator(&x).unwrap());
                assert!(law_by_linear_solve(&a, &x).is_ok());
            }
        }
    }
}

#[test]
fn oracle_law_agrees_with_formula() {
    let mut rng = trial_rng(23, 0);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let n = rand::Rng::random_range(&mut rng, 2..=8);
        let a: Algebra = sampling::algebra(&mut rng, n, tol());
        let (x, _, conditioned) = well_conditioned_generator(&mut rng, &a);
        if !conditioned {
            continue;
        }
        let formula = generator_law(&a, x.leading()).unwrap();
        let solved = law_by_linear_solve(&a, &x).unwrap();
        let scale = formula.max_norm().max(1.0);
        worst = worst.max(max_dev(formula.coefficients(), solved.coefficients()) / scale);
    }
    assert!(worst < 1e-7, "worst deviation {worst:e}");
}

#[test]
fn fuzz_reports_are_reproducible() {
    let config = FuzzConfig {
        trials: 100,
        dim_max: 6,
        seed: 99,
        tol: tol(),
    };
    let first = fuzz(&config);
    let second = fuzz(&config);
    assert!(first.passed(), "{first}");
    assert_eq!(first.to_string(), second.to_string());
    assert_eq!(first, second);
}

#[test]
fn single_precision_aliases() {
    let tol = Tol32::new(1e-4).unwrap();
    let a = Algebra32::build(
        3,
        vec![Scalar32::new(4.0, 0.0), Scalar32::new(2.0, 0.0)],
        tol,
    )
    .unwrap();
    let form: Form32 = normalize(&a);
    assert_eq!(form.label, TypeLabel::TypeK(2));
    assert!((form.gamma.entries()[0] - Scalar32::new(-1.0, 0.0)).norm() < 1e-4);
    assert!(a.verify_leibniz().passed);
}
