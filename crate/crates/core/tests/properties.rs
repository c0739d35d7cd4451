use std::collections::BTreeMap;

use proptest::prelude::*;

use vertexlie::formal_calc::{
    decompose, delta_window, oracle_radius, power_diff_coeff, DeltaSeries, LaurentPoly, Side, Window,
};
use vertexlie::lattice::{build_pl_algebra, Cocycle, EvenLattice, GradedQuotient};
use vertexlie::lie_core::{presets, sym_poisson};
use vertexlie::poly::{Monomial, Poly};
use vertexlie::rational::{factorial, Rational};
use vertexlie::vacuum::{StateVector, VacuumModule};
use vertexlie::vertex_lie::{affine, virasoro, Mode, VLStructure};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| Rational::new(p, q))
}

fn laurent_y() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, rational()), 1..=3).prop_map(|terms| {
        let mut g = LaurentPoly::zero(&["y"]);
        for (e, c) in terms {
            g.add_term(vec![e], c);
        }
        g
    })
}

fn delta_series() -> impl Strategy<Value = DeltaSeries<LaurentPoly>> {
    prop::collection::vec((0u32..=5, laurent_y()), 0..=4).prop_map(|terms| {
        let mut s = DeltaSeries::zero(Side::Y);
        for (k, g) in terms {
            s.add_term(k, &g);
        }
        s
    })
}

fn poly3() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..=2, 0u32..=2, 0u32..=2, -5i64..=5), 0..=4).prop_map(|terms| {
        let mut p = Poly::zero();
        for (a, b, c, k) in terms {
            let m = Monomial::from_pairs(vec![(0, a), (1, b), (2, c)].into_iter().filter(|x| x.1 > 0).collect());
            p.add_term(m, &Rational::from_int(k));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_diff_matches_window(m in 0u32..=10, n in 0u32..=10) {
        let oracle = delta_window(n, Window::radius(16)).mul_power_diff(m);
        let got = DeltaSeries::delta(n).mul_power_diff(m).render(oracle.window());
        prop_assert!(got.first_difference(&oracle).is_none());
        if m <= n {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(power_diff_coeff(m, n), Rational::from_int(sign) * factorial(n) / factorial(n - m));
        }
    }

    #[test]
    fn decompose_round_trip(s in delta_series()) {
        let w = Window::radius(oracle_radius(&s));
        let d = decompose(&s.render(w), s.max_order().unwrap_or(0), w).unwrap();
        prop_assert_eq!(d.canonical(), s.canonical());
    }

    #[test]
    fn side_swap_preserves_coefficients(s in delta_series()) {
        let w = Window::radius(oracle_radius(&s));
        let swapped = s.swap_side();
        prop_assert_eq!(swapped.side(), Side::X);
        prop_assert!(swapped.render(w).first_difference(&s.render(w)).is_none());
        prop_assert_eq!(swapped.swap_side().canonical(), s.canonical());
    }

    #[test]
    fn derivatives_commute_with_rendering(s in delta_series()) {
        let w = Window::radius(oracle_radius(&s) + 2);
        // d_x + d_y commutes with multiplication by x - y
        let lhs = s.d_x().add(&s.d_y()).mul_power_diff(1);
        let rhs = s.mul_power_diff(1).d_x().add(&s.mul_power_diff(1).d_y());
        prop_assert!(lhs.render(w).first_difference(&rhs.render(w)).is_none());
    }

    #[test]
    fn rational_serde_round_trip(r in rational()) {
        let text = serde_json::to_string(&r).unwrap();
        let back: Rational = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn sym_poisson_axioms(f in poly3(), g in poly3(), h in poly3()) {
        let sl2 = presets::sl2();
        prop_assert_eq!(sym_poisson(&sl2, &f, &g), -&sym_poisson(&sl2, &g, &f));
        let leibniz = &(&sym_poisson(&sl2, &f, &h) * &g) + &(&f * &sym_poisson(&sl2, &g, &h));
        prop_assert_eq!(sym_poisson(&sl2, &(&f * &g), &h), leibniz);
        let jac = &(&sym_poisson(&sl2, &f, &sym_poisson(&sl2, &g, &h)) + &sym_poisson(&sl2, &g, &sym_poisson(&sl2, &h, &f)))
            + &sym_poisson(&sl2, &h, &sym_poisson(&sl2, &f, &g));
        prop_assert!(jac.is_zero());
    }
}

/// Even positive definite `[[2a, b], [b, 2c]]`.
fn gram2() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1i64..=3, -3i64..=3, 1i64..=3)
        .prop_filter("positive definite", |(a, b, c)| 4 * a * c - b * b > 0)
        .prop_map(|(a, b, c)| vec![vec![2 * a, b], vec![b, 2 * c]])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn c2_invariants(g in gram2()) {
        let l = EvenLattice::new(g).unwrap();
        let c2 = l.enumerate_c2().unwrap();
        prop_assert!(c2.contains(&vec![0, 0]));
        for a in &c2 {
            let neg: Vec<i64> = a.iter().map(|x| -x).collect();
            prop_assert!(c2.contains(&neg));
            for k in 2..=3 {
                let ka: Vec<i64> = a.iter().map(|x| k * x).collect();
                prop_assert!(a.iter().all(|&x| x == 0) || !c2.contains(&ka));
            }
        }
        // spans L: the integer row lattice of C₂ has determinant ±1
        let mut best = 0i64;
        for a in &c2 {
            for b in &c2 {
                let d = a[0] * b[1] - a[1] * b[0];
                best = if best == 0 { d.abs() } else { gcd(best, d.abs()) };
            }
        }
        prop_assert_eq!(best, 1);
    }

    #[test]
    fn cocycle_identities(g in gram2(), a in prop::collection::vec(-3i64..=3, 2), b in prop::collection::vec(-3i64..=3, 2), c in prop::collection::vec(-3i64..=3, 2)) {
        let l = EvenLattice::new(g).unwrap();
        let e = Cocycle::new(&l);
        let bc: Vec<i64> = b.iter().zip(&c).map(|(x, y)| x + y).collect();
        prop_assert_eq!(e.eval(&a, &bc), e.eval(&a, &b) * e.eval(&a, &c));
        let sign = if l.inner(&a, &b).rem_euclid(2) == 0 { 1 } else { -1 };
        prop_assert_eq!(e.eval(&a, &b) * e.eval(&b, &a), sign);
        prop_assert_eq!(e.eval(&[0, 0], &b), 1);
    }

    #[test]
    fn pl_algebra_axioms(g in gram2()) {
        let p = build_pl_algebra(&EvenLattice::new(g).unwrap()).unwrap();
        let rep = p.check_all();
        prop_assert!(rep.passed(), "{}", rep);
    }

    #[test]
    fn quotient_reduction_is_a_projection(e1 in 1u32..=4, e2 in 1u32..=4, p in poly3()) {
        let gens = [Poly::var(0).pow(e1), Poly::var(1).pow(e2), (&Poly::var(0) + &Poly::var(2)).pow(2), Poly::var(2).pow(3)];
        let q = GradedQuotient::new(3, &gens, 20).unwrap();
        let v = q.reduce(&p);
        let back = q.basis().iter().zip(&v).fold(Poly::zero(), |acc, (m, c)| &acc + &Poly::monomial(m.clone(), c.clone()));
        prop_assert_eq!(q.reduce(&back), v);
        prop_assert!(q.contains(&(&p - &back)));
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn word(s: &VLStructure, raw: &[(u32, i64)]) -> Vec<Mode> {
    let ngens = s.generators().len() as u32;
    raw.iter().map(|&(g, n)| Mode::new(g % ngens, n)).collect()
}

fn commutator_holds(v: &VacuumModule, x: Mode, y: Mode, state: &StateVector) -> bool {
    let lhs = v.act(x, &v.act(y, state)).difference(&v.act(y, &v.act(x, state)));
    let rhs = v.act_element(&v.structure().gen_bracket(x, y), state);
    lhs == rhs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn vacuum_action_represents_the_bracket(
        raw in prop::collection::vec((0u32..4, -3i64..=-1), 0..=3),
        x in (0u32..4, -3i64..=3),
        y in (0u32..4, -3i64..=3),
    ) {
        let lam: BTreeMap<String, Rational> = [("c".to_string(), Rational::new(1, 2))].into_iter().collect();
        let vir = VacuumModule::new(virasoro(), Some(&lam)).unwrap();
        let s = vir.apply_word(&word(vir.structure(), &raw));
        let w = vir.structure().generator_index("omega").unwrap();
        prop_assert!(commutator_holds(&vir, Mode::new(w, x.1), Mode::new(w, y.1), &s));

        let lam: BTreeMap<String, Rational> = [("c".to_string(), Rational::from_int(2))].into_iter().collect();
        let aff = VacuumModule::new(affine(&presets::sl2(), &presets::sl2_form()).unwrap(), Some(&lam)).unwrap();
        let noncentral: Vec<u32> = (0..aff.structure().generators().len() as u32).filter(|&g| !aff.structure().is_central(g)).collect();
        let pick = |g: u32| noncentral[g as usize % noncentral.len()];
        let raw_nc: Vec<(u32, i64)> = raw.iter().map(|&(g, n)| (pick(g), n)).collect();
        let s = aff.apply_word(&word(aff.structure(), &raw_nc));
        prop_assert!(commutator_holds(&aff, Mode::new(pick(x.0), x.1), Mode::new(pick(y.0), y.1), &s));
    }

    #[test]
    fn pbw_normal_form_is_order_independent(raw in prop::collection::vec((0u32..3, -3i64..=-1), 0..=4)) {
        // creators commute up to brackets: applying a word and its reverse differ by
        // lower-length terms, so the top-length parts agree
        let lam: BTreeMap<String, Rational> = [("c".to_string(), Rational::from_int(1))].into_iter().collect();
        let aff = VacuumModule::new(affine(&presets::sl2(), &presets::sl2_form()).unwrap(), Some(&lam)).unwrap();
        let s = aff.structure();
        let noncentral: Vec<u32> = (0..s.generators().len() as u32).filter(|&g| !s.is_central(g)).collect();
        let w: Vec<Mode> = raw.iter().map(|&(g, n)| Mode::new(noncentral[g as usize % noncentral.len()], n)).collect();
        let mut rev = w.clone();
        rev.reverse();
        let a = aff.apply_word(&w);
        let b = aff.apply_word(&rev);
        let top = |v: &StateVector| -> Vec<_> { v.terms().filter(|(m, _)| m.len() == w.len()).map(|(m, c)| (m.clone(), c.clone())).collect() };
        prop_assert_eq!(top(&a), top(&b));
        prop_assert_eq!(aff.state_degree(&a), aff.state_degree(&b));
    }
}
