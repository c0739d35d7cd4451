//! Acceptance harness: one PASS/FAIL line per criterion.
//!
//! Criterion 1 is evaluated with its stated coefficient `binom(-n, m) m!`,
//! which disagrees with the window oracle for `m >= 2`; it is listed as a
//! known failure and does not affect the exit status. Every other failure
//! does.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vertexlie::formal_calc::{
    decompose, delta_window, gen_binomial, oracle_radius, BiSeriesWindow, DeltaSeries, LaurentPoly, Side, Window,
};
use vertexlie::lattice::{bk_compare, build_pl_algebra, EvenLattice};
use vertexlie::lie_core::{presets, BilinearForm, FiniteLieAlgebra};
use vertexlie::poisson::{p2_structure_of, verify_p2_iso, P2Samples, VPDiffAlgebra};
use vertexlie::poly::Poly;
use vertexlie::rational::{factorial, Rational};
use vertexlie::vacuum::{StateVector, VacuumModule};
use vertexlie::vertex_lie::algebra::samples;
use vertexlie::vertex_lie::builders::{corrupt_table, loop_data};
use vertexlie::vertex_lie::{
    affine, b3_criterion, heisenberg, loop_algebra, novikov, novikov_criterion, virasoro, witt, Mode, ModeElement,
    VLStructure,
};

const KNOWN_FAILURES: &[u32] = &[1];

struct Outcome {
    id: u32,
    pass: bool,
    detail: String,
}

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

fn lam(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn ms(d: Duration) -> String {
    format!("{:.1} ms", d.as_secs_f64() * 1e3)
}

/// `(x-y)^m Δ^(n)` against `binom(-n, m) m! Δ^(n-m)` on a window.
fn ac1() -> Outcome {
    let start = Instant::now();
    let base = Window::radius(14);
    let mut literal_bad = Vec::new();
    let mut impl_bad = Vec::new();
    for m in 0..=8u32 {
        for n in 0..=8u32 {
            // oracle: multiply the sampled Δ^(n) cell by cell
            let oracle = delta_window(n, base).mul_power_diff(m);
            let w = oracle.window();
            let stated_ok = if m > n {
                oracle.is_zero()
            } else {
                let c = gen_binomial(-(n as i64), m) * factorial(m);
                let d = delta_window(n - m, w);
                oracle.first_difference(&BiSeriesWindow::from_fn(w, |a, b| &c * &d.get(a, b))).is_none()
            };
            if !stated_ok {
                literal_bad.push((m, n));
            }
            let implemented = DeltaSeries::delta(n).mul_power_diff(m).render(w);
            if implemented.first_difference(&oracle).is_some() {
                impl_bad.push((m, n));
            }
        }
    }
    let t = start.elapsed();
    let pass = literal_bad.is_empty() && t < Duration::from_secs(1);
    let shown: Vec<String> = literal_bad.iter().take(6).map(|(m, n)| format!("({m},{n})")).collect();
    Outcome {
        id: 1,
        pass,
        detail: format!(
            "stated coefficient mismatches the window oracle on {} of 81 (m,n) pairs, e.g. {}; implementation (-1)^m n!/(n-m)! matches the oracle on {} of 81 pairs; {}",
            literal_bad.len(),
            shown.join(" "),
            81 - impl_bad.len(),
            ms(t)
        ),
    }
}

fn random_series(rng: &mut ChaCha8Rng) -> DeltaSeries<LaurentPoly> {
    let mut s = DeltaSeries::zero(Side::Y);
    for k in 0..=rng.gen_range(0..=5u32) {
        if rng.gen_bool(0.3) {
            continue;
        }
        let mut g = LaurentPoly::zero(&["y"]);
        for _ in 0..rng.gen_range(1..=3) {
            let e = rng.gen_range(-4..=4);
            let c = Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=4));
            g.add_term(vec![e], c);
        }
        s.add_term(k, &g);
    }
    s
}

fn ac2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut ok = 0;
    let mut bad = Vec::new();
    for i in 0..100 {
        let s = random_series(&mut rng);
        let w = Window::radius(oracle_radius(&s));
        let rendered = s.render(w);
        match decompose(&rendered, s.max_order().unwrap_or(0), w) {
            Ok(d) if d.canonical() == s.canonical() => ok += 1,
            Ok(_) => bad.push(format!("sample {i}: decomposition differs")),
            Err(e) => bad.push(format!("sample {i}: {e}")),
        }
    }
    Outcome {
        id: 2,
        pass: bad.is_empty(),
        detail: format!("{ok}/100 seeded series recovered exactly {}", bad.join("; ")),
    }
}

/// `(m-n)L(m+n) + δ_{m+n,0}(m³-m)/12 c` with `L(p) = ω(p+1)`.
fn virasoro_expected(s: &VLStructure, m: i64, n: i64) -> ModeElement {
    let w = s.generator_index("omega").unwrap();
    let c = s.generator_index("c").unwrap();
    let mut e = ModeElement::single(Mode::new(w, m + n + 1), r(m - n));
    if m + n == 0 {
        e.add_term(Mode::new(c, -1), &Rational::new(m * m * m - m, 12));
    }
    e
}

fn ac3() -> Outcome {
    let s = virasoro();
    let w = s.generator_index("omega").unwrap();
    let mut bad = Vec::new();
    let mut brackets = 0;
    for m in -6..=6 {
        for n in -6..=6 {
            brackets += 1;
            if s.bracket_by_name("omega", m + 1, "omega", n + 1).unwrap() != virasoro_expected(&s, m, n) {
                bad.push(format!("[L{m}, L{n}]"));
            }
        }
    }
    let v = VacuumModule::new(s.clone(), Some(&lam(&[("c", Rational::new(1, 2))]))).unwrap();
    let mut states = Vec::new();
    for d in 0..=8 {
        states.extend(v.basis(d).unwrap());
    }
    let mut actions = 0;
    for p in &states {
        let st = StateVector::monomial(p.clone(), Rational::one());
        for m in -6..=6i64 {
            for n in -6..=6i64 {
                actions += 1;
                let (lm, ln) = (Mode::new(w, m + 1), Mode::new(w, n + 1));
                let lhs = v.act(lm, &v.act(ln, &st)).difference(&v.act(ln, &v.act(lm, &st)));
                let rhs = v.act_element(&virasoro_expected(&s, m, n), &st);
                if lhs != rhs {
                    bad.push(format!("[L{m}, L{n}] on {}", v.format_state(&st)));
                }
            }
        }
    }
    Outcome {
        id: 3,
        pass: bad.is_empty(),
        detail: format!(
            "{brackets} brackets, {actions} operator commutators on {} states of degree <= 8 at c = 1/2{}",
            states.len(),
            if bad.is_empty() { String::new() } else { format!("; first failure {}", bad[0]) }
        ),
    }
}

fn ac4() -> Outcome {
    let sl2 = presets::sl2();
    let good: Vec<(&str, VLStructure)> = vec![
        ("witt", witt()),
        ("virasoro", virasoro()),
        ("loop(sl2)", loop_algebra(&sl2).unwrap()),
        ("affine(sl2)", affine(&sl2, &presets::sl2_form()).unwrap()),
        ("heisenberg(rank 2)", heisenberg(&BilinearForm::from_ints(&[&[2, 1], &[1, 3]])).unwrap()),
        ("novikov(dual numbers)", novikov(&samples::dual_numbers(), None).unwrap()),
    ];
    let mut problems = Vec::new();
    for (name, s) in &good {
        let rep = s.verify_jacobi(4);
        if !rep.passed() {
            problems.push(format!("{name} fails: {}", rep.failures[0]));
        }
    }
    let mut negatives = 0;
    let mut detected = 0;
    let mut record = |label: String, data, problems: &mut Vec<String>| {
        negatives += 1;
        let rep = VLStructure::uncertified(data).unwrap().verify_jacobi(4);
        if rep.passed() {
            problems.push(format!("{label} passes Jacobi"));
        } else {
            detected += 1;
        }
    };
    for (name, s) in good.iter().filter(|(n, _)| !n.starts_with("heisenberg")) {
        for seed in 0..3 {
            record(format!("{name} corrupted with seed {seed}"), corrupt_table(s, seed), &mut problems);
        }
    }
    record("loop of a bracket violating Jacobi".into(), loop_data(&presets::jacobi_violator()), &mut problems);
    // central tables cannot break Jacobi; a nonsymmetric matrix breaks skew symmetry
    let asym = VLStructure::uncertified(vertexlie::vertex_lie::builders::heisenberg_data(&BilinearForm::from_ints(&[
        &[1, 2],
        &[0, 1],
    ])))
    .unwrap();
    let skew_caught = !asym.verify_skew_symmetry(4).passed();
    if !skew_caught {
        problems.push("nonsymmetric Heisenberg passes skew symmetry".into());
    }
    Outcome {
        id: 4,
        pass: problems.is_empty(),
        detail: format!(
            "{} builders pass Jacobi at window 4; {detected}/{negatives} seeded invalid tables fail Jacobi with a witness; nonsymmetric Heisenberg fails skew symmetry: {skew_caught}{}",
            good.len(),
            if problems.is_empty() { String::new() } else { format!("; {}", problems.join("; ")) }
        ),
    }
}

/// Partitions of `n` into parts at least `min`.
fn partitions(n: i64, min: i64) -> usize {
    if n == 0 {
        return 1;
    }
    (min..=n).map(|p| partitions(n - p, p)).sum()
}

fn ac5() -> Outcome {
    let t = Instant::now();
    let vir = VacuumModule::new(virasoro(), Some(&lam(&[("c", Rational::new(1, 2))]))).unwrap();
    let vc = vir.character(10).unwrap();
    let tv = t.elapsed();
    let t = Instant::now();
    let heis =
        VacuumModule::new(heisenberg(&BilinearForm::from_ints(&[&[1]])).unwrap(), Some(&lam(&[("c", r(1))]))).unwrap();
    let hc = heis.character(9).unwrap();
    let th = t.elapsed();
    let want_v: Vec<usize> = vec![1, 0, 1, 1, 2, 2, 4, 4, 7, 8, 12];
    let want_h: Vec<usize> = vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30];
    let oracle_v: Vec<usize> = (0..=10).map(|d| partitions(d, 2)).collect();
    let oracle_h: Vec<usize> = (0..=9).map(|d| partitions(d, 1)).collect();
    let pass = vc == want_v
        && oracle_v == want_v
        && hc == want_h
        && oracle_h == want_h
        && tv < Duration::from_secs(1)
        && th < Duration::from_secs(1);
    Outcome { id: 5, pass, detail: format!("Virasoro {vc:?} in {}; Heisenberg {hc:?} in {}", ms(tv), ms(th)) }
}

fn ac6() -> Outcome {
    let t = Instant::now();
    let mut total = 0;
    let mut bad = Vec::new();
    let vir = VacuumModule::new(virasoro(), Some(&lam(&[("c", Rational::new(1, 2))]))).unwrap();
    let w = vir.field_state("omega").unwrap();
    let rep = vir.borcherds_check(&w, &w, 3, 6).unwrap();
    total += rep.checked;
    bad.extend(rep.failures);
    let aff =
        VacuumModule::new(affine(&presets::sl2(), &presets::sl2_form()).unwrap(), Some(&lam(&[("c", r(1))]))).unwrap();
    let fields: Vec<StateVector> = ["e", "h", "f"].iter().map(|n| aff.field_state(n).unwrap()).collect();
    for a in &fields {
        for b in &fields {
            let rep = aff.borcherds_check(a, b, 3, 6).unwrap();
            total += rep.checked;
            bad.extend(rep.failures);
        }
    }
    Outcome {
        id: 6,
        pass: bad.is_empty() && total > 0,
        detail: format!(
            "{total} commutator identities (Virasoro omega x omega, affine sl2 all 9 generator pairs, states of degree <= 6, |m|,|n| <= 3) in {}{}",
            ms(t.elapsed()),
            bad.first().map(|f| format!("; first failure {f}")).unwrap_or_default()
        ),
    }
}

fn sl2_bracket_oracle() -> Vec<Vec<Poly>> {
    // basis e, h, f: [e,h] = -2e, [e,f] = h, [h,f] = -2f
    let (e, h, f) = (Poly::var(0), Poly::var(1), Poly::var(2));
    let z = Poly::zero();
    vec![
        vec![z.clone(), e.scale(&r(-2)), h.clone()],
        vec![e.scale(&r(2)), z.clone(), f.scale(&r(-2))],
        vec![-&h, f.scale(&r(2)), z],
    ]
}

fn ac7() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for c0 in [Rational::new(1, 2), r(-22) / r(5), r(1)] {
        let v = VacuumModule::new(virasoro(), Some(&lam(&[("c", c0.clone())]))).unwrap();
        let pres = p2_structure_of(&v).unwrap().eliminate();
        let shape = pres.names() == ["omega"] && pres.generator_bracket(0, 0).is_zero() && pres.ideal().is_empty();
        let rep = verify_p2_iso(&v, P2Samples::default()).unwrap();
        pass &= shape && rep.passed();
        notes.push(format!(
            "Vir c={c0}: Q[omega] {shape}, iso {}/{} checks",
            rep.checked - rep.failures.len(),
            rep.checked
        ));
    }
    let g = presets::sl2();
    let v = VacuumModule::new(loop_algebra(&g).unwrap(), None).unwrap();
    let pres = p2_structure_of(&v).unwrap();
    let oracle = sl2_bracket_oracle();
    let names_ok = pres.names() == ["e", "h", "f"];
    let table_ok = (0..3).all(|i| (0..3).all(|j| pres.generator_bracket(i, j) == &oracle[i][j]));
    let rep = verify_p2_iso(&v, P2Samples::default()).unwrap();
    pass &= names_ok && table_ok && rep.passed();
    notes.push(format!(
        "L(sl2): S(sl2) generators {names_ok}, structure constants {table_ok}, iso {}/{} checks",
        rep.checked - rep.failures.len(),
        rep.checked
    ));
    Outcome { id: 7, pass, detail: notes.join("; ") }
}

fn ac8() -> Outcome {
    let g: FiniteLieAlgebra = presets::sl2();
    let a = VPDiffAlgebra::ultra_poisson(&g);
    let pres = match a.pvpa_quotient() {
        Ok(p) => p,
        Err(e) => return Outcome { id: 8, pass: false, detail: e.to_string() },
    };
    let oracle = sl2_bracket_oracle();
    let table_ok = pres.ngens() == 3 && (0..3).all(|i| (0..3).all(|j| pres.generator_bracket(i, j) == &oracle[i][j]));
    let ext = a.check_extension(&a.default_samples());
    let axioms = pres.check_axioms(&[Poly::var(0), &Poly::var(1) * &Poly::var(2), Poly::var(2).pow(2)]);
    Outcome {
        id: 8,
        pass: table_ok && ext.passed() && axioms.passed() && a.check_table_skew().passed(),
        detail: format!("quotient brackets equal the sl2 structure constants: {table_ok}; {}; {}", ext, axioms)
            .replace('\n', " "),
    }
}

fn ac9() -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    let mut pass = true;
    for k in 1..=3i64 {
        let l = EvenLattice::new(vec![vec![2 * k]]).unwrap();
        let c2 = l.enumerate_c2().unwrap();
        let p = build_pl_algebra(&l).unwrap();
        let rep = p.check_all();
        let bk = bk_compare(k as u32).unwrap();
        let ok = c2 == vec![vec![0], vec![-1], vec![1]] && p.dim() as i64 == 2 * k + 3 && rep.passed() && bk.passed();
        pass &= ok;
        notes.push(format!(
            "k={k}: |C2|={} dim {} axioms {}/{} B_k {}/{}",
            c2.len(),
            p.dim(),
            rep.checked - rep.failures.len(),
            rep.checked,
            bk.checked - bk.failures.len(),
            bk.checked
        ));
    }
    let a2 = EvenLattice::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
    let p = build_pl_algebra(&a2).unwrap();
    let rep = p.check_all();
    pass &= p.c2().len() == 7 && rep.passed();
    notes.push(format!(
        "A2: |C2|={} dim {} axioms {}/{}",
        p.c2().len(),
        p.dim(),
        rep.checked - rep.failures.len(),
        rep.checked
    ));
    let el = t.elapsed();
    pass &= el < Duration::from_secs(10);
    Outcome { id: 9, pass, detail: format!("{}; {}", notes.join("; "), ms(el)) }
}

fn ac10() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for g in [vec![vec![-2]], vec![vec![0, 1], vec![1, 0]]] {
        let l = EvenLattice::new(g.clone()).unwrap();
        let p = build_pl_algebra(&l).unwrap();
        let w = p.to_json().negative_witness;
        let ok = p.is_zero_algebra() && w.as_ref().is_some_and(|v| l.norm(v) < 0);
        pass &= ok;
        notes.push(format!("{g:?}: zero algebra {}, negative vector {w:?}", p.is_zero_algebra()));
    }
    Outcome { id: 10, pass, detail: notes.join("; ") }
}

fn ac11() -> Outcome {
    use samples::*;
    let mut notes = Vec::new();
    let mut pass = true;
    let nov_pos = [
        ("dual numbers", dual_numbers()),
        ("Q[t]/t^3", truncated_polynomial(3)),
        ("u1u1=u2", square_to_second()),
        ("zero", zero_algebra(2)),
    ];
    let nov_neg = [
        ("commutative nonassociative", commutative_nonassociative()),
        ("matrix units", matrix_units()),
        ("anticommutative", anticommutative_step()),
    ];
    let (mut pos, mut neg) = (0, 0);
    for (name, b) in nov_pos.iter() {
        let c = novikov_criterion(b, None, 3).unwrap();
        if c.predicted && c.agree && c.jacobi.passed() && c.skew.passed() {
            pos += 1;
        } else {
            pass = false;
            notes.push(format!("Novikov positive {name} rejected"));
        }
    }
    for (name, b) in nov_neg.iter() {
        let c = novikov_criterion(b, None, 3).unwrap();
        if !c.predicted && c.agree && !(c.jacobi.passed() && c.skew.passed()) {
            neg += 1;
        } else {
            pass = false;
            notes.push(format!("Novikov negative {name} accepted"));
        }
    }
    notes.insert(
        0,
        format!(
            "commutative associative iff window-valid: {pos}/{} positive, {neg}/{} negative",
            nov_pos.len(),
            nov_neg.len()
        ),
    );
    let b3_pos = [
        ("zero", zero_algebra(2)),
        ("u1u1=u2", square_to_second()),
        ("tQ[t]/t^3", nilpotent_truncated(3)),
        ("anticommutative", anticommutative_step()),
    ];
    let b3_neg = [
        ("tQ[t]/t^4", nilpotent_truncated(4)),
        ("dual numbers", dual_numbers()),
        ("Q[t]/t^3", truncated_polynomial(3)),
        ("matrix units", matrix_units()),
    ];
    let (mut pos, mut neg) = (0, 0);
    for (name, b) in b3_pos.iter() {
        let c = b3_criterion(b, None, 3).unwrap();
        if c.predicted && c.jacobi.passed() {
            pos += 1;
        } else {
            pass = false;
            notes.push(format!("B^3 positive {name} rejected"));
        }
    }
    for (name, b) in b3_neg.iter() {
        let c = b3_criterion(b, None, 3).unwrap();
        if !c.predicted && !c.jacobi.passed() {
            neg += 1;
        } else {
            pass = false;
            notes.push(format!("B^3 negative {name} accepted"));
        }
    }
    notes.push(format!("B^3 = 0 iff Jacobi holds: {pos}/{} positive, {neg}/{} negative", b3_pos.len(), b3_neg.len()));
    Outcome { id: 11, pass, detail: notes.join("; ") }
}

fn main() -> ExitCode {
    let checks: [fn() -> Outcome; 11] = [ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10, ac11];
    let mut unexpected = 0;
    let mut passed = 0;
    for f in checks {
        let t = Instant::now();
        let o = f();
        let known = KNOWN_FAILURES.contains(&o.id);
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let tag = if !o.pass && known { " (known: stated formula disagrees with the oracle)" } else { "" };
        println!("AC{:<2} {verdict}{tag} [{}] {}", o.id, ms(t.elapsed()), o.detail);
        if o.pass {
            passed += 1;
        } else if !known {
            unexpected += 1;
        }
    }
    println!(
        "acceptance: {passed}/11 pass, {} known failure(s), {unexpected} unexpected failure(s)",
        11 - passed - unexpected
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
