use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::presentation::PoissonPresentation;
use crate::error::Result;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::report::CheckReport;
use crate::vacuum::{StateVector, VacuumModule};
use crate::vertex_lie::{Mode, VLStructure};

/// Image of a state in `V(L)/C₂`: monomials with a factor `u(-n)`, `n >= 2`,
/// vanish, and `u(-1)` becomes the variable of generator `u`.
pub fn c2_reduce(s: &StateVector) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in s.terms() {
        if m.modes().iter().any(|x| x.n <= -2) {
            continue;
        }
        let mut p = Poly::constant(c.clone());
        for x in m.modes() {
            p = &p * &Poly::var(x.gen);
        }
        out = &out + &p;
    }
    out
}

pub fn p2_product(v: &VacuumModule, a: &StateVector, b: &StateVector) -> Result<Poly> {
    Ok(c2_reduce(&v.mode_of_state(a, -1, b)?))
}

pub fn p2_bracket(v: &VacuumModule, a: &StateVector, b: &StateVector) -> Result<Poly> {
    Ok(c2_reduce(&v.mode_of_state(a, 0, b)?))
}

/// Presentation on all generators; the bracket of `u, v` is the sum of the
/// `Δ`-coefficients of the table with no derivative, projected to the
/// generators. A central character adds the relations `z - λ(z)`.
pub fn p2_structure_of(v: &VacuumModule) -> Result<PoissonPresentation> {
    let vl = v.structure();
    let gens = vl.generators();
    let n = gens.len();
    let mut bracket = vec![vec![Poly::zero(); n]; n];
    for (gi, a) in gens.iter().enumerate() {
        for (gj, b) in gens.iter().enumerate() {
            let (Some(i), Some(j)) = (a.basis, b.basis) else { continue };
            let mut f = vec![Rational::zero(); vl.dim()];
            for t in vl.table_entry(i, j) {
                if t.k == 0 && t.l == 0 {
                    for (x, c) in f.iter_mut().zip(&t.f) {
                        *x += c;
                    }
                }
            }
            let mut p = Poly::zero();
            for (m, c) in vl.reduce_mode(&f, -1).terms() {
                if m.n == -1 {
                    p.add_term(crate::poly::Monomial::var(m.gen), c);
                }
            }
            bracket[gi][gj] = p;
        }
    }
    let names = gens.iter().map(|g| g.name.clone()).collect();
    let mut pres = PoissonPresentation::new(names, bracket)?;
    if v.has_lambda() {
        let ideal =
            (0..n as u32).filter_map(|g| v.lambda_of(g).map(|l| &Poly::var(g) - &Poly::constant(l.clone()))).collect();
        pres = pres.with_ideal(ideal);
    }
    Ok(pres)
}

pub fn p2_structure(vl: &VLStructure, lambda: Option<&BTreeMap<String, Rational>>) -> Result<PoissonPresentation> {
    p2_structure_of(&VacuumModule::new_unchecked(vl.clone(), lambda)?)
}

/// Sample parameters for [`verify_p2_iso`].
#[derive(Clone, Copy, Debug)]
pub struct P2Samples {
    pub seed: u64,
    pub count: usize,
    pub max_degree: i64,
}

impl Default for P2Samples {
    fn default() -> Self {
        P2Samples { seed: 0, count: 50, max_degree: 3 }
    }
}

fn random_state(v: &VacuumModule, rng: &mut ChaCha8Rng, max_degree: i64) -> StateVector {
    let gens = v.structure().generators();
    let mut out = StateVector::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut word = Vec::new();
        let mut deg = 0;
        for _ in 0..rng.gen_range(0..=3) {
            let g = rng.gen_range(0..gens.len()) as u32;
            if v.structure().is_central(g) && v.has_lambda() {
                continue;
            }
            let n = if v.structure().is_central(g) { -1 } else { -rng.gen_range(1..=3) };
            let x = Mode::new(g, n);
            let d = v.mode_degree(&x).unwrap_or(0);
            if deg + d > max_degree {
                continue;
            }
            deg += d;
            word.push(x);
        }
        let c = Rational::from_int(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
        out.add_scaled(&v.apply_word(&word), &c);
    }
    out
}

/// Compares the products and brackets computed in the vacuum module with the
/// presentation, on generator pairs and on seeded random states.
pub fn verify_p2_iso(v: &VacuumModule, samples: P2Samples) -> Result<CheckReport> {
    let mut rep = CheckReport::new("P2 isomorphism");
    let pres = match p2_structure_of(v) {
        Ok(p) => p,
        Err(e) => {
            rep.fail(e.to_string());
            return Ok(rep);
        }
    };
    let vl = v.structure();
    let gens: Vec<u32> = (0..vl.generators().len() as u32).filter(|&g| !(vl.is_central(g) && v.has_lambda())).collect();
    let states: Vec<StateVector> = gens.iter().map(|&g| v.apply_word(&[Mode::new(g, -1)])).collect();
    for (a, &ga) in states.iter().zip(&gens) {
        for (b, &gb) in states.iter().zip(&gens) {
            let prod = p2_product(v, a, b)?;
            let want = pres.reduce(&(&Poly::var(ga) * &Poly::var(gb)));
            rep.check(prod == want, || {
                format!(
                    "{} * {}: module {} presentation {}",
                    vl.gen_name(ga),
                    vl.gen_name(gb),
                    pres.format(&prod),
                    pres.format(&want)
                )
            });
            let br = p2_bracket(v, a, b)?;
            let want = pres.reduce(pres.generator_bracket(ga as usize, gb as usize));
            rep.check(br == want, || {
                format!(
                    "{{{}, {}}}: module {} presentation {}",
                    vl.gen_name(ga),
                    vl.gen_name(gb),
                    pres.format(&br),
                    pres.format(&want)
                )
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(samples.seed);
    for _ in 0..samples.count {
        let a = random_state(v, &mut rng, samples.max_degree);
        let b = random_state(v, &mut rng, samples.max_degree);
        let (pa, pb) = (c2_reduce(&a), c2_reduce(&b));
        let prod = p2_product(v, &a, &b)?;
        let want = pres.reduce(&(&pa * &pb));
        rep.check(prod == want, || {
            format!(
                "product of {} and {}: module {} presentation {}",
                v.format_state(&a),
                v.format_state(&b),
                pres.format(&prod),
                pres.format(&want)
            )
        });
        let br = p2_bracket(v, &a, &b)?;
        let want = pres.reduce(&pres.bracket_poly(&pa, &pb));
        rep.check(br == want, || {
            format!(
                "bracket of {} and {}: module {} presentation {}",
                v.format_state(&a),
                v.format_state(&b),
                pres.format(&br),
                pres.format(&want)
            )
        });
        // C₂ absorption: a_{-1} (u(-2) b) ∈ C₂
        if let Some(&g) = gens.iter().find(|&&g| !vl.is_central(g)) {
            let t = v.act(Mode::new(g, -2), &b);
            let p = p2_product(v, &a, &t)?;
            rep.check(p.is_zero(), || format!("{} * {} is not in C2", v.format_state(&a), v.format_state(&t)));
        }
    }
    Ok(rep)
}
