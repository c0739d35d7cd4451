//! Tables for the standard vertex Lie algebras.

use std::sync::OnceLock;

use super::algebra::FiniteAlgebra;
use super::structure::{VLData, VLStructure};
use crate::error::{Error, Result};
use crate::lie_core::{check_invariance, BilinearForm, FiniteLieAlgebra};
use crate::rational::Rational;

/// Window on which builders certify skew symmetry and Jacobi.
pub const CERTIFY_WINDOW: i64 = 4;

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

fn names_with(base: &[String], extra: &[&str]) -> Vec<String> {
    base.iter().cloned().chain(extra.iter().map(|s| s.to_string())).collect()
}

fn data_from(names: Vec<String>, degrees: Option<Vec<i64>>) -> VLData {
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    VLData::new(&refs, degrees)
}

/// `[ω(x), ω(y)] = ω'(y)Δ - 2ω(y)Δ^(1)`.
pub fn witt_data() -> VLData {
    let mut d = VLData::new(&["omega"], Some(vec![2]));
    d.push_basis(0, 0, 0, r(1), 1, 0);
    d.push_basis(0, 0, 0, r(-2), 0, 1);
    d
}

/// Witt table plus the central line `-(1/12) c Δ^(3)`, with `d c = 0`.
pub fn virasoro_data() -> VLData {
    let mut d = VLData::new(&["omega", "c"], Some(vec![2, 0]));
    d.add_d_zero(1);
    d.push_basis(0, 0, 0, r(1), 1, 0);
    d.push_basis(0, 0, 0, r(-2), 0, 1);
    d.push_basis(0, 0, 1, Rational::new(-1, 12), 0, 3);
    d
}

pub fn loop_data(g: &FiniteLieAlgebra) -> VLData {
    let n = g.dim();
    let mut d = data_from(g.names().to_vec(), Some(vec![1; n]));
    for a in 0..n {
        for b in 0..n {
            d.push(a, b, g.bracket_basis(a, b).to_vec(), 0, 0);
        }
    }
    d
}

/// `[a(x), b(y)] = [a,b](y)Δ - (a|b) c(y)Δ^(1)`.
pub fn affine_data(g: &FiniteLieAlgebra, form: &BilinearForm) -> VLData {
    let n = g.dim();
    let mut degrees = vec![1; n];
    degrees.push(0);
    let mut d = data_from(names_with(g.names(), &["c"]), Some(degrees));
    d.add_d_zero(n);
    for a in 0..n {
        for b in 0..n {
            let mut f = g.bracket_basis(a, b).to_vec();
            f.push(Rational::zero());
            d.push(a, b, f, 0, 0);
            d.push_basis(a, b, n, -form.entry(a, b).clone(), 0, 1);
        }
    }
    d
}

/// `[u_i(x), u_j(y)] = -d_ij c(y)Δ^(1)`, so that `[u_i(m), u_j(n)] = d_ij m δ_{m+n,0} c`.
pub fn heisenberg_data(dmat: &BilinearForm) -> VLData {
    let n = dmat.dim();
    let names: Vec<String> = (1..=n).map(|i| if n == 1 { "u".to_string() } else { format!("u{i}") }).collect();
    let mut degrees = vec![1; n];
    degrees.push(0);
    let mut d = data_from(names_with(&names, &["c"]), Some(degrees));
    d.add_d_zero(n);
    for a in 0..n {
        for b in 0..n {
            d.push_basis(a, b, n, -dmat.entry(a, b).clone(), 0, 1);
        }
    }
    d
}

/// `[a(x), b(y)] = ½(ab)'(y)Δ - (ab)(y)Δ^(1) - (1/6)(a|b) c Δ^(3)`, giving
/// `[a(m), b(n)] = ½(m-n)(ab)(m+n-1) + (1/6)(a|b) m(m-1)(m-2) δ_{m+n,2} c`.
pub fn novikov_data(b: &FiniteAlgebra, form: Option<&BilinearForm>) -> VLData {
    let n = b.dim();
    let mut names = b.names().to_vec();
    let mut degrees = vec![2; n];
    if form.is_some() {
        names.push("c".into());
        degrees.push(0);
    }
    let mut d = data_from(names, Some(degrees));
    let width = d.dim();
    if form.is_some() {
        d.add_d_zero(n);
    }
    for i in 0..n {
        for j in 0..n {
            let mut ab = b.product_basis(i, j).to_vec();
            ab.resize(width, Rational::zero());
            d.push(i, j, ab.iter().map(|c| c * &Rational::new(1, 2)).collect(), 1, 0);
            d.push(i, j, ab.iter().map(|c| -c).collect(), 0, 1);
            if let Some(f) = form {
                d.push_basis(i, j, n, -(f.entry(i, j) / &r(6)), 0, 3);
            }
        }
    }
    d
}

/// `[a(x), b(y)] = -(ab)'(y)Δ^(1) + (ab)(y)Δ^(2) + (a|b) c Δ^(2)`, giving
/// `[a(m), b(n)] = -mn(ab)(m+n-2) + m(m-1) δ_{m+n,1} (a|b) c`. Ungraded.
pub fn b3_data(b: &FiniteAlgebra, form: Option<&BilinearForm>) -> VLData {
    let n = b.dim();
    let mut names = b.names().to_vec();
    if form.is_some() {
        names.push("c".into());
    }
    let mut d = data_from(names, None);
    let width = d.dim();
    if form.is_some() {
        d.add_d_zero(n);
    }
    for i in 0..n {
        for j in 0..n {
            let mut ab = b.product_basis(i, j).to_vec();
            ab.resize(width, Rational::zero());
            d.push(i, j, ab.iter().map(|c| -c).collect(), 1, 1);
            d.push(i, j, ab.clone(), 0, 2);
            if let Some(f) = form {
                d.push_basis(i, j, n, f.entry(i, j).clone(), 0, 2);
            }
        }
    }
    d
}

pub fn witt() -> VLStructure {
    static S: OnceLock<VLStructure> = OnceLock::new();
    S.get_or_init(|| VLStructure::certify(witt_data(), CERTIFY_WINDOW).expect("witt table")).clone()
}

pub fn virasoro() -> VLStructure {
    static S: OnceLock<VLStructure> = OnceLock::new();
    S.get_or_init(|| VLStructure::certify(virasoro_data(), CERTIFY_WINDOW).expect("virasoro table")).clone()
}

pub fn loop_algebra(g: &FiniteLieAlgebra) -> Result<VLStructure> {
    let rep = crate::lie_core::check_lie_axioms(g);
    if !rep.passed() {
        return Err(Error::InvalidStructure(rep.failures[0].clone()));
    }
    VLStructure::certify(loop_data(g), CERTIFY_WINDOW)
}

pub fn affine(g: &FiniteLieAlgebra, form: &BilinearForm) -> Result<VLStructure> {
    if form.dim() != g.dim() {
        return Err(Error::InvalidStructure("form dimension differs from algebra".into()));
    }
    if !form.is_symmetric() {
        return Err(Error::InvalidStructure("form is not symmetric".into()));
    }
    let inv = check_invariance(g, form);
    if !inv.passed() {
        return Err(Error::InvalidStructure(format!("form is not invariant: {}", inv.failures[0])));
    }
    let rep = crate::lie_core::check_lie_axioms(g);
    if !rep.passed() {
        return Err(Error::InvalidStructure(rep.failures[0].clone()));
    }
    VLStructure::certify(affine_data(g, form), CERTIFY_WINDOW)
}

pub fn heisenberg(dmat: &BilinearForm) -> Result<VLStructure> {
    if !dmat.is_symmetric() {
        return Err(Error::InvalidStructure("Heisenberg matrix is not symmetric".into()));
    }
    VLStructure::certify(heisenberg_data(dmat), CERTIFY_WINDOW)
}

pub fn novikov(b: &FiniteAlgebra, form: Option<&BilinearForm>) -> Result<VLStructure> {
    if !b.is_commutative() {
        return Err(Error::InvalidStructure("algebra is not commutative".into()));
    }
    if let Some((i, j, k)) = b.associativity_witness() {
        return Err(Error::InvalidStructure(format!(
            "algebra is not associative at ({}, {}, {})",
            b.names()[i],
            b.names()[j],
            b.names()[k]
        )));
    }
    if let Some(f) = form {
        if f.dim() != b.dim() || !f.is_symmetric() || !b.form_is_associative(f) {
            return Err(Error::InvalidStructure("form is not a symmetric associative form".into()));
        }
    }
    VLStructure::certify(novikov_data(b, form), CERTIFY_WINDOW)
}

/// Builders addressable by name: `witt`, `virasoro`, `loop-sl2`,
/// `affine-sl2`, `heisenberg`, `heisenberg2`.
pub fn by_name(name: &str) -> Result<VLStructure> {
    use crate::lie_core::presets;
    match name {
        "witt" => Ok(witt()),
        "virasoro" => Ok(virasoro()),
        "loop-sl2" | "loop" => loop_algebra(&presets::sl2()),
        "affine-sl2" | "affine" => affine(&presets::sl2(), &presets::sl2_form()),
        "heisenberg" | "heisenberg1" => heisenberg(&BilinearForm::from_ints(&[&[1]])),
        "heisenberg2" => heisenberg(&BilinearForm::from_ints(&[&[1, 0], &[0, 1]])),
        "novikov-dual" => novikov(&super::algebra::samples::dual_numbers(), None),
        _ => Err(Error::Config(format!("unknown builder {name:?}"))),
    }
}

pub const BUILDER_NAMES: &[&str] =
    &["witt", "virasoro", "loop-sl2", "affine-sl2", "heisenberg", "heisenberg2", "novikov-dual"];

/// Copy of the table of `s` with one non-central coefficient shifted by a
/// seeded nonzero integer in `[-3, 3]`. Used as a negative control.
pub fn corrupt_table(s: &VLStructure, seed: u64) -> VLData {
    use rand::{Rng, SeedableRng};
    let mut data = s.data().clone();
    let mut keys: Vec<(usize, usize)> = data.table.keys().copied().collect();
    keys.sort();
    let mut cells = Vec::new();
    for key in keys {
        for (t, term) in data.table[&key].iter().enumerate() {
            for (i, c) in term.f.iter().enumerate() {
                let prime = s.generator_of_basis(i).is_some_and(|g| !s.is_central(g));
                if prime && !c.is_zero() {
                    cells.push((key, t, i));
                }
            }
        }
    }
    if cells.is_empty() {
        return data;
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (key, t, i) = cells[rng.gen_range(0..cells.len())];
    let mut shift = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        shift = -shift;
    }
    data.table.get_mut(&key).unwrap()[t].f[i] += &r(shift);
    data
}
