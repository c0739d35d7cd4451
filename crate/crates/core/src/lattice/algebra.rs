use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::quotient::GradedQuotient;
use super::{detect_indefinite, Cocycle, Definiteness, EvenLattice, LatticeVector};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::rational::{factorial, Rational};
use crate::report::CheckReport;

pub const DEFAULT_RANK_CAP: usize = 4;

/// Degree bound for the graded quotients; far above what ranks within the
/// cap require.
const MAX_QUOTIENT_DEGREE: u32 = 64;

/// Sparse vector over the basis of a [`PLAlgebra`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PLElement(pub BTreeMap<usize, Rational>);

impl PLElement {
    pub fn zero() -> Self {
        PLElement(BTreeMap::new())
    }

    pub fn basis(i: usize) -> Self {
        PLElement([(i, Rational::one())].into_iter().collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_scaled(&mut self, other: &PLElement, s: &Rational) {
        if s.is_zero() {
            return;
        }
        for (i, c) in &other.0 {
            let e = self.0.entry(*i).or_insert_with(Rational::zero);
            *e += &(c * s);
            if e.is_zero() {
                self.0.remove(i);
            }
        }
    }

    pub fn sum(&self, other: &PLElement) -> PLElement {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn difference(&self, other: &PLElement) -> PLElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    fn from_dense(offset: usize, v: &[Rational]) -> Self {
        PLElement(v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (offset + i, c.clone())).collect())
    }
}

/// `P(L)`: the direct sum over `β ∈ C₂(L)` of `ℚ[Z]/I_β · X_β`, with
/// `X_0 = 1`.
#[derive(Clone, Debug)]
pub struct PLAlgebra {
    lattice: EvenLattice,
    definiteness: Definiteness,
    c2: Vec<LatticeVector>,
    c2_index: HashMap<LatticeVector, usize>,
    cocycle: Cocycle,
    quotients: Vec<GradedQuotient>,
    offsets: Vec<usize>,
    /// `(C₂ index, monomial)` for each basis element.
    basis: Vec<(usize, Monomial)>,
    mult: Vec<Vec<PLElement>>,
    bracket: Vec<Vec<PLElement>>,
}

/// Stable JSON shape of a [`PLAlgebra`].
#[derive(Clone, Debug, Serialize)]
pub struct PLJson {
    pub gram: Vec<Vec<i64>>,
    pub positive_definite: bool,
    pub zero_algebra: bool,
    pub negative_witness: Option<LatticeVector>,
    pub c2: Vec<LatticeVector>,
    pub cocycle: CocycleJson,
    pub dim: usize,
    pub basis: Vec<String>,
    /// Nonzero products `(a, b, a·b)` with `a <= b` in basis order.
    pub mult_table: Vec<(String, String, String)>,
    /// Nonzero brackets `(a, b, {a, b})` with `a < b` in basis order.
    pub bracket_table: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleJson {
    pub rule: &'static str,
    pub exponents: Vec<Vec<u8>>,
}

pub fn build_pl_algebra(l: &EvenLattice) -> Result<PLAlgebra> {
    build_pl_algebra_capped(l, DEFAULT_RANK_CAP)
}

/// Builds `P(L)` with its multiplication and bracket tables; an indefinite
/// lattice gives the zero algebra, a degenerate one is an error.
pub fn build_pl_algebra_capped(l: &EvenLattice, rank_cap: usize) -> Result<PLAlgebra> {
    let definiteness = detect_indefinite(l)?;
    let cocycle = Cocycle::new(l);
    if definiteness != Definiteness::PositiveDefinite {
        return Ok(PLAlgebra {
            lattice: l.clone(),
            definiteness,
            c2: Vec::new(),
            c2_index: HashMap::new(),
            cocycle,
            quotients: Vec::new(),
            offsets: Vec::new(),
            basis: Vec::new(),
            mult: Vec::new(),
            bracket: Vec::new(),
        });
    }
    if l.rank() > rank_cap {
        return Err(Error::Precondition(format!("rank {} exceeds the cap {rank_cap}", l.rank())));
    }
    let c2 = l.enumerate_c2()?;
    let c2_index: HashMap<LatticeVector, usize> = c2.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let r = l.rank() as u32;
    let quotients = c2
        .par_iter()
        .map(|beta| {
            let gens = ideal_generators(l, &c2, beta);
            GradedQuotient::new(r, &gens, MAX_QUOTIENT_DEGREE)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut offsets = Vec::new();
    let mut basis = Vec::new();
    for (b, q) in quotients.iter().enumerate() {
        offsets.push(basis.len());
        basis.extend(q.basis().iter().map(|m| (b, m.clone())));
    }
    let mut alg = PLAlgebra {
        lattice: l.clone(),
        definiteness,
        c2,
        c2_index,
        cocycle,
        quotients,
        offsets,
        basis,
        mult: Vec::new(),
        bracket: Vec::new(),
    };
    let n = alg.dim();
    alg.mult = (0..n).into_par_iter().map(|i| (0..n).map(|j| alg.raw_product(i, j)).collect()).collect();
    alg.bracket = (0..n).into_par_iter().map(|i| (0..n).map(|j| alg.raw_bracket(i, j)).collect()).collect();
    Ok(alg)
}

/// `Z_α = Σ α_i Z_i`.
fn linear_form(a: &[i64]) -> Poly {
    let mut p = Poly::zero();
    for (i, &x) in a.iter().enumerate() {
        if x != 0 {
            p.add_term(Monomial::var(i as u32), &Rational::from_int(x));
        }
    }
    p
}

/// `Z_α^{1 - ⟨β - α, α⟩}` for `α ∈ C₂(L)`.
fn ideal_generators(l: &EvenLattice, c2: &[LatticeVector], beta: &[i64]) -> Vec<Poly> {
    c2.iter()
        .map(|a| {
            let d: Vec<i64> = beta.iter().zip(a).map(|(x, y)| x - y).collect();
            linear_form(a).pow((1 - l.inner(&d, a)) as u32)
        })
        .collect()
}

impl PLAlgebra {
    pub fn lattice(&self) -> &EvenLattice {
        &self.lattice
    }

    pub fn definiteness(&self) -> &Definiteness {
        &self.definiteness
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn c2(&self) -> &[LatticeVector] {
        &self.c2
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the `X_β` component.
    pub fn component_dim(&self, beta: &[i64]) -> Option<usize> {
        self.c2_index.get(beta).map(|&b| self.quotients[b].dim())
    }

    pub fn basis_label(&self, i: usize) -> String {
        let (b, m) = &self.basis[i];
        let mut parts = Vec::new();
        if !m.is_one() {
            parts.push(Poly::monomial(m.clone(), Rational::one()).format_with(|v| format!("Z{}", v + 1)));
        }
        let beta = &self.c2[*b];
        if beta.iter().any(|&x| x != 0) {
            parts.push(format!("X{beta:?}"));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn format(&self, e: &PLElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (i, c)) in e.0.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let label = self.basis_label(*i);
            if a.is_one() {
                out.push_str(&label);
            } else if label == "1" {
                out.push_str(&a.to_string());
            } else {
                out.push_str(&format!("{a}*{label}"));
            }
        }
        out
    }

    /// The unit `1 = Z⁰ X_0`.
    pub fn unit(&self) -> Option<usize> {
        self.basis.iter().position(|(b, m)| *b == 0 && m.is_one())
    }

    /// The class of `f X_β`.
    pub fn element(&self, f: &Poly, beta: &[i64]) -> Option<PLElement> {
        let &b = self.c2_index.get(beta)?;
        Some(PLElement::from_dense(self.offsets[b], &self.quotients[b].reduce(f)))
    }

    /// `Z_i`, as an element.
    pub fn z(&self, i: u32) -> PLElement {
        self.element(&Poly::var(i), &vec![0; self.lattice.rank()]).unwrap_or_default()
    }

    /// `X_β`, zero when `β ∉ C₂(L)`.
    pub fn x(&self, beta: &[i64]) -> PLElement {
        self.element(&Poly::one(), beta).unwrap_or_default()
    }

    fn beta_of(&self, i: usize) -> &LatticeVector {
        &self.c2[self.basis[i].0]
    }

    /// `X_α X_β = ε(α, β)/(-⟨α, β⟩)! Z_α^{-⟨α, β⟩} X_{α+β}`, or 0.
    fn x_product(&self, a: &[i64], b: &[i64]) -> Option<(Poly, LatticeVector)> {
        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        if !self.c2_index.contains_key(&s) {
            return None;
        }
        let e = -self.lattice.inner(a, b);
        if e < 0 {
            return None;
        }
        let c = Rational::from_int(self.cocycle.eval(a, b)) / factorial(e as u32);
        Some((linear_form(a).pow(e as u32).scale(&c), s))
    }

    /// `{X_α, X_β} = ε(α, β)/(-⟨α, β⟩-1)! Z_α^{-⟨α, β⟩-1} X_{α+β}` when
    /// `⟨α, β⟩ < 0`, or 0.
    fn x_bracket(&self, a: &[i64], b: &[i64]) -> Option<(Poly, LatticeVector)> {
        let e = -self.lattice.inner(a, b) - 1;
        if e < 0 {
            return None;
        }
        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        if !self.c2_index.contains_key(&s) {
            return None;
        }
        let c = Rational::from_int(self.cocycle.eval(a, b)) / factorial(e as u32);
        Some((linear_form(a).pow(e as u32).scale(&c), s))
    }

    /// `D_γ f = Σ ⟨e_i, γ⟩ ∂_i f`, so that `{f, X_γ} = (D_γ f) X_γ`.
    fn directional(&self, f: &Poly, gamma: &[i64]) -> Poly {
        let mut out = Poly::zero();
        for i in 0..self.lattice.rank() {
            let mut e = vec![0; self.lattice.rank()];
            e[i] = 1;
            let w = self.lattice.inner(&e, gamma);
            if w != 0 {
                out.add_scaled(&f.derivative(i as u32), &Rational::from_int(w));
            }
        }
        out
    }

    fn raw_product(&self, i: usize, j: usize) -> PLElement {
        let (_, m1) = &self.basis[i];
        let (_, m2) = &self.basis[j];
        match self.x_product(self.beta_of(i), self.beta_of(j)) {
            Some((c, s)) => {
                let f = c.mul_monomial(&m1.mul(m2), &Rational::one());
                self.element(&f, &s).expect("sum lies in C2")
            }
            None => PLElement::zero(),
        }
    }

    /// `{f X_β, g X_γ} = fg{X_β, X_γ} + (g D_γ f - f D_β g) X_β X_γ`.
    fn raw_bracket(&self, i: usize, j: usize) -> PLElement {
        let (_, m1) = &self.basis[i];
        let (_, m2) = &self.basis[j];
        let (b, g) = (self.beta_of(i), self.beta_of(j));
        let f1 = Poly::monomial(m1.clone(), Rational::one());
        let f2 = Poly::monomial(m2.clone(), Rational::one());
        let mut out = PLElement::zero();
        if let Some((c, s)) = self.x_bracket(b, g) {
            let p = &c * &(&f1 * &f2);
            out.add_scaled(&self.element(&p, &s).expect("sum lies in C2"), &Rational::one());
        }
        if let Some((c, s)) = self.x_product(b, g) {
            let d = &(&f2 * &self.directional(&f1, g)) - &(&f1 * &self.directional(&f2, b));
            out.add_scaled(&self.element(&(&c * &d), &s).expect("sum lies in C2"), &Rational::one());
        }
        out
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &PLElement {
        &self.mult[i][j]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &PLElement {
        &self.bracket[i][j]
    }

    fn bilinear(table: &[Vec<PLElement>], a: &PLElement, b: &PLElement) -> PLElement {
        let mut out = PLElement::zero();
        for (i, x) in &a.0 {
            for (j, y) in &b.0 {
                out.add_scaled(&table[*i][*j], &(x * y));
            }
        }
        out
    }

    pub fn mul(&self, a: &PLElement, b: &PLElement) -> PLElement {
        Self::bilinear(&self.mult, a, b)
    }

    pub fn bracket(&self, a: &PLElement, b: &PLElement) -> PLElement {
        Self::bilinear(&self.bracket, a, b)
    }

    /// Unit, commutativity and associativity on all basis pairs and triples.
    pub fn check_associative(&self) -> CheckReport {
        let mut rep = CheckReport::new("P(L) commutative associative");
        let n = self.dim();
        if let Some(u) = self.unit() {
            for i in 0..n {
                let e = PLElement::basis(i);
                rep.check(self.mult[u][i] == e, || {
                    format!("1 * {} = {}", self.basis_label(i), self.format(&self.mult[u][i]))
                });
            }
        } else if n > 0 {
            rep.fail("no unit in the basis");
        }
        for i in 0..n {
            for j in 0..n {
                rep.check(self.mult[i][j] == self.mult[j][i], || {
                    format!("{} * {} is not commutative", self.basis_label(i), self.basis_label(j))
                });
            }
        }
        let failures: Vec<(usize, usize, usize)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut bad = Vec::new();
                for j in 0..n {
                    let ij = &self.mult[i][j];
                    for k in 0..n {
                        let lhs = self.mul(ij, &PLElement::basis(k));
                        let rhs = self.mul(&PLElement::basis(i), &self.mult[j][k]);
                        if lhs != rhs {
                            bad.push((i, j, k));
                        }
                    }
                }
                bad.into_iter()
            })
            .collect();
        rep.checked += n * n * n;
        for (i, j, k) in failures {
            rep.fail(format!(
                "({} * {}) * {} differs from {} * ({} * {})",
                self.basis_label(i),
                self.basis_label(j),
                self.basis_label(k),
                self.basis_label(i),
                self.basis_label(j),
                self.basis_label(k)
            ));
        }
        rep
    }

    /// Skew symmetry on pairs, Jacobi and Leibniz on all basis triples.
    pub fn check_poisson(&self) -> CheckReport {
        let mut rep = CheckReport::new("P(L) Poisson axioms");
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let s = self.bracket[i][j].sum(&self.bracket[j][i]);
                rep.check(s.is_zero(), || format!("skew fails on ({}, {})", self.basis_label(i), self.basis_label(j)));
            }
        }
        let failures: Vec<String> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut bad = Vec::new();
                let a = PLElement::basis(i);
                for j in 0..n {
                    let b = PLElement::basis(j);
                    for k in 0..n {
                        let c = PLElement::basis(k);
                        let mut jac = self.bracket(&a, &self.bracket[j][k]);
                        jac.add_scaled(&self.bracket(&b, &self.bracket[k][i]), &Rational::one());
                        jac.add_scaled(&self.bracket(&c, &self.bracket[i][j]), &Rational::one());
                        if !jac.is_zero() {
                            bad.push(format!(
                                "Jacobi fails on ({}, {}, {})",
                                self.basis_label(i),
                                self.basis_label(j),
                                self.basis_label(k)
                            ));
                        }
                        // {a, bc} = {a, b} c + b {a, c}
                        let lhs = self.bracket(&a, &self.mult[j][k]);
                        let rhs = self.mul(&self.bracket[i][j], &c).sum(&self.mul(&b, &self.bracket[i][k]));
                        if lhs != rhs {
                            bad.push(format!(
                                "Leibniz fails on ({}, {}, {})",
                                self.basis_label(i),
                                self.basis_label(j),
                                self.basis_label(k)
                            ));
                        }
                    }
                }
                bad.into_iter()
            })
            .collect();
        rep.checked += 2 * n * n * n;
        for f in failures {
            rep.fail(f);
        }
        rep
    }

    /// The tables do not depend on representatives: for `h` in the ideal of
    /// `X_β`, the product and bracket of `h X_β` with any `G X_γ` vanish.
    ///
    /// With `X_β X_γ = c_p X_{β+γ}` and `{X_β, X_γ} = c_b X_{β+γ}` this
    /// reduces to `h c_p`, `h c_b + D_γ(h) c_p` and, for `h` in the second
    /// slot, `h c_b' - D_γ(h) c_p'` with the constants of `(γ, β)`, lying in
    /// the ideal of `X_{β+γ}`.
    pub fn check_well_defined(&self) -> CheckReport {
        let mut rep = CheckReport::new("P(L) well defined");
        for (bi, b) in self.c2.iter().enumerate() {
            let ideal = ideal_generators(&self.lattice, &self.c2, b);
            for g in &self.c2 {
                let Some((cp, s)) = self.x_product(b, g) else { continue };
                let cb = self.x_bracket(b, g).map_or_else(Poly::zero, |(c, _)| c);
                let (cp2, _) = self.x_product(g, b).expect("sum lies in C2");
                let cb2 = self.x_bracket(g, b).map_or_else(Poly::zero, |(c, _)| c);
                let q = &self.quotients[self.c2_index[&s]];
                for h in &ideal {
                    let first = &(h * &cb) + &(&self.directional(h, g) * &cp);
                    let second = &(h * &cb2) - &(&self.directional(h, g) * &cp2);
                    for (what, p) in [
                        ("product", h * &cp),
                        ("bracket in the first slot", first),
                        ("bracket in the second slot", second),
                    ] {
                        rep.check(q.contains(&p), || {
                            format!("{what}: ideal of X{:?} not carried into X{s:?} by X{g:?}", self.c2[bi])
                        });
                    }
                }
            }
        }
        rep
    }

    /// Generator relations: `{Z_i, X_β} = ⟨e_i, β⟩ X_β`, `X_α² = 0` when
    /// `2α ∉ C₂`, and `ε(β, α) Z_β^m X_{α+β} = ε(α, β) Z_α^m X_{α+β}`.
    pub fn check_relations(&self) -> CheckReport {
        let mut rep = CheckReport::new("P(L) generator relations");
        let r = self.lattice.rank();
        for b in &self.c2 {
            let xb = self.x(b);
            for i in 0..r {
                let mut e = vec![0; r];
                e[i] = 1;
                let lhs = self.bracket(&self.z(i as u32), &xb);
                let mut rhs = PLElement::zero();
                rhs.add_scaled(&xb, &Rational::from_int(self.lattice.inner(&e, b)));
                rep.check(lhs == rhs, || format!("{{Z{}, X{b:?}}} = {}", i + 1, self.format(&lhs)));
            }
            let twice: Vec<i64> = b.iter().map(|x| 2 * x).collect();
            if b.iter().any(|&x| x != 0) && !self.c2_index.contains_key(&twice) {
                let sq = self.mul(&xb, &xb);
                rep.check(sq.is_zero(), || format!("X{b:?}^2 = {}", self.format(&sq)));
            }
            for a in &self.c2 {
                let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if !self.c2_index.contains_key(&s) {
                    continue;
                }
                let m = -self.lattice.inner(a, b);
                let lhs = linear_form(b).pow(m as u32).scale(&Rational::from_int(self.cocycle.eval(b, a)));
                let rhs = linear_form(a).pow(m as u32).scale(&Rational::from_int(self.cocycle.eval(a, b)));
                rep.check(self.element(&lhs, &s) == self.element(&rhs, &s), || {
                    format!("commutativity of X{a:?} X{b:?} fails")
                });
            }
        }
        rep
    }

    /// All suites together.
    pub fn check_all(&self) -> CheckReport {
        let mut rep = CheckReport::new("P(L)");
        for sub in [self.check_well_defined(), self.check_associative(), self.check_poisson(), self.check_relations()] {
            for f in &sub.failures {
                rep.fail(format!("{}: {f}", sub.name));
            }
            rep.checked += sub.checked;
        }
        rep.merge(self.cocycle.check_commutator(&self.lattice, &self.c2));
        rep
    }

    pub fn to_json(&self) -> PLJson {
        let n = self.dim();
        let mut mult_table = Vec::new();
        let mut bracket_table = Vec::new();
        for i in 0..n {
            for j in i..n {
                if !self.mult[i][j].is_zero() {
                    mult_table.push((self.basis_label(i), self.basis_label(j), self.format(&self.mult[i][j])));
                }
                if j > i && !self.bracket[i][j].is_zero() {
                    bracket_table.push((self.basis_label(i), self.basis_label(j), self.format(&self.bracket[i][j])));
                }
            }
        }
        let negative_witness = match &self.definiteness {
            Definiteness::Indefinite { witness } => witness.clone(),
            Definiteness::PositiveDefinite => None,
        };
        PLJson {
            gram: self.lattice.gram().to_vec(),
            positive_definite: self.lattice.is_positive_definite(),
            zero_algebra: self.is_zero_algebra(),
            negative_witness,
            c2: self.c2.clone(),
            cocycle: CocycleJson {
                rule: "eps(e_i, e_j) = (-1)^<e_i, e_j> for i > j, 1 otherwise, bimultiplicative",
                exponents: self.cocycle.exponents.clone(),
            },
            dim: n,
            basis: (0..n).map(|i| self.basis_label(i)).collect(),
            mult_table,
            bracket_table,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank_one(k: i64) -> PLAlgebra {
        build_pl_algebra(&EvenLattice::new(vec![vec![2 * k]]).unwrap()).unwrap()
    }

    #[test]
    fn rank_one_dimensions_and_products() {
        for k in 1..=3 {
            let p = rank_one(k);
            assert_eq!(p.dim(), (2 * k + 3) as usize);
            let rep = p.check_all();
            assert!(rep.passed(), "{rep}");
        }
        let p = rank_one(1);
        let xy = p.mul(&p.x(&[1]), &p.x(&[-1]));
        assert_eq!(p.format(&xy), "1/2*Z1^2");
        let br = p.bracket(&p.x(&[1]), &p.x(&[-1]));
        assert_eq!(p.format(&br), "Z1");
        let zx = p.bracket(&p.z(0), &p.x(&[1]));
        assert_eq!(p.format(&zx), "2*X[1]");
        assert!(p.mul(&p.z(0), &p.x(&[1])).is_zero());
    }

    #[test]
    fn a2_algebra() {
        let l = EvenLattice::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        let p = build_pl_algebra(&l).unwrap();
        assert_eq!(p.c2().len(), 7);
        assert_eq!(p.component_dim(&[0, 0]), Some(7));
        assert_eq!(p.component_dim(&[1, 0]), Some(2));
        assert_eq!(p.dim(), 19);
        let rep = p.check_all();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn orthogonal_sums_multiply_dimensions() {
        for (a, b) in [(1, 1), (1, 2)] {
            let l = EvenLattice::new(vec![vec![2 * a, 0], vec![0, 2 * b]]).unwrap();
            let p = build_pl_algebra(&l).unwrap();
            assert_eq!(p.c2().len(), 9);
            assert_eq!(p.dim() as i64, (2 * a + 3) * (2 * b + 3));
            assert!(p.check_all().passed());
        }
    }

    #[test]
    fn indefinite_gives_zero_algebra() {
        for g in [vec![vec![-2]], vec![vec![0, 1], vec![1, 0]]] {
            let p = build_pl_algebra(&EvenLattice::new(g).unwrap()).unwrap();
            assert!(p.is_zero_algebra());
            assert_eq!(p.dim(), 0);
            assert!(p.to_json().negative_witness.is_some());
        }
    }
}
