//! Finite-dimensional Lie algebras given by structure constants, invariant
//! forms, and the Poisson bracket on the symmetric algebra.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{determinant, Matrix};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::report::CheckReport;

/// Polynomial in the basis symbols; variable `i` is basis vector `i`.
pub type SymPoly = Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLieAlgebra {
    names: Vec<String>,
    // consts[i][j][k] = c_ij^k
    consts: Vec<Vec<Vec<Rational>>>,
}

impl FiniteLieAlgebra {
    /// Build from sparse brackets `[u_i, u_j] = Σ c_k u_k`; the opposite
    /// ordering is filled in by antisymmetry. Lie axioms are checked.
    pub fn new(names: Vec<String>, brackets: &[(usize, usize, Vec<(usize, Rational)>)]) -> Result<Self> {
        let g = Self::raw(names, brackets, true)?;
        let rep = check_lie_axioms(&g);
        if !rep.passed() {
            return Err(Error::InvalidStructure(format!("Lie axioms fail: {}", rep.failures[0])));
        }
        Ok(g)
    }

    /// Build without validation, for exercising failure paths. With
    /// `antisymmetrize` the `(j, i)` entry is set from `(i, j)`.
    pub fn raw(
        names: Vec<String>,
        brackets: &[(usize, usize, Vec<(usize, Rational)>)],
        antisymmetrize: bool,
    ) -> Result<Self> {
        let r = names.len();
        let mut consts = vec![vec![vec![Rational::zero(); r]; r]; r];
        for (i, j, terms) in brackets {
            for (k, c) in terms {
                if *i >= r || *j >= r || *k >= r {
                    return Err(Error::UnknownBasis(format!("index {} out of range", i.max(j).max(k))));
                }
                consts[*i][*j][*k] += c;
                if antisymmetrize && i != j {
                    consts[*j][*i][*k] -= c;
                }
            }
        }
        Ok(FiniteLieAlgebra { names, consts })
    }

    pub fn abelian(names: Vec<String>) -> Self {
        let r = names.len();
        FiniteLieAlgebra { names, consts: vec![vec![vec![Rational::zero(); r]; r]; r] }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownBasis(name.to_string()))
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.consts[i][j][k]
    }

    /// `[u_i, u_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.consts[i][j]
    }

    pub fn bracket(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let r = self.dim();
        let mut out = vec![Rational::zero(); r];
        for i in 0..r {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..r {
                if b[j].is_zero() {
                    continue;
                }
                let s = &a[i] * &b[j];
                for k in 0..r {
                    if !self.consts[i][j][k].is_zero() {
                        out[k] += &s * &self.consts[i][j][k];
                    }
                }
            }
        }
        out
    }

    /// `[u_i, u_j]` as a linear polynomial in S(g).
    pub fn bracket_poly(&self, i: usize, j: usize) -> SymPoly {
        let mut p = Poly::zero();
        for (k, c) in self.consts[i][j].iter().enumerate() {
            p.add_term(crate::poly::Monomial::var(k as u32), c);
        }
        p
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    pub fn format_vector(&self, v: &[Rational]) -> String {
        let p = Poly::from_terms(v.iter().enumerate().map(|(k, c)| (crate::poly::Monomial::var(k as u32), c.clone())));
        self.format_poly(&p)
    }

    pub fn format_poly(&self, p: &SymPoly) -> String {
        p.format_with(|v| self.names[v as usize].clone())
    }

    /// Nonzero structure constants as `(i, j, [(k, c)])` with `i < j`.
    pub fn sparse_brackets(&self) -> Vec<(usize, usize, Vec<(usize, Rational)>)> {
        let r = self.dim();
        let mut out = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                let terms: Vec<(usize, Rational)> = self.consts[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect();
                if !terms.is_empty() {
                    out.push((i, j, terms));
                }
            }
        }
        out
    }
}

/// Antisymmetry and Jacobi on all basis pairs and triples.
pub fn check_lie_axioms(g: &FiniteLieAlgebra) -> CheckReport {
    let mut rep = CheckReport::new("lie axioms");
    let r = g.dim();
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let ok = g.consts[i][j][k] == -g.consts[j][i][k].clone();
                rep.check(ok, || {
                    format!("antisymmetry fails at ({}, {}) component {}", g.names[i], g.names[j], g.names[k])
                });
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let (a, b, c) = (g.basis_vector(i), g.basis_vector(j), g.basis_vector(k));
                let t1 = g.bracket(&g.bracket(&a, &b), &c);
                let t2 = g.bracket(&g.bracket(&b, &c), &a);
                let t3 = g.bracket(&g.bracket(&c, &a), &b);
                let ok = t1.iter().zip(&t2).zip(&t3).all(|((x, y), z)| (x + y + z).is_zero());
                rep.check(ok, || format!("Jacobi fails on ({}, {}, {})", g.names[i], g.names[j], g.names[k]));
            }
        }
    }
    rep
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    matrix: Matrix,
}

impl BilinearForm {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidStructure("form matrix must be square".into()));
        }
        Ok(BilinearForm { matrix })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        BilinearForm { matrix: rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect() }
    }

    pub fn zero(n: usize) -> Self {
        BilinearForm { matrix: vec![vec![Rational::zero(); n]; n] }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.matrix[i][j]
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn eval(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    acc += ai * bj * &self.matrix[i][j];
                }
            }
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.matrix[i][j] == self.matrix[j][i]))
    }

    pub fn is_nondegenerate(&self) -> bool {
        !determinant(&self.matrix).is_zero()
    }
}

/// All basis triples violating `([a,b]|c) = (a|[b,c])`.
pub fn check_invariance(g: &FiniteLieAlgebra, form: &BilinearForm) -> CheckReport {
    let mut rep = CheckReport::new("form invariance");
    let r = g.dim();
    if form.dim() != r {
        rep.fail(format!("form has dimension {} but algebra has {}", form.dim(), r));
        return rep;
    }
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let (a, b, c) = (g.basis_vector(i), g.basis_vector(j), g.basis_vector(k));
                let lhs = form.eval(&g.bracket(&a, &b), &c);
                let rhs = form.eval(&a, &g.bracket(&b, &c));
                rep.check(lhs == rhs, || {
                    format!(
                        "([{a},{b}]|{c}) = {lhs} but ({a}|[{b},{c}]) = {rhs}",
                        a = g.names[i],
                        b = g.names[j],
                        c = g.names[k]
                    )
                });
            }
        }
    }
    rep
}

/// `{f, g} = Σ_{i,j} ∂f/∂u_i ∂g/∂u_j [u_i, u_j]`.
pub fn sym_poisson(alg: &FiniteLieAlgebra, f: &SymPoly, g: &SymPoly) -> SymPoly {
    let r = alg.dim();
    let df: Vec<SymPoly> = (0..r).map(|i| f.derivative(i as u32)).collect();
    let dg: Vec<SymPoly> = (0..r).map(|j| g.derivative(j as u32)).collect();
    let mut out = Poly::zero();
    for i in 0..r {
        if df[i].is_zero() {
            continue;
        }
        for j in 0..r {
            if dg[j].is_zero() || alg.consts[i][j].iter().all(Rational::is_zero) {
                continue;
            }
            let prod = &df[i] * &dg[j];
            out = &out + &(&prod * &alg.bracket_poly(i, j));
        }
    }
    out
}

/// Basis reference in configs: either a position or a name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BasisRef {
    Index(usize),
    Name(String),
}

impl BasisRef {
    pub fn resolve(&self, names: &[String]) -> Result<usize> {
        match self {
            BasisRef::Index(i) if *i < names.len() => Ok(*i),
            BasisRef::Index(i) => Err(Error::UnknownBasis(format!("#{i}"))),
            BasisRef::Name(n) => names.iter().position(|x| x == n).ok_or_else(|| Error::UnknownBasis(n.clone())),
        }
    }
}

/// Serialized form of a Lie algebra with optional form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieConfig {
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<(BasisRef, BasisRef, Vec<(BasisRef, Rational)>)>,
    #[serde(default)]
    pub form: Option<Vec<Vec<Rational>>>,
}

impl LieConfig {
    pub fn build(&self) -> Result<(FiniteLieAlgebra, Option<BilinearForm>)> {
        let names = &self.basis;
        let mut sparse = Vec::new();
        for (a, b, terms) in &self.brackets {
            let i = a.resolve(names)?;
            let j = b.resolve(names)?;
            let mut t = Vec::new();
            for (k, c) in terms {
                t.push((k.resolve(names)?, c.clone()));
            }
            sparse.push((i, j, t));
        }
        let g = FiniteLieAlgebra::new(names.clone(), &sparse)?;
        let form = match &self.form {
            Some(m) => {
                let f = BilinearForm::new(m.clone())?;
                if f.dim() != g.dim() {
                    return Err(Error::Config(format!(
                        "form is {}x{} but the algebra has dimension {}",
                        f.dim(),
                        f.dim(),
                        g.dim()
                    )));
                }
                Some(f)
            }
            None => None,
        };
        Ok((g, form))
    }

    pub fn from_algebra(g: &FiniteLieAlgebra, form: Option<&BilinearForm>) -> Self {
        LieConfig {
            basis: g.names.clone(),
            brackets: g
                .sparse_brackets()
                .into_iter()
                .map(|(i, j, t)| {
                    (
                        BasisRef::Name(g.names[i].clone()),
                        BasisRef::Name(g.names[j].clone()),
                        t.into_iter().map(|(k, c)| (BasisRef::Name(g.names[k].clone()), c)).collect(),
                    )
                })
                .collect(),
            form: form.map(|f| f.matrix.clone()),
        }
    }
}

pub mod presets {
    //! Small algebras used by builders, tests and the CLI.

    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    /// sl₂ with basis `e, h, f`.
    pub fn sl2() -> FiniteLieAlgebra {
        FiniteLieAlgebra::new(
            names(&["e", "h", "f"]),
            &[(1, 0, vec![(0, r(2))]), (1, 2, vec![(2, r(-2))]), (0, 2, vec![(1, r(1))])],
        )
        .expect("sl2 is a Lie algebra")
    }

    /// Trace form normalised so that `(e|f) = 1`, `(h|h) = 2`.
    pub fn sl2_form() -> BilinearForm {
        BilinearForm::from_ints(&[&[0, 0, 1], &[0, 2, 0], &[1, 0, 0]])
    }

    /// sl₂ with `[e,f] = e` in place of `h`; violates Jacobi.
    pub fn sl2_broken() -> FiniteLieAlgebra {
        FiniteLieAlgebra::raw(
            names(&["e", "h", "f"]),
            &[(1, 0, vec![(0, r(2))]), (1, 2, vec![(2, r(-2))]), (0, 2, vec![(0, r(1))])],
            true,
        )
        .expect("indices in range")
    }

    /// Three-dimensional Heisenberg Lie algebra `[x, y] = z`, two-step nilpotent.
    pub fn heisenberg3() -> FiniteLieAlgebra {
        FiniteLieAlgebra::new(names(&["x", "y", "z"]), &[(0, 1, vec![(2, r(1))])]).expect("nilpotent algebra")
    }

    /// Antisymmetric three-dimensional table with `[a,b] = c`, `[b,c] = a`,
    /// `[c,a] = c`; fails Jacobi on `(a, b, c)`.
    pub fn jacobi_violator() -> FiniteLieAlgebra {
        FiniteLieAlgebra::raw(
            names(&["a", "b", "c"]),
            &[(0, 1, vec![(2, r(1))]), (1, 2, vec![(0, r(1))]), (2, 0, vec![(2, r(1))])],
            true,
        )
        .expect("indices in range")
    }

    pub fn by_name(name: &str) -> Option<FiniteLieAlgebra> {
        match name {
            "sl2" => Some(sl2()),
            "heisenberg3" | "nil3" => Some(heisenberg3()),
            _ => None,
        }
    }
}
