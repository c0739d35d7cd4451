use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_core::{BasisRef, BilinearForm};
use crate::linalg::Span;
use crate::rational::Rational;

/// A finite-dimensional (not necessarily associative) algebra given by its
/// multiplication table `u_i u_j = Σ_k m_ij^k u_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    names: Vec<String>,
    mult: Vec<Vec<Vec<Rational>>>,
}

impl FiniteAlgebra {
    /// Products are taken exactly as listed; unlisted products are zero.
    pub fn new(names: &[&str], products: &[(usize, usize, Vec<(usize, Rational)>)]) -> Result<Self> {
        let r = names.len();
        let mut mult = vec![vec![vec![Rational::zero(); r]; r]; r];
        for (i, j, terms) in products {
            for (k, c) in terms {
                if *i >= r || *j >= r || *k >= r {
                    return Err(Error::UnknownBasis(format!("index out of range in product ({i}, {j})")));
                }
                mult[*i][*j][*k] += c;
            }
        }
        Ok(FiniteAlgebra { names: names.iter().map(|s| s.to_string()).collect(), mult })
    }

    /// Each listed product also fixes the opposite one, `u_j u_i = u_i u_j`.
    pub fn commutative(names: &[&str], products: &[(usize, usize, Vec<(usize, Rational)>)]) -> Result<Self> {
        let mut all = products.to_vec();
        for (i, j, t) in products {
            if i != j {
                all.push((*j, *i, t.clone()));
            }
        }
        Self::new(names, &all)
    }

    /// Each listed product fixes `u_j u_i = -u_i u_j`.
    pub fn anticommutative(names: &[&str], products: &[(usize, usize, Vec<(usize, Rational)>)]) -> Result<Self> {
        let mut all = products.to_vec();
        for (i, j, t) in products {
            if i != j {
                all.push((*j, *i, t.iter().map(|(k, c)| (*k, -c)).collect()));
            }
        }
        Self::new(names, &all)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn product_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.mult[i][j]
    }

    pub fn product(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
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
                    if !self.mult[i][j][k].is_zero() {
                        out[k] += &s * &self.mult[i][j][k];
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.dim();
        (0..r).all(|i| (0..r).all(|j| self.mult[i][j] == self.mult[j][i]))
    }

    pub fn is_anticommutative(&self) -> bool {
        let r = self.dim();
        (0..r).all(|i| (0..r).all(|j| self.mult[i][j].iter().zip(&self.mult[j][i]).all(|(a, b)| (a + b).is_zero())))
    }

    /// First basis triple with `(ab)c ≠ a(bc)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let r = self.dim();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
                    if self.product(&self.product(&a, &b), &c) != self.product(&a, &self.product(&b, &c)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    pub fn square_is_zero(&self) -> bool {
        self.mult.iter().all(|row| row.iter().all(|v| v.iter().all(Rational::is_zero)))
    }

    /// `B³ = 0`: every product of three elements vanishes, in either bracketing.
    pub fn cube_is_zero(&self) -> bool {
        let r = self.dim();
        let mut span = Span::new();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
                    span.insert(&self.product(&self.product(&a, &b), &c));
                    span.insert(&self.product(&a, &self.product(&b, &c)));
                }
            }
        }
        span.dim() == 0
    }

    /// `(ab, c) = (bc, a)` on all basis triples.
    pub fn form_is_associative(&self, form: &BilinearForm) -> bool {
        let r = self.dim();
        (0..r).all(|i| {
            (0..r).all(|j| {
                (0..r).all(|k| {
                    let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
                    form.eval(&self.product(&a, &b), &c) == form.eval(&self.product(&b, &c), &a)
                })
            })
        })
    }
}

/// Serialized multiplication table: `[[i, j, [[k, c]…]]…]` with no implied symmetry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraConfig {
    pub basis: Vec<String>,
    #[serde(default)]
    pub products: Vec<(BasisRef, BasisRef, Vec<(BasisRef, Rational)>)>,
    #[serde(default)]
    pub form: Option<Vec<Vec<Rational>>>,
}

impl AlgebraConfig {
    pub fn build(&self) -> Result<(FiniteAlgebra, Option<BilinearForm>)> {
        let mut products = Vec::new();
        for (a, b, terms) in &self.products {
            let i = a.resolve(&self.basis)?;
            let j = b.resolve(&self.basis)?;
            let mut t = Vec::new();
            for (k, c) in terms {
                t.push((k.resolve(&self.basis)?, c.clone()));
            }
            products.push((i, j, t));
        }
        let names: Vec<&str> = self.basis.iter().map(String::as_str).collect();
        let alg = FiniteAlgebra::new(&names, &products)?;
        let form = self.form.clone().map(BilinearForm::new).transpose()?;
        Ok((alg, form))
    }
}

pub mod samples {
    //! Small algebras used as positive and negative samples.

    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    /// `ℚ[t]/(t^2)` with basis `1, t`.
    pub fn dual_numbers() -> FiniteAlgebra {
        FiniteAlgebra::commutative(&["one", "t"], &[(0, 0, vec![(0, r(1))]), (0, 1, vec![(1, r(1))])]).unwrap()
    }

    /// `ℚ[t]/(t^n)` with basis `1, t, …, t^(n-1)`.
    pub fn truncated_polynomial(n: usize) -> FiniteAlgebra {
        let names: Vec<String> = (0..n).map(|i| if i == 0 { "one".into() } else { format!("t{i}") }).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut prods = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    prods.push((i, j, vec![(i + j, r(1))]));
                }
            }
        }
        FiniteAlgebra::new(&refs, &prods).unwrap()
    }

    /// The nilpotent part `tℚ[t]/(t^n)` with basis `t, …, t^(n-1)`.
    pub fn nilpotent_truncated(n: usize) -> FiniteAlgebra {
        let m = n - 1;
        let names: Vec<String> = (1..=m).map(|i| format!("t{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut prods = Vec::new();
        for i in 1..=m {
            for j in 1..=m {
                if i + j <= m {
                    prods.push((i - 1, j - 1, vec![(i + j - 1, r(1))]));
                }
            }
        }
        FiniteAlgebra::new(&refs, &prods).unwrap()
    }

    /// Two-dimensional commutative algebra with `u1 u1 = u2`, `u2` annihilating.
    pub fn square_to_second() -> FiniteAlgebra {
        FiniteAlgebra::commutative(&["u1", "u2"], &[(0, 0, vec![(1, r(1))])]).unwrap()
    }

    pub fn zero_algebra(n: usize) -> FiniteAlgebra {
        let names: Vec<String> = (1..=n).map(|i| format!("u{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        FiniteAlgebra::new(&refs, &[]).unwrap()
    }

    /// Commutative but not associative: `u1 u1 = u2`, `u2 u2 = u1`.
    pub fn commutative_nonassociative() -> FiniteAlgebra {
        FiniteAlgebra::commutative(&["u1", "u2"], &[(0, 0, vec![(1, r(1))]), (1, 1, vec![(0, r(1))])]).unwrap()
    }

    /// Associative but not commutative: matrix units `e11`, `e12`.
    pub fn matrix_units() -> FiniteAlgebra {
        FiniteAlgebra::new(&["e11", "e12"], &[(0, 0, vec![(0, r(1))]), (0, 1, vec![(1, r(1))])]).unwrap()
    }

    /// Anticommutative associative algebra with `u1 u2 = u3`.
    pub fn anticommutative_step() -> FiniteAlgebra {
        FiniteAlgebra::anticommutative(&["u1", "u2", "u3"], &[(0, 1, vec![(2, r(1))])]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;

    #[test]
    fn sample_properties() {
        let b = dual_numbers();
        assert!(b.is_commutative() && b.is_associative());
        assert!(!commutative_nonassociative().is_associative());
        assert!(commutative_nonassociative().is_commutative());
        assert!(matrix_units().is_associative() && !matrix_units().is_commutative());
        assert!(square_to_second().cube_is_zero() && !square_to_second().square_is_zero());
        assert!(!nilpotent_truncated(4).cube_is_zero());
        assert!(nilpotent_truncated(3).cube_is_zero());
        assert!(truncated_polynomial(3).is_associative());
        let a = anticommutative_step();
        assert!(a.is_anticommutative() && a.is_associative() && a.cube_is_zero());
    }
}
