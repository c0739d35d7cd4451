use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{rref, Matrix};
use crate::poly::{Monomial, Poly};
use crate::rational::Rational;

/// `ℚ[Z₁, …, Z_r]/I` for a homogeneous ideal `I` of finite codimension,
/// computed degree by degree with exact row reduction.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    nvars: u32,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Normal forms of monomials that are not basis elements, below `top`.
    rewrite: HashMap<Monomial, Vec<(usize, Rational)>>,
    /// Every monomial of degree `>= top` lies in `I`.
    top: u32,
}

impl GradedQuotient {
    /// Generators must be homogeneous; degrees up to `max_degree` are tried
    /// before giving up on finite codimension.
    pub fn new(nvars: u32, generators: &[Poly], max_degree: u32) -> Result<Self> {
        let mut gens: Vec<(u32, &Poly)> = Vec::new();
        for g in generators.iter().filter(|g| !g.is_zero()) {
            let d = g.degree().expect("nonzero polynomial has a degree");
            if g.terms().any(|(m, _)| m.degree() != d) {
                return Err(Error::Inconsistent("ideal generator is not homogeneous".into()));
            }
            gens.push((d, g));
        }
        let mut q = GradedQuotient { nvars, basis: Vec::new(), index: HashMap::new(), rewrite: HashMap::new(), top: 0 };
        for d in 0..=max_degree {
            let monos = Monomial::all_of_degree(nvars, d);
            let col: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut rows: Matrix = Vec::new();
            for &(e, g) in &gens {
                if e > d {
                    continue;
                }
                for mu in Monomial::all_of_degree(nvars, d - e) {
                    let mut row = vec![Rational::zero(); monos.len()];
                    for (m, c) in g.terms() {
                        row[col[&m.mul(&mu)]] += c;
                    }
                    rows.push(row);
                }
            }
            let pivots = rref(&mut rows);
            if pivots.len() == monos.len() {
                q.top = d;
                return Ok(q);
            }
            let mut is_pivot = vec![false; monos.len()];
            for &p in &pivots {
                is_pivot[p] = true;
            }
            let mut local = vec![usize::MAX; monos.len()];
            for (c, m) in monos.iter().enumerate() {
                if !is_pivot[c] {
                    local[c] = q.basis.len();
                    q.index.insert(m.clone(), q.basis.len());
                    q.basis.push(m.clone());
                }
            }
            for (r, &p) in pivots.iter().enumerate() {
                let nf = (0..monos.len())
                    .filter(|&c| !is_pivot[c] && !rows[r][c].is_zero())
                    .map(|c| (local[c], -rows[r][c].clone()))
                    .collect();
                q.rewrite.insert(monos[p].clone(), nf);
            }
        }
        Err(Error::Precondition(format!("quotient does not vanish below degree {}", max_degree + 1)))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn nvars(&self) -> u32 {
        self.nvars
    }

    /// Lowest degree in which the quotient vanishes.
    pub fn top_degree(&self) -> u32 {
        self.top
    }

    /// Coordinates of the class of `p` in the monomial basis.
    pub fn reduce(&self, p: &Poly) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (m, c) in p.terms() {
            if m.degree() >= self.top {
                continue;
            }
            if let Some(&i) = self.index.get(m) {
                out[i] += c;
            } else if let Some(nf) = self.rewrite.get(m) {
                for (i, x) in nf {
                    out[*i] += &(c * x);
                }
            }
        }
        out
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.reduce(p).iter().all(Rational::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_polynomial_ring() {
        let q = GradedQuotient::new(1, &[Poly::var(0).pow(5)], 10).unwrap();
        assert_eq!(q.dim(), 5);
        assert_eq!(q.top_degree(), 5);
        assert!(q.contains(&Poly::var(0).pow(7)));
    }

    #[test]
    fn cubes_of_three_forms() {
        let z1 = Poly::var(0);
        let z2 = Poly::var(1);
        let gens = [z1.pow(3), z2.pow(3), (&z1 + &z2).pow(3)];
        let q = GradedQuotient::new(2, &gens, 10).unwrap();
        assert_eq!(q.dim(), 7);
        // z1² z2 + z1 z2² = 0 in degree 3
        let s = &(&z1.pow(2) * &z2) + &(&z1 * &z2.pow(2));
        assert!(q.contains(&s));
        assert!(!q.contains(&(&z1.pow(2) * &z2)));
    }

    #[test]
    fn infinite_codimension_is_reported() {
        assert!(GradedQuotient::new(2, &[Poly::var(0)], 6).is_err());
    }
}
