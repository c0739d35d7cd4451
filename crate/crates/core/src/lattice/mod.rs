//! Even lattices, the finite set `C₂(L)`, and the finite Poisson algebra
//! `P(L)` on the symbols `Z^m X_β`.

mod algebra;
mod bk;
mod quotient;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{determinant, inverse, Matrix};
use crate::rational::Rational;

pub use algebra::{build_pl_algebra, build_pl_algebra_capped, PLAlgebra, PLElement, PLJson, DEFAULT_RANK_CAP};
pub use bk::{bk_compare, BkAlgebra};
pub use quotient::GradedQuotient;

pub type LatticeVector = Vec<i64>;

/// Symmetric integer Gram matrix with even diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenLattice {
    gram: Vec<Vec<i64>>,
    positive_definite: bool,
}

impl EvenLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let r = gram.len();
        if r == 0 {
            return Err(Error::InvalidLattice("empty Gram matrix".into()));
        }
        if gram.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidLattice("Gram matrix is not square".into()));
        }
        for i in 0..r {
            if gram[i][i] % 2 != 0 {
                return Err(Error::InvalidLattice(format!("diagonal entry {i} is odd")));
            }
            for j in 0..r {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice(format!("Gram matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        // leading principal minors
        let positive_definite = (1..=r).all(|k| {
            let m: Matrix = (0..k).map(|i| (0..k).map(|j| Rational::from_int(gram[i][j])).collect()).collect();
            determinant(&m) > Rational::zero()
        });
        Ok(EvenLattice { gram, positive_definite })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn is_positive_definite(&self) -> bool {
        self.positive_definite
    }

    fn rational_gram(&self) -> Matrix {
        self.gram.iter().map(|row| row.iter().map(|&x| Rational::from_int(x)).collect()).collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        !determinant(&self.rational_gram()).is_zero()
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            if a[i] == 0 {
                continue;
            }
            for j in 0..r {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    pub fn norm(&self, a: &[i64]) -> i64 {
        self.inner(a, a)
    }

    /// Smallest `k` with `k G⁻¹` integral, so that `k L° ⊆ L`.
    pub fn discriminant_exponent(&self) -> Result<i64> {
        let inv = inverse(&self.rational_gram()).ok_or(Error::DegenerateLattice)?;
        let mut k = num_bigint::BigInt::from(1);
        for row in &inv {
            for x in row {
                k = num_integer::Integer::lcm(&k, x.denom());
            }
        }
        Ok(i64::try_from(k).expect("discriminant exponent fits in i64"))
    }

    fn inverse_diagonal(&self) -> Result<Vec<Rational>> {
        let inv = inverse(&self.rational_gram()).ok_or(Error::DegenerateLattice)?;
        Ok((0..self.rank()).map(|i| inv[i][i].clone()).collect())
    }

    /// All vectors of norm at most `bound`, from the box `|b_i|² <= bound (G⁻¹)_ii`.
    pub fn vectors_up_to(&self, bound: i64) -> Result<Vec<LatticeVector>> {
        let diag = self.inverse_diagonal()?;
        let limits: Vec<i64> = diag
            .iter()
            .map(|d| {
                let cap = Rational::from_int(bound) * d.clone();
                let mut x = 0i64;
                while Rational::from_int((x + 1) * (x + 1)) <= cap {
                    x += 1;
                }
                x
            })
            .collect();
        let mut out = Vec::new();
        for v in box_vectors(&limits) {
            if self.norm(&v) <= bound {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// `{α : ⟨α - β, β⟩ <= 0 for all β ∈ L}`, sorted by norm then coordinates.
    pub fn enumerate_c2(&self) -> Result<Vec<LatticeVector>> {
        if !self.positive_definite {
            return Err(Error::Precondition("C2(L) is enumerated only for positive definite lattices".into()));
        }
        let k = self.discriminant_exponent()?;
        let diag = self.inverse_diagonal()?;
        // |⟨α, λ_i⟩| = |a_i| <= k ⟨λ_i, λ_i⟩
        let limits: Vec<i64> = diag
            .iter()
            .map(|d| {
                let v = Rational::from_int(k) * d.clone();
                let mut x = 0i64;
                while Rational::from_int(x + 1) <= v {
                    x += 1;
                }
                x
            })
            .collect();
        let mut out = Vec::new();
        for a in box_vectors(&limits) {
            if self.c2_witness(&a)?.is_none() {
                out.push(a);
            }
        }
        out.sort_by_key(|v| (self.norm(v), v.clone()));
        Ok(out)
    }

    /// A `β` with `⟨α - β, β⟩ > 0`; only `|β|² < |α|²` can violate.
    pub fn c2_witness(&self, a: &[i64]) -> Result<Option<LatticeVector>> {
        let n = self.norm(a);
        for b in self.vectors_up_to(n)? {
            let s = self.inner(a, &b) - self.norm(&b);
            if s > 0 {
                return Ok(Some(b));
            }
        }
        Ok(None)
    }

    /// A vector of negative norm, searched in growing boxes.
    pub fn negative_vector(&self) -> Option<LatticeVector> {
        for radius in 1..=6 {
            let limits = vec![radius; self.rank()];
            let mut found: Vec<LatticeVector> = box_vectors(&limits).into_iter().filter(|v| self.norm(v) < 0).collect();
            found.sort_by_key(|v| (v.iter().map(|x| x.abs()).sum::<i64>(), v.clone()));
            if let Some(v) = found.into_iter().next() {
                return Some(v);
            }
        }
        None
    }
}

fn box_vectors(limits: &[i64]) -> Vec<LatticeVector> {
    let mut out = vec![Vec::new()];
    for &l in limits {
        let mut next = Vec::new();
        for v in &out {
            for x in -l..=l {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// `ε(α, β) = Π_{i > j} (-1)^{a_i b_j G_ij}`, bimultiplicative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cocycle {
    /// Exponents mod 2: `e[i][j] = G_ij` for `i > j`, else 0.
    pub exponents: Vec<Vec<u8>>,
}

impl Cocycle {
    pub fn new(l: &EvenLattice) -> Self {
        let r = l.rank();
        let exponents = (0..r)
            .map(|i| (0..r).map(|j| if i > j { l.gram[i][j].rem_euclid(2) as u8 } else { 0 }).collect())
            .collect();
        Cocycle { exponents }
    }

    pub fn eval(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0i64;
        for (i, row) in self.exponents.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e == 1 {
                    s += a[i] * b[j];
                }
            }
        }
        if s.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// `ε(α, β) ε(β, α) = (-1)^⟨α, β⟩` on all pairs of `vs`.
    pub fn check_commutator(&self, l: &EvenLattice, vs: &[LatticeVector]) -> crate::report::CheckReport {
        let mut rep = crate::report::CheckReport::new("cocycle commutator");
        for a in vs {
            for b in vs {
                let lhs = self.eval(a, b) * self.eval(b, a);
                let rhs = if l.inner(a, b).rem_euclid(2) == 0 { 1 } else { -1 };
                rep.check(lhs == rhs, || format!("ε({a:?}, {b:?}) ε({b:?}, {a:?}) = {lhs}"));
            }
        }
        rep
    }
}

/// Outcome of the definiteness test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Definiteness {
    PositiveDefinite,
    /// `P₂` is the zero algebra.
    Indefinite {
        witness: Option<LatticeVector>,
    },
}

pub fn detect_indefinite(l: &EvenLattice) -> Result<Definiteness> {
    if !l.is_nondegenerate() {
        return Err(Error::DegenerateLattice);
    }
    if l.is_positive_definite() {
        Ok(Definiteness::PositiveDefinite)
    } else {
        Ok(Definiteness::Indefinite { witness: l.negative_vector() })
    }
}
