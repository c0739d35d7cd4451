use serde::Serialize;

use super::algebra::FiniteAlgebra;
use super::builders::{b3_data, novikov_data};
use super::structure::VLStructure;
use crate::error::Result;
use crate::lie_core::{BilinearForm, SymPoly};
use crate::report::CheckReport;

/// Window verdicts for a candidate table next to the algebraic prediction.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub skew: CheckReport,
    pub jacobi: CheckReport,
    /// What the algebraic side of the criterion predicts.
    pub predicted: bool,
    pub agree: bool,
}

/// Quadratic bracket built from `B`: holds iff `B` is commutative and associative.
pub fn novikov_criterion(b: &FiniteAlgebra, form: Option<&BilinearForm>, w: i64) -> Result<CriterionReport> {
    let s = VLStructure::uncertified(novikov_data(b, form))?;
    let skew = s.verify_skew_symmetry(w);
    let jacobi = s.verify_jacobi(w);
    let form_ok = form.is_none_or(|f| f.is_symmetric() && b.form_is_associative(f));
    let predicted = b.is_commutative() && b.is_associative() && form_ok;
    let agree = predicted == (skew.passed() && jacobi.passed());
    Ok(CriterionReport { skew, jacobi, predicted, agree })
}

/// Cubic bracket `-mn(ab)(m+n-2) + m(m-1)δ_{m+n,1}(a|b)c`: the Jacobi window
/// check is compared against `B³ = 0`. Skew symmetry is reported separately;
/// for commutative `B` it holds only when `B² = 0`.
pub fn b3_criterion(b: &FiniteAlgebra, form: Option<&BilinearForm>, w: i64) -> Result<CriterionReport> {
    let s = VLStructure::uncertified(b3_data(b, form))?;
    let skew = s.verify_skew_symmetry(w);
    let jacobi = s.verify_jacobi(w);
    let predicted = b.cube_is_zero();
    let agree = predicted == jacobi.passed();
    Ok(CriterionReport { skew, jacobi, predicted, agree })
}

/// Relations between the coefficients of
/// `{u_i(x), u_j(y)} = g^ij(x)Δ^(2) + Σ_k b^ij_k(x) u_k'(x)Δ^(1)`:
/// `g^ij = -g^ji`, `∂g^ij/∂u_k = b^ij_k`,
/// `Σ_l b^ij_l g^lk = Σ_l b^jk_l g^li`, and
/// `Σ_l ∂(b^ij_l g^lk)/∂u_m = Σ_l (b^ij_l b^lk_m + b^jk_l b^li_m + b^ki_l b^li_m)`.
pub fn verify_po_relations(g: &[Vec<SymPoly>], b: &[Vec<Vec<SymPoly>>]) -> CheckReport {
    let mut rep = CheckReport::new("coefficient relations");
    let n = g.len();
    for i in 0..n {
        for j in 0..n {
            let s = &g[i][j] + &g[j][i];
            rep.check(s.is_zero(), || format!("g^{i}{j} + g^{j}{i} = {s:?}"));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let d = g[i][j].derivative(k as u32);
                rep.check(d == b[i][j][k], || format!("dg^{i}{j}/du_{k} differs from b^{i}{j}_{k}"));
            }
        }
    }
    let bg = |i: usize, j: usize, k: usize| -> SymPoly {
        let mut acc = SymPoly::zero();
        for l in 0..n {
            acc = &acc + &(&b[i][j][l] * &g[l][k]);
        }
        acc
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                rep.check(bg(i, j, k) == bg(j, k, i), || {
                    format!("sum_l b^{i}{j}_l g^l{k} differs from sum_l b^{j}{k}_l g^l{i}")
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs_full = bg(i, j, k);
                for m in 0..n {
                    let lhs = lhs_full.derivative(m as u32);
                    let mut rhs = SymPoly::zero();
                    for l in 0..n {
                        rhs = &rhs + &(&b[i][j][l] * &b[l][k][m]);
                        rhs = &rhs + &(&b[j][k][l] * &b[l][i][m]);
                        rhs = &rhs + &(&b[k][i][l] * &b[l][i][m]);
                    }
                    rep.check(lhs == rhs, || format!("second-order relation fails at (i,j,k,m) = ({i},{j},{k},{m})"));
                }
            }
        }
    }
    rep
}

/// `g^ij = Σ_k b^ij_k u_k + g0^ij` and `b^ij_k` from the structure constants of `B`.
pub fn po_data_from_algebra(bal: &FiniteAlgebra, g0: &BilinearForm) -> (Vec<Vec<SymPoly>>, Vec<Vec<Vec<SymPoly>>>) {
    let n = bal.dim();
    let mut g = vec![vec![SymPoly::zero(); n]; n];
    let mut b = vec![vec![vec![SymPoly::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut p = SymPoly::constant(g0.entry(i, j).clone());
            for k in 0..n {
                let c = &bal.product_basis(i, j)[k];
                p = &p + &SymPoly::var(k as u32).scale(c);
                b[i][j][k] = SymPoly::constant(c.clone());
            }
            g[i][j] = p;
        }
    }
    (g, b)
}

/// Polar decomposition and grading data of the mode algebra.
#[derive(Clone, Debug, Serialize)]
pub struct PolarParts {
    pub u_prime: Vec<String>,
    pub u0_prime: Vec<String>,
    pub central: Vec<String>,
    pub plus: Vec<String>,
    pub minus: Vec<String>,
    pub degrees: Vec<String>,
}

impl VLStructure {
    pub fn polar_parts(&self) -> PolarParts {
        let gens = self.generators();
        let u_prime: Vec<String> = gens.iter().filter(|g| !g.central).map(|g| g.name.clone()).collect();
        let u0_prime: Vec<String> = gens.iter().filter(|g| g.central).map(|g| g.name.clone()).collect();
        let central: Vec<String> = u0_prime.iter().map(|n| format!("{n}(-1)")).collect();
        let plus = u_prime.iter().map(|n| format!("{n}(n), n >= 0")).collect();
        let mut minus: Vec<String> = central.clone();
        minus.extend(u_prime.iter().map(|n| format!("{n}(n), n <= -1")));
        let degrees = gens
            .iter()
            .filter_map(|g| {
                g.degree.map(|d| {
                    if g.central {
                        format!("deg {}(-1) = {}", g.name, d)
                    } else {
                        format!("deg {}(n) = {} - n", g.name, d - 1)
                    }
                })
            })
            .collect();
        PolarParts { u_prime, u0_prime, central, plus, minus, degrees }
    }
}
