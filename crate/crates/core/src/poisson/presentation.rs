use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::report::CheckReport;

/// Free commutative algebra on named generators with a bracket table on
/// generators, extended by Leibniz, and optional ideal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonPresentation {
    names: Vec<String>,
    bracket: Vec<Vec<Poly>>,
    ideal: Vec<Poly>,
    /// Relations recorded without being imposed.
    notes: Vec<String>,
}

/// Stable JSON shape of a presentation.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PresentationJson {
    pub generators: Vec<String>,
    /// Nonzero `{x_i, x_j}` with `i < j`.
    pub brackets: Vec<(String, String, String)>,
    pub ideal: Vec<String>,
    pub notes: Vec<String>,
}

impl PoissonPresentation {
    /// The table must be antisymmetric.
    pub fn new(names: Vec<String>, bracket: Vec<Vec<Poly>>) -> Result<Self> {
        let n = names.len();
        if bracket.len() != n || bracket.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidStructure("bracket table shape differs from generator count".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if &bracket[i][j] + &bracket[j][i] != Poly::zero() {
                    return Err(Error::InvalidStructure(format!(
                        "bracket table not antisymmetric at ({}, {})",
                        names[i], names[j]
                    )));
                }
            }
        }
        Ok(PoissonPresentation { names, bracket, ideal: Vec::new(), notes: Vec::new() })
    }

    pub fn with_ideal(mut self, ideal: Vec<Poly>) -> Self {
        self.ideal = ideal;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn ideal(&self) -> &[Poly] {
        &self.ideal
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn generator_bracket(&self, i: usize, j: usize) -> &Poly {
        &self.bracket[i][j]
    }

    /// `{f, g} = Σ ∂_i f ∂_j g {x_i, x_j}`.
    pub fn bracket_poly(&self, f: &Poly, g: &Poly) -> Poly {
        let mut out = Poly::zero();
        let fv = f.vars();
        let gv = g.vars();
        for &i in &fv {
            let di = f.derivative(i);
            for &j in &gv {
                let b = &self.bracket[i as usize][j as usize];
                if b.is_zero() {
                    continue;
                }
                out = &out + &(&(&di * &g.derivative(j)) * b);
            }
        }
        out
    }

    /// Ideal generators of the form `x_k - c`, as `(k, c)`.
    fn linear_relations(&self) -> Vec<(u32, Rational)> {
        let mut out = Vec::new();
        for p in &self.ideal {
            let vars: Vec<u32> = p.vars().into_iter().collect();
            if vars.len() != 1 || p.degree() != Some(1) {
                continue;
            }
            let v = vars[0];
            let lead = p.coeff(&crate::poly::Monomial::var(v));
            out.push((v, -(p.constant_term() / lead)));
        }
        out
    }

    /// Normal form modulo the linear ideal generators.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut q = p.clone();
        for (v, c) in self.linear_relations() {
            q = q.substitute(v, &c);
        }
        q
    }

    /// Ideal generators that are not linear substitutions are kept verbatim.
    pub fn has_only_linear_ideal(&self) -> bool {
        self.linear_relations().len() == self.ideal.len()
    }

    /// `{x_k - c, x_j}` reduces to zero for every linear relation.
    pub fn check_poisson_ideal(&self) -> CheckReport {
        let mut rep = CheckReport::new("poisson ideal");
        for p in &self.ideal {
            for j in 0..self.ngens() {
                let b = self.reduce(&self.bracket_poly(p, &Poly::var(j as u32)));
                rep.check(b.is_zero(), || format!("{{{}, {}}} = {}", self.format(p), self.names[j], self.format(&b)));
            }
        }
        rep
    }

    /// Eliminates generators fixed by linear relations and renumbers the rest.
    pub fn eliminate(&self) -> PoissonPresentation {
        let fixed: Vec<u32> = self.linear_relations().into_iter().map(|(v, _)| v).collect();
        let keep: Vec<usize> = (0..self.ngens()).filter(|i| !fixed.contains(&(*i as u32))).collect();
        let mut index = vec![u32::MAX; self.ngens()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new as u32;
        }
        let bracket = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.reduce(&self.bracket[i][j]).map_vars(|v| index[v as usize])).collect())
            .collect();
        let ideal = self
            .ideal
            .iter()
            .filter(|p| !(p.vars().len() == 1 && p.degree() == Some(1)))
            .map(|p| self.reduce(p).map_vars(|v| index[v as usize]))
            .collect();
        PoissonPresentation {
            names: keep.iter().map(|&i| self.names[i].clone()).collect(),
            bracket,
            ideal,
            notes: self.notes.clone(),
        }
    }

    /// Skew symmetry, Jacobi on generators, and Leibniz on the given samples.
    pub fn check_axioms(&self, samples: &[Poly]) -> CheckReport {
        let mut rep = CheckReport::new("poisson axioms");
        let n = self.ngens();
        let x = |i: usize| Poly::var(i as u32);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = self.bracket_poly(&x(i), &self.bracket_poly(&x(j), &x(k)));
                    let b = self.bracket_poly(&x(j), &self.bracket_poly(&x(k), &x(i)));
                    let c = self.bracket_poly(&x(k), &self.bracket_poly(&x(i), &x(j)));
                    let s = self.reduce(&(&(&a + &b) + &c));
                    rep.check(s.is_zero(), || {
                        format!("Jacobi fails on ({}, {}, {})", self.names[i], self.names[j], self.names[k])
                    });
                }
            }
        }
        for f in samples {
            for g in samples {
                let s = &self.bracket_poly(f, g) + &self.bracket_poly(g, f);
                rep.check(s.is_zero(), || format!("skew fails on {} and {}", self.format(f), self.format(g)));
                for h in samples {
                    let lhs = self.bracket_poly(&(f * g), h);
                    let rhs = &(f * &self.bracket_poly(g, h)) + &(g * &self.bracket_poly(f, h));
                    rep.check(lhs == rhs, || {
                        format!("Leibniz fails on {}, {}, {}", self.format(f), self.format(g), self.format(h))
                    });
                }
            }
        }
        rep
    }

    pub fn format(&self, p: &Poly) -> String {
        p.format_with(|v| self.names[v as usize].clone())
    }

    pub fn to_json(&self) -> PresentationJson {
        let mut brackets = Vec::new();
        for i in 0..self.ngens() {
            for j in i + 1..self.ngens() {
                if !self.bracket[i][j].is_zero() {
                    brackets.push((self.names[i].clone(), self.names[j].clone(), self.format(&self.bracket[i][j])));
                }
            }
        }
        PresentationJson {
            generators: self.names.clone(),
            brackets,
            ideal: self.ideal.iter().map(|p| self.format(p)).collect(),
            notes: self.notes.clone(),
        }
    }
}

impl std::fmt::Display for PoissonPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let j = self.to_json();
        writeln!(f, "generators: {}", j.generators.join(", "))?;
        if j.brackets.is_empty() {
            writeln!(f, "brackets: all zero")?;
        }
        for (a, b, p) in &j.brackets {
            writeln!(f, "{{{a}, {b}}} = {p}")?;
        }
        for p in &j.ideal {
            writeln!(f, "relation: {p} = 0")?;
        }
        for n in &j.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}
