use std::collections::HashMap;

use serde::Serialize;

use super::mode::{Mode, ModeElement};
use crate::error::{Error, Result};
use crate::formal_calc::{DeltaCoeff, DeltaSeries, Side};
use crate::linalg::{kernel, solve_columns, Matrix, Span};
use crate::rational::{factorial, gen_binomial, Rational};

/// One term `f^(k)(y) Δ^(l)(x, y)` of a bracket table entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub f: Vec<Rational>,
    pub k: u32,
    pub l: u32,
}

/// Creation/annihilation generator of the mode algebra: either a basis
/// vector of the complement `U'` or a vector of `(U⁰)'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    #[serde(skip)]
    pub vector: Vec<Rational>,
    pub central: bool,
    pub degree: Option<i64>,
    /// Standard basis index for `U'` generators.
    #[serde(skip)]
    pub basis: Option<usize>,
}

/// How a standard basis vector splits as `u' + z' + d(v)`.
#[derive(Clone, Debug)]
struct Split {
    prime: Vec<(u32, Rational)>,
    central: Vec<(u32, Rational)>,
    /// `v` as a vector in U, zero if the `im d` part vanishes.
    pre: Vec<Rational>,
}

/// Raw data of a vertex Lie structure before complements are chosen.
#[derive(Clone, Debug)]
pub struct VLData {
    pub names: Vec<String>,
    pub degrees: Option<Vec<i64>>,
    /// Domain of `d`, as standard basis indices.
    pub domain: Vec<usize>,
    /// `d(e_k)` for each domain element, as vectors in U.
    pub d: Vec<Vec<Rational>>,
    /// Preferred basis of `ker d`; computed when absent.
    pub u0: Option<Vec<Vec<Rational>>>,
    /// `table[(a, b)]` lists the terms of `[u_a(x), u_b(y)]`.
    pub table: HashMap<(usize, usize), Vec<Term>>,
}

impl VLData {
    pub fn new(names: &[&str], degrees: Option<Vec<i64>>) -> Self {
        VLData {
            names: names.iter().map(|s| s.to_string()).collect(),
            degrees,
            domain: Vec::new(),
            d: Vec::new(),
            u0: None,
            table: HashMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    /// Declare `c` with `d c = 0`.
    pub fn add_d_zero(&mut self, c: usize) {
        self.domain.push(c);
        self.d.push(vec![Rational::zero(); self.dim()]);
    }

    /// Append `coeff · f^(k)(y) Δ^(l)` to `[u_a(x), u_b(y)]`.
    pub fn push(&mut self, a: usize, b: usize, f: Vec<Rational>, k: u32, l: u32) {
        if f.iter().all(Rational::is_zero) {
            return;
        }
        self.table.entry((a, b)).or_default().push(Term { f, k, l });
    }

    pub fn push_basis(&mut self, a: usize, b: usize, f: usize, coeff: Rational, k: u32, l: u32) {
        let mut v = vec![Rational::zero(); self.dim()];
        v[f] = coeff;
        self.push(a, b, v, k, l);
    }
}

#[derive(Clone, Debug)]
pub struct VLStructure {
    data: VLData,
    generators: Vec<Generator>,
    splits: Vec<Split>,
    /// Basis index -> generator index for `U'` members.
    prime_of_basis: Vec<Option<u32>>,
    certified: bool,
    certify_window: Option<i64>,
}

impl VLStructure {
    /// Choose complements and validate shapes, without any axiom check.
    pub fn uncertified(data: VLData) -> Result<Self> {
        let r = data.dim();
        if let Some(deg) = &data.degrees {
            if deg.len() != r {
                return Err(Error::InvalidStructure("degree list length differs from basis".into()));
            }
        }
        if data.d.len() != data.domain.len() {
            return Err(Error::InvalidStructure("d must give one image per domain element".into()));
        }
        for (&e, img) in data.domain.iter().zip(&data.d) {
            if e >= r || img.len() != r {
                return Err(Error::InvalidStructure("d image or domain index out of range".into()));
            }
        }
        for ((a, b), terms) in &data.table {
            if *a >= r || *b >= r || terms.iter().any(|t| t.f.len() != r) {
                return Err(Error::InvalidStructure("bracket table entry out of range".into()));
            }
        }

        // ker d as vectors in U
        let kd = data.domain.len();
        let dmat: Matrix = (0..r).map(|i| (0..kd).map(|k| data.d[k][i].clone()).collect()).collect();
        let ker: Vec<Vec<Rational>> = kernel(&dmat, kd)
            .into_iter()
            .map(|c| {
                let mut v = vec![Rational::zero(); r];
                for (k, ck) in c.iter().enumerate() {
                    v[data.domain[k]] += ck;
                }
                v
            })
            .collect();
        let u0 = match &data.u0 {
            Some(given) => {
                let mut span_given = Span::new();
                for v in given {
                    let mut in_ker = Span::new();
                    for w in &ker {
                        in_ker.insert(w);
                    }
                    if !in_ker.contains(v) {
                        return Err(Error::InvalidStructure("declared U0 vector is not in ker d".into()));
                    }
                    span_given.insert(v);
                }
                if span_given.dim() != ker.len() {
                    return Err(Error::InvalidStructure("declared U0 does not span ker d".into()));
                }
                given.clone()
            }
            None => ker,
        };

        // (U0)': members of U0 independent modulo im d
        let mut span = Span::new();
        for img in &data.d {
            span.insert(img);
        }
        let mut central = Vec::new();
        for v in &u0 {
            if span.insert(v) {
                central.push(v.clone());
            }
        }
        for v in &u0 {
            span.insert(v);
        }
        // U': standard basis vectors independent of U0 + im d, lowest index first
        let mut prime = Vec::new();
        for i in 0..r {
            if span.insert(&data.unit(i)) {
                prime.push(i);
            }
        }

        let mut generators = Vec::new();
        let mut prime_of_basis = vec![None; r];
        for &i in &prime {
            prime_of_basis[i] = Some(generators.len() as u32);
            generators.push(Generator {
                name: data.names[i].clone(),
                vector: data.unit(i),
                central: false,
                degree: data.degrees.as_ref().map(|d| d[i]),
                basis: Some(i),
            });
        }
        for v in &central {
            let support: Vec<usize> = (0..r).filter(|&i| !v[i].is_zero()).collect();
            let name = if support.len() == 1 && v[support[0]].is_one() {
                data.names[support[0]].clone()
            } else {
                let p = crate::poly::Poly::from_terms(
                    support.iter().map(|&i| (crate::poly::Monomial::var(i as u32), v[i].clone())),
                );
                format!("({})", p.format_with(|j| data.names[j as usize].clone()))
            };
            let degree = match &data.degrees {
                Some(d) => {
                    let first = d[support[0]];
                    if support.iter().any(|&i| d[i] != first) {
                        return Err(Error::InvalidStructure(format!("central vector {name} is not homogeneous")));
                    }
                    Some(first)
                }
                None => None,
            };
            generators.push(Generator { name, vector: v.clone(), central: true, degree, basis: None });
        }

        // split every basis vector as u' + z' + d(v)
        let mut columns: Vec<Vec<Rational>> = generators.iter().map(|g| g.vector.clone()).collect();
        columns.extend(data.d.iter().cloned());
        let ng = generators.len();
        let mut splits = Vec::with_capacity(r);
        for i in 0..r {
            let x = solve_columns(&columns, &data.unit(i))
                .ok_or_else(|| Error::Inconsistent("complements do not span U".into()))?;
            let mut s = Split { prime: Vec::new(), central: Vec::new(), pre: vec![Rational::zero(); r] };
            for (g, c) in x[..ng].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if generators[g].central {
                    s.central.push((g as u32, c.clone()));
                } else {
                    s.prime.push((g as u32, c.clone()));
                }
            }
            for (k, c) in x[ng..].iter().enumerate() {
                s.pre[data.domain[k]] += c;
            }
            splits.push(s);
        }

        // reduction must terminate: the pre-image graph has to be acyclic
        let mut state = vec![0u8; r];
        fn visit(i: usize, splits: &[Split], state: &mut [u8]) -> bool {
            if state[i] == 2 {
                return true;
            }
            if state[i] == 1 {
                return false;
            }
            state[i] = 1;
            for (j, c) in splits[i].pre.iter().enumerate() {
                if !c.is_zero() && !visit(j, splits, state) {
                    return false;
                }
            }
            state[i] = 2;
            true
        }
        for i in 0..r {
            if !visit(i, &splits, &mut state) {
                return Err(Error::InvalidStructure("mode reduction through d does not terminate".into()));
            }
        }

        Ok(VLStructure { data, generators, splits, prime_of_basis, certified: false, certify_window: None })
    }

    /// Choose complements, then run the full axiom suite on `window`.
    pub fn certify(data: VLData, window: i64) -> Result<Self> {
        let mut s = Self::uncertified(data)?;
        let rep = s.verify_all(window);
        if !rep.passed() {
            return Err(Error::InvalidStructure(format!(
                "{} failed: {}",
                rep.name,
                rep.failures.first().cloned().unwrap_or_default()
            )));
        }
        s.certified = true;
        s.certify_window = Some(window);
        Ok(s)
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn certify_window(&self) -> Option<i64> {
        self.certify_window
    }

    pub fn data(&self) -> &VLData {
        &self.data
    }

    pub fn dim(&self) -> usize {
        self.data.dim()
    }

    pub fn names(&self) -> &[String] {
        &self.data.names
    }

    pub fn is_graded(&self) -> bool {
        self.data.degrees.is_some()
    }

    pub fn degree(&self, i: usize) -> Option<i64> {
        self.data.degrees.as_ref().map(|d| d[i])
    }

    pub fn basis_index(&self, name: &str) -> Result<usize> {
        self.data.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownBasis(name.into()))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Result<u32> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as u32)
            .ok_or_else(|| Error::UnknownBasis(name.into()))
    }

    pub fn generator_of_basis(&self, i: usize) -> Option<u32> {
        self.prime_of_basis.get(i).copied().flatten()
    }

    pub fn is_central(&self, gen: u32) -> bool {
        self.generators[gen as usize].central
    }

    pub fn gen_name(&self, gen: u32) -> &str {
        &self.generators[gen as usize].name
    }

    pub fn table_entry(&self, a: usize, b: usize) -> &[Term] {
        self.data.table.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn format_mode_element(&self, e: &ModeElement) -> String {
        e.format_with(|g| self.gen_name(g).to_string())
    }

    pub fn format_vector(&self, v: &[Rational]) -> String {
        let p = crate::poly::Poly::from_terms(
            v.iter().enumerate().map(|(i, c)| (crate::poly::Monomial::var(i as u32), c.clone())),
        );
        p.format_with(|j| self.data.names[j as usize].clone())
    }

    /// `u(n)` for a vector `u ∈ U`, rewritten through `(du)(m) = -m u(m-1)`.
    pub fn reduce_mode(&self, u: &[Rational], n: i64) -> ModeElement {
        let mut out = ModeElement::zero();
        for (i, c) in u.iter().enumerate() {
            if !c.is_zero() {
                self.reduce_basis_into(i, n, c, &mut out);
            }
        }
        out
    }

    fn reduce_basis_into(&self, i: usize, n: i64, coeff: &Rational, out: &mut ModeElement) {
        let s = &self.splits[i];
        for (g, c) in &s.prime {
            out.add_term(Mode::new(*g, n), &(c * coeff));
        }
        if n == -1 {
            for (g, c) in &s.central {
                out.add_term(Mode::new(*g, -1), &(c * coeff));
            }
        }
        if n != 0 {
            let f = coeff * &Rational::from_int(-n);
            for (j, c) in s.pre.iter().enumerate() {
                if !c.is_zero() {
                    self.reduce_basis_into(j, n - 1, &(c * &f), out);
                }
            }
        }
    }

    /// Mode of a basis element as a reduced element.
    pub fn basis_mode(&self, i: usize, n: i64) -> ModeElement {
        self.reduce_mode(&self.data.unit(i), n)
    }

    /// `[u_a(m), u_b(n)] = Σ binom(m,l) binom(m+n-l,k) (-1)^(l+k) l! k! f(m+n-l-k)`.
    pub fn component_bracket(&self, a: usize, m: i64, b: usize, n: i64) -> Result<ModeElement> {
        let r = self.dim();
        if a >= r {
            return Err(Error::UnknownBasis(format!("#{a}")));
        }
        if b >= r {
            return Err(Error::UnknownBasis(format!("#{b}")));
        }
        Ok(self.component_bracket_unchecked(a, m, b, n))
    }

    pub(crate) fn component_bracket_unchecked(&self, a: usize, m: i64, b: usize, n: i64) -> ModeElement {
        let mut out = ModeElement::zero();
        for t in self.table_entry(a, b) {
            let c1 = gen_binomial(m, t.l);
            if c1.is_zero() {
                continue;
            }
            let c2 = gen_binomial(m + n - t.l as i64, t.k);
            if c2.is_zero() {
                continue;
            }
            let sign = if (t.l + t.k) % 2 == 0 { 1 } else { -1 };
            let c = c1 * c2 * factorial(t.l) * factorial(t.k) * Rational::from_int(sign);
            let p = m + n - t.l as i64 - t.k as i64;
            out.add_scaled(&self.reduce_mode(&t.f, p), &c);
        }
        out
    }

    pub fn bracket_by_name(&self, a: &str, m: i64, b: &str, n: i64) -> Result<ModeElement> {
        self.component_bracket(self.basis_index(a)?, m, self.basis_index(b)?, n)
    }

    /// Bracket of two vectors of U at given modes, by bilinearity.
    pub fn vector_bracket(&self, a: &[Rational], m: i64, b: &[Rational], n: i64) -> ModeElement {
        let mut out = ModeElement::zero();
        for (i, ci) in a.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in b.iter().enumerate() {
                if !cj.is_zero() {
                    out.add_scaled(&self.component_bracket_unchecked(i, m, j, n), &(ci * cj));
                }
            }
        }
        out
    }

    /// Bracket of generator modes; central generators commute with everything.
    pub fn gen_bracket(&self, x: Mode, y: Mode) -> ModeElement {
        let gx = &self.generators[x.gen as usize];
        let gy = &self.generators[y.gen as usize];
        if gx.central || gy.central {
            return ModeElement::zero();
        }
        self.component_bracket_unchecked(gx.basis.unwrap(), x.n, gy.basis.unwrap(), y.n)
    }

    /// Bilinear extension of the bracket to reduced mode elements.
    pub fn bracket(&self, x: &ModeElement, y: &ModeElement) -> ModeElement {
        let mut out = ModeElement::zero();
        for (mx, cx) in x.terms() {
            for (my, cy) in y.terms() {
                out.add_scaled(&self.gen_bracket(*mx, *my), &(cx * cy));
            }
        }
        out
    }

    /// Generating-function form of a table entry, with symbolic fields.
    pub fn bracket_series(&self, a: usize, b: usize) -> DeltaSeries<FieldExpr> {
        let mut s = DeltaSeries::zero(Side::Y);
        for t in self.table_entry(a, b) {
            let mut g = FieldExpr::default();
            for (i, c) in t.f.iter().enumerate() {
                g.add_field(i, t.k, c);
            }
            s.add_term(t.l, &g);
        }
        s
    }

    /// Coefficient of `x^(-m-1) y^(-n-1)` in a field-valued delta series.
    pub fn series_coefficient(&self, s: &DeltaSeries<FieldExpr>, m: i64, n: i64) -> ModeElement {
        let s = s.canonical();
        let mut out = ModeElement::zero();
        for (l, g) in s.terms() {
            // Δ^(l): x^(-m-1) fixes N = l - m - 1
            let dl = crate::rational::falling(l as i64 - m - 1, l);
            if dl.is_zero() {
                continue;
            }
            for ((i, k), c) in &g.terms {
                // u^(k)(y) = Σ_p u(p) (-p-1)_k y^(-p-1-k), with y-exponent matching
                let p = m + n - l as i64 - *k as i64;
                let fk = crate::rational::falling(-p - 1, *k);
                if fk.is_zero() {
                    continue;
                }
                out.add_scaled(&self.basis_mode(*i, p), &(c * &dl * fk));
            }
        }
        out
    }

    pub fn format_series(&self, s: &DeltaSeries<FieldExpr>) -> String {
        if s.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = s
            .terms()
            .map(|(l, g)| {
                let d = if l == 0 { "Delta".to_string() } else { format!("Delta^({l})") };
                format!("({})*{}", g.format_with(&self.data.names, s.side()), d)
            })
            .collect();
        parts.join(" + ")
    }
}

/// Linear combination of field derivatives `u_i^(k)` in one variable.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldExpr {
    pub terms: std::collections::BTreeMap<(usize, u32), Rational>,
}

impl FieldExpr {
    pub fn add_field(&mut self, i: usize, k: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, k)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, k));
        }
    }

    pub fn format_with(&self, names: &[String], side: Side) -> String {
        let var = if side == Side::Y { "y" } else { "x" };
        let p = crate::poly::Poly::from_terms(
            self.terms.iter().map(|((i, k), c)| (crate::poly::Monomial::var((*i as u32) << 8 | *k), c.clone())),
        );
        p.format_with(|v| {
            let (i, k) = ((v >> 8) as usize, v & 0xff);
            if k == 0 {
                format!("{}({var})", names[i])
            } else {
                format!("{}^({k})({var})", names[i])
            }
        })
    }
}

impl DeltaCoeff for FieldExpr {
    fn zero_like(&self) -> Self {
        FieldExpr::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, k), c) in &other.terms {
            FieldExpr::add_field(&mut out, *i, *k, c);
        }
        out
    }
    fn scale(&self, s: &Rational) -> Self {
        let mut out = FieldExpr::default();
        for ((i, k), c) in &self.terms {
            FieldExpr::add_field(&mut out, *i, *k, &(c * s));
        }
        out
    }
    fn derive(&self) -> Self {
        FieldExpr { terms: self.terms.iter().map(|((i, k), c)| ((*i, k + 1), c.clone())).collect() }
    }
}
