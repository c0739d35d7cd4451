use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::presentation::PoissonPresentation;
use crate::error::{Error, Result};
use crate::formal_calc::{DeltaCoeff, DeltaSeries, LaurentPoly, Side, Window};
use crate::lie_core::{BasisRef, BilinearForm, FiniteLieAlgebra};
use crate::poly::{Monomial, Poly};
use crate::rational::{factorial, Rational};
use crate::report::CheckReport;

const ORDER_SHIFT: u32 = 16;

/// Variable index of `u_i^(j)`.
pub fn field_var(i: u32, j: u32) -> u32 {
    i | (j << ORDER_SHIFT)
}

pub fn split_field_var(v: u32) -> (u32, u32) {
    (v & ((1 << ORDER_SHIFT) - 1), v >> ORDER_SHIFT)
}

/// Polynomial in the jet variables `u_i^(j)`, with `D u_i^(j) = u_i^(j+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiffPoly(pub Poly);

impl DiffPoly {
    pub fn field(i: u32) -> Self {
        DiffPoly(Poly::var(field_var(i, 0)))
    }

    /// The total derivation `D`.
    pub fn total_derivative(p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for v in p.vars() {
            let (i, j) = split_field_var(v);
            out = &out + &(&p.derivative(v) * &Poly::var(field_var(i, j + 1)));
        }
        out
    }

    pub fn format(&self, names: &[String]) -> String {
        format_jet(&self.0, names)
    }

    /// Substitutes `u_i ↦ fields[i]` (univariate Laurent polynomials).
    pub fn evaluate(&self, fields: &[LaurentPoly]) -> LaurentPoly {
        let var = fields[0].vars()[0].clone();
        let mut out = LaurentPoly::zero(&[&var]);
        for (m, c) in self.0.terms() {
            let mut t = LaurentPoly::constant(&[&var], c.clone());
            for &(v, e) in m.pairs() {
                let (i, j) = split_field_var(v);
                let f = fields[i as usize].derivative_n(0, j);
                for _ in 0..e {
                    t = &t * &f;
                }
            }
            out = &out + &t;
        }
        out
    }
}

pub fn format_jet(p: &Poly, names: &[String]) -> String {
    p.format_with(|v| {
        let (i, j) = split_field_var(v);
        format!("{}{}", names[i as usize], "'".repeat(j as usize))
    })
}

impl DeltaCoeff for DiffPoly {
    fn zero_like(&self) -> Self {
        DiffPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        DiffPoly(&self.0 + &other.0)
    }
    fn scale(&self, s: &Rational) -> Self {
        DiffPoly(self.0.scale(s))
    }
    fn derive(&self) -> Self {
        DiffPoly(Self::total_derivative(&self.0))
    }
}

type Series = DeltaSeries<DiffPoly>;

/// `ℚ[u_i^(j)]` with a generator bracket table `{u_i(x), u_j(y)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct VPDiffAlgebra {
    names: Vec<String>,
    table: Vec<Vec<Series>>,
}

impl VPDiffAlgebra {
    /// Unlisted generator pairs bracket to zero.
    pub fn new(names: Vec<String>, entries: Vec<((usize, usize), Series)>) -> Result<Self> {
        let n = names.len();
        let mut table = vec![vec![Series::zero(Side::Y); n]; n];
        for ((i, j), s) in entries {
            if i >= n || j >= n {
                return Err(Error::UnknownBasis(format!("bracket entry ({i}, {j}) out of range")));
            }
            for (_, g) in s.terms() {
                if g.0.vars().iter().any(|&v| split_field_var(v).0 as usize >= n) {
                    return Err(Error::UnknownBasis(format!("coefficient of entry ({i}, {j}) uses an unknown field")));
                }
            }
            table[i][j] = table[i][j].add(&s.canonical());
        }
        Ok(VPDiffAlgebra { names, table })
    }

    /// Ultra-Poisson bracket `{f(x), g(y)} = {f, g}(y) Δ` from a Lie algebra.
    pub fn ultra_poisson(g: &FiniteLieAlgebra) -> Self {
        let n = g.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let p = g.bracket_poly(i, j);
                if !p.is_zero() {
                    entries.push(((i, j), Series::term(Side::Y, 0, DiffPoly(p))));
                }
            }
        }
        Self::new(g.names().to_vec(), entries).expect("ultra-Poisson table")
    }

    /// Constant table `{u_i(x), u_j(y)} = g_ij Δ^(order)`.
    pub fn constant(names: Vec<String>, g: &BilinearForm, order: u32) -> Result<Self> {
        if g.dim() != names.len() {
            return Err(Error::InvalidStructure("matrix size differs from generator count".into()));
        }
        let n = names.len();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let c = g.entry(i, j);
                if !c.is_zero() {
                    entries.push(((i, j), Series::term(Side::Y, order, DiffPoly(Poly::constant(c.clone())))));
                }
            }
        }
        Self::new(names, entries)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn table(&self, i: usize, j: usize) -> &Series {
        &self.table[i][j]
    }

    pub fn format_series(&self, s: &Series) -> String {
        let s = s.canonical();
        if s.is_zero() {
            return "0".into();
        }
        s.terms()
            .map(|(l, g)| {
                let d = if l == 0 { "Delta".to_string() } else { format!("Delta^({l})") };
                format!("({})*{}", g.format(&self.names), d)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// `{a(x), b(y)}`, canonical on the `y` side: Leibniz in the second
    /// argument, skew transfer for composite first arguments, and
    /// `{u^(p)(x), v^(q)(y)} = ∂_x^p ∂_y^q {u(x), v(y)}`.
    pub fn vp_bracket(&self, a: &Poly, b: &Poly) -> Series {
        let mut out = Series::zero(Side::Y);
        for (mono, c) in b.terms() {
            out = out.add(&self.bracket_monomial(a, mono).scale(c));
        }
        out.canonical()
    }

    fn bracket_monomial(&self, a: &Poly, mono: &Monomial) -> Series {
        let Some(&(v, _)) = mono.pairs().first() else {
            return Series::zero(Side::Y);
        };
        let rest = mono.without_one(v).unwrap();
        let head = self.bracket_var(a, v);
        if rest.is_one() {
            return head;
        }
        let rest_poly = Poly::monomial(rest.clone(), Rational::one());
        let var = Poly::var(v);
        let left = head.on_side(Side::Y).map_coeffs(|g| DiffPoly(&g.0 * &rest_poly));
        let right = self.bracket_monomial(a, &rest).on_side(Side::Y).map_coeffs(|g| DiffPoly(&g.0 * &var));
        left.add(&right)
    }

    /// `{a(x), u_j^(q)(y)}`.
    fn bracket_var(&self, a: &Poly, v: u32) -> Series {
        let (j, q) = split_field_var(v);
        let mut s = self.bracket_with_field(a, j as usize);
        for _ in 0..q {
            s = s.d_y();
        }
        s.canonical()
    }

    /// `{a(x), u_j(y)}`.
    fn bracket_with_field(&self, a: &Poly, j: usize) -> Series {
        let mut out = Series::zero(Side::Y);
        for (mono, c) in a.terms() {
            let part = match mono.pairs() {
                [] => continue,
                [(v, 1)] => {
                    let (i, p) = split_field_var(*v);
                    let mut s = self.table[i as usize][j].clone();
                    for _ in 0..p {
                        s = s.d_x();
                    }
                    s
                }
                _ => {
                    // {m(x), u_j(y)} = -{u_j(y), m(x)}
                    let m = Poly::monomial(mono.clone(), Rational::one());
                    self.vp_bracket(&Poly::var(field_var(j as u32, 0)), &m).flip().neg()
                }
            };
            out = out.add(&part.on_side(Side::Y).scale(c));
        }
        out
    }

    /// `a_i b` with `{a(x), b(y)} = Σ (1/i!) (a_i b)(y) Δ^(i)`.
    pub fn mode_products(&self, a: &Poly, b: &Poly) -> Vec<Poly> {
        let s = self.vp_bracket(a, b);
        let Some(top) = s.max_order() else { return Vec::new() };
        (0..=top).map(|i| s.coefficient(i).map(|g| g.0.scale(&factorial(i))).unwrap_or_else(Poly::zero)).collect()
    }

    /// Drops every monomial that contains a derivative `u^(j)`, `j >= 1`.
    pub fn quotient_reduce(p: &Poly) -> Poly {
        p.retain(|m| m.vars().all(|v| split_field_var(v).1 == 0))
    }

    /// `[ā, b̄] = a_0 b` in `A/(DA)A`.
    pub fn quotient_bracket(&self, a: &Poly, b: &Poly) -> Poly {
        let s = self.vp_bracket(a, b);
        Self::quotient_reduce(&s.coefficient(0).map(|g| g.0.clone()).unwrap_or_else(Poly::zero))
    }

    /// Presentation of `A/(DA)A` on the generators `u_i`.
    pub fn pvpa_quotient(&self) -> Result<PoissonPresentation> {
        let n = self.ngens();
        let bracket = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        self.quotient_bracket(&Poly::var(field_var(i as u32, 0)), &Poly::var(field_var(j as u32, 0)))
                    })
                    .collect()
            })
            .collect();
        PoissonPresentation::new(self.names.clone(), bracket)
    }

    fn sample_fields(&self) -> Vec<LaurentPoly> {
        (0..self.ngens() as i64)
            .map(|i| {
                LaurentPoly::univariate(
                    "y",
                    &[(i + 1, Rational::one()), (-i - 1, Rational::from_int(i + 2)), (0, Rational::new(1, i + 2))],
                )
            })
            .collect()
    }

    fn render(&self, s: &Series, window: Window) -> crate::formal_calc::BiSeriesWindow {
        let fields = self.sample_fields();
        s.canonical().map_coeffs(|g| g.evaluate(&fields)).render(window)
    }

    /// `{u_i(x), u_j(y)} = -{u_j(x), u_i(y)}` with `x, y` exchanged, compared
    /// symbolically and on a rendered window with sample fields.
    pub fn check_table_skew(&self) -> CheckReport {
        let mut rep = CheckReport::new("table skew symmetry");
        let window = Window::radius(6);
        for i in 0..self.ngens() {
            for j in 0..self.ngens() {
                let lhs = self.table[i][j].canonical();
                let rhs = self.table[j][i].flip().neg().canonical();
                let symbolic = lhs == rhs;
                let rendered = self.render(&lhs, window) == self.render(&rhs, window);
                rep.check(symbolic && rendered, || {
                    format!(
                        "{{{a}(x), {b}(y)}} = {} but -{{{b}(y), {a}(x)}} = {}",
                        self.format_series(&lhs),
                        self.format_series(&rhs),
                        a = self.names[i],
                        b = self.names[j]
                    )
                });
            }
        }
        rep
    }

    /// Leibniz and skew consistency of [`VPDiffAlgebra::vp_bracket`] on samples.
    pub fn check_extension(&self, samples: &[Poly]) -> CheckReport {
        let mut rep = CheckReport::new("bracket extension");
        let window = Window::radius(5);
        let one = Poly::one();
        for a in samples {
            rep.check(self.vp_bracket(a, &one).is_zero(), || {
                format!("{{a(x), 1(y)}} != 0 for a = {}", format_jet(a, &self.names))
            });
            for b in samples {
                let ab = self.vp_bracket(a, b);
                let ba = self.vp_bracket(b, a).flip().neg().canonical();
                rep.check(self.render(&ab, window) == self.render(&ba, window), || {
                    format!("skew fails on {} and {}", format_jet(a, &self.names), format_jet(b, &self.names))
                });
                for c in samples {
                    let lhs = self.vp_bracket(a, &(b * c));
                    let rhs = self
                        .vp_bracket(a, b)
                        .map_coeffs(|g| DiffPoly(&g.0 * c))
                        .add(&self.vp_bracket(a, c).map_coeffs(|g| DiffPoly(&g.0 * b)))
                        .canonical();
                    rep.check(lhs == rhs, || {
                        format!(
                            "Leibniz fails on {}, {}, {}",
                            format_jet(a, &self.names),
                            format_jet(b, &self.names),
                            format_jet(c, &self.names)
                        )
                    });
                }
            }
        }
        rep
    }

    /// Small sample polynomials: fields, a derivative, and a product.
    pub fn default_samples(&self) -> Vec<Poly> {
        let n = self.ngens() as u32;
        let mut out: Vec<Poly> = (0..n).map(|i| Poly::var(field_var(i, 0))).collect();
        out.push(Poly::var(field_var(0, 1)));
        if n > 1 {
            out.push(&Poly::var(field_var(0, 0)) * &Poly::var(field_var(n - 1, 0)));
        } else {
            out.push(Poly::var(field_var(0, 0)).pow(2));
        }
        out
    }
}

/// Factor `[name, derivative order]`.
pub type FactorConfig = (BasisRef, u32);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VPTermConfig {
    #[serde(default)]
    pub order: u32,
    /// Monomials as lists of factors with a coefficient.
    pub poly: Vec<(Vec<FactorConfig>, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VPBracketConfig {
    pub a: BasisRef,
    pub b: BasisRef,
    pub terms: Vec<VPTermConfig>,
}

/// Inline vertex Poisson table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VPConfig {
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<VPBracketConfig>,
}

impl VPConfig {
    pub fn build(&self) -> Result<VPDiffAlgebra> {
        let mut entries = Vec::new();
        for br in &self.brackets {
            let a = br.a.resolve(&self.basis)?;
            let b = br.b.resolve(&self.basis)?;
            let mut terms = BTreeMap::new();
            for t in &br.terms {
                let mut p = Poly::zero();
                for (factors, c) in &t.poly {
                    let mut m = Poly::constant(c.clone());
                    for (name, j) in factors {
                        m = &m * &Poly::var(field_var(name.resolve(&self.basis)? as u32, *j));
                    }
                    p = &p + &m;
                }
                let slot = terms.entry(t.order).or_insert_with(Poly::zero);
                *slot = &*slot + &p;
            }
            entries.push(((a, b), Series::from_terms(Side::Y, terms.into_iter().map(|(k, p)| (k, DiffPoly(p))))));
        }
        VPDiffAlgebra::new(self.basis.clone(), entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{presets, sym_poisson};

    fn u(i: u32) -> Poly {
        Poly::var(field_var(i, 0))
    }

    #[test]
    fn ultra_poisson_brackets() {
        let g = presets::sl2();
        let a = VPDiffAlgebra::ultra_poisson(&g);
        assert!(a.check_table_skew().passed());
        let f = &u(0) * &u(1);
        let h = &u(2) * &u(2);
        let s = a.vp_bracket(&f, &h);
        assert_eq!(s.max_order(), Some(0));
        assert_eq!(s.coefficient(0).unwrap().0, sym_poisson(&g, &f, &h));
        let mp = a.mode_products(&f, &h);
        assert_eq!(mp.len(), 1);
        assert!(a.vp_bracket(&f, &Poly::one()).is_zero());
        let rep = a.check_extension(&a.default_samples());
        assert!(rep.passed(), "{rep}");
        let pres = a.pvpa_quotient().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(pres.generator_bracket(i, j), &g.bracket_poly(i, j));
            }
        }
    }

    #[test]
    fn constant_tables() {
        let names = vec!["u1".to_string(), "u2".to_string()];
        let d = BilinearForm::from_ints(&[&[1, 2], &[2, 5]]);
        let a = VPDiffAlgebra::constant(names.clone(), &d, 1).unwrap();
        assert!(a.check_table_skew().passed());
        assert_eq!(a.mode_products(&u(0), &u(1)), vec![Poly::zero(), Poly::constant(Rational::from_int(2))]);
        let pres = a.pvpa_quotient().unwrap();
        assert!((0..2).all(|i| (0..2).all(|j| pres.generator_bracket(i, j).is_zero())));
        let bad = VPDiffAlgebra::constant(names, &BilinearForm::from_ints(&[&[1, 2], &[3, 5]]), 1).unwrap();
        let rep = bad.check_table_skew();
        assert!(!rep.passed());
        assert_eq!(rep.failures.len(), 2);
        assert!(a.check_extension(&a.default_samples()).passed());
    }

    #[test]
    fn derivative_brackets() {
        // {u(x), u(y)} = Δ^(1): {u'(x), u(y)} = Δ^(2), {u(x), u'(y)} = -Δ^(2)
        let a = VPDiffAlgebra::constant(vec!["u".into()], &BilinearForm::from_ints(&[&[1]]), 1).unwrap();
        let d = Poly::var(field_var(0, 1));
        let s = a.vp_bracket(&d, &u(0));
        assert_eq!(a.format_series(&s), "(1)*Delta^(2)");
        let s = a.vp_bracket(&u(0), &d);
        assert_eq!(a.format_series(&s), "(-1)*Delta^(2)");
        // {u(x), (u u)(y)} = 2u(y)Δ^(1)
        let s = a.vp_bracket(&u(0), &(&u(0) * &u(0)));
        assert_eq!(a.format_series(&s), "(2*u)*Delta^(1)");
        // {(u u)(x), u(y)} = 2u(x)Δ^(1) = 2u(y)Δ^(1) - 2u'(y)Δ
        let s = a.vp_bracket(&(&u(0) * &u(0)), &u(0));
        assert_eq!(a.format_series(&s), "(-2*u')*Delta + (2*u)*Delta^(1)");
    }

    #[test]
    fn config_parse() {
        let j = r#"{"basis": ["u"], "brackets": [{"a": "u", "b": "u", "terms": [{"order": 1, "poly": [[[], "1"]]}]}]}"#;
        let cfg: VPConfig = serde_json::from_str(j).unwrap();
        let a = cfg.build().unwrap();
        assert_eq!(a.format_series(a.table(0, 0)), "(1)*Delta^(1)");
    }
}
