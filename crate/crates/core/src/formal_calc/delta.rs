use std::collections::BTreeMap;
use std::fmt;

use super::laurent::LaurentPoly;
use super::window::{BiSeries, BiSeriesWindow, Window};
use crate::error::{Error, Result};
use crate::rational::{falling, gen_binomial, Rational};

/// Coefficient ring for a delta series: a vector space with a derivation.
pub trait DeltaCoeff: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, s: &Rational) -> Self;
    /// The derivation with respect to the side variable.
    fn derive(&self) -> Self;

    fn derive_n(&self, k: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.derive();
        }
        out
    }
}

impl DeltaCoeff for LaurentPoly {
    fn zero_like(&self) -> Self {
        let names: Vec<&str> = self.vars().iter().map(String::as_str).collect();
        LaurentPoly::zero(&names)
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, s: &Rational) -> Self {
        LaurentPoly::scale(self, s)
    }
    fn derive(&self) -> Self {
        self.derivative(0)
    }
    fn derive_n(&self, k: u32) -> Self {
        self.derivative_n(0, k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// Coefficients are functions of `x`.
    X,
    /// Coefficients are functions of `y` (canonical).
    Y,
}

/// A finite sum `Σ g_i Δ^(i)(x, y)` with coefficients on one side.
#[derive(Clone, PartialEq)]
pub struct DeltaSeries<C> {
    side: Side,
    terms: BTreeMap<u32, C>,
}

impl<C: DeltaCoeff> DeltaSeries<C> {
    pub fn zero(side: Side) -> Self {
        DeltaSeries { side, terms: BTreeMap::new() }
    }

    pub fn term(side: Side, order: u32, g: C) -> Self {
        let mut s = Self::zero(side);
        s.add_term(order, &g);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, C)>>(side: Side, it: I) -> Self {
        let mut s = Self::zero(side);
        for (i, g) in it {
            s.add_term(i, &g);
        }
        s
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms by ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &C)> {
        self.terms.iter().map(|(i, g)| (*i, g))
    }

    pub fn coefficient(&self, order: u32) -> Option<&C> {
        self.terms.get(&order)
    }

    pub fn max_order(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, order: u32, g: &C) {
        if g.is_zero() {
            return;
        }
        let next = match self.terms.get(&order) {
            Some(old) => old.add(g),
            None => g.clone(),
        };
        if next.is_zero() {
            self.terms.remove(&order);
        } else {
            self.terms.insert(order, next);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let other = other.on_side(self.side);
        let mut out = self.clone();
        for (i, g) in &other.terms {
            out.add_term(*i, g);
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_terms(self.side, self.terms.iter().map(|(i, g)| (*i, g.scale(s))))
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from_int(-1))
    }

    pub fn map_coeffs<D: DeltaCoeff, F: Fn(&C) -> D>(&self, f: F) -> DeltaSeries<D> {
        DeltaSeries::from_terms(self.side, self.terms.iter().map(|(i, g)| (*i, f(g))))
    }

    /// Multiply by `(x - y)^m`: `(x-y)^m Δ^(n) = (-1)^m n!/(n-m)! Δ^(n-m)`,
    /// zero when `m > n`. Coefficients ride along on either side.
    pub fn mul_power_diff(&self, m: u32) -> Self {
        let mut out = Self::zero(self.side);
        for (&n, g) in &self.terms {
            if m > n {
                continue;
            }
            out.add_term(n - m, &g.scale(&power_diff_coeff(m, n)));
        }
        out
    }

    /// Re-express with coefficients on the other side.
    pub fn swap_side(&self) -> Self {
        let target = match self.side {
            Side::X => Side::Y,
            Side::Y => Side::X,
        };
        let mut out = Self::zero(target);
        for (&k, f) in &self.terms {
            for j in 0..=k {
                let b = gen_binomial(k as i64, j);
                let c = match self.side {
                    // f(x)Δ^(k) = Σ_j (-1)^(k+j) C(k,j) f^(k-j)(y) Δ^(j)
                    Side::X if (k + j) % 2 == 1 => -b,
                    Side::X => b,
                    // g(y)Δ^(k) = Σ_j C(k,j) g^(k-j)(x) Δ^(j)
                    Side::Y => b,
                };
                out.add_term(j, &f.derive_n(k - j).scale(&c));
            }
        }
        out
    }

    pub fn on_side(&self, side: Side) -> Self {
        if self.side == side {
            self.clone()
        } else {
            self.swap_side()
        }
    }

    /// Canonical form: coefficients in `y`.
    pub fn canonical(&self) -> Self {
        self.on_side(Side::Y)
    }

    /// `∂_x` of the series.
    pub fn d_x(&self) -> Self {
        let mut out = Self::zero(self.side);
        for (&i, g) in &self.terms {
            out.add_term(i + 1, g);
            if self.side == Side::X {
                out.add_term(i, &g.derive());
            }
        }
        out
    }

    /// `∂_y` of the series, using `∂_y Δ^(i) = -Δ^(i+1)`.
    pub fn d_y(&self) -> Self {
        let mut out = Self::zero(self.side);
        for (&i, g) in &self.terms {
            out.add_term(i + 1, &g.scale(&Rational::from_int(-1)));
            if self.side == Side::Y {
                out.add_term(i, &g.derive());
            }
        }
        out
    }

    /// Exchange the roles of `x` and `y`, using `Δ^(i)(y,x) = (-1)^i Δ^(i)(x,y)`.
    pub fn flip(&self) -> Self {
        let side = match self.side {
            Side::X => Side::Y,
            Side::Y => Side::X,
        };
        Self::from_terms(
            side,
            self.terms.iter().map(|(&i, g)| {
                let s = if i % 2 == 0 { 1 } else { -1 };
                (i, g.scale(&Rational::from_int(s)))
            }),
        )
    }
}

impl DeltaSeries<LaurentPoly> {
    /// The bare `Δ^(k)`.
    pub fn delta(k: u32) -> Self {
        Self::term(Side::Y, k, LaurentPoly::constant(&["y"], Rational::one()))
    }

    fn side_var(side: Side) -> &'static str {
        match side {
            Side::X => "x",
            Side::Y => "y",
        }
    }

    /// Coefficient of `x^a y^b`, computed directly from the definition.
    pub fn coeff_at(&self, a: i64, b: i64) -> Rational {
        let mut acc = Rational::zero();
        for (&i, g) in &self.terms {
            let ii = i as i64;
            let (n, p) = match self.side {
                // g(y)·x^(n-i) y^(-n-1): n = a + i, y-exponent of g is b + n + 1
                Side::Y => (a + ii, a + b + ii + 1),
                // g(x)·x^(n-i) y^(-n-1): n = -b - 1, x-exponent of g is a - n + i
                Side::X => (-b - 1, a + b + 1 + ii),
            };
            let c = g.coeff1(p);
            if !c.is_zero() {
                acc += c * falling(n, i);
            }
        }
        acc
    }

    /// Multiply by `x`.
    pub fn mul_x(&self) -> Self {
        match self.side {
            Side::X => self.map_coeffs(|g| g.shift(0, 1)),
            Side::Y => {
                // x = y + (x - y)
                let shifted = self.map_coeffs(|g| g.shift(0, 1));
                shifted.add(&self.mul_power_diff(1))
            }
        }
    }

    /// Multiply by `y`.
    pub fn mul_y(&self) -> Self {
        match self.side {
            Side::Y => self.map_coeffs(|g| g.shift(0, 1)),
            Side::X => {
                let shifted = self.map_coeffs(|g| g.shift(0, 1));
                shifted.add(&self.mul_power_diff(1).neg())
            }
        }
    }

    pub fn render(&self, window: Window) -> BiSeriesWindow {
        BiSeriesWindow::sample(self, window)
    }

    /// Largest absolute exponent appearing in any coefficient.
    pub fn coefficient_spread(&self) -> i64 {
        self.terms
            .values()
            .filter_map(|g| g.exponent_range(0))
            .map(|(lo, hi)| lo.abs().max(hi.abs()))
            .max()
            .unwrap_or(0)
    }

    /// Re-tag coefficient variables after a side change.
    fn tidy(mut self) -> Self {
        let name = Self::side_var(self.side);
        for g in self.terms.values_mut() {
            *g = g.rename(&[name]);
        }
        self
    }

    pub fn swap_side_named(&self) -> Self {
        self.swap_side().tidy()
    }
}

impl BiSeries for DeltaSeries<LaurentPoly> {
    fn coeff(&self, a: i64, b: i64) -> Rational {
        self.coeff_at(a, b)
    }
}

impl<C: DeltaCoeff + fmt::Display> fmt::Display for DeltaSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(i, g)| format!("({g})*Delta^({i})")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<C: fmt::Debug> fmt::Debug for DeltaSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DeltaSeries[{:?}]{:?}", self.side, self.terms)
    }
}

/// The scalar `c` in `(x-y)^m Δ^(n) = c Δ^(n-m)`, from iterating
/// `(x-y)Δ^(n) = -n Δ^(n-1)`; zero when `m > n`.
pub fn power_diff_coeff(m: u32, n: u32) -> Rational {
    if m > n {
        return Rational::zero();
    }
    let f = falling(n as i64, m);
    if m.is_multiple_of(2) {
        f
    } else {
        -f
    }
}

/// Window of `Δ^(k)`: the coefficient of `x^(n-k) y^(-n-1)` is `n(n-1)...(n-k+1)`.
pub fn delta_window(k: u32, window: Window) -> BiSeriesWindow {
    BiSeriesWindow::from_fn(
        window,
        |a, b| {
            if a + b == -(k as i64) - 1 {
                falling(a + k as i64, k)
            } else {
                Rational::zero()
            }
        },
    )
}

pub fn render(series: &DeltaSeries<LaurentPoly>, window: Window) -> BiSeriesWindow {
    series.render(window)
}

/// Recover `f = Σ_{i≤k} f_i(y) Δ^(i)` from coefficient access, given the
/// promise `(x-y)^(k+1) f = 0`. The coefficients are read on `window` and the
/// result is re-rendered there; any disagreement means the promise was false
/// or the window was too small. The residues need the columns
/// `x^-1, …, x^-(k+1)` inside the window.
pub fn decompose<S: BiSeries + ?Sized>(f: &S, k: u32, window: Window) -> Result<DeltaSeries<LaurentPoly>> {
    if window.lo_x > -(k as i64) - 1 || window.hi_x < -1 {
        return Err(Error::Precondition(format!(
            "window {window:?} does not contain the residue columns for order {k}"
        )));
    }
    let mut out = DeltaSeries::zero(Side::Y);
    for i in 0..=k {
        // Res_x (x-y)^i f = (-1)^i i! f_i(y)
        let norm = power_diff_coeff(i, i);
        let ii = i as i64;
        let mut g = LaurentPoly::zero(&["y"]);
        for b in (window.lo_y + ii)..=window.hi_y {
            let mut acc = Rational::zero();
            for s in 0..=ii {
                let sign = if (ii - s) % 2 == 0 { 1 } else { -1 };
                let c = f.coeff(-1 - s, b - (ii - s));
                if !c.is_zero() {
                    acc += gen_binomial(ii, s as u32) * Rational::from_int(sign) * c;
                }
            }
            if !acc.is_zero() {
                g.add_term(vec![b], acc / &norm);
            }
        }
        out.add_term(i, &g);
    }
    let rendered = out.render(window);
    if let Some((a, b)) = rendered.first_difference(f) {
        return Err(Error::Decompose(format!(
            "reconstruction differs at x^{a} y^{b}: expected {}, got {}",
            f.coeff(a, b),
            rendered.get(a, b)
        )));
    }
    Ok(out)
}

/// Window radius large enough that no truncation can hide a discrepancy.
pub fn oracle_radius(series: &DeltaSeries<LaurentPoly>) -> i64 {
    series.max_order().unwrap_or(0) as i64 + 2 * series.coefficient_spread() + 2
}
