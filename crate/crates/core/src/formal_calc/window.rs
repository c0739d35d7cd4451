use crate::rational::{gen_binomial, Rational};

/// Rectangular exponent window `[lo_x, hi_x] × [lo_y, hi_y]`, inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo_x: i64,
    pub hi_x: i64,
    pub lo_y: i64,
    pub hi_y: i64,
}

impl Window {
    pub fn new(lo_x: i64, hi_x: i64, lo_y: i64, hi_y: i64) -> Self {
        assert!(lo_x <= hi_x && lo_y <= hi_y, "empty window");
        Window { lo_x, hi_x, lo_y, hi_y }
    }

    /// Symmetric window `[-r, r]²`.
    pub fn radius(r: i64) -> Self {
        Window::new(-r, r, -r, r)
    }

    pub fn width(&self) -> usize {
        (self.hi_x - self.lo_x + 1) as usize
    }

    pub fn height(&self) -> usize {
        (self.hi_y - self.lo_y + 1) as usize
    }

    pub fn contains(&self, a: i64, b: i64) -> bool {
        (self.lo_x..=self.hi_x).contains(&a) && (self.lo_y..=self.hi_y).contains(&b)
    }

    pub fn cells(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.lo_x..=self.hi_x).flat_map(move |a| (self.lo_y..=self.hi_y).map(move |b| (a, b)))
    }
}

/// Anything with exact coefficient access `x^a y^b`.
pub trait BiSeries {
    fn coeff(&self, a: i64, b: i64) -> Rational;
}

/// Dense table of the coefficients of a two-variable series on a window.
#[derive(Clone, PartialEq, Eq)]
pub struct BiSeriesWindow {
    window: Window,
    data: Vec<Rational>,
}

impl BiSeriesWindow {
    pub fn zeros(window: Window) -> Self {
        BiSeriesWindow { window, data: vec![Rational::zero(); window.width() * window.height()] }
    }

    pub fn from_fn<F: FnMut(i64, i64) -> Rational>(window: Window, mut f: F) -> Self {
        let mut w = Self::zeros(window);
        for (a, b) in window.cells() {
            let v = f(a, b);
            w.set(a, b, v);
        }
        w
    }

    pub fn sample<S: BiSeries + ?Sized>(s: &S, window: Window) -> Self {
        Self::from_fn(window, |a, b| s.coeff(a, b))
    }

    pub fn window(&self) -> Window {
        self.window
    }

    fn idx(&self, a: i64, b: i64) -> usize {
        debug_assert!(self.window.contains(a, b));
        (a - self.window.lo_x) as usize * self.window.height() + (b - self.window.lo_y) as usize
    }

    /// Coefficient of `x^a y^b`; zero outside the window.
    pub fn get(&self, a: i64, b: i64) -> Rational {
        if self.window.contains(a, b) {
            self.data[self.idx(a, b)].clone()
        } else {
            Rational::zero()
        }
    }

    pub fn set(&mut self, a: i64, b: i64, v: Rational) {
        let i = self.idx(a, b);
        self.data[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = ((i64, i64), &Rational)> + '_ {
        self.window.cells().zip(self.data.iter()).filter(|(_, v)| !v.is_zero())
    }

    /// Restrict to a sub-window.
    pub fn restrict(&self, w: Window) -> Self {
        Self::from_fn(w, |a, b| self.get(a, b))
    }

    /// Multiply by `(x - y)^m`. Only cells whose inputs lie inside the
    /// window are exact, so the result lives on the shrunken window.
    pub fn mul_power_diff(&self, m: u32) -> Self {
        let w = self.window;
        let mi = m as i64;
        let out_w = Window::new(w.lo_x + mi, w.hi_x.max(w.lo_x + mi), w.lo_y + mi, w.hi_y.max(w.lo_y + mi));
        let coeffs: Vec<Rational> = (0..=m)
            .map(|s| {
                let sign = if (m - s).is_multiple_of(2) { 1 } else { -1 };
                gen_binomial(mi, s) * Rational::from_int(sign)
            })
            .collect();
        Self::from_fn(out_w, |a, b| {
            let mut acc = Rational::zero();
            for (s, c) in coeffs.iter().enumerate() {
                let s = s as i64;
                acc += c * &self.get(a - s, b - (mi - s));
            }
            acc
        })
    }

    /// First cell where `self` and `other` disagree, over `self`'s window.
    pub fn first_difference<S: BiSeries + ?Sized>(&self, other: &S) -> Option<(i64, i64)> {
        self.window.cells().find(|&(a, b)| self.get(a, b) != other.coeff(a, b))
    }
}

impl BiSeries for BiSeriesWindow {
    fn coeff(&self, a: i64, b: i64) -> Rational {
        self.get(a, b)
    }
}

impl std::fmt::Debug for BiSeriesWindow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BiSeriesWindow({:?}; ", self.window)?;
        let entries: Vec<String> = self.nonzero().map(|((a, b), v)| format!("x^{a}y^{b}:{v}")).collect();
        write!(f, "{})", entries.join(", "))
    }
}
