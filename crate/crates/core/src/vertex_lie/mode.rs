use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::rational::Rational;

/// A generator mode `g(n)`. Ordered by generator index, then by descending
/// mode index, which is the printing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mode {
    pub gen: u32,
    pub n: i64,
}

impl Mode {
    pub fn new(gen: u32, n: i64) -> Self {
        Mode { gen, n }
    }
}

impl Ord for Mode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gen.cmp(&other.gen).then(other.n.cmp(&self.n))
    }
}

impl PartialOrd for Mode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite ℚ-linear combination of generator modes, already reduced.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ModeElement {
    terms: BTreeMap<Mode, Rational>,
}

impl ModeElement {
    pub fn zero() -> Self {
        ModeElement::default()
    }

    pub fn single(m: Mode, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(m, &c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mode, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Mode) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Mode, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &ModeElement, s: &Rational) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(*m, &(c * s));
        }
    }

    pub fn scale(&self, s: &Rational) -> ModeElement {
        let mut out = ModeElement::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn sum(&self, other: &ModeElement) -> ModeElement {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn difference(&self, other: &ModeElement) -> ModeElement {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::from_int(-1));
        out
    }

    pub fn format_with<F: Fn(u32) -> String>(&self, name: F) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            if !a.is_one() {
                s.push_str(&format!("{a}*"));
            }
            s.push_str(&format!("{}({})", name(m.gen), m.n));
        }
        s
    }
}

impl std::fmt::Debug for ModeElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.format_with(|g| format!("g{g}")))
    }
}
