use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::{falling, Rational};

/// Multivariate Laurent polynomial over ℚ with named variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl LaurentPoly {
    pub fn zero(vars: &[&str]) -> Self {
        LaurentPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    /// Univariate polynomial from `(exponent, coefficient)` pairs.
    pub fn univariate(var: &str, terms: &[(i64, Rational)]) -> Self {
        let mut p = Self::zero(&[var]);
        for (e, c) in terms {
            p.add_term(vec![*e], c.clone());
        }
        p
    }

    pub fn monomial1(var: &str, e: i64, c: Rational) -> Self {
        Self::univariate(var, &[(e, c)])
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Coefficient of `var^e` in a univariate polynomial.
    pub fn coeff1(&self, e: i64) -> Rational {
        debug_assert_eq!(self.arity(), 1);
        self.coeff(&[e])
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: Rational) {
        assert_eq!(exps.len(), self.vars.len(), "exponent arity mismatch");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        if s.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect();
        out
    }

    /// Partial derivative in variable `idx`.
    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[idx] -= 1;
            out.add_term(f, c * &Rational::from_int(e[idx]));
        }
        out
    }

    /// `k`-th derivative in variable `idx`.
    pub fn derivative_n(&self, idx: usize, k: u32) -> Self {
        let mut out = Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let f_k = falling(e[idx], k);
            if f_k.is_zero() {
                continue;
            }
            let mut f = e.clone();
            f[idx] -= k as i64;
            out.add_term(f, c * &f_k);
        }
        out
    }

    /// Multiply by `var[idx]^s`.
    pub fn shift(&self, idx: usize, s: i64) -> Self {
        let mut out = Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f[idx] += s;
            out.terms.insert(f, c.clone());
        }
        out
    }

    pub fn rename(&self, vars: &[&str]) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        Self { vars: vars.iter().map(|s| s.to_string()).collect(), terms: self.terms.clone() }
    }

    /// Smallest and largest exponent of variable `idx`; `None` if zero.
    pub fn exponent_range(&self, idx: usize) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|e| e[idx]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v))))
    }

    fn same_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "variable sets differ");
    }
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // highest exponents first
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let mut parts = Vec::new();
            let is_unit = e.iter().all(|&x| x == 0);
            if !a.is_one() || is_unit {
                parts.push(a.to_string());
            }
            for (name, &x) in self.vars.iter().zip(e) {
                match x {
                    0 => {}
                    1 => parts.push(name.clone()),
                    _ => parts.push(format!("{name}^{x}")),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.same_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&Rational::from_int(-1))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.same_vars(rhs);
        let mut out = LaurentPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn derivative_of_negative_powers() {
        let p = LaurentPoly::univariate("y", &[(-2, r(3)), (1, r(1))]);
        let d = p.derivative(0);
        assert_eq!(d, LaurentPoly::univariate("y", &[(-3, r(-6)), (0, r(1))]));
        assert_eq!(p.derivative_n(0, 2), d.derivative(0));
    }

    #[test]
    fn product_and_display() {
        let p = LaurentPoly::univariate("y", &[(-1, r(1)), (1, r(1))]);
        let q = &p * &p;
        assert_eq!(q.to_string(), "y^2 + 2 + y^-2");
        assert!((&q - &q).is_zero());
    }

    #[test]
    fn bivariate_terms() {
        let mut p = LaurentPoly::zero(&["x", "y"]);
        p.add_term(vec![1, -1], r(2));
        p.add_term(vec![1, -1], r(-2));
        assert!(p.is_zero());
    }
}
