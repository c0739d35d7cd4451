use rayon::prelude::*;

use super::mode::{Mode, ModeElement};
use super::structure::VLStructure;
use crate::rational::Rational;
use crate::report::CheckReport;

impl VLStructure {
    fn modes_in_window(&self, w: i64) -> Vec<(String, ModeElement)> {
        let mut out: Vec<(String, ModeElement)> = Vec::new();
        for a in 0..self.dim() {
            for m in -w..=w {
                let e = self.basis_mode(a, m);
                if e.is_zero() || out.iter().any(|(_, x)| *x == e) {
                    continue;
                }
                out.push((format!("{}({m})", self.names()[a]), e));
            }
        }
        out
    }

    /// `[u_a(m), u_b(n)] = -[u_b(n), u_a(m)]` for all basis pairs, `|m|, |n| ≤ w`.
    pub fn verify_skew_symmetry(&self, w: i64) -> CheckReport {
        let r = self.dim();
        let cells: Vec<(usize, usize)> = (0..r).flat_map(|a| (0..r).map(move |b| (a, b))).collect();
        let parts: Vec<CheckReport> = cells
            .par_iter()
            .map(|&(a, b)| {
                let mut rep = CheckReport::new("skew symmetry");
                for m in -w..=w {
                    for n in -w..=w {
                        let lhs = self.component_bracket_unchecked(a, m, b, n);
                        let rhs = self.component_bracket_unchecked(b, n, a, m);
                        let sum = lhs.sum(&rhs);
                        rep.check(sum.is_zero(), || {
                            format!(
                                "[{a}({m}),{b}({n})] + [{b}({n}),{a}({m})] = {}",
                                self.format_mode_element(&sum),
                                a = self.names()[a],
                                b = self.names()[b]
                            )
                        });
                    }
                }
                rep
            })
            .collect();
        collect("skew symmetry", parts)
    }

    /// Jacobi identity on all basis-mode triples inside the window.
    pub fn verify_jacobi(&self, w: i64) -> CheckReport {
        let elems = self.modes_in_window(w);
        let parts: Vec<CheckReport> = (0..elems.len())
            .into_par_iter()
            .map(|i| {
                let mut rep = CheckReport::new("jacobi");
                let (nx, x) = &elems[i];
                for (ny, y) in &elems {
                    let xy = self.bracket(x, y);
                    for (nz, z) in &elems {
                        let yz = self.bracket(y, z);
                        let zx = self.bracket(z, x);
                        let mut total = self.bracket(&xy, z);
                        total.add_scaled(&self.bracket(&yz, x), &Rational::one());
                        total.add_scaled(&self.bracket(&zx, y), &Rational::one());
                        rep.check(total.is_zero(), || {
                            format!("cyclic sum on ({nx}, {ny}, {nz}) = {}", self.format_mode_element(&total))
                        });
                    }
                }
                rep
            })
            .collect();
        collect("jacobi", parts)
    }

    /// Each table term has degree `deg a + deg b - k - l - 1`; `d` raises degree by one.
    pub fn verify_grading(&self) -> CheckReport {
        let mut rep = CheckReport::new("grading");
        let Some(deg) = self.data().degrees.clone() else {
            return rep;
        };
        let r = self.dim();
        for a in 0..r {
            for b in 0..r {
                for t in self.table_entry(a, b) {
                    let want = deg[a] + deg[b] - t.k as i64 - t.l as i64 - 1;
                    for (i, c) in t.f.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        rep.check(deg[i] == want, || {
                            format!(
                                "term {}^({})Δ^({}) in [{},{}] has degree {} but should have {}",
                                self.names()[i],
                                t.k,
                                t.l,
                                self.names()[a],
                                self.names()[b],
                                deg[i],
                                want
                            )
                        });
                    }
                }
            }
        }
        for (&e, img) in self.data().domain.iter().zip(&self.data().d) {
            for (i, c) in img.iter().enumerate() {
                if !c.is_zero() {
                    rep.check(deg[i] == deg[e] + 1, || {
                        format!("d({}) has a component {} of the wrong degree", self.names()[e], self.names()[i])
                    });
                }
            }
        }
        rep
    }

    /// Brackets respect `(du)(m) = -m u(m-1)` in both slots.
    pub fn verify_d_compatibility(&self, w: i64) -> CheckReport {
        let mut rep = CheckReport::new("d compatibility");
        let data = self.data();
        for (&e, img) in data.domain.iter().zip(&data.d) {
            let ev = data.unit(e);
            for b in 0..self.dim() {
                let bv = data.unit(b);
                for m in -w..=w {
                    let f = Rational::from_int(-m);
                    for n in -w..=w {
                        let left = self.vector_bracket(img, m, &bv, n);
                        let want = self.vector_bracket(&ev, m - 1, &bv, n).scale(&f);
                        let right = self.vector_bracket(&bv, n, img, m);
                        let want_r = self.vector_bracket(&bv, n, &ev, m - 1).scale(&f);
                        rep.check(left == want && right == want_r, || {
                            format!(
                                "bracket of d({})({m}) with {}({n}) disagrees with -m {}({})",
                                data.names[e],
                                data.names[b],
                                data.names[e],
                                m - 1
                            )
                        });
                    }
                }
            }
        }
        rep
    }

    /// Brackets of nonnegative modes contain only nonnegative modes.
    pub fn verify_plus_closure(&self, w: i64) -> CheckReport {
        let mut rep = CheckReport::new("nonnegative modes closed");
        let r = self.dim();
        for a in 0..r {
            for b in 0..r {
                for m in 0..=w {
                    for n in 0..=w {
                        let br = self.component_bracket_unchecked(a, m, b, n);
                        let ok = br.terms().all(|(md, _)| md.n >= 0);
                        rep.check(ok, || {
                            format!(
                                "[{}({m}),{}({n})] = {} leaves the nonnegative modes",
                                self.names()[a],
                                self.names()[b],
                                self.format_mode_element(&br)
                            )
                        });
                    }
                }
            }
        }
        rep
    }

    /// Every structural check, in a fixed order; stops at the first failing suite.
    pub fn verify_all(&self, w: i64) -> CheckReport {
        let suites = [
            self.verify_grading(),
            self.verify_d_compatibility(w.min(3)),
            self.verify_skew_symmetry(w),
            self.verify_plus_closure(w),
        ];
        let mut total = CheckReport::new("structure axioms");
        for s in suites {
            if !s.passed() {
                return s;
            }
            total.merge(s);
        }
        let j = self.verify_jacobi(w);
        if !j.passed() {
            return j;
        }
        total.merge(j);
        total
    }

    /// Mode `g(n)` of generator `g` as an element.
    pub fn gen_mode(&self, gen: u32, n: i64) -> ModeElement {
        if self.is_central(gen) && n != -1 {
            return ModeElement::zero();
        }
        ModeElement::single(Mode::new(gen, n), Rational::one())
    }
}

fn collect(name: &str, parts: Vec<CheckReport>) -> CheckReport {
    let mut rep = CheckReport::new(name);
    for p in parts {
        rep.merge(p);
    }
    rep
}
