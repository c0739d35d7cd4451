use super::algebra::{build_pl_algebra, PLAlgebra, PLElement};
use super::EvenLattice;
use crate::error::{Error, Result};
use crate::linalg::Span;
use crate::poly::Poly;
use crate::rational::{factorial, Rational};
use crate::report::CheckReport;

/// `B_k = ℚ[Z, X, Y]/(X², Y², XZ, YZ, XY - Z^{2k}/(2k)!, Z^{2k+1})` with
/// `{Z, X} = 2kX`, `{Z, Y} = -2kY`, `{X, Y} = Z^{2k-1}/(2k-1)!`.
///
/// Basis `1, Z, …, Z^{2k}, X, Y`, tables written out directly.
#[derive(Clone, Debug)]
pub struct BkAlgebra {
    pub k: u32,
}

impl BkAlgebra {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Precondition("B_k needs k >= 1".into()));
        }
        Ok(BkAlgebra { k })
    }

    pub fn dim(&self) -> usize {
        2 * self.k as usize + 3
    }

    pub fn x(&self) -> usize {
        2 * self.k as usize + 1
    }

    pub fn y(&self) -> usize {
        2 * self.k as usize + 2
    }

    fn top(&self) -> usize {
        2 * self.k as usize
    }

    /// Products as `(coefficient, basis index)`.
    pub fn mul(&self, i: usize, j: usize) -> Option<(Rational, usize)> {
        let (x, y, top) = (self.x(), self.y(), self.top());
        match (i, j) {
            (a, b) if a <= top && b <= top => (a + b <= top).then(|| (Rational::one(), a + b)),
            (0, b) => Some((Rational::one(), b)),
            (a, 0) => Some((Rational::one(), a)),
            (a, b) if (a == x && b == y) || (a == y && b == x) => Some((factorial(top as u32).recip(), top)),
            _ => None,
        }
    }

    pub fn bracket(&self, i: usize, j: usize) -> Option<(Rational, usize)> {
        let (x, y, top) = (self.x(), self.y(), self.top());
        let two_k = Rational::from_int(top as i64);
        match (i, j) {
            (1, b) if b == x => Some((two_k, x)),
            (1, b) if b == y => Some((-two_k, y)),
            (a, 1) if a == x => Some((-two_k, x)),
            (a, 1) if a == y => Some((two_k, y)),
            (a, b) if a == x && b == y => Some((factorial(top as u32 - 1).recip(), top - 1)),
            (a, b) if a == y && b == x => Some((-factorial(top as u32 - 1).recip(), top - 1)),
            _ => None,
        }
    }
}

fn image(p: &PLAlgebra, bk: &BkAlgebra, i: usize) -> PLElement {
    if i == bk.x() {
        p.x(&[1])
    } else if i == bk.y() {
        p.x(&[-1])
    } else {
        p.element(&Poly::var(0).pow(i as u32), &[0]).unwrap_or_default()
    }
}

fn scaled(e: &PLElement, c: &Rational) -> PLElement {
    let mut out = PLElement::zero();
    out.add_scaled(e, c);
    out
}

/// Compares `P(L)` for `⟨α, α⟩ = 2k` with `B_k` under `Z ↦ Z_α`,
/// `X ↦ X_α`, `Y ↦ X_{-α}`: bijective on bases, multiplicative and
/// bracket preserving on all basis pairs.
pub fn bk_compare(k: u32) -> Result<CheckReport> {
    let bk = BkAlgebra::new(k)?;
    let l = EvenLattice::new(vec![vec![2 * k as i64]])?;
    let p = build_pl_algebra(&l)?;
    let mut rep = CheckReport::new(format!("B_{k} isomorphism"));
    rep.check(p.dim() == bk.dim(), || format!("dim P(L) = {} but dim B_{k} = {}", p.dim(), bk.dim()));
    let images: Vec<PLElement> = (0..bk.dim()).map(|i| image(&p, &bk, i)).collect();
    let mut span = Span::new();
    for (i, e) in images.iter().enumerate() {
        let v: Vec<Rational> = (0..p.dim()).map(|j| e.0.get(&j).cloned().unwrap_or_else(Rational::zero)).collect();
        rep.check(span.insert(&v), || format!("image of basis element {i} is dependent"));
    }
    let apply = |r: Option<(Rational, usize)>| r.map_or_else(PLElement::zero, |(c, t)| scaled(&images[t], &c));
    for i in 0..bk.dim() {
        for j in 0..bk.dim() {
            let want = apply(bk.mul(i, j));
            let got = p.mul(&images[i], &images[j]);
            rep.check(got == want, || format!("product ({i}, {j}): {} vs {}", p.format(&got), p.format(&want)));
            let want = apply(bk.bracket(i, j));
            let got = p.bracket(&images[i], &images[j]);
            rep.check(got == want, || format!("bracket ({i}, {j}): {} vs {}", p.format(&got), p.format(&want)));
        }
    }
    Ok(rep)
}
