use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::base_ring::{binomial, Scalar};
use crate::dg_algebra::{AlgebraElement, Flavor, Monomial, Tower};
use crate::error::{Error, Result};

/// Basis element `g^o ⊗ r` of `B^e = B^o ⊗_A B`: `g` is a monomial in the
/// variables of `B` over `A` only, `r` is any monomial of `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnvMono {
    pub left: Vec<u32>,
    pub right: Monomial,
}

/// An element of the enveloping algebra of a tower over its sub-tower.
#[derive(Clone, Debug)]
pub struct EnvelopeElement {
    tower: Arc<Tower>,
    terms: BTreeMap<EnvMono, Scalar>,
}

impl PartialEq for EnvelopeElement {
    fn eq(&self, other: &EnvelopeElement) -> bool {
        Tower::same(&self.tower, &other.tower) && self.terms == other.terms
    }
}

impl Eq for EnvelopeElement {}

/// Splits a monomial of `B` into its `A`-part and its part over `A`.
pub(crate) fn split_monomial(tower: &Tower, m: &Monomial) -> (Monomial, Vec<u32>) {
    let s = tower.sub_len();
    let mut a = m.clone();
    for g in a.gamma[s..].iter_mut() {
        *g = 0;
    }
    (a, m.gamma[s..].to_vec())
}

/// The monomial of `B` with relative exponents `g` and nothing else.
pub(crate) fn relative_monomial(tower: &Tower, g: &[u32]) -> Monomial {
    let s = tower.sub_len();
    let mut m = Monomial::one(tower.nvars(), tower.base().nvars());
    m.gamma[s..].copy_from_slice(g);
    m
}

impl EnvelopeElement {
    pub fn zero(tower: &Arc<Tower>) -> EnvelopeElement {
        EnvelopeElement {
            tower: tower.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(tower: &Arc<Tower>) -> EnvelopeElement {
        let one = AlgebraElement::one(tower);
        EnvelopeElement::tensor(&one, &one)
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn terms(&self) -> &BTreeMap<EnvMono, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, m: EnvMono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn from_terms(
        tower: &Arc<Tower>,
        terms: impl IntoIterator<Item = (EnvMono, Scalar)>,
    ) -> EnvelopeElement {
        let mut e = EnvelopeElement::zero(tower);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn bidegree_of(&self, m: &EnvMono) -> (i64, i64) {
        let t = &self.tower;
        let l = relative_monomial(t, &m.left);
        let (h1, w1) = t.bidegree(&l);
        let (h2, w2) = t.bidegree(&m.right);
        (h1 + h2, w1 + w2)
    }

    pub fn bidegrees(&self) -> Vec<(i64, i64)> {
        let mut v: Vec<(i64, i64)> = self.terms.keys().map(|m| self.bidegree_of(m)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn bidegree(&self) -> Option<(i64, i64)> {
        match self.bidegrees().as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    /// `b₁^o ⊗ b₂`, normalized so every `A`-factor of `b₁` moves to the right:
    /// `(a·g)^o ⊗ r = (−1)^{|a||g|} g^o ⊗ a·r`.
    pub fn tensor(b1: &AlgebraElement, b2: &AlgebraElement) -> EnvelopeElement {
        let tower = b1.tower();
        assert!(Tower::same(tower, b2.tower()), "tensor factors from different towers");
        let mut out = EnvelopeElement::zero(tower);
        for (m1, c1) in b1.terms() {
            let (a, g) = split_monomial(tower, m1);
            let ga = tower.gamma_degree(&a.gamma);
            let gg = tower.gamma_degree(&relative_monomial(tower, &g).gamma);
            let a_elem = AlgebraElement::monomial(tower, a, c1.clone());
            let a_elem = if ga * gg % 2 != 0 { -&a_elem } else { a_elem };
            let right = &a_elem * b2;
            for (r, c) in right.terms() {
                out.add_term(
                    EnvMono {
                        left: g.clone(),
                        right: r.clone(),
                    },
                    c.clone(),
                );
            }
        }
        out
    }

    /// `b^o ⊗ 1`.
    pub fn left(b: &AlgebraElement) -> EnvelopeElement {
        EnvelopeElement::tensor(b, &AlgebraElement::one(b.tower()))
    }

    /// `1^o ⊗ b`.
    pub fn right(b: &AlgebraElement) -> EnvelopeElement {
        EnvelopeElement::tensor(&AlgebraElement::one(b.tower()), b)
    }

    fn check_same(&self, other: &EnvelopeElement) -> Result<()> {
        if Tower::same(&self.tower, &other.tower) {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    pub fn checked_add(&self, other: &EnvelopeElement) -> Result<EnvelopeElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &EnvelopeElement) -> EnvelopeElement {
        self.checked_add(other).expect("envelope mismatch")
    }

    pub fn sub(&self, other: &EnvelopeElement) -> EnvelopeElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> EnvelopeElement {
        self.scale(&-self.tower.field().one())
    }

    pub fn scale(&self, c: &Scalar) -> EnvelopeElement {
        EnvelopeElement::from_terms(
            &self.tower,
            self.terms.iter().map(|(m, a)| (m.clone(), a * c)),
        )
    }

    /// `(g₁^o⊗r₁)(g₂^o⊗r₂) = (−1)^{|r₁||g₂|} (g₁g₂)^o ⊗ r₁r₂`.
    pub fn checked_mul(&self, other: &EnvelopeElement) -> Result<EnvelopeElement> {
        self.check_same(other)?;
        let t = &self.tower;
        let mut out = EnvelopeElement::zero(t);
        for (m1, c1) in &self.terms {
            let l1 = relative_monomial(t, &m1.left);
            let r1_deg = t.gamma_degree(&m1.right.gamma);
            for (m2, c2) in &other.terms {
                let l2 = relative_monomial(t, &m2.left);
                let Some((l, cl)) = t.mul_monomials(&l1, &l2) else { continue };
                let Some((r, cr)) = t.mul_monomials(&m1.right, &m2.right) else { continue };
                let l2_deg = t.gamma_degree(&l2.gamma);
                let c = &(&(c1 * c2) * &cl) * &cr;
                let c = c.signed(r1_deg * l2_deg % 2 != 0);
                let (_, g) = split_monomial(t, &l);
                out.add_term(EnvMono { left: g, right: r }, c);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &EnvelopeElement) -> EnvelopeElement {
        self.checked_mul(other).expect("envelope mismatch")
    }

    /// `d(g^o⊗r) = d(g)^o⊗r + (−1)^{|g|} g^o⊗d(r)`.
    pub fn differential(&self) -> EnvelopeElement {
        let t = &self.tower;
        let mut out = EnvelopeElement::zero(t);
        for (m, c) in &self.terms {
            let l = relative_monomial(t, &m.left);
            let g = AlgebraElement::monomial(t, l.clone(), c.clone());
            let r = AlgebraElement::monomial(t, m.right.clone(), t.field().one());
            out = out.add(&EnvelopeElement::tensor(&g.differential(), &r));
            let g = if t.gamma_degree(&l.gamma) % 2 != 0 { -&g } else { g };
            out = out.add(&EnvelopeElement::tensor(&g, &r.differential()));
        }
        out
    }

    /// `π_B(g^o⊗r) = g·r`.
    pub fn pi(&self) -> AlgebraElement {
        let t = &self.tower;
        let mut out = AlgebraElement::zero(t);
        for (m, c) in &self.terms {
            let l = relative_monomial(t, &m.left);
            if let Some((p, cp)) = t.mul_monomials(&l, &m.right) {
                out.add_term(p, c * &cp);
            }
        }
        out
    }

    /// `e^(i)` for `e` homogeneous of positive even degree.
    pub fn divided_power(&self, i: u32) -> Result<EnvelopeElement> {
        let t = &self.tower;
        if self.is_zero() {
            return Ok(if i == 0 { EnvelopeElement::one(t) } else { self.clone() });
        }
        match self.bidegree() {
            Some((h, _)) if h > 0 && h % 2 == 0 => {}
            _ => return Err(Error::NotEvenPositive(self.to_string())),
        }
        let mut powers: Vec<EnvelopeElement> = (0..=i)
            .map(|j| if j == 0 { EnvelopeElement::one(t) } else { EnvelopeElement::zero(t) })
            .collect();
        for (m, c) in &self.terms {
            let tp: Vec<EnvelopeElement> = (0..=i)
                .map(|j| self.term_divided_power(m, c, j))
                .collect::<Result<_>>()?;
            let mut next = Vec::with_capacity(powers.len());
            for k in 0..=i as usize {
                let mut acc = EnvelopeElement::zero(t);
                for j in 0..=k {
                    if !powers[j].is_zero() && !tp[k - j].is_zero() {
                        acc = acc.add(&powers[j].mul(&tp[k - j]));
                    }
                }
                next.push(acc);
            }
            powers = next;
        }
        Ok(powers.pop().unwrap())
    }

    fn term_divided_power(&self, m: &EnvMono, c: &Scalar, i: u32) -> Result<EnvelopeElement> {
        let t = &self.tower;
        if i == 0 {
            return Ok(EnvelopeElement::one(t));
        }
        let g = AlgebraElement::monomial(t, relative_monomial(t, &m.left), c.clone());
        let r = AlgebraElement::monomial(t, m.right.clone(), t.field().one());
        if i == 1 {
            return Ok(EnvelopeElement::tensor(&g, &r));
        }
        let hg = t.gamma_degree(&relative_monomial(t, &m.left).gamma);
        let hr = t.gamma_degree(&m.right.gamma);
        if hg % 2 != 0 {
            // both factors odd: a product of two odd elements has vanishing divided powers
            return Ok(EnvelopeElement::zero(t));
        }
        if hr > 0 {
            Ok(EnvelopeElement::tensor(&g.pow(i), &r.divided_power(i)?))
        } else {
            Ok(EnvelopeElement::tensor(&g.divided_power(i)?, &r.pow(i)))
        }
    }

    /// `o(g)·r`, the notation accepted by the session parser.
    pub fn format_mono(&self, m: &EnvMono) -> String {
        let t = &self.tower;
        let l = t.format_monomial(&relative_monomial(t, &m.left));
        let r = t.format_monomial(&m.right);
        match (l.is_empty(), r.is_empty()) {
            (true, _) => r,
            (false, true) => format!("o({l})"),
            (false, false) => format!("o({l})·{r}"),
        }
    }
}

impl fmt::Display for EnvelopeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, Scalar)> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| (self.format_mono(m), c.clone()))
            .collect();
        crate::format::write_terms(f, &terms)
    }
}

/// `ξ_i^(m)`: the `m`-th divided (or ordinary) power of the diagonal
/// `ξ_i = X_i^o⊗1 − 1^o⊗X_i`.
pub fn xi_power(tower: &Arc<Tower>, i: usize, m: u32) -> Result<EnvelopeElement> {
    if i >= tower.nvars() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: tower.nvars(),
        });
    }
    if tower.is_odd(i) && m >= 2 {
        return Ok(EnvelopeElement::zero(tower));
    }
    let x = AlgebraElement::variable(tower, i);
    let power = |j: u32| -> Result<AlgebraElement> {
        match tower.flavor() {
            Flavor::Divided if !tower.is_odd(i) => x.divided_power(j),
            _ => Ok(x.pow(j)),
        }
    };
    let field = tower.field();
    let mut out = EnvelopeElement::zero(tower);
    for j in 0..=m {
        let mut coeff = field.one().signed((m - j) % 2 == 1);
        if tower.flavor() == Flavor::Ordinary {
            coeff = &coeff * &field.from_bigint(&binomial(m as u64, j as u64));
        }
        let term = EnvelopeElement::tensor(&power(j)?, &power(m - j)?);
        out = out.add(&term.scale(&coeff));
    }
    Ok(out)
}

/// `ξ^ω = ξ_{s+1}^(ω₁) ··· ξ_n^(ω_k)` over the variables of `B` over `A`.
pub fn xi_monomial(tower: &Arc<Tower>, omega: &[u32]) -> EnvelopeElement {
    let s = tower.sub_len();
    let mut acc = EnvelopeElement::one(tower);
    for (k, e) in omega.iter().enumerate() {
        if *e > 0 {
            let p = xi_power(tower, s + k, *e).expect("index within the tower");
            acc = acc.mul(&p);
        }
    }
    acc
}
