use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;

use super::tower::{Coefficient, Flavor, Monomial, Tower};
use crate::base_ring::{factorial, BasePoly, Scalar};
use crate::error::{Error, Result};

/// A sparse element of a tower: basis monomials with nonzero field coefficients.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    tower: Arc<Tower>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &AlgebraElement) -> bool {
        Tower::same(&self.tower, &other.tower) && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn zero(tower: &Arc<Tower>) -> AlgebraElement {
        AlgebraElement {
            tower: tower.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(tower: &Arc<Tower>) -> AlgebraElement {
        AlgebraElement::constant(tower, tower.field().one())
    }

    pub fn constant(tower: &Arc<Tower>, c: Scalar) -> AlgebraElement {
        AlgebraElement::monomial(tower, tower.one_monomial(), c)
    }

    pub fn monomial(tower: &Arc<Tower>, m: Monomial, c: Scalar) -> AlgebraElement {
        let mut e = AlgebraElement::zero(tower);
        e.add_term(m, c);
        e
    }

    /// The DG variable with index `i`.
    pub fn variable(tower: &Arc<Tower>, i: usize) -> AlgebraElement {
        let mut m = tower.one_monomial();
        m.gamma[i] = 1;
        AlgebraElement::monomial(tower, m, tower.field().one())
    }

    /// The base-ring variable with index `j`, a degree-0 element.
    pub fn base_variable(tower: &Arc<Tower>, j: usize) -> AlgebraElement {
        let mut m = tower.one_monomial();
        m.base[j] = 1;
        AlgebraElement::monomial(tower, m, tower.field().one())
    }

    pub fn from_base_poly(tower: &Arc<Tower>, p: &BasePoly) -> Result<AlgebraElement> {
        if **p.ring() != **tower.base() {
            return Err(Error::RingMismatch);
        }
        Ok(AlgebraElement::from_terms(
            tower,
            p.terms().iter().map(|(e, c)| {
                (
                    Monomial {
                        gamma: vec![0; tower.nvars()],
                        base: e.clone(),
                    },
                    c.clone(),
                )
            }),
        ))
    }

    pub fn from_terms(
        tower: &Arc<Tower>,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> AlgebraElement {
        let mut e = AlgebraElement::zero(tower);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
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

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.tower.field().zero())
    }

    /// Sorted distinct bidegrees of the nonzero terms.
    pub fn bidegrees(&self) -> Vec<(i64, i64)> {
        let mut v: Vec<(i64, i64)> = self.terms.keys().map(|m| self.tower.bidegree(m)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The common bidegree of all terms, if the element is nonzero and homogeneous.
    pub fn bidegree(&self) -> Option<(i64, i64)> {
        match self.bidegrees().as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|m| self.tower.gamma_degree(&m.gamma));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// The bidegree-`(h, w)` homogeneous component.
    pub fn component(&self, h: i64, w: i64) -> AlgebraElement {
        AlgebraElement::from_terms(
            &self.tower,
            self.terms
                .iter()
                .filter(|(m, _)| self.tower.bidegree(m) == (h, w))
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        AlgebraElement::from_terms(
            &self.tower,
            self.terms.iter().map(|(m, a)| (m.clone(), a * c)),
        )
    }

    pub fn scale_i64(&self, c: i64) -> AlgebraElement {
        self.scale(&self.tower.field().from_i64(c))
    }

    fn check_same(&self, other: &AlgebraElement) -> Result<()> {
        if Tower::same(&self.tower, &other.tower) {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    pub fn checked_add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(other)?;
        let mut out = AlgebraElement::zero(&self.tower);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((m, c)) = self.tower.mul_monomials(m1, m2) {
                    out.add_term(m, &(c1 * c2) * &c);
                }
            }
        }
        Ok(out)
    }

    /// Ordinary power `u^m` by repeated multiplication.
    pub fn pow(&self, m: u32) -> AlgebraElement {
        let mut acc = AlgebraElement::one(&self.tower);
        for _ in 0..m {
            acc = &acc * self;
        }
        acc
    }

    /// `d(u)`, extended from the variables by the Leibniz rule.
    pub fn differential(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero(&self.tower);
        for (m, c) in &self.terms {
            for (dm, dc) in self.tower.differential_of_monomial(m).iter() {
                out.add_term(dm.clone(), c * dc);
            }
        }
        out
    }

    /// Re-expresses this element inside a tower obtained by adjoining more variables.
    pub fn embed(&self, tower: &Arc<Tower>) -> Result<AlgebraElement> {
        if !self.tower.is_prefix_of(tower) {
            return Err(Error::TowerMismatch);
        }
        let n = tower.nvars();
        Ok(AlgebraElement::from_terms(
            tower,
            self.terms.iter().map(|(m, c)| {
                let mut g = m.gamma.clone();
                g.resize(n, 0);
                (
                    Monomial {
                        gamma: g,
                        base: m.base.clone(),
                    },
                    c.clone(),
                )
            }),
        ))
    }

    /// `u^(m)` for `u` homogeneous of positive even degree.
    ///
    /// In a divided-power tower this expands `u` into monomials and applies the
    /// sum, product and composition rules. In an ordinary tower it computes
    /// `u^m / m!`, which fails when `m!` vanishes in the field.
    pub fn divided_power(&self, m: u32) -> Result<AlgebraElement> {
        if self.is_zero() {
            return Ok(if m == 0 {
                AlgebraElement::one(&self.tower)
            } else {
                self.clone()
            });
        }
        match self.degree() {
            Some(d) if d > 0 && d % 2 == 0 => {}
            _ => return Err(Error::NotEvenPositive(self.to_string())),
        }
        match m {
            0 => return Ok(AlgebraElement::one(&self.tower)),
            1 => return Ok(self.clone()),
            _ => {}
        }
        let field = self.tower.field();
        if self.tower.flavor() == Flavor::Ordinary {
            let inv = field
                .from_bigint(&factorial(m as u64))
                .inv()
                .ok_or(Error::DivisionByCharacteristic {
                    p: field.characteristic(),
                    m,
                })?;
            return Ok(self.pow(m).scale(&inv));
        }
        // powers[j] = (sum of processed terms)^(j), j = 0..=m
        let mut powers: Vec<AlgebraElement> = (0..=m)
            .map(|j| {
                if j == 0 {
                    AlgebraElement::one(&self.tower)
                } else {
                    AlgebraElement::zero(&self.tower)
                }
            })
            .collect();
        for (mono, c) in &self.terms {
            let term_powers: Vec<AlgebraElement> =
                (0..=m).map(|j| self.monomial_divided_power(mono, c, j)).collect();
            let mut next = Vec::with_capacity(powers.len());
            for i in 0..=m as usize {
                let mut acc = AlgebraElement::zero(&self.tower);
                for j in 0..=i {
                    if powers[j].is_zero() || term_powers[i - j].is_zero() {
                        continue;
                    }
                    acc = &acc + &(&powers[j] * &term_powers[i - j]);
                }
                next.push(acc);
            }
            powers = next;
        }
        Ok(powers.pop().unwrap())
    }

    /// `(c·mono)^(i)` for an even monomial of positive degree.
    fn monomial_divided_power(&self, mono: &Monomial, c: &Scalar, i: u32) -> AlgebraElement {
        let t = &self.tower;
        match i {
            0 => return AlgebraElement::one(t),
            1 => return AlgebraElement::monomial(t, mono.clone(), c.clone()),
            _ => {}
        }
        if (0..t.nvars()).any(|k| t.is_odd(k) && mono.gamma[k] > 0) {
            return AlgebraElement::zero(t);
        }
        // (c x^α Π X_k^(m_k))^(i) = c^i x^{iα} · [Π_k (m_k i)!/(m_k!)^i / i!] Π X_k^(m_k i)
        let mut num = BigInt::from(1);
        let mut den = factorial(i as u64);
        for m_k in mono.gamma.iter().filter(|e| **e > 0) {
            num *= factorial(*m_k as u64 * i as u64);
            den *= num_traits::pow(factorial(*m_k as u64), i as usize);
        }
        let mut coeff = Coefficient::one();
        coeff.mul_big(&(num / den));
        let mut ci = t.field().one();
        for _ in 0..i {
            ci = &ci * c;
        }
        AlgebraElement::monomial(
            t,
            Monomial {
                gamma: mono.gamma.iter().map(|e| e * i).collect(),
                base: mono.base.iter().map(|e| e * i).collect(),
            },
            &coeff.into_scalar(t.field()) * &ci,
        )
    }
}

impl Tower {
    pub(crate) fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars(), self.base().nvars())
    }

    /// `d` of a basis monomial, by the Leibniz rule over its variable factors.
    pub(crate) fn differential_of_monomial(self: &Arc<Tower>, m: &Monomial) -> Vec<(Monomial, Scalar)> {
        let n = self.nvars();
        let field = self.field();
        let mut out = AlgebraElement::zero(self);
        let mut prefix_degree = 0i64;
        for k in 0..n {
            let e = m.gamma[k];
            if e == 0 {
                continue;
            }
            let var = self.var(k);
            let negate = prefix_degree % 2 != 0;
            prefix_degree += e as i64 * var.degree as i64;
            if var.differential.is_empty() {
                continue;
            }
            let mut left = Monomial {
                gamma: m.gamma.clone(),
                base: m.base.clone(),
            };
            for g in left.gamma[k + 1..].iter_mut() {
                *g = 0;
            }
            left.gamma[k] = e - 1;
            let mut right = self.one_monomial();
            right.gamma[k + 1..].copy_from_slice(&m.gamma[k + 1..]);
            let factor = match self.flavor() {
                Flavor::Divided => field.one(),
                Flavor::Ordinary => field.from_i64(e as i64),
            }
            .signed(negate);
            let left = AlgebraElement::monomial(self, left, factor);
            let target = AlgebraElement::from_terms(
                self,
                var.differential.iter().map(|(t, c)| {
                    let mut g = t.gamma.clone();
                    g.resize(n, 0);
                    (
                        Monomial {
                            gamma: g,
                            base: t.base.clone(),
                        },
                        c.clone(),
                    )
                }),
            );
            let right = AlgebraElement::monomial(self, right, field.one());
            let term = &(&left * &target) * &right;
            out = &out + &term;
        }
        out.terms.into_iter().collect()
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_add(rhs).expect("adding elements of different towers")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_add(&-rhs)
            .expect("subtracting elements of different towers")
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_mul(rhs)
            .expect("multiplying elements of different towers")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&-self.tower.field().one())
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, Scalar)> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| (self.tower.format_monomial(m), c.clone()))
            .collect();
        crate::format::write_terms(f, &terms)
    }
}
