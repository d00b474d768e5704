use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use super::element::AlgebraElement;
use crate::base_ring::{BaseRing, Field, Scalar};
use crate::error::{Error, Result};

/// Divided powers `X^(m)` (free extension) or ordinary powers `X^m` (polynomial extension).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Divided,
    Ordinary,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Divided => "divided",
            Flavor::Ordinary => "ordinary",
        }
    }
}

/// A basis monomial `x^α · X₁^(m₁)···X_n^(m_n)`: base exponents plus one exponent per DG variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub gamma: Vec<u32>,
    pub base: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize, nbase: usize) -> Monomial {
        Monomial {
            gamma: vec![0; nvars],
            base: vec![0; nbase],
        }
    }

    pub fn is_one(&self) -> bool {
        self.gamma.iter().all(|e| *e == 0) && self.base.iter().all(|e| *e == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgVariable {
    pub name: String,
    pub degree: u32,
    pub weight: u32,
    /// `d(X)`, written over the variables adjoined before this one.
    pub differential: Vec<(Monomial, Scalar)>,
}

type MonomialCache = HashMap<(i64, i64), Arc<Vec<Monomial>>>;

/// `R⟨X₁..X_n⟩` or `R[X₁..X_n]` over a weighted polynomial ring `R`.
///
/// The first `sub_len` variables span the sub-tower `A`; the rest are the
/// variables of `B` over `A`.
pub struct Tower {
    base: Arc<BaseRing>,
    flavor: Flavor,
    vars: Vec<DgVariable>,
    sub_len: usize,
    provenance: Vec<String>,
    monomials: Mutex<MonomialCache>,
}

impl PartialEq for Tower {
    fn eq(&self, other: &Tower) -> bool {
        self.base == other.base
            && self.flavor == other.flavor
            && self.vars == other.vars
            && self.sub_len == other.sub_len
    }
}

impl Eq for Tower {}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tower")
            .field("base", &self.base)
            .field("flavor", &self.flavor)
            .field("vars", &self.vars)
            .field("sub_len", &self.sub_len)
            .finish()
    }
}

impl Tower {
    pub fn new(base: Arc<BaseRing>, flavor: Flavor) -> Arc<Tower> {
        Arc::new(Tower::from_parts(base, flavor, Vec::new(), 0, Vec::new()))
    }

    fn from_parts(
        base: Arc<BaseRing>,
        flavor: Flavor,
        vars: Vec<DgVariable>,
        sub_len: usize,
        provenance: Vec<String>,
    ) -> Tower {
        Tower {
            base,
            flavor,
            vars,
            sub_len,
            provenance,
            monomials: Mutex::new(HashMap::new()),
        }
    }

    pub fn base(&self) -> &Arc<BaseRing> {
        &self.base
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[DgVariable] {
        &self.vars
    }

    pub fn var(&self, i: usize) -> &DgVariable {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.vars[i].degree % 2 == 1
    }

    /// Number of leading variables belonging to the sub-tower `A`.
    pub fn sub_len(&self) -> usize {
        self.sub_len
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    pub fn same(a: &Arc<Tower>, b: &Arc<Tower>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    /// Same algebra with the first `k` variables designated as the sub-tower `A`.
    pub fn with_sub_tower(&self, k: usize) -> Result<Arc<Tower>> {
        if k > self.nvars() {
            return Err(Error::IndexOutOfRange {
                index: k,
                len: self.nvars(),
            });
        }
        Ok(Arc::new(Tower::from_parts(
            self.base.clone(),
            self.flavor,
            self.vars.clone(),
            k,
            self.provenance.clone(),
        )))
    }

    pub fn with_provenance(&self, note: impl Into<String>) -> Arc<Tower> {
        let mut p = self.provenance.clone();
        p.push(note.into());
        Arc::new(Tower::from_parts(
            self.base.clone(),
            self.flavor,
            self.vars.clone(),
            self.sub_len,
            p,
        ))
    }

    /// Adjoins `X` with `d(X) = target`, checking that the target is a cycle of
    /// degree `degree - 1` and weight `weight`, and that degrees stay monotone.
    pub fn adjoin(
        self: &Arc<Tower>,
        name: &str,
        degree: u32,
        weight: u32,
        target: &AlgebraElement,
    ) -> Result<Arc<Tower>> {
        if !Tower::same(self, target.tower()) {
            return Err(Error::TowerMismatch);
        }
        if degree == 0 {
            return Err(Error::BidegreeMismatch(format!(
                "{name} must have positive homological degree"
            )));
        }
        if weight == 0 {
            return Err(Error::BidegreeMismatch(format!(
                "{name} must have positive weight"
            )));
        }
        if let Some(last) = self.vars.last() {
            if degree < last.degree {
                return Err(Error::DecreasingDegree {
                    name: name.to_string(),
                    degree,
                    previous: last.degree,
                });
            }
        }
        if self.var_index(name).is_some() || self.base.index_of(name).is_some() {
            return Err(Error::InvalidRing(format!("name {name} already in use")));
        }
        for m in target.terms().keys() {
            let (h, w) = self.bidegree(m);
            if h != degree as i64 - 1 || w != weight as i64 {
                return Err(Error::BidegreeMismatch(format!(
                    "d({name}) must have bidegree ({}, {weight}), found a term of bidegree ({h}, {w}) in {target}",
                    degree as i64 - 1
                )));
            }
        }
        let boundary = target.differential();
        if !boundary.is_zero() {
            return Err(Error::NotACycle {
                target: target.to_string(),
                boundary: boundary.to_string(),
            });
        }
        Ok(self.adjoin_unchecked(name, degree, weight, target))
    }

    /// Adjoins without validating the target. Meant for building corrupted
    /// towers that the axiom checker must reject.
    pub fn adjoin_unchecked(
        self: &Arc<Tower>,
        name: &str,
        degree: u32,
        weight: u32,
        target: &AlgebraElement,
    ) -> Arc<Tower> {
        let mut vars = self.vars.clone();
        vars.push(DgVariable {
            name: name.to_string(),
            degree,
            weight,
            differential: target
                .terms()
                .iter()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        });
        Arc::new(Tower::from_parts(
            self.base.clone(),
            self.flavor,
            vars,
            self.sub_len,
            self.provenance.clone(),
        ))
    }

    /// Whether `other` is this tower with possibly more variables adjoined.
    pub fn is_prefix_of(&self, other: &Tower) -> bool {
        self.base == other.base
            && self.flavor == other.flavor
            && self.vars.len() <= other.vars.len()
            && self.vars.iter().zip(&other.vars).all(|(a, b)| a == b)
    }

    pub fn gamma_degree(&self, gamma: &[u32]) -> i64 {
        gamma
            .iter()
            .zip(&self.vars)
            .map(|(m, v)| *m as i64 * v.degree as i64)
            .sum()
    }

    pub fn gamma_weight(&self, gamma: &[u32]) -> i64 {
        gamma
            .iter()
            .zip(&self.vars)
            .map(|(m, v)| *m as i64 * v.weight as i64)
            .sum()
    }

    /// (homological degree, weight) of a monomial.
    pub fn bidegree(&self, m: &Monomial) -> (i64, i64) {
        (
            self.gamma_degree(&m.gamma),
            self.gamma_weight(&m.gamma) + self.base.monomial_weight(&m.base),
        )
    }

    pub fn is_odd_monomial(&self, m: &Monomial) -> bool {
        self.gamma_degree(&m.gamma) % 2 != 0
    }

    /// Exponent vectors over the variables `range` with homological degree
    /// exactly `h` and weight at most `w_max`; odd variables appear at most once.
    pub fn gamma_vectors(
        &self,
        range: std::ops::Range<usize>,
        h: i64,
        w_max: i64,
    ) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        if h < 0 || w_max < 0 {
            return out;
        }
        let mut cur = vec![0u32; range.len()];
        self.fill_gamma(range.start, range.start, range.end, h, w_max, &mut cur, &mut out);
        out.sort();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn fill_gamma(
        &self,
        start: usize,
        idx: usize,
        end: usize,
        h: i64,
        w: i64,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if idx == end {
            if h == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let v = &self.vars[idx];
        let (d, wt) = (v.degree as i64, v.weight as i64);
        let cap = if v.degree % 2 == 1 { 1 } else { u32::MAX as i64 };
        let mut e = 0i64;
        while e <= cap && e * d <= h && e * wt <= w {
            cur[idx - start] = e as u32;
            self.fill_gamma(start, idx + 1, end, h - e * d, w - e * wt, cur, out);
            e += 1;
        }
        cur[idx - start] = 0;
    }

    /// Field basis of `B` in bidegree `(h, w)`, sorted.
    pub fn monomials(&self, h: i64, w: i64) -> Arc<Vec<Monomial>> {
        if let Some(v) = self.monomials.lock().unwrap().get(&(h, w)) {
            return v.clone();
        }
        let mut out = Vec::new();
        for gamma in self.gamma_vectors(0..self.nvars(), h, w) {
            let rest = w - self.gamma_weight(&gamma);
            for base in self.base.monomials_of_weight(rest) {
                out.push(Monomial {
                    gamma: gamma.clone(),
                    base,
                });
            }
        }
        out.sort();
        let out = Arc::new(out);
        self.monomials.lock().unwrap().insert((h, w), out.clone());
        out
    }

    /// Largest homological degree reachable at weight `w`.
    pub fn max_degree_at_weight(&self, w: i64) -> i64 {
        self.vars
            .iter()
            .map(|v| (w / v.weight as i64) * v.degree as i64)
            .max()
            .unwrap_or(0)
            .max(0)
    }

    /// Product of two basis monomials: `None` when it vanishes (repeated odd
    /// variable or a coefficient that is zero in the field).
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, Scalar)> {
        let n = self.nvars();
        let mut negate = false;
        let mut odd_above = 0u32;
        for k in (0..n).rev() {
            if self.is_odd(k) {
                if b.gamma[k] == 1 {
                    if a.gamma[k] == 1 {
                        return None;
                    }
                    if odd_above % 2 == 1 {
                        negate = !negate;
                    }
                }
                if a.gamma[k] == 1 {
                    odd_above += 1;
                }
            }
        }
        let mut coeff = Coefficient::one();
        if self.flavor == Flavor::Divided {
            for k in 0..n {
                if !self.is_odd(k) && a.gamma[k] > 0 && b.gamma[k] > 0 {
                    coeff.mul_binomial((a.gamma[k] + b.gamma[k]) as u64, a.gamma[k] as u64);
                }
            }
        }
        let c = coeff.into_scalar(self.field()).signed(negate);
        if c.is_zero() {
            return None;
        }
        Some((
            Monomial {
                gamma: a.gamma.iter().zip(&b.gamma).map(|(x, y)| x + y).collect(),
                base: a.base.iter().zip(&b.base).map(|(x, y)| x + y).collect(),
            },
            c,
        ))
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        let base = self.base.format_monomial(&m.base);
        if !base.is_empty() {
            parts.push(base);
        }
        for (k, e) in m.gamma.iter().enumerate() {
            match (*e, self.flavor) {
                (0, _) => {}
                (1, _) => parts.push(self.vars[k].name.clone()),
                (e, Flavor::Divided) => parts.push(format!("{}^({e})", self.vars[k].name)),
                (e, Flavor::Ordinary) => parts.push(format!("{}^{e}", self.vars[k].name)),
            }
        }
        parts.join("·")
    }
}

/// Integer coefficient accumulated in `u128` until it overflows.
pub(crate) enum Coefficient {
    Small(u128),
    Big(BigInt),
}

impl Coefficient {
    pub(crate) fn one() -> Coefficient {
        Coefficient::Small(1)
    }

    pub(crate) fn mul_binomial(&mut self, n: u64, k: u64) {
        let b = crate::base_ring::binomial(n, k);
        self.mul_big(&b);
    }

    pub(crate) fn mul_big(&mut self, b: &BigInt) {
        let small = u128::try_from(b).ok();
        *self = match (&*self, small) {
            (Coefficient::Small(a), Some(s)) => match a.checked_mul(s) {
                Some(p) => Coefficient::Small(p),
                None => Coefficient::Big(BigInt::from(*a) * b),
            },
            (Coefficient::Small(a), None) => Coefficient::Big(BigInt::from(*a) * b),
            (Coefficient::Big(a), _) => Coefficient::Big(a * b),
        };
    }

    pub(crate) fn into_scalar(self, field: Field) -> Scalar {
        match self {
            Coefficient::Small(1) => field.one(),
            Coefficient::Small(a) => field.from_bigint(&BigInt::from(a)),
            Coefficient::Big(b) => field.from_bigint(&b),
        }
    }
}
