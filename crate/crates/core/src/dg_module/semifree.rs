use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::window::Truncation;
use crate::base_ring::{Scalar, SparseVec};
use crate::dg_algebra::{AlgebraElement, Monomial, Tower};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    pub weight: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i64, weight: i64) -> Generator {
        Generator {
            name: name.into(),
            degree,
            weight,
        }
    }
}

/// `Σ e_α · b_α`: coefficients from the tower act on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    tower: Arc<Tower>,
    coeffs: BTreeMap<usize, AlgebraElement>,
}

impl ModuleElement {
    pub fn zero(tower: &Arc<Tower>) -> ModuleElement {
        ModuleElement {
            tower: tower.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn generator(tower: &Arc<Tower>, index: usize) -> ModuleElement {
        ModuleElement::term(tower, index, AlgebraElement::one(tower))
    }

    /// `e_index · b`.
    pub fn term(tower: &Arc<Tower>, index: usize, b: AlgebraElement) -> ModuleElement {
        let mut e = ModuleElement::zero(tower);
        e.add_term(index, &b);
        e
    }

    pub fn add_term(&mut self, index: usize, b: &AlgebraElement) {
        if b.is_zero() {
            return;
        }
        let new = match self.coeffs.get(&index) {
            Some(old) => old + b,
            None => b.clone(),
        };
        if new.is_zero() {
            self.coeffs.remove(&index);
        } else {
            self.coeffs.insert(index, new);
        }
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, AlgebraElement> {
        &self.coeffs
    }

    pub fn coeff(&self, index: usize) -> AlgebraElement {
        self.coeffs
            .get(&index)
            .cloned()
            .unwrap_or_else(|| AlgebraElement::zero(&self.tower))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &ModuleElement) -> ModuleElement {
        let mut out = self.clone();
        for (i, b) in &other.coeffs {
            out.add_term(*i, b);
        }
        out
    }

    pub fn sub(&self, other: &ModuleElement) -> ModuleElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ModuleElement {
        self.scale(&-self.tower.field().one())
    }

    pub fn scale(&self, c: &Scalar) -> ModuleElement {
        let mut out = ModuleElement::zero(&self.tower);
        for (i, b) in &self.coeffs {
            out.add_term(*i, &b.scale(c));
        }
        out
    }

    /// `(Σ e_α b_α) · b = Σ e_α (b_α b)`.
    pub fn mul_right(&self, b: &AlgebraElement) -> ModuleElement {
        let mut out = ModuleElement::zero(&self.tower);
        for (i, c) in &self.coeffs {
            out.add_term(*i, &(c * b));
        }
        out
    }

    /// Reindexes generators through `f`.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> ModuleElement {
        let mut out = ModuleElement::zero(&self.tower);
        for (i, b) in &self.coeffs {
            out.add_term(f(*i), b);
        }
        out
    }
}

/// Field basis of one bidegree of a module: pairs (generator, tower monomial).
#[derive(Clone, Debug, Default)]
pub struct Slice {
    pub entries: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl Slice {
    fn new(entries: Vec<(usize, Monomial)>) -> Slice {
        let index = entries
            .iter()
            .enumerate()
            .map(|(k, e)| (e.clone(), k))
            .collect();
        Slice { entries, index }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, gen: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(gen, m.clone())).copied()
    }

    /// Coordinates of `e`; panics if `e` has a component outside this slice.
    pub fn coords(&self, e: &ModuleElement) -> SparseVec {
        let mut v = SparseVec::new();
        for (g, b) in e.coeffs() {
            for (m, c) in b.terms() {
                let k = self
                    .position(*g, m)
                    .expect("module element outside the requested bidegree");
                v.insert(k, c.clone());
            }
        }
        v
    }

    pub fn element(&self, tower: &Arc<Tower>, coords: &[Scalar]) -> ModuleElement {
        let mut out = ModuleElement::zero(tower);
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                let (g, m) = &self.entries[k];
                out.add_term(*g, &AlgebraElement::monomial(tower, m.clone(), c.clone()));
            }
        }
        out
    }
}

/// A finitely generated semifree DG module over a tower, with a strictly
/// triangular differential `∂e_β = Σ_{α<β} e_α b_{αβ}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SemifreeModule {
    tower: Arc<Tower>,
    gens: Vec<Generator>,
    diff: Vec<ModuleElement>,
    truncation: Option<Truncation>,
    symmetric: bool,
}

impl SemifreeModule {
    /// Validates order, bidegrees and `∂² = 0`.
    pub fn new(
        tower: &Arc<Tower>,
        gens: Vec<Generator>,
        diff: Vec<ModuleElement>,
    ) -> Result<SemifreeModule> {
        if gens.len() != diff.len() {
            return Err(Error::Precondition(format!(
                "{} generators but {} differentials",
                gens.len(),
                diff.len()
            )));
        }
        for (i, g) in gens.iter().enumerate() {
            if gens[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Precondition(format!("duplicate generator {}", g.name)));
            }
        }
        let m = SemifreeModule {
            tower: tower.clone(),
            gens,
            diff,
            truncation: None,
            symmetric: false,
        };
        for (beta, d) in m.diff.iter().enumerate() {
            if !Tower::same(d.tower(), tower) {
                return Err(Error::TowerMismatch);
            }
            let gb = &m.gens[beta];
            for (alpha, b) in d.coeffs() {
                if *alpha >= beta {
                    let name = m.gens.get(*alpha).map_or("?", |g| g.name.as_str());
                    return Err(Error::NotTriangular(format!(
                        "∂{} involves {name}, which is not an earlier basis element",
                        gb.name
                    )));
                }
                let ga = &m.gens[*alpha];
                let want = (gb.degree - ga.degree - 1, gb.weight - ga.weight);
                for mono in b.terms().keys() {
                    if tower.bidegree(mono) != want {
                        return Err(Error::BidegreeMismatch(format!(
                            "coefficient of {} in ∂{} must have bidegree {want:?}, found {}",
                            ga.name, gb.name, b
                        )));
                    }
                }
            }
        }
        for (beta, d) in m.diff.iter().enumerate() {
            let dd = m.differential(d);
            if !dd.is_zero() {
                return Err(Error::NonZeroSquare(format!(
                    "∂²({}) = {}",
                    m.gens[beta].name,
                    m.format_element(&dd)
                )));
            }
        }
        Ok(m)
    }

    /// The rank-one free module `B`.
    pub fn free(tower: &Arc<Tower>, name: &str) -> SemifreeModule {
        SemifreeModule::new(
            tower,
            vec![Generator::new(name, 0, 0)],
            vec![ModuleElement::zero(tower)],
        )
        .expect("a free module is semifree")
    }

    pub(crate) fn with_truncation(mut self, t: Option<Truncation>) -> SemifreeModule {
        self.truncation = t;
        self
    }

    pub(crate) fn with_symmetric_action(mut self) -> SemifreeModule {
        self.symmetric = true;
        self
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// `∂e_β`.
    pub fn diff_of(&self, beta: usize) -> &ModuleElement {
        &self.diff[beta]
    }

    /// Bidegree bounds within which this (possibly truncated) module is exact.
    pub fn truncation(&self) -> Option<Truncation> {
        self.truncation
    }

    /// Whether left and right multiplication agree up to the Koszul sign.
    pub fn has_symmetric_action(&self) -> bool {
        self.symmetric
    }

    pub fn generator(&self, i: usize) -> ModuleElement {
        ModuleElement::generator(&self.tower, i)
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.gens.iter().map(|g| g.degree).min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.gens.iter().map(|g| g.degree).max()
    }

    pub fn min_weight(&self) -> Option<i64> {
        self.gens.iter().map(|g| g.weight).min()
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.gens.iter().map(|g| g.weight).max()
    }

    /// Sorted distinct bidegrees of the terms of `e`.
    pub fn bidegrees(&self, e: &ModuleElement) -> Vec<(i64, i64)> {
        let mut out: Vec<(i64, i64)> = e
            .coeffs()
            .iter()
            .flat_map(|(g, b)| {
                let gen = &self.gens[*g];
                b.terms().keys().map(move |m| {
                    let (h, w) = self.tower.bidegree(m);
                    (h + gen.degree, w + gen.weight)
                })
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `∂(Σ e_α b_α) = Σ ∂(e_α) b_α + (−1)^{|e_α|} e_α d(b_α)`.
    pub fn differential(&self, e: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero(&self.tower);
        for (alpha, b) in e.coeffs() {
            out = out.add(&self.diff[*alpha].mul_right(b));
            let db = b.differential();
            let db = if self.gens[*alpha].degree % 2 == 0 { db } else { -&db };
            out.add_term(*alpha, &db);
        }
        out
    }

    /// Field basis in bidegree `(h, w)`.
    pub fn slice(&self, h: i64, w: i64) -> Slice {
        let mut entries = Vec::new();
        for (i, g) in self.gens.iter().enumerate() {
            for m in self.tower.monomials(h - g.degree, w - g.weight).iter() {
                entries.push((i, m.clone()));
            }
        }
        Slice::new(entries)
    }

    pub fn dim(&self, h: i64, w: i64) -> usize {
        self.gens
            .iter()
            .map(|g| self.tower.monomials(h - g.degree, w - g.weight).len())
            .sum()
    }

    /// `Σ^i N`: degrees raised by `i`, differential multiplied by `(−1)^i`.
    pub fn shift(&self, i: i64) -> SemifreeModule {
        let gens = self
            .gens
            .iter()
            .map(|g| Generator::new(g.name.clone(), g.degree + i, g.weight))
            .collect();
        let diff = self
            .diff
            .iter()
            .map(|d| if i % 2 == 0 { d.clone() } else { d.neg() })
            .collect();
        SemifreeModule {
            tower: self.tower.clone(),
            gens,
            diff,
            truncation: self.truncation.map(|t| Truncation {
                h_max: t.h_max + i,
                w_max: t.w_max,
            }),
            symmetric: self.symmetric,
        }
    }

    /// `N ⊕ L` with `N`'s basis first; clashing names from `L` get a prime.
    pub fn direct_sum(&self, other: &SemifreeModule) -> Result<SemifreeModule> {
        if !Tower::same(&self.tower, &other.tower) {
            return Err(Error::TowerMismatch);
        }
        let r = self.rank();
        let mut gens = self.gens.clone();
        for g in &other.gens {
            let mut name = g.name.clone();
            while gens.iter().any(|h| h.name == name) {
                name.push('\'');
            }
            gens.push(Generator::new(name, g.degree, g.weight));
        }
        let mut diff = self.diff.clone();
        diff.extend(other.diff.iter().map(|d| d.map_indices(|i| i + r)));
        Ok(SemifreeModule {
            tower: self.tower.clone(),
            gens,
            diff,
            truncation: Truncation::meet(self.truncation, other.truncation),
            symmetric: self.symmetric && other.symmetric,
        })
    }

    /// `e·X + f·(x - y)`-style rendering.
    pub fn format_element(&self, e: &ModuleElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (g, b)) in e.coeffs().iter().enumerate() {
            let name = &self.gens[*g].name;
            let (neg, body) = if b.terms().len() == 1 {
                let (m, c) = b.terms().iter().next().unwrap();
                let neg = c.is_negative();
                let c = if neg { -c } else { c.clone() };
                let single = AlgebraElement::monomial(&self.tower, m.clone(), c);
                if single == AlgebraElement::one(&self.tower) {
                    (neg, name.clone())
                } else {
                    (neg, format!("{name}·{single}"))
                }
            } else {
                (false, format!("{name}·({b})"))
            };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}
