use std::sync::Arc;

use super::semifree::{ModuleElement, SemifreeModule};
use crate::dg_algebra::Tower;
use crate::error::{Error, Result};

/// A right-linear map `f(e_α b) = f(e_α) b` of bidegree `(degree, weight)`,
/// given by the images of the source basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    source: Arc<SemifreeModule>,
    target: Arc<SemifreeModule>,
    degree: i64,
    weight: i64,
    images: Vec<ModuleElement>,
}

impl ChainMap {
    /// Checks image count and bidegrees; the chain condition is checked separately.
    pub fn new(
        source: Arc<SemifreeModule>,
        target: Arc<SemifreeModule>,
        degree: i64,
        weight: i64,
        images: Vec<ModuleElement>,
    ) -> Result<ChainMap> {
        if !Tower::same(source.tower(), target.tower()) {
            return Err(Error::TowerMismatch);
        }
        if images.len() != source.rank() {
            return Err(Error::Precondition(format!(
                "{} images for {} basis elements",
                images.len(),
                source.rank()
            )));
        }
        for (g, img) in source.gens().iter().zip(&images) {
            let want = (g.degree + degree, g.weight + weight);
            if target.bidegrees(img).iter().any(|b| *b != want) {
                return Err(Error::BidegreeMismatch(format!(
                    "image of {} must have bidegree {want:?}: {}",
                    g.name,
                    target.format_element(img)
                )));
            }
        }
        Ok(ChainMap {
            source,
            target,
            degree,
            weight,
            images,
        })
    }

    pub fn identity(m: &Arc<SemifreeModule>) -> ChainMap {
        let images = (0..m.rank()).map(|i| m.generator(i)).collect();
        ChainMap::new(m.clone(), m.clone(), 0, 0, images).expect("identity is well formed")
    }

    pub fn zero(source: &Arc<SemifreeModule>, target: &Arc<SemifreeModule>, degree: i64, weight: i64) -> ChainMap {
        let images = vec![ModuleElement::zero(source.tower()); source.rank()];
        ChainMap::new(source.clone(), target.clone(), degree, weight, images)
            .expect("zero map is well formed")
    }

    pub fn source(&self) -> &Arc<SemifreeModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SemifreeModule> {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn images(&self) -> &[ModuleElement] {
        &self.images
    }

    pub fn apply(&self, e: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero(self.source.tower());
        for (alpha, b) in e.coeffs() {
            out = out.add(&self.images[*alpha].mul_right(b));
        }
        out
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        if *first.target != *self.source {
            return Err(Error::ModuleMismatch);
        }
        let images = first.images.iter().map(|e| self.apply(e)).collect();
        ChainMap::new(
            first.source.clone(),
            self.target.clone(),
            self.degree + first.degree,
            self.weight + first.weight,
            images,
        )
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        if *self.source != *other.source
            || *self.target != *other.target
            || self.degree != other.degree
            || self.weight != other.weight
        {
            return Err(Error::ModuleMismatch);
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.add(b))
            .collect();
        ChainMap::new(self.source.clone(), self.target.clone(), self.degree, self.weight, images)
    }

    pub fn scale(&self, c: &crate::base_ring::Scalar) -> ChainMap {
        ChainMap {
            images: self.images.iter().map(|e| e.scale(c)).collect(),
            ..self.clone()
        }
    }

    /// `D(f) = ∂f − (−1)^{|f|} f∂`, evaluated on the source basis.
    pub fn hom_differential(&self) -> ChainMap {
        let sign_flip = self.degree % 2 != 0;
        let images = (0..self.source.rank())
            .map(|a| {
                let lhs = self.target.differential(&self.images[a]);
                let rhs = self.apply(self.source.diff_of(a));
                if sign_flip {
                    lhs.add(&rhs)
                } else {
                    lhs.sub(&rhs)
                }
            })
            .collect();
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree - 1,
            weight: self.weight,
            images,
        }
    }

    /// Checks `∂f = (−1)^{|f|} f∂` on every basis element.
    pub fn check_chain_map(&self) -> Result<()> {
        let d = self.hom_differential();
        for (a, img) in d.images.iter().enumerate() {
            if !img.is_zero() {
                return Err(Error::NotChainMap(format!(
                    "(∂f ∓ f∂)({}) = {}",
                    self.source.gens()[a].name,
                    self.target.format_element(img)
                )));
            }
        }
        Ok(())
    }

    pub fn is_chain_map(&self) -> bool {
        self.check_chain_map().is_ok()
    }

    /// Rows `name ↦ image` for reports.
    pub fn table(&self) -> Vec<(String, String)> {
        self.source
            .gens()
            .iter()
            .zip(&self.images)
            .map(|(g, img)| (g.name.clone(), self.target.format_element(img)))
            .collect()
    }
}
