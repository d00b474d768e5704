use std::collections::BTreeMap;
use std::sync::Arc;

use crate::base_ring::{Scalar, SparseMatrix, SparseVec};
use crate::dg_module::{BidegreeWindow, ChainMap, ModuleElement, SemifreeModule, Slice};
use crate::dg_algebra::Tower;
use crate::error::{Error, Result};

/// Field basis of `Hom_B(M, L)` in one bidegree: a block of `L` per basis element of `M`.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub degree: i64,
    pub weight: i64,
    /// `(α, slice of L at (|e_α| + degree, wt(e_α) + weight), offset)`.
    pub blocks: Vec<(usize, Slice, usize)>,
    pub dim: usize,
}

impl HomBasis {
    /// Which block and which slice entry a coordinate belongs to.
    pub fn locate(&self, k: usize) -> (usize, usize) {
        let b = self.blocks.partition_point(|(_, _, off)| *off <= k) - 1;
        (b, k - self.blocks[b].2)
    }
}

/// The bigraded complex `Hom_B(M, L)` with `D(φ) = ∂φ − (−1)^{|φ|} φ∂`.
///
/// Each bidegree is finite dimensional because `M` has finitely many basis
/// elements and every slice of `L` is finite.
#[derive(Clone, Debug)]
pub struct HomComplex {
    m: Arc<SemifreeModule>,
    l: Arc<SemifreeModule>,
}

impl HomComplex {
    pub fn new(m: &Arc<SemifreeModule>, l: &Arc<SemifreeModule>) -> Result<HomComplex> {
        if !Tower::same(m.tower(), l.tower()) {
            return Err(Error::TowerMismatch);
        }
        Ok(HomComplex {
            m: m.clone(),
            l: l.clone(),
        })
    }

    pub fn source(&self) -> &Arc<SemifreeModule> {
        &self.m
    }

    pub fn target(&self) -> &Arc<SemifreeModule> {
        &self.l
    }

    pub fn basis(&self, d: i64, w: i64) -> HomBasis {
        let mut blocks = Vec::new();
        let mut offset = 0;
        for (alpha, g) in self.m.gens().iter().enumerate() {
            let slice = self.l.slice(g.degree + d, g.weight + w);
            if slice.is_empty() {
                continue;
            }
            let len = slice.len();
            blocks.push((alpha, slice, offset));
            offset += len;
        }
        HomBasis {
            degree: d,
            weight: w,
            blocks,
            dim: offset,
        }
    }

    pub fn dim(&self, d: i64, w: i64) -> usize {
        self.m
            .gens()
            .iter()
            .map(|g| self.l.dim(g.degree + d, g.weight + w))
            .sum()
    }

    /// The map with the given coordinates in `basis`.
    pub fn map_from_coords(&self, basis: &HomBasis, coords: &[Scalar]) -> ChainMap {
        let tower = self.m.tower();
        let mut images = vec![ModuleElement::zero(tower); self.m.rank()];
        for (alpha, slice, off) in &basis.blocks {
            images[*alpha] = slice.element(tower, &coords[*off..*off + slice.len()]);
        }
        ChainMap::new(self.m.clone(), self.l.clone(), basis.degree, basis.weight, images)
            .expect("basis maps have the advertised bidegree")
    }

    /// Coordinates of a map of bidegree `(basis.degree, basis.weight)`.
    pub fn coords(&self, basis: &HomBasis, f: &ChainMap) -> SparseVec {
        let mut v = SparseVec::new();
        for (alpha, slice, off) in &basis.blocks {
            for (k, c) in slice.coords(&f.images()[*alpha]) {
                v.insert(off + k, c);
            }
        }
        v
    }

    /// Matrix of `D: Hom_{d,w} → Hom_{d−1,w}`, one column per basis map.
    pub fn differential_matrix(&self, d: i64, w: i64) -> SparseMatrix {
        let src = self.basis(d, w);
        let tgt = self.basis(d - 1, w);
        let field = self.m.tower().field();
        let tower = self.m.tower();
        let odd = d % 2 != 0;
        let mut cols = Vec::with_capacity(src.dim);
        for (beta, slice, _) in &src.blocks {
            for (gamma, mono) in &slice.entries {
                let v = ModuleElement::term(
                    tower,
                    *gamma,
                    crate::dg_algebra::AlgebraElement::monomial(tower, mono.clone(), field.one()),
                );
                let mut col = SparseVec::new();
                let mut put = |alpha: usize, e: &ModuleElement| {
                    if e.is_zero() {
                        return;
                    }
                    let (_, tslice, off) = tgt
                        .blocks
                        .iter()
                        .find(|(a, _, _)| *a == alpha)
                        .expect("the differential stays in the next bidegree");
                    for (k, c) in tslice.coords(e) {
                        let slot = col.entry(off + k).or_insert_with(|| field.zero());
                        *slot = &*slot + &c;
                    }
                };
                put(*beta, &self.l.differential(&v));
                for alpha in 0..self.m.rank() {
                    if let Some(b) = self.m.diff_of(alpha).coeffs().get(beta) {
                        let term = v.mul_right(b);
                        put(alpha, &if odd { term } else { term.neg() });
                    }
                }
                col.retain(|_, c| !c.is_zero());
                cols.push(col);
            }
        }
        SparseMatrix::from_columns(field, tgt.dim, &cols)
    }
}

/// `Hom_B(M, L)` restricted to the Hom-bidegrees `(d, w)` of a window.
#[derive(Clone, Debug)]
pub struct HomWindow {
    pub complex: HomComplex,
    pub window: BidegreeWindow,
    pub dims: BTreeMap<(i64, i64), usize>,
    /// Matrices of `D` leaving each bidegree of the window.
    pub differentials: BTreeMap<(i64, i64), SparseMatrix>,
}

pub fn hom_complex_window(
    m: &Arc<SemifreeModule>,
    l: &Arc<SemifreeModule>,
    window: &BidegreeWindow,
) -> Result<HomWindow> {
    let complex = HomComplex::new(m, l)?;
    let mut dims = BTreeMap::new();
    let mut differentials = BTreeMap::new();
    for (d, w) in window.bidegrees() {
        dims.insert((d, w), complex.dim(d, w));
        differentials.insert((d, w), complex.differential_matrix(d, w));
    }
    Ok(HomWindow {
        complex,
        window: *window,
        dims,
        differentials,
    })
}
