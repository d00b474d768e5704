//! Tate's construction: adjoin variables degree by degree until homology
//! vanishes inside a weight bound.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::base_ring::{row_reduce, BasePoly, BaseRing, SpanTracker, SparseMatrix, SparseVec};
use crate::dg_algebra::{AlgebraElement, Flavor, Monomial, Tower};
use crate::error::{Error, Result};


/// `dim H_hdeg(B)` at each weight `0..=weight_bound`, with chosen representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyTable {
    pub hdeg: i64,
    pub weight_bound: i64,
    pub dims: BTreeMap<i64, usize>,
    pub representatives: BTreeMap<i64, Vec<AlgebraElement>>,
}

impl HomologyTable {
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// `(weight, dimension)` rows for reports.
    pub fn rows(&self) -> Vec<(i64, usize)> {
        self.dims.iter().map(|(w, d)| (*w, *d)).collect()
    }
}

/// Matrix of `d: B_{h,w} → B_{h−1,w}` with columns indexed by `monomials(h, w)`.
fn differential_matrix(tower: &Arc<Tower>, h: i64, w: i64) -> SparseMatrix {
    let src = tower.monomials(h, w);
    let tgt = tower.monomials(h - 1, w);
    let index: HashMap<&Monomial, usize> = tgt.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let field = tower.field();
    let cols: Vec<SparseVec> = src
        .iter()
        .map(|m| {
            let d = AlgebraElement::monomial(tower, m.clone(), field.one()).differential();
            d.terms().iter().map(|(n, c)| (index[n], c.clone())).collect()
        })
        .collect();
    SparseMatrix::from_columns(field, tgt.len(), &cols)
}

fn homology_at(tower: &Arc<Tower>, h: i64, w: i64) -> Vec<AlgebraElement> {
    let basis = tower.monomials(h, w);
    if basis.is_empty() {
        return Vec::new();
    }
    let field = tower.field();
    let cycles = row_reduce(&differential_matrix(tower, h, w), None).nullspace(field);
    let boundaries = differential_matrix(tower, h + 1, w);
    let mut span = SpanTracker::new(field);
    // Boundaries are the columns of the next differential.
    for col in boundaries.transpose().rows() {
        span.insert(col);
    }
    let mut reps = Vec::new();
    for z in cycles {
        let v: SparseVec = z
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect();
        if span.insert(&v) {
            let terms = v.into_iter().map(|(k, c)| (basis[k].clone(), c));
            reps.push(AlgebraElement::from_terms(tower, terms));
        }
    }
    reps
}

/// Homology in degree `hdeg` at every weight up to the bound.
///
/// Representatives come from the nullspace basis attached to the free columns
/// of the reduced differential, kept when independent of the boundaries and of
/// the earlier choices.
pub fn homology_dims(tower: &Arc<Tower>, hdeg: i64, weight_bound: i64) -> HomologyTable {
    let mut dims = BTreeMap::new();
    let mut representatives = BTreeMap::new();
    for w in 0..=weight_bound {
        let reps = homology_at(tower, hdeg, w);
        dims.insert(w, reps.len());
        representatives.insert(w, reps);
    }
    HomologyTable {
        hdeg,
        weight_bound,
        dims,
        representatives,
    }
}

fn letter(degree: u32) -> String {
    match degree {
        1 => "X".into(),
        2 => "Y".into(),
        3 => "Z".into(),
        4 => "W".into(),
        d => format!("T{d}_"),
    }
}

fn fresh_names(tower: &Tower, degree: u32, count: usize) -> Vec<String> {
    let stem = letter(degree);
    let used = |n: &str| tower.var_index(n).is_some() || tower.base().index_of(n).is_some();
    (1..=count)
        .map(|k| {
            let mut name = if count == 1 { stem.clone() } else { format!("{stem}{k}") };
            while used(&name) {
                name.push('\'');
            }
            name
        })
        .collect()
}

/// Kills `H_hdeg` up to the weight bound by adjoining one variable of degree
/// `hdeg + 1` per homology class, weight by weight.
pub fn tate_step(tower: &Arc<Tower>, hdeg: i64, weight_bound: i64) -> Result<Arc<Tower>> {
    if hdeg < 1 {
        return Err(Error::Precondition("tate_step starts at homological degree 1".into()));
    }
    for j in 1..hdeg {
        let h = homology_dims(tower, j, weight_bound);
        if h.total() != 0 {
            return Err(Error::Precondition(format!(
                "H_{j} is not yet zero up to weight {weight_bound} (dimension {})",
                h.total()
            )));
        }
    }
    let degree = u32::try_from(hdeg + 1).map_err(|_| Error::Precondition("degree out of range".into()))?;
    // The number of classes decides the naming scheme, so run once with
    // placeholder names and then again with the final ones.
    let run = |names: &dyn Fn(usize) -> String| -> Result<(Arc<Tower>, Vec<String>)> {
        let mut current = tower.clone();
        let mut used = Vec::new();
        for w in 1..=weight_bound {
            for rep in homology_at(&current, hdeg, w) {
                let wt = u32::try_from(w).expect("positive weight");
                let name = names(used.len());
                current = current.adjoin(&name, degree, wt, &rep)?;
                used.push(name);
            }
        }
        Ok((current, used))
    };
    let (_, placeholders) = run(&|k| format!("__class{k}"))?;
    if placeholders.is_empty() {
        return Ok(tower.with_provenance(format!(
            "H_{hdeg} = 0 up to weight {weight_bound}; nothing adjoined"
        )));
    }
    let names = fresh_names(tower, degree, placeholders.len());
    let (out, names) = run(&|k| names[k].clone())?;
    Ok(out.with_provenance(format!(
        "adjoined {} in degree {degree} to kill H_{hdeg} up to weight {weight_bound}",
        names.join(", ")
    )))
}

/// Tate resolution of `R/I`: degree-one variables for the generators of `I`,
/// then [`tate_step`] for `hdeg = 1..hbound−1`, and a final check that
/// `H_1, …, H_{hbound−1}` vanish up to the weight bound.
pub fn tate_resolution(
    base: &Arc<BaseRing>,
    ideal: &[BasePoly],
    hbound: i64,
    weight_bound: i64,
    flavor: Flavor,
) -> Result<Arc<Tower>> {
    let mut tower = Tower::new(base.clone(), flavor);
    let names = fresh_names(&tower, 1, ideal.len());
    for (name, f) in names.iter().zip(ideal) {
        let target = AlgebraElement::from_base_poly(&tower, f)?;
        let (_, w) = target
            .bidegree()
            .ok_or_else(|| Error::Precondition(format!("ideal generator {f} must be homogeneous and nonzero")))?;
        let w = u32::try_from(w).map_err(|_| Error::Precondition("negative weight".into()))?;
        tower = tower.adjoin(name, 1, w, &target)?;
    }
    for hdeg in 1..hbound {
        tower = tate_step(&tower, hdeg, weight_bound)?;
    }
    for j in 1..hbound {
        let h = homology_dims(&tower, j, weight_bound);
        if h.total() != 0 {
            return Err(Error::Precondition(format!(
                "H_{j} survived the construction up to weight {weight_bound}"
            )));
        }
    }
    Ok(tower.with_provenance(format!(
        "Tate resolution: H_j = 0 for 1 ≤ j ≤ {} up to weight {weight_bound}",
        hbound - 1
    )))
}
