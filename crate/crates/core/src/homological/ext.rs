use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;
use std::sync::Arc;

use super::hom::HomComplex;
use crate::base_ring::{rank, solve_linear, LinearSolution, LinearSystem, Scalar};
use crate::dg_module::{BidegreeWindow, ChainMap, SemifreeModule};
use crate::error::{Error, Result};

/// `dim Ext^i_B(M, L)` per internal weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTable {
    pub window: BidegreeWindow,
    pub i_min: i64,
    pub i_max: i64,
    pub entries: BTreeMap<(i64, i64), usize>,
}

impl ExtTable {
    pub fn get(&self, i: i64, w: i64) -> Option<usize> {
        self.entries.get(&(i, w)).copied()
    }

    /// `Σ_w dim Ext^i` over the window's weights.
    pub fn total(&self, i: i64) -> usize {
        self.entries
            .iter()
            .filter(|((j, _), _)| *j == i)
            .map(|(_, d)| d)
            .sum()
    }

    pub fn weights(&self) -> RangeInclusive<i64> {
        self.window.w_min..=self.window.w_max
    }

    /// One row per `i`, one column per weight.
    pub fn rows(&self) -> Vec<(i64, Vec<usize>)> {
        (self.i_min..=self.i_max)
            .map(|i| (i, self.weights().map(|w| self.entries[&(i, w)]).collect()))
            .collect()
    }

    /// Nonzero entries as `(i, w, dim)`.
    pub fn nonzero(&self) -> Vec<(i64, i64, usize)> {
        self.entries
            .iter()
            .filter(|(_, d)| **d > 0)
            .map(|((i, w), d)| (*i, *w, *d))
            .collect()
    }
}

/// A window that covers `Ext^i` for `i ∈ i_range`: the homological range
/// reaches every bidegree where maps out of `M` land, the weights span the
/// differences between the basis weights of `L` and of `M`.
pub fn natural_window(m: &SemifreeModule, l: &SemifreeModule, i_range: RangeInclusive<i64>) -> BidegreeWindow {
    let (i_min, i_max) = (*i_range.start(), *i_range.end());
    let h_min = m.min_degree().unwrap_or(0) - i_max;
    let h_max = m.max_degree().unwrap_or(0) - i_min + 1;
    let w_min = l.min_weight().unwrap_or(0) - m.max_weight().unwrap_or(0);
    let mut w_max = l.max_weight().unwrap_or(0) - m.min_weight().unwrap_or(0);
    if let Some(t) = l.truncation() {
        w_max = w_max.min(t.w_max - m.max_weight().unwrap_or(0));
    }
    BidegreeWindow {
        h_min,
        h_max,
        w_min,
        w_max: w_max.max(w_min),
    }
}

/// Refuses windows where a map of Hom-degree `d` would leave the window or
/// run past the point where a truncated `L` stops being exact.
fn check_reach(m: &SemifreeModule, l: &SemifreeModule, degrees: &[i64], window: &BidegreeWindow) -> Result<()> {
    for g in m.gens() {
        for d in degrees {
            let h = g.degree + d;
            if h < window.h_min || h > window.h_max {
                return Err(Error::WindowTooSmall {
                    window: window.to_string(),
                    reason: format!("maps of degree {d} send {} to degree {h}", g.name),
                });
            }
            if let Some(t) = l.truncation() {
                if !t.covers(h, g.weight + window.w_max) {
                    return Err(Error::WindowTooSmall {
                        window: window.to_string(),
                        reason: format!(
                            "the target is only known up to ({}, {}), maps of degree {d} send {} to ({h}, {})",
                            t.h_max,
                            t.w_max,
                            g.name,
                            g.weight + window.w_max
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}

/// `dim Ext^i = dim ker D_{−i} − rank D_{−i+1}` for each `i` and each weight of the window.
pub fn ext_dims(
    m: &Arc<SemifreeModule>,
    l: &Arc<SemifreeModule>,
    i_range: RangeInclusive<i64>,
    window: &BidegreeWindow,
) -> Result<ExtTable> {
    let hom = HomComplex::new(m, l)?;
    let (i_min, i_max) = (*i_range.start(), *i_range.end());
    let degrees: Vec<i64> = (i_min..=i_max).flat_map(|i| [-i, -i + 1]).collect();
    check_reach(m, l, &degrees, window)?;
    let mut ranks: HashMap<(i64, i64), usize> = HashMap::new();
    let mut rank_at = |d: i64, w: i64| *ranks.entry((d, w)).or_insert_with(|| rank(&hom.differential_matrix(d, w)));
    let mut entries = BTreeMap::new();
    for i in i_min..=i_max {
        for w in window.w_min..=window.w_max {
            let dim = hom.dim(-i, w);
            let out = rank_at(-i, w);
            let inc = rank_at(-i + 1, w);
            entries.insert((i, w), dim - out - inc);
        }
    }
    Ok(ExtTable {
        window: *window,
        i_min,
        i_max,
        entries,
    })
}

/// Outcome of solving `D h = f`.
#[derive(Clone, Debug)]
pub enum NullHomotopy {
    Homotopy(ChainMap),
    /// A functional vanishing on boundaries that is nonzero on `f`.
    NotNullHomotopic { witness: Vec<Scalar>, value: Scalar },
}

/// Looks for `h` of degree `|f| + 1` with `∂h − (−1)^{|h|} h∂ = f`.
pub fn null_homotopy(f: &ChainMap) -> Result<NullHomotopy> {
    f.check_chain_map()?;
    let (m, l) = (f.source(), f.target());
    let d = f.degree();
    let w = f.weight();
    if let Some(t) = l.truncation() {
        for g in m.gens() {
            if !t.covers(g.degree + d + 1, g.weight + w) {
                return Err(Error::WindowTooSmall {
                    window: format!("{}:{}", t.h_max, t.w_max),
                    reason: format!("a homotopy would send {} outside the truncated target", g.name),
                });
            }
        }
    }
    let hom = HomComplex::new(m, l)?;
    let target = hom.basis(d, w);
    let field = m.tower().field();
    let mut rhs = vec![field.zero(); target.dim];
    for (k, c) in hom.coords(&target, f) {
        rhs[k] = c;
    }
    let system = LinearSystem::new(hom.differential_matrix(d + 1, w), rhs);
    Ok(match solve_linear(&system) {
        LinearSolution::Solved { solution, .. } => {
            NullHomotopy::Homotopy(hom.map_from_coords(&hom.basis(d + 1, w), &solution))
        }
        LinearSolution::Infeasible { witness, value } => NullHomotopy::NotNullHomotopic { witness, value },
    })
}

/// `N ⊗_B J^(ℓ)/J^(ℓ+1)`, exact in homological degrees `≤ h_max` and weights `≤ w_max`.
pub fn tensor_filtration_quotient(
    n: &Arc<SemifreeModule>,
    level: u32,
    h_max: i64,
    w_max: i64,
) -> Result<SemifreeModule> {
    let (h0, w0) = (n.min_degree().unwrap_or(0), n.min_weight().unwrap_or(0));
    let q_window = BidegreeWindow::new(0, (h_max - h0).max(0), (w_max - w0).max(0))?;
    let q = crate::envelope::quotient_module(n.tower(), level, &q_window)?;
    let window = BidegreeWindow::with_weights(h0, h_max.max(h0), w0, w_max.max(w0))?;
    crate::dg_module::tensor_bimodule(n, &q.module, &window)
}
