use std::collections::HashMap;
use std::sync::Arc;

use super::chain_map::ChainMap;
use super::semifree::{Generator, ModuleElement, SemifreeModule};
use super::window::{BidegreeWindow, Truncation};
use crate::dg_algebra::{AlgebraElement, Tower};
use crate::envelope::{omega_monomials, relative_monomial, EnvelopeElement};
use crate::error::{Error, Result};

/// `N|_A ⊗_A B` inside a window, together with `π_N(n ⊗ b) = n·b`.
#[derive(Clone, Debug)]
pub struct BaseChange {
    pub window: BidegreeWindow,
    pub module: Arc<SemifreeModule>,
    pub pi: ChainMap,
    /// For each basis element, the generator of `N` and the monomial over `A` it carries.
    pub labels: Vec<(usize, Vec<u32>)>,
}

/// Rewrites `e_β · x` (with `x ∈ B`) in the basis `e_β g ⊗ 1` of the base change.
fn expand_into(
    tower: &Arc<Tower>,
    beta: usize,
    x: &AlgebraElement,
    index: &HashMap<(usize, Vec<u32>), usize>,
    out: &mut ModuleElement,
) -> std::result::Result<(), (usize, Vec<u32>)> {
    let env = EnvelopeElement::tensor(x, &AlgebraElement::one(tower));
    for (m, c) in env.terms() {
        let Some(&k) = index.get(&(beta, m.left.clone())) else {
            return Err((beta, m.left.clone()));
        };
        out.add_term(k, &AlgebraElement::monomial(tower, m.right.clone(), c.clone()));
    }
    Ok(())
}

/// The base change of `N` along `A → B`, restricted to the window.
///
/// Its basis is `e_α g ⊗ 1` for `g` a monomial in the variables of `B` over
/// `A`, ordered by total degree so that the differential stays triangular.
pub fn base_change(n: &Arc<SemifreeModule>, window: &BidegreeWindow) -> Result<BaseChange> {
    let tower = n.tower();
    for g in n.gens() {
        if !window.contains(g.degree, g.weight) {
            return Err(Error::WindowTooSmall {
                window: window.to_string(),
                reason: format!(
                    "basis element {} of bidegree ({}, {}) lies outside",
                    g.name, g.degree, g.weight
                ),
            });
        }
    }
    let mut labels: Vec<(i64, usize, Vec<u32>)> = Vec::new();
    for (alpha, g) in n.gens().iter().enumerate() {
        for h in 0..=window.h_max - g.degree {
            for w in 0..=window.w_max - g.weight {
                for m in omega_monomials(tower, h, w) {
                    labels.push((g.degree + h, alpha, m));
                }
            }
        }
    }
    labels.sort();
    let labels: Vec<(usize, Vec<u32>)> = labels.into_iter().map(|(_, a, m)| (a, m)).collect();
    let index: HashMap<(usize, Vec<u32>), usize> = labels
        .iter()
        .enumerate()
        .map(|(k, l)| (l.clone(), k))
        .collect();

    let mut gens = Vec::with_capacity(labels.len());
    let mut diff = Vec::with_capacity(labels.len());
    let mut pi_images = Vec::with_capacity(labels.len());
    for (alpha, g) in &labels {
        let gen = &n.gens()[*alpha];
        let g_mono = relative_monomial(tower, g);
        let (hg, wg) = tower.bidegree(&g_mono);
        let g_elem = AlgebraElement::monomial(tower, g_mono.clone(), tower.field().one());
        let name = if hg == 0 {
            format!("{}⊗1", gen.name)
        } else {
            format!("{}·{}⊗1", gen.name, tower.format_monomial(&g_mono))
        };
        gens.push(Generator::new(name, gen.degree + hg, gen.weight + wg));
        pi_images.push(ModuleElement::term(tower, *alpha, g_elem.clone()));

        let mut d = ModuleElement::zero(tower);
        let mut missing = None;
        for (beta, b) in n.diff_of(*alpha).coeffs() {
            if let Err(m) = expand_into(tower, *beta, &(b * &g_elem), &index, &mut d) {
                missing = Some(m);
            }
        }
        let dg = g_elem.differential();
        let dg = if gen.degree % 2 == 0 { dg } else { -&dg };
        if let Err(m) = expand_into(tower, *alpha, &dg, &index, &mut d) {
            missing = Some(m);
        }
        if let Some((beta, m)) = missing {
            return Err(Error::WindowTooSmall {
                window: window.to_string(),
                reason: format!(
                    "the differential reaches {}·{} outside the window",
                    n.gens()[beta].name,
                    tower.format_monomial(&relative_monomial(tower, &m))
                ),
            });
        }
        diff.push(d);
    }
    let module = SemifreeModule::new(tower, gens, diff)?.with_truncation(Some(Truncation {
        h_max: window.h_max,
        w_max: window.w_max,
    }));
    let module = Arc::new(module);
    let pi = ChainMap::new(module.clone(), n.clone(), 0, 0, pi_images)?;
    Ok(BaseChange {
        window: *window,
        module,
        pi,
        labels,
    })
}
