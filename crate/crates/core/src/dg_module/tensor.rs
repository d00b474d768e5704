use super::semifree::{Generator, ModuleElement, SemifreeModule};
use super::window::{BidegreeWindow, Truncation};
use crate::dg_algebra::Tower;
use crate::error::{Error, Result};

/// `N ⊗_B Q` for a module `Q` whose left and right actions agree up to the
/// Koszul sign (the filtration quotients `J^(ℓ)/J^(ℓ+1)`).
///
/// Basis `e_α ⊗ q_j` inside the window, with
/// `∂(e_α⊗q_j) = Σ_β (e_β⊗q_j)·(−1)^{|b_βα||q_j|} b_βα + (−1)^{|e_α|} (e_α ⊗ ∂q_j)`.
pub fn tensor_bimodule(
    n: &SemifreeModule,
    q: &SemifreeModule,
    window: &BidegreeWindow,
) -> Result<SemifreeModule> {
    if !Tower::same(n.tower(), q.tower()) {
        return Err(Error::TowerMismatch);
    }
    if !q.has_symmetric_action() {
        return Err(Error::Precondition(
            "the second factor needs a compatible left action (use a filtration quotient)".into(),
        ));
    }
    let tower = n.tower();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (a, ga) in n.gens().iter().enumerate() {
        for (j, gq) in q.gens().iter().enumerate() {
            let (h, w) = (ga.degree + gq.degree, ga.weight + gq.weight);
            if h <= window.h_max && w <= window.w_max {
                if h < window.h_min || w < window.w_min {
                    return Err(Error::WindowTooSmall {
                        window: window.to_string(),
                        reason: format!("{}⊗{} lies below the window", ga.name, gq.name),
                    });
                }
                pairs.push((a, j));
            }
        }
    }
    let position = |a: usize, j: usize| pairs.iter().position(|p| *p == (a, j));
    let mut gens = Vec::with_capacity(pairs.len());
    let mut diff = Vec::with_capacity(pairs.len());
    for &(a, j) in &pairs {
        let (ga, gq) = (&n.gens()[a], &q.gens()[j]);
        gens.push(Generator::new(
            format!("{}⊗{}", ga.name, gq.name),
            ga.degree + gq.degree,
            ga.weight + gq.weight,
        ));
        let mut d = ModuleElement::zero(tower);
        for (beta, b) in n.diff_of(a).coeffs() {
            let k = position(*beta, j).expect("lower basis elements stay in the window");
            let odd = b.degree().unwrap_or(0) * gq.degree % 2 != 0;
            d.add_term(k, &if odd { -b } else { b.clone() });
        }
        for (k, c) in q.diff_of(j).coeffs() {
            let idx = position(a, *k).expect("lower basis elements stay in the window");
            d.add_term(idx, &if ga.degree % 2 != 0 { -c } else { c.clone() });
        }
        diff.push(d);
    }
    // Exact up to the point where either factor was cut off.
    let q_trunc = q.truncation().map(|t| Truncation {
        h_max: t.h_max + n.min_degree().unwrap_or(0),
        w_max: t.w_max + n.min_weight().unwrap_or(0),
    });
    let own = Some(Truncation {
        h_max: window.h_max,
        w_max: window.w_max,
    });
    Ok(SemifreeModule::new(tower, gens, diff)?
        .with_truncation(Truncation::meet(own, Truncation::meet(q_trunc, n.truncation()))))
}
