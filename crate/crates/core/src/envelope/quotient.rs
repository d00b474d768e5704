use std::sync::Arc;

use super::element::xi_monomial;
use super::omega::{format_omega, omega_bidegree, omega_level, omega_monomials, to_omega};
use crate::dg_algebra::Tower;
use crate::dg_module::{BidegreeWindow, Generator, ModuleElement, SemifreeModule, Truncation};
use crate::error::{Error, Result};

/// `J^(ℓ)/J^(ℓ+1)` cut down to a window, with the `Ω`-monomial behind each basis element.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    pub level: u32,
    pub window: BidegreeWindow,
    pub module: SemifreeModule,
    pub omegas: Vec<Vec<u32>>,
}

/// Orders `Ω`-monomials so that `ω − e_i + e_j` with `j < i` comes first.
fn reversed_key(omega: &[u32]) -> Vec<u32> {
    omega.iter().rev().copied().collect()
}

/// The DG `B`-module `J^(ℓ)/J^(ℓ+1)` on the `Ω`-monomials of total exponent `ℓ`
/// inside the window. A basis element `ξ^ω` with left coefficient `c` in `B^e`
/// becomes `ξ^ω · (−1)^{|c||ω|} c` in the right module structure.
pub fn quotient_module(tower: &Arc<Tower>, level: u32, window: &BidegreeWindow) -> Result<QuotientModule> {
    let mut omegas = Vec::new();
    for h in window.h_min.max(0)..=window.h_max {
        for w in window.w_min.max(0)..=window.w_max {
            omegas.extend(
                omega_monomials(tower, h, w)
                    .into_iter()
                    .filter(|o| omega_level(o) == level),
            );
        }
    }
    omegas.sort_by_key(|o| reversed_key(o));
    let gens: Vec<Generator> = omegas
        .iter()
        .map(|o| {
            let (h, w) = omega_bidegree(tower, o);
            Generator::new(format_omega(tower, o), h, w)
        })
        .collect();
    let mut diff = Vec::with_capacity(omegas.len());
    for omega in &omegas {
        let coords = to_omega(&xi_monomial(tower, omega).differential());
        let mut d = ModuleElement::zero(tower);
        for (o, c) in coords.coords() {
            let l = omega_level(o);
            assert!(l >= level, "J^(ℓ) is closed under the differential");
            if l > level {
                continue;
            }
            let Some(idx) = omegas.iter().position(|x| x == o) else {
                return Err(Error::WindowTooSmall {
                    window: window.to_string(),
                    reason: format!(
                        "∂{} involves {}, which lies below the window",
                        format_omega(tower, omega),
                        format_omega(tower, o)
                    ),
                });
            };
            let sign = c.degree().unwrap_or(0) * omega_bidegree(tower, o).0 % 2 != 0;
            let c = if sign { -c } else { c.clone() };
            d.add_term(idx, &c);
        }
        diff.push(d);
    }
    let module = SemifreeModule::new(tower, gens, diff)?
        .with_truncation(Some(Truncation {
            h_max: window.h_max,
            w_max: window.w_max,
        }))
        .with_symmetric_action();
    Ok(QuotientModule {
        level,
        window: *window,
        module,
        omegas,
    })
}
