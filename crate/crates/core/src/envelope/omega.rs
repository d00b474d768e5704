use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::element::{relative_monomial, split_monomial, xi_monomial, EnvMono, EnvelopeElement};
use crate::base_ring::Scalar;
use crate::dg_algebra::{AlgebraElement, Flavor, Tower};

/// Coordinates of an envelope element over the diagonal basis:
/// `e = Σ_ω (b_ω^o ⊗ 1) · ξ^ω` with `b_ω ∈ B`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaCoordinates {
    tower: Arc<Tower>,
    coords: BTreeMap<Vec<u32>, AlgebraElement>,
}

/// Total `ξ`-exponent of an `Ω`-monomial.
pub fn omega_level(omega: &[u32]) -> u32 {
    omega.iter().sum()
}

impl OmegaCoordinates {
    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn coords(&self) -> &BTreeMap<Vec<u32>, AlgebraElement> {
        &self.coords
    }

    pub fn coordinate(&self, omega: &[u32]) -> AlgebraElement {
        self.coords
            .get(omega)
            .cloned()
            .unwrap_or_else(|| AlgebraElement::zero(&self.tower))
    }

    /// Rebuilds the envelope element from its coordinates.
    pub fn expand(&self) -> EnvelopeElement {
        let mut out = EnvelopeElement::zero(&self.tower);
        for (omega, b) in &self.coords {
            out = out.add(&EnvelopeElement::left(b).mul(&xi_monomial(&self.tower, omega)));
        }
        out
    }

    /// Smallest total exponent with a nonzero coordinate; `None` for zero.
    pub fn level(&self) -> Option<u32> {
        self.coords.keys().map(|o| omega_level(o)).min()
    }

    fn add(&mut self, omega: Vec<u32>, b: &AlgebraElement) {
        let new = match self.coords.get(&omega) {
            Some(old) => old + b,
            None => b.clone(),
        };
        if new.is_zero() {
            self.coords.remove(&omega);
        } else {
            self.coords.insert(omega, new);
        }
    }
}

/// `xi(X)^(2)·xi(Y)`-style name of an `Ω`-monomial.
pub fn format_omega(tower: &Tower, omega: &[u32]) -> String {
    let s = tower.sub_len();
    let parts: Vec<String> = omega
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(k, e)| {
            let name = &tower.var(s + k).name;
            match (*e, tower.flavor()) {
                (1, _) => format!("xi({name})"),
                (e, Flavor::Divided) => format!("xi({name})^({e})"),
                (e, Flavor::Ordinary) => format!("xi({name})^{e}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("·")
    }
}

impl fmt::Display for OmegaCoordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = &self.tower;
        let mut terms: Vec<(String, Scalar)> = Vec::new();
        for (omega, b) in self.coords.iter() {
            let xi = format_omega(t, omega);
            for (m, c) in b.terms().iter().rev() {
                let mono = t.format_monomial(m);
                let name = match (mono.is_empty(), omega_level(omega) == 0) {
                    (true, true) => String::new(),
                    (true, false) => xi.clone(),
                    (false, true) => format!("o({mono})"),
                    (false, false) => format!("o({mono})·{xi}"),
                };
                terms.push((name, c.clone()));
            }
        }
        crate::format::write_terms(f, &terms)
    }
}

/// Coordinates over `Mon(Ω)`, by triangular substitution: the terms whose
/// right factor has the most variables over `A` are rewritten first, using
/// `(b^o⊗1)·ξ^γ = (−1)^{|γ|} b^o⊗γ + (terms with fewer such variables on the right)`.
pub fn to_omega(e: &EnvelopeElement) -> OmegaCoordinates {
    let t = e.tower().clone();
    let mut out = OmegaCoordinates {
        tower: t.clone(),
        coords: BTreeMap::new(),
    };
    let mut rest = e.clone();
    let right_level = |m: &EnvMono| -> u32 { omega_level(&split_monomial(&t, &m.right).1) };
    while !rest.is_zero() {
        let top = rest.terms().keys().map(right_level).max().unwrap();
        let mut contrib: BTreeMap<Vec<u32>, AlgebraElement> = BTreeMap::new();
        for (m, c) in rest.terms() {
            if right_level(m) != top {
                continue;
            }
            let (a, gamma) = split_monomial(&t, &m.right);
            let g = AlgebraElement::monomial(&t, relative_monomial(&t, &m.left), c.clone());
            let b = &g * &AlgebraElement::monomial(&t, a, t.field().one());
            let entry = contrib
                .entry(gamma)
                .or_insert_with(|| AlgebraElement::zero(&t));
            *entry = &*entry + &b;
        }
        for (gamma, b) in contrib {
            let b = if top % 2 == 1 { -&b } else { b };
            let term = EnvelopeElement::left(&b).mul(&xi_monomial(&t, &gamma));
            rest = rest.sub(&term);
            out.add(gamma, &b);
        }
        assert!(
            rest.terms().keys().all(|m| right_level(m) < top),
            "diagonal substitution failed to lower the level"
        );
    }
    out
}

/// Largest `ℓ` with `e ∈ J^(ℓ)`; `None` stands for `e = 0`, which lies in every power.
pub fn filtration_level(e: &EnvelopeElement) -> Option<u32> {
    to_omega(e).level()
}

/// `Ω`-monomials of bidegree exactly `(h, w)`, sorted.
pub fn omega_monomials(tower: &Tower, h: i64, w: i64) -> Vec<Vec<u32>> {
    let s = tower.sub_len();
    tower
        .gamma_vectors(s..tower.nvars(), h, w)
        .into_iter()
        .filter(|g| tower.gamma_weight(&relative_monomial(tower, g).gamma) == w)
        .collect()
}

/// Bidegree of `ξ^ω`.
pub fn omega_bidegree(tower: &Tower, omega: &[u32]) -> (i64, i64) {
    tower.bidegree(&relative_monomial(tower, omega))
}

/// The `(left, right)` monomial basis of `B^e` in bidegree `(h, w)`.
pub fn envelope_basis(tower: &Tower, h: i64, w: i64) -> Vec<EnvMono> {
    let mut out = Vec::new();
    for hg in 0..=h {
        for wg in 0..=w {
            for g in omega_monomials(tower, hg, wg) {
                for r in tower.monomials(h - hg, w - wg).iter() {
                    out.push(EnvMono {
                        left: g.clone(),
                        right: r.clone(),
                    });
                }
            }
        }
    }
    out.sort();
    out
}
