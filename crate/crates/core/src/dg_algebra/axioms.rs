use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::element::AlgebraElement;
use super::tower::{Flavor, Monomial, Tower};
use crate::base_ring::{binomial, factorial};
use crate::error::Error;

#[derive(Clone, Debug)]
pub struct AxiomConfig {
    /// Monomials of weight up to this bound are checked exhaustively.
    pub weight_bound: i64,
    /// Number of random homogeneous samples per sampled law.
    pub samples: usize,
    pub seed: u64,
    /// Largest divided-power index exercised.
    pub max_power: u32,
}

impl Default for AxiomConfig {
    fn default() -> AxiomConfig {
        AxiomConfig {
            weight_bound: 4,
            samples: 200,
            seed: 0,
            max_power: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub law: String,
    pub checked: usize,
    pub failures: usize,
    /// Instances that could not be evaluated (for example `m!` vanishing mod p).
    pub skipped: usize,
    pub witness: Option<String>,
}

impl LawResult {
    fn new(law: &str) -> LawResult {
        LawResult {
            law: law.to_string(),
            checked: 0,
            failures: 0,
            skipped: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub seed: u64,
    pub weight_bound: i64,
    pub samples: usize,
    pub monomials: usize,
    pub laws: Vec<LawResult>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(LawResult::passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.law == name)
    }
}

/// Every basis monomial of weight at most `w_max`.
pub fn window_monomials(tower: &Tower, w_max: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    for w in 0..=w_max {
        for h in 0..=tower.max_degree_at_weight(w) {
            out.extend(tower.monomials(h, w).iter().cloned());
        }
    }
    out
}

/// A random bidegree-homogeneous element with one to three terms and small coefficients.
pub fn random_homogeneous(
    tower: &Arc<Tower>,
    rng: &mut impl Rng,
    w_max: i64,
    predicate: impl Fn(i64, i64) -> bool,
) -> Option<AlgebraElement> {
    let mut slots = Vec::new();
    for w in 0..=w_max {
        for h in 0..=tower.max_degree_at_weight(w) {
            if predicate(h, w) && !tower.monomials(h, w).is_empty() {
                slots.push((h, w));
            }
        }
    }
    if slots.is_empty() {
        return None;
    }
    let (h, w) = slots[rng.gen_range(0..slots.len())];
    let monos = tower.monomials(h, w);
    let count = rng.gen_range(1..=3usize);
    let field = tower.field();
    let mut e = AlgebraElement::zero(tower);
    for _ in 0..count {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-3..=3);
        }
        e.add_term(m, field.from_i64(c));
    }
    if e.is_zero() {
        e.add_term(monos[0].clone(), field.one());
    }
    Some(e)
}

fn sign(deg_product: i64) -> i64 {
    if deg_product % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Checks the DG algebra and divided-power laws on every monomial of weight
/// at most the bound, and on seeded random homogeneous samples.
pub fn check_axioms(tower: &Arc<Tower>, config: &AxiomConfig) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let wb = config.weight_bound;
    let monos = window_monomials(tower, wb);
    let elems: Vec<AlgebraElement> = monos
        .iter()
        .map(|m| AlgebraElement::monomial(tower, m.clone(), tower.field().one()))
        .collect();
    let bideg: Vec<(i64, i64)> = monos.iter().map(|m| tower.bidegree(m)).collect();

    let mut d2 = LawResult::new("d∘d = 0");
    let mut weight = LawResult::new("weight homogeneity");
    let mut leibniz = LawResult::new("Leibniz rule");
    let mut comm = LawResult::new("graded commutativity");
    let mut odd_sq = LawResult::new("odd squares vanish");
    let mut assoc = LawResult::new("associativity");
    let mut dp_unit = LawResult::new("u^(0) = 1, u^(1) = u");
    let mut dp_prod = LawResult::new("u^(i)u^(j) = binom(i+j,i) u^(i+j)");
    let mut dp_sum = LawResult::new("(u+v)^(i) = Σ u^(j) v^(i-j)");
    let mut dp_mul = LawResult::new("(vw)^(i) = v^i w^(i)");
    let mut dp_comp = LawResult::new("(u^(i))^(j) = (ij)!/(j!(i!)^j) u^(ij)");
    let mut dp_diff = LawResult::new("d(u^(m)) = u^(m-1) d(u)");
    let mut ordinary = LawResult::new("m!·u^(m) = u^m");

    for (u, &(h, w)) in elems.iter().zip(&bideg) {
        let du = u.differential();
        let ddu = du.differential();
        d2.record(ddu.is_zero(), || format!("d(d({u})) = {ddu}"));
        let ok = du.terms().keys().all(|m| tower.bidegree(m) == (h - 1, w));
        weight.record(ok, || format!("d({u}) = {du} leaves bidegree ({}, {w})", h - 1));
        if h % 2 == 1 {
            let sq = u * u;
            odd_sq.record(sq.is_zero(), || format!("({u})^2 = {sq}"));
        }
    }

    for (i, u) in elems.iter().enumerate() {
        for (j, v) in elems.iter().enumerate() {
            let (hu, wu) = bideg[i];
            let (hv, wv) = bideg[j];
            if wu + wv > wb {
                continue;
            }
            check_pair(tower, u, hu, v, hv, &mut leibniz, &mut comm, &mut weight);
        }
    }

    let even_positive = |h: i64, _w: i64| h > 0 && h % 2 == 0;
    let any = |_h: i64, _w: i64| true;
    for _ in 0..config.samples {
        let Some(u) = random_homogeneous(tower, &mut rng, wb, any) else { break };
        let Some(v) = random_homogeneous(tower, &mut rng, wb, any) else { break };
        let Some(z) = random_homogeneous(tower, &mut rng, wb, any) else { break };
        let hu = u.degree().unwrap();
        let hv = v.degree().unwrap();
        check_pair(tower, &u, hu, &v, hv, &mut leibniz, &mut comm, &mut weight);
        let l = &(&u * &v) * &z;
        let r = &u * &(&v * &z);
        assoc.record(l == r, || format!("(({u})({v}))({z}) = {l} but ({u})(({v})({z})) = {r}"));
        if hu % 2 == 1 {
            let sq = &u * &u;
            odd_sq.record(sq.is_zero(), || format!("({u})^2 = {sq}"));
        }
    }

    // Divided powers: exhaustive even monomials of positive degree plus random samples.
    let mut dp_inputs: Vec<AlgebraElement> = elems
        .iter()
        .zip(&bideg)
        .filter(|(_, (h, _))| even_positive(*h, 0))
        .map(|(u, _)| u.clone())
        .collect();
    let mut pairs: Vec<(AlgebraElement, AlgebraElement)> = Vec::new();
    for _ in 0..config.samples {
        if let Some(u) = random_homogeneous(tower, &mut rng, wb, even_positive) {
            let (h, w) = u.bidegree().unwrap();
            if let Some(v) = random_homogeneous(tower, &mut rng, wb, |h2, w2| h2 == h && w2 == w) {
                pairs.push((u.clone(), v));
            }
            dp_inputs.push(u);
        }
    }
    let field = tower.field();
    let pmax = config.max_power;
    for u in &dp_inputs {
        let mut powers = Vec::new();
        let mut failed = None;
        for m in 0..=pmax * pmax {
            match u.divided_power(m) {
                Ok(p) => powers.push(p),
                Err(e) => {
                    failed = Some(e);
                    break;
                }
            }
        }
        if let Some(e) = failed {
            if matches!(e, Error::DivisionByCharacteristic { .. }) {
                for law in [&mut dp_unit, &mut dp_prod, &mut dp_comp, &mut dp_diff, &mut ordinary] {
                    law.skipped += 1;
                }
                continue;
            }
            dp_unit.record(false, || format!("{u}: {e}"));
            continue;
        }
        let one = AlgebraElement::one(tower);
        dp_unit.record(powers[0] == one && powers[1] == *u, || {
            format!("{u}^(0) = {}, {u}^(1) = {}", powers[0], powers[1])
        });
        for i in 0..=pmax {
            for j in 0..=pmax {
                let lhs = &powers[i as usize] * &powers[j as usize];
                let c = field.from_bigint(&binomial((i + j) as u64, i as u64));
                let rhs = powers[(i + j) as usize].scale(&c);
                dp_prod.record(lhs == rhs, || format!("u = {u}, i = {i}, j = {j}: {lhs} vs {rhs}"));
            }
        }
        for i in 1..=pmax {
            for j in 0..=pmax {
                let lhs = match powers[i as usize].divided_power(j) {
                    Ok(p) => p,
                    Err(_) => {
                        dp_comp.skipped += 1;
                        continue;
                    }
                };
                let num = factorial((i * j) as u64);
                let den = factorial(j as u64)
                    * num_traits::pow(factorial(i as u64), j as usize);
                let c = field.from_bigint(&(num / den));
                let rhs = powers[(i * j) as usize].scale(&c);
                dp_comp.record(lhs == rhs, || format!("u = {u}, i = {i}, j = {j}: {lhs} vs {rhs}"));
            }
        }
        let du = u.differential();
        for m in 1..=pmax {
            let lhs = powers[m as usize].differential();
            let rhs = &powers[m as usize - 1] * &du;
            dp_diff.record(lhs == rhs, || format!("u = {u}, m = {m}: {lhs} vs {rhs}"));
        }
        if tower.flavor() == Flavor::Ordinary {
            for m in 0..=pmax {
                let lhs = powers[m as usize].scale(&field.from_bigint(&factorial(m as u64)));
                let rhs = u.pow(m);
                ordinary.record(lhs == rhs, || format!("u = {u}, m = {m}: {lhs} vs {rhs}"));
            }
        }
    }
    for (u, v) in &pairs {
        let s = u + v;
        for i in 0..=pmax {
            let (Ok(lhs), Ok(rhs)) = (s.divided_power(i), sum_rule(u, v, i)) else {
                dp_sum.skipped += 1;
                continue;
            };
            dp_sum.record(lhs == rhs, || format!("u = {u}, v = {v}, i = {i}: {lhs} vs {rhs}"));
        }
    }
    // Product rule: v even of any degree (including base polynomials), w even positive.
    for _ in 0..config.samples / 4 + 1 {
        let Some(w) = random_homogeneous(tower, &mut rng, wb, even_positive) else { break };
        let ww = w.bidegree().unwrap().1;
        let Some(v) = random_homogeneous(tower, &mut rng, wb - ww, |h, _| h % 2 == 0) else {
            continue;
        };
        let vw = &v * &w;
        for i in 0..=pmax {
            if vw.is_zero() {
                break;
            }
            let (Ok(lhs), Ok(wi)) = (vw.divided_power(i), w.divided_power(i)) else {
                dp_mul.skipped += 1;
                continue;
            };
            let rhs = &v.pow(i) * &wi;
            dp_mul.record(lhs == rhs, || format!("v = {v}, w = {w}, i = {i}: {lhs} vs {rhs}"));
        }
    }
    // Product rule for two odd elements: (vw)^(i) = 0 for i ≥ 2.
    let odd = |h: i64, _w: i64| h % 2 == 1;
    for _ in 0..config.samples / 4 + 1 {
        let Some(v) = random_homogeneous(tower, &mut rng, wb, odd) else { break };
        let Some(w) = random_homogeneous(tower, &mut rng, wb, odd) else { break };
        let vw = &v * &w;
        if vw.is_zero() {
            continue;
        }
        for i in 2..=pmax {
            match vw.divided_power(i) {
                Ok(p) => dp_mul.record(p.is_zero(), || format!("v = {v}, w = {w}, i = {i}: {p}")),
                Err(_) => dp_mul.skipped += 1,
            }
        }
    }

    let mut laws = vec![d2, weight, leibniz, comm, odd_sq, assoc];
    laws.extend([dp_unit, dp_prod, dp_sum, dp_mul, dp_comp, dp_diff]);
    if tower.flavor() == Flavor::Ordinary {
        laws.push(ordinary);
    }
    AxiomReport {
        seed: config.seed,
        weight_bound: wb,
        samples: config.samples,
        monomials: monos.len(),
        laws,
    }
}

fn sum_rule(
    u: &AlgebraElement,
    v: &AlgebraElement,
    i: u32,
) -> crate::error::Result<AlgebraElement> {
    let mut acc = AlgebraElement::zero(u.tower());
    for j in 0..=i {
        acc = &acc + &(&u.divided_power(j)? * &v.divided_power(i - j)?);
    }
    Ok(acc)
}

#[allow(clippy::too_many_arguments)]
fn check_pair(
    tower: &Arc<Tower>,
    u: &AlgebraElement,
    hu: i64,
    v: &AlgebraElement,
    hv: i64,
    leibniz: &mut LawResult,
    comm: &mut LawResult,
    weight: &mut LawResult,
) {
    let uv = u * v;
    let lhs = uv.differential();
    let rhs = &(&u.differential() * v) + &(u * &v.differential()).scale_i64(sign(hu));
    leibniz.record(lhs == rhs, || format!("d(({u})({v})) = {lhs} but expected {rhs}"));
    let vu = (v * u).scale_i64(sign(hu * hv));
    comm.record(uv == vu, || format!("({u})({v}) = {uv} but ±({v})({u}) = {vu}"));
    let (bu, bv) = (u.bidegree(), v.bidegree());
    if let (Some((_, wu)), Some((_, wv))) = (bu, bv) {
        let ok = uv.terms().keys().all(|m| tower.bidegree(m) == (hu + hv, wu + wv));
        weight.record(ok, || format!("({u})({v}) = {uv} is not of weight {}", wu + wv));
    }
}
