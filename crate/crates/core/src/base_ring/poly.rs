use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// The degree-0 polynomial ring `F[x₁..x_k]` with a positive weight per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseRing {
    field: Field,
    names: Vec<String>,
    weights: Vec<u32>,
}

impl BaseRing {
    pub fn new(field: Field, vars: &[(&str, u32)]) -> Result<Arc<BaseRing>> {
        let mut names = Vec::with_capacity(vars.len());
        let mut weights = Vec::with_capacity(vars.len());
        for (name, w) in vars {
            if *w == 0 {
                return Err(Error::InvalidRing(format!(
                    "variable {name} needs a positive weight"
                )));
            }
            if names.iter().any(|n: &String| n == name) {
                return Err(Error::InvalidRing(format!("duplicate variable {name}")));
            }
            names.push(name.to_string());
            weights.push(*w);
        }
        Ok(Arc::new(BaseRing {
            field,
            names,
            weights,
        }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn monomial_weight(&self, exps: &[u32]) -> i64 {
        exps.iter()
            .zip(&self.weights)
            .map(|(e, w)| *e as i64 * *w as i64)
            .sum()
    }

    /// All exponent vectors of total weight exactly `w`, in increasing lex order.
    pub fn monomials_of_weight(&self, w: i64) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        if w < 0 {
            return out;
        }
        let mut cur = vec![0u32; self.nvars()];
        self.fill(0, w, &mut cur, &mut out);
        out.sort();
        out
    }

    fn fill(&self, idx: usize, rem: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx == self.nvars() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = self.weights[idx] as i64;
        let mut e = 0;
        while e * w <= rem {
            cur[idx] = e as u32;
            self.fill(idx + 1, rem - e * w, cur, out);
            e += 1;
        }
        cur[idx] = 0;
    }

    pub fn format_monomial(&self, exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| {
                if *e == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], e)
                }
            })
            .collect();
        parts.join("·")
    }
}

/// Sparse polynomial over a [`BaseRing`]; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePoly {
    ring: Arc<BaseRing>,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    ScalarMul,
}

/// Ring arithmetic with descriptor checking. `ScalarMul` scales `a` by the constant `b`.
pub fn poly_arith(op: PolyOp, a: &BasePoly, b: &BasePoly) -> Result<BasePoly> {
    match op {
        PolyOp::Add => a.checked_add(b),
        PolyOp::Sub => a.checked_add(&b.neg()),
        PolyOp::Mul => a.checked_mul(b),
        PolyOp::ScalarMul => {
            a.same_ring(b)?;
            let c = b.as_constant().ok_or(Error::NotConstant)?;
            Ok(a.scale(&c))
        }
    }
}

impl BasePoly {
    pub fn zero(ring: &Arc<BaseRing>) -> BasePoly {
        BasePoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<BaseRing>, c: Scalar) -> BasePoly {
        BasePoly::from_terms(ring, [(vec![0; ring.nvars()], c)])
    }

    pub fn variable(ring: &Arc<BaseRing>, idx: usize) -> BasePoly {
        let mut e = vec![0; ring.nvars()];
        e[idx] = 1;
        BasePoly::from_terms(ring, [(e, ring.field().one())])
    }

    pub fn from_terms(
        ring: &Arc<BaseRing>,
        terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>,
    ) -> BasePoly {
        let mut p = BasePoly::zero(ring);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn ring(&self) -> &Arc<BaseRing> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.ring.field().zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|x| *x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn same_ring(&self, other: &BasePoly) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &BasePoly) -> Result<BasePoly> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &BasePoly) -> Result<BasePoly> {
        self.same_ring(other)?;
        let mut out = BasePoly::zero(&self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> BasePoly {
        self.scale(&-self.ring.field().one())
    }

    pub fn scale(&self, c: &Scalar) -> BasePoly {
        BasePoly::from_terms(
            &self.ring,
            self.terms.iter().map(|(e, a)| (e.clone(), a * c)),
        )
    }

    /// The weight-`w` homogeneous part.
    pub fn graded_component(&self, w: i64) -> BasePoly {
        BasePoly::from_terms(
            &self.ring,
            self.terms
                .iter()
                .filter(|(e, _)| self.ring.monomial_weight(e) == w)
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// Sorted, deduplicated weights of the nonzero terms.
    pub fn weights(&self) -> Vec<i64> {
        let mut ws: Vec<i64> = self
            .terms
            .keys()
            .map(|e| self.ring.monomial_weight(e))
            .collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }
}

impl fmt::Display for BasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, Scalar)> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| (self.ring.format_monomial(e), c.clone()))
            .collect();
        crate::format::write_terms(f, &terms)
    }
}
