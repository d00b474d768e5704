use std::sync::Arc;

use crate::base_ring::{solve_linear, LinearSolution, LinearSystem, Scalar, SparseMatrix, SparseVec};
use crate::dg_module::{base_change, BaseChange, BidegreeWindow, ChainMap, ModuleElement, SemifreeModule};
use crate::error::Result;

/// One scalar equation of the splitting system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    /// The generator whose image the equation constrains.
    pub generator: String,
    /// `π(ρ(e)) = e` or `∂ρ(e) = ρ(∂e)`.
    pub identity: String,
    /// The basis element whose coefficient is compared.
    pub coefficient_of: String,
}

impl std::fmt::Display for Equation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}] coefficient of {}", self.identity, self.coefficient_of)
    }
}

/// Answer of the naive-lifting decision procedure.
#[derive(Clone, Debug)]
pub enum SplitResult {
    /// A section `ρ` of `π_N` that is a DG module map.
    Split {
        rho: ChainMap,
        base_change: BaseChange,
        transcript: Vec<String>,
    },
    /// No section exists: `Σ witness_k · (equation k)` reads `0 = value`.
    Obstructed {
        base_change: BaseChange,
        equations: Vec<Equation>,
        system: LinearSystem,
        witness: Vec<Scalar>,
        value: Scalar,
        locus: String,
    },
}

impl SplitResult {
    pub fn is_split(&self) -> bool {
        matches!(self, SplitResult::Split { .. })
    }

    pub fn base_change(&self) -> &BaseChange {
        match self {
            SplitResult::Split { base_change, .. } | SplitResult::Obstructed { base_change, .. } => base_change,
        }
    }

    /// Recomputes the certificate from scratch: for a splitting both identities
    /// on every basis element, for an obstruction the combination `0 = c`.
    pub fn reverify(&self, n: &Arc<SemifreeModule>) -> bool {
        match self {
            SplitResult::Split { rho, base_change, .. } => {
                let Ok(composite) = base_change.pi.compose(rho) else {
                    return false;
                };
                composite == ChainMap::identity(n) && rho.is_chain_map()
            }
            SplitResult::Obstructed {
                system, witness, value, ..
            } => {
                let field = system.matrix.field();
                let mut combo = SparseVec::new();
                let mut rhs = field.zero();
                for (row, (w, b)) in system.matrix.rows().iter().zip(witness.iter().zip(&system.rhs)) {
                    if w.is_zero() {
                        continue;
                    }
                    for (j, a) in row {
                        let slot = combo.entry(*j).or_insert_with(|| field.zero());
                        *slot = &*slot + &(w * a);
                    }
                    rhs = &rhs + &(w * b);
                }
                combo.values().all(Scalar::is_zero) && rhs == *value && !value.is_zero()
            }
        }
    }

    /// The equations that carry the obstruction, with their multipliers.
    pub fn witness_equations(&self) -> Vec<(Scalar, &Equation)> {
        match self {
            SplitResult::Split { .. } => Vec::new(),
            SplitResult::Obstructed {
                equations, witness, ..
            } => witness
                .iter()
                .zip(equations)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, e)| (c.clone(), e))
                .collect(),
        }
    }
}

/// The smallest window in which the splitting equations close up: degrees
/// and weights spanned by the basis of `N`, weights starting at 0.
pub fn minimal_lift_window(n: &SemifreeModule) -> BidegreeWindow {
    BidegreeWindow {
        h_min: n.min_degree().unwrap_or(0),
        h_max: n.max_degree().unwrap_or(0),
        w_min: n.min_weight().unwrap_or(0).min(0),
        w_max: n.max_weight().unwrap_or(0).max(0),
    }
}

/// Decides whether `π_N: N|_A ⊗_A B → N` splits, in the minimal window.
pub fn naive_lift_check(n: &Arc<SemifreeModule>) -> Result<SplitResult> {
    naive_lift_check_in(n, &minimal_lift_window(n))
}

/// Same as [`naive_lift_check`] with the base change built in a caller-chosen window.
pub fn naive_lift_check_in(n: &Arc<SemifreeModule>, window: &BidegreeWindow) -> Result<SplitResult> {
    let bc = base_change(n, window)?;
    let p = &bc.module;
    let tower = n.tower();
    let field = tower.field();

    // Unknowns: coordinates of each ρ(e_α) in the slice of P at the bidegree of e_α.
    let slices: Vec<_> = n.gens().iter().map(|g| p.slice(g.degree, g.weight)).collect();
    let mut offsets = Vec::with_capacity(slices.len());
    let mut nvars = 0;
    for s in &slices {
        offsets.push(nvars);
        nvars += s.len();
    }
    let unit = |alpha: usize, k: usize| -> ModuleElement {
        let (g, m) = &slices[alpha].entries[k];
        ModuleElement::term(
            tower,
            *g,
            crate::dg_algebra::AlgebraElement::monomial(tower, m.clone(), field.one()),
        )
    };

    let mut matrix = SparseMatrix::new(field, nvars);
    let mut rhs = Vec::new();
    let mut equations = Vec::new();
    for (alpha, g) in n.gens().iter().enumerate() {
        // π(ρ(e_α)) = e_α
        let nslice = n.slice(g.degree, g.weight);
        let mut rows = vec![SparseVec::new(); nslice.len()];
        for k in 0..slices[alpha].len() {
            for (r, c) in nslice.coords(&bc.pi.apply(&unit(alpha, k))) {
                rows[r].insert(offsets[alpha] + k, c);
            }
        }
        let target = nslice.coords(&n.generator(alpha));
        for (r, row) in rows.into_iter().enumerate() {
            matrix.push_row(row);
            rhs.push(target.get(&r).cloned().unwrap_or_else(|| field.zero()));
            equations.push(Equation {
                generator: g.name.clone(),
                identity: format!("π(ρ({0})) = {0}", g.name),
                coefficient_of: n.format_element(&nslice.element(tower, &basis_vector(field, nslice.len(), r))),
            });
        }

        // ∂ρ(e_α) − Σ_β ρ(e_β)·b_βα = 0
        let dslice = p.slice(g.degree - 1, g.weight);
        let mut rows = vec![SparseVec::new(); dslice.len()];
        let mut add = |col: usize, e: &ModuleElement, negate: bool| {
            for (r, c) in dslice.coords(e) {
                let c = c.signed(negate);
                let slot = rows[r].entry(col).or_insert_with(|| field.zero());
                *slot = &*slot + &c;
            }
        };
        for k in 0..slices[alpha].len() {
            add(offsets[alpha] + k, &p.differential(&unit(alpha, k)), false);
        }
        for (beta, b) in n.diff_of(alpha).coeffs() {
            for k in 0..slices[*beta].len() {
                add(offsets[*beta] + k, &unit(*beta, k).mul_right(b), true);
            }
        }
        for (r, mut row) in rows.into_iter().enumerate() {
            row.retain(|_, c| !c.is_zero());
            matrix.push_row(row);
            rhs.push(field.zero());
            equations.push(Equation {
                generator: g.name.clone(),
                identity: format!("∂ρ({0}) = ρ(∂{0})", g.name),
                coefficient_of: p.format_element(&dslice.element(tower, &basis_vector(field, dslice.len(), r))),
            });
        }
    }

    let system = LinearSystem::new(matrix, rhs);
    match solve_linear(&system) {
        LinearSolution::Solved { solution, .. } => {
            let images = (0..n.rank())
                .map(|alpha| slices[alpha].element(tower, &solution[offsets[alpha]..offsets[alpha] + slices[alpha].len()]))
                .collect();
            let rho = ChainMap::new(n.clone(), p.clone(), 0, 0, images)?;
            let transcript = verify_split(n, &bc, &rho);
            Ok(SplitResult::Split {
                rho,
                base_change: bc,
                transcript,
            })
        }
        LinearSolution::Infeasible { witness, value } => {
            let mut gens: Vec<&str> = witness
                .iter()
                .zip(&equations)
                .filter(|(c, _)| !c.is_zero())
                .map(|(_, e)| e.generator.as_str())
                .collect();
            gens.dedup();
            let locus = format!(
                "no section of π_N in window {}: the equations for ρ({}) are inconsistent",
                window,
                gens.join("), ρ(")
            );
            Ok(SplitResult::Obstructed {
                base_change: bc,
                equations,
                system,
                witness,
                value,
                locus,
            })
        }
    }
}

fn basis_vector(field: crate::base_ring::Field, len: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); len];
    v[k] = field.one();
    v
}

/// Checks both defining identities symbolically and the idempotent `ρπ_N`,
/// panicking if the solver handed back something that is not a splitting.
fn verify_split(n: &Arc<SemifreeModule>, bc: &BaseChange, rho: &ChainMap) -> Vec<String> {
    let p = &bc.module;
    let mut out = Vec::new();
    for (alpha, g) in n.gens().iter().enumerate() {
        let img = &rho.images()[alpha];
        let back = bc.pi.apply(img);
        assert_eq!(back, n.generator(alpha), "solver returned a non-section");
        out.push(format!("ρ({}) = {}", g.name, p.format_element(img)));
        out.push(format!("π(ρ({0})) = {0}", g.name));
        let lhs = p.differential(img);
        let rhs = rho.apply(n.diff_of(alpha));
        assert_eq!(lhs, rhs, "solver returned a non-chain map");
        out.push(format!("∂ρ({0}) = ρ(∂{0}) = {1}", g.name, p.format_element(&lhs)));
    }
    let e = rho.compose(&bc.pi).expect("ρ∘π_N is defined");
    let e2 = e.compose(&e).expect("composable");
    assert_eq!(e2, e, "ρ∘π_N must be idempotent");
    out.push(format!(
        "(ρ∘π_N)² = ρ∘π_N on all {} basis elements of the base change",
        p.rank()
    ));
    out
}
