use std::sync::Arc;

use super::*;
use crate::base_ring::{BaseRing, Field};
use crate::dg_algebra::{AlgebraElement, Flavor, Tower};
use crate::envelope::quotient_module;
use crate::error::Error;

fn var(t: &Arc<Tower>, name: &str) -> AlgebraElement {
    AlgebraElement::variable(t, t.var_index(name).unwrap())
}

fn base(t: &Arc<Tower>, name: &str) -> AlgebraElement {
    AlgebraElement::base_variable(t, t.base().index_of(name).unwrap())
}

fn koszul_x() -> Arc<Tower> {
    let t = Tower::new(BaseRing::new(Field::Rational, &[("x", 1)]).unwrap(), Flavor::Divided);
    let x = base(&t, "x");
    t.adjoin("X", 1, 1, &x).unwrap()
}

fn even_cycle() -> Arc<Tower> {
    let t = Tower::new(BaseRing::new(Field::Rational, &[]).unwrap(), Flavor::Divided);
    t.adjoin("X", 2, 1, &AlgebraElement::zero(&t)).unwrap()
}

/// `{e (0,0), f (3,1)}` with `∂f = e·X` over `Q⟨X⟩`.
fn obstructed_module() -> Arc<SemifreeModule> {
    let t = even_cycle();
    let gens = vec![Generator::new("e", 0, 0), Generator::new("f", 3, 1)];
    let diff = vec![ModuleElement::zero(&t), ModuleElement::term(&t, 0, var(&t, "X"))];
    Arc::new(SemifreeModule::new(&t, gens, diff).unwrap())
}

#[test]
fn accepts_triangular_module() {
    let t = koszul_x();
    let gens = vec![Generator::new("e", 0, 0), Generator::new("f", 1, 1)];
    let diff = vec![ModuleElement::zero(&t), ModuleElement::term(&t, 0, base(&t, "x"))];
    let m = SemifreeModule::new(&t, gens, diff).unwrap();
    assert_eq!(m.format_element(m.diff_of(1)), "e·x");
}

#[test]
fn rejects_order_violation() {
    let t = koszul_x();
    let gens = vec![Generator::new("e", 0, 0), Generator::new("f", -1, 0)];
    let diff = vec![ModuleElement::generator(&t, 1), ModuleElement::zero(&t)];
    assert!(matches!(SemifreeModule::new(&t, gens, diff), Err(Error::NotTriangular(_))));
}

#[test]
fn rejects_nonzero_square() {
    let t = koszul_x();
    let gens = vec![Generator::new("e", 0, 0), Generator::new("f", 2, 1)];
    let diff = vec![ModuleElement::zero(&t), ModuleElement::term(&t, 0, var(&t, "X"))];
    let err = SemifreeModule::new(&t, gens, diff).unwrap_err();
    assert_eq!(err, Error::NonZeroSquare("∂²(f) = e·x".into()));
}

#[test]
fn rejects_bidegree_mismatch() {
    let t = koszul_x();
    let gens = vec![Generator::new("e", 0, 0), Generator::new("f", 1, 2)];
    let diff = vec![ModuleElement::zero(&t), ModuleElement::term(&t, 0, base(&t, "x"))];
    assert!(matches!(SemifreeModule::new(&t, gens, diff), Err(Error::BidegreeMismatch(_))));
}

#[test]
fn base_change_of_free_module_is_the_envelope() {
    let t = koszul_x().with_sub_tower(0).unwrap();
    let n = Arc::new(SemifreeModule::free(&t, "e"));
    let w = BidegreeWindow::new(0, 3, 3).unwrap();
    let bc = base_change(&n, &w).unwrap();
    assert!(bc.pi.is_chain_map());
    let names: Vec<&str> = bc.module.gens().iter().map(|g| g.name.as_str()).collect();
    assert_eq!(names, vec!["e⊗1", "e·X⊗1"]);
    assert_eq!(bc.pi.images()[0], n.generator(0));
    assert_eq!(bc.pi.images()[1], ModuleElement::term(&t, 0, var(&t, "X")));
}

#[test]
fn base_change_slice_of_obstructed_module() {
    let n = obstructed_module();
    let w = BidegreeWindow::new(0, 3, 1).unwrap();
    let bc = base_change(&n, &w).unwrap();
    let slice = bc.module.slice(3, 1);
    assert_eq!(slice.len(), 1);
    assert_eq!(bc.module.gens()[slice.entries[0].0].name, "f⊗1");
    assert!(bc.pi.is_chain_map());
    // ∂(f⊗1) = (e·X⊗1), not (e⊗1)·X
    let f = bc.module.gen_index("f⊗1").unwrap();
    assert_eq!(bc.module.format_element(bc.module.diff_of(f)), "e·X⊗1");
}

#[test]
fn base_change_refuses_small_window() {
    let n = obstructed_module();
    let w = BidegreeWindow::new(0, 2, 1).unwrap();
    assert!(matches!(base_change(&n, &w), Err(Error::WindowTooSmall { .. })));
}

#[test]
fn shifts_and_sums() {
    let n = obstructed_module();
    assert_eq!(n.shift(1).shift(-1), *n);
    let s2 = n.shift(2);
    assert_eq!(s2.diff_of(1), n.diff_of(1));
    let s1 = n.shift(1);
    assert_eq!(*s1.diff_of(1), n.diff_of(1).neg());
    let degs: Vec<i64> = s1.gens().iter().map(|g| g.degree).collect();
    assert_eq!(degs, vec![1, 4]);

    let t = n.tower().clone();
    let b = SemifreeModule::free(&t, "e");
    let bb = b.direct_sum(&b).unwrap();
    assert_eq!(bb.rank(), 2);
    assert!(bb.diff_of(0).is_zero() && bb.diff_of(1).is_zero());
    assert_eq!(bb.dim(2, 1), 2 * b.dim(2, 1));
    let nb = n.direct_sum(&b).unwrap();
    assert_eq!(nb.gens()[2].name, "e'");
    assert_eq!(nb.dim(3, 1), n.dim(3, 1) + b.dim(3, 1));
}

#[test]
fn tensor_with_filtration_quotients() {
    let t = even_cycle();
    let w = BidegreeWindow::new(0, 6, 3).unwrap();
    let n = obstructed_module();
    let q0 = quotient_module(&t, 0, &w).unwrap();
    let nq = tensor_bimodule(&n, &q0.module, &w).unwrap();
    assert_eq!(nq.rank(), n.rank());
    for (h, wt) in w.bidegrees() {
        assert_eq!(nq.dim(h, wt), n.dim(h, wt));
    }
    let b = SemifreeModule::free(&t, "e");
    let q1 = quotient_module(&t, 1, &w).unwrap();
    let bq = tensor_bimodule(&b, &q1.module, &w).unwrap();
    assert_eq!(bq.rank(), q1.module.rank());
    let nq1 = tensor_bimodule(&n, &q1.module, &w).unwrap();
    assert_eq!(nq1.rank(), 2);
    let degs: Vec<(i64, i64)> = nq1.gens().iter().map(|g| (g.degree, g.weight)).collect();
    assert_eq!(degs, vec![(2, 1), (5, 2)]);
}

#[test]
fn tensor_needs_bimodule() {
    let n = obstructed_module();
    let w = BidegreeWindow::new(0, 6, 3).unwrap();
    assert!(tensor_bimodule(&n, &n, &w).is_err());
}
