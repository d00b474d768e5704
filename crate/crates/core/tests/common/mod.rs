#![allow(dead_code)]

use std::sync::Arc;

use dglift::base_ring::{BaseRing, Field, Scalar};
use dglift::dg_algebra::{AlgebraElement, Flavor, Tower};
use dglift::dg_module::{ChainMap, Generator, ModuleElement, SemifreeModule};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

pub fn var(t: &Arc<Tower>, name: &str) -> AlgebraElement {
    AlgebraElement::variable(t, t.var_index(name).unwrap())
}

pub fn base(t: &Arc<Tower>, name: &str) -> AlgebraElement {
    AlgebraElement::base_variable(t, t.base().index_of(name).unwrap())
}

/// `Q⟨X⟩` with `|X| = 2`, `dX = 0`, weight 1.
pub fn even_cycle() -> Arc<Tower> {
    let t = Tower::new(BaseRing::new(Field::Rational, &[]).unwrap(), Flavor::Divided);
    t.adjoin("X", 2, 1, &AlgebraElement::zero(&t)).unwrap()
}

/// `Q[x]⟨X⟩` with `dX = x`.
pub fn koszul_x(field: Field, flavor: Flavor) -> Arc<Tower> {
    let t = Tower::new(BaseRing::new(field, &[("x", 1)]).unwrap(), flavor);
    let x = AlgebraElement::base_variable(&t, 0);
    t.adjoin("X", 1, 1, &x).unwrap()
}

/// `Q[x, y]⟨X1, X2⟩` with `dX1 = x`, `dX2 = y`.
pub fn koszul_xy(field: Field, flavor: Flavor) -> Arc<Tower> {
    let t = Tower::new(BaseRing::new(field, &[("x", 1), ("y", 1)]).unwrap(), flavor);
    let x = AlgebraElement::base_variable(&t, 0);
    let t = t.adjoin("X1", 1, 1, &x).unwrap();
    let y = AlgebraElement::base_variable(&t, 1);
    t.adjoin("X2", 1, 1, &y).unwrap()
}

/// `Q[x, y]⟨X1, X2, Y⟩` resolving `(x², xy)` up to degree 2.
pub fn non_regular(field: Field, flavor: Flavor) -> Arc<Tower> {
    let t = Tower::new(BaseRing::new(field, &[("x", 1), ("y", 1)]).unwrap(), flavor);
    let (x, y) = (AlgebraElement::base_variable(&t, 0), AlgebraElement::base_variable(&t, 1));
    let t = t.adjoin("X1", 1, 2, &(&x * &x)).unwrap();
    let (x, y) = (x.embed(&t).unwrap(), y.embed(&t).unwrap());
    let t = t.adjoin("X2", 1, 2, &(&x * &y)).unwrap();
    let (x, y) = (x.embed(&t).unwrap(), y.embed(&t).unwrap());
    let z = &(&y * &var(&t, "X1")) - &(&x * &var(&t, "X2"));
    t.adjoin("Y", 2, 3, &z).unwrap()
}

/// `{e (0,0), f (3,1)}` with `∂f = e·X` over [`even_cycle`].
pub fn obstructed_module() -> Arc<SemifreeModule> {
    let t = even_cycle();
    let gens = vec![Generator::new("e", 0, 0), Generator::new("f", 3, 1)];
    let diff = vec![ModuleElement::zero(&t), ModuleElement::term(&t, 0, var(&t, "X"))];
    Arc::new(SemifreeModule::new(&t, gens, diff).unwrap())
}

pub fn to_q(s: &Scalar) -> BigRational {
    match s {
        Scalar::Rational(q) => q.clone(),
        Scalar::Modular { value, .. } => BigRational::from_integer((*value).into()),
    }
}

/// Dense Gauss-Jordan rank over Q.
pub fn dense_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = BigRational::one() / rows[r][c].clone();
        let pivot: Vec<BigRational> = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// Every map `e_α ↦ e_γ·m` of Hom-bidegree `(d, w)`, one per basis element of
/// the target slice, as chain-map objects.
fn basis_maps(m: &Arc<SemifreeModule>, l: &Arc<SemifreeModule>, d: i64, w: i64) -> Vec<ChainMap> {
    let tower = m.tower();
    let mut out = Vec::new();
    for (alpha, g) in m.gens().iter().enumerate() {
        let s = l.slice(g.degree + d, g.weight + w);
        for (gamma, mono) in &s.entries {
            let mut images = vec![ModuleElement::zero(tower); m.rank()];
            images[alpha] = ModuleElement::term(
                tower,
                *gamma,
                AlgebraElement::monomial(tower, mono.clone(), tower.field().one()),
            );
            out.push(ChainMap::new(m.clone(), l.clone(), d, w, images).unwrap());
        }
    }
    out
}

/// Dense rank over `F_p` with plain `u64` arithmetic.
pub fn dense_rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let inverse = |a: u64| (1..p).find(|b| a * b % p == 1).unwrap();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(q) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, q);
        let inv = inverse(rows[r][c]);
        let pivot: Vec<u64> = rows[r].iter().map(|x| x * inv % p).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

fn map_coords(m: &SemifreeModule, l: &SemifreeModule, f: &ChainMap, w: i64) -> Vec<Scalar> {
    let zero = m.tower().field().zero();
    let mut v = Vec::new();
    for (alpha, g) in m.gens().iter().enumerate() {
        let s = l.slice(g.degree + f.degree(), g.weight + w);
        let c = s.coords(&f.images()[alpha]);
        v.extend((0..s.len()).map(|k| c.get(&k).cloned().unwrap_or_else(|| zero.clone())));
    }
    v
}

fn rank_over_field(field: Field, rows: Vec<Vec<Scalar>>) -> usize {
    match field {
        Field::Rational => dense_rank(rows.iter().map(|r| r.iter().map(to_q).collect()).collect()),
        Field::Prime(p) => dense_rank_mod(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|s| match s {
                            Scalar::Modular { value, .. } => *value,
                            Scalar::Rational(_) => unreachable!("rational entry over F_p"),
                        })
                        .collect()
                })
                .collect(),
            p,
        ),
    }
}

fn rank_of_differential(m: &Arc<SemifreeModule>, l: &Arc<SemifreeModule>, d: i64, w: i64) -> usize {
    let rows: Vec<Vec<Scalar>> = basis_maps(m, l, d, w)
        .iter()
        .map(|f| map_coords(m, l, &f.hom_differential(), w))
        .collect();
    if rows.iter().all(Vec::is_empty) {
        0
    } else {
        rank_over_field(m.tower().field(), rows)
    }
}

/// `dim Ext^i(M, L)` at weight `w` by brute force: enumerate all basis maps,
/// apply the chain-map differential, rank densely.
pub fn oracle_ext(m: &Arc<SemifreeModule>, l: &Arc<SemifreeModule>, i: i64, w: i64) -> usize {
    let n = basis_maps(m, l, -i, w).len();
    n - rank_of_differential(m, l, -i, w) - rank_of_differential(m, l, -i + 1, w)
}

/// A random semifree module with at most `max_gens` basis elements: degrees
/// and weights are drawn nondecreasing, coefficients are random homogeneous
/// elements, and candidates with `∂² ≠ 0` are redrawn.
pub fn random_module(tower: &Arc<Tower>, rng: &mut impl Rng, max_gens: usize) -> Arc<SemifreeModule> {
    let field = tower.field();
    for _ in 0..200 {
        let n = rng.gen_range(1..=max_gens);
        let mut gens = Vec::new();
        let (mut deg, mut wt) = (0i64, 0i64);
        for k in 0..n {
            if k > 0 {
                deg += rng.gen_range(0..=2);
                wt += rng.gen_range(0..=1);
            }
            gens.push(Generator::new(format!("e{k}"), deg, wt));
        }
        let mut diff = Vec::new();
        for (beta, gb) in gens.iter().enumerate() {
            let mut d = ModuleElement::zero(tower);
            for (alpha, ga) in gens.iter().enumerate().take(beta) {
                let monos = tower.monomials(gb.degree - ga.degree - 1, gb.weight - ga.weight);
                if monos.is_empty() || rng.gen_bool(0.4) {
                    continue;
                }
                let m = monos[rng.gen_range(0..monos.len())].clone();
                let c = field.from_i64(rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 });
                d.add_term(alpha, &AlgebraElement::monomial(tower, m, c));
            }
            diff.push(d);
        }
        if let Ok(m) = SemifreeModule::new(tower, gens, diff) {
            return Arc::new(m);
        }
    }
    Arc::new(SemifreeModule::free(tower, "e"))
}
