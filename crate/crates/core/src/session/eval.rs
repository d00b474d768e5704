use std::sync::Arc;

use num_bigint::BigInt;

use super::ast::*;
use crate::base_ring::{BaseRing, Field};
use crate::dg_algebra::{AlgebraElement, Tower};
use crate::dg_module::{Generator, ModuleElement, SemifreeModule};
use crate::envelope::{xi_power, EnvelopeElement};
use crate::error::{Error, Result};

/// The value of an expression.
#[derive(Clone, Debug)]
pub enum Value {
    Algebra(AlgebraElement),
    Envelope(EnvelopeElement),
    Module(ModuleElement),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Algebra(_) => "an algebra element",
            Value::Envelope(_) => "an envelope element",
            Value::Module(_) => "a module element",
        }
    }
}

pub(crate) fn at(span: Span, e: impl std::fmt::Display) -> Error {
    Error::Parse {
        line: span.line,
        col: span.col,
        message: e.to_string(),
    }
}

/// Names visible to an expression: the tower and optionally a module's basis.
pub struct Scope<'a> {
    pub tower: &'a Arc<Tower>,
    pub gens: &'a [Generator],
}

impl Scope<'_> {
    pub fn eval(&self, e: &Expr) -> Result<Value> {
        let tower = self.tower;
        let field = tower.field();
        Ok(match &e.kind {
            ExprKind::Number(n, d) => {
                let c = field
                    .from_ratio(&BigInt::from(*n), &BigInt::from(*d))
                    .map_err(|err| at(e.span, err))?;
                Value::Algebra(AlgebraElement::constant(tower, c))
            }
            ExprKind::Ident(name) => {
                if let Some(k) = self.gens.iter().position(|g| g.name == *name) {
                    Value::Module(ModuleElement::generator(tower, k))
                } else if let Some(i) = tower.var_index(name) {
                    Value::Algebra(AlgebraElement::variable(tower, i))
                } else if let Some(j) = tower.base().index_of(name) {
                    Value::Algebra(AlgebraElement::base_variable(tower, j))
                } else {
                    return Err(at(e.span, format!("unknown identifier `{name}`")));
                }
            }
            ExprKind::Neg(a) => match self.eval(a)? {
                Value::Algebra(x) => Value::Algebra(-&x),
                Value::Envelope(x) => Value::Envelope(x.neg()),
                Value::Module(x) => Value::Module(x.neg()),
            },
            ExprKind::Add(a, b) => self.add(e.span, self.eval(a)?, self.eval(b)?, false)?,
            ExprKind::Sub(a, b) => self.add(e.span, self.eval(a)?, self.eval(b)?, true)?,
            ExprKind::Mul(a, b) => self.mul(e.span, self.eval(a)?, self.eval(b)?)?,
            ExprKind::DividedPower(a, m) => match self.eval(a)? {
                Value::Algebra(x) => Value::Algebra(x.divided_power(*m).map_err(|err| at(e.span, err))?),
                Value::Envelope(x) => Value::Envelope(x.divided_power(*m).map_err(|err| at(e.span, err))?),
                Value::Module(_) => return Err(at(e.span, "module elements have no divided powers")),
            },
            ExprKind::Power(a, m) => {
                let base = self.eval(a)?;
                let mut acc = match &base {
                    Value::Algebra(_) => Value::Algebra(AlgebraElement::one(tower)),
                    Value::Envelope(_) => Value::Envelope(EnvelopeElement::one(tower)),
                    Value::Module(_) => return Err(at(e.span, "module elements have no powers")),
                };
                for _ in 0..*m {
                    acc = self.mul(e.span, acc, base.clone())?;
                }
                acc
            }
            ExprKind::Call(f, a) => match f.as_str() {
                "o" => match self.eval(a)? {
                    Value::Algebra(x) => Value::Envelope(EnvelopeElement::left(&x)),
                    v => return Err(at(e.span, format!("o(…) needs an algebra element, found {}", v.kind()))),
                },
                "xi" => {
                    let ExprKind::Ident(name) = &a.kind else {
                        return Err(at(a.span, "xi(…) takes a variable name"));
                    };
                    let i = tower
                        .var_index(name)
                        .ok_or_else(|| at(a.span, format!("`{name}` is not a tower variable")))?;
                    if i < tower.sub_len() {
                        return Err(at(a.span, format!("`{name}` belongs to the sub-tower, so xi({name}) = 0")));
                    }
                    Value::Envelope(xi_power(tower, i, 1).map_err(|err| at(e.span, err))?)
                }
                "d" => match self.eval(a)? {
                    Value::Algebra(x) => Value::Algebra(x.differential()),
                    Value::Envelope(x) => Value::Envelope(x.differential()),
                    Value::Module(_) => return Err(at(e.span, "d(…) of module elements is not available here")),
                },
                other => return Err(at(e.span, format!("unknown function `{other}`"))),
            },
        })
    }

    fn add(&self, span: Span, a: Value, b: Value, subtract: bool) -> Result<Value> {
        let b = if subtract {
            match b {
                Value::Algebra(x) => Value::Algebra(-&x),
                Value::Envelope(x) => Value::Envelope(x.neg()),
                Value::Module(x) => Value::Module(x.neg()),
            }
        } else {
            b
        };
        Ok(match (a, b) {
            (Value::Algebra(x), Value::Algebra(y)) => Value::Algebra(&x + &y),
            (Value::Envelope(x), Value::Envelope(y)) => Value::Envelope(x.add(&y)),
            (Value::Envelope(x), Value::Algebra(y)) => Value::Envelope(x.add(&EnvelopeElement::right(&y))),
            (Value::Algebra(x), Value::Envelope(y)) => Value::Envelope(EnvelopeElement::right(&x).add(&y)),
            (Value::Module(x), Value::Module(y)) => Value::Module(x.add(&y)),
            (Value::Module(x), Value::Algebra(y)) | (Value::Algebra(y), Value::Module(x)) if y.is_zero() => {
                Value::Module(x)
            }
            (a, b) => return Err(at(span, format!("cannot add {} and {}", a.kind(), b.kind()))),
        })
    }

    fn mul(&self, span: Span, a: Value, b: Value) -> Result<Value> {
        Ok(match (a, b) {
            (Value::Algebra(x), Value::Algebra(y)) => Value::Algebra(&x * &y),
            (Value::Envelope(x), Value::Envelope(y)) => Value::Envelope(x.mul(&y)),
            (Value::Envelope(x), Value::Algebra(y)) => Value::Envelope(x.mul(&EnvelopeElement::right(&y))),
            (Value::Algebra(x), Value::Envelope(y)) => Value::Envelope(EnvelopeElement::right(&x).mul(&y)),
            (Value::Module(x), Value::Algebra(y)) => Value::Module(x.mul_right(&y)),
            (Value::Algebra(x), Value::Module(y)) => {
                let c = constant_of(&x).ok_or_else(|| {
                    at(span, "modules are right modules: write the generator first, as in e·x")
                })?;
                Value::Module(y.scale(&c))
            }
            (a, b) => return Err(at(span, format!("cannot multiply {} by {}", a.kind(), b.kind()))),
        })
    }

    pub fn algebra(&self, e: &Expr) -> Result<AlgebraElement> {
        match self.eval(e)? {
            Value::Algebra(x) => Ok(x),
            v => Err(at(e.span, format!("expected an algebra element, found {}", v.kind()))),
        }
    }

    pub fn envelope(&self, e: &Expr) -> Result<EnvelopeElement> {
        match self.eval(e)? {
            Value::Algebra(x) => Ok(EnvelopeElement::right(&x)),
            Value::Envelope(x) => Ok(x),
            v => Err(at(e.span, format!("expected an envelope element, found {}", v.kind()))),
        }
    }

    pub fn module_element(&self, e: &Expr) -> Result<ModuleElement> {
        match self.eval(e)? {
            Value::Module(x) => Ok(x),
            Value::Algebra(x) if x.is_zero() => Ok(ModuleElement::zero(self.tower)),
            v => Err(at(e.span, format!("expected a module element, found {}", v.kind()))),
        }
    }
}

fn constant_of(x: &AlgebraElement) -> Option<crate::base_ring::Scalar> {
    let field = x.tower().field();
    match x.terms().len() {
        0 => Some(field.zero()),
        1 => {
            let (m, c) = x.terms().iter().next()?;
            m.is_one().then(|| c.clone())
        }
        _ => None,
    }
}

/// The objects a session declares, with names resolved and validated.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub field: Field,
    pub base: Arc<BaseRing>,
    pub tower_name: String,
    pub tower: Arc<Tower>,
    pub modules: Vec<(String, Arc<SemifreeModule>)>,
}

impl Workspace {
    pub fn scope(&self) -> Scope<'_> {
        Scope {
            tower: &self.tower,
            gens: &[],
        }
    }

    /// A declared module, or the free module when `name` is the tower.
    pub fn module(&self, name: &str) -> Option<Arc<SemifreeModule>> {
        if let Some((_, m)) = self.modules.iter().find(|(n, _)| n == name) {
            return Some(m.clone());
        }
        (name == self.tower_name).then(|| Arc::new(SemifreeModule::free(&self.tower, "1")))
    }
}

fn to_u32(v: i64, span: Span, what: &str) -> Result<u32> {
    u32::try_from(v).map_err(|_| at(span, format!("{what} must be non-negative, found {v}")))
}

/// Resolves names and builds the ring, tower and modules of a session.
pub fn build_workspace(model: &SessionModel) -> Result<Workspace> {
    let field = match model.field {
        None | Some(FieldDecl::Rational) => Field::Rational,
        Some(FieldDecl::Prime(p)) => Field::prime(p)?,
    };
    let mut vars = Vec::with_capacity(model.base.len());
    for (name, w, span) in &model.base {
        if *w <= 0 {
            return Err(at(*span, format!("base variable {name} needs a positive weight")));
        }
        vars.push((name.as_str(), to_u32(*w, *span, "weight")?));
    }
    let base = BaseRing::new(field, &vars).map_err(|e| {
        let span = model.base.first().map_or_else(Span::default, |b| b.2);
        at(span, e)
    })?;

    let (tower_name, tower) = match &model.tower {
        None => ("B".to_string(), Tower::new(base.clone(), crate::dg_algebra::Flavor::Divided)),
        Some(t) => {
            let mut tower = Tower::new(base.clone(), t.flavor);
            for v in &t.vars {
                let target = match &v.diff {
                    Some(e) => Scope { tower: &tower, gens: &[] }.algebra(e)?,
                    None => AlgebraElement::zero(&tower),
                };
                let degree = to_u32(v.degree, v.span, "degree")?;
                let weight = to_u32(v.weight, v.span, "weight")?;
                let span = v.diff.as_ref().map_or(v.span, |e| e.span);
                tower = tower.adjoin(&v.name, degree, weight, &target).map_err(|e| at(span, e))?;
            }
            let sub = match &t.over {
                None => 0,
                Some(name) => {
                    tower
                        .var_index(name)
                        .ok_or_else(|| at(t.span, format!("`{name}` is not a variable of {}", t.name)))?
                        + 1
                }
            };
            (t.name.clone(), tower.with_sub_tower(sub).map_err(|e| at(t.span, e))?)
        }
    };

    let mut modules: Vec<(String, Arc<SemifreeModule>)> = Vec::new();
    for m in &model.modules {
        if m.name == tower_name || modules.iter().any(|(n, _)| *n == m.name) {
            return Err(at(m.span, format!("the name {} is already in use", m.name)));
        }
        let mut gens = Vec::with_capacity(m.gens.len());
        for g in &m.gens {
            if tower.var_index(&g.name).is_some() || base.index_of(&g.name).is_some() {
                return Err(at(g.span, format!("{} clashes with a ring variable", g.name)));
            }
            gens.push(Generator::new(g.name.clone(), g.degree, g.weight));
        }
        let scope = Scope {
            tower: &tower,
            gens: &gens,
        };
        let mut diff = Vec::with_capacity(gens.len());
        for g in &m.gens {
            diff.push(match &g.diff {
                Some(e) => scope.module_element(e)?,
                None => ModuleElement::zero(&tower),
            });
        }
        let module = SemifreeModule::new(&tower, gens, diff).map_err(|e| at(m.span, e))?;
        modules.push((m.name.clone(), Arc::new(module)));
    }
    Ok(Workspace {
        field,
        base,
        tower_name,
        tower,
        modules,
    })
}
