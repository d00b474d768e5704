use std::fmt;

use crate::dg_algebra::Flavor;
use crate::dg_module::BidegreeWindow;

/// 1-based line and column (in characters) of a token.
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

/// Positions never distinguish two syntax trees, so a printed and re-parsed
/// session compares equal to the original.
impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Eq for Span {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    /// `num/den` with `den > 0`; integers have `den = 1`.
    Number(i64, i64),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// `a^(m)`
    DividedPower(Box<Expr>, u32),
    /// `a^m`
    Power(Box<Expr>, u32),
    /// `o(a)`, `xi(X)`, `d(a)`
    Call(String, Box<Expr>),
}

/// An expression with the position of its first token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldDecl {
    Rational,
    Prime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarDecl {
    pub name: String,
    pub degree: i64,
    pub weight: i64,
    pub diff: Option<Expr>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerDecl {
    pub name: String,
    pub flavor: Flavor,
    /// Last variable of the sub-tower `A`; `None` means `A` is the base ring.
    pub over: Option<String>,
    pub vars: Vec<VarDecl>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: String,
    pub gens: Vec<VarDecl>,
    pub span: Span,
}

/// A module name, optionally tensored with a filtration quotient: `N@J2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRef {
    pub name: String,
    pub level: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommandKind {
    CheckAxioms {
        weight_bound: Option<i64>,
        samples: Option<usize>,
    },
    Eval(Expr),
    EnvelopeBasis(Option<BidegreeWindow>),
    Omega(Expr),
    FiltrationLevel(Expr),
    Ext {
        m: ModuleRef,
        l: ModuleRef,
        i_min: i64,
        i_max: i64,
        window: Option<BidegreeWindow>,
    },
    NaiveLift(String),
    Tate {
        ideal: Vec<Expr>,
        hbound: i64,
        wbound: i64,
    },
    Homology {
        hdeg: i64,
        wbound: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub kind: CommandKind,
    pub span: Span,
}

/// A parsed session file.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SessionModel {
    pub field: Option<FieldDecl>,
    pub base: Vec<(String, i64, Span)>,
    pub tower: Option<TowerDecl>,
    pub modules: Vec<ModuleDecl>,
    pub commands: Vec<Command>,
}

fn precedence(e: &ExprKind) -> u8 {
    match e {
        ExprKind::Add(..) | ExprKind::Sub(..) => 1,
        ExprKind::Neg(_) => 2,
        ExprKind::Mul(..) => 3,
        ExprKind::DividedPower(..) | ExprKind::Power(..) => 4,
        ExprKind::Number(_, d) if *d != 1 => 4,
        ExprKind::Number(n, _) if *n < 0 => 2,
        _ => 5,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if precedence(&e.kind) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Number(n, 1) => write!(f, "{n}"),
            ExprKind::Number(n, d) => write!(f, "{n}/{d}"),
            ExprKind::Ident(s) => write!(f, "{s}"),
            ExprKind::Neg(a) => {
                write!(f, "-")?;
                write_at(f, a, 3)
            }
            ExprKind::Add(a, b) => {
                write_at(f, a, 1)?;
                write!(f, " + ")?;
                write_at(f, b, 2)
            }
            ExprKind::Sub(a, b) => {
                write_at(f, a, 1)?;
                write!(f, " - ")?;
                write_at(f, b, 2)
            }
            ExprKind::Mul(a, b) => {
                write_at(f, a, 3)?;
                write!(f, "·")?;
                write_at(f, b, 4)
            }
            ExprKind::DividedPower(a, m) => {
                write_at(f, a, 5)?;
                write!(f, "^({m})")
            }
            ExprKind::Power(a, m) => {
                write_at(f, a, 5)?;
                write!(f, "^{m}")
            }
            ExprKind::Call(name, a) => write!(f, "{name}({a})"),
        }
    }
}

impl fmt::Display for ModuleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.level {
            Some(l) => write!(f, "{}@J{l}", self.name),
            None => write!(f, "{}", self.name),
        }
    }
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommandKind::CheckAxioms { weight_bound, samples } => {
                write!(f, "check-axioms")?;
                if let Some(w) = weight_bound {
                    write!(f, " {w}")?;
                }
                if let Some(s) = samples {
                    write!(f, " {s}")?;
                }
                Ok(())
            }
            CommandKind::Eval(e) => write!(f, "eval {e}"),
            CommandKind::EnvelopeBasis(w) => match w {
                Some(w) => write!(f, "envelope-basis {w}"),
                None => write!(f, "envelope-basis"),
            },
            CommandKind::Omega(e) => write!(f, "omega {e}"),
            CommandKind::FiltrationLevel(e) => write!(f, "filtration-level {e}"),
            CommandKind::Ext {
                m,
                l,
                i_min,
                i_max,
                window,
            } => {
                write!(f, "ext {m} {l} {i_min}..{i_max}")?;
                if let Some(w) = window {
                    write!(f, " {w}")?;
                }
                Ok(())
            }
            CommandKind::NaiveLift(n) => write!(f, "naive-lift {n}"),
            CommandKind::Tate { ideal, hbound, wbound } => {
                write!(f, "tate (")?;
                for (k, g) in ideal.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ") {hbound} {wbound}")
            }
            CommandKind::Homology { hdeg, wbound } => write!(f, "homology {hdeg} {wbound}"),
        }
    }
}

fn write_decl(f: &mut fmt::Formatter<'_>, v: &VarDecl) -> fmt::Result {
    write!(f, "  {} : deg {}, wt {}", v.name, v.degree, v.weight)?;
    if let Some(d) = &v.diff {
        write!(f, ", d = {d}")?;
    }
    writeln!(f)
}

/// Canonical text of a session; parsing it yields an equal model.
impl fmt::Display for SessionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            Some(FieldDecl::Rational) => writeln!(f, "field Q")?,
            Some(FieldDecl::Prime(p)) => writeln!(f, "field F{p}")?,
            None => {}
        }
        if !self.base.is_empty() {
            write!(f, "base")?;
            for (name, w, _) in &self.base {
                write!(f, " {name}:{w}")?;
            }
            writeln!(f)?;
        }
        if let Some(t) = &self.tower {
            write!(f, "tower {} {}", t.name, t.flavor.name())?;
            if let Some(o) = &t.over {
                write!(f, " over {o}")?;
            }
            writeln!(f)?;
            for v in &t.vars {
                write_decl(f, v)?;
            }
        }
        for m in &self.modules {
            writeln!(f, "module {}", m.name)?;
            for g in &m.gens {
                write_decl(f, g)?;
            }
        }
        if !self.commands.is_empty() {
            writeln!(f, "run")?;
            for c in &self.commands {
                writeln!(f, "  {}", c.kind)?;
            }
        }
        Ok(())
    }
}
