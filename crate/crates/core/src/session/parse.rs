use super::ast::*;
use crate::dg_algebra::Flavor;
use crate::dg_module::BidegreeWindow;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(&'static str),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: Span,
}

fn err(span: Span, message: impl Into<String>) -> Error {
    Error::Parse {
        line: span.line,
        col: span.col,
        message: message.into(),
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Splits one line (comment already removed) into tokens; `col0` is the
/// column of the first character.
fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col: col0 + i };
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                span,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse::<i64>().map_err(|_| err(span, format!("integer {s} is too large")))?;
            out.push(Token { tok: Tok::Int(n), span });
            continue;
        }
        let sym = match c {
            '+' => "+",
            '-' | '−' => "-",
            '·' | '⋅' => "·",
            '*' => "*",
            '^' => "^",
            '(' => "(",
            ')' => ")",
            ',' => ",",
            ':' => ":",
            '/' => "/",
            '=' => "=",
            '@' => "@",
            '.' if chars.get(i + 1) == Some(&'.') => {
                i += 1;
                ".."
            }
            _ => return Err(err(span, format!("unexpected character `{c}`"))),
        };
        i += 1;
        out.push(Token { tok: Tok::Sym(sym), span });
    }
    Ok(out)
}

/// Cursor over the tokens of one line.
struct Line {
    toks: Vec<Token>,
    pos: usize,
    end: Span,
}

impl Line {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn span(&self) -> Span {
        self.toks.get(self.pos).map_or(self.end, |t| t.span)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            Err(err(self.span(), format!("expected `{sym}`{}", self.found())))
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(Tok::Ident(s)) => format!(", found `{s}`"),
            Some(Tok::Int(n)) => format!(", found `{n}`"),
            Some(Tok::Sym(s)) => format!(", found `{s}`"),
            None => ", found end of line".to_string(),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Span)> {
        let span = self.span();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok((s, span))
            }
            _ => Err(err(span, format!("expected {what}{}", self.found()))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let span = self.span();
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(err(span, format!("expected `{kw}`{}", self.found()))),
        }
    }

    fn int(&mut self) -> Result<i64> {
        let span = self.span();
        let neg = self.eat("-");
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(if neg { -n } else { n })
            }
            _ => Err(err(span, format!("expected an integer{}", self.found()))),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(err(self.span(), format!("unexpected trailing input{}", self.found())))
        }
    }

    // sum := term (('+' | '-') term)*
    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let span = lhs.span;
            if self.eat("+") {
                let rhs = self.term()?;
                lhs = Expr {
                    kind: ExprKind::Add(Box::new(lhs), Box::new(rhs)),
                    span,
                };
            } else if self.eat("-") {
                let rhs = self.term()?;
                lhs = Expr {
                    kind: ExprKind::Sub(Box::new(lhs), Box::new(rhs)),
                    span,
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    // term := '-' term | product
    fn term(&mut self) -> Result<Expr> {
        let span = self.span();
        if self.eat("-") {
            let inner = self.term()?;
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                span,
            });
        }
        self.product()
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::Sym("(")))
    }

    // product := power (('·' | '*')? power)*
    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        loop {
            let explicit = self.eat("·") || self.eat("*");
            if !explicit && !self.starts_primary() {
                return Ok(lhs);
            }
            let rhs = self.power()?;
            let span = lhs.span;
            lhs = Expr {
                kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        let span = self.span();
        let n = self.int()?;
        u32::try_from(n).map_err(|_| err(span, format!("exponent {n} must be a non-negative integer")))
    }

    // power := primary ('^' ('(' int ')' | int))*
    fn power(&mut self) -> Result<Expr> {
        let mut base = self.primary()?;
        while self.eat("^") {
            let span = base.span;
            if self.eat("(") {
                let m = self.exponent()?;
                self.expect(")")?;
                base = Expr {
                    kind: ExprKind::DividedPower(Box::new(base), m),
                    span,
                };
            } else {
                let m = self.exponent()?;
                base = Expr {
                    kind: ExprKind::Power(Box::new(base), m),
                    span,
                };
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        let span = self.span();
        match self.next().map(|t| t.tok) {
            Some(Tok::Int(n)) => {
                if self.eat("/") {
                    let dspan = self.span();
                    match self.next().map(|t| t.tok) {
                        Some(Tok::Int(0)) => Err(err(dspan, "division by zero")),
                        Some(Tok::Int(d)) => Ok(Expr {
                            kind: ExprKind::Number(n, d),
                            span,
                        }),
                        _ => Err(err(dspan, "expected a denominator")),
                    }
                } else {
                    Ok(Expr {
                        kind: ExprKind::Number(n, 1),
                        span,
                    })
                }
            }
            Some(Tok::Ident(name)) => {
                if matches!(name.as_str(), "o" | "xi" | "d") && self.eat("(") {
                    let arg = self.sum()?;
                    self.expect(")")?;
                    Ok(Expr {
                        kind: ExprKind::Call(name, Box::new(arg)),
                        span,
                    })
                } else {
                    Ok(Expr {
                        kind: ExprKind::Ident(name),
                        span,
                    })
                }
            }
            Some(Tok::Sym("(")) => {
                let e = self.sum()?;
                self.expect(")")?;
                Ok(e)
            }
            Some(Tok::Sym(s)) => Err(err(span, format!("expected an expression, found `{s}`"))),
            None => Err(err(span, "expected an expression, found end of line")),
        }
    }

    fn expression(&mut self) -> Result<Expr> {
        let e = self.sum()?;
        self.finish()?;
        Ok(e)
    }

    fn window(&mut self) -> Result<BidegreeWindow> {
        let span = self.span();
        let mut parts = vec![self.int()?];
        while self.eat(":") {
            parts.push(self.int()?);
        }
        let w = match parts[..] {
            [a, b, c] => BidegreeWindow::new(a, b, c),
            [a, b, c, d] => BidegreeWindow::with_weights(a, b, c, d),
            _ => return Err(err(span, "a window is hmin:hmax:wmax or hmin:hmax:wmin:wmax")),
        };
        w.map_err(|e| err(span, e.to_string()))
    }

    fn module_ref(&mut self) -> Result<ModuleRef> {
        let (name, _) = self.ident("a module name")?;
        if !self.eat("@") {
            return Ok(ModuleRef { name, level: None });
        }
        let (j, span) = self.ident("`J` followed by a level")?;
        let level = j
            .strip_prefix('J')
            .and_then(|l| l.parse::<u32>().ok())
            .ok_or_else(|| err(span, format!("expected `J` followed by a level, found `{j}`")))?;
        Ok(ModuleRef {
            name,
            level: Some(level),
        })
    }

    /// `NAME : deg D, wt W[, d = EXPR]`
    fn declaration(&mut self) -> Result<VarDecl> {
        let (name, span) = self.ident("a name")?;
        check_name(&name, span)?;
        self.expect(":")?;
        self.keyword("deg")?;
        let degree = self.int()?;
        self.expect(",")?;
        self.keyword("wt")?;
        let weight = self.int()?;
        let diff = if self.eat(",") {
            self.keyword("d")?;
            self.expect("=")?;
            Some(self.sum()?)
        } else {
            None
        };
        self.finish()?;
        Ok(VarDecl {
            name,
            degree,
            weight,
            diff,
            span,
        })
    }
}

const RESERVED: [&str; 11] = ["o", "xi", "d", "field", "base", "tower", "module", "run", "deg", "wt", "over"];

fn check_name(name: &str, span: Span) -> Result<()> {
    if RESERVED.contains(&name) {
        Err(err(span, format!("`{name}` is reserved")))
    } else {
        Ok(())
    }
}

fn parse_field(line: &mut Line) -> Result<FieldDecl> {
    let (name, span) = line.ident("a field (Q, Fp or GF(p))")?;
    let f = if name == "Q" {
        FieldDecl::Rational
    } else if name == "GF" {
        line.expect("(")?;
        let p = line.int()?;
        line.expect(")")?;
        FieldDecl::Prime(p as u64)
    } else if let Some(p) = name.strip_prefix('F').and_then(|p| p.parse::<u64>().ok()) {
        FieldDecl::Prime(p)
    } else {
        return Err(err(span, format!("unknown field `{name}`")));
    };
    if let FieldDecl::Prime(p) = f {
        crate::base_ring::Field::prime(p).map_err(|e| err(span, e.to_string()))?;
    }
    line.finish()?;
    Ok(f)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Tower,
    Module,
    Run,
}

fn parse_command(name: &str, span: Span, line: &mut Line) -> Result<CommandKind> {
    let kind = match name {
        "check-axioms" => {
            let weight_bound = if line.at_end() { None } else { Some(line.int()?) };
            let samples = if line.at_end() {
                None
            } else {
                let s = line.span();
                Some(usize::try_from(line.int()?).map_err(|_| err(s, "sample count must be non-negative"))?)
            };
            CommandKind::CheckAxioms { weight_bound, samples }
        }
        "eval" => return Ok(CommandKind::Eval(line.expression()?)),
        "omega" => return Ok(CommandKind::Omega(line.expression()?)),
        "filtration-level" => return Ok(CommandKind::FiltrationLevel(line.expression()?)),
        "envelope-basis" => CommandKind::EnvelopeBasis(if line.at_end() { None } else { Some(line.window()?) }),
        "ext" => {
            let m = line.module_ref()?;
            let l = line.module_ref()?;
            let i_min = line.int()?;
            line.expect("..")?;
            let i_max = line.int()?;
            if i_max < i_min {
                return Err(err(span, format!("empty range {i_min}..{i_max}")));
            }
            let window = if line.at_end() { None } else { Some(line.window()?) };
            CommandKind::Ext {
                m,
                l,
                i_min,
                i_max,
                window,
            }
        }
        "naive-lift" => CommandKind::NaiveLift(line.ident("a module name")?.0),
        "tate" => {
            line.expect("(")?;
            let mut ideal = vec![line.sum()?];
            while line.eat(",") {
                ideal.push(line.sum()?);
            }
            line.expect(")")?;
            let hbound = line.int()?;
            let wbound = line.int()?;
            CommandKind::Tate { ideal, hbound, wbound }
        }
        "homology" => {
            let hdeg = line.int()?;
            let wbound = line.int()?;
            CommandKind::Homology { hdeg, wbound }
        }
        _ => return Err(err(span, Error::UnknownCommand(name.to_string()).to_string())),
    };
    line.finish()?;
    Ok(kind)
}

/// Parses a session file into its syntax tree. Names are resolved later.
pub fn parse_session(text: &str) -> Result<SessionModel> {
    let mut model = SessionModel::default();
    let mut section = Section::None;
    for (k, raw) in text.lines().enumerate() {
        let lineno = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.chars().take_while(|c| c.is_whitespace()).count();
        let body: String = content.chars().skip(indent).collect();
        let first: String = body.chars().take_while(|c| !c.is_whitespace()).collect();
        let span = Span {
            line: lineno,
            col: indent + 1,
        };
        let end = Span {
            line: lineno,
            col: content.chars().count() + 1,
        };

        if section == Section::Run && !matches!(first.as_str(), "field" | "base" | "tower" | "module" | "run") {
            let rest_col = indent + first.chars().count() + 1;
            let rest: String = body.chars().skip(first.chars().count()).collect();
            let mut line = Line {
                toks: lex(&rest, lineno, rest_col)?,
                pos: 0,
                end,
            };
            let kind = parse_command(&first, span, &mut line)?;
            model.commands.push(Command { kind, span });
            continue;
        }

        let mut line = Line {
            toks: lex(&body, lineno, indent + 1)?,
            pos: 0,
            end,
        };
        match first.as_str() {
            "field" => {
                line.next();
                if model.field.is_some() {
                    return Err(err(span, "the field is already declared"));
                }
                model.field = Some(parse_field(&mut line)?);
                section = Section::None;
            }
            "base" => {
                line.next();
                if !model.base.is_empty() {
                    return Err(err(span, "the base ring is already declared"));
                }
                while !line.at_end() {
                    let (name, s) = line.ident("a base variable")?;
                    check_name(&name, s)?;
                    line.expect(":")?;
                    let w = line.int()?;
                    model.base.push((name, w, s));
                }
                section = Section::None;
            }
            "tower" => {
                line.next();
                if model.tower.is_some() {
                    return Err(err(span, "only one tower per session"));
                }
                let (name, s) = line.ident("a tower name")?;
                check_name(&name, s)?;
                let (flavor, fs) = line.ident("`divided` or `ordinary`")?;
                let flavor = match flavor.as_str() {
                    "divided" => Flavor::Divided,
                    "ordinary" => Flavor::Ordinary,
                    other => return Err(err(fs, format!("unknown flavor `{other}`"))),
                };
                let over = if line.at_end() {
                    None
                } else {
                    line.keyword("over")?;
                    Some(line.ident("a variable name")?.0)
                };
                line.finish()?;
                model.tower = Some(TowerDecl {
                    name,
                    flavor,
                    over,
                    vars: Vec::new(),
                    span,
                });
                section = Section::Tower;
            }
            "module" => {
                line.next();
                let (name, s) = line.ident("a module name")?;
                check_name(&name, s)?;
                line.finish()?;
                model.modules.push(ModuleDecl {
                    name,
                    gens: Vec::new(),
                    span,
                });
                section = Section::Module;
            }
            "run" => {
                line.next();
                line.finish()?;
                section = Section::Run;
            }
            _ => match section {
                Section::Tower => {
                    let decl = line.declaration()?;
                    model.tower.as_mut().expect("inside a tower").vars.push(decl);
                }
                Section::Module => {
                    let decl = line.declaration()?;
                    model.modules.last_mut().expect("inside a module").gens.push(decl);
                }
                Section::None | Section::Run => {
                    return Err(err(span, format!("expected a section keyword, found `{first}`")));
                }
            },
        }
    }
    Ok(model)
}

/// Parses a single expression on its own.
pub fn parse_expression(text: &str) -> Result<Expr> {
    let mut line = Line {
        toks: lex(text, 1, 1)?,
        pos: 0,
        end: Span {
            line: 1,
            col: text.chars().count() + 1,
        },
    };
    let e = line.expression()?;
    line.finish()?;
    Ok(e)
}

/// Parses one command line, as it would appear in a `run` section.
pub fn parse_command_line(text: &str) -> Result<Command> {
    let indent = text.chars().take_while(|c| c.is_whitespace()).count();
    let body: String = text.chars().skip(indent).collect();
    let first: String = body.chars().take_while(|c| !c.is_whitespace()).collect();
    let span = Span { line: 1, col: indent + 1 };
    if first.is_empty() {
        return Err(err(span, "expected a command"));
    }
    let rest: String = body.chars().skip(first.chars().count()).collect();
    let mut line = Line {
        toks: lex(&rest, 1, indent + first.chars().count() + 1)?,
        pos: 0,
        end: Span {
            line: 1,
            col: text.chars().count() + 1,
        },
    };
    let kind = parse_command(&first, span, &mut line)?;
    Ok(Command { kind, span })
}
