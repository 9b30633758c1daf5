//! User-facing scalar expression language.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' unary)?          -- right associative, integer exponent
//! atom   := number | ident | ident '(' expr ')' | '(' expr ')'
//! ```
//!
//! Builtins: `exp ln sin cos sinh cosh tan atan sqrt abs`, and the constant
//! `pi`. Every other identifier must be a declared variable or a bound
//! parameter. Exponents must be constant integers so that powers stay
//! branch-free on jets.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::jet::Jet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Tan,
    Atan,
    Sqrt,
    Abs,
}

impl Func {
    pub const ALL: [Func; 10] = [
        Func::Exp,
        Func::Ln,
        Func::Sin,
        Func::Cos,
        Func::Sinh,
        Func::Cosh,
        Func::Tan,
        Func::Atan,
        Func::Sqrt,
        Func::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tan => "tan",
            Func::Atan => "atan",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }

    fn apply(self, a: &Jet) -> Result<Jet> {
        match self {
            Func::Exp => Ok(a.exp()),
            Func::Ln => a.ln(),
            Func::Sin => Ok(a.sin()),
            Func::Cos => Ok(a.cos()),
            Func::Sinh => Ok(a.sinh()),
            Func::Cosh => Ok(a.cosh()),
            Func::Tan => a.tan(),
            Func::Atan => a.atan(),
            Func::Sqrt => a.sqrt(),
            Func::Abs => a.abs_real(),
        }
    }
}

/// Expression tree. Identifiers are kept by name; [`Expr`] resolves them.
#[derive(Debug, Clone, PartialEq)]
pub enum Ast {
    Num(f64),
    Ident(String),
    Neg(Box<Ast>),
    Bin(BinOp, Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i32),
    Call(Func, Box<Ast>),
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ast::Num(x) => write!(f, "{x:?}"),
            Ast::Ident(s) => write!(f, "{s}"),
            Ast::Neg(a) => write!(f, "(-{a})"),
            Ast::Bin(op, a, b) => {
                let s = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                };
                write!(f, "({a} {s} {b})")
            }
            Ast::Pow(a, n) if *n < 0 => write!(f, "({a}^(-{}))", -(*n as i64)),
            Ast::Pow(a, n) => write!(f, "({a}^{n})"),
            Ast::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::SyntaxError {
        offset,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let value: f64 = text
                    .parse()
                    .map_err(|_| syntax(start, format!("malformed number `{text}`")))?;
                out.push((Tok::Num(value), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

const ADD_BP: u8 = 10;
const MUL_BP: u8 = 20;
const NEG_BP: u8 = 25;
const POW_BP: u8 = 30;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, o)| *o).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect_rparen(&mut self) -> Result<()> {
        match self.next() {
            Some((Tok::RParen, _)) => Ok(()),
            Some((t, o)) => Err(syntax(o, format!("expected `)`, found {t:?}"))),
            None => Err(syntax(self.end, "expected `)`, found end of input")),
        }
    }

    fn expr(&mut self, min_bp: u8) -> Result<Ast> {
        let mut lhs = self.prefix()?;
        loop {
            let (op, bp) = match self.peek() {
                Some(Tok::Plus) => (Some(BinOp::Add), ADD_BP),
                Some(Tok::Minus) => (Some(BinOp::Sub), ADD_BP),
                Some(Tok::Star) => (Some(BinOp::Mul), MUL_BP),
                Some(Tok::Slash) => (Some(BinOp::Div), MUL_BP),
                Some(Tok::Caret) => (None, POW_BP),
                Some(Tok::RParen) | None => break,
                Some(t) => {
                    let t = t.clone();
                    return Err(syntax(self.offset(), format!("unexpected {t:?}")));
                }
            };
            if bp < min_bp {
                break;
            }
            self.next();
            match op {
                Some(op) => {
                    let rhs = self.expr(bp + 1)?;
                    lhs = Ast::Bin(op, Box::new(lhs), Box::new(rhs));
                }
                None => {
                    let at = self.offset();
                    // right associative; the exponent may carry a unary minus
                    let rhs = self.expr(POW_BP - 1)?;
                    let n =
                        integer_exponent(&rhs).ok_or(Error::NonIntegerExponent { offset: at })?;
                    lhs = Ast::Pow(Box::new(lhs), n);
                }
            }
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Ast> {
        let end = self.end;
        match self.next() {
            Some((Tok::Num(x), _)) => Ok(Ast::Num(x)),
            Some((Tok::Minus, _)) => Ok(Ast::Neg(Box::new(self.expr(NEG_BP)?))),
            Some((Tok::LParen, _)) => {
                let e = self.expr(0)?;
                self.expect_rparen()?;
                Ok(e)
            }
            Some((Tok::Ident(name), off)) => {
                if let Some(func) = Func::from_name(&name) {
                    match self.next() {
                        Some((Tok::LParen, _)) => {}
                        Some((_, o)) => {
                            return Err(syntax(o, format!("expected `(` after `{name}`")))
                        }
                        None => return Err(syntax(end, format!("expected `(` after `{name}`"))),
                    }
                    let arg = self.expr(0)?;
                    self.expect_rparen()?;
                    Ok(Ast::Call(func, Box::new(arg)))
                } else {
                    let _ = off;
                    Ok(Ast::Ident(name))
                }
            }
            Some((t, o)) => Err(syntax(o, format!("expected an expression, found {t:?}"))),
            None => Err(syntax(end, "expected an expression, found end of input")),
        }
    }
}

/// Folds a constant exponent; `None` unless it is an exact integer.
fn integer_exponent(ast: &Ast) -> Option<i32> {
    fn fold(a: &Ast) -> Option<f64> {
        match a {
            Ast::Num(x) => Some(*x),
            Ast::Neg(b) => fold(b).map(|x| -x),
            Ast::Pow(b, n) => fold(b).map(|x| x.powi(*n)),
            _ => None,
        }
    }
    let x = fold(ast)?;
    if x.fract() == 0.0 && x.abs() <= 64.0 {
        Some(x as i32)
    } else {
        None
    }
}

/// Parses source text into an unresolved [`Ast`].
pub fn parse(source: &str) -> Result<Ast> {
    let toks = lex(source)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: source.len(),
    };
    let ast = p.expr(0)?;
    if let Some((t, o)) = p.toks.get(p.pos) {
        return Err(syntax(*o, format!("unexpected {t:?}")));
    }
    Ok(ast)
}

/// Names visible to an expression: positional variables (bound to jets at
/// evaluation time) and real parameters (bound now).
#[derive(Debug, Clone, Default)]
pub struct Scope {
    pub variables: Vec<String>,
    pub params: BTreeMap<String, f64>,
}

impl Scope {
    pub fn new(variables: &[&str]) -> Self {
        Self {
            variables: variables.iter().map(|s| s.to_string()).collect(),
            params: BTreeMap::new(),
        }
    }

    pub fn with_params(mut self, params: &BTreeMap<String, f64>) -> Self {
        self.params
            .extend(params.iter().map(|(k, v)| (k.clone(), *v)));
        self
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Const(f64),
    Var(usize),
    Neg(Box<Node>),
    Bin(BinOp, Box<Node>, Box<Node>),
    Pow(Box<Node>, i32),
    Call(Func, Box<Node>),
}

/// A parsed and resolved expression, ready for repeated jet evaluation.
#[derive(Debug, Clone)]
pub struct Expr {
    source: String,
    ast: Ast,
    root: Node,
    variables: Vec<String>,
    used: Vec<bool>,
}

impl Expr {
    /// Parses `source` and resolves every identifier against `scope`.
    pub fn parse(source: &str, scope: &Scope) -> Result<Self> {
        let ast = parse(source)?;
        let mut used = vec![false; scope.variables.len()];
        let root = resolve(&ast, source, scope, &mut used)?;
        Ok(Self {
            source: source.to_string(),
            ast,
            root,
            variables: scope.variables.clone(),
            used,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn ast(&self) -> &Ast {
        &self.ast
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    /// Whether the variable at `index` appears in the expression.
    pub fn uses(&self, index: usize) -> bool {
        self.used.get(index).copied().unwrap_or(false)
    }

    pub fn uses_name(&self, name: &str) -> bool {
        self.variables
            .iter()
            .position(|v| v == name)
            .is_some_and(|i| self.used[i])
    }

    /// Evaluates over jets. `vars` follows the scope's variable order; all
    /// jets must share a base point and order. Unused slots are ignored, so
    /// callers may pass placeholders for variables that are costly or
    /// undefined at the current point.
    pub fn eval_jet(&self, vars: &[Jet]) -> Result<Jet> {
        let template = vars.first().ok_or_else(|| {
            Error::OrderMismatch("expression evaluated without any variable bindings".into())
        })?;
        if vars.len() != self.variables.len() {
            return Err(Error::OrderMismatch(format!(
                "expected {} bindings, got {}",
                self.variables.len(),
                vars.len()
            )));
        }
        eval(&self.root, vars, template)
    }

    /// Plain evaluation at real variable values.
    pub fn eval(&self, vars: &[f64]) -> Result<f64> {
        let jets: Vec<Jet> = vars
            .iter()
            .map(|x| Jet::constant((*x).into(), [0.0, 0.0], 0))
            .collect::<Result<_>>()?;
        Ok(self.eval_jet(&jets)?.value().re)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)
    }
}

fn resolve(ast: &Ast, source: &str, scope: &Scope, used: &mut [bool]) -> Result<Node> {
    Ok(match ast {
        Ast::Num(x) => Node::Const(*x),
        Ast::Ident(name) => {
            if let Some(i) = scope.variables.iter().position(|v| v == name) {
                used[i] = true;
                Node::Var(i)
            } else if let Some(v) = scope.params.get(name) {
                Node::Const(*v)
            } else if name == "pi" {
                Node::Const(std::f64::consts::PI)
            } else {
                return Err(Error::UnknownIdentifier {
                    name: name.clone(),
                    offset: find_ident(source, name),
                });
            }
        }
        Ast::Neg(a) => Node::Neg(Box::new(resolve(a, source, scope, used)?)),
        Ast::Bin(op, a, b) => Node::Bin(
            *op,
            Box::new(resolve(a, source, scope, used)?),
            Box::new(resolve(b, source, scope, used)?),
        ),
        Ast::Pow(a, n) => Node::Pow(Box::new(resolve(a, source, scope, used)?), *n),
        Ast::Call(func, a) => Node::Call(*func, Box::new(resolve(a, source, scope, used)?)),
    })
}

fn find_ident(source: &str, name: &str) -> usize {
    let bytes = source.as_bytes();
    let mut from = 0;
    while let Some(pos) = source[from..].find(name) {
        let start = from + pos;
        let end = start + name.len();
        let before_ok =
            start == 0 || !(bytes[start - 1].is_ascii_alphanumeric() || bytes[start - 1] == b'_');
        let after_ok =
            end == bytes.len() || !(bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_');
        if before_ok && after_ok {
            return start;
        }
        from = end;
    }
    0
}

fn eval(node: &Node, vars: &[Jet], template: &Jet) -> Result<Jet> {
    match node {
        Node::Const(x) => Ok(template.real_like(*x)),
        Node::Var(i) => Ok(vars[*i].clone()),
        Node::Neg(a) => Ok(-eval(a, vars, template)?),
        Node::Bin(op, a, b) => {
            let a = eval(a, vars, template)?;
            let b = eval(b, vars, template)?;
            match op {
                BinOp::Add => a.try_add(&b),
                BinOp::Sub => a.try_sub(&b),
                BinOp::Mul => a.try_mul(&b),
                BinOp::Div => a.checked_div(&b),
            }
        }
        Node::Pow(a, n) => eval(a, vars, template)?.powi(*n),
        Node::Call(f, a) => f.apply(&eval(a, vars, template)?),
    }
}
