//! Parsing and evaluation of scalar expressions in the variables `t` and `u`.
//!
//! Problems are specified as text, e.g. `"t + 1000*atan(u)"` or
//! `"10*t*(1+150*u^3+sin(u))*exp(-t^2)/(1+2*u^2)"`. The recognized functions
//! are sin, cos, tan, atan, exp, log, sqrt and abs; `pi` and `e` parse as
//! constants. ASTs are immutable after construction and evaluation is pure,
//! so concurrent evaluation of a shared AST is safe.

mod lexer;
mod parser;

pub use lexer::{Token, TokenKind};
pub use parser::parse;

use std::collections::BTreeSet;
use std::fmt;

/// The two admissible variable names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    T,
    U,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::U => "u",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Atan,
    Exp,
    Log,
    Sqrt,
    Abs,
}

impl Func {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "atan" => Func::Atan,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Atan => "atan",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Node {
    Constant(f64),
    Variable(Var),
    Neg(Box<ExprAst>),
    Binary(BinOp, Box<ExprAst>, Box<ExprAst>),
    Call(Func, Box<ExprAst>),
}

/// A parsed expression tree. Each node remembers the byte offset of the
/// token that produced it so evaluation errors can point at the source.
#[derive(Debug, Clone)]
pub struct ExprAst {
    node: Node,
    pos: usize,
}

/// Structural equality; source positions are ignored.
impl PartialEq for ExprAst {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

#[derive(Debug, Clone, thiserror::Error)]
#[error("syntax error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: String) -> Self {
        ParseError { position, message }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalErrorKind {
    DivisionByZero,
    LogNonPositive,
    SqrtNegative,
    NonFinite,
}

#[derive(Debug, Clone, thiserror::Error)]
#[error("domain error at byte {position}: {}", kind_message(.kind))]
pub struct EvalError {
    pub position: usize,
    pub kind: EvalErrorKind,
}

fn kind_message(kind: &EvalErrorKind) -> &'static str {
    match kind {
        EvalErrorKind::DivisionByZero => "division by zero",
        EvalErrorKind::LogNonPositive => "logarithm of a non-positive value",
        EvalErrorKind::SqrtNegative => "square root of a negative value",
        EvalErrorKind::NonFinite => "result is not finite",
    }
}

impl ExprAst {
    pub(crate) fn new(node: Node, pos: usize) -> Self {
        ExprAst { node, pos }
    }

    /// Byte offset of the token this node came from.
    pub fn position(&self) -> usize {
        self.pos
    }

    /// Evaluates the expression at the given variable values.
    ///
    /// Division by zero, log of a non-positive value, sqrt of a negative
    /// value and non-finite intermediates are reported with the byte
    /// position of the offending node. Evaluation is deterministic: the
    /// same (ast, t, u) always produces bitwise-identical results.
    pub fn evaluate(&self, t: f64, u: f64) -> Result<f64, EvalError> {
        let value = match &self.node {
            Node::Constant(c) => *c,
            Node::Variable(Var::T) => t,
            Node::Variable(Var::U) => u,
            Node::Neg(inner) => -inner.evaluate(t, u)?,
            Node::Binary(op, left, right) => {
                let a = left.evaluate(t, u)?;
                let b = right.evaluate(t, u)?;
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => {
                        if b == 0.0 {
                            return Err(EvalError {
                                position: self.pos,
                                kind: EvalErrorKind::DivisionByZero,
                            });
                        }
                        a / b
                    }
                    BinOp::Pow => a.powf(b),
                }
            }
            Node::Call(func, arg) => {
                let x = arg.evaluate(t, u)?;
                match func {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Tan => x.tan(),
                    Func::Atan => x.atan(),
                    Func::Exp => x.exp(),
                    Func::Log => {
                        if x <= 0.0 {
                            return Err(EvalError {
                                position: self.pos,
                                kind: EvalErrorKind::LogNonPositive,
                            });
                        }
                        x.ln()
                    }
                    Func::Sqrt => {
                        if x < 0.0 {
                            return Err(EvalError {
                                position: self.pos,
                                kind: EvalErrorKind::SqrtNegative,
                            });
                        }
                        x.sqrt()
                    }
                    Func::Abs => x.abs(),
                }
            }
        };
        if !value.is_finite() {
            return Err(EvalError {
                position: self.pos,
                kind: EvalErrorKind::NonFinite,
            });
        }
        Ok(value)
    }

    /// The set of variable names appearing in the tree. Used to validate
    /// that p(t) has no `u` and g(u) has no `t`.
    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut vars = BTreeSet::new();
        self.collect_vars(&mut vars);
        vars
    }

    fn collect_vars(&self, vars: &mut BTreeSet<Var>) {
        match &self.node {
            Node::Constant(_) => {}
            Node::Variable(v) => {
                vars.insert(*v);
            }
            Node::Neg(inner) => inner.collect_vars(vars),
            Node::Binary(_, left, right) => {
                left.collect_vars(vars);
                right.collect_vars(vars);
            }
            Node::Call(_, arg) => arg.collect_vars(vars),
        }
    }

    fn precedence(&self) -> u8 {
        match &self.node {
            Node::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            Node::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
            Node::Neg(_) => 3,
            Node::Binary(BinOp::Pow, ..) => 4,
            Node::Constant(_) | Node::Variable(_) | Node::Call(..) => 5,
        }
    }
}

/// Prints the expression with the minimal parentheses needed to re-parse
/// to a structurally identical tree.
impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn paren(f: &mut fmt::Formatter<'_>, child: &ExprAst, needed: bool) -> fmt::Result {
            if needed {
                write!(f, "({child})")
            } else {
                write!(f, "{child}")
            }
        }
        match &self.node {
            Node::Constant(c) => write!(f, "{c}"),
            Node::Variable(v) => write!(f, "{}", v.name()),
            Node::Neg(inner) => {
                write!(f, "-")?;
                // the grammar allows another unary or a power after '-'
                paren(f, inner, inner.precedence() < 3)
            }
            Node::Binary(op, left, right) => {
                let (sym, prec) = match op {
                    BinOp::Add => ("+", 1),
                    BinOp::Sub => ("-", 1),
                    BinOp::Mul => ("*", 2),
                    BinOp::Div => ("/", 2),
                    BinOp::Pow => ("^", 4),
                };
                if *op == BinOp::Pow {
                    // the base slot only accepts a primary; the rhs slot accepts unary minus
                    paren(f, left, left.precedence() < 5)?;
                    write!(f, "{sym}")?;
                    paren(f, right, right.precedence() < 3)
                } else {
                    paren(f, left, left.precedence() < prec)?;
                    write!(f, "{sym}")?;
                    paren(f, right, right.precedence() <= prec)
                }
            }
            Node::Call(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}
