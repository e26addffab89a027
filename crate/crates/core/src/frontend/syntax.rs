//! Surface syntax tree, as written by the user before desugaring.

use crate::builtins::FunId;
use crate::types::Shape;
use crate::values::{CmpOp, FieldId, Rational};

use super::Span;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SExpr {
    pub kind: SKind,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    IntDiv,
    Mod,
    And,
    Or,
}

impl BinOp {
    pub fn fun(self) -> FunId {
        match self {
            BinOp::Add => FunId::Add,
            BinOp::Sub => FunId::Sub,
            BinOp::Mul => FunId::Mul,
            BinOp::Div => FunId::Div,
            BinOp::IntDiv => FunId::IntDiv,
            BinOp::Mod => FunId::Mod,
            BinOp::And => FunId::Min,
            BinOp::Or => FunId::Max,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SKind {
    Number(Rational),
    Ident(String),
    Neg(Box<SExpr>),
    Not(Box<SExpr>),
    Binary(BinOp, Box<SExpr>, Box<SExpr>),
    Compare(CmpOp, Box<SExpr>, Box<SExpr>),
    Ternary(Box<SExpr>, Box<SExpr>, Box<SExpr>),
    NumSwitch {
        scrutinee: Box<SExpr>,
        arms: Vec<(Vec<SExpr>, SExpr)>,
        default: Option<Box<SExpr>>,
    },
    TagSwitch {
        scrutinee: Box<SExpr>,
        arms: Vec<TagArm>,
        default: Option<Box<SExpr>>,
    },
    Coll(Shape, CollBody),
    /// Built-in function or quoted operator applied to an argument.
    Call(FunId, Box<SExpr>),
    Expect(Box<SExpr>),
    Draw(String, Box<SExpr>),
    Choose(Vec<(SExpr, SExpr)>),
    /// `()`, `(e,)`, `(a, b)`, `(foo: e, …)`.
    Record(Vec<(Option<FieldId>, SExpr)>),
    Paren(Box<SExpr>),
    Select(Box<SExpr>, FieldId),
    Tag(String, Option<Box<SExpr>>),
    /// `x := e; …; result`. A missing result means the last bound value.
    Block(Vec<(String, SExpr)>, Option<Box<SExpr>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagArm {
    pub case: String,
    pub pattern: TagPattern,
    pub body: SExpr,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TagPattern {
    /// `@c`: payload ignored.
    Bare,
    Var(String),
    Wild,
    /// `@c(a, b)`: positional fields of the payload.
    Fields(Vec<Option<String>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CollBody {
    Elems(Vec<SExpr>),
    Range(Box<SExpr>, Box<SExpr>),
    Comp {
        head: CompHead,
        clauses: Vec<Clause>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompHead {
    Map(Box<SExpr>),
    /// No map clause: the leftmost generator takes its place.
    Gen(Generator),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Clause {
    Gen(Generator),
    Filter(SExpr),
}

/// `p1 ← p2 ← … ← source`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub patterns: Vec<(GenPattern, Span)>,
    pub source: Box<SExpr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenPattern {
    Var(String),
    Wild,
    /// `{a, b}`: pairwise distinct instances, drawn without replacement.
    Distinct(Vec<String>),
}
