//! Core abstract syntax, the target of desugaring and the input of every
//! evaluator.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::builtins::{DistId, FunId};
use crate::dist::Prob;
use crate::types::{Shape, Type};
use crate::values::{CaseId, FieldId, Num, Val};

pub type VarId = Arc<str>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Var(VarId),
    Const(Val, Type),
    App(FunId, Box<Expr>),
    /// Fixed distribution over branches; weights are positive and sum to 1.
    Choose(Vec<(Expr, Prob)>),
    /// Expectation of a numeric expression.
    Exp(Box<Expr>),
    DistDraw(DistId, Box<Expr>),
    Let(Box<Expr>, VarId, Box<Expr>),
    NSwitch {
        scrutinee: Box<Expr>,
        cases: BTreeMap<Num, Expr>,
        default: Option<Box<Expr>>,
    },
    /// `flatMap` over `source`, binding each element instance to the
    /// variable. Source and body are both collections of `shape`.
    Iter {
        source: Box<Expr>,
        var: VarId,
        body: Box<Expr>,
        shape: Shape,
    },
    Tuple(BTreeMap<FieldId, Expr>),
    Select(Box<Expr>, FieldId),
    Cons(CaseId, Box<Expr>),
    CSwitch {
        scrutinee: Box<Expr>,
        cases: BTreeMap<CaseId, (VarId, Expr)>,
        default: Option<Box<Expr>>,
    },
}

/// An expression node. The syntactic-determinism flag is computed once at
/// construction.
#[derive(Debug, Clone)]
pub struct Expr {
    kind: ExprKind,
    deterministic: bool,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

impl From<ExprKind> for Expr {
    fn from(kind: ExprKind) -> Self {
        Expr::new(kind)
    }
}

impl Expr {
    pub fn new(kind: ExprKind) -> Expr {
        let deterministic = match &kind {
            ExprKind::Choose(_) | ExprKind::Exp(_) | ExprKind::DistDraw(..) => false,
            _ => children(&kind).all(|c| c.deterministic),
        };
        Expr {
            kind,
            deterministic,
        }
    }

    pub fn kind(&self) -> &ExprKind {
        &self.kind
    }

    pub fn into_kind(self) -> ExprKind {
        self.kind
    }

    /// No `choose`, `exp` or `dist` node anywhere inside.
    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    pub fn children(&self) -> impl Iterator<Item = &Expr> {
        children(&self.kind)
    }

    pub fn var(name: &str) -> Expr {
        Expr::new(ExprKind::Var(Arc::from(name)))
    }

    pub fn constant(v: Val) -> Expr {
        let t = crate::types::least_type_of(&v);
        Expr::new(ExprKind::Const(v, t))
    }

    pub fn app(f: FunId, arg: Expr) -> Expr {
        Expr::new(ExprKind::App(f, Box::new(arg)))
    }

    /// Binary application `f(a, b)`.
    pub fn app2(f: FunId, a: Expr, b: Expr) -> Expr {
        Expr::app(f, Expr::tuple([a, b]))
    }

    pub fn tuple(items: impl IntoIterator<Item = Expr>) -> Expr {
        Expr::new(ExprKind::Tuple(
            items
                .into_iter()
                .enumerate()
                .map(|(i, e)| (FieldId::Pos(i as u32 + 1), e))
                .collect(),
        ))
    }

    pub fn let_in(bound: Expr, var: &str, body: Expr) -> Expr {
        Expr::new(ExprKind::Let(
            Box::new(bound),
            Arc::from(var),
            Box::new(body),
        ))
    }

    pub fn iter(source: Expr, var: &str, body: Expr, shape: Shape) -> Expr {
        Expr::new(ExprKind::Iter {
            source: Box::new(source),
            var: Arc::from(var),
            body: Box::new(body),
            shape,
        })
    }

    pub fn draw(d: DistId, param: Expr) -> Expr {
        Expr::new(ExprKind::DistDraw(d, Box::new(param)))
    }

    pub fn exp(e: Expr) -> Expr {
        Expr::new(ExprKind::Exp(Box::new(e)))
    }

    pub fn select(e: Expr, field: FieldId) -> Expr {
        Expr::new(ExprKind::Select(Box::new(e), field))
    }

    pub fn cons(case: &str, e: Expr) -> Expr {
        Expr::new(ExprKind::Cons(CaseId::new(case), Box::new(e)))
    }

    /// Free variables, respecting the binders of `let`, `iter` and `cswitch`.
    pub fn free_vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        collect_free(self, &mut Vec::new(), &mut out);
        out
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().map(Expr::size).sum::<usize>()
    }
}

fn children(kind: &ExprKind) -> Box<dyn Iterator<Item = &Expr> + '_> {
    match kind {
        ExprKind::Var(_) | ExprKind::Const(..) => Box::new(std::iter::empty()),
        ExprKind::App(_, e)
        | ExprKind::Exp(e)
        | ExprKind::DistDraw(_, e)
        | ExprKind::Select(e, _)
        | ExprKind::Cons(_, e) => Box::new(std::iter::once(&**e)),
        ExprKind::Choose(branches) => Box::new(branches.iter().map(|(e, _)| e)),
        ExprKind::Let(a, _, b) => Box::new([&**a, &**b].into_iter()),
        ExprKind::NSwitch {
            scrutinee,
            cases,
            default,
        } => Box::new(
            std::iter::once(&**scrutinee)
                .chain(cases.values())
                .chain(default.as_deref()),
        ),
        ExprKind::Iter { source, body, .. } => Box::new([&**source, &**body].into_iter()),
        ExprKind::Tuple(fields) => Box::new(fields.values()),
        ExprKind::CSwitch {
            scrutinee,
            cases,
            default,
        } => Box::new(
            std::iter::once(&**scrutinee)
                .chain(cases.values().map(|(_, e)| e))
                .chain(default.as_deref()),
        ),
    }
}

fn collect_free(e: &Expr, bound: &mut Vec<VarId>, out: &mut BTreeSet<VarId>) {
    let under = |binder: &VarId, body: &Expr, bound: &mut Vec<VarId>, out: &mut BTreeSet<VarId>| {
        bound.push(binder.clone());
        collect_free(body, bound, out);
        bound.pop();
    };
    match e.kind() {
        ExprKind::Var(x) => {
            if !bound.contains(x) {
                out.insert(x.clone());
            }
        }
        ExprKind::Let(a, x, b) => {
            collect_free(a, bound, out);
            under(x, b, bound, out);
        }
        ExprKind::Iter {
            source, var, body, ..
        } => {
            collect_free(source, bound, out);
            under(var, body, bound, out);
        }
        ExprKind::CSwitch {
            scrutinee,
            cases,
            default,
        } => {
            collect_free(scrutinee, bound, out);
            for (x, body) in cases.values() {
                under(x, body, bound, out);
            }
            if let Some(d) = default {
                collect_free(d, bound, out);
            }
        }
        _ => {
            for c in e.children() {
                collect_free(c, bound, out);
            }
        }
    }
}

/// Structural scan for `choose`, `exp` and `dist` nodes. Equivalent to
/// [`Expr::is_deterministic`], which caches the same answer.
pub fn s_deterministic(e: &Expr) -> bool {
    !matches!(
        e.kind(),
        ExprKind::Choose(_) | ExprKind::Exp(_) | ExprKind::DistDraw(..)
    ) && e.children().all(s_deterministic)
}

/// A persistent variable scope: extension is O(1) and shares the parent.
#[derive(Debug)]
pub struct Scope<T> {
    head: Option<Arc<ScopeNode<T>>>,
}

#[derive(Debug)]
struct ScopeNode<T> {
    name: VarId,
    value: T,
    next: Option<Arc<ScopeNode<T>>>,
}

impl<T> Clone for Scope<T> {
    fn clone(&self) -> Self {
        Scope {
            head: self.head.clone(),
        }
    }
}

impl<T> Default for Scope<T> {
    fn default() -> Self {
        Scope { head: None }
    }
}

impl<T> Scope<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn extend(&self, name: VarId, value: T) -> Scope<T> {
        Scope {
            head: Some(Arc::new(ScopeNode {
                name,
                value,
                next: self.head.clone(),
            })),
        }
    }

    pub fn lookup(&self, name: &str) -> Option<&T> {
        let mut node = self.head.as_deref();
        while let Some(n) = node {
            if &*n.name == name {
                return Some(&n.value);
            }
            node = n.next.as_deref();
        }
        None
    }

    /// Innermost binding first; shadowed bindings are included.
    pub fn iter(&self) -> impl Iterator<Item = (&VarId, &T)> {
        let mut node = self.head.as_deref();
        std::iter::from_fn(move || {
            let n = node?;
            node = n.next.as_deref();
            Some((&n.name, &n.value))
        })
    }
}

impl<T> FromIterator<(VarId, T)> for Scope<T> {
    fn from_iter<I: IntoIterator<Item = (VarId, T)>>(iter: I) -> Self {
        iter.into_iter()
            .fold(Scope::new(), |s, (k, v)| s.extend(k, v))
    }
}

/// Runtime environment.
pub type Env = Scope<Val>;
/// Typing context.
pub type TypeEnv = Scope<Type>;

// S-expression rendering, used for debugging and golden fixtures.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            ExprKind::Var(x) => write!(f, "{x}"),
            ExprKind::Const(v, t) => write!(f, "(const {v} : {t})"),
            ExprKind::App(g, e) => write!(f, "({} {e})", g.name()),
            ExprKind::Choose(bs) => {
                f.write_str("(choose")?;
                for (e, p) in bs {
                    write!(f, " [{p} {e}]")?;
                }
                f.write_str(")")
            }
            ExprKind::Exp(e) => write!(f, "(exp {e})"),
            ExprKind::DistDraw(d, e) => write!(f, "(dist {} {e})", d.name()),
            ExprKind::Let(a, x, b) => write!(f, "(let {x} {a} {b})"),
            ExprKind::NSwitch {
                scrutinee,
                cases,
                default,
            } => {
                write!(f, "(nswitch {scrutinee}")?;
                for (k, e) in cases {
                    write!(f, " [{k} {e}]")?;
                }
                if let Some(d) = default {
                    write!(f, " [_ {d}]")?;
                }
                f.write_str(")")
            }
            ExprKind::Iter {
                source,
                var,
                body,
                shape,
            } => {
                write!(f, "(iter-{shape} {var} {source} {body})")
            }
            ExprKind::Tuple(fields) => {
                f.write_str("(tuple")?;
                for (i, e) in fields {
                    write!(f, " [{i} {e}]")?;
                }
                f.write_str(")")
            }
            ExprKind::Select(e, i) => write!(f, "(select {e} {i})"),
            ExprKind::Cons(c, e) => write!(f, "(cons @{c} {e})"),
            ExprKind::CSwitch {
                scrutinee,
                cases,
                default,
            } => {
                write!(f, "(cswitch {scrutinee}")?;
                for (c, (x, e)) in cases {
                    write!(f, " [@{c} {x} {e}]")?;
                }
                if let Some(d) = default {
                    write!(f, " [_ {d}]")?;
                }
                f.write_str(")")
            }
        }
    }
}
