//! Translation of surface syntax to core expressions.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::ast::{Env, Expr, ExprKind};
use crate::builtins::{DistId, Domain, FunId, ReduceOp};
use crate::dist::Prob;
use crate::engine::eval_det;
use crate::types::Shape;
use crate::values::{self, FieldId, Num, Val};

use super::syntax::*;
use super::{FrontendError, Span};

type DResult<T> = Result<T, FrontendError>;

/// Desugars a parsed program. Names in `globals` are treated as bound.
pub fn desugar(e: &SExpr, globals: &[&str]) -> DResult<Expr> {
    let mut d = Desugarer {
        scope: globals.iter().map(|s| s.to_string()).collect(),
        fresh: 0,
    };
    d.expr(e)
}

struct Desugarer {
    scope: Vec<String>,
    fresh: usize,
}

fn err<T>(msg: impl Into<String>, span: Span) -> DResult<T> {
    Err(FrontendError::desugar(msg, span))
}

fn is_binary(f: FunId) -> bool {
    matches!(
        f,
        FunId::Add
            | FunId::Sub
            | FunId::Mul
            | FunId::Div
            | FunId::IntDiv
            | FunId::Mod
            | FunId::Min
            | FunId::Max
            | FunId::Cmp(_)
            | FunId::Without
    )
}

fn strip_parens(e: &SExpr) -> &SExpr {
    match &e.kind {
        SKind::Paren(inner) => strip_parens(inner),
        _ => e,
    }
}

/// Collection shape visible from the syntax alone.
fn known_shape(e: &SExpr) -> Option<Shape> {
    match &strip_parens(e).kind {
        SKind::Coll(s, _) | SKind::Call(FunId::Convert(s), _) => Some(*s),
        _ => None,
    }
}

fn collect(shape: Shape, items: Vec<Val>) -> Val {
    match shape {
        Shape::List => Val::list(items),
        Shape::Bag => Val::bag(items),
        Shape::Set => Val::set(items),
    }
}

fn as_const(e: &Expr) -> Option<&Val> {
    match e.kind() {
        ExprKind::Const(v, _) => Some(v),
        _ => None,
    }
}

struct Step<'a> {
    kind: StepKind<'a>,
    span: Span,
}

enum StepKind<'a> {
    /// Draw `var` from a source expression or an earlier chain variable.
    Gen {
        pattern: GenPattern,
        var: String,
        source: Source<'a>,
    },
    Filter(&'a SExpr),
}

enum Source<'a> {
    Surface(&'a SExpr),
    Chained(String),
}

impl Desugarer {
    fn bound(&self, name: &str) -> bool {
        self.scope.iter().any(|s| s == name)
    }

    fn fresh_name(&mut self) -> String {
        self.fresh += 1;
        format!("%{}", self.fresh)
    }

    fn with_bound<T>(
        &mut self,
        names: &[String],
        f: impl FnOnce(&mut Self) -> DResult<T>,
    ) -> DResult<T> {
        let depth = self.scope.len();
        self.scope.extend(names.iter().cloned());
        let out = f(self);
        self.scope.truncate(depth);
        out
    }

    /// Value of a closed deterministic expression, for switch keys and
    /// choice weights.
    fn fold(&mut self, e: &SExpr, what: &str) -> DResult<Val> {
        let x = self.expr(e)?;
        if !x.is_deterministic() || !x.free_vars().is_empty() {
            return err(format!("{what} must be a constant"), e.span);
        }
        eval_det(&Env::new(), &x).or_else(|er| err(format!("{what}: {er}"), e.span))
    }

    fn expr(&mut self, e: &SExpr) -> DResult<Expr> {
        Ok(match &e.kind {
            SKind::Number(n) => Expr::constant(Val::rat(n.clone())),
            SKind::Ident(name) => {
                if self.bound(name) {
                    Expr::var(name)
                } else if name == "NaN" {
                    Expr::constant(Val::nan())
                } else {
                    return err(format!("unbound variable `{name}`"), e.span);
                }
            }
            SKind::Neg(inner) => {
                let x = self.expr(inner)?;
                match as_const(&x).and_then(Val::as_num) {
                    Some(Num::Rat(r)) => Expr::constant(Val::rat(-r.clone())),
                    _ => Expr::app(FunId::Neg, x),
                }
            }
            SKind::Not(inner) => Expr::app(FunId::Not, self.expr(inner)?),
            SKind::Binary(op, a, b) => Expr::app2(op.fun(), self.expr(a)?, self.expr(b)?),
            SKind::Compare(op, a, b) => Expr::app2(FunId::cmp(*op), self.expr(a)?, self.expr(b)?),
            SKind::Ternary(c, x, y) => {
                let cases =
                    BTreeMap::from([(Num::int(1), self.expr(x)?), (Num::int(0), self.expr(y)?)]);
                Expr::new(ExprKind::NSwitch {
                    scrutinee: Box::new(self.expr(c)?),
                    cases,
                    default: None,
                })
            }
            SKind::NumSwitch {
                scrutinee,
                arms,
                default,
            } => {
                let scrutinee = Box::new(self.expr(scrutinee)?);
                let mut cases = BTreeMap::new();
                for (keys, body) in arms {
                    let body = self.expr(body)?;
                    for k in keys {
                        let Val::Num(n) = self.fold(k, "switch key")? else {
                            return err("switch key must be a number", k.span);
                        };
                        if cases.insert(n.clone(), body.clone()).is_some() {
                            return err(format!("duplicate switch key {n}"), k.span);
                        }
                    }
                }
                let default = default
                    .as_ref()
                    .map(|d| self.expr(d))
                    .transpose()?
                    .map(Box::new);
                Expr::new(ExprKind::NSwitch {
                    scrutinee,
                    cases,
                    default,
                })
            }
            SKind::TagSwitch {
                scrutinee,
                arms,
                default,
            } => {
                let scrutinee = Box::new(self.expr(scrutinee)?);
                let mut cases = BTreeMap::new();
                for arm in arms {
                    let case = values::CaseId::new(&arm.case);
                    if cases.contains_key(&case) {
                        return err(format!("duplicate case @{}", arm.case), arm.span);
                    }
                    let (var, body) = self.tag_arm(arm)?;
                    cases.insert(case, (Arc::from(var.as_str()), body));
                }
                let default = default
                    .as_ref()
                    .map(|d| self.expr(d))
                    .transpose()?
                    .map(Box::new);
                Expr::new(ExprKind::CSwitch {
                    scrutinee,
                    cases,
                    default,
                })
            }
            SKind::Coll(shape, body) => self.collection(*shape, body, e.span)?,
            SKind::Call(f, arg) => self.call(*f, arg, e.span)?,
            SKind::Expect(inner) => Expr::exp(self.expr(inner)?),
            SKind::Draw(name, arg) => {
                let Some(d) = DistId::from_name(name) else {
                    return err(format!("unknown distribution `~{name}`"), e.span);
                };
                Expr::draw(d, self.expr(arg)?)
            }
            SKind::Choose(branches) => {
                let mut out = Vec::new();
                let mut total = Prob::zero();
                for (b, w) in branches {
                    let p = match self.fold(w, "choice weight")?.as_rational() {
                        Some(p) if p > &Prob::zero() => p.clone(),
                        _ => return err("choice weight must be a positive number", w.span),
                    };
                    total += &p;
                    out.push((self.expr(b)?, p));
                }
                if !total.is_one() {
                    return err(format!("choice weights sum to {total}, not 1"), e.span);
                }
                Expr::new(ExprKind::Choose(out))
            }
            SKind::Record(items) => self.record(items, e.span)?,
            SKind::Paren(inner) => self.expr(inner)?,
            SKind::Select(inner, f) => Expr::select(self.expr(inner)?, f.clone()),
            SKind::Tag(name, payload) => {
                let p = match payload {
                    Some(p) => self.expr(p)?,
                    None => Expr::tuple([]),
                };
                Expr::cons(name, p)
            }
            SKind::Block(bindings, result) => self.block(bindings, result.as_deref())?,
        })
    }

    fn block(&mut self, bindings: &[(String, SExpr)], result: Option<&SExpr>) -> DResult<Expr> {
        let Some(((name, rhs), rest)) = bindings.split_first() else {
            return match result {
                Some(r) => self.expr(r),
                None => unreachable!("blocks have at least one binding"),
            };
        };
        let bound = self.expr(rhs)?;
        let body = self.with_bound(std::slice::from_ref(name), |d| {
            if rest.is_empty() && result.is_none() {
                Ok(Expr::var(name))
            } else {
                d.block(rest, result)
            }
        })?;
        Ok(Expr::let_in(bound, name, body))
    }

    fn record(&mut self, items: &[(Option<FieldId>, SExpr)], span: Span) -> DResult<Expr> {
        let mut fields = BTreeMap::new();
        let mut position = 0;
        for (label, e) in items {
            let id = label.clone().unwrap_or_else(|| {
                position += 1;
                FieldId::Pos(position)
            });
            if fields.insert(id.clone(), self.expr(e)?).is_some() {
                let name = match id {
                    FieldId::Pos(i) => format!("#{i}"),
                    FieldId::Named(n) => n.to_string(),
                };
                return err(format!("duplicate field {name}"), span);
            }
        }
        Ok(Expr::new(ExprKind::Tuple(fields)))
    }

    fn tag_arm(&mut self, arm: &TagArm) -> DResult<(String, Expr)> {
        match &arm.pattern {
            TagPattern::Var(x) => {
                let body = self.with_bound(std::slice::from_ref(x), |d| d.expr(&arm.body))?;
                Ok((x.clone(), body))
            }
            TagPattern::Bare | TagPattern::Wild => {
                let v = self.fresh_name();
                Ok((v, self.expr(&arm.body)?))
            }
            TagPattern::Fields(names) => {
                let v = self.fresh_name();
                let named: Vec<(u32, String)> = names
                    .iter()
                    .enumerate()
                    .filter_map(|(i, n)| n.clone().map(|n| (i as u32 + 1, n)))
                    .collect();
                let vars: Vec<String> = named.iter().map(|(_, n)| n.clone()).collect();
                let mut body = self.with_bound(&vars, |d| d.expr(&arm.body))?;
                for (i, n) in named.into_iter().rev() {
                    body = Expr::let_in(Expr::select(Expr::var(&v), FieldId::Pos(i)), &n, body);
                }
                Ok((v, body))
            }
        }
    }

    fn call(&mut self, f: FunId, arg: &SExpr, span: Span) -> DResult<Expr> {
        let arg = strip_parens(arg);
        if is_binary(f) {
            if let SKind::Record(items) = &arg.kind {
                if items.len() == 2 && items.iter().all(|(l, _)| l.is_none()) {
                    return Ok(Expr::app2(
                        f,
                        self.expr(&items[0].1)?,
                        self.expr(&items[1].1)?,
                    ));
                }
            }
            let Some(op) = ReduceOp::from_binary(f) else {
                return err(
                    format!("`{f}` cannot be applied to a whole collection"),
                    span,
                );
            };
            return Ok(Expr::app(FunId::Reduce(op, Domain::Auto), self.expr(arg)?));
        }
        Ok(Expr::app(f, self.expr(arg)?))
    }

    fn collection(&mut self, shape: Shape, body: &CollBody, span: Span) -> DResult<Expr> {
        match body {
            CollBody::Elems(elems) => {
                let xs = elems
                    .iter()
                    .map(|e| self.expr(e))
                    .collect::<DResult<Vec<_>>>()?;
                if xs.iter().all(|x| as_const(x).is_some()) {
                    let vals = xs.iter().filter_map(as_const).cloned().collect();
                    return Ok(Expr::constant(collect(shape, vals)));
                }
                let mut parts = xs.into_iter().map(|x| Expr::app(FunId::Single(shape), x));
                let first = parts.next().expect("non-empty display");
                Ok(parts.fold(first, |acc, x| Expr::app2(FunId::Add, acc, x)))
            }
            CollBody::Range(lo, hi) => {
                let (lo, hi) = (self.expr(lo)?, self.expr(hi)?);
                if let (Some(a), Some(b)) = (as_const(&lo), as_const(&hi)) {
                    let v = values::range(shape, a, b)
                        .or_else(|er| err(format!("range: {er}"), span))?;
                    return Ok(Expr::constant(v));
                }
                Ok(Expr::app2(FunId::Range(shape), lo, hi))
            }
            CollBody::Comp { head, clauses } => self.comprehension(shape, head, clauses),
        }
    }

    fn comprehension(
        &mut self,
        shape: Shape,
        head: &CompHead,
        clauses: &[Clause],
    ) -> DResult<Expr> {
        let mut steps = Vec::new();
        let map = match head {
            CompHead::Map(m) => Some(m.as_ref()),
            CompHead::Gen(g) => {
                self.expand(g, shape, &mut steps)?;
                None
            }
        };
        // Without a map clause the leftmost generator's pattern is the map.
        let implicit = match steps.last() {
            Some(Step {
                kind: StepKind::Gen { pattern, var, .. },
                ..
            }) if map.is_none() => match pattern {
                GenPattern::Distinct(names) => Some(names.clone()),
                _ => Some(vec![var.clone()]),
            },
            _ => None,
        };
        for c in clauses {
            match c {
                Clause::Gen(g) => self.expand(g, shape, &mut steps)?,
                Clause::Filter(f) => steps.push(Step {
                    kind: StepKind::Filter(f),
                    span: f.span,
                }),
            }
        }
        self.steps(shape, &steps, map, implicit.as_deref())
    }

    /// Expands `p1 ← … ← pk ← S` into `pk ← S; …; p1 ← p2`.
    fn expand<'a>(
        &mut self,
        g: &'a Generator,
        shape: Shape,
        steps: &mut Vec<Step<'a>>,
    ) -> DResult<()> {
        let mut source = Source::Surface(&g.source);
        for (k, (pattern, pspan)) in g.patterns.iter().enumerate().rev() {
            let var = match pattern {
                GenPattern::Var(x) => x.clone(),
                GenPattern::Wild => self.fresh_name(),
                GenPattern::Distinct(names) => {
                    if k != 0 {
                        return err(
                            "a without-replacement pattern must come first in a generator chain",
                            *pspan,
                        );
                    }
                    if shape == Shape::List {
                        return err(
                            "drawing without replacement needs a bag or set comprehension",
                            *pspan,
                        );
                    }
                    if names.iter().collect::<BTreeSet<_>>().len() != names.len() {
                        return err("pattern variables must be distinct", *pspan);
                    }
                    self.fresh_name()
                }
            };
            steps.push(Step {
                kind: StepKind::Gen {
                    pattern: pattern.clone(),
                    var: var.clone(),
                    source,
                },
                span: *pspan,
            });
            source = Source::Chained(var);
        }
        Ok(())
    }

    fn source(&mut self, source: &Source, shape: Shape, span: Span) -> DResult<Expr> {
        match source {
            Source::Chained(v) => Ok(Expr::app(FunId::Convert(shape), Expr::var(v))),
            Source::Surface(s) => {
                let x = self.expr(s)?;
                match known_shape(s) {
                    Some(k) if k == shape => Ok(x),
                    Some(k) if k.converts_to(shape) => Ok(Expr::app(FunId::Convert(shape), x)),
                    Some(k) => err(
                        format!("cannot draw from a {k} in a {shape} comprehension"),
                        span,
                    ),
                    None => Ok(Expr::app(FunId::Convert(shape), x)),
                }
            }
        }
    }

    fn steps(
        &mut self,
        shape: Shape,
        steps: &[Step],
        map: Option<&SExpr>,
        implicit: Option<&[String]>,
    ) -> DResult<Expr> {
        let Some((step, rest)) = steps.split_first() else {
            let value = match (map, implicit) {
                (Some(m), _) => self.expr(m)?,
                (None, Some([x])) => Expr::var(x),
                (None, Some(xs)) => Expr::tuple(xs.iter().map(|x| Expr::var(x))),
                (None, None) => unreachable!("comprehension without map or generator"),
            };
            return Ok(Expr::app(FunId::Single(shape), value));
        };
        match &step.kind {
            StepKind::Filter(f) => {
                let cond = self.expr(f)?;
                let body = self.steps(shape, rest, map, implicit)?;
                let cases = BTreeMap::from([
                    (Num::int(1), body),
                    (Num::int(0), Expr::constant(Val::empty(shape))),
                ]);
                Ok(Expr::new(ExprKind::NSwitch {
                    scrutinee: Box::new(cond),
                    cases,
                    default: None,
                }))
            }
            StepKind::Gen {
                pattern: GenPattern::Distinct(names),
                var,
                source,
            } => {
                let src = self.source(source, shape, step.span)?;
                let body = self.with_bound(names, |d| d.steps(shape, rest, map, implicit))?;
                Ok(Expr::let_in(
                    src,
                    var,
                    self.distinct(shape, var, names, body),
                ))
            }
            StepKind::Gen { var, source, .. } => {
                let src = self.source(source, shape, step.span)?;
                let body = self.with_bound(std::slice::from_ref(var), |d| {
                    d.steps(shape, rest, map, implicit)
                })?;
                Ok(Expr::iter(src, var, body, shape))
            }
        }
    }

    /// `Iter(s0, a, Let(without(s0, a), s1, Iter(s1, b, …)))`.
    fn distinct(&mut self, shape: Shape, pool: &str, names: &[String], body: Expr) -> Expr {
        let Some((first, rest)) = names.split_first() else {
            return body;
        };
        let inner = if rest.is_empty() {
            body
        } else {
            let next = self.fresh_name();
            let remaining = Expr::app2(FunId::Without, Expr::var(pool), Expr::var(first));
            Expr::let_in(remaining, &next, self.distinct(shape, &next, rest, body))
        };
        Expr::iter(Expr::var(pool), first, inner, shape)
    }
}
