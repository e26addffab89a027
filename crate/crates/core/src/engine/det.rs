use crate::ast::{Env, Expr, ExprKind};
use crate::builtins::apply;
use crate::values::{coll_concat, Val};

use super::{case_branch, expect_shape, field_of, lookup, numeric_branch, repeat_coll, EvalError};

/// Deterministic evaluation of a syntactically deterministic expression.
pub fn eval_det(env: &Env, e: &Expr) -> Result<Val, EvalError> {
    match e.kind() {
        ExprKind::Var(x) => lookup(env, x),
        ExprKind::Const(v, _) => Ok(v.clone()),
        ExprKind::App(f, arg) => Ok(apply(*f, &eval_det(env, arg)?)?),
        ExprKind::Choose(_) | ExprKind::Exp(_) | ExprKind::DistDraw(..) => {
            Err(EvalError::NotDeterministic(e.to_string()))
        }
        ExprKind::Let(bound, x, body) => {
            let v = eval_det(env, bound)?;
            eval_det(&env.extend(x.clone(), v), body)
        }
        ExprKind::NSwitch {
            scrutinee,
            cases,
            default,
        } => {
            let v = eval_det(env, scrutinee)?;
            eval_det(env, numeric_branch(cases, default.as_deref(), &v)?)
        }
        ExprKind::Iter {
            source,
            var,
            body,
            shape,
        } => {
            let src = eval_det(env, source)?;
            expect_shape(&src, *shape)?;
            let mut acc = Val::empty(*shape);
            // The body is deterministic, so equal bag elements give equal
            // results; it runs once per distinct element.
            for (x, k) in src.grouped_elements().expect("collection") {
                let v = eval_det(&env.extend(var.clone(), x.clone()), body)?;
                expect_shape(&v, *shape)?;
                acc = coll_concat(&acc, &repeat_coll(&v, k)?)?;
            }
            Ok(acc)
        }
        ExprKind::Tuple(fields) => {
            let mut out = Vec::with_capacity(fields.len());
            for (i, f) in fields {
                out.push((i.clone(), eval_det(env, f)?));
            }
            Ok(Val::record(out))
        }
        ExprKind::Select(inner, field) => field_of(&eval_det(env, inner)?, field),
        ExprKind::Cons(c, inner) => Ok(Val::Tag(c.clone(), eval_det(env, inner)?.into())),
        ExprKind::CSwitch {
            scrutinee,
            cases,
            default,
        } => {
            let v = eval_det(env, scrutinee)?;
            match case_branch(cases, default.as_deref(), &v)? {
                (Some((x, payload)), body) => {
                    eval_det(&env.extend(x.clone(), payload.clone()), body)
                }
                (None, body) => eval_det(env, body),
            }
        }
    }
}
