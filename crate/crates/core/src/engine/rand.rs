use crate::ast::{Env, Expr, ExprKind};
use crate::builtins::{apply, make_dist};
use crate::values::{coll_concat, Val};

use super::rng::RngState;
use super::{
    case_branch, eval_det, eval_dist, expect_shape, field_of, lookup, numeric_branch, EvalError,
};

/// Pseudo-random evaluation from generator state `s`. Subexpressions are
/// evaluated left to right; record fields in field order; bag elements in
/// canonical order, one draw per instance. `exp` is computed exactly and
/// consumes no randomness.
pub fn eval_rand(env: &Env, s: RngState, e: &Expr) -> Result<(Val, RngState), EvalError> {
    let mut s = s;
    let v = sample(env, &mut s, e)?;
    Ok((v, s))
}

fn sample(env: &Env, s: &mut RngState, e: &Expr) -> Result<Val, EvalError> {
    if e.is_deterministic() {
        return eval_det(env, e);
    }
    match e.kind() {
        ExprKind::Var(x) => lookup(env, x),
        ExprKind::Const(v, _) => Ok(v.clone()),
        ExprKind::App(f, arg) => Ok(apply(*f, &sample(env, s, arg)?)?),
        ExprKind::Choose(branches) => {
            let probs: Vec<_> = branches.iter().map(|(_, p)| p.clone()).collect();
            let k = s.choose(&probs);
            sample(env, s, &branches[k].0)
        }
        ExprKind::Exp(inner) => Ok(eval_dist(env, inner)?.mean()?),
        ExprKind::DistDraw(d, param) => {
            let dist = make_dist(*d, &sample(env, s, param)?)?;
            let (values, probs): (Vec<_>, Vec<_>) =
                dist.iter().map(|(v, p)| (v, p.clone())).unzip();
            let k = s.choose(&probs);
            Ok(values[k].clone())
        }
        ExprKind::Let(bound, x, body) => {
            let v = sample(env, s, bound)?;
            sample(&env.extend(x.clone(), v), s, body)
        }
        ExprKind::NSwitch {
            scrutinee,
            cases,
            default,
        } => {
            let v = sample(env, s, scrutinee)?;
            sample(env, s, numeric_branch(cases, default.as_deref(), &v)?)
        }
        ExprKind::Iter {
            source,
            var,
            body,
            shape,
        } => {
            let src = sample(env, s, source)?;
            expect_shape(&src, *shape)?;
            let mut acc = Val::empty(*shape);
            for x in src.instances().expect("collection") {
                let v = sample(&env.extend(var.clone(), x.clone()), s, body)?;
                expect_shape(&v, *shape)?;
                acc = coll_concat(&acc, &v)?;
            }
            Ok(acc)
        }
        ExprKind::Tuple(fields) => {
            let mut out = Vec::with_capacity(fields.len());
            for (i, f) in fields {
                out.push((i.clone(), sample(env, s, f)?));
            }
            Ok(Val::record(out))
        }
        ExprKind::Select(inner, field) => field_of(&sample(env, s, inner)?, field),
        ExprKind::Cons(c, inner) => Ok(Val::Tag(c.clone(), sample(env, s, inner)?.into())),
        ExprKind::CSwitch {
            scrutinee,
            cases,
            default,
        } => {
            let v = sample(env, s, scrutinee)?;
            match case_branch(cases, default.as_deref(), &v)? {
                (Some((x, payload)), body) => {
                    sample(&env.extend(x.clone(), payload.clone()), s, body)
                }
                (None, body) => sample(env, s, body),
            }
        }
    }
}
