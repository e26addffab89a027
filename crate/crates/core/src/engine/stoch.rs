use crate::ast::{Env, Expr, ExprKind};
use crate::builtins::{apply, make_dist};
use crate::dist::{Dist, Prob};
use crate::values::{coll_concat, FieldId, Val};

use super::{
    case_branch, eval_det, expect_shape, field_of, lookup, numeric_branch, EvalError, EvalOptions,
};

/// Exact distribution of the results of `e`.
pub fn eval_dist(env: &Env, e: &Expr) -> Result<Dist, EvalError> {
    eval_dist_with(env, e, &EvalOptions::default())
}

pub fn eval_dist_with(env: &Env, e: &Expr, opts: &EvalOptions) -> Result<Dist, EvalError> {
    if opts.deterministic_shortcut && e.is_deterministic() {
        return Ok(Dist::delta(eval_det(env, e)?));
    }
    let go = |env: &Env, e: &Expr| eval_dist_with(env, e, opts);
    match e.kind() {
        ExprKind::Var(x) => Ok(Dist::delta(lookup(env, x)?)),
        ExprKind::Const(v, _) => Ok(Dist::delta(v.clone())),
        ExprKind::App(f, arg) => go(env, arg)?.map(|v| Ok(apply(*f, v)?)),
        ExprKind::Choose(branches) => {
            let mut layers = Vec::with_capacity(branches.len());
            for (b, p) in branches {
                layers.push((go(env, b)?, p.clone()));
            }
            Ok(Dist::mult(layers)?)
        }
        ExprKind::Exp(inner) => Ok(Dist::delta(go(env, inner)?.mean()?)),
        ExprKind::DistDraw(d, param) => go(env, param)?.bind(|v| Ok(make_dist(*d, v)?)),
        ExprKind::Let(bound, x, body) => {
            go(env, bound)?.bind(|v| go(&env.extend(x.clone(), v.clone()), body))
        }
        ExprKind::NSwitch {
            scrutinee,
            cases,
            default,
        } => {
            // The branches bind nothing, so each one is analysed once and
            // weighted by the mass of the scrutinee values selecting it.
            let scrut = go(env, scrutinee)?;
            let mut mass: Vec<(&Expr, Prob)> = Vec::new();
            for (v, p) in &scrut {
                let branch = numeric_branch(cases, default.as_deref(), v)?;
                match mass.iter_mut().find(|(b, _)| std::ptr::eq(*b, branch)) {
                    Some((_, m)) => *m += p,
                    None => mass.push((branch, p.clone())),
                }
            }
            let mut layers = Vec::with_capacity(mass.len());
            for (branch, m) in mass {
                layers.push((go(env, branch)?, m));
            }
            Ok(Dist::mult(layers)?)
        }
        ExprKind::Iter {
            source,
            var,
            body,
            shape,
        } => go(env, source)?.bind(|src| {
            expect_shape(src, *shape)?;
            let empty = Val::empty(*shape);
            let concat = |a: &Val, b: &Val| -> Result<Val, EvalError> {
                expect_shape(b, *shape)?;
                Ok(coll_concat(a, b)?)
            };
            let mut acc = Dist::delta(empty.clone());
            if opts.iid_power {
                for (x, k) in src.grouped_elements().expect("collection") {
                    let q = go(&env.extend(var.clone(), x.clone()), body)?;
                    let q = if k == 1 {
                        q
                    } else {
                        q.pow_iid(k, Some(&empty), concat)?
                    };
                    acc = acc.product_with(&q, concat)?;
                }
            } else {
                for x in src.instances().expect("collection") {
                    let q = go(&env.extend(var.clone(), x.clone()), body)?;
                    acc = acc.product_with(&q, concat)?;
                }
            }
            Ok(acc)
        }),
        ExprKind::Tuple(fields) => {
            let mut acc = Dist::delta(Val::record([]));
            for (i, f) in fields {
                let q = go(env, f)?;
                acc = acc.product_with(&q, |r, v| Ok::<_, EvalError>(with_field(r, i, v)))?;
            }
            Ok(acc)
        }
        ExprKind::Select(inner, field) => go(env, inner)?.map(|v| field_of(v, field)),
        ExprKind::Cons(c, inner) => {
            go(env, inner)?.map(|v| Ok(Val::Tag(c.clone(), v.clone().into())))
        }
        ExprKind::CSwitch {
            scrutinee,
            cases,
            default,
        } => go(env, scrutinee)?.bind(|v| match case_branch(cases, default.as_deref(), v)? {
            (Some((x, payload)), body) => go(&env.extend(x.clone(), payload.clone()), body),
            (None, body) => go(env, body),
        }),
    }
}

fn with_field(record: &Val, field: &FieldId, v: &Val) -> Val {
    let mut fields = record.as_record().cloned().unwrap_or_default();
    fields.insert(field.clone(), v.clone());
    Val::record(fields)
}
