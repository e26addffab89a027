//! Bottom-up type inference.
//!
//! [`check`] also elaborates: reductions whose domain the desugarer left
//! open get the domain fixed by the argument type, so that an empty
//! collection reduces to the right neutral element at run time.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::ast::{Expr, ExprKind, TypeEnv};
use crate::builtins::{resolve, resolve_dist, resolve_reduce_domain, BuiltinError};
use crate::dist::Prob;
use crate::types::{inhabits, is_empty, join_all, subtype, Mode, Shape, Type};
use crate::values::{FieldId, Num, Val};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("constant {value} does not have type {ty}")]
    BadConstant { value: String, ty: Type },
    #[error("{source} (in {expr})")]
    Call { expr: String, source: BuiltinError },
    #[error("choice weights must be positive and sum to 1 (in {0})")]
    BadWeights(String),
    #[error("expected a number, found {found} (in {expr})")]
    NotNumeric { found: Type, expr: String },
    #[error("a switch on {scrutinee} must have a default case (in {expr})")]
    Uncovered { scrutinee: Type, expr: String },
    #[error("expected a {shape} collection, found {found} (in {expr})")]
    NotCollection {
        shape: Shape,
        found: Type,
        expr: String,
    },
    #[error("{found} has no field {field} (in {expr})")]
    NoField {
        found: Type,
        field: FieldId,
        expr: String,
    },
    #[error("expected a tagged value, found {found} (in {expr})")]
    NotTagged { found: Type, expr: String },
    #[error("case @{case} is not handled (in {expr})")]
    Unhandled { case: String, expr: String },
    #[error("the program has no possible result: its type {0} is empty")]
    EmptyResult(Type),
}

/// Shortened rendering of an offending subexpression.
fn snippet(e: &Expr) -> String {
    let s = e.to_string();
    if s.chars().count() <= 120 {
        s
    } else {
        let cut: String = s.chars().take(117).collect();
        format!("{cut}...")
    }
}

/// The type of `e` under `env`.
pub fn infer(env: &TypeEnv, e: &Expr) -> Result<Type, TypeError> {
    check(env, e).map(|(_, t)| t)
}

/// Type of a closed program, which must not be empty.
pub fn check_program(e: &Expr) -> Result<(Expr, Type), TypeError> {
    let (e, t) = check(&TypeEnv::new(), e)?;
    if is_empty(&t) {
        return Err(TypeError::EmptyResult(t));
    }
    Ok((e, t))
}

/// Infers the type of `e` and returns it with the elaborated expression.
pub fn check(env: &TypeEnv, e: &Expr) -> Result<(Expr, Type), TypeError> {
    let rebuilt = |kind| Expr::new(kind);
    match e.kind() {
        ExprKind::Var(x) => {
            let t = env
                .lookup(x)
                .cloned()
                .ok_or_else(|| TypeError::Unbound(x.to_string()))?;
            Ok((e.clone(), t))
        }
        ExprKind::Const(v, t) => {
            if !inhabits(v, t) {
                return Err(TypeError::BadConstant {
                    value: v.to_string(),
                    ty: t.clone(),
                });
            }
            Ok((e.clone(), t.clone()))
        }
        ExprKind::App(f, arg) => {
            let (arg, t) = check(env, arg)?;
            let u = resolve(*f, &t).map_err(|source| TypeError::Call {
                expr: snippet(e),
                source,
            })?;
            let f = resolve_reduce_domain(*f, &t);
            Ok((rebuilt(ExprKind::App(f, Box::new(arg))), u))
        }
        ExprKind::Choose(branches) => {
            let total: Prob = branches.iter().map(|(_, p)| p).sum();
            if branches.is_empty()
                || branches.iter().any(|(_, p)| *p <= Prob::zero())
                || !total.is_one()
            {
                return Err(TypeError::BadWeights(snippet(e)));
            }
            let mut out = Vec::with_capacity(branches.len());
            let mut types = Vec::with_capacity(branches.len());
            for (b, p) in branches {
                let (b, t) = check(env, b)?;
                out.push((b, p.clone()));
                types.push(t);
            }
            Ok((rebuilt(ExprKind::Choose(out)), join_all(&types)))
        }
        ExprKind::Exp(inner) => {
            let (inner, t) = check(env, inner)?;
            if !subtype(&t, &Type::RAT) {
                return Err(TypeError::NotNumeric {
                    found: t,
                    expr: snippet(e),
                });
            }
            Ok((rebuilt(ExprKind::Exp(Box::new(inner))), Type::RAT))
        }
        ExprKind::DistDraw(d, param) => {
            let (param, t) = check(env, param)?;
            let u = resolve_dist(*d, &t).map_err(|source| TypeError::Call {
                expr: snippet(e),
                source,
            })?;
            Ok((rebuilt(ExprKind::DistDraw(*d, Box::new(param))), u))
        }
        ExprKind::Let(bound, x, body) => {
            let (bound, t) = check(env, bound)?;
            let (body, u) = check(&env.extend(x.clone(), t), body)?;
            Ok((
                rebuilt(ExprKind::Let(Box::new(bound), x.clone(), Box::new(body))),
                u,
            ))
        }
        ExprKind::NSwitch {
            scrutinee,
            cases,
            default,
        } => {
            let (scrutinee, t) = check(env, scrutinee)?;
            if !subtype(&t, &Type::RAT) {
                return Err(TypeError::NotNumeric {
                    found: t,
                    expr: snippet(e),
                });
            }
            // Only the branches reachable from values of `t` are typed.
            let covered = t == Type::None
                || (subtype(&t, &Type::BOOL)
                    && cases.contains_key(&Num::int(0))
                    && cases.contains_key(&Num::int(1)));
            if !covered && default.is_none() {
                return Err(TypeError::Uncovered {
                    scrutinee: t,
                    expr: snippet(e),
                });
            }
            let mut types = Vec::new();
            let mut new_cases = BTreeMap::new();
            for (k, branch) in cases {
                if inhabits(&Val::Num(k.clone()), &t) {
                    let (b, u) = check(env, branch)?;
                    types.push(u);
                    new_cases.insert(k.clone(), b);
                } else {
                    new_cases.insert(k.clone(), branch.clone());
                }
            }
            let default = match default {
                Some(d) if !covered => {
                    let (d, u) = check(env, d)?;
                    types.push(u);
                    Some(Box::new(d))
                }
                other => other.clone(),
            };
            Ok((
                rebuilt(ExprKind::NSwitch {
                    scrutinee: Box::new(scrutinee),
                    cases: new_cases,
                    default,
                }),
                join_all(&types),
            ))
        }
        ExprKind::Iter {
            source,
            var,
            body,
            shape,
        } => {
            let (source, t) = check(env, source)?;
            let (m, elem) = match &t {
                Type::None => (Mode::Pos, Type::None),
                Type::Coll(s, m, elem) if s == shape => (*m, (**elem).clone()),
                _ => {
                    return Err(TypeError::NotCollection {
                        shape: *shape,
                        found: t,
                        expr: snippet(e),
                    })
                }
            };
            let (body, u) = check(&env.extend(var.clone(), elem), body)?;
            let node = rebuilt(ExprKind::Iter {
                source: Box::new(source),
                var: var.clone(),
                body: Box::new(body),
                shape: *shape,
            });
            if t == Type::None {
                return Ok((node, Type::None));
            }
            let (m2, elem2) = match &u {
                Type::None => (Mode::Pos, Type::None),
                Type::Coll(s, m2, elem2) if s == shape => (*m2, (**elem2).clone()),
                _ => {
                    return Err(TypeError::NotCollection {
                        shape: *shape,
                        found: u,
                        expr: snippet(e),
                    })
                }
            };
            Ok((node, Type::coll(*shape, m.max(m2), elem2)))
        }
        ExprKind::Tuple(fields) => {
            let mut out = BTreeMap::new();
            let mut types = BTreeMap::new();
            for (i, f) in fields {
                let (f, t) = check(env, f)?;
                out.insert(i.clone(), f);
                types.insert(i.clone(), t);
            }
            Ok((rebuilt(ExprKind::Tuple(out)), Type::Prod(types)))
        }
        ExprKind::Select(inner, field) => {
            let (inner, t) = check(env, inner)?;
            let u = match &t {
                Type::None => Type::None,
                Type::Prod(fs) if fs.contains_key(field) => fs[field].clone(),
                _ => {
                    return Err(TypeError::NoField {
                        found: t,
                        field: field.clone(),
                        expr: snippet(e),
                    })
                }
            };
            Ok((rebuilt(ExprKind::Select(Box::new(inner), field.clone())), u))
        }
        ExprKind::Cons(c, inner) => {
            let (inner, t) = check(env, inner)?;
            Ok((
                rebuilt(ExprKind::Cons(c.clone(), Box::new(inner))),
                Type::sum([(c.clone(), t)]),
            ))
        }
        ExprKind::CSwitch {
            scrutinee,
            cases,
            default,
        } => {
            let (scrutinee, t) = check(env, scrutinee)?;
            let scrut_cases = match &t {
                Type::None => BTreeMap::new(),
                Type::Sum(cs) => cs.clone(),
                _ => {
                    return Err(TypeError::NotTagged {
                        found: t,
                        expr: snippet(e),
                    })
                }
            };
            let mut types = Vec::new();
            let mut new_cases = cases.clone();
            let mut default_used = false;
            for (c, payload) in &scrut_cases {
                match cases.get(c) {
                    Some((x, branch)) => {
                        let (b, u) = check(&env.extend(x.clone(), payload.clone()), branch)?;
                        types.push(u);
                        new_cases.insert(c.clone(), (x.clone(), b));
                    }
                    None if default.is_some() => default_used = true,
                    None => {
                        return Err(TypeError::Unhandled {
                            case: c.to_string(),
                            expr: snippet(e),
                        })
                    }
                }
            }
            let default = match default {
                Some(d) if default_used => {
                    let (d, u) = check(env, d)?;
                    types.push(u);
                    Some(Box::new(d))
                }
                other => other.clone(),
            };
            Ok((
                rebuilt(ExprKind::CSwitch {
                    scrutinee: Box::new(scrutinee),
                    cases: new_cases,
                    default,
                }),
                join_all(&types),
            ))
        }
    }
}
