//! Type inference and the three evaluators: deterministic, exact
//! distribution analysis, and seeded pseudo-random simulation.

mod det;
mod rand;
pub mod rng;
mod stoch;
mod typing;

pub use det::eval_det;
pub use rand::eval_rand;
pub use rng::{random, RngState, DEFAULT_SEED};
pub use stoch::{eval_dist, eval_dist_with};
pub use typing::{check, check_program, infer, TypeError};

use std::collections::BTreeMap;

use crate::ast::{Expr, VarId};
use crate::builtins::BuiltinError;
use crate::dist::DistError;
use crate::types::Shape;
use crate::values::{coll_concat, CaseId, Num, Val, ValueError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("`{0}` is not deterministic")]
    NotDeterministic(String),
    #[error("no switch branch matches {0}")]
    NoBranch(String),
    #[error("expected {expected}, found {found}")]
    Mismatch { expected: String, found: String },
    #[error(transparent)]
    Builtin(#[from] BuiltinError),
    #[error(transparent)]
    Value(#[from] ValueError),
    #[error(transparent)]
    Dist(#[from] DistError),
}

/// Switches for the exact evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    /// Evaluate syntactically deterministic subexpressions directly.
    pub deterministic_shortcut: bool,
    /// Combine iid draws over equal bag elements by repeated squaring.
    pub iid_power: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            deterministic_shortcut: true,
            iid_power: true,
        }
    }
}

impl EvalOptions {
    /// Every rule applied literally, without shortcuts.
    pub fn literal() -> Self {
        EvalOptions {
            deterministic_shortcut: false,
            iid_power: false,
        }
    }
}

fn lookup(env: &crate::ast::Env, x: &VarId) -> Result<Val, EvalError> {
    env.lookup(x)
        .cloned()
        .ok_or_else(|| EvalError::Unbound(x.to_string()))
}

fn mismatch(expected: impl Into<String>, found: &Val) -> EvalError {
    EvalError::Mismatch {
        expected: expected.into(),
        found: found.to_string(),
    }
}

/// The branch of a numeric switch selected by `v`.
fn numeric_branch<'a>(
    cases: &'a BTreeMap<Num, Expr>,
    default: Option<&'a Expr>,
    v: &Val,
) -> Result<&'a Expr, EvalError> {
    let n = v.as_num().ok_or_else(|| mismatch("a number", v))?;
    cases
        .get(n)
        .or(default)
        .ok_or_else(|| EvalError::NoBranch(v.to_string()))
}

/// The branch of a case switch selected by `v`, with the binder for the
/// payload when a named case matched.
fn case_branch<'a>(
    cases: &'a BTreeMap<CaseId, (VarId, Expr)>,
    default: Option<&'a Expr>,
    v: &'a Val,
) -> Result<(Option<(&'a VarId, &'a Val)>, &'a Expr), EvalError> {
    let Val::Tag(c, payload) = v else {
        return Err(mismatch("a tagged value", v));
    };
    match cases.get(c) {
        Some((x, e)) => Ok((Some((x, &**payload)), e)),
        None => default
            .map(|d| (None, d))
            .ok_or_else(|| EvalError::NoBranch(v.to_string())),
    }
}

fn field_of(v: &Val, field: &crate::values::FieldId) -> Result<Val, EvalError> {
    v.field(field)
        .cloned()
        .ok_or_else(|| mismatch(format!("a record with field {field}"), v))
}

fn expect_shape(v: &Val, shape: Shape) -> Result<(), EvalError> {
    if v.shape() == Some(shape) {
        Ok(())
    } else {
        Err(mismatch(format!("a {shape}"), v))
    }
}

/// `v ⊕ … ⊕ v` with `k` copies of the collection `v`.
fn repeat_coll(v: &Val, k: u64) -> Result<Val, EvalError> {
    match v {
        Val::Bag(b) => Ok(Val::bag_from_counts(
            b.iter().map(|(x, n)| (x.clone(), n * k)),
        )),
        Val::Set(_) => Ok(v.clone()),
        _ => {
            let mut acc = v.clone();
            for _ in 1..k {
                acc = coll_concat(&acc, v)?;
            }
            Ok(acc)
        }
    }
}
