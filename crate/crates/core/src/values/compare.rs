//! Object-level comparisons (`=*`, `⊆*`, ...) as opposed to the structural
//! identity used for collation.

use super::{CmpOp, Num, Val, ValueError};

/// Structural identity; `NaN` is identical to `NaN`.
pub fn meta_equal(v: &Val, w: &Val) -> bool {
    v == w
}

/// True when `NaN` occurs anywhere inside `v`.
pub fn contains_nan(v: &Val) -> bool {
    match v {
        Val::Num(n) => n.is_nan(),
        Val::List(l) => l.iter().any(contains_nan),
        Val::Bag(b) => b.keys().any(contains_nan),
        Val::Set(s) => s.iter().any(contains_nan),
        Val::Record(r) => r.values().any(contains_nan),
        Val::Tag(_, p) => contains_nan(p),
    }
}

/// Element-level `=*`: numeric `=` on numbers, star-equality on nested
/// collections, field-wise on records, case and payload on tags.
pub fn star_eq(a: &Val, b: &Val) -> bool {
    match (a, b) {
        (Val::Num(x), Val::Num(y)) => Num::compare(CmpOp::Eq, x, y),
        (Val::List(x), Val::List(y)) => {
            x.len() == y.len() && x.iter().zip(y.iter()).all(|(p, q)| star_eq(p, q))
        }
        (Val::Bag(_), Val::Bag(_)) | (Val::Set(_), Val::Set(_)) => {
            subset_same_shape(a, b) && subset_same_shape(b, a)
        }
        (Val::Record(x), Val::Record(y)) => {
            x.len() == y.len()
                && x.iter()
                    .all(|(f, p)| y.get(f).is_some_and(|q| star_eq(p, q)))
        }
        (Val::Tag(c, p), Val::Tag(d, q)) => c == d && star_eq(p, q),
        _ => false,
    }
}

fn subset_same_shape(a: &Val, b: &Val) -> bool {
    match (a, b) {
        (Val::Set(x), Val::Set(y)) => x.iter().all(|p| y.iter().any(|q| star_eq(p, q))),
        // `=*` is the identity on NaN-free values and matches nothing that
        // contains NaN, so instance matching reduces to comparing counts.
        (Val::Bag(x), Val::Bag(y)) => x
            .iter()
            .all(|(p, k)| !contains_nan(p) && y.get(p).is_some_and(|m| m >= k)),
        (Val::List(x), Val::List(y)) => {
            x.is_empty()
                || (x.len() <= y.len()
                    && y.windows(x.len())
                        .any(|w| w.iter().zip(x.iter()).all(|(q, p)| star_eq(p, q))))
        }
        _ => false,
    }
}

/// `A ⊆* B` for two collections of the same shape. Lists use the
/// contiguous-sublist reading.
pub fn star_subset(a: &Val, b: &Val) -> Result<bool, ValueError> {
    match (a.shape(), b.shape()) {
        (Some(s), Some(t)) if s == t => Ok(subset_same_shape(a, b)),
        (Some(_), Some(_)) => Err(ValueError::ShapeMismatch(a.to_string(), b.to_string())),
        (None, _) => Err(ValueError::NotCollection(a.to_string())),
        (_, None) => Err(ValueError::NotCollection(b.to_string())),
    }
}

/// The six relations derived from `⊆*`: `≤` is `⊆*`, `<` is `⊂*`, and so on.
pub fn star_compare(op: CmpOp, a: &Val, b: &Val) -> Result<Val, ValueError> {
    let le = star_subset(a, b)?;
    let ge = star_subset(b, a)?;
    let r = match op {
        CmpOp::Le => le,
        CmpOp::Ge => ge,
        CmpOp::Lt => le && !ge,
        CmpOp::Gt => ge && !le,
        CmpOp::Eq => le && ge,
        CmpOp::Ne => !(le && ge),
    };
    Ok(Val::bool(r))
}

/// Comparison operators as seen by programs: numeric on numbers, starred
/// on same-shape collections.
pub fn compare(op: CmpOp, a: &Val, b: &Val) -> Result<Val, ValueError> {
    match (a, b) {
        (Val::Num(x), Val::Num(y)) => Ok(Val::bool(Num::compare(op, x, y))),
        _ if a.shape().is_some() && b.shape().is_some() => star_compare(op, a, b),
        _ => Err(ValueError::Incomparable(a.to_string(), b.to_string())),
    }
}
