use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{BagMap, Num, Val, ValueError};
use crate::types::Shape;

/// Forgetful conversion along list → bag → set. Identity conversions are
/// allowed; anything going backwards is an error.
pub fn coll_convert(c: &Val, target: Shape) -> Result<Val, ValueError> {
    let from = c
        .shape()
        .ok_or_else(|| ValueError::NotCollection(c.to_string()))?;
    if from == target {
        return Ok(c.clone());
    }
    match (c, target) {
        (Val::List(l), Shape::Bag) => Ok(Val::bag(l.iter().cloned())),
        (Val::List(l), Shape::Set) => Ok(Val::set(l.iter().cloned())),
        (Val::Bag(b), Shape::Set) => Ok(Val::set(b.keys().cloned())),
        _ => Err(ValueError::BadConversion { from, to: target }),
    }
}

/// `+` on collections: list append, bag multiplicity sum, set union.
pub fn coll_concat(a: &Val, b: &Val) -> Result<Val, ValueError> {
    match (a, b) {
        (Val::List(x), Val::List(y)) => {
            if y.is_empty() {
                return Ok(a.clone());
            }
            if x.is_empty() {
                return Ok(b.clone());
            }
            let mut out = Vec::with_capacity(x.len() + y.len());
            out.extend(x.iter().cloned());
            out.extend(y.iter().cloned());
            Ok(Val::List(Arc::new(out)))
        }
        (Val::Bag(x), Val::Bag(y)) => {
            let (big, small) = if x.len() >= y.len() { (x, y) } else { (y, x) };
            if small.is_empty() {
                return Ok(Val::Bag(big.clone()));
            }
            let mut out: BagMap = (**big).clone();
            for (v, k) in small.iter() {
                *out.entry(v.clone()).or_insert(0) += k;
            }
            Ok(Val::Bag(Arc::new(out)))
        }
        (Val::Set(x), Val::Set(y)) => {
            let (big, small) = if x.len() >= y.len() { (x, y) } else { (y, x) };
            if small.is_empty() {
                return Ok(Val::Set(big.clone()));
            }
            let mut out = (**big).clone();
            out.extend(small.iter().cloned());
            Ok(Val::Set(Arc::new(out)))
        }
        _ => match (a.shape(), b.shape()) {
            (Some(_), Some(_)) => Err(ValueError::ShapeMismatch(a.to_string(), b.to_string())),
            (None, _) => Err(ValueError::NotCollection(a.to_string())),
            (_, None) => Err(ValueError::NotCollection(b.to_string())),
        },
    }
}

/// The bag of multiplicities of the distinct elements of a bag.
pub fn mults(b: &Val) -> Result<Val, ValueError> {
    let bag = b
        .as_bag()
        .ok_or_else(|| ValueError::NotBag(b.to_string()))?;
    Ok(Val::bag(bag.values().map(|&k| Val::int(k as i64))))
}

/// Removes one instance of `v` (by identity) from a bag or set.
pub fn without(c: &Val, v: &Val) -> Result<Val, ValueError> {
    match c {
        Val::Bag(b) => {
            let mut out = (**b).clone();
            match out.get_mut(v) {
                Some(k) if *k > 1 => *k -= 1,
                Some(_) => {
                    out.remove(v);
                }
                None => return Err(ValueError::Absent(v.to_string())),
            }
            Ok(Val::Bag(Arc::new(out)))
        }
        Val::Set(s) => {
            let mut out = (**s).clone();
            if !out.remove(v) {
                return Err(ValueError::Absent(v.to_string()));
            }
            Ok(Val::Set(Arc::new(out)))
        }
        Val::List(_) => Err(ValueError::NotBag(c.to_string())),
        _ => Err(ValueError::NotCollection(c.to_string())),
    }
}

pub fn singleton(shape: Shape, v: Val) -> Val {
    match shape {
        Shape::List => Val::list([v]),
        Shape::Bag => Val::bag([v]),
        Shape::Set => Val::set([v]),
    }
}

/// Integers `lo ..= hi` as a collection; empty when `hi < lo` or either
/// bound is `NaN`.
pub fn range(shape: Shape, lo: &Val, hi: &Val) -> Result<Val, ValueError> {
    let bound = |v: &Val| -> Result<Option<BigInt>, ValueError> {
        match v.as_num() {
            Some(Num::NaN) => Ok(None),
            Some(Num::Rat(r)) if r.is_integer() => Ok(Some(r.to_integer())),
            Some(Num::Rat(r)) => Err(ValueError::NotInteger(r.to_string())),
            None => Err(ValueError::NotNumeric(v.to_string())),
        }
    };
    let (Some(lo), Some(hi)) = (bound(lo)?, bound(hi)?) else {
        return Ok(Val::empty(shape));
    };
    let count = (&hi - &lo + 1u32).to_i64().unwrap_or(i64::MAX).max(0);
    let items = (0..count).map(|i| Val::rat((&lo + i).into()));
    Ok(match shape {
        Shape::List => Val::list(items),
        Shape::Bag => Val::bag(items),
        Shape::Set => Val::set(items),
    })
}
