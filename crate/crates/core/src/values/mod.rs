//! The untyped value universe.
//!
//! Numbers are exact rationals extended with a single `NaN`. Booleans are
//! the numbers `0` and `1`. Collections come in three shapes (lists, bags,
//! sets); bags and sets are keyed by structural identity, under which `NaN`
//! is one ordinary key. The derived ordering on [`Val`] is the canonical
//! order used everywhere iteration order matters: numbers by value with
//! `NaN` last, then lists, bags, sets, records and tagged values.

mod arith;
mod collections;
mod compare;
mod display;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use arith::{num_arith, num_compare, ArithOp, CmpOp};
pub use collections::{coll_concat, coll_convert, mults, range, singleton, without};
pub use compare::{compare, contains_nan, meta_equal, star_compare, star_eq, star_subset};
pub use display::{approx_decimal, exact_decimal, render_rational};

use crate::types::Shape;

/// Exact rational number.
pub type Rational = BigRational;

/// Bag contents: distinct element ↦ positive multiplicity.
pub type BagMap = BTreeMap<Val, u64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValueError {
    #[error("expected a number, found {0}")]
    NotNumeric(String),
    #[error("integer operation applied to the non-integer {0}")]
    NotInteger(String),
    #[error("expected a collection, found {0}")]
    NotCollection(String),
    #[error("expected a bag, found {0}")]
    NotBag(String),
    #[error("collections of different shapes: {0} and {1}")]
    ShapeMismatch(String, String),
    #[error("cannot compare {0} with {1}")]
    Incomparable(String, String),
    #[error("cannot convert a {from} into a {to}")]
    BadConversion { from: Shape, to: Shape },
    #[error("{0} does not occur in the collection")]
    Absent(String),
}

/// A number: an exact rational, or not-a-number.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Num {
    Rat(Rational),
    NaN,
}

impl Num {
    pub fn int(i: i64) -> Num {
        Num::Rat(Rational::from_integer(BigInt::from(i)))
    }

    /// `n/d`, or `NaN` when `d` is zero.
    pub fn ratio(n: i64, d: i64) -> Num {
        if d == 0 {
            Num::NaN
        } else {
            Num::Rat(Rational::new(BigInt::from(n), BigInt::from(d)))
        }
    }

    pub fn is_nan(&self) -> bool {
        matches!(self, Num::NaN)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Num::Rat(r) => Some(r),
            Num::NaN => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Num::Rat(r) if r.is_integer())
    }

    /// Integers `>= 0`.
    pub fn is_natural(&self) -> bool {
        matches!(self, Num::Rat(r) if r.is_integer() && !r.is_negative())
    }

    pub fn is_bool(&self) -> bool {
        matches!(self, Num::Rat(r) if r.is_zero() || r.is_one())
    }
}

impl From<Rational> for Num {
    fn from(r: Rational) -> Self {
        Num::Rat(r)
    }
}

/// Record field identifier. Positional fields are numbered from 1 and sort
/// before symbolic ones.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldId {
    Pos(u32),
    Named(Arc<str>),
}

impl FieldId {
    pub fn named(name: &str) -> FieldId {
        FieldId::Named(Arc::from(name))
    }
}

/// Tag (sum case) identifier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CaseId(Arc<str>);

impl CaseId {
    pub fn new(name: &str) -> CaseId {
        debug_assert!(!name.is_empty());
        CaseId(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// An Alea value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    Num(Num),
    List(Arc<Vec<Val>>),
    Bag(Arc<BagMap>),
    Set(Arc<BTreeSet<Val>>),
    Record(Arc<BTreeMap<FieldId, Val>>),
    Tag(CaseId, Arc<Val>),
}

impl Val {
    pub fn int(i: i64) -> Val {
        Val::Num(Num::int(i))
    }

    pub fn ratio(n: i64, d: i64) -> Val {
        Val::Num(Num::ratio(n, d))
    }

    pub fn rat(r: Rational) -> Val {
        Val::Num(Num::Rat(r))
    }

    pub fn nan() -> Val {
        Val::Num(Num::NaN)
    }

    pub fn bool(b: bool) -> Val {
        Val::int(b as i64)
    }

    pub fn list(items: impl IntoIterator<Item = Val>) -> Val {
        Val::List(Arc::new(items.into_iter().collect()))
    }

    /// Builds a bag from element instances, counting repeats.
    pub fn bag(items: impl IntoIterator<Item = Val>) -> Val {
        let mut map = BagMap::new();
        for v in items {
            *map.entry(v).or_insert(0) += 1;
        }
        Val::Bag(Arc::new(map))
    }

    /// Builds a bag from `(element, multiplicity)` pairs; zero counts are dropped.
    pub fn bag_from_counts(items: impl IntoIterator<Item = (Val, u64)>) -> Val {
        let mut map = BagMap::new();
        for (v, k) in items {
            if k > 0 {
                *map.entry(v).or_insert(0) += k;
            }
        }
        Val::Bag(Arc::new(map))
    }

    pub fn set(items: impl IntoIterator<Item = Val>) -> Val {
        Val::Set(Arc::new(items.into_iter().collect()))
    }

    pub fn record(fields: impl IntoIterator<Item = (FieldId, Val)>) -> Val {
        Val::Record(Arc::new(fields.into_iter().collect()))
    }

    /// A record with positional fields `#1 .. #n`.
    pub fn tuple(items: impl IntoIterator<Item = Val>) -> Val {
        Val::record(
            items
                .into_iter()
                .enumerate()
                .map(|(i, v)| (FieldId::Pos(i as u32 + 1), v)),
        )
    }

    pub fn unit() -> Val {
        Val::Record(Arc::new(BTreeMap::new()))
    }

    pub fn tag(case: &str, payload: Val) -> Val {
        Val::Tag(CaseId::new(case), Arc::new(payload))
    }

    pub fn empty(shape: Shape) -> Val {
        match shape {
            Shape::List => Val::List(Arc::default()),
            Shape::Bag => Val::Bag(Arc::default()),
            Shape::Set => Val::Set(Arc::default()),
        }
    }

    pub fn as_num(&self) -> Option<&Num> {
        match self {
            Val::Num(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.as_num().and_then(Num::as_rational)
    }

    pub fn as_record(&self) -> Option<&BTreeMap<FieldId, Val>> {
        match self {
            Val::Record(r) => Some(r),
            _ => None,
        }
    }

    pub fn field(&self, id: &FieldId) -> Option<&Val> {
        self.as_record().and_then(|r| r.get(id))
    }

    pub fn as_bag(&self) -> Option<&BagMap> {
        match self {
            Val::Bag(b) => Some(b),
            _ => None,
        }
    }

    pub fn shape(&self) -> Option<Shape> {
        match self {
            Val::List(_) => Some(Shape::List),
            Val::Bag(_) => Some(Shape::Bag),
            Val::Set(_) => Some(Shape::Set),
            _ => None,
        }
    }

    /// Number of element instances (bag multiplicities counted).
    pub fn size(&self) -> Option<u64> {
        match self {
            Val::List(l) => Some(l.len() as u64),
            Val::Bag(b) => Some(b.values().sum()),
            Val::Set(s) => Some(s.len() as u64),
            _ => None,
        }
    }

    /// Distinct elements with their multiplicities, in iteration order:
    /// list positions (each with count 1), bag keys, set elements.
    pub fn grouped_elements(&self) -> Option<Vec<(&Val, u64)>> {
        match self {
            Val::List(l) => Some(l.iter().map(|v| (v, 1)).collect()),
            Val::Bag(b) => Some(b.iter().map(|(v, k)| (v, *k)).collect()),
            Val::Set(s) => Some(s.iter().map(|v| (v, 1)).collect()),
            _ => None,
        }
    }

    /// Every element instance in iteration order; bag instances of one key
    /// are consecutive.
    pub fn instances(&self) -> Option<Vec<&Val>> {
        self.grouped_elements().map(|groups| {
            groups
                .into_iter()
                .flat_map(|(v, k)| std::iter::repeat_n(v, k as usize))
                .collect()
        })
    }

    /// Checks the representation invariants recursively: canonical
    /// rationals, positive multiplicities, positional fields starting at 1,
    /// non-empty case names.
    pub fn is_canonical(&self) -> bool {
        match self {
            Val::Num(Num::NaN) => true,
            Val::Num(Num::Rat(r)) => r.denom().is_positive() && r.numer().gcd(r.denom()).is_one(),
            Val::List(l) => l.iter().all(Val::is_canonical),
            Val::Bag(b) => b.iter().all(|(v, k)| *k > 0 && v.is_canonical()),
            Val::Set(s) => s.iter().all(Val::is_canonical),
            Val::Record(r) => r
                .iter()
                .all(|(f, v)| !matches!(f, FieldId::Pos(0)) && v.is_canonical()),
            Val::Tag(c, p) => !c.as_str().is_empty() && p.is_canonical(),
        }
    }
}

impl From<Num> for Val {
    fn from(n: Num) -> Self {
        Val::Num(n)
    }
}
