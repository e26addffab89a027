//! The structural type lattice: membership, emptiness, subtyping, join and
//! meet.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::values::{CaseId, FieldId, Num, Val};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NumKind {
    Bool,
    Nat,
    Int,
    Rat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    List,
    Bag,
    Set,
}

impl Shape {
    pub const ALL: [Shape; 3] = [Shape::List, Shape::Bag, Shape::Set];

    pub fn name(self) -> &'static str {
        match self {
            Shape::List => "list",
            Shape::Bag => "bag",
            Shape::Set => "set",
        }
    }

    /// Whether a collection of this shape converts naturally to `target`
    /// (list → bag → set, reflexive).
    pub fn converts_to(self, target: Shape) -> bool {
        self <= target
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Collection mode: `Pos` collections are never empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Pos,
    Opt,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Type {
    Any,
    None,
    Num(NumKind),
    Coll(Shape, Mode, Arc<Type>),
    Prod(BTreeMap<FieldId, Type>),
    Sum(BTreeMap<CaseId, Type>),
}

impl Type {
    pub const BOOL: Type = Type::Num(NumKind::Bool);
    pub const NAT: Type = Type::Num(NumKind::Nat);
    pub const INT: Type = Type::Num(NumKind::Int);
    pub const RAT: Type = Type::Num(NumKind::Rat);

    pub fn coll(shape: Shape, mode: Mode, elem: Type) -> Type {
        Type::Coll(shape, mode, Arc::new(elem))
    }

    pub fn unit() -> Type {
        Type::Prod(BTreeMap::new())
    }

    pub fn pair(a: Type, b: Type) -> Type {
        Type::tuple([a, b])
    }

    pub fn tuple(items: impl IntoIterator<Item = Type>) -> Type {
        Type::Prod(
            items
                .into_iter()
                .enumerate()
                .map(|(i, t)| (FieldId::Pos(i as u32 + 1), t))
                .collect(),
        )
    }

    pub fn sum(cases: impl IntoIterator<Item = (CaseId, Type)>) -> Type {
        Type::Sum(cases.into_iter().collect())
    }
}

/// `v ∈ ⟦t⟧`. Records may carry fields beyond those the type declares.
pub fn inhabits(v: &Val, t: &Type) -> bool {
    match (t, v) {
        (Type::Any, _) => true,
        (Type::None, _) => false,
        (Type::Num(k), Val::Num(n)) => match k {
            NumKind::Bool => n.is_bool(),
            NumKind::Nat => n.is_nan() || n.is_natural(),
            NumKind::Int => n.is_nan() || n.is_integer(),
            NumKind::Rat => true,
        },
        (Type::Coll(s, m, elem), _) => {
            if v.shape() != Some(*s) {
                return false;
            }
            let groups = v.grouped_elements().unwrap_or_default();
            (*m == Mode::Opt || !groups.is_empty()) && groups.iter().all(|(x, _)| inhabits(x, elem))
        }
        (Type::Prod(fields), Val::Record(r)) => fields
            .iter()
            .all(|(f, ft)| r.get(f).is_some_and(|x| inhabits(x, ft))),
        (Type::Sum(cases), Val::Tag(c, p)) => cases.get(c).is_some_and(|ct| inhabits(p, ct)),
        _ => false,
    }
}

/// Syntactic emptiness.
pub fn is_empty(t: &Type) -> bool {
    match t {
        Type::None => true,
        Type::Coll(_, Mode::Pos, elem) => is_empty(elem),
        Type::Sum(cases) => cases.values().all(is_empty),
        Type::Prod(fields) => fields.values().any(is_empty),
        _ => false,
    }
}

/// `t1 ⊑ t2`.
pub fn subtype(t1: &Type, t2: &Type) -> bool {
    match (t1, t2) {
        (Type::None, _) | (_, Type::Any) => true,
        (Type::Num(a), Type::Num(b)) => a <= b,
        (Type::Coll(s1, m1, e1), Type::Coll(s2, m2, e2)) => s1 == s2 && m1 <= m2 && subtype(e1, e2),
        (Type::Prod(f1), Type::Prod(f2)) => f2
            .iter()
            .all(|(i, b)| f1.get(i).is_some_and(|a| subtype(a, b))),
        (Type::Sum(c1), Type::Sum(c2)) => c1
            .iter()
            .all(|(i, a)| c2.get(i).is_some_and(|b| subtype(a, b))),
        _ => false,
    }
}

/// Least upper bound.
pub fn join(t1: &Type, t2: &Type) -> Type {
    match (t1, t2) {
        (Type::None, t) | (t, Type::None) => t.clone(),
        (Type::Any, _) | (_, Type::Any) => Type::Any,
        (Type::Num(a), Type::Num(b)) => Type::Num(*a.max(b)),
        (Type::Coll(s1, m1, e1), Type::Coll(s2, m2, e2)) if s1 == s2 => {
            Type::coll(*s1, *m1.max(m2), join(e1, e2))
        }
        (Type::Prod(f1), Type::Prod(f2)) => Type::Prod(
            f1.iter()
                .filter_map(|(i, a)| f2.get(i).map(|b| (i.clone(), join(a, b))))
                .collect(),
        ),
        (Type::Sum(c1), Type::Sum(c2)) => {
            let mut cases = c1.clone();
            for (i, b) in c2 {
                let t = match cases.get(i) {
                    Some(a) => join(a, b),
                    None => b.clone(),
                };
                cases.insert(i.clone(), t);
            }
            Type::Sum(cases)
        }
        _ => Type::Any,
    }
}

/// Greatest lower bound.
pub fn meet(t1: &Type, t2: &Type) -> Type {
    match (t1, t2) {
        (Type::Any, t) | (t, Type::Any) => t.clone(),
        (Type::None, _) | (_, Type::None) => Type::None,
        (Type::Num(a), Type::Num(b)) => Type::Num(*a.min(b)),
        (Type::Coll(s1, m1, e1), Type::Coll(s2, m2, e2)) if s1 == s2 => {
            Type::coll(*s1, *m1.min(m2), meet(e1, e2))
        }
        (Type::Prod(f1), Type::Prod(f2)) => {
            let mut fields = f1.clone();
            for (i, b) in f2 {
                let t = match fields.get(i) {
                    Some(a) => meet(a, b),
                    None => b.clone(),
                };
                fields.insert(i.clone(), t);
            }
            Type::Prod(fields)
        }
        (Type::Sum(c1), Type::Sum(c2)) => Type::Sum(
            c1.iter()
                .filter_map(|(i, a)| c2.get(i).map(|b| (i.clone(), meet(a, b))))
                .collect(),
        ),
        _ => Type::None,
    }
}

pub fn join_all<'a>(types: impl IntoIterator<Item = &'a Type>) -> Type {
    types.into_iter().fold(Type::None, |acc, t| join(&acc, t))
}

/// The smallest type a literal of value `v` is given.
pub fn least_type_of(v: &Val) -> Type {
    match v {
        Val::Num(Num::NaN) => Type::RAT,
        Val::Num(n) if n.is_bool() => Type::BOOL,
        Val::Num(n) if n.is_natural() => Type::NAT,
        Val::Num(n) if n.is_integer() => Type::INT,
        Val::Num(_) => Type::RAT,
        Val::Record(r) => Type::Prod(
            r.iter()
                .map(|(f, x)| (f.clone(), least_type_of(x)))
                .collect(),
        ),
        Val::Tag(c, p) => Type::sum([(c.clone(), least_type_of(p))]),
        _ => {
            let shape = v.shape().expect("collection");
            let groups = v.grouped_elements().unwrap_or_default();
            let mode = if groups.is_empty() {
                Mode::Opt
            } else {
                Mode::Pos
            };
            let elem = groups
                .iter()
                .fold(Type::None, |acc, (x, _)| join(&acc, &least_type_of(x)));
            Type::coll(shape, mode, elem)
        }
    }
}

impl fmt::Display for NumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NumKind::Bool => "bool",
            NumKind::Nat => "nat",
            NumKind::Int => "int",
            NumKind::Rat => "rat",
        })
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Any => f.write_str("any"),
            Type::None => f.write_str("none"),
            Type::Num(k) => write!(f, "num({k})"),
            Type::Coll(s, m, e) => {
                let mode = if *m == Mode::Pos { "pos" } else { "opt" };
                write!(f, "coll({s}, {mode}, {e})")
            }
            Type::Prod(fields) => {
                f.write_str("prod(")?;
                for (i, (id, t)) in fields.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{id}: {t}")?;
                }
                f.write_str(")")
            }
            Type::Sum(cases) => {
                f.write_str("sum(")?;
                for (i, (c, t)) in cases.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "@{c}: {t}")?;
                }
                f.write_str(")")
            }
        }
    }
}
