//! Built-in functions and distributions.
//!
//! Every function has one value-level implementation ([`apply`]) and a set
//! of type signatures, some of them parametric families. A call with
//! argument type `t` collects every signature whose argument type is a
//! supertype of `t` and takes the meet of their result types ([`resolve`]).
//!
//! Reduction (`(+)⟨…⟩`, `max{…}`) is its own function family,
//! [`FunId::Reduce`], parameterised by the binary operation and the element
//! domain. The domain fixes the algebraic properties and the neutral
//! element; the type checker fills it in when the desugarer left it as
//! [`Domain::Auto`].

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::dist::{Dist, DistError, Prob};
use crate::types::{join, meet, subtype, Mode, NumKind, Shape, Type};
use crate::values::{
    coll_concat, coll_convert, compare, mults, num_arith, range, singleton, without, ArithOp,
    CmpOp, FieldId, Num, Val, ValueError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunId {
    Add,
    Sub,
    Mul,
    Div,
    IntDiv,
    Mod,
    Min,
    Max,
    Neg,
    Not,
    Cmp(CmpKey),
    Even,
    Odd,
    Abs,
    Mults,
    Size,
    /// Natural conversion to the given shape (`bag(…)`, `set(…)`).
    Convert(Shape),
    /// One-element collection; target of collection displays.
    Single(Shape),
    /// `lo .. hi` with computed bounds.
    Range(Shape),
    /// Removes one instance of `#2` from the collection `#1`.
    Without,
    Reduce(ReduceOp, Domain),
}

/// Comparison operators as a hashable, ordered key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CmpKey {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpKey {
    pub fn op(self) -> CmpOp {
        match self {
            CmpKey::Eq => CmpOp::Eq,
            CmpKey::Ne => CmpOp::Ne,
            CmpKey::Lt => CmpOp::Lt,
            CmpKey::Le => CmpOp::Le,
            CmpKey::Gt => CmpOp::Gt,
            CmpKey::Ge => CmpOp::Ge,
        }
    }
}

/// Binary operations usable in reductions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReduceOp {
    Add,
    Mul,
    Min,
    Max,
}

impl ReduceOp {
    pub fn binary(self) -> FunId {
        match self {
            ReduceOp::Add => FunId::Add,
            ReduceOp::Mul => FunId::Mul,
            ReduceOp::Min => FunId::Min,
            ReduceOp::Max => FunId::Max,
        }
    }

    pub fn from_binary(f: FunId) -> Option<ReduceOp> {
        Some(match f {
            FunId::Add => ReduceOp::Add,
            FunId::Mul => ReduceOp::Mul,
            FunId::Min => ReduceOp::Min,
            FunId::Max => ReduceOp::Max,
            _ => return None,
        })
    }
}

/// Element domain of a reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Domain {
    /// Not yet resolved; only non-empty collections can be reduced.
    Auto,
    Bool,
    Num,
    Coll(Shape),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DistId {
    Uniform,
    Bernoulli,
}

impl DistId {
    pub fn name(self) -> &'static str {
        match self {
            DistId::Uniform => "uniform",
            DistId::Bernoulli => "bernoulli",
        }
    }

    pub fn from_name(name: &str) -> Option<DistId> {
        match name {
            "uniform" => Some(DistId::Uniform),
            "bernoulli" => Some(DistId::Bernoulli),
            _ => None,
        }
    }
}

impl FunId {
    pub fn name(self) -> String {
        let s = match self {
            FunId::Add => "add",
            FunId::Sub => "sub",
            FunId::Mul => "mul",
            FunId::Div => "div",
            FunId::IntDiv => "idiv",
            FunId::Mod => "mod",
            FunId::Min => "min",
            FunId::Max => "max",
            FunId::Neg => "neg",
            FunId::Not => "not",
            FunId::Cmp(k) => match k {
                CmpKey::Eq => "eq",
                CmpKey::Ne => "ne",
                CmpKey::Lt => "lt",
                CmpKey::Le => "le",
                CmpKey::Gt => "gt",
                CmpKey::Ge => "ge",
            },
            FunId::Even => "even",
            FunId::Odd => "odd",
            FunId::Abs => "abs",
            FunId::Mults => "mults",
            FunId::Size => "size",
            FunId::Convert(s) => return s.name().to_string(),
            FunId::Single(s) => return format!("single-{s}"),
            FunId::Range(s) => return format!("range-{s}"),
            FunId::Without => "without",
            FunId::Reduce(op, d) => {
                let d = match d {
                    Domain::Auto => "auto".to_string(),
                    Domain::Bool => "bool".to_string(),
                    Domain::Num => "num".to_string(),
                    Domain::Coll(s) => s.name().to_string(),
                };
                return format!("reduce-{}-{d}", op.binary().name());
            }
        };
        s.to_string()
    }

    /// Functions callable by name in source programs.
    pub fn from_name(name: &str) -> Option<FunId> {
        Some(match name {
            "min" => FunId::Min,
            "max" => FunId::Max,
            "even" => FunId::Even,
            "odd" => FunId::Odd,
            "abs" => FunId::Abs,
            "mults" => FunId::Mults,
            "size" => FunId::Size,
            "list" => FunId::Convert(Shape::List),
            "bag" => FunId::Convert(Shape::Bag),
            "set" => FunId::Convert(Shape::Set),
            _ => return None,
        })
    }

    pub fn cmp(op: CmpOp) -> FunId {
        FunId::Cmp(match op {
            CmpOp::Eq => CmpKey::Eq,
            CmpOp::Ne => CmpKey::Ne,
            CmpOp::Lt => CmpKey::Lt,
            CmpOp::Le => CmpKey::Le,
            CmpOp::Gt => CmpKey::Gt,
            CmpOp::Ge => CmpKey::Ge,
        })
    }
}

impl fmt::Display for FunId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuiltinError {
    #[error("no signature of `{fun}` accepts an argument of type {arg}")]
    NoMatch { fun: String, arg: Type },
    #[error("`{fun}` cannot reduce a {shape}: the operation is not {property}")]
    MissingProperty {
        fun: String,
        shape: Shape,
        property: &'static str,
    },
    #[error(
        "`{fun}` has no neutral element on {elem}, so it cannot reduce a possibly empty collection"
    )]
    NoNeutral { fun: String, elem: Type },
    #[error("reduction by `{fun}` over elements of type {elem} has no stable result type")]
    Unstable { fun: String, elem: Type },
    #[error("`{fun}` is not defined on {arg}")]
    BadArgument { fun: String, arg: String },
    #[error("bernoulli parameter {0} is not a probability")]
    BadProbability(String),
    #[error("uniform distribution over an empty collection is undefined")]
    EmptyUniform,
    #[error(transparent)]
    Value(#[from] ValueError),
    #[error(transparent)]
    Dist(#[from] DistError),
}

/// Algebraic properties of a reduction on its domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicFlags {
    pub associative: bool,
    pub commutative: bool,
    pub idempotent: bool,
    pub neutral: Option<Val>,
}

/// The closed registry of algebraic properties. `None` when the operation
/// does not act on the domain.
pub fn flags(op: ReduceOp, domain: Domain) -> Option<AlgebraicFlags> {
    let f = |commutative, idempotent, neutral| {
        Some(AlgebraicFlags {
            associative: true,
            commutative,
            idempotent,
            neutral,
        })
    };
    match (op, domain) {
        (_, Domain::Auto) => None,
        (ReduceOp::Add, Domain::Num | Domain::Bool) => f(true, false, Some(Val::int(0))),
        (ReduceOp::Add, Domain::Coll(Shape::List)) => {
            f(false, false, Some(Val::empty(Shape::List)))
        }
        (ReduceOp::Add, Domain::Coll(Shape::Bag)) => f(true, false, Some(Val::empty(Shape::Bag))),
        (ReduceOp::Add, Domain::Coll(Shape::Set)) => f(true, true, Some(Val::empty(Shape::Set))),
        (ReduceOp::Mul, Domain::Num | Domain::Bool) => f(true, false, Some(Val::int(1))),
        (ReduceOp::Min, Domain::Bool) => f(true, true, Some(Val::int(1))),
        (ReduceOp::Max, Domain::Bool) => f(true, true, Some(Val::int(0))),
        (ReduceOp::Min | ReduceOp::Max, Domain::Num) => f(true, true, None),
        _ => None,
    }
}

/// The domain a reduction over elements of type `elem` operates in.
pub fn domain_of(op: ReduceOp, elem: &Type) -> Option<Domain> {
    if subtype(elem, &Type::BOOL) {
        return Some(match op {
            ReduceOp::Min | ReduceOp::Max => Domain::Bool,
            _ => Domain::Num,
        });
    }
    if subtype(elem, &Type::RAT) {
        return Some(Domain::Num);
    }
    match (op, elem) {
        (ReduceOp::Add, Type::Coll(s, _, _)) => Some(Domain::Coll(*s)),
        _ => None,
    }
}

fn num(k: NumKind) -> Type {
    Type::Num(k)
}

fn bin(a: NumKind, r: NumKind) -> (Type, Type) {
    (Type::pair(num(a), num(a)), num(r))
}

/// Fixed (non-parametric) signatures.
fn fixed_signatures(f: FunId) -> Vec<(Type, Type)> {
    use NumKind::*;
    match f {
        FunId::Add => vec![bin(Nat, Nat), bin(Int, Int), bin(Rat, Rat)],
        FunId::Sub => vec![bin(Int, Int), bin(Rat, Rat)],
        FunId::Mul => vec![bin(Bool, Bool), bin(Nat, Nat), bin(Int, Int), bin(Rat, Rat)],
        FunId::Div => vec![bin(Rat, Rat)],
        FunId::IntDiv | FunId::Mod => vec![bin(Nat, Nat), bin(Int, Int)],
        FunId::Min | FunId::Max => {
            vec![bin(Bool, Bool), bin(Nat, Nat), bin(Int, Int), bin(Rat, Rat)]
        }
        FunId::Neg => vec![(num(Int), num(Int)), (num(Rat), num(Rat))],
        FunId::Not => vec![(num(Bool), num(Bool))],
        FunId::Cmp(_) => vec![bin(Rat, Bool)],
        FunId::Even | FunId::Odd => vec![(num(Int), num(Bool))],
        FunId::Abs => vec![(num(Int), num(Nat)), (num(Rat), num(Rat))],
        FunId::Size => Shape::ALL
            .iter()
            .map(|&s| (Type::coll(s, Mode::Opt, Type::Any), num(Nat)))
            .collect(),
        FunId::Range(s) => [Bool, Nat, Int]
            .iter()
            .map(|&k| (Type::pair(num(k), num(k)), Type::coll(s, Mode::Opt, num(k))))
            .collect(),
        _ => vec![],
    }
}

/// Views `t` as a collection; `none` counts as an empty-typed collection of
/// any shape.
fn as_coll(t: &Type) -> Option<(Option<Shape>, Mode, Type)> {
    match t {
        Type::None => Some((None, Mode::Pos, Type::None)),
        Type::Coll(s, m, e) => Some((Some(*s), *m, (**e).clone())),
        _ => None,
    }
}

fn pair_components(t: &Type) -> Option<(Type, Type)> {
    match t {
        Type::Prod(fields) => {
            let a = fields.get(&FieldId::Pos(1))?.clone();
            let b = fields.get(&FieldId::Pos(2))?.clone();
            Some((a, b))
        }
        _ => None,
    }
}

/// Two collections of one shape, as the components of a pair type.
fn coll_pair(t: &Type) -> Option<(Shape, (Mode, Type), (Mode, Type))> {
    let (a, b) = pair_components(t)?;
    let (sa, ma, ea) = as_coll(&a)?;
    let (sb, mb, eb) = as_coll(&b)?;
    let shape = match (sa, sb) {
        (Some(x), Some(y)) if x == y => x,
        (Some(x), None) | (None, Some(x)) => x,
        _ => return None,
    };
    Some((shape, (ma, ea), (mb, eb)))
}

/// Result type of the best instance of each parametric family that
/// accepts `arg`.
fn parametric_results(f: FunId, arg: &Type) -> Result<Vec<Type>, BuiltinError> {
    let mut out = Vec::new();
    match f {
        FunId::Add => {
            if let Some((s, (m1, t1), (m2, t2))) = coll_pair(arg) {
                out.push(Type::coll(s, m1.min(m2), join(&t1, &t2)));
            }
        }
        FunId::Cmp(_) => {
            if coll_pair(arg).is_some() {
                out.push(Type::BOOL);
            }
        }
        FunId::Mults => {
            if let Type::Coll(Shape::Bag, m, _) = arg {
                out.push(Type::coll(Shape::Bag, *m, Type::NAT));
            }
        }
        FunId::Convert(target) => {
            if let Type::Coll(s, m, e) = arg {
                if s.converts_to(target) {
                    out.push(Type::Coll(target, *m, e.clone()));
                }
            }
        }
        FunId::Single(s) => out.push(Type::coll(s, Mode::Pos, arg.clone())),
        FunId::Without => {
            if let Some((c, _)) = pair_components(arg) {
                if let Type::Coll(s @ (Shape::Bag | Shape::Set), _, e) = &c {
                    out.push(Type::Coll(*s, Mode::Opt, e.clone()));
                }
            }
        }
        FunId::Reduce(op, domain) => {
            if let Type::Coll(s, m, e) = arg {
                out.push(reduce_type(op, domain, *s, *m, e)?);
            }
        }
        _ => {}
    }
    Ok(out)
}

fn reduce_type(
    op: ReduceOp,
    domain: Domain,
    shape: Shape,
    mode: Mode,
    elem: &Type,
) -> Result<Type, BuiltinError> {
    let fun = op.binary().name();
    let no_match = || BuiltinError::NoMatch {
        fun: FunId::Reduce(op, domain).name(),
        arg: Type::coll(shape, mode, elem.clone()),
    };
    let resolved = domain_of(op, elem).ok_or_else(no_match)?;
    if domain != Domain::Auto && domain != resolved {
        return Err(no_match());
    }
    let fl = flags(op, resolved).ok_or_else(no_match)?;
    let missing = |property| BuiltinError::MissingProperty {
        fun: fun.clone(),
        shape,
        property,
    };
    if !fl.associative {
        return Err(missing("associative"));
    }
    if matches!(shape, Shape::Bag | Shape::Set) && !fl.commutative {
        return Err(missing("commutative"));
    }
    if shape == Shape::Set && !fl.idempotent {
        return Err(missing("idempotent"));
    }
    let mut acc = elem.clone();
    if mode == Mode::Opt {
        let neutral = fl.neutral.as_ref().ok_or_else(|| BuiltinError::NoNeutral {
            fun: fun.clone(),
            elem: elem.clone(),
        })?;
        acc = join(&acc, &crate::types::least_type_of(neutral));
    }
    for _ in 0..8 {
        let step = resolve(op.binary(), &Type::pair(acc.clone(), acc.clone()))?;
        let next = join(&acc, &step);
        if next == acc {
            return Ok(acc);
        }
        acc = next;
    }
    Err(BuiltinError::Unstable {
        fun,
        elem: elem.clone(),
    })
}

/// Effective result type of calling `f` on an argument of type `arg`: the
/// meet of the result types of all applicable signatures.
pub fn resolve(f: FunId, arg: &Type) -> Result<Type, BuiltinError> {
    if *arg == Type::None {
        return Ok(Type::None);
    }
    let mut results: Vec<Type> = fixed_signatures(f)
        .into_iter()
        .filter(|(a, _)| subtype(arg, a))
        .map(|(_, r)| r)
        .collect();
    results.extend(parametric_results(f, arg)?);
    let mut it = results.into_iter();
    let first = it.next().ok_or_else(|| BuiltinError::NoMatch {
        fun: f.name(),
        arg: arg.clone(),
    })?;
    Ok(it.fold(first, |acc, t| meet(&acc, &t)))
}

/// Fills in the domain of a reduction from the argument type.
pub fn resolve_reduce_domain(f: FunId, arg: &Type) -> FunId {
    match (f, arg) {
        (FunId::Reduce(op, Domain::Auto), Type::Coll(_, _, e)) => match domain_of(op, e) {
            Some(d) => FunId::Reduce(op, d),
            None => f,
        },
        _ => f,
    }
}

fn pair_args<'a>(f: FunId, v: &'a Val) -> Result<(&'a Val, &'a Val), BuiltinError> {
    match (v.field(&FieldId::Pos(1)), v.field(&FieldId::Pos(2))) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(bad(f, v)),
    }
}

fn bad(f: FunId, v: &Val) -> BuiltinError {
    BuiltinError::BadArgument {
        fun: f.name(),
        arg: v.to_string(),
    }
}

fn arith(f: FunId) -> Option<ArithOp> {
    Some(match f {
        FunId::Add => ArithOp::Add,
        FunId::Sub => ArithOp::Sub,
        FunId::Mul => ArithOp::Mul,
        FunId::Div => ArithOp::Div,
        FunId::IntDiv => ArithOp::IntDiv,
        FunId::Mod => ArithOp::Mod,
        FunId::Min => ArithOp::Min,
        FunId::Max => ArithOp::Max,
        _ => return None,
    })
}

fn parity(f: FunId, v: &Val, want_even: bool) -> Result<Val, BuiltinError> {
    match v.as_num() {
        Some(Num::NaN) => Ok(Val::bool(false)),
        Some(Num::Rat(r)) if r.is_integer() => {
            let even = (r.to_integer() % 2u32).is_zero();
            Ok(Val::bool(even == want_even))
        }
        _ => Err(bad(f, v)),
    }
}

/// The value-level implementation of a built-in function.
pub fn apply(f: FunId, v: &Val) -> Result<Val, BuiltinError> {
    if let Some(op) = arith(f) {
        let (a, b) = pair_args(f, v)?;
        return match (a, b) {
            (Val::Num(_), Val::Num(_)) => Ok(num_arith(op, a, b)?),
            _ if f == FunId::Add => Ok(coll_concat(a, b)?),
            _ => Err(bad(f, v)),
        };
    }
    match f {
        FunId::Neg => match v.as_num() {
            Some(n) => Ok(Val::Num(Num::arith(ArithOp::Sub, &Num::int(0), n)?)),
            None => Err(bad(f, v)),
        },
        FunId::Not => match v.as_num() {
            Some(n) if n.is_bool() => Ok(Val::Num(Num::arith(ArithOp::Sub, &Num::int(1), n)?)),
            _ => Err(bad(f, v)),
        },
        FunId::Cmp(k) => {
            let (a, b) = pair_args(f, v)?;
            Ok(compare(k.op(), a, b)?)
        }
        FunId::Even => parity(f, v, true),
        FunId::Odd => parity(f, v, false),
        FunId::Abs => match v.as_num() {
            Some(Num::Rat(r)) => Ok(Val::rat(r.abs())),
            Some(Num::NaN) => Ok(Val::nan()),
            None => Err(bad(f, v)),
        },
        FunId::Mults => Ok(mults(v)?),
        FunId::Size => v
            .size()
            .map(|n| Val::int(n as i64))
            .ok_or_else(|| bad(f, v)),
        FunId::Convert(s) => Ok(coll_convert(v, s)?),
        FunId::Single(s) => Ok(singleton(s, v.clone())),
        FunId::Range(s) => {
            let (lo, hi) = pair_args(f, v)?;
            Ok(range(s, lo, hi)?)
        }
        FunId::Without => {
            let (c, x) = pair_args(f, v)?;
            Ok(without(c, x)?)
        }
        FunId::Reduce(op, domain) => reduce(op, domain, v),
        _ => unreachable!("arithmetic handled above"),
    }
}

/// `x ⊕ x ⊕ … ⊕ x` (`k ≥ 1` copies) by repeated squaring.
fn power(op: FunId, x: &Val, k: u64) -> Result<Val, BuiltinError> {
    let combine = |a: &Val, b: &Val| apply(op, &Val::tuple([a.clone(), b.clone()]));
    let mut result: Option<Val> = None;
    let mut base = x.clone();
    let mut n = k;
    loop {
        if n & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => combine(&r, &base)?,
            });
        }
        n >>= 1;
        if n == 0 {
            break;
        }
        base = combine(&base, &base)?;
    }
    Ok(result.expect("k >= 1"))
}

/// Folds a collection with a binary operation. Bags combine each class of
/// equal elements by repeated squaring; sets visit each element once. An
/// empty collection yields the neutral element of the domain.
pub fn reduce(op: ReduceOp, domain: Domain, c: &Val) -> Result<Val, BuiltinError> {
    let f = FunId::Reduce(op, domain);
    let groups = c.grouped_elements().ok_or_else(|| bad(f, c))?;
    let bin = op.binary();
    let mut acc: Option<Val> = None;
    for (x, k) in groups {
        let chunk = if k == 1 { x.clone() } else { power(bin, x, k)? };
        acc = Some(match acc {
            None => chunk,
            Some(a) => apply(bin, &Val::tuple([a, chunk]))?,
        });
    }
    match acc {
        Some(v) => Ok(v),
        None => flags(op, domain)
            .and_then(|fl| fl.neutral)
            .ok_or_else(|| bad(f, c)),
    }
}

/// Signature of a named distribution: parameter type ↦ outcome type.
pub fn resolve_dist(d: DistId, arg: &Type) -> Result<Type, BuiltinError> {
    let no_match = || BuiltinError::NoMatch {
        fun: format!("~{}", d.name()),
        arg: arg.clone(),
    };
    match d {
        DistId::Uniform => match arg {
            Type::None => Ok(Type::None),
            Type::Coll(_, Mode::Pos, e) => Ok((**e).clone()),
            _ => Err(no_match()),
        },
        DistId::Bernoulli => {
            if subtype(arg, &Type::RAT) {
                Ok(if *arg == Type::None {
                    Type::None
                } else {
                    Type::BOOL
                })
            } else {
                Err(no_match())
            }
        }
    }
}

/// The distribution a named distribution yields for a parameter value.
pub fn make_dist(d: DistId, param: &Val) -> Result<Dist, BuiltinError> {
    match d {
        DistId::Uniform => {
            let groups = param
                .grouped_elements()
                .ok_or_else(|| BuiltinError::BadArgument {
                    fun: "~uniform".into(),
                    arg: param.to_string(),
                })?;
            let total: u64 = groups.iter().map(|(_, k)| k).sum();
            if total == 0 {
                return Err(BuiltinError::EmptyUniform);
            }
            Ok(Dist::from_weighted(groups.into_iter().map(|(v, k)| {
                (v.clone(), Prob::new(k.into(), total.into()))
            }))?)
        }
        DistId::Bernoulli => {
            let p = param
                .as_rational()
                .filter(|p| !p.is_negative() && **p <= Prob::one())
                .ok_or_else(|| BuiltinError::BadProbability(param.to_string()))?;
            Ok(Dist::from_weighted([
                (Val::int(1), p.clone()),
                (Val::int(0), Prob::one() - p),
            ])?)
        }
    }
}

/// Human-readable signature table, generated from the registry.
pub fn signature_table() -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let shapes = |f: fn(Shape) -> FunId| Shape::ALL.map(f);
    let funs: Vec<FunId> = [
        FunId::Add,
        FunId::Sub,
        FunId::Mul,
        FunId::Div,
        FunId::IntDiv,
        FunId::Mod,
        FunId::Min,
        FunId::Max,
        FunId::Neg,
        FunId::Not,
        FunId::cmp(CmpOp::Eq),
        FunId::cmp(CmpOp::Ne),
        FunId::cmp(CmpOp::Lt),
        FunId::cmp(CmpOp::Le),
        FunId::cmp(CmpOp::Gt),
        FunId::cmp(CmpOp::Ge),
        FunId::Even,
        FunId::Odd,
        FunId::Abs,
        FunId::Size,
    ]
    .into_iter()
    .chain(shapes(FunId::Range))
    .collect();
    writeln!(out, "| function | argument | result |").unwrap();
    writeln!(out, "|---|---|---|").unwrap();
    for f in funs {
        for (a, r) in fixed_signatures(f) {
            writeln!(out, "| `{}` | `{a}` | `{r}` |", f.name()).unwrap();
        }
    }
    let families = [
        (
            "add",
            "prod(#1: coll(s, m1, t1), #2: coll(s, m2, t2))",
            "coll(s, m1 ⊓ m2, t1 ⊔ t2)",
        ),
        (
            "eq, ne, lt, le, gt, ge",
            "prod(#1: coll(s, m1, t1), #2: coll(s, m2, t2))",
            "num(bool), starred",
        ),
        ("mults", "coll(bag, m, t)", "coll(bag, m, num(nat))"),
        (
            "list, bag, set",
            "coll(s, m, t), s convertible to the target",
            "coll(target, m, t)",
        ),
        (
            "single-list, single-bag, single-set",
            "t",
            "coll(s, pos, t)",
        ),
        (
            "without",
            "prod(#1: coll(s, m, t), #2: t), s bag or set",
            "coll(s, opt, t)",
        ),
    ];
    for (f, a, r) in families {
        writeln!(out, "| `{f}` | {a} | {r} |").unwrap();
    }
    writeln!(out).unwrap();
    writeln!(
        out,
        "| reduce | domain | associative | commutative | idempotent | neutral |"
    )
    .unwrap();
    writeln!(out, "|---|---|---|---|---|---|").unwrap();
    let domains = [
        Domain::Bool,
        Domain::Num,
        Domain::Coll(Shape::List),
        Domain::Coll(Shape::Bag),
        Domain::Coll(Shape::Set),
    ];
    for op in [ReduceOp::Add, ReduceOp::Mul, ReduceOp::Min, ReduceOp::Max] {
        for d in domains {
            if let Some(fl) = flags(op, d) {
                let dn = match d {
                    Domain::Bool => "bool".to_string(),
                    Domain::Num => "numbers".to_string(),
                    Domain::Coll(s) => format!("{s}s"),
                    Domain::Auto => unreachable!(),
                };
                let yn = |b: bool| if b { "yes" } else { "no" };
                let neutral = fl
                    .neutral
                    .map(|v| format!("`{v}`"))
                    .unwrap_or_else(|| "none".into());
                writeln!(
                    out,
                    "| `{}` | {dn} | {} | {} | {} | {neutral} |",
                    op.binary().name(),
                    yn(fl.associative),
                    yn(fl.commutative),
                    yn(fl.idempotent)
                )
                .unwrap();
            }
        }
    }
    writeln!(out).unwrap();
    writeln!(out, "| distribution | parameter | outcome |").unwrap();
    writeln!(out, "|---|---|---|").unwrap();
    writeln!(out, "| `~uniform` | coll(s, pos, t) | t |").unwrap();
    writeln!(
        out,
        "| `~bernoulli` | num(rat), between 0 and 1 | num(bool) |"
    )
    .unwrap();
    out
}
