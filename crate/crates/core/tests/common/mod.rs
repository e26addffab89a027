//! Generators and oracles shared by the integration suites.
#![allow(dead_code)]

pub mod suites;

use std::collections::BTreeMap;

use alea::ast::{Env, Expr, ExprKind};
use alea::builtins::{DistId, Domain, FunId, ReduceOp};
use alea::dist::{Dist, Prob};
use alea::engine::{self, RngState};
use alea::types::{Mode, NumKind, Shape, Type};
use alea::values::{CaseId, FieldId, Num, Val};
use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn q(n: i64, d: i64) -> Prob {
    Prob::new(n.into(), d.into())
}

// ---------------------------------------------------------------- values

pub fn small_num(r: &mut StdRng) -> Val {
    match r.random_range(0..10) {
        0 => Val::nan(),
        1 => Val::ratio(r.random_range(-3..=3), r.random_range(2..=3)),
        2 => Val::int(r.random_range(-3..0)),
        _ => Val::int(r.random_range(0..=3)),
    }
}

/// Random value of nesting depth at most `depth`.
pub fn random_val(r: &mut StdRng, depth: u32) -> Val {
    if depth == 0 || r.random_bool(0.35) {
        return small_num(r);
    }
    let n = r.random_range(0..=3);
    let items: Vec<Val> = (0..n).map(|_| random_val(r, depth - 1)).collect();
    match r.random_range(0..5) {
        0 => Val::list(items),
        1 => Val::bag(items),
        2 => Val::set(items),
        3 => {
            let labels = [FieldId::Pos(1), FieldId::Pos(2), FieldId::named("a")];
            Val::record(labels.into_iter().zip(items))
        }
        _ => Val::tag(["a", "b"][r.random_range(0..2)], random_val(r, depth - 1)),
    }
}

/// Random flat collection of small numbers without NaN.
pub fn random_plain_coll(r: &mut StdRng, shape: Shape, max: usize) -> Val {
    let n = r.random_range(0..=max);
    let items = (0..n).map(|_| Val::int(r.random_range(0..=3)));
    match shape {
        Shape::List => Val::list(items),
        Shape::Bag => Val::bag(items),
        Shape::Set => Val::set(items),
    }
}

// ---------------------------------------------------------------- types

/// Random type term of depth at most `depth`.
pub fn random_type(r: &mut StdRng, depth: u32) -> Type {
    let leaf = |r: &mut StdRng| match r.random_range(0..6) {
        0 => Type::Any,
        1 => Type::None,
        2 => Type::BOOL,
        3 => Type::NAT,
        4 => Type::INT,
        _ => Type::RAT,
    };
    if depth == 0 || r.random_bool(0.3) {
        return leaf(r);
    }
    match r.random_range(0..3) {
        0 => {
            let shape = *Shape::ALL.choose(r).unwrap();
            let mode = if r.random_bool(0.5) {
                Mode::Pos
            } else {
                Mode::Opt
            };
            Type::coll(shape, mode, random_type(r, depth - 1))
        }
        1 => {
            let mut fields = BTreeMap::new();
            for f in [FieldId::Pos(1), FieldId::Pos(2), FieldId::named("a")] {
                if r.random_bool(0.5) {
                    fields.insert(f, random_type(r, depth - 1));
                }
            }
            Type::Prod(fields)
        }
        _ => {
            let mut cases = BTreeMap::new();
            for c in ["a", "b"] {
                if r.random_bool(0.6) {
                    cases.insert(CaseId::new(c), random_type(r, depth - 1));
                }
            }
            Type::Sum(cases)
        }
    }
}

/// A random inhabitant of `t`, or `None` when the attempt finds none.
pub fn random_inhabitant(r: &mut StdRng, t: &Type) -> Option<Val> {
    Some(match t {
        Type::None => return None,
        Type::Any => random_val(r, 2),
        Type::Num(k) => {
            let candidates = match k {
                NumKind::Bool => vec![Val::int(0), Val::int(1)],
                NumKind::Nat => vec![Val::int(0), Val::int(2), Val::nan()],
                NumKind::Int => vec![Val::int(-2), Val::int(1), Val::nan()],
                NumKind::Rat => vec![Val::ratio(1, 2), Val::int(-1), Val::nan()],
            };
            candidates.choose(r).unwrap().clone()
        }
        Type::Coll(s, m, e) => {
            let lo = if *m == Mode::Pos { 1 } else { 0 };
            let n = r.random_range(lo..=2);
            let mut items = Vec::new();
            for _ in 0..n {
                items.push(random_inhabitant(r, e)?);
            }
            match s {
                Shape::List => Val::list(items),
                Shape::Bag => Val::bag(items),
                Shape::Set => Val::set(items),
            }
        }
        Type::Prod(fields) => {
            let mut out = BTreeMap::new();
            for (f, ft) in fields {
                out.insert(f.clone(), random_inhabitant(r, ft)?);
            }
            if r.random_bool(0.2) {
                out.insert(FieldId::named("extra"), Val::int(7));
            }
            Val::record(out)
        }
        Type::Sum(cases) => {
            let keys: Vec<_> = cases.keys().collect();
            let c = *keys.choose(r)?;
            Val::Tag(c.clone(), random_inhabitant(r, &cases[c])?.into())
        }
    })
}

/// All type terms of depth at most `depth` over six symbols: `none`,
/// `bool`, `bag+ of _`, `set of _`, `(#1: _, #2: _)`, `@a(_) | @b(_)`.
pub fn alphabet_types(depth: u32) -> Vec<Type> {
    let mut out = vec![Type::None, Type::BOOL];
    if depth <= 1 {
        return out;
    }
    let inner = alphabet_types(depth - 1);
    for t in &inner {
        out.push(Type::coll(Shape::Bag, Mode::Pos, t.clone()));
        out.push(Type::coll(Shape::Set, Mode::Opt, t.clone()));
    }
    for a in &inner {
        for b in &inner {
            out.push(Type::pair(a.clone(), b.clone()));
            out.push(Type::sum([
                (CaseId::new("a"), a.clone()),
                (CaseId::new("b"), b.clone()),
            ]));
        }
    }
    out
}

/// All values of depth at most `depth` built from the value constructors
/// matching the six type symbols.
pub fn alphabet_values(depth: u32) -> Vec<Val> {
    let mut out = vec![Val::int(0), Val::int(5), Val::bag([]), Val::set([])];
    if depth <= 1 {
        return out;
    }
    let inner = alphabet_values(depth - 1);
    for v in &inner {
        out.push(Val::bag([v.clone()]));
        out.push(Val::set([v.clone()]));
        out.push(Val::tag("a", v.clone()));
        out.push(Val::tag("b", v.clone()));
    }
    for a in &inner {
        for b in &inner {
            out.push(Val::tuple([a.clone(), b.clone()]));
        }
    }
    out
}

/// A random supertype built by structural weakening.
pub fn widen(r: &mut rand::rngs::StdRng, t: &Type) -> Type {
    match t {
        _ if r.random_bool(0.1) => Type::Any,
        Type::Num(k) => Type::Num(match k {
            NumKind::Bool => [NumKind::Bool, NumKind::Nat, NumKind::Rat][r.random_range(0..3)],
            NumKind::Nat => [NumKind::Nat, NumKind::Int][r.random_range(0..2)],
            _ => NumKind::Rat,
        }),
        Type::Coll(s, m, e) => {
            let m = if r.random_bool(0.5) { Mode::Opt } else { *m };
            Type::coll(*s, m, widen(r, e))
        }
        Type::Prod(fields) => {
            let mut out = std::collections::BTreeMap::new();
            for (f, ft) in fields {
                if r.random_bool(0.8) {
                    out.insert(f.clone(), widen(r, ft));
                }
            }
            Type::Prod(out)
        }
        Type::Sum(cases) => {
            let mut cases: std::collections::BTreeMap<_, _> = cases
                .iter()
                .map(|(c, ct)| (c.clone(), widen(r, ct)))
                .collect();
            if r.random_bool(0.3) {
                cases.insert(alea::values::CaseId::new("z"), Type::BOOL);
            }
            Type::Sum(cases)
        }
        other => other.clone(),
    }
}

// ---------------------------------------------------------------- dists

/// Random distribution with 1 to `max` support points.
pub fn random_dist(r: &mut StdRng, max: usize) -> Dist {
    let n = r.random_range(1..=max);
    let items: Vec<(Val, Prob)> = (0..n)
        .map(|_| (random_val(r, 1), q(r.random_range(1..=9), 1)))
        .collect();
    let total: Prob = items.iter().map(|(_, w)| w.clone()).sum();
    let mut b = alea::dist::DistBuilder::new();
    for (v, w) in items {
        b.add(v, w / &total);
    }
    b.build().unwrap()
}

pub fn random_numeric_dist(r: &mut StdRng, max: usize) -> Dist {
    let n = r.random_range(1..=max);
    let items: Vec<(Val, Prob)> = (0..n)
        .map(|_| (Val::int(r.random_range(0..=4)), q(r.random_range(1..=9), 1)))
        .collect();
    let total: Prob = items.iter().map(|(_, w)| w.clone()).sum();
    let mut b = alea::dist::DistBuilder::new();
    for (v, w) in items {
        b.add(v, w / &total);
    }
    b.build().unwrap()
}

// ------------------------------------------------------------ expressions

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Num,
    Coll(Shape),
    Rec,
    Tag,
}

/// Random closed expressions. Generation is type-directed by kind, so
/// most candidates type-check; callers still filter through the checker.
pub struct ExprGen {
    rng: StdRng,
    stochastic: bool,
    fresh: usize,
}

impl ExprGen {
    pub fn new(seed: u64, stochastic: bool) -> ExprGen {
        ExprGen {
            rng: rng(seed),
            stochastic,
            fresh: 0,
        }
    }

    /// Next candidate of depth at most `depth`.
    pub fn candidate(&mut self, depth: u32) -> Expr {
        let kind = match self.rng.random_range(0..6) {
            0 | 1 | 2 => Kind::Num,
            3 => Kind::Coll(*Shape::ALL.choose(&mut self.rng).unwrap()),
            4 => Kind::Rec,
            _ => Kind::Tag,
        };
        self.gen(kind, depth, &[])
    }

    /// Next candidate that type-checks, elaborated, with its type.
    pub fn well_typed(&mut self, depth: u32) -> (Expr, Type) {
        loop {
            let e = self.candidate(depth);
            if let Ok(checked) = engine::check_program(&e) {
                return checked;
            }
        }
    }

    fn name(&mut self) -> String {
        self.fresh += 1;
        format!("v{}", self.fresh)
    }

    fn gen(&mut self, kind: Kind, depth: u32, scope: &[(String, Kind)]) -> Expr {
        let vars: Vec<&String> = scope
            .iter()
            .filter(|(_, k)| *k == kind)
            .map(|(n, _)| n)
            .collect();
        if depth == 0 || self.rng.random_bool(0.15) {
            if !vars.is_empty() && self.rng.random_bool(0.5) {
                return Expr::var(vars.choose(&mut self.rng).unwrap());
            }
            return self.leaf(kind);
        }
        let d = depth - 1;
        // Constructs shared by every kind.
        match self.rng.random_range(0..12) {
            0 => {
                let bound_kind = self.any_kind();
                let bound = self.gen(bound_kind, d, scope);
                let x = self.name();
                let mut inner = scope.to_vec();
                inner.push((x.clone(), bound_kind));
                return Expr::let_in(bound, &x, self.gen(kind, d, &inner));
            }
            1 => {
                let cond = self.boolean(d, scope);
                let cases = BTreeMap::from([
                    (Num::int(0), self.gen(kind, d, scope)),
                    (Num::int(1), self.gen(kind, d, scope)),
                ]);
                return Expr::new(ExprKind::NSwitch {
                    scrutinee: Box::new(cond),
                    cases,
                    default: None,
                });
            }
            2 => {
                let scrut = self.gen(Kind::Num, d, scope);
                let cases = BTreeMap::from([
                    (Num::int(1), self.gen(kind, d, scope)),
                    (Num::int(2), self.gen(kind, d, scope)),
                ]);
                let default = Some(Box::new(self.gen(kind, d, scope)));
                return Expr::new(ExprKind::NSwitch {
                    scrutinee: Box::new(scrut),
                    cases,
                    default,
                });
            }
            3 => {
                let scrut = self.gen(Kind::Tag, d, scope);
                let (x, y) = (self.name(), self.name());
                let mut sa = scope.to_vec();
                sa.push((x.clone(), Kind::Num));
                let mut sb = scope.to_vec();
                sb.push((y.clone(), Kind::Coll(Shape::Bag)));
                let mut cases = BTreeMap::new();
                cases.insert(
                    CaseId::new("a"),
                    (x.as_str().into(), self.gen(kind, d, &sa)),
                );
                let default = if self.rng.random_bool(0.5) {
                    cases.insert(
                        CaseId::new("b"),
                        (y.as_str().into(), self.gen(kind, d, &sb)),
                    );
                    None
                } else {
                    Some(Box::new(self.gen(kind, d, scope)))
                };
                return Expr::new(ExprKind::CSwitch {
                    scrutinee: Box::new(scrut),
                    cases,
                    default,
                });
            }
            4 if self.stochastic => {
                let a = self.gen(kind, d, scope);
                let b = self.gen(kind, d, scope);
                return Expr::new(ExprKind::Choose(vec![(a, q(1, 3)), (b, q(2, 3))]));
            }
            5 => {
                let rec = self.gen(Kind::Rec, d, scope);
                let field = match kind {
                    Kind::Num => FieldId::Pos(1),
                    Kind::Coll(Shape::Bag) => FieldId::Pos(2),
                    _ => return self.specific(kind, d, scope),
                };
                return Expr::select(rec, field);
            }
            _ => {}
        }
        self.specific(kind, d, scope)
    }

    fn any_kind(&mut self) -> Kind {
        match self.rng.random_range(0..5) {
            0 | 1 => Kind::Num,
            2 => Kind::Coll(*Shape::ALL.choose(&mut self.rng).unwrap()),
            3 => Kind::Rec,
            _ => Kind::Tag,
        }
    }

    fn leaf(&mut self, kind: Kind) -> Expr {
        match kind {
            Kind::Num => Expr::constant(small_num(&mut self.rng)),
            Kind::Coll(s) => Expr::constant(random_plain_coll(&mut self.rng, s, 3)),
            Kind::Rec => {
                let n = Expr::constant(small_num(&mut self.rng));
                let b = Expr::constant(random_plain_coll(&mut self.rng, Shape::Bag, 2));
                Expr::tuple([n, b])
            }
            Kind::Tag => {
                if self.rng.random_bool(0.5) {
                    Expr::cons("a", Expr::constant(small_num(&mut self.rng)))
                } else {
                    Expr::cons(
                        "b",
                        Expr::constant(random_plain_coll(&mut self.rng, Shape::Bag, 2)),
                    )
                }
            }
        }
    }

    fn boolean(&mut self, d: u32, scope: &[(String, Kind)]) -> Expr {
        let cmp = [
            FunId::Cmp(alea::builtins::CmpKey::Lt),
            FunId::Cmp(alea::builtins::CmpKey::Eq),
            FunId::Cmp(alea::builtins::CmpKey::Ge),
            FunId::Cmp(alea::builtins::CmpKey::Ne),
        ];
        match self.rng.random_range(0..5) {
            0 => Expr::app(FunId::Even, self.gen(Kind::Num, d, scope)),
            1 => {
                let s = *Shape::ALL.choose(&mut self.rng).unwrap();
                let f = *cmp.choose(&mut self.rng).unwrap();
                Expr::app2(
                    f,
                    self.gen(Kind::Coll(s), d, scope),
                    self.gen(Kind::Coll(s), d, scope),
                )
            }
            2 if self.stochastic => Expr::draw(
                DistId::Bernoulli,
                Expr::constant(Val::ratio(1, [2, 3][self.rng.random_range(0..2)])),
            ),
            _ => {
                let f = *cmp.choose(&mut self.rng).unwrap();
                Expr::app2(
                    f,
                    self.gen(Kind::Num, d, scope),
                    self.gen(Kind::Num, d, scope),
                )
            }
        }
    }

    fn specific(&mut self, kind: Kind, d: u32, scope: &[(String, Kind)]) -> Expr {
        match kind {
            Kind::Num => self.number(d, scope),
            Kind::Coll(s) => self.collection(s, d, scope),
            Kind::Rec => {
                let n = self.gen(Kind::Num, d, scope);
                let b = self.gen(Kind::Coll(Shape::Bag), d, scope);
                Expr::tuple([n, b])
            }
            Kind::Tag => {
                if self.rng.random_bool(0.5) {
                    Expr::cons("a", self.gen(Kind::Num, d, scope))
                } else {
                    Expr::cons("b", self.gen(Kind::Coll(Shape::Bag), d, scope))
                }
            }
        }
    }

    fn number(&mut self, d: u32, scope: &[(String, Kind)]) -> Expr {
        let ops = [
            FunId::Add,
            FunId::Sub,
            FunId::Mul,
            FunId::Div,
            FunId::IntDiv,
            FunId::Mod,
            FunId::Min,
            FunId::Max,
        ];
        match self.rng.random_range(0..10) {
            0 | 1 => {
                let f = *ops.choose(&mut self.rng).unwrap();
                Expr::app2(
                    f,
                    self.gen(Kind::Num, d, scope),
                    self.gen(Kind::Num, d, scope),
                )
            }
            2 => {
                let f = *[FunId::Neg, FunId::Abs, FunId::Not]
                    .choose(&mut self.rng)
                    .unwrap();
                Expr::app(f, self.gen(Kind::Num, d, scope))
            }
            3 => self.boolean(d, scope),
            4 => {
                let s = *Shape::ALL.choose(&mut self.rng).unwrap();
                Expr::app(FunId::Size, self.gen(Kind::Coll(s), d, scope))
            }
            5 => {
                let s = *Shape::ALL.choose(&mut self.rng).unwrap();
                let op = *[ReduceOp::Add, ReduceOp::Mul, ReduceOp::Min, ReduceOp::Max]
                    .choose(&mut self.rng)
                    .unwrap();
                Expr::app(
                    FunId::Reduce(op, Domain::Auto),
                    self.gen(Kind::Coll(s), d, scope),
                )
            }
            6 if self.stochastic => {
                let set = if self.rng.random_bool(0.5) {
                    Expr::constant(Val::set((1..=self.rng.random_range(1..=3)).map(Val::int)))
                } else {
                    Expr::app(FunId::Single(Shape::Set), self.gen(Kind::Num, d, scope))
                };
                Expr::draw(DistId::Uniform, set)
            }
            7 if self.stochastic => Expr::exp(self.gen(Kind::Num, d, scope)),
            _ => self.leaf(Kind::Num),
        }
    }

    fn collection(&mut self, s: Shape, d: u32, scope: &[(String, Kind)]) -> Expr {
        match self.rng.random_range(0..9) {
            0 => {
                let lo = Expr::constant(Val::int(self.rng.random_range(-1..=2)));
                let hi = Expr::constant(Val::int(self.rng.random_range(0..=3)));
                Expr::app2(FunId::Range(s), lo, hi)
            }
            1 => Expr::app(FunId::Single(s), self.gen(Kind::Num, d, scope)),
            2 => Expr::app2(
                FunId::Add,
                self.gen(Kind::Coll(s), d, scope),
                self.gen(Kind::Coll(s), d, scope),
            ),
            3 | 4 => {
                let src = self.gen(Kind::Coll(s), d, scope);
                let x = self.name();
                let mut inner = scope.to_vec();
                inner.push((x.clone(), Kind::Num));
                let body = self.gen(Kind::Coll(s), d, &inner);
                Expr::iter(src, &x, body, s)
            }
            5 if s != Shape::List => {
                let lower = if s == Shape::Bag {
                    Shape::List
                } else {
                    *[Shape::List, Shape::Bag].choose(&mut self.rng).unwrap()
                };
                Expr::app(FunId::Convert(s), self.gen(Kind::Coll(lower), d, scope))
            }
            6 if s != Shape::List => {
                // Draw two distinct instances, as desugared patterns do.
                let src = self.gen(Kind::Coll(s), d, scope);
                let (c, x, y) = (self.name(), self.name(), self.name());
                let mut inner = scope.to_vec();
                inner.push((x.clone(), Kind::Num));
                inner.push((y.clone(), Kind::Num));
                let body = self.gen(Kind::Coll(s), d, &inner);
                let rest = Expr::app2(FunId::Without, Expr::var(&c), Expr::var(&x));
                Expr::let_in(
                    src,
                    &c,
                    Expr::iter(Expr::var(&c), &x, Expr::iter(rest, &y, body, s), s),
                )
            }
            7 if s == Shape::Bag => {
                Expr::app(FunId::Mults, self.gen(Kind::Coll(Shape::Bag), d, scope))
            }
            _ => self.leaf(Kind::Coll(s)),
        }
    }
}

// ---------------------------------------------------------------- oracles

/// Every execution path of `e` with its probability, without collating
/// equal intermediate values.
pub fn paths(env: &Env, e: &Expr) -> Vec<(Val, Prob)> {
    let one = || q(1, 1);
    let seq = |env: &Env, es: &[&Expr]| -> Vec<(Vec<Val>, Prob)> {
        let mut acc: Vec<(Vec<Val>, Prob)> = vec![(vec![], one())];
        for sub in es {
            let mut next = Vec::new();
            for (vs, p) in &acc {
                for (v, p2) in paths(env, sub) {
                    let mut vs = vs.clone();
                    vs.push(v);
                    next.push((vs, p * &p2));
                }
            }
            acc = next;
        }
        acc
    };
    match e.kind() {
        ExprKind::Var(x) => vec![(env.lookup(x).unwrap().clone(), one())],
        ExprKind::Const(v, _) => vec![(v.clone(), one())],
        ExprKind::App(f, a) => paths(env, a)
            .into_iter()
            .map(|(v, p)| (alea::builtins::apply(*f, &v).unwrap(), p))
            .collect(),
        ExprKind::Choose(bs) => bs
            .iter()
            .flat_map(|(b, w)| paths(env, b).into_iter().map(move |(v, p)| (v, p * w)))
            .collect(),
        ExprKind::Exp(inner) => {
            let mut mean = Num::int(0);
            for (v, p) in paths(env, inner) {
                let term = Num::arith(
                    alea::values::ArithOp::Mul,
                    v.as_num().unwrap(),
                    &Num::Rat(p),
                )
                .unwrap();
                mean = Num::arith(alea::values::ArithOp::Add, &mean, &term).unwrap();
            }
            vec![(Val::Num(mean), one())]
        }
        ExprKind::DistDraw(d, param) => paths(env, param)
            .into_iter()
            .flat_map(|(v, p)| {
                let dist = alea::builtins::make_dist(*d, &v).unwrap();
                dist.iter()
                    .map(|(x, px)| (x.clone(), &p * px))
                    .collect::<Vec<_>>()
            })
            .collect(),
        ExprKind::Let(bound, x, body) => paths(env, bound)
            .into_iter()
            .flat_map(|(v, p)| {
                paths(&env.extend(x.clone(), v), body)
                    .into_iter()
                    .map(move |(w, p2)| (w, &p * p2))
            })
            .collect(),
        ExprKind::NSwitch {
            scrutinee,
            cases,
            default,
        } => paths(env, scrutinee)
            .into_iter()
            .flat_map(|(v, p)| {
                let n = v.as_num().unwrap();
                let branch = cases.get(n).or(default.as_deref()).unwrap();
                paths(env, branch)
                    .into_iter()
                    .map(move |(w, p2)| (w, &p * p2))
            })
            .collect(),
        ExprKind::Iter {
            source,
            var,
            body,
            shape,
        } => paths(env, source)
            .into_iter()
            .flat_map(|(src, p)| {
                let items: Vec<Val> = src.instances().unwrap().into_iter().cloned().collect();
                let mut acc = vec![(Val::empty(*shape), p)];
                for x in items {
                    let branch = paths(&env.extend(var.clone(), x), body);
                    acc = acc
                        .into_iter()
                        .flat_map(|(c, pc)| {
                            branch
                                .iter()
                                .map(|(y, py)| {
                                    (alea::values::coll_concat(&c, y).unwrap(), &pc * py)
                                })
                                .collect::<Vec<_>>()
                        })
                        .collect();
                }
                acc
            })
            .collect(),
        ExprKind::Tuple(fields) => {
            let es: Vec<&Expr> = fields.values().collect();
            seq(env, &es)
                .into_iter()
                .map(|(vs, p)| (Val::record(fields.keys().cloned().zip(vs)), p))
                .collect()
        }
        ExprKind::Select(inner, f) => paths(env, inner)
            .into_iter()
            .map(|(v, p)| (v.field(f).unwrap().clone(), p))
            .collect(),
        ExprKind::Cons(c, inner) => paths(env, inner)
            .into_iter()
            .map(|(v, p)| (Val::Tag(c.clone(), v.into()), p))
            .collect(),
        ExprKind::CSwitch {
            scrutinee,
            cases,
            default,
        } => paths(env, scrutinee)
            .into_iter()
            .flat_map(|(v, p)| {
                let Val::Tag(c, payload) = &v else {
                    panic!("not a tag: {v}")
                };
                let (env2, branch) = match cases.get(c) {
                    Some((x, b)) => (env.extend(x.clone(), (**payload).clone()), b),
                    None => (env.clone(), default.as_deref().unwrap()),
                };
                paths(&env2, branch)
                    .into_iter()
                    .map(move |(w, p2)| (w, &p * p2))
                    .collect::<Vec<_>>()
            })
            .collect(),
    }
}

pub fn collate(paths: Vec<(Val, Prob)>) -> Dist {
    let mut b = alea::dist::DistBuilder::new();
    for (v, p) in paths {
        b.add(v, p);
    }
    b.build().unwrap()
}

/// Pearson statistic of `samples` against `d`, with its degrees of
/// freedom. Outcomes missing from the support make the statistic infinite.
pub fn chi_square(d: &Dist, samples: &[Val]) -> (f64, usize) {
    let mut counts: BTreeMap<&Val, u64> = BTreeMap::new();
    for v in samples {
        *counts.entry(v).or_default() += 1;
    }
    if counts.keys().any(|v| d.prob(v) == q(0, 1)) {
        return (f64::INFINITY, d.len().saturating_sub(1));
    }
    let n = samples.len() as f64;
    let mut stat = 0.0;
    for (v, p) in d.iter() {
        let expected = n
            * (p.numer().to_string().parse::<f64>().unwrap()
                / p.denom().to_string().parse::<f64>().unwrap());
        let observed = *counts.get(v).unwrap_or(&0) as f64;
        stat += (observed - expected).powi(2) / expected;
    }
    (stat, d.len().saturating_sub(1))
}

/// Upper critical value of the chi-square distribution.
pub fn chi_square_critical(df: usize, alpha: f64) -> f64 {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    ChiSquared::new(df as f64).unwrap().inverse_cdf(1.0 - alpha)
}

pub fn draw_many(e: &Expr, seed: u64, n: usize) -> Vec<Val> {
    let mut s = RngState::seeded(seed);
    (0..n)
        .map(|_| {
            let (v, next) = engine::eval_rand(&Env::new(), s, e).unwrap();
            s = next;
            v
        })
        .collect()
}

/// Small stochastic programs for sampler fidelity checks.
pub const SAMPLER_PROGRAMS: [&str; 10] = [
    "~bernoulli(0.503) ? @head : @ship",
    "~uniform{1..6}",
    "~uniform{1..6} + ~uniform{1..6}",
    "(+)⟨ d > 4 | d ← ⟨ ~uniform{1..6} | _ ← ⟨1..4⟩ ⟩ ⟩",
    "~choose{ 1: 1/7; 2: 2/7; 3: 4/7 }",
    "x := ~uniform{1..4}; ~uniform({x, x + 2} + {1..2})",
    "max⟨ ~uniform{1..6} | _ ← ⟨1..3⟩ ⟩",
    "⟨ ~bernoulli(1/3) | _ ← ⟨1..3⟩ ⟩",
    "n := ~uniform{0..3}; n ? { 0 → @none; 1 → @one; _ → @many(n) }",
    "(+)[ ~uniform{0..1} * k | k ← [1, 2, 4, 8, 16] ]",
];
