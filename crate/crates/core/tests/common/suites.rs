//! Whole-property checks, shared by the module suites and the acceptance
//! harness. Each panics with a description of the first counterexample.

use std::convert::Infallible;
use std::hash::{DefaultHasher, Hash, Hasher};

use alea::ast::Env;
use alea::dist::{Dist, Prob};
use alea::engine::{self, RngState};
use alea::types::{inhabits, join, subtype, Shape, Type};
use alea::values::Val;
use rand::Rng;

use super::*;

/// Subtyping soundness over random triples. Returns how many triples had both
/// premises, so the caller can require a non-vacuous run.
pub fn subtype_soundness(seed: u64, triples: usize) -> usize {
    let mut r = rng(seed);
    let mut live = 0;
    for _ in 0..triples {
        // Empty types make the implication vacuous; redraw a few times.
        let (t1, v) = (0..20)
            .find_map(|_| {
                let t = random_type(&mut r, 3);
                random_inhabitant(&mut r, &t).map(|v| (t, v))
            })
            .unwrap_or_else(|| (Type::Any, random_val(&mut r, 2)));
        // Bias t2 towards supertypes so most triples exercise the implication.
        let t2 = match r.random_range(0..5u8) {
            0 => random_type(&mut r, 3),
            1 => join(&t1, &random_type(&mut r, 2)),
            _ => widen(&mut r, &t1),
        };
        if subtype(&t1, &t2) && inhabits(&v, &t1) {
            live += 1;
            assert!(inhabits(&v, &t2), "{v} : {t1} ⊑ {t2}");
        }
    }
    live
}

/// A fixed random kernel, keyed by `salt`.
fn kernel(salt: u64) -> impl Fn(&Val) -> Result<Dist, Infallible> {
    move |v| {
        let mut h = DefaultHasher::new();
        (salt, v).hash(&mut h);
        Ok(random_dist(&mut rng(h.finish()), 3))
    }
}

fn swap(v: &Val) -> Result<Val, Infallible> {
    let r = v.as_record().unwrap();
    Ok(Val::tuple(r.values().rev().cloned()))
}

fn weights(r: &mut rand::rngs::StdRng, n: usize) -> Vec<Prob> {
    let raw: Vec<Prob> = (0..n).map(|_| q(r.random_range(1..=5), 1)).collect();
    let total: Prob = raw.iter().sum();
    raw.into_iter().map(|w| w / &total).collect()
}

/// Monad and monoidal laws on one batch of random distributions.
pub fn monad_laws(seed: u64, count: usize) {
    let mut r = rng(seed);
    for i in 0..count {
        let d = random_dist(&mut r, 6);
        assert!(d.is_normalized());
        // μ ∘ δ = id and μ ∘ D(δ) = id.
        assert_eq!(Dist::mult([(d.clone(), q(1, 1))]).unwrap(), d);
        assert_eq!(
            d.bind(|v| Ok::<_, Infallible>(Dist::delta(v.clone())))
                .unwrap(),
            d
        );
        // Kleisli associativity.
        let (f, g) = (kernel(2 * i as u64), kernel(2 * i as u64 + 1));
        let left = d.bind(&f).unwrap().bind(&g).unwrap();
        let right = d.bind(|v| f(v).unwrap().bind(&g)).unwrap();
        assert!(left.is_normalized());
        assert_eq!(left, right);
        // μ ∘ μ = μ ∘ D(μ) on an explicit two-level mixture.
        let n = r.random_range(1..=3);
        let outer = weights(&mut r, n);
        let nested: Vec<Vec<(Dist, Prob)>> = outer
            .iter()
            .map(|_| {
                let n = r.random_range(1..=3);
                weights(&mut r, n)
                    .into_iter()
                    .map(|w| (random_dist(&mut r, 6), w))
                    .collect()
            })
            .collect();
        let inner_first = Dist::mult(
            nested
                .iter()
                .zip(&outer)
                .map(|(layers, w)| (Dist::mult(layers.clone()).unwrap(), w.clone())),
        )
        .unwrap();
        let outer_first = Dist::mult(
            nested
                .iter()
                .zip(&outer)
                .flat_map(|(layers, w)| layers.iter().map(move |(d, wi)| (d.clone(), w * wi))),
        )
        .unwrap();
        assert_eq!(inner_first, outer_first);
        // ψ is symmetric up to swapping the pair.
        let e = random_dist(&mut r, 6);
        let pair = d.pair(&e);
        assert!(pair.is_normalized());
        assert_eq!(pair.map(swap).unwrap(), e.pair(&d));
    }
}

/// Exact analysis of a syntactically deterministic program is
/// the point mass on its deterministic value. Also checks the deterministic
/// preservation property on the way. Returns how many programs ran.
pub fn deterministic_agreement(seed: u64, count: usize, depth: u32) -> usize {
    let mut g = ExprGen::new(seed, false);
    for i in 0..count {
        let (e, t) = g.well_typed(depth);
        assert!(e.is_deterministic());
        let v = engine::eval_det(&Env::new(), &e).unwrap_or_else(|err| panic!("#{i} {e}: {err}"));
        assert!(inhabits(&v, &t), "#{i} {e}: {v} ∉ {t}");
        for opts in [
            engine::EvalOptions::literal(),
            engine::EvalOptions::default(),
        ] {
            let d = engine::eval_dist_with(&Env::new(), &e, &opts).unwrap();
            assert_eq!(d, Dist::delta(v.clone()), "#{i} {e}");
        }
    }
    count
}

/// Deterministic results, support points and sampled
/// results of generated programs inhabit the inferred type.
pub fn preservation(seed: u64, count: usize, depth: u32, seeds: u64) -> usize {
    let mut g = ExprGen::new(seed, true);
    let mut stochastic = 0;
    for i in 0..count {
        let (e, t) = g.well_typed(depth);
        let env = Env::new();
        if e.is_deterministic() {
            let v = engine::eval_det(&env, &e).unwrap_or_else(|err| panic!("#{i} {e}: {err}"));
            assert!(inhabits(&v, &t), "#{i} {e}: {v} ∉ {t}");
        } else {
            stochastic += 1;
        }
        let d = engine::eval_dist(&env, &e).unwrap_or_else(|err| panic!("#{i} {e}: {err}"));
        assert!(d.is_normalized(), "#{i} {e}");
        for v in d.support() {
            assert!(inhabits(v, &t), "#{i} {e}: support point {v} ∉ {t}");
        }
        for s in 0..seeds {
            let (v, _) = engine::eval_rand(&env, RngState::seeded(s), &e)
                .unwrap_or_else(|err| panic!("#{i} {e}: {err}"));
            assert!(inhabits(&v, &t), "#{i} {e}, seed {s}: {v} ∉ {t}");
            assert!(
                d.prob(&v) > q(0, 1),
                "#{i} {e}, seed {s}: sampled {v} outside the support"
            );
        }
    }
    stochastic
}

/// Chi-square fit of `n` samples per program at
/// significance `alpha`, from the default seed.
pub fn sampler_fidelity(n: usize, alpha: f64) -> Vec<(String, f64, f64)> {
    let mut out = Vec::new();
    for src in SAMPLER_PROGRAMS {
        let p = alea::compile(src).unwrap();
        let d = p.analyze().unwrap();
        assert!(d.len() <= 50, "{src}: {} outcomes", d.len());
        let samples = p.sample_many(engine::DEFAULT_SEED, n).unwrap();
        let (stat, df) = chi_square(&d, &samples);
        let critical = if df == 0 {
            0.0
        } else {
            chi_square_critical(df, alpha)
        };
        assert!(
            stat <= critical,
            "{src}: χ² = {stat} exceeds {critical} (df {df})"
        );
        out.push((src.to_string(), stat, critical));
    }
    out
}

/// Repeated runs at one seed produce identical logs.
pub fn sample_logs_repeat(n: usize) {
    for src in SAMPLER_PROGRAMS {
        let p = alea::compile(src).unwrap();
        let log = |seed| -> String {
            p.sample_many(seed, n)
                .unwrap()
                .iter()
                .map(|v| format!("{v}\n"))
                .collect()
        };
        assert_eq!(
            log(engine::DEFAULT_SEED),
            log(engine::DEFAULT_SEED),
            "{src}"
        );
        assert_eq!(log(99), log(99), "{src}");
    }
}

/// The dice pool program with two dice instead of seven.
pub fn small_dice_pool() -> String {
    fixture("dice_pool.alea").replace("⟨1..7⟩", "⟨1..2⟩")
}

/// Exact analysis with and without intermediate collation agree.
pub fn collation_soundness() {
    let p = alea::compile(&small_dice_pool()).unwrap();
    let uncollated = paths(&Env::new(), &p.expr);
    let oracle = collate(uncollated);
    assert_eq!(p.analyze().unwrap(), oracle);
    assert_eq!(
        p.analyze_with(&engine::EvalOptions::literal()).unwrap(),
        oracle
    );
}

/// Free variables of the quoted fragments, with the types they are
/// checked under.
fn fragment_env() -> Vec<(&'static str, Type)> {
    use alea::types::Mode::{Opt, Pos};
    vec![
        ("x", Type::RAT),
        ("y", Type::RAT),
        ("z", Type::RAT),
        ("a", Type::INT),
        ("b", Type::BOOL),
        ("n", Type::NAT),
        ("S", Type::coll(Shape::Set, Opt, Type::RAT)),
        ("L", Type::coll(Shape::List, Pos, Type::NAT)),
        (
            "C",
            Type::coll(Shape::List, Opt, Type::coll(Shape::List, Opt, Type::NAT)),
        ),
        ("B", Type::coll(Shape::Bag, Opt, Type::INT)),
        (
            "r",
            Type::Prod([(alea::values::FieldId::named("foo"), Type::NAT)].into()),
        ),
        ("s", Type::tuple([Type::NAT, Type::BOOL, Type::RAT])),
    ]
}

/// `x` is a tagged value in the pattern-matching example.
fn tagged_x() -> Type {
    use alea::values::CaseId;
    Type::sum([
        (CaseId::new("good"), Type::INT),
        (CaseId::new("bad"), Type::unit()),
    ])
}

/// Fragments quoted in the language description, with free variables.
pub const FRAGMENTS: [&str; 29] = [
    "3 * (x + 1) < -2/3",
    "0/0",
    "[1, 2, 3, 4, 5]",
    "⟨2, 2, 4, 3, 2⟩",
    "{1 .. 5}",
    "{ k*k | k ← {1 .. n}; even(k) }",
    "{ x ← S | x ≥ 0 }",
    "{ x | x ← S; x ≥ 0 }",
    "{ x ≥ 0 | x ← S }",
    "{ x ← L }",
    "{ _ ← L }",
    "[x ← y ← C]",
    "[_ ← _ ← C]",
    "{ b - a | {a, b} ← {1 .. n}; a < b }",
    "max{x, y, z}",
    "(+)⟨ k ≥ 0 | k ← B ⟩",
    "max(a, b) + min{x, y, z}",
    "E(~uniform{1 ... 6} + ~bernoulli(2/3))",
    "(foo: 42, bar: {})",
    "(1, 2, 3)",
    "r.foo",
    "s.#3",
    "@good(42)",
    "@bad",
    "x ? { @good(n) → n; @bad → -1 }",
    "n ? { 0 → @none; 1 → @one; 2, 3 → @few; _ → @many }",
    "b ? { 1 → x; 0 → y }",
    "b ? x : y",
    "~bernoulli(0.503) ? @head : @ship",
];

/// Whole programs from the application examples.
pub const PROGRAMS: [&str; 4] = [
    "dice_pool.alea",
    "dice_pool_variant.alea",
    "yahtzee.alea",
    "yahtzee_query.alea",
];

/// Every fragment and program parses, desugars and type-checks; returns
/// the number checked.
pub fn frontend_corpus() -> usize {
    let env = fragment_env();
    let names: Vec<&str> = env.iter().map(|(n, _)| *n).collect();
    let tenv: alea::ast::TypeEnv = env
        .iter()
        .map(|(n, t)| (alea::ast::VarId::from(*n), t.clone()))
        .collect();
    for src in FRAGMENTS {
        let e = alea::frontend::compile(src, &names).unwrap_or_else(|err| panic!("{src}: {err}"));
        let tenv = if src.contains("@good(n)") {
            tenv.extend("x".into(), tagged_x())
        } else {
            tenv.clone()
        };
        engine::check(&tenv, &e).unwrap_or_else(|err| panic!("{src}: {err}"));
    }
    for name in PROGRAMS {
        let src = fixture(name);
        alea::compile(&src).unwrap_or_else(|err| panic!("{name}: {err}"));
    }
    FRAGMENTS.len() + PROGRAMS.len()
}

/// The implicit map clause is sugar for the explicit one, and differs
/// from mapping the filter condition.
pub fn comprehension_identity() {
    let names = ["S"];
    let d = |src| alea::frontend::compile(src, &names).unwrap();
    assert_eq!(d("{ x ← S | x ≥ 0 }"), d("{ x | x ← S; x ≥ 0 }"));
    assert_ne!(d("{ x | x ← S; x ≥ 0 }"), d("{ x ≥ 0 | x ← S }"));
}

/// Emptiness agrees with exhaustive search over small values.
/// Returns the number of types and how many are empty.
pub fn emptiness(depth: u32) -> (usize, usize) {
    let types = alphabet_types(depth);
    let values = alphabet_values(depth);
    let mut empty = 0;
    for t in &types {
        let witnessed = values.iter().any(|v| inhabits(v, t));
        assert_eq!(alea::types::is_empty(t), !witnessed, "{t}");
        empty += usize::from(!witnessed);
    }
    (types.len(), empty)
}
