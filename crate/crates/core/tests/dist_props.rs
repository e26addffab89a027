mod common;

use alea::builtins::{apply, FunId};
use alea::dist::Dist;
use alea::values::Val;
use common::suites::monad_laws;
use common::{q, random_numeric_dist, rng};
use rand::Rng;

#[test]
fn monad_and_pairing_laws() {
    monad_laws(3, 1000);
}

#[test]
fn map_preserves_mass_and_shrinks_support() {
    let mut r = rng(4);
    for _ in 0..1000 {
        let d = random_numeric_dist(&mut r, 6);
        let k = r.random_range(1..=3);
        let m = d
            .map(|v| apply(FunId::Mod, &Val::tuple([v.clone(), Val::int(k)])))
            .unwrap();
        assert_eq!(m.mass(), q(1, 1));
        assert!(m.len() <= d.len());
        assert!(m.support().all(|v| d.support().any(|x| apply(
            FunId::Mod,
            &Val::tuple([x.clone(), Val::int(k)])
        )
        .unwrap()
            == *v)));
    }
}

#[test]
fn iid_power_matches_naive_fold() {
    let mut r = rng(5);
    for op in [FunId::Add, FunId::Max, FunId::Mul] {
        let combine = |a: &Val, b: &Val| apply(op, &Val::tuple([a.clone(), b.clone()]));
        for _ in 0..100 {
            let d = random_numeric_dist(&mut r, 4);
            let mut naive = d.clone();
            for n in 1..=6u64 {
                let fast = d
                    .pow_iid::<alea::builtins::BuiltinError>(n, None, combine)
                    .unwrap();
                assert_eq!(fast, naive, "{op:?} n={n}");
                assert!(fast.is_normalized());
                naive = naive.product_with(&d, combine).unwrap();
            }
        }
    }
    let d = Dist::uniform([Val::int(1), Val::int(2)]).unwrap();
    let neutral = Val::int(0);
    let zero = d
        .pow_iid::<alea::dist::DistError>(0, Some(&neutral), |a, _| Ok(a.clone()))
        .unwrap();
    assert_eq!(zero, Dist::delta(neutral));
}
