//! Finitely supported probability distributions with exact rational
//! weights, and the monad structure on them.
//!
//! Support points are keyed by structural identity, so `NaN` collates
//! with `NaN`. Every public constructor and operation returns a
//! distribution whose weights are strictly positive and sum to exactly one.

use std::collections::btree_map::{self, BTreeMap};

use num_traits::{One, Zero};

use crate::values::{ArithOp, Num, Rational, Val};

pub type Prob = Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DistError {
    #[error("weights must be positive and sum to 1, got total {0}")]
    BadWeights(Prob),
    #[error("distribution over no outcomes")]
    Empty,
    #[error("the mean needs numeric outcomes, found {0}")]
    NonNumeric(String),
    #[error("zero-fold combination needs a neutral element")]
    NoNeutral,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dist {
    pmf: BTreeMap<Val, Prob>,
}

/// Accumulates weighted outcomes, collating identical values.
#[derive(Debug, Default)]
pub struct DistBuilder {
    pmf: BTreeMap<Val, Prob>,
}

impl DistBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: Val, p: Prob) {
        if p.is_zero() {
            return;
        }
        match self.pmf.entry(v) {
            btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += p;
            }
        }
    }

    pub fn add_dist(&mut self, d: &Dist, weight: &Prob) {
        for (v, p) in d.iter() {
            self.add(v.clone(), p * weight);
        }
    }

    /// Finishes the distribution, checking that the total mass is one.
    pub fn build(self) -> Result<Dist, DistError> {
        let total: Prob = self.pmf.values().sum();
        if !total.is_one() || self.pmf.values().any(|p| p <= &Prob::zero()) {
            return Err(DistError::BadWeights(total));
        }
        Ok(Dist { pmf: self.pmf })
    }
}

impl Dist {
    /// The point mass on `v`.
    pub fn delta(v: Val) -> Dist {
        Dist {
            pmf: BTreeMap::from([(v, Prob::one())]),
        }
    }

    /// Builds a distribution from weighted outcomes that sum to one.
    pub fn from_weighted(items: impl IntoIterator<Item = (Val, Prob)>) -> Result<Dist, DistError> {
        let mut b = DistBuilder::new();
        for (v, p) in items {
            if p < Prob::zero() {
                return Err(DistError::BadWeights(p));
            }
            b.add(v, p);
        }
        b.build()
    }

    /// Equiprobable over the given instances (duplicates add weight).
    pub fn uniform(items: impl IntoIterator<Item = Val>) -> Result<Dist, DistError> {
        let items: Vec<Val> = items.into_iter().collect();
        if items.is_empty() {
            return Err(DistError::Empty);
        }
        let p = Prob::new(1.into(), items.len().into());
        Dist::from_weighted(items.into_iter().map(|v| (v, p.clone())))
    }

    pub fn len(&self) -> usize {
        self.pmf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pmf.is_empty()
    }

    pub fn prob(&self, v: &Val) -> Prob {
        self.pmf.get(v).cloned().unwrap_or_else(Prob::zero)
    }

    /// Support points in canonical order with their probabilities.
    pub fn iter(&self) -> impl ExactSizeIterator<Item = (&Val, &Prob)> {
        self.pmf.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Val> {
        self.pmf.keys()
    }

    /// The single support point, if the distribution is a point mass.
    pub fn as_point(&self) -> Option<&Val> {
        if self.pmf.len() == 1 {
            self.pmf.keys().next()
        } else {
            None
        }
    }

    /// Total mass; one for every valid distribution.
    pub fn mass(&self) -> Prob {
        self.pmf.values().sum()
    }

    pub fn is_normalized(&self) -> bool {
        self.mass().is_one() && self.pmf.values().all(|p| p > &Prob::zero())
    }

    /// Functorial map (pushforward), collating equal images.
    pub fn map<E>(&self, mut f: impl FnMut(&Val) -> Result<Val, E>) -> Result<Dist, E> {
        let mut b = DistBuilder::new();
        for (v, p) in &self.pmf {
            b.add(f(v)?, p.clone());
        }
        Ok(Dist { pmf: b.pmf })
    }

    /// Monadic bind: `μ ∘ D(f)`.
    pub fn bind<E>(&self, mut f: impl FnMut(&Val) -> Result<Dist, E>) -> Result<Dist, E> {
        if let Some(v) = self.as_point() {
            return f(v);
        }
        let mut b = DistBuilder::new();
        for (v, p) in &self.pmf {
            b.add_dist(&f(v)?, p);
        }
        Ok(Dist { pmf: b.pmf })
    }

    /// Monad multiplication over an explicitly weighted list of distributions.
    pub fn mult(layers: impl IntoIterator<Item = (Dist, Prob)>) -> Result<Dist, DistError> {
        let mut b = DistBuilder::new();
        let mut total = Prob::zero();
        for (d, w) in layers {
            if w <= Prob::zero() {
                return Err(DistError::BadWeights(w));
            }
            b.add_dist(&d, &w);
            total += w;
        }
        if !total.is_one() {
            return Err(DistError::BadWeights(total));
        }
        b.build()
    }

    /// Independent joint distribution, as pairs `(#1: x, #2: y)`.
    pub fn pair(&self, other: &Dist) -> Dist {
        self.product_with(other, |x, y| {
            Ok::<_, std::convert::Infallible>(Val::tuple([x.clone(), y.clone()]))
        })
        .unwrap_or_else(|e| match e {})
    }

    /// Independent combination of two distributions through `combine`.
    pub fn product_with<E>(
        &self,
        other: &Dist,
        mut combine: impl FnMut(&Val, &Val) -> Result<Val, E>,
    ) -> Result<Dist, E> {
        let mut b = DistBuilder::new();
        for (x, p) in &self.pmf {
            for (y, q) in &other.pmf {
                b.add(combine(x, y)?, p * q);
            }
        }
        Ok(Dist { pmf: b.pmf })
    }

    /// The exact mean; `NaN` when `NaN` is in the support.
    pub fn mean(&self) -> Result<Val, DistError> {
        let mut acc = Num::Rat(Prob::zero());
        for (v, p) in &self.pmf {
            let n = v
                .as_num()
                .ok_or_else(|| DistError::NonNumeric(v.to_string()))?;
            let term = Num::arith(ArithOp::Mul, n, &Num::Rat(p.clone())).expect("numeric operands");
            acc = Num::arith(ArithOp::Add, &acc, &term).expect("numeric operands");
        }
        Ok(Val::Num(acc))
    }

    /// Distribution of `combine` folded over `n` independent draws from
    /// `self`, by repeated squaring. `combine` must be associative and
    /// commutative on the values it meets. `n = 0` yields `δ(neutral)`.
    pub fn pow_iid<E: From<DistError>>(
        &self,
        n: u64,
        neutral: Option<&Val>,
        mut combine: impl FnMut(&Val, &Val) -> Result<Val, E>,
    ) -> Result<Dist, E> {
        if n == 0 {
            return neutral
                .map(|v| Dist::delta(v.clone()))
                .ok_or(DistError::NoNeutral.into());
        }
        let mut result: Option<Dist> = None;
        let mut base = self.clone();
        let mut k = n;
        loop {
            if k & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.product_with(&base, &mut combine)?,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.product_with(&base, &mut combine)?;
        }
        Ok(result.expect("n >= 1"))
    }
}

impl<'a> IntoIterator for &'a Dist {
    type Item = (&'a Val, &'a Prob);
    type IntoIter = btree_map::Iter<'a, Val, Prob>;

    fn into_iter(self) -> Self::IntoIter {
        self.pmf.iter()
    }
}
