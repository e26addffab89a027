//! The Alea language: values, types, distributions, a parser, a type
//! checker and exact and simulated evaluators.
//!
//! ```
//! let program = alea::compile("~bernoulli(0.503) ? @head : @ship").unwrap();
//! let dist = program.analyze().unwrap();
//! assert_eq!(dist.len(), 2);
//! ```

pub mod ast;
pub mod builtins;
pub mod dist;
pub mod engine;
pub mod frontend;
pub mod types;
pub mod values;

use ast::{Env, Expr};
use dist::Dist;
use engine::{EvalError, EvalOptions, RngState, TypeError};
use frontend::FrontendError;
use types::Type;
use values::Val;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Frontend(#[from] FrontendError),
    #[error("type error: {0}")]
    Type(#[from] TypeError),
    #[error("evaluation error: {0}")]
    Eval(#[from] EvalError),
}

/// A parsed, desugared and type-checked closed program.
#[derive(Debug, Clone)]
pub struct Program {
    pub expr: Expr,
    pub ty: Type,
}

/// Parses, desugars and type-checks source text.
pub fn compile(src: &str) -> Result<Program, Error> {
    let e = frontend::compile(src, &[])?;
    Program::from_expr(&e)
}

impl Program {
    pub fn from_expr(e: &Expr) -> Result<Program, Error> {
        let (expr, ty) = engine::check_program(e)?;
        Ok(Program { expr, ty })
    }

    /// Exact distribution of outcomes.
    pub fn analyze(&self) -> Result<Dist, Error> {
        Ok(engine::eval_dist(&Env::new(), &self.expr)?)
    }

    pub fn analyze_with(&self, opts: &EvalOptions) -> Result<Dist, Error> {
        Ok(engine::eval_dist_with(&Env::new(), &self.expr, opts)?)
    }

    /// One pseudo-random outcome and the successor state.
    pub fn sample(&self, state: RngState) -> Result<(Val, RngState), Error> {
        Ok(engine::eval_rand(&Env::new(), state, &self.expr)?)
    }

    /// `trials` outcomes drawn from one state stream.
    pub fn sample_many(&self, seed: u64, trials: usize) -> Result<Vec<Val>, Error> {
        let mut s = RngState::seeded(seed);
        let mut out = Vec::with_capacity(trials);
        for _ in 0..trials {
            let (v, next) = self.sample(s)?;
            out.push(v);
            s = next;
        }
        Ok(out)
    }
}
