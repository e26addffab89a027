use num_integer::Integer;
use num_traits::Zero;

use super::{Num, Rational, Val, ValueError};

/// Binary numeric operations. `Min`/`Max` double as `∧`/`∨` on `{0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Floor division `//`.
    IntDiv,
    /// Floor modulus `\\`, matching [`ArithOp::IntDiv`].
    Mod,
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "≠",
            CmpOp::Lt => "<",
            CmpOp::Le => "≤",
            CmpOp::Gt => ">",
            CmpOp::Ge => "≥",
        }
    }
}

impl Num {
    /// Exact arithmetic; `NaN` is absorbing and undefined results are `NaN`.
    pub fn arith(op: ArithOp, x: &Num, y: &Num) -> Result<Num, ValueError> {
        let (a, b) = match (x, y) {
            (Num::Rat(a), Num::Rat(b)) => (a, b),
            _ => {
                if matches!(op, ArithOp::IntDiv | ArithOp::Mod) {
                    check_integer(x)?;
                    check_integer(y)?;
                }
                return Ok(Num::NaN);
            }
        };
        let r = match op {
            ArithOp::Add => a + b,
            ArithOp::Sub => a - b,
            ArithOp::Mul => a * b,
            ArithOp::Div => {
                if b.is_zero() {
                    return Ok(Num::NaN);
                }
                a / b
            }
            ArithOp::IntDiv | ArithOp::Mod => {
                check_integer(x)?;
                check_integer(y)?;
                if b.is_zero() {
                    return Ok(Num::NaN);
                }
                let (n, d) = (a.to_integer(), b.to_integer());
                Rational::from_integer(if op == ArithOp::IntDiv {
                    n.div_floor(&d)
                } else {
                    n.mod_floor(&d)
                })
            }
            ArithOp::Min => a.min(b).clone(),
            ArithOp::Max => a.max(b).clone(),
        };
        Ok(Num::Rat(r))
    }

    /// Comparison; any `NaN` operand makes every relation false except `≠`.
    pub fn compare(op: CmpOp, x: &Num, y: &Num) -> bool {
        match (x, y) {
            (Num::Rat(a), Num::Rat(b)) => match op {
                CmpOp::Eq => a == b,
                CmpOp::Ne => a != b,
                CmpOp::Lt => a < b,
                CmpOp::Le => a <= b,
                CmpOp::Gt => a > b,
                CmpOp::Ge => a >= b,
            },
            _ => op == CmpOp::Ne,
        }
    }
}

fn check_integer(n: &Num) -> Result<(), ValueError> {
    match n {
        Num::Rat(r) if !r.is_integer() => Err(ValueError::NotInteger(r.to_string())),
        _ => Ok(()),
    }
}

fn expect_num(v: &Val) -> Result<&Num, ValueError> {
    v.as_num()
        .ok_or_else(|| ValueError::NotNumeric(v.to_string()))
}

pub fn num_arith(op: ArithOp, x: &Val, y: &Val) -> Result<Val, ValueError> {
    Num::arith(op, expect_num(x)?, expect_num(y)?).map(Val::Num)
}

pub fn num_compare(op: CmpOp, x: &Val, y: &Val) -> Result<Val, ValueError> {
    Ok(Val::bool(Num::compare(op, expect_num(x)?, expect_num(y)?)))
}
