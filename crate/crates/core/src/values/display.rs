//! Canonical text form of values. The output is valid Alea source that
//! evaluates back to the same value.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{CaseId, FieldId, Num, Rational, Val};

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Num::Rat(r) => write!(f, "{r}"),
            Num::NaN => f.write_str("NaN"),
        }
    }
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldId::Pos(i) => write!(f, "#{i}"),
            FieldId::Named(n) => f.write_str(n),
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn write_seq<'a>(
    f: &mut fmt::Formatter<'_>,
    open: &str,
    close: &str,
    items: impl Iterator<Item = &'a Val>,
) -> fmt::Result {
    f.write_str(open)?;
    for (i, v) in items.enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str(close)
}

/// Writes the parenthesised field list of a record. Leading positional
/// fields `#1, #2, ...` are written bare; everything else is labelled.
pub(crate) fn write_record(
    f: &mut fmt::Formatter<'_>,
    fields: &std::collections::BTreeMap<FieldId, Val>,
) -> fmt::Result {
    f.write_str("(")?;
    let mut next_pos = 1;
    for (i, (id, v)) in fields.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        match id {
            FieldId::Pos(p) if *p == next_pos => {
                next_pos += 1;
                write!(f, "{v}")?;
            }
            FieldId::Pos(p) => write!(f, "#{p}: {v}")?,
            FieldId::Named(n) => write!(f, "{n}: {v}")?,
        }
    }
    if fields.len() == 1 && next_pos == 2 {
        // `(x)` would read as grouping.
        f.write_str(",")?;
    }
    f.write_str(")")
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Num(n) => write!(f, "{n}"),
            Val::List(l) => write_seq(f, "[", "]", l.iter()),
            Val::Bag(b) => write_seq(
                f,
                "⟨",
                "⟩",
                b.iter()
                    .flat_map(|(v, k)| std::iter::repeat_n(v, *k as usize)),
            ),
            Val::Set(s) => write_seq(f, "{", "}", s.iter()),
            Val::Record(r) => write_record(f, r),
            Val::Tag(c, p) => match &**p {
                Val::Record(r) if r.is_empty() => write!(f, "@{c}"),
                Val::Record(r) => {
                    write!(f, "@{c}")?;
                    write_record(f, r)
                }
                other => write!(f, "@{c}({other})"),
            },
        }
    }
}

/// Exact decimal expansion, when the denominator has no prime factors
/// other than 2 and 5.
pub fn exact_decimal(r: &Rational) -> Option<String> {
    let mut d = r.denom().clone();
    let (mut twos, mut fives) = (0usize, 0usize);
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return None;
    }
    let places = twos.max(fives);
    let scaled = r.numer().abs() * num_traits::pow(BigInt::from(10), places) / r.denom();
    Some(with_point(r.is_negative(), &scaled.to_string(), places))
}

/// `digits` shifted right by `places` decimal places.
fn with_point(negative: bool, digits: &str, places: usize) -> String {
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{digits}");
    }
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = padded.split_at(padded.len() - places);
    format!("{sign}{int}.{frac}")
}

/// Rounded to `sig` significant digits (half away from zero), trailing
/// zeros removed.
pub fn approx_decimal(r: &Rational, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let n = r.numer().abs();
    let d = r.denom().clone();
    let ten = BigInt::from(10);
    let low = num_traits::pow(ten.clone(), sig - 1);
    let high = num_traits::pow(ten.clone(), sig);
    // Choose a scale so that the integer part has exactly `sig` digits.
    let mut shift = sig as i64 - (n.to_string().len() as i64 - d.to_string().len() as i64);
    let scaled = |shift: i64| -> Rational {
        let p = num_traits::pow(ten.clone(), shift.unsigned_abs() as usize);
        if shift >= 0 {
            Rational::new(&n * p, d.clone())
        } else {
            Rational::new(n.clone(), &d * p)
        }
    };
    while scaled(shift).floor().to_integer() >= high {
        shift -= 1;
    }
    while scaled(shift).floor().to_integer() < low {
        shift += 1;
    }
    let mut q = (scaled(shift) + Rational::new(1.into(), 2.into()))
        .floor()
        .to_integer();
    if q >= high {
        q /= &ten;
        shift -= 1;
    }
    let digits = q.to_string();
    let sign = if r.is_negative() { "-" } else { "" };
    let text = if shift >= 0 {
        with_point(false, &digits, shift as usize)
    } else {
        format!("{digits}{}", "0".repeat(shift.unsigned_abs() as usize))
    };
    let text = if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        text
    };
    format!("{sign}{text}")
}

/// Exact decimal when it terminates, otherwise the fraction with a
/// 15-digit approximation.
pub fn render_rational(r: &Rational) -> String {
    match exact_decimal(r) {
        Some(s) => s,
        None => format!("{r} ≈ {}", approx_decimal(r, 15)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn decimals() {
        assert_eq!(
            exact_decimal(&q(90661502737169, 100000000000000)).as_deref(),
            Some("0.90661502737169")
        );
        assert_eq!(exact_decimal(&q(-1, 8)).as_deref(), Some("-0.125"));
        assert_eq!(exact_decimal(&q(7, 1)).as_deref(), Some("7"));
        assert_eq!(exact_decimal(&q(1, 3)), None);
        assert_eq!(approx_decimal(&q(17, 144), 15), "0.118055555555556");
        assert_eq!(approx_decimal(&q(2, 3), 15), "0.666666666666667");
        assert_eq!(approx_decimal(&q(-1000, 3), 4), "-333.3");
        assert_eq!(approx_decimal(&q(200000, 3), 3), "66700");
        assert_eq!(approx_decimal(&q(1, 30000), 3), "0.0000333");
        assert_eq!(render_rational(&q(1, 3)), "1/3 ≈ 0.333333333333333");
        assert_eq!(render_rational(&q(503, 1000)), "0.503");
    }

    #[test]
    fn renders_canonical_forms() {
        assert_eq!(Val::ratio(-2, 3).to_string(), "-2/3");
        assert_eq!(Val::nan().to_string(), "NaN");
        assert_eq!(
            Val::bag([Val::int(3), Val::int(1), Val::int(3)]).to_string(),
            "⟨1, 3, 3⟩"
        );
        assert_eq!(Val::set([Val::int(2), Val::int(1)]).to_string(), "{1, 2}");
        assert_eq!(Val::tuple([Val::int(1), Val::int(2)]).to_string(), "(1, 2)");
        assert_eq!(Val::tuple([Val::int(1)]).to_string(), "(1,)");
        assert_eq!(
            Val::record([
                (FieldId::named("foo"), Val::int(1)),
                (FieldId::Pos(1), Val::int(2))
            ])
            .to_string(),
            "(2, foo: 1)"
        );
        assert_eq!(Val::tag("lose", Val::unit()).to_string(), "@lose");
        assert_eq!(Val::tag("win", Val::int(3)).to_string(), "@win(3)");
        assert_eq!(
            Val::tag("p", Val::tuple([Val::int(1), Val::int(2)])).to_string(),
            "@p(1, 2)"
        );
    }
}
