//! Term evaluation under an assignment. Used for witness checking and for
//! bounded enumeration.

use crate::domain::{Assignment, Value};
use crate::smtlib::{ArithOp, BvOp, CmpOp, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("cannot evaluate: {0}")]
    Unsupported(String),
}

fn mask(width: u32, value: u64) -> u64 {
    if width >= 64 {
        value
    } else {
        value & ((1u64 << width) - 1)
    }
}

fn as_bool(v: Value) -> Result<bool, EvalError> {
    match v {
        Value::Bool { value } => Ok(value),
        other => Err(EvalError::Unsupported(format!(
            "expected boolean value, found {other}"
        ))),
    }
}

fn as_int(v: Value) -> Result<i64, EvalError> {
    match v {
        Value::Int { value } => Ok(value),
        other => Err(EvalError::Unsupported(format!(
            "expected integer value, found {other}"
        ))),
    }
}

fn as_bv(v: Value) -> Result<(u32, u64), EvalError> {
    match v {
        Value::BitVec { width, value } => Ok((width, value)),
        other => Err(EvalError::Unsupported(format!(
            "expected bit-vector value, found {other}"
        ))),
    }
}

/// Evaluates a quantifier-free term under `a`. Standard semantics;
/// bit-vector arithmetic is modular on the declared width.
pub fn evaluate(t: &Term, a: &Assignment) -> Result<Value, EvalError> {
    match t {
        Term::True => Ok(Value::Bool { value: true }),
        Term::False => Ok(Value::Bool { value: false }),
        Term::Int(n) => Ok(Value::Int { value: *n }),
        Term::BitVec { width, value } => Ok(Value::BitVec {
            width: *width,
            value: *value,
        }),
        Term::Var { name, .. } => a
            .get(name)
            .copied()
            .ok_or_else(|| EvalError::UnboundVariable(name.clone())),
        Term::Not(x) => Ok(Value::Bool {
            value: !as_bool(evaluate(x, a)?)?,
        }),
        Term::And(xs) => {
            for x in xs {
                if !as_bool(evaluate(x, a)?)? {
                    return Ok(Value::Bool { value: false });
                }
            }
            Ok(Value::Bool { value: true })
        }
        Term::Or(xs) => {
            for x in xs {
                if as_bool(evaluate(x, a)?)? {
                    return Ok(Value::Bool { value: true });
                }
            }
            Ok(Value::Bool { value: false })
        }
        Term::Implies(p, q) => Ok(Value::Bool {
            value: !as_bool(evaluate(p, a)?)? || as_bool(evaluate(q, a)?)?,
        }),
        Term::Iff(p, q) => Ok(Value::Bool {
            value: as_bool(evaluate(p, a)?)? == as_bool(evaluate(q, a)?)?,
        }),
        Term::Ite(c, then, els) => {
            if as_bool(evaluate(c, a)?)? {
                evaluate(then, a)
            } else {
                evaluate(els, a)
            }
        }
        Term::Eq(x, y) => Ok(Value::Bool {
            value: evaluate(x, a)? == evaluate(y, a)?,
        }),
        Term::Cmp(op, x, y) => {
            let l = as_int(evaluate(x, a)?)?;
            let r = as_int(evaluate(y, a)?)?;
            let value = match op {
                CmpOp::Lt => l < r,
                CmpOp::Le => l <= r,
                CmpOp::Gt => l > r,
                CmpOp::Ge => l >= r,
            };
            Ok(Value::Bool { value })
        }
        Term::Arith(op, xs) => {
            let vals: Vec<i64> = xs
                .iter()
                .map(|x| as_int(evaluate(x, a)?))
                .collect::<Result<_, _>>()?;
            let value = match op {
                ArithOp::Add => vals.iter().fold(0i64, |acc, v| acc.wrapping_add(*v)),
                ArithOp::Mul => vals.iter().fold(1i64, |acc, v| acc.wrapping_mul(*v)),
                ArithOp::Sub => {
                    if vals.len() == 1 {
                        vals[0].wrapping_neg()
                    } else {
                        vals[1..]
                            .iter()
                            .fold(vals[0], |acc, v| acc.wrapping_sub(*v))
                    }
                }
            };
            Ok(Value::Int { value })
        }
        Term::Bv(op, xs) => {
            let vals: Vec<(u32, u64)> = xs
                .iter()
                .map(|x| as_bv(evaluate(x, a)?))
                .collect::<Result<_, _>>()?;
            let width = vals[0].0;
            let value = match op {
                BvOp::Not => mask(width, !vals[0].1),
                BvOp::And => vals.iter().fold(u64::MAX, |acc, (_, v)| acc & v),
                BvOp::Or => vals.iter().fold(0, |acc, (_, v)| acc | v),
                BvOp::Xor => vals[1..].iter().fold(vals[0].1, |acc, (_, v)| acc ^ v),
                BvOp::Add => vals[1..]
                    .iter()
                    .fold(vals[0].1, |acc, (_, v)| acc.wrapping_add(*v)),
                BvOp::Shl => {
                    let shift = vals[1].1;
                    if shift >= u64::from(width) {
                        0
                    } else {
                        vals[0].1 << shift
                    }
                }
                BvOp::Lshr => {
                    let shift = vals[1].1;
                    if shift >= u64::from(width) {
                        0
                    } else {
                        mask(width, vals[0].1) >> shift
                    }
                }
            };
            Ok(Value::BitVec {
                width,
                value: mask(width, value),
            })
        }
        Term::Quant { .. } => Err(EvalError::Unsupported("quantified term".into())),
        Term::App { name, .. } => Err(EvalError::Unsupported(format!(
            "uninterpreted function `{name}`"
        ))),
        Term::Opaque { text } => Err(EvalError::Unsupported(format!("opaque term `{text}`"))),
    }
}

/// True when every assertion of the script evaluates to true under `a`.
pub fn satisfies_all(assertions: &[Term], a: &Assignment) -> Result<bool, EvalError> {
    for t in assertions {
        match evaluate(t, a)? {
            Value::Bool { value: true } => {}
            Value::Bool { value: false } => return Ok(false),
            other => {
                return Err(EvalError::Unsupported(format!(
                    "assertion evaluated to non-boolean {other}"
                )))
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smtlib::Sort;

    #[test]
    fn and_of_constants() {
        let t = Term::And(vec![Term::True, Term::False]);
        assert_eq!(
            evaluate(&t, &Assignment::new()).unwrap(),
            Value::Bool { value: false }
        );
    }

    #[test]
    fn int_addition_under_binding() {
        let t = Term::Arith(ArithOp::Add, vec![Term::var("x", Sort::Int), Term::Int(1)]);
        let mut a = Assignment::new();
        a.bind("x", Value::Int { value: 2 });
        assert_eq!(evaluate(&t, &a).unwrap(), Value::Int { value: 3 });
    }

    #[test]
    fn bvshl_shifts_within_width() {
        // #b0011 << 1 = #b0110 at width 4.
        let t = Term::Bv(
            BvOp::Shl,
            vec![
                Term::BitVec { width: 4, value: 3 },
                Term::BitVec { width: 4, value: 1 },
            ],
        );
        assert_eq!(
            evaluate(&t, &Assignment::new()).unwrap(),
            Value::BitVec { width: 4, value: 6 }
        );
    }

    #[test]
    fn bv_overflow_is_modular() {
        let t = Term::Bv(
            BvOp::Add,
            vec![
                Term::BitVec { width: 4, value: 15 },
                Term::BitVec { width: 4, value: 1 },
            ],
        );
        assert_eq!(
            evaluate(&t, &Assignment::new()).unwrap(),
            Value::BitVec { width: 4, value: 0 }
        );
    }

    #[test]
    fn unbound_variable_errors() {
        let t = Term::var("ghost", Sort::Bool);
        assert_eq!(
            evaluate(&t, &Assignment::new()),
            Err(EvalError::UnboundVariable("ghost".into()))
        );
    }

    #[test]
    fn quantifier_unsupported() {
        let t = Term::Quant {
            quantifier: crate::smtlib::Quantifier::Forall,
            bound: vec![("x".into(), Sort::Int)],
            body: Box::new(Term::True),
        };
        assert!(matches!(
            evaluate(&t, &Assignment::new()),
            Err(EvalError::Unsupported(_))
        ));
    }
}
