//! Exhaustive enumeration over bounded domains for INT/BITVEC scripts.
//!
//! SAT answers are always sound. A no-model sweep over the integer domain
//! only certifies UNSAT when every integer variable is provably confined to
//! the swept domain; otherwise the result is UNKNOWN with `exhausted` set.

use std::ops::RangeInclusive;

use crate::domain::{Assignment, Value};
use crate::smtlib::{CmpOp, Script, Sort, Term};

use super::eval::satisfies_all;

pub(crate) enum EnumOutcome {
    Sat(Assignment),
    Unsat,
    /// No model found but completeness could not be certified, or the state
    /// budget ran out.
    Exhausted,
}

enum Domain {
    Bool,
    Int(Vec<i64>),
    BitVec { width: u32, size: u64 },
}

impl Domain {
    fn size(&self) -> u128 {
        match self {
            Domain::Bool => 2,
            Domain::Int(values) => values.len() as u128,
            Domain::BitVec { size, .. } => *size as u128,
        }
    }

    fn value_at(&self, idx: u64) -> Value {
        match self {
            Domain::Bool => Value::Bool { value: idx == 1 },
            Domain::Int(values) => Value::Int {
                value: values[idx as usize],
            },
            Domain::BitVec { width, .. } => Value::BitVec {
                width: *width,
                value: idx,
            },
        }
    }
}

pub(crate) fn solve_by_enumeration(
    script: &Script,
    int_domain: &RangeInclusive<i64>,
    max_states: u64,
) -> EnumOutcome {
    let vars = script.occurring_vars();
    let int_values: Vec<i64> = int_domain.clone().collect();

    let mut domains = Vec::with_capacity(vars.len());
    for (_, sort) in &vars {
        match sort {
            Sort::Bool => domains.push(Domain::Bool),
            Sort::Int => domains.push(Domain::Int(int_values.clone())),
            Sort::BitVec(w) => {
                if *w > 63 {
                    return EnumOutcome::Exhausted;
                }
                domains.push(Domain::BitVec {
                    width: *w,
                    size: 1u64 << w,
                });
            }
            Sort::Opaque(_) => return EnumOutcome::Exhausted,
        }
    }

    let total: u128 = domains.iter().map(|d| d.size()).product();
    let complete_sweep = total <= u128::from(max_states);

    // Odometer over variable domains, declaration order, ascending values.
    let mut counters: Vec<u64> = vec![0; domains.len()];
    let mut visited: u64 = 0;
    loop {
        if visited >= max_states {
            return EnumOutcome::Exhausted;
        }
        visited += 1;

        let mut a = Assignment::new();
        for (i, (name, _)) in vars.iter().enumerate() {
            a.bind(name.clone(), domains[i].value_at(counters[i]));
        }
        match satisfies_all(&script.assertions, &a) {
            Ok(true) => return EnumOutcome::Sat(a),
            Ok(false) => {}
            Err(_) => return EnumOutcome::Exhausted,
        }

        // Advance odometer.
        let mut pos = 0;
        loop {
            if pos == domains.len() {
                // Wrapped: the sweep is finished.
                if complete_sweep && unsat_certifiable(script, int_domain) {
                    return EnumOutcome::Unsat;
                }
                return EnumOutcome::Exhausted;
            }
            counters[pos] += 1;
            if (counters[pos] as u128) < domains[pos].size() {
                break;
            }
            counters[pos] = 0;
            pos += 1;
        }
    }
}

// Large sentinels that survive ±1 adjustments without overflow.
const NEG_INF: i128 = i128::MIN / 4;
const POS_INF: i128 = i128::MAX / 4;

/// True when a finished no-model sweep may be reported as UNSAT over ℤ:
/// either the top-level conjuncts confine every integer variable to the
/// swept domain, or they entail a contradiction outright (a positive cycle
/// among difference constraints).
fn unsat_certifiable(script: &Script, int_domain: &RangeInclusive<i64>) -> bool {
    ints_confined(script, int_domain) || has_positive_cycle(script)
}

/// Interval-bound analysis: propagates bounds from top-level comparison
/// conjuncts until fixpoint. Returns true when the assertions confine every
/// integer variable to the swept domain (an empty derived interval counts
/// as confined), so that a no-model sweep certifies UNSAT over ℤ.
fn ints_confined(script: &Script, int_domain: &RangeInclusive<i64>) -> bool {
    let vars = script.occurring_vars();
    let int_vars: Vec<&String> = vars
        .iter()
        .filter(|(_, s)| *s == Sort::Int)
        .map(|(n, _)| n)
        .collect();
    if int_vars.is_empty() {
        return true;
    }

    let mut conjuncts = Vec::new();
    for a in &script.assertions {
        flatten_conjuncts(a, &mut conjuncts);
    }

    let mut bounds: Vec<(i128, i128)> = vec![(NEG_INF, POS_INF); int_vars.len()];
    let index = |name: &str| int_vars.iter().position(|v| v.as_str() == name);

    for _ in 0..(2 * int_vars.len() + 2) {
        let mut changed = false;
        for c in &conjuncts {
            let (lo_updates, hi_updates) = extract_bound(c, &index, &bounds);
            for (i, lo) in lo_updates {
                if lo > bounds[i].0 {
                    bounds[i].0 = lo;
                    changed = true;
                }
            }
            for (i, hi) in hi_updates {
                if hi < bounds[i].1 {
                    bounds[i].1 = hi;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let d_lo = i128::from(*int_domain.start());
    let d_hi = i128::from(*int_domain.end());
    bounds
        .iter()
        .all(|&(lo, hi)| lo > hi || (lo >= d_lo && hi <= d_hi))
}

fn flatten_conjuncts<'a>(t: &'a Term, out: &mut Vec<&'a Term>) {
    match t {
        Term::And(xs) => xs.iter().for_each(|x| flatten_conjuncts(x, out)),
        other => out.push(other),
    }
}

/// Difference-constraint contradiction: conjuncts of the form `x op y`
/// translate to edges `v ≥ u + w`; a cycle of positive total weight entails
/// `u ≥ u + k` with `k > 0`, so the conjunction has no model at all.
fn has_positive_cycle(script: &Script) -> bool {
    let vars = script.occurring_vars();
    let int_vars: Vec<&String> = vars
        .iter()
        .filter(|(_, s)| *s == Sort::Int)
        .map(|(n, _)| n)
        .collect();
    if int_vars.len() < 2 {
        return false;
    }
    let index = |name: &str| int_vars.iter().position(|v| v.as_str() == name);

    let mut conjuncts = Vec::new();
    for a in &script.assertions {
        flatten_conjuncts(a, &mut conjuncts);
    }

    // Edge (u, v, w) encodes the entailed fact v ≥ u + w.
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    let mut push_ge = |a: &Term, b: &Term, slack: i64, edges: &mut Vec<(usize, usize, i64)>| {
        // a ≥ b + slack
        if let (Term::Var { name: an, sort: Sort::Int }, Term::Var { name: bn, sort: Sort::Int }) =
            (a, b)
        {
            if let (Some(ai), Some(bi)) = (index(an), index(bn)) {
                edges.push((bi, ai, slack));
            }
        }
    };
    for c in &conjuncts {
        match c {
            Term::Cmp(op, a, b) => match op {
                CmpOp::Gt => push_ge(a, b, 1, &mut edges),
                CmpOp::Ge => push_ge(a, b, 0, &mut edges),
                CmpOp::Lt => push_ge(b, a, 1, &mut edges),
                CmpOp::Le => push_ge(b, a, 0, &mut edges),
            },
            Term::Eq(a, b) => {
                push_ge(a, b, 0, &mut edges);
                push_ge(b, a, 0, &mut edges);
            }
            _ => {}
        }
    }
    if edges.is_empty() {
        return false;
    }

    // Longest-path relaxation: still relaxing after |V| rounds means a
    // positive cycle exists.
    let mut potential = vec![0i64; int_vars.len()];
    for _ in 0..int_vars.len() {
        let mut changed = false;
        for &(u, v, w) in &edges {
            let candidate = potential[u].saturating_add(w);
            if candidate > potential[v] {
                potential[v] = candidate;
                changed = true;
            }
        }
        if !changed {
            return false;
        }
    }
    let mut extra = false;
    for &(u, v, w) in &edges {
        if potential[u].saturating_add(w) > potential[v] {
            extra = true;
        }
    }
    extra
}

type Updates = Vec<(usize, i128)>;

/// Derives lower/upper bound updates entailed by one conjunct. Handles
/// `var op const`, `const op var`, `var op var`, and the `=` forms.
fn extract_bound(
    t: &Term,
    index: &dyn Fn(&str) -> Option<usize>,
    bounds: &[(i128, i128)],
) -> (Updates, Updates) {
    let mut lo = Vec::new();
    let mut hi = Vec::new();

    enum Side {
        Var(usize),
        Const(i128),
        Other,
    }
    let classify = |t: &Term| match t {
        Term::Var { name, sort: Sort::Int } => index(name).map(Side::Var).unwrap_or(Side::Other),
        Term::Int(n) => Side::Const(i128::from(*n)),
        _ => Side::Other,
    };

    // Normalize to `a <= b + slack` style handling per operator.
    let (op, a, b) = match t {
        Term::Cmp(op, a, b) => (*op, a.as_ref(), b.as_ref()),
        Term::Eq(a, b) => {
            // Equality gives both directions.
            let (lo1, hi1) = extract_bound(
                &Term::cmp(CmpOp::Le, a.as_ref().clone(), b.as_ref().clone()),
                index,
                bounds,
            );
            let (lo2, hi2) = extract_bound(
                &Term::cmp(CmpOp::Ge, a.as_ref().clone(), b.as_ref().clone()),
                index,
                bounds,
            );
            return (
                lo1.into_iter().chain(lo2).collect(),
                hi1.into_iter().chain(hi2).collect(),
            );
        }
        _ => return (lo, hi),
    };

    // Reduce > and >= to < and <= by swapping sides.
    let (a, b, strict) = match op {
        CmpOp::Lt => (a, b, true),
        CmpOp::Le => (a, b, false),
        CmpOp::Gt => (b, a, true),
        CmpOp::Ge => (b, a, false),
    };
    let slack = if strict { 1 } else { 0 };

    match (classify(a), classify(b)) {
        // x < c  →  x ≤ c − 1
        (Side::Var(i), Side::Const(c)) => hi.push((i, c - slack)),
        // c < x  →  x ≥ c + 1
        (Side::Const(c), Side::Var(i)) => lo.push((i, c + slack)),
        // x < y  →  x ≤ y.hi − 1  and  y ≥ x.lo + 1
        (Side::Var(i), Side::Var(j)) => {
            if bounds[j].1 < POS_INF {
                hi.push((i, bounds[j].1 - slack));
            }
            if bounds[i].0 > NEG_INF {
                lo.push((j, bounds[i].0 + slack));
            }
        }
        _ => {}
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smtlib::parse;

    fn outcome(src: &str) -> EnumOutcome {
        solve_by_enumeration(&parse(src).unwrap(), &(-8..=8), 1 << 20)
    }

    #[test]
    fn contradictory_sign_constraints_unsat() {
        let src = "(declare-const x Int)(assert (> x 0))(assert (< x 0))";
        assert!(matches!(outcome(src), EnumOutcome::Unsat));
    }

    #[test]
    fn satisfiable_int_finds_witness() {
        let src = "(declare-const x Int)(assert (> x 3))(assert (< x 6))";
        match outcome(src) {
            EnumOutcome::Sat(w) => {
                let Value::Int { value } = w.get("x").copied().unwrap() else {
                    panic!("expected int binding");
                };
                assert!(value > 3 && value < 6);
            }
            _ => panic!("expected sat"),
        }
    }

    #[test]
    fn unbounded_no_model_is_exhausted_not_unsat() {
        // Genuinely unsat, but neither variable has a constant bound, so the
        // sweep cannot certify UNSAT over all of ℤ.
        let src = "(declare-const x Int)(declare-const y Int)\
                   (assert (> x y))(assert (< x y))";
        assert!(matches!(outcome(src), EnumOutcome::Exhausted));
    }

    #[test]
    fn var_to_var_propagation_confines() {
        // x = 1 pins x; x > y and y > x then confine y through propagation.
        let src = "(declare-const x Int)(declare-const y Int)\
                   (assert (= x 1))(assert (> x y))(assert (> y x))";
        assert!(matches!(outcome(src), EnumOutcome::Unsat));
    }

    #[test]
    fn bitvec_domain_is_complete() {
        let src = "(declare-const v (_ BitVec 4))(assert (= (bvand v #x0) #x1))";
        assert!(matches!(outcome(src), EnumOutcome::Unsat));
    }

    #[test]
    fn state_budget_respected() {
        let src = "(declare-const a (_ BitVec 16))(declare-const b (_ BitVec 16))\
                   (assert (= (bvand a b) #x0001))";
        // 2^32 states exceed the default budget.
        assert!(matches!(
            solve_by_enumeration(&parse(src).unwrap(), &(-8..=8), 1 << 10),
            EnumOutcome::Exhausted
        ));
    }
}
