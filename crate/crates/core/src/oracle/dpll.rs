//! DPLL with unit propagation and pure-literal elimination over a naive
//! (truth-preserving, Tseitin-free) CNF conversion.
//!
//! The corpus is desk-scale, so there is no clause learning; the conversion
//! and search carry explicit budgets and report `TooLarge` instead of
//! grinding.

use std::collections::BTreeMap;

use crate::domain::{Assignment, Value};
use crate::smtlib::{Script, Sort, Term};

/// A literal is `var_id + 1`, negative for negated occurrence.
type Lit = i32;
type Clause = Vec<Lit>;

const CLAUSE_BUDGET: usize = 200_000;
const NNF_NODE_BUDGET: usize = 1_000_000;

pub(crate) enum PropOutcome {
    Sat(Assignment),
    Unsat,
    TooLarge,
}

/// Negation-normal-form formula over literals.
enum Nnf {
    Lit(Lit),
    True,
    False,
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

struct Budget {
    remaining: usize,
}

impl Budget {
    fn charge(&mut self) -> Result<(), ()> {
        if self.remaining == 0 {
            return Err(());
        }
        self.remaining -= 1;
        Ok(())
    }
}

fn to_nnf(
    t: &Term,
    positive: bool,
    ids: &BTreeMap<String, i32>,
    budget: &mut Budget,
) -> Result<Nnf, ()> {
    budget.charge()?;
    Ok(match t {
        Term::True => {
            if positive {
                Nnf::True
            } else {
                Nnf::False
            }
        }
        Term::False => {
            if positive {
                Nnf::False
            } else {
                Nnf::True
            }
        }
        Term::Var { name, .. } => {
            let id = ids[name];
            Nnf::Lit(if positive { id } else { -id })
        }
        Term::Not(a) => to_nnf(a, !positive, ids, budget)?,
        Term::And(xs) => {
            let parts = xs
                .iter()
                .map(|x| to_nnf(x, positive, ids, budget))
                .collect::<Result<Vec<_>, _>>()?;
            if positive {
                Nnf::And(parts)
            } else {
                Nnf::Or(parts)
            }
        }
        Term::Or(xs) => {
            let parts = xs
                .iter()
                .map(|x| to_nnf(x, positive, ids, budget))
                .collect::<Result<Vec<_>, _>>()?;
            if positive {
                Nnf::Or(parts)
            } else {
                Nnf::And(parts)
            }
        }
        Term::Implies(p, q) => {
            if positive {
                Nnf::Or(vec![
                    to_nnf(p, false, ids, budget)?,
                    to_nnf(q, true, ids, budget)?,
                ])
            } else {
                Nnf::And(vec![
                    to_nnf(p, true, ids, budget)?,
                    to_nnf(q, false, ids, budget)?,
                ])
            }
        }
        Term::Iff(p, q) => {
            // (p ↔ q) = (¬p ∨ q) ∧ (p ∨ ¬q); negated: (p ∨ q) ∧ (¬p ∨ ¬q).
            if positive {
                Nnf::And(vec![
                    Nnf::Or(vec![
                        to_nnf(p, false, ids, budget)?,
                        to_nnf(q, true, ids, budget)?,
                    ]),
                    Nnf::Or(vec![
                        to_nnf(p, true, ids, budget)?,
                        to_nnf(q, false, ids, budget)?,
                    ]),
                ])
            } else {
                Nnf::And(vec![
                    Nnf::Or(vec![
                        to_nnf(p, true, ids, budget)?,
                        to_nnf(q, true, ids, budget)?,
                    ]),
                    Nnf::Or(vec![
                        to_nnf(p, false, ids, budget)?,
                        to_nnf(q, false, ids, budget)?,
                    ]),
                ])
            }
        }
        Term::Ite(c, then, els) => {
            // ite over Bool: (c → then) ∧ (¬c → else); negation flips the
            // branches' polarity only.
            Nnf::And(vec![
                Nnf::Or(vec![
                    to_nnf(c, false, ids, budget)?,
                    to_nnf(then, positive, ids, budget)?,
                ]),
                Nnf::Or(vec![
                    to_nnf(c, true, ids, budget)?,
                    to_nnf(els, positive, ids, budget)?,
                ]),
            ])
        }
        _ => return Err(()),
    })
}

fn distribute(f: &Nnf, out: &mut Vec<Clause>) -> Result<(), ()> {
    match f {
        Nnf::True => Ok(()),
        Nnf::False => {
            out.push(Vec::new());
            Ok(())
        }
        Nnf::Lit(l) => {
            out.push(vec![*l]);
            Ok(())
        }
        Nnf::And(xs) => {
            for x in xs {
                distribute(x, out)?;
                if out.len() > CLAUSE_BUDGET {
                    return Err(());
                }
            }
            Ok(())
        }
        Nnf::Or(xs) => {
            let mut acc: Vec<Clause> = vec![Vec::new()];
            for x in xs {
                let mut sub = Vec::new();
                distribute(x, &mut sub)?;
                let mut next = Vec::with_capacity(acc.len() * sub.len().max(1));
                for a in &acc {
                    for s in &sub {
                        let mut merged = a.clone();
                        merged.extend_from_slice(s);
                        next.push(merged);
                        if next.len() > CLAUSE_BUDGET {
                            return Err(());
                        }
                    }
                }
                acc = next;
            }
            out.extend(acc);
            Ok(())
        }
    }
}

fn normalize_clause(mut c: Clause) -> Option<Clause> {
    c.sort_unstable();
    c.dedup();
    // Tautologies (p ∨ ¬p) drop out.
    for w in c.windows(2) {
        if w[0] == -w[1] {
            return None;
        }
    }
    for i in 0..c.len() {
        if c[i] > 0 && c[..i].contains(&-c[i]) {
            return None;
        }
    }
    Some(c)
}

/// Solves a propositional script: all occurring variables Bool, no
/// quantifiers, no theory nodes, no opaque nodes.
pub(crate) fn solve_propositional(script: &Script, max_vars: usize) -> PropOutcome {
    let vars = script.occurring_vars();
    debug_assert!(vars.iter().all(|(_, s)| *s == Sort::Bool));
    if vars.len() > max_vars {
        return PropOutcome::TooLarge;
    }
    let ids: BTreeMap<String, i32> = vars
        .iter()
        .enumerate()
        .map(|(i, (n, _))| (n.clone(), i as i32 + 1))
        .collect();

    let mut clauses: Vec<Clause> = Vec::new();
    for assertion in &script.assertions {
        let mut budget = Budget {
            remaining: NNF_NODE_BUDGET,
        };
        let nnf = match to_nnf(assertion, true, &ids, &mut budget) {
            Ok(f) => f,
            Err(()) => return PropOutcome::TooLarge,
        };
        let mut raw = Vec::new();
        if distribute(&nnf, &mut raw).is_err() {
            return PropOutcome::TooLarge;
        }
        for c in raw {
            if let Some(c) = normalize_clause(c) {
                clauses.push(c);
            }
        }
        if clauses.len() > CLAUSE_BUDGET {
            return PropOutcome::TooLarge;
        }
    }

    let n = vars.len();
    let mut assign: Vec<Option<bool>> = vec![None; n + 1];
    match dpll(&clauses, &mut assign) {
        Some(model) => {
            let mut witness = Assignment::new();
            for (name, _) in &vars {
                let id = ids[name] as usize;
                witness.bind(
                    name.clone(),
                    Value::Bool {
                        value: model[id].unwrap_or(false),
                    },
                );
            }
            PropOutcome::Sat(witness)
        }
        None => PropOutcome::Unsat,
    }
}

fn lit_value(assign: &[Option<bool>], lit: Lit) -> Option<bool> {
    assign[lit.unsigned_abs() as usize].map(|v| if lit > 0 { v } else { !v })
}

fn dpll(clauses: &[Clause], assign: &mut Vec<Option<bool>>) -> Option<Vec<Option<bool>>> {
    // Unit propagation and pure-literal elimination to fixpoint.
    loop {
        let mut changed = false;
        for clause in clauses {
            let mut satisfied = false;
            let mut unassigned: Option<Lit> = None;
            let mut unassigned_count = 0;
            for &lit in clause {
                match lit_value(assign, lit) {
                    Some(true) => {
                        satisfied = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        unassigned = Some(lit);
                        unassigned_count += 1;
                    }
                }
            }
            if satisfied {
                continue;
            }
            match unassigned_count {
                0 => return None, // conflict
                1 => {
                    let lit = unassigned.unwrap();
                    assign[lit.unsigned_abs() as usize] = Some(lit > 0);
                    changed = true;
                }
                _ => {}
            }
        }
        if changed {
            continue;
        }

        // Pure literals over clauses not yet satisfied.
        let mut polarity: BTreeMap<u32, (bool, bool)> = BTreeMap::new();
        for clause in clauses {
            if clause
                .iter()
                .any(|&l| lit_value(assign, l) == Some(true))
            {
                continue;
            }
            for &lit in clause {
                if lit_value(assign, lit).is_none() {
                    let entry = polarity.entry(lit.unsigned_abs()).or_insert((false, false));
                    if lit > 0 {
                        entry.0 = true;
                    } else {
                        entry.1 = true;
                    }
                }
            }
        }
        let mut assigned_pure = false;
        for (var, (pos, neg)) in &polarity {
            if pos != neg {
                assign[*var as usize] = Some(*pos);
                assigned_pure = true;
            }
        }
        if !assigned_pure {
            break;
        }
    }

    // Branch on the first unassigned variable of an unsatisfied clause.
    let mut branch_var: Option<u32> = None;
    let mut all_satisfied = true;
    for clause in clauses {
        let satisfied = clause
            .iter()
            .any(|&l| lit_value(assign, l) == Some(true));
        if satisfied {
            continue;
        }
        all_satisfied = false;
        if branch_var.is_none() {
            branch_var = clause
                .iter()
                .find(|&&l| lit_value(assign, l).is_none())
                .map(|l| l.unsigned_abs());
        }
    }
    if all_satisfied {
        return Some(assign.clone());
    }
    let var = branch_var?; // no unassigned literal in an unsatisfied clause: conflict
    for value in [true, false] {
        let mut attempt = assign.clone();
        attempt[var as usize] = Some(value);
        if let Some(model) = dpll(clauses, &mut attempt) {
            return Some(model);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smtlib::parse;

    fn run(src: &str) -> PropOutcome {
        solve_propositional(&parse(src).unwrap(), 24)
    }

    #[test]
    fn single_contradiction_is_unsat() {
        assert!(matches!(run("(assert false)"), PropOutcome::Unsat));
    }

    #[test]
    fn de_morgan_negation_is_unsat() {
        let src = "(declare-const a Bool)(declare-const b Bool)\
                   (assert (not (= (not (and a b)) (or (not a) (not b)))))";
        assert!(matches!(run(src), PropOutcome::Unsat));
    }

    #[test]
    fn simple_chain_is_sat_with_model() {
        let src = "(declare-const p Bool)(declare-const q Bool)\
                   (assert p)(assert (=> p q))";
        match run(src) {
            PropOutcome::Sat(w) => {
                assert_eq!(w.get("p"), Some(&Value::Bool { value: true }));
                assert_eq!(w.get("q"), Some(&Value::Bool { value: true }));
            }
            _ => panic!("expected sat"),
        }
    }

    #[test]
    fn var_limit_reports_too_large() {
        let mut src = String::new();
        for i in 0..30 {
            src.push_str(&format!("(declare-const v{i} Bool)"));
        }
        src.push_str("(assert (and");
        for i in 0..30 {
            src.push_str(&format!(" v{i}"));
        }
        src.push_str("))");
        assert!(matches!(
            solve_propositional(&parse(&src).unwrap(), 24),
            PropOutcome::TooLarge
        ));
    }
}
