//! Ground-truth engine: DPLL satisfiability for propositional scripts,
//! bounded-domain enumeration for INT/BITVEC scripts, deletion-based
//! UNSAT-core extraction, and an optional external-solver escape hatch.

mod dpll;
mod enumerate;
mod eval;
mod external;

use std::ops::RangeInclusive;
use std::time::Duration;

use crate::domain::{Assignment, UnsatCore, Verdict};
use crate::smtlib::{Script, Sort, Term};

pub use eval::{evaluate, satisfies_all, EvalError};

/// Limits and hooks for the oracle. Bounded limits keep every verdict
/// sound: anything the engine cannot certify is reported UNKNOWN.
#[derive(Debug, Clone)]
pub struct OracleConfig {
    /// Inclusive enumeration range for Int variables.
    pub int_domain: RangeInclusive<i64>,
    /// DPLL refuses propositional scripts with more variables than this.
    pub max_bool_vars: usize,
    /// Enumeration visits at most this many states.
    pub max_enum_states: u64,
    /// Command template with a `{file}` placeholder, consulted for scripts
    /// outside the embedded engine's fragment.
    pub external_solver_cmd: Option<String>,
    pub external_timeout: Duration,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            int_domain: -8..=8,
            max_bool_vars: 24,
            max_enum_states: 1 << 20,
            external_solver_cmd: None,
            external_timeout: Duration::from_secs(30),
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.int_domain.is_empty() {
            return Err("int_domain must be nonempty".into());
        }
        if self.max_bool_vars == 0 || self.max_enum_states == 0 {
            return Err("oracle limits must be positive".into());
        }
        Ok(())
    }
}

/// Outcome of a solve call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub verdict: Verdict,
    /// Present iff SAT; satisfies every assertion under re-evaluation.
    pub witness: Option<Assignment>,
    /// Present iff UNSAT and core extraction was requested.
    pub core: Option<UnsatCore>,
    /// True when the verdict is UNKNOWN because a limit was hit rather than
    /// because the script is outside the engine's fragment.
    pub exhausted: bool,
}

impl OracleResult {
    fn unknown(exhausted: bool) -> Self {
        OracleResult {
            verdict: Verdict::Unknown,
            witness: None,
            core: None,
            exhausted,
        }
    }

    fn of_verdict(verdict: Verdict) -> Self {
        OracleResult {
            verdict,
            witness: None,
            core: None,
            exhausted: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("core extraction requires an UNSAT script (solver said {0})")]
pub struct NotUnsat(pub Verdict);

fn term_uses_theory(t: &Term) -> bool {
    match t {
        Term::Int(_)
        | Term::BitVec { .. }
        | Term::Eq(_, _)
        | Term::Cmp(_, _, _)
        | Term::Arith(_, _)
        | Term::Bv(_, _) => true,
        Term::Var { sort, .. } => *sort != Sort::Bool,
        Term::Not(a) => term_uses_theory(a),
        Term::And(xs) | Term::Or(xs) => xs.iter().any(term_uses_theory),
        Term::Implies(a, b) | Term::Iff(a, b) => term_uses_theory(a) || term_uses_theory(b),
        Term::Ite(c, t2, e) => {
            term_uses_theory(c) || term_uses_theory(t2) || term_uses_theory(e)
        }
        _ => false,
    }
}

/// Decides a script within the configured limits.
///
/// Propositional scripts go through DPLL; quantifier-free INT/BITVEC scripts
/// through bounded enumeration. Quantified or opaque scripts yield UNKNOWN,
/// or are delegated to `external_solver_cmd` when configured. Limit overruns
/// surface as UNKNOWN with `exhausted = true`; this function never errors.
pub fn solve(script: &Script, cfg: &OracleConfig) -> OracleResult {
    if script.contains_quantifier() || script.contains_opaque() {
        if let Some(cmd) = &cfg.external_solver_cmd {
            let text = crate::smtlib::print(script);
            let verdict = external::run_external(cmd, &text, cfg.external_timeout);
            return OracleResult::of_verdict(verdict);
        }
        return OracleResult::unknown(false);
    }

    if script.assertions.is_empty() {
        return OracleResult {
            verdict: Verdict::Sat,
            witness: Some(Assignment::new()),
            core: None,
            exhausted: false,
        };
    }

    let vars = script.occurring_vars();
    if vars.iter().any(|(_, s)| s.is_opaque()) {
        return OracleResult::unknown(false);
    }
    let propositional = vars.iter().all(|(_, s)| *s == Sort::Bool)
        && !script.assertions.iter().any(term_uses_theory);

    if propositional {
        match dpll::solve_propositional(script, cfg.max_bool_vars) {
            dpll::PropOutcome::Sat(witness) => OracleResult {
                verdict: Verdict::Sat,
                witness: Some(witness),
                core: None,
                exhausted: false,
            },
            dpll::PropOutcome::Unsat => OracleResult::of_verdict(Verdict::Unsat),
            dpll::PropOutcome::TooLarge => OracleResult::unknown(true),
        }
    } else {
        match enumerate::solve_by_enumeration(script, &cfg.int_domain, cfg.max_enum_states) {
            enumerate::EnumOutcome::Sat(witness) => OracleResult {
                verdict: Verdict::Sat,
                witness: Some(witness),
                core: None,
                exhausted: false,
            },
            enumerate::EnumOutcome::Unsat => OracleResult::of_verdict(Verdict::Unsat),
            enumerate::EnumOutcome::Exhausted => OracleResult::unknown(true),
        }
    }
}

/// [`solve`], populating the UNSAT core when the verdict is UNSAT.
pub fn solve_with_core(script: &Script, cfg: &OracleConfig) -> OracleResult {
    let mut result = solve(script, cfg);
    if result.verdict == Verdict::Unsat {
        if let Ok(core) = extract_core(script, cfg) {
            result.core = Some(core);
        }
    }
    result
}

/// Deletion-based core minimization: iteratively drops assertions whose
/// removal keeps the script UNSAT. The result is subset-minimal (removing
/// any single member makes it SAT or UNKNOWN), not necessarily
/// minimum-cardinality.
pub fn extract_core(script: &Script, cfg: &OracleConfig) -> Result<UnsatCore, NotUnsat> {
    let full = solve(script, cfg);
    if full.verdict != Verdict::Unsat {
        return Err(NotUnsat(full.verdict));
    }

    let mut kept: Vec<usize> = (0..script.assertions.len()).collect();
    let mut i = 0;
    while i < kept.len() {
        let mut candidate = kept.clone();
        candidate.remove(i);
        let reduced = script.with_assertions(&candidate);
        if solve(&reduced, cfg).verdict == Verdict::Unsat {
            kept = candidate; // drop permanently, stay at position i
        } else {
            i += 1;
        }
    }
    Ok(UnsatCore::from_indices(kept))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Value;
    use crate::smtlib::parse;

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn assert_false_is_unsat_with_core_zero() {
        let s = parse("(assert false)").unwrap();
        let r = solve_with_core(&s, &cfg());
        assert_eq!(r.verdict, Verdict::Unsat);
        assert_eq!(r.core, Some(UnsatCore::from_indices([0])));
    }

    #[test]
    fn empty_assertions_vacuously_sat() {
        let s = parse("(declare-const x Bool)(check-sat)").unwrap();
        let r = solve(&s, &cfg());
        assert_eq!(r.verdict, Verdict::Sat);
        assert_eq!(r.witness, Some(Assignment::new()));
    }

    #[test]
    fn de_morgan_negation_unsat_matches_truth_table() {
        // Independent check first: enumerate all four assignments of the
        // raw assertion and confirm none satisfies it.
        let s = parse(
            "(declare-const a Bool)(declare-const b Bool)\
             (assert (not (= (not (and a b)) (or (not a) (not b)))))(check-sat)",
        )
        .unwrap();
        let mut models = 0;
        for a in [false, true] {
            for b in [false, true] {
                let mut asg = Assignment::new();
                asg.bind("a", Value::Bool { value: a });
                asg.bind("b", Value::Bool { value: b });
                if satisfies_all(&s.assertions, &asg).unwrap() {
                    models += 1;
                }
            }
        }
        assert_eq!(models, 0, "truth table must refute the negated equivalence");
        assert_eq!(solve(&s, &cfg()).verdict, Verdict::Unsat);
    }

    #[test]
    fn contradictory_int_bounds_unsat_with_full_core() {
        // Independent oracle: sweep the domain by hand.
        let s = parse("(declare-const x Int)(assert (> x 0))(assert (< x 0))").unwrap();
        assert!(!(-8..=8).any(|x| x > 0 && x < 0));
        let r = solve_with_core(&s, &cfg());
        assert_eq!(r.verdict, Verdict::Unsat);
        assert_eq!(r.core, Some(UnsatCore::from_indices([0, 1])));
    }

    #[test]
    fn sat_witness_self_certifies() {
        let s = parse(
            "(declare-const p Bool)(declare-const q Bool)(declare-const x Int)\
             (assert (=> p q))(assert p)(assert (> x 2))(assert (< x 5))",
        )
        .unwrap();
        let r = solve(&s, &cfg());
        assert_eq!(r.verdict, Verdict::Sat);
        let w = r.witness.unwrap();
        assert!(satisfies_all(&s.assertions, &w).unwrap());
    }

    #[test]
    fn core_is_subset_minimal() {
        // {x = 1, x > y, y > x}: dropping either inequality restores SAT,
        // dropping the equality keeps the conflict. Checked by hand sweep.
        let src = "(declare-const x Int)(declare-const y Int)\
                   (assert (= x 1))(assert (> x y))(assert (> y x))";
        let s = parse(src).unwrap();
        let mut any_model = false;
        for x in -8i64..=8 {
            for y in -8i64..=8 {
                if x == 1 && x > y && y > x {
                    any_model = true;
                }
            }
        }
        assert!(!any_model);
        let core = extract_core(&s, &cfg()).unwrap();
        assert_eq!(core, UnsatCore::from_indices([1, 2]));
        // Single deletions of core members are no longer UNSAT.
        for &idx in &core.assertion_indices {
            let reduced: Vec<usize> = core
                .assertion_indices
                .iter()
                .copied()
                .filter(|&i| i != idx)
                .collect();
            let verdict = solve(&s.with_assertions(&reduced), &cfg()).verdict;
            assert_ne!(verdict, Verdict::Unsat);
        }
    }

    #[test]
    fn quantified_script_is_unknown_and_has_no_core() {
        // Quantifiers are outside the embedded fragment even when the
        // underlying problem is unsatisfiable.
        let s = parse(
            "(declare-const x Int)(declare-const y Int)\
             (assert (= y (+ x 1)))\
             (assert (forall ((z Int)) (=> (<= z 0) (< x z))))",
        )
        .unwrap();
        let r = solve(&s, &cfg());
        assert_eq!(r.verdict, Verdict::Unknown);
        assert!(!r.exhausted);
        assert_eq!(extract_core(&s, &cfg()), Err(NotUnsat(Verdict::Unknown)));
    }

    #[test]
    fn external_hook_handles_out_of_scope_scripts() {
        let s = parse("(declare-const r Real)(assert (> r 0))(check-sat)").unwrap();
        let mut with_hook = cfg();
        with_hook.external_solver_cmd = Some("echo sat".into());
        assert_eq!(solve(&s, &with_hook).verdict, Verdict::Sat);
        with_hook.external_solver_cmd = Some("exit 3".into());
        assert_eq!(solve(&s, &with_hook).verdict, Verdict::Unknown);
    }

    #[test]
    fn enumeration_monotone_in_domain() {
        // Enlarging the domain never flips SAT to UNSAT.
        let sources = [
            "(declare-const x Int)(assert (> x 6))",
            "(declare-const x Int)(assert (= x 12))",
            "(declare-const x Int)(assert (> x 0))(assert (< x 0))",
        ];
        for src in sources {
            let s = parse(src).unwrap();
            let narrow = solve(
                &s,
                &OracleConfig {
                    int_domain: -2..=2,
                    ..cfg()
                },
            );
            let wide = solve(
                &s,
                &OracleConfig {
                    int_domain: -16..=16,
                    ..cfg()
                },
            );
            if narrow.verdict == Verdict::Sat {
                assert_eq!(wide.verdict, Verdict::Sat, "{src}");
            }
        }
    }
}
