//! Shared domain types: verdicts, problems, assignments, and the mappings
//! between solver verdicts and natural-language answer spaces.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Three-valued solver outcome.
///
/// `Unknown` covers both "the answerer declined to decide" and "the answerer
/// predicted a runtime error".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Sat,
    Unsat,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Sat => write!(f, "sat"),
            Verdict::Unsat => write!(f, "unsat"),
            Verdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// Answer space for entailment-style tasks. Binary tasks never emit
/// `Uncertain`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TernaryAnswer {
    True,
    False,
    Uncertain,
}

impl fmt::Display for TernaryAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TernaryAnswer::True => write!(f, "true"),
            TernaryAnswer::False => write!(f, "false"),
            TernaryAnswer::Uncertain => write!(f, "uncertain"),
        }
    }
}

/// Ground-truth label of a problem: a solver verdict for satisfiability
/// tasks, a ternary answer for entailment tasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroundTruth {
    Verdict(Verdict),
    Ternary(TernaryAnswer),
}

impl GroundTruth {
    pub fn as_str(&self) -> &'static str {
        match self {
            GroundTruth::Verdict(Verdict::Sat) => "sat",
            GroundTruth::Verdict(Verdict::Unsat) => "unsat",
            GroundTruth::Verdict(Verdict::Unknown) => "unknown",
            GroundTruth::Ternary(TernaryAnswer::True) => "true",
            GroundTruth::Ternary(TernaryAnswer::False) => "false",
            GroundTruth::Ternary(TernaryAnswer::Uncertain) => "uncertain",
        }
    }
}

impl fmt::Display for GroundTruth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Input format of a problem's code field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dialect {
    Smtlib,
    Z3pyText,
    Nl,
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dialect::Smtlib => write!(f, "smtlib"),
            Dialect::Z3pyText => write!(f, "z3py_text"),
            Dialect::Nl => write!(f, "nl"),
        }
    }
}

/// One corpus record: source text, dialect, optional natural-language
/// context, ground-truth label, provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Problem {
    pub id: String,
    pub dialect: Dialect,
    pub code: String,
    pub nl_context: Option<String>,
    pub ground_truth: GroundTruth,
    pub source: String,
    /// Physical line count of `code`, blanks included. Derived; recomputed
    /// on load.
    #[serde(default)]
    pub loc: usize,
}

impl Problem {
    pub fn new(
        id: impl Into<String>,
        dialect: Dialect,
        code: impl Into<String>,
        nl_context: Option<String>,
        ground_truth: GroundTruth,
        source: impl Into<String>,
    ) -> Self {
        let code = code.into();
        let loc = count_loc(&code);
        Problem {
            id: id.into(),
            dialect,
            code,
            nl_context,
            ground_truth,
            source: source.into(),
            loc,
        }
    }

    /// Recompute `loc` from `code`; returns true when the stored value was
    /// already consistent.
    pub fn recompute_loc(&mut self) -> bool {
        let fresh = count_loc(&self.code);
        let consistent = self.loc == fresh;
        self.loc = fresh;
        consistent
    }
}

/// Physical newline-delimited lines, blanks included.
pub fn count_loc(code: &str) -> usize {
    code.lines().count()
}

/// A value bound to a variable in a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Value {
    Bool { value: bool },
    Int { value: i64 },
    BitVec { width: u32, value: u64 },
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool { value } => write!(f, "{value}"),
            Value::Int { value } => write!(f, "{value}"),
            Value::BitVec { width, value } => {
                if width % 4 == 0 {
                    write!(f, "#x{:0>1$x}", value, (*width as usize) / 4)
                } else {
                    write!(f, "#b{:0>1$b}", value, *width as usize)
                }
            }
        }
    }
}

/// A witness: variable name to value bindings demonstrating satisfiability.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub bindings: BTreeMap<String, Value>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn bind(&mut self, name: impl Into<String>, value: Value) {
        self.bindings.insert(name.into(), value);
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.bindings.get(name)
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, value) in &self.bindings {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{name}={value}")?;
            first = false;
        }
        Ok(())
    }
}

/// A subset-minimal set of assertion indices whose conjunction is
/// unsatisfiable. Indices point into the original assertion list.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnsatCore {
    pub assertion_indices: std::collections::BTreeSet<usize>,
}

impl UnsatCore {
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        UnsatCore {
            assertion_indices: indices.into_iter().collect(),
        }
    }
}

/// Maps a solver verdict onto the binary-task answer space.
/// Total bijection: SAT→TRUE, UNSAT→FALSE, UNKNOWN→UNCERTAIN.
pub fn verdict_to_binary(v: Verdict) -> TernaryAnswer {
    match v {
        Verdict::Sat => TernaryAnswer::True,
        Verdict::Unsat => TernaryAnswer::False,
        Verdict::Unknown => TernaryAnswer::Uncertain,
    }
}

/// Swaps TRUE/FALSE and fixes UNCERTAIN.
pub fn negate_answer(a: TernaryAnswer) -> TernaryAnswer {
    match a {
        TernaryAnswer::True => TernaryAnswer::False,
        TernaryAnswer::False => TernaryAnswer::True,
        TernaryAnswer::Uncertain => TernaryAnswer::Uncertain,
    }
}

/// Both dual-hypothesis checks came back UNSAT, i.e. the premise set itself
/// is inconsistent.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("premises are inconsistent: both affirmation and negation checks are unsat")]
pub struct InconsistentPremises;

/// How to interpret the two hypothesis checks of an entailment query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CombineSemantics {
    /// Standard entailment semantics: (UNSAT, UNSAT) means the premises are
    /// inconsistent and is an error.
    #[default]
    Standard,
    /// Compatibility reading that treats (UNSAT, UNSAT) as UNCERTAIN instead
    /// of an error. Not logically coherent; provided for comparison runs.
    BothUnsatUncertain,
}

/// Combines the verdicts of the affirmation check (premises ∧ conclusion)
/// and the negation check (premises ∧ ¬conclusion) into a ternary answer.
///
/// Any UNKNOWN input propagates conservatively to UNCERTAIN.
pub fn dual_hypothesis_combine(
    affirm: Verdict,
    negate: Verdict,
) -> Result<TernaryAnswer, InconsistentPremises> {
    dual_hypothesis_combine_with(affirm, negate, CombineSemantics::Standard)
}

/// [`dual_hypothesis_combine`] with an explicit semantics flag.
pub fn dual_hypothesis_combine_with(
    affirm: Verdict,
    negate: Verdict,
    semantics: CombineSemantics,
) -> Result<TernaryAnswer, InconsistentPremises> {
    use Verdict::*;
    match (affirm, negate) {
        (Unknown, _) | (_, Unknown) => Ok(TernaryAnswer::Uncertain),
        (Sat, Unsat) => Ok(TernaryAnswer::True),
        (Unsat, Sat) => Ok(TernaryAnswer::False),
        (Sat, Sat) => Ok(TernaryAnswer::Uncertain),
        (Unsat, Unsat) => match semantics {
            CombineSemantics::Standard => Err(InconsistentPremises),
            CombineSemantics::BothUnsatUncertain => Ok(TernaryAnswer::Uncertain),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_to_binary_mapping() {
        assert_eq!(verdict_to_binary(Verdict::Sat), TernaryAnswer::True);
        assert_eq!(verdict_to_binary(Verdict::Unsat), TernaryAnswer::False);
        assert_eq!(verdict_to_binary(Verdict::Unknown), TernaryAnswer::Uncertain);
    }

    #[test]
    fn verdict_to_binary_is_a_bijection() {
        let verdicts = [Verdict::Sat, Verdict::Unsat, Verdict::Unknown];
        let mut images: Vec<TernaryAnswer> = verdicts.iter().map(|&v| verdict_to_binary(v)).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 3);
    }

    #[test]
    fn combine_decided_cases() {
        assert_eq!(
            dual_hypothesis_combine(Verdict::Sat, Verdict::Unsat).unwrap(),
            TernaryAnswer::True
        );
        assert_eq!(
            dual_hypothesis_combine(Verdict::Unsat, Verdict::Sat).unwrap(),
            TernaryAnswer::False
        );
        assert_eq!(
            dual_hypothesis_combine(Verdict::Sat, Verdict::Sat).unwrap(),
            TernaryAnswer::Uncertain
        );
    }

    #[test]
    fn combine_unknown_propagates() {
        assert_eq!(
            dual_hypothesis_combine(Verdict::Unknown, Verdict::Sat).unwrap(),
            TernaryAnswer::Uncertain
        );
        assert_eq!(
            dual_hypothesis_combine(Verdict::Sat, Verdict::Unknown).unwrap(),
            TernaryAnswer::Uncertain
        );
        assert_eq!(
            dual_hypothesis_combine(Verdict::Unknown, Verdict::Unknown).unwrap(),
            TernaryAnswer::Uncertain
        );
    }

    #[test]
    fn combine_rejects_inconsistent_premises() {
        assert_eq!(
            dual_hypothesis_combine(Verdict::Unsat, Verdict::Unsat),
            Err(InconsistentPremises)
        );
        // The compatibility flag maps the same pair to UNCERTAIN instead.
        assert_eq!(
            dual_hypothesis_combine_with(
                Verdict::Unsat,
                Verdict::Unsat,
                CombineSemantics::BothUnsatUncertain
            )
            .unwrap(),
            TernaryAnswer::Uncertain
        );
    }

    #[test]
    fn combine_symmetric_under_conclusion_negation() {
        use Verdict::*;
        for &a in &[Sat, Unsat, Unknown] {
            for &b in &[Sat, Unsat, Unknown] {
                match (dual_hypothesis_combine(a, b), dual_hypothesis_combine(b, a)) {
                    (Ok(x), Ok(y)) => assert_eq!(x, negate_answer(y), "({a:?},{b:?})"),
                    (Err(_), Err(_)) => {}
                    (x, y) => panic!("asymmetric error behaviour: {x:?} vs {y:?}"),
                }
            }
        }
    }

    #[test]
    fn loc_counts_physical_lines() {
        assert_eq!(count_loc(""), 0);
        assert_eq!(count_loc("a"), 1);
        assert_eq!(count_loc("a\nb"), 2);
        assert_eq!(count_loc("a\n\nb\n"), 3);
    }

    #[test]
    fn ground_truth_serde_vocabulary() {
        for (s, gt) in [
            ("\"sat\"", GroundTruth::Verdict(Verdict::Sat)),
            ("\"unsat\"", GroundTruth::Verdict(Verdict::Unsat)),
            ("\"unknown\"", GroundTruth::Verdict(Verdict::Unknown)),
            ("\"true\"", GroundTruth::Ternary(TernaryAnswer::True)),
            ("\"false\"", GroundTruth::Ternary(TernaryAnswer::False)),
            ("\"uncertain\"", GroundTruth::Ternary(TernaryAnswer::Uncertain)),
        ] {
            let parsed: GroundTruth = serde_json::from_str(s).unwrap();
            assert_eq!(parsed, gt);
            assert_eq!(serde_json::to_string(&gt).unwrap(), s);
        }
        assert!(serde_json::from_str::<GroundTruth>("\"maybe\"").is_err());
    }

    #[test]
    fn bitvec_display_uses_hex_when_width_divides_four() {
        assert_eq!(Value::BitVec { width: 8, value: 3 }.to_string(), "#x03");
        assert_eq!(Value::BitVec { width: 3, value: 5 }.to_string(), "#b101");
    }
}
