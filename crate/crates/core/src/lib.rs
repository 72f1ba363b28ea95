//! Batch harness for evaluating whether answer-producing backends (LLM
//! endpoints or deterministic test doubles) can simulate the output of logic
//! solvers on logic programs.
//!
//! The crate is organised around the pipeline:
//!
//! ```text
//! corpus (load / generate) ──► prompt ──► backend ──► response ──► runner ──► metrics
//!                 │                                      ▲
//!                 └── smtlib ──► oracle (ground truth) ──┘
//! ```
//!
//! * [`domain`] — verdicts, problems, assignments, answer-space mappings.
//! * [`smtlib`] — lexer/parser/printer for the SMT-LIB subset.
//! * [`oracle`] — DPLL + bounded enumeration ground-truth engine.
//! * [`corpus`] — dataset loading, statistics, synthetic generation.
//! * [`mutation`] — syntax-error injection for robustness runs.
//! * [`prompt`] — strategy templates (sd/cot/ps/cosm/dcol).
//! * [`backend`] — HTTP chat client and deterministic test doubles.
//! * [`response`] — free-text verdict extraction.
//! * [`runner`] — batch orchestration and self-consistency voting.
//! * [`metrics`] — accuracy / unknown-rate / execution-accuracy reporting.

pub mod domain;
pub mod smtlib;
