//! Lexer, parser, and canonical printer for the SMT-LIB v2 subset used by
//! the oracle, the generators, and prompt signature extraction.
//!
//! The frontend is deliberately tolerant on the theory side: REAL sorts,
//! string theory, and unrecognized compound forms are parsed as opaque nodes
//! so that such problems can still be ingested for prompting. The oracle
//! refuses opaque scripts with UNKNOWN.

mod lexer;
mod parser;
mod printer;

use std::fmt;

pub use lexer::lex;
pub use parser::parse;
pub use printer::print;

/// Sort of a term. Anything outside the decidable fragment (Real, strings,
/// user-declared sorts) is retained as `Opaque` with its source text.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Sort {
    Bool,
    Int,
    BitVec(u32),
    Opaque(String),
}

impl Sort {
    pub fn is_opaque(&self) -> bool {
        matches!(self, Sort::Opaque(_))
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Bool => write!(f, "Bool"),
            Sort::Int => write!(f, "Int"),
            Sort::BitVec(w) => write!(f, "(_ BitVec {w})"),
            Sort::Opaque(text) => write!(f, "{text}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl ArithOp {
    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BvOp {
    And,
    Or,
    Xor,
    Not,
    Shl,
    Lshr,
    Add,
}

impl BvOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BvOp::And => "bvand",
            BvOp::Or => "bvor",
            BvOp::Xor => "bvxor",
            BvOp::Not => "bvnot",
            BvOp::Shl => "bvshl",
            BvOp::Lshr => "bvlshr",
            BvOp::Add => "bvadd",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn symbol(self) -> &'static str {
        match self {
            Quantifier::Forall => "forall",
            Quantifier::Exists => "exists",
        }
    }
}

/// A sorted term. Bound-variable names shadow outer declarations within
/// quantifier scope.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    True,
    False,
    Int(i64),
    BitVec {
        width: u32,
        value: u64,
    },
    Var {
        name: String,
        sort: Sort,
    },
    Not(Box<Term>),
    And(Vec<Term>),
    Or(Vec<Term>),
    Implies(Box<Term>, Box<Term>),
    Iff(Box<Term>, Box<Term>),
    Ite(Box<Term>, Box<Term>, Box<Term>),
    Eq(Box<Term>, Box<Term>),
    Cmp(CmpOp, Box<Term>, Box<Term>),
    Arith(ArithOp, Vec<Term>),
    Bv(BvOp, Vec<Term>),
    Quant {
        quantifier: Quantifier,
        bound: Vec<(String, Sort)>,
        body: Box<Term>,
    },
    /// Application of a declared uninterpreted function. Opaque to the oracle.
    App {
        name: String,
        args: Vec<Term>,
        sort: Sort,
    },
    /// Unrecognized form retained verbatim (canonical s-expression text).
    Opaque {
        text: String,
    },
}

impl Term {
    pub fn not(t: Term) -> Term {
        Term::Not(Box::new(t))
    }

    pub fn implies(a: Term, b: Term) -> Term {
        Term::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Term, b: Term) -> Term {
        Term::Iff(Box::new(a), Box::new(b))
    }

    pub fn eq(a: Term, b: Term) -> Term {
        Term::Eq(Box::new(a), Box::new(b))
    }

    pub fn cmp(op: CmpOp, a: Term, b: Term) -> Term {
        Term::Cmp(op, Box::new(a), Box::new(b))
    }

    pub fn var(name: impl Into<String>, sort: Sort) -> Term {
        Term::Var {
            name: name.into(),
            sort,
        }
    }

    /// Best-known sort of this term; `None` for opaque forms.
    pub fn sort(&self) -> Option<Sort> {
        match self {
            Term::True | Term::False => Some(Sort::Bool),
            Term::Int(_) => Some(Sort::Int),
            Term::BitVec { width, .. } => Some(Sort::BitVec(*width)),
            Term::Var { sort, .. } => Some(sort.clone()),
            Term::Not(_)
            | Term::And(_)
            | Term::Or(_)
            | Term::Implies(_, _)
            | Term::Iff(_, _)
            | Term::Eq(_, _)
            | Term::Cmp(_, _, _)
            | Term::Quant { .. } => Some(Sort::Bool),
            Term::Ite(_, t, e) => t.sort().or_else(|| e.sort()),
            Term::Arith(_, _) => Some(Sort::Int),
            Term::Bv(_, args) => args.iter().find_map(|a| match a.sort() {
                Some(Sort::BitVec(w)) => Some(Sort::BitVec(w)),
                _ => None,
            }),
            Term::App { sort, .. } => Some(sort.clone()),
            Term::Opaque { .. } => None,
        }
    }

    /// True when the subtree contains an uninterpreted application, an
    /// unrecognized form, or an opaque-sorted variable.
    pub fn contains_opaque(&self) -> bool {
        match self {
            Term::App { .. } | Term::Opaque { .. } => true,
            Term::Var { sort, .. } => sort.is_opaque(),
            _ => {
                let mut found = false;
                self.for_each_child(&mut |c| found = found || c.contains_opaque());
                found
            }
        }
    }

    pub fn contains_quantifier(&self) -> bool {
        match self {
            Term::Quant { .. } => true,
            _ => {
                let mut found = false;
                self.for_each_child(&mut |c| found = found || c.contains_quantifier());
                found
            }
        }
    }

    fn for_each_child(&self, f: &mut dyn FnMut(&Term)) {
        match self {
            Term::Not(a) => f(a),
            Term::And(xs) | Term::Or(xs) | Term::Arith(_, xs) | Term::Bv(_, xs) => {
                xs.iter().for_each(f)
            }
            Term::Implies(a, b) | Term::Iff(a, b) | Term::Eq(a, b) | Term::Cmp(_, a, b) => {
                f(a);
                f(b);
            }
            Term::Ite(c, t, e) => {
                f(c);
                f(t);
                f(e);
            }
            Term::Quant { body, .. } => f(body),
            Term::App { args, .. } => args.iter().for_each(f),
            _ => {}
        }
    }

    /// Collects free variables (name, sort) in first-occurrence order.
    pub fn free_vars(&self, out: &mut Vec<(String, Sort)>) {
        fn walk(t: &Term, shadow: &mut Vec<String>, out: &mut Vec<(String, Sort)>) {
            match t {
                Term::Var { name, sort } => {
                    if !shadow.iter().any(|s| s == name)
                        && !out.iter().any(|(n, _)| n == name)
                    {
                        out.push((name.clone(), sort.clone()));
                    }
                }
                Term::Quant { bound, body, .. } => {
                    let depth = shadow.len();
                    shadow.extend(bound.iter().map(|(n, _)| n.clone()));
                    walk(body, shadow, out);
                    shadow.truncate(depth);
                }
                other => other.for_each_child(&mut |c| walk(c, shadow, out)),
            }
        }
        walk(self, &mut Vec::new(), out);
    }
}

/// Declared uninterpreted function with arity ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunDecl {
    pub name: String,
    pub params: Vec<Sort>,
    pub ret: Sort,
}

/// Parsed script. Assertion order matches the source exactly (UnsatCore
/// indices point into it).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Script {
    pub logic: Option<String>,
    pub sort_decls: Vec<(String, u32)>,
    pub declarations: Vec<(String, Sort)>,
    pub fun_decls: Vec<FunDecl>,
    pub assertions: Vec<Term>,
    pub has_check_sat: bool,
}

impl Script {
    pub fn new() -> Self {
        Script::default()
    }

    pub fn declare(&mut self, name: impl Into<String>, sort: Sort) {
        self.declarations.push((name.into(), sort));
    }

    pub fn assert_term(&mut self, t: Term) {
        self.assertions.push(t);
    }

    /// Copy of this script keeping only the assertions at `indices`
    /// (declarations unchanged).
    pub fn with_assertions(&self, indices: &[usize]) -> Script {
        let mut s = self.clone();
        s.assertions = indices
            .iter()
            .filter_map(|&i| self.assertions.get(i).cloned())
            .collect();
        s
    }

    pub fn contains_quantifier(&self) -> bool {
        self.assertions.iter().any(|a| a.contains_quantifier())
    }

    pub fn contains_opaque(&self) -> bool {
        self.assertions.iter().any(|a| a.contains_opaque())
    }

    /// Free variables occurring in the assertions, in first-occurrence order.
    pub fn occurring_vars(&self) -> Vec<(String, Sort)> {
        let mut out = Vec::new();
        for a in &self.assertions {
            a.free_vars(&mut out);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SmtError {
    #[error("lex error at {line}:{col}: {msg}")]
    Lex { line: usize, col: usize, msg: String },
    #[error("parse error at {line}:{col}: expected {expected}")]
    Parse {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("sort error at {path}: {msg}")]
    Sort { path: String, msg: String },
}

/// Variables and printed constraints of a script, for prompt pre-fill.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub variables: Vec<(String, Sort)>,
    pub constraint_count: usize,
    pub constraint_texts: Vec<String>,
}

/// Summarizes declarations and assertions for prompting.
pub fn extract_signature(s: &Script) -> Signature {
    Signature {
        variables: s.declarations.clone(),
        constraint_count: s.assertions.len(),
        constraint_texts: s.assertions.iter().map(printer::print_term).collect(),
    }
}
