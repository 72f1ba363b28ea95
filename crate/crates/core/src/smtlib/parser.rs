//! S-expression reader and command/term interpreter with parse-time sort
//! checking.

use std::collections::HashMap;

use super::lexer::{lex, Token, TokenKind};
use super::{ArithOp, BvOp, CmpOp, FunDecl, Quantifier, Script, SmtError, Sort, Term};

#[derive(Debug, Clone)]
enum SExpr {
    Atom {
        text: String,
        line: usize,
        col: usize,
    },
    List {
        items: Vec<SExpr>,
        line: usize,
        col: usize,
    },
}

impl SExpr {
    fn pos(&self) -> (usize, usize) {
        match self {
            SExpr::Atom { line, col, .. } | SExpr::List { line, col, .. } => (*line, *col),
        }
    }

    /// Canonical text: atoms verbatim, lists space-joined. Used both for
    /// opaque capture and for opaque-sort rendering.
    fn canonical(&self) -> String {
        match self {
            SExpr::Atom { text, .. } => text.clone(),
            SExpr::List { items, .. } => {
                let inner: Vec<String> = items.iter().map(|i| i.canonical()).collect();
                format!("({})", inner.join(" "))
            }
        }
    }
}

fn read_all(tokens: &[Token]) -> Result<Vec<SExpr>, SmtError> {
    let mut out = Vec::new();
    let mut idx = 0usize;
    while idx < tokens.len() {
        let (expr, next) = read_one(tokens, idx)?;
        out.push(expr);
        idx = next;
    }
    Ok(out)
}

fn read_one(tokens: &[Token], idx: usize) -> Result<(SExpr, usize), SmtError> {
    match tokens.get(idx) {
        None => {
            let (line, col) = tokens
                .last()
                .map(|t| (t.line, t.col))
                .unwrap_or((1, 1));
            Err(SmtError::Parse {
                line,
                col,
                expected: "s-expression".into(),
            })
        }
        Some(tok) => match &tok.kind {
            TokenKind::Atom(text) => Ok((
                SExpr::Atom {
                    text: text.clone(),
                    line: tok.line,
                    col: tok.col,
                },
                idx + 1,
            )),
            TokenKind::LParen => {
                let mut items = Vec::new();
                let mut cursor = idx + 1;
                loop {
                    match tokens.get(cursor) {
                        None => {
                            return Err(SmtError::Parse {
                                line: tok.line,
                                col: tok.col,
                                expected: "closing `)`".into(),
                            })
                        }
                        Some(t) if t.kind == TokenKind::RParen => {
                            return Ok((
                                SExpr::List {
                                    items,
                                    line: tok.line,
                                    col: tok.col,
                                },
                                cursor + 1,
                            ));
                        }
                        Some(_) => {
                            let (item, next) = read_one(tokens, cursor)?;
                            items.push(item);
                            cursor = next;
                        }
                    }
                }
            }
            TokenKind::RParen => Err(SmtError::Parse {
                line: tok.line,
                col: tok.col,
                expected: "s-expression, found stray `)`".into(),
            }),
        },
    }
}

struct Env {
    consts: HashMap<String, Sort>,
    funs: HashMap<String, (Vec<Sort>, Sort)>,
    sorts: HashMap<String, u32>,
    bound: Vec<(String, Sort)>,
}

impl Env {
    fn lookup_var(&self, name: &str) -> Option<Sort> {
        self.bound
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s.clone())
            .or_else(|| self.consts.get(name).cloned())
    }
}

/// Parses SMT-LIB source into a [`Script`]. Covers `set-logic`,
/// `set-option`/`set-info` (ignored), `declare-sort`, `declare-const`,
/// `declare-fun`, `assert`, `check-sat`, and `exit` (ignored); `push`/`pop`
/// are rejected. Unrecognized compound forms inside assertions become
/// opaque nodes; bare undeclared symbols are errors.
pub fn parse(src: &str) -> Result<Script, SmtError> {
    let tokens = lex(src)?;
    let exprs = read_all(&tokens)?;

    let mut script = Script::new();
    let mut env = Env {
        consts: HashMap::new(),
        funs: HashMap::new(),
        sorts: HashMap::new(),
        bound: Vec::new(),
    };

    for expr in &exprs {
        let (line, col) = expr.pos();
        let items = match expr {
            SExpr::List { items, .. } => items,
            SExpr::Atom { .. } => {
                return Err(SmtError::Parse {
                    line,
                    col,
                    expected: "command list".into(),
                })
            }
        };
        let head = match items.first() {
            Some(SExpr::Atom { text, .. }) => text.as_str(),
            _ => {
                return Err(SmtError::Parse {
                    line,
                    col,
                    expected: "command name".into(),
                })
            }
        };
        match head {
            "set-logic" => {
                let name = expect_atom(items.get(1), line, col, "logic name")?;
                script.logic = Some(name);
            }
            "set-option" | "set-info" | "exit" => {}
            "declare-sort" => {
                let name = expect_atom(items.get(1), line, col, "sort name")?;
                let arity = match items.get(2) {
                    None => 0,
                    Some(SExpr::Atom { text, .. }) => text.parse::<u32>().map_err(|_| {
                        SmtError::Parse {
                            line,
                            col,
                            expected: "sort arity numeral".into(),
                        }
                    })?,
                    Some(other) => {
                        let (l, c) = other.pos();
                        return Err(SmtError::Parse {
                            line: l,
                            col: c,
                            expected: "sort arity numeral".into(),
                        });
                    }
                };
                env.sorts.insert(name.clone(), arity);
                script.sort_decls.push((name, arity));
            }
            "declare-const" => {
                let name = expect_atom(items.get(1), line, col, "constant name")?;
                let sort = parse_sort(
                    items.get(2).ok_or(SmtError::Parse {
                        line,
                        col,
                        expected: "sort".into(),
                    })?,
                    &env,
                )?;
                env.consts.insert(name.clone(), sort.clone());
                script.declarations.push((name, sort));
            }
            "declare-fun" => {
                let name = expect_atom(items.get(1), line, col, "function name")?;
                let params = match items.get(2) {
                    Some(SExpr::List { items, .. }) => items
                        .iter()
                        .map(|s| parse_sort(s, &env))
                        .collect::<Result<Vec<_>, _>>()?,
                    _ => {
                        return Err(SmtError::Parse {
                            line,
                            col,
                            expected: "parameter sort list".into(),
                        })
                    }
                };
                let ret = parse_sort(
                    items.get(3).ok_or(SmtError::Parse {
                        line,
                        col,
                        expected: "result sort".into(),
                    })?,
                    &env,
                )?;
                if params.is_empty() {
                    // 0-ary function is just a constant.
                    env.consts.insert(name.clone(), ret.clone());
                    script.declarations.push((name, ret));
                } else {
                    env.funs.insert(name.clone(), (params.clone(), ret.clone()));
                    script.fun_decls.push(FunDecl { name, params, ret });
                }
            }
            "assert" => {
                let body = items.get(1).ok_or(SmtError::Parse {
                    line,
                    col,
                    expected: "assertion term".into(),
                })?;
                let path = format!("assertion {}", script.assertions.len());
                let term = convert_term(body, &mut env, &path)?;
                match term.sort() {
                    Some(Sort::Bool) | None => {}
                    Some(Sort::Opaque(_)) => {}
                    Some(other) => {
                        return Err(SmtError::Sort {
                            path,
                            msg: format!("assertion must be Bool, found {other}"),
                        })
                    }
                }
                script.assertions.push(term);
            }
            "check-sat" => script.has_check_sat = true,
            "push" | "pop" => {
                return Err(SmtError::Parse {
                    line,
                    col,
                    expected: format!("supported command (`{head}` is not accepted)"),
                })
            }
            other => {
                return Err(SmtError::Parse {
                    line,
                    col,
                    expected: format!("supported command, found `{other}`"),
                })
            }
        }
    }
    Ok(script)
}

fn expect_atom(
    expr: Option<&SExpr>,
    line: usize,
    col: usize,
    what: &str,
) -> Result<String, SmtError> {
    match expr {
        Some(SExpr::Atom { text, .. }) => Ok(text.clone()),
        Some(other) => {
            let (l, c) = other.pos();
            Err(SmtError::Parse {
                line: l,
                col: c,
                expected: what.into(),
            })
        }
        None => Err(SmtError::Parse {
            line,
            col,
            expected: what.into(),
        }),
    }
}

fn parse_sort(expr: &SExpr, env: &Env) -> Result<Sort, SmtError> {
    match expr {
        SExpr::Atom { text, .. } => match text.as_str() {
            "Bool" => Ok(Sort::Bool),
            "Int" => Ok(Sort::Int),
            other => {
                // Real, declared sorts, and anything else are opaque.
                let _ = env;
                Ok(Sort::Opaque(other.to_string()))
            }
        },
        SExpr::List { items, line, col } => {
            if let [SExpr::Atom { text: u, .. }, SExpr::Atom { text: bv, .. }, SExpr::Atom { text: w, .. }] =
                items.as_slice()
            {
                if u == "_" && bv == "BitVec" {
                    let width: u32 = w.parse().map_err(|_| SmtError::Parse {
                        line: *line,
                        col: *col,
                        expected: "bit-vector width numeral".into(),
                    })?;
                    if width == 0 {
                        return Err(SmtError::Sort {
                            path: format!("{line}:{col}"),
                            msg: "bit-vector width must be >= 1".into(),
                        });
                    }
                    return Ok(Sort::BitVec(width));
                }
            }
            Ok(Sort::Opaque(expr.canonical()))
        }
    }
}

fn sorts_compatible(a: &Option<Sort>, b: &Option<Sort>) -> bool {
    match (a, b) {
        (Some(Sort::Opaque(_)), _) | (_, Some(Sort::Opaque(_))) | (None, _) | (_, None) => true,
        (Some(x), Some(y)) => x == y,
    }
}

fn expect_bool(t: &Term, path: &str) -> Result<(), SmtError> {
    match t.sort() {
        Some(Sort::Bool) | None => Ok(()),
        Some(Sort::Opaque(_)) => Ok(()),
        Some(other) => Err(SmtError::Sort {
            path: path.into(),
            msg: format!("expected Bool operand, found {other}"),
        }),
    }
}

fn expect_int(t: &Term, path: &str) -> Result<(), SmtError> {
    match t.sort() {
        Some(Sort::Int) | None => Ok(()),
        Some(Sort::Opaque(_)) => Ok(()),
        Some(other) => Err(SmtError::Sort {
            path: path.into(),
            msg: format!("expected Int operand, found {other}"),
        }),
    }
}

fn expect_bitvec_family(args: &[Term], path: &str) -> Result<(), SmtError> {
    let mut width: Option<u32> = None;
    for a in args {
        match a.sort() {
            Some(Sort::BitVec(w)) => match width {
                None => width = Some(w),
                Some(prev) if prev == w => {}
                Some(prev) => {
                    return Err(SmtError::Sort {
                        path: path.into(),
                        msg: format!("bit-vector width mismatch: {prev} vs {w}"),
                    })
                }
            },
            Some(Sort::Opaque(_)) | None => {}
            Some(other) => {
                return Err(SmtError::Sort {
                    path: path.into(),
                    msg: format!("expected bit-vector operand, found {other}"),
                })
            }
        }
    }
    Ok(())
}

fn convert_term(expr: &SExpr, env: &mut Env, path: &str) -> Result<Term, SmtError> {
    match expr {
        SExpr::Atom { text, line, col } => convert_atom(text, env, path, *line, *col),
        SExpr::List { items, line, col } => {
            if items.is_empty() {
                return Err(SmtError::Parse {
                    line: *line,
                    col: *col,
                    expected: "operator".into(),
                });
            }
            // Indexed bit-vector literal: (_ bvN width).
            if let [SExpr::Atom { text: u, .. }, SExpr::Atom { text: bv, .. }, SExpr::Atom { text: w, .. }] =
                items.as_slice()
            {
                if u == "_" && bv.starts_with("bv") {
                    if let (Ok(value), Ok(width)) = (bv[2..].parse::<u64>(), w.parse::<u32>()) {
                        if width >= 1 && width <= 64 {
                            let masked = if width == 64 {
                                value
                            } else {
                                value & ((1u64 << width) - 1)
                            };
                            return Ok(Term::BitVec {
                                width,
                                value: masked,
                            });
                        }
                    }
                }
            }
            let head = match &items[0] {
                SExpr::Atom { text, .. } => text.clone(),
                SExpr::List { .. } => {
                    // e.g. ((_ extract 3 0) x) — outside the fragment.
                    return Ok(Term::Opaque {
                        text: expr.canonical(),
                    });
                }
            };
            convert_application(&head, &items[1..], expr, env, path)
        }
    }
}

fn convert_atom(
    text: &str,
    env: &Env,
    path: &str,
    line: usize,
    col: usize,
) -> Result<Term, SmtError> {
    match text {
        "true" => return Ok(Term::True),
        "false" => return Ok(Term::False),
        _ => {}
    }
    if let Some(hex) = text.strip_prefix("#x") {
        let width = (hex.len() as u32) * 4;
        let value = u64::from_str_radix(hex, 16).map_err(|_| SmtError::Parse {
            line,
            col,
            expected: "hexadecimal literal".into(),
        })?;
        if width > 64 {
            return Ok(Term::Opaque { text: text.into() });
        }
        return Ok(Term::BitVec { width, value });
    }
    if let Some(bin) = text.strip_prefix("#b") {
        let width = bin.len() as u32;
        let value = u64::from_str_radix(bin, 2).map_err(|_| SmtError::Parse {
            line,
            col,
            expected: "binary literal".into(),
        })?;
        if width > 64 {
            return Ok(Term::Opaque { text: text.into() });
        }
        return Ok(Term::BitVec { width, value });
    }
    if text.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        return match text.parse::<i64>() {
            Ok(n) => Ok(Term::Int(n)),
            Err(_) => {
                if text.chars().all(|c| c.is_ascii_digit()) {
                    Err(SmtError::Parse {
                        line,
                        col,
                        expected: "integer literal within i64 range".into(),
                    })
                } else {
                    // Decimals and other numeric forms are opaque.
                    Ok(Term::Opaque { text: text.into() })
                }
            }
        };
    }
    match env.lookup_var(text) {
        Some(sort) => Ok(Term::Var {
            name: text.to_string(),
            sort,
        }),
        None => Err(SmtError::Sort {
            path: path.into(),
            msg: format!("undeclared variable `{text}` at {line}:{col}"),
        }),
    }
}

fn convert_args(
    args: &[SExpr],
    env: &mut Env,
    path: &str,
    op: &str,
) -> Result<Vec<Term>, SmtError> {
    args.iter()
        .enumerate()
        .map(|(i, a)| convert_term(a, env, &format!("{path}, argument {i} of ({op} ...)")))
        .collect()
}

fn convert_application(
    head: &str,
    args: &[SExpr],
    whole: &SExpr,
    env: &mut Env,
    path: &str,
) -> Result<Term, SmtError> {
    let (line, col) = whole.pos();
    let arity_err = |expected: &str| SmtError::Parse {
        line,
        col,
        expected: expected.to_string(),
    };
    match head {
        "not" => {
            let mut ts = convert_args(args, env, path, head)?;
            if ts.len() != 1 {
                return Err(arity_err("exactly one argument to `not`"));
            }
            expect_bool(&ts[0], path)?;
            Ok(Term::not(ts.remove(0)))
        }
        "and" | "or" => {
            let ts = convert_args(args, env, path, head)?;
            if ts.is_empty() {
                return Err(arity_err("at least one argument"));
            }
            for t in &ts {
                expect_bool(t, path)?;
            }
            Ok(if head == "and" {
                Term::And(ts)
            } else {
                Term::Or(ts)
            })
        }
        "=>" => {
            let ts = convert_args(args, env, path, head)?;
            if ts.len() < 2 {
                return Err(arity_err("at least two arguments to `=>`"));
            }
            for t in &ts {
                expect_bool(t, path)?;
            }
            // Right-associative chain.
            let mut iter = ts.into_iter().rev();
            let mut acc = iter.next().unwrap();
            for t in iter {
                acc = Term::implies(t, acc);
            }
            Ok(acc)
        }
        "ite" => {
            let mut ts = convert_args(args, env, path, head)?;
            if ts.len() != 3 {
                return Err(arity_err("exactly three arguments to `ite`"));
            }
            expect_bool(&ts[0], path)?;
            let e = ts.pop().unwrap();
            let t = ts.pop().unwrap();
            let c = ts.pop().unwrap();
            if !sorts_compatible(&t.sort(), &e.sort()) {
                return Err(SmtError::Sort {
                    path: path.into(),
                    msg: "ite branches have different sorts".into(),
                });
            }
            Ok(Term::Ite(Box::new(c), Box::new(t), Box::new(e)))
        }
        "=" => {
            let ts = convert_args(args, env, path, head)?;
            if ts.len() < 2 {
                return Err(arity_err("at least two arguments to `=`"));
            }
            let mut pairs = Vec::new();
            for pair in ts.windows(2) {
                let (a, b) = (&pair[0], &pair[1]);
                if !sorts_compatible(&a.sort(), &b.sort()) {
                    return Err(SmtError::Sort {
                        path: path.into(),
                        msg: format!(
                            "`=` operands have different sorts: {} vs {}",
                            a.sort().map(|s| s.to_string()).unwrap_or("?".into()),
                            b.sort().map(|s| s.to_string()).unwrap_or("?".into())
                        ),
                    });
                }
                let both_bool = matches!(a.sort(), Some(Sort::Bool))
                    && matches!(b.sort(), Some(Sort::Bool));
                pairs.push(if both_bool {
                    Term::iff(a.clone(), b.clone())
                } else {
                    Term::eq(a.clone(), b.clone())
                });
            }
            Ok(if pairs.len() == 1 {
                pairs.remove(0)
            } else {
                Term::And(pairs)
            })
        }
        "<" | "<=" | ">" | ">=" => {
            let op = match head {
                "<" => CmpOp::Lt,
                "<=" => CmpOp::Le,
                ">" => CmpOp::Gt,
                _ => CmpOp::Ge,
            };
            let ts = convert_args(args, env, path, head)?;
            if ts.len() < 2 {
                return Err(arity_err("at least two arguments to comparison"));
            }
            // Comparisons over non-Int theories (e.g. Real) stay opaque.
            if ts
                .iter()
                .any(|t| matches!(t.sort(), Some(Sort::Opaque(_)) | None))
            {
                return Ok(Term::Opaque {
                    text: whole.canonical(),
                });
            }
            for t in &ts {
                expect_int(t, path)?;
            }
            let mut pairs = Vec::new();
            for pair in ts.windows(2) {
                pairs.push(Term::cmp(op, pair[0].clone(), pair[1].clone()));
            }
            Ok(if pairs.len() == 1 {
                pairs.remove(0)
            } else {
                Term::And(pairs)
            })
        }
        "+" | "-" | "*" => {
            let op = match head {
                "+" => ArithOp::Add,
                "-" => ArithOp::Sub,
                _ => ArithOp::Mul,
            };
            let ts = convert_args(args, env, path, head)?;
            if ts.is_empty() {
                return Err(arity_err("at least one argument"));
            }
            if ts
                .iter()
                .any(|t| matches!(t.sort(), Some(Sort::Opaque(_)) | None))
            {
                return Ok(Term::Opaque {
                    text: whole.canonical(),
                });
            }
            for t in &ts {
                expect_int(t, path)?;
            }
            // Fold unary minus on a literal into a negative constant.
            if op == ArithOp::Sub && ts.len() == 1 {
                if let Term::Int(n) = ts[0] {
                    return Ok(Term::Int(-n));
                }
            }
            Ok(Term::Arith(op, ts))
        }
        "bvnot" => {
            let ts = convert_args(args, env, path, head)?;
            if ts.len() != 1 {
                return Err(arity_err("exactly one argument to `bvnot`"));
            }
            expect_bitvec_family(&ts, path)?;
            Ok(Term::Bv(BvOp::Not, ts))
        }
        "bvand" | "bvor" | "bvxor" | "bvadd" | "bvshl" | "bvlshr" => {
            let op = match head {
                "bvand" => BvOp::And,
                "bvor" => BvOp::Or,
                "bvxor" => BvOp::Xor,
                "bvadd" => BvOp::Add,
                "bvshl" => BvOp::Shl,
                _ => BvOp::Lshr,
            };
            let ts = convert_args(args, env, path, head)?;
            let ok_arity = match op {
                BvOp::Shl | BvOp::Lshr => ts.len() == 2,
                _ => ts.len() >= 2,
            };
            if !ok_arity {
                return Err(arity_err("matching argument count for bit-vector operator"));
            }
            expect_bitvec_family(&ts, path)?;
            Ok(Term::Bv(op, ts))
        }
        "forall" | "exists" => {
            let quantifier = if head == "forall" {
                Quantifier::Forall
            } else {
                Quantifier::Exists
            };
            let bindings = match args.first() {
                Some(SExpr::List { items, .. }) => items,
                _ => return Err(arity_err("quantifier binding list")),
            };
            let body_expr = args.get(1).ok_or_else(|| arity_err("quantifier body"))?;
            let mut bound = Vec::new();
            for b in bindings {
                match b {
                    SExpr::List { items, .. } if items.len() == 2 => {
                        let name = expect_atom(Some(&items[0]), line, col, "bound variable name")?;
                        let sort = parse_sort(&items[1], env)?;
                        bound.push((name, sort));
                    }
                    other => {
                        let (l, c) = other.pos();
                        return Err(SmtError::Parse {
                            line: l,
                            col: c,
                            expected: "(name Sort) binding".into(),
                        });
                    }
                }
            }
            let depth = env.bound.len();
            env.bound.extend(bound.iter().cloned());
            let body = convert_term(body_expr, env, &format!("{path}, {head} body"));
            env.bound.truncate(depth);
            let body = body?;
            expect_bool(&body, path)?;
            Ok(Term::Quant {
                quantifier,
                bound,
                body: Box::new(body),
            })
        }
        _ => {
            // Declared uninterpreted function?
            if let Some((params, ret)) = env.funs.get(head).cloned() {
                let ts = convert_args(args, env, path, head)?;
                if ts.len() != params.len() {
                    return Err(SmtError::Sort {
                        path: path.into(),
                        msg: format!(
                            "`{head}` expects {} arguments, found {}",
                            params.len(),
                            ts.len()
                        ),
                    });
                }
                for (t, p) in ts.iter().zip(&params) {
                    if !sorts_compatible(&t.sort(), &Some(p.clone())) {
                        return Err(SmtError::Sort {
                            path: path.into(),
                            msg: format!("argument sort mismatch in `{head}` application"),
                        });
                    }
                }
                return Ok(Term::App {
                    name: head.to_string(),
                    args: ts,
                    sort: ret,
                });
            }
            // Anything else (let, xor, div, distinct, string ops, ...) is
            // retained verbatim as an opaque node.
            Ok(Term::Opaque {
                text: whole.canonical(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_bool_script() {
        let s = parse("(declare-const x Bool)(assert x)(check-sat)").unwrap();
        assert_eq!(s.declarations, vec![("x".to_string(), Sort::Bool)]);
        assert_eq!(
            s.assertions,
            vec![Term::var("x", Sort::Bool)]
        );
        assert!(s.has_check_sat);
    }

    #[test]
    fn undeclared_variable_is_an_error() {
        let err = parse("(assert (and a (not a)))").unwrap_err();
        match err {
            SmtError::Sort { msg, .. } => assert!(msg.contains("undeclared variable `a`")),
            other => panic!("expected sort error, got {other:?}"),
        }
    }

    #[test]
    fn parses_int_comparison() {
        let s = parse("(declare-const x Int)(assert (> x 0))(check-sat)").unwrap();
        assert_eq!(s.assertions.len(), 1);
        assert_eq!(
            s.assertions[0],
            Term::cmp(CmpOp::Gt, Term::var("x", Sort::Int), Term::Int(0))
        );
    }

    #[test]
    fn zero_ary_declare_fun_is_a_constant() {
        let s = parse("(declare-fun p () Bool)(assert p)").unwrap();
        assert_eq!(s.declarations, vec![("p".to_string(), Sort::Bool)]);
        assert!(s.fun_decls.is_empty());
    }

    #[test]
    fn nary_declare_fun_yields_app_nodes() {
        let s = parse("(declare-fun f (Int) Bool)(declare-const x Int)(assert (f x))").unwrap();
        assert_eq!(s.fun_decls.len(), 1);
        match &s.assertions[0] {
            Term::App { name, args, sort } => {
                assert_eq!(name, "f");
                assert_eq!(args.len(), 1);
                assert_eq!(*sort, Sort::Bool);
            }
            other => panic!("expected app, got {other:?}"),
        }
        assert!(s.contains_opaque());
    }

    #[test]
    fn push_pop_rejected() {
        assert!(matches!(
            parse("(push 1)"),
            Err(SmtError::Parse { .. })
        ));
        assert!(matches!(parse("(pop 1)"), Err(SmtError::Parse { .. })));
    }

    #[test]
    fn unknown_forms_become_opaque() {
        let s = parse(
            "(declare-const x Int)(assert (= (mod x 2) 0))",
        )
        .unwrap();
        assert!(s.contains_opaque());
        match &s.assertions[0] {
            Term::Eq(lhs, _) => match lhs.as_ref() {
                Term::Opaque { text } => assert_eq!(text, "(mod x 2)"),
                other => panic!("expected opaque, got {other:?}"),
            },
            other => panic!("expected eq, got {other:?}"),
        }
    }

    #[test]
    fn real_sort_is_opaque() {
        let s = parse("(declare-const r Real)(assert (> r 0))").unwrap();
        assert_eq!(s.declarations[0].1, Sort::Opaque("Real".into()));
        assert!(s.contains_opaque());
    }

    #[test]
    fn quantifier_binds_and_shadows() {
        let s = parse(
            "(declare-const y Int)(assert (forall ((y Int)) (>= y y)))",
        )
        .unwrap();
        assert!(s.contains_quantifier());
        let mut free = Vec::new();
        s.assertions[0].free_vars(&mut free);
        assert!(free.is_empty(), "bound y must not leak: {free:?}");
    }

    #[test]
    fn ill_sorted_operands_rejected() {
        let err = parse("(declare-const x Int)(assert (and x x))").unwrap_err();
        assert!(matches!(err, SmtError::Sort { .. }));
        let err = parse("(declare-const b Bool)(assert (> b 1))").unwrap_err();
        assert!(matches!(err, SmtError::Sort { .. }));
    }

    #[test]
    fn bitvec_literals_and_indexed_form() {
        let s = parse(
            "(declare-const v (_ BitVec 4))(assert (= v #b0011))(assert (= v (_ bv3 4)))",
        )
        .unwrap();
        assert_eq!(s.assertions[0], s.assertions[1]);
    }

    #[test]
    fn equal_on_bools_is_iff() {
        let s = parse("(declare-const a Bool)(declare-const b Bool)(assert (= a b))").unwrap();
        assert!(matches!(s.assertions[0], Term::Iff(_, _)));
    }

    #[test]
    fn unary_minus_literal_folds() {
        let s = parse("(declare-const x Int)(assert (= x (- 5)))").unwrap();
        assert_eq!(
            s.assertions[0],
            Term::eq(Term::var("x", Sort::Int), Term::Int(-5))
        );
    }
}
