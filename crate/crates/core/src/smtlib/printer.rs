//! Canonical printer: lowercase keywords, one command per line, hexadecimal
//! bit-vector literals where the width allows.

use std::fmt::Write;

use super::{ArithOp, Script, Term};

/// Prints a script in canonical form. `parse(print(s))` is structurally
/// equal to `s`.
pub fn print(s: &Script) -> String {
    let mut out = String::new();
    if let Some(logic) = &s.logic {
        let _ = writeln!(out, "(set-logic {logic})");
    }
    for (name, arity) in &s.sort_decls {
        if *arity == 0 {
            let _ = writeln!(out, "(declare-sort {name} 0)");
        } else {
            let _ = writeln!(out, "(declare-sort {name} {arity})");
        }
    }
    for (name, sort) in &s.declarations {
        let _ = writeln!(out, "(declare-const {name} {sort})");
    }
    for fun in &s.fun_decls {
        let params: Vec<String> = fun.params.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(
            out,
            "(declare-fun {} ({}) {})",
            fun.name,
            params.join(" "),
            fun.ret
        );
    }
    for a in &s.assertions {
        let _ = writeln!(out, "(assert {})", print_term(a));
    }
    if s.has_check_sat {
        out.push_str("(check-sat)\n");
    }
    out
}

pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(&mut out, t);
    out
}

fn write_term(out: &mut String, t: &Term) {
    match t {
        Term::True => out.push_str("true"),
        Term::False => out.push_str("false"),
        Term::Int(n) => {
            if *n < 0 {
                let _ = write!(out, "(- {})", n.unsigned_abs());
            } else {
                let _ = write!(out, "{n}");
            }
        }
        Term::BitVec { width, value } => {
            if width % 4 == 0 {
                let _ = write!(out, "#x{:0>1$x}", value, (*width as usize) / 4);
            } else {
                let _ = write!(out, "#b{:0>1$b}", value, *width as usize);
            }
        }
        Term::Var { name, .. } => out.push_str(name),
        Term::Not(a) => write_app(out, "not", std::slice::from_ref(a.as_ref())),
        Term::And(xs) => write_app(out, "and", xs),
        Term::Or(xs) => write_app(out, "or", xs),
        Term::Implies(a, b) => write_app2(out, "=>", a, b),
        Term::Iff(a, b) => write_app2(out, "=", a, b),
        Term::Eq(a, b) => write_app2(out, "=", a, b),
        Term::Ite(c, t2, e) => {
            out.push_str("(ite ");
            write_term(out, c);
            out.push(' ');
            write_term(out, t2);
            out.push(' ');
            write_term(out, e);
            out.push(')');
        }
        Term::Cmp(op, a, b) => write_app2(out, op.symbol(), a, b),
        Term::Arith(op, xs) => {
            // A stored unary minus must print back as negation, not
            // subtraction of nothing.
            if *op == ArithOp::Sub && xs.len() == 1 {
                write_app(out, "-", xs);
            } else {
                write_app(out, op.symbol(), xs);
            }
        }
        Term::Bv(op, xs) => write_app(out, op.symbol(), xs),
        Term::Quant {
            quantifier,
            bound,
            body,
        } => {
            let _ = write!(out, "({} (", quantifier.symbol());
            for (i, (name, sort)) in bound.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "({name} {sort})");
            }
            out.push_str(") ");
            write_term(out, body);
            out.push(')');
        }
        Term::App { name, args, .. } => write_app(out, name, args),
        Term::Opaque { text } => out.push_str(text),
    }
}

fn write_app(out: &mut String, op: &str, args: &[Term]) {
    out.push('(');
    out.push_str(op);
    for a in args {
        out.push(' ');
        write_term(out, a);
    }
    out.push(')');
}

fn write_app2(out: &mut String, op: &str, a: &Term, b: &Term) {
    out.push('(');
    out.push_str(op);
    out.push(' ');
    write_term(out, a);
    out.push(' ');
    write_term(out, b);
    out.push(')');
}

#[cfg(test)]
mod tests {
    use super::super::{parse, Sort};
    use super::*;

    #[test]
    fn canonical_form_of_assert_false() {
        let mut s = Script::new();
        s.assert_term(Term::False);
        s.has_check_sat = true;
        assert_eq!(print(&s), "(assert false)\n(check-sat)\n");
    }

    #[test]
    fn bitvec_eight_prints_hex() {
        let mut s = Script::new();
        s.declare("v", Sort::BitVec(8));
        s.assert_term(Term::eq(
            Term::var("v", Sort::BitVec(8)),
            Term::BitVec { width: 8, value: 3 },
        ));
        assert!(print(&s).contains("#x03"));
    }

    #[test]
    fn bitvec_odd_width_prints_binary() {
        assert_eq!(
            print_term(&Term::BitVec { width: 5, value: 6 }),
            "#b00110"
        );
    }

    #[test]
    fn round_trips_structurally() {
        let sources = [
            "(declare-const x Bool)(assert x)(check-sat)",
            "(set-logic QF_LIA)(declare-const x Int)(declare-const y Int)(assert (> x 0))(assert (= y (- 3)))(check-sat)",
            "(declare-const a Bool)(declare-const b Bool)(assert (not (= (not (and a b)) (or (not a) (not b)))))(check-sat)",
            "(declare-const v (_ BitVec 4))(assert (= (bvshl v #x1) #x6))(check-sat)",
            "(declare-const y Int)(assert (forall ((z Int)) (=> (<= z 0) (< y z))))",
            "(declare-fun f (Int Int) Bool)(declare-const x Int)(assert (f x 2))",
            "(declare-sort S 0)(declare-const s S)(assert (my-pred s))",
        ];
        for src in sources {
            let once = parse(src).unwrap();
            let twice = parse(&print(&once)).unwrap();
            assert_eq!(once, twice, "round-trip failed for {src}");
        }
    }

    #[test]
    fn negative_int_round_trips() {
        let s = parse("(declare-const x Int)(assert (= x (- 7)))").unwrap();
        let printed = print(&s);
        assert!(printed.contains("(- 7)"));
        assert_eq!(parse(&printed).unwrap(), s);
    }
}
