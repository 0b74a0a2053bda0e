//! Concrete syntax for λ-terms, simple types and expressions.
//!
//! Terms: `\f x. f (f x)` (`λ` is accepted for `\`), application by
//! juxtaposition, parentheses. Types: `o`, right-associative `->`,
//! `w(T)` for `(T -> T) -> T -> T`, `tup(s)` for the `s`-tuple type, and
//! `?n` for type variables. Expressions: `0`, `1`, `x1`, `add(e, e)`,
//! `mul(e, e)`, `ifz(e, e, e)`, `modsel[l](e; e1, ..., el)`,
//! `leqsel[l](e; e, e)` and `inset[l,t;{finite};{residues}](e; e, e)`.

use std::fmt;

use thiserror::Error;

use crate::gexpr::{epset_select, EpSet, GExpr, GExprError, GFunction};
use crate::named::{used_as_function, Named};
use crate::term::{Term, TermView};
use crate::types::{omega, tau_s, SimpleType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error(transparent)]
    Invalid(#[from] GExprError),
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Cursor<'a> {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected `{c}`, found `{found}`")),
                None => self.error(format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_alphabetic() && c != 'λ' || c == '_' => {}
            _ => return None,
        }
        let end = chars
            .find(|(_, c)| !(c.is_alphanumeric() || *c == '_' || *c == '\''))
            .map_or(rest.len(), |(i, _)| i);
        self.pos += end;
        Some(&rest[..end])
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if end == 0 {
            return self.error("expected a number");
        }
        let n = rest[..end]
            .parse()
            .or_else(|_| self.error("number too large"))?;
        self.pos += end;
        Ok(n)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected `{c}`")),
        }
    }
}

// ---------------------------------------------------------------------------
// terms

fn parse_lambda(cur: &mut Cursor) -> Result<Named, ParseError> {
    let mut names = Vec::new();
    while let Some(name) = cur.ident() {
        names.push(name.to_string());
    }
    if names.is_empty() {
        return cur.error("expected a binder after `\\`");
    }
    cur.expect('.')?;
    let body = parse_named_term(cur)?;
    Ok(Named::lams(names, body))
}

fn at_lambda(cur: &mut Cursor) -> bool {
    cur.eat('\\') || cur.eat('λ')
}

fn parse_named_term(cur: &mut Cursor) -> Result<Named, ParseError> {
    if at_lambda(cur) {
        return parse_lambda(cur);
    }
    let mut head: Option<Named> = None;
    loop {
        let next = if at_lambda(cur) {
            // a trailing abstraction extends to the right
            let lam = parse_lambda(cur)?;
            head = Some(match head {
                Some(h) => Named::app(h, lam),
                None => lam,
            });
            break;
        } else if cur.eat('(') {
            let t = parse_named_term(cur)?;
            cur.expect(')')?;
            t
        } else if let Some(name) = cur.ident() {
            Named::var(name)
        } else {
            break;
        };
        head = Some(match head {
            Some(h) => Named::app(h, next),
            None => next,
        });
    }
    match head {
        Some(t) => Ok(t),
        None => match cur.peek() {
            Some(c) => cur.error(format!("expected a term, found `{c}`")),
            None => cur.error("expected a term, found end of input"),
        },
    }
}

/// Parses a term with named variables.
pub fn parse_named(src: &str) -> Result<Named, ParseError> {
    let mut cur = Cursor::new(src);
    let t = parse_named_term(&mut cur)?;
    cur.finish()?;
    Ok(t)
}

/// Parses a closed term.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    parse_named(src)?
        .to_term()
        .map_err(ParseError::UnboundVariable)
}

/// Parses a possibly open term. Free names get indices in order of first
/// occurrence, the first free name being the outermost.
pub fn parse_open_term(src: &str) -> Result<(Term, Vec<String>), ParseError> {
    let named = parse_named(src)?;
    let free = named.free_names();
    let term = named
        .to_term_with(&free)
        .map_err(ParseError::UnboundVariable)?;
    Ok((term, free))
}

const FUNCTION_NAMES: [&str; 4] = ["f", "g", "h", "k"];
const VALUE_NAMES: [&str; 6] = ["x", "y", "z", "a", "b", "c"];

fn pick_name(family: &[&str], scope: &[String]) -> String {
    (0..)
        .map(|i| {
            let base = family[i % family.len()];
            match i / family.len() {
                0 => base.to_string(),
                n => format!("{base}{n}"),
            }
        })
        .find(|n| !scope.contains(n))
        .expect("infinitely many candidates")
}

fn print_term_in(t: &Term, scope: &mut Vec<String>, out: &mut String) {
    match t.view() {
        TermView::Lam(_) => {
            out.push('\\');
            let mut cur = t;
            let mut bound = 0;
            while let TermView::Lam(body) = cur.view() {
                let family: &[&str] = if used_as_function(body, 0) {
                    &FUNCTION_NAMES
                } else {
                    &VALUE_NAMES
                };
                let name = pick_name(family, scope);
                if bound > 0 {
                    out.push(' ');
                }
                out.push_str(&name);
                scope.push(name);
                bound += 1;
                cur = body;
            }
            out.push_str(". ");
            print_term_in(cur, scope, out);
            scope.truncate(scope.len() - bound);
        }
        TermView::Var(i) => {
            let i = *i as usize;
            if i < scope.len() {
                out.push_str(&scope[scope.len() - 1 - i]);
            } else {
                out.push_str(&format!("v{}", i - scope.len()));
            }
        }
        TermView::App(_, _) => {
            let mut spine = Vec::new();
            let mut head = t;
            while let TermView::App(f, a) = head.view() {
                spine.push(a);
                head = f;
            }
            print_operand(head, matches!(head.view(), TermView::Lam(_)), scope, out);
            for a in spine.into_iter().rev() {
                out.push(' ');
                print_operand(a, !matches!(a.view(), TermView::Var(_)), scope, out);
            }
        }
    }
}

fn print_operand(t: &Term, parens: bool, scope: &mut Vec<String>, out: &mut String) {
    if parens {
        out.push('(');
        print_term_in(t, scope, out);
        out.push(')');
    } else {
        print_term_in(t, scope, out);
    }
}

/// Prints a term with generated names; free indices print as `v0`, `v1`, ...
/// relative to the top level.
pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    print_term_in(t, &mut Vec::new(), &mut out);
    out
}

/// Wrapper for `{}` formatting with named variables.
pub struct Pretty<'a>(pub &'a Term);

impl fmt::Display for Pretty<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self.0))
    }
}

// ---------------------------------------------------------------------------
// types

fn parse_type_in(cur: &mut Cursor) -> Result<SimpleType, ParseError> {
    let left = parse_type_atom(cur)?;
    if cur.eat_str("->") || cur.eat('→') {
        let right = parse_type_in(cur)?;
        Ok(SimpleType::arrow(left, right))
    } else {
        Ok(left)
    }
}

fn parse_type_atom(cur: &mut Cursor) -> Result<SimpleType, ParseError> {
    if cur.eat('(') {
        let t = parse_type_in(cur)?;
        cur.expect(')')?;
        return Ok(t);
    }
    if cur.eat('?') {
        let n = cur.number()?;
        return match u32::try_from(n) {
            Ok(v) => Ok(SimpleType::Var(v)),
            Err(_) => cur.error("type variable id too large"),
        };
    }
    let start = cur.pos;
    match cur.ident() {
        Some("o") => Ok(SimpleType::Base),
        Some("w") => {
            cur.expect('(')?;
            let t = parse_type_in(cur)?;
            cur.expect(')')?;
            Ok(omega(&t))
        }
        Some("tup") => {
            cur.expect('(')?;
            let s = cur.number()?;
            if s == 0 {
                return cur.error("tuple width must be positive");
            }
            cur.expect(')')?;
            Ok(tau_s(s as usize))
        }
        Some(other) => {
            cur.pos = start;
            cur.error(format!("unknown type `{other}`"))
        }
        None => cur.error("expected a type"),
    }
}

pub fn parse_type(src: &str) -> Result<SimpleType, ParseError> {
    let mut cur = Cursor::new(src);
    let t = parse_type_in(&mut cur)?;
    cur.finish()?;
    Ok(t)
}

/// Renders a type; the flag tells whether the text is an arrow at top level.
fn render_type(t: &SimpleType) -> (String, bool) {
    if let Some(s) = t.as_tuple_width() {
        return (format!("tup({s})"), false);
    }
    let abbreviated = |x: &SimpleType| x.as_omega().is_some() || x.as_tuple_width().is_some();
    if let Some(inner) = t.as_omega() {
        // w(A -> A) with abbreviated A reads better as w(A) -> w(A)
        let split = matches!(t, SimpleType::Arrow(a, _) if abbreviated(a));
        if !split {
            return (format!("w({})", render_type(inner).0), false);
        }
    }
    match t {
        SimpleType::Base => ("o".into(), false),
        SimpleType::Var(v) => (format!("?{v}"), false),
        SimpleType::Arrow(a, b) => {
            let (left, arrow) = render_type(a);
            let left = if arrow { format!("({left})") } else { left };
            (format!("{left} -> {}", render_type(b).0), true)
        }
    }
}

/// Prints a type, abbreviating `w(T)` and `tup(s)` where they apply.
pub fn print_type(t: &SimpleType) -> String {
    render_type(t).0
}

/// Prints a type without abbreviations.
pub fn print_type_expanded(t: &SimpleType) -> String {
    match t {
        SimpleType::Base => "o".into(),
        SimpleType::Var(v) => format!("?{v}"),
        SimpleType::Arrow(a, b) => {
            let left = match **a {
                SimpleType::Arrow(..) => format!("({})", print_type_expanded(a)),
                _ => print_type_expanded(a),
            };
            format!("{left} -> {}", print_type_expanded(b))
        }
    }
}

// ---------------------------------------------------------------------------
// expressions

fn parse_index(cur: &mut Cursor) -> Result<usize, ParseError> {
    cur.expect('[')?;
    let n = cur.number()?;
    cur.expect(']')?;
    Ok(n as usize)
}

fn parse_set_list(cur: &mut Cursor) -> Result<Vec<u64>, ParseError> {
    cur.expect('{')?;
    let mut out = Vec::new();
    if cur.eat('}') {
        return Ok(out);
    }
    loop {
        out.push(cur.number()?);
        if cur.eat('}') {
            return Ok(out);
        }
        cur.expect(',')?;
    }
}

fn parse_args(cur: &mut Cursor, n: usize) -> Result<Vec<GExpr>, ParseError> {
    cur.expect('(')?;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 {
            cur.expect(',')?;
        }
        out.push(parse_gexpr_in(cur)?);
    }
    cur.expect(')')?;
    Ok(out)
}

/// `(selector; b1, ..., bn)` with at least one branch.
fn parse_selector_args(cur: &mut Cursor) -> Result<(GExpr, Vec<GExpr>), ParseError> {
    cur.expect('(')?;
    let sel = parse_gexpr_in(cur)?;
    cur.expect(';')?;
    let mut branches = vec![parse_gexpr_in(cur)?];
    while cur.eat(',') {
        branches.push(parse_gexpr_in(cur)?);
    }
    cur.expect(')')?;
    Ok((sel, branches))
}

fn two_branches(cur: &Cursor, branches: Vec<GExpr>) -> Result<(GExpr, GExpr), ParseError> {
    let n = branches.len();
    let mut it = branches.into_iter();
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((a, b)),
        _ => cur.error(format!("expected two branches, found {n}")),
    }
}

fn parse_gexpr_in(cur: &mut Cursor) -> Result<GExpr, ParseError> {
    if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        return match cur.number()? {
            0 => Ok(GExpr::Zero),
            1 => Ok(GExpr::One),
            n => cur.error(format!("only the constants 0 and 1 exist, found {n}")),
        };
    }
    let start = cur.pos;
    let Some(word) = cur.ident() else {
        return cur.error("expected an expression");
    };
    match word {
        "add" | "mul" => {
            let mut a = parse_args(cur, 2)?.into_iter();
            let (x, y) = (a.next().unwrap(), a.next().unwrap());
            Ok(if word == "add" {
                GExpr::add(x, y)
            } else {
                GExpr::mul(x, y)
            })
        }
        "ifz" => {
            let mut a = parse_args(cur, 3)?.into_iter();
            Ok(GExpr::if_zero(
                a.next().unwrap(),
                a.next().unwrap(),
                a.next().unwrap(),
            ))
        }
        "modsel" => {
            let l = parse_index(cur)?;
            let (sel, branches) = parse_selector_args(cur)?;
            Ok(GExpr::mod_select(l, sel, branches))
        }
        "leqsel" => {
            let l = parse_index(cur)?;
            let (sel, branches) = parse_selector_args(cur)?;
            let (low, high) = two_branches(cur, branches)?;
            Ok(GExpr::leq_select(l, sel, low, high))
        }
        "inset" => {
            cur.expect('[')?;
            let l = cur.number()?;
            cur.expect(',')?;
            let t = cur.number()?;
            cur.expect(';')?;
            let finite = parse_set_list(cur)?;
            cur.expect(';')?;
            let residues = parse_set_list(cur)?;
            cur.expect(']')?;
            let set = EpSet::new(l, t, finite, residues)?;
            let (sel, branches) = parse_selector_args(cur)?;
            let (yes, no) = two_branches(cur, branches)?;
            Ok(epset_select(&set, &yes, &no, &sel))
        }
        w if w.starts_with('x') && w.len() > 1 && w[1..].bytes().all(|b| b.is_ascii_digit()) => {
            match w[1..].parse::<usize>() {
                Ok(i) if i >= 1 => Ok(GExpr::Proj(i)),
                _ => {
                    cur.pos = start;
                    cur.error("projections are numbered from x1")
                }
            }
        }
        other => {
            cur.pos = start;
            cur.error(format!("unknown expression `{other}`"))
        }
    }
}

/// Parses an expression without fixing its arity.
pub fn parse_gexpr(src: &str) -> Result<GExpr, ParseError> {
    let mut cur = Cursor::new(src);
    let e = parse_gexpr_in(&mut cur)?;
    cur.finish()?;
    Ok(e)
}

/// Parses and validates an expression. The arity defaults to the largest
/// projection index.
pub fn parse_gfunction(src: &str, arity: Option<usize>) -> Result<GFunction, ParseError> {
    let e = parse_gexpr(src)?;
    let arity = arity.unwrap_or_else(|| e.max_projection());
    Ok(GFunction::new(arity, e)?)
}

fn print_gexpr_in(e: &GExpr, out: &mut String) {
    let list = |items: &[&GExpr], out: &mut String| {
        for (i, c) in items.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            print_gexpr_in(c, out);
        }
    };
    match e {
        GExpr::Zero => out.push('0'),
        GExpr::One => out.push('1'),
        GExpr::Proj(i) => out.push_str(&format!("x{i}")),
        GExpr::Add(a, b) | GExpr::Mul(a, b) => {
            out.push_str(if matches!(e, GExpr::Add(..)) { "add(" } else { "mul(" });
            list(&[a, b], out);
            out.push(')');
        }
        GExpr::IfZero(g, a, b) => {
            out.push_str("ifz(");
            list(&[g, a, b], out);
            out.push(')');
        }
        GExpr::ModSelect {
            l,
            selector,
            branches,
        } => {
            out.push_str(&format!("modsel[{l}]("));
            print_gexpr_in(selector, out);
            out.push_str("; ");
            list(&branches.iter().collect::<Vec<_>>(), out);
            out.push(')');
        }
        GExpr::LeqSelect {
            l,
            selector,
            low,
            high,
        } => {
            out.push_str(&format!("leqsel[{l}]("));
            print_gexpr_in(selector, out);
            out.push_str("; ");
            list(&[low, high], out);
            out.push(')');
        }
    }
}

pub fn print_gexpr(e: &GExpr) -> String {
    let mut out = String::new();
    print_gexpr_in(e, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::{church, combinators};
    use crate::types::alpha;

    #[test]
    fn parses_church_two() {
        assert_eq!(parse_term(r"\f x. f (f x)").unwrap(), church(2));
        assert_eq!(parse_term("λf x. f (f x)").unwrap(), church(2));
        assert_eq!(parse_term(r"\f. \x. f (f x)").unwrap(), church(2));
    }

    #[test]
    fn parses_addition() {
        let t = parse_term(r"\n m.\f x. n f (m f x)").unwrap();
        assert_eq!(t, combinators().add);
    }

    #[test]
    fn unbound_variables() {
        assert_eq!(
            parse_term(r"\p. p a b"),
            Err(ParseError::UnboundVariable("a".into()))
        );
        let (t, free) = parse_open_term(r"\p. p a b").unwrap();
        assert_eq!(free, vec!["a", "b"]);
        assert_eq!(t.free_bound(), 2);
    }

    #[test]
    fn syntax_errors_have_positions() {
        assert!(matches!(parse_term(r"\. x"), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_term("(f x"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_term(""), Err(ParseError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_term("f )"), Err(ParseError::Syntax { pos: 2, .. })));
    }

    #[test]
    fn trailing_lambda_argument() {
        let t = parse_term(r"\n. n \y. y").unwrap();
        assert_eq!(t, Term::lam(Term::app(Term::var(0), Term::lam(Term::var(0)))));
    }

    #[test]
    fn prints_with_conventional_names() {
        assert_eq!(print_term(&church(2)), r"\f x. f (f x)");
        assert_eq!(print_term(&combinators().add), r"\f g x y. f x (g x y)");
        let k = parse_term(r"\x y. x").unwrap();
        assert_eq!(print_term(&k), r"\x y. x");
        let redex = parse_term(r"(\x. x) (\y. y)").unwrap();
        assert_eq!(print_term(&redex), r"(\x. x) (\x. x)");
    }

    #[test]
    fn printer_avoids_capture() {
        // names never shadow an enclosing binder
        let t = parse_term(r"\x. (\y. \z. y z x) x").unwrap();
        let printed = print_term(&t);
        assert_eq!(parse_term(&printed).unwrap(), t);
    }

    #[test]
    fn free_variables_print_positionally() {
        let (t, _) = parse_open_term("a b").unwrap();
        assert_eq!(print_term(&t), "v1 v0");
    }

    #[test]
    fn type_syntax() {
        let o = SimpleType::Base;
        assert_eq!(parse_type("o").unwrap(), o);
        assert_eq!(
            parse_type("o -> o -> o").unwrap(),
            SimpleType::arrow(o.clone(), SimpleType::arrow(o.clone(), o.clone()))
        );
        assert_eq!(parse_type("w(o)").unwrap(), alpha());
        assert_eq!(parse_type("(o -> o) -> o -> o").unwrap(), alpha());
        assert_eq!(parse_type("tup(3)").unwrap(), tau_s(3));
        assert_eq!(parse_type("?4 -> o").unwrap(), SimpleType::arrow(SimpleType::Var(4), o));
        assert!(parse_type("tup(0)").is_err());
        assert!(parse_type("p").is_err());
        assert!(parse_type("o ->").is_err());
    }

    #[test]
    fn type_printing() {
        assert_eq!(print_type(&alpha()), "w(o)");
        assert_eq!(print_type(&omega(&tau_s(2))), "w(tup(2))");
        let t = SimpleType::arrow(omega(&tau_s(2)), omega(&tau_s(2)));
        assert_eq!(print_type(&t), "w(tup(2)) -> w(tup(2))");
        let t = parse_type("(o -> o) -> o").unwrap();
        assert_eq!(print_type(&t), "(o -> o) -> o");
        assert_eq!(print_type_expanded(&alpha()), "(o -> o) -> o -> o");
        for src in ["o", "w(w(o))", "tup(1) -> o", "(?0 -> ?1) -> ?0", "w(o -> o)"] {
            let t = parse_type(src).unwrap();
            assert_eq!(parse_type(&print_type(&t)).unwrap(), t, "{src}");
            assert_eq!(parse_type(&print_type_expanded(&t)).unwrap(), t, "{src}");
        }
    }

    #[test]
    fn gexpr_syntax() {
        let e = parse_gexpr("modsel[2](x1; 0, 1)").unwrap();
        assert_eq!(e, GExpr::mod_select(2, GExpr::Proj(1), vec![GExpr::Zero, GExpr::One]));
        assert_eq!(print_gexpr(&e), "modsel[2](x1; 0, 1)");
        let e = parse_gexpr("leqsel[1](x1;x2,x3)").unwrap();
        assert_eq!(print_gexpr(&e), "leqsel[1](x1; x2, x3)");
        let e = parse_gexpr("ifz(add(x1, 1), mul(x2,x2), 0)").unwrap();
        assert_eq!(print_gexpr(&e), "ifz(add(x1, 1), mul(x2, x2), 0)");
    }

    #[test]
    fn gexpr_arity_and_validation() {
        let f = parse_gfunction("add(x1, x2)", None).unwrap();
        assert_eq!(f.arity(), 2);
        let f = parse_gfunction("1", Some(3)).unwrap();
        assert_eq!(f.arity(), 3);
        assert_eq!(
            parse_gfunction("x3", Some(2)),
            Err(ParseError::Invalid(GExprError::ProjectionOutOfRange { index: 3, arity: 2 }))
        );
        assert!(matches!(
            parse_gfunction("modsel[3](x1; 0, 1)", None),
            Err(ParseError::Invalid(GExprError::BadModSelect { .. }))
        ));
        assert!(parse_gexpr("2").is_err());
        assert!(parse_gexpr("x0").is_err());
        assert!(parse_gexpr("leqsel[1](x1; x2)").is_err());
        assert!(parse_gexpr("sub(x1, x2)").is_err());
    }

    #[test]
    fn inset_expands_to_selectors() {
        let f = parse_gfunction("inset[4,3;{};{1}](x1; x2, x3)", None).unwrap();
        for m in 0..20 {
            let want = if m >= 4 && m % 3 == 1 { 10 } else { 20 };
            assert_eq!(f.eval(&[m, 10, 20]), Ok(want));
        }
        assert_eq!(
            parse_gexpr("inset[0,0;{};{}](x1; x2, x3)"),
            Err(ParseError::Invalid(GExprError::DegenerateSet))
        );
    }
}
