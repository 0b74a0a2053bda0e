//! λ-terms with named variables, converted to de Bruijn form.
//!
//! The parser produces these, and the compiler uses them to assemble its
//! gadgets with readable variable names. Already-built closed terms can be
//! spliced in with [`Named::Closed`].

use crate::term::{Term, TermView};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Named {
    Var(String),
    Lam(String, Box<Named>),
    App(Box<Named>, Box<Named>),
    /// A closed de Bruijn term, inserted verbatim.
    Closed(Term),
}

impl Named {
    pub fn var(name: impl Into<String>) -> Named {
        Named::Var(name.into())
    }

    /// Nested abstractions over `names`, outermost first.
    pub fn lams<I, S>(names: I, body: Named) -> Named
    where
        I: IntoIterator<Item = S>,
        I::IntoIter: DoubleEndedIterator,
        S: Into<String>,
    {
        names
            .into_iter()
            .rev()
            .fold(body, |b, n| Named::Lam(n.into(), Box::new(b)))
    }

    pub fn app(fun: Named, arg: Named) -> Named {
        Named::App(Box::new(fun), Box::new(arg))
    }

    pub fn apps<I: IntoIterator<Item = Named>>(fun: Named, args: I) -> Named {
        args.into_iter().fold(fun, Named::app)
    }

    /// Converts to de Bruijn form. Free names are looked up in `free`, whose
    /// last element is index 0 at the top level. The error carries the first
    /// name bound nowhere.
    pub fn to_term_with(&self, free: &[String]) -> Result<Term, String> {
        let mut scope: Vec<&str> = free.iter().map(String::as_str).collect();
        self.convert(&mut scope)
    }

    /// Converts a closed named term; the error carries the first unbound name.
    pub fn to_term(&self) -> Result<Term, String> {
        self.to_term_with(&[])
    }

    fn convert<'a>(&'a self, scope: &mut Vec<&'a str>) -> Result<Term, String> {
        match self {
            Named::Var(name) => scope
                .iter()
                .rev()
                .position(|n| n == name)
                .map(|i| Term::var(i as u32))
                .ok_or_else(|| name.clone()),
            Named::Lam(name, body) => {
                scope.push(name);
                let b = body.convert(scope);
                scope.pop();
                Ok(Term::lam(b?))
            }
            Named::App(f, a) => Ok(Term::app(f.convert(scope)?, a.convert(scope)?)),
            Named::Closed(t) => Ok(t.clone()),
        }
    }

    /// Free names, in order of first occurrence.
    pub fn free_names(&self) -> Vec<String> {
        fn go<'a>(t: &'a Named, bound: &mut Vec<&'a str>, out: &mut Vec<String>) {
            match t {
                Named::Var(n) => {
                    if !bound.contains(&n.as_str()) && !out.contains(n) {
                        out.push(n.clone());
                    }
                }
                Named::Lam(n, b) => {
                    bound.push(n);
                    go(b, bound, out);
                    bound.pop();
                }
                Named::App(f, a) => {
                    go(f, bound, out);
                    go(a, bound, out);
                }
                Named::Closed(_) => {}
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }
}

/// Whether bound variable `i` (relative to `t`'s root) occurs in head
/// position somewhere, i.e. is applied to an argument. Used to pick
/// readable names.
pub(crate) fn used_as_function(t: &Term, i: u32) -> bool {
    match t.view() {
        TermView::Var(_) => false,
        TermView::Lam(b) => used_as_function(b, i + 1),
        TermView::App(f, a) => {
            let mut head = f;
            while let TermView::App(g, _) = head.view() {
                head = g;
            }
            matches!(head.view(), TermView::Var(j) if *j == i)
                || used_as_function(f, i)
                || used_as_function(a, i)
        }
    }
}
