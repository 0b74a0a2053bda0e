//! De Bruijn–indexed λ-terms.
//!
//! Terms are immutable and reference counted, so subterms are shared freely
//! between a term and its reducts. Every node caches the number of free
//! index levels below it, which lets shifting and substitution skip closed
//! subtrees entirely.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// A de Bruijn index.
pub type Index = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("shifting index {index} by {by} would make it negative")]
    NegativeIndex { index: Index, by: i64 },
}

/// A λ-term. Cheap to clone.
#[derive(Clone)]
pub struct Term(Arc<Node>);

struct Node {
    view: TermView,
    /// One more than the largest free index, or 0 when closed.
    free: u32,
    size: usize,
}

/// The public view of a term's root.
#[derive(Clone, PartialEq, Eq)]
pub enum TermView {
    Var(Index),
    Lam(Term),
    App(Term, Term),
}

impl Term {
    pub fn var(index: Index) -> Term {
        Term(Arc::new(Node {
            view: TermView::Var(index),
            free: index + 1,
            size: 1,
        }))
    }

    pub fn lam(body: Term) -> Term {
        let free = body.0.free.saturating_sub(1);
        let size = body.0.size + 1;
        Term(Arc::new(Node {
            view: TermView::Lam(body),
            free,
            size,
        }))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        let free = fun.0.free.max(arg.0.free);
        let size = fun.0.size + arg.0.size + 1;
        Term(Arc::new(Node {
            view: TermView::App(fun, arg),
            free,
            size,
        }))
    }

    /// `n` nested abstractions around `body`.
    pub fn lams(n: usize, body: Term) -> Term {
        (0..n).fold(body, |t, _| Term::lam(t))
    }

    /// Left-nested application `fun a1 a2 ... an`.
    pub fn apps<I: IntoIterator<Item = Term>>(fun: Term, args: I) -> Term {
        args.into_iter().fold(fun, Term::app)
    }

    pub fn view(&self) -> &TermView {
        &self.0.view
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn is_closed(&self) -> bool {
        self.0.free == 0
    }

    /// One more than the largest free index (0 for closed terms).
    pub fn free_bound(&self) -> u32 {
        self.0.free
    }

    /// Whether index `i` occurs free.
    pub fn has_free(&self, i: Index) -> bool {
        if self.0.free <= i {
            return false;
        }
        match self.view() {
            TermView::Var(j) => *j == i,
            TermView::Lam(b) => b.has_free(i + 1),
            TermView::App(f, a) => f.has_free(i) || a.has_free(i),
        }
    }

    pub fn as_lam(&self) -> Option<&Term> {
        match self.view() {
            TermView::Lam(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_app(&self) -> Option<(&Term, &Term)> {
        match self.view() {
            TermView::App(f, a) => Some((f, a)),
            _ => None,
        }
    }

    fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        self.ptr_eq(other)
            || (self.0.size == other.0.size
                && self.0.free == other.0.free
                && self.0.view == other.0.view)
    }
}

impl Eq for Term {}

impl fmt::Display for Term {
    /// Raw de Bruijn notation, e.g. `λ.λ.1 (1 0)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.view() {
            TermView::Var(i) => write!(f, "{i}"),
            TermView::Lam(b) => write!(f, "λ.{b}"),
            TermView::App(fun, arg) => {
                match fun.view() {
                    TermView::Lam(_) => write!(f, "({fun})")?,
                    _ => write!(f, "{fun}")?,
                }
                match arg.view() {
                    TermView::Var(_) => write!(f, " {arg}"),
                    _ => write!(f, " ({arg})"),
                }
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Adjusts every free index `>= cutoff` by `by`.
pub fn shift(t: &Term, by: i64, cutoff: Index) -> Result<Term, TermError> {
    if t.0.free <= cutoff || by == 0 {
        return Ok(t.clone());
    }
    Ok(match t.view() {
        TermView::Var(i) => {
            let moved = *i as i64 + by;
            if moved < 0 {
                return Err(TermError::NegativeIndex { index: *i, by });
            }
            Term::var(moved as Index)
        }
        TermView::Lam(b) => Term::lam(shift(b, by, cutoff + 1)?),
        TermView::App(f, a) => Term::app(shift(f, by, cutoff)?, shift(a, by, cutoff)?),
    })
}

/// Non-negative shift; cannot fail.
pub(crate) fn shift_up(t: &Term, by: u32, cutoff: Index) -> Term {
    if t.0.free <= cutoff || by == 0 {
        return t.clone();
    }
    match t.view() {
        TermView::Var(i) => Term::var(i + by),
        TermView::Lam(b) => Term::lam(shift_up(b, by, cutoff + 1)),
        TermView::App(f, a) => Term::app(shift_up(f, by, cutoff), shift_up(a, by, cutoff)),
    }
}

/// Capture-avoiding replacement of free index `j` in `t` by `s`.
pub fn substitute(t: &Term, j: Index, s: &Term) -> Term {
    fn go(t: &Term, j: Index, s: &Term, depth: u32) -> Term {
        if t.0.free <= j + depth {
            return t.clone();
        }
        match t.view() {
            TermView::Var(i) if *i == j + depth => shift_up(s, depth, 0),
            TermView::Var(_) => t.clone(),
            TermView::Lam(b) => Term::lam(go(b, j, s, depth + 1)),
            TermView::App(f, a) => Term::app(go(f, j, s, depth), go(a, j, s, depth)),
        }
    }
    go(t, j, s, 0)
}

/// Contracts the redex `(λ.body) arg`: substitutes `arg` for index 0 of
/// `body` and lowers the remaining free indices by one.
pub fn instantiate(body: &Term, arg: &Term) -> Term {
    fn go(t: &Term, arg: &Term, depth: u32) -> Term {
        if t.0.free <= depth {
            return t.clone();
        }
        match t.view() {
            TermView::Var(i) if *i == depth => shift_up(arg, depth, 0),
            TermView::Var(i) => Term::var(i - 1),
            TermView::Lam(b) => Term::lam(go(b, arg, depth + 1)),
            TermView::App(f, a) => Term::app(go(f, arg, depth), go(a, arg, depth)),
        }
    }
    go(body, arg, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: Index) -> Term {
        Term::var(i)
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift(&v(0), 1, 0).unwrap(), v(1));
        assert_eq!(shift(&Term::lam(v(0)), 1, 0).unwrap(), Term::lam(v(0)));
        assert_eq!(shift(&Term::lam(v(1)), 2, 0).unwrap(), Term::lam(v(3)));
    }

    #[test]
    fn shift_negative_is_an_error() {
        assert_eq!(
            shift(&v(0), -1, 0),
            Err(TermError::NegativeIndex { index: 0, by: -1 })
        );
        assert_eq!(shift(&v(2), -1, 0).unwrap(), v(1));
        // below the cutoff nothing moves
        assert_eq!(shift(&v(0), -1, 1).unwrap(), v(0));
    }

    #[test]
    fn substitute_examples() {
        let id = Term::lam(v(0));
        assert_eq!(substitute(&v(0), 0, &id), id);
        assert_eq!(
            substitute(&Term::app(v(0), v(1)), 0, &id),
            Term::app(id.clone(), v(1))
        );
        assert_eq!(substitute(&Term::lam(v(1)), 0, &v(0)), Term::lam(v(1)));
    }

    #[test]
    fn instantiate_lowers_outer_indices() {
        // (λ. 0 1) applied to λ.0 gives (λ.0) 0
        let body = Term::app(v(0), v(1));
        let r = instantiate(&body, &Term::lam(v(0)));
        assert_eq!(r, Term::app(Term::lam(v(0)), v(0)));
        // under a binder the argument's free variables are shifted
        let body = Term::lam(Term::app(v(1), v(0)));
        assert_eq!(instantiate(&body, &v(3)), Term::lam(Term::app(v(4), v(0))));
    }

    #[test]
    fn cached_metadata() {
        let t = Term::lam(Term::app(v(0), v(2)));
        assert_eq!(t.free_bound(), 2);
        assert!(!t.is_closed());
        assert!(t.has_free(1));
        assert!(!t.has_free(0));
        assert_eq!(t.size(), 4);
        assert!(Term::lams(2, Term::app(v(1), v(0))).is_closed());
    }

    #[test]
    fn display_is_de_bruijn() {
        let two = Term::lams(2, Term::app(v(1), Term::app(v(1), v(0))));
        assert_eq!(two.to_string(), "λ.λ.1 (1 0)");
    }
}
