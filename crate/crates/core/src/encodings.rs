//! Church numerals, tuples and the arithmetic combinators.

use std::sync::OnceLock;

use thiserror::Error;

use crate::reduce::{betaeta_normal_form, Fuel, ReduceError};
use crate::term::{shift_up, Term, TermView};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("projection index {index} out of range for a tuple of width {width}")]
    IndexOutOfRange { index: usize, width: usize },
    #[error("tuple width {width} does not match {len} elements")]
    WidthMismatch { width: usize, len: usize },
    #[error("tuple width must be positive")]
    EmptyTuple,
}

/// `λf.λx.f (f (... x))` with `n` applications of `f`.
pub fn church(n: u64) -> Term {
    let mut body = Term::var(0);
    for _ in 0..n {
        body = Term::app(Term::var(1), body);
    }
    Term::lams(2, body)
}

/// A natural number with its Church encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Numeral {
    value: u64,
    term: Term,
}

impl Numeral {
    pub fn new(value: u64) -> Numeral {
        Numeral {
            value,
            term: church(value),
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn term(&self) -> &Term {
        &self.term
    }
}

/// Reads a numeral off a term that is syntactically `λ.λ.1 (1 (... 0))`,
/// without any reduction.
pub fn syntactic_numeral(t: &Term) -> Option<u64> {
    let inner = t.as_lam()?.as_lam()?;
    count_iterates(inner)
}

fn count_iterates(t: &Term) -> Option<u64> {
    let mut n = 0;
    let mut cur = t;
    loop {
        match cur.view() {
            TermView::Var(0) => return Some(n),
            TermView::App(f, a) if matches!(f.view(), TermView::Var(1)) => {
                n += 1;
                cur = a;
            }
            _ => return None,
        }
    }
}

/// Reads a numeral off a βη-normal form. The η-normal form of `church(1)` is
/// the identity `λ.0`, which is read as 1.
pub fn numeral_of_normal_form(t: &Term) -> Option<u64> {
    let body = t.as_lam()?;
    if matches!(body.view(), TermView::Var(0)) {
        return Some(1);
    }
    match syntactic_numeral(t) {
        Some(1) => None, // λ.λ.1 0 is not η-normal
        other => other,
    }
}

/// βη-normalizes `t` and decodes the result as a numeral.
pub fn decode_numeral(t: &Term, fuel: Fuel) -> Result<Option<u64>, ReduceError> {
    Ok(numeral_of_normal_form(&betaeta_normal_form(t, fuel)?))
}

/// Elements of a tuple `λp.p M1 ... Ms`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleSpec {
    elements: Vec<Term>,
}

impl TupleSpec {
    pub fn new(elements: Vec<Term>) -> Result<TupleSpec, EncodingError> {
        if elements.is_empty() {
            return Err(EncodingError::EmptyTuple);
        }
        Ok(TupleSpec { elements })
    }

    /// Checks the declared width against the element count.
    pub fn with_width(width: usize, elements: Vec<Term>) -> Result<TupleSpec, EncodingError> {
        if width != elements.len() {
            return Err(EncodingError::WidthMismatch {
                width,
                len: elements.len(),
            });
        }
        TupleSpec::new(elements)
    }

    pub fn width(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Term] {
        &self.elements
    }
}

/// `λp.p M1 ... Ms`; free variables of the elements are shifted past `p`.
pub fn tuple(spec: &TupleSpec) -> Term {
    let body = Term::apps(
        Term::var(0),
        spec.elements.iter().map(|m| shift_up(m, 1, 0)),
    );
    Term::lam(body)
}

/// The selector `λx1 ... xs. xi`.
pub fn selector(i: usize, s: usize) -> Result<Term, EncodingError> {
    if i == 0 || i > s {
        return Err(EncodingError::IndexOutOfRange { index: i, width: s });
    }
    Ok(Term::lams(s, Term::var((s - i) as u32)))
}

/// `p (λx1 ... xs. xi)`.
pub fn proj(i: usize, s: usize, p: &Term) -> Result<Term, EncodingError> {
    Ok(Term::app(p.clone(), selector(i, s)?))
}

/// The closed combinators for successor, addition, multiplication and
/// `ifzero`.
#[derive(Debug, Clone)]
pub struct Combinators {
    /// `λn.λfx.f (n f x)`
    pub succ: Term,
    /// `λnm.λfx.n f (m f x)`
    pub add: Term,
    /// `λnm.λfx.n (m f) x`
    pub mul: Term,
    /// `λnmp.λfx.n (λy.p f x) (m f x)`
    pub ifzero: Term,
}

pub fn combinators() -> &'static Combinators {
    static CELL: OnceLock<Combinators> = OnceLock::new();
    CELL.get_or_init(|| {
        let v = Term::var;
        let app = Term::apps;
        // succ: λn.λf.λx. f (n f x)   n=2 f=1 x=0
        let succ = Term::lams(3, Term::app(v(1), app(v(2), [v(1), v(0)])));
        // add: λn.λm.λf.λx. n f (m f x)   n=3 m=2 f=1 x=0
        let add = Term::lams(4, app(v(3), [v(1), app(v(2), [v(1), v(0)])]));
        // mul: λn.λm.λf.λx. n (m f) x
        let mul = Term::lams(4, app(v(3), [Term::app(v(2), v(1)), v(0)]));
        // ifzero: λn.λm.λp.λf.λx. n (λy. p f x) (m f x)   n=4 m=3 p=2 f=1 x=0
        // under λy: p=3 f=2 x=1
        let ifzero = Term::lams(
            5,
            app(
                v(4),
                [
                    Term::lam(app(v(3), [v(2), v(1)])),
                    app(v(3), [v(1), v(0)]),
                ],
            ),
        );
        Combinators {
            succ,
            add,
            mul,
            ifzero,
        }
    })
}
