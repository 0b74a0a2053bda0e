//! Compiles expressions into closed λ-terms that represent them strictly:
//! all arguments and the result are Church numerals of the same type
//! `ω_τ` with `τ = tau_s(s)`, the type of an `s`-tuple of numerals.
//!
//! Each case lifts the matching combinator over the argument vector, with
//! every numeral argument replaced by the compiled subexpression. The two
//! selectors need tuple gadgets:
//!
//! * the mod-selector iterates a rotation of the first `l` tuple slots,
//!   starting from a tuple holding the (η-expanded) branches;
//! * the threshold selector iterates a shift-and-successor step on a tuple
//!   of numerals to compute `max(m - l, 0)`, then branches with `ifzero`
//!   at the base type.

use rayon::prelude::*;
use thiserror::Error;

use crate::encodings::{church, combinators, selector};
use crate::gexpr::{GExpr, GExprError, GFunction};
use crate::named::Named;
use crate::reduce::{betaeta_normal_form, normalize, Fuel, ReduceError, Strategy};
use crate::encodings::numeral_of_normal_form;
use crate::term::Term;
use crate::types::{check_type_detailed, omega, tau_s, SimpleType, TypeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("width {width} is below the minimum width {min}")]
    WidthTooSmall { width: usize, min: usize },
}

/// Smallest tuple width a compilation can use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct WidthConstraint {
    pub s_min: usize,
}

/// `l` for each mod-selector, `l + 1` for each threshold selector, at least 1.
pub fn min_width(e: &GExpr) -> WidthConstraint {
    let own = match e {
        GExpr::ModSelect { l, .. } => *l,
        GExpr::LeqSelect { l, .. } => l + 1,
        _ => 1,
    };
    let s_min = e
        .children()
        .into_iter()
        .map(|c| min_width(c).s_min)
        .fold(own, usize::max);
    WidthConstraint { s_min }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledFunction {
    term: Term,
    arity: usize,
    width: usize,
    claimed_type: SimpleType,
}

impl CompiledFunction {
    pub fn term(&self) -> &Term {
        &self.term
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// `ω_τ -> ... -> ω_τ` with `arity + 1` occurrences.
    pub fn claimed_type(&self) -> &SimpleType {
        &self.claimed_type
    }

    /// The term applied to the Church numerals of `args`.
    pub fn apply(&self, args: &[u64]) -> Term {
        Term::apps(self.term.clone(), args.iter().map(|&n| church(n)))
    }

    /// A well-typed but wrong variant: the result is incremented. Used to
    /// check that verification actually rejects things.
    pub fn corrupted(&self) -> CompiledFunction {
        let k = self.arity as u32;
        let args = (0..k).rev().map(Term::var);
        let body = Term::app(
            combinators().succ.clone(),
            Term::apps(self.term.clone(), args),
        );
        CompiledFunction {
            term: Term::lams(self.arity, body),
            ..self.clone()
        }
    }
}

pub fn strict_type(arity: usize, width: usize) -> SimpleType {
    let w = omega(&tau_s(width));
    SimpleType::arrows(std::iter::repeat_n(w.clone(), arity), w)
}

struct Builder {
    width: usize,
    counter: usize,
    args: Vec<String>,
}

impl Builder {
    fn fresh(&mut self, base: &str) -> String {
        self.counter += 1;
        format!("{base}.{}", self.counter)
    }

    fn fresh_vars(&mut self, bases: &[&str]) -> Vec<String> {
        bases.iter().map(|b| self.fresh(b)).collect()
    }

    fn tuple(&mut self, elements: Vec<Named>) -> Named {
        let p = self.fresh("p");
        Named::Lam(p.clone(), Box::new(Named::apps(Named::var(p), elements)))
    }

    /// A numeral-typed term for `e` with the arguments `n1 .. nk` free.
    fn body(&mut self, e: &GExpr) -> Named {
        let s = self.width;
        match e {
            GExpr::Zero => Named::Closed(church(0)),
            GExpr::One => Named::Closed(church(1)),
            GExpr::Proj(i) => Named::var(&self.args[i - 1]),
            GExpr::Add(a, b) => {
                let (a, b) = (self.body(a), self.body(b));
                let v = self.fresh_vars(&["f", "x"]);
                let (f, x) = (Named::var(&v[0]), Named::var(&v[1]));
                let inner = Named::apps(b, [f.clone(), x]);
                Named::lams(v, Named::apps(a, [f, inner]))
            }
            GExpr::Mul(a, b) => {
                let (a, b) = (self.body(a), self.body(b));
                let v = self.fresh_vars(&["f", "x"]);
                let (f, x) = (Named::var(&v[0]), Named::var(&v[1]));
                Named::lams(v, Named::apps(a, [Named::app(b, f), x]))
            }
            GExpr::IfZero(g, h1, h2) => {
                let (g, h1, h2) = (self.body(g), self.body(h1), self.body(h2));
                let v = self.fresh_vars(&["f", "x"]);
                let (f, x) = (Named::var(&v[0]), Named::var(&v[1]));
                let t = self.fresh("y");
                let nonzero = Named::Lam(t, Box::new(Named::apps(h2, [f.clone(), x.clone()])));
                let zero = Named::apps(h1, [f, x]);
                Named::lams(v, Named::apps(g, [nonzero, zero]))
            }
            GExpr::ModSelect {
                l,
                selector: g,
                branches,
            } => {
                let l = *l;
                let g = self.body(g);
                let hs: Vec<Named> = branches.iter().map(|h| self.body(h)).collect();
                let v = self.fresh_vars(&["f", "x", "a"]);
                let vars: Vec<Named> = v.iter().map(Named::var).collect();
                // M_i = h_i f x a; X = x a
                let mut ms: Vec<Named> = hs
                    .into_iter()
                    .map(|h| Named::apps(h, vars.iter().cloned()))
                    .collect();
                ms.rotate_left(1);
                let padding = Named::app(vars[1].clone(), vars[2].clone());
                ms.extend(std::iter::repeat_n(padding, s - l));
                let init = self.tuple(ms);
                let iterated = Named::apps(g, [Named::Closed(rotation(l, s)), init]);
                let picked = Named::app(iterated, Named::Closed(sel(l, s)));
                Named::lams(v, picked)
            }
            GExpr::LeqSelect {
                l,
                selector: g,
                low,
                high,
            } => {
                let g = self.body(g);
                let (low, high) = (self.body(low), self.body(high));
                let v = self.fresh_vars(&["f", "x", "a", "b", "c"]);
                let vars: Vec<Named> = v.iter().map(Named::var).collect();
                let cond = Named::app(Named::Closed(truncated_sub(*l, s)), g);
                let t = self.fresh("y");
                let nonzero = Named::Lam(t, Box::new(Named::apps(high, vars.iter().cloned())));
                let zero = Named::apps(low, vars.iter().cloned());
                Named::lams(v, Named::apps(cond, [nonzero, zero]))
            }
        }
    }
}

fn sel(i: usize, s: usize) -> Term {
    selector(i, s).expect("selector index checked by the caller")
}

/// `λp.⟨Π2 p, ..., Πl p, Π1 p, Π(l+1) p, ..., Πs p⟩`
fn rotation(l: usize, s: usize) -> Term {
    let p = Named::var("p");
    let pi = |i: usize| Named::app(p.clone(), Named::Closed(sel(i, s)));
    let order = (2..=l).chain([1]).chain(l + 1..=s);
    let elements: Vec<Named> = order.map(pi).collect();
    let tuple = Named::Lam(
        "q".into(),
        Box::new(Named::apps(Named::var("q"), elements)),
    );
    Named::Lam("p".into(), Box::new(tuple))
        .to_term()
        .expect("closed")
}

/// `λp.⟨Π2 p, ..., Πs p, succ (Πs p)⟩`
fn shift_succ(s: usize) -> Term {
    let p = Named::var("p");
    let pi = |i: usize| Named::app(p.clone(), Named::Closed(sel(i, s)));
    let mut elements: Vec<Named> = (2..=s).map(pi).collect();
    elements.push(Named::app(Named::Closed(combinators().succ.clone()), pi(s)));
    let tuple = Named::Lam(
        "q".into(),
        Box::new(Named::apps(Named::var("q"), elements)),
    );
    Named::Lam("p".into(), Box::new(tuple))
        .to_term()
        .expect("closed")
}

/// `λm.Π(s-l) (m F ⟨0, ..., 0⟩)` with `F` the shift-and-successor step.
fn truncated_sub(l: usize, s: usize) -> Term {
    let zeros = Named::Lam(
        "q".into(),
        Box::new(Named::apps(
            Named::var("q"),
            std::iter::repeat_n(Named::Closed(church(0)), s),
        )),
    );
    let iterated = Named::apps(Named::var("m"), [Named::Closed(shift_succ(s)), zeros]);
    let body = Named::app(iterated, Named::Closed(sel(s - l, s)));
    Named::Lam("m".into(), Box::new(body))
        .to_term()
        .expect("closed")
}

/// The closed term computing `max(m - l, 0)` on numerals, using tuples of
/// width `s`. Its argument is a numeral over the type of an `s`-tuple of
/// numerals, its result a numeral over `o`.
pub fn gadget_truncsub(l: usize, s: usize) -> Result<Term, CompileError> {
    if s < l + 1 {
        return Err(CompileError::WidthTooSmall {
            width: s,
            min: l + 1,
        });
    }
    Ok(truncated_sub(l, s))
}

/// The rotation step used by mod-selectors, exposed for inspection.
pub fn gadget_rotation(l: usize, s: usize) -> Result<Term, CompileError> {
    if l < 1 || s < l {
        return Err(CompileError::WidthTooSmall { width: s, min: l.max(1) });
    }
    Ok(rotation(l, s))
}

/// Compiles `f` at tuple width `width`.
pub fn compile(f: &GFunction, width: usize) -> Result<CompiledFunction, CompileError> {
    let min = min_width(f.expr()).s_min;
    if width < min {
        return Err(CompileError::WidthTooSmall { width, min });
    }
    let args: Vec<String> = (1..=f.arity()).map(|i| format!("n{i}")).collect();
    let mut b = Builder {
        width,
        counter: 0,
        args: args.clone(),
    };
    let body = b.body(f.expr());
    let term = Named::lams(args, body)
        .to_term()
        .expect("compiled terms are closed");
    Ok(CompiledFunction {
        term,
        arity: f.arity(),
        width,
        claimed_type: strict_type(f.arity(), width),
    })
}

/// Outcome for one argument vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputOutcome {
    pub args: Vec<u64>,
    pub expected: Option<u64>,
    /// The decoded normal form, when it is a numeral.
    pub actual: Option<u64>,
    pub steps: u64,
    pub pass: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub type_check: Result<(), TypeError>,
    /// In input order.
    pub outcomes: Vec<InputOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.type_check.is_ok() && self.outcomes.iter().all(|o| o.pass)
    }

    pub fn pass_count(&self) -> usize {
        self.outcomes.iter().filter(|o| o.pass).count()
    }
}

fn check_input(c: &CompiledFunction, f: &GFunction, args: &[u64], fuel: Fuel) -> InputOutcome {
    let mut out = InputOutcome {
        args: args.to_vec(),
        expected: None,
        actual: None,
        steps: 0,
        pass: false,
        error: None,
    };
    let expected = match f.eval(args) {
        Ok(v) => v,
        Err(e) => {
            out.error = Some(e.to_string());
            return out;
        }
    };
    out.expected = Some(expected);
    let result = normalize(&c.apply(args), fuel, Strategy::LeftmostOutermost).and_then(|n| {
        let want = betaeta_normal_form(&church(expected), fuel)?;
        Ok::<_, ReduceError>((n, want))
    });
    match result {
        Ok((n, want)) => {
            out.steps = n.steps();
            out.actual = numeral_of_normal_form(&n.term);
            out.pass = n.term == want;
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}

/// Checks the claimed type and that `c` applied to each argument vector is
/// βη-equal to the numeral of the oracle value.
pub fn verify(
    c: &CompiledFunction,
    f: &GFunction,
    inputs: &[Vec<u64>],
    fuel: Fuel,
) -> VerificationReport {
    let type_check = check_type_detailed(&c.term, &c.claimed_type);
    let outcomes = inputs
        .par_iter()
        .map(|args| {
            if args.len() != c.arity {
                let e = GExprError::ArityMismatch {
                    expected: c.arity,
                    got: args.len(),
                };
                return InputOutcome {
                    args: args.clone(),
                    expected: None,
                    actual: None,
                    steps: 0,
                    pass: false,
                    error: Some(e.to_string()),
                };
            }
            check_input(c, f, args, fuel)
        })
        .collect();
    VerificationReport {
        type_check,
        outcomes,
    }
}

/// All vectors of length `arity` with entries in `0..=max`, in
/// lexicographic order.
pub fn all_inputs(arity: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=max).map(move |n| {
                    let mut v = prefix.clone();
                    v.push(n);
                    v
                })
            })
            .collect();
    }
    out
}
