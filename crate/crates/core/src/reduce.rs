//! β- and η-reduction, βη-normal forms and βη-equality.
//!
//! Normalization runs β to normal form first and then η-contracts to
//! exhaustion. One contraction of either kind costs one step of [`Fuel`].

use thiserror::Error;

use crate::term::{instantiate, shift, Term, TermView};

pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("fuel exhausted after {0} reduction steps")]
    FuelExhausted(u64),
}

/// Upper bound on the number of reduction steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fuel {
    max_steps: u64,
}

impl Fuel {
    /// `max_steps` of zero is bumped to one.
    pub fn new(max_steps: u64) -> Fuel {
        Fuel {
            max_steps: max_steps.max(1),
        }
    }

    pub fn max_steps(&self) -> u64 {
        self.max_steps
    }
}

impl Default for Fuel {
    fn default() -> Fuel {
        Fuel::new(DEFAULT_FUEL)
    }
}

/// β-reduction order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Normal order.
    #[default]
    LeftmostOutermost,
    /// Arguments first, right to left. Terminates on typable terms only.
    RightmostInnermost,
}

/// A normal form together with the number of steps it took.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub term: Term,
    pub beta_steps: u64,
    pub eta_steps: u64,
}

impl Normalized {
    pub fn steps(&self) -> u64 {
        self.beta_steps + self.eta_steps
    }
}

/// Contracts the leftmost-outermost β-redex, or returns `None` when `t` is
/// β-normal.
pub fn beta_step(t: &Term) -> Option<Term> {
    match t.view() {
        TermView::Var(_) => None,
        TermView::Lam(b) => beta_step(b).map(Term::lam),
        TermView::App(f, a) => {
            if let Some(body) = f.as_lam() {
                return Some(instantiate(body, a));
            }
            if let Some(f2) = beta_step(f) {
                return Some(Term::app(f2, a.clone()));
            }
            beta_step(a).map(|a2| Term::app(f.clone(), a2))
        }
    }
}

pub fn has_beta_redex(t: &Term) -> bool {
    match t.view() {
        TermView::Var(_) => false,
        TermView::Lam(b) => has_beta_redex(b),
        TermView::App(f, a) => f.as_lam().is_some() || has_beta_redex(f) || has_beta_redex(a),
    }
}

pub fn has_eta_redex(t: &Term) -> bool {
    match t.view() {
        TermView::Var(_) => false,
        TermView::Lam(b) => eta_redex_body(b).is_some() || has_eta_redex(b),
        TermView::App(f, a) => has_eta_redex(f) || has_eta_redex(a),
    }
}

/// For a body `M 0` with index 0 not free in `M`, returns `M`.
fn eta_redex_body(body: &Term) -> Option<&Term> {
    let (m, arg) = body.as_app()?;
    match arg.view() {
        TermView::Var(0) if !m.has_free(0) => Some(m),
        _ => None,
    }
}

struct Reducer {
    limit: u64,
    beta: u64,
    eta: u64,
}

impl Reducer {
    fn new(fuel: Fuel) -> Reducer {
        Reducer {
            limit: fuel.max_steps(),
            beta: 0,
            eta: 0,
        }
    }

    fn tick_beta(&mut self) -> Result<(), ReduceError> {
        self.beta += 1;
        self.check()
    }

    fn tick_eta(&mut self) -> Result<(), ReduceError> {
        self.eta += 1;
        self.check()
    }

    fn check(&self) -> Result<(), ReduceError> {
        let used = self.beta + self.eta;
        if used > self.limit {
            Err(ReduceError::FuelExhausted(self.limit))
        } else {
            Ok(())
        }
    }

    /// Normal-order β-normalization: reduce the head redex until the head is
    /// a variable or an unapplied abstraction, then normalize the arguments
    /// left to right. This contracts redexes in leftmost-outermost order
    /// without rescanning from the root after every step.
    fn beta_outermost(&mut self, t: &Term) -> Result<Term, ReduceError> {
        let mut head = t.clone();
        // pending arguments; the last element is the next one to apply
        let mut args: Vec<Term> = Vec::new();
        loop {
            let next = match head.view() {
                TermView::App(f, a) => {
                    args.push(a.clone());
                    f.clone()
                }
                TermView::Lam(body) if !args.is_empty() => {
                    self.tick_beta()?;
                    let arg = args.pop().expect("nonempty");
                    instantiate(body, &arg)
                }
                _ => break,
            };
            head = next;
        }
        if let TermView::Lam(body) = head.view() {
            return Ok(Term::lam(self.beta_outermost(body)?));
        }
        let mut out = head;
        while let Some(a) = args.pop() {
            out = Term::app(out, self.beta_outermost(&a)?);
        }
        Ok(out)
    }

    fn beta_innermost(&mut self, t: &Term) -> Result<Term, ReduceError> {
        match t.view() {
            TermView::Var(_) => Ok(t.clone()),
            TermView::Lam(b) => Ok(Term::lam(self.beta_innermost(b)?)),
            TermView::App(f, a) => {
                let a = self.beta_innermost(a)?;
                let f = self.beta_innermost(f)?;
                match f.view() {
                    TermView::Lam(body) => {
                        self.tick_beta()?;
                        let reduct = instantiate(body, &a);
                        self.beta_innermost(&reduct)
                    }
                    _ => Ok(Term::app(f, a)),
                }
            }
        }
    }

    /// Bottom-up η-contraction to exhaustion.
    fn eta(&mut self, t: &Term) -> Result<Term, ReduceError> {
        match t.view() {
            TermView::Var(_) => Ok(t.clone()),
            TermView::App(f, a) => Ok(Term::app(self.eta(f)?, self.eta(a)?)),
            TermView::Lam(b) => {
                let b = self.eta(b)?;
                if let Some(m) = eta_redex_body(&b) {
                    debug_assert!(!m.has_free(0));
                    self.tick_eta()?;
                    Ok(shift(m, -1, 0).expect("index 0 is not free in an η-redex"))
                } else {
                    Ok(Term::lam(b))
                }
            }
        }
    }

    fn beta(&mut self, t: &Term, strategy: Strategy) -> Result<Term, ReduceError> {
        match strategy {
            Strategy::LeftmostOutermost => self.beta_outermost(t),
            Strategy::RightmostInnermost => self.beta_innermost(t),
        }
    }
}

/// β-normal form by the given strategy (no η).
pub fn beta_normal_form_with(
    t: &Term,
    fuel: Fuel,
    strategy: Strategy,
) -> Result<Normalized, ReduceError> {
    let mut r = Reducer::new(fuel);
    let term = r.beta(t, strategy)?;
    Ok(Normalized {
        term,
        beta_steps: r.beta,
        eta_steps: 0,
    })
}

pub fn beta_normal_form(t: &Term, fuel: Fuel) -> Result<Term, ReduceError> {
    beta_normal_form_with(t, fuel, Strategy::LeftmostOutermost).map(|n| n.term)
}

/// βη-normal form by the given β strategy, with step counts.
pub fn normalize(t: &Term, fuel: Fuel, strategy: Strategy) -> Result<Normalized, ReduceError> {
    let mut r = Reducer::new(fuel);
    let mut term = r.beta(t, strategy)?;
    loop {
        term = r.eta(&term)?;
        // η after full β cannot create a β-redex; the loop only guards it
        if !has_beta_redex(&term) {
            break;
        }
        term = r.beta(&term, strategy)?;
    }
    Ok(Normalized {
        term,
        beta_steps: r.beta,
        eta_steps: r.eta,
    })
}

/// βη-normal form using leftmost-outermost β.
pub fn betaeta_normal_form(t: &Term, fuel: Fuel) -> Result<Term, ReduceError> {
    normalize(t, fuel, Strategy::LeftmostOutermost).map(|n| n.term)
}

/// Structural equality of βη-normal forms. Each side gets the full fuel.
pub fn betaeta_equal(a: &Term, b: &Term, fuel: Fuel) -> Result<bool, ReduceError> {
    Ok(betaeta_normal_form(a, fuel)? == betaeta_normal_form(b, fuel)?)
}
