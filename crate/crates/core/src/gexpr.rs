//! Expressions for the class of functions built from 0, 1, projections,
//! addition, multiplication, `ifzero`, the mod-selector and the threshold
//! selector under composition, with their arithmetic semantics.
//!
//! [`GFunction::eval`] is the reference oracle that compiled terms are
//! checked against.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GExprError {
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("projection x{index} out of range for arity {arity}")]
    ProjectionOutOfRange { index: usize, arity: usize },
    #[error("modsel[{l}] needs l >= 2 and exactly l branches, got {branches}")]
    BadModSelect { l: usize, branches: usize },
    #[error("leqsel threshold must be at least 1")]
    BadLeqSelect,
    #[error("arithmetic overflow")]
    Overflow,
    #[error("eventually periodic set has period 0")]
    DegenerateSet,
    #[error("set element {0} out of range")]
    BadSetElement(u64),
}

/// One node of an expression. Projections are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GExpr {
    Zero,
    One,
    Proj(usize),
    Add(Box<GExpr>, Box<GExpr>),
    Mul(Box<GExpr>, Box<GExpr>),
    /// `if g = 0 then h1 else h2`
    IfZero(Box<GExpr>, Box<GExpr>, Box<GExpr>),
    /// `h_j` with `j = (g mod l) + 1`
    ModSelect {
        l: usize,
        selector: Box<GExpr>,
        branches: Vec<GExpr>,
    },
    /// `if g <= l then low else high`
    LeqSelect {
        l: usize,
        selector: Box<GExpr>,
        low: Box<GExpr>,
        high: Box<GExpr>,
    },
}

impl GExpr {
    #[allow(clippy::should_implement_trait)]
    pub fn add(a: GExpr, b: GExpr) -> GExpr {
        GExpr::Add(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: GExpr, b: GExpr) -> GExpr {
        GExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn if_zero(g: GExpr, h1: GExpr, h2: GExpr) -> GExpr {
        GExpr::IfZero(Box::new(g), Box::new(h1), Box::new(h2))
    }

    pub fn mod_select(l: usize, selector: GExpr, branches: Vec<GExpr>) -> GExpr {
        GExpr::ModSelect {
            l,
            selector: Box::new(selector),
            branches,
        }
    }

    pub fn leq_select(l: usize, selector: GExpr, low: GExpr, high: GExpr) -> GExpr {
        GExpr::LeqSelect {
            l,
            selector: Box::new(selector),
            low: Box::new(low),
            high: Box::new(high),
        }
    }

    /// Direct children in left-to-right order.
    pub fn children(&self) -> Vec<&GExpr> {
        match self {
            GExpr::Zero | GExpr::One | GExpr::Proj(_) => vec![],
            GExpr::Add(a, b) | GExpr::Mul(a, b) => vec![a, b],
            GExpr::IfZero(g, a, b) => vec![g, a, b],
            GExpr::ModSelect {
                selector, branches, ..
            } => std::iter::once(&**selector).chain(branches.iter()).collect(),
            GExpr::LeqSelect {
                selector, low, high, ..
            } => vec![selector, low, high],
        }
    }

    /// Longest root-to-leaf path counted in nodes; a leaf has depth 1.
    pub fn depth(&self) -> usize {
        1 + self.children().into_iter().map(GExpr::depth).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(GExpr::size).sum::<usize>()
    }

    /// Largest projection index used, 0 if none.
    pub fn max_projection(&self) -> usize {
        match self {
            GExpr::Proj(i) => *i,
            _ => self
                .children()
                .into_iter()
                .map(GExpr::max_projection)
                .max()
                .unwrap_or(0),
        }
    }

    fn validate(&self, arity: usize) -> Result<(), GExprError> {
        match self {
            GExpr::Proj(i) if *i == 0 || *i > arity => {
                return Err(GExprError::ProjectionOutOfRange { index: *i, arity })
            }
            GExpr::ModSelect { l, branches, .. } if *l < 2 || branches.len() != *l => {
                return Err(GExprError::BadModSelect {
                    l: *l,
                    branches: branches.len(),
                })
            }
            GExpr::LeqSelect { l: 0, .. } => return Err(GExprError::BadLeqSelect),
            _ => {}
        }
        self.children()
            .into_iter()
            .try_for_each(|c| c.validate(arity))
    }

    fn eval_at(&self, args: &[u64]) -> Result<u64, GExprError> {
        Ok(match self {
            GExpr::Zero => 0,
            GExpr::One => 1,
            GExpr::Proj(i) => args[i - 1],
            GExpr::Add(a, b) => a
                .eval_at(args)?
                .checked_add(b.eval_at(args)?)
                .ok_or(GExprError::Overflow)?,
            GExpr::Mul(a, b) => a
                .eval_at(args)?
                .checked_mul(b.eval_at(args)?)
                .ok_or(GExprError::Overflow)?,
            GExpr::IfZero(g, h1, h2) => {
                if g.eval_at(args)? == 0 {
                    h1.eval_at(args)?
                } else {
                    h2.eval_at(args)?
                }
            }
            GExpr::ModSelect {
                l,
                selector,
                branches,
            } => {
                let j = selector.eval_at(args)? % *l as u64;
                branches[j as usize].eval_at(args)?
            }
            GExpr::LeqSelect {
                l,
                selector,
                low,
                high,
            } => {
                if selector.eval_at(args)? <= *l as u64 {
                    low.eval_at(args)?
                } else {
                    high.eval_at(args)?
                }
            }
        })
    }

    /// Replaces `Proj(i)` with `replacements[i - 1]`.
    fn substitute(&self, replacements: &[GExpr]) -> GExpr {
        let sub = |e: &GExpr| Box::new(e.substitute(replacements));
        match self {
            GExpr::Zero => GExpr::Zero,
            GExpr::One => GExpr::One,
            GExpr::Proj(i) => replacements[i - 1].clone(),
            GExpr::Add(a, b) => GExpr::Add(sub(a), sub(b)),
            GExpr::Mul(a, b) => GExpr::Mul(sub(a), sub(b)),
            GExpr::IfZero(g, a, b) => GExpr::IfZero(sub(g), sub(a), sub(b)),
            GExpr::ModSelect {
                l,
                selector,
                branches,
            } => GExpr::ModSelect {
                l: *l,
                selector: sub(selector),
                branches: branches.iter().map(|b| b.substitute(replacements)).collect(),
            },
            GExpr::LeqSelect {
                l,
                selector,
                low,
                high,
            } => GExpr::LeqSelect {
                l: *l,
                selector: sub(selector),
                low: sub(low),
                high: sub(high),
            },
        }
    }
}

impl fmt::Display for GExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_gexpr(self))
    }
}

/// An expression together with its arity `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GFunction {
    arity: usize,
    expr: GExpr,
}

impl GFunction {
    pub fn new(arity: usize, expr: GExpr) -> Result<GFunction, GExprError> {
        expr.validate(arity)?;
        Ok(GFunction { arity, expr })
    }

    /// Uses the largest projection index as the arity.
    pub fn infer_arity(expr: GExpr) -> Result<GFunction, GExprError> {
        GFunction::new(expr.max_projection(), expr)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn expr(&self) -> &GExpr {
        &self.expr
    }

    pub fn into_expr(self) -> GExpr {
        self.expr
    }

    pub fn eval(&self, args: &[u64]) -> Result<u64, GExprError> {
        if args.len() != self.arity {
            return Err(GExprError::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        self.expr.eval_at(args)
    }

    /// `self(g1(n), ..., gk(n))` as a function of arity `arity`.
    pub fn compose(&self, arity: usize, gs: &[GFunction]) -> Result<GFunction, GExprError> {
        if gs.len() != self.arity {
            return Err(GExprError::ArityMismatch {
                expected: self.arity,
                got: gs.len(),
            });
        }
        if let Some(g) = gs.iter().find(|g| g.arity != arity) {
            return Err(GExprError::ArityMismatch {
                expected: arity,
                got: g.arity,
            });
        }
        let exprs: Vec<GExpr> = gs.iter().map(|g| g.expr.clone()).collect();
        GFunction::new(arity, self.expr.substitute(&exprs))
    }
}

impl fmt::Display for GFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.expr.fmt(f)
    }
}

/// `if g <= l then low else high`, using `ifzero` for `l = 0`.
fn if_at_most(l: u64, selector: &GExpr, low: GExpr, high: GExpr) -> GExpr {
    if low == high {
        return low;
    }
    if l == 0 {
        GExpr::if_zero(selector.clone(), low, high)
    } else {
        GExpr::leq_select(l as usize, selector.clone(), low, high)
    }
}

/// `if g = s then yes else no` as the two-threshold chain
/// `if g <= s then (if g <= s-1 then no else yes) else no`.
pub fn if_equal(s: u64, selector: &GExpr, yes: GExpr, no: GExpr) -> GExpr {
    if s == 0 {
        return GExpr::if_zero(selector.clone(), yes, no);
    }
    let inner = if_at_most(s - 1, selector, no.clone(), yes);
    GExpr::leq_select(s as usize, selector.clone(), inner, no)
}

/// `if g ≡ r (mod t) then yes else no`.
pub fn if_congruent(
    r: u64,
    t: u64,
    selector: &GExpr,
    yes: GExpr,
    no: GExpr,
) -> Result<GExpr, GExprError> {
    if t == 0 {
        return Err(GExprError::DegenerateSet);
    }
    if t == 1 {
        return Ok(yes);
    }
    let branches = (0..t)
        .map(|i| if i == r % t { yes.clone() } else { no.clone() })
        .collect();
    Ok(GExpr::mod_select(t as usize, selector.clone(), branches))
}

/// An eventually periodic subset of ℕ: below the preperiod membership is
/// listed explicitly; from the preperiod on, `n` is a member iff
/// `n mod period` is one of the residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpSet {
    preperiod: u64,
    period: u64,
    finite: BTreeSet<u64>,
    residues: BTreeSet<u64>,
}

impl EpSet {
    pub fn new(
        preperiod: u64,
        period: u64,
        finite: impl IntoIterator<Item = u64>,
        residues: impl IntoIterator<Item = u64>,
    ) -> Result<EpSet, GExprError> {
        if period == 0 {
            return Err(GExprError::DegenerateSet);
        }
        let finite: BTreeSet<u64> = finite.into_iter().collect();
        let residues: BTreeSet<u64> = residues.into_iter().collect();
        if let Some(&bad) = finite.iter().find(|&&n| n >= preperiod) {
            return Err(GExprError::BadSetElement(bad));
        }
        if let Some(&bad) = residues.iter().find(|&&r| r >= period) {
            return Err(GExprError::BadSetElement(bad));
        }
        Ok(EpSet {
            preperiod,
            period,
            finite,
            residues,
        })
    }

    pub fn empty() -> EpSet {
        EpSet::new(0, 1, [], []).expect("valid")
    }

    /// A finite set.
    pub fn finite(elements: impl IntoIterator<Item = u64>) -> EpSet {
        let finite: BTreeSet<u64> = elements.into_iter().collect();
        let preperiod = finite.iter().next_back().map_or(0, |m| m + 1);
        EpSet::new(preperiod, 1, finite, []).expect("valid")
    }

    pub fn preperiod(&self) -> u64 {
        self.preperiod
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn finite_part(&self) -> &BTreeSet<u64> {
        &self.finite
    }

    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    pub fn contains(&self, n: u64) -> bool {
        if n < self.preperiod {
            self.finite.contains(&n)
        } else {
            self.residues.contains(&(n % self.period))
        }
    }
}

/// `if selector ∈ set then yes else no`, built from threshold and
/// mod-selectors only (`ifzero` stands in for the threshold 0).
///
/// Below the preperiod the selector value is dispatched by a cascade of
/// thresholds, one per run of equal membership; from the preperiod on a
/// single mod-selector over the period decides.
pub fn if_in_epset(
    set: &EpSet,
    yes: &GFunction,
    no: &GFunction,
    selector: &GFunction,
) -> Result<GFunction, GExprError> {
    let arity = selector.arity();
    for f in [yes, no] {
        if f.arity() != arity {
            return Err(GExprError::ArityMismatch {
                expected: arity,
                got: f.arity(),
            });
        }
    }
    GFunction::new(
        arity,
        epset_select(set, yes.expr(), no.expr(), selector.expr()),
    )
}

/// Expression-level form of [`if_in_epset`].
pub fn epset_select(set: &EpSet, yes: &GExpr, no: &GExpr, sel: &GExpr) -> GExpr {
    let pick = |member: bool| if member { yes.clone() } else { no.clone() };

    let periodic: Vec<GExpr> = (0..set.period())
        .map(|r| pick(set.residues().contains(&r)))
        .collect();
    let mut acc = if periodic.iter().all(|b| *b == periodic[0]) {
        periodic[0].clone()
    } else {
        GExpr::mod_select(set.period() as usize, sel.clone(), periodic)
    };

    // runs of equal membership below the preperiod, as (last element, member)
    let mut runs: Vec<(u64, bool)> = Vec::new();
    for n in 0..set.preperiod() {
        let member = set.finite_part().contains(&n);
        match runs.last_mut() {
            Some((end, m)) if *m == member => *end = n,
            _ => runs.push((n, member)),
        }
    }
    for &(end, member) in runs.iter().rev() {
        acc = if_at_most(end, sel, pick(member), acc);
    }
    acc
}

/// A violation of eventual monotonicity: `larger > smaller >= from` but
/// `f(larger) < f(smaller)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonotoneViolation {
    pub from: u64,
    pub larger: u64,
    pub smaller: u64,
}

/// Searches, for every threshold `m <= m_bound`, for `n1 > n2 >= m` with
/// `n1 <= n_bound` and `f(n1) < f(n2)`. Returns one witness per threshold if
/// every threshold has one (so `f` is not non-decreasing from any
/// `m <= m_bound` on), and `None` otherwise.
pub fn eventually_monotone_violation(
    f: impl Fn(u64) -> u64,
    m_bound: u64,
    n_bound: u64,
) -> Option<Vec<MonotoneViolation>> {
    let values: Vec<u64> = (0..=n_bound).map(&f).collect();
    (0..=m_bound)
        .map(|m| {
            (m..=n_bound).find_map(|smaller| {
                (smaller + 1..=n_bound)
                    .find(|&larger| values[larger as usize] < values[smaller as usize])
                    .map(|larger| MonotoneViolation {
                        from: m,
                        larger,
                        smaller,
                    })
            })
        })
        .collect()
}

/// The mod-selector `f(m, n1, ..., nl) = n_{(m mod l) + 1}` as a function.
pub fn mod_selector_function(l: usize) -> Result<GFunction, GExprError> {
    let branches = (2..=l + 1).map(GExpr::Proj).collect();
    GFunction::new(l + 1, GExpr::mod_select(l, GExpr::Proj(1), branches))
}

/// The threshold selector `f(m, n1, n2) = if m <= l then n1 else n2`.
pub fn threshold_function(l: usize) -> Result<GFunction, GExprError> {
    GFunction::new(
        3,
        GExpr::leq_select(l, GExpr::Proj(1), GExpr::Proj(2), GExpr::Proj(3)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use GExpr::*;

    fn p(i: usize) -> GExpr {
        Proj(i)
    }

    #[test]
    fn eval_examples() {
        let f = GFunction::new(3, GExpr::mod_select(2, p(1), vec![p(2), p(3)])).unwrap();
        assert_eq!(f.eval(&[5, 7, 9]), Ok(9));
        let f = GFunction::new(3, GExpr::leq_select(3, p(1), p(2), p(3))).unwrap();
        assert_eq!(f.eval(&[2, 11, 13]), Ok(11));
        assert_eq!(f.eval(&[4, 11, 13]), Ok(13));
        let f = GFunction::new(0, GExpr::add(One, One)).unwrap();
        assert_eq!(f.eval(&[]), Ok(2));
    }

    #[test]
    fn eval_errors() {
        let f = GFunction::new(2, p(1)).unwrap();
        assert_eq!(
            f.eval(&[1]),
            Err(GExprError::ArityMismatch { expected: 2, got: 1 })
        );
        let big = GFunction::new(1, GExpr::mul(p(1), p(1))).unwrap();
        assert_eq!(big.eval(&[u64::MAX]), Err(GExprError::Overflow));
    }

    #[test]
    fn validation() {
        assert_eq!(
            GFunction::new(1, p(2)),
            Err(GExprError::ProjectionOutOfRange { index: 2, arity: 1 })
        );
        assert!(GFunction::new(1, p(0)).is_err());
        assert_eq!(
            GFunction::new(1, GExpr::mod_select(1, p(1), vec![p(1)])),
            Err(GExprError::BadModSelect { l: 1, branches: 1 })
        );
        assert_eq!(
            GFunction::new(1, GExpr::mod_select(3, p(1), vec![p(1), p(1)])),
            Err(GExprError::BadModSelect { l: 3, branches: 2 })
        );
        assert_eq!(
            GFunction::new(1, GExpr::leq_select(0, p(1), p(1), p(1))),
            Err(GExprError::BadLeqSelect)
        );
        // the branch count is not bounded by the arity
        assert!(GFunction::new(1, GExpr::mod_select(5, p(1), vec![Zero; 5])).is_ok());
    }

    #[test]
    fn depth_and_size() {
        assert_eq!(Zero.depth(), 1);
        let e = GExpr::mul(GExpr::mul(p(1), p(2)), p(1));
        assert_eq!(e.depth(), 3);
        assert_eq!(e.size(), 5);
        assert_eq!(e.max_projection(), 2);
    }

    #[test]
    fn compose_substitutes_projections() {
        let f = GFunction::new(2, GExpr::add(p(1), GExpr::mul(p(2), p(2)))).unwrap();
        let g1 = GFunction::new(1, GExpr::add(p(1), One)).unwrap();
        let g2 = GFunction::new(1, p(1)).unwrap();
        let h = f.compose(1, &[g1, g2]).unwrap();
        assert_eq!(h.eval(&[3]), Ok(4 + 9));
        assert!(f.compose(1, &[GFunction::new(1, p(1)).unwrap()]).is_err());
    }

    fn sel() -> GFunction {
        GFunction::new(3, p(1)).unwrap()
    }
    fn yes() -> GFunction {
        GFunction::new(3, p(2)).unwrap()
    }
    fn no() -> GFunction {
        GFunction::new(3, p(3)).unwrap()
    }

    #[test]
    fn epset_singleton() {
        let a = EpSet::new(3, 1, [2], []).unwrap();
        let f = if_in_epset(&a, &yes(), &no(), &sel()).unwrap();
        assert_eq!(f.eval(&[2, 100, 200]), Ok(100));
        assert_eq!(f.eval(&[5, 100, 200]), Ok(200));
        assert_eq!(f.eval(&[1, 100, 200]), Ok(200));
        // two thresholds: m <= 1 then no, m <= 2 then yes, else no
        assert_eq!(
            f.expr(),
            &GExpr::leq_select(1, p(1), p(3), GExpr::leq_select(2, p(1), p(2), p(3)))
        );
    }

    #[test]
    fn epset_even_numbers() {
        let a = EpSet::new(0, 2, [], [0]).unwrap();
        let f = if_in_epset(&a, &yes(), &no(), &sel()).unwrap();
        assert_eq!(f.eval(&[4, 1, 2]), Ok(1));
        assert_eq!(f.eval(&[7, 1, 2]), Ok(2));
    }

    #[test]
    fn epset_empty_is_else_branch() {
        let f = if_in_epset(&EpSet::empty(), &yes(), &no(), &sel()).unwrap();
        assert_eq!(f.expr(), &p(3));
        for m in 0..=20 {
            assert_eq!(f.eval(&[m, 1, 2]), Ok(2));
        }
    }

    #[test]
    fn epset_uses_only_selectors() {
        fn allowed(e: &GExpr) -> bool {
            !matches!(e, Add(..) | Mul(..)) && e.children().into_iter().all(allowed)
        }
        let a = EpSet::new(5, 3, [0, 1, 3], [1, 2]).unwrap();
        let f = if_in_epset(&a, &yes(), &no(), &sel()).unwrap();
        assert!(allowed(f.expr()));
        for m in 0..=30 {
            let want = if a.contains(m) { 10 } else { 20 };
            assert_eq!(f.eval(&[m, 10, 20]), Ok(want), "m = {m}");
        }
    }

    #[test]
    fn epset_validation() {
        assert_eq!(EpSet::new(0, 0, [], []), Err(GExprError::DegenerateSet));
        assert_eq!(EpSet::new(2, 1, [2], []), Err(GExprError::BadSetElement(2)));
        assert_eq!(EpSet::new(0, 2, [], [2]), Err(GExprError::BadSetElement(2)));
        let mismatched = GFunction::new(1, p(1)).unwrap();
        assert!(if_in_epset(&EpSet::empty(), &mismatched, &no(), &sel()).is_err());
    }

    #[test]
    fn epset_membership_convention() {
        // n >= 4 and n ≡ 1 (mod 3)
        let a = EpSet::new(4, 3, [], [1]).unwrap();
        let members: Vec<u64> = (0..20).filter(|&n| a.contains(n)).collect();
        assert_eq!(members, vec![4, 7, 10, 13, 16, 19]);
        let f = EpSet::finite([1, 4]);
        assert_eq!((0..8).filter(|&n| f.contains(n)).collect::<Vec<_>>(), vec![1, 4]);
    }

    #[test]
    fn equality_and_congruence_builders() {
        for s in 0..6 {
            let e = if_equal(s, &p(1), p(2), p(3));
            let f = GFunction::new(3, e).unwrap();
            for m in 0..=20 {
                let want = if m == s { 1 } else { 2 };
                assert_eq!(f.eval(&[m, 1, 2]), Ok(want));
            }
        }
        for t in 1..5 {
            for r in 0..t {
                let e = if_congruent(r, t, &p(1), p(2), p(3)).unwrap();
                let f = GFunction::new(3, e).unwrap();
                for m in 0..=20 {
                    let want = if m % t == r { 1 } else { 2 };
                    assert_eq!(f.eval(&[m, 1, 2]), Ok(want));
                }
            }
        }
        assert_eq!(
            if_congruent(0, 0, &p(1), p(2), p(3)),
            Err(GExprError::DegenerateSet)
        );
    }

    #[test]
    fn monotonicity_examples() {
        let w = eventually_monotone_violation(|n| n % 2, 20, 30).expect("parity is not monotone");
        assert_eq!(w.len(), 21);
        for v in &w {
            assert!(v.larger > v.smaller && v.smaller >= v.from);
            assert!(v.larger % 2 < v.smaller % 2);
        }
        assert_eq!(w[0], MonotoneViolation { from: 0, larger: 2, smaller: 1 });

        assert_eq!(eventually_monotone_violation(|n| n * n, 20, 30), None);
        let ifz = |n: u64| if n == 0 { 5 } else { 1 };
        assert_eq!(eventually_monotone_violation(ifz, 1, 30), None);
        // from 0 on it does decrease
        assert!(eventually_monotone_violation(ifz, 0, 30).is_some());
    }

    #[test]
    fn selector_functions() {
        let f = mod_selector_function(3).unwrap();
        assert_eq!(f.arity(), 4);
        assert_eq!(f.eval(&[4, 10, 20, 30]), Ok(20));
        let g = threshold_function(2).unwrap();
        assert_eq!(g.eval(&[2, 10, 20]), Ok(10));
        assert_eq!(g.eval(&[3, 10, 20]), Ok(20));
    }
}
