//! Finite standard models: the full set-theoretic type hierarchy over a base
//! set `{0, ..., q-1}`.
//!
//! Elements of a function type are total tables over the canonical
//! enumeration of the domain. Terms are evaluated with closures and reified
//! into tables only at the requested type, so intermediate values never
//! need their own (possibly huge) domains.
//!
//! Numerals at `ω_τ` are tracked as the family `f ↦ fⁿ` over all
//! `f ∈ ⟦τ → τ⟧` rather than as points of `⟦ω_τ⟧`; two numerals denote the
//! same element exactly when the families agree.

use std::collections::HashMap;
use std::rc::Rc;

use thiserror::Error;

use crate::term::{Term, TermView};
use crate::types::{check_type_detailed, SimpleType, TypeError};

pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("domain too large to materialize: {cardinality} elements exceeds cap {cap}")]
    CapExceeded { cardinality: String, cap: u64 },
    #[error("term does not have the requested type: {0}")]
    IllTyped(TypeError),
    #[error("type is not ground")]
    NotGround,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteModel {
    base_size: u32,
    cap: u64,
}

impl FiniteModel {
    /// `base_size` of zero is bumped to one.
    pub fn new(base_size: u32, cap: u64) -> FiniteModel {
        FiniteModel {
            base_size: base_size.max(1),
            cap,
        }
    }

    pub fn with_base_size(base_size: u32) -> FiniteModel {
        FiniteModel::new(base_size, DEFAULT_CAP)
    }

    pub fn base_size(&self) -> u32 {
        self.base_size
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    fn exceeded(&self, cardinality: impl ToString) -> ModelError {
        ModelError::CapExceeded {
            cardinality: cardinality.to_string(),
            cap: self.cap,
        }
    }

    /// `|⟦ty⟧|`, or `CapExceeded` when it is larger than the cap.
    pub fn cardinality(&self, ty: &SimpleType) -> Result<u64, ModelError> {
        match ty {
            SimpleType::Base => {
                let q = self.base_size as u64;
                if q > self.cap {
                    return Err(self.exceeded(q));
                }
                Ok(q)
            }
            SimpleType::Var(_) => Err(ModelError::NotGround),
            SimpleType::Arrow(a, b) => {
                let dom = self.cardinality(a)?;
                let cod = self.cardinality(b)?;
                let exp = u32::try_from(dom).map_err(|_| self.exceeded(format!("{cod}^{dom}")))?;
                match cod.checked_pow(exp) {
                    Some(n) if n <= self.cap => Ok(n),
                    Some(n) => Err(self.exceeded(n)),
                    None => Err(self.exceeded(format!("{cod}^{dom}"))),
                }
            }
        }
    }
}

/// A point of the base set, or a total table over the enumerated domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModelElement {
    Point(u32),
    Table(Vec<ModelElement>),
}

/// The enumerated interpretation of a type.
#[derive(Debug, Clone)]
pub struct Domain {
    ty: SimpleType,
    elements: Vec<ModelElement>,
}

impl Domain {
    pub fn ty(&self) -> &SimpleType {
        &self.ty
    }

    pub fn elements(&self) -> &[ModelElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Canonical enumeration of `⟦ty⟧`: the base set in order; for arrows all
/// tables, ordered lexicographically by codomain position with the first
/// domain element most significant.
pub fn domain(ty: &SimpleType, m: &FiniteModel) -> Result<Domain, ModelError> {
    let mut cx = Context::new(*m);
    let elements = cx.domain(ty)?.to_vec();
    Ok(Domain {
        ty: ty.clone(),
        elements,
    })
}

/// Position of an element in the canonical enumeration of its type.
fn rank(e: &ModelElement, ty: &SimpleType, cx: &Context) -> u64 {
    match (e, ty) {
        (ModelElement::Point(p), SimpleType::Base) => *p as u64,
        (ModelElement::Table(rows), SimpleType::Arrow(_, cod)) => {
            let base = cx.cardinality(cod);
            rows.iter()
                .fold(0, |acc, r| acc * base + rank(r, cod, cx))
        }
        _ => unreachable!("element shape matches its type"),
    }
}

struct Context {
    model: FiniteModel,
    domains: HashMap<SimpleType, Rc<Vec<ModelElement>>>,
    sizes: HashMap<SimpleType, u64>,
}

impl Context {
    fn new(model: FiniteModel) -> Context {
        Context {
            model,
            domains: HashMap::new(),
            sizes: HashMap::new(),
        }
    }

    fn cardinality(&self, ty: &SimpleType) -> u64 {
        self.sizes[ty]
    }

    fn domain(&mut self, ty: &SimpleType) -> Result<Rc<Vec<ModelElement>>, ModelError> {
        if let Some(d) = self.domains.get(ty) {
            return Ok(d.clone());
        }
        let size = self.model.cardinality(ty)?;
        let elements = match ty {
            SimpleType::Base => (0..self.model.base_size).map(ModelElement::Point).collect(),
            SimpleType::Var(_) => return Err(ModelError::NotGround),
            SimpleType::Arrow(a, b) => {
                let dom = self.domain(a)?.len();
                let cod = self.domain(b)?;
                let mut out = Vec::with_capacity(size as usize);
                let mut digits = vec![0usize; dom];
                for _ in 0..size {
                    out.push(ModelElement::Table(
                        digits.iter().map(|&d| cod[d].clone()).collect(),
                    ));
                    // increment, last position least significant
                    for d in digits.iter_mut().rev() {
                        *d += 1;
                        if *d < cod.len() {
                            break;
                        }
                        *d = 0;
                    }
                }
                out
            }
        };
        let elements = Rc::new(elements);
        self.sizes.insert(ty.clone(), size);
        self.domains.insert(ty.clone(), elements.clone());
        Ok(elements)
    }
}

/// A semantic value during evaluation.
#[derive(Clone)]
enum Sem {
    Point(u32),
    Fun(Rc<dyn Fn(Sem) -> Sem>),
}

impl Sem {
    fn apply(&self, arg: Sem) -> Sem {
        match self {
            Sem::Fun(f) => f(arg),
            Sem::Point(_) => unreachable!("typed evaluation never applies a point"),
        }
    }
}

#[derive(Clone)]
enum Env {
    Nil,
    Cons(Sem, Rc<Env>),
}

fn lookup(env: &Env, i: u32) -> Sem {
    let mut cur = env;
    let mut i = i;
    loop {
        match cur {
            Env::Cons(v, rest) => {
                if i == 0 {
                    return v.clone();
                }
                i -= 1;
                cur = rest;
            }
            Env::Nil => unreachable!("closed terms have no free variables"),
        }
    }
}

fn eval(t: &Term, env: &Rc<Env>) -> Sem {
    match t.view() {
        TermView::Var(i) => lookup(env, *i),
        TermView::App(f, a) => eval(f, env).apply(eval(a, env)),
        TermView::Lam(body) => {
            let body = body.clone();
            let env = env.clone();
            Sem::Fun(Rc::new(move |arg| {
                eval(&body, &Rc::new(Env::Cons(arg, env.clone())))
            }))
        }
    }
}

/// Read-only domain tables needed to turn semantic values into elements
/// and back.
struct Tables {
    cx: Context,
}

fn reify(tables: &Rc<Tables>, v: &Sem, ty: &SimpleType) -> ModelElement {
    match ty {
        SimpleType::Base => match v {
            Sem::Point(p) => ModelElement::Point(*p),
            Sem::Fun(_) => unreachable!("typed evaluation"),
        },
        SimpleType::Arrow(a, b) => {
            let dom = tables.cx.domains[&**a].clone();
            ModelElement::Table(
                dom.iter()
                    .map(|d| reify(tables, &v.apply(reflect(tables, d, a)), b))
                    .collect(),
            )
        }
        SimpleType::Var(_) => unreachable!("ground types only"),
    }
}

fn reflect(tables: &Rc<Tables>, e: &ModelElement, ty: &SimpleType) -> Sem {
    match (e, ty) {
        (ModelElement::Point(p), _) => Sem::Point(*p),
        (ModelElement::Table(rows), SimpleType::Arrow(a, b)) => {
            let rows = rows.clone();
            let (a, b) = ((**a).clone(), (**b).clone());
            let tables = tables.clone();
            Sem::Fun(Rc::new(move |arg| {
                let idx = rank(&reify(&tables, &arg, &a), &a, &tables.cx);
                reflect(&tables, &rows[idx as usize], &b)
            }))
        }
        _ => unreachable!("element shape matches its type"),
    }
}

/// Enumerates every type that occurs as an argument inside `ty`; reifying
/// a value of type `ty` needs exactly these.
fn collect_domains(cx: &mut Context, ty: &SimpleType) -> Result<(), ModelError> {
    if let SimpleType::Arrow(a, b) = ty {
        cx.domain(a)?;
        collect_domains(cx, b)?;
    }
    Ok(())
}

/// The denotation of the closed term `t` at the ground type `ty`.
pub fn eval_in_model(t: &Term, ty: &SimpleType, m: &FiniteModel) -> Result<ModelElement, ModelError> {
    if !ty.is_ground() {
        return Err(ModelError::NotGround);
    }
    check_type_detailed(t, ty).map_err(ModelError::IllTyped)?;
    let mut cx = Context::new(*m);
    collect_domains(&mut cx, ty)?;
    let tables = Rc::new(Tables { cx });
    let value = eval(t, &Rc::new(Env::Nil));
    Ok(reify(&tables, &value, ty))
}

/// Preperiod and period of the sequence `⟦ρ(0)⟧, ⟦ρ(1)⟧, ...` at `ω_τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    tau: SimpleType,
    preperiod: u64,
    period: u64,
    states: Vec<NumeralState>,
}

/// `fⁿ` for every `f ∈ ⟦τ → τ⟧`, each as a table over `⟦τ⟧`, concatenated
/// in the canonical order of `f`.
pub type NumeralState = Vec<u32>;

impl Trajectory {
    pub fn tau(&self) -> &SimpleType {
        &self.tau
    }

    /// Smallest `l` with `⟦ρ(l + t)⟧ = ⟦ρ(l)⟧` for some `t >= 1`.
    pub fn preperiod(&self) -> u64 {
        self.preperiod
    }

    /// Smallest such `t`.
    pub fn period(&self) -> u64 {
        self.period
    }

    /// The distinct states `⟦ρ(0)⟧ .. ⟦ρ(l + t - 1)⟧`.
    pub fn states(&self) -> &[NumeralState] {
        &self.states
    }

    /// Canonical representative of `n`'s class: numerals in the same class
    /// denote the same element.
    pub fn class_of(&self, n: u64) -> u64 {
        if n < self.preperiod {
            n
        } else {
            self.preperiod + (n - self.preperiod) % self.period
        }
    }

    pub fn state(&self, n: u64) -> &NumeralState {
        &self.states[self.class_of(n) as usize]
    }

    pub fn same_denotation(&self, a: u64, b: u64) -> bool {
        self.class_of(a) == self.class_of(b)
    }
}

/// Computes the numeral trajectory at `ω_τ` by iterating every
/// `f ∈ ⟦τ → τ⟧` and stopping at the first repeated state.
pub fn numeral_trajectory(tau: &SimpleType, m: &FiniteModel) -> Result<Trajectory, ModelError> {
    if !tau.is_ground() {
        return Err(ModelError::NotGround);
    }
    let n = m.cardinality(tau)?;
    // ⟦τ → τ⟧ must fit; its elements are all maps on n points
    m.cardinality(&SimpleType::arrow(tau.clone(), tau.clone()))?;
    let n = n as usize;
    let generators = all_maps(n);

    let identity: Vec<u32> = (0..n as u32).collect();
    let mut state: NumeralState = identity.repeat(generators.len());
    let mut seen: HashMap<NumeralState, u64> = HashMap::new();
    let mut states = Vec::new();
    let mut index = 0u64;
    loop {
        if let Some(&first) = seen.get(&state) {
            return Ok(Trajectory {
                tau: tau.clone(),
                preperiod: first,
                period: index - first,
                states,
            });
        }
        seen.insert(state.clone(), index);
        states.push(state.clone());
        // f^(k+1) = f ∘ f^k
        let next: NumeralState = state
            .chunks(n)
            .zip(&generators)
            .flat_map(|(power, f)| power.iter().map(|&y| f[y as usize]))
            .collect();
        state = next;
        index += 1;
    }
}

/// All maps `{0..n-1} → {0..n-1}` as tables, in canonical order.
fn all_maps(n: usize) -> Vec<Vec<u32>> {
    let count = (n as u64).pow(n as u32) as usize;
    let mut out = Vec::with_capacity(count);
    let mut digits = vec![0u32; n];
    for _ in 0..count {
        out.push(digits.clone());
        for d in digits.iter_mut().rev() {
            *d += 1;
            if (*d as usize) < n {
                break;
            }
            *d = 0;
        }
    }
    out
}

/// A pair of numerals that denote the same element of `⟦ω_τ⟧` while their
/// images under `f` do not. No term of type `ω_τ → ω_τ` can then represent
/// `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompatWitness {
    pub n: u64,
    pub n_prime: u64,
    pub image: u64,
    pub image_prime: u64,
}

/// Searches `n < n' <= n_bound` (by increasing `n'`, then `n`) for a pair
/// with equal denotations whose images under `f` have distinct ones.
pub fn compat_falsify(
    f: impl Fn(u64) -> u64,
    tau: &SimpleType,
    m: &FiniteModel,
    n_bound: u64,
) -> Result<Option<CompatWitness>, ModelError> {
    let traj = numeral_trajectory(tau, m)?;
    Ok(compat_falsify_with(&f, &traj, n_bound))
}

/// [`compat_falsify`] against an already computed trajectory.
pub fn compat_falsify_with(
    f: &dyn Fn(u64) -> u64,
    traj: &Trajectory,
    n_bound: u64,
) -> Option<CompatWitness> {
    for n_prime in 0..=n_bound {
        for n in 0..n_prime {
            if !traj.same_denotation(n, n_prime) {
                continue;
            }
            let (image, image_prime) = (f(n), f(n_prime));
            if !traj.same_denotation(image, image_prime) {
                return Some(CompatWitness {
                    n,
                    n_prime,
                    image,
                    image_prime,
                });
            }
        }
    }
    None
}
