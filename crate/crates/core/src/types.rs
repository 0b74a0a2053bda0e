//! Simple types over the single base type `o`, first-order unification and
//! Curry-style principal type inference.
//!
//! Unification works on a union-find arena without an occurs check during
//! solving; a single acyclicity pass at the end rejects infinite types. This
//! keeps inference near-linear on the large compiled terms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::term::{Term, TermView};

pub type TypeVarId = u32;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SimpleType {
    Base,
    Arrow(Arc<SimpleType>, Arc<SimpleType>),
    Var(TypeVarId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("occurs check failed: infinite type")]
    OccursCheck,
    #[error("cannot unify base type with an arrow")]
    Clash,
    #[error("term is not typable: {0}")]
    NotTypable(Box<TypeError>),
    #[error("term has free variables")]
    OpenTerm,
    #[error("target type is not ground")]
    NotGround,
}

impl SimpleType {
    pub fn arrow(from: SimpleType, to: SimpleType) -> SimpleType {
        SimpleType::Arrow(Arc::new(from), Arc::new(to))
    }

    /// `args[0] -> args[1] -> ... -> result`
    pub fn arrows<I>(args: I, result: SimpleType) -> SimpleType
    where
        I: IntoIterator<Item = SimpleType>,
        I::IntoIter: DoubleEndedIterator,
    {
        args.into_iter()
            .rev()
            .fold(result, |acc, a| SimpleType::arrow(a, acc))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            SimpleType::Base => true,
            SimpleType::Var(_) => false,
            SimpleType::Arrow(a, b) => a.is_ground() && b.is_ground(),
        }
    }

    pub fn as_arrow(&self) -> Option<(&SimpleType, &SimpleType)> {
        match self {
            SimpleType::Arrow(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Splits off `n` argument types, if the type has that many.
    pub fn uncurry(&self, n: usize) -> Option<(Vec<&SimpleType>, &SimpleType)> {
        let mut args = Vec::with_capacity(n);
        let mut cur = self;
        for _ in 0..n {
            let (a, b) = cur.as_arrow()?;
            args.push(a);
            cur = b;
        }
        Some((args, cur))
    }

    /// If the type is `(t -> t) -> t -> t`, returns `t`.
    pub fn as_omega(&self) -> Option<&SimpleType> {
        let (step, rest) = self.as_arrow()?;
        let (a, b) = step.as_arrow()?;
        let (c, d) = rest.as_arrow()?;
        (a == b && b == c && c == d).then_some(a)
    }

    /// If the type is `tau_s(s)`, returns `s`.
    pub fn as_tuple_width(&self) -> Option<usize> {
        let (consumer, result) = self.as_arrow()?;
        if *result != alpha() {
            return None;
        }
        let mut s = 0;
        let mut cur = consumer;
        let alpha = alpha();
        while *cur != alpha {
            let (a, b) = cur.as_arrow()?;
            if *a != alpha {
                return None;
            }
            s += 1;
            cur = b;
        }
        (s >= 1).then_some(s)
    }

    fn vars_into(&self, out: &mut Vec<TypeVarId>) {
        match self {
            SimpleType::Base => {}
            SimpleType::Var(v) => {
                if !out.contains(v) {
                    out.push(*v)
                }
            }
            SimpleType::Arrow(a, b) => {
                a.vars_into(out);
                b.vars_into(out);
            }
        }
    }

    /// Type variables in order of first occurrence.
    pub fn vars(&self) -> Vec<TypeVarId> {
        let mut out = Vec::new();
        self.vars_into(&mut out);
        out
    }

    /// Renames type variables to 0, 1, 2, ... in order of first occurrence.
    pub fn canonical(&self) -> SimpleType {
        let map: HashMap<TypeVarId, TypeVarId> = self
            .vars()
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, i as TypeVarId))
            .collect();
        self.rename(&map)
    }

    fn rename(&self, map: &HashMap<TypeVarId, TypeVarId>) -> SimpleType {
        match self {
            SimpleType::Base => SimpleType::Base,
            SimpleType::Var(v) => SimpleType::Var(map[v]),
            SimpleType::Arrow(a, b) => SimpleType::arrow(a.rename(map), b.rename(map)),
        }
    }

    /// Replaces every type variable with `o`.
    pub fn ground_with_base(&self) -> SimpleType {
        match self {
            SimpleType::Base | SimpleType::Var(_) => SimpleType::Base,
            SimpleType::Arrow(a, b) => {
                SimpleType::arrow(a.ground_with_base(), b.ground_with_base())
            }
        }
    }
}

impl fmt::Debug for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_type(self))
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_type(self))
    }
}

/// `(tau -> tau) -> tau -> tau`
pub fn omega(tau: &SimpleType) -> SimpleType {
    let step = SimpleType::arrow(tau.clone(), tau.clone());
    SimpleType::arrow(step, SimpleType::arrow(tau.clone(), tau.clone()))
}

/// The numeral type over the base type, `(o -> o) -> o -> o`.
pub fn alpha() -> SimpleType {
    omega(&SimpleType::Base)
}

/// The type of an `s`-tuple of numerals over `o`:
/// `(alpha -> ... -> alpha -> alpha) -> alpha` with `s` argument copies.
///
/// # Panics
///
/// If `s == 0`.
pub fn tau_s(s: usize) -> SimpleType {
    assert!(s >= 1, "tuple width must be positive");
    let a = alpha();
    let consumer = SimpleType::arrows(std::iter::repeat_n(a.clone(), s), a.clone());
    SimpleType::arrow(consumer, a)
}

/// An idempotent substitution from type variables to types.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<TypeVarId, SimpleType>,
}

impl Substitution {
    pub fn get(&self, v: TypeVarId) -> Option<&SimpleType> {
        self.map.get(&v)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TypeVarId, &SimpleType)> {
        self.map.iter()
    }

    pub fn apply(&self, t: &SimpleType) -> SimpleType {
        match t {
            SimpleType::Base => SimpleType::Base,
            SimpleType::Var(v) => self.map.get(v).cloned().unwrap_or(SimpleType::Var(*v)),
            SimpleType::Arrow(a, b) => SimpleType::arrow(self.apply(a), self.apply(b)),
        }
    }
}

type Node = usize;

#[derive(Clone, Copy)]
enum Slot {
    Base,
    Arrow(Node, Node),
    Unbound,
    Link(Node),
}

/// Union-find arena for unification.
#[derive(Default)]
struct Arena {
    slots: Vec<Slot>,
}

impl Arena {
    fn push(&mut self, s: Slot) -> Node {
        self.slots.push(s);
        self.slots.len() - 1
    }

    fn fresh(&mut self) -> Node {
        self.push(Slot::Unbound)
    }

    fn arrow(&mut self, a: Node, b: Node) -> Node {
        self.push(Slot::Arrow(a, b))
    }

    fn find(&mut self, mut n: Node) -> Node {
        let mut root = n;
        while let Slot::Link(next) = self.slots[root] {
            root = next;
        }
        while let Slot::Link(next) = self.slots[n] {
            self.slots[n] = Slot::Link(root);
            n = next;
        }
        root
    }

    fn embed(&mut self, t: &SimpleType, vars: &mut HashMap<TypeVarId, Node>) -> Node {
        match t {
            SimpleType::Base => self.push(Slot::Base),
            SimpleType::Var(v) => {
                if let Some(n) = vars.get(v) {
                    *n
                } else {
                    let n = self.fresh();
                    vars.insert(*v, n);
                    n
                }
            }
            SimpleType::Arrow(a, b) => {
                let a = self.embed(a, vars);
                let b = self.embed(b, vars);
                self.arrow(a, b)
            }
        }
    }

    /// Unifies without an occurs check; call [`Arena::check_acyclic`] after.
    fn unify(&mut self, a: Node, b: Node) -> Result<(), TypeError> {
        let mut work = vec![(a, b)];
        while let Some((a, b)) = work.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            match (self.slots[a], self.slots[b]) {
                (Slot::Unbound, _) => self.slots[a] = Slot::Link(b),
                (_, Slot::Unbound) => self.slots[b] = Slot::Link(a),
                (Slot::Base, Slot::Base) => self.slots[a] = Slot::Link(b),
                (Slot::Arrow(a1, a2), Slot::Arrow(b1, b2)) => {
                    self.slots[a] = Slot::Link(b);
                    work.push((a2, b2));
                    work.push((a1, b1));
                }
                _ => return Err(TypeError::Clash),
            }
        }
        Ok(())
    }

    fn check_acyclic(&mut self) -> Result<(), TypeError> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let n = self.slots.len();
        let mut state = vec![0u8; n];
        for start in 0..n {
            let start = self.find(start);
            if state[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, false)];
            while let Some((node, leaving)) = stack.pop() {
                if leaving {
                    state[node] = 2;
                    continue;
                }
                match state[node] {
                    1 => continue,
                    2 => continue,
                    _ => {}
                }
                state[node] = 1;
                stack.push((node, true));
                if let Slot::Arrow(x, y) = self.slots[node] {
                    for child in [y, x] {
                        let c = self.find(child);
                        match state[c] {
                            1 => return Err(TypeError::OccursCheck),
                            0 => stack.push((c, false)),
                            _ => {}
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Fully resolved type of a node. Unbound roots become `Var(name(root))`.
    fn resolve(
        &mut self,
        n: Node,
        name: &mut dyn FnMut(Node) -> TypeVarId,
        memo: &mut HashMap<Node, SimpleType>,
    ) -> SimpleType {
        let root = self.find(n);
        if let Some(t) = memo.get(&root) {
            return t.clone();
        }
        let t = match self.slots[root] {
            Slot::Base => SimpleType::Base,
            Slot::Unbound => SimpleType::Var(name(root)),
            Slot::Arrow(a, b) => {
                let a = self.resolve(a, name, memo);
                let b = self.resolve(b, name, memo);
                SimpleType::arrow(a, b)
            }
            Slot::Link(_) => unreachable!("find returns a root"),
        };
        memo.insert(root, t.clone());
        t
    }
}

/// Most general unifier of `a` and `b`.
pub fn unify(a: &SimpleType, b: &SimpleType) -> Result<Substitution, TypeError> {
    let mut arena = Arena::default();
    let mut vars = HashMap::new();
    let na = arena.embed(a, &mut vars);
    let nb = arena.embed(b, &mut vars);
    arena.unify(na, nb)?;
    arena.check_acyclic()?;

    let mut ids: Vec<(TypeVarId, Node)> = vars.into_iter().collect();
    ids.sort();
    // an unbound root is named after the first variable in its class
    let mut owner: HashMap<Node, TypeVarId> = HashMap::new();
    for &(v, n) in &ids {
        let root = arena.find(n);
        owner.entry(root).or_insert(v);
    }
    let mut memo = HashMap::new();
    let mut map = BTreeMap::new();
    for &(v, n) in &ids {
        let t = arena.resolve(n, &mut |root| owner[&root], &mut memo);
        if t != SimpleType::Var(v) {
            map.insert(v, t);
        }
    }
    Ok(Substitution { map })
}

/// Inference state: the arena plus the root node of the term's type.
struct Inference {
    arena: Arena,
    root: Node,
}

fn infer_nodes(t: &Term) -> Result<Inference, TypeError> {
    if !t.is_closed() {
        return Err(TypeError::OpenTerm);
    }
    let mut arena = Arena::default();
    let mut env: Vec<Node> = Vec::new();
    let root = infer_in(t, &mut arena, &mut env).map_err(|e| TypeError::NotTypable(Box::new(e)))?;
    arena
        .check_acyclic()
        .map_err(|e| TypeError::NotTypable(Box::new(e)))?;
    Ok(Inference { arena, root })
}

fn infer_in(t: &Term, arena: &mut Arena, env: &mut Vec<Node>) -> Result<Node, TypeError> {
    match t.view() {
        TermView::Var(i) => Ok(env[env.len() - 1 - *i as usize]),
        TermView::Lam(body) => {
            let a = arena.fresh();
            env.push(a);
            let b = infer_in(body, arena, env);
            env.pop();
            let b = b?;
            Ok(arena.arrow(a, b))
        }
        TermView::App(f, x) => {
            let tf = infer_in(f, arena, env)?;
            let tx = infer_in(x, arena, env)?;
            let r = arena.fresh();
            let want = arena.arrow(tx, r);
            arena.unify(tf, want)?;
            Ok(r)
        }
    }
}

/// Principal type of a closed term, with type variables numbered in order of
/// first occurrence.
pub fn infer_principal(t: &Term) -> Result<SimpleType, TypeError> {
    let mut inf = infer_nodes(t)?;
    let mut memo = HashMap::new();
    let ty = inf.arena.resolve(inf.root, &mut |n| n as TypeVarId, &mut memo);
    Ok(ty.canonical())
}

/// Checks that `target` is an instance of the principal type of `t`.
pub fn check_type_detailed(t: &Term, target: &SimpleType) -> Result<(), TypeError> {
    if !target.is_ground() {
        return Err(TypeError::NotGround);
    }
    let mut inf = infer_nodes(t)?;
    let goal = inf.arena.embed(target, &mut HashMap::new());
    inf.arena.unify(inf.root, goal)?;
    // the target is ground, so a successful unification binds only the term's
    // variables; no cycle can be introduced
    Ok(())
}

/// Whether `t` can be assigned the ground type `target`.
pub fn check_type(t: &Term, target: &SimpleType) -> bool {
    check_type_detailed(t, target).is_ok()
}
