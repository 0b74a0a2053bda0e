#![allow(dead_code)]

use churchforge::encodings::{church, combinators};
use churchforge::gexpr::GExpr;
use churchforge::reduce::{betaeta_normal_form, Fuel};
use churchforge::term::Term;
use churchforge::types::infer_principal;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn leaf(rng: &mut ChaCha8Rng) -> Term {
    let c = combinators();
    match rng.gen_range(0..6) {
        0 => church(rng.gen_range(0..4)),
        1 => c.succ.clone(),
        2 => c.add.clone(),
        3 => c.mul.clone(),
        4 => Term::lam(Term::var(0)),
        _ => Term::lams(2, Term::var(1)),
    }
}

fn random_term_in(rng: &mut ChaCha8Rng, depth: u32, bound: u32) -> Term {
    let stop = depth == 0 || rng.gen_bool(0.25);
    if stop {
        if bound > 0 && rng.gen_bool(0.7) {
            return Term::var(rng.gen_range(0..bound));
        }
        return leaf(rng);
    }
    match rng.gen_range(0..3) {
        0 => Term::lam(random_term_in(rng, depth - 1, bound + 1)),
        _ => Term::app(
            random_term_in(rng, depth - 1, bound),
            random_term_in(rng, depth - 1, bound),
        ),
    }
}

/// A closed typable term of size at most 30 whose normal form is reachable
/// with the given fuel, drawn deterministically from `rng`.
pub fn random_typable_term(rng: &mut ChaCha8Rng, fuel: Fuel) -> Term {
    loop {
        let t = random_term_in(rng, 5, 0);
        if t.size() > 30 || infer_principal(&t).is_err() {
            continue;
        }
        if betaeta_normal_form(&t, fuel).is_ok() {
            return t;
        }
    }
}

/// An expression of the given depth bound over `arity` projections, using
/// selector parameters up to `max_l`.
pub fn random_gexpr(rng: &mut ChaCha8Rng, depth: usize, arity: usize, max_l: usize) -> GExpr {
    if depth <= 1 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..4) {
            0 => GExpr::Zero,
            1 => GExpr::One,
            _ => GExpr::Proj(rng.gen_range(1..=arity)),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| random_gexpr(rng, depth - 1, arity, max_l);
    match rng.gen_range(0..5) {
        0 => GExpr::add(sub(rng), sub(rng)),
        1 => GExpr::mul(sub(rng), sub(rng)),
        2 => GExpr::if_zero(sub(rng), sub(rng), sub(rng)),
        3 if max_l >= 2 => {
            let l = rng.gen_range(2..=max_l);
            let sel = sub(rng);
            let branches = (0..l).map(|_| sub(rng)).collect();
            GExpr::mod_select(l, sel, branches)
        }
        _ => {
            let l = rng.gen_range(1..=max_l.max(1));
            GExpr::leq_select(l, sub(rng), sub(rng), sub(rng))
        }
    }
}
