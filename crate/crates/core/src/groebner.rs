//! Multivariate division, Buchberger's algorithm and normal forms.

use std::cmp::Ordering;

use crate::error::{GroebnerError, PolyError};
use crate::monomial::{Degree, ExponentVector, MonomialOrder};
use crate::poly::Poly;
use crate::scalar::{Field, Rational};

/// Default cap on the number of S-pairs reduced by [`buchberger`].
pub const DEFAULT_PAIR_BUDGET: usize = 20_000;

#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<C: Field = Rational> {
    pub generators: Vec<Poly<C>>,
    pub order: MonomialOrder,
    pub reduced: bool,
}

fn check_arity<C: Field>(polys: &[&Poly<C>], order: &MonomialOrder) -> Result<(), PolyError> {
    for p in polys {
        if p.arity() != order.arity() {
            return Err(PolyError::ArityMismatch { expected: order.arity(), found: p.arity() });
        }
    }
    Ok(())
}

/// Division with remainder. The first divisor (in list order) whose leading
/// term divides the current leading term is used.
pub fn divide<C: Field>(
    p: &Poly<C>,
    divisors: &[Poly<C>],
    order: &MonomialOrder,
) -> Result<(Vec<Poly<C>>, Poly<C>), GroebnerError> {
    let all: Vec<&Poly<C>> = std::iter::once(p).chain(divisors.iter()).collect();
    check_arity(&all, order)?;
    if divisors.iter().any(|d| d.is_zero()) {
        return Err(GroebnerError::ZeroDivisor);
    }
    let lts: Vec<(ExponentVector, C)> = divisors.iter().map(|d| d.leading_term(order).unwrap()).collect();
    let mut quotients = vec![Poly::zero(p.vars()); divisors.len()];
    let mut rem = Poly::zero(p.vars());
    let mut cur = p.clone();
    while let Some(e) = cur.leading_exponent(order).cloned() {
        let c = cur.coeff(&e);
        match lts.iter().position(|(lt, _)| lt.divides(&e)) {
            Some(k) => {
                let shift = lts[k].0.quotient(&e).unwrap();
                let f = c / lts[k].1.clone();
                cur.sub_scaled(&divisors[k], &shift, &f);
                quotients[k].add_term(shift, f);
            }
            None => {
                cur.add_term(e.clone(), -c.clone());
                rem.add_term(e, c);
            }
        }
    }
    Ok((quotients, rem))
}

/// Remainder of `p` on division by `divisors`.
pub fn reduce<C: Field>(p: &Poly<C>, divisors: &[Poly<C>], order: &MonomialOrder) -> Result<Poly<C>, GroebnerError> {
    divide(p, divisors, order).map(|(_, r)| r)
}

pub fn s_polynomial<C: Field>(f: &Poly<C>, g: &Poly<C>, order: &MonomialOrder) -> Poly<C> {
    let (a, ca) = f.leading_term(order).expect("nonzero");
    let (b, cb) = g.leading_term(order).expect("nonzero");
    let l = a.lcm(&b);
    let left = f.mul_term(&a.quotient(&l).unwrap(), &(C::one() / ca));
    let right = g.mul_term(&b.quotient(&l).unwrap(), &(C::one() / cb));
    &left - &right
}

struct Pair {
    i: usize,
    j: usize,
    lcm: ExponentVector,
}

pub fn buchberger<C: Field>(generators: &[Poly<C>], order: &MonomialOrder) -> Result<GroebnerBasis<C>, GroebnerError> {
    buchberger_with_budget(generators, order, DEFAULT_PAIR_BUDGET)
}

/// Buchberger's algorithm with the normal selection strategy and the coprime
/// and chain criteria. Fails once more than `budget` pairs have been reduced.
pub fn buchberger_with_budget<C: Field>(
    generators: &[Poly<C>],
    order: &MonomialOrder,
    budget: usize,
) -> Result<GroebnerBasis<C>, GroebnerError> {
    let refs: Vec<&Poly<C>> = generators.iter().collect();
    check_arity(&refs, order)?;
    let mut basis: Vec<Poly<C>> = generators.iter().filter(|g| !g.is_zero()).map(|g| g.make_monic(order)).collect();
    let mut lts: Vec<ExponentVector> = basis.iter().map(|g| g.leading_term(order).unwrap().0).collect();
    let mut pairs: Vec<Pair> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push(Pair { i, j, lcm: lts[i].lcm(&lts[j]) });
        }
    }
    let mut reduced_pairs = 0;
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                order
                    .cmp(&pairs[a].lcm, &pairs[b].lcm)
                    .then((pairs[a].j, pairs[a].i).cmp(&(pairs[b].j, pairs[b].i)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        let (i, j) = (pair.i, pair.j);
        if lts[i].is_coprime(&lts[j]) || chain_criterion(i, j, &pair.lcm, &lts, &pairs) {
            continue;
        }
        reduced_pairs += 1;
        if reduced_pairs > budget {
            return Err(GroebnerError::BudgetExhausted { budget });
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce(&s, &basis, order)?;
        if !r.is_zero() {
            let r = r.make_monic(order);
            let lt = r.leading_term(order).unwrap().0;
            let k = basis.len();
            for (m, lm) in lts.iter().enumerate() {
                pairs.push(Pair { i: m, j: k, lcm: lm.lcm(&lt) });
            }
            basis.push(r);
            lts.push(lt);
        }
    }
    Ok(GroebnerBasis { generators: basis, order: order.clone(), reduced: false })
}

/// Buchberger's second criterion: some `k` has `LT(f_k) | lcm` and neither
/// `(i,k)` nor `(j,k)` is still pending.
fn chain_criterion(i: usize, j: usize, lcm: &ExponentVector, lts: &[ExponentVector], pending: &[Pair]) -> bool {
    let is_pending = |a: usize, b: usize| {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        pending.iter().any(|p| p.i == lo && p.j == hi)
    };
    (0..lts.len()).any(|k| k != i && k != j && lts[k].divides(lcm) && !is_pending(i, k) && !is_pending(j, k))
}

impl<C: Field> GroebnerBasis<C> {
    /// The unique reduced basis, sorted by increasing leading term.
    pub fn reduce_basis(&self) -> GroebnerBasis<C> {
        let order = &self.order;
        let mut gens: Vec<Poly<C>> = self.generators.iter().filter(|g| !g.is_zero()).map(|g| g.make_monic(order)).collect();
        gens.sort_by(|a, b| order.cmp(a.leading_exponent(order).unwrap(), b.leading_exponent(order).unwrap()));
        let mut minimal: Vec<Poly<C>> = Vec::new();
        for g in gens {
            let lt = g.leading_exponent(order).unwrap().clone();
            if !minimal.iter().any(|m| m.leading_exponent(order).unwrap().divides(&lt)) {
                minimal.push(g);
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for k in 0..minimal.len() {
            let (lt, _) = minimal[k].leading_term(order).unwrap();
            let others: Vec<Poly<C>> = minimal.iter().enumerate().filter(|(m, _)| *m != k).map(|(_, g)| g.clone()).collect();
            let tail = &minimal[k] - &Poly::monomial(minimal[k].vars(), lt.clone(), C::one());
            let r = if others.is_empty() { tail } else { reduce(&tail, &others, order).unwrap() };
            out.push(&r + &Poly::monomial(minimal[k].vars(), lt, C::one()));
        }
        GroebnerBasis { generators: out, order: order.clone(), reduced: true }
    }

    pub fn normal_form(&self, p: &Poly<C>) -> Result<Poly<C>, GroebnerError> {
        if self.generators.is_empty() {
            return Ok(p.clone());
        }
        reduce(p, &self.generators, &self.order)
    }

    pub fn contains(&self, p: &Poly<C>) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// `1 ∈ I`.
    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    /// Every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let g = &self.generators;
        for j in 0..g.len() {
            for i in 0..j {
                let s = s_polynomial(&g[i], &g[j], &self.order);
                if !reduce(&s, g, &self.order).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn leading_exponents(&self) -> Vec<ExponentVector> {
        self.generators.iter().map(|g| g.leading_term(&self.order).unwrap().0).collect()
    }
}

/// Reduced Gröbner basis in one call.
pub fn reduced_basis<C: Field>(generators: &[Poly<C>], order: &MonomialOrder) -> Result<GroebnerBasis<C>, GroebnerError> {
    Ok(buchberger(generators, order)?.reduce_basis())
}

/// Total degree of the normal form of `p`.
pub fn deg_v<C: Field>(p: &Poly<C>, basis: &GroebnerBasis<C>) -> Result<Degree, GroebnerError> {
    Ok(basis.normal_form(p)?.degree())
}

/// Generators of `I ∩ k[remaining variables]`, with `vars` eliminated.
pub fn eliminate<C: Field>(generators: &[Poly<C>], vars: &[usize], budget: usize) -> Result<Vec<Poly<C>>, GroebnerError> {
    let n = generators.first().map_or(0, |g| g.arity());
    let order = MonomialOrder::eliminating(vars, n);
    let gb = buchberger_with_budget(generators, &order, budget)?.reduce_basis();
    Ok(gb.generators.into_iter().filter(|g| !vars.iter().any(|&v| g.depends_on(v))).collect())
}

/// Orders polynomials by increasing total degree, then by leading term.
pub(crate) fn by_degree<C: Field>(a: &Poly<C>, b: &Poly<C>, order: &MonomialOrder) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        let la = a.leading_exponent(order);
        let lb = b.leading_exponent(order);
        match (la, lb) {
            (Some(x), Some(y)) => order.cmp(x, y),
            _ => Ordering::Equal,
        }
    })
}
