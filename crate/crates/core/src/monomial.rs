//! Exponent vectors, polynomial degrees and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::PolyError;

/// Multi-index `α = (α_1, ..., α_N)` with its cached total degree `|α|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector {
    exps: Vec<u32>,
    total: u32,
}

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        let total = exps.iter().sum();
        ExponentVector { exps, total }
    }

    pub fn zero(arity: usize) -> Self {
        ExponentVector {
            exps: vec![0; arity],
            total: 0,
        }
    }

    pub fn unit(arity: usize, var: usize) -> Self {
        let mut exps = vec![0; arity];
        exps[var] = 1;
        ExponentVector { exps, total: 1 }
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.total
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn get(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn is_constant(&self) -> bool {
        self.total == 0
    }

    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.arity(), other.arity());
        ExponentVector {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            total: self.total + other.total,
        }
    }

    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.total <= other.total && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient(&self, other: &ExponentVector) -> Option<ExponentVector> {
        if !self.divides(other) {
            return None;
        }
        Some(ExponentVector::new(
            other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        ))
    }

    pub fn lcm(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &ExponentVector) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub(crate) fn with(&self, var: usize, e: u32) -> ExponentVector {
        let mut exps = self.exps.clone();
        exps[var] = e;
        ExponentVector::new(exps)
    }

    pub(crate) fn remove(&self, var: usize) -> ExponentVector {
        let mut exps = self.exps.clone();
        exps.remove(var);
        ExponentVector::new(exps)
    }

    pub(crate) fn push(&self, e: u32) -> ExponentVector {
        let mut exps = self.exps.clone();
        exps.push(e);
        ExponentVector::new(exps)
    }
}

/// Total degree of a polynomial. The zero polynomial has degree
/// `NegInfinity`, which sorts below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    /// Total degree first, ties broken lexicographically: at the first
    /// variable (in precedence order) where the exponents differ, the larger
    /// exponent wins.
    GradedLex,
    /// Total degree first, ties broken by the last variable (in precedence
    /// order) where the exponents differ: the smaller exponent wins.
    Grevlex,
    /// Block order: the first `block` variables in precedence order are
    /// compared first (graded-lex on that block), the remaining variables
    /// break ties with grevlex. Every monomial involving the block exceeds
    /// every monomial free of it.
    Elimination { block: usize },
}

impl OrderKind {
    pub fn name(&self) -> &'static str {
        match self {
            OrderKind::GradedLex => "grlex",
            OrderKind::Grevlex => "grevlex",
            OrderKind::Elimination { .. } => "elimination",
        }
    }
}

/// A monomial order together with the variable precedence it uses.
/// `precedence[0]` is the most significant variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
}

impl MonomialOrder {
    /// Precedence follows declaration order.
    pub fn new(kind: OrderKind, arity: usize) -> Self {
        MonomialOrder {
            kind,
            precedence: (0..arity).collect(),
        }
    }

    pub fn graded_lex(arity: usize) -> Self {
        Self::new(OrderKind::GradedLex, arity)
    }

    pub fn grevlex(arity: usize) -> Self {
        Self::new(OrderKind::Grevlex, arity)
    }

    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Result<Self, PolyError> {
        let mut seen = vec![false; precedence.len()];
        for &v in &precedence {
            if v >= seen.len() || seen[v] {
                return Err(PolyError::InvalidPermutation(precedence));
            }
            seen[v] = true;
        }
        if let OrderKind::Elimination { block } = kind {
            if block > precedence.len() {
                return Err(PolyError::InvalidPermutation(precedence));
            }
        }
        Ok(MonomialOrder { kind, precedence })
    }

    /// Elimination order that puts the listed variables in the leading block.
    pub fn eliminating(vars: &[usize], arity: usize) -> Self {
        let mut precedence: Vec<usize> = vars.to_vec();
        precedence.extend((0..arity).filter(|v| !vars.contains(v)));
        MonomialOrder {
            kind: OrderKind::Elimination { block: vars.len() },
            precedence,
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn arity(&self) -> usize {
        self.precedence.len()
    }

    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Result<Ordering, PolyError> {
        if a.arity() != self.arity() || b.arity() != self.arity() {
            return Err(PolyError::ArityMismatch {
                expected: self.arity(),
                found: if a.arity() != self.arity() { a.arity() } else { b.arity() },
            });
        }
        Ok(self.cmp(a, b))
    }

    /// Infallible comparison; callers guarantee matching arity.
    pub fn cmp(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        match self.kind {
            OrderKind::GradedLex => graded_lex(&self.precedence, a, b),
            OrderKind::Grevlex => grevlex(&self.precedence, a, b),
            OrderKind::Elimination { block } => {
                let (head, tail) = self.precedence.split_at(block);
                graded_lex(head, a, b).then_with(|| grevlex(tail, a, b))
            }
        }
    }
}

fn partial_degree(vars: &[usize], a: &ExponentVector) -> u32 {
    vars.iter().map(|&v| a.exps[v]).sum()
}

fn graded_lex(vars: &[usize], a: &ExponentVector, b: &ExponentVector) -> Ordering {
    partial_degree(vars, a)
        .cmp(&partial_degree(vars, b))
        .then_with(|| {
            vars.iter()
                .map(|&v| a.exps[v].cmp(&b.exps[v]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
}

fn grevlex(vars: &[usize], a: &ExponentVector, b: &ExponentVector) -> Ordering {
    partial_degree(vars, a)
        .cmp(&partial_degree(vars, b))
        .then_with(|| {
            vars.iter()
                .rev()
                .map(|&v| b.exps[v].cmp(&a.exps[v]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ev(e: &[u32]) -> ExponentVector {
        ExponentVector::new(e.to_vec())
    }

    #[test]
    fn graded_lex_examples() {
        let o = MonomialOrder::graded_lex(2);
        assert_eq!(o.cmp(&ev(&[1, 2]), &ev(&[3, 0])), Ordering::Less);
        assert_eq!(o.cmp(&ev(&[0, 0]), &ev(&[1, 0])), Ordering::Less);
        let o3 = MonomialOrder::graded_lex(3);
        assert_eq!(o3.cmp(&ev(&[2, 1, 0]), &ev(&[2, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn grevlex_differs_from_graded_lex() {
        // x*z vs y^2 in three variables: grlex says x*z > y^2, grevlex says y^2 > x*z.
        let (xz, yy) = (ev(&[1, 0, 1]), ev(&[0, 2, 0]));
        assert_eq!(MonomialOrder::graded_lex(3).cmp(&xz, &yy), Ordering::Greater);
        assert_eq!(MonomialOrder::grevlex(3).cmp(&xz, &yy), Ordering::Less);
    }

    #[test]
    fn precedence_swaps_variables() {
        let o = MonomialOrder::with_precedence(OrderKind::GradedLex, vec![1, 0]).unwrap();
        assert_eq!(o.cmp(&ev(&[0, 4]), &ev(&[1, 3])), Ordering::Greater);
        assert!(MonomialOrder::with_precedence(OrderKind::GradedLex, vec![0, 0]).is_err());
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let o = MonomialOrder::graded_lex(2);
        assert!(o.compare(&ev(&[1]), &ev(&[1, 0])).is_err());
    }

    #[test]
    fn elimination_order_eliminates() {
        let o = MonomialOrder::eliminating(&[1], 2);
        // anything with y beats any pure-x monomial
        assert_eq!(o.cmp(&ev(&[0, 1]), &ev(&[9, 0])), Ordering::Greater);
    }

    fn arb_order(n: usize) -> impl Strategy<Value = MonomialOrder> {
        (0..3usize, Just((0..n).collect::<Vec<_>>()).prop_shuffle(), 0..=n).prop_map(
            move |(k, perm, block)| {
                let kind = match k {
                    0 => OrderKind::GradedLex,
                    1 => OrderKind::Grevlex,
                    _ => OrderKind::Elimination { block },
                };
                MonomialOrder::with_precedence(kind, perm).unwrap()
            },
        )
    }

    fn arb_ev(n: usize) -> impl Strategy<Value = ExponentVector> {
        proptest::collection::vec(0u32..5, n).prop_map(ExponentVector::new)
    }

    proptest! {
        #[test]
        fn order_axioms(o in arb_order(3), a in arb_ev(3), b in arb_ev(3), c in arb_ev(3)) {
            // totality and antisymmetry
            let ab = o.cmp(&a, &b);
            prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            // transitivity
            if ab != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
            }
            // multiplicative compatibility
            prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), ab);
            // 1 is minimal
            prop_assert_ne!(o.cmp(&ExponentVector::zero(3), &a), Ordering::Greater);
        }
    }

    #[test]
    fn well_founded_on_bounded_degree() {
        // Every descending chain in a finite set terminates: check the sort is
        // consistent (strict total order) on all monomials of degree <= 3.
        let mut all = Vec::new();
        for a in 0..4 {
            for b in 0..4 - a {
                for c in 0..4 - a - b {
                    all.push(ev(&[a, b, c]));
                }
            }
        }
        for kind in [OrderKind::GradedLex, OrderKind::Grevlex] {
            let o = MonomialOrder::new(kind, 3);
            let mut v = all.clone();
            v.sort_by(|a, b| o.cmp(a, b));
            assert_eq!(v[0], ExponentVector::zero(3));
            for w in v.windows(2) {
                assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Less);
            }
        }
    }
}
