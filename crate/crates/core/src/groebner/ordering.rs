use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::poly::{Slot, VarContext};
use crate::weights::WeightSystem;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    /// Weighted degree, ties broken reverse-lexicographically.
    WeightedGrevlex,
    Lex,
    /// Monomials involving any block slot dominate those that do not;
    /// within equal block degree, weighted grevlex on all slots.
    Elimination { block: Vec<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModuleOrder {
    PositionOverTerm,
    TermOverPosition,
}

/// A global monomial ordering on the slots of a context, extended to free
/// modules. Lower positions are larger.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrdering {
    kind: OrderKind,
    weights: Vec<u64>,
    module: ModuleOrder,
}

impl MonomialOrdering {
    pub fn new(kind: OrderKind, weights: Vec<u64>, module: ModuleOrder) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "ordering weights must be positive");
        if let OrderKind::Elimination { block } = &kind {
            assert!(block.iter().all(|&s| s < weights.len()));
        }
        MonomialOrdering { kind, weights, module }
    }

    pub fn grevlex(nslots: usize) -> Self {
        Self::new(OrderKind::WeightedGrevlex, vec![1; nslots], ModuleOrder::TermOverPosition)
    }

    pub fn lex(nslots: usize) -> Self {
        Self::new(OrderKind::Lex, vec![1; nslots], ModuleOrder::TermOverPosition)
    }

    /// Slot weights taken from `ws`; the parameter slot gets weight
    /// `max(1, degree_of_t)` so the ordering stays global.
    pub fn context_weights(ctx: &VarContext, ws: &WeightSystem) -> Vec<u64> {
        (0..ctx.num_slots())
            .map(|s| match ctx.slot(s) {
                Slot::Holomorphic(i) | Slot::Conjugate(i) => ws.weight(i) as u64,
                Slot::Parameter => ws.degree_of_t().max(1) as u64,
            })
            .collect()
    }

    pub fn wgrevlex_for(ctx: &VarContext, ws: &WeightSystem) -> Self {
        Self::new(OrderKind::WeightedGrevlex, Self::context_weights(ctx, ws), ModuleOrder::TermOverPosition)
    }

    pub fn grevlex_for(ctx: &VarContext) -> Self {
        Self::grevlex(ctx.num_slots())
    }

    pub fn lex_for(ctx: &VarContext) -> Self {
        Self::lex(ctx.num_slots())
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn module_order(&self) -> ModuleOrder {
        self.module
    }

    pub fn nslots(&self) -> usize {
        self.weights.len()
    }

    pub fn with_module_order(mut self, module: ModuleOrder) -> Self {
        self.module = module;
        self
    }

    /// Appends `k` slots of weight one. With `eliminate`, the new slots
    /// form the elimination block (replacing any previous kind).
    pub fn extended(&self, k: usize, eliminate: bool) -> Self {
        let n = self.weights.len();
        let mut weights = self.weights.clone();
        weights.extend(std::iter::repeat_n(1, k));
        let kind = if eliminate {
            OrderKind::Elimination { block: (n..n + k).collect() }
        } else {
            self.kind.clone()
        };
        MonomialOrdering { kind, weights, module: self.module }
    }

    fn wdeg(&self, a: &[u32]) -> u64 {
        a.iter().zip(&self.weights).map(|(&e, &w)| e as u64 * w).sum()
    }

    fn revlex(a: &[u32], b: &[u32]) -> Ordering {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    }

    pub fn cmp_monomials(&self, a: &[u32], b: &[u32]) -> Ordering {
        match &self.kind {
            OrderKind::Lex => a.cmp(b),
            OrderKind::WeightedGrevlex => {
                self.wdeg(a).cmp(&self.wdeg(b)).then_with(|| Self::revlex(a, b))
            }
            OrderKind::Elimination { block } => {
                let ba: u64 = block.iter().map(|&s| a[s] as u64 * self.weights[s]).sum();
                let bb: u64 = block.iter().map(|&s| b[s] as u64 * self.weights[s]).sum();
                ba.cmp(&bb)
                    .then_with(|| self.wdeg(a).cmp(&self.wdeg(b)))
                    .then_with(|| Self::revlex(a, b))
            }
        }
    }

    pub fn cmp_terms(&self, pa: u32, a: &[u32], pb: u32, b: &[u32]) -> Ordering {
        match self.module {
            ModuleOrder::PositionOverTerm => pb.cmp(&pa).then_with(|| self.cmp_monomials(a, b)),
            ModuleOrder::TermOverPosition => self.cmp_monomials(a, b).then_with(|| pb.cmp(&pa)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrdering::grevlex(3);
        // x*z < y^2 in grevlex
        assert_eq!(o.cmp_monomials(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(o.cmp_monomials(&[0, 0, 0], &[0, 0, 1]), Ordering::Less);
        let w = MonomialOrdering::new(OrderKind::WeightedGrevlex, vec![7, 5, 7], ModuleOrder::TermOverPosition);
        assert_eq!(w.cmp_monomials(&[0, 1, 0], &[1, 0, 0]), Ordering::Less);
    }

    #[test]
    fn elimination_dominates() {
        let o = MonomialOrdering::grevlex(2).extended(1, true);
        assert_eq!(o.cmp_monomials(&[0, 0, 1], &[9, 9, 0]), Ordering::Greater);
    }

    #[test]
    fn module_orders() {
        let pot = MonomialOrdering::grevlex(1).with_module_order(ModuleOrder::PositionOverTerm);
        assert_eq!(pot.cmp_terms(0, &[0], 1, &[5]), Ordering::Greater);
        let top = MonomialOrdering::grevlex(1);
        assert_eq!(top.cmp_terms(0, &[0], 1, &[5]), Ordering::Less);
        assert_eq!(top.cmp_terms(0, &[2], 1, &[2]), Ordering::Greater);
    }
}
