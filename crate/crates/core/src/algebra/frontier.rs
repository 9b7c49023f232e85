//! Compact non-dominated cost sets.
//!
//! A frontier is the compact form of a downward-closed cost set: only the
//! pairwise-incomparable maxima are stored, each with the solutions that
//! achieve it. Frontiers themselves form a cost algebra — formal union is
//! the choose, pairwise combination the combine — which is what makes
//! Pareto search just another instance of best-cost search.

use super::{CostOrdering, MultiCost, SemiringSpec};

pub const DEFAULT_WITNESS_CAP: usize = 4;

/// One frontier element: a cost and the witnesses that achieve it, kept in
/// ascending witness order and capped to bound memory.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontierEntry<W> {
    pub cost: MultiCost,
    pub witnesses: Vec<W>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Frontier<W> {
    entries: Vec<FrontierEntry<W>>,
    witness_cap: usize,
}

impl<W> Default for Frontier<W> {
    fn default() -> Self {
        Frontier { entries: Vec::new(), witness_cap: DEFAULT_WITNESS_CAP }
    }
}

impl<W: Clone + Ord> Frontier<W> {
    pub fn new() -> Self {
        Frontier::default()
    }

    pub fn with_witness_cap(cap: usize) -> Self {
        Frontier { entries: Vec::new(), witness_cap: cap.max(1) }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[FrontierEntry<W>] {
        &self.entries
    }

    pub fn costs(&self) -> impl Iterator<Item = &MultiCost> {
        self.entries.iter().map(|e| &e.cost)
    }

    pub fn witness_cap(&self) -> usize {
        self.witness_cap
    }

    /// Inserts a cost unless some element is already strictly better;
    /// elements the new cost beats are dropped, and an equal element just
    /// collects the witness. The algebra's zero (no solution) is never
    /// stored. Returns true when the cost set changed.
    pub fn insert(&mut self, spec: &SemiringSpec, cost: MultiCost, witness: W) -> bool {
        if cost == spec.zero() {
            return false;
        }
        let mut i = 0;
        while i < self.entries.len() {
            match spec.compare(&cost, &self.entries[i].cost) {
                CostOrdering::Worse => return false,
                CostOrdering::Equal => {
                    let ws = &mut self.entries[i].witnesses;
                    if let Err(pos) = ws.binary_search(&witness) {
                        if pos < self.witness_cap {
                            ws.insert(pos, witness);
                            ws.truncate(self.witness_cap);
                        }
                    }
                    return false;
                }
                CostOrdering::Better => {
                    self.entries.remove(i);
                }
                CostOrdering::Incomparable => i += 1,
            }
        }
        let entry = FrontierEntry { cost, witnesses: vec![witness] };
        let at = self
            .entries
            .partition_point(|e| e.cost.value_cmp(&entry.cost) == std::cmp::Ordering::Less);
        self.entries.insert(at, entry);
        true
    }

    /// Whether a candidate cost is strictly dominated by some element.
    /// Sound as a pruning test: anything that can only get worse than a
    /// dominated partial cost can never enter the frontier.
    pub fn strictly_dominates(&self, spec: &SemiringSpec, cost: &MultiCost) -> bool {
        self.entries
            .iter()
            .any(|e| spec.compare(&e.cost, cost) == CostOrdering::Better)
    }

    /// Formal union: every element of `other` offered to `self`.
    pub fn union(&mut self, spec: &SemiringSpec, other: &Frontier<W>) {
        for e in &other.entries {
            for w in &e.witnesses {
                self.insert(spec, e.cost.clone(), w.clone());
            }
        }
    }

    /// Pairwise combination of two frontiers, dominance-pruned. Witness
    /// pairs merge through `join`.
    pub fn combine_with<F>(
        spec: &SemiringSpec,
        a: &Frontier<W>,
        b: &Frontier<W>,
        join: F,
    ) -> Frontier<W>
    where
        F: Fn(&W, &W) -> W,
    {
        let mut out = Frontier::with_witness_cap(a.witness_cap.max(b.witness_cap));
        for ea in &a.entries {
            for eb in &b.entries {
                let cost = spec.combine(&ea.cost, &eb.cost);
                for wa in &ea.witnesses {
                    for wb in &eb.witnesses {
                        out.insert(spec, cost.clone(), join(wa, wb));
                    }
                }
            }
        }
        out
    }

    /// Collapses the frontier with choose; the result is the least upper
    /// bound of the element set and need not be an achievable cost.
    pub fn collapse(&self, spec: &SemiringSpec) -> Option<MultiCost> {
        let mut it = self.entries.iter();
        let first = it.next()?.cost.clone();
        Some(it.fold(first, |acc, e| spec.choose(&acc, &e.cost)))
    }

    /// Frontier-level preference: `self` is at most as good as `other` when
    /// every element is dominated by (or equal to) an element of `other`.
    pub fn hoare_leq(&self, spec: &SemiringSpec, other: &Frontier<W>) -> bool {
        self.entries.iter().all(|e| {
            other.entries.iter().any(|o| {
                matches!(
                    spec.compare(&e.cost, &o.cost),
                    CostOrdering::Worse | CostOrdering::Equal
                )
            })
        })
    }

    /// Equality as cost sets (entries are kept canonically sorted).
    pub fn same_costs(&self, other: &Frontier<W>) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.cost == b.cost)
    }
}

impl<W: Clone + Ord> Frontier<W> {
    /// Pairwise combination keeping the left witnesses (useful when the
    /// right side carries no information, e.g. unit frontiers).
    pub fn combine(spec: &SemiringSpec, a: &Frontier<W>, b: &Frontier<W>) -> Frontier<W> {
        Frontier::combine_with(spec, a, b, |wa, _| wa.clone())
    }
}

impl Frontier<()> {
    /// The unit frontier `{one}` of the frontier algebra.
    pub fn unit(spec: &SemiringSpec) -> Frontier<()> {
        let mut f = Frontier::new();
        f.insert(spec, spec.one(), ());
        f
    }
}
