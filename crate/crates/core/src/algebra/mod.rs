//! Cost algebras for QoS routing.
//!
//! A cost algebra pairs a carrier of metric tuples with two operations:
//! `combine` composes costs along a route (series composition) and `choose`
//! selects the preferable of two costs. `choose` induces the preference
//! order: `a` is at most as good as `b` exactly when `choose(a, b) = b`.
//! Quality metrics differ in how they compose — delay adds up, bandwidth is
//! a bottleneck, loss probability multiplies — so each tuple dimension
//! carries its own [`DimKind`].

mod cut;
mod frontier;
mod laws;
mod value;

pub use cut::cut;
pub use frontier::{Frontier, FrontierEntry};
pub use laws::{law_check, LawConfig, LawIncident, LawReport, StructureReport};
pub use value::{Metric, MultiCost, Rational};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("cost arity {got} does not match the {want} declared dimensions")]
    ArityMismatch { want: usize, got: usize },
    #[error("value out of carrier range for dimension {dim} ({kind})")]
    OutOfCarrier { dim: usize, kind: DimKind },
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("weight profile invalid: {0}")]
    BadProfile(String),
}

/// How one metric dimension behaves under series and parallel composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DimKind {
    /// Additive, smaller is better (delay, hop count, money). Combine is
    /// saturating addition, choose is min, zero is infinity, one is 0.
    Weighted,
    /// Concave, larger is better (bandwidth). Combine is min, choose is max,
    /// zero is 0, one is infinity.
    Bandwidth,
    /// Multiplicative on [0, 1], larger is better (delivery probability).
    Probabilistic,
    /// {0, 1} with and/or; 1 is better.
    Boolean,
}

impl DimKind {
    pub fn parse(token: &str) -> Option<DimKind> {
        match token {
            "weighted" => Some(DimKind::Weighted),
            "bandwidth" => Some(DimKind::Bandwidth),
            "probabilistic" => Some(DimKind::Probabilistic),
            "boolean" => Some(DimKind::Boolean),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DimKind::Weighted => "weighted",
            DimKind::Bandwidth => "bandwidth",
            DimKind::Probabilistic => "probabilistic",
            DimKind::Boolean => "boolean",
        }
    }

    /// Unit of `combine`, absorbing for `choose`: the best possible value.
    pub fn one(self) -> Metric {
        match self {
            DimKind::Weighted => Metric::from_int(0),
            DimKind::Bandwidth => Metric::Inf,
            DimKind::Probabilistic => Metric::from_int(1),
            DimKind::Boolean => Metric::from_int(1),
        }
    }

    /// Unit of `choose`, absorbing for `combine`: the worst possible value.
    pub fn zero(self) -> Metric {
        match self {
            DimKind::Weighted => Metric::Inf,
            DimKind::Bandwidth => Metric::from_int(0),
            DimKind::Probabilistic => Metric::from_int(0),
            DimKind::Boolean => Metric::from_int(0),
        }
    }

    /// Series composition of one dimension.
    pub fn combine(self, a: &Metric, b: &Metric) -> Metric {
        match self {
            DimKind::Weighted => a.saturating_add(b),
            DimKind::Bandwidth => a.num_min(b),
            DimKind::Probabilistic => a.saturating_mul(b),
            DimKind::Boolean => a.num_min(b),
        }
    }

    /// Preferable of two values in this dimension.
    pub fn choose(self, a: &Metric, b: &Metric) -> Metric {
        match self {
            DimKind::Weighted => a.num_min(b),
            DimKind::Bandwidth | DimKind::Probabilistic | DimKind::Boolean => a.num_max(b),
        }
    }

    /// Worst of two values; used when several links collapse into one
    /// hyperarc and the bundle is only as good as its weakest member.
    pub fn parallel_worst(self, a: &Metric, b: &Metric) -> Metric {
        match self {
            DimKind::Weighted => a.num_max(b),
            DimKind::Bandwidth | DimKind::Probabilistic | DimKind::Boolean => a.num_min(b),
        }
    }

    /// True when `a` is strictly preferable to `b` in this dimension.
    fn strictly_better(self, a: &Metric, b: &Metric) -> bool {
        match self {
            DimKind::Weighted => a.num_cmp(b) == std::cmp::Ordering::Less,
            _ => a.num_cmp(b) == std::cmp::Ordering::Greater,
        }
    }

    /// Whether `v` lies in the dimension's carrier.
    pub fn admits(self, v: &Metric) -> bool {
        match self {
            DimKind::Weighted | DimKind::Bandwidth => match v {
                Metric::Inf => true,
                Metric::Fin(x) => *x >= Rational::from_integer(0),
            },
            DimKind::Probabilistic => match v {
                Metric::Inf => false,
                Metric::Fin(x) => {
                    *x >= Rational::from_integer(0) && *x <= Rational::from_integer(1)
                }
            },
            DimKind::Boolean => {
                *v == Metric::from_int(0) || *v == Metric::from_int(1)
            }
        }
    }

    /// Whether combine on this dimension is cancellative on finite values
    /// (needed for the scalarized product order to distribute).
    pub fn cancellative_combine(self) -> bool {
        matches!(self, DimKind::Weighted | DimKind::Probabilistic)
    }
}

impl fmt::Display for DimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One declared dimension of a cost tuple: a name for queries and reports,
/// the kind, and an optional informational unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimSpec {
    pub name: String,
    pub kind: DimKind,
    pub unit: Option<String>,
}

impl DimSpec {
    pub fn new(name: impl Into<String>, kind: DimKind) -> Self {
        DimSpec { name: name.into(), kind, unit: None }
    }
}

/// Result of comparing two costs in the induced preference order.
/// `Better` means the first argument is preferable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostOrdering {
    Better,
    Worse,
    Equal,
    Incomparable,
}

impl CostOrdering {
    pub fn flip(self) -> CostOrdering {
        match self {
            CostOrdering::Better => CostOrdering::Worse,
            CostOrdering::Worse => CostOrdering::Better,
            other => other,
        }
    }
}

/// Per-dimension importance weights `k_i` with slacks `eps_i`, used both to
/// totally order tuples by weighted scalarization and to carve frontiers
/// with [`cut`]. Requires `k_i - eps_i >= 0` on every dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightProfile {
    pub weights: Vec<Rational>,
    pub slacks: Vec<Rational>,
}

impl WeightProfile {
    pub fn new(weights: Vec<Rational>, slacks: Vec<Rational>) -> Result<Self, AlgebraError> {
        if weights.len() != slacks.len() {
            return Err(AlgebraError::BadProfile(format!(
                "{} weights but {} slacks",
                weights.len(),
                slacks.len()
            )));
        }
        let zero = Rational::from_integer(0);
        for (i, (k, e)) in weights.iter().zip(&slacks).enumerate() {
            if *k < zero || *e < zero || *k - *e < zero {
                return Err(AlgebraError::BadProfile(format!(
                    "dimension {i}: need k >= eps >= 0, got k={k}, eps={e}"
                )));
            }
        }
        Ok(WeightProfile { weights, slacks })
    }

    /// Unit weights, zero slack.
    pub fn uniform(dims: usize) -> Self {
        WeightProfile {
            weights: vec![Rational::from_integer(1); dims],
            slacks: vec![Rational::from_integer(0); dims],
        }
    }

    pub fn dims(&self) -> usize {
        self.weights.len()
    }
}

/// How tuples are ordered: by componentwise dominance (the product order,
/// partial) or by a weighted scalarization (total on distinct scalars).
#[derive(Debug, Clone, PartialEq)]
pub enum TupleOrder {
    Pointwise,
    Scalarized(WeightProfile),
}

/// How weighted dimensions merge when several links form one hyperarc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParallelRule {
    /// Worst member value (the default).
    #[default]
    Worst,
    /// Sum over members, for metrics billed per link.
    Sum,
}

/// A concrete cost algebra: the dimension list plus the active tuple order
/// and the parallel-composition rule for weighted dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct SemiringSpec {
    pub dims: Vec<DimSpec>,
    pub order: TupleOrder,
    pub parallel: ParallelRule,
}

impl SemiringSpec {
    pub fn new(dims: Vec<DimSpec>) -> Self {
        SemiringSpec { dims, order: TupleOrder::Pointwise, parallel: ParallelRule::Worst }
    }

    pub fn from_kinds(kinds: &[DimKind]) -> Self {
        let dims = kinds
            .iter()
            .enumerate()
            .map(|(i, k)| {
                let same_kind = kinds.iter().filter(|o| **o == *k).count();
                let name = if same_kind == 1 { k.name().to_string() } else { format!("{}{}", k.name(), i) };
                DimSpec { name, kind: *k, unit: None }
            })
            .collect();
        SemiringSpec::new(dims)
    }

    pub fn dims(&self) -> usize {
        self.dims.len()
    }

    pub fn kind(&self, dim: usize) -> DimKind {
        self.dims[dim].kind
    }

    pub fn dim_index(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.dims.iter().position(|d| d.name == name) {
            return Some(i);
        }
        name.parse::<usize>().ok().filter(|i| *i < self.dims.len())
    }

    /// Unit of combine (the best cost).
    pub fn one(&self) -> MultiCost {
        MultiCost::new(self.dims.iter().map(|d| d.kind.one()).collect())
    }

    /// Absorbing element of combine (the unreachable cost).
    pub fn zero(&self) -> MultiCost {
        MultiCost::new(self.dims.iter().map(|d| d.kind.zero()).collect())
    }

    pub fn check_arity(&self, c: &MultiCost) -> Result<(), AlgebraError> {
        if c.len() != self.dims() {
            return Err(AlgebraError::ArityMismatch { want: self.dims(), got: c.len() });
        }
        Ok(())
    }

    /// Validates that every component lies in its dimension's carrier.
    pub fn check_carrier(&self, c: &MultiCost) -> Result<(), AlgebraError> {
        self.check_arity(c)?;
        for (i, (d, v)) in self.dims.iter().zip(c.values()).enumerate() {
            if !d.kind.admits(v) {
                return Err(AlgebraError::OutOfCarrier { dim: i, kind: d.kind });
            }
        }
        Ok(())
    }

    /// Series composition: per-dimension multiplicative operation.
    pub fn combine(&self, a: &MultiCost, b: &MultiCost) -> MultiCost {
        debug_assert_eq!(a.len(), self.dims());
        debug_assert_eq!(b.len(), self.dims());
        MultiCost::new(
            self.dims
                .iter()
                .zip(a.values().iter().zip(b.values()))
                .map(|(d, (x, y))| d.kind.combine(x, y))
                .collect(),
        )
    }

    /// Preference selection. Under the pointwise order this is the
    /// componentwise least upper bound and may return a tuple distinct from
    /// both arguments; under a scalarized order the better-scalar argument
    /// wins and exact scalar ties fall back to the componentwise result.
    pub fn choose(&self, a: &MultiCost, b: &MultiCost) -> MultiCost {
        match &self.order {
            TupleOrder::Pointwise => self.choose_pointwise(a, b),
            TupleOrder::Scalarized(profile) => {
                match self.scalar_cmp(a, b, profile) {
                    std::cmp::Ordering::Less => a.clone(),
                    std::cmp::Ordering::Greater => b.clone(),
                    std::cmp::Ordering::Equal => self.choose_pointwise(a, b),
                }
            }
        }
    }

    fn choose_pointwise(&self, a: &MultiCost, b: &MultiCost) -> MultiCost {
        MultiCost::new(
            self.dims
                .iter()
                .zip(a.values().iter().zip(b.values()))
                .map(|(d, (x, y))| d.kind.choose(x, y))
                .collect(),
        )
    }

    /// Compares `a` against `b`; `Better` means `a` is preferable.
    pub fn compare(&self, a: &MultiCost, b: &MultiCost) -> CostOrdering {
        match &self.order {
            TupleOrder::Pointwise => self.compare_pointwise(a, b),
            TupleOrder::Scalarized(profile) => {
                if a == b {
                    return CostOrdering::Equal;
                }
                match self.scalar_cmp(a, b, profile) {
                    std::cmp::Ordering::Less => CostOrdering::Better,
                    std::cmp::Ordering::Greater => CostOrdering::Worse,
                    // Distinct tuples with equal scalarization: neither wins
                    // the choose, so they are incomparable.
                    std::cmp::Ordering::Equal => CostOrdering::Incomparable,
                }
            }
        }
    }

    fn compare_pointwise(&self, a: &MultiCost, b: &MultiCost) -> CostOrdering {
        let mut a_wins = false;
        let mut b_wins = false;
        for (d, (x, y)) in self.dims.iter().zip(a.values().iter().zip(b.values())) {
            if d.kind.strictly_better(x, y) {
                a_wins = true;
            } else if d.kind.strictly_better(y, x) {
                b_wins = true;
            }
        }
        match (a_wins, b_wins) {
            (false, false) => CostOrdering::Equal,
            (true, false) => CostOrdering::Better,
            (false, true) => CostOrdering::Worse,
            (true, true) => CostOrdering::Incomparable,
        }
    }

    /// Scalar comparison under a profile: `Less` means the first argument is
    /// preferable. Weighted dimensions compare by ascending weighted sum;
    /// probabilistic dimensions by descending product.
    fn scalar_cmp(
        &self,
        a: &MultiCost,
        b: &MultiCost,
        profile: &WeightProfile,
    ) -> std::cmp::Ordering {
        let sa = self.scalarize_with(a, profile);
        let sb = self.scalarize_with(b, profile);
        match self.kind(0) {
            DimKind::Weighted => sa.num_cmp(&sb),
            _ => sb.num_cmp(&sa),
        }
    }

    /// Scalarizes a tuple under the active profile. Panics via `expect` when
    /// the spec has no scalarized order; use [`SemiringSpec::scalarize_with`]
    /// to scalarize against an explicit profile.
    pub fn scalarize(&self, c: &MultiCost) -> Metric {
        match &self.order {
            TupleOrder::Scalarized(p) => self.scalarize_with(c, p),
            TupleOrder::Pointwise => {
                panic!("scalarize requires a scalarized order; call ordered_weighted first")
            }
        }
    }

    pub fn scalarize_with(&self, c: &MultiCost, profile: &WeightProfile) -> Metric {
        scalarize(&self.dims, c, &profile.weights)
    }

    /// Builds the totally ordered variant of this spec: tuples compare by
    /// weighted scalarization, with exact ties resolved componentwise.
    /// All dimensions must share one kind whose combine is cancellative;
    /// probabilistic dimensions additionally require unit weights (their
    /// scalarization is the plain product).
    pub fn ordered_weighted(&self, profile: WeightProfile) -> Result<SemiringSpec, AlgebraError> {
        if profile.dims() != self.dims() {
            return Err(AlgebraError::BadProfile(format!(
                "profile has {} dimensions, spec has {}",
                profile.dims(),
                self.dims()
            )));
        }
        let first = self.kind(0);
        if self.dims.iter().any(|d| d.kind != first) {
            return Err(AlgebraError::Unsupported(
                "scalarized order needs all dimensions of the same kind".into(),
            ));
        }
        if !first.cancellative_combine() {
            return Err(AlgebraError::Unsupported(format!(
                "scalarized order needs a cancellative combine; {first} has none"
            )));
        }
        if first == DimKind::Probabilistic {
            let unit = Rational::from_integer(1);
            if profile.weights.iter().any(|w| *w != unit) {
                return Err(AlgebraError::Unsupported(
                    "probabilistic scalarization supports unit weights only".into(),
                ));
            }
        }
        let mut spec = self.clone();
        spec.order = TupleOrder::Scalarized(profile);
        Ok(spec)
    }

    /// A spec induces a total preference order when it has one dimension or
    /// an active scalarized order.
    pub fn is_total_order(&self) -> bool {
        self.dims() == 1 || matches!(self.order, TupleOrder::Scalarized(_))
    }

    /// The same spec with the pointwise order (drops any scalarization).
    pub fn pointwise(&self) -> SemiringSpec {
        let mut spec = self.clone();
        spec.order = TupleOrder::Pointwise;
        spec
    }

    /// Parallel composition of several link costs bundled into one hyperarc:
    /// the worst value per dimension, except that weighted dimensions sum
    /// when the spec says costs are billed per member link.
    pub fn compose_parallel(&self, costs: &[MultiCost]) -> Result<MultiCost, AlgebraError> {
        let mut iter = costs.iter();
        let first = iter
            .next()
            .ok_or_else(|| AlgebraError::Unsupported("parallel composition of no costs".into()))?;
        self.check_arity(first)?;
        let mut acc = first.clone();
        for c in iter {
            self.check_arity(c)?;
            acc = MultiCost::new(
                self.dims
                    .iter()
                    .zip(acc.values().iter().zip(c.values()))
                    .map(|(d, (x, y))| match (d.kind, self.parallel) {
                        (DimKind::Weighted, ParallelRule::Sum) => x.saturating_add(y),
                        _ => d.kind.parallel_worst(x, y),
                    })
                    .collect(),
            );
        }
        Ok(acc)
    }
}

/// Weighted scalarization of a tuple. Weighted dimensions fold to
/// `sum_i w_i * v_i` (infinity absorbs); probabilistic dimensions fold to
/// the product of components. Mixed or concave kinds have no scalarization.
pub(crate) fn scalarize(dims: &[DimSpec], c: &MultiCost, weights: &[Rational]) -> Metric {
    debug_assert_eq!(dims.len(), c.len());
    match dims[0].kind {
        DimKind::Weighted => {
            let mut acc = Metric::from_int(0);
            for ((v, w), _) in c.values().iter().zip(weights).zip(dims) {
                acc = acc.saturating_add(&v.scale(w));
            }
            acc
        }
        DimKind::Probabilistic => {
            let mut acc = Metric::from_int(1);
            for v in c.values() {
                acc = acc.saturating_mul(v);
            }
            acc
        }
        other => panic!("no scalarization for {other} dimensions"),
    }
}
