//! Frontier reduction by a weight-interval cut.
//!
//! A tuple is discarded when some other frontier member scalarizes strictly
//! better at every weight vector sampled from the per-dimension intervals
//! `[k_i - eps_i, k_i]`. A tuple that is scalar-optimal at any sampled
//! vector is never beaten everywhere, so the scalar-best set always
//! survives the cut.

use super::{scalarize, AlgebraError, DimKind, Frontier, Rational, SemiringSpec, WeightProfile};

/// Samples `grid` evenly spaced points per dimension across
/// `[k_i - eps_i, k_i]`, endpoints included, and keeps a tuple unless some
/// other tuple is strictly better at every sampled weight vector.
/// Result is always a subset of the input; weighted dimensions only.
pub fn cut<W: Clone + Ord>(
    spec: &SemiringSpec,
    frontier: &Frontier<W>,
    profile: &WeightProfile,
    grid: usize,
) -> Result<Frontier<W>, AlgebraError> {
    if spec.dims.iter().any(|d| d.kind != DimKind::Weighted) {
        return Err(AlgebraError::Unsupported(
            "the cut function is defined for weighted dimensions".into(),
        ));
    }
    if profile.dims() != spec.dims() {
        return Err(AlgebraError::BadProfile(format!(
            "profile has {} dimensions, spec has {}",
            profile.dims(),
            spec.dims()
        )));
    }
    let grid = grid.max(1);
    let axes: Vec<Vec<Rational>> = profile
        .weights
        .iter()
        .zip(&profile.slacks)
        .map(|(k, e)| sample_axis(*k, *e, grid))
        .collect();
    let vectors = cartesian(&axes);

    let mut out = Frontier::with_witness_cap(frontier.witness_cap());
    for candidate in frontier.entries() {
        let beaten_everywhere = frontier.entries().iter().any(|rival| {
            rival.cost != candidate.cost
                && vectors.iter().all(|w| {
                    let rv = scalarize(&spec.dims, &rival.cost, w);
                    let cv = scalarize(&spec.dims, &candidate.cost, w);
                    rv.num_cmp(&cv) == std::cmp::Ordering::Less
                })
        });
        if !beaten_everywhere {
            for w in &candidate.witnesses {
                out.insert(spec, candidate.cost.clone(), w.clone());
            }
        }
    }
    Ok(out)
}

fn sample_axis(k: Rational, eps: Rational, grid: usize) -> Vec<Rational> {
    let lo = k - eps;
    if grid == 1 || eps == Rational::from_integer(0) {
        return vec![k];
    }
    let steps = Rational::from_integer((grid - 1) as i64);
    let mut out = Vec::with_capacity(grid);
    for j in 0..grid {
        let t = Rational::from_integer(j as i64) / steps;
        let w = lo + eps * t;
        if !out.contains(&w) {
            out.push(w);
        }
    }
    out
}

fn cartesian(axes: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = vec![vec![]];
    for axis in axes {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for prefix in &out {
            for v in axis {
                let mut row = prefix.clone();
                row.push(*v);
                next.push(row);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MultiCost;

    fn spec() -> SemiringSpec {
        SemiringSpec::from_kinds(&[DimKind::Weighted, DimKind::Weighted])
    }

    fn frontier(costs: &[[i64; 2]]) -> Frontier<u32> {
        let s = spec();
        let mut f = Frontier::new();
        for (i, c) in costs.iter().enumerate() {
            f.insert(&s, MultiCost::from_ints(c), i as u32);
        }
        f
    }

    #[test]
    fn beaten_everywhere_is_cut() {
        // At w=(1,1) the scalars are 6, 6, 7: the last tuple loses to both
        // despite being pairwise incomparable with them.
        let s = spec();
        let f = frontier(&[[1, 5], [5, 1], [3, 4]]);
        assert_eq!(f.len(), 3, "all three are pairwise incomparable");
        let out = cut(&s, &f, &WeightProfile::uniform(2), 5).unwrap();
        let costs: Vec<_> = out.costs().cloned().collect();
        assert_eq!(costs, vec![MultiCost::from_ints(&[1, 5]), MultiCost::from_ints(&[5, 1])]);
        // A dominated tuple never even reaches the cut: the frontier
        // compacts it on insert, and the cut keeps the survivors.
        let g = frontier(&[[1, 5], [5, 1], [10, 10]]);
        assert_eq!(g.len(), 2);
        let out = cut(&s, &g, &WeightProfile::uniform(2), 5).unwrap();
        assert!(out.same_costs(&g));
    }

    #[test]
    fn wide_slack_keeps_everything() {
        // With eps = k the intervals reach weight 0 on each axis; at the
        // corner vectors every tuple wins somewhere, so nothing is beaten
        // everywhere.
        let s = spec();
        let f = frontier(&[[1, 5], [5, 1], [3, 4]]);
        let profile = WeightProfile::new(
            vec![Rational::from_integer(1); 2],
            vec![Rational::from_integer(1); 2],
        )
        .unwrap();
        let out = cut(&s, &f, &profile, 3).unwrap();
        assert!(out.same_costs(&f));
    }

    #[test]
    fn empty_frontier_cuts_to_empty() {
        let s = spec();
        let f: Frontier<u32> = Frontier::new();
        assert!(cut(&s, &f, &WeightProfile::uniform(2), 5).unwrap().is_empty());
    }

    #[test]
    fn cut_is_idempotent_and_shrinking() {
        let s = spec();
        let f = frontier(&[[1, 9], [2, 7], [4, 4], [7, 2], [9, 1], [5, 5]]);
        let p = WeightProfile::new(
            vec![Rational::from_integer(2), Rational::from_integer(1)],
            vec![Rational::new(1, 2), Rational::from_integer(0)],
        )
        .unwrap();
        let once = cut(&s, &f, &p, 5).unwrap();
        let twice = cut(&s, &once, &p, 5).unwrap();
        assert!(once.len() <= f.len());
        for c in once.costs() {
            assert!(f.costs().any(|fc| fc == c), "cut invented {c}");
        }
        assert!(twice.same_costs(&once));
    }

    #[test]
    fn rejects_non_weighted_dimensions() {
        let s = SemiringSpec::from_kinds(&[DimKind::Bandwidth, DimKind::Weighted]);
        let f: Frontier<u32> = Frontier::new();
        assert!(cut(&s, &f, &WeightProfile::uniform(2), 5).is_err());
    }
}
