//! Exact shrinking of the hard-core chain complex before rank computations.
//!
//! For a site `s`, pairing `c` with `c + s` whenever `c` avoids `s` and its
//! neighbours is an acyclic matching. Its critical cells are the
//! configurations that avoid `s` and occupy at least one neighbour of `s`.
//! Adding a site never leaves that set, so the Morse differential is just the
//! restriction of `Q` and the cohomology is unchanged, sector by sector.
//! Repeating this for pairwise non-adjacent pivots shrinks the complex again.

use crate::error::{Error, Result};
use crate::hilbert::{neighbor_masks, Config, GradedSpace};
use crate::lattice::LatticeGraph;

/// Greedy independent set of pivots, smallest degree first.
pub fn choose_pivots(g: &LatticeGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n_sites()).collect();
    order.sort_by_key(|&i| (g.degree(i), i));
    let mut blocked = vec![false; g.n_sites()];
    let mut pivots = Vec::new();
    for i in order {
        if blocked[i] {
            continue;
        }
        pivots.push(i);
        blocked[i] = true;
        for &j in g.neighbors(i) {
            blocked[j] = true;
        }
    }
    pivots.sort_unstable();
    pivots
}

/// Critical cells of the matching along `pivots`, graded like the full
/// space (`n_sectors` sectors, trailing ones possibly empty).
pub fn reduced_space(g: &LatticeGraph, pivots: &[usize], n_sectors: usize) -> Result<GradedSpace> {
    let masks = neighbor_masks(g)?;
    let n = g.n_sites();
    let mut pivot_mask: Config = 0;
    for &s in pivots {
        if s >= n {
            return Err(Error::InvalidArgument(format!("pivot {s} is not a site")));
        }
        if pivot_mask & (1 << s) != 0 || masks[s] & pivot_mask != 0 {
            return Err(Error::InvalidArgument(format!(
                "pivot {s} repeats or neighbours another pivot"
            )));
        }
        pivot_mask |= 1 << s;
    }
    let mut bases: Vec<Vec<Config>> = vec![Vec::new(); n_sectors.max(1)];
    // an isolated pivot has no critical cells at all
    if pivots.iter().any(|&s| masks[s] == 0) {
        return Ok(GradedSpace::from_bases(n, bases));
    }
    // deadline[i]: pivots whose lowest neighbour is i
    let mut deadline: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &s in pivots {
        deadline[masks[s].trailing_zeros() as usize].push(s);
    }
    // same traversal as the full enumeration, so bases come out sorted
    let mut stack: Vec<(usize, Config, Config)> = vec![(n, 0, pivot_mask)];
    while let Some((k, c, forbidden)) = stack.pop() {
        if k == 0 {
            let f = c.count_ones() as usize;
            if bases.len() <= f {
                bases.resize(f + 1, Vec::new());
            }
            bases[f].push(c);
            continue;
        }
        let i = k - 1;
        let bit: Config = 1 << i;
        if forbidden & bit == 0 {
            stack.push((i, c | bit, forbidden | masks[i]));
        }
        if deadline[i].iter().all(|&s| c & masks[s] != 0) {
            stack.push((i, c, forbidden));
        }
    }
    Ok(GradedSpace::from_bases(n, bases))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groundstates::cohomology_dims;
    use crate::hilbert::enumerate_sectors;
    use crate::lattice::{build_chain, build_octagon_square, build_square_torus, BoundarySpec, TorusSpec};
    use crate::rank::choose_primes;
    use crate::susy::build_supercharge;
    use proptest::prelude::*;

    fn h_full(g: &LatticeGraph) -> Vec<usize> {
        let space = enumerate_sectors(g).unwrap();
        let qb = build_supercharge(g, &space).unwrap();
        cohomology_dims(&qb, choose_primes(3)).unwrap().per_sector.iter().map(|s| s.h).collect()
    }

    fn h_reduced(g: &LatticeGraph, pivots: &[usize]) -> Vec<usize> {
        let full = enumerate_sectors(g).unwrap();
        let space = reduced_space(g, pivots, full.sectors().len()).unwrap();
        let qb = build_supercharge(g, &space).unwrap();
        assert_eq!(qb.nilpotency_violation(), None);
        cohomology_dims(&qb, choose_primes(3)).unwrap().per_sector.iter().map(|s| s.h).collect()
    }

    #[test]
    fn reduction_preserves_cohomology() {
        let graphs = vec![
            build_chain(9, true).unwrap(),
            build_chain(7, false).unwrap(),
            build_square_torus(TorusSpec::rect(4, 4).unwrap()),
            build_octagon_square(2, 2, BoundarySpec::Torus, &[]).unwrap(),
            build_octagon_square(2, 2, BoundarySpec::CYLINDER, &[]).unwrap(),
        ];
        for g in &graphs {
            let pivots = choose_pivots(g);
            assert!(!pivots.is_empty());
            assert_eq!(h_reduced(g, &pivots), h_full(g));
            assert_eq!(h_reduced(g, &pivots[..1]), h_full(g));
        }
    }

    #[test]
    fn rejects_adjacent_pivots() {
        let g = build_chain(4, false).unwrap();
        assert!(reduced_space(&g, &[0, 1], 3).is_err());
        assert!(reduced_space(&g, &[0, 0], 3).is_err());
    }

    #[test]
    fn isolated_pivot_kills_everything() {
        let g = LatticeGraph::from_edges(3, &[(0, 1)]).unwrap();
        let space = reduced_space(&g, &[2], 3).unwrap();
        assert_eq!(space.total_dim(), 0);
        assert_eq!(h_full(&g).iter().sum::<usize>(), 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn random_graphs(n in 1usize..11, edges in prop::collection::vec((0usize..11, 0usize..11), 0..20), skip in 0usize..4) {
            let edges: Vec<(usize, usize)> = edges.into_iter().filter(|&(a, b)| a < n && b < n && a != b).collect();
            let g = LatticeGraph::from_edges(n, &edges).unwrap();
            let pivots = choose_pivots(&g);
            let keep = pivots.len().saturating_sub(skip).max(1).min(pivots.len());
            prop_assert_eq!(h_reduced(&g, &pivots[..keep]), h_full(&g));
        }
    }
}
