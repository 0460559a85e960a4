//! Hard-core configuration space: independent sets of a [`LatticeGraph`],
//! graded by fermion number.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeGraph;

/// Occupancy bitmask. Site `i` is occupied iff bit `i` is set.
pub type Config = u128;

/// Widest lattice a [`Config`] can describe.
pub const MAX_SITES: usize = Config::BITS as usize;

/// Per-site neighbor masks.
pub fn neighbor_masks(g: &LatticeGraph) -> Result<Vec<Config>> {
    if g.n_sites() > MAX_SITES {
        return Err(Error::capacity("lattice sites", g.n_sites(), MAX_SITES));
    }
    Ok((0..g.n_sites())
        .map(|i| g.neighbors(i).iter().fold(0, |m, &j| m | (1 << j)))
        .collect())
}

pub fn is_independent(masks: &[Config], c: Config) -> bool {
    let mut rest = c;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        if masks[i] & c != 0 {
            return false;
        }
        rest &= rest - 1;
    }
    true
}

/// Fixed fermion-number sector: sorted basis of configurations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector {
    f: usize,
    basis: Vec<Config>,
}

impl Sector {
    pub fn f(&self) -> usize {
        self.f
    }

    pub fn basis(&self) -> &[Config] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, c: Config) -> Option<usize> {
        self.basis.binary_search(&c).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSpace {
    n_sites: usize,
    sectors: Vec<Sector>,
}

impl GradedSpace {
    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    pub fn sector(&self, f: usize) -> Option<&Sector> {
        self.sectors.get(f)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.sectors.iter().map(Sector::dim).collect()
    }

    /// Size of the largest independent set.
    pub fn f_max(&self) -> usize {
        self.sectors.len() - 1
    }

    pub fn total_dim(&self) -> usize {
        self.sectors.iter().map(Sector::dim).sum()
    }
}

/// Dimension vector as structured text, for golden files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsDump {
    pub n_sites: usize,
    pub dims: Vec<usize>,
    pub total: usize,
    pub witten: i64,
}

impl From<&GradedSpace> for DimsDump {
    fn from(space: &GradedSpace) -> Self {
        DimsDump {
            n_sites: space.n_sites,
            dims: space.dims(),
            total: space.total_dim(),
            witten: witten_by_enumeration(space),
        }
    }
}

pub fn enumerate_sectors(g: &LatticeGraph) -> Result<GradedSpace> {
    enumerate_sectors_capped(g, usize::MAX)
}

/// Enumerates every independent set, failing once more than `max_total`
/// configurations have been produced.
pub fn enumerate_sectors_capped(g: &LatticeGraph, max_total: usize) -> Result<GradedSpace> {
    let masks = neighbor_masks(g)?;
    let n = g.n_sites();
    let mut by_f: Vec<Vec<Config>> = vec![Vec::new()];
    let mut total = 0usize;

    // Depth-first over sites from the highest index down, excluding before
    // including, so each sector comes out in increasing bitmask order.
    // Stack frames: (next site to decide + 1, current config, forbidden mask).
    let mut stack: Vec<(usize, Config, Config)> = vec![(n, 0, 0)];
    while let Some((k, c, forbidden)) = stack.pop() {
        if k == 0 {
            total += 1;
            if total > max_total {
                return Err(Error::capacity("Hilbert-space dimension", total, max_total));
            }
            let f = c.count_ones() as usize;
            if by_f.len() <= f {
                by_f.resize(f + 1, Vec::new());
            }
            by_f[f].push(c);
            continue;
        }
        let i = k - 1;
        let bit: Config = 1 << i;
        // include branch pushed first so the exclude branch is explored first
        if forbidden & bit == 0 {
            stack.push((i, c | bit, forbidden | masks[i]));
        }
        stack.push((i, c, forbidden));
    }
    let sectors = by_f
        .into_iter()
        .enumerate()
        .map(|(f, basis)| Sector { f, basis })
        .collect();
    Ok(GradedSpace { n_sites: n, sectors })
}

impl GradedSpace {
    /// Assembles a space from per-sector bases, each sorted and duplicate-free.
    pub(crate) fn from_bases(n_sites: usize, bases: Vec<Vec<Config>>) -> Self {
        let sectors = bases
            .into_iter()
            .enumerate()
            .map(|(f, basis)| Sector { f, basis })
            .collect();
        GradedSpace { n_sites, sectors }
    }
}

/// `Tr (-1)^F` over the full hard-core space.
pub fn witten_by_enumeration(space: &GradedSpace) -> i64 {
    space
        .sectors
        .iter()
        .map(|s| if s.f % 2 == 0 { s.dim() as i64 } else { -(s.dim() as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_chain, build_square_torus, TorusSpec};

    fn brute_force_dims(g: &LatticeGraph) -> Vec<usize> {
        let n = g.n_sites();
        let mut dims = vec![0usize; n + 1];
        for c in 0u32..(1 << n) {
            let ok = g
                .edges()
                .iter()
                .all(|&(a, b)| c & (1 << a) == 0 || c & (1 << b) == 0);
            if ok {
                dims[c.count_ones() as usize] += 1;
            }
        }
        while dims.len() > 1 && *dims.last().unwrap() == 0 {
            dims.pop();
        }
        dims
    }

    #[test]
    fn cycle_four() {
        let g = build_chain(4, true).unwrap();
        let space = enumerate_sectors(&g).unwrap();
        assert_eq!(space.dims(), vec![1, 4, 2]);
        assert_eq!(space.dims(), brute_force_dims(&g));
    }

    #[test]
    fn degenerate_graphs() {
        let single = LatticeGraph::from_edges(1, &[]).unwrap();
        let space = enumerate_sectors(&single).unwrap();
        assert_eq!(space.dims(), vec![1, 1]);
        assert_eq!(witten_by_enumeration(&space), 0);

        let empty = LatticeGraph::from_edges(0, &[]).unwrap();
        let space = enumerate_sectors(&empty).unwrap();
        assert_eq!(space.dims(), vec![1]);
        assert_eq!(witten_by_enumeration(&space), 1);
    }

    #[test]
    fn sectors_sorted_and_indexed() {
        let g = build_square_torus(TorusSpec::rect(3, 4).unwrap());
        let space = enumerate_sectors(&g).unwrap();
        for s in space.sectors() {
            assert!(s.basis().windows(2).all(|w| w[0] < w[1]));
            for (k, &c) in s.basis().iter().enumerate() {
                assert_eq!(s.index_of(c), Some(k));
                assert_eq!(c.count_ones() as usize, s.f());
            }
        }
        assert_eq!(space.dims()[1], g.n_sites());
    }

    #[test]
    fn witten_small_table_entries() {
        let w = |m, n| {
            let g = build_square_torus(TorusSpec::rect(m, n).unwrap());
            witten_by_enumeration(&enumerate_sectors(&g).unwrap())
        };
        assert_eq!(w(2, 2), -1);
        assert_eq!(w(5, 5), -9);
        assert_eq!(w(3, 3), 4);
        assert_eq!(w(1, 7), 1);
    }

    #[test]
    fn capacity_is_a_hard_error() {
        let g = build_chain(20, true).unwrap();
        let err = enumerate_sectors_capped(&g, 100).unwrap_err();
        assert!(err.is_capacity());
        let big = build_chain(MAX_SITES + 1, false).unwrap();
        assert!(enumerate_sectors(&big).unwrap_err().is_capacity());
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(0..=14);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(0.25) {
                        edges.push((a, b));
                    }
                }
            }
            let g = LatticeGraph::from_edges(n, &edges).unwrap();
            let space = enumerate_sectors(&g).unwrap();
            assert_eq!(space.dims(), brute_force_dims(&g));
        }
    }
}
