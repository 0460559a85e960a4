//! Rhombus tilings of square-lattice tori.
//!
//! Tiles are lattice parallelograms with edge vectors of length `sqrt 5`:
//! two rhombi of area 4 and two tilted squares of area 5. A tile placed with
//! a vertex at lattice point `x` owns the lattice points `p` for which
//! `p + eps*w` lies inside it (fixed generic direction `w`); a tile of area
//! `A` owns exactly `A` points. A tiling of the torus is then an exact cover
//! of the torus cells by placements whose interiors are pairwise disjoint on
//! the torus. The disjointness test is exact (separating axes, integer
//! arithmetic) and also rejects placements that overlap their own periodic
//! images.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Hermite, TorusSpec, Vec2};

/// Generic perturbation direction: parallel to no tile edge.
const PERTURB: Vec2 = Vec2::new(7, 3);

/// Largest torus the cover search accepts (cells tracked in a `u128`).
pub const MAX_CELLS: usize = 128;

/// Default cap on search nodes.
pub const DEFAULT_MAX_NODES: u64 = 2_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TileType {
    pub id: u8,
    pub span: (Vec2, Vec2),
    pub area: u32,
}

pub const TILE_TYPES: [TileType; 4] = [
    TileType {
        id: 0,
        span: (Vec2::new(2, 1), Vec2::new(2, -1)),
        area: 4,
    },
    TileType {
        id: 1,
        span: (Vec2::new(1, 2), Vec2::new(1, -2)),
        area: 4,
    },
    TileType {
        id: 2,
        span: (Vec2::new(2, 1), Vec2::new(1, -2)),
        area: 5,
    },
    TileType {
        id: 3,
        span: (Vec2::new(1, 2), Vec2::new(2, -1)),
        area: 5,
    },
];

impl TileType {
    /// Lattice points owned by the tile with its base vertex at the origin.
    pub fn owned_offsets(&self) -> Vec<Vec2> {
        let (a, b) = self.span;
        let mut det = a.cross(b);
        let sign = det.signum();
        det *= sign;
        // derivative of the barycentric numerators along the perturbation
        let ds = PERTURB.cross(b) * sign;
        let dt = a.cross(PERTURB) * sign;
        debug_assert!(ds != 0 && dt != 0);
        let inside = |num: i64, d: i64| num > 0 && num < det || num == 0 && d > 0 || num == det && d < 0;
        let xs = [0, a.x, b.x, a.x + b.x];
        let ys = [0, a.y, b.y, a.y + b.y];
        let mut out = Vec::new();
        for x in *xs.iter().min().unwrap()..=*xs.iter().max().unwrap() {
            for y in *ys.iter().min().unwrap()..=*ys.iter().max().unwrap() {
                let p = Vec2::new(x, y);
                let s = p.cross(b) * sign;
                let t = a.cross(p) * sign;
                if inside(s, ds) && inside(t, dt) {
                    out.push(p);
                }
            }
        }
        debug_assert_eq!(out.len() as u32, self.area);
        out
    }

    fn corners(&self, origin: Vec2) -> [Vec2; 4] {
        let (a, b) = self.span;
        [origin, origin + a, origin + a + b, origin + b]
    }
}

/// Interiors of two convex quadrilaterals intersect (separating axis test).
fn interiors_overlap(p: &[Vec2; 4], q: &[Vec2; 4]) -> bool {
    let edges = |poly: &[Vec2; 4]| [poly[1] - poly[0], poly[3] - poly[0]];
    for e in edges(p).into_iter().chain(edges(q)) {
        let normal = Vec2::new(-e.y, e.x);
        let proj = |poly: &[Vec2; 4]| {
            let vals = poly.map(|c| c.x * normal.x + c.y * normal.y);
            (*vals.iter().min().unwrap(), *vals.iter().max().unwrap())
        };
        let (p_lo, p_hi) = proj(p);
        let (q_lo, q_hi) = proj(q);
        if p_hi <= q_lo || q_hi <= p_lo {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlacedTile {
    /// Least-index torus cell covered by the tile.
    pub anchor: usize,
    /// Base vertex, as a canonical coset representative.
    pub vertex: Vec2,
    pub tile: u8,
}

#[derive(Debug, Clone)]
struct Placement {
    tile: TileType,
    vertex: Vec2,
    mask: u128,
}

/// All injective placements on the torus plus their pairwise compatibility.
pub struct TorusTiles {
    spec: TorusSpec,
    hermite: Hermite,
    placements: Vec<Placement>,
    /// `compatible[i]` bitset over placements with disjoint interiors.
    compatible: Vec<Vec<u64>>,
    /// Placements covering each cell.
    by_cell: Vec<Vec<usize>>,
}

impl TorusTiles {
    pub fn new(spec: TorusSpec) -> Result<Self> {
        let n = spec.n_sites();
        if n > MAX_CELLS {
            return Err(Error::capacity("torus cells for tiling", n, MAX_CELLS));
        }
        let hermite = spec.hermite();
        let cells = hermite.cells();
        let mut placements = Vec::new();
        for tile in TILE_TYPES {
            let offsets = tile.owned_offsets();
            for &vertex in &cells {
                let mut mask = 0u128;
                let mut injective = true;
                for &o in &offsets {
                    let bit = 1u128 << hermite.index(vertex + o);
                    if mask & bit != 0 {
                        injective = false;
                        break;
                    }
                    mask |= bit;
                }
                if injective {
                    placements.push(Placement { tile, vertex, mask });
                }
            }
        }
        let mut tiles = TorusTiles {
            spec,
            hermite,
            placements,
            compatible: Vec::new(),
            by_cell: vec![Vec::new(); n],
        };
        // a placement whose interior meets its own periodic image is not a tile
        let keep: Vec<bool> = (0..tiles.placements.len())
            .map(|i| !tiles.overlaps(i, i))
            .collect();
        let mut k = 0;
        tiles.placements.retain(|_| {
            k += 1;
            keep[k - 1]
        });
        let count = tiles.placements.len();
        let words = count.div_ceil(64);
        tiles.compatible = (0..count)
            .into_par_iter()
            .map(|i| {
                let mut bits = vec![0u64; words];
                for j in 0..count {
                    if i != j
                        && tiles.placements[i].mask & tiles.placements[j].mask == 0
                        && !tiles.overlaps(i, j)
                    {
                        bits[j / 64] |= 1 << (j % 64);
                    }
                }
                bits
            })
            .collect();
        for (i, p) in tiles.placements.iter().enumerate() {
            let mut rest = p.mask;
            while rest != 0 {
                let c = rest.trailing_zeros() as usize;
                tiles.by_cell[c].push(i);
                rest &= rest - 1;
            }
        }
        Ok(tiles)
    }

    pub fn spec(&self) -> &TorusSpec {
        &self.spec
    }

    pub fn n_placements(&self) -> usize {
        self.placements.len()
    }

    /// Interiors of placements `i` and `j` meet somewhere on the torus
    /// (for `i == j`: the tile meets a nontrivial periodic image of itself).
    fn overlaps(&self, i: usize, j: usize) -> bool {
        let (pi, pj) = (&self.placements[i], &self.placements[j]);
        let ci = pi.tile.corners(pi.vertex);
        let Hermite { a, b, c } = self.hermite;
        // tiles have diameter < 5, so only nearby periodic images matter
        let reach = 12;
        let j_lim = reach / c + 2;
        for jj in -j_lim..=j_lim {
            let i_lim = (reach + (b * jj).abs()) / a + 2;
            for ii in -i_lim..=i_lim {
                if i == j && ii == 0 && jj == 0 {
                    continue;
                }
                let shift = Vec2::new(ii * a + jj * b, jj * c);
                let cj = pj.tile.corners(pj.vertex + shift);
                if interiors_overlap(&ci, &cj) {
                    return true;
                }
            }
        }
        false
    }

    fn compatible(&self, i: usize, j: usize) -> bool {
        self.compatible[i][j / 64] & (1 << (j % 64)) != 0
    }

    fn placed(&self, i: usize) -> PlacedTile {
        let p = &self.placements[i];
        PlacedTile {
            anchor: p.mask.trailing_zeros() as usize,
            vertex: p.vertex,
            tile: p.tile.id,
        }
    }

    /// Area and pairwise-overlap oracle used by tests: `true` iff the
    /// placements form a tiling of the torus.
    pub fn is_tiling(&self, chosen: &[usize]) -> bool {
        let area: u32 = chosen.iter().map(|&i| self.placements[i].tile.area).sum();
        if area as usize != self.spec.n_sites() {
            return false;
        }
        chosen.iter().enumerate().all(|(k, &i)| {
            !self.overlaps(i, i) && chosen[k + 1..].iter().all(|&j| !self.overlaps(i, j))
        })
    }

    pub fn placement_areas(&self) -> Vec<u32> {
        self.placements.iter().map(|p| p.tile.area).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TilingCount {
    /// Tilings with an even number of tiles.
    pub t_b: u64,
    /// Tilings with an odd number of tiles.
    pub t_f: u64,
}

impl TilingCount {
    pub fn total(&self) -> u64 {
        self.t_b + self.t_f
    }

    pub fn signed(&self) -> i64 {
        self.t_b as i64 - self.t_f as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TilingEnumeration {
    pub count: TilingCount,
    /// Number of tilings using each tile count.
    pub by_tile_count: BTreeMap<usize, u64>,
    pub nodes: u64,
    /// Every tiling found, when requested.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tilings: Vec<Vec<PlacedTile>>,
}

impl TilingEnumeration {
    fn merge(&mut self, other: TilingEnumeration) {
        self.count.t_b += other.count.t_b;
        self.count.t_f += other.count.t_f;
        for (k, v) in other.by_tile_count {
            *self.by_tile_count.entry(k).or_insert(0) += v;
        }
        self.nodes += other.nodes;
        self.tilings.extend(other.tilings);
    }
}

struct Search<'a> {
    tiles: &'a TorusTiles,
    full: u128,
    max_nodes: u64,
    keep: bool,
    out: TilingEnumeration,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, covered: u128) -> Result<()> {
        self.out.nodes += 1;
        if self.out.nodes > self.max_nodes {
            return Err(Error::capacity("tiling search nodes", self.out.nodes, self.max_nodes));
        }
        if covered == self.full {
            let k = self.chosen.len();
            if k % 2 == 0 {
                self.out.count.t_b += 1;
            } else {
                self.out.count.t_f += 1;
            }
            *self.out.by_tile_count.entry(k).or_insert(0) += 1;
            if self.keep {
                let tiling = self.chosen.iter().map(|&i| self.tiles.placed(i)).collect();
                self.out.tilings.push(tiling);
            }
            return Ok(());
        }
        let cell = (!covered & self.full).trailing_zeros() as usize;
        for &p in &self.tiles.by_cell[cell] {
            let pl = &self.tiles.placements[p];
            if pl.mask & covered != 0 {
                continue;
            }
            if !self.chosen.iter().all(|&q| self.tiles.compatible(p, q)) {
                continue;
            }
            self.chosen.push(p);
            self.run(covered | pl.mask)?;
            self.chosen.pop();
        }
        Ok(())
    }
}

/// Counts tilings, splitting by tile-count parity. Fails with a capacity
/// error (never a partial count) once `max_nodes` search nodes are exceeded.
pub fn enumerate_tilings_with(
    spec: TorusSpec,
    max_nodes: u64,
    keep_tilings: bool,
) -> Result<TilingEnumeration> {
    let tiles = TorusTiles::new(spec)?;
    let n = spec.n_sites();
    let full: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    // root branches (placements covering cell 0) run in parallel
    let roots: Vec<usize> = tiles.by_cell.first().cloned().unwrap_or_default();
    let parts: Vec<Result<TilingEnumeration>> = roots
        .par_iter()
        .map(|&p| {
            let mut s = Search {
                tiles: &tiles,
                full,
                max_nodes,
                keep: keep_tilings,
                out: TilingEnumeration::default(),
                chosen: vec![p],
            };
            s.run(tiles.placements[p].mask)?;
            Ok(s.out)
        })
        .collect();
    let mut out = TilingEnumeration {
        nodes: 1,
        ..Default::default()
    };
    for part in parts {
        out.merge(part?);
        if out.nodes > max_nodes {
            return Err(Error::capacity("tiling search nodes", out.nodes, max_nodes));
        }
    }
    Ok(out)
}

pub fn enumerate_tilings(spec: TorusSpec) -> Result<TilingCount> {
    Ok(enumerate_tilings_with(spec, DEFAULT_MAX_NODES, false)?.count)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingWindowReport {
    pub n_sites: usize,
    /// Tile counts realized by at least one tiling.
    pub realized: Vec<usize>,
    /// Realized tile counts outside `[n/5, n/4]`.
    pub violations: Vec<usize>,
}

impl FillingWindowReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn filling_window(spec: &TorusSpec, details: &TilingEnumeration) -> FillingWindowReport {
    let n = spec.n_sites();
    let realized: Vec<usize> = details
        .by_tile_count
        .iter()
        .filter(|(_, &c)| c > 0)
        .map(|(&k, _)| k)
        .collect();
    let violations = realized
        .iter()
        .copied()
        .filter(|&k| 5 * k < n || 4 * k > n)
        .collect();
    FillingWindowReport {
        n_sites: n,
        realized,
        violations,
    }
}
