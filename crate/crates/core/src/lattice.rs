//! Site/adjacency graphs for the lattice families: chains, square-lattice tori
//! with arbitrary periodicity vectors, diagonal square-lattice strips, and the
//! octagon-square lattice with optional diagonal defects.
//!
//! Every constructor funnels through [`GraphBuilder`], which applies the two
//! global conventions:
//!
//! * a site adjacent to itself (after periodic identification) can never be
//!   occupied and is deleted from the graph;
//! * parallel edges produced by small periods are collapsed.
//!
//! Surviving sites are ordered lexicographically by their canonical integer
//! coordinates. That order fixes the fermionic sign convention used by
//! [`crate::susy`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: i64,
    pub y: i64,
}

impl Vec2 {
    pub const fn new(x: i64, y: i64) -> Self {
        Vec2 { x, y }
    }

    pub fn cross(self, other: Vec2) -> i64 {
        self.x * other.y - self.y * other.x
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl std::ops::Mul<Vec2> for i64 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        Vec2::new(self * v.x, self * v.y)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g >= 0.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// A square-lattice torus Z^2 / (uZ + vZ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTorus", into = "RawTorus")]
pub struct TorusSpec {
    u: Vec2,
    v: Vec2,
}

#[derive(Serialize, Deserialize)]
struct RawTorus {
    u: [i64; 2],
    v: [i64; 2],
}

impl TryFrom<RawTorus> for TorusSpec {
    type Error = Error;
    fn try_from(raw: RawTorus) -> Result<Self> {
        TorusSpec::new(Vec2::new(raw.u[0], raw.u[1]), Vec2::new(raw.v[0], raw.v[1]))
    }
}

impl From<TorusSpec> for RawTorus {
    fn from(t: TorusSpec) -> Self {
        RawTorus {
            u: [t.u.x, t.u.y],
            v: [t.v.x, t.v.y],
        }
    }
}

impl TorusSpec {
    pub fn new(u: Vec2, v: Vec2) -> Result<Self> {
        if u.cross(v) == 0 {
            return Err(Error::InvalidTorus {
                ux: u.x,
                uy: u.y,
                vx: v.x,
                vy: v.y,
            });
        }
        Ok(TorusSpec { u, v })
    }

    /// The `M x N` rectangular torus, `u = (M,0)`, `v = (0,N)`.
    pub fn rect(m: i64, n: i64) -> Result<Self> {
        Self::new(Vec2::new(m, 0), Vec2::new(0, n))
    }

    pub fn u(&self) -> Vec2 {
        self.u
    }

    pub fn v(&self) -> Vec2 {
        self.v
    }

    pub fn n_sites(&self) -> usize {
        self.u.cross(self.v).unsigned_abs() as usize
    }

    pub fn d(&self) -> i64 {
        gcd(self.u.x - self.u.y, self.v.x - self.v.y)
    }

    pub fn d_star(&self) -> i64 {
        gcd(self.u.x + self.u.y, self.v.x + self.v.y)
    }

    /// Hermite basis `{(a,0), (b,c)}` of the period lattice with `a, c > 0`
    /// and `0 <= b < a`. Coset representatives are `0 <= x < a, 0 <= y < c`.
    pub fn hermite(&self) -> Hermite {
        let (u, v) = (self.u, self.v);
        let (g, s, t) = ext_gcd(u.y, v.y);
        // g == 0 would mean both vectors are horizontal, excluded by new()
        let w1 = s * u + t * v;
        let w0 = (v.y / g) * u - (u.y / g) * v;
        debug_assert_eq!(w1.y, g);
        debug_assert_eq!(w0.y, 0);
        let a = w0.x.abs();
        let c = g;
        let b = w1.x.rem_euclid(a);
        Hermite { a, b, c }
    }

    /// Whether `w` lies in the period lattice.
    pub fn contains(&self, w: Vec2) -> bool {
        let h = self.hermite();
        h.reduce(w) == Vec2::new(0, 0)
    }
}

impl fmt::Display for TorusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.u, self.v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hermite {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Hermite {
    pub fn reduce(&self, p: Vec2) -> Vec2 {
        let q = p.y.div_euclid(self.c);
        let x = (p.x - q * self.b).rem_euclid(self.a);
        Vec2::new(x, p.y - q * self.c)
    }

    /// Canonical coset representatives in lexicographic `(x, y)` order.
    pub fn cells(&self) -> Vec<Vec2> {
        let mut out = Vec::with_capacity((self.a * self.c) as usize);
        for x in 0..self.a {
            for y in 0..self.c {
                out.push(Vec2::new(x, y));
            }
        }
        out
    }

    /// Index of a reduced point in [`Hermite::cells`] order.
    pub fn index(&self, p: Vec2) -> usize {
        let r = self.reduce(p);
        (r.x * self.c + r.y) as usize
    }
}

/// One of the two lattice translation axes of a region builder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundarySpec {
    Torus,
    /// Periodic along one axis, open along `open_axis`.
    Cylinder { open_axis: Axis },
    Open,
}

impl BoundarySpec {
    /// The usual cylinder: periodic along the first axis, open along the second.
    pub const CYLINDER: BoundarySpec = BoundarySpec::Cylinder {
        open_axis: Axis::Second,
    };

    fn periodic(&self, axis: Axis) -> bool {
        match self {
            BoundarySpec::Torus => true,
            BoundarySpec::Open => false,
            BoundarySpec::Cylinder { open_axis } => *open_axis != axis,
        }
    }
}

impl fmt::Display for BoundarySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundarySpec::Torus => f.write_str("torus"),
            BoundarySpec::Open => f.write_str("open"),
            BoundarySpec::Cylinder { open_axis: Axis::Second } => f.write_str("cylinder"),
            BoundarySpec::Cylinder { open_axis: Axis::First } => f.write_str("cylinder(open first axis)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DefectOrientation {
    /// North-south diagonal.
    NS,
    /// East-west diagonal.
    EW,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DefectSpec {
    pub plaquette: (usize, usize),
    pub orientation: DefectOrientation,
}

/// Constructor name and parameters a graph was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Chain {
        n: usize,
        periodic: bool,
    },
    SquareTorus {
        torus: TorusSpec,
    },
    SquareDiagonal {
        m: usize,
        n: usize,
        boundary: BoundarySpec,
    },
    OctagonSquare {
        m: usize,
        l: usize,
        boundary: BoundarySpec,
        defects: Vec<DefectSpec>,
    },
    Raw,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeGraph {
    n_sites: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    site_coords: Vec<(i64, i64)>,
    deleted: usize,
    family: Family,
}

impl LatticeGraph {
    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    /// Sorted edge list, each pair `(a, b)` with `a < b`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, site: usize) -> &[usize] {
        &self.neighbors[site]
    }

    pub fn degree(&self, site: usize) -> usize {
        self.neighbors[site].len()
    }

    pub fn site_coords(&self) -> &[(i64, i64)] {
        &self.site_coords
    }

    /// Number of candidate sites removed because they were self-adjacent.
    pub fn deleted_sites(&self) -> usize {
        self.deleted
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search(&(a, b)).is_ok()
    }

    /// Raw edge-list escape hatch for families without a dedicated builder.
    /// Self-loops delete their site, duplicates collapse.
    pub fn from_edges(n_sites: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut b = GraphBuilder::default();
        for i in 0..n_sites {
            b.site((i as i64, 0));
        }
        for &(a, c) in edges {
            if a >= n_sites || c >= n_sites {
                return Err(Error::InvalidArgument(format!(
                    "edge ({a},{c}) references a site outside 0..{n_sites}"
                )));
            }
            b.edge((a as i64, 0), (c as i64, 0));
        }
        Ok(b.finish(Family::Raw))
    }
}

/// Collects candidate sites and edges keyed by canonical coordinates.
#[derive(Default)]
struct GraphBuilder {
    sites: BTreeSet<(i64, i64)>,
    edges: BTreeSet<((i64, i64), (i64, i64))>,
    self_adjacent: BTreeSet<(i64, i64)>,
}

impl GraphBuilder {
    fn site(&mut self, p: (i64, i64)) {
        self.sites.insert(p);
    }

    fn edge(&mut self, p: (i64, i64), q: (i64, i64)) {
        if p == q {
            self.self_adjacent.insert(p);
        } else if p < q {
            self.edges.insert((p, q));
        } else {
            self.edges.insert((q, p));
        }
    }

    fn finish(self, family: Family) -> LatticeGraph {
        let kept: Vec<(i64, i64)> = self
            .sites
            .iter()
            .copied()
            .filter(|p| !self.self_adjacent.contains(p))
            .collect();
        let index: BTreeMap<(i64, i64), usize> =
            kept.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut edges = Vec::with_capacity(self.edges.len());
        for (p, q) in &self.edges {
            if let (Some(&a), Some(&b)) = (index.get(p), index.get(q)) {
                edges.push((a.min(b), a.max(b)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let mut neighbors = vec![Vec::new(); kept.len()];
        for &(a, b) in &edges {
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for n in &mut neighbors {
            n.sort_unstable();
        }
        LatticeGraph {
            n_sites: kept.len(),
            edges,
            neighbors,
            site_coords: kept,
            deleted: self.sites.len() - index.len(),
            family,
        }
    }
}

pub fn build_chain(n: usize, periodic: bool) -> Result<LatticeGraph> {
    if n == 0 {
        return Err(Error::InvalidArgument("chain length must be >= 1".into()));
    }
    let mut b = GraphBuilder::default();
    for i in 0..n as i64 {
        b.site((i, 0));
    }
    for i in 0..n as i64 {
        if i + 1 < n as i64 {
            b.edge((i, 0), (i + 1, 0));
        } else if periodic {
            b.edge((i, 0), (0, 0));
        }
    }
    Ok(b.finish(Family::Chain { n, periodic }))
}

const SQUARE_STEPS: [Vec2; 4] = [
    Vec2::new(1, 0),
    Vec2::new(-1, 0),
    Vec2::new(0, 1),
    Vec2::new(0, -1),
];

pub fn build_square_torus(spec: TorusSpec) -> LatticeGraph {
    let h = spec.hermite();
    let mut b = GraphBuilder::default();
    for p in h.cells() {
        b.site((p.x, p.y));
        for step in SQUARE_STEPS {
            let q = h.reduce(p + step);
            b.edge((p.x, p.y), (q.x, q.y));
        }
    }
    b.finish(Family::SquareTorus { torus: spec })
}

/// Square lattice in the diagonal frame `s = x + y`, `t = x - y`.
///
/// Diagonal row `s` holds the sites with `t = s (mod 2)`; each site `(s, t)`
/// is adjacent to `(s +- 1, t +- 1)`. The first axis is the `(m,-m)` direction
/// (`t`, period `2m`, so `m` sites per row), the second is the `(n,n)`
/// direction (`s`). The strip has [`diagonal_rows`]`(n)` rows; when the second
/// axis is periodic the rows close up into the `(m,-m) x (n,n)` torus.
pub fn build_square_diagonal_region(
    m: usize,
    n: usize,
    boundary: BoundarySpec,
) -> Result<LatticeGraph> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument(
            "diagonal region needs m >= 1 and n >= 1".into(),
        ));
    }
    let family = Family::SquareDiagonal { m, n, boundary };
    let (m_i, n_i) = (m as i64, n as i64);
    if boundary == BoundarySpec::Torus {
        let torus = TorusSpec::new(Vec2::new(m_i, -m_i), Vec2::new(n_i, n_i))?;
        let mut g = build_square_torus(torus);
        g.family = family;
        return Ok(g);
    }
    // Open first axis with periodic second axis is the same strip with the
    // roles of (m,-m) and (n,n) exchanged by the reflection y -> -y.
    let (len_t, rows, periodic_t) = match boundary {
        BoundarySpec::Cylinder {
            open_axis: Axis::Second,
        } => (m_i, diagonal_rows(n), true),
        BoundarySpec::Cylinder {
            open_axis: Axis::First,
        } => (n_i, diagonal_rows(m), true),
        BoundarySpec::Open => (m_i, diagonal_rows(n), false),
        BoundarySpec::Torus => unreachable!(),
    };
    let period = 2 * len_t;
    let canon = |s: i64, t: i64| -> (i64, i64) {
        if periodic_t {
            (s, t.rem_euclid(period))
        } else {
            (s, t)
        }
    };
    let mut b = GraphBuilder::default();
    let row_sites = |s: i64| (0..len_t).map(move |k| s.rem_euclid(2) + 2 * k);
    for s in 0..rows as i64 {
        for t in row_sites(s) {
            b.site(canon(s, t));
        }
    }
    for s in 0..rows as i64 - 1 {
        let next: BTreeSet<(i64, i64)> = row_sites(s + 1).map(|t| canon(s + 1, t)).collect();
        for t in row_sites(s) {
            for dt in [-1, 1] {
                let q = canon(s + 1, t + dt);
                if next.contains(&q) {
                    b.edge(canon(s, t), q);
                }
            }
        }
    }
    Ok(b.finish(family))
}

/// Number of diagonal rows in a strip of width parameter `n`.
///
/// Width `n` spans about `2n` rows; which boundary rows are kept depends on
/// `n mod 3`: `2n - 1`, `2n + 1`, `2n` rows for residues 1, 2, 0. This is
/// the offset under which the open-width labels of the known cylinder
/// degeneracies line up (a plain `n`-row strip with `m = 3p` has `2^(q+1)`
/// ground states at `n = 3q+2, 3q+3`, not `4^(q+1)`).
pub fn diagonal_rows(n: usize) -> usize {
    match n % 3 {
        1 => 2 * n - 1,
        2 => 2 * n + 1,
        _ => 2 * n,
    }
}

/// Octagon-square lattice of `m x l` square plaquettes.
///
/// Plaquette `(i, j)` has corners W, S, E, N at coordinates
/// `(3i, 3j+1)`, `(3i+1, 3j)`, `(3i+2, 3j+1)`, `(3i+1, 3j+2)`; the first axis
/// is `i` (horizontal), the second `j` (vertical).
pub fn build_octagon_square(
    m: usize,
    l: usize,
    boundary: BoundarySpec,
    defects: &[DefectSpec],
) -> Result<LatticeGraph> {
    if m == 0 || l == 0 {
        return Err(Error::InvalidArgument(
            "octagon-square lattice needs m >= 1 and l >= 1".into(),
        ));
    }
    let mut seen = BTreeSet::new();
    for d in defects {
        let (i, j) = d.plaquette;
        if i >= m || j >= l {
            return Err(Error::DefectOutOfBounds { i, j, m, l });
        }
        if !seen.insert((i, j)) {
            return Err(Error::DuplicateDefect { i, j });
        }
    }
    let (mi, li) = (m as i64, l as i64);
    let w = |i: i64, j: i64| (3 * i, 3 * j + 1);
    let s = |i: i64, j: i64| (3 * i + 1, 3 * j);
    let e = |i: i64, j: i64| (3 * i + 2, 3 * j + 1);
    let nn = |i: i64, j: i64| (3 * i + 1, 3 * j + 2);

    let mut b = GraphBuilder::default();
    for i in 0..mi {
        for j in 0..li {
            for p in [w(i, j), s(i, j), e(i, j), nn(i, j)] {
                b.site(p);
            }
            b.edge(nn(i, j), e(i, j));
            b.edge(e(i, j), s(i, j));
            b.edge(s(i, j), w(i, j));
            b.edge(w(i, j), nn(i, j));
            if i + 1 < mi {
                b.edge(e(i, j), w(i + 1, j));
            } else if boundary.periodic(Axis::First) {
                b.edge(e(i, j), w(0, j));
            }
            if j + 1 < li {
                b.edge(nn(i, j), s(i, j + 1));
            } else if boundary.periodic(Axis::Second) {
                b.edge(nn(i, j), s(i, 0));
            }
        }
    }
    for d in defects {
        let (i, j) = (d.plaquette.0 as i64, d.plaquette.1 as i64);
        match d.orientation {
            DefectOrientation::NS => b.edge(nn(i, j), s(i, j)),
            DefectOrientation::EW => b.edge(e(i, j), w(i, j)),
        }
    }
    Ok(b.finish(Family::OctagonSquare {
        m,
        l,
        boundary,
        defects: defects.to_vec(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(g: &LatticeGraph) -> Vec<usize> {
        (0..g.n_sites()).map(|i| g.degree(i)).collect()
    }

    #[test]
    fn chains() {
        let c4 = build_chain(4, true).unwrap();
        assert_eq!(c4.n_sites(), 4);
        assert_eq!(c4.edges().len(), 4);
        let p3 = build_chain(3, false).unwrap();
        assert_eq!(p3.edges().len(), 2);
        let c1 = build_chain(1, true).unwrap();
        assert_eq!(c1.n_sites(), 0);
        assert_eq!(c1.deleted_sites(), 1);
        let c2 = build_chain(2, true).unwrap();
        assert_eq!(c2.n_sites(), 2);
        assert_eq!(c2.edges(), &[(0, 1)]);
        assert!(build_chain(0, false).is_err());
    }

    #[test]
    fn small_square_tori() {
        let g = build_square_torus(TorusSpec::rect(2, 2).unwrap());
        assert_eq!(g.n_sites(), 4);
        assert_eq!(degrees(&g), vec![2; 4]);
        assert_eq!(g.edges().len(), 4);

        for n in 1..6 {
            let g = build_square_torus(TorusSpec::rect(1, n).unwrap());
            assert_eq!(g.n_sites(), 0, "1x{n}");
        }

        let t = TorusSpec::new(Vec2::new(3, -3), Vec2::new(3, 3)).unwrap();
        assert_eq!(t.n_sites(), 18);
        let g = build_square_torus(t);
        assert_eq!(g.n_sites(), 18);
        assert_eq!(degrees(&g), vec![4; 18]);
    }

    #[test]
    fn collinear_torus_rejected() {
        let err = TorusSpec::new(Vec2::new(2, 1), Vec2::new(4, 2)).unwrap_err();
        assert!(matches!(err, Error::InvalidTorus { .. }));
    }

    #[test]
    fn gcd_invariants() {
        let t = TorusSpec::new(Vec2::new(3, -3), Vec2::new(3, 3)).unwrap();
        assert_eq!((t.d(), t.d_star()), (6, 6));
        let t = TorusSpec::new(Vec2::new(1, -1), Vec2::new(1, 2)).unwrap();
        assert_eq!((t.d(), t.d_star()), (1, 3));
        let t = TorusSpec::rect(5, 5).unwrap();
        assert_eq!((t.d(), t.d_star()), (5, 5));
    }

    #[test]
    fn hermite_cosets_cover_once() {
        let t = TorusSpec::new(Vec2::new(3, -2), Vec2::new(1, 4)).unwrap();
        let h = t.hermite();
        assert_eq!((h.a * h.c) as usize, t.n_sites());
        assert!(t.contains(t.u()) && t.contains(t.v()));
        assert!(t.contains(t.u() + 3 * t.v()));
        let mut hit = vec![0; t.n_sites()];
        for x in -10..10 {
            for y in -10..10 {
                let p = Vec2::new(x, y);
                hit[h.index(p)] += 1;
                // translating by a period leaves the coset unchanged
                assert_eq!(h.reduce(p), h.reduce(p + t.u() - 2 * t.v()));
            }
        }
        assert!(hit.iter().all(|&c| c > 0));
    }

    #[test]
    fn diagonal_regions() {
        let g = build_square_diagonal_region(3, 2, BoundarySpec::CYLINDER).unwrap();
        assert_eq!(g.n_sites(), 3 * diagonal_rows(2));
        let g = build_square_diagonal_region(1, 1, BoundarySpec::CYLINDER).unwrap();
        assert_eq!(g.n_sites(), diagonal_rows(1));
        let g = build_square_diagonal_region(2, 2, BoundarySpec::Open).unwrap();
        assert_eq!(g.n_sites(), 2 * diagonal_rows(2));
        let g = build_square_diagonal_region(3, 3, BoundarySpec::Torus).unwrap();
        assert_eq!(g.n_sites(), 18);
    }

    #[test]
    fn octagon_square() {
        let g = build_octagon_square(2, 2, BoundarySpec::Torus, &[]).unwrap();
        assert_eq!(g.n_sites(), 16);
        assert_eq!(degrees(&g), vec![3; 16]);
        assert_eq!(g.edges().len(), 6 * 4);

        let g = build_octagon_square(1, 1, BoundarySpec::Open, &[]).unwrap();
        assert_eq!(g.n_sites(), 4);
        assert_eq!(degrees(&g), vec![2; 4]);

        let d = DefectSpec {
            plaquette: (0, 1),
            orientation: DefectOrientation::NS,
        };
        let g = build_octagon_square(2, 2, BoundarySpec::Torus, &[d]).unwrap();
        assert_eq!(g.n_sites(), 16);
        assert_eq!(degrees(&g).iter().filter(|&&k| k == 4).count(), 2);

        assert!(matches!(
            build_octagon_square(2, 2, BoundarySpec::Torus, &[d, d]),
            Err(Error::DuplicateDefect { .. })
        ));
        let far = DefectSpec {
            plaquette: (2, 0),
            orientation: DefectOrientation::EW,
        };
        assert!(matches!(
            build_octagon_square(2, 2, BoundarySpec::Torus, &[far]),
            Err(Error::DefectOutOfBounds { .. })
        ));
    }

    #[test]
    fn octagon_regular_on_tori() {
        for m in 1..4 {
            for l in 1..4 {
                let g = build_octagon_square(m, l, BoundarySpec::Torus, &[]).unwrap();
                if m > 1 && l > 1 {
                    assert_eq!(degrees(&g), vec![3; 4 * m * l]);
                    assert_eq!(g.edges().len(), 6 * m * l);
                }
            }
        }
    }

    #[test]
    fn raw_edges() {
        let g = LatticeGraph::from_edges(3, &[(0, 1), (1, 0), (2, 2)]).unwrap();
        assert_eq!(g.n_sites(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
        assert!(LatticeGraph::from_edges(2, &[(0, 5)]).is_err());
    }
}
