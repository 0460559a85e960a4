//! Lattice-spec files and the compact command-line shorthand.
//!
//! A spec file is TOML with one `[[lattice]]` table per lattice:
//!
//! ```toml
//! [[lattice]]
//! family = "square_torus"
//! torus = { u = [3, -3], v = [3, 3] }
//!
//! [[lattice]]
//! family = "octagon_square"
//! m = 3
//! l = 2
//! boundary = { cylinder = { open_axis = "second" } }
//! defects = [{ plaquette = [0, 1], orientation = "ns" }]
//! ```
//!
//! Families: `chain` (`n`, `periodic`), `square_torus` (`torus`),
//! `square_diagonal` (`m`, `n`, `boundary`), `octagon_square` (`m`, `l`,
//! `boundary`, `defects`) and `raw` (`n_sites`, `edges`). Boundaries are
//! `"torus"`, `"open"` or a `cylinder` table naming the open axis.
//! Parsing then serializing gives back the same list of specs.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{
    build_chain, build_octagon_square, build_square_diagonal_region, build_square_torus, Axis,
    BoundarySpec, DefectOrientation, DefectSpec, LatticeGraph, TorusSpec, Vec2,
};

/// The suite `verify` runs when no suite file is given.
pub const DEFAULT_SUITE: &str = include_str!("../data/verify_suite.toml");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum LatticeSpec {
    Chain {
        n: usize,
        #[serde(default)]
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
        #[serde(default)]
        defects: Vec<DefectSpec>,
    },
    Raw {
        n_sites: usize,
        #[serde(default)]
        edges: Vec<[usize; 2]>,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDocument {
    #[serde(default)]
    lattice: Vec<LatticeSpec>,
}

impl LatticeSpec {
    pub fn build(&self) -> Result<LatticeGraph> {
        match self {
            LatticeSpec::Chain { n, periodic } => build_chain(*n, *periodic),
            LatticeSpec::SquareTorus { torus } => Ok(build_square_torus(*torus)),
            LatticeSpec::SquareDiagonal { m, n, boundary } => build_square_diagonal_region(*m, *n, *boundary),
            LatticeSpec::OctagonSquare {
                m,
                l,
                boundary,
                defects,
            } => build_octagon_square(*m, *l, *boundary, defects),
            LatticeSpec::Raw { n_sites, edges } => {
                let edges: Vec<(usize, usize)> = edges.iter().map(|e| (e[0], e[1])).collect();
                LatticeGraph::from_edges(*n_sites, &edges)
            }
        }
    }

    /// The periodicity lattice, for square-lattice tori.
    pub fn torus(&self) -> Option<TorusSpec> {
        match self {
            LatticeSpec::SquareTorus { torus } => Some(*torus),
            _ => None,
        }
    }
}

pub fn parse_specs(text: &str) -> Result<Vec<LatticeSpec>> {
    let doc: SpecDocument = toml::from_str(text).map_err(|e| Error::Spec(e.to_string()))?;
    Ok(doc.lattice)
}

pub fn load_specs(path: &Path) -> Result<Vec<LatticeSpec>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Spec(format!("cannot read {}: {e}", path.display())))?;
    parse_specs(&text)
}

pub fn specs_to_toml(specs: &[LatticeSpec]) -> Result<String> {
    toml::to_string(&SpecDocument {
        lattice: specs.to_vec(),
    })
    .map_err(|e| Error::Internal(e.to_string()))
}

fn boundary_word(b: BoundarySpec) -> &'static str {
    match b {
        BoundarySpec::Torus => "torus",
        BoundarySpec::Cylinder {
            open_axis: Axis::Second,
        } => "cylinder",
        BoundarySpec::Cylinder { open_axis: Axis::First } => "cylinder-first",
        BoundarySpec::Open => "open",
    }
}

fn parse_boundary(w: &str) -> Result<BoundarySpec> {
    Ok(match w {
        "torus" => BoundarySpec::Torus,
        "cylinder" | "cylinder-second" => BoundarySpec::CYLINDER,
        "cylinder-first" => BoundarySpec::Cylinder { open_axis: Axis::First },
        "open" | "plane" => BoundarySpec::Open,
        _ => return Err(Error::Spec(format!("unknown boundary '{w}'"))),
    })
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Spec(format!("bad {what} '{s}'")))
}

fn parse_pair<T: std::str::FromStr>(s: &str, sep: char, what: &str) -> Result<(T, T)> {
    let (a, b) = s
        .split_once(sep)
        .ok_or_else(|| Error::Spec(format!("expected {what} as a{sep}b, got '{s}'")))?;
    Ok((parse_num(a, what)?, parse_num(b, what)?))
}

fn parse_defect(s: &str) -> Result<DefectSpec> {
    let (o, at) = s
        .split_once('@')
        .ok_or_else(|| Error::Spec(format!("expected defect as ns@i,j or ew@i,j, got '{s}'")))?;
    let orientation = match o {
        "ns" => DefectOrientation::NS,
        "ew" => DefectOrientation::EW,
        _ => return Err(Error::Spec(format!("unknown defect orientation '{o}'"))),
    };
    Ok(DefectSpec {
        plaquette: parse_pair(at, ',', "plaquette")?,
        orientation,
    })
}

/// Parses the shorthand written by `Display`:
///
/// - `chain:6`, `chain:6:periodic`
/// - `rect:5x5`, `torus:3,-3:3,3` (vectors `u` then `v`)
/// - `diagonal:3x2:cylinder` (also `cylinder-first`, `open`, `torus`)
/// - `octagon:3x2:torus`, `octagon:2x2:open:ns@0,1+ew@1,1`
/// - `raw:3:0-1,1-2`
pub fn parse_shorthand(s: &str) -> Result<LatticeSpec> {
    let parts: Vec<&str> = s.trim().split(':').collect();
    let bad = || Error::Spec(format!("cannot parse lattice '{s}'"));
    match parts.as_slice() {
        ["chain", n] => Ok(LatticeSpec::Chain {
            n: parse_num(n, "site count")?,
            periodic: false,
        }),
        ["chain", n, kind] => Ok(LatticeSpec::Chain {
            n: parse_num(n, "site count")?,
            periodic: match *kind {
                "periodic" => true,
                "open" => false,
                _ => return Err(bad()),
            },
        }),
        ["rect", mn] => {
            let (m, n) = parse_pair(mn, 'x', "size")?;
            Ok(LatticeSpec::SquareTorus {
                torus: TorusSpec::rect(m, n)?,
            })
        }
        ["torus", u, v] => {
            let (ux, uy) = parse_pair(u, ',', "vector")?;
            let (vx, vy) = parse_pair(v, ',', "vector")?;
            Ok(LatticeSpec::SquareTorus {
                torus: TorusSpec::new(Vec2::new(ux, uy), Vec2::new(vx, vy))?,
            })
        }
        ["diagonal", mn, b] => {
            let (m, n) = parse_pair(mn, 'x', "size")?;
            Ok(LatticeSpec::SquareDiagonal {
                m,
                n,
                boundary: parse_boundary(b)?,
            })
        }
        ["octagon", ml, b, rest @ ..] if rest.len() <= 1 => {
            let (m, l) = parse_pair(ml, 'x', "size")?;
            let defects = match rest.first() {
                Some(d) => d.split('+').map(parse_defect).collect::<Result<_>>()?,
                None => Vec::new(),
            };
            Ok(LatticeSpec::OctagonSquare {
                m,
                l,
                boundary: parse_boundary(b)?,
                defects,
            })
        }
        ["raw", n, rest @ ..] if rest.len() <= 1 => {
            let edges = match rest.first() {
                Some(e) if !e.is_empty() => e
                    .split(',')
                    .map(|p| parse_pair::<usize>(p, '-', "edge").map(|(a, b)| [a, b]))
                    .collect::<Result<_>>()?,
                _ => Vec::new(),
            };
            Ok(LatticeSpec::Raw {
                n_sites: parse_num(n, "site count")?,
                edges,
            })
        }
        _ => Err(bad()),
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeSpec::Chain { n, periodic } => {
                write!(f, "chain:{n}:{}", if *periodic { "periodic" } else { "open" })
            }
            LatticeSpec::SquareTorus { torus } => {
                let (u, v) = (torus.u(), torus.v());
                write!(f, "torus:{},{}:{},{}", u.x, u.y, v.x, v.y)
            }
            LatticeSpec::SquareDiagonal { m, n, boundary } => {
                write!(f, "diagonal:{m}x{n}:{}", boundary_word(*boundary))
            }
            LatticeSpec::OctagonSquare {
                m,
                l,
                boundary,
                defects,
            } => {
                write!(f, "octagon:{m}x{l}:{}", boundary_word(*boundary))?;
                for (k, d) in defects.iter().enumerate() {
                    let o = match d.orientation {
                        DefectOrientation::NS => "ns",
                        DefectOrientation::EW => "ew",
                    };
                    let sep = if k == 0 { ':' } else { '+' };
                    write!(f, "{sep}{o}@{},{}", d.plaquette.0, d.plaquette.1)?;
                }
                Ok(())
            }
            LatticeSpec::Raw { n_sites, edges } => {
                write!(f, "raw:{n_sites}:")?;
                for (k, e) in edges.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}-{}", e[0], e[1])?;
                }
                Ok(())
            }
        }
    }
}
