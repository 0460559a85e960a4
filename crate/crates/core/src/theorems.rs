//! Closed-form index and ground-state-count formulas for square-lattice tori,
//! and the cross-check that pits them against enumeration, the transfer
//! matrix, and exact ranks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groundstates::exact_ground_states;
use crate::hilbert::{enumerate_sectors_capped, witten_by_enumeration};
use crate::lattice::{build_square_torus, TorusSpec};
use crate::tilings::{enumerate_tilings_with, TilingCount};
use crate::transfer::witten_transfer_torus;

/// 2 if `3 | d`, else -1. Negative `d` is taken by absolute value.
pub fn theta(d: i64) -> Result<i64> {
    if d == 0 {
        return Err(Error::InvalidArgument("theta is defined for d != 0".into()));
    }
    Ok(if d.abs() % 3 == 0 { 2 } else { -1 })
}

/// `(-1)^d theta_d theta_{d*}` for a torus.
pub fn correction_term(spec: &TorusSpec) -> i64 {
    let (d, ds) = (spec.d(), spec.d_star());
    let sign = if d % 2 == 0 { 1 } else { -1 };
    sign * theta(d).unwrap() * theta(ds).unwrap()
}

/// Witten index from tiling counts: `t_b - t_f - (-1)^d theta_d theta_{d*}`.
pub fn jonsson_index(spec: &TorusSpec, count: &TilingCount) -> i64 {
    count.signed() - correction_term(spec)
}

/// Correction between total ground states and total tilings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Delta {
    /// Sign proven: `u = (m,-m)` and `v.x + v.y = 3p`.
    Signed(i64),
    /// Only `|theta_d theta_{d*}|` is known.
    Magnitude(i64),
}

impl Delta {
    pub fn magnitude(&self) -> i64 {
        match self {
            Delta::Signed(v) => v.abs(),
            Delta::Magnitude(v) => *v,
        }
    }

    pub fn signed(&self) -> Option<i64> {
        match self {
            Delta::Signed(v) => Some(*v),
            Delta::Magnitude(_) => None,
        }
    }
}

pub fn delta(spec: &TorusSpec) -> Delta {
    let (u, v) = (spec.u(), spec.v());
    let td = theta(spec.d()).unwrap();
    let tds = theta(spec.d_star()).unwrap();
    let proven = u.x == -u.y && u.x != 0 && (v.x + v.y) % 3 == 0;
    if proven {
        let theta_m = theta(u.x).unwrap();
        let p = (v.x + v.y) / 3;
        let exponent = (theta_m + 1) * p;
        let sign = if exponent.rem_euclid(2) == 0 { 1 } else { -1 };
        Delta::Signed(-sign * td * tds)
    } else {
        Delta::Magnitude((td * tds).abs())
    }
}

/// `N_b + N_f = t_b + t_f + Delta`.
pub fn theorem2_total(count: &TilingCount, delta: i64) -> Result<u64> {
    let total = count.total() as i64 + delta;
    if total < 0 {
        return Err(Error::Inconsistent(format!(
            "predicted ground-state total {total} is negative (tilings {}, delta {delta})",
            count.total()
        )));
    }
    Ok(total as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Depth {
    IndexOnly,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIPPED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub torus: TorusSpec,
    pub n_sites: usize,
    pub d: i64,
    pub d_star: i64,
    pub w_enum: Option<i64>,
    pub w_transfer: Option<i64>,
    pub w_jonsson: Option<i64>,
    pub tilings: Option<TilingCount>,
    pub total_ed: Option<u64>,
    pub total_thm2: Option<u64>,
    pub delta: Delta,
    /// `total_ed - (t_b + t_f)` when both are known.
    pub observed_delta: Option<i64>,
    /// Outside the family where the sign of `Delta` is known, whether the
    /// observed correction still has magnitude `|theta_d theta_d*|`. This is
    /// recorded, not judged: the relation is only conjectured there.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_magnitude_holds: Option<bool>,
    pub comparisons: Vec<Comparison>,
}

impl CrossCheckReport {
    pub fn verdict(&self) -> Verdict {
        if self.comparisons.iter().any(|c| c.verdict == Verdict::Fail) {
            Verdict::Fail
        } else if self.comparisons.iter().any(|c| c.verdict == Verdict::Skipped) {
            Verdict::Skipped
        } else {
            Verdict::Pass
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Lattice sites allowed for enumeration and exact ranks.
    pub max_sites: usize,
    /// Hilbert-space dimension allowed for enumeration.
    pub max_dim: usize,
    pub max_tiling_nodes: u64,
    /// Cells allowed for tiling enumeration.
    pub max_tiling_cells: usize,
    /// Row width allowed for the transfer matrix.
    pub max_transfer_width: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_sites: 40,
            max_dim: 5_000_000,
            max_tiling_nodes: crate::tilings::DEFAULT_MAX_NODES,
            max_tiling_cells: 64,
            max_transfer_width: 24,
            seed: 2009,
        }
    }
}

fn compare(name: &str, a: Option<i64>, b: Option<i64>, na: &str, nb: &str) -> Comparison {
    match (a, b) {
        (Some(x), Some(y)) => Comparison {
            name: name.into(),
            verdict: if x == y { Verdict::Pass } else { Verdict::Fail },
            detail: format!("{na}={x} {nb}={y}"),
        },
        _ => Comparison {
            name: name.into(),
            verdict: Verdict::Skipped,
            detail: format!(
                "{} unavailable within resource caps",
                if a.is_none() { na } else { nb }
            ),
        },
    }
}

fn capped<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_capacity() => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn cross_check(spec: TorusSpec, depth: Depth, budget: &Budget) -> Result<CrossCheckReport> {
    let n = spec.n_sites();
    let full = depth == Depth::Full;

    let ed = || -> Result<Option<(i64, Option<u64>)>> {
        if n > budget.max_sites {
            return Ok(None);
        }
        let g = build_square_torus(spec);
        let Some(space) = capped(enumerate_sectors_capped(&g, budget.max_dim))? else {
            return Ok(None);
        };
        let w = witten_by_enumeration(&space);
        let total = if full {
            let report = exact_ground_states(&g, &space, crate::rank::choose_primes(budget.seed))?;
            Some(report.total as u64)
        } else {
            None
        };
        Ok(Some((w, total)))
    };
    let transfer = || {
        let h = spec.hermite();
        (h.a as usize <= budget.max_transfer_width).then(|| witten_transfer_torus(&spec))
    };
    let tiling = || -> Result<Option<TilingCount>> {
        if n > budget.max_tiling_cells {
            return Ok(None);
        }
        Ok(capped(enumerate_tilings_with(spec, budget.max_tiling_nodes, false))?.map(|e| e.count))
    };

    let ((ed, w_transfer), tilings) = rayon::join(|| rayon::join(ed, transfer), tiling);
    let ed = ed?;
    let tilings = tilings?;
    let w_enum = ed.map(|e| e.0);
    let total_ed = ed.and_then(|e| e.1);
    let w_jonsson = tilings.map(|c| jonsson_index(&spec, &c));
    let delta = delta(&spec);

    let mut comparisons = vec![
        compare("enum-vs-transfer", w_enum, w_transfer, "w_enum", "w_transfer"),
        compare(
            "index-vs-jonsson",
            w_enum.or(w_transfer),
            w_jonsson,
            if w_enum.is_some() { "w_enum" } else { "w_transfer" },
            "w_jonsson",
        ),
    ];
    let mut total_thm2 = None;
    let mut observed_delta = None;
    let mut delta_magnitude_holds = None;
    if full {
        if let (Some(t), Some(c)) = (total_ed, tilings) {
            observed_delta = Some(t as i64 - c.total() as i64);
        }
        match delta.signed() {
            Some(dv) => {
                total_thm2 = match tilings {
                    Some(c) => Some(theorem2_total(&c, dv)?),
                    None => None,
                };
                comparisons.push(compare(
                    "total-vs-theorem2",
                    total_ed.map(|t| t as i64),
                    total_thm2.map(|t| t as i64),
                    "total_ed",
                    "total_thm2",
                ));
            }
            None => {
                delta_magnitude_holds = observed_delta.map(|o| o.abs() == delta.magnitude());
            }
        }
    }
    Ok(CrossCheckReport {
        torus: spec,
        n_sites: n,
        d: spec.d(),
        d_star: spec.d_star(),
        w_enum,
        w_transfer,
        w_jonsson,
        tilings,
        total_ed,
        total_thm2,
        delta,
        observed_delta,
        delta_magnitude_holds,
        comparisons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Vec2;

    fn torus(ux: i64, uy: i64, vx: i64, vy: i64) -> TorusSpec {
        TorusSpec::new(Vec2::new(ux, uy), Vec2::new(vx, vy)).unwrap()
    }

    #[test]
    fn theta_values() {
        assert_eq!(theta(3).unwrap(), 2);
        assert_eq!(theta(7).unwrap(), -1);
        assert_eq!(theta(6).unwrap(), 2);
        assert_eq!(theta(-3).unwrap(), 2);
        assert!(theta(0).is_err());
        for d in 1..50 {
            assert_eq!(theta(d).unwrap(), theta(d + 3).unwrap());
        }
    }

    #[test]
    fn jonsson_on_tiny_tori() {
        let none = TilingCount::default();
        for n in 1..10 {
            assert_eq!(jonsson_index(&torus(1, 0, 0, n), &none), 1);
        }
        assert_eq!(jonsson_index(&TorusSpec::rect(2, 2).unwrap(), &none), -1);
        let five = TorusSpec::rect(5, 5).unwrap();
        assert_eq!(correction_term(&five), -1);
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta(&torus(3, -3, 3, 3)), Delta::Signed(-4));
        assert_eq!(delta(&torus(1, -1, 1, 2)), Delta::Signed(2));
        assert_eq!(delta(&TorusSpec::rect(2, 2).unwrap()), Delta::Magnitude(1));
    }

    #[test]
    fn theorem2_arithmetic() {
        let none = TilingCount::default();
        assert_eq!(theorem2_total(&none, 1).unwrap(), 1);
        assert!(matches!(theorem2_total(&none, -4), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn gcd_invariants_survive_basis_change() {
        for (u, v) in [
            (Vec2::new(3, -3), Vec2::new(3, 3)),
            (Vec2::new(5, 0), Vec2::new(0, 5)),
            (Vec2::new(4, 1), Vec2::new(-1, 3)),
        ] {
            let a = TorusSpec::new(u, v).unwrap();
            let b = TorusSpec::new(u + v, v).unwrap();
            let c = TorusSpec::new(u, v - 2 * u).unwrap();
            assert_eq!((a.d(), a.d_star()), (b.d(), b.d_star()));
            assert_eq!((a.d(), a.d_star()), (c.d(), c.d_star()));
        }
    }

    #[test]
    fn cross_check_index_only() {
        let r = cross_check(TorusSpec::rect(5, 5).unwrap(), Depth::IndexOnly, &Budget::default()).unwrap();
        assert_eq!(r.w_enum, Some(-9));
        assert_eq!(r.w_transfer, Some(-9));
        assert_eq!(r.w_jonsson, Some(-9));
        assert_eq!(r.verdict(), Verdict::Pass);

        let r = cross_check(torus(1, 0, 0, 8), Depth::IndexOnly, &Budget::default()).unwrap();
        assert_eq!((r.w_enum, r.w_transfer, r.w_jonsson), (Some(1), Some(1), Some(1)));
    }

    #[test]
    fn general_torus_delta_is_recorded_not_judged() {
        // 4 x 5: three ground states but no tilings at all
        let r = cross_check(TorusSpec::rect(4, 5).unwrap(), Depth::Full, &Budget::default()).unwrap();
        assert_eq!(r.verdict(), Verdict::Pass);
        assert_eq!(r.tilings, Some(TilingCount::default()));
        assert_eq!(r.total_ed, Some(3));
        assert_eq!(r.observed_delta, Some(3));
        assert_eq!(r.delta_magnitude_holds, Some(false));
        let r = cross_check(TorusSpec::rect(4, 4).unwrap(), Depth::Full, &Budget::default()).unwrap();
        assert_eq!(r.observed_delta, Some(-1));
        assert_eq!(r.delta_magnitude_holds, Some(true));
    }

    #[test]
    fn cross_check_full_small() {
        let r = cross_check(torus(1, -1, 1, 2), Depth::Full, &Budget::default()).unwrap();
        assert_eq!(r.total_ed, Some(2));
        assert_eq!(r.total_thm2, Some(2));
        assert_eq!(r.verdict(), Verdict::Pass);
    }

    #[test]
    fn cross_check_skips_over_budget() {
        let budget = Budget {
            max_sites: 10,
            max_tiling_cells: 10,
            ..Budget::default()
        };
        let r = cross_check(TorusSpec::rect(4, 4).unwrap(), Depth::IndexOnly, &budget).unwrap();
        assert_eq!(r.w_enum, None);
        assert_eq!(r.w_transfer, Some(7));
        assert_eq!(r.verdict(), Verdict::Skipped);
    }
}
