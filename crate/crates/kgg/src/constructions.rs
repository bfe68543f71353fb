//! Generators for extremal point configurations and blocking sets. Every
//! generator re-checks the stated properties of its output and fails loudly
//! rather than emitting a silently-wrong instance.
//!
//! Coordinates are chosen so that every predicate discriminant is either
//! exactly zero (small-integer inputs) or far above the tolerance, which
//! keeps the instances stable regression anchors.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{dist2, Point, PointSet, TolerancePolicy};
use crate::matching::{independence_number, max_matching};
use crate::proximity::{build_kgg, edge_depth_gg};

/// A generated point set with named points and the parameters it was built
/// from.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LabeledInstance {
    pub points: PointSet,
    pub labels: BTreeMap<String, usize>,
    pub params: BTreeMap<String, f64>,
}

impl LabeledInstance {
    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.get(label).copied()
    }
}

/// Points intended to make a base set independent in some order-k graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockerSet {
    pub blockers: PointSet,
    pub order: usize,
}

/// Outcome of a blocking check: either every base pair is suppressed, or
/// the offending pairs are listed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockReport {
    pub blocked: bool,
    pub unblocked: Vec<(usize, usize)>,
}

fn dir(angle: f64) -> Point {
    Point::new(angle.cos(), angle.sin())
}

/// 20 points whose order-8 Gabriel graph misses every Euclidean bottleneck
/// matching.
///
/// A unit-diameter pair (a, b) sits at the center; nine inner points u_j on
/// the radius (1/2 - eps) circle are each the unique nearest partner of an
/// outer point r_j on the radius 1.5 circle, radially aligned so
/// |r_j u_j| = 1 + eps. Outer directions advance by 40 degrees and the
/// segment ab points 10 degrees off the nearest outer direction, which
/// maximizes the slack of the separation constraints.
///
/// The generator verifies each constraint family and reports the first
/// violation (which is how an over-large eps surfaces):
/// |r_j u_j| = 1 + eps, |r_j a| > 1 + eps, |r_j b| > 1 + eps, and
/// |r_j r_k| > 1 + eps.
pub fn gen_counterexample_8gg(eps: f64) -> Result<LabeledInstance> {
    if !eps.is_finite() || eps <= 0.0 || eps >= 0.5 {
        return Err(Error::ConstraintViolated(format!(
            "eps must lie in (0, 0.5), got {eps}"
        )));
    }
    let deg = PI / 180.0;
    let ab_dir = dir(10.0 * deg);
    let a = Point::new(-0.5 * ab_dir.x, -0.5 * ab_dir.y);
    let b = Point::new(0.5 * ab_dir.x, 0.5 * ab_dir.y);

    let mut points = vec![a, b];
    let mut labels = BTreeMap::new();
    labels.insert("a".to_string(), 0);
    labels.insert("b".to_string(), 1);
    let inner_radius = 0.5 - eps;
    for j in 1..=9usize {
        let d = dir(40.0 * j as f64 * deg);
        labels.insert(format!("u{j}"), points.len());
        points.push(Point::new(inner_radius * d.x, inner_radius * d.y));
    }
    for j in 1..=9usize {
        let d = dir(40.0 * j as f64 * deg);
        labels.insert(format!("r{j}"), points.len());
        points.push(Point::new(1.5 * d.x, 1.5 * d.y));
    }
    let ps = PointSet::new(points)?;

    let target = 1.0 + eps;
    let target2 = target * target;
    let u = |j: usize| ps.get(1 + j);
    let r = |j: usize| ps.get(10 + j);
    for j in 1..=9 {
        let d2 = dist2(r(j), u(j));
        if (d2 - target2).abs() > 1e-12 * target2 {
            return Err(Error::ConstraintViolated(format!(
                "|r{j} u{j}| = {} but must equal {target}",
                d2.sqrt()
            )));
        }
        if dist2(r(j), a) <= target2 {
            return Err(Error::ConstraintViolated(format!(
                "|r{j} a| = {} but must exceed {target}",
                dist2(r(j), a).sqrt()
            )));
        }
        if dist2(r(j), b) <= target2 {
            return Err(Error::ConstraintViolated(format!(
                "|r{j} b| = {} but must exceed {target}",
                dist2(r(j), b).sqrt()
            )));
        }
        for kk in j + 1..=9 {
            if dist2(r(j), r(kk)) <= target2 {
                return Err(Error::ConstraintViolated(format!(
                    "|r{j} r{kk}| = {} but must exceed {target}",
                    dist2(r(j), r(kk)).sqrt()
                )));
            }
        }
        // u_j must be the unique nearest partner of r_j.
        for kk in 1..=9 {
            if kk != j && dist2(r(j), u(kk)) <= target2 {
                return Err(Error::ConstraintViolated(format!(
                    "|r{j} u{kk}| = {} undercuts the intended pairing",
                    dist2(r(j), u(kk)).sqrt()
                )));
            }
        }
    }

    let mut params = BTreeMap::new();
    params.insert("eps".to_string(), eps);
    Ok(LabeledInstance {
        points: ps,
        labels,
        params,
    })
}

/// 17 points whose order-0 Gabriel graph is a tree of maximum degree four
/// with maximum matching 4 and independence number 13.
///
/// Four degree-4 centers on a horizontal line, each with four unit arms;
/// consecutive centers share an arm tip. Would-be edges between arm tips
/// die exactly: the disk over two perpendicular arms of one center passes
/// through that center, and boundary contact suppresses the pair.
pub fn gen_tight_0gg() -> Result<LabeledInstance> {
    let mut coords: Vec<(f64, f64)> = vec![(0.0, 0.0), (2.0, 0.0), (4.0, 0.0), (6.0, 0.0)];
    coords.extend_from_slice(&[
        (-1.0, 0.0),
        (0.0, 1.0),
        (0.0, -1.0),
        (1.0, 0.0),
        (2.0, 1.0),
        (2.0, -1.0),
        (3.0, 0.0),
        (4.0, 1.0),
        (4.0, -1.0),
        (5.0, 0.0),
        (6.0, 1.0),
        (6.0, -1.0),
        (7.0, 0.0),
    ]);
    let ps = PointSet::from_coords(&coords)?;
    let mut labels = BTreeMap::new();
    for i in 0..4 {
        labels.insert(format!("c{}", i + 1), i);
    }

    let pol = TolerancePolicy::default();
    let g = build_kgg(&ps, 0, pol)?;
    let n = ps.len();
    if g.edge_count() != n - 1 {
        return Err(Error::SelfCheckFailed(format!(
            "expected {} edges, built {}",
            n - 1,
            g.edge_count()
        )));
    }
    if !is_connected(n, &g.edge_list()) {
        return Err(Error::SelfCheckFailed("graph is not connected".into()));
    }
    if (0..n).map(|v| g.degree(v)).max().unwrap_or(0) != 4 {
        return Err(Error::SelfCheckFailed("maximum degree is not 4".into()));
    }
    let nu = max_matching(n, &g.edge_list()).len();
    if nu != 4 {
        return Err(Error::SelfCheckFailed(format!(
            "maximum matching is {nu}, expected 4"
        )));
    }
    let alpha = independence_number(n, &g.edge_list())?;
    if alpha != 13 {
        return Err(Error::SelfCheckFailed(format!(
            "independence number is {alpha}, expected 13"
        )));
    }

    Ok(LabeledInstance {
        points: ps,
        labels,
        params: BTreeMap::new(),
    })
}

/// 13 points whose order-0 Gabriel graph is a chain of four quadrilateral
/// cycles, blocked by 4 points: one per cycle, placed at the common point
/// of the four disks of that cycle's edges.
pub fn gen_blocking_tight() -> Result<(LabeledInstance, BlockerSet)> {
    let mut coords: Vec<(f64, f64)> = Vec::new();
    for d in 0..4 {
        let x0 = 2.0 * d as f64;
        coords.push((x0, 0.0));
        coords.push((x0 + 1.0, 1.0));
        coords.push((x0 + 1.0, -1.0));
    }
    coords.push((8.0, 0.0));
    let ps = PointSet::from_coords(&coords)?;

    let blockers = PointSet::from_coords(&[(1.0, 0.0), (3.0, 0.0), (5.0, 0.0), (7.0, 0.0)])?;
    let blocker_set = BlockerSet {
        blockers,
        order: 0,
    };

    let pol = TolerancePolicy::default();
    let g = build_kgg(&ps, 0, pol)?;
    if g.edge_count() != 16 {
        return Err(Error::SelfCheckFailed(format!(
            "base graph has {} edges, expected the 16 cycle edges",
            g.edge_count()
        )));
    }
    let report = verify_blocked(&ps, &blocker_set, 0, pol)?;
    if !report.blocked {
        return Err(Error::SelfCheckFailed(format!(
            "blockers leave edges {:?} alive",
            report.unblocked
        )));
    }

    let mut labels = BTreeMap::new();
    labels.insert("leftmost".to_string(), 0);
    labels.insert("rightmost".to_string(), 12);
    Ok((
        LabeledInstance {
            points: ps,
            labels,
            params: BTreeMap::new(),
        },
        blocker_set,
    ))
}

/// k+1 blockers just right of every point except the rightmost one:
/// offsets (delta, 0), (2 delta, 0), ..., ((k+1) delta, 0). Emits exactly
/// (k+1)(n-1) points. Success is not guaranteed for every delta; callers
/// verify with [`verify_blocked`] and shrink delta on failure.
pub fn blockers_right(ps: &PointSet, k: usize, delta: f64) -> Result<BlockerSet> {
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "offset must be positive, got {delta}"
        )));
    }
    let n = ps.len();
    if n < 2 {
        return Err(Error::TooFewPoints { n, min: 2 });
    }
    // Distinct points always have a unique lexicographic maximum.
    let rightmost = (0..n)
        .max_by(|&i, &j| {
            let (p, q) = (ps.get(i), ps.get(j));
            p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y))
        })
        .unwrap();
    let mut blockers = Vec::with_capacity((k + 1) * (n - 1));
    for (i, p) in ps.iter().enumerate() {
        if i == rightmost {
            continue;
        }
        for j in 1..=k + 1 {
            blockers.push(Point::new(p.x + j as f64 * delta, p.y));
        }
    }
    Ok(BlockerSet {
        blockers: PointSet::new(blockers)?,
        order: k,
    })
}

/// Default blocker offset: a small fraction of the closest pair distance.
pub fn default_offset(ps: &PointSet) -> f64 {
    ps.min_pairwise_dist2()
        .map(|d2| 1e-4 * d2.sqrt())
        .unwrap_or(1e-4)
}

/// Runs [`blockers_right`] with the default offset, shrinking it tenfold on
/// failure while the blockers stay distinguishable under the tolerance.
pub fn blockers_right_auto(
    ps: &PointSet,
    k: usize,
    pol: TolerancePolicy,
) -> Result<(BlockerSet, BlockReport)> {
    let mut delta = default_offset(ps);
    let mut last = None;
    while delta * delta > 10.0 * pol.tau.max(f64::MIN_POSITIVE) {
        let set = blockers_right(ps, k, delta)?;
        let report = verify_blocked(ps, &set, k, pol)?;
        if report.blocked {
            return Ok((set, report));
        }
        last = Some((set, report));
        delta /= 10.0;
    }
    last.ok_or_else(|| {
        Error::InvalidInput("point set too tight for any usable blocker offset".into())
    })
}

/// Checks whether `blockers` suppress every pair of base points in the
/// order-k Gabriel graph of the union, reporting surviving pairs.
pub fn verify_blocked(
    ps: &PointSet,
    blockers: &BlockerSet,
    k: usize,
    pol: TolerancePolicy,
) -> Result<BlockReport> {
    let union = ps.union(&blockers.blockers);
    union.check_distinct(pol)?;
    let n = ps.len();
    let mut unblocked = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if edge_depth_gg(&union, i, j, pol)? <= k {
                unblocked.push((i, j));
            }
        }
    }
    Ok(BlockReport {
        blocked: unblocked.is_empty(),
        unblocked,
    })
}

/// n evenly spaced collinear points.
pub fn gen_collinear(n: usize, spacing: f64) -> Result<PointSet> {
    if n < 2 {
        return Err(Error::TooFewPoints { n, min: 2 });
    }
    if !spacing.is_finite() || spacing <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "spacing must be positive, got {spacing}"
        )));
    }
    PointSet::new(
        (0..n)
            .map(|i| Point::new(i as f64 * spacing, 0.0))
            .collect(),
    )
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == n
}
