//! Proximity graph builders: order-k Gabriel, relative-neighborhood, and
//! Delaunay graphs, constructed by direct predicate counting.
//!
//! For each unordered pair the builder records a *depth*: the number of
//! witness points counted against that pair by the family's predicate. The
//! order-k graph keeps exactly the pairs of depth at most k, so one depth
//! map serves every order on the same point set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{dist2, disk_membership, Point, PointSet, TolerancePolicy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphFamily {
    /// Closed disk with the pair as diameter; boundary points count.
    GG,
    /// Open lune: intersection of the two open disks of radius |pq|
    /// centered at p and q; boundary points do not count.
    RNG,
    /// Some circle through the pair with few points strictly inside.
    DG,
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamily::GG => write!(f, "gg"),
            GraphFamily::RNG => write!(f, "rng"),
            GraphFamily::DG => write!(f, "dg"),
        }
    }
}

impl FromStr for GraphFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gg" | "gabriel" => Ok(GraphFamily::GG),
            "rng" => Ok(GraphFamily::RNG),
            "dg" | "delaunay" => Ok(GraphFamily::DG),
            other => Err(Error::InvalidInput(format!("unknown graph family {other:?}"))),
        }
    }
}

/// An undirected proximity graph on vertex indices, with the per-pair
/// witness depth for every examined pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProximityGraph {
    pub n: usize,
    pub family: GraphFamily,
    pub order: usize,
    edges: BTreeSet<(usize, usize)>,
    depth: BTreeMap<(usize, usize), usize>,
}

fn key(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

impl ProximityGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&key(i, j))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges.iter().copied().collect()
    }

    /// Witness depth of a pair, if it was examined.
    pub fn depth(&self, i: usize, j: usize) -> Option<usize> {
        self.depth.get(&key(i, j)).copied()
    }

    pub fn depth_map(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.depth
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// True iff this graph's edges are a subset of `other`'s.
    pub fn is_subgraph_of(&self, other: &ProximityGraph) -> bool {
        self.edges.is_subset(&other.edges)
    }
}

/// Number of points of `ps` minus the endpoints that lie in the closed disk
/// with diameter (i, j). Boundary points count.
pub fn edge_depth_gg(ps: &PointSet, i: usize, j: usize, pol: TolerancePolicy) -> Result<usize> {
    let a = ps.get(i);
    let b = ps.get(j);
    let mut depth = 0;
    for (r, p) in ps.iter().enumerate() {
        if r == i || r == j {
            continue;
        }
        if disk_membership(a, b, p, pol)?.in_closed_disk() {
            depth += 1;
        }
    }
    Ok(depth)
}

/// Number of points strictly inside the open lune of (i, j): both squared
/// distances must fall below |ij|^2 by more than tau.
fn edge_depth_lune(ps: &PointSet, i: usize, j: usize, pol: TolerancePolicy) -> Result<usize> {
    let a = ps.get(i);
    let b = ps.get(j);
    let l2 = dist2(a, b);
    if l2 <= pol.tau {
        return Err(Error::DegenerateDiameter);
    }
    let mut depth = 0;
    for (r, p) in ps.iter().enumerate() {
        if r == i || r == j {
            continue;
        }
        if dist2(a, p) < l2 - pol.tau && dist2(p, b) < l2 - pol.tau {
            depth += 1;
        }
    }
    Ok(depth)
}

/// Minimum, over all circles through points i and j, of the number of other
/// points strictly inside the circle.
///
/// Circle centers live on the perpendicular bisector of ij, parameterized by
/// a signed offset t from the midpoint. For a third point r the difference
/// `|cr|^2 - radius^2` is linear in t, so the interior count changes only at
/// one critical offset per point. The minimum is attained at a critical
/// offset or between two of them; both kinds of candidates are evaluated.
fn edge_depth_dg(ps: &PointSet, i: usize, j: usize, pol: TolerancePolicy) -> Result<usize> {
    let p = ps.get(i);
    let q = ps.get(j);
    let l2 = dist2(p, q);
    if l2 <= pol.tau {
        return Err(Error::DegenerateDiameter);
    }
    let mid = Point::new((p.x + q.x) / 2.0, (p.y + q.y) / 2.0);
    let len = l2.sqrt();
    // Unit direction of the bisector.
    let u = Point::new(-(q.y - p.y) / len, (q.x - p.x) / len);

    // g_r(t) = |r - c(t)|^2 - radius(t)^2 = a_r - b_r * t.
    let mut coeffs = Vec::with_capacity(ps.len());
    let mut criticals = vec![0.0f64];
    for (r, pt) in ps.iter().enumerate() {
        if r == i || r == j {
            continue;
        }
        let a_r = dist2(pt, mid) - l2 / 4.0;
        let b_r = 2.0 * (u.x * (pt.x - mid.x) + u.y * (pt.y - mid.y));
        coeffs.push((a_r, b_r));
        if b_r != 0.0 {
            criticals.push(a_r / b_r);
        }
    }
    criticals.sort_by(f64::total_cmp);
    criticals.dedup();

    let mut candidates = Vec::with_capacity(2 * criticals.len() + 2);
    candidates.push(criticals[0] - 1.0 - criticals[0].abs());
    for w in criticals.windows(2) {
        candidates.push(w[0]);
        candidates.push((w[0] + w[1]) / 2.0);
    }
    candidates.push(*criticals.last().unwrap());
    candidates.push(criticals.last().unwrap() + 1.0 + criticals.last().unwrap().abs());

    let mut best = usize::MAX;
    for &t in &candidates {
        let count = coeffs
            .iter()
            .filter(|&&(a_r, b_r)| a_r - b_r * t < -pol.tau)
            .count();
        best = best.min(count);
        if best == 0 {
            break;
        }
    }
    Ok(best)
}

fn build_family<F>(
    ps: &PointSet,
    family: GraphFamily,
    k: usize,
    pol: TolerancePolicy,
    depth_of: F,
) -> Result<ProximityGraph>
where
    F: Fn(&PointSet, usize, usize, TolerancePolicy) -> Result<usize>,
{
    let n = ps.len();
    if n < 2 {
        return Err(Error::TooFewPoints { n, min: 2 });
    }
    ps.check_distinct(pol)?;
    let mut edges = BTreeSet::new();
    let mut depth = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = depth_of(ps, i, j, pol)?;
            depth.insert((i, j), d);
            if d <= k {
                edges.insert((i, j));
            }
        }
    }
    Ok(ProximityGraph {
        n,
        family,
        order: k,
        edges,
        depth,
    })
}

/// Order-k Gabriel graph: edge (i, j) iff the closed disk with diameter ij
/// contains at most k other points (boundary included).
pub fn build_kgg(ps: &PointSet, k: usize, pol: TolerancePolicy) -> Result<ProximityGraph> {
    build_family(ps, GraphFamily::GG, k, pol, edge_depth_gg)
}

/// Order-k relative neighborhood graph: edge (i, j) iff the open lune of the
/// pair contains at most k points.
pub fn build_krng(ps: &PointSet, k: usize, pol: TolerancePolicy) -> Result<ProximityGraph> {
    build_family(ps, GraphFamily::RNG, k, pol, edge_depth_lune)
}

/// Order-k Delaunay graph: edge (i, j) iff some circle through the pair has
/// at most k points strictly inside.
pub fn build_kdg(ps: &PointSet, k: usize, pol: TolerancePolicy) -> Result<ProximityGraph> {
    build_family(ps, GraphFamily::DG, k, pol, edge_depth_dg)
}

/// First pair of graph edges (as segments) that properly cross, if any.
pub fn find_proper_crossing(
    ps: &PointSet,
    g: &ProximityGraph,
) -> Option<((usize, usize), (usize, usize))> {
    let edges = g.edge_list();
    for (a, &e1) in edges.iter().enumerate() {
        for &e2 in edges.iter().skip(a + 1) {
            if e1.0 == e2.0 || e1.0 == e2.1 || e1.1 == e2.0 || e1.1 == e2.1 {
                continue;
            }
            if crate::geom::segments_properly_cross(
                ps.get(e1.0),
                ps.get(e1.1),
                ps.get(e2.0),
                ps.get(e2.1),
            ) {
                return Some((e1, e2));
            }
        }
    }
    None
}
