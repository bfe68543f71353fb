//! Planar primitives: squared distances, the closed-disk-with-diameter
//! predicate, and lexicographic weight-sequence comparison.
//!
//! All predicates work on squared lengths. The only tolerance in the whole
//! crate is [`TolerancePolicy::tau`], an absolute slack applied to
//! squared-length discriminants; true (rooted) distances appear only in
//! reported weights.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in the plane. Coordinates must be finite; [`PointSet::new`]
/// enforces this.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Squared Euclidean distance between `p` and `q`.
#[inline]
pub fn dist2(p: Point, q: Point) -> f64 {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    dx * dx + dy * dy
}

/// An ordered list of points; vertex ids are list indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// Builds a point set, rejecting non-finite coordinates.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        for (index, p) in points.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFinitePoint { index });
            }
        }
        Ok(PointSet { points })
    }

    pub fn from_coords(coords: &[(f64, f64)]) -> Result<Self> {
        PointSet::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.points.iter().copied()
    }

    /// Smallest squared distance over all pairs, or `None` for n < 2.
    pub fn min_pairwise_dist2(&self) -> Option<f64> {
        let n = self.points.len();
        if n < 2 {
            return None;
        }
        let mut best = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                best = best.min(dist2(self.points[i], self.points[j]));
            }
        }
        Some(best)
    }

    /// Errors with the first pair of points that coincide within `pol`.
    pub fn check_distinct(&self, pol: TolerancePolicy) -> Result<()> {
        let n = self.points.len();
        for i in 0..n {
            for j in i + 1..n {
                if dist2(self.points[i], self.points[j]) <= pol.tau {
                    return Err(Error::DuplicatePoints { i, j });
                }
            }
        }
        Ok(())
    }

    /// Concatenates two sets; ids of `other` are shifted by `self.len()`.
    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut points = self.points.clone();
        points.extend_from_slice(&other.points);
        PointSet { points }
    }
}

/// Absolute tolerance on squared-length discriminants.
///
/// Coincidence of points is measured on the same scale: two points are
/// treated as equal when their squared distance is at most `tau`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub tau: f64,
}

impl TolerancePolicy {
    pub const DEFAULT_TAU: f64 = 1e-9;

    pub fn new(tau: f64) -> Result<Self> {
        if !tau.is_finite() || tau < 0.0 {
            return Err(Error::InvalidInput(format!(
                "tolerance must be finite and non-negative, got {tau}"
            )));
        }
        Ok(TolerancePolicy { tau })
    }
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy {
            tau: Self::DEFAULT_TAU,
        }
    }
}

/// Classification of a point against the closed disk D[a,b] that has the
/// segment ab as diameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiskMembership {
    Outside,
    Boundary,
    Inside,
}

impl DiskMembership {
    /// Boundary points belong to the closed disk.
    pub fn in_closed_disk(self) -> bool {
        !matches!(self, DiskMembership::Outside)
    }
}

/// Classifies `r` against D[a,b] via the discriminant
/// `d = |ar|^2 + |rb|^2 - |ab|^2`: Inside iff `d < -tau`, Boundary iff
/// `|d| <= tau`, Outside iff `d > tau`.
///
/// `r` lies on the circle with diameter ab exactly when the angle a-r-b is
/// right, which is `d = 0` by the law of cosines.
pub fn disk_membership(a: Point, b: Point, r: Point, pol: TolerancePolicy) -> Result<DiskMembership> {
    if dist2(a, b) <= pol.tau {
        return Err(Error::DegenerateDiameter);
    }
    let d = dist2(a, r) + dist2(r, b) - dist2(a, b);
    Ok(if d < -pol.tau {
        DiskMembership::Inside
    } else if d <= pol.tau {
        DiskMembership::Boundary
    } else {
        DiskMembership::Outside
    })
}

/// Edge weights of a graph sorted in non-increasing order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightSequence(Vec<f64>);

impl WeightSequence {
    /// Sorts the given weights into non-increasing order.
    pub fn from_unsorted(mut weights: Vec<f64>) -> Self {
        weights.sort_by(|a, b| b.partial_cmp(a).expect("weights must be comparable"));
        WeightSequence(weights)
    }

    /// Wraps a slice that is already non-increasing.
    pub fn from_sorted(weights: Vec<f64>) -> Self {
        debug_assert!(weights.windows(2).all(|w| w[0] >= w[1]));
        WeightSequence(weights)
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest weight; 0 for the empty sequence.
    pub fn max(&self) -> f64 {
        self.0.first().copied().unwrap_or(0.0)
    }
}

/// Lexicographic comparison of non-increasing weight sequences. When one
/// sequence is a proper prefix of the other, the shorter compares Less.
pub fn compare_ws(w1: &WeightSequence, w2: &WeightSequence) -> Ordering {
    for (a, b) in w1.0.iter().zip(w2.0.iter()) {
        match a.partial_cmp(b).expect("weights must be comparable") {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    w1.0.len().cmp(&w2.0.len())
}

/// Signed area of the triangle a, b, c (positive for counter-clockwise).
#[inline]
pub fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// True iff the open interiors of segments p1p2 and q1q2 intersect.
/// Shared endpoints and touchings do not count.
pub fn segments_properly_cross(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = orient(p1, p2, q1);
    let d2 = orient(p1, p2, q2);
    let d3 = orient(q1, q2, p1);
    let d4 = orient(q1, q2, p2);
    (d1 * d2 < 0.0) && (d3 * d4 < 0.0)
}

/// Intersection points of two circles given by center and squared radius.
///
/// Returns zero, one (tangency within `tau`), or two points. Concentric
/// circles yield no points.
pub fn circle_circle_intersections(
    c1: Point,
    r2_1: f64,
    c2: Point,
    r2_2: f64,
    pol: TolerancePolicy,
) -> Vec<Point> {
    let d2 = dist2(c1, c2);
    if d2 <= pol.tau {
        return Vec::new();
    }
    // Foot of the radical axis along c1 -> c2, as a fraction of d2.
    let t = (d2 + r2_1 - r2_2) / (2.0 * d2);
    let base = Point::new(c1.x + t * (c2.x - c1.x), c1.y + t * (c2.y - c1.y));
    let h2 = r2_1 - t * t * d2;
    if h2 < -pol.tau {
        return Vec::new();
    }
    if h2 <= pol.tau {
        return vec![base];
    }
    let scale = (h2 / d2).sqrt();
    let off = Point::new(-(c2.y - c1.y) * scale, (c2.x - c1.x) * scale);
    vec![
        Point::new(base.x + off.x, base.y + off.y),
        Point::new(base.x - off.x, base.y - off.y),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn dist2_known_values() {
        assert_eq!(dist2(Point::new(0.0, 0.0), Point::new(0.0, 0.0)), 0.0);
        assert_eq!(dist2(Point::new(0.0, 0.0), Point::new(3.0, 4.0)), 25.0);
        // (-3)^2 + 4^2
        assert_eq!(dist2(Point::new(1.0, 1.0), Point::new(-2.0, 5.0)), 25.0);
    }

    #[test]
    fn disk_membership_classes() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(2.0, 0.0);
        assert_eq!(
            disk_membership(a, b, Point::new(1.0, 0.0), pol()).unwrap(),
            DiskMembership::Inside
        );
        // (1,1) is on the circle with diameter ab: distance 1 from center (1,0).
        assert_eq!(
            disk_membership(a, b, Point::new(1.0, 1.0), pol()).unwrap(),
            DiskMembership::Boundary
        );
        // d = 18 + 10 - 4 = 24 > 0
        assert_eq!(
            disk_membership(a, b, Point::new(3.0, 3.0), pol()).unwrap(),
            DiskMembership::Outside
        );
    }

    #[test]
    fn disk_membership_rejects_degenerate_diameter() {
        let a = Point::new(1.0, 1.0);
        let r = Point::new(0.0, 0.0);
        assert!(matches!(
            disk_membership(a, a, r, pol()),
            Err(Error::DegenerateDiameter)
        ));
    }

    #[test]
    fn compare_ws_examples() {
        let a = WeightSequence::from_unsorted(vec![3.0, 1.0]);
        let b = WeightSequence::from_unsorted(vec![3.0, 2.0]);
        assert_eq!(compare_ws(&a, &b), Ordering::Less);

        let c = WeightSequence::from_unsorted(vec![5.0]);
        assert_eq!(compare_ws(&c, &c), Ordering::Equal);

        let d = WeightSequence::from_unsorted(vec![2.0, 2.0]);
        let e = WeightSequence::from_unsorted(vec![3.0]);
        assert_eq!(compare_ws(&d, &e), Ordering::Less);
    }

    #[test]
    fn compare_ws_prefix_rule() {
        let short = WeightSequence::from_unsorted(vec![3.0]);
        let long = WeightSequence::from_unsorted(vec![3.0, 1.0]);
        assert_eq!(compare_ws(&short, &long), Ordering::Less);
        assert_eq!(compare_ws(&long, &short), Ordering::Greater);
    }

    #[test]
    fn pointset_rejects_non_finite() {
        let r = PointSet::from_coords(&[(0.0, 0.0), (f64::NAN, 1.0)]);
        assert!(matches!(r, Err(Error::NonFinitePoint { index: 1 })));
    }

    #[test]
    fn duplicate_detection() {
        let ps = PointSet::from_coords(&[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)]).unwrap();
        assert!(matches!(
            ps.check_distinct(pol()),
            Err(Error::DuplicatePoints { i: 0, j: 2 })
        ));
    }

    #[test]
    fn proper_crossing() {
        let o = Point::new(0.0, 0.0);
        let e = Point::new(2.0, 0.0);
        assert!(segments_properly_cross(
            o,
            Point::new(2.0, 2.0),
            Point::new(0.0, 2.0),
            e
        ));
        // Sharing an endpoint is not a proper crossing.
        assert!(!segments_properly_cross(o, e, o, Point::new(0.0, 2.0)));
    }

    #[test]
    fn circle_intersections_counts() {
        // Unit circles two apart: tangent at the midpoint.
        let pts = circle_circle_intersections(
            Point::new(0.0, 0.0),
            1.0,
            Point::new(2.0, 0.0),
            1.0,
            pol(),
        );
        assert_eq!(pts.len(), 1);
        assert!(dist2(pts[0], Point::new(1.0, 0.0)) <= 1e-18);

        // Overlapping: two symmetric points.
        let pts = circle_circle_intersections(
            Point::new(0.0, 0.0),
            1.0,
            Point::new(1.0, 0.0),
            1.0,
            pol(),
        );
        assert_eq!(pts.len(), 2);
        for p in &pts {
            assert!((dist2(*p, Point::new(0.0, 0.0)) - 1.0).abs() < 1e-12);
            assert!((dist2(*p, Point::new(1.0, 0.0)) - 1.0).abs() < 1e-12);
        }

        // Far apart: none.
        let pts = circle_circle_intersections(
            Point::new(0.0, 0.0),
            1.0,
            Point::new(10.0, 0.0),
            1.0,
            pol(),
        );
        assert!(pts.is_empty());
    }

    proptest! {
        #[test]
        fn disk_membership_symmetric(ax in -50i32..50, ay in -50i32..50,
                                     bx in -50i32..50, by in -50i32..50,
                                     rx in -50i32..50, ry in -50i32..50) {
            let a = Point::new(ax as f64, ay as f64);
            let b = Point::new(bx as f64, by as f64);
            let r = Point::new(rx as f64, ry as f64);
            prop_assume!(dist2(a, b) > pol().tau);
            prop_assert_eq!(
                disk_membership(a, b, r, pol()).unwrap(),
                disk_membership(b, a, r, pol()).unwrap()
            );
        }

        #[test]
        fn disk_membership_translation_invariant(
            ax in -50i32..50, ay in -50i32..50,
            bx in -50i32..50, by in -50i32..50,
            rx in -50i32..50, ry in -50i32..50,
            tx in -100i32..100, ty in -100i32..100,
        ) {
            let sh = |p: Point| Point::new(p.x + tx as f64, p.y + ty as f64);
            let a = Point::new(ax as f64, ay as f64);
            let b = Point::new(bx as f64, by as f64);
            let r = Point::new(rx as f64, ry as f64);
            prop_assume!(dist2(a, b) > pol().tau);
            prop_assert_eq!(
                disk_membership(a, b, r, pol()).unwrap(),
                disk_membership(sh(a), sh(b), sh(r), pol()).unwrap()
            );
        }

        #[test]
        fn compare_ws_antisymmetric_and_transitive(
            v1 in proptest::collection::vec(0.0f64..10.0, 0..6),
            v2 in proptest::collection::vec(0.0f64..10.0, 0..6),
            v3 in proptest::collection::vec(0.0f64..10.0, 0..6),
        ) {
            let a = WeightSequence::from_unsorted(v1);
            let b = WeightSequence::from_unsorted(v2);
            let c = WeightSequence::from_unsorted(v3);
            prop_assert_eq!(compare_ws(&a, &b), compare_ws(&b, &a).reverse());
            if compare_ws(&a, &b) != Ordering::Greater && compare_ws(&b, &c) != Ordering::Greater {
                prop_assert_ne!(compare_ws(&a, &c), Ordering::Greater);
            }
        }
    }
}
