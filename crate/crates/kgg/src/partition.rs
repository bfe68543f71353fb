//! Partition machinery: the complete class graph weighted by nearest
//! inter-class distances, its deterministic minimum spanning tree realized
//! by witness point pairs, the diameter disks of those witnesses, and exact
//! depth queries over the resulting disk arrangement.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    circle_circle_intersections, dist2, disk_membership, Point, PointSet, TolerancePolicy,
};

/// Disjoint non-empty classes of point indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Partition {
    classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for (class, members) in classes.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::EmptyClass { class });
            }
            for &v in members {
                if !seen.insert(v) {
                    return Err(Error::InvalidPartition(format!(
                        "index {v} appears in more than one class"
                    )));
                }
            }
        }
        Ok(Partition { classes })
    }

    /// One singleton class per point: collapses the machinery to a plain
    /// Euclidean MST.
    pub fn singletons(n: usize) -> Self {
        Partition {
            classes: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// All member indices, sorted.
    pub fn ground_set(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.classes.iter().flatten().copied().collect();
        g.sort_unstable();
        g
    }
}

/// An edge of the complete class graph: exact nearest distance between two
/// classes plus one realizing point pair.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ClassEdge {
    pub class_i: usize,
    pub class_j: usize,
    /// Realizing pair, normalized to (low, high) point index.
    pub witness: (usize, usize),
    pub dist2: f64,
}

/// Complete graph on partition classes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionGraph {
    pub class_count: usize,
    pub edges: Vec<ClassEdge>,
}

/// Builds the class graph. Nearest-pair ties break toward the smallest
/// normalized witness pair, which keeps every downstream artifact
/// deterministic.
pub fn partition_graph(ps: &PointSet, partition: &Partition) -> Result<PartitionGraph> {
    for &v in partition.classes().iter().flatten() {
        if v >= ps.len() {
            return Err(Error::InvalidPartition(format!(
                "index {v} out of range for {} points",
                ps.len()
            )));
        }
    }
    let m = partition.class_count();
    let mut edges = Vec::with_capacity(m * (m.saturating_sub(1)) / 2);
    for i in 0..m {
        for j in i + 1..m {
            let mut best: Option<((usize, usize), f64)> = None;
            for &a in &partition.classes()[i] {
                for &b in &partition.classes()[j] {
                    let w = dist2(ps.get(a), ps.get(b));
                    let pair = if a < b { (a, b) } else { (b, a) };
                    let better = match best {
                        None => true,
                        Some((bp, bw)) => {
                            w < bw || (w == bw && pair < bp)
                        }
                    };
                    if better {
                        best = Some((pair, w));
                    }
                }
            }
            let (witness, dist2) = best.expect("classes are non-empty");
            edges.push(ClassEdge {
                class_i: i,
                class_j: j,
                witness,
                dist2,
            });
        }
    }
    Ok(PartitionGraph {
        class_count: m,
        edges,
    })
}

/// A straight-line edge realizing one MST edge of the class graph.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct WitnessEdge {
    pub a: usize,
    pub b: usize,
    pub classes: (usize, usize),
    pub dist2: f64,
}

/// The witness edges of a minimum spanning tree of the class graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessTree {
    pub edges: Vec<WitnessEdge>,
}

impl WitnessTree {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.a, e.b)).collect()
    }
}

/// Kruskal over the class graph with ties broken lexicographically on the
/// witness pair, so repeated runs (and the Euclidean MST of a singleton
/// partition) pick identical trees.
pub fn mst_witness(pg: &PartitionGraph) -> WitnessTree {
    let mut order: Vec<&ClassEdge> = pg.edges.iter().collect();
    order.sort_by(|x, y| {
        x.dist2
            .total_cmp(&y.dist2)
            .then(x.witness.cmp(&y.witness))
    });
    let mut parent: Vec<usize> = (0..pg.class_count).collect();
    fn find(parent: &mut Vec<usize>, v: usize) -> usize {
        if parent[v] != v {
            let r = find(parent, parent[v]);
            parent[v] = r;
        }
        parent[v]
    }
    let mut edges = Vec::with_capacity(pg.class_count.saturating_sub(1));
    for e in order {
        let ri = find(&mut parent, e.class_i);
        let rj = find(&mut parent, e.class_j);
        if ri != rj {
            parent[ri] = rj;
            edges.push(WitnessEdge {
                a: e.witness.0,
                b: e.witness.1,
                classes: (e.class_i, e.class_j),
                dist2: e.dist2,
            });
        }
    }
    WitnessTree { edges }
}

/// Euclidean MST of the whole point set (singleton partition).
pub fn emst(ps: &PointSet) -> Result<WitnessTree> {
    if ps.len() < 2 {
        return Err(Error::TooFewPoints {
            n: ps.len(),
            min: 2,
        });
    }
    let partition = Partition::singletons(ps.len());
    Ok(mst_witness(&partition_graph(ps, &partition)?))
}

/// A closed disk with a witness edge as diameter.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DiameterDisk {
    pub a: usize,
    pub b: usize,
    pub center: Point,
    pub radius2: f64,
    pub endpoint_a: Point,
    pub endpoint_b: Point,
}

impl DiameterDisk {
    /// Closed containment with tolerance on the squared radius.
    pub fn contains(&self, p: Point, pol: TolerancePolicy) -> bool {
        dist2(p, self.center) <= self.radius2 + pol.tau
    }
}

/// One diameter disk per witness-tree edge.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiskSystem {
    pub disks: Vec<DiameterDisk>,
}

pub fn disk_system(ps: &PointSet, tree: &WitnessTree) -> DiskSystem {
    let disks = tree
        .edges
        .iter()
        .map(|e| {
            let pa = ps.get(e.a);
            let pb = ps.get(e.b);
            DiameterDisk {
                a: e.a,
                b: e.b,
                center: Point::new((pa.x + pb.x) / 2.0, (pa.y + pb.y) / 2.0),
                radius2: e.dist2 / 4.0,
                endpoint_a: pa,
                endpoint_b: pb,
            }
        })
        .collect();
    DiskSystem { disks }
}

/// Result of a depth query: the largest number of disks sharing a point,
/// and one point attaining it.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DepthReport {
    pub depth: usize,
    pub witness: Option<Point>,
}

fn depth_at(sys: &DiskSystem, p: Point, pol: TolerancePolicy) -> usize {
    // A disk never counts toward the depth of its own diameter endpoints:
    // those endpoints lie on its boundary by construction, and counting
    // them would only measure how many witness edges share a point.
    sys.disks
        .iter()
        .filter(|d| {
            d.contains(p, pol)
                && dist2(p, d.endpoint_a) > pol.tau
                && dist2(p, d.endpoint_b) > pol.tau
        })
        .count()
}

/// Maximum disk depth, either over the query points `q` or, when `q` is
/// absent, over the whole plane.
///
/// The plane maximum of a closed-disk arrangement is attained at a disk
/// center or at an intersection point of two boundary circles, so those
/// points are exactly the candidates evaluated.
pub fn max_depth(sys: &DiskSystem, q: Option<&[Point]>, pol: TolerancePolicy) -> DepthReport {
    let candidates: Vec<Point> = match q {
        Some(pts) => pts.to_vec(),
        None => {
            let mut c: Vec<Point> = sys.disks.iter().map(|d| d.center).collect();
            for (i, di) in sys.disks.iter().enumerate() {
                for dj in sys.disks.iter().skip(i + 1) {
                    c.extend(circle_circle_intersections(
                        di.center, di.radius2, dj.center, dj.radius2, pol,
                    ));
                }
            }
            c
        }
    };
    let mut best = DepthReport {
        depth: 0,
        witness: None,
    };
    for p in candidates {
        let d = depth_at(sys, p, pol);
        if d > best.depth {
            best = DepthReport {
                depth: d,
                witness: Some(p),
            };
        }
    }
    best
}

/// True iff no disk of the system contains (closed, with tolerance) the
/// center of another disk.
pub fn center_exclusion_check(sys: &DiskSystem, pol: TolerancePolicy) -> bool {
    for (i, di) in sys.disks.iter().enumerate() {
        for (j, dj) in sys.disks.iter().enumerate() {
            if i != j && di.contains(dj.center, pol) {
                return false;
            }
        }
    }
    true
}

/// First ground-set point other than the witnesses found inside (or on)
/// some disk of the system, if any. Empty disks are what makes every
/// witness edge a valid proximity edge.
pub fn find_disk_violation(
    ps: &PointSet,
    ground: &[usize],
    sys: &DiskSystem,
    pol: TolerancePolicy,
) -> Result<Option<(usize, usize)>> {
    for (disk_idx, d) in sys.disks.iter().enumerate() {
        for &v in ground {
            if v == d.a || v == d.b {
                continue;
            }
            if disk_membership(d.endpoint_a, d.endpoint_b, ps.get(v), pol)?.in_closed_disk() {
                return Ok(Some((disk_idx, v)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn two_singletons_give_one_witness_edge() {
        let ps = PointSet::from_coords(&[(0.0, 0.0), (3.0, 4.0)]).unwrap();
        let pg = partition_graph(&ps, &Partition::singletons(2)).unwrap();
        assert_eq!(pg.edges.len(), 1);
        assert_eq!(pg.edges[0].dist2, 25.0);
        let t = mst_witness(&pg);
        assert_eq!(t.len(), 1);
        assert_eq!((t.edges[0].a, t.edges[0].b), (0, 1));
    }

    #[test]
    fn nearest_pair_across_two_classes() {
        let ps =
            PointSet::from_coords(&[(0.0, 0.0), (1.0, 0.0), (5.0, 0.0), (4.0, 0.0)]).unwrap();
        let partition = Partition::new(vec![vec![0, 1], vec![2, 3]]).unwrap();
        let pg = partition_graph(&ps, &partition).unwrap();
        assert_eq!(pg.edges.len(), 1);
        assert_eq!(pg.edges[0].witness, (1, 3));
        assert!((pg.edges[0].dist2 - 9.0).abs() < 1e-12);
    }

    #[test]
    fn witness_count_is_classes_minus_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let n = rng.gen_range(4..=16);
            let coords: Vec<(f64, f64)> = (0..n)
                .map(|_| (rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)))
                .collect();
            let ps = PointSet::from_coords(&coords).unwrap();
            let partition = random_partition(&mut rng, n);
            let pg = partition_graph(&ps, &partition).unwrap();
            let t = mst_witness(&pg);
            assert_eq!(t.len(), partition.class_count() - 1);
        }
    }

    #[test]
    fn empty_class_rejected() {
        assert!(matches!(
            Partition::new(vec![vec![0], vec![]]),
            Err(Error::EmptyClass { class: 1 })
        ));
        assert!(Partition::new(vec![vec![0], vec![0]]).is_err());
    }

    #[test]
    fn disk_system_basics() {
        let ps = PointSet::from_coords(&[(0.0, 0.0), (2.0, 0.0)]).unwrap();
        let t = emst(&ps).unwrap();
        let sys = disk_system(&ps, &t);
        assert_eq!(sys.disks.len(), 1);
        assert_eq!(sys.disks[0].center, Point::new(1.0, 0.0));
        assert!((sys.disks[0].radius2 - 1.0).abs() < 1e-12);

        let empty = disk_system(&ps, &WitnessTree { edges: Vec::new() });
        assert!(empty.disks.is_empty());
        assert_eq!(max_depth(&empty, None, pol()).depth, 0);
    }

    #[test]
    fn depth_of_single_and_disjoint_disks() {
        let ps = PointSet::from_coords(&[(0.0, 0.0), (2.0, 0.0)]).unwrap();
        let sys = disk_system(&ps, &emst(&ps).unwrap());
        let r = max_depth(&sys, None, pol());
        assert_eq!(r.depth, 1);
        assert_eq!(r.witness.unwrap(), Point::new(1.0, 0.0));

        // Two far-apart disks never stack.
        let ps =
            PointSet::from_coords(&[(0.0, 0.0), (2.0, 0.0), (50.0, 0.0), (52.0, 0.0)]).unwrap();
        let partition = Partition::new(vec![vec![0], vec![1], vec![2, 3]]).unwrap();
        let t = mst_witness(&partition_graph(&ps, &partition).unwrap());
        let sys = disk_system(&ps, &t);
        assert!(center_exclusion_check(&sys, pol()));
        assert_eq!(max_depth(&sys, None, pol()).depth, 1);
    }

    #[test]
    fn singleton_partition_matches_emst() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let coords: Vec<(f64, f64)> = (0..12)
            .map(|_| (rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)))
            .collect();
        let ps = PointSet::from_coords(&coords).unwrap();
        let via_partition =
            mst_witness(&partition_graph(&ps, &Partition::singletons(12)).unwrap());
        let direct = emst(&ps).unwrap();
        assert_eq!(via_partition.edge_pairs(), direct.edge_pairs());
        assert_eq!(direct.len(), 11);
    }

    fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> Partition {
        let m = rng.gen_range(1..=n);
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); m];
        for v in 0..n {
            classes[rng.gen_range(0..m)].push(v);
        }
        classes.retain(|c| !c.is_empty());
        Partition::new(classes).unwrap()
    }

    /// Every witness edge appears in some Euclidean MST: its weight equals
    /// the heaviest weight on the path between its endpoints in our
    /// deterministic EMST.
    #[test]
    fn witness_edges_lie_in_some_emst() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            let n = rng.gen_range(4..=14);
            let coords: Vec<(f64, f64)> = (0..n)
                .map(|_| (rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)))
                .collect();
            let ps = PointSet::from_coords(&coords).unwrap();
            let partition = random_partition(&mut rng, n);
            if partition.class_count() < 2 {
                continue;
            }
            let t = mst_witness(&partition_graph(&ps, &partition).unwrap());
            let base = emst(&ps).unwrap();
            let mut adj = vec![Vec::new(); n];
            for e in &base.edges {
                adj[e.a].push((e.b, e.dist2));
                adj[e.b].push((e.a, e.dist2));
            }
            for e in &t.edges {
                let max_on_path = path_max(&adj, e.a, e.b).expect("EMST is connected");
                assert!(
                    (max_on_path - e.dist2).abs() <= 1e-9 * e.dist2.max(1.0),
                    "witness edge heavier than every EMST path edge"
                );
            }
        }
    }

    fn path_max(adj: &[Vec<(usize, f64)>], from: usize, to: usize) -> Option<f64> {
        let mut stack = vec![(from, usize::MAX, 0.0f64)];
        while let Some((v, parent, acc)) = stack.pop() {
            if v == to {
                return Some(acc);
            }
            for &(u, w) in &adj[v] {
                if u != parent {
                    stack.push((u, v, acc.max(w)));
                }
            }
        }
        None
    }

    #[test]
    fn random_systems_satisfy_disk_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..150 {
            let n = rng.gen_range(4..=20);
            let mut coords: Vec<(f64, f64)> = Vec::new();
            while coords.len() < n {
                let c = (rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0));
                if coords
                    .iter()
                    .all(|&(x, y)| (x - c.0).powi(2) + (y - c.1).powi(2) > 1e-6)
                {
                    coords.push(c);
                }
            }
            let ps = PointSet::from_coords(&coords).unwrap();
            let partition = random_partition(&mut rng, n);
            let pg = partition_graph(&ps, &partition).unwrap();
            let t = mst_witness(&pg);
            let sys = disk_system(&ps, &t);
            let ground = partition.ground_set();

            assert_eq!(
                find_disk_violation(&ps, &ground, &sys, pol()).unwrap(),
                None,
                "disk not empty of ground-set points"
            );
            assert!(center_exclusion_check(&sys, pol()));
            assert!(max_depth(&sys, None, pol()).depth <= 3);

            // Witness edges never properly cross.
            let pairs = t.edge_pairs();
            for (x, &e1) in pairs.iter().enumerate() {
                for &e2 in pairs.iter().skip(x + 1) {
                    if e1.0 == e2.0 || e1.0 == e2.1 || e1.1 == e2.0 || e1.1 == e2.1 {
                        continue;
                    }
                    assert!(!crate::geom::segments_properly_cross(
                        ps.get(e1.0),
                        ps.get(e1.1),
                        ps.get(e2.0),
                        ps.get(e2.1)
                    ));
                }
            }
        }
    }
}
