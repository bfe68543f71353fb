//! Matching engines: maximum-cardinality matching on general graphs,
//! deficiency with witness, Euclidean bottleneck matching, exhaustive
//! perfect-matching enumeration, the lexicographically minimal
//! weight-sequence matching, and an exact independence number.
//!
//! The exhaustive operations carry hard caps so every oracle finishes in
//! seconds on commodity hardware; callers that exceed a cap get
//! [`Error::TooLarge`] instead of an open-ended computation.

use std::cmp::Ordering;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{dist2, PointSet, WeightSequence};
use crate::proximity::ProximityGraph;

/// Cap for perfect-matching enumeration: (13)!! = 135135 matchings.
pub const ENUMERATION_CAP: usize = 14;
/// Cap for the subset sweep behind [`deficiency`].
pub const DEFICIENCY_CAP: usize = 16;
/// Cap for the branch-and-bound behind [`independence_number`].
pub const INDEPENDENCE_CAP: usize = 20;

const NONE: usize = usize::MAX;

/// A set of vertex-disjoint edges, with its weight sequence when the
/// carrier is geometric.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Matching {
    /// Pairs normalized to (low, high) and sorted.
    pub pairs: Vec<(usize, usize)>,
    /// Edge lengths in non-increasing order; empty when no geometry is
    /// attached.
    pub ws: WeightSequence,
    /// Longest edge length; 0 for the empty matching.
    pub bottleneck: f64,
}

impl Matching {
    pub fn from_pairs(mut pairs: Vec<(usize, usize)>, ps: Option<&PointSet>) -> Matching {
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        let ws = match ps {
            Some(ps) => WeightSequence::from_unsorted(
                pairs
                    .iter()
                    .map(|&(i, j)| dist2(ps.get(i), ps.get(j)).sqrt())
                    .collect(),
            ),
            None => WeightSequence::from_sorted(Vec::new()),
        };
        let bottleneck = ws.max();
        Matching {
            pairs,
            ws,
            bottleneck,
        }
    }

    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_perfect(&self, n: usize) -> bool {
        2 * self.pairs.len() == n
    }

    pub fn contains_pair(&self, i: usize, j: usize) -> bool {
        let k = if i < j { (i, j) } else { (j, i) };
        self.pairs.binary_search(&k).is_ok()
    }
}

fn normalize(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

// ---------------------------------------------------------------------------
// Maximum-cardinality matching (Edmonds' blossom method, O(V^3)).
//
// Alternating-forest search from each free vertex; odd cycles are contracted
// by relabeling every vertex's blossom base to the cycle's lowest common
// ancestor. `p` stores the parent links used to unroll augmenting paths.
// ---------------------------------------------------------------------------

struct Blossom {
    n: usize,
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl Blossom {
    fn new(n: usize, edges: &[(usize, usize)]) -> Blossom {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
            a.dedup();
        }
        Blossom {
            n,
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lca(&self, a: usize, b: usize) -> usize {
        let mut seen = vec![false; self.n];
        let mut v = a;
        loop {
            v = self.base[v];
            seen[v] = true;
            if self.mate[v] == NONE {
                break;
            }
            v = self.parent[self.mate[v]];
        }
        let mut v = b;
        loop {
            v = self.base[v];
            if seen[v] {
                return v;
            }
            v = self.parent[self.mate[v]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its free endpoint.
    fn find_path(&mut self, root: usize) -> usize {
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for i in 0..self.n {
            self.base[i] = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::new();
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // Odd cycle: contract the blossom at its base.
                    let cur_base = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur_base, to);
                    self.mark_path(to, cur_base, v);
                    for i in 0..self.n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur_base;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    self.used[self.mate[to]] = true;
                    queue.push_back(self.mate[to]);
                }
            }
        }
        NONE
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }

    fn solve(mut self) -> Vec<usize> {
        // Greedy seed cuts the number of augmenting searches roughly in half.
        for u in 0..self.n {
            if self.mate[u] != NONE {
                continue;
            }
            for idx in 0..self.adj[u].len() {
                let v = self.adj[u][idx];
                if self.mate[v] == NONE {
                    self.mate[u] = v;
                    self.mate[v] = u;
                    break;
                }
            }
        }
        for root in 0..self.n {
            if self.mate[root] != NONE {
                continue;
            }
            let leaf = self.find_path(root);
            if leaf != NONE {
                self.augment(leaf);
            }
        }
        self.mate
    }
}

/// Maximum-cardinality matching of a simple undirected graph, as a list of
/// normalized vertex pairs. Handles odd cycles (non-bipartite graphs).
pub fn max_matching(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mate = Blossom::new(n, edges).solve();
    let mut pairs = Vec::new();
    for v in 0..n {
        if mate[v] != NONE && v < mate[v] {
            pairs.push((v, mate[v]));
        }
    }
    pairs
}

/// Maximum matching of a proximity graph, weighted when points are given.
pub fn max_matching_on(g: &ProximityGraph, ps: Option<&PointSet>) -> Matching {
    Matching::from_pairs(max_matching(g.n, &g.edge_list()), ps)
}

pub fn has_perfect_matching(n: usize, edges: &[(usize, usize)]) -> bool {
    n % 2 == 0 && 2 * max_matching(n, edges).len() == n
}

// ---------------------------------------------------------------------------
// Deficiency (exhaustive subset sweep).
// ---------------------------------------------------------------------------

/// The deficiency of a graph together with a witness subset attaining it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeficiencyReport {
    /// max over S of (odd components of G - S) - |S|; at least 0 because
    /// S = empty is included in the sweep.
    pub deficiency: usize,
    /// First subset (in bitmask order) attaining the maximum.
    pub witness: Vec<usize>,
}

/// Exhaustive deficiency: sweeps all 2^n vertex subsets. Refuses n above
/// [`DEFICIENCY_CAP`].
pub fn deficiency(n: usize, edges: &[(usize, usize)]) -> Result<DeficiencyReport> {
    if n > DEFICIENCY_CAP {
        return Err(Error::TooLarge {
            n,
            cap: DEFICIENCY_CAP,
        });
    }
    let mut adj = vec![0u32; n];
    for &(u, v) in edges {
        if u != v {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut best: i64 = i64::MIN;
    let mut best_mask = 0u32;
    for s in 0..=full {
        let odd = odd_components(full & !s, &adj) as i64;
        let d = odd - s.count_ones() as i64;
        if d > best {
            best = d;
            best_mask = s;
        }
        if s == full {
            break;
        }
    }
    let witness = (0..n).filter(|&v| best_mask >> v & 1 == 1).collect();
    Ok(DeficiencyReport {
        deficiency: best.max(0) as usize,
        witness,
    })
}

fn odd_components(mut remaining: u32, adj: &[u32]) -> usize {
    let mut odd = 0;
    while remaining != 0 {
        let start = remaining.trailing_zeros() as usize;
        let mut comp = 1u32 << start;
        loop {
            let mut next = comp;
            let mut m = comp;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                next |= adj[v] & remaining;
            }
            if next == comp {
                break;
            }
            comp = next;
        }
        if comp.count_ones() % 2 == 1 {
            odd += 1;
        }
        remaining &= !comp;
    }
    odd
}

// ---------------------------------------------------------------------------
// Euclidean bottleneck matching.
// ---------------------------------------------------------------------------

/// Perfect matching of `ps` minimizing the longest edge.
///
/// Binary-searches the sorted candidate squared lengths, testing
/// perfect-matching feasibility of the length-thresholded subgraph at each
/// probe. `allowed` restricts the usable edges (default: all pairs);
/// `forbid` removes one named edge, which certifies statements of the form
/// "every bottleneck matching uses this edge".
pub fn bottleneck_matching(
    ps: &PointSet,
    allowed: Option<&[(usize, usize)]>,
    forbid: Option<(usize, usize)>,
) -> Result<Matching> {
    let n = ps.len();
    if n % 2 == 1 {
        return Err(Error::OddCardinality { n });
    }
    if n == 0 {
        return Ok(Matching::from_pairs(Vec::new(), Some(ps)));
    }
    let forbidden = forbid.map(|(i, j)| normalize(i, j));

    let mut candidates: Vec<((usize, usize), f64)> = Vec::new();
    match allowed {
        Some(list) => {
            let mut seen = std::collections::BTreeSet::new();
            for &(i, j) in list {
                if i >= n || j >= n || i == j {
                    return Err(Error::InvalidInput(format!(
                        "edge ({i},{j}) out of range for n = {n}"
                    )));
                }
                let e = normalize(i, j);
                if Some(e) != forbidden && seen.insert(e) {
                    candidates.push((e, dist2(ps.get(e.0), ps.get(e.1))));
                }
            }
        }
        None => {
            for i in 0..n {
                for j in i + 1..n {
                    if Some((i, j)) != forbidden {
                        candidates.push(((i, j), dist2(ps.get(i), ps.get(j))));
                    }
                }
            }
        }
    }
    if candidates.is_empty() {
        return Err(Error::NoPerfectMatching);
    }

    let mut thresholds: Vec<f64> = candidates.iter().map(|&(_, w)| w).collect();
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();

    let matching_at = |limit: f64| -> Option<Vec<(usize, usize)>> {
        let edges: Vec<(usize, usize)> = candidates
            .iter()
            .filter(|&&(_, w)| w <= limit)
            .map(|&(e, _)| e)
            .collect();
        let m = max_matching(n, &edges);
        (2 * m.len() == n).then_some(m)
    };

    if matching_at(*thresholds.last().unwrap()).is_none() {
        return Err(Error::NoPerfectMatching);
    }
    let mut lo = 0;
    let mut hi = thresholds.len() - 1;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if matching_at(thresholds[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let pairs = matching_at(thresholds[lo]).expect("feasible at optimum");
    Ok(Matching::from_pairs(pairs, Some(ps)))
}

// ---------------------------------------------------------------------------
// Exhaustive perfect-matching enumeration.
// ---------------------------------------------------------------------------

/// Depth-first enumeration over perfect matchings: the lowest unmatched
/// vertex is paired with every admissible higher-index partner. Visits each
/// matching exactly once; the visitor returns false to stop early.
fn visit_perfect_matchings<A, F>(
    n: usize,
    allowed: &A,
    matched: &mut [bool],
    pairs: &mut Vec<(usize, usize)>,
    visit: &mut F,
) -> bool
where
    A: Fn(usize, usize) -> bool,
    F: FnMut(&[(usize, usize)]) -> bool,
{
    let v = match (0..n).find(|&i| !matched[i]) {
        None => return visit(pairs),
        Some(v) => v,
    };
    matched[v] = true;
    for u in v + 1..n {
        if matched[u] || !allowed(v, u) {
            continue;
        }
        matched[u] = true;
        pairs.push((v, u));
        let keep_going = visit_perfect_matchings(n, allowed, matched, pairs, visit);
        pairs.pop();
        matched[u] = false;
        if !keep_going {
            matched[v] = false;
            return false;
        }
    }
    matched[v] = false;
    true
}

fn check_enumeration_size(n: usize) -> Result<()> {
    if n > ENUMERATION_CAP {
        return Err(Error::TooLarge {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    if n % 2 == 1 {
        return Err(Error::OddCardinality { n });
    }
    Ok(())
}

/// Every perfect matching of `ps` over the complete carrier, each with its
/// weight sequence. Yields exactly (n-1)!! matchings.
pub fn enumerate_perfect_matchings(
    ps: &PointSet,
) -> Result<impl Iterator<Item = Matching> + '_> {
    let n = ps.len();
    check_enumeration_size(n)?;
    let mut out = Vec::new();
    let mut matched = vec![false; n];
    let mut pairs = Vec::with_capacity(n / 2);
    visit_perfect_matchings(
        n,
        &|_, _| true,
        &mut matched,
        &mut pairs,
        &mut |pairs: &[(usize, usize)]| {
            out.push(pairs.to_vec());
            true
        },
    );
    Ok(out.into_iter().map(|p| Matching::from_pairs(p, Some(ps))))
}

/// Every perfect matching inside the given edge set.
pub fn enumerate_perfect_matchings_in(
    n: usize,
    edges: &[(usize, usize)],
) -> Result<impl Iterator<Item = Vec<(usize, usize)>>> {
    check_enumeration_size(n)?;
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        if u != v {
            adj[u][v] = true;
            adj[v][u] = true;
        }
    }
    let mut out = Vec::new();
    let mut matched = vec![false; n];
    let mut pairs = Vec::with_capacity(n / 2);
    visit_perfect_matchings(
        n,
        &|u, v| adj[u][v],
        &mut matched,
        &mut pairs,
        &mut |pairs: &[(usize, usize)]| {
            out.push(pairs.to_vec());
            true
        },
    );
    Ok(out.into_iter())
}

/// The perfect matching whose weight sequence is lexicographically minimal,
/// found by exhaustive enumeration with ties broken in favor of the first
/// matching visited. The result is always a Euclidean bottleneck matching.
pub fn lexmin_matching(ps: &PointSet) -> Result<Matching> {
    let n = ps.len();
    check_enumeration_size(n)?;
    if n == 0 {
        return Ok(Matching::from_pairs(Vec::new(), Some(ps)));
    }
    let mut d2 = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            d2[i][j] = dist2(ps.get(i), ps.get(j));
        }
    }

    let mut best_ws2: Option<Vec<f64>> = None;
    let mut best_pairs: Vec<(usize, usize)> = Vec::new();
    let mut matched = vec![false; n];
    let mut pairs = Vec::with_capacity(n / 2);

    // Branches whose heaviest chosen edge already exceeds the incumbent's
    // heaviest weight cannot win; prune them via the `allowed` filter.
    // The filter reads the incumbent through a cell updated on improvement.
    let best_head = std::cell::Cell::new(f64::INFINITY);
    let allowed = |u: usize, v: usize| d2[u][v] <= best_head.get();

    visit_perfect_matchings(
        n,
        &allowed,
        &mut matched,
        &mut pairs,
        &mut |pairs: &[(usize, usize)]| {
            let mut ws2: Vec<f64> = pairs.iter().map(|&(i, j)| d2[i][j]).collect();
            ws2.sort_by(|a, b| b.total_cmp(a));
            let better = match &best_ws2 {
                None => true,
                Some(best) => lex_less(&ws2, best),
            };
            if better {
                best_head.set(ws2[0]);
                best_ws2 = Some(ws2);
                best_pairs = pairs.to_vec();
            }
            true
        },
    );

    if best_ws2.is_none() {
        return Err(Error::NoPerfectMatching);
    }
    Ok(Matching::from_pairs(best_pairs, Some(ps)))
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.total_cmp(y) {
            Ordering::Less => return true,
            Ordering::Greater => return false,
            Ordering::Equal => {}
        }
    }
    a.len() < b.len()
}

// ---------------------------------------------------------------------------
// Independence number (branch and bound).
// ---------------------------------------------------------------------------

/// Exact maximum independent set size. Refuses n above
/// [`INDEPENDENCE_CAP`].
pub fn independence_number(n: usize, edges: &[(usize, usize)]) -> Result<usize> {
    if n > INDEPENDENCE_CAP {
        return Err(Error::TooLarge {
            n,
            cap: INDEPENDENCE_CAP,
        });
    }
    let mut adj = vec![0u32; n];
    for &(u, v) in edges {
        if u != v {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut best = 0u32;
    mis_branch(full, &adj, 0, &mut best);
    Ok(best as usize)
}

fn mis_branch(cand: u32, adj: &[u32], acc: u32, best: &mut u32) {
    if cand == 0 {
        *best = (*best).max(acc);
        return;
    }
    if acc + cand.count_ones() <= *best {
        return;
    }
    // Branch on the candidate with the most candidate neighbors; isolated
    // candidates are always taken.
    let mut pick = NONE;
    let mut pick_deg = 0;
    let mut m = cand;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        let deg = (adj[v] & cand).count_ones();
        if deg == 0 {
            mis_branch(cand & !(1 << v), adj, acc + 1, best);
            return;
        }
        if pick == NONE || deg > pick_deg {
            pick = v;
            pick_deg = deg;
        }
    }
    let v = pick;
    mis_branch(cand & !(1 << v) & !adj[v], adj, acc + 1, best);
    mis_branch(cand & !(1 << v), adj, acc, best);
}
