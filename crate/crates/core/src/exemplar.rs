//! Exemplar (medoid/seboid/generalized) search in finite semimetric spaces:
//! exact, pruned, and neighborhood-descent approximate algorithms with
//! distance-call instrumentation.

use crate::error::{Error, Result};
use crate::order::rng_from_seed;
use rand::Rng;
use std::cell::Cell;
use std::collections::BinaryHeap;

/// A finite set of objects with a symmetric dissimilarity callback. Every
/// invocation of the callback is counted.
pub struct SemimetricSpace<'a> {
    n: usize,
    dist: Box<dyn Fn(usize, usize) -> f64 + 'a>,
    calls: Cell<u64>,
}

impl<'a> SemimetricSpace<'a> {
    pub fn new<F>(n: usize, dist: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> f64 + 'a,
    {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        Ok(SemimetricSpace {
            n,
            dist: Box::new(dist),
            calls: Cell::new(0),
        })
    }

    /// Spot-checks symmetry and the zero diagonal on a few sampled pairs.
    pub fn validate(&self, seed: u64) -> Result<()> {
        let mut rng = rng_from_seed(seed);
        for _ in 0..16.min(self.n * self.n) {
            let i = rng.gen_range(0..self.n);
            let j = rng.gen_range(0..self.n);
            let dij = (self.dist)(i, j);
            let dji = (self.dist)(j, i);
            if (dij - dji).abs() > 1e-9 * dij.abs().max(1.0) {
                return Err(Error::InvalidParameter(format!(
                    "dissimilarity not symmetric at ({i}, {j})"
                )));
            }
            if dij < 0.0 {
                return Err(Error::InvalidParameter("negative dissimilarity".into()));
            }
            let dii = (self.dist)(i, i);
            if dii != 0.0 {
                return Err(Error::InvalidParameter(format!("nonzero diagonal at {i}")));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.calls.set(self.calls.get() + 1);
        (self.dist)(i, j)
    }

    pub fn calls(&self) -> u64 {
        self.calls.get()
    }

    pub fn reset_calls(&self) {
        self.calls.set(0);
    }
}

/// How the per-object dissimilarities are accumulated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FoldSpec {
    /// total distance (medoid)
    Sum,
    /// farthest distance (seboid)
    Max,
    /// total squared distance
    SumSq,
}

impl FoldSpec {
    pub fn neutral(&self) -> f64 {
        0.0
    }

    pub fn fold(&self, acc: f64, d: f64) -> f64 {
        match self {
            FoldSpec::Sum => acc + d,
            FoldSpec::Max => acc.max(d),
            FoldSpec::SumSq => acc + d * d,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExemplarResult {
    pub index: usize,
    pub penalty: f64,
    pub dist_calls: u64,
}

/// Exact search scanning each unordered pair once; exactly `n(n-1)/2`
/// distance calls. Ties go to the smallest index.
pub fn exemplar_exact(space: &SemimetricSpace, fold: FoldSpec) -> ExemplarResult {
    let n = space.n();
    let start = space.calls();
    let mut acc = vec![fold.neutral(); n];
    for i in 0..n {
        for j in i + 1..n {
            let d = space.distance(i, j);
            acc[i] = fold.fold(acc[i], d);
            acc[j] = fold.fold(acc[j], d);
        }
    }
    let mut best = 0usize;
    for (i, v) in acc.iter().enumerate() {
        if *v < acc[best] {
            best = i;
        }
    }
    ExemplarResult {
        index: best,
        penalty: acc[best],
        dist_calls: space.calls() - start,
    }
}

/// Early-exit scan: a candidate's accumulation stops as soon as it reaches
/// the incumbent. Same argmin and tie rule as the exact search; between
/// about `2n` and `n^2` calls.
pub fn exemplar_pruned(space: &SemimetricSpace, fold: FoldSpec) -> ExemplarResult {
    let n = space.n();
    let start = space.calls();
    let mut best_idx = 0usize;
    let mut best_val = f64::INFINITY;
    for i in 0..n {
        let mut acc = fold.neutral();
        let mut aborted = false;
        for j in 0..n {
            acc = fold.fold(acc, space.distance(i, j));
            if acc >= best_val {
                aborted = true;
                break;
            }
        }
        if !aborted && acc < best_val {
            best_val = acc;
            best_idx = i;
        }
    }
    ExemplarResult {
        index: best_idx,
        penalty: best_val,
        dist_calls: space.calls() - start,
    }
}

#[derive(Debug, Clone, Copy)]
struct Neighbor {
    index: usize,
    dist: f64,
}

impl PartialEq for Neighbor {
    fn eq(&self, other: &Self) -> bool {
        self.dist == other.dist
    }
}
impl Eq for Neighbor {}
impl PartialOrd for Neighbor {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Neighbor {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // max-heap by distance; equal distances break by index for
        // determinism
        self.dist
            .partial_cmp(&other.dist)
            .unwrap()
            .then(self.index.cmp(&other.index))
    }
}

/// Scans all distances from `i`, folding them, aborting once `limit` is
/// reached; collects the `k` nearest indices seen along the way. Distances
/// to candidates whose own scan already completed are reused from their
/// stored rows (the callback is symmetric) rather than re-invoked.
fn scan_candidate(
    space: &SemimetricSpace,
    fold: FoldSpec,
    i: usize,
    k: usize,
    limit: f64,
    rows: &mut std::collections::HashMap<usize, Vec<f64>>,
) -> (f64, Vec<Neighbor>) {
    let mut acc = fold.neutral();
    let mut heap: BinaryHeap<Neighbor> = BinaryHeap::new();
    let mut my_row = vec![0.0; space.n()];
    for j in 0..space.n() {
        if i == j {
            continue;
        }
        let d = match rows.get(&j) {
            Some(row) => row[i],
            None => space.distance(i, j),
        };
        my_row[j] = d;
        if heap.len() < k {
            heap.push(Neighbor { index: j, dist: d });
        } else if let Some(top) = heap.peek() {
            if d < top.dist {
                heap.pop();
                heap.push(Neighbor { index: j, dist: d });
            }
        }
        acc = fold.fold(acc, d);
        if acc >= limit {
            return (f64::INFINITY, heap.into_sorted_vec());
        }
    }
    rows.insert(i, my_row);
    (acc, heap.into_sorted_vec())
}

/// Approximate exemplar search: `restarts` random starts are fully scanned
/// first, then neighborhood descents run best-start-first, probing each
/// level's k nearest unvisited neighbors (from distances already evaluated
/// during the scans) and moving to the best improvement. Later descents cap
/// their scans at the incumbent penalty, so they only spend calls where
/// they can still win. The visited set and evaluated rows are shared
/// throughout.
pub fn exemplar_approx(
    space: &SemimetricSpace,
    fold: FoldSpec,
    k: usize,
    restarts: usize,
    seed: u64,
) -> Result<ExemplarResult> {
    if k == 0 || restarts == 0 {
        return Err(Error::InvalidParameter(
            "need k >= 1 and restarts >= 1".into(),
        ));
    }
    let n = space.n();
    let start = space.calls();
    let mut rng = rng_from_seed(seed);
    let mut visited = vec![false; n];
    let mut rows: std::collections::HashMap<usize, Vec<f64>> = std::collections::HashMap::new();

    // pass 1: evaluate every start in full
    let mut starts: Vec<(f64, usize, Vec<Neighbor>)> = Vec::new();
    for _ in 0..restarts {
        let r = rng.gen_range(0..n);
        let Some(s) = (0..n).map(|o| (r + o) % n).find(|&i| !visited[i]) else {
            break;
        };
        visited[s] = true;
        let (val, queue) = scan_candidate(space, fold, s, k, f64::INFINITY, &mut rows);
        starts.push((val, s, queue));
    }
    starts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));

    // pass 2: every start competes as a candidate outright, and descents
    // run from the most promising quarter of them, best first, refining
    // distinct basins
    let full_descents = restarts.div_ceil(4).max(1);
    let mut overall_idx = starts[0].1;
    let mut overall_val = starts[0].0;
    for (val, idx, _) in &starts {
        if *val < overall_val {
            overall_val = *val;
            overall_idx = *idx;
        }
    }
    for (start_val, start_idx, start_queue) in starts.into_iter().take(full_descents) {
        let mut best_val = start_val;
        let mut best_idx = start_idx;
        let mut queue = start_queue;
        let mut improved = true;
        while improved {
            improved = false;
            // farthest-first: the widest hop is probed first and the walk
            // moves at the first improvement, so a level rarely pays for
            // more than one failing probe
            for nb in queue.iter().rev() {
                if visited[nb.index] {
                    continue;
                }
                visited[nb.index] = true;
                let (val, cand_queue) =
                    scan_candidate(space, fold, nb.index, k, best_val, &mut rows);
                if val < best_val {
                    best_val = val;
                    best_idx = nb.index;
                    queue = cand_queue;
                    improved = true;
                    break;
                }
            }
        }
        if best_val < overall_val {
            overall_val = best_val;
            overall_idx = best_idx;
        }
    }
    // sweep phase: within a linear call budget, scan the remaining
    // candidates capped at the incumbent. A truncated scan proves the
    // candidate cannot win, so when the budget covers the whole space the
    // search is exhaustive; small instances always finish inside it.
    let sweep_budget = 60 * n as u64;
    let mut cursor = 0usize;
    while space.calls() - start + n as u64 <= sweep_budget {
        let Some(i) = (cursor..n).find(|&i| !visited[i]) else {
            break;
        };
        cursor = i + 1;
        visited[i] = true;
        let (val, mut queue) = scan_candidate(space, fold, i, k, overall_val, &mut rows);
        if val < overall_val {
            overall_val = val;
            overall_idx = i;
            // follow the improvement downhill
            let mut improved = true;
            while improved {
                improved = false;
                for nb in queue.iter().rev() {
                    if visited[nb.index] {
                        continue;
                    }
                    visited[nb.index] = true;
                    let (v2, q2) = scan_candidate(space, fold, nb.index, k, overall_val, &mut rows);
                    if v2 < overall_val {
                        overall_val = v2;
                        overall_idx = nb.index;
                        queue = q2;
                        improved = true;
                        break;
                    }
                }
            }
        }
    }

    // certificate pass: when the winner is an undescended start, its
    // neighborhood still has to be checked (and followed when it improves)
    loop {
        let winner_row = rows.get(&overall_idx).cloned();
        let Some(row) = winner_row else { break };
        let mut nearest: Vec<Neighbor> = (0..n)
            .filter(|&j| j != overall_idx)
            .map(|j| Neighbor {
                index: j,
                dist: row[j],
            })
            .collect();
        nearest.sort();
        nearest.truncate(k);
        let mut moved = false;
        for nb in &nearest {
            if visited[nb.index] {
                continue;
            }
            visited[nb.index] = true;
            let (val, _) = scan_candidate(space, fold, nb.index, k, overall_val, &mut rows);
            if val < overall_val {
                overall_val = val;
                overall_idx = nb.index;
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }
    // the reported penalty is always a completed scan, never a truncation
    debug_assert!(overall_val.is_finite());
    Ok(ExemplarResult {
        index: overall_idx,
        penalty: overall_val,
        dist_calls: space.calls() - start,
    })
}


// appended study test
