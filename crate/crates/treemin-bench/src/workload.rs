//! Operation workloads and priority assignments.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use treemin::entropy::subtree_sizes;
use treemin::{Error, Result, RootedForest};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum WorkloadKind {
    /// `v ← tree-min(root); cut(v)` until the root is alone.
    TreeSort,
    /// The first `k` rounds of tree sorting.
    TopK(usize),
    /// Random cuts interleaved with queries at random nodes.
    RandomCuts,
    /// Queries at random nodes, each followed by cutting the answer.
    Mixed,
}

impl WorkloadKind {
    /// Tree sorting needs a T-monotone priority assignment.
    pub fn monotone(self) -> bool {
        matches!(self, WorkloadKind::TreeSort | WorkloadKind::TopK(_))
    }
}

impl fmt::Display for WorkloadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WorkloadKind::TreeSort => f.write_str("tree_sort"),
            WorkloadKind::TopK(k) => write!(f, "top_k:{k}"),
            WorkloadKind::RandomCuts => f.write_str("random_cuts"),
            WorkloadKind::Mixed => f.write_str("mixed"),
        }
    }
}

impl FromStr for WorkloadKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tree_sort" => Ok(WorkloadKind::TreeSort),
            "random_cuts" => Ok(WorkloadKind::RandomCuts),
            "mixed" => Ok(WorkloadKind::Mixed),
            _ => s
                .strip_prefix("top_k:")
                .and_then(|k| k.parse().ok())
                .map(WorkloadKind::TopK)
                .ok_or_else(|| Error::BadParams(format!("unknown workload `{s}`"))),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Workload {
    pub kind: WorkloadKind,
    /// Operation budget for the random workloads; tree sorting ignores it.
    pub m: usize,
    pub seed: u64,
}

/// Uniformly random permutation ranks.
pub fn random_ranks(n: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut r: Vec<u32> = (0..n as u32).collect();
    r.shuffle(rng);
    r
}

/// Ranks of a uniformly random T-monotone assignment (every node above all
/// of its descendants). Builds a top-down order, choosing each next node
/// among the available ones with probability proportional to its subtree
/// size, then reverses it.
pub fn monotone_ranks(t: &RootedForest, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let size = subtree_sizes(t);
    let n = t.len();
    let mut fen = Fenwick::new(n);
    for r in t.roots() {
        fen.add(r.index(), size[r.index()] as i64);
    }
    let live = t.live_count();
    let mut rank = vec![0u32; n];
    for i in 0..live {
        let x = rng.gen_range(0..fen.total());
        let v = fen.find(x);
        fen.add(v, -(size[v] as i64));
        rank[v] = (live - 1 - i) as u32;
        for c in t.children(treemin::NodeId::new(v)) {
            fen.add(c.index(), size[c.index()] as i64);
        }
    }
    rank
}

/// Prefix sums over `i64` weights with a descent search.
struct Fenwick {
    tree: Vec<i64>,
    total: i64,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick {
            tree: vec![0; n + 1],
            total: 0,
        }
    }

    fn add(&mut self, i: usize, d: i64) {
        self.total += d;
        let mut i = i + 1;
        while i < self.tree.len() {
            self.tree[i] += d;
            i += i & i.wrapping_neg();
        }
    }

    fn total(&self) -> i64 {
        self.total
    }

    /// Smallest index whose prefix sum exceeds `x`.
    fn find(&self, mut x: i64) -> usize {
        let mut pos = 0;
        let mut step = self.tree.len().next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] <= x {
                pos = next;
                x -= self.tree[next];
            }
            step /= 2;
        }
        pos
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use std::collections::HashMap;

    #[test]
    fn parse_and_display() {
        for s in ["tree_sort", "top_k:5", "random_cuts", "mixed"] {
            assert_eq!(s.parse::<WorkloadKind>().unwrap().to_string(), s);
        }
        assert!("top_k:x".parse::<WorkloadKind>().is_err());
    }

    #[test]
    fn monotone_is_uniform_over_linear_extensions() {
        // root 0 with children 1 and 2, 2 has child 3: three extensions
        let t = RootedForest::from_parents(&[None, Some(0), Some(0), Some(2)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut counts: HashMap<Vec<u32>, usize> = HashMap::new();
        for _ in 0..30_000 {
            let r = monotone_ranks(&t, &mut rng);
            for v in t.nodes() {
                if let Some(p) = t.parent(v) {
                    assert!(r[v.index()] < r[p.index()]);
                }
            }
            *counts.entry(r).or_default() += 1;
        }
        assert_eq!(counts.len(), 3);
        for &c in counts.values() {
            assert!((c as f64 - 10_000.0).abs() < 500.0, "{counts:?}");
        }
    }
}
