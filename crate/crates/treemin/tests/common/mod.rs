#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treemin::{Graph, NodeId, PriorityOracle, RootedForest};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn n(i: usize) -> NodeId {
    NodeId::new(i)
}

/// Random recursive tree; with `bias` near 1 parents cluster near `i - 1`,
/// giving long chains.
pub fn random_parents(r: &mut ChaCha8Rng, size: usize, bias: f64) -> Vec<Option<usize>> {
    (0..size)
        .map(|i| {
            if i == 0 {
                None
            } else if r.gen_bool(bias) {
                Some(i - 1)
            } else {
                Some(r.gen_range(0..i))
            }
        })
        .collect()
}

/// Random tree with shuffled labels.
pub fn random_tree(r: &mut ChaCha8Rng, size: usize) -> RootedForest {
    let bias = [0.0, 0.5, 0.9][r.gen_range(0..3)];
    let p = random_parents(r, size, bias);
    let mut label: Vec<usize> = (0..size).collect();
    label[1..].shuffle(r);
    let mut q = vec![None; size];
    for (i, &pi) in p.iter().enumerate() {
        q[label[i]] = pi.map(|x| label[x]);
    }
    RootedForest::from_parents(&q).unwrap()
}

pub fn random_ranks(r: &mut ChaCha8Rng, size: usize) -> Vec<u32> {
    let mut ranks: Vec<u32> = (0..size as u32).collect();
    ranks.shuffle(r);
    ranks
}

pub fn random_oracle(r: &mut ChaCha8Rng, size: usize) -> PriorityOracle {
    PriorityOracle::from_ranks(random_ranks(r, size)).unwrap()
}

pub fn tree_graph(f: &RootedForest) -> Graph {
    let edges: Vec<(usize, usize)> = f
        .nodes()
        .filter_map(|v| f.parent(v).map(|p| (p.index(), v.index())))
        .collect();
    Graph::new(f.len(), &edges).unwrap()
}

/// Random connected graph: a random tree plus `extra` distinct extra edges.
pub fn random_graph(r: &mut ChaCha8Rng, size: usize, extra: usize) -> Graph {
    let t = random_tree(r, size);
    let mut edges: Vec<(usize, usize)> = t
        .nodes()
        .filter_map(|v| t.parent(v).map(|p| (p.index(), v.index())))
        .collect();
    let mut have: std::collections::HashSet<(usize, usize)> =
        edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let max_edges = size * size.saturating_sub(1) / 2;
    let mut left = extra.min(max_edges - edges.len());
    while left > 0 {
        let (a, b) = (r.gen_range(0..size), r.gen_range(0..size));
        if a != b && have.insert((a.min(b), a.max(b))) {
            edges.push((a, b));
            left -= 1;
        }
    }
    edges.shuffle(r);
    Graph::new(size, &edges).unwrap()
}

/// Non-root nodes in random order: a full cut sequence.
pub fn cut_order(r: &mut ChaCha8Rng, f: &RootedForest) -> Vec<NodeId> {
    let mut v: Vec<NodeId> = f.nodes().filter(|&v| !f.is_root(v)).collect();
    v.shuffle(r);
    v
}
