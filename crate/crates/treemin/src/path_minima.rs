//! Path-minimum and bottleneck queries answered by LCA in an elimination
//! tree. Building costs comparisons; queries cost none.

use crate::cartesian::{cartesian_on_graph, cartesian_on_tree, ept_on_graph, EliminationTree, NodeKind};
use crate::error::{Error, Result};
use crate::forest::{EdgeId, Graph};
use crate::oracle::PriorityOracle;
use crate::rmq::MinIndex;

/// Static LCA index over an elimination tree or edge-partition tree.
#[derive(Clone, Debug)]
pub struct PathMinIndex {
    tree: EliminationTree,
    /// vertex count of the input graph
    n: usize,
    euler: Vec<u32>,
    first: Vec<u32>,
    rmq: MinIndex,
}

impl PathMinIndex {
    /// Index over an elimination tree whose first `n` nodes are the graph
    /// vertices.
    pub fn from_tree(tree: EliminationTree, n: usize) -> Self {
        let len = tree.len();
        let mut euler = Vec::with_capacity(2 * len);
        let mut depths = Vec::with_capacity(2 * len);
        let mut first = vec![0u32; len];
        let mut stack: Vec<(usize, u32, usize)> = vec![(tree.root(), 0, 0)];
        while let Some((v, d, i)) = stack.pop() {
            if i == 0 {
                first[v] = euler.len() as u32;
            }
            euler.push(v as u32);
            depths.push(d);
            if let Some(&c) = tree.children(v).get(i) {
                stack.push((v, d, i + 1));
                stack.push((c, d + 1, 0));
            }
        }
        PathMinIndex {
            tree,
            n,
            euler,
            first,
            rmq: MinIndex::new(depths),
        }
    }

    pub fn tree(&self) -> &EliminationTree {
        &self.tree
    }

    /// Number of graph vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::BadParams(format!("vertex {v} out of range")))
        }
    }

    /// Lowest common ancestor of two tree nodes.
    pub fn lca(&self, u: usize, v: usize) -> usize {
        let (a, b) = (self.first[u], self.first[v]);
        let (l, r) = if a <= b { (a, b) } else { (b, a) };
        self.euler[self.rmq.argmin(l as usize, r as usize)] as usize
    }

    /// Minimum vertex on the `u`-`v` path of a tree.
    pub fn path_min(&self, u: usize, v: usize) -> Result<usize> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.lca(u, v))
    }

    /// Vertex of largest priority that is the minimum of some `u`-`v` path.
    pub fn bottleneck(&self, u: usize, v: usize) -> Result<usize> {
        self.path_min(u, v)
    }

    /// Minimum edge on the `u`-`v` path; `None` if `u == v`.
    pub fn path_min_edge(&self, u: usize, v: usize) -> Result<Option<EdgeId>> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Ok(None);
        }
        let x = self.lca(u, v);
        debug_assert_eq!(self.tree.kind(x), NodeKind::Edge);
        Ok(Some(EdgeId((x - self.n) as u32)))
    }

    /// Edge of largest priority that is the minimum edge of some `u`-`v` path.
    pub fn bottleneck_edge(&self, u: usize, v: usize) -> Result<Option<EdgeId>> {
        self.path_min_edge(u, v)
    }
}

/// Index for path-minimum queries on a tree.
pub fn pm_build_tree(g: &Graph, oracle: &PriorityOracle) -> Result<PathMinIndex> {
    Ok(PathMinIndex::from_tree(cartesian_on_tree(g, oracle)?, g.n()))
}

/// Index for bottleneck-vertex queries on a connected graph.
pub fn bottleneck_build(g: &Graph, oracle: &PriorityOracle) -> Result<PathMinIndex> {
    Ok(PathMinIndex::from_tree(cartesian_on_graph(g, oracle)?, g.n()))
}

/// Index for minimum-edge queries on a tree; `edge_oracle` ranks edges.
pub fn pm_build_edges(g: &Graph, edge_oracle: &PriorityOracle) -> Result<PathMinIndex> {
    if !g.is_tree() {
        return Err(if g.is_connected() { Error::NotATree } else { Error::Disconnected });
    }
    Ok(PathMinIndex::from_tree(ept_on_graph(g, edge_oracle)?, g.n()))
}

/// Index for bottleneck-edge queries on a connected graph.
pub fn bottleneck_build_edges(g: &Graph, edge_oracle: &PriorityOracle) -> Result<PathMinIndex> {
    Ok(PathMinIndex::from_tree(ept_on_graph(g, edge_oracle)?, g.n()))
}

/// Largest tree accepted by [`reconstruct_et_via_queries`].
pub const MAX_RECONSTRUCT: usize = 2000;

/// Rebuilds the elimination tree of a tree from `path_min` answers alone.
/// The minimum of a connected vertex set is found by folding `path_min`
/// over it, then the set is split at that vertex.
pub fn reconstruct_et_via_queries(ix: &PathMinIndex, g: &Graph) -> Result<EliminationTree> {
    let n = g.n();
    if n > MAX_RECONSTRUCT {
        return Err(Error::TooLarge(n));
    }
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut removed = vec![false; n];
    let mut tasks: Vec<(usize, Option<usize>)> = vec![(0, None)];
    while let Some((start, p)) = tasks.pop() {
        let comp = component(g, start, &removed);
        let mut m = start;
        for &x in &comp {
            m = ix.path_min(m, x)?;
        }
        parent[m] = p;
        if let Some(p) = p {
            children[p].push(m);
        }
        removed[m] = true;
        for (w, _) in g.neighbors(m) {
            if !removed[w] {
                tasks.push((w, Some(m)));
            }
        }
    }
    for c in &mut children {
        c.sort_unstable();
    }
    EliminationTree::new(parent, children, vec![NodeKind::Vertex; n])
}

fn component(g: &Graph, s: usize, removed: &[bool]) -> Vec<usize> {
    let mut seen = std::collections::HashSet::from([s]);
    let mut out = vec![s];
    let mut i = 0;
    while i < out.len() {
        for (w, _) in g.neighbors(out[i]) {
            if !removed[w] && seen.insert(w) {
                out.push(w);
            }
        }
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::{brute_bottleneck, brute_path_min, brute_path_min_edge};

    #[test]
    fn path_queries() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let o = PriorityOracle::from_ranks(vec![4, 2, 5, 1, 3]).unwrap();
        let ix = pm_build_tree(&g, &o).unwrap();
        let before = o.comparisons();
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(ix.path_min(u, v).unwrap(), brute_path_min(&g, &o, u, v).unwrap());
            }
        }
        assert_eq!(o.comparisons(), before);
        assert_eq!(ix.path_min(2, 2).unwrap(), 2);
        assert!(ix.path_min(5, 0).is_err());
    }

    #[test]
    fn triangle_bottleneck() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let o = PriorityOracle::from_ranks(vec![1, 2, 3]).unwrap();
        let ix = bottleneck_build(&g, &o).unwrap();
        assert_eq!(ix.bottleneck(1, 2).unwrap(), 1);
        assert_eq!(ix.bottleneck(1, 2).unwrap(), brute_bottleneck(&g, &o, 1, 2).unwrap());
    }

    #[test]
    fn edge_queries() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let o = PriorityOracle::from_ranks(vec![2, 3, 1]).unwrap();
        let ix = pm_build_edges(&g, &o).unwrap();
        assert_eq!(ix.path_min_edge(0, 0).unwrap(), None);
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(ix.path_min_edge(u, v).unwrap(), brute_path_min_edge(&g, &o, u, v).unwrap());
            }
        }
        let single = Graph::new(2, &[(0, 1)]).unwrap();
        let o1 = PriorityOracle::identity(1);
        let ix = pm_build_edges(&single, &o1).unwrap();
        assert_eq!(ix.path_min_edge(1, 0).unwrap(), Some(EdgeId(0)));
    }

    #[test]
    fn reconstruction() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        let o = PriorityOracle::from_ranks(vec![5, 3, 6, 1, 2, 4]).unwrap();
        let ix = pm_build_tree(&g, &o).unwrap();
        let before = o.comparisons();
        let et = reconstruct_et_via_queries(&ix, &g).unwrap();
        assert_eq!(o.comparisons(), before);
        assert_eq!(et.parents(), ix.tree().parents());
    }
}
