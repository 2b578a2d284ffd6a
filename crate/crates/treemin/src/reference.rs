//! Brute-force reference implementations for tests and verified runs.
//!
//! Everything here compares through a forked oracle, so the counters of
//! the structures under test are never touched.

use crate::dtm::TreeMinima;
use crate::error::{Error, Result};
use crate::forest::{EdgeId, Graph, NodeId, RootedForest};
use crate::oracle::{Prio, PriorityOracle, Semigroup};

/// Tree minima by scanning the whole component.
pub struct ScanDtm {
    forest: RootedForest,
    values: Vec<Option<Prio>>,
    oracle: PriorityOracle,
}

impl ScanDtm {
    pub fn new(forest: RootedForest, oracle: &PriorityOracle) -> Self {
        let values = (0..forest.len()).map(|i| Some(Prio::of(NodeId::new(i)))).collect();
        Self::with_values(forest, values, oracle)
    }

    pub fn with_values(forest: RootedForest, values: Vec<Option<Prio>>, oracle: &PriorityOracle) -> Self {
        ScanDtm {
            forest,
            values,
            oracle: oracle.fork(),
        }
    }

    pub fn forest(&self) -> &RootedForest {
        &self.forest
    }

    /// Comparisons made by this scan (on its own forked counter).
    pub fn comparisons(&self) -> u64 {
        self.oracle.comparisons()
    }

    /// Minimum value in the tree of `v`.
    pub fn tree_min_value(&self, v: NodeId) -> Result<Option<Prio>> {
        self.forest.check_alive(v)?;
        let r = self.forest.root_naive(v);
        let mut best: Option<Prio> = None;
        for x in self.forest.subtree(r) {
            if let Some(p) = self.values.get(x.index()).copied().flatten() {
                best = Some(match best {
                    Some(b) => self.oracle.min(b, p),
                    None => p,
                });
            }
        }
        Ok(best)
    }

    /// Node holding the minimum value in the tree of `v`.
    pub fn tree_min_node(&self, v: NodeId) -> Result<Option<NodeId>> {
        self.forest.check_alive(v)?;
        let r = self.forest.root_naive(v);
        let mut best: Option<(Prio, NodeId)> = None;
        for x in self.forest.subtree(r) {
            if let Some(p) = self.values.get(x.index()).copied().flatten() {
                if best.is_none_or(|(b, _)| self.oracle.less(p, b)) {
                    best = Some((p, x));
                }
            }
        }
        Ok(best.map(|(_, x)| x))
    }

    pub fn cut(&mut self, v: NodeId) -> Result<()> {
        self.forest.cut(v)
    }
}

impl TreeMinima for ScanDtm {
    fn tree_min(&mut self, v: NodeId) -> Result<Option<NodeId>> {
        self.tree_min_node(v)
    }

    fn cut(&mut self, v: NodeId) -> Result<()> {
        ScanDtm::cut(self, v)
    }

    fn forest(&self) -> &RootedForest {
        &self.forest
    }
}

/// Semigroup sum over the tree of `v` by scanning.
pub fn scan_aggregate<S: Semigroup>(
    forest: &RootedForest,
    values: &[Option<S::Elem>],
    sg: &S,
    v: NodeId,
) -> Result<Option<S::Elem>> {
    forest.check_alive(v)?;
    let r = forest.root_naive(v);
    let mut acc = None;
    for x in forest.subtree(r) {
        acc = sg.combine_opt(acc.as_ref(), values.get(x.index()).and_then(Option::as_ref));
    }
    Ok(acc)
}

/// `Ind(G, p)` by the recursive definition, as a parent array. A
/// disconnected graph yields one tree per component.
pub fn brute_cartesian(g: &Graph, prio: &[Prio], oracle: &PriorityOracle) -> Vec<Option<usize>> {
    let o = oracle.fork();
    let n = g.n();
    let mut parent = vec![None; n];
    let mut removed = vec![false; n];
    let mut mark = vec![false; n];
    let all: Vec<usize> = (0..n).collect();
    let mut tasks: Vec<(Vec<usize>, Option<usize>)> = pieces(g, &all, &removed, &mut mark)
        .into_iter()
        .map(|c| (c, None))
        .collect();
    while let Some((comp, p)) = tasks.pop() {
        let mut m = comp[0];
        for &x in &comp[1..] {
            if o.less(prio[x], prio[m]) {
                m = x;
            }
        }
        parent[m] = p;
        removed[m] = true;
        for piece in pieces(g, &comp, &removed, &mut mark) {
            tasks.push((piece, Some(m)));
        }
    }
    parent
}

/// Components of the non-removed vertices of `set`.
fn pieces(g: &Graph, set: &[usize], removed: &[bool], mark: &mut [bool]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for &s in set {
        if removed[s] || mark[s] {
            continue;
        }
        mark[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            for (w, _) in g.neighbors(comp[i]) {
                if !removed[w] && !mark[w] {
                    mark[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        out.push(comp);
    }
    for &s in set {
        mark[s] = false;
    }
    out
}

/// Cartesian edge-partition tree by the recursive definition on the
/// subdivided graph; node `n + e` is edge `e`.
pub fn brute_ept(g: &Graph, edge_oracle: &PriorityOracle) -> Vec<Option<usize>> {
    let n = g.n();
    let sub = g.subdivide();
    let prio: Vec<Prio> = (0..sub.n())
        .map(|x| if x < n { Prio::Sentinel(x as u32) } else { Prio::Finite((x - n) as u32) })
        .collect();
    brute_cartesian(&sub, &prio, edge_oracle)
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[a] = b;
        true
    }
}

/// Maximum spanning forest by Kruskal; equal weights prefer smaller ids.
pub fn kruskal_max(g: &Graph, w: &[Prio], oracle: &PriorityOracle) -> Vec<EdgeId> {
    let o = oracle.fork();
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.sort_by(|&a, &b| {
        if w[a] == w[b] {
            a.cmp(&b)
        } else if o.less(w[b], w[a]) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let mut dsu = Dsu::new(g.n());
    order
        .into_iter()
        .filter(|&e| {
            let (u, v) = g.endpoints(EdgeId(e as u32));
            dsu.union(u, v)
        })
        .map(|e| EdgeId(e as u32))
        .collect()
}

/// Vertices and edges of the unique `u`-`v` path in a tree.
pub fn tree_path(g: &Graph, u: usize, v: usize) -> Result<(Vec<usize>, Vec<EdgeId>)> {
    let mut via: Vec<Option<(usize, EdgeId)>> = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    seen[u] = true;
    let mut queue = std::collections::VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for (y, e) in g.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                via[y] = Some((x, e));
                queue.push_back(y);
            }
        }
    }
    if !seen[v] {
        return Err(Error::Disconnected);
    }
    let (mut verts, mut edges) = (vec![v], Vec::new());
    let mut x = v;
    while let Some((p, e)) = via[x] {
        verts.push(p);
        edges.push(e);
        x = p;
    }
    Ok((verts, edges))
}

/// Minimum vertex on the tree path from `u` to `v`.
pub fn brute_path_min(g: &Graph, oracle: &PriorityOracle, u: usize, v: usize) -> Result<usize> {
    let o = oracle.fork();
    let (verts, _) = tree_path(g, u, v)?;
    Ok(verts
        .into_iter()
        .reduce(|a, b| if o.compare(NodeId::new(b), NodeId::new(a)) { b } else { a })
        .unwrap())
}

/// Minimum edge on the tree path from `u` to `v`, `None` if `u == v`.
pub fn brute_path_min_edge(g: &Graph, edge_oracle: &PriorityOracle, u: usize, v: usize) -> Result<Option<EdgeId>> {
    let o = edge_oracle.fork();
    let (_, edges) = tree_path(g, u, v)?;
    Ok(edges
        .into_iter()
        .reduce(|a, b| if o.compare(NodeId::new(b.index()), NodeId::new(a.index())) { b } else { a }))
}

fn sorted_desc(len: usize, o: &PriorityOracle) -> Vec<usize> {
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by(|&a, &b| {
        if a == b {
            std::cmp::Ordering::Equal
        } else if o.compare(NodeId::new(b), NodeId::new(a)) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    order
}

/// The vertex `w` maximizing `p(w)` such that `u` and `v` are connected
/// through vertices of priority at least `p(w)`: the minimum vertex of a
/// best bottleneck path.
pub fn brute_bottleneck(g: &Graph, oracle: &PriorityOracle, u: usize, v: usize) -> Result<usize> {
    if u == v {
        return Ok(u);
    }
    let o = oracle.fork();
    let mut dsu = Dsu::new(g.n());
    let mut added = vec![false; g.n()];
    for w in sorted_desc(g.n(), &o) {
        added[w] = true;
        for (x, _) in g.neighbors(w) {
            if added[x] {
                dsu.union(w, x);
            }
        }
        if added[u] && added[v] && dsu.find(u) == dsu.find(v) {
            return Ok(w);
        }
    }
    Err(Error::Disconnected)
}

/// Edge analogue of [`brute_bottleneck`]; `None` if `u == v`.
pub fn brute_bottleneck_edge(g: &Graph, edge_oracle: &PriorityOracle, u: usize, v: usize) -> Result<Option<EdgeId>> {
    if u == v {
        return Ok(None);
    }
    let o = edge_oracle.fork();
    let mut dsu = Dsu::new(g.n());
    for e in sorted_desc(g.m(), &o) {
        let (a, b) = g.endpoints(EdgeId(e as u32));
        dsu.union(a, b);
        if dsu.find(u) == dsu.find(v) {
            return Ok(Some(EdgeId(e as u32)));
        }
    }
    Err(Error::Disconnected)
}
