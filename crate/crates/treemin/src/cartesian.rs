//! Cartesian trees on trees and graphs.
//!
//! On a tree, the root of `Ind(G, p)` is the global minimum; deleting its
//! edges and recursing on the pieces is a decremental tree minima workload.
//! On a general graph, `Ind(G, p)` equals the Cartesian tree of a maximum
//! spanning tree under `w(u, v) = min(p(u), p(v))`, computed here by
//! Dijkstra-Jarník-Prim with a pluggable addressable heap.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::One;

use crate::dtm::UoDtm;
use crate::error::{Error, Result};
use crate::forest::{EdgeId, Graph, NodeId, RootedForest};
use crate::oracle::{Prio, PriorityOracle};

/// Parent array and ordered child lists.
type Shape = (Vec<Option<usize>>, Vec<Vec<usize>>);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Vertex,
    Edge,
}

/// Rooted tree over graph vertices, or over vertices and edges (then edge
/// `e` of an `n`-vertex graph has id `n + e`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    kind: Vec<NodeKind>,
}

impl EliminationTree {
    pub fn new(parent: Vec<Option<usize>>, children: Vec<Vec<usize>>, kind: Vec<NodeKind>) -> Result<Self> {
        let n = parent.len();
        if children.len() != n || kind.len() != n {
            return Err(Error::BadParams("parent, children and kind lengths differ".into()));
        }
        if parent.iter().filter(|p| p.is_none()).count() != usize::from(n > 0) {
            return Err(Error::NotATree);
        }
        RootedForest::new(&parent, &children)?;
        Ok(EliminationTree { parent, children, kind })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.parent.iter().position(Option::is_none).expect("nonempty tree")
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn kind(&self, v: usize) -> NodeKind {
        self.kind[v]
    }

    pub fn to_forest(&self) -> RootedForest {
        RootedForest::new(&self.parent, &self.children).expect("validated on construction")
    }

    /// Nodes in preorder, children in order.
    pub fn preorder(&self) -> Vec<usize> {
        if self.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root()];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    /// One line per node, `id parent_or_dash kind`, in preorder.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in self.preorder() {
            let p = self.parent[v].map_or("-".to_string(), |p| p.to_string());
            let k = match self.kind[v] {
                NodeKind::Vertex => "vertex",
                NodeKind::Edge => "edge",
            };
            writeln!(s, "{v} {p} {k}").unwrap();
        }
        s
    }

    /// Inverse of [`to_text`](Self::to_text); child order follows line order.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::Parse {
                line: i + 1,
                msg: msg.into(),
            };
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 3 {
                return Err(bad("expected `id parent_or_dash kind`"));
            }
            let id: usize = f[0].parse().map_err(|_| bad("bad id"))?;
            let p = match f[1] {
                "-" => None,
                s => Some(s.parse::<usize>().map_err(|_| bad("bad parent"))?),
            };
            let k = match f[2] {
                "vertex" => NodeKind::Vertex,
                "edge" => NodeKind::Edge,
                _ => return Err(bad("kind must be vertex or edge")),
            };
            rows.push((id, p, k));
        }
        let n = rows.len();
        let mut parent = vec![None; n];
        let mut kind = vec![NodeKind::Vertex; n];
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        for &(id, p, k) in &rows {
            if id >= n || seen[id] || p.is_some_and(|p| p >= n) {
                return Err(Error::BadParams(format!("node id {id} out of range or repeated")));
            }
            seen[id] = true;
            parent[id] = p;
            kind[id] = k;
            if let Some(p) = p {
                children[p].push(id);
            }
        }
        Self::new(parent, children, kind)
    }

    /// Checks heap order and that every subtree induces a connected
    /// subgraph of `g` (which must be the graph the tree was built on).
    /// Uses a forked oracle.
    pub fn is_valid_for(&self, g: &Graph, prio: &[Prio], oracle: &PriorityOracle) -> bool {
        if self.len() != g.n() || prio.len() != g.n() {
            return false;
        }
        let o = oracle.fork();
        for v in 0..self.len() {
            if let Some(p) = self.parent[v] {
                if !o.less(prio[p], prio[v]) {
                    return false;
                }
            }
        }
        let mut inside = vec![false; g.n()];
        for v in 0..self.len() {
            let nodes = self.subtree(v);
            for &x in &nodes {
                inside[x] = true;
            }
            let mut seen = vec![false; g.n()];
            let mut stack = vec![v];
            seen[v] = true;
            let mut count = 1;
            while let Some(x) = stack.pop() {
                for (w, _) in g.neighbors(x) {
                    if inside[w] && !seen[w] {
                        seen[w] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
            for &x in &nodes {
                inside[x] = false;
            }
            if count != nodes.len() {
                return false;
            }
        }
        true
    }

    fn subtree(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            out.extend_from_slice(&self.children[out[i]]);
            i += 1;
        }
        out
    }
}

/// Cartesian tree of a tree whose vertex `v` has priority `Prio::of(v)`.
pub fn cartesian_on_tree(g: &Graph, oracle: &PriorityOracle) -> Result<EliminationTree> {
    let prio: Vec<Prio> = (0..g.n()).map(|v| Prio::of(NodeId::new(v))).collect();
    let (parent, children) = tree_pipeline(g, &prio, oracle, decode_vertex)?;
    EliminationTree::new(parent, children, vec![NodeKind::Vertex; g.n()])
}

fn decode_vertex(p: Prio) -> usize {
    match p {
        Prio::Finite(v) | Prio::Sentinel(v) => v as usize,
        Prio::Infinity => unreachable!("every vertex has a priority"),
    }
}

/// Tree case with arbitrary priority handles; `decode` maps the minimum
/// handle of a component back to its vertex.
fn tree_pipeline(
    g: &Graph,
    prio: &[Prio],
    oracle: &PriorityOracle,
    decode: impl Fn(Prio) -> usize,
) -> Result<Shape> {
    let n = g.n();
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let forest = g.rooted_at(0)?;
    let values = prio.iter().map(|&p| Some(p)).collect();
    let mut d = UoDtm::with_values_min(forest, values, oracle)?;
    let mut deleted = vec![false; g.m()];
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let min_of = |d: &UoDtm<_>, v: usize| -> Result<usize> {
        let p = d.tree_aggregate(NodeId::new(v))?.expect("nonempty component");
        Ok(decode(p))
    };
    let root = min_of(&d, 0)?;
    let mut stack = vec![root];
    let mut nbrs = Vec::new();
    while let Some(v) = stack.pop() {
        nbrs.clear();
        for (w, e) in g.neighbors(v) {
            if deleted[e.index()] {
                continue;
            }
            deleted[e.index()] = true;
            let f = d.forest();
            let child = if f.parent(NodeId::new(w)) == Some(NodeId::new(v)) { w } else { v };
            d.cut(NodeId::new(child))?;
            nbrs.push(w);
        }
        for &w in &nbrs {
            let c = min_of(&d, w)?;
            parent[c] = Some(v);
            children[v].push(c);
        }
        stack.extend(children[v].iter().rev());
    }
    Ok((parent, children))
}

/// Insert and delete timestamps of one DJP run. The timestamp of an
/// operation is the number of inserts so far, including it.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DjpTrace {
    pub inserted: Vec<u64>,
    pub deleted: Vec<u64>,
    /// `Σ log2(1 + t_x − s_x)`.
    pub sum_log: f64,
}

/// Heap key: an edge weight, tie-broken by edge id.
pub type DjpKey = (Prio, u32);

/// Addressable heap over elements `0..n`. `better(a, b)` says `a` should
/// be popped before `b`.
pub trait AddressableHeap {
    fn with_capacity(n: usize) -> Self
    where
        Self: Sized;
    fn is_empty(&self) -> bool;
    fn contains(&self, x: usize) -> bool;
    fn insert(&mut self, x: usize, key: DjpKey, better: &dyn Fn(&DjpKey, &DjpKey) -> bool);
    /// `key` must be better than the current key of `x`.
    fn improve(&mut self, x: usize, key: DjpKey, better: &dyn Fn(&DjpKey, &DjpKey) -> bool);
    fn pop(&mut self, better: &dyn Fn(&DjpKey, &DjpKey) -> bool) -> Option<(usize, DjpKey)>;
}

const NONE: u32 = u32::MAX;

/// Two-pass pairing heap.
pub struct PairingHeap {
    root: u32,
    child: Vec<u32>,
    sibling: Vec<u32>,
    /// parent if leftmost child, else left sibling
    prev: Vec<u32>,
    key: Vec<DjpKey>,
    present: Vec<bool>,
}

impl PairingHeap {
    fn link(&mut self, a: u32, b: u32, better: &dyn Fn(&DjpKey, &DjpKey) -> bool) -> u32 {
        if a == NONE {
            return b;
        }
        if b == NONE {
            return a;
        }
        let (top, sub) = if better(&self.key[b as usize], &self.key[a as usize]) { (b, a) } else { (a, b) };
        let c = self.child[top as usize];
        self.sibling[sub as usize] = c;
        if c != NONE {
            self.prev[c as usize] = sub;
        }
        self.prev[sub as usize] = top;
        self.child[top as usize] = sub;
        self.sibling[top as usize] = NONE;
        self.prev[top as usize] = NONE;
        top
    }

    fn detach(&mut self, x: u32) {
        let p = self.prev[x as usize];
        let s = self.sibling[x as usize];
        if self.child[p as usize] == x {
            self.child[p as usize] = s;
        } else {
            self.sibling[p as usize] = s;
        }
        if s != NONE {
            self.prev[s as usize] = p;
        }
        self.sibling[x as usize] = NONE;
        self.prev[x as usize] = NONE;
    }
}

impl AddressableHeap for PairingHeap {
    fn with_capacity(n: usize) -> Self {
        PairingHeap {
            root: NONE,
            child: vec![NONE; n],
            sibling: vec![NONE; n],
            prev: vec![NONE; n],
            key: vec![(Prio::Infinity, NONE); n],
            present: vec![false; n],
        }
    }

    fn is_empty(&self) -> bool {
        self.root == NONE
    }

    fn contains(&self, x: usize) -> bool {
        self.present[x]
    }

    fn insert(&mut self, x: usize, key: DjpKey, better: &dyn Fn(&DjpKey, &DjpKey) -> bool) {
        self.key[x] = key;
        self.present[x] = true;
        self.child[x] = NONE;
        self.root = self.link(self.root, x as u32, better);
    }

    fn improve(&mut self, x: usize, key: DjpKey, better: &dyn Fn(&DjpKey, &DjpKey) -> bool) {
        self.key[x] = key;
        if self.root == x as u32 {
            return;
        }
        self.detach(x as u32);
        self.root = self.link(self.root, x as u32, better);
    }

    fn pop(&mut self, better: &dyn Fn(&DjpKey, &DjpKey) -> bool) -> Option<(usize, DjpKey)> {
        let r = self.root;
        if r == NONE {
            return None;
        }
        self.present[r as usize] = false;
        let mut pairs = Vec::new();
        let mut c = self.child[r as usize];
        while c != NONE {
            let a = c;
            let b = self.sibling[a as usize];
            c = if b == NONE { NONE } else { self.sibling[b as usize] };
            for x in [a, b] {
                if x != NONE {
                    self.sibling[x as usize] = NONE;
                    self.prev[x as usize] = NONE;
                }
            }
            pairs.push(self.link(a, b, better));
        }
        let mut acc = NONE;
        while let Some(t) = pairs.pop() {
            acc = self.link(t, acc, better);
        }
        self.root = acc;
        self.child[r as usize] = NONE;
        Some((r as usize, self.key[r as usize]))
    }
}

/// Indexed binary heap.
pub struct BinaryHeap {
    heap: Vec<u32>,
    pos: Vec<u32>,
    key: Vec<DjpKey>,
}

impl BinaryHeap {
    fn swap(&mut self, i: usize, j: usize) {
        self.heap.swap(i, j);
        self.pos[self.heap[i] as usize] = i as u32;
        self.pos[self.heap[j] as usize] = j as u32;
    }

    fn up(&mut self, mut i: usize, better: &dyn Fn(&DjpKey, &DjpKey) -> bool) {
        while i > 0 {
            let p = (i - 1) / 2;
            if better(&self.key[self.heap[i] as usize], &self.key[self.heap[p] as usize]) {
                self.swap(i, p);
                i = p;
            } else {
                break;
            }
        }
    }

    fn down(&mut self, mut i: usize, better: &dyn Fn(&DjpKey, &DjpKey) -> bool) {
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut b = i;
            if l < self.heap.len() && better(&self.key[self.heap[l] as usize], &self.key[self.heap[b] as usize]) {
                b = l;
            }
            if r < self.heap.len() && better(&self.key[self.heap[r] as usize], &self.key[self.heap[b] as usize]) {
                b = r;
            }
            if b == i {
                return;
            }
            self.swap(i, b);
            i = b;
        }
    }
}

impl AddressableHeap for BinaryHeap {
    fn with_capacity(n: usize) -> Self {
        BinaryHeap {
            heap: Vec::with_capacity(n),
            pos: vec![NONE; n],
            key: vec![(Prio::Infinity, NONE); n],
        }
    }

    fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    fn contains(&self, x: usize) -> bool {
        self.pos[x] != NONE
    }

    fn insert(&mut self, x: usize, key: DjpKey, better: &dyn Fn(&DjpKey, &DjpKey) -> bool) {
        self.key[x] = key;
        self.pos[x] = self.heap.len() as u32;
        self.heap.push(x as u32);
        self.up(self.heap.len() - 1, better);
    }

    fn improve(&mut self, x: usize, key: DjpKey, better: &dyn Fn(&DjpKey, &DjpKey) -> bool) {
        self.key[x] = key;
        self.up(self.pos[x] as usize, better);
    }

    fn pop(&mut self, better: &dyn Fn(&DjpKey, &DjpKey) -> bool) -> Option<(usize, DjpKey)> {
        let top = *self.heap.first()?;
        let last = self.heap.len() - 1;
        self.swap(0, last);
        self.heap.pop();
        self.pos[top as usize] = NONE;
        if !self.heap.is_empty() {
            self.down(0, better);
        }
        Some((top as usize, self.key[top as usize]))
    }
}

/// Maximum spanning tree by Dijkstra-Jarník-Prim from `s`. Equal weights
/// are broken by edge id (smaller id is heavier), without a comparison.
pub fn djp_max_spanning_tree<H: AddressableHeap>(
    g: &Graph,
    w: &[Prio],
    s: usize,
    oracle: &PriorityOracle,
) -> Result<(Vec<EdgeId>, DjpTrace)> {
    let n = g.n();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if w.len() != g.m() {
        return Err(Error::BadParams("one weight per edge expected".into()));
    }
    let heavier = |a: &DjpKey, b: &DjpKey| -> bool {
        if a.0 == b.0 {
            a.1 < b.1
        } else {
            oracle.less(b.0, a.0)
        }
    };
    let mut trace = DjpTrace {
        inserted: vec![0; n],
        deleted: vec![0; n],
        sum_log: 0.0,
    };
    if n == 0 {
        return Ok((Vec::new(), trace));
    }
    let mut q = H::with_capacity(n);
    let mut via: Vec<Option<EdgeId>> = vec![None; n];
    let mut best: Vec<DjpKey> = vec![(Prio::Infinity, NONE); n];
    let mut done = vec![false; n];
    let mut ts = 1u64;
    q.insert(s, (Prio::Infinity, NONE), &heavier);
    trace.inserted[s] = ts;
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    while let Some((u, _)) = q.pop(&heavier) {
        done[u] = true;
        trace.deleted[u] = ts;
        if let Some(e) = via[u] {
            tree.push(e);
        }
        for (v, e) in g.neighbors(u) {
            if done[v] {
                continue;
            }
            let key = (w[e.index()], e.0);
            if !q.contains(v) {
                ts += 1;
                trace.inserted[v] = ts;
                q.insert(v, key, &heavier);
                via[v] = Some(e);
                best[v] = key;
            } else if heavier(&key, &best[v]) {
                q.improve(v, key, &heavier);
                via[v] = Some(e);
                best[v] = key;
            }
        }
    }
    trace.sum_log = (0..n)
        .map(|x| ((1 + trace.deleted[x] - trace.inserted[x]) as f64).log2())
        .sum();
    Ok((tree, trace))
}

/// Which heap DJP uses.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum HeapKind {
    #[default]
    Pairing,
    Binary,
}

fn graph_pipeline(
    g: &Graph,
    prio: &[Prio],
    oracle: &PriorityOracle,
    heap: HeapKind,
    decode: impl Fn(Prio) -> usize,
) -> Result<(Shape, Option<DjpTrace>)> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.is_tree() || g.n() == 0 {
        let (p, c) = tree_pipeline(g, prio, oracle, decode)?;
        return Ok(((p, c), None));
    }
    let w: Vec<Prio> = g.edges().map(|(_, u, v)| oracle.min(prio[u], prio[v])).collect();
    let (tree, trace) = match heap {
        HeapKind::Pairing => djp_max_spanning_tree::<PairingHeap>(g, &w, 0, oracle)?,
        HeapKind::Binary => djp_max_spanning_tree::<BinaryHeap>(g, &w, 0, oracle)?,
    };
    let edges: Vec<(usize, usize)> = tree.iter().map(|&e| g.endpoints(e)).collect();
    let t = Graph::new(g.n(), &edges)?;
    let (p, c) = tree_pipeline(&t, prio, oracle, decode)?;
    Ok(((p, c), Some(trace)))
}

/// Cartesian tree on a connected graph with vertex priorities `Prio::of(v)`.
pub fn cartesian_on_graph(g: &Graph, oracle: &PriorityOracle) -> Result<EliminationTree> {
    cartesian_on_graph_traced(g, oracle, HeapKind::Pairing).map(|(t, _)| t)
}

/// As [`cartesian_on_graph`], also returning the DJP trace (`None` when
/// the input is already a tree and DJP is skipped).
pub fn cartesian_on_graph_traced(
    g: &Graph,
    oracle: &PriorityOracle,
    heap: HeapKind,
) -> Result<(EliminationTree, Option<DjpTrace>)> {
    let prio: Vec<Prio> = (0..g.n()).map(|v| Prio::of(NodeId::new(v))).collect();
    let ((p, c), trace) = graph_pipeline(g, &prio, oracle, heap, decode_vertex)?;
    Ok((EliminationTree::new(p, c, vec![NodeKind::Vertex; g.n()])?, trace))
}

/// Cartesian edge-partition tree: edge `e` has priority `Prio::of(e)` in
/// `edge_oracle`; vertices rank above all edges, ordered by id.
pub fn ept_on_graph(g: &Graph, edge_oracle: &PriorityOracle) -> Result<EliminationTree> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let sub = g.subdivide();
    let prio: Vec<Prio> = (0..sub.n())
        .map(|x| if x < n { Prio::Sentinel(x as u32) } else { Prio::Finite((x - n) as u32) })
        .collect();
    let decode = move |p: Prio| match p {
        Prio::Finite(e) => n + e as usize,
        Prio::Sentinel(v) => v as usize,
        Prio::Infinity => unreachable!("every node has a priority"),
    };
    let ((p, c), _) = graph_pipeline(&sub, &prio, edge_oracle, HeapKind::Pairing, decode)?;
    let kind = (0..sub.n())
        .map(|x| if x < n { NodeKind::Vertex } else { NodeKind::Edge })
        .collect();
    EliminationTree::new(p, c, kind)
}

/// Largest graph [`count_elimination_trees`] accepts.
pub const MAX_COUNT_VERTICES: usize = 16;

/// Number of elimination trees of a connected graph, by memoized recursion
/// over connected vertex subsets.
pub fn count_elimination_trees(g: &Graph) -> Result<BigUint> {
    let n = g.n();
    if n > MAX_COUNT_VERTICES {
        return Err(Error::TooLarge(n));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if n == 0 {
        return Ok(BigUint::one());
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |m, (w, _)| m | 1 << w))
        .collect();
    let mut memo = HashMap::new();
    Ok(count_subset(&adj, (1u32 << n) - 1, &mut memo))
}

fn components(adj: &[u32], set: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut rest = set;
    while rest != 0 {
        let start = rest & rest.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & set & !comp;
            comp |= new;
            frontier |= new;
        }
        out.push(comp);
        rest &= !comp;
    }
    out
}

fn count_subset(adj: &[u32], set: u32, memo: &mut HashMap<u32, BigUint>) -> BigUint {
    if set.count_ones() <= 1 {
        return BigUint::one();
    }
    if let Some(c) = memo.get(&set) {
        return c.clone();
    }
    let mut total = BigUint::default();
    let mut it = set;
    while it != 0 {
        let v = it.trailing_zeros();
        it &= it - 1;
        let mut prod = BigUint::one();
        for c in components(adj, set & !(1 << v)) {
            prod *= count_subset(adj, c, memo);
        }
        total += prod;
    }
    memo.insert(set, total.clone());
    total
}

/// Deletes the given edges one by one. Each deletion must be legal: the
/// edge lies on a cycle whose minimum vertex is one of its endpoints.
/// Returns whether the brute-force Cartesian tree stayed the same
/// throughout. Uses a forked oracle.
pub fn verify_min_edge_removal(g: &Graph, oracle: &PriorityOracle, deletions: &[EdgeId]) -> Result<bool> {
    let o = oracle.fork();
    let prio: Vec<Prio> = (0..g.n()).map(|v| Prio::of(NodeId::new(v))).collect();
    let want = crate::reference::brute_cartesian(g, &prio, &o);
    let mut alive = vec![true; g.m()];
    for &e in deletions {
        if !alive.get(e.index()).copied().unwrap_or(false) {
            return Err(Error::BadParams(format!("edge {} is not present", e.0)));
        }
        let (a, b) = g.endpoints(e);
        let (u, v) = if o.compare(NodeId::new(a), NodeId::new(b)) { (a, b) } else { (b, a) };
        // v reachable from u avoiding e, through vertices above u
        let mut seen = vec![false; g.n()];
        seen[u] = true;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for (y, f) in g.neighbors(x) {
                if f != e && alive[f.index()] && !seen[y] && o.compare(NodeId::new(u), NodeId::new(y)) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if !seen[v] {
            return Err(Error::BadParams(format!("edge {} is not a legal deletion", e.0)));
        }
        alive[e.index()] = false;
        let kept: Vec<(usize, usize)> = g
            .edges()
            .filter(|(f, _, _)| alive[f.index()])
            .map(|(_, x, y)| (x, y))
            .collect();
        let h = Graph::new(g.n(), &kept)?;
        if crate::reference::brute_cartesian(&h, &prio, &o) != want {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn path_tree() {
        let g = path(4);
        let o = PriorityOracle::from_ranks(vec![3, 1, 4, 2]).unwrap();
        let t = cartesian_on_tree(&g, &o).unwrap();
        assert_eq!(t.parents(), &[Some(1), None, Some(3), Some(1)]);
    }

    #[test]
    fn triangle_is_a_chain() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let o = PriorityOracle::from_ranks(vec![1, 2, 3]).unwrap();
        let t = cartesian_on_graph(&g, &o).unwrap();
        assert_eq!(t.parents(), &[None, Some(0), Some(1)]);
        let text = t.to_text();
        assert_eq!(EliminationTree::parse(&text).unwrap(), t);
    }

    #[test]
    fn ept_of_path() {
        let g = path(4);
        let o = PriorityOracle::from_ranks(vec![2, 1, 3]).unwrap();
        let t = ept_on_graph(&g, &o).unwrap();
        assert_eq!(t.root(), 4 + 1);
        assert_eq!(t.kind(5), NodeKind::Edge);
        assert_eq!(t.parent(0), Some(4));
        assert_eq!(t.parent(4), Some(5));
        assert_eq!(t.parent(6), Some(5));
        let single = Graph::new(2, &[(0, 1)]).unwrap();
        let t = ept_on_graph(&single, &PriorityOracle::identity(1)).unwrap();
        assert_eq!(t.root(), 2);
        assert_eq!(t.children(2), &[0, 1]);
    }

    #[test]
    fn djp_tie_break() {
        // w(ab)=w(ac) < w(bc)
        let g = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let o = PriorityOracle::from_ranks(vec![1, 2]).unwrap();
        let w = [Prio::Finite(0), Prio::Finite(0), Prio::Finite(1)];
        for s in 0..3 {
            let (mut t, _) = djp_max_spanning_tree::<PairingHeap>(&g, &w, s, &o).unwrap();
            t.sort();
            assert_eq!(t, vec![EdgeId(0), EdgeId(2)]);
            let (mut t, _) = djp_max_spanning_tree::<BinaryHeap>(&g, &w, s, &o).unwrap();
            t.sort();
            assert_eq!(t, vec![EdgeId(0), EdgeId(2)]);
        }
    }

    #[test]
    fn elimination_tree_counts() {
        assert_eq!(count_elimination_trees(&path(3)).unwrap(), BigUint::from(5u32));
        assert_eq!(count_elimination_trees(&path(1)).unwrap(), BigUint::one());
        let k4: Vec<_> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        assert_eq!(count_elimination_trees(&Graph::new(4, &k4).unwrap()).unwrap(), BigUint::from(24u32));
    }

    #[test]
    fn min_edge_removal_on_k4() {
        let k4: Vec<_> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        let g = Graph::new(4, &k4).unwrap();
        let o = PriorityOracle::identity(4);
        // edges 0-1, 0-2 lie on cycles with minimum 0; then 1-2 on 1-2-3
        assert!(verify_min_edge_removal(&g, &o, &[EdgeId(0), EdgeId(1), EdgeId(3)]).unwrap());
        assert!(verify_min_edge_removal(&g, &o, &[EdgeId(5)]).is_err());
    }
}
