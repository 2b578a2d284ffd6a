//! Ordered rooted forests with cut and split, undirected graphs, and the
//! text fixture formats for both.

use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub(crate) const NIL: u32 = u32::MAX;

/// Dense handle of a forest node.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    pub fn new(index: usize) -> NodeId {
        debug_assert!(index < NIL as usize);
        NodeId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn raw(self) -> u32 {
        self.0
    }

    pub(crate) fn from_raw(raw: u32) -> Option<NodeId> {
        (raw != NIL).then_some(NodeId(raw))
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Dense handle of a graph edge.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Mutable ordered rooted forest.
///
/// Children are kept in a doubly linked sibling list. `split` retires the
/// split node and allocates two fresh handles, the first with index
/// `len()` and the second with `len() + 1`.
#[derive(Clone, Debug)]
pub struct RootedForest {
    parent: Vec<u32>,
    first: Vec<u32>,
    last: Vec<u32>,
    prev: Vec<u32>,
    next: Vec<u32>,
    degree: Vec<u32>,
    alive: Vec<bool>,
    live: usize,
    cuts: u64,
    inner_splits: u64,
}

impl RootedForest {
    /// `n` isolated nodes.
    pub fn isolated(n: usize) -> Self {
        RootedForest {
            parent: vec![NIL; n],
            first: vec![NIL; n],
            last: vec![NIL; n],
            prev: vec![NIL; n],
            next: vec![NIL; n],
            degree: vec![0; n],
            alive: vec![true; n],
            live: n,
            cuts: 0,
            inner_splits: 0,
        }
    }

    /// Builds a forest from a parent array; children are ordered by id.
    pub fn from_parents(parents: &[Option<usize>]) -> Result<Self> {
        check_parents(parents)?;
        let mut f = Self::isolated(parents.len());
        for (v, p) in parents.iter().enumerate() {
            if let Some(p) = *p {
                f.attach_last(v as u32, p as u32);
            }
        }
        Ok(f)
    }

    /// Builds a forest from a parent array and explicit child orders.
    pub fn new(parents: &[Option<usize>], child_orders: &[Vec<usize>]) -> Result<Self> {
        check_parents(parents)?;
        let n = parents.len();
        if child_orders.len() != n {
            return Err(Error::BadParams("child_orders length differs from parents".into()));
        }
        let mut seen = vec![false; n];
        for (p, kids) in child_orders.iter().enumerate() {
            for &c in kids {
                if c >= n || parents[c] != Some(p) || seen[c] {
                    return Err(Error::InconsistentChildOrder(p));
                }
                seen[c] = true;
            }
        }
        if let Some(v) = (0..n).find(|&v| parents[v].is_some() && !seen[v]) {
            return Err(Error::InconsistentChildOrder(parents[v].unwrap()));
        }
        let mut f = Self::isolated(n);
        for (p, kids) in child_orders.iter().enumerate() {
            for &c in kids {
                f.attach_last(c as u32, p as u32);
            }
        }
        Ok(f)
    }

    /// Number of handles ever allocated, dead ones included.
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Number of alive nodes.
    pub fn live_count(&self) -> usize {
        self.live
    }

    pub fn is_alive(&self, v: NodeId) -> bool {
        self.alive.get(v.index()).copied().unwrap_or(false)
    }

    pub fn check_alive(&self, v: NodeId) -> Result<()> {
        if self.is_alive(v) {
            Ok(())
        } else {
            Err(Error::DeadNode(v))
        }
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        NodeId::from_raw(self.parent[v.index()])
    }

    pub fn first_child(&self, v: NodeId) -> Option<NodeId> {
        NodeId::from_raw(self.first[v.index()])
    }

    pub fn last_child(&self, v: NodeId) -> Option<NodeId> {
        NodeId::from_raw(self.last[v.index()])
    }

    pub fn next_sibling(&self, v: NodeId) -> Option<NodeId> {
        NodeId::from_raw(self.next[v.index()])
    }

    pub fn prev_sibling(&self, v: NodeId) -> Option<NodeId> {
        NodeId::from_raw(self.prev[v.index()])
    }

    pub fn child_count(&self, v: NodeId) -> usize {
        self.degree[v.index()] as usize
    }

    pub fn is_root(&self, v: NodeId) -> bool {
        self.parent[v.index()] == NIL
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.first[v.index()] == NIL
    }

    pub fn children(&self, v: NodeId) -> Children<'_> {
        Children {
            forest: self,
            cur: self.first[v.index()],
        }
    }

    /// Alive nodes in increasing id order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.len()).filter(|&i| self.alive[i]).map(NodeId::new)
    }

    pub fn roots(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes().filter(|&v| self.is_root(v))
    }

    /// Root by walking parent pointers.
    pub fn root_naive(&self, mut v: NodeId) -> NodeId {
        while let Some(p) = self.parent(v) {
            v = p;
        }
        v
    }

    /// Nodes of the subtree of `v` in preorder.
    pub fn subtree(&self, v: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            out.push(x);
            let mut c = self.last[x.index()];
            while c != NIL {
                stack.push(NodeId(c));
                c = self.prev[c as usize];
            }
        }
        out
    }

    /// Number of cuts performed so far.
    pub fn cut_count(&self) -> u64 {
        self.cuts
    }

    /// Number of splits applied to nodes that were neither roots nor leaves.
    pub fn inner_split_count(&self) -> u64 {
        self.inner_splits
    }

    /// Parent array over all handles (dead nodes map to `None`).
    pub fn parents(&self) -> Vec<Option<usize>> {
        (0..self.len())
            .map(|i| NodeId::from_raw(self.parent[i]).map(NodeId::index))
            .collect()
    }

    /// Deletes the edge between `v` and its parent.
    pub fn cut(&mut self, v: NodeId) -> Result<()> {
        self.check_alive(v)?;
        if self.is_root(v) {
            return Err(Error::IsRoot(v));
        }
        self.detach(v.raw());
        self.cuts += 1;
        Ok(())
    }

    /// Replaces `v` by `u1`, which takes its place below the parent, and
    /// `u2`, which takes its children.
    pub fn split(&mut self, v: NodeId) -> Result<(NodeId, NodeId)> {
        self.check_alive(v)?;
        let x = v.raw();
        if !self.is_root(v) && !self.is_leaf(v) {
            self.inner_splits += 1;
        }
        let u1 = self.push_node();
        let u2 = self.push_node();
        let p = self.parent[x as usize];
        if p != NIL {
            let (pv, nx) = (self.prev[x as usize], self.next[x as usize]);
            self.parent[u1 as usize] = p;
            self.prev[u1 as usize] = pv;
            self.next[u1 as usize] = nx;
            if pv == NIL {
                self.first[p as usize] = u1;
            } else {
                self.next[pv as usize] = u1;
            }
            if nx == NIL {
                self.last[p as usize] = u1;
            } else {
                self.prev[nx as usize] = u1;
            }
        }
        self.first[u2 as usize] = self.first[x as usize];
        self.last[u2 as usize] = self.last[x as usize];
        self.degree[u2 as usize] = self.degree[x as usize];
        let mut c = self.first[x as usize];
        while c != NIL {
            self.parent[c as usize] = u2;
            c = self.next[c as usize];
        }
        let xi = x as usize;
        self.parent[xi] = NIL;
        self.first[xi] = NIL;
        self.last[xi] = NIL;
        self.prev[xi] = NIL;
        self.next[xi] = NIL;
        self.degree[xi] = 0;
        self.alive[xi] = false;
        self.live -= 1;
        Ok((NodeId(u1), NodeId(u2)))
    }

    /// Appends a fresh isolated node.
    pub fn add_node(&mut self) -> NodeId {
        NodeId(self.push_node())
    }

    fn push_node(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(NIL);
        self.first.push(NIL);
        self.last.push(NIL);
        self.prev.push(NIL);
        self.next.push(NIL);
        self.degree.push(0);
        self.alive.push(true);
        self.live += 1;
        id
    }

    /// Makes root `child` the last child of `parent`.
    pub(crate) fn attach_last(&mut self, child: u32, parent: u32) {
        debug_assert_eq!(self.parent[child as usize], NIL);
        let l = self.last[parent as usize];
        self.parent[child as usize] = parent;
        self.prev[child as usize] = l;
        self.next[child as usize] = NIL;
        if l == NIL {
            self.first[parent as usize] = child;
        } else {
            self.next[l as usize] = child;
        }
        self.last[parent as usize] = child;
        self.degree[parent as usize] += 1;
    }

    fn detach(&mut self, x: u32) {
        let xi = x as usize;
        let p = self.parent[xi] as usize;
        let (pv, nx) = (self.prev[xi], self.next[xi]);
        if pv == NIL {
            self.first[p] = nx;
        } else {
            self.next[pv as usize] = nx;
        }
        if nx == NIL {
            self.last[p] = pv;
        } else {
            self.prev[nx as usize] = pv;
        }
        self.degree[p] -= 1;
        self.parent[xi] = NIL;
        self.prev[xi] = NIL;
        self.next[xi] = NIL;
    }

    /// Parses the `id parent_or_dash child_rank` fixture format.
    pub fn parse_fixture(text: &str) -> Result<Self> {
        let mut rows: Vec<(usize, Option<usize>, usize)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::Parse {
                line: lineno + 1,
                msg: msg.to_string(),
            };
            let mut it = line.split_whitespace();
            let id = it
                .next()
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| bad("bad node id"))?;
            let parent = match it.next() {
                Some("-") => None,
                Some(s) => Some(s.parse::<usize>().map_err(|_| bad("bad parent"))?),
                None => return Err(bad("missing parent")),
            };
            let rank = it
                .next()
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| bad("bad child rank"))?;
            rows.push((id, parent, rank));
        }
        let n = rows.len();
        let mut parents = vec![None; n];
        let mut seen = vec![false; n];
        for &(id, p, _) in &rows {
            if id >= n || seen[id] {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("node ids must be 0..{n} without repeats"),
                });
            }
            seen[id] = true;
            parents[id] = p;
        }
        let mut orders: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for &(id, p, rank) in &rows {
            if let Some(p) = p {
                if p >= n {
                    return Err(Error::DanglingParent { node: id, parent: p });
                }
                orders[p].push((rank, id));
            }
        }
        let child_orders: Vec<Vec<usize>> = orders
            .into_iter()
            .map(|mut v| {
                v.sort_unstable();
                v.into_iter().map(|(_, c)| c).collect()
            })
            .collect();
        Self::new(&parents, &child_orders)
    }

    /// Writes the alive nodes in fixture format. Requires dense alive ids.
    pub fn to_fixture(&self) -> String {
        let mut rank = vec![0usize; self.len()];
        for v in self.nodes() {
            for (i, c) in self.children(v).enumerate() {
                rank[c.index()] = i;
            }
        }
        let mut out = String::new();
        for v in self.nodes() {
            match self.parent(v) {
                Some(p) => writeln!(out, "{} {} {}", v, p, rank[v.index()]).unwrap(),
                None => writeln!(out, "{} - 0", v).unwrap(),
            }
        }
        out
    }
}

fn check_parents(parents: &[Option<usize>]) -> Result<()> {
    let n = parents.len();
    for (v, p) in parents.iter().enumerate() {
        if let Some(p) = *p {
            if p >= n {
                return Err(Error::DanglingParent { node: v, parent: p });
            }
        }
    }
    // 0 = unvisited, 1 = on current walk, 2 = known acyclic
    let mut state = vec![0u8; n];
    let mut walk = Vec::new();
    for s in 0..n {
        let mut v = s;
        while state[v] == 0 {
            state[v] = 1;
            walk.push(v);
            match parents[v] {
                Some(p) => v = p,
                None => break,
            }
        }
        if state[v] == 1 && parents[v].is_some() {
            return Err(Error::CycleDetected(v));
        }
        for w in walk.drain(..) {
            state[w] = 2;
        }
    }
    Ok(())
}

/// Iterator over the children of a node, in order.
pub struct Children<'a> {
    forest: &'a RootedForest,
    cur: u32,
}

impl Iterator for Children<'_> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        let c = NodeId::from_raw(self.cur)?;
        self.cur = self.forest.next[c.index()];
        Some(c)
    }
}

/// Simple undirected graph with dense vertex and edge ids.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<(u32, EdgeId)>>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        let mut list = Vec::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge {i} has an endpoint out of range")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("parallel edge {u}-{v}")));
            }
            let e = EdgeId(i as u32);
            adj[u].push((v as u32, e));
            adj[v].push((u as u32, e));
            list.push((u as u32, v as u32));
        }
        Ok(Graph { n, edges: list, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: EdgeId) -> (usize, usize) {
        let (u, v) = self.edges[e.index()];
        (u as usize, v as usize)
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, usize, usize)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| (EdgeId(i as u32), u as usize, v as usize))
    }

    /// Neighbors of `v` with the connecting edge, in insertion order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, EdgeId)> + '_ {
        self.adj[v].iter().map(|&(w, e)| (w as usize, e))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for (w, _) in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.m() + 1 == self.n && self.is_connected()
    }

    /// Roots a tree at `root`; children follow adjacency order.
    pub fn rooted_at(&self, root: usize) -> Result<RootedForest> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        if !self.is_tree() {
            return Err(Error::NotATree);
        }
        let mut f = RootedForest::isolated(self.n);
        let mut seen = vec![false; self.n];
        let mut queue = std::collections::VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            for (w, _) in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    f.attach_last(w as u32, v as u32);
                    queue.push_back(w);
                }
            }
        }
        Ok(f)
    }

    /// Edge subdivision: vertex `n + e` sits in the middle of edge `e`.
    pub fn subdivide(&self) -> Graph {
        let n = self.n;
        let mut edges = Vec::with_capacity(2 * self.m());
        for (e, u, v) in self.edges() {
            edges.push((u, n + e.index()));
            edges.push((n + e.index(), v));
        }
        Graph::new(n + self.m(), &edges).expect("subdivision of a simple graph is simple")
    }

    /// Parses the `n m` header plus `u v` lines format.
    pub fn parse_fixture(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let nums = parse_pair(header).ok_or(Error::Parse {
            line: hl,
            msg: "header must be `n m`".into(),
        })?;
        let (n, m) = nums;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let e = parse_pair(l).ok_or(Error::Parse {
                line,
                msg: "edge line must be `u v`".into(),
            })?;
            edges.push(e);
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: hl,
                msg: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, &edges)
    }

    pub fn to_fixture(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}

fn parse_pair(s: &str) -> Option<(usize, usize)> {
    let mut it = s.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(i: usize) -> NodeId {
        NodeId::new(i)
    }

    #[test]
    fn build_rejects_bad_input() {
        assert!(matches!(
            RootedForest::from_parents(&[Some(1), Some(0)]),
            Err(Error::CycleDetected(_))
        ));
        assert!(matches!(
            RootedForest::from_parents(&[None, Some(7)]),
            Err(Error::DanglingParent { .. })
        ));
        assert!(matches!(
            RootedForest::new(&[None, Some(0)], &[vec![], vec![]]),
            Err(Error::InconsistentChildOrder(_))
        ));
    }

    #[test]
    fn cut_and_split_on_a_chain() {
        let mut f = RootedForest::from_parents(&[None, Some(0), Some(1)]).unwrap();
        assert_eq!(f.cut(n(0)), Err(Error::IsRoot(n(0))));
        let (u1, u2) = f.split(n(1)).unwrap();
        assert!(!f.is_alive(n(1)));
        assert_eq!(f.parent(u1), Some(n(0)));
        assert!(f.is_leaf(u1));
        assert_eq!(f.parent(n(2)), Some(u2));
        assert!(f.is_root(u2));
        assert_eq!(f.inner_split_count(), 1);
        assert_eq!(f.split(n(1)), Err(Error::DeadNode(n(1))));
    }

    #[test]
    fn split_keeps_sibling_position() {
        let mut f = RootedForest::from_parents(&[None, Some(0), Some(0), Some(0)]).unwrap();
        let (u1, u2) = f.split(n(2)).unwrap();
        let kids: Vec<_> = f.children(n(0)).collect();
        assert_eq!(kids, vec![n(1), u1, n(3)]);
        assert!(f.is_root(u2) && f.is_leaf(u2));
        assert_eq!(f.inner_split_count(), 0);
    }

    #[test]
    fn fixture_round_trip() {
        let f = RootedForest::new(
            &[None, Some(0), Some(0), Some(1)],
            &[vec![2, 1], vec![3], vec![], vec![]],
        )
        .unwrap();
        let g = RootedForest::parse_fixture(&f.to_fixture()).unwrap();
        assert_eq!(g.children(n(0)).collect::<Vec<_>>(), vec![n(2), n(1)]);
        assert_eq!(g.parents(), f.parents());
    }

    #[test]
    fn graph_validation() {
        assert!(Graph::new(2, &[(0, 0)]).is_err());
        assert!(Graph::new(2, &[(0, 1), (1, 0)]).is_err());
        let g = Graph::parse_fixture("3 2\n0 1\n1 2\n").unwrap();
        assert!(g.is_tree());
        let t = g.rooted_at(1).unwrap();
        assert_eq!(t.children(n(1)).count(), 2);
        let s = g.subdivide();
        assert_eq!((s.n(), s.m()), (5, 4));
    }
}
