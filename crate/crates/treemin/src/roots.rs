//! Decremental tree roots: map every node to the root of its tree while the
//! forest undergoes cuts and splits.
//!
//! [`TreeRoots`] is the default backend. It labels components and, on every
//! separation, relabels the smaller side, found by exploring both sides in
//! lockstep. [`DoubledRoots`] reduces `split` to `cut` by doubling every
//! original node into a parent/child pair over a cut-only core.

use crate::error::Result;
use crate::forest::{NodeId, RootedForest, NIL};

/// Root queries under cut and split.
pub trait DecrementalRoots {
    fn root(&self, v: NodeId) -> Result<NodeId>;
    fn cut(&mut self, v: NodeId) -> Result<()>;
    fn split(&mut self, v: NodeId) -> Result<(NodeId, NodeId)>;
    /// The forest as currently maintained.
    fn forest(&self) -> &RootedForest;
}

/// A roots structure that only needs to support cuts and fresh isolated
/// nodes.
pub trait CutRootsCore {
    fn build(forest: RootedForest) -> Self;
    fn core_root(&self, v: NodeId) -> Result<NodeId>;
    fn core_cut(&mut self, v: NodeId) -> Result<()>;
    fn add_isolated(&mut self) -> NodeId;
}

/// Component labels with smaller-half relabeling.
#[derive(Clone, Debug)]
pub struct TreeRoots {
    forest: RootedForest,
    label: Vec<u32>,
    comp_root: Vec<u32>,
    relabeled: u64,
}

struct Walk {
    stack: Vec<(u32, u32)>,
    seen: Vec<u32>,
}

impl Walk {
    fn new(start: u32, f: &RootedForest) -> Walk {
        let first = f.first_child(NodeId::from_raw(start).unwrap()).map_or(NIL, NodeId::raw);
        Walk {
            stack: vec![(start, first)],
            seen: vec![start],
        }
    }

    /// One constant-time step; returns `false` once exhausted.
    fn step(&mut self, f: &RootedForest) -> bool {
        let Some(top) = self.stack.last_mut() else {
            return false;
        };
        if top.1 == NIL {
            self.stack.pop();
        } else {
            let c = NodeId::from_raw(top.1).unwrap();
            top.1 = f.next_sibling(c).map_or(NIL, NodeId::raw);
            self.seen.push(c.raw());
            self.stack.push((c.raw(), f.first_child(c).map_or(NIL, NodeId::raw)));
        }
        !self.stack.is_empty()
    }
}

impl TreeRoots {
    pub fn new(forest: RootedForest) -> Self {
        let n = forest.len();
        let mut label = vec![NIL; n];
        let mut comp_root = Vec::new();
        for r in forest.roots() {
            let c = comp_root.len() as u32;
            comp_root.push(r.raw());
            for v in forest.subtree(r) {
                label[v.index()] = c;
            }
        }
        TreeRoots {
            forest,
            label,
            comp_root,
            relabeled: 0,
        }
    }

    /// Total number of relabeled nodes (diagnostic).
    pub fn relabel_work(&self) -> u64 {
        self.relabeled
    }

    fn fresh_component(&mut self, root: u32) -> u32 {
        let c = self.comp_root.len() as u32;
        self.comp_root.push(root);
        c
    }

    fn sync_len(&mut self) {
        self.label.resize(self.forest.len(), NIL);
    }

    /// `a` and `b` are roots of two trees that currently share a label.
    fn separate(&mut self, a: u32, b: u32) {
        let mut wa = Walk::new(a, &self.forest);
        let mut wb = Walk::new(b, &self.forest);
        let a_smaller = loop {
            if !wa.step(&self.forest) {
                break true;
            }
            if !wb.step(&self.forest) {
                break false;
            }
        };
        let old = self.label[a as usize];
        let (small, small_root, big_root) = if a_smaller { (wa.seen, a, b) } else { (wb.seen, b, a) };
        let c = self.fresh_component(small_root);
        self.comp_root[old as usize] = big_root;
        self.relabeled += small.len() as u64;
        for v in small {
            self.label[v as usize] = c;
        }
    }
}

impl DecrementalRoots for TreeRoots {
    fn root(&self, v: NodeId) -> Result<NodeId> {
        self.forest.check_alive(v)?;
        Ok(NodeId::from_raw(self.comp_root[self.label[v.index()] as usize]).unwrap())
    }

    fn cut(&mut self, v: NodeId) -> Result<()> {
        let r = self.root(v)?;
        self.forest.cut(v)?;
        self.separate(v.raw(), r.raw());
        Ok(())
    }

    fn split(&mut self, v: NodeId) -> Result<(NodeId, NodeId)> {
        let r = self.root(v)?;
        let c = self.label[v.index()];
        let was_root = self.forest.is_root(v);
        let was_leaf = self.forest.is_leaf(v);
        let (u1, u2) = self.forest.split(v)?;
        self.sync_len();
        let (i1, i2) = (u1.index(), u2.index());
        match (was_root, was_leaf) {
            (true, true) | (false, true) => {
                self.label[i1] = c;
                if was_root {
                    self.comp_root[c as usize] = u1.raw();
                }
                self.label[i2] = self.fresh_component(u2.raw());
            }
            (true, false) => {
                self.label[i2] = c;
                self.comp_root[c as usize] = u2.raw();
                self.label[i1] = self.fresh_component(u1.raw());
            }
            (false, false) => {
                self.label[i1] = c;
                self.label[i2] = c;
                self.separate(u2.raw(), r.raw());
            }
        }
        Ok((u1, u2))
    }

    fn forest(&self) -> &RootedForest {
        &self.forest
    }
}

impl CutRootsCore for TreeRoots {
    fn build(forest: RootedForest) -> Self {
        TreeRoots::new(forest)
    }

    fn core_root(&self, v: NodeId) -> Result<NodeId> {
        DecrementalRoots::root(self, v)
    }

    fn core_cut(&mut self, v: NodeId) -> Result<()> {
        DecrementalRoots::cut(self, v)
    }

    fn add_isolated(&mut self) -> NodeId {
        let v = self.forest.add_node();
        self.sync_len();
        self.label[v.index()] = self.fresh_component(v.raw());
        v
    }
}

/// Split support on top of a cut-only core.
///
/// Original node `v` becomes `p_v` (index `2v`) with child `c_v` (index
/// `2v + 1`) in the core. Cutting `v` cuts `p_v`; splitting `v` cuts `c_v`.
/// Nodes created by splits are always roots or leaves, so splitting them
/// again only needs a fresh isolated core node.
#[derive(Clone, Debug)]
pub struct DoubledRoots<C: CutRootsCore = TreeRoots> {
    forest: RootedForest,
    core: C,
    core_of: Vec<u32>,
    owner: Vec<u32>,
    originals: usize,
}

impl<C: CutRootsCore> DoubledRoots<C> {
    pub fn new(forest: RootedForest) -> Self {
        let n = forest.len();
        let mut doubled = RootedForest::isolated(2 * n);
        for v in 0..n as u32 {
            doubled.attach_last(2 * v + 1, 2 * v);
        }
        for v in forest.nodes() {
            if let Some(p) = forest.parent(v) {
                doubled.attach_last(2 * v.raw(), 2 * p.raw() + 1);
            }
        }
        let owner = (0..2 * n as u32).map(|x| x / 2).collect();
        DoubledRoots {
            core_of: (0..n as u32).map(|v| 2 * v).collect(),
            owner,
            core: C::build(doubled),
            forest,
            originals: n,
        }
    }

    fn set_owner(&mut self, x: u32, v: NodeId) {
        if self.core_of.len() <= v.index() {
            self.core_of.resize(v.index() + 1, NIL);
        }
        self.core_of[v.index()] = x;
        if self.owner.len() <= x as usize {
            self.owner.resize(x as usize + 1, NIL);
        }
        self.owner[x as usize] = v.raw();
    }
}

impl<C: CutRootsCore> DecrementalRoots for DoubledRoots<C> {
    fn root(&self, v: NodeId) -> Result<NodeId> {
        self.forest.check_alive(v)?;
        let r = self.core.core_root(NodeId::from_raw(self.core_of[v.index()]).unwrap())?;
        Ok(NodeId::from_raw(self.owner[r.index()]).unwrap())
    }

    fn cut(&mut self, v: NodeId) -> Result<()> {
        self.forest.cut(v)?;
        self.core.core_cut(NodeId::from_raw(self.core_of[v.index()]).unwrap())
    }

    fn split(&mut self, v: NodeId) -> Result<(NodeId, NodeId)> {
        self.forest.check_alive(v)?;
        let was_root = self.forest.is_root(v);
        let was_leaf = self.forest.is_leaf(v);
        let x = self.core_of[v.index()];
        let (u1, u2) = self.forest.split(v)?;
        if v.index() < self.originals {
            self.core.core_cut(NodeId::from_raw(x + 1).unwrap())?;
            self.set_owner(x, u1);
            self.set_owner(x + 1, u2);
        } else {
            debug_assert!(was_root || was_leaf);
            let fresh = self.core.add_isolated().raw();
            if was_root && !was_leaf {
                self.set_owner(x, u2);
                self.set_owner(fresh, u1);
            } else {
                self.set_owner(x, u1);
                self.set_owner(fresh, u2);
            }
        }
        Ok((u1, u2))
    }

    fn forest(&self) -> &RootedForest {
        &self.forest
    }
}
