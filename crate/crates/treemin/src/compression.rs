//! Maximal-chain compression of a forest, kept canonical under cuts.
//!
//! A chain is a maximal descending path whose nodes, except possibly the
//! last, have exactly one child. Contracting every chain gives the
//! super-forest `F′`. The chains themselves form the chain forest `F_C`
//! (the forest minus every edge between chains). A cut between chains is a
//! cut in `F′`; a cut inside a chain splits its super-node.

use crate::error::{Error, Result};
use crate::forest::{NodeId, RootedForest, NIL};
use crate::roots::{DecrementalRoots, TreeRoots};

/// The super-forest event caused by a cut.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CanonicalOp {
    /// The super-node was cut from its parent.
    Cut(NodeId),
    /// `old` was replaced by `parts.0` (parent side) and `parts.1` (child side).
    Split { old: NodeId, parts: (NodeId, NodeId) },
}

pub struct Compression {
    nodes: TreeRoots,
    chains: TreeRoots,
    supers: RootedForest,
    /// chain top -> super-node
    super_of_top: Vec<u32>,
    /// super-node -> chain top
    top: Vec<u32>,
}

impl Compression {
    pub fn new(forest: RootedForest) -> Self {
        let n = forest.len();
        let mut chain_forest = RootedForest::isolated(n);
        let mut super_of_top = vec![NIL; n];
        let mut top = Vec::new();
        let mut super_parent: Vec<u32> = Vec::new();
        let mut stack: Vec<(NodeId, u32)> = forest.roots().map(|r| (r, NIL)).collect();
        stack.reverse();
        while let Some((t, sp)) = stack.pop() {
            let x = top.len() as u32;
            top.push(t.raw());
            super_of_top[t.index()] = x;
            super_parent.push(sp);
            let mut bottom = t;
            while forest.child_count(bottom) == 1 {
                let c = forest.first_child(bottom).unwrap();
                chain_forest.attach_last(c.raw(), bottom.raw());
                bottom = c;
            }
            let mut c = forest.last_child(bottom);
            while let Some(y) = c {
                stack.push((y, x));
                c = forest.prev_sibling(y);
            }
        }
        let mut supers = RootedForest::isolated(top.len());
        for (x, &p) in super_parent.iter().enumerate() {
            if p != NIL {
                supers.attach_last(x as u32, p);
            }
        }
        Compression {
            nodes: TreeRoots::new(forest),
            chains: TreeRoots::new(chain_forest),
            supers,
            super_of_top,
            top,
        }
    }

    /// The original forest `F`.
    pub fn forest(&self) -> &RootedForest {
        self.nodes.forest()
    }

    /// The chain forest `F_C`.
    pub fn chain_forest(&self) -> &RootedForest {
        self.chains.forest()
    }

    /// The super-forest `F′`.
    pub fn super_forest(&self) -> &RootedForest {
        &self.supers
    }

    pub fn super_of(&self, v: NodeId) -> Result<NodeId> {
        let t = self.chains.root(v)?;
        Ok(NodeId::from_raw(self.super_of_top[t.index()]).unwrap())
    }

    pub fn root_of(&self, v: NodeId) -> Result<NodeId> {
        self.nodes.root(v)
    }

    /// Top node of the chain of super-node `x`.
    pub fn top_of(&self, x: NodeId) -> Result<NodeId> {
        self.supers.check_alive(x)?;
        Ok(NodeId::from_raw(self.top[x.index()]).unwrap())
    }

    /// Nodes of the chain of `x`, top first.
    pub fn chain(&self, x: NodeId) -> Result<Vec<NodeId>> {
        let mut v = self.top_of(x)?;
        let mut out = vec![v];
        while let Some(c) = self.chains.forest().first_child(v) {
            out.push(c);
            v = c;
        }
        Ok(out)
    }

    pub fn cut(&mut self, v: NodeId) -> Result<CanonicalOp> {
        self.forest().check_alive(v)?;
        let u = self.forest().parent(v).ok_or(Error::IsRoot(v))?;
        let tu = self.chains.root(u)?;
        let tv = self.chains.root(v)?;
        self.nodes.cut(v)?;
        if tu != tv {
            let y = NodeId::from_raw(self.super_of_top[v.index()]).unwrap();
            self.supers.cut(y)?;
            return Ok(CanonicalOp::Cut(y));
        }
        let y = NodeId::from_raw(self.super_of_top[tu.index()]).unwrap();
        self.chains.cut(v)?;
        let (y1, y2) = self.supers.split(y)?;
        self.top.resize(self.supers.len(), NIL);
        self.top[y1.index()] = tu.raw();
        self.top[y2.index()] = v.raw();
        self.super_of_top[tu.index()] = y1.raw();
        self.super_of_top[v.index()] = y2.raw();
        Ok(CanonicalOp::Split { old: y, parts: (y1, y2) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(i: usize) -> NodeId {
        NodeId::new(i)
    }

    #[test]
    fn path_is_one_chain() {
        let f = RootedForest::from_parents(&[None, Some(0), Some(1), Some(2)]).unwrap();
        let c = Compression::new(f);
        assert_eq!(c.super_forest().len(), 1);
        assert_eq!(c.chain(n(0)).unwrap(), vec![n(0), n(1), n(2), n(3)]);
    }

    #[test]
    fn star_has_k_plus_one() {
        let f = RootedForest::from_parents(&[None, Some(0), Some(0), Some(0), Some(0)]).unwrap();
        let c = Compression::new(f);
        assert_eq!(c.super_forest().len(), 5);
        assert_eq!(c.super_forest().child_count(c.super_of(n(0)).unwrap()), 4);
    }

    #[test]
    fn cuts_between_and_inside_chains() {
        // 0 -> 1 -> {2, 3}, 3 -> 4 -> 5
        let f = RootedForest::from_parents(&[None, Some(0), Some(1), Some(1), Some(3), Some(4)]).unwrap();
        let mut c = Compression::new(f);
        assert_eq!(c.chain(c.super_of(n(0)).unwrap()).unwrap(), vec![n(0), n(1)]);
        assert_eq!(c.chain(c.super_of(n(5)).unwrap()).unwrap(), vec![n(3), n(4), n(5)]);
        let y = c.super_of(n(3)).unwrap();
        assert_eq!(c.cut(n(3)).unwrap(), CanonicalOp::Cut(y));
        let y = c.super_of(n(4)).unwrap();
        let op = c.cut(n(4)).unwrap();
        let CanonicalOp::Split { old, parts: (y1, y2) } = op else { panic!("{op:?}") };
        assert_eq!(old, y);
        assert_eq!(c.top_of(y1).unwrap(), n(3));
        assert_eq!(c.top_of(y2).unwrap(), n(4));
        assert_eq!(c.super_of(n(5)).unwrap(), y2);
        assert_eq!(c.root_of(n(5)).unwrap(), n(4));
        assert_eq!(c.cut(n(0)), Err(Error::IsRoot(n(0))));
    }
}
