//! Decremental tree minima.
//!
//! [`UoDtm`] composes the chain compression, a path engine over the chains,
//! a dynamic forest over inner super-nodes, extremal leaves, and one
//! splittable leaf sequence per super-tree. [`NaiveDtm`] is the plain dynamic
//! forest baseline and [`Edtm`] the edge-weighted variant on the subdivided
//! tree.

use crate::compression::{CanonicalOp, Compression};
use crate::dynamic_forest::DynamicForest;
use crate::error::{Error, Result};
use crate::extremal::ExtremalLeaves;
use crate::forest::{EdgeId, NodeId, RootedForest};
use crate::oracle::{OracleMin, Prio, PriorityOracle, Semigroup};
use crate::path::{ChainEngine, PathDtm, PathSemigroupSums};
use crate::ssm::{Sequence, SsmArena};

/// Common driver interface for tree-minima structures.
pub trait TreeMinima {
    /// Node of minimum priority in the tree of `v`, `None` if every
    /// priority there is a sentinel.
    fn tree_min(&mut self, v: NodeId) -> Result<Option<NodeId>>;
    fn cut(&mut self, v: NodeId) -> Result<()>;
    fn forest(&self) -> &RootedForest;
}

fn as_node(p: Option<Prio>) -> Option<NodeId> {
    p.and_then(Prio::finite).map(|i| NodeId::new(i as usize))
}

/// How the canonical super-forest operations of a run were distributed.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct DtmStats {
    pub cuts: u64,
    /// Canonical cuts in the super-forest.
    pub super_cuts: u64,
    /// Splits of isolated super-nodes.
    pub isolated_splits: u64,
    pub root_splits: u64,
    pub leaf_splits: u64,
    pub inner_splits: u64,
}

/// The composed structure, generic over the aggregate.
pub struct UoDtm<S: Semigroup + 'static> {
    sg: S,
    comp: Compression,
    chains: Box<dyn ChainEngine<S::Elem>>,
    inner: DynamicForest<S>,
    ext: ExtremalLeaves,
    arena: SsmArena<S>,
    seq_of: Vec<Option<Sequence>>,
    stats: DtmStats,
}

impl UoDtm<OracleMin> {
    /// Minimum mode with `p(v) = Prio::of(v)`.
    pub fn new_min(forest: RootedForest, oracle: &PriorityOracle) -> Result<Self> {
        let values = (0..forest.len()).map(|i| Some(Prio::of(NodeId::new(i)))).collect();
        Self::with_values_min(forest, values, oracle)
    }

    /// Minimum mode with explicit priorities; `None` is infinity.
    pub fn with_values_min(
        forest: RootedForest,
        values: Vec<Option<Prio>>,
        oracle: &PriorityOracle,
    ) -> Result<Self> {
        let comp = Compression::new(forest);
        let engine = PathDtm::with_values(comp.chain_forest().clone(), values, oracle)?;
        Ok(Self::assemble(comp, Box::new(engine), OracleMin(oracle.clone())))
    }

    pub fn tree_min(&self, v: NodeId) -> Result<Option<NodeId>> {
        Ok(as_node(self.tree_aggregate(v)?))
    }
}

impl<S: Semigroup + Clone + 'static> UoDtm<S> {
    /// Semigroup mode: `tree_aggregate` returns component sums.
    pub fn with_semigroup(forest: RootedForest, values: Vec<Option<S::Elem>>, sg: S) -> Result<Self> {
        let comp = Compression::new(forest);
        let engine = PathSemigroupSums::new(comp.chain_forest().clone(), values, sg.clone())?;
        Ok(Self::assemble(comp, Box::new(engine), sg))
    }
}

impl<S: Semigroup + Clone + 'static> UoDtm<S> {
    fn assemble(comp: Compression, chains: Box<dyn ChainEngine<S::Elem>>, sg: S) -> Self {
        let sf = comp.super_forest().clone();
        let k = sf.len();
        let chain_value = |x: NodeId| {
            chains
                .aggregate(comp.top_of(x).expect("live super-node"))
                .expect("live chain")
        };
        let mut leaf_value = vec![None; k];
        let mut inner_value = vec![None; k];
        for x in sf.nodes() {
            if sf.is_leaf(x) {
                leaf_value[x.index()] = chain_value(x);
            } else if !sf.is_root(x) {
                inner_value[x.index()] = chain_value(x);
            }
        }
        let inner = DynamicForest::new(sf.clone(), inner_value, sg.clone());
        let mut arena = SsmArena::new(sg.clone());
        let mut seq_of: Vec<Option<Sequence>> = (0..k).map(|_| None).collect();
        for r in sf.roots() {
            if sf.is_leaf(r) {
                continue;
            }
            let items = sf
                .subtree(r)
                .into_iter()
                .filter(|&x| sf.is_leaf(x))
                .map(|x| (x, leaf_value[x.index()].take()))
                .collect();
            seq_of[r.index()] = Some(arena.sequence(items).expect("distinct leaves"));
        }
        UoDtm {
            sg,
            comp,
            chains,
            inner,
            ext: ExtremalLeaves::new(sf),
            arena,
            seq_of,
            stats: DtmStats::default(),
        }
    }

    pub fn forest(&self) -> &RootedForest {
        self.comp.forest()
    }

    pub fn compression(&self) -> &Compression {
        &self.comp
    }

    pub fn stats(&self) -> DtmStats {
        self.stats
    }

    /// Aggregate over the tree of `v`: root chain, leaf sequence, and the
    /// inner super-nodes, merged with at most two combines.
    pub fn tree_aggregate(&self, v: NodeId) -> Result<Option<S::Elem>> {
        let r = self.comp.root_of(v)?;
        let x = self.comp.super_of(r)?;
        let a = self.chains.aggregate(r)?;
        let b = match self.seq_of.get(x.index()).and_then(Option::as_ref) {
            Some(s) => self.arena.aggregate(s)?,
            None => None,
        };
        let c = self.inner.tree_aggregate(x)?;
        let bc = self.sg.combine_opt(b.as_ref(), c.as_ref());
        Ok(self.sg.combine_opt(a.as_ref(), bc.as_ref()))
    }

    fn chain_value(&self, x: NodeId) -> Result<Option<S::Elem>> {
        self.chains.aggregate(self.comp.top_of(x)?)
    }

    fn set_seq(&mut self, x: NodeId, s: Sequence) {
        if self.seq_of.len() <= x.index() {
            self.seq_of.resize_with(x.index() + 1, || None);
        }
        self.seq_of[x.index()] = Some(s);
    }

    fn take_seq(&mut self, x: NodeId) -> Sequence {
        self.seq_of.get_mut(x.index()).and_then(Option::take).expect("super-tree with two nodes has a leaf sequence")
    }

    pub fn cut(&mut self, v: NodeId) -> Result<()> {
        let f = self.comp.forest();
        f.check_alive(v)?;
        if f.is_root(v) {
            return Err(Error::IsRoot(v));
        }
        let y = self.comp.super_of(v)?;
        let x = self.comp.super_of(self.comp.root_of(v)?)?;
        let sf = self.comp.super_forest();
        let (y_root, y_leaf) = (sf.is_root(y), sf.is_leaf(y));
        let parent = sf.parent(y);
        self.stats.cuts += 1;
        match self.comp.cut(v)? {
            CanonicalOp::Cut(_) => {
                self.stats.super_cuts += 1;
                let pu = parent.expect("cut super-node has a parent");
                let (z1, z2) = self.ext.extremal(y)?;
                self.inner.cut(y)?;
                self.ext.cut(y)?;
                if !y_leaf {
                    self.inner.set_value(y, None)?;
                }
                let sf = self.comp.super_forest();
                let pu_leaf = sf.is_leaf(pu) && !sf.is_root(pu);
                let z = if pu_leaf {
                    self.inner.set_value(pu, None)?;
                    Some((pu, self.chain_value(pu)?))
                } else {
                    None
                };
                let mut lx = self.take_seq(x);
                let l2 = self.arena.split_interval(&mut lx, z1, z2, z)?;
                if y_leaf {
                    self.arena.discard(l2);
                } else {
                    self.set_seq(y, l2);
                }
                if self.comp.super_forest().is_leaf(x) {
                    self.arena.discard(lx);
                } else {
                    self.set_seq(x, lx);
                }
            }
            CanonicalOp::Split { old, parts: (y1, y2) } => {
                debug_assert_eq!(old, y);
                self.chains.cut(v)?;
                match (y_root, y_leaf) {
                    (true, true) => {
                        self.stats.isolated_splits += 1;
                        self.split_aux(y, false)?;
                    }
                    (true, false) => {
                        self.stats.root_splits += 1;
                        self.split_aux(y, false)?;
                        let s = self.take_seq(y);
                        self.set_seq(y2, s);
                    }
                    (false, true) => {
                        self.stats.leaf_splits += 1;
                        self.split_aux(y, false)?;
                        let value = self.chain_value(y1)?;
                        let mut lx = self.take_seq(x);
                        self.arena.replace(&mut lx, y, y1, value)?;
                        self.set_seq(x, lx);
                    }
                    (false, false) => {
                        self.stats.inner_splits += 1;
                        let (z1, z2) = self.ext.extremal(y)?;
                        self.split_aux(y, true)?;
                        let value = self.chain_value(y1)?;
                        let mut lx = self.take_seq(x);
                        let l2 = self.arena.split_interval(&mut lx, z1, z2, Some((y1, value)))?;
                        self.set_seq(x, lx);
                        self.set_seq(y2, l2);
                    }
                }
            }
        }
        Ok(())
    }

    fn split_aux(&mut self, y: NodeId, clearing: bool) -> Result<()> {
        let d = if clearing {
            self.inner.split_clearing(y)?
        } else {
            self.inner.split(y)?
        };
        let e = self.ext.split(y)?;
        debug_assert_eq!(d, e);
        Ok(())
    }

    /// Checks the leaf sequences against the super-forest (test helper).
    pub fn leaf_sequences_consistent(&self) -> bool {
        let sf = self.comp.super_forest();
        for r in sf.roots() {
            let want: Vec<NodeId> = sf.subtree(r).into_iter().filter(|&x| sf.is_leaf(x)).collect();
            match &self.seq_of.get(r.index()).and_then(Option::as_ref) {
                Some(s) => {
                    if sf.is_leaf(r) || self.arena.to_vec(s) != want || !self.arena.check_structure(s) {
                        return false;
                    }
                }
                None => {
                    if !sf.is_leaf(r) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl TreeMinima for UoDtm<OracleMin> {
    fn tree_min(&mut self, v: NodeId) -> Result<Option<NodeId>> {
        UoDtm::tree_min(self, v)
    }

    fn cut(&mut self, v: NodeId) -> Result<()> {
        UoDtm::cut(self, v)
    }

    fn forest(&self) -> &RootedForest {
        UoDtm::forest(self)
    }
}

/// Baseline: one dynamic forest over all nodes.
pub struct NaiveDtm<S: Semigroup> {
    d: DynamicForest<S>,
}

impl NaiveDtm<OracleMin> {
    pub fn new_min(forest: RootedForest, oracle: &PriorityOracle) -> Self {
        NaiveDtm {
            d: DynamicForest::with_oracle(forest, oracle),
        }
    }
}

impl<S: Semigroup> NaiveDtm<S> {
    pub fn with_semigroup(forest: RootedForest, values: Vec<Option<S::Elem>>, sg: S) -> Self {
        NaiveDtm {
            d: DynamicForest::new(forest, values, sg),
        }
    }

    pub fn tree_aggregate(&self, v: NodeId) -> Result<Option<S::Elem>> {
        self.d.tree_aggregate(v)
    }

    pub fn cut(&mut self, v: NodeId) -> Result<()> {
        self.d.cut(v)
    }

    pub fn forest(&self) -> &RootedForest {
        self.d.forest()
    }
}

impl TreeMinima for NaiveDtm<OracleMin> {
    fn tree_min(&mut self, v: NodeId) -> Result<Option<NodeId>> {
        Ok(as_node(self.d.tree_aggregate(v)?))
    }

    fn cut(&mut self, v: NodeId) -> Result<()> {
        self.d.cut(v)
    }

    fn forest(&self) -> &RootedForest {
        self.d.forest()
    }
}

impl TreeMinima for PathDtm {
    fn tree_min(&mut self, v: NodeId) -> Result<Option<NodeId>> {
        PathDtm::tree_min(self, v).map(Some)
    }

    fn cut(&mut self, v: NodeId) -> Result<()> {
        PathDtm::cut(self, v)
    }

    fn forest(&self) -> &RootedForest {
        PathDtm::forest(self)
    }
}

/// Edge-weighted tree minima. The edge above `u` is `EdgeId(u)` and has
/// oracle priority `u`; roots have no edge.
///
/// Runs on the subdivided forest: node `n + u` sits on the edge above `u`.
pub struct Edtm {
    inner: UoDtm<OracleMin>,
    n: usize,
}

impl Edtm {
    pub fn new(forest: &RootedForest, oracle: &PriorityOracle) -> Result<Self> {
        let n = forest.len();
        let mut parents = vec![None; 2 * n];
        let mut values = vec![None; 2 * n];
        for v in forest.nodes() {
            if let Some(p) = forest.parent(v) {
                parents[n + v.index()] = Some(p.index());
                parents[v.index()] = Some(n + v.index());
                values[n + v.index()] = Some(Prio::of(v));
            }
        }
        let mut orders = vec![Vec::new(); 2 * n];
        for v in forest.nodes() {
            orders[v.index()] = forest.children(v).map(|c| n + c.index()).collect();
            if forest.parent(v).is_some() {
                orders[n + v.index()] = vec![v.index()];
            }
        }
        let sub = RootedForest::new(&parents, &orders)?;
        Ok(Edtm {
            inner: UoDtm::with_values_min(sub, values, oracle)?,
            n,
        })
    }

    /// Minimum edge in the tree of `v`, `None` if it has no edges.
    pub fn tree_min(&self, v: NodeId) -> Result<Option<EdgeId>> {
        self.check(v)?;
        Ok(self.inner.tree_min(v)?.map(|u| EdgeId(u.raw())))
    }

    /// Removes the edge above `u`.
    pub fn cut(&mut self, u: NodeId) -> Result<()> {
        self.check(u)?;
        let mid = NodeId::new(self.n + u.index());
        if self.inner.forest().parent(u) != Some(mid) {
            return Err(Error::IsRoot(u));
        }
        self.inner.cut(u)?;
        self.inner.cut(mid)
    }

    /// The subdivided structure.
    pub fn inner(&self) -> &UoDtm<OracleMin> {
        &self.inner
    }

    fn check(&self, v: NodeId) -> Result<()> {
        if v.index() >= self.n {
            return Err(Error::DeadNode(v));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Sum;

    fn n(i: usize) -> NodeId {
        NodeId::new(i)
    }

    #[test]
    fn path_min_after_cuts() {
        let f = RootedForest::from_parents(&[None, Some(0), Some(1), Some(2)]).unwrap();
        let o = PriorityOracle::from_ranks(vec![4, 1, 3, 2]).unwrap();
        let mut d = UoDtm::new_min(f, &o).unwrap();
        assert_eq!(d.tree_min(n(3)).unwrap(), Some(n(1)));
        d.cut(n(2)).unwrap();
        assert_eq!(d.tree_min(n(3)).unwrap(), Some(n(3)));
        assert_eq!(d.tree_min(n(0)).unwrap(), Some(n(1)));
        assert!(d.leaf_sequences_consistent());
    }

    #[test]
    fn star_leaf_minimum() {
        let f = RootedForest::from_parents(&[None, Some(0), Some(0), Some(0), Some(0)]).unwrap();
        let o = PriorityOracle::from_ranks(vec![4, 3, 0, 2, 1]).unwrap();
        let mut d = UoDtm::new_min(f, &o).unwrap();
        assert_eq!(d.compression().super_forest().len(), 5);
        assert_eq!(d.tree_min(n(0)).unwrap(), Some(n(2)));
        d.cut(n(2)).unwrap();
        assert_eq!(d.tree_min(n(0)).unwrap(), Some(n(4)));
        assert_eq!(d.tree_min(n(2)).unwrap(), Some(n(2)));
        assert!(d.leaf_sequences_consistent());
    }

    #[test]
    fn every_cut_case() {
        // 0 -> 1 -> {2 -> 3 -> {4, 5}, 6 -> 7}
        let parents = [None, Some(0), Some(1), Some(2), Some(3), Some(3), Some(1), Some(6)];
        let f = RootedForest::from_parents(&parents).unwrap();
        let o = PriorityOracle::from_ranks(vec![7, 6, 5, 4, 3, 2, 1, 0]).unwrap();
        let mut d = UoDtm::new_min(f, &o).unwrap();
        d.cut(n(7)).unwrap(); // leaf split
        assert_eq!(d.tree_min(n(0)).unwrap(), Some(n(6)));
        d.cut(n(3)).unwrap(); // inner split
        assert_eq!(d.tree_min(n(0)).unwrap(), Some(n(6)));
        assert_eq!(d.tree_min(n(4)).unwrap(), Some(n(5)));
        d.cut(n(1)).unwrap(); // root split
        assert_eq!(d.tree_min(n(2)).unwrap(), Some(n(6)));
        d.cut(n(6)).unwrap(); // super cut, parent becomes a leaf
        assert_eq!(d.tree_min(n(2)).unwrap(), Some(n(2)));
        assert_eq!(d.tree_min(n(6)).unwrap(), Some(n(6)));
        d.cut(n(5)).unwrap();
        assert_eq!(d.tree_min(n(3)).unwrap(), Some(n(4)));
        assert!(d.leaf_sequences_consistent());
        let s = d.stats();
        assert_eq!((s.leaf_splits, s.inner_splits, s.root_splits, s.super_cuts), (1, 1, 1, 2));
    }

    #[test]
    fn sums_are_conserved() {
        let f = RootedForest::from_parents(&[None, Some(0), Some(0), Some(0), Some(0)]).unwrap();
        let mut d = UoDtm::with_semigroup(f, (1..=5).map(Some).collect(), Sum).unwrap();
        assert_eq!(d.tree_aggregate(n(0)).unwrap(), Some(15));
        d.cut(n(3)).unwrap();
        assert_eq!(d.tree_aggregate(n(0)).unwrap(), Some(11));
        assert_eq!(d.tree_aggregate(n(3)).unwrap(), Some(4));
    }

    #[test]
    fn edge_variant() {
        // a=0 - b=1 - c=2, edges named by child: 1 (ab), 2 (bc)
        let f = RootedForest::from_parents(&[None, Some(0), Some(1)]).unwrap();
        let o = PriorityOracle::from_ranks(vec![9, 2, 1]).unwrap();
        let mut e = Edtm::new(&f, &o).unwrap();
        assert_eq!(e.tree_min(n(0)).unwrap(), Some(EdgeId(2)));
        e.cut(n(1)).unwrap();
        assert_eq!(e.tree_min(n(0)).unwrap(), None);
        assert_eq!(e.tree_min(n(1)).unwrap(), Some(EdgeId(2)));
        assert_eq!(e.cut(n(0)), Err(Error::IsRoot(n(0))));
    }
}
