//! Decremental minima and semigroup sums on forests of rooted paths.
//!
//! All paths are laid out back to back, root first. [`PathDtm`] builds one
//! Cartesian tree over the whole layout with the stack algorithm and then
//! answers range minima through an integer index over Cartesian depths, so
//! queries and cuts never compare priorities. [`PathSemigroupSums`] keeps
//! each component as its canonical decomposition into aligned power-of-two
//! blocks, stored in a two-stack deque with suffix aggregates.

use crate::error::{Error, Result};
use crate::forest::{NodeId, RootedForest, NIL};
use crate::oracle::{OracleMin, Prio, PriorityOracle, Semigroup};
use crate::rmq::MinIndex;
use crate::roots::{DecrementalRoots, TreeRoots};

/// Component aggregates over a path forest under cuts.
pub trait ChainEngine<E> {
    /// Aggregate of the component containing `v`.
    fn aggregate(&self, v: NodeId) -> Result<Option<E>>;
    fn cut(&mut self, v: NodeId) -> Result<()>;
}

struct Layout {
    pos: Vec<u32>,
    order: Vec<u32>,
}

fn layout(forest: &RootedForest) -> Result<Layout> {
    let mut pos = vec![NIL; forest.len()];
    let mut order = Vec::with_capacity(forest.live_count());
    for v in forest.nodes() {
        if forest.child_count(v) > 1 {
            return Err(Error::NotAPathForest(v));
        }
    }
    for r in forest.roots() {
        let mut cur = Some(r);
        while let Some(x) = cur {
            pos[x.index()] = order.len() as u32;
            order.push(x.raw());
            cur = forest.first_child(x);
        }
    }
    Ok(Layout { pos, order })
}

fn leaf_map(forest: &RootedForest) -> Vec<u32> {
    let mut leaf = vec![NIL; forest.len()];
    for r in forest.roots() {
        let mut x = r;
        while let Some(c) = forest.first_child(x) {
            x = c;
        }
        leaf[r.index()] = x.raw();
    }
    leaf
}

/// Decremental tree minima on a path forest.
pub struct PathDtm {
    roots: TreeRoots,
    pos: Vec<u32>,
    order: Vec<u32>,
    values: Vec<Option<Prio>>,
    rmq: MinIndex,
    leaf_of_root: Vec<u32>,
}

impl PathDtm {
    /// Every node `v` gets priority `Prio::of(v)`.
    pub fn new(forest: RootedForest, oracle: &PriorityOracle) -> Result<Self> {
        let values = (0..forest.len()).map(|i| Some(Prio::of(NodeId::new(i)))).collect();
        Self::with_values(forest, values, oracle)
    }

    /// Explicit per-node priorities; `None` is infinity.
    pub fn with_values(
        forest: RootedForest,
        values: Vec<Option<Prio>>,
        oracle: &PriorityOracle,
    ) -> Result<Self> {
        let Layout { pos, order } = layout(&forest)?;
        let key = |i: usize| values[order[i] as usize].unwrap_or(Prio::Infinity);
        let len = order.len();
        let mut parent = vec![NIL; len];
        let mut stack: Vec<u32> = Vec::new();
        for i in 0..len {
            let mut last = NIL;
            while let Some(&t) = stack.last() {
                if oracle.less(key(i), key(t as usize)) {
                    last = t;
                    stack.pop();
                } else {
                    break;
                }
            }
            if last != NIL {
                parent[last as usize] = i as u32;
            }
            if let Some(&t) = stack.last() {
                parent[i] = t;
            }
            stack.push(i as u32);
        }
        let mut depth = vec![NIL; len];
        let mut chain = Vec::new();
        for i in 0..len {
            let mut x = i as u32;
            while depth[x as usize] == NIL && parent[x as usize] != NIL {
                chain.push(x);
                x = parent[x as usize];
            }
            if depth[x as usize] == NIL {
                depth[x as usize] = 0;
            }
            let mut d = depth[x as usize];
            while let Some(y) = chain.pop() {
                d += 1;
                depth[y as usize] = d;
            }
        }
        let leaf_of_root = leaf_map(&forest);
        Ok(PathDtm {
            roots: TreeRoots::new(forest),
            pos,
            order,
            values,
            rmq: MinIndex::new(depth),
            leaf_of_root,
        })
    }

    pub fn forest(&self) -> &RootedForest {
        self.roots.forest()
    }

    /// Node of minimum priority in the component of `v`.
    pub fn tree_min(&self, v: NodeId) -> Result<NodeId> {
        let r = self.roots.root(v)?;
        let l = self.leaf_of_root[r.index()];
        let p = self
            .rmq
            .argmin(self.pos[r.index()] as usize, self.pos[l as usize] as usize);
        Ok(NodeId::from_raw(self.order[p]).unwrap())
    }

    pub fn cut(&mut self, v: NodeId) -> Result<()> {
        let f = self.roots.forest();
        f.check_alive(v)?;
        let u = f.parent(v).ok_or(Error::IsRoot(v))?;
        let r = self.roots.root(v)?;
        self.leaf_of_root[v.index()] = self.leaf_of_root[r.index()];
        self.leaf_of_root[r.index()] = u.raw();
        self.roots.cut(v)
    }
}

impl ChainEngine<Prio> for PathDtm {
    fn aggregate(&self, v: NodeId) -> Result<Option<Prio>> {
        let m = self.tree_min(v)?;
        Ok(self.values[m.index()])
    }

    fn cut(&mut self, v: NodeId) -> Result<()> {
        PathDtm::cut(self, v)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
struct Block {
    level: u8,
    idx: u32,
}

struct Entry<E> {
    block: Block,
    value: Option<E>,
    agg: Option<E>,
}

/// Two stacks with suffix aggregates. `front` has the leftmost block on
/// top, `back` the rightmost.
struct HeapDeque<E> {
    front: Vec<Entry<E>>,
    back: Vec<Entry<E>>,
}

impl<E: Clone> HeapDeque<E> {
    fn new() -> Self {
        HeapDeque {
            front: Vec::new(),
            back: Vec::new(),
        }
    }

    fn push<S: Semigroup<Elem = E>>(
        stack: &mut Vec<Entry<E>>,
        sg: &S,
        block: Block,
        value: Option<E>,
        ops: &mut u64,
    ) {
        let agg = sg.combine_opt(value.as_ref(), stack.last().and_then(|e| e.agg.as_ref()));
        stack.push(Entry { block, value, agg });
        *ops += 1;
    }

    fn push_front<S: Semigroup<Elem = E>>(&mut self, sg: &S, b: Block, v: Option<E>, ops: &mut u64) {
        Self::push(&mut self.front, sg, b, v, ops);
    }

    fn push_back<S: Semigroup<Elem = E>>(&mut self, sg: &S, b: Block, v: Option<E>, ops: &mut u64) {
        Self::push(&mut self.back, sg, b, v, ops);
    }

    /// Moves the half of `from` nearest its bottom onto the empty `to`.
    fn rebalance<S: Semigroup<Elem = E>>(
        from: &mut Vec<Entry<E>>,
        to: &mut Vec<Entry<E>>,
        sg: &S,
        ops: &mut u64,
    ) {
        debug_assert!(to.is_empty());
        let k = from.len().div_ceil(2);
        let rest: Vec<Entry<E>> = from.drain(k..).collect();
        let moved: Vec<Entry<E>> = std::mem::take(from);
        *ops += (k + rest.len()) as u64;
        for e in moved.into_iter().rev() {
            Self::push(to, sg, e.block, e.value, ops);
        }
        for e in rest {
            Self::push(from, sg, e.block, e.value, ops);
        }
    }

    fn pop_front<S: Semigroup<Elem = E>>(&mut self, sg: &S, ops: &mut u64) -> Option<(Block, Option<E>)> {
        if self.front.is_empty() {
            Self::rebalance(&mut self.back, &mut self.front, sg, ops);
        }
        let e = self.front.pop()?;
        *ops += 1;
        Some((e.block, e.value))
    }

    fn pop_back<S: Semigroup<Elem = E>>(&mut self, sg: &S, ops: &mut u64) -> Option<(Block, Option<E>)> {
        if self.back.is_empty() {
            Self::rebalance(&mut self.front, &mut self.back, sg, ops);
        }
        let e = self.back.pop()?;
        *ops += 1;
        Some((e.block, e.value))
    }

    fn aggregate<S: Semigroup<Elem = E>>(&self, sg: &S) -> Option<E> {
        sg.combine_opt(
            self.front.last().and_then(|e| e.agg.as_ref()),
            self.back.last().and_then(|e| e.agg.as_ref()),
        )
    }

    fn blocks(&self) -> Vec<Block> {
        let mut out: Vec<Block> = self.front.iter().rev().map(|e| e.block).collect();
        out.extend(self.back.iter().map(|e| e.block));
        out
    }
}

/// Semigroup sums over a path forest under cuts.
pub struct PathSemigroupSums<S: Semigroup> {
    sg: S,
    roots: TreeRoots,
    pos: Vec<u32>,
    len: usize,
    levels: Vec<Vec<Option<S::Elem>>>,
    deques: Vec<HeapDeque<S::Elem>>,
    deque_of: Vec<u32>,
    stack_ops: u64,
}

impl<S: Semigroup> PathSemigroupSums<S> {
    pub fn new(forest: RootedForest, weights: Vec<Option<S::Elem>>, sg: S) -> Result<Self> {
        let Layout { pos, order } = layout(&forest)?;
        let len = order.len();
        let mut levels: Vec<Vec<Option<S::Elem>>> =
            vec![order.iter().map(|&v| weights[v as usize].clone()).collect()];
        while levels.last().unwrap().len() > 1 {
            let prev = levels.last().unwrap();
            let next = prev
                .chunks(2)
                .map(|c| match c {
                    [a, b] => sg.combine_opt(a.as_ref(), b.as_ref()),
                    [a] => a.clone(),
                    _ => unreachable!(),
                })
                .collect();
            levels.push(next);
        }
        let mut s = PathSemigroupSums {
            sg,
            pos,
            len,
            levels,
            deques: Vec::new(),
            deque_of: vec![NIL; forest.len()],
            stack_ops: 0,
            roots: TreeRoots::new(forest),
        };
        let roots: Vec<NodeId> = s.roots.forest().roots().collect();
        for r in roots {
            let a = s.pos[r.index()] as usize;
            let mut x = r;
            while let Some(c) = s.roots.forest().first_child(x) {
                x = c;
            }
            let b = s.pos[x.index()] as usize;
            let mut dq = HeapDeque::new();
            for blk in s.decompose(a, b) {
                let v = s.block_value(blk);
                dq.push_back(&s.sg, blk, v, &mut s.stack_ops);
            }
            s.deque_of[r.index()] = s.deques.len() as u32;
            s.deques.push(dq);
        }
        Ok(s)
    }

    pub fn forest(&self) -> &RootedForest {
        self.roots.forest()
    }

    /// Total pushes and pops performed on deque stacks.
    pub fn stack_ops(&self) -> u64 {
        self.stack_ops
    }

    fn start(&self, b: Block) -> usize {
        (b.idx as usize) << b.level
    }

    fn end(&self, b: Block) -> usize {
        (((b.idx as usize) + 1) << b.level).min(self.len) - 1
    }

    fn block_value(&self, b: Block) -> Option<S::Elem> {
        self.levels[b.level as usize][b.idx as usize].clone()
    }

    /// Maximal legal blocks covering `s..=e`.
    fn decompose(&self, mut s: usize, e: usize) -> Vec<Block> {
        let top = self.levels.len() - 1;
        let mut out = Vec::new();
        while s <= e {
            let mut p = if s == 0 { top } else { (s.trailing_zeros() as usize).min(top) };
            loop {
                let b = Block {
                    level: p as u8,
                    idx: (s >> p) as u32,
                };
                if self.end(b) <= e {
                    out.push(b);
                    s = self.end(b) + 1;
                    break;
                }
                p -= 1;
            }
        }
        out
    }

    pub fn tree_sum(&self, v: NodeId) -> Result<Option<S::Elem>> {
        let r = self.roots.root(v)?;
        Ok(self.deques[self.deque_of[r.index()] as usize].aggregate(&self.sg))
    }

    /// Position range of the component of `v` in the layout.
    pub fn component_range(&self, v: NodeId) -> Result<(usize, usize)> {
        let r = self.roots.root(v)?;
        let dq = &self.deques[self.deque_of[r.index()] as usize];
        let blocks = dq.blocks();
        Ok((self.start(blocks[0]), self.end(*blocks.last().unwrap())))
    }

    /// Stored blocks of the component of `v`, left to right, as
    /// `(level, start, end)` position triples.
    pub fn block_decomposition(&self, v: NodeId) -> Result<Vec<(u8, usize, usize)>> {
        let r = self.roots.root(v)?;
        let dq = &self.deques[self.deque_of[r.index()] as usize];
        Ok(dq
            .blocks()
            .into_iter()
            .map(|b| (b.level, self.start(b), self.end(b)))
            .collect())
    }

    /// Number of positions in the layout.
    pub fn layout_len(&self) -> usize {
        self.len
    }

    pub fn cut(&mut self, v: NodeId) -> Result<()> {
        let f = self.roots.forest();
        f.check_alive(v)?;
        if f.is_root(v) {
            return Err(Error::IsRoot(v));
        }
        let r = self.roots.root(v)?;
        let c = self.pos[v.index()] as usize;
        let slot = self.deque_of[r.index()] as usize;
        let mut dq = std::mem::replace(&mut self.deques[slot], HeapDeque::new());
        let mut ops = self.stack_ops;
        let sg = &self.sg;
        let mut popped_front = Vec::new();
        let mut popped_back = Vec::new();
        enum Found<E> {
            Front(Block, Option<E>),
            Back(Block, Option<E>),
            Boundary,
        }
        let found = loop {
            match dq.pop_front(sg, &mut ops) {
                None => break Found::Boundary,
                Some((b, val)) if self.end(b) < c => popped_front.push((b, val)),
                Some((b, val)) => break Found::Front(b, val),
            }
            match dq.pop_back(sg, &mut ops) {
                None => break Found::Boundary,
                Some((b, val)) if self.start(b) >= c => popped_back.push((b, val)),
                Some((b, val)) => break Found::Back(b, val),
            }
        };
        let mut fresh = HeapDeque::new();
        // `keep_left` tells whether the old deque keeps the parent side.
        let keep_left = match found {
            Found::Front(b, val) => {
                for (blk, val) in popped_front {
                    fresh.push_back(sg, blk, val, &mut ops);
                }
                for (blk, val) in popped_back.into_iter().rev() {
                    dq.push_back(sg, blk, val, &mut ops);
                }
                if self.start(b) < c {
                    for blk in self.decompose(self.start(b), c - 1) {
                        fresh.push_back(sg, blk, self.block_value(blk), &mut ops);
                    }
                    for blk in self.decompose(c, self.end(b)).into_iter().rev() {
                        dq.push_front(sg, blk, self.block_value(blk), &mut ops);
                    }
                } else {
                    dq.push_front(sg, b, val, &mut ops);
                }
                false
            }
            Found::Back(b, val) => {
                for (blk, val) in popped_front.into_iter().rev() {
                    dq.push_front(sg, blk, val, &mut ops);
                }
                if self.end(b) >= c {
                    for blk in self.decompose(self.start(b), c - 1) {
                        dq.push_back(sg, blk, self.block_value(blk), &mut ops);
                    }
                    for blk in self.decompose(c, self.end(b)) {
                        fresh.push_back(sg, blk, self.block_value(blk), &mut ops);
                    }
                } else {
                    dq.push_back(sg, b, val, &mut ops);
                }
                for (blk, val) in popped_back.into_iter().rev() {
                    fresh.push_back(sg, blk, val, &mut ops);
                }
                true
            }
            Found::Boundary => {
                for (blk, val) in popped_front {
                    dq.push_back(sg, blk, val, &mut ops);
                }
                for (blk, val) in popped_back.into_iter().rev() {
                    fresh.push_back(sg, blk, val, &mut ops);
                }
                true
            }
        };
        self.stack_ops = ops;
        let new_slot = self.deques.len() as u32;
        self.deques[slot] = dq;
        self.deques.push(fresh);
        if keep_left {
            self.deque_of[v.index()] = new_slot;
        } else {
            self.deque_of[r.index()] = new_slot;
            self.deque_of[v.index()] = slot as u32;
        }
        self.roots.cut(v)
    }
}

impl<S: Semigroup> ChainEngine<S::Elem> for PathSemigroupSums<S> {
    fn aggregate(&self, v: NodeId) -> Result<Option<S::Elem>> {
        self.tree_sum(v)
    }

    fn cut(&mut self, v: NodeId) -> Result<()> {
        PathSemigroupSums::cut(self, v)
    }
}

/// Minimum mode on top of the block engine, for cross-checks.
pub type PathMinSums = PathSemigroupSums<OracleMin>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Sum;

    fn path(n: usize) -> RootedForest {
        let parents: Vec<Option<usize>> = (0..n).map(|i| i.checked_sub(1)).collect();
        RootedForest::from_parents(&parents).unwrap()
    }

    #[test]
    fn path_min_small() {
        let o = PriorityOracle::from_ranks(vec![5, 1, 4, 2, 3]).unwrap();
        let mut d = PathDtm::new(path(5), &o).unwrap();
        assert_eq!(d.tree_min(NodeId::new(4)).unwrap(), NodeId::new(1));
        d.cut(NodeId::new(2)).unwrap();
        assert_eq!(d.tree_min(NodeId::new(0)).unwrap(), NodeId::new(1));
        assert_eq!(d.tree_min(NodeId::new(4)).unwrap(), NodeId::new(3));
        let before = o.comparisons();
        d.cut(NodeId::new(4)).unwrap();
        assert_eq!(d.tree_min(NodeId::new(4)).unwrap(), NodeId::new(4));
        assert_eq!(o.comparisons(), before);
    }

    #[test]
    fn rejects_branching() {
        let f = RootedForest::from_parents(&[None, Some(0), Some(0)]).unwrap();
        let o = PriorityOracle::identity(3);
        assert!(matches!(PathDtm::new(f, &o), Err(Error::NotAPathForest(_))));
    }

    #[test]
    fn sums_split_and_conserve() {
        let mut s = PathSemigroupSums::new(path(3), vec![Some(1), Some(2), Some(3)], Sum).unwrap();
        assert_eq!(s.tree_sum(NodeId::new(0)).unwrap(), Some(6));
        s.cut(NodeId::new(2)).unwrap();
        assert_eq!(s.tree_sum(NodeId::new(0)).unwrap(), Some(3));
        assert_eq!(s.tree_sum(NodeId::new(2)).unwrap(), Some(3));
    }

    #[test]
    fn every_single_cut_on_odd_length() {
        for n in 1..40 {
            for c in 1..n {
                let w: Vec<Option<i64>> = (0..n as i64).map(|i| Some(1 << (i % 40))).collect();
                let mut s = PathSemigroupSums::new(path(n), w.clone(), Sum).unwrap();
                s.cut(NodeId::new(c)).unwrap();
                let left: i64 = (0..c).map(|i| w[i].unwrap()).sum();
                let right: i64 = (c..n).map(|i| w[i].unwrap()).sum();
                assert_eq!(s.tree_sum(NodeId::new(0)).unwrap(), Some(left));
                assert_eq!(s.tree_sum(NodeId::new(n - 1)).unwrap(), Some(right));
            }
        }
    }
}
