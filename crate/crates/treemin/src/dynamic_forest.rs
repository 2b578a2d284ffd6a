//! Component aggregates under cut, split and value updates.
//!
//! Each tree is an Euler tour (an open and a close token per node) stored
//! in a treap with parent pointers. Subtrees are contiguous token ranges, so
//! a cut is two splits and a merge. The aggregate of every tree is cached at
//! its root and refreshed after each mutation.

use crate::error::{Error, Result};
use crate::forest::{NodeId, RootedForest, NIL};
use crate::oracle::{OracleMin, Prio, PriorityOracle, Semigroup};
use crate::roots::{DecrementalRoots, TreeRoots};

fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

struct Treap<E> {
    left: Vec<u32>,
    right: Vec<u32>,
    parent: Vec<u32>,
    heap: Vec<u64>,
    value: Vec<Option<E>>,
    agg: Vec<Option<E>>,
    steps: u64,
}

impl<E: Clone> Treap<E> {
    fn new() -> Self {
        Treap {
            left: Vec::new(),
            right: Vec::new(),
            parent: Vec::new(),
            heap: Vec::new(),
            value: Vec::new(),
            agg: Vec::new(),
            steps: 0,
        }
    }

    fn push(&mut self, value: Option<E>) -> u32 {
        let t = self.left.len() as u32;
        self.left.push(NIL);
        self.right.push(NIL);
        self.parent.push(NIL);
        // distinct keys make the treap shape a function of the sequence
        self.heap.push((mix(t as u64) << 32) | t as u64);
        self.agg.push(value.clone());
        self.value.push(value);
        t
    }

    fn update<S: Semigroup<Elem = E>>(&mut self, sg: &S, x: u32) {
        let i = x as usize;
        let (l, r) = (self.left[i], self.right[i]);
        let la = (l != NIL).then(|| self.agg[l as usize].as_ref()).flatten();
        let ra = (r != NIL).then(|| self.agg[r as usize].as_ref()).flatten();
        let a = sg.combine_opt(la, self.value[i].as_ref());
        self.agg[i] = sg.combine_opt(a.as_ref(), ra);
    }

    fn root(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != NIL {
            x = self.parent[x as usize];
        }
        x
    }

    fn agg_of(&self, root: u32) -> Option<E> {
        if root == NIL {
            None
        } else {
            self.agg[root as usize].clone()
        }
    }

    fn set_left(&mut self, p: u32, c: u32) {
        self.left[p as usize] = c;
        if c != NIL {
            self.parent[c as usize] = p;
        }
    }

    fn set_right(&mut self, p: u32, c: u32) {
        self.right[p as usize] = c;
        if c != NIL {
            self.parent[c as usize] = p;
        }
    }

    /// Splits the sequence of `x` into the tokens before `x` and the rest.
    fn split_before<S: Semigroup<Elem = E>>(&mut self, sg: &S, x: u32) -> (u32, u32) {
        let l = self.left[x as usize];
        if l != NIL {
            self.parent[l as usize] = NIL;
        }
        self.left[x as usize] = NIL;
        self.update(sg, x);
        self.climb(sg, x, l, x)
    }

    /// Splits the sequence of `x` into the tokens up to `x` and the rest.
    fn split_after<S: Semigroup<Elem = E>>(&mut self, sg: &S, x: u32) -> (u32, u32) {
        let r = self.right[x as usize];
        if r != NIL {
            self.parent[r as usize] = NIL;
        }
        self.right[x as usize] = NIL;
        self.update(sg, x);
        self.climb(sg, x, x, r)
    }

    fn climb<S: Semigroup<Elem = E>>(&mut self, sg: &S, x: u32, mut l: u32, mut r: u32) -> (u32, u32) {
        let mut cur = x;
        let mut p = self.parent[x as usize];
        while p != NIL {
            self.steps += 1;
            let pp = self.parent[p as usize];
            if self.right[p as usize] == cur {
                self.set_right(p, l);
                self.update(sg, p);
                l = p;
            } else {
                self.set_left(p, r);
                self.update(sg, p);
                r = p;
            }
            cur = p;
            p = pp;
        }
        if l != NIL {
            self.parent[l as usize] = NIL;
        }
        if r != NIL {
            self.parent[r as usize] = NIL;
        }
        (l, r)
    }

    fn merge<S: Semigroup<Elem = E>>(&mut self, sg: &S, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        self.steps += 1;
        if self.heap[a as usize] > self.heap[b as usize] {
            let r = self.right[a as usize];
            let m = self.merge(sg, r, b);
            self.set_right(a, m);
            self.update(sg, a);
            a
        } else {
            let l = self.left[b as usize];
            let m = self.merge(sg, a, l);
            self.set_left(b, m);
            self.update(sg, b);
            b
        }
    }

    /// Linear-time build of a treap holding `seq` in order.
    fn build<S: Semigroup<Elem = E>>(&mut self, sg: &S, seq: &[u32]) -> u32 {
        let mut stack: Vec<u32> = Vec::new();
        for &x in seq {
            let mut last = NIL;
            while let Some(&t) = stack.last() {
                if self.heap[t as usize] < self.heap[x as usize] {
                    last = t;
                    stack.pop();
                } else {
                    break;
                }
            }
            self.set_left(x, last);
            self.right[x as usize] = NIL;
            match stack.last() {
                Some(&t) => self.set_right(t, x),
                None => self.parent[x as usize] = NIL,
            }
            stack.push(x);
        }
        let Some(&root) = stack.first() else {
            return NIL;
        };
        let mut order = Vec::with_capacity(seq.len());
        let mut todo = vec![root];
        while let Some(x) = todo.pop() {
            order.push(x);
            for c in [self.left[x as usize], self.right[x as usize]] {
                if c != NIL {
                    todo.push(c);
                }
            }
        }
        for &x in order.iter().rev() {
            self.update(sg, x);
        }
        root
    }

    fn set_value<S: Semigroup<Elem = E>>(&mut self, sg: &S, x: u32, v: Option<E>) {
        self.value[x as usize] = v;
        let mut y = x;
        while y != NIL {
            self.update(sg, y);
            y = self.parent[y as usize];
        }
    }
}

fn open(slot: u32) -> u32 {
    2 * slot
}

fn close(slot: u32) -> u32 {
    2 * slot + 1
}

/// Dynamic forest with cached component aggregates.
pub struct DynamicForest<S: Semigroup> {
    sg: S,
    roots: TreeRoots,
    treap: Treap<S::Elem>,
    slot: Vec<u32>,
    cache: Vec<Option<S::Elem>>,
}

impl DynamicForest<OracleMin> {
    /// Minimum mode with `p(v) = Prio::of(v)` for every node.
    pub fn with_oracle(forest: RootedForest, oracle: &PriorityOracle) -> Self {
        let values = (0..forest.len()).map(|i| Some(Prio::of(NodeId::new(i)))).collect();
        DynamicForest::new(forest, values, OracleMin(oracle.clone()))
    }

    /// Node of minimum priority in the tree of `v`, or `None` when every
    /// priority there is a sentinel.
    pub fn tree_min(&self, v: NodeId) -> Result<Option<NodeId>> {
        Ok(self
            .tree_aggregate(v)?
            .and_then(Prio::finite)
            .map(|i| NodeId::new(i as usize)))
    }
}

impl<S: Semigroup> DynamicForest<S> {
    /// `values[v]` is the value of node `v`; `None` is absent (infinity).
    pub fn new(forest: RootedForest, values: Vec<Option<S::Elem>>, sg: S) -> Self {
        let n = forest.len();
        let mut treap = Treap::new();
        for v in values.into_iter().chain(std::iter::repeat(None)).take(n) {
            treap.push(v);
            treap.push(None);
        }
        let mut cache = vec![None; n];
        let mut tour = Vec::new();
        for r in forest.roots() {
            tour.clear();
            let mut stack = vec![(r, false)];
            while let Some((x, done)) = stack.pop() {
                if done {
                    tour.push(close(x.raw()));
                    continue;
                }
                tour.push(open(x.raw()));
                stack.push((x, true));
                let mut c = forest.last_child(x);
                while let Some(y) = c {
                    stack.push((y, false));
                    c = forest.prev_sibling(y);
                }
            }
            let root = treap.build(&sg, &tour);
            cache[r.index()] = treap.agg_of(root);
        }
        DynamicForest {
            sg,
            roots: TreeRoots::new(forest),
            treap,
            slot: (0..n as u32).collect(),
            cache,
        }
    }

    pub fn forest(&self) -> &RootedForest {
        self.roots.forest()
    }

    pub fn semigroup(&self) -> &S {
        &self.sg
    }

    /// Treap merge and split steps so far (diagnostic).
    pub fn structural_steps(&self) -> u64 {
        self.treap.steps
    }

    pub fn value(&self, v: NodeId) -> Result<Option<&S::Elem>> {
        self.forest().check_alive(v)?;
        Ok(self.treap.value[open(self.slot[v.index()]) as usize].as_ref())
    }

    pub fn root(&self, v: NodeId) -> Result<NodeId> {
        self.roots.root(v)
    }

    /// Cached aggregate of the tree of `v`. No comparisons.
    pub fn tree_aggregate(&self, v: NodeId) -> Result<Option<S::Elem>> {
        let r = self.roots.root(v)?;
        Ok(self.cache[r.index()].clone())
    }

    /// Aggregate over all trees.
    pub fn find_min(&self) -> Option<S::Elem> {
        self.forest()
            .roots()
            .fold(None, |acc, r| self.sg.combine_opt(acc.as_ref(), self.cache[r.index()].as_ref()))
    }

    fn refresh(&mut self, r: NodeId) {
        let t = self.treap.root(open(self.slot[r.index()]));
        if self.cache.len() <= r.index() {
            self.cache.resize(r.index() + 1, None);
        }
        self.cache[r.index()] = self.treap.agg_of(t);
    }

    fn assign(&mut self, v: NodeId, slot: u32) {
        if self.slot.len() <= v.index() {
            self.slot.resize(v.index() + 1, NIL);
        }
        self.slot[v.index()] = slot;
    }

    /// New isolated token pair; returns the slot and its treap root.
    fn fresh_slot(&mut self, value: Option<S::Elem>) -> (u32, u32) {
        let o = self.treap.push(value);
        let c = self.treap.push(None);
        let root = self.treap.merge(&self.sg, o, c);
        (o / 2, root)
    }

    pub fn cut(&mut self, v: NodeId) -> Result<()> {
        let r = self.roots.root(v)?;
        self.roots.cut(v)?;
        let s = self.slot[v.index()];
        let (a, _rest) = self.treap.split_before(&self.sg, open(s));
        let (_mid, b) = self.treap.split_after(&self.sg, close(s));
        self.treap.merge(&self.sg, a, b);
        self.refresh(r);
        self.refresh(v);
        Ok(())
    }

    /// Replaces `v` by `u1` (keeps the parent) and `u2` (keeps the
    /// children). Both start with the value of `v`.
    pub fn split(&mut self, v: NodeId) -> Result<(NodeId, NodeId)> {
        self.split_impl(v, false)
    }

    /// As [`split`](Self::split), but both new nodes get no value.
    pub fn split_clearing(&mut self, v: NodeId) -> Result<(NodeId, NodeId)> {
        self.split_impl(v, true)
    }

    fn split_impl(&mut self, v: NodeId, clear: bool) -> Result<(NodeId, NodeId)> {
        let r = self.roots.root(v)?;
        let f = self.roots.forest();
        let (was_root, was_leaf) = (f.is_root(v), f.is_leaf(v));
        let s = self.slot[v.index()];
        let val = if clear {
            None
        } else {
            self.treap.value[open(s) as usize].clone()
        };
        let (u1, u2) = self.roots.split(v)?;
        if !was_root && !was_leaf {
            if clear {
                self.treap.value[open(s) as usize] = None;
            }
            let (a, _rest) = self.treap.split_before(&self.sg, open(s));
            let (_mid, b) = self.treap.split_after(&self.sg, close(s));
            let (s1, t1) = self.fresh_slot(val);
            let ab = self.treap.merge(&self.sg, a, t1);
            self.treap.merge(&self.sg, ab, b);
            self.assign(u1, s1);
            self.assign(u2, s);
            self.refresh(r);
            self.refresh(u2);
            return Ok((u1, u2));
        }
        let (keeper, fresh) = if was_root && !was_leaf { (u2, u1) } else { (u1, u2) };
        let (s2, _) = self.fresh_slot(val);
        self.assign(keeper, s);
        self.assign(fresh, s2);
        if clear && self.treap.value[open(s) as usize].is_some() {
            self.treap.set_value(&self.sg, open(s), None);
        }
        let top = if was_root { keeper } else { r };
        self.refresh(top);
        self.refresh(fresh);
        Ok((u1, u2))
    }

    pub fn set_value(&mut self, v: NodeId, value: Option<S::Elem>) -> Result<()> {
        let r = self.roots.root(v)?;
        let s = self.slot[v.index()];
        self.treap.set_value(&self.sg, open(s), value);
        self.refresh(r);
        Ok(())
    }

    /// Aggregate over the subtree of `v`: detaches the subtree's tour,
    /// reads its aggregate, and links it back in place.
    pub fn subtree_aggregate(&mut self, v: NodeId) -> Result<Option<S::Elem>> {
        self.forest().check_alive(v)?;
        let s = self.slot[v.index()];
        #[cfg(debug_assertions)]
        let before = self.treap.root(open(s));
        let (a, rest) = self.treap.split_before(&self.sg, open(s));
        let (mid, b) = self.treap.split_after(&self.sg, close(s));
        debug_assert!(rest != NIL);
        let out = self.treap.agg_of(mid);
        let am = self.treap.merge(&self.sg, a, mid);
        let _root = self.treap.merge(&self.sg, am, b);
        #[cfg(debug_assertions)]
        debug_assert_eq!(before, _root, "subtree query must restore the tour exactly");
        Ok(out)
    }

    /// Euler tour of the tree of `v` as (node, is_open) pairs (diagnostic).
    pub fn tour(&self, v: NodeId) -> Result<Vec<(NodeId, bool)>> {
        self.forest().check_alive(v)?;
        let mut owner = vec![NIL; self.treap.left.len() / 2];
        for x in self.forest().nodes() {
            owner[self.slot[x.index()] as usize] = x.raw();
        }
        let root = self.treap.root(open(self.slot[v.index()]));
        let mut out = Vec::new();
        let mut stack = Vec::new();
        let mut cur = root;
        while cur != NIL || !stack.is_empty() {
            while cur != NIL {
                stack.push(cur);
                cur = self.treap.left[cur as usize];
            }
            let x = stack.pop().unwrap();
            let node = NodeId::from_raw(owner[(x / 2) as usize]).ok_or(Error::DeadNode(v))?;
            out.push((node, x % 2 == 0));
            cur = self.treap.right[x as usize];
        }
        Ok(out)
    }
}
