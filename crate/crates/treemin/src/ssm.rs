//! Splittable sequence aggregates on splay trees.
//!
//! All sequences of one [`SsmArena`] share its node storage; a [`Sequence`]
//! is an owned handle to one splay tree. Each node caches the aggregate of
//! its subtree. Splaying a node to the root copies the old root aggregate
//! instead of recomputing it, so a rotation recomputes one aggregate.

use crate::error::{Error, Result};
use crate::forest::{NodeId, NIL};
use crate::oracle::Semigroup;

/// Handle to one sequence of an arena. Not `Clone`: operations that
/// destroy a sequence take it by value or rewrite it in place.
#[derive(Debug)]
pub struct Sequence {
    root: u32,
    len: usize,
}

impl Sequence {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Node storage shared by a family of sequences.
pub struct SsmArena<S: Semigroup> {
    sg: S,
    elem: Vec<u32>,
    value: Vec<Option<S::Elem>>,
    agg: Vec<Option<S::Elem>>,
    left: Vec<u32>,
    right: Vec<u32>,
    parent: Vec<u32>,
    pred: Vec<u32>,
    succ: Vec<u32>,
    size: Vec<u32>,
    free: Vec<u32>,
    node_of: Vec<u32>,
    rotations: u64,
}

impl<S: Semigroup> SsmArena<S> {
    pub fn new(sg: S) -> Self {
        SsmArena {
            sg,
            elem: Vec::new(),
            value: Vec::new(),
            agg: Vec::new(),
            left: Vec::new(),
            right: Vec::new(),
            parent: Vec::new(),
            pred: Vec::new(),
            succ: Vec::new(),
            size: Vec::new(),
            free: Vec::new(),
            node_of: Vec::new(),
            rotations: 0,
        }
    }

    /// Rotations performed so far (diagnostic).
    pub fn rotations(&self) -> u64 {
        self.rotations
    }

    pub fn contains(&self, x: NodeId) -> bool {
        self.node_of.get(x.index()).is_some_and(|&n| n != NIL)
    }

    fn alloc(&mut self, x: NodeId, value: Option<S::Elem>) -> u32 {
        let n = match self.free.pop() {
            Some(n) => {
                let i = n as usize;
                self.elem[i] = x.raw();
                self.agg[i] = value.clone();
                self.value[i] = value;
                n
            }
            None => {
                self.elem.push(x.raw());
                self.agg.push(value.clone());
                self.value.push(value);
                self.left.push(NIL);
                self.right.push(NIL);
                self.parent.push(NIL);
                self.pred.push(NIL);
                self.succ.push(NIL);
                self.size.push(1);
                (self.elem.len() - 1) as u32
            }
        };
        let i = n as usize;
        self.left[i] = NIL;
        self.right[i] = NIL;
        self.parent[i] = NIL;
        self.pred[i] = NIL;
        self.succ[i] = NIL;
        self.size[i] = 1;
        if self.node_of.len() <= x.index() {
            self.node_of.resize(x.index() + 1, NIL);
        }
        self.node_of[x.index()] = n;
        n
    }

    fn release(&mut self, n: u32) {
        let x = self.elem[n as usize] as usize;
        self.node_of[x] = NIL;
        self.value[n as usize] = None;
        self.agg[n as usize] = None;
        self.free.push(n);
    }

    fn sz(&self, n: u32) -> u32 {
        if n == NIL {
            0
        } else {
            self.size[n as usize]
        }
    }

    fn update(&mut self, n: u32) {
        let i = n as usize;
        let (l, r) = (self.left[i], self.right[i]);
        self.size[i] = self.sz(l) + self.sz(r) + 1;
        let la = (l != NIL).then(|| self.agg[l as usize].as_ref()).flatten();
        let ra = (r != NIL).then(|| self.agg[r as usize].as_ref()).flatten();
        let a = self.sg.combine_opt(la, self.value[i].as_ref());
        self.agg[i] = self.sg.combine_opt(a.as_ref(), ra);
    }

    /// Builds a sequence on a complete binary tree.
    pub fn sequence(&mut self, items: Vec<(NodeId, Option<S::Elem>)>) -> Result<Sequence> {
        let mut seen = std::collections::HashSet::with_capacity(items.len());
        for (x, _) in &items {
            if self.contains(*x) || !seen.insert(*x) {
                return Err(Error::DuplicateElement(*x));
            }
        }
        let len = items.len();
        if len == 0 {
            return Ok(Sequence { root: NIL, len: 0 });
        }
        // heap slot h (1-based) receives the item at its in-order rank
        let mut slot_node = vec![NIL; len + 1];
        let mut items = items.into_iter();
        let mut stack = Vec::new();
        let mut h = 1usize;
        let mut prev = NIL;
        loop {
            while h <= len {
                stack.push(h);
                h *= 2;
            }
            let Some(top) = stack.pop() else { break };
            let (x, v) = items.next().unwrap();
            let n = self.alloc(x, v);
            slot_node[top] = n;
            self.pred[n as usize] = prev;
            if prev != NIL {
                self.succ[prev as usize] = n;
            }
            prev = n;
            h = 2 * top + 1;
        }
        for h in (1..=len).rev() {
            let n = slot_node[h];
            let (l, r) = (2 * h, 2 * h + 1);
            if l <= len {
                self.left[n as usize] = slot_node[l];
                self.parent[slot_node[l] as usize] = n;
            }
            if r <= len {
                self.right[n as usize] = slot_node[r];
                self.parent[slot_node[r] as usize] = n;
            }
            self.update(n);
        }
        Ok(Sequence {
            root: slot_node[1],
            len,
        })
    }

    /// Aggregate of the whole sequence; `Ok(None)` if every value is absent.
    pub fn aggregate(&self, s: &Sequence) -> Result<Option<S::Elem>> {
        if s.root == NIL {
            return Err(Error::Empty);
        }
        Ok(self.agg[s.root as usize].clone())
    }

    /// Elements in order.
    pub fn to_vec(&self, s: &Sequence) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(s.len);
        if s.root == NIL {
            return out;
        }
        let mut n = s.root;
        while self.left[n as usize] != NIL {
            n = self.left[n as usize];
        }
        while n != NIL {
            out.push(NodeId::from_raw(self.elem[n as usize]).unwrap());
            n = self.succ[n as usize];
        }
        out
    }

    /// Node of `x` together with its rank, if `x` lies in `s`.
    fn locate(&self, s: &Sequence, x: NodeId) -> Result<(u32, usize)> {
        let n = *self.node_of.get(x.index()).unwrap_or(&NIL);
        if n == NIL {
            return Err(Error::NotPresent(x));
        }
        let mut rank = self.sz(self.left[n as usize]) as usize;
        let mut c = n;
        let mut p = self.parent[n as usize];
        while p != NIL {
            if self.right[p as usize] == c {
                rank += self.sz(self.left[p as usize]) as usize + 1;
            }
            c = p;
            p = self.parent[p as usize];
        }
        if c != s.root {
            return Err(Error::NotPresent(x));
        }
        Ok((n, rank))
    }

    fn rotate(&mut self, x: u32) {
        self.rotations += 1;
        let p = self.parent[x as usize];
        let g = self.parent[p as usize];
        if self.left[p as usize] == x {
            let b = self.right[x as usize];
            self.left[p as usize] = b;
            if b != NIL {
                self.parent[b as usize] = p;
            }
            self.right[x as usize] = p;
        } else {
            let b = self.left[x as usize];
            self.right[p as usize] = b;
            if b != NIL {
                self.parent[b as usize] = p;
            }
            self.left[x as usize] = p;
        }
        self.parent[p as usize] = x;
        self.parent[x as usize] = g;
        if g != NIL {
            if self.left[g as usize] == p {
                self.left[g as usize] = x;
            } else {
                self.right[g as usize] = x;
            }
        }
        self.update(p);
    }

    fn splay(&mut self, x: u32) {
        if self.parent[x as usize] == NIL {
            return;
        }
        let mut r = x;
        while self.parent[r as usize] != NIL {
            r = self.parent[r as usize];
        }
        let whole = self.agg[r as usize].clone();
        let total = self.size[r as usize];
        while self.parent[x as usize] != NIL {
            let p = self.parent[x as usize];
            let g = self.parent[p as usize];
            if g == NIL {
                self.rotate(x);
            } else if (self.left[g as usize] == p) == (self.left[p as usize] == x) {
                self.rotate(p);
                self.rotate(x);
            } else {
                self.rotate(x);
                self.rotate(x);
            }
        }
        self.agg[x as usize] = whole;
        self.size[x as usize] = total;
    }

    /// Puts `y` with `value` at the position of `x`.
    pub fn replace(&mut self, s: &mut Sequence, x: NodeId, y: NodeId, value: Option<S::Elem>) -> Result<()> {
        let (n, _) = self.locate(s, x)?;
        if self.contains(y) {
            return Err(Error::AlreadyPresent(y));
        }
        self.splay(n);
        s.root = n;
        self.node_of[x.index()] = NIL;
        if self.node_of.len() <= y.index() {
            self.node_of.resize(y.index() + 1, NIL);
        }
        self.node_of[y.index()] = n;
        self.elem[n as usize] = y.raw();
        self.value[n as usize] = value;
        self.update(n);
        Ok(())
    }

    /// Cuts the interval from `x` to `y` out of `s` and returns it. What
    /// remains in `s` is the prefix, then `z` if given, then the suffix.
    pub fn split_interval(
        &mut self,
        s: &mut Sequence,
        x: NodeId,
        y: NodeId,
        z: Option<(NodeId, Option<S::Elem>)>,
    ) -> Result<Sequence> {
        let (nx, rx) = self.locate(s, x)?;
        let (ny, ry) = self.locate(s, y)?;
        if ry < rx {
            return Err(Error::OutOfOrder);
        }
        if let Some((zid, _)) = &z {
            if self.contains(*zid) {
                return Err(Error::AlreadyPresent(*zid));
            }
        }
        let xp = self.pred[nx as usize];
        let yp = self.succ[ny as usize];
        let mut rest = s.root;
        if xp != NIL {
            self.splay(xp);
            rest = self.right[xp as usize];
            self.right[xp as usize] = NIL;
            self.parent[rest as usize] = NIL;
        }
        let mut mid = rest;
        if yp != NIL {
            self.splay(yp);
            mid = self.left[yp as usize];
            self.left[yp as usize] = NIL;
            self.parent[mid as usize] = NIL;
            self.update(yp);
        }
        self.pred[nx as usize] = NIL;
        self.succ[ny as usize] = NIL;
        let taken = self.size[mid as usize] as usize;
        let inserted = usize::from(z.is_some());
        let root = match z {
            Some((zid, value)) => {
                let zn = self.alloc(zid, value);
                if xp != NIL {
                    self.update(xp);
                    self.left[zn as usize] = xp;
                    self.parent[xp as usize] = zn;
                    self.succ[xp as usize] = zn;
                    self.pred[zn as usize] = xp;
                }
                if yp != NIL {
                    self.right[zn as usize] = yp;
                    self.parent[yp as usize] = zn;
                    self.pred[yp as usize] = zn;
                    self.succ[zn as usize] = yp;
                }
                self.update(zn);
                zn
            }
            None => {
                if xp != NIL {
                    self.succ[xp as usize] = yp;
                }
                if yp != NIL {
                    self.pred[yp as usize] = xp;
                }
                if xp != NIL && yp != NIL {
                    self.right[xp as usize] = yp;
                    self.parent[yp as usize] = xp;
                }
                if xp != NIL {
                    self.update(xp);
                    xp
                } else {
                    yp
                }
            }
        };
        s.len = s.len - taken + inserted;
        s.root = root;
        debug_assert_eq!(s.len, self.sz(root) as usize);
        Ok(Sequence { root: mid, len: taken })
    }

    /// Frees every node of `s`.
    pub fn discard(&mut self, s: Sequence) {
        let mut stack = Vec::new();
        if s.root != NIL {
            stack.push(s.root);
        }
        while let Some(n) = stack.pop() {
            for c in [self.left[n as usize], self.right[n as usize]] {
                if c != NIL {
                    stack.push(c);
                }
            }
            self.release(n);
        }
    }

    /// Sum over nodes of `log2` of the total weight in their subtree.
    pub fn potential(&self, s: &Sequence, w: impl Fn(NodeId) -> f64) -> f64 {
        if s.root == NIL {
            return 0.0;
        }
        let mut order = Vec::with_capacity(s.len);
        let mut stack = vec![s.root];
        while let Some(n) = stack.pop() {
            order.push(n);
            for c in [self.left[n as usize], self.right[n as usize]] {
                if c != NIL {
                    stack.push(c);
                }
            }
        }
        let mut total = std::collections::HashMap::with_capacity(order.len());
        let mut phi = 0.0;
        for &n in order.iter().rev() {
            let i = n as usize;
            let mut t = w(NodeId::from_raw(self.elem[i]).unwrap());
            for c in [self.left[i], self.right[i]] {
                if c != NIL {
                    t += total[&c];
                }
            }
            total.insert(n, t);
            phi += t.log2();
        }
        phi
    }

    /// Depth of every element in the splay tree, in sequence order.
    pub fn depths(&self, s: &Sequence) -> Vec<usize> {
        let mut out = Vec::with_capacity(s.len);
        let mut stack = Vec::new();
        if s.root != NIL {
            stack.push((s.root, 0usize, false));
        }
        while let Some((n, d, expanded)) = stack.pop() {
            if expanded {
                out.push(d);
                continue;
            }
            let (l, r) = (self.left[n as usize], self.right[n as usize]);
            if r != NIL {
                stack.push((r, d + 1, false));
            }
            stack.push((n, d, true));
            if l != NIL {
                stack.push((l, d + 1, false));
            }
        }
        out
    }

    /// Checks parent links, subtree sizes and that the in-order traversal
    /// matches the predecessor/successor chain.
    pub fn check_structure(&self, s: &Sequence) -> bool {
        if s.root == NIL {
            return s.len == 0;
        }
        if self.parent[s.root as usize] != NIL || self.size[s.root as usize] as usize != s.len {
            return false;
        }
        let mut inorder = Vec::new();
        let mut stack = Vec::new();
        let mut cur = s.root;
        while cur != NIL || !stack.is_empty() {
            while cur != NIL {
                stack.push(cur);
                cur = self.left[cur as usize];
            }
            let n = stack.pop().unwrap();
            inorder.push(n);
            let i = n as usize;
            for c in [self.left[i], self.right[i]] {
                if c != NIL && self.parent[c as usize] != n {
                    return false;
                }
            }
            if self.size[i] != self.sz(self.left[i]) + self.sz(self.right[i]) + 1 {
                return false;
            }
            if self.node_of[self.elem[i] as usize] != n {
                return false;
            }
            cur = self.right[i];
        }
        let first_ok = self.pred[inorder[0] as usize] == NIL;
        let last_ok = self.succ[*inorder.last().unwrap() as usize] == NIL;
        first_ok
            && last_ok
            && inorder
                .windows(2)
                .all(|w| self.succ[w[0] as usize] == w[1] && self.pred[w[1] as usize] == w[0])
    }
}
