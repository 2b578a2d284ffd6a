//! Leftmost and rightmost leaves of subtrees under cut and split.
//!
//! Every node gets a left-to-right and a right-to-left post-order label.
//! The leftmost leaf of `T_v` is the node of minimum left label in `T_v`,
//! found with a subtree query on a label-valued [`DynamicForest`]. Splits copy
//! the label to both halves; only the half that keeps the parent can ever be
//! a subtree minimum, so `owner` maps each label to that half.

use crate::dynamic_forest::DynamicForest;
use crate::error::Result;
use crate::forest::{NodeId, RootedForest, NIL};
use crate::oracle::MinU32;

/// Extremal-leaf queries over an ordered forest. Never touches the oracle.
pub struct ExtremalLeaves {
    left: DynamicForest<MinU32>,
    right: DynamicForest<MinU32>,
    owner_left: Vec<u32>,
    owner_right: Vec<u32>,
}

fn post_order(forest: &RootedForest, mirrored: bool) -> Vec<Option<u32>> {
    let mut label = vec![None; forest.len()];
    let mut next = 0u32;
    for r in forest.roots() {
        let mut stack = vec![(r, false)];
        while let Some((x, done)) = stack.pop() {
            if done {
                label[x.index()] = Some(next);
                next += 1;
                continue;
            }
            stack.push((x, true));
            // pushed in reverse of the visiting order
            if mirrored {
                let mut c = forest.first_child(x);
                while let Some(y) = c {
                    stack.push((y, false));
                    c = forest.next_sibling(y);
                }
            } else {
                let mut c = forest.last_child(x);
                while let Some(y) = c {
                    stack.push((y, false));
                    c = forest.prev_sibling(y);
                }
            }
        }
    }
    label
}

fn owners(labels: &[Option<u32>]) -> Vec<u32> {
    let mut owner = vec![NIL; labels.len()];
    for (v, l) in labels.iter().enumerate() {
        if let Some(l) = l {
            owner[*l as usize] = v as u32;
        }
    }
    owner
}

impl ExtremalLeaves {
    pub fn new(forest: RootedForest) -> Self {
        let ll = post_order(&forest, false);
        let rl = post_order(&forest, true);
        ExtremalLeaves {
            owner_left: owners(&ll),
            owner_right: owners(&rl),
            left: DynamicForest::new(forest.clone(), ll, MinU32),
            right: DynamicForest::new(forest, rl, MinU32),
        }
    }

    pub fn forest(&self) -> &RootedForest {
        self.left.forest()
    }

    pub fn cut(&mut self, v: NodeId) -> Result<()> {
        self.left.cut(v)?;
        self.right.cut(v)
    }

    pub fn split(&mut self, v: NodeId) -> Result<(NodeId, NodeId)> {
        let was_root = self.forest().is_root(v);
        let (u1, u2) = self.left.split(v)?;
        let mirror = self.right.split(v)?;
        debug_assert_eq!(mirror, (u1, u2));
        if !was_root {
            let l = *self.left.value(u1)?.expect("labelled");
            let r = *self.right.value(u1)?.expect("labelled");
            self.owner_left[l as usize] = u1.raw();
            self.owner_right[r as usize] = u1.raw();
        }
        Ok((u1, u2))
    }

    /// Leftmost and rightmost leaf of the subtree rooted at `v`.
    pub fn extremal(&mut self, v: NodeId) -> Result<(NodeId, NodeId)> {
        self.forest().check_alive(v)?;
        if self.forest().is_leaf(v) {
            return Ok((v, v));
        }
        let l = self.left.subtree_aggregate(v)?.expect("labelled");
        let r = self.right.subtree_aggregate(v)?.expect("labelled");
        let a = NodeId::from_raw(self.owner_left[l as usize]).unwrap();
        let b = NodeId::from_raw(self.owner_right[r as usize]).unwrap();
        Ok((a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(i: usize) -> NodeId {
        NodeId::new(i)
    }

    #[test]
    fn two_level_tree() {
        // r=0 with children a=1, b=2; a has leaves 3, 4; b has leaf 5
        let f = RootedForest::from_parents(&[None, Some(0), Some(0), Some(1), Some(1), Some(2)]).unwrap();
        let mut e = ExtremalLeaves::new(f);
        assert_eq!(e.extremal(n(0)).unwrap(), (n(3), n(5)));
        assert_eq!(e.extremal(n(1)).unwrap(), (n(3), n(4)));
        assert_eq!(e.extremal(n(4)).unwrap(), (n(4), n(4)));
    }

    #[test]
    fn after_splits_and_cuts() {
        let f = RootedForest::from_parents(&[None, Some(0), Some(0), Some(1), Some(1), Some(2)]).unwrap();
        let mut e = ExtremalLeaves::new(f);
        let (u1, u2) = e.split(n(1)).unwrap();
        assert_eq!(e.extremal(n(0)).unwrap(), (u1, n(5)));
        assert_eq!(e.extremal(u2).unwrap(), (n(3), n(4)));
        let (w1, _) = e.split(n(5)).unwrap();
        assert_eq!(e.extremal(n(0)).unwrap(), (u1, w1));
        e.cut(n(3)).unwrap();
        assert_eq!(e.extremal(u2).unwrap(), (n(4), n(4)));
        let (r1, r2) = e.split(n(0)).unwrap();
        assert_eq!(e.extremal(r2).unwrap(), (u1, w1));
        assert_eq!(e.extremal(r1).unwrap(), (r1, r1));
    }
}
