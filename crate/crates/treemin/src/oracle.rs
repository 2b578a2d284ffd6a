//! Priority comparisons and the semigroup abstraction.
//!
//! Every comparison between two finite priorities goes through
//! [`PriorityOracle`], which counts it. Sentinels compare for free.

use std::cell::Cell;
use std::fmt;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::forest::NodeId;

/// A priority handle: a finite element of the oracle, or a sentinel.
///
/// Order: every `Finite` is below every `Sentinel`, which are below `Infinity`.
/// Sentinels are ordered by their index.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Prio {
    /// Hidden priority of oracle element `i`.
    Finite(u32),
    /// The tie-broken infinity `∞_v`.
    Sentinel(u32),
    /// Plain infinity.
    Infinity,
}

impl Prio {
    pub fn of(v: NodeId) -> Prio {
        Prio::Finite(v.index() as u32)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Prio::Finite(i) => Some(i),
            _ => None,
        }
    }
}

struct Inner {
    rank: Vec<u32>,
    count: Cell<u64>,
}

/// Comparison-counting priority oracle. Cloning shares the counter.
#[derive(Clone)]
pub struct PriorityOracle {
    inner: Rc<Inner>,
}

impl fmt::Debug for PriorityOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PriorityOracle")
            .field("len", &self.len())
            .field("comparisons", &self.comparisons())
            .finish()
    }
}

impl PriorityOracle {
    /// Builds an oracle from hidden ranks; ranks must be pairwise distinct.
    pub fn from_ranks(rank: Vec<u32>) -> Result<Self> {
        let mut sorted = rank.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadParams("priority ranks must be distinct".into()));
        }
        Ok(PriorityOracle {
            inner: Rc::new(Inner {
                rank,
                count: Cell::new(0),
            }),
        })
    }

    /// Priorities equal to element ids.
    pub fn identity(n: usize) -> Self {
        Self::from_ranks((0..n as u32).collect()).expect("identity ranks are distinct")
    }

    /// Same hidden order with a separate counter.
    pub fn fork(&self) -> PriorityOracle {
        PriorityOracle {
            inner: Rc::new(Inner {
                rank: self.inner.rank.clone(),
                count: Cell::new(0),
            }),
        }
    }

    pub fn len(&self) -> usize {
        self.inner.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.rank.is_empty()
    }

    pub fn comparisons(&self) -> u64 {
        self.inner.count.get()
    }

    /// `p(u) < p(v)` for two oracle elements. Always counted.
    pub fn compare(&self, u: NodeId, v: NodeId) -> bool {
        self.less_finite(u.index() as u32, v.index() as u32)
    }

    fn less_finite(&self, a: u32, b: u32) -> bool {
        self.inner.count.set(self.inner.count.get() + 1);
        self.inner.rank[a as usize] < self.inner.rank[b as usize]
    }

    /// `a < b`, counted only when both sides are finite.
    pub fn less(&self, a: Prio, b: Prio) -> bool {
        match (a, b) {
            (Prio::Finite(x), Prio::Finite(y)) => self.less_finite(x, y),
            (Prio::Finite(_), _) => true,
            (_, Prio::Finite(_)) => false,
            (Prio::Sentinel(x), Prio::Sentinel(y)) => x < y,
            (Prio::Sentinel(_), Prio::Infinity) => true,
            (Prio::Infinity, _) => false,
        }
    }

    pub fn min(&self, a: Prio, b: Prio) -> Prio {
        if self.less(b, a) {
            b
        } else {
            a
        }
    }
}

/// An associative, commutative combine operation.
pub trait Semigroup {
    type Elem: Clone + fmt::Debug;

    fn combine(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Identity element, if the semigroup has one.
    fn identity(&self) -> Option<Self::Elem> {
        None
    }

    /// Combine where `None` stands for an absent operand.
    fn combine_opt(&self, a: Option<&Self::Elem>, b: Option<&Self::Elem>) -> Option<Self::Elem> {
        match (a, b) {
            (Some(x), Some(y)) => Some(self.combine(x, y)),
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }
}

/// Minimum through the oracle. `None` values act as plain infinity.
#[derive(Clone, Debug)]
pub struct OracleMin(pub PriorityOracle);

impl Semigroup for OracleMin {
    type Elem = Prio;

    fn combine(&self, a: &Prio, b: &Prio) -> Prio {
        self.0.min(*a, *b)
    }
}

/// Wrapping integer addition.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sum;

impl Semigroup for Sum {
    type Elem = i64;

    fn combine(&self, a: &i64, b: &i64) -> i64 {
        a.wrapping_add(*b)
    }

    fn identity(&self) -> Option<i64> {
        Some(0)
    }
}

/// Integer minimum without the oracle (labels, test weights).
#[derive(Clone, Copy, Debug, Default)]
pub struct MinU32;

impl Semigroup for MinU32 {
    type Elem = u32;

    fn combine(&self, a: &u32, b: &u32) -> u32 {
        *a.min(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sentinel_comparisons_are_free() {
        let o = PriorityOracle::from_ranks(vec![2, 5]).unwrap();
        assert!(o.less(Prio::Finite(0), Prio::Infinity));
        assert!(o.less(Prio::Finite(1), Prio::Sentinel(0)));
        assert!(o.less(Prio::Sentinel(0), Prio::Sentinel(1)));
        assert!(!o.less(Prio::Sentinel(1), Prio::Sentinel(0)));
        assert_eq!(o.comparisons(), 0);
        assert!(o.compare(NodeId::new(0), NodeId::new(1)));
        assert_eq!(o.comparisons(), 1);
        assert!(!o.compare(NodeId::new(0), NodeId::new(0)));
        assert_eq!(o.comparisons(), 2);
    }

    #[test]
    fn duplicate_ranks_rejected() {
        assert!(PriorityOracle::from_ranks(vec![1, 1]).is_err());
    }

    #[test]
    fn clones_share_counter() {
        let o = PriorityOracle::identity(3);
        let p = o.clone();
        p.less(Prio::Finite(0), Prio::Finite(2));
        assert_eq!(o.comparisons(), 1);
    }
}
