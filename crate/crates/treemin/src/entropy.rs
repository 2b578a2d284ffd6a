//! Tree entropies and linear-extension counts.
//!
//! A linear extension of a rooted forest lists every node after all of its
//! descendants (the order in which a decremental tree sort finds them).
//! All logarithms are base 2.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::forest::{NodeId, RootedForest};

/// Subtree sizes indexed by node; dead nodes get 0.
pub fn subtree_sizes(t: &RootedForest) -> Vec<usize> {
    let mut size = vec![0; t.len()];
    for r in t.roots() {
        for v in t.subtree(r).into_iter().rev() {
            size[v.index()] = 1 + t.children(v).map(|c| size[c.index()]).sum::<usize>();
        }
    }
    size
}

/// `H(T) = Σ_v log(n / |T_v|)`, summed over the trees of a forest with `n`
/// the size of each tree.
pub fn tree_entropy(t: &RootedForest) -> f64 {
    let size = subtree_sizes(t);
    t.roots()
        .map(|r| {
            let n = size[r.index()] as f64;
            t.subtree(r).iter().map(|v| (n / size[v.index()] as f64).log2()).sum::<f64>()
        })
        .sum()
}

/// `H_S(T) = Σ_{v∈S} log(|S| / |T_v ∩ S|)`.
pub fn entropy_subset(t: &RootedForest, s: &[NodeId]) -> f64 {
    let k = s.len() as f64;
    let counts = subset_counts(t, s);
    s.iter().map(|v| (k / counts[v.index()] as f64).log2()).sum()
}

/// `|T_v ∩ S|` for every node.
fn subset_counts(t: &RootedForest, s: &[NodeId]) -> Vec<usize> {
    let mut inside = vec![false; t.len()];
    for v in s {
        inside[v.index()] = true;
    }
    let mut count = vec![0; t.len()];
    for r in t.roots() {
        for v in t.subtree(r).into_iter().rev() {
            count[v.index()] = usize::from(inside[v.index()]) + t.children(v).map(|c| count[c.index()]).sum::<usize>();
        }
    }
    count
}

/// `H_k(T)`, the maximum of `H_S` over `|S| ≤ k`, with a witness: the `k`
/// nodes of smallest subtree size (descendant-closed, since sizes strictly
/// decrease downwards).
pub fn entropy_k(t: &RootedForest, k: usize) -> (f64, Vec<NodeId>) {
    let size = subtree_sizes(t);
    let mut nodes: Vec<NodeId> = t.nodes().collect();
    nodes.sort_by_key(|v| (size[v.index()], v.index()));
    nodes.truncate(k);
    (entropy_subset(t, &nodes), nodes)
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// `|LE(T)|` by the hook-length formula `n! / Π |T_v|`.
pub fn count_linear_extensions(t: &RootedForest) -> BigUint {
    let all: Vec<NodeId> = t.nodes().collect();
    count_le_subset(t, &all)
}

/// Number of orders of `S` compatible with the tree order restricted to
/// `S`: `|S|! / Π_{u∈S} |T_u ∩ S|`.
pub fn count_le_subset(t: &RootedForest, s: &[NodeId]) -> BigUint {
    let counts = subset_counts(t, s);
    let den = s.iter().fold(BigUint::one(), |acc, v| acc * counts[v.index()] as u64);
    let num = factorial(s.len());
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Largest tree accepted by [`enumerate_le_prefixes`].
pub const MAX_ENUMERATE: usize = 12;

/// `|LE_k(T)|`: the number of length-`k` prefixes of linear extensions,
/// by search over removable-node sets.
pub fn enumerate_le_prefixes(t: &RootedForest, k: usize) -> Result<BigUint> {
    let n = t.live_count();
    if n > MAX_ENUMERATE || t.len() > MAX_ENUMERATE {
        return Err(Error::TooLarge(n));
    }
    let k = k.min(n);
    let mut kids = vec![0u32; t.len()];
    for v in t.nodes() {
        kids[v.index()] = t.children(v).fold(0, |m, c| m | 1 << c.index());
    }
    let live: u32 = t.nodes().fold(0, |m, v| m | 1 << v.index());
    let mut memo = HashMap::new();
    Ok(prefixes(&kids, live, 0, k, &mut memo))
}

fn prefixes(kids: &[u32], live: u32, taken: u32, k: usize, memo: &mut HashMap<u32, BigUint>) -> BigUint {
    if taken.count_ones() as usize == k {
        return BigUint::one();
    }
    if let Some(c) = memo.get(&taken) {
        return c.clone();
    }
    let mut total = BigUint::zero();
    let mut free = live & !taken;
    while free != 0 {
        let v = free.trailing_zeros() as usize;
        free &= free - 1;
        if kids[v] & !taken == 0 {
            total += prefixes(kids, live, taken | 1 << v, k, memo);
        }
    }
    memo.insert(taken, total.clone());
    total
}

/// `log2` of a big integer.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_u64().unwrap() as f64;
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap() as f64;
    top.log2() + shift as f64
}

/// Comparison lower bound for `m` operations on `t`, in bits:
/// `max(H_{⌊m/2⌋} − ⌊m/2⌋·log e, m, n)`.
pub fn lower_bound(t: &RootedForest, m: usize) -> f64 {
    let h = m / 2;
    let (hk, _) = entropy_k(t, h);
    let slack = h as f64 * std::f64::consts::LOG2_E;
    (hk - slack).max(m as f64).max(t.live_count() as f64)
}

/// Subdivides every edge. Original nodes keep their ids; the midpoint
/// above the `i`-th non-root node (in id order) is `n + i`.
pub fn subdivided(t: &RootedForest) -> RootedForest {
    let n = t.len();
    let mut mid = vec![usize::MAX; n];
    let mut next = n;
    for v in t.nodes().filter(|&v| !t.is_root(v)) {
        mid[v.index()] = next;
        next += 1;
    }
    let mut parents = vec![None; next];
    let mut orders = vec![Vec::new(); next];
    for v in t.nodes() {
        orders[v.index()] = t.children(v).map(|c| mid[c.index()]).collect();
        if let Some(p) = t.parent(v) {
            let m = mid[v.index()];
            parents[m] = Some(p.index());
            parents[v.index()] = Some(m);
            orders[m] = vec![v.index()];
        }
    }
    RootedForest::new(&parents, &orders).expect("subdivision of a forest")
}

/// Whether `H_k(T̃) ≤ 2·H_k(T) + 2k` for the subdivided tree `T̃`.
pub fn h_tilde_bound_check(t: &RootedForest, k: usize) -> bool {
    let (lhs, _) = entropy_k(&subdivided(t), k);
    let (rhs, _) = entropy_k(t, k);
    lhs <= 2.0 * rhs + 2.0 * k as f64 + 1e-9
}

/// Entropy figures for one tree.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyReport {
    pub h: f64,
    /// `(k, H_k)` for each requested `k`.
    pub h_k: Vec<(usize, f64)>,
    pub le_count: BigUint,
    /// Witness for the largest requested `k`.
    pub witness: Vec<NodeId>,
}

impl EntropyReport {
    pub fn new(t: &RootedForest, ks: &[usize]) -> Self {
        let h_k = ks.iter().map(|&k| (k, entropy_k(t, k).0)).collect();
        let witness = ks.iter().max().map(|&k| entropy_k(t, k).1).unwrap_or_default();
        EntropyReport {
            h: tree_entropy(t),
            h_k,
            le_count: count_linear_extensions(t),
            witness,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(n: usize) -> RootedForest {
        let p: Vec<_> = (0..n).map(|i| if i == 0 { None } else { Some(0) }).collect();
        RootedForest::from_parents(&p).unwrap()
    }

    fn path(n: usize) -> RootedForest {
        let p: Vec<_> = (0..n).map(|i| i.checked_sub(1)).collect();
        RootedForest::from_parents(&p).unwrap()
    }

    #[test]
    fn entropies() {
        assert!((tree_entropy(&star(5)) - 4.0 * 5f64.log2()).abs() < 1e-9);
        assert!((tree_entropy(&path(5)) - (625f64 / 24.0).log2()).abs() < 1e-9);
        assert_eq!(tree_entropy(&path(1)), 0.0);
        let s = star(5);
        assert_eq!(entropy_subset(&s, &[NodeId::new(1), NodeId::new(2)]), 2.0);
        assert_eq!(entropy_subset(&s, &[NodeId::new(0)]), 0.0);
        assert_eq!(entropy_k(&s, 2).0, 2.0);
        assert!((entropy_k(&s, 9).0 - tree_entropy(&s)).abs() < 1e-9);
    }

    #[test]
    fn counts() {
        assert_eq!(count_linear_extensions(&path(6)), BigUint::one());
        assert_eq!(count_linear_extensions(&star(5)), BigUint::from(24u32));
        let t = RootedForest::from_parents(&[None, Some(0), Some(0), Some(1)]).unwrap();
        assert_eq!(count_linear_extensions(&t), BigUint::from(3u32));
        assert_eq!(enumerate_le_prefixes(&t, 4).unwrap(), BigUint::from(3u32));
        assert_eq!(enumerate_le_prefixes(&star(4), 2).unwrap(), BigUint::from(6u32));
        assert_eq!(enumerate_le_prefixes(&star(4), 0).unwrap(), BigUint::one());
        assert_eq!(count_le_subset(&t, &[]), BigUint::one());
        assert!(matches!(enumerate_le_prefixes(&path(13), 1), Err(Error::TooLarge(13))));
    }

    #[test]
    fn bounds() {
        assert_eq!(lower_bound(&path(10), 1), 10.0);
        assert!(h_tilde_bound_check(&star(6), 3));
        assert!((log2_big(&(BigUint::one() << 100u32)) - 100.0).abs() < 1e-9);
    }
}
