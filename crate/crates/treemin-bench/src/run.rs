//! Running one workload against one structure.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::Hasher;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use treemin::dtm::{NaiveDtm, TreeMinima, UoDtm};
use treemin::entropy::{entropy_k, entropy_subset, lower_bound, tree_entropy};
use treemin::path::PathDtm;
use treemin::reference::ScanDtm;
use treemin::{Error, NodeId, PriorityOracle, Result, RootedForest};

use crate::generate::{Family, Fixture};
use crate::workload::{monotone_ranks, random_ranks, Workload, WorkloadKind};

/// Largest fixture checked against the scan oracle under `verify`.
pub const VERIFY_LIMIT: usize = 300;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Structure {
    Uo,
    Naive,
    Path,
    Brute,
}

impl Structure {
    pub const ALL: [Structure; 4] = [Structure::Uo, Structure::Naive, Structure::Path, Structure::Brute];

    pub fn name(self) -> &'static str {
        match self {
            Structure::Uo => "uo",
            Structure::Naive => "naive",
            Structure::Path => "path",
            Structure::Brute => "brute",
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Structure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Structure::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::BadParams(format!("unknown structure `{s}`")))
    }
}

/// Per-case cut counts of the composed structure.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCounts {
    pub cuts: u64,
    pub super_cuts: u64,
    pub isolated_splits: u64,
    pub root_splits: u64,
    pub leaf_splits: u64,
    pub inner_splits: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub family: Family,
    pub n: usize,
    pub fixture_seed: u64,
    pub structure: Structure,
    pub workload: String,
    pub pseed: u64,
    /// Operations performed (queries plus cuts).
    pub m: usize,
    pub cuts: usize,
    pub leaves: usize,
    pub comparisons: u64,
    pub wall_ms: f64,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "H_m")]
    pub h_m: f64,
    /// `H_S` of the initial tree for the set `S` of cut nodes.
    #[serde(rename = "H_S")]
    pub h_s: f64,
    pub lower_bound: f64,
    /// `m + n + min(m, ℓ)·log n + H_S`.
    pub refined_bound: f64,
    /// `comparisons / (m + n + H_m)`.
    pub ratio: f64,
    pub cases: Option<CaseCounts>,
    pub verified: bool,
    /// Hash of the answer stream.
    pub digest: u64,
}

impl RunRecord {
    /// Equal up to wall time.
    pub fn same_outcome(&self, other: &RunRecord) -> bool {
        let mut a = self.clone();
        a.wall_ms = other.wall_ms;
        &a == other
    }
}

#[allow(clippy::large_enum_variant)]
enum Built {
    Uo(UoDtm<treemin::OracleMin>),
    Scan(ScanDtm),
    Other(Box<dyn TreeMinima>),
}

impl Built {
    fn dtm(&mut self) -> &mut dyn TreeMinima {
        match self {
            Built::Uo(d) => d,
            Built::Scan(d) => d,
            Built::Other(d) => d.as_mut(),
        }
    }
}

fn build(structure: Structure, t: &RootedForest, o: &PriorityOracle) -> Result<Built> {
    Ok(match structure {
        Structure::Uo => Built::Uo(UoDtm::new_min(t.clone(), o)?),
        Structure::Naive => Built::Other(Box::new(NaiveDtm::new_min(t.clone(), o))),
        Structure::Path => Built::Other(Box::new(PathDtm::new(t.clone(), o)?)),
        Structure::Brute => Built::Scan(ScanDtm::new(t.clone(), o)),
    })
}

struct Driver<'a> {
    d: &'a mut dyn TreeMinima,
    check: Option<ScanDtm>,
    hash: DefaultHasher,
    ops: usize,
    cut: Vec<NodeId>,
}

impl Driver<'_> {
    fn tree_min(&mut self, v: NodeId) -> Result<Option<NodeId>> {
        self.ops += 1;
        let got = self.d.tree_min(v)?;
        if let Some(s) = &self.check {
            let want = s.tree_min_node(v)?;
            if got != want {
                return Err(Error::OracleMismatch(format!("tree_min({v}) = {got:?}, scan says {want:?}")));
            }
        }
        self.hash.write_u64(got.map_or(u64::MAX, |x| x.index() as u64));
        Ok(got)
    }

    fn cut(&mut self, v: NodeId) -> Result<()> {
        self.ops += 1;
        self.d.cut(v)?;
        if let Some(s) = &mut self.check {
            s.cut(v)?;
        }
        self.cut.push(v);
        Ok(())
    }
}

/// Runs `workload` on the tree fixture. With `verify`, every answer is
/// compared to a scan oracle (fixtures up to [`VERIFY_LIMIT`] nodes) and a
/// disagreement is an [`Error::OracleMismatch`].
pub fn run(fixture: &Fixture, structure: Structure, workload: Workload, pseed: u64, verify: bool) -> Result<RunRecord> {
    let t = fixture.tree()?;
    let n = t.live_count();
    let mut prng = ChaCha8Rng::seed_from_u64(pseed);
    let ranks = if workload.kind.monotone() {
        monotone_ranks(t, &mut prng)
    } else {
        random_ranks(t.len(), &mut prng)
    };
    let o = PriorityOracle::from_ranks(ranks)?;
    let verified = verify && n <= VERIFY_LIMIT;
    let start = Instant::now();
    let mut built = build(structure, t, &o)?;
    let mut drv = Driver {
        d: built.dtm(),
        check: verified.then(|| ScanDtm::new(t.clone(), &o)),
        hash: DefaultHasher::new(),
        ops: 0,
        cut: Vec::new(),
    };
    let mut wrng = ChaCha8Rng::seed_from_u64(workload.seed);
    match workload.kind {
        WorkloadKind::TreeSort | WorkloadKind::TopK(_) => {
            let root = t.roots().next().ok_or(Error::BadParams("empty fixture".into()))?;
            let rounds = match workload.kind {
                WorkloadKind::TopK(k) => k.min(n - 1),
                _ => n - 1,
            };
            for _ in 0..rounds {
                let v = drv.tree_min(root)?.expect("every node has a priority");
                if v == root {
                    return Err(Error::OracleMismatch(format!("tree_min returned the root {v} before the end")));
                }
                drv.cut(v)?;
            }
        }
        WorkloadKind::RandomCuts => {
            let mut order: Vec<NodeId> = t.nodes().filter(|&v| !t.is_root(v)).collect();
            order.shuffle(&mut wrng);
            let all: Vec<NodeId> = t.nodes().collect();
            while drv.ops < workload.m {
                if wrng.gen_bool(0.5) {
                    if let Some(v) = order.pop() {
                        drv.cut(v)?;
                        continue;
                    }
                }
                drv.tree_min(all[wrng.gen_range(0..all.len())])?;
            }
        }
        WorkloadKind::Mixed => {
            let all: Vec<NodeId> = t.nodes().collect();
            while drv.ops < workload.m {
                let v = all[wrng.gen_range(0..all.len())];
                if let Some(w) = drv.tree_min(v)? {
                    if drv.d.forest().parent(w).is_some() && drv.ops < workload.m {
                        drv.cut(w)?;
                    }
                }
            }
        }
    }
    let (ops, cut, digest) = (drv.ops, std::mem::take(&mut drv.cut), drv.hash.finish());
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let comparisons = match &built {
        // the scan structure counts on its own fork
        Built::Scan(s) => s.comparisons(),
        _ => o.comparisons(),
    };
    let cases = match &built {
        Built::Uo(d) => {
            let s = d.stats();
            Some(CaseCounts {
                cuts: s.cuts,
                super_cuts: s.super_cuts,
                isolated_splits: s.isolated_splits,
                root_splits: s.root_splits,
                leaf_splits: s.leaf_splits,
                inner_splits: s.inner_splits,
            })
        }
        _ => None,
    };
    let leaves = t.nodes().filter(|&v| t.is_leaf(v)).count();
    let h = tree_entropy(t);
    let (h_m, _) = entropy_k(t, ops);
    let h_s = entropy_subset(t, &cut);
    let nf = n as f64;
    let refined_bound = ops as f64 + nf + (ops.min(leaves) as f64) * nf.log2() + h_s;
    Ok(RunRecord {
        family: fixture.family,
        n,
        fixture_seed: fixture.seed,
        structure,
        workload: workload.kind.to_string(),
        pseed,
        m: ops,
        cuts: cut.len(),
        leaves,
        comparisons,
        wall_ms,
        h,
        h_m,
        h_s,
        lower_bound: lower_bound(t, ops),
        refined_bound,
        ratio: comparisons as f64 / (ops as f64 + nf + h_m),
        cases,
        verified,
        digest,
    })
}
