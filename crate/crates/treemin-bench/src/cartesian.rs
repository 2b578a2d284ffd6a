//! Cartesian-tree runs on graph fixtures.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use treemin::cartesian::{cartesian_on_graph_traced, count_elimination_trees, HeapKind, MAX_COUNT_VERTICES};
use treemin::entropy::log2_big;
use treemin::reference::brute_cartesian;
use treemin::{Error, NodeId, Prio, PriorityOracle, Result};

use crate::generate::{Family, Fixture};
use crate::workload::random_ranks;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CartesianRecord {
    pub family: Family,
    pub n: usize,
    pub edges: usize,
    pub pseed: u64,
    pub comparisons: u64,
    /// `log2 |ET(G)|` when the graph is small enough to count exactly.
    pub log_et: Option<f64>,
    /// DJP timestamp diagnostic; absent when the input is a tree.
    pub djp_sum_log: Option<f64>,
    pub verified: bool,
}

/// Builds the Cartesian tree of the fixture graph under random priorities.
pub fn run_cartesian(fixture: &Fixture, pseed: u64, heap: HeapKind, verify: bool) -> Result<CartesianRecord> {
    let g = fixture.graph();
    let mut rng = ChaCha8Rng::seed_from_u64(pseed);
    let o = PriorityOracle::from_ranks(random_ranks(g.n(), &mut rng))?;
    let (et, trace) = cartesian_on_graph_traced(&g, &o, heap)?;
    let comparisons = o.comparisons();
    if verify {
        let prio: Vec<Prio> = (0..g.n()).map(|v| Prio::of(NodeId::new(v))).collect();
        if et.parents() != brute_cartesian(&g, &prio, &o).as_slice() {
            return Err(Error::OracleMismatch("Cartesian tree differs from the recursive definition".into()));
        }
    }
    let log_et = (g.n() <= MAX_COUNT_VERTICES)
        .then(|| count_elimination_trees(&g).map(|c| log2_big(&c)))
        .transpose()?;
    Ok(CartesianRecord {
        family: fixture.family,
        n: g.n(),
        edges: g.m(),
        pseed,
        comparisons,
        log_et,
        djp_sum_log: trace.map(|t| t.sum_log),
        verified: verify,
    })
}
