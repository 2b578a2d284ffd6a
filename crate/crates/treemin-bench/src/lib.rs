//! Fixture generators, workload drivers and reporting for the `treemin`
//! command-line harness.

pub mod cartesian;
pub mod generate;
pub mod report;
pub mod run;
pub mod workload;

use rayon::prelude::*;

use generate::{Family, Params};
use run::{RunRecord, Structure};
use treemin::Result;
use workload::{Workload, WorkloadKind};

/// One trial of a sweep.
#[derive(Clone, Debug)]
pub struct Trial {
    pub family: Family,
    pub n: usize,
    pub fixture_seed: u64,
    pub structure: Structure,
    pub kind: WorkloadKind,
    pub m: usize,
    pub pseed: u64,
}

impl Trial {
    pub fn run(&self, verify: bool) -> Result<RunRecord> {
        let fx = generate::generate(self.family, self.n, self.fixture_seed, Params::default())?;
        let w = Workload {
            kind: self.kind,
            m: self.m,
            seed: self.pseed,
        };
        run::run(&fx, self.structure, w, self.pseed, verify)
    }
}

/// Runs trials on the rayon pool; results keep the input order.
pub fn run_trials(trials: &[Trial], verify: bool) -> Vec<Result<RunRecord>> {
    trials.par_iter().map(|t| t.run(verify)).collect()
}
