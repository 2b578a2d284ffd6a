//! Decremental tree minima with comparison-optimal bounds.
//!
//! The central structure is [`dtm::UoDtm`]: a rooted forest under `cut`,
//! answering `tree_min` for any node. Priorities are hidden behind a
//! [`PriorityOracle`] that counts comparisons, so the cost model is the
//! number of oracle calls.
//!
//! Building blocks live in their own modules: root maintenance
//! ([`roots`]), path engines ([`path`]), Euler-tour dynamic forests
//! ([`dynamic_forest`]), splay sequences ([`ssm`]), extremal leaves
//! ([`extremal`]) and chain compression ([`compression`]). On top sit
//! Cartesian trees on graphs ([`cartesian`]), zero-comparison path-minimum
//! indexes ([`path_minima`]) and the entropy bounds used to judge them
//! ([`entropy`]).

pub mod cartesian;
pub mod compression;
pub mod dtm;
pub mod dynamic_forest;
pub mod entropy;
pub mod error;
pub mod extremal;
pub mod forest;
pub mod oracle;
pub mod path;
pub mod path_minima;
pub mod reference;
mod rmq;
pub mod roots;
pub mod ssm;

pub use error::{Error, Result};
pub use forest::{EdgeId, Graph, NodeId, RootedForest};
pub use oracle::{OracleMin, Prio, PriorityOracle, Semigroup};
