use thiserror::Error;

use crate::forest::NodeId;

/// Errors reported by the structures in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parent pointers contain a cycle through node {0}")]
    CycleDetected(usize),
    #[error("node {node} refers to missing parent {parent}")]
    DanglingParent { node: usize, parent: usize },
    #[error("child order of node {0} is inconsistent with the parent array")]
    InconsistentChildOrder(usize),
    #[error("node {0:?} is a root")]
    IsRoot(NodeId),
    #[error("node {0:?} is not alive")]
    DeadNode(NodeId),
    #[error("component of node {0:?} is not a path rooted at an endpoint")]
    NotAPathForest(NodeId),
    #[error("sequence is empty")]
    Empty,
    #[error("element {0:?} is not present")]
    NotPresent(NodeId),
    #[error("element {0:?} is already present")]
    AlreadyPresent(NodeId),
    #[error("interval endpoints are out of order")]
    OutOfOrder,
    #[error("element {0:?} appears twice")]
    DuplicateElement(NodeId),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("input too large for exhaustive computation (n = {0})")]
    TooLarge(usize),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
