//! Chmutov threefolds and other nodal varieties with exactly known nodes.

mod enumerate;
mod variety;
mod verify;

pub use enumerate::{chmutov_nodes, enumerate_nodes, node_count_formula, Node, NodeSet};
pub use variety::{chmutov_variety, chmutov_variety_in, Chart, NodalVariety, SignPattern, VarietyKind};
pub use verify::{verify_all, verify_node, NodeChecker, NodeStatus};
