//! Size limits for every enumeration in the crate.

use serde::Serialize;

use crate::error::{Error, Result};

/// Configurable size caps. The defaults keep every computation at desk scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest ring that may be tabulated or searched.
    pub ring_order: usize,
    /// Largest finite group.
    pub group_order: usize,
    /// Largest abelian group used as a module.
    pub module_order: usize,
    /// Largest twisted group ring, |R|^|G|.
    pub twist_order: usize,
    /// Twisted group rings up to this order get full operation tables.
    pub materialize: usize,
    /// Node budget for backtracking searches.
    pub search_nodes: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            ring_order: 256,
            group_order: 64,
            module_order: 64,
            twist_order: 65536,
            materialize: 256,
            search_nodes: 2_000_000,
        }
    }
}

impl Caps {
    pub const NAMES: [&'static str; 6] = [
        "ring_order",
        "group_order",
        "module_order",
        "twist_order",
        "materialize",
        "search_nodes",
    ];

    pub fn set(&mut self, name: &str, value: usize) -> Result<()> {
        let slot = match name {
            "ring_order" => &mut self.ring_order,
            "group_order" => &mut self.group_order,
            "module_order" => &mut self.module_order,
            "twist_order" => &mut self.twist_order,
            "materialize" => &mut self.materialize,
            "search_nodes" => &mut self.search_nodes,
            _ => return Err(Error::InvalidRecipe(format!("unknown cap `{name}`"))),
        };
        *slot = value;
        Ok(())
    }

    pub(crate) fn ensure(cap: &'static str, limit: usize, actual: usize) -> Result<()> {
        if actual > limit {
            Err(Error::CapExceeded { cap, limit, actual })
        } else {
            Ok(())
        }
    }
}
