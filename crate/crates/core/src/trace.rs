//! Repair accounting: what moved, and across which boundary.

use std::collections::BTreeMap;

/// Ledger of symbols moved during one repair: cross-rack downloads split per
/// helper rack, intra-rack (host rack) reads, and the recovered content.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairTrace {
    pub cross_rack_symbols: usize,
    pub intra_rack_symbols: usize,
    pub per_helper: BTreeMap<usize, usize>,
    pub recovered: Vec<u64>,
}

impl RepairTrace {
    pub fn new(recovered: Vec<u64>, intra_rack_symbols: usize, per_helper: BTreeMap<usize, usize>) -> Self {
        let cross_rack_symbols = per_helper.values().sum();
        RepairTrace {
            cross_rack_symbols,
            intra_rack_symbols,
            per_helper,
            recovered,
        }
    }
}
