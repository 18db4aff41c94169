//! Process-wide computation budgets.
//!
//! Every exponential or table-driven routine consults these caps and fails
//! with [`Error::Budget`](crate::Error::Budget) instead of truncating. The
//! defaults suit everything in this crate's verification paths; front ends
//! may raise them with [`Limits::install`].

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_TABLE_CELLS: u64 = 10_000_000;
pub const DEFAULT_SUBSET_LEN: u64 = 30;
pub const DEFAULT_QUOTIENT_ORDER: u64 = 1_000_000;
pub const DEFAULT_SEARCH_SUM: u64 = 400;

static TABLE_CELLS: AtomicU64 = AtomicU64::new(DEFAULT_TABLE_CELLS);
static SUBSET_LEN: AtomicU64 = AtomicU64::new(DEFAULT_SUBSET_LEN);
static QUOTIENT_ORDER: AtomicU64 = AtomicU64::new(DEFAULT_QUOTIENT_ORDER);
static SEARCH_SUM: AtomicU64 = AtomicU64::new(DEFAULT_SEARCH_SUM);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Cells (degrees times weights) a monomial-count table may hold.
    pub table_cells: u64,
    /// Longest index set whose subsets may be enumerated.
    pub subset_len: u64,
    /// Largest cyclic group order the Reid-Tai loop accepts.
    pub quotient_order: u64,
    /// Largest weight sum the candidate search accepts.
    pub search_sum: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            table_cells: DEFAULT_TABLE_CELLS,
            subset_len: DEFAULT_SUBSET_LEN,
            quotient_order: DEFAULT_QUOTIENT_ORDER,
            search_sum: DEFAULT_SEARCH_SUM,
        }
    }
}

impl Limits {
    pub fn current() -> Limits {
        Limits {
            table_cells: TABLE_CELLS.load(Ordering::Relaxed),
            subset_len: SUBSET_LEN.load(Ordering::Relaxed),
            quotient_order: QUOTIENT_ORDER.load(Ordering::Relaxed),
            search_sum: SEARCH_SUM.load(Ordering::Relaxed),
        }
    }

    pub fn install(self) {
        TABLE_CELLS.store(self.table_cells, Ordering::Relaxed);
        SUBSET_LEN.store(self.subset_len, Ordering::Relaxed);
        QUOTIENT_ORDER.store(self.quotient_order, Ordering::Relaxed);
        SEARCH_SUM.store(self.search_sum, Ordering::Relaxed);
    }
}

pub(crate) fn check_subset_len(len: usize) -> Result<()> {
    let cap = Limits::current().subset_len;
    if len as u64 > cap {
        return Err(Error::Budget(format!(
            "subset enumeration over {len} indices exceeds cap {cap}"
        )));
    }
    Ok(())
}
