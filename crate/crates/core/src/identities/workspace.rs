use std::sync::OnceLock;

use crate::arith::{divisor_sum_table, sieve, FnId, FnTable};
use crate::error::{domain, Error, Result};
use crate::scalar::Real;
use crate::zeta::{OddZetaCache, ZeroTable, MAX_ODD_ZETA_K};

/// A function table together with its divisor sum `F = f ∗ 1`.
#[derive(Debug, Clone)]
pub struct TablePair<T> {
    pub base: FnTable<T>,
    pub divisor_sum: FnTable<T>,
}

impl<T: Real> TablePair<T> {
    pub fn new(base: FnTable<T>) -> Self {
        let divisor_sum = divisor_sum_table(&base);
        Self { base, divisor_sum }
    }
}

/// Tables sieved once to a common limit, the zero table, and the `ζ(2k+1)` cache.
///
/// Tables are built lazily on first use and shared read-only afterwards.
#[derive(Debug)]
pub struct Workspace<T> {
    limit: u64,
    builtin: [OnceLock<TablePair<T>>; 4],
    custom: Option<TablePair<T>>,
    zeros: Option<ZeroTable<T>>,
    zeta: OddZetaCache<T>,
}

fn slot(fn_id: FnId) -> Option<usize> {
    FnId::BUILTIN.iter().position(|f| *f == fn_id)
}

impl<T: Real> Workspace<T> {
    pub fn new(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(domain("workspace limit must be positive"));
        }
        Ok(Self {
            limit,
            builtin: Default::default(),
            custom: None,
            zeros: None,
            zeta: OddZetaCache::new(MAX_ODD_ZETA_K)?,
        })
    }

    pub fn with_zeros(mut self, zeros: ZeroTable<T>) -> Self {
        self.zeros = Some(zeros);
        self
    }

    /// Registers the table served for [`FnId::Custom`].
    pub fn with_custom(mut self, table: FnTable<T>) -> Result<Self> {
        if table.fn_id() != FnId::Custom {
            return Err(domain("custom slot takes a custom table"));
        }
        self.custom = Some(TablePair::new(table));
        Ok(self)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Sieves (once) and returns the tables for `fn_id`.
    pub fn pair(&self, fn_id: FnId) -> Result<&TablePair<T>> {
        match slot(fn_id) {
            Some(i) => {
                if let Some(p) = self.builtin[i].get() {
                    return Ok(p);
                }
                let pair = TablePair::new(sieve(fn_id, self.limit)?);
                Ok(self.builtin[i].get_or_init(|| pair))
            }
            None => self.custom.as_ref().ok_or_else(|| domain("no custom table registered")),
        }
    }

    pub fn zeros(&self) -> Result<&ZeroTable<T>> {
        self.zeros.as_ref().ok_or_else(|| Error::Domain("no zero table loaded".into()))
    }

    pub fn zeta(&self) -> &OddZetaCache<T> {
        &self.zeta
    }
}
