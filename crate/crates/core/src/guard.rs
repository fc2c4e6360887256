//! Caps on combinatorial sizes.

pub const DEFAULT_SIZE_GUARD: usize = 1_000_000;

/// Largest number of cells (chain basis elements, simplices, orbits) a
/// single level may have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeGuard(pub usize);

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard(DEFAULT_SIZE_GUARD)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{what} needs {needed} cells, above the size guard of {cap}")]
pub struct SizeGuardExceeded {
    pub what: String,
    pub needed: u128,
    pub cap: usize,
}

impl SizeGuard {
    pub fn check(&self, what: impl Into<String>, needed: u128) -> Result<(), SizeGuardExceeded> {
        if needed > self.0 as u128 {
            return Err(SizeGuardExceeded {
                what: what.into(),
                needed,
                cap: self.0,
            });
        }
        Ok(())
    }
}
