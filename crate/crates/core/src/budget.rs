use crate::error::{Error, Result};

/// Limits on brute-force enumeration.
///
/// `max_len` bounds the length of permutations enumerated exhaustively
/// (`max_len!` permutations); `max_tabloid_len` bounds the object spaces of
/// [`crate::tabloids`], which are `2^(n-1)` times larger.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_len: usize,
    pub max_tabloid_len: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_len: 10,
            max_tabloid_len: 8,
        }
    }
}

impl Budget {
    pub fn with_max_len(max_len: usize) -> Self {
        Budget {
            max_len,
            ..Budget::default()
        }
    }

    pub fn check_len(&self, what: &str, len: usize) -> Result<()> {
        if len > self.max_len {
            return Err(Error::Budget {
                what: what.to_string(),
                needed: len,
                limit: self.max_len,
            });
        }
        Ok(())
    }

    pub fn check_tabloid_len(&self, what: &str, len: usize) -> Result<()> {
        if len > self.max_tabloid_len {
            return Err(Error::Budget {
                what: what.to_string(),
                needed: len,
                limit: self.max_tabloid_len,
            });
        }
        Ok(())
    }
}
