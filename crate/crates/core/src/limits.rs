use serde::{Deserialize, Serialize};

/// Resource caps shared by enumeration and Lang solving.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest finite group `|G(F_{q^m})|` that may be enumerated.
    pub max_group_order: u64,
    /// Cap on the extension multiplier `N` of a Lang witness over
    /// `F_{q^m}`. `None` means `p^d`, the most a triangular law can need.
    pub max_extension: Option<u32>,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_group_order: 2_000_000,
            max_extension: None,
        }
    }
}

impl Limits {
    pub fn extension_cap(&self, p: u32, dim: usize) -> u32 {
        self.max_extension
            .unwrap_or_else(|| p.saturating_pow(dim as u32))
    }
}
