//! Optional TOML configuration.
//!
//! ```toml
//! max_classes = 200000
//! max_matrix_entries = 50000000
//! threads = 4
//! odd_sign_mode = "literal"
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::Failure;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub max_classes: Option<usize>,
    pub max_matrix_entries: Option<usize>,
    pub threads: Option<usize>,
    /// Only `literal` is supported: the odd convention keeps the edge-label
    /// sign alongside orientation reversal.
    pub odd_sign_mode: Option<String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })?;
        let cfg: Config = toml::from_str(&text)
            .map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })?;
        if let Some(mode) = &cfg.odd_sign_mode {
            if mode != "literal" {
                return Err(Failure { code: 2, message: format!("unsupported odd-sign-mode {mode:?}; only \"literal\" exists") });
            }
        }
        Ok(cfg)
    }
}
