//! On-disk cache of Gram matrices keyed by group type, label and the
//! SHA-256 of the W-graph file they were computed from.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::formats::{parse_gram, write_gram};
use crate::gram::GramMatrix;
use crate::wgraph::GenMatrices;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "HECKE_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct GramCache {
    dir: PathBuf,
}

impl GramCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        GramCache { dir: dir.into() }
    }

    /// The cache named by [`CACHE_ENV`], if set and nonempty.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(GramCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// File name for a cache entry; labels are reduced to a safe alphabet.
    pub fn key(m: &GenMatrices, wgraph_text: &str) -> String {
        let label: String = m.label.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '-' { c } else { '_' }).collect();
        let digest = hex::encode(Sha256::digest(wgraph_text.as_bytes()));
        format!("{}-{label}-{digest}.toml", m.weyl)
    }

    /// A cached Gram matrix, reused only if it parses and still satisfies
    /// the invariance equations for `m`.
    pub fn load(&self, m: &GenMatrices, wgraph_text: &str) -> Option<GramMatrix> {
        let text = fs::read_to_string(self.dir.join(Self::key(m, wgraph_text))).ok()?;
        let q = parse_gram(&text).ok()?;
        (q.weyl == m.weyl && q.label == m.label && q.verify_invariance(m)).then_some(q)
    }

    pub fn store(&self, m: &GenMatrices, wgraph_text: &str, q: &GramMatrix) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.dir.join(Self::key(m, wgraph_text));
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, write_gram(q))?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}
