//! On-disk lattice cache.
//!
//! One JSON file per group, named by the SHA-256 digest of the canonical
//! Cayley table (`<digest>.json`):
//!
//! ```json
//! {
//!   "format": "subcomm-lattice",
//!   "version": 1,
//!   "digest": "<64 hex digits>",
//!   "label": "S3",
//!   "order": 6,
//!   "elements": ["()", "(2,3)", ...],
//!   "subgroups": [
//!     {"bits": "01", "order": 1, "maximal": false, "normal": true, "class": 0},
//!     ...
//!   ]
//! }
//! ```
//!
//! `bits` is the member set as a big-endian hex number (bit `i` is element
//! `i` of `elements`). Subgroups are listed in canonical lattice order.
//!
//! A file is trusted only if its header matches the group, every entry is a
//! subgroup, every cyclic subgroup is present, the list is closed under
//! conjugation, and the stored flags and class ids agree with the ones
//! recomputed from the list. Anything else is treated as a miss and the
//! lattice is recomputed and rewritten.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::lattice::Lattice;

pub const CACHE_FORMAT: &str = "subcomm-lattice";
pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: String,
    version: u32,
    digest: String,
    label: String,
    order: usize,
    elements: Vec<String>,
    subgroups: Vec<CachedSubgroup>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq)]
struct CachedSubgroup {
    bits: String,
    order: usize,
    maximal: bool,
    normal: bool,
    class: usize,
}

fn entries(lat: &Lattice) -> Vec<CachedSubgroup> {
    let maximal = lat.maximal_subgroups();
    lat.subgroups()
        .iter()
        .enumerate()
        .map(|(i, h)| CachedSubgroup {
            bits: h.members().to_hex(),
            order: h.size(),
            maximal: maximal.contains(&i),
            normal: lat.is_normal(i),
            class: lat.class_of(i),
        })
        .collect()
}

pub fn to_cache_json(lat: &Lattice) -> String {
    let g = lat.group();
    let file = CacheFile {
        format: CACHE_FORMAT.into(),
        version: CACHE_VERSION,
        digest: g.digest_hex(),
        label: g.label().into(),
        order: g.order(),
        elements: g.names().to_vec(),
        subgroups: entries(lat),
    };
    serde_json::to_string_pretty(&file).expect("cache file serializes")
}

/// Parses and fully revalidates a cache file against `g`.
pub fn from_cache_json(g: Arc<GroupTable>, text: &str) -> Result<Lattice> {
    let bad = |m: String| Error::Cache(m);
    let file: CacheFile = serde_json::from_str(text).map_err(|e| bad(format!("unreadable: {e}")))?;
    if file.format != CACHE_FORMAT || file.version != CACHE_VERSION {
        return Err(bad(format!("unsupported format {} v{}", file.format, file.version)));
    }
    if file.digest != g.digest_hex() || file.order != g.order() {
        return Err(bad("file belongs to a different group".into()));
    }
    if file.elements != g.names() {
        return Err(bad("element names differ".into()));
    }
    let mut sets = Vec::with_capacity(file.subgroups.len());
    for (i, s) in file.subgroups.iter().enumerate() {
        let b = BitSet::from_hex(g.order(), &s.bits).ok_or_else(|| bad(format!("subgroup {i}: bad bitset")))?;
        if !g.is_subgroup(&b) {
            return Err(bad(format!("subgroup {i} is not closed")));
        }
        sets.push(b);
    }
    if sets.windows(2).any(|w| (w[0].count(), &w[0]) >= (w[1].count(), &w[1])) {
        return Err(bad("subgroups are not in canonical order".into()));
    }
    let lat = Lattice::from_subgroups(g.clone(), sets).map_err(|e| bad(e.to_string()))?;
    for x in 0..g.order() {
        if lat.index_of_set(&g.closure(&[x])).is_none() {
            return Err(bad(format!("cyclic subgroup of {} missing", g.name(x))));
        }
    }
    if entries(&lat) != file.subgroups {
        return Err(bad("stored flags or class ids disagree with the subgroup list".into()));
    }
    Ok(lat)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    /// The file existed but failed validation; the reason is kept.
    Rejected(String),
}

#[derive(Clone, Debug)]
pub struct LatticeCache {
    dir: PathBuf,
}

impl LatticeCache {
    pub fn new(dir: impl Into<PathBuf>) -> LatticeCache {
        LatticeCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, g: &GroupTable) -> PathBuf {
        self.dir.join(format!("{}.json", g.digest_hex()))
    }

    pub fn load(&self, g: Arc<GroupTable>) -> std::result::Result<Option<Lattice>, String> {
        let path = self.path_for(&g);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(format!("{}: {e}", path.display())),
        };
        from_cache_json(g, &text).map(Some).map_err(|e| e.to_string())
    }

    /// Writes through a temporary file so readers never see a partial file.
    pub fn store(&self, lat: &Lattice) -> Result<()> {
        let io = |e: std::io::Error| Error::Cache(e.to_string());
        fs::create_dir_all(&self.dir).map_err(io)?;
        let path = self.path_for(lat.group());
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, to_cache_json(lat)).map_err(io)?;
        fs::rename(&tmp, &path).map_err(io)
    }

    /// Loads a valid cached lattice or enumerates and stores a fresh one.
    /// Write failures are ignored; the cache is an optimization.
    pub fn get_or_enumerate(&self, g: Arc<GroupTable>) -> (Lattice, CacheStatus) {
        let status = match self.load(g.clone()) {
            Ok(Some(lat)) => return (lat, CacheStatus::Hit),
            Ok(None) => CacheStatus::Miss,
            Err(reason) => CacheStatus::Rejected(reason),
        };
        let lat = Lattice::enumerate(g);
        let _ = self.store(&lat);
        (lat, status)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_symmetric;

    #[test]
    fn json_round_trip() {
        let g = Arc::new(make_symmetric(3).unwrap());
        let lat = Lattice::enumerate(g.clone());
        let text = to_cache_json(&lat);
        assert!(text.contains("\"version\": 1"));
        let back = from_cache_json(g, &text).unwrap();
        assert_eq!(back.subgroups(), lat.subgroups());
    }

    #[test]
    fn rejects_wrong_group() {
        let s3 = Arc::new(make_symmetric(3).unwrap());
        let s4 = Arc::new(make_symmetric(4).unwrap());
        let text = to_cache_json(&Lattice::enumerate(s3));
        assert!(from_cache_json(s4, &text).unwrap_err().to_string().contains("different group"));
    }
}
