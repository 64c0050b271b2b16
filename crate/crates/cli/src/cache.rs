use std::fs;
use std::hash::Hasher;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use fnv::FnvHasher;
use magbrauer_core::cohom::{cohomology, Budget, CoefficientModel, CohomologyGroup};
use magbrauer_core::{MagneticGroup, Result};
use serde::{Deserialize, Serialize};
use serde_json::json;

pub const DEFAULT_DIR: &str = ".magbrauer-cache";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub payload: CohomologyGroup,
    pub engine_version: String,
}

/// Canonical serialization of (Cayley table, phi bits, model, degree).
pub fn canonical_key(m: &MagneticGroup, model: CoefficientModel, degree: usize) -> String {
    json!({
        "table": m.group.table,
        "phi": m.phi,
        "model": model.to_string(),
        "degree": degree,
    })
    .to_string()
}

/// 64-bit FNV-1a.
pub fn fnv64(s: &str) -> u64 {
    let mut h = FnvHasher::default();
    h.write(s.as_bytes());
    h.finish()
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// Flag first, then `MAGBRAUER_CACHE`, then the default directory.
    pub fn resolve(flag: Option<PathBuf>) -> Cache {
        let dir = flag
            .or_else(|| std::env::var_os("MAGBRAUER_CACHE").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
        Cache { dir }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, hash: u64) -> PathBuf {
        self.dir.join(format!("{hash:016x}.json"))
    }

    /// A hit needs a matching version, an identical key and a payload that validates.
    pub fn lookup(&self, m: &MagneticGroup, model: CoefficientModel, degree: usize) -> Option<CohomologyGroup> {
        let key = canonical_key(m, model, degree);
        let text = fs::read_to_string(self.path(fnv64(&key))).ok()?;
        let e: CacheEntry = serde_json::from_str(&text).ok()?;
        let ok = e.engine_version == magbrauer_core::VERSION
            && e.key == key
            && e.payload.degree == degree
            && e.payload.model == model
            && e.payload.validate(m).is_ok();
        ok.then_some(e.payload)
    }

    /// Writes to a temporary file in the cache directory, then renames it into place.
    pub fn store(&self, m: &MagneticGroup, model: CoefficientModel, degree: usize, h: &CohomologyGroup) -> io::Result<()> {
        let key = canonical_key(m, model, degree);
        let entry = CacheEntry {
            key: key.clone(),
            payload: h.clone(),
            engine_version: magbrauer_core::VERSION.into(),
        };
        fs::create_dir_all(&self.dir)?;
        let target = self.path(fnv64(&key));
        let nanos = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_nanos());
        let tmp = self.dir.join(format!(".{:016x}.{}.{nanos}.tmp", fnv64(&key), std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry).map_err(io::Error::other)?)?;
        fs::rename(&tmp, &target).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }

    /// Returns the group and whether it came from the cache.
    pub fn cohomology(&self, m: &MagneticGroup, model: CoefficientModel, degree: usize, budget: &Budget) -> Result<(CohomologyGroup, bool)> {
        if let Some(h) = self.lookup(m, model, degree) {
            return Ok((h, true));
        }
        let h = cohomology(m, model, degree, budget)?;
        if let Err(e) = self.store(m, model, degree, &h) {
            eprintln!("warning: cannot write cache entry in {}: {e}", self.dir.display());
        }
        Ok((h, false))
    }

    /// Entry files in name order; unreadable entries come back as `None`.
    pub fn entries(&self) -> Vec<(String, Option<CacheEntry>)> {
        let Ok(rd) = fs::read_dir(&self.dir) else {
            return Vec::new();
        };
        let mut out: Vec<(String, Option<CacheEntry>)> = rd
            .flatten()
            .filter_map(|e| {
                let name = e.file_name().to_string_lossy().into_owned();
                let stem = name.strip_suffix(".json")?.to_string();
                let entry = fs::read_to_string(e.path()).ok().and_then(|t| serde_json::from_str(&t).ok());
                Some((stem, entry))
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Removes entry files and stale temporaries; returns the number of entries removed.
    pub fn clear(&self) -> io::Result<usize> {
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e),
        };
        let mut n = 0;
        for e in rd.flatten() {
            let name = e.file_name().to_string_lossy().into_owned();
            if name.ends_with(".json") {
                fs::remove_file(e.path())?;
                n += 1;
            } else if name.ends_with(".tmp") {
                fs::remove_file(e.path())?;
            }
        }
        Ok(n)
    }
}
