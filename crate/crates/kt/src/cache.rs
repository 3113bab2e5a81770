//! The base-case cache on disk: one canonical tour file per manifest entry
//! (`base_<dims>_<tag>.json`) plus `manifest.json`, which lists every
//! required entry, the site certificates of the chain prisms, and the
//! golden 3 x 10 tour count.

use std::fs;
use std::path::{Path, PathBuf};

use knight_tour_core::catalog::{
    bootstrap, chain_site_edges, default_manifest, BaseEntry, BaseLibrary, BaseTag, Failure,
};
use knight_tour_core::solver::{count_tours, Budget, Clock, CountOutcome, NoClock};
use knight_tour_core::{BoardShape, ConstructError, MoveSpec};
use serde::{Deserialize, Serialize};

use crate::json::{from_json, to_json};
use crate::parallel::InstantClock;
use crate::Error;

pub const CACHE_ENV: &str = "KT_CACHE_DIR";
const MANIFEST: &str = "manifest.json";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Golden {
    pub closed_tours_3x10: u64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestFile {
    entries: Vec<ManifestEntry>,
    golden: Option<Golden>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestEntry {
    key: String,
    file: String,
    closed: bool,
    /// Bottom and top site of a chain prism, as four edges of two cells each.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    sites: Vec<[Vec<usize>; 2]>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheReport {
    pub solved: Vec<String>,
    pub reused: Vec<String>,
    pub failed: Vec<(String, String)>,
    pub golden: Option<Golden>,
}

impl CacheReport {
    pub fn is_complete(&self) -> bool {
        self.failed.is_empty()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BootstrapOptions {
    pub budget: Budget,
    /// Ignore wall-clock limits so that results depend only on the inputs.
    pub deterministic: bool,
}

impl Default for BootstrapOptions {
    fn default() -> Self {
        BootstrapOptions { budget: Budget::default(), deterministic: true }
    }
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$KT_CACHE_DIR`, or `./kt-cache`.
    pub fn from_env() -> Self {
        Cache::new(std::env::var_os(CACHE_ENV).map_or_else(|| PathBuf::from("kt-cache"), PathBuf::from))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn file_name(entry: &BaseEntry) -> String {
        format!("base_{}.json", entry.key)
    }

    /// Every cached entry of `manifest` that checks out against its constraints.
    pub fn load_entries(&self, manifest: &[BaseEntry]) -> Result<BaseLibrary, Error> {
        let mut lib = BaseLibrary::new();
        for entry in manifest {
            let path = self.dir.join(Cache::file_name(entry));
            let text = match fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => continue,
                Err(e) => return Err(Error::io(path, e)),
            };
            let (route, closed) = from_json(&text)?;
            if closed != entry.constraints.closed {
                return Err(Error::Parse(format!("{}: wrong walk kind", path.display())));
            }
            lib.insert(entry, route)?;
        }
        Ok(lib)
    }

    pub fn load(&self) -> Result<BaseLibrary, Error> {
        self.load_entries(&default_manifest())
    }

    /// The full library, or `BootstrapIncomplete` naming the first gap.
    pub fn load_complete(&self) -> Result<BaseLibrary, Error> {
        let manifest = default_manifest();
        let lib = self.load_entries(&manifest)?;
        match lib.missing(&manifest).first() {
            Some(key) => Err(ConstructError::BootstrapIncomplete(key.to_string()).into()),
            None => Ok(lib),
        }
    }

    pub fn golden(&self) -> Result<Option<Golden>, Error> {
        Ok(self.read_manifest()?.and_then(|m| m.golden))
    }

    fn read_manifest(&self) -> Result<Option<ManifestFile>, Error> {
        let path = self.dir.join(MANIFEST);
        match fs::read_to_string(&path) {
            Ok(t) => Ok(Some(serde_json::from_str(&t)?)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(Error::io(path, e)),
        }
    }

    fn write(&self, name: &str, contents: &str) -> Result<(), Error> {
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(|e| Error::io(path, e))
    }

    /// Solves every entry of `manifest` that is not cached yet, writes the
    /// new tours, and records the golden count. Cached entries are reused,
    /// so a second run changes nothing.
    pub fn bootstrap(&self, manifest: &[BaseEntry], opts: BootstrapOptions) -> Result<CacheReport, Error> {
        fs::create_dir_all(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
        let mut lib = self.load_entries(manifest)?;
        let mut report = CacheReport::default();
        for entry in manifest {
            let clock: Box<dyn Clock> =
                if opts.deterministic { Box::new(NoClock) } else { Box::new(InstantClock::start()) };
            let r = bootstrap(&mut lib, std::slice::from_ref(entry), opts.budget, clock.as_ref());
            let name = entry.key.to_string();
            if !r.reused.is_empty() {
                report.reused.push(name);
            } else if !r.solved.is_empty() {
                let route = lib.get(&entry.key)?;
                self.write(&Cache::file_name(entry), &to_json(route, entry.constraints.closed))?;
                report.solved.push(name);
            } else {
                let why = match &r.failed[0].1 {
                    Failure::Exhausted => "exhausted: no walk meets the constraints".to_string(),
                    Failure::TimedOut => "search budget ran out".to_string(),
                    Failure::Malformed(m) => format!("malformed entry: {m}"),
                };
                report.failed.push((name, why));
            }
        }
        let golden = match self.golden()? {
            Some(g) => Some(g),
            None => golden_count(opts.budget),
        };
        report.golden = golden;
        let entries = default_manifest().iter().map(manifest_entry).collect();
        let mut text = serde_json::to_string_pretty(&ManifestFile { entries, golden })?;
        text.push('\n');
        self.write(MANIFEST, &text)?;
        Ok(report)
    }
}

fn manifest_entry(entry: &BaseEntry) -> ManifestEntry {
    let mut sites = Vec::new();
    if entry.key.tag == BaseTag::Chain {
        let dims = &entry.key.dims;
        let shape = entry.shape();
        for x in [0, dims[0] - 1] {
            for e in chain_site_edges(dims, x) {
                sites.push([shape.cell(e.a()).0, shape.cell(e.b()).0]);
            }
        }
    }
    ManifestEntry { key: entry.key.to_string(), file: Cache::file_name(entry), closed: entry.constraints.closed, sites }
}

/// Number of closed tours of the 3 x 10 board, if counting fits the budget.
pub fn golden_count(budget: Budget) -> Option<Golden> {
    let shape = BoardShape::new(vec![3, 10]).expect("positive");
    match count_tours(&shape, &MoveSpec::knight(), Budget { max_time: None, ..budget }) {
        CountOutcome::Counted(n) => Some(Golden { closed_tours_3x10: n }),
        CountOutcome::TimedOut => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use knight_tour_core::catalog::{BaseEntry, BaseKey};
    use knight_tour_core::solver::SearchConstraints;

    #[test]
    fn bootstrap_is_idempotent_and_reports_impossible_entries() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        assert!(matches!(cache.load_complete(), Err(Error::Construct(ConstructError::BootstrapIncomplete(_)))));
        let first = cache.bootstrap(&default_manifest(), BootstrapOptions::default()).unwrap();
        assert!(first.is_complete() && first.reused.is_empty());
        let snapshot = fs::read_to_string(dir.path().join(MANIFEST)).unwrap();
        let second = cache.bootstrap(&default_manifest(), BootstrapOptions::default()).unwrap();
        assert!(second.solved.is_empty());
        assert_eq!(fs::read_to_string(dir.path().join(MANIFEST)).unwrap(), snapshot);
        assert_eq!(cache.load_complete().unwrap(), BaseLibrary::bootstrapped().unwrap());

        let dummy = BaseEntry {
            key: BaseKey::new(&[4, 2, 2], BaseTag::Chain),
            moves: MoveSpec::knight(),
            constraints: SearchConstraints::closed(),
        };
        let report = cache.bootstrap(&[dummy], BootstrapOptions::default()).unwrap();
        assert!(!report.is_complete());
        assert!(report.failed[0].1.starts_with("exhausted"));
    }
}
