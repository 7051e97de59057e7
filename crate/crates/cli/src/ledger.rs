//! Append-only JSONL record of search results.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use grid_realizer::enumerate::canonical_label;
use grid_realizer::search::{SearchOutcome, SearchStats, SearchStatus};
use grid_realizer::{RealizationMode, Triangulation};
use serde::{Deserialize, Serialize};

use crate::Fail;

pub const LEDGER_ENV: &str = "GRID_REALIZER_LEDGER";
pub const DEFAULT_LEDGER: &str = "grid-realizer-ledger.jsonl";

/// Records with the same key describe the same search: canonical label, extent, mode, engine version.
pub type Key = (String, i64, RealizationMode, String);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    /// Canonical label of the triangulation in lex form.
    pub label: String,
    /// The triangulation as given, in lex form; witness ids refer to it.
    pub triangulation: String,
    pub extent: i64,
    pub mode: RealizationMode,
    pub status: SearchStatus,
    pub witness: Option<BTreeMap<String, [i64; 3]>>,
    pub stats: SearchStats,
    pub engine_version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl Record {
    pub fn new(t: &Triangulation, out: &SearchOutcome) -> Self {
        let witness = out
            .witness
            .as_ref()
            .map(|w| w.to_labeled(t).into_iter().map(|(l, p)| (l.to_string(), p.coords())).collect());
        Record {
            label: label_of(t),
            triangulation: t.to_lex(),
            extent: out.extent,
            mode: out.mode,
            status: out.status,
            witness,
            stats: out.stats.clone(),
            engine_version: grid_realizer::VERSION.to_string(),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        }
    }

    pub fn key(&self) -> Key {
        (self.label.clone(), self.extent, self.mode, self.engine_version.clone())
    }

    /// A definite answer that a re-run would only repeat.
    pub fn is_final(&self) -> bool {
        self.status != SearchStatus::LimitReached
    }
}

pub fn label_of(t: &Triangulation) -> String {
    let mut c = canonical_label(t);
    c.set_name(None);
    c.to_lex()
}

/// `--ledger`, else the environment override, else the default file name.
pub fn resolve(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    match std::env::var_os(LEDGER_ENV) {
        Some(p) if !p.is_empty() => PathBuf::from(p),
        _ => PathBuf::from(DEFAULT_LEDGER),
    }
}

pub struct Ledger {
    path: PathBuf,
}

impl Ledger {
    pub fn new(path: PathBuf) -> Self {
        Ledger { path }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Every well-formed record in file order. A line cut short by an
    /// interrupted write is skipped.
    pub fn load(&self) -> Result<Vec<Record>, Fail> {
        let text = match std::fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(Fail::io(format!("cannot read ledger {}: {e}", self.path.display()))),
        };
        Ok(text.lines().filter(|l| !l.trim().is_empty()).filter_map(|l| serde_json::from_str(l).ok()).collect())
    }

    /// Latest record per key.
    pub fn latest(&self) -> Result<BTreeMap<Key, Record>, Fail> {
        let mut out = BTreeMap::new();
        for r in self.load()? {
            out.insert(r.key(), r);
        }
        Ok(out)
    }

    pub fn append(&self, r: &Record) -> Result<(), Fail> {
        let err = |e: std::io::Error| Fail::io(format!("cannot write ledger {}: {e}", self.path.display()));
        let mut f = OpenOptions::new().read(true).append(true).create(true).open(&self.path).map_err(err)?;
        // start on a fresh line if a previous write was cut off
        let len = f.metadata().map_err(err)?.len();
        let mut line = String::new();
        if len > 0 {
            let mut last = [0u8];
            f.seek(SeekFrom::Start(len - 1)).map_err(err)?;
            f.read_exact(&mut last).map_err(err)?;
            if last[0] != b'\n' {
                line.push('\n');
            }
        }
        line.push_str(&serde_json::to_string(r).expect("plain data"));
        line.push('\n');
        f.write_all(line.as_bytes()).map_err(err)?;
        f.sync_data().map_err(err)
    }
}
