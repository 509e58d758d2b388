//! On-disk store for reduction pairs.
//!
//! Layout: `<dir>/v1/<first two hex digits>/<sha256 of key>.pairs`. A file
//! holds a magic tag, the full key, the pairs and a SHA-256 of all of it;
//! a file that fails any check is deleted and recomputed.

use std::collections::HashMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use hochschild::homology::{PairStore, Pairs};
use sha2::{Digest, Sha256};

const MAGIC: &[u8; 8] = b"HHPAIRS1";
pub const LAYOUT_VERSION: &str = "v1";

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
    pub rejected: usize,
    pub written: usize,
}

#[derive(Debug)]
pub struct DiskStore {
    root: PathBuf,
    memory: Mutex<HashMap<String, Pairs>>,
    hits: AtomicUsize,
    misses: AtomicUsize,
    rejected: AtomicUsize,
    written: AtomicUsize,
    seq: AtomicUsize,
}

impl DiskStore {
    pub fn open(dir: impl AsRef<Path>) -> io::Result<Self> {
        let root = dir.as_ref().join(LAYOUT_VERSION);
        fs::create_dir_all(&root)?;
        Ok(DiskStore {
            root,
            memory: Mutex::new(HashMap::new()),
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
            rejected: AtomicUsize::new(0),
            written: AtomicUsize::new(0),
            seq: AtomicUsize::new(0),
        })
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        let h = hex(&Sha256::digest(key.as_bytes()));
        self.root.join(&h[..2]).join(format!("{h}.pairs"))
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            rejected: self.rejected.load(Ordering::Relaxed),
            written: self.written.load(Ordering::Relaxed),
        }
    }

    /// All entry files currently on disk.
    pub fn entries(&self) -> Vec<PathBuf> {
        let mut out = Vec::new();
        if let Ok(dirs) = fs::read_dir(&self.root) {
            for d in dirs.flatten() {
                if let Ok(files) = fs::read_dir(d.path()) {
                    out.extend(files.flatten().map(|f| f.path()).filter(|p| p.extension().is_some_and(|e| e == "pairs")));
                }
            }
        }
        out.sort();
        out
    }

    fn read(&self, key: &str) -> Option<Pairs> {
        let path = self.path_for(key);
        let bytes = fs::read(&path).ok()?;
        match decode(&bytes, key) {
            Some(p) => Some(Arc::new(p)),
            None => {
                self.rejected.fetch_add(1, Ordering::Relaxed);
                let _ = fs::remove_file(&path);
                None
            }
        }
    }

    fn write(&self, key: &str, pairs: &[(u32, u32)]) -> io::Result<()> {
        let path = self.path_for(key);
        let dir = path.parent().expect("entry paths have a parent");
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(".{}.{}.tmp", std::process::id(), self.seq.fetch_add(1, Ordering::Relaxed)));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&encode(key, pairs))?;
        f.sync_all()?;
        fs::rename(&tmp, &path)
    }
}

fn encode(key: &str, pairs: &[(u32, u32)]) -> Vec<u8> {
    let mut b = Vec::with_capacity(8 + 4 + key.len() + 8 + 8 * pairs.len() + 32);
    b.extend_from_slice(MAGIC);
    b.extend_from_slice(&(key.len() as u32).to_le_bytes());
    b.extend_from_slice(key.as_bytes());
    b.extend_from_slice(&(pairs.len() as u64).to_le_bytes());
    for &(c, r) in pairs {
        b.extend_from_slice(&c.to_le_bytes());
        b.extend_from_slice(&r.to_le_bytes());
    }
    let sum = Sha256::digest(&b);
    b.extend_from_slice(&sum);
    b
}

fn decode(b: &[u8], key: &str) -> Option<Vec<(u32, u32)>> {
    if b.len() < 8 + 4 + 8 + 32 {
        return None;
    }
    let (body, sum) = b.split_at(b.len() - 32);
    if Sha256::digest(body).as_slice() != sum || &body[..8] != MAGIC {
        return None;
    }
    let klen = u32::from_le_bytes(body[8..12].try_into().ok()?) as usize;
    let rest = body.get(12..)?;
    if rest.get(..klen)? != key.as_bytes() {
        return None;
    }
    let rest = &rest[klen..];
    let n = u64::from_le_bytes(rest.get(..8)?.try_into().ok()?) as usize;
    let data = &rest[8..];
    if data.len() != n.checked_mul(8)? {
        return None;
    }
    Some(
        data.chunks_exact(8)
            .map(|c| (u32::from_le_bytes(c[..4].try_into().unwrap()), u32::from_le_bytes(c[4..].try_into().unwrap())))
            .collect(),
    )
}

impl PairStore for DiskStore {
    fn get(&self, key: &str) -> Option<Pairs> {
        if let Some(p) = self.memory.lock().unwrap().get(key) {
            return Some(p.clone());
        }
        match self.read(key) {
            Some(p) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                self.memory.lock().unwrap().insert(key.to_string(), p.clone());
                Some(p)
            }
            None => {
                self.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    fn put(&self, key: &str, pairs: Pairs) {
        // a failed write only costs a recomputation later
        if self.write(key, &pairs).is_ok() {
            self.written.fetch_add(1, Ordering::Relaxed);
        }
        self.memory.lock().unwrap().insert(key.to_string(), pairs);
    }
}
