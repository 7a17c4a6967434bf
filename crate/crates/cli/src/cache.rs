//! On-disk cache of graded Betti counts.
//!
//! Keys hash the poset's isomorphism class (or its labeled covers when it is
//! too large for canonical forms), the index pair and the field.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use hibi_core::verify::catalog::{canonical_form, MAX_CANONICAL};
use hibi_core::{FieldSpec, Poset};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Serialize, Deserialize)]
struct Entry {
    i: usize,
    j: usize,
    field: String,
    count: u64,
}

/// Stable text identifying a poset up to isomorphism where possible.
pub fn poset_key(p: &Poset) -> String {
    if p.len() <= MAX_CANONICAL {
        format!("iso:{}:{:x}", p.len(), canonical_form(p).0)
    } else {
        let covers: Vec<String> = p.covers().iter().map(|(a, b)| format!("{a}<{b}")).collect();
        format!("labeled:{}:{}", p.len(), covers.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct BettiCache {
    dir: PathBuf,
}

impl BettiCache {
    pub fn new(dir: &Path) -> io::Result<BettiCache> {
        fs::create_dir_all(dir)?;
        Ok(BettiCache {
            dir: dir.to_path_buf(),
        })
    }

    fn path(&self, key: &str, i: usize, j: usize, field: FieldSpec) -> PathBuf {
        let digest = Sha256::digest(format!("{key}|{i}|{j}|{field}").as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    /// A stored count, if present and readable.
    pub fn get(&self, key: &str, i: usize, j: usize, field: FieldSpec) -> Option<u64> {
        let text = fs::read_to_string(self.path(key, i, j, field)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.i == i && entry.j == j && entry.field == field.to_string()).then_some(entry.count)
    }

    pub fn put(
        &self,
        key: &str,
        i: usize,
        j: usize,
        field: FieldSpec,
        count: u64,
    ) -> io::Result<()> {
        let entry = Entry {
            i,
            j,
            field: field.to_string(),
            count,
        };
        let path = self.path(key, i, j, field);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(&entry)?)?;
        fs::rename(tmp, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphic_posets_share_a_key() {
        let a = Poset::from_relations(3, &[(0, 2), (1, 2)]).unwrap();
        let b = Poset::from_relations(3, &[(1, 0), (2, 0)]).unwrap();
        assert_eq!(poset_key(&a), poset_key(&b));
        assert_ne!(poset_key(&a), poset_key(&Poset::chain(3)));
        assert!(poset_key(&Poset::antichain(9)).starts_with("labeled:"));
    }

    #[test]
    fn roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = BettiCache::new(dir.path()).unwrap();
        let key = poset_key(&Poset::antichain(2));
        assert_eq!(cache.get(&key, 1, 2, FieldSpec::Rationals), None);
        cache.put(&key, 1, 2, FieldSpec::Rationals, 1).unwrap();
        assert_eq!(cache.get(&key, 1, 2, FieldSpec::Rationals), Some(1));
        assert_eq!(cache.get(&key, 1, 2, FieldSpec::Prime(2)), None);
    }
}
