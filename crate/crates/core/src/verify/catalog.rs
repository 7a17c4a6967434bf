//! Small posets up to isomorphism, with a stored copy for reproducibility.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::poset::Poset;

/// Canonical forms are computed by brute force over permutations.
pub const MAX_CANONICAL: usize = 8;

const STORED: &str = include_str!("../../data/catalog_posets.json");

/// A named catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
}

impl CatalogEntry {
    pub fn poset(&self) -> Poset {
        let pairs: Vec<(usize, usize)> = self.covers.iter().map(|c| (c[0], c[1])).collect();
        Poset::from_relations(self.n, &pairs).expect("catalog posets are acyclic")
    }

    fn from_poset(name: String, p: &Poset) -> CatalogEntry {
        CatalogEntry {
            name,
            n: p.len(),
            covers: p.covers().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

/// The stored catalog file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub max_elements: usize,
    pub posets: Vec<CatalogEntry>,
    pub extras: Vec<CatalogEntry>,
}

fn relation_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                out.push((a, b));
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Strict order relation as a bitmask over `relation_pairs(n)`.
fn relation_mask(p: &Poset, perm: &[usize], pairs: &[(usize, usize)]) -> u64 {
    let mut mask = 0u64;
    for a in 0..p.len() {
        for b in 0..p.len() {
            if p.lt(a, b) {
                let slot = pairs.iter().position(|&e| e == (perm[a], perm[b])).unwrap();
                mask |= 1 << slot;
            }
        }
    }
    mask
}

/// Isomorphism invariant of a poset: the smallest strict-order bitmask over
/// all relabelings, together with the relabeling achieving it.
pub fn canonical_form(p: &Poset) -> (u64, Vec<usize>) {
    assert!(
        p.len() <= MAX_CANONICAL,
        "canonical forms are limited to {MAX_CANONICAL} elements"
    );
    let pairs = relation_pairs(p.len());
    permutations(p.len())
        .into_iter()
        .map(|perm| (relation_mask(p, &perm, &pairs), perm))
        .min()
        .unwrap()
}

/// Whether two posets are isomorphic.
pub fn isomorphic(p: &Poset, q: &Poset) -> bool {
    p.len() == q.len() && canonical_form(p).0 == canonical_form(q).0
}

/// Relabels `p` so that element `a` becomes `perm[a]`.
fn relabel(p: &Poset, perm: &[usize]) -> Poset {
    let pairs: Vec<(usize, usize)> = p
        .covers()
        .iter()
        .map(|&(a, b)| (perm[a], perm[b]))
        .collect();
    Poset::from_relations(p.len(), &pairs).unwrap()
}

/// One representative per isomorphism class of posets on `n` elements,
/// in canonical labeling, sorted by relation count then canonical mask.
pub fn enumerate_posets(n: usize) -> Vec<Poset> {
    let pairs = relation_pairs(n);
    let mut classes: BTreeMap<(u32, u64), Poset> = BTreeMap::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let rel: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|&k| mask >> k & 1 == 1)
            .map(|k| pairs[k])
            .collect();
        let Ok(p) = Poset::from_relations(n, &rel) else {
            continue;
        };
        // keep only masks that are already transitively closed
        if (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| p.lt(a, b))
            .count()
            != rel.len()
        {
            continue;
        }
        let (code, perm) = canonical_form(&p);
        classes
            .entry((mask.count_ones(), code))
            .or_insert_with(|| relabel(&p, &perm));
    }
    classes.into_values().collect()
}

/// Builds the catalog of all posets on at most `max_n` elements.
pub fn generate(max_n: usize) -> CatalogFile {
    let mut posets = Vec::new();
    for n in 0..=max_n {
        for (k, p) in enumerate_posets(n).iter().enumerate() {
            posets.push(CatalogEntry::from_poset(format!("P{n}_{:02}", k + 1), p));
        }
    }
    let extras = vec![
        CatalogEntry::from_poset("boolean_b3".into(), &Poset::antichain(3)),
        CatalogEntry::from_poset(
            "grid_2x3".into(),
            &Poset::chain(1).disjoint_union(&Poset::chain(2)),
        ),
        CatalogEntry::from_poset(
            "stacked_pairs".into(),
            &Poset::antichain(2).ordinal_sum(&Poset::antichain(2)),
        ),
    ];
    CatalogFile {
        max_elements: max_n,
        posets,
        extras,
    }
}

/// The stored catalog.
pub fn stored() -> CatalogFile {
    serde_json::from_str(STORED).expect("stored catalog parses")
}

/// Stored catalog posets with at most `max_n` elements.
pub fn posets_up_to(max_n: usize) -> Vec<CatalogEntry> {
    stored()
        .posets
        .into_iter()
        .filter(|e| e.n <= max_n)
        .collect()
}

/// Stored catalog posets followed by the named extras.
pub fn all_entries() -> Vec<CatalogEntry> {
    let file = stored();
    file.posets.into_iter().chain(file.extras).collect()
}
