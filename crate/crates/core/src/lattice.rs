//! The ideal lattice `I(P)` of a finite poset.
//!
//! Elements are indexed in canonical order (cardinality, then bitset value),
//! so a strict inclusion `α ⊊ β` always has `index(α) < index(β)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{OrderIdeal, Poset};

/// A finite distributive lattice realized as the order ideals of a poset.
#[derive(Clone, Debug)]
pub struct DistributiveLattice {
    base: Poset,
    elements: Vec<OrderIdeal>,
    index: HashMap<OrderIdeal, usize>,
}

impl PartialEq for DistributiveLattice {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.elements == other.elements
    }
}

impl Eq for DistributiveLattice {}

/// Two incomparable elements `a < b` (by index) of a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IncomparablePair {
    pub a: usize,
    pub b: usize,
}

impl IncomparablePair {
    pub fn new(lattice: &DistributiveLattice, x: usize, y: usize) -> Result<IncomparablePair> {
        if lattice.comparable(x, y) {
            return Err(Error::NotIncomparable { a: x, b: y });
        }
        Ok(IncomparablePair {
            a: x.min(y),
            b: x.max(y),
        })
    }

    pub fn elements(self) -> [usize; 2] {
        [self.a, self.b]
    }
}

/// JSON dump of a lattice.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeJson {
    pub elements: Vec<u64>,
    pub covers: Vec<[usize; 2]>,
    pub join_irreducibles: Vec<usize>,
}

impl DistributiveLattice {
    pub fn ideal_lattice(poset: &Poset) -> DistributiveLattice {
        Self::from_parts(poset.clone(), poset.order_ideals())
    }

    fn from_parts(base: Poset, elements: Vec<OrderIdeal>) -> DistributiveLattice {
        let index = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        DistributiveLattice {
            base,
            elements,
            index,
        }
    }

    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[OrderIdeal] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> OrderIdeal {
        self.elements[i]
    }

    pub fn index_of(&self, ideal: OrderIdeal) -> Option<usize> {
        self.index.get(&ideal).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a].is_subset(self.elements[b])
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].union(self.elements[b])]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].intersection(self.elements[b])]
    }

    /// Cover relations of the lattice (adding one poset element).
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &e) in self.elements.iter().enumerate() {
            for p in 0..self.base.len() {
                if e.contains(p) {
                    continue;
                }
                let bigger = OrderIdeal(e.bits() | 1 << p);
                if let Some(&j) = self.index.get(&bigger) {
                    out.push((i, j));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Indices of join-irreducible elements, in canonical order.
    pub fn join_irreducible_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| {
                if x == self.bottom() {
                    return false;
                }
                // x is join-irreducible iff it is not the join of two strictly
                // smaller elements.
                let below: Vec<usize> = (0..x).filter(|&y| self.leq(y, x) && y != x).collect();
                !below
                    .iter()
                    .any(|&y| below.iter().any(|&z| self.join(y, z) == x))
            })
            .collect()
    }

    /// The subposet of join-irreducibles with the inherited order.
    pub fn join_irreducibles(&self) -> Poset {
        let ji = self.join_irreducible_indices();
        let mut pairs = Vec::new();
        for (i, &a) in ji.iter().enumerate() {
            for (j, &b) in ji.iter().enumerate() {
                if a != b && self.leq(a, b) {
                    pairs.push((i, j));
                }
            }
        }
        Poset::from_relations(ji.len(), &pairs).expect("inherited order is acyclic")
    }

    /// Checks `L ≅ I(J(L))` via `x ↦ {join-irreducibles below x}`.
    pub fn birkhoff_roundtrip(&self) -> bool {
        let ji = self.join_irreducible_indices();
        let jp = self.join_irreducibles();
        let rebuilt = DistributiveLattice::ideal_lattice(&jp);
        if rebuilt.len() != self.len() {
            return false;
        }
        let image: Vec<OrderIdeal> = (0..self.len())
            .map(|x| {
                let bits = ji
                    .iter()
                    .enumerate()
                    .filter(|&(_, &j)| self.leq(j, x))
                    .fold(0u64, |acc, (k, _)| acc | 1 << k);
                OrderIdeal(bits)
            })
            .collect();
        let mut seen = std::collections::HashSet::new();
        for &img in &image {
            if rebuilt.index_of(img).is_none() || !seen.insert(img) {
                return false;
            }
        }
        (0..self.len())
            .all(|x| (0..self.len()).all(|y| self.leq(x, y) == image[x].is_subset(image[y])))
    }

    /// All incomparable pairs, sorted lexicographically.
    pub fn incomparable_pairs(&self) -> Vec<IncomparablePair> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in (a + 1)..self.len() {
                if !self.comparable(a, b) {
                    out.push(IncomparablePair { a, b });
                }
            }
        }
        out
    }

    /// Lattice indices of the closed interval `[lo, hi]`, ordered to match
    /// the element order of [`DistributiveLattice::interval`].
    pub fn interval_members(&self, lo: usize, hi: usize) -> Result<Vec<usize>> {
        if !self.leq(lo, hi) {
            return Err(Error::NotComparable { lo, hi });
        }
        let (low, high) = (self.elements[lo], self.elements[hi]);
        let (_, rebase) = self.interval_base(lo, hi);
        let mut members: Vec<usize> = (0..self.len())
            .filter(|&x| low.is_subset(self.elements[x]) && self.elements[x].is_subset(high))
            .collect();
        members.sort_by_key(|&x| rebase(self.elements[x]).canonical_key());
        Ok(members)
    }

    fn interval_base(&self, lo: usize, hi: usize) -> (Poset, impl Fn(OrderIdeal) -> OrderIdeal) {
        let diff: Vec<usize> = OrderIdeal(self.elements[hi].bits() & !self.elements[lo].bits())
            .elements()
            .collect();
        let base = self.base.induced(&diff);
        let rebase = move |e: OrderIdeal| {
            OrderIdeal(
                diff.iter()
                    .enumerate()
                    .filter(|&(_, &p)| e.contains(p))
                    .fold(0u64, |acc, (k, _)| acc | 1 << k),
            )
        };
        (base, rebase)
    }

    /// The interval `[lo, hi]` as a lattice in its own right: it is the ideal
    /// lattice of the subposet `hi \ lo`.
    pub fn interval(&self, lo: usize, hi: usize) -> Result<DistributiveLattice> {
        let members = self.interval_members(lo, hi)?;
        let (base, rebase) = self.interval_base(lo, hi);
        let elements = members.iter().map(|&x| rebase(self.elements[x])).collect();
        Ok(Self::from_parts(base, elements))
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            elements: self.elements.iter().map(|e| e.bits()).collect(),
            covers: self.covers().into_iter().map(|(a, b)| [a, b]).collect(),
            join_irreducibles: self.join_irreducible_indices(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> DistributiveLattice {
        DistributiveLattice::ideal_lattice(&Poset::antichain(2))
    }

    fn boolean3() -> DistributiveLattice {
        DistributiveLattice::ideal_lattice(&Poset::antichain(3))
    }

    #[test]
    fn small_lattices() {
        let d = diamond();
        assert_eq!(d.len(), 4);
        assert_eq!(d.incomparable_pairs().len(), 1);
        let c = DistributiveLattice::ideal_lattice(&Poset::chain(3));
        assert_eq!(c.len(), 4);
        assert!(c.incomparable_pairs().is_empty());
        let grid =
            DistributiveLattice::ideal_lattice(&Poset::chain(1).disjoint_union(&Poset::chain(2)));
        assert_eq!(grid.len(), 6);
    }

    #[test]
    fn join_irreducibles_examples() {
        assert_eq!(diamond().join_irreducibles(), Poset::antichain(2));
        for n in 0..5 {
            let l = DistributiveLattice::ideal_lattice(&Poset::chain(n));
            assert_eq!(l.join_irreducibles(), Poset::chain(n));
        }
        assert_eq!(boolean3().join_irreducibles(), Poset::antichain(3));
    }

    #[test]
    fn birkhoff() {
        assert!(diamond().birkhoff_roundtrip());
        assert!(boolean3().birkhoff_roundtrip());
        let p = Poset::from_relations(4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        assert!(DistributiveLattice::ideal_lattice(&p).birkhoff_roundtrip());
    }

    #[test]
    fn boolean_incomparable_pairs() {
        // brute force over pairs of subsets of {0,1,2}
        let mut count = 0;
        for s in 0u32..8 {
            for t in (s + 1)..8 {
                if s & !t != 0 && t & !s != 0 {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 9);
        assert_eq!(boolean3().incomparable_pairs().len(), count);
    }

    #[test]
    fn intervals() {
        let d = diamond();
        assert_eq!(d.interval(d.bottom(), d.top()).unwrap(), d);
        let atom = d.index_of(OrderIdeal(0b01)).unwrap();
        let two_chain = d.interval(d.bottom(), atom).unwrap();
        assert_eq!(
            two_chain,
            DistributiveLattice::ideal_lattice(&Poset::chain(1))
        );

        let b3 = boolean3();
        let lo = b3.index_of(OrderIdeal(0b001)).unwrap();
        let iv = b3.interval(lo, b3.top()).unwrap();
        assert_eq!(iv, DistributiveLattice::ideal_lattice(&Poset::antichain(2)));
        let members = b3.interval_members(lo, b3.top()).unwrap();
        assert_eq!(members.len(), 4);
        for (k, &m) in members.iter().enumerate() {
            assert_eq!(iv.element(k).bits() << 1 | 1, b3.element(m).bits() | 1);
            assert!(b3.element(m).contains(0));
        }
        let other = b3.index_of(OrderIdeal(0b010)).unwrap();
        assert!(matches!(
            b3.interval(lo, other),
            Err(Error::NotComparable { .. })
        ));
    }

    #[test]
    fn lattice_axioms_exhaustive() {
        let posets = [
            Poset::antichain(3),
            Poset::chain(2).disjoint_union(&Poset::chain(2)),
            Poset::antichain(2).ordinal_sum(&Poset::antichain(2)),
            Poset::from_relations(4, &[(0, 2), (1, 2), (1, 3)]).unwrap(),
        ];
        for p in &posets {
            let l = DistributiveLattice::ideal_lattice(p);
            assert!(l.len() <= 20);
            for x in 0..l.len() {
                for y in 0..l.len() {
                    assert_eq!(l.join(x, l.meet(x, y)), x);
                    assert_eq!(l.meet(x, l.join(x, y)), x);
                    for z in 0..l.len() {
                        assert_eq!(l.meet(x, l.join(y, z)), l.join(l.meet(x, y), l.meet(x, z)));
                        assert_eq!(l.join(x, l.meet(y, z)), l.meet(l.join(x, y), l.join(x, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn json_dump() {
        let j = diamond().to_json();
        assert_eq!(j.elements, vec![0, 1, 2, 3]);
        assert_eq!(j.covers, vec![[0, 1], [0, 2], [1, 3], [2, 3]]);
        assert_eq!(j.join_irreducibles, vec![1, 2]);
    }
}
