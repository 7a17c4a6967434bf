//! Finite posets stored as a cover relation plus a bitset order matrix.
//!
//! Elements are the indices `0..n`. Relations given at construction time are
//! closed transitively and reduced back to covers, so redundant input is
//! accepted; only cycles are rejected.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported poset. Order ideals are `u64` bitsets.
pub const MAX_ELEMENTS: usize = 64;

/// A downward-closed subset of a poset, as a bitset over element indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrderIdeal(pub u64);

impl OrderIdeal {
    pub const EMPTY: OrderIdeal = OrderIdeal(0);

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, element: usize) -> bool {
        self.0 >> element & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: OrderIdeal) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: OrderIdeal) -> OrderIdeal {
        OrderIdeal(self.0 | other.0)
    }

    pub fn intersection(self, other: OrderIdeal) -> OrderIdeal {
        OrderIdeal(self.0 & other.0)
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits >> i & 1 == 1)
    }

    /// Canonical sort key: cardinality first, then bitset value.
    pub fn canonical_key(self) -> (u32, u64) {
        (self.0.count_ones(), self.0)
    }
}

impl fmt::Debug for OrderIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

/// A finite partially ordered set on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    covers: Vec<(usize, usize)>,
    /// `up[a]` has bit `b` set iff `a <= b`.
    up: Vec<u64>,
    /// `down[b]` has bit `a` set iff `a <= b`.
    down: Vec<u64>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("covers", &self.covers)
            .finish()
    }
}

/// JSON form `{"n": int, "covers": [[a, b], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
}

impl Poset {
    /// Builds a poset from arbitrary order relations `a < b`.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Poset> {
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                n,
                max: MAX_ELEMENTS,
            });
        }
        let mut up = vec![0u64; n];
        for (a, row) in up.iter_mut().enumerate() {
            *row = 1 << a;
        }
        for &(a, b) in pairs {
            for idx in [a, b] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, n });
                }
            }
            if a == b {
                return Err(Error::CycleDetected { cycle: vec![a, a] });
            }
            up[a] |= 1 << b;
        }
        // Warshall closure on bitset rows.
        for k in 0..n {
            let row_k = up[k];
            for row in up.iter_mut() {
                if *row >> k & 1 == 1 {
                    *row |= row_k;
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if up[a] >> b & 1 == 1 && up[b] >> a & 1 == 1 {
                    return Err(Error::CycleDetected {
                        cycle: find_cycle(n, pairs, a),
                    });
                }
            }
        }
        Ok(Self::from_closed(up))
    }

    fn from_closed(up: Vec<u64>) -> Poset {
        let n = up.len();
        let mut down = vec![0u64; n];
        for a in 0..n {
            for b in 0..n {
                if up[a] >> b & 1 == 1 {
                    down[b] |= 1 << a;
                }
            }
        }
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || up[a] >> b & 1 == 0 {
                    continue;
                }
                // a < b is a cover iff nothing lies strictly between.
                let between = (up[a] & down[b]) & !(1 << a) & !(1 << b);
                if between == 0 {
                    covers.push((a, b));
                }
            }
        }
        covers.sort_unstable();
        Poset {
            n,
            covers,
            up,
            down,
        }
    }

    pub fn chain(n: usize) -> Poset {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_relations(n, &pairs).expect("a chain is acyclic")
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::from_relations(n, &[]).expect("an antichain has no relations")
    }

    pub fn point() -> Poset {
        Poset::chain(1)
    }

    pub fn empty() -> Poset {
        Poset::antichain(0)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Cover pairs `(a, b)` with `a ⋖ b`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] >> b & 1 == 1
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Bitset of all elements `<= b`.
    pub fn principal_ideal(&self, b: usize) -> OrderIdeal {
        OrderIdeal(self.down[b])
    }

    /// Bitset of all elements `>= a`.
    pub fn principal_filter(&self, a: usize) -> u64 {
        self.up[a]
    }

    pub fn is_order_ideal(&self, set: u64) -> bool {
        (0..self.n)
            .filter(|&i| set >> i & 1 == 1)
            .all(|i| self.down[i] & !set == 0)
    }

    /// `P + Q`: `Q`'s elements are relabeled to follow `P`'s.
    pub fn disjoint_union(&self, other: &Poset) -> Poset {
        let shift = self.n;
        let mut pairs = self.covers.clone();
        pairs.extend(other.covers.iter().map(|&(a, b)| (a + shift, b + shift)));
        Poset::from_relations(self.n + other.n, &pairs).expect("disjoint union stays acyclic")
    }

    /// `P ⊕ Q`: every element of `P` lies below every element of `Q`.
    pub fn ordinal_sum(&self, other: &Poset) -> Poset {
        let shift = self.n;
        let mut pairs = self.covers.clone();
        pairs.extend(other.covers.iter().map(|&(a, b)| (a + shift, b + shift)));
        for a in self.maximal_elements() {
            for b in other.minimal_elements() {
                pairs.push((a, b + shift));
            }
        }
        Poset::from_relations(self.n + other.n, &pairs).expect("ordinal sum stays acyclic")
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.down[i] == 1 << i).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.up[i] == 1 << i).collect()
    }

    /// The subposet induced on `elements`, relabeled `0..k` in the given order.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let mut pairs = Vec::new();
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                if a != b && self.leq(a, b) {
                    pairs.push((i, j));
                }
            }
        }
        Poset::from_relations(elements.len(), &pairs).expect("induced order is acyclic")
    }

    /// Connected components of the comparability graph, each given as the
    /// sorted list of original indices. Components are ordered by their
    /// smallest element.
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &self.covers {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for x in 0..self.n {
            let r = root(&mut parent, x);
            let idx = *slot.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[idx].push(x);
        }
        groups
    }

    pub fn connected_components(&self) -> Vec<Poset> {
        self.component_indices()
            .iter()
            .map(|c| self.induced(c))
            .collect()
    }

    /// A linear extension: each element appears after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&i| (self.down[i].count_ones(), i));
        order
    }

    /// All order ideals sorted by `(popcount, bitset value)`.
    pub fn order_ideals(&self) -> Vec<OrderIdeal> {
        let ext = self.linear_extension();
        let mut out = Vec::new();
        self.collect_ideals(&ext, 0, 0, &mut out);
        out.sort_by_key(|i| i.canonical_key());
        out
    }

    fn collect_ideals(&self, ext: &[usize], pos: usize, set: u64, out: &mut Vec<OrderIdeal>) {
        if pos == ext.len() {
            out.push(OrderIdeal(set));
            return;
        }
        let e = ext[pos];
        self.collect_ideals(ext, pos + 1, set, out);
        // Everything strictly below e precedes it in the extension.
        let below = self.down[e] & !(1 << e);
        if below & !set == 0 {
            self.collect_ideals(ext, pos + 1, set | 1 << e, out);
        }
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            n: self.n,
            covers: self.covers.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn from_json(json: &PosetJson) -> Result<Poset> {
        let pairs: Vec<_> = json.covers.iter().map(|&[a, b]| (a, b)).collect();
        Poset::from_relations(json.n, &pairs)
    }
}

fn find_cycle(n: usize, pairs: &[(usize, usize)], start: usize) -> Vec<usize> {
    // BFS along input edges from `start` back to itself.
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in pairs {
        adj[a].push(b);
    }
    let mut prev = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for &b in &adj[start] {
        if prev[b] == usize::MAX {
            prev[b] = start;
            queue.push_back(b);
        }
    }
    while let Some(x) = queue.pop_front() {
        if x == start {
            break;
        }
        for &y in &adj[x] {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut cycle = vec![start];
    let mut cur = prev[start];
    while cur != start && cur != usize::MAX {
        cycle.push(cur);
        cur = prev[cur];
    }
    cycle.push(start);
    cycle.reverse();
    cycle
}

/// A poset read from the line-oriented text format, with element names.
#[derive(Debug, Clone)]
pub struct NamedPoset {
    pub poset: Poset,
    pub names: Vec<String>,
}

/// Parses the text format: one relation `a < b` per line (chains `a < b < c`
/// are accepted), `#` starts a comment, a bare token declares an isolated
/// element. Names map to indices in order of first appearance.
pub fn parse_text(text: &str) -> Result<NamedPoset> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut pairs = Vec::new();
    let mut intern = |name: &str, names: &mut Vec<String>| -> usize {
        *index.entry(name.to_string()).or_insert_with(|| {
            names.push(name.to_string());
            names.len() - 1
        })
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split('<').map(str::trim).collect();
        if tokens
            .iter()
            .any(|t| t.is_empty() || t.contains(char::is_whitespace))
        {
            return Err(Error::Invalid(format!(
                "line {}: expected `a < b`, got `{}`",
                lineno + 1,
                raw.trim()
            )));
        }
        let ids: Vec<usize> = tokens.iter().map(|t| intern(t, &mut names)).collect();
        pairs.extend(ids.windows(2).map(|w| (w[0], w[1])));
    }
    let poset = Poset::from_relations(names.len(), &pairs)?;
    Ok(NamedPoset { poset, names })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_ideals(p: &Poset) -> Vec<OrderIdeal> {
        let mut v: Vec<_> = (0u64..1 << p.len())
            .filter(|&s| p.is_order_ideal(s))
            .map(OrderIdeal)
            .collect();
        v.sort_by_key(|i| i.canonical_key());
        v
    }

    #[test]
    fn single_cover() {
        let p = Poset::from_relations(2, &[(0, 1)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1)]);
        assert!(p.leq(0, 1) && !p.leq(1, 0));
    }

    #[test]
    fn redundant_relation_is_reduced() {
        let p = Poset::from_relations(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert_eq!(p, Poset::chain(3));
    }

    #[test]
    fn two_cycle_rejected() {
        let err = Poset::from_relations(2, &[(0, 1), (1, 0)]).unwrap_err();
        match err {
            Error::CycleDetected { cycle } => {
                assert_eq!(cycle.first(), cycle.last());
                assert!(cycle.len() >= 3);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Poset::from_relations(1, &[(0, 0)]),
            Err(Error::CycleDetected { .. })
        ));
        assert!(matches!(
            Poset::from_relations(2, &[(0, 5)]),
            Err(Error::IndexOutOfRange { index: 5, n: 2 })
        ));
    }

    #[test]
    fn chains_and_antichains() {
        let c1 = Poset::chain(1);
        assert_eq!(c1.len(), 1);
        assert!(c1.covers().is_empty());
        let a3 = Poset::antichain(3);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(a3.leq(a, b), a == b);
            }
        }
        assert_eq!(Poset::chain(4).covers(), &[(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn disjoint_union_examples() {
        let p = Poset::chain(2).disjoint_union(&Poset::antichain(1));
        assert_eq!(p.len(), 3);
        assert_eq!(p.covers().len(), 1);
        let q = Poset::chain(3);
        assert_eq!(Poset::empty().disjoint_union(&q), q);
        assert!(
            Poset::chain(2)
                .disjoint_union(&q)
                .connected_components()
                .len()
                >= 2
        );
    }

    #[test]
    fn ordinal_sum_examples() {
        assert_eq!(
            Poset::chain(2).ordinal_sum(&Poset::chain(1)),
            Poset::chain(3)
        );
        let v = Poset::antichain(2).ordinal_sum(&Poset::antichain(1));
        assert_eq!(v.covers(), &[(0, 2), (1, 2)]);
        // brute-force leq from the three-case definition
        for x in 0..3 {
            for y in 0..3 {
                let expected = x == y || (x < 2 && y == 2);
                assert_eq!(v.leq(x, y), expected, "{x} <= {y}");
            }
        }
        let q = Poset::antichain(2).disjoint_union(&Poset::chain(2));
        assert_eq!(Poset::empty().ordinal_sum(&q), q);
    }

    #[test]
    fn components() {
        assert_eq!(Poset::antichain(3).connected_components().len(), 3);
        assert_eq!(Poset::chain(5).connected_components().len(), 1);
        let p = Poset::chain(2).disjoint_union(&Poset::chain(3));
        let sizes: Vec<_> = p.connected_components().iter().map(Poset::len).collect();
        assert_eq!(sizes, vec![2, 3]);
        assert_eq!(p.connected_components()[1], Poset::chain(3));
    }

    #[test]
    fn ideal_counts() {
        for n in 0..6 {
            assert_eq!(Poset::chain(n).order_ideals().len(), n + 1);
            assert_eq!(Poset::antichain(n).order_ideals().len(), 1 << n);
        }
        let p2 = Poset::chain(2).ordinal_sum(&Poset::point());
        let ideals = p2.order_ideals();
        assert_eq!(ideals, brute_ideals(&p2));
        assert_eq!(ideals.len(), 4);
        for w in ideals.windows(2) {
            assert!(w[0].is_subset(w[1]));
        }
    }

    #[test]
    fn ideals_match_brute_force() {
        let posets = [
            Poset::antichain(2).ordinal_sum(&Poset::antichain(2)),
            Poset::chain(2).disjoint_union(&Poset::antichain(2)),
            Poset::from_relations(5, &[(0, 2), (1, 2), (1, 3), (3, 4)]).unwrap(),
        ];
        for p in &posets {
            assert_eq!(p.order_ideals(), brute_ideals(p));
        }
    }

    #[test]
    fn text_format() {
        let np = parse_text("# a poset\na < b\nb < c # trailing\nd\n\n").unwrap();
        assert_eq!(np.names, vec!["a", "b", "c", "d"]);
        assert_eq!(np.poset.covers(), &[(0, 1), (1, 2)]);
        assert_eq!(np.poset.len(), 4);
        let chained = parse_text("x < y < z").unwrap();
        assert_eq!(chained.poset, Poset::chain(3));
        assert!(parse_text("a < < b").is_err());
        assert!(matches!(
            parse_text("a < b\nb < a"),
            Err(Error::CycleDetected { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let p = Poset::antichain(2).ordinal_sum(&Poset::chain(2));
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let back: PosetJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Poset::from_json(&back).unwrap(), p);
    }
}
