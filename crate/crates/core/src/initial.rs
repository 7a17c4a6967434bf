//! The initial ideal of a Hibi ideal and its Koszul relation pairs.
//!
//! Under a reverse lexicographic order refining the lattice order, the
//! initial ideal is generated by `x_α x_β` over incomparable pairs, which is
//! the Stanley–Reisner ideal of the order complex `Δ(L)`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::complex::{order_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{reduced_homology_dim, FieldSpec};
use crate::lattice::{DistributiveLattice, IncomparablePair};
use crate::sweep;

/// Default bound on the subset size of the Hochster sweep.
pub const HOCHSTER_MAX_J: usize = 8;

/// The generator `x_a x_b` of the initial ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialPair {
    pub pair: IncomparablePair,
}

/// Minimal generators of the initial ideal, one per incomparable pair.
pub fn initial_ideal_generators(lattice: &DistributiveLattice) -> Vec<MonomialPair> {
    lattice
        .incomparable_pairs()
        .into_iter()
        .map(|pair| MonomialPair { pair })
        .collect()
}

/// Whether the minimal nonfaces of `Δ(L)` are exactly the incomparable pairs.
pub fn stanley_reisner_check(lattice: &DistributiveLattice) -> bool {
    let nonfaces = order_complex(lattice)
        .minimal_nonfaces()
        .expect("order complexes are built uncapped");
    let nonfaces: BTreeSet<Vec<usize>> = nonfaces.into_iter().collect();
    let pairs: BTreeSet<Vec<usize>> = lattice
        .incomparable_pairs()
        .iter()
        .map(|p| p.elements().to_vec())
        .collect();
    nonfaces == pairs
}

/// `Δ(L)_W`: the chains of `L` inside `w`.
pub fn induced_order_complex(lattice: &DistributiveLattice, w: &[usize]) -> SimplicialComplex {
    let vertices: Vec<usize> = w
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut faces: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new()]];
    let mut frontier: Vec<Vec<u32>> = vec![Vec::new()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for chain in &frontier {
            let start = chain.last().map_or(0, |&p| p as usize + 1);
            for pos in start..vertices.len() {
                // sorted indices: strict inclusion only goes upward
                if chain
                    .last()
                    .is_none_or(|&top| lattice.leq(vertices[top as usize], vertices[pos]))
                {
                    let mut c = chain.clone();
                    c.push(pos as u32);
                    next.push(c);
                }
            }
        }
        if !next.is_empty() {
            faces.push(next.clone());
        }
        frontier = next;
    }
    SimplicialComplex::from_raw(vertices, faces, None)
}

fn check_distinct(p1: IncomparablePair, p2: IncomparablePair) -> Result<()> {
    if p1 == p2 {
        Err(Error::SamePair)
    } else {
        Ok(())
    }
}

fn stacked(lattice: &DistributiveLattice, p1: IncomparablePair, p2: IncomparablePair) -> bool {
    let below = |lo: IncomparablePair, hi: IncomparablePair| {
        lattice.leq(lattice.join(lo.a, lo.b), lattice.meet(hi.a, hi.b))
    };
    below(p2, p1) || below(p1, p2)
}

/// The lattice criterion for `x_{α1}x_{β1}, x_{α2}x_{β2}` to be a Koszul
/// relation pair of the initial ideal: one pair lies entirely below the
/// other, `α_2 ∨ β_2 ≤ α_1 ∧ β_1` or `α_1 ∨ β_1 ≤ α_2 ∧ β_2`.
pub fn koszul_pair_initial(
    lattice: &DistributiveLattice,
    p1: IncomparablePair,
    p2: IncomparablePair,
) -> Result<bool> {
    check_distinct(p1, p2)?;
    Ok(stacked(lattice, p1, p2))
}

/// Hochster's formula route: the pair is a Koszul relation pair iff
/// `H̃_1(Δ(L)_W) ≠ 0` for `W = {α_1, β_1, α_2, β_2}`. Overlapping pairs
/// give `|W| < 4` and are reported as [`Error::DegenerateW`].
pub fn koszul_pair_hochster_oracle(
    lattice: &DistributiveLattice,
    p1: IncomparablePair,
    p2: IncomparablePair,
    field: FieldSpec,
) -> Result<bool> {
    check_distinct(p1, p2)?;
    let w: BTreeSet<usize> = [p1.a, p1.b, p2.a, p2.b].into_iter().collect();
    if w.len() < 4 {
        return Err(Error::DegenerateW { size: w.len() });
    }
    let w: Vec<usize> = w.into_iter().collect();
    let cx = induced_order_complex(lattice, &w);
    Ok(reduced_homology_dim(&cx, field, 1)? > 0)
}

/// Necessary condition for a Koszul relation pair of the Hibi ideal itself,
/// relative to the lattice binomial generators. It is the same lattice
/// predicate as [`koszul_pair_initial`]: passing it makes the pair a
/// candidate, never a certified Koszul pair of `R[L]`.
pub fn hibi_koszul_filter(
    lattice: &DistributiveLattice,
    p1: IncomparablePair,
    p2: IncomparablePair,
) -> bool {
    stacked(lattice, p1, p2)
}

/// The eleven comparability patterns of a four-element subposet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Shape {
    /// antichain
    A,
    /// one comparable pair
    B,
    /// three-element V or wedge plus a point
    C,
    /// one element comparable to the other three, which are incomparable
    D,
    /// two disjoint comparable pairs
    E,
    /// zigzag
    F,
    /// two incomparable pairs, each element of one below each of the other
    G,
    /// three-element chain plus a point
    H,
    /// every pair comparable but one
    I,
    /// three-element chain with one more element comparable to its end
    J,
    /// chain
    K,
}

impl Shape {
    pub const ALL: [Shape; 11] = [
        Shape::A,
        Shape::B,
        Shape::C,
        Shape::D,
        Shape::E,
        Shape::F,
        Shape::G,
        Shape::H,
        Shape::I,
        Shape::J,
        Shape::K,
    ];

    pub fn tag(self) -> char {
        (b'a' + Shape::ALL.iter().position(|&s| s == self).unwrap() as u8) as char
    }

    /// Predicted `dim H̃_1` of the induced order complex.
    pub fn expected_h1(self) -> usize {
        usize::from(self == Shape::G)
    }

    /// A representative comparability graph on vertices `0..4`.
    fn representative(self) -> &'static [(usize, usize)] {
        match self {
            Shape::A => &[],
            Shape::B => &[(0, 1)],
            Shape::C => &[(0, 1), (1, 2)],
            Shape::D => &[(0, 1), (0, 2), (0, 3)],
            Shape::E => &[(0, 1), (2, 3)],
            Shape::F => &[(0, 1), (1, 2), (2, 3)],
            Shape::G => &[(0, 1), (1, 2), (2, 3), (0, 3)],
            Shape::H => &[(0, 1), (1, 2), (0, 2)],
            Shape::I => &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 3)],
            Shape::J => &[(0, 1), (1, 2), (0, 2), (2, 3)],
            Shape::K => &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.tag())
    }
}

const EDGE_SLOTS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn edge_bits(edges: &[(usize, usize)], perm: &[usize; 4]) -> u8 {
    let mut bits = 0u8;
    for &(u, v) in edges {
        let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
        let slot = EDGE_SLOTS.iter().position(|&e| e == (a, b)).unwrap();
        bits |= 1 << slot;
    }
    bits
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| (0..i).all(|j| p[i] != p[j])) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Minimum edge bitmask over all relabelings: a complete graph invariant.
fn canonical_graph(edges: &[(usize, usize)]) -> u8 {
    permutations4()
        .iter()
        .map(|p| edge_bits(edges, p))
        .min()
        .unwrap()
}

fn shape_table() -> &'static [(u8, Shape)] {
    static TABLE: OnceLock<Vec<(u8, Shape)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        Shape::ALL
            .iter()
            .map(|&s| (canonical_graph(s.representative()), s))
            .collect()
    })
}

/// Classifies a four-element subset of `L` by its comparability graph.
pub fn classify_4subset(lattice: &DistributiveLattice, w: &[usize]) -> Result<Shape> {
    let set: BTreeSet<usize> = w.iter().copied().collect();
    if set.len() != 4 || w.len() != 4 {
        return Err(Error::Invalid(format!(
            "expected four distinct lattice elements, got {w:?}"
        )));
    }
    if let Some(&bad) = set.iter().find(|&&x| x >= lattice.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            n: lattice.len(),
        });
    }
    let w: Vec<usize> = set.into_iter().collect();
    let edges: Vec<(usize, usize)> = EDGE_SLOTS
        .iter()
        .copied()
        .filter(|&(a, b)| lattice.comparable(w[a], w[b]))
        .collect();
    let key = canonical_graph(&edges);
    Ok(shape_table()
        .iter()
        .find(|(k, _)| *k == key)
        .map(|&(_, s)| s)
        .expect("every graph on four vertices is listed"))
}

/// Everything known about one pair of incomparable pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulPairVerdict {
    pub pair1: IncomparablePair,
    pub pair2: IncomparablePair,
    pub is_koszul_initial: bool,
    pub hibi_filter_pass: bool,
    /// Shape of `W`, absent when the pairs overlap.
    pub shape: Option<Shape>,
    /// The Hochster oracle, absent when the pairs overlap.
    pub oracle: Option<bool>,
}

/// Verdicts for all unordered pairs of distinct incomparable pairs.
pub fn koszul_verdicts(lattice: &DistributiveLattice, field: FieldSpec) -> Vec<KoszulPairVerdict> {
    let pairs = lattice.incomparable_pairs();
    let mut combos = Vec::new();
    for (k, &p1) in pairs.iter().enumerate() {
        for &p2 in &pairs[k + 1..] {
            combos.push((p1, p2));
        }
    }
    sweep::par_map(&combos, |&(p1, p2)| {
        let oracle = match koszul_pair_hochster_oracle(lattice, p1, p2, field) {
            Ok(b) => Some(b),
            Err(Error::DegenerateW { .. }) => None,
            Err(e) => panic!("unexpected oracle failure: {e}"),
        };
        let shape = oracle.map(|_| {
            classify_4subset(lattice, &[p1.a, p1.b, p2.a, p2.b]).expect("four distinct elements")
        });
        KoszulPairVerdict {
            pair1: p1,
            pair2: p2,
            is_koszul_initial: stacked(lattice, p1, p2),
            hibi_filter_pass: hibi_koszul_filter(lattice, p1, p2),
            shape,
            oracle,
        }
    })
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    k_subsets(n, k)
}

/// `β_{i,j}` of `K[L] / in(I_L)` by Hochster's formula, for `j` up to
/// [`HOCHSTER_MAX_J`].
pub fn hochster_graded_betti(
    lattice: &DistributiveLattice,
    i: usize,
    j: usize,
    field: FieldSpec,
) -> Result<u64> {
    hochster_graded_betti_bounded(lattice, i, j, field, HOCHSTER_MAX_J)
}

/// As [`hochster_graded_betti`] with an explicit bound on `j`.
pub fn hochster_graded_betti_bounded(
    lattice: &DistributiveLattice,
    i: usize,
    j: usize,
    field: FieldSpec,
    max_j: usize,
) -> Result<u64> {
    if i == 0 {
        return Err(Error::Invalid("the Hochster sweep needs i >= 1".into()));
    }
    if j > max_j {
        return Err(Error::Invalid(format!(
            "subset size {j} exceeds the sweep bound {max_j}"
        )));
    }
    if j < i + 1 {
        return Ok(0);
    }
    let subsets = k_subsets(lattice.len(), j);
    let k = j as isize - i as isize - 1;
    Ok(sweep::par_sum(&subsets, |w| {
        let cx = induced_order_complex(lattice, w);
        reduced_homology_dim(&cx, field, k).expect("uncapped") as u64
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{OrderIdeal, Poset};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn lattice(p: Poset) -> DistributiveLattice {
        DistributiveLattice::ideal_lattice(&p)
    }

    fn idx(l: &DistributiveLattice, bits: u64) -> usize {
        l.index_of(OrderIdeal(bits)).unwrap()
    }

    fn pair(l: &DistributiveLattice, x: u64, y: u64) -> IncomparablePair {
        IncomparablePair::new(l, idx(l, x), idx(l, y)).unwrap()
    }

    #[test]
    fn generator_counts() {
        assert_eq!(
            initial_ideal_generators(&lattice(Poset::antichain(2))).len(),
            1
        );
        assert!(initial_ideal_generators(&lattice(Poset::chain(3))).is_empty());
        assert_eq!(
            initial_ideal_generators(&lattice(Poset::antichain(3))).len(),
            9
        );
    }

    #[test]
    fn stanley_reisner() {
        assert!(stanley_reisner_check(&lattice(Poset::antichain(3))));
        assert!(stanley_reisner_check(&lattice(Poset::chain(3))));
        assert!(stanley_reisner_check(&lattice(
            Poset::chain(2).disjoint_union(&Poset::antichain(2))
        )));
    }

    #[test]
    fn induced_matches_order_complex() {
        let l = lattice(Poset::antichain(3));
        let full = order_complex(&l);
        for w in k_subsets(l.len(), 4) {
            assert_eq!(induced_order_complex(&l, &w), full.induced(&w));
        }
    }

    #[test]
    fn stacked_pairs_are_koszul() {
        // antichain(2) ^ antichain(2): elements 0,1 below 2,3
        let p = Poset::antichain(2).ordinal_sum(&Poset::antichain(2));
        let l = lattice(p);
        let low = pair(&l, 0b0001, 0b0010);
        let high = pair(&l, 0b0111, 0b1011);
        assert!(koszul_pair_initial(&l, low, high).unwrap());
        assert!(koszul_pair_initial(&l, high, low).unwrap());
        assert!(koszul_pair_hochster_oracle(&l, low, high, Q).unwrap());
        assert!(hibi_koszul_filter(&l, low, high));
        let w = [low.a, low.b, high.a, high.b];
        assert_eq!(classify_4subset(&l, &w).unwrap(), Shape::G);
        assert_eq!(induced_order_complex(&l, &w).facets().len(), 4);
    }

    #[test]
    fn boolean_lattice_pairs() {
        let l = lattice(Poset::antichain(3));
        let p12 = pair(&l, 0b001, 0b010);
        let p13 = pair(&l, 0b001, 0b100);
        let p23 = pair(&l, 0b010, 0b100);
        assert!(!koszul_pair_initial(&l, p12, p13).unwrap());
        assert!(matches!(
            koszul_pair_hochster_oracle(&l, p12, p23, Q),
            Err(Error::DegenerateW { size: 3 })
        ));
        assert!(matches!(
            koszul_pair_initial(&l, p12, p12),
            Err(Error::SamePair)
        ));
        let far = pair(&l, 0b101, 0b110);
        assert_eq!(
            koszul_pair_initial(&l, p12, far).unwrap(),
            koszul_pair_hochster_oracle(&l, p12, far, Q).unwrap()
        );
    }

    #[test]
    fn shape_table_is_complete() {
        let keys: BTreeSet<u8> = shape_table().iter().map(|&(k, _)| k).collect();
        assert_eq!(keys.len(), 11);
        // all 64 labeled graphs land on one of the eleven classes
        let all: BTreeSet<u8> = (0u8..64)
            .map(|m| {
                let edges: Vec<_> = (0..6)
                    .filter(|b| m >> b & 1 == 1)
                    .map(|b| EDGE_SLOTS[b])
                    .collect();
                canonical_graph(&edges)
            })
            .collect();
        assert_eq!(all, keys);
        assert_eq!(Shape::G.tag(), 'g');
        assert_eq!(Shape::K.to_string(), "(k)");
    }

    #[test]
    fn classify_examples() {
        let chain = lattice(Poset::chain(3));
        assert_eq!(classify_4subset(&chain, &[0, 1, 2, 3]).unwrap(), Shape::K);
        let b4 = lattice(Poset::antichain(4));
        let atoms: Vec<usize> = [1, 2, 4, 8].iter().map(|&b| idx(&b4, b)).collect();
        assert_eq!(classify_4subset(&b4, &atoms).unwrap(), Shape::A);
        assert!(classify_4subset(&chain, &[0, 1, 2]).is_err());
        // the diamond itself shares its comparability graph with (i)
        let d = lattice(Poset::antichain(2));
        assert_eq!(classify_4subset(&d, &[0, 1, 2, 3]).unwrap(), Shape::I);
    }

    #[test]
    fn hochster_counts() {
        assert_eq!(
            hochster_graded_betti(&lattice(Poset::antichain(2)), 1, 2, Q).unwrap(),
            1
        );
        assert_eq!(
            hochster_graded_betti(&lattice(Poset::antichain(3)), 1, 2, Q).unwrap(),
            9
        );
        assert!(hochster_graded_betti(&lattice(Poset::antichain(3)), 1, 9, Q).is_err());
    }

    #[test]
    fn verdicts_cover_all_pairs() {
        let l = lattice(Poset::antichain(3));
        let v = koszul_verdicts(&l, Q);
        assert_eq!(v.len(), 36);
        for x in &v {
            if let Some(o) = x.oracle {
                assert_eq!(o, x.is_koszul_initial);
            } else {
                assert!(!x.is_koszul_initial);
            }
        }
    }
}
