//! The Hibi semigroup `H` of a distributive lattice and its squarefree
//! divisor complexes.
//!
//! With `P = {p_1, …, p_n}`, the generator of `α ∈ I(P)` is the `2n`-vector
//! whose `i`-th entry is `1` if `p_i ∈ α` and whose `(n+i)`-th entry is `1`
//! if `p_i ∉ α`. A vector `v` lies in `H` in degree `d` exactly when
//! `v(i) + v(n+i) = d` for every `i` and the first half is order-reversing;
//! the sets `{p_i : v(i) > d - k}` then form the unique multichain whose
//! generators sum to `v`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::lattice::DistributiveLattice;
use crate::poset::{OrderIdeal, Poset};

/// A vector of `ℕ^{2n}` with an explicit total degree. The degree is stored
/// because it cannot be read off the vector when `n = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SemigroupElement {
    pub v: Vec<u32>,
    #[serde(rename = "deg")]
    pub degree: u32,
}

impl SemigroupElement {
    pub fn new(v: Vec<u32>, degree: u32) -> SemigroupElement {
        SemigroupElement { v, degree }
    }

    /// The identity of `H` for a poset on `n` elements.
    pub fn zero(n: usize) -> SemigroupElement {
        SemigroupElement {
            v: vec![0; 2 * n],
            degree: 0,
        }
    }

    /// Infers the degree from `v(0) + v(n)`; `None` if the vector has odd
    /// length or is empty.
    pub fn from_vector(v: Vec<u32>) -> Option<SemigroupElement> {
        if v.is_empty() || v.len() % 2 == 1 {
            return None;
        }
        let degree = v[0] + v[v.len() / 2];
        Some(SemigroupElement { v, degree })
    }

    /// Number of poset elements this vector is indexed by.
    pub fn n(&self) -> usize {
        self.v.len() / 2
    }

    pub fn add(&self, other: &SemigroupElement) -> SemigroupElement {
        SemigroupElement {
            v: self.v.iter().zip(&other.v).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    /// `self - other` if every entry stays non-negative.
    pub fn checked_sub(&self, other: &SemigroupElement) -> Option<SemigroupElement> {
        let v = self
            .v
            .iter()
            .zip(&other.v)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()?;
        Some(SemigroupElement {
            v,
            degree: self.degree.checked_sub(other.degree)?,
        })
    }

    /// Monomial in `y_1..y_n, z_1..z_n`, e.g. `y1^2*z2`. The identity is `1`.
    pub fn to_monomial(&self) -> String {
        let n = self.n();
        let parts: Vec<String> = self
            .v
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                let var = if k < n {
                    format!("y{}", k + 1)
                } else {
                    format!("z{}", k - n + 1)
                };
                if e == 1 {
                    var
                } else {
                    format!("{var}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for SemigroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self.v.iter().map(u32::to_string).collect();
        write!(f, "({})", entries.join(","))
    }
}

/// A weakly increasing sequence of order ideals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multichain {
    pub ideals: Vec<OrderIdeal>,
}

impl Multichain {
    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    /// Lattice indices of the members.
    pub fn indices(&self, lattice: &DistributiveLattice) -> Vec<usize> {
        self.ideals
            .iter()
            .map(|&a| {
                lattice
                    .index_of(a)
                    .expect("multichain member lies in the lattice")
            })
            .collect()
    }

    /// Sum of the generator vectors.
    pub fn to_element(&self, n: usize) -> SemigroupElement {
        let mut v = vec![0u32; 2 * n];
        for a in &self.ideals {
            for i in 0..n {
                if a.contains(i) {
                    v[i] += 1;
                } else {
                    v[n + i] += 1;
                }
            }
        }
        SemigroupElement {
            v,
            degree: self.ideals.len() as u32,
        }
    }
}

/// `h_α` for the lattice element with index `alpha`.
pub fn generator_vector(lattice: &DistributiveLattice, alpha: usize) -> SemigroupElement {
    Multichain {
        ideals: vec![lattice.element(alpha)],
    }
    .to_element(lattice.base().len())
}

/// Membership in `H` given the two halves as signed integers: both halves
/// non-negative, summing to `degree` pointwise, and `y` order-reversing.
fn in_h(poset: &Poset, y: &[i64], z: &[i64], degree: i64) -> bool {
    if degree < 0 {
        return false;
    }
    for i in 0..y.len() {
        if y[i] < 0 || z[i] < 0 || y[i] + z[i] != degree {
            return false;
        }
    }
    poset.covers().iter().all(|&(a, b)| y[a] >= y[b])
}

/// The multichain witnessing `v ∈ H`, or `None` if `v ∉ H`.
pub fn membership(lattice: &DistributiveLattice, v: &SemigroupElement) -> Option<Multichain> {
    let poset = lattice.base();
    let n = poset.len();
    if v.v.len() != 2 * n {
        return None;
    }
    let d = v.degree;
    if (0..n).any(|i| v.v[i] + v.v[n + i] != d) {
        return None;
    }
    let ideals: Vec<OrderIdeal> = (1..=d)
        .map(|k| {
            let bits = (0..n)
                .filter(|&i| v.v[i] > d - k)
                .fold(0u64, |acc, i| acc | 1 << i);
            OrderIdeal(bits)
        })
        .collect();
    if ideals.iter().all(|a| poset.is_order_ideal(a.bits())) {
        Some(Multichain { ideals })
    } else {
        None
    }
}

/// Lattice indices of weakly increasing `d`-tuples, in lexicographic order.
pub fn multichains(lattice: &DistributiveLattice, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(d);
    fn extend(
        lattice: &DistributiveLattice,
        d: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == d {
            out.push(current.clone());
            return;
        }
        // a superset of the last member has an index at least as large
        let start = current.last().copied().unwrap_or(0);
        for x in start..lattice.len() {
            if current.last().is_none_or(|&top| lattice.leq(top, x)) {
                current.push(x);
                extend(lattice, d, current, out);
                current.pop();
            }
        }
    }
    extend(lattice, d, &mut current, &mut out);
    out
}

/// All degree-`d` elements of `H`, sorted by vector.
pub fn enumerate_degree(lattice: &DistributiveLattice, d: usize) -> Vec<SemigroupElement> {
    let n = lattice.base().len();
    let mut out: Vec<SemigroupElement> = multichains(lattice, d)
        .into_iter()
        .map(|chain| {
            Multichain {
                ideals: chain.iter().map(|&i| lattice.element(i)).collect(),
            }
            .to_element(n)
        })
        .collect();
    out.sort();
    out
}

/// The squarefree divisor complex `Δ_h` on lattice indices, keeping faces of
/// dimension at most `dim_cap` when given.
pub fn divisor_complex(
    lattice: &DistributiveLattice,
    h: &SemigroupElement,
    dim_cap: Option<usize>,
) -> Result<SimplicialComplex> {
    if membership(lattice, h).is_none() {
        return Err(Error::NotInSemigroup {
            v: h.v.clone(),
            degree: h.degree,
        });
    }
    let poset = lattice.base();
    let n = poset.len();
    let d = h.degree as usize;
    let y: Vec<i64> = h.v[..n].iter().map(|&x| x as i64).collect();
    let z: Vec<i64> = h.v[n..].iter().map(|&x| x as i64).collect();

    let max_size = dim_cap.map_or(d, |c| (c + 1).min(d));
    let vertices: Vec<usize> = (0..lattice.len())
        .filter(|&a| {
            let (y2, z2) = subtract(lattice.element(a), &y, &z);
            d >= 1 && in_h(poset, &y2, &z2, d as i64 - 1)
        })
        .collect();

    let mut faces: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new()]];
    struct State<'a> {
        lattice: &'a DistributiveLattice,
        vertices: &'a [usize],
        max_size: usize,
        d: i64,
    }
    fn dfs(st: &State, face: &mut Vec<u32>, y: &[i64], z: &[i64], faces: &mut Vec<Vec<Vec<u32>>>) {
        if face.len() == st.max_size {
            return;
        }
        let start = face.last().map_or(0, |&p| p as usize + 1);
        for pos in start..st.vertices.len() {
            let (y2, z2) = subtract(st.lattice.element(st.vertices[pos]), y, z);
            let deg = st.d - face.len() as i64 - 1;
            if !in_h(st.lattice.base(), &y2, &z2, deg) {
                continue;
            }
            face.push(pos as u32);
            if faces.len() <= face.len() {
                faces.push(Vec::new());
            }
            faces[face.len()].push(face.clone());
            dfs(st, face, &y2, &z2, faces);
            face.pop();
        }
    }
    let st = State {
        lattice,
        vertices: &vertices,
        max_size,
        d: d as i64,
    };
    dfs(&st, &mut Vec::new(), &y, &z, &mut faces);
    let capped = dim_cap.filter(|&c| c + 1 < d);
    Ok(SimplicialComplex::from_raw(vertices, faces, capped))
}

fn subtract(alpha: OrderIdeal, y: &[i64], z: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let mut y2 = y.to_vec();
    let mut z2 = z.to_vec();
    for i in 0..y.len() {
        if alpha.contains(i) {
            y2[i] -= 1;
        } else {
            z2[i] -= 1;
        }
    }
    (y2, z2)
}

/// Whether the subsemigroup generated by `subset` (lattice indices) is
/// homologically pure, checked on all its elements of degree at most
/// `degree_bound`: any generator of `H` dividing such an element inside `H`
/// must belong to `subset`.
pub fn is_homologically_pure(
    lattice: &DistributiveLattice,
    subset: &[usize],
    degree_bound: usize,
) -> bool {
    let inside: BTreeSet<usize> = subset.iter().copied().collect();
    let gens: Vec<SemigroupElement> = (0..lattice.len())
        .map(|a| generator_vector(lattice, a))
        .collect();
    let n = lattice.base().len();
    let mut level: HashSet<SemigroupElement> = HashSet::from([SemigroupElement::zero(n)]);
    for _ in 1..=degree_bound {
        let next: HashSet<SemigroupElement> = level
            .iter()
            .flat_map(|h| inside.iter().map(move |&s| (h, s)))
            .map(|(h, s)| h.add(&gens[s]))
            .collect();
        for h in &next {
            for (a, g) in gens.iter().enumerate() {
                if inside.contains(&a) {
                    continue;
                }
                if let Some(rest) = h.checked_sub(g) {
                    if membership(lattice, &rest).is_some() {
                        return false;
                    }
                }
            }
        }
        level = next;
    }
    true
}

/// The copy of `H(P_1)` inside `H(P_1 + P_2)` given by the ideals `(α, ∅)`:
/// checks that it is homologically pure up to degree 5 and that it is the
/// interval below `(P_1, ∅)`.
pub fn segre_embedding_check(p1: &Poset, p2: &Poset) -> bool {
    let p = p1.disjoint_union(p2);
    let lattice = DistributiveLattice::ideal_lattice(&p);
    let first_factor = (1u64 << p1.len()) - 1;
    let pinned: Vec<usize> = (0..lattice.len())
        .filter(|&a| lattice.element(a).bits() & !first_factor == 0)
        .collect();
    let top = lattice
        .index_of(OrderIdeal(first_factor))
        .expect("P_1 is an order ideal of the disjoint union");
    let interval = lattice
        .interval_members(lattice.bottom(), top)
        .expect("bottom is below everything");
    interval == pinned && is_homologically_pure(&lattice, &pinned, 5)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> DistributiveLattice {
        DistributiveLattice::ideal_lattice(&Poset::antichain(2))
    }

    #[test]
    fn generators_of_the_diamond() {
        let l = diamond();
        // elements: ∅, {p1}, {p2}, {p1,p2}
        assert_eq!(generator_vector(&l, 0).v, vec![0, 0, 1, 1]);
        assert_eq!(generator_vector(&l, 3).v, vec![1, 1, 0, 0]);
        assert_eq!(generator_vector(&l, 1).v, vec![1, 0, 0, 1]);
        assert_eq!(generator_vector(&l, 1).to_monomial(), "y1*z2");
    }

    #[test]
    fn membership_witness() {
        let l = diamond();
        let w = membership(&l, &SemigroupElement::new(vec![1, 1, 1, 1], 2)).unwrap();
        assert_eq!(w.ideals, vec![OrderIdeal(0), OrderIdeal(0b11)]);
        assert!(membership(&l, &SemigroupElement::new(vec![0, 1, 0, 0], 1)).is_none());
        assert!(SemigroupElement::from_vector(vec![0, 1, 0, 0])
            .and_then(|v| membership(&l, &v))
            .is_none());

        let c = DistributiveLattice::ideal_lattice(&Poset::chain(2));
        let h = generator_vector(&c, 0)
            .add(&generator_vector(&c, 1))
            .add(&generator_vector(&c, 2));
        let w = membership(&c, &h).unwrap();
        assert_eq!(w.indices(&c), vec![0, 1, 2]);
    }

    #[test]
    fn membership_rejects_non_ideals() {
        // chain 0 < 1: {1} alone is not an ideal
        let c = DistributiveLattice::ideal_lattice(&Poset::chain(2));
        assert!(membership(&c, &SemigroupElement::new(vec![0, 1, 1, 0], 1)).is_none());
    }

    #[test]
    fn degree_counts() {
        let l = diamond();
        assert_eq!(enumerate_degree(&l, 2).len(), 9);
        assert_eq!(enumerate_degree(&l, 0), vec![SemigroupElement::zero(2)]);
        let gens = enumerate_degree(&l, 1);
        assert_eq!(gens.len(), 4);
        for a in 0..4 {
            assert!(gens.contains(&generator_vector(&l, a)));
        }
        for h in enumerate_degree(&l, 3) {
            assert!((0..2).all(|i| h.v[i] + h.v[2 + i] == 3));
        }
    }

    #[test]
    fn diamond_quadric_complex() {
        let l = diamond();
        let h = SemigroupElement::new(vec![1, 1, 1, 1], 2);
        let cx = divisor_complex(&l, &h, Some(2)).unwrap();
        assert_eq!(cx.vertices(), &[0, 1, 2, 3]);
        assert_eq!(cx.facets(), vec![vec![0, 3], vec![1, 2]]);
        assert_eq!(cx.face_count(2), 0);
        assert_eq!(cx.cap(), None);
    }

    #[test]
    fn chain_lattice_gives_simplices() {
        let c = DistributiveLattice::ideal_lattice(&Poset::chain(3));
        let h = generator_vector(&c, 0)
            .add(&generator_vector(&c, 2))
            .add(&generator_vector(&c, 3));
        let cx = divisor_complex(&c, &h, None).unwrap();
        assert_eq!(cx, SimplicialComplex::simplex(&[0, 2, 3]));
    }

    #[test]
    fn degree_one_is_a_point() {
        let l = DistributiveLattice::ideal_lattice(&Poset::antichain(3));
        for a in 0..l.len() {
            let cx = divisor_complex(&l, &generator_vector(&l, a), None).unwrap();
            assert_eq!(cx, SimplicialComplex::simplex(&[a]));
        }
    }

    #[test]
    fn non_members_are_rejected() {
        let l = diamond();
        let err = divisor_complex(&l, &SemigroupElement::new(vec![2, 0, 0, 1], 2), None);
        assert!(matches!(err, Err(Error::NotInSemigroup { .. })));
    }

    #[test]
    fn capped_divisor_complex() {
        let l = DistributiveLattice::ideal_lattice(&Poset::chain(3));
        let h = enumerate_degree(&l, 4).pop().unwrap();
        let cx = divisor_complex(&l, &h, Some(1)).unwrap();
        assert_eq!(cx.cap(), Some(1));
        assert!(cx.dim() <= 1);
    }

    #[test]
    fn purity() {
        let l = diamond();
        assert!(!is_homologically_pure(&l, &[0, 3], 2));
        assert!(is_homologically_pure(&l, &[0, 1, 2, 3], 3));
        let b3 = DistributiveLattice::ideal_lattice(&Poset::antichain(3));
        let members = b3.interval_members(1, b3.top()).unwrap();
        assert!(is_homologically_pure(&b3, &members, 3));
    }

    #[test]
    fn segre_embeddings() {
        assert!(segre_embedding_check(&Poset::antichain(2), &Poset::point()));
        assert!(segre_embedding_check(&Poset::chain(2), &Poset::chain(2)));
        assert!(segre_embedding_check(&Poset::empty(), &Poset::antichain(2)));
    }

    #[test]
    fn empty_poset_semigroup() {
        let l = DistributiveLattice::ideal_lattice(&Poset::empty());
        assert_eq!(l.len(), 1);
        let h = SemigroupElement::new(vec![], 3);
        assert!(membership(&l, &h).is_some());
        assert_eq!(enumerate_degree(&l, 3), vec![h.clone()]);
        let cx = divisor_complex(&l, &h, None).unwrap();
        assert_eq!(cx, SimplicialComplex::simplex(&[0]));
    }

    #[test]
    fn json_shape() {
        let h = SemigroupElement::new(vec![1, 0, 0, 1], 1);
        assert_eq!(
            serde_json::to_string(&h).unwrap(),
            r#"{"v":[1,0,0,1],"deg":1}"#
        );
    }
}
