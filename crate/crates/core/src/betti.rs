//! Graded and multigraded Betti numbers of Hibi rings.
//!
//! `β_{i,h} = dim H̃_{i-1}(Δ_h)` for every multidegree `h`, and `β_{i,j}`
//! sums this over the degree-`j` part of the semigroup. Only faces up to
//! dimension `i` of `Δ_h` are ever built.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::homology::{reduced_homology_dim, FieldSpec};
use crate::lattice::DistributiveLattice;
use crate::poset::Poset;
use crate::semigroup::{divisor_complex, enumerate_degree, membership, SemigroupElement};
use crate::sweep;

/// `β_{i,h}` over the given field.
pub fn multigraded_betti(
    lattice: &DistributiveLattice,
    i: usize,
    h: &SemigroupElement,
    field: FieldSpec,
) -> Result<u64> {
    let cx = divisor_complex(lattice, h, Some(i))?;
    Ok(reduced_homology_dim(&cx, field, i as isize - 1)? as u64)
}

fn betti_of_member(
    lattice: &DistributiveLattice,
    i: usize,
    h: &SemigroupElement,
    field: FieldSpec,
) -> u64 {
    multigraded_betti(lattice, i, h, field)
        .expect("enumerated elements lie in H and the cap suffices")
}

/// `β_{i,j}` over the given field.
pub fn graded_betti(lattice: &DistributiveLattice, i: usize, j: usize, field: FieldSpec) -> u64 {
    // Δ_h has at most j vertices per face, so nothing lives beyond i = j
    if i > j {
        return 0;
    }
    let hs = enumerate_degree(lattice, j);
    sweep::par_sum(&hs, |h| betti_of_member(lattice, i, h, field))
}

/// Degree-`j` multidegrees with `β_{i,h} ≠ 0`, sorted by vector.
pub fn nonzero_multidegrees(
    lattice: &DistributiveLattice,
    i: usize,
    j: usize,
    field: FieldSpec,
) -> Vec<(SemigroupElement, u64)> {
    if i > j {
        return Vec::new();
    }
    let hs = enumerate_degree(lattice, j);
    sweep::par_filter_map(&hs, |h| {
        let b = betti_of_member(lattice, i, h, field);
        (b > 0).then_some(b)
    })
}

/// Betti numbers computed on a set of `(i, j)` cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub field: FieldSpec,
    pub graded: BTreeMap<(usize, usize), u64>,
    /// Nonzero `β_{i,h}`, when requested.
    pub multigraded: Option<BTreeMap<(usize, SemigroupElement), u64>>,
    pub scope: BTreeSet<(usize, usize)>,
}

/// One row of a table dump.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRow {
    pub i: usize,
    pub j: usize,
    pub count: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub multidegrees: Option<Vec<MultidegreeCount>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultidegreeCount {
    pub h: SemigroupElement,
    pub count: u64,
}

impl BettiTable {
    /// Computes every cell in `cells`.
    pub fn compute(
        lattice: &DistributiveLattice,
        cells: &[(usize, usize)],
        field: FieldSpec,
        with_multigraded: bool,
    ) -> BettiTable {
        let mut graded = BTreeMap::new();
        let mut multi = BTreeMap::new();
        for &(i, j) in cells {
            let nonzero = nonzero_multidegrees(lattice, i, j, field);
            graded.insert((i, j), nonzero.iter().map(|(_, b)| b).sum());
            if with_multigraded {
                for (h, b) in nonzero {
                    multi.insert((i, h), b);
                }
            }
        }
        BettiTable {
            field,
            graded,
            multigraded: with_multigraded.then_some(multi),
            scope: cells.iter().copied().collect(),
        }
    }

    /// All cells with `i ≤ max_i` and `j ≤ max_j`.
    pub fn full(
        lattice: &DistributiveLattice,
        max_i: usize,
        max_j: usize,
        field: FieldSpec,
    ) -> BettiTable {
        let cells: Vec<(usize, usize)> = (0..=max_i)
            .flat_map(|i| (0..=max_j).map(move |j| (i, j)))
            .collect();
        Self::compute(lattice, &cells, field, false)
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u64> {
        self.graded.get(&(i, j)).copied()
    }

    pub fn rows(&self) -> Vec<BettiRow> {
        self.graded
            .iter()
            .map(|(&(i, j), &count)| BettiRow {
                i,
                j,
                count,
                multidegrees: self.multigraded.as_ref().map(|m| {
                    m.iter()
                        .filter(|((mi, h), _)| *mi == i && h.degree as usize == j)
                        .map(|((_, h), &count)| MultidegreeCount {
                            h: h.clone(),
                            count,
                        })
                        .collect()
                }),
            })
            .collect()
    }
}

/// A failing multidegree of a property `N_p` check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NpWitness {
    pub i: usize,
    pub j: usize,
    pub h: SemigroupElement,
    /// Lattice indices of the multichain summing to `h`.
    pub multichain: Vec<usize>,
    /// `dim H̃_{i-1}(Δ_h)`.
    pub dim: u64,
}

/// Outcome of an `N_p` check; `holds` exactly when there are no witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NpCertificate {
    pub p: usize,
    pub holds: bool,
    pub field: FieldSpec,
    pub witnesses: Vec<NpWitness>,
}

fn witnesses(
    lattice: &DistributiveLattice,
    i: usize,
    j: usize,
    field: FieldSpec,
) -> Vec<NpWitness> {
    nonzero_multidegrees(lattice, i, j, field)
        .into_iter()
        .map(|(h, dim)| NpWitness {
            i,
            j,
            multichain: membership(lattice, &h)
                .expect("enumerated elements lie in H")
                .indices(lattice),
            h,
            dim,
        })
        .collect()
}

fn certificate(p: usize, field: FieldSpec, witnesses: Vec<NpWitness>) -> NpCertificate {
    NpCertificate {
        p,
        holds: witnesses.is_empty(),
        field,
        witnesses,
    }
}

/// `N_2`: the Hibi ring is quadratic, so it holds iff `β_{2,4} = 0`.
pub fn check_n2(lattice: &DistributiveLattice, field: FieldSpec) -> NpCertificate {
    certificate(2, field, witnesses(lattice, 2, 4, field))
}

/// `N_3`: holds iff `N_2` holds and `β_{3,5} = 0`.
pub fn check_n3(lattice: &DistributiveLattice, field: FieldSpec) -> NpCertificate {
    let mut w = witnesses(lattice, 2, 4, field);
    w.extend(witnesses(lattice, 3, 5, field));
    certificate(3, field, w)
}

/// Dispatches on `p ∈ {2, 3}`.
pub fn check_np(
    lattice: &DistributiveLattice,
    p: usize,
    field: FieldSpec,
) -> Option<NpCertificate> {
    match p {
        2 => Some(check_n2(lattice, field)),
        3 => Some(check_n3(lattice, field)),
        _ => None,
    }
}

/// Whether `β_{4,6} > 0` for the Boolean lattice on three atoms.
pub fn check_n4_failure_b3(field: FieldSpec) -> bool {
    let b3 = DistributiveLattice::ideal_lattice(&Poset::antichain(3));
    graded_betti(&b3, 4, 6, field) > 0
}

/// Compares `β_{i,j}` of the interval `[lo, hi]` with that of the whole
/// lattice; returns `(interval, whole)`.
pub fn subsemigroup_betti(
    lattice: &DistributiveLattice,
    lo: usize,
    hi: usize,
    i: usize,
    j: usize,
    field: FieldSpec,
) -> Result<(u64, u64)> {
    let sub = lattice.interval(lo, hi)?;
    Ok((
        graded_betti(&sub, i, j, field),
        graded_betti(lattice, i, j, field),
    ))
}

/// `β_{i,j}` of an interval never exceeds that of the lattice.
pub fn subsemigroup_betti_leq(
    lattice: &DistributiveLattice,
    lo: usize,
    hi: usize,
    i: usize,
    j: usize,
    field: FieldSpec,
) -> Result<bool> {
    let (sub, whole) = subsemigroup_betti(lattice, lo, hi, i, j, field)?;
    Ok(sub <= whole)
}

/// A nonzero `β_{i,j}` on either factor forces a nonzero `β_{i,j}` on the
/// disjoint union.
pub fn nonzero_transfer_check(
    p1: &Poset,
    p2: &Poset,
    i: usize,
    j: usize,
    field: FieldSpec,
) -> bool {
    let b = |p: &Poset| graded_betti(&DistributiveLattice::ideal_lattice(p), i, j, field);
    let left = b(p1) != 0 || b(p2) != 0;
    !left || b(&p1.disjoint_union(p2)) != 0
}
