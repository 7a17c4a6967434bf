//! Exact reduced simplicial homology over ℚ and prime fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{rank_mod_p, rank_rational, smith_invariants, IntMatrix, SparseRow};

/// Coefficient field. Serialized as its short name, `q` or `fp:<p>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
#[derive(Default)]
pub enum FieldSpec {
    #[default]
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// `F_p`, checking that `p` is prime.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime { p })
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    /// Rank of the matrix with the given rows.
    pub fn rank(self, rows: &[SparseRow]) -> usize {
        match self {
            FieldSpec::Rationals => rank_rational(rows),
            FieldSpec::Prime(p) => rank_mod_p(rows, p),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q`, `f2`, `f3`, `f5` and `fp:<p>`.
    fn from_str(s: &str) -> Result<FieldSpec> {
        let s = s.trim().to_ascii_lowercase();
        let p = match s.as_str() {
            "q" | "qq" | "rationals" => return Ok(FieldSpec::Rationals),
            "f2" => 2,
            "f3" => 3,
            "f5" => 5,
            other => other
                .strip_prefix("fp:")
                .and_then(|t| t.parse::<u64>().ok())
                .ok_or_else(|| Error::Invalid(format!("unknown field `{s}`")))?,
        };
        FieldSpec::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Sparse rows of the transposed boundary map `∂_i`: one row per
/// `i`-face, listing its facets among the `(i-1)`-faces with signs.
fn boundary_rows(cx: &SimplicialComplex, i: usize) -> Vec<SparseRow> {
    let lower = cx.raw_faces(i);
    let mut sub: Vec<u32> = Vec::with_capacity(i);
    cx.raw_faces(i + 1)
        .iter()
        .map(|face| {
            let mut row: SparseRow = Vec::with_capacity(face.len());
            for skip in 0..face.len() {
                sub.clear();
                sub.extend(
                    face.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != skip)
                        .map(|(_, &v)| v),
                );
                let pos = lower
                    .binary_search_by(|f| f.as_slice().cmp(&sub))
                    .expect("complex is downward closed");
                row.push((pos as u32, if skip % 2 == 0 { 1 } else { -1 }));
            }
            row.sort_unstable_by_key(|&(c, _)| c);
            row
        })
        .collect()
}

/// The boundary matrix `∂_i : C_i → C_{i-1}`; rows index `(i-1)`-faces and
/// columns index `i`-faces, both in stored order. `∂_0` is the augmentation.
pub fn boundary_matrix(cx: &SimplicialComplex, i: usize) -> IntMatrix {
    let rows = cx.raw_faces(i).len();
    let cols = cx.raw_faces(i + 1).len();
    let mut m = IntMatrix::zeros(rows, cols);
    for (c, row) in boundary_rows(cx, i).iter().enumerate() {
        for &(r, v) in row {
            m.set(r as usize, c, v);
        }
    }
    m
}

fn check_cap(cx: &SimplicialComplex, max_i: isize) -> Result<()> {
    if let Some(cap) = cx.cap() {
        if (cap as isize) < max_i + 1 {
            return Err(Error::InsufficientCap {
                cap,
                requested: max_i.max(0) as usize,
            });
        }
    }
    Ok(())
}

/// `dim H̃_k` for `k = -1, 0, …, max_i`.
pub fn reduced_homology_dims(
    cx: &SimplicialComplex,
    field: FieldSpec,
    max_i: isize,
) -> Result<Vec<usize>> {
    check_cap(cx, max_i)?;
    let len = (max_i + 2).max(0) as usize;
    if cx.is_void() {
        return Ok(vec![0; len]);
    }
    // rank[k] = rank of ∂_k (C_k → C_{k-1}), k = 0..=max_i + 1
    let ranks: Vec<usize> = (0..len)
        .map(|k| {
            if cx.raw_faces(k + 1).is_empty() {
                0
            } else {
                field.rank(&boundary_rows(cx, k))
            }
        })
        .collect();
    Ok((0..len)
        .map(|idx| {
            // idx = k + 1
            let f = cx.raw_faces(idx).len();
            let below = if idx == 0 { 0 } else { ranks[idx - 1] };
            f - below - ranks[idx]
        })
        .collect())
}

/// `dim H̃_k` for a single `k ≥ -1`.
pub fn reduced_homology_dim(cx: &SimplicialComplex, field: FieldSpec, k: isize) -> Result<usize> {
    if k < -1 {
        return Ok(0);
    }
    check_cap(cx, k)?;
    if cx.is_void() {
        return Ok(0);
    }
    let rank = |j: isize| -> usize {
        if j < 0 || cx.raw_faces(j as usize + 1).is_empty() {
            0
        } else {
            field.rank(&boundary_rows(cx, j as usize))
        }
    };
    let f = cx.face_count(k);
    Ok(f - rank(k) - rank(k + 1))
}

/// Reduced Euler characteristic `Σ (-1)^k f_k` over `k ≥ -1`.
pub fn reduced_euler_characteristic(cx: &SimplicialComplex) -> i64 {
    cx.f_vector()
        .iter()
        .enumerate()
        .map(|(idx, &f)| if idx % 2 == 1 { f as i64 } else { -(f as i64) })
        .sum()
}

/// Invariant factors greater than one of `∂_{k+1}`: the torsion of the
/// integral homology group `H_k`.
pub fn integral_torsion(cx: &SimplicialComplex, k: usize) -> Result<Vec<BigInt>> {
    check_cap(cx, k as isize)?;
    let m = boundary_matrix(cx, k + 1);
    Ok(smith_invariants(&m)
        .into_iter()
        .filter(|d| !d.is_one())
        .collect())
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<FieldSpec> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::order_complex;
    use crate::lattice::DistributiveLattice;
    use crate::poset::Poset;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn four_cycle() -> SimplicialComplex {
        SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]])
    }

    #[test]
    fn four_cycle_has_a_loop() {
        let dims = reduced_homology_dims(&four_cycle(), Q, 1).unwrap();
        assert_eq!(dims, vec![0, 0, 1]);
    }

    #[test]
    fn simplex_is_acyclic() {
        let s = SimplicialComplex::simplex(&[0, 1, 2, 3]);
        assert_eq!(reduced_homology_dims(&s, Q, 3).unwrap(), vec![0; 5]);
    }

    #[test]
    fn two_disjoint_edges() {
        let cx = SimplicialComplex::from_facets(&[vec![0, 1], vec![2, 3]]);
        assert_eq!(reduced_homology_dims(&cx, Q, 1).unwrap(), vec![0, 1, 0]);
        // the 4 x 2 matrix ∂_1 has rank 2
        assert_eq!(crate::linalg::bareiss_rank(&boundary_matrix(&cx, 1)), 2);
    }

    #[test]
    fn empty_face_conventions() {
        let e = SimplicialComplex::empty_face_only();
        assert_eq!(reduced_homology_dims(&e, Q, 0).unwrap(), vec![1, 0]);
        let v = SimplicialComplex::void();
        assert_eq!(reduced_homology_dims(&v, Q, 2).unwrap(), vec![0; 4]);
        let pt = SimplicialComplex::simplex(&[7]);
        assert_eq!(reduced_homology_dims(&pt, Q, 0).unwrap(), vec![0, 0]);
    }

    #[test]
    fn graph_of_tetrahedron() {
        let k4 = SimplicialComplex::simplex(&[0, 1, 2, 3]).skeleton(1);
        assert_eq!(reduced_homology_dim(&k4, Q, 1).unwrap(), 3);
        // Euler characteristic cross-check: -1 + 4 - 6 = -3
        assert_eq!(reduced_euler_characteristic(&k4), -3);
    }

    #[test]
    fn boundary_matrices() {
        let tri = SimplicialComplex::simplex(&[0, 1, 2]);
        let d1 = boundary_matrix(&tri.skeleton(1), 1);
        assert_eq!((d1.rows(), d1.cols()), (3, 3));
        assert_eq!(crate::linalg::bareiss_rank(&d1), 2);
        let d0 = boundary_matrix(&tri, 0);
        assert_eq!(d0.row(0), &[1, 1, 1]);
        assert!(d1.mul(&boundary_matrix(&tri, 2)).is_zero());
        assert!(d0.mul(&d1).is_zero());
    }

    #[test]
    fn diamond_order_complex_is_acyclic() {
        let l = DistributiveLattice::ideal_lattice(&Poset::antichain(2));
        let oc = order_complex(&l);
        assert_eq!(reduced_homology_dims(&oc, Q, 2).unwrap(), vec![0; 4]);
    }

    #[test]
    fn capped_complex_refuses_high_homology() {
        let s = SimplicialComplex::from_facets_capped(&[vec![0, 1, 2, 3]], Some(1));
        assert!(reduced_homology_dims(&s, Q, 0).is_ok());
        assert!(matches!(
            reduced_homology_dims(&s, Q, 1),
            Err(Error::InsufficientCap { cap: 1, .. })
        ));
    }

    #[test]
    fn projective_plane_torsion() {
        // six-vertex triangulation of RP^2
        let facets = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ];
        let rp2 =
            SimplicialComplex::from_facets(&facets.iter().map(|f| f.to_vec()).collect::<Vec<_>>());
        assert_eq!(reduced_homology_dims(&rp2, Q, 2).unwrap(), vec![0, 0, 0, 0]);
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(
            reduced_homology_dims(&rp2, f2, 2).unwrap(),
            vec![0, 0, 1, 1]
        );
        assert_eq!(integral_torsion(&rp2, 1).unwrap(), vec![BigInt::from(2)]);
    }

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), Q);
        assert_eq!("f3".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert_eq!("fp:7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert!(matches!(
            "fp:9".parse::<FieldSpec>(),
            Err(Error::NotPrime { p: 9 })
        ));
        assert!("r".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(5).to_string(), "fp:5");
    }
}
