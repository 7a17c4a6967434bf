//! Symbolic complexes built from equality patterns of two length-four
//! lists of lattice elements.
//!
//! A list `[c_1, c_2, c_3, c_4]` contributes the facets
//! `{(1, c_{π(1)}), …, (4, c_{π(4)})}` for every permutation `π`; the
//! complex `Δ'` is the union over the two lists. Vertex `(level, label)` is
//! encoded as `16 * level + label`.

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::homology::{reduced_homology_dim, FieldSpec};

/// One equality pattern. Equal labels mean equal lattice elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PatternCase {
    pub tag: char,
    pub a: [usize; 4],
    pub b: [usize; 4],
    /// Whether some distributive lattice realizes the pattern.
    pub realizable: bool,
}

/// The twelve cases. In case `b`, `2 h_δ = h_{β_1} + h_{β_2}` forces
/// `β_1 = β_2`, so the case has no realization.
pub const CASES: [PatternCase; 12] = [
    PatternCase {
        tag: 'a',
        a: [0, 1, 0, 1],
        b: [0, 1, 2, 3],
        realizable: true,
    },
    PatternCase {
        tag: 'b',
        a: [0, 1, 0, 1],
        b: [0, 1, 2, 2],
        realizable: false,
    },
    PatternCase {
        tag: 'c',
        a: [0, 1, 0, 2],
        b: [0, 1, 3, 4],
        realizable: true,
    },
    PatternCase {
        tag: 'd',
        a: [0, 1, 0, 2],
        b: [0, 1, 3, 3],
        realizable: true,
    },
    PatternCase {
        tag: 'f',
        a: [0, 1, 0, 2],
        b: [0, 1, 1, 3],
        realizable: true,
    },
    PatternCase {
        tag: 'g',
        a: [0, 1, 0, 2],
        b: [0, 1, 1, 1],
        realizable: true,
    },
    PatternCase {
        tag: 'h',
        a: [0, 1, 0, 0],
        b: [0, 1, 2, 3],
        realizable: true,
    },
    PatternCase {
        tag: 'i',
        a: [0, 1, 0, 0],
        b: [0, 1, 2, 2],
        realizable: true,
    },
    PatternCase {
        tag: 'j',
        a: [0, 1, 0, 0],
        b: [0, 1, 1, 2],
        realizable: true,
    },
    PatternCase {
        tag: 'k',
        a: [0, 1, 0, 0],
        b: [0, 1, 1, 1],
        realizable: true,
    },
    PatternCase {
        tag: 'l',
        a: [0, 1, 2, 2],
        b: [0, 1, 3, 3],
        realizable: true,
    },
    PatternCase {
        tag: 'm',
        a: [0, 1, 2, 3],
        b: [0, 1, 4, 5],
        realizable: true,
    },
];

fn perms() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                if a + b + c > 6 {
                    continue;
                }
                let d = 6 - a - b - c;
                if a != b && a != c && b != c && d != a && d != b && d != c {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

fn list_facets(list: &[usize; 4]) -> Vec<Vec<usize>> {
    perms()
        .iter()
        .map(|pi| (0..4).map(|level| 16 * level + list[pi[level]]).collect())
        .collect()
}

/// The complex of a single list.
pub fn single_list_complex(list: &[usize; 4]) -> SimplicialComplex {
    SimplicialComplex::from_facets(&list_facets(list))
}

/// `Δ'` for a case.
pub fn pattern_complex(case: &PatternCase) -> SimplicialComplex {
    let mut facets = list_facets(&case.a);
    facets.extend(list_facets(&case.b));
    SimplicialComplex::from_facets(&facets)
}

/// Looks up a case by tag.
pub fn case(tag: char) -> Option<&'static PatternCase> {
    CASES.iter().find(|c| c.tag == tag)
}

/// `dim H̃_1(Δ')` over each field.
#[derive(Clone, Debug, Serialize)]
pub struct PatternResult {
    pub case: char,
    pub realizable: bool,
    pub h1: Vec<(String, usize)>,
}

impl PatternResult {
    pub fn vanishes(&self) -> bool {
        self.h1.iter().all(|&(_, d)| d == 0)
    }
}

/// Fields used for the pattern checks.
pub const PATTERN_FIELDS: [FieldSpec; 3] = [
    FieldSpec::Rationals,
    FieldSpec::Prime(2),
    FieldSpec::Prime(3),
];

/// Computes `H̃_1(Δ')` for every case.
pub fn verify_pattern_complexes() -> Vec<PatternResult> {
    CASES
        .iter()
        .map(|c| {
            let cx = pattern_complex(c);
            let h1 = PATTERN_FIELDS
                .iter()
                .map(|&f| {
                    (
                        f.to_string(),
                        reduced_homology_dim(&cx, f, 1).expect("uncapped"),
                    )
                })
                .collect();
            PatternResult {
                case: c.tag,
                realizable: c.realizable,
                h1,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_are_distinct() {
        let mut p = perms();
        p.sort();
        p.dedup();
        assert_eq!(p.len(), 24);
    }

    #[test]
    fn all_cases_vanish() {
        for r in verify_pattern_complexes() {
            assert!(r.vanishes(), "case {} has {:?}", r.case, r.h1);
        }
    }

    #[test]
    fn identical_lists_give_one_piece() {
        for c in &CASES {
            let cx = pattern_complex(&PatternCase { b: c.a, ..*c });
            assert_eq!(cx, single_list_complex(&c.a));
            for f in PATTERN_FIELDS {
                assert_eq!(reduced_homology_dim(&cx, f, 1).unwrap(), 0);
                assert_eq!(reduced_homology_dim(&cx, f, 0).unwrap(), 0);
            }
        }
    }

    #[test]
    fn distinct_labels_give_all_bijections() {
        let cx = single_list_complex(&[0, 1, 2, 3]);
        assert_eq!(cx.facets().len(), 24);
        assert_eq!(cx.dim(), 3);
    }

    #[test]
    fn lookup() {
        assert!(case('e').is_none());
        assert!(!case('b').unwrap().realizable);
        assert_eq!(CASES.iter().filter(|c| c.realizable).count(), 11);
    }
}
