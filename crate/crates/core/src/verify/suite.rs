//! Named verification items and their JSON reports.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use super::catalog::{all_entries, posets_up_to, CatalogEntry};
use super::gadgets::{self, GadgetCheck};
use super::patterns::verify_pattern_complexes;
use crate::betti::check_np;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{reduced_homology_dim, FieldSpec};
use crate::initial::{
    classify_4subset, induced_order_complex, koszul_pair_hochster_oracle, koszul_pair_initial,
    subsets_of_size, Shape,
};
use crate::lattice::DistributiveLattice;
use crate::poset::Poset;
use crate::sweep;

/// A verification item.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyItem {
    Patterns,
    FourSubsets,
    SegreNp { p: usize },
    KoszulCriterion,
    Gadgets,
}

impl VerifyItem {
    /// Every item, with both values of `p` for the `N_p` sweep.
    pub const ALL: [VerifyItem; 6] = [
        VerifyItem::Patterns,
        VerifyItem::FourSubsets,
        VerifyItem::SegreNp { p: 2 },
        VerifyItem::SegreNp { p: 3 },
        VerifyItem::KoszulCriterion,
        VerifyItem::Gadgets,
    ];

    /// Parses a CLI item name; `segre-np` takes its `p` separately.
    pub fn parse(name: &str, p: usize) -> Result<VerifyItem> {
        Ok(match name {
            "patterns" => VerifyItem::Patterns,
            "four-subsets" => VerifyItem::FourSubsets,
            "segre-np" => {
                if !(2..=3).contains(&p) {
                    return Err(Error::Invalid(format!(
                        "segre-np needs p in {{2, 3}}, got {p}"
                    )));
                }
                VerifyItem::SegreNp { p }
            }
            "koszul-criterion" => VerifyItem::KoszulCriterion,
            "gadgets" => VerifyItem::Gadgets,
            other => return Err(Error::Invalid(format!("unknown verify item `{other}`"))),
        })
    }
}

impl fmt::Display for VerifyItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyItem::Patterns => write!(f, "patterns"),
            VerifyItem::FourSubsets => write!(f, "four-subsets"),
            VerifyItem::SegreNp { p } => write!(f, "segre-np (p = {p})"),
            VerifyItem::KoszulCriterion => write!(f, "koszul-criterion"),
            VerifyItem::Gadgets => write!(f, "gadgets"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Status> {
        match s {
            "pass" => Ok(Status::Pass),
            "fail" => Ok(Status::Fail),
            _ => Err(Error::Invalid(format!("unknown status `{s}`"))),
        }
    }
}

/// Outcome of one item. On failure `witnesses` holds the counterexamples;
/// on success it holds a short summary.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub item: String,
    pub status: Status,
    pub checked: usize,
    pub witnesses: Vec<Value>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    fn new(
        item: VerifyItem,
        checked: usize,
        failures: Vec<Value>,
        summary: Vec<Value>,
    ) -> VerifyReport {
        let status = if failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        VerifyReport {
            item: item.to_string(),
            status,
            checked,
            witnesses: if failures.is_empty() {
                summary
            } else {
                failures
            },
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Runs one item.
pub fn run_item(item: VerifyItem, field: FieldSpec) -> VerifyReport {
    match item {
        VerifyItem::Patterns => report_patterns(),
        VerifyItem::FourSubsets => {
            let r = verify_four_subsets(&all_entries(), field);
            let summary = r
                .shape_counts
                .iter()
                .map(|(s, c)| json!({"shape": s.to_string(), "subsets": c}))
                .collect();
            let failures = r.disagreements.iter().map(|d| json!(d)).collect();
            VerifyReport::new(item, r.checked, failures, summary)
        }
        VerifyItem::SegreNp { p } => {
            let rows = verify_segre_np(p, field);
            let checked = rows.len();
            let failures = rows
                .iter()
                .filter(|r| r.base_holds && !r.extension_holds)
                .map(|r| json!(r))
                .collect();
            let base_holding = rows.iter().filter(|r| r.base_holds).count();
            let summary = vec![json!({"extensions": checked, "with_base_holding": base_holding})];
            VerifyReport::new(item, checked, failures, summary)
        }
        VerifyItem::KoszulCriterion => {
            let r = verify_koszul_criterion(&posets_up_to(4), field);
            let summary = vec![json!({"ordered_pairs": r.checked, "koszul": r.koszul})];
            let failures = r.disagreements.iter().map(|d| json!(d)).collect();
            VerifyReport::new(item, r.checked, failures, summary)
        }
        VerifyItem::Gadgets => {
            let checks = verify_gadgets();
            let checked = checks.iter().map(|c| c.checked).sum();
            let failures = checks
                .iter()
                .filter(|c| !c.passed())
                .map(|c| json!({"check": c.name, "failures": c.failures}))
                .collect();
            let summary = checks
                .iter()
                .map(|c| json!({"check": c.name, "checked": c.checked}))
                .collect();
            VerifyReport::new(item, checked, failures, summary)
        }
    }
}

/// Runs every item, in parallel, in a fixed order.
pub fn run_all(field: FieldSpec) -> Vec<VerifyReport> {
    sweep::par_map(&VerifyItem::ALL, |&item| run_item(item, field))
}

fn report_patterns() -> VerifyReport {
    let results = verify_pattern_complexes();
    let failures = results
        .iter()
        .filter(|r| !r.vanishes())
        .map(|r| json!(r))
        .collect();
    let summary = results.iter().map(|r| json!(r)).collect();
    let mut report = VerifyReport::new(VerifyItem::Patterns, results.len(), failures, summary);
    report.notes = vec![
        "case (d) read as β1 = β3, β2 ≠ β4, δ1 = δ2".into(),
        "δ labels are δ1, δ2 throughout".into(),
        "no case (e) exists in the list".into(),
        "case (b) has no lattice realization; its complex is still checked".into(),
    ];
    report
}

/// A four-subset whose predicted and computed `H̃_1` differ.
#[derive(Clone, Debug, Serialize)]
pub struct ShapeDisagreement {
    pub poset: String,
    pub subset: Vec<usize>,
    pub shape: Shape,
    pub predicted: usize,
    pub computed: usize,
}

#[derive(Clone, Debug, Default)]
pub struct FourSubsetReport {
    pub checked: usize,
    pub shape_counts: Vec<(Shape, usize)>,
    pub disagreements: Vec<ShapeDisagreement>,
}

/// Every four-element subset of every listed lattice: the shape's
/// predicted `H̃_1` against the induced order complex.
pub fn verify_four_subsets(entries: &[CatalogEntry], field: FieldSpec) -> FourSubsetReport {
    let rows: Vec<Vec<(Shape, Option<ShapeDisagreement>)>> = sweep::par_map(entries, |e| {
        let lattice = DistributiveLattice::ideal_lattice(&e.poset());
        subsets_of_size(lattice.len(), 4)
            .into_iter()
            .map(|w| {
                let shape = classify_4subset(&lattice, &w).expect("four elements");
                let computed = h1(&induced_order_complex(&lattice, &w), field);
                let predicted = shape.expected_h1();
                let bad = (computed != predicted).then(|| ShapeDisagreement {
                    poset: e.name.clone(),
                    subset: w.clone(),
                    shape,
                    predicted,
                    computed,
                });
                (shape, bad)
            })
            .collect()
    });
    let mut report = FourSubsetReport::default();
    let mut counts = std::collections::BTreeMap::new();
    for (shape, bad) in rows.into_iter().flatten() {
        report.checked += 1;
        *counts.entry(shape).or_insert(0) += 1;
        report.disagreements.extend(bad);
    }
    report.shape_counts = counts.into_iter().collect();
    report
}

fn h1(cx: &SimplicialComplex, field: FieldSpec) -> usize {
    reduced_homology_dim(cx, field, 1).expect("uncapped complex")
}

/// One extension `P_1 + E` in the `N_p` sweep.
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionRow {
    pub base: String,
    pub extension: String,
    pub p: usize,
    pub base_holds: bool,
    /// Only computed when the base holds.
    pub extension_holds: bool,
}

/// For each catalog `P_1` (at most 4 elements for `p = 2`, 3 for `p = 3`)
/// with `N_p`, checks `N_p` for `P_1 + point`; for `p = 2` and `|P_1| ≤ 3`
/// also for `P_1 + chain(k)`, `k = 1..=3`.
pub fn verify_segre_np(p: usize, field: FieldSpec) -> Vec<ExtensionRow> {
    let max_point = if p == 2 { 4 } else { 3 };
    let mut jobs: Vec<(CatalogEntry, String, Poset)> = Vec::new();
    for e in posets_up_to(max_point) {
        jobs.push((e.clone(), "point".into(), Poset::point()));
        if p == 2 && e.n <= 3 {
            for k in 2..=3 {
                jobs.push((e.clone(), format!("chain {k}"), Poset::chain(k)));
            }
        }
    }
    let bases: Vec<CatalogEntry> = posets_up_to(max_point);
    let base_holds: Vec<(String, bool)> = sweep::par_map(&bases, |e| {
        let l = DistributiveLattice::ideal_lattice(&e.poset());
        (
            e.name.clone(),
            check_np(&l, p, field).expect("p ∈ {2, 3}").holds,
        )
    });
    sweep::par_map(&jobs, |(e, ext_name, ext)| {
        let holds = base_holds.iter().find(|(n, _)| *n == e.name).unwrap().1;
        let extension_holds = holds && {
            let l = DistributiveLattice::ideal_lattice(&e.poset().disjoint_union(ext));
            check_np(&l, p, field).expect("p ∈ {2, 3}").holds
        };
        ExtensionRow {
            base: e.name.clone(),
            extension: ext_name.clone(),
            p,
            base_holds: holds,
            extension_holds,
        }
    })
}

/// Ordered pair of pairs where the lattice criterion and the oracle differ.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionDisagreement {
    pub poset: String,
    pub pair1: [usize; 2],
    pub pair2: [usize; 2],
    pub criterion: bool,
    pub oracle: bool,
}

#[derive(Clone, Debug, Default)]
pub struct CriterionReport {
    pub checked: usize,
    pub koszul: usize,
    /// Overlapping pairs, for which the criterion must be false.
    pub overlapping: usize,
    pub disagreements: Vec<CriterionDisagreement>,
}

/// Over every listed lattice and every ordered pair of distinct
/// incomparable pairs: disjoint pairs compare the lattice criterion with
/// the `H̃_1` oracle, overlapping pairs must fail the criterion.
pub fn verify_koszul_criterion(entries: &[CatalogEntry], field: FieldSpec) -> CriterionReport {
    let parts: Vec<CriterionReport> = sweep::par_map(entries, |e| {
        let lattice = DistributiveLattice::ideal_lattice(&e.poset());
        let pairs = lattice.incomparable_pairs();
        let mut r = CriterionReport::default();
        for &p1 in &pairs {
            for &p2 in &pairs {
                if p1 == p2 {
                    continue;
                }
                let criterion = koszul_pair_initial(&lattice, p1, p2).expect("distinct");
                match koszul_pair_hochster_oracle(&lattice, p1, p2, field) {
                    Ok(oracle) => {
                        r.checked += 1;
                        r.koszul += usize::from(criterion);
                        if oracle != criterion {
                            r.disagreements.push(CriterionDisagreement {
                                poset: e.name.clone(),
                                pair1: p1.elements(),
                                pair2: p2.elements(),
                                criterion,
                                oracle,
                            });
                        }
                    }
                    Err(Error::DegenerateW { .. }) => {
                        r.overlapping += 1;
                        if criterion {
                            r.disagreements.push(CriterionDisagreement {
                                poset: e.name.clone(),
                                pair1: p1.elements(),
                                pair2: p2.elements(),
                                criterion,
                                oracle: false,
                            });
                        }
                    }
                    Err(other) => panic!("oracle failed: {other}"),
                }
            }
        }
        r
    });
    parts
        .into_iter()
        .fold(CriterionReport::default(), |mut acc, r| {
            acc.checked += r.checked;
            acc.koszul += r.koszul;
            acc.overlapping += r.overlapping;
            acc.disagreements.extend(r.disagreements);
            acc
        })
}

/// All gadget checks over catalog posets with one to three elements.
pub fn verify_gadgets() -> Vec<GadgetCheck> {
    let small = posets_up_to(3);
    let mut jobs: Vec<Box<dyn Fn() -> Vec<GadgetCheck> + Send + Sync>> = Vec::new();
    for e in small.iter().filter(|e| e.n >= 1) {
        let p = e.poset();
        let q = p.clone();
        jobs.push(Box::new(move || {
            vec![gadgets::check_skeleton_levels(&q, 4)]
        }));
        let q = p.clone();
        jobs.push(Box::new(move || {
            vec![gadgets::check_level_containment(&q, 4)]
        }));
        let q = p.clone();
        jobs.push(Box::new(move || vec![gadgets::check_r_vanishing(&q)]));
        let q = p.clone();
        jobs.push(Box::new(move || {
            vec![gadgets::check_cone_replacement(&q, 3)]
        }));
        for n in 1..=2 {
            let q = p.clone();
            jobs.push(Box::new(move || gadgets::check_chain_extension(&q, n, 4)));
        }
    }
    jobs.push(Box::new(|| {
        let mut c = GadgetCheck {
            name: "chain simplices".into(),
            ..GadgetCheck::default()
        };
        for (r, d) in [(1, 3), (2, 3), (3, 2), (3, 3), (4, 3)] {
            match gadgets::verify_chain_simplices(r, d) {
                Ok(n) => c.checked += n,
                Err(h) => c.failures.push(format!("r = {r}, h = {}", h.to_monomial())),
            }
        }
        vec![c]
    }));
    let results: Vec<Vec<GadgetCheck>> = sweep::par_map(&jobs, |job| job());
    let mut merged: Vec<GadgetCheck> = Vec::new();
    for c in results.into_iter().flatten() {
        match merged.iter_mut().find(|m| m.name == c.name) {
            Some(m) => {
                m.checked += c.checked;
                m.failures.extend(c.failures);
            }
            None => merged.push(c),
        }
    }
    merged
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn item_names() {
        assert_eq!(
            VerifyItem::parse("patterns", 2).unwrap(),
            VerifyItem::Patterns
        );
        assert_eq!(
            VerifyItem::parse("segre-np", 3).unwrap(),
            VerifyItem::SegreNp { p: 3 }
        );
        assert!(VerifyItem::parse("segre-np", 4).is_err());
        assert!(VerifyItem::parse("nope", 2).is_err());
        assert_eq!("pass".parse::<Status>().unwrap(), Status::Pass);
    }

    #[test]
    fn patterns_report_passes() {
        let r = run_item(VerifyItem::Patterns, FieldSpec::Rationals);
        assert!(r.passed());
        assert_eq!(r.checked, 12);
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"status\":\"pass\""));
    }

    #[test]
    fn four_subsets_of_b3() {
        let b3: Vec<CatalogEntry> = all_entries()
            .into_iter()
            .filter(|e| e.name == "boolean_b3")
            .collect();
        let r = verify_four_subsets(&b3, FieldSpec::Rationals);
        assert_eq!(r.checked, 70);
        assert!(r.disagreements.is_empty());
        let grid: Vec<CatalogEntry> = all_entries()
            .into_iter()
            .filter(|e| e.name == "grid_2x3")
            .collect();
        let r = verify_four_subsets(&grid, FieldSpec::Rationals);
        assert_eq!(r.checked, 15);
        assert!(r.disagreements.is_empty());
    }

    #[test]
    fn chain_lattice_subsets_never_carry_a_cycle() {
        let chain = CatalogEntry {
            name: "chain5".into(),
            n: 5,
            covers: (0..4).map(|k| [k, k + 1]).collect(),
        };
        let r = verify_four_subsets(&[chain], FieldSpec::Rationals);
        assert!(r.shape_counts.iter().all(|&(s, _)| s == Shape::K));
        assert!(r.disagreements.is_empty());
    }

    #[test]
    fn koszul_criterion_small() {
        // stacked pairs need four elements
        let r = verify_koszul_criterion(&posets_up_to(3), FieldSpec::Rationals);
        assert!(r.disagreements.is_empty(), "{:?}", r.disagreements);
        assert_eq!(r.koszul, 0);
        let stacked: Vec<CatalogEntry> = all_entries()
            .into_iter()
            .filter(|e| e.name == "stacked_pairs")
            .collect();
        let r = verify_koszul_criterion(&stacked, FieldSpec::Rationals);
        assert!(r.disagreements.is_empty(), "{:?}", r.disagreements);
        assert!(r.koszul > 0);
    }

    #[test]
    fn gadget_checks_pass() {
        for c in verify_gadgets() {
            assert!(c.checked > 0, "{} checked nothing", c.name);
            assert!(
                c.passed(),
                "{}: {:?}",
                c.name,
                &c.failures[..c.failures.len().min(5)]
            );
        }
    }
}
