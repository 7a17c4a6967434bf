//! Auxiliary complexes attached to disjoint unions with a point or a chain.
//!
//! [`PointGadgets`] works in `I(P_1 + {b})`, whose elements are pairs
//! `(α, ∅)` and `(α, {b})`; [`ChainGadgets`] works in `I(P_1 + C)` where `C`
//! is a chain `a_1 < … < a_n < x`, next to `I(P_1 + (C - x))`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::{ChainVector, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{reduced_homology_dim, FieldSpec};
use crate::lattice::DistributiveLattice;
use crate::poset::{OrderIdeal, Poset};
use crate::semigroup::{
    divisor_complex, enumerate_degree, generator_vector, membership, SemigroupElement,
};

/// Parameters of a gadget complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GadgetSpec {
    /// `F^l(Δ_g)` with `0 ≤ l ≤ d - 1`.
    FL { g: SemigroupElement, l: usize },
    /// `R_{g,ε}` with `1 ≤ ε ≤ d`.
    RGEps { g: SemigroupElement, eps: usize },
    /// `X_h` over the chain extension.
    XH { h: SemigroupElement },
    /// A symbolic pattern complex, by case tag.
    PatternComplex { case: char },
}

impl GadgetSpec {
    /// Checks the parameter ranges.
    pub fn validate(&self) -> Result<()> {
        match self {
            GadgetSpec::FL { g, l } => {
                let d = g.degree as usize;
                if d == 0 || *l > d - 1 {
                    return Err(Error::BadLevel {
                        level: *l,
                        max: d.saturating_sub(1),
                    });
                }
            }
            GadgetSpec::RGEps { g, eps } => {
                let d = g.degree as usize;
                if *eps < 1 || *eps > d {
                    return Err(Error::BadEpsilon { eps: *eps, max: d });
                }
            }
            GadgetSpec::XH { .. } => {}
            GadgetSpec::PatternComplex { case } => {
                if !super::patterns::CASES.iter().any(|c| c.tag == *case) {
                    return Err(Error::Invalid(format!("unknown pattern case `{case}`")));
                }
            }
        }
        Ok(())
    }
}

/// Multisets of `d` lattice indices whose generators sum to `g`, each
/// sorted, in lexicographic order.
pub fn decompositions(lattice: &DistributiveLattice, g: &SemigroupElement) -> Vec<Vec<usize>> {
    let gens: Vec<SemigroupElement> = (0..lattice.len())
        .map(|a| generator_vector(lattice, a))
        .collect();
    let mut out = Vec::new();
    fn go(
        gens: &[SemigroupElement],
        rest: &SemigroupElement,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if rest.degree == 0 {
            out.push(cur.clone());
            return;
        }
        for a in start..gens.len() {
            if let Some(r) = rest.checked_sub(&gens[a]) {
                cur.push(a);
                go(gens, &r, a, cur, out);
                cur.pop();
            }
        }
    }
    go(&gens, g, 0, &mut Vec::new(), &mut out);
    out
}

fn check_member(lattice: &DistributiveLattice, g: &SemigroupElement) -> Result<()> {
    match membership(lattice, g) {
        Some(_) => Ok(()),
        None => Err(Error::NotInSemigroup {
            v: g.v.clone(),
            degree: g.degree,
        }),
    }
}

/// Gadgets over `P = P_1 + {b}`.
#[derive(Clone, Debug)]
pub struct PointGadgets {
    base: DistributiveLattice,
    ext: DistributiveLattice,
    n1: usize,
}

impl PointGadgets {
    pub fn new(p1: &Poset) -> PointGadgets {
        PointGadgets {
            base: DistributiveLattice::ideal_lattice(p1),
            ext: DistributiveLattice::ideal_lattice(&p1.disjoint_union(&Poset::point())),
            n1: p1.len(),
        }
    }

    /// `I(P_1)`.
    pub fn base(&self) -> &DistributiveLattice {
        &self.base
    }

    /// `I(P_1 + {b})`.
    pub fn ext(&self) -> &DistributiveLattice {
        &self.ext
    }

    /// Index of `(α, {b})` or `(α, ∅)` in the extended lattice.
    pub fn pin(&self, alpha: usize, with_b: bool) -> usize {
        let bits = self.base.element(alpha).bits() | if with_b { 1 << self.n1 } else { 0 };
        self.ext
            .index_of(OrderIdeal(bits))
            .expect("product of ideals is an ideal")
    }

    /// `g_ε = (g, (d - ε) h_∅ + ε h_b)`.
    pub fn g_eps(&self, g: &SemigroupElement, eps: usize) -> Result<SemigroupElement> {
        let d = g.degree as usize;
        if eps > d {
            return Err(Error::BadEpsilon { eps, max: d });
        }
        check_member(&self.base, g)?;
        let n = self.n1;
        let mut v = Vec::with_capacity(2 * n + 2);
        v.extend_from_slice(&g.v[..n]);
        v.push(eps as u32);
        v.extend_from_slice(&g.v[n..]);
        v.push((d - eps) as u32);
        Ok(SemigroupElement::new(v, g.degree))
    }

    /// `Δ_{g_ε}` in the extended lattice.
    pub fn delta_g_eps(&self, g: &SemigroupElement, eps: usize) -> Result<SimplicialComplex> {
        divisor_complex(&self.ext, &self.g_eps(g, eps)?, None)
    }

    /// `Δ_g` transported along `α ↦ (α, ∅)`.
    pub fn pinned_delta_g(&self, g: &SemigroupElement) -> Result<SimplicialComplex> {
        let cx = divisor_complex(&self.base, g, None)?;
        Ok(self.transport(&cx, false))
    }

    fn transport(&self, cx: &SimplicialComplex, with_b: bool) -> SimplicialComplex {
        if cx.is_void() {
            return SimplicialComplex::void();
        }
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for d in 0..=cx.dim().max(0) {
            for f in cx.faces(d) {
                faces.push(f.iter().map(|&a| self.pin(a, with_b)).collect());
            }
        }
        if faces.is_empty() {
            return SimplicialComplex::empty_face_only();
        }
        SimplicialComplex::from_facets(&faces)
    }

    /// `F^l(Δ_g)`: the union, over all ways of writing `g` as a sum of `d`
    /// generators, of the faces of dimension at most `l` on `(g_i, ∅)`.
    pub fn build_f_l(&self, g: &SemigroupElement, l: usize) -> Result<SimplicialComplex> {
        GadgetSpec::FL { g: g.clone(), l }.validate()?;
        check_member(&self.base, g)?;
        let mut facets = Vec::new();
        for dec in decompositions(&self.base, g) {
            let support: Vec<usize> = dec
                .iter()
                .copied()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let size = (l + 1).min(support.len());
            for subset in crate::initial::subsets_of_size(support.len(), size) {
                facets.push(
                    subset
                        .iter()
                        .map(|&k| self.pin(support[k], false))
                        .collect(),
                );
            }
        }
        Ok(SimplicialComplex::from_facets(&facets))
    }

    /// `R_{g,ε}`: over all decompositions `g = g_1 + … + g_d` and all
    /// choices of `d - 1` distinct positions, the simplex with `ε - 1`
    /// vertices `(g_i, b)` and `d - ε` vertices `(g_i, ∅)`.
    pub fn build_r_g_eps(&self, g: &SemigroupElement, eps: usize) -> Result<SimplicialComplex> {
        GadgetSpec::RGEps { g: g.clone(), eps }.validate()?;
        check_member(&self.base, g)?;
        let d = g.degree as usize;
        let mut facets = Vec::new();
        for dec in decompositions(&self.base, g) {
            for omitted in 0..d {
                let kept: Vec<usize> = (0..d).filter(|&k| k != omitted).collect();
                for b_positions in crate::initial::subsets_of_size(kept.len(), eps - 1) {
                    let facet: Vec<usize> = kept
                        .iter()
                        .enumerate()
                        .map(|(k, &pos)| self.pin(dec[pos], b_positions.contains(&k)))
                        .collect();
                    facets.push(facet);
                }
            }
        }
        Ok(SimplicialComplex::from_facets(&facets))
    }

    /// The cone replacement: for a decomposition `dec`, distinct positions
    /// `sigma` (with distinct generators, `|sigma| = d - ε + 1`) and a
    /// further position `apex`, returns the simplex
    /// `σ = [(g_{i_1}, ∅), …]` and `σ' = Σ_j (-1)^j [(g_apex, b), σ \ i_j]`.
    pub fn cone_replacement(
        &self,
        dec: &[usize],
        sigma: &[usize],
        apex: usize,
    ) -> (ChainVector, ChainVector) {
        let verts: Vec<usize> = sigma.iter().map(|&pos| self.pin(dec[pos], false)).collect();
        let top = self.pin(dec[apex], true);
        let s = ChainVector::oriented(&verts, 1);
        let mut s_prime = ChainVector::zero(verts.len() as isize - 1);
        for j in 0..verts.len() {
            let mut face = vec![top];
            face.extend(
                verts
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &v)| v),
            );
            s_prime.add_oriented(&face, if j % 2 == 0 { 1 } else { -1 });
        }
        (s, s_prime)
    }
}

/// Gadgets over `Q = P_1 + (a_1 < … < a_n < x)` next to
/// `P = P_1 + (a_1 < … < a_n)`.
#[derive(Clone, Debug)]
pub struct ChainGadgets {
    n1: usize,
    n: usize,
    q: DistributiveLattice,
    p: DistributiveLattice,
}

impl ChainGadgets {
    pub fn new(p1: &Poset, n: usize) -> ChainGadgets {
        ChainGadgets {
            n1: p1.len(),
            n,
            q: DistributiveLattice::ideal_lattice(&p1.disjoint_union(&Poset::chain(n + 1))),
            p: DistributiveLattice::ideal_lattice(&p1.disjoint_union(&Poset::chain(n))),
        }
    }

    /// `I(Q)`.
    pub fn q(&self) -> &DistributiveLattice {
        &self.q
    }

    /// `I(P)`.
    pub fn p(&self) -> &DistributiveLattice {
        &self.p
    }

    fn x(&self) -> usize {
        self.n1 + self.n
    }

    /// Number of chain elements in the lattice element `idx` of `I(Q)`:
    /// level `n` is `P_2 = {a_1, …, a_n}`, level `n + 1` also contains `x`.
    pub fn level(&self, idx: usize) -> usize {
        let bits = self.q.element(idx).bits() >> self.n1;
        bits.count_ones() as usize
    }

    /// Replaces the chain part of `idx` by the given level.
    pub fn with_level(&self, idx: usize, level: usize) -> usize {
        let p1_mask = (1u64 << self.n1) - 1;
        let bits = (self.q.element(idx).bits() & p1_mask) | (((1u64 << level) - 1) << self.n1);
        self.q
            .index_of(OrderIdeal(bits))
            .expect("product of ideals")
    }

    /// Writes `h ∈ H(Q)` as `(ε, d - ε, h')` with `h' ∈ H(P)`.
    pub fn split(&self, h: &SemigroupElement) -> (usize, usize, SemigroupElement) {
        let m = self.n1 + self.n + 1;
        let x = self.x();
        let mut v = Vec::with_capacity(2 * (m - 1));
        v.extend(
            h.v[..m]
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != x)
                .map(|(_, &e)| e),
        );
        v.extend(
            h.v[m..]
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != x)
                .map(|(_, &e)| e),
        );
        (
            h.v[x] as usize,
            h.degree as usize,
            SemigroupElement::new(v, h.degree),
        )
    }

    /// `(k, d - k, h')` as an element of `H(Q)`.
    pub fn lift(&self, k: usize, h_prime: &SemigroupElement) -> SemigroupElement {
        let d = h_prime.degree;
        let m = self.n1 + self.n;
        let mut v = Vec::with_capacity(2 * m + 2);
        v.extend_from_slice(&h_prime.v[..m]);
        v.push(k as u32);
        v.extend_from_slice(&h_prime.v[m..]);
        v.push(d - k as u32);
        SemigroupElement::new(v, d)
    }

    /// `X_h = Δ_h ∪ Δ_{(ε-1, d-ε+1, h')} ∪ … ∪ Δ_{(0, d, h')}`.
    pub fn build_x_h(&self, h: &SemigroupElement) -> Result<SimplicialComplex> {
        check_member(&self.q, h)?;
        let (eps, _, hp) = self.split(h);
        let mut out = divisor_complex(&self.q, h, None)?;
        for k in 0..eps {
            out = out.union(&divisor_complex(&self.q, &self.lift(k, &hp), None)?);
        }
        Ok(out)
    }

    /// Index in `I(Q)` of an element of `I(P)`, with or without `x`.
    pub fn embed(&self, idx_in_p: usize, with_x: bool) -> usize {
        let bits = self.p.element(idx_in_p).bits() | if with_x { 1 << self.x() } else { 0 };
        self.q
            .index_of(OrderIdeal(bits))
            .expect("ideal of P stays an ideal of Q")
    }

    /// Number of members of the multichain of `h` whose chain part is
    /// exactly `P_2`.
    pub fn count_r(&self, h: &SemigroupElement) -> Result<usize> {
        let chain = membership(&self.q, h).ok_or_else(|| Error::NotInSemigroup {
            v: h.v.clone(),
            degree: h.degree,
        })?;
        Ok(chain
            .indices(&self.q)
            .into_iter()
            .filter(|&a| self.level(a) == self.n)
            .count())
    }

    /// The counting criterion: `τ ∈ X_h` and at most `r` vertices of `τ`
    /// have chain part `P_2`.
    pub fn counting_criterion(
        &self,
        h: &SemigroupElement,
        x_h: &SimplicialComplex,
        tau: &[usize],
    ) -> Result<bool> {
        let r = self.count_r(h)?;
        let hits = tau.iter().filter(|&&a| self.level(a) == self.n).count();
        Ok(x_h.contains(tau) && hits <= r)
    }

    /// Applies a level map to every vertex of every face.
    pub fn relabel_faces(
        &self,
        cx: &SimplicialComplex,
        f: impl Fn(usize) -> usize,
    ) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for d in -1..=cx.dim() {
            for face in cx.faces(d) {
                let mut g: Vec<usize> = face
                    .iter()
                    .map(|&a| self.with_level(a, f(self.level(a))))
                    .collect();
                g.sort_unstable();
                out.insert(g);
            }
        }
        out
    }
}

impl ChainGadgets {
    /// Rewrites the multichain of `h` by a level map and checks that the
    /// same map sends the faces of `Δ_h` bijectively onto those of `Δ_h̃`.
    pub fn relabeling_is_isomorphism(
        &self,
        h: &SemigroupElement,
        f: impl Fn(usize) -> usize + Copy,
    ) -> Result<bool> {
        let chain = membership(&self.q, h).ok_or_else(|| Error::NotInSemigroup {
            v: h.v.clone(),
            degree: h.degree,
        })?;
        let m = self.n1 + self.n + 1;
        let h_tilde =
            chain
                .indices(&self.q)
                .into_iter()
                .fold(SemigroupElement::zero(m), |acc, a| {
                    acc.add(&generator_vector(
                        &self.q,
                        self.with_level(a, f(self.level(a))),
                    ))
                });
        let source = divisor_complex(&self.q, h, None)?;
        let target = divisor_complex(&self.q, &h_tilde, None)?;
        let images: BTreeSet<usize> = source
            .vertices()
            .iter()
            .map(|&a| self.with_level(a, f(self.level(a))))
            .collect();
        Ok(images.len() == source.vertices().len()
            && self.relabel_faces(&source, f) == face_set(&target))
    }

    /// Levels used by the multichain of `h`.
    pub fn levels_of(&self, h: &SemigroupElement) -> Result<BTreeSet<usize>> {
        let chain = membership(&self.q, h).ok_or_else(|| Error::NotInSemigroup {
            v: h.v.clone(),
            degree: h.degree,
        })?;
        Ok(chain
            .indices(&self.q)
            .into_iter()
            .map(|a| self.level(a))
            .collect())
    }
}

/// Outcome of one family of gadget checks.
#[derive(Clone, Debug, Default, Serialize)]
pub struct GadgetCheck {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl GadgetCheck {
    fn new(name: &str) -> GadgetCheck {
        GadgetCheck {
            name: name.to_string(),
            ..GadgetCheck::default()
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn hdim(cx: &SimplicialComplex, i: isize) -> usize {
    reduced_homology_dim(cx, FieldSpec::Rationals, i).expect("uncapped complex")
}

/// `F^l(Δ_g)` against the skeleton of `Δ_g` and its low homology, over
/// every `g` of degree `1..=max_d`.
pub fn check_skeleton_levels(p1: &Poset, max_d: usize) -> GadgetCheck {
    let pg = PointGadgets::new(p1);
    let mut out = GadgetCheck::new("skeleton levels");
    for d in 1..=max_d {
        for g in enumerate_degree(pg.base(), d) {
            let delta = divisor_complex(pg.base(), &g, None).expect("member");
            let pinned = pg.pinned_delta_g(&g).expect("member");
            for l in 0..d {
                let f = pg.build_f_l(&g, l).expect("valid level");
                let ok = f == pinned.skeleton(l)
                    && f.is_downward_closed()
                    && (-1..l as isize).all(|i| hdim(&f, i) == hdim(&delta, i));
                out.record(ok, || format!("g = {}, l = {l}", g.to_monomial()));
            }
        }
    }
    out
}

/// Containment of `F^l(Δ_g)` in `Δ_{g_ε}` for `ε ∈ {1, 2}`.
pub fn check_level_containment(p1: &Poset, max_d: usize) -> GadgetCheck {
    let pg = PointGadgets::new(p1);
    let mut out = GadgetCheck::new("level containment");
    for d in 1..=max_d {
        for g in enumerate_degree(pg.base(), d) {
            let dim = divisor_complex(pg.base(), &g, None).expect("member").dim();
            for eps in 1..=2.min(d) {
                let target = pg.delta_g_eps(&g, eps).expect("ε ≤ d");
                for l in 0..d {
                    let f = pg.build_f_l(&g, l).expect("valid level");
                    let predicted = (l as isize).min(dim) < d as isize - eps as isize;
                    out.record(f.is_subcomplex_of(&target) == predicted, || {
                        format!("g = {}, l = {l}, ε = {eps}", g.to_monomial())
                    });
                }
            }
        }
    }
    out
}

/// Vanishing transfer from `Δ_{g_{ε-1}}` to `R_{g,ε}` for
/// `(i, d) ∈ {(0, 3), (1, 4)}`, `ε ∈ {1, 2}`, and `R_{g,ε} ⊆ Δ_{g_{ε-1}}`.
pub fn check_r_vanishing(p1: &Poset) -> GadgetCheck {
    let pg = PointGadgets::new(p1);
    let mut out = GadgetCheck::new("R vanishing");
    for (i, d) in [(0isize, 3usize), (1, 4)] {
        for g in enumerate_degree(pg.base(), d) {
            for eps in 1..=2 {
                let r = pg.build_r_g_eps(&g, eps).expect("valid ε");
                let prev = pg.delta_g_eps(&g, eps - 1).expect("valid ε");
                let ok = r.is_subcomplex_of(&prev) && (hdim(&prev, i) != 0 || hdim(&r, i) == 0);
                out.record(ok, || {
                    format!("g = {}, ε = {eps}, i = {i}", g.to_monomial())
                });
            }
        }
    }
    out
}

/// The cone replacement for every decomposition and every admissible
/// choice of positions, plus the `ε ↔ d - ε` symmetry of `Δ_{g_ε}`.
pub fn check_cone_replacement(p1: &Poset, max_d: usize) -> GadgetCheck {
    let pg = PointGadgets::new(p1);
    let mut out = GadgetCheck::new("cone replacement");
    let b = 1u64 << p1.len();
    let swap = |a: usize| -> usize {
        pg.ext()
            .index_of(OrderIdeal(pg.ext().element(a).bits() ^ b))
            .expect("toggling an isolated point keeps an ideal")
    };
    for d in 2..=max_d {
        for g in enumerate_degree(pg.base(), d) {
            for eps in 0..=d {
                let a = pg.delta_g_eps(&g, eps).expect("ε ≤ d");
                let mirrored: BTreeSet<Vec<usize>> = face_set(&a)
                    .into_iter()
                    .map(|f| {
                        let mut m: Vec<usize> = f.into_iter().map(swap).collect();
                        m.sort_unstable();
                        m
                    })
                    .collect();
                let b_cx = pg.delta_g_eps(&g, d - eps).expect("ε ≤ d");
                out.record(mirrored == face_set(&b_cx), || {
                    format!("symmetry g = {}, ε = {eps}", g.to_monomial())
                });
            }
            for eps in 2..=d {
                let target = pg.delta_g_eps(&g, eps).expect("ε ≤ d");
                let size = d - eps + 1;
                for dec in decompositions(pg.base(), &g) {
                    for sigma in crate::initial::subsets_of_size(d, size) {
                        let mut gens: Vec<usize> = sigma.iter().map(|&k| dec[k]).collect();
                        gens.dedup();
                        if gens.len() < size {
                            continue;
                        }
                        for apex in (0..d).filter(|k| !sigma.contains(k)) {
                            let (s, sp) = pg.cone_replacement(&dec, &sigma, apex);
                            let ok = s.boundary() == sp.boundary()
                                && sp.is_supported_in(&target)
                                && !s.is_supported_in(&target);
                            out.record(ok, || {
                                format!(
                                    "g = {}, ε = {eps}, σ = {sigma:?}, apex = {apex}",
                                    g.to_monomial()
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// `X_h`, the counting criterion and the relabelings over
/// `P_1 + (a_1 < … < a_n < x)` in degrees `1..=max_d`.
pub fn check_chain_extension(p1: &Poset, n: usize, max_d: usize) -> Vec<GadgetCheck> {
    let cg = ChainGadgets::new(p1, n);
    let mut ladder = GadgetCheck::new("ladder ends");
    let mut counting = GadgetCheck::new("counting criterion");
    let mut relabel = GadgetCheck::new("level relabeling");
    let top = n + 1;
    for d in 1..=max_d {
        for h in enumerate_degree(cg.q(), d) {
            let (eps, _, hp) = cg.split(&h);
            let x_h = cg.build_x_h(&h).expect("member");
            let delta_h = divisor_complex(cg.q(), &h, None).expect("member");
            let dp = face_set(&divisor_complex(cg.p(), &hp, None).expect("member"));
            for (k, with_x) in [(0, false), (d, true)] {
                // (d, 0, h') lies in H only when every summand of h' contains a_n
                if with_x && n > 0 && hp.v[p1.len() + n - 1] as usize != d {
                    continue;
                }
                let end = divisor_complex(cg.q(), &cg.lift(k, &hp), None).expect("member");
                let mapped: BTreeSet<Vec<usize>> = dp
                    .iter()
                    .map(|f| {
                        let mut m: Vec<usize> = f.iter().map(|&a| cg.embed(a, with_x)).collect();
                        m.sort_unstable();
                        m
                    })
                    .collect();
                ladder.record(mapped == face_set(&end), || {
                    format!("h = {}, k = {k}", h.to_monomial())
                });
            }
            ladder.record(
                (0..=eps).all(|k| {
                    divisor_complex(cg.q(), &cg.lift(k, &hp), None)
                        .expect("member")
                        .is_subcomplex_of(&x_h)
                }),
                || format!("containment h = {}", h.to_monomial()),
            );
            let r = cg.count_r(&h).expect("member");
            if eps >= 1 && r < d {
                for tau in face_set(&x_h) {
                    let ok = delta_h.contains(&tau)
                        == cg.counting_criterion(&h, &x_h, &tau).expect("member");
                    counting.record(ok, || format!("h = {}, τ = {tau:?}", h.to_monomial()));
                }
            }
            let levels = cg.levels_of(&h).expect("member");
            if levels.contains(&top) {
                for l0 in (0..=top).filter(|l| !levels.contains(l)) {
                    let ok = cg
                        .relabeling_is_isomorphism(&h, |l| if l == top { l0 } else { l })
                        .expect("member");
                    relabel.record(ok, || format!("h = {}, top → {l0}", h.to_monomial()));
                }
            }
            let used: Vec<usize> = levels.iter().copied().collect();
            for (i, &a) in used.iter().enumerate() {
                for &b in &used[i + 1..] {
                    let ok = cg
                        .relabeling_is_isomorphism(&h, |l| {
                            if l == a {
                                b
                            } else if l == b {
                                a
                            } else {
                                l
                            }
                        })
                        .expect("member");
                    relabel.record(ok, || format!("h = {}, swap {a} ↔ {b}", h.to_monomial()));
                }
            }
        }
    }
    vec![ladder, counting, relabel]
}

/// All faces of a complex as sorted label lists, the empty face included.
pub fn face_set(cx: &SimplicialComplex) -> BTreeSet<Vec<usize>> {
    (-1..=cx.dim()).flat_map(|d| cx.faces(d)).collect()
}

/// For the chain on `r` elements and every degree-`d` element `h`, `Δ_h` is
/// the full simplex on the distinct members of the multichain of `h`.
/// Returns the number of elements checked, or the first failure.
pub fn verify_chain_simplices(r: usize, d: usize) -> std::result::Result<usize, SemigroupElement> {
    let lattice = DistributiveLattice::ideal_lattice(&Poset::chain(r));
    let mut checked = 0;
    for chain in crate::semigroup::multichains(&lattice, d) {
        let h = chain.iter().fold(SemigroupElement::zero(r), |acc, &a| {
            acc.add(&generator_vector(&lattice, a))
        });
        let mut distinct = chain.clone();
        distinct.dedup();
        let cx = divisor_complex(&lattice, &h, None).expect("sums of generators lie in H");
        let expected = if distinct.is_empty() {
            SimplicialComplex::empty_face_only()
        } else {
            SimplicialComplex::simplex(&distinct)
        };
        if cx != expected {
            return Err(h);
        }
        checked += 1;
    }
    Ok(checked)
}
