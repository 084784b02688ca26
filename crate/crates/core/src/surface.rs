//! Closed surfaces as Fuchsian groups.
//!
//! Surfaces are built either from Fenchel–Nielsen data on a trivalent pants
//! graph or from the regular octagon (Bolza surface). Every pants is modelled
//! by two right-angled hexagons in the half-plane; gluings along edges are
//! amalgamations over a spanning tree plus one HNN extension per remaining
//! edge. The result is a one-relator presentation on `2g` generators: each
//! non-tree edge contributes its curve `a` and the gluing element `b`, and the
//! relator walks once around the boundary of the tree part.
//!
//! Twist convention: each pants carries a marked point on every boundary, the
//! foot of the seam running to the next slot (slot `k` to slot `k+1 mod 3`).
//! With every pants lying on the left of its oriented boundary curves, a twist
//! `τ` on the edge joining `(P, s)` to `(Q, t)` places the marked point of
//! `Q` at arc length `τ` ahead of the marked point of `P`, measured along the
//! orientation of `P`'s boundary. The rule is symmetric in `P` and `Q`, and
//! `τ = 0` lines the seams up.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::config::Tolerances;
use crate::dd::{self, DdMat};
use crate::error::{Error, Result};
use crate::hyp::{common_perpendicular, GeodesicLine, HPoint, IdealPoint, Isometry, IsometryKind};
use crate::math::{acosh, cosh, sinh, tanh, PI, SQRT_2};
use crate::word::Word;

/// Shape of a generated pants graph.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphShape {
    /// A chain with a loop at each end; for genus 2 the dumbbell.
    Linear,
    /// A cycle with diametral spokes; for genus 2 the theta graph.
    Ring,
    /// Explicit `[pants_a, slot_a, pants_b, slot_b]` edges.
    Custom(Vec<[usize; 4]>),
}

/// A trivalent graph whose vertices are pants and whose edges are the
/// gluing curves. Edge `[pa, sa, pb, sb]` glues slot `sa` of pants `pa` to
/// slot `sb` of pants `pb`.
#[derive(Debug, Clone, PartialEq)]
pub struct PantsGraph {
    genus: u32,
    edges: Vec<[usize; 4]>,
}

impl PantsGraph {
    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn edges(&self) -> &[[usize; 4]] {
        &self.edges
    }

    pub fn pants_count(&self) -> usize {
        2 * self.genus as usize - 2
    }

    /// Pants of smallest eccentricity in the graph, lowest index first.
    pub fn center(&self) -> usize {
        let n = self.pants_count();
        let ecc = |src: usize| {
            let mut dist = vec![usize::MAX; n];
            dist[src] = 0;
            let mut queue = VecDeque::from([src]);
            while let Some(v) = queue.pop_front() {
                for ed in &self.edges {
                    for (a, b) in [(ed[0], ed[2]), (ed[2], ed[0])] {
                        if a == v && dist[b] == usize::MAX {
                            dist[b] = dist[v] + 1;
                            queue.push_back(b);
                        }
                    }
                }
            }
            dist.into_iter().max().unwrap_or(0)
        };
        (0..n).min_by_key(|&v| (ecc(v), v)).unwrap_or(0)
    }

    /// Edge index attached to every `(pants, slot)`.
    fn slot_edges(&self) -> Vec<[usize; 3]> {
        let mut out = vec![[usize::MAX; 3]; self.pants_count()];
        for (e, ed) in self.edges.iter().enumerate() {
            out[ed[0]][ed[1]] = e;
            out[ed[2]][ed[3]] = e;
        }
        out
    }
}

pub fn build_pants_graph(g: u32, shape: GraphShape) -> Result<PantsGraph> {
    if g < 2 {
        return Err(Error::InvalidInput("genus must be at least 2"));
    }
    let n = 2 * g as usize - 2;
    let edges = match shape {
        GraphShape::Linear => {
            let mut e = vec![[0, 0, 0, 1], [n - 1, 1, n - 1, 2]];
            // singles join vertex 2k to 2k+1; doubles join 2k+1 to 2k+2
            for v in (0..n).step_by(2) {
                e.push([v, 2, v + 1, 0]);
                if v + 2 < n {
                    e.push([v + 1, 1, v + 2, 0]);
                    e.push([v + 1, 2, v + 2, 1]);
                }
            }
            e
        }
        GraphShape::Ring => {
            let mut e: Vec<[usize; 4]> = (0..n).map(|v| [v, 1, (v + 1) % n, 0]).collect();
            for v in 0..n / 2 {
                e.push([v, 2, v + n / 2, 2]);
            }
            e
        }
        GraphShape::Custom(e) => e,
    };
    validate_graph(g, edges)
}

fn validate_graph(g: u32, edges: Vec<[usize; 4]>) -> Result<PantsGraph> {
    let n = 2 * g as usize - 2;
    if edges.len() != 3 * g as usize - 3 {
        return Err(Error::InvalidInput("pants graph must have 3g-3 edges"));
    }
    let mut used = vec![[false; 3]; n];
    for ed in &edges {
        for (p, s) in [(ed[0], ed[1]), (ed[2], ed[3])] {
            if p >= n || s >= 3 {
                return Err(Error::InvalidInput("pants or slot index out of range"));
            }
            if used[p][s] {
                return Err(Error::InvalidInput("pants slot used twice"));
            }
            used[p][s] = true;
        }
    }
    if used.iter().flatten().any(|u| !u) {
        return Err(Error::InvalidInput("pants graph is not trivalent"));
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for ed in &edges {
            for (a, b) in [(ed[0], ed[2]), (ed[2], ed[0])] {
                if a == v && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidInput("pants graph is disconnected"));
    }
    Ok(PantsGraph { genus: g, edges })
}

/// Length and twist per edge of a pants graph.
#[derive(Debug, Clone, PartialEq)]
pub struct FNCoordinates {
    pub lengths: Vec<f64>,
    pub twists: Vec<f64>,
}

impl FNCoordinates {
    pub fn new(lengths: Vec<f64>, twists: Vec<f64>) -> Result<Self> {
        if lengths.len() != twists.len() {
            return Err(Error::InvalidInput("lengths and twists differ in count"));
        }
        if lengths.iter().any(|l| !l.is_finite() || *l <= 0.0) {
            return Err(Error::InvalidInput("lengths must be finite and positive"));
        }
        if twists.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidInput("twists must be finite"));
        }
        Ok(Self { lengths, twists })
    }
}

/// A closed surface group with an explicit one-relator presentation.
#[derive(Debug, Clone, PartialEq)]
pub struct FuchsianGroup {
    pub genus: u32,
    pub generators: Vec<Isometry>,
    /// The defining relator, up to cyclic rotation.
    pub relator: Word,
    pub relation_residual: f64,
    /// For surfaces built from pants, one word per graph edge tracing the
    /// gluing curve.
    pub edge_words: Vec<Word>,
}

impl FuchsianGroup {
    /// Assembles a group and records its residual; no validity check.
    pub fn from_parts(genus: u32, generators: Vec<Isometry>, relator: Word) -> Self {
        let mut g = FuchsianGroup {
            genus,
            generators,
            relator,
            relation_residual: 0.0,
            edge_words: Vec::new(),
        };
        g.relation_residual = relation_residual(&g);
        g
    }

    /// Rejects groups whose relator is not the identity or whose generators
    /// are not hyperbolic.
    pub fn validate(&self, tol: &Tolerances) -> Result<()> {
        if self.generators.len() != 2 * self.genus as usize {
            return Err(Error::InvalidInput("expected 2g generators"));
        }
        if !(self.relation_residual <= tol.rel) {
            return Err(Error::HolonomyConstructionFailed);
        }
        if self
            .generators
            .iter()
            .any(|m| m.classify(tol.class) != IsometryKind::Hyperbolic)
        {
            return Err(Error::NoClosedGeodesic);
        }
        Ok(())
    }

    pub fn generator(&self, letter: i32) -> Isometry {
        let m = self.generators[letter.unsigned_abs() as usize - 1];
        if letter > 0 {
            m
        } else {
            m.inverse()
        }
    }

    /// Holonomy of a word, multiplied out in double-double precision.
    pub fn evaluate(&self, w: &Word) -> Isometry {
        self.evaluate_dd(w).round()
    }

    pub(crate) fn evaluate_dd(&self, w: &Word) -> DdMat {
        dd::product(w.letters().iter().map(|&l| self.generator(l)))
    }

    /// Conjugates every generator by `m`, i.e. moves the point `m⁻¹(i)` of
    /// the old picture to `i`.
    #[must_use]
    pub fn conjugated(&self, m: &Isometry) -> Self {
        let inv = m.inverse();
        let mut g = self.clone();
        g.generators = self
            .generators
            .iter()
            .map(|x| (*m * *x * inv).normalized())
            .collect();
        g.relation_residual = relation_residual(&g);
        g
    }
}

/// Distance of the relator's holonomy from `±I`, entrywise max norm.
pub fn relation_residual(group: &FuchsianGroup) -> f64 {
    if group
        .generators
        .iter()
        .any(|m| !(m.det() - 1.0).abs().le(&1e-6))
    {
        return f64::INFINITY;
    }
    group.evaluate_dd(&group.relator).distance_from_identity()
}

/// The standard relator `a₁ b₁ a₁⁻¹ b₁⁻¹ ⋯ a_g b_g a_g⁻¹ b_g⁻¹`.
pub fn commutator_relator(g: u32) -> Word {
    let mut v = Vec::new();
    for i in 0..g as i32 {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        v.extend_from_slice(&[a, b, -a, -b]);
    }
    Word::new(v)
}

/// A free homotopy class of closed curve with its holonomy and length.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveClass {
    pub word: Word,
    pub holonomy: Isometry,
    pub length: f64,
}

impl CurveClass {
    pub fn new(group: &FuchsianGroup, word: &Word) -> Result<Self> {
        let word = word.cyclically_reduced();
        if word.is_empty() {
            return Err(Error::NoClosedGeodesic);
        }
        let m = group.evaluate_dd(&word);
        let holonomy = m.round();
        let t = m.normalized_trace();
        if !(t > 2.0 + 1e-9) {
            return Err(Error::NoClosedGeodesic);
        }
        let length = 2.0 * acosh(t / 2.0);
        Ok(Self {
            word,
            holonomy,
            length,
        })
    }

    pub fn axis(&self) -> GeodesicLine {
        // hyperbolic by construction
        self.holonomy
            .axis()
            .unwrap_or(GeodesicLine::from_ends(IdealPoint::Real(0.0), IdealPoint::Infinity))
    }
}

/// Translation length of the holonomy of `w`.
pub fn curve_length(group: &FuchsianGroup, w: &Word) -> Result<f64> {
    Ok(CurveClass::new(group, w)?.length)
}

/// The genus-2 surface of the regular octagon with interior angles `π/4`,
/// opposite sides paired.
///
/// Generator `k` translates along the ray from `i` at angle `kπ/4` by twice
/// the inradius; the relator is the vertex-cycle relation
/// `x₁ x₂⁻¹ x₃ x₄⁻¹ x₁⁻¹ x₂ x₃⁻¹ x₄`.
pub fn bolza_group() -> FuchsianGroup {
    let t = 2.0 * acosh(1.0 + SQRT_2);
    let gens: Vec<Isometry> = (0..4)
        .map(|k| {
            let r = Isometry::rotation(f64::from(k) * PI / 4.0);
            (r * Isometry::translation(t) * r.inverse()).normalized()
        })
        .collect();
    FuchsianGroup::from_parts(2, gens, Word::new(vec![1, -2, 3, -4, -1, 2, -3, 4]))
}

/// One pants in standard position: boundary holonomies with `X₀X₁X₂ = 1`,
/// their axes (pants on the left) and a marked point on each axis.
struct PantsModel {
    gens: [Isometry; 3],
    axes: [GeodesicLine; 3],
    marks: [HPoint; 3],
}

impl PantsModel {
    fn new(l: [f64; 3], tol: &Tolerances) -> Result<Self> {
        let (c, s): (Vec<f64>, Vec<f64>) = l.iter().map(|x| (cosh(x / 2.0), sinh(x / 2.0))).unzip();
        let cosh_d = (c[2] + c[0] * c[1]) / (s[0] * s[1]);
        if !(cosh_d > 1.0) {
            return Err(Error::DegeneratePants);
        }
        let r = tanh(acosh(cosh_d) / 2.0);
        let a = Isometry::translation(l[0]);
        let b_axis = GeodesicLine::from_ends(IdealPoint::Real(-1.0 / r), IdealPoint::Real(-r));
        let b = Isometry::hyperbolic(&b_axis, l[1]);
        let ab = a * b;
        if (ab.trace().abs() - 2.0 * c[2]).abs() > tol.len * c[2] {
            return Err(Error::HolonomyConstructionFailed);
        }
        let cc = ab.inverse().normalized();
        let a_axis = GeodesicLine::from_ends(IdealPoint::Real(0.0), IdealPoint::Infinity);
        let c_axis = cc.axis()?;
        let (_, s01) = common_perpendicular(&a_axis, &b_axis)?;
        let (_, s12) = common_perpendicular(&b_axis, &c_axis)?;
        let (_, s20) = common_perpendicular(&c_axis, &a_axis)?;
        let axes = [a_axis, b_axis, c_axis];
        let inner = s01.point_at(0.5);
        if axes.iter().any(|ax| !(ax.signed_distance(inner) > 0.0)) {
            return Err(Error::HolonomyConstructionFailed);
        }
        Ok(Self {
            gens: [a, b, cc],
            axes,
            marks: [s01.start, s12.start, s20.start],
        })
    }

    fn frame(&self, slot: usize) -> Isometry {
        self.axes[slot].frame(self.marks[slot])
    }
}

/// Map carrying pants `Q` (local model) onto the far side of slot `s` of
/// pants `P` (local model), matching slot `t` of `Q` with twist `tau`.
fn gluing_map(p: &PantsModel, s: usize, q: &PantsModel, t: usize, tau: f64) -> Isometry {
    let flip = Isometry {
        a: 0.0,
        b: -1.0,
        c: 1.0,
        d: 0.0,
    };
    p.frame(s).inverse() * Isometry::translation(tau) * flip * q.frame(t)
}

/// Builds the holonomy of the surface with the given Fenchel–Nielsen
/// coordinates.
pub fn fn_to_group(graph: &PantsGraph, fnc: &FNCoordinates, tol: &Tolerances) -> Result<FuchsianGroup> {
    let g = graph.genus();
    let n = graph.pants_count();
    let edges = graph.edges();
    if fnc.lengths.len() != edges.len() {
        return Err(Error::InvalidInput("one length and twist per edge required"));
    }
    let fnc = FNCoordinates::new(fnc.lengths.clone(), fnc.twists.clone())?;
    let slot_edges = graph.slot_edges();
    let models: Vec<PantsModel> = (0..n)
        .map(|p| PantsModel::new(slot_edges[p].map(|e| fnc.lengths[e]), tol))
        .collect::<Result<_>>()?;

    // spanning tree by breadth-first search from a central pants, which keeps
    // the tree shallow and the holonomy matrices well conditioned
    let root = graph.center();
    // Whole turns of twist give the same surface and fix every edge curve,
    // but inflate the matrices; build from the representative in [−ℓ/2, ℓ/2).
    let twist = |e: usize| {
        let (l, t) = (fnc.lengths[e], fnc.twists[e]);
        t - l * crate::math::floor(t / l + 0.5)
    };
    let mut frames: Vec<Option<DdMat>> = vec![None; n];
    frames[root] = Some(DdMat::IDENTITY);
    let mut is_tree = vec![false; edges.len()];
    let mut tree_order: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut queue = VecDeque::from([root]);
    while let Some(p) = queue.pop_front() {
        for s in 0..3 {
            let e = slot_edges[p][s];
            let ed = edges[e];
            let (q, t) = if (ed[0], ed[1]) == (p, s) { (ed[2], ed[3]) } else { (ed[0], ed[1]) };
            if frames[q].is_some() {
                continue;
            }
            let glue = gluing_map(&models[p], s, &models[q], t, twist(e));
            frames[q] = frames[p].map(|f| f * DdMat::from(glue));
            is_tree[e] = true;
            tree_order.push((p, s, q, t));
            queue.push_back(q);
        }
    }
    let frames: Vec<DdMat> = frames.into_iter().map(|f| f.unwrap()).collect();
    let global = |p: usize, k: usize| -> DdMat {
        frames[p] * DdMat::from(models[p].gens[k]) * frames[p].inverse()
    };

    // boundary slots of the tree part, in cyclic product order
    let mut list: Vec<(usize, usize)> = vec![(root, 0), (root, 1), (root, 2)];
    for &(p, s, q, t) in &tree_order {
        let pos = list
            .iter()
            .position(|&x| x == (p, s))
            .ok_or(Error::HolonomyConstructionFailed)?;
        list.splice(pos..=pos, [(q, (t + 1) % 3), (q, (t + 2) % 3)]);
    }
    if list.len() != 2 * g as usize {
        return Err(Error::HolonomyConstructionFailed);
    }

    // gluing elements: h · Y(Q,t) · h⁻¹ = Y(P,s)⁻¹ for the edge's two slots
    let mut hnn: Vec<Option<DdMat>> = vec![None; edges.len()];
    for (e, ed) in edges.iter().enumerate() {
        if !is_tree[e] {
            let (p, s, q, t) = (ed[0], ed[1], ed[2], ed[3]);
            let glue = gluing_map(&models[p], s, &models[q], t, twist(e));
            hnn[e] = Some(frames[p] * DdMat::from(glue) * frames[q].inverse());
        }
    }

    // Each edge's first slot in the list becomes a generator `a`; the second
    // equals `b a⁻¹ b⁻¹` with `b` the gluing element oriented accordingly.
    let mut gens: Vec<DdMat> = Vec::with_capacity(2 * g as usize);
    let mut letter_of_edge: Vec<Option<(i32, i32)>> = vec![None; edges.len()];
    let mut slot_words: Vec<[Option<Word>; 3]> = vec![[None, None, None]; n];
    let mut hnn_words: Vec<Option<Word>> = vec![None; edges.len()];
    let mut relator = Word::empty();
    for &(p, s) in &list {
        let e = slot_edges[p][s];
        let ed = edges[e];
        let is_p_side = (p, s) == (ed[0], ed[1]);
        let w = match letter_of_edge[e] {
            None => {
                let h = hnn[e].ok_or(Error::HolonomyConstructionFailed)?;
                let la = gens.len() as i32 + 1;
                let lb = la + 1;
                gens.push(global(p, s));
                // first seen on P's side: Y_Q = h⁻¹ Y_P⁻¹ h, so b = h⁻¹
                let (b, hw) = if is_p_side {
                    (h.inverse(), Word::letter(-lb))
                } else {
                    (h, Word::letter(lb))
                };
                gens.push(b);
                hnn_words[e] = Some(hw);
                letter_of_edge[e] = Some((la, lb));
                Word::letter(la)
            }
            Some((la, lb)) => Word::new(vec![lb, -la, -lb]),
        };
        relator = relator.concat(&w);
        slot_words[p][s] = Some(w);
    }

    // tree slots: the parent side is the product of the child's other two
    // slots, the child side its inverse
    for &(p, s, q, t) in tree_order.iter().rev() {
        let w1 = slot_words[q][(t + 1) % 3].clone().ok_or(Error::HolonomyConstructionFailed)?;
        let w2 = slot_words[q][(t + 2) % 3].clone().ok_or(Error::HolonomyConstructionFailed)?;
        let w = w1.concat(&w2);
        slot_words[q][t] = Some(w.inverse());
        slot_words[p][s] = Some(w);
    }

    // Replacing b by b·aᵏ leaves b a⁻¹ b⁻¹ and hence the relator unchanged;
    // pick the k that keeps b shortest near the centre, which strips whole
    // turns of twist out of the generators.
    let frob = |x: &DdMat| {
        let r = x.round();
        r.a * r.a + r.b * r.b + r.c * r.c + r.d * r.d
    };
    let m0 = DdMat::from(centering_map(&gens.iter().map(DdMat::round).collect::<Vec<_>>()));
    for (e, pair) in letter_of_edge.iter().enumerate() {
        let Some((la, lb)) = *pair else { continue };
        let (ia, ib) = (la as usize - 1, lb as usize - 1);
        let a = m0 * gens[ia] * m0.inverse();
        let mut b = m0 * gens[ib] * m0.inverse();
        let mut k = 0i32;
        for (step, dir) in [(a, 1), (a.inverse(), -1)] {
            while k * dir >= 0 && frob(&(b * step)) < frob(&b) {
                b = b * step;
                k += dir;
            }
        }
        if k != 0 {
            gens[ib] = gens[ib] * dd_power(gens[ia], k);
            // h = b⁻¹ becomes aᵏ b⁻¹; h = b becomes b a⁻ᵏ
            let hw = hnn_words[e].take().ok_or(Error::HolonomyConstructionFailed)?;
            hnn_words[e] = Some(if hw == Word::letter(-lb) {
                Word::letter(la).pow(k).concat(&hw)
            } else {
                hw.concat(&Word::letter(la).pow(-k))
            });
        }
    }

    // move a well-placed point to i, then round
    let rounded: Vec<Isometry> = gens.iter().map(DdMat::round).collect();
    let m = DdMat::from(centering_map(&rounded));
    let conj = |x: DdMat| m * x * m.inverse();
    let mut group = FuchsianGroup::from_parts(
        g,
        gens.iter().map(|x| conj(*x).round()).collect(),
        relator,
    );
    // Any cyclic rotation of the relator is an equally valid relator, but
    // rounding in the generators is amplified by the partial products, which
    // differ between rotations; keep the best conditioned one.
    for k in 1..group.relator.len() {
        let r = group.relator.rotated(k);
        let res = group.evaluate_dd(&r).distance_from_identity();
        if res < group.relation_residual {
            group.relator = r;
            group.relation_residual = res;
        }
    }
    if !(group.relation_residual <= tol.rel) {
        return Err(Error::HolonomyConstructionFailed);
    }
    let close = |target: DdMat, w: &Word| {
        let t = target.round();
        let scale = 1.0 + t.a.abs().max(t.b.abs()).max(t.c.abs()).max(t.d.abs());
        group.evaluate_dd(w).psl_distance(&t) <= tol.rel.max(1e-9) * scale
    };
    for p in 0..n {
        for k in 0..3 {
            let w = slot_words[p][k].as_ref().ok_or(Error::HolonomyConstructionFailed)?;
            if !close(conj(global(p, k)), w) {
                return Err(Error::HolonomyConstructionFailed);
            }
        }
    }
    for (h, w) in hnn.iter().zip(&hnn_words) {
        if let (Some(h), Some(w)) = (h, w) {
            if !close(conj(*h), w) {
                return Err(Error::HolonomyConstructionFailed);
            }
        }
    }
    let mut edge_words = Vec::with_capacity(edges.len());
    for (e, ed) in edges.iter().enumerate() {
        let w = slot_words[ed[0]][ed[1]].clone().unwrap().cyclically_reduced();
        let len = curve_length(&group, &w).map_err(|_| Error::HolonomyConstructionFailed)?;
        if (len - fnc.lengths[e]).abs() > tol.len {
            return Err(Error::HolonomyConstructionFailed);
        }
        edge_words.push(w);
    }
    group.edge_words = edge_words;
    group.validate(tol)?;
    Ok(group)
}

fn dd_power(x: DdMat, k: i32) -> DdMat {
    let base = if k < 0 { x.inverse() } else { x };
    (0..k.unsigned_abs()).fold(DdMat::IDENTITY, |acc, _| acc * base)
}

/// An isometry taking a point that roughly minimizes the summed squared
/// norms of the generators to `i`; conjugating by it keeps entries small.
fn centering_map(gens: &[Isometry]) -> Isometry {
    let to_i = |x: f64, s: f64| {
        // z ↦ (z − x)/y with y = e^s
        let r = crate::math::exp(-s / 2.0);
        Isometry {
            a: r,
            b: -x * r,
            c: 0.0,
            d: 1.0 / r,
        }
    };
    let cost = |x: f64, s: f64| {
        let m = to_i(x, s);
        let mi = m.inverse();
        gens.iter()
            .map(|gen| {
                let c = m * *gen * mi;
                c.a * c.a + c.b * c.b + c.c * c.c + c.d * c.d
            })
            .sum::<f64>()
    };
    let (mut x, mut s) = (0.0, 0.0);
    let mut best = cost(x, s);
    let mut step = 1.0;
    while step > 1e-6 {
        let mut moved = false;
        for (dx, ds) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            // steps of roughly equal hyperbolic size in both directions
            let (nx, ns) = (x + dx * crate::math::exp(s), s + ds);
            let c = cost(nx, ns);
            if c < best {
                best = c;
                x = nx;
                s = ns;
                moved = true;
                break;
            }
        }
        if !moved {
            step /= 2.0;
        }
    }
    to_i(x, s)
}

/// Length of the seam joining boundaries `from` and `to` of a pants with
/// boundary lengths `l`, from the right-angled hexagon relation.
pub fn seam_length(l: [f64; 3], from: usize, to: usize) -> Result<f64> {
    let other = 3 - from - to;
    let v = (cosh(l[other] / 2.0) + cosh(l[from] / 2.0) * cosh(l[to] / 2.0))
        / (sinh(l[from] / 2.0) * sinh(l[to] / 2.0));
    if !(v > 1.0) {
        return Err(Error::DegeneratePants);
    }
    Ok(acosh(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn graph_shapes_have_right_counts() {
        for g in 2..6 {
            for shape in [GraphShape::Linear, GraphShape::Ring] {
                let pg = build_pants_graph(g, shape).unwrap();
                assert_eq!(pg.pants_count(), 2 * g as usize - 2);
                assert_eq!(pg.edges().len(), 3 * g as usize - 3);
            }
        }
    }

    #[test]
    fn custom_graph_validation() {
        let bad = vec![[0, 0, 1, 0], [0, 1, 1, 1], [0, 2, 0, 2]];
        assert!(build_pants_graph(2, GraphShape::Custom(bad)).is_err());
        let degree_two = vec![[0, 0, 1, 0], [0, 1, 1, 1], [0, 2, 0, 1]];
        assert!(build_pants_graph(2, GraphShape::Custom(degree_two)).is_err());
        let ok = vec![[0, 0, 1, 0], [0, 1, 1, 1], [0, 2, 1, 2]];
        assert!(build_pants_graph(2, GraphShape::Custom(ok)).is_ok());
        assert!(build_pants_graph(1, GraphShape::Linear).is_err());
    }

    #[test]
    fn pants_model_closes() {
        let m = PantsModel::new([3.0, 2.0, 4.0], &tol()).unwrap();
        let prod = m.gens[0] * m.gens[1] * m.gens[2];
        assert!(prod.psl_distance(&Isometry::IDENTITY) < 1e-12);
        for (k, l) in [3.0, 2.0, 4.0].into_iter().enumerate() {
            assert!((m.gens[k].translation_length().unwrap() - l).abs() < 1e-10);
        }
        // marked points sit on the axes
        for k in 0..3 {
            assert!(crate::hyp::point_to_line_distance(m.marks[k], &m.axes[k]) < 1e-9);
        }
    }

    #[test]
    fn fn_round_trip_genus_two() {
        for shape in [GraphShape::Linear, GraphShape::Ring] {
            let pg = build_pants_graph(2, shape).unwrap();
            let fnc = FNCoordinates::new(vec![3.0; 3], vec![0.0; 3]).unwrap();
            let grp = fn_to_group(&pg, &fnc, &tol()).unwrap();
            assert!(grp.relation_residual <= 1e-8);
            for w in &grp.edge_words {
                assert!((curve_length(&grp, w).unwrap() - 3.0).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn fn_round_trip_genus_three_with_twists() {
        for shape in [GraphShape::Linear, GraphShape::Ring] {
            let pg = build_pants_graph(3, shape).unwrap();
            let lengths = vec![2.0, 2.5, 3.0, 3.5, 1.9, 4.0];
            let twists = vec![0.3, -1.1, 0.0, 2.0, 0.7, 1.5];
            let fnc = FNCoordinates::new(lengths.clone(), twists).unwrap();
            let grp = fn_to_group(&pg, &fnc, &tol()).unwrap();
            for (w, l) in grp.edge_words.iter().zip(&lengths) {
                assert!((curve_length(&grp, w).unwrap() - l).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn bolza_relation_and_lengths() {
        let b = bolza_group();
        assert!(b.relation_residual <= 1e-10, "{}", b.relation_residual);
        let t = 2.0 * acosh(1.0 + SQRT_2);
        for m in &b.generators {
            assert!((m.translation_length().unwrap() - t).abs() < 1e-12);
        }
    }

    #[test]
    fn residual_detects_perturbation() {
        let mut b = bolza_group();
        b.generators[0].a += 1e-3;
        assert!(relation_residual(&b) >= 1e-4);
        let id = FuchsianGroup::from_parts(
            2,
            vec![Isometry::IDENTITY; 4],
            commutator_relator(2),
        );
        assert!(id.validate(&tol()).is_err());
    }
}
