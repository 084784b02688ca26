//! Searches over a surface group.
//!
//! Everything here runs on a Dirichlet domain `D` centred at `i`. A closed
//! geodesic is stored as its lifts meeting `D`, each a straight chord in the
//! Klein model. Two classes intersect iff a lift of one crosses a lift of the
//! other inside `D`, so all such questions reduce to a small set of tiles
//! around `D`. Cutting `D` along the chords of a curve set and gluing the
//! pieces across paired sides gives the components of the cut surface, with
//! their Euler characteristics read off from area.

use alloc::vec;
use alloc::vec::Vec;
use core::cell::{Ref, RefCell};

use crate::bounds::bavard_bound;
use crate::config::Settings;
use crate::dirichlet::{ideal_klein, klein_dist, orient, polygon_area, Ball, DirichletDomain, Elem, K};
use crate::error::{Error, Result};
use crate::hyp::{dist, GeoSegment, GeodesicLine, HPoint, IdealPoint, Isometry};
use crate::math::{asinh, atanh, cosh, hypot, ln, round, sqrt, tanh, PI};
use crate::surface::{CurveClass, FuchsianGroup};
use crate::word::Word;

/// A nontrivial group element found by [`SurfaceGeometry::enumerate_ball`].
#[derive(Debug, Clone, PartialEq)]
pub struct BallElement {
    pub word: Word,
    pub holonomy: Isometry,
    /// `d(center, holonomy·center)`.
    pub displacement: f64,
}

/// Side of an oriented curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// One lift of a closed geodesic, restricted to the fundamental domain.
#[derive(Debug, Clone)]
pub(crate) struct Chord {
    pub line: GeodesicLine,
    pub norm: Isometry,
    /// Klein entry and exit points, in the orientation of the curve.
    pub a: K,
    pub b: K,
    /// Arc-length coordinates of `a` and `b` on `line`.
    pub s: (f64, f64),
    /// `line` is the image of the class axis under this element.
    pub lift: Elem,
    pub length: f64,
}

fn signed_dist(norm: &Isometry, p: HPoint) -> f64 {
    let w = norm.act(p);
    asinh(-w.x / w.y)
}

/// Whether `l` is the line normalized by `norm`: `Some(true)` with the same
/// orientation, `Some(false)` reversed. In the normalized picture the ratio
/// of the endpoint magnitudes is unchanged by sliding along the line, and is
/// the square of the tangent of the half crossing angle for distinct lines.
fn coincide(norm: &Isometry, l: &GeodesicLine) -> Option<bool> {
    let mag = |t: IdealPoint| match norm.act_ideal(t) {
        IdealPoint::Real(x) => x.abs(),
        IdealPoint::Infinity => f64::INFINITY,
    };
    let (u, v) = (mag(l.endpoint_1), mag(l.endpoint_2));
    if u <= 1e-10 * v {
        Some(true)
    } else if v <= 1e-10 * u {
        Some(false)
    } else {
        None
    }
}

/// Relative agreement expected between two computations of one length;
/// long composite words lose a few digits to the group relation residual.
const LENGTH_TOL: f64 = 1e-5;

/// Whether one period of the trace covers the whole class, as opposed to a
/// proper root, whose length is at most half.
fn primitive_total(total: f64, length: f64) -> bool {
    (total - length).abs() <= LENGTH_TOL * length.max(1.0)
}

fn coordinate(norm: &Isometry, p: HPoint) -> f64 {
    let w = norm.act(p);
    ln(hypot(w.x, w.y))
}

/// A set of disjoint closed geodesics, with their lifts through the domain.
#[derive(Debug, Clone)]
pub struct CutSet {
    curves: Vec<CurveClass>,
    lifts: Vec<Vec<Chord>>,
}

impl CutSet {
    pub fn curves(&self) -> &[CurveClass] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    fn chords(&self) -> impl Iterator<Item = (usize, &Chord)> {
        self.lifts
            .iter()
            .enumerate()
            .flat_map(|(c, l)| l.iter().map(move |ch| (c, ch)))
    }
}

/// A component of the surface cut along a [`CutSet`].
#[derive(Debug, Clone, PartialEq)]
pub struct SubsurfaceHandle {
    /// An interior point of the component, inside the fundamental domain.
    pub base_point: HPoint,
    /// Boundary curves with the number of their sides facing this component.
    pub boundary: Vec<(CurveClass, u8)>,
    pub is_pants: bool,
    pub is_one_holed_torus_candidate: bool,
    pub euler_characteristic: i32,
    /// Boundary sides as (index into the cut set, side).
    pub sides: Vec<(usize, Side)>,
    /// Hyperbolic area of the component.
    pub area: f64,
}

impl SubsurfaceHandle {
    pub fn boundary_length(&self) -> f64 {
        self.boundary
            .iter()
            .map(|(c, m)| c.length * f64::from(*m))
            .sum()
    }
}

/// A shortest geodesic arc orthogonal to the boundary of a component at both
/// ends, with the lifts it joins.
#[derive(Debug, Clone)]
pub struct OrthoArc {
    pub from_curve: CurveClass,
    pub to_curve: CurveClass,
    pub length: f64,
    /// Maps the lift of `from_curve` at the start of the arc to a lift of
    /// `to_curve`'s class conjugate ending at the far endpoint.
    pub witness: Isometry,
    /// The arc itself, starting on the lift of `from_curve` in the domain.
    pub segment: GeoSegment,
    pub from_index: usize,
    pub to_index: usize,
    pub from_side: Side,
    pub to_side: Side,
    pub(crate) from_lift: Elem,
    pub(crate) to_lift: Elem,
}

impl OrthoArc {
    /// Holonomy word of the lift of `from_curve` containing the start point.
    pub fn from_lift_word(&self) -> Word {
        self.from_lift
            .word
            .concat(&self.from_curve.word)
            .concat(&self.from_lift.word.inverse())
    }

    /// Holonomy word of the lift of `to_curve` containing the end point.
    pub fn to_lift_word(&self) -> Word {
        self.to_lift
            .word
            .concat(&self.to_curve.word)
            .concat(&self.to_lift.word.inverse())
    }

    /// Word of the element taking the start lift's frame to the end lift's.
    pub fn witness_word(&self) -> Word {
        self.to_lift.word.concat(&self.from_lift.word.inverse())
    }
}

/// The domain cut along a curve set, as convex Klein cells grouped into
/// components.
struct Cells {
    polys: Vec<Vec<K>>,
    comp: Vec<usize>,
    count: usize,
}

impl Cells {
    fn locate(&self, k: K) -> Option<usize> {
        let mut best = (None, f64::NEG_INFINITY);
        for (c, p) in self.polys.iter().enumerate() {
            let m = p.len();
            let depth = (0..m)
                .map(|j| orient(p[j], p[(j + 1) % m], k))
                .fold(f64::INFINITY, f64::min);
            if depth > best.1 {
                best = (Some(c), depth);
            }
        }
        if best.1 > -1e-9 {
            best.0
        } else {
            None
        }
    }
}

fn split(poly: &[K], a: K, b: K) -> Option<(Vec<K>, Vec<K>)> {
    let vals: Vec<f64> = poly.iter().map(|&v| orient(a, b, v)).collect();
    let eps = 1e-12;
    if !(vals.iter().any(|&v| v > eps) && vals.iter().any(|&v| v < -eps)) {
        return None;
    }
    let (mut left, mut right) = (Vec::new(), Vec::new());
    let m = poly.len();
    for j in 0..m {
        let (p, q) = (poly[j], poly[(j + 1) % m]);
        let (vp, vq) = (vals[j], vals[(j + 1) % m]);
        if vp >= -eps {
            left.push(p);
        }
        if vp <= eps {
            right.push(p);
        }
        if (vp > eps && vq < -eps) || (vp < -eps && vq > eps) {
            let t = vp / (vp - vq);
            let x = [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])];
            left.push(x);
            right.push(x);
        }
    }
    Some((left, right))
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// A surface group with its Dirichlet domain and a cache of group elements
/// near `i`.
pub struct SurfaceGeometry {
    group: FuchsianGroup,
    // moves the domain center to `i`; everything below works in shifted
    // coordinates so that symmetric surfaces do not put curves on domain sides
    shift: Isometry,
    unshift: Isometry,
    settings: Settings,
    domain: DirichletDomain,
    step_mats: Vec<Isometry>,
    step_words: Vec<Word>,
    ball: RefCell<Option<Ball>>,
}

impl SurfaceGeometry {
    pub fn new(group: &FuchsianGroup, settings: &Settings) -> Result<Self> {
        if group.genus < 2 || group.generators.len() != 2 * group.genus as usize {
            return Err(Error::InvalidInput("group must have 2g generators, g ≥ 2"));
        }
        let (shift, unshift) = center_shift();
        let mut inner = group.clone();
        for g in &mut inner.generators {
            *g = (shift * *g * unshift).normalized();
        }
        let domain = DirichletDomain::build(&inner, settings.budget)?;
        let step_mats = domain.sides.iter().map(|s| s.elem.mat).collect();
        let step_words = domain.sides.iter().map(|s| s.elem.word.clone()).collect();
        Ok(Self {
            group: group.clone(),
            shift,
            unshift,
            settings: settings.clone(),
            domain,
            step_mats,
            step_words,
            ball: RefCell::new(None),
        })
    }

    pub fn group(&self) -> &FuchsianGroup {
        &self.group
    }

    pub fn settings(&self) -> &Settings {
        &self.settings
    }

    /// Largest distance from `i` to a point of the fundamental domain.
    pub fn domain_radius(&self) -> f64 {
        self.domain.radius
    }

    /// Hyperbolic area of the fundamental domain, `4π(g−1)` up to rounding.
    pub fn domain_area(&self) -> f64 {
        self.domain.area
    }

    /// Vertices of the fundamental domain, counterclockwise in the Klein model.
    pub fn domain_vertices(&self) -> Vec<HPoint> {
        self.domain.verts.iter().map(|&k| self.out(HPoint::from_klein(k))).collect()
    }

    /// The point the Dirichlet domain is centered at.
    pub fn domain_center(&self) -> HPoint {
        self.out(HPoint::I)
    }

    /// Endpoints of the pieces of the closed geodesic of `c` inside the
    /// fundamental domain.
    pub fn curve_chords(&self, c: &CurveClass) -> Result<Vec<(HPoint, HPoint)>> {
        Ok(self
            .lift(c)?
            .iter()
            .map(|ch| (self.out(HPoint::from_klein(ch.a)), self.out(HPoint::from_klein(ch.b))))
            .collect())
    }

    /// Side-pairing elements of the fundamental domain, one per side.
    pub fn side_pairings(&self) -> Vec<(Word, Isometry)> {
        self.domain
            .sides
            .iter()
            .map(|s| (s.elem.word.clone(), self.outer(&s.elem.mat)))
            .collect()
    }

    /// Default start point of the decomposition: the domain centroid, or the
    /// configured base point.
    pub fn base_point(&self) -> Result<HPoint> {
        match self.settings.base_point {
            Some((x, y)) => HPoint::new(x, y),
            None => Ok(self.out(self.domain.centroid())),
        }
    }

    fn inw(&self, p: HPoint) -> HPoint {
        self.shift.act(p)
    }

    fn out(&self, p: HPoint) -> HPoint {
        self.unshift.act(p)
    }

    fn outer(&self, m: &Isometry) -> Isometry {
        (self.unshift * *m * self.shift).normalized()
    }

    fn ensure_ball(&self, radius: f64) -> Result<Ref<'_, Ball>> {
        let current = self.ball.borrow().as_ref().map_or(-1.0, |b| b.radius);
        if current < radius {
            let r = radius.max(1.25 * current);
            let ball = Ball::grow(
                &self.step_mats,
                r,
                self.domain.radius + 1e-6,
                self.settings.budget,
            )?;
            *self.ball.borrow_mut() = Some(ball);
        }
        Ok(Ref::map(self.ball.borrow(), |b| b.as_ref().unwrap()))
    }

    /// Elements `t` with `d(p, t·i) ≤ radius`, searched afresh around `p`.
    fn local_ball(&self, p: HPoint, radius: f64) -> Result<Ball> {
        Ball::grow_at(&self.step_mats, p, radius, self.domain.radius + 1e-6, self.settings.budget)
    }

    /// Every nontrivial element `t` with `d(center, t·center) ≤ radius`, each
    /// once, sorted by displacement.
    pub fn enumerate_ball(&self, center: HPoint, radius: f64) -> Result<Vec<BallElement>> {
        if !(radius > 0.0) {
            return Err(Error::InvalidInput("radius must be positive"));
        }
        let center = self.inw(center);
        let (c, r) = self.domain.reduce_elem(center)?;
        let d0 = dist(HPoint::I, c);
        let ball = self.local_ball(c, radius + d0)?;
        let r_inv = r.inverse();
        let mut out = Vec::new();
        for &id in ball.ids() {
            if ball.disp(id) > radius + d0 {
                break;
            }
            let s = ball.mat(id);
            if dist(c, s.act(c)) > radius {
                continue;
            }
            let e = r_inv.then_apply(&ball.elem(id, &self.step_words)).then_apply(&r);
            let displacement = dist(center, e.mat.act(center));
            out.push(BallElement {
                word: e.word,
                holonomy: self.outer(&e.mat),
                displacement,
            });
        }
        out.sort_by(|a, b| a.displacement.partial_cmp(&b.displacement).unwrap());
        Ok(out)
    }

    /// Shortest closed geodesic, searching balls of growing radius until the
    /// best translation length plus the domain diameter fits inside.
    pub fn systole(&self) -> Result<(CurveClass, f64)> {
        self.systole_from(2.0 * self.domain.radius + 1.0)
    }

    pub fn systole_from(&self, initial_radius: f64) -> Result<(CurveClass, f64)> {
        let mut r = initial_radius;
        loop {
            let ball = self.ensure_ball(r)?;
            let mut best: Option<(f64, u32)> = None;
            for &id in ball.ids() {
                if ball.disp(id) > r {
                    break;
                }
                let tl = ball.mat(id).translation_length().unwrap_or(f64::INFINITY);
                if best.is_none_or(|(b, _)| tl < b) {
                    best = Some((tl, id));
                }
            }
            match best {
                Some((tl, id)) if tl + 2.0 * self.domain.radius <= r => {
                    let c = CurveClass::new(&self.group, &ball.word(id, &self.step_words))?;
                    let l = c.length;
                    return Ok((c, l));
                }
                Some((tl, _)) => r = (tl + 2.0 * self.domain.radius + 1e-9).max(r * 1.01),
                None => r *= 2.0,
            }
        }
    }

    /// Shortest geodesic loop based at `x`: the class of the element moving
    /// `x` least, and that displacement.
    pub fn shortest_loop_at(&self, x: HPoint) -> Result<(CurveClass, f64)> {
        let (xt, _) = self.domain.reduce(self.inw(x))?;
        let d0 = dist(HPoint::I, xt);
        // ball.disp(id) = d(xt, t·i) is within d0 of d(xt, t·xt)
        let mut need = bavard_bound(self.group.genus)? + d0 + 0.1;
        loop {
            let ball = self.local_ball(xt, need)?;
            let mut best: Option<(f64, u32)> = None;
            for &id in ball.ids() {
                let disp = ball.disp(id);
                if best.is_some_and(|(b, _)| disp - d0 > b) {
                    break;
                }
                let l = dist(xt, ball.mat(id).act(xt));
                if best.is_none_or(|(b, _)| l < b) {
                    best = Some((l, id));
                }
            }
            match best {
                Some((l, id)) if l + d0 <= ball.radius => {
                    let c = CurveClass::new(&self.group, &ball.word(id, &self.step_words))?;
                    return Ok((c, l));
                }
                Some((l, _)) => need = l + d0 + 0.1,
                None => need *= 2.0,
            }
        }
    }

    /// A lift of the class axis passing through the domain, and the element
    /// carrying the class axis onto it. The axis is recomputed from the
    /// conjugated word, since a long word can have huge matrix entries and a
    /// small trace, which leaves its axis poorly determined in `f64`.
    fn start_lift(&self, c: &CurveClass) -> Result<(GeodesicLine, Elem)> {
        let axis = c.holonomy.axis()?.image(&self.shift);
        let (_, mut r) = self.domain.reduce_elem(axis.project(HPoint::I))?;
        let mut line = axis.image(&r.mat);
        for _ in 0..4 {
            let w = r.word.concat(&c.word).concat(&r.word.inverse());
            let m = (self.shift * self.group.evaluate(&w) * self.unshift).normalized();
            line = m.axis()?;
            let (_, r2) = self.domain.reduce_elem(line.project(HPoint::I))?;
            if r2.word.is_empty() {
                break;
            }
            line = line.image(&r2.mat);
            r = r2.then_apply(&r);
        }
        Ok((line, r))
    }

    /// Lifts of the class axis through the domain, and their total length.
    /// Also returns the cutting-sequence word of one period: the product of
    /// the side pairings crossed, a conjugate of the class (or of its
    /// primitive root) whose partial products stay near the axis.
    fn trace(&self, c: &CurveClass) -> Result<(Vec<Chord>, f64, Word)> {
        let (start, r) = self.start_lift(c)?;
        let start_norm = start.normalizer();
        let mut line = start;
        let mut lift = r.clone();
        let mut chords = Vec::new();
        let mut total = 0.0;
        let cap = 64 + (16.0 * (c.length + 1.0)) as usize;
        for _ in 0..cap {
            let (ka, kb) = (ideal_klein(line.endpoint_1), ideal_klein(line.endpoint_2));
            let (t0, t1) = self
                .domain
                .clip_line(ka, kb)
                .ok_or(Error::Invariant("geodesic lift misses the fundamental domain"))?;
            let at = |t: f64| [ka[0] + t * (kb[0] - ka[0]), ka[1] + t * (kb[1] - ka[1])];
            let (a, b) = (at(t0), at(t1));
            let norm = line.normalizer();
            let (pa, pb) = (HPoint::from_klein(a), HPoint::from_klein(b));
            let s = (coordinate(&norm, pa), coordinate(&norm, pb));
            let length = klein_dist(a, b);
            total += length;
            chords.push(Chord {
                line,
                norm,
                a,
                b,
                s,
                lift: lift.clone(),
                length,
            });
            let q = line.point_at(s.1 + 1e-8);
            let (_, step) = self.domain.reduce_elem(q)?;
            if step.word.is_empty() && step.mat == Isometry::IDENTITY {
                return Err(Error::Invariant("geodesic trace stalled"));
            }
            line = line.image(&step.mat);
            lift = step.then_apply(&lift);
            if coincide(&start_norm, &line) == Some(true) {
                let word = r.word.concat(&lift.word.inverse());
                return Ok((chords, total, word));
            }
        }
        Err(Error::Invariant("geodesic trace did not close"))
    }

    /// Lifts of a primitive class through the domain.
    pub(crate) fn lift(&self, c: &CurveClass) -> Result<Vec<Chord>> {
        let (chords, total, _) = self.trace(c)?;
        if !primitive_total(total, c.length) {
            return Err(Error::Invariant("curve class is not primitive"));
        }
        Ok(chords)
    }

    /// The class rewritten by its cutting-sequence word, whose holonomy is
    /// better conditioned than that of a long composite word.
    pub fn canonical(&self, c: &CurveClass) -> Result<CurveClass> {
        let (_, total, word) = self.trace(c)?;
        if !primitive_total(total, c.length) {
            return Err(Error::Invariant("curve class is not primitive"));
        }
        let out = CurveClass::new(&self.group, &word)?;
        if !primitive_total(out.length, c.length) {
            return Err(Error::Invariant("cutting sequence disagrees with the class"));
        }
        Ok(out)
    }

    /// Whether the class is a proper power of another element.
    pub fn is_primitive(&self, c: &CurveClass) -> Result<bool> {
        let (_, total, _) = self.trace(c)?;
        Ok(primitive_total(total, c.length))
    }

    fn same_lifts(&self, c1: &CurveClass, l1: &[Chord], c2: &CurveClass, l2: &[Chord]) -> bool {
        if (c1.length - c2.length).abs() > LENGTH_TOL * c1.length.max(1.0) {
            return false;
        }
        let probe = &l2[0].line;
        l1.iter().any(|ch| coincide(&ch.norm, probe).is_some())
    }

    /// Whether two classes are equal as unoriented free homotopy classes.
    pub fn same_class(&self, c1: &CurveClass, c2: &CurveClass) -> Result<bool> {
        if (c1.length - c2.length).abs() > LENGTH_TOL * c1.length.max(1.0) {
            return Ok(false);
        }
        let (l1, _, _) = self.trace(c1)?;
        let (l2, _, _) = self.trace(c2)?;
        Ok(self.same_lifts(c1, &l1, c2, &l2))
    }

    /// Whether some lift from `l2` crosses some lift from `l1`. Identical
    /// lines are skipped.
    fn lifts_cross(&self, l1: &[Chord], l2: &[Chord]) -> Result<bool> {
        let r = 2.0 * self.domain.radius + 1e-6;
        let ball = self.ensure_ball(r)?;
        let mut tiles = vec![Isometry::IDENTITY];
        tiles.extend(ball.ids().iter().take_while(|&&id| ball.disp(id) <= r).map(|&id| ball.mat(id)));
        for t in &tiles {
            for cj in l2 {
                let l = cj.line.image(t);
                for ci in l1 {
                    if coincide(&ci.norm, &l).is_some() {
                        continue;
                    }
                    let u = ci.norm.act_ideal(l.endpoint_1);
                    let v = ci.norm.act_ideal(l.endpoint_2);
                    if let (IdealPoint::Real(u), IdealPoint::Real(v)) = (u, v) {
                        if u * v < 0.0 {
                            return Ok(true);
                        }
                    }
                }
            }
        }
        Ok(false)
    }

    /// Whether the closed geodesics of two primitive classes are disjoint; a
    /// class is disjoint from itself.
    pub fn disjoint(&self, c1: &CurveClass, c2: &CurveClass) -> Result<bool> {
        let l1 = self.lift(c1)?;
        let l2 = self.lift(c2)?;
        if self.same_lifts(c1, &l1, c2, &l2) {
            return Ok(true);
        }
        Ok(!self.lifts_cross(&l1, &l2)?)
    }

    /// Whether the closed geodesic of a class has no self-crossing.
    pub fn is_simple(&self, c: &CurveClass) -> Result<bool> {
        let (l, _, _) = self.trace(c)?;
        Ok(!self.lifts_cross(&l, &l)?)
    }

    /// Distinct primitive classes of length at most `max_len`, shortest first.
    pub fn short_classes(&self, max_len: f64) -> Result<Vec<CurveClass>> {
        let r = max_len + 2.0 * self.domain.radius + 1e-6;
        let mut cands: Vec<(f64, Word)> = {
            let ball = self.ensure_ball(r)?;
            ball.ids()
                .iter()
                .take_while(|&&id| ball.disp(id) <= r)
                .filter_map(|&id| {
                    let tl = ball.mat(id).translation_length().ok()?;
                    (tl <= max_len + 1e-6).then(|| (tl, ball.word(id, &self.step_words)))
                })
                .collect()
        };
        cands.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        let mut found: Vec<(CurveClass, Vec<Chord>)> = Vec::new();
        for (_, w) in cands {
            let c = CurveClass::new(&self.group, &w)?;
            if c.length > max_len {
                continue;
            }
            let (l, total, _) = self.trace(&c)?;
            if !primitive_total(total, c.length) {
                continue;
            }
            if found.iter().any(|(d, ld)| self.same_lifts(d, ld, &c, &l)) {
                continue;
            }
            found.push((c, l));
        }
        Ok(found.into_iter().map(|(c, _)| c).collect())
    }

    /// Builds a cut set; every class must be primitive.
    pub fn cut_set(&self, curves: &[CurveClass]) -> Result<CutSet> {
        let lifts = curves.iter().map(|c| self.lift(c)).collect::<Result<Vec<_>>>()?;
        Ok(CutSet {
            curves: curves.to_vec(),
            lifts,
        })
    }

    /// Cut set extended by one more curve.
    pub fn extend_cut(&self, cut: &CutSet, c: &CurveClass) -> Result<CutSet> {
        let mut out = cut.clone();
        out.lifts.push(self.lift(c)?);
        out.curves.push(c.clone());
        Ok(out)
    }

    /// Whether `c` equals a curve already in the cut set.
    pub fn in_cut(&self, cut: &CutSet, c: &CurveClass) -> Result<Option<usize>> {
        let (l, _, _) = self.trace(c)?;
        Ok((0..cut.len()).find(|&k| self.same_lifts(&cut.curves[k], &cut.lifts[k], c, &l)))
    }

    /// Whether `c` crosses some curve of the cut set.
    pub fn crosses_cut(&self, cut: &CutSet, c: &CurveClass) -> Result<bool> {
        let l = self.lift(c)?;
        for (k, lk) in cut.lifts.iter().enumerate() {
            if self.same_lifts(&cut.curves[k], lk, c, &l) {
                continue;
            }
            if self.lifts_cross(lk, &l)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn dist_to_chords(&self, x: HPoint, chords: &[&Chord]) -> Result<f64> {
        if chords.is_empty() {
            return Ok(f64::INFINITY);
        }
        let (xt, _) = self.domain.reduce(x)?;
        let d0 = dist(HPoint::I, xt);
        let rho = self.domain.radius;
        let mut best = chords
            .iter()
            .map(|c| signed_dist(&c.norm, xt).abs())
            .fold(f64::INFINITY, f64::min);
        let ball = self.ensure_ball(d0 + rho + best + 1e-9)?;
        for &id in ball.ids() {
            if ball.disp(id) - d0 - rho > best {
                break;
            }
            let y = ball.mat(id).inverse().act(xt);
            for c in chords {
                best = best.min(signed_dist(&c.norm, y).abs());
            }
        }
        Ok(best)
    }

    /// Distance from `x` to the closed geodesic of a primitive class.
    pub fn dist_to_curve(&self, x: HPoint, c: &CurveClass) -> Result<f64> {
        let l = self.lift(c)?;
        let refs: Vec<&Chord> = l.iter().collect();
        self.dist_to_chords(self.inw(x), &refs)
    }

    /// Distance from `x` to the union of the cut curves.
    pub fn dist_to_cut(&self, x: HPoint, cut: &CutSet) -> Result<f64> {
        self.cut_distance(self.inw(x), cut)
    }

    fn cut_distance(&self, x: HPoint, cut: &CutSet) -> Result<f64> {
        let refs: Vec<&Chord> = cut.chords().map(|(_, c)| c).collect();
        self.dist_to_chords(x, &refs)
    }

    fn cells(&self, cut: &CutSet) -> Result<Cells> {
        let mut polys = vec![self.domain.verts.clone()];
        for (_, ch) in cut.chords() {
            let mut next = Vec::with_capacity(polys.len() + 1);
            for p in polys {
                match split(&p, ch.a, ch.b) {
                    Some((l, r)) => {
                        next.push(l);
                        next.push(r);
                    }
                    None => next.push(p),
                }
            }
            polys = next;
        }
        polys.retain(|p| p.len() >= 3 && polygon_area(p) > 1e-14);
        let n = polys.len();
        let mut cells = Cells {
            polys,
            comp: (0..n).collect(),
            count: 0,
        };
        let mut parent: Vec<usize> = (0..n).collect();
        for c in 0..n {
            let p = cells.polys[c].clone();
            let m = p.len();
            for j in 0..m {
                let (u, v) = (p[j], p[(j + 1) % m]);
                if (u[0] - v[0]).abs() + (u[1] - v[1]).abs() < 1e-12 {
                    continue;
                }
                let Some(k) = self.domain.side_of_segment(u, v) else {
                    continue;
                };
                let mid = HPoint::from_klein([(u[0] + v[0]) / 2.0, (u[1] + v[1]) / 2.0]);
                let img = self.domain.sides[k].elem.mat.inverse().act(mid).klein();
                let inward = [img[0] * (1.0 - 1e-9), img[1] * (1.0 - 1e-9)];
                let other = cells
                    .locate(inward)
                    .ok_or(Error::Invariant("side gluing left the domain"))?;
                let (ra, rb) = (find(&mut parent, c), find(&mut parent, other));
                parent[ra] = rb;
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for c in 0..n {
            let r = find(&mut parent, c);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            cells.comp[c] = label[r];
        }
        cells.count = count;
        Ok(cells)
    }

    fn component_of(&self, cells: &Cells, x: HPoint) -> Result<usize> {
        let (xt, _) = self.domain.reduce(x)?;
        cells
            .locate(xt.klein())
            .map(|c| cells.comp[c])
            .ok_or(Error::Invariant("point outside the fundamental domain"))
    }

    /// Whether `x` and `y` lie in the same component of the cut surface.
    pub fn same_component(&self, x: HPoint, y: HPoint, cut: &CutSet) -> Result<bool> {
        let cells = self.cells(cut)?;
        Ok(self.component_of(&cells, self.inw(x))? == self.component_of(&cells, self.inw(y))?)
    }

    /// Components of the surface cut along `cut`, each with its boundary
    /// sides and Euler characteristic.
    pub fn components(&self, cut: &CutSet) -> Result<Vec<SubsurfaceHandle>> {
        let cells = self.cells(cut)?;
        self.handles(cut, &cells)
    }

    fn handles(&self, cut: &CutSet, cells: &Cells) -> Result<Vec<SubsurfaceHandle>> {
        let n = cells.count;
        let mut area = vec![0.0; n];
        let mut base: Vec<(f64, K)> = vec![(-1.0, [0.0, 0.0]); n];
        for (c, p) in cells.polys.iter().enumerate() {
            let a = polygon_area(p);
            let k = cells.comp[c];
            area[k] += a;
            if a > base[k].0 {
                let m = p.len() as f64;
                let cx = p.iter().map(|v| v[0]).sum::<f64>() / m;
                let cy = p.iter().map(|v| v[1]).sum::<f64>() / m;
                base[k] = (a, [cx, cy]);
            }
        }
        let mut sides: Vec<Vec<(usize, Side)>> = vec![Vec::new(); n];
        for (ci, lifts) in cut.lifts.iter().enumerate() {
            let ch = lifts
                .iter()
                .max_by(|a, b| a.length.partial_cmp(&b.length).unwrap())
                .ok_or(Error::Invariant("curve without lifts"))?;
            let mid = ch.line.point_at((ch.s.0 + ch.s.1) / 2.0);
            let e = hypot(ch.norm.act(mid).x, ch.norm.act(mid).y);
            let back = ch.norm.inverse();
            let delta: f64 = 1e-6;
            for (side, sign) in [(Side::Left, -1.0), (Side::Right, 1.0)] {
                let w = HPoint {
                    x: e * sign * tanh(delta),
                    y: e / cosh(delta),
                };
                let k = self.component_of(cells, back.act(w))?;
                sides[k].push((ci, side));
            }
        }
        let mut out = Vec::with_capacity(n);
        let mut chi_total = 0;
        for k in 0..n {
            let chi_f = -area[k] / (2.0 * PI);
            let chi = round(chi_f) as i32;
            if (chi_f - f64::from(chi)).abs() > 1e-4 {
                return Err(Error::Invariant("component area is not a multiple of 2π"));
            }
            chi_total += chi;
            let mut boundary: Vec<(CurveClass, u8)> = Vec::new();
            let mut seen: Vec<usize> = Vec::new();
            for &(ci, _) in &sides[k] {
                if let Some(p) = seen.iter().position(|&s| s == ci) {
                    boundary[p].1 += 1;
                } else {
                    seen.push(ci);
                    boundary.push((cut.curves[ci].clone(), 1));
                }
            }
            let nsides = sides[k].len();
            out.push(SubsurfaceHandle {
                base_point: self.out(HPoint::from_klein(base[k].1)),
                boundary,
                is_pants: chi == -1 && nsides == 3,
                is_one_holed_torus_candidate: chi == -1 && nsides == 1,
                euler_characteristic: chi,
                sides: sides[k].clone(),
                area: area[k],
            });
        }
        if chi_total != 2 - 2 * self.group.genus as i32 {
            return Err(Error::Invariant("Euler characteristics do not add up"));
        }
        Ok(out)
    }

    /// For each component, the sample point farthest from the cut and its
    /// distance, over the first `samples` points of the domain sample
    /// sequence. Ties go to the earlier sample.
    pub fn farthest_points(&self, cut: &CutSet, samples: usize) -> Result<Vec<Option<(HPoint, f64)>>> {
        let cells = self.cells(cut)?;
        let mut best: Vec<Option<(HPoint, f64)>> = vec![None; cells.count];
        for k in self.domain.samples(samples, self.settings.seed) {
            let Some(c) = cells.locate(k) else { continue };
            let x = HPoint::from_klein(k);
            let d = self.cut_distance(x, cut)?;
            let slot = &mut best[cells.comp[c]];
            if slot.is_none_or(|(_, b)| d > b) {
                *slot = Some((x, d));
            }
        }
        Ok(best.into_iter().map(|b| b.map(|(x, d)| (self.out(x), d))).collect())
    }

    /// Farthest sampled point of one component from the cut.
    pub fn farthest_point(&self, cut: &CutSet, handle: &SubsurfaceHandle, samples: usize) -> Result<(HPoint, f64)> {
        if samples == 0 {
            return Err(Error::InvalidInput("samples must be positive"));
        }
        let cells = self.cells(cut)?;
        let target = self.component_of(&cells, self.inw(handle.base_point))?;
        let mut best: Option<(HPoint, f64)> = None;
        for k in self.domain.samples(samples, self.settings.seed) {
            let Some(c) = cells.locate(k) else { continue };
            if cells.comp[c] != target {
                continue;
            }
            let x = HPoint::from_klein(k);
            let d = self.cut_distance(x, cut)?;
            if best.is_none_or(|(_, b)| d > b) {
                best = Some((x, d));
            }
        }
        best.map(|(x, d)| (self.out(x), d)).ok_or(Error::ComponentTooThin)
    }

    /// Whether the open segment crosses a cut lift other than `skip`.
    fn segment_clear(&self, seg: &GeoSegment, cut: &CutSet, skip: [&GeodesicLine; 2]) -> Result<bool> {
        let r = 2.0 * self.domain.radius + seg.length() + 1e-6;
        let (start, _) = self.domain.reduce(seg.start)?;
        // the segment starts inside the domain
        if dist(start, seg.start) > 1e-9 {
            return Err(Error::Invariant("orthogeodesic does not start in the domain"));
        }
        let skip = [skip[0].normalizer(), skip[1].normalizer()];
        let ball = self.ensure_ball(r)?;
        let mut tiles = vec![Isometry::IDENTITY];
        tiles.extend(ball.ids().iter().take_while(|&&id| ball.disp(id) <= r).map(|&id| ball.mat(id)));
        for t in &tiles {
            let ti = t.inverse();
            let (p, q) = (ti.act(seg.start), ti.act(seg.end));
            for (_, ch) in cut.chords() {
                let (dp, dq) = (signed_dist(&ch.norm, p), signed_dist(&ch.norm, q));
                let touches = dp.abs() <= 1e-9 || dq.abs() <= 1e-9;
                if !touches && (dp < 0.0) == (dq < 0.0) {
                    continue;
                }
                let l = ch.line.image(t);
                if skip.iter().any(|s| coincide(s, &l).is_some()) {
                    continue;
                }
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Shortest geodesic arc inside a component, orthogonal to its boundary
    /// at both ends, whose interior meets no cut curve.
    pub fn shortest_orthogeodesic(&self, cut: &CutSet, handle: &SubsurfaceHandle) -> Result<OrthoArc> {
        if handle.sides.is_empty() {
            return Err(Error::InvalidInput("component has no boundary"));
        }
        let cells = self.cells(cut)?;
        let target = self.component_of(&cells, self.inw(handle.base_point))?;
        let mut curves: Vec<usize> = handle.sides.iter().map(|s| s.0).collect();
        curves.sort_unstable();
        curves.dedup();
        let chords: Vec<(usize, &Chord)> = curves
            .iter()
            .flat_map(|&c| cut.lifts[c].iter().map(move |ch| (c, ch)))
            .collect();
        let rho = self.domain.radius;
        let cap = 4.0 * PI * (f64::from(self.group.genus) - 1.0) + 8.0;
        let mut lambda = 2.0;
        while lambda <= 2.0 * cap {
            let r = 2.0 * rho + lambda;
            let ball = self.ensure_ball(r)?;
            let mut tiles: Vec<Option<u32>> = vec![None];
            tiles.extend(ball.ids().iter().take_while(|&&id| ball.disp(id) <= r).map(|&id| Some(id)));
            let mut cands: Vec<(f64, usize, usize, usize)> = Vec::new();
            for (ti, t) in tiles.iter().enumerate() {
                let m = t.map_or(Isometry::IDENTITY, |id| ball.mat(id));
                for (jb, (_, cb)) in chords.iter().enumerate() {
                    let lt = cb.line.image(&m);
                    for (ia, (_, ca)) in chords.iter().enumerate() {
                        let (u, v) = (ca.norm.act_ideal(lt.endpoint_1), ca.norm.act_ideal(lt.endpoint_2));
                        let (IdealPoint::Real(u), IdealPoint::Real(v)) = (u, v) else { continue };
                        if !(u * v > 0.0) {
                            continue;
                        }
                        let (lo, hi) = if u.abs() < v.abs() { (u.abs(), v.abs()) } else { (v.abs(), u.abs()) };
                        if lo <= 1e-9 * hi {
                            continue;
                        }
                        let len = 2.0 * atanh(sqrt(lo / hi));
                        if len > lambda {
                            continue;
                        }
                        let foot = 0.5 * ln(lo * hi);
                        if foot < ca.s.0.min(ca.s.1) - 1e-9 || foot > ca.s.0.max(ca.s.1) + 1e-9 {
                            continue;
                        }
                        cands.push((len, ia, ti, jb));
                    }
                }
            }
            drop(ball);
            cands.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            for &(len, ia, ti, jb) in &cands {
                let (ca_idx, ca) = chords[ia];
                let (cb_idx, cb) = chords[jb];
                // the cache already covers radius `r`, so tile ids stay valid
                let t = match tiles[ti] {
                    None => Elem::identity(),
                    Some(id) => self.ensure_ball(r)?.elem(id, &self.step_words),
                };
                let lt = cb.line.image(&t.mat);
                let Ok((_, seg)) = crate::hyp::common_perpendicular(&ca.line, &lt) else {
                    continue;
                };
                let mid = seg.point_at(0.5);
                if self.component_of(&cells, mid)? != target {
                    continue;
                }
                if !self.segment_clear(&seg, cut, [&ca.line, &lt])? {
                    continue;
                }
                let side = |l: &GeodesicLine| {
                    if l.signed_distance(mid) > 0.0 {
                        Side::Left
                    } else {
                        Side::Right
                    }
                };
                let from_lift = ca.lift.clone();
                let to_lift = t.then_apply(&cb.lift);
                let witness = self.outer(&(to_lift.mat * from_lift.mat.inverse()));
                return Ok(OrthoArc {
                    from_curve: cut.curves[ca_idx].clone(),
                    to_curve: cut.curves[cb_idx].clone(),
                    length: len,
                    witness,
                    segment: GeoSegment {
                        start: self.out(seg.start),
                        end: self.out(seg.end),
                    },
                    from_index: ca_idx,
                    to_index: cb_idx,
                    from_side: side(&ca.line),
                    to_side: side(&lt),
                    from_lift,
                    to_lift,
                });
            }
            lambda *= 2.0;
        }
        Err(Error::Undecided("no orthogeodesic within the search radius"))
    }
}

fn center_shift() -> (Isometry, Isometry) {
    // z ↦ (z − x0)/y0 for a fixed point (x0, y0) off every symmetry axis of
    // the standard examples
    let (x0, y0) = (0.091_7, 1.073_1);
    let s = sqrt(y0);
    let shift = Isometry {
        a: 1.0 / s,
        b: -x0 / s,
        c: 0.0,
        d: s,
    };
    (shift, shift.inverse())
}

/// [`SurfaceGeometry::enumerate_ball`] with default settings.
pub fn enumerate_ball(group: &FuchsianGroup, center: HPoint, radius: f64) -> Result<Vec<BallElement>> {
    SurfaceGeometry::new(group, &Settings::default())?.enumerate_ball(center, radius)
}

/// [`SurfaceGeometry::systole`] with default settings.
pub fn systole(group: &FuchsianGroup) -> Result<(CurveClass, f64)> {
    SurfaceGeometry::new(group, &Settings::default())?.systole()
}

/// [`SurfaceGeometry::shortest_loop_at`] with default settings.
pub fn shortest_loop_at(group: &FuchsianGroup, x: HPoint) -> Result<(CurveClass, f64)> {
    SurfaceGeometry::new(group, &Settings::default())?.shortest_loop_at(x)
}

/// [`SurfaceGeometry::dist_to_curve`] with default settings.
pub fn dist_to_curve(group: &FuchsianGroup, x: HPoint, c: &CurveClass) -> Result<f64> {
    SurfaceGeometry::new(group, &Settings::default())?.dist_to_curve(x, c)
}

/// [`SurfaceGeometry::disjoint`] with default settings.
pub fn disjoint(group: &FuchsianGroup, c1: &CurveClass, c2: &CurveClass) -> Result<bool> {
    SurfaceGeometry::new(group, &Settings::default())?.disjoint(c1, c2)
}
