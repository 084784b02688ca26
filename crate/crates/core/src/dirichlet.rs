//! Dirichlet domain of a surface group centred at `i`.
//!
//! The domain is stored in the Klein model centred at `i`, where its sides and
//! every geodesic are straight. It is certified by its area: the polygon cut
//! out by any set of bisectors contains the true domain, so matching the area
//! `4π(g−1)` proves that no bisector is missing.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hyp::{dist, HPoint, IdealPoint, Isometry};
use crate::math::{acos, atan2, floor, sinh, sqrt, PI};
use crate::surface::FuchsianGroup;
use crate::word::Word;

pub(crate) type K = [f64; 2];

/// A group element together with a word spelling it.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Elem {
    pub mat: Isometry,
    pub word: Word,
}

impl Elem {
    pub fn identity() -> Self {
        Elem {
            mat: Isometry::IDENTITY,
            word: Word::empty(),
        }
    }

    /// `self · other`.
    pub fn then_apply(&self, other: &Elem) -> Elem {
        Elem {
            mat: (self.mat * other.mat).normalized(),
            word: self.word.concat(&other.word),
        }
    }

    pub fn inverse(&self) -> Elem {
        Elem {
            mat: self.mat.inverse(),
            word: self.word.inverse(),
        }
    }
}

pub(crate) fn ideal_klein(p: IdealPoint) -> K {
    match p {
        IdealPoint::Infinity => [1.0, 0.0],
        IdealPoint::Real(t) => {
            let den = t * t + 1.0;
            [(t * t - 1.0) / den, 2.0 * t / den]
        }
    }
}

pub(crate) fn klein_dist(a: K, b: K) -> f64 {
    dist(HPoint::from_klein(a), HPoint::from_klein(b))
}

/// Signed Euclidean distance of `c` from the line `a → b`, positive to the
/// left in Klein coordinates.
pub(crate) fn orient(a: K, b: K, c: K) -> f64 {
    let (ux, uy) = (b[0] - a[0], b[1] - a[1]);
    let n = sqrt(ux * ux + uy * uy);
    if n == 0.0 {
        return 0.0;
    }
    (ux * (c[1] - a[1]) - uy * (c[0] - a[0])) / n
}

/// Bisector half-plane `n·k ≤ c` of `i` and `g·i`, normalized.
fn bisector(g: &Isometry) -> ([f64; 2], f64) {
    let q = g.act(HPoint::I).hyperboloid();
    let n = sqrt(q[1] * q[1] + q[2] * q[2]);
    ([q[1] / n, q[2] / n], (q[0] - 1.0) / n)
}

/// Convex polygon with labelled edges; `label[k]` belongs to the edge from
/// vertex `k` to vertex `k+1`.
#[derive(Debug, Clone)]
struct Poly {
    verts: Vec<K>,
    label: Vec<usize>,
}

const NO_LABEL: usize = usize::MAX;

impl Poly {
    fn clip(&self, n: [f64; 2], c: f64, label: usize) -> Option<Poly> {
        let m = self.verts.len();
        let val = |v: K| n[0] * v[0] + n[1] * v[1] - c;
        let eps = 1e-14;
        if self.verts.iter().all(|&v| val(v) <= eps) {
            return None;
        }
        // (vertex, label of the edge arriving at it)
        let mut out: Vec<(K, usize)> = Vec::with_capacity(m + 1);
        for k in 0..m {
            let (p, q) = (self.verts[k], self.verts[(k + 1) % m]);
            let (vp, vq) = (val(p), val(q));
            let (pin, qin) = (vp <= eps, vq <= eps);
            let cut = |t: f64| [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])];
            match (pin, qin) {
                (true, true) => out.push((q, self.label[k])),
                (true, false) => out.push((cut(vp / (vp - vq)), self.label[k])),
                (false, true) => {
                    out.push((cut(vp / (vp - vq)), label));
                    out.push((q, self.label[k]));
                }
                (false, false) => {}
            }
        }
        // drop repeated vertices, keeping the later edge label
        let mut verts: Vec<K> = Vec::new();
        let mut arrive: Vec<usize> = Vec::new();
        for (v, l) in out {
            if let Some(last) = verts.last() {
                if (last[0] - v[0]).abs() + (last[1] - v[1]).abs() < 1e-13 {
                    *arrive.last_mut().unwrap() = l;
                    continue;
                }
            }
            verts.push(v);
            arrive.push(l);
        }
        while verts.len() > 1 {
            let (f, l) = (verts[0], verts[verts.len() - 1]);
            if (f[0] - l[0]).abs() + (f[1] - l[1]).abs() < 1e-13 {
                verts.pop();
                let a = arrive.pop().unwrap();
                arrive[0] = a;
            } else {
                break;
            }
        }
        let m = verts.len();
        let label = (0..m).map(|k| arrive[(k + 1) % m]).collect();
        Some(Poly { verts, label })
    }
}

/// Hyperbolic area of a convex polygon given in Klein coordinates.
pub(crate) fn polygon_area(verts: &[K]) -> f64 {
    let m = verts.len();
    if m < 3 {
        return 0.0;
    }
    let h: Vec<[f64; 3]> = verts.iter().map(|&k| HPoint::from_klein(k).hyperboloid()).collect();
    let mink = |u: [f64; 3], v: [f64; 3]| -u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    let mut angles = 0.0;
    for k in 0..m {
        let v = h[k];
        let (u, w) = (h[(k + m - 1) % m], h[(k + 1) % m]);
        let tu = {
            let s = mink(u, v);
            [u[0] + s * v[0], u[1] + s * v[1], u[2] + s * v[2]]
        };
        let tw = {
            let s = mink(w, v);
            [w[0] + s * v[0], w[1] + s * v[1], w[2] + s * v[2]]
        };
        let den = sqrt(mink(tu, tu) * mink(tw, tw));
        angles += if den > 0.0 { acos(mink(tu, tw) / den) } else { PI };
    }
    (m as f64 - 2.0) * PI - angles
}

struct Node {
    mat: Isometry,
    disp: f64,
    parent: u32,
    step: u32,
}

/// Group elements `t` with `d(i, t·i) ≤ radius`, found by breadth-first
/// search over a finite step set. A branch is followed while its image stays
/// within `radius + margin`.
pub(crate) struct Ball {
    nodes: Vec<Node>,
    order: Vec<u32>,
    pub radius: f64,
}

const CELL: f64 = 0.01;

fn cell_key(p: HPoint, ring_shift: i64, turn_shift: i64) -> (i64, i64) {
    let h = p.hyperboloid();
    let r = crate::math::acosh(h[0]);
    let ring = floor(r / CELL) as i64 + ring_shift;
    // the angle is meaningless next to the centre
    if ring <= 1 {
        return (ring, 0);
    }
    let scale = sinh((ring.max(1) as f64) * CELL);
    let count = (floor(2.0 * PI * scale / CELL) as i64).max(1);
    let theta = atan2(h[2], h[1]) + PI;
    let turn = (floor(theta * scale / CELL) as i64 + turn_shift).rem_euclid(count);
    (ring, turn)
}

impl Ball {
    pub fn grow(steps: &[Isometry], radius: f64, margin: f64, budget: usize) -> Result<Ball> {
        Self::grow_at(steps, HPoint::I, radius, margin, budget)
    }

    /// Like [`Ball::grow`], but measuring `d(center, t·i)` instead, so a
    /// search around a point far from `i` need not cover a ball around `i`.
    pub fn grow_at(steps: &[Isometry], center: HPoint, radius: f64, margin: f64, budget: usize) -> Result<Ball> {
        let at_i = center == HPoint::I;
        let disp_of = |m: &Isometry| if at_i { m.displacement_at_i() } else { dist(center, m.act(HPoint::I)) };
        let mut nodes = vec![Node {
            mat: Isometry::IDENTITY,
            disp: disp_of(&Isometry::IDENTITY),
            parent: 0,
            step: u32::MAX,
        }];
        let mut index: BTreeMap<(i64, i64), Vec<u32>> = BTreeMap::new();
        index.insert(cell_key(HPoint::I, 0, 0), vec![0]);
        let mut head = 0usize;
        let limit = radius + margin;
        while head < nodes.len() {
            let base = nodes[head].mat;
            for (k, s) in steps.iter().enumerate() {
                let m = (base * *s).normalized();
                let disp = disp_of(&m);
                if !(disp <= limit) {
                    continue;
                }
                let p = m.act(HPoint::I);
                let mut seen = false;
                'look: for dr in -1..=1 {
                    for dt in -1..=1 {
                        if let Some(bucket) = index.get(&cell_key(p, dr, dt)) {
                            for &j in bucket {
                                if dist(nodes[j as usize].mat.act(HPoint::I), p) < 1e-5 {
                                    seen = true;
                                    break 'look;
                                }
                            }
                        }
                    }
                }
                if seen {
                    continue;
                }
                let id = nodes.len() as u32;
                index.entry(cell_key(p, 0, 0)).or_default().push(id);
                nodes.push(Node {
                    mat: m,
                    disp,
                    parent: head as u32,
                    step: k as u32,
                });
                if nodes.len() > budget {
                    return Err(Error::BudgetExceeded);
                }
            }
            head += 1;
        }
        let mut order: Vec<u32> = (1..nodes.len() as u32)
            .filter(|&j| nodes[j as usize].disp <= radius)
            .collect();
        order.sort_by(|&a, &b| {
            nodes[a as usize]
                .disp
                .partial_cmp(&nodes[b as usize].disp)
                .unwrap()
                .then(a.cmp(&b))
        });
        Ok(Ball {
            nodes,
            order,
            radius,
        })
    }

    /// Nontrivial elements sorted by displacement at `i`.
    pub fn ids(&self) -> &[u32] {
        &self.order
    }

    pub fn mat(&self, id: u32) -> Isometry {
        self.nodes[id as usize].mat
    }

    pub fn disp(&self, id: u32) -> f64 {
        self.nodes[id as usize].disp
    }

    pub fn word(&self, id: u32, step_words: &[Word]) -> Word {
        let mut steps = Vec::new();
        let mut j = id as usize;
        while j != 0 {
            steps.push(self.nodes[j].step as usize);
            j = self.nodes[j].parent as usize;
        }
        let mut w = Word::empty();
        for &s in steps.iter().rev() {
            w = w.concat(&step_words[s]);
        }
        w
    }

    pub fn elem(&self, id: u32, step_words: &[Word]) -> Elem {
        Elem {
            mat: self.mat(id),
            word: self.word(id, step_words),
        }
    }
}

/// One side of the domain: the bisector of `i` and `elem·i`. Crossing it
/// leads into the tile `elem·D`; `partner` is the side carrying `elem⁻¹`.
#[derive(Debug, Clone)]
pub(crate) struct DomainSide {
    pub elem: Elem,
    pub normal: [f64; 2],
    pub offset: f64,
    pub partner: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct DirichletDomain {
    /// Vertices in Klein coordinates; side `k` runs from vertex `k` to `k+1`.
    pub verts: Vec<K>,
    pub sides: Vec<DomainSide>,
    /// Largest distance from `i` to a vertex.
    pub radius: f64,
    pub area: f64,
}

/// Shortens a generating set by Nielsen moves `s_i ↦ s_i s_j^{±1}` or
/// `s_j^{±1} s_i` while the displacement at `i` drops.
fn nielsen_reduce(group: &FuchsianGroup) -> Vec<Elem> {
    let mut gens: Vec<Elem> = (1..=group.generators.len() as i32)
        .map(|l| Elem {
            mat: group.generators[l as usize - 1],
            word: Word::letter(l),
        })
        .collect();
    let n = gens.len();
    for _ in 0..10_000 {
        let mut improved = false;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for inv in [false, true] {
                    let sj = if inv { gens[j].inverse() } else { gens[j].clone() };
                    for left in [false, true] {
                        let cand = if left {
                            sj.then_apply(&gens[i])
                        } else {
                            gens[i].then_apply(&sj)
                        };
                        if cand.mat.displacement_at_i() < gens[i].mat.displacement_at_i() - 1e-9 {
                            gens[i] = Elem {
                                mat: group.evaluate(&cand.word),
                                word: cand.word,
                            };
                            improved = true;
                        }
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
    gens
}

impl DirichletDomain {
    pub fn build(group: &FuchsianGroup, budget: usize) -> Result<DirichletDomain> {
        let target = 4.0 * PI * (f64::from(group.genus) - 1.0);
        let gens = nielsen_reduce(group);
        let mut steps: Vec<Elem> = Vec::new();
        for g in &gens {
            steps.push(g.clone());
            steps.push(g.inverse());
        }
        let mats: Vec<Isometry> = steps.iter().map(|e| e.mat).collect();
        let words: Vec<Word> = steps.iter().map(|e| e.word.clone()).collect();
        let margin = mats
            .iter()
            .map(Isometry::displacement_at_i)
            .fold(0.0, f64::max);
        let mut radius = margin.max(3.0);
        while radius < 60.0 {
            let ball = Ball::grow(&mats, radius, margin, budget)?;
            if let Some(d) = Self::from_candidates(&ball, &words, target) {
                return Ok(d);
            }
            radius *= 1.3;
        }
        Err(Error::FundamentalDomain("bisector search did not close the domain"))
    }

    fn from_candidates(ball: &Ball, words: &[Word], target: f64) -> Option<DirichletDomain> {
        let mut poly = Poly {
            verts: vec![[-2.0, -2.0], [2.0, -2.0], [2.0, 2.0], [-2.0, 2.0]],
            label: vec![NO_LABEL; 4],
        };
        for &id in ball.ids() {
            let (n, c) = bisector(&ball.mat(id));
            if let Some(p) = poly.clip(n, c, id as usize) {
                poly = p;
            }
        }
        if poly.label.contains(&NO_LABEL)
            || poly.verts.iter().any(|v| v[0] * v[0] + v[1] * v[1] >= 1.0 - 1e-12)
        {
            return None;
        }
        let area = polygon_area(&poly.verts);
        if !((area - target).abs() <= 1e-7 * target) {
            return None;
        }
        let mut sides: Vec<DomainSide> = poly
            .label
            .iter()
            .map(|&id| {
                let elem = ball.elem(id as u32, words);
                let (normal, offset) = bisector(&elem.mat);
                DomainSide {
                    elem,
                    normal,
                    offset,
                    partner: usize::MAX,
                }
            })
            .collect();
        for k in 0..sides.len() {
            let inv = sides[k].elem.mat.inverse();
            let scale = 1.0 + inv.a.abs().max(inv.b.abs()).max(inv.c.abs()).max(inv.d.abs());
            let partner = (0..sides.len())
                .find(|&m| sides[m].elem.mat.psl_distance(&inv) < 1e-7 * scale * scale)?;
            sides[k].partner = partner;
        }
        let radius = poly
            .verts
            .iter()
            .map(|&v| dist(HPoint::I, HPoint::from_klein(v)))
            .fold(0.0, f64::max);
        Some(DirichletDomain {
            verts: poly.verts,
            sides,
            radius,
            area,
        })
    }

    /// Largest violation `n·k − c` over the sides, with the side index.
    fn worst_side(&self, k: K) -> (usize, f64) {
        let mut best = (0, f64::NEG_INFINITY);
        for (j, s) in self.sides.iter().enumerate() {
            let v = s.normal[0] * k[0] + s.normal[1] * k[1] - s.offset;
            if v > best.1 {
                best = (j, v);
            }
        }
        best
    }

    pub fn contains(&self, k: K, tol: f64) -> bool {
        self.worst_side(k).1 <= tol
    }

    /// Moves `z` into the domain; returns the image and the side indices
    /// whose inverses were applied, in order.
    pub fn reduce(&self, z: HPoint) -> Result<(HPoint, Vec<usize>)> {
        let mut z = z;
        let mut used = Vec::new();
        for _ in 0..100_000 {
            let (j, v) = self.worst_side(z.klein());
            if v <= 1e-12 {
                return Ok((z, used));
            }
            z = self.sides[j].elem.mat.inverse().act(z);
            used.push(j);
        }
        Err(Error::FundamentalDomain("point reduction did not terminate"))
    }

    /// Like [`Self::reduce`], also returning the element `r` with `r·z` in
    /// the domain.
    pub fn reduce_elem(&self, z: HPoint) -> Result<(HPoint, Elem)> {
        let (w, used) = self.reduce(z)?;
        let mut r = Elem::identity();
        for j in used {
            r = self.sides[j].elem.inverse().then_apply(&r);
        }
        Ok((w, r))
    }

    /// Parameters `t0 < t1` where the Klein segment `a + t(b − a)`, `t ∈ [0, 1]`,
    /// is inside the domain.
    pub fn clip_line(&self, a: K, b: K) -> Option<(f64, f64)> {
        let (mut t0, mut t1) = (0.0f64, 1.0f64);
        let d = [b[0] - a[0], b[1] - a[1]];
        for s in &self.sides {
            let den = s.normal[0] * d[0] + s.normal[1] * d[1];
            let num = s.offset - (s.normal[0] * a[0] + s.normal[1] * a[1]);
            if den.abs() < 1e-300 {
                if num < 0.0 {
                    return None;
                }
                continue;
            }
            let t = num / den;
            if den > 0.0 {
                t1 = t1.min(t);
            } else {
                t0 = t0.max(t);
            }
        }
        if t1 - t0 > 1e-15 {
            Some((t0, t1))
        } else {
            None
        }
    }

    /// Side containing the Klein segment `u → v`, if any.
    pub fn side_of_segment(&self, u: K, v: K) -> Option<usize> {
        self.sides.iter().position(|s| {
            let f = |k: K| (s.normal[0] * k[0] + s.normal[1] * k[1] - s.offset).abs();
            f(u) < 1e-10 && f(v) < 1e-10
        })
    }

    /// The first `n` points of a Halton sequence over the bounding box that
    /// fall inside the domain, starting at an offset derived from `seed`.
    pub fn samples(&self, n: usize, seed: u64) -> Vec<K> {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for v in &self.verts {
            for c in 0..2 {
                lo[c] = lo[c].min(v[c]);
                hi[c] = hi[c].max(v[c]);
            }
        }
        let halton = |mut i: u64, b: u64| {
            let (mut f, mut r) = (1.0, 0.0);
            while i > 0 {
                f /= b as f64;
                r += f * (i % b) as f64;
                i /= b;
            }
            r
        };
        let start = 1 + (seed % (1 << 24)) * 7919;
        let mut out = Vec::with_capacity(n);
        let mut i = start;
        while out.len() < n && i < start + 100 * n as u64 + 1000 {
            let k = [
                lo[0] + (hi[0] - lo[0]) * halton(i, 2),
                lo[1] + (hi[1] - lo[1]) * halton(i, 3),
            ];
            if self.contains(k, -1e-12) {
                out.push(k);
            }
            i += 1;
        }
        out
    }

    /// Normalized hyperboloid mean of the vertices.
    pub fn centroid(&self) -> HPoint {
        let mut s = [0.0; 3];
        for &v in &self.verts {
            let h = HPoint::from_klein(v).hyperboloid();
            for c in 0..3 {
                s[c] += h[c];
            }
        }
        let norm = sqrt(s[0] * s[0] - s[1] * s[1] - s[2] * s[2]);
        HPoint::from_hyperboloid([s[0] / norm, s[1] / norm, s[2] / norm])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{bolza_group, build_pants_graph, fn_to_group, FNCoordinates, GraphShape};
    use crate::Tolerances;

    #[test]
    fn bolza_domain_is_regular_octagon() {
        let d = DirichletDomain::build(&bolza_group(), 1_000_000).unwrap();
        assert_eq!(d.verts.len(), 8);
        assert!((d.area - 4.0 * PI).abs() < 1e-9);
        // circumradius of the regular octagon with angles π/4
        let t = crate::math::sin(PI / 8.0) / crate::math::cos(PI / 8.0);
        let expected = crate::math::acosh(1.0 / (t * t));
        assert!((d.radius - expected).abs() < 1e-9, "{} vs {expected}", d.radius);
        for (k, s) in d.sides.iter().enumerate() {
            assert_eq!(d.sides[s.partner].partner, k);
        }
    }

    #[test]
    fn fn_surface_domain_area() {
        let pg = build_pants_graph(3, GraphShape::Ring).unwrap();
        let fnc = FNCoordinates::new(vec![2.0, 2.5, 3.0, 2.2, 3.5, 2.8], vec![0.3, -0.4, 1.0, 0.0, 0.7, -1.1]).unwrap();
        let g = fn_to_group(&pg, &fnc, &Tolerances::default()).unwrap();
        let d = DirichletDomain::build(&g, 5_000_000).unwrap();
        assert!((d.area - 8.0 * PI).abs() < 1e-6);
    }

    #[test]
    fn reduction_lands_inside() {
        let d = DirichletDomain::build(&bolza_group(), 1_000_000).unwrap();
        let z = HPoint { x: 3.7, y: 0.02 };
        let (w, r) = d.reduce_elem(z).unwrap();
        assert!(d.contains(w.klein(), 1e-9));
        assert!(dist(r.mat.act(z), w) < 1e-8);
        assert!(r.mat.psl_distance(&bolza_group().evaluate(&r.word)) < 1e-8);
    }
}
