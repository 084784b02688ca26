//! The cutting procedure.
//!
//! Starting from the shortest loop at a base point, curves are added one at a
//! time until the cut surface is a union of `2g − 2` pants:
//!
//! - Step 1 picks a point of the cut surface farther than `R_g` from the
//!   boundary and adds the geodesic of the shortest loop there.
//! - Step 2 takes the shortest orthogeodesic `c` between boundary curves and
//!   adds the remaining boundary curves of the pants spanned by `c` and the
//!   curves it joins.
//! - When the total boundary length reaches `4π(g−1)`, the fail-safe step does
//!   the same with an arc shorter than `2 arcsinh 1`, which shrinks the
//!   boundary.
//!
//! Pants components are retired as soon as they appear.

use alloc::vec::Vec;

use crate::bounds::{bers_bound, hexagon_third_side, r_g, two_asinh_one};
use crate::config::Settings;
use crate::error::{Error, Result};
use crate::geodesy::{CutSet, OrthoArc, SubsurfaceHandle, SurfaceGeometry};
use crate::hyp::HPoint;
use crate::math::{asinh, cosh, sinh, PI};
use crate::surface::{CurveClass, FuchsianGroup};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    Init,
    Ms1,
    Ms2Case1,
    Ms2Case2Split,
    Ms2Case2Torus,
    FailSafeCase1,
    FailSafeCase2,
}

impl StepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StepKind::Init => "INIT",
            StepKind::Ms1 => "MS1",
            StepKind::Ms2Case1 => "MS2_CASE1",
            StepKind::Ms2Case2Split => "MS2_CASE2_SPLIT",
            StepKind::Ms2Case2Torus => "MS2_CASE2_TORUS",
            StepKind::FailSafeCase1 => "FAILSAFE_CASE1",
            StepKind::FailSafeCase2 => "FAILSAFE_CASE2",
        }
    }

    pub fn is_fail_safe(self) -> bool {
        matches!(self, StepKind::FailSafeCase1 | StepKind::FailSafeCase2)
    }
}

/// One step of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub kind: StepKind,
    pub new_curves: Vec<CurveClass>,
    pub boundary_len_before: f64,
    pub boundary_len_after: f64,
    /// Base point of the loop (INIT, MS1).
    pub point: Option<HPoint>,
    /// Distance from `point` to the boundary (MS1).
    pub point_distance: Option<f64>,
    pub loop_length: Option<f64>,
    pub arc_length: Option<f64>,
    /// Lengths of the boundary curves the arc joins (Step 2, fail-safe).
    pub arc_ends: Option<(f64, f64)>,
    /// Third side predicted by the hexagon relation (Case 1).
    pub hexagon_length: Option<f64>,
}

impl StepRecord {
    fn new(kind: StepKind) -> Self {
        Self {
            kind,
            new_curves: Vec::new(),
            boundary_len_before: 0.0,
            boundary_len_after: 0.0,
            point: None,
            point_distance: None,
            loop_length: None,
            arc_length: None,
            arc_ends: None,
            hexagon_length: None,
        }
    }
}

/// Bound check attached to a decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certificate {
    pub bers_bound: f64,
    pub max_length: f64,
    /// Set when the surface has closed geodesics shorter than `2 arcsinh 1`;
    /// the bound is then only proven for a deformed surface.
    pub conditional: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PantsDecomposition {
    pub genus: u32,
    pub curves: Vec<CurveClass>,
    /// Boundary curve indices of each pants; a curve bounding the same pants
    /// on both sides appears twice.
    pub pants: Vec<[usize; 3]>,
    pub lengths: Vec<f64>,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerificationReport {
    pub curve_count_ok: bool,
    pub disjoint_ok: bool,
    pub euler_ok: bool,
    pub bound_ok: bool,
    pub admissible_ok: bool,
    pub max_length: f64,
    pub bers_bound: f64,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.curve_count_ok && self.disjoint_ok && self.euler_ok && self.bound_ok && self.admissible_ok
    }
}

/// A run that stopped on a hard error, with the steps completed so far.
#[derive(Debug, Clone, PartialEq)]
pub struct Aborted {
    pub error: Error,
    pub trace: Vec<StepRecord>,
}

impl core::fmt::Display for Aborted {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{} (after {} steps)", self.error, self.trace.len())
    }
}

pub enum Ms1Outcome {
    CurveAdded(StepRecord),
    NoPointFound,
}

/// All distinct primitive classes of length at most `2 arcsinh 1`, checked
/// to be simple and pairwise disjoint.
pub fn preprocess_admissible(geo: &SurfaceGeometry) -> Result<CutSet> {
    let short = geo.short_classes(two_asinh_one())?;
    for (k, a) in short.iter().enumerate() {
        if !geo.is_simple(a)? {
            return Err(Error::Invariant("short geodesic is not simple"));
        }
        for b in &short[..k] {
            if !geo.disjoint(a, b)? {
                return Err(Error::Invariant("short geodesics intersect"));
            }
        }
    }
    geo.cut_set(&short)
}

fn pants_record(h: &SubsurfaceHandle) -> [usize; 3] {
    let mut r = [h.sides[0].0, h.sides[1].0, h.sides[2].0];
    r.sort_unstable();
    r
}

/// State of a run: the cut set, the components that are not yet pants, the
/// retired pants, and the step log.
pub struct AlgoState<'a> {
    pub geometry: &'a SurfaceGeometry,
    pub cut: CutSet,
    pub handles: Vec<SubsurfaceHandle>,
    pub retired_pants: Vec<[usize; 3]>,
    pub trace: Vec<StepRecord>,
    pub preprocessed: usize,
}

impl<'a> AlgoState<'a> {
    fn genus(&self) -> u32 {
        self.geometry.group().genus
    }

    /// Total boundary length of the components that are not pants.
    pub fn boundary_length(&self) -> f64 {
        self.handles.iter().map(SubsurfaceHandle::boundary_length).sum()
    }

    pub fn is_complete(&self) -> bool {
        self.cut.len() == 3 * self.genus() as usize - 3
    }

    fn refresh(&mut self) -> Result<()> {
        let comps = self.geometry.components(&self.cut)?;
        let (pants, rest): (Vec<_>, Vec<_>) = comps.into_iter().partition(|h| h.is_pants);
        self.retired_pants = pants.iter().map(pants_record).collect();
        self.handles = rest;
        Ok(())
    }

    /// Adds the curves not already cut, refreshes the components and fills in
    /// the boundary lengths of `rec`.
    fn cut_along(&mut self, curves: &[CurveClass], mut rec: StepRecord) -> Result<StepRecord> {
        let geo = self.geometry;
        let bound = bers_bound(self.genus())?;
        rec.boundary_len_before = self.boundary_length();
        let mut cut = self.cut.clone();
        for c in curves {
            let c = &geo.canonical(c)?;
            if geo.in_cut(&cut, c)?.is_some() {
                continue;
            }
            if !(c.length < bound) {
                return Err(Error::Invariant("new curve exceeds the length bound"));
            }
            if !geo.is_simple(c)? {
                return Err(Error::Invariant("new curve is not simple"));
            }
            if geo.crosses_cut(&cut, c)? {
                return Err(Error::Invariant("new curve crosses the cut"));
            }
            cut = geo.extend_cut(&cut, c)?;
            rec.new_curves.push(c.clone());
        }
        if rec.new_curves.is_empty() {
            return Err(Error::Invariant("step produced no new curve"));
        }
        self.cut = cut;
        self.refresh()?;
        rec.boundary_len_after = self.boundary_length();
        self.trace.push(rec.clone());
        Ok(rec)
    }

    /// Cuts along the admissible short curves and the geodesic of the
    /// shortest loop at the base point.
    pub fn initialize(geo: &'a SurfaceGeometry) -> Result<Self> {
        let pre = preprocess_admissible(geo)?;
        let x1 = geo.base_point()?;
        let (gamma, loop_len) = geo.shortest_loop_at(x1)?;
        let empty = geo.cut_set(&[])?;
        let handles = geo.components(&empty)?;
        let mut st = AlgoState {
            geometry: geo,
            cut: empty,
            handles,
            retired_pants: Vec::new(),
            trace: Vec::new(),
            preprocessed: pre.len(),
        };
        let mut curves = pre.curves().to_vec();
        curves.push(gamma);
        let mut rec = StepRecord::new(StepKind::Init);
        rec.point = Some(x1);
        rec.loop_length = Some(loop_len);
        st.cut_along(&curves, rec)?;
        Ok(st)
    }

    /// Adds the shortest loop at a sampled point farther than `R_g` from the
    /// boundary, if there is one.
    pub fn main_step_1(&mut self) -> Result<Ms1Outcome> {
        let geo = self.geometry;
        let rg = r_g(self.genus())?;
        let comps = geo.components(&self.cut)?;
        let far = geo.farthest_points(&self.cut, geo.settings().samples)?;
        let mut best: Option<(HPoint, f64)> = None;
        for (h, f) in comps.iter().zip(&far) {
            if h.is_pants {
                continue;
            }
            if let Some((x, d)) = *f {
                if d > rg && best.is_none_or(|(_, b)| d > b) {
                    best = Some((x, d));
                }
            }
        }
        let Some((x, d)) = best else {
            return Ok(Ms1Outcome::NoPointFound);
        };
        let (c, loop_len) = geo.shortest_loop_at(x)?;
        if geo.in_cut(&self.cut, &c)?.is_some() {
            return Err(Error::Invariant("loop at a far point is homotopic to a boundary curve"));
        }
        if !(c.length < 2.0 * rg) {
            return Err(Error::Invariant("Step 1 curve is not shorter than 2·R_g"));
        }
        let mut rec = StepRecord::new(StepKind::Ms1);
        rec.point = Some(x);
        rec.point_distance = Some(d);
        rec.loop_length = Some(loop_len);
        Ok(Ms1Outcome::CurveAdded(self.cut_along(&[c], rec)?))
    }

    /// Globally shortest orthogeodesic over the components that are not pants.
    fn shortest_arc(&self) -> Result<OrthoArc> {
        let mut best: Option<OrthoArc> = None;
        for h in &self.handles {
            if h.sides.is_empty() {
                continue;
            }
            let arc = self.geometry.shortest_orthogeodesic(&self.cut, h)?;
            if best.as_ref().is_none_or(|b| arc.length < b.length) {
                best = Some(arc);
            }
        }
        best.ok_or(Error::Invariant("no component with boundary"))
    }

    fn arc_step(&mut self, fail_safe: bool) -> Result<StepRecord> {
        let geo = self.geometry;
        let group = geo.group();
        let arc = self.shortest_arc()?;
        if fail_safe && !(arc.length < two_asinh_one()) {
            return Err(Error::Invariant("fail-safe arc is not shorter than 2 arcsinh 1"));
        }
        let same_side = arc.from_index == arc.to_index && arc.from_side == arc.to_side;
        let (l1, l2) = (arc.from_curve.length, arc.to_curve.length);
        let x = arc.from_lift_word();
        let mut rec;
        let curves;
        if !same_side {
            // two boundary sides: the third boundary of the pants is the
            // shorter of XY and XY⁻¹
            let y = arc.to_lift_word();
            let a = CurveClass::new(group, &x.concat(&y))?;
            let b = CurveClass::new(group, &x.concat(&y.inverse()))?;
            let new = geo.canonical(if a.length <= b.length { &a } else { &b })?;
            let hex = hexagon_third_side(l1, l2, arc.length)?;
            if (new.length - hex).abs() > 1e-6 * hex.max(1.0) {
                return Err(Error::Invariant("hexagon relation disagrees with holonomy"));
            }
            if fail_safe && !(new.length < l1 + l2) {
                return Err(Error::Invariant("fail-safe curve is not shorter than the arc ends"));
            }
            rec = StepRecord::new(if fail_safe { StepKind::FailSafeCase1 } else { StepKind::Ms2Case1 });
            rec.hexagon_length = Some(hex);
            curves = alloc::vec![new];
        } else {
            // one boundary side: the arc splits it into two pieces, each
            // closing up with the arc into a boundary curve w·X^k
            let w = arc.witness_word();
            let cands: Vec<(i32, CurveClass)> = (-4..=4)
                .map(|k| Ok((k, CurveClass::new(group, &w.concat(&x.pow(k)))?)))
                .collect::<Result<_>>()?;
            let (i0, _) = cands
                .iter()
                .enumerate()
                .min_by(|a, b| a.1 .1.length.partial_cmp(&b.1 .1.length).unwrap())
                .unwrap();
            if i0 == 0 || i0 == cands.len() - 1 {
                return Err(Error::Invariant("pants curves not bracketed by the power search"));
            }
            let i1 = if cands[i0 - 1].1.length <= cands[i0 + 1].1.length { i0 - 1 } else { i0 + 1 };
            let (p, q) = (geo.canonical(&cands[i0].1)?, geo.canonical(&cands[i1].1)?);
            // right-angled pentagons: cosh(ℓ̃/2) = sinh(c/2)·sinh(s/2), with
            // the two pieces s summing to the boundary length
            let piece = |c: &CurveClass| 2.0 * asinh(cosh(c.length / 2.0) / sinh(arc.length / 2.0));
            if (piece(&p) + piece(&q) - l1).abs() > 1e-6 * l1.max(1.0) {
                return Err(Error::Invariant("pentagon relation disagrees with holonomy"));
            }
            let torus = geo.same_class(&p, &q)?;
            rec = StepRecord::new(match (fail_safe, torus) {
                (true, _) => StepKind::FailSafeCase2,
                (false, true) => StepKind::Ms2Case2Torus,
                (false, false) => StepKind::Ms2Case2Split,
            });
            curves = if torus { alloc::vec![p] } else { alloc::vec![p, q] };
        }
        rec.arc_length = Some(arc.length);
        rec.arc_ends = Some((l1, l2));
        let rec = self.cut_along(&curves, rec)?;
        if fail_safe && !(rec.boundary_len_after < rec.boundary_len_before) {
            return Err(Error::Invariant("fail-safe step did not shorten the boundary"));
        }
        Ok(rec)
    }

    /// Step 2: cut along the pants spanned by the shortest orthogeodesic.
    pub fn main_step_2(&mut self) -> Result<StepRecord> {
        self.arc_step(false)
    }

    /// The boundary-shortening step used once `ℓ(∂S) ≥ 4π(g−1)`.
    pub fn fail_safe_step(&mut self) -> Result<StepRecord> {
        let g = self.genus();
        if !(self.boundary_length() < 4.0 * PI * f64::from(g - 1) + 4.0 * r_g(g)?) {
            return Err(Error::Invariant("boundary grew by more than 4·R_g"));
        }
        self.arc_step(true)
    }

    fn run(&mut self) -> Result<()> {
        let g = self.genus();
        let guard = 4.0 * PI * f64::from(g - 1);
        let max_steps = 10 * (3 * g as usize - 3);
        while !self.is_complete() {
            if self.trace.len() > max_steps {
                return Err(Error::Invariant("step budget exhausted"));
            }
            if self.handles.is_empty() {
                return Err(Error::Invariant("no components left before 3g−3 curves"));
            }
            if self.boundary_length() >= guard {
                self.fail_safe_step()?;
                continue;
            }
            if let Ms1Outcome::NoPointFound = self.main_step_1()? {
                self.main_step_2()?;
            }
        }
        if !self.handles.is_empty() || self.retired_pants.len() != 2 * g as usize - 2 {
            return Err(Error::Invariant("final components are not all pants"));
        }
        Ok(())
    }

    fn finish(&self) -> Result<PantsDecomposition> {
        let g = self.genus();
        let curves = self.cut.curves().to_vec();
        let lengths: Vec<f64> = curves.iter().map(|c| c.length).collect();
        let max_length = lengths.iter().copied().fold(0.0, f64::max);
        let bers = bers_bound(g)?;
        if !(max_length <= bers) {
            return Err(Error::Invariant("decomposition exceeds the length bound"));
        }
        Ok(PantsDecomposition {
            genus: g,
            curves,
            pants: self.retired_pants.clone(),
            lengths,
            certificate: Certificate {
                bers_bound: bers,
                max_length,
                conditional: self.preprocessed > 0,
            },
        })
    }
}

/// Runs the procedure to completion.
pub fn decompose(
    group: &FuchsianGroup,
    settings: &Settings,
) -> core::result::Result<(PantsDecomposition, Vec<StepRecord>), Aborted> {
    let abort = |error: Error, trace: Vec<StepRecord>| Aborted { error, trace };
    let geo = SurfaceGeometry::new(group, settings).map_err(|e| abort(e, Vec::new()))?;
    decompose_with(&geo)
}

/// [`decompose`] on a prepared geometry.
pub fn decompose_with(geo: &SurfaceGeometry) -> core::result::Result<(PantsDecomposition, Vec<StepRecord>), Aborted> {
    let abort = |error: Error, trace: Vec<StepRecord>| Aborted { error, trace };
    let mut st = AlgoState::initialize(geo).map_err(|e| abort(e, Vec::new()))?;
    if let Err(e) = st.run() {
        return Err(abort(e, st.trace));
    }
    match st.finish() {
        Ok(pd) => Ok((pd, st.trace)),
        Err(e) => Err(abort(e, st.trace)),
    }
}

/// Rechecks a decomposition from its words alone.
pub fn verify(group: &FuchsianGroup, pd: &PantsDecomposition, settings: &Settings) -> VerificationReport {
    let g = group.genus;
    let bers = bers_bound(g).unwrap_or(f64::NAN);
    let mut report = VerificationReport {
        curve_count_ok: false,
        disjoint_ok: false,
        euler_ok: false,
        bound_ok: false,
        admissible_ok: false,
        max_length: f64::NAN,
        bers_bound: bers,
    };
    if pd.genus != g {
        return report;
    }
    let words: Vec<Word> = pd.curves.iter().map(|c| c.word.clone()).collect();
    let Ok(curves) = words.iter().map(|w| CurveClass::new(group, w)).collect::<Result<Vec<_>>>() else {
        return report;
    };
    report.curve_count_ok = curves.len() == 3 * g as usize - 3;
    report.max_length = curves.iter().map(|c| c.length).fold(0.0, f64::max);
    report.bound_ok = report.max_length <= bers;
    let Ok(geo) = SurfaceGeometry::new(group, settings) else {
        return report;
    };
    let disjoint = || -> Result<bool> {
        for (k, a) in curves.iter().enumerate() {
            if !geo.is_primitive(a)? || !geo.is_simple(a)? {
                return Ok(false);
            }
            for b in &curves[..k] {
                if geo.same_class(a, b)? || !geo.disjoint(a, b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    report.disjoint_ok = disjoint().unwrap_or(false);
    if report.disjoint_ok {
        let euler = || -> Result<bool> {
            let cut = geo.cut_set(&curves)?;
            let comps = geo.components(&cut)?;
            let chi: i32 = comps.iter().map(|h| h.euler_characteristic).sum();
            let mut found: Vec<[usize; 3]> = comps
                .iter()
                .filter(|h| h.is_pants)
                .map(pants_record)
                .collect();
            let mut claimed = pd.pants.clone();
            for p in &mut claimed {
                p.sort_unstable();
            }
            found.sort_unstable();
            claimed.sort_unstable();
            Ok(comps.iter().all(|h| h.is_pants)
                && comps.len() == 2 * g as usize - 2
                && chi == 2 - 2 * g as i32
                && found == claimed)
        };
        report.euler_ok = euler().unwrap_or(false);
    }
    let admissible = || -> Result<bool> {
        for s in geo.short_classes(two_asinh_one())? {
            let mut hit = false;
            for c in &curves {
                if geo.same_class(c, &s)? {
                    hit = true;
                    break;
                }
            }
            if !hit {
                return Ok(false);
            }
        }
        Ok(true)
    };
    report.admissible_ok = admissible().unwrap_or(false);
    report
}
