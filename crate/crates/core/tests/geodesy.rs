use pants_core::bounds::{bavard_bound, r_g, two_asinh_one};
use pants_core::geodesy::{Side, SurfaceGeometry};
use pants_core::hyp::HPoint;
use pants_core::surface::{bolza_group, build_pants_graph, fn_to_group, CurveClass, FNCoordinates, FuchsianGroup, GraphShape};
use pants_core::{Settings, Tolerances, Word};

// 2·arccosh(1 + √2), evaluated with mpmath at 50 digits
const BOLZA_SYSTOLE: f64 = 3.057141838961996;

fn fn_group(g: u32, shape: GraphShape, lengths: Vec<f64>, twists: Vec<f64>) -> FuchsianGroup {
    let pg = build_pants_graph(g, shape).unwrap();
    fn_to_group(&pg, &FNCoordinates::new(lengths, twists).unwrap(), &Tolerances::default()).unwrap()
}

fn geo(g: &FuchsianGroup) -> SurfaceGeometry {
    SurfaceGeometry::new(g, &Settings::default()).unwrap()
}

fn edge_classes(g: &FuchsianGroup) -> Vec<CurveClass> {
    g.edge_words.iter().map(|w| CurveClass::new(g, w).unwrap()).collect()
}

#[test]
fn bolza_systole_matches_closed_form() {
    let geo = geo(&bolza_group());
    let (c, l) = geo.systole().unwrap();
    assert!((l - BOLZA_SYSTOLE).abs() < 1e-9, "{l}");
    assert!((c.length - l).abs() < 1e-12);
    let (_, l2) = geo.systole_from(2.0 * (2.0 * geo.domain_radius() + 1.0)).unwrap();
    assert!((l - l2).abs() < 1e-10);
}

#[test]
fn bolza_ball_at_center() {
    let geo = geo(&bolza_group());
    let els = geo.enumerate_ball(HPoint::I, 3.06).unwrap();
    assert!(els.iter().any(|e| (e.displacement - BOLZA_SYSTOLE).abs() < 1e-9));
    let mut words: Vec<Word> = els.iter().map(|e| e.word.clone()).collect();
    words.sort();
    words.dedup();
    assert_eq!(words.len(), els.len());
    assert!(geo.enumerate_ball(HPoint::I, 3.0).unwrap().is_empty());
}

#[test]
fn short_edge_curve_is_systolic() {
    let g = fn_group(2, GraphShape::Ring, vec![1.0, 3.2, 3.5], vec![0.4, 1.1, -0.6]);
    let (_, l) = geo(&g).systole().unwrap();
    assert!((l - 1.0).abs() < 1e-6, "{l}");
    // full twist periods leave the surface unchanged
    let h = fn_group(2, GraphShape::Ring, vec![1.0, 3.2, 3.5], vec![1.4, 1.1 + 3.2, -0.6 - 3.5]);
    let (_, lh) = geo(&h).systole().unwrap();
    assert!((l - lh).abs() < 1e-8);
}

#[test]
fn loops_respect_bavard_bound() {
    for g in [bolza_group(), fn_group(2, GraphShape::Linear, vec![2.0, 3.0, 3.9], vec![0.3, 0.0, 1.7])] {
        let geo = geo(&g);
        let bound = bavard_bound(2).unwrap();
        for k in 0..25 {
            let t = f64::from(k);
            let x = HPoint::new(0.37 * (t * 1.3).sin(), 0.4 + 0.05 * t).unwrap();
            let (c, l) = geo.shortest_loop_at(x).unwrap();
            assert!(l <= bound + 1e-9);
            assert!(c.length <= l + 1e-9);
        }
    }
}

#[test]
fn loop_on_systolic_axis() {
    let geo = geo(&bolza_group());
    let (c, l) = geo.systole().unwrap();
    let x = c.axis().project(HPoint::I);
    let (_, m) = geo.shortest_loop_at(x).unwrap();
    assert!((m - l).abs() < 1e-8);
    assert!(geo.dist_to_curve(x, &c).unwrap() < 1e-9);
}

#[test]
fn distance_radius_holds_for_long_loops() {
    let g = fn_group(2, GraphShape::Ring, vec![3.0, 3.4, 2.6], vec![0.5, -1.0, 1.2]);
    let geo = geo(&g);
    for k in 0..10 {
        let t = f64::from(k);
        let x = HPoint::new(0.2 * t - 0.9, 0.6 + 0.1 * t).unwrap();
        let (c, _) = geo.shortest_loop_at(x).unwrap();
        if c.length >= two_asinh_one() {
            assert!(geo.dist_to_curve(x, &c).unwrap() < r_g(2).unwrap());
        }
    }
}

#[test]
fn edge_curves_are_disjoint_and_simple() {
    let g = fn_group(2, GraphShape::Ring, vec![2.0, 2.5, 3.0], vec![0.3, -0.4, 1.0]);
    let geo = geo(&g);
    let cs = edge_classes(&g);
    for a in &cs {
        assert!(geo.is_simple(a).unwrap());
        for b in &cs {
            assert!(geo.disjoint(a, b).unwrap());
        }
    }
    // a gluing generator runs across the curve it glues along
    let crossing = (1..=4)
        .map(|l| CurveClass::new(&g, &Word::letter(l)).unwrap())
        .any(|c| cs.iter().any(|e| !geo.disjoint(e, &c).unwrap()));
    assert!(crossing);
}

#[test]
fn component_accounting() {
    let g = fn_group(2, GraphShape::Ring, vec![3.0, 3.0, 3.0], vec![0.0, 0.0, 0.0]);
    let geo = geo(&g);
    let cs = edge_classes(&g);
    let empty = geo.cut_set(&[]).unwrap();
    let h = geo.components(&empty).unwrap();
    assert_eq!(h.len(), 1);
    assert_eq!(h[0].euler_characteristic, -2);
    assert!(h[0].boundary.is_empty());

    let one = geo.cut_set(&cs[..1]).unwrap();
    let h = geo.components(&one).unwrap();
    assert_eq!(h.len(), 1);
    assert_eq!(h[0].sides.len(), 2);

    let full = geo.cut_set(&cs).unwrap();
    let h = geo.components(&full).unwrap();
    assert_eq!(h.len(), 2);
    assert!(h.iter().all(|p| p.is_pants && p.sides.len() == 3));
    let lefts = h.iter().flat_map(|p| &p.sides).filter(|s| s.1 == Side::Left).count();
    assert_eq!(lefts, 3);
    assert!(!geo.same_component(h[0].base_point, h[1].base_point, &full).unwrap());
    assert!(geo.same_component(h[0].base_point, h[1].base_point, &one).unwrap());
}

#[test]
fn orthogeodesic_in_symmetric_pants_is_a_seam() {
    let g = fn_group(2, GraphShape::Ring, vec![3.0, 3.0, 3.0], vec![0.0, 0.0, 0.0]);
    let geo = geo(&g);
    let full = geo.cut_set(&edge_classes(&g)).unwrap();
    let h = geo.components(&full).unwrap();
    let arc = geo.shortest_orthogeodesic(&full, &h[0]).unwrap();
    // right-angled hexagon with alternate sides 3/2: cosh c = cosh(3/2) / (cosh(3/2) − 1)
    let ch = 1.5f64.cosh();
    let seam = (ch / (ch - 1.0)).acosh();
    assert!((arc.length - seam).abs() < 1e-6, "{} vs {seam}", arc.length);
    assert_ne!(arc.from_index, arc.to_index);
}

#[test]
fn farthest_point_is_monotone_in_samples() {
    let g = fn_group(2, GraphShape::Ring, vec![3.0, 3.0, 3.0], vec![0.0, 0.0, 0.0]);
    let geo = geo(&g);
    let full = geo.cut_set(&edge_classes(&g)).unwrap();
    let h = geo.components(&full).unwrap();
    let (_, a) = geo.farthest_point(&full, &h[0], 200).unwrap();
    let (_, b) = geo.farthest_point(&full, &h[0], 400).unwrap();
    assert!(b >= a);
    assert!(b < r_g(2).unwrap());
    let empty = geo.cut_set(&[]).unwrap();
    let all = geo.components(&empty).unwrap();
    assert_eq!(geo.farthest_point(&empty, &all[0], 10).unwrap().1, f64::INFINITY);
}

#[test]
fn canonical_words_keep_the_class() {
    let g = fn_group(2, GraphShape::Ring, vec![2.4, 3.1, 2.8], vec![0.7, 1.9, 0.2]);
    let geo = geo(&g);
    let edge = &edge_classes(&g)[1];
    // conjugating by a long word leaves the class alone
    let conj = Word::new(vec![1, 2, -3, 4, 1, 1, -2]);
    let w = conj.concat(&edge.word).concat(&conj.inverse());
    let c = CurveClass::new(&g, &w).unwrap();
    let k = geo.canonical(&c).unwrap();
    assert!((k.length - edge.length).abs() < 1e-9);
    assert!(geo.same_class(&k, edge).unwrap());
    assert!(geo.is_simple(&k).unwrap());
    let twice = CurveClass::new(&g, &edge.word.pow(2)).unwrap();
    assert!(!geo.is_primitive(&twice).unwrap());
    assert!(geo.canonical(&twice).is_err());
}

#[test]
fn loops_near_the_domain_edge() {
    let g = fn_group(
        3,
        GraphShape::Linear,
        vec![2.20319133, 2.046192, 2.65139545, 2.87996755, 2.94128573, 1.91270586],
        vec![0.710405474, 0.608420754, 1.62647344, 1.85542321, 1.45425666, 0.0251643678],
    );
    let geo = geo(&g);
    let bavard = bavard_bound(3).unwrap();
    for v in geo.domain_vertices() {
        let c = geo.domain_center();
        // just inside the domain, next to a vertex
        let x = HPoint::new(c.x + 0.98 * (v.x - c.x), c.y + 0.98 * (v.y - c.y)).unwrap();
        let (_, l) = geo.shortest_loop_at(x).unwrap();
        assert!(l <= bavard);
        for letter in [1, -2, 5] {
            let y = g.generator(letter).apply(x).unwrap();
            let (_, l2) = geo.shortest_loop_at(y).unwrap();
            assert!((l - l2).abs() < 1e-6, "{l} {l2}");
        }
        let near = geo.enumerate_ball(x, l + 1e-9).unwrap();
        assert!((near[0].displacement - l).abs() < 1e-9);
    }
}
