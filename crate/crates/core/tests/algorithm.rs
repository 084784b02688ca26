use pants_core::algorithm::{decompose, preprocess_admissible, verify, PantsDecomposition, StepKind, StepRecord};
use pants_core::bounds::{bavard_bound, bers_bound, r_g, two_asinh_one};
use pants_core::geodesy::SurfaceGeometry;
use pants_core::surface::{bolza_group, build_pants_graph, fn_to_group, CurveClass, FNCoordinates, FuchsianGroup, GraphShape};
use pants_core::{Settings, Tolerances, Word};

fn fn_group(g: u32, shape: GraphShape, lengths: Vec<f64>, twists: Vec<f64>) -> FuchsianGroup {
    let pg = build_pants_graph(g, shape).unwrap();
    fn_to_group(&pg, &FNCoordinates::new(lengths, twists).unwrap(), &Tolerances::default()).unwrap()
}

fn check_trace(g: u32, trace: &[StepRecord]) {
    let rg = r_g(g).unwrap();
    assert_eq!(trace[0].kind, StepKind::Init);
    for r in trace {
        if r.kind.is_fail_safe() {
            assert!(r.boundary_len_after < r.boundary_len_before);
            assert!(r.arc_length.unwrap() < two_asinh_one());
        } else if r.kind != StepKind::Init {
            assert!(r.boundary_len_after < r.boundary_len_before + 4.0 * rg);
        }
        if r.kind == StepKind::Ms1 {
            assert!(r.new_curves[0].length < 2.0 * rg);
            assert!(r.point_distance.unwrap() > rg);
        }
        if let Some(h) = r.hexagon_length {
            assert!((h - r.new_curves[0].length).abs() < 1e-6);
        }
    }
}

fn run(g: &FuchsianGroup) -> (PantsDecomposition, Vec<StepRecord>) {
    let s = Settings::default();
    let (pd, trace) = decompose(g, &s).unwrap_or_else(|a| panic!("{a}"));
    let n = 3 * g.genus as usize - 3;
    assert_eq!(pd.curves.len(), n);
    assert_eq!(pd.pants.len(), 2 * g.genus as usize - 2);
    let mut slots = vec![0; n];
    for p in &pd.pants {
        for &c in p {
            slots[c] += 1;
        }
    }
    assert!(slots.iter().all(|&k| k == 2));
    assert!(pd.certificate.max_length <= bers_bound(g.genus).unwrap());
    let rep = verify(g, &pd, &s);
    assert!(rep.all_ok(), "{rep:?}");
    check_trace(g.genus, &trace);
    (pd, trace)
}

#[test]
fn bolza_decomposition() {
    let g = bolza_group();
    let (pd, trace) = run(&g);
    assert!(!pd.certificate.conditional);
    let first = &trace[0].new_curves[0];
    assert!(first.length <= bavard_bound(2).unwrap());
    assert!((trace[0].boundary_len_after - 2.0 * first.length).abs() < 1e-12);
}

#[test]
fn genus_two_surfaces() {
    for (l, t) in [
        (vec![3.0, 3.0, 3.0], vec![0.0, 0.0, 0.0]),
        (vec![1.9, 3.7, 2.4], vec![0.5, 2.0, -0.3]),
        (vec![3.9, 3.8, 3.95], vec![1.0, 3.0, 0.2]),
    ] {
        run(&fn_group(2, GraphShape::Ring, l, t));
    }
    run(&fn_group(2, GraphShape::Linear, vec![2.2, 3.1, 2.7], vec![0.9, 0.1, 1.5]));
}

#[test]
fn torus_case_adds_one_curve() {
    let g = fn_group(2, GraphShape::Ring, vec![3.0, 3.0, 3.0], vec![0.0, 0.0, 0.0]);
    let (_, trace) = run(&g);
    let torus: Vec<_> = trace.iter().filter(|r| r.kind == StepKind::Ms2Case2Torus).collect();
    assert!(!torus.is_empty());
    assert!(torus.iter().all(|r| r.new_curves.len() == 1));
}

#[test]
fn genus_three_ring() {
    let g = fn_group(
        3,
        GraphShape::Ring,
        vec![2.0, 2.5, 3.0, 2.2, 3.5, 2.8],
        vec![0.3, -0.4, 1.0, 0.0, 0.7, -1.1],
    );
    let (pd, _) = run(&g);
    assert_eq!(pd.curves.len(), 6);
}

#[test]
fn preprocessing_finds_short_edges() {
    let geo = SurfaceGeometry::new(&bolza_group(), &Settings::default()).unwrap();
    assert!(preprocess_admissible(&geo).unwrap().is_empty());

    let g = fn_group(2, GraphShape::Ring, vec![1.5, 3.2, 3.5], vec![0.2, 0.7, -0.4]);
    let geo = SurfaceGeometry::new(&g, &Settings::default()).unwrap();
    let cut = preprocess_admissible(&geo).unwrap();
    assert_eq!(cut.len(), 1);
    assert!((cut.curves()[0].length - 1.5).abs() < 1e-6);

    let g = fn_group(2, GraphShape::Ring, vec![1.0, 1.2, 3.4], vec![0.3, 0.1, 0.9]);
    let geo = SurfaceGeometry::new(&g, &Settings::default()).unwrap();
    let cut = preprocess_admissible(&geo).unwrap();
    let mut lens: Vec<f64> = cut.curves().iter().map(|c| c.length).collect();
    lens.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(lens.len(), 2);
    assert!((lens[0] - 1.0).abs() < 1e-6 && (lens[1] - 1.2).abs() < 1e-6);
    assert!(geo.disjoint(&cut.curves()[0], &cut.curves()[1]).unwrap());
}

#[test]
fn short_curves_make_the_certificate_conditional() {
    let g = fn_group(2, GraphShape::Ring, vec![1.0, 1.2, 3.4], vec![0.3, 0.1, 0.9]);
    let (pd, _) = run(&g);
    assert!(pd.certificate.conditional);
    for l in [1.0, 1.2] {
        assert!(pd.lengths.iter().any(|x| (x - l).abs() < 1e-6));
    }
}

#[test]
fn verify_rejects_tampering() {
    let g = bolza_group();
    let s = Settings::default();
    let (pd, _) = decompose(&g, &s).unwrap();

    let mut fewer = pd.clone();
    fewer.curves.pop();
    fewer.lengths.pop();
    assert!(!verify(&g, &fewer, &s).curve_count_ok);

    let geo = SurfaceGeometry::new(&g, &s).unwrap();
    let crossing = (1..=4)
        .map(|l| CurveClass::new(&g, &Word::letter(l)).unwrap())
        .find(|c| !geo.disjoint(c, &pd.curves[0]).unwrap())
        .expect("some generator crosses the first curve");
    let mut swapped = pd.clone();
    swapped.curves[1] = crossing;
    let rep = verify(&g, &swapped, &s);
    assert!(!rep.disjoint_ok && !rep.all_ok());

    let mut wrong_genus = pd;
    wrong_genus.genus = 3;
    assert!(!verify(&g, &wrong_genus, &s).all_ok());
}
