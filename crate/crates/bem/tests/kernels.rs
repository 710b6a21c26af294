use std::f64::consts::PI;
use surfloss_bem::mesh::*;
use surfloss_bem::*;

fn strip(a: [f64; 2], b: [f64; 2], electrode: usize) -> Element {
    Element { a, b, electrode, surface: Surface::Strip, corner: false, half_width: 0.0 }
}

fn planar(elements: Vec<Element>) -> Mesh {
    Mesh { kernel: Kernel::Planar, elements, voltages: vec![1.0, 0.0], strips: vec![] }
}

#[test]
fn planar_far_entry_is_log_kernel() {
    let rho = 7.0;
    let m = planar(vec![strip([0.0, 0.0], [1e-3, 0.0], 0), strip([rho, 0.0], [rho + 1e-3, 0.0], 1)]);
    let mat = build_matrix(&m).unwrap();
    let expect = (1.0 / rho).ln() / (2.0 * PI);
    assert!((mat.get(0, 1) / expect - 1.0).abs() < 1e-6);
    assert!((mat.get(0, 0) - (1.5 - 1e-3f64.ln()) / (2.0 * PI)).abs() < 1e-14);
}

#[test]
fn ring_and_flat_far_entries() {
    let rho = 500.0;
    let ring = Mesh {
        kernel: Kernel::Ring,
        elements: vec![
            Element { a: [0.1, 0.0], b: [0.1, 0.01], electrode: 0, surface: Surface::Lateral, corner: false, half_width: 0.0 },
            Element { a: [0.2, rho], b: [0.2, rho + 0.01], electrode: 1, surface: Surface::Lateral, corner: false, half_width: 0.0 },
        ],
        voltages: vec![0.5, -0.5],
        strips: vec![],
    };
    let m = build_matrix(&ring).unwrap();
    assert!((m.get(0, 1) * 4.0 * PI * rho - 1.0).abs() < 1e-4);

    let mut flat = ring.clone();
    flat.kernel = Kernel::FlatWire;
    for e in flat.elements.iter_mut() {
        e.a[0] = 0.0;
        e.b[0] = 0.0;
        e.half_width = 0.3;
    }
    let m = build_matrix(&flat).unwrap();
    assert!((m.get(0, 1) * 4.0 * PI * rho - 1.0).abs() < 1e-4);
}

#[test]
fn all_kernels_symmetric() {
    let g = Grading { ratio: 1.15, h_min: 0.005, h_max: 0.5 };
    let w = WireMeshSpec { r0: 0.1, slope: 0.2, d: 10.0, gap: 0.1, t: 0.1 };
    for mesh in [
        flat_coax(10.0, 1.0, 100.0, EdgeStyle::Square, &g, 100),
        ribbon(25.0, 100.0, &g, Some((110.0, 2000.0))),
        cylinder_wire(&w, &g),
        flat_wire(&w, &g),
    ] {
        let m = build_matrix(&mesh).unwrap();
        assert!(m.asymmetry() < 1e-12, "{:?}", mesh.kernel);
    }
}

#[test]
fn build_errors() {
    let e = strip([0.0, 0.0], [1.0, 0.0], 0);
    assert!(matches!(build_matrix(&planar(vec![e, e])), Err(BemError::Coincident { i: 0, j: 1 })));
    let z = strip([1.0, 0.0], [1.0, 0.0], 0);
    assert!(matches!(build_matrix(&planar(vec![e, z])), Err(BemError::Degenerate { index: 1, .. })));
    let mut f = planar(vec![strip([0.0, 0.0], [0.0, 1.0], 0)]);
    f.kernel = Kernel::FlatWire;
    assert!(matches!(build_matrix(&f), Err(BemError::Degenerate { .. })));
    let big = coax(1.0, 2.0, MAX_UNKNOWNS);
    assert!(matches!(build_matrix(&big), Err(BemError::TooLarge { .. })));
}

#[test]
fn assembly_is_deterministic() {
    let g = Grading { ratio: 1.15, h_min: 0.005, h_max: 1.0 };
    let mesh = ribbon(50.0, 100.0, &g, None);
    let a = solve_mesh(&mesh).unwrap();
    let b = solve_mesh(&mesh).unwrap();
    assert_eq!(build_matrix(&mesh).unwrap(), build_matrix(&mesh).unwrap());
    assert_eq!(a.charges, b.charges);
}
