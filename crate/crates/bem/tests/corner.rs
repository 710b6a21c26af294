use surfloss_bem::*;

#[test]
fn square_edge_constants() {
    let t = [0.02, 0.1, 0.5];
    let sq = corner_constant_curve(EdgeStyle::Square, &t, &CornerOptions::default()).unwrap();
    let semi = corner_constant_curve(EdgeStyle::Semicircular, &t, &CornerOptions::default()).unwrap();
    for (s, c) in sq.iter().zip(&semi) {
        assert!((s.c_m - 5.0).abs() <= 0.5, "{s:?}");
        assert!((s.c_s - 1.6).abs() <= 0.3, "{s:?}");
        assert!(c.c_m < s.c_m);
        assert!(s.unknowns <= 10_000);
    }
    // slowly varying
    let spread = sq.iter().map(|c| c.c_m).fold(f64::NEG_INFINITY, f64::max)
        - sq.iter().map(|c| c.c_m).fold(f64::INFINITY, f64::min);
    assert!(spread < 0.2);
}

#[test]
fn corner_constant_converges() {
    let a = extract_corner_constant(EdgeStyle::Square, 0.1, &CornerOptions::default()).unwrap();
    let b = extract_corner_constant(EdgeStyle::Square, 0.1, &CornerOptions { mesh_scale: 2.0, ..Default::default() })
        .unwrap();
    // relative to the full bracket ln(4r̄/t) + c
    let lg = 40f64.ln();
    assert!(((a.c_m + lg) / (b.c_m + lg) - 1.0).abs() < 0.005, "{} {}", a.c_m, b.c_m);
    assert!(((a.c_s + lg) / (b.c_s + lg) - 1.0).abs() < 0.005, "{} {}", a.c_s, b.c_s);
}

#[test]
fn rejects_bad_thickness() {
    assert!(extract_corner_constant(EdgeStyle::Square, 1.5, &CornerOptions::default()).is_err());
}
