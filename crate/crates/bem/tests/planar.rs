use std::f64::consts::PI;
use surfloss_bem::field::{field_at, metal_energy, strip_energies, surface_field};
use surfloss_bem::mesh::*;
use surfloss_bem::suites::{flat_coax_checks, ribbon_ground_point};
use surfloss_bem::*;
use surfloss_core::special::ck_ratio;
use surfloss_core::structure::RibbonWithGround;

#[test]
fn coax_capacitance() {
    let s = solve_mesh(&coax(10.0, 100.0, 1000)).unwrap();
    let exact = 2.0 * PI / 10f64.ln();
    assert!((s.capacitance / exact - 1.0).abs() < 0.005);
    assert!(s.residual < 1e-10);
}

#[test]
fn coax_field_between_conductors() {
    // E = λ/(2π r) with λ = C V
    let mesh = coax(1.0, 4.0, 400);
    let s = solve_mesh(&mesh).unwrap();
    for r in [1.5, 2.0, 3.0] {
        let f = field_at(&mesh, &s, [r * 0.6, r * 0.8]);
        let e = f[0].hypot(f[1]);
        assert!((e / (s.capacitance / (2.0 * PI * r)) - 1.0).abs() < 1e-3, "{r}");
    }
}

#[test]
fn thin_ribbon_capacitance_and_antisymmetry() {
    let g = Grading::for_film(0.1, 50.0, 1.0);
    let mesh = ribbon(50.0, 100.0, &g, None);
    let s = solve_mesh(&mesh).unwrap();
    assert!((s.capacitance * ck_ratio(0.5).unwrap() - 1.0).abs() < 0.01);
    assert!(s.net_charge_ratio() < 1e-9);
    let n = mesh.len() / 2;
    for i in 0..n {
        assert!((s.charges[i] + s.charges[n + i]).abs() <= 1e-9 * s.charges[i].abs());
    }
    let q0 = s.electrode_charge(&mesh, 0);
    assert!((q0 / s.capacitance - 1.0).abs() < 1e-12);
}

#[test]
fn flat_coax_field_and_energy() {
    for c in flat_coax_checks(1.0).unwrap() {
        assert!(c.pass, "{c:?}");
    }
}

#[test]
fn rounded_edge_has_less_energy() {
    let g = Grading { ratio: 1.15, h_min: 0.001, h_max: 0.02 };
    let energy = |edge| {
        let m = flat_coax(1.0, 0.1, 10.0, edge, &g, 400);
        let s = solve_mesh(&m).unwrap();
        metal_energy(&m, &s, &[0], 0.0)
    };
    assert!(energy(EdgeStyle::Semicircular) < energy(EdgeStyle::Square));
}

#[test]
fn ribbon_mesh_doubling() {
    let coarse = ribbon_ground_point(50.0, 100.0, None, 1.0).unwrap();
    let fine = ribbon_ground_point(50.0, 100.0, None, 2.0).unwrap();
    for (a, b) in [(coarse.capacitance, fine.capacitance), (coarse.u_metal, fine.u_metal), (coarse.u_substrate, fine.u_substrate)] {
        assert!((a / b - 1.0).abs() < 0.005, "{a} {b}");
    }
}

#[test]
fn ground_capacitance_falls_toward_ribbon() {
    let (a, b) = (25.0, 100.0);
    let cr = 1.0 / ck_ratio(a / b).unwrap();
    let caps: Vec<f64> = [0.1, 0.2, 0.5, 1.0, 2.0, 3.0]
        .iter()
        .map(|f| ribbon_ground_point(a, b, Some(b * (1.0 + f)), 1.0).unwrap().capacitance)
        .collect();
    assert!(caps.windows(2).all(|w| w[1] < w[0]), "{caps:?}");
    assert!(caps[caps.len() - 1] > cr);
    // fit shape: C_rg/C_r = [1 − (x_e/c)²]^−0.23
    let g = RibbonWithGround { a, b, c: 2.0 * b, length: 1.0, t: 0.1 };
    let fit = surfloss_core::analytic::ground::capacitance(&g, 1.0).unwrap().0 / surfloss_core::EPS0;
    assert!((caps[3] / fit - 1.0).abs() < 0.01);
}

#[test]
fn strip_field_is_half_density() {
    let g = Grading::for_film(0.1, 50.0, 1.0);
    let mesh = ribbon(50.0, 100.0, &g, None);
    let s = solve_mesh(&mesh).unwrap();
    let i = mesh.len() / 4;
    let e = &mesh.elements[i];
    assert!((surface_field(&mesh, &s, i) - 0.5 * s.charges[i].abs() / e.width()).abs() < 1e-15);
    let en = strip_energies(&mesh, &s, 0.05, &[], 0);
    assert!(en.warning().is_none(), "{}", en.estimated_error);
    let coarse = ribbon(50.0, 100.0, &Grading { ratio: 1.15, h_min: 2.0, h_max: 5.0 }, None);
    let s = solve_mesh(&coarse).unwrap();
    assert!(strip_energies(&coarse, &s, 0.05, &[], 0).warning().is_some());
}
