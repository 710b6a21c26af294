use surfloss_core::analytic::{self, ribbon_self_capacitance_participation, AnalyticOptions};
use surfloss_core::structure::*;
use surfloss_core::*;

const UM: f64 = 1e-6;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn l100() -> Length {
    capacitance_to_length(Capacitance::from_ff(100.0))
}

fn row(spec: StructureSpec) -> ParticipationBreakdown {
    analytic::evaluate(&spec, &DielectricStack::default(), l100(), &AnalyticOptions::default()).unwrap()
}

#[test]
fn parallel_plate_row() {
    let p = row(StructureSpec::ParallelPlate(ParallelPlate { s: 5.0 * UM, w: 100.0 * UM, length: 1130.0 * UM }));
    assert!(rel(p.p_ma, 8.16e-5) < 0.01, "{}", p.p_ma);
    assert_eq!((p.p_ms, p.p_sa), (0.0, 0.0));
}

#[test]
fn ribbon_and_coplanar_rows() {
    let r = row(StructureSpec::Ribbon(Ribbon { a: 50.0 * UM, b: 100.0 * UM, length: 1391.0 * UM, t: 0.1 * UM }));
    for (got, want) in [(r.p_ma, 1.04e-6), (r.p_ms, 1.42e-4), (r.p_sa, 2.74e-5)] {
        assert!(rel(got, want) < 0.01, "{got} vs {want}");
    }
    let c = row(StructureSpec::Coplanar(Coplanar {
        a: 50.0 * UM,
        b: 100.0 * UM,
        length: 1138.0 * UM,
        t: 0.1 * UM,
        single_ended: false,
    }));
    // the coplanar length is rounded to the micron, so equality is to that level
    for (x, y) in [(c.p_ma, r.p_ma), (c.p_ms, r.p_ms), (c.p_sa, r.p_sa)] {
        assert!(rel(x, y) < 1e-3, "{x} vs {y}");
    }
}

#[test]
fn wire_rows() {
    let s = row(StructureSpec::StraightWire(StraightWire { r: 0.1 * UM, d: 50.0 * UM, t: 0.1 * UM }));
    for (got, want) in [(s.p_ma, 7.47e-7), (s.p_ms, 1.02e-4), (s.p_sa, 1.30e-5)] {
        assert!(rel(got, want) < 0.01, "{got} vs {want}");
    }
    let t = row(StructureSpec::TaperedWire(TaperedWire { r0: 0.1 * UM, slope: 0.4, d: 50.0 * UM, t: 0.1 * UM }));
    for (got, want) in [(t.p_ma, 4.21e-7), (t.p_ms, 5.76e-5), (t.p_sa, 9.47e-6)] {
        assert!(rel(got, want) < 0.01, "{got} vs {want}");
    }
}

#[test]
fn length_anchors() {
    assert!(rel(l100().mm(), 11.3) < 0.005);
    let eps = DielectricStack::default().eps_s;
    let specs = [
        StructureSpec::ParallelPlate(ParallelPlate { s: 5.0 * UM, w: 100.0 * UM, length: 1130.0 * UM }),
        StructureSpec::Ribbon(Ribbon { a: 50.0 * UM, b: 100.0 * UM, length: 1391.0 * UM, t: 0.1 * UM }),
        StructureSpec::Coplanar(Coplanar { a: 50.0 * UM, b: 100.0 * UM, length: 1138.0 * UM, t: 0.1 * UM, single_ended: false }),
    ];
    for s in specs {
        let c = analytic::capacitance(&s, eps).unwrap();
        assert!(rel(c.ff(), 100.0) < 0.005, "{:?}: {}", s.kind(), c.ff());
    }
}

#[test]
fn narrow_ribbon_losses() {
    let r = Ribbon { a: 2.5 * UM, b: 4.5 * UM, length: 1.0, t: 0.1 * UM };
    let stack = DielectricStack::uniform_ten();
    let p = ribbon_self_capacitance_participation(&r, &stack, &AnalyticOptions::default()).unwrap();
    let (ma, ms, sa) = (p.p_ma * stack.tan_ma * 1e6, p.p_ms * stack.tan_ms * 1e6, p.p_sa * stack.tan_sa * 1e6);
    assert!(rel(ma, 0.060) < 0.02, "{ma}");
    assert!(rel(ms, 5.93) < 0.02, "{ms}");
    assert!(rel(sa, 3.57) < 0.02, "{sa}");
    let split = AnalyticOptions { mode: CornerMode::SideSplit, ..Default::default() };
    let q = ribbon_self_capacitance_participation(&r, &stack, &split).unwrap();
    assert!(rel(q.p_ma * stack.tan_ma * 1e6, 0.077) < 0.02, "{}", q.p_ma * stack.tan_ma * 1e6);
}

#[test]
fn narrow_ribbon_independent_of_length() {
    let stack = DielectricStack::uniform_ten();
    let o = AnalyticOptions::default();
    let a = ribbon_self_capacitance_participation(&Ribbon { a: 2.5 * UM, b: 4.5 * UM, length: 1.0, t: 0.1 * UM }, &stack, &o).unwrap();
    let b = ribbon_self_capacitance_participation(&Ribbon { a: 2.5 * UM, b: 4.5 * UM, length: 3e-4, t: 0.1 * UM }, &stack, &o).unwrap();
    assert!(rel(a.p_ms, b.p_ms) < 1e-12);
}

#[test]
fn self_capacitance_matches_full_normalisation() {
    // p(C_r) equals the ribbon participation evaluated at L = C_r/ε0
    let stack = DielectricStack::uniform_ten();
    let r = Ribbon { a: 2.5 * UM, b: 4.5 * UM, length: 500.0 * UM, t: 0.1 * UM };
    let o = AnalyticOptions::default();
    let c = analytic::capacitance(&StructureSpec::Ribbon(r), stack.eps_s).unwrap();
    let full = analytic::evaluate(&StructureSpec::Ribbon(r), &stack, capacitance_to_length(c), &o).unwrap();
    let selfp = ribbon_self_capacitance_participation(&r, &stack, &o).unwrap();
    for (x, y) in [(full.p_ma, selfp.p_ma), (full.p_ms, selfp.p_ms), (full.p_sa, selfp.p_sa)] {
        assert!(rel(x, y) < 1e-12, "{x} vs {y}");
    }
}
