use surfloss_core::analytic::{self, AnalyticOptions};
use surfloss_core::structure::*;
use surfloss_core::*;

const UM: f64 = 1e-6;

fn ribbon() -> StructureSpec {
    StructureSpec::Ribbon(Ribbon { a: 50.0 * UM, b: 100.0 * UM, length: 1391.0 * UM, t: 0.1 * UM })
}

fn wire() -> StructureSpec {
    StructureSpec::StraightWire(StraightWire { r: 0.1 * UM, d: 50.0 * UM, t: 0.1 * UM })
}

#[test]
fn singleton_equals_standalone() {
    let s = DielectricStack::default();
    let d = assemble_design(&[ribbon()], &s, &AssemblyOptions::default()).unwrap();
    let c = analytic::capacitance(&ribbon(), s.eps_s).unwrap();
    let p = analytic::evaluate(&ribbon(), &s, capacitance_to_length(c), &AnalyticOptions::default()).unwrap();
    assert_eq!(d.breakdowns[0], p);
    assert_eq!(d.length, capacitance_to_length(d.capacitance));
}

#[test]
fn wire_capacitance_rescales_everything() {
    let s = DielectricStack::default();
    let alone = assemble_design(&[ribbon()], &s, &AssemblyOptions::default()).unwrap();
    let d = assemble_design(&[ribbon(), wire()], &s, &AssemblyOptions::default()).unwrap();
    // C_sw = 4.1 (ε_s+1)/2 ε0 d / ln(d/r̄)
    let c_sw = 4.1 * 6.35 * EPS0 * 50e-6 / (500f64).ln();
    assert!(((d.capacitance.0 - alone.capacitance.0) / c_sw - 1.0).abs() < 1e-12);
    let f = alone.length.0 / d.length.0;
    assert!((d.breakdowns[0].p_ms / (alone.breakdowns[0].p_ms * f) - 1.0).abs() < 1e-12);

    let fixed = AssemblyOptions { normalization: Normalization::Sum { include_wires: false }, ..Default::default() };
    let e = assemble_design(&[ribbon(), wire()], &s, &fixed).unwrap();
    assert_eq!(e.capacitance, alone.capacitance);
}

#[test]
fn loss_adds_over_structures() {
    let s = DielectricStack::default();
    let parts = [
        ribbon(),
        StructureSpec::Coplanar(Coplanar { a: 20.0 * UM, b: 40.0 * UM, length: 300.0 * UM, t: 0.1 * UM, single_ended: true }),
        StructureSpec::TaperedWire(TaperedWire { r0: 0.1 * UM, slope: 0.4, d: 50.0 * UM, t: 0.1 * UM }),
    ];
    let d = assemble_design(&parts, &s, &AssemblyOptions::default()).unwrap();
    let sum: f64 = parts
        .iter()
        .map(|p| analytic::evaluate(p, &s, d.length, &AnalyticOptions::default()).unwrap().loss(&s))
        .sum();
    assert!((d.total_loss / sum - 1.0).abs() < 1e-14);
    let (ma, ms, sa) = d.totals();
    assert!((ma * s.tan_ma + ms * s.tan_ms + sa * s.tan_sa - d.total_loss).abs() < 1e-20);
}

#[test]
fn validation_collects_every_problem() {
    let s = DielectricStack { t_ms: -1.0, ..Default::default() };
    let bad = StructureSpec::Ribbon(Ribbon { a: 2.0 * UM, b: 1.0 * UM, length: 1e-3, t: 0.1 * UM });
    let bad_wire = StructureSpec::TaperedWire(TaperedWire { r0: 0.1 * UM, slope: 0.6, d: 50.0 * UM, t: 0.1 * UM });
    match assemble_design(&[bad, bad_wire], &s, &AssemblyOptions::default()) {
        Err(Error::Validation(v)) => {
            let fields: Vec<_> = v.0.iter().map(|e| e.field.as_str()).collect();
            assert!(fields.iter().any(|f| f.starts_with("structures[0]")), "{fields:?}");
            assert!(fields.iter().any(|f| f.starts_with("structures[1]")), "{fields:?}");
            assert!(fields.iter().any(|f| f.starts_with("stack")), "{fields:?}");
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(assemble_design(&[], &DielectricStack::default(), &AssemblyOptions::default()), Err(Error::Validation(_))));
}

#[test]
fn thick_oxide_is_rejected() {
    let s = DielectricStack::uniform_oxide(11.7, 9.8, 9.8, 3.8, 20e-9, 0.002);
    assert!(assemble_design(&[ribbon()], &s, &AssemblyOptions::default()).is_err());
}
