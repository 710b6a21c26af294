use proptest::prelude::*;
use surfloss_core::analytic::ribbon::sections_approx;
use surfloss_core::analytic::{self, AnalyticOptions};
use surfloss_core::structure::*;
use surfloss_core::tls::saturate;
use surfloss_core::*;

const UM: f64 = 1e-6;

fn self_normalised(spec: &StructureSpec, stack: &DielectricStack) -> ParticipationBreakdown {
    let c = analytic::capacitance(spec, stack.eps_s).unwrap();
    analytic::evaluate(spec, stack, capacitance_to_length(c), &AnalyticOptions::default()).unwrap()
}

fn capacitor() -> impl Strategy<Value = StructureSpec> {
    let plate = (1.0..20.0, 50.0..500.0, 100.0..3000.0)
        .prop_map(|(s, w, l): (f64, f64, f64)| StructureSpec::ParallelPlate(ParallelPlate { s: s * UM, w: w * UM, length: l * UM }));
    let ribbon = (5.0..80.0, 0.1..0.9, 100.0..3000.0, 0.05..0.3).prop_map(|(a, k, l, t): (f64, f64, f64, f64)| {
        StructureSpec::Ribbon(Ribbon { a: a * UM, b: a / k * UM, length: l * UM, t: t * UM })
    });
    let coplanar = (5.0..80.0, 0.1..0.9, 100.0..3000.0, 0.05..0.3, any::<bool>()).prop_map(
        |(a, k, l, t, se): (f64, f64, f64, f64, bool)| {
            StructureSpec::Coplanar(Coplanar { a: a * UM, b: a / k * UM, length: l * UM, t: t * UM, single_ended: se })
        },
    );
    let ground = (20.0..80.0, 0.2..2.0, 100.0..3000.0).prop_map(|(a, g, l): (f64, f64, f64)| {
        StructureSpec::RibbonWithGround(RibbonWithGround { a: a * UM, b: 100.0 * UM, c: 100.0 * (1.0 + g) * UM, length: l * UM, t: 0.1 * UM })
    });
    prop_oneof![plate, ribbon, coplanar, ground]
}

proptest! {
    #[test]
    fn doubling_oxides_doubles_participation(spec in capacitor()) {
        let s = DielectricStack::default();
        let p1 = self_normalised(&spec, &s);
        let p2 = self_normalised(&spec, &s.scaled_thickness(2.0));
        for (a, b) in [(p1.p_ma, p2.p_ma), (p1.p_ms, p2.p_ms), (p1.p_sa, p2.p_sa)] {
            prop_assert!((2.0 * a - b).abs() <= 1e-15 * b.abs());
        }
    }

    #[test]
    fn scaling_lengths_by_d_scales_participation_by_inverse_d(spec in capacitor(), d in 0.25f64..8.0) {
        let s = DielectricStack::default();
        let p1 = self_normalised(&spec, &s);
        let p2 = self_normalised(&spec.scaled(d), &s);
        for (a, b) in [(p1.p_ma, p2.p_ma), (p1.p_ms, p2.p_ms), (p1.p_sa, p2.p_sa)] {
            if a != 0.0 {
                prop_assert!((a / d - b).abs() <= 1e-9 * b.abs(), "{} {}", a / d, b);
            }
        }
    }

    #[test]
    fn ribbon_coplanar_duality(a in 5.0f64..80.0, k in 0.1f64..0.9, t in 0.05f64..0.3) {
        let s = DielectricStack::default();
        let r = self_normalised(&StructureSpec::Ribbon(Ribbon { a: a * UM, b: a / k * UM, length: 1e-3, t: t * UM }), &s);
        let c = self_normalised(
            &StructureSpec::Coplanar(Coplanar { a: a * UM, b: a / k * UM, length: 2e-3, t: t * UM, single_ended: false }),
            &s,
        );
        for (x, y) in [(r.p_ma, c.p_ma), (r.p_ms, c.p_ms), (r.p_sa, c.p_sa)] {
            prop_assert!((x - y).abs() <= 1e-9 * y.abs());
        }
    }

    #[test]
    fn centre_section_is_inner_plus_outer(a in 1.0f64..100.0, k in 0.05f64..0.95, t in 0.01f64..0.5) {
        let sec = sections_approx(a, a / k, t);
        prop_assert!((sec.center - sec.inner - sec.outer).abs() <= 1e-12 * sec.center.abs());
    }

    #[test]
    fn saturation_is_monotone_and_bounded(e in 1e-3f64..1e9, es in 1e-3f64..1e9, f in 1.0f64..10.0) {
        let v = saturate(e * e, es);
        prop_assert!(v <= e * e * (1.0 + 1e-15));
        prop_assert!(v <= e * es * 2f64.sqrt());
        prop_assert!(saturate(e * e * f * f, es) >= v);
        prop_assert!(saturate(e * e, es * f) >= v);
    }

    #[test]
    fn loss_is_additive_at_fixed_length(a in capacitor(), b in capacitor()) {
        let s = DielectricStack::default();
        let opts = AssemblyOptions { normalization: Normalization::Fixed(Capacitance::from_ff(100.0)), ..Default::default() };
        let both = assemble_design(&[a, b], &s, &opts).unwrap();
        let pa = assemble_design(&[a], &s, &opts).unwrap();
        let pb = assemble_design(&[b], &s, &opts).unwrap();
        prop_assert!((both.total_loss - pa.total_loss - pb.total_loss).abs() <= 1e-12 * both.total_loss);
    }
}

#[test]
fn participations_differ_only_by_weights_and_corner_constants() {
    // with unit weights and equal oxides, MA and MS brackets coincide and SA
    // is the MS bracket with c_s in place of c_m
    let stack = DielectricStack::uniform_oxide(1.0, 1.0, 1.0, 1.0, 2e-9, 0.0);
    let r = StructureSpec::Ribbon(Ribbon { a: 50.0 * UM, b: 100.0 * UM, length: 1e-3, t: 0.1 * UM });
    let p = analytic::evaluate(&r, &stack, Length(0.01), &AnalyticOptions::default()).unwrap();
    assert!((p.p_ma - p.p_ms).abs() < 1e-15 * p.p_ms);
    let same = CornerConstants { metal: 5.0, substrate: 5.0 };
    let q = analytic::evaluate(&r, &stack, Length(0.01), &AnalyticOptions { corners: same, ..Default::default() }).unwrap();
    // brackets: u_m for MA and MS, 2 u_s for SA
    let e = analytic::surface_energy(&r, same).unwrap();
    assert!((q.p_sa / q.p_ms - 2.0 * e.u_substrate / e.u_metal).abs() < 1e-12);
}
