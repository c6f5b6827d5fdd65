use std::sync::Arc;

use proptest::prelude::*;
use zeta_xray::special::{oracle_by_name, AiryAiOracle, FunctionOracle};
use zeta_xray::xray::{
    boundary_winding, inventory_jsonl, point_dump, render_svg, xray, CurveKind, GridSpec, RenderStyle, SingularityType,
};
use zeta_xray::Rectangle;

fn rect(a: f64, b: f64, c: f64, d: f64) -> Rectangle {
    Rectangle::new(a, b, c, d).unwrap()
}

#[test]
fn quadratic_has_two_zeros_and_a_saddle() {
    // z² − 1: zeros ±1, f' = 2z vanishes at 0.
    let f = oracle_by_name("poly:1,0,-1").unwrap();
    let r = rect(-2.3, 2.1, -1.7, 1.9);
    let x = xray(f, r, GridSpec::default_for(&r)).unwrap();
    let mut zeros: Vec<f64> = x.zeros().map(|z| z.point.re).collect();
    zeros.sort_by(f64::total_cmp);
    assert_eq!(zeros.len(), 2);
    assert!((zeros[0] + 1.0).abs() < 1e-9 && (zeros[1] - 1.0).abs() < 1e-9);
    let saddles: Vec<_> = x.saddles().collect();
    assert_eq!(saddles.len(), 1);
    assert!(saddles[0].point.re.abs() < 1e-6 && saddles[0].point.im.abs() < 1e-6);
    // Re(z²−1) = x² − y² − 1 and Im = 2xy: the thick set is both axes.
    assert!(x
        .curves
        .iter()
        .filter(|c| c.kind == CurveKind::Thick)
        .all(|c| c.points.iter().all(|p| p.re.abs() < 1e-6 || p.im.abs() < 1e-6)));
}

#[test]
fn airy_zeros_on_negative_axis() {
    let r = rect(-8.2, 3.0, -3.1, 2.9);
    let x = xray(Arc::new(AiryAiOracle), r, GridSpec::default_for(&r)).unwrap();
    let mut zeros: Vec<f64> = x.zeros().map(|z| z.point.re).collect();
    zeros.sort_by(f64::total_cmp);
    // Ai vanishes only on the negative real axis: −2.338, −4.088, −5.521, −6.787, −7.944
    assert_eq!(zeros.len(), 5, "{zeros:?}");
    assert!(x.zeros().all(|z| z.point.im.abs() < 1e-8));
    assert!((zeros[4] + 2.33811).abs() < 1e-4);
    assert_eq!(boundary_winding(&AiryAiOracle, &r).unwrap(), 5);
}

#[test]
fn outputs_agree_with_each_other() {
    let f = oracle_by_name("hermite7").unwrap();
    let r = rect(-4.0, 4.0, -2.0, 2.0);
    let x = xray(f, r, GridSpec::default_for(&r)).unwrap();
    let svg = render_svg(&x.curves, &x.singularities, &r, &RenderStyle::default());
    assert_eq!(svg.matches("<polyline").count() + svg.matches("<polygon").count(), x.curves.len());
    let inventory = inventory_jsonl(&x.curves);
    assert_eq!(inventory.lines().count(), x.curves.len());
    for (line, c) in inventory.lines().zip(&x.curves) {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["kind"], c.kind.name());
        assert_eq!(v["points"], c.points.len());
    }
    let rows = point_dump(&x.curves).lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(rows, x.curves.iter().map(|c| c.points.len()).sum::<usize>());
    assert!(x.singularities.iter().filter(|s| s.kind == SingularityType::Zero).all(|s| s.multiplicity == 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // Cubics with three well separated real roots: the X-ray census matches
    // the boundary winding and finds the roots.
    #[test]
    fn cubic_census(a in -2.0f64..-1.0, b in -0.4f64..0.4, c in 1.0f64..2.0) {
        let coeffs = vec![1.0, -(a + b + c), a * b + b * c + c * a, -a * b * c];
        let name = format!("poly:{}", coeffs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
        let f = oracle_by_name(&name).unwrap();
        let r = rect(-2.61, 2.53, -1.47, 1.39);
        let x = xray(f.clone(), r, GridSpec::default_for(&r)).unwrap();
        let mut zeros: Vec<f64> = x.zeros().map(|z| z.point.re).collect();
        zeros.sort_by(f64::total_cmp);
        prop_assert_eq!(zeros.len(), 3);
        for (z, want) in zeros.iter().zip([a, b, c]) {
            prop_assert!((z - want).abs() < 1e-8, "{} vs {}", z, want);
        }
        prop_assert_eq!(boundary_winding(f.as_ref(), &r).unwrap(), 3);
        prop_assert_eq!(x.saddles().count(), 2);
    }
}

#[test]
fn oracle_trait_is_object_safe() {
    let all: Vec<Arc<dyn FunctionOracle>> =
        ["zeta", "hermite7", "bessel_j7", "airy_ai", "gamma"].iter().map(|n| oracle_by_name(n).unwrap()).collect();
    for o in &all {
        let r = o.default_rect();
        assert!(r.width() > 0.0);
        assert_eq!(oracle_by_name(&o.name()).unwrap().name(), o.name());
    }
}

#[test]
fn sheets_pair_gram_points_with_distinct_zeros() {
    let sheets = zeta_xray::xray::sheet_permutation(-1, 40, &zeta_xray::special::ZetaOracle::default()).unwrap();
    let mut ordinals: Vec<i64> = sheets.iter().map(|s| s.zero_ordinal.unwrap()).collect();
    for s in sheets.iter().filter(|s| !s.parallel) {
        let (a, b) = s.line_numbers.unwrap();
        assert_eq!(b - a, 2, "g{}: lines {a}, {b}", s.gram_index);
        assert_eq!(a.rem_euclid(2), 1, "g{}: sheets are bounded by thick lines", s.gram_index);
    }
    // The first 41 Gram points take zeros 1..=41, each exactly once.
    ordinals.sort();
    assert_eq!(ordinals, (1..=41).collect::<Vec<_>>());
}
