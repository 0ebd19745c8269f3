use proptest::prelude::*;

use super::*;
use crate::triangles::{
    canonical_acute, deflate_patch, deflate_triangle, homothety_rotation, seed_sun, seed_wheel,
    validate_patch, SeedKind, Triangle,
};

fn patch(ts: &[Triangle]) -> Patch {
    Patch::from_triangles(ts, None, 0, SeedKind::Custom).unwrap()
}

/// Deflates every triangle until its squared leg is `leg_sq`.
fn refine_to(ts: Vec<Triangle>, leg_sq: GoldenInt) -> Vec<Triangle> {
    let mut out = Vec::new();
    let mut stack = ts;
    while let Some(t) = stack.pop() {
        if t.leg_sq_norm().unwrap() == leg_sq {
            out.push(t);
        } else {
            stack.extend(deflate_triangle(&t).unwrap());
        }
    }
    out
}

/// Regular pentagon of side τ² cut into two obtuse triangles and one acute
/// triangle, refined to leg τ.
fn small_pentagon() -> Patch {
    let side = CycloPoint::from_golden(GoldenInt::tau_pow(2).unwrap());
    let mut c = vec![CycloPoint::ZERO];
    for i in 0..4 {
        let last = *c.last().unwrap();
        c.push(last + side.rotate36_by(2 * i));
    }
    let coarse = vec![
        Triangle::new(TriangleKind::Obtuse, c[1], c[0], c[2]),
        Triangle::new(TriangleKind::Acute, c[0], c[3], c[2]),
        Triangle::new(TriangleKind::Obtuse, c[4], c[3], c[0]),
    ];
    patch(&refine_to(coarse, GoldenInt::new(1, 1)))
}

fn assert_sound(p: &Patch, t: &CompositeTiling) {
    assert!(t.is_partition());
    for g in &t.groups {
        assert!(verify_group(p, g), "{:?}", g.kind);
    }
    let parts: usize = t.groups.iter().map(|g| g.triangles.len()).sum();
    assert_eq!(parts, p.triangles.len());
}

#[test]
fn empty_patch() {
    let t = detect_composites(&Patch::empty(SeedKind::Custom), &POLICY_SET_A);
    assert!(t.groups.is_empty());
    assert_eq!(t.coverage(), 0.0);
    assert!(t.is_partition());
}

#[test]
fn lone_triangle_is_a_singleton() {
    let p = patch(&[canonical_acute()]);
    let t = detect_composites(&p, &POLICY_SET_B);
    assert_eq!(
        count_tiles(&t),
        BTreeMap::from([(CompositeKind::AcuteTriangle, 1)])
    );
    assert_eq!(t.coverage(), 0.0);
    assert_sound(&p, &t);
}

#[test]
fn wheel_is_five_thick_rhombs() {
    let p = seed_wheel();
    assert_eq!(patch_scale(&p), Some(0));
    let t = detect_composites(&p, &POLICY_SET_B);
    assert_eq!(
        count_tiles(&t),
        BTreeMap::from([(CompositeKind::ThickRhomb, 5)])
    );
    assert_eq!(t.coverage(), 1.0);
    assert_sound(&p, &t);
}

#[test]
fn acute_twins_form_a_deltoid() {
    let a = canonical_acute();
    let b = a.map(|v| Ok(v.rotate36())).unwrap();
    let p = patch(&[a, b]);
    let t = glue_rhombs(&p);
    assert_eq!(
        count_tiles(&t),
        BTreeMap::from([(CompositeKind::Deltoid, 1)])
    );
    assert_sound(&p, &t);
}

#[test]
fn small_pentagon_self_test() {
    let p = small_pentagon();
    assert!(validate_patch(&p).passed());
    assert_eq!(
        part_counts(&p, &(0..p.triangles.len() as u32).collect::<Vec<_>>()),
        (4, 7)
    );
    let t = detect_composites(&p, &[CompositeKind::PentagonSmall]);
    assert_eq!(
        count_tiles(&t),
        BTreeMap::from([(CompositeKind::PentagonSmall, 1)])
    );
    assert_eq!(t.coverage(), 1.0);
    assert_sound(&p, &t);
}

#[test]
fn pentagon_outline_is_not_a_big_pentagon() {
    let p = small_pentagon();
    let all: Vec<u32> = (0..p.triangles.len() as u32).collect();
    assert!(find_isometry(&p, CompositeKind::PentagonBig, &all).is_none());
    assert!(find_isometry(&p, CompositeKind::PentagonSmall, &all).is_some());
}

#[test]
fn union_outline_of_a_rhomb() {
    let p = seed_wheel();
    let t = detect_composites(&p, &[CompositeKind::ThickRhomb]);
    let g = &t.groups[0];
    let outline = union_outline(&p, &g.triangles).unwrap();
    assert_eq!(outline.len(), 4);
    let corner = outline[0];
    let sq = |a: CycloPoint, b: CycloPoint| (b - a).sq_norm().unwrap();
    for i in 0..4 {
        assert_eq!(sq(outline[i], outline[(i + 1) % 4]), sq(corner, outline[1]));
    }
    // two disjoint triangles have no single outline
    let far = canonical_acute()
        .map(|v| Ok(v + CycloPoint::from_golden(GoldenInt::new(10, 0))))
        .unwrap();
    let q = patch(&[canonical_acute(), far]);
    assert!(union_outline(&q, &[0, 1]).is_none());
}

#[test]
fn set_b_on_deflated_wheel() {
    let p = deflate_patch(&seed_wheel(), 4).unwrap();
    let t = detect_composites(&p, &POLICY_SET_B);
    assert_sound(&p, &t);
    let counts = count_tiles(&t);
    assert!(counts.get(&CompositeKind::Trapezoid).copied().unwrap_or(0) > 0);
    assert!(t.coverage() > 0.5);
}

#[test]
fn rhomb_ratio_approaches_tau() {
    let p = deflate_patch(&seed_sun(), 6).unwrap();
    let t = glue_rhombs(&p);
    assert_sound(&p, &t);
    let c = count_tiles(&t);
    let thick = c[&CompositeKind::ThickRhomb] as f64;
    let thin = c[&CompositeKind::ThinRhomb] as f64;
    let tau = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((thick / thin / tau - 1.0).abs() < 0.05, "{thick} / {thin}");
}

#[test]
fn jobs_do_not_change_grouping() {
    let p = deflate_patch(&seed_sun(), 4).unwrap();
    let one = detect_composites_with(&p, &POLICY_SET_B, Some(1)).unwrap();
    let four = detect_composites_with(&p, &POLICY_SET_B, Some(4)).unwrap();
    assert_eq!(one, four);
}

#[test]
fn grouping_commutes_with_rotation() {
    for seed in [seed_sun(), seed_wheel()] {
        let p = deflate_patch(&seed, 4).unwrap();
        let q = homothety_rotation(&p, 0, 1).unwrap();
        for policy in [&POLICY_SET_B[..], &POLICY_RHOMBS[..]] {
            let a = count_tiles(&detect_composites(&p, policy));
            let b = count_tiles(&detect_composites(&q, policy));
            assert_eq!(a, b);
        }
    }
}

#[test]
fn scale_follows_deflation() {
    let p = seed_sun();
    assert_eq!(patch_scale(&p), Some(0));
    assert_eq!(patch_scale(&deflate_patch(&p, 3).unwrap()), Some(-3));
    assert_eq!(patch_scale(&Patch::empty(SeedKind::Custom)), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn every_policy_partitions(g in 0u32..5, wheel in any::<bool>(), which in 0usize..3) {
        let seed = if wheel { seed_wheel() } else { seed_sun() };
        let p = deflate_patch(&seed, g).unwrap();
        let policy: &[CompositeKind] = match which {
            0 => &POLICY_SET_A,
            1 => &POLICY_SET_B,
            _ => &POLICY_RHOMBS,
        };
        let t = detect_composites(&p, policy);
        prop_assert!(t.is_partition());
        for grp in &t.groups {
            prop_assert!(verify_group(&p, grp));
        }
        let (a, o) = p.counts();
        let mut parts = (0, 0);
        for grp in &t.groups {
            let (x, y) = match template(grp.kind) {
                Some(tm) => tm.parts,
                None if grp.kind == CompositeKind::AcuteTriangle => (1, 0),
                None => (0, 1),
            };
            parts = (parts.0 + x, parts.1 + y);
        }
        prop_assert_eq!(parts, (a, o));
    }
}
