use proptest::prelude::*;

use super::*;
use crate::error::FormatError;
use crate::grouping::{detect_composites, POLICY_SET_B};
use crate::projection::generate_quasilattice;
use crate::triangles::{deflate_patch, seed_sun, seed_wheel};

fn round_trip(doc: &TilingDocument) {
    let text = write_tiling(doc).unwrap();
    let back = read_tiling(&text).unwrap();
    assert_eq!(&back, doc);
    assert_eq!(write_tiling(&back).unwrap(), text);
}

fn grouped(p: Patch) -> TilingDocument {
    let t = detect_composites(&p, &POLICY_SET_B);
    TilingDocument {
        patch: p,
        groups: Some(t.groups),
        projection: None,
    }
}

#[test]
fn seed_document() {
    let doc = TilingDocument::from_patch(seed_sun());
    let text = write_tiling(&doc).unwrap();
    assert!(text.starts_with("qtile-format 1\n"));
    assert!(text.ends_with("end\n"));
    assert!(text.contains("\nvertices 11\n"));
    assert_eq!(read_tiling(&text).unwrap().patch.vertices.len(), 11);
    round_trip(&doc);
}

#[test]
fn documents_round_trip() {
    for seed in [seed_sun(), seed_wheel()] {
        for g in 0..4 {
            let p = deflate_patch(&seed, g).unwrap();
            round_trip(&TilingDocument::from_patch(p.clone()));
            round_trip(&grouped(p));
        }
    }
    round_trip(&TilingDocument::from_patch(Patch::empty(SeedKind::Custom)));
    let q = generate_quasilattice(3.0, [0.01, 0.0137, 0.0071], 5).unwrap();
    round_trip(&quasilattice_document(&q));
}

#[test]
fn unknown_version_rejected() {
    let text = write_tiling(&TilingDocument::from_patch(seed_sun())).unwrap();
    let bad = text.replacen("qtile-format 1", "qtile-format 7", 1);
    assert_eq!(read_tiling(&bad), Err(FormatError::Version("7".into())));
}

#[test]
fn tampered_index_names_the_record() {
    let text = write_tiling(&TilingDocument::from_patch(seed_sun())).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let first_tri = lines
        .iter()
        .position(|l| l.starts_with("triangles "))
        .unwrap()
        + 1;
    let mut toks: Vec<String> = lines[first_tri + 2].split(' ').map(String::from).collect();
    toks[1] = "999".into();
    lines[first_tri + 2] = toks.join(" ");
    let err = read_tiling(&(lines.join("\n") + "\n")).unwrap_err();
    assert!(
        matches!(
            err,
            FormatError::TriangleIndex {
                triangle: 2,
                index: 999,
                ..
            }
        ),
        "{err}"
    );
    assert!(err.to_string().contains("triangle record 2"));
}

#[test]
fn non_canonical_vertices_rejected() {
    let text = write_tiling(&TilingDocument::from_patch(seed_sun())).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let v = lines
        .iter()
        .position(|l| l.starts_with("vertices "))
        .unwrap()
        + 1;
    lines.swap(v + 3, v + 4);
    let err = read_tiling(&(lines.join("\n") + "\n")).unwrap_err();
    assert!(
        matches!(err, FormatError::VertexOrder { vertex: 4, .. }),
        "{err}"
    );
}

#[test]
fn truncated_and_garbage_rejected() {
    let text = write_tiling(&TilingDocument::from_patch(seed_sun())).unwrap();
    assert!(read_tiling(&text[..text.len() - 4]).is_err());
    assert!(read_tiling(&text.replace(" + ", " x ")).is_err());
    assert!(read_tiling(&format!("{text}extra\n")).is_err());
    assert!(read_tiling("").is_err());
}

#[test]
fn writer_validates() {
    let mut p = seed_sun();
    p.triangles[0].apex = 50;
    assert!(matches!(
        write_tiling(&TilingDocument::from_patch(p)),
        Err(FormatError::Invalid(_))
    ));
}

fn count(svg: &str, tag: &str) -> usize {
    svg.matches(&format!("<{tag} ")).count()
}

#[test]
fn svg_counts() {
    let opts = RenderOptions {
        atoms: true,
        ..Default::default()
    };
    let svg = render_svg(&TilingDocument::from_patch(seed_sun()), &opts);
    assert_eq!(count(&svg, "circle"), 11);
    assert_eq!(count(&svg, "polygon"), 10);
    let g1 = TilingDocument::from_patch(deflate_patch(&seed_sun(), 1).unwrap());
    assert_eq!(
        count(&render_svg(&g1, &RenderOptions::default()), "polygon"),
        20
    );
    let empty = render_svg(
        &TilingDocument::from_patch(Patch::empty(SeedKind::Custom)),
        &opts,
    );
    assert!(empty.contains("<svg") && empty.ends_with("</svg>\n"));
    assert_eq!(count(&empty, "polygon") + count(&empty, "circle"), 0);
}

#[test]
fn svg_groups_and_overlay() {
    let doc = grouped(seed_wheel());
    let svg = render_svg(&doc, &RenderOptions::default());
    assert_eq!(count(&svg, "polygon"), 5);
    assert_eq!(svg.matches("#ffbf00").count(), 5);
    let opts = RenderOptions {
        overlay: Some((2, 1)),
        ..Default::default()
    };
    let over = render_svg(&doc, &opts);
    assert_eq!(count(&over, "polygon"), 15);
    assert_eq!(over, render_svg(&doc, &opts));
}

#[test]
fn svg_coordinates_match_embedding() {
    let p = seed_sun();
    let opts = RenderOptions {
        scale: 37.5,
        atoms: true,
        ..Default::default()
    };
    let svg = render_svg(&TilingDocument::from_patch(p.clone()), &opts);
    let circles: Vec<(f64, f64)> = svg
        .lines()
        .filter(|l| l.starts_with("<circle"))
        .map(|l| {
            let attr = |name: &str| -> f64 {
                let start = l.find(&format!("{name}=\"")).unwrap() + name.len() + 2;
                l[start..].split('"').next().unwrap().parse().unwrap()
            };
            (attr("cx"), attr("cy"))
        })
        .collect();
    for (v, (x, y)) in p.vertices.iter().zip(circles) {
        let (ex, ey) = v.embed();
        assert!((x - 37.5 * ex).abs() <= 5e-7 && (y + 37.5 * ey).abs() <= 5e-7);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn deflated_documents_round_trip(g in 0u32..5, wheel in any::<bool>(), groups in any::<bool>()) {
        let seed = if wheel { seed_wheel() } else { seed_sun() };
        let p = deflate_patch(&seed, g).unwrap();
        let doc = if groups { grouped(p) } else { TilingDocument::from_patch(p) };
        let text = write_tiling(&doc).unwrap();
        prop_assert_eq!(write_tiling(&read_tiling(&text).unwrap()).unwrap(), text);
    }
}
