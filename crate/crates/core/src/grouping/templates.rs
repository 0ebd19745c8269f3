use std::fmt;
use std::str::FromStr;

use crate::exact::{CycloPoint, GoldenInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CompositeKind {
    ThickRhomb,
    ThinRhomb,
    Deltoid,
    Trapezoid,
    PentagonBig,
    PentagonSmall,
    Pentagram,
    Boat,
    AcuteTriangle,
    ObtuseTriangle,
}

impl CompositeKind {
    pub const ALL: [Self; 10] = [
        Self::ThickRhomb,
        Self::ThinRhomb,
        Self::Deltoid,
        Self::Trapezoid,
        Self::PentagonBig,
        Self::PentagonSmall,
        Self::Pentagram,
        Self::Boat,
        Self::AcuteTriangle,
        Self::ObtuseTriangle,
    ];

    pub fn is_singleton(self) -> bool {
        matches!(self, Self::AcuteTriangle | Self::ObtuseTriangle)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::ThickRhomb => "ThickRhomb",
            Self::ThinRhomb => "ThinRhomb",
            Self::Deltoid => "Deltoid",
            Self::Trapezoid => "Trapezoid",
            Self::PentagonBig => "PentagonBig",
            Self::PentagonSmall => "PentagonSmall",
            Self::Pentagram => "Pentagram",
            Self::Boat => "Boat",
            Self::AcuteTriangle => "AcuteTriangle",
            Self::ObtuseTriangle => "ObtuseTriangle",
        }
    }
}

impl fmt::Display for CompositeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CompositeKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown composite kind '{s}'"))
    }
}

/// Reference outline of a composite tile, counter-clockwise, first corner at
/// the origin, drawn for patch triangles with leg τ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub kind: CompositeKind,
    pub outline: Vec<CycloPoint>,
    /// Number of `(acute, obtuse)` patch triangles that fill the outline.
    pub parts: (usize, usize),
}

/// Boundary as `(length, direction in multiples of 36°)` steps.
type Steps = Vec<(GoldenInt, i32)>;

fn walk(steps: &[(GoldenInt, i32)]) -> Vec<CycloPoint> {
    let mut pts = vec![CycloPoint::ZERO];
    let mut cur = CycloPoint::ZERO;
    for &(len, dir) in &steps[..steps.len() - 1] {
        cur = cur + CycloPoint::from_golden(len).rotate36_by(dir);
        pts.push(cur);
    }
    pts
}

fn pentagon(side: GoldenInt) -> Steps {
    (0..5).map(|i| (side, 2 * i)).collect()
}

/// Long base `sτ`, legs and short base `s`, base angles 72°.
fn trapezoid(s: GoldenInt) -> Steps {
    vec![(s * GoldenInt::TAU, 0), (s, 3), (s, 5), (s, 7)]
}

/// Replaces each listed edge by the two legs of an acute triangle glued
/// outward on it. The edge must be `1/τ` times `leg`.
fn with_tips(steps: &[(GoldenInt, i32)], edges: &[usize], leg: GoldenInt) -> Steps {
    let mut out = Vec::new();
    for (i, &(len, dir)) in steps.iter().enumerate() {
        if edges.contains(&i) {
            debug_assert_eq!(len * GoldenInt::TAU, leg);
            out.push((leg, dir - 2));
            out.push((leg, dir + 2));
        } else {
            out.push((len, dir));
        }
    }
    out
}

fn doubled_area(outline: &[CycloPoint]) -> GoldenInt {
    let n = outline.len();
    (0..n).fold(GoldenInt::ZERO, |acc, i| {
        acc + outline[i]
            .cross_scaled(outline[(i + 1) % n])
            .expect("small template")
    })
}

/// `(acute, obtuse)` counts of leg-τ triangles with the given doubled area.
/// An acute triangle has doubled area τ and an obtuse one τ², in units of
/// sin 72°.
pub(crate) fn parts_for_area(area: GoldenInt) -> Option<(usize, usize)> {
    let obtuse = area.a;
    let acute = area.b - area.a;
    (acute >= 0 && obtuse >= 0).then_some((acute as usize, obtuse as usize))
}

/// The template of `kind`, or `None` for the singleton kinds.
pub fn template(kind: CompositeKind) -> Option<Template> {
    use CompositeKind::*;
    let s = GoldenInt::TAU;
    let s_tau = s * GoldenInt::TAU;
    let s_tau2 = s_tau * GoldenInt::TAU;
    let steps = match kind {
        ThickRhomb => vec![(s, 0), (s, 2), (s, 5), (s, 7)],
        ThinRhomb => vec![(s, 0), (s, 1), (s, 5), (s, 6)],
        // two acute triangles sharing the leg along 36°
        Deltoid => vec![(s, 0), (GoldenInt::ONE, 3), (GoldenInt::ONE, 4), (s, 7)],
        Trapezoid => trapezoid(s),
        PentagonSmall => pentagon(s_tau),
        PentagonBig => pentagon(s_tau2),
        Pentagram => with_tips(&pentagon(s_tau), &[0, 1, 2, 3, 4], s_tau2),
        Boat => with_tips(&trapezoid(s), &[1, 2, 3], s_tau),
        AcuteTriangle | ObtuseTriangle => return None,
    };
    let outline = walk(&steps);
    let parts = parts_for_area(doubled_area(&outline)).expect("template area is a triangle sum");
    Some(Template {
        kind,
        outline,
        parts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(p: CycloPoint) -> GoldenInt {
        p.sq_norm().unwrap()
    }

    #[test]
    fn parts_by_area() {
        use CompositeKind::*;
        let expect = [
            (ThickRhomb, (0, 2)),
            (ThinRhomb, (2, 0)),
            (Deltoid, (2, 0)),
            (Trapezoid, (1, 2)),
            (PentagonSmall, (4, 7)),
            (PentagonBig, (11, 18)),
            (Pentagram, (14, 22)),
            (Boat, (4, 5)),
        ];
        for (k, parts) in expect {
            assert_eq!(template(k).unwrap().parts, parts, "{k}");
        }
        assert!(template(AcuteTriangle).is_none());
    }

    #[test]
    fn outlines_close_with_expected_sides() {
        use CompositeKind::*;
        let tau2 = GoldenInt::new(1, 1);
        for k in [ThickRhomb, ThinRhomb, PentagonSmall, PentagonBig] {
            let t = template(k).unwrap();
            let n = t.outline.len();
            let first = sq(t.outline[1] - t.outline[0]);
            for i in 0..n {
                assert_eq!(
                    sq(t.outline[(i + 1) % n] - t.outline[i]),
                    first,
                    "{k} side {i}"
                );
            }
        }
        let small = template(PentagonSmall).unwrap();
        let big = template(PentagonBig).unwrap();
        let ratio = sq(big.outline[1])
            .checked_div(sq(small.outline[1]))
            .unwrap();
        assert_eq!(ratio, tau2);
    }

    #[test]
    fn trapezoid_proportions() {
        let t = template(CompositeKind::Trapezoid).unwrap();
        let o = &t.outline;
        let long = sq(o[1] - o[0]);
        let short = sq(o[3] - o[2]);
        assert_eq!(sq(o[2] - o[1]), short);
        assert_eq!(sq(o[0] - o[3]), short);
        assert_eq!(long, short * GoldenInt::new(1, 1));
    }

    #[test]
    fn outlines_are_counter_clockwise() {
        for k in CompositeKind::ALL {
            if let Some(t) = template(k) {
                assert!(doubled_area(&t.outline).signum() > 0, "{k}");
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for k in CompositeKind::ALL {
            assert_eq!(k.name().parse::<CompositeKind>().unwrap(), k);
        }
    }
}
