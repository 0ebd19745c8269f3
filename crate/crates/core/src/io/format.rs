use std::fmt::Write as _;

use crate::error::FormatError;
use crate::exact::CycloPoint;
use crate::grouping::{CompositeGroup, CompositeKind, Isometry};
use crate::triangles::{Chirality, Patch, PatchTriangle, SeedKind, TriangleKind};

pub const FORMAT_VERSION: u32 = 1;

const UNIT_NOTE: &str = "z0 + z1*eps + z2*eps^2 + z3*eps^3, eps = exp(2*pi*i/5)";

/// Parameters a quasilattice document was generated with.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectionMeta {
    pub gamma: [f64; 3],
    pub radius: f64,
    pub box_size: i64,
}

/// Everything stored in a `.qtile` file.
#[derive(Clone, Debug, PartialEq)]
pub struct TilingDocument {
    pub patch: Patch,
    pub groups: Option<Vec<CompositeGroup>>,
    pub projection: Option<ProjectionMeta>,
}

impl TilingDocument {
    pub fn from_patch(patch: Patch) -> Self {
        Self {
            patch,
            groups: None,
            projection: None,
        }
    }

    /// Checks the invariants the file format relies on.
    pub fn check(&self) -> Result<(), FormatError> {
        let p = &self.patch;
        if let Some(i) = p.vertices.windows(2).position(|w| w[0] >= w[1]) {
            return Err(FormatError::Invalid(format!(
                "vertex {} out of canonical order",
                i + 1
            )));
        }
        let nv = p.vertices.len() as u32;
        if let Some(t) = p
            .triangles
            .iter()
            .position(|t| t.indices().iter().any(|&k| k >= nv))
        {
            return Err(FormatError::Invalid(format!(
                "triangle {t} references a missing vertex"
            )));
        }
        if let Some(groups) = &self.groups {
            let nt = p.triangles.len() as u32;
            if let Some(g) = groups
                .iter()
                .position(|g| g.triangles.iter().any(|&t| t >= nt))
            {
                return Err(FormatError::Invalid(format!(
                    "group {g} references a missing triangle"
                )));
            }
        }
        if p.ancestry.len() > p.generation as usize {
            return Err(FormatError::Invalid(
                "ancestry deeper than the generation".into(),
            ));
        }
        Ok(())
    }
}

fn point(out: &mut String, v: CycloPoint) {
    let [a, b, c, d] = v.z;
    let _ = write!(out, "{a} {b} {c} {d}");
}

fn join(out: &mut String, xs: &[u32]) {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{x}");
    }
}

/// Serialises `doc`. Sections appear in a fixed order and the output ends
/// with `end` and a newline.
pub fn write_tiling(doc: &TilingDocument) -> Result<String, FormatError> {
    doc.check()?;
    let p = &doc.patch;
    let mut s = String::new();
    let _ = writeln!(s, "qtile-format {FORMAT_VERSION}");
    let _ = writeln!(s, "unit {UNIT_NOTE}");
    let _ = writeln!(s, "seed {}", p.seed);
    let _ = writeln!(s, "generation {}", p.generation);
    let _ = writeln!(s, "vertices {}", p.vertices.len());
    for &v in &p.vertices {
        point(&mut s, v);
        s.push('\n');
    }
    let _ = writeln!(s, "triangles {}", p.triangles.len());
    for t in &p.triangles {
        let parent = t.parent.map_or("-".to_string(), |x| x.to_string());
        let _ = writeln!(
            s,
            "{} {} {} {} {} {}",
            t.kind.code(),
            t.apex,
            t.base[0],
            t.base[1],
            t.chirality.code(),
            parent
        );
    }
    let _ = writeln!(s, "ancestry {}", p.ancestry.len());
    for level in &p.ancestry {
        let _ = write!(s, "{}", level.len());
        if !level.is_empty() {
            s.push(' ');
            join(&mut s, level);
        }
        s.push('\n');
    }
    if let Some(groups) = &doc.groups {
        let _ = writeln!(s, "groups {}", groups.len());
        for g in groups {
            let _ = write!(s, "{} ", g.kind);
            match g.isometry {
                Some(iso) => {
                    let _ = write!(
                        s,
                        "{} {} {} ",
                        iso.rotation,
                        u8::from(iso.reflect),
                        iso.scale_exp
                    );
                    point(&mut s, iso.shift);
                }
                None => s.push('-'),
            }
            let _ = write!(s, " : ");
            join(&mut s, &g.triangles);
            s.push('\n');
        }
    }
    if let Some(m) = &doc.projection {
        let [g0, g1, g2] = m.gamma;
        let _ = writeln!(
            s,
            "projection {g0:?} {g1:?} {g2:?} {:?} {}",
            m.radius, m.box_size
        );
    }
    s.push_str("end\n");
    Ok(s)
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<&'a str, FormatError> {
        match self.iter.next() {
            Some((i, l)) => {
                self.line = i + 1;
                Ok(l)
            }
            None => Err(FormatError::Syntax {
                line: self.line + 1,
                message: "unexpected end of file".into(),
            }),
        }
    }

    fn err(&self, message: impl Into<String>) -> FormatError {
        FormatError::Syntax {
            line: self.line,
            message: message.into(),
        }
    }

    /// A line `key value`.
    fn keyed(&mut self, key: &str) -> Result<&'a str, FormatError> {
        let l = self.next()?;
        l.strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| self.err(format!("expected '{key} …'")))
    }

    fn parse<T: std::str::FromStr>(&self, tok: &str, what: &str) -> Result<T, FormatError> {
        tok.parse()
            .map_err(|_| self.err(format!("bad {what} '{tok}'")))
    }

    fn count(&mut self, key: &str) -> Result<usize, FormatError> {
        let v = self.keyed(key)?;
        self.parse(v, "count")
    }
}

fn parse_point(lines: &Lines, toks: &[&str]) -> Result<CycloPoint, FormatError> {
    if toks.len() != 4 {
        return Err(lines.err("a point needs four integers"));
    }
    let z: Vec<i64> = toks
        .iter()
        .map(|t| lines.parse(t, "integer"))
        .collect::<Result<_, _>>()?;
    Ok(CycloPoint::new(z[0], z[1], z[2], z[3]))
}

/// Parses a document, rejecting unknown versions, out-of-range indices and
/// vertex lists that are not strictly increasing.
pub fn read_tiling(text: &str) -> Result<TilingDocument, FormatError> {
    let mut lines = Lines {
        iter: text.lines().enumerate(),
        line: 0,
    };
    let version = lines.keyed("qtile-format")?;
    if version != FORMAT_VERSION.to_string() {
        return Err(FormatError::Version(version.to_string()));
    }
    lines.keyed("unit")?;
    let seed_name = lines.keyed("seed")?;
    let seed: SeedKind = seed_name.parse().map_err(|e: String| lines.err(e))?;
    let g = lines.keyed("generation")?;
    let generation: u32 = lines.parse(g, "generation")?;

    let nv = lines.count("vertices")?;
    let mut vertices = Vec::with_capacity(nv);
    for i in 0..nv {
        let l = lines.next()?;
        let v = parse_point(&lines, &l.split(' ').collect::<Vec<_>>())?;
        if vertices.last().is_some_and(|&prev| prev >= v) {
            return Err(FormatError::VertexOrder {
                line: lines.line,
                vertex: i,
            });
        }
        vertices.push(v);
    }

    let nt = lines.count("triangles")?;
    let mut triangles = Vec::with_capacity(nt);
    for i in 0..nt {
        let l = lines.next()?;
        let toks: Vec<&str> = l.split(' ').collect();
        if toks.len() != 6 {
            return Err(lines.err(format!("triangle record {i} needs six fields")));
        }
        let kind =
            TriangleKind::from_code(toks[0]).ok_or_else(|| lines.err("kind must be A or O"))?;
        let mut idx = [0u32; 3];
        for k in 0..3 {
            idx[k] = lines.parse(toks[k + 1], "vertex index")?;
            if idx[k] as usize >= nv {
                return Err(FormatError::TriangleIndex {
                    line: lines.line,
                    triangle: i,
                    index: idx[k],
                    count: nv,
                });
            }
        }
        let chirality = match toks[4] {
            "+" => Chirality::Positive,
            "-" => Chirality::Negative,
            _ => return Err(lines.err("chirality must be + or -")),
        };
        let parent = match toks[5] {
            "-" => None,
            t => Some(lines.parse(t, "parent index")?),
        };
        triangles.push(PatchTriangle {
            kind,
            apex: idx[0],
            base: [idx[1], idx[2]],
            chirality,
            parent,
        });
    }

    let levels = lines.count("ancestry")?;
    let mut ancestry = Vec::with_capacity(levels);
    for _ in 0..levels {
        let l = lines.next()?;
        let mut toks = l.split(' ');
        let n: usize = lines.parse(toks.next().unwrap_or(""), "count")?;
        let level: Vec<u32> = toks
            .map(|t| lines.parse(t, "parent index"))
            .collect::<Result<_, _>>()?;
        if level.len() != n {
            return Err(lines.err(format!(
                "ancestry level lists {} of {n} entries",
                level.len()
            )));
        }
        ancestry.push(level);
    }

    let mut next = lines.next()?;
    let mut groups = None;
    if let Some(rest) = next.strip_prefix("groups ") {
        let n: usize = lines.parse(rest, "count")?;
        let mut gs = Vec::with_capacity(n);
        for gi in 0..n {
            let l = lines.next()?;
            let (head, tail) = l
                .split_once(" : ")
                .ok_or_else(|| lines.err("group record needs ' : '"))?;
            let head: Vec<&str> = head.split(' ').collect();
            let kind: CompositeKind = head[0].parse().map_err(|e: String| lines.err(e))?;
            let isometry = match &head[1..] {
                ["-"] => None,
                [r, f, k, rest @ ..] => {
                    let rotation: u8 = lines.parse(r, "rotation")?;
                    if rotation >= 10 {
                        return Err(lines.err("rotation must be below 10"));
                    }
                    let reflect = match *f {
                        "0" => false,
                        "1" => true,
                        _ => return Err(lines.err("reflection flag must be 0 or 1")),
                    };
                    let scale_exp = lines.parse(k, "scale exponent")?;
                    Some(Isometry {
                        rotation,
                        reflect,
                        scale_exp,
                        shift: parse_point(&lines, rest)?,
                    })
                }
                _ => return Err(lines.err("bad group placement")),
            };
            let mut tris = Vec::new();
            for t in tail.split(' ') {
                let index: u32 = lines.parse(t, "triangle index")?;
                if index as usize >= nt {
                    return Err(FormatError::GroupIndex {
                        line: lines.line,
                        group: gi,
                        index,
                        count: nt,
                    });
                }
                tris.push(index);
            }
            gs.push(CompositeGroup {
                kind,
                triangles: tris,
                isometry,
            });
        }
        groups = Some(gs);
        next = lines.next()?;
    }
    let mut projection = None;
    if let Some(rest) = next.strip_prefix("projection ") {
        let t: Vec<&str> = rest.split(' ').collect();
        if t.len() != 5 {
            return Err(lines.err("projection needs gamma, radius and box"));
        }
        projection = Some(ProjectionMeta {
            gamma: [
                lines.parse(t[0], "gamma")?,
                lines.parse(t[1], "gamma")?,
                lines.parse(t[2], "gamma")?,
            ],
            radius: lines.parse(t[3], "radius")?,
            box_size: lines.parse(t[4], "box")?,
        });
        next = lines.next()?;
    }
    if next != "end" {
        return Err(lines.err(format!("expected 'end', found '{next}'")));
    }
    if let Some((i, _)) = lines.iter.find(|(_, l)| !l.is_empty()) {
        return Err(FormatError::Syntax {
            line: i + 1,
            message: "content after 'end'".into(),
        });
    }
    let patch = Patch {
        vertices,
        triangles,
        generation,
        seed,
        ancestry,
    };
    let doc = TilingDocument {
        patch,
        groups,
        projection,
    };
    doc.check()?;
    Ok(doc)
}
