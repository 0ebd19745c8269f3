//! The `qtile` command: builds, checks, groups, projects, analyses and
//! renders tilings.
//!
//! Exit codes: 0 on success, 1 when an input fails validation or a command
//! cannot complete, 2 on a usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use quasitile::grouping::{
    count_tiles, detect_composites_with, verify_group, CompositeKind, CompositeTiling,
};
use quasitile::io::{
    quasilattice_document, read_tiling, render_svg, write_tiling, RenderOptions, TilingDocument,
};
use quasitile::projection::{generate_quasilattice_with, linear_path, scan_offset_with, Vec3};
use quasitile::stats::{alloy_check, ratio_report, substitution_counts};
use quasitile::triangles::{deflate_patch_with, validate_patch, SeedKind};
use quasitile::weyl::{
    check_axioms, check_theorem1, group_closure, named_elements, roots_sigma5, simple_reflections,
};
use quasitile::{grouping, weyl};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "qtile",
    about = "Exact Penrose-type tilings and quasilattices",
    disable_version_flag = true
)]
struct Cli {
    /// Print the program and tiling-format versions.
    #[arg(long)]
    version: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Weyl group of the Σ5 root system and check its axioms.
    Weyl,
    /// Deflate a seed patch.
    Deflate(DeflateArgs),
    /// Validate a tiling file (shapes, overlaps, edge-to-edge, groups).
    Verify {
        /// Tiling file to check.
        file: PathBuf,
    },
    /// Regroup a tiling file into composite tiles.
    Group(GroupArgs),
    /// Generate a cut-and-project quasilattice.
    Project(ProjectArgs),
    /// Scan the window offset and report symmetry orders.
    Scan(ScanArgs),
    /// Tile-count ratios against powers of τ.
    Stats(StatsArgs),
    /// Render a tiling file as SVG.
    Render(RenderArgs),
}

#[derive(Args, Debug)]
struct DeflateArgs {
    /// Seed: sun, wheel, acute or obtuse.
    #[arg(long, default_value = "sun")]
    seed: SeedKind,
    /// Number of deflation steps.
    #[arg(long, default_value_t = 0)]
    steps: u32,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; the output does not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Policy {
    /// Pentagram, boat, big pentagon, thick and thin rhombs.
    SetA,
    /// Big and small pentagons, trapezoid, thick rhomb, acute triangle.
    SetB,
    /// Thick and thin rhombs and deltoids.
    Rhombs,
}

impl Policy {
    fn kinds(self) -> &'static [CompositeKind] {
        match self {
            Self::SetA => &grouping::POLICY_SET_A,
            Self::SetB => &grouping::POLICY_SET_B,
            Self::Rhombs => &grouping::POLICY_RHOMBS,
        }
    }
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// Tiling file to regroup.
    file: PathBuf,
    /// Which composite kinds to look for, in priority order.
    #[arg(long, value_enum, default_value = "set-b")]
    policy: Policy,
    /// Output file with the groups added; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; the output does not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
}

fn parse_gamma(s: &str) -> Result<Vec3, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number '{t}'"))
        })
        .collect::<Result<_, _>>()?;
    match v[..] {
        [a, b, c] if v.iter().all(|x| x.is_finite()) => Ok([a, b, c]),
        _ => Err("expected three finite numbers g1,g2,g3".into()),
    }
}

#[derive(Args, Debug)]
struct ProjectArgs {
    /// Radius of the disc in the physical plane.
    #[arg(long, default_value_t = 6.0)]
    radius: f64,
    /// Window offset g1,g2,g3 (perp plane, then the diagonal).
    #[arg(long, value_parser = parse_gamma, allow_hyphen_values = true, default_value = "0.01,0.0137,0.0071")]
    gamma: Vec3,
    /// Lattice coordinates range over [-box, box].
    #[arg(long = "box", default_value_t = 8)]
    box_size: i64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; the output does not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Start of the offset path.
    #[arg(long, value_parser = parse_gamma, allow_hyphen_values = true, default_value = "0,0,-1.118033988749895")]
    from: Vec3,
    /// End of the offset path.
    #[arg(long, value_parser = parse_gamma, allow_hyphen_values = true, default_value = "0.01,0.0137,0.0071")]
    to: Vec3,
    /// Number of offsets along the path.
    #[arg(long, default_value_t = 50)]
    steps: usize,
    /// Radius of the disc in the physical plane.
    #[arg(long, default_value_t = 6.0)]
    radius: f64,
    /// Lattice coordinates range over [-box, box].
    #[arg(long = "box", default_value_t = 8)]
    box_size: i64,
    /// CSV output; standard output when omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Worker threads; the output does not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
}

fn parse_alloy(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once(':').ok_or("expected A:B")?;
    let a = a.parse().map_err(|_| format!("bad count '{a}'"))?;
    let b: u64 = b.parse().map_err(|_| format!("bad count '{b}'"))?;
    if b == 0 {
        return Err("the second part must be positive".into());
    }
    Ok((a, b))
}

#[derive(Args, Debug)]
struct StatsArgs {
    /// Tiling file; its groups are counted when present, else its triangles.
    file: Option<PathBuf>,
    /// Compare the composition A:B with powers of τ.
    #[arg(long, value_parser = parse_alloy)]
    alloy: Option<(u64, u64)>,
}

fn parse_overlay(s: &str) -> Result<(u32, i32), String> {
    let (k, m) = s.split_once(',').ok_or("expected k,m")?;
    Ok((
        k.parse().map_err(|_| format!("bad exponent '{k}'"))?,
        m.parse().map_err(|_| format!("bad rotation '{m}'"))?,
    ))
}

#[derive(Args, Debug)]
struct RenderArgs {
    /// Tiling file to draw.
    file: PathBuf,
    /// Output SVG file.
    #[arg(long)]
    svg: PathBuf,
    /// Mark every vertex with a dot.
    #[arg(long)]
    atoms: bool,
    /// Overlay the image under scaling by τ^k and rotation by 72°·m.
    #[arg(long, value_parser = parse_overlay, allow_hyphen_values = true)]
    overlay: Option<(u32, i32)>,
    /// SVG units per unit length.
    #[arg(long, default_value_t = 100.0)]
    scale: f64,
}

/// A failed command: message and exit code.
struct Failure(i32, String);

impl Failure {
    fn invalid(msg: impl Into<String>) -> Self {
        Self(EXIT_INVALID, msg.into())
    }
}

type Outcome = Result<(), Failure>;

fn read_doc(path: &Path) -> Result<TilingDocument, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    read_tiling(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, data: &str, out: &mut dyn Write) -> Outcome {
    match path {
        Some(p) => {
            fs::write(p, data).map_err(|e| Failure::invalid(format!("{}: {e}", p.display())))
        }
        None => out
            .write_all(data.as_bytes())
            .map_err(|e| Failure::invalid(e.to_string())),
    }
}

fn write_doc(doc: &TilingDocument, path: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let text = write_tiling(doc).map_err(|e| Failure::invalid(e.to_string()))?;
    emit(path, &text, out)
}

fn check_jobs(jobs: Option<usize>) -> Outcome {
    match jobs {
        Some(0) => Err(Failure(EXIT_USAGE, "--jobs must be at least 1".into())),
        _ => Ok(()),
    }
}

fn cmd_weyl(out: &mut dyn Write) -> Outcome {
    let w = |out: &mut dyn Write, s: String| {
        writeln!(out, "{s}").map_err(|e| Failure::invalid(e.to_string()))
    };
    let (sa, sb) = simple_reflections();
    let group = group_closure(&[sa, sb], weyl::DEFAULT_CLOSURE_BOUND)
        .map_err(|e| Failure::invalid(e.to_string()))?;
    w(out, format!("group order {}", group.len()))?;
    for (name, m) in named_elements() {
        w(out, format!("{name}  (det {})\n{m}\n", m.det()))?;
    }
    let roots = roots_sigma5();
    let axioms = check_axioms(&roots, &group);
    let status = |ok: bool| if ok { "pass" } else { "FAIL" };
    w(out, format!("R1 {}", status(axioms.r1.is_ok())))?;
    w(out, format!("R2 {}", status(axioms.r2.is_ok())))?;
    w(out, format!("orbit {}", status(axioms.orbit.is_ok())))?;
    let t1 = check_theorem1(&group, &roots);
    w(
        out,
        format!(
            "conjugation w S_r w^-1 = S_w(r): {} over {} pairs",
            status(t1.passed()),
            t1.pairs_checked
        ),
    )?;
    if group.len() == 10 && axioms.passed() && t1.passed() {
        Ok(())
    } else {
        Err(Failure::invalid("Weyl group checks failed"))
    }
}

fn cmd_deflate(a: DeflateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    check_jobs(a.jobs)?;
    if a.seed == SeedKind::Custom {
        return Err(Failure(
            EXIT_USAGE,
            "the custom seed has no triangles to deflate".into(),
        ));
    }
    let p = deflate_patch_with(&a.seed.patch(), a.steps, a.jobs)
        .map_err(|e| Failure::invalid(e.to_string()))?;
    let (ac, ob) = p.counts();
    let _ = writeln!(
        err,
        "{} generation {}: {ac} acute, {ob} obtuse, {} vertices",
        a.seed,
        a.steps,
        p.vertices.len()
    );
    write_doc(&TilingDocument::from_patch(p), a.out.as_deref(), out)
}

fn group_problems(doc: &TilingDocument) -> Option<String> {
    let groups = doc.groups.as_ref()?;
    let tiling = CompositeTiling {
        groups: groups.clone(),
        triangle_count: doc.patch.triangles.len(),
    };
    if !tiling.is_partition() {
        return Some("groups do not partition the triangles".into());
    }
    groups
        .iter()
        .position(|g| !verify_group(&doc.patch, g))
        .map(|i| format!("group {i} ({}) does not match its template", groups[i].kind))
}

fn cmd_verify(file: &Path, out: &mut dyn Write) -> Outcome {
    let doc = read_doc(file)?;
    let report = validate_patch(&doc.patch);
    let _ = writeln!(out, "{report}");
    if !report.passed() {
        return Err(Failure::invalid(format!("{}: {report}", file.display())));
    }
    if let Some(groups) = &doc.groups {
        match group_problems(&doc) {
            None => {
                let _ = writeln!(out, "groups ok: {}", groups.len());
            }
            Some(msg) => {
                let _ = writeln!(out, "groups FAILED: {msg}");
                return Err(Failure::invalid(format!("{}: {msg}", file.display())));
            }
        }
    }
    Ok(())
}

fn cmd_group(a: GroupArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    check_jobs(a.jobs)?;
    let mut doc = read_doc(&a.file)?;
    let tiling =
        detect_composites_with(&doc.patch, a.policy.kinds(), a.jobs).map_err(Failure::invalid)?;
    for (kind, n) in count_tiles(&tiling) {
        let _ = writeln!(err, "{kind:<16} {n}");
    }
    let _ = writeln!(err, "coverage {:.6}", tiling.coverage());
    doc.groups = Some(tiling.groups);
    write_doc(&doc, a.out.as_deref(), out)
}

fn cmd_project(a: ProjectArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    check_jobs(a.jobs)?;
    let q = generate_quasilattice_with(a.radius, a.gamma, a.box_size, a.jobs)
        .map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
    for w in &q.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    let _ = writeln!(
        err,
        "{} points, exact symmetry order {}",
        q.points.len(),
        q.exact_symmetry_order()
    );
    write_doc(&quasilattice_document(&q), a.out.as_deref(), out)
}

fn cmd_scan(a: ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    check_jobs(a.jobs)?;
    if a.steps == 0 {
        return Err(Failure(EXIT_USAGE, "--steps must be at least 1".into()));
    }
    let path = linear_path(a.from, a.to, a.steps);
    let entries = scan_offset_with(&path, a.radius, a.box_size, a.jobs)
        .map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
    let mut csv = String::from("gamma1,gamma2,gamma3,order,count\n");
    for e in &entries {
        for w in &e.warnings {
            let _ = writeln!(err, "warning: {w}");
        }
        let [g1, g2, g3] = e.gamma;
        csv.push_str(&format!(
            "{g1:.12},{g2:.12},{g3:.12},{},{}\n",
            e.order, e.count
        ));
    }
    emit(a.csv.as_deref(), &csv, out)
}

fn cmd_stats(a: StatsArgs, out: &mut dyn Write) -> Outcome {
    if a.file.is_none() && a.alloy.is_none() {
        return Err(Failure(
            EXIT_USAGE,
            "give a tiling file, --alloy A:B, or both".into(),
        ));
    }
    if let Some(path) = &a.file {
        let doc = read_doc(path)?;
        let p = &doc.patch;
        let counts = match &doc.groups {
            Some(groups) => count_tiles(&CompositeTiling {
                groups: groups.clone(),
                triangle_count: p.triangles.len(),
            }),
            None => {
                let (ac, ob) = p.counts();
                [
                    (CompositeKind::AcuteTriangle, ac),
                    (CompositeKind::ObtuseTriangle, ob),
                ]
                .into_iter()
                .collect()
            }
        };
        let _ = writeln!(
            out,
            "{} generation {}, {} triangles",
            p.seed,
            p.generation,
            p.triangles.len()
        );
        for (kind, n) in &counts {
            let _ = writeln!(out, "{kind:<28} {n}");
        }
        let _ = write!(out, "{}", ratio_report(&counts));
        if let (true, Some(seed)) = (doc.groups.is_none(), seed_counts(p.seed)) {
            let predicted = substitution_counts(seed, p.generation)
                .map_err(|e| Failure::invalid(e.to_string()))?;
            let (pa, po) = *predicted.last().expect("generation 0 present");
            let _ = writeln!(out, "substitution prediction: {pa} acute, {po} obtuse");
        }
    }
    if let Some((x, y)) = a.alloy {
        let check = alloy_check(x, y)
            .ok_or_else(|| Failure(EXIT_USAGE, "alloy parts must be positive".into()))?;
        let _ = writeln!(out, "{check}");
    }
    Ok(())
}

fn seed_counts(seed: SeedKind) -> Option<(u64, u64)> {
    let (a, o) = seed.patch().counts();
    (a + o > 0).then_some((a as u64, o as u64))
}

fn cmd_render(a: RenderArgs, err: &mut dyn Write) -> Outcome {
    if !(a.scale.is_finite() && a.scale > 0.0) {
        return Err(Failure(EXIT_USAGE, "--scale must be positive".into()));
    }
    let doc = read_doc(&a.file)?;
    let opts = RenderOptions {
        scale: a.scale,
        atoms: a.atoms,
        overlay: a.overlay,
        ..Default::default()
    };
    let svg = render_svg(&doc, &opts);
    fs::write(&a.svg, svg).map_err(|e| Failure::invalid(format!("{}: {e}", a.svg.display())))?;
    let _ = writeln!(err, "wrote {}", a.svg.display());
    Ok(())
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Data goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    if cli.version {
        let _ = writeln!(
            out,
            "qtile {} (qtile-format {})",
            env!("CARGO_PKG_VERSION"),
            quasitile::io::FORMAT_VERSION
        );
        return EXIT_OK;
    }
    let Some(command) = cli.command else {
        let _ = writeln!(err, "no subcommand given; see --help");
        return EXIT_USAGE;
    };
    let result = match command {
        Command::Weyl => cmd_weyl(out),
        Command::Deflate(a) => cmd_deflate(a, out, err),
        Command::Verify { file } => cmd_verify(&file, out),
        Command::Group(a) => cmd_group(a, out, err),
        Command::Project(a) => cmd_project(a, out, err),
        Command::Scan(a) => cmd_scan(a, out, err),
        Command::Stats(a) => cmd_stats(a, out),
        Command::Render(a) => cmd_render(a, err),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_parsing() {
        assert_eq!(parse_gamma("0.1,-2,3e-3"), Ok([0.1, -2.0, 0.003]));
        assert!(parse_gamma("1,2").is_err());
        assert!(parse_gamma("1,2,x").is_err());
        assert!(parse_gamma("1,2,inf").is_err());
    }

    #[test]
    fn alloy_and_overlay_parsing() {
        assert_eq!(parse_alloy("86:14"), Ok((86, 14)));
        assert!(parse_alloy("86").is_err());
        assert!(parse_alloy("1:0").is_err());
        assert_eq!(parse_overlay("2,-1"), Ok((2, -1)));
        assert!(parse_overlay("2").is_err());
    }

    #[test]
    fn run_captures_output() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(
            run(["qtile", "stats", "--alloy", "87:13"], &mut out, &mut err),
            EXIT_OK
        );
        assert!(String::from_utf8(out).unwrap().contains("6.6923076923"));
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["qtile", "frobnicate"], &mut out, &mut err), EXIT_USAGE);
        assert!(!err.is_empty());
    }
}
