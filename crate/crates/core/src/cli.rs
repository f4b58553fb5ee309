//! Command-line front end.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::affine::{self, DoreyReading, Target};
use crate::arquiver::{adapted_quiver_of, gamma_q, hasse_quiver, ArQuiver, DynkinQuiver};
use crate::rootsys::{DynkinType, RootId, RootSystem};
use crate::seqorder;
use crate::twistfold::{self, FoldedQuiver};
use crate::words::{self, cluster_point, format_word, parse_word, CommutationClass, DEFAULT_CAP};

#[derive(Debug, Parser)]
#[command(name = "arfold", version, about = "Commutation classes, AR quivers and their foldings")]
pub struct Cli {
    /// Enumeration cap for words and sequences.
    #[arg(long, global = true, env = "ARFOLD_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Also write the result as JSON to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the classes of a cluster point by canonical word.
    Classes(ClassesArgs),
    /// Render a quiver.
    Quiver(QuiverArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Cluster {
    Adapted,
    Twisted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    /// The printed folded `E_6` quiver.
    E6,
    /// The printed folded `E_6` quiver reflected at 1.
    E6R1,
    /// The printed unfolded `E_6` quiver.
    E6Unfolded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum View {
    /// Gamma_Q for adapted classes, the twisted quiver for twisted ones.
    Ar,
    /// Folded coordinates (twisted classes only).
    Folded,
}

#[derive(Debug, Args)]
pub struct TypeArgs {
    #[arg(long = "type", value_parser = parse_type)]
    pub kind: Option<DynkinType>,
    #[arg(long)]
    pub rank: Option<usize>,
}

impl TypeArgs {
    fn root_system(&self) -> anyhow::Result<RootSystem> {
        let kind = self.kind.ok_or_else(|| anyhow!("--type is required"))?;
        let rank = self.rank.ok_or_else(|| anyhow!("--rank is required"))?;
        Ok(RootSystem::new(kind, rank)?)
    }
}

fn parse_type(s: &str) -> Result<DynkinType, String> {
    s.parse()
}

#[derive(Debug, Args)]
pub struct ClassesArgs {
    #[command(flatten)]
    pub ty: TypeArgs,
    #[arg(long, value_enum, default_value_t = Cluster::Twisted)]
    pub cluster: Cluster,
}

#[derive(Debug, Args)]
pub struct QuiverArgs {
    #[command(flatten)]
    pub ty: TypeArgs,
    /// A member word of the class, as a comma list.
    #[arg(long)]
    pub class: Option<String>,
    #[arg(long, value_enum)]
    pub fixture: Option<Fixture>,
    #[arg(long, value_enum, default_value_t = View::Ar)]
    pub view: View,
    #[arg(long, value_enum, default_value_t = Format::Ascii)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    DenDist,
    Dorey,
    SocleDist,
    Counts,
    F4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reading {
    Printed,
    Corrected,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, value_parser = parse_target)]
    pub target: Option<Target>,
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub ty: TypeArgs,
    /// Reading of the second `B` branch of Dorey's rule.
    #[arg(long, value_enum, default_value_t = Reading::Printed)]
    pub reading: Reading,
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

/// Run a parsed command, writing the report to `out`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<i32> {
    if cli.cap == 0 {
        bail!("--cap must be positive");
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build()?;
    let mut buf = Vec::new();
    let code = pool.install(|| match &cli.command {
        Command::Classes(a) => cmd_classes(cli, a, &mut buf),
        Command::Quiver(a) => cmd_quiver(cli, a, &mut buf),
        Command::Verify(a) => cmd_verify(cli, a, &mut buf),
    });
    out.write_all(&buf)?;
    code
}

fn write_json<T: Serialize>(cli: &Cli, value: &T) -> anyhow::Result<()> {
    if let Some(path) = &cli.out {
        let text = serde_json::to_string_pretty(value)?;
        std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

/// The classes of the adapted or twisted adapted cluster point.
pub fn cluster_classes(rs: &RootSystem, cluster: Cluster) -> anyhow::Result<Vec<CommutationClass>> {
    let point = match cluster {
        Cluster::Adapted => {
            let q = DynkinQuiver::all(rs).into_iter().next().ok_or_else(|| anyhow!("no quiver"))?;
            cluster_point(rs, &q.class(rs))
        }
        Cluster::Twisted => words::twisted_adapted_point(rs)?,
    };
    Ok(point.classes().to_vec())
}

fn cmd_classes(cli: &Cli, a: &ClassesArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let rs = a.ty.root_system()?;
    let classes = cluster_classes(&rs, a.cluster)?;
    let words: Vec<Vec<usize>> = classes.iter().map(|c| c.canonical().to_vec()).collect();
    for w in &words {
        writeln!(out, "{}", format_word(w))?;
    }
    eprintln!("{} classes", words.len());
    write_json(cli, &words)?;
    Ok(0)
}

/// Serialized quiver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverDoc {
    pub schema: String,
    #[serde(rename = "type")]
    pub kind: String,
    /// `ar` (residues in the Dynkin diagram) or `folded` (orbit residues).
    pub view: String,
    pub class: Vec<usize>,
    pub position_denominator: i64,
    pub vertices: Vec<VertexDoc>,
    /// Indices into `vertices`.
    pub arrows: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub root: String,
    pub residue: usize,
    pub position: i64,
}

pub const SCHEMA: &str = "arfold/1";

/// A quiver with positions, ready to render.
#[derive(Debug, Clone)]
pub enum Rendered {
    Ar(ArQuiver),
    Folded(FoldedQuiver),
}

impl Rendered {
    /// `(residue, doubled position)` of each root.
    fn coordinates(&self) -> Vec<(usize, i64)> {
        match self {
            Rendered::Ar(q) => (0..q.len())
                .map(|id| (q.residue(id), q.position(id).unwrap_or(0)))
                .collect(),
            Rendered::Folded(q) => (0..q.len()).map(|id| (q.residue(id), 2 * q.position(id))).collect(),
        }
    }

    fn arrows(&self) -> Vec<(RootId, RootId)> {
        match self {
            Rendered::Ar(q) => q.arrows().iter().copied().collect(),
            Rendered::Folded(q) => q.arrows().iter().copied().collect(),
        }
    }

    fn view(&self) -> &'static str {
        match self {
            Rendered::Ar(_) => "ar",
            Rendered::Folded(_) => "folded",
        }
    }
}

/// Vertices sorted by `(position, residue)`.
fn vertex_order(coords: &[(usize, i64)]) -> Vec<RootId> {
    let mut ids: Vec<RootId> = (0..coords.len()).collect();
    ids.sort_by_key(|&id| (coords[id].1, coords[id].0));
    ids
}

pub fn quiver_doc(rs: &RootSystem, class: &CommutationClass, q: &Rendered) -> QuiverDoc {
    let coords = q.coordinates();
    let order = vertex_order(&coords);
    let mut index = vec![0; coords.len()];
    for (k, &id) in order.iter().enumerate() {
        index[id] = k;
    }
    let mut arrows: Vec<[usize; 2]> = q.arrows().iter().map(|&(a, b)| [index[a], index[b]]).collect();
    arrows.sort_unstable();
    QuiverDoc {
        schema: SCHEMA.into(),
        kind: rs.name(),
        view: q.view().into(),
        class: class.canonical().to_vec(),
        position_denominator: 2,
        vertices: order
            .iter()
            .map(|&id| VertexDoc {
                root: rs.root(id).to_string(),
                residue: coords[id].0,
                position: coords[id].1,
            })
            .collect(),
        arrows,
    }
}

/// Rebuild a quiver from its serialized form.
pub fn quiver_from_doc(doc: &QuiverDoc) -> anyhow::Result<(RootSystem, Rendered)> {
    if doc.schema != SCHEMA {
        bail!("unsupported schema {:?}", doc.schema);
    }
    if doc.position_denominator != 2 {
        bail!("position_denominator must be 2");
    }
    let (kind, rank) = doc.kind.split_at(1);
    let rs = RootSystem::new(kind.parse::<DynkinType>().map_err(|e| anyhow!(e))?, rank.parse().context("rank")?)?;
    let n = rs.num_positive();
    if doc.vertices.len() != n {
        bail!("expected {n} vertices, found {}", doc.vertices.len());
    }
    let mut ids = Vec::with_capacity(n);
    let mut residues = vec![0; n];
    let mut positions = vec![0; n];
    for v in &doc.vertices {
        let id = rs.parse_root(&v.root).ok_or_else(|| anyhow!("{} is not a positive root", v.root))?;
        residues[id] = v.residue;
        positions[id] = v.position;
        ids.push(id);
    }
    let mut arrows = std::collections::BTreeSet::new();
    for &[a, b] in &doc.arrows {
        let (a, b) = (*ids.get(a).ok_or_else(|| anyhow!("bad arrow"))?, *ids.get(b).ok_or_else(|| anyhow!("bad arrow"))?);
        arrows.insert((a, b));
    }
    let q = match doc.view.as_str() {
        "ar" => Rendered::Ar(ArQuiver::new(residues, Some(positions), arrows)?),
        "folded" => {
            if positions.iter().any(|p| p % 2 != 0) {
                bail!("folded positions must be whole");
            }
            let positions = positions.iter().map(|p| p / 2).collect();
            Rendered::Folded(FoldedQuiver::new(&rs, residues, positions, arrows)?)
        }
        other => bail!("unknown view {other:?}"),
    };
    Ok((rs, q))
}

/// Residues as rows, positions as columns.
pub fn render_ascii(rs: &RootSystem, q: &Rendered) -> String {
    let coords = q.coordinates();
    // AR positions are printed in their own units, folded ones in q_s units
    let cols: Vec<i64> = coords.iter().map(|&(_, p)| p / 2).collect();
    let (lo, hi) = (*cols.iter().min().unwrap(), *cols.iter().max().unwrap());
    let rows = coords.iter().map(|c| c.0).max().unwrap_or(0);
    let width = (0..coords.len())
        .map(|id| rs.root(id).to_string().len())
        .chain([lo.to_string().len(), hi.to_string().len()])
        .max()
        .unwrap_or(1);
    let mut grid: BTreeMap<(usize, i64), String> = BTreeMap::new();
    for (id, &(r, _)) in coords.iter().enumerate() {
        grid.insert((r, cols[id]), rs.root(id).to_string());
    }
    let mut s = String::new();
    let _ = write!(s, "{:>4} ", "");
    for p in lo..=hi {
        let _ = write!(s, " {:>width$}", p);
    }
    s.push('\n');
    for r in 1..=rows {
        let _ = write!(s, "{:>4} ", r);
        for p in lo..=hi {
            let cell = grid.get(&(r, p)).map(String::as_str).unwrap_or("");
            let _ = write!(s, " {:>width$}", cell);
        }
        s.push('\n');
    }
    s
}

pub fn render_dot(rs: &RootSystem, q: &Rendered) -> String {
    let coords = q.coordinates();
    let order = vertex_order(&coords);
    let mut s = String::from("digraph quiver {\n  rankdir=LR;\n");
    for &id in &order {
        let (r, p) = coords[id];
        let pos = if p % 2 == 0 { format!("{}", p / 2) } else { format!("{}/2", p) };
        let _ = writeln!(s, "  r{id} [label=\"{}\\n({r}, {pos})\"];", rs.root(id));
    }
    for (a, b) in q.arrows() {
        let _ = writeln!(s, "  r{a} -> r{b};");
    }
    s.push_str("}\n");
    s
}

fn resolve_quiver(cli: &Cli, a: &QuiverArgs) -> anyhow::Result<(RootSystem, CommutationClass, Rendered)> {
    if let Some(f) = a.fixture {
        let rs = RootSystem::new(DynkinType::E, 6)?;
        let q = match f {
            Fixture::E6 => Rendered::Folded(twistfold::e6_folded_quiver()?),
            Fixture::E6R1 => Rendered::Folded(twistfold::e6_folded_r1_quiver()?),
            Fixture::E6Unfolded => Rendered::Ar(twistfold::e6_unfolded_quiver()?),
        };
        let class = match &q {
            Rendered::Folded(f) => f.class().clone(),
            Rendered::Ar(_) => twistfold::e6_folded_quiver()?.class().clone(),
        };
        return Ok((rs, class, q));
    }
    let rs = a.ty.root_system()?;
    let word = match &a.class {
        Some(s) => parse_word(s).ok_or_else(|| anyhow!("cannot parse word {s:?}"))?,
        None => match crate::rootsys::DiagramAutomorphism::standard(&rs) {
            Ok(aut) => words::twisted_product_word(&rs, &aut, &words::standard_twisted_coxeter(&rs))?,
            Err(_) => rs.longest_word(),
        },
    };
    let class = CommutationClass::of_longest(&rs, &word)?;
    if a.view == View::Ar {
        if let Some(dq) = adapted_quiver_of(&rs, &word) {
            return Ok((rs.clone(), class, Rendered::Ar(gamma_q(&rs, &dq)?)));
        }
    }
    let family = twistfold::twisted_family(&rs).ok().unwrap_or_default();
    if let Some(tc) = family.into_iter().find(|tc| tc.class == class) {
        let q = match a.view {
            View::Ar => Rendered::Ar(tc.quiver),
            View::Folded => Rendered::Folded(tc.folded),
        };
        return Ok((rs, class, q));
    }
    if a.view == View::Folded {
        bail!("the class is not twisted adapted, so it has no folded quiver");
    }
    let _ = cli;
    let hasse = hasse_quiver(&rs, &class);
    // positions from the canonical word's order, so the grid is still readable
    let seq = words::root_sequence(&rs, class.canonical())?;
    let mut positions = vec![0; rs.num_positive()];
    for (k, &id) in seq.iter().enumerate() {
        positions[id] = -2 * k as i64;
    }
    let q = ArQuiver::new(hasse.residues().to_vec(), Some(positions), hasse.arrows().clone())?;
    Ok((rs, class, Rendered::Ar(q)))
}

fn cmd_quiver(cli: &Cli, a: &QuiverArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let (rs, class, q) = resolve_quiver(cli, a)?;
    let doc = quiver_doc(&rs, &class, &q);
    match a.format {
        Format::Ascii => write!(out, "{}", render_ascii(&rs, &q))?,
        Format::Dot => write!(out, "{}", render_dot(&rs, &q))?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?,
    }
    write_json(cli, &doc)?;
    Ok(0)
}

/// Expected cluster-point sizes.
pub const COUNTS: [(Cluster, DynkinType, usize, usize); 7] = [
    (Cluster::Adapted, DynkinType::A, 4, 8),
    (Cluster::Adapted, DynkinType::A, 5, 16),
    (Cluster::Twisted, DynkinType::A, 3, 4),
    (Cluster::Twisted, DynkinType::A, 5, 16),
    (Cluster::Twisted, DynkinType::D, 4, 8),
    (Cluster::Twisted, DynkinType::D, 5, 16),
    (Cluster::Twisted, DynkinType::E, 6, 32),
];

#[derive(Debug, Serialize)]
struct CountLine {
    cluster: String,
    kind: String,
    expected: usize,
    found: usize,
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let cap = cli.cap;
    let target_n = || -> anyhow::Result<(Target, usize)> {
        let t = a.target.ok_or_else(|| anyhow!("--target is required"))?;
        let n = match (t, a.n) {
            (Target::F4, _) => 4,
            (_, Some(n)) => n,
            _ => bail!("--n is required"),
        };
        Ok((t, n))
    };
    let passed = match a.suite {
        Suite::Counts => {
            let mut lines = Vec::new();
            for (cluster, kind, rank, expected) in COUNTS {
                let rs = RootSystem::new(kind, rank)?;
                let found = cluster_classes(&rs, cluster)?.len();
                let c = format!("{cluster:?}").to_lowercase();
                writeln!(out, "{c:<8} {:<3} expected {expected:>2} found {found:>2}", rs.name())?;
                lines.push(CountLine { cluster: c, kind: rs.name(), expected, found });
            }
            write_json(cli, &lines)?;
            lines.iter().all(|l| l.expected == l.found)
        }
        Suite::DenDist => {
            let (t, n) = target_n()?;
            let r = affine::verify_den_dist(t, n, cap)?;
            writeln!(
                out,
                "{t}_{n}: {} classes, {} polynomials, {} mismatches",
                r.classes,
                r.checked,
                r.mismatches.len()
            )?;
            for m in &r.mismatches {
                writeln!(out, "  d_{{{},{}}} in {}: expected {} found {}", m.k, m.l, m.class, m.expected, m.found)?;
            }
            for (k, l) in &r.not_invariant {
                writeln!(out, "  D_{{{k},{l}}} differs between classes")?;
            }
            for (c, k, l) in &r.not_constant {
                writeln!(out, "  dist not constant on a gap of ({k},{l}) in {c}")?;
            }
            write_json(cli, &r)?;
            r.passed()
        }
        Suite::Dorey => {
            let (t, n) = target_n()?;
            let reading = match a.reading {
                Reading::Printed => DoreyReading::Printed,
                Reading::Corrected => DoreyReading::Corrected,
            };
            let r = affine::verify_dorey(t, n, reading, cap)?;
            let p = affine::verify_minimal_pair_predicate(t, n, reading, cap)?;
            writeln!(
                out,
                "{t}_{n} ({reading:?}): {} classes, {} realised triples, {} outside the rule, {} never realised",
                r.classes,
                r.minimal_pairs,
                r.unexpected.len(),
                r.unrealized.len()
            )?;
            for u in &r.unexpected {
                writeln!(out, "  outside: {u}")?;
            }
            for u in &r.unrealized {
                writeln!(out, "  unrealised: {u}")?;
            }
            writeln!(
                out,
                "coordinate condition vs minimality: {} sums, {} disagreements",
                p.sums_checked,
                p.disagreements.len()
            )?;
            write_json(cli, &serde_json::json!({ "dorey": r, "predicate": p }))?;
            r.passed() && p.disagreements.is_empty()
        }
        Suite::SocleDist => {
            let rs = a.ty.root_system()?;
            let classes = cluster_classes(&rs, Cluster::Twisted)?;
            let r = seqorder::socle_dist_suite(&rs, &classes, cap)?;
            let bkm = seqorder::minimal_sequence_suite(&rs, &classes, cap)?;
            writeln!(out, "{}: {} classes, {} pairs", rs.name(), r.classes, r.pairs)?;
            writeln!(out, "dist histogram: {:?}", r.dist_histogram)?;
            writeln!(out, "cover kinds: {:?}", r.cover_kinds)?;
            for f in &r.failures {
                writeln!(out, "  {f}")?;
            }
            writeln!(out, "minimal sequences are minimal pairs: {} failures", bkm.len())?;
            for f in &bkm {
                writeln!(out, "  {f}")?;
            }
            write_json(cli, &serde_json::json!({ "socle_dist": r, "minimal_sequences": bkm }))?;
            r.passed() && bkm.is_empty()
        }
        Suite::F4 => {
            let r = affine::verify_f4_conjecture(cap)?;
            writeln!(out, "E6: {} classes", r.classes)?;
            writeln!(out, "hypothesis: {}", r.diagonal_factor_hypothesis)?;
            for c in &r.results {
                writeln!(
                    out,
                    "convention {}: class-invariant {}, dist constant {}, {} of 10 match",
                    c.convention, c.invariant, c.constant, c.matched
                )?;
                for m in &c.mismatches {
                    writeln!(out, "  d_{{{},{}}}: listed {} computed {}", m.k, m.l, m.expected, m.found)?;
                }
            }
            let matching = if r.matching.is_empty() { "none".to_string() } else { r.matching.join(", ") };
            writeln!(out, "matching conventions: {matching}")?;
            write_json(cli, &r)?;
            r.passed()
        }
    };
    writeln!(out, "{}", if passed { "PASS" } else { "FAIL" })?;
    Ok(if passed { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let cli = Cli::try_parse_from(std::iter::once("arfold").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let code = run(&cli, &mut buf).unwrap();
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn classes_listing() {
        let (code, text) = run_args(&["classes", "--type", "A", "--rank", "4", "--cluster", "adapted"]);
        assert_eq!(code, 0);
        assert_eq!(text.lines().count(), 8);
    }

    #[test]
    fn json_round_trip() {
        let (_, text) = run_args(&["quiver", "--type", "A", "--rank", "4", "--class", "4,1,3,2,4,1,3,2,4,3", "--format", "json"]);
        let doc: QuiverDoc = serde_json::from_str(&text).unwrap();
        let (rs, q) = quiver_from_doc(&doc).unwrap();
        let class = CommutationClass::of_longest(&rs, &doc.class).unwrap();
        assert_eq!(quiver_doc(&rs, &class, &q), doc);
    }

    #[test]
    fn ascii_grid_rows() {
        let (_, text) = run_args(&["quiver", "--type", "A", "--rank", "4", "--class", "4,1,3,2,4,1,3,2,4,3"]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[0].split_whitespace().eq(["-4", "-3", "-2", "-1", "0", "1"]));
    }

    #[test]
    fn deterministic_output() {
        let args = ["quiver", "--fixture", "e6", "--format", "dot"];
        assert_eq!(run_args(&args), run_args(&args));
    }
}
