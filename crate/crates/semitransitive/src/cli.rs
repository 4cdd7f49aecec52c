//! Command-line front end and the on-disk semigroup file format.
//!
//! A semigroup file holds a header line `n=<N>`, then one element per line
//! in chain-cycle notation (`0` for the zero map); `#` starts a comment.
//! Reports are printed as stable plain text or, with `--json`, as JSON
//! with a fixed field order, so identical inputs give identical bytes.
//!
//! Exit codes: 0 success, 1 failed expectation or assertion, 2 bad input.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::constructors::{
    build, build_example, bound, documented_malformed_lines, gpd, BuildSpec, ConstructError,
    Family,
};
use crate::pperm::{PartialPerm, PointSet};
use crate::semigroup::{are_similar, Semigroup};
use crate::semitrans;
use crate::search::{
    minimal_search_with_progress, PruneMode, SearchConfig, SearchError, SearchProgress,
    SearchStats,
};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("missing or malformed header; expected first line n=<N>")]
    BadHeader,
    #[error("line {0}: {1}")]
    BadElement(usize, String),
    #[error("line {0}: duplicate element")]
    Duplicate(usize),
    #[error("no elements")]
    Empty,
}

/// Serializes an element list in the file format, canonically ordered.
pub fn write_semigroup_file(deg: u8, elements: &[PartialPerm]) -> String {
    let mut sorted: Vec<&PartialPerm> = elements.iter().collect();
    sorted.sort();
    let mut out = format!("n={deg}\n");
    for e in sorted {
        out.push_str(&e.to_string());
        out.push('\n');
    }
    out
}

/// Parses the file format; duplicates are rejected.
pub fn parse_semigroup_file(text: &str) -> Result<(u8, Vec<PartialPerm>), FileError> {
    let mut lines = text.lines().enumerate();
    let deg: u8 = loop {
        match lines.next() {
            None => return Err(FileError::BadHeader),
            Some((_, line)) => {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let value = line.strip_prefix("n=").ok_or(FileError::BadHeader)?;
                break value.trim().parse().map_err(|_| FileError::BadHeader)?;
            }
        }
    };
    let mut elements = Vec::new();
    for (no, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let e = PartialPerm::parse(line, deg)
            .map_err(|err| FileError::BadElement(no + 1, err.to_string()))?;
        if elements.contains(&e) {
            return Err(FileError::Duplicate(no + 1));
        }
        elements.push(e);
    }
    if elements.is_empty() {
        return Err(FileError::Empty);
    }
    Ok((deg, elements))
}

#[derive(Debug, Serialize)]
pub struct BlockInfo {
    pub points: Vec<u8>,
    pub size: usize,
}

#[derive(Debug, Serialize)]
pub struct AuditSummary {
    pub name: String,
    pub status: String,
    pub hypothesis: bool,
    pub conclusion: bool,
    pub witnesses: Vec<String>,
}

/// Everything `analyze` reports about one element set.
#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub n: u8,
    pub size: usize,
    pub is_closed: bool,
    pub is_singular: bool,
    pub is_semitransitive: bool,
    pub is_transitive: bool,
    pub has_zero: bool,
    pub bound: Option<usize>,
    pub idempotents: Vec<String>,
    pub blocks: Option<Vec<BlockInfo>>,
    pub nilpotent_count: Option<usize>,
    pub audits: Vec<AuditSummary>,
}

pub fn analyze(deg: u8, elements: &[PartialPerm]) -> AnalysisReport {
    let is_closed = Semigroup::is_closed(elements);
    let is_singular = elements.iter().all(|e| !e.is_permutation());
    // reach facts hold for the raw set whether or not it is closed
    let mut rows = vec![0u64; deg as usize];
    for e in elements {
        for (x, y) in e.arrows() {
            rows[(x - 1) as usize] |= 1u64 << (y - 1);
        }
    }
    let mut is_semitransitive = true;
    let mut is_transitive = true;
    for x in 0..deg as usize {
        for y in 0..deg as usize {
            let fwd = rows[x] & (1 << y) != 0;
            let back = rows[y] & (1 << x) != 0;
            is_semitransitive &= fwd || back;
            is_transitive &= fwd;
        }
    }
    let has_zero = elements.iter().any(|e| e.is_zero());
    let idempotents: Vec<String> = elements
        .iter()
        .filter(|e| e.is_idempotent() && !e.is_zero())
        .map(|e| e.to_string())
        .collect();

    let mut blocks_info = None;
    let mut nilpotent_count = None;
    let mut audits = Vec::new();
    if is_closed {
        let s = Semigroup::from_elements(elements).expect("closure just checked");
        if let Ok(b) = semitrans::blocks(&s) {
            blocks_info = Some(
                b.blocks
                    .iter()
                    .map(|blk| BlockInfo {
                        points: blk.iter().collect(),
                        size: blk.len(),
                    })
                    .collect(),
            );
            if let Some((g, h)) = semitrans::oriented_idempotents(&s, &b) {
                if let Ok(part) = semitrans::nilpotent_partition(&s, &g, &h, &b) {
                    nilpotent_count = Some(part.nilpotents.len());
                }
            }
            if let Ok(reports) = semitrans::audit_all(&s) {
                audits = reports
                    .iter()
                    .map(|r| AuditSummary {
                        name: r.name.to_string(),
                        status: r.status().to_string(),
                        hypothesis: r.hypothesis_holds,
                        conclusion: r.conclusion_holds,
                        witnesses: r.witnesses.clone(),
                    })
                    .collect();
            }
        }
    }
    AnalysisReport {
        n: deg,
        size: elements.len(),
        is_closed,
        is_singular,
        is_semitransitive,
        is_transitive,
        has_zero,
        bound: if deg >= 2 { Some(bound(deg)) } else { None },
        idempotents,
        blocks: blocks_info,
        nilpotent_count,
        audits,
    }
}

pub fn render_report(r: &AnalysisReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("n: {}\n", r.n));
    out.push_str(&format!("size: {}\n", r.size));
    out.push_str(&format!("closed: {}\n", r.is_closed));
    out.push_str(&format!("singular: {}\n", r.is_singular));
    out.push_str(&format!("semitransitive: {}\n", r.is_semitransitive));
    out.push_str(&format!("transitive: {}\n", r.is_transitive));
    out.push_str(&format!("zero present: {}\n", r.has_zero));
    match r.bound {
        Some(b) => out.push_str(&format!("minimal bound 2n-p+1: {b}\n")),
        None => out.push_str("minimal bound 2n-p+1: n/a\n"),
    }
    out.push_str(&format!(
        "nonzero idempotents ({}): {}\n",
        r.idempotents.len(),
        r.idempotents.join(" ")
    ));
    if let Some(blocks) = &r.blocks {
        let rendered: Vec<String> = blocks
            .iter()
            .map(|b| {
                let pts: Vec<String> = b.points.iter().map(|p| p.to_string()).collect();
                format!("{{{}}}", pts.join(","))
            })
            .collect();
        out.push_str(&format!("blocks: {}\n", rendered.join(" > ")));
    }
    if let Some(count) = r.nilpotent_count {
        out.push_str(&format!("cross nilpotents: {count}\n"));
    }
    for a in &r.audits {
        out.push_str(&format!("audit {}: {}", a.name, a.status));
        if !a.witnesses.is_empty() {
            out.push_str(&format!(" [{}]", a.witnesses.join("; ")));
        }
        out.push('\n');
    }
    out
}

#[derive(Parser)]
#[command(
    name = "semitransitive",
    about = "Build, analyze, search and classify semitransitive subsemigroups of the singular part of the symmetric inverse semigroup",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one of the five minimal families (or the reference chain)
    Build {
        /// 1, 2, 3, 4, 5 or ref
        #[arg(long = "type", value_name = "FAMILY")]
        family: String,
        #[arg(long)]
        n: u8,
        #[arg(long)]
        p: u8,
        /// Sub-blocks per lower block (families 4 and 5)
        #[arg(long)]
        l: Option<u8>,
        /// Number of blocks (families 4 and 5; derived when omitted)
        #[arg(long)]
        m: Option<u8>,
        /// A single cycle such as "(3,5,4,6)" generating the group
        #[arg(long)]
        group: Option<String>,
        /// File with one group generator per line
        #[arg(long)]
        group_file: Option<PathBuf>,
        /// Blocks as point lists, e.g. "1,2|3,4|5,6|7,8"
        #[arg(long)]
        partition: Option<String>,
        /// Output file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyze a semigroup file (or standard input)
    Analyze {
        /// Input file; omit or use "-" for standard input
        file: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        expect_semitransitive: bool,
        #[arg(long)]
        expect_size: Option<usize>,
    },
    /// Rebuild worked instance K and diff it against the transcription
    VerifyExample { k: u8 },
    /// Exhaustively enumerate semitransitive subsemigroups at degree n
    Search {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        max_size: Option<usize>,
        /// "lemmas" or "none"
        #[arg(long, default_value = "lemmas")]
        prune: String,
        #[arg(long)]
        classify: bool,
        #[arg(long)]
        threads: Option<usize>,
        /// Node cap; required for degrees 5 and 6
        #[arg(long)]
        node_budget: Option<u64>,
    },
    /// Decide whether two semigroup files are conjugate by a relabeling
    Similar { file1: PathBuf, file2: PathBuf },
    /// Print the greatest proper divisor and the minimal cardinality bound
    Bound {
        #[arg(long)]
        n: u8,
    },
}

struct StderrProgress;

impl SearchProgress for StderrProgress {
    fn report(&self, stats: &SearchStats) {
        eprintln!(
            "search: {} nodes, {} semitransitive, pruned {}+{}+{}+{}",
            stats.nodes,
            stats.semitransitive_nodes,
            stats.pruned_size,
            stats.pruned_pairs,
            stats.pruned_idempotents,
            stats.pruned_symmetry
        );
    }
}

/// Runs the command line and returns the process exit code, writing
/// regular output to `out`. Diagnostics go to standard error.
pub fn run<I, S>(args: I, out: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return 2;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    File(#[from] FileError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("{0}")]
    Input(String),
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<u8, CliError> {
    match command {
        Command::Build {
            family,
            n,
            p,
            l,
            m,
            group,
            group_file,
            partition,
            out: out_file,
        } => {
            let family = Family::from_label(&family)
                .ok_or_else(|| CliError::Input(format!("unknown family {family:?}")))?;
            let group_gens = match (group, group_file) {
                (Some(_), Some(_)) => {
                    return Err(CliError::Input("--group and --group-file are exclusive".into()))
                }
                (Some(cycle), None) => Some(vec![PartialPerm::parse(&cycle, n)
                    .map_err(|e| CliError::Input(format!("bad --group: {e}")))?]),
                (None, Some(path)) => {
                    let text = fs::read_to_string(path)?;
                    let mut gens = Vec::new();
                    for line in text.lines() {
                        let line = line.trim();
                        if line.is_empty() || line.starts_with('#') {
                            continue;
                        }
                        gens.push(
                            PartialPerm::parse(line, n)
                                .map_err(|e| CliError::Input(format!("bad generator: {e}")))?,
                        );
                    }
                    Some(gens)
                }
                (None, None) => None,
            };
            let partition = partition.map(|text| parse_partition(&text)).transpose()?;
            let spec = BuildSpec {
                family: Some(family),
                n,
                p,
                l,
                m,
                group: group_gens,
                partition,
            };
            let s = build(&spec)?;
            let text = write_semigroup_file(s.degree(), s.elements());
            match out_file {
                Some(path) => fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(0)
        }
        Command::Analyze {
            file,
            json,
            expect_semitransitive,
            expect_size,
        } => {
            let text = read_input(file.as_deref())?;
            let (deg, elements) = parse_semigroup_file(&text)?;
            let report = analyze(deg, &elements);
            if json {
                let rendered =
                    serde_json::to_string_pretty(&report).expect("report serializes");
                writeln!(out, "{rendered}")?;
            } else {
                write!(out, "{}", render_report(&report))?;
            }
            let mut failed = false;
            if expect_semitransitive && !report.is_semitransitive {
                eprintln!("expectation failed: not semitransitive");
                failed = true;
            }
            if let Some(k) = expect_size {
                if report.size != k {
                    eprintln!("expectation failed: size {} instead of {k}", report.size);
                    failed = true;
                }
            }
            Ok(if failed { 1 } else { 0 })
        }
        Command::VerifyExample { k } => {
            let (s, diff) = build_example(k)?;
            writeln!(out, "instance {k}: {} elements rebuilt", s.len())?;
            for (line, err) in &diff.malformed_lines {
                writeln!(out, "malformed transcription line: {line}  ({err})")?;
            }
            for e in &diff.missing_from_transcription {
                writeln!(out, "constructed but not transcribed: {e}")?;
            }
            for e in &diff.extra_in_transcription {
                writeln!(out, "transcribed but not constructed: {e}")?;
            }
            let expected = documented_malformed_lines(k);
            let got: Vec<&str> = diff
                .malformed_lines
                .iter()
                .map(|(l, _)| l.as_str())
                .collect();
            let confined = got == expected
                && diff.extra_in_transcription.is_empty()
                && diff.missing_from_transcription.len() == expected.len();
            if confined {
                writeln!(
                    out,
                    "diff confined to the {} documented malformed line(s)",
                    expected.len()
                )?;
                Ok(0)
            } else {
                writeln!(out, "diff exceeds the documented lines")?;
                Ok(1)
            }
        }
        Command::Search {
            n,
            max_size,
            prune,
            classify: want_classify,
            threads,
            node_budget,
        } => {
            let prune = match prune.as_str() {
                "lemmas" => PruneMode::Lemmas,
                "none" => PruneMode::None,
                other => {
                    return Err(CliError::Input(format!(
                        "unknown prune mode {other:?} (use lemmas or none)"
                    )))
                }
            };
            let config = SearchConfig {
                n,
                max_size,
                prune,
                symmetry_breaking: true,
                threads: threads.unwrap_or(0),
                classify: want_classify,
                node_budget,
            };
            let result = minimal_search_with_progress(&config, Some(&StderrProgress))?;
            writeln!(
                out,
                "n={n} ground-bound={} max-size={}",
                bound(n),
                config.max_size.unwrap_or_else(|| bound(n))
            )?;
            match result.minimal_cardinality {
                Some(min) => writeln!(out, "minimal cardinality: {min}")?,
                None => writeln!(out, "no semitransitive subsemigroup within the cap")?,
            }
            writeln!(out, "similarity classes: {}", result.representatives.len())?;
            for (i, rep) in result.representatives.iter().enumerate() {
                let elems: Vec<String> =
                    rep.elements().iter().map(|e| e.to_string()).collect();
                writeln!(out, "class {}: {}", i + 1, elems.join(" "))?;
                if want_classify {
                    let matches = &result.classifications[i];
                    if matches.is_empty() {
                        writeln!(out, "  classification: unclassified")?;
                    } else {
                        let rendered: Vec<String> = matches
                            .iter()
                            .map(|m| {
                                let l = m.l.map(|v| format!(" l={v}")).unwrap_or_default();
                                format!(
                                    "{} p={} m={}{} group={}",
                                    m.family.label(),
                                    m.p,
                                    m.m,
                                    l,
                                    m.group
                                )
                            })
                            .collect();
                        writeln!(out, "  classification: {}", rendered.join("; "))?;
                    }
                }
            }
            let st = result.stats;
            eprintln!(
                "stats: nodes={} semitransitive={} pruned_size={} pruned_pairs={} pruned_idempotents={} pruned_symmetry={}",
                st.nodes,
                st.semitransitive_nodes,
                st.pruned_size,
                st.pruned_pairs,
                st.pruned_idempotents,
                st.pruned_symmetry
            );
            Ok(0)
        }
        Command::Similar { file1, file2 } => {
            let (d1, e1) = parse_semigroup_file(&fs::read_to_string(file1)?)?;
            let (d2, e2) = parse_semigroup_file(&fs::read_to_string(file2)?)?;
            if d1 != d2 {
                writeln!(out, "not similar")?;
                return Ok(1);
            }
            let s1 = Semigroup::from_elements(&e1)
                .map_err(|e| CliError::Input(format!("first input not closed: {e}")))?;
            let s2 = Semigroup::from_elements(&e2)
                .map_err(|e| CliError::Input(format!("second input not closed: {e}")))?;
            let both_semitransitive =
                semitrans::is_semitransitive(&s1) && semitrans::is_semitransitive(&s2);
            if d1 > 10 && !both_semitransitive {
                return Err(CliError::Input(
                    "similarity beyond degree 10 needs semitransitive inputs".into(),
                ));
            }
            match are_similar(&s1, &s2) {
                Some(sigma) => {
                    writeln!(out, "{sigma}")?;
                    Ok(0)
                }
                None => {
                    writeln!(out, "not similar")?;
                    Ok(1)
                }
            }
        }
        Command::Bound { n } => {
            if !(2..=crate::pperm::MAX_DEGREE).contains(&n) {
                return Err(CliError::Input(format!(
                    "need 2 <= n <= {}",
                    crate::pperm::MAX_DEGREE
                )));
            }
            writeln!(out, "p={} bound={}", gpd(n), bound(n))?;
            Ok(0)
        }
    }
}

fn read_input(path: Option<&str>) -> Result<String, CliError> {
    match path {
        None | Some("-") => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
        Some(path) => Ok(fs::read_to_string(path)?),
    }
}

fn parse_partition(text: &str) -> Result<Vec<PointSet>, CliError> {
    let mut blocks = Vec::new();
    for chunk in text.split('|') {
        let mut block = PointSet::EMPTY;
        for item in chunk.split(',') {
            let p: u8 = item
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("bad partition entry {item:?}")))?;
            if !(1..=crate::pperm::MAX_DEGREE).contains(&p) {
                return Err(CliError::Input(format!("partition point {p} out of range")));
            }
            block.insert(p);
        }
        blocks.push(block);
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_round_trip() {
        let s = crate::testutil::minimal_n2();
        let text = write_semigroup_file(s.degree(), s.elements());
        let (deg, elems) = parse_semigroup_file(&text).unwrap();
        assert_eq!(deg, 2);
        assert_eq!(elems.len(), 4);
        let reread = Semigroup::from_elements(&elems).unwrap();
        assert_eq!(reread, s);
    }

    #[test]
    fn file_parser_rejects_bad_input() {
        assert!(matches!(
            parse_semigroup_file("no header\n"),
            Err(FileError::BadHeader)
        ));
        assert!(matches!(
            parse_semigroup_file("n=2\n(1,2]\n(1,2]\n"),
            Err(FileError::Duplicate(3))
        ));
        assert!(matches!(
            parse_semigroup_file("n=2\n(1,5]\n"),
            Err(FileError::BadElement(2, _))
        ));
        assert!(matches!(
            parse_semigroup_file("n=2\n# only comments\n"),
            Err(FileError::Empty)
        ));
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let (deg, elems) =
            parse_semigroup_file("# leading comment\nn=2\n\n# inner\n0\n(1,2]\n").unwrap();
        assert_eq!(deg, 2);
        assert_eq!(elems.len(), 2);
    }

    #[test]
    fn analysis_of_the_minimal_degree_two_semigroup() {
        let s = crate::testutil::minimal_n2();
        let report = analyze(s.degree(), s.elements());
        assert!(report.is_closed && report.is_singular && report.is_semitransitive);
        assert!(!report.is_transitive);
        assert_eq!(report.size, 4);
        assert_eq!(report.bound, Some(4));
        assert_eq!(report.idempotents.len(), 2);
        assert_eq!(report.nilpotent_count, Some(1));
        assert_eq!(report.audits.len(), 8);
        assert!(report.audits.iter().all(|a| a.status != "fail"));
    }

    #[test]
    fn analysis_reports_are_byte_stable() {
        let s = crate::testutil::minimal_n2();
        let r1 = serde_json::to_string_pretty(&analyze(s.degree(), s.elements())).unwrap();
        let r2 = serde_json::to_string_pretty(&analyze(s.degree(), s.elements())).unwrap();
        assert_eq!(r1, r2);
        let t1 = render_report(&analyze(s.degree(), s.elements()));
        assert_eq!(t1, render_report(&analyze(s.degree(), s.elements())));
    }

    #[test]
    fn bound_command_output() {
        let mut out = Vec::new();
        let code = run(["semitransitive", "bound", "--n", "8"], &mut out);
        assert_eq!(code, 0);
        assert_eq!(String::from_utf8(out).unwrap(), "p=4 bound=13\n");
    }

    #[test]
    fn bound_command_rejects_small_degree() {
        let mut out = Vec::new();
        assert_eq!(run(["semitransitive", "bound", "--n", "1"], &mut out), 2);
    }

    #[test]
    fn unknown_arguments_exit_2() {
        let mut out = Vec::new();
        assert_eq!(run(["semitransitive", "frobnicate"], &mut out), 2);
    }
}
