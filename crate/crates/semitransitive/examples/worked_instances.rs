//! Rebuilds the three worked instances and diffs each against its
//! embedded transcription. Two transcriptions carry malformed lines; the
//! diffs stay confined to exactly those.
//!
//! Run with: cargo run --example worked_instances

use semitransitive::constructors::build_example;

fn main() {
    for k in 1..=3u8 {
        let (s, diff) = build_example(k).expect("instances build");
        println!("worked instance {k}: n={}, {} elements", s.degree(), s.len());
        if diff.is_clean() {
            println!("  transcription matches exactly");
        }
        for (line, err) in &diff.malformed_lines {
            println!("  malformed transcription line: {line}");
            println!("    parse error: {err}");
        }
        for e in &diff.missing_from_transcription {
            println!("  constructed element not in the transcription: {e}");
        }
        for e in &diff.extra_in_transcription {
            println!("  transcribed element not constructed: {e}");
        }
        println!();
    }
}
