use std::io::Write;

fn main() {
    let mut stdout = std::io::stdout();
    let code = semitransitive::cli::run(std::env::args(), &mut stdout);
    let _ = stdout.flush();
    std::process::exit(code as i32);
}
