use std::io::Write;

fn main() {
    let out = qcov::cli::run(std::env::args_os(), &mut std::io::stdin());
    // a closed pipe downstream is not an error of ours
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
