use std::io::Write;

use clap::Parser;
use etaphase_cli::{run, Cli};

fn main() {
    let out = run(&Cli::parse());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
