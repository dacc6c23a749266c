use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let inv = smtk::execute(std::env::args_os());
    if !inv.stdout.is_empty() {
        println!("{}", inv.stdout);
    }
    if !inv.stderr.is_empty() {
        let _ = writeln!(std::io::stderr(), "{}", inv.stderr);
    }
    ExitCode::from(inv.code as u8)
}
