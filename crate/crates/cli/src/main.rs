use std::process::ExitCode;

fn main() -> ExitCode {
    grassbwb_cli::configure_threads();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let outcome = grassbwb_cli::run(&args);
    if outcome.code == 0 {
        print!("{}", outcome.output);
    } else {
        eprint!("{}", outcome.output);
    }
    ExitCode::from(outcome.code as u8)
}
