use std::io::{self, IsTerminal};
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let stdout = io::stdout();
    let color = stdout.is_terminal() && std::env::var_os(promisegraph::cli::NO_COLOR_ENV).is_none();
    let code = promisegraph::cli::run_styled(
        &args,
        &mut io::stdin().lock(),
        &mut stdout.lock(),
        &mut io::stderr().lock(),
        color,
    );
    ExitCode::from(code)
}
