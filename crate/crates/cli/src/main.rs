use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let stdin = std::io::stdin();
    let mut input = stdin.lock();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    let code = alea_cli::run(&args, &mut input, &mut out, &mut err);
    let _ = out.flush();
    std::process::exit(code);
}
