use cmgamma::cli;
use cmgamma::inequalities::Registry;

fn main() {
    let code = cli::run(std::env::args_os(), Registry::standard(), &mut std::io::stdout().lock(), &mut std::io::stderr());
    std::process::exit(code);
}
