use std::io;

fn main() {
    let env_seed = std::env::var(opineq::harness::cli::SEED_ENV).ok();
    let code = opineq::harness::cli::run(
        std::env::args_os(),
        env_seed.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    std::process::exit(code);
}
