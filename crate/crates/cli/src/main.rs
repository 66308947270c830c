fn main() {
    let report = polyterm_cli::run_cli(std::env::args_os());
    print!("{}", report.stdout);
    eprint!("{}", report.stderr);
    eprintln!("time {:.3}s", report.elapsed.as_secs_f64());
    std::process::exit(report.exit_code());
}
