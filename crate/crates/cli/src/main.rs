use clap::Parser;
use std::io::Write;

fn main() {
    let stdout = std::io::stdout();
    let (mut out, mut err) = (stdout.lock(), std::io::stderr());
    let code = match severi_lab::Cli::try_parse() {
        Ok(cli) => {
            let level = match cli.verbose {
                0 => log::LevelFilter::Warn,
                1 => log::LevelFilter::Info,
                2 => log::LevelFilter::Debug,
                _ => log::LevelFilter::Trace,
            };
            env_logger::Builder::new().filter_level(level).target(env_logger::Target::Stderr).init();
            severi_lab::execute(&cli, &mut out, &mut err)
        }
        Err(e) => severi_lab::report_clap_error(&e, &mut out, &mut err),
    };
    let _ = out.flush();
    std::process::exit(code);
}
