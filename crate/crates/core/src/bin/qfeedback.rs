use clap::Parser;
use qfeedback::cli::{exit_code, run, Args, RunConfig};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    let result = RunConfig::from_args(&args).and_then(|config| {
        let report = run(&config)?;
        println!("wrote {}", config.out.display());
        for (k, v) in &report.summary {
            println!("{k} = {v}");
        }
        Ok(())
    });
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(exit_code(&e));
    }
}
