use clap::Parser;

fn main() {
    let cli = arfold::cli::Cli::parse();
    let stdout = std::io::stdout();
    match arfold::cli::run(&cli, &mut stdout.lock()) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
