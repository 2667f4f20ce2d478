use clap::Parser;

fn main() {
    let cli = cmapf::cli::Cli::parse();
    let code = cmapf::cli::run(cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
