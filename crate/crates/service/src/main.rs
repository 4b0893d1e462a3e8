use clap::Parser;

fn main() -> anyhow::Result<()> {
    geo_reverse::cli::run(geo_reverse::cli::Cli::parse())
}
