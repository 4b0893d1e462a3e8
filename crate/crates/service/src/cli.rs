use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use geo_reverse_core::benchmark::{self, SuiteConfig};
use geo_reverse_core::search_index::DEFAULT_LIMIT;
use geo_reverse_core::synthetic::{self, Shape};
use geo_reverse_core::{reverse, Gazetteer, LoadOptions};

use crate::api::{self, Engine};

#[derive(Debug, Parser)]
#[command(
    name = "geo-reverse",
    version,
    about = "Cascade vs. reverse lookup over a hierarchical gazetteer"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a `code,name` CSV and report node counts per level.
    Ingest {
        csv: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Serve the read-only JSON API.
    Serve {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, env = "GEO_REVERSE_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Allow cross-origin requests from any origin.
        #[arg(long)]
        cors_any: bool,
    },
    /// Print leaf-level suggestions for a query.
    Search {
        #[command(flatten)]
        data: DataArgs,
        query: String,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Time both strategies on the same seeded targets.
    Bench {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, default_value_t = benchmark::DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = benchmark::DEFAULT_WARMUP)]
        warmup: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
        /// Characters typed before picking a suggestion.
        #[arg(long, default_value_t = benchmark::DEFAULT_PREFIX_LEN)]
        prefix_len: usize,
        /// Write `strategy,step,median_us,p95_us` rows here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a synthetic gazetteer CSV.
    Synth {
        #[arg(long)]
        out: PathBuf,
        /// Fan-out per level, outermost first.
        #[arg(long, value_delimiter = ',', default_values_t = [25, 8, 9])]
        shape: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// `code,name` CSV to load.
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
}

fn load(path: &PathBuf, depth: usize) -> Result<Gazetteer> {
    Gazetteer::from_csv_path(path, &LoadOptions::with_depth(depth))
        .with_context(|| format!("invalid gazetteer {}", path.display()))
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Ingest { csv, depth } => {
            let g = load(&csv, depth)?;
            println!("{}: {} nodes, depth {}", csv.display(), g.len(), g.depth());
            for (level, count) in g.level_counts() {
                println!("  {} {:<10} {}", level.ordinal, level.name, count);
            }
        }
        Command::Serve {
            data,
            port,
            host,
            cors_any,
        } => {
            let g = load(&data.data, data.depth)?;
            let engine = Arc::new(Engine::new(Arc::new(g)));
            let addr: SocketAddr = format!("{host}:{port}")
                .parse()
                .with_context(|| format!("bad listen address {host}:{port}"))?;
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(async move {
                let listener = tokio::net::TcpListener::bind(addr)
                    .await
                    .with_context(|| format!("cannot bind {addr}"))?;
                eprintln!("listening on http://{}", listener.local_addr()?);
                axum::serve(listener, api::router(engine, cors_any))
                    .with_graceful_shutdown(async {
                        let _ = tokio::signal::ctrl_c().await;
                    })
                    .await?;
                anyhow::Ok(())
            })?;
        }
        Command::Search { data, query, limit } => {
            let g = Arc::new(load(&data.data, data.depth)?);
            let index = geo_reverse_core::SearchIndex::build_leaf(g);
            let candidates = reverse::suggest(&index, &query, limit)?;
            if candidates.is_empty() {
                println!("no matches");
            }
            for c in candidates {
                let path: Vec<&str> = c.path.levels.iter().map(|e| e.name.as_str()).collect();
                println!(
                    "{:>3}. {} {:<24} [{}] {}",
                    c.rank + 1,
                    c.node.code,
                    c.node.name,
                    c.match_class,
                    path.join(" > ")
                );
            }
        }
        Command::Bench {
            data,
            trials,
            warmup,
            seed,
            limit,
            prefix_len,
            out,
        } => {
            let g = Arc::new(load(&data.data, data.depth)?);
            let index = geo_reverse_core::SearchIndex::build_leaf(g.clone());
            let config = SuiteConfig {
                trials,
                warmup,
                seed,
                limit,
                typed_prefix_len: prefix_len,
            };
            let report = benchmark::run_suite(&g, &index, &config)?;
            print!("{}", report.render_table());
            if let Some(out) = out {
                std::fs::write(&out, report.to_csv())
                    .with_context(|| format!("cannot write {}", out.display()))?;
                eprintln!("wrote {}", out.display());
            }
        }
        Command::Synth { out, shape, seed } => {
            let shape = Shape { fanout: shape };
            let mut csv = String::from("code,name\n");
            for (code, name) in synthetic::rows(&shape, seed) {
                csv.push_str(&format!("{code},{name}\n"));
            }
            std::fs::write(&out, csv).with_context(|| format!("cannot write {}", out.display()))?;
            eprintln!("wrote {} ({} leaves)", out.display(), shape.leaves());
        }
    }
    Ok(())
}
