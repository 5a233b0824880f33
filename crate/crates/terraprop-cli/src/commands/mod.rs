//! Subcommand implementations. Each returns the run's JSON summary; the
//! dispatcher prints it as the last stdout line.

mod infer;
mod labeling;
mod render;
mod seg;
mod synthesize;
mod terra;

use serde_json::Value;

use crate::cli::{Cli, Command};
use crate::config::PipelineConfig;

/// Global flags plus the loaded pipeline constants.
pub struct Ctx {
    pub seed: u64,
    pub threads: usize,
    pub config: PipelineConfig,
}

pub fn run(cli: Cli) -> anyhow::Result<()> {
    let config = PipelineConfig::load(cli.config.as_deref())?;
    let ctx = Ctx { seed: cli.seed, threads: cli.threads.max(1), config };
    let summary = dispatch(&ctx, cli.command)?;
    println!("{summary}");
    Ok(())
}

fn dispatch(ctx: &Ctx, command: Command) -> anyhow::Result<Value> {
    match command {
        Command::Weights(args) => seg::weights(ctx, &args),
        Command::Train(args) => seg::train(ctx, &args),
        Command::Predict(args) => seg::predict(ctx, &args),
        Command::Metrics(args) => seg::metrics_cmd(ctx, &args),
        Command::RatioExp(args) => seg::ratio_exp(ctx, &args),
        Command::Identify(args) => terra::identify(ctx, &args),
        Command::Fit(args) => terra::fit(ctx, &args),
        Command::Infer(args) => infer::infer(ctx, &args),
        Command::Route(args) => infer::route(ctx, &args),
        Command::Flags(args) => infer::flags(ctx, &args),
        Command::Propagate(args) => labeling::propagate(ctx, &args),
        Command::Render(args) => render::render(ctx, &args),
        Command::SynthCorpus(args) => synthesize::synth_corpus(ctx, &args),
        Command::SynthLog(args) => synthesize::synth_log(ctx, &args),
    }
}
