//! Synthetic data subcommands. These exist so the whole pipeline can be
//! exercised end to end without flight data: a striped-texture corpus
//! for the classifier and model-driven logs for the identifier.

use serde_json::{json, Value};

use super::Ctx;
use crate::cli::{LogKind, SynthCorpusArgs, SynthLogArgs};
use crate::codec::{self, logs::ReportRow};
use crate::synth;

pub fn synth_corpus(ctx: &Ctx, args: &SynthCorpusArgs) -> anyhow::Result<Value> {
    anyhow::ensure!(args.size >= 16, "--size must be at least 16 pixels");
    anyhow::ensure!(args.train > 0, "--train must be positive");
    let manifest = synth::write_corpus(&args.out, ctx.seed, args.train, args.test, args.size)?;
    Ok(json!({
        "command": "synth-corpus",
        "train": args.train,
        "test": args.test,
        "size": args.size,
        "out": manifest,
    }))
}

pub fn synth_log(ctx: &Ctx, args: &SynthLogArgs) -> anyhow::Result<Value> {
    let classes = codec::model::read_class_set(&args.classes)?;
    let model = codec::model::read_property_model(&args.model, &classes)?;
    let rows = match args.kind {
        LogKind::Report => {
            let samples = synth::generate_report_samples(&model, args.per_class, ctx.seed);
            let rows: Vec<ReportRow> = samples.iter().map(ReportRow::from_identified).collect();
            codec::logs::write_report(&args.out, &rows, &classes)?;
            rows.len()
        }
        LogKind::Telemetry => {
            let samples = synth::generate_telemetry(
                &model,
                args.per_class,
                ctx.seed,
                &ctx.config.wheel,
                &ctx.config.soil,
                &ctx.config.solver,
            )?;
            codec::logs::write_interaction_log(&args.out, &samples, &classes)?;
            samples.len()
        }
    };
    Ok(json!({
        "command": "synth-log",
        "kind": match args.kind { LogKind::Report => "report", LogKind::Telemetry => "telemetry" },
        "per_class": args.per_class,
        "rows": rows,
        "out": args.out,
    }))
}
