//! Segmentation subcommands: class weights, training, prediction,
//! scoring, and the annotation-ratio experiment.

use anyhow::ensure;
use serde_json::{json, Value};
use terraprop::segmentation::{
    annotation_ratio_experiment, class_proportions, extract_features, metrics, train_classifier,
    AnnotatedSample, ClassWeights, ConfusionMatrix, Corpus, FeatureConfig, TrainConfig,
};
use terraprop::LabelImage;

use super::Ctx;
use crate::cli::{Annotation, MetricsArgs, PredictArgs, RatioArgs, TrainArgs, WeightsArgs};
use crate::codec;
use crate::synth::{read_corpus, LoadedCorpus, SynthSample};

pub fn weights(ctx: &Ctx, args: &WeightsArgs) -> anyhow::Result<Value> {
    let mut images = Vec::with_capacity(args.labels.len());
    let mut classes = None;
    for path in &args.labels {
        let (labels, count) = codec::raster::read_labels(path)?;
        match classes {
            None => classes = Some(count),
            Some(expected) => ensure!(
                count == expected,
                "{}: declares {count} classes, previous rasters declare {expected}",
                path.display()
            ),
        }
        images.push(labels);
    }
    let classes = classes.expect("labels is non-empty by clap");
    let refs: Vec<&LabelImage> = images.iter().collect();
    let proportions = class_proportions(&refs, classes)?;
    let c = args.weight_constant.unwrap_or(ctx.config.weight_constant);
    let weights = ClassWeights::from_proportions(&proportions, c)?;
    Ok(json!({
        "command": "weights",
        "classes": classes,
        "weight_constant": c,
        "proportions": proportions,
        "weights": weights.beta(),
    }))
}

fn train_config(
    ctx: &Ctx,
    learning_rate: Option<f64>,
    decay: Option<f64>,
    epochs: Option<usize>,
) -> TrainConfig {
    let mut config = ctx.config.train;
    config.seed = ctx.seed;
    if let Some(v) = learning_rate {
        config.learning_rate = v;
    }
    if let Some(v) = decay {
        config.decay = v;
    }
    if let Some(v) = epochs {
        config.epochs = v;
    }
    config
}

pub fn train(ctx: &Ctx, args: &TrainArgs) -> anyhow::Result<Value> {
    let corpus = read_corpus(&args.corpus)?;
    ensure!(!corpus.train.is_empty(), "{}: corpus has no training images", args.corpus.display());
    let feature_config = FeatureConfig::default();
    let features: Vec<_> =
        corpus.train.iter().map(|s| extract_features(&s.image, &feature_config)).collect();
    let feature_refs: Vec<_> = features.iter().collect();
    let label_refs: Vec<&LabelImage> = corpus
        .train
        .iter()
        .map(|s| match args.annotation {
            Annotation::Full => &s.full,
            Annotation::Partial => &s.partial,
        })
        .collect();

    let proportions = class_proportions(&label_refs, corpus.classes.len())?;
    let weight_c = args.weight_constant.unwrap_or(ctx.config.weight_constant);
    let class_weights = ClassWeights::from_proportions(&proportions, weight_c)?;
    let config = train_config(ctx, args.learning_rate, args.decay, args.epochs);
    let (classifier, report) = train_classifier(
        &feature_refs,
        &label_refs,
        &class_weights,
        &corpus.classes,
        &feature_config,
        &config,
    )?;
    codec::model::write_classifier(&args.out, &classifier)?;
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(json!({
        "command": "train",
        "images": corpus.train.len(),
        "classes": corpus.classes.len(),
        "epochs": config.epochs,
        "final_loss": report.final_loss(),
        "warnings": report.warnings.len(),
        "out": args.out,
    }))
}

pub fn predict(_ctx: &Ctx, args: &PredictArgs) -> anyhow::Result<Value> {
    let classifier = codec::model::read_classifier(&args.classifier)?;
    let image = codec::ppm::read_image(&args.image)?;
    let features = extract_features(&image, classifier.feature_config());
    let prob = classifier.predict_probabilities(&features)?;
    codec::tensor::write_probability_map(&args.out, &prob)?;
    if let Some(labels_out) = &args.labels_out {
        let labels = prob.argmax_labels();
        codec::raster::write_labels(labels_out, &labels, prob.classes())?;
    }
    Ok(json!({
        "command": "predict",
        "width": prob.width(),
        "height": prob.height(),
        "classes": prob.classes(),
        "out": args.out,
        "labels_out": args.labels_out,
    }))
}

pub fn metrics_cmd(_ctx: &Ctx, args: &MetricsArgs) -> anyhow::Result<Value> {
    let classes = codec::model::read_class_set(&args.classes)?;
    let (truth, truth_classes) = codec::raster::read_labels(&args.truth)?;
    let (prediction, pred_classes) = codec::raster::read_labels(&args.prediction)?;
    for (path, count) in [(&args.truth, truth_classes), (&args.prediction, pred_classes)] {
        ensure!(
            count == classes.len(),
            "{}: declares {count} classes, class set has {}",
            path.display(),
            classes.len()
        );
    }
    let cm = ConfusionMatrix::from_labels(&prediction, &truth, classes.len())?;
    let scores = metrics(&cm)?;
    for (k, name) in classes.names().enumerate() {
        let fmt = |v: Option<f64>| match v {
            Some(v) => format!("{v:.4}"),
            None => "absent".to_owned(),
        };
        println!(
            "{name}: iou={} recall={}",
            fmt(scores.per_class_iou[k]),
            fmt(scores.per_class_recall[k])
        );
    }
    if let Some(out) = &args.out {
        codec::logs::write_metrics(out, &scores, &classes)?;
    }
    Ok(json!({
        "command": "metrics",
        "pixel_accuracy": scores.pixel_accuracy,
        "mean_iou": scores.mean_iou,
        "mean_iou_all_classes": scores.mean_iou_all_classes,
        "scored_pixels": cm.total(),
        "out": args.out,
    }))
}

fn annotate(samples: &[SynthSample], feature_config: &FeatureConfig) -> Vec<AnnotatedSample> {
    samples
        .iter()
        .map(|s| AnnotatedSample {
            features: extract_features(&s.image, feature_config),
            full: s.full.clone(),
            partial: s.partial.clone(),
        })
        .collect()
}

pub fn ratio_exp(ctx: &Ctx, args: &RatioArgs) -> anyhow::Result<Value> {
    let loaded: LoadedCorpus = read_corpus(&args.corpus)?;
    let feature_config = FeatureConfig::default();
    let corpus = Corpus {
        class_set: loaded.classes.clone(),
        feature_config,
        train: annotate(&loaded.train, &feature_config),
        test: annotate(&loaded.test, &feature_config),
    };
    let config = train_config(ctx, args.learning_rate, args.decay, args.epochs);
    let weight_c = args.weight_constant.unwrap_or(ctx.config.weight_constant);
    let points = annotation_ratio_experiment(&corpus, &args.ratios, &config, weight_c)?;
    codec::logs::write_ratio_curve(&args.out, &points)?;
    let rows: Vec<Value> = points
        .iter()
        .map(|p| {
            json!({
                "ratio": p.ratio,
                "full_count": p.full_count,
                "pixel_accuracy": p.pixel_accuracy,
                "mean_iou": p.mean_iou,
            })
        })
        .collect();
    Ok(json!({
        "command": "ratio-exp",
        "points": rows,
        "out": args.out,
    }))
}
