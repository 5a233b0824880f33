//! Command-line definition. Every subcommand is deterministic given
//! `--seed`, writes outputs atomically, and prints a single-line JSON
//! summary as the last line of stdout.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "terraprop",
    version,
    about = "Terrain mechanical property prediction pipeline",
    long_about = "Segmentation, wheel-soil identification, and property inference \
                  tools. Each run is deterministic for a fixed --seed, output files \
                  are written atomically, and the last stdout line is a JSON summary."
)]
pub struct Cli {
    /// Seed for every stochastic step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads for map inference (output is identical for any value).
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    /// JSON config with pipeline constants; defaults apply when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute inverse-log class weights from annotation label rasters.
    Weights(WeightsArgs),
    /// Train the pixel classifier on a corpus.
    Train(TrainArgs),
    /// Run the classifier on an image; write probability and label rasters.
    Predict(PredictArgs),
    /// Score a predicted label raster against a reference annotation.
    Metrics(MetricsArgs),
    /// Retrain at several full-annotation ratios and tabulate test quality.
    RatioExp(RatioArgs),
    /// Identify terrain parameters from a wheel interaction log.
    Identify(IdentifyArgs),
    /// Fit per-class property Gaussians from an identification report.
    Fit(FitArgs),
    /// Turn class probabilities into property mean/uncertainty maps.
    Infer(InferArgs),
    /// Sample property maps along planned wheel tracks.
    Route(RouteArgs),
    /// Screen property maps into a hazard flag raster.
    Flags(FlagsArgs),
    /// Reproject labels from one camera frame into another.
    Propagate(PropagateArgs),
    /// Render rasters to PPM images.
    Render(RenderArgs),
    /// Generate a synthetic striped-texture corpus.
    SynthCorpus(SynthCorpusArgs),
    /// Generate a synthetic interaction log or identification report.
    SynthLog(SynthLogArgs),
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    /// Label rasters to pool (repeatable).
    #[arg(long, required = true, num_args = 1..)]
    pub labels: Vec<PathBuf>,
    /// Weight constant c in w = 1/ln(c + p).
    #[arg(long)]
    pub weight_constant: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Corpus manifest (corpus.json).
    #[arg(long)]
    pub corpus: PathBuf,
    /// Which annotation layer to train on.
    #[arg(long, value_enum, default_value_t = Annotation::Partial)]
    pub annotation: Annotation,
    /// Output classifier JSON.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub learning_rate: Option<f64>,
    #[arg(long)]
    pub decay: Option<f64>,
    #[arg(long)]
    pub epochs: Option<usize>,
    #[arg(long)]
    pub weight_constant: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Annotation {
    Full,
    Partial,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    /// Input PPM image.
    #[arg(long)]
    pub image: PathBuf,
    /// Classifier JSON from `train`.
    #[arg(long)]
    pub classifier: PathBuf,
    /// Output probability tensor.
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the argmax label raster here.
    #[arg(long)]
    pub labels_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// Reference label raster.
    #[arg(long)]
    pub truth: PathBuf,
    /// Predicted label raster.
    #[arg(long)]
    pub prediction: PathBuf,
    /// Class set JSON naming the label indices.
    #[arg(long)]
    pub classes: PathBuf,
    /// Optional per-class CSV output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RatioArgs {
    /// Corpus manifest (corpus.json).
    #[arg(long)]
    pub corpus: PathBuf,
    /// Full-annotation ratios to evaluate.
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.1, 0.2, 1.0])]
    pub ratios: Vec<f64>,
    /// Output CSV of ratio curve points.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub learning_rate: Option<f64>,
    #[arg(long)]
    pub decay: Option<f64>,
    #[arg(long)]
    pub epochs: Option<usize>,
    #[arg(long)]
    pub weight_constant: Option<f64>,
}

#[derive(Debug, Args)]
pub struct IdentifyArgs {
    /// Interaction log CSV (t, F_N, M_R, omega, v, z, label).
    #[arg(long)]
    pub log: PathBuf,
    /// Class set JSON for the log's label column.
    #[arg(long)]
    pub classes: PathBuf,
    /// Output identification report CSV.
    #[arg(long)]
    pub out: PathBuf,
    /// Moving-average window in seconds (0 disables smoothing).
    #[arg(long)]
    pub smooth: Option<f64>,
    /// Keep one sample per period in seconds.
    #[arg(long)]
    pub downsample: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Identification report CSV from `identify`.
    #[arg(long)]
    pub report: PathBuf,
    /// Class set JSON.
    #[arg(long)]
    pub classes: PathBuf,
    /// Output property model JSON.
    #[arg(long)]
    pub out: PathBuf,
    /// Classes that default to hard-ground properties when undriven.
    #[arg(long, value_delimiter = ',', default_values_t = [String::from("rock")])]
    pub default_hard: Vec<String>,
    /// Classes that default to zero properties when undriven.
    #[arg(long, value_delimiter = ',', default_values_t = [String::from("background")])]
    pub default_zero: Vec<String>,
}

#[derive(Debug, Args)]
pub struct InferArgs {
    /// Class probability tensor from `predict`.
    #[arg(long)]
    pub probability: PathBuf,
    /// Property model JSON from `fit`.
    #[arg(long)]
    pub model: PathBuf,
    /// Class set JSON ordering the model's classes.
    #[arg(long)]
    pub classes: PathBuf,
    /// Output sinkage-exponent property map.
    #[arg(long)]
    pub out_n: PathBuf,
    /// Output friction-angle property map.
    #[arg(long)]
    pub out_phi: PathBuf,
}

#[derive(Debug, Args)]
pub struct RouteArgs {
    /// Route CSV (wheel, row, col[, arclength][, truth_N, truth_phi]).
    #[arg(long)]
    pub route: PathBuf,
    /// Sinkage-exponent property map.
    #[arg(long)]
    pub map_n: PathBuf,
    /// Friction-angle property map.
    #[arg(long)]
    pub map_phi: PathBuf,
    /// Output prediction CSV.
    #[arg(long)]
    pub out: PathBuf,
    /// Interval half-width in standard deviations for coverage.
    #[arg(long, default_value_t = 1.0)]
    pub multiplier: f64,
}

#[derive(Debug, Args)]
pub struct FlagsArgs {
    /// Sinkage-exponent property map.
    #[arg(long)]
    pub map_n: PathBuf,
    /// Friction-angle property map.
    #[arg(long)]
    pub map_phi: PathBuf,
    /// Output flag raster.
    #[arg(long)]
    pub out: PathBuf,
    /// Flag SOFT where mean N exceeds this.
    #[arg(long)]
    pub soft_n_max: Option<f64>,
    /// Flag SLIPPERY where mean phi (deg) falls below this.
    #[arg(long)]
    pub slippery_phi_min: Option<f64>,
    /// Flag UNCERTAIN where sigma N exceeds this.
    #[arg(long)]
    pub sigma_n_max: Option<f64>,
    /// Flag UNCERTAIN where sigma phi (deg) exceeds this.
    #[arg(long)]
    pub sigma_phi_max: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PropagateArgs {
    /// Source label raster.
    #[arg(long)]
    pub labels: PathBuf,
    /// Source depth tensor (camera-frame z, meters).
    #[arg(long)]
    pub src_depth: PathBuf,
    /// Destination depth tensor.
    #[arg(long)]
    pub dst_depth: PathBuf,
    /// Pose CSV (frame, qw, qx, qy, qz, tx, ty, tz), camera-to-world.
    #[arg(long)]
    pub poses: PathBuf,
    /// Frame id of the source camera in the pose CSV.
    #[arg(long)]
    pub src_frame: String,
    /// Frame id of the destination camera.
    #[arg(long)]
    pub dst_frame: String,
    /// Pinhole intrinsics JSON.
    #[arg(long)]
    pub camera: PathBuf,
    /// Output label raster in the destination frame.
    #[arg(long)]
    pub out: PathBuf,
    /// Depth agreement tolerance in meters.
    #[arg(long)]
    pub z_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[command(subcommand)]
    pub mode: RenderMode,
}

#[derive(Debug, Subcommand)]
pub enum RenderMode {
    /// Map one plane of a property map through the fixed 256-entry LUT.
    Heatmap(RenderHeatmapArgs),
    /// Paint a label raster with its class colors.
    Labels(RenderLabelsArgs),
    /// Blend class colors over a camera image.
    Overlay(RenderOverlayArgs),
}

#[derive(Debug, Args)]
pub struct RenderHeatmapArgs {
    /// Property map tensor.
    #[arg(long)]
    pub map: PathBuf,
    /// Which parameter the map holds.
    #[arg(long, value_enum)]
    pub parameter: ParameterArg,
    /// Which plane to render.
    #[arg(long, value_enum, default_value_t = PlaneArg::Mean)]
    pub plane: PlaneArg,
    /// Value mapped to the cold end (data minimum when omitted).
    #[arg(long)]
    pub min: Option<f64>,
    /// Value mapped to the hot end (data maximum when omitted).
    #[arg(long)]
    pub max: Option<f64>,
    /// Output PPM.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParameterArg {
    N,
    Phi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlaneArg {
    Mean,
    Std,
}

#[derive(Debug, Args)]
pub struct RenderLabelsArgs {
    /// Label raster.
    #[arg(long)]
    pub labels: PathBuf,
    /// Class set JSON providing the palette.
    #[arg(long)]
    pub classes: PathBuf,
    /// Output PPM.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RenderOverlayArgs {
    /// Camera image PPM.
    #[arg(long)]
    pub image: PathBuf,
    /// Label raster, same shape as the image.
    #[arg(long)]
    pub labels: PathBuf,
    /// Class set JSON providing the palette.
    #[arg(long)]
    pub classes: PathBuf,
    /// Label opacity in [0, 1].
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// Output PPM.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SynthCorpusArgs {
    /// Output directory; the manifest lands at <out>/corpus.json.
    #[arg(long)]
    pub out: PathBuf,
    /// Training images.
    #[arg(long, default_value_t = 20)]
    pub train: usize,
    /// Test images.
    #[arg(long, default_value_t = 10)]
    pub test: usize,
    /// Square image side in pixels.
    #[arg(long, default_value_t = 128)]
    pub size: usize,
}

#[derive(Debug, Args)]
pub struct SynthLogArgs {
    /// What to generate.
    #[arg(long, value_enum)]
    pub kind: LogKind,
    /// Property model JSON the samples are drawn from.
    #[arg(long)]
    pub model: PathBuf,
    /// Class set JSON ordering the model's classes.
    #[arg(long)]
    pub classes: PathBuf,
    /// Samples per class.
    #[arg(long, default_value_t = 100)]
    pub per_class: usize,
    /// Output CSV.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LogKind {
    /// Identification report rows drawn straight from the model Gaussians.
    Report,
    /// Interaction telemetry pushed through the forward wheel model.
    Telemetry,
}
