use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cwfusion::{
    ApproxRule, CannyParams, CombineMode, Connectivity, DetailRule, FusionRule, HsvSource,
    OverlayMode, PipelineConfig,
};

#[derive(Debug, Parser)]
#[command(
    name = "cwfusion",
    version,
    about = "Visual + infrared fusion for concealed-object detection"
)]
pub struct Cli {
    /// Write a synthetic scene pair (visual.ppm, ir.pgm, truth.txt) into DIR
    #[arg(long, value_name = "DIR")]
    pub make_synthetic: Option<PathBuf>,

    /// Edge length of the synthetic scene
    #[arg(long, value_name = "N", default_value_t = 512)]
    pub synthetic_size: usize,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full detection pipeline and write the contour overlay
    Detect(DetectArgs),
    /// Wavelet-fuse two equally sized images
    Fuse(FuseArgs),
    /// Print the Otsu threshold of an image (color input is converted to luma)
    Otsu(OtsuArgs),
    /// Canny edge mask of an image (color input is converted to luma)
    Canny(CannyArgs),
    /// Forward + inverse DWT of an image; prints the max absolute reconstruction error
    DwtRoundtrip(RoundtripArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CombineArg {
    Saturate,
    Mean,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum HsvSourceArg {
    Ir,
    Visual,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ApproxArg {
    Average,
    SelectA,
    SelectB,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DetailArg {
    MaxAbs,
    Average,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OverlayArg {
    Multiply,
    Paint,
}

#[derive(Debug, Args)]
pub struct FusionRuleArgs {
    /// Rule for the approximation band
    #[arg(long, value_enum, default_value = "average")]
    pub approx_rule: ApproxArg,

    /// Rule for the detail bands
    #[arg(long, value_enum, default_value = "max-abs")]
    pub detail_rule: DetailArg,
}

impl FusionRuleArgs {
    pub fn rule(&self) -> FusionRule {
        FusionRule {
            approx: match self.approx_rule {
                ApproxArg::Average => ApproxRule::Average,
                ApproxArg::SelectA => ApproxRule::SelectA,
                ApproxArg::SelectB => ApproxRule::SelectB,
            },
            detail: match self.detail_rule {
                DetailArg::MaxAbs => DetailRule::MaxAbs,
                DetailArg::Average => DetailRule::Average,
            },
        }
    }
}

#[derive(Debug, Args)]
pub struct CannyFlags {
    /// Gaussian blur standard deviation in pixels
    #[arg(long, default_value_t = 1.4)]
    pub sigma: f64,

    /// Weak hysteresis threshold, fraction of the largest gradient magnitude
    #[arg(long, default_value_t = 0.10)]
    pub low: f64,

    /// Strong hysteresis threshold, fraction of the largest gradient magnitude
    #[arg(long, default_value_t = 0.20)]
    pub high: f64,
}

impl CannyFlags {
    pub fn params(&self) -> CannyParams {
        CannyParams {
            sigma: self.sigma,
            low_frac: self.low,
            high_frac: self.high,
        }
    }
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    /// Visual (RGB) image, PPM
    #[arg(long)]
    pub visual: PathBuf,

    /// Infrared image, PGM or PPM; resized to the visual image's dimensions
    #[arg(long)]
    pub ir: PathBuf,

    /// Output path for the contour overlay (PPM)
    #[arg(long)]
    pub out: PathBuf,

    /// Write every intermediate stage as stage_NN_<name>.ppm/.pgm into DIR
    #[arg(long, value_name = "DIR")]
    pub dump_stages: Option<PathBuf>,

    /// Write a key=value detection report
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,

    /// Wavelet decomposition levels (1-4)
    #[arg(long, default_value_t = 2)]
    pub levels: usize,

    /// Which image is converted to HSV before fusion
    #[arg(long, value_enum, default_value = "ir")]
    pub hsv_source: HsvSourceArg,

    /// How images are added
    #[arg(long, value_enum, default_value = "saturate")]
    pub combine: CombineArg,

    /// Minimum kept component area as a fraction of the image (heuristic default)
    #[arg(long, value_name = "F", default_value_t = 0.0005)]
    pub min_area: f64,

    /// Maximum kept component area as a fraction of the image (heuristic default)
    #[arg(long, value_name = "F", default_value_t = 0.15)]
    pub max_area: f64,

    /// Pixel adjacency for connected components
    #[arg(long, default_value_t = 8, value_parser = parse_connectivity)]
    pub connectivity: u8,

    /// Contour rendering: paint it red over the visual image, or keep only
    /// the visual pixels under the contour
    #[arg(long, value_enum, default_value = "paint")]
    pub overlay: OverlayArg,

    #[command(flatten)]
    pub fusion: FusionRuleArgs,

    #[command(flatten)]
    pub canny: CannyFlags,
}

fn parse_connectivity(s: &str) -> Result<u8, String> {
    match s {
        "4" => Ok(4),
        "8" => Ok(8),
        _ => Err(format!("connectivity must be 4 or 8, got {s}")),
    }
}

impl DetectArgs {
    pub fn config(&self) -> PipelineConfig {
        PipelineConfig {
            combine: match self.combine {
                CombineArg::Saturate => CombineMode::Saturate,
                CombineArg::Mean => CombineMode::Mean,
            },
            hsv_source: match self.hsv_source {
                HsvSourceArg::Ir => HsvSource::Ir,
                HsvSourceArg::Visual => HsvSource::Visual,
            },
            dwt_levels: self.levels,
            fusion_rule: self.fusion.rule(),
            connectivity: if self.connectivity == 4 {
                Connectivity::Four
            } else {
                Connectivity::Eight
            },
            min_area_frac: self.min_area,
            max_area_frac: self.max_area,
            canny: self.canny.params(),
            overlay: match self.overlay {
                OverlayArg::Multiply => OverlayMode::Multiply,
                OverlayArg::Paint => OverlayMode::default(),
            },
        }
    }
}

#[derive(Debug, Args)]
pub struct FuseArgs {
    /// First image; wins detail ties
    pub a: PathBuf,
    pub b: PathBuf,

    #[arg(long)]
    pub out: PathBuf,

    #[arg(long, default_value_t = 2)]
    pub levels: usize,

    #[command(flatten)]
    pub fusion: FusionRuleArgs,
}

#[derive(Debug, Args)]
pub struct OtsuArgs {
    pub input: PathBuf,

    /// Also write the binarized mask (PGM, 0/255)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CannyArgs {
    pub input: PathBuf,

    #[arg(long)]
    pub out: PathBuf,

    #[command(flatten)]
    pub canny: CannyFlags,
}

#[derive(Debug, Args)]
pub struct RoundtripArgs {
    pub input: PathBuf,

    #[arg(long, default_value_t = 2)]
    pub levels: usize,
}
