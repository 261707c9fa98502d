//! Visual + infrared image fusion for concealed-object detection.
//!
//! The visual (RGB) and infrared images are brought to a common size, the
//! complemented IR image is added to the visual image, the IR image is
//! converted to HSV and the two are fused band-by-band in the Haar wavelet
//! domain. The fused image is grayscaled, binarized with Otsu's threshold and
//! filtered by connected-component area; the surviving region's Canny contour
//! is drawn over the visual image.
//!
//! ```
//! use cwfusion::{run_detection, Image, PipelineConfig, SyntheticScene};
//!
//! let scene = SyntheticScene::new(96).unwrap();
//! let (stages, report) =
//!     run_detection(&scene.visual, &Image::Gray(scene.ir.clone()), &PipelineConfig::default()).unwrap();
//! assert_eq!(report.components_after, 1);
//! assert_eq!(stages.contour_on_visual.dims(), (96, 96));
//! ```
//!
//! Real-valued kernels (wavelets, fusion, blur) are generic over [`Scalar`];
//! the aliases below fix the scalar for common use.

pub mod colorspace;
pub mod dwt;
pub mod edges;
mod error;
pub mod fusion;
pub mod imgcore;
pub mod pipeline;
pub mod pixio;
pub mod scalar;
pub mod segment;
pub mod synthetic;

pub use colorspace::{hsv_to_rgb, rgb_to_gray, rgb_to_hsv, HsvTriple};
pub use dwt::{dwt2_forward, dwt2_inverse, max_levels, DetailBands, WaveletFamily, WaveletPyramid};
pub use edges::{canny, gaussian_blur, overlay_contour, CannyParams, OverlayMode};
pub use error::{Error, Result};
pub use fusion::{fuse_pyramids, fuse_triimages, ApproxRule, DetailRule, FusionRule};
pub use imgcore::{
    complement, resize_bilinear, saturating_add, ColorSpace, CombineMode, Image, ImagePlane,
    TriImage,
};
pub use pipeline::{run_detection, DetectionReport, HsvSource, PipelineConfig, StageSet};
pub use pixio::{read_pnm, write_pnm};
pub use scalar::{RealPlane, Scalar};
pub use segment::{
    binarize, filter_components_by_area, label_components, mask_multiply_rgb, otsu_threshold,
    BinaryMask, BoundingBox, Connectivity, LabelMap,
};
pub use synthetic::SyntheticScene;

/// Double-precision real raster.
pub type Plane = RealPlane<f64>;
/// Single-precision real raster.
pub type Plane32 = RealPlane<f32>;
/// Double-precision wavelet pyramid.
pub type Pyramid = WaveletPyramid<f64>;
/// Single-precision wavelet pyramid.
pub type Pyramid32 = WaveletPyramid<f32>;
