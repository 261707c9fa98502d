//! End-to-end detection: resize, combine, complement, HSV, wavelet fusion,
//! Otsu binarization, component filtering, Canny contour and overlays.

use crate::colorspace::{rgb_to_gray, rgb_to_hsv};
use crate::edges::{canny, overlay_contour, CannyParams, OverlayMode};
use crate::fusion::{fuse_triimages, FusionRule};
use crate::imgcore::{
    combine, complement_tri, resize_bilinear, resize_tri, ColorSpace, CombineMode, Image, TriImage,
};
use crate::segment::{
    binarize, filter_components_by_area, label_components, mask_multiply_rgb, otsu_threshold,
    BinaryMask, BoundingBox, Connectivity,
};
use crate::{Error, Result};

/// Which input is converted to HSV before fusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HsvSource {
    #[default]
    Ir,
    Visual,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    pub combine: CombineMode,
    pub hsv_source: HsvSource,
    /// Wavelet decomposition depth, 1 to 4.
    pub dwt_levels: usize,
    pub fusion_rule: FusionRule,
    pub connectivity: Connectivity,
    /// Smallest kept component, as a fraction of the image area. Heuristic.
    pub min_area_frac: f64,
    /// Largest kept component, as a fraction of the image area. Heuristic.
    pub max_area_frac: f64,
    pub canny: CannyParams,
    pub overlay: OverlayMode,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            combine: CombineMode::Saturate,
            hsv_source: HsvSource::Ir,
            dwt_levels: 2,
            fusion_rule: FusionRule::default(),
            connectivity: Connectivity::Eight,
            min_area_frac: 0.0005,
            max_area_frac: 0.15,
            canny: CannyParams::default(),
            overlay: OverlayMode::default(),
        }
    }
}

pub const MAX_DWT_LEVELS: usize = 4;

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_DWT_LEVELS).contains(&self.dwt_levels) {
            return Err(Error::InvalidParameter(format!(
                "dwt levels must be 1..={MAX_DWT_LEVELS}, got {}",
                self.dwt_levels
            )));
        }
        let frac_ok = |f: f64| (0.0..=1.0).contains(&f);
        if !frac_ok(self.min_area_frac)
            || !frac_ok(self.max_area_frac)
            || self.min_area_frac > self.max_area_frac
        {
            return Err(Error::InvalidParameter(format!(
                "area fractions must satisfy 0 <= min ({}) <= max ({}) <= 1",
                self.min_area_frac, self.max_area_frac
            )));
        }
        self.canny.validate()
    }

    /// Pixel-count bounds for an image of `pixels` pixels.
    pub fn area_bounds(&self, pixels: usize) -> (usize, usize) {
        let n = pixels as f64;
        (
            (self.min_area_frac * n).ceil() as usize,
            (self.max_area_frac * n).floor() as usize,
        )
    }
}

/// Every intermediate image, in pipeline order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageSet {
    pub visual_resized: TriImage,
    pub ir_resized: TriImage,
    /// visual + IR. Kept for inspection only; nothing downstream reads it.
    pub combined: TriImage,
    pub ir_complement: TriImage,
    pub combined_c: TriImage,
    pub ir_hsv: TriImage,
    pub fused: TriImage,
    pub fused_gray: crate::ImagePlane,
    pub binary: BinaryMask,
    pub weapon_mask: BinaryMask,
    pub weapon_on_visual: TriImage,
    pub contour: BinaryMask,
    pub contour_on_visual: TriImage,
}

impl StageSet {
    /// `(file stem, image)` pairs, e.g. `stage_03_combined`.
    pub fn named_images(&self) -> Vec<(String, Image)> {
        let tri = |t: &TriImage| Image::Tri(t.clone());
        let mask = |m: &BinaryMask| Image::Gray(m.to_plane());
        let list: [(&str, Image); 13] = [
            ("visual_resized", tri(&self.visual_resized)),
            ("ir_resized", tri(&self.ir_resized)),
            ("combined", tri(&self.combined)),
            ("ir_complement", tri(&self.ir_complement)),
            ("combined_c", tri(&self.combined_c)),
            ("ir_hsv", tri(&self.ir_hsv)),
            ("fused", tri(&self.fused)),
            ("fused_gray", Image::Gray(self.fused_gray.clone())),
            ("binary", mask(&self.binary)),
            ("weapon_mask", mask(&self.weapon_mask)),
            ("weapon_on_visual", tri(&self.weapon_on_visual)),
            ("contour", mask(&self.contour)),
            ("contour_on_visual", tri(&self.contour_on_visual)),
        ];
        list.into_iter()
            .enumerate()
            .map(|(i, (name, img))| (format!("stage_{:02}_{name}", i + 1), img))
            .collect()
    }
}

/// Stages computed from the resized pair, excluding the visual + IR sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectionStages {
    pub ir_complement: TriImage,
    pub combined_c: TriImage,
    pub ir_hsv: TriImage,
    pub fused: TriImage,
    pub fused_gray: crate::ImagePlane,
    pub binary: BinaryMask,
    pub weapon_mask: BinaryMask,
    pub weapon_on_visual: TriImage,
    pub contour: BinaryMask,
    pub contour_on_visual: TriImage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectionReport {
    pub otsu_t: u8,
    pub components_before: usize,
    pub components_after: usize,
    pub surviving_areas: Vec<usize>,
    pub bounding_boxes: Vec<BoundingBox>,
}

impl DetectionReport {
    /// Flat `key=value` lines: `otsu_t`, `components_before`,
    /// `components_after`, then `area_i` and `bbox_i` (x0,y0,x1,y1 inclusive)
    /// for each kept component, 1-based.
    pub fn to_key_values(&self) -> String {
        let mut s = format!(
            "otsu_t={}\ncomponents_before={}\ncomponents_after={}\n",
            self.otsu_t, self.components_before, self.components_after
        );
        for (i, (a, b)) in self
            .surviving_areas
            .iter()
            .zip(&self.bounding_boxes)
            .enumerate()
        {
            s += &format!(
                "area_{}={a}\nbbox_{}={},{},{},{}\n",
                i + 1,
                i + 1,
                b.x0,
                b.y0,
                b.x1,
                b.y1
            );
        }
        s
    }
}

/// Run the full pipeline. The IR image is resized to the visual image's
/// dimensions; a single-plane IR image is replicated into three channels.
pub fn run_detection(
    visual: &TriImage,
    ir: &Image,
    cfg: &PipelineConfig,
) -> Result<(StageSet, DetectionReport)> {
    cfg.validate()?;
    visual.expect_space(ColorSpace::Rgb)?;
    if let Image::Tri(t) = ir {
        t.expect_space(ColorSpace::Rgb)?;
    }
    let (w, h) = visual.dims();
    let visual_resized = resize_tri(visual, w, h)?;
    let ir_resized = resize_bilinear(ir, w, h)?.to_tri();
    let combined = combine(&visual_resized, &ir_resized, cfg.combine)?;
    let (d, report) = detect_from_resized(&visual_resized, &ir_resized, cfg)?;
    let stages = StageSet {
        visual_resized,
        ir_resized,
        combined,
        ir_complement: d.ir_complement,
        combined_c: d.combined_c,
        ir_hsv: d.ir_hsv,
        fused: d.fused,
        fused_gray: d.fused_gray,
        binary: d.binary,
        weapon_mask: d.weapon_mask,
        weapon_on_visual: d.weapon_on_visual,
        contour: d.contour,
        contour_on_visual: d.contour_on_visual,
    };
    Ok((stages, report))
}

/// Everything after the resize, given an already registered, equally sized pair.
pub fn detect_from_resized(
    visual: &TriImage,
    ir: &TriImage,
    cfg: &PipelineConfig,
) -> Result<(DetectionStages, DetectionReport)> {
    cfg.validate()?;
    visual.expect_space(ColorSpace::Rgb)?;
    ir.expect_space(ColorSpace::Rgb)?;
    if visual.dims() != ir.dims() {
        return Err(Error::mismatch(visual.dims(), ir.dims()));
    }
    let ir_complement = complement_tri(ir);
    let combined_c = combine(visual, &ir_complement, cfg.combine)?;
    let ir_hsv = match cfg.hsv_source {
        HsvSource::Ir => rgb_to_hsv(ir)?,
        HsvSource::Visual => rgb_to_hsv(visual)?,
    };
    let fused = fuse_triimages(&combined_c, &ir_hsv, cfg.dwt_levels, cfg.fusion_rule)?;
    let fused_gray = rgb_to_gray(&fused)?;

    let otsu_t = otsu_threshold(&fused_gray);
    let binary = binarize(&fused_gray, otsu_t);
    let labels = label_components(&binary, cfg.connectivity);
    let (w, h) = visual.dims();
    let (min_area, max_area) = cfg.area_bounds(w * h);
    let weapon_mask = filter_components_by_area(&labels, min_area, max_area)?;
    let weapon_on_visual = mask_multiply_rgb(&weapon_mask, visual)?;

    let contour = canny(&weapon_mask.to_plane(), &cfg.canny)?;
    let contour_on_visual = overlay_contour(&contour, visual, cfg.overlay)?;

    let boxes = labels.bounding_boxes();
    let kept: Vec<usize> = (0..labels.component_count())
        .filter(|&i| (min_area..=max_area).contains(&labels.areas()[i]))
        .collect();
    let report = DetectionReport {
        otsu_t,
        components_before: labels.component_count(),
        components_after: kept.len(),
        surviving_areas: kept.iter().map(|&i| labels.areas()[i]).collect(),
        bounding_boxes: kept.iter().map(|&i| boxes[i]).collect(),
    };
    Ok((
        DetectionStages {
            ir_complement,
            combined_c,
            ir_hsv,
            fused,
            fused_gray,
            binary,
            weapon_mask,
            weapon_on_visual,
            contour,
            contour_on_visual,
        },
        report,
    ))
}
