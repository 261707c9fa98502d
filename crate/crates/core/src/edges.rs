//! Canny edge detection and contour overlay.

use std::collections::VecDeque;

use crate::imgcore::{ColorSpace, ImagePlane, TriImage};
use crate::scalar::{RealPlane, Scalar};
use crate::segment::BinaryMask;
use crate::{Error, Result};

/// Blur width and relative hysteresis thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CannyParams {
    pub sigma: f64,
    /// Weak threshold as a fraction of the largest gradient magnitude.
    pub low_frac: f64,
    /// Strong threshold as a fraction of the largest gradient magnitude.
    pub high_frac: f64,
}

impl Default for CannyParams {
    fn default() -> Self {
        Self {
            sigma: 1.4,
            low_frac: 0.10,
            high_frac: 0.20,
        }
    }
}

impl CannyParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        if !(self.low_frac > 0.0 && self.low_frac <= self.high_frac && self.high_frac <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "thresholds must satisfy 0 < low ({}) <= high ({}) <= 1",
                self.low_frac, self.high_frac
            )));
        }
        Ok(())
    }

    /// Gaussian kernel radius, `ceil(3 sigma)`.
    pub fn radius(&self) -> usize {
        kernel_radius(self.sigma)
    }
}

pub fn kernel_radius(sigma: f64) -> usize {
    (3.0 * sigma).ceil() as usize
}

/// Normalized sampled Gaussian of radius `ceil(3 sigma)`.
pub fn gaussian_kernel<T: Scalar>(sigma: T) -> Vec<T> {
    let r = kernel_radius(sigma.to_f64().unwrap()) as isize;
    let two_s2 = T::lit(2.0) * sigma * sigma;
    let raw: Vec<T> = (-r..=r)
        .map(|i| {
            let x = T::lit(i as f64);
            (-(x * x) / two_s2).exp()
        })
        .collect();
    let sum = raw.iter().fold(T::zero(), |a, &b| a + b);
    raw.into_iter().map(|v| v / sum).collect()
}

/// Separable Gaussian blur with edge replication.
pub fn gaussian_blur_real<T: Scalar>(img: &RealPlane<T>, sigma: T) -> Result<RealPlane<T>> {
    if !sigma.is_finite() || sigma <= T::zero() {
        return Err(Error::InvalidParameter(format!(
            "sigma must be positive, got {sigma:?}"
        )));
    }
    let k = gaussian_kernel(sigma);
    let r = (k.len() / 2) as isize;
    let (w, h) = img.dims();
    let mut tmp = RealPlane::zeros(w, h);
    for y in 0..h {
        for x in 0..w {
            let mut acc = T::zero();
            for (i, &kv) in k.iter().enumerate() {
                acc = acc + kv * img.get_clamped(x as isize + i as isize - r, y as isize);
            }
            tmp.set(x, y, acc);
        }
    }
    let mut out = RealPlane::zeros(w, h);
    for y in 0..h {
        for x in 0..w {
            let mut acc = T::zero();
            for (i, &kv) in k.iter().enumerate() {
                acc = acc + kv * tmp.get_clamped(x as isize, y as isize + i as isize - r);
            }
            out.set(x, y, acc);
        }
    }
    Ok(out)
}

pub fn gaussian_blur<T: Scalar>(img: &ImagePlane, sigma: T) -> Result<RealPlane<T>> {
    gaussian_blur_real(&RealPlane::from_bytes(img), sigma)
}

/// Sobel derivatives `(gx, gy)` with edge replication.
pub fn sobel<T: Scalar>(img: &RealPlane<T>) -> (RealPlane<T>, RealPlane<T>) {
    let (w, h) = img.dims();
    let mut gx = RealPlane::zeros(w, h);
    let mut gy = RealPlane::zeros(w, h);
    let two = T::lit(2.0);
    for y in 0..h as isize {
        for x in 0..w as isize {
            let p = |dx: isize, dy: isize| img.get_clamped(x + dx, y + dy);
            let dx = (p(1, -1) + two * p(1, 0) + p(1, 1)) - (p(-1, -1) + two * p(-1, 0) + p(-1, 1));
            let dy = (p(-1, 1) + two * p(0, 1) + p(1, 1)) - (p(-1, -1) + two * p(0, -1) + p(1, -1));
            gx.set(x as usize, y as usize, dx);
            gy.set(x as usize, y as usize, dy);
        }
    }
    (gx, gy)
}

/// Gradient direction quantized to 0, 45, 90 or 135 degrees, as the pair of
/// neighbor offsets lying along the gradient.
fn sector_neighbors<T: Scalar>(gx: T, gy: T) -> [(isize, isize); 2] {
    let mut angle = gy
        .to_f64()
        .unwrap()
        .atan2(gx.to_f64().unwrap())
        .to_degrees();
    if angle < 0.0 {
        angle += 180.0;
    }
    // image y grows downward, so +45 deg points to (+1, +1)
    if !(22.5..157.5).contains(&angle) {
        [(-1, 0), (1, 0)]
    } else if angle < 67.5 {
        [(-1, -1), (1, 1)]
    } else if angle < 112.5 {
        [(0, -1), (0, 1)]
    } else {
        [(1, -1), (-1, 1)]
    }
}

/// Intermediate Canny products, kept for inspection and testing.
#[derive(Debug, Clone)]
pub struct CannyTrace<T> {
    pub magnitude: RealPlane<T>,
    pub max_magnitude: T,
    pub thinned: BinaryMask,
    pub edges: BinaryMask,
}

pub fn canny(img: &ImagePlane, params: &CannyParams) -> Result<BinaryMask> {
    Ok(canny_trace::<f64>(img, params)?.edges)
}

pub fn canny_trace<T: Scalar>(img: &ImagePlane, params: &CannyParams) -> Result<CannyTrace<T>> {
    params.validate()?;
    let blurred = gaussian_blur(img, T::lit(params.sigma))?;
    let (gx, gy) = sobel(&blurred);
    let (w, h) = img.dims();
    let magnitude = RealPlane {
        width: w,
        height: h,
        data: gx
            .data
            .iter()
            .zip(&gy.data)
            .map(|(&a, &b)| a.hypot(b))
            .collect(),
    };
    let max_magnitude = magnitude.data.iter().fold(T::zero(), |m, &v| m.max(v));

    // Non-maximum suppression: the first neighbor along the gradient must be
    // strictly smaller, the second no larger, so plateaus two pixels wide
    // keep exactly one pixel.
    let mut thinned = BinaryMask::new(w, h);
    for y in 0..h {
        for x in 0..w {
            let m = magnitude.get(x, y);
            if m <= T::zero() {
                continue;
            }
            let [(ax, ay), (bx, by)] = sector_neighbors(gx.get(x, y), gy.get(x, y));
            let na = magnitude.get_clamped(x as isize + ax, y as isize + ay);
            let nb = magnitude.get_clamped(x as isize + bx, y as isize + by);
            if m > na && m >= nb {
                thinned.set(x, y, true);
            }
        }
    }

    let mut edges = BinaryMask::new(w, h);
    if max_magnitude > T::zero() {
        let low = max_magnitude * T::lit(params.low_frac);
        let high = max_magnitude * T::lit(params.high_frac);
        let weak = |x: usize, y: usize| thinned.get(x, y) && magnitude.get(x, y) >= low;
        let mut queue = VecDeque::new();
        for y in 0..h {
            for x in 0..w {
                if thinned.get(x, y) && magnitude.get(x, y) >= high {
                    edges.set(x, y, true);
                    queue.push_back((x, y));
                }
            }
        }
        while let Some((x, y)) = queue.pop_front() {
            for &(dx, dy) in crate::segment::Connectivity::Eight.offsets() {
                let (nx, ny) = (x as isize + dx, y as isize + dy);
                if nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                    continue;
                }
                let (nx, ny) = (nx as usize, ny as usize);
                if !edges.get(nx, ny) && weak(nx, ny) {
                    edges.set(nx, ny, true);
                    queue.push_back((nx, ny));
                }
            }
        }
    }
    Ok(CannyTrace {
        magnitude,
        max_magnitude,
        thinned,
        edges,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlayMode {
    /// Contour pixels keep the visual color, everything else is black.
    Multiply,
    /// The visual image with contour pixels set to the highlight color.
    Paint([u8; 3]),
}

impl Default for OverlayMode {
    fn default() -> Self {
        OverlayMode::Paint([255, 0, 0])
    }
}

pub fn overlay_contour(
    contour: &BinaryMask,
    img: &TriImage,
    mode: OverlayMode,
) -> Result<TriImage> {
    match mode {
        OverlayMode::Multiply => crate::segment::mask_multiply_rgb(contour, img),
        OverlayMode::Paint(color) => {
            img.expect_space(ColorSpace::Rgb)?;
            if contour.dims() != img.dims() {
                return Err(Error::mismatch(contour.dims(), img.dims()));
            }
            let mut out = img.clone();
            for y in 0..img.height() {
                for x in 0..img.width() {
                    if contour.get(x, y) {
                        out.set_pixel(x, y, color);
                    }
                }
            }
            Ok(out)
        }
    }
}
