//! RGB to HSV (hexcone) and RGB to luma conversions.

use crate::imgcore::{ColorSpace, ImagePlane, TriImage};
use crate::Result;

/// Real-valued HSV: hue in degrees `[0, 360)`, saturation and value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsvTriple {
    pub h: f64,
    pub s: f64,
    pub v: f64,
}

impl HsvTriple {
    pub fn from_rgb([r, g, b]: [u8; 3]) -> Self {
        let (r, g, b) = (r as f64 / 255.0, g as f64 / 255.0, b as f64 / 255.0);
        let max = r.max(g).max(b);
        let min = r.min(g).min(b);
        let delta = max - min;
        let s = if max == 0.0 { 0.0 } else { delta / max };
        if delta == 0.0 {
            return Self {
                h: 0.0,
                s: 0.0,
                v: max,
            };
        }
        let sector = if max == r {
            ((g - b) / delta).rem_euclid(6.0)
        } else if max == g {
            (b - r) / delta + 2.0
        } else {
            (r - g) / delta + 4.0
        };
        let mut h = 60.0 * sector;
        if h >= 360.0 {
            h -= 360.0;
        }
        Self { h, s, v: max }
    }

    pub fn to_rgb(self) -> [u8; 3] {
        let c = self.v * self.s;
        let hp = (self.h / 60.0).rem_euclid(6.0);
        let x = c * (1.0 - ((hp % 2.0) - 1.0).abs());
        let (r, g, b) = match hp as u32 {
            0 => (c, x, 0.0),
            1 => (x, c, 0.0),
            2 => (0.0, c, x),
            3 => (0.0, x, c),
            4 => (x, 0.0, c),
            _ => (c, 0.0, x),
        };
        let m = self.v - c;
        let q = |u: f64| ((u + m) * 255.0).clamp(0.0, 255.0).round() as u8;
        [q(r), q(g), q(b)]
    }

    /// Byte encoding used inside an HSV-tagged [`TriImage`]: `(h·255/360, s·255, v·255)`.
    pub fn quantize(self) -> [u8; 3] {
        let q = |u: f64| u.clamp(0.0, 255.0).round() as u8;
        let s = q(self.s * 255.0);
        let h = if s == 0 { 0 } else { q(self.h * 255.0 / 360.0) };
        [h, s, q(self.v * 255.0)]
    }

    pub fn dequantize([h, s, v]: [u8; 3]) -> Self {
        Self {
            h: h as f64 * 360.0 / 255.0,
            s: s as f64 / 255.0,
            v: v as f64 / 255.0,
        }
    }
}

pub fn rgb_to_hsv(img: &TriImage) -> Result<TriImage> {
    img.expect_space(ColorSpace::Rgb)?;
    per_pixel(img, ColorSpace::HsvQuantized, |p| {
        HsvTriple::from_rgb(p).quantize()
    })
}

pub fn hsv_to_rgb(img: &TriImage) -> Result<TriImage> {
    img.expect_space(ColorSpace::HsvQuantized)?;
    per_pixel(img, ColorSpace::Rgb, |p| HsvTriple::dequantize(p).to_rgb())
}

fn per_pixel(
    img: &TriImage,
    space: ColorSpace,
    f: impl Fn([u8; 3]) -> [u8; 3],
) -> Result<TriImage> {
    let (w, h) = img.dims();
    let mut out = TriImage::filled_rgb(w, h, [0; 3])?;
    for y in 0..h {
        for x in 0..w {
            out.set_pixel(x, y, f(img.pixel(x, y)));
        }
    }
    let planes = out.into_planes();
    TriImage::new(planes, space)
}

pub const LUMA_WEIGHTS: [f64; 3] = [0.299, 0.587, 0.114];

#[inline]
pub fn luma([r, g, b]: [u8; 3]) -> u8 {
    let y = LUMA_WEIGHTS[0] * r as f64 + LUMA_WEIGHTS[1] * g as f64 + LUMA_WEIGHTS[2] * b as f64;
    y.clamp(0.0, 255.0).round() as u8
}

/// BT.601 luma, rounded to the nearest byte.
pub fn rgb_to_gray(img: &TriImage) -> Result<ImagePlane> {
    img.expect_space(ColorSpace::Rgb)?;
    let [r, g, b] = img.planes();
    let data = r
        .data()
        .iter()
        .zip(g.data())
        .zip(b.data())
        .map(|((&r, &g), &b)| luma([r, g, b]))
        .collect();
    ImagePlane::from_vec(img.width(), img.height(), data)
}
