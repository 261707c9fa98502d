//! Byte rasters and the pixel-arithmetic stages: resize, combine, complement.

use crate::{Error, Result};

/// Single-channel row-major byte raster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImagePlane {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl ImagePlane {
    /// A `width`×`height` plane filled with `value`.
    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        check_dims(width, height)?;
        Ok(Self {
            width,
            height,
            data: vec![value; width * height],
        })
    }

    pub fn from_vec(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        check_dims(width, height)?;
        if data.len() != width * height {
            return Err(Error::InvalidParameter(format!(
                "buffer of {} bytes does not match {}x{}",
                data.len(),
                width,
                height
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Result<Self> {
        check_dims(width, height)?;
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: u8) {
        self.data[y * self.width + x] = v;
    }

    pub(crate) fn map(&self, f: impl Fn(u8) -> u8) -> Self {
        Self {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub(crate) fn zip_map(&self, other: &Self, f: impl Fn(u8, u8) -> u8) -> Result<Self> {
        if self.dims() != other.dims() {
            return Err(Error::mismatch(self.dims(), other.dims()));
        }
        Ok(Self {
            width: self.width,
            height: self.height,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }
}

/// Interpretation of the three planes of a [`TriImage`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColorSpace {
    Rgb,
    /// Hue, saturation and value each quantized to a byte.
    HsvQuantized,
}

impl ColorSpace {
    pub fn name(self) -> &'static str {
        match self {
            ColorSpace::Rgb => "RGB",
            ColorSpace::HsvQuantized => "HSV",
        }
    }
}

/// Three equally sized byte planes plus a color-space tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriImage {
    planes: [ImagePlane; 3],
    space: ColorSpace,
}

impl TriImage {
    pub fn new(planes: [ImagePlane; 3], space: ColorSpace) -> Result<Self> {
        let d = planes[0].dims();
        for p in &planes[1..] {
            if p.dims() != d {
                return Err(Error::mismatch(d, p.dims()));
            }
        }
        Ok(Self { planes, space })
    }

    pub fn filled_rgb(width: usize, height: usize, rgb: [u8; 3]) -> Result<Self> {
        Ok(Self {
            planes: [
                ImagePlane::filled(width, height, rgb[0])?,
                ImagePlane::filled(width, height, rgb[1])?,
                ImagePlane::filled(width, height, rgb[2])?,
            ],
            space: ColorSpace::Rgb,
        })
    }

    /// Build an RGB image from a per-pixel closure.
    pub fn from_fn_rgb(
        width: usize,
        height: usize,
        f: impl Fn(usize, usize) -> [u8; 3],
    ) -> Result<Self> {
        let mut img = Self::filled_rgb(width, height, [0; 3])?;
        for y in 0..height {
            for x in 0..width {
                img.set_pixel(x, y, f(x, y));
            }
        }
        Ok(img)
    }

    /// Interleaved `[c0, c1, c2, c0, ...]` buffer to planes.
    pub fn from_interleaved(
        width: usize,
        height: usize,
        data: &[u8],
        space: ColorSpace,
    ) -> Result<Self> {
        if data.len() != width * height * 3 {
            return Err(Error::InvalidParameter(format!(
                "buffer of {} bytes does not match {}x{}x3",
                data.len(),
                width,
                height
            )));
        }
        let plane = |c: usize| {
            ImagePlane::from_vec(
                width,
                height,
                data.iter().skip(c).step_by(3).copied().collect(),
            )
        };
        Self::new([plane(0)?, plane(1)?, plane(2)?], space)
    }

    /// Replicate a single plane into all three channels.
    pub fn broadcast(plane: &ImagePlane, space: ColorSpace) -> Self {
        Self {
            planes: [plane.clone(), plane.clone(), plane.clone()],
            space,
        }
    }

    pub fn interleaved(&self) -> Vec<u8> {
        let n = self.width() * self.height();
        let mut out = Vec::with_capacity(n * 3);
        for i in 0..n {
            for p in &self.planes {
                out.push(p.data[i]);
            }
        }
        out
    }

    pub fn width(&self) -> usize {
        self.planes[0].width
    }

    pub fn height(&self) -> usize {
        self.planes[0].height
    }

    pub fn dims(&self) -> (usize, usize) {
        self.planes[0].dims()
    }

    pub fn space(&self) -> ColorSpace {
        self.space
    }

    pub fn planes(&self) -> &[ImagePlane; 3] {
        &self.planes
    }

    pub fn plane(&self, c: usize) -> &ImagePlane {
        &self.planes[c]
    }

    pub fn into_planes(self) -> [ImagePlane; 3] {
        self.planes
    }

    #[inline]
    pub fn pixel(&self, x: usize, y: usize) -> [u8; 3] {
        [
            self.planes[0].get(x, y),
            self.planes[1].get(x, y),
            self.planes[2].get(x, y),
        ]
    }

    #[inline]
    pub fn set_pixel(&mut self, x: usize, y: usize, v: [u8; 3]) {
        for (p, c) in self.planes.iter_mut().zip(v) {
            p.set(x, y, c);
        }
    }

    pub(crate) fn expect_space(&self, space: ColorSpace) -> Result<()> {
        if self.space != space {
            return Err(Error::WrongColorSpace {
                expected: space.name(),
                actual: self.space.name(),
            });
        }
        Ok(())
    }

    pub(crate) fn map_planes(&self, f: impl Fn(&ImagePlane) -> ImagePlane) -> Self {
        Self {
            planes: [f(&self.planes[0]), f(&self.planes[1]), f(&self.planes[2])],
            space: self.space,
        }
    }
}

/// Either raster kind, as read from or written to a PNM file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Image {
    Gray(ImagePlane),
    Tri(TriImage),
}

impl Image {
    pub fn dims(&self) -> (usize, usize) {
        match self {
            Image::Gray(p) => p.dims(),
            Image::Tri(t) => t.dims(),
        }
    }

    /// Three-plane view; gray images are broadcast to RGB.
    pub fn to_tri(&self) -> TriImage {
        match self {
            Image::Gray(p) => TriImage::broadcast(p, ColorSpace::Rgb),
            Image::Tri(t) => t.clone(),
        }
    }
}

impl From<ImagePlane> for Image {
    fn from(p: ImagePlane) -> Self {
        Image::Gray(p)
    }
}

impl From<TriImage> for Image {
    fn from(t: TriImage) -> Self {
        Image::Tri(t)
    }
}

fn check_dims(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidDimensions { width, height });
    }
    Ok(())
}

/// How two byte images are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CombineMode {
    /// `min(a + b, 255)`
    #[default]
    Saturate,
    /// `(a + b) / 2`, rounded half up.
    Mean,
}

/// Bilinear resampling with half-pixel centers and border clamping.
pub fn resize_plane(img: &ImagePlane, out_w: usize, out_h: usize) -> Result<ImagePlane> {
    check_dims(out_w, out_h)?;
    if img.dims() == (out_w, out_h) {
        return Ok(img.clone());
    }
    let xs = axis_taps(img.width, out_w);
    let ys = axis_taps(img.height, out_h);
    let mut data = Vec::with_capacity(out_w * out_h);
    for &(y0, y1, fy) in &ys {
        let r0 = &img.data[y0 * img.width..(y0 + 1) * img.width];
        let r1 = &img.data[y1 * img.width..(y1 + 1) * img.width];
        for &(x0, x1, fx) in &xs {
            let top = r0[x0] as f64 * (1.0 - fx) + r0[x1] as f64 * fx;
            let bot = r1[x0] as f64 * (1.0 - fx) + r1[x1] as f64 * fx;
            let v = top * (1.0 - fy) + bot * fy;
            data.push(v.clamp(0.0, 255.0).round() as u8);
        }
    }
    ImagePlane::from_vec(out_w, out_h, data)
}

// For each destination index: (lower source index, upper source index, weight of upper).
fn axis_taps(src: usize, dst: usize) -> Vec<(usize, usize, f64)> {
    let scale = src as f64 / dst as f64;
    let last = (src - 1) as f64;
    (0..dst)
        .map(|d| {
            let s = ((d as f64 + 0.5) * scale - 0.5).clamp(0.0, last);
            let i0 = s.floor() as usize;
            let i1 = (i0 + 1).min(src - 1);
            (i0, i1, s - i0 as f64)
        })
        .collect()
}

/// [`resize_plane`] applied to every channel; the color-space tag is kept.
pub fn resize_tri(img: &TriImage, out_w: usize, out_h: usize) -> Result<TriImage> {
    check_dims(out_w, out_h)?;
    let [a, b, c] = img.planes();
    TriImage::new(
        [
            resize_plane(a, out_w, out_h)?,
            resize_plane(b, out_w, out_h)?,
            resize_plane(c, out_w, out_h)?,
        ],
        img.space,
    )
}

pub fn resize_bilinear(img: &Image, out_w: usize, out_h: usize) -> Result<Image> {
    Ok(match img {
        Image::Gray(p) => Image::Gray(resize_plane(p, out_w, out_h)?),
        Image::Tri(t) => Image::Tri(resize_tri(t, out_w, out_h)?),
    })
}

fn combine_bytes(mode: CombineMode) -> impl Fn(u8, u8) -> u8 + Copy {
    move |a, b| match mode {
        CombineMode::Saturate => a.saturating_add(b),
        CombineMode::Mean => (a as u16 + b as u16).div_ceil(2) as u8,
    }
}

/// Channel-wise combination of two three-plane images.
pub fn combine(a: &TriImage, b: &TriImage, mode: CombineMode) -> Result<TriImage> {
    if a.dims() != b.dims() {
        return Err(Error::mismatch(a.dims(), b.dims()));
    }
    let f = combine_bytes(mode);
    let [a0, a1, a2] = a.planes();
    let [b0, b1, b2] = b.planes();
    TriImage::new(
        [a0.zip_map(b0, f)?, a1.zip_map(b1, f)?, a2.zip_map(b2, f)?],
        a.space,
    )
}

/// Combine a single plane into each of the three channels of `a`.
pub fn combine_plane(a: &TriImage, b: &ImagePlane, mode: CombineMode) -> Result<TriImage> {
    combine(a, &TriImage::broadcast(b, a.space), mode)
}

/// Per-pixel, per-channel `min(a + b, 255)`.
pub fn saturating_add(a: &TriImage, b: &Image) -> Result<TriImage> {
    match b {
        Image::Tri(t) => combine(a, t, CombineMode::Saturate),
        Image::Gray(p) => combine_plane(a, p, CombineMode::Saturate),
    }
}

/// `255 - v` for every pixel.
pub fn complement(img: &ImagePlane) -> ImagePlane {
    img.map(|v| 255 - v)
}

pub fn complement_tri(img: &TriImage) -> TriImage {
    img.map_planes(complement)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(w: usize, h: usize, data: &[u8]) -> ImagePlane {
        ImagePlane::from_vec(w, h, data.to_vec()).unwrap()
    }

    #[test]
    fn resize_identity() {
        let p = ImagePlane::from_fn(7, 5, |x, y| (x * 31 + y * 17) as u8).unwrap();
        assert_eq!(resize_plane(&p, 7, 5).unwrap(), p);
    }

    #[test]
    fn resize_constant_extension() {
        let p = plane(1, 1, &[100]);
        let r = resize_plane(&p, 4, 4).unwrap();
        assert!(r.data().iter().all(|&v| v == 100));
    }

    #[test]
    fn resize_two_to_four() {
        // src = (d + 0.5) / 2 - 0.5 -> -0.25, 0.25, 0.75, 1.25, clamped to [0, 1]
        let p = plane(2, 1, &[0, 255]);
        let r = resize_plane(&p, 4, 1).unwrap();
        assert_eq!(r.data(), &[0, 64, 191, 255]);
    }

    #[test]
    fn resize_rejects_zero_target() {
        let p = plane(2, 1, &[0, 255]);
        assert!(matches!(
            resize_plane(&p, 0, 3),
            Err(Error::InvalidDimensions { .. })
        ));
    }

    #[test]
    fn resize_downscale_averages_pairs() {
        let p = plane(4, 1, &[0, 100, 200, 50]);
        let r = resize_plane(&p, 2, 1).unwrap();
        assert_eq!(r.data(), &[50, 125]);
    }

    #[test]
    fn add_identity_and_saturation() {
        let a = TriImage::filled_rgb(3, 2, [200, 10, 0]).unwrap();
        let zero = TriImage::filled_rgb(3, 2, [0, 0, 0]).unwrap();
        assert_eq!(saturating_add(&a, &zero.clone().into()).unwrap(), a);
        let b = TriImage::filled_rgb(3, 2, [100, 100, 100]).unwrap();
        let s = saturating_add(&a, &b.into()).unwrap();
        assert_eq!(s.pixel(1, 1), [255, 110, 100]);
    }

    #[test]
    fn add_broadcasts_plane() {
        let a = TriImage::filled_rgb(1, 1, [10, 20, 30]).unwrap();
        let g = plane(1, 1, &[5]);
        let s = saturating_add(&a, &g.into()).unwrap();
        assert_eq!(s.pixel(0, 0), [15, 25, 35]);
    }

    #[test]
    fn add_dimension_mismatch() {
        let a = TriImage::filled_rgb(2, 2, [0; 3]).unwrap();
        let b = TriImage::filled_rgb(2, 3, [0; 3]).unwrap();
        assert!(matches!(
            saturating_add(&a, &b.into()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn mean_combine_rounds_half_up() {
        let a = TriImage::filled_rgb(1, 1, [1, 255, 0]).unwrap();
        let b = TriImage::filled_rgb(1, 1, [2, 255, 0]).unwrap();
        let m = combine(&a, &b, CombineMode::Mean).unwrap();
        assert_eq!(m.pixel(0, 0), [2, 255, 0]);
    }

    #[test]
    fn complement_values() {
        let p = plane(3, 1, &[10, 128, 200]);
        assert_eq!(complement(&p).data(), &[245, 127, 55]);
        assert_eq!(complement(&plane(2, 1, &[0, 255])).data(), &[255, 0]);
        assert_eq!(complement(&complement(&p)), p);
    }

    #[test]
    fn tri_rejects_mismatched_planes() {
        let a = ImagePlane::filled(2, 2, 0).unwrap();
        let b = ImagePlane::filled(3, 2, 0).unwrap();
        assert!(TriImage::new([a.clone(), b, a], ColorSpace::Rgb).is_err());
    }

    #[test]
    fn interleave_round_trip() {
        let data: Vec<u8> = (0..18).collect();
        let t = TriImage::from_interleaved(3, 2, &data, ColorSpace::Rgb).unwrap();
        assert_eq!(t.pixel(1, 0), [3, 4, 5]);
        assert_eq!(t.interleaved(), data);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn tri(w: usize, h: usize) -> impl Strategy<Value = TriImage> {
            proptest::collection::vec(any::<u8>(), w * h * 3)
                .prop_map(move |d| TriImage::from_interleaved(w, h, &d, ColorSpace::Rgb).unwrap())
        }

        proptest! {
            #[test]
            fn add_commutative_and_monotone((a, b) in (tri(5, 4), tri(5, 4))) {
                let ab = saturating_add(&a, &b.clone().into()).unwrap();
                let ba = saturating_add(&b, &a.clone().into()).unwrap();
                prop_assert_eq!(&ab, &ba);
                for c in 0..3 {
                    for i in 0..20 {
                        prop_assert!(ab.plane(c).data()[i] >= a.plane(c).data()[i]);
                        prop_assert!(ab.plane(c).data()[i] >= b.plane(c).data()[i]);
                    }
                }
            }

            #[test]
            fn resize_constant_any_size(v in any::<u8>(), w in 1usize..9, h in 1usize..9, ow in 1usize..20, oh in 1usize..20) {
                let p = ImagePlane::filled(w, h, v).unwrap();
                let r = resize_plane(&p, ow, oh).unwrap();
                prop_assert!(r.data().iter().all(|&x| x == v));
            }

            #[test]
            fn complement_involution(d in proptest::collection::vec(any::<u8>(), 12)) {
                let p = ImagePlane::from_vec(4, 3, d).unwrap();
                prop_assert_eq!(complement(&complement(&p)), p);
            }
        }
    }
}
