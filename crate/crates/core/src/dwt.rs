//! Multi-level separable 2-D discrete wavelet transform (orthonormal Haar).
//!
//! Each level runs a row pass and then a column pass of the analysis filter
//! pair over the current approximation band. Odd dimensions are made even by
//! replicating the last row/column before the level, and the pre-padding size
//! is kept so synthesis can crop it back off.

use crate::scalar::{RealPlane, Scalar};
use crate::{Error, Result};

/// Two-tap analysis/synthesis filter pair. Only the orthonormal Haar pair is
/// provided; the transform only ever touches the constants below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WaveletFamily {
    #[default]
    Haar,
}

impl WaveletFamily {
    /// `(low, high)` filter coefficients: low = (k, k), high = (k, -k).
    fn taps<T: Scalar>(self) -> (T, T) {
        match self {
            WaveletFamily::Haar => {
                let k = T::lit(std::f64::consts::FRAC_1_SQRT_2);
                (k, k)
            }
        }
    }

    fn analyze<T: Scalar>(self, a: T, b: T) -> (T, T) {
        let (l, h) = self.taps::<T>();
        (l * a + l * b, h * a - h * b)
    }

    fn synthesize<T: Scalar>(self, lo: T, hi: T) -> (T, T) {
        let (l, h) = self.taps::<T>();
        (l * lo + h * hi, l * lo - h * hi)
    }
}

/// Detail bands of one decomposition level.
///
/// `hl` holds horizontal differences (high-pass along rows, low-pass along
/// columns), `lh` vertical differences and `hh` the diagonal band.
#[derive(Debug, Clone, PartialEq)]
pub struct DetailBands<T> {
    pub lh: RealPlane<T>,
    pub hl: RealPlane<T>,
    pub hh: RealPlane<T>,
}

impl<T: Scalar> DetailBands<T> {
    pub fn bands(&self) -> [&RealPlane<T>; 3] {
        [&self.lh, &self.hl, &self.hh]
    }

    pub fn bands_mut(&mut self) -> [&mut RealPlane<T>; 3] {
        [&mut self.lh, &mut self.hl, &mut self.hh]
    }
}

/// Coefficients of a multi-level decomposition.
///
/// `details[0]` and `orig_sizes[0]` belong to the finest level (the one
/// applied to the input plane); the last entries to the coarsest.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletPyramid<T> {
    pub approx: RealPlane<T>,
    pub details: Vec<DetailBands<T>>,
    pub orig_sizes: Vec<(usize, usize)>,
    pub family: WaveletFamily,
}

impl<T: Scalar> WaveletPyramid<T> {
    pub fn levels(&self) -> usize {
        self.details.len()
    }

    /// Iterate over every coefficient, approximation first.
    pub fn coefficients(&self) -> impl Iterator<Item = T> + '_ {
        self.approx.data.iter().copied().chain(
            self.details
                .iter()
                .flat_map(|d| d.bands().into_iter().flat_map(|b| b.data.iter().copied())),
        )
    }

    /// Check that band sizes follow from `orig_sizes`.
    pub fn validate(&self) -> Result<()> {
        if self.details.is_empty() || self.details.len() != self.orig_sizes.len() {
            return Err(Error::InvalidPyramid(format!(
                "{} detail levels but {} recorded sizes",
                self.details.len(),
                self.orig_sizes.len()
            )));
        }
        for (k, (d, &(w, h))) in self.details.iter().zip(&self.orig_sizes).enumerate() {
            let half = (w.div_ceil(2), h.div_ceil(2));
            if w == 0 || h == 0 {
                return Err(Error::InvalidPyramid(format!("level {k} has empty size")));
            }
            for b in d.bands() {
                if b.dims() != half || b.data.len() != half.0 * half.1 {
                    return Err(Error::InvalidPyramid(format!(
                        "level {k} band is {}x{}, expected {}x{}",
                        b.width, b.height, half.0, half.1
                    )));
                }
            }
            let next = match self.orig_sizes.get(k + 1) {
                Some(&s) => s,
                None => self.approx.dims(),
            };
            if next != half {
                return Err(Error::InvalidPyramid(format!(
                    "level {} input is {}x{}, expected {}x{}",
                    k + 1,
                    next.0,
                    next.1,
                    half.0,
                    half.1
                )));
            }
        }
        if self.approx.data.len() != self.approx.width * self.approx.height {
            return Err(Error::InvalidPyramid("approximation buffer size".into()));
        }
        Ok(())
    }

    /// Same structure (levels, sizes and family) as `other`.
    pub fn same_shape(&self, other: &Self) -> bool {
        self.family == other.family
            && self.orig_sizes == other.orig_sizes
            && self.approx.dims() == other.approx.dims()
            && self.details.len() == other.details.len()
            && self.details.iter().zip(&other.details).all(|(a, b)| {
                a.bands()
                    .iter()
                    .zip(b.bands())
                    .all(|(x, y)| x.dims() == y.dims())
            })
    }
}

/// Largest level count such that every level's input has more than one pixel.
pub fn max_levels(width: usize, height: usize) -> usize {
    let (mut w, mut h, mut n) = (width, height, 0);
    while w * h > 1 {
        w = w.div_ceil(2);
        h = h.div_ceil(2);
        n += 1;
    }
    n
}

pub fn dwt2_forward<T: Scalar>(plane: &RealPlane<T>, levels: usize) -> Result<WaveletPyramid<T>> {
    dwt2_forward_with(plane, levels, WaveletFamily::Haar)
}

pub fn dwt2_forward_with<T: Scalar>(
    plane: &RealPlane<T>,
    levels: usize,
    family: WaveletFamily,
) -> Result<WaveletPyramid<T>> {
    let (w, h) = plane.dims();
    if w == 0 || h == 0 || plane.data.len() != w * h {
        return Err(Error::InvalidDimensions {
            width: w,
            height: h,
        });
    }
    let max = max_levels(w, h);
    if levels == 0 || levels > max {
        return Err(Error::TooManyLevels {
            levels,
            width: w,
            height: h,
            max,
        });
    }
    let mut approx = plane.clone();
    let mut details = Vec::with_capacity(levels);
    let mut orig_sizes = Vec::with_capacity(levels);
    for _ in 0..levels {
        orig_sizes.push(approx.dims());
        let (ll, bands) = analyze_level(&approx, family);
        details.push(bands);
        approx = ll;
    }
    Ok(WaveletPyramid {
        approx,
        details,
        orig_sizes,
        family,
    })
}

fn analyze_level<T: Scalar>(
    src: &RealPlane<T>,
    family: WaveletFamily,
) -> (RealPlane<T>, DetailBands<T>) {
    let (w, h) = src.dims();
    let (hw, hh) = (w.div_ceil(2), h.div_ceil(2));
    // row pass: lo/hi halves per row, h rows (odd width replicated)
    let mut lo = RealPlane::zeros(hw, h);
    let mut hi = RealPlane::zeros(hw, h);
    for y in 0..h {
        for i in 0..hw {
            let a = src.get(2 * i, y);
            let b = src.get((2 * i + 1).min(w - 1), y);
            let (l, d) = family.analyze(a, b);
            lo.set(i, y, l);
            hi.set(i, y, d);
        }
    }
    // column pass
    let column = |band: &RealPlane<T>| {
        let mut l = RealPlane::zeros(hw, hh);
        let mut d = RealPlane::zeros(hw, hh);
        for j in 0..hh {
            let y0 = 2 * j;
            let y1 = (2 * j + 1).min(h - 1);
            for x in 0..hw {
                let (a, b) = family.analyze(band.get(x, y0), band.get(x, y1));
                l.set(x, j, a);
                d.set(x, j, b);
            }
        }
        (l, d)
    };
    let (ll, lh) = column(&lo);
    let (hl, hh_band) = column(&hi);
    (
        ll,
        DetailBands {
            lh,
            hl,
            hh: hh_band,
        },
    )
}

pub fn dwt2_inverse<T: Scalar>(pyr: &WaveletPyramid<T>) -> Result<RealPlane<T>> {
    pyr.validate()?;
    let mut approx = pyr.approx.clone();
    for (bands, &(w, h)) in pyr.details.iter().zip(&pyr.orig_sizes).rev() {
        approx = synthesize_level(&approx, bands, w, h, pyr.family);
    }
    Ok(approx)
}

fn synthesize_level<T: Scalar>(
    ll: &RealPlane<T>,
    bands: &DetailBands<T>,
    w: usize,
    h: usize,
    family: WaveletFamily,
) -> RealPlane<T> {
    let (hw, hh) = ll.dims();
    let (pw, ph) = (2 * hw, 2 * hh);
    // undo the column pass into padded-height lo/hi row bands
    let column = |l: &RealPlane<T>, d: &RealPlane<T>| {
        let mut out = RealPlane::zeros(hw, ph);
        for j in 0..hh {
            for x in 0..hw {
                let (a, b) = family.synthesize(l.get(x, j), d.get(x, j));
                out.set(x, 2 * j, a);
                out.set(x, 2 * j + 1, b);
            }
        }
        out
    };
    let lo = column(ll, &bands.lh);
    let hi = column(&bands.hl, &bands.hh);
    let mut full = RealPlane::zeros(pw, ph);
    for y in 0..ph {
        for i in 0..hw {
            let (a, b) = family.synthesize(lo.get(i, y), hi.get(i, y));
            full.set(2 * i, y, a);
            full.set(2 * i + 1, y, b);
        }
    }
    if (pw, ph) == (w, h) {
        return full;
    }
    let mut cropped = RealPlane::zeros(w, h);
    for y in 0..h {
        cropped.data[y * w..(y + 1) * w].copy_from_slice(&full.data[y * pw..y * pw + w]);
    }
    cropped
}
