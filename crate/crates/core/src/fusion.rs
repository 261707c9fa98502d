//! Coefficient-domain fusion of wavelet pyramids and of three-plane images.

use crate::dwt::{dwt2_forward, dwt2_inverse, WaveletPyramid};
use crate::imgcore::{ColorSpace, TriImage};
use crate::scalar::{RealPlane, Scalar};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ApproxRule {
    #[default]
    Average,
    SelectA,
    SelectB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DetailRule {
    /// Keep the coefficient of larger magnitude; ties go to the first input.
    #[default]
    MaxAbs,
    Average,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FusionRule {
    pub approx: ApproxRule,
    pub detail: DetailRule,
}

impl ApproxRule {
    #[inline]
    fn apply<T: Scalar>(self, a: T, b: T) -> T {
        match self {
            ApproxRule::Average => (a + b) / T::lit(2.0),
            ApproxRule::SelectA => a,
            ApproxRule::SelectB => b,
        }
    }
}

impl DetailRule {
    #[inline]
    fn apply<T: Scalar>(self, a: T, b: T) -> T {
        match self {
            DetailRule::MaxAbs => {
                if b.abs() > a.abs() {
                    b
                } else {
                    a
                }
            }
            DetailRule::Average => (a + b) / T::lit(2.0),
        }
    }
}

fn zip_band<T: Scalar>(a: &RealPlane<T>, b: &RealPlane<T>, f: impl Fn(T, T) -> T) -> RealPlane<T> {
    RealPlane {
        width: a.width,
        height: a.height,
        data: a.data.iter().zip(&b.data).map(|(&x, &y)| f(x, y)).collect(),
    }
}

pub fn fuse_pyramids<T: Scalar>(
    a: &WaveletPyramid<T>,
    b: &WaveletPyramid<T>,
    rule: FusionRule,
) -> Result<WaveletPyramid<T>> {
    if !a.same_shape(b) {
        return Err(Error::InvalidPyramid(
            "cannot fuse pyramids of different structure".into(),
        ));
    }
    let approx = zip_band(&a.approx, &b.approx, |x, y| rule.approx.apply(x, y));
    let details = a
        .details
        .iter()
        .zip(&b.details)
        .map(|(da, db)| {
            let f = |x, y| rule.detail.apply(x, y);
            crate::dwt::DetailBands {
                lh: zip_band(&da.lh, &db.lh, f),
                hl: zip_band(&da.hl, &db.hl, f),
                hh: zip_band(&da.hh, &db.hh, f),
            }
        })
        .collect();
    Ok(WaveletPyramid {
        approx,
        details,
        orig_sizes: a.orig_sizes.clone(),
        family: a.family,
    })
}

/// Fuse channel `i` of `a` with channel `i` of `b` through `levels` of DWT,
/// then clamp and round back to bytes. The result is tagged RGB.
pub fn fuse_triimages(
    a: &TriImage,
    b: &TriImage,
    levels: usize,
    rule: FusionRule,
) -> Result<TriImage> {
    fuse_triimages_as::<f64>(a, b, levels, rule)
}

/// [`fuse_triimages`] with the wavelet arithmetic carried out in `T`.
pub fn fuse_triimages_as<T: Scalar>(
    a: &TriImage,
    b: &TriImage,
    levels: usize,
    rule: FusionRule,
) -> Result<TriImage> {
    if a.dims() != b.dims() {
        return Err(Error::mismatch(a.dims(), b.dims()));
    }
    let channel = |c: usize| -> Result<_> {
        let pa = dwt2_forward(&RealPlane::<T>::from_bytes(a.plane(c)), levels)?;
        let pb = dwt2_forward(&RealPlane::<T>::from_bytes(b.plane(c)), levels)?;
        Ok(dwt2_inverse(&fuse_pyramids(&pa, &pb, rule)?)?.to_bytes())
    };
    TriImage::new([channel(0)?, channel(1)?, channel(2)?], ColorSpace::Rgb)
}
