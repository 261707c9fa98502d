//! Scalar abstraction for the real-valued kernels (wavelets, fusion, blur).

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point type usable by the real-valued stages: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Default + Send + Sync + 'static
{
    #[inline]
    fn from_byte(v: u8) -> Self {
        <Self as FromPrimitive>::from_u8(v).unwrap()
    }

    #[inline]
    fn lit(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).unwrap()
    }

    /// Clamp to `[0, 255]` and round to nearest, ties away from zero.
    #[inline]
    fn to_byte(self) -> u8 {
        let v = self.to_f64().unwrap_or(0.0);
        if v.is_nan() {
            return 0;
        }
        v.clamp(0.0, 255.0).round() as u8
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Row-major single-channel raster of real values.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPlane<T> {
    pub width: usize,
    pub height: usize,
    pub data: Vec<T>,
}

impl<T: Scalar> RealPlane<T> {
    pub fn zeros(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            data: vec![T::zero(); width * height],
        }
    }

    pub fn from_vec(width: usize, height: usize, data: Vec<T>) -> crate::Result<Self> {
        if data.len() != width * height {
            return Err(crate::Error::InvalidParameter(format!(
                "buffer of {} values does not match {}x{}",
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

    pub fn from_bytes(plane: &crate::ImagePlane) -> Self {
        Self {
            width: plane.width(),
            height: plane.height(),
            data: plane.data().iter().map(|&v| T::from_byte(v)).collect(),
        }
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> T {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: T) {
        self.data[y * self.width + x] = v;
    }

    /// Edge-replicating accessor.
    #[inline]
    pub fn get_clamped(&self, x: isize, y: isize) -> T {
        let x = x.clamp(0, self.width as isize - 1) as usize;
        let y = y.clamp(0, self.height as isize - 1) as usize;
        self.get(x, y)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    /// Quantize to bytes (clamp, round half away from zero).
    pub fn to_bytes(&self) -> crate::ImagePlane {
        crate::ImagePlane::from_vec(
            self.width,
            self.height,
            self.data.iter().map(|v| v.to_byte()).collect(),
        )
        .expect("dimensions preserved")
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()))
    }
}
