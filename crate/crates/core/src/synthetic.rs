//! Synthetic visual/IR scene pair with a known concealed-object rectangle.

use crate::imgcore::{ImagePlane, TriImage};
use crate::segment::{BinaryMask, BoundingBox};
use crate::Result;

pub const IR_BACKGROUND: u8 = 10;
pub const IR_BODY: u8 = 230;
pub const IR_OBJECT: u8 = 40;
pub const VISUAL_BACKGROUND: [u8; 3] = [128, 128, 128];
pub const VISUAL_BODY: [u8; 3] = [60, 90, 150];

/// A standing "body" rectangle with a colder object under the clothing,
/// invisible in the visual image.
#[derive(Debug, Clone)]
pub struct SyntheticScene {
    pub visual: TriImage,
    pub ir: ImagePlane,
    pub body: BoundingBox,
    pub object: BoundingBox,
}

fn rect(size: usize, x0: f64, y0: f64, x1: f64, y1: f64) -> BoundingBox {
    let s = size as f64;
    let px = |f: f64| ((f * s).round() as usize).min(size - 1);
    BoundingBox {
        x0: px(x0),
        y0: px(y0),
        x1: px(x1) - 1,
        y1: px(y1) - 1,
    }
}

fn inside(b: &BoundingBox, x: usize, y: usize) -> bool {
    (b.x0..=b.x1).contains(&x) && (b.y0..=b.y1).contains(&y)
}

impl SyntheticScene {
    /// Square scene of `size`×`size` pixels (at least 16).
    pub fn new(size: usize) -> Result<Self> {
        if size < 16 {
            return Err(crate::Error::InvalidDimensions {
                width: size,
                height: size,
            });
        }
        let body = rect(size, 0.30, 0.15, 0.70, 0.95);
        let object = rect(size, 0.42, 0.45, 0.55, 0.55);
        let visual = TriImage::from_fn_rgb(size, size, |x, y| {
            if inside(&body, x, y) {
                VISUAL_BODY
            } else {
                VISUAL_BACKGROUND
            }
        })?;
        let ir = ImagePlane::from_fn(size, size, |x, y| {
            if inside(&object, x, y) {
                IR_OBJECT
            } else if inside(&body, x, y) {
                IR_BODY
            } else {
                IR_BACKGROUND
            }
        })?;
        Ok(Self {
            visual,
            ir,
            body,
            object,
        })
    }

    pub fn object_mask(&self) -> BinaryMask {
        let (w, h) = self.ir.dims();
        BinaryMask::from_fn(w, h, |x, y| inside(&self.object, x, y))
    }

    /// Intersection over union of `mask` with the object rectangle.
    pub fn weapon_iou(&self, mask: &BinaryMask) -> f64 {
        let truth = self.object_mask();
        let (mut inter, mut union) = (0usize, 0usize);
        for (&a, &b) in mask.data().iter().zip(truth.data()) {
            inter += (a && b) as usize;
            union += (a || b) as usize;
        }
        if union == 0 {
            0.0
        } else {
            inter as f64 / union as f64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry() {
        let s = SyntheticScene::new(512).unwrap();
        assert!(inside(&s.body, s.object.x0, s.object.y0));
        assert!(inside(&s.body, s.object.x1, s.object.y1));
        assert_eq!(s.ir.get(0, 0), IR_BACKGROUND);
        assert_eq!(s.ir.get(s.object.x0, s.object.y0), IR_OBJECT);
        assert_eq!(s.visual.pixel(s.object.x0, s.object.y0), VISUAL_BODY);
        assert_eq!(s.weapon_iou(&s.object_mask()), 1.0);
        assert!(SyntheticScene::new(8).is_err());
    }
}
