//! Otsu binarization, connected-component labeling and area filtering.

use crate::imgcore::{ColorSpace, ImagePlane, TriImage};
use crate::{Error, Result};

/// Per-pixel foreground flags.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    data: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            data: vec![false; width * height],
        }
    }

    pub fn from_vec(width: usize, height: usize, data: Vec<bool>) -> Result<Self> {
        if data.len() != width * height {
            return Err(Error::InvalidParameter(format!(
                "mask of {} flags does not match {}x{}",
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

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::new(width, height);
        for y in 0..height {
            for x in 0..width {
                m.data[y * width + x] = f(x, y);
            }
        }
        m
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

    pub fn data(&self) -> &[bool] {
        &self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: bool) {
        self.data[y * self.width + x] = v;
    }

    pub fn count(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    /// Every foreground pixel of `self` is foreground in `other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.dims() == other.dims() && self.data.iter().zip(&other.data).all(|(&a, &b)| !a || b)
    }

    /// 0 for background, 255 for foreground.
    pub fn to_plane(&self) -> ImagePlane {
        ImagePlane::from_vec(
            self.width,
            self.height,
            self.data.iter().map(|&b| if b { 255 } else { 0 }).collect(),
        )
        .expect("mask dimensions are nonzero")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    Four,
    #[default]
    Eight,
}

impl Connectivity {
    /// Neighbors already visited in a raster scan (west, north-west, north, north-east).
    fn backward(self) -> &'static [(isize, isize)] {
        match self {
            Connectivity::Four => &[(-1, 0), (0, -1)],
            Connectivity::Eight => &[(-1, 0), (-1, -1), (0, -1), (1, -1)],
        }
    }

    pub fn offsets(self) -> &'static [(isize, isize)] {
        match self {
            Connectivity::Four => &[(-1, 0), (1, 0), (0, -1), (0, 1)],
            Connectivity::Eight => &[
                (-1, -1),
                (0, -1),
                (1, -1),
                (-1, 0),
                (1, 0),
                (-1, 1),
                (0, 1),
                (1, 1),
            ],
        }
    }
}

/// Inclusive pixel bounds of a component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundingBox {
    pub x0: usize,
    pub y0: usize,
    pub x1: usize,
    pub y1: usize,
}

impl BoundingBox {
    pub fn width(&self) -> usize {
        self.x1 - self.x0 + 1
    }

    pub fn height(&self) -> usize {
        self.y1 - self.y0 + 1
    }
}

/// Component ids per pixel (0 = background, 1..=N dense) and their areas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    width: usize,
    height: usize,
    labels: Vec<u32>,
    areas: Vec<usize>,
}

impl LabelMap {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, x: usize, y: usize) -> u32 {
        self.labels[y * self.width + x]
    }

    pub fn component_count(&self) -> usize {
        self.areas.len()
    }

    /// Area of component `id` (1-based).
    pub fn area(&self, id: u32) -> usize {
        self.areas[id as usize - 1]
    }

    /// Areas indexed by `id - 1`.
    pub fn areas(&self) -> &[usize] {
        &self.areas
    }

    pub fn bounding_boxes(&self) -> Vec<BoundingBox> {
        let mut boxes: Vec<Option<BoundingBox>> = vec![None; self.areas.len()];
        for y in 0..self.height {
            for x in 0..self.width {
                let id = self.label(x, y);
                if id == 0 {
                    continue;
                }
                let b = boxes[id as usize - 1].get_or_insert(BoundingBox {
                    x0: x,
                    y0: y,
                    x1: x,
                    y1: y,
                });
                b.x0 = b.x0.min(x);
                b.x1 = b.x1.max(x);
                b.y1 = b.y1.max(y);
            }
        }
        boxes
            .into_iter()
            .map(|b| b.expect("dense labels"))
            .collect()
    }

    pub fn mask_of(&self, keep: impl Fn(u32) -> bool) -> BinaryMask {
        BinaryMask {
            width: self.width,
            height: self.height,
            data: self.labels.iter().map(|&l| l != 0 && keep(l)).collect(),
        }
    }
}

/// 256-bin intensity histogram.
pub fn histogram(img: &ImagePlane) -> [u64; 256] {
    let mut h = [0u64; 256];
    for &v in img.data() {
        h[v as usize] += 1;
    }
    h
}

/// Global Otsu threshold: the smallest `t` maximizing the between-class
/// variance of `{v <= t}` against `{v > t}`. A constant image returns its value.
pub fn otsu_threshold(img: &ImagePlane) -> u8 {
    otsu_from_histogram(&histogram(img))
}

pub fn otsu_from_histogram(hist: &[u64; 256]) -> u8 {
    let total: u64 = hist.iter().sum();
    let sum: u128 = hist
        .iter()
        .enumerate()
        .map(|(v, &c)| v as u128 * c as u128)
        .sum();
    if let Some(v) = single_value(hist) {
        return v;
    }
    // sigma_B^2(t) = (N*S0 - n0*S)^2 / (N^2 * n0 * n1), compared exactly as
    // rationals num/den with the constant N^2 dropped.
    let mut best_t = 0u8;
    let mut best: Option<(u128, u128)> = None;
    let (mut n0, mut s0) = (0u64, 0u128);
    for (t, &count) in hist.iter().enumerate() {
        n0 += count;
        s0 += t as u128 * count as u128;
        let n1 = total - n0;
        let (num, den) = if n0 == 0 || n1 == 0 {
            (0u128, 1u128)
        } else {
            let diff = (total as i128 * s0 as i128 - n0 as i128 * sum as i128).unsigned_abs();
            (diff * diff, n0 as u128 * n1 as u128)
        };
        let better = match best {
            None => true,
            Some((bn, bd)) => wide_mul(num, bd) > wide_mul(bn, den),
        };
        if better {
            best = Some((num, den));
            best_t = t as u8;
        }
    }
    best_t
}

fn single_value(hist: &[u64; 256]) -> Option<u8> {
    let mut it = hist.iter().enumerate().filter(|(_, &c)| c > 0);
    match (it.next(), it.next()) {
        (Some((v, _)), None) => Some(v as u8),
        _ => None,
    }
}

// 256-bit product as (hi, lo) for exact comparison.
fn wide_mul(a: u128, b: u128) -> (u128, u128) {
    let mask = u64::MAX as u128;
    let (a_hi, a_lo) = (a >> 64, a & mask);
    let (b_hi, b_lo) = (b >> 64, b & mask);
    let ll = a_lo * b_lo;
    let lh = a_lo * b_hi;
    let hl = a_hi * b_lo;
    let hh = a_hi * b_hi;
    let mid = (ll >> 64) + (lh & mask) + (hl & mask);
    let lo = (ll & mask) | (mid << 64);
    let hi = hh + (lh >> 64) + (hl >> 64) + (mid >> 64);
    (hi, lo)
}

/// Foreground where `pixel > t`.
pub fn binarize(img: &ImagePlane, t: u8) -> BinaryMask {
    BinaryMask {
        width: img.width(),
        height: img.height(),
        data: img.data().iter().map(|&v| v > t).collect(),
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new() -> Self {
        // slot 0 is the background label
        Self { parent: vec![0] }
    }

    fn make_set(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        id
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> u32 {
        let (ra, rb) = (self.find(a), self.find(b));
        // the smaller id stays root so roots follow raster order
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        lo
    }
}

/// Two-pass union-find labeling; ids follow raster order of first encounter.
pub fn label_components(mask: &BinaryMask, connectivity: Connectivity) -> LabelMap {
    let (w, h) = mask.dims();
    let mut provisional = vec![0u32; w * h];
    let mut uf = UnionFind::new();
    for y in 0..h {
        for x in 0..w {
            if !mask.get(x, y) {
                continue;
            }
            let mut label = 0u32;
            for &(dx, dy) in connectivity.backward() {
                let (nx, ny) = (x as isize + dx, y as isize + dy);
                if nx < 0 || ny < 0 || nx >= w as isize {
                    continue;
                }
                let n = provisional[ny as usize * w + nx as usize];
                if n == 0 {
                    continue;
                }
                label = if label == 0 { n } else { uf.union(label, n) };
            }
            if label == 0 {
                label = uf.make_set();
            }
            provisional[y * w + x] = label;
        }
    }

    let mut dense = vec![0u32; uf.parent.len()];
    let mut areas = Vec::new();
    let mut labels = provisional;
    for l in labels.iter_mut() {
        if *l == 0 {
            continue;
        }
        let root = uf.find(*l) as usize;
        if dense[root] == 0 {
            areas.push(0);
            dense[root] = areas.len() as u32;
        }
        *l = dense[root];
        areas[*l as usize - 1] += 1;
    }
    LabelMap {
        width: w,
        height: h,
        labels,
        areas,
    }
}

/// Keep the components whose area lies in `[min_area, max_area]`.
pub fn filter_components_by_area(
    lm: &LabelMap,
    min_area: usize,
    max_area: usize,
) -> Result<BinaryMask> {
    if min_area > max_area {
        return Err(Error::InvalidParameter(format!(
            "min area {min_area} exceeds max area {max_area}"
        )));
    }
    Ok(lm.mask_of(|id| (min_area..=max_area).contains(&lm.area(id))))
}

/// Background pixels become black; foreground pixels keep their color.
pub fn mask_multiply_rgb(mask: &BinaryMask, img: &TriImage) -> Result<TriImage> {
    img.expect_space(ColorSpace::Rgb)?;
    if mask.dims() != img.dims() {
        return Err(Error::mismatch(mask.dims(), img.dims()));
    }
    let apply = |p: &ImagePlane| {
        let data = p
            .data()
            .iter()
            .zip(mask.data())
            .map(|(&v, &m)| v * m as u8)
            .collect();
        ImagePlane::from_vec(p.width(), p.height(), data).expect("same dimensions")
    };
    let [r, g, b] = img.planes();
    TriImage::new([apply(r), apply(g), apply(b)], ColorSpace::Rgb)
}
