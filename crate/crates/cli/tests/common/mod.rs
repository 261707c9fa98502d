#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use cwfusion::{BinaryMask, Connectivity};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cwfusion"))
}

pub fn run(args: &[&str], cwd: &Path) -> Output {
    bin()
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("spawn cwfusion")
}

/// Recursive flood fill; returns per-pixel component ids canonicalized to the
/// raster index of each component's first pixel (`usize::MAX` = background).
pub fn flood_fill_partition(mask: &BinaryMask, conn: Connectivity) -> Vec<usize> {
    let (w, h) = mask.dims();
    let mut out = vec![usize::MAX; w * h];
    fn fill(
        mask: &BinaryMask,
        conn: Connectivity,
        out: &mut [usize],
        x: usize,
        y: usize,
        id: usize,
    ) {
        let (w, h) = mask.dims();
        out[y * w + x] = id;
        let diag = matches!(conn, Connectivity::Eight);
        for dy in -1isize..=1 {
            for dx in -1isize..=1 {
                if (dx == 0 && dy == 0) || (!diag && dx != 0 && dy != 0) {
                    continue;
                }
                let (nx, ny) = (x as isize + dx, y as isize + dy);
                if nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                    continue;
                }
                let (nx, ny) = (nx as usize, ny as usize);
                if mask.get(nx, ny) && out[ny * w + nx] == usize::MAX {
                    fill(mask, conn, out, nx, ny, id);
                }
            }
        }
    }
    for y in 0..h {
        for x in 0..w {
            if mask.get(x, y) && out[y * w + x] == usize::MAX {
                fill(mask, conn, &mut out, x, y, y * w + x);
            }
        }
    }
    out
}

/// Canonicalize arbitrary label ids the same way as [`flood_fill_partition`].
pub fn canonical_partition(labels: &[u32]) -> Vec<usize> {
    let mut first = std::collections::HashMap::new();
    labels
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            if l == 0 {
                usize::MAX
            } else {
                *first.entry(l).or_insert(i)
            }
        })
        .collect()
}

/// Exhaustive Otsu: class statistics recomputed from the raw pixels for
/// every candidate threshold; the first maximum wins.
pub fn otsu_brute_force(px: &[u8]) -> u8 {
    let n = px.len() as f64;
    let mut best = (-1.0f64, 0u8);
    for t in 0..=255u8 {
        let (mut n0, mut s0, mut n1, mut s1) = (0.0, 0.0, 0.0, 0.0);
        for &v in px {
            if v <= t {
                n0 += 1.0;
                s0 += v as f64;
            } else {
                n1 += 1.0;
                s1 += v as f64;
            }
        }
        let var = if n0 == 0.0 || n1 == 0.0 {
            0.0
        } else {
            let (m0, m1) = (s0 / n0, s1 / n1);
            (n0 / n) * (n1 / n) * (m0 - m1) * (m0 - m1)
        };
        if var > best.0 {
            best = (var, t);
        }
    }
    best.1
}
