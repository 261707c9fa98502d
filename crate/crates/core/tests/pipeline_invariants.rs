use cwfusion::pixio::{read_pnm, write_pnm};
use cwfusion::{run_detection, BinaryMask, Image, ImagePlane, PipelineConfig, TriImage};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_scene(rng: &mut ChaCha8Rng, w: usize, h: usize) -> (TriImage, ImagePlane) {
    let rects: Vec<(usize, usize, usize, usize, u8, [u8; 3])> = (0..rng.gen_range(1..5))
        .map(|_| {
            let (x0, y0) = (rng.gen_range(0..w - 4), rng.gen_range(0..h - 4));
            (
                x0,
                y0,
                rng.gen_range(x0 + 2..w),
                rng.gen_range(y0 + 2..h),
                rng.gen(),
                rng.gen(),
            )
        })
        .collect();
    let visual = TriImage::from_fn_rgb(w, h, |x, y| {
        rects
            .iter()
            .rev()
            .find(|r| (r.0..r.2).contains(&x) && (r.1..r.3).contains(&y))
            .map_or([100, 110, 120], |r| r.5)
    })
    .unwrap();
    let noise: Vec<u8> = (0..w * h).map(|_| rng.gen_range(0..12)).collect();
    let ir = ImagePlane::from_fn(w, h, |x, y| {
        let base = rects
            .iter()
            .rev()
            .find(|r| (r.0..r.2).contains(&x) && (r.1..r.3).contains(&y))
            .map_or(15, |r| r.4);
        base.saturating_add(noise[y * w + x])
    })
    .unwrap();
    (visual, ir)
}

/// Foreground pixels with at least one 4-neighbor outside the mask.
fn boundary(m: &BinaryMask) -> BinaryMask {
    let (w, h) = m.dims();
    BinaryMask::from_fn(w, h, |x, y| {
        m.get(x, y)
            && [(-1isize, 0isize), (1, 0), (0, -1), (0, 1)]
                .iter()
                .any(|&(dx, dy)| {
                    let (nx, ny) = (x as isize + dx, y as isize + dy);
                    nx < 0
                        || ny < 0
                        || nx >= w as isize
                        || ny >= h as isize
                        || !m.get(nx as usize, ny as usize)
                })
    })
}

fn dilate(m: &BinaryMask, r: usize) -> BinaryMask {
    let (w, h) = m.dims();
    BinaryMask::from_fn(w, h, |x, y| {
        (y.saturating_sub(r)..=(y + r).min(h - 1))
            .any(|yy| (x.saturating_sub(r)..=(x + r).min(w - 1)).any(|xx| m.get(xx, yy)))
    })
}

#[test]
fn random_scenes_respect_stage_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let cfg = PipelineConfig {
        min_area_frac: 0.0,
        max_area_frac: 0.5,
        ..Default::default()
    };
    let radius = cfg.canny.radius();
    for _ in 0..12 {
        let (w, h) = (rng.gen_range(24..80), rng.gen_range(24..80));
        let (visual, ir) = random_scene(&mut rng, w, h);
        let ir = Image::Gray(ir);
        let (stages, report) = run_detection(&visual, &ir, &cfg).unwrap();
        let (again, report2) = run_detection(&visual, &ir, &cfg).unwrap();
        assert_eq!(stages, again);
        assert_eq!(report, report2);

        assert!(stages.weapon_mask.is_subset_of(&stages.binary));
        assert!(report.components_after <= report.components_before);
        assert!(stages
            .contour
            .is_subset_of(&dilate(&boundary(&stages.weapon_mask), radius)));
        for b in &report.bounding_boxes {
            assert!(b.x1 < w && b.y1 < h);
        }
        assert_eq!(
            report.surviving_areas.iter().sum::<usize>(),
            stages.weapon_mask.count()
        );
        for (_, img) in stages.named_images() {
            assert_eq!(img.dims(), (w, h));
        }
    }
}

#[test]
fn pipeline_through_pnm_files() {
    let scene = cwfusion::SyntheticScene::new(96).unwrap();
    let v_bytes = write_pnm(&Image::Tri(scene.visual.clone()), false);
    let i_bytes = write_pnm(&Image::Gray(scene.ir.clone()), true);
    let Image::Tri(visual) = read_pnm(&v_bytes).unwrap() else {
        panic!("expected rgb")
    };
    let ir = read_pnm(&i_bytes).unwrap();
    let (stages, report) = run_detection(&visual, &ir, &PipelineConfig::default()).unwrap();
    assert_eq!(report.components_after, 1);
    assert!(scene.weapon_iou(&stages.weapon_mask) >= 0.5);
    // contour of a rectangle is a closed ring around it
    assert!(stages.contour.count() > 0);
    let ring_box = {
        let lm = cwfusion::label_components(&stages.contour, cwfusion::Connectivity::Eight);
        lm.bounding_boxes()
    };
    assert_eq!(ring_box.len(), 1);
}

#[test]
fn color_ir_input_is_accepted() {
    let scene = cwfusion::SyntheticScene::new(80).unwrap();
    // pseudo-color IR with the same luminance layout
    let ir = TriImage::from_fn_rgb(80, 80, |x, y| {
        let v = scene.ir.get(x, y);
        [v, v / 2, 255 - v]
    })
    .unwrap();
    let (stages, _) =
        run_detection(&scene.visual, &Image::Tri(ir), &PipelineConfig::default()).unwrap();
    assert_eq!(stages.ir_hsv.dims(), (80, 80));
}
