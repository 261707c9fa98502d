mod args;

use std::fmt;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use cwfusion::pixio::write_pnm;
use cwfusion::{
    binarize, canny, dwt2_forward, dwt2_inverse, fuse_triimages, otsu_threshold, read_pnm,
    rgb_to_gray, run_detection, Image, ImagePlane, Plane, SyntheticScene, TriImage,
};

use args::{Cli, Command};

enum CliError {
    Usage(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

impl From<cwfusion::Error> for CliError {
    fn from(e: cwfusion::Error) -> Self {
        match e {
            cwfusion::Error::InvalidParameter(_) | cwfusion::Error::TooManyLevels { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Io(e.to_string()),
        }
    }
}

fn read_image(path: &Path) -> Result<Image, CliError> {
    let bytes =
        std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    read_pnm(&bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_image(path: &Path, img: &Image) -> Result<(), CliError> {
    std::fs::write(path, write_pnm(img, false))
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn gray_of(img: &Image) -> Result<ImagePlane, CliError> {
    Ok(match img {
        Image::Gray(p) => p.clone(),
        Image::Tri(t) => rgb_to_gray(t)?,
    })
}

fn make_synthetic(dir: &Path, size: usize) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let scene = SyntheticScene::new(size).map_err(|e| CliError::Usage(e.to_string()))?;
    write_image(&dir.join("visual.ppm"), &Image::Tri(scene.visual.clone()))?;
    write_image(&dir.join("ir.pgm"), &Image::Gray(scene.ir.clone()))?;
    let b = scene.object;
    write_text(
        &dir.join("truth.txt"),
        &format!("object_bbox={},{},{},{}\n", b.x0, b.y0, b.x1, b.y1),
    )
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(dir) = &cli.make_synthetic {
        make_synthetic(dir, cli.synthetic_size)?;
    }
    let Some(command) = cli.command else {
        if cli.make_synthetic.is_some() {
            return Ok(());
        }
        return Err(CliError::Usage(
            "no subcommand given (try `cwfusion --help`)".into(),
        ));
    };
    match command {
        Command::Detect(a) => {
            let cfg = a.config();
            cfg.validate()?;
            let visual = read_image(&a.visual)?;
            let Image::Tri(visual) = visual else {
                return Err(CliError::Io(format!(
                    "{}: visual image must be a color PPM",
                    a.visual.display()
                )));
            };
            let ir = read_image(&a.ir)?;
            let (stages, report) = run_detection(&visual, &ir, &cfg)?;
            write_image(&a.out, &Image::Tri(stages.contour_on_visual.clone()))?;
            if let Some(dir) = &a.dump_stages {
                std::fs::create_dir_all(dir)
                    .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
                for (stem, img) in stages.named_images() {
                    let ext = match img {
                        Image::Gray(_) => "pgm",
                        Image::Tri(_) => "ppm",
                    };
                    write_image(&dir.join(format!("{stem}.{ext}")), &img)?;
                }
            }
            if let Some(path) = &a.report {
                write_text(path, &report.to_key_values())?;
            }
        }
        Command::Fuse(a) => {
            let (x, y) = (read_image(&a.a)?.to_tri(), read_image(&a.b)?.to_tri());
            let fused: TriImage = fuse_triimages(&x, &y, a.levels, a.fusion.rule())?;
            write_image(&a.out, &Image::Tri(fused))?;
        }
        Command::Otsu(a) => {
            let gray = gray_of(&read_image(&a.input)?)?;
            let t = otsu_threshold(&gray);
            println!("otsu_t={t}");
            if let Some(out) = &a.out {
                write_image(out, &Image::Gray(binarize(&gray, t).to_plane()))?;
            }
        }
        Command::Canny(a) => {
            let gray = gray_of(&read_image(&a.input)?)?;
            let edges = canny(&gray, &a.canny.params())?;
            write_image(&a.out, &Image::Gray(edges.to_plane()))?;
        }
        Command::DwtRoundtrip(a) => {
            let planes: Vec<ImagePlane> = match read_image(&a.input)? {
                Image::Gray(p) => vec![p],
                Image::Tri(t) => t.into_planes().into(),
            };
            let mut err = 0.0f64;
            for p in &planes {
                let x = Plane::from_bytes(p);
                let back = dwt2_inverse(&dwt2_forward(&x, a.levels)?)?;
                err = err.max(back.max_abs_diff(&x));
            }
            println!("max_abs_error={err:e}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
