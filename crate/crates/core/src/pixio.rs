//! Reading and writing binary and ASCII PGM/PPM files with maxval 255.

use crate::imgcore::{ColorSpace, Image, ImagePlane, TriImage};
use crate::{Error, Result};

/// The four supported netpbm variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PnmFormat {
    /// `P2`
    GrayAscii,
    /// `P3`
    RgbAscii,
    /// `P5`
    GrayBinary,
    /// `P6`
    RgbBinary,
}

impl PnmFormat {
    fn from_magic(m: &[u8]) -> Option<Self> {
        match m {
            b"P2" => Some(Self::GrayAscii),
            b"P3" => Some(Self::RgbAscii),
            b"P5" => Some(Self::GrayBinary),
            b"P6" => Some(Self::RgbBinary),
            _ => None,
        }
    }

    pub fn magic(self) -> &'static str {
        match self {
            Self::GrayAscii => "P2",
            Self::RgbAscii => "P3",
            Self::GrayBinary => "P5",
            Self::RgbBinary => "P6",
        }
    }

    pub fn channels(self) -> usize {
        match self {
            Self::GrayAscii | Self::GrayBinary => 1,
            Self::RgbAscii | Self::RgbBinary => 3,
        }
    }

    pub fn is_ascii(self) -> bool {
        matches!(self, Self::GrayAscii | Self::RgbAscii)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PnmHeader {
    pub format: PnmFormat,
    pub width: usize,
    pub height: usize,
    pub maxval: u32,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    /// Next decimal token and the offset it starts at.
    fn number(&mut self, what: &str) -> Result<(u64, usize)> {
        self.skip_ws_and_comments();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or_else(|| Error::pnm(start, format!("{what} is too large")))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(if self.pos >= self.bytes.len() {
                Error::pnm(start, format!("unexpected end of data, expected {what}"))
            } else {
                Error::pnm(start, format!("expected {what}"))
            });
        }
        if let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_whitespace() && b != b'#' {
                return Err(Error::pnm(
                    self.pos,
                    format!("unexpected byte 0x{b:02x} in {what}"),
                ));
            }
        }
        Ok((value, start))
    }
}

fn parse_header(bytes: &[u8]) -> Result<(PnmHeader, usize)> {
    let magic = bytes
        .get(0..2)
        .ok_or_else(|| Error::pnm(0, "file too short for magic number"))?;
    let format =
        PnmFormat::from_magic(magic).ok_or_else(|| Error::pnm(0, "unsupported magic number"))?;
    let mut cur = Cursor { bytes, pos: 2 };
    if let Some(&b) = bytes.get(2) {
        if !b.is_ascii_whitespace() && b != b'#' {
            return Err(Error::pnm(2, "malformed magic number"));
        }
    }
    let (width, w_at) = cur.number("width")?;
    let (height, h_at) = cur.number("height")?;
    if width == 0 {
        return Err(Error::pnm(w_at, "zero width"));
    }
    if height == 0 {
        return Err(Error::pnm(h_at, "zero height"));
    }
    let (maxval, m_at) = cur.number("maxval")?;
    if maxval != 255 {
        return Err(Error::pnm(
            m_at,
            format!("maxval {maxval} unsupported, only 255"),
        ));
    }
    Ok((
        PnmHeader {
            format,
            width: width as usize,
            height: height as usize,
            maxval: 255,
        },
        cur.pos,
    ))
}

/// Parse a P2/P3/P5/P6 stream. P2/P5 yield a gray plane, P3/P6 an RGB image.
pub fn read_pnm(bytes: &[u8]) -> Result<Image> {
    let (header, mut pos) = parse_header(bytes)?;
    let n = header
        .width
        .checked_mul(header.height)
        .and_then(|n| n.checked_mul(header.format.channels()))
        .ok_or_else(|| Error::pnm(0, "image dimensions overflow"))?;

    let payload = if header.format.is_ascii() {
        let mut cur = Cursor { bytes, pos };
        let mut out = Vec::with_capacity(n.min(1 << 24));
        for _ in 0..n {
            let (v, at) = cur.number("sample")?;
            if v > 255 {
                return Err(Error::pnm(at, format!("sample {v} exceeds maxval")));
            }
            out.push(v as u8);
        }
        out
    } else {
        // exactly one whitespace byte separates maxval from the raster
        match bytes.get(pos) {
            Some(b) if b.is_ascii_whitespace() => pos += 1,
            _ => return Err(Error::pnm(pos, "missing whitespace before pixel data")),
        }
        let end = pos
            .checked_add(n)
            .filter(|&e| e <= bytes.len())
            .ok_or_else(|| {
                Error::pnm(
                    bytes.len(),
                    format!(
                        "truncated pixel data: need {n} bytes, have {}",
                        bytes.len() - pos
                    ),
                )
            })?;
        bytes[pos..end].to_vec()
    };

    Ok(if header.format.channels() == 1 {
        Image::Gray(ImagePlane::from_vec(header.width, header.height, payload)?)
    } else {
        Image::Tri(TriImage::from_interleaved(
            header.width,
            header.height,
            &payload,
            ColorSpace::Rgb,
        )?)
    })
}

/// Canonical encoding: single spaces between header tokens, no comments.
pub fn write_pnm(img: &Image, ascii: bool) -> Vec<u8> {
    let (w, h) = img.dims();
    let (format, samples) = match (img, ascii) {
        (Image::Gray(p), false) => (PnmFormat::GrayBinary, p.data().to_vec()),
        (Image::Gray(p), true) => (PnmFormat::GrayAscii, p.data().to_vec()),
        (Image::Tri(t), false) => (PnmFormat::RgbBinary, t.interleaved()),
        (Image::Tri(t), true) => (PnmFormat::RgbAscii, t.interleaved()),
    };
    let mut out = format!("{} {} {} 255 ", format.magic(), w, h).into_bytes();
    if ascii {
        let body: Vec<String> = samples.iter().map(|v| v.to_string()).collect();
        out.extend_from_slice(body.join(" ").as_bytes());
        out.push(b'\n');
    } else {
        out.extend_from_slice(&samples);
    }
    out
}

pub fn read_pnm_file(path: impl AsRef<std::path::Path>) -> std::io::Result<Result<Image>> {
    Ok(read_pnm(&std::fs::read(path)?))
}

pub fn write_pnm_file(path: impl AsRef<std::path::Path>, img: &Image) -> std::io::Result<()> {
    std::fs::write(path, write_pnm(img, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gray(img: Image) -> ImagePlane {
        match img {
            Image::Gray(p) => p,
            Image::Tri(_) => panic!("expected gray"),
        }
    }

    #[test]
    fn smallest_binary_gray() {
        let mut bytes = b"P5 2 1 255 ".to_vec();
        bytes.extend([0, 255]);
        let p = gray(read_pnm(&bytes).unwrap());
        assert_eq!(p.dims(), (2, 1));
        assert_eq!(p.data(), &[0, 255]);
    }

    #[test]
    fn single_rgb_pixel() {
        let mut bytes = b"P6\n1 1\n255\n".to_vec();
        bytes.extend([10, 20, 30]);
        match read_pnm(&bytes).unwrap() {
            Image::Tri(t) => {
                assert_eq!(t.pixel(0, 0), [10, 20, 30]);
                assert_eq!(t.space(), ColorSpace::Rgb);
            }
            _ => panic!("expected rgb"),
        }
    }

    #[test]
    fn ascii_gray_with_comments() {
        let p = gray(read_pnm(b"P2 2 2 255  0 64 128 255").unwrap());
        assert_eq!(p.data(), &[0, 64, 128, 255]);
        let q = gray(read_pnm(b"P2\n# made by hand\n2 # w\n2\n255\n0 64\n128 255\n").unwrap());
        assert_eq!(q, p);
    }

    #[test]
    fn binary_payload_may_start_with_whitespace_byte() {
        let mut bytes = b"P5 # c\n2 1 255\n".to_vec();
        bytes.extend(*b" \n");
        assert_eq!(gray(read_pnm(&bytes).unwrap()).data(), &[32, 10]);
    }

    #[test]
    fn write_canonical_forms() {
        let p = ImagePlane::filled(1, 1, 0).unwrap();
        let mut expect = b"P5 1 1 255 ".to_vec();
        expect.push(0);
        assert_eq!(write_pnm(&p.into(), false), expect);

        let q = ImagePlane::from_vec(1, 2, vec![7, 9]).unwrap();
        let text = String::from_utf8(write_pnm(&q.into(), true)).unwrap();
        assert_eq!(
            text.split_whitespace().collect::<Vec<_>>(),
            ["P2", "1", "2", "255", "7", "9"]
        );
    }

    #[test]
    fn errors_carry_offsets() {
        match read_pnm(b"P7 1 1 255 x") {
            Err(Error::Pnm { offset: 0, .. }) => {}
            other => panic!("{other:?}"),
        }
        match read_pnm(b"P5 1 1 65535 ab") {
            Err(Error::Pnm { offset, .. }) => assert_eq!(offset, 7),
            other => panic!("{other:?}"),
        }
        match read_pnm(b"P5 0 1 255 ") {
            Err(Error::Pnm { offset, message }) => {
                assert_eq!(offset, 3);
                assert!(message.contains("zero width"));
            }
            other => panic!("{other:?}"),
        }
        match read_pnm(b"P6 2 2 255 abc") {
            Err(Error::Pnm { offset, message }) => {
                assert_eq!(offset, 14);
                assert!(message.contains("truncated"));
            }
            other => panic!("{other:?}"),
        }
        assert!(read_pnm(b"P2 2 1 255 4").is_err());
        assert!(read_pnm(b"P2 1 1 255 256").is_err());
        assert!(read_pnm(b"P5").is_err());
        assert!(read_pnm(b"").is_err());
        assert!(read_pnm(b"P51 1 255 a").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn any_image() -> impl Strategy<Value = Image> {
            (1usize..17, 1usize..17, any::<bool>()).prop_flat_map(|(w, h, rgb)| {
                let n = w * h * if rgb { 3 } else { 1 };
                proptest::collection::vec(any::<u8>(), n).prop_map(move |d| {
                    if rgb {
                        Image::Tri(TriImage::from_interleaved(w, h, &d, ColorSpace::Rgb).unwrap())
                    } else {
                        Image::Gray(ImagePlane::from_vec(w, h, d).unwrap())
                    }
                })
            })
        }

        proptest! {
            #[test]
            fn round_trip(img in any_image(), ascii in any::<bool>()) {
                let bytes = write_pnm(&img, ascii);
                let back = read_pnm(&bytes).unwrap();
                prop_assert_eq!(&back, &img);
                // canonical form is a fixed point
                prop_assert_eq!(write_pnm(&back, ascii), bytes);
            }
        }
    }
}
