use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use super::VisionError;

pub const DEFAULT_WIDTH: usize = 640;
pub const DEFAULT_HEIGHT: usize = 480;

pub type Rgb = [u8; 3];

/// 8-bit RGB raster, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterImage {
    width: usize,
    height: usize,
    pixels: Vec<Rgb>,
}

impl RasterImage {
    pub fn new(width: usize, height: usize, fill: Rgb) -> Self {
        Self {
            width,
            height,
            pixels: vec![fill; width * height],
        }
    }

    pub fn from_pixels(width: usize, height: usize, pixels: Vec<Rgb>) -> Result<Self, VisionError> {
        if pixels.len() != width * height {
            return Err(VisionError::Image(format!(
                "{} pixels for a {width}x{height} image",
                pixels.len()
            )));
        }
        Ok(Self { width, height, pixels })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[Rgb] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> Rgb {
        self.pixels[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, c: Rgb) {
        self.pixels[y * self.width + x] = c;
    }

    pub fn write_ppm<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        write!(w, "P6\n{} {}\n255\n", self.width, self.height)?;
        let bytes: Vec<u8> = self.pixels.iter().flatten().copied().collect();
        w.write_all(&bytes)
    }

    pub fn save(&self, path: &Path) -> Result<(), VisionError> {
        let f = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(f);
        self.write_ppm(&mut w)?;
        w.flush()?;
        Ok(())
    }

    /// Binary P6 with maxval 255. `#` comments are allowed in the header.
    pub fn read_ppm<R: Read>(r: R) -> Result<Self, VisionError> {
        let mut r = BufReader::new(r);
        let magic = header_token(&mut r)?;
        if magic != "P6" {
            return Err(VisionError::Image(format!("unsupported magic `{magic}`")));
        }
        let mut number = |what: &str| -> Result<usize, VisionError> {
            let t = header_token(&mut r)?;
            t.parse().map_err(|_| VisionError::Image(format!("bad {what} `{t}`")))
        };
        let width = number("width")?;
        let height = number("height")?;
        let maxval = number("maxval")?;
        if maxval != 255 {
            return Err(VisionError::Image(format!("maxval {maxval} (only 255 is supported)")));
        }
        let mut data = vec![0u8; width * height * 3];
        r.read_exact(&mut data)
            .map_err(|_| VisionError::Image("truncated pixel data".to_string()))?;
        let pixels = data.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
        Self::from_pixels(width, height, pixels)
    }

    pub fn load(path: &Path) -> Result<Self, VisionError> {
        Self::read_ppm(std::fs::File::open(path)?)
    }
}

/// Reads one whitespace-delimited header token and consumes exactly one
/// trailing whitespace byte.
fn header_token<R: BufRead>(r: &mut R) -> Result<String, VisionError> {
    let mut token = String::new();
    let mut byte = [0u8; 1];
    loop {
        if r.read(&mut byte)? == 0 {
            return Err(VisionError::Image("truncated header".to_string()));
        }
        let c = byte[0];
        if c == b'#' && token.is_empty() {
            let mut skip = Vec::new();
            r.read_until(b'\n', &mut skip)?;
        } else if c.is_ascii_whitespace() {
            if !token.is_empty() {
                return Ok(token);
            }
        } else {
            token.push(c as char);
        }
    }
}
