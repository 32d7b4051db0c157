use std::fmt;
use std::str::FromStr;

use crate::config::KeyValues;

use super::image::Rgb;
use super::VisionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColorName {
    Cyan,
    Orange,
    Magenta,
    Yellow,
    Blue,
    Green,
    Red,
}

impl ColorName {
    pub const ALL: [ColorName; 7] = [
        ColorName::Cyan,
        ColorName::Orange,
        ColorName::Magenta,
        ColorName::Yellow,
        ColorName::Blue,
        ColorName::Green,
        ColorName::Red,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ColorName::Cyan => "cyan",
            ColorName::Orange => "orange",
            ColorName::Magenta => "magenta",
            ColorName::Yellow => "yellow",
            ColorName::Blue => "blue",
            ColorName::Green => "green",
            ColorName::Red => "red",
        }
    }

    /// Paint colour used by the scene renderer.
    pub fn nominal(self) -> Rgb {
        match self {
            ColorName::Cyan => [0, 255, 255],
            ColorName::Orange => [255, 140, 0],
            ColorName::Magenta => [255, 0, 255],
            ColorName::Yellow => [255, 255, 0],
            ColorName::Blue => [0, 0, 255],
            ColorName::Green => [0, 200, 0],
            ColorName::Red => [255, 0, 0],
        }
    }
}

impl fmt::Display for ColorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ColorName {
    type Err = VisionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ColorName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| VisionError::Config(format!("unknown colour `{s}`")))
    }
}

/// Inclusive per-channel bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorSpec {
    pub name: ColorName,
    pub lo: Rgb,
    pub hi: Rgb,
}

impl ColorSpec {
    pub fn new(name: ColorName, lo: Rgb, hi: Rgb) -> Result<Self, VisionError> {
        if (0..3).any(|i| lo[i] > hi[i]) {
            return Err(VisionError::Config(format!("{name}: lower bound above upper bound")));
        }
        Ok(Self { name, lo, hi })
    }

    /// Nominal colour widened by `margin` on every channel.
    pub fn around(name: ColorName, margin: u8) -> Self {
        let c = name.nominal();
        Self {
            name,
            lo: c.map(|v| v.saturating_sub(margin)),
            hi: c.map(|v| v.saturating_add(margin)),
        }
    }

    pub fn matches(&self, px: Rgb) -> bool {
        (0..3).all(|i| self.lo[i] <= px[i] && px[i] <= self.hi[i])
    }
}

pub const DEFAULT_MARGIN: u8 = 50;
pub const DEFAULT_MIN_AREA: usize = 20;

/// Thresholds for every colour plus the component size filter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Palette {
    specs: [ColorSpec; 7],
    pub min_area: usize,
}

impl Default for Palette {
    fn default() -> Self {
        Self {
            specs: ColorName::ALL.map(|c| ColorSpec::around(c, DEFAULT_MARGIN)),
            min_area: DEFAULT_MIN_AREA,
        }
    }
}

impl Palette {
    pub fn spec(&self, name: ColorName) -> &ColorSpec {
        &self.specs[name as usize]
    }

    pub fn set(&mut self, spec: ColorSpec) {
        self.specs[spec.name as usize] = spec;
    }

    /// Keys `<colour>.lo` / `<colour>.hi` as `r, g, b` and `min_area`.
    /// Colours not mentioned keep their defaults.
    pub fn from_config(kv: &KeyValues) -> Result<Self, VisionError> {
        let mut palette = Self::default();
        for key in kv.keys() {
            if key == "min_area" {
                continue;
            }
            let (color, bound) = key
                .split_once('.')
                .ok_or_else(|| VisionError::Config(format!("unknown key `{key}`")))?;
            color.parse::<ColorName>()?;
            if bound != "lo" && bound != "hi" {
                return Err(VisionError::Config(format!("unknown key `{key}`")));
            }
        }
        for name in ColorName::ALL {
            let current = *palette.spec(name);
            let lo = rgb(kv, &format!("{name}.lo"))?.unwrap_or(current.lo);
            let hi = rgb(kv, &format!("{name}.hi"))?.unwrap_or(current.hi);
            palette.set(ColorSpec::new(name, lo, hi)?);
        }
        if let Some(v) = kv.get("min_area") {
            palette.min_area = v
                .parse()
                .map_err(|_| VisionError::Config(format!("min_area: `{v}` is not a count")))?;
        }
        Ok(palette)
    }

    pub fn to_config(&self) -> String {
        let mut out = format!("min_area = {}\n", self.min_area);
        for s in &self.specs {
            out += &format!("{}.lo = {}, {}, {}\n", s.name, s.lo[0], s.lo[1], s.lo[2]);
            out += &format!("{}.hi = {}, {}, {}\n", s.name, s.hi[0], s.hi[1], s.hi[2]);
        }
        out
    }
}

fn rgb(kv: &KeyValues, key: &str) -> Result<Option<Rgb>, VisionError> {
    let Some(values) = kv.f64_array::<3>(key).map_err(|e| VisionError::Config(e.to_string()))? else {
        return Ok(None);
    };
    let mut out = [0u8; 3];
    for (o, v) in out.iter_mut().zip(values) {
        if !(0.0..=255.0).contains(&v) || v.fract() != 0.0 {
            return Err(VisionError::Config(format!("{key}: channel value {v} outside 0..=255")));
        }
        *o = v as u8;
    }
    Ok(Some(out))
}
