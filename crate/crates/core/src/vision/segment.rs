use crate::Vec2;

use super::color::ColorSpec;
use super::image::RasterImage;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    pub width: usize,
    pub height: usize,
    pub bits: Vec<bool>,
}

impl Mask {
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

pub fn segment_color(img: &RasterImage, spec: &ColorSpec) -> Mask {
    Mask {
        width: img.width(),
        height: img.height(),
        bits: img.pixels().iter().map(|&p| spec.matches(p)).collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    /// Member pixels as `(x, y)`, in raster order.
    pub pixels: Vec<(usize, usize)>,
    pub centroid: Vec2,
}

impl Component {
    pub fn area(&self) -> usize {
        self.pixels.len()
    }
}

/// 4-connected components with at least `min_area` pixels, largest first,
/// ties by the raster position of the first pixel.
pub fn connected_components(mask: &Mask, min_area: usize) -> Vec<Component> {
    let (w, h) = (mask.width, mask.height);
    let mut seen = vec![false; w * h];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for start in 0..w * h {
        if !mask.bits[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut members = Vec::new();
        while let Some(i) = stack.pop() {
            members.push(i);
            let (x, y) = (i % w, i / w);
            let mut visit = |j: usize| {
                if mask.bits[j] && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            };
            if x > 0 {
                visit(i - 1);
            }
            if x + 1 < w {
                visit(i + 1);
            }
            if y > 0 {
                visit(i - w);
            }
            if y + 1 < h {
                visit(i + w);
            }
        }
        if members.len() < min_area {
            continue;
        }
        members.sort_unstable();
        let n = members.len() as f64;
        let (sx, sy) = members
            .iter()
            .fold((0.0, 0.0), |(sx, sy), &i| (sx + (i % w) as f64, sy + (i / w) as f64));
        out.push(Component {
            pixels: members.iter().map(|&i| (i % w, i / w)).collect(),
            centroid: Vec2::new(sx / n, sy / n),
        });
    }
    out.sort_by(|a, b| {
        b.area()
            .cmp(&a.area())
            .then_with(|| (a.pixels[0].1, a.pixels[0].0).cmp(&(b.pixels[0].1, b.pixels[0].0)))
    });
    out
}
