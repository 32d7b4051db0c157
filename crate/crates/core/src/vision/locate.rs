use crate::Vec2;

use super::color::{ColorName, Palette};
use super::frame::plane_to_robot_frame;
use super::homography::{estimate_homography, Homography};
use super::image::RasterImage;
use super::scene::{Scene, MARKERS};
use super::segment::{connected_components, segment_color, Component};
use super::VisionError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkerObservation {
    pub color: ColorName,
    pub pixel: Vec2,
    pub plane: Vec2,
}

/// The single component of `color` that survives the area filter.
pub fn find_item(img: &RasterImage, palette: &Palette, color: ColorName) -> Result<Component, VisionError> {
    let mut comps = connected_components(&segment_color(img, palette.spec(color)), palette.min_area);
    match comps.len() {
        0 => Err(VisionError::MissingItem(color)),
        1 => Ok(comps.remove(0)),
        count => Err(VisionError::Ambiguous { color, count }),
    }
}

/// Marker centres in the image, paired with their plane positions.
///
/// The pixel centroid of a square seen in perspective is not the image of
/// its centre. Starting from the pixel centroids, each pass fits the
/// homography, takes every marker's area-weighted centroid on the plane and
/// maps it back into the image.
pub fn detect_markers(img: &RasterImage, palette: &Palette) -> Result<[MarkerObservation; 4], VisionError> {
    let mut comps = Vec::with_capacity(4);
    for &(color, _) in &MARKERS {
        comps.push(find_item(img, palette, color)?);
    }
    let plane = MARKERS.map(|(_, p)| Vec2::new(p[0], p[1]));
    let mut pixel: [Vec2; 4] = std::array::from_fn(|i| comps[i].centroid);
    for _ in 0..MARKER_REFINE_PASSES {
        let h = estimate_homography(&pixel, &plane)?;
        let back = h.inverse();
        for i in 0..4 {
            pixel[i] = back.apply(&rectified_centroid(&comps[i], &h)?)?;
        }
    }
    Ok(std::array::from_fn(|i| MarkerObservation {
        color: MARKERS[i].0,
        pixel: pixel[i],
        plane: plane[i],
    }))
}

const MARKER_REFINE_PASSES: usize = 3;

/// Centroid of the component after mapping it onto the plane, each pixel
/// weighted by the plane area it covers.
pub fn rectified_centroid(comp: &Component, h: &Homography) -> Result<Vec2, VisionError> {
    let mut sum = Vec2::zeros();
    let mut total = 0.0;
    for &(x, y) in &comp.pixels {
        let p = Vec2::new(x as f64, y as f64);
        let w = h.area_scale(&p);
        sum += h.apply(&p)? * w;
        total += w;
    }
    Ok(sum / total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Localization {
    pub scene: Scene,
    /// Pixel to plane.
    pub homography: Homography,
    pub markers: [MarkerObservation; 4],
}

pub fn locate_items(img: &RasterImage, palette: &Palette) -> Result<Localization, VisionError> {
    let markers = detect_markers(img, palette)?;
    let h = estimate_homography(&markers.map(|m| m.pixel), &markers.map(|m| m.plane))?;
    let robot = |color: ColorName| -> Result<Vec2, VisionError> {
        let comp = find_item(img, palette, color)?;
        Ok(plane_to_robot_frame(&rectified_centroid(&comp, &h)?))
    };
    let disk = robot(ColorName::Blue)?;
    let green = robot(ColorName::Green)?;
    let red = robot(ColorName::Red)?;
    if (green.x - red.x).abs() <= 1e-9 * (1.0 + green.x.abs().max(red.x.abs())) {
        return Err(VisionError::TargetTie);
    }
    let (left, right, colors) = if green.x < red.x {
        (green, red, [ColorName::Green, ColorName::Red])
    } else {
        (red, green, [ColorName::Red, ColorName::Green])
    };
    let mut scene = Scene::new(disk, left, right);
    scene.target_colors = colors;
    Ok(Localization {
        scene,
        homography: h,
        markers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vision::scene::{render_scene, RenderOptions};

    #[test]
    fn identity_camera_locates_items() {
        let scene = Scene::new(Vec2::new(50.0, 200.0), Vec2::new(-100.0, 250.0), Vec2::new(100.0, 150.0));
        let img = render_scene(&scene, &Homography::identity(), &RenderOptions::default()).unwrap();
        let loc = locate_items(&img, &Palette::default()).unwrap();
        assert!((loc.scene.disk - scene.disk).norm() < 1.0);
        assert!((loc.scene.target_left - scene.target_left).norm() < 1.0);
        assert!((loc.scene.target_right - scene.target_right).norm() < 1.0);
    }

    #[test]
    fn missing_marker_named() {
        let img = RasterImage::new(64, 48, [255, 255, 255]);
        let err = detect_markers(&img, &Palette::default()).unwrap_err();
        assert_eq!(err, VisionError::MissingItem(ColorName::Cyan));
        assert!(err.to_string().contains("cyan"));
    }
}
