use super::{FrontendError, GrayImage, MIN_IMAGE_SIDE};

/// A scale hierarchy of grayscale images. Level 0 is the original; level k
/// has dimensions `floor(original / scale_factor^k)`.
#[derive(Debug, Clone)]
pub struct ImagePyramid {
    pub levels: Vec<GrayImage>,
    pub scale_factor: f64,
}

impl ImagePyramid {
    /// The multiplier that maps level-k coordinates back to level 0.
    pub fn scale_of(&self, level: usize) -> f64 {
        self.scale_factor.powi(level as i32)
    }
}

/// Builds an `n`-level pyramid by bilinear downsampling of level 0 by
/// `scale_factor^k`. Rejects levels that would fall below 64x64.
pub fn build_pyramid(
    img: &GrayImage,
    n: usize,
    scale_factor: f64,
) -> Result<ImagePyramid, FrontendError> {
    if n < 1 {
        return Err(FrontendError::InvalidConfig {
            reason: "pyramid must have at least one level".to_string(),
        });
    }
    if !(scale_factor > 1.0) {
        return Err(FrontendError::InvalidConfig {
            reason: format!("scale factor must be > 1, got {scale_factor}"),
        });
    }
    if img.width() < MIN_IMAGE_SIDE || img.height() < MIN_IMAGE_SIDE {
        return Err(FrontendError::ImageTooSmall {
            width: img.width(),
            height: img.height(),
            min: MIN_IMAGE_SIDE,
        });
    }

    let mut levels = Vec::with_capacity(n);
    levels.push(img.clone());
    for level in 1..n {
        let scale = scale_factor.powi(level as i32);
        let w = (img.width() as f64 / scale).floor() as usize;
        let h = (img.height() as f64 / scale).floor() as usize;
        if w < MIN_IMAGE_SIDE || h < MIN_IMAGE_SIDE {
            return Err(FrontendError::LevelTooSmall {
                level,
                width: w,
                height: h,
                min: MIN_IMAGE_SIDE,
            });
        }
        levels.push(downsample_bilinear(img, w, h, scale));
    }
    Ok(ImagePyramid {
        levels,
        scale_factor,
    })
}

/// Bilinear resampling of `src` at `scale`, pixel centers aligned.
fn downsample_bilinear(src: &GrayImage, w: usize, h: usize, scale: f64) -> GrayImage {
    let mut out = GrayImage::new(w, h);
    for y in 0..h {
        let sy = (y as f64 + 0.5) * scale - 0.5;
        let y0 = sy.floor();
        let fy = sy - y0;
        for x in 0..w {
            let sx = (x as f64 + 0.5) * scale - 0.5;
            let x0 = sx.floor();
            let fx = sx - x0;
            let (xi, yi) = (x0 as i64, y0 as i64);
            let p00 = src.at_clamped(xi, yi) as f64;
            let p10 = src.at_clamped(xi + 1, yi) as f64;
            let p01 = src.at_clamped(xi, yi + 1) as f64;
            let p11 = src.at_clamped(xi + 1, yi + 1) as f64;
            let top = p00 + (p10 - p00) * fx;
            let bottom = p01 + (p11 - p01) * fx;
            let v = top + (bottom - top) * fy;
            out.set(x, y, v.round().clamp(0.0, 255.0) as u8);
        }
    }
    out
}
