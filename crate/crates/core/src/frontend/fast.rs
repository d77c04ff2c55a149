use super::GrayImage;

/// The 16-pixel Bresenham circle of radius 3, clockwise from 12 o'clock.
pub const CIRCLE_OFFSETS: [(i64, i64); 16] = [
    (0, -3),
    (1, -3),
    (2, -2),
    (3, -1),
    (3, 0),
    (3, 1),
    (2, 2),
    (1, 3),
    (0, 3),
    (-1, 3),
    (-2, 2),
    (-3, 1),
    (-3, 0),
    (-3, -1),
    (-2, -2),
    (-1, -3),
];

/// Minimum contiguous arc length for the FAST-9 segment test.
const ARC_LENGTH: usize = 9;

/// A detected keypoint. `x`/`y` are level-0 pixel coordinates after
/// extraction (level-local straight out of the detector), `response` the
/// FAST score, and `angle` the orientation in `[0, 2*pi)` (0 until assigned).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeyPoint {
    pub x: f64,
    pub y: f64,
    pub level: usize,
    pub response: f64,
    pub angle: f64,
}

/// FAST-9 segment test for one pixel. Returns the corner response (sum of
/// absolute differences over the qualifying arc) or `None`.
fn segment_test(img: &GrayImage, x: usize, y: usize, threshold: i32) -> Option<u32> {
    let center = img.at(x, y) as i32;
    let hi = center + threshold;
    let lo = center - threshold;

    // Any 9-long arc contains at least two of the four compass pixels, so
    // reject early when neither polarity can reach that count.
    let quad = [0usize, 4, 8, 12].map(|i| {
        let (dx, dy) = CIRCLE_OFFSETS[i];
        img.at((x as i64 + dx) as usize, (y as i64 + dy) as usize) as i32
    });
    let quad_bright = quad.iter().filter(|&&v| v > hi).count();
    let quad_dark = quad.iter().filter(|&&v| v < lo).count();
    if quad_bright < 2 && quad_dark < 2 {
        return None;
    }

    let mut values = [0i32; 16];
    for (i, (dx, dy)) in CIRCLE_OFFSETS.iter().enumerate() {
        values[i] = img.at((x as i64 + dx) as usize, (y as i64 + dy) as usize) as i32;
    }
    let mut bright_mask = 0u16;
    let mut dark_mask = 0u16;
    for (i, &v) in values.iter().enumerate() {
        bright_mask |= ((v > hi) as u16) << i;
        dark_mask |= ((v < lo) as u16) << i;
    }

    for mask in [bright_mask, dark_mask] {
        if has_arc(mask) {
            let (start, len) = longest_circular_run(mask);
            return Some(arc_response(&values, center, start, len));
        }
    }
    None
}

/// True iff the circular 16-bit mask contains a contiguous run of >= 9 bits.
fn has_arc(mask: u16) -> bool {
    let mut acc = mask;
    let mut rot = mask;
    for _ in 1..ARC_LENGTH {
        rot = rot.rotate_right(1);
        acc &= rot;
    }
    acc != 0
}

/// Longest run of set bits on the circular mask, as `(start, length)`,
/// capped at 16. Earliest start wins ties.
fn longest_circular_run(mask: u16) -> (usize, usize) {
    if mask == u16::MAX {
        return (0, 16);
    }
    let mut best = (0usize, 0usize);
    let mut run_start = 0usize;
    let mut run_len = 0usize;
    // Doubling the sequence handles wrap-around; runs are shorter than 16
    // because the all-set case is handled above.
    for i in 0..32 {
        if mask & (1 << (i % 16)) != 0 {
            if run_len == 0 {
                run_start = i;
            }
            run_len += 1;
            if run_len > best.1 && run_start < 16 {
                best = (run_start, run_len);
            }
        } else {
            run_len = 0;
        }
    }
    best
}

fn arc_response(values: &[i32; 16], center: i32, start: usize, len: usize) -> u32 {
    (0..len)
        .map(|i| (values[(start + i) % 16] - center).unsigned_abs())
        .sum()
}

/// All FAST-9 corners, before non-maximum suppression and capping.
/// Coordinates are local to `img`; `level` is 0 and `angle` unset.
pub fn fast_detect_raw(img: &GrayImage, threshold: u8) -> Vec<KeyPoint> {
    let threshold = threshold as i32;
    let mut corners = Vec::new();
    if img.width() < 7 || img.height() < 7 {
        return corners;
    }
    for y in 3..img.height() - 3 {
        for x in 3..img.width() - 3 {
            if let Some(response) = segment_test(img, x, y, threshold) {
                corners.push(KeyPoint {
                    x: x as f64,
                    y: y as f64,
                    level: 0,
                    response: response as f64,
                    angle: 0.0,
                });
            }
        }
    }
    corners
}

/// FAST-9 detection with 3x3 non-maximum suppression, sorted by response
/// descending and truncated to `max_features`.
pub fn fast_detect(img: &GrayImage, threshold: u8, max_features: usize) -> Vec<KeyPoint> {
    let corners = fast_detect_raw(img, threshold);
    let mut kept = suppress_nonmax(img.width(), img.height(), corners);
    kept.sort_by(|a, b| {
        b.response
            .partial_cmp(&a.response)
            .unwrap()
            .then(a.y.partial_cmp(&b.y).unwrap())
            .then(a.x.partial_cmp(&b.x).unwrap())
    });
    kept.truncate(max_features);
    kept
}

/// Keeps a corner iff its response beats every 3x3 neighbour, with ties
/// broken in favour of the earlier pixel in row-major order.
fn suppress_nonmax(width: usize, height: usize, corners: Vec<KeyPoint>) -> Vec<KeyPoint> {
    let mut response = vec![0.0f64; width * height];
    for kp in &corners {
        response[kp.y as usize * width + kp.x as usize] = kp.response;
    }
    corners
        .into_iter()
        .filter(|kp| {
            let (x, y) = (kp.x as i64, kp.y as i64);
            for dy in -1..=1i64 {
                for dx in -1..=1i64 {
                    if dx == 0 && dy == 0 {
                        continue;
                    }
                    let (nx, ny) = (x + dx, y + dy);
                    if nx < 0 || ny < 0 || nx >= width as i64 || ny >= height as i64 {
                        continue;
                    }
                    let other = response[ny as usize * width + nx as usize];
                    if other > kp.response {
                        return false;
                    }
                    // Equal responses: the earlier pixel survives.
                    if other == kp.response && (ny, nx) < (y, x) {
                        return false;
                    }
                }
            }
            true
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;
    use std::collections::BTreeSet;

    /// Brute-force segment test: tries every run of 9 starting at each of the
    /// 16 circle positions. Independent of the sliding-run implementation.
    fn oracle_is_corner(img: &GrayImage, x: usize, y: usize, threshold: i32) -> bool {
        let center = img.at(x, y) as i32;
        for start in 0..16 {
            let mut all_brighter = true;
            let mut all_darker = true;
            for i in 0..ARC_LENGTH {
                let (dx, dy) = CIRCLE_OFFSETS[(start + i) % 16];
                let v = img.at((x as i64 + dx) as usize, (y as i64 + dy) as usize) as i32;
                all_brighter &= v > center + threshold;
                all_darker &= v < center - threshold;
            }
            if all_brighter || all_darker {
                return true;
            }
        }
        false
    }

    fn random_image(rng: &mut ChaCha12Rng, w: usize, h: usize) -> GrayImage {
        GrayImage::from_fn(w, h, |_, _| rng.random::<u8>())
    }

    #[test]
    fn constant_image_has_no_corners() {
        let img = GrayImage::constant(64, 64, 100);
        assert!(fast_detect(&img, 20, 1000).is_empty());
    }

    #[test]
    fn dark_pixel_ringed_by_bright_circle_is_a_corner() {
        let mut img = GrayImage::constant(64, 64, 40);
        for (dx, dy) in CIRCLE_OFFSETS {
            img.set((32 + dx) as usize, (32 + dy) as usize, 200);
        }
        let found = fast_detect_raw(&img, 20);
        assert!(found.iter().any(|kp| kp.x == 32.0 && kp.y == 32.0));
        // The full circle qualifies, so the response sums all 16 differences.
        let kp = found.iter().find(|kp| kp.x == 32.0 && kp.y == 32.0).unwrap();
        assert_eq!(kp.response, 16.0 * 160.0);
    }

    #[test]
    fn raw_detection_matches_bruteforce_oracle() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..10 {
            let img = random_image(&mut rng, 64, 64);
            let got: BTreeSet<(u64, u64)> = fast_detect_raw(&img, 20)
                .iter()
                .map(|kp| (kp.x as u64, kp.y as u64))
                .collect();
            let mut expected = BTreeSet::new();
            for y in 3..61 {
                for x in 3..61 {
                    if oracle_is_corner(&img, x, y, 20) {
                        expected.insert((x as u64, y as u64));
                    }
                }
            }
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn suppression_keeps_only_local_maxima() {
        let mut rng = ChaCha12Rng::seed_from_u64(12);
        let img = random_image(&mut rng, 96, 96);
        let raw = fast_detect_raw(&img, 12);
        let mut response = std::collections::HashMap::new();
        for kp in &raw {
            response.insert((kp.x as i64, kp.y as i64), kp.response);
        }
        let kept = fast_detect(&img, 12, usize::MAX);
        assert!(!kept.is_empty());
        for kp in &kept {
            for dy in -1..=1i64 {
                for dx in -1..=1i64 {
                    let neighbour = response
                        .get(&(kp.x as i64 + dx, kp.y as i64 + dy))
                        .copied()
                        .unwrap_or(0.0);
                    assert!(kp.response >= neighbour);
                }
            }
        }
    }

    #[test]
    fn max_features_caps_by_response() {
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        let img = random_image(&mut rng, 96, 96);
        let all = fast_detect(&img, 10, usize::MAX);
        let capped = fast_detect(&img, 10, 5);
        assert_eq!(capped.len(), 5.min(all.len()));
        for (a, b) in capped.iter().zip(all.iter()) {
            assert_eq!(a, b);
        }
        for w in all.windows(2) {
            assert!(w[0].response >= w[1].response);
        }
    }
}
