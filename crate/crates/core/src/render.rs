//! Depth-limited enumeration of the attractor and rasterization to PGM.
//!
//! The only module allowed to touch floating point: pictures are
//! presentation, not decisions. Points are truncated series
//! `sum_{i<=N} A^{-i} d_i v` in `(gamma, delta)` coordinates; since 0 is a
//! digit, every enumerated point is an exact point of the attractor.

use std::collections::HashMap;
use std::io::Write;

use num_traits::{Signed, ToPrimitive};

use crate::algebra::{companion, rat, Mat2, QuadraticPoly, Rational};
use crate::connectivity::UnionFind;
use crate::coords::{tail_bounds, DEFAULT_BOUND_TERMS};
use crate::error::{Error, Result};
use crate::neighbors::DigitSystem;

/// Hard cap on `|D|^depth`.
pub const POINT_BUDGET: usize = 10_000_000;

/// Density target for the default depth rule.
const DEFAULT_MIN_POINTS: usize = 100_000;

#[derive(Clone, Debug)]
pub struct RenderConfig {
    pub depth: usize,
    pub width: u32,
    pub height: u32,
    /// The vector `v` embedding `gamma v + delta Av` into the plane.
    pub basis_vector: (Rational, Rational),
    /// Bounding-box margin as a fraction of the span.
    pub margin: f64,
}

impl Default for RenderConfig {
    fn default() -> Self {
        Self {
            depth: 1,
            width: 800,
            height: 800,
            basis_vector: (rat(1), rat(0)),
            margin: 0.05,
        }
    }
}

/// Truncated attractor points in `(gamma, delta)` coordinates.
#[derive(Clone, Debug)]
pub struct PointCloud {
    pub poly: QuadraticPoly,
    pub points: Vec<[f64; 2]>,
}

/// Smallest depth giving at least 10^5 points.
pub fn default_depth(digit_count: usize) -> usize {
    if digit_count < 2 {
        return 1;
    }
    let mut depth = 1usize;
    let mut total = digit_count;
    while total < DEFAULT_MIN_POINTS {
        depth += 1;
        total = total.saturating_mul(digit_count);
    }
    depth
}

fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// All `|D|^depth` truncated digit expansions, enumerated lexicographically
/// over digit strings so a point's parent prefix sits at `index / |D|` in
/// the depth-(N-1) cloud.
pub fn enumerate_points(system: &DigitSystem, depth: usize) -> Result<PointCloud> {
    assert!(depth >= 1, "depth must be at least 1");
    let n_digits = system.digits().len();
    let total = n_digits
        .checked_pow(depth as u32)
        .filter(|&t| t <= POINT_BUDGET)
        .ok_or_else(|| {
            Error::InvalidInput(format!(
                "{n_digits}^{depth} points exceed the {POINT_BUDGET} budget"
            ))
        })?;

    let a_inv = companion(system.poly())
        .inverse()
        .expect("expanding companion is invertible");
    // term_cols[i] = first column of A^{-(i+1)}: the coordinate contribution
    // of digit value 1 at fractional position i+1.
    let mut term_cols = Vec::with_capacity(depth);
    let mut power = Mat2::identity();
    for _ in 0..depth {
        power = power.mul(&a_inv);
        term_cols.push([rational_to_f64(&power.a), rational_to_f64(&power.c)]);
    }
    let digit_values: Vec<f64> = system.digits().iter().map(rational_to_f64).collect();

    let mut points = Vec::with_capacity(total);
    let mut acc = vec![[0.0f64; 2]; depth + 1];
    let mut choice = vec![0usize; depth];
    let mut level = 0usize;
    loop {
        if level == depth {
            points.push(acc[depth]);
            // backtrack to the deepest level with remaining digit choices
            loop {
                if level == 0 {
                    debug_assert_eq!(points.len(), total);
                    return Ok(PointCloud {
                        poly: *system.poly(),
                        points,
                    });
                }
                level -= 1;
                choice[level] += 1;
                if choice[level] < n_digits {
                    break;
                }
                choice[level] = 0;
            }
        }
        let d = digit_values[choice[level]];
        let col = term_cols[level];
        acc[level + 1] = [acc[level][0] + d * col[0], acc[level][1] + d * col[1]];
        level += 1;
    }
}

/// 8-bit grayscale raster, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    pub width: u32,
    pub height: u32,
    pub pixels: Vec<u8>,
}

/// Project the cloud through the configured basis vector, fit the bounding
/// box plus margin into the raster preserving aspect, and mark points black
/// on white. Deterministic for fixed inputs.
pub fn rasterize(cloud: &PointCloud, config: &RenderConfig) -> Result<Image> {
    if cloud.points.is_empty() {
        return Err(Error::InvalidInput("empty point cloud".into()));
    }
    if config.width == 0 || config.height == 0 {
        return Err(Error::InvalidInput(
            "raster dimensions must be positive".into(),
        ));
    }

    // plane embedding: x = gamma v + delta Av
    let v = &config.basis_vector;
    let av = companion(&cloud.poly).mul_vec(&(v.0.clone(), v.1.clone()));
    let vx = rational_to_f64(&v.0);
    let vy = rational_to_f64(&v.1);
    let avx = rational_to_f64(&av.0);
    let avy = rational_to_f64(&av.1);
    let project = |p: &[f64; 2]| -> [f64; 2] { [p[0] * vx + p[1] * avx, p[0] * vy + p[1] * avy] };

    let mut min = [f64::INFINITY; 2];
    let mut max = [f64::NEG_INFINITY; 2];
    for p in &cloud.points {
        let q = project(p);
        for k in 0..2 {
            min[k] = min[k].min(q[k]);
            max[k] = max[k].max(q[k]);
        }
    }
    let mut span = [max[0] - min[0], max[1] - min[1]];
    let center = [(max[0] + min[0]) / 2.0, (max[1] + min[1]) / 2.0];
    for s in &mut span {
        *s *= 1.0 + 2.0 * config.margin;
    }

    let w = config.width as usize;
    let h = config.height as usize;
    let scale_x = if span[0] > 0.0 {
        (w as f64 - 1.0) / span[0]
    } else {
        f64::INFINITY
    };
    let scale_y = if span[1] > 0.0 {
        (h as f64 - 1.0) / span[1]
    } else {
        f64::INFINITY
    };
    let mut scale = scale_x.min(scale_y);
    if !scale.is_finite() {
        scale = 0.0; // degenerate cloud collapses to the center pixel
    }

    let mut pixels = vec![255u8; w * h];
    let cx = (w as f64 - 1.0) / 2.0;
    let cy = (h as f64 - 1.0) / 2.0;
    for p in &cloud.points {
        let q = project(p);
        let px = ((q[0] - center[0]) * scale + cx).round();
        // raster rows grow downward
        let py = (cy - (q[1] - center[1]) * scale).round();
        let px = (px.max(0.0) as usize).min(w - 1);
        let py = (py.max(0.0) as usize).min(h - 1);
        pixels[py * w + px] = 0;
    }
    Ok(Image {
        width: config.width,
        height: config.height,
        pixels,
    })
}

/// P5 binary PGM.
pub fn write_pgm<W: Write>(image: &Image, mut w: W) -> std::io::Result<()> {
    write!(w, "P5\n{} {}\n255\n", image.width, image.height)?;
    w.write_all(&image.pixels)?;
    w.flush()
}

pub fn pgm_bytes(image: &Image) -> Vec<u8> {
    let mut buf = Vec::with_capacity(image.pixels.len() + 32);
    write_pgm(image, &mut buf).expect("writing to a Vec cannot fail");
    buf
}

/// Connected components of the union of `gap`-radius balls around the
/// points: two balls meet iff their centers are within `2 * gap`.
pub fn component_estimate(cloud: &PointCloud, gap: f64) -> usize {
    assert!(gap > 0.0, "gap must be positive");
    let n = cloud.points.len();
    if n == 0 {
        return 0;
    }
    let link = 2.0 * gap;
    // cell diagonal equals the link distance, so intra-cell points always join
    let cell = gap * std::f64::consts::SQRT_2;
    let key = |p: [f64; 2]| -> (i64, i64) {
        ((p[0] / cell).floor() as i64, (p[1] / cell).floor() as i64)
    };

    let mut grid: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
    for (i, &p) in cloud.points.iter().enumerate() {
        grid.entry(key(p)).or_default().push(i as u32);
    }

    let mut dsu = UnionFind::new(n);
    for members in grid.values() {
        for &m in &members[1..] {
            dsu.union(members[0] as usize, m as usize);
        }
    }
    let link2 = link * link;
    for (&(cx, cy), members) in &grid {
        for ox in 0..=2i64 {
            for oy in -2i64..=2 {
                if ox == 0 && oy <= 0 {
                    continue; // visit each unordered cell pair once
                }
                let Some(other) = grid.get(&(cx + ox, cy + oy)) else {
                    continue;
                };
                'pair: for &i in members {
                    for &j in other {
                        if dsu.find(i as usize) == dsu.find(j as usize) {
                            break 'pair;
                        }
                        let a = cloud.points[i as usize];
                        let b = cloud.points[j as usize];
                        let dx = a[0] - b[0];
                        let dy = a[1] - b[1];
                        if dx * dx + dy * dy <= link2 {
                            dsu.union(i as usize, j as usize);
                            break 'pair;
                        }
                    }
                }
            }
        }
    }

    let mut roots: Vec<usize> = (0..n).map(|i| dsu.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// One-pixel gap for the cloud displayed at `pixels` resolution: separation
/// detectable at this scale corresponds to a visible gap in the figure.
/// Component counts are monotone as the gap shrinks, so any disconnection
/// visible at a coarser gap persists at this one.
pub fn pixel_gap(cloud: &PointCloud, pixels: u32) -> f64 {
    let mut min = [f64::INFINITY; 2];
    let mut max = [f64::NEG_INFINITY; 2];
    for p in &cloud.points {
        for k in 0..2 {
            min[k] = min[k].min(p[k]);
            max[k] = max[k].max(p[k]);
        }
    }
    let spans = [max[0] - min[0], max[1] - min[1]];
    let diam = (spans[0] * spans[0] + spans[1] * spans[1]).sqrt();
    (diam / pixels.max(1) as f64).max(f64::MIN_POSITIVE)
}

/// Rigorous Euclidean cover radius of the depth-`N` cloud in
/// `(gamma, delta)` coordinates: every attractor point lies within this
/// distance of its truncated expansion.
pub fn cover_radius(system: &DigitSystem, depth: usize) -> Result<f64> {
    let bounds = tail_bounds(system.poly(), DEFAULT_BOUND_TERMS)?;
    let a_inv = companion(system.poly())
        .inverse()
        .expect("expanding companion is invertible");
    let tail_norm = a_inv.pow(depth as u32).norm_inf();
    let spread = system
        .digits()
        .iter()
        .map(|d| d.abs())
        .max()
        .unwrap_or_else(|| rat(0));
    let coeff = bounds.alpha_bound.max(bounds.beta_bound);
    let radius_inf = rational_to_f64(&(tail_norm * spread * coeff));
    // infinity-norm bound converted to Euclidean
    Ok(radius_inf * std::f64::consts::SQRT_2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{decide, Verdict};

    fn int_system(p: i64, q: i64, digits: &[i64]) -> DigitSystem {
        DigitSystem::new(
            QuadraticPoly::new(p, q).unwrap(),
            digits.iter().map(|&n| rat(n)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn singleton_digit_gives_single_origin_point() {
        let cloud = enumerate_points(&int_system(1, 3, &[0]), 5).unwrap();
        assert_eq!(cloud.points, vec![[0.0, 0.0]; 1]);
    }

    #[test]
    fn point_count_is_digits_to_the_depth() {
        let cloud = enumerate_points(&int_system(1, 3, &[0, 1, 4]), 9).unwrap();
        assert_eq!(cloud.points.len(), 19683);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            enumerate_points(&int_system(1, 3, &[0, 1, 4]), 20),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn default_depth_rule() {
        assert_eq!(default_depth(3), 11); // 3^11 = 177147 >= 1e5 > 3^10
        assert_eq!(default_depth(6), 7); // 6^7 = 279936 >= 1e5 > 6^6
        assert_eq!(default_depth(1), 1);
    }

    #[test]
    fn children_lie_near_their_parents() {
        // depth-(N+1) point = parent + d * (first column of A^{-(N+1)})
        let sys = int_system(1, 3, &[0, 1, 4]);
        let n = 6;
        let parents = enumerate_points(&sys, n).unwrap();
        let children = enumerate_points(&sys, n + 1).unwrap();
        let a_inv = companion(sys.poly()).inverse().unwrap();
        let bound = rational_to_f64(&a_inv.pow((n + 1) as u32).norm_inf()) * 4.0;
        let slack = bound * 1e-9 + 1e-12;
        for (i, c) in children.points.iter().enumerate() {
            let p = parents.points[i / 3];
            let dx = (c[0] - p[0]).abs();
            let dy = (c[1] - p[1]).abs();
            assert!(
                dx <= bound + slack && dy <= bound + slack,
                "child {i} strays from its prefix"
            );
        }
    }

    #[test]
    fn single_point_lights_center_pixel() {
        let cloud = enumerate_points(&int_system(1, 3, &[0]), 1).unwrap();
        let config = RenderConfig {
            width: 41,
            height: 21,
            ..Default::default()
        };
        let img = rasterize(&cloud, &config).unwrap();
        assert_eq!(img.pixels.iter().filter(|&&v| v == 0).count(), 1);
        assert_eq!(img.pixels[10 * 41 + 20], 0);
    }

    #[test]
    fn rasterization_is_deterministic() {
        let sys = int_system(5, 6, &[0, 1, 2, 4, 6, 8]);
        let cloud = enumerate_points(&sys, 6).unwrap();
        let config = RenderConfig {
            depth: 6,
            width: 200,
            height: 200,
            basis_vector: (rat(0), rat(1)),
            ..Default::default()
        };
        let img1 = rasterize(&cloud, &config).unwrap();
        let cloud2 = enumerate_points(&sys, 6).unwrap();
        let img2 = rasterize(&cloud2, &config).unwrap();
        assert_eq!(pgm_bytes(&img1), pgm_bytes(&img2));
    }

    #[test]
    fn pgm_header_and_size() {
        let img = Image {
            width: 3,
            height: 2,
            pixels: vec![0, 255, 0, 255, 0, 255],
        };
        let bytes = pgm_bytes(&img);
        assert!(bytes.starts_with(b"P5\n3 2\n255\n"));
        assert_eq!(bytes.len(), b"P5\n3 2\n255\n".len() + 6);
    }

    #[test]
    fn component_counts_match_verdicts() {
        // disconnected instance separates at the one-pixel display gap
        let sys = int_system(1, 3, &[0, 1, 4]);
        let depth = 10;
        let cloud = enumerate_points(&sys, depth).unwrap();
        assert_eq!(decide(&sys).unwrap().verdict, Verdict::Disconnected);
        assert!(component_estimate(&cloud, pixel_gap(&cloud, 800)) >= 2);

        // connected instance collapses to one component at the cover radius
        let sys = int_system(2, 3, &[0, 1, 2]);
        let cloud = enumerate_points(&sys, depth).unwrap();
        let gap = cover_radius(&sys, depth).unwrap();
        assert_eq!(decide(&sys).unwrap().verdict, Verdict::Connected);
        assert_eq!(component_estimate(&cloud, gap), 1);
    }

    #[test]
    fn single_point_is_one_component() {
        let cloud = PointCloud {
            poly: QuadraticPoly::new(1, 3).unwrap(),
            points: vec![[0.3, -0.7]],
        };
        assert_eq!(component_estimate(&cloud, 0.1), 1);
    }
}
