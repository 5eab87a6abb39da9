//! Escape-time rasters of `M_d` with ray, point and main-component overlays.

use std::fmt::Write as _;
use std::io::Cursor;

use base64::Engine;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boettcher::{cpow, escape_radius};
use crate::pcf::main_component_point;
use crate::rays::RayTrace;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RenderError {
    #[error("raster needs positive pixel dimensions, got {0}x{1}")]
    Pixels(u32, u32),
    #[error("viewport width must be positive and finite, got {0}")]
    Width(f64),
    #[error("degree must be at least 2, got {0}")]
    Degree(u32),
    #[error("trace of degree {trace} drawn on a degree {raster} raster")]
    DegreeMismatch { raster: u32, trace: u32 },
    #[error("png encoding failed: {0}")]
    Encode(String),
}

const SMOOTH_BAILOUT: f64 = 1e3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RasterSpec {
    pub center: Complex64,
    /// Horizontal extent in parameter-plane units; the vertical extent follows
    /// from the pixel aspect ratio.
    pub width: f64,
    pub pixels: (u32, u32),
    pub max_iter: usize,
    pub d: u32,
}

impl RasterSpec {
    pub fn validate(&self) -> Result<(), RenderError> {
        if self.pixels.0 == 0 || self.pixels.1 == 0 {
            return Err(RenderError::Pixels(self.pixels.0, self.pixels.1));
        }
        if !(self.width > 0.0 && self.width.is_finite()) {
            return Err(RenderError::Width(self.width));
        }
        if self.d < 2 {
            return Err(RenderError::Degree(self.d));
        }
        Ok(())
    }

    pub fn height(&self) -> f64 {
        self.width * self.pixels.1 as f64 / self.pixels.0 as f64
    }

    /// Parameter at the center of pixel `(col, row)`, row 0 at the top. Offsets
    /// are formed from odd integers so mirrored pixels get exactly negated offsets.
    pub fn point(&self, col: u32, row: u32) -> Complex64 {
        let (w, h) = (self.pixels.0 as f64, self.pixels.1 as f64);
        let dx = (2.0 * col as f64 + 1.0 - w) / (2.0 * w) * self.width;
        let dy = (h - 2.0 * row as f64 - 1.0) / (2.0 * h) * self.height();
        Complex64::new(self.center.re + dx, self.center.im + dy)
    }

    /// Continuous pixel coordinates of `c`, inverse to [`RasterSpec::point`]
    /// at pixel centers.
    pub fn to_pixel(&self, c: Complex64) -> (f64, f64) {
        let (w, h) = (self.pixels.0 as f64, self.pixels.1 as f64);
        let x = ((c.re - self.center.re) / self.width + 0.5) * w - 0.5;
        let y = (0.5 - (c.im - self.center.im) / self.height()) * h - 0.5;
        (x, y)
    }

    fn contains_pixel(&self, (x, y): (f64, f64)) -> bool {
        x >= -0.5 && y >= -0.5 && x < self.pixels.0 as f64 - 0.5 && y < self.pixels.1 as f64 - 0.5
    }
}

/// Smoothed escape count `n + 1 - log_d(log|z_n| / log R)`, or `None` when the
/// critical orbit stays within `R` for `max_iter` steps.
pub fn smooth_count(d: u32, c: Complex64, max_iter: usize) -> Option<f64> {
    let escape = escape_radius(d, c);
    let r = escape.max(SMOOTH_BAILOUT);
    let mut z = Complex64::new(0.0, 0.0);
    let mut n = 0;
    while z.norm() <= escape || z.norm().is_nan() {
        if n == max_iter {
            return None;
        }
        z = cpow(z, d) + c;
        n += 1;
    }
    // Past the escape radius the orbit grows monotonically, so these extra
    // steps only serve the smoothing and never change membership.
    while z.norm() <= r {
        z = cpow(z, d) + c;
        n += 1;
    }
    Some(n as f64 - (z.norm().ln() / r.ln()).ln() / (d as f64).ln())
}

/// 8-bit grayscale raster, row-major from the top-left pixel.
#[derive(Clone, Debug, PartialEq)]
pub struct Raster {
    pub spec: RasterSpec,
    pub pixels: Vec<u8>,
}

impl Raster {
    pub fn width(&self) -> u32 {
        self.spec.pixels.0
    }

    pub fn height(&self) -> u32 {
        self.spec.pixels.1
    }

    pub fn get(&self, col: u32, row: u32) -> u8 {
        self.pixels[(row * self.width() + col) as usize]
    }

    fn set(&mut self, col: i64, row: i64, v: u8) {
        if col >= 0 && row >= 0 && col < self.width() as i64 && row < self.height() as i64 {
            let w = self.width() as usize;
            self.pixels[row as usize * w + col as usize] = v;
        }
    }

    /// Binary PGM (`P5`).
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width(), self.height()).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }

    pub fn to_png(&self) -> Result<Vec<u8>, RenderError> {
        let img = image::GrayImage::from_raw(self.width(), self.height(), self.pixels.clone())
            .ok_or_else(|| RenderError::Encode("pixel buffer size mismatch".into()))?;
        let mut buf = Cursor::new(Vec::new());
        img.write_to(&mut buf, image::ImageFormat::Png)
            .map_err(|e| RenderError::Encode(e.to_string()))?;
        Ok(buf.into_inner())
    }
}

fn shade(count: f64, max_iter: usize) -> u8 {
    let t = count.max(0.0).ln_1p() / (max_iter as f64).ln_1p();
    (1.0 + 254.0 * t.clamp(0.0, 1.0)).round() as u8
}

/// Interior pixels are 0; escaping pixels are shaded in `1..=255` by the
/// logarithm of the smoothed escape count.
pub fn render_multibrot(spec: &RasterSpec) -> Result<Raster, RenderError> {
    spec.validate()?;
    let (w, h) = spec.pixels;
    let pixels: Vec<u8> = (0..h)
        .into_par_iter()
        .flat_map_iter(|row| {
            (0..w).map(move |col| match smooth_count(spec.d, spec.point(col, row), spec.max_iter) {
                Some(n) => shade(n, spec.max_iter),
                None => 0,
            })
        })
        .collect();
    Ok(Raster { spec: *spec, pixels })
}

const RAY_SHADE: u8 = 255;
const MAIN_COMPONENT_SAMPLES: usize = 720;

/// Extra marks for an overlay.
#[derive(Clone, Debug, Default)]
pub struct OverlaySet<'a> {
    pub rays: &'a [RayTrace],
    pub points: &'a [Complex64],
    pub main_component: bool,
}

#[derive(Clone, Debug)]
pub struct Overlay {
    pub raster: Raster,
    pub svg: String,
    pub warnings: Vec<String>,
}

fn draw_segment(r: &mut Raster, a: (f64, f64), b: (f64, f64)) {
    let steps = (b.0 - a.0).abs().max((b.1 - a.1).abs()).ceil().max(1.0);
    if !steps.is_finite() || steps > 1e5 {
        return;
    }
    for k in 0..=steps as i64 {
        let s = k as f64 / steps;
        let x = a.0 + s * (b.0 - a.0);
        let y = a.1 + s * (b.1 - a.1);
        r.set(x.round() as i64, y.round() as i64, RAY_SHADE);
    }
}

fn draw_mark(r: &mut Raster, p: (f64, f64)) {
    let (x, y) = (p.0.round() as i64, p.1.round() as i64);
    for dx in -1..=1 {
        for dy in -1..=1 {
            r.set(x + dx, y + dy, RAY_SHADE);
        }
    }
}

/// Clips `pts` to a generous box around the viewport so that SVG coordinates
/// stay finite, splitting the polyline where it leaves.
fn svg_polylines(pts: &[(f64, f64)], spec: &RasterSpec) -> Vec<Vec<(f64, f64)>> {
    let margin = (spec.pixels.0.max(spec.pixels.1) as f64) * 4.0;
    let inside = |p: &(f64, f64)| {
        p.0 > -margin
            && p.1 > -margin
            && p.0 < spec.pixels.0 as f64 + margin
            && p.1 < spec.pixels.1 as f64 + margin
    };
    let mut out: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut cur = Vec::new();
    for p in pts {
        if inside(p) {
            cur.push(*p);
        } else if !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out.retain(|l| l.len() > 1);
    out
}

/// Draws ray polylines and landing points into a copy of `raster` and builds
/// the same picture as SVG over the embedded raster.
pub fn overlay_rays(raster: &Raster, traces: &[RayTrace]) -> Result<Overlay, RenderError> {
    overlay(
        raster,
        &OverlaySet {
            rays: traces,
            ..OverlaySet::default()
        },
    )
}

pub fn overlay(raster: &Raster, set: &OverlaySet<'_>) -> Result<Overlay, RenderError> {
    let spec = &raster.spec;
    let mut out = raster.clone();
    let mut warnings = Vec::new();
    let png = base64::engine::general_purpose::STANDARD.encode(raster.to_png()?);
    let (w, h) = spec.pixels;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        svg,
        r#"<image x="0" y="0" width="{w}" height="{h}" href="data:image/png;base64,{png}"/>"#
    );
    let polyline = |svg: &mut String, pts: &[(f64, f64)], color: &str| {
        let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1"/>"#,
            coords.join(" ")
        );
    };
    let circle = |svg: &mut String, p: (f64, f64), color: &str| {
        let _ = writeln!(
            svg,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{color}"/>"#,
            p.0, p.1
        );
    };

    if set.main_component {
        let pts: Vec<(f64, f64)> = (0..=MAIN_COMPONENT_SAMPLES)
            .flat_map(|k| {
                let lambda = Complex64::from_polar(
                    1.0,
                    2.0 * std::f64::consts::PI * k as f64 / MAIN_COMPONENT_SAMPLES as f64,
                );
                main_component_point(spec.d, lambda)
            })
            .map(|p| spec.to_pixel(p.c))
            .collect();
        for p in &pts {
            out.set(p.0.round() as i64, p.1.round() as i64, RAY_SHADE);
        }
        for p in &pts {
            circle(&mut svg, *p, "#2a9d8f");
        }
    }

    for t in set.rays {
        if t.d != spec.d {
            return Err(RenderError::DegreeMismatch {
                raster: spec.d,
                trace: t.d,
            });
        }
        let pts: Vec<(f64, f64)> = t.points().map(|c| spec.to_pixel(c)).collect();
        let clipped = pts.iter().filter(|p| !spec.contains_pixel(**p)).count();
        if clipped > 0 {
            warnings.push(format!(
                "ray {}: {clipped} of {} samples outside the viewport were clipped",
                t.theta,
                pts.len()
            ));
        }
        for seg in pts.windows(2) {
            draw_segment(&mut out, seg[0], seg[1]);
        }
        let landing = spec.to_pixel(t.landing_estimate);
        if spec.contains_pixel(landing) {
            draw_mark(&mut out, landing);
        } else {
            warnings.push(format!("ray {}: landing point outside the viewport", t.theta));
        }
        for line in svg_polylines(&pts, spec) {
            polyline(&mut svg, &line, "#e63946");
        }
        if spec.contains_pixel(landing) {
            circle(&mut svg, landing, "#ffb703");
        }
    }

    for &c in set.points {
        let p = spec.to_pixel(c);
        if spec.contains_pixel(p) {
            draw_mark(&mut out, p);
            circle(&mut svg, p, "#457b9d");
        } else {
            warnings.push(format!("point {c} outside the viewport"));
        }
    }

    svg.push_str("</svg>\n");
    Ok(Overlay {
        raster: out,
        svg,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::Angle;
    use crate::boettcher::green_parameter;
    use crate::rays::{trace_parameter_ray, DEFAULT_FLOOR, DEFAULT_STEPS};

    fn spec(d: u32, center: Complex64, width: f64, px: (u32, u32)) -> RasterSpec {
        RasterSpec {
            center,
            width,
            pixels: px,
            max_iter: 200,
            d,
        }
    }

    #[test]
    fn basic_points() {
        let s = spec(2, Complex64::new(-0.75, 0.0), 3.0, (301, 201));
        let r = render_multibrot(&s).unwrap();
        let (x, y) = s.to_pixel(Complex64::new(0.0, 0.0));
        assert_eq!(r.get(x.round() as u32, y.round() as u32), 0);
        let back = s.point(x.round() as u32, y.round() as u32);
        assert!(back.norm() < 3.0 / 301.0);
        let (x, y) = s.to_pixel(Complex64::new(0.65, 0.0));
        assert!(r.get(x.round() as u32, y.round() as u32) > 0);
        assert!(smooth_count(2, Complex64::new(1.0, 0.0), 100).is_some());
    }

    #[test]
    fn pgm_header() {
        let s = spec(2, Complex64::new(0.0, 0.0), 4.0, (3, 2));
        let pgm = render_multibrot(&s).unwrap().to_pgm();
        assert_eq!(&pgm[..11], b"P5\n3 2\n255\n");
        assert_eq!(pgm.len(), 11 + 6);
    }

    #[test]
    fn conjugation_mirror_is_exact() {
        let s = spec(2, Complex64::new(-0.5, 0.0), 2.7, (120, 90));
        let r = render_multibrot(&s).unwrap();
        for row in 0..90 {
            for col in 0..120 {
                assert_eq!(r.get(col, row), r.get(col, 89 - row));
            }
        }
    }

    #[test]
    fn cubic_half_turn() {
        let s = spec(3, Complex64::new(0.0, 0.0), 3.0, (100, 80));
        let r = render_multibrot(&s).unwrap();
        for row in 0..80 {
            for col in 0..100 {
                assert_eq!(r.get(col, row), r.get(99 - col, 79 - row));
            }
        }
    }

    #[test]
    fn interior_and_exterior_agree_with_green() {
        let s = spec(3, Complex64::new(0.1, 0.2), 2.9, (64, 64));
        let r = render_multibrot(&s).unwrap();
        for row in (0..64).step_by(3) {
            for col in (0..64).step_by(3) {
                let c = s.point(col, row);
                let g = green_parameter(3, c, s.max_iter, escape_radius(3, c));
                assert_eq!(r.get(col, row) == 0, g.is_inside(), "{c}");
            }
        }
    }

    #[test]
    fn validation() {
        assert_eq!(
            render_multibrot(&spec(2, Complex64::new(0.0, 0.0), 0.0, (2, 2))),
            Err(RenderError::Width(0.0))
        );
        assert_eq!(
            render_multibrot(&spec(2, Complex64::new(0.0, 0.0), 1.0, (0, 2))),
            Err(RenderError::Pixels(0, 2))
        );
    }

    #[test]
    fn overlays() {
        let s = spec(2, Complex64::new(-0.5, 0.0), 3.0, (150, 100));
        let r = render_multibrot(&s).unwrap();
        let empty = overlay_rays(&r, &[]).unwrap();
        assert_eq!(empty.raster, r);
        assert!(empty.warnings.is_empty());
        assert!(empty.svg.contains("data:image/png;base64,"));

        let ray0 = trace_parameter_ray(2, &Angle::zero(), DEFAULT_FLOOR, DEFAULT_STEPS).unwrap();
        assert!((ray0.landing_estimate - Complex64::new(0.25, 0.0)).norm() < 1e-3);
        let o = overlay_rays(&r, std::slice::from_ref(&ray0)).unwrap();
        let (x, y) = s.to_pixel(Complex64::new(0.25, 0.0));
        assert_eq!(o.raster.get(x.round() as u32, y.round() as u32), RAY_SHADE);
        assert!(o.svg.contains("<polyline"));
        assert!(!o.warnings.is_empty(), "the far end of the ray leaves the view");

        let cubic = trace_parameter_ray(3, &Angle::zero(), 1e-20, DEFAULT_STEPS).unwrap();
        assert!(matches!(
            overlay_rays(&r, &[cubic]),
            Err(RenderError::DegreeMismatch { raster: 2, trace: 3 })
        ));
    }
}
