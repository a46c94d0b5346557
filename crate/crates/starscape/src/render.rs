//! Deterministic starscape rendering.
//!
//! Dots are placed at upper-half-plane roots and sized inversely to an
//! arithmetic-complexity measure. In the hyperbolic metric the size is a
//! hyperbolic radius, realized as the euclidean circle with center
//! x + i y cosh(rho) and radius y sinh(rho). Output is an SVG document of
//! circles (or lines, for arrow fields) that is byte-identical across runs
//! and thread counts, plus an optional raster.

use crate::error::RenderError;
use crate::heights;
use crate::poly::{FamilySpec, IntPoly};
use crate::roots::{self, RootEntry};
use crate::tangent;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Metric {
    Hyperbolic,
    Euclidean,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sizing {
    RootDisc,
    Naive,
    Mahler,
    NuancedDisc,
    NuancedNaive,
    NuancedMahler,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ColorMode {
    ByDegree,
    ByRealRoot,
    Mono,
}

#[derive(Clone, Debug, Serialize)]
pub struct RenderSpec {
    /// (re_min, re_max, im_min, im_max)
    pub region: (f64, f64, f64, f64),
    pub width_px: u32,
    pub metric: Metric,
    pub sizing: Sizing,
    /// None picks the scale so the largest dot radius is 2% of the frame
    /// height; the chosen value lands in the metadata.
    pub scale: Option<f64>,
    pub color: ColorMode,
    pub min_radius_px: f64,
}

impl RenderSpec {
    pub fn validate(&self) -> Result<(), RenderError> {
        let (re0, re1, im0, im1) = self.region;
        if !(re0 < re1 && im0 < im1) {
            return Err(RenderError::BadRegion(format!("{:?}", self.region)));
        }
        if self.metric == Metric::Hyperbolic && im0 <= 0.0 {
            return Err(RenderError::BadRegion(
                "hyperbolic metric requires im_min > 0".into(),
            ));
        }
        if !(64..=16384).contains(&self.width_px) {
            return Err(RenderError::BadWidth(self.width_px));
        }
        Ok(())
    }

    pub fn height_px(&self) -> u32 {
        let (re0, re1, im0, im1) = self.region;
        let aspect = (im1 - im0) / (re1 - re0);
        ((self.width_px as f64 * aspect).round() as u32).max(1)
    }
}

pub const DEFAULT_SPEC_REGION: (f64, f64, f64, f64) = (-1.0, 1.0, 0.0001, 2.0);

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Rgba(pub u8, pub u8, pub u8, pub u8);

/// One dot, already mapped to euclidean geometry in the complex plane.
#[derive(Clone, Debug, Serialize)]
pub struct Dot {
    pub center: (f64, f64),
    pub radius: f64,
    pub color: Rgba,
    coeffs: Vec<i64>,
}

/// Inverse-complexity size in the chosen measure. Returns None for dots
/// that must be skipped (zero discriminant under a disc sizing).
pub fn size_quantity(p: &IntPoly, sizing: Sizing) -> Option<f64> {
    let d = p.degree() as f64;
    match sizing {
        Sizing::RootDisc => heights::root_discriminant(p),
        Sizing::Naive => Some(p.naive_height() as f64),
        Sizing::Mahler => heights::mahler_measure(p, roots::DEFAULT_TOL).ok(),
        Sizing::NuancedDisc => {
            let disc = p.discriminant();
            if num_traits::Zero::is_zero(&disc) {
                return None;
            }
            let abs = disc.magnitude().to_f64().unwrap_or(f64::INFINITY);
            Some(abs.powf((d + 1.0) / (4.0 * d - 4.0)))
        }
        Sizing::NuancedNaive => Some((p.naive_height() as f64).powf((d + 1.0) / 2.0)),
        Sizing::NuancedMahler => heights::mahler_measure(p, roots::DEFAULT_TOL)
            .ok()
            .map(|m| m.powf((d + 1.0) / 2.0)),
    }
}

/// Radius (hyperbolic or euclidean, per the spec metric) of the dot for
/// polynomial `p`: scale / quantity.
pub fn size_dot(p: &IntPoly, spec: &RenderSpec, scale: f64) -> Option<f64> {
    size_quantity(p, spec.sizing).map(|q| scale / q)
}

/// Euclidean circle realizing the hyperbolic circle of radius rho around z:
/// center x + i y cosh(rho), radius y sinh(rho).
pub fn hyperbolic_dot(z: crate::hyper::UhpPoint, rho: f64) -> ((f64, f64), f64) {
    ((z.x, z.y * rho.cosh()), z.y * rho.sinh())
}

/// Color by the sign and size of the smallest real root: negative reds,
/// positive blues, both fading to white as |r| grows; quadratics are black
/// and rootless polynomials gray.
pub fn color_real_root(p: &IntPoly) -> Rgba {
    if p.effective_degree() == 2 {
        return Rgba(0, 0, 0, 255);
    }
    let reals = match roots::roots(p, roots::DEFAULT_TOL) {
        Ok(rs) => rs.real_roots(),
        Err(_) => Vec::new(),
    };
    match reals.first() {
        None => Rgba(128, 128, 128, 255),
        Some(&r) => {
            let sat = 1.0 / (1.0 + r.abs());
            let fade = |base: u8| -> u8 { (255.0 - (255.0 - base as f64) * sat).round() as u8 };
            if r < 0.0 {
                Rgba(255, fade(0), fade(0), 255)
            } else {
                Rgba(fade(0), fade(0), 255, 255)
            }
        }
    }
}

fn color_by_degree(d: usize) -> Rgba {
    match d {
        2 => Rgba(0, 0, 0, 255),
        3 => Rgba(200, 30, 30, 255),
        4 => Rgba(30, 60, 200, 255),
        _ => Rgba(120, 30, 160, 255),
    }
}

/// Metadata describing one finished render.
#[derive(Clone, Debug, Serialize)]
pub struct RenderMeta {
    pub family: FamilySpec,
    pub spec: RenderSpec,
    pub dot_count: usize,
    pub scale: f64,
    pub torus_radii: (f64, f64),
}

/// A rendered document: deterministic SVG plus the dot list used to build
/// it (the raster consumes the same list).
#[derive(Clone, Debug)]
pub struct Rendering {
    pub svg: String,
    pub dots: Vec<Dot>,
    pub meta: RenderMeta,
}

fn upper_points(p: &IntPoly) -> Vec<(f64, f64)> {
    match roots::roots(p, roots::DEFAULT_TOL) {
        Ok(rs) => rs
            .entries
            .iter()
            .filter_map(|e| match e {
                RootEntry::Pair { upper, .. } => Some((upper.re, upper.im)),
                _ => None,
            })
            .collect(),
        Err(_) => Vec::new(),
    }
}

/// Render a family of polynomials as a starscape. Dot generation is
/// parallel; emission sorts (radius desc, coefficients lex) so the output
/// does not depend on the thread count.
pub fn render_starscape(family: &FamilySpec, spec: &RenderSpec) -> Result<Rendering, RenderError> {
    spec.validate()?;
    let polys: Vec<IntPoly> = family.enumerate().collect();
    let (re0, re1, im0, im1) = spec.region;

    // raw (quantity, point, color, coeffs) entries
    let raw: Vec<(f64, (f64, f64), Rgba, Vec<i64>)> = polys
        .par_iter()
        .flat_map_iter(|p| {
            let q = size_quantity(p, spec.sizing);
            let color = match spec.color {
                ColorMode::Mono => Rgba(0, 0, 0, 255),
                ColorMode::ByDegree => color_by_degree(p.effective_degree()),
                ColorMode::ByRealRoot => color_real_root(p),
            };
            let coeffs = p.coeffs().to_vec();
            q.map(move |q| {
                upper_points(p)
                    .into_iter()
                    .filter(|&(x, y)| x >= re0 && x <= re1 && y >= im0 && y <= im1)
                    .map(move |pt| (q, pt, color, coeffs.clone()))
                    .collect::<Vec<_>>()
            })
            .unwrap_or_default()
        })
        .collect();

    // auto scale: largest dot is 2% of frame height
    let scale = match spec.scale {
        Some(s) => s,
        None => {
            let min_q = raw
                .iter()
                .map(|(q, _, _, _)| *q)
                .fold(f64::INFINITY, f64::min);
            if min_q.is_finite() {
                0.02 * (im1 - im0) * min_q
            } else {
                1.0
            }
        }
    };

    let px_per_unit = spec.width_px as f64 / (re1 - re0);
    let mut dots: Vec<Dot> = raw
        .into_iter()
        .filter_map(|(q, (x, y), color, coeffs)| {
            let r = scale / q;
            let (center, radius) = match spec.metric {
                Metric::Euclidean => ((x, y), r),
                Metric::Hyperbolic => {
                    hyperbolic_dot(crate::hyper::UhpPoint::new(x, y), r)
                }
            };
            if radius * px_per_unit < spec.min_radius_px {
                return None;
            }
            Some(Dot { center, radius, color, coeffs })
        })
        .collect();

    dots.sort_by(|a, b| {
        b.radius
            .total_cmp(&a.radius)
            .then_with(|| a.coeffs.cmp(&b.coeffs))
            .then_with(|| a.center.0.total_cmp(&b.center.0))
            .then_with(|| a.center.1.total_cmp(&b.center.1))
    });

    let meta = RenderMeta {
        family: family.clone(),
        spec: spec.clone(),
        dot_count: dots.len(),
        scale,
        torus_radii: (2.0, 1.0),
    };
    let svg = dots_to_svg(&dots, spec);
    Ok(Rendering { svg, dots, meta })
}

/// Arrow-field rendering of a degree-3 family: one arrow per negative
/// discriminant cubic, based at the complex root, pointing toward the real
/// root, length tied to the dot sizing.
pub fn render_arrows(family: &FamilySpec, spec: &RenderSpec) -> Result<Rendering, RenderError> {
    spec.validate()?;
    let (re0, re1, im0, im1) = spec.region;
    let polys: Vec<IntPoly> = family.enumerate().collect();
    let raw: Vec<(f64, (f64, f64), (f64, f64), Vec<i64>)> = polys
        .par_iter()
        .filter_map(|p| {
            if p.degree() != 3 {
                return None;
            }
            let t = tangent::split_cubic(p).ok()?;
            let (x, y) = (t.base.x, t.base.y);
            if !(x >= re0 && x <= re1 && y >= im0 && y <= im1) {
                return None;
            }
            let q = size_quantity(p, spec.sizing)?;
            let dir = match t.dir {
                crate::hyper::IdealPoint::Finite(r) => tangent::arrow_direction(t.base, r),
                crate::hyper::IdealPoint::Infinity => (0.0, 1.0),
            };
            Some((q, (x, y), dir, p.coeffs().to_vec()))
        })
        .collect();

    let scale = spec.scale.unwrap_or_else(|| {
        let min_q = raw.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
        if min_q.is_finite() {
            0.04 * (im1 - im0) * min_q
        } else {
            1.0
        }
    });

    let mut arrows: Vec<(f64, (f64, f64), (f64, f64), Vec<i64>)> = raw
        .into_iter()
        .map(|(q, base, dir, coeffs)| (scale / q, base, dir, coeffs))
        .collect();
    arrows.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.3.cmp(&b.3)));

    let mut svg = svg_header(spec);
    for (len, (x, y), (dx, dy), _) in &arrows {
        let (x1, y1) = to_px(spec, *x, *y);
        let (x2, y2) = to_px(spec, x + dx * len, y + dy * len);
        writeln!(
            svg,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black" stroke-width="0.6"/>"#,
            x1, y1, x2, y2
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");

    let dots: Vec<Dot> = arrows
        .into_iter()
        .map(|(len, base, _, coeffs)| Dot {
            center: base,
            radius: len,
            color: Rgba(0, 0, 0, 255),
            coeffs,
        })
        .collect();
    let meta = RenderMeta {
        family: family.clone(),
        spec: spec.clone(),
        dot_count: dots.len(),
        scale,
        torus_radii: (2.0, 1.0),
    };
    Ok(Rendering { svg: svg.clone(), dots, meta })
}

fn svg_header(spec: &RenderSpec) -> String {
    let w = spec.width_px;
    let h = spec.height_px();
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
    )
}

fn to_px(spec: &RenderSpec, x: f64, y: f64) -> (f64, f64) {
    let (re0, re1, im0, im1) = spec.region;
    let w = spec.width_px as f64;
    let h = spec.height_px() as f64;
    (
        (x - re0) / (re1 - re0) * w,
        // image y axis points down
        (im1 - y) / (im1 - im0) * h,
    )
}

fn dots_to_svg(dots: &[Dot], spec: &RenderSpec) -> String {
    let mut svg = svg_header(spec);
    let px_per_unit = spec.width_px as f64 / (spec.region.1 - spec.region.0);
    for d in dots {
        let (cx, cy) = to_px(spec, d.center.0, d.center.1);
        let r = d.radius * px_per_unit;
        let Rgba(red, green, blue, _) = d.color;
        writeln!(
            svg,
            r##"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="#{:02x}{:02x}{:02x}"/>"##,
            cx, cy, r, red, green, blue
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    svg
}

/// Rasterize a dot list to RGBA pixels at the spec resolution with 4x
/// supersampling (2x per axis), box filtered.
pub fn rasterize(dots: &[Dot], spec: &RenderSpec) -> (u32, u32, Vec<u8>) {
    let w = spec.width_px;
    let h = spec.height_px();
    let ss = 2u32;
    let (sw, sh) = (w * ss, h * ss);
    let mut buf = vec![255u8; (sw * sh * 4) as usize];
    let px_per_unit = w as f64 / (spec.region.1 - spec.region.0) * ss as f64;
    for d in dots {
        let (cx, cy) = to_px(spec, d.center.0, d.center.1);
        let (cx, cy) = (cx * ss as f64, cy * ss as f64);
        let r = d.radius * px_per_unit;
        let x0 = ((cx - r).floor().max(0.0)) as i64;
        let x1 = ((cx + r).ceil().min(sw as f64 - 1.0)) as i64;
        let y0 = ((cy - r).floor().max(0.0)) as i64;
        let y1 = ((cy + r).ceil().min(sh as f64 - 1.0)) as i64;
        let r2 = r * r;
        for py in y0..=y1 {
            for px in x0..=x1 {
                let dx = px as f64 + 0.5 - cx;
                let dy = py as f64 + 0.5 - cy;
                if dx * dx + dy * dy <= r2 {
                    let idx = ((py as u32 * sw + px as u32) * 4) as usize;
                    buf[idx] = d.color.0;
                    buf[idx + 1] = d.color.1;
                    buf[idx + 2] = d.color.2;
                    buf[idx + 3] = 255;
                }
            }
        }
    }
    // box downsample
    let mut out = vec![0u8; (w * h * 4) as usize];
    for y in 0..h {
        for x in 0..w {
            for ch in 0..4usize {
                let mut acc = 0u32;
                for sy in 0..ss {
                    for sx in 0..ss {
                        let idx = (((y * ss + sy) * sw + x * ss + sx) * 4) as usize + ch;
                        acc += buf[idx] as u32;
                    }
                }
                out[((y * w + x) * 4) as usize + ch] = (acc / (ss * ss)) as u8;
            }
        }
    }
    (w, h, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper::{dist_uhp, UhpPoint};
    use crate::poly::ParamBound;

    fn quad_family(bound: i64) -> FamilySpec {
        FamilySpec::new(
            2,
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![0, 0, 0],
            ParamBound::Ball(bound),
        )
        .unwrap()
    }

    fn base_spec() -> RenderSpec {
        RenderSpec {
            region: (-1.0, 1.0, 0.01, 2.0),
            width_px: 256,
            metric: Metric::Hyperbolic,
            sizing: Sizing::RootDisc,
            scale: None,
            color: ColorMode::Mono,
            min_radius_px: 0.05,
        }
    }

    #[test]
    fn sizing_values() {
        let p = IntPoly::new(&[1, 0, 1]).unwrap();
        assert_eq!(size_quantity(&p, Sizing::RootDisc), Some(2.0));
        // nuanced disc, degree 2: exponent 3/4
        let q = size_quantity(&p, Sizing::NuancedDisc).unwrap();
        assert!((q - 4.0f64.powf(0.75)).abs() < 1e-12);
        // nuanced naive, degree 3: exponent 2
        let c = IntPoly::new(&[2, 0, 1, 1]).unwrap();
        let qn = size_quantity(&c, Sizing::NuancedNaive).unwrap();
        assert_eq!(qn, 4.0);
        // zero discriminant skipped under disc sizing
        let dbl = IntPoly::new(&[1, -2, 1]).unwrap();
        assert_eq!(size_quantity(&dbl, Sizing::RootDisc), None);
        assert!(size_quantity(&dbl, Sizing::Naive).is_some());
    }

    #[test]
    fn hyperbolic_dot_geometry() {
        let z = UhpPoint::new(0.0, 1.0);
        let rho = 2.0f64.ln();
        let ((cx, cy), r) = hyperbolic_dot(z, rho);
        assert!((cx - 0.0).abs() < 1e-15);
        assert!((cy - 1.25).abs() < 1e-15);
        assert!((r - 0.75).abs() < 1e-15);
        // all sampled boundary points at hyperbolic distance rho
        for k in 0..32 {
            let a = 2.0 * std::f64::consts::PI * k as f64 / 32.0;
            let p = UhpPoint::new(cx + r * a.cos(), cy + r * a.sin());
            assert!((dist_uhp(z, p) - rho).abs() < 1e-10);
        }
        // rho -> 0 degenerates to the center
        let ((_, cy0), r0) = hyperbolic_dot(z, 0.0);
        assert_eq!((cy0, r0), (1.0, 0.0));
    }

    #[test]
    fn starscape_determinism_across_threads() {
        let fam = quad_family(6);
        let spec = base_spec();
        let pool1 = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let pool8 = rayon::ThreadPoolBuilder::new().num_threads(8).build().unwrap();
        let r1 = pool1.install(|| render_starscape(&fam, &spec).unwrap());
        let r8 = pool8.install(|| render_starscape(&fam, &spec).unwrap());
        assert_eq!(r1.svg, r8.svg);
        assert_eq!(r1.meta.dot_count, r8.meta.dot_count);
        let again = render_starscape(&fam, &spec).unwrap();
        assert_eq!(r1.svg, again.svg);
    }

    #[test]
    fn starscape_clipping_and_sorting() {
        let fam = quad_family(5);
        let spec = base_spec();
        let r = render_starscape(&fam, &spec).unwrap();
        assert!(r.meta.dot_count > 0);
        for w in r.dots.windows(2) {
            assert!(w[0].radius >= w[1].radius);
        }
        // dot centers derive from in-region roots; hyperbolic lift moves
        // them up, never sideways
        for d in &r.dots {
            assert!(d.center.0 >= spec.region.0 && d.center.0 <= spec.region.1);
        }
    }

    #[test]
    fn sizing_monotonicity() {
        // larger complexity means strictly smaller radius at fixed scale
        let p1 = IntPoly::new(&[1, 0, 1]).unwrap(); // |disc| 4
        let p2 = IntPoly::new(&[1, 0, 7]).unwrap(); // |disc| 28
        let spec = base_spec();
        let r1 = size_dot(&p1, &spec, 1.0).unwrap();
        let r2 = size_dot(&p2, &spec, 1.0).unwrap();
        assert!(r2 < r1);
    }

    #[test]
    fn empty_family_is_valid() {
        let fam = FamilySpec::new(
            2,
            vec![vec![1, 0, 0]],
            vec![0, 0, 0],
            ParamBound::Box(vec![(1, 0)]),
        )
        .unwrap();
        let r = render_starscape(&fam, &base_spec()).unwrap();
        assert_eq!(r.meta.dot_count, 0);
        assert!(r.svg.contains("</svg>"));
    }

    #[test]
    fn region_validation() {
        let mut spec = base_spec();
        spec.region = (-1.0, 1.0, 0.0, 2.0);
        assert!(matches!(
            render_starscape(&quad_family(2), &spec),
            Err(RenderError::BadRegion(_))
        ));
        // euclidean metric tolerates im_min = 0
        spec.metric = Metric::Euclidean;
        assert!(render_starscape(&quad_family(2), &spec).is_ok());
        // inverted region rejected either way
        spec.region = (1.0, -1.0, 0.0, 2.0);
        assert!(render_starscape(&quad_family(2), &spec).is_err());
    }

    #[test]
    fn arrows_basics() {
        let fam = FamilySpec::new(
            3,
            vec![
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 1, 0],
            ],
            vec![0, 0, 0, 1],
            ParamBound::Ball(2),
        )
        .unwrap();
        let mut spec = base_spec();
        spec.region = (-2.0, 2.0, 0.01, 2.5);
        let r = render_arrows(&fam, &spec).unwrap();
        assert!(r.svg.contains("<line"));
        // determinism
        let r2 = render_arrows(&fam, &spec).unwrap();
        assert_eq!(r.svg, r2.svg);
    }

    #[test]
    fn real_root_coloring() {
        let quad = IntPoly::new(&[1, 0, 1]).unwrap();
        assert_eq!(color_real_root(&quad), Rgba(0, 0, 0, 255));
        let neg = IntPoly::new(&[1, 1, 1, 1]).unwrap(); // real root -1
        let c = color_real_root(&neg);
        assert_eq!(c.0, 255);
        assert!(c.1 > 0 && c.1 < 255); // faded toward white
        let pos_far = IntPoly::new(&[1, -10, 1, -10]).unwrap(); // real root 10
        let c2 = color_real_root(&pos_far);
        assert_eq!(c2.2, 255);
        assert!(c2.0 > 200, "far root should be pale: {:?}", c2);
        let rootless = IntPoly::new(&[1, 0, 2, 0, 1]).unwrap(); // (x^2+1)^2-ish
        assert_eq!(color_real_root(&rootless), Rgba(128, 128, 128, 255));
    }

    #[test]
    fn raster_smoke() {
        let fam = quad_family(4);
        let spec = base_spec();
        let r = render_starscape(&fam, &spec).unwrap();
        let (w, h, px) = rasterize(&r.dots, &spec);
        assert_eq!(px.len() as u32, w * h * 4);
        // something was drawn
        assert!(px.chunks(4).any(|c| c[0] != 255));
        // deterministic
        let (_, _, px2) = rasterize(&r.dots, &spec);
        assert_eq!(px, px2);
    }
}
