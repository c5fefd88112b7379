//! SVG drawing of the universal Farey map on the upper half-plane.
//!
//! Vertices are the reduced rationals `a/c` with `1 <= c <= max_denominator`
//! inside the viewport, plus `1/0` at infinity. Finite edges are semicircles
//! orthogonal to the real axis; edges to `1/0` are vertical segments from each
//! integer up to the top of the drawing.

use std::fmt::Write as _;

use crate::arith::gcd;
use crate::error::{Error, Result};

/// Upper bound on the number of finite vertices in one drawing.
pub const MAX_RENDER_VERTICES: u64 = 200_000;

const MARGIN: f64 = 20.0;
const COORD_LIMIT: f64 = 1e9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderSpec {
    max_denominator: u64,
    x0: f64,
    x1: f64,
    width: u32,
    height: u32,
}

impl RenderSpec {
    pub fn new(max_denominator: u64, x0: f64, x1: f64, width: u32, height: u32) -> Result<Self> {
        if max_denominator == 0 {
            return Err(Error::PreconditionViolated(
                "max_denominator must be at least 1".into(),
            ));
        }
        if !(x0.is_finite() && x1.is_finite()) || x0.abs() > COORD_LIMIT || x1.abs() > COORD_LIMIT {
            return Err(Error::PreconditionViolated(format!(
                "viewport bounds must be finite and at most {COORD_LIMIT:e} in size"
            )));
        }
        if x0 >= x1 {
            return Err(Error::PreconditionViolated(format!(
                "empty viewport [{x0}, {x1}]"
            )));
        }
        if width <= 2 * MARGIN as u32 || height <= 2 * MARGIN as u32 {
            return Err(Error::PreconditionViolated(format!(
                "canvas {width}x{height} too small"
            )));
        }
        // about 3q²/π² vertices per unit length
        let estimate = ((x1 - x0) + 1.0) * (max_denominator as f64).powi(2);
        if estimate > 4.0 * MAX_RENDER_VERTICES as f64 {
            return Err(Error::TooLarge {
                what: "rendered vertices",
                size: estimate as u64,
                cap: MAX_RENDER_VERTICES,
            });
        }
        Ok(RenderSpec {
            max_denominator,
            x0,
            x1,
            width,
            height,
        })
    }

    pub fn max_denominator(&self) -> u64 {
        self.max_denominator
    }

    pub fn viewport(&self) -> (f64, f64) {
        (self.x0, self.x1)
    }

    pub fn size(&self) -> (u32, u32) {
        (self.width, self.height)
    }
}

/// Parses a viewport written `X0:X1`.
pub fn parse_viewport(s: &str) -> Result<(f64, f64)> {
    let (l, r) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("viewport `{s}` is not of the form X0:X1")))?;
    let num = |t: &str| -> Result<f64> {
        let x: f64 = t
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad viewport bound `{t}`")))?;
        if x.is_finite() {
            Ok(x)
        } else {
            Err(Error::Parse(format!("bad viewport bound `{t}`")))
        }
    };
    let (x0, x1) = (num(l)?, num(r)?);
    if x0 >= x1 {
        return Err(Error::Parse(format!("empty viewport `{s}`")));
    }
    Ok((x0, x1))
}

/// A rational `a/c` in lowest terms with `c >= 0`; `(1, 0)` is infinity.
pub type Rational = (i64, i64);

fn label((a, c): Rational) -> String {
    format!("{a}/{c}")
}

fn in_viewport(spec: &RenderSpec, (a, c): Rational) -> bool {
    let x = a as f64 / c as f64;
    spec.x0 <= x && x <= spec.x1
}

/// Finite vertices, sorted by value.
pub fn farey_vertices(spec: &RenderSpec) -> Vec<Rational> {
    let mut out = Vec::new();
    for c in 1..=spec.max_denominator as i64 {
        let lo = (spec.x0 * c as f64).ceil() as i64;
        let hi = (spec.x1 * c as f64).floor() as i64;
        for a in lo..=hi {
            if gcd(a.unsigned_abs(), c as u64) == 1 && in_viewport(spec, (a, c)) {
                out.push((a, c));
            }
        }
    }
    out.sort_by(|&(a, c), &(b, d)| (a as i128 * d as i128).cmp(&(b as i128 * c as i128)));
    out
}

/// Edges of the drawing, each with its smaller endpoint first and `1/0` last.
/// Sorted by endpoints.
pub fn farey_edges(spec: &RenderSpec) -> Vec<(Rational, Rational)> {
    let q = spec.max_denominator as i64;
    let mut out = Vec::new();
    for (a, c) in farey_vertices(spec) {
        if c == 1 {
            out.push(((a, c), (1, 0)));
        }
        for d in 1..=q {
            // b/d with a·d − b·c = ∓1, so b/d lies to the right
            for s in [1, -1] {
                let num = a * d + s;
                if num.rem_euclid(c) != 0 {
                    continue;
                }
                let b = num / c;
                if (a as i128) * (d as i128) - (b as i128) * (c as i128) == -1
                    && gcd(b.unsigned_abs(), d as u64) == 1
                    && in_viewport(spec, (b, d))
                {
                    out.push(((a, c), (b, d)));
                }
            }
        }
    }
    let key = |&(a, c): &Rational| {
        if c == 0 {
            (f64::INFINITY, 0)
        } else {
            (a as f64 / c as f64, c)
        }
    };
    out.sort_by(|u, v| {
        key(&u.0)
            .partial_cmp(&key(&v.0))
            .unwrap()
            .then(key(&u.1).partial_cmp(&key(&v.1)).unwrap())
    });
    out.dedup();
    out
}

/// SVG 1.1 document for the drawing.
pub fn render_universal_farey(spec: &RenderSpec) -> String {
    let (w, h) = (spec.width as f64, spec.height as f64);
    let base = h - MARGIN;
    let top = MARGIN;
    let scale = (w - 2.0 * MARGIN) / (spec.x1 - spec.x0);
    let px = |(a, c): Rational| MARGIN + (a as f64 / c as f64 - spec.x0) * scale;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        spec.width, spec.height, spec.width, spec.height
    )
    .unwrap();
    writeln!(
        out,
        "  <title>Farey map, denominators up to {}, viewport [{}, {}]</title>",
        spec.max_denominator, spec.x0, spec.x1
    )
    .unwrap();
    writeln!(
        out,
        "  <defs><clipPath id=\"plot\"><rect x=\"{:.3}\" y=\"{:.3}\" width=\"{:.3}\" height=\"{:.3}\"/></clipPath></defs>",
        MARGIN,
        top,
        w - 2.0 * MARGIN,
        base - top
    )
    .unwrap();
    writeln!(
        out,
        "  <line class=\"axis\" x1=\"{:.3}\" y1=\"{base:.3}\" x2=\"{:.3}\" y2=\"{base:.3}\" stroke=\"#999\" stroke-width=\"0.5\"/>",
        MARGIN,
        w - MARGIN
    )
    .unwrap();
    out.push_str(
        "  <g clip-path=\"url(#plot)\" fill=\"none\" stroke=\"black\" stroke-width=\"0.6\">\n",
    );
    for (u, v) in farey_edges(spec) {
        let x = px(u);
        if v.1 == 0 {
            writeln!(
                out,
                "    <line data-u=\"{}\" data-v=\"{}\" x1=\"{x:.3}\" y1=\"{base:.3}\" x2=\"{x:.3}\" y2=\"{top:.3}\"/>",
                label(u),
                label(v)
            )
            .unwrap();
        } else {
            let x2 = px(v);
            let r = (x2 - x) / 2.0;
            writeln!(
                out,
                "    <path data-u=\"{}\" data-v=\"{}\" d=\"M {x:.3} {base:.3} A {r:.3} {r:.3} 0 0 1 {x2:.3} {base:.3}\"/>",
                label(u),
                label(v)
            )
            .unwrap();
        }
    }
    out.push_str("  </g>\n");
    out.push_str("  <g font-family=\"sans-serif\" font-size=\"8\" text-anchor=\"middle\">\n");
    for v in farey_vertices(spec) {
        writeln!(
            out,
            "    <text data-vertex=\"{}\" x=\"{:.3}\" y=\"{:.3}\">{}</text>",
            label(v),
            px(v),
            base + 12.0,
            label(v)
        )
        .unwrap();
    }
    writeln!(
        out,
        "    <text data-vertex=\"1/0\" x=\"{:.3}\" y=\"{:.3}\">1/0</text>",
        w / 2.0,
        top - 6.0
    )
    .unwrap();
    out.push_str("  </g>\n</svg>\n");
    out
}
