use std::fmt::Write as _;

use curvediff::geometry::io::fmt_f64;
use curvediff::Curve;

/// Single stroked path fitted to the curve's bounding box plus a 5% margin.
/// The y axis is flipped so the picture has the usual orientation.
pub fn to_svg(curve: &Curve) -> String {
    let pts: Vec<(f64, f64)> = curve.nodes().iter().map(|p| (p.x, -p.y)).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let extent = (x1 - x0).max(y1 - y0);
    let margin = if extent > 0.0 { 0.05 * extent } else { 1.0 };
    let (w, h) = (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);

    let mut d = String::with_capacity(pts.len() * 50);
    for (i, &(x, y)) in pts.iter().enumerate() {
        let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, fmt_f64(x), fmt_f64(y));
    }
    if curve.is_closed() {
        d.push_str(" Z");
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n\
         <path d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"/>\n\
         </svg>\n",
        fmt_f64(x0 - margin),
        fmt_f64(y0 - margin),
        fmt_f64(w),
        fmt_f64(h)
    )
}
