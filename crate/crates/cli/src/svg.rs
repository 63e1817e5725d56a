use std::fmt::Write;

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 16.0;

/// One named polyline layer.
pub struct Layer<'a> {
    pub id: &'a str,
    pub stroke: &'a str,
    pub width: f64,
    pub points: Vec<(f64, f64)>,
}

/// Renders the layers into a standalone SVG document. Mathematical curves are
/// drawn with the y axis pointing up; image curves (`y_down`) keep the pixel
/// orientation.
pub fn render(layers: &[Layer], y_down: bool) -> String {
    let all = layers.iter().flat_map(|l| l.points.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all.filter(|p| p.0.is_finite() && p.1.is_finite()) {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x0 > x1 {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let s = (WIDTH - 2.0 * MARGIN) / span;
    let height = (y1 - y0) * s + 2.0 * MARGIN;
    let map = |(x, y): (f64, f64)| {
        let px = MARGIN + (x - x0) * s;
        let py = if y_down { MARGIN + (y - y0) * s } else { MARGIN + (y1 - y) * s };
        (px, py)
    };

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height:.2}" viewBox="0 0 {WIDTH} {height:.2}">"#
    );
    for layer in layers {
        let _ = write!(
            out,
            r#"  <g id="{}" fill="none" stroke="{}" stroke-width="{}" stroke-linejoin="round">"#,
            layer.id, layer.stroke, layer.width
        );
        // non-finite samples split the polyline
        let mut runs: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
        for &p in &layer.points {
            if p.0.is_finite() && p.1.is_finite() {
                runs.last_mut().unwrap().push(map(p));
            } else if !runs.last().unwrap().is_empty() {
                runs.push(Vec::new());
            }
        }
        for run in runs.iter().filter(|r| !r.is_empty()) {
            out.push_str("\n    <polyline points=\"");
            for (i, (x, y)) in run.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{x:.3},{y:.3}");
            }
            out.push_str("\"/>");
        }
        out.push_str("\n  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layers_become_groups() {
        let svg = render(
            &[
                Layer { id: "original", stroke: "black", width: 1.0, points: vec![(0.0, 0.0), (1.0, 1.0)] },
                Layer { id: "approximant", stroke: "red", width: 1.0, points: vec![(0.0, 1.0), (f64::NAN, 0.0), (1.0, 0.0)] },
            ],
            false,
        );
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains(r#"<g id="original""#) && svg.contains(r#"<g id="approximant""#));
        assert_eq!(svg.matches("<polyline").count(), 3);
        // y up: the point (0, 0) sits at the bottom
        assert!(svg.contains(&format!("16.000,{:.3}", WIDTH - MARGIN)));
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
