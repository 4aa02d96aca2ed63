//! Minimal deterministic SVG emitter: polyline paths on an equal-aspect
//! canvas with a frame, origin axes when in range, and bound labels.
//!
//! Output depends only on the input data and canvas size, except for the
//! version comment on the second line.

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

/// Longest path emitted; longer polylines are strided down (visual fidelity
/// does not need more, and it keeps figure files small).
const MAX_PATH_POINTS: usize = 2000;

pub fn render_svg(polylines: &[Vec<(f64, f64)>], width: u32, height: u32) -> String {
    let (mut x0, mut y0, mut x1, mut y1) = (
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    );
    for line in polylines {
        for &(x, y) in line {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
    }
    if !x0.is_finite() {
        (x0, y0, x1, y1) = (-1.0, -1.0, 1.0, 1.0);
    }
    // pad 5% and keep degenerate extents drawable
    let dx = (x1 - x0).max(1e-9);
    let dy = (y1 - y0).max(1e-9);
    let (x0, x1) = (x0 - 0.05 * dx, x1 + 0.05 * dx);
    let (y0, y1) = (y0 - 0.05 * dy, y1 + 0.05 * dy);

    let margin = 40.0;
    let plot_w = width as f64 - 2.0 * margin;
    let plot_h = height as f64 - 2.0 * margin;
    let scale = (plot_w / (x1 - x0)).min(plot_h / (y1 - y0));
    let cx = 0.5 * (x0 + x1);
    let cy = 0.5 * (y0 + y1);
    let px = |x: f64| 0.5 * width as f64 + (x - cx) * scale;
    let py = |y: f64| 0.5 * height as f64 - (y - cy) * scale;

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!("<!-- ramplab {} -->\n", env!("CARGO_PKG_VERSION")));
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"{:.3}\" y=\"{:.3}\" width=\"{:.3}\" height=\"{:.3}\" fill=\"white\" stroke=\"#999\" stroke-width=\"1\"/>\n",
        px(x0),
        py(y1),
        (x1 - x0) * scale,
        (y1 - y0) * scale,
    ));
    if x0 < 0.0 && x1 > 0.0 {
        svg.push_str(&format!(
            "  <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#bbb\" stroke-width=\"1\"/>\n",
            px(0.0),
            py(y0),
            px(0.0),
            py(y1),
        ));
    }
    if y0 < 0.0 && y1 > 0.0 {
        svg.push_str(&format!(
            "  <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#bbb\" stroke-width=\"1\"/>\n",
            px(x0),
            py(0.0),
            px(x1),
            py(0.0),
        ));
    }
    for (i, line) in polylines.iter().enumerate() {
        if line.is_empty() {
            continue;
        }
        let stride = line.len().div_ceil(MAX_PATH_POINTS).max(1);
        let color = PALETTE[i % PALETTE.len()];
        let mut d = String::new();
        let mut first = true;
        for (j, &(x, y)) in line.iter().enumerate() {
            if j % stride != 0 && j != line.len() - 1 {
                continue;
            }
            if first {
                d.push_str(&format!("M {:.3} {:.3}", px(x), py(y)));
                first = false;
            } else {
                d.push_str(&format!(" L {:.3} {:.3}", px(x), py(y)));
            }
        }
        svg.push_str(&format!(
            "  <path fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" d=\"{d}\"/>\n"
        ));
    }
    svg.push_str(&format!(
        "  <text x=\"{:.3}\" y=\"{:.3}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#555\">x: [{:.4}, {:.4}]  y: [{:.4}, {:.4}]</text>\n",
        margin,
        height as f64 - 12.0,
        x0,
        x1,
        y0,
        y1,
    ));
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_structured() {
        let lines = vec![
            vec![(0.0, 0.0), (1.0, 1.0), (2.0, 0.5)],
            vec![(-1.0, 0.2), (0.5, -0.7)],
        ];
        let a = render_svg(&lines, 400, 300);
        let b = render_svg(&lines, 400, 300);
        assert_eq!(a, b);
        assert_eq!(a.matches("<path").count(), 2);
        assert!(a.contains("<svg"));
        assert!(a.lines().nth(1).unwrap().starts_with("<!-- ramplab"));
    }

    #[test]
    fn long_lines_are_strided() {
        let line: Vec<(f64, f64)> = (0..50_000).map(|i| (i as f64, (i as f64).sin())).collect();
        let svg = render_svg(&[line], 800, 600);
        let path_line = svg.lines().find(|l| l.contains("<path")).unwrap();
        assert!(path_line.matches(" L ").count() <= MAX_PATH_POINTS + 1);
    }

    #[test]
    fn equal_aspect() {
        // a unit square must render square regardless of canvas shape
        let square = vec![vec![
            (0.0, 0.0),
            (1.0, 0.0),
            (1.0, 1.0),
            (0.0, 1.0),
            (0.0, 0.0),
        ]];
        let svg = render_svg(&square, 1000, 400);
        // frame rect carries the data extent in pixels
        let rect_line = svg.lines().find(|l| l.contains("<rect")).unwrap();
        let get = |key: &str| -> f64 {
            let start = rect_line.find(key).unwrap() + key.len() + 2;
            let rest = &rect_line[start..];
            rest[..rest.find('"').unwrap()].parse().unwrap()
        };
        let w = get("width");
        let h = get("height");
        assert!((w - h).abs() < 1e-6, "w={w} h={h}");
    }
}
