//! SVG figures of frameworks.
//!
//! Bars are `<line>` elements and joints `<circle>` elements, one per joint.
//! Joints sharing a position are drawn as concentric circles with a badge
//! giving the multiplicity. Mirror lines (2D) and mirror planes (3D, as a
//! projected square patch) are dashed `<path>` elements. The picture is
//! centred on the origin, which every point group fixes.
//!
//! 3D frameworks are projected orthographically: points are rotated by
//! [`DEFAULT_VIEW`] and the third coordinate is dropped.

use std::fmt::Write;

use symrig_core::{Framework, SymmetryGroup};

/// `R_x(−60°) · R_z(30°)`: turn 30° about the vertical axis, then tip the
/// scene 60° towards the viewer so that z points up the page.
pub const DEFAULT_VIEW: [[f64; 3]; 3] = [
    [0.866_025_403_784_438_6, -0.5, 0.0],
    [0.25, 0.433_012_701_892_219_3, 0.866_025_403_784_438_6],
    [-0.433_012_701_892_219_3, -0.75, 0.5],
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SvgError {
    #[error("cannot draw a framework in dimension {0}; only 2 and 3 are supported")]
    UnsupportedDim(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// Width and height of the square canvas.
    pub size: f64,
    pub margin: f64,
    pub joint_radius: f64,
    /// Radius step between concentric circles of coincident joints.
    pub ring_step: f64,
    pub show_labels: bool,
    pub view: [[f64; 3]; 3],
    /// Joints closer than this share a drawing position.
    pub coincidence_tol: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            size: 400.0,
            margin: 30.0,
            joint_radius: 5.0,
            ring_step: 3.0,
            show_labels: true,
            view: DEFAULT_VIEW,
            coincidence_tol: symrig_core::DEFAULT_GEOM_TOL,
        }
    }
}

fn project(p: &[f64], view: &[[f64; 3]; 3]) -> [f64; 2] {
    match p.len() {
        2 => [p[0], p[1]],
        _ => [
            (0..3).map(|k| view[0][k] * p[k]).sum(),
            (0..3).map(|k| view[1][k] * p[k]).sum(),
        ],
    }
}

/// Groups of joints at the same position, in order of first appearance.
fn clusters(framework: &Framework, tol: f64) -> Vec<Vec<usize>> {
    let p = framework.placement();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for v in 0..p.len() {
        match out.iter_mut().find(|c| p.distance(c[0], v) <= tol) {
            Some(c) => c.push(v),
            None => out.push(vec![v]),
        }
    }
    out
}

/// Renders `framework`, with the mirrors of `group` if one is given.
pub fn render_svg(
    framework: &Framework,
    group: Option<&SymmetryGroup>,
    options: &SvgOptions,
) -> Result<String, SvgError> {
    let d = framework.dim();
    if !(d == 2 || d == 3) {
        return Err(SvgError::UnsupportedDim(d));
    }
    let placement = framework.placement().normalized();
    let graph = framework.graph();
    let points: Vec<[f64; 2]> = placement
        .points()
        .map(|q| project(q, &options.view))
        .collect();
    let reach = points
        .iter()
        .flat_map(|q| q.iter().map(|c| c.abs()))
        .fold(0.0, f64::max)
        .max(1e-12);
    let half = options.size / 2.0;
    let scale = (half - options.margin) / reach;
    let to_canvas = |q: [f64; 2]| (half + scale * q[0], half - scale * q[1]);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = options.size
    );
    let _ = writeln!(
        svg,
        r#"  <style>.bar{{stroke:#222;stroke-width:2}}.joint{{fill:white;stroke:#222;stroke-width:1.5}}.mirror{{fill:none;stroke:#888;stroke-width:1;stroke-dasharray:6 4}}.badge{{font:bold 10px sans-serif;fill:#b00}}.label{{font:11px sans-serif;fill:#225}}</style>"#
    );

    if let Some(group) = group {
        let extent = 1.2 * placement.max_abs().max(1e-12);
        for e in group.elements() {
            let fixed = e.fixed_subspace();
            if e.determinant() > 0.0 || fixed.dim() + 1 != d {
                continue;
            }
            let basis = fixed.basis();
            let corner = |a: f64, b: f64| {
                let q: Vec<f64> = (0..d)
                    .map(|r| a * basis[(r, 0)] + if d == 3 { b * basis[(r, 1)] } else { 0.0 })
                    .collect();
                to_canvas(project(&q, &options.view))
            };
            let mut path = String::new();
            let pts = if d == 2 {
                vec![corner(-extent, 0.0), corner(extent, 0.0)]
            } else {
                vec![
                    corner(-extent, -extent),
                    corner(extent, -extent),
                    corner(extent, extent),
                    corner(-extent, extent),
                ]
            };
            for (i, (x, y)) in pts.iter().enumerate() {
                let _ = write!(path, "{}{x:.2} {y:.2} ", if i == 0 { "M" } else { "L" });
            }
            if d == 3 {
                path.push('Z');
            }
            let _ = writeln!(
                svg,
                r#"  <path class="mirror" data-element="{}" d="{}"/>"#,
                e.label(),
                path.trim_end()
            );
        }
    }

    for &(u, v) in graph.edges() {
        let (x1, y1) = to_canvas(points[u]);
        let (x2, y2) = to_canvas(points[v]);
        let _ = writeln!(
            svg,
            r#"  <line class="bar" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#
        );
    }

    for cluster in clusters(framework, options.coincidence_tol) {
        let (cx, cy) = to_canvas(points[cluster[0]]);
        for (k, &v) in cluster.iter().enumerate().rev() {
            let r = options.joint_radius + options.ring_step * k as f64;
            let _ = writeln!(
                svg,
                r#"  <circle class="joint" data-vertex="{}" cx="{cx:.2}" cy="{cy:.2}" r="{r:.2}"/>"#,
                graph.label(v)
            );
        }
        let outer = options.joint_radius + options.ring_step * (cluster.len() - 1) as f64;
        if cluster.len() > 1 {
            let _ = writeln!(
                svg,
                r#"  <text class="badge" x="{:.2}" y="{:.2}">{}</text>"#,
                cx + outer + 2.0,
                cy + outer + 8.0,
                cluster.len()
            );
        }
        if options.show_labels {
            let names: Vec<String> = cluster.iter().map(|&v| graph.label(v)).collect();
            let _ = writeln!(
                svg,
                r#"  <text class="label" x="{:.2}" y="{:.2}">{}</text>"#,
                cx + outer + 2.0,
                cy - outer - 2.0,
                names.join(",")
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
