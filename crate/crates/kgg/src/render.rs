//! Deterministic SVG rendering of point sets, graph edges, diameter disks,
//! matchings, and blockers. Same scene in, same bytes out: the viewport
//! mapping is fixed and all numbers are printed with fixed precision.

use std::collections::BTreeMap;

use crate::geom::{Point, PointSet};

const CANVAS: f64 = 800.0;
const MARGIN: f64 = 40.0;

#[derive(Clone, Debug, Default)]
pub struct Scene {
    pub points: Vec<Point>,
    pub blockers: Vec<Point>,
    /// Plain graph edges, indices into `points`.
    pub edges: Vec<(usize, usize)>,
    /// Highlighted matching edges, drawn on top.
    pub matching: Vec<(usize, usize)>,
    /// Translucent disks as (center, squared radius).
    pub disks: Vec<(Point, f64)>,
    pub labels: BTreeMap<String, usize>,
}

impl Scene {
    pub fn from_point_set(ps: &PointSet) -> Scene {
        Scene {
            points: ps.points().to_vec(),
            ..Scene::default()
        }
    }
}

struct Frame {
    min_x: f64,
    min_y: f64,
    scale: f64,
}

impl Frame {
    fn fit(scene: &Scene) -> Frame {
        let mut min_x = f64::INFINITY;
        let mut max_x = f64::NEG_INFINITY;
        let mut min_y = f64::INFINITY;
        let mut max_y = f64::NEG_INFINITY;
        let mut take = |x: f64, y: f64| {
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        };
        for p in scene.points.iter().chain(scene.blockers.iter()) {
            take(p.x, p.y);
        }
        for &(c, r2) in &scene.disks {
            let r = r2.max(0.0).sqrt();
            take(c.x - r, c.y - r);
            take(c.x + r, c.y + r);
        }
        if !min_x.is_finite() {
            take(0.0, 0.0);
            take(1.0, 1.0);
        }
        let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
        Frame {
            min_x,
            min_y: max_y - span, // anchor so y flips inside the same square
            scale: (CANVAS - 2.0 * MARGIN) / span,
        }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        (
            MARGIN + (p.x - self.min_x) * self.scale,
            CANVAS - MARGIN - (p.y - self.min_y) * self.scale,
        )
    }
}

pub fn render_svg(scene: &Scene) -> String {
    let frame = Frame::fit(scene);
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{c}\" height=\"{c}\" viewBox=\"0 0 {c} {c}\">\n",
        c = CANVAS
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    for &(center, r2) in &scene.disks {
        let (cx, cy) = frame.map(center);
        let r = r2.max(0.0).sqrt() * frame.scale;
        svg.push_str(&format!(
            "<circle cx=\"{cx:.4}\" cy=\"{cy:.4}\" r=\"{r:.4}\" fill=\"#4878a8\" fill-opacity=\"0.15\" stroke=\"#4878a8\" stroke-width=\"1\"/>\n"
        ));
    }
    for &(i, j) in &scene.edges {
        let (x1, y1) = frame.map(scene.points[i]);
        let (x2, y2) = frame.map(scene.points[j]);
        svg.push_str(&format!(
            "<line x1=\"{x1:.4}\" y1=\"{y1:.4}\" x2=\"{x2:.4}\" y2=\"{y2:.4}\" stroke=\"black\" stroke-width=\"1.5\"/>\n"
        ));
    }
    for &(i, j) in &scene.matching {
        let (x1, y1) = frame.map(scene.points[i]);
        let (x2, y2) = frame.map(scene.points[j]);
        svg.push_str(&format!(
            "<line x1=\"{x1:.4}\" y1=\"{y1:.4}\" x2=\"{x2:.4}\" y2=\"{y2:.4}\" stroke=\"#c03028\" stroke-width=\"3\"/>\n"
        ));
    }
    for p in &scene.points {
        let (cx, cy) = frame.map(*p);
        svg.push_str(&format!(
            "<circle cx=\"{cx:.4}\" cy=\"{cy:.4}\" r=\"3.5\" fill=\"black\"/>\n"
        ));
    }
    for p in &scene.blockers {
        let (cx, cy) = frame.map(*p);
        svg.push_str(&format!(
            "<circle cx=\"{cx:.4}\" cy=\"{cy:.4}\" r=\"3.5\" fill=\"white\" stroke=\"black\" stroke-width=\"1.5\"/>\n"
        ));
    }
    for (name, &i) in &scene.labels {
        if i >= scene.points.len() {
            continue;
        }
        let (cx, cy) = frame.map(scene.points[i]);
        svg.push_str(&format!(
            "<text x=\"{:.4}\" y=\"{:.4}\" font-size=\"14\" font-family=\"monospace\">{}</text>\n",
            cx + 5.0,
            cy - 5.0,
            name
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::PointSet;

    #[test]
    fn point_only_scene_has_one_glyph_per_point() {
        let ps = PointSet::from_coords(&[(0.0, 0.0), (1.0, 2.0), (3.0, 1.0)]).unwrap();
        let svg = render_svg(&Scene::from_point_set(&ps));
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(!svg.contains("<line"));
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn rendering_is_byte_deterministic() {
        let ps = PointSet::from_coords(&[(0.0, 0.0), (10.0, 7.0), (-3.0, 2.5)]).unwrap();
        let mut scene = Scene::from_point_set(&ps);
        scene.edges.push((0, 1));
        scene.disks.push((Point::new(5.0, 3.5), 6.25));
        scene.blockers.push(Point::new(1.0, 1.0));
        let a = render_svg(&scene);
        let b = render_svg(&scene);
        assert_eq!(a, b);
    }

    #[test]
    fn empty_scene_is_still_valid() {
        let svg = render_svg(&Scene::default());
        assert!(svg.contains("</svg>"));
    }
}
