//! SVG 1.1 plots.
//!
//! The unit square is drawn `scale` pixels wide with a fixed 20 pixel margin,
//! y pointing up. A point `(x, y)` of the square lands at pixel
//! `(20 + scale·x, 20 + scale·(1 − y))`, computed exactly and rounded half up
//! to three decimals, so identical inputs give byte-identical documents.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use invlim_core::{fixed_points, ratio, PlMap, Rational, Thread, UnitRational};

pub const MARGIN: u32 = 20;

#[derive(Clone, Copy, Debug)]
pub enum PlotSubject<'a> {
    Map(&'a PlMap),
    /// Scatter of the `(x1, x2)` projections; threads must have depth >= 2.
    Threads(&'a [Thread]),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlotOptions {
    /// Pixels per unit length.
    pub scale: u32,
}

impl Default for PlotOptions {
    fn default() -> Self {
        PlotOptions { scale: 400 }
    }
}

/// `v` to three decimals, rounding half up. `v` must be nonnegative.
fn decimal(v: &Rational) -> String {
    let thousandths = (v.numer() * 2000u32 + v.denom()) / (v.denom() * 2u32);
    let whole = &thousandths / 1000u32;
    let frac = u32::try_from(&(&thousandths % 1000u32)).expect("remainder below 1000");
    format!("{whole}.{frac:03}")
}

struct Canvas {
    scale: Rational,
    margin: Rational,
    out: String,
}

impl Canvas {
    fn new(opts: &PlotOptions, title: &str) -> Self {
        let side = opts.scale + 2 * MARGIN;
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{side}\" height=\"{side}\" viewBox=\"0 0 {side} {side}\">"
        );
        let _ = writeln!(out, "<title>{title}</title>");
        let mut canvas = Canvas {
            scale: ratio(opts.scale.into(), 1),
            margin: ratio(MARGIN.into(), 1),
            out,
        };
        let (x0, y0) = canvas.pixel(&UnitRational::zero(), &UnitRational::one());
        let width = decimal(&canvas.scale);
        let _ = writeln!(
            canvas.out,
            "<rect class=\"frame\" x=\"{x0}\" y=\"{y0}\" width=\"{width}\" height=\"{width}\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>"
        );
        canvas.segment(
            "diagonal",
            &UnitRational::zero(),
            &UnitRational::one(),
            "stroke=\"#bbbbbb\" stroke-width=\"1\" stroke-dasharray=\"4 4\"",
        );
        canvas
    }

    fn pixel(&self, x: &UnitRational, y: &UnitRational) -> (String, String) {
        let px = &self.margin + &self.scale * x.as_rational();
        let py = &self.margin + &self.scale * (ratio(1, 1) - y.as_rational());
        (decimal(&px), decimal(&py))
    }

    /// Segment of the diagonal from `(a, a)` to `(b, b)`.
    fn segment(&mut self, class: &str, a: &UnitRational, b: &UnitRational, style: &str) {
        let (x1, y1) = self.pixel(a, a);
        let (x2, y2) = self.pixel(b, b);
        let _ = writeln!(
            self.out,
            "<line class=\"{class}\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" {style}/>"
        );
    }

    fn dot(&mut self, class: &str, x: &UnitRational, y: &UnitRational, fill: &str) {
        let (cx, cy) = self.pixel(x, y);
        let _ = writeln!(
            self.out,
            "<circle class=\"{class}\" cx=\"{cx}\" cy=\"{cy}\" r=\"4\" fill=\"{fill}\"/>"
        );
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

pub fn emit_svg_plot(subject: PlotSubject<'_>, opts: &PlotOptions) -> String {
    match subject {
        PlotSubject::Map(m) => map_plot(m, opts),
        PlotSubject::Threads(threads) => thread_plot(threads, opts),
    }
}

fn map_plot(m: &PlMap, opts: &PlotOptions) -> String {
    let mut canvas = Canvas::new(opts, &format!("graph, {} breakpoints", m.len()));
    let points: Vec<String> = m
        .breakpoints()
        .iter()
        .map(|(x, y)| {
            let (px, py) = canvas.pixel(x, y);
            format!("{px},{py}")
        })
        .collect();
    let _ = writeln!(
        canvas.out,
        "<polyline class=\"graph\" points=\"{}\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\"/>",
        points.join(" ")
    );
    for iv in &fixed_points(m) {
        if iv.is_point() {
            canvas.dot("fixed", &iv.lo, &iv.lo, "#c0392b");
        } else {
            canvas.segment(
                "fixed",
                &iv.lo,
                &iv.hi,
                "stroke=\"#c0392b\" stroke-width=\"4\"",
            );
        }
    }
    canvas.finish()
}

fn thread_plot(threads: &[Thread], opts: &PlotOptions) -> String {
    let projections: BTreeSet<(&UnitRational, &UnitRational)> = threads
        .iter()
        .filter(|t| t.depth() >= 2)
        .map(|t| (&t.coords()[0], &t.coords()[1]))
        .collect();
    let mut canvas = Canvas::new(
        opts,
        &format!("threads, {} projections (x1, x2)", projections.len()),
    );
    for (x1, x2) in projections {
        canvas.dot("thread", x1, x2, "#1f4e9c");
    }
    canvas.finish()
}
