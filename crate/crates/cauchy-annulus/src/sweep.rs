//! Parameter sweeps over the inner radius and their serialization as CSV
//! and standalone SVG line plots.
//!
//! The two stock figures are the sharp Cauchy-transform norm `2/kappa_1(r)`
//! and the Dirichlet-Cauchy norm `2/k_1(r)` for `R = 1`, both monotone
//! decreasing from the disk value at `r -> 0`. Output is bit-deterministic:
//! identical tables produce identical bytes.

use crate::spectral::{
    self, AnnulusGeometry, SolveOptions, SpectralError,
};
use std::fmt::Write as _;
use std::io::Write;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid sweep spec: {0}")]
    InvalidSpec(String),
    #[error("sweep failed at r = {r}: {source}")]
    PointFailed {
        r: f64,
        #[source]
        source: SpectralError,
    },
    #[error("need at least 2 rows to draw a line plot, got {rows}")]
    DegeneratePlot { rows: usize },
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
}

/// What to sweep. Norm quantities satisfy `value * root = 2` row-wise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// Sharp Cauchy-transform norm `2 / kappa_1`.
    CauchyNorm,
    /// Sharp Dirichlet-Cauchy norm `2 / k_1`.
    DirichletCauchyNorm,
    /// The mixed-problem root `kappa_1` itself.
    Kappa,
    /// The Dirichlet root `k_1` itself.
    K1,
    /// Per-mode norm `2 / kappa_{m,1}` for a fixed angular mode.
    ModeNorm(i32),
}

impl Quantity {
    pub fn label(&self) -> String {
        match self {
            Quantity::CauchyNorm => "cauchy_norm".into(),
            Quantity::DirichletCauchyNorm => "dirichlet_cauchy_norm".into(),
            Quantity::Kappa => "kappa".into(),
            Quantity::K1 => "k1".into(),
            Quantity::ModeNorm(m) => format!("mode_norm(m={m})"),
        }
    }

    pub fn is_norm(&self) -> bool {
        matches!(
            self,
            Quantity::CauchyNorm | Quantity::DirichletCauchyNorm | Quantity::ModeNorm(_)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    /// Outer radius (the abscissa is the inner radius).
    pub outer: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub steps: usize,
    pub quantity: Quantity,
}

impl SweepSpec {
    /// 200 points on `[0.01 R, 0.99 R]`, matching the stock figures.
    pub fn figure_default(quantity: Quantity) -> Self {
        Self {
            outer: 1.0,
            r_min: 0.01,
            r_max: 0.99,
            steps: 200,
            quantity,
        }
    }

    fn validate(&self) -> Result<(), SweepError> {
        if !(self.outer.is_finite() && self.outer > 0.0) {
            return Err(SweepError::InvalidSpec(format!(
                "outer radius must be positive, got {}",
                self.outer
            )));
        }
        if !(self.r_min >= 0.0 && self.r_min < self.r_max && self.r_max < self.outer) {
            return Err(SweepError::InvalidSpec(format!(
                "need 0 <= r_min < r_max < R, got r_min = {}, r_max = {}, R = {}",
                self.r_min, self.r_max, self.outer
            )));
        }
        if self.steps < 2 {
            return Err(SweepError::InvalidSpec(format!(
                "need at least 2 steps, got {}",
                self.steps
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub r: f64,
    pub value: f64,
    pub root: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
}

/// Evaluate the quantity on a uniform grid of inner radii. Rows come back
/// sorted by `r`; grid points are independent, so evaluation order is
/// irrelevant to the result. An `r = 0` endpoint takes the exact disk path.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable, SweepError> {
    run_sweep_with(spec, &SolveOptions::default())
}

pub fn run_sweep_with(spec: &SweepSpec, opts: &SolveOptions) -> Result<SweepTable, SweepError> {
    spec.validate()?;
    let n = spec.steps;
    let dr = (spec.r_max - spec.r_min) / (n - 1) as f64;
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let r = if i + 1 == n {
            spec.r_max
        } else {
            spec.r_min + i as f64 * dr
        };
        let point = |e: SpectralError| SweepError::PointFailed { r, source: e };
        let geom = AnnulusGeometry::new(r, spec.outer).map_err(point)?;
        let (value, root) = match spec.quantity {
            Quantity::CauchyNorm => {
                let s = spectral::cauchy_norm_with(&geom, opts).map_err(point)?;
                (s.norm, s.kappa)
            }
            Quantity::Kappa => {
                let s = spectral::cauchy_norm_with(&geom, opts).map_err(point)?;
                (s.kappa, s.kappa)
            }
            Quantity::DirichletCauchyNorm => {
                let d = spectral::dirichlet_k1_with(&geom, opts).map_err(point)?;
                (d.norm, d.k1)
            }
            Quantity::K1 => {
                let d = spectral::dirichlet_k1_with(&geom, opts).map_err(point)?;
                (d.k1, d.k1)
            }
            Quantity::ModeNorm(m) => {
                let s = spectral::mode_norm_with(m, &geom, opts).map_err(point)?;
                (s.norm, s.kappa)
            }
        };
        rows.push(SweepRow { r, value, root });
    }
    Ok(SweepTable { spec: *spec, rows })
}

/// Twelve significant digits, locale-independent.
fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

/// CSV with header `r,value,root`, one row per line, line-feed terminated.
pub fn emit_csv<W: Write>(table: &SweepTable, mut out: W) -> Result<(), SweepError> {
    let mut buf = String::with_capacity(64 * (table.rows.len() + 1));
    buf.push_str("r,value,root\n");
    for row in &table.rows {
        let _ = writeln!(
            buf,
            "{},{},{}",
            fmt12(row.r),
            fmt12(row.value),
            fmt12(row.root)
        );
    }
    out.write_all(buf.as_bytes())?;
    Ok(())
}

const SVG_WIDTH: f64 = 640.0;
const SVG_HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 44.0;
const MARGIN_BOTTOM: f64 = 56.0;

/// Standalone SVG 1.1 line plot: one polyline, linear axes whose bounds are
/// the data extremes, tick labels at decile positions, title from the spec.
pub fn emit_svg<W: Write>(table: &SweepTable, mut out: W) -> Result<(), SweepError> {
    if table.rows.len() < 2 {
        return Err(SweepError::DegeneratePlot {
            rows: table.rows.len(),
        });
    }
    let xs: Vec<f64> = table.rows.iter().map(|r| r.r).collect();
    let ys: Vec<f64> = table.rows.iter().map(|r| r.value).collect();
    let (x_min, x_max) = bounds(&xs);
    let (y_min, y_max) = bounds(&ys);
    let x_span = if x_max > x_min { x_max - x_min } else { 1.0 };
    let y_span = if y_max > y_min { y_max - y_min } else { 1.0 };

    let plot_w = SVG_WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = SVG_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let to_px = |x: f64, y: f64| {
        (
            MARGIN_LEFT + (x - x_min) / x_span * plot_w,
            MARGIN_TOP + (y_max - y) / y_span * plot_h,
        )
    };

    let mut svg = String::with_capacity(4096 + 24 * table.rows.len());
    let _ = writeln!(
        svg,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" viewBox=\"0 0 {SVG_WIDTH} {SVG_HEIGHT}\">"
    );
    let _ = writeln!(
        svg,
        "  <rect x=\"0\" y=\"0\" width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" fill=\"white\"/>"
    );
    let title = format!(
        "{} for R = {}, r in [{}, {}]",
        table.spec.quantity.label(),
        table.spec.outer,
        table.spec.r_min,
        table.spec.r_max
    );
    let _ = writeln!(
        svg,
        "  <text x=\"{:.2}\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">{}</text>",
        SVG_WIDTH / 2.0,
        xml_escape(&title)
    );

    // axes
    let (ox, oy) = to_px(x_min, y_min);
    let (cx, _) = to_px(x_max, y_min);
    let (_, cy) = to_px(x_min, y_max);
    let _ = writeln!(
        svg,
        "  <line x1=\"{ox:.2}\" y1=\"{oy:.2}\" x2=\"{cx:.2}\" y2=\"{oy:.2}\" stroke=\"black\" stroke-width=\"1\"/>"
    );
    let _ = writeln!(
        svg,
        "  <line x1=\"{ox:.2}\" y1=\"{oy:.2}\" x2=\"{ox:.2}\" y2=\"{cy:.2}\" stroke=\"black\" stroke-width=\"1\"/>"
    );

    // decile ticks on both axes
    for k in 0..=10 {
        let f = k as f64 / 10.0;
        let xv = x_min + f * x_span;
        let (px, _) = to_px(xv, y_min);
        let _ = writeln!(
            svg,
            "  <line x1=\"{px:.2}\" y1=\"{oy:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1\"/>",
            oy + 5.0
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{px:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{:.4}</text>",
            oy + 18.0,
            xv
        );
        let yv = y_min + f * y_span;
        let (_, py) = to_px(x_min, yv);
        let _ = writeln!(
            svg,
            "  <line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{ox:.2}\" y2=\"{py:.2}\" stroke=\"black\" stroke-width=\"1\"/>",
            ox - 5.0
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{:.4}</text>",
            ox - 8.0,
            py + 4.0,
            yv
        );
    }

    let mut points = String::with_capacity(16 * table.rows.len());
    for row in &table.rows {
        let (px, py) = to_px(row.r, row.value);
        let _ = write!(points, "{px:.3},{py:.3} ");
    }
    let _ = writeln!(
        svg,
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>",
        points.trim_end()
    );
    let _ = writeln!(svg, "</svg>");
    out.write_all(svg.as_bytes())?;
    Ok(())
}

fn bounds(v: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &x in v {
        lo = lo.min(x);
        hi = hi.max(x);
    }
    (lo, hi)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn parse_csv(bytes: &[u8]) -> Vec<SweepRow> {
        let text = std::str::from_utf8(bytes).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "r,value,root");
        lines
            .map(|l| {
                let mut it = l.split(',');
                SweepRow {
                    r: it.next().unwrap().parse().unwrap(),
                    value: it.next().unwrap().parse().unwrap(),
                    root: it.next().unwrap().parse().unwrap(),
                }
            })
            .collect()
    }

    fn small_sweep(quantity: Quantity) -> SweepTable {
        run_sweep(&SweepSpec {
            outer: 1.0,
            r_min: 0.1,
            r_max: 0.8,
            steps: 8,
            quantity,
        })
        .unwrap()
    }

    #[test]
    fn disk_endpoint_value() {
        let t = run_sweep(&SweepSpec {
            outer: 1.0,
            r_min: 1e-6,
            r_max: 0.5,
            steps: 4,
            quantity: Quantity::CauchyNorm,
        })
        .unwrap();
        assert_abs_diff_eq!(t.rows[0].value, 0.8319, epsilon = 1e-3);
    }

    #[test]
    fn zero_endpoint_takes_disk_path() {
        let t = run_sweep(&SweepSpec {
            outer: 1.0,
            r_min: 0.0,
            r_max: 0.5,
            steps: 3,
            quantity: Quantity::CauchyNorm,
        })
        .unwrap();
        assert_eq!(t.rows[0].root, crate::bessel::j01());
    }

    #[test]
    fn cauchy_norm_strictly_decreasing() {
        let t = small_sweep(Quantity::CauchyNorm);
        for w in t.rows.windows(2) {
            assert!(w[1].value < w[0].value);
        }
    }

    #[test]
    fn kappa_sweep_scaling_rowwise() {
        let at_two = run_sweep(&SweepSpec {
            outer: 2.0,
            r_min: 0.2,
            r_max: 1.6,
            steps: 6,
            quantity: Quantity::Kappa,
        })
        .unwrap();
        let at_one = run_sweep(&SweepSpec {
            outer: 1.0,
            r_min: 0.1,
            r_max: 0.8,
            steps: 6,
            quantity: Quantity::Kappa,
        })
        .unwrap();
        for (a, b) in at_two.rows.iter().zip(at_one.rows.iter()) {
            assert_relative_eq!(a.value, b.value / 2.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn norm_root_duality() {
        for q in [Quantity::CauchyNorm, Quantity::DirichletCauchyNorm, Quantity::ModeNorm(3)] {
            assert!(q.is_norm());
            for row in &small_sweep(q).rows {
                assert_relative_eq!(row.value * row.root, 2.0, max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn csv_line_count_and_round_trip() {
        let t = small_sweep(Quantity::CauchyNorm);
        let two = SweepTable {
            spec: t.spec,
            rows: t.rows[..2].to_vec(),
        };
        let mut buf = Vec::new();
        emit_csv(&two, &mut buf).unwrap();
        assert_eq!(buf.iter().filter(|&&b| b == b'\n').count(), 3);
        assert_eq!(std::str::from_utf8(&buf).unwrap().lines().count(), 3);

        // 12 significant digits quantize at 5e-12 relative, which is the
        // fidelity the format can promise
        let parsed = parse_csv(&buf);
        for (a, b) in parsed.iter().zip(two.rows.iter()) {
            assert_relative_eq!(a.r, b.r, max_relative = 1e-11);
            assert_relative_eq!(a.value, b.value, max_relative = 1e-11);
            assert_relative_eq!(a.root, b.root, max_relative = 1e-11);
        }
    }

    #[test]
    fn csv_empty_rows_header_only() {
        let t = small_sweep(Quantity::CauchyNorm);
        let empty = SweepTable {
            spec: t.spec,
            rows: Vec::new(),
        };
        let mut buf = Vec::new();
        emit_csv(&empty, &mut buf).unwrap();
        assert_eq!(buf, b"r,value,root\n");
    }

    #[test]
    fn svg_deterministic_and_well_formed() {
        let t = small_sweep(Quantity::CauchyNorm);
        let mut a = Vec::new();
        let mut b = Vec::new();
        emit_svg(&t, &mut a).unwrap();
        emit_svg(&t, &mut b).unwrap();
        assert_eq!(a, b);
        let text = std::str::from_utf8(&a).unwrap();
        assert!(text.starts_with("<?xml"));
        assert_eq!(text.matches("<polyline").count(), 1);
        assert!(text.contains("cauchy_norm"));
    }

    #[test]
    fn svg_axis_bounds_contain_data() {
        let t = small_sweep(Quantity::CauchyNorm);
        let mut buf = Vec::new();
        emit_svg(&t, &mut buf).unwrap();
        let text = std::str::from_utf8(&buf).unwrap();
        // every plotted x coordinate stays inside the plot rectangle
        let poly = text
            .split("points=\"")
            .nth(1)
            .unwrap()
            .split('"')
            .next()
            .unwrap();
        for pair in poly.split_whitespace() {
            let mut it = pair.split(',');
            let px: f64 = it.next().unwrap().parse().unwrap();
            let py: f64 = it.next().unwrap().parse().unwrap();
            assert!((MARGIN_LEFT - 1e-9..=SVG_WIDTH - MARGIN_RIGHT + 1e-9).contains(&px));
            assert!((MARGIN_TOP - 1e-9..=SVG_HEIGHT - MARGIN_BOTTOM + 1e-9).contains(&py));
        }
    }

    #[test]
    fn svg_rejects_degenerate_tables() {
        let t = small_sweep(Quantity::CauchyNorm);
        let one = SweepTable {
            spec: t.spec,
            rows: t.rows[..1].to_vec(),
        };
        assert!(matches!(
            emit_svg(&one, &mut Vec::new()),
            Err(SweepError::DegeneratePlot { rows: 1 })
        ));
    }

    #[test]
    fn spec_validation() {
        let bad = SweepSpec {
            outer: 1.0,
            r_min: 0.5,
            r_max: 0.4,
            steps: 10,
            quantity: Quantity::Kappa,
        };
        assert!(matches!(run_sweep(&bad), Err(SweepError::InvalidSpec(_))));
        let bad_steps = SweepSpec {
            steps: 1,
            ..SweepSpec::figure_default(Quantity::Kappa)
        };
        assert!(run_sweep(&bad_steps).is_err());
    }
}
