//! Self-contained HTML report: inline styles, inline SVG, no external
//! resources, no scripts. Rendering is a pure function of the JSON bundles
//! so regenerating the report is byte-identical.

use std::fmt::Write;

use crate::analyze::{CommitRecord, EventsBundle, SeriesBundle};
use crate::campaign::CampaignManifest;
use crate::config::AnalysisConfig;
use crate::model::{ChangeEvent, Direction};
use crate::report::plots::{
    distribution_compare_data, evolution_plot_data, ComparePanels, EvolutionPlotData,
};
use crate::report::svg::{escape, Scale, Svg};
use crate::report::SummaryBundle;
use crate::rng::derive_seed;

const COLOR_POINT: &str = "#3366cc";
const COLOR_REGRESSION: &str = "#d64541";
const COLOR_IMPROVEMENT: &str = "#2e8b57";

fn level_color(level: u8) -> &'static str {
    match level {
        2 => "#3366cc",
        3 => "#e67e22",
        4 => "#8e44ad",
        _ => "#c0392b",
    }
}

fn fmt_j(v: f64) -> String {
    format!("{v:.2}")
}

fn fmt_p(p: f64) -> String {
    if p != 0.0 && p < 1e-4 {
        format!("{p:.2e}")
    } else {
        format!("{p:.4}")
    }
}

// ---------------------------------------------------------------------------
// charts
// ---------------------------------------------------------------------------

struct Frame {
    svg: Svg,
    x: Scale,
    y: Scale,
}

/// Axes, gridlines and tick labels shared by the series charts.
fn frame(
    width: f64,
    height: f64,
    x_domain: (f64, f64),
    y_domain: (f64, f64),
    y_label: &str,
) -> Frame {
    let (ml, mr, mt, mb) = (64.0, 16.0, 14.0, 30.0);
    let x = Scale::new(x_domain, (ml, width - mr));
    let y = Scale::new(y_domain, (height - mb, mt));
    let mut svg = Svg::new(width, height);
    for tick in y.ticks(5) {
        let py = y.map(tick);
        svg.line(ml, py, width - mr, py, "#e8e8e8", 1.0);
        svg.text(ml - 6.0, py + 3.0, 10.0, "end", &format!("{tick:.1}"));
    }
    svg.line(ml, y.range.0, width - mr, y.range.0, "#999", 1.0);
    svg.line(ml, y.range.0, ml, y.range.1, "#999", 1.0);
    svg.text(12.0, mt + 4.0, 10.0, "start", y_label);
    Frame { svg, x, y }
}

fn min_max(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if lo > hi {
        (0.0, 1.0)
    } else {
        (lo, hi)
    }
}

/// Evolution chart: commit aggregates with level bars and rings.
pub fn evolution_svg(data: &EvolutionPlotData) -> String {
    let n = data.points.len();
    let y_domain = min_max(data.points.iter().map(|p| p.aggregate));
    let mut f = frame(
        900.0,
        300.0,
        (-0.5, n.saturating_sub(1) as f64 + 0.5),
        y_domain,
        "J",
    );
    for bar in &data.bars {
        let px = f.x.map(bar.index as f64);
        let color = match bar.direction {
            Direction::Improvement => COLOR_IMPROVEMENT,
            _ => COLOR_REGRESSION,
        };
        f.svg.line(px, f.y.range.1, px, f.y.range.0, color, 2.0);
    }
    for ring in &data.rings {
        let point = &data.points[ring.index];
        f.svg.ring(
            f.x.map(ring.index as f64),
            f.y.map(point.aggregate),
            4.0 + 1.5 * f64::from(ring.level),
            level_color(ring.level),
            2.0,
            Some(&format!("{} level {}", point.short_id, ring.level)),
        );
    }
    for point in &data.points {
        f.svg.circle(
            f.x.map(point.index as f64),
            f.y.map(point.aggregate),
            3.0,
            COLOR_POINT,
            Some(&format!(
                "{} {} {} J",
                point.short_id,
                point.date,
                fmt_j(point.aggregate)
            )),
        );
    }
    // date labels, thinned to at most 8
    let step = (n / 8).max(1);
    for point in data.points.iter().step_by(step) {
        f.svg.text(
            f.x.map(point.index as f64),
            294.0,
            9.0,
            "middle",
            &point.date,
        );
    }
    f.svg.finish()
}

/// CUSUM chart with its zero reference line.
pub fn cusum_svg(cusum: &[f64]) -> String {
    let y_domain = min_max(cusum.iter().copied());
    let mut f = frame(
        900.0,
        220.0,
        (0.0, cusum.len().saturating_sub(1) as f64),
        y_domain,
        "cusum J",
    );
    let zero = f.y.map(0.0);
    f.svg
        .line(f.x.range.0, zero, f.x.range.1, zero, "#bbb", 1.0);
    let pts: Vec<(f64, f64)> = cusum
        .iter()
        .enumerate()
        .map(|(i, &v)| (f.x.map(i as f64), f.y.map(v)))
        .collect();
    f.svg.polyline(&pts, COLOR_POINT, 1.5);
    f.svg.finish()
}

/// Change-point chart: the aggregate series with detected boundaries and
/// per-segment mean levels.
pub fn change_point_svg(aggregates: &[f64], change_points: &[usize]) -> String {
    let n = aggregates.len();
    let y_domain = min_max(aggregates.iter().copied());
    let mut f = frame(
        900.0,
        220.0,
        (0.0, n.saturating_sub(1) as f64),
        y_domain,
        "J",
    );
    let pts: Vec<(f64, f64)> = aggregates
        .iter()
        .enumerate()
        .map(|(i, &v)| (f.x.map(i as f64), f.y.map(v)))
        .collect();
    f.svg.polyline(&pts, "#888", 1.0);
    let mut bounds = vec![0usize];
    bounds.extend_from_slice(change_points);
    bounds.push(n);
    for seg in bounds.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        if a >= b {
            continue;
        }
        let mean = aggregates[a..b].iter().sum::<f64>() / (b - a) as f64;
        f.svg.line(
            f.x.map(a as f64),
            f.y.map(mean),
            f.x.map((b - 1) as f64),
            f.y.map(mean),
            COLOR_IMPROVEMENT,
            2.0,
        );
    }
    for &cp in change_points {
        let px = f.x.map(cp as f64);
        f.svg
            .line(px, f.y.range.1, px, f.y.range.0, COLOR_REGRESSION, 1.5);
    }
    f.svg.finish()
}

/// One compare figure: paired box/violin, Q-Q, and bootstrap histogram.
pub fn compare_svg(panels: &ComparePanels) -> String {
    let width = 900.0;
    let height = 240.0;
    let mut svg = Svg::new(width, height);

    // -- box/violin panel (x: 0..300) --
    let all_lo = panels.box_baseline.min.min(panels.box_test.min);
    let all_hi = panels.box_baseline.max.max(panels.box_test.max);
    let y = Scale::new((all_lo, all_hi), (height - 30.0, 20.0));
    for (i, (label, bx, violin)) in [
        ("baseline", &panels.box_baseline, &panels.violin_baseline),
        ("test", &panels.box_test, &panels.violin_test),
    ]
    .iter()
    .enumerate()
    {
        let cx = 80.0 + 120.0 * i as f64;
        if let Some(outline) = violin {
            let dmax = outline.iter().map(|(_, d)| *d).fold(0.0, f64::max);
            if dmax > 0.0 {
                let mut poly: Vec<(f64, f64)> = outline
                    .iter()
                    .map(|(v, d)| (cx - 34.0 * d / dmax, y.map(*v)))
                    .collect();
                poly.extend(
                    outline
                        .iter()
                        .rev()
                        .map(|(v, d)| (cx + 34.0 * d / dmax, y.map(*v))),
                );
                svg.polygon(&poly, "#dbe6f4");
            }
        }
        svg.line(cx, y.map(bx.min), cx, y.map(bx.max), "#666", 1.0);
        svg.rect(
            cx - 9.0,
            y.map(bx.q3),
            18.0,
            (y.map(bx.q1) - y.map(bx.q3)).abs(),
            "#9db8d9",
            Some(&format!(
                "q1 {} median {} q3 {}",
                fmt_j(bx.q1),
                fmt_j(bx.median),
                fmt_j(bx.q3)
            )),
        );
        svg.line(
            cx - 9.0,
            y.map(bx.median),
            cx + 9.0,
            y.map(bx.median),
            "#223",
            2.0,
        );
        svg.text(cx, height - 12.0, 10.0, "middle", label);
    }
    svg.text(150.0, 12.0, 10.0, "middle", "distribution");

    // -- Q-Q panel (x: 320..580) --
    if !panels.qq.is_empty() {
        let (qlo, qhi) = min_max(panels.qq.iter().flat_map(|&(a, b)| [a, b]));
        let qx = Scale::new((qlo, qhi), (340.0, 560.0));
        let qy = Scale::new((qlo, qhi), (height - 30.0, 20.0));
        svg.line(
            qx.map(qlo),
            qy.map(qlo),
            qx.map(qhi),
            qy.map(qhi),
            "#bbb",
            1.0,
        );
        for &(a, b) in &panels.qq {
            svg.circle(qx.map(a), qy.map(b), 2.5, COLOR_POINT, None);
        }
        svg.text(450.0, 12.0, 10.0, "middle", "Q-Q");
        svg.text(450.0, height - 12.0, 10.0, "middle", "baseline quantiles");
    }

    // -- bootstrap panel (x: 600..890) --
    if let Some(boot) = &panels.bootstrap {
        let (blo, bhi) = min_max(boot.bins.iter().flat_map(|&(lo, hi, _)| [lo, hi]));
        let cmax = boot
            .bins
            .iter()
            .map(|&(_, _, c)| c)
            .max()
            .unwrap_or(1)
            .max(1);
        let bx = Scale::new((blo.min(0.0), bhi.max(0.0)), (614.0, 886.0));
        let by = Scale::new((0.0, cmax as f64), (height - 30.0, 20.0));
        for &(lo, hi, count) in &boot.bins {
            let x0 = bx.map(lo);
            let x1 = bx.map(hi);
            svg.rect(
                x0,
                by.map(count as f64),
                (x1 - x0).max(0.5),
                by.map(0.0) - by.map(count as f64),
                "#9db8d9",
                Some(&format!("[{:.2}, {:.2}): {count}", lo, hi)),
            );
        }
        let zero = bx.map(0.0);
        svg.line(zero, by.map(0.0), zero, 20.0, "#555", 1.0);
        for ci in [boot.ci95.0, boot.ci95.1] {
            let px = bx.map(ci);
            svg.line(px, by.map(0.0), px, 20.0, COLOR_REGRESSION, 1.5);
        }
        svg.text(
            750.0,
            12.0,
            10.0,
            "middle",
            &format!(
                "bootstrap delta, 95% [{}, {}] J",
                fmt_j(boot.ci95.0),
                fmt_j(boot.ci95.1)
            ),
        );
    }
    svg.finish()
}

// ---------------------------------------------------------------------------
// page assembly
// ---------------------------------------------------------------------------

const STYLE: &str = "\
body{font-family:Helvetica,Arial,sans-serif;margin:24px;color:#222;background:#fff;max-width:960px}\
h1{font-size:22px;margin:0 0 4px 0}\
h2{font-size:17px;margin:26px 0 8px 0;border-bottom:1px solid #eee;padding-bottom:3px}\
.meta{color:#666;font-size:12px;margin-bottom:14px}\
table{border-collapse:collapse;font-size:12px;width:100%}\
th,td{border:1px solid #ddd;padding:4px 8px;text-align:right}\
th{background:#f5f5f5}\
td:first-child,th:first-child{text-align:left}\
.msg{text-align:left;max-width:320px;overflow:hidden;text-overflow:ellipsis;white-space:nowrap}\
.regression{color:#c0392b;font-weight:bold}\
.improvement{color:#2e8b57;font-weight:bold}\
.excluded{color:#999}\
.l2{color:#3366cc}.l3{color:#e67e22}.l4{color:#8e44ad}.l5{color:#c0392b}\
.cards{display:flex;gap:12px;margin:10px 0}\
.card{border:1px solid #e2e2e2;border-radius:4px;padding:8px 14px;font-size:12px;color:#555}\
.card b{display:block;font-size:18px;color:#222}\
svg{background:#fcfcfc;border:1px solid #eee;margin:4px 0}";

fn direction_cell(d: Direction) -> &'static str {
    match d {
        Direction::Regression => "<span class=\"regression\">regression</span>",
        Direction::Improvement => "<span class=\"improvement\">improvement</span>",
        Direction::None => "&mdash;",
    }
}

fn level_cell(level: u8) -> String {
    if level == 0 {
        "0".to_string()
    } else {
        format!("<span class=\"l{level}\">{level}</span>")
    }
}

fn config_section(out: &mut String, cfg: &AnalysisConfig, manifest: Option<&CampaignManifest>) {
    out.push_str("<h2>Thresholds and configuration</h2>\n<table>\n");
    out.push_str("<tr><th>setting</th><th>value</th></tr>\n");
    let d = &cfg.cohens_d_thresholds;
    let pc = &cfg.percent_change_thresholds;
    let dj = &cfg.practical_thresholds;
    let rows: Vec<(&str, String)> = vec![
        (
            "level 1: significance alpha (Welch)",
            format!("{}", cfg.significance_alpha),
        ),
        (
            "level 2: Cohen's d bands",
            format!(
                "negligible &le; {} &lt; small &le; {} &lt; medium &le; {} &lt; large",
                d[0], d[1], d[2]
            ),
        ),
        (
            "level 3: relative change bands",
            format!(
                "minor &lt; {:.1}% &le; moderate &lt; {:.1}% &le; major",
                pc[0] * 100.0,
                pc[1] * 100.0
            ),
        ),
        (
            "level 4: practical significance bands",
            format!(
                "info &lt; {:.1}% &le; warning &lt; {:.1}% &le; critical (of baseline)",
                dj[0] * 100.0,
                dj[1] * 100.0
            ),
        ),
        ("level 5: context tags", cfg.context_tags.join(", ")),
        (
            "aggregation",
            format!("{:?}", cfg.aggregation).to_lowercase(),
        ),
        ("normality alpha", format!("{}", cfg.normality_alpha)),
        ("exclude non-normal", format!("{}", cfg.exclude_non_normal)),
        (
            "outlier window / Tukey k / max transient run",
            format!(
                "{} / {} / {}",
                cfg.outlier_window, cfg.tukey_multiplier, cfg.max_transient_outliers
            ),
        ),
        (
            "bootstrap resamples",
            format!("{}", cfg.bootstrap_resamples),
        ),
    ];
    for (name, value) in rows {
        let _ = writeln!(out, "<tr><td>{name}</td><td>{value}</td></tr>");
    }
    if let Some(m) = manifest {
        let p = &m.pipeline;
        let _ = writeln!(
            out,
            "<tr><td>repetitions / batch size / seed</td><td>{} / {} / {}</td></tr>",
            p.repetitions, p.batch_size, m.rng_seed
        );
        let _ = writeln!(
            out,
            "<tr><td>backend / thermal limit / rest</td><td>{:?} / {} &deg;C / {} s</td></tr>",
            p.energy_backend, p.thermal_limit_celsius, p.rest_seconds
        );
        let _ = writeln!(
            out,
            "<tr><td>plan hash</td><td>{}</td></tr>",
            &m.plan_sha256[..16.min(m.plan_sha256.len())]
        );
    }
    out.push_str("</table>\n");
}

fn summary_section(out: &mut String, s: &SummaryBundle) {
    out.push_str("<div class=\"cards\">\n");
    let cards = [
        ("commits", s.commits.to_string()),
        (
            "normality pass rate",
            format!("{:.2}%", s.normal_rate * 100.0),
        ),
        ("significant", s.significant.to_string()),
        ("regressions", s.regressions.to_string()),
        ("improvements", s.improvements.to_string()),
        ("transient outliers", s.transient_outliers.to_string()),
    ];
    for (label, value) in cards {
        let _ = writeln!(out, "<div class=\"card\"><b>{value}</b>{label}</div>");
    }
    out.push_str("</div>\n");
}

fn events_table(out: &mut String, events: &[ChangeEvent]) {
    let significant: Vec<&ChangeEvent> = events.iter().filter(|e| e.level >= 1).collect();
    let _ = writeln!(out, "<h2>Significant changes ({})</h2>", significant.len());
    if significant.is_empty() {
        out.push_str("<p class=\"meta\">No significant changes detected.</p>\n");
        return;
    }
    out.push_str("<table>\n<tr><th>test commit</th><th>baseline</th><th>level</th><th>direction</th><th>m_b J</th><th>m_t J</th><th>&Delta;%</th><th>&Delta;J</th><th>p</th><th>d</th><th>tags</th></tr>\n");
    for e in significant {
        let _ = writeln!(
            out,
            "<tr><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{:.2}%</td><td>{}</td><td>{}</td><td>{:.2}</td><td>{}</td></tr>",
            escape(&e.test),
            escape(&e.baseline),
            level_cell(e.level),
            direction_cell(e.direction),
            fmt_j(e.m_b),
            fmt_j(e.m_t),
            e.percent_change * 100.0,
            fmt_j(e.delta_j),
            fmt_p(e.p_value),
            e.cohens_d,
            escape(&e.matched_tags.join(", ")),
        );
    }
    out.push_str("</table>\n");
}

fn commit_table(out: &mut String, records: &[CommitRecord], events: &[ChangeEvent]) {
    let by_test: std::collections::HashMap<&str, &ChangeEvent> =
        events.iter().map(|e| (e.test.as_str(), e)).collect();
    let _ = writeln!(out, "<h2>Commits ({})</h2>", records.len());
    out.push_str("<table>\n<tr><th>commit</th><th>date</th><th class=\"msg\">message</th><th>n</th><th>aggregate J</th><th>normal</th><th>outlier</th><th>level</th><th>direction</th><th>&Delta;%</th><th>&Delta;J</th><th>p</th><th>d</th><th>status</th></tr>\n");
    for r in records {
        let event = by_test.get(r.id.as_str());
        let message: String = r
            .message
            .lines()
            .next()
            .unwrap_or("")
            .chars()
            .take(60)
            .collect();
        let _ = writeln!(
            out,
            "<tr><td>{}</td><td>{}</td><td class=\"msg\">{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td class=\"excluded\">{}</td></tr>",
            escape(&r.short_id),
            r.date.format("%Y-%m-%d"),
            escape(&message),
            r.n_passing,
            r.aggregate.map(fmt_j).unwrap_or_else(|| "&mdash;".into()),
            match r.is_normal {
                Some(true) => "yes",
                Some(false) => "no",
                None => "&mdash;",
            },
            match r.transient_outlier {
                Some(true) => "yes",
                Some(false) => "no",
                None => "&mdash;",
            },
            event.map(|e| level_cell(e.level)).unwrap_or_else(|| "&mdash;".into()),
            event.map(|e| direction_cell(e.direction).to_string()).unwrap_or_else(|| "&mdash;".into()),
            event.map(|e| format!("{:.2}%", e.percent_change * 100.0)).unwrap_or_else(|| "&mdash;".into()),
            event.map(|e| fmt_j(e.delta_j)).unwrap_or_else(|| "&mdash;".into()),
            event.map(|e| fmt_p(e.p_value)).unwrap_or_else(|| "&mdash;".into()),
            event.map(|e| format!("{:.2}", e.cohens_d)).unwrap_or_else(|| "&mdash;".into()),
            escape(r.exclusion_reason.as_deref().unwrap_or("ok")),
        );
    }
    out.push_str("</table>\n");
}

/// Maximum number of distribution-comparison figures in a report.
const MAX_COMPARE_PANELS: usize = 12;

fn compare_sections(out: &mut String, series: &SeriesBundle, events: &EventsBundle) {
    let samples_of: std::collections::HashMap<&str, &Vec<f64>> = series
        .commits
        .iter()
        .map(|r| (r.id.as_str(), &r.samples))
        .collect();
    // Highest level first, then largest absolute delta, then id: a
    // deterministic, relevance-ordered selection.
    let mut selected: Vec<&ChangeEvent> = events.events.iter().filter(|e| e.level >= 2).collect();
    selected.sort_by(|a, b| {
        b.level
            .cmp(&a.level)
            .then(b.delta_j.abs().total_cmp(&a.delta_j.abs()))
            .then(a.test.cmp(&b.test))
    });
    selected.truncate(MAX_COMPARE_PANELS);
    if selected.is_empty() {
        return;
    }
    out.push_str("<h2>Distribution comparisons</h2>\n");
    for event in selected {
        let (Some(a), Some(b)) = (
            samples_of.get(event.baseline.as_str()),
            samples_of.get(event.test.as_str()),
        ) else {
            continue;
        };
        let seed = derive_seed(
            series.rng_seed,
            &[
                b"bootstrap",
                event.baseline.as_bytes(),
                event.test.as_bytes(),
            ],
        );
        let Some(panels) = distribution_compare_data(
            &event.baseline,
            a,
            &event.test,
            b,
            series.analysis_config.bootstrap_resamples as usize,
            series.analysis_config.aggregation,
            seed,
        ) else {
            let _ = writeln!(
                out,
                "<p class=\"meta\">{} vs {}: too few samples for distribution panels.</p>",
                escape(&event.baseline),
                escape(&event.test)
            );
            continue;
        };
        let _ = writeln!(
            out,
            "<h3 style=\"font-size:13px;margin:14px 0 2px 0\">{} vs {} (level {}, {})</h3>",
            escape(&event.baseline),
            escape(&event.test),
            event.level,
            match event.direction {
                Direction::Regression => "regression",
                Direction::Improvement => "improvement",
                Direction::None => "no direction",
            },
        );
        out.push_str(&compare_svg(&panels));
        out.push('\n');
    }
}

/// Assemble the full report page.
pub fn render_page(
    series: &SeriesBundle,
    events: &EventsBundle,
    summary: &SummaryBundle,
    manifest: Option<&CampaignManifest>,
) -> String {
    let mut out = String::with_capacity(256 * 1024);
    out.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\"/>\n");
    out.push_str("<title>Energy regression report</title>\n");
    let _ = writeln!(out, "<style>{STYLE}</style>");
    out.push_str("</head>\n<body>\n");
    out.push_str("<h1>Energy regression report</h1>\n");
    let _ = writeln!(
        out,
        "<p class=\"meta\">{} commits analyzed, seed {}.</p>",
        summary.commits, series.rng_seed
    );
    summary_section(&mut out, summary);
    config_section(&mut out, &series.analysis_config, manifest);

    let evo = evolution_plot_data(&series.commits, &events.events);
    if !evo.points.is_empty() {
        out.push_str("<h2>Energy evolution</h2>\n");
        out.push_str(&evolution_svg(&evo));
        out.push('\n');
        out.push_str("<h2>CUSUM</h2>\n");
        out.push_str(&cusum_svg(&series.cusum));
        out.push('\n');
        out.push_str("<h2>Change points</h2>\n");
        let aggregates: Vec<f64> = series.commits.iter().filter_map(|r| r.aggregate).collect();
        out.push_str(&change_point_svg(&aggregates, &series.change_points));
        out.push('\n');
    }

    events_table(&mut out, &events.events);
    compare_sections(&mut out, series, events);
    commit_table(&mut out, &series.commits, &events.events);
    out.push_str("</body>\n</html>\n");
    out
}
