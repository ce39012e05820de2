//! Bar-chart SVG for ranked word counts.

use std::fmt::Write;

use crate::annotator::WordCount;

const BAR_WIDTH: f64 = 48.0;
const GAP: f64 = 16.0;
const PLOT_HEIGHT: f64 = 240.0;
const MARGIN_LEFT: f64 = 56.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 96.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// One bar per entry of `bars`, left to right in the given order.
pub fn render_histogram(title: &str, bars: &[WordCount]) -> String {
    let max = bars.iter().map(|b| b.count).max().unwrap_or(0).max(1) as f64;
    let width = MARGIN_LEFT + GAP + bars.len() as f64 * (BAR_WIDTH + GAP) + GAP;
    let height = MARGIN_TOP + PLOT_HEIGHT + MARGIN_BOTTOM;
    let base = MARGIN_TOP + PLOT_HEIGHT;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif">"#
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(s, r#"<text x="{}" y="24" font-size="16" text-anchor="middle">{}</text>"#, width / 2.0, escape(title));
    let _ = writeln!(s, r##"<line x1="{MARGIN_LEFT}" y1="{base}" x2="{}" y2="{base}" stroke="#333"/>"##, width - GAP);
    let _ = writeln!(s, r##"<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" y2="{base}" stroke="#333"/>"##);
    for tick in 0..=4 {
        let v = max * tick as f64 / 4.0;
        let y = base - PLOT_HEIGHT * tick as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="11" text-anchor="end">{}</text>"#,
            MARGIN_LEFT - 6.0,
            y + 4.0,
            v.round()
        );
    }
    for (i, bar) in bars.iter().enumerate() {
        let x = MARGIN_LEFT + GAP + i as f64 * (BAR_WIDTH + GAP);
        let h = PLOT_HEIGHT * bar.count as f64 / max;
        let word = escape(&bar.word);
        let _ = writeln!(
            s,
            r##"<rect class="bar" data-word="{word}" data-count="{}" x="{x}" y="{}" width="{BAR_WIDTH}" height="{h}" fill="#b0483a"/>"##,
            bar.count,
            base - h
        );
        let cx = x + BAR_WIDTH / 2.0;
        let _ = writeln!(s, r#"<text x="{cx}" y="{}" font-size="11" text-anchor="middle">{}</text>"#, base - h - 4.0, bar.count);
        let _ = writeln!(
            s,
            r#"<text x="{cx}" y="{}" font-size="12" text-anchor="end" transform="rotate(-45 {cx} {})">{word}</text>"#,
            base + 14.0,
            base + 14.0
        );
    }
    s.push_str("</svg>\n");
    s
}
