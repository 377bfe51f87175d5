use std::fmt::Write;

use super::{BlackAction, Chart, ChartEvent};
use crate::error::Result;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

fn color(label: usize) -> &'static str {
    PALETTE[(label - 1) % PALETTE.len()]
}

fn sign_suffix(c: &Chart, s: i8) -> &'static str {
    match (c.oriented(), s) {
        (false, _) => "",
        (true, 1) => "+",
        (true, _) => "-",
    }
}

/// Graphviz rendering: one node per event, one edge per arc segment between
/// consecutive events.
pub fn render_dot(c: &Chart) -> Result<String> {
    let words = c.words()?;
    let mut out = String::from("digraph chart {\n  rankdir=TB;\n");
    for (k, e) in c.events().iter().enumerate() {
        let (shape, style) = match e {
            ChartEvent::Black { .. } => ("circle", "filled,fillcolor=black,width=0.15,label=\"\""),
            ChartEvent::White { .. } => ("circle", "filled,fillcolor=white,width=0.25,label=\"\""),
            ChartEvent::Crossing { .. } => ("point", "width=0.05"),
            ChartEvent::Cup { .. } | ChartEvent::Cap { .. } => ("point", "width=0.02"),
        };
        writeln!(out, "  e{k} [shape={shape},style={style},tooltip=\"{e}\"];").unwrap();
    }
    // origin event of each letter in the running word
    let mut origin: Vec<usize> = Vec::new();
    for (k, e) in c.events().iter().enumerate() {
        let before = &words[k];
        let p = e.position();
        let (a, b) = e.arity();
        for (off, &(label, s)) in before[p..p + a].iter().enumerate() {
            writeln!(
                out,
                "  e{} -> e{k} [label=\"{label}{}\",color=\"{}\"];",
                origin[p + off],
                sign_suffix(c, s),
                color(label)
            )
            .unwrap();
        }
        origin.splice(p..p + a, std::iter::repeat_n(k, b));
    }
    out.push_str("}\n");
    Ok(out)
}

/// SVG drawing of the sweep: time runs downwards, word positions left to
/// right.
pub fn render_svg(c: &Chart) -> Result<String> {
    let words = c.words()?;
    let step = 36.0;
    let margin = 30.0;
    let width_letters = words.iter().map(Vec::len).max().unwrap_or(0).max(1);
    let w = 2.0 * margin + step * width_letters as f64;
    let h = 2.0 * margin + step * (c.events().len() as f64 + 1.0);
    let xl = |p: f64| margin + step * (p + 0.5);
    let yl = |k: usize| margin + step * k as f64 + step / 2.0;
    let mut body = String::new();
    let mut nodes = String::new();
    for (k, e) in c.events().iter().enumerate() {
        let before = &words[k];
        let after = &words[k + 1];
        let p = e.position();
        let (a, b) = e.arity();
        let (y0, y1) = (yl(k), yl(k + 1));
        let ym = (y0 + y1) / 2.0;
        let xm = xl(p as f64 + (a.max(b) as f64 - 1.0) / 2.0);
        for (i, &(label, _)) in before.iter().enumerate() {
            let col = color(label);
            if i < p || i >= p + a {
                let j = if i < p { i } else { i - a + b };
                writeln!(
                    body,
                    r#"<line x1="{:.1}" y1="{y0:.1}" x2="{:.1}" y2="{y1:.1}" stroke="{col}" stroke-width="2"/>"#,
                    xl(i as f64),
                    xl(j as f64)
                )
                .unwrap();
            } else {
                writeln!(
                    body,
                    r#"<line x1="{:.1}" y1="{y0:.1}" x2="{xm:.1}" y2="{ym:.1}" stroke="{col}" stroke-width="2"/>"#,
                    xl(i as f64)
                )
                .unwrap();
            }
        }
        for (j, &(label, _)) in after.iter().enumerate().skip(p).take(b) {
            writeln!(
                body,
                r#"<line x1="{xm:.1}" y1="{ym:.1}" x2="{:.1}" y2="{y1:.1}" stroke="{}" stroke-width="2"/>"#,
                xl(j as f64),
                color(label)
            )
            .unwrap();
        }
        match e {
            ChartEvent::Black { action, label, .. } => {
                let tag = match action {
                    BlackAction::Insert => "insert",
                    BlackAction::Delete => "delete",
                };
                writeln!(
                    nodes,
                    r#"<circle cx="{xm:.1}" cy="{ym:.1}" r="5" fill="black"><title>black {tag} {label}</title></circle>"#
                )
                .unwrap();
            }
            ChartEvent::White { labels, .. } => {
                writeln!(
                    nodes,
                    r#"<circle cx="{xm:.1}" cy="{ym:.1}" r="6" fill="white" stroke="black" stroke-width="1.5"><title>white {} {}</title></circle>"#,
                    labels.0, labels.1
                )
                .unwrap();
            }
            _ => {}
        }
    }
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
    )
    .unwrap();
    out.push_str(&body);
    out.push_str(&nodes);
    out.push_str("</svg>\n");
    Ok(out)
}
