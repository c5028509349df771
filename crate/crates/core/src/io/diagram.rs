//! Column-stacking diagrams: each column is one diagonal position, each box
//! one irreducible factor whose height is its degree, and an optional dashed
//! line marks the target degree.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::algebra::Poly;
use crate::combinat::StackingLayout;

/// Distinct factors labelled `A`, `B`, … in ascending order.
fn legend(layout: &StackingLayout) -> BTreeMap<Poly, char> {
    let mut distinct: Vec<&Poly> = layout.columns.iter().flatten().collect();
    distinct.sort();
    distinct.dedup();
    distinct
        .into_iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), char::from_u32('A' as u32 + (i % 26) as u32).unwrap()))
        .collect()
}

/// Plain-text rendering, top row first.
pub fn render_ascii(layout: &StackingLayout, target: Option<usize>) -> String {
    let labels = legend(layout);
    let height = layout
        .degrees
        .iter()
        .copied()
        .max()
        .unwrap_or(0)
        .max(target.unwrap_or(0));
    // cells[col][level] = label of the factor occupying that unit of height
    let cells: Vec<Vec<char>> = layout
        .columns
        .iter()
        .map(|col| {
            col.iter()
                .flat_map(|p| std::iter::repeat_n(labels[p], p.degree_or_zero()))
                .collect()
        })
        .collect();
    let width = height.to_string().len();
    let mut out = String::new();
    for level in (0..height).rev() {
        let _ = write!(out, "{:>width$} |", level + 1);
        for col in &cells {
            let c = match col.get(level) {
                Some(&ch) => format!("[{ch}]"),
                None if target == Some(level + 1) => "---".to_string(),
                None => "   ".to_string(),
            };
            let _ = write!(out, " {c}");
        }
        out.push('\n');
    }
    let _ = write!(out, "{:>width$} +", 0);
    out.push_str(&"----".repeat(cells.len()));
    out.push('\n');
    let _ = write!(out, "{:>width$}  ", "");
    for d in &layout.degrees {
        let _ = write!(out, " {d:>3}");
    }
    out.push('\n');
    for (p, ch) in &labels {
        let _ = writeln!(out, "{ch} = {} (degree {})", p.to_text(), p.degree_or_zero());
    }
    out
}

/// Static SVG rendering; boxes are coloured by degree.
pub fn render_svg(layout: &StackingLayout, target: Option<usize>) -> String {
    const UNIT: usize = 20;
    const COL: usize = 40;
    const MARGIN: usize = 30;
    let palette = ["#7fc8f8", "#ffb3c1", "#b8e0a0", "#ffd37f", "#c9b6f2", "#9ee6dc"];
    let labels = legend(layout);
    let height = layout
        .degrees
        .iter()
        .copied()
        .max()
        .unwrap_or(0)
        .max(target.unwrap_or(0));
    let w = 2 * MARGIN + COL * layout.n();
    let h = 2 * MARGIN + UNIT * height;
    let base = MARGIN + UNIT * height;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    for (j, col) in layout.columns.iter().enumerate() {
        let x = MARGIN + j * COL + 4;
        let mut level = 0;
        for p in col {
            let dg = p.degree_or_zero();
            if dg == 0 {
                continue;
            }
            let y = base - UNIT * (level + dg);
            let fill = palette[(dg - 1) % palette.len()];
            let _ = writeln!(
                out,
                r#"<rect x="{x}" y="{y}" width="{}" height="{}" fill="{fill}" stroke="black"><title>{}</title></rect>"#,
                COL - 8,
                UNIT * dg,
                p.to_text()
            );
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{}</text>"#,
                x + (COL - 8) / 2,
                y + UNIT * dg / 2 + 4,
                labels[p]
            );
            level += dg;
        }
    }
    let _ = writeln!(
        out,
        r#"<line x1="{MARGIN}" y1="{base}" x2="{}" y2="{base}" stroke="black"/>"#,
        w - MARGIN
    );
    if let Some(d) = target {
        let y = base - UNIT * d;
        let _ = writeln!(
            out,
            r#"<line x1="{MARGIN}" y1="{y}" x2="{}" y2="{y}" stroke="red" stroke-dasharray="6,4"/>"#,
            w - MARGIN
        );
    }
    out.push_str("</svg>\n");
    out
}
