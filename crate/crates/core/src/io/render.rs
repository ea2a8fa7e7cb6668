use std::fmt::Write;

use crate::error::{FriezeError, Result};
use crate::frieze::{cross_section, fundamental_domain_graph, CrossSection, FriezePattern};
use crate::rat::{format_rat, Rat};
use crate::subset::{wrap, Subset};

/// Odd, so that a cell plus its separating space spans an even number of
/// columns and rows can be shifted by exactly half a cell.
fn cell_width<'a>(values: impl Iterator<Item = &'a Rat>) -> usize {
    let widest = values.map(|v| format_rat(v).len()).max().unwrap_or(1);
    widest | 1
}

fn staggered(rows: &[Vec<Rat>], width: usize) -> String {
    let half = width.div_ceil(2);
    let mut out = String::new();
    for (r, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>width$}", format_rat(v))).collect();
        let line = format!("{}{}", " ".repeat(r * half), cells.join(" "));
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn triangle(s: &CrossSection, width: usize) -> String {
    let mut rows = s.rows();
    rows.reverse();
    // apex first: indent shrinks towards the base
    let half = width.div_ceil(2);
    let depth = rows.len();
    let mut out = String::new();
    for (r, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>width$}", format_rat(v))).collect();
        out.push_str(&" ".repeat((depth - 1 - r) * half));
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// One triangle, apex first, headed by `x = ..`.
pub fn render_cross_section(s: &CrossSection) -> String {
    let width = cell_width(s.entries().map(|(_, v)| v));
    format!("x = {}\n{}", s.x(), triangle(s, width))
}

/// k = 2: rows `r = 0..=n-2` with entry `i` equal to `p_{i+1, i+r+2}`, each
/// row shifted half a cell further right. k = 3: one triangle per
/// cross-section (or only the one at `section`), apex first.
pub fn render_text(p: &FriezePattern, section: Option<usize>) -> Result<String> {
    let width = cell_width(p.values().values());
    match p.k() {
        2 => {
            if section.is_some() {
                return Err(FriezeError::Unsupported("cross-sections need k = 3".into()));
            }
            let n = p.n();
            let rows: Vec<Vec<Rat>> = (0..n - 1)
                .map(|r| {
                    (0..n)
                        .map(|i| {
                            let s = Subset::EMPTY.with(wrap(i as i64 + 1, n)).with(wrap((i + r + 2) as i64, n));
                            p.get(s).clone()
                        })
                        .collect()
                })
                .collect();
            Ok(staggered(&rows, width))
        }
        3 => {
            let xs: Vec<usize> = match section {
                Some(x) => vec![x],
                None => (1..=p.n()).collect(),
            };
            let mut out = String::new();
            for (idx, x) in xs.into_iter().enumerate() {
                let s = cross_section(p, x)?;
                if idx > 0 {
                    out.push('\n');
                }
                writeln!(out, "x = {x}").unwrap();
                out.push_str(&triangle(&s, width));
            }
            Ok(out)
        }
        k => Err(FriezeError::Unsupported(format!("text rendering for k = {k}"))),
    }
}

fn node_name(s: Subset) -> String {
    let parts: Vec<String> = s.elements().map(|e| e.to_string()).collect();
    format!("p{}", parts.join("-"))
}

/// One node per subset with edges of the fundamental domain.
///
/// For k = 3 a subset `{x < i < j}` sits in the triangle of `x`, at row
/// `j - i - 1` and entry `i - x`; triangles are stacked one unit apart. For
/// k = 2, `{i < j}` sits at row `j - i - 1`, entry `i`.
pub fn render_tikz(p: &FriezePattern) -> Result<String> {
    let place = |s: Subset| -> (f64, f64) {
        let e = s.to_vec();
        match e.len() {
            2 => {
                let r = (e[1] - e[0] - 1) as f64;
                (0.4 * (e[0] - 1) as f64 + 0.2 * r, 0.4 * r)
            }
            _ => {
                let (x, i, j) = (e[0], e[1], e[2]);
                let r = (j - i - 1) as f64;
                let t = (i - x - 1) as f64;
                (-2.0 + 0.2 * r + 0.4 * t, (x - 1) as f64 + 0.2 * r)
            }
        }
    };
    let scale = match p.k() {
        2 => "[xscale=2,yscale=2]",
        3 => "[xscale=5,yscale=2]",
        k => return Err(FriezeError::Unsupported(format!("TikZ rendering for k = {k}"))),
    };
    let mut out = format!("\\begin{{tikzpicture}}{scale}\n");
    for (s, v) in p.iter() {
        let (x, y) = place(s);
        let x = (x * 100.0).round() / 100.0;
        let y = (y * 100.0).round() / 100.0;
        writeln!(out, "\\node({}) at ({x},{y}){{{}}};", node_name(s), format_rat(v)).unwrap();
    }
    out.push('\n');
    for e in fundamental_domain_graph(p.shape()) {
        writeln!(out, "\\draw[-]({}) edge ({});", node_name(e.lower), node_name(e.upper)).unwrap();
    }
    out.push_str("\\end{tikzpicture}\n");
    Ok(out)
}
