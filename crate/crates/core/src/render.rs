//! Static drawings of diagrams as SVG or plain text. Output depends only on
//! the input.
//!
//! Diagrams are drawn left to right: one column per op, one row per strand
//! position. In text form a positive crossing is `\` over `/`, a negative
//! one `/` over `\`, cups are `(` and caps `)`.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::diagrams::{AnnularLink, Color, ColoredTangle, Hint, Op, Placement, Sign};
use crate::error::{Error, Result};
use crate::kirby::KirbyDiagram;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Svg,
    Text,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "svg" => Ok(Format::Svg),
            "text" => Ok(Format::Text),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Drawable<'a> {
    Kirby(&'a KirbyDiagram),
    Annular(&'a AnnularLink),
    Tangle(&'a ColoredTangle),
}

pub fn render(d: Drawable<'_>, format: Format) -> String {
    match (d, format) {
        (Drawable::Tangle(t), Format::Text) => tangle_text(t),
        (Drawable::Tangle(t), Format::Svg) => tangle_svg(t),
        (Drawable::Annular(l), Format::Text) => annular_text(l),
        (Drawable::Annular(l), Format::Svg) => annular_svg(l),
        (Drawable::Kirby(k), Format::Text) => kirby_text(k),
        (Drawable::Kirby(k), Format::Svg) => kirby_svg(k),
    }
}

/// Parses the format name and renders.
pub fn render_as(d: Drawable<'_>, format: &str) -> Result<String> {
    Ok(render(d, format.parse()?))
}

fn grid_to_string(grid: Vec<Vec<char>>) -> String {
    let mut out = String::new();
    for row in grid {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn ops_text(top: usize, ops: &[Op], marks: &[(usize, usize)]) -> Vec<Vec<char>> {
    let mut w = top;
    let mut widths = vec![w];
    for op in ops {
        match op {
            Op::Cup { .. } => w += 2,
            Op::Cap { .. } => w -= 2,
            Op::Cross { .. } => {}
        }
        widths.push(w);
    }
    let rows = widths.iter().copied().max().unwrap_or(0);
    let mut grid = vec![Vec::with_capacity(ops.len() * 2 + 1); rows];
    let strands = |grid: &mut Vec<Vec<char>>, w: usize| {
        for (r, row) in grid.iter_mut().enumerate() {
            row.push(if r < w { '-' } else { ' ' });
        }
    };
    strands(&mut grid, widths[0]);
    for (t, op) in ops.iter().enumerate() {
        let before = widths[t];
        for (r, row) in grid.iter_mut().enumerate() {
            row.push(if r < before.max(widths[t + 1]) { '-' } else { ' ' });
        }
        let col = grid.first().map_or(0, |r| r.len() - 1);
        match *op {
            Op::Cross { position, sign } => {
                let (a, b) = if sign == Sign::Plus { ('\\', '/') } else { ('/', '\\') };
                grid[position - 1][col] = a;
                grid[position][col] = b;
            }
            Op::Cup { position } => {
                grid[position - 1][col] = '(';
                grid[position][col] = '(';
            }
            Op::Cap { position } => {
                grid[position - 1][col] = ')';
                grid[position][col] = ')';
            }
        }
        for &(slot, row) in marks {
            if slot == t + 1 && row < rows {
                grid[row][col] = 'o';
            }
        }
        strands(&mut grid, widths[t + 1]);
    }
    for &(slot, row) in marks {
        if slot == 0 && row < rows {
            grid[row][0] = 'o';
        }
    }
    grid
}

fn tangle_text(t: &ColoredTangle) -> String {
    grid_to_string(ops_text(t.top_width(), t.ops(), &[]))
}

fn annular_text(l: &AnnularLink) -> String {
    let ops: Vec<Op> = l.word().letters().iter().map(|x| Op::cross(x.0, x.1)).collect();
    let marks: Vec<(usize, usize)> = l
        .components()
        .iter()
        .filter_map(|c| match c.placement {
            Placement::Meridian { slot, position } => Some((slot, position - 1)),
            Placement::Cycle(_) => None,
        })
        .collect();
    let mut out = grid_to_string(ops_text(l.word().strands(), &ops, &marks));
    for c in l.components() {
        let _ = writeln!(out, "{} [{}] framing {} winding {}", c.id(), c.spec.color, c.spec.framing, c.winding());
    }
    out
}

fn kirby_text(k: &KirbyDiagram) -> String {
    let mut out = String::new();
    if let Some(curves) = k.curves() {
        out.push_str(&annular_text(curves));
    }
    for d in k.dotted() {
        let _ = writeln!(out, "dotted {d}");
    }
    for h in k.two_handles() {
        let w: Vec<String> = h.winding.iter().map(i64::to_string).collect();
        let _ = writeln!(out, "2-handle {} framing {} winding [{}]", h.id, h.framing, w.join(", "));
    }
    let _ = writeln!(out, "3-handles {} 4-handles {}", k.h3(), k.h4());
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

const STYLE: &str = "<style>.red{stroke:#c0392b}.blue{stroke:#2e86c1}.purple{stroke:#7d3c98}.uncolored{stroke:#333}\
path,line,ellipse,circle{fill:none;stroke-width:2}.halo{stroke:#fff;stroke-width:6}.dotted{stroke:#000;stroke-dasharray:4 3}\
text{font-family:monospace;font-size:12px;fill:#000}</style>";

fn svg_document(width: usize, height: usize, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n{STYLE}\n{body}</svg>\n"
    )
}

const DX: usize = 40;
const DY: usize = 30;

fn x_of(level: usize) -> usize {
    DX / 2 + DX * level
}

fn y_of(pos: usize) -> usize {
    DY + DY * pos
}

fn tangle_svg(t: &ColoredTangle) -> String {
    let tr = t.trace();
    let levels = tr.levels();
    let rows = tr.widths.iter().copied().max().unwrap_or(0);
    let class = |level: usize, pos: usize| t.component(tr.seg_comp[tr.seg(level, pos)]).color.name();
    let mut body = String::new();
    let line = |body: &mut String, cls: &str, x1: usize, y1: usize, x2: usize, y2: usize| {
        let _ = writeln!(body, "<line class=\"{cls}\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>");
    };
    for (k, op) in t.ops().iter().enumerate() {
        let (x1, x2) = (x_of(k), x_of(k + 1));
        let w = tr.widths[k];
        match *op {
            Op::Cross { position, sign } => {
                let a = position - 1;
                for p in (0..w).filter(|&p| p != a && p != a + 1) {
                    line(&mut body, class(k, p), x1, y_of(p), x2, y_of(p));
                }
                let (under, over) = if sign == Sign::Plus { (a, a + 1) } else { (a + 1, a) };
                let dest = |p: usize| if p == a { a + 1 } else { a };
                line(&mut body, class(k, under), x1, y_of(under), x2, y_of(dest(under)));
                line(&mut body, "halo", x1, y_of(over), x2, y_of(dest(over)));
                line(&mut body, class(k, over), x1, y_of(over), x2, y_of(dest(over)));
            }
            Op::Cup { position } => {
                let a = position - 1;
                for p in 0..w {
                    let q = if p < a { p } else { p + 2 };
                    line(&mut body, class(k, p), x1, y_of(p), x2, y_of(q));
                }
                let _ = writeln!(
                    body,
                    "<path class=\"{}\" d=\"M {x2} {} Q {x1} {} {x2} {}\"/>",
                    class(k + 1, a),
                    y_of(a),
                    (y_of(a) + y_of(a + 1)) / 2,
                    y_of(a + 1)
                );
            }
            Op::Cap { position } => {
                let a = position - 1;
                for p in (0..w).filter(|&p| p != a && p != a + 1) {
                    let q = if p < a { p } else { p - 2 };
                    line(&mut body, class(k, p), x1, y_of(p), x2, y_of(q));
                }
                let _ = writeln!(
                    body,
                    "<path class=\"{}\" d=\"M {x1} {} Q {x2} {} {x1} {}\"/>",
                    class(k, a),
                    y_of(a),
                    (y_of(a) + y_of(a + 1)) / 2,
                    y_of(a + 1)
                );
            }
        }
    }
    svg_document(x_of(levels) + DX / 2, y_of(rows.max(1)), &body)
}

fn annular_svg(l: &AnnularLink) -> String {
    let mut owner = vec![Color::Uncolored; l.word().strands()];
    for c in l.components() {
        if let Placement::Cycle(cycle) = &c.placement {
            for &p in cycle {
                owner[p] = c.spec.color;
            }
        }
    }
    let hints: Vec<Hint> = owner
        .iter()
        .enumerate()
        .map(|(position, &color)| Hint { level: 0, position, color, direction: Sign::Plus, id: None })
        .collect();
    let ops: Vec<Op> = l.word().letters().iter().map(|x| Op::cross(x.0, x.1)).collect();
    let tangle = ColoredTangle::from_hints(l.word().strands(), ops, &hints).expect("braid words are valid tangles");
    let mut extra = String::new();
    for (k, c) in l.components().iter().enumerate() {
        if let Placement::Meridian { slot, position } = c.placement {
            let _ = writeln!(
                extra,
                "<ellipse class=\"{}\" cx=\"{}\" cy=\"{}\" rx=\"6\" ry=\"12\"/>",
                c.spec.color.name(),
                x_of(slot),
                y_of(position - 1)
            );
        }
        let _ = writeln!(
            extra,
            "<text x=\"4\" y=\"{}\">{} framing {}</text>",
            y_of(l.word().strands()) + DY * k,
            escape(c.id()),
            c.spec.framing
        );
    }
    let width = (x_of(l.word().len()) + DX / 2).max(200);
    let height = y_of(l.word().strands()) + DY * (l.components().len() + 1);
    svg_document(width, height, &(body_of(&tangle_svg(&tangle)) + &extra))
}

fn body_of(svg: &str) -> String {
    let start = svg.find("</style>\n").map_or(0, |i| i + "</style>\n".len());
    let end = svg.rfind("</svg>").unwrap_or(svg.len());
    svg[start..end].to_string()
}

fn kirby_svg(k: &KirbyDiagram) -> String {
    let n = k.two_handles().len();
    let nd = k.dotted().len();
    let colors: Vec<Color> = k
        .two_handles()
        .iter()
        .map(|h| {
            k.curves()
                .and_then(|c| c.index_of(&h.id).map(|i| c.components()[i].spec.color))
                .unwrap_or(Color::Uncolored)
        })
        .collect();
    let width = 160 + 120 * n.max(nd).max(1);
    let height = 220;
    let mut body = String::new();
    for (i, d) in k.dotted().iter().enumerate() {
        let cx = 100 + 120 * i;
        let _ = writeln!(body, "<circle class=\"dotted\" cx=\"{cx}\" cy=\"60\" r=\"30\"/>");
        let _ = writeln!(body, "<text x=\"{}\" y=\"20\">{}</text>", cx - 10, escape(d));
    }
    for (i, h) in k.two_handles().iter().enumerate() {
        let cx = 100 + 120 * i;
        let _ = writeln!(body, "<ellipse class=\"{}\" cx=\"{cx}\" cy=\"140\" rx=\"45\" ry=\"25\"/>", colors[i].name());
        let _ = writeln!(body, "<text x=\"{}\" y=\"185\">{} ({})</text>", cx - 40, escape(&h.id), h.framing);
    }
    if k.h3() + k.h4() > 0 {
        let _ = writeln!(body, "<text x=\"10\" y=\"210\">3-handles {} 4-handles {}</text>", k.h3(), k.h4());
    }
    svg_document(width, height, &body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::half_twist_tangle;
    use crate::kirby::build_xpq;

    #[test]
    fn twist_text() {
        let s = render(Drawable::Tangle(&half_twist_tangle(2)), Format::Text);
        assert_eq!(s, "-\\-\\-\n-/-/-\n");
        let s = render(Drawable::Tangle(&half_twist_tangle(-1)), Format::Text);
        assert_eq!(s, "-/-\n-\\-\n");
    }

    #[test]
    fn kirby_svg_counts() {
        let s = render(Drawable::Kirby(&build_xpq(0, 0)), Format::Svg);
        assert!(s.starts_with("<svg"));
        assert!(s.trim_end().ends_with("</svg>"));
        assert_eq!(s.matches("<ellipse").count(), 3);
        assert_eq!(s.matches("class=\"dotted\"").count(), 1);
        assert_eq!(s.matches("<text").count(), 4);
    }

    #[test]
    fn empty_canvas() {
        let s = render(Drawable::Tangle(&ColoredTangle::empty()), Format::Svg);
        assert!(s.starts_with("<svg") && s.contains("</svg>"));
        assert!(!s.contains("<line"));
        assert_eq!(render(Drawable::Tangle(&ColoredTangle::empty()), Format::Text), "");
    }

    #[test]
    fn unknown_format() {
        assert!(matches!(render_as(Drawable::Kirby(&build_xpq(0, 0)), "png"), Err(Error::UnsupportedFormat(_))));
    }

    #[test]
    fn deterministic() {
        let d = build_xpq(3, -1);
        for f in [Format::Svg, Format::Text] {
            assert_eq!(render(Drawable::Kirby(&d), f), render(Drawable::Kirby(&d), f));
        }
        let a = render(Drawable::Annular(d.curves().unwrap()), Format::Svg);
        assert!(a.contains("<ellipse"));
        let t = render(Drawable::Annular(d.curves().unwrap()), Format::Text);
        assert!(t.contains('o'));
    }
}
