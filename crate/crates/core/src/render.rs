//! ASCII and SVG drawings of diagrams and data.

use std::fmt::Write as _;

use crate::datum::PairDatum;
use crate::diagram::{CellSet, SkewDiagram};

/// Boxes, top row first. Highlighted cells get a star.
pub fn ascii(d: &SkewDiagram, highlight: &CellSet) -> String {
    ascii_lines(d, highlight).join("\n") + "\n"
}

fn ascii_lines(d: &SkewDiagram, highlight: &CellSet) -> Vec<String> {
    let (a0, a1, b0, b1) = d.bounds();
    let mut lines = Vec::new();
    for b in (b0..=b1).rev().step_by(2) {
        let mut line = String::new();
        for a in (a0..=a1).step_by(2) {
            let c = crate::diagram::Cell::new(a, b);
            line.push_str(match (d.contains(&c), highlight.contains(&c)) {
                (true, true) => "[*]",
                (true, false) => "[ ]",
                _ => "   ",
            });
        }
        lines.push(line.trim_end().to_string());
    }
    lines
}

/// Components side by side, each under a `gammaK` label.
pub fn ascii_datum(datum: &PairDatum, highlight: &[(u8, CellSet)]) -> String {
    let empty = CellSet::new();
    let mut blocks: Vec<Vec<String>> = Vec::new();
    let slots: &[u8] = match datum.lie_type() {
        crate::datum::LieType::A => &[1],
        crate::datum::LieType::D => &[1, 2, 3],
        _ => &[1, 2],
    };
    for &k in slots {
        let mut block = vec![format!("gamma{k}")];
        match datum.gamma(k) {
            Some(d) => {
                let h = highlight
                    .iter()
                    .find(|(hk, _)| *hk == k)
                    .map(|(_, s)| s)
                    .unwrap_or(&empty);
                block.extend(ascii_lines(d, h));
            }
            None => block.push("(empty)".into()),
        }
        blocks.push(block);
    }
    let height = blocks.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = blocks
        .iter()
        .map(|b| b.iter().map(|l| l.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = format!("{}{}\n", datum.lie_type(), datum.rank());
    for row in 0..height {
        let mut line = String::new();
        for (i, b) in blocks.iter().enumerate() {
            let cell = b.get(row).map(String::as_str).unwrap_or("");
            let pad = widths[i] - cell.chars().count();
            line.push_str(cell);
            if i + 1 < blocks.len() {
                line.push_str(&" ".repeat(pad + 4));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

const UNIT: i32 = 24;

fn svg_cells(out: &mut String, d: &SkewDiagram, highlight: &CellSet, x0: i32, y0: i32) {
    let (a0, _, _, b1) = d.bounds();
    for c in d.iter() {
        let x = x0 + (c.a - a0) / 2 * UNIT;
        let y = y0 + (b1 - c.b) / 2 * UNIT;
        let fill = if highlight.contains(c) {
            "#f5d76e"
        } else {
            "#ffffff"
        };
        writeln!(
            out,
            r#"  <rect x="{x}" y="{y}" width="{UNIT}" height="{UNIT}" fill="{fill}" stroke="black"/>"#
        )
        .unwrap();
        if highlight.contains(c) {
            writeln!(
                out,
                r#"  <text x="{}" y="{}" text-anchor="middle" font-size="16">*</text>"#,
                x + UNIT / 2,
                y + UNIT * 3 / 4
            )
            .unwrap();
        }
    }
}

fn block_size(d: &SkewDiagram) -> (i32, i32) {
    ((d.width() / 2 + 1) * UNIT, (d.height() / 2 + 1) * UNIT)
}

pub fn svg(d: &SkewDiagram, highlight: &CellSet) -> String {
    let (w, h) = block_size(d);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">\n",
        w + 2,
        h + 2
    );
    svg_cells(&mut out, d, highlight, 1, 1);
    out.push_str("</svg>\n");
    out
}

pub fn svg_datum(datum: &PairDatum, highlight: &[(u8, CellSet)]) -> String {
    let empty = CellSet::new();
    let label_h = 20;
    let gap = UNIT;
    let parts: Vec<(u8, Option<&SkewDiagram>)> = (1..=3u8)
        .filter(|&k| k == 1 || datum.lie_type() != crate::datum::LieType::A)
        .filter(|&k| k < 3 || datum.lie_type() == crate::datum::LieType::D)
        .map(|k| (k, datum.gamma(k)))
        .collect();
    let sizes: Vec<(i32, i32)> = parts
        .iter()
        .map(|(_, d)| d.map(block_size).unwrap_or((3 * UNIT, UNIT)))
        .collect();
    let width: i32 = sizes.iter().map(|s| s.0).sum::<i32>() + gap * (sizes.len() as i32 - 1) + 2;
    let height = sizes.iter().map(|s| s.1).max().unwrap_or(0) + label_h + 2;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\">\n"
    );
    let mut x = 1;
    for ((k, d), (w, _)) in parts.iter().zip(&sizes) {
        writeln!(
            out,
            r#"  <text x="{x}" y="14" font-size="14">gamma{k}</text>"#
        )
        .unwrap();
        match d {
            Some(d) => {
                let h = highlight
                    .iter()
                    .find(|(hk, _)| hk == k)
                    .map(|(_, s)| s)
                    .unwrap_or(&empty);
                svg_cells(&mut out, d, h, x, label_h + 1);
            }
            None => {
                writeln!(
                    out,
                    r#"  <text x="{x}" y="{}" font-size="14">(empty)</text>"#,
                    label_h + 16
                )
                .unwrap();
            }
        }
        x += w + gap;
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Cell;

    fn plus7() -> SkewDiagram {
        SkewDiagram::from_int(&[(-1, 1), (0, 1), (-1, 0), (0, 0), (1, 0), (0, -1), (1, -1)])
            .unwrap()
    }

    #[test]
    fn plus_shape_ascii() {
        let s = ascii(&plus7(), &CellSet::new());
        assert_eq!(s, "[ ][ ]\n[ ][ ][ ]\n   [ ][ ]\n");
    }

    #[test]
    fn highlight_stars() {
        let h: CellSet = [Cell::int(0, -1), Cell::int(-1, 0)].into();
        let s = ascii(&plus7(), &h);
        assert_eq!(s, "[ ][ ]\n[*][ ][ ]\n   [*][ ]\n");
        assert_eq!(svg(&plus7(), &h).matches("*</text>").count(), 2);
    }

    #[test]
    fn datum_side_by_side() {
        let sq = SkewDiagram::from_doubled(&[(-1, -1), (1, -1), (-1, 1), (1, 1)]).unwrap();
        let o = SkewDiagram::from_int(&[(0, 0)]).unwrap();
        let d = PairDatum::type_b(Some(o), Some(sq)).unwrap();
        let s = ascii_datum(&d, &[]);
        assert_eq!(
            s,
            "B2\ngamma1    gamma2\n[ ]       [ ][ ]\n          [ ][ ]\n"
        );
        let v = svg_datum(&d, &[]);
        assert_eq!(v.matches("<rect").count(), 5);
        assert_eq!(v, svg_datum(&d, &[]));
    }
}
