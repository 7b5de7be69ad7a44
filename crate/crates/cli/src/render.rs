//! Text layouts for blocks of terms.

use fibmod::explore::BinaryBlock;
use fibmod::hypercube::multi_indices;
use fibmod::{Hypercube, ModuleElem};

/// Labels followed by right-aligned cells, one line per row.
pub fn aligned(labels: &[String], rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0))
        .collect();
    let lw = labels.iter().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for (label, row) in labels.iter().zip(rows) {
        let mut line = if lw > 0 { format!("{label:<lw$}") } else { String::new() };
        for (c, cell) in row.iter().enumerate() {
            if !line.is_empty() {
                line.push(' ');
            }
            line.push_str(&format!("{cell:>w$}", w = widths[c]));
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn plane(block: &Hypercube<ModuleElem>, rest: &[usize]) -> String {
    let shape = block.shape();
    let (w, h) = (shape[0], if shape.len() > 1 { shape[1] } else { 1 });
    let rows: Vec<Vec<String>> = (0..h)
        .rev()
        .map(|k| {
            (0..w)
                .map(|n| {
                    let mut idx = vec![n];
                    if shape.len() > 1 {
                        idx.push(k);
                    }
                    idx.extend_from_slice(rest);
                    block.get(&idx).to_string()
                })
                .collect()
        })
        .collect();
    aligned(&vec![String::new(); rows.len()], &rows)
}

/// First axis to the right, second axis upward (row `k = 0` at the bottom).
/// Beyond two axes, one plane per remaining index.
pub fn grid(block: &Hypercube<ModuleElem>) -> String {
    let shape = block.shape();
    if shape.len() <= 2 {
        return plane(block, &[]);
    }
    let mut out = String::new();
    for (i, rest) in multi_indices(&shape[2..]).enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let tag: Vec<String> = rest.iter().map(usize::to_string).collect();
        out.push_str(&format!("[.., .., {}]\n", tag.join(", ")));
        out.push_str(&plane(block, &rest));
    }
    out
}

/// One line per term: absolute indices, then the coordinates.
pub fn csv(block: &Hypercube<ModuleElem>, origin: &[usize]) -> String {
    let p = block.dims();
    let rank = block.data().first().map_or(1, ModuleElem::rank);
    let mut header: Vec<String> = (1..=p).map(|i| format!("n{i}")).collect();
    if rank == 1 {
        header.push("value".into());
    } else {
        header.extend((1..=rank).map(|c| format!("x{c}")));
    }
    let mut out = header.join(",") + "\n";
    for (idx, x) in block.iter() {
        let mut cells: Vec<String> = idx.iter().zip(origin).map(|(i, o)| (i + o).to_string()).collect();
        cells.extend(x.coords().iter().map(|c| c.to_string()));
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn block_tuple(b: &BinaryBlock) -> String {
    let [a, c, d, e] = b.entries();
    format!("({a},{c},{d},{e})")
}

/// `H^i V^j(B)` in the usual shift notation.
pub fn shift_name((i, j): (usize, usize), label: &str) -> String {
    let pow = |s: &str, e: usize| match e {
        0 => String::new(),
        1 => s.to_string(),
        _ => format!("{s}^{e}"),
    };
    format!("{}{}({label})", pow("H", i), pow("V", j))
}
