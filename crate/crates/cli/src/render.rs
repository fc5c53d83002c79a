//! Betti diagrams in the usual text layout: rows are strands `ell = j - i`,
//! columns homological degrees, `-` for zero, and a `Tot:` footer.

use std::collections::BTreeMap;

use betti_core::BettiTable;

const LABEL: usize = 4;
const FIRST: usize = 4;
const REST: usize = 5;

fn cell(value: u64) -> String {
    if value == 0 {
        "-".into()
    } else {
        value.to_string()
    }
}

fn line(label: &str, cells: &[String]) -> String {
    let mut s = format!("{label:<LABEL$}");
    for (i, c) in cells.iter().enumerate() {
        if i == 0 {
            s.push_str(&format!("{c:>FIRST$}"));
        } else {
            s.push_str(&format!("{c:>REST$}"));
        }
    }
    s.trim_end().to_string()
}

pub fn render_betti(table: &BettiTable) -> String {
    let columns = table.max_index().map_or(0, |m| m + 1);
    let header: Vec<String> = (0..columns).map(|i| i.to_string()).collect();
    let width = LABEL + FIRST + REST * columns.saturating_sub(1) + 2;
    let rule = "-".repeat(if columns == 0 { LABEL + 2 } else { width });
    let mut out = vec![line("", &header), rule.clone()];
    let strands = table.nonzero_strands();
    if let (Some(&lo), Some(&hi)) = (strands.first(), strands.last()) {
        for ell in lo..=hi {
            let cells: Vec<String> = (0..columns)
                .map(|i| cell(table.get(i, i as u32 + ell)))
                .collect();
            out.push(line(&format!("{ell}:"), &cells));
        }
    }
    out.push(rule);
    let totals: Vec<String> = table.totals().into_iter().map(|t| t.to_string()).collect();
    out.push(line("Tot:", &totals));
    out.join("\n") + "\n"
}

/// Reads a rendered diagram back into `(i, j) -> beta`.
pub fn parse_diagram(text: &str) -> Option<BTreeMap<(usize, u32), u64>> {
    let mut entries = BTreeMap::new();
    for row in text.lines() {
        let Some((label, rest)) = row.split_once(':') else {
            continue;
        };
        let Ok(ell) = label.trim().parse::<u32>() else {
            continue;
        };
        for (i, cell) in rest.split_whitespace().enumerate() {
            if cell != "-" {
                entries.insert((i, i as u32 + ell), cell.parse().ok()?);
            }
        }
    }
    Some(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table() {
        assert_eq!(
            render_betti(&BettiTable::new(3)),
            "\n------\n------\nTot:\n"
        );
    }

    #[test]
    fn single_column() {
        let mut b = BettiTable::new(2);
        b.set(0, 3, 1);
        assert_eq!(
            render_betti(&b),
            "       0\n----------\n3:     1\n----------\nTot:   1\n"
        );
    }
}
