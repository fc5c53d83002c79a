use std::collections::BTreeMap;

use betti_cli::render::{parse_diagram, render_betti};
use betti_core::BettiTable;
use proptest::prelude::*;

/// Diagrams of `m^k I`, `k = 0..=3`, for `I = (x1*x2^3 + x3^4, x1 + x2 + x4, x2^3)`.
const GOLDEN: [&str; 4] = [
    "       0    1    2
--------------------
1:     1    -    -
2:     -    -    -
3:     1    1    -
4:     1    1    -
5:     -    -    -
6:     -    1    1
--------------------
Tot:   3    3    1",
    "       0    1    2    3
-------------------------
2:     4    6    4    1
3:     -    -    -    -
4:     3    6    4    1
5:     3    6    4    1
6:     -    1    1    -
-------------------------
Tot:   10   19   13    3",
    "       0    1    2    3
-------------------------
3:    10   20   15    4
4:     -    -    -    -
5:     6   14   11    3
6:     6   15   12    3
-------------------------
Tot:   22   49   38   10",
    "       0    1    2    3
-------------------------
4:    20   45   36   10
5:     -    -    -    -
6:    10   25   21    6
7:     9   24   21    6
-------------------------
Tot:   39   94   78   22",
];

fn normalize(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split_whitespace().map(str::to_string).collect::<Vec<_>>())
        .filter(|l| !l.is_empty())
        .collect()
}

fn table_from(entries: &BTreeMap<(usize, u32), u64>) -> BettiTable {
    let mut t = BettiTable::new(4);
    for (&(i, j), &v) in entries {
        t.set(i, j, v);
    }
    t
}

#[test]
fn golden_diagrams_render_identically() {
    for (k, golden) in GOLDEN.iter().enumerate() {
        let table = table_from(&parse_diagram(golden).unwrap());
        assert_eq!(normalize(&render_betti(&table)), normalize(golden), "k={k}");
    }
}

#[test]
fn rules_match_the_golden_width() {
    let table = table_from(&parse_diagram(GOLDEN[0]).unwrap());
    let rendered = render_betti(&table);
    assert_eq!(rendered.lines().nth(1), GOLDEN[0].lines().nth(1));
    assert_eq!(rendered.lines().last(), Some("Tot:   3    3    1"));
}

fn table_strategy() -> impl Strategy<Value = BettiTable> {
    prop::collection::btree_map((0usize..4, 0u32..12), 0u64..2000, 0..12).prop_map(|m| {
        let mut t = BettiTable::new(4);
        for ((i, j), v) in m {
            if j as usize >= i {
                t.set(i, j, v);
            }
        }
        t
    })
}

proptest! {
    #[test]
    fn rendered_grid_parses_back(table in table_strategy()) {
        let back = parse_diagram(&render_betti(&table)).unwrap();
        let entries: BTreeMap<(usize, u32), u64> = table.entries().collect();
        prop_assert_eq!(back, entries);
    }
}
