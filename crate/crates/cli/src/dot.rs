//! Origin graphs in DOT: the input (with markers) on one row, the output on
//! a row below, and one edge from each output letter to its origin.

use std::fmt::Write;

use origin_transducer::SyncPair;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn origin_graph(name: &str, p: &SyncPair) -> String {
    let mut out = String::new();
    let n = p.input.len();
    writeln!(out, "digraph {name} {{").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    writeln!(out, "  {{ rank=same;").unwrap();
    for i in 0..=n + 1 {
        let label = match i {
            0 => "⊢".to_string(),
            i if i == n + 1 => "⊣".to_string(),
            i => escape(&p.input[i - 1].to_string()),
        };
        writeln!(out, "    in{i} [label=\"{label}\"];").unwrap();
    }
    writeln!(out, "  }}").unwrap();
    if !p.output.is_empty() {
        writeln!(out, "  {{ rank=same;").unwrap();
        for (k, (s, _)) in p.output.iter().enumerate() {
            writeln!(out, "    out{} [label=\"{}\"];", k + 1, escape(&s.to_string())).unwrap();
        }
        writeln!(out, "  }}").unwrap();
    }
    for (k, (_, o)) in p.output.iter().enumerate() {
        writeln!(out, "  out{} -> in{o};", k + 1).unwrap();
    }
    out.push_str("}\n");
    out
}

/// One graph per pair, named `pair1`, `pair2`, ...
pub fn origin_graphs(pairs: &[SyncPair]) -> String {
    pairs
        .iter()
        .enumerate()
        .map(|(i, p)| origin_graph(&format!("pair{}", i + 1), p))
        .collect()
}
