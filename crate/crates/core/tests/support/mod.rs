#![allow(dead_code)]

use std::path::PathBuf;

use multiperm::io::{parse_solution_file, SolutionFile};
use multiperm::{enumerate, EnumerateOptions, Problem, Sequence};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn load_fixture(name: &str, m: usize, n: usize) -> SolutionFile {
    let bytes = std::fs::read(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    parse_solution_file(&bytes, &Problem::new(m, n).unwrap(), true).unwrap()
}

/// (file, m, n, complete)
pub const FIXTURES: &[(&str, usize, usize, bool)] = &[
    ("p2n7.txt", 2, 7, true),
    ("p2n8.txt", 2, 8, true),
    ("p3n9.txt", 3, 9, true),
    ("p3n10.txt", 3, 10, true),
    ("p2n11_partial.txt", 2, 11, false),
    ("p2n12_partial.txt", 2, 12, false),
    ("p2n15_partial.txt", 2, 15, false),
    ("p2n16_partial.txt", 2, 16, false),
    ("p3n17_partial.txt", 3, 17, false),
    ("p3n18_partial.txt", 3, 18, false),
    ("p3n19_partial.txt", 3, 19, false),
];

pub fn all_canonical(m: usize, n: usize) -> Vec<Sequence> {
    let opts = EnumerateOptions { sort: true, ..Default::default() };
    let mut out = Vec::new();
    enumerate(&Problem::new(m, n).unwrap(), &opts, |s| {
        out.push(s.clone());
        Ok(())
    })
    .unwrap();
    out
}

/// 1-based first index of each value, computed by a plain scan.
pub fn first_indices(seq: &[u32], n: usize) -> Vec<usize> {
    (1..=n as u32)
        .map(|k| seq.iter().position(|&v| v == k).expect("value present") + 1)
        .collect()
}
