#![allow(dead_code)]

use std::path::PathBuf;

use gmatroid::matroid::MatroidJson;
use gmatroid::Matroid;

pub const GOLDEN_PRIMES: [usize; 4] = [5, 7, 11, 13];

pub fn golden_path(p: usize, filter: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("z{p}_rank3_{filter}.json"))
}

/// One matroid per line inside a JSON array.
pub fn render(ms: &[Matroid]) -> String {
    let lines: Vec<String> = ms.iter().map(Matroid::to_json).collect();
    format!("[\n{}\n]\n", lines.join(",\n"))
}

pub fn load_golden(p: usize, filter: &str) -> Vec<Matroid> {
    let text = std::fs::read_to_string(golden_path(p, filter)).expect("golden file present");
    let raw: Vec<MatroidJson> = serde_json::from_str(&text).expect("golden file parses");
    raw.into_iter().map(|j| Matroid::try_from(j).expect("golden matroid valid")).collect()
}

pub fn cyclic_regular(n: usize) -> gmatroid::GroupAction {
    gmatroid::FiniteGroup::cyclic(n).unwrap().regular_action()
}

pub fn divisor_count(n: usize) -> usize {
    (1..=n).filter(|&d| n.is_multiple_of(d)).count()
}
pub mod labeled;
