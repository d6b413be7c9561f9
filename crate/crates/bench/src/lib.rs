//! Fixtures shared by the benchmarks.

use khoval::corpus;
use khoval::LinkDiagram;

/// Named diagrams of increasing size.
pub fn ladder() -> Vec<(&'static str, LinkDiagram)> {
    let pick = ["unknot", "hopf", "trefoil", "figure eight", "trefoil and loop"];
    corpus::diagrams().into_iter().filter(|(n, _)| pick.contains(n)).collect()
}
