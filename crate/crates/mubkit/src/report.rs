//! Structured pass/fail reports. Reports are I/O artifacts, so their numeric
//! fields are always `f64` no matter which scalar the computation used.

use serde::{Deserialize, Serialize};

/// Location of the worst deviation found by a check.
///
/// Serialized untagged: a state index as `[k]`, a matrix entry as `[i, j]`,
/// a condition instance as `[family, k, j, sign]`, and a pair of basis
/// labels as `[[n, m], [p, q]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WorstIndex {
    State([usize; 1]),
    Entry([usize; 2]),
    Condition([usize; 4]),
    LabelPair([[usize; 2]; 2]),
}

/// Outcome of one verification criterion.
///
/// Invariant: `passed` iff `max_abs_deviation <= tolerance`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub criterion: String,
    pub target_value: f64,
    pub max_abs_deviation: f64,
    pub worst_index: WorstIndex,
    pub tolerance: f64,
}

impl VerificationReport {
    pub fn new(
        criterion: impl Into<String>,
        target_value: f64,
        max_abs_deviation: f64,
        worst_index: WorstIndex,
        tolerance: f64,
    ) -> Self {
        Self {
            passed: max_abs_deviation <= tolerance,
            criterion: criterion.into(),
            target_value,
            max_abs_deviation,
            worst_index,
            tolerance,
        }
    }
}

/// Result of the three-clause unextendible-basis check: (i) every member
/// maximally entangled, (ii) pairwise orthonormality, (iii) no maximally
/// entangled state in the orthogonal complement.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UmebReport {
    pub passed: bool,
    pub clauses: Vec<VerificationReport>,
}

impl UmebReport {
    pub fn new(clauses: Vec<VerificationReport>) -> Self {
        Self {
            passed: clauses.iter().all(|c| c.passed),
            clauses,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passed_tracks_deviation_against_tolerance() {
        let r = VerificationReport::new("x", 1.0, 1e-12, WorstIndex::Entry([0, 0]), 1e-10);
        assert!(r.passed);
        let r = VerificationReport::new("x", 1.0, 1e-8, WorstIndex::Entry([0, 0]), 1e-10);
        assert!(!r.passed);
    }

    #[test]
    fn worst_index_serializes_by_shape() {
        let s = serde_json::to_string(&WorstIndex::Entry([3, 5])).unwrap();
        assert_eq!(s, "[3,5]");
        let s = serde_json::to_string(&WorstIndex::LabelPair([[0, 1], [1, 3]])).unwrap();
        assert_eq!(s, "[[0,1],[1,3]]");
    }

    #[test]
    fn worst_index_round_trips() {
        for idx in [
            WorstIndex::State([7]),
            WorstIndex::Entry([1, 2]),
            WorstIndex::Condition([4, 1, 2, 0]),
            WorstIndex::LabelPair([[0, 0], [1, 2]]),
        ] {
            let text = serde_json::to_string(&idx).unwrap();
            let back: WorstIndex = serde_json::from_str(&text).unwrap();
            assert_eq!(idx, back);
        }
    }
}
