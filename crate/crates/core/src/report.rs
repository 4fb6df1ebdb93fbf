use serde::{Deserialize, Serialize};

/// One violated axiom together with a concrete witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Axiom number in the numbering of the class being validated.
    pub axiom: u32,
    /// Human-readable witness (the offending tuple/edge/pair).
    pub detail: String,
}

/// Result of validating a structure against a universal axiom list.
/// An empty report means the structure is a member of the class.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: u32, detail: impl Into<String>) {
        self.violations.push(Violation { axiom, detail: detail.into() });
    }

    /// Sorted, deduplicated list of violated axiom numbers.
    pub fn violated_axioms(&self) -> Vec<u32> {
        let mut axioms: Vec<u32> = self.violations.iter().map(|v| v.axiom).collect();
        axioms.sort_unstable();
        axioms.dedup();
        axioms
    }
}
