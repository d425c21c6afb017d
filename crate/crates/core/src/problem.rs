use alloc::string::String;
use alloc::vec::Vec;

use crate::logic::{Clause, Signature};

/// A CNF problem: axioms together with the negation of the conjecture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub name: String,
    pub axioms: Vec<Clause>,
    pub negated_conjecture: Vec<Clause>,
    pub signature: Signature,
    pub source_files: Vec<String>,
}

impl Problem {
    /// Axioms followed by the negated conjecture clauses.
    pub fn clauses(&self) -> Vec<Clause> {
        self.axioms.iter().chain(&self.negated_conjecture).cloned().collect()
    }

    pub fn clause_count(&self) -> usize {
        self.axioms.len() + self.negated_conjecture.len()
    }
}
