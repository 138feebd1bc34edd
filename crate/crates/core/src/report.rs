//! Small shared verification-report building blocks.

use serde::Serialize;

/// One verification item: how many checks ran, how many failed, and the
/// first few failure witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct CheckItem {
    pub description: &'static str,
    pub checked: usize,
    pub failed: usize,
    pub witnesses: Vec<String>,
}

const WITNESS_CAP: usize = 16;

impl CheckItem {
    #[must_use]
    pub fn new(description: &'static str) -> Self {
        Self {
            description,
            checked: 0,
            failed: 0,
            witnesses: Vec::new(),
        }
    }

    #[must_use]
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    /// Records one check, capping stored witnesses.
    pub fn run(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(witness());
            }
        }
    }

    /// Records an unconditional failure (used when a whole item cannot run).
    pub fn fail(&mut self, witness: impl Into<String>) {
        self.checked += 1;
        self.failed += 1;
        if self.witnesses.len() < WITNESS_CAP {
            self.witnesses.push(witness.into());
        }
    }
}
