//! Shared fixtures for the benchmark targets.

use placto_core::crystal::{words_up_to, CrystalType, Family, Word};
use placto_core::crystal_rewriting::{build_column_presentation, CrystalPresentation};

pub fn type_a(letters: u8) -> CrystalType {
    CrystalType::new(Family::A, letters - 1).expect("valid rank")
}

pub fn column_presentation(letters: u8) -> CrystalPresentation {
    build_column_presentation(&type_a(letters)).expect("builds")
}

/// A mid-sized word batch for operator throughput runs.
pub fn word_batch(letters: u8, maxlen: usize) -> Vec<Word> {
    words_up_to(&type_a(letters), maxlen)
}
