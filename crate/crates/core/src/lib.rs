//! Computing with plactic monoids of classical type.
//!
//! The crate decides plactic equivalence through Kashiwara crystal
//! structures, builds the column presentation of type A, enumerates and
//! completes critical branchings of string rewriting systems, and produces
//! Squier coherent extensions two ways: directly, and by completing only the
//! critical branchings of highest weight and expanding the resulting cells
//! with lowering operators. The two routes agree cell by cell.
//!
//! Modules:
//! - [`crystal`]: classical crystal bases, Kashiwara operators on words via
//!   the tensor rule, weights, highest-weight raising, components, axiom
//!   checks.
//! - [`plactic`]: type A tableaux, column reading, Schensted column
//!   insertion, the tableau product, and the crystal decision procedure for
//!   plactic equivalence.
//! - [`rewriting`]: a generic string rewriting engine: presentations, steps,
//!   paths, normal forms, branchings, critical pairs, confluence checks, and
//!   coherence cells from normalization strategies.
//! - [`crystal_rewriting`]: presentations compatible with a crystal
//!   structure, the Kashiwara action on steps, paths, branchings and cells,
//!   the highest-weight restriction, and the reduced coherence pipeline.
//!
//! ```
//! use placto_core::crystal::{CrystalType, Family};
//! use placto_core::crystal_rewriting::{build_column_presentation, cohere_direct, cohere_via_hw};
//! use placto_core::plactic::plactic_equiv;
//! use placto_core::rewriting::Strategy;
//!
//! // three letters, two operator labels
//! let ty = CrystalType::new(Family::A, 2)?;
//! assert!(plactic_equiv(&ty, &ty.parse_word("132")?, &ty.parse_word("312")?)?);
//!
//! // the coherent extension computed at highest weight matches the direct one
//! let cp = build_column_presentation(&ty)?;
//! let direct = cohere_direct(&cp, Strategy::Leftmost, 10_000)?;
//! let reduced = cohere_via_hw(&cp, Strategy::Leftmost, 10_000)?;
//! assert!(direct.iter().zip(&reduced).all(|(d, t)| d == &t.cell));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod crystal;
pub mod crystal_rewriting;
pub mod plactic;
pub mod rewriting;

pub use crystal::{CrystalType, Dir, Family, Letter, Weight, Word};
pub use plactic::Tableau;
pub use rewriting::{Presentation2, RewritePath, Rule, Step};

/// Version tag written into every JSON artifact.
pub const SCHEMA_VERSION: u32 = 1;
