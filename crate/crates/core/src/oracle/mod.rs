//! Fixtures, exhaustive enumerators and second implementations used to
//! cross-check the main engine.

mod enumerate;
mod fixtures;
mod independent;

pub use enumerate::{
    comodules_on, enumerate_structures, lie_coalgebras, rb_operators, Enumeration, EnumerationIter, StructureKind,
};
pub use fixtures::{
    builtin_fixtures, builtin_fixtures_over, enumerated_comodules, line, scramble, semidirect_fixtures, sl2_dual,
    two_dim, Fixture, FixtureCatalog, FixtureEntry,
};
pub use independent::{
    bareiss_rank, exhaustive_equivalence, independent_classification, independent_cocycle_check,
    independent_coalgebra_check, independent_rank, minors_rank, IndependentClassification,
};
