//! Certified generating sets: the three-generator triples, the
//! two-generator pairs, and the proportion `π(N)` of good dimensions.

mod proportion;
mod three_gen;
mod two_gen;
mod witness;

pub use proportion::{count_good, is_good, proportion_good};
pub use three_gen::{three_gen_triple, TripleWitness};
pub use two_gen::{
    m10, m21_triple, m5_c5, m5_pair, monomial_recursion, pair_from_monomial, tracked_monomial, two_gen_pair,
    two_gen_pair_component, LongMonomial, MonomialTriple, PairWitness,
};
pub use witness::{verify, VerifyReport, WitnessJson, WitnessKind, WITNESS_VERSION};
