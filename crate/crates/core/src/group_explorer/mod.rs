//! Brute-force finite group computations in `U_n(F_p)`.

mod elem;
mod finite;
mod pc;
mod search;

pub use elem::{position_count, F2Matrix, FpMatrix, GroupElem, F2_MAX_N};
pub use finite::{FiniteSubgroup, DEFAULT_CLOSURE_CAP};
pub use pc::PcSubgroup;
pub use search::{
    pair_derived_length, search_pairs, series_report, PairSource, SearchMode, SearchParams, SearchReport, SeriesReport,
    WitnessPair, DEFAULT_SEED, EXHAUSTIVE_LIMIT,
};
