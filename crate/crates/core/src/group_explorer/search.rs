use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{position_count, F2Matrix, FpMatrix, GroupElem, PcSubgroup, F2_MAX_N};
use crate::constructions::WITNESS_VERSION;
use crate::error::{Error, Result};
use crate::scalar_rings::PrimeField;
use crate::unitriangular::{MatrixJson, UnipotentMatrix};

/// Default sampling seed.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Largest pair space searched exhaustively without forcing.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Random,
}

/// Parameters of [`search_pairs`].
#[derive(Debug, Clone)]
pub struct SearchParams {
    pub n: usize,
    pub p: u32,
    pub mode: SearchMode,
    /// Pairs to draw in random mode.
    pub samples: u64,
    pub target: usize,
    pub seed: u64,
    /// Run exhaustively even above [`EXHAUSTIVE_LIMIT`].
    pub force: bool,
    /// Pairs examined before the enumerated or sampled ones.
    pub seeded: Vec<(UnipotentMatrix<PrimeField>, UnipotentMatrix<PrimeField>)>,
}

impl SearchParams {
    pub fn new(n: usize, p: u32, mode: SearchMode, target: usize) -> Self {
        SearchParams { n, p, mode, samples: 10_000, target, seed: DEFAULT_SEED, force: false, seeded: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairSource {
    Seeded,
    Enumerated,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessPair {
    pub source: PairSource,
    pub index: u64,
    pub derived_length: usize,
    pub a: MatrixJson,
    pub b: MatrixJson,
}

/// Outcome of a pair search; identical for any thread count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub p: u32,
    pub mode: SearchMode,
    pub samples: u64,
    pub seeded: usize,
    pub seed: u64,
    pub target: usize,
    pub max_length: usize,
    /// Number of pairs per derived length.
    pub histogram: BTreeMap<usize, u64>,
    pub witness: Option<WitnessPair>,
    /// `"exhaustive"` or `"sampled evidence"`.
    pub evidence: String,
    pub version: String,
}

#[derive(Default)]
struct Partial {
    max: usize,
    histogram: BTreeMap<usize, u64>,
    first_hit: Option<u64>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.max = self.max.max(other.max);
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_default() += v;
        }
        self.first_hit = match (self.first_hit, other.first_hit) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Strict upper entries in position order, as a matrix.
fn from_digits(f: PrimeField, n: usize, digits: &[u32]) -> UnipotentMatrix<PrimeField> {
    let mut m = UnipotentMatrix::identity(f, n);
    let mut it = digits.iter();
    for d in 1..n {
        for i in 1..=n - d {
            m.set(i, i + d, *it.next().expect("enough digits"));
        }
    }
    m
}

/// Derived length of `⟨a, b⟩`, on bit matrices when `p = 2`.
pub fn pair_derived_length(a: &UnipotentMatrix<PrimeField>, b: &UnipotentMatrix<PrimeField>) -> Result<usize> {
    if a.n() != b.n() || a.ring() != b.ring() {
        return Err(Error::Mismatch("pair from different groups".into()));
    }
    if a.ring().modulus() == 2 && a.n() <= F2_MAX_N {
        let (x, y) = (F2Matrix::from_matrix(a)?, F2Matrix::from_matrix(b)?);
        return Ok(PcSubgroup::closure(&x, &[x, y])?.derived_length());
    }
    let (x, y) = (FpMatrix::new(a.clone()), FpMatrix::new(b.clone()));
    Ok(PcSubgroup::closure(&x, &[x.clone(), y])?.derived_length())
}

/// Looks for a pair generating a subgroup of derived length at least
/// `target`; the witness is the first such pair in examination order.
pub fn search_pairs(params: &SearchParams) -> Result<SearchReport> {
    let SearchParams { n, p, mode, target, seed, .. } = *params;
    let f = PrimeField::new(p)?;
    if n < 2 {
        return Err(Error::BadIndex { n, i: 1, j: 2 });
    }
    let m = position_count(n);
    for (a, b) in &params.seeded {
        if a.n() != n || b.n() != n || a.ring() != &f || b.ring() != &f {
            return Err(Error::Mismatch(format!("seeded pair is not in U_{n}(F_{p})")));
        }
    }
    let space = (p as u128).checked_pow(2 * m as u32);
    let count = match mode {
        SearchMode::Exhaustive => match space {
            Some(s) if s <= EXHAUSTIVE_LIMIT || (params.force && s <= u64::MAX as u128) => s as u64,
            other => return Err(Error::NeedsRandomMode(other.unwrap_or(u128::MAX))),
        },
        SearchMode::Random => params.samples,
    };

    let seeded: Vec<usize> =
        params.seeded.iter().map(|(a, b)| pair_derived_length(a, b)).collect::<Result<_>>()?;
    let mut seeded_part = Partial::default();
    for (k, &len) in seeded.iter().enumerate() {
        seeded_part = seeded_part.merge(record(k as u64, len, target));
    }

    let pair = |index: u64| -> (UnipotentMatrix<PrimeField>, UnipotentMatrix<PrimeField>) {
        let digits: Vec<u32> = match mode {
            SearchMode::Exhaustive => {
                let mut rest = index;
                (0..2 * m)
                    .map(|_| {
                        let d = (rest % p as u64) as u32;
                        rest /= p as u64;
                        d
                    })
                    .collect()
            }
            SearchMode::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(index);
                (0..2 * m).map(|_| rng.random_range(0..p)).collect()
            }
        };
        (from_digits(f, n, &digits[..m]), from_digits(f, n, &digits[m..]))
    };

    let main = (0..count)
        .into_par_iter()
        .map(|i| {
            let (a, b) = pair(i);
            let len = pair_derived_length(&a, &b).expect("pairs share a group");
            record(i, len, target)
        })
        .reduce(Partial::default, Partial::merge);

    let witness = if let Some(k) = seeded_part.first_hit {
        let (a, b) = &params.seeded[k as usize];
        Some(witness_pair(PairSource::Seeded, k, seeded[k as usize], a, b))
    } else if let Some(i) = main.first_hit {
        let (a, b) = pair(i);
        let len = pair_derived_length(&a, &b)?;
        let source = if mode == SearchMode::Exhaustive { PairSource::Enumerated } else { PairSource::Sampled };
        Some(witness_pair(source, i, len, &a, &b))
    } else {
        None
    };
    let total = seeded_part.merge(main);
    Ok(SearchReport {
        n,
        p,
        mode,
        samples: count,
        seeded: params.seeded.len(),
        seed,
        target,
        max_length: total.max,
        histogram: total.histogram,
        witness,
        evidence: match mode {
            SearchMode::Exhaustive => "exhaustive".into(),
            SearchMode::Random => "sampled evidence".into(),
        },
        version: WITNESS_VERSION.into(),
    })
}

fn record(index: u64, len: usize, target: usize) -> Partial {
    Partial { max: len, histogram: BTreeMap::from([(len, 1)]), first_hit: (len >= target).then_some(index) }
}

fn witness_pair(
    source: PairSource,
    index: u64,
    derived_length: usize,
    a: &UnipotentMatrix<PrimeField>,
    b: &UnipotentMatrix<PrimeField>,
) -> WitnessPair {
    WitnessPair {
        source,
        index,
        derived_length,
        a: a.to_json().expect("prime field"),
        b: b.to_json().expect("prime field"),
    }
}

/// Orders and series of a subgroup of `U_n(F_p)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub n: usize,
    pub p: u32,
    /// `log_p |G|`.
    pub order_exponent: usize,
    pub order: String,
    pub derived_length: usize,
    /// `log_p` of the orders along the derived series.
    pub derived_series: Vec<usize>,
    pub nilpotency_class: usize,
    /// `log_p` of the orders along the lower central series.
    pub lower_central_series: Vec<usize>,
    pub version: String,
}

/// Series data for `⟨gens⟩`.
pub fn series_report(gens: &[UnipotentMatrix<PrimeField>]) -> Result<SeriesReport> {
    let first = gens.first().ok_or_else(|| Error::Mismatch("no generators".into()))?;
    let (n, f) = (first.n(), *first.ring());
    if gens.iter().any(|g| g.n() != n || *g.ring() != f) {
        return Err(Error::Mismatch("generators from different groups".into()));
    }
    if f.modulus() == 2 && n <= F2_MAX_N {
        let xs: Vec<F2Matrix> = gens.iter().map(F2Matrix::from_matrix).collect::<Result<_>>()?;
        series_of(&xs[0], &xs)
    } else {
        let xs: Vec<FpMatrix> = gens.iter().cloned().map(FpMatrix::new).collect();
        series_of(&xs[0], &xs)
    }
}

fn series_of<E: GroupElem>(id: &E, gens: &[E]) -> Result<SeriesReport> {
    let g = PcSubgroup::closure(id, gens)?;
    let derived: Vec<usize> = g.derived_series().iter().map(PcSubgroup::order_exponent).collect();
    let lower: Vec<usize> = g.lower_central_series().iter().map(PcSubgroup::order_exponent).collect();
    Ok(SeriesReport {
        n: id.n(),
        p: id.p(),
        order_exponent: g.order_exponent(),
        order: g.order().to_string(),
        derived_length: derived.len() - 1,
        derived_series: derived,
        nilpotency_class: lower.len() - 1,
        lower_central_series: lower,
        version: WITNESS_VERSION.into(),
    })
}
