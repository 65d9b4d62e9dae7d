//! Verification oracles: exhaustive and randomized certification of the
//! erasure tolerance, a repair-set search that is independent of the
//! line structure, the parallel-repair tolerance, and a brute-force
//! minimum distance.
//!
//! The tolerance check relies on one fact: a pattern E is sequentially
//! repairable if some erased symbol has a live line, because repairing it
//! leaves a strictly smaller pattern of the same kind. So certifying
//! "every pattern of size ≤ t has a one-step repair" certifies full
//! sequential repair up to t.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coord::Coord;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::params::CodeParams;
use crate::repair::{ErasurePattern, RankSet};
use crate::word::BitWord;

/// Default ceiling on enumerated or sampled patterns.
pub const DEFAULT_PATTERN_BUDGET: u64 = 100_000_000;

/// Default sample count per pattern size in randomized mode.
pub const DEFAULT_SAMPLES_PER_SIZE: u64 = 100_000;

/// How a verification run selects erasure patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every pattern of every size up to the maximum, exactly once.
    Exhaustive,
    /// Seeded uniform samples, `samples_per_size` at each size.
    Random { samples_per_size: u64, seed: u64 },
}

/// Settings for [`verify_elrc`].
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub mode: VerifyMode,
    /// Largest pattern size checked.
    pub max_size: usize,
    /// Refuse runs that would visit more patterns than this.
    pub budget: u64,
    /// Worker threads; `None` uses the global default.
    pub jobs: Option<usize>,
}

impl VerifyOptions {
    pub fn exhaustive(max_size: usize) -> Self {
        Self {
            mode: VerifyMode::Exhaustive,
            max_size,
            budget: DEFAULT_PATTERN_BUDGET,
            jobs: None,
        }
    }

    pub fn random(max_size: usize, samples_per_size: u64, seed: u64) -> Self {
        Self {
            mode: VerifyMode::Random {
                samples_per_size,
                seed,
            },
            max_size,
            budget: DEFAULT_PATTERN_BUDGET,
            jobs: None,
        }
    }
}

/// Outcome of a verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    params: CodeParams,
    mode: VerifyMode,
    max_size: usize,
    patterns_checked: u64,
    failures: Vec<ErasurePattern>,
}

impl VerificationReport {
    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn mode(&self) -> VerifyMode {
        self.mode
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    pub fn patterns_checked(&self) -> u64 {
        self.patterns_checked
    }

    /// Patterns with no one-step repair, sorted by rank sequence.
    pub fn failures(&self) -> &[ErasurePattern] {
        &self.failures
    }

    pub fn is_failure_free(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    /// Line-oriented: a header `r m mode max_size seed samples` (with `-`
    /// for fields the mode does not use), a `checked` count, then one
    /// `FAIL` line per counterexample.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (mode, seed, samples) = match self.mode {
            VerifyMode::Exhaustive => ("exhaustive", "-".into(), "-".into()),
            VerifyMode::Random {
                samples_per_size,
                seed,
            } => ("random", seed.to_string(), samples_per_size.to_string()),
        };
        writeln!(
            f,
            "{} {} {mode} {} {seed} {samples}",
            self.params.r(),
            self.params.m(),
            self.max_size
        )?;
        writeln!(f, "checked {}", self.patterns_checked)?;
        for e in &self.failures {
            writeln!(f, "FAIL {}", self.params.pattern_line(e))?;
        }
        Ok(())
    }
}

/// Lexicographic fixed-size subsets of `0..n`, yielded as sorted index
/// slices.
struct Combinations {
    n: usize,
    indices: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    fn new(n: usize, size: usize) -> Self {
        Self {
            n,
            indices: (0..size).collect(),
            started: false,
            done: size > n,
        }
    }

    fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.indices);
        }
        let size = self.indices.len();
        let mut pos = size;
        loop {
            if pos == 0 {
                self.done = true;
                return None;
            }
            pos -= 1;
            if self.indices[pos] < self.n - size + pos {
                self.indices[pos] += 1;
                for later in pos + 1..size {
                    self.indices[later] = self.indices[later - 1] + 1;
                }
                return Some(&self.indices);
            }
        }
    }
}

/// C(n, s), capped: any value that would exceed `cap` comes back as
/// `cap + 1`.
fn binomial_capped(n: u64, s: u64, cap: u128) -> u128 {
    if s > n {
        return 0;
    }
    let s = s.min(n - s);
    let mut value: u128 = 1;
    for i in 0..s {
        let Some(scaled) = value.checked_mul((n - i) as u128) else {
            return cap + 1;
        };
        value = scaled / (i as u128 + 1);
        if value > cap {
            return cap + 1;
        }
    }
    value
}

/// True if some erased symbol has a line free of other erasures.
fn one_step_repairable(p: &CodeParams, ranks: &[usize], erased: &RankSet) -> bool {
    ranks.iter().any(|&rank| p.free_axis(rank, erased).is_some())
}

fn run_with_jobs<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(work()),
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::InvalidParams(format!("cannot start {jobs} workers: {e}")))?;
            Ok(pool.install(work))
        }
    }
}

/// Certifies the erasure tolerance by checking, for each examined pattern,
/// that at least one erased symbol has a fully live line. Exhaustive mode
/// covers every pattern of size 1 through `max_size`; randomized mode
/// spot-checks with seeded samples. Failure lists are deterministic:
/// sorted by rank sequence, independent of worker count.
pub fn verify_elrc(p: &CodeParams, opts: &VerifyOptions) -> Result<VerificationReport> {
    let n = p.n();
    if opts.max_size > n {
        return Err(Error::InvalidParams(format!(
            "max_size {} exceeds code length {n}",
            opts.max_size
        )));
    }
    let (patterns_checked, mut failures) = match opts.mode {
        VerifyMode::Exhaustive => {
            let required: u128 = (1..=opts.max_size as u64)
                .map(|s| binomial_capped(n as u64, s, u64::MAX as u128))
                .sum();
            if required > opts.budget as u128 {
                return Err(Error::BudgetExceeded {
                    budget: opts.budget,
                    required: required.min(u64::MAX as u128) as u64,
                });
            }
            run_with_jobs(opts.jobs, || exhaustive_scan(p, opts.max_size))?
        }
        VerifyMode::Random {
            samples_per_size,
            seed,
        } => {
            let required = samples_per_size.saturating_mul(opts.max_size as u64);
            if required > opts.budget {
                return Err(Error::BudgetExceeded {
                    budget: opts.budget,
                    required,
                });
            }
            run_with_jobs(opts.jobs, || random_scan(p, opts.max_size, samples_per_size, seed))?
        }
    };
    failures.sort();
    failures.dedup();
    Ok(VerificationReport {
        params: *p,
        mode: opts.mode,
        max_size: opts.max_size,
        patterns_checked,
        failures,
    })
}

fn exhaustive_scan(p: &CodeParams, max_size: usize) -> (u64, Vec<ErasurePattern>) {
    let n = p.n();
    let mut checked = 0u64;
    let mut failures = Vec::new();
    for size in 1..=max_size {
        // Patterns split by smallest rank; workers then enumerate the
        // remaining size-1 ranks above it, so aggregation in `first`
        // order is deterministic.
        let per_first: Vec<(u64, Vec<ErasurePattern>)> = (0..=n - size)
            .into_par_iter()
            .map(|first| {
                let mut local_checked = 0u64;
                let mut local_failures = Vec::new();
                let mut erased = RankSet::new(n);
                erased.insert(first);
                let mut ranks = vec![first; size];
                let mut combos = Combinations::new(n - first - 1, size - 1);
                while let Some(rest) = combos.next() {
                    for (slot, &offset) in ranks[1..].iter_mut().zip(rest) {
                        *slot = first + 1 + offset;
                    }
                    for &rank in &ranks[1..] {
                        erased.insert(rank);
                    }
                    local_checked += 1;
                    if !one_step_repairable(p, &ranks, &erased) {
                        local_failures.push(
                            p.pattern_from_ranks(ranks.iter().copied())
                                .expect("ranks in range"),
                        );
                    }
                    for &rank in &ranks[1..] {
                        erased.remove(rank);
                    }
                }
                (local_checked, local_failures)
            })
            .collect();
        for (local_checked, local_failures) in per_first {
            checked += local_checked;
            failures.extend(local_failures);
        }
    }
    (checked, failures)
}

fn random_scan(
    p: &CodeParams,
    max_size: usize,
    samples_per_size: u64,
    seed: u64,
) -> (u64, Vec<ErasurePattern>) {
    let n = p.n();
    // One generator stream per size keeps the sampled sequence stable no
    // matter how sizes are distributed over workers.
    let per_size: Vec<(u64, Vec<ErasurePattern>)> = (1..=max_size)
        .into_par_iter()
        .map(|size| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(size as u64);
            let mut checked = 0u64;
            let mut failures = Vec::new();
            let mut erased = RankSet::new(n);
            for _ in 0..samples_per_size {
                let ranks = rand::seq::index::sample(&mut rng, n, size).into_vec();
                for &rank in &ranks {
                    erased.insert(rank);
                }
                checked += 1;
                if !one_step_repairable(p, &ranks, &erased) {
                    failures.push(
                        p.pattern_from_ranks(ranks.iter().copied())
                            .expect("ranks in range"),
                    );
                }
                for &rank in &ranks {
                    erased.remove(rank);
                }
            }
            (checked, failures)
        })
        .collect();
    let mut checked = 0u64;
    let mut failures = Vec::new();
    for (local_checked, local_failures) in per_size {
        checked += local_checked;
        failures.extend(local_failures);
    }
    (checked, failures)
}

/// True if the symbols in `set` determine the target symbol in every
/// codeword: some GF(2) combination of parity checks has support inside
/// `set ∪ {target}` and hits the target.
pub fn repair_set_feasible(p: &CodeParams, target: &Coord, set: &[Coord]) -> Result<bool> {
    let target_rank = p.coord_rank(target)?;
    let mut set_ranks = Vec::with_capacity(set.len());
    for c in set {
        set_ranks.push(p.coord_rank(c)?);
    }
    set_ranks.sort_unstable();
    set_ranks.dedup();
    if set_ranks.binary_search(&target_rank).is_ok() {
        return Err(Error::InvalidCoord(format!(
            "target {} cannot be in its own repair set",
            p.coord_token(target)
        )));
    }
    let h = p.build_parity_check();
    Ok(feasible(h.matrix(), target_rank, &set_ranks))
}

/// Core feasibility test: is there a row combination `y` of `h` with
/// `y·h` zero outside `set ∪ {target}` and one at `target`? Decided by
/// consistency of the transposed system restricted to the constrained
/// columns.
fn feasible(h: &BitMatrix, target_rank: usize, set_ranks: &[usize]) -> bool {
    let (checks, n) = (h.rows(), h.cols());
    let mut system = BitMatrix::zero(n - set_ranks.len(), checks);
    let mut rhs = vec![false; n - set_ranks.len()];
    let mut row = 0;
    for col in 0..n {
        if set_ranks.binary_search(&col).is_ok() {
            continue;
        }
        for check in 0..checks {
            system.set(row, check, h.get(check, col));
        }
        rhs[row] = col == target_rank;
        row += 1;
    }
    system.is_consistent(&rhs)
}

/// Searches for the smallest repair set of `target` inside `live`,
/// trying subset sizes 1 through r and, within a size, candidates in
/// lexicographic rank order. Unlike the planner this admits any linear
/// dependency, not only lines.
pub fn general_repair_set_oracle(
    p: &CodeParams,
    target: &Coord,
    live: &[Coord],
) -> Result<Option<Vec<Coord>>> {
    let target_rank = p.coord_rank(target)?;
    let mut live_ranks = Vec::with_capacity(live.len());
    for c in live {
        live_ranks.push(p.coord_rank(c)?);
    }
    live_ranks.sort_unstable();
    live_ranks.dedup();
    if live_ranks.binary_search(&target_rank).is_ok() {
        return Err(Error::InvalidCoord(format!(
            "target {} is listed as live",
            p.coord_token(target)
        )));
    }
    let h = p.build_parity_check();
    let mut candidate = Vec::new();
    for size in 1..=(p.r() as usize).min(live_ranks.len()) {
        let mut combos = Combinations::new(live_ranks.len(), size);
        while let Some(chosen) = combos.next() {
            candidate.clear();
            candidate.extend(chosen.iter().map(|&i| live_ranks[i]));
            if feasible(h.matrix(), target_rank, &candidate) {
                return Ok(Some(
                    candidate
                        .iter()
                        .map(|&rank| p.coord_at(rank).expect("rank in range"))
                        .collect(),
                ));
            }
        }
    }
    Ok(None)
}

/// Result of the exhaustive parallel-repair scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelTolerance {
    /// Largest size where every pattern repairs simultaneously.
    pub tolerance: usize,
    /// First (in rank order) pattern one size larger with a blocked
    /// symbol; absent only if no size fails.
    pub counterexample: Option<ErasurePattern>,
}

/// Finds the largest `s` such that every pattern of `s` erasures can be
/// repaired simultaneously. Blocking is monotone under supersets, so the
/// scan walks sizes upward and stops at the first failure.
pub fn parallel_tolerance(p: &CodeParams, budget: u64) -> Result<ParallelTolerance> {
    let n = p.n();
    let mut spent: u128 = 0;
    for size in 1..=n {
        spent += binomial_capped(n as u64, size as u64, u64::MAX as u128);
        if spent > budget as u128 {
            return Err(Error::BudgetExceeded {
                budget,
                required: spent.min(u64::MAX as u128) as u64,
            });
        }
        let mut erased = RankSet::new(n);
        let mut combos = Combinations::new(n, size);
        while let Some(ranks) = combos.next() {
            for &rank in ranks {
                erased.insert(rank);
            }
            let blocked = ranks
                .iter()
                .any(|&rank| p.free_axis(rank, &erased).is_none());
            if blocked {
                let counterexample = p
                    .pattern_from_ranks(ranks.iter().copied())
                    .expect("ranks in range");
                return Ok(ParallelTolerance {
                    tolerance: size - 1,
                    counterexample: Some(counterexample),
                });
            }
            for &rank in ranks {
                erased.remove(rank);
            }
        }
    }
    Ok(ParallelTolerance {
        tolerance: n,
        counterexample: None,
    })
}

/// Minimum nonzero codeword weight by enumerating all 2^k codewords,
/// walking information words in Gray-code order so each step is one
/// basis XOR.
pub fn min_distance_bruteforce(p: &CodeParams) -> Result<usize> {
    let k = p.k();
    if k > 20 {
        return Err(Error::BudgetExceeded {
            budget: 1 << 20,
            required: if k >= 64 { u64::MAX } else { 1u64 << k },
        });
    }
    let basis: Vec<BitWord> = (0..k)
        .map(|j| {
            let mut info = BitWord::zero(k);
            info.set(j, true);
            p.encode(&info).expect("unit info word")
        })
        .collect();
    let mut word = BitWord::zero(p.n());
    let mut min = usize::MAX;
    for i in 1u64..1 << k {
        word.xor_assign(&basis[i.trailing_zeros() as usize]);
        min = min.min(word.weight());
    }
    Ok(min)
}
