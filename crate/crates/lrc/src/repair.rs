//! Erasure patterns, repair plans, and the planners that produce them.
//!
//! Every symbol sits on m axis-aligned lines, and each line sums to zero,
//! so a symbol can be rebuilt from the other r symbols of any line that
//! has no further erasure on it. Parallel repair demands such a line for
//! every erased symbol simultaneously; sequential repair may order the
//! repairs so that later steps read earlier results. The greedy sequential
//! planner below always succeeds when at most 2^m − 1 symbols are erased,
//! and reports the residual set when it cannot finish.

use std::collections::BTreeSet;

use crate::coord::Coord;
use crate::error::{Error, Result};
use crate::params::CodeParams;
use crate::word::{BitWord, MaskedWord};

/// Membership bitset over coordinate ranks.
#[derive(Debug, Clone)]
pub(crate) struct RankSet {
    words: Vec<u64>,
}

impl RankSet {
    pub fn new(n: usize) -> Self {
        Self {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn contains(&self, rank: usize) -> bool {
        self.words[rank / 64] >> (rank % 64) & 1 == 1
    }

    pub fn insert(&mut self, rank: usize) {
        self.words[rank / 64] |= 1 << (rank % 64);
    }

    pub fn remove(&mut self, rank: usize) {
        self.words[rank / 64] &= !(1 << (rank % 64));
    }
}

/// A set of erased coordinates, stored by rank. Ordering is
/// lexicographic over the sorted ranks, the crate's canonical pattern
/// order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct ErasurePattern {
    ranks: BTreeSet<usize>,
}

impl ErasurePattern {
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn contains_rank(&self, rank: usize) -> bool {
        self.ranks.contains(&rank)
    }

    /// Erased ranks, ascending.
    pub fn ranks(&self) -> impl Iterator<Item = usize> + '_ {
        self.ranks.iter().copied()
    }
}

impl CodeParams {
    /// Builds a pattern from coordinates, deduplicating.
    pub fn pattern(&self, coords: &[Coord]) -> Result<ErasurePattern> {
        let mut ranks = BTreeSet::new();
        for a in coords {
            ranks.insert(self.coord_rank(a)?);
        }
        Ok(ErasurePattern { ranks })
    }

    /// Builds a pattern directly from ranks.
    pub fn pattern_from_ranks(&self, it: impl IntoIterator<Item = usize>) -> Result<ErasurePattern> {
        let mut ranks = BTreeSet::new();
        for rank in it {
            if rank >= self.n() {
                return Err(Error::InvalidCoord(format!(
                    "rank {rank} out of range for code length {}",
                    self.n()
                )));
            }
            ranks.insert(rank);
        }
        Ok(ErasurePattern { ranks })
    }

    /// Parses whitespace-separated coordinate tokens.
    pub fn parse_pattern(&self, text: &str) -> Result<ErasurePattern> {
        let mut ranks = BTreeSet::new();
        for token in text.split_whitespace() {
            ranks.insert(self.coord_rank(&self.parse_coord(token)?)?);
        }
        Ok(ErasurePattern { ranks })
    }

    /// Erased coordinates in rank order.
    pub fn pattern_coords(&self, e: &ErasurePattern) -> Vec<Coord> {
        e.ranks()
            .map(|rank| self.coord_at(rank).expect("rank in range"))
            .collect()
    }

    /// One line of whitespace-separated coordinate tokens, rank order.
    pub fn pattern_line(&self, e: &ErasurePattern) -> String {
        self.pattern_coords(e)
            .iter()
            .map(|a| self.coord_token(a))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// One repair: read the `sources`, XOR them, write the `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairStep {
    target: Coord,
    axis: usize,
    sources: Vec<Coord>,
}

impl RepairStep {
    pub fn target(&self) -> &Coord {
        &self.target
    }

    /// 1-based axis of the line the sources lie on.
    pub fn axis(&self) -> usize {
        self.axis
    }

    /// The r line coordinates read by this step, in rank order.
    pub fn sources(&self) -> &[Coord] {
        &self.sources
    }
}

/// An ordered sequence of repair steps.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RepairPlan {
    steps: Vec<RepairStep>,
}

impl RepairPlan {
    pub fn steps(&self) -> &[RepairStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Text form, one step per line:
    /// `repair <coord> axis <i> from <coord> <coord> …`.
    pub fn to_text(&self, p: &CodeParams) -> String {
        let mut out = String::new();
        for step in &self.steps {
            out.push_str("repair ");
            out.push_str(&p.coord_token(&step.target));
            out.push_str(&format!(" axis {} from", step.axis));
            for s in &step.sources {
                out.push(' ');
                out.push_str(&p.coord_token(s));
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text form. Each step's sources must be exactly the line
    /// through the target on the stated axis, minus the target.
    pub fn parse(p: &CodeParams, text: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| {
                Error::Parse(format!("plan line {}: {what}", lineno + 1))
            };
            let mut tokens = line.split_whitespace();
            if tokens.next() != Some("repair") {
                return Err(bad("expected \"repair <coord> axis <i> from …\""));
            }
            let target = p.parse_coord(
                tokens.next().ok_or_else(|| bad("missing target"))?,
            )?;
            if tokens.next() != Some("axis") {
                return Err(bad("expected \"axis\" after target"));
            }
            let axis: usize = tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad("missing or malformed axis number"))?;
            if tokens.next() != Some("from") {
                return Err(bad("expected \"from\" after axis"));
            }
            let mut sources = Vec::new();
            for token in tokens {
                sources.push(p.parse_coord(token)?);
            }
            sources.sort();
            let mut expected: Vec<Coord> = p.line_coords(&target, axis)?;
            expected.retain(|c| *c != target);
            if sources != expected {
                return Err(bad(
                    "sources are not the target's line on the stated axis",
                ));
            }
            steps.push(RepairStep {
                target,
                axis,
                sources,
            });
        }
        Ok(Self { steps })
    }

    /// Checks the plan against a pattern: targets are distinct erased
    /// coordinates, and every source read is either outside the pattern or
    /// repaired by an earlier step.
    pub fn validate(&self, p: &CodeParams, e: &ErasurePattern) -> Result<()> {
        let mut pending = RankSet::new(p.n());
        for rank in e.ranks() {
            pending.insert(rank);
        }
        for (idx, step) in self.steps.iter().enumerate() {
            let target = p.coord_rank(&step.target)?;
            if !pending.contains(target) {
                return Err(Error::PlanTarget {
                    step: idx + 1,
                    target: p.coord_token(&step.target),
                });
            }
            for source in &step.sources {
                let source_rank = p.coord_rank(source)?;
                if pending.contains(source_rank) {
                    return Err(Error::PlanOrder {
                        step: idx + 1,
                        target: p.coord_token(&step.target),
                        reads: p.coord_token(source),
                    });
                }
            }
            pending.remove(target);
        }
        Ok(())
    }
}

/// Result of sequential planning: either a plan covering the whole
/// pattern, or the longest plan the greedy rule could build plus the
/// coordinates it could not reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanOutcome {
    Complete(RepairPlan),
    Stuck {
        plan: RepairPlan,
        remaining: Vec<Coord>,
    },
}

impl PlanOutcome {
    pub fn is_complete(&self) -> bool {
        matches!(self, Self::Complete(_))
    }

    pub fn plan(&self) -> &RepairPlan {
        match self {
            Self::Complete(plan) | Self::Stuck { plan, .. } => plan,
        }
    }
}

/// Per-symbol result of the simultaneous-repair check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelCheck {
    witnesses: Vec<(Coord, usize)>,
    blocked: Vec<Coord>,
}

impl ParallelCheck {
    /// True when every erased symbol has a fully live line.
    pub fn is_repairable(&self) -> bool {
        self.blocked.is_empty()
    }

    /// For each repairable symbol, the smallest axis whose line is live.
    /// Rank order.
    pub fn witnesses(&self) -> &[(Coord, usize)] {
        &self.witnesses
    }

    /// Symbols with an erasure on every line through them. Rank order.
    pub fn blocked(&self) -> &[Coord] {
        &self.blocked
    }
}

impl CodeParams {
    /// The m line repair sets of a symbol, one per axis in axis order.
    /// Pairwise disjoint, each of size r.
    pub fn repair_sets(&self, a: &Coord) -> Result<Vec<Vec<Coord>>> {
        (1..=self.m() as usize)
            .map(|axis| {
                let mut line = self.line_coords(a, axis)?;
                line.retain(|c| c != a);
                Ok(line)
            })
            .collect()
    }

    /// Smallest free axis for the rank-`rank` symbol: the first axis whose
    /// line meets `erased` only at the symbol itself.
    pub(crate) fn free_axis(&self, rank: usize, erased: &RankSet) -> Option<usize> {
        let base = self.r() as usize + 1;
        let mut stride = self.n();
        for axis in 1..=self.m() as usize {
            stride /= base;
            let line_start = rank - self.digit_at(rank, axis) as usize * stride;
            let free = (0..base)
                .map(|d| line_start + d * stride)
                .all(|other| other == rank || !erased.contains(other));
            if free {
                return Some(axis);
            }
        }
        None
    }

    /// Greedy sequential planning: repeatedly repair the smallest-rank
    /// erased symbol that has a live line, preferring the smallest axis.
    /// Always completes when `e.len() <= t`.
    pub fn plan_sequential(&self, e: &ErasurePattern) -> PlanOutcome {
        let mut erased = RankSet::new(self.n());
        let mut queue: Vec<usize> = e.ranks().collect();
        for &rank in &queue {
            erased.insert(rank);
        }
        let mut steps = Vec::with_capacity(queue.len());
        loop {
            if queue.is_empty() {
                return PlanOutcome::Complete(RepairPlan { steps });
            }
            let found = queue
                .iter()
                .enumerate()
                .find_map(|(pos, &rank)| {
                    self.free_axis(rank, &erased).map(|axis| (pos, rank, axis))
                });
            let Some((pos, rank, axis)) = found else {
                let remaining = queue
                    .iter()
                    .map(|&rank| self.coord_at(rank).expect("rank in range"))
                    .collect();
                return PlanOutcome::Stuck {
                    plan: RepairPlan { steps },
                    remaining,
                };
            };
            let target = self.coord_at(rank).expect("rank in range");
            let mut sources = self.line_coords(&target, axis).expect("axis in range");
            sources.retain(|c| *c != target);
            steps.push(RepairStep {
                target,
                axis,
                sources,
            });
            erased.remove(rank);
            queue.remove(pos);
        }
    }

    /// Applies a plan to a masked word. Fails if a step reads a position
    /// that is still erased, if erasures remain afterwards, or if the
    /// repaired word is not a codeword.
    pub fn execute_plan(&self, w: &MaskedWord, plan: &RepairPlan) -> Result<BitWord> {
        if w.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                actual: w.len(),
            });
        }
        let mut work = w.clone();
        for (idx, step) in plan.steps().iter().enumerate() {
            let target = self.coord_rank(&step.target)?;
            if !work.is_erased(target) {
                return Err(Error::PlanTarget {
                    step: idx + 1,
                    target: self.coord_token(&step.target),
                });
            }
            let mut bit = false;
            for source in &step.sources {
                let source_rank = self.coord_rank(source)?;
                match work.known(source_rank) {
                    Some(b) => bit ^= b,
                    None => {
                        return Err(Error::PlanOrder {
                            step: idx + 1,
                            target: self.coord_token(&step.target),
                            reads: self.coord_token(source),
                        })
                    }
                }
            }
            work.restore(target, bit);
        }
        match work.to_word() {
            Some(word) => {
                if self.is_codeword(&word)? {
                    Ok(word)
                } else {
                    Err(Error::InconsistentWord)
                }
            }
            None => Err(Error::PlanIncomplete {
                remaining: work.erased_count(),
            }),
        }
    }

    /// Checks whether all erased symbols can be repaired simultaneously
    /// from live symbols only.
    pub fn parallel_repairable(&self, e: &ErasurePattern) -> ParallelCheck {
        let mut erased = RankSet::new(self.n());
        for rank in e.ranks() {
            erased.insert(rank);
        }
        let mut witnesses = Vec::new();
        let mut blocked = Vec::new();
        for rank in e.ranks() {
            let a = self.coord_at(rank).expect("rank in range");
            match self.free_axis(rank, &erased) {
                Some(axis) => witnesses.push((a, axis)),
                None => blocked.push(a),
            }
        }
        ParallelCheck { witnesses, blocked }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coord(p: &CodeParams, digits: &[u32]) -> Coord {
        p.coord(digits).unwrap()
    }

    fn pattern(p: &CodeParams, tokens: &str) -> ErasurePattern {
        p.parse_pattern(tokens).unwrap()
    }

    #[test]
    fn repair_sets_per_axis() {
        let p = CodeParams::new(2, 6).unwrap();
        let a = coord(&p, &[0, 1, 2, 2, 2, 2]);
        let sets = p.repair_sets(&a).unwrap();
        assert_eq!(
            sets[3],
            [[0, 1, 2, 0, 2, 2], [0, 1, 2, 1, 2, 2]].map(|d| coord(&p, &d))
        );

        let p = CodeParams::new(2, 2).unwrap();
        let sets = p.repair_sets(&coord(&p, &[0, 0])).unwrap();
        assert_eq!(sets.len(), 2);
        assert_eq!(sets[0], [[1, 0], [2, 0]].map(|d| coord(&p, &d)));
        assert_eq!(sets[1], [[0, 1], [0, 2]].map(|d| coord(&p, &d)));
        assert!(sets[0].iter().all(|c| !sets[1].contains(c)));

        let p = CodeParams::new(2, 1).unwrap();
        let sets = p.repair_sets(&coord(&p, &[2])).unwrap();
        assert_eq!(sets, vec![[[0], [1]].map(|d| coord(&p, &d)).to_vec()]);
    }

    #[test]
    fn pattern_parsing() {
        let p = CodeParams::new(2, 3).unwrap();
        let e = pattern(&p, "020 120 010 110 021 121 011");
        assert_eq!(e.len(), 7);
        assert_eq!(
            p.pattern_line(&e),
            "010 011 020 021 110 120 121"
        );
        assert!(p.parse_pattern("030").is_err());
        assert!(p.parse_pattern("").unwrap().is_empty());
        // Duplicates collapse.
        assert_eq!(p.parse_pattern("010 010").unwrap().len(), 1);
    }

    #[test]
    fn greedy_plan_covers_worked_example() {
        let p = CodeParams::new(2, 3).unwrap();
        let e = pattern(&p, "020 120 010 110 021 121 011");
        let outcome = p.plan_sequential(&e);
        let PlanOutcome::Complete(plan) = outcome else {
            panic!("expected a complete plan");
        };
        assert_eq!(
            plan.to_text(&p),
            "repair 011 axis 1 from 111 211\n\
             repair 010 axis 3 from 011 012\n\
             repair 020 axis 2 from 000 010\n\
             repair 021 axis 2 from 001 011\n\
             repair 110 axis 1 from 010 210\n\
             repair 120 axis 1 from 020 220\n\
             repair 121 axis 1 from 021 221\n"
        );
        plan.validate(&p, &e).unwrap();
        let parsed = RepairPlan::parse(&p, &plan.to_text(&p)).unwrap();
        assert_eq!(parsed, plan);
    }

    #[test]
    fn empty_pattern_plans_empty() {
        let p = CodeParams::new(2, 2).unwrap();
        let outcome = p.plan_sequential(&ErasurePattern::default());
        assert_eq!(outcome, PlanOutcome::Complete(RepairPlan::default()));
    }

    #[test]
    fn subcube_pattern_sticks() {
        let p = CodeParams::new(2, 2).unwrap();
        let e = pattern(&p, "00 01 10 11");
        let PlanOutcome::Stuck { plan, remaining } = p.plan_sequential(&e) else {
            panic!("expected the planner to get stuck");
        };
        assert!(plan.is_empty());
        assert_eq!(remaining.len(), 4);
        assert_eq!(
            remaining,
            [[0, 0], [0, 1], [1, 0], [1, 1]].map(|d| coord(&p, &d))
        );
    }

    #[test]
    fn plan_parse_rejects_malformed_lines() {
        let p = CodeParams::new(2, 3).unwrap();
        assert!(RepairPlan::parse(&p, "repair 011 axis 1 from 111 211").is_ok());
        // Sources may arrive in any order.
        assert!(RepairPlan::parse(&p, "repair 011 axis 1 from 211 111").is_ok());
        for text in [
            "fix 011 axis 1 from 111 211",
            "repair 011 axis 4 from 111 211",
            "repair 011 axis 1 from 111",
            "repair 011 axis 1 from 111 212",
            "repair 011 axis 1 from 111 211 311",
            "repair 011 axis x from 111 211",
            "repair 011 1 from 111 211",
        ] {
            assert!(RepairPlan::parse(&p, text).is_err(), "accepted {text:?}");
        }
    }

    #[test]
    fn validate_enforces_step_order() {
        let p = CodeParams::new(2, 3).unwrap();
        let e = pattern(&p, "020 120 010 110 021 121 011");
        // 010's axis-3 sources include 011, erased until repaired first.
        let early = RepairPlan::parse(&p, "repair 010 axis 3 from 011 012").unwrap();
        assert!(matches!(
            early.validate(&p, &e),
            Err(Error::PlanOrder { step: 1, .. })
        ));
        let ok = RepairPlan::parse(
            &p,
            "repair 011 axis 1 from 111 211\nrepair 010 axis 3 from 011 012",
        )
        .unwrap();
        ok.validate(&p, &e).unwrap();
        // Repairing a live coordinate is rejected.
        let live = RepairPlan::parse(&p, "repair 000 axis 1 from 100 200").unwrap();
        assert!(matches!(
            live.validate(&p, &e),
            Err(Error::PlanTarget { step: 1, .. })
        ));
    }

    #[test]
    fn execute_restores_the_codeword() {
        let p = CodeParams::new(2, 3).unwrap();
        let word = p.encode(&"10110100".parse().unwrap()).unwrap();
        let e = pattern(&p, "020 120 010 110 021 121 011");
        let masked = MaskedWord::new(&word, e.ranks()).unwrap();
        let PlanOutcome::Complete(plan) = p.plan_sequential(&e) else {
            panic!("expected a complete plan");
        };
        assert_eq!(p.execute_plan(&masked, &plan).unwrap(), word);
    }

    #[test]
    fn execute_rejects_out_of_order_reads() {
        let p = CodeParams::new(2, 3).unwrap();
        let word = p.encode(&"10110100".parse().unwrap()).unwrap();
        let e = pattern(&p, "010 011");
        let masked = MaskedWord::new(&word, e.ranks()).unwrap();
        let plan = RepairPlan::parse(&p, "repair 010 axis 3 from 011 012").unwrap();
        assert!(matches!(
            p.execute_plan(&masked, &plan),
            Err(Error::PlanOrder { .. })
        ));
        // A partial plan leaves an erasure behind.
        let plan = RepairPlan::parse(&p, "repair 011 axis 1 from 111 211").unwrap();
        assert!(matches!(
            p.execute_plan(&masked, &plan),
            Err(Error::PlanIncomplete { remaining: 1 })
        ));
    }

    #[test]
    fn execute_single_parity_completion() {
        let p = CodeParams::new(2, 1).unwrap();
        let masked: MaskedWord = "1?1".parse().unwrap();
        let PlanOutcome::Complete(plan) =
            p.plan_sequential(&pattern(&p, "1"))
        else {
            panic!("expected a complete plan");
        };
        assert_eq!(p.execute_plan(&masked, &plan).unwrap().to_string(), "101");
    }

    #[test]
    fn execute_empty_plan_checks_word() {
        let p = CodeParams::new(2, 2).unwrap();
        let word = p.encode(&"1010".parse().unwrap()).unwrap();
        let masked = MaskedWord::new(&word, []).unwrap();
        assert_eq!(
            p.execute_plan(&masked, &RepairPlan::default()).unwrap(),
            word
        );
        let mut corrupt = word.clone();
        corrupt.flip(0);
        let masked = MaskedWord::new(&corrupt, []).unwrap();
        assert!(matches!(
            p.execute_plan(&masked, &RepairPlan::default()),
            Err(Error::InconsistentWord)
        ));
    }

    #[test]
    fn parallel_check_reports_witnesses_and_blocks() {
        let p = CodeParams::new(2, 2).unwrap();
        let check = p.parallel_repairable(&pattern(&p, "00 12"));
        assert!(check.is_repairable());
        assert_eq!(
            check.witnesses(),
            [
                (coord(&p, &[0, 0]), 1),
                (coord(&p, &[1, 2]), 1)
            ]
        );

        // Both lines through (0,0) are hit.
        let check = p.parallel_repairable(&pattern(&p, "00 10 01"));
        assert!(!check.is_repairable());
        assert_eq!(check.blocked(), [coord(&p, &[0, 0])]);
        assert_eq!(
            check.witnesses(),
            [
                (coord(&p, &[0, 1]), 1),
                (coord(&p, &[1, 0]), 2)
            ]
        );

        assert!(p
            .parallel_repairable(&ErasurePattern::default())
            .is_repairable());

        // The worked seven-erasure example is sequentially but not
        // simultaneously repairable.
        let p = CodeParams::new(2, 3).unwrap();
        let e = pattern(&p, "020 120 010 110 021 121 011");
        assert!(!p.parallel_repairable(&e).is_repairable());
        assert!(p.plan_sequential(&e).is_complete());
    }
}
