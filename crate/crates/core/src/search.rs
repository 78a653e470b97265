//! Iterative deepening search for the empty chain.
//!
//! The depth of a derivation is its number of extensions. At each chain the
//! search tries every reduction (by ascending A-entry index) before every
//! extension (by clause, then literal position). Removal is applied as soon
//! as the chain starts with an A-entry.

use std::collections::{HashMap, HashSet};

use crate::chain::{Chain, ClauseSet, Entry, Lemma};
use crate::derivation::{DerivationTrace, Step, StepKind};
use crate::io;
use crate::term::{FreshVars, Literal, Substitution, Symbol};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LemmaPolicy {
    Off,
    /// Lemmas are written to the trace but never used.
    #[default]
    Record,
    /// Short lemmas also become extension clauses.
    Use,
}

/// Which lemmas stay available under [`LemmaPolicy::Use`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LemmaReuse {
    /// Every lemma emitted anywhere in the search, including abandoned
    /// branches and earlier deepening iterations. Traces may then use
    /// lemmas they never derive.
    Global,
    /// Only lemmas emitted earlier on the current branch, so every lemma a
    /// trace uses is derived in the trace itself.
    #[default]
    Path,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub depth_start: usize,
    pub depth_max: usize,
    pub lemma_policy: LemmaPolicy,
    pub lemma_max_len: usize,
    pub lemma_pool_cap: usize,
    pub lemma_reuse: LemmaReuse,
    /// Skip goals that already occur as an A-literal of the chain.
    pub prune_identical_ancestor: bool,
    /// On ground inputs, close a goal by its first reduction and try no
    /// alternatives.
    pub commit_ground_reductions: bool,
    pub start_clause: Option<usize>,
    /// Budget on applied inferences.
    pub step_limit: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            depth_start: 1,
            depth_max: 12,
            lemma_policy: LemmaPolicy::Record,
            lemma_max_len: 2,
            lemma_pool_cap: 1024,
            lemma_reuse: LemmaReuse::Path,
            prune_identical_ancestor: false,
            commit_ground_reductions: true,
            start_clause: None,
            step_limit: 10_000_000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub extensions: u64,
    pub reductions: u64,
    pub removals: u64,
    pub lemmas_emitted: u64,
    /// Inferences applied, the quantity bounded by `step_limit`.
    pub steps: u64,
    pub iterations: usize,
    /// Depth bound of the last iteration.
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Proof {
        trace: DerivationTrace,
        lemmas: Vec<Lemma>,
        stats: SearchStats,
    },
    Exhausted {
        depth: usize,
        stats: SearchStats,
    },
    BudgetExceeded {
        stats: SearchStats,
    },
}

impl SearchOutcome {
    pub fn is_proof(&self) -> bool {
        matches!(self, SearchOutcome::Proof { .. })
    }

    pub fn trace(&self) -> Option<&DerivationTrace> {
        match self {
            SearchOutcome::Proof { trace, .. } => Some(trace),
            _ => None,
        }
    }

    pub fn stats(&self) -> &SearchStats {
        match self {
            SearchOutcome::Proof { stats, .. }
            | SearchOutcome::Exhausted { stats, .. }
            | SearchOutcome::BudgetExceeded { stats } => stats,
        }
    }
}

struct OutOfBudget;

type Key = (bool, Symbol);

fn key(lit: &Literal) -> Key {
    (lit.positive, lit.predicate.clone())
}

/// Clause positions by literal sign and predicate.
#[derive(Default)]
struct LiteralIndex {
    map: HashMap<Key, Vec<(usize, usize)>>,
}

impl LiteralIndex {
    fn add(&mut self, index: usize, literals: &[Literal]) {
        for (pos, lit) in literals.iter().enumerate() {
            self.map.entry(key(lit)).or_default().push((index, pos));
        }
    }

    /// Positions whose literal may be complementary to `goal`.
    fn candidates(&self, goal: &Literal) -> &[(usize, usize)] {
        self.map
            .get(&(!goal.positive, goal.predicate.clone()))
            .map_or(&[], Vec::as_slice)
    }
}

#[derive(Default)]
struct LemmaPool {
    store: Vec<Lemma>,
    active: Vec<bool>,
    seen: HashSet<Vec<Literal>>,
    index: LiteralIndex,
    live: usize,
}

impl LemmaPool {
    fn insert(&mut self, lemma: &Lemma, config: &SearchConfig) {
        if lemma.len() > config.lemma_max_len {
            return;
        }
        let sorted = lemma.sorted_literals();
        if self.seen.contains(&sorted) {
            return;
        }
        if self.live >= config.lemma_pool_cap {
            // Keep the shortest: evict the longest live lemma if it is longer.
            let longest = (0..self.store.len())
                .filter(|&i| self.active[i])
                .max_by_key(|&i| (self.store[i].len(), i));
            match longest {
                Some(i) if self.store[i].len() > lemma.len() => {
                    self.active[i] = false;
                    self.live -= 1;
                }
                _ => return,
            }
        }
        self.seen.insert(sorted);
        self.index.add(self.store.len(), lemma.literals());
        self.store.push(lemma.clone());
        self.active.push(true);
        self.live += 1;
    }

    fn truncate(&mut self, len: usize) {
        for i in len..self.store.len() {
            self.seen.remove(&self.store[i].sorted_literals());
            if self.active[i] {
                self.live -= 1;
            }
        }
        self.store.truncate(len);
        self.active.truncate(len);
        for v in self.index.map.values_mut() {
            v.retain(|&(i, _)| i < len);
        }
    }
}

fn complementary(a: &Literal, b: &Literal) -> bool {
    a.positive != b.positive && a.predicate == b.predicate && a.args == b.args
}

/// Ground chain without scopes: the part of the state that decides whether
/// the empty chain is reachable.
fn shape(chain: &Chain) -> Vec<(bool, Literal)> {
    chain
        .entries()
        .iter()
        .map(|e| (e.is_ancestor(), e.literal().clone()))
        .collect()
}

struct Prover<'a> {
    gamma: &'a ClauseSet,
    config: &'a SearchConfig,
    ground: bool,
    index: LiteralIndex,
    pool: LemmaPool,
    trace: Vec<Step>,
    fresh: FreshVars,
    stats: SearchStats,
    cutoff: bool,
    /// Ground states known to fail with the given number of extensions left.
    failed: HashMap<Vec<(bool, Literal)>, usize>,
}

impl Prover<'_> {
    fn tick(&mut self) -> Result<(), OutOfBudget> {
        self.stats.steps += 1;
        if self.stats.steps > self.config.step_limit {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }

    /// Extensions still needed at least: one per B-literal with no
    /// complementary candidate among the A-entries to its right.
    fn lower_bound(&self, chain: &Chain) -> usize {
        let entries = chain.entries();
        let mut need = 0;
        for (i, e) in entries.iter().enumerate() {
            if let Entry::B(l) = e {
                let closable = entries[i + 1..].iter().any(|a| match a {
                    Entry::A(m, _) if self.ground => complementary(l, m),
                    Entry::A(m, _) => m.positive != l.positive && m.predicate == l.predicate,
                    Entry::B(_) => false,
                });
                need += usize::from(!closable);
            }
        }
        need
    }

    fn emit(&mut self, lemma: Lemma) -> Option<Lemma> {
        self.stats.lemmas_emitted += 1;
        match self.config.lemma_policy {
            LemmaPolicy::Off => None,
            LemmaPolicy::Record => Some(lemma),
            LemmaPolicy::Use => {
                self.pool.insert(&lemma, self.config);
                Some(lemma)
            }
        }
    }

    fn clause_literals(&self, index: usize) -> &[Literal] {
        match self.gamma.get(index) {
            Some(c) => c.literals(),
            None => self.pool.store[index - self.gamma.len()].literals(),
        }
    }

    /// Explores from `chain`, which the last trace step produced.
    fn search(&mut self, chain: Chain, used: usize, bound: usize) -> Result<bool, OutOfBudget> {
        let trace_mark = self.trace.len();
        let pool_mark = self.pool.store.len();
        let found = self.explore(chain, used, bound)?;
        if !found {
            self.trace.truncate(trace_mark);
            if self.config.lemma_reuse == LemmaReuse::Path {
                self.pool.truncate(pool_mark);
            }
        }
        Ok(found)
    }

    fn explore(&mut self, mut chain: Chain, used: usize, bound: usize) -> Result<bool, OutOfBudget> {
        while let Some(Entry::A(..)) = chain.entries().first() {
            self.tick()?;
            let (next, lemma) = chain.remove().expect("chain starts with an A-entry");
            self.stats.removals += 1;
            let lemma = self.emit(lemma);
            self.trace.push(Step {
                kind: StepKind::Removal,
                chain: next.clone(),
                lemma,
            });
            chain = next;
        }
        if chain.is_empty() {
            return Ok(true);
        }
        let left = bound - used;
        if self.lower_bound(&chain) > left {
            self.cutoff = true;
            return Ok(false);
        }
        let memo = self.ground && self.config.lemma_policy != LemmaPolicy::Use;
        if memo {
            if let Some(&r) = self.failed.get(&shape(&chain)).filter(|&&r| r >= left) {
                self.cutoff |= r != usize::MAX;
                return Ok(false);
            }
        }
        let cutoff_before = std::mem::replace(&mut self.cutoff, false);
        let found = self.expand(&chain, used, bound)?;
        // Only a failure that no depth bound caused holds at every depth.
        if memo && !found {
            let r = if self.cutoff { left } else { usize::MAX };
            let slot = self.failed.entry(shape(&chain)).or_insert(0);
            *slot = (*slot).max(r);
        }
        self.cutoff |= cutoff_before;
        Ok(found)
    }

    fn expand(&mut self, chain: &Chain, used: usize, bound: usize) -> Result<bool, OutOfBudget> {
        let goal = chain.goal().expect("acceptable non-empty chain").clone();
        if self.config.prune_identical_ancestor && chain.ancestors().any(|(l, _, _)| *l == goal) {
            return Ok(false);
        }

        let ancestors: Vec<(usize, Literal)> = chain
            .ancestors()
            .map(|(l, _, left)| (left, l.clone()))
            .filter(|(_, l)| l.positive != goal.positive && l.predicate == goal.predicate)
            .collect();
        for (a_index, _) in ancestors {
            let (next, mgu) = if self.ground {
                match chain.reduce_prop(a_index) {
                    Ok(next) => (next, Substitution::new()),
                    Err(_) => continue,
                }
            } else {
                match chain.reduce_fo(a_index) {
                    Ok(r) => r,
                    Err(_) => continue,
                }
            };
            self.tick()?;
            self.stats.reductions += 1;
            self.trace.push(Step::new(
                StepKind::Reduction { a_index, mgu },
                next.clone(),
            ));
            if self.search(next, used, bound)? {
                return Ok(true);
            }
            self.trace.pop();
            if self.ground && self.config.commit_ground_reductions {
                return Ok(false);
            }
        }

        if used == bound {
            self.cutoff = true;
            return Ok(false);
        }
        let mut candidates = self.index.candidates(&goal).to_vec();
        let offset = self.gamma.len();
        candidates.extend(
            self.pool
                .index
                .candidates(&goal)
                .iter()
                .filter(|&&(i, _)| self.pool.active[i])
                .map(|&(i, p)| (i + offset, p)),
        );
        for (clause, position) in candidates {
            if self.ground && !complementary(&goal, &self.clause_literals(clause)[position]) {
                continue;
            }
            let saved = self.fresh;
            let c = match self.gamma.get(clause) {
                Some(c) => c.clone(),
                None => self.pool.store[clause - offset].clone(),
            };
            let (next, mgu) = if self.ground {
                match chain.extend_prop(&c, position) {
                    Ok(next) => (next, Substitution::new()),
                    Err(_) => continue,
                }
            } else {
                match chain.extend_fo(&c, position, &mut self.fresh) {
                    Ok(ext) => (ext.chain, ext.mgu),
                    Err(_) => {
                        self.fresh = saved;
                        continue;
                    }
                }
            };
            self.tick()?;
            self.stats.extensions += 1;
            self.trace.push(Step::new(
                StepKind::Extension {
                    clause,
                    position,
                    mgu,
                },
                next.clone(),
            ));
            if self.search(next, used + 1, bound)? {
                return Ok(true);
            }
            self.trace.pop();
            self.fresh = saved;
        }
        Ok(false)
    }

    /// Renumbers pool lemmas used by the proof as assumed lemmas, in order
    /// of first use.
    fn finish(&self, steps: Vec<Step>) -> DerivationTrace {
        let n = self.gamma.len();
        let mut assumed: Vec<Lemma> = Vec::new();
        let mut renumber: HashMap<usize, usize> = HashMap::new();
        let steps = steps
            .into_iter()
            .map(|mut step| {
                if let StepKind::Extension { clause, .. } = &mut step.kind {
                    if *clause >= n {
                        let j = *renumber.entry(*clause).or_insert_with(|| {
                            assumed.push(self.pool.store[*clause - n].clone());
                            assumed.len() - 1
                        });
                        *clause = n + j;
                    }
                }
                step
            })
            .collect();
        DerivationTrace {
            problem_digest: io::digest(self.gamma),
            assumed,
            steps,
        }
    }
}

/// Searches for a derivation of the empty chain from `gamma`.
pub fn prove(gamma: &ClauseSet, config: &SearchConfig) -> SearchOutcome {
    let mut prover = Prover {
        gamma,
        config,
        ground: gamma.is_ground(),
        index: LiteralIndex::default(),
        pool: LemmaPool::default(),
        trace: Vec::new(),
        fresh: FreshVars::new(),
        stats: SearchStats::default(),
        cutoff: false,
        failed: HashMap::new(),
    };
    for (i, c) in gamma.iter().enumerate() {
        prover.index.add(i, c.literals());
    }
    let starts: Vec<usize> = match config.start_clause {
        Some(i) if i < gamma.len() => vec![i],
        Some(_) => Vec::new(),
        None => (0..gamma.len()).collect(),
    };
    let depth_start = config.depth_start.min(config.depth_max);
    for bound in depth_start..=config.depth_max {
        prover.stats.iterations += 1;
        prover.stats.depth = bound;
        prover.cutoff = false;
        for &start in &starts {
            let chain = gamma.clauses()[start].to_chain();
            prover.fresh = FreshVars::new();
            prover.trace = vec![Step::new(StepKind::Start { clause: start }, chain.clone())];
            match prover.search(chain, 0, bound) {
                Err(OutOfBudget) => {
                    return SearchOutcome::BudgetExceeded {
                        stats: prover.stats,
                    }
                }
                Ok(true) => {
                    let steps = std::mem::take(&mut prover.trace);
                    let trace = prover.finish(steps);
                    let lemmas = trace.lemmas().cloned().collect();
                    return SearchOutcome::Proof {
                        trace,
                        lemmas,
                        stats: prover.stats,
                    };
                }
                Ok(false) => {}
            }
        }
        // Nothing was cut off, so a larger bound explores the same space.
        if !prover.cutoff {
            break;
        }
    }
    SearchOutcome::Exhausted {
        depth: config.depth_max,
        stats: prover.stats,
    }
}

/// Runs [`prove`] once per start clause.
pub fn prove_from_each_start(gamma: &ClauseSet, config: &SearchConfig) -> Vec<SearchOutcome> {
    (0..gamma.len())
        .map(|i| {
            prove(
                gamma,
                &SearchConfig {
                    start_clause: Some(i),
                    ..config.clone()
                },
            )
        })
        .collect()
}
