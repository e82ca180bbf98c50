//! Executable checks over `G_d`: recursions, witness elements, exponent
//! laws, freeness and the rigid-stabiliser structure for `d = 3`.
//!
//! Each check returns one [`Report`]. Group-element claims are decided with
//! the word-problem solver, never by comparing word strings.

mod laws;
mod rist;
mod semigroup;
mod witness;

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::gd::build_table;
use crate::par::Exec;
use crate::tree::{Permutation, RecursionTable, WreathRecursion};
use crate::word_problem::Solver;
use crate::words::{random_word, Alphabet, Word};

pub use laws::{
    check_abelianization, check_exponent_laws, check_exponent_sum_law, check_orders, check_parity_and_even_d,
    check_section_tables, check_strategy_agreement,
};
pub use rist::{check_hk_and_branch, HkClass};
pub use semigroup::{check_free_semigroup, FREE_SEMIGROUP_PAIR_CAP};
pub use witness::{
    check_branch_witnesses, check_fractal_witnesses, check_lemma_chains, check_noncontracting_witness,
    check_transitivity,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub check_id: String,
    pub status: Status,
    /// Witness text. A failing report names at least one counterexample.
    pub detail: String,
    /// Named counts such as orbit sizes or orders.
    pub payload: Vec<(String, u64)>,
}

impl Report {
    pub fn skip(check_id: &str, reason: impl Into<String>) -> Self {
        Report { check_id: check_id.to_string(), status: Status::Skip, detail: reason.into(), payload: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn value(&self, key: &str) -> Option<u64> {
        self.payload.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    /// `<id>\t<STATUS>\t<detail>` with tabs and newlines in the detail flattened.
    pub fn tsv_line(&self) -> String {
        let detail: String = self.detail.chars().map(|c| if c == '\t' || c == '\n' { ' ' } else { c }).collect();
        format!("{}\t{}\t{}", self.check_id, self.status, detail)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tsv_line())
    }
}

/// Accumulates assertions for one check and turns them into a [`Report`].
pub(crate) struct Tally {
    id: &'static str,
    checked: u64,
    failures: Vec<String>,
    notes: Vec<String>,
    payload: Vec<(String, u64)>,
}

const SHOWN_FAILURES: usize = 4;

impl Tally {
    pub(crate) fn new(id: &'static str) -> Self {
        Tally { id, checked: 0, failures: Vec::new(), notes: Vec::new(), payload: Vec::new() }
    }

    pub(crate) fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub(crate) fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub(crate) fn record(&mut self, key: &str, value: u64) {
        self.payload.push((key.to_string(), value));
    }

    pub(crate) fn finish(self) -> Report {
        let status = if self.failures.is_empty() { Status::Pass } else { Status::Fail };
        let mut parts = Vec::new();
        if self.failures.is_empty() {
            parts.push(format!("{} assertions hold", self.checked));
        } else {
            parts.push(format!("{} of {} assertions failed", self.failures.len(), self.checked));
            for f in self.failures.iter().take(SHOWN_FAILURES) {
                parts.push(f.clone());
            }
            if self.failures.len() > SHOWN_FAILURES {
                parts.push(format!("... {} more", self.failures.len() - SHOWN_FAILURES));
            }
        }
        parts.extend(self.notes);
        Report { check_id: self.id.to_string(), status, detail: parts.join("; "), payload: self.payload }
    }
}

/// Seeded generator for one check. The stream keeps checks independent of
/// the order they run in.
pub(crate) fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) fn sample_words(alphabet: Alphabet, count: usize, max_len: usize, seed: u64, stream: u64) -> Vec<Word> {
    let mut rng = rng_for(seed, stream);
    (0..count).map(|_| random_word(alphabet, max_len, &mut rng)).collect()
}

/// Wreath recursion given slot-wise: `slots` lists `(zero-based slot, word)`,
/// every other section is trivial.
pub(crate) fn sparse_sections(alphabet: Alphabet, slots: &[(usize, Word)]) -> Vec<Word> {
    let mut out = vec![Word::identity(alphabet); alphabet.d()];
    for (x, w) in slots {
        out[*x] = w.clone();
    }
    out
}

/// Compares a computed wreath recursion with an expected one, slot by slot
/// as group elements. Returns a description of the first mismatch.
pub(crate) fn wreath_mismatch(
    solver: &Solver<'_>,
    got: &WreathRecursion,
    sections: &[Word],
    perm: Option<&Permutation>,
) -> Result<Option<String>> {
    if let Some(p) = perm {
        if &got.perm != p {
            return Ok(Some(format!("permutation is {} not {p} (computed {got})", got.perm)));
        }
    }
    for (x, (g, e)) in got.sections.iter().zip(sections).enumerate() {
        if !solver.are_equal(g, e)? {
            return Ok(Some(format!("section at {} is {g} not {e} (computed {got})", x + 1)));
        }
    }
    Ok(None)
}

/// Knobs for [`run_suite_with`].
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Longest random word drawn by sampling checks.
    pub max_len: usize,
    /// Random words per sampling check.
    pub samples: usize,
    /// Longest positive word for the freeness enumeration.
    pub free_len: usize,
    /// Bound for order probes.
    pub order_bound: u64,
    pub exec: Exec,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, max_len: 10, samples: 1000, free_len: 6, order_bound: 128, exec: Exec::default() }
    }
}

/// Check ids in the order [`run_suite`] reports them.
pub const CHECK_IDS: [&str; 14] = [
    "exponent_laws",
    "section_tables",
    "exponent_sum_law",
    "abelianization",
    "lemma_chains",
    "noncontracting",
    "transitivity",
    "fractal_witnesses",
    "branch_witnesses",
    "free_semigroup",
    "hk_and_branch",
    "parity_and_even_d",
    "orders",
    "strategy_agreement",
];

/// Largest level whose vertex count stays within `limit`.
fn transitivity_level(d: usize, limit: usize) -> usize {
    let mut k = 0;
    let mut n = 1usize;
    while n * d <= limit {
        n *= d;
        k += 1;
    }
    k
}

pub fn run_suite(d: usize, seed: u64, max_len: usize) -> Result<Vec<Report>> {
    run_suite_with(d, SuiteConfig { seed, max_len, ..SuiteConfig::default() })
}

/// Runs every registered check for `G_d`. Checks that do not apply to this
/// `d` come back as `SKIP`. A check that errors out becomes a `FAIL` whose
/// detail is the error.
pub fn run_suite_with(d: usize, cfg: SuiteConfig) -> Result<Vec<Report>> {
    let table = build_table(d)?;
    let alphabet = table.alphabet();
    let odd = d % 2 == 1;
    let max_len = cfg.max_len.max(1);
    let mut out = Vec::with_capacity(CHECK_IDS.len());
    for &id in CHECK_IDS.iter() {
        let skip = |why: &str| Ok(Report::skip(id, why));
        let result: Result<Report> = match id {
            "exponent_laws" => {
                let mut sample = sample_words(alphabet, cfg.samples, max_len, cfg.seed, 1);
                sample.push(Word::identity(alphabet));
                check_exponent_laws(&table, &sample, cfg.exec)
            }
            "section_tables" => check_section_tables(d),
            "exponent_sum_law" if odd => {
                let words = sample_words(alphabet, cfg.samples, max_len, cfg.seed, 2);
                check_exponent_sum_law(&table, &words, cfg.exec)
            }
            "abelianization" if odd => check_abelianization(d, cfg.samples, max_len, cfg.seed, cfg.exec),
            "lemma_chains" if odd => check_lemma_chains(d),
            "noncontracting" => check_noncontracting_witness(d, cfg.order_bound.min(64)),
            "transitivity" if odd => check_transitivity(&table, transitivity_level(d, 1000)),
            "fractal_witnesses" if odd => check_fractal_witnesses(d),
            "branch_witnesses" if odd => check_branch_witnesses(d),
            "free_semigroup" if d == 3 => check_free_semigroup(d, cfg.free_len, cfg.exec),
            "hk_and_branch" if d == 3 => {
                let sample = sample_words(alphabet, 100, max_len, cfg.seed, 3);
                check_hk_and_branch(&table, 1, &sample, cfg.exec)
            }
            "parity_and_even_d" if d == 3 || d == 4 => check_parity_and_even_d(cfg.seed, cfg.samples, max_len),
            "orders" => check_orders(d, cfg.order_bound),
            "strategy_agreement" if odd => {
                let words = sample_words(alphabet, cfg.samples, max_len, cfg.seed, 4);
                check_strategy_agreement(&table, &words, cfg.exec)
            }
            "parity_and_even_d" => skip("applies to d = 3 and d = 4"),
            "free_semigroup" | "hk_and_branch" => skip("applies to d = 3 only"),
            _ => skip("applies to odd d only"),
        };
        let mut report = result.unwrap_or_else(|e| Report {
            check_id: id.to_string(),
            status: Status::Fail,
            detail: format!("error: {e}"),
            payload: Vec::new(),
        });
        if report.status != Status::Skip && !report.detail.contains("seed") {
            report.detail.push_str(&format!("; seed {}", cfg.seed));
        }
        out.push(report);
    }
    Ok(out)
}

/// Solver used when a check must not lean on the exponent-sum shortcut,
/// for instance when the shortcut's own premise is what is being tested.
pub(crate) fn generic_solver(table: &RecursionTable) -> Solver<'_> {
    Solver::new(table, crate::word_problem::Strategy::Generic).expect("generic applies to every table")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_reports_first_failures() {
        let mut t = Tally::new("demo");
        t.expect(true, || unreachable!());
        for i in 0..6 {
            t.expect(false, || format!("bad {i}"));
        }
        let r = t.finish();
        assert_eq!(r.status, Status::Fail);
        assert!(r.detail.starts_with("6 of 7 assertions failed; bad 0"));
        assert!(r.detail.contains("... 2 more"));
    }

    #[test]
    fn tsv_flattens_detail() {
        let r = Report::skip("x", "a\tb\nc");
        assert_eq!(r.tsv_line(), "x\tSKIP\ta b c");
    }

    #[test]
    fn transitivity_levels() {
        assert_eq!(transitivity_level(3, 1000), 6);
        assert_eq!(transitivity_level(5, 1000), 4);
        assert_eq!(transitivity_level(7, 1000), 3);
    }

    #[test]
    fn suite_has_one_line_per_check() {
        let cfg = SuiteConfig { samples: 50, free_len: 3, order_bound: 16, ..SuiteConfig::default() };
        for d in [4, 5] {
            let reports = run_suite_with(d, cfg).unwrap();
            let ids: Vec<&str> = reports.iter().map(|r| r.check_id.as_str()).collect();
            assert_eq!(ids, CHECK_IDS);
        }
        let even = run_suite_with(4, cfg).unwrap();
        assert!(even.iter().all(|r| r.status != Status::Fail), "{even:#?}");
        assert_eq!(even.iter().find(|r| r.check_id == "branch_witnesses").unwrap().status, Status::Skip);
    }
}
