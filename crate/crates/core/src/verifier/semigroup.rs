use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gd::build_table;
use crate::par::Exec;
use crate::verifier::{Report, Tally};
use crate::word_problem::Solver;
use crate::words::{positive_words_up_to, Word};

/// Most same-exponent pairs the freeness check will decide.
pub const FREE_SEMIGROUP_PAIR_CAP: u64 = 50_000_000;

/// All positive words of length `1..=max_len` are pairwise different
/// elements. Words with different exponent vectors are told apart without a
/// search; inside each bucket every pair is decided.
pub fn check_free_semigroup(d: usize, max_len: usize, exec: Exec) -> Result<Report> {
    if max_len == 0 {
        return Err(Error::BudgetExceeded("word length bound must be at least 1".into()));
    }
    let table = build_table(d)?;
    let words = positive_words_up_to(table.alphabet(), max_len);
    let mut buckets: BTreeMap<Vec<i64>, Vec<&Word>> = BTreeMap::new();
    for w in &words {
        buckets.entry(w.exponent_vector().counts().to_vec()).or_default().push(w);
    }
    let pairs: u64 = buckets.values().map(|b| (b.len() as u64) * (b.len() as u64 - 1) / 2).sum();
    if pairs > FREE_SEMIGROUP_PAIR_CAP {
        return Err(Error::BudgetExceeded(format!(
            "{pairs} same-exponent pairs exceed the cap of {FREE_SEMIGROUP_PAIR_CAP}"
        )));
    }
    let solver = Solver::auto(&table);
    let buckets: Vec<Vec<&Word>> = buckets.into_values().collect();
    // per bucket: number of classes and the first coincidence found
    let classes = exec.try_map(&buckets, |bucket| -> Result<(u64, Option<String>)> {
        let mut reps: Vec<&Word> = Vec::new();
        let mut clash = None;
        for &w in bucket {
            let mut matched = false;
            for &r in &reps {
                if solver.are_equal(w, r)? {
                    clash.get_or_insert_with(|| format!("{w} = {r}"));
                    matched = true;
                    break;
                }
            }
            if !matched {
                reps.push(w);
            }
        }
        Ok((reps.len() as u64, clash))
    })?;

    let expected: u64 = (1..=max_len as u32).map(|n| (d as u64).pow(n)).sum();
    let distinct: u64 = classes.iter().map(|(n, _)| n).sum();
    let mut tally = Tally::new("free_semigroup");
    for (_, clash) in &classes {
        tally.expect(clash.is_none(), || clash.clone().unwrap_or_default());
    }
    tally.expect(distinct == expected, || format!("{distinct} distinct elements, expected {expected}"));
    tally.record("words", words.len() as u64);
    tally.record("distinct", distinct);
    tally.record("expected", expected);
    tally.record("pairs_decided", pairs);
    tally.note(format!("{distinct} distinct of {} words up to length {max_len}", words.len()));
    Ok(tally.finish())
}
