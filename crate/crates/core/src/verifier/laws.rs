use crate::error::Result;
use crate::gd::{build_table, gen, ElementCatalog};
use crate::par::Exec;
use crate::tree::{Permutation, RecursionTable};
use crate::verifier::{generic_solver, rng_for, sparse_sections, wreath_mismatch, Report, Tally};
use crate::word_problem::{OrderResult, Solver, Strategy};
use crate::words::{parse_word, random_word, Alphabet, ExponentVector, Word};

fn exponent_law_failures(table: &RecursionTable, w: &Word) -> Vec<String> {
    let d = table.d();
    let wr = table.wreath(w);
    let s = w.exponent_vector();
    let t = wr.sections.iter().fold(ExponentVector::zero(d), |acc, x| &acc + &x.exponent_vector());
    let mut bad = Vec::new();
    if t.total() != 2 * s.total() {
        bad.push(format!("{w}: section exponent total {} is not twice {}", t.total(), s.total()));
    }
    for i in 0..d {
        let prev = (i + d - 1) % d;
        if t[i] != s[i] + s[prev] {
            bad.push(format!("{w}: shift law fails at a{} (t = {t}, s = {s})", i + 1));
        }
    }
    if d % 2 == 1 {
        let half = t.total() / 2;
        for i in 0..d {
            let skip: i64 = (1..=(d - 1) / 2).map(|j| t[(i + 2 * j) % d]).sum();
            if half - skip != s[i] {
                bad.push(format!("{w}: inversion gives {} for a{} but exponent is {}", half - skip, i + 1, s[i]));
            }
        }
    }
    if d == 3 {
        let closed = [(t[0] + t[1] - t[2]) / 2, (t[1] + t[2] - t[0]) / 2, (t[2] + t[0] - t[1]) / 2];
        if closed != [s[0], s[1], s[2]] {
            bad.push(format!("{w}: closed forms give {closed:?}, exponents are {s}"));
        }
    }
    if w.is_positive() {
        let total_len: usize = wr.sections.iter().map(Word::len).sum();
        if total_len != 2 * w.len() {
            bad.push(format!("{w}: sections have total length {total_len}, expected {}", 2 * w.len()));
        }
    }
    bad
}

/// Exponent bookkeeping between a word and its first-level sections:
/// doubling of the total, the shift law `t_i = s_i + s_{i-1}`, recovery of
/// `s` from `t` for odd `d` (and the closed forms for `d = 3`), and length
/// doubling for positive words.
pub fn check_exponent_laws(table: &RecursionTable, sample: &[Word], exec: Exec) -> Result<Report> {
    let mut tally = Tally::new("exponent_laws");
    for w in sample {
        table.alphabet().check(w.alphabet())?;
    }
    let results = exec.map(sample, |w| exponent_law_failures(table, w));
    for bad in results {
        match bad.into_iter().next() {
            None => tally.expect(true, String::new),
            Some(first) => tally.expect(false, || first),
        }
    }
    tally.record("words", sample.len() as u64);
    Ok(tally.finish())
}

/// The two-letter wreath recursions of `G_3`: `(word, sections, permutation)`.
const G3_PAIRS: [(&str, [&str; 3], &str); 9] = [
    ("a b", ["a b", "b", "c"], "(1 3 2)"),
    ("b c", ["a", "b c", "c"], "(1 3 2)"),
    ("c a", ["a", "b", "c a"], "(1 3 2)"),
    ("b a", ["a", "b", "c b"], "(1 2 3)"),
    ("c b", ["a c", "b", "c"], "(1 2 3)"),
    ("a c", ["a", "b a", "c"], "(1 2 3)"),
    ("a a", ["a b", "b a", "e"], "()"),
    ("b b", ["e", "b c", "c b"], "()"),
    ("c c", ["a c", "e", "c a"], "()"),
];

/// Expected sections of `a_i a_j` and `a_i^-1 a_j` (1-based `i`, `j`), as
/// `(slot, word)` lists with zero-based slots.
fn expected_pair_sections(alphabet: Alphabet, i: i64, j: i64, inverse_first: bool) -> Vec<(usize, Word)> {
    let d = alphabet.d() as i64;
    let slot = |k: i64| alphabet.wrap(k - 1);
    let a = |k: i64| gen(alphabet, k);
    let prod = |u: Word, v: Word| u.concat(&v).expect("single alphabet");
    let jd = alphabet.wrap(j - 1) as i64 + 1;
    let next = alphabet.wrap(i) as i64 + 1;
    let prev = alphabet.wrap(i - 2) as i64 + 1;
    let id = alphabet.wrap(i - 1) as i64 + 1;
    match (inverse_first, jd) {
        (false, x) if x == id => vec![(slot(i), prod(a(i), a(i + 1))), (slot(i + 1), prod(a(i + 1), a(i)))],
        (false, x) if x == next => {
            vec![(slot(i), prod(a(i), a(i + 1))), (slot(i + 1), a(i + 1)), (slot(i + 2), a(i + 2))]
        }
        (false, x) if x == prev => vec![(slot(i), a(i)), (slot(i - 1), a(i - 1)), (slot(i + 1), prod(a(i + 1), a(i)))],
        (false, _) => [i, i + 1, j, j + 1].iter().map(|&l| (slot(l), a(l))).collect(),
        (true, x) if x == next => vec![(slot(i + 1), a(i).inverse()), (slot(i + 2), a(i + 2))],
        (true, x) if x == prev => vec![(slot(i - 1), a(i - 1)), (slot(i), a(i + 1).inverse())],
        (true, _) => {
            debug_assert!(d > 3);
            vec![(slot(i), a(i + 1).inverse()), (slot(i + 1), a(i).inverse()), (slot(j), a(j)), (slot(j + 1), a(j + 1))]
        }
    }
}

/// Two-letter wreath recursions against the case analysis: `pq` and `p^-1 q`
/// for every pair of generators (and the explicit table when `d = 3`), plus
/// the bound `|a_i^-1 a_j|_l| <= 1`.
pub fn check_section_tables(d: usize) -> Result<Report> {
    let table = build_table(d)?;
    let alphabet = table.alphabet();
    let solver = Solver::auto(&table);
    let mut tally = Tally::new("section_tables");
    if d == 3 {
        for (word, secs, perm) in G3_PAIRS {
            let w = parse_word(word, alphabet)?;
            let secs = secs.iter().map(|s| parse_word(s, alphabet)).collect::<Result<Vec<_>>>()?;
            let perm = Permutation::parse(perm, 3)?;
            let miss = wreath_mismatch(&solver, &table.wreath(&w), &secs, Some(&perm))?;
            tally.expect(miss.is_none(), || format!("{word}: {}", miss.unwrap_or_default()));
        }
    }
    let di = d as i64;
    for i in 1..=di {
        for j in 1..=di {
            let w = gen(alphabet, i).concat(&gen(alphabet, j))?;
            let expected = sparse_sections(alphabet, &expected_pair_sections(alphabet, i, j, false));
            let miss = wreath_mismatch(&solver, &table.wreath(&w), &expected, None)?;
            tally.expect(miss.is_none(), || format!("a{i} a{j}: {}", miss.unwrap_or_default()));
            if i == j {
                continue;
            }
            let w = gen(alphabet, i).inverse().concat(&gen(alphabet, j))?;
            let wr = table.wreath(&w);
            let expected = sparse_sections(alphabet, &expected_pair_sections(alphabet, i, j, true));
            let miss = wreath_mismatch(&solver, &wr, &expected, None)?;
            tally.expect(miss.is_none(), || format!("a{i}' a{j}: {}", miss.unwrap_or_default()));
            let longest = wr.sections.iter().map(Word::len).max().unwrap_or(0);
            tally.expect(longest <= 1, || format!("a{i}' a{j} has a section of length {longest}"));
        }
    }
    tally.record("entries", entry_count(d));
    Ok(tally.finish())
}

fn entry_count(d: usize) -> u64 {
    let table3 = if d == 3 { 9 } else { 0 };
    (table3 + d * d + d * (d - 1)) as u64
}

/// Every identity word among `words` has zero exponent vector. Decided with
/// the generic strategy, so the law under test is never assumed.
pub fn check_exponent_sum_law(table: &RecursionTable, words: &[Word], exec: Exec) -> Result<Report> {
    let solver = generic_solver(table);
    let mut tally = Tally::new("exponent_sum_law");
    let decided = exec.try_map(words, |w| solver.is_identity(w).map(|dec| dec.is_identity))?;
    let mut identities = 0u64;
    for (w, is_id) in words.iter().zip(decided) {
        if is_id {
            identities += 1;
            let v = w.exponent_vector();
            tally.expect(v.is_zero(), || format!("{w} is the identity with exponent vector {v}"));
        }
    }
    tally.record("words", words.len() as u64);
    tally.record("identity_words", identities);
    tally.note(format!("{} words, {identities} identities", words.len()));
    Ok(tally.finish())
}

/// Random pairs with different exponent vectors are different elements.
pub fn check_abelianization(d: usize, pairs: usize, max_len: usize, seed: u64, exec: Exec) -> Result<Report> {
    let table = build_table(d)?;
    let alphabet = table.alphabet();
    let solver = generic_solver(&table);
    let mut rng = rng_for(seed, 11);
    let mut sample = Vec::with_capacity(pairs);
    while sample.len() < pairs {
        let u = random_word(alphabet, max_len, &mut rng);
        let v = random_word(alphabet, max_len, &mut rng);
        if u.exponent_vector() != v.exponent_vector() {
            sample.push((u, v));
        }
    }
    let equal = exec.try_map(&sample, |(u, v)| solver.are_equal(u, v))?;
    let mut tally = Tally::new("abelianization");
    for ((u, v), eq) in sample.iter().zip(equal) {
        tally.expect(!eq, || format!("{u} = {v} although exponent vectors differ"));
    }
    tally.record("pairs", pairs as u64);
    tally.note(format!("{pairs} pairs, seed {seed}"));
    Ok(tally.finish())
}

/// `G_3`: random words landing in the first-level stabiliser have even
/// reduced length. `G_4`: the relator `w4` is trivial although its exponent
/// vector is not.
pub fn check_parity_and_even_d(seed: u64, samples: usize, max_len: usize) -> Result<Report> {
    let t3 = build_table(3)?;
    let mut tally = Tally::new("parity_and_even_d");
    let mut rng = rng_for(seed, 12);
    let mut found = 0usize;
    let mut drawn = 0u64;
    let attempts = 1000 * samples.max(1) as u64;
    while found < samples && drawn < attempts {
        drawn += 1;
        let w = random_word(t3.alphabet(), max_len, &mut rng);
        if t3.first_level_perm(&w).is_identity() {
            found += 1;
            tally.expect(w.len() % 2 == 0, || format!("{w} fixes the first level but has odd length {}", w.len()));
        }
    }
    tally.expect(found == samples, || format!("only {found} of {samples} stabiliser words in {drawn} draws"));
    tally.record("stabiliser_words", found as u64);
    tally.record("draws", drawn);

    let t4 = build_table(4)?;
    let w4 = ElementCatalog::new(4)?.get("w4")?.clone();
    let v = w4.exponent_vector();
    let dec = Solver::auto(&t4).is_identity(&w4)?;
    tally.expect(dec.is_identity, || format!("w4 = {w4} is not the identity"));
    tally.expect(v.counts() == [-1, 1, -1, 1], || format!("w4 has exponent vector {v}"));
    tally.note(format!("{found} stabiliser words from {drawn} draws; w4 trivial with exponent vector {v}"));
    Ok(tally.finish())
}

/// Order probes: `xi_1` has order 3 in `G_3` and 2 for larger odd `d`, while
/// `a_1`, `a_1...a_d` and `h_d` show no finite order up to `bound`.
pub fn check_orders(d: usize, bound: u64) -> Result<Report> {
    let table = build_table(d)?;
    let catalog = ElementCatalog::new(d)?;
    let solver = Solver::auto(&table);
    let mut tally = Tally::new("orders");
    if d % 2 == 1 {
        let xi = catalog.get("xi_1")?;
        let want = if d == 3 { 3 } else { 2 };
        let got = solver.order_probe(xi, bound.max(want))?;
        tally.expect(got == OrderResult::Finite(want), || format!("xi_1 gives {got}, expected finite {want}"));
        if let OrderResult::Finite(n) = got {
            tally.record("xi_order", n);
        }
    }
    let a1 = gen(table.alphabet(), 1);
    let h_d = catalog.indexed("h", d)?;
    let h_name = format!("h_{d}");
    for (name, w) in [("a1", &a1), ("g", catalog.get("g")?), (h_name.as_str(), h_d)] {
        let got = solver.order_probe(w, bound)?;
        tally.expect(got == OrderResult::UnknownBeyond(bound), || format!("{name} gives {got}"));
    }
    tally.record("bound", bound);
    Ok(tally.finish())
}

/// Generic search and the exponent-sum shortcut return the same bit.
pub fn check_strategy_agreement(table: &RecursionTable, words: &[Word], exec: Exec) -> Result<Report> {
    let generic = generic_solver(table);
    let shortcut = Solver::new(table, Strategy::OddShortcut)?;
    let pairs = exec.try_map(words, |w| -> Result<(bool, bool)> {
        Ok((generic.is_identity(w)?.is_identity, shortcut.is_identity(w)?.is_identity))
    })?;
    let mut tally = Tally::new("strategy_agreement");
    let mut identities = 0u64;
    for (w, (g, s)) in words.iter().zip(pairs) {
        identities += g as u64;
        tally.expect(g == s, || format!("{w}: generic says {g}, shortcut says {s}"));
    }
    tally.record("words", words.len() as u64);
    tally.record("identity_words", identities);
    Ok(tally.finish())
}
