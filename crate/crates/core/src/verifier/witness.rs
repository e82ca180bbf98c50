use crate::error::{Error, Result};
use crate::gd::{
    beta, branch_conjugator, build_table, fractal_s, fractal_s1, gen, gens, rotated_product, square_commutator, xi,
    ElementCatalog,
};
use crate::tree::{Permutation, RecursionTable, Vertex, DEFAULT_LEVEL_CAP};
use crate::verifier::{sparse_sections, wreath_mismatch, Report, Tally};
use crate::word_problem::{OrderResult, Solver};
use crate::words::{Alphabet, Word};

/// Name, element, expected nontrivial sections, expected permutation.
type Display<'w> = (&'static str, &'w Word, Vec<(usize, Word)>, Permutation);

fn require_odd(d: usize) -> Result<()> {
    if d.is_multiple_of(2) {
        return Err(Error::ArityMismatch { expected: d + 1, actual: d });
    }
    Ok(())
}

/// `w` fixes the first level and its section at `slot` (zero-based) equals `want`.
fn stabilises_with_section(
    table: &RecursionTable,
    solver: &Solver<'_>,
    w: &Word,
    slot: usize,
    want: &Word,
) -> Result<std::result::Result<(), String>> {
    let perm = table.first_level_perm(w);
    if !perm.is_identity() {
        return Ok(Err(format!("acts as {perm} on the first level")));
    }
    let got = table.section_at(w, slot);
    if solver.are_equal(&got, want)? {
        Ok(Ok(()))
    } else {
        Ok(Err(format!("section at {} is {got}, expected {want}", slot + 1)))
    }
}

/// Power chains behind the infinite-order arguments: `g^{d-1}|_2 = h`,
/// `h^{d-1}|_1 = g`, `h_i^3|_1 = h_{i+1}` and `g_i^{i+1}|_1 = h_{i+1}`.
pub fn check_lemma_chains(d: usize) -> Result<Report> {
    require_odd(d)?;
    let table = build_table(d)?;
    let catalog = ElementCatalog::new(d)?;
    let solver = Solver::auto(&table);
    let mut tally = Tally::new("lemma_chains");
    let di = d as i64;
    let g = catalog.get("g")?;
    let h = catalog.get("h")?;

    let r = stabilises_with_section(&table, &solver, &g.pow(di - 1), 1, h)?;
    tally.expect(r.is_ok(), || format!("g^{}: {}", d - 1, r.clone().unwrap_err()));
    let r = stabilises_with_section(&table, &solver, &h.pow(di - 1), 0, g)?;
    tally.expect(r.is_ok(), || format!("h^{}: {}", d - 1, r.clone().unwrap_err()));

    for i in 1..d {
        let hi = catalog.indexed("h", i)?;
        let next = catalog.indexed("h", i + 1)?;
        let r = stabilises_with_section(&table, &solver, &hi.pow(3), 0, next)?;
        if let Err(why) = &r {
            // the power that actually closes the orbit of vertex 1
            let period = table.first_level_perm(hi).order() as i64;
            if period != 3 && stabilises_with_section(&table, &solver, &hi.pow(period), 0, next)?.is_ok() {
                tally.note(format!("h_{i}^{period} fixes the first level with section h_{} at 1", i + 1));
            }
            tally.expect(false, || format!("h_{i}^3: {why}"));
        } else {
            tally.expect(true, String::new);
        }

        let gi = catalog.indexed("g", i)?;
        let r = stabilises_with_section(&table, &solver, &gi.pow(i as i64 + 1), 0, next)?;
        tally.expect(r.is_ok(), || format!("g_{i}^{}: {}", i + 1, r.clone().unwrap_err()));
    }
    Ok(tally.finish())
}

/// `g = a_1 ... a_d` fixes vertex 1, has itself as section there, and shows
/// no finite order up to `bound`.
pub fn check_noncontracting_witness(d: usize, bound: u64) -> Result<Report> {
    let table = build_table(d)?;
    let catalog = ElementCatalog::new(d)?;
    let solver = Solver::auto(&table);
    let g = catalog.get("g")?;
    let v1 = Vertex::new(vec![0], d)?;
    let mut tally = Tally::new("noncontracting");
    let image = table.act_vertex(g, &v1)?;
    tally.expect(image == v1, || format!("g sends 1 to {image}"));
    let s = table.section(g, &v1)?;
    tally.expect(solver.are_equal(&s, g)?, || format!("g|_1 = {s} differs from g"));
    let probe = solver.order_probe(g, bound)?;
    tally.expect(probe == OrderResult::UnknownBeyond(bound), || format!("order probe of g gives {probe}"));
    tally.record("bound", bound);
    Ok(tally.finish())
}

/// Breadth-first orbit of `1^k` under the generators; passes when it covers
/// all `d^k` vertices of the level.
pub fn check_transitivity(table: &RecursionTable, k: usize) -> Result<Report> {
    let d = table.d();
    let n = d.checked_pow(k as u32).filter(|&n| n <= DEFAULT_LEVEL_CAP).ok_or(Error::LevelTooLarge {
        level: k,
        d,
        cap: DEFAULT_LEVEL_CAP,
    })?;
    let orbit = table.orbit(&Vertex::leftmost(k))?;
    let size = orbit.len() as u64;
    let mut tally = Tally::new("transitivity");
    tally.expect(size == n as u64, || {
        let mut seen = vec![false; n];
        orbit.iter().for_each(|v| seen[v.index(d)] = true);
        let missing = seen.iter().position(|s| !s).expect("orbit is short");
        format!(
            "orbit of {:?} has {size} of {n} vertices, missing {}",
            Vertex::leftmost(k),
            Vertex::from_index(missing, d, k)
        )
    });
    tally.record("level", k as u64);
    tally.record("orbit_size", size);
    tally.note(format!("level {k}: orbit size {size}"));
    Ok(tally.finish())
}

fn concat_all(alphabet: Alphabet, ws: &[Word]) -> Word {
    Word::product(alphabet, ws).expect("single alphabet")
}

/// Stabiliser elements whose sections at vertex 1 produce every generator.
pub fn check_fractal_witnesses(d: usize) -> Result<Report> {
    require_odd(d)?;
    let table = build_table(d)?;
    let alphabet = table.alphabet();
    let solver = Solver::auto(&table);
    let mut tally = Tally::new("fractal_witnesses");
    let di = d as i64;
    let half = (di - 1) / 2;
    let a = |k: i64| gen(alphabet, k);
    let inv = |k: i64| gen(alphabet, k).inverse();
    // s[i] for 1 <= i <= d-1; s[0] unused
    let mut s = vec![Word::identity(alphabet), fractal_s1(alphabet)];
    s.extend((2..di).map(|i| fractal_s(alphabet, i)));

    // (label, element that must fix the first level, expected section at 1)
    let mut claims: Vec<(String, Word, Word)> = Vec::new();
    claims.push(("s_2".into(), s[2].clone(), gens(alphabet, [3, 2])));
    for i in 3..di {
        let want =
            concat_all(alphabet, &[(2..i).map(inv).collect::<Vec<_>>(), (2..=i + 1).rev().map(a).collect()].concat());
        claims.push((format!("s_{i}"), s[i as usize].clone(), want));
    }
    let h = rotated_product(alphabet);
    let h_pow = h.pow(di - 1);
    let tail: Vec<i64> = [1].into_iter().chain((2..=di).rev()).collect();
    claims.push((format!("h^{}", d - 1), h_pow.clone(), gens(alphabet, tail)));
    let evens = |i: i64| concat_all(alphabet, &(1..=i).map(|k| s[2 * k as usize].clone()).collect::<Vec<_>>());
    let odds = |i: i64| concat_all(alphabet, &(1..=i).map(|k| s[2 * k as usize - 1].clone()).collect::<Vec<_>>());
    for i in 1..=half {
        claims.push((format!("s_2...s_{}", 2 * i), evens(i), gens(alphabet, (2..=2 * i + 1).rev())));
    }
    claims.push(("h^(d-1) (s_2 s_4 ... s_(d-1))^-1".into(), h_pow.concat(&evens(half).inverse())?, a(1)));
    claims.push(("a_1^2".into(), a(1).pow(2), gens(alphabet, [1, 2])));
    claims.push(("s_1".into(), s[1].clone(), a(2)));
    for i in 1..=half {
        claims.push((format!("s_1...s_{}", 2 * i - 1), odds(i), gens(alphabet, (2..=2 * i).rev())));
    }
    let mut recovered = vec![false; d];
    recovered[0] = true;
    recovered[1] = true;
    for i in 2..=half {
        claims.push((format!("a_{}", 2 * i), odds(i).concat(&evens(i - 1).inverse())?, a(2 * i)));
        recovered[2 * i as usize - 1] = true;
    }
    for i in 1..=half {
        claims.push((format!("a_{}", 2 * i + 1), evens(i).concat(&odds(i).inverse())?, a(2 * i + 1)));
        recovered[2 * i as usize] = true;
    }
    let mut bad = 0usize;
    for (label, w, want) in &claims {
        let r = stabilises_with_section(&table, &solver, w, 0, want)?;
        bad += r.is_err() as usize;
        tally.expect(r.is_ok(), || format!("{label}: {}", r.clone().unwrap_err()));
    }
    for i in 1..di {
        let p = table.first_level_perm(&s[i as usize]);
        tally.expect(p.is_identity(), || format!("s_{i} acts as {p}"));
    }

    // sections of the conjugators and of h used along the way
    for i in 2..di {
        let g_prev = gens(alphabet, (1..i).rev());
        let got = table.section_at(&g_prev, alphabet.wrap(i - 1));
        let want = gens(alphabet, (2..=i).rev());
        tally.expect(solver.are_equal(&got, &want)?, || format!("g_{}|_{i} = {got}, expected {want}", i - 1));
    }
    let cycle: Vec<usize> = (2..d).rev().chain([0]).collect();
    let lambda = Permutation::from_cycles(d, &[cycle])?;
    let wr = table.wreath(&h);
    let mut slots = vec![(0, a(1)), (2, gens(alphabet, [3, 2]))];
    slots.extend((4..=di).map(|j| (alphabet.wrap(j - 1), a(j))));
    // h|_2 is not part of the construction
    let mut expected = sparse_sections(alphabet, &slots);
    expected[1] = wr.sections[1].clone();
    let miss = wreath_mismatch(&solver, &wr, &expected, Some(&lambda))?;
    tally.expect(miss.is_none(), || format!("h = a_2...a_d a_1: {}", miss.unwrap_or_default()));

    let count = recovered.iter().filter(|r| **r).count() as u64;
    tally.expect(bad == 0 && count == d as u64, || format!("recovered {count} of {d} generators"));
    tally.record("recovered", if bad == 0 { count } else { 0 });
    Ok(tally.finish())
}

/// First-level data of the elements used to place `[a_i, a_{i+1}]` in a
/// single coordinate, compared with the stated recursions.
pub fn check_branch_witnesses(d: usize) -> Result<Report> {
    require_odd(d)?;
    let table = build_table(d)?;
    let alphabet = table.alphabet();
    let solver = Solver::auto(&table);
    let mut tally = Tally::new("branch_witnesses");
    let di = d as i64;
    let a = |k: i64| gen(alphabet, k);
    let slot = |k: i64| alphabet.wrap(k - 1);
    let cyc = |ks: &[i64]| ks.iter().map(|&k| slot(k)).collect::<Vec<usize>>();
    let prod = |u: &Word, v: &Word| u.concat(v).expect("single alphabet");
    let ident = Permutation::identity(d);
    let mut finals_ok = 0u64;
    let mut xi_ok = 0u64;
    for i in 1..=di {
        let b = beta(alphabet, i);
        let bb = prod(&b, &beta(alphabet, i + 1));
        let sq = square_commutator(alphabet, i);
        let sq_a = sq.conjugate_by(&a(i))?;
        let x = xi(alphabet, i);
        let moved = sq_a.conjugate_by(&x.inverse())?;
        let g_next = branch_conjugator(alphabet, i + 1);
        let sq_g = sq.conjugate_by(&g_next)?;
        let fin = prod(&sq_g, &moved);
        let pair_perm = Permutation::from_cycles(d, &[cyc(&[i, i + 2]), cyc(&[i + 1, i + 3])])?;

        let displays: Vec<Display> = vec![
            (
                "beta_i",
                &b,
                vec![(slot(i), a(i + 1).inverse()), (slot(i + 1), a(i + 1))],
                Permutation::from_cycles(d, &[cyc(&[i, i + 1, i + 2])])?,
            ),
            (
                "beta_i beta_(i+1)",
                &bb,
                vec![
                    (slot(i), prod(&a(i + 1).inverse(), &a(i + 2).inverse())),
                    (slot(i + 1), prod(&a(i + 1), &a(i + 2))),
                ],
                pair_perm.clone(),
            ),
            (
                "[a_i^2, a_(i+1)]",
                &sq,
                vec![(slot(i + 1), prod(&a(i).inverse(), &a(i + 1).inverse())), (slot(i + 2), prod(&a(i), &a(i + 1)))],
                ident.clone(),
            ),
            (
                "[a_i^2, a_(i+1)]^(a_i)",
                &sq_a,
                vec![(slot(i), prod(&a(i + 1).inverse(), &a(i).inverse())), (slot(i + 2), prod(&a(i), &a(i + 1)))],
                ident.clone(),
            ),
            ("xi_i", &x, vec![], pair_perm.clone()),
            (
                "([a_i^2, a_(i+1)]^(a_i))^(xi_i^-1)",
                &moved,
                vec![(slot(i), prod(&a(i), &a(i + 1))), (slot(i + 2), prod(&a(i + 1).inverse(), &a(i).inverse()))],
                ident.clone(),
            ),
            (
                "[a_i^2, a_(i+1)]^(g_(i+1))",
                &sq_g,
                vec![(slot(i), prod(&a(i).inverse(), &a(i + 1).inverse())), (slot(i + 2), prod(&a(i), &a(i + 1)))],
                ident.clone(),
            ),
            ("final", &fin, vec![(slot(i), b.clone())], ident.clone()),
        ];
        for (label, w, slots, perm) in displays {
            let miss = wreath_mismatch(&solver, &table.wreath(w), &sparse_sections(alphabet, &slots), Some(&perm))?;
            match label {
                "final" if miss.is_none() => finals_ok += 1,
                "xi_i" if miss.is_none() => xi_ok += 1,
                "xi_i" => {
                    let inv = table.wreath(&x.inverse());
                    if inv.sections.iter().all(Word::is_empty) && inv.perm == pair_perm {
                        tally.note(format!("xi_{i}^-1 = {inv} has the stated form"));
                    }
                }
                _ => {}
            }
            tally.expect(miss.is_none(), || format!("i={i} {label}: {}", miss.unwrap_or_default()));
        }
        tally.expect(!solver.is_identity(&b)?.is_identity, || format!("beta_{i} is trivial"));
        if d >= 5 {
            let p = table.first_level_perm(&branch_conjugator(alphabet, i));
            let (at_i, at_next) = (p.apply(slot(i)), p.apply(slot(i + 1)));
            tally.expect(at_i == slot(i - 1) && at_next == slot(i + 1), || {
                format!("g_{i} sends {i} to {} and {} to {}", at_i + 1, slot(i + 1) + 1, at_next + 1)
            });
        }
    }
    tally.record("xi_matching", xi_ok);
    tally.record("finals_matching", finals_ok);
    Ok(tally.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::Status;

    #[test]
    fn transitivity_small_levels() {
        let t = build_table(3).unwrap();
        for (k, n) in [(0, 1), (1, 3), (3, 27)] {
            let r = check_transitivity(&t, k).unwrap();
            assert!(r.passed(), "{}", r.detail);
            assert_eq!(r.value("orbit_size"), Some(n));
        }
    }

    #[test]
    fn transitivity_detects_an_intransitive_table() {
        // every generator fixes vertex 3
        let t =
            crate::tree::RecursionTable::parse("a = (a, b, e) (1 2)\nb = (e, b, e) (1 2)\nc = (a, e, c) ()").unwrap();
        let r = check_transitivity(&t, 1).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.value("orbit_size"), Some(2));
    }

    #[test]
    fn transitivity_level_cap() {
        let t = build_table(5).unwrap();
        assert!(matches!(check_transitivity(&t, 9), Err(Error::LevelTooLarge { .. })));
    }

    #[test]
    fn noncontracting_examples() {
        for (d, n) in [(3, 32), (4, 16), (5, 16)] {
            let r = check_noncontracting_witness(d, n).unwrap();
            assert!(r.passed(), "d={d}: {}", r.detail);
        }
    }

    #[test]
    fn fractal_witnesses_odd() {
        for d in [3, 5, 7] {
            let r = check_fractal_witnesses(d).unwrap();
            assert!(r.passed(), "d={d}: {}", r.detail);
            assert_eq!(r.value("recovered"), Some(d as u64));
        }
        assert!(matches!(check_fractal_witnesses(4), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn branch_witnesses_for_larger_odd_d() {
        for d in [5, 7] {
            let r = check_branch_witnesses(d).unwrap();
            assert!(r.passed(), "d={d}: {}", r.detail);
            assert_eq!(r.value("finals_matching"), Some(d as u64));
        }
    }

    #[test]
    fn branch_witnesses_d3_xi_direction() {
        // the 3-cycle of xi comes out as (1 2 3), not the stated (1 3 2)
        let r = check_branch_witnesses(3).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.value("xi_matching"), Some(0));
        assert!(r.detail.contains("permutation is (1 2 3) not (1 3 2)"), "{}", r.detail);
    }
}
