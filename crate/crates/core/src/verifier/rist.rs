use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gd::{gen, ElementCatalog};
use crate::par::Exec;
use crate::tree::{RecursionTable, Vertex};
use crate::verifier::{sparse_sections, wreath_mismatch, Report, Tally};
use crate::word_problem::Solver;
use crate::words::{parse_word, Word};

/// Words of `G_3` whose total exponent `|w|_A` vanishes mod `2^{k+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HkClass {
    k: u32,
}

impl HkClass {
    pub const MAX_K: u32 = 61;

    pub fn new(k: u32) -> Result<Self> {
        if k == 0 || k > Self::MAX_K {
            return Err(Error::BudgetExceeded(format!("level k = {k} outside 1..={}", Self::MAX_K)));
        }
        Ok(HkClass { k })
    }

    pub fn k(self) -> u32 {
        self.k
    }

    pub fn modulus(self) -> i64 {
        1i64 << (self.k + 1)
    }

    /// `|w|_A mod 2^{k+1}`, in `0..modulus`.
    pub fn residue(self, w: &Word) -> i64 {
        w.exponent_vector().total().rem_euclid(self.modulus())
    }

    pub fn contains(self, w: &Word) -> bool {
        self.residue(w) == 0
    }

    /// `(i, h)` with `w = a^i h`, `0 <= i < 2^{k+1}` and `h` in the class.
    pub fn split(self, w: &Word) -> (i64, Word) {
        let i = self.residue(w);
        let a = Word::generator(w.alphabet(), 0);
        (i, a.pow(-i).concat(w).expect("same alphabet"))
    }
}

/// Structure of the rigid stabilisers of `G_3` at level `k` (1 or 2): the
/// two lifts into the first coordinate, the `a^i h` decomposition on
/// `sample`, coset tuples of sampled level stabiliser elements, and the
/// exclusion of `a`, `a^2`, `a^3` from `H_1`.
pub fn check_hk_and_branch(table: &RecursionTable, k: u32, sample: &[Word], exec: Exec) -> Result<Report> {
    if table.d() != 3 || !table.is_gd() {
        return Err(Error::ArityMismatch { expected: 3, actual: table.d() });
    }
    if !(1..=2).contains(&k) {
        return Err(Error::BudgetExceeded(format!("coset tuples are only enumerated for k <= 2, got {k}")));
    }
    let alphabet = table.alphabet();
    let solver = Solver::auto(table);
    let class = HkClass::new(k)?;
    let h1 = HkClass::new(1)?;
    let catalog = ElementCatalog::new(3)?;
    let p = |s: &str| parse_word(s, alphabet);
    let mut tally = Tally::new("hk_and_branch");

    let lifts = [("rist_lift_ca", p("c' a")?), ("rist_lift_absq", p("a b a b")?)];
    for (name, first) in &lifts {
        let w = catalog.get(name)?;
        let want = sparse_sections(alphabet, &[(0, first.clone())]);
        let miss = wreath_mismatch(&solver, &table.wreath(w), &want, Some(&crate::tree::Permutation::identity(3)))?;
        if miss.is_some() {
            if let Some(note) = lift_with_inverse_xi(table, &solver, name, first)? {
                tally.note(note);
            }
        }
        tally.expect(miss.is_none(), || format!("{name}: {}", miss.unwrap_or_default()));
        tally.expect(h1.contains(first), || format!("{first} is not in H_1"));
    }

    let splits = exec.try_map(sample, |g| -> Result<Option<String>> {
        let (i, h) = class.split(g);
        let back = gen(alphabet, 1).pow(i).concat(&h)?;
        if !(0..class.modulus()).contains(&i) || !class.contains(&h) {
            return Ok(Some(format!("{g}: residue {i}, remainder {h} not in H_{k}")));
        }
        Ok((!solver.are_equal(&back, g)?).then(|| format!("{g} differs from a^{i} {h}")))
    })?;
    for bad in splits {
        tally.expect(bad.is_none(), || bad.unwrap_or_default());
    }

    let tuples = exec.try_map(sample, |w| coset_tuple(table, &solver, class, w))?;
    let mut distinct = BTreeSet::new();
    for t in tuples {
        match t {
            Ok(t) => {
                tally
                    .expect(t.iter().all(|j| (0..class.modulus()).contains(j)), || format!("tuple {t:?} out of range"));
                distinct.insert(t);
            }
            Err(why) => tally.expect(false, || why),
        }
    }
    let vertices = 3u64.pow(k);
    let bound = (class.modulus() as u64).pow(vertices as u32);
    tally.expect(distinct.len() as u64 <= bound, || format!("{} tuples exceed {bound}", distinct.len()));

    for s in 1..=3 {
        let pw = gen(alphabet, 1).pow(s);
        tally.expect(!h1.contains(&pw), || format!("a^{s} lies in H_1"));
    }

    tally.record("level", k as u64);
    tally.record("samples", sample.len() as u64);
    tally.record("tuples", distinct.len() as u64);
    tally.record("tuple_bound", bound);
    tally.note(format!("{} distinct coset tuples at level {k}, bound {bound}", distinct.len()));
    Ok(tally.finish())
}

/// Raises `w` into the level-`k` stabiliser and reads off the exponents `j`
/// of the `a^j h` decomposition of each level-`k` section.
fn coset_tuple(
    table: &RecursionTable,
    solver: &Solver<'_>,
    class: HkClass,
    w: &Word,
) -> Result<std::result::Result<Vec<i64>, String>> {
    let k = class.k() as usize;
    let order = table.level_permutation(w, k)?.to_permutation().order();
    let g = w.pow(order as i64);
    if !solver.in_level_stabilizer(&g, k)? {
        return Ok(Err(format!("{w}^{order} does not fix level {k}")));
    }
    let mut tuple = Vec::with_capacity(3usize.pow(k as u32));
    for index in 0..3usize.pow(k as u32) {
        let v = Vertex::from_index(index, 3, k);
        let (j, h) = class.split(&table.section(&g, &v)?);
        if !class.contains(&h) {
            return Ok(Err(format!("section of {w}^{order} at {v} leaves {h} outside H_{k}")));
        }
        tuple.push(j);
    }
    Ok(Ok(tuple))
}

/// When a lift fails, says whether it would hold with `xi` inverted.
fn lift_with_inverse_xi(
    table: &RecursionTable,
    solver: &Solver<'_>,
    name: &str,
    first: &Word,
) -> Result<Option<String>> {
    let alphabet = table.alphabet();
    let p = |s: &str| parse_word(s, alphabet);
    let xi_inv = ElementCatalog::new(3)?.get("xi_1")?.inverse();
    let w = match name {
        "rist_lift_ca" => p("c' b' a c")?.concat(&xi_inv)?,
        _ => p("a")?.conjugate_by(&p("b")?)?.concat(&xi_inv.pow(2))?.pow(2),
    };
    let want = sparse_sections(alphabet, &[(0, first.clone())]);
    let miss = wreath_mismatch(solver, &table.wreath(&w), &want, Some(&crate::tree::Permutation::identity(3)))?;
    Ok(miss.is_none().then(|| format!("{name} has the stated recursion when xi is replaced by its inverse")))
}
