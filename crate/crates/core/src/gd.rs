//! The groups `G_d`: generator recursions and the catalog of named elements.
//!
//! Generator `a_i` swaps the first-level vertices `i` and `i+1` (indices mod
//! `d`) and has section `a_i` at `i`, `a_{i+1}` at `i+1`, trivial elsewhere.

use crate::error::{Error, Result};
use crate::tree::{Permutation, RecursionTable};
use crate::words::{Alphabet, Word};

/// Zero-based row of the `G_d` table: sections and permutation of `a_{i+1}`.
pub(crate) fn generator_row(alphabet: Alphabet, i: usize) -> (Vec<Word>, Permutation) {
    let d = alphabet.d();
    let next = (i + 1) % d;
    let mut sections = vec![Word::identity(alphabet); d];
    sections[i] = Word::generator(alphabet, i);
    sections[next] = Word::generator(alphabet, next);
    (sections, Permutation::transposition(d, i, next))
}

pub fn build_table(d: usize) -> Result<RecursionTable> {
    let alphabet = Alphabet::new(d)?;
    let rows = (0..d).map(|i| generator_row(alphabet, i)).collect();
    RecursionTable::new(alphabet, rows)
}

/// `a_j` with the 1-based index taken mod `d` (so `a_{d+1} = a_1`, `a_0 = a_d`).
pub fn gen(alphabet: Alphabet, j: i64) -> Word {
    Word::generator(alphabet, alphabet.wrap(j - 1))
}

/// Product of `a_j` over the listed 1-based indices.
pub fn gens(alphabet: Alphabet, indices: impl IntoIterator<Item = i64>) -> Word {
    let ws: Vec<Word> = indices.into_iter().map(|j| gen(alphabet, j)).collect();
    Word::product(alphabet, &ws).expect("single alphabet")
}

pub(crate) fn mul(alphabet: Alphabet, ws: &[&Word]) -> Word {
    Word::product(alphabet, ws.iter().copied()).expect("single alphabet")
}

/// `β_i = [a_i, a_{i+1}]`.
pub fn beta(alphabet: Alphabet, i: i64) -> Word {
    gen(alphabet, i).commutator(&gen(alphabet, i + 1)).expect("single alphabet")
}

/// `[a_i^2, a_{i+1}]`.
pub fn square_commutator(alphabet: Alphabet, i: i64) -> Word {
    gen(alphabet, i).pow(2).commutator(&gen(alphabet, i + 1)).expect("single alphabet")
}

/// `ξ_i = [a_{i+1}^2, a_{i+2}] (β_i β_{i+1})^-1`.
pub fn xi(alphabet: Alphabet, i: i64) -> Word {
    let bb = mul(alphabet, &[&beta(alphabet, i), &beta(alphabet, i + 1)]);
    mul(alphabet, &[&square_commutator(alphabet, i + 1), &bb.inverse()])
}

/// Conjugator used for branch witnesses: `ξ_i` when `d = 3`, otherwise
/// `(ξ_{i+1} ξ_i)(ξ_{i+3} ξ_{i+2}) ... (ξ_{i+d-4} ξ_{i+d-5}) ξ_{i+d-3}`.
pub fn branch_conjugator(alphabet: Alphabet, i: i64) -> Word {
    let d = alphabet.d() as i64;
    if d == 3 {
        return xi(alphabet, i);
    }
    let mut parts = Vec::new();
    let mut k = 0;
    while 2 * k < d - 4 {
        parts.push(xi(alphabet, i + 2 * k + 1));
        parts.push(xi(alphabet, i + 2 * k));
        k += 1;
    }
    parts.push(xi(alphabet, i + d - 3));
    Word::product(alphabet, &parts).expect("single alphabet")
}

/// `s_i = (a_i^2)^{a_{i-1} ... a_1}` for `2 <= i <= d-1`.
pub fn fractal_s(alphabet: Alphabet, i: i64) -> Word {
    let conj = gens(alphabet, (1..i).rev());
    gen(alphabet, i).pow(2).conjugate_by(&conj).expect("single alphabet")
}

/// `a_2 a_3 ... a_d a_1`.
pub fn rotated_product(alphabet: Alphabet) -> Word {
    let d = alphabet.d() as i64;
    gens(alphabet, (2..=d).chain([1]))
}

/// `s_1 = (s_2 s_4 ... s_{d-1}) (a_2 ... a_d a_1)^{-(d-1)} a_1^2`.
pub fn fractal_s1(alphabet: Alphabet) -> Word {
    let d = alphabet.d() as i64;
    let evens: Vec<Word> = (1..=(d - 1) / 2).map(|k| fractal_s(alphabet, 2 * k)).collect();
    let evens = Word::product(alphabet, &evens).expect("single alphabet");
    let tail = rotated_product(alphabet).pow(-(d - 1));
    mul(alphabet, &[&evens, &tail, &gen(alphabet, 1).pow(2)])
}

/// Named elements as explicit words, in a fixed order.
#[derive(Debug, Clone)]
pub struct ElementCatalog {
    alphabet: Alphabet,
    entries: Vec<(String, Word)>,
}

impl ElementCatalog {
    pub fn new(d: usize) -> Result<Self> {
        let alphabet = Alphabet::new(d)?;
        let di = d as i64;
        let mut entries: Vec<(String, Word)> = Vec::new();
        let mut add = |name: String, w: Word| entries.push((name, w));

        add("g".into(), gens(alphabet, 1..=di));
        add("h".into(), gens(alphabet, [2, 1].into_iter().chain((3..=di).rev())));
        for i in 1..=di {
            add(format!("h_{i}"), gens(alphabet, (1..=i).chain((2..i).rev())));
        }
        for i in 1..di {
            add(format!("g_{i}"), gens(alphabet, 1..=i));
        }
        if d == 4 {
            add("w4".into(), Word::from_signed(alphabet, &[2, 1, -3, 2, -1, 4, -2, -1])?);
        }
        if d % 2 == 1 {
            add("h_rot".into(), rotated_product(alphabet));
            add("s_1".into(), fractal_s1(alphabet));
            for i in 2..di {
                add(format!("s_{i}"), fractal_s(alphabet, i));
            }
            for i in 1..=di {
                add(format!("beta_{i}"), beta(alphabet, i));
            }
            for i in 1..=di {
                add(format!("xi_{i}"), xi(alphabet, i));
            }
            for i in 1..=di {
                add(format!("gbr_{i}"), branch_conjugator(alphabet, i));
            }
        }
        if d == 3 {
            let xi1 = xi(alphabet, 1);
            let (a, b, c) = (gen(alphabet, 1), gen(alphabet, 2), gen(alphabet, 3));
            let ca = mul(alphabet, &[&c.inverse(), &b.inverse(), &a, &c, &xi1]);
            add("rist_lift_ca".into(), ca);
            let inner = mul(alphabet, &[&a.conjugate_by(&b)?, &xi1.pow(2)]);
            add("rist_lift_absq".into(), inner.pow(2));
        }
        debug_assert!(entries.iter().all(|(_, w)| !w.is_empty()));
        Ok(ElementCatalog { alphabet, entries })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn get(&self, name: &str) -> Result<&Word> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, w)| w)
            .ok_or_else(|| Error::NameUnavailable { name: name.to_string(), d: self.alphabet.d() })
    }

    /// Indexed lookup such as `("h", 3)` for `h_3`.
    pub fn indexed(&self, family: &str, i: usize) -> Result<&Word> {
        self.get(&format!("{family}_{i}"))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Word)> {
        self.entries.iter().map(|(n, w)| (n.as_str(), w))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn parse(s: &str, d: usize) -> Word {
        parse_word(s, Alphabet::new(d).unwrap()).unwrap()
    }

    #[test]
    fn arity_too_small() {
        assert_eq!(build_table(2).unwrap_err(), Error::ArityTooSmall(2));
        assert_eq!(ElementCatalog::new(1).unwrap_err(), Error::ArityTooSmall(1));
    }

    #[test]
    fn g3_matches_display() {
        let t = build_table(3).unwrap();
        let shown = RecursionTable::parse("a = (a, b, e) (1 2)\nb = (e, b, c) (2 3)\nc = (a, e, c) (3 1)").unwrap();
        assert_eq!(t, shown);
    }

    #[test]
    fn last_and_second_generator_rows() {
        let t = build_table(5).unwrap();
        let a = t.alphabet();
        assert_eq!(t.generator_section(4, 0), &gen(a, 1));
        assert_eq!(t.generator_section(4, 4), &gen(a, 5));
        assert!((1..4).all(|x| t.generator_section(4, x).is_empty()));
        assert_eq!(t.generator_perm(4), &Permutation::parse("(5 1)", 5).unwrap());

        let t = build_table(4).unwrap();
        let a = t.alphabet();
        let secs: Vec<Word> = (0..4).map(|x| t.generator_section(1, x).clone()).collect();
        assert_eq!(secs, vec![Word::identity(a), gen(a, 2), gen(a, 3), Word::identity(a)]);
        assert_eq!(t.generator_perm(1), &Permutation::parse("(2 3)", 4).unwrap());
    }

    #[test]
    fn catalog_examples() {
        let c3 = ElementCatalog::new(3).unwrap();
        assert_eq!(c3.get("g").unwrap(), &parse("a b c", 3));
        assert_eq!(c3.get("h").unwrap(), &parse("b a c", 3));
        assert_eq!(c3.get("h_3").unwrap(), &parse("a b c b", 3));
        assert_eq!(c3.get("h_2").unwrap(), &parse("a b", 3));
        assert_eq!(c3.get("h_1").unwrap(), &parse("a", 3));
        assert_eq!(c3.get("beta_1").unwrap(), &parse("a' b' a b", 3));
        assert_eq!(c3.get("xi_1").unwrap(), &parse("b' b' c' b c a' b a", 3));
        assert_eq!(c3.get("gbr_2").unwrap(), c3.get("xi_2").unwrap());
        assert_eq!(c3.get("s_2").unwrap(), &parse("a' b b a", 3));

        let c4 = ElementCatalog::new(4).unwrap();
        assert_eq!(c4.get("w4").unwrap(), &parse("a2 a1 a3' a2 a1' a4 a2' a1'", 4));
        assert!(matches!(c4.get("xi_1"), Err(Error::NameUnavailable { .. })));
        assert!(matches!(c3.get("w4"), Err(Error::NameUnavailable { .. })));
        assert!(matches!(c3.get("g_3"), Err(Error::NameUnavailable { .. })));
        assert!(matches!(c3.get("nonsense"), Err(Error::NameUnavailable { .. })));

        let c5 = ElementCatalog::new(5).unwrap();
        assert_eq!(c5.get("h").unwrap(), &parse("a2 a1 a5 a4 a3", 5));
        assert_eq!(c5.get("h_4").unwrap(), &parse("a1 a2 a3 a4 a3 a2", 5));
        assert!(matches!(c5.get("rist_lift_ca"), Err(Error::NameUnavailable { .. })));
    }

    #[test]
    fn catalog_names_unique_and_nonempty() {
        for d in 3..=9 {
            let c = ElementCatalog::new(d).unwrap();
            let mut names: Vec<&str> = c.iter().map(|(n, _)| n).collect();
            assert!(c.iter().all(|(_, w)| !w.is_empty()));
            names.sort();
            names.dedup();
            assert_eq!(names.len(), c.len());
        }
    }
}
