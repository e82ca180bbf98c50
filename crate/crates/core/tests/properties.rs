mod common;

use arbora_core::{build_table, Alphabet, Letter, RecursionTable, Solver, Strategy as SolveWith, Vertex, Word};
use proptest::prelude::*;

fn table(d: usize) -> RecursionTable {
    build_table(d).unwrap()
}

fn word_of(d: usize, raw: &[(usize, bool)]) -> Word {
    Word::free_reduce(Alphabet::new(d).unwrap(), raw.iter().map(|&(g, inv)| Letter::new(g % d, inv))).unwrap()
}

fn raw_word(max_len: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..9, any::<bool>()), 0..=max_len)
}

fn arity() -> impl Strategy<Value = usize> {
    prop_oneof![Just(3usize), Just(4), Just(5), Just(7)]
}

fn vertex(d: usize, path: &[usize]) -> Vertex {
    Vertex::new(path.iter().map(|x| x % d).collect(), d).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn concatenation_is_associative(d in arity(), u in raw_word(10), v in raw_word(10), w in raw_word(10)) {
        let (u, v, w) = (word_of(d, &u), word_of(d, &v), word_of(d, &w));
        prop_assert_eq!(u.concat(&v).unwrap().concat(&w).unwrap(), u.concat(&v.concat(&w).unwrap()).unwrap());
    }

    #[test]
    fn exponent_vector_is_additive(d in arity(), u in raw_word(12), v in raw_word(12)) {
        let (u, v) = (word_of(d, &u), word_of(d, &v));
        let uv = u.concat(&v).unwrap().exponent_vector();
        let sum: Vec<i64> = u.exponent_vector().counts().iter().zip(v.exponent_vector().counts()).map(|(a, b)| a + b).collect();
        prop_assert_eq!(uv.counts(), &sum[..]);
    }

    #[test]
    fn action_is_a_homomorphism(d in arity(), u in raw_word(8), v in raw_word(8), path in prop::collection::vec(0usize..9, 0..5)) {
        let t = table(d);
        let (u, v) = (word_of(d, &u), word_of(d, &v));
        let x = vertex(d, &path);
        let uv = u.concat(&v).unwrap();
        let left_first = t.act_vertex(&v, &t.act_vertex(&u, &x).unwrap()).unwrap();
        prop_assert_eq!(t.act_vertex(&uv, &x).unwrap(), left_first);
        prop_assert_eq!(t.act_vertex(&u.inverse(), &t.act_vertex(&u, &x).unwrap()).unwrap(), x);
    }

    #[test]
    fn sections_compose(d in arity(), u in raw_word(8), v in raw_word(8), path in prop::collection::vec(0usize..9, 0..4)) {
        let t = table(d);
        let (u, v) = (word_of(d, &u), word_of(d, &v));
        let x = vertex(d, &path);
        let ux = t.act_vertex(&u, &x).unwrap();
        let product = t.section(&u, &x).unwrap().concat(&t.section(&v, &ux).unwrap()).unwrap();
        prop_assert_eq!(t.section(&u.concat(&v).unwrap(), &x).unwrap(), product);
        // w^-1|_x = (w|_{w^-1(x)})^-1
        let back = t.act_vertex(&u.inverse(), &x).unwrap();
        prop_assert_eq!(t.section(&u.inverse(), &x).unwrap(), t.section(&u, &back).unwrap().inverse());
        // sections of a vertex path compose one letter of the path at a time
        if let Some((&first, rest)) = x.path().split_first() {
            let s1 = t.section_at(&u, first);
            prop_assert_eq!(t.section(&s1, &Vertex::new(rest.to_vec(), d).unwrap()).unwrap(), t.section(&u, &x).unwrap());
        }
    }

    #[test]
    fn section_length_law(d in arity(), u in raw_word(12)) {
        // 2|w| letters before cancellation, and reduction removes them in pairs
        let w = word_of(d, &u);
        let t = table(d);
        let total: usize = (0..d).map(|x| t.section_at(&w, x).len()).sum();
        prop_assert!(total <= 2 * w.len());
        prop_assert_eq!(total % 2, 0);
    }

    #[test]
    fn matches_oracle(d in arity(), u in raw_word(10), path in prop::collection::vec(0usize..9, 0..5)) {
        let t = table(d);
        let w = word_of(d, &u);
        let x = vertex(d, &path);
        let want = common::act(d, &common::raw(&w), x.path());
        let got = t.act_vertex(&w, &x).unwrap();
        prop_assert_eq!(got.path(), &want[..]);
        if let Some(&first) = x.path().first() {
            let (_, sec) = common::section(d, &common::raw(&w), first);
            prop_assert_eq!(common::raw(&t.section_at(&w, first)), sec);
        }
    }

    #[test]
    fn identity_is_conjugation_invariant(d in prop_oneof![Just(3usize), Just(4), Just(5)], u in raw_word(12)) {
        let t = table(d);
        let s = Solver::auto(&t);
        let w = word_of(d, &u);
        let verdict = s.is_identity(&w).unwrap().is_identity;
        for shift in w.cyclic_shifts() {
            prop_assert_eq!(s.is_identity(&shift).unwrap().is_identity, verdict);
        }
    }

    #[test]
    fn identity_decisions_are_sound(d in prop_oneof![Just(3usize), Just(4), Just(5)], u in raw_word(12)) {
        let t = table(d);
        let w = word_of(d, &u);
        let dec = Solver::new(&t, SolveWith::Generic).unwrap().is_identity(&w).unwrap();
        if dec.is_identity {
            prop_assert!(common::trivial_to_depth(d, &common::raw(&w), 3), "{} moves a vertex", w);
        }
        if !common::trivial_to_depth(d, &common::raw(&w), 3) {
            prop_assert!(!dec.is_identity);
        }
    }

    #[test]
    fn conjugates_of_the_g4_relator_are_trivial(u in raw_word(8)) {
        let t = table(4);
        let r = Word::from_signed(t.alphabet(), &[2, 1, -3, 2, -1, 4, -2, -1]).unwrap();
        let u = word_of(4, &u);
        let w = r.conjugate_by(&u).unwrap();
        prop_assert!(Solver::auto(&t).is_identity(&w).unwrap().is_identity);
        prop_assert!(common::trivial_to_depth(4, &common::raw(&w), 3));
    }

    #[test]
    fn equality_is_word_problem_of_quotient(d in prop_oneof![Just(3usize), Just(5)], u in raw_word(8), v in raw_word(8)) {
        let t = table(d);
        let (u, v) = (word_of(d, &u), word_of(d, &v));
        let s = Solver::auto(&t);
        let q = u.concat(&v.inverse()).unwrap();
        prop_assert_eq!(s.are_equal(&u, &v).unwrap(), s.is_identity(&q).unwrap().is_identity);
        prop_assert!(s.are_equal(&u, &u.concat(&v).unwrap().concat(&v.inverse()).unwrap()).unwrap());
    }

    #[test]
    fn positive_words_are_distinct(a in prop::collection::vec(0usize..3, 1..=8), b in prop::collection::vec(0usize..3, 1..=8)) {
        prop_assume!(a != b);
        let t = table(3);
        let pos = |xs: &[usize]| Word::free_reduce(t.alphabet(), xs.iter().map(|&g| Letter::pos(g))).unwrap();
        prop_assert!(!Solver::auto(&t).are_equal(&pos(&a), &pos(&b)).unwrap());
    }
}

#[test]
fn level_permutations_match_oracle() {
    for d in [3usize, 4, 5] {
        let t = table(d);
        let alphabet = t.alphabet();
        for text in ["a1", "a1 a2", "a2' a1 a3", "a1 a1 a2' a3 a3"] {
            let w = arbora_core::parse_word(text, alphabet).unwrap();
            for k in 0..=3 {
                let lp = t.level_permutation(&w, k).unwrap();
                for (i, path) in common::level(d, k).iter().enumerate() {
                    let want = common::act(d, &common::raw(&w), path);
                    let got = Vertex::from_index(lp.images()[i] as usize, d, k);
                    assert_eq!(got.path(), &want[..], "d={d} {text} at {path:?}");
                }
            }
        }
    }
}
