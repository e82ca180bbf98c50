//! Words over `a_1, ..., a_d` and their formal inverses.
//!
//! A [`Word`] is always stored freely reduced. Letters are indexed from zero
//! internally; the text grammar and `Display` use the 1-based names `a1..ad`
//! (or `a`, `b`, `c` when `d = 3`).

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};

/// Longest word the parser will build.
pub const MAX_WORD_LEN: u64 = 1 << 32;

/// Number of generators, which is also the branching degree of the tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(usize);

impl Alphabet {
    pub fn new(d: usize) -> Result<Self> {
        if d < 3 {
            return Err(Error::ArityTooSmall(d));
        }
        Ok(Alphabet(d))
    }

    #[inline]
    pub fn d(self) -> usize {
        self.0
    }

    /// `a`, `b`, `c` are accepted and printed only for `d = 3`.
    #[inline]
    pub fn has_aliases(self) -> bool {
        self.0 == 3
    }

    /// Wraps any integer into `0..d`; the zero-based form of `j mod d`.
    #[inline]
    pub fn wrap(self, j: i64) -> usize {
        j.rem_euclid(self.0 as i64) as usize
    }

    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..self.0).flat_map(|i| [Letter::new(i, false), Letter::new(i, true)])
    }

    pub fn check(self, other: Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch { left: self.0, right: other.0 })
        }
    }

    fn generator_name(self, index: usize) -> String {
        if self.has_aliases() {
            ((b'a' + index as u8) as char).to_string()
        } else {
            format!("a{}", index + 1)
        }
    }
}

/// A generator or its formal inverse. Stored as a nonzero signed integer:
/// `+(i+1)` for `a_{i+1}` and `-(i+1)` for its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    #[inline]
    pub fn new(index: usize, inverse: bool) -> Self {
        let v = index as i32 + 1;
        Letter(if inverse { -v } else { v })
    }

    #[inline]
    pub fn pos(index: usize) -> Self {
        Letter::new(index, false)
    }

    #[inline]
    pub fn neg(index: usize) -> Self {
        Letter::new(index, true)
    }

    /// Zero-based generator index.
    #[inline]
    pub fn index(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    #[inline]
    pub fn sign(self) -> i64 {
        if self.0 < 0 {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}{}", self.index() + 1, if self.is_inverse() { "'" } else { "" })
    }
}

/// Pushes `l` onto a reduced buffer, cancelling against the last letter.
#[inline]
pub(crate) fn push_reduced(buf: &mut Vec<Letter>, l: Letter) {
    if buf.last() == Some(&l.inverse()) {
        buf.pop();
    } else {
        buf.push(l);
    }
}

/// Per-generator exponent sums `|w|_{a_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn zero(d: usize) -> Self {
        ExponentVector(vec![0; d])
    }

    pub fn from_counts(counts: Vec<i64>) -> Self {
        ExponentVector(counts)
    }

    pub fn counts(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// `|w|_A`, the sum over all generators.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn l1(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).sum()
    }
}

impl Index<usize> for ExponentVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;
    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ExponentVector {
    type Output = ExponentVector;
    fn sub(self, rhs: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ExponentVector {
    type Output = ExponentVector;
    fn neg(self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Result of [`Word::cyclic_normalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclicForm {
    /// A conjugate whose last two letters are `p^-1 q` with `p != q`.
    Mixed(Word),
    /// Every letter of the cyclic reduction has the same sign.
    SignPure,
}

/// A freely reduced word over an [`Alphabet`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(alphabet: Alphabet) -> Self {
        Word { alphabet, letters: Vec::new() }
    }

    pub fn generator(alphabet: Alphabet, index: usize) -> Self {
        assert!(index < alphabet.d(), "generator index out of range");
        Word { alphabet, letters: vec![Letter::pos(index)] }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn free_reduce<I>(alphabet: Alphabet, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = Letter>,
    {
        let mut letters = Vec::new();
        for l in raw {
            if l.index() >= alphabet.d() {
                return Err(Error::UnknownGenerator { name: format!("{l:?}"), d: alphabet.d() });
            }
            push_reduced(&mut letters, l);
        }
        Ok(Word { alphabet, letters })
    }

    /// Builds a word from signed 1-based integers: `2` is `a2`, `-2` is `a2^-1`.
    pub fn from_signed(alphabet: Alphabet, raw: &[i32]) -> Result<Self> {
        let mut letters = Vec::with_capacity(raw.len());
        for &x in raw {
            if x == 0 {
                return Err(Error::UnknownGenerator { name: "a0".into(), d: alphabet.d() });
            }
            letters.push(Letter::new(x.unsigned_abs() as usize - 1, x < 0));
        }
        Word::free_reduce(alphabet, letters)
    }

    /// Trusted constructor for letter buffers that are already reduced.
    pub(crate) fn from_reduced_unchecked(alphabet: Alphabet, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|p| p[0] != p[1].inverse()));
        Word { alphabet, letters }
    }

    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        parse_word(text, alphabet)
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { alphabet: self.alphabet, letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.alphabet.check(other.alphabet)?;
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Ok(Word { alphabet: self.alphabet, letters })
    }

    /// Product of a sequence of words over one alphabet.
    pub fn product<'a, I>(alphabet: Alphabet, words: I) -> Result<Word>
    where
        I: IntoIterator<Item = &'a Word>,
    {
        let mut letters = Vec::new();
        for w in words {
            alphabet.check(w.alphabet)?;
            for &l in &w.letters {
                push_reduced(&mut letters, l);
            }
        }
        Ok(Word { alphabet, letters })
    }

    /// `w^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::new();
        for _ in 0..n.unsigned_abs() {
            for &l in &base.letters {
                push_reduced(&mut letters, l);
            }
        }
        Word { alphabet: self.alphabet, letters }
    }

    /// `h^-1 w h`.
    pub fn conjugate_by(&self, h: &Word) -> Result<Word> {
        Word::product(self.alphabet, [&h.inverse(), self, h])
    }

    /// `[self, h] = self^-1 h^-1 self h`.
    pub fn commutator(&self, h: &Word) -> Result<Word> {
        Word::product(self.alphabet, [&self.inverse(), &h.inverse(), self, h])
    }

    pub fn exponent_vector(&self) -> ExponentVector {
        let mut counts = vec![0i64; self.alphabet.d()];
        for l in &self.letters {
            counts[l.index()] += l.sign();
        }
        ExponentVector(counts)
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.is_inverse())
    }

    pub fn is_sign_pure(&self) -> bool {
        self.letters.iter().all(|l| !l.is_inverse()) || self.letters.iter().all(|l| l.is_inverse())
    }

    /// Strips `x ... x^-1` pairs from the two ends; the result is conjugate to `self`.
    pub fn cyclic_reduction(&self) -> Word {
        let (mut lo, mut hi) = (0, self.letters.len());
        while hi - lo >= 2 && self.letters[lo] == self.letters[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        Word { alphabet: self.alphabet, letters: self.letters[lo..hi].to_vec() }
    }

    /// Rotates `self` to a conjugate that ends in `p^-1 q`.
    ///
    /// The word is cyclically reduced first, so every rotation stays freely
    /// reduced and the trailing pair never cancels. Among rotations, the one
    /// moving the fewest letters from the front to the back is chosen.
    pub fn cyclic_normalize(&self) -> Result<CyclicForm> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let core = self.cyclic_reduction();
        if core.is_sign_pure() {
            return Ok(CyclicForm::SignPure);
        }
        let n = core.len();
        let ls = &core.letters;
        // rotation r ends with letters (r-2, r-1) mod n
        let r = (0..n)
            .find(|&r| {
                let p = ls[(r + 2 * n - 2) % n];
                let q = ls[(r + n - 1) % n];
                p.is_inverse() && !q.is_inverse()
            })
            .expect("a mixed cyclic word has a negative-to-positive transition");
        let mut rotated = Vec::with_capacity(n);
        rotated.extend_from_slice(&ls[r..]);
        rotated.extend_from_slice(&ls[..r]);
        Ok(CyclicForm::Mixed(Word { alphabet: self.alphabet, letters: rotated }))
    }

    /// All cyclic shifts of the cyclic reduction (each one conjugate to `self`).
    pub fn cyclic_shifts(&self) -> Vec<Word> {
        let core = self.cyclic_reduction();
        let n = core.len().max(1);
        (0..n)
            .map(|r| {
                let mut v = core.letters[r.min(core.len())..].to_vec();
                v.extend_from_slice(&core.letters[..r.min(core.len())]);
                Word { alphabet: self.alphabet, letters: v }
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&self.alphabet.generator_name(l.index()))?;
            if l.is_inverse() {
                f.write_str("'")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word[d={}]({self})", self.alphabet.d())
    }
}

/// Parses the word grammar: whitespace-optional tokens of the form
/// `name ['] [^n]`, where `name` is `a1..ad`, an alias `a|b|c` when `d = 3`,
/// or `e` for the identity.
pub fn parse_word(text: &str, alphabet: Alphabet) -> Result<Word> {
    let d = alphabet.d();
    let bytes = text.as_bytes();
    let mut tokens: Vec<(Option<Letter>, u64)> = Vec::new();
    let mut total: u64 = 0;
    let mut i = 0;
    let malformed = |offset: usize, reason: &str| Error::MalformedToken { offset, reason: reason.to_string() };

    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let index: Option<usize> = match c {
            b'e' => {
                i += 1;
                None
            }
            b'a' if i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() => {
                i += 1;
                let digits_start = i;
                if d <= 9 {
                    i += 1;
                } else {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let n: usize = text[digits_start..i].parse().map_err(|_| malformed(start, "bad generator number"))?;
                if n == 0 || n > d {
                    return Err(Error::UnknownGenerator { name: text[start..i].to_string(), d });
                }
                Some(n - 1)
            }
            b'a' | b'b' | b'c' => {
                i += 1;
                if !alphabet.has_aliases() {
                    return Err(Error::UnknownGenerator { name: (c as char).to_string(), d });
                }
                Some((c - b'a') as usize)
            }
            _ if c.is_ascii_alphabetic() => {
                let end = text[i..].find(|ch: char| !ch.is_ascii_alphanumeric()).map_or(text.len(), |k| i + k);
                return Err(Error::UnknownGenerator { name: text[i..end].to_string(), d });
            }
            _ => return Err(malformed(i, &format!("unexpected character `{}`", text[i..].chars().next().unwrap()))),
        };
        let mut inverse = false;
        if i < bytes.len() && bytes[i] == b'\'' {
            inverse = true;
            i += 1;
        }
        let mut reps: u64 = 1;
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            let ds = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if ds == i {
                return Err(malformed(ds, "expected digits after `^`"));
            }
            reps = text[ds..i].parse().map_err(|_| Error::WordTooLong(u64::MAX))?;
        }
        if i < bytes.len() && bytes[i] == b'\'' {
            return Err(malformed(i, "apostrophe must precede `^`"));
        }
        match index {
            None if inverse => return Err(malformed(start, "`e` takes no inverse mark")),
            None => {}
            Some(ix) => {
                total = total.saturating_add(reps);
                if total > MAX_WORD_LEN {
                    return Err(Error::WordTooLong(total));
                }
                tokens.push((Some(Letter::new(ix, inverse)), reps));
            }
        }
    }

    let mut letters = Vec::new();
    for (l, reps) in tokens {
        if let Some(l) = l {
            for _ in 0..reps {
                push_reduced(&mut letters, l);
            }
        }
    }
    Ok(Word { alphabet, letters })
}

/// All freely reduced words of exactly length `n`, in lexicographic order of
/// the letter codes `a1, a1', a2, a2', ...`.
pub fn reduced_words_of_length(alphabet: Alphabet, n: usize) -> Vec<Word> {
    let letters: Vec<Letter> = alphabet.letters().collect();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * (letters.len() - 1));
        for w in &out {
            for &l in &letters {
                if (w as &Vec<Letter>).last() != Some(&l.inverse()) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out.into_iter().map(|letters| Word { alphabet, letters }).collect()
}

/// All nonempty words over the positive generators of length `1..=max_len`,
/// shortest first.
pub fn positive_words_up_to(alphabet: Alphabet, max_len: usize) -> Vec<Word> {
    let d = alphabet.d();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * d);
        for w in &layer {
            for i in 0..d {
                let mut v = w.clone();
                v.push(Letter::pos(i));
                next.push(v);
            }
        }
        out.extend(next.iter().cloned().map(|letters| Word { alphabet, letters }));
        layer = next;
    }
    out
}

/// Uniform signed letters, raw length uniform on `[1, max_len]`, then freely
/// reduced (so the result may be shorter, or empty).
pub fn random_word<R: Rng + ?Sized>(alphabet: Alphabet, max_len: usize, rng: &mut R) -> Word {
    let len = rng.random_range(1..=max_len.max(1));
    let d = alphabet.d();
    let mut letters = Vec::with_capacity(len);
    for _ in 0..len {
        let code = rng.random_range(0..2 * d);
        push_reduced(&mut letters, Letter::new(code / 2, code % 2 == 1));
    }
    Word { alphabet, letters }
}

/// Like [`random_word`] but over the positive generators only.
pub fn random_positive_word<R: Rng + ?Sized>(alphabet: Alphabet, max_len: usize, rng: &mut R) -> Word {
    let len = rng.random_range(1..=max_len.max(1));
    let letters = (0..len).map(|_| Letter::pos(rng.random_range(0..alphabet.d()))).collect();
    Word { alphabet, letters }
}
