//! Action of words on the `d`-regular rooted tree.
//!
//! Composition is left to right: in a word `l1 l2 ... ln` the letter `l1`
//! acts first, so `(gh)(u) = h(g(u))` and `gh|_u = g|_u h|_{g(u)}`.

mod perm;
mod table;

use std::fmt;

pub use perm::Permutation;
pub use table::RecursionTable;

use crate::error::{Error, Result};
use crate::words::{push_reduced, Letter, Word};

/// Default cap on `d^k` for whole-level computations.
pub const DEFAULT_LEVEL_CAP: usize = 1_000_000;

/// A vertex of the tree as a path of zero-based branch indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vertex(Vec<usize>);

impl Vertex {
    pub fn root() -> Self {
        Vertex(Vec::new())
    }

    /// Zero-based entries; each must be `< d`.
    pub fn new(path: Vec<usize>, d: usize) -> Result<Self> {
        if let Some(&bad) = path.iter().find(|&&x| x >= d) {
            return Err(Error::BadVertex { entry: bad + 1, d });
        }
        Ok(Vertex(path))
    }

    /// `1^k`, the leftmost vertex of level `k`.
    pub fn leftmost(k: usize) -> Self {
        Vertex(vec![0; k])
    }

    /// Digit-string syntax, 1-based: `"112"`; the empty string is the root.
    pub fn parse(text: &str, d: usize) -> Result<Self> {
        let text = text.trim();
        if text == "ε" {
            return Ok(Vertex::root());
        }
        let mut path = Vec::with_capacity(text.len());
        for c in text.chars() {
            let x = c.to_digit(10).ok_or(Error::BadVertex { entry: 0, d })? as usize;
            if x == 0 || x > d {
                return Err(Error::BadVertex { entry: x, d });
            }
            path.push(x - 1);
        }
        Ok(Vertex(path))
    }

    pub fn path(&self) -> &[usize] {
        &self.0
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    /// Position in the lexicographic order of its level.
    pub fn index(&self, d: usize) -> usize {
        self.0.iter().fold(0, |acc, &x| acc * d + x)
    }

    pub fn from_index(mut index: usize, d: usize, level: usize) -> Self {
        let mut path = vec![0; level];
        for slot in path.iter_mut().rev() {
            *slot = index % d;
            index /= d;
        }
        Vertex(path)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.0 {
            write!(f, "{}", x + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "{self}")
        }
    }
}

/// `ψ(w) = (w|_1, ..., w|_d) λ_w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathRecursion {
    pub sections: Vec<Word>,
    pub perm: Permutation,
}

impl WreathRecursion {
    /// All sections empty and the permutation trivial, as words.
    pub fn is_trivial(&self) -> bool {
        self.perm.is_identity() && self.sections.iter().all(Word::is_empty)
    }

    /// Zero-based slots whose section word is nonempty.
    pub fn nonempty_slots(&self) -> Vec<usize> {
        (0..self.sections.len()).filter(|&x| !self.sections[x].is_empty()).collect()
    }
}

impl fmt::Display for WreathRecursion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (x, s) in self.sections.iter().enumerate() {
            if x > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ") {}", self.perm)
    }
}

/// The full action of a word on level `k`, as images of lexicographic indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelPermutation {
    d: usize,
    level: usize,
    images: Vec<u32>,
}

impl LevelPermutation {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, v: &Vertex) -> Vertex {
        assert_eq!(v.level(), self.level, "vertex on the wrong level");
        Vertex::from_index(self.images[v.index(self.d)] as usize, self.d, self.level)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i == y as usize)
    }

    /// `(v, w(v))` pairs in lexicographic order of `v`.
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.images.iter().enumerate().map(move |(i, &y)| {
            (Vertex::from_index(i, self.d, self.level), Vertex::from_index(y as usize, self.d, self.level))
        })
    }

    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_images(self.images.iter().map(|&y| y as usize).collect())
            .expect("level action is a bijection")
    }
}

/// Finite-depth picture of an element: the root permutation, one subtree per
/// child, and at the leaves the remaining section word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Portrait {
    pub perm: Permutation,
    pub children: Vec<Portrait>,
    pub residual: Option<Word>,
}

impl Portrait {
    fn render(&self, f: &mut fmt::Formatter<'_>, label: &mut Vec<usize>) -> fmt::Result {
        let name = if label.is_empty() {
            "ε".to_string()
        } else {
            label.iter().map(|x| (x + 1).to_string()).collect::<String>()
        };
        write!(f, "{}{name}: {}", "  ".repeat(label.len()), self.perm)?;
        if let Some(r) = &self.residual {
            write!(f, " | {r}")?;
        }
        writeln!(f)?;
        for (x, c) in self.children.iter().enumerate() {
            label.push(x);
            c.render(f, label)?;
            label.pop();
        }
        Ok(())
    }
}

impl fmt::Display for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, &mut Vec::new())
    }
}

fn level_size(d: usize, k: usize, cap: usize) -> Result<usize> {
    let mut n: usize = 1;
    for _ in 0..k {
        n = n.checked_mul(d).filter(|&n| n <= cap).ok_or(Error::LevelTooLarge { level: k, d, cap })?;
    }
    Ok(n)
}

impl RecursionTable {
    fn check_vertex(&self, v: &Vertex) -> Result<()> {
        match v.path().iter().find(|&&x| x >= self.d()) {
            Some(&bad) => Err(Error::BadVertex { entry: bad + 1, d: self.d() }),
            None => Ok(()),
        }
    }

    fn act_letters(&self, letters: &[Letter], v: &mut [usize]) {
        if v.is_empty() {
            return;
        }
        for &l in letters {
            let x = v[0];
            v[0] = self.letter_image(l, x);
            self.act_letters(self.letter_section(l, x).letters(), &mut v[1..]);
        }
    }

    /// `w(v)`, applying the letters of `w` one after another.
    pub fn act_vertex(&self, w: &Word, v: &Vertex) -> Result<Vertex> {
        self.alphabet().check(w.alphabet())?;
        self.check_vertex(v)?;
        let mut path = v.path().to_vec();
        self.act_letters(w.letters(), &mut path);
        Ok(Vertex(path))
    }

    /// `λ_w` on the first level.
    pub fn first_level_perm(&self, w: &Word) -> Permutation {
        let images = (0..self.d()).map(|x| w.letters().iter().fold(x, |x, &l| self.letter_image(l, x))).collect();
        Permutation::from_images(images).expect("product of permutations")
    }

    /// `w|_x` for a first-level vertex `x` (zero-based).
    pub fn section_at(&self, w: &Word, x: usize) -> Word {
        let mut buf = Vec::new();
        let mut x = x;
        for &l in w.letters() {
            for &m in self.letter_section(l, x).letters() {
                push_reduced(&mut buf, m);
            }
            x = self.letter_image(l, x);
        }
        Word::from_reduced_unchecked(self.alphabet(), buf)
    }

    /// `w|_v`, using `w|_{xu} = (w|_x)|_u`.
    pub fn section(&self, w: &Word, v: &Vertex) -> Result<Word> {
        self.alphabet().check(w.alphabet())?;
        self.check_vertex(v)?;
        Ok(v.path().iter().fold(w.clone(), |acc, &x| self.section_at(&acc, x)))
    }

    pub fn wreath(&self, w: &Word) -> WreathRecursion {
        WreathRecursion {
            sections: (0..self.d()).map(|x| self.section_at(w, x)).collect(),
            perm: self.first_level_perm(w),
        }
    }

    pub fn level_permutation(&self, w: &Word, k: usize) -> Result<LevelPermutation> {
        self.level_permutation_capped(w, k, DEFAULT_LEVEL_CAP)
    }

    pub fn level_permutation_capped(&self, w: &Word, k: usize, cap: usize) -> Result<LevelPermutation> {
        self.alphabet().check(w.alphabet())?;
        let n = level_size(self.d(), k, cap)?;
        let mut images = vec![0u32; n];
        self.fill_level(w, k, &mut images, true);
        Ok(LevelPermutation { d: self.d(), level: k, images })
    }

    // images of one subtree: out[x*block + r] = λ(x)*block + (w|_x on level k-1)(r)
    fn fill_level(&self, w: &Word, k: usize, out: &mut [u32], top: bool) {
        if k == 0 {
            out[0] = 0;
            return;
        }
        let d = self.d();
        let block = out.len() / d;
        let perm = self.first_level_perm(w);
        let fill_child = |(x, chunk): (usize, &mut [u32])| {
            let s = self.section_at(w, x);
            self.fill_level(&s, k - 1, chunk, false);
            let offset = (perm.apply(x) * block) as u32;
            chunk.iter_mut().for_each(|y| *y += offset);
        };
        if top && block >= crate::par::MIN_PARALLEL_BLOCK {
            crate::par::for_each_chunk(out, block, fill_child);
        } else {
            out.chunks_mut(block).enumerate().for_each(fill_child);
        }
    }

    pub fn portrait(&self, w: &Word, depth: usize) -> Result<Portrait> {
        self.alphabet().check(w.alphabet())?;
        level_size(self.d(), depth, DEFAULT_LEVEL_CAP)?;
        Ok(self.portrait_inner(w, depth))
    }

    fn portrait_inner(&self, w: &Word, depth: usize) -> Portrait {
        let perm = self.first_level_perm(w);
        if depth == 0 {
            return Portrait { perm, children: Vec::new(), residual: Some(w.clone()) };
        }
        let children = (0..self.d()).map(|x| self.portrait_inner(&self.section_at(w, x), depth - 1)).collect();
        Portrait { perm, children, residual: None }
    }

    /// Orbit of `v` under the generators, in breadth-first order.
    pub fn orbit(&self, v: &Vertex) -> Result<Vec<Vertex>> {
        let d = self.d();
        if let Some(&x) = v.path().iter().find(|&&x| x >= d) {
            return Err(Error::BadVertex { entry: x + 1, d });
        }
        let k = v.level();
        let actions = (0..d)
            .map(|i| self.level_permutation(&Word::generator(self.alphabet(), i), k))
            .collect::<Result<Vec<_>>>()?;
        let start = v.index(d);
        let mut seen = vec![false; actions[0].images().len()];
        seen[start] = true;
        let mut order = vec![start];
        let mut next = 0;
        while next < order.len() {
            let u = order[next];
            next += 1;
            for act in &actions {
                let y = act.images()[u] as usize;
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
        Ok(order.into_iter().map(|i| Vertex::from_index(i, d, k)).collect())
    }
}
