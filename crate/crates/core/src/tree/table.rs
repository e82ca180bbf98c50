use std::fmt;

use crate::error::{Error, Result};
use crate::tree::perm::Permutation;
use crate::words::{parse_word, Alphabet, Letter, Word};

/// Wreath recursions of the generators: for generator `i`, the `d` section
/// words and the permutation of the first level.
///
/// The sections and images of inverse letters are precomputed, so folding a
/// word over the table never has to invert anything on the fly.
#[derive(Clone, PartialEq, Eq)]
pub struct RecursionTable {
    alphabet: Alphabet,
    sections: Vec<Vec<Word>>,
    perms: Vec<Permutation>,
    inv_sections: Vec<Vec<Word>>,
    inv_perms: Vec<Permutation>,
    is_gd: bool,
}

impl RecursionTable {
    /// `rows[i] = (sections of generator i, permutation of generator i)`.
    pub fn new(alphabet: Alphabet, rows: Vec<(Vec<Word>, Permutation)>) -> Result<Self> {
        let d = alphabet.d();
        if rows.len() != d {
            return Err(Error::TableFormat { line: 0, reason: format!("expected {d} generators, got {}", rows.len()) });
        }
        let mut sections = Vec::with_capacity(d);
        let mut perms = Vec::with_capacity(d);
        for (i, (secs, perm)) in rows.into_iter().enumerate() {
            if secs.len() != d {
                return Err(Error::TableFormat {
                    line: i + 1,
                    reason: format!("expected {d} sections, got {}", secs.len()),
                });
            }
            if perm.degree() != d {
                return Err(Error::TableFormat {
                    line: i + 1,
                    reason: format!("permutation has degree {}", perm.degree()),
                });
            }
            for s in &secs {
                alphabet.check(s.alphabet())?;
            }
            sections.push(secs);
            perms.push(perm);
        }
        let inv_perms: Vec<Permutation> = perms.iter().map(Permutation::inverse).collect();
        // a^-1|_x = (a|_{a^-1(x)})^-1
        let inv_sections =
            (0..d).map(|i| (0..d).map(|x| sections[i][inv_perms[i].apply(x)].inverse()).collect()).collect();
        let is_gd = (0..d).all(|i| {
            let (s, p) = crate::gd::generator_row(alphabet, i);
            s == sections[i] && p == perms[i]
        });
        Ok(RecursionTable { alphabet, sections, perms, inv_sections, inv_perms, is_gd })
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.alphabet.d()
    }

    /// Whether this is exactly the table of `G_d`. The word-problem shortcuts
    /// are only sound in that case.
    pub fn is_gd(&self) -> bool {
        self.is_gd
    }

    /// Section of generator `i` at first-level vertex `x` (both zero-based).
    pub fn generator_section(&self, i: usize, x: usize) -> &Word {
        &self.sections[i][x]
    }

    pub fn generator_perm(&self, i: usize) -> &Permutation {
        &self.perms[i]
    }

    #[inline]
    pub(crate) fn letter_section(&self, l: Letter, x: usize) -> &Word {
        if l.is_inverse() {
            &self.inv_sections[l.index()][x]
        } else {
            &self.sections[l.index()][x]
        }
    }

    #[inline]
    pub(crate) fn letter_image(&self, l: Letter, x: usize) -> usize {
        if l.is_inverse() {
            self.inv_perms[l.index()].apply(x)
        } else {
            self.perms[l.index()].apply(x)
        }
    }

    /// Parses the line format `name = (w1, ..., wd) (cycles)`. Blank lines
    /// and `#` comments are ignored; the arity is the number of generator lines.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let alphabet = Alphabet::new(lines.len()).map_err(|_| Error::TableFormat {
            line: 0,
            reason: format!("found {} generator lines, need at least 3", lines.len()),
        })?;
        let d = alphabet.d();
        let mut rows: Vec<Option<(Vec<Word>, Permutation)>> = vec![None; d];
        for (line, content) in lines {
            let fail = |reason: String| Error::TableFormat { line, reason };
            let (name, rhs) = content.split_once('=').ok_or_else(|| fail("missing `=`".into()))?;
            let gen = parse_word(name.trim(), alphabet).map_err(|e| fail(e.to_string()))?;
            let index = match gen.letters() {
                [l] if !l.is_inverse() => l.index(),
                _ => return Err(fail(format!("`{}` is not a generator name", name.trim()))),
            };
            let rhs = rhs.trim();
            let body = rhs.strip_prefix('(').ok_or_else(|| fail("expected `(` before sections".into()))?;
            let close = body.find(')').ok_or_else(|| fail("unclosed section list".into()))?;
            let secs = body[..close]
                .split(',')
                .map(|s| parse_word(s.trim(), alphabet).map_err(|e| fail(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            if secs.len() != d {
                return Err(fail(format!("expected {d} sections, got {}", secs.len())));
            }
            let perm = Permutation::parse(&body[close + 1..], d).map_err(|e| fail(e.to_string()))?;
            if rows[index].replace((secs, perm)).is_some() {
                return Err(fail(format!("generator `{}` defined twice", name.trim())));
            }
        }
        let rows = rows.into_iter().map(|r| r.expect("d lines, no duplicates")).collect();
        RecursionTable::new(alphabet, rows)
    }
}

impl fmt::Display for RecursionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.d() {
            write!(f, "{} = (", Word::generator(self.alphabet, i))?;
            for (x, s) in self.sections[i].iter().enumerate() {
                if x > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{s}")?;
            }
            writeln!(f, ") {}", self.perms[i])?;
        }
        Ok(())
    }
}

impl fmt::Debug for RecursionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RecursionTable(d={})\n{self}", self.d())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G3: &str = "\
# the three generators of G_3
a = (a, b, e) (1 2)
b = (e, b, c) (2 3)
c = (a, e, c) (3 1)
";

    #[test]
    fn parses_and_recognises_g3() {
        let t = RecursionTable::parse(G3).unwrap();
        assert_eq!(t.d(), 3);
        assert!(t.is_gd());
        assert_eq!(RecursionTable::parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn custom_table_is_not_gd() {
        let t = RecursionTable::parse("a = (a, b, e) ()\nb = (e, b, c) (2 3)\nc = (a, e, c) (3 1)").unwrap();
        assert!(!t.is_gd());
    }

    #[test]
    fn format_errors() {
        assert!(RecursionTable::parse("a = (a, b) (1 2)\nb = (e, b, c) (2 3)\nc = (a, e, c) (3 1)").is_err());
        assert!(RecursionTable::parse("a = (a, b, e) (1 2)\na = (e, b, c) (2 3)\nc = (a, e, c) (3 1)").is_err());
        assert!(RecursionTable::parse("a (a, b, e) (1 2)\nb = (e, b, c) (2 3)\nc = (a, e, c) (3 1)").is_err());
        assert!(RecursionTable::parse("a = (a, b, e) (1 2)\nb = (e, b, c) (2 3)").is_err());
        assert!(RecursionTable::parse("a' = (a, b, e) (1 2)\nb = (e, b, c) (2 3)\nc = (a, e, c) (3 1)").is_err());
    }

    #[test]
    fn inverse_letter_sections() {
        let t = RecursionTable::parse(G3).unwrap();
        // a^-1|_1 = (a|_2)^-1 = b^-1
        assert_eq!(t.letter_section(Letter::neg(0), 0).to_string(), "b'");
        assert_eq!(t.letter_image(Letter::neg(0), 0), 1);
    }
}
