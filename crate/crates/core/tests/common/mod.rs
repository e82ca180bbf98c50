//! Second, deliberately naive implementation of the `G_d` action used as an
//! oracle. Letters are `(generator, inverse)` with zero-based generators;
//! `a_g` swaps `g` and `g+1` (mod d), leaving `a_g` behind at `g` and
//! `a_{g+1}` at `g+1`.
#![allow(dead_code)]

use arbora_core::Word;

pub type Raw = Vec<(usize, bool)>;

pub fn raw(w: &Word) -> Raw {
    w.letters().iter().map(|l| (l.index(), l.is_inverse())).collect()
}

fn swap(d: usize, g: usize, x: usize) -> usize {
    let h = (g + 1) % d;
    if x == g {
        h
    } else if x == h {
        g
    } else {
        x
    }
}

fn left_behind(d: usize, g: usize, x: usize) -> Option<usize> {
    (x == g || x == (g + 1) % d).then_some(x)
}

/// Image of `x` under one letter, and the letter's section there.
pub fn step(d: usize, (g, inv): (usize, bool), x: usize) -> (usize, Option<(usize, bool)>) {
    let y = swap(d, g, x);
    if inv {
        // a^-1 at x is (a at a^-1(x))^-1, and the swap is its own inverse
        (y, left_behind(d, g, y).map(|h| (h, true)))
    } else {
        (y, left_behind(d, g, x).map(|h| (h, false)))
    }
}

pub fn reduce(w: &[(usize, bool)]) -> Raw {
    let mut out: Raw = Vec::new();
    for &(g, inv) in w {
        if out.last() == Some(&(g, !inv)) {
            out.pop();
        } else {
            out.push((g, inv));
        }
    }
    out
}

/// `(w(x), w|_x)`, the section freely reduced.
pub fn section(d: usize, w: &[(usize, bool)], x: usize) -> (usize, Raw) {
    let mut at = x;
    let mut sec = Vec::new();
    for &l in w {
        let (y, s) = step(d, l, at);
        sec.extend(s);
        at = y;
    }
    (at, reduce(&sec))
}

/// Image of a vertex (zero-based path).
pub fn act(d: usize, w: &[(usize, bool)], path: &[usize]) -> Vec<usize> {
    let mut cur: Raw = w.to_vec();
    let mut out = Vec::with_capacity(path.len());
    for &x in path {
        let (y, s) = section(d, &cur, x);
        out.push(y);
        cur = s;
    }
    out
}

/// All vertices of level `k`, lexicographic.
pub fn level(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut all = vec![Vec::new()];
    for _ in 0..k {
        all = all
            .into_iter()
            .flat_map(|p| {
                (0..d).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    all
}

/// Decides `w = e` by brute force: trivial on every vertex of every level
/// up to `depth`. Only ever a necessary condition.
pub fn trivial_to_depth(d: usize, w: &[(usize, bool)], depth: usize) -> bool {
    (0..=depth).all(|k| level(d, k).iter().all(|p| act(d, w, p) == *p))
}

/// Orbit of `start` under the generators, by breadth-first search.
pub fn orbit(d: usize, start: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = std::collections::BTreeSet::from([start.to_vec()]);
    let mut queue = std::collections::VecDeque::from([start.to_vec()]);
    while let Some(v) = queue.pop_front() {
        for g in 0..d {
            let u = act(d, &[(g, false)], &v);
            if seen.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    seen.into_iter().collect()
}

/// Line of the recursion display for `a_{g+1}`, in the table-file grammar.
pub fn display_row(d: usize, g: usize) -> String {
    let h = (g + 1) % d;
    let secs: Vec<String> = (0..d)
        .map(|x| match left_behind(d, g, x) {
            Some(s) => format!("a{}", s + 1),
            None => "e".to_string(),
        })
        .collect();
    format!("a{} = ({}) ({} {})", g + 1, secs.join(", "), g + 1, h + 1)
}
