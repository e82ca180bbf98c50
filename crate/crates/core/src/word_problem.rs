//! Deciding `w = e` by branching over sections.
//!
//! Each node of the search:
//! 1. an empty word is the identity;
//! 2. a nontrivial first-level permutation is not;
//! 3. (odd `d`, shortcut strategy) a nonzero exponent vector is not;
//! 4. a word whose cyclic reduction has letters of one sign only is not;
//! 5. otherwise rotate to a conjugate ending in `p^-1 q`, take its wreath
//!    recursion and require every nonempty section to be the identity.
//!
//! In `G_d` every section produced in step 5 is strictly shorter than the
//! node's word, so the search terminates for all `d >= 3`. Steps 3 and 4 rely
//! on facts about `G_d`; for any other recursion table they are switched off
//! and the search instead treats a word met again on its own branch as the
//! identity (the greatest-fixpoint reading of a self-similar recursion), with
//! the node budget as the only termination guarantee.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::tree::RecursionTable;
use crate::words::{CyclicForm, Word};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Shortcut for odd `d`, generic otherwise.
    #[default]
    Auto,
    Generic,
    OddShortcut,
}

impl Strategy {
    fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Generic => "generic",
            Strategy::OddShortcut => "odd-shortcut",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "generic" => Ok(Strategy::Generic),
            "odd-shortcut" | "odd_shortcut" => Ok(Strategy::OddShortcut),
            other => Err(format!("unknown strategy `{other}` (auto|generic|odd-shortcut)")),
        }
    }
}

/// Outcome of one identity decision with search statistics. Memoization
/// means `nodes_explored` is an upper bound on the work, not a canonical count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decision {
    pub is_identity: bool,
    pub nodes_explored: u64,
    pub max_depth: usize,
    pub shortcut_hits: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderResult {
    Finite(u64),
    UnknownBeyond(u64),
}

impl fmt::Display for OrderResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderResult::Finite(n) => write!(f, "finite {n}"),
            OrderResult::UnknownBeyond(n) => write!(f, "unknown-beyond {n}"),
        }
    }
}

/// Word-problem solver bound to one recursion table.
#[derive(Debug, Clone)]
pub struct Solver<'t> {
    table: &'t RecursionTable,
    shortcut: bool,
    budget: u64,
}

impl<'t> Solver<'t> {
    pub fn new(table: &'t RecursionTable, strategy: Strategy) -> Result<Self> {
        let odd = table.d() % 2 == 1;
        let shortcut = match strategy {
            Strategy::Auto => odd && table.is_gd(),
            Strategy::Generic => false,
            Strategy::OddShortcut if !odd => {
                return Err(Error::StrategyMismatch { strategy: strategy.name(), reason: "d is even" })
            }
            Strategy::OddShortcut if !table.is_gd() => {
                return Err(Error::StrategyMismatch {
                    strategy: strategy.name(),
                    reason: "the exponent-sum test only holds for the G_d table",
                })
            }
            Strategy::OddShortcut => true,
        };
        Ok(Solver { table, shortcut, budget: DEFAULT_NODE_BUDGET })
    }

    /// Auto strategy, default budget.
    pub fn auto(table: &'t RecursionTable) -> Self {
        Solver::new(table, Strategy::Auto).expect("auto strategy always applies")
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget.max(1);
        self
    }

    pub fn table(&self) -> &'t RecursionTable {
        self.table
    }

    pub fn uses_shortcut(&self) -> bool {
        self.shortcut
    }

    pub fn is_identity(&self, w: &Word) -> Result<Decision> {
        self.table.alphabet().check(w.alphabet())?;
        let mut search = Search {
            solver: self,
            memo: HashMap::new(),
            on_branch: HashSet::new(),
            nodes: 0,
            max_depth: 0,
            shortcut_hits: 0,
        };
        let is_identity = search.run(w)?;
        Ok(Decision {
            is_identity,
            nodes_explored: search.nodes,
            max_depth: search.max_depth,
            shortcut_hits: search.shortcut_hits,
        })
    }

    pub fn are_equal(&self, u: &Word, v: &Word) -> Result<bool> {
        Ok(self.is_identity(&u.concat(&v.inverse())?)?.is_identity)
    }

    pub fn in_level_stabilizer(&self, w: &Word, k: usize) -> Result<bool> {
        Ok(self.table.level_permutation(w, k)?.is_identity())
    }

    /// Least `n <= bound` with `w^n = e`, if any.
    pub fn order_probe(&self, w: &Word, bound: u64) -> Result<OrderResult> {
        if bound == 0 {
            return Err(Error::BudgetExceeded("order probe bound must be at least 1".into()));
        }
        let mut power = Word::identity(w.alphabet());
        for n in 1..=bound {
            power = power.concat(w)?;
            if self.is_identity(&power)?.is_identity {
                return Ok(OrderResult::Finite(n));
            }
        }
        Ok(OrderResult::UnknownBeyond(bound))
    }
}

/// Convenience wrapper: one decision with the given strategy.
pub fn is_identity(table: &RecursionTable, w: &Word, strategy: Strategy) -> Result<Decision> {
    Solver::new(table, strategy)?.is_identity(w)
}

pub fn are_equal(table: &RecursionTable, u: &Word, v: &Word) -> Result<bool> {
    Solver::auto(table).are_equal(u, v)
}

enum Node {
    Leaf(bool),
    Expand(Vec<Word>),
}

struct Frame {
    word: Word,
    children: Vec<Word>,
    next: usize,
}

struct Search<'s, 't> {
    solver: &'s Solver<'t>,
    memo: HashMap<Word, bool>,
    on_branch: HashSet<Word>,
    nodes: u64,
    max_depth: usize,
    shortcut_hits: u64,
}

impl Search<'_, '_> {
    fn visit(&mut self, w: &Word, depth: usize) -> Result<Node> {
        self.nodes += 1;
        if self.nodes > self.solver.budget {
            return Err(Error::NodeBudgetExceeded(self.solver.budget));
        }
        self.max_depth = self.max_depth.max(depth);
        let table = self.solver.table;
        if w.is_empty() || self.memo.contains_key(w) {
            return Ok(Node::Leaf(true));
        }
        let gd = table.is_gd();
        if !gd && self.on_branch.contains(w) {
            return Ok(Node::Leaf(true));
        }
        if !table.first_level_perm(w).is_identity() {
            return Ok(Node::Leaf(false));
        }
        if self.solver.shortcut && !w.exponent_vector().is_zero() {
            self.shortcut_hits += 1;
            return Ok(Node::Leaf(false));
        }
        let rotated = if gd {
            match w.cyclic_normalize()? {
                CyclicForm::SignPure => return Ok(Node::Leaf(false)),
                CyclicForm::Mixed(u) => u,
            }
        } else {
            w.cyclic_reduction()
        };
        let children: Vec<Word> =
            (0..table.d()).map(|x| table.section_at(&rotated, x)).filter(|s| !s.is_empty()).collect();
        if children.is_empty() {
            self.memo.insert(w.clone(), true);
            return Ok(Node::Leaf(true));
        }
        Ok(Node::Expand(children))
    }

    fn push(&mut self, stack: &mut Vec<Frame>, word: Word, children: Vec<Word>) {
        if !self.solver.table.is_gd() {
            self.on_branch.insert(word.clone());
        }
        stack.push(Frame { word, children, next: 0 });
    }

    fn run(&mut self, root: &Word) -> Result<bool> {
        let mut stack: Vec<Frame> = Vec::new();
        match self.visit(root, 0)? {
            Node::Leaf(b) => return Ok(b),
            Node::Expand(children) => self.push(&mut stack, root.clone(), children),
        }
        while let Some(top) = stack.last_mut() {
            if top.next == top.children.len() {
                let done = stack.pop().expect("nonempty stack");
                self.on_branch.remove(&done.word);
                self.memo.insert(done.word, true);
                continue;
            }
            let child = top.children[top.next].clone();
            top.next += 1;
            let depth = stack.len();
            match self.visit(&child, depth)? {
                Node::Leaf(false) => return Ok(false),
                Node::Leaf(true) => {}
                Node::Expand(children) => self.push(&mut stack, child, children),
            }
        }
        Ok(true)
    }
}
