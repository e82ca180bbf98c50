//! Self-similar groups `G_d` acting on the `d`-regular rooted tree.
//!
//! * [`words`]: reduced words, exponent sums, cyclic normal forms.
//! * [`tree`]: vertices, permutations, recursion tables, sections, portraits.
//! * [`gd`]: the `G_d` recursion table and the catalog of named elements.
//! * [`word_problem`]: identity and equality decisions, order probes.
//! * [`verifier`]: executable checks of the structural identities of `G_d`.

pub mod error;
pub mod gd;
pub mod par;
pub mod tree;
pub mod verifier;
pub mod word_problem;
pub mod words;

pub use error::{Error, Result};
pub use gd::{build_table, ElementCatalog};
pub use par::Exec;
pub use tree::{LevelPermutation, Permutation, Portrait, RecursionTable, Vertex, WreathRecursion};
pub use word_problem::{Decision, OrderResult, Solver, Strategy};
pub use words::{parse_word, Alphabet, CyclicForm, ExponentVector, Letter, Word};
