//! `arbora`: batch command line over `arbora-core`.
//!
//! Exit status: 0 on success, 1 when a verification check fails, 2 on usage
//! errors, unreadable input and exhausted budgets.

use std::fmt::Display;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use arbora_core::verifier::{check_free_semigroup, run_suite_with, Report, Status, SuiteConfig};
use arbora_core::word_problem::DEFAULT_NODE_BUDGET;
use arbora_core::{build_table, parse_word, ElementCatalog, Exec, RecursionTable, Solver, Strategy, Vertex, Word};
use clap::builder::RangedU64ValueParser;
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "arbora", version, about = "Words, sections and the word problem in the groups G_d")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Opts {
    /// Tree arity, 3 to 9.
    #[arg(long, global = true, value_parser = RangedU64ValueParser::<usize>::new().range(3..=9))]
    d: Option<usize>,

    /// Recursion table file to use instead of G_d.
    #[arg(long, global = true, value_name = "PATH")]
    table: Option<PathBuf>,

    /// Read words from a file, one per line (`#` starts a comment).
    #[arg(long, global = true, value_name = "PATH")]
    words_file: Option<PathBuf>,

    /// auto, generic or odd-shortcut.
    #[arg(long, global = true, default_value = "auto")]
    strategy: Strategy,

    /// Node budget for identity decisions.
    #[arg(long, global = true, env = "ARBORA_MAX_NODES", value_parser = RangedU64ValueParser::<u64>::new().range(1..))]
    max_nodes: Option<u64>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Image of a vertex, e.g. `eval --d 3 "a" 1`.
    Eval {
        /// WORD VERTEX, or just VERTEX with --words-file.
        #[arg(num_args = 1..=2, value_names = ["WORD", "VERTEX"])]
        args: Vec<String>,
    },
    /// Section of a word at a vertex.
    Section {
        /// WORD VERTEX, or just VERTEX with --words-file.
        #[arg(num_args = 1..=2, value_names = ["WORD", "VERTEX"])]
        args: Vec<String>,
    },
    /// Decide whether a word is the identity.
    Identity { word: Option<String> },
    /// Exponent vector of a word.
    Expsum { word: Option<String> },
    /// Smallest n <= bound with w^n = e.
    OrderProbe {
        word: Option<String>,
        #[arg(long, default_value_t = 128)]
        bound: u64,
    },
    /// Orbit of a vertex (default 1^level) under the generators.
    Orbit {
        vertex: Option<String>,
        #[arg(long)]
        level: Option<usize>,
        /// Print the orbit's vertices after its size.
        #[arg(long)]
        list: bool,
    },
    /// Permutations down to a depth, with the sections left at the bottom.
    Portrait {
        word: Option<String>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Named elements of G_d.
    Catalog {
        #[arg(long)]
        name: Option<String>,
    },
    /// Count distinct elements among positive words up to a length.
    FreeSemigroup {
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Run every structural check for G_d.
    VerifyPaper {
        #[arg(long, default_value_t = 10)]
        max_len: usize,
    },
}

/// Anything that ends the run with status 2.
struct Failure(String);

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn fail<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = out.flush();
            eprintln!("arbora: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<ExitCode, Failure> {
    let opts = &cli.opts;
    match &cli.cmd {
        Cmd::Catalog { name } => {
            let catalog = ElementCatalog::new(builtin_d(opts)?)?;
            match name {
                Some(n) => writeln!(out, "{}", catalog.get(n)?)?,
                None => {
                    for (n, w) in catalog.iter() {
                        writeln!(out, "{n}\t{w}")?;
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::FreeSemigroup { max_len } => {
            let report = check_free_semigroup(builtin_d(opts)?, *max_len, Exec::default())?;
            writeln!(out, "{}", report.tsv_line())?;
            Ok(status_code([&report]))
        }
        Cmd::VerifyPaper { max_len } => {
            let cfg = SuiteConfig { seed: opts.seed, max_len: *max_len, ..SuiteConfig::default() };
            let reports = run_suite_with(builtin_d(opts)?, cfg)?;
            for r in &reports {
                writeln!(out, "{}", r.tsv_line())?;
            }
            Ok(status_code(&reports))
        }
        cmd => {
            let ctx = Ctx::load(opts)?;
            ctx.run(cmd, out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn status_code<'r>(reports: impl IntoIterator<Item = &'r Report>) -> ExitCode {
    if reports.into_iter().any(|r| r.status == Status::Fail) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn builtin_d(opts: &Opts) -> Result<usize, Failure> {
    if opts.table.is_some() {
        return fail("this command works on the built-in G_d only; drop --table");
    }
    opts.d.ok_or_else(|| Failure("--d is required".into()))
}

struct Ctx<'o> {
    opts: &'o Opts,
    table: RecursionTable,
    catalog: Option<ElementCatalog>,
}

impl<'o> Ctx<'o> {
    fn load(opts: &'o Opts) -> Result<Self, Failure> {
        let table = match (&opts.table, opts.d) {
            (Some(path), d) => {
                let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                let table = RecursionTable::parse(&text)?;
                if d.is_some_and(|d| d != table.d()) {
                    return fail(format!("--d {} disagrees with the table's arity {}", d.unwrap_or(0), table.d()));
                }
                if !table.is_gd() {
                    eprintln!(
                        "warning: custom recursion table; identity is only guaranteed to terminate for the built-in G_d tables"
                    );
                }
                table
            }
            (None, Some(d)) => build_table(d)?,
            (None, None) => return fail("one of --d or --table is required"),
        };
        // catalog names double as words, but only for the genuine G_d
        let catalog = if table.is_gd() { Some(ElementCatalog::new(table.d())?) } else { None };
        Ok(Ctx { opts, table, catalog })
    }

    fn word(&self, text: &str) -> Result<Word, Failure> {
        match parse_word(text, self.table.alphabet()) {
            Ok(w) => Ok(w),
            Err(e) => match self.catalog.as_ref().and_then(|c| c.get(text.trim()).ok()) {
                Some(w) => Ok(w.clone()),
                None => Err(e.into()),
            },
        }
    }

    /// The word arguments of a command: the positional one, or every line of --words-file.
    fn words(&self, positional: Option<&str>) -> Result<Vec<Word>, Failure> {
        match (&self.opts.words_file, positional) {
            (Some(_), Some(_)) => fail("give either a word or --words-file, not both"),
            (None, None) => fail("missing word (or --words-file)"),
            (None, Some(text)) => Ok(vec![self.word(text)?]),
            (Some(path), None) => {
                let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                let mut words = Vec::new();
                for (n, line) in text.lines().enumerate() {
                    let line = line.split('#').next().unwrap_or("").trim();
                    if !line.is_empty() {
                        let w = self
                            .word(line)
                            .map_err(|Failure(m)| Failure(format!("{}:{}: {m}", path.display(), n + 1)))?;
                        words.push(w);
                    }
                }
                Ok(words)
            }
        }
    }

    /// Splits `WORD VERTEX` / `VERTEX` positionals.
    fn word_vertex(&self, args: &[String]) -> Result<(Vec<Word>, Vertex), Failure> {
        let (word, vertex) = match args {
            [v] => (None, v),
            [w, v] => (Some(w.as_str()), v),
            _ => return fail("expected WORD VERTEX"),
        };
        Ok((self.words(word)?, Vertex::parse(vertex, self.table.d())?))
    }

    fn solver(&self) -> Result<Solver<'_>, Failure> {
        let budget = self.opts.max_nodes.unwrap_or(DEFAULT_NODE_BUDGET);
        Ok(Solver::new(&self.table, self.opts.strategy)?.with_budget(budget))
    }

    fn run(&self, cmd: &Cmd, out: &mut impl Write) -> Result<(), Failure> {
        let t = &self.table;
        match cmd {
            Cmd::Eval { args } => {
                let (words, v) = self.word_vertex(args)?;
                for w in words {
                    writeln!(out, "{:?}", t.act_vertex(&w, &v)?)?;
                }
            }
            Cmd::Section { args } => {
                let (words, v) = self.word_vertex(args)?;
                for w in words {
                    writeln!(out, "{}", t.section(&w, &v)?)?;
                }
            }
            Cmd::Identity { word } => {
                let words = self.words(word.as_deref())?;
                let solver = self.solver()?;
                let single = words.len() == 1 && self.opts.words_file.is_none();
                for w in words {
                    let dec = solver.is_identity(&w)?;
                    let verdict = if dec.is_identity { "identity" } else { "nonidentity" };
                    let sep = if single { '\n' } else { ' ' };
                    writeln!(out, "{verdict}{sep}nodes={} depth={}", dec.nodes_explored, dec.max_depth)?;
                }
            }
            Cmd::Expsum { word } => {
                for w in self.words(word.as_deref())? {
                    writeln!(out, "{}", w.exponent_vector())?;
                }
            }
            Cmd::OrderProbe { word, bound } => {
                let solver = self.solver()?;
                for w in self.words(word.as_deref())? {
                    writeln!(out, "{}", solver.order_probe(&w, *bound)?)?;
                }
            }
            Cmd::Orbit { vertex, level, list } => {
                let v = match (vertex, level) {
                    (Some(v), None) => Vertex::parse(v, t.d())?,
                    (None, Some(k)) => Vertex::leftmost(*k),
                    (Some(v), Some(k)) => {
                        let v = Vertex::parse(v, t.d())?;
                        if v.level() != *k {
                            return fail(format!("vertex {v:?} is not on level {k}"));
                        }
                        v
                    }
                    (None, None) => return fail("give a vertex or --level"),
                };
                let orbit = t.orbit(&v)?;
                writeln!(out, "{}", orbit.len())?;
                if *list {
                    for u in orbit {
                        writeln!(out, "{u:?}")?;
                    }
                }
            }
            Cmd::Portrait { word, depth } => {
                for w in self.words(word.as_deref())? {
                    write!(out, "{}", t.portrait(&w, *depth)?)?;
                }
            }
            Cmd::Catalog { .. } | Cmd::FreeSemigroup { .. } | Cmd::VerifyPaper { .. } => unreachable!("handled in run"),
        }
        Ok(())
    }
}
