//! The fixed nine-element generating set of V, words over it, and the
//! word-problem procedures.
//!
//! A [`GenWord`] `g1 g2 … gn` denotes the product with `gn` applied first,
//! matching the convention that elements act on the left of words.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::element::{multiply, table, Table};
use crate::error::{Error, ParseError, Result};
use crate::words::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Sigma,
    Theta,
    Gamma1,
    Gamma2,
    Delta,
    /// The transposition (a²|ab).
    TpAb,
    /// The transposition (a²|aba).
    TpAba,
    /// The transposition (ab|b).
    TpAbb,
    /// The transposition (a|b).
    TpSwap,
}

impl Generator {
    pub const ALL: [Generator; 9] = [
        Generator::Sigma,
        Generator::Theta,
        Generator::Gamma1,
        Generator::Gamma2,
        Generator::Delta,
        Generator::TpAb,
        Generator::TpAba,
        Generator::TpAbb,
        Generator::TpSwap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Sigma => "sigma",
            Generator::Theta => "theta",
            Generator::Gamma1 => "gamma1",
            Generator::Gamma2 => "gamma2",
            Generator::Delta => "delta",
            Generator::TpAb => "tp_ab",
            Generator::TpAba => "tp_aba",
            Generator::TpAbb => "tp_abb",
            Generator::TpSwap => "tp_swap",
        }
    }

    fn literal(self) -> &'static str {
        match self {
            Generator::Sigma => "[a^2->a, ab->ba, b->b^2]",
            Generator::Theta => "[a->a, ba^2->ba, bab->b^2a, b^2->b^3]",
            Generator::Gamma1 => "[a^2->a^2, aba->ba, ab^2->ab, b->b^2]",
            Generator::Gamma2 => "[a^2->a^2, aba->ab, ab^2->ba, b->b^2]",
            Generator::Delta => "[a^3->a^2, ab->ab, a^2b->ba, b->b^2]",
            Generator::TpAb => "[a^2->ab, ab->a^2, b->b]",
            Generator::TpAba => "[a^2->aba, aba->a^2, ab^2->ab^2, b->b]",
            Generator::TpAbb => "[a^2->a^2, ab->b, b->ab]",
            Generator::TpSwap => "[a->b, b->a]",
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    pub fn table(self) -> &'static Table {
        &tables()[self.index()].0
    }

    pub fn inverse_table(self) -> &'static Table {
        &tables()[self.index()].1
    }
}

fn tables() -> &'static [(Table, Table)] {
    static TABLES: OnceLock<Vec<(Table, Table)>> = OnceLock::new();
    TABLES.get_or_init(|| {
        Generator::ALL
            .iter()
            .map(|g| {
                let t = table(g.literal());
                assert!(t.is_maximally_extended(), "generator {} is not maximal", g.name());
                let inv = t.invert();
                (t, inv)
            })
            .collect()
    })
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| ParseError::new(0, format!("unknown generator {s:?}")))
    }
}

pub fn generator_table(g: Generator) -> &'static Table {
    g.table()
}

/// The largest generator table size; a product of n generators has table
/// size at most `c_delta() · n`.
pub fn c_delta() -> usize {
    Generator::ALL.iter().map(|g| g.table().size()).max().unwrap_or(1)
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub generator: Generator,
    pub inverse: bool,
}

impl Symbol {
    pub fn new(generator: Generator) -> Symbol {
        Symbol {
            generator,
            inverse: false,
        }
    }

    pub fn inv(generator: Generator) -> Symbol {
        Symbol {
            generator,
            inverse: true,
        }
    }

    pub fn inverse(self) -> Symbol {
        Symbol {
            inverse: !self.inverse,
            ..self
        }
    }

    pub fn table(self) -> &'static Table {
        if self.inverse {
            self.generator.inverse_table()
        } else {
            self.generator.table()
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.generator)
        } else {
            write!(f, "{}", self.generator)
        }
    }
}

/// A finite sequence of generator symbols; not necessarily freely reduced.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GenWord {
    symbols: Vec<Symbol>,
}

impl GenWord {
    pub fn new(symbols: Vec<Symbol>) -> GenWord {
        GenWord { symbols }
    }

    pub fn empty() -> GenWord {
        GenWord::default()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn push(&mut self, s: Symbol) {
        self.symbols.push(s);
    }

    /// `s^n` for integer `n`, appended.
    pub fn push_power(&mut self, g: Generator, n: i64) {
        let s = if n < 0 { Symbol::inv(g) } else { Symbol::new(g) };
        for _ in 0..n.unsigned_abs() {
            self.symbols.push(s);
        }
    }

    pub fn extend_from(&mut self, other: &GenWord) {
        self.symbols.extend_from_slice(&other.symbols);
    }

    pub fn concat(&self, other: &GenWord) -> GenWord {
        let mut w = self.clone();
        w.extend_from(other);
        w
    }

    pub fn inverse(&self) -> GenWord {
        self.symbols.iter().rev().map(|s| s.inverse()).collect()
    }

    /// Cancel adjacent `s s^-1` pairs.
    pub fn free_reduce(&self) -> GenWord {
        let mut out: Vec<Symbol> = Vec::with_capacity(self.len());
        for &s in &self.symbols {
            if out.last() == Some(&s.inverse()) {
                out.pop();
            } else {
                out.push(s);
            }
        }
        GenWord { symbols: out }
    }

    /// True iff every symbol is σ^±1 or θ^±1.
    pub fn is_over_f_generators(&self) -> bool {
        self.symbols
            .iter()
            .all(|s| matches!(s.generator, Generator::Sigma | Generator::Theta))
    }
}

impl FromIterator<Symbol> for GenWord {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        GenWord {
            symbols: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Whitespace-separated generator names, each optionally suffixed `^-1`.
/// The empty string (or `1`) is the empty word.
impl FromStr for GenWord {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut symbols = Vec::new();
        let mut pos = 0;
        for token in s.split_whitespace() {
            let start = pos + s[pos..].find(token).expect("token comes from s");
            pos = start + token.len();
            if token == "1" && s.split_whitespace().count() == 1 {
                break;
            }
            let (name, inverse) = match token.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (token, false),
            };
            if token.contains('^') && !inverse {
                return Err(ParseError::new(
                    start + token.find('^').unwrap_or(0),
                    "only the suffix ^-1 is allowed",
                ));
            }
            let generator = name.parse::<Generator>().map_err(|e| e.offset(start))?;
            symbols.push(Symbol { generator, inverse });
        }
        Ok(GenWord { symbols })
    }
}

/// Right-to-left product, maximally extending after every step.
pub fn evaluate_sequential(w: &GenWord) -> Table {
    w.symbols
        .iter()
        .rev()
        .fold(Table::identity(), |acc, s| multiply(s.table(), &acc))
}

fn balanced(symbols: &[Symbol], parallel_cutoff: Option<usize>) -> Table {
    match symbols {
        [] => Table::identity(),
        [s] => s.table().clone(),
        _ => {
            let (left, right) = symbols.split_at(symbols.len() / 2);
            let (l, r) = match parallel_cutoff {
                Some(cut) if symbols.len() > cut => rayon::join(
                    || balanced(left, parallel_cutoff),
                    || balanced(right, parallel_cutoff),
                ),
                _ => (balanced(left, parallel_cutoff), balanced(right, parallel_cutoff)),
            };
            multiply(&l, &r)
        }
    }
}

/// Pairwise composition tree of depth ⌈log₂ n⌉, maximally extending at each
/// internal node.
pub fn evaluate_balanced(w: &GenWord) -> Table {
    balanced(&w.symbols, None)
}

/// Subwords longer than this are split across the rayon pool.
pub const PARALLEL_CUTOFF: usize = 32;

/// [`evaluate_balanced`] with sibling subtrees evaluated concurrently.
pub fn evaluate_balanced_parallel(w: &GenWord) -> Table {
    balanced(&w.symbols, Some(PARALLEL_CUTOFF))
}

pub fn is_identity_word(w: &GenWord) -> bool {
    evaluate_balanced(w).is_identity()
}

/// The dictionary-least domain word moved by the element, or `None` when the
/// word represents the identity.
pub fn find_witness(w: &GenWord) -> Option<Word> {
    witness_of(&evaluate_balanced(w))
}

/// Least domain-code word of a maximal table that the table moves.
pub fn witness_of(t: &Table) -> Option<Word> {
    t.entries().find(|(x, y)| x != y).map(|(x, _)| x.clone())
}

/// Push `x` through the generators right to left without forming the
/// product table. `None` when some stage is undefined on the current word.
pub fn apply_word(w: &GenWord, x: &Word) -> Option<Word> {
    w.symbols
        .iter()
        .rev()
        .try_fold(x.clone(), |cur, s| s.table().apply(&cur))
}

/// The superadditive envelope `T(n) = max over partitions n = Σ nᵢ of Σ t(nᵢ)`.
///
/// `t[k - 1]` holds `t(k)` for `k = 1..=n`; `t` must be non-decreasing with
/// `t(k) ≥ k`.
pub fn superadditive_envelope(t: &[u64], n: usize) -> Result<u64> {
    if n == 0 || t.len() < n {
        return Err(Error::Precondition(format!(
            "lookup must cover 1..={n}, it has {} values",
            t.len()
        )));
    }
    for k in 1..=n {
        if t[k - 1] < k as u64 {
            return Err(Error::Precondition(format!("t({k}) = {} < {k}", t[k - 1])));
        }
        if k > 1 && t[k - 1] < t[k - 2] {
            return Err(Error::Precondition(format!("t is decreasing at {k}")));
        }
    }
    let mut env = vec![0u64; n + 1];
    for m in 1..=n {
        let split = (1..m).map(|i| env[i] + env[m - i]).max().unwrap_or(0);
        env[m] = t[m - 1].max(split);
    }
    Ok(env[n])
}
