//! Explicit subgroups of V: the integer shift and finitary permutations, the
//! free subgroup generated by α and β together with closed-form witnesses of
//! its linear distortion, and the doubling maps `φ ↦ φ_a`, `φ ↦ φ_b`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::Rng;
use serde::Serialize;

use crate::element::{multiply, power, Table};
use crate::error::{Error, ParseError, Result};
use crate::words::{Letter, Word};

/// The shift `n ↦ n + 1` on the embedded integers: `[a^2->a, ab->ba, b->b^2]`.
/// As a table this is exactly σ.
pub fn shift_table() -> Table {
    Table::new(vec![
        (Word::power(Letter::A, 2), Word::power(Letter::A, 1)),
        (Word::from_letters([Letter::A, Letter::B]), Word::from_letters([Letter::B, Letter::A])),
        (Word::power(Letter::B, 1), Word::power(Letter::B, 2)),
    ])
    .expect("shift table is maximal")
}

/// `z ≤ 0 ↦ a^{-z} ab`, `z > 0 ↦ b^z a`.
pub fn int_embed(z: i64) -> Word {
    if z <= 0 {
        let mut w = Word::power(Letter::A, (-z) as usize + 1);
        w.push(Letter::B);
        w
    } else {
        let mut w = Word::power(Letter::B, z as usize);
        w.push(Letter::A);
        w
    }
}

/// The element of V acting as the finitary permutation `p` on embedded
/// integers and as the identity elsewhere, maximally extended. `p` is given
/// by its non-trivial pairs `(z, p(z))`; fixed points may be listed too.
pub fn finitary_perm_table(p: &[(i64, i64)]) -> Result<Table> {
    let mut map = BTreeMap::new();
    for &(x, y) in p {
        if let Some(prev) = map.insert(x, y) {
            if prev != y {
                return Err(Error::Precondition(format!("{x} is sent to both {prev} and {y}")));
            }
        }
    }
    let mut images: Vec<i64> = map.values().copied().collect();
    images.sort_unstable();
    images.dedup();
    if images.len() != map.len() || !images.iter().eq(map.keys()) {
        return Err(Error::Precondition(
            "pairs do not describe a bijection of a finite set of integers".into(),
        ));
    }
    let lo = map.keys().next().map_or(0, |&z| z.min(0));
    let hi = map.keys().next_back().map_or(0, |&z| z.max(0));
    let mut entries = Vec::new();
    for z in lo..=hi {
        let y = map.get(&z).copied().unwrap_or(z);
        entries.push((int_embed(z), int_embed(y)));
    }
    let tail_a = Word::power(Letter::A, (-lo) as usize + 2);
    let tail_b = Word::power(Letter::B, hi as usize + 1);
    entries.push((tail_a.clone(), tail_a));
    entries.push((tail_b.clone(), tail_b));
    Ok(Table::new(entries)?.max_extend())
}

fn parse_table(entries: &[(&str, &str)]) -> Table {
    Table::new(
        entries
            .iter()
            .map(|(x, y)| (x.parse().unwrap(), y.parse().unwrap()))
            .collect(),
    )
    .expect("literal generator table")
}

/// The two generators of the free subgroup.
pub fn free_generators() -> (&'static Table, &'static Table) {
    static CELL: OnceLock<(Table, Table)> = OnceLock::new();
    let (alpha, beta) = CELL.get_or_init(|| {
        let alpha = parse_table(&[
            ("a", "b^4a"),
            ("b^3", "b^3a"),
            ("b^2ab", "b^2a"),
            ("b^2a^3", "a"),
            ("b^2a^2b", "ba"),
            ("ba", "b^5"),
        ]);
        let beta = parse_table(&[
            ("b", "a^3ba"),
            ("ab", "a^3b^2"),
            ("a^2b^2", "a^2b"),
            ("a^2ba^2", "b"),
            ("a^2bab", "ab"),
            ("a^3", "a^4"),
        ]);
        (alpha, beta)
    });
    (alpha, beta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FreeLetter {
    Alpha,
    Beta,
}

impl FreeLetter {
    pub fn table(self) -> &'static Table {
        let (alpha, beta) = free_generators();
        match self {
            FreeLetter::Alpha => alpha,
            FreeLetter::Beta => beta,
        }
    }

    fn symbol(self) -> char {
        match self {
            FreeLetter::Alpha => 'a',
            FreeLetter::Beta => 'b',
        }
    }
}

/// Which of the four forms `α…α`, `β…α`, `α…β`, `β…β` a reduced word has
/// (leftmost letter first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Shape {
    AlphaAlpha,
    BetaAlpha,
    AlphaBeta,
    BetaBeta,
}

impl Shape {
    /// Shapes ending (on the right) in α take witness inputs `(a, ba)`.
    pub fn ends_in_alpha(self) -> bool {
        matches!(self, Shape::AlphaAlpha | Shape::BetaAlpha)
    }
}

/// A freely reduced word in α, β: blocks `(letter, exponent)` from left to
/// right, adjacent letters distinct, exponents non-zero. The rightmost block
/// acts first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct FreeWord {
    blocks: Vec<(FreeLetter, i64)>,
}

impl FreeWord {
    pub fn empty() -> FreeWord {
        FreeWord::default()
    }

    /// Reduce an arbitrary block sequence: drops zero exponents and merges
    /// neighbours with the same letter.
    pub fn new<I: IntoIterator<Item = (FreeLetter, i64)>>(blocks: I) -> FreeWord {
        let mut out: Vec<(FreeLetter, i64)> = Vec::new();
        for (l, e) in blocks {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((last, f)) if *last == l => {
                    *f += e;
                    if *f == 0 {
                        out.pop();
                    }
                }
                _ => out.push((l, e)),
            }
        }
        FreeWord { blocks: out }
    }

    pub fn blocks(&self) -> &[(FreeLetter, i64)] {
        &self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `Σ |exponent|`.
    pub fn free_length(&self) -> u64 {
        self.blocks.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn shape(&self) -> Option<Shape> {
        let first = self.blocks.first()?.0;
        let last = self.blocks.last()?.0;
        Some(match (first, last) {
            (FreeLetter::Alpha, FreeLetter::Alpha) => Shape::AlphaAlpha,
            (FreeLetter::Beta, FreeLetter::Alpha) => Shape::BetaAlpha,
            (FreeLetter::Alpha, FreeLetter::Beta) => Shape::AlphaBeta,
            (FreeLetter::Beta, FreeLetter::Beta) => Shape::BetaBeta,
        })
    }

    /// Exponent pairs `(h_i, k_i)` for `i = 1..=m`, counted from the right:
    /// the word is `β^{k_m} α^{h_m} … β^{k_1} α^{h_1}` with `k_m = 0` when it
    /// starts with α and `h_1 = 0` when it ends with β.
    pub fn exponent_pairs(&self) -> Vec<(i64, i64)> {
        let mut pairs = Vec::new();
        let mut cur = (0, 0);
        let mut open = false;
        for &(l, e) in self.blocks.iter().rev() {
            match l {
                FreeLetter::Alpha => {
                    cur.0 = e;
                    open = true;
                }
                FreeLetter::Beta => {
                    cur.1 = e;
                    pairs.push(cur);
                    cur = (0, 0);
                    open = false;
                }
            }
        }
        if open {
            pairs.push(cur);
        }
        pairs
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            blocks: self.blocks.iter().rev().map(|&(l, e)| (l, -e)).collect(),
        }
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("1");
        }
        for (i, (l, e)) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", l.symbol())?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Syntax: whitespace-separated tokens `a`, `b`, `a^n`, `b^-n` (a = α,
/// b = β); `1` or the empty string is the identity.
impl FromStr for FreeWord {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.trim() == "1" {
            return Ok(FreeWord::empty());
        }
        let mut blocks = Vec::new();
        let mut pos = 0;
        for tok in s.split_whitespace() {
            let at = pos + s[pos..].find(tok).expect("token comes from s");
            pos = at + tok.len();
            let letter = match tok.as_bytes()[0] {
                b'a' => FreeLetter::Alpha,
                b'b' => FreeLetter::Beta,
                _ => return Err(ParseError::new(at, "expected a (alpha) or b (beta)")),
            };
            let rest = &tok[1..];
            let exp = if rest.is_empty() {
                1
            } else if let Some(num) = rest.strip_prefix('^') {
                num.parse::<i64>()
                    .map_err(|_| ParseError::new(at + 2, "expected an integer exponent"))?
            } else {
                return Err(ParseError::new(at + 1, "expected '^' or whitespace"));
            };
            blocks.push((letter, exp));
        }
        Ok(FreeWord::new(blocks))
    }
}

/// `μ` as a maximally extended table.
pub fn evaluate_free(mu: &FreeWord) -> Table {
    mu.blocks
        .iter()
        .fold(Table::identity(), |acc, &(l, e)| multiply(&acc, &power(l.table(), e)))
}

/// `μ(x) = y·a` and `μ(x') = y·b` for the designated inputs `x, x'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessPair {
    pub y: Word,
    pub inputs: (Word, Word),
    pub images: (Word, Word),
}

fn word(s: &str) -> Word {
    s.parse().expect("literal word")
}

fn push_power(w: &mut Word, letter: Letter, e: u64) {
    w.push_run(letter, e as usize);
}

fn sign_letter(e: i64) -> Letter {
    if e > 0 {
        Letter::A
    } else {
        Letter::B
    }
}

/// The connecting word `w_i` between blocks `i + 1` and `i`, keyed by the
/// signs of `h_{i+1}` and `k_i`.
fn inner_w(h_next: i64, k: i64) -> &'static str {
    match (h_next > 0, k > 0) {
        (true, true) => "ba^3",
        (true, false) => "ba^2b",
        (false, true) => "a^4",
        (false, false) => "a^3b",
    }
}

/// `t_i`, keyed by the signs of `h_i` and `k_i`.
fn inner_t(h: i64, k: i64) -> &'static str {
    match (h > 0, k > 0) {
        (true, true) => "bab^2",
        (true, false) => "a^2b^2",
        (false, true) => "baba",
        (false, false) => "a^2ba",
    }
}

/// The closed-form images of the designated inputs under `μ`.
pub fn closed_form_witness(mu: &FreeWord) -> Result<WitnessPair> {
    if mu.is_empty() {
        return Err(Error::Precondition("the identity has no distortion witness".into()));
    }
    let pairs = mu.exponent_pairs();
    let m = pairs.len();
    let ends_alpha = pairs[0].0 != 0;
    let mut s = Word::empty();
    for i in (1..=m).rev() {
        let (h, k) = pairs[i - 1];
        if k != 0 {
            let w_i = if i == m {
                if k > 0 { "a^3" } else { "a^2b" }
            } else {
                inner_w(pairs[i].0, k)
            };
            s.append(&word(w_i));
            push_power(&mut s, sign_letter(k), k.unsigned_abs() - 1);
        }
        if i == 1 && !ends_alpha {
            break;
        }
        let t_i = if i == m && k == 0 {
            if h > 0 { "b^3" } else { "b^2a" }
        } else {
            inner_t(h, k)
        };
        s.append(&word(t_i));
        push_power(&mut s, sign_letter(h), h.unsigned_abs() - 1);
    }
    let (inputs, tails) = if ends_alpha {
        let h1 = pairs[0].0;
        ((word("a"), word("ba")), if h1 > 0 { ("ba", "b^2") } else { ("a^2", "ab") })
    } else {
        let k1 = pairs[0].1;
        ((word("b"), word("ab")), if k1 > 0 { ("ba", "b^2") } else { ("a^2", "ab") })
    };
    let first = s.concat(&word(tails.0));
    let second = s.concat(&word(tails.1));
    let y = first.prefix(first.len() - 1);
    debug_assert_eq!(second.prefix(second.len() - 1), y);
    Ok(WitnessPair {
        y,
        inputs,
        images: (first, second),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DistortionReport {
    pub word: String,
    pub free_length: u64,
    pub witness: WitnessPair,
    pub table_size: usize,
    /// The closed form agrees with evaluating the tables.
    pub closed_form_matches: bool,
    /// `|y| > |μ|`.
    pub witness_longer: bool,
    /// `‖max μ‖ > |μ|`.
    pub table_size_exceeds: bool,
}

impl DistortionReport {
    pub fn all_hold(&self) -> bool {
        self.closed_form_matches && self.witness_longer && self.table_size_exceeds
    }
}

pub fn verify_distortion(mu: &FreeWord) -> Result<DistortionReport> {
    let witness = closed_form_witness(mu)?;
    let t = evaluate_free(mu);
    let free_length = mu.free_length();
    let closed_form_matches = t.apply(&witness.inputs.0).as_ref() == Some(&witness.images.0)
        && t.apply(&witness.inputs.1).as_ref() == Some(&witness.images.1);
    Ok(DistortionReport {
        word: mu.to_string(),
        free_length,
        table_size: t.size(),
        closed_form_matches,
        witness_longer: witness.y.len() as u64 > free_length,
        table_size_exceeds: t.size() as u64 > free_length,
        witness,
    })
}

fn double(g: &Table, letter: Letter) -> Table {
    let fixed = Word::power(letter.other(), 1);
    let mut entries: Vec<(Word, Word)> = g
        .entries()
        .map(|(x, y)| {
            let lift = |w: &Word| Word::power(letter, 1).concat(w);
            (lift(x), lift(y))
        })
        .collect();
    entries.push((fixed.clone(), fixed));
    Table::new(entries)
        .expect("doubling a maximal table gives a maximal table")
        .max_extend()
}

/// `φ_a`: `ax ↦ aφ(x)`, `b ↦ b`, maximally extended.
pub fn double_a(g: &Table) -> Table {
    double(g, Letter::A)
}

/// `φ_b`: `a ↦ a`, `bx ↦ bφ(x)`, maximally extended.
pub fn double_b(g: &Table) -> Table {
    double(g, Letter::B)
}

/// `‖φ_a ψ_b‖ = ‖φ‖ + ‖ψ‖` for non-identity maximal `φ, ψ`.
pub fn product_size_check(g: &Table, h: &Table) -> Result<bool> {
    if g.is_identity() || h.is_identity() {
        return Err(Error::Precondition("both factors must differ from the identity".into()));
    }
    let (g, h) = (g.max_extend(), h.max_extend());
    Ok(multiply(&double_a(&g), &double_b(&h)).size() == g.size() + h.size())
}

/// A reduced word with `blocks` blocks and exponents in `[-max_exp, max_exp] ∖ {0}`.
pub fn random_free_word<R: Rng + ?Sized>(rng: &mut R, blocks: usize, max_exp: i64) -> FreeWord {
    assert!(max_exp >= 1);
    let mut letter = if rng.gen_bool(0.5) { FreeLetter::Alpha } else { FreeLetter::Beta };
    let mut out = Vec::with_capacity(blocks);
    for _ in 0..blocks {
        let e = rng.gen_range(1..=max_exp) * if rng.gen_bool(0.5) { 1 } else { -1 };
        out.push((letter, e));
        letter = match letter {
            FreeLetter::Alpha => FreeLetter::Beta,
            FreeLetter::Beta => FreeLetter::Alpha,
        };
    }
    FreeWord::new(out)
}
