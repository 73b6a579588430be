//! Words over the alphabet {a, b}, the prefix order, and finite prefix codes.
//!
//! Words are packed bit strings (`a` = 0, `b` = 1, most significant bit first)
//! with an explicit length. Unused bits of the last block are always zero, so
//! derived equality and hashing are structural.
//!
//! The total order on words is the dictionary order: a word precedes all of
//! its extensions, otherwise the first differing letter decides with a < b.
//! `Ord` on [`Word`] is this order, and every code in this crate is stored
//! sorted by it.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, ParseError, Result};

/// Largest cardinality accepted by [`enumerate_maximal_codes`] unless the
/// caller supplies its own bound.
pub const DEFAULT_ENUMERATION_BOUND: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub const ALL: [Letter; 2] = [Letter::A, Letter::B];

    pub fn other(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }

    fn bit(self) -> u64 {
        match self {
            Letter::A => 0,
            Letter::B => 1,
        }
    }
}

/// Mask selecting the top `count` bits of a block.
fn top_mask(count: usize) -> u64 {
    match count {
        0 => 0,
        64.. => !0,
        c => !0u64 << (64 - c),
    }
}

/// A finite word over {a, b}.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    blocks: SmallVec<[u64; 2]>,
    len: usize,
}

impl Word {
    /// The empty word ε.
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// `letter` repeated `count` times.
    pub fn power(letter: Letter, count: usize) -> Word {
        let mut w = Word::empty();
        w.push_run(letter, count);
        w
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn letter(&self, i: usize) -> Letter {
        assert!(i < self.len, "letter index {i} out of range for word of length {}", self.len);
        if (self.blocks[i / 64] >> (63 - i % 64)) & 1 == 0 {
            Letter::A
        } else {
            Letter::B
        }
    }

    pub fn first(&self) -> Option<Letter> {
        (self.len > 0).then(|| self.letter(0))
    }

    pub fn last(&self) -> Option<Letter> {
        (self.len > 0).then(|| self.letter(self.len - 1))
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + ExactSizeIterator + '_ {
        (0..self.len).map(move |i| self.letter(i))
    }

    pub fn push(&mut self, letter: Letter) {
        self.push_bits(letter.bit() << 63, 1);
    }

    pub fn push_run(&mut self, letter: Letter, mut count: usize) {
        let fill = if letter == Letter::B { !0u64 } else { 0 };
        while count > 0 {
            let n = count.min(64);
            self.push_bits(fill, n);
            count -= n;
        }
    }

    /// Append the top `count` bits of `bits` (`count` ≤ 64).
    fn push_bits(&mut self, bits: u64, count: usize) {
        if count == 0 {
            return;
        }
        let bits = bits & top_mask(count);
        let off = self.len % 64;
        if off == 0 {
            self.blocks.push(bits);
        } else {
            let last = self.blocks.len() - 1;
            self.blocks[last] |= bits >> off;
            if off + count > 64 {
                self.blocks.push(bits << (64 - off));
            }
        }
        self.len += count;
    }

    /// Read `count` ≤ 64 bits starting at bit `start`, left-aligned.
    fn read_bits(&self, start: usize, count: usize) -> u64 {
        if count == 0 {
            return 0;
        }
        let block = start / 64;
        let off = start % 64;
        let mut v = self.blocks[block] << off;
        if off > 0 && off + count > 64 {
            v |= self.blocks[block + 1] >> (64 - off);
        }
        v & top_mask(count)
    }

    fn append_range(&mut self, src: &Word, start: usize, end: usize) {
        let mut pos = start;
        while pos < end {
            let n = (end - pos).min(64);
            self.push_bits(src.read_bits(pos, n), n);
            pos += n;
        }
    }

    pub fn append(&mut self, other: &Word) {
        if self.len.is_multiple_of(64) {
            self.blocks.extend_from_slice(&other.blocks);
            self.len += other.len;
        } else {
            self.append_range(other, 0, other.len);
        }
    }

    /// The concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.append(other);
        w
    }

    /// The word `self · letter`.
    pub fn child(&self, letter: Letter) -> Word {
        let mut w = self.clone();
        w.push(letter);
        w
    }

    /// The first `n` letters.
    pub fn prefix(&self, n: usize) -> Word {
        assert!(n <= self.len);
        let mut w = Word::empty();
        w.append_range(self, 0, n);
        w
    }

    /// Everything after the first `n` letters.
    pub fn suffix_from(&self, n: usize) -> Word {
        assert!(n <= self.len);
        let mut w = Word::empty();
        w.append_range(self, n, self.len);
        w
    }

    /// The word with its last letter removed, or `None` for ε.
    pub fn parent(&self) -> Option<Word> {
        (self.len > 0).then(|| self.prefix(self.len - 1))
    }

    /// True iff `other = self · x` for some word x.
    pub fn is_prefix_of(&self, other: &Word) -> bool {
        if self.len > other.len {
            return false;
        }
        let full = self.len / 64;
        if self.blocks[..full] != other.blocks[..full] {
            return false;
        }
        let rem = self.len % 64;
        rem == 0 || self.blocks[full] == other.blocks[full] & top_mask(rem)
    }

    /// True iff `self` is a prefix of `other` and shorter than it.
    pub fn is_strict_prefix_of(&self, other: &Word) -> bool {
        self.len < other.len && self.is_prefix_of(other)
    }

    /// Returns x with `self = prefix · x`, if `prefix` is a prefix of `self`.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        prefix.is_prefix_of(self).then(|| self.suffix_from(prefix.len))
    }

    pub fn is_prefix_comparable(&self, other: &Word) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// Number of trailing occurrences of `letter`.
    pub fn trailing(&self, letter: Letter) -> usize {
        self.letters().rev().take_while(|&l| l == letter).count()
    }

    /// Number of leading occurrences of `letter`.
    pub fn leading(&self, letter: Letter) -> usize {
        self.letters().take_while(|&l| l == letter).count()
    }

    /// True iff the word lies in `letter`*, ε included.
    pub fn is_power_of(&self, letter: Letter) -> bool {
        self.leading(letter) == self.len
    }

    /// Maximal runs of equal letters, left to right.
    pub fn runs(&self) -> Vec<(Letter, usize)> {
        let mut runs: Vec<(Letter, usize)> = Vec::new();
        for l in self.letters() {
            match runs.last_mut() {
                Some((prev, n)) if *prev == l => *n += 1,
                _ => runs.push((l, 1)),
            }
        }
        runs
    }

    /// Render with every run of length ≥ 2 written as `x^k`; ε is `e`.
    pub fn to_compressed_string(&self) -> String {
        if self.is_empty() {
            return "e".to_string();
        }
        let mut s = String::new();
        for (l, n) in self.runs() {
            s.push(l.as_char());
            if n > 1 {
                s.push('^');
                s.push_str(&n.to_string());
            }
        }
        s
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.len.min(other.len);
        let mut pos = 0;
        let mut block = 0;
        while pos < common {
            let n = (common - pos).min(64);
            let m = top_mask(n);
            let x = (self.blocks[block] ^ other.blocks[block]) & m;
            if x != 0 {
                let bit = 1u64 << (63 - x.leading_zeros());
                return if self.blocks[block] & bit != 0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
            pos += n;
            block += 1;
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The dictionary order; identical to `Ord` on [`Word`].
pub fn dict_compare(u: &Word, v: &Word) -> Ordering {
    u.cmp(v)
}

pub fn is_prefix(u: &Word, v: &Word) -> bool {
    u.is_prefix_of(v)
}

pub fn strip_prefix(u: &Word, v: &Word) -> Option<Word> {
    v.strip_prefix(u)
}

impl fmt::Display for Word {
    /// Words of length ≤ 4 are written letter by letter; longer words use
    /// the run-compressed `x^k` form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("e");
        }
        if self.len <= 4 {
            for l in self.letters() {
                write!(f, "{}", l.as_char())?;
            }
            Ok(())
        } else {
            f.write_str(&self.to_compressed_string())
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Parse a run of digits at the start of `s`, returning the value and the
/// number of bytes consumed.
pub(crate) fn parse_uint(s: &str, offset: usize) -> std::result::Result<(usize, usize), ParseError> {
    let digits = s.bytes().take_while(u8::is_ascii_digit).count();
    if digits == 0 {
        return Err(ParseError::new(offset, "expected a non-negative integer"));
    }
    let value = s[..digits]
        .parse::<usize>()
        .map_err(|_| ParseError::new(offset, "integer out of range"))?;
    Ok((value, digits))
}

/// Parse a word at the start of `s`; returns the word and the bytes consumed.
/// Stops at the first character that cannot continue a word.
pub(crate) fn parse_word_prefix(s: &str, offset: usize) -> std::result::Result<(Word, usize), ParseError> {
    let bytes = s.as_bytes();
    if bytes.first() == Some(&b'e') {
        let next = bytes.get(1);
        if matches!(next, Some(b'a' | b'b' | b'e' | b'^')) {
            return Err(ParseError::new(offset + 1, "'e' (the empty word) must stand alone"));
        }
        return Ok((Word::empty(), 1));
    }
    let mut w = Word::empty();
    let mut i = 0;
    while i < bytes.len() {
        let letter = match bytes[i] {
            b'a' => Letter::A,
            b'b' => Letter::B,
            _ => break,
        };
        i += 1;
        // `^-` belongs to an enclosing grammar (inverse suffixes), not to the word.
        if bytes.get(i) == Some(&b'^') && bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
            let (n, used) = parse_uint(&s[i + 1..], offset + i + 1)?;
            w.push_run(letter, n);
            i += 1 + used;
        } else {
            w.push(letter);
        }
    }
    if i == 0 {
        return Err(ParseError::new(offset, "expected a word over {a, b} or 'e'"));
    }
    Ok((w, i))
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let t = s.trim();
        let lead = s.len() - s.trim_start().len();
        let (w, used) = parse_word_prefix(t, lead)?;
        if used != t.len() {
            return Err(ParseError::new(lead + used, "unexpected character in word"));
        }
        Ok(w)
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Build a word from literal syntax; panics on malformed input. For tests and
/// fixed tables only.
pub fn w(s: &str) -> Word {
    s.parse().unwrap_or_else(|e| panic!("bad word literal {s:?}: {e}"))
}

/// A finite prefix code, stored sorted in dictionary order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrefixCode {
    words: Vec<Word>,
}

impl PrefixCode {
    /// Sorts and deduplicates `words`, then checks the antichain condition.
    pub fn new(mut words: Vec<Word>) -> Result<PrefixCode> {
        words.sort();
        words.dedup();
        check_antichain(&words)?;
        Ok(PrefixCode { words })
    }

    /// `words` must already be sorted, deduplicated and an antichain.
    pub(crate) fn from_sorted_unchecked(words: Vec<Word>) -> PrefixCode {
        debug_assert!(words.windows(2).all(|p| p[0] < p[1]));
        debug_assert!(check_antichain(&words).is_ok());
        PrefixCode { words }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn into_words(self) -> Vec<Word> {
        self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.words.binary_search(word).is_ok()
    }

    pub fn index_of(&self, word: &Word) -> Option<usize> {
        self.words.binary_search(word).ok()
    }

    pub fn is_maximal(&self) -> bool {
        is_complete_sorted(&self.words)
    }

    /// The code word that is a prefix of `word`, if any.
    pub fn prefix_of(&self, word: &Word) -> Option<(usize, &Word)> {
        // The only candidate is the greatest code word ≤ `word`.
        let i = self.words.partition_point(|c| c <= word);
        if i == 0 {
            return None;
        }
        let c = &self.words[i - 1];
        c.is_prefix_of(word).then_some((i - 1, c))
    }

    /// Index range of the code words that have `word` as a prefix.
    pub fn extensions_of(&self, word: &Word) -> std::ops::Range<usize> {
        let start = self.words.partition_point(|c| c < word);
        let len = self.words[start..]
            .iter()
            .take_while(|c| word.is_prefix_of(c))
            .count();
        start..start + len
    }

    /// True iff `word` belongs to the right ideal generated by the code.
    pub fn generates(&self, word: &Word) -> bool {
        self.prefix_of(word).is_some()
    }
}

impl fmt::Display for PrefixCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_code(f, &self.words)
    }
}

fn write_code(f: &mut fmt::Formatter<'_>, words: &[Word]) -> fmt::Result {
    f.write_str("{")?;
    for (i, w) in words.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{w}")?;
    }
    f.write_str("}")
}

fn check_antichain(sorted: &[Word]) -> Result<()> {
    // In dictionary order, a prefix of some later word is a prefix of its
    // immediate successor.
    for pair in sorted.windows(2) {
        if pair[0].is_prefix_of(&pair[1]) {
            return Err(Error::NotPrefixCode(pair[0].clone(), pair[1].clone()));
        }
    }
    Ok(())
}

/// Leaves of a full binary tree, listed in dictionary order, are exactly the
/// sequences starting in a*, ending in b*, where each successor of `p a b^r`
/// is `p b a^s`.
fn is_complete_sorted(sorted: &[Word]) -> bool {
    let (Some(first), Some(last)) = (sorted.first(), sorted.last()) else {
        return false;
    };
    if !first.is_power_of(Letter::A) || !last.is_power_of(Letter::B) {
        return false;
    }
    sorted.windows(2).all(|pair| {
        let (u, v) = (&pair[0], &pair[1]);
        let r = u.trailing(Letter::B);
        if r == u.len() {
            return false;
        }
        // u = p a b^r
        let p = u.prefix(u.len() - r - 1);
        match v.strip_prefix(&p) {
            Some(rest) => rest.first() == Some(Letter::B) && rest.suffix_from(1).is_power_of(Letter::A),
            None => false,
        }
    })
}

/// A nonempty finite maximal prefix code: the leaves of a full binary tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MaximalPrefixCode {
    code: PrefixCode,
}

impl MaximalPrefixCode {
    pub fn new(words: Vec<Word>) -> Result<MaximalPrefixCode> {
        MaximalPrefixCode::try_from(PrefixCode::new(words)?)
    }

    /// The code {ε}.
    pub fn root() -> MaximalPrefixCode {
        MaximalPrefixCode {
            code: PrefixCode {
                words: vec![Word::empty()],
            },
        }
    }

    pub(crate) fn from_sorted_unchecked(words: Vec<Word>) -> MaximalPrefixCode {
        debug_assert!(is_complete_sorted(&words), "not maximal: {words:?}");
        MaximalPrefixCode {
            code: PrefixCode::from_sorted_unchecked(words),
        }
    }

    /// All words of length `k`, in dictionary order.
    pub fn uniform(k: usize) -> MaximalPrefixCode {
        let mut words = vec![Word::empty()];
        for _ in 0..k {
            words = words
                .iter()
                .flat_map(|w| Letter::ALL.map(|l| w.child(l)))
                .collect();
        }
        MaximalPrefixCode::from_sorted_unchecked(words)
    }

    pub fn as_prefix_code(&self) -> &PrefixCode {
        &self.code
    }

    pub fn words(&self) -> &[Word] {
        &self.code.words
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.code.contains(word)
    }

    pub fn index_of(&self, word: &Word) -> Option<usize> {
        self.code.index_of(word)
    }

    /// Replace the code word `p` by `p·Q`.
    pub fn expand(&self, p: &Word, q: &MaximalPrefixCode) -> Result<MaximalPrefixCode> {
        let i = self.index_of(p).ok_or_else(|| Error::NotInCode(p.clone()))?;
        let mut words = Vec::with_capacity(self.len() + q.len() - 1);
        words.extend_from_slice(&self.words()[..i]);
        words.extend(q.words().iter().map(|z| p.concat(z)));
        words.extend_from_slice(&self.words()[i + 1..]);
        Ok(MaximalPrefixCode::from_sorted_unchecked(words))
    }
}

impl TryFrom<PrefixCode> for MaximalPrefixCode {
    type Error = Error;

    fn try_from(code: PrefixCode) -> Result<Self> {
        if code.is_empty() {
            return Err(Error::EmptyCode);
        }
        if !code.is_maximal() {
            return Err(Error::NotMaximal(code.to_string()));
        }
        Ok(MaximalPrefixCode { code })
    }
}

impl From<MaximalPrefixCode> for PrefixCode {
    fn from(m: MaximalPrefixCode) -> PrefixCode {
        m.code
    }
}

impl fmt::Display for MaximalPrefixCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_code(f, self.words())
    }
}

/// Parse `{w1, w2, ...}` (braces optional) into a prefix code.
impl FromStr for PrefixCode {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut words = Vec::new();
        let lead = s.len() - s.trim_start().len();
        let mut body = s.trim();
        let mut base = lead;
        if let Some(inner) = body.strip_prefix('{') {
            body = inner
                .strip_suffix('}')
                .ok_or_else(|| ParseError::new(lead + s.trim().len(), "missing '}'"))?;
            base += 1;
        }
        if !body.trim().is_empty() {
            let mut pos = base;
            for part in body.split(',') {
                let word: Word = part.parse().map_err(|e: ParseError| e.offset(pos))?;
                words.push(word);
                pos += part.len() + 1;
            }
        }
        PrefixCode::new(words).map_err(|e| ParseError::new(lead, e.to_string()))
    }
}

impl FromStr for MaximalPrefixCode {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let code: PrefixCode = s.parse()?;
        MaximalPrefixCode::try_from(code).map_err(|e| ParseError::new(0, e.to_string()))
    }
}

pub fn is_prefix_code(words: &[Word]) -> bool {
    let mut sorted = words.to_vec();
    sorted.sort();
    sorted.dedup();
    check_antichain(&sorted).is_ok()
}

pub fn is_maximal_prefix_code(words: &[Word]) -> bool {
    let mut sorted = words.to_vec();
    sorted.sort();
    sorted.dedup();
    check_antichain(&sorted).is_ok() && is_complete_sorted(&sorted)
}

/// The minimal generating set of the right ideal generated by `words`: the
/// elements that have no strict prefix in the set. Always a prefix code.
pub fn ideal_generators(words: &[Word]) -> PrefixCode {
    let mut sorted = words.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out: Vec<Word> = Vec::with_capacity(sorted.len());
    for w in sorted {
        // Extensions of a kept word follow it directly in dictionary order.
        if out.last().is_some_and(|p| p.is_prefix_of(&w)) {
            continue;
        }
        out.push(w);
    }
    PrefixCode::from_sorted_unchecked(out)
}

/// `{w : x·w ∈ set}`.
pub fn quotient(x: &Word, set: &PrefixCode) -> PrefixCode {
    let range = set.extensions_of(x);
    let words = set.words()[range]
        .iter()
        .map(|c| c.suffix_from(x.len()))
        .collect();
    PrefixCode::from_sorted_unchecked(words)
}

/// The prefix code generating `P·A* ∩ Q·A*`: the words of either code that
/// have a prefix in the other. Works for arbitrary finite prefix codes; the
/// result is maximal when both inputs are.
pub fn ideal_intersection(p: &PrefixCode, q: &PrefixCode) -> PrefixCode {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let (mut i, mut j) = (0, 0);
    let (pw, qw) = (p.words(), q.words());
    while i < pw.len() && j < qw.len() {
        let (x, y) = (&pw[i], &qw[j]);
        if x.is_prefix_of(y) {
            out.push(y.clone());
            j += 1;
            if x == y {
                i += 1;
            }
        } else if y.is_prefix_of(x) {
            out.push(x.clone());
            i += 1;
        } else if x < y {
            i += 1;
        } else {
            j += 1;
        }
    }
    PrefixCode::from_sorted_unchecked(out)
}

pub fn ideal_intersection_code(p: &MaximalPrefixCode, q: &MaximalPrefixCode) -> MaximalPrefixCode {
    let r = ideal_intersection(p.as_prefix_code(), q.as_prefix_code());
    MaximalPrefixCode::from_sorted_unchecked(r.into_words())
}

/// All maximal prefix codes with `n` words, each once, in a deterministic
/// order. Fails when `n` is 0 or exceeds `bound`.
pub fn enumerate_maximal_codes_bounded(n: usize, bound: usize) -> Result<Vec<MaximalPrefixCode>> {
    if n == 0 {
        return Err(Error::Precondition("code size must be positive".into()));
    }
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "code size",
            value: n,
            bound,
        });
    }
    Ok(full_trees(n)
        .into_iter()
        .map(MaximalPrefixCode::from_sorted_unchecked)
        .collect())
}

pub fn enumerate_maximal_codes(n: usize) -> Result<Vec<MaximalPrefixCode>> {
    enumerate_maximal_codes_bounded(n, DEFAULT_ENUMERATION_BOUND)
}

/// Leaf lists of all full binary trees with `n` leaves: split the leaves
/// between the a-subtree and the b-subtree in every possible way.
fn full_trees(n: usize) -> Vec<Vec<Word>> {
    let mut memo: Vec<Vec<Vec<Word>>> = vec![Vec::new(), vec![vec![Word::empty()]]];
    for m in 2..=n {
        let mut all = Vec::new();
        for left in 1..m {
            for l in &memo[left] {
                for r in &memo[m - left] {
                    let mut leaves = Vec::with_capacity(m);
                    leaves.extend(l.iter().map(|w| Word::power(Letter::A, 1).concat(w)));
                    leaves.extend(r.iter().map(|w| Word::power(Letter::B, 1).concat(w)));
                    all.push(leaves);
                }
            }
        }
        memo.push(all);
    }
    memo.swap_remove(n)
}

/// `C_n = (2n)! / (n! (n+1)!)`.
pub fn catalan(n: u64) -> u64 {
    (0..n).fold(1u64, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

/// `∪ x·Q_x` over the words x of `base`; every word of `base` needs an entry
/// in `family`.
pub fn combine_codes(base: &PrefixCode, family: &BTreeMap<Word, PrefixCode>) -> Result<PrefixCode> {
    let mut words = Vec::new();
    for x in base.words() {
        let q = family.get(x).ok_or_else(|| Error::NotInCode(x.clone()))?;
        words.extend(q.words().iter().map(|z| x.concat(z)));
    }
    // x·Q_x stays inside the subtree of x, so the concatenation is sorted.
    Ok(PrefixCode::from_sorted_unchecked(words))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(ws: &[&str]) -> PrefixCode {
        PrefixCode::new(ws.iter().map(|s| w(s)).collect()).unwrap()
    }

    fn mcode(ws: &[&str]) -> MaximalPrefixCode {
        MaximalPrefixCode::new(ws.iter().map(|s| w(s)).collect()).unwrap()
    }

    #[test]
    fn prefix_relation() {
        assert!(is_prefix(&w("ab"), &w("abba")));
        assert_eq!(strip_prefix(&w("ab"), &w("abba")), Some(w("ba")));
        assert!(is_prefix(&Word::empty(), &w("bab")));
        assert!(!is_prefix(&w("ab"), &w("ba")));
        assert!(!is_prefix(&w("abb"), &w("ab")));
    }

    #[test]
    fn dictionary_order() {
        assert_eq!(dict_compare(&w("a"), &w("ab")), Ordering::Less);
        assert_eq!(dict_compare(&w("ab"), &w("ba")), Ordering::Less);
        assert_eq!(dict_compare(&w("abab"), &w("abab")), Ordering::Equal);
        assert_eq!(dict_compare(&w("b"), &w("aaaa")), Ordering::Greater);
    }

    #[test]
    fn long_words_cross_block_boundaries() {
        let mut u = Word::power(Letter::B, 63);
        u.push(Letter::A);
        u.push_run(Letter::B, 70);
        assert_eq!(u.len(), 134);
        assert_eq!(u.letter(63), Letter::A);
        assert_eq!(u.letter(64), Letter::B);
        let v = u.concat(&w("ab"));
        assert!(u.is_strict_prefix_of(&v));
        assert_eq!(v.strip_prefix(&u), Some(w("ab")));
        assert_eq!(v.suffix_from(63).prefix(2), w("ab"));
        let mut x = Word::power(Letter::B, 64);
        x.push(Letter::B);
        assert!(u < x);
        assert_eq!(u.to_compressed_string(), "b^63ab^70");
    }

    #[test]
    fn word_syntax() {
        assert_eq!(w("a^2b"), w("aab"));
        assert_eq!(w("e"), Word::empty());
        assert_eq!(w("b^0a"), w("a"));
        assert!("".parse::<Word>().is_err());
        assert!("ac".parse::<Word>().is_err());
        assert_eq!("ab^x".parse::<Word>().unwrap_err().position, 2);
        assert_eq!(w("aab").to_string(), "aab");
        assert_eq!(w("aaabbb").to_string(), "a^3b^3");
        assert_eq!(Word::empty().to_string(), "e");
    }

    #[test]
    fn prefix_code_checks() {
        assert!(is_prefix_code(&[w("aa"), w("ab"), w("b")]));
        assert!(!is_prefix_code(&[w("a"), w("ab")]));
        assert!(is_prefix_code(&[]));
        assert!(is_maximal_prefix_code(&[w("aa"), w("ab"), w("b")]));
        assert!(!is_maximal_prefix_code(&[w("aa"), w("b")]));
        assert!(is_maximal_prefix_code(&[Word::empty()]));
        assert!(!is_maximal_prefix_code(&[]));
        assert!(!is_maximal_prefix_code(&[w("a"), w("ab"), w("b")]));
        assert!(matches!(MaximalPrefixCode::new(vec![]), Err(Error::EmptyCode)));
    }

    #[test]
    fn quotients() {
        let l = code(&["aa", "ab", "b"]);
        assert_eq!(quotient(&w("a"), &l), code(&["a", "b"]));
        assert_eq!(quotient(&w("b"), &l), code(&["e"]));
        assert_eq!(quotient(&w("ba"), &l), code(&[]));
    }

    #[test]
    fn intersections() {
        let p = mcode(&["aa", "ab", "b"]);
        let q = mcode(&["a", "ba", "bb"]);
        assert_eq!(ideal_intersection_code(&p, &p), p);
        assert_eq!(ideal_intersection_code(&MaximalPrefixCode::root(), &q), q);
        assert_eq!(ideal_intersection_code(&p, &q), mcode(&["aa", "ab", "ba", "bb"]));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_maximal_codes(1).unwrap(), vec![MaximalPrefixCode::root()]);
        assert_eq!(enumerate_maximal_codes(2).unwrap(), vec![mcode(&["a", "b"])]);
        assert_eq!(enumerate_maximal_codes(4).unwrap().len(), 5);
        assert!(matches!(
            enumerate_maximal_codes(13),
            Err(Error::BoundExceeded { value: 13, bound: 12, .. })
        ));
        assert!(enumerate_maximal_codes(0).is_err());
        assert_eq!((0..8).map(catalan).collect::<Vec<_>>(), vec![1, 1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn combining() {
        let mut fam = BTreeMap::new();
        fam.insert(Word::empty(), code(&["a", "b"]));
        assert_eq!(combine_codes(&code(&["e"]), &fam).unwrap(), code(&["a", "b"]));

        let mut fam = BTreeMap::new();
        fam.insert(w("a"), code(&["e"]));
        fam.insert(w("b"), code(&["a", "b"]));
        assert_eq!(combine_codes(&code(&["a", "b"]), &fam).unwrap(), code(&["a", "ba", "bb"]));

        let mut fam = BTreeMap::new();
        fam.insert(w("a"), code(&["a", "b"]));
        fam.insert(w("b"), code(&["a", "b"]));
        let c = combine_codes(&code(&["a", "b"]), &fam).unwrap();
        assert_eq!(c, code(&["aa", "ab", "ba", "bb"]));
        assert!(c.is_maximal());

        assert!(combine_codes(&code(&["a", "b"]), &BTreeMap::new()).is_err());
    }

    #[test]
    fn code_syntax() {
        let c: MaximalPrefixCode = "{a^2, ab, b}".parse().unwrap();
        assert_eq!(c, mcode(&["aa", "ab", "b"]));
        assert_eq!(c.to_string(), "{aa, ab, b}");
        assert!("{a, b".parse::<PrefixCode>().is_err());
        assert!("{a, ab}".parse::<PrefixCode>().is_err());
        assert_eq!("{}".parse::<PrefixCode>().unwrap(), PrefixCode::default());
    }

    #[test]
    fn expanding_a_leaf() {
        let c = mcode(&["aa", "ab", "b"]);
        let e = c.expand(&w("b"), &mcode(&["a", "b"])).unwrap();
        assert_eq!(e, mcode(&["aa", "ab", "ba", "bb"]));
        assert!(c.expand(&w("a"), &mcode(&["a", "b"])).is_err());
    }
}
