//! Elements of V as tables between finite maximal prefix codes.
//!
//! A [`PartialIso`] is the table of a right-ideal isomorphism between
//! finitely generated right ideals: a bijection from one finite prefix code
//! onto another, extended by `φ(p·x) = φ(p)·x`. A [`Table`] is a partial
//! isomorphism whose two codes are maximal. Elements of V are the tables
//! that admit no further extension; [`Table::max_extend`] computes that
//! representative and [`multiply`] is the group law.
//!
//! Entries are kept sorted by domain word in dictionary order, so two tables
//! are literally equal iff they describe the same finite map.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::words::{parse_word_prefix, Letter, MaximalPrefixCode, PrefixCode, Word};

/// Largest table size accepted by [`enumerate_elements`] by default.
pub const DEFAULT_ELEMENT_BOUND: usize = 5;

/// A bijection between two finite prefix codes, read as a right-ideal
/// isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialIso {
    domain: PrefixCode,
    images: Vec<Word>,
}

impl PartialIso {
    /// Build from `(x, φ(x))` pairs in any order.
    pub fn new(mut entries: Vec<(Word, Word)>) -> Result<PartialIso> {
        entries.sort_by(|p, q| p.0.cmp(&q.0));
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::Duplicate {
                    word: pair[0].0.clone(),
                    side: "domain",
                });
            }
        }
        let (domain, images): (Vec<Word>, Vec<Word>) = entries.into_iter().unzip();
        let domain = PrefixCode::new(domain)?;
        let mut sorted = images.clone();
        sorted.sort();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::Duplicate {
                    word: pair[0].clone(),
                    side: "range",
                });
            }
        }
        PrefixCode::new(sorted)?;
        Ok(PartialIso { domain, images })
    }

    /// `domain` sorted, `images` aligned and forming a prefix code.
    pub(crate) fn from_parts_unchecked(domain: Vec<Word>, images: Vec<Word>) -> PartialIso {
        debug_assert_eq!(domain.len(), images.len());
        let iso = PartialIso {
            domain: PrefixCode::from_sorted_unchecked(domain),
            images,
        };
        debug_assert!(iso.range_is_prefix_code(), "images do not form a prefix code: {iso}");
        iso
    }

    fn range_is_prefix_code(&self) -> bool {
        let mut r = self.images.clone();
        r.sort();
        r.windows(2).all(|p| !p[0].is_prefix_of(&p[1]))
    }

    pub fn identity_on(code: &PrefixCode) -> PartialIso {
        PartialIso {
            domain: code.clone(),
            images: code.words().to_vec(),
        }
    }

    pub fn domain(&self) -> &[Word] {
        self.domain.words()
    }

    pub fn domain_code(&self) -> &PrefixCode {
        &self.domain
    }

    /// Images aligned with [`PartialIso::domain`].
    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn range_code(&self) -> PrefixCode {
        let mut r = self.images.clone();
        r.sort();
        PrefixCode::from_sorted_unchecked(r)
    }

    pub fn entries(&self) -> impl ExactSizeIterator<Item = (&Word, &Word)> {
        self.domain.words().iter().zip(&self.images)
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Both codes maximal.
    pub fn is_total(&self) -> bool {
        self.domain.is_maximal() && self.range_code().is_maximal()
    }

    /// `φ(w)` if `w` lies in the domain ideal.
    pub fn apply(&self, w: &Word) -> Option<Word> {
        let (i, p) = self.domain.prefix_of(w)?;
        let mut out = self.images[i].clone();
        out.append(&w.suffix_from(p.len()));
        Some(out)
    }

    pub fn invert(&self) -> PartialIso {
        let mut pairs: Vec<(Word, Word)> = self
            .images
            .iter()
            .cloned()
            .zip(self.domain.words().iter().cloned())
            .collect();
        pairs.sort_by(|p, q| p.0.cmp(&q.0));
        let (domain, images) = pairs.into_iter().unzip();
        PartialIso {
            domain: PrefixCode::from_sorted_unchecked(domain),
            images,
        }
    }

    /// `self ∘ first` on the largest right ideal where it is defined.
    ///
    /// Each entry `x → y` of `first` is either carried through the entry of
    /// `self` whose domain word prefixes `y`, or split along the domain words
    /// of `self` that extend `y`.
    pub fn after(&self, first: &PartialIso) -> PartialIso {
        let mut domain = Vec::with_capacity(first.size() + self.size());
        let mut images = Vec::with_capacity(first.size() + self.size());
        for (x, y) in first.entries() {
            if let Some((i, d)) = self.domain.prefix_of(y) {
                domain.push(x.clone());
                let mut img = self.images[i].clone();
                img.append(&y.suffix_from(d.len()));
                images.push(img);
            } else {
                for i in self.domain.extensions_of(y) {
                    let d = &self.domain.words()[i];
                    domain.push(x.concat(&d.suffix_from(y.len())));
                    images.push(self.images[i].clone());
                }
            }
        }
        PartialIso::from_parts_unchecked(domain, images)
    }

    /// Replace the entry `p → q` by `{p·z → q·z : z ∈ code}`.
    pub fn restrict(&self, p: &Word, code: &PrefixCode) -> Result<PartialIso> {
        let i = self.domain.index_of(p).ok_or_else(|| Error::NotInDomain(p.clone()))?;
        let q = &self.images[i];
        let n = self.size() + code.len() - 1;
        let mut domain = Vec::with_capacity(n);
        let mut images = Vec::with_capacity(n);
        domain.extend_from_slice(&self.domain.words()[..i]);
        images.extend_from_slice(&self.images[..i]);
        for z in code.words() {
            domain.push(p.concat(z));
            images.push(q.concat(z));
        }
        domain.extend_from_slice(&self.domain.words()[i + 1..]);
        images.extend_from_slice(&self.images[i + 1..]);
        Ok(PartialIso::from_parts_unchecked(domain, images))
    }

    /// The unique maximum extension: merge `x·a → y·a, x·b → y·b` into
    /// `x → y` until no such pair remains.
    ///
    /// Entries are scanned in domain order with a stack; the two children of
    /// a vertex become adjacent on the stack exactly when both subtrees have
    /// been merged, so one pass reaches the fixpoint.
    pub fn max_extend(&self) -> PartialIso {
        let mut stack: Vec<(Word, Word)> = Vec::with_capacity(self.size());
        for (x, y) in self.entries() {
            stack.push((x.clone(), y.clone()));
            while stack.len() >= 2 {
                let n = stack.len();
                let merged = sibling_parent(&stack[n - 2], &stack[n - 1]);
                match merged {
                    Some(parent) => {
                        stack.truncate(n - 2);
                        stack.push(parent);
                    }
                    None => break,
                }
            }
        }
        let (domain, images) = stack.into_iter().unzip();
        PartialIso::from_parts_unchecked(domain, images)
    }

    /// No pair of entries `x·a → y·a, x·b → y·b`.
    pub fn is_maximally_extended(&self) -> bool {
        let e: Vec<_> = self.entries().collect();
        e.windows(2)
            .all(|p| sibling_parent(&(p[0].0.clone(), p[0].1.clone()), &(p[1].0.clone(), p[1].1.clone())).is_none())
    }
}

/// `(x, y)` when the two entries are `x·a → y·a` and `x·b → y·b`.
fn sibling_parent(left: &(Word, Word), right: &(Word, Word)) -> Option<(Word, Word)> {
    let split = |u: &Word, v: &Word| -> Option<Word> {
        if u.len() != v.len() || u.last() != Some(Letter::A) || v.last() != Some(Letter::B) {
            return None;
        }
        let p = u.prefix(u.len() - 1);
        p.is_prefix_of(v).then_some(p)
    };
    let x = split(&left.0, &right.0)?;
    let y = split(&left.1, &right.1)?;
    Some((x, y))
}

impl fmt::Display for PartialIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (x, y)) in self.entries().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}->{y}")?;
        }
        f.write_str("]")
    }
}

/// A table between two maximal prefix codes. Literal equality compares the
/// finite maps; use [`equal_in_v`] for equality as group elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Table {
    iso: PartialIso,
}

impl Table {
    pub fn new(entries: Vec<(Word, Word)>) -> Result<Table> {
        Table::try_from(PartialIso::new(entries)?)
    }

    /// The table `domain[i] → images[i]`.
    pub fn from_codes(domain: &MaximalPrefixCode, images: Vec<Word>) -> Result<Table> {
        if domain.len() != images.len() {
            return Err(Error::SizeMismatch {
                domain: domain.len(),
                range: images.len(),
            });
        }
        Table::new(domain.words().iter().cloned().zip(images).collect())
    }

    /// `[ε → ε]`.
    pub fn identity() -> Table {
        Table {
            iso: PartialIso::identity_on(MaximalPrefixCode::root().as_prefix_code()),
        }
    }

    pub fn identity_on(code: &MaximalPrefixCode) -> Table {
        Table {
            iso: PartialIso::identity_on(code.as_prefix_code()),
        }
    }

    fn wrap(iso: PartialIso) -> Table {
        debug_assert!(iso.is_total(), "table codes are not maximal: {iso}");
        Table { iso }
    }

    pub fn as_partial(&self) -> &PartialIso {
        &self.iso
    }

    pub fn domain(&self) -> &[Word] {
        self.iso.domain()
    }

    pub fn images(&self) -> &[Word] {
        self.iso.images()
    }

    pub fn entries(&self) -> impl ExactSizeIterator<Item = (&Word, &Word)> {
        self.iso.entries()
    }

    pub fn domain_code(&self) -> MaximalPrefixCode {
        MaximalPrefixCode::from_sorted_unchecked(self.iso.domain().to_vec())
    }

    pub fn range_code(&self) -> MaximalPrefixCode {
        MaximalPrefixCode::from_sorted_unchecked(self.iso.range_code().into_words())
    }

    /// The table size `‖t‖`, the number of entries.
    pub fn size(&self) -> usize {
        self.iso.size()
    }

    pub fn is_identity(&self) -> bool {
        *self == Table::identity()
    }

    pub fn apply(&self, w: &Word) -> Option<Word> {
        self.iso.apply(w)
    }

    pub fn invert(&self) -> Table {
        Table::wrap(self.iso.invert())
    }

    /// Literal composite `self ∘ first`; not maximally extended.
    pub fn after(&self, first: &Table) -> Table {
        Table::wrap(self.iso.after(&first.iso))
    }

    pub fn max_extend(&self) -> Table {
        Table::wrap(self.iso.max_extend())
    }

    pub fn is_maximally_extended(&self) -> bool {
        self.iso.is_maximally_extended()
    }

    /// Replace the entry at `p` by its refinement along `code`.
    pub fn restrict(&self, p: &Word, code: &MaximalPrefixCode) -> Result<Table> {
        Ok(Table::wrap(self.iso.restrict(p, code.as_prefix_code())?))
    }

    /// Images listed in domain order are increasing. For a maximal table
    /// this decides membership in F.
    pub fn preserves_dict_order(&self) -> bool {
        self.images().windows(2).all(|p| p[0] < p[1])
    }

    /// Length of the longest word in either code.
    pub fn longest_entry(&self) -> usize {
        self.entries()
            .map(|(x, y)| x.len().max(y.len()))
            .max()
            .unwrap_or(0)
    }

    pub fn to_repr(&self) -> TableRepr {
        TableRepr {
            domain: self.domain().iter().map(Word::to_string).collect(),
            range: self.images().iter().map(Word::to_string).collect(),
        }
    }
}

impl TryFrom<PartialIso> for Table {
    type Error = Error;

    fn try_from(iso: PartialIso) -> Result<Table> {
        if iso.domain.is_empty() {
            return Err(Error::EmptyCode);
        }
        if !iso.domain.is_maximal() {
            return Err(Error::NotMaximal(format!("domain code {}", iso.domain)));
        }
        let range = iso.range_code();
        if !range.is_maximal() {
            return Err(Error::NotMaximal(format!("range code {range}")));
        }
        Ok(Table { iso })
    }
}

impl From<Table> for PartialIso {
    fn from(t: Table) -> PartialIso {
        t.iso
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.iso.fmt(f)
    }
}

/// JSON form of a table: parallel arrays in domain dictionary order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRepr {
    pub domain: Vec<String>,
    pub range: Vec<String>,
}

impl TryFrom<&TableRepr> for Table {
    type Error = ParseError;

    fn try_from(r: &TableRepr) -> std::result::Result<Table, ParseError> {
        if r.domain.len() != r.range.len() {
            return Err(ParseError::new(0, "domain and range arrays differ in length"));
        }
        let mut entries = Vec::with_capacity(r.domain.len());
        for (x, y) in r.domain.iter().zip(&r.range) {
            entries.push((x.parse::<Word>()?, y.parse::<Word>()?));
        }
        Table::new(entries).map_err(|e| ParseError::new(0, e.to_string()))
    }
}

fn skip_ws(s: &str, i: usize) -> usize {
    i + s[i..].len() - s[i..].trim_start().len()
}

/// Parse `[x1->y1, x2->y2, ...]`.
pub fn parse_entries(s: &str) -> std::result::Result<Vec<(Word, Word)>, ParseError> {
    let mut i = skip_ws(s, 0);
    if !s[i..].starts_with('[') {
        return Err(ParseError::new(i, "expected '['"));
    }
    i = skip_ws(s, i + 1);
    let mut entries = Vec::new();
    if s[i..].starts_with(']') {
        i = skip_ws(s, i + 1);
        if i != s.len() {
            return Err(ParseError::new(i, "trailing input after ']'"));
        }
        return Ok(entries);
    }
    loop {
        let (x, used) = parse_word_prefix(&s[i..], i)?;
        i = skip_ws(s, i + used);
        if !s[i..].starts_with("->") {
            return Err(ParseError::new(i, "expected '->'"));
        }
        i = skip_ws(s, i + 2);
        let (y, used) = parse_word_prefix(&s[i..], i)?;
        entries.push((x, y));
        i = skip_ws(s, i + used);
        if s[i..].starts_with(',') {
            i = skip_ws(s, i + 1);
        } else if s[i..].starts_with(']') {
            i = skip_ws(s, i + 1);
            break;
        } else {
            return Err(ParseError::new(i, "expected ',' or ']'"));
        }
    }
    if i != s.len() {
        return Err(ParseError::new(i, "trailing input after ']'"));
    }
    Ok(entries)
}

impl FromStr for PartialIso {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        PartialIso::new(parse_entries(s)?).map_err(|e| ParseError::new(0, e.to_string()))
    }
}

impl FromStr for Table {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Table::new(parse_entries(s)?).map_err(|e| ParseError::new(0, e.to_string()))
    }
}

/// Table from literal syntax; panics on malformed input.
pub fn table(s: &str) -> Table {
    s.parse().unwrap_or_else(|e| panic!("bad table literal {s:?}: {e}"))
}

/// `t2 ∘ t1` (t1 applied first), not maximally extended.
pub fn compose(t2: &Table, t1: &Table) -> Table {
    t2.after(t1)
}

/// The group operation of V: the maximum extension of `t2 ∘ t1`.
pub fn multiply(t2: &Table, t1: &Table) -> Table {
    t2.after(t1).max_extend()
}

pub fn invert(t: &Table) -> Table {
    t.invert()
}

pub fn max_extend(t: &Table) -> Table {
    t.max_extend()
}

/// Same element of V: equal maximum extensions.
pub fn equal_in_v(t1: &Table, t2: &Table) -> bool {
    t1.max_extend() == t2.max_extend()
}

/// `t^n` in V for any integer `n`.
pub fn power(t: &Table, n: i64) -> Table {
    let base = if n < 0 { t.invert() } else { t.clone() };
    let mut acc = Table::identity();
    for _ in 0..n.unsigned_abs() {
        acc = multiply(&base, &acc);
    }
    acc
}

/// Next permutation in lexicographic order; false after the last one.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("pivot has a larger successor");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// All maximally extended tables of size exactly `n`, each once.
pub fn enumerate_elements_bounded(n: usize, bound: usize) -> Result<Vec<Table>> {
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "table size",
            value: n,
            bound,
        });
    }
    let codes = crate::words::enumerate_maximal_codes_bounded(n, bound.max(n))?;
    let mut out = Vec::new();
    for dom in &codes {
        for rng in &codes {
            out.extend(maximal_tables_between(dom, rng));
        }
    }
    Ok(out)
}

pub fn enumerate_elements(n: usize) -> Result<Vec<Table>> {
    enumerate_elements_bounded(n, DEFAULT_ELEMENT_BOUND)
}

/// Every bijection `domain → range` that is already maximally extended.
pub fn maximal_tables_between(domain: &MaximalPrefixCode, range: &MaximalPrefixCode) -> Vec<Table> {
    let n = domain.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        let images = perm.iter().map(|&i| range.words()[i].clone()).collect();
        let iso = PartialIso::from_parts_unchecked(domain.words().to_vec(), images);
        if iso.is_maximally_extended() {
            out.push(Table::wrap(iso));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    fn sigma() -> Table {
        table("[a^2->a, ab->ba, b->b^2]")
    }

    fn theta() -> Table {
        table("[a->a, ba^2->ba, bab->b^2a, b^2->b^3]")
    }

    fn b_example() -> Table {
        table("[a->a, ba->ba^2, b^2a->bab, b^3->b^2]")
    }

    fn c_example() -> Table {
        table("[a^2->a, ab->ba, bab->b^3a, ba^2->b^2a, b^2->b^4]")
    }

    #[test]
    fn apply_follows_right_ideal_extension() {
        assert_eq!(sigma().apply(&w("aa")), Some(w("a")));
        assert_eq!(sigma().apply(&w("aabb")), Some(w("abb")));
        assert_eq!(sigma().apply(&w("a")), None);
        assert_eq!(sigma().apply(&w("b")), Some(w("bb")));
    }

    #[test]
    fn composition_of_the_algebra_example() {
        let cb = compose(&c_example(), &b_example());
        assert_eq!(cb, table("[a^2->a, ab->ba, ba->b^2a, b^2a->b^3a, b^3->b^4]"));
        assert_eq!(cb.max_extend(), sigma());
        assert_eq!(multiply(&c_example(), &b_example()), sigma());
        assert!(equal_in_v(&cb, &sigma()));
    }

    #[test]
    fn composition_with_inverse_and_identity() {
        let t = theta();
        let r = compose(&t, &t.invert());
        assert_eq!(r, Table::identity_on(&t.range_code()));
        assert_eq!(compose(&Table::identity(), &t), t);
        assert_eq!(multiply(&t.invert(), &t), Table::identity());
    }

    #[test]
    fn max_extension_examples() {
        assert_eq!(table("[a->a, ba->ba, bb->bb]").max_extend(), Table::identity());
        let g = table("[aa->ab, ab->aa, b->b]");
        assert_eq!(g.max_extend(), g);
        assert!(g.is_maximally_extended());
        let cb = compose(&c_example(), &b_example());
        assert_eq!(cb.max_extend().max_extend(), cb.max_extend());
    }

    #[test]
    fn inversion() {
        assert_eq!(sigma().invert(), table("[a->a^2, ba->ab, b^2->b]"));
        assert_eq!(Table::identity().invert(), Table::identity());
        assert_eq!(theta().invert().invert(), theta());
    }

    #[test]
    fn equality_in_v() {
        assert!(!equal_in_v(&sigma(), &theta()));
        let t = theta();
        let r = t.restrict(&w("a"), &"{a, b}".parse().unwrap()).unwrap();
        assert!(equal_in_v(&t, &r));
        assert_ne!(t, r);
    }

    #[test]
    fn restriction() {
        let ab: MaximalPrefixCode = "{a, b}".parse().unwrap();
        assert_eq!(
            Table::identity().restrict(&Word::empty(), &ab).unwrap(),
            table("[a->a, b->b]")
        );
        assert_eq!(
            sigma().restrict(&w("b"), &ab).unwrap(),
            table("[a^2->a, ab->ba, ba->b^2a, bb->b^3]")
        );
        assert!(matches!(sigma().restrict(&w("a"), &ab), Err(Error::NotInDomain(_))));
    }

    #[test]
    fn dictionary_order_preservation() {
        assert!(sigma().preserves_dict_order());
        assert!(theta().preserves_dict_order());
        assert!(!table("[a->b, b->a]").preserves_dict_order());
    }

    #[test]
    fn longest_entries() {
        assert_eq!(Table::identity().longest_entry(), 0);
        assert_eq!(sigma().longest_entry(), 2);
        let alpha = table("[a->b^4a, b^3->b^3a, b^2ab->b^2a, b^2a^3->a, b^2a^2b->ba, ba->b^5]");
        assert_eq!(alpha.longest_entry(), 5);
    }

    #[test]
    fn invalid_tables_are_rejected() {
        assert!("[a->a]".parse::<Table>().is_err());
        assert!(Table::new(vec![(w("a"), w("a")), (w("b"), w("a"))]).is_err());
        assert!(Table::new(vec![(w("a"), w("a")), (w("a"), w("b"))]).is_err());
        assert!(Table::new(vec![]).is_err());
        let e = "[a->a, b=>b]".parse::<Table>().unwrap_err();
        assert_eq!(e.position, 8);
    }

    #[test]
    fn small_element_counts() {
        assert_eq!(enumerate_elements(1).unwrap(), vec![Table::identity()]);
        let two = enumerate_elements(2).unwrap();
        assert_eq!(two, vec![table("[a->b, b->a]")]);
        assert!(enumerate_elements(6).is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(power(&sigma(), 0), Table::identity());
        assert_eq!(power(&sigma(), -1), sigma().invert());
        assert_eq!(multiply(&power(&sigma(), 3), &power(&sigma(), -3)), Table::identity());
    }

    #[test]
    fn json_form() {
        let r = sigma().to_repr();
        assert_eq!(r.domain, vec!["aa", "ab", "b"]);
        assert_eq!(r.range, vec!["a", "ba", "bb"]);
        assert_eq!(Table::try_from(&r).unwrap(), sigma());
    }

    #[test]
    fn permutations_are_enumerated_once() {
        let mut p = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(p, vec![3, 2, 1, 0]);
    }
}
