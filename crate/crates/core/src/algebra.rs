//! The polycyclic monoid PC(a, b), its monoid algebra over ℚ, and the
//! correspondence between elements of V and unary sums.
//!
//! A non-zero element of PC(a, b) is `y x^-1` for words x, y; the relations
//! are `a^-1 a = b^-1 b = 1` and `a^-1 b = b^-1 a = 0`. A table `φ` is sent
//! to the sum `Σ φ(x) x^-1` over its domain code; composition of tables
//! becomes multiplication of sums, and maximal extension becomes rewriting
//! with `y a (x a)^-1 + y b (x b)^-1 → y x^-1`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::element::{PartialIso, Table};
use crate::error::{Error, ParseError, Result};
use crate::words::{parse_uint, Letter, PrefixCode, Word};

/// `y x^-1`; `(ε, ε)` is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub y: Word,
    pub x: Word,
}

impl Monomial {
    pub fn new(y: Word, x: Word) -> Monomial {
        Monomial { y, x }
    }

    pub fn one() -> Monomial {
        Monomial::new(Word::empty(), Word::empty())
    }

    pub fn is_one(&self) -> bool {
        self.y.is_empty() && self.x.is_empty()
    }

    /// `(y x^-1)^⋆ = x y^-1`.
    pub fn star(&self) -> Monomial {
        Monomial::new(self.x.clone(), self.y.clone())
    }
}

/// Dictionary order on x, then on y.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x.cmp(&other.x).then_with(|| self.y.cmp(&other.y))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `(y1 x1^-1)(y2 x2^-1)`, or `None` for the zero of PC(a, b).
pub fn mono_mul(m1: &Monomial, m2: &Monomial) -> Option<Monomial> {
    if let Some(z) = m2.y.strip_prefix(&m1.x) {
        // y2 = x1 z
        Some(Monomial::new(m1.y.concat(&z), m2.x.clone()))
    } else {
        // x1 = y2 w
        let w = m1.x.strip_prefix(&m2.y)?;
        Some(Monomial::new(m1.y.clone(), m2.x.concat(&w)))
    }
}

fn write_runs(f: &mut fmt::Formatter<'_>, runs: impl Iterator<Item = (Letter, usize)>, sign: &str) -> fmt::Result {
    for (l, n) in runs {
        write!(f, "{}", l.as_char())?;
        if n != 1 || !sign.is_empty() {
            write!(f, "^{sign}{n}")?;
        }
    }
    Ok(())
}

/// `y` in run-compressed form followed by `x^-1` written letter-power by
/// letter-power: `bab^-1a^-1` is `ba (ab)^-1`.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        write_runs(f, self.y.runs().into_iter(), "")?;
        write_runs(f, self.x.runs().into_iter().rev(), "-")
    }
}

/// A finite formal sum with non-zero rational coefficients; the empty sum
/// is zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, BigRational>,
}

impl AlgebraElement {
    pub fn zero() -> AlgebraElement {
        AlgebraElement::default()
    }

    pub fn one() -> AlgebraElement {
        AlgebraElement::monomial(Monomial::one())
    }

    pub fn monomial(m: Monomial) -> AlgebraElement {
        AlgebraElement::from_terms([(m, BigRational::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(terms: I) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms.iter().map(|(m, k)| (m.clone(), k * c)))
    }

    /// Coefficients over ℚ are fixed by conjugation, so only the monomials
    /// change.
    pub fn star(&self) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms.iter().map(|(m, c)| (m.star(), c.clone())))
    }
}

pub fn multiply(s1: &AlgebraElement, s2: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (m1, c1) in &s1.terms {
        for (m2, c2) in &s2.terms {
            if let Some(m) = mono_mul(m1, m2) {
                out.add_term(m, c1 * c2);
            }
        }
    }
    out
}

pub fn star(s: &AlgebraElement) -> AlgebraElement {
    s.star()
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;

    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;

    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        multiply(self, rhs)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        self.scale(&-BigRational::one())
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if !c.is_one() {
                write!(f, "{c} ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

fn parse_coefficient(tok: &str, at: usize) -> std::result::Result<BigRational, ParseError> {
    let bad = || ParseError::new(at, "malformed rational coefficient");
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ParseError::new(at, "zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// A product of letter powers such as `bab^-1a^-1` or `ba^2 a^{-1}b^{-1}`,
/// reduced in PC(a, b); `None` when it is zero.
fn parse_monomial(s: &str, offset: usize) -> std::result::Result<Option<Monomial>, ParseError> {
    let t = s.trim();
    let lead = offset + s.len() - s.trim_start().len();
    if t == "1" {
        return Ok(Some(Monomial::one()));
    }
    if t == "0" {
        return Ok(None);
    }
    if t.is_empty() {
        return Err(ParseError::new(lead, "empty monomial"));
    }
    let bytes = t.as_bytes();
    let mut acc = Some(Monomial::one());
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let letter = match bytes[i] {
            b'a' => Letter::A,
            b'b' => Letter::B,
            _ => return Err(ParseError::new(lead + i, "expected a or b")),
        };
        i += 1;
        let mut exp: i64 = 1;
        if bytes.get(i) == Some(&b'^') {
            i += 1;
            let braced = bytes.get(i) == Some(&b'{');
            if braced {
                i += 1;
            }
            let negative = bytes.get(i) == Some(&b'-');
            if negative {
                i += 1;
            }
            let (n, used) = parse_uint(&t[i..], lead + i)?;
            i += used;
            if braced {
                if bytes.get(i) != Some(&b'}') {
                    return Err(ParseError::new(lead + i, "expected '}'"));
                }
                i += 1;
            }
            exp = if negative { -(n as i64) } else { n as i64 };
        }
        let run = Word::power(letter, exp.unsigned_abs() as usize);
        let factor = if exp >= 0 {
            Monomial::new(run, Word::empty())
        } else {
            Monomial::new(Word::empty(), run)
        };
        acc = acc.and_then(|m| mono_mul(&m, &factor));
    }
    Ok(acc)
}

/// Terms joined by `+`, each an optional rational coefficient followed by a
/// monomial; `0` is the empty sum.
impl FromStr for AlgebraElement {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut out = AlgebraElement::zero();
        let mut start = 0;
        for part in s.split('+') {
            let at = start;
            start += part.len() + 1;
            let trimmed = part.trim_start();
            let lead = at + part.len() - trimmed.len();
            let trimmed = trimmed.trim_end();
            if trimmed.is_empty() {
                return Err(ParseError::new(lead, "empty term"));
            }
            let (coeff, mono, mono_at) = match trimmed.split_once(char::is_whitespace) {
                Some((first, rest))
                    if first.starts_with(|c: char| c.is_ascii_digit() || c == '-') =>
                {
                    (parse_coefficient(first, lead)?, rest, lead + first.len())
                }
                _ => (BigRational::one(), trimmed, lead),
            };
            if let Some(m) = parse_monomial(mono, mono_at)? {
                out.add_term(m, coeff);
            }
        }
        Ok(out)
    }
}

/// A sum `Σ y_i x_i^-1` with all coefficients 1, `{x_i}` and `{y_i}` prefix
/// codes: the image of a partial table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnarySum {
    sum: AlgebraElement,
}

impl UnarySum {
    pub fn as_element(&self) -> &AlgebraElement {
        &self.sum
    }

    /// `(x_i, y_i)` in dictionary order of `x`.
    pub fn pairs(&self) -> impl Iterator<Item = (&Word, &Word)> {
        self.sum.terms.keys().map(|m| (&m.x, &m.y))
    }

    pub fn len(&self) -> usize {
        self.sum.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sum.is_zero()
    }

    /// The sum of the inverse table.
    pub fn star(&self) -> UnarySum {
        UnarySum { sum: self.sum.star() }
    }

    /// Both coordinate codes maximal.
    pub fn is_maximal(&self) -> bool {
        self.x_code().is_maximal() && self.y_code().is_maximal()
    }

    fn x_code(&self) -> PrefixCode {
        PrefixCode::from_sorted_unchecked(self.pairs().map(|(x, _)| x.clone()).collect())
    }

    fn y_code(&self) -> PrefixCode {
        PrefixCode::new(self.pairs().map(|(_, y)| y.clone()).collect())
            .expect("unary sums have prefix-code range")
    }

    /// Prefixes `p` at which a sibling pair `y a (p a)^-1 + y b (p b)^-1`
    /// can be rewritten.
    pub fn redexes(&self) -> Vec<Word> {
        let map: BTreeMap<&Word, &Word> = self.pairs().collect();
        let mut out = BTreeSet::new();
        for x in map.keys() {
            if let Some(p) = x.parent() {
                if sibling_image(&map, &p).is_some() {
                    out.insert(p);
                }
            }
        }
        out.into_iter().collect()
    }

    /// One rewrite `y a (p a)^-1 + y b (p b)^-1 → y p^-1`, if available at `p`.
    pub fn rewrite_at(&self, p: &Word) -> Option<UnarySum> {
        let map: BTreeMap<&Word, &Word> = self.pairs().collect();
        let q = sibling_image(&map, p)?;
        let mut sum = self.sum.clone();
        for l in Letter::ALL {
            sum.terms.remove(&Monomial::new(q.child(l), p.child(l)));
        }
        sum.add_term(Monomial::new(q, p.clone()), BigRational::one());
        Some(UnarySum { sum })
    }

    /// Replace the term with denominator `x` by its two children. This is
    /// the reverse of a rewrite and is never used by the reducer.
    pub fn expand_at(&self, x: &Word) -> Result<UnarySum> {
        let y = self
            .pairs()
            .find(|(xi, _)| *xi == x)
            .map(|(_, y)| y.clone())
            .ok_or_else(|| Error::NotInDomain(x.clone()))?;
        let mut sum = self.sum.clone();
        sum.terms.remove(&Monomial::new(y.clone(), x.clone()));
        for l in Letter::ALL {
            sum.add_term(Monomial::new(y.child(l), x.child(l)), BigRational::one());
        }
        Ok(UnarySum { sum })
    }
}

fn sibling_image(map: &BTreeMap<&Word, &Word>, p: &Word) -> Option<Word> {
    let ya = map.get(&p.child(Letter::A))?;
    let yb = map.get(&p.child(Letter::B))?;
    let q = ya.parent()?;
    (ya.last() == Some(Letter::A) && **yb == q.child(Letter::B)).then_some(q)
}

impl TryFrom<AlgebraElement> for UnarySum {
    type Error = Error;

    fn try_from(sum: AlgebraElement) -> Result<UnarySum> {
        if let Some((m, c)) = sum.terms().find(|(_, c)| !c.is_one()) {
            return Err(Error::Precondition(format!("coefficient {c} on {m} is not 1")));
        }
        PartialIso::new(sum.terms().map(|(m, _)| (m.x.clone(), m.y.clone())).collect())?;
        Ok(UnarySum { sum })
    }
}

impl fmt::Display for UnarySum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.sum.fmt(f)
    }
}

impl FromStr for UnarySum {
    type Err = Error;

    fn from_str(s: &str) -> Result<UnarySum> {
        let sum: AlgebraElement = s.parse().map_err(|e: ParseError| Error::Precondition(e.to_string()))?;
        UnarySum::try_from(sum)
    }
}

/// `Σ φ(x) x^-1` over the domain code.
pub fn sigma_of_partial(t: &PartialIso) -> UnarySum {
    let sum = AlgebraElement::from_terms(
        t.entries()
            .map(|(x, y)| (Monomial::new(y.clone(), x.clone()), BigRational::one())),
    );
    UnarySum { sum }
}

pub fn sigma_of(t: &Table) -> UnarySum {
    sigma_of_partial(t.as_partial())
}

/// The partial table `x_i ↦ y_i`.
pub fn phi_of(s: &UnarySum) -> PartialIso {
    PartialIso::from_parts_unchecked(
        s.pairs().map(|(x, _)| x.clone()).collect(),
        s.pairs().map(|(_, y)| y.clone()).collect(),
    )
}

/// `phi_of` for a maximal sum.
pub fn table_of(s: &UnarySum) -> Result<Table> {
    Table::try_from(phi_of(s))
}

/// The product of unary sums by the three-sum formula: with `s2 = Σ y_j
/// x_j^-1` and `s1 = Σ v_i u_i^-1`, every `x_j` extending some `v_i = …`
/// contributes `y_j (u_i z_j)^-1` and every `v_i` strictly extending some
/// `x_j` contributes `y_j t_i u_i^-1`.
pub fn three_sum_product(s2: &UnarySum, s1: &UnarySum) -> UnarySum {
    let vs = PrefixCode::new(s1.pairs().map(|(_, v)| v.clone()).collect()).expect("unary");
    let us: BTreeMap<&Word, &Word> = s1.pairs().map(|(u, v)| (v, u)).collect();
    let xs = s2.x_code();
    let ys: Vec<&Word> = s2.pairs().map(|(_, y)| y).collect();
    let mut sum = AlgebraElement::zero();
    for (x, y) in s2.pairs() {
        if let Some((_, v)) = vs.prefix_of(x) {
            let z = x.suffix_from(v.len());
            sum.add_term(Monomial::new(y.clone(), us[v].concat(&z)), BigRational::one());
        }
    }
    for (u, v) in s1.pairs() {
        if let Some((j, x)) = xs.prefix_of(v) {
            if x != v {
                let t = v.suffix_from(x.len());
                sum.add_term(Monomial::new(ys[j].concat(&t), u.clone()), BigRational::one());
            }
        }
    }
    UnarySum { sum }
}

pub fn multiply_unary(s2: &UnarySum, s1: &UnarySum) -> UnarySum {
    UnarySum::try_from(multiply(&s2.sum, &s1.sum)).expect("unary sums are closed under products")
}

/// Normal form modulo `aa^-1 + bb^-1 - 1`: rewrite sibling pairs until none
/// remain.
pub fn reduce_mod_iv(s: &UnarySum) -> Result<UnarySum> {
    if !s.is_maximal() {
        return Err(Error::Precondition(format!("{s} is not a maximal unary sum")));
    }
    let mut map: BTreeMap<Word, Word> = s.pairs().map(|(x, y)| (x.clone(), y.clone())).collect();
    let mut work: Vec<Word> = map.keys().filter_map(Word::parent).collect();
    while let Some(p) = work.pop() {
        let (pa, pb) = (p.child(Letter::A), p.child(Letter::B));
        let q = match (map.get(&pa), map.get(&pb)) {
            (Some(ya), Some(yb)) => match ya.parent() {
                Some(q) if ya.last() == Some(Letter::A) && *yb == q.child(Letter::B) => q,
                _ => continue,
            },
            _ => continue,
        };
        map.remove(&pa);
        map.remove(&pb);
        if let Some(pp) = p.parent() {
            work.push(pp);
        }
        map.insert(p, q);
    }
    let sum = AlgebraElement::from_terms(
        map.into_iter()
            .map(|(x, y)| (Monomial::new(y, x), BigRational::one())),
    );
    Ok(UnarySum { sum })
}

/// Reference normal form through tables: `Σ(max Φ(s))`.
pub fn reduce_by_tables(s: &UnarySum) -> Result<UnarySum> {
    Ok(sigma_of(&table_of(s)?.max_extend()))
}

pub fn is_congruent(s1: &UnarySum, s2: &UnarySum) -> Result<bool> {
    Ok(reduce_mod_iv(s1)? == reduce_mod_iv(s2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::table;
    use crate::generators::Generator;
    use crate::words::w;

    fn sum(s: &str) -> AlgebraElement {
        s.parse().unwrap()
    }

    fn b_table() -> Table {
        table("[a->a, ba->ba^2, b^2a->bab, b^3->b^2]")
    }

    fn c_table() -> Table {
        table("[a^2->a, ab->ba, bab->b^3a, ba^2->b^2a, b^2->b^4]")
    }

    #[test]
    fn monomial_products() {
        let word = |s: &str| if s.is_empty() { Word::empty() } else { w(s) };
        let m = |y: &str, x: &str| Monomial::new(word(y), word(x));
        assert_eq!(mono_mul(&m("a", "aa"), &m("a", "a")), Some(m("a", "aa")));
        assert_eq!(mono_mul(&m("ba", "ab"), &m("aa", "a")), None);
        assert_eq!(mono_mul(&Monomial::one(), &m("b", "ab")), Some(m("b", "ab")));
        assert_eq!(mono_mul(&m("b", "a"), &m("ab", "")), Some(m("bb", "")));
    }

    #[test]
    fn printing_and_parsing() {
        let s = sigma_of(&b_table());
        assert_eq!(s.to_string(), "aa^-1 + ba^2a^-1b^-1 + baba^-1b^-2 + b^2b^-3");
        let expected = sum("aa^{-1} + ba^2 a^{-1}b^{-1} + baba^{-1}b^{-2} + b^2b^{-3}");
        assert_eq!(*s.as_element(), expected);
        assert_eq!(sum(&s.to_string()), expected);
        assert_eq!(sum("0"), AlgebraElement::zero());
        assert_eq!(sum("1"), AlgebraElement::one());
        assert_eq!(sum("a^-1 b"), AlgebraElement::zero());
        assert_eq!(sum("a^-1 a"), AlgebraElement::one());
        let c = sum("2/3 ab^-1 + -1/2 1 + ab^-1");
        assert_eq!(c.to_string(), "-1/2 1 + 5/3 ab^-1");
        assert_eq!(sum(&c.to_string()), c);
        assert_eq!(sum("ab^-1 + -1 ab^-1"), AlgebraElement::zero());
        assert!("a + ".parse::<AlgebraElement>().is_err());
        assert_eq!("ab + ac".parse::<AlgebraElement>().unwrap_err().position, 6);
        assert!("1/0 a".parse::<AlgebraElement>().is_err());
    }

    #[test]
    fn worked_example() {
        let (b, c) = (b_table(), c_table());
        let product = multiply_unary(&sigma_of(&c), &sigma_of(&b));
        assert_eq!(
            *product.as_element(),
            sum("aa^{-2} + bab^{-1}a^{-1} + b^3aa^{-1}b^{-2} + b^2aa^{-1}b^{-1} + b^4b^{-3}")
        );
        assert_eq!(three_sum_product(&sigma_of(&c), &sigma_of(&b)), product);
        let reduced = reduce_mod_iv(&product).unwrap();
        assert_eq!(reduced, sigma_of(Generator::Sigma.table()));
        assert_eq!(reduced.to_string(), "aa^-2 + bab^-1a^-1 + b^2b^-1");
        assert_eq!(reduce_by_tables(&product).unwrap(), reduced);
        assert!(is_congruent(&product, &sigma_of(Generator::Sigma.table())).unwrap());
        assert_eq!(table_of(&product).unwrap(), c.after(&b));
    }

    #[test]
    fn unary_validation() {
        assert!(UnarySum::from_str("2 aa^-1").is_err());
        assert!(UnarySum::from_str("aa^-1 + ba^-2").is_err());
        assert!(UnarySum::from_str("a a^-1 + b b^-1").unwrap().is_maximal());
        let partial = UnarySum::from_str("aa^-1").unwrap();
        assert!(!partial.is_maximal());
        assert!(reduce_mod_iv(&partial).is_err());
    }

    #[test]
    fn sums_of_identity_and_inverse() {
        assert_eq!(sigma_of(&Table::identity()).to_string(), "1");
        let t = c_table();
        assert_eq!(sigma_of(&t.invert()).as_element().clone(), sigma_of(&t).as_element().star());
        assert_eq!(AlgebraElement::zero().star(), AlgebraElement::zero());
    }

    #[test]
    fn rewriting_steps() {
        let t = Generator::Theta.table();
        let s = sigma_of(t);
        assert!(s.redexes().is_empty());
        let expanded = s.expand_at(&w("a")).unwrap();
        assert_eq!(expanded.redexes(), vec![w("a")]);
        assert_eq!(expanded.rewrite_at(&w("a")).unwrap(), s);
        assert_eq!(reduce_mod_iv(&expanded).unwrap(), s);
        assert_eq!(reduce_mod_iv(&s).unwrap(), s);
        assert!(s.expand_at(&w("ab")).is_err());
    }

    #[test]
    fn distinct_generators_are_not_congruent() {
        let s = sigma_of(Generator::Sigma.table());
        let t = sigma_of(Generator::Theta.table());
        assert!(!is_congruent(&s, &t).unwrap());
    }

    #[test]
    fn partition_of_unity() {
        let q: crate::words::MaximalPrefixCode = "{aa, ab, ba, bba, bbb}".parse().unwrap();
        let s = sigma_of(&Table::identity_on(&q));
        assert_eq!(reduce_mod_iv(&s).unwrap().to_string(), "1");
    }

    #[test]
    fn arithmetic() {
        let x = sum("a + 2 b^-1");
        let y = sum("-1 a + b");
        assert_eq!(&x + &y, sum("2 b^-1 + b"));
        assert_eq!((&x * &AlgebraElement::zero()), AlgebraElement::zero());
        assert_eq!(&x * &AlgebraElement::one(), x);
        assert_eq!(&(-&x) + &x, AlgebraElement::zero());
        // b^-1 b = 1, b^-1 a = 0
        assert_eq!(&sum("b^-1") * &y, AlgebraElement::one());
    }
}
