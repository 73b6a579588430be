//! Compiling elements of V into words over the fixed generators.
//!
//! An element `g` of table size n factors as `β · π · α` with α, β in F and
//! π a permutation of a fixed code `S_n` of depth ⌈log₂ n⌉. The F factors
//! are written over {σ, θ} from left-edge counts of their prefix trees; π is
//! split into transpositions `(a^k|w)`, each of which is conjugated down to
//! one of the transposition generators.

use std::collections::BTreeSet;

use crate::element::{multiply, PartialIso, Table};
use crate::error::{Error, Result};
use crate::generators::{evaluate_sequential, GenWord, Generator, Symbol};
use crate::words::{Letter, MaximalPrefixCode, Word};

/// `k = ⌈log₂ n⌉` for n ≥ 1.
pub fn ceil_log2(n: usize) -> usize {
    assert!(n >= 1);
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

/// The code `S_n`: `2^k - n` words of length `k - 1` and `2n - 2^k` words of
/// length `k`, with the deep words at the dictionary-least positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedCode {
    pub n: usize,
    pub code: MaximalPrefixCode,
}

impl BalancedCode {
    /// `k = ⌈log₂ n⌉`.
    pub fn depth(&self) -> usize {
        ceil_log2(self.n)
    }

    /// The leftmost word `a^k` (ε when n = 1).
    pub fn base(&self) -> &Word {
        &self.code.words()[0]
    }
}

pub fn balanced_code(n: usize) -> Result<BalancedCode> {
    if n == 0 {
        return Err(Error::Precondition("S_n needs n ≥ 1".into()));
    }
    if n == 1 {
        return Ok(BalancedCode {
            n,
            code: MaximalPrefixCode::root(),
        });
    }
    let k = ceil_log2(n);
    let upper = MaximalPrefixCode::uniform(k - 1);
    let deep = n - (1 << (k - 1));
    let mut words = Vec::with_capacity(n);
    for (i, x) in upper.words().iter().enumerate() {
        if i < deep {
            words.push(x.child(Letter::A));
            words.push(x.child(Letter::B));
        } else {
            words.push(x.clone());
        }
    }
    Ok(BalancedCode {
        n,
        code: MaximalPrefixCode::from_sorted_unchecked(words),
    })
}

/// The order-preserving bijection `p → q` (not maximally extended).
pub fn order_iso(p: &MaximalPrefixCode, q: &MaximalPrefixCode) -> Result<Table> {
    if p.len() != q.len() {
        return Err(Error::SizeMismatch {
            domain: p.len(),
            range: q.len(),
        });
    }
    Table::from_codes(p, q.words().to_vec())
}

/// `g = β · π · α` with α, β order-preserving and π a permutation of `S_n`.
///
/// All three are literal tables: α maps the domain code of `g` onto `S_n`,
/// β maps `S_n` onto the range code, and π is the table `S_n → S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub alpha: Table,
    pub pi: Table,
    pub beta: Table,
}

impl Factorization {
    pub fn recompose(&self) -> Table {
        multiply(&self.beta, &multiply(&self.pi, &self.alpha))
    }
}

/// Factor a maximally extended `g` through `S_‖g‖`.
pub fn canonical_factor(g: &Table) -> Result<Factorization> {
    let s = balanced_code(g.size())?.code;
    let alpha = order_iso(&g.domain_code(), &s)?;
    let beta = order_iso(&s, &g.range_code())?;
    // Literal composition keeps S_n as both codes of π.
    let pi = beta.invert().after(&g.after(&alpha.invert()));
    debug_assert_eq!(pi.domain_code(), s);
    debug_assert_eq!(pi.range_code(), s);
    Ok(Factorization { alpha, pi, beta })
}

/// Length of the longest path of left edges that starts at leaf `index`
/// (dictionary order, 0-based) and ends at a vertex outside `b*`.
pub fn left_edge_exponent(code: &MaximalPrefixCode, index: usize) -> Result<usize> {
    let leaf = code.words().get(index).ok_or_else(|| {
        Error::Precondition(format!("leaf index {index} out of range for {} leaves", code.len()))
    })?;
    let ascent = leaf.trailing(Letter::A);
    let top = leaf.prefix(leaf.len() - ascent);
    Ok(if top.is_power_of(Letter::B) {
        ascent.saturating_sub(1)
    } else {
        ascent
    })
}

/// `X_0 = σ^-1`, `X_i = σ^(i-1) θ^-1 σ^-(i-1)`; appends `X_i^e`.
fn push_x_power(word: &mut GenWord, i: usize, e: i64) {
    if e == 0 {
        return;
    }
    if i == 0 {
        word.push_power(Generator::Sigma, -e);
    } else {
        word.push_power(Generator::Sigma, i as i64 - 1);
        word.push_power(Generator::Theta, -e);
        word.push_power(Generator::Sigma, -(i as i64 - 1));
    }
}

/// A word over {σ, θ} for a maximally extended element of F:
/// `X_0^{b_0} … X_n^{b_n} X_n^{-a_n} … X_0^{-a_0}`, freely reduced, where
/// `b_ℓ` and `a_ℓ` are the left-edge exponents of the range and domain codes.
pub fn f_word(g: &Table) -> Result<GenWord> {
    if !g.preserves_dict_order() {
        return Err(Error::Precondition(format!("{g} does not preserve the dictionary order")));
    }
    let (domain, range) = (g.domain_code(), g.range_code());
    let n = g.size();
    let mut word = GenWord::empty();
    for l in 0..n {
        push_x_power(&mut word, l, left_edge_exponent(&range, l)? as i64);
    }
    for l in (0..n).rev() {
        push_x_power(&mut word, l, -(left_edge_exponent(&domain, l)? as i64));
    }
    Ok(word.free_reduce())
}

/// The transposition `(a^k|w)`: swaps `a^k` and `w`, fixes everything else.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transposition {
    k: usize,
    w: Word,
}

impl Transposition {
    /// Requires k ≥ 1, `w ∉ a*` and `w` prefix-incomparable with `a^k`.
    pub fn new(k: usize, w: Word) -> Result<Transposition> {
        if k == 0 {
            return Err(Error::Precondition("transposition (a^k|w) needs k ≥ 1".into()));
        }
        if w.is_power_of(Letter::A) {
            return Err(Error::Precondition(format!("{w} is a power of a")));
        }
        if w.leading(Letter::A) >= k {
            return Err(Error::Precondition(format!("{w} is prefix-comparable with a^{k}")));
        }
        Ok(Transposition { k, w })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn w(&self) -> &Word {
        &self.w
    }

    /// `j` and `v` with `w = a^j b v`.
    fn split(&self) -> (usize, Word) {
        let j = self.w.leading(Letter::A);
        (j, self.w.suffix_from(j + 1))
    }

    pub fn table(&self) -> Table {
        let (j, v) = self.split();
        let ak = Word::power(Letter::A, self.k);
        let ajb = Word::power(Letter::A, j).child(Letter::B);
        let mut entries = vec![(ak.clone(), self.w.clone()), (self.w.clone(), ak)];
        for i in (0..self.k).filter(|&i| i != j) {
            let x = Word::power(Letter::A, i).child(Letter::B);
            entries.push((x.clone(), x));
        }
        // a^j b p ℓ for p a strict prefix of v and ℓ the letter leaving v.
        for len in 0..v.len() {
            let off = v.letter(len).other();
            let x = ajb.concat(&v.prefix(len)).child(off);
            entries.push((x.clone(), x));
        }
        Table::new(entries).expect("transposition tables are maximal")
    }

    /// A word over the generators equal to this transposition in V.
    pub fn word(&self) -> GenWord {
        let mut left = GenWord::empty();
        let mut right: Vec<Symbol> = Vec::new();
        let core = self.conjugate_down(&mut left, &mut right);
        left.push(Symbol::new(core));
        left.extend_from(&right.into_iter().rev().collect());
        left
    }

    /// Rewrite `self = L · gen · R` with `gen` a transposition generator,
    /// pushing onto `left` and onto `right_rev` (R reversed).
    fn conjugate_down(&self, left: &mut GenWord, right_rev: &mut Vec<Symbol>) -> Generator {
        let mut k = self.k;
        let mut w = self.w.clone();
        let conj = |c: Symbol, left: &mut GenWord, right_rev: &mut Vec<Symbol>| {
            // X = c · Y · c^-1
            left.push(c);
            right_rev.push(c.inverse());
        };
        loop {
            let j = w.leading(Letter::A);
            if j == 0 {
                let h = w.leading(Letter::B);
                if h == w.len() {
                    // w = b^h
                    if h >= 2 {
                        // σ^-1 (a^k|b^h) σ = (a^{k+1}|b^{h-1})
                        conj(Symbol::new(Generator::Sigma), left, right_rev);
                        k += 1;
                        w = Word::power(Letter::B, h - 1);
                    } else if k == 1 {
                        return Generator::TpSwap;
                    } else {
                        // (ab|b) (a^k|b) (ab|b) = (a^k|ab)
                        conj(Symbol::new(Generator::TpAbb), left, right_rev);
                        w = Word::power(Letter::A, 1).child(Letter::B);
                    }
                } else {
                    // w = b^h a v
                    let rest = w.suffix_from(h + 1);
                    conj(Symbol::new(Generator::Sigma), left, right_rev);
                    k += 1;
                    w = if h >= 2 {
                        Word::power(Letter::B, h - 1).child(Letter::A).concat(&rest)
                    } else {
                        Word::from_letters([Letter::A, Letter::B]).concat(&rest)
                    };
                }
                continue;
            }
            if j >= 2 {
                // σ (a^k|a^j b^h v) σ^-1 = (a^{k-1}|a^{j-1} b^h v)
                conj(Symbol::inv(Generator::Sigma), left, right_rev);
                k -= 1;
                w = w.suffix_from(1);
            } else if k >= 3 {
                // δ (a^k|a b^h v) δ^-1 = (a^{k-1}|a b^h v)
                conj(Symbol::inv(Generator::Delta), left, right_rev);
                k -= 1;
            } else {
                let h = w.suffix_from(1).leading(Letter::B);
                let v = w.suffix_from(1 + h);
                if h >= 2 {
                    // γ1 (a²|a b^h v) γ1^-1 = (a²|a b^{h-1} v)
                    conj(Symbol::inv(Generator::Gamma1), left, right_rev);
                    w = w.prefix(1).concat(&w.suffix_from(2));
                } else if v.len() >= 2 {
                    // γ2 (a²|a b a u) γ2^-1 = (a²|a b u)
                    conj(Symbol::inv(Generator::Gamma2), left, right_rev);
                    w = Word::from_letters([Letter::A, Letter::B]).concat(&v.suffix_from(1));
                } else if v.is_empty() {
                    return Generator::TpAb;
                } else {
                    return Generator::TpAba;
                }
            }
        }
    }
}

pub fn transposition_table(k: usize, w: &Word) -> Result<Table> {
    Ok(Transposition::new(k, w.clone())?.table())
}

pub fn transposition_word(k: usize, w: &Word) -> Result<GenWord> {
    let t = Transposition::new(k, w.clone())?;
    let word = t.word();
    debug_assert_eq!(evaluate_sequential(&word), t.table(), "conjugation chain for (a^{k}|{w})");
    Ok(word)
}

/// Write a permutation table of a maximal code S as a product of
/// transpositions `(base|w)`, `w ∈ S`; the returned list `t_1, …, t_m`
/// satisfies `π = t_1 ∘ … ∘ t_m`.
pub fn permutation_to_transpositions(pi: &Table, base: &Word) -> Result<Vec<Transposition>> {
    let dom = pi.domain_code();
    if dom != pi.range_code() {
        return Err(Error::Precondition(format!("{pi} is not a permutation of one code")));
    }
    if !base.is_power_of(Letter::A) {
        return Err(Error::Precondition(format!("base {base} is not a power of a")));
    }
    if !dom.contains(base) {
        return Err(Error::NotInCode(base.clone()));
    }
    let k = base.len();
    let image = |x: &Word| pi.apply(x).expect("x is in the domain code");
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for start in dom.words() {
        if seen.contains(start) {
            continue;
        }
        let mut cycle = vec![start.clone()];
        seen.insert(start.clone());
        let mut x = image(start);
        while &x != start {
            seen.insert(x.clone());
            cycle.push(x.clone());
            x = image(&x);
        }
        // (x1 x2 … xr) = (x1|xr)(x1|x_{r-1}) … (x1|x2)
        let first = &cycle[0];
        for other in cycle[1..].iter().rev() {
            if first == base {
                out.push(Transposition::new(k, other.clone())?);
            } else {
                // (x|y) = (base|x)(base|y)(base|x)
                let tx = Transposition::new(k, first.clone())?;
                out.push(tx.clone());
                out.push(Transposition::new(k, other.clone())?);
                out.push(tx);
            }
        }
    }
    Ok(out)
}

/// A word over the nine generators that evaluates to `g` (maximally
/// extended).
pub fn element_to_word(g: &Table) -> Result<GenWord> {
    if !g.is_maximally_extended() {
        return Err(Error::Precondition(format!("{g} is not maximally extended")));
    }
    if g.is_identity() {
        return Ok(GenWord::empty());
    }
    let f = canonical_factor(g)?;
    let base = balanced_code(g.size())?.base().clone();
    let mut word = f_word(&f.beta.max_extend())?;
    for t in permutation_to_transpositions(&f.pi, &base)? {
        word.extend_from(&t.word());
    }
    word.extend_from(&f_word(&f.alpha.max_extend())?);
    Ok(word.free_reduce())
}

/// `len / (n · (1 + ⌈log₂ n⌉))`.
pub fn length_ratio(len: usize, n: usize) -> f64 {
    len as f64 / (n as f64 * (1 + ceil_log2(n.max(1))) as f64)
}

/// One instance of a conjugation identity `c · X · c^-1 = Y` between
/// transpositions, with `c` a single generator symbol.
#[derive(Debug, Clone)]
pub struct ConjugationIdentity {
    pub family: &'static str,
    pub left: Symbol,
    pub inner: Transposition,
    pub right: Symbol,
    pub result: Transposition,
}

impl ConjugationIdentity {
    /// Evaluate `left · inner · right` as tables and compare with `result`.
    pub fn holds(&self) -> bool {
        let lhs = multiply(self.left.table(), &multiply(&self.inner.table(), self.right.table()));
        lhs == self.result.table()
    }
}

fn tp(k: usize, w: Word) -> Transposition {
    Transposition::new(k, w).expect("identity instances satisfy the transposition precondition")
}

/// All words over {a, b} of length at most `max_len`.
fn words_up_to(max_len: usize) -> Vec<Word> {
    let mut all = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| Letter::ALL.map(|l| w.child(l)))
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

/// Instances of the eight conjugation identities that drive
/// [`Transposition::word`], for `k, h ≤ max_kh` and `|v| ≤ max_v`.
pub fn conjugation_identities(max_kh: usize, max_v: usize) -> Vec<ConjugationIdentity> {
    use Generator::*;
    let a = |n: usize| Word::power(Letter::A, n);
    let b = |n: usize| Word::power(Letter::B, n);
    let s = Symbol::new;
    let si = Symbol::inv;
    let vs = words_up_to(max_v);
    let mut out = Vec::new();
    for k in 1..=max_kh {
        for h in 1..=max_kh {
            for v in &vs {
                if h >= 2 {
                    // σ^-1 (a^k|b^h a v) σ = (a^{k+1}|b^{h-1} a v)
                    out.push(ConjugationIdentity {
                        family: "1.1",
                        left: si(Sigma),
                        inner: tp(k, b(h).concat(&a(1)).concat(v)),
                        right: s(Sigma),
                        result: tp(k + 1, b(h - 1).concat(&a(1)).concat(v)),
                    });
                }
                // the j = 1 families need v outside b{a,b}*
                let v_ok = v.first() != Some(Letter::B);
                for j in 2..k {
                    if v_ok {
                        // σ (a^k|a^j b^h v) σ^-1 = (a^{k-1}|a^{j-1} b^h v)
                        out.push(ConjugationIdentity {
                            family: "2.1",
                            left: s(Sigma),
                            inner: tp(k, a(j).concat(&b(h)).concat(v)),
                            right: si(Sigma),
                            result: tp(k - 1, a(j - 1).concat(&b(h)).concat(v)),
                        });
                    }
                }
                if k >= 3 && v_ok {
                    // δ (a^k|a b^h v) δ^-1 = (a^{k-1}|a b^h v)
                    let w = a(1).concat(&b(h)).concat(v);
                    out.push(ConjugationIdentity {
                        family: "2.2",
                        left: s(Delta),
                        inner: tp(k, w.clone()),
                        right: si(Delta),
                        result: tp(k - 1, w),
                    });
                }
                if k == 2 && h >= 2 && v_ok {
                    // γ1 (a²|a b^h v) γ1^-1 = (a²|a b^{h-1} v)
                    out.push(ConjugationIdentity {
                        family: "2.3",
                        left: s(Gamma1),
                        inner: tp(2, a(1).concat(&b(h)).concat(v)),
                        right: si(Gamma1),
                        result: tp(2, a(1).concat(&b(h - 1)).concat(v)),
                    });
                }
            }
            if h == 1 {
                for v in &vs {
                    // σ^-1 (a^k|b a v) σ = (a^{k+1}|a b v)
                    out.push(ConjugationIdentity {
                        family: "1.2",
                        left: si(Sigma),
                        inner: tp(k, b(1).concat(&a(1)).concat(v)),
                        right: s(Sigma),
                        result: tp(k + 1, a(1).concat(&b(1)).concat(v)),
                    });
                    if k == 2 && v.first() == Some(Letter::A) && v.len() >= 2 {
                        // γ2 (a²|a b a u) γ2^-1 = (a²|a b u)
                        let u = v.suffix_from(1);
                        out.push(ConjugationIdentity {
                            family: "2.4",
                            left: s(Gamma2),
                            inner: tp(2, a(1).concat(&b(1)).concat(v)),
                            right: si(Gamma2),
                            result: tp(2, a(1).concat(&b(1)).concat(&u)),
                        });
                    }
                }
            } else {
                // σ^-1 (a^k|b^h) σ = (a^{k+1}|b^{h-1})
                out.push(ConjugationIdentity {
                    family: "1.3",
                    left: si(Sigma),
                    inner: tp(k, b(h)),
                    right: s(Sigma),
                    result: tp(k + 1, b(h - 1)),
                });
            }
        }
        if k >= 2 {
            // (ab|b) (a^k|b) (ab|b) = (a^k|ab)
            out.push(ConjugationIdentity {
                family: "1.4",
                left: s(TpAbb),
                inner: tp(k, b(1)),
                right: s(TpAbb),
                result: tp(k, a(1).concat(&b(1))),
            });
        }
    }
    out
}

/// Identity restricted to `code` as a partial table; used when comparing
/// literal permutation tables.
pub fn identity_permutation(code: &MaximalPrefixCode) -> PartialIso {
    PartialIso::identity_on(code.as_prefix_code())
}
