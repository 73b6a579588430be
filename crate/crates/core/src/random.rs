//! Seedable generators of random codes, elements and words, shared by the
//! property tests, the acceptance suite and the benchmark.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::element::Table;
use crate::generators::{GenWord, Generator, Symbol};
use crate::words::{Letter, MaximalPrefixCode, Word};

/// A maximal prefix code with `n` words, grown from {ε} by splitting a
/// uniformly chosen leaf `n - 1` times.
pub fn random_code<R: Rng + ?Sized>(rng: &mut R, n: usize) -> MaximalPrefixCode {
    assert!(n >= 1);
    let mut leaves = vec![Word::empty()];
    while leaves.len() < n {
        let i = rng.gen_range(0..leaves.len());
        let w = leaves.swap_remove(i);
        leaves.push(w.child(Letter::A));
        leaves.push(w.child(Letter::B));
    }
    leaves.sort();
    MaximalPrefixCode::from_sorted_unchecked(leaves)
}

/// A table of size exactly `n` with a uniformly random bijection; usually
/// not maximally extended.
pub fn random_table<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Table {
    let domain = random_code(rng, n);
    let mut images = random_code(rng, n).words().to_vec();
    images.shuffle(rng);
    Table::from_codes(&domain, images).expect("two maximal codes of equal size")
}

/// A maximally extended element whose table size is at most `n`.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Table {
    random_table(rng, n).max_extend()
}

/// A maximally extended element that is not the identity, table size ≤ `n`
/// (`n` ≥ 2).
pub fn random_nonidentity<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Table {
    assert!(n >= 2);
    loop {
        let t = random_element(rng, n);
        if !t.is_identity() {
            return t;
        }
    }
}

/// A maximally extended element of F of table size ≤ `n`: the
/// order-preserving bijection between two random codes.
pub fn random_f_element<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Table {
    let domain = random_code(rng, n);
    let range = random_code(rng, n);
    Table::from_codes(&domain, range.words().to_vec())
        .expect("two maximal codes of equal size")
        .max_extend()
}

/// `len` symbols drawn uniformly from the generators and their inverses.
pub fn random_genword<R: Rng + ?Sized>(rng: &mut R, len: usize) -> GenWord {
    (0..len)
        .map(|_| Symbol {
            generator: Generator::ALL[rng.gen_range(0..Generator::ALL.len())],
            inverse: rng.gen_bool(0.5),
        })
        .collect()
}
