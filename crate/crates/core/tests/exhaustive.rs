use std::collections::BTreeSet;

use vgroup::algebra::{reduce_mod_iv, sigma_of};
use vgroup::element::{compose, enumerate_elements, maximal_tables_between};
use vgroup::generators::evaluate_sequential;
use vgroup::normalform::{balanced_code, order_iso, Transposition};
use vgroup::subgroups::finitary_perm_table;
use vgroup::words::{catalan, enumerate_maximal_codes, Letter};
use vgroup::{multiply, Table, Word};

fn elements_up_to(n: usize) -> Vec<Table> {
    (1..=n).flat_map(|k| enumerate_elements(k).unwrap()).collect()
}

#[test]
fn small_element_counts() {
    assert_eq!(enumerate_elements(1).unwrap(), vec![Table::identity()]);
    assert_eq!(enumerate_elements(2).unwrap().len(), 1);
    for n in 1..=5 {
        let all = enumerate_elements(n).unwrap();
        assert!(all.iter().all(|t| t.size() == n && t.is_maximally_extended()));
        let distinct: BTreeSet<String> = all.iter().map(|t| t.to_string()).collect();
        assert_eq!(distinct.len(), all.len());
    }
    assert!(enumerate_elements(6).is_err());
}

#[test]
fn catalan_counts_match_the_closed_form() {
    for n in 1..=10 {
        assert_eq!(enumerate_maximal_codes(n).unwrap().len() as u64, catalan(n as u64 - 1));
    }
}

#[test]
fn composition_sizes_for_small_tables() {
    let all = elements_up_to(3);
    for t1 in &all {
        for t2 in &all {
            let c = compose(t2, t1);
            assert!(c.size() <= t1.size() + t2.size(), "{t2} ∘ {t1}");
            let m = c.max_extend();
            assert!(m.size() <= c.size());
            assert_eq!(m, multiply(t2, t1));
        }
    }
}

#[test]
fn composition_sizes_for_tables_of_size_four() {
    let fours = enumerate_elements(4).unwrap();
    let small = elements_up_to(4);
    for t1 in fours.iter().step_by(7) {
        for t2 in &small {
            assert!(compose(t2, t1).size() <= t1.size() + t2.size());
            assert!(compose(t1, t2).size() <= t1.size() + t2.size());
        }
    }
}

#[test]
fn factorization_through_balanced_codes_is_unique() {
    // for every g with ‖g‖ ≤ 4 exactly one order-preserving pair (α, β)
    // leaves a permutation of S_n in the middle
    for g in elements_up_to(4) {
        let n = g.size();
        let s = balanced_code(n).unwrap().code;
        let mut found = 0;
        for p in enumerate_maximal_codes(n).unwrap() {
            for q in enumerate_maximal_codes(n).unwrap() {
                let alpha = order_iso(&p, &s).unwrap();
                let beta = order_iso(&s, &q).unwrap();
                let pi = beta.invert().after(&g.after(&alpha.invert()));
                if pi.domain_code() == s && pi.range_code() == s {
                    assert_eq!((&p, &q), (&g.domain_code(), &g.range_code()));
                    found += 1;
                }
            }
        }
        assert_eq!(found, 1, "{g}");
    }
}

#[test]
fn transposition_words_for_all_short_targets() {
    for k in 1..=6 {
        for len in 1..=7usize {
            for bits in 0..(1u32 << len) {
                let w = Word::from_letters(
                    (0..len).map(|i| if bits >> (len - 1 - i) & 1 == 1 { Letter::B } else { Letter::A }),
                );
                let Ok(t) = Transposition::new(k, w) else { continue };
                assert_eq!(evaluate_sequential(&t.word()), t.table(), "({k}|{})", t.w());
            }
        }
    }
}

fn permutations(items: &[i64]) -> Vec<Vec<i64>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

#[test]
fn finitary_permutations_form_a_homomorphic_image() {
    let support: Vec<i64> = (-2..=2).collect();
    let perms = permutations(&support);
    let as_pairs = |p: &[i64]| support.iter().copied().zip(p.iter().copied()).collect::<Vec<_>>();
    let tables: Vec<Table> = perms.iter().map(|p| finitary_perm_table(&as_pairs(p)).unwrap()).collect();
    let distinct: BTreeSet<String> = tables.iter().map(|t| t.to_string()).collect();
    assert_eq!(distinct.len(), perms.len());
    for (p, tp) in perms.iter().zip(&tables).step_by(3) {
        for (q, tq) in perms.iter().zip(&tables) {
            // (p ∘ q)(z) = p(q(z))
            let pq: Vec<i64> = q.iter().map(|&z| p[(z + 2) as usize]).collect();
            assert_eq!(finitary_perm_table(&as_pairs(&pq)).unwrap(), multiply(tp, tq));
        }
    }
}

#[test]
fn partitions_of_unity() {
    for n in 1..=6 {
        for q in enumerate_maximal_codes(n).unwrap() {
            let s = sigma_of(&Table::identity_on(&q));
            assert_eq!(reduce_mod_iv(&s).unwrap().to_string(), "1", "{q}");
        }
    }
}

#[test]
fn lower_bound_family_counts() {
    for n in 3..=5usize {
        let mut words: Vec<Word> = (0..n - 1)
            .map(|i| Word::power(Letter::A, i).child(Letter::B))
            .collect();
        words.push(Word::power(Letter::A, n - 1));
        let domain = vgroup::MaximalPrefixCode::new(words).unwrap();
        let bound = n * (n - 2) * (1..=n - 2).product::<usize>();
        for range in enumerate_maximal_codes(n).unwrap() {
            assert!(maximal_tables_between(&domain, &range).len() >= bound);
        }
    }
}
