//! Property tests over pools of valid tables from the search and the
//! families.

use std::sync::OnceLock;

use proptest::prelude::*;

use coclass::bruteforce::{enumerate_nilpotent, SearchConfig};
use coclass::canon::{canonical_key, dedup, CountMode};
use coclass::families::coclass1_list;
use coclass::tables::MulTable;

/// Nilpotent tables of mixed small orders, all valid by construction.
fn pool() -> &'static Vec<MulTable> {
    static POOL: OnceLock<Vec<MulTable>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut tables = Vec::new();
        for n in [3, 4, 5] {
            tables.extend(
                enumerate_nilpotent(&SearchConfig::new(n).mode(CountMode::UpToIso)).unwrap(),
            );
        }
        for p in coclass1_list(7).unwrap() {
            tables.push(p.realize().unwrap());
        }
        tables
    })
}

fn table_and_permutation() -> impl Strategy<Value = (MulTable, Vec<usize>)> {
    (0..pool().len()).prop_flat_map(|idx| {
        let t = pool()[idx].clone();
        let ident: Vec<usize> = (0..t.order()).collect();
        (Just(t), Just(ident).prop_shuffle())
    })
}

/// Index and period of an element under iterated self-product.
fn index_and_period(t: &MulTable, s: usize) -> (usize, usize) {
    let mut seen = vec![None; t.order()];
    let mut pow = s;
    let mut exp = 1;
    loop {
        if let Some(first) = seen[pow] {
            return (first, exp - first);
        }
        seen[pow] = Some(exp);
        pow = t.product(pow, s);
        exp += 1;
    }
}

/// Four characterizations of coclass 0 agree on every nilpotent table:
/// coclass 0; monogenic (and nilpotent); monogenic with period 1; and
/// being a model of `<u | u^n = u^{n+1}>`.
#[test]
fn coclass0_characterizations_agree() {
    use coclass::families::{coclass0, satisfies};
    use coclass::tables::ElementSet;

    let mut tables: Vec<MulTable> = pool().clone();
    for n in 6..=10 {
        tables.push(coclass0(n).realize().unwrap());
    }
    for t in &tables {
        let n = t.order();
        let info = t.analyze();
        assert!(info.is_nilpotent);
        let generators: Vec<usize> = (0..n)
            .filter(|&s| t.subsemigroup_generated(&ElementSet::new(vec![s])).len() == n)
            .collect();
        let is_coclass0 = info.coclass_r == Some(0);
        let is_monogenic = !generators.is_empty();
        let monogenic_period_1 = generators
            .iter()
            .any(|&s| index_and_period(t, s).1 == 1 && n >= 2);
        let models_power_chain = (0..n).any(|s| n >= 2 && satisfies(t, &coclass0(n), &[s]));
        if n == 1 {
            assert!(is_coclass0 && is_monogenic);
            continue;
        }
        assert_eq!(is_coclass0, is_monogenic, "order {n}");
        assert_eq!(is_coclass0, monogenic_period_1, "order {n}");
        assert_eq!(is_coclass0, models_power_chain, "order {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_keys_are_relabeling_invariant((t, perm) in table_and_permutation()) {
        let relabeled = t.relabel(&perm);
        for mode in [CountMode::UpToIso, CountMode::UpToAntiIso] {
            prop_assert_eq!(
                canonical_key(&t, mode).unwrap(),
                canonical_key(&relabeled, mode).unwrap()
            );
        }
    }

    #[test]
    fn anti_iso_key_is_dual_invariant((t, perm) in table_and_permutation()) {
        let disguised_dual = t.dual().relabel(&perm);
        prop_assert_eq!(
            canonical_key(&t, CountMode::UpToAntiIso).unwrap(),
            canonical_key(&disguised_dual, CountMode::UpToAntiIso).unwrap()
        );
    }

    #[test]
    fn iso_classes_refine_anti_iso_classes(indices in proptest::collection::vec(0..pool().len(), 1..24)) {
        let tables: Vec<MulTable> = indices.iter().map(|&i| pool()[i].clone()).collect();
        let iso = dedup(&tables, CountMode::UpToIso).unwrap().len();
        let anti = dedup(&tables, CountMode::UpToAntiIso).unwrap().len();
        prop_assert!(iso >= anti);
        prop_assert!(anti >= 1);
    }

    #[test]
    fn dual_preserves_structure(idx in 0..pool().len()) {
        let t = &pool()[idx];
        let a = t.analyze();
        let b = t.dual().analyze();
        prop_assert_eq!(a.is_nilpotent, b.is_nilpotent);
        prop_assert_eq!(a.class_c, b.class_c);
        prop_assert_eq!(a.coclass_r, b.coclass_r);
        prop_assert_eq!(&a.min_gen_set, &b.min_gen_set);
        let sizes = |i: &coclass::tables::ClassInfo| {
            i.layers.iter().map(|l| l.len()).collect::<Vec<_>>()
        };
        prop_assert_eq!(sizes(&a), sizes(&b));
    }

    #[test]
    fn power_ideal_chain_descends(idx in 0..pool().len(), k in 1usize..6) {
        let t = &pool()[idx];
        let big = t.power_ideal(k);
        let small = t.power_ideal(k + 1);
        prop_assert!(small.iter().all(|e| big.contains(e)));
    }
}
