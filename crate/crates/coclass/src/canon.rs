//! Canonical labeling of nilpotent tables.
//!
//! Two nilpotent semigroups are compared by relabeling each into a canonical
//! form and testing byte equality of the resulting keys. An isomorphism must
//! map the unique minimal generating set onto the minimal generating set of
//! the image, and is determined by that restriction, so it suffices to try
//! the `g!` orderings of the generators instead of all `n!` relabelings.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::tables::{Element, MulTable};

/// Equivalence used for counting: isomorphism only, or isomorphism combined
/// with anti-isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountMode {
    UpToIso,
    UpToAntiIso,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CanonError {
    #[error("table is not nilpotent")]
    NotNilpotent,
    #[error("{g} generators would need {g}! labelings, above the supported bound")]
    GeneratorBound { g: usize },
    #[error("order {n} does not fit the one-byte key format")]
    OrderTooLarge { n: usize },
}

/// Complete invariant of a table under the chosen [`CountMode`]: the order
/// byte followed by the row-major entries of the canonically relabeled table.
/// Equal keys hold exactly for equivalent tables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

const PERMUTATION_BOUND: u64 = 1_000_000;

/// Canonical key of a nilpotent table.
///
/// For each ordering of the minimal generating set the generators receive
/// labels `0..g-1` and the labeling is extended by a fixed traversal: scan
/// the labeled elements as pairs `(i, j)` with `i <= j`, both ascending,
/// evaluating `i*j` before `j*i`, and hand the next free label to every
/// previously unseen product; repeat the scan (over the labels present when
/// it starts) until all elements are labeled. The key is the lexicographic
/// minimum of the relabeled tables over all `g!` orderings. In the
/// `UpToAntiIso` mode the key of the dual is taken into the minimum as well.
pub fn canonical_key(t: &MulTable, mode: CountMode) -> Result<CanonicalKey, CanonError> {
    match mode {
        CountMode::UpToIso => Ok(CanonicalKey(iso_key(t)?)),
        CountMode::UpToAntiIso => {
            let a = iso_key(t)?;
            let b = iso_key(&t.dual())?;
            Ok(CanonicalKey(a.min(b)))
        }
    }
}

fn iso_key(t: &MulTable) -> Result<Vec<u8>, CanonError> {
    let n = t.order();
    if n > 255 {
        return Err(CanonError::OrderTooLarge { n });
    }
    if n == 1 {
        return Ok(vec![1, 0]);
    }
    let info = t.analyze();
    if !info.is_nilpotent {
        return Err(CanonError::NotNilpotent);
    }
    let gens: Vec<Element> = info.min_gen_set.iter().collect();
    let g = gens.len();
    if factorial_exceeds(g, PERMUTATION_BOUND) {
        return Err(CanonError::GeneratorBound { g });
    }

    let mut best: Option<Vec<u8>> = None;
    let mut scratch = gens;
    for_each_permutation(&mut scratch, &mut |order0| {
        let candidate = relabeled_bytes(t, order0);
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    });
    Ok(best.expect("at least one generator ordering"))
}

/// Extends generator labels to all elements and flattens the relabeled table.
fn relabeled_bytes(t: &MulTable, gens_in_order: &[Element]) -> Vec<u8> {
    let n = t.order();
    const UNLABELED: usize = usize::MAX;
    let mut label_of = vec![UNLABELED; n];
    let mut order: Vec<Element> = Vec::with_capacity(n);
    for &g in gens_in_order {
        label_of[g] = order.len();
        order.push(g);
    }
    while order.len() < n {
        let len = order.len();
        let mut changed = false;
        for i in 0..len {
            for j in i..len {
                for p in [t.product(order[i], order[j]), t.product(order[j], order[i])] {
                    if label_of[p] == UNLABELED {
                        label_of[p] = order.len();
                        order.push(p);
                        changed = true;
                    }
                }
            }
        }
        assert!(changed, "minimal generating set must generate the table");
    }

    let mut bytes = Vec::with_capacity(n * n + 1);
    bytes.push(n as u8);
    for a in 0..n {
        for b in 0..n {
            bytes.push(label_of[t.product(order[a], order[b])] as u8);
        }
    }
    bytes
}

fn factorial_exceeds(g: usize, bound: u64) -> bool {
    let mut acc: u64 = 1;
    for k in 2..=g as u64 {
        acc = acc.saturating_mul(k);
        if acc > bound {
            return true;
        }
    }
    false
}

/// Heap's algorithm; visits every permutation of `items`.
fn for_each_permutation<T: Copy>(items: &mut [T], visit: &mut impl FnMut(&[T])) {
    fn go<T: Copy>(k: usize, items: &mut [T], visit: &mut impl FnMut(&[T])) {
        if k <= 1 {
            visit(items);
            return;
        }
        for i in 0..k {
            go(k - 1, items, visit);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let k = items.len();
    go(k, items, visit);
}

/// Whether `a` and `b` are isomorphic (`UpToIso`) or isomorphic or
/// anti-isomorphic (`UpToAntiIso`).
pub fn are_equivalent(a: &MulTable, b: &MulTable, mode: CountMode) -> Result<bool, CanonError> {
    Ok(canonical_key(a, mode)? == canonical_key(b, mode)?)
}

/// Whether `t` is isomorphic to its dual. Commutative tables always are.
pub fn is_self_dual(t: &MulTable) -> Result<bool, CanonError> {
    are_equivalent(t, &t.dual(), CountMode::UpToIso)
}

/// One representative per equivalence class, ordered by ascending key.
/// The representative kept for a class is the first table carrying its key.
pub fn dedup(tables: &[MulTable], mode: CountMode) -> Result<Vec<MulTable>, CanonError> {
    let mut classes: BTreeMap<CanonicalKey, MulTable> = BTreeMap::new();
    for t in tables {
        let key = canonical_key(t, mode)?;
        classes.entry(key).or_insert_with(|| t.clone());
    }
    Ok(classes.into_values().collect())
}
