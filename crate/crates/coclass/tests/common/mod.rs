//! Shared test oracles, independent of the canonical-labeling code path.

use coclass::tables::{Element, MulTable};

/// Visits every permutation of `items` (simple recursive generation).
pub fn for_each_permutation(items: &[Element], visit: &mut impl FnMut(&[Element])) {
    fn go(
        chosen: &mut Vec<Element>,
        used: &mut Vec<bool>,
        items: &[Element],
        visit: &mut impl FnMut(&[Element]),
    ) {
        if chosen.len() == items.len() {
            visit(chosen);
            return;
        }
        for i in 0..items.len() {
            if !used[i] {
                used[i] = true;
                chosen.push(items[i]);
                go(chosen, used, items, visit);
                chosen.pop();
                used[i] = false;
            }
        }
    }
    go(
        &mut Vec::with_capacity(items.len()),
        &mut vec![false; items.len()],
        items,
        visit,
    )
}

/// Tries to extend the generator assignment `ga[i] -> gb[i]` to a full
/// isomorphism by propagating products, then checks it is a bijective
/// homomorphism everywhere.
fn extends_to_isomorphism(a: &MulTable, b: &MulTable, ga: &[Element], gb: &[Element]) -> bool {
    const UNSET: usize = usize::MAX;
    let n = a.order();
    let mut map = vec![UNSET; n];
    for (&x, &y) in ga.iter().zip(gb) {
        map[x] = y;
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            if map[x] == UNSET {
                continue;
            }
            for y in 0..n {
                if map[y] == UNSET {
                    continue;
                }
                let p = a.product(x, y);
                let q = b.product(map[x], map[y]);
                if map[p] == UNSET {
                    map[p] = q;
                    changed = true;
                } else if map[p] != q {
                    return false;
                }
            }
        }
        if !changed {
            break;
        }
    }
    if map.contains(&UNSET) {
        return false;
    }
    let mut seen = vec![false; n];
    for &m in &map {
        if seen[m] {
            return false;
        }
        seen[m] = true;
    }
    (0..n).all(|x| (0..n).all(|y| map[a.product(x, y)] == b.product(map[x], map[y])))
}

/// Isomorphism test by direct search: every isomorphism of nilpotent
/// semigroups matches the minimal generating sets, so all generator
/// bijections are tried and extended.
pub fn isomorphic_by_search(a: &MulTable, b: &MulTable) -> bool {
    if a.order() != b.order() {
        return false;
    }
    if a.order() == 1 {
        return true;
    }
    let ga: Vec<Element> = a.analyze().min_gen_set.iter().collect();
    let gb: Vec<Element> = b.analyze().min_gen_set.iter().collect();
    if ga.len() != gb.len() {
        return false;
    }
    let mut found = false;
    for_each_permutation(&gb, &mut |perm| {
        if !found && extends_to_isomorphism(a, b, &ga, perm) {
            found = true;
        }
    });
    found
}

pub fn anti_isomorphic_by_search(a: &MulTable, b: &MulTable) -> bool {
    isomorphic_by_search(a, &b.dual())
}
