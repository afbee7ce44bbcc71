//! Realization of family presentations as certified multiplication tables.
//!
//! Every family here has a fixed set of normal forms: the generators, the
//! powers `u^2 .. u^p` of the first generator up to the zero, and for the
//! 2-generated coclass-2 families (and the order-4 extras) one additional
//! element `y`, the product of two generators that is not a `u`-power.
//!
//! The table is built over these normal forms by a closure: products whose
//! concatenated word is itself a normal form are immediate, any product of
//! at least `c+1` generators is the zero, the relations pin products as soon
//! as one side evaluates and the other is one multiplication short, and
//! associativity `(ab)c = a(bc)` propagates the rest to a fixpoint. The
//! result is certified: it must be associative, satisfy every relation, and
//! be generated by the generators. Since each presented semigroup is known
//! to have at most `expected_order` elements, a certified table of exactly
//! that order is the presented semigroup.

use std::collections::HashMap;

use crate::tables::MulTable;

use super::{satisfies, FamilyError, FamilyTag, Presentation, Word};

/// Normal-form words of the elements, indexed by element.
fn element_words(p: &Presentation) -> Result<(Vec<Word>, usize), FamilyError> {
    let n = p.expected_order;
    let g = p.num_generators;
    let c = p.expected_class();
    // The order-4 extras have u^2 = u^3, so their u-chain already ends at
    // the square; everywhere else the zero is u^{c+1}.
    let zero_power = match p.family {
        FamilyTag::N4a | FamilyTag::N4b => 2,
        _ => c + 1,
    };
    let y_word = match p.family {
        FamilyTag::T1
        | FamilyTag::T2K
        | FamilyTag::T2IK
        | FamilyTag::T3
        | FamilyTag::T3I
        | FamilyTag::N4a => Some(Word::new(vec![0, 1])),
        FamilyTag::T5K | FamilyTag::T5IK | FamilyTag::T5IJK | FamilyTag::N4b => {
            Some(Word::new(vec![1, 0]))
        }
        FamilyTag::T4K | FamilyTag::T4IK | FamilyTag::T4IJK => Some(Word::new(vec![1, 1])),
        _ => None,
    };

    let mut words: Vec<Word> = (0..g).map(|i| Word::new(vec![i])).collect();
    for t in 2..=zero_power {
        words.push(Word::power(0, t));
    }
    if let Some(y) = y_word {
        words.push(y);
    }
    if words.len() != n {
        return Err(FamilyError::CertificationFailed(format!(
            "family {} yields {} normal forms for claimed order {n}",
            p.family.as_str(),
            words.len()
        )));
    }
    let zero = words
        .iter()
        .position(|w| *w == Word::power(0, zero_power))
        .expect("zero power is always listed");
    Ok((words, zero))
}

enum Eval {
    Done(usize),
    /// Evaluation stopped at `prefix * next`; `remaining` letters were left.
    Stuck {
        prefix: usize,
        next: usize,
        remaining: usize,
    },
}

fn eval_word(tab: &[Option<usize>], n: usize, word: &Word) -> Eval {
    let letters = word.letters();
    let mut acc = letters[0];
    for (pos, &g) in letters[1..].iter().enumerate() {
        match tab[acc * n + g] {
            Some(x) => acc = x,
            None => {
                return Eval::Stuck {
                    prefix: acc,
                    next: g,
                    remaining: letters.len() - 1 - pos,
                }
            }
        }
    }
    Eval::Done(acc)
}

struct Builder {
    n: usize,
    tab: Vec<Option<usize>>,
    changed: bool,
}

impl Builder {
    fn set(&mut self, a: usize, b: usize, e: usize) -> Result<(), FamilyError> {
        match self.tab[a * self.n + b] {
            Some(x) if x == e => Ok(()),
            Some(x) => Err(FamilyError::CertificationFailed(format!(
                "conflicting values {x} and {e} for product ({a},{b})"
            ))),
            None => {
                self.tab[a * self.n + b] = Some(e);
                self.changed = true;
                Ok(())
            }
        }
    }
}

pub(super) fn realize(p: &Presentation) -> Result<MulTable, FamilyError> {
    let n = p.expected_order;
    let c = p.expected_class();
    let (words, zero) = element_words(p)?;
    let index: HashMap<&[usize], usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.letters(), i))
        .collect();

    let mut b = Builder {
        n,
        tab: vec![None; n * n],
        changed: false,
    };

    // Immediate products: concatenations that are normal forms, and any
    // product of at least c+1 generators, which lies in the zero ideal.
    for x in 0..n {
        for y in 0..n {
            let mut cat = words[x].letters().to_vec();
            cat.extend_from_slice(words[y].letters());
            if let Some(&e) = index.get(cat.as_slice()) {
                b.set(x, y, e)?;
            } else if cat.len() > c {
                b.set(x, y, zero)?;
            }
        }
    }

    let cap = 4 * n.max(2);
    for pass in 0.. {
        if pass > cap {
            return Err(FamilyError::RewriteDiverged);
        }
        b.changed = false;

        for r in &p.relations {
            match (eval_word(&b.tab, n, &r.lhs), eval_word(&b.tab, n, &r.rhs)) {
                (Eval::Done(x), Eval::Done(y)) => {
                    if x != y {
                        return Err(FamilyError::CertificationFailed(format!(
                            "relation of {} evaluates to {x} vs {y}",
                            p.family.as_str()
                        )));
                    }
                }
                (
                    Eval::Done(e),
                    Eval::Stuck {
                        prefix,
                        next,
                        remaining: 1,
                    },
                )
                | (
                    Eval::Stuck {
                        prefix,
                        next,
                        remaining: 1,
                    },
                    Eval::Done(e),
                ) => b.set(prefix, next, e)?,
                _ => {}
            }
        }

        for x in 0..n {
            for y in 0..n {
                let Some(xy) = b.tab[x * n + y] else { continue };
                for z in 0..n {
                    let Some(yz) = b.tab[y * n + z] else { continue };
                    match (b.tab[xy * n + z], b.tab[x * n + yz]) {
                        (Some(l), Some(r)) => {
                            if l != r {
                                return Err(FamilyError::CertificationFailed(format!(
                                    "associativity conflict at ({x},{y},{z})"
                                )));
                            }
                        }
                        (Some(l), None) => b.set(x, yz, l)?,
                        (None, Some(r)) => b.set(xy, z, r)?,
                        (None, None) => {}
                    }
                }
            }
        }

        if !b.changed {
            break;
        }
    }

    let entries: Option<Vec<usize>> = b.tab.iter().copied().collect();
    let entries = entries.ok_or_else(|| {
        FamilyError::CertificationFailed(format!(
            "products of {} remain underdetermined",
            p.family.as_str()
        ))
    })?;

    let table = MulTable::new(n, entries).map_err(|e| {
        FamilyError::CertificationFailed(format!("constructed table is invalid: {e}"))
    })?;
    let gens: Vec<usize> = (0..p.num_generators).collect();
    if !satisfies(&table, p, &gens) {
        return Err(FamilyError::CertificationFailed(format!(
            "relations or generation fail on the constructed table of {}",
            p.family.as_str()
        )));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::super::*;

    #[test]
    fn coclass0_realization_is_the_power_chain() {
        let t = coclass0(4).realize().unwrap();
        assert_eq!(
            t.entries(),
            &[1, 2, 3, 3, 2, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3]
        );
        let info = t.analyze();
        assert_eq!(info.class_c, Some(3));
        assert_eq!(info.coclass_r, Some(0));

        let trivial = coclass0(1).realize().unwrap();
        assert_eq!(trivial.entries(), &[0]);
    }

    #[test]
    fn coclass0_layers_are_singletons() {
        let info = coclass0(7).realize().unwrap().analyze();
        assert!(info.layers.iter().all(|l| l.len() == 1));
    }

    #[test]
    fn h2_at_order_5() {
        let p = coclass1_h(5, 2);
        let t = p.realize().unwrap();
        assert!(satisfies(&t, &p, &[0, 1]));
        // uv = vu = v^2 = u^2
        assert_eq!(t.product(0, 1), t.product(0, 0));
        assert_eq!(t.product(1, 0), t.product(0, 0));
        assert_eq!(t.product(1, 1), t.product(0, 0));
        let info = t.analyze();
        assert_eq!(info.class_c, Some(3));
        assert_eq!(info.coclass_r, Some(1));
        assert_eq!(info.min_gen_set.len(), 2);
    }

    #[test]
    fn every_coclass1_member_realizes_with_its_claims() {
        for n in 4..=9 {
            for p in coclass1_list(n).unwrap() {
                let t = p.realize().unwrap();
                let info = t.analyze();
                assert_eq!(t.order(), p.expected_order);
                assert_eq!(info.coclass_r, Some(1), "{}", p.metadata());
                assert_eq!(info.min_gen_set.len(), 2);
                assert_eq!(
                    t.is_commutative(),
                    p.claimed_commutative,
                    "{}",
                    p.metadata()
                );
            }
        }
    }

    /// Completes the order-8 `T_3` table independently, from the product
    /// rules that determine a 2-generated coclass-2 table: `u^a u^b` caps at
    /// the zero power, `vu^a = (vu^2)u^{a-2}` starting from the relation
    /// `vu = u^2`, `u^a v = u^{a-1}(uv)` with `uv = y`, `uy = uv^2 = u^3`,
    /// `yu^a = u(vu)u^{a-1} = u^{2+a}`, `yv = vy = v^3 = u^3`, and
    /// `yy = u(vy) = u^4`.
    #[test]
    fn t3_at_order_8_matches_hand_derived_products() {
        let n = 8;
        let zero_exp = n - 2; // u^6
                              // element indexing of the realization: u, v, u^2..u^6, y;
                              // u^e sits at index e for e >= 2
        let upow = |e: usize| if e == 1 { 0 } else { e.min(zero_exp) };
        let y = n - 1;
        let mut entries = vec![usize::MAX; n * n];
        let mut set = |a: usize, b: usize, e: usize| entries[a * n + b] = e;
        let cap = |e: usize| e.min(zero_exp);
        for a in 1..=zero_exp {
            for bb in 1..=zero_exp {
                set(upow(a), upow(bb), upow(cap(a + bb)));
            }
            // vu^a and u^a v both land on u^{a+1}
            set(1, upow(a), upow(cap(a + 1)));
            set(upow(a), 1, upow(cap(a + 1)));
            // yu^a = u^{a+2} and u^a y = u^{a+2}
            set(y, upow(a), upow(cap(a + 2)));
            set(upow(a), y, upow(cap(a + 2)));
        }
        set(0, 1, y); // uv = y
        set(1, 0, upow(2)); // vu = u^2
        set(1, 1, y); // v^2 = y
        set(0, y, upow(3)); // uy = u^3
        set(y, 0, upow(3)); // yu = u^3
        set(1, y, upow(3)); // vy = u^3
        set(y, 1, upow(3)); // yv = u^3
        set(y, y, upow(4));
        let oracle = MulTable::new(n, entries).unwrap();

        let realized = t3(n).realize().unwrap();
        assert_eq!(realized, oracle);
    }

    #[test]
    fn closure_of_v_in_h3_at_order_6() {
        // v^2 = u^4, so v generates {v, u^4, u^5}: indices {1, 4, 5}
        let t = coclass1_h(6, 3).realize().unwrap();
        let closure = t.subsemigroup_generated(&crate::tables::ElementSet::new(vec![1]));
        assert_eq!(closure.as_slice(), &[1, 4, 5]);
    }

    #[test]
    fn monogenic_witness_of_h2_is_the_first_generator() {
        // both u and v generate the full class; the smaller index wins
        let t = coclass1_h(7, 2).realize().unwrap();
        assert_eq!(t.monogenic_witness(), Ok(0));
    }

    #[test]
    fn n1_is_not_its_own_dual_table() {
        let t = coclass1_n1(7).realize().unwrap();
        assert_ne!(t.dual(), t);
    }

    /// The coclass-1 families with the largest parameters coincide with
    /// `LemN` instances at `r = 1`: `H_{n-2}` with `LemN^1_{0,0,0}`,
    /// `H_{n-1}` with `LemN^1_{1,1,1}`, `J_{n-2}` with `LemN^0_{0,0,0}`,
    /// and `J_{n-1}` with `LemN^0_{1,1,1}`.
    #[test]
    fn top_coclass1_parameters_overlap_with_lemma_families() {
        use crate::canon::{are_equivalent, CountMode};
        for n in [6usize, 7] {
            let c = n - 2;
            let pairs = [
                (coclass1_h(n, n - 2), lem_n(c, 1, 0, 0, 0, 1)),
                (coclass1_h(n, n - 1), lem_n(c, 1, 1, 1, 1, 1)),
                (coclass1_j(n, n - 2), lem_n(c, 1, 0, 0, 0, 0)),
                (coclass1_j(n, n - 1), lem_n(c, 1, 1, 1, 1, 0)),
            ];
            for (a, b) in pairs {
                let (ta, tb) = (a.realize().unwrap(), b.realize().unwrap());
                assert!(
                    are_equivalent(&ta, &tb, CountMode::UpToIso).unwrap(),
                    "{} vs {}",
                    a.metadata(),
                    b.metadata()
                );
            }
        }
    }

    /// Swapping the `vw`/`wv` exponents in a composition of two commutative
    /// constituents produces the anti-isomorphic semigroup, distinct up to
    /// isomorphism alone.
    #[test]
    fn asymmetric_compositions_are_anti_isomorphic() {
        use crate::canon::{are_equivalent, CountMode};
        let n = 9;
        let base = coclass1_list(n - 1).unwrap();
        let (v, w) = (&base[2], &base[3]); // H_4 and H_5 at order 8
        assert!(v.claimed_commutative && w.claimed_commutative);
        let a = composition(n, v, w, 3, 4, CompCase::III { i: 2, j: 3 })
            .realize()
            .unwrap();
        let b = composition(n, v, w, 3, 4, CompCase::III { i: 3, j: 2 })
            .realize()
            .unwrap();
        assert!(are_equivalent(&a, &b, CountMode::UpToAntiIso).unwrap());
        assert!(!are_equivalent(&a, &b, CountMode::UpToIso).unwrap());
    }

    #[test]
    fn distinct_t4_instances_are_inequivalent() {
        use crate::canon::{are_equivalent, CountMode};
        let a = t4ijk(9, 2, 2, 2).realize().unwrap();
        let b = t4ijk(9, 2, 3, 2).realize().unwrap();
        for mode in [CountMode::UpToIso, CountMode::UpToAntiIso] {
            assert!(!are_equivalent(&a, &b, mode).unwrap());
        }
    }

    #[test]
    fn satisfies_rejects_wrong_presentation_or_generators() {
        let n1 = coclass1_n1(7).realize().unwrap();
        assert!(!satisfies(&n1, &coclass1_n2(7), &[0, 1]));

        let zero4 = MulTable::new(4, vec![3; 16]).unwrap();
        assert!(!satisfies(&zero4, &coclass1_h(4, 2), &[0, 1]));
    }
}
