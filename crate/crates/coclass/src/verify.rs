//! Cross-check harness: realizes every classified list, checks canonical
//! distinctness, compares list lengths against the closed-form counts and
//! the reference numbers, runs the exhaustive search as an oracle on small
//! orders, and validates the claimed self-duality and commutativity flags.

use crate::bruteforce::{enumerate_nilpotent, SearchConfig};
use crate::canon::{canonical_key, dedup, is_self_dual, CountMode};
use crate::counting::{
    formula_count, formula_min_order, table1_reference, CountKind, CountQuery, Mode,
};
use crate::families::{
    coclass0, coclass1_list, coclass2_gen2_list, coclass2_gen3_list, mode_counts, Presentation,
};
use crate::tables::MulTable;

/// Outcome of one verification step.
#[derive(Debug, Clone)]
pub struct Check {
    pub label: String,
    pub ok: bool,
    pub detail: String,
}

impl Check {
    fn pass(label: &str, detail: String) -> Self {
        Check {
            label: label.to_string(),
            ok: true,
            detail,
        }
    }

    fn fail(label: &str, detail: String) -> Self {
        Check {
            label: label.to_string(),
            ok: false,
            detail,
        }
    }
}

pub const MIN_ORDER: usize = 5;
pub const MAX_ORDER: usize = 13;

struct ListInstance {
    kind: CountKind,
    n: usize,
    list: Vec<Presentation>,
}

fn classified_lists(max_order: usize) -> Vec<ListInstance> {
    let mut out = Vec::new();
    for n in 4..=max_order {
        out.push(ListInstance {
            kind: CountKind::Coclass1,
            n,
            list: coclass1_list(n).expect("order checked"),
        });
    }
    for n in 7..=max_order {
        out.push(ListInstance {
            kind: CountKind::Coclass2Gen2,
            n,
            list: coclass2_gen2_list(n).expect("order checked"),
        });
    }
    for n in 6..=max_order {
        out.push(ListInstance {
            kind: CountKind::Coclass2Gen3,
            n,
            list: coclass2_gen3_list(n).expect("order checked"),
        });
    }
    out
}

/// Runs the whole harness for orders up to `max_order` (between
/// [`MIN_ORDER`] and [`MAX_ORDER`]), one [`Check`] per step.
pub fn run_all(max_order: usize) -> Vec<Check> {
    assert!(
        (MIN_ORDER..=MAX_ORDER).contains(&max_order),
        "verification covers orders {MIN_ORDER} to {MAX_ORDER}"
    );
    let lists = classified_lists(max_order);

    // Realize everything once; later steps reuse the tables.
    let mut realized: Vec<Vec<MulTable>> = Vec::new();
    let mut realize_failure: Option<String> = None;
    let mut instances = 0usize;
    'outer: for inst in &lists {
        let mut tables = Vec::with_capacity(inst.list.len());
        for p in &inst.list {
            match p.realize() {
                Ok(t) => tables.push(t),
                Err(e) => {
                    realize_failure = Some(format!(
                        "(realize, order {}, {}): {e}",
                        inst.n,
                        p.metadata()
                    ));
                    break 'outer;
                }
            }
            instances += 1;
        }
        realized.push(tables);
    }
    for n in 1..=max_order {
        if realize_failure.is_some() {
            break;
        }
        match coclass0(n).realize() {
            Ok(_) => instances += 1,
            Err(e) => realize_failure = Some(format!("(realize, order {n}, Coclass0): {e}")),
        }
    }

    let mut checks = Vec::new();
    let label_a = "realize and certify every family instance";
    match realize_failure {
        None => checks.push(Check::pass(label_a, format!("{instances} instances"))),
        Some(detail) => {
            checks.push(Check::fail(label_a, detail));
            return checks;
        }
    }

    // Pairwise distinctness inside each list, up to anti-isomorphism.
    let label_b = "canonical distinctness within each list";
    let mut b_fail = None;
    for (inst, tables) in lists.iter().zip(&realized) {
        let reps = dedup(tables, CountMode::UpToAntiIso).expect("nilpotent realizations");
        if reps.len() != tables.len() {
            b_fail = Some(format!(
                "({}, order {}): {} presentations but {} classes",
                inst.kind.as_str(),
                inst.n,
                tables.len(),
                reps.len()
            ));
            break;
        }
    }
    checks.push(match b_fail {
        None => Check::pass(label_b, format!("{} lists", lists.len())),
        Some(d) => Check::fail(label_b, d),
    });

    // List lengths and flag-derived mode counts against formulas and the
    // reference table.
    let label_c = "list counts against formulas and reference numbers";
    let mut c_fail = None;
    let mut c_cells = 0usize;
    'c: for inst in &lists {
        let (anti, iso, comm) = mode_counts(&inst.list);
        let coclass = if inst.kind == CountKind::Coclass1 {
            1
        } else {
            2
        };
        let gen_size = match inst.kind {
            CountKind::Coclass2Gen2 => Some(2),
            CountKind::Coclass2Gen3 => Some(3),
            _ => None,
        };
        for (mode, got) in [
            (Mode::UpToAntiIso, anti),
            (Mode::UpToIso, iso),
            (Mode::CommutativeUpToIso, comm),
        ] {
            let n = inst.n as i64;
            if n >= formula_min_order(inst.kind) {
                let expect = formula_count(&CountQuery {
                    coclass,
                    n,
                    mode,
                    gen_size,
                })
                .expect("in domain");
                if got != expect {
                    c_fail = Some(format!(
                        "({}, order {}, {}): list gives {got}, formula {expect}",
                        inst.kind.as_str(),
                        inst.n,
                        mode.as_str()
                    ));
                    break 'c;
                }
                c_cells += 1;
            }
            if let Ok(expect) = table1_reference(inst.kind, mode, n) {
                if got != expect {
                    c_fail = Some(format!(
                        "({}, order {}, {}): list gives {got}, reference {expect}",
                        inst.kind.as_str(),
                        inst.n,
                        mode.as_str()
                    ));
                    break 'c;
                }
                c_cells += 1;
            }
        }
    }
    // coclass-2 totals
    if c_fail.is_none() {
        for n in 7..=max_order {
            let gen2 = lists
                .iter()
                .position(|i| i.kind == CountKind::Coclass2Gen2 && i.n == n)
                .expect("listed");
            let gen3 = lists
                .iter()
                .position(|i| i.kind == CountKind::Coclass2Gen3 && i.n == n)
                .expect("listed");
            let m2 = mode_counts(&lists[gen2].list);
            let m3 = mode_counts(&lists[gen3].list);
            for (mode, got) in [
                (Mode::UpToAntiIso, m2.0 + m3.0),
                (Mode::UpToIso, m2.1 + m3.1),
                (Mode::CommutativeUpToIso, m2.2 + m3.2),
            ] {
                let expect = table1_reference(CountKind::Coclass2, mode, n as i64).expect("3..=13");
                if got != expect {
                    c_fail = Some(format!(
                        "(coclass2 total, order {n}, {}): lists give {got}, reference {expect}",
                        mode.as_str()
                    ));
                }
                c_cells += 1;
            }
        }
    }
    checks.push(match c_fail {
        None => Check::pass(label_c, format!("{c_cells} cells compared")),
        Some(d) => Check::fail(label_c, d),
    });

    // The exhaustive search as oracle for small orders.
    let label_d = "exhaustive-search oracle comparison";
    let mut d_fail = None;
    let mut d_cells = 0usize;
    'd: for n in 3..=max_order.min(6) {
        for coclass in [1usize, 2] {
            let iso_reps = enumerate_nilpotent(
                &SearchConfig::new(n)
                    .coclass(coclass)
                    .mode(CountMode::UpToIso),
            )
            .expect("bounded order");
            let kind = if coclass == 1 {
                CountKind::Coclass1
            } else {
                CountKind::Coclass2
            };
            let anti = dedup(&iso_reps, CountMode::UpToAntiIso)
                .expect("nilpotent")
                .len() as i64;
            let iso = iso_reps.len() as i64;
            let comm = iso_reps.iter().filter(|t| t.is_commutative()).count() as i64;
            for (mode, got) in [
                (Mode::UpToAntiIso, anti),
                (Mode::UpToIso, iso),
                (Mode::CommutativeUpToIso, comm),
            ] {
                let expect = table1_reference(kind, mode, n as i64).expect("3..=13");
                if got != expect {
                    d_fail = Some(format!(
                        "(search, order {n}, coclass {coclass}, {}): {got} vs reference {expect}",
                        mode.as_str()
                    ));
                    break 'd;
                }
                d_cells += 1;
            }
            // class-by-class agreement with the families where both cover
            let family_lists: Vec<&ListInstance> = lists
                .iter()
                .filter(|i| {
                    i.n == n
                        && match (coclass, i.kind) {
                            (1, CountKind::Coclass1) => true,
                            (2, CountKind::Coclass2Gen3) => n >= 6,
                            _ => false,
                        }
                })
                .collect();
            for inst in family_lists {
                let tables = &realized[lists
                    .iter()
                    .position(|i| std::ptr::eq(i, inst))
                    .expect("same slice")];
                let from_search: Vec<_> = iso_reps
                    .iter()
                    .filter(|t| {
                        inst.kind != CountKind::Coclass2Gen3 || t.analyze().min_gen_set.len() == 3
                    })
                    .collect();
                let mut search_keys: Vec<_> = from_search
                    .iter()
                    .map(|t| canonical_key(t, CountMode::UpToAntiIso).expect("nilpotent"))
                    .collect();
                search_keys.sort();
                search_keys.dedup();
                let mut family_keys: Vec<_> = tables
                    .iter()
                    .map(|t| canonical_key(t, CountMode::UpToAntiIso).expect("nilpotent"))
                    .collect();
                family_keys.sort();
                if search_keys != family_keys {
                    d_fail = Some(format!(
                        "({}, order {n}): canonical keys differ between search and families",
                        inst.kind.as_str()
                    ));
                    break 'd;
                }
                d_cells += 1;
            }
        }
    }
    checks.push(match d_fail {
        None => Check::pass(label_d, format!("{d_cells} comparisons")),
        Some(d) => Check::fail(label_d, d),
    });

    // Claimed self-duality and commutativity.
    let label_e = "self-dual and commutative claims";
    let mut e_fail = None;
    'e: for (inst, tables) in lists.iter().zip(&realized) {
        for (p, t) in inst.list.iter().zip(tables) {
            if t.is_commutative() != p.claimed_commutative {
                e_fail = Some(format!("(commutative, order {}, {})", inst.n, p.metadata()));
                break 'e;
            }
            if is_self_dual(t).expect("nilpotent") != p.claimed_self_dual {
                e_fail = Some(format!("(self-dual, order {}, {})", inst.n, p.metadata()));
                break 'e;
            }
        }
    }
    let total: usize = lists.iter().map(|i| i.list.len()).sum();
    checks.push(match e_fail {
        None => Check::pass(label_e, format!("{total} instances")),
        Some(d) => Check::fail(label_e, d),
    });

    checks
}
