//! Exhaustive enumeration of nilpotent semigroups of small order.
//!
//! The search fixes the zero as the last element (every nilpotent semigroup
//! has one, and relabeling covers the rest), fills the remaining cells in
//! row-major order, and checks associativity incrementally: a triple is
//! tested the moment its last needed product is placed. Completed tables
//! whose power-ideal chain fails to reach a singleton are discarded, the
//! survivors are filtered and reduced to one representative per canonical
//! key. Results are independent of the classified families, which is the
//! point: they are the oracle the families are checked against.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::canon::{canonical_key, CanonicalKey, CountMode};
use crate::tables::MulTable;

/// Largest order the search accepts; beyond this the plain backtracking
/// search stops being worthwhile.
pub const MAX_ORDER: usize = 7;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("search order must be at least 1")]
    ZeroOrder,
    #[error("order {n} exceeds the search bound {max}")]
    OrderTooLarge { n: usize, max: usize },
}

/// Search space and filters for one enumeration run.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub order: usize,
    pub coclass_filter: Option<usize>,
    pub gen_size_filter: Option<usize>,
    pub commutative_only: bool,
    pub mode: CountMode,
}

impl SearchConfig {
    pub fn new(order: usize) -> Self {
        SearchConfig {
            order,
            coclass_filter: None,
            gen_size_filter: None,
            commutative_only: false,
            mode: CountMode::UpToAntiIso,
        }
    }

    pub fn coclass(mut self, r: usize) -> Self {
        self.coclass_filter = Some(r);
        self
    }

    pub fn gen_size(mut self, g: usize) -> Self {
        self.gen_size_filter = Some(g);
        self
    }

    pub fn commutative(mut self) -> Self {
        self.commutative_only = true;
        self
    }

    pub fn mode(mut self, mode: CountMode) -> Self {
        self.mode = mode;
        self
    }
}

const UNSET: u8 = u8::MAX;

struct Search {
    n: usize,
    tab: Vec<u8>,
    cells: Vec<(usize, usize)>,
    /// For each value `v`, the cells currently holding `v`.
    preimages: Vec<Vec<(u8, u8)>>,
    classes: BTreeMap<CanonicalKey, MulTable>,
    cfg: SearchConfig,
}

impl Search {
    /// Checks every associativity triple completed by the new cell `(i, j)`.
    fn consistent(&self, i: usize, j: usize) -> bool {
        let n = self.n;
        let t = &self.tab;
        let p = t[i * n + j];
        for a in 0..n {
            // triple (i, j, a): (i*j)*a vs i*(j*a)
            let ja = t[j * n + a];
            if ja != UNSET {
                let left = t[p as usize * n + a];
                let right = t[i * n + ja as usize];
                if left != UNSET && right != UNSET && left != right {
                    return false;
                }
            }
            // triple (a, i, j): (a*i)*j vs a*(i*j)
            let ai = t[a * n + i];
            if ai != UNSET {
                let left = t[ai as usize * n + j];
                let right = t[a * n + p as usize];
                if left != UNSET && right != UNSET && left != right {
                    return false;
                }
            }
        }
        // triples (a, b, j) with a*b = i, via the preimage list of i
        for &(a, b) in &self.preimages[i] {
            let (a, b) = (a as usize, b as usize);
            let bj = t[b * n + j];
            if bj != UNSET {
                let right = t[a * n + bj as usize];
                if right != UNSET && right != p {
                    return false;
                }
            }
        }
        // triples (i, b, c) with b*c = j, via the preimage list of j
        for &(b, c) in &self.preimages[j] {
            let (b, c) = (b as usize, c as usize);
            let ib = t[i * n + b];
            if ib != UNSET {
                let left = t[ib as usize * n + c];
                if left != UNSET && left != p {
                    return false;
                }
            }
        }
        true
    }

    fn fill(&mut self, pos: usize) {
        if pos == self.cells.len() {
            self.complete();
            return;
        }
        let (i, j) = self.cells[pos];
        for v in 0..self.n {
            self.tab[i * self.n + j] = v as u8;
            self.preimages[v].push((i as u8, j as u8));
            if self.consistent(i, j) {
                self.fill(pos + 1);
            }
            self.preimages[v].pop();
        }
        self.tab[i * self.n + j] = UNSET;
    }

    /// Power-ideal chain as bitmasks. Returns `(class, |S^2|)` when the
    /// chain reaches a singleton, `None` when it stabilizes above one.
    fn chain_class(&self) -> Option<(usize, u32)> {
        let n = self.n;
        let full: u32 = (1 << n) - 1;
        let mut cur = full;
        let mut square = 0;
        for step in 1.. {
            let mut next: u32 = 0;
            for i in 0..n {
                for j in 0..n {
                    if cur & (1 << j) != 0 {
                        next |= 1 << self.tab[i * n + j];
                    }
                }
            }
            if step == 1 {
                square = next.count_ones();
            }
            if next.count_ones() == 1 {
                return Some((step, square));
            }
            if next == cur {
                return None;
            }
            cur = next;
        }
        unreachable!("the chain is strictly descending until it stabilizes")
    }

    fn complete(&mut self) {
        // All filters are decided from the mask chain and the raw cells, so
        // rejected candidates cost no allocation.
        let (class, square) = if self.n == 1 {
            (0, 1)
        } else {
            match self.chain_class() {
                Some(found) => found,
                None => return,
            }
        };
        if let Some(g) = self.cfg.gen_size_filter {
            // the minimal generating set is the complement of S^2
            if self.n - square as usize != g {
                return;
            }
        }
        if let Some(r) = self.cfg.coclass_filter {
            if self.n - 1 - class != r {
                return;
            }
        }
        if self.cfg.commutative_only {
            let n = self.n;
            let commutes =
                (0..n).all(|i| (i + 1..n).all(|j| self.tab[i * n + j] == self.tab[j * n + i]));
            if !commutes {
                return;
            }
        }
        let entries: Vec<usize> = self.tab.iter().map(|&v| v as usize).collect();
        let table = MulTable::from_checked_parts(self.n, entries);
        debug_assert!(table.analyze().is_nilpotent);
        let key = canonical_key(&table, self.cfg.mode)
            .expect("nilpotent search table stays within canonical-key bounds");
        self.classes.entry(key).or_insert(table);
    }
}

/// One representative per equivalence class (under `cfg.mode`) of the
/// nilpotent semigroups of order `cfg.order` passing all filters, sorted by
/// canonical key.
pub fn enumerate_nilpotent(cfg: &SearchConfig) -> Result<Vec<MulTable>, SearchError> {
    let n = cfg.order;
    if n == 0 {
        return Err(SearchError::ZeroOrder);
    }
    if n > MAX_ORDER {
        return Err(SearchError::OrderTooLarge { n, max: MAX_ORDER });
    }

    let mut tab = vec![UNSET; n * n];
    let mut preimages = vec![Vec::new(); n];
    for a in 0..n {
        // the zero: absorbing in both arguments
        tab[a * n + (n - 1)] = (n - 1) as u8;
        tab[(n - 1) * n + a] = (n - 1) as u8;
        preimages[n - 1].push((a as u8, (n - 1) as u8));
        if a < n - 1 {
            preimages[n - 1].push(((n - 1) as u8, a as u8));
        }
    }
    let cells: Vec<(usize, usize)> = (0..n - 1)
        .flat_map(|i| (0..n - 1).map(move |j| (i, j)))
        .collect();

    let mut search = Search {
        n,
        tab,
        cells,
        preimages,
        classes: BTreeMap::new(),
        cfg: cfg.clone(),
    };
    search.fill(0);
    Ok(search.classes.into_values().collect())
}

/// `|enumerate_nilpotent(cfg)|`.
pub fn count_nilpotent(cfg: &SearchConfig) -> Result<usize, SearchError> {
    Ok(enumerate_nilpotent(cfg)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_bounds_orders() {
        assert_eq!(
            enumerate_nilpotent(&SearchConfig::new(0)),
            Err(SearchError::ZeroOrder)
        );
        assert_eq!(
            enumerate_nilpotent(&SearchConfig::new(8)),
            Err(SearchError::OrderTooLarge { n: 8, max: 7 })
        );
    }

    #[test]
    fn trivial_orders() {
        assert_eq!(count_nilpotent(&SearchConfig::new(1)), Ok(1));
        assert_eq!(count_nilpotent(&SearchConfig::new(2)), Ok(1));
    }

    #[test]
    fn order_3_coclass_1_is_the_zero_semigroup() {
        let reps = enumerate_nilpotent(&SearchConfig::new(3).coclass(1)).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].entries(), &[2; 9]);
    }

    #[test]
    fn order_4_counts() {
        assert_eq!(count_nilpotent(&SearchConfig::new(4).coclass(2)), Ok(1));
        assert_eq!(
            count_nilpotent(&SearchConfig::new(4).coclass(2).gen_size(3)),
            Ok(1)
        );
        assert_eq!(count_nilpotent(&SearchConfig::new(4).coclass(1)), Ok(8));
        assert_eq!(
            count_nilpotent(&SearchConfig::new(4).coclass(1).mode(CountMode::UpToIso)),
            Ok(9)
        );
    }

    #[test]
    fn order_5_coclass_2_up_to_iso() {
        assert_eq!(
            count_nilpotent(&SearchConfig::new(5).coclass(2).mode(CountMode::UpToIso)),
            Ok(118)
        );
    }

    #[test]
    fn search_is_deterministic() {
        let cfg = SearchConfig::new(4);
        assert_eq!(
            enumerate_nilpotent(&cfg).unwrap(),
            enumerate_nilpotent(&cfg).unwrap()
        );
    }

    #[test]
    fn enumerated_tables_are_valid_and_filtered() {
        let reps = enumerate_nilpotent(&SearchConfig::new(5).coclass(1)).unwrap();
        assert_eq!(reps.len(), 7);
        for t in &reps {
            assert!(MulTable::new(t.order(), t.entries().to_vec()).is_ok());
            assert_eq!(t.analyze().coclass_r, Some(1));
        }
    }
}
