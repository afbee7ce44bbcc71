//! Finite semigroups given as multiplication tables.
//!
//! A [`MulTable`] stores a complete `n × n` multiplication table over the
//! elements `0..n-1` and is validated for associativity on construction.
//! The operations here compute power ideals `S^k`, the layer decomposition
//! `S^k \ S^{k+1}`, nilpotency class and coclass, minimal generating sets,
//! duals, and single-element witnesses for the nilpotency class.

use thiserror::Error;

/// Index of a semigroup element, `0..n-1`.
pub type Element = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("expected {expected} entries for order {n}, got {got}")]
    WrongEntryCount {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("entry at ({row},{col}) is {value}, which is not an element index below {n}")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("not associative: ({i}*{j})*{k} differs from {i}*({j}*{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("monogenic witness requires class >= 2 and a singleton layer at c-1")]
    PremiseNotSatisfied,
    #[error("table text: {0}")]
    Parse(String),
}

/// A sorted, duplicate-free set of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(Vec<Element>);

impl ElementSet {
    pub fn new(mut members: Vec<Element>) -> Self {
        members.sort_unstable();
        members.dedup();
        ElementSet(members)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: Element) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.0
    }

    fn from_mask(mask: &[bool]) -> Self {
        ElementSet((0..mask.len()).filter(|&e| mask[e]).collect())
    }
}

impl FromIterator<Element> for ElementSet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        ElementSet::new(iter.into_iter().collect())
    }
}

/// Structural data of a table: nilpotency, class, coclass, layers, and the
/// minimal generating set.
///
/// For a nilpotent table of class `c` the `layers` vector holds the sets
/// `S^k \ S^{k+1}` for `k = 1..=c` followed by the zero singleton `S^{c+1}`.
/// For a non-nilpotent table `class_c` and `coclass_r` are absent and
/// `layers` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassInfo {
    pub is_nilpotent: bool,
    pub class_c: Option<usize>,
    pub coclass_r: Option<usize>,
    pub layers: Vec<ElementSet>,
    /// `S \ S^2`; the unique minimal generating set of a nilpotent semigroup
    /// with at least two elements (empty for the trivial semigroup).
    pub min_gen_set: ElementSet,
}

/// A complete multiplication table over `0..n-1`, row-major: the entry at
/// `(i, j)` is the product `i * j`. Construction checks that every entry is
/// an element index and that the operation is associative, so a `MulTable`
/// value is always a semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MulTable {
    n: usize,
    entries: Vec<Element>,
}

impl MulTable {
    /// Validates `entries` (row-major, length `n*n`) as a semigroup table.
    ///
    /// The associativity check is exhaustive over all `n^3` triples and
    /// reports the first violation in lexicographic `(i, j, k)` order.
    pub fn new(n: usize, entries: Vec<Element>) -> Result<Self, TableError> {
        if n == 0 {
            return Err(TableError::ZeroOrder);
        }
        if entries.len() != n * n {
            return Err(TableError::WrongEntryCount {
                n,
                expected: n * n,
                got: entries.len(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                let v = entries[i * n + j];
                if v >= n {
                    return Err(TableError::IndexOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                        n,
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = entries[entries[i * n + j] * n + k];
                    let right = entries[i * n + entries[j * n + k]];
                    if left != right {
                        return Err(TableError::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(MulTable { n, entries })
    }

    /// Builds a table that is already known to be associative.
    pub(crate) fn from_checked_parts(n: usize, entries: Vec<Element>) -> Self {
        debug_assert!(MulTable::new(n, entries.clone()).is_ok());
        MulTable { n, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    /// The product `i * j`.
    #[inline]
    pub fn product(&self, i: Element, j: Element) -> Element {
        self.entries[i * self.n + j]
    }

    /// The transpose table, i.e. the semigroup with reversed multiplication.
    pub fn dual(&self) -> MulTable {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = self.product(j, i);
            }
        }
        MulTable { n, entries }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (i + 1..n).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Relabels elements by `perm`, where `perm[old] = new`.
    pub fn relabel(&self, perm: &[Element]) -> MulTable {
        let n = self.n;
        assert_eq!(perm.len(), n);
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[perm[i] * n + perm[j]] = perm[self.product(i, j)];
            }
        }
        MulTable { n, entries }
    }

    /// The power ideal `S^k`: all products of exactly `k` elements.
    ///
    /// Computed iteratively as `S^k = S * S^{k-1}`; the chain is descending,
    /// so once it stabilizes all later powers are equal.
    pub fn power_ideal(&self, k: usize) -> ElementSet {
        assert!(k >= 1, "power ideals start at S^1");
        let n = self.n;
        let mut cur = vec![true; n];
        for _ in 1..k {
            let next = self.product_with_all(&cur);
            if next == cur {
                break;
            }
            cur = next;
        }
        ElementSet::from_mask(&cur)
    }

    /// `S * X` as masks.
    fn product_with_all(&self, x: &[bool]) -> Vec<bool> {
        let n = self.n;
        let mut next = vec![false; n];
        for i in 0..n {
            for j in 0..n {
                if x[j] {
                    next[self.product(i, j)] = true;
                }
            }
        }
        next
    }

    /// Computes nilpotency, class, coclass, layers, and `S \ S^2`.
    ///
    /// A table is nilpotent when some power ideal is a singleton; the class
    /// is the least `c` with `|S^{c+1}| = 1`, the coclass is `n - 1 - c`.
    pub fn analyze(&self) -> ClassInfo {
        let n = self.n;
        // powers[idx] = S^{idx+1}, kept until the chain reaches a singleton
        // or stabilizes above one element.
        let mut powers: Vec<Vec<bool>> = vec![vec![true; n]];
        let mut nilpotent = mask_count(&powers[0]) == 1;
        while !nilpotent {
            let next = self.product_with_all(powers.last().unwrap());
            if &next == powers.last().unwrap() {
                break;
            }
            let size = mask_count(&next);
            powers.push(next);
            if size == 1 {
                nilpotent = true;
            }
        }

        let square = self.product_with_all(&powers[0]);
        let min_gen_set = ElementSet((0..n).filter(|&e| !square[e]).collect());

        if !nilpotent {
            return ClassInfo {
                is_nilpotent: false,
                class_c: None,
                coclass_r: None,
                layers: Vec::new(),
                min_gen_set,
            };
        }

        let class_c = powers.len() - 1;
        let mut layers = Vec::with_capacity(class_c + 1);
        for k in 1..=class_c {
            let layer = (0..n)
                .filter(|&e| powers[k - 1][e] && !powers[k][e])
                .collect();
            layers.push(ElementSet(layer));
        }
        layers.push(ElementSet::from_mask(&powers[class_c]));

        ClassInfo {
            is_nilpotent: true,
            class_c: Some(class_c),
            coclass_r: Some(n - 1 - class_c),
            layers,
            min_gen_set,
        }
    }

    /// The least subset containing `gens` and closed under the product.
    pub fn subsemigroup_generated(&self, gens: &ElementSet) -> ElementSet {
        assert!(!gens.is_empty(), "generating set must be non-empty");
        let n = self.n;
        let mut mask = vec![false; n];
        let mut queue: Vec<Element> = gens.iter().collect();
        for &g in &queue {
            mask[g] = true;
        }
        while let Some(a) = queue.pop() {
            for b in 0..n {
                if mask[b] {
                    for p in [self.product(a, b), self.product(b, a)] {
                        if !mask[p] {
                            mask[p] = true;
                            queue.push(p);
                        }
                    }
                }
            }
        }
        ElementSet::from_mask(&mask)
    }

    /// An element generating a subsemigroup of the full class `c`.
    ///
    /// Requires a nilpotent table of class `c >= 2` whose layer `c-1` is a
    /// singleton; then some `s` has `s^c != s^{c+1}`, and the smallest such
    /// element index is returned.
    pub fn monogenic_witness(&self) -> Result<Element, TableError> {
        let info = self.analyze();
        let c = match info.class_c {
            Some(c) if info.is_nilpotent && c >= 2 => c,
            _ => return Err(TableError::PremiseNotSatisfied),
        };
        if info.layers[c - 2].len() != 1 {
            return Err(TableError::PremiseNotSatisfied);
        }
        for s in 0..self.n {
            let mut pow = s;
            for _ in 1..c {
                pow = self.product(pow, s);
            }
            if self.product(pow, s) != pow {
                return Ok(s);
            }
        }
        unreachable!("a singleton layer at c-1 guarantees a class-c witness")
    }

    /// Parses the table text format: first line `n`, then `n` lines of `n`
    /// space-separated 0-based entries.
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut lines = text.lines();
        let first = lines
            .next()
            .ok_or_else(|| TableError::Parse("empty input".into()))?;
        let n: usize = first
            .trim()
            .parse()
            .map_err(|_| TableError::Parse(format!("bad order line {first:?}")))?;
        let mut entries = Vec::with_capacity(n * n);
        for (row, line) in lines.by_ref().take(n).enumerate() {
            let mut count = 0;
            for tok in line.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| TableError::Parse(format!("bad entry {tok:?} in row {row}")))?;
                entries.push(v);
                count += 1;
            }
            if count != n {
                return Err(TableError::Parse(format!(
                    "row {row} has {count} entries, expected {n}"
                )));
            }
        }
        if entries.len() != n * n {
            return Err(TableError::Parse(format!(
                "expected {n} rows of {n} entries"
            )));
        }
        if let Some(extra) = lines.find(|l| !l.trim().is_empty()) {
            return Err(TableError::Parse(format!("unexpected line {extra:?}")));
        }
        MulTable::new(n, entries)
    }

    /// Renders the table text format (LF line endings, no trailing blanks).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.n.to_string());
        out.push('\n');
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| self.product(i, j).to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

fn mask_count(mask: &[bool]) -> usize {
    mask.iter().filter(|&&b| b).count()
}
