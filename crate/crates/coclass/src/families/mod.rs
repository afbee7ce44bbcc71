//! Symbolic presentations of the classified families and their realization
//! as certified multiplication tables.
//!
//! Coclass 0 is the monogenic chain `<u | u^n = u^{n+1}>`. Coclass 1 at
//! order `n >= 5` is the families `H_k`, `J_k`, `X`, `N_1`, `N_2` on two
//! generators, with two extra self-dual presentations at order 4. Coclass 2
//! splits by the size of the minimal generating set: the 2-generated
//! `T`-families, and for three generators the general-coclass families
//! `LemH/LemJ/LemX/LemN` (with `r = 2`) together with compositions of pairs
//! of coclass-1 semigroups one order down.
//!
//! Every list operation emits pairwise inequivalent presentations carrying
//! the order, coclass, self-duality, and commutativity they claim;
//! [`Presentation::realize`] turns each one into a table certified for
//! associativity, the defining relations, and generation.

mod realize;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::tables::{Element, MulTable};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{what} is not classified at order {n} (supported from {min})")]
    UnsupportedOrder {
        what: &'static str,
        n: usize,
        min: usize,
    },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("rewriting did not settle within the iteration cap")]
    RewriteDiverged,
    #[error("certification failed: {0}")]
    CertificationFailed(String),
}

/// A non-empty product of generators, stored as generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        assert!(!letters.is_empty(), "words are non-empty");
        Word(letters)
    }

    /// `g^k`.
    pub fn power(g: usize, k: usize) -> Self {
        Word::new(vec![g; k])
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; words have at least one letter.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    fn remap(&self, f: impl Fn(usize) -> usize) -> Word {
        Word(self.0.iter().map(|&g| f(g)).collect())
    }

    fn is_power_of(&self, g: usize) -> bool {
        self.0.iter().all(|&x| x == g)
    }
}

/// An oriented pair of words asserted equal in the presented semigroup,
/// stored in the order it is printed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        assert!(lhs != rhs, "relations relate distinct words");
        Relation { lhs, rhs }
    }

    /// The relation with both words reversed; applying this to every
    /// relation of a presentation presents the dual semigroup.
    pub fn reversed(&self) -> Relation {
        Relation {
            lhs: self.lhs.reversed(),
            rhs: self.rhs.reversed(),
        }
    }
}

/// Which classified family a presentation instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    Coclass0,
    H,
    J,
    X,
    N1,
    N2,
    /// First extra self-dual presentation at order 4 (commutative).
    N4a,
    /// Second extra self-dual presentation at order 4 (non-commutative).
    N4b,
    T1,
    T2K,
    T2IK,
    T3,
    T3I,
    T4K,
    T4IK,
    T4IJK,
    T5K,
    T5IK,
    T5IJK,
    LemH,
    LemJ,
    LemX,
    LemN,
    CompI,
    CompII,
    CompIII,
    CompIV,
}

impl FamilyTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyTag::Coclass0 => "Coclass0",
            FamilyTag::H => "H",
            FamilyTag::J => "J",
            FamilyTag::X => "X",
            FamilyTag::N1 => "N1",
            FamilyTag::N2 => "N2",
            FamilyTag::N4a => "N4a",
            FamilyTag::N4b => "N4b",
            FamilyTag::T1 => "T1",
            FamilyTag::T2K => "T2k",
            FamilyTag::T2IK => "T2ik",
            FamilyTag::T3 => "T3",
            FamilyTag::T3I => "T3i",
            FamilyTag::T4K => "T4k",
            FamilyTag::T4IK => "T4ik",
            FamilyTag::T4IJK => "T4ijk",
            FamilyTag::T5K => "T5k",
            FamilyTag::T5IK => "T5ik",
            FamilyTag::T5IJK => "T5ijk",
            FamilyTag::LemH => "LemH",
            FamilyTag::LemJ => "LemJ",
            FamilyTag::LemX => "LemX",
            FamilyTag::LemN => "LemN",
            FamilyTag::CompI => "Comp_i",
            FamilyTag::CompII => "Comp_ii",
            FamilyTag::CompIII => "Comp_iii",
            FamilyTag::CompIV => "Comp_iv",
        }
    }
}

/// A symbolic presentation: generators, relations, family tag, parameters,
/// and the order, coclass, self-duality, and commutativity it claims.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub family: FamilyTag,
    /// Parameter list in display order, e.g. `[("n", 8), ("k", 3)]`.
    pub params: Vec<(&'static str, i64)>,
    pub num_generators: usize,
    pub relations: Vec<Relation>,
    pub expected_order: usize,
    pub expected_coclass: usize,
    pub claimed_self_dual: bool,
    pub claimed_commutative: bool,
}

impl Presentation {
    pub fn expected_class(&self) -> usize {
        self.expected_order - 1 - self.expected_coclass
    }

    pub fn param(&self, name: &str) -> Option<i64> {
        self.params
            .iter()
            .find(|(k, _)| *k == name)
            .map(|&(_, v)| v)
    }

    pub fn generator_names(&self) -> Vec<String> {
        match self.family {
            FamilyTag::Coclass0 => vec!["u".into()],
            FamilyTag::LemH | FamilyTag::LemJ | FamilyTag::LemX | FamilyTag::LemN => {
                let r = self.num_generators - 1;
                let mut names: Vec<String> = (1..=r).map(|i| format!("u{i}")).collect();
                names.push("v".into());
                names
            }
            FamilyTag::CompI | FamilyTag::CompII | FamilyTag::CompIII | FamilyTag::CompIV => {
                vec!["u".into(), "v".into(), "w".into()]
            }
            _ => vec!["u".into(), "v".into()],
        }
    }

    /// Presentation text, e.g. `<u,v | u^6=u^7, uv=u^3, vu=u^3, v^2=u^4>`.
    pub fn text(&self) -> String {
        let names = self.generator_names();
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| {
                format!(
                    "{}={}",
                    word_text(&r.lhs, &names),
                    word_text(&r.rhs, &names)
                )
            })
            .collect();
        format!("<{} | {}>", names.join(","), rels.join(", "))
    }

    /// Metadata line, e.g. `family=H n=8 k=3 selfdual=true commutative=true`.
    pub fn metadata(&self) -> String {
        let mut out = format!("family={}", self.family.as_str());
        for (k, v) in &self.params {
            out.push_str(&format!(" {k}={v}"));
        }
        out.push_str(&format!(
            " selfdual={} commutative={}",
            self.claimed_self_dual, self.claimed_commutative
        ));
        out
    }

    /// Builds the multiplication table this presentation defines and
    /// certifies it for associativity, the relations, and generation.
    pub fn realize(&self) -> Result<MulTable, FamilyError> {
        realize::realize(self)
    }
}

fn word_text(w: &Word, names: &[String]) -> String {
    let mut out = String::new();
    let letters = w.letters();
    let mut pos = 0;
    while pos < letters.len() {
        let g = letters[pos];
        let mut run = 1;
        while pos + run < letters.len() && letters[pos + run] == g {
            run += 1;
        }
        out.push_str(&names[g]);
        if run > 1 {
            out.push_str(&format!("^{run}"));
        }
        pos += run;
    }
    out
}

/// Whether every relation of `p` holds in `t` under `gen_assignment` and the
/// assigned generators generate all of `t`.
pub fn satisfies(t: &MulTable, p: &Presentation, gen_assignment: &[Element]) -> bool {
    if gen_assignment.len() != p.num_generators {
        return false;
    }
    if gen_assignment.iter().any(|&g| g >= t.order()) {
        return false;
    }
    let eval = |w: &Word| {
        let mut acc = gen_assignment[w.letters()[0]];
        for &g in &w.letters()[1..] {
            acc = t.product(acc, gen_assignment[g]);
        }
        acc
    };
    if self::satisfies_relations(p, &eval) {
        let gens = gen_assignment.iter().copied().collect();
        t.subsemigroup_generated(&gens).len() == t.order()
    } else {
        false
    }
}

fn satisfies_relations(p: &Presentation, eval: &impl Fn(&Word) -> Element) -> bool {
    p.relations.iter().all(|r| eval(&r.lhs) == eval(&r.rhs))
}

/// Counts `(up to anti-isomorphism, up to isomorphism, commutative)` derived
/// from a classified list: the list itself is irredundant up to
/// anti-isomorphism, every non-self-dual member contributes its dual as a
/// second isomorphism class, and commutative members are counted directly.
pub fn mode_counts(list: &[Presentation]) -> (i64, i64, i64) {
    let total = list.len() as i64;
    let non_self_dual = list.iter().filter(|p| !p.claimed_self_dual).count() as i64;
    let commutative = list.iter().filter(|p| p.claimed_commutative).count() as i64;
    (total, total + non_self_dual, commutative)
}

fn up(k: usize) -> Word {
    Word::power(0, k)
}

fn w(letters: &[usize]) -> Word {
    Word::new(letters.to_vec())
}

fn rel(lhs: Word, rhs: Word) -> Relation {
    Relation::new(lhs, rhs)
}

const U: usize = 0;
const V: usize = 1;
const W2: usize = 2;

/// `<u | u^n = u^{n+1}>`, the monogenic nilpotent semigroup of order `n`.
pub fn coclass0(n: usize) -> Presentation {
    assert!(n >= 1);
    Presentation {
        family: FamilyTag::Coclass0,
        params: vec![("n", n as i64)],
        num_generators: 1,
        relations: vec![rel(up(n), up(n + 1))],
        expected_order: n,
        expected_coclass: 0,
        claimed_self_dual: true,
        claimed_commutative: true,
    }
}

/// Two-generator coclass-1 presentation from the three generator products
/// `(uv, vu, v^2)` and the claimed `(self_dual, commutative)` flags.
fn coclass1(
    family: FamilyTag,
    n: usize,
    k: Option<usize>,
    products: (Word, Word, Word),
    flags: (bool, bool),
) -> Presentation {
    let mut params = vec![("n", n as i64)];
    if let Some(k) = k {
        params.push(("k", k as i64));
    }
    let (uv, vu, vv) = products;
    Presentation {
        family,
        params,
        num_generators: 2,
        relations: vec![
            rel(up(n - 1), up(n)),
            rel(w(&[U, V]), uv),
            rel(w(&[V, U]), vu),
            rel(w(&[V, V]), vv),
        ],
        expected_order: n,
        expected_coclass: 1,
        claimed_self_dual: flags.0,
        claimed_commutative: flags.1,
    }
}

/// `H_k`: `uv = vu = u^k`, `v^2 = u^{2k-2}`, for `2 <= k <= n-1`.
pub fn coclass1_h(n: usize, k: usize) -> Presentation {
    assert!(n >= 4 && (2..=n - 1).contains(&k));
    let products = (up(k), up(k), up(2 * k - 2));
    coclass1(FamilyTag::H, n, Some(k), products, (true, true))
}

/// `J_k`: `uv = vu = u^k`, `v^2 = u^{n-2}`, for `n/2 < k <= n-1`.
pub fn coclass1_j(n: usize, k: usize) -> Presentation {
    assert!(n >= 4 && 2 * k > n && k < n);
    let products = (up(k), up(k), up(n - 2));
    coclass1(FamilyTag::J, n, Some(k), products, (true, true))
}

/// `X`: `uv = vu = u^{n/2}`, `v^2 = u^{n-1}`, for even `n`.
pub fn coclass1_x(n: usize) -> Presentation {
    assert!(n >= 4 && n.is_multiple_of(2));
    let products = (up(n / 2), up(n / 2), up(n - 1));
    coclass1(FamilyTag::X, n, None, products, (true, true))
}

/// `N_1`: `uv = u^{n-1}`, `vu = v^2 = u^{n-2}`; self-dual only at `n = 4`.
pub fn coclass1_n1(n: usize) -> Presentation {
    assert!(n >= 4);
    let products = (up(n - 1), up(n - 2), up(n - 2));
    coclass1(FamilyTag::N1, n, None, products, (n == 4, false))
}

/// `N_2`: `uv = u^{n-1}`, `vu = u^{n-2}`, `v^2 = u^{n-1}`.
pub fn coclass1_n2(n: usize) -> Presentation {
    assert!(n >= 4);
    let products = (up(n - 1), up(n - 2), up(n - 1));
    coclass1(FamilyTag::N2, n, None, products, (false, false))
}

/// `<u,v | u^2=u^3, u^2=v^2, uv=vu, u^2=v^3>`, order 4, coclass 1.
pub fn coclass1_n4a() -> Presentation {
    Presentation {
        family: FamilyTag::N4a,
        params: vec![("n", 4)],
        num_generators: 2,
        relations: vec![
            rel(up(2), up(3)),
            rel(up(2), w(&[V, V])),
            rel(w(&[U, V]), w(&[V, U])),
            rel(up(2), w(&[V, V, V])),
        ],
        expected_order: 4,
        expected_coclass: 1,
        claimed_self_dual: true,
        claimed_commutative: true,
    }
}

/// `<u,v | u^2=u^3, u^2=v^2, u^2=uv, u^2=v^3>`, order 4, coclass 1.
pub fn coclass1_n4b() -> Presentation {
    Presentation {
        family: FamilyTag::N4b,
        params: vec![("n", 4)],
        num_generators: 2,
        relations: vec![
            rel(up(2), up(3)),
            rel(up(2), w(&[V, V])),
            rel(up(2), w(&[U, V])),
            rel(up(2), w(&[V, V, V])),
        ],
        expected_order: 4,
        expected_coclass: 1,
        claimed_self_dual: true,
        claimed_commutative: false,
    }
}

/// All nilpotent semigroups of order `n` and coclass 1, one presentation per
/// class up to anti-isomorphism. Orders 1 to 3 have no classified list here
/// (order 3 carries only the zero semigroup).
pub fn coclass1_list(n: usize) -> Result<Vec<Presentation>, FamilyError> {
    if n < 4 {
        return Err(FamilyError::UnsupportedOrder {
            what: "the coclass-1 list",
            n,
            min: 4,
        });
    }
    let mut out = Vec::new();
    for k in 2..=n - 1 {
        out.push(coclass1_h(n, k));
    }
    for k in n / 2 + 1..=n - 1 {
        out.push(coclass1_j(n, k));
    }
    if n.is_multiple_of(2) {
        out.push(coclass1_x(n));
    }
    out.push(coclass1_n1(n));
    out.push(coclass1_n2(n));
    if n == 4 {
        out.push(coclass1_n4a());
        out.push(coclass1_n4b());
    }
    Ok(out)
}

fn gen2_coclass2(
    family: FamilyTag,
    n: usize,
    params: Vec<(&'static str, i64)>,
    extra: Vec<Relation>,
    self_dual: bool,
    commutative: bool,
) -> Presentation {
    let mut relations = vec![rel(up(n - 2), up(n - 1))];
    relations.extend(extra);
    Presentation {
        family,
        params,
        num_generators: 2,
        relations,
        expected_order: n,
        expected_coclass: 2,
        claimed_self_dual: self_dual,
        claimed_commutative: commutative,
    }
}

/// `T_{1,i}`: `uv = vu`, `v^2 = uv`, `v^3 = u^{n-i}`, `i` in `{2, 3}`.
pub fn t1(n: usize, i: usize) -> Presentation {
    assert!(n >= 7 && (2..=3).contains(&i));
    gen2_coclass2(
        FamilyTag::T1,
        n,
        vec![("n", n as i64), ("i", i as i64)],
        vec![
            rel(w(&[U, V]), w(&[V, U])),
            rel(w(&[V, V]), w(&[U, V])),
            rel(w(&[V, V, V]), up(n - i)),
        ],
        true,
        true,
    )
}

/// `T_{2,k}`: `uv = vu`, `v^2 = u^{2k-4}`, `u^2 v = u^k`, `3 <= k < n/2`.
pub fn t2k(n: usize, k: usize) -> Presentation {
    assert!(n >= 7 && k >= 3 && 2 * k < n);
    gen2_coclass2(
        FamilyTag::T2K,
        n,
        vec![("n", n as i64), ("k", k as i64)],
        vec![
            rel(w(&[U, V]), w(&[V, U])),
            rel(w(&[V, V]), up(2 * k - 4)),
            rel(w(&[U, U, V]), up(k)),
        ],
        true,
        true,
    )
}

/// `T_{2,i,k}`: `uv = vu`, `v^2 = u^{n-i}`, `u^2 v = u^k`,
/// `n/2 <= k <= n-2`, `i` in `{2, 3, 4}`.
pub fn t2ik(n: usize, i: usize, k: usize) -> Presentation {
    assert!(n >= 7 && (2..=4).contains(&i) && 2 * k >= n && k <= n - 2);
    gen2_coclass2(
        FamilyTag::T2IK,
        n,
        vec![("n", n as i64), ("i", i as i64), ("k", k as i64)],
        vec![
            rel(w(&[U, V]), w(&[V, U])),
            rel(w(&[V, V]), up(n - i)),
            rel(w(&[U, U, V]), up(k)),
        ],
        true,
        true,
    )
}

/// `T_3`: `v^2 = uv`, `vu = u^2`, `uv^2 = u^3`.
pub fn t3(n: usize) -> Presentation {
    assert!(n >= 7);
    gen2_coclass2(
        FamilyTag::T3,
        n,
        vec![("n", n as i64)],
        vec![
            rel(w(&[V, V]), w(&[U, V])),
            rel(w(&[V, U]), up(2)),
            rel(w(&[U, V, V]), up(3)),
        ],
        false,
        false,
    )
}

/// `T_{3,i}`: `v^2 = uv`, `vu = u^{n-i}`, `uv^2 = u^{n-2}`, `i` in `{2, 3}`.
pub fn t3i(n: usize, i: usize) -> Presentation {
    assert!(n >= 7 && (2..=3).contains(&i));
    gen2_coclass2(
        FamilyTag::T3I,
        n,
        vec![("n", n as i64), ("i", i as i64)],
        vec![
            rel(w(&[V, V]), w(&[U, V])),
            rel(w(&[V, U]), up(n - i)),
            rel(w(&[U, V, V]), up(n - 2)),
        ],
        false,
        false,
    )
}

/// `T_{4,k}`: `uv = vu`, `uv = u^k`, `v^3 = u^{3k-3}`, `2 <= k < n/3`.
pub fn t4k(n: usize, k: usize) -> Presentation {
    assert!(n >= 7 && k >= 2 && 3 * k < n);
    gen2_coclass2(
        FamilyTag::T4K,
        n,
        vec![("n", n as i64), ("k", k as i64)],
        vec![
            rel(w(&[U, V]), w(&[V, U])),
            rel(w(&[U, V]), up(k)),
            rel(w(&[V, V, V]), up(3 * k - 3)),
        ],
        true,
        true,
    )
}

/// `T_{4,i,k}`: `uv = vu`, `uv = u^k`, `v^3 = u^{n-i}`,
/// `n/3 <= k <= n-4`, `i` in `{2, 3}`.
pub fn t4ik(n: usize, i: usize, k: usize) -> Presentation {
    assert!(n >= 7 && (2..=3).contains(&i) && 3 * k >= n && k <= n - 4);
    gen2_coclass2(
        FamilyTag::T4IK,
        n,
        vec![("n", n as i64), ("i", i as i64), ("k", k as i64)],
        vec![
            rel(w(&[U, V]), w(&[V, U])),
            rel(w(&[U, V]), up(k)),
            rel(w(&[V, V, V]), up(n - i)),
        ],
        true,
        true,
    )
}

/// `T_{4,i,j,k}`: `uv = u^{n-i}`, `vu = u^{n-j}`, `v^3 = u^{n-k}`,
/// `i <= j` in `{2, 3}`, `k` in `{2, 3}`.
pub fn t4ijk(n: usize, i: usize, j: usize, k: usize) -> Presentation {
    assert!(n >= 7 && (2..=3).contains(&i) && (2..=3).contains(&j) && (2..=3).contains(&k));
    gen2_coclass2(
        FamilyTag::T4IJK,
        n,
        vec![
            ("n", n as i64),
            ("i", i as i64),
            ("j", j as i64),
            ("k", k as i64),
        ],
        vec![
            rel(w(&[U, V]), up(n - i)),
            rel(w(&[V, U]), up(n - j)),
            rel(w(&[V, V, V]), up(n - k)),
        ],
        i == j,
        i == j,
    )
}

/// `T_{5,k}`: `uv = u^k`, `v^2 = u^{2k-2}`, `vu^2 = u^{k+1}`,
/// `2 <= k < (n-1)/2`. Self-dual exactly for `k = 2`.
pub fn t5k(n: usize, k: usize) -> Presentation {
    assert!(n >= 7 && k >= 2 && 2 * k < n - 1);
    gen2_coclass2(
        FamilyTag::T5K,
        n,
        vec![("n", n as i64), ("k", k as i64)],
        vec![
            rel(w(&[U, V]), up(k)),
            rel(w(&[V, V]), up(2 * k - 2)),
            rel(w(&[V, U, U]), up(k + 1)),
        ],
        k == 2,
        false,
    )
}

/// `T_{5,i,k}`: `uv = u^k`, `v^2 = u^{n-i}`, `vu^2 = u^{k+1}`,
/// `(n-1)/2 <= k <= n-5`, `i` in `{2, 3}`.
pub fn t5ik(n: usize, i: usize, k: usize) -> Presentation {
    assert!(n >= 7 && (2..=3).contains(&i) && 2 * k >= n - 1 && k <= n - 5);
    gen2_coclass2(
        FamilyTag::T5IK,
        n,
        vec![("n", n as i64), ("i", i as i64), ("k", k as i64)],
        vec![
            rel(w(&[U, V]), up(k)),
            rel(w(&[V, V]), up(n - i)),
            rel(w(&[V, U, U]), up(k + 1)),
        ],
        false,
        false,
    )
}

/// `T_{5,i,j,k}`: `uv = u^{n-i}`, `v^2 = u^{n-j}`, `vu^2 = u^{n-k}`,
/// `i` in `{2, 3, 4}`, `j, k` in `{2, 3}`.
pub fn t5ijk(n: usize, i: usize, j: usize, k: usize) -> Presentation {
    assert!(n >= 7 && (2..=4).contains(&i) && (2..=3).contains(&j) && (2..=3).contains(&k));
    gen2_coclass2(
        FamilyTag::T5IJK,
        n,
        vec![
            ("n", n as i64),
            ("i", i as i64),
            ("j", j as i64),
            ("k", k as i64),
        ],
        vec![
            rel(w(&[U, V]), up(n - i)),
            rel(w(&[V, V]), up(n - j)),
            rel(w(&[V, U, U]), up(n - k)),
        ],
        false,
        false,
    )
}

/// All nilpotent semigroups of order `n >= 7`, coclass 2, and minimal
/// generating set of size 2, one presentation per class up to
/// anti-isomorphism. Orders 5 and 6 are left to the exhaustive search.
pub fn coclass2_gen2_list(n: usize) -> Result<Vec<Presentation>, FamilyError> {
    if n < 7 {
        return Err(FamilyError::UnsupportedOrder {
            what: "the 2-generated coclass-2 list",
            n,
            min: 7,
        });
    }
    let mut out = Vec::new();
    for i in 2..=3 {
        out.push(t1(n, i));
    }
    for k in 3.. {
        if 2 * k >= n {
            break;
        }
        out.push(t2k(n, k));
    }
    for i in 2..=4 {
        for k in n.div_ceil(2)..=n - 2 {
            out.push(t2ik(n, i, k));
        }
    }
    out.push(t3(n));
    for i in 2..=3 {
        out.push(t3i(n, i));
    }
    for k in 2.. {
        if 3 * k >= n {
            break;
        }
        out.push(t4k(n, k));
    }
    for i in 2..=3 {
        for k in n.div_ceil(3)..=n - 4 {
            out.push(t4ik(n, i, k));
        }
    }
    for i in 2..=3 {
        for j in i..=3 {
            for k in 2..=3 {
                out.push(t4ijk(n, i, j, k));
            }
        }
    }
    for k in 2.. {
        if 2 * k >= n - 1 {
            break;
        }
        out.push(t5k(n, k));
    }
    for i in 2..=3 {
        for k in n / 2..=n.saturating_sub(5) {
            out.push(t5ik(n, i, k));
        }
    }
    for i in 2..=4 {
        for j in 2..=3 {
            for k in 2..=3 {
                out.push(t5ijk(n, i, j, k));
            }
        }
    }
    Ok(out)
}

fn lemma_base_relations(c: usize, r: usize) -> Vec<Relation> {
    let mut rels = vec![rel(up(c + 1), up(c + 2))];
    for i in 1..r {
        // generator index i is u_{i+1}
        rels.push(rel(w(&[i, i]), up(2)));
        for j in 0..i {
            rels.push(rel(w(&[i, j]), up(2)));
            rels.push(rel(w(&[j, i]), up(2)));
        }
    }
    rels
}

fn lemma_family(
    family: FamilyTag,
    c: usize,
    r: usize,
    params: Vec<(&'static str, i64)>,
    cross: Vec<Relation>,
    self_dual: bool,
    commutative: bool,
) -> Presentation {
    let mut relations = lemma_base_relations(c, r);
    relations.extend(cross);
    Presentation {
        family,
        params,
        num_generators: r + 1,
        relations,
        expected_order: c + r + 1,
        expected_coclass: r,
        claimed_self_dual: self_dual,
        claimed_commutative: commutative,
    }
}

/// `LemH_k` on generators `u1..ur, v`: `u_i v = v u_i = u1^k`,
/// `v^2 = u1^{2k-2}`, for `2 <= k <= c-1`.
pub fn lem_h(c: usize, r: usize, k: usize) -> Presentation {
    assert!(c >= 3 && r >= 1 && (2..=c - 1).contains(&k));
    let v = r;
    let mut cross = Vec::new();
    for i in 0..r {
        cross.push(rel(w(&[i, v]), up(k)));
        cross.push(rel(w(&[v, i]), up(k)));
    }
    cross.push(rel(w(&[v, v]), up(2 * k - 2)));
    lemma_family(
        FamilyTag::LemH,
        c,
        r,
        vec![("c", c as i64), ("r", r as i64), ("k", k as i64)],
        cross,
        true,
        true,
    )
}

/// `LemJ_k`: as `LemH_k` but `v^2 = u1^c`, for `floor(c/2)+2 <= k <= c-1`.
pub fn lem_j(c: usize, r: usize, k: usize) -> Presentation {
    assert!(c >= 3 && r >= 1 && (c / 2 + 2..=c - 1).contains(&k));
    let v = r;
    let mut cross = Vec::new();
    for i in 0..r {
        cross.push(rel(w(&[i, v]), up(k)));
        cross.push(rel(w(&[v, i]), up(k)));
    }
    cross.push(rel(w(&[v, v]), up(c)));
    lemma_family(
        FamilyTag::LemJ,
        c,
        r,
        vec![("c", c as i64), ("r", r as i64), ("k", k as i64)],
        cross,
        true,
        true,
    )
}

/// `LemX`: `u_i v = v u_i = u1^{(c+2)/2}`, `v^2 = u1^{c+1}`, for even `c`.
pub fn lem_x(c: usize, r: usize) -> Presentation {
    assert!(c >= 3 && r >= 1 && c.is_multiple_of(2));
    let v = r;
    let mut cross = Vec::new();
    for i in 0..r {
        cross.push(rel(w(&[i, v]), up((c + 2) / 2)));
        cross.push(rel(w(&[v, i]), up((c + 2) / 2)));
    }
    cross.push(rel(w(&[v, v]), up(c + 1)));
    lemma_family(
        FamilyTag::LemX,
        c,
        r,
        vec![("c", c as i64), ("r", r as i64)],
        cross,
        true,
        true,
    )
}

/// `LemN^e_{k,l,m}`: the generators split into four blocks by whether
/// `v u_i` and `u_i v` equal the zero `u1^{c+1}` or `u1^c`;
/// `0 <= k <= m <= r`, `k <= l <= floor((k+m)/2)`, `e` in `{0, 1}`.
/// Commutative exactly when `k = l = m`; self-dual exactly when
/// `l = (k+m)/2`.
pub fn lem_n(c: usize, r: usize, k: usize, l: usize, m: usize, e: usize) -> Presentation {
    assert!(c >= 3 && r >= 1);
    assert!(k <= m && m <= r && k <= l && 2 * l <= k + m && e <= 1);
    let v = r;
    let mut cross = Vec::new();
    for i in 0..r {
        // block of generator u_{i+1}: positions 1..=k, k+1..=l, l+1..=m, m+1..=r
        let pos = i + 1;
        let (vu_pow, uv_pow) = if pos <= k {
            (c + 1, c + 1)
        } else if pos <= l {
            (c + 1, c)
        } else if pos <= m {
            (c, c + 1)
        } else {
            (c, c)
        };
        cross.push(rel(w(&[v, i]), up(vu_pow)));
        cross.push(rel(w(&[i, v]), up(uv_pow)));
    }
    cross.push(rel(w(&[v, v]), up(c + e)));
    lemma_family(
        FamilyTag::LemN,
        c,
        r,
        vec![
            ("c", c as i64),
            ("r", r as i64),
            ("k", k as i64),
            ("l", l as i64),
            ("m", m as i64),
            ("e", e as i64),
        ],
        cross,
        2 * l == k + m,
        k == l && l == m,
    )
}

/// The general-coclass families of class `c >= 3` and coclass `r` on `r+1`
/// generators, each containing `r` copies of the monogenic semigroup of
/// class `c`: all `LemH_k`, `LemJ_k`, `LemX` (even `c`), and
/// `LemN^e_{k,l,m}` instances, with order `c + r + 1`.
pub fn lemma_family_list(c: usize, r: usize) -> Result<Vec<Presentation>, FamilyError> {
    if c < 3 || r < 1 {
        return Err(FamilyError::InvalidParams(format!(
            "the general-coclass families need c >= 3 and r >= 1, got c={c}, r={r}"
        )));
    }
    let mut out = Vec::new();
    for k in 2..=c - 1 {
        out.push(lem_h(c, r, k));
    }
    for k in c / 2 + 2..=c - 1 {
        out.push(lem_j(c, r, k));
    }
    if c.is_multiple_of(2) {
        out.push(lem_x(c, r));
    }
    for k in 0..=r {
        for m in k..=r {
            for l in k..=(k + m) / 2 {
                for e in 0..=1 {
                    out.push(lem_n(c, r, k, l, m, e));
                }
            }
        }
    }
    Ok(out)
}

/// How a composition presentation combines `V` and `W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompCase {
    /// `vw = wv = u^{k+l-2}`, for `k + l <= n - 2`.
    I,
    /// `vw = u^{n-i}`, `wv = u^{n-j}` with `W`'s relations as given;
    /// emitted with `i <= j`.
    II { i: usize, j: usize },
    /// As case II but all four `(i, j)` pairs, for `V` before a
    /// non-self-dual `W`.
    III { i: usize, j: usize },
    /// `W`'s relations reversed (its dual), all four `(i, j)` pairs, for
    /// non-self-dual `V` and `W`.
    IV { i: usize, j: usize },
}

fn uv_exponent(p: &Presentation) -> usize {
    for r in &p.relations {
        if r.lhs.letters() == [U, V] && r.rhs.is_power_of(U) {
            return r.rhs.len();
        }
        if r.rhs.letters() == [U, V] && r.lhs.is_power_of(U) {
            return r.lhs.len();
        }
    }
    panic!("no uv relation with a u-power side in {:?}", p.family);
}

/// A 3-generated coclass-2 presentation of order `n` built from coclass-1
/// presentations `V = <u,v | Q>` and `W = <u,w | R>` of order `n-1`.
/// `vpos` and `wpos` are the 1-based positions of `V` and `W` in the
/// coclass-1 list at order `n-1`.
pub fn composition(
    n: usize,
    v: &Presentation,
    w_pres: &Presentation,
    vpos: usize,
    wpos: usize,
    case: CompCase,
) -> Presentation {
    assert_eq!(v.expected_order, n - 1);
    assert_eq!(w_pres.expected_order, n - 1);
    let k = uv_exponent(v);
    let l = uv_exponent(w_pres);

    let mut relations = vec![rel(up(n - 2), up(n - 1))];
    // both constituents share the power relation, stored once above
    relations.extend(v.relations[1..].iter().cloned());
    let remap_w = |word: &Word| word.remap(|g| if g == V { W2 } else { g });
    for r in &w_pres.relations[1..] {
        let r = if matches!(case, CompCase::IV { .. }) {
            r.reversed()
        } else {
            r.clone()
        };
        relations.push(Relation::new(remap_w(&r.lhs), remap_w(&r.rhs)));
    }

    let (family, ij, self_dual, commutative) = match case {
        CompCase::I => {
            assert!(k + l <= n - 2);
            relations.push(rel(w(&[V, W2]), up(k + l - 2)));
            relations.push(rel(w(&[V, W2]), w(&[W2, V])));
            (FamilyTag::CompI, None, true, true)
        }
        CompCase::II { i, j } => {
            relations.push(rel(w(&[V, W2]), up(n - i)));
            relations.push(rel(w(&[W2, V]), up(n - j)));
            let (sd, comm) = if w_pres.claimed_commutative {
                (i == j || vpos == wpos, i == j)
            } else {
                (false, false)
            };
            (FamilyTag::CompII, Some((i, j)), sd, comm)
        }
        CompCase::III { i, j } => {
            relations.push(rel(w(&[V, W2]), up(n - i)));
            relations.push(rel(w(&[W2, V]), up(n - j)));
            (FamilyTag::CompIII, Some((i, j)), false, false)
        }
        CompCase::IV { i, j } => {
            relations.push(rel(w(&[V, W2]), up(n - i)));
            relations.push(rel(w(&[W2, V]), up(n - j)));
            (FamilyTag::CompIV, Some((i, j)), vpos == wpos, false)
        }
    };

    let mut params = vec![("n", n as i64), ("v", vpos as i64), ("w", wpos as i64)];
    if let Some((i, j)) = ij {
        params.push(("i", i as i64));
        params.push(("j", j as i64));
    }

    Presentation {
        family,
        params,
        num_generators: 3,
        relations,
        expected_order: n,
        expected_coclass: 2,
        claimed_self_dual: self_dual,
        claimed_commutative: commutative,
    }
}

/// All nilpotent semigroups of order `n >= 6`, coclass 2, and minimal
/// generating set of size 3, one presentation per class up to
/// anti-isomorphism: the general-coclass families with `c = n-3`, `r = 2`,
/// followed by the compositions of ordered pairs `V <= W` of coclass-1
/// presentations of order `n-1` other than `H_2`.
pub fn coclass2_gen3_list(n: usize) -> Result<Vec<Presentation>, FamilyError> {
    if n < 6 {
        return Err(FamilyError::UnsupportedOrder {
            what: "the 3-generated coclass-2 list",
            n,
            min: 6,
        });
    }
    let mut out = lemma_family_list(n - 3, 2)?;
    let base = coclass1_list(n - 1)?;
    for a in 1..base.len() {
        for b in a..base.len() {
            let (v, w_pres) = (&base[a], &base[b]);
            let (vpos, wpos) = (a + 1, b + 1);
            let k = uv_exponent(v);
            let l = uv_exponent(w_pres);
            if k + l <= n - 2 {
                out.push(composition(n, v, w_pres, vpos, wpos, CompCase::I));
            } else if w_pres.claimed_commutative || a == b {
                for (i, j) in [(2, 2), (2, 3), (3, 3)] {
                    out.push(composition(n, v, w_pres, vpos, wpos, CompCase::II { i, j }));
                }
            } else {
                for (i, j) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
                    out.push(composition(
                        n,
                        v,
                        w_pres,
                        vpos,
                        wpos,
                        CompCase::III { i, j },
                    ));
                }
            }
            if !v.claimed_commutative && !w_pres.claimed_commutative {
                for (i, j) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
                    out.push(composition(n, v, w_pres, vpos, wpos, CompCase::IV { i, j }));
                }
            }
        }
    }
    Ok(out)
}

/// Rebuilds the list member identified by a metadata line's family tag and
/// parameters; the result is exactly the presentation a list operation
/// emits, or an error if no list member matches.
pub fn from_metadata(
    family: &str,
    params: &BTreeMap<String, i64>,
) -> Result<Presentation, FamilyError> {
    let get = |key: &str| -> Result<usize, FamilyError> {
        params
            .get(key)
            .copied()
            .and_then(|v| usize::try_from(v).ok())
            .ok_or_else(|| FamilyError::InvalidParams(format!("missing or bad parameter {key}")))
    };
    let candidates: Vec<Presentation> = match family {
        "Coclass0" => vec![coclass0(get("n")?)],
        "H" | "J" | "X" | "N1" | "N2" | "N4a" | "N4b" => coclass1_list(get("n")?)?,
        "T1" | "T2k" | "T2ik" | "T3" | "T3i" | "T4k" | "T4ik" | "T4ijk" | "T5k" | "T5ik"
        | "T5ijk" => coclass2_gen2_list(get("n")?)?,
        "LemH" | "LemJ" | "LemX" | "LemN" => lemma_family_list(get("c")?, get("r")?)?,
        "Comp_i" | "Comp_ii" | "Comp_iii" | "Comp_iv" => coclass2_gen3_list(get("n")?)?,
        other => {
            return Err(FamilyError::InvalidParams(format!(
                "unknown family tag {other}"
            )))
        }
    };
    candidates
        .into_iter()
        .find(|p| {
            p.family.as_str() == family
                && p.params.iter().all(|(k, v)| params.get(*k) == Some(v))
                && p.params.len() == params.len()
        })
        .ok_or_else(|| FamilyError::InvalidParams(format!("no {family} member with {params:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn floor_half(n: i64) -> i64 {
        n / 2
    }

    #[test]
    fn coclass1_list_lengths() {
        assert_eq!(coclass1_list(4).unwrap().len(), 8);
        assert_eq!(coclass1_list(5).unwrap().len(), 7);
        assert_eq!(coclass1_list(8).unwrap().len(), 12);
        for n in 5..=20 {
            let len = coclass1_list(n).unwrap().len() as i64;
            assert_eq!(len, n as i64 + floor_half(n as i64), "order {n}");
        }
        assert!(matches!(
            coclass1_list(3),
            Err(FamilyError::UnsupportedOrder { .. })
        ));
    }

    #[test]
    fn gen2_list_lengths() {
        for (n, expect) in [(7, 34), (8, 40), (9, 45), (10, 50), (13, 65)] {
            assert_eq!(coclass2_gen2_list(n).unwrap().len(), expect, "order {n}");
        }
        assert!(coclass2_gen2_list(6).is_err());
    }

    #[test]
    fn gen3_list_lengths() {
        for (n, expect) in [(6, 99), (7, 150), (8, 178), (12, 399), (13, 492)] {
            assert_eq!(coclass2_gen3_list(n).unwrap().len(), expect, "order {n}");
        }
        assert!(coclass2_gen3_list(5).is_err());
    }

    #[test]
    fn lemma_list_ranges() {
        let sub = lemma_family_list(9, 2).unwrap();
        assert_eq!(
            sub.iter().filter(|p| p.family == FamilyTag::LemN).count(),
            14
        );
        let sub = lemma_family_list(4, 1).unwrap();
        assert_eq!(
            sub.iter().filter(|p| p.family == FamilyTag::LemH).count(),
            2
        );
        let sub = lemma_family_list(3, 2).unwrap();
        assert_eq!(
            sub.iter().filter(|p| p.family == FamilyTag::LemJ).count(),
            0
        );
        assert!(lemma_family_list(2, 1).is_err());
    }

    #[test]
    fn presentation_text_and_metadata() {
        let p = coclass1_h(7, 3);
        assert_eq!(p.text(), "<u,v | u^6=u^7, uv=u^3, vu=u^3, v^2=u^4>");
        assert_eq!(
            p.metadata(),
            "family=H n=7 k=3 selfdual=true commutative=true"
        );

        // (k,l,m) = (0,0,1): u1 sits in the mixed block, u2 in the last one
        let q = lem_n(5, 2, 0, 0, 1, 1);
        assert_eq!(
            q.text(),
            "<u1,u2,v | u1^6=u1^7, u2^2=u1^2, u2u1=u1^2, u1u2=u1^2, \
             vu1=u1^5, u1v=u1^6, vu2=u1^5, u2v=u1^5, v^2=u1^6>"
        );
    }

    #[test]
    fn metadata_round_trip() {
        let mut samples = coclass1_list(6).unwrap();
        samples.extend(coclass2_gen2_list(7).unwrap());
        samples.extend(coclass2_gen3_list(6).unwrap());
        samples.push(coclass0(5));
        for p in samples {
            let meta = p.metadata();
            let mut parts = meta.split_whitespace();
            let family = parts.next().unwrap().strip_prefix("family=").unwrap();
            let mut params = BTreeMap::new();
            for kv in parts {
                let (k, v) = kv.split_once('=').unwrap();
                if k == "selfdual" || k == "commutative" {
                    continue;
                }
                params.insert(k.to_string(), v.parse::<i64>().unwrap());
            }
            let rebuilt = from_metadata(family, &params).unwrap();
            assert_eq!(rebuilt, p, "round trip of {meta}");
        }
    }

    #[test]
    fn gen3_flags_match_published_mode_counts() {
        // up to isomorphism and commutative counts derived from the flags
        for (n, iso, comm) in [(6, 157, 27), (7, 233, 51), (8, 275, 65), (9, 369, 99)] {
            let list = coclass2_gen3_list(n).unwrap();
            let (anti, iso_count, comm_count) = mode_counts(&list);
            assert_eq!(anti, list.len() as i64);
            assert_eq!(iso_count, iso, "iso at order {n}");
            assert_eq!(comm_count, comm, "commutative at order {n}");
        }
    }
}
