//! p-chains in restricted orbit categories and the first page of the
//! p-chain spectral sequence.
//!
//! Under properties (M) and (NM) every automorphism group `Aut(G/H) =
//! N(H)/H` of a maximal finite `H` is trivial, so the spaces `S(c)` carry no
//! information beyond the chain itself and the page is determined by the
//! poset of orbit types. For `PSL_2(O_k)` that poset is `G/1` below `m`
//! pairwise incomparable maximal nodes; for `SL_2(O_k)` a central node
//! `G/{+-I}` sits between `G/1` and every maximal node.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::assembler::ClassCounts;
use crate::finite_k::{rank_h_bm, rank_k_cyclic};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation index {0} out of range")]
    BadIndex(usize),
    #[error("relation is not a strict order (cycle through {0})")]
    NotStrict(String),
    #[error("maximal node {lower} lies below maximal node {upper}, violating property (M)")]
    PropertyM { lower: String, upper: String },
    #[error("maximal node {0} has no recorded order")]
    MissingOrder(String),
    #[error("absolute pages are only built for posets without a central node")]
    Unsupported,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NodeKind {
    Trivial,
    /// `{+-I}`
    Central,
    Maximal { order: Option<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Node {
    pub label: String,
    pub kind: NodeKind,
}

/// Isomorphism classes of orbits `G/H`, ordered by existence of a G-map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPoset {
    nodes: Vec<Node>,
    /// Strict relation `i < j`, transitively closed.
    less: BTreeSet<(usize, usize)>,
}

impl OrbitPoset {
    pub fn new(nodes: Vec<Node>, relations: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, PosetError> {
        let n = nodes.len();
        let mut reach = vec![vec![false; n]; n];
        for (i, j) in relations {
            if i >= n {
                return Err(PosetError::BadIndex(i));
            }
            if j >= n {
                return Err(PosetError::BadIndex(j));
            }
            reach[i][j] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| reach[i][i]) {
            return Err(PosetError::NotStrict(nodes[i].label.clone()));
        }
        let less = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| reach[i][j])
            .collect();
        Ok(OrbitPoset { nodes, less })
    }

    fn maximal_nodes(orders: &[Option<u64>]) -> Vec<Node> {
        orders
            .iter()
            .enumerate()
            .map(|(i, &order)| Node {
                label: match order {
                    Some(o) => format!("G/M_{}[Z_{}]", i + 1, o),
                    None => format!("G/M_{}", i + 1),
                },
                kind: NodeKind::Maximal { order },
            })
            .collect()
    }

    fn psl_from(orders: &[Option<u64>]) -> Self {
        let mut nodes = vec![Node { label: "G/1".into(), kind: NodeKind::Trivial }];
        nodes.extend(Self::maximal_nodes(orders));
        let rel: Vec<_> = (1..nodes.len()).map(|j| (0, j)).collect();
        OrbitPoset::new(nodes, rel).expect("PSL poset is a strict order")
    }

    fn sl_from(orders: &[Option<u64>]) -> Self {
        let mut nodes = vec![
            Node { label: "G/1".into(), kind: NodeKind::Trivial },
            Node { label: "G/{+-I}".into(), kind: NodeKind::Central },
        ];
        nodes.extend(Self::maximal_nodes(orders));
        let mut rel = vec![(0, 1)];
        rel.extend((2..nodes.len()).map(|j| (1, j)));
        OrbitPoset::new(nodes, rel).expect("SL poset is a strict order")
    }

    /// `G/1` below one node per class of maximal finite subgroups.
    pub fn psl(counts: &ClassCounts) -> Self {
        let orders: Vec<_> = counts.class_orders().into_iter().map(Some).collect();
        Self::psl_from(&orders)
    }

    /// `G/1 < G/{+-I} < G/M` for every class `M`.
    pub fn sl(counts: &ClassCounts) -> Self {
        let orders: Vec<_> = counts.class_orders().into_iter().map(Some).collect();
        Self::sl_from(&orders)
    }

    /// PSL poset with `m` maximal nodes of unspecified order.
    pub fn psl_anonymous(m: usize) -> Self {
        Self::psl_from(&vec![None; m])
    }

    pub fn sl_anonymous(m: usize) -> Self {
        Self::sl_from(&vec![None; m])
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_less(&self, i: usize, j: usize) -> bool {
        self.less.contains(&(i, j))
    }

    pub fn relations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.less.iter().copied()
    }

    fn check_property_m(&self) -> Result<(), PosetError> {
        for &(i, j) in &self.less {
            if matches!(self.nodes[i].kind, NodeKind::Maximal { .. }) && matches!(self.nodes[j].kind, NodeKind::Maximal { .. }) {
                return Err(PosetError::PropertyM {
                    lower: self.nodes[i].label.clone(),
                    upper: self.nodes[j].label.clone(),
                });
            }
        }
        Ok(())
    }
}

/// Strictly increasing sequence of node indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Chain(pub Vec<usize>);

impl Chain {
    pub fn p(&self) -> usize {
        self.0.len() - 1
    }

    pub fn labels<'a>(&self, poset: &'a OrbitPoset) -> Vec<&'a str> {
        self.0.iter().map(|&i| poset.nodes[i].label.as_str()).collect()
    }
}

/// All p-chains, in lexicographic order of node indices.
pub fn enumerate_pchains(poset: &OrbitPoset, p: usize) -> Vec<Chain> {
    fn extend(poset: &OrbitPoset, prefix: &mut Vec<usize>, want: usize, out: &mut Vec<Chain>) {
        if prefix.len() == want {
            out.push(Chain(prefix.clone()));
            return;
        }
        let last = *prefix.last().expect("non-empty prefix");
        for next in 0..poset.len() {
            if poset.is_less(last, next) {
                prefix.push(next);
                extend(poset, prefix, want, out);
                prefix.pop();
            }
        }
    }

    let mut out = Vec::new();
    for start in 0..poset.len() {
        let mut prefix = vec![start];
        extend(poset, &mut prefix, p + 1, &mut out);
    }
    out
}

/// Coefficient groups appearing on the first page, each at a fixed `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Token {
    /// `K_q(Z[M])` with `|M| = n`
    KqZM(u64),
    /// `H_q(BG; K(Z))`
    HqBG,
    /// `H_q(BM; K(Z))`
    HqBM(u64),
    /// `Wh_q(M)`
    WhqM(u64),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::KqZM(n) => write!(f, "K_q(Z[Z_{n}])"),
            Token::HqBG => write!(f, "H_q(BG;K(Z))"),
            Token::HqBM(n) => write!(f, "H_q(BZ_{n};K(Z))"),
            Token::WhqM(n) => write!(f, "Wh_q(Z_{n})"),
        }
    }
}

/// First page: column `p` is a formal sum of tokens with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct E1Page {
    pub columns: BTreeMap<usize, BTreeMap<Token, u64>>,
    pub relative: bool,
    /// The page has a single nonzero column, so the sequence collapses at E^1.
    pub collapses_at_e1: bool,
    /// `d^1: E^1_{1,q} -> E^1_{0,q}` is (rationally) injective: it is
    /// inclusion on the `H_q(BG)` side and the classical assembly map
    /// `H_q(BM; K(Z)) -> K_q(Z[M])` on the other.
    pub d1_rationally_injective: bool,
}

impl E1Page {
    pub fn column(&self, p: usize) -> Option<&BTreeMap<Token, u64>> {
        self.columns.get(&p)
    }

    /// Rendered column, `0` when empty.
    pub fn render_column(&self, p: usize) -> String {
        match self.columns.get(&p) {
            None => "0".into(),
            Some(col) => col
                .iter()
                .map(|(t, &k)| if k == 1 { t.to_string() } else { format!("{k}*{t}") })
                .collect::<Vec<_>>()
                .join(" + "),
        }
    }
}

fn maximal_order(node: &Node) -> Result<u64, PosetError> {
    match node.kind {
        NodeKind::Maximal { order: Some(o) } => Ok(o),
        _ => Err(PosetError::MissingOrder(node.label.clone())),
    }
}

/// Builds the E^1 page from the chain census of `poset`.
///
/// A chain starting at the base node (`G/1`) contributes `H_q(BG)` as a
/// 0-chain and `H_q(BM)` for its top `M` otherwise; a chain starting at a
/// maximal `G/M` is a 0-chain and contributes `K_q(Z[M])`.
///
/// For the pair relative to the trivial family, chains whose least element
/// is `G/1` are dropped. Without a central node the remaining maximal
/// 0-chains carry `Wh_q(M)`. With a central node `G/{+-I}` becomes the base
/// and the page matches the absolute page of the PSL quotient.
pub fn build_e1(poset: &OrbitPoset, relative_to_trivial: bool) -> Result<E1Page, PosetError> {
    poset.check_property_m()?;
    let has_central = poset.nodes.iter().any(|n| n.kind == NodeKind::Central);
    if !relative_to_trivial && has_central {
        return Err(PosetError::Unsupported);
    }
    let base_kind = if relative_to_trivial && has_central {
        NodeKind::Central
    } else {
        NodeKind::Trivial
    };

    let mut columns: BTreeMap<usize, BTreeMap<Token, u64>> = BTreeMap::new();
    for p in 0..poset.len() {
        let chains = enumerate_pchains(poset, p);
        if chains.is_empty() {
            break;
        }
        for chain in chains {
            let least = &poset.nodes[chain.0[0]];
            if relative_to_trivial && least.kind == NodeKind::Trivial {
                continue;
            }
            let top = &poset.nodes[*chain.0.last().unwrap()];
            let token = if least.kind == base_kind {
                if p == 0 {
                    Token::HqBG
                } else {
                    Token::HqBM(maximal_order(top)?)
                }
            } else if relative_to_trivial && !has_central {
                Token::WhqM(maximal_order(least)?)
            } else {
                Token::KqZM(maximal_order(least)?)
            };
            *columns.entry(p).or_default().entry(token).or_insert(0) += 1;
        }
    }
    let collapses_at_e1 = columns.len() <= 1;
    Ok(E1Page {
        columns,
        relative: relative_to_trivial,
        collapses_at_e1,
        d1_rationally_injective: true,
    })
}

/// Rank of each token at a given `q`.
pub trait TokenRanks {
    fn rank(&self, token: Token, q: i64) -> i64;
}

/// Ranks from the cyclic group tables, with `H_q(BG)` counted as zero so
/// that column differences give `rk K_q(Z[G]) - rk H_q(BG; K(Z))`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CyclicRanks;

impl TokenRanks for CyclicRanks {
    fn rank(&self, token: Token, q: i64) -> i64 {
        match token {
            Token::KqZM(n) => rank_k_cyclic(n, q).value as i64,
            Token::HqBG => 0,
            Token::HqBM(n) => rank_h_bm(n, q) as i64,
            Token::WhqM(n) => rank_k_cyclic(n, q).value as i64 - rank_h_bm(n, q) as i64,
        }
    }
}

pub fn rank_e1_column(page: &E1Page, p: usize, q: i64, ranks: &impl TokenRanks) -> i64 {
    page.columns
        .get(&p)
        .map(|col| col.iter().map(|(&t, &k)| ranks.rank(t, q) * k as i64).sum())
        .unwrap_or(0)
}

/// `rank(E^1_{0,q}) - rank(E^1_{1,q})`, which equals `rank(E^2_{0,q})` when
/// `d^1` is injective.
pub fn e1_rank_difference(page: &E1Page, q: i64) -> i64 {
    rank_e1_column(page, 0, q, &CyclicRanks) - rank_e1_column(page, 1, q, &CyclicRanks)
}
