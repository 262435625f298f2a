//! Finite partial, total, and cyclic orders with validated axioms.
//!
//! All three relation types are immutable after validation. Partial and
//! total orders store the full `<=` relation as an adjacency matrix;
//! cyclic orders store a successor permutation and derive triples from it.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while validating or querying order relations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("element ids must be nonempty")]
    EmptyElementId,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("missing reflexive pair ({0}, {0})")]
    MissingReflexivePair(String),
    #[error("antisymmetry violated: both ({0}, {1}) and ({1}, {0}) are present")]
    AntisymmetryViolation(String, String),
    #[error("transitivity violated: ({0}, {1}) and ({1}, {2}) present but ({0}, {2}) missing")]
    TransitivityViolation(String, String, String),
    #[error("incomparable pair ({0}, {1})")]
    IncomparablePair(String, String),
    #[error("a cyclic order needs at least {needed} elements, got {got}")]
    TooFewElements { needed: usize, got: usize },
    #[error("degenerate triple [{0}, {1}, {2}]: components must be distinct")]
    DegenerateTriple(String, String, String),
    #[error("no circular arrangement satisfies all given triples")]
    InconsistentTriples,
    #[error("successor pairs must form a single cycle covering every element")]
    NotASingleCycle,
    #[error("({0}, {1}) are not related in the required direction")]
    NotComparable(String, String),
}

/// Which flavour of order a space carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Partial,
    Total,
    Cyclic,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderKind::Partial => write!(f, "partial"),
            OrderKind::Total => write!(f, "total"),
            OrderKind::Cyclic => write!(f, "cyclic"),
        }
    }
}

fn intern_elements<S: Into<String>>(
    elements: impl IntoIterator<Item = S>,
) -> Result<(Vec<String>, HashMap<String, usize>), OrderError> {
    let mut ids = Vec::new();
    let mut index = HashMap::new();
    for element in elements {
        let id = element.into();
        if id.is_empty() {
            return Err(OrderError::EmptyElementId);
        }
        if index.insert(id.clone(), ids.len()).is_some() {
            return Err(OrderError::DuplicateElement(id));
        }
        ids.push(id);
    }
    Ok((ids, index))
}

/// A validated partial order: reflexive, antisymmetric, transitive.
///
/// The relation is stored densely; `le[a * n + b]` holds iff `a <= b`.
#[derive(Debug, Clone)]
pub struct PartialOrder {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    le: Vec<bool>,
}

impl PartialOrder {
    /// Validates `pairs` as a partial order over `elements`.
    ///
    /// Reflexive pairs must be supplied explicitly; the validator never
    /// completes a relation on the caller's behalf.
    pub fn validate<S: Into<String>>(
        elements: impl IntoIterator<Item = S>,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, OrderError> {
        let po = Self::new_unchecked(elements, pairs)?;
        po.check_axioms()?;
        Ok(po)
    }

    /// Builds the relation without axiom checks. Element references are
    /// still resolved. Intended for tests that need to feed invalid
    /// relations to the property checkers.
    pub fn new_unchecked<S: Into<String>>(
        elements: impl IntoIterator<Item = S>,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, OrderError> {
        let (ids, index) = intern_elements(elements)?;
        let n = ids.len();
        let mut le = vec![false; n * n];
        for (a, b) in pairs {
            let a = a.into();
            let b = b.into();
            let i = *index
                .get(&a)
                .ok_or_else(|| OrderError::UnknownElement(a.clone()))?;
            let j = *index
                .get(&b)
                .ok_or_else(|| OrderError::UnknownElement(b.clone()))?;
            le[i * n + j] = true;
        }
        Ok(Self { ids, index, le })
    }

    fn check_axioms(&self) -> Result<(), OrderError> {
        let n = self.ids.len();
        // Antisymmetry first so that a pair like {(a,b),(b,a)} is reported
        // as such even when reflexive pairs were also omitted.
        for i in 0..n {
            for j in (i + 1)..n {
                if self.le[i * n + j] && self.le[j * n + i] {
                    return Err(OrderError::AntisymmetryViolation(
                        self.ids[i].clone(),
                        self.ids[j].clone(),
                    ));
                }
            }
        }
        for i in 0..n {
            if !self.le[i * n + i] {
                return Err(OrderError::MissingReflexivePair(self.ids[i].clone()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !self.le[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    if self.le[j * n + k] && !self.le[i * n + k] {
                        return Err(OrderError::TransitivityViolation(
                            self.ids[i].clone(),
                            self.ids[j].clone(),
                            self.ids[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn elements(&self) -> &[String] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn id(&self, index: usize) -> &str {
        &self.ids[index]
    }

    pub(crate) fn require(&self, id: &str) -> Result<usize, OrderError> {
        self.index_of(id)
            .ok_or_else(|| OrderError::UnknownElement(id.to_owned()))
    }

    /// Whether `a <= b` in this order.
    pub fn le(&self, a: &str, b: &str) -> Result<bool, OrderError> {
        Ok(self.le_idx(self.require(a)?, self.require(b)?))
    }

    pub(crate) fn le_idx(&self, i: usize, j: usize) -> bool {
        self.le[i * self.ids.len() + j]
    }
}

/// A validated total order: a connex partial order with derived ranks.
#[derive(Debug, Clone)]
pub struct TotalOrder {
    po: PartialOrder,
    rank_of: Vec<usize>,
    by_rank: Vec<usize>,
}

impl TotalOrder {
    /// Validates `pairs` as a total order over `elements`.
    pub fn validate<S: Into<String>>(
        elements: impl IntoIterator<Item = S>,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, OrderError> {
        let po = PartialOrder::validate(elements, pairs)?;
        let n = po.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if !po.le_idx(i, j) && !po.le_idx(j, i) {
                    return Err(OrderError::IncomparablePair(
                        po.ids[i].clone(),
                        po.ids[j].clone(),
                    ));
                }
            }
        }
        Ok(Self::rank_from(po))
    }

    /// Builds the total order in which `elements` are already listed from
    /// least to greatest.
    pub fn from_ranked<S: Into<String>>(
        elements: impl IntoIterator<Item = S>,
    ) -> Result<Self, OrderError> {
        let (ids, index) = intern_elements(elements)?;
        let n = ids.len();
        let mut le = vec![false; n * n];
        for i in 0..n {
            for j in i..n {
                le[i * n + j] = true;
            }
        }
        let po = PartialOrder { ids, index, le };
        Ok(Self::rank_from(po))
    }

    /// Wraps an arbitrary relation as a total order without validation.
    /// Ranks fall back to predecessor counts. Test hook.
    pub fn new_unchecked(po: PartialOrder) -> Self {
        Self::rank_from(po)
    }

    fn rank_from(po: PartialOrder) -> Self {
        let n = po.len();
        // rank(a) = number of elements strictly below a; for a valid total
        // order this is a bijection onto 0..n-1.
        let mut counted: Vec<(usize, usize)> = (0..n)
            .map(|i| {
                let below = (0..n).filter(|&j| j != i && po.le_idx(j, i)).count();
                (below, i)
            })
            .collect();
        counted.sort();
        let by_rank: Vec<usize> = counted.iter().map(|&(_, i)| i).collect();
        let mut rank_of = vec![0; n];
        for (rank, &element) in by_rank.iter().enumerate() {
            rank_of[element] = rank;
        }
        Self {
            po,
            rank_of,
            by_rank,
        }
    }

    pub fn as_partial(&self) -> &PartialOrder {
        &self.po
    }

    pub fn elements(&self) -> &[String] {
        self.po.elements()
    }

    pub fn len(&self) -> usize {
        self.po.len()
    }

    pub fn is_empty(&self) -> bool {
        self.po.is_empty()
    }

    pub fn le(&self, a: &str, b: &str) -> Result<bool, OrderError> {
        self.po.le(a, b)
    }

    /// Position of `id` in the sorted order, starting at 0.
    pub fn rank(&self, id: &str) -> Result<usize, OrderError> {
        Ok(self.rank_of[self.po.require(id)?])
    }

    /// Element ids from least to greatest.
    pub fn ids_by_rank(&self) -> Vec<&str> {
        self.by_rank.iter().map(|&i| self.po.id(i)).collect()
    }

    pub(crate) fn rank_of_idx(&self, i: usize) -> usize {
        self.rank_of[i]
    }

    pub(crate) fn idx_by_rank(&self, rank: usize) -> usize {
        self.by_rank[rank]
    }
}

/// A validated (total) cyclic order, stored as its successor permutation.
///
/// The derived ternary relation `[a, b, c]` holds iff walking successor
/// steps from `a` reaches `b` strictly before `c`.
#[derive(Debug, Clone)]
pub struct CyclicOrder {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    succ: Vec<usize>,
}

impl CyclicOrder {
    /// Reconstructs the unique circular arrangement consistent with all
    /// `triples`, if one exists.
    ///
    /// The search fixes the first declared element and extends the
    /// arrangement one element at a time (in declaration order), pruning
    /// against every fully placed triple, so the returned arrangement is
    /// deterministic for a given input.
    pub fn validate<S: Into<String>>(
        elements: impl IntoIterator<Item = S>,
        triples: impl IntoIterator<Item = (S, S, S)>,
    ) -> Result<Self, OrderError> {
        let (ids, index) = intern_elements(elements)?;
        let n = ids.len();
        if n < 3 {
            return Err(OrderError::TooFewElements { needed: 3, got: n });
        }
        let mut resolved: Vec<[usize; 3]> = Vec::new();
        for (a, b, c) in triples {
            let a = a.into();
            let b = b.into();
            let c = c.into();
            let i = *index
                .get(&a)
                .ok_or_else(|| OrderError::UnknownElement(a.clone()))?;
            let j = *index
                .get(&b)
                .ok_or_else(|| OrderError::UnknownElement(b.clone()))?;
            let k = *index
                .get(&c)
                .ok_or_else(|| OrderError::UnknownElement(c.clone()))?;
            if i == j || j == k || i == k {
                return Err(OrderError::DegenerateTriple(a, b, c));
            }
            resolved.push([i, j, k]);
        }

        // triples_of[e] lists the triples mentioning element e.
        let mut triples_of: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (t, m) in resolved.iter().enumerate() {
            for &e in m {
                triples_of[e].push(t);
            }
        }

        let mut arrangement = Vec::with_capacity(n);
        let mut position = vec![usize::MAX; n];
        arrangement.push(0);
        position[0] = 0;
        if !extend_arrangement(n, &resolved, &triples_of, &mut arrangement, &mut position) {
            return Err(OrderError::InconsistentTriples);
        }
        let mut succ = vec![0; n];
        for (p, &e) in arrangement.iter().enumerate() {
            succ[e] = arrangement[(p + 1) % n];
        }
        Ok(Self { ids, index, succ })
    }

    /// Builds the cyclic order whose cycle visits `elements` in the given
    /// sequence (closing back to the first).
    pub fn from_cycle<S: Into<String>>(
        elements: impl IntoIterator<Item = S>,
    ) -> Result<Self, OrderError> {
        let (ids, index) = intern_elements(elements)?;
        let n = ids.len();
        if n < 3 {
            return Err(OrderError::TooFewElements { needed: 3, got: n });
        }
        let succ = (0..n).map(|i| (i + 1) % n).collect();
        Ok(Self { ids, index, succ })
    }

    /// Builds a cyclic order from explicit `(element, successor)` pairs,
    /// which must describe one cycle covering every element.
    pub fn from_successor_pairs<S: Into<String>>(
        elements: impl IntoIterator<Item = S>,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, OrderError> {
        let unchecked = Self::new_unchecked(elements, pairs)?;
        let n = unchecked.ids.len();
        if n < 3 {
            return Err(OrderError::TooFewElements { needed: 3, got: n });
        }
        if !is_single_cycle(&unchecked.succ) {
            return Err(OrderError::NotASingleCycle);
        }
        Ok(unchecked)
    }

    /// Builds the successor map from pairs without checking that it is a
    /// single cycle (missing sources default to self-loops). Test hook.
    pub fn new_unchecked<S: Into<String>>(
        elements: impl IntoIterator<Item = S>,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, OrderError> {
        let (ids, index) = intern_elements(elements)?;
        let n = ids.len();
        let mut succ: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for (a, b) in pairs {
            let a = a.into();
            let b = b.into();
            let i = *index
                .get(&a)
                .ok_or_else(|| OrderError::UnknownElement(a.clone()))?;
            let j = *index
                .get(&b)
                .ok_or_else(|| OrderError::UnknownElement(b.clone()))?;
            if seen[i] {
                return Err(OrderError::NotASingleCycle);
            }
            seen[i] = true;
            succ[i] = j;
        }
        Ok(Self { ids, index, succ })
    }

    /// The cyclic order induced by a total order: rank order with a
    /// wraparound step from the maximum back to the minimum. Its derived
    /// triples are exactly those satisfying
    /// `(a <= b <= c) or (b <= c <= a) or (c <= a <= b)` for distinct
    /// `a`, `b`, `c`.
    pub fn from_total(total: &TotalOrder) -> Result<Self, OrderError> {
        let n = total.len();
        if n < 3 {
            return Err(OrderError::TooFewElements { needed: 3, got: n });
        }
        let mut succ = vec![0; n];
        for rank in 0..n {
            succ[total.idx_by_rank(rank)] = total.idx_by_rank((rank + 1) % n);
        }
        Ok(Self {
            ids: total.po.ids.clone(),
            index: total.po.index.clone(),
            succ,
        })
    }

    pub fn elements(&self) -> &[String] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn id(&self, index: usize) -> &str {
        &self.ids[index]
    }

    pub(crate) fn require(&self, id: &str) -> Result<usize, OrderError> {
        self.index_of(id)
            .ok_or_else(|| OrderError::UnknownElement(id.to_owned()))
    }

    pub fn successor(&self, id: &str) -> Result<&str, OrderError> {
        Ok(&self.ids[self.succ[self.require(id)?]])
    }

    /// Successor indices aligned with `elements()`.
    pub fn successor_indices(&self) -> &[usize] {
        &self.succ
    }

    /// Element ids in cycle order, starting from the first declared one.
    pub fn cycle_order(&self) -> Vec<&str> {
        let n = self.ids.len();
        let mut out = Vec::with_capacity(n);
        let mut cur = 0;
        for _ in 0..n {
            out.push(self.ids[cur].as_str());
            cur = self.succ[cur];
        }
        out
    }

    /// Whether the triple `[a, b, c]` holds: `a`, `b`, `c` distinct and
    /// `b` strictly between `a` and `c` along the successor direction.
    pub fn triple_holds(&self, a: &str, b: &str, c: &str) -> Result<bool, OrderError> {
        let i = self.require(a)?;
        let j = self.require(b)?;
        let k = self.require(c)?;
        Ok(self.triple_holds_idx(i, j, k))
    }

    pub(crate) fn triple_holds_idx(&self, i: usize, j: usize, k: usize) -> bool {
        if i == j || j == k || i == k {
            return false;
        }
        let mut cur = self.succ[i];
        while cur != k {
            if cur == j {
                return true;
            }
            cur = self.succ[cur];
        }
        false
    }

    pub(crate) fn successor_idx(&self, i: usize) -> usize {
        self.succ[i]
    }
}

fn is_single_cycle(succ: &[usize]) -> bool {
    let n = succ.len();
    let mut cur = 0;
    for step in 1..=n {
        cur = succ[cur];
        if cur == 0 {
            return step == n;
        }
    }
    false
}

/// Depth-first extension of a partial circular arrangement. `arrangement`
/// holds the elements placed so far (cut at element 0); relative cyclic
/// order of placed elements is final, so any fully placed triple can be
/// checked immediately.
fn extend_arrangement(
    n: usize,
    triples: &[[usize; 3]],
    triples_of: &[Vec<usize>],
    arrangement: &mut Vec<usize>,
    position: &mut Vec<usize>,
) -> bool {
    if arrangement.len() == n {
        return true;
    }
    for candidate in 1..n {
        if position[candidate] != usize::MAX {
            continue;
        }
        position[candidate] = arrangement.len();
        arrangement.push(candidate);
        let consistent = triples_of[candidate].iter().all(|&t| {
            let [a, b, c] = triples[t];
            let (pa, pb, pc) = (position[a], position[b], position[c]);
            if pa == usize::MAX || pb == usize::MAX || pc == usize::MAX {
                return true;
            }
            (pa < pb && pb < pc) || (pb < pc && pc < pa) || (pc < pa && pa < pb)
        });
        if consistent && extend_arrangement(n, triples, triples_of, arrangement, position) {
            return true;
        }
        arrangement.pop();
        position[candidate] = usize::MAX;
    }
    false
}

/// A finite set carrying one validated order relation.
#[derive(Debug, Clone)]
pub enum OrderSpace {
    Partial(PartialOrder),
    Total(TotalOrder),
    Cyclic(CyclicOrder),
}

impl OrderSpace {
    pub fn kind(&self) -> OrderKind {
        match self {
            OrderSpace::Partial(_) => OrderKind::Partial,
            OrderSpace::Total(_) => OrderKind::Total,
            OrderSpace::Cyclic(_) => OrderKind::Cyclic,
        }
    }

    pub fn elements(&self) -> &[String] {
        match self {
            OrderSpace::Partial(po) => po.elements(),
            OrderSpace::Total(to) => to.elements(),
            OrderSpace::Cyclic(cy) => cy.elements(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements().len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements().is_empty()
    }
}

/// Errors raised while reading an order description document.
#[derive(Debug, Error)]
pub enum OrderJsonError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Document(String),
    #[error(transparent)]
    Order(#[from] OrderError),
}

#[derive(Deserialize)]
struct OrderDocument {
    kind: OrderKind,
    elements: Vec<String>,
    #[serde(default)]
    pairs: Option<Vec<(String, String)>>,
    #[serde(default)]
    triples: Option<Vec<(String, String, String)>>,
}

/// Parses the order description JSON consumed by the CLI:
/// `{"kind": "partial"|"total"|"cyclic", "elements": [...], "pairs": [[a,b],...]}`
/// or, for cyclic orders given as ternary constraints,
/// `{"kind": "cyclic", "elements": [...], "triples": [[a,b,c],...]}`.
/// Cyclic `pairs` are interpreted as explicit successor pairs.
pub fn order_from_json(text: &str) -> Result<OrderSpace, OrderJsonError> {
    let doc: OrderDocument = serde_json::from_str(text)?;
    match doc.kind {
        OrderKind::Partial | OrderKind::Total => {
            if doc.triples.is_some() {
                return Err(OrderJsonError::Document(format!(
                    "`triples` is only valid for kind \"cyclic\", not \"{}\"",
                    doc.kind
                )));
            }
            let pairs = doc.pairs.ok_or_else(|| {
                OrderJsonError::Document(format!("kind \"{}\" requires `pairs`", doc.kind))
            })?;
            match doc.kind {
                OrderKind::Partial => Ok(OrderSpace::Partial(PartialOrder::validate(
                    doc.elements,
                    pairs,
                )?)),
                _ => Ok(OrderSpace::Total(TotalOrder::validate(
                    doc.elements,
                    pairs,
                )?)),
            }
        }
        OrderKind::Cyclic => match (doc.pairs, doc.triples) {
            (Some(_), Some(_)) => Err(OrderJsonError::Document(
                "give either `pairs` or `triples` for a cyclic order, not both".into(),
            )),
            (Some(pairs), None) => Ok(OrderSpace::Cyclic(CyclicOrder::from_successor_pairs(
                doc.elements,
                pairs,
            )?)),
            (None, Some(triples)) => Ok(OrderSpace::Cyclic(CyclicOrder::validate(
                doc.elements,
                triples,
            )?)),
            (None, None) => Err(OrderJsonError::Document(
                "a cyclic order requires `pairs` (successors) or `triples`".into(),
            )),
        },
    }
}
