//! Proximities induced by order relations, and mechanical verification of
//! the properties those proximities satisfy.
//!
//! For partial and total orders, `a` is near `b` when `a <= b` and no
//! third element sits strictly between them; when `a <= b` fails the
//! closeness of the pair is undefined rather than far. For cyclic orders,
//! `a` is near `b` exactly when `b` is the successor of `a`.

use serde::Serialize;

use crate::order::{CyclicOrder, OrderError, OrderKind, OrderSpace, PartialOrder, TotalOrder};

/// Three-valued closeness verdict. Near and Far carry the functional
/// values 0 and 1; incomparable pairs carry no value at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Proximity {
    Near,
    Far,
    Undefined,
}

impl Proximity {
    /// The 0/1 functional value, when defined.
    pub fn smirnov(self) -> Option<u8> {
        match self {
            Proximity::Near => Some(0),
            Proximity::Far => Some(1),
            Proximity::Undefined => None,
        }
    }

    pub fn is_near(self) -> bool {
        self == Proximity::Near
    }
}

impl std::fmt::Display for Proximity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Proximity::Near => write!(f, "near"),
            Proximity::Far => write!(f, "far"),
            Proximity::Undefined => write!(f, "undefined"),
        }
    }
}

fn near_le_idx(po: &PartialOrder, i: usize, j: usize) -> Proximity {
    if !po.le_idx(i, j) {
        return Proximity::Undefined;
    }
    let between = (0..po.len()).any(|x| x != i && x != j && po.le_idx(i, x) && po.le_idx(x, j));
    if between {
        Proximity::Far
    } else {
        Proximity::Near
    }
}

/// Proximity induced by a partial order: near iff `a <= b` with nothing
/// strictly between, far iff `a <= b` with a witness between, undefined
/// when `a <= b` does not hold.
pub fn near_partial(po: &PartialOrder, a: &str, b: &str) -> Result<Proximity, OrderError> {
    Ok(near_le_idx(po, po.require(a)?, po.require(b)?))
}

/// Proximity induced by a total order; undefined only when `b < a`
/// strictly.
pub fn near_total(to: &TotalOrder, a: &str, b: &str) -> Result<Proximity, OrderError> {
    near_partial(to.as_partial(), a, b)
}

/// Proximity induced by a cyclic order: near iff `b` is the successor of
/// `a`, far otherwise (including `a = b`).
pub fn near_cyclic(cy: &CyclicOrder, a: &str, b: &str) -> Result<Proximity, OrderError> {
    let i = cy.require(a)?;
    let j = cy.require(b)?;
    Ok(near_cyclic_idx(cy, i, j))
}

fn near_cyclic_idx(cy: &CyclicOrder, i: usize, j: usize) -> Proximity {
    if i != j && cy.successor_idx(i) == j {
        Proximity::Near
    } else {
        Proximity::Far
    }
}

/// Kind-dispatching proximity query.
pub fn near(space: &OrderSpace, a: &str, b: &str) -> Result<Proximity, OrderError> {
    match space {
        OrderSpace::Partial(po) => near_partial(po, a, b),
        OrderSpace::Total(to) => near_total(to, a, b),
        OrderSpace::Cyclic(cy) => near_cyclic(cy, a, b),
    }
}

/// The cover chain from `a` up to `b`: consecutive elements by rank, so
/// every adjacent pair is near. Its length is `rank(b) - rank(a)`.
pub fn chain_between(to: &TotalOrder, a: &str, b: &str) -> Result<Vec<String>, OrderError> {
    let i = to.as_partial().require(a)?;
    let j = to.as_partial().require(b)?;
    if !to.as_partial().le_idx(i, j) {
        return Err(OrderError::NotComparable(a.to_owned(), b.to_owned()));
    }
    let (ra, rb) = (to.rank_of_idx(i), to.rank_of_idx(j));
    Ok((ra..=rb)
        .map(|r| to.as_partial().id(to.idx_by_rank(r)).to_owned())
        .collect())
}

/// Outcome of checking one property of an induced proximity.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyCheck {
    pub property: String,
    pub holds: bool,
    /// The offending element tuple, present exactly when `holds` is false.
    pub counterexample: Option<Vec<String>>,
}

impl PropertyCheck {
    fn passing(property: &str) -> Self {
        Self {
            property: property.to_owned(),
            holds: true,
            counterexample: None,
        }
    }

    fn failing(property: &str, witness: Vec<String>) -> Self {
        Self {
            property: property.to_owned(),
            holds: false,
            counterexample: Some(witness),
        }
    }
}

/// Report of all property checks for one order's induced proximity.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub kind: OrderKind,
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

struct NearTable {
    n: usize,
    ids: Vec<String>,
    verdicts: Vec<Proximity>,
    reach: Vec<bool>,
}

impl NearTable {
    fn build(n: usize, ids: &[String], near: impl Fn(usize, usize) -> Proximity) -> Self {
        let mut verdicts = vec![Proximity::Undefined; n * n];
        let mut reach = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                verdicts[i * n + j] = near(i, j);
                if i != j && verdicts[i * n + j] == Proximity::Near {
                    reach[i * n + j] = true;
                }
            }
        }
        // Transitive closure over the near edges (paths of length >= 1).
        for k in 0..n {
            for i in 0..n {
                if reach[i * n + k] {
                    for j in 0..n {
                        if reach[k * n + j] {
                            reach[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self {
            n,
            ids: ids.to_vec(),
            verdicts,
            reach,
        }
    }

    fn near(&self, i: usize, j: usize) -> Proximity {
        self.verdicts[i * self.n + j]
    }

    fn reaches(&self, i: usize, j: usize) -> bool {
        self.reach[i * self.n + j]
    }

    fn witness(&self, indices: &[usize]) -> Vec<String> {
        indices.iter().map(|&i| self.ids[i].clone()).collect()
    }

    fn check_reflexivity(&self) -> PropertyCheck {
        for i in 0..self.n {
            if self.near(i, i) != Proximity::Near {
                return PropertyCheck::failing("reflexivity", self.witness(&[i]));
            }
        }
        PropertyCheck::passing("reflexivity")
    }

    fn check_irreflexivity(&self) -> PropertyCheck {
        for i in 0..self.n {
            if self.near(i, i) != Proximity::Far {
                return PropertyCheck::failing("irreflexivity", self.witness(&[i]));
            }
        }
        PropertyCheck::passing("irreflexivity")
    }

    fn check_antisymmetry(&self) -> PropertyCheck {
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j
                    && self.near(i, j) == Proximity::Near
                    && self.near(j, i) == Proximity::Near
                {
                    return PropertyCheck::failing("antisymmetry", self.witness(&[i, j]));
                }
            }
        }
        PropertyCheck::passing("antisymmetry")
    }

    fn check_antitransitivity(&self) -> PropertyCheck {
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    if self.near(i, j) == Proximity::Near
                        && self.near(j, k) == Proximity::Near
                        && self.near(i, k) != Proximity::Far
                    {
                        return PropertyCheck::failing(
                            "antitransitivity",
                            self.witness(&[i, j, k]),
                        );
                    }
                }
            }
        }
        PropertyCheck::passing("antitransitivity")
    }

    /// Every related pair must be joined by a chain of near steps.
    /// `related` restricts the pairs that are required to be chained.
    fn check_totality_chain(&self, related: impl Fn(usize, usize) -> bool) -> PropertyCheck {
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && related(i, j) && !self.reaches(i, j) {
                    return PropertyCheck::failing("totality_chain", self.witness(&[i, j]));
                }
            }
        }
        PropertyCheck::passing("totality_chain")
    }

    /// A near-chain from `a` through `b` to `c` must rotate: there must
    /// also be a chain from `b` through `c` back to `a`.
    fn check_cyclicity(&self) -> PropertyCheck {
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    if self.reaches(i, j)
                        && self.reaches(j, k)
                        && !(self.reaches(j, k) && self.reaches(k, i))
                    {
                        return PropertyCheck::failing("cyclicity", self.witness(&[i, j, k]));
                    }
                }
            }
        }
        PropertyCheck::passing("cyclicity")
    }
}

/// Evaluates, by exhaustive quantification over the elements, the
/// properties the induced proximity is expected to satisfy for the
/// order's kind. Failures are reported with counterexamples rather than
/// raised as errors.
pub fn check_properties(space: &OrderSpace) -> PropertyReport {
    match space {
        OrderSpace::Partial(po) => {
            let table = NearTable::build(po.len(), po.elements(), |i, j| near_le_idx(po, i, j));
            PropertyReport {
                kind: OrderKind::Partial,
                checks: vec![
                    table.check_reflexivity(),
                    table.check_antisymmetry(),
                    table.check_antitransitivity(),
                ],
            }
        }
        OrderSpace::Total(to) => {
            let po = to.as_partial();
            let table = NearTable::build(po.len(), po.elements(), |i, j| near_le_idx(po, i, j));
            PropertyReport {
                kind: OrderKind::Total,
                checks: vec![
                    table.check_reflexivity(),
                    table.check_antisymmetry(),
                    table.check_antitransitivity(),
                    table.check_totality_chain(|i, j| po.le_idx(i, j)),
                ],
            }
        }
        OrderSpace::Cyclic(cy) => {
            let table =
                NearTable::build(cy.len(), cy.elements(), |i, j| near_cyclic_idx(cy, i, j));
            PropertyReport {
                kind: OrderKind::Cyclic,
                checks: vec![
                    table.check_irreflexivity(),
                    table.check_antisymmetry(),
                    table.check_antitransitivity(),
                    table.check_totality_chain(|_, _| true),
                    table.check_cyclicity(),
                ],
            }
        }
    }
}
