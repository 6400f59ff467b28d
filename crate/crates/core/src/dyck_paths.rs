//! Type-1 and type-2 (double) Dyck paths in the grid of `R_i^+` for B_n.
//!
//! A path is a walk through root labels where each step goes from
//! `α_{p,q}` to either `α_{p,q+1}` or `α_{p+1,q}`. Type-1 paths run from
//! `α_{1,i}` to `α_{i,2n-i-1}` or from `α_{1,i+1}` to `α_{i,2n-i}`. A type-2
//! path is a disjoint pair of walks starting at `α_{1,i}` and `α_{2,i}` and
//! ending at `α_{j,2n-j}` and `α_{j+1,2n-j-1}` for some `1 <= j < i`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_system::{b_label_valid, Kind, RootLabel, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    /// Type 1, starting at `α_{1,i}`.
    Type1StartI,
    /// Type 1, starting at `α_{1,i+1}`.
    Type1StartI1,
    Type2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyckPath {
    pub kind: PathKind,
    pub roots: Vec<RootLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strands: Option<[Vec<RootLabel>; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub junction: Option<usize>,
}

impl DyckPath {
    pub fn type1(kind: PathKind, roots: Vec<RootLabel>) -> Self {
        DyckPath { kind, roots, strands: None, junction: None }
    }

    pub fn type2(junction: usize, first: Vec<RootLabel>, second: Vec<RootLabel>) -> Self {
        let roots = first.iter().chain(&second).copied().collect();
        DyckPath {
            kind: PathKind::Type2,
            roots,
            strands: Some([first, second]),
            junction: Some(junction),
        }
    }

    pub fn root_set(&self) -> BTreeSet<RootLabel> {
        self.roots.iter().copied().collect()
    }
}

type Cell = (usize, usize);

fn require_column(rs: &RootSystem, i: usize) -> Result<usize> {
    if rs.kind() != Kind::B {
        return Err(Error::NotTypeB);
    }
    let n = rs.rank();
    if i == 0 || i > n {
        return Err(Error::ColumnOutOfRange { i, rank: n });
    }
    Ok(n)
}

/// All grid walks from `from` to `to` through valid labels of B_n.
fn walks(n: usize, from: Cell, to: Cell) -> Vec<Vec<Cell>> {
    fn go(n: usize, at: Cell, to: Cell, path: &mut Vec<Cell>, out: &mut Vec<Vec<Cell>>) {
        path.push(at);
        if at == to {
            out.push(path.clone());
        } else {
            for next in [(at.0, at.1 + 1), (at.0 + 1, at.1)] {
                if next.0 <= to.0 && next.1 <= to.1 && b_label_valid(n, next.0, next.1) {
                    go(n, next, to, path, out);
                }
            }
        }
        path.pop();
    }

    let mut out = Vec::new();
    if b_label_valid(n, from.0, from.1) && b_label_valid(n, to.0, to.1) {
        go(n, from, to, &mut Vec::new(), &mut out);
    }
    out
}

fn labels(cells: &[Cell]) -> Vec<RootLabel> {
    cells.iter().map(|&(p, q)| RootLabel::B { p, q }).collect()
}

fn type1_endpoints(n: usize, i: usize) -> [(PathKind, Cell, Cell); 2] {
    [
        (PathKind::Type1StartI, (1, i), (i, 2 * n - i - 1)),
        (PathKind::Type1StartI1, (1, i + 1), (i, 2 * n - i)),
    ]
}

fn sort_paths(rs: &RootSystem, paths: &mut [DyckPath]) {
    let key = |p: &DyckPath| -> (PathKind, Vec<usize>) {
        (p.kind, p.roots.iter().map(|l| rs.index_of(l).unwrap_or(usize::MAX)).collect())
    };
    paths.sort_by_cached_key(key);
}

/// `D^{type 1}` for column `i`, empty when `i = n`.
pub fn type1_paths(rs: &RootSystem, i: usize) -> Result<Vec<DyckPath>> {
    let n = require_column(rs, i)?;
    let mut paths = Vec::new();
    for (kind, from, to) in type1_endpoints(n, i) {
        paths.extend(walks(n, from, to).iter().map(|w| DyckPath::type1(kind, labels(w))));
    }
    sort_paths(rs, &mut paths);
    Ok(paths)
}

/// `D^{type 2}` (double Dyck paths) for column `i`, empty when `i = 1`.
pub fn type2_paths(rs: &RootSystem, i: usize) -> Result<Vec<DyckPath>> {
    let n = require_column(rs, i)?;
    let mut seen = BTreeSet::new();
    let mut paths = Vec::new();
    for j in 1..i {
        let firsts = walks(n, (1, i), (j, 2 * n - j));
        let seconds = walks(n, (2, i), (j + 1, 2 * n - j - 1));
        for first in &firsts {
            let occupied: BTreeSet<Cell> = first.iter().copied().collect();
            for second in &seconds {
                if second.iter().any(|c| occupied.contains(c)) {
                    continue;
                }
                let mut set: Vec<Cell> = first.iter().chain(second).copied().collect();
                set.sort();
                if seen.insert(set) {
                    paths.push(DyckPath::type2(j, labels(first), labels(second)));
                }
            }
        }
    }
    sort_paths(rs, &mut paths);
    Ok(paths)
}

/// `D = D^{type 1} ∪ D^{type 2}`.
pub fn all_paths(rs: &RootSystem, i: usize) -> Result<Vec<DyckPath>> {
    let mut paths = type1_paths(rs, i)?;
    paths.extend(type2_paths(rs, i)?);
    Ok(paths)
}

/// First clause of the path definition that a candidate violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathViolation {
    Empty,
    NotTypeB,
    UnknownRoot(RootLabel),
    OutsideRadical(RootLabel),
    Start(RootLabel),
    End(RootLabel),
    StepRule(RootLabel, RootLabel),
    MissingStrands,
    StrandsDisagree,
    Junction,
    NotDisjoint(RootLabel),
}

impl fmt::Display for PathViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathViolation::Empty => write!(f, "empty path"),
            PathViolation::NotTypeB => write!(f, "labels are not of type B"),
            PathViolation::UnknownRoot(l) => write!(f, "{l} is not a root"),
            PathViolation::OutsideRadical(l) => write!(f, "{l} is not in R_i^+"),
            PathViolation::Start(l) => write!(f, "wrong start {l}"),
            PathViolation::End(l) => write!(f, "wrong end {l}"),
            PathViolation::StepRule(a, b) => write!(f, "step rule: {a} -> {b}"),
            PathViolation::MissingStrands => write!(f, "type 2 path without strands"),
            PathViolation::StrandsDisagree => write!(f, "roots differ from the union of the strands"),
            PathViolation::Junction => write!(f, "strand ends are not coupled"),
            PathViolation::NotDisjoint(l) => write!(f, "strands share {l}"),
        }
    }
}

fn check_walk(n: usize, i: usize, walk: &[RootLabel]) -> std::result::Result<Vec<Cell>, PathViolation> {
    if walk.is_empty() {
        return Err(PathViolation::Empty);
    }
    let mut cells = Vec::with_capacity(walk.len());
    for l in walk {
        let (p, q) = l.pq().ok_or(PathViolation::NotTypeB)?;
        if !b_label_valid(n, p, q) {
            return Err(PathViolation::UnknownRoot(*l));
        }
        if !(p <= i && i <= q) {
            return Err(PathViolation::OutsideRadical(*l));
        }
        cells.push((p, q));
    }
    for w in cells.windows(2) {
        let ((p, q), next) = (w[0], w[1]);
        if next != (p, q + 1) && next != (p + 1, q) {
            return Err(PathViolation::StepRule(RootLabel::b(p, q), RootLabel::b(next.0, next.1)));
        }
    }
    Ok(cells)
}

/// Checks a candidate against the definition of its kind.
pub fn validate_path(rs: &RootSystem, i: usize, path: &DyckPath) -> std::result::Result<(), PathViolation> {
    let n = require_column(rs, i).map_err(|_| PathViolation::NotTypeB)?;
    match path.kind {
        PathKind::Type1StartI | PathKind::Type1StartI1 => {
            let cells = check_walk(n, i, &path.roots)?;
            let (_, start, end) = type1_endpoints(n, i)
                .into_iter()
                .find(|(k, _, _)| *k == path.kind)
                .expect("type 1 kind");
            let first = cells[0];
            let last = *cells.last().unwrap();
            if first != start {
                return Err(PathViolation::Start(RootLabel::b(first.0, first.1)));
            }
            if last != end {
                return Err(PathViolation::End(RootLabel::b(last.0, last.1)));
            }
            Ok(())
        }
        PathKind::Type2 => {
            let [first, second] = path.strands.as_ref().ok_or(PathViolation::MissingStrands)?;
            let a = check_walk(n, i, first)?;
            let b = check_walk(n, i, second)?;
            if a[0] != (1, i) {
                return Err(PathViolation::Start(first[0]));
            }
            if b[0] != (2, i) {
                return Err(PathViolation::Start(second[0]));
            }
            let (ja, qa) = *a.last().unwrap();
            let end_b = *b.last().unwrap();
            if !(1 <= ja && ja < i && qa == 2 * n - ja) {
                return Err(PathViolation::End(*first.last().unwrap()));
            }
            if end_b != (ja + 1, 2 * n - ja - 1) {
                return Err(PathViolation::Junction);
            }
            if let Some(shared) = first.iter().find(|l| second.contains(l)) {
                return Err(PathViolation::NotDisjoint(*shared));
            }
            let union: BTreeSet<RootLabel> = first.iter().chain(second).copied().collect();
            if union != path.root_set() || path.roots.len() != union.len() {
                return Err(PathViolation::StrandsDisagree);
            }
            Ok(())
        }
    }
}
