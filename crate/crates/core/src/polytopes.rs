//! Inequality systems whose lattice points are the PBW multi-exponents.
//!
//! Every row reads `Σ c_β s_β <= rhs(λ)` with positive integer coefficients
//! `c_β` and a right-hand side that is a non-negative linear form in the
//! weight coefficients `(m_1, ..., m_n)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dyck_paths::{self, PathKind};
use crate::error::{Error, Result};
use crate::root_system::{Kind, RootLabel, RootSystem, Weight};

/// Linear form `Σ a_k m_k` in the weight coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RhsForm(pub Vec<u64>);

impl RhsForm {
    pub fn unit(rank: usize, i: usize, scale: u64) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = scale;
        RhsForm(v)
    }

    pub fn eval(&self, weight: &Weight) -> Result<u64> {
        self.0.iter().zip(weight.coeffs()).try_fold(0u64, |acc, (&a, &m)| {
            let m = u64::try_from(m).map_err(|_| Error::NotDominant(weight.coeffs().to_vec()))?;
            a.checked_mul(m)
                .and_then(|t| acc.checked_add(t))
                .ok_or(Error::Overflow("right-hand side evaluation"))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    /// Sparse `(ambient index, coefficient)` pairs, sorted by index.
    pub coeffs: Vec<(usize, u64)>,
    pub rhs_form: RhsForm,
    /// Which Dyck path or numbered inequality produced the row.
    pub tag: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalitySystem {
    name: String,
    rank: usize,
    ambient: Vec<RootLabel>,
    rows: Vec<Row>,
}

impl InequalitySystem {
    pub fn new(name: impl Into<String>, rank: usize, ambient: Vec<RootLabel>, mut rows: Vec<Row>) -> Result<Self> {
        let mut covered = vec![false; ambient.len()];
        for row in &mut rows {
            let invalid = |reason: &str| Error::InvalidRow { tag: row.tag.clone(), reason: reason.to_string() };
            if row.rhs_form.0.len() != rank {
                return Err(invalid("right-hand side has the wrong rank"));
            }
            row.coeffs.sort_unstable();
            if row.coeffs.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(invalid("coordinate listed twice"));
            }
            for &(k, c) in &row.coeffs {
                if k >= ambient.len() {
                    return Err(invalid("coordinate outside the ambient set"));
                }
                if c == 0 {
                    return Err(invalid("zero coefficient"));
                }
                covered[k] = true;
            }
        }
        if let Some(k) = covered.iter().position(|c| !c) {
            return Err(Error::Unbounded(ambient[k].to_string()));
        }
        Ok(InequalitySystem { name: name.into(), rank, ambient, rows })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient(&self) -> &[RootLabel] {
        &self.ambient
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Embeds the system into a larger ambient set by pinning every new
    /// coordinate to zero.
    pub fn zero_extend(&self, full: &[RootLabel]) -> Result<InequalitySystem> {
        let position = |l: &RootLabel| full.iter().position(|f| f == l);
        let map: Vec<usize> = self
            .ambient
            .iter()
            .map(|l| position(l).ok_or(Error::AmbientMismatch))
            .collect::<Result<_>>()?;
        let mut rows: Vec<Row> = self
            .rows
            .iter()
            .map(|r| Row {
                coeffs: r.coeffs.iter().map(|&(k, c)| (map[k], c)).collect(),
                rhs_form: r.rhs_form.clone(),
                tag: r.tag.clone(),
            })
            .collect();
        for (k, l) in full.iter().enumerate() {
            if !self.ambient.contains(l) {
                rows.push(Row { coeffs: vec![(k, 1)], rhs_form: RhsForm(vec![0; self.rank]), tag: format!("zero:{l}") });
            }
        }
        InequalitySystem::new(format!("{}+zero", self.name), self.rank, full.to_vec(), rows)
    }

    pub fn instantiate(&self, weight: &Weight) -> Result<ConcreteSystem> {
        if weight.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: weight.rank() });
        }
        if !weight.is_dominant() {
            return Err(Error::NotDominant(weight.coeffs().to_vec()));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                Ok(ConcreteRow { coeffs: r.coeffs.clone(), rhs: r.rhs_form.eval(weight)?, tag: r.tag.clone() })
            })
            .collect::<Result<_>>()?;
        Ok(ConcreteSystem { name: self.name.clone(), lambda: weight.clone(), ambient: self.ambient.clone(), rows })
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            name: self.name.clone(),
            ambient: self.ambient.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| RowJson {
                    coeffs: r.coeffs.iter().map(|&(k, c)| (self.ambient[k], c)).collect(),
                    rhs_form: r.rhs_form.clone(),
                    tag: r.tag.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(doc: &SystemJson, rank: usize) -> Result<Self> {
        let rows = doc
            .rows
            .iter()
            .map(|r| {
                let coeffs = r
                    .coeffs
                    .iter()
                    .map(|(l, &c)| Ok((doc.ambient.iter().position(|a| a == l).ok_or(Error::AmbientMismatch)?, c)))
                    .collect::<Result<_>>()?;
                Ok(Row { coeffs, rhs_form: r.rhs_form.clone(), tag: r.tag.clone() })
            })
            .collect::<Result<_>>()?;
        InequalitySystem::new(doc.name.clone(), rank, doc.ambient.clone(), rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub name: String,
    pub ambient: Vec<RootLabel>,
    pub rows: Vec<RowJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowJson {
    pub coeffs: BTreeMap<RootLabel, u64>,
    pub rhs_form: RhsForm,
    pub tag: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteRow {
    pub coeffs: Vec<(usize, u64)>,
    pub rhs: u64,
    pub tag: String,
}

/// An inequality system evaluated at a fixed weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteSystem {
    pub name: String,
    pub lambda: Weight,
    pub ambient: Vec<RootLabel>,
    pub rows: Vec<ConcreteRow>,
}

impl ConcreteSystem {
    pub fn dim(&self) -> usize {
        self.ambient.len()
    }

    /// Whether `point` satisfies every row.
    pub fn contains(&self, point: &[u32]) -> bool {
        point.len() == self.ambient.len()
            && self.rows.iter().all(|r| {
                let lhs: u128 = r.coeffs.iter().map(|&(k, c)| u128::from(c) * u128::from(point[k])).sum();
                lhs <= u128::from(r.rhs)
            })
    }
}

/// `P(D, mω_i)` over `R_i^+`: one row per Dyck path, bounded by `m` for
/// type-1 paths and `ω_i(θ^∨) m` for type-2 paths.
pub fn rectangular_system(rs: &RootSystem, i: usize) -> Result<InequalitySystem> {
    let radical = rs.radical_roots(i)?;
    let ambient: Vec<RootLabel> = radical.iter().map(|r| r.label).collect();
    let n = rs.rank();
    let type2_bound = u64::try_from(rs.fundamental_on_highest_coroot(i)).expect("non-negative pairing");
    let rows = dyck_paths::all_paths(rs, i)?
        .into_iter()
        .map(|path| {
            let scale = if path.kind == PathKind::Type2 { type2_bound } else { 1 };
            let coeffs = path
                .roots
                .iter()
                .map(|l| (ambient.iter().position(|a| a == l).expect("path stays in R_i^+"), 1))
                .collect();
            let tag = format!(
                "{}:{}",
                match path.kind {
                    PathKind::Type1StartI => "type1a",
                    PathKind::Type1StartI1 => "type1b",
                    PathKind::Type2 => "type2",
                },
                path.roots.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
            );
            Row { coeffs, rhs_form: RhsForm::unit(n, i, scale), tag }
        })
        .collect();
    InequalitySystem::new(format!("rect(n={n},i={i})"), n, ambient, rows)
}

/// The B_3 roots `β_1, ..., β_9` used to number the general B_3 inequalities.
pub const B3_BETAS: [(usize, usize); 9] = [(1, 5), (1, 4), (2, 4), (1, 3), (2, 3), (1, 2), (2, 2), (3, 3), (1, 1)];

// (number, [(β index, coefficient)], (a, b, c)) with right-hand side a m_1 + b m_2 + c m_3.
// Spot checks against the printed list:
//   (8)  s_7 <= (0,1,0)
//   (17) s_1 + s_2 + 2(s_3 + s_4 + s_5) + s_6 + s_7 + s_8 + 2 s_9 <= (2,3,2)
//   (19) s_3 + s_4 + 2 s_5 + s_6 + s_7 + 2 s_8 + s_9 <= (1,2,2)
type B3Row = (u32, &'static [(usize, u64)], [u64; 3]);
const B3_ROWS: [B3Row; 19] = [
    (1, &[(2, 1), (3, 1), (4, 1), (8, 1), (9, 1)], [1, 1, 1]),
    (2, &[(3, 1), (4, 1), (5, 1), (8, 1), (9, 1)], [1, 1, 1]),
    (3, &[(4, 1), (5, 1), (6, 1), (8, 1), (9, 1)], [1, 1, 1]),
    (4, &[(5, 1), (6, 1), (7, 1), (8, 1), (9, 1)], [1, 1, 1]),
    (5, &[(3, 1), (5, 1), (8, 1)], [0, 1, 1]),
    (6, &[(5, 1), (7, 1), (8, 1)], [0, 1, 1]),
    (7, &[(6, 1), (7, 1), (9, 1)], [1, 1, 0]),
    (8, &[(7, 1)], [0, 1, 0]),
    (9, &[(8, 1)], [0, 0, 1]),
    (10, &[(9, 1)], [1, 0, 0]),
    (11, &[(3, 1), (4, 1), (5, 1), (6, 1), (7, 1), (8, 1), (9, 1)], [1, 2, 1]),
    (12, &[(1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (7, 1), (9, 1)], [1, 2, 1]),
    (13, &[(1, 1), (3, 1), (4, 1), (5, 1), (6, 1), (7, 1), (9, 1)], [1, 2, 1]),
    (14, &[(2, 1), (3, 1), (4, 1), (5, 1), (7, 1), (8, 1), (9, 1)], [1, 2, 1]),
    (15, &[(1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (7, 1), (9, 2)], [2, 2, 1]),
    (16, &[(2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (7, 1), (8, 1), (9, 2)], [2, 2, 1]),
    (17, &[(1, 1), (2, 1), (3, 2), (4, 2), (5, 2), (6, 1), (7, 1), (8, 1), (9, 2)], [2, 3, 2]),
    (18, &[(2, 1), (3, 2), (4, 2), (5, 2), (6, 1), (7, 1), (8, 2), (9, 2)], [2, 3, 2]),
    (19, &[(3, 1), (4, 1), (5, 2), (6, 1), (7, 1), (8, 2), (9, 1)], [1, 2, 2]),
];

type BetaRow<'a> = (String, &'a [(usize, u64)], Vec<u64>);

fn beta_rows(ambient: &[RootLabel], rows: &[BetaRow]) -> Vec<Row> {
    rows.iter()
        .map(|(tag, coeffs, rhs)| Row {
            coeffs: coeffs
                .iter()
                .map(|&(beta, c)| {
                    let (p, q) = B3_BETAS[beta - 1];
                    (ambient.iter().position(|l| *l == RootLabel::b(p, q)).expect("β in ambient"), c)
                })
                .collect(),
            rhs_form: RhsForm(rhs.clone()),
            tag: tag.clone(),
        })
        .collect()
}

/// The general B_3 polytope `P(λ)` given by 19 numbered inequalities over
/// all nine positive roots (stored in canonical order).
pub fn b3_system() -> InequalitySystem {
    let rs = RootSystem::b(3).expect("rank 3");
    let ambient = rs.labels();
    let spec: Vec<_> = B3_ROWS.iter().map(|(k, c, r)| (format!("b3:({k})"), *c, r.to_vec())).collect();
    InequalitySystem::new("b3", 3, ambient.clone(), beta_rows(&ambient, &spec)).expect("static B3 rows are well formed")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Omega1Variant {
    /// The simplified form used for the general B_3 polytope.
    Simplified,
    /// The two type-1 Dyck path rows for `i = 1`.
    Dyck,
}

/// The two-row description of `P(mω_1)` for B_3 over `R_1^+`.
pub fn b3_omega1_variant(variant: Omega1Variant) -> InequalitySystem {
    let rs = RootSystem::b(3).expect("rank 3");
    let ambient: Vec<RootLabel> = rs.radical_roots(1).expect("column 1").iter().map(|r| r.label).collect();
    let (name, rows): (&str, [&'static [(usize, u64)]; 2]) = match variant {
        Omega1Variant::Simplified => ("b3-omega1-simplified", [&[(1, 1), (4, 1), (6, 1), (9, 1)], &[(1, 1), (2, 1), (4, 1), (9, 1)]]),
        Omega1Variant::Dyck => ("b3-omega1-dyck", [&[(1, 1), (2, 1), (4, 1), (6, 1)], &[(2, 1), (4, 1), (6, 1), (9, 1)]]),
    };
    let spec: Vec<_> = rows.iter().enumerate().map(|(k, c)| (format!("{name}:({})", k + 1), *c, vec![1, 0, 0])).collect();
    InequalitySystem::new(name, 3, ambient.clone(), beta_rows(&ambient, &spec)).expect("static rows are well formed")
}

// (number, [(β index, coefficient)], (a, b)) for G_2, e.g. (1) s_6 <= (1,0),
// (6) s_1 + s_2 + s_3 + s_4 + s_5 <= (1,2).
type G2Row = (u32, &'static [usize], [u64; 2]);
const G2_ROWS: [G2Row; 7] = [
    (1, &[6], [1, 0]),
    (2, &[5], [0, 1]),
    (3, &[2, 3, 6], [1, 1]),
    (4, &[3, 4, 6], [1, 1]),
    (5, &[4, 5, 6], [1, 1]),
    (6, &[1, 2, 3, 4, 5], [1, 2]),
    (7, &[2, 3, 4, 5, 6], [1, 2]),
];

/// The G_2 polytope with seven numbered inequalities over `b1..b6`.
pub fn g2_system() -> InequalitySystem {
    let ambient = RootSystem::g2().labels();
    let rows = G2_ROWS
        .iter()
        .map(|(k, betas, rhs)| Row {
            coeffs: betas.iter().map(|&b| (b - 1, 1)).collect(),
            rhs_form: RhsForm(rhs.to_vec()),
            tag: format!("g2:({k})"),
        })
        .collect();
    InequalitySystem::new("g2", 2, ambient, rows).expect("static G2 rows are well formed")
}

/// Polytope families with a uniform interface for sweeps and checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    B3,
    G2,
    Rectangular { n: usize, i: usize },
}

impl Family {
    pub fn root_system(&self) -> Result<RootSystem> {
        match *self {
            Family::B3 => RootSystem::b(3),
            Family::G2 => Ok(RootSystem::g2()),
            Family::Rectangular { n, .. } => RootSystem::b(n),
        }
    }

    pub fn system(&self) -> Result<InequalitySystem> {
        match *self {
            Family::B3 => Ok(b3_system()),
            Family::G2 => Ok(g2_system()),
            Family::Rectangular { n, i } => rectangular_system(&RootSystem::b(n)?, i),
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            Family::B3 => 3,
            Family::G2 => 2,
            Family::Rectangular { n, .. } => n,
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Family::G2 => Kind::G2,
            _ => Kind::B,
        }
    }

    /// `mω_i` for rectangular families.
    pub fn rectangular_weight(&self, m: i64) -> Option<Weight> {
        match *self {
            Family::Rectangular { n, i } => Some(Weight::fundamental_multiple(n, i, m)),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::B3 => write!(f, "b3"),
            Family::G2 => write!(f, "g2"),
            Family::Rectangular { n, i } => write!(f, "rect(n={n},i={i})"),
        }
    }
}

/// Minkowski step `ε_i`: 1 for `i <= 2`, 2 otherwise.
pub fn minkowski_step(i: usize) -> u32 {
    if i <= 2 {
        1
    } else {
        2
    }
}
