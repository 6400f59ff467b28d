//! Exact lattice-point enumeration and counting.
//!
//! Points are produced by a backtracking walk over the coordinates in
//! ambient order. Each row keeps a running partial sum, so the admissible
//! range of the next coordinate is `min_r floor((rhs_r - partial_r) / c_r)`
//! and a branch is cut as soon as a row has no slack left. Because all
//! coefficients are non-negative this never discards a feasible point, and
//! values are tried in increasing order, so the output is lexicographically
//! sorted.
//!
//! For parallel runs the search tree is cut at a shallow depth into prefixes;
//! each prefix is finished independently and results are concatenated in
//! prefix order, which keeps the output identical to the sequential walk.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::polytopes::ConcreteSystem;
use crate::root_system::{RootLabel, RootSystem, Weight};

/// A non-negative integer vector aligned with an ambient root list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiExponent(pub Vec<u32>);

impl MultiExponent {
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&v| u64::from(v)).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub system: String,
    pub lambda: Weight,
}

/// Sorted, duplicate-free set of lattice points stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSet {
    ambient: Vec<RootLabel>,
    coords: Vec<u32>,
    len: usize,
    pub provenance: Provenance,
}

impl LatticeSet {
    pub fn from_points(ambient: Vec<RootLabel>, points: Vec<Vec<u32>>, provenance: Provenance) -> Result<Self> {
        let dim = ambient.len();
        let mut points = points;
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::AmbientMismatch);
        }
        points.sort_unstable();
        points.dedup();
        let len = points.len();
        Ok(LatticeSet { ambient, coords: points.concat(), len, provenance })
    }

    /// Builds from row-major coordinates that are already sorted and unique.
    pub(crate) fn from_sorted_coords(ambient: Vec<RootLabel>, coords: Vec<u32>, len: usize, provenance: Provenance) -> Self {
        debug_assert_eq!(coords.len(), ambient.len() * len);
        LatticeSet { ambient, coords, len, provenance }
    }

    pub fn ambient(&self) -> &[RootLabel] {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ambient.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn point(&self, k: usize) -> &[u32] {
        let d = self.dim();
        &self.coords[k * d..(k + 1) * d]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        (0..self.len).map(move |k| self.point(k))
    }

    pub fn contains(&self, point: &[u32]) -> bool {
        if point.len() != self.dim() {
            return false;
        }
        let (mut lo, mut hi) = (0, self.len);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.point(mid).cmp(point) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// Re-indexes onto a larger ambient set, filling new coordinates with 0.
    pub fn zero_extend(&self, full: &[RootLabel]) -> Result<LatticeSet> {
        let map: Vec<usize> = self
            .ambient
            .iter()
            .map(|l| full.iter().position(|f| f == l).ok_or(Error::AmbientMismatch))
            .collect::<Result<_>>()?;
        let points = self
            .iter()
            .map(|p| {
                let mut v = vec![0; full.len()];
                for (k, &x) in p.iter().enumerate() {
                    v[map[k]] = x;
                }
                v
            })
            .collect();
        LatticeSet::from_points(full.to_vec(), points, self.provenance.clone())
    }

    pub fn to_json(&self, include_points: bool) -> LatticeSetJson {
        LatticeSetJson {
            system: self.provenance.system.clone(),
            lambda: self.provenance.lambda.clone(),
            ambient: self.ambient.clone(),
            count: self.len as u64,
            points: include_points.then(|| self.iter().map(|p| p.to_vec()).collect()),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.ambient.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",");
        out.push('\n');
        for p in self.iter() {
            out.push_str(&p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSetJson {
    pub system: String,
    pub lambda: Weight,
    pub ambient: Vec<RootLabel>,
    pub count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<u32>>>,
}

impl LatticeSetJson {
    pub fn into_set(self) -> Result<LatticeSet> {
        let points = self.points.ok_or_else(|| Error::Invalid("lattice set JSON has no points".into()))?;
        LatticeSet::from_points(self.ambient, points, Provenance { system: self.system, lambda: self.lambda })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EnumOptions {
    pub exec: Execution,
    /// Upper limit on materialized points.
    pub max_points: Option<u64>,
}

/// Row structure reorganized per coordinate for the walk.
struct Compiled {
    dim: usize,
    rhs: Vec<u64>,
    by_coord: Vec<Vec<(usize, u64)>>,
}

impl Compiled {
    fn new(sys: &ConcreteSystem) -> Result<Self> {
        let dim = sys.dim();
        let mut by_coord = vec![Vec::new(); dim];
        for (r, row) in sys.rows.iter().enumerate() {
            for &(k, c) in &row.coeffs {
                by_coord[k].push((r, c));
            }
        }
        if let Some(k) = by_coord.iter().position(|v| v.is_empty()) {
            return Err(Error::Unbounded(sys.ambient[k].to_string()));
        }
        Ok(Compiled { dim, rhs: sys.rows.iter().map(|r| r.rhs).collect(), by_coord })
    }

    fn max_value(&self, k: usize, partial: &[u64]) -> Result<u32> {
        let slack = self.by_coord[k]
            .iter()
            .map(|&(r, c)| (self.rhs[r] - partial[r]) / c)
            .min()
            .expect("every coordinate is constrained");
        u32::try_from(slack).map_err(|_| Error::Overflow("coordinate value"))
    }

    fn set(&self, k: usize, from: u32, to: u32, partial: &mut [u64]) {
        for &(r, c) in &self.by_coord[k] {
            partial[r] = partial[r] - c * u64::from(from) + c * u64::from(to);
        }
    }
}

#[derive(Clone)]
struct Prefix {
    point: Vec<u32>,
    partial: Vec<u64>,
}

/// Splits the search tree into at least `want` prefixes (or fewer when the
/// tree is small), in lexicographic order.
fn prefixes(c: &Compiled, want: usize) -> Result<(usize, Vec<Prefix>)> {
    let mut level = vec![Prefix { point: Vec::new(), partial: vec![0; c.rhs.len()] }];
    let mut depth = 0;
    while depth < c.dim && level.len() < want {
        let mut next = Vec::new();
        for pre in level {
            let max = c.max_value(depth, &pre.partial)?;
            for v in 0..=max {
                let mut p = pre.clone();
                c.set(depth, 0, v, &mut p.partial);
                p.point.push(v);
                next.push(p);
            }
        }
        level = next;
        depth += 1;
    }
    Ok((depth, level))
}

fn walk(c: &Compiled, k: usize, point: &mut Vec<u32>, partial: &mut [u64], out: &mut Vec<u32>, limit: u64) -> Result<()> {
    if k == c.dim {
        if (out.len() / c.dim.max(1)) as u64 >= limit {
            return Err(Error::BudgetExceeded { what: "points", needed: u128::from(limit) + 1, limit: u128::from(limit) });
        }
        out.extend_from_slice(point);
        return Ok(());
    }
    let max = c.max_value(k, partial)?;
    point.push(0);
    for v in 0..=max {
        if v > 0 {
            c.set(k, v - 1, v, partial);
        }
        point[k] = v;
        walk(c, k + 1, point, partial, out, limit)?;
    }
    c.set(k, max, 0, partial);
    point.pop();
    Ok(())
}

fn count_walk(c: &Compiled, k: usize, partial: &mut [u64]) -> Result<u128> {
    let max = c.max_value(k, partial)?;
    if k + 1 == c.dim {
        return Ok(u128::from(max) + 1);
    }
    let mut total: u128 = 0;
    for v in 0..=max {
        if v > 0 {
            c.set(k, v - 1, v, partial);
        }
        total = total.checked_add(count_walk(c, k + 1, partial)?).ok_or(Error::Overflow("point count"))?;
    }
    c.set(k, max, 0, partial);
    Ok(total)
}

const PARALLEL_PREFIXES: usize = 256;

fn want_prefixes(exec: Execution) -> usize {
    match exec {
        Execution::Sequential => 1,
        Execution::Parallel => PARALLEL_PREFIXES,
    }
}

/// Largest value any coordinate can take: `min_r floor(rhs_r / c_r)`.
pub fn coordinate_bounds(sys: &ConcreteSystem) -> Result<Vec<u32>> {
    let c = Compiled::new(sys)?;
    let zero = vec![0; c.rhs.len()];
    (0..c.dim).map(|k| c.max_value(k, &zero)).collect()
}

pub fn enumerate(sys: &ConcreteSystem) -> Result<LatticeSet> {
    enumerate_with(sys, &EnumOptions::default())
}

pub fn enumerate_with(sys: &ConcreteSystem, opts: &EnumOptions) -> Result<LatticeSet> {
    let c = Compiled::new(sys)?;
    let provenance = Provenance { system: sys.name.clone(), lambda: sys.lambda.clone() };
    let limit = opts.max_points.unwrap_or(u64::MAX);
    if c.dim == 0 {
        return Ok(LatticeSet::from_sorted_coords(Vec::new(), Vec::new(), 1, provenance));
    }
    let (depth, pres) = prefixes(&c, want_prefixes(opts.exec))?;
    let chunks = par::try_map(opts.exec, pres, |pre| -> Result<Vec<u32>> {
        let mut out = Vec::new();
        let mut point = pre.point;
        let mut partial = pre.partial;
        walk(&c, depth, &mut point, &mut partial, &mut out, limit)?;
        Ok(out)
    })?;
    let total: usize = chunks.iter().map(|v| v.len()).sum();
    let len = total / c.dim;
    if len as u64 > limit {
        return Err(Error::BudgetExceeded { what: "points", needed: len as u128, limit: u128::from(limit) });
    }
    let mut coords = Vec::with_capacity(total);
    chunks.into_iter().for_each(|v| coords.extend(v));
    Ok(LatticeSet::from_sorted_coords(sys.ambient.clone(), coords, len, provenance))
}

pub fn count(sys: &ConcreteSystem) -> Result<BigUint> {
    count_with(sys, Execution::default())
}

pub fn count_with(sys: &ConcreteSystem, exec: Execution) -> Result<BigUint> {
    let c = Compiled::new(sys)?;
    if c.dim == 0 {
        return Ok(BigUint::from(1u32));
    }
    let (depth, pres) = prefixes(&c, want_prefixes(exec))?;
    let parts = par::try_map(exec, pres, |pre| -> Result<u128> {
        if depth == c.dim {
            return Ok(1);
        }
        let mut partial = pre.partial;
        count_walk(&c, depth, &mut partial)
    })?;
    let total = parts.into_iter().try_fold(0u128, |a, b| a.checked_add(b)).ok_or(Error::Overflow("point count"))?;
    Ok(BigUint::from(total))
}

/// Weights of the ambient roots, for `wt(s) = Σ s_β β`.
pub struct WeightMap {
    root_weights: Vec<Weight>,
    rank: usize,
}

impl WeightMap {
    pub fn new(rs: &RootSystem, ambient: &[RootLabel]) -> Result<Self> {
        let root_weights = ambient
            .iter()
            .map(|l| {
                rs.root(l)
                    .map(|r| rs.root_weight(r))
                    .ok_or_else(|| Error::Invalid(format!("{l} is not a root of this system")))
            })
            .collect::<Result<_>>()?;
        Ok(WeightMap { root_weights, rank: rs.rank() })
    }

    pub fn weight_of(&self, s: &[u32]) -> Weight {
        let mut w = vec![0i64; self.rank];
        for (&v, rw) in s.iter().zip(&self.root_weights) {
            if v != 0 {
                for (acc, &x) in w.iter_mut().zip(rw.coeffs()) {
                    *acc += i64::from(v) * x;
                }
            }
        }
        Weight(w)
    }
}

pub fn weight_of(rs: &RootSystem, ambient: &[RootLabel], s: &MultiExponent) -> Result<Weight> {
    Ok(WeightMap::new(rs, ambient)?.weight_of(&s.0))
}

/// `μ ↦ |S(λ)^μ|` with `μ = λ - wt(s)`.
pub fn character(set: &LatticeSet, rs: &RootSystem, lambda: &Weight) -> Result<BTreeMap<Weight, u64>> {
    Ok(graded_q_character(set, rs, lambda)?.specialize())
}

/// Graded q-character: weight ↦ (degree ↦ multiplicity), degree `Σ s_β`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QCharacter(pub BTreeMap<Weight, BTreeMap<u64, u64>>);

impl QCharacter {
    /// Sets `q = 1`.
    pub fn specialize(&self) -> BTreeMap<Weight, u64> {
        self.0.iter().map(|(w, by_deg)| (w.clone(), by_deg.values().sum())).collect()
    }

    pub fn total(&self) -> u64 {
        self.0.values().flat_map(|d| d.values()).sum()
    }

    pub fn degree_stratum(&self, degree: u64) -> BTreeMap<Weight, u64> {
        self.0
            .iter()
            .filter_map(|(w, by_deg)| by_deg.get(&degree).map(|&m| (w.clone(), m)))
            .collect()
    }
}

pub fn graded_q_character(set: &LatticeSet, rs: &RootSystem, lambda: &Weight) -> Result<QCharacter> {
    rs.check_weight(lambda)?;
    let wm = WeightMap::new(rs, set.ambient())?;
    let mut map: BTreeMap<Weight, BTreeMap<u64, u64>> = BTreeMap::new();
    for s in set.iter() {
        let mu = lambda - &wm.weight_of(s);
        let degree = s.iter().map(|&v| u64::from(v)).sum();
        *map.entry(mu).or_default().entry(degree).or_default() += 1;
    }
    Ok(QCharacter(map))
}
