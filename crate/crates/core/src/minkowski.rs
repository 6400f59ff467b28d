//! Minkowski sums of lattice sets and the equality checks built on them.
//!
//! Points are packed into a single `u128` with a mixed radix chosen so that
//! no digit of a sum can overflow; adding two encoded points then encodes
//! their sum, and sorting encodings sorts points lexicographically. When the
//! radix product does not fit, points are hashed as plain vectors instead.
//!
//! Equality `A + B = S(target)` is decided without materializing the target:
//! every sum point is checked against the target inequalities and the sizes
//! are compared. The target is enumerated only to report witnesses.

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::enumeration::{self, EnumOptions, LatticeSet, Provenance};
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::polytopes::{minkowski_step, rectangular_system, ConcreteSystem, Family, InequalitySystem};
use crate::root_system::{RootLabel, RootSystem, Weight};

/// Cap on reported missing points.
pub const MAX_WITNESSES: usize = 10;

#[derive(Clone, Copy, Debug, Default)]
pub struct MinkowskiOptions {
    pub exec: Execution,
    /// Upper limit on `|A|·|B|` per sum.
    pub max_pairs: Option<u128>,
    /// Upper limit on points enumerated for any operand or witness search.
    pub max_points: Option<u64>,
}

impl MinkowskiOptions {
    pub fn enum_opts(&self) -> EnumOptions {
        EnumOptions { exec: self.exec, max_points: self.max_points }
    }
}

struct Codec {
    radix: Vec<u128>,
}

impl Codec {
    fn new(bounds: &[u64]) -> Option<Codec> {
        let mut total: u128 = 1;
        let mut radix = Vec::with_capacity(bounds.len());
        for &b in bounds {
            let r = u128::from(b) + 1;
            total = total.checked_mul(r)?;
            radix.push(r);
        }
        Some(Codec { radix })
    }

    fn encode(&self, p: &[u32]) -> u128 {
        p.iter().zip(&self.radix).fold(0, |acc, (&x, &r)| acc * r + u128::from(x))
    }

    fn decode_into(&self, mut key: u128, out: &mut [u32]) {
        for k in (0..self.radix.len()).rev() {
            out[k] = (key % self.radix[k]) as u32;
            key /= self.radix[k];
        }
    }
}

fn coordinate_max(set: &LatticeSet) -> Vec<u64> {
    let mut m = vec![0u64; set.dim()];
    for p in set.iter() {
        for (a, &x) in m.iter_mut().zip(p) {
            *a = (*a).max(u64::from(x));
        }
    }
    m
}

fn check_pairs(a: usize, b: usize, limit: Option<u128>) -> Result<()> {
    let pairs = (a as u128) * (b as u128);
    match limit {
        Some(l) if pairs > l => Err(Error::BudgetExceeded { what: "pair evaluations", needed: pairs, limit: l }),
        _ => Ok(()),
    }
}

fn blocks(len: usize, exec: Execution) -> Vec<(usize, usize)> {
    let n = par::workers(exec).max(1).min(len.max(1));
    let size = len.div_ceil(n).max(1);
    (0..len).step_by(size).map(|s| (s, (s + size).min(len))).collect()
}

/// `{a + b}` over identical ambient sets, sorted and deduplicated.
pub fn minkowski_sum(a: &LatticeSet, b: &LatticeSet, opts: &MinkowskiOptions) -> Result<LatticeSet> {
    if a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch);
    }
    check_pairs(a.len(), b.len(), opts.max_pairs)?;
    let provenance = Provenance {
        system: format!("{}+{}", a.provenance.system, b.provenance.system),
        lambda: &a.provenance.lambda + &b.provenance.lambda,
    };
    let dim = a.dim();
    let bound: Vec<u64> = coordinate_max(a).iter().zip(coordinate_max(b)).map(|(x, y)| x + y).collect();
    let cap = ((a.len() as u128) * (b.len() as u128)).min(1 << 22) as usize;

    if let Some(codec) = Codec::new(&bound) {
        let kb: Vec<u128> = b.iter().map(|p| codec.encode(p)).collect();
        let parts = par::map(opts.exec, blocks(a.len(), opts.exec), |(s, e)| {
            let mut set = FxHashSet::with_capacity_and_hasher(cap, Default::default());
            for k in s..e {
                let ka = codec.encode(a.point(k));
                set.extend(kb.iter().map(|&x| ka + x));
            }
            set
        });
        let mut iter = parts.into_iter();
        let mut all = iter.next().unwrap_or_default();
        for part in iter {
            all.extend(part);
        }
        let mut keys: Vec<u128> = all.into_iter().collect();
        keys.sort_unstable();
        let mut coords = vec![0u32; keys.len() * dim];
        for (k, &key) in keys.iter().enumerate() {
            codec.decode_into(key, &mut coords[k * dim..(k + 1) * dim]);
        }
        return Ok(LatticeSet::from_sorted_coords(a.ambient().to_vec(), coords, keys.len(), provenance));
    }

    let parts = par::map(opts.exec, blocks(a.len(), opts.exec), |(s, e)| {
        let mut set: FxHashSet<Vec<u32>> = FxHashSet::default();
        for k in s..e {
            let pa = a.point(k);
            for pb in b.iter() {
                set.insert(pa.iter().zip(pb).map(|(x, y)| x + y).collect());
            }
        }
        set
    });
    let mut all: FxHashSet<Vec<u32>> = FxHashSet::default();
    parts.into_iter().for_each(|p| all.extend(p));
    LatticeSet::from_points(a.ambient().to_vec(), all.into_iter().collect(), provenance)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinkowskiReport {
    pub left: String,
    pub right: String,
    pub size_left: u64,
    pub size_right: u64,
    pub size_sum: u64,
    pub size_target: u64,
    pub equal: bool,
    /// Points of the target missing from the sum, at most [`MAX_WITNESSES`].
    pub missing_witnesses: Vec<Vec<u32>>,
    /// Whether every sum point lies in the target.
    pub containment_holds: bool,
}

/// Compares a computed sum against the lattice points of `target`.
pub fn compare_with_target(
    sum: &LatticeSet,
    target: &ConcreteSystem,
    opts: &MinkowskiOptions,
) -> Result<(bool, u64, bool, Vec<Vec<u32>>)> {
    if sum.ambient() != target.ambient.as_slice() {
        return Err(Error::AmbientMismatch);
    }
    let outside = par::map(opts.exec, blocks(sum.len(), opts.exec), |(s, e)| (s..e).any(|k| !target.contains(sum.point(k))));
    let containment = !outside.into_iter().any(|x| x);
    let size_target = enumeration::count_with(target, opts.exec)?;
    let size_target = u64::try_from(size_target).map_err(|_| Error::Overflow("target size"))?;
    let equal = containment && size_target == sum.len() as u64;
    let mut witnesses = Vec::new();
    if !equal {
        let full = enumeration::enumerate_with(target, &opts.enum_opts())?;
        witnesses = full.iter().filter(|p| !sum.contains(p)).take(MAX_WITNESSES).map(|p| p.to_vec()).collect();
    }
    Ok((containment, size_target, equal, witnesses))
}

fn describe(sys: &InequalitySystem, lambda: &Weight) -> String {
    format!("{}@{}", sys.name(), lambda)
}

/// `S(λ) + S(μ)` against `S(λ + μ)` for one inequality system.
pub fn check_sum(sys: &InequalitySystem, lambda: &Weight, mu: &Weight, opts: &MinkowskiOptions) -> Result<MinkowskiReport> {
    let a = enumeration::enumerate_with(&sys.instantiate(lambda)?, &opts.enum_opts())?;
    let b = enumeration::enumerate_with(&sys.instantiate(mu)?, &opts.enum_opts())?;
    let target = sys.instantiate(&(lambda + mu))?;
    report(describe(sys, lambda), describe(sys, mu), &a, &b, &target, opts)
}

fn report(
    left: String,
    right: String,
    a: &LatticeSet,
    b: &LatticeSet,
    target: &ConcreteSystem,
    opts: &MinkowskiOptions,
) -> Result<MinkowskiReport> {
    let sum = minkowski_sum(a, b, opts)?;
    let (containment_holds, size_target, equal, missing_witnesses) = compare_with_target(&sum, target, opts)?;
    Ok(MinkowskiReport {
        left,
        right,
        size_left: a.len() as u64,
        size_right: b.len() as u64,
        size_sum: sum.len() as u64,
        size_target,
        equal,
        missing_witnesses,
        containment_holds,
    })
}

pub fn check_b3_minkowski(lambda: &Weight, mu: &Weight, opts: &MinkowskiOptions) -> Result<MinkowskiReport> {
    let rs = RootSystem::b(3)?;
    for w in [lambda, mu] {
        rs.check_weight(w)?;
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.0.clone()));
        }
    }
    check_sum(&Family::B3.system()?, lambda, mu, opts)
}

/// `S(mω_i) = S((m-ε)ω_i) + S(εω_i)` with `ε = ε_i` unless `step` is given.
pub fn check_rectangular_decomposition(n: usize, i: usize, m: u32, step: Option<u32>, opts: &MinkowskiOptions) -> Result<MinkowskiReport> {
    let eps = step.unwrap_or_else(|| minkowski_step(i));
    if eps == 0 || m < eps {
        return Err(Error::Invalid(format!("need m >= step >= 1, got m={m}, step={eps}")));
    }
    let sys = rectangular_system(&RootSystem::b(n)?, i)?;
    let w = |k: u32| Weight::fundamental_multiple(n, i, i64::from(k));
    check_sum(&sys, &w(m - eps), &w(eps), opts)
}

/// `⌊m/ε⌋·S(εω_i) + (m mod ε)·S(ω_i)` against `S(mω_i)`.
pub fn check_rectangular_iterated(n: usize, i: usize, m: u32, opts: &MinkowskiOptions) -> Result<MinkowskiReport> {
    let eps = minkowski_step(i);
    if m == 0 {
        return Err(Error::Invalid("m must be positive".into()));
    }
    let sys = rectangular_system(&RootSystem::b(n)?, i)?;
    let w = |k: u32| Weight::fundamental_multiple(n, i, i64::from(k));
    let mut parts = vec![eps; (m / eps) as usize];
    parts.extend(std::iter::repeat_n(1, (m % eps) as usize));
    let sets = parts
        .iter()
        .map(|&k| enumeration::enumerate_with(&sys.instantiate(&w(k))?, &opts.enum_opts()))
        .collect::<Result<Vec<_>>>()?;
    let first = sets[0].clone();
    let (left_set, right_set) = if sets.len() == 1 {
        let zero = enumeration::enumerate_with(&sys.instantiate(&Weight::zero(n))?, &opts.enum_opts())?;
        (first, zero)
    } else {
        let mut acc = first;
        for s in &sets[1..sets.len() - 1] {
            acc = minkowski_sum(&acc, s, opts)?;
        }
        (acc, sets[sets.len() - 1].clone())
    };
    let label = parts.iter().map(|k| format!("S({k}w{i})")).collect::<Vec<_>>().join("+");
    let mut r = report(label, String::new(), &left_set, &right_set, &sys.instantiate(&w(m))?, opts)?;
    r.right = describe(&sys, &right_set.provenance.lambda);
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub column: usize,
    pub support: Vec<RootLabel>,
    pub in_target: bool,
    pub in_sum: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub n: usize,
    pub checks: Vec<WitnessCheck>,
    pub passed: bool,
}

/// The two points with all marked coordinates equal to one that lie in
/// `S(2ω_i)` but not in `S(ω_i) + S(ω_i)`, for `i = 4` and `i = 3` in `B_4`.
pub fn counterexample_witnesses(opts: &MinkowskiOptions) -> Result<WitnessReport> {
    let n = 4;
    let rs = RootSystem::b(n)?;
    let cases: [(usize, &[(usize, usize)]); 2] =
        [(4, &[(1, 6), (2, 5), (3, 4)]), (3, &[(1, 3), (1, 4), (1, 6), (2, 5), (3, 3)])];
    let mut checks = Vec::new();
    for (i, support) in cases {
        let sys = rectangular_system(&rs, i)?;
        let support: Vec<RootLabel> = support.iter().map(|&(p, q)| RootLabel::b(p, q)).collect();
        let point: Vec<u32> = sys.ambient().iter().map(|l| u32::from(support.contains(l))).collect();
        let one = enumeration::enumerate_with(&sys.instantiate(&Weight::fundamental_multiple(n, i, 1))?, &opts.enum_opts())?;
        let sum = minkowski_sum(&one, &one, opts)?;
        let target = sys.instantiate(&Weight::fundamental_multiple(n, i, 2))?;
        checks.push(WitnessCheck { column: i, support, in_target: target.contains(&point), in_sum: sum.contains(&point) });
    }
    let passed = checks.iter().all(|c| c.in_target && !c.in_sum);
    Ok(WitnessReport { n, checks, passed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinDeficit {
    pub n: usize,
    pub size_sum: u64,
    pub size_target: u64,
    pub deficit: u64,
}

/// `|S(ω_3) + S(ω_3)|` against `|S(2ω_3)|` in `B_n`.
pub fn spin_deficit(n: usize, opts: &MinkowskiOptions) -> Result<SpinDeficit> {
    let r = check_rectangular_decomposition(n, 3, 2, Some(1), opts)?;
    Ok(SpinDeficit { n, size_sum: r.size_sum, size_target: r.size_target, deficit: r.size_target - r.size_sum })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalityStep {
    pub k: u32,
    pub size_sum: u64,
    pub size_target: u64,
    pub equal: bool,
    pub containment_holds: bool,
    pub missing_witnesses: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalityReport {
    pub system: String,
    pub lambda: Weight,
    pub steps: Vec<NormalityStep>,
    pub normal: bool,
}

/// `S(kλ)` against the `k`-fold sum of `S(λ)` for `2 <= k <= k_max`, reusing
/// each partial sum.
pub fn normality_check(sys: &InequalitySystem, lambda: &Weight, k_max: u32, opts: &MinkowskiOptions) -> Result<NormalityReport> {
    if k_max < 2 {
        return Err(Error::Invalid("k_max must be at least 2".into()));
    }
    let base = enumeration::enumerate_with(&sys.instantiate(lambda)?, &opts.enum_opts())?;
    let mut acc = base.clone();
    let mut steps = Vec::new();
    for k in 2..=k_max {
        acc = minkowski_sum(&acc, &base, opts)?;
        let target = sys.instantiate(&lambda.scaled(i64::from(k)))?;
        let (containment_holds, size_target, equal, missing_witnesses) = compare_with_target(&acc, &target, opts)?;
        steps.push(NormalityStep { k, size_sum: acc.len() as u64, size_target, equal, containment_holds, missing_witnesses });
    }
    let normal = steps.iter().all(|s| s.equal);
    Ok(NormalityReport { system: sys.name().to_string(), lambda: lambda.clone(), steps, normal })
}
