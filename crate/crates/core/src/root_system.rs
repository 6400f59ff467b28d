//! Root systems of type B_n and G_2 with exact arithmetic.
//!
//! Positive roots of B_n are indexed by labels `(p, q)`:
//!
//! * `1 <= p <= q <= n` stands for `α_p + ... + α_q`,
//! * `1 <= p <= 2n - q < n` stands for
//!   `α_p + ... + α_{2n-q} + 2α_{2n-q+1} + ... + 2α_n`.
//!
//! The canonical storage order is ascending lexicographic on `(p, q)`. G_2
//! roots use the fixed labels `b1..b6` with `b1 = 3α_1 + 2α_2` and
//! `b6 = α_1` (`α_1` short).
//!
//! Euclidean coordinates are stored doubled (`eps_x2`) so that spin weights
//! stay integral. Long roots have squared length 2 in both types.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    B,
    G2,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::B => f.write_str("B"),
            Kind::G2 => f.write_str("G2"),
        }
    }
}

/// Label of a positive root. Text form is `a[p,q]` for B and `b1`..`b6` for G_2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootLabel {
    B { p: usize, q: usize },
    G2(usize),
}

impl RootLabel {
    pub fn b(p: usize, q: usize) -> Self {
        RootLabel::B { p, q }
    }

    pub fn pq(&self) -> Option<(usize, usize)> {
        match *self {
            RootLabel::B { p, q } => Some((p, q)),
            RootLabel::G2(_) => None,
        }
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootLabel::B { p, q } => write!(f, "a[{p},{q}]"),
            RootLabel::G2(k) => write!(f, "b{k}"),
        }
    }
}

impl FromStr for RootLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("cannot parse root label {s:?}"));
        if let Some(inner) = s.strip_prefix("a[").and_then(|r| r.strip_suffix(']')) {
            let (p, q) = inner.split_once(',').ok_or_else(bad)?;
            let p = p.trim().parse().map_err(|_| bad())?;
            let q = q.trim().parse().map_err(|_| bad())?;
            Ok(RootLabel::B { p, q })
        } else if let Some(k) = s.strip_prefix('b') {
            Ok(RootLabel::G2(k.parse().map_err(|_| bad())?))
        } else {
            Err(bad())
        }
    }
}

impl Serialize for RootLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub label: RootLabel,
    /// Coefficients over the simple roots.
    pub simple_coeffs: Vec<i64>,
    /// Euclidean coordinates times two.
    pub eps_x2: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple_coeffs.iter().sum()
    }

    /// `self <= other` in the root poset, i.e. `other - self` lies in `Q^+`.
    pub fn precedes(&self, other: &Root) -> bool {
        self.simple_coeffs
            .iter()
            .zip(&other.simple_coeffs)
            .all(|(a, b)| b >= a)
    }
}

/// An integral weight in the basis of fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// `m * ω_i`, with `i` one-based.
    pub fn fundamental_multiple(rank: usize, i: usize, m: i64) -> Self {
        let mut w = vec![0; rank];
        w[i - 1] = m;
        Weight(w)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&m| m >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Weight(self.0.iter().map(|m| m * k).collect())
    }
}

impl std::ops::Add for &Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Sub for &Weight {
    type Output = Weight;

    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    kind: Kind,
    rank: usize,
    simple_roots: Vec<Root>,
    positive_roots: Vec<Root>,
    /// Gram matrix of the simple roots.
    gram: Vec<Vec<Rational>>,
    /// `cartan[i][j] = <α_j, α_i^∨>`.
    cartan: Vec<Vec<i64>>,
    /// The form on doubled coordinates is `eps_scale * dot`.
    eps_scale: Rational,
    fundamental_eps_x2: Vec<Vec<i64>>,
    highest: usize,
}

impl RootSystem {
    pub fn new(kind: Kind, rank: usize) -> Result<Self> {
        match kind {
            Kind::B if rank >= 2 => Ok(Self::build_b(rank)),
            Kind::G2 if rank == 2 => Ok(Self::build_g2()),
            _ => Err(Error::RankOutOfRange {
                kind: match kind {
                    Kind::B => "B",
                    Kind::G2 => "G2",
                },
                rank,
            }),
        }
    }

    pub fn b(rank: usize) -> Result<Self> {
        Self::new(Kind::B, rank)
    }

    pub fn g2() -> Self {
        Self::build_g2()
    }

    fn build_b(n: usize) -> Self {
        let simple_eps: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 2;
                if i + 1 < n {
                    v[i + 1] = -2;
                }
                v
            })
            .collect();
        let mut labels = Vec::with_capacity(n * n);
        for p in 1..=n {
            labels.extend((p..2 * n).filter(|&q| b_label_valid(n, p, q)).map(|q| RootLabel::B { p, q }));
        }
        let positive: Vec<(RootLabel, Vec<i64>)> = labels
            .into_iter()
            .map(|l| {
                let (p, q) = l.pq().unwrap();
                (l, b_simple_coeffs(n, p, q))
            })
            .collect();
        let simple_labels = (1..=n).map(|i| RootLabel::B { p: i, q: i }).collect();
        Self::assemble(Kind::B, n, simple_eps, simple_labels, positive, Rational::new(1, 4))
    }

    fn build_g2() -> Self {
        let simple_eps = vec![vec![2, -2, 0], vec![-4, 2, 2]];
        let coeffs: [[i64; 2]; 6] = [[3, 2], [3, 1], [2, 1], [1, 1], [0, 1], [1, 0]];
        let positive = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (RootLabel::G2(k + 1), c.to_vec()))
            .collect();
        let simple_labels = vec![RootLabel::G2(6), RootLabel::G2(5)];
        Self::assemble(Kind::G2, 2, simple_eps, simple_labels, positive, Rational::new(1, 12))
    }

    fn assemble(
        kind: Kind,
        rank: usize,
        simple_eps: Vec<Vec<i64>>,
        simple_labels: Vec<RootLabel>,
        positive: Vec<(RootLabel, Vec<i64>)>,
        eps_scale: Rational,
    ) -> Self {
        let dim = simple_eps[0].len();
        let combine = |coeffs: &[i64]| -> Vec<i64> {
            (0..dim)
                .map(|e| coeffs.iter().zip(&simple_eps).map(|(c, s)| c * s[e]).sum())
                .collect()
        };
        let simple_roots: Vec<Root> = simple_labels
            .into_iter()
            .enumerate()
            .map(|(i, label)| Root {
                label,
                simple_coeffs: (0..rank).map(|j| i64::from(i == j)).collect(),
                eps_x2: simple_eps[i].clone(),
            })
            .collect();
        let positive_roots: Vec<Root> = positive
            .into_iter()
            .map(|(label, simple_coeffs)| Root {
                label,
                eps_x2: combine(&simple_coeffs),
                simple_coeffs,
            })
            .collect();
        let dot = |a: &[i64], b: &[i64]| -> Rational {
            eps_scale * Rational::from_integer(a.iter().zip(b).map(|(x, y)| x * y).sum())
        };
        let gram: Vec<Vec<Rational>> = (0..rank)
            .map(|i| (0..rank).map(|j| dot(&simple_eps[i], &simple_eps[j])).collect())
            .collect();
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let v = Rational::from_integer(2) * gram[i][j] / gram[i][i];
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();

        // ω_i = Σ_j M_ij α_j with Σ_j M_ij cartan[k][j] = δ_ik, so M = (cartan^T)^{-1}.
        let transposed: Vec<Vec<Rational>> = (0..rank)
            .map(|j| (0..rank).map(|k| Rational::from_integer(cartan[k][j])).collect())
            .collect();
        let inv = invert(&transposed).expect("Cartan matrix is invertible");
        let fundamental_eps_x2: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..dim)
                    .map(|e| {
                        let v: Rational = (0..rank)
                            .map(|j| inv[i][j] * Rational::from_integer(simple_eps[j][e]))
                            .fold(Rational::zero(), |a, b| a + b);
                        assert!(v.is_integer(), "fundamental weight not integral in doubled coordinates");
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();

        let maximal: Vec<usize> = (0..positive_roots.len())
            .filter(|&a| {
                positive_roots
                    .iter()
                    .enumerate()
                    .all(|(b, rb)| b == a || !positive_roots[a].precedes(rb))
            })
            .collect();
        assert_eq!(maximal.len(), 1, "root poset must have a unique maximum");

        RootSystem {
            kind,
            rank,
            simple_roots,
            positive_roots,
            gram,
            cartan,
            eps_scale,
            fundamental_eps_x2,
            highest: maximal[0],
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.simple_roots
    }

    /// Positive roots in canonical order.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn labels(&self) -> Vec<RootLabel> {
        self.positive_roots.iter().map(|r| r.label).collect()
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn highest_root(&self) -> &Root {
        &self.positive_roots[self.highest]
    }

    pub fn index_of(&self, label: &RootLabel) -> Option<usize> {
        self.positive_roots.iter().position(|r| r.label == *label)
    }

    pub fn root(&self, label: &RootLabel) -> Option<&Root> {
        self.positive_roots.iter().find(|r| r.label == *label)
    }

    fn require_b(&self) -> Result<()> {
        match self.kind {
            Kind::B => Ok(()),
            Kind::G2 => Err(Error::NotTypeB),
        }
    }

    pub fn root_from_label(&self, p: usize, q: usize) -> Result<&Root> {
        self.require_b()?;
        if !b_label_valid(self.rank, p, q) {
            return Err(Error::InvalidLabel { p, q, rank: self.rank });
        }
        Ok(self.root(&RootLabel::B { p, q }).expect("valid label is materialized"))
    }

    /// `R_i^+`: roots whose support contains `α_i`.
    pub fn radical_roots(&self, i: usize) -> Result<Vec<Root>> {
        self.require_b()?;
        if i == 0 || i > self.rank {
            return Err(Error::ColumnOutOfRange { i, rank: self.rank });
        }
        Ok(self
            .positive_roots
            .iter()
            .filter(|r| r.simple_coeffs[i - 1] > 0)
            .cloned()
            .collect())
    }

    /// `R_i^+(ℓ)`: `R_i^+` without the roots `α_{p,q}` with `q > ℓ`.
    pub fn truncated_radical(&self, i: usize, level: usize) -> Result<Vec<Root>> {
        let radical = self.radical_roots(i)?;
        let hi = 2 * self.rank - i;
        if level < i || level > hi {
            return Err(Error::TruncationOutOfRange { level, lo: i, hi });
        }
        Ok(radical
            .into_iter()
            .filter(|r| matches!(r.label, RootLabel::B { q, .. } if q <= level))
            .collect())
    }

    pub fn weight_eps_x2(&self, weight: &Weight) -> Vec<i64> {
        let dim = self.fundamental_eps_x2[0].len();
        (0..dim)
            .map(|e| {
                weight
                    .0
                    .iter()
                    .zip(&self.fundamental_eps_x2)
                    .map(|(m, w)| m * w[e])
                    .sum()
            })
            .collect()
    }

    /// Bilinear form on doubled Euclidean coordinates.
    pub fn inner_x2(&self, a: &[i64], b: &[i64]) -> Rational {
        self.eps_scale * Rational::from_integer(a.iter().zip(b).map(|(x, y)| x * y).sum())
    }

    /// `λ(β^∨) = 2(λ, β) / (β, β)`.
    pub fn pairing(&self, weight: &Weight, root: &Root) -> Rational {
        let w = self.weight_eps_x2(weight);
        Rational::from_integer(2) * self.inner_x2(&w, &root.eps_x2)
            / self.inner_x2(&root.eps_x2, &root.eps_x2)
    }

    /// Expresses an element of the root lattice, given over simple roots, in
    /// the fundamental weight basis.
    pub fn simple_to_weight(&self, simple_coeffs: &[i64]) -> Weight {
        Weight(
            (0..self.rank)
                .map(|j| {
                    simple_coeffs
                        .iter()
                        .enumerate()
                        .map(|(i, c)| c * self.cartan[j][i])
                        .sum()
                })
                .collect(),
        )
    }

    pub fn root_weight(&self, root: &Root) -> Weight {
        self.simple_to_weight(&root.simple_coeffs)
    }

    /// `ω_i(θ^∨)`, one-based `i`.
    pub fn fundamental_on_highest_coroot(&self, i: usize) -> i64 {
        let p = self.pairing(&Weight::fundamental_multiple(self.rank, i, 1), self.highest_root());
        debug_assert!(p.is_integer());
        p.to_integer()
    }

    pub fn check_weight(&self, weight: &Weight) -> Result<()> {
        if weight.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: weight.rank() });
        }
        Ok(())
    }
}

pub fn b_label_valid(n: usize, p: usize, q: usize) -> bool {
    (1 <= p && p <= q && q <= n) || (q > n && q < 2 * n && 1 <= p && p <= 2 * n - q)
}

fn b_simple_coeffs(n: usize, p: usize, q: usize) -> Vec<i64> {
    let mut c = vec![0; n];
    if q <= n {
        c[p - 1..q].iter_mut().for_each(|x| *x = 1);
    } else {
        let k = 2 * n - q;
        c[p - 1..k].iter_mut().for_each(|x| *x = 1);
        c[k..n].iter_mut().for_each(|x| *x = 2);
    }
    c
}

fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        a[col].iter_mut().for_each(|x| *x *= inv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                a[r].iter_mut().zip(&pivot_row).for_each(|(x, p)| *x -= f * *p);
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Cover relation of the root poset restricted to `roots`, as
/// `(lower, upper)` label pairs.
pub fn hasse_covers(roots: &[Root]) -> Vec<(RootLabel, RootLabel)> {
    let n = roots.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&k| (roots[k].height(), k));
    // below[y][x]: x < y strictly
    let below: Vec<Vec<bool>> = (0..n)
        .map(|y| {
            (0..n)
                .map(|x| x != y && roots[x].precedes(&roots[y]))
                .collect()
        })
        .collect();
    let mut edges = Vec::new();
    for y in 0..n {
        let mut shadowed = vec![false; n];
        for &x in order.iter().rev() {
            if !below[y][x] || shadowed[x] {
                continue;
            }
            edges.push((x, y));
            for z in 0..n {
                shadowed[z] |= below[x][z];
            }
        }
    }
    edges.sort();
    edges
        .into_iter()
        .map(|(x, y)| (roots[x].label, roots[y].label))
        .collect()
}

/// The total order used for monomial ordering on B-type roots:
/// `α_{p,q} ≺ α_{s,t}` iff `q < t`, or `q = t` and `p > s`.
pub fn total_order_cmp(a: &RootLabel, b: &RootLabel) -> Result<Ordering> {
    match (a, b) {
        (RootLabel::B { p, q }, RootLabel::B { p: s, q: t }) => Ok(q.cmp(t).then(s.cmp(p))),
        _ => Err(Error::NotTypeB),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for n in 2..=6 {
            assert_eq!(RootSystem::b(n).unwrap().positive_roots().len(), n * n);
        }
        assert_eq!(RootSystem::g2().positive_roots().len(), 6);
        assert!(RootSystem::b(1).is_err());
        assert!(RootSystem::new(Kind::G2, 3).is_err());
    }

    #[test]
    fn labels_from_the_definition() {
        let b3 = RootSystem::b(3).unwrap();
        assert_eq!(b3.root_from_label(1, 5).unwrap().simple_coeffs, vec![1, 2, 2]);
        assert_eq!(b3.root_from_label(1, 1).unwrap().simple_coeffs, vec![1, 0, 0]);
        assert_eq!(b3.highest_root().label, RootLabel::b(1, 5));
        let b4 = RootSystem::b(4).unwrap();
        assert_eq!(b4.root_from_label(2, 6).unwrap().simple_coeffs, vec![0, 1, 2, 2]);
        assert!(matches!(b3.root_from_label(3, 4), Err(Error::InvalidLabel { .. })));
        assert!(b3.root_from_label(0, 1).is_err());
        assert!(RootSystem::g2().root_from_label(1, 1).is_err());
    }

    #[test]
    fn label_roundtrip() {
        for n in 2..=6 {
            let rs = RootSystem::b(n).unwrap();
            for r in rs.positive_roots() {
                let hits: Vec<_> = rs
                    .positive_roots()
                    .iter()
                    .filter(|o| o.simple_coeffs == r.simple_coeffs)
                    .collect();
                assert_eq!(hits.len(), 1);
                let text = r.label.to_string();
                assert_eq!(text.parse::<RootLabel>().unwrap(), r.label);
            }
        }
        assert_eq!("b4".parse::<RootLabel>().unwrap(), RootLabel::G2(4));
        assert!("c[1,2]".parse::<RootLabel>().is_err());
    }

    #[test]
    fn eps_coordinates() {
        let b3 = RootSystem::b(3).unwrap();
        // α_{p,q} with q > n is ε_p + ε_{2n-q+1}
        assert_eq!(b3.root_from_label(1, 5).unwrap().eps_x2, vec![2, 2, 0]);
        assert_eq!(b3.root_from_label(3, 3).unwrap().eps_x2, vec![0, 0, 2]);
        assert_eq!(b3.weight_eps_x2(&Weight(vec![0, 0, 1])), vec![1, 1, 1]);
        assert_eq!(b3.weight_eps_x2(&Weight(vec![0, 1, 0])), vec![2, 2, 0]);
    }

    #[test]
    fn fundamental_pairing_is_kronecker() {
        for rs in [RootSystem::b(3).unwrap(), RootSystem::b(5).unwrap(), RootSystem::g2()] {
            for i in 1..=rs.rank() {
                let w = Weight::fundamental_multiple(rs.rank(), i, 1);
                for (j, a) in rs.simple_roots().iter().enumerate() {
                    let expected = Rational::from_integer(i64::from(i == j + 1));
                    assert_eq!(rs.pairing(&w, a), expected);
                }
            }
        }
    }

    #[test]
    fn cartan_matrices() {
        let b4 = RootSystem::b(4).unwrap();
        assert_eq!(
            b4.cartan(),
            &[
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, 0],
                vec![0, -1, 2, -1],
                vec![0, 0, -2, 2]
            ]
        );
        assert_eq!(RootSystem::g2().cartan(), &[vec![2, -3], vec![-1, 2]]);
        let g2 = RootSystem::g2();
        assert_eq!(g2.gram()[1][1], Rational::from_integer(2));
        assert_eq!(g2.gram()[0][0], Rational::new(2, 3));
        assert_eq!(b4.gram()[3][3], Rational::from_integer(1));
    }

    #[test]
    fn highest_coroot_pairings() {
        for n in 2..=6 {
            let rs = RootSystem::b(n).unwrap();
            assert_eq!(rs.fundamental_on_highest_coroot(1), 1);
            for i in 2..n {
                assert_eq!(rs.fundamental_on_highest_coroot(i), 2);
            }
            // α_n is short, so θ^∨ has coefficient 1 on α_n^∨.
            assert_eq!(rs.fundamental_on_highest_coroot(n), 1);
        }
        let b3 = RootSystem::b(3).unwrap();
        assert_eq!(b3.pairing(&Weight::zero(3), b3.highest_root()), Rational::zero());
    }

    #[test]
    fn radicals() {
        let b3 = RootSystem::b(3).unwrap();
        let r2: Vec<_> = b3.radical_roots(2).unwrap().iter().map(|r| r.label).collect();
        let brute: Vec<_> = b3
            .labels()
            .into_iter()
            .filter(|l| matches!(l, RootLabel::B { p, q } if *p <= 2 && 2 <= *q))
            .collect();
        assert_eq!(r2, brute);
        assert_eq!(r2.len(), 7);
        for n in 2..=6 {
            let rs = RootSystem::b(n).unwrap();
            let r1 = rs.radical_roots(1).unwrap();
            assert_eq!(r1.len(), 2 * n - 1);
            assert!(r1.iter().all(|r| r.label.pq().unwrap().0 == 1));
        }
        assert!(b3.radical_roots(0).is_err());
        assert!(b3.radical_roots(4).is_err());
    }

    #[test]
    fn truncation() {
        let b3 = RootSystem::b(3).unwrap();
        assert_eq!(b3.truncated_radical(1, 5).unwrap(), b3.radical_roots(1).unwrap());
        let t: Vec<_> = b3.truncated_radical(3, 3).unwrap().iter().map(|r| r.label).collect();
        assert_eq!(t, vec![RootLabel::b(1, 3), RootLabel::b(2, 3), RootLabel::b(3, 3)]);
        let t: Vec<_> = b3.truncated_radical(2, 3).unwrap().iter().map(|r| r.label).collect();
        assert_eq!(
            t,
            vec![RootLabel::b(1, 2), RootLabel::b(1, 3), RootLabel::b(2, 2), RootLabel::b(2, 3)]
        );
        let b4 = RootSystem::b(4).unwrap();
        let full = b4.radical_roots(3).unwrap();
        let cut = b4.truncated_radical(3, 5).unwrap();
        let dropped: Vec<_> = full.iter().filter(|r| !cut.contains(r)).map(|r| r.label).collect();
        assert!(dropped.iter().all(|l| l.pq().unwrap().1 > 5));
        assert_eq!(dropped.len(), 3);
        assert!(b4.truncated_radical(3, 2).is_err());
        assert!(b4.truncated_radical(3, 6).is_err());
    }

    #[test]
    fn total_order() {
        let cmp = |a, b| total_order_cmp(&a, &b).unwrap();
        assert_eq!(cmp(RootLabel::b(2, 2), RootLabel::b(1, 2)), Ordering::Less);
        assert_eq!(cmp(RootLabel::b(1, 1), RootLabel::b(1, 2)), Ordering::Less);
        assert_eq!(cmp(RootLabel::b(1, 3), RootLabel::b(1, 3)), Ordering::Equal);
        assert!(total_order_cmp(&RootLabel::G2(1), &RootLabel::b(1, 1)).is_err());
    }

    #[test]
    fn hasse_examples() {
        let b3 = RootSystem::b(3).unwrap();
        let covers = hasse_covers(b3.positive_roots());
        assert!(covers.contains(&(RootLabel::b(1, 1), RootLabel::b(1, 2))));
        let maxima: Vec<_> = b3
            .labels()
            .into_iter()
            .filter(|l| covers.iter().all(|(lo, _)| lo != l))
            .collect();
        assert_eq!(maxima, vec![RootLabel::b(1, 5)]);

        // G2: b6 = α1 and b4 = α1 + α2 differ by α2, nothing in between
        let g2 = RootSystem::g2();
        let covers = hasse_covers(g2.positive_roots());
        assert!(covers.contains(&(RootLabel::G2(6), RootLabel::G2(4))));
        assert!(!covers.contains(&(RootLabel::G2(6), RootLabel::G2(3))));
    }
}
