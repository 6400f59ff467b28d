//! Independent ground truth for the lattice-point counts.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::root_system::{Rational, RootSystem, Weight};

fn require_dominant(rs: &RootSystem, lambda: &Weight) -> Result<()> {
    rs.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.0.clone()));
    }
    Ok(())
}

/// `Π_{α>0} (λ+ρ, α^∨) / (ρ, α^∨)`.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<BigUint> {
    require_dominant(rs, lambda)?;
    let rho = Weight(vec![1; rs.rank()]);
    let shifted = lambda + &rho;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for root in rs.positive_roots() {
        let a = rs.pairing(&shifted, root);
        let b = rs.pairing(&rho, root);
        debug_assert!(a.is_integer() && b.is_integer());
        num *= BigUint::from(a.to_integer() as u64);
        den *= BigUint::from(b.to_integer() as u64);
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

fn b3_factors(m: [u64; 3], printed: bool) -> [u64; 9] {
    let [t1, t2, t3] = m;
    let third = if printed { t2 + 1 } else { t3 + 1 };
    [
        t1 + 1,
        t2 + 1,
        third,
        t1 + 2 * t2 + t3 + 4,
        2 * t1 + 2 * t2 + t3 + 5,
        t1 + t2 + t3 + 3,
        t1 + t2 + 2,
        t2 + t3 + 2,
        2 * t2 + t3 + 3,
    ]
}

/// The B3 dimension polynomial, `1/720 · Π` of nine linear factors.
pub fn b3_weyl_polynomial(m1: u64, m2: u64, m3: u64) -> BigUint {
    let prod: BigUint = b3_factors([m1, m2, m3], false).iter().map(|&f| BigUint::from(f)).product();
    debug_assert!((&prod % 720u32).is_zero());
    prod / 720u32
}

/// The same product with the third factor printed as `(T2+1)`; kept only to
/// pin the discrepancy. Not integral in general.
pub fn b3_weyl_polynomial_printed(m1: u64, m2: u64, m3: u64) -> BigRational {
    let prod: BigInt = b3_factors([m1, m2, m3], true).iter().map(|&f| BigInt::from(f)).product();
    BigRational::new(prod, BigInt::from(720))
}

/// Maps a weight to its dominant Weyl conjugate using simple reflections.
fn dominant_conjugate(rs: &RootSystem, mut w: Vec<i64>) -> Vec<i64> {
    let cartan = rs.cartan();
    while let Some(i) = w.iter().position(|&x| x < 0) {
        let c = w[i];
        for (j, wj) in w.iter_mut().enumerate() {
            *wj -= c * cartan[j][i];
        }
    }
    w
}

/// Weyl orbit of a dominant weight, by descending simple reflections.
fn orbit(rs: &RootSystem, dominant: &[i64]) -> Vec<Vec<i64>> {
    let cartan = rs.cartan();
    let mut seen = BTreeSet::from([dominant.to_vec()]);
    let mut queue = VecDeque::from([dominant.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len() {
            if w[i] > 0 {
                let c = w[i];
                let next: Vec<i64> = w.iter().enumerate().map(|(j, &x)| x - c * cartan[j][i]).collect();
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Simple-root coordinates of a fundamental-coordinate weight, if integral.
fn simple_coordinates(rs: &RootSystem, w: &[i64]) -> Option<Vec<i64>> {
    // Solve cartan · c = w by Gaussian elimination over the rationals.
    let n = w.len();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let mut row: Vec<Rational> = rs.cartan()[j].iter().map(|&x| Rational::from_integer(x)).collect();
            row.push(Rational::from_integer(w[j]));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= *p * f;
                }
            }
        }
    }
    a.iter().map(|row| row[n].is_integer().then(|| row[n].to_integer())).collect()
}

fn below(rs: &RootSystem, lambda: &[i64], mu: &[i64]) -> bool {
    let diff: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
    simple_coordinates(rs, &diff).is_some_and(|c| c.iter().all(|&x| x >= 0))
}

/// Full weight-multiplicity map of `V(λ)` by Freudenthal's recursion.
///
/// Multiplicities are computed on dominant weights only and then spread over
/// Weyl orbits. `max_weights` bounds the number of distinct weights.
pub fn freudenthal_multiplicities(rs: &RootSystem, lambda: &Weight, max_weights: usize) -> Result<BTreeMap<Weight, u64>> {
    require_dominant(rs, lambda)?;
    let lam = lambda.0.clone();
    let root_ws: Vec<Vec<i64>> = rs.positive_roots().iter().map(|r| rs.root_weight(r).0).collect();

    // Dominant weights of V(λ): saturate downward from λ.
    let mut dominant = BTreeSet::from([lam.clone()]);
    let mut queue = VecDeque::from([lam.clone()]);
    while let Some(mu) = queue.pop_front() {
        for a in &root_ws {
            let next = dominant_conjugate(rs, mu.iter().zip(a).map(|(x, y)| x - y).collect());
            if !dominant.contains(&next) && below(rs, &lam, &next) {
                dominant.insert(next.clone());
                queue.push_back(next);
            }
        }
    }

    // Process from the top: depth = height of λ - μ.
    let depth = |mu: &Vec<i64>| -> i64 {
        let diff: Vec<i64> = lam.iter().zip(mu).map(|(a, b)| a - b).collect();
        simple_coordinates(rs, &diff).expect("dominant weight below λ").iter().sum()
    };
    let mut order: Vec<(i64, Vec<i64>)> = dominant.iter().map(|mu| (depth(mu), mu.clone())).collect();
    order.sort();

    let rho = Weight(vec![1; rs.rank()]);
    let norm = |w: &[i64]| -> Rational {
        let e = rs.weight_eps_x2(&Weight(w.to_vec()));
        rs.inner_x2(&e, &e)
    };
    let inner = |w: &[i64], v: &[i64]| -> Rational {
        rs.inner_x2(&rs.weight_eps_x2(&Weight(w.to_vec())), &rs.weight_eps_x2(&Weight(v.to_vec())))
    };
    let lam_rho = norm(&(lambda + &rho).0);

    let mut mult: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for (_, mu) in &order {
        if *mu == lam {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let mut sum = Rational::zero();
        for a in &root_ws {
            let mut k = 1;
            loop {
                let up: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x + k * y).collect();
                let Some(&m) = mult.get(&dominant_conjugate(rs, up.clone())) else { break };
                sum += Rational::from_integer(m as i64) * inner(&up, a);
                k += 1;
            }
        }
        let mu_rho: Vec<i64> = mu.iter().map(|x| x + 1).collect();
        let denom = lam_rho - norm(&mu_rho);
        let m = sum * Rational::from_integer(2) / denom;
        if !m.is_integer() || m.to_integer() < 0 {
            return Err(Error::Invalid(format!("Freudenthal residual at {mu:?} is {m}")));
        }
        mult.insert(mu.clone(), m.to_integer() as u64);
    }

    let mut out = BTreeMap::new();
    for (mu, &m) in &mult {
        if m == 0 {
            continue;
        }
        for w in orbit(rs, mu) {
            out.insert(Weight(w), m);
            if out.len() > max_weights {
                return Err(Error::BudgetExceeded {
                    what: "weights",
                    needed: out.len() as u128,
                    limit: max_weights as u128,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub lambda: Vec<u64>,
    #[serde(with = "crate::decimal")]
    pub e: BigUint,
    #[serde(with = "crate::decimal")]
    pub w: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionPolynomialCheck {
    pub degree: u64,
    pub variables: usize,
    pub grid_size: usize,
    pub points: Vec<GridPoint>,
    pub first_mismatch: Option<Vec<u64>>,
    pub verdict: bool,
}

/// All `λ ∈ Z_+^v` with `Σλ ≤ d`, lexicographic.
pub fn simplex_grid(d: u64, v: usize) -> Vec<Vec<u64>> {
    fn rec(d: u64, v: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == v {
            out.push(prefix.clone());
            return;
        }
        let used: u64 = prefix.iter().sum();
        for x in 0..=d - used {
            prefix.push(x);
            rec(d, v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, v, &mut Vec::new(), &mut out);
    out
}

/// Evaluates `E` and `W` on the degree-`d` simplex grid. Agreement on every
/// grid point identifies two polynomials of total degree at most `d`.
pub fn simplex_identity_check<E, W>(e: E, w: W, d: u64, v: usize, exec: Execution) -> Result<DimensionPolynomialCheck>
where
    E: Fn(&[u64]) -> Result<BigUint> + Sync + Send,
    W: Fn(&[u64]) -> Result<BigUint> + Sync + Send,
{
    let grid = simplex_grid(d, v);
    let points = par::try_map(exec, grid, |lambda| -> Result<GridPoint> {
        let ev = e(&lambda)?;
        let wv = w(&lambda)?;
        Ok(GridPoint { lambda, e: ev, w: wv })
    })?;
    let first_mismatch = points.iter().find(|p| p.e != p.w).map(|p| p.lambda.clone());
    Ok(DimensionPolynomialCheck {
        degree: d,
        variables: v,
        grid_size: points.len(),
        verdict: first_mismatch.is_none(),
        first_mismatch,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn weyl_small() {
        let b3 = RootSystem::b(3).unwrap();
        let g2 = RootSystem::g2();
        let dim = |rs: &RootSystem, l: &[i64]| weyl_dimension(rs, &w(l)).unwrap();
        assert_eq!(dim(&b3, &[0, 0, 0]), BigUint::from(1u32));
        assert_eq!(dim(&b3, &[1, 0, 0]), BigUint::from(7u32));
        assert_eq!(dim(&b3, &[0, 1, 0]), BigUint::from(21u32));
        assert_eq!(dim(&b3, &[0, 0, 1]), BigUint::from(8u32));
        assert_eq!(dim(&g2, &[1, 0]), BigUint::from(7u32));
        assert_eq!(dim(&g2, &[0, 1]), BigUint::from(14u32));
        let b4 = RootSystem::b(4).unwrap();
        assert_eq!(dim(&b4, &[0, 0, 2, 0]), BigUint::from(1980u32));
        assert_eq!(dim(&b4, &[0, 0, 0, 6]), BigUint::from(28314u32));
        assert_eq!(dim(&b4, &[0, 0, 6, 0]), BigUint::from(4744224u32));
        assert!(weyl_dimension(&b3, &w(&[1, -1, 0])).is_err());
    }

    #[test]
    fn polynomial_variants() {
        let b3 = RootSystem::b(3).unwrap();
        for l in simplex_grid(5, 3) {
            let wd = weyl_dimension(&b3, &w(&[l[0] as i64, l[1] as i64, l[2] as i64])).unwrap();
            assert_eq!(b3_weyl_polynomial(l[0], l[1], l[2]), wd);
        }
        assert_eq!(b3_weyl_polynomial(0, 0, 1), BigUint::from(8u32));
        assert_eq!(b3_weyl_polynomial_printed(0, 0, 1), BigRational::from_integer(BigInt::from(4)));
        assert_eq!(b3_weyl_polynomial_printed(1, 0, 0), BigRational::from_integer(BigInt::from(7)));
    }

    #[test]
    fn freudenthal_small() {
        let b3 = RootSystem::b(3).unwrap();
        let zero = freudenthal_multiplicities(&b3, &Weight::zero(3), 100).unwrap();
        assert_eq!(zero, BTreeMap::from([(Weight::zero(3), 1)]));

        let adj = freudenthal_multiplicities(&b3, &w(&[0, 1, 0]), 1000).unwrap();
        assert_eq!(adj.values().sum::<u64>(), 21);
        assert_eq!(adj[&Weight::zero(3)], 3);

        let spin = freudenthal_multiplicities(&b3, &w(&[0, 0, 1]), 1000).unwrap();
        assert_eq!(spin.len(), 8);
        assert!(spin.values().all(|&m| m == 1));

        let g2 = RootSystem::g2();
        let seven = freudenthal_multiplicities(&g2, &w(&[1, 0]), 100).unwrap();
        assert_eq!(seven.len(), 7);
        assert_eq!(seven[&Weight::zero(2)], 1);
        let adj = freudenthal_multiplicities(&g2, &w(&[0, 1]), 100).unwrap();
        assert_eq!(adj[&Weight::zero(2)], 2);

        assert!(freudenthal_multiplicities(&b3, &w(&[2, 2, 2]), 10).is_err());
    }

    #[test]
    fn freudenthal_total_mass() {
        let b4 = RootSystem::b(4).unwrap();
        for l in [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 2], [1, 1, 0, 1]] {
            let lam = w(&l);
            let total: u64 = freudenthal_multiplicities(&b4, &lam, 100_000).unwrap().values().sum();
            assert_eq!(BigUint::from(total), weyl_dimension(&b4, &lam).unwrap());
        }
        let g2 = RootSystem::g2();
        for l in simplex_grid(4, 2) {
            let lam = w(&[l[0] as i64, l[1] as i64]);
            let total: u64 = freudenthal_multiplicities(&g2, &lam, 100_000).unwrap().values().sum();
            assert_eq!(BigUint::from(total), weyl_dimension(&g2, &lam).unwrap());
        }
    }

    #[test]
    fn grid() {
        assert_eq!(simplex_grid(9, 3).len(), 220);
        assert_eq!(simplex_grid(1, 1), vec![vec![0], vec![1]]);
        let id = |l: &[u64]| Ok(BigUint::from(l[0]));
        let c = simplex_identity_check(id, id, 1, 1, Execution::Sequential).unwrap();
        assert!(c.verdict);
        assert_eq!(c.grid_size, 2);
        let off = |l: &[u64]| Ok(BigUint::from(l[0] * l[0]));
        let c = simplex_identity_check(id, off, 3, 1, Execution::Parallel).unwrap();
        assert!(!c.verdict);
        assert_eq!(c.first_mismatch, Some(vec![2]));
    }
}
