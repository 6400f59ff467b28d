use std::cmp::Ordering;
use std::collections::BTreeSet;

use pbw_core::root_system::{hasse_covers, total_order_cmp, Kind, Root, RootLabel, RootSystem};

fn naive_covers(roots: &[Root]) -> BTreeSet<(RootLabel, RootLabel)> {
    let lt = |a: &Root, b: &Root| a != b && a.precedes(b);
    let mut out = BTreeSet::new();
    for a in roots {
        for b in roots {
            if lt(a, b) && !roots.iter().any(|c| lt(a, c) && lt(c, b)) {
                out.insert((a.label, b.label));
            }
        }
    }
    out
}

fn systems() -> Vec<RootSystem> {
    let mut v: Vec<RootSystem> = (2..=6).map(|n| RootSystem::b(n).unwrap()).collect();
    v.push(RootSystem::g2());
    v
}

#[test]
fn hasse_matches_naive() {
    for rs in systems() {
        let all = rs.positive_roots().to_vec();
        let fast: BTreeSet<_> = hasse_covers(&all).into_iter().collect();
        assert_eq!(fast, naive_covers(&all), "{}{}", rs.kind(), rs.rank());
        let theta = rs.highest_root();
        let maximal: Vec<_> = all.iter().filter(|a| !fast.iter().any(|(x, _)| *x == a.label)).collect();
        assert_eq!(maximal, vec![theta]);
        if rs.rank() >= 3 && rs.kind() == Kind::B {
            for i in 1..=rs.rank() {
                let sub = rs.radical_roots(i).unwrap();
                let fast: BTreeSet<_> = hasse_covers(&sub).into_iter().collect();
                assert_eq!(fast, naive_covers(&sub));
            }
        }
    }
}

#[test]
fn total_order_is_total_and_transitive() {
    for n in 2..=6 {
        let labels = RootSystem::b(n).unwrap().labels();
        for a in &labels {
            for b in &labels {
                let ab = total_order_cmp(a, b).unwrap();
                assert_eq!(ab, total_order_cmp(b, a).unwrap().reverse());
                assert_eq!(ab == Ordering::Equal, a == b);
                let (p, q) = a.pq().unwrap();
                let (s, t) = b.pq().unwrap();
                let expect_less = q < t || (q == t && p > s);
                assert_eq!(ab == Ordering::Less, expect_less);
                for c in &labels {
                    if ab == Ordering::Less && total_order_cmp(b, c).unwrap() == Ordering::Less {
                        assert_eq!(total_order_cmp(a, c).unwrap(), Ordering::Less);
                    }
                }
            }
        }
    }
}

/// Positive roots of B_n in doubled coordinates: `e_i ± e_j` and `e_i`.
fn bn_positive_eps_x2(n: usize) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 2;
        out.insert(v);
        for j in i + 1..n {
            for sign in [2, -2] {
                let mut v = vec![0; n];
                v[i] = 2;
                v[j] = sign;
                out.insert(v);
            }
        }
    }
    out
}

/// Closure of the simple roots under simple reflections.
fn reflection_closure(simple: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    let mut seen: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut frontier: Vec<Vec<i64>> = simple.to_vec();
    while let Some(b) = frontier.pop() {
        for a in simple {
            let k = 2 * dot(a, &b) / dot(a, a);
            let r: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - k * y).collect();
            if seen.insert(r.clone()) {
                frontier.push(r);
            }
        }
    }
    seen
}

#[test]
fn roots_match_independent_constructions() {
    for n in 2..=7 {
        let rs = RootSystem::b(n).unwrap();
        assert_eq!(rs.positive_roots().len(), n * n);
        let got: BTreeSet<Vec<i64>> = rs.positive_roots().iter().map(|r| r.eps_x2.clone()).collect();
        assert_eq!(got, bn_positive_eps_x2(n));
    }
    for rs in systems() {
        let simple: Vec<Vec<i64>> = rs.simple_roots().iter().map(|r| r.eps_x2.clone()).collect();
        let all = reflection_closure(&simple);
        assert_eq!(all.len(), 2 * rs.positive_roots().len());
        for r in rs.positive_roots() {
            assert!(all.contains(&r.eps_x2));
            assert!(all.contains(&r.eps_x2.iter().map(|x| -x).collect::<Vec<_>>()));
            assert!(r.simple_coeffs.iter().all(|&c| c >= 0));
        }
    }
}

#[test]
fn labels_parse_and_print() {
    for rs in systems() {
        for l in rs.labels() {
            let text = l.to_string();
            assert_eq!(text.parse::<RootLabel>().unwrap(), l);
        }
    }
    for bad in ["x1", "a[1]", "a[1,2", "b", ""] {
        assert!(bad.parse::<RootLabel>().is_err(), "{bad}");
    }
}
