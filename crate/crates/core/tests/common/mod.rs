//! Independent reference implementations used as test oracles. They work on
//! raw coordinate slices and share no code with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub fn leq(u: &[i64], v: &[i64]) -> bool {
    u.iter().zip(v).all(|(a, b)| a <= b)
}

pub fn lt(u: &[i64], v: &[i64]) -> bool {
    u.iter().zip(v).all(|(a, b)| a < b)
}

pub fn leq_on(u: &[i64], v: &[i64], axes: &[usize]) -> bool {
    axes.iter().all(|&j| u[j - 1] <= v[j - 1])
}

pub fn meet(u: &[i64], v: &[i64]) -> Vec<i64> {
    u.iter().zip(v).map(|(a, b)| *a.min(b)).collect()
}

pub fn incomparable(u: &[i64], v: &[i64]) -> bool {
    !leq(u, v) && !leq(v, u)
}

/// Every split `{S, S̄}` with `u ≼_S v` and `v ≼_S̄ u`, as sorted pairs of
/// sorted axis lists (the part containing axis 1 first).
pub fn order_types(u: &[i64], v: &[i64]) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let d = u.len();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << d) - 1 {
        let s: Vec<usize> = (1..=d).filter(|j| mask >> (j - 1) & 1 == 1).collect();
        let c: Vec<usize> = (1..=d).filter(|j| mask >> (j - 1) & 1 == 0).collect();
        let fits = (leq_on(u, v, &s) && leq_on(v, u, &c)) || (leq_on(v, u, &s) && leq_on(u, v, &c));
        if fits {
            out.insert(if s.contains(&1) { (s, c) } else { (c, s) });
        }
    }
    out
}

/// Edges `(i, j)`, `i < j`, of the competition graph of `x -> y iff y < x`.
pub fn competition_edges(points: &[Vec<i64>]) -> BTreeSet<(usize, usize)> {
    let n = points.len();
    let mut edges = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if (0..n).any(|z| lt(&points[z], &points[i]) && lt(&points[z], &points[j])) {
                edges.insert((i, j));
            }
        }
    }
    edges
}

/// Longest chain and longest antichain of planar points by `O(m^2)` dynamic programming.
pub fn longest_chain_antichain(points: &[(i64, i64)]) -> (usize, usize) {
    let mut p = points.to_vec();
    p.sort();
    let m = p.len();
    let mut chain = vec![1usize; m];
    let mut anti = vec![1usize; m];
    for i in 0..m {
        for j in 0..i {
            if p[j].0 <= p[i].0 && p[j].1 <= p[i].1 {
                chain[i] = chain[i].max(chain[j] + 1);
            }
            if p[j].0 < p[i].0 && p[j].1 > p[i].1 {
                anti[i] = anti[i].max(anti[j] + 1);
            }
        }
    }
    (chain.into_iter().max().unwrap_or(0), anti.into_iter().max().unwrap_or(0))
}

/// Same by trying every subset; for tiny inputs only.
pub fn longest_by_subsets(points: &[(i64, i64)]) -> (usize, usize) {
    let m = points.len();
    let (mut chain, mut anti) = (0, 0);
    for mask in 1u32..(1 << m) {
        let idx: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let pairs = || idx.iter().enumerate().flat_map(|(a, &i)| idx[a + 1..].iter().map(move |&j| (i, j)));
        let cmp = |i: usize, j: usize| {
            let (u, v) = ([points[i].0, points[i].1], [points[j].0, points[j].1]);
            leq(&u, &v) || leq(&v, &u)
        };
        if pairs().all(|(i, j)| cmp(i, j)) {
            chain = chain.max(idx.len());
        }
        if pairs().all(|(i, j)| !cmp(i, j)) {
            anti = anti.max(idx.len());
        }
    }
    (chain, anti)
}

pub fn monotone(x: i64, y: i64, z: i64) -> bool {
    (x <= y && y <= z) || (x >= y && y >= z)
}

/// Some ordered triple of distinct indices monotone in every listed axis.
pub fn has_monotone_triple(points: &[Vec<i64>], axes: &[usize]) -> bool {
    let m = points.len();
    (0..m).any(|a| {
        (0..m).any(|b| {
            b != a
                && (0..m).any(|c| {
                    c != a
                        && c != b
                        && axes
                            .iter()
                            .all(|&j| monotone(points[a][j - 1], points[b][j - 1], points[c][j - 1]))
                })
        })
    })
}

/// All `(family, member)` quadruples `a, b, c, d` with `a`, `b` in different
/// families, `c != d` in one family and `min{a,b} ≼ min{c,d}`.
pub fn witness_quadruples(families: &[Vec<Vec<i64>>]) -> Vec<[(usize, usize); 4]> {
    let members: Vec<(usize, usize)> = families
        .iter()
        .enumerate()
        .flat_map(|(f, fam)| (0..fam.len()).map(move |m| (f, m)))
        .collect();
    let at = |r: (usize, usize)| &families[r.0][r.1];
    let mut out = Vec::new();
    for &a in &members {
        for &b in &members {
            if a.0 == b.0 {
                continue;
            }
            let low = meet(at(a), at(b));
            for &c in &members {
                for &d in &members {
                    if c.0 == d.0 && c.1 != d.1 && leq(&low, &meet(at(c), at(d))) {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

pub fn is_witness(families: &[Vec<Vec<i64>>], q: [(usize, usize); 4]) -> bool {
    let [a, b, c, d] = q;
    let at = |r: (usize, usize)| &families[r.0][r.1];
    a.0 != b.0 && c.0 == d.0 && c.1 != d.1 && leq(&meet(at(a), at(b)), &meet(at(c), at(d)))
}

/// Interval graph test by trying every assignment of endpoints in `0..2n`.
pub fn is_interval_brute(n: usize, edges: &BTreeSet<(usize, usize)>) -> bool {
    let slots = 2 * n as i64;
    let mut iv = vec![(0i64, 0i64); n];
    fn go(v: usize, n: usize, slots: i64, iv: &mut Vec<(i64, i64)>, edges: &BTreeSet<(usize, usize)>) -> bool {
        if v == n {
            return true;
        }
        for l in 0..slots {
            for r in l..slots {
                iv[v] = (l, r);
                let ok = (0..v).all(|u| {
                    let meets = iv[u].0.max(l) <= iv[u].1.min(r);
                    meets == edges.contains(&(u, v))
                });
                if ok && go(v + 1, n, slots, iv, edges) {
                    return true;
                }
            }
        }
        false
    }
    go(0, n, slots, &mut iv, edges)
}
