//! Oracles computed straight from the relation list, without the library's
//! graph code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use lieposet::SignedPoset;

/// Vertices `1..=n` and edges read off the relations: `(a, b, loop)`.
pub fn edges_of(p: &SignedPoset) -> BTreeSet<(u32, u32)> {
    let mut edges = BTreeSet::new();
    for (x, y) in p.relations() {
        if x >= 0 || y == 0 {
            continue;
        }
        let (a, b) = (x.unsigned_abs(), y.unsigned_abs());
        // -i<j and -j<i are one solid edge; -i<-j is a dashed edge, kept apart
        // from a solid edge on the same pair by the high bit
        let tag = if y < 0 { 1 << 16 } else { 0 };
        edges.insert((a.min(b) | tag, a.max(b)));
    }
    edges
}

struct Dsu {
    parent: Vec<usize>,
    parity: Vec<u8>,
    odd: Vec<bool>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            parity: vec![0; n],
            odd: vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, u8) {
        if self.parent[x] == x {
            return (x, 0);
        }
        let (r, p) = self.find(self.parent[x]);
        self.parent[x] = r;
        self.parity[x] ^= p;
        (r, self.parity[x])
    }

    /// Join with `x` and `y` on opposite sides.
    fn join(&mut self, x: usize, y: usize) {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            if px == py {
                self.odd[rx] = true;
            }
            return;
        }
        self.parent[ry] = rx;
        self.parity[ry] = px ^ py ^ 1;
        self.odd[rx] |= self.odd[ry];
    }
}

/// Components without an odd cycle (every edge one step, loops odd).
pub fn eta(p: &SignedPoset) -> usize {
    let n = p.n();
    let mut d = Dsu::new(n + 1);
    for (a, b) in edges_of(p) {
        d.join((a & 0xFFFF) as usize, b as usize);
    }
    (1..=n).filter(|&v| d.find(v).0 == v && !d.odd[v]).count()
}

pub fn component_count(p: &SignedPoset) -> usize {
    let n = p.n();
    let mut d = Dsu::new(n + 1);
    for (a, b) in edges_of(p) {
        d.join((a & 0xFFFF) as usize, b as usize);
    }
    (1..=n).filter(|&v| d.find(v).0 == v).count()
}

/// `|E| - |V| + 2 eta`.
pub fn index_formula(p: &SignedPoset) -> usize {
    edges_of(p).len() + 2 * eta(p) - p.n()
}

/// Dimension: diagonal plus one element per edge.
pub fn dim_formula(p: &SignedPoset) -> usize {
    p.n() + edges_of(p).len()
}

/// Rank over `F_p` by plain Gaussian elimination.
pub fn rank_mod(rows: &[Vec<i64>], prime: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|v| v.rem_euclid(prime)).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow(m[rank][c], prime - 2, prime);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c] * inv % prime;
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x = (*x - f * p).rem_euclid(prime);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow(mut b: i64, mut e: i64, m: i64) -> i64 {
    let mut acc = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}
