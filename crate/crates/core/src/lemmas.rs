//! Random row families for the sign-combination identities behind the
//! rank-preserving rewrites and the non-contact arguments.
//!
//! Each instance is a list of integer rows over coordinates `x_1..x_N` and a
//! target vector; the claim is that some `±1` combination of the rows hits
//! the target. [`crate::invariants::find_sign_combination`] checks it.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

/// Longest row list produced.
pub const MAX_ROWS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum LemmaKind {
    /// Rows `-x_a - x_b` along a walk; target `x_{i0} - (-1)^n x_{in}`.
    SolidPath,
    /// Closed walk of dashed/solid rows with an odd solid count; target `-2 x_{i0}`.
    OddCycle,
    /// Same with an even solid count; target `0`.
    EvenCycle,
    /// Rows through the cone coordinate `x_1` along a walk.
    ConePath,
    /// Closed cone walk; target `x_1 + 2 x_{i0}` or `0` by parity.
    ConeCycle,
    /// Closed cone walk with both rows at `i0` negated there; target `-x_1 + 2 x_{i0}`.
    ConeCycleNegated,
}

impl LemmaKind {
    pub const ALL: [LemmaKind; 6] = [
        LemmaKind::SolidPath,
        LemmaKind::OddCycle,
        LemmaKind::EvenCycle,
        LemmaKind::ConePath,
        LemmaKind::ConeCycle,
        LemmaKind::ConeCycleNegated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaKind::SolidPath => "solid path",
            LemmaKind::OddCycle => "odd cycle",
            LemmaKind::EvenCycle => "even cycle",
            LemmaKind::ConePath => "cone path",
            LemmaKind::ConeCycle => "cone cycle",
            LemmaKind::ConeCycleNegated => "cone cycle, negated ends",
        }
    }

    pub fn generate(self, rng: &mut impl Rng) -> LemmaInstance {
        match self {
            LemmaKind::SolidPath => solid_path(rng),
            LemmaKind::OddCycle => signed_cycle(rng, true),
            LemmaKind::EvenCycle => signed_cycle(rng, false),
            LemmaKind::ConePath => cone_path(rng),
            LemmaKind::ConeCycle => cone_cycle(rng),
            LemmaKind::ConeCycleNegated => cone_cycle_negated(rng),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaInstance {
    pub kind: LemmaKind,
    /// Walk labels `i_0, ..., i_n` (1-based coordinates).
    pub walk: Vec<usize>,
    pub rows: Vec<Vec<i64>>,
    pub target: Vec<i64>,
}

/// Walk of `steps` steps over labels `lo..=hi`, consecutive labels distinct.
/// With `closed`, also `i_n != i_0`.
fn walk(rng: &mut impl Rng, steps: usize, lo: usize, hi: usize, closed: bool) -> Vec<usize> {
    let mut w = vec![rng.gen_range(lo..=hi)];
    for k in 1..=steps {
        let prev = w[k - 1];
        let last = closed && k == steps && steps > 1;
        let choices: Vec<usize> = (lo..=hi)
            .filter(|&v| v != prev && !(last && v == w[0]))
            .collect();
        w.push(*choices.choose(rng).expect("at least three labels"));
    }
    w
}

fn vector(n: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; n];
    for &(i, c) in terms {
        v[i - 1] += c;
    }
    v
}

fn solid_path(rng: &mut impl Rng) -> LemmaInstance {
    let n_coords = rng.gen_range(3..=8);
    let n = rng.gen_range(1..=MAX_ROWS);
    let w = walk(rng, n, 1, n_coords, false);
    let rows = (0..n)
        .map(|j| vector(n_coords, &[(w[j], -1), (w[j + 1], -1)]))
        .collect();
    let sign = if n % 2 == 0 { -1 } else { 1 };
    let target = vector(n_coords, &[(w[0], 1), (w[n], sign)]);
    LemmaInstance {
        kind: LemmaKind::SolidPath,
        walk: w,
        rows,
        target,
    }
}

fn signed_cycle(rng: &mut impl Rng, odd: bool) -> LemmaInstance {
    let n_coords = rng.gen_range(3..=8);
    let n = rng.gen_range(2..MAX_ROWS);
    let w = walk(rng, n, 1, n_coords, true);
    let mut solid: Vec<bool> = (0..=n).map(|_| rng.gen_bool(0.5)).collect();
    if (solid.iter().filter(|&&s| s).count() % 2 == 1) != odd {
        let k = rng.gen_range(0..=n);
        solid[k] = !solid[k];
    }
    let rows = (0..=n)
        .map(|j| {
            let (a, b) = (w[j], if j == n { w[0] } else { w[j + 1] });
            let sa = if solid[j] { -1 } else { 1 };
            vector(n_coords, &[(a, sa), (b, -1)])
        })
        .collect();
    let target = if odd {
        vector(n_coords, &[(w[0], -2)])
    } else {
        vec![0; n_coords]
    };
    LemmaInstance {
        kind: if odd {
            LemmaKind::OddCycle
        } else {
            LemmaKind::EvenCycle
        },
        walk: w,
        rows,
        target,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cone {
    PlusPlus,
    PlusMinus,
    MinusPlus,
}

/// `len` row types: `++` singletons and `(+-, -+)` dominoes.
fn tiling(rng: &mut impl Rng, len: usize) -> Vec<Cone> {
    let mut out = Vec::with_capacity(len);
    while out.len() < len {
        if out.len() + 1 < len && rng.gen_bool(0.4) {
            out.push(Cone::PlusMinus);
            out.push(Cone::MinusPlus);
        } else {
            out.push(Cone::PlusPlus);
        }
    }
    out
}

fn cone_row(n_coords: usize, t: Cone, a: usize, b: usize) -> Vec<i64> {
    let (sa, sb) = match t {
        Cone::PlusPlus => (1, 1),
        Cone::PlusMinus => (1, -1),
        Cone::MinusPlus => (-1, 1),
    };
    vector(n_coords, &[(1, 1), (a, sa), (b, sb)])
}

fn cone_path(rng: &mut impl Rng) -> LemmaInstance {
    let n_coords = rng.gen_range(4..=9);
    let n = rng.gen_range(1..=MAX_ROWS);
    let w = walk(rng, n, 2, n_coords, false);
    let types = tiling(rng, n);
    let rows = (0..n)
        .map(|j| cone_row(n_coords, types[j], w[j], w[j + 1]))
        .collect();
    let target = if n % 2 == 1 {
        vector(n_coords, &[(1, 1), (w[0], 1), (w[n], 1)])
    } else {
        vector(n_coords, &[(w[0], 1), (w[n], -1)])
    };
    LemmaInstance {
        kind: LemmaKind::ConePath,
        walk: w,
        rows,
        target,
    }
}

fn cone_cycle(rng: &mut impl Rng) -> LemmaInstance {
    let n_coords = rng.gen_range(4..=9);
    let n = rng.gen_range(2..MAX_ROWS);
    let w = walk(rng, n, 2, n_coords, true);
    let types = tiling(rng, n + 1);
    let rows = (0..=n)
        .map(|j| {
            let b = if j == n { w[0] } else { w[j + 1] };
            cone_row(n_coords, types[j], w[j], b)
        })
        .collect();
    let target = if n % 2 == 0 {
        vector(n_coords, &[(1, 1), (w[0], 2)])
    } else {
        vec![0; n_coords]
    };
    LemmaInstance {
        kind: LemmaKind::ConeCycle,
        walk: w,
        rows,
        target,
    }
}

fn cone_cycle_negated(rng: &mut impl Rng) -> LemmaInstance {
    let n_coords = rng.gen_range(4..=9);
    let n = 2 * rng.gen_range(1..=(MAX_ROWS - 1) / 2);
    let w = walk(rng, n, 2, n_coords, true);
    let middle = tiling(rng, n - 1);
    let mut rows = vec![cone_row(n_coords, Cone::MinusPlus, w[0], w[1])];
    rows.extend((1..n).map(|j| cone_row(n_coords, middle[j - 1], w[j], w[j + 1])));
    rows.push(cone_row(n_coords, Cone::MinusPlus, w[0], w[n]));
    let target = vector(n_coords, &[(1, -1), (w[0], 2)]);
    LemmaInstance {
        kind: LemmaKind::ConeCycleNegated,
        walk: w,
        rows,
        target,
    }
}
