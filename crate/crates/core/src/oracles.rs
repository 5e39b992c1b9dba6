//! Independent cross-checks for the enumerative engine.
//!
//! Nothing in this module touches the diagram enumerator: every function is
//! either a closed form or a self-contained recursion, so agreement with
//! [`crate::invariants::gw_invariant`] is evidence for both sides.
//!
//! * [`binomial`] / [`multinomial`]: exact combinatorial primitives.
//! * [`kontsevich_rational`]: the rational-degree recursion
//!   `N_d = Σ N_{d1} N_{d2} d1² d2 (d2·C(3d−4,3d1−2) − d1·C(3d−4,3d1−1))`.
//! * [`near_max_genus_count`]: the closed form `3(d−1)²` for degree-d
//!   curves of genus one below the maximum.
//! * [`vakil_rhs`]: the ruled-surface recursion relating
//!   `N(trapezoid(n,2,b), g)` to `N(trapezoid(n+1,2,b−1), g)` plus an
//!   explicit correction sum over weight sequences.
//! * [`max_genus`]: interior lattice point count by direct scan.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::lattice::{HTransversePolygon, LatticePoint};

/// Exact binomial coefficient. Zero when `b < 0`, when `a >= 0 < b > a`,
/// or when `a < 0 < b` (no negative upper arguments arise in this crate);
/// one when `b == 0`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if b < 0 {
        return BigUint::zero();
    }
    if b == 0 {
        return BigUint::one();
    }
    if a < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut result = BigUint::one();
    for i in 1..=b {
        result = result * BigUint::from((a - b + i) as u64) / BigUint::from(i as u64);
    }
    result
}

/// Multinomial coefficient as the telescoping product
/// `Π_i C(a − Σ_{j<i} parts_j, parts_i)`. Trailing zero parts contribute
/// factor 1; a part overshooting the remainder makes the whole product 0.
pub fn multinomial(a: i64, parts: &[i64]) -> BigUint {
    let mut remaining = a;
    let mut result = BigUint::one();
    for &p in parts {
        result *= binomial(remaining, p);
        remaining -= p;
    }
    result
}

/// A finitely-supported sequence of non-negative integers `(α_1, α_2, …)`,
/// indexed from 1. `counts[i]` stores `α_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaSequence {
    counts: Vec<u64>,
}

impl AlphaSequence {
    pub fn new(counts: Vec<u64>) -> Self {
        let mut counts = counts;
        while counts.last() == Some(&0) {
            counts.pop();
        }
        Self { counts }
    }

    /// `α_i` (1-indexed).
    pub fn get(&self, i: usize) -> u64 {
        assert!(i >= 1);
        self.counts.get(i - 1).copied().unwrap_or(0)
    }

    /// `|α| = Σ α_i`.
    pub fn norm(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `Iα = Σ i·α_i`.
    pub fn weighted_norm(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u64 + 1) * c)
            .sum()
    }

    /// `I^α = Π i^{α_i}`.
    pub fn index_power(&self) -> BigUint {
        let mut result = BigUint::one();
        for (i, &c) in self.counts.iter().enumerate() {
            result *= BigUint::from(i as u64 + 1).pow(c as u32);
        }
        result
    }

    /// All sequences with `|α| = norm` and `Iα <= weighted_bound`
    /// (support is then automatically confined to indices `<= weighted_bound`).
    pub fn enumerate(norm: u64, weighted_bound: u64) -> Vec<AlphaSequence> {
        let mut out = Vec::new();
        let mut counts = vec![0u64; weighted_bound as usize];
        fn rec(
            counts: &mut Vec<u64>,
            idx: usize,
            norm_left: u64,
            weight_left: u64,
            out: &mut Vec<AlphaSequence>,
        ) {
            if norm_left == 0 {
                out.push(AlphaSequence::new(counts.clone()));
                return;
            }
            if idx >= counts.len() {
                return;
            }
            let i = (idx + 1) as u64;
            let max_here = norm_left.min(weight_left / i);
            for c in 0..=max_here {
                counts[idx] = c;
                rec(counts, idx + 1, norm_left - c, weight_left - i * c, out);
            }
            counts[idx] = 0;
        }
        rec(&mut counts, 0, norm, weighted_bound, &mut out);
        out
    }
}

/// Closed form `3(d−1)²`: the count of degree-d plane curves of genus
/// one below the maximal genus through a generic configuration.
pub fn near_max_genus_count(d: u64) -> BigUint {
    assert!(d >= 3, "the closed form applies from degree 3 on");
    BigUint::from(3 * (d - 1) * (d - 1))
}

/// Rational plane curve counts `N_d` from the degree recursion with base
/// `N_1 = 1`. Returns `N_1..=N_max` (index 0 holds `N_1`).
pub fn kontsevich_rational_table(max_degree: u64) -> Vec<BigUint> {
    assert!(max_degree >= 1);
    let mut table: Vec<BigInt> = vec![BigInt::one()];
    for d in 2..=max_degree as i64 {
        let mut total = BigInt::zero();
        for d1 in 1..d {
            let d2 = d - d1;
            let n1 = &table[(d1 - 1) as usize];
            let n2 = &table[(d2 - 1) as usize];
            let c1 = BigInt::from(binomial(3 * d - 4, 3 * d1 - 2));
            let c2 = BigInt::from(binomial(3 * d - 4, 3 * d1 - 1));
            let bracket = BigInt::from(d2) * c1 - BigInt::from(d1) * c2;
            total += n1 * n2 * BigInt::from(d1 * d1 * d2) * bracket;
        }
        table.push(total);
    }
    table
        .into_iter()
        .map(|n| {
            assert!(!n.is_negative(), "rational curve counts are non-negative");
            n.magnitude().clone()
        })
        .collect()
}

/// `N_d` for a single degree.
pub fn kontsevich_rational(d: u64) -> BigUint {
    kontsevich_rational_table(d).pop().unwrap()
}

/// Right-hand side of the ruled-surface recursion:
/// `N(trapezoid(n+1,2,b−1), g)` (supplied by `n_lookup`) plus
/// `Σ_{|β|=g+1, Iβ<=n} C(2n+2b+g+2, n−Iβ) · C(β_1+b, b) ·
///  multinomial(|β|+b; β_1+b, β_2, …) · I^{2β}`.
pub fn vakil_rhs(
    n: u64,
    b: u64,
    g: u64,
    n_lookup: impl Fn(&HTransversePolygon, u64) -> BigUint,
) -> BigUint {
    assert!(b >= 1);
    let base_polygon = HTransversePolygon::hirzebruch(n + 1, 2, b - 1)
        .expect("trapezoid quadruple is always valid");
    let mut total = n_lookup(&base_polygon, g);

    for beta in AlphaSequence::enumerate(g + 1, n) {
        let i_beta = beta.weighted_norm();
        let mut parts: Vec<i64> = vec![(beta.get(1) + b) as i64];
        for i in 2..=beta.counts.len() {
            parts.push(beta.get(i) as i64);
        }
        let term = binomial((2 * n + 2 * b + g + 2) as i64, (n - i_beta) as i64)
            * binomial((beta.get(1) + b) as i64, b as i64)
            * multinomial((beta.norm() + b) as i64, &parts)
            * beta.index_power().pow(2);
        total += term;
    }
    total
}

/// Number of interior lattice points of the polygon, by bounding-box scan
/// over the reconstructed vertices. Every diagram genus exceeding this
/// count has an empty inventory.
pub fn max_genus(p: &HTransversePolygon) -> u64 {
    let verts = p.reconstruct_vertices();
    let xs: Vec<i64> = verts.iter().map(|v| v.x).collect();
    let ys: Vec<i64> = verts.iter().map(|v| v.y).collect();
    let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
    let n = verts.len();
    let mut count = 0;
    for x in x0..=x1 {
        for y in y0..=y1 {
            let p = LatticePoint::new(x, y);
            let strictly_inside = (0..n).all(|i| {
                let a = verts[i];
                let b = verts[(i + 1) % n];
                (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) > 0
            });
            if strictly_inside {
                count += 1;
            }
        }
    }
    count
}
