//! Semistandard tableaux of skew shape, enumerated by backtracking.
//!
//! This is deliberately independent of Jacobi–Trudi: it is the reference
//! the determinantal formulas are checked against.

use std::collections::BTreeMap;

use crate::partitions::Partition;
use crate::scalar::Scalar;

/// Number of semistandard fillings of μ/λ with entries in 1..=n.
pub fn count_ssyt(mu: &Partition, lambda: &Partition, n: usize) -> usize {
    let mut count = 0usize;
    walk(mu, lambda, n, &mut |_| count += 1);
    count
}

/// s_{μ/λ}(x) = Σ_T x^T, summed tableau by tableau.
pub fn skew_schur_tableaux(mu: &Partition, lambda: &Partition, x: &[Scalar]) -> Scalar {
    if !mu.contains(lambda) {
        return Scalar::zero();
    }
    let mut total = Scalar::zero();
    walk(mu, lambda, x.len(), &mut |filling| {
        let mut w = Scalar::one();
        for &e in filling {
            w = &w * &x[e - 1];
        }
        total = &total + &w;
    });
    total
}

/// Monomial expansion of s_{μ/λ}(z_1, …, z_n): exponent vector ↦ number of
/// tableaux with that content.
pub fn skew_schur_monomials(mu: &Partition, lambda: &Partition, n: usize) -> BTreeMap<Vec<usize>, u64> {
    let mut out = BTreeMap::new();
    walk(mu, lambda, n, &mut |filling| {
        let mut content = vec![0usize; n];
        for &e in filling {
            content[e - 1] += 1;
        }
        *out.entry(content).or_insert(0) += 1;
    });
    out
}

fn walk(mu: &Partition, lambda: &Partition, n: usize, visit: &mut dyn FnMut(&[usize])) {
    if !mu.contains(lambda) {
        return;
    }
    let cells: Vec<(usize, usize)> = (0..mu.len())
        .flat_map(|i| (lambda.get(i)..mu.get(i)).map(move |j| (i, j)))
        .collect();
    let mut grid: Vec<Vec<usize>> = (0..mu.len()).map(|i| vec![0; mu.get(i)]).collect();
    let mut filling = vec![0usize; cells.len()];
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        lambda: &Partition,
        n: usize,
        grid: &mut Vec<Vec<usize>>,
        filling: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if idx == cells.len() {
            visit(filling);
            return;
        }
        let (i, j) = cells[idx];
        let mut lo = 1;
        if j > lambda.get(i) {
            lo = lo.max(grid[i][j - 1]);
        }
        if i > 0 && j >= lambda.get(i - 1) {
            lo = lo.max(grid[i - 1][j] + 1);
        }
        for v in lo..=n {
            grid[i][j] = v;
            filling[idx] = v;
            rec(idx + 1, cells, lambda, n, grid, filling, visit);
        }
        grid[i][j] = 0;
    }
    rec(0, &cells, lambda, n, &mut grid, &mut filling, visit);
}
