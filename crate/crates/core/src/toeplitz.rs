//! Toeplitz matrices, their minors and inverses, and the finite-N identities
//! relating them to skew Schur functions.

use crate::error::{Error, Result};
use crate::partitions::{partitions_in_box, partitions_up_to, Partition};
use crate::scalar::{Rational, Scalar, TruncatedSeries};
use crate::symbols::{Coefficients, SymbolSpec};
use crate::symfunc::{schur, skew_schur, Basis, Specialization};

pub use crate::matrix::ExactMatrix;

fn check_lengths(n: usize, lambda: &Partition, mu: &Partition) -> Result<()> {
    if lambda.len() > n || mu.len() > n {
        return Err(Error::domain(format!(
            "partitions {lambda} and {mu} must have at most N = {n} parts"
        )));
    }
    Ok(())
}

/// T_N(f) with entries d_{j−k}.
pub fn toeplitz_matrix(f: &SymbolSpec, n: usize) -> Result<ExactMatrix> {
    minor_matrix(f, n, &Partition::empty(), &Partition::empty())
}

/// D_N(f); D_0 = 1.
pub fn toeplitz_determinant(f: &SymbolSpec, n: usize) -> Result<Scalar> {
    toeplitz_matrix(f, n)?.determinant()
}

/// T_N^{λ,μ}(f) with entries d_{j−λ_j−k+μ_k}.
pub fn minor_matrix(f: &SymbolSpec, n: usize, lambda: &Partition, mu: &Partition) -> Result<ExactMatrix> {
    check_lengths(n, lambda, mu)?;
    let reach = n + lambda.first().max(mu.first());
    let c = Coefficients::new(f, reach)?;
    ExactMatrix::try_from_fn(n, n, |j, k| {
        c.get(j as i64 - lambda.get(j) as i64 - k as i64 + mu.get(k) as i64)
    })
}

/// D_N^{λ,μ}(f).
pub fn minor_determinant(f: &SymbolSpec, n: usize, lambda: &Partition, mu: &Partition) -> Result<Scalar> {
    minor_matrix(f, n, lambda, mu)?.determinant()
}

/// Which of `total` lines survive: strike `lead` first, then keep one and
/// strike p_j − p_{j+1} after the j-th kept line.
fn kept_lines(total: usize, lead: usize, parts: &Partition, n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n);
    let mut pos = lead;
    for j in 0..n {
        out.push(pos);
        pos += 1 + parts.get(j) - parts.get(j + 1);
    }
    debug_assert!(out.iter().all(|&p| p < total));
    out
}

/// T_N^{λ,μ}(f) obtained by striking rows and columns of T_{N+max(λ₁,μ₁)}(f).
pub fn striking_minor(f: &SymbolSpec, n: usize, lambda: &Partition, mu: &Partition) -> Result<ExactMatrix> {
    check_lengths(n, lambda, mu)?;
    let (l1, m1) = (lambda.first(), mu.first());
    let big = n + l1.max(m1);
    let t = toeplitz_matrix(f, big)?;
    let (row_lead, col_lead) = if l1 > m1 { (0, l1 - m1) } else { (m1 - l1, 0) };
    let rows = kept_lines(big, row_lead, lambda, n);
    let cols = kept_lines(big, col_lead, mu, n);
    Ok(t.select(&rows, &cols))
}

/// T_N(f)^{-1}, cross-checked entry by entry against the cofactor formula
/// (T^{-1})_{j,k} = (−1)^{j+k} D_{N−1}^{(1^{k−1}),(1^{j−1})}/D_N.
pub fn exact_inverse(f: &SymbolSpec, n: usize) -> Result<ExactMatrix> {
    let t = toeplitz_matrix(f, n)?;
    let d = t.determinant()?;
    if d.is_zero() {
        return Err(Error::Singular(d.to_string()));
    }
    let inv = t.inverse()?;
    let dinv = d.inv()?;
    for j in 0..n {
        for k in 0..n {
            let minor = minor_determinant(f, n - 1, &Partition::column(k), &Partition::column(j))?;
            let mut v = &minor * &dinv;
            if (j + k) % 2 == 1 {
                v = -v;
            }
            if !v.agrees(inv.get(j, k)) {
                return Err(Error::domain(format!("cofactor check failed at ({}, {})", j + 1, k + 1)));
            }
        }
    }
    Ok(inv)
}

fn require_graded(s: &Specialization, what: &str) -> Result<()> {
    if !s.is_graded() {
        return Err(Error::Precondition(format!("{what} must be a graded specialization")));
    }
    Ok(())
}

fn known_to(x: &Scalar, d: i64) -> Result<()> {
    if let Some(p) = x.precision() {
        if p < d {
            return Err(Error::Precondition(format!("value only known to t^{p}, below the requested degree {d}")));
        }
    }
    Ok(())
}

fn one_series(d: i64) -> Scalar {
    Scalar::Series(TruncatedSeries::constant(Rational::from_integer(1.into()), d))
}

/// ∏_{j,k} 1/(1 − x_j y_k) to t-degree d.
pub fn cauchy_product(x: &Specialization, y: &Specialization, d: i64) -> Result<Scalar> {
    let mut acc = one_series(d);
    for a in x.values()? {
        for b in y.values()? {
            acc = &acc * &(Scalar::one() - &a * &b).inv()?;
        }
    }
    Ok(acc)
}

/// D_N(H(y;z^{-1})H(x;z)) against Σ_{l(ν)≤N} s_ν(y)s_ν(x), to t-degree d.
pub fn verify_gessel(x: &Specialization, y: &Specialization, n: usize, d: i64) -> Result<bool> {
    require_graded(x, "x")?;
    require_graded(y, "y")?;
    let lhs = toeplitz_determinant(&SymbolSpec::hh(x.clone(), y.clone()), n)?;
    known_to(&lhs, d)?;
    let mut rhs = Scalar::Series(TruncatedSeries::zero(d));
    for nu in partitions_up_to(d.max(0) as usize).into_iter().filter(|nu| nu.len() <= n) {
        rhs = &rhs + &(&schur(&nu, y)? * &schur(&nu, x)?);
    }
    Ok(lhs.agrees_to(&rhs, d))
}

/// D_N(H(y;z^{-1})H(x;z)) with finitely many rational y against the Cauchy
/// product, and its independence of N (checked against N+1).
pub fn verify_baxter(y: &[Rational], x: &Specialization, n: usize, d: i64) -> Result<bool> {
    if n < y.len() {
        return Err(Error::Precondition(format!("N = {n} is below the number of y variables {}", y.len())));
    }
    if !x.is_graded() && !x.is_empty() {
        return Err(Error::Precondition("x must be a graded specialization".into()));
    }
    let ys = Specialization::rationals(y);
    let f = SymbolSpec::hh(x.clone(), ys.clone());
    let dn = toeplitz_determinant(&f, n)?;
    let dn1 = toeplitz_determinant(&f, n + 1)?;
    let rhs = cauchy_product(x, &ys, d)?;
    if x.is_empty() {
        return Ok(dn.agrees(&rhs) && dn1.agrees(&rhs));
    }
    known_to(&dn, d)?;
    Ok(dn.agrees_to(&rhs, d) && dn1.agrees_to(&rhs, d))
}

/// Both sides of the stabilized minor identity for H(y;z^{-1})H(x;z).
pub fn case1_sides(
    y: &[Rational],
    x: &Specialization,
    lambda: &Partition,
    mu: &Partition,
    n: usize,
    d: i64,
) -> Result<(Scalar, Scalar)> {
    let ys = Specialization::rationals(y);
    let lhs = minor_determinant(&SymbolSpec::hh(x.clone(), ys.clone()), n, lambda, mu)?;
    let mut sum = Scalar::zero();
    for nu in lambda.subpartitions().into_iter().filter(|nu| mu.contains(nu)) {
        sum = &sum + &(&skew_schur(lambda, &nu, &ys, Basis::H)? * &skew_schur(mu, &nu, x, Basis::H)?);
    }
    let rhs = &cauchy_product(x, &ys, d)? * &sum;
    Ok((lhs, rhs))
}

/// The stabilized minor identity; needs N ≥ d + l(μ).
pub fn verify_case1_minor(
    y: &[Rational],
    x: &Specialization,
    lambda: &Partition,
    mu: &Partition,
    n: usize,
    d: i64,
) -> Result<bool> {
    if n < y.len() + mu.len() {
        return Err(Error::Precondition(format!(
            "stabilization needs N >= d + l(mu) = {}, got N = {n}",
            y.len() + mu.len()
        )));
    }
    require_graded(x, "x")?;
    let (lhs, rhs) = case1_sides(y, x, lambda, mu, n, d)?;
    known_to(&lhs, d)?;
    Ok(lhs.agrees_to(&rhs, d))
}

/// s_{((d^N)+μ/λ)'}(y^{-1}, x) = ∏ y_k^{-N} D_N^{λ,μ}(E(y;z^{-1})E(x;z)),
/// together with the finite sum over ν (ν₁ ≤ N, l(ν) ≤ d + μ₁).
pub fn verify_ee_schur(y: &[Rational], x: &Specialization, lambda: &Partition, mu: &Partition, n: usize) -> Result<bool> {
    if y.iter().any(|v| v == &Rational::from_integer(0.into())) {
        return Err(Error::domain("y values must be nonzero"));
    }
    check_lengths(n, lambda, mu)?;
    let d = y.len();
    let shape = Partition::rectangle(d, n).plus(mu);
    let mut vars: Vec<Scalar> = y.iter().map(|v| Scalar::Rational(v.recip())).collect();
    vars.extend(x.values()?);
    let lhs = skew_schur(&shape, lambda, &Specialization::Finite(vars), Basis::E)?;
    let ys = Specialization::rationals(y);
    let scale = y.iter().fold(Scalar::one(), |acc, v| &acc * &Scalar::Rational(v.recip().pow(n as i32)));
    let minor = minor_determinant(&SymbolSpec::ee(x.clone(), ys.clone()), n, lambda, mu)?;
    let rhs = &scale * &minor;
    let (mc, lc) = (mu.conjugate(), lambda.conjugate());
    let mut sum = Scalar::zero();
    for nu in partitions_in_box(d + mu.first(), n) {
        let a = skew_schur(&nu, &mc, &ys, Basis::H)?;
        if a.is_zero() {
            continue;
        }
        sum = &sum + &(&a * &skew_schur(&nu, &lc, x, Basis::H)?);
    }
    let finite = &scale * &sum;
    Ok(lhs.agrees(&rhs) && lhs.agrees(&finite))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_of;
    use crate::scalar::{rat, ratio};

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn fh(g: u32, d: u32) -> SymbolSpec {
        SymbolSpec::PureFH { gamma: g, delta: d }
    }

    fn ints(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
        m.to_rows()
    }

    #[test]
    fn matrix_examples() {
        let t = toeplitz_matrix(&fh(1, 1), 2).unwrap();
        assert_eq!(ints(&t), vec![vec![Scalar::int(2), Scalar::int(1)], vec![Scalar::int(1), Scalar::int(2)]]);
        let t = toeplitz_matrix(&fh(2, 1), 1).unwrap();
        assert_eq!(t.get(0, 0), &Scalar::int(3));
        let (x, y) = (Scalar::frac(1, 2), Scalar::frac(1, 3));
        let t = toeplitz_matrix(&SymbolSpec::Tridiagonal { x: x.clone(), y: y.clone() }, 3).unwrap();
        for j in 0..3 {
            assert_eq!(t.get(j, j), &(Scalar::one() + &x * &y));
        }
        assert_eq!(t.get(1, 0), &x);
        assert_eq!(t.get(0, 1), &y);
        assert_eq!(t.get(2, 0), &Scalar::zero());
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(toeplitz_determinant(&fh(1, 1), 2).unwrap(), Scalar::int(3));
        assert_eq!(toeplitz_determinant(&fh(1, 2), 2).unwrap(), Scalar::int(6));
        assert_eq!(toeplitz_determinant(&fh(0, 0), 1).unwrap(), Scalar::int(1));
        assert_eq!(toeplitz_determinant(&fh(2, 2), 0).unwrap(), Scalar::one());
    }

    #[test]
    fn minor_examples() {
        let m = minor_matrix(&fh(1, 1), 2, &Partition::empty(), &p(&[1])).unwrap();
        assert_eq!(ints(&m), vec![vec![Scalar::int(1), Scalar::int(1)], vec![Scalar::int(0), Scalar::int(2)]]);
        assert_eq!(m.determinant().unwrap(), Scalar::int(2));
        let e = SymbolSpec::Factors(vec![crate::symbols::Factor::new(
            crate::symbols::Orientation::Z,
            crate::symbols::FactorKind::E,
            Specialization::ones(2),
        )]);
        assert_eq!(minor_determinant(&e, 2, &Partition::empty(), &p(&[1])).unwrap(), Scalar::int(2));
        assert!(minor_matrix(&fh(1, 1), 1, &p(&[1, 1]), &Partition::empty()).is_err());
    }

    #[test]
    fn striking_matches_index_shift() {
        for g in 0..=3u32 {
            for dl in 0..=3u32 {
                let f = fh(g, dl);
                for n in 1..=5usize {
                    for wl in 0..=4 {
                        for lam in partitions_of(wl).into_iter().filter(|l| l.len() <= n) {
                            for wm in 0..=4 {
                                for mu in partitions_of(wm).into_iter().filter(|m| m.len() <= n) {
                                    let a = minor_matrix(&f, n, &lam, &mu).unwrap();
                                    let b = striking_minor(&f, n, &lam, &mu).unwrap();
                                    assert!(a.agrees(&b), "f=({g},{dl}) N={n} {lam} {mu}");
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let inv = exact_inverse(&fh(1, 1), 2).unwrap();
        assert_eq!(inv.get(0, 0), &Scalar::frac(2, 3));
        assert_eq!(inv.get(0, 1), &Scalar::frac(-1, 3));
        assert_eq!(inv.get(1, 1), &Scalar::frac(2, 3));
        let inv = exact_inverse(&fh(2, 1), 1).unwrap();
        assert_eq!(inv.get(0, 0), &Scalar::frac(1, 3));
        let th = SymbolSpec::ThetaGD { gamma: 1, delta: 1, q: Scalar::frac(1, 2) };
        assert_eq!(exact_inverse(&th, 1).unwrap().get(0, 0), &Scalar::frac(2, 3));
        let sing = SymbolSpec::Tridiagonal { x: Scalar::int(-1), y: Scalar::int(-1) };
        // d_0 = 2, d_{±1} = −1: the second difference matrix is nonsingular; this one is not
        let sing2 = SymbolSpec::Tridiagonal { x: Scalar::int(1), y: Scalar::int(-1) };
        assert!(exact_inverse(&sing, 3).is_ok());
        assert!(matches!(exact_inverse(&sing2, 1), Err(Error::Singular(_))));
    }

    #[test]
    fn inverse_composes_to_identity() {
        for g in 0..=3u32 {
            for d in 0..=3u32 {
                for n in 1..=4 {
                    let f = fh(g, d);
                    let inv = exact_inverse(&f, n).unwrap();
                    assert!(toeplitz_matrix(&f, n).unwrap().mul(&inv).unwrap().is_identity());
                }
            }
        }
    }

    #[test]
    fn hook_minors_from_inverse() {
        let q = Scalar::frac(1, 3);
        let mut syms: Vec<SymbolSpec> = Vec::new();
        for g in 0..=3u32 {
            for d in 0..=3u32 {
                syms.push(fh(g, d));
                if g > 0 && d > 0 {
                    syms.push(SymbolSpec::ThetaGD { gamma: g, delta: d, q: q.clone() });
                }
            }
        }
        syms.push(SymbolSpec::Tridiagonal { x: Scalar::frac(1, 2), y: Scalar::frac(-2, 3) });
        for f in &syms {
            for n in 0..=4usize {
                let t = toeplitz_matrix(f, n + 1).unwrap();
                let dn1 = t.determinant().unwrap();
                if dn1.is_zero() {
                    continue;
                }
                let inv = t.inverse().unwrap();
                for j in 0..=n {
                    for k in 0..=n {
                        let lhs = minor_determinant(f, n, &Partition::column(k), &Partition::column(j)).unwrap();
                        let mut rhs = &dn1 * inv.get(j, k);
                        if (j + k) % 2 == 1 {
                            rhs = -rhs;
                        }
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn e_symbol_minors_are_skew_schur() {
        let x = Specialization::rationals(&[ratio(1, 2), ratio(-1, 3), rat(2)]);
        let f = SymbolSpec::Factors(vec![crate::symbols::Factor::new(
            crate::symbols::Orientation::Z,
            crate::symbols::FactorKind::E,
            x.clone(),
        )]);
        let fh_ = SymbolSpec::Factors(vec![crate::symbols::Factor::new(
            crate::symbols::Orientation::Z,
            crate::symbols::FactorKind::H,
            x.clone(),
        )]);
        for n in 1..=4usize {
            for wl in 0..=3 {
                for lam in partitions_of(wl).into_iter().filter(|l| l.len() <= n) {
                    for wm in 0..=4 {
                        for mu in partitions_of(wm).into_iter().filter(|m| m.len() <= n) {
                            // D_N^{λ,μ}(E(x;z)) = s_{μ'/λ'}(x), D_N^{λ,μ}(H(x;z)) = s_{μ/λ}(x)
                            let e = minor_determinant(&f, n, &lam, &mu).unwrap();
                            assert_eq!(e, skew_schur(&mu, &lam, &x, Basis::E).unwrap(), "{lam} {mu}");
                            let h = minor_determinant(&fh_, n, &lam, &mu).unwrap();
                            assert_eq!(h, skew_schur(&mu, &lam, &x, Basis::H).unwrap(), "{lam} {mu}");
                        }
                    }
                }
            }
        }
    }

    fn t(order: i64) -> Specialization {
        Specialization::graded(vec![rat(1)], order)
    }

    #[test]
    fn gessel_examples() {
        assert!(verify_gessel(&t(4), &t(4), 1, 4).unwrap());
        let x2 = Specialization::graded(vec![rat(1), rat(1)], 4);
        assert!(verify_gessel(&x2, &t(4), 2, 4).unwrap());
        assert!(verify_gessel(&t(4), &t(4), 3, 0).unwrap());
        let xa = Specialization::graded(vec![rat(1), ratio(1, 2), ratio(-1, 3)], 6);
        let ya = Specialization::graded(vec![ratio(2, 3), rat(1)], 6);
        for n in 1..=3 {
            assert!(verify_gessel(&xa, &ya, n, 6).unwrap());
        }
        assert!(verify_gessel(&Specialization::ones(1), &t(3), 1, 3).is_err());
    }

    #[test]
    fn baxter_examples() {
        for n in 1..=3 {
            assert!(verify_baxter(&[ratio(1, 2)], &t(5), n, 5).unwrap());
        }
        assert!(verify_baxter(&[ratio(1, 2)], &Specialization::empty(), 1, 5).unwrap());
        let x = Specialization::graded(vec![rat(1), ratio(1, 3)], 4);
        assert!(verify_baxter(&[ratio(1, 2), ratio(1, 3)], &x, 2, 4).unwrap());
        assert!(verify_baxter(&[ratio(1, 2), ratio(1, 3)], &x, 3, 4).unwrap());
        assert!(matches!(verify_baxter(&[ratio(1, 2), ratio(1, 3)], &x, 1, 4), Err(Error::Precondition(_))));
    }

    #[test]
    fn case1_examples() {
        let y = [ratio(1, 2)];
        assert!(verify_case1_minor(&y, &t(5), &Partition::empty(), &Partition::empty(), 1, 5).unwrap());
        assert!(verify_case1_minor(&y, &t(5), &Partition::empty(), &p(&[1]), 2, 5).unwrap());
        assert!(verify_case1_minor(&y, &t(5), &p(&[1]), &p(&[1]), 2, 5).unwrap());
        let x = Specialization::graded(vec![rat(1), ratio(1, 2)], 5);
        for n in 3..=4 {
            assert!(verify_case1_minor(&[ratio(1, 2), ratio(-1, 3)], &x, &p(&[2, 1]), &p(&[1]), n, 5).unwrap());
        }
    }

    #[test]
    fn case1_fails_below_threshold() {
        // N = d is not enough once μ ≠ ∅
        let x = Specialization::graded(vec![rat(1), rat(1)], 4);
        let (lhs, rhs) = case1_sides(&[ratio(1, 2)], &x, &Partition::empty(), &p(&[1]), 1, 4).unwrap();
        assert!(!lhs.agrees_to(&rhs, 4));
        assert!(matches!(
            verify_case1_minor(&[ratio(1, 2)], &x, &Partition::empty(), &p(&[1]), 1, 4),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn minor_sum_over_nu() {
        // D_N^{λ,μ}(H(y;z^{-1})H(x;z)) = Σ_{l(ν)≤N} s_{ν/μ}(y) s_{ν/λ}(x), graded both sides
        let x = Specialization::graded(vec![rat(1), ratio(1, 2)], 6);
        let y = Specialization::graded(vec![ratio(1, 3), rat(1)], 6);
        let f = SymbolSpec::hh(x.clone(), y.clone());
        for (lam, mu) in [(p(&[1]), p(&[1])), (p(&[2]), p(&[1, 1])), (Partition::empty(), p(&[2, 1]))] {
            for n in 2..=3usize {
                let lhs = minor_determinant(&f, n, &lam, &mu).unwrap();
                let mut rhs = Scalar::Series(TruncatedSeries::zero(6));
                for nu in partitions_up_to(9).into_iter().filter(|nu| nu.len() <= n) {
                    rhs = &rhs + &(&skew_schur(&nu, &mu, &y, Basis::H).unwrap() * &skew_schur(&nu, &lam, &x, Basis::H).unwrap());
                }
                assert!(lhs.agrees_to(&rhs, 6), "{lam} {mu} N={n}");
            }
        }
    }

    #[test]
    fn ee_schur_examples() {
        let half = Specialization::rationals(&[ratio(1, 2)]);
        assert!(verify_ee_schur(&[rat(1)], &half, &Partition::empty(), &Partition::empty(), 2).unwrap());
        let d2 = toeplitz_determinant(&SymbolSpec::Tridiagonal { x: Scalar::frac(1, 2), y: Scalar::one() }, 2).unwrap();
        assert_eq!(d2, Scalar::frac(7, 4));
        for n in 1..=4 {
            assert!(verify_ee_schur(&[rat(1)], &Specialization::empty(), &Partition::empty(), &Partition::empty(), n).unwrap());
        }
        assert!(verify_ee_schur(&[rat(1)], &Specialization::ones(1), &p(&[1]), &p(&[1]), 2).unwrap());
        assert!(verify_ee_schur(&[rat(0)], &Specialization::ones(1), &p(&[1]), &p(&[1]), 2).is_err());
    }

    #[test]
    fn ee_schur_grid() {
        let ys: [&[Rational]; 2] = [&[ratio(1, 2)], &[ratio(2, 3), rat(-3)]];
        let x = Specialization::rationals(&[ratio(1, 2), rat(3)]);
        for y in ys {
            for n in 1..=3usize {
                for wl in 0..=3 {
                    for lam in partitions_of(wl).into_iter().filter(|l| l.len() <= n) {
                        for wm in 0..=3 {
                            for mu in partitions_of(wm).into_iter().filter(|m| m.len() <= n) {
                                assert!(verify_ee_schur(y, &x, &lam, &mu, n).unwrap(), "y={y:?} N={n} {lam} {mu}");
                            }
                        }
                    }
                }
            }
        }
    }
}
