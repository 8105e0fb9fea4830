//! Monic biorthogonal polynomial pairs on the unit circle and the kernel
//! whose coefficients invert the Toeplitz matrix.
//!
//! Pairing: ⟨p, q⟩_f = CT[p(z)·q(z^{-1})·f(z)], so ⟨z^a, z^b⟩ = d_{b−a}.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::{q_binomial, q_gamma, q_pochhammer, Scalar};
use crate::symbols::{fourier_window, SymbolSpec};

#[derive(Clone, Debug)]
pub struct BiorthogonalPair {
    /// Coefficients of p̂_j, constant term first; the last is 1.
    pub p: Vec<Scalar>,
    /// Coefficients of q̂_j, constant term first; the last is 1.
    pub q: Vec<Scalar>,
    /// ⟨p̂_j, q̂_j⟩_f = D_{j+1}/D_j.
    pub norm2: Scalar,
}

impl BiorthogonalPair {
    pub fn degree(&self) -> usize {
        self.p.len() - 1
    }

    pub fn agrees(&self, other: &BiorthogonalPair) -> bool {
        let same = |a: &[Scalar], b: &[Scalar]| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.agrees(y));
        same(&self.p, &other.p) && same(&self.q, &other.q) && self.norm2.agrees(&other.norm2)
    }

    pub fn to_json(&self) -> Value {
        let list = |v: &[Scalar]| Value::Array(v.iter().map(Scalar::to_json).collect());
        json!({"p": list(&self.p), "q": list(&self.q), "norm2": self.norm2.to_json()})
    }
}

/// c_{jk} = coefficient of z^j ω^{−k} in K_N, 0-based.
#[derive(Clone, Debug)]
pub struct KernelCoefficients {
    pub c: ExactMatrix,
}

impl KernelCoefficients {
    pub fn get(&self, j: usize, k: usize) -> &Scalar {
        self.c.get(j, k)
    }

    pub fn agrees(&self, other: &KernelCoefficients) -> bool {
        self.c.agrees(&other.c)
    }
}

/// Cofactor expansion along the bordered line: the coefficient of z^r is the
/// signed minor with column (row) r removed.
pub fn bordered_pair(f: &SymbolSpec, j: usize) -> Result<BiorthogonalPair> {
    let window = fourier_window(f, -(j as i64), j as i64 + 1)?;
    let d = |k: i64| window.get(k).cloned().unwrap_or_else(Scalar::zero);
    let t = |n: usize| ExactMatrix::from_fn(n, n, |a, b| d(a as i64 - b as i64));
    let dj = t(j).determinant()?;
    if dj.is_zero() {
        return Err(Error::NotInvertible(format!("D_{j} vanishes")));
    }
    let dj1 = t(j + 1).determinant()?;
    if dj1.is_zero() {
        return Err(Error::NotInvertible(format!("D_{} vanishes", j + 1)));
    }
    // rows 0..j of T_{j+1} with the last row replaced by monomials
    let top = ExactMatrix::from_fn(j, j + 1, |a, b| d(a as i64 - b as i64));
    let left = ExactMatrix::from_fn(j + 1, j, |a, b| d(a as i64 - b as i64));
    let sign = |r: usize| if (j + r).is_multiple_of(2) { Scalar::one() } else { Scalar::int(-1) };
    let mut p = Vec::with_capacity(j + 1);
    let mut q = Vec::with_capacity(j + 1);
    for r in 0..=j {
        let cols: Vec<usize> = (0..=j).filter(|&c| c != r).collect();
        let rows: Vec<usize> = (0..j).collect();
        let mp = top.select(&rows, &cols).determinant()?;
        p.push((&sign(r) * &mp).div(&dj)?);
        let rws: Vec<usize> = (0..=j).filter(|&c| c != r).collect();
        let cls: Vec<usize> = (0..j).collect();
        let mq = left.select(&rws, &cls).determinant()?;
        q.push((&sign(r) * &mq).div(&dj)?);
    }
    Ok(BiorthogonalPair { p, q, norm2: dj1.div(&dj)? })
}

fn monic(v: Vec<Scalar>) -> Result<Vec<Scalar>> {
    let lead = v.last().cloned().ok_or_else(|| Error::domain("empty polynomial"))?;
    v.iter().map(|c| c.div(&lead)).collect()
}

fn sign(e: usize) -> Scalar {
    if e.is_multiple_of(2) {
        Scalar::one()
    } else {
        Scalar::int(-1)
    }
}

/// Closed-form pair for Θ_{γ,δ}, renormalized to monic.
pub fn closed_pair_theta(gamma: u32, delta: u32, j: usize, q: &Scalar) -> Result<BiorthogonalPair> {
    if gamma == 0 || delta == 0 {
        return Err(Error::domain("closed_pair_theta needs positive gamma and delta"));
    }
    let (g, d) = (gamma as u64, delta as u64);
    let jj = j as u64;
    let poch = |k: u64| q_pochhammer(k, q);
    let mut p = Vec::with_capacity(j + 1);
    let mut qs = Vec::with_capacity(j + 1);
    for r in 0..=jj {
        let b = &sign((jj + r) as usize) * &q_binomial(j as i64, r as i64, q)?;
        let pa = (&poch(g + r) * &poch(d + jj - r - 1)).div(&(&poch(g + jj) * &poch(d - 1)))?;
        p.push(&b * &pa);
        let qa = (&poch(g + jj - r - 1) * &poch(d + r)).div(&(&poch(g - 1) * &poch(d + jj)))?;
        qs.push(&(&b * &qa) * &q.pow((jj - r) as i64)?);
    }
    let norm2 = (&poch(jj) * &poch(d + g + jj)).div(&(&poch(d + jj) * &poch(g + jj)))?;
    Ok(BiorthogonalPair { p: monic(p)?, q: monic(qs)?, norm2 })
}

/// Closed-form pair for Θ_δ (series q only), renormalized to monic.
pub fn closed_pair_theta_d(delta: u32, j: usize, q: &Scalar) -> Result<BiorthogonalPair> {
    if !q.is_series() {
        return Err(Error::domain("closed_pair_theta_d needs q as a truncated series"));
    }
    if delta == 0 {
        return Err(Error::domain("closed_pair_theta_d needs positive delta"));
    }
    let d = delta as i64;
    let jj = j as i64;
    let poch = |k: i64| q_pochhammer(k as u64, q);
    let mut p = Vec::with_capacity(j + 1);
    let mut qs = Vec::with_capacity(j + 1);
    for r in 0..=jj {
        let b = &sign((jj + r) as usize) * &q_binomial(jj, r, q)?;
        let pa = poch(d + jj - r - 1).div(&poch(d - 1))?;
        p.push(&(&b * &pa) * &q.pow(-(d - 1) * (jj - r))?);
        qs.push(&(&b * &poch(d + r)) * &q.pow(d * (jj - r))?);
    }
    let norm2 = poch(jj).div(&poch(d + jj))?;
    Ok(BiorthogonalPair { p: monic(p)?, q: monic(qs)?, norm2 })
}

/// c_{jk} = Σ_{r=max(j,k)}^{N−1} a_j^{(r)} b_k^{(r)} / norm2_r from the
/// bordered pairs.
pub fn kernel_coefficients(f: &SymbolSpec, n: usize) -> Result<KernelCoefficients> {
    let pairs: Vec<BiorthogonalPair> = (0..n).map(|r| bordered_pair(f, r)).collect::<Result<_>>()?;
    kernel_from_pairs(&pairs)
}

pub fn kernel_from_pairs(pairs: &[BiorthogonalPair]) -> Result<KernelCoefficients> {
    let n = pairs.len();
    let c = ExactMatrix::try_from_fn(n, n, |j, k| {
        let mut acc = Scalar::zero();
        for pr in &pairs[j.max(k)..] {
            acc = &acc + &(&pr.p[j] * &pr.q[k]).div(&pr.norm2)?;
        }
        Ok(acc)
    })?;
    Ok(KernelCoefficients { c })
}

/// Closed kernel for Θ_{γ,δ}: entries of T_N(Θ_{γ,δ})^{-1}.
pub fn kernel_closed_theta(gamma: u32, delta: u32, n: usize, q: &Scalar) -> Result<KernelCoefficients> {
    if gamma == 0 || delta == 0 {
        return Err(Error::domain("kernel_closed_theta needs positive gamma and delta"));
    }
    let (g, d) = (gamma as i64, delta as i64);
    let gq = |x: i64| q_gamma(x, q);
    let c = ExactMatrix::try_from_fn(n, n, |a, b| {
        let (j, k) = (a as i64, b as i64);
        let mut acc = Scalar::zero();
        for r in j.max(k)..n as i64 {
            let num = &(&gq(g + j + 1)? * &gq(d + k + 1)?) * &gq(r + 1)?;
            let den = &(&gq(j + 1)? * &gq(k + 1)?) * &gq(g + d + r + 1)?;
            let bin = &q_binomial(g + r - k - 1, r - k, q)? * &q_binomial(d + r - j - 1, r - j, q)?;
            acc = &acc + &(&(&q.pow(r - k)? * &num.div(&den)?) * &bin);
        }
        Ok(&sign((j + k) as usize) * &acc)
    })?;
    Ok(KernelCoefficients { c })
}

/// Closed kernel for Θ_δ (series q only).
pub fn kernel_closed_theta_d(delta: u32, n: usize, q: &Scalar) -> Result<KernelCoefficients> {
    if !q.is_series() {
        return Err(Error::domain("kernel_closed_theta_d needs q as a truncated series"));
    }
    let d = delta as i64;
    let c = ExactMatrix::try_from_fn(n, n, |a, b| {
        let (j, k) = (a as i64, b as i64);
        let pre = q_pochhammer((d + k) as u64, q).div(&q_pochhammer(j as u64, q))?;
        let mut acc = Scalar::zero();
        for r in j.max(k)..n as i64 {
            let bin = &q_binomial(r, r - k, q)? * &q_binomial(d + r - j - 1, r - j, q)?;
            acc = &acc + &(&q.pow(r + (d - 1) * j - d * k)? * &bin);
        }
        Ok(&sign((j + k) as usize) * &(&pre * &acc))
    })?;
    Ok(KernelCoefficients { c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::pairing;
    use crate::scalar::{rat, ratio};
    use crate::symfunc::Specialization;
    use crate::toeplitz::exact_inverse;

    fn half() -> Scalar {
        Scalar::frac(1, 2)
    }

    fn builtins() -> Vec<SymbolSpec> {
        let mut out = Vec::new();
        for g in 1..=3 {
            for d in 1..=3 {
                out.push(SymbolSpec::PureFH { gamma: g, delta: d });
                out.push(SymbolSpec::ThetaGD { gamma: g, delta: d, q: half() });
            }
        }
        out.push(SymbolSpec::Tridiagonal { x: Scalar::frac(1, 3), y: Scalar::frac(-2, 5) });
        out.push(SymbolSpec::ee(
            Specialization::rationals(&[ratio(1, 3), rat(2)]),
            Specialization::rationals(&[ratio(-1, 2)]),
        ));
        out
    }

    #[test]
    fn bordered_examples() {
        let f = SymbolSpec::PureFH { gamma: 1, delta: 1 };
        let p0 = bordered_pair(&f, 0).unwrap();
        assert_eq!(p0.p, vec![Scalar::one()]);
        assert_eq!(p0.q, vec![Scalar::one()]);
        assert_eq!(p0.norm2, Scalar::int(2));
        let p1 = bordered_pair(&f, 1).unwrap();
        assert_eq!(p1.p, vec![Scalar::frac(-1, 2), Scalar::one()]);
        let t = SymbolSpec::ThetaGD { gamma: 1, delta: 1, q: half() };
        let p1 = bordered_pair(&t, 1).unwrap();
        let p0 = bordered_pair(&t, 0).unwrap();
        assert_eq!(p1.degree(), 1);
        assert_eq!(p1.p[1], Scalar::one());
        assert_eq!(p1.q[1], Scalar::one());
        assert_eq!(pairing(&t, &p1.p, &p0.q).unwrap(), Scalar::zero());
        assert_eq!(pairing(&t, &p0.p, &p1.q).unwrap(), Scalar::zero());
        let zero = SymbolSpec::Tridiagonal { x: Scalar::int(-1), y: Scalar::one() };
        assert!(matches!(bordered_pair(&zero, 1), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn biorthogonality() {
        for f in builtins() {
            let pairs: Vec<_> = (0..=3).map(|j| bordered_pair(&f, j).unwrap()).collect();
            for (j, a) in pairs.iter().enumerate() {
                for (k, b) in pairs.iter().enumerate() {
                    let v = pairing(&f, &a.p, &b.q).unwrap();
                    let want = if j == k { a.norm2.clone() } else { Scalar::zero() };
                    assert_eq!(v, want, "{f:?} {j} {k}");
                }
            }
        }
        let qs = Scalar::formal(8);
        for d in 1..=3 {
            let f = SymbolSpec::ThetaD { delta: d, q: qs.clone() };
            let pairs: Vec<_> = (0..=3).map(|j| bordered_pair(&f, j).unwrap()).collect();
            for (j, a) in pairs.iter().enumerate() {
                for (k, b) in pairs.iter().enumerate() {
                    let v = pairing(&f, &a.p, &b.q).unwrap();
                    let want = if j == k { a.norm2.clone() } else { Scalar::zero() };
                    assert!(v.agrees(&want), "theta_d {d} {j} {k}");
                }
            }
        }
    }

    #[test]
    fn closed_theta_pairs() {
        let q = half();
        let p0 = closed_pair_theta(1, 1, 0, &q).unwrap();
        assert_eq!(p0.p, vec![Scalar::one()]);
        assert_eq!(p0.norm2, Scalar::frac(3, 2));
        for g in 1..=3 {
            for d in 1..=3 {
                let f = SymbolSpec::ThetaGD { gamma: g, delta: d, q: q.clone() };
                for j in 0..=3 {
                    let closed = closed_pair_theta(g, d, j, &q).unwrap();
                    assert!(closed.agrees(&bordered_pair(&f, j).unwrap()), "{g} {d} {j}");
                }
            }
        }
        let eps = Scalar::one_minus_eps(4);
        let fh = SymbolSpec::PureFH { gamma: 1, delta: 1 };
        for j in 0..=2 {
            let closed = closed_pair_theta(1, 1, j, &eps).unwrap();
            let plain = bordered_pair(&fh, j).unwrap();
            for (a, b) in closed.p.iter().zip(&plain.p).chain(closed.q.iter().zip(&plain.q)) {
                assert_eq!(Scalar::Rational(a.constant_term()), *b);
            }
            assert_eq!(Scalar::Rational(closed.norm2.constant_term()), plain.norm2);
        }
        assert!(closed_pair_theta(0, 1, 1, &q).is_err());
    }

    #[test]
    fn closed_theta_d_pairs() {
        let q = Scalar::formal(8);
        let p0 = closed_pair_theta_d(1, 0, &q).unwrap();
        assert!(p0.norm2.agrees(&(Scalar::one() - q.clone()).inv().unwrap()));
        for d in 1..=3 {
            let f = SymbolSpec::ThetaD { delta: d, q: q.clone() };
            for j in 0..=3 {
                let closed = closed_pair_theta_d(d, j, &q).unwrap();
                assert!(closed.agrees(&bordered_pair(&f, j).unwrap()), "{d} {j}");
            }
        }
        let f = SymbolSpec::ThetaD { delta: 1, q: q.clone() };
        let (a, b) = (closed_pair_theta_d(1, 1, &q).unwrap(), closed_pair_theta_d(1, 0, &q).unwrap());
        assert!(pairing(&f, &a.p, &b.q).unwrap().agrees(&Scalar::zero()));
        assert!(closed_pair_theta_d(1, 1, &half()).is_err());
    }

    #[test]
    fn kernel_examples() {
        let t = SymbolSpec::ThetaGD { gamma: 1, delta: 1, q: half() };
        let k = kernel_coefficients(&t, 1).unwrap();
        assert_eq!(*k.get(0, 0), Scalar::frac(2, 3));
        let fh = SymbolSpec::PureFH { gamma: 1, delta: 1 };
        let k = kernel_coefficients(&fh, 2).unwrap();
        let want = ExactMatrix::from_rows(vec![
            vec![Scalar::frac(2, 3), Scalar::frac(-1, 3)],
            vec![Scalar::frac(-1, 3), Scalar::frac(2, 3)],
        ])
        .unwrap();
        assert!(k.c.agrees(&want));
        let t = SymbolSpec::ThetaGD { gamma: 1, delta: 2, q: half() };
        assert!(kernel_coefficients(&t, 2).unwrap().c.agrees(&exact_inverse(&t, 2).unwrap()));
    }

    #[test]
    fn kernel_is_the_inverse() {
        for f in builtins() {
            for n in 1..=4 {
                let k = kernel_coefficients(&f, n).unwrap();
                assert!(k.c.agrees(&exact_inverse(&f, n).unwrap()), "{f:?} {n}");
            }
        }
        let qs = Scalar::formal(6);
        for d in 1..=2 {
            let f = SymbolSpec::ThetaD { delta: d, q: qs.clone() };
            for n in 1..=3 {
                assert!(kernel_coefficients(&f, n).unwrap().c.agrees(&exact_inverse(&f, n).unwrap()));
            }
        }
    }

    #[test]
    fn closed_kernels() {
        let q = half();
        assert_eq!(*kernel_closed_theta(1, 1, 1, &q).unwrap().get(0, 0), Scalar::frac(2, 3));
        for g in 1..=3 {
            for d in 1..=3 {
                let f = SymbolSpec::ThetaGD { gamma: g, delta: d, q: q.clone() };
                for n in 1..=4 {
                    assert!(kernel_closed_theta(g, d, n, &q).unwrap().agrees(&kernel_coefficients(&f, n).unwrap()), "{g} {d} {n}");
                }
            }
        }
        let qs = Scalar::formal(8);
        let k = kernel_closed_theta_d(1, 1, &qs).unwrap();
        assert!(k.get(0, 0).agrees(&(Scalar::one() - qs.clone())));
        for d in 1..=3 {
            let f = SymbolSpec::ThetaD { delta: d, q: qs.clone() };
            for n in 1..=3 {
                assert!(kernel_closed_theta_d(d, n, &qs).unwrap().agrees(&kernel_coefficients(&f, n).unwrap()), "{d} {n}");
            }
        }
    }

    #[test]
    fn hermitian_pairs_coincide() {
        for g in 1..=2 {
            let f = SymbolSpec::PureFH { gamma: g, delta: g };
            for j in 0..=3 {
                let pr = bordered_pair(&f, j).unwrap();
                assert_eq!(pr.p, pr.q);
            }
        }
    }
}
