//! Closed-form bounds and spectra, in exact integer and rational arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::FormKind;

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn pow(q: u32, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(q), e as usize)
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn into_integer(r: BigRational, what: &str) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NonIntegerMultiplicity(format!("{what} = {r}")))
    }
}

fn check_q(q: u32) -> Result<()> {
    if crate::field::prime_power(q).is_none() {
        return Err(Error::BadParams(format!("{q} is not a prime power")));
    }
    Ok(())
}

/// Largest size of an additive `d`-code.
pub fn additive_bound(kind: FormKind, n: u32, d: u32, q: u32) -> Result<BigInt> {
    if d < 1 || d > n {
        return Err(Error::BadParams(format!("need 1 <= d <= n, got d={d}, n={n}")));
    }
    Ok(match kind {
        FormKind::Sym if (n - d) % 2 == 0 => pow(q, n * (n - d + 2) / 2),
        FormKind::Sym => pow(q, (n + 1) * (n - d + 1) / 2),
        FormKind::Herm => pow(q, n * (n - d + 1)),
    })
}

/// Distinct eigenvalues of a graph with their multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<BigRational>,
    pub multiplicities: Vec<BigInt>,
    pub vertices: BigInt,
    pub valency: BigRational,
    pub source: String,
}

impl SpectrumReport {
    /// `Σ mᵢ λᵢᵏ`.
    pub fn moment(&self, k: u32) -> BigRational {
        self.eigenvalues
            .iter()
            .zip(&self.multiplicities)
            .map(|(l, m)| num_traits::pow(l.clone(), k as usize) * BigRational::from_integer(m.clone()))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// The three identities every adjacency spectrum satisfies.
    pub fn check_moments(&self) -> Result<()> {
        let v = BigRational::from_integer(self.vertices.clone());
        let expected = [v.clone(), BigRational::zero(), v * &self.valency];
        for (k, e) in expected.iter().enumerate() {
            let got = self.moment(k as u32);
            if got != *e {
                return Err(Error::VerificationFailed(format!("{}: moment {k} is {got}, expected {e}", self.source)));
            }
        }
        Ok(())
    }

    pub fn least(&self) -> BigRational {
        self.eigenvalues.iter().min().cloned().expect("nonempty spectrum")
    }

    /// `min(#{λ ≥ 0}, #{λ ≤ 0})` counted with multiplicity.
    pub fn cvetkovic(&self) -> BigInt {
        let mut nonneg = BigInt::zero();
        let mut nonpos = BigInt::zero();
        for (l, m) in self.eigenvalues.iter().zip(&self.multiplicities) {
            if !l.is_negative() {
                nonneg += m;
            }
            if !l.is_positive() {
                nonpos += m;
            }
        }
        nonneg.min(nonpos)
    }

    /// `−|V| λ_min / (k − λ_min)`.
    pub fn hoffman(&self) -> BigRational {
        let l = self.least();
        let v = BigRational::from_integer(self.vertices.clone());
        -(v * &l) / (&self.valency - &l)
    }
}

impl fmt::Display for SpectrumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.eigenvalues.iter().zip(&self.multiplicities).map(|(l, m)| format!("{l}^{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn rpow(q: u32, e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(pow(q, e as u32))
    } else {
        BigRational::new(BigInt::one(), pow(q, (-e) as u32))
    }
}

/// Eigenvalue `θ_j` of the dual polar graph of W(2n−1,q).
pub fn theta(n: u32, q: u32, j: u32) -> BigRational {
    let e = n as i64 - 2 * j as i64 + 1;
    BigRational::from_integer(pow(q, j)) * (rpow(q, e) - BigRational::one())
        / BigRational::from_integer(int(q as i64 - 1))
        - BigRational::one()
}

/// Multiplicity `f_j` of `θ_j`.
pub fn f_mult(n: u32, q: u32, j: u32) -> Result<BigInt> {
    let e = n as i64 - 2 * j as i64 + 1;
    let mut r = BigRational::from_integer(pow(q, j)) * (rpow(q, e) + BigRational::one())
        / BigRational::from_integer(pow(q, n - j + 1) + 1);
    for i in 1..=j {
        r *= ratio(pow(q, 2 * (n - i + 1)) - 1, (pow(q, i) - 1) * (pow(q, i - 1) + 1));
    }
    into_integer(r, &format!("f_{j}({n},{q})"))
}

/// Eigenvalue `λ_j` of the dual polar graph of H(2n−1,q²).
pub fn lambda(n: u32, q: u32, j: u32) -> BigRational {
    let e = 2 * n as i64 - 4 * j as i64 + 1;
    BigRational::from_integer(pow(q, 2 * j)) * (rpow(q, e) - BigRational::one())
        / BigRational::from_integer(pow(q, 2) - 1)
        - ratio(int(1), int(q as i64 + 1))
}

/// Multiplicity `g_j` of `λ_j`.
pub fn g_mult(n: u32, q: u32, j: u32) -> Result<BigInt> {
    let e = 2 * n as i64 - 4 * j as i64 + 1;
    let mut r = BigRational::from_integer(pow(q, 2 * j)) * (rpow(q, e) + BigRational::one())
        / BigRational::from_integer(pow(q, 2 * n - 2 * j + 1) + 1);
    for i in 1..=j {
        r *= ratio(
            (pow(q, 2 * n - 2 * i + 2) - 1) * (pow(q, 2 * n - 2 * i + 1) + 1),
            (pow(q, 2 * i) - 1) * (pow(q, 2 * i - 1) + 1),
        );
    }
    into_integer(r, &format!("g_{j}({n},{q})"))
}

/// Spectrum of the graph on generators of W(2n−1,q), adjacent when meeting in
/// an `(n−2)`-space.
pub fn gamma_w_spectrum(n: u32, q: u32) -> Result<SpectrumReport> {
    if n < 1 {
        return Err(Error::BadParams("n must be positive".into()));
    }
    check_q(q)?;
    let eigenvalues = (0..=n).map(|j| theta(n, q, j)).collect();
    let multiplicities = (0..=n).map(|j| f_mult(n, q, j)).collect::<Result<_>>()?;
    let vertices = (1..=n).map(|i| pow(q, i) + 1).product();
    let report = SpectrumReport {
        eigenvalues,
        multiplicities,
        vertices,
        valency: theta(n, q, 0),
        source: format!("gamma_w({n},{q})"),
    };
    Ok(report)
}

/// Spectrum of the graph on generators of H(2n−1,q²).
pub fn gamma_h_spectrum(n: u32, q: u32) -> Result<SpectrumReport> {
    if n < 1 {
        return Err(Error::BadParams("n must be positive".into()));
    }
    check_q(q)?;
    let eigenvalues = (0..=n).map(|j| lambda(n, q, j)).collect();
    let multiplicities = (0..=n).map(|j| g_mult(n, q, j)).collect::<Result<_>>()?;
    let vertices = (1..=n).map(|i| pow(q, 2 * i - 1) + 1).product();
    Ok(SpectrumReport {
        eigenvalues,
        multiplicities,
        vertices,
        valency: lambda(n, q, 0),
        source: format!("gamma_h({n},{q})"),
    })
}

/// Upper bound on sets of generators pairwise meeting in at most an
/// `(n−3)`-space, from the sign pattern of the dual polar graph spectrum.
pub fn cvetkovic_bound(kind: FormKind, n: u32, q: u32) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::BadParams("n must be at least 2".into()));
    }
    check_q(q)?;
    Ok(match (kind, n % 2) {
        (FormKind::Sym, 1) => (0..=(n - 1) / 2).map(|j| f_mult(n, q, j)).sum::<Result<BigInt>>()?,
        (FormKind::Sym, _) => (2..=n).map(|i| pow(q, i) + 1).product(),
        (FormKind::Herm, 1) => (0..=(n - 1) / 2).map(|j| g_mult(n, q, j)).sum::<Result<BigInt>>()?,
        (FormKind::Herm, _) => (n / 2 + 1..=n).map(|j| g_mult(n, q, j)).sum::<Result<BigInt>>()?,
    })
}

/// Hoffman bound of the W(2n−1,q) dual polar graph, as an exact rational.
pub fn hoffman_gamma_w(n: u32, q: u32) -> Result<BigRational> {
    Ok(gamma_w_spectrum(n, q)?.hoffman())
}

/// Bound on 2-codes of `S_{3,q}` from the second subconstituent.
pub fn upper_sym3(q: u32) -> BigInt {
    let q = int(q as i64);
    &q * (&q * &q - 1) * (&q * &q + &q + 1) / 2 + 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMatrix {
    pub b: Vec<Vec<i64>>,
    pub q: u32,
}

impl QuotientMatrix {
    pub fn size(&self) -> usize {
        self.b.len()
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.b.iter().map(|r| r.iter().sum()).collect()
    }

    /// Integer eigenvalues with algebraic multiplicity, descending.
    pub fn eigenvalues(&self) -> Result<Vec<(i64, usize)>> {
        let poly = char_poly(&self.b);
        let bound = self.b.iter().map(|r| r.iter().map(|x| x.abs()).sum::<i64>()).max().unwrap_or(0);
        integer_roots(&poly, bound)
    }
}

/// Quotient matrix of the orbit partition of the second subconstituent of
/// the W(5,q) dual polar graph: 5×5 for even `q`, 7×7 for odd `q`.
pub fn quotient_matrix_w5(q: u32) -> Result<QuotientMatrix> {
    check_q(q)?;
    let q = q as i64;
    let (q2, q3) = (q * q, q * q * q);
    let b = if q % 2 == 0 {
        vec![
            vec![0, q3 - 1, 0, 0, 0],
            vec![1, q - 2, 0, q3 - q, 0],
            vec![0, 0, 0, q2 - 1, q2 * (q - 1)],
            vec![0, q, 1, q2 - q - 2, q2 * (q - 1)],
            vec![0, 0, 1, q2 - 1, q3 - q2 - 1],
        ]
    } else {
        let h = |x: i64| x / 2;
        let c = h(q2 * (q - 1));
        vec![
            vec![0, h(q3 - 1), h(q3 - 1), 0, 0, 0, 0],
            vec![1, h(q - 3), h(q - 1), h(q3 - q), h(q3 - q), 0, 0],
            vec![1, h(q - 1), h(q - 3), h(q3 - q), h(q3 - q), 0, 0],
            vec![0, h(q + 1), h(q + 1), h((q - 3) * (q + 1)), h(q2 - 1), c, c],
            vec![0, h(q - 1), h(q - 1), h((q - 1) * (q - 1)), h(q2 - 1), c, c],
            vec![0, 0, 0, h(q * (q - 1)), h(q * (q + 1)), c - 1, c],
            vec![0, 0, 0, h(q * (q - 1)), h(q * (q + 1)), c, c - 1],
        ]
    };
    Ok(QuotientMatrix { b, q: q as u32 })
}

/// Coefficients `c₀..c_n` of `det(xI − M)`, lowest degree first (Faddeev–LeVerrier).
pub fn char_poly(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n = m.len();
    let a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let mul = |x: &Vec<Vec<BigInt>>, y: &Vec<Vec<BigInt>>| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum()).collect())
            .collect()
    };
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1} I
        let mut next = mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let am = mul(&a, &next);
        let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let (c, r) = (-tr).div_rem(&int(k as i64));
        debug_assert!(r.is_zero());
        coeffs[n - k] = c;
        mk = next;
    }
    coeffs
}

fn eval(poly: &[BigInt], x: i64) -> BigInt {
    let x = int(x);
    poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

fn deflate(poly: &[BigInt], root: i64) -> Vec<BigInt> {
    // synthetic division by (x − root)
    let r = int(root);
    let n = poly.len() - 1;
    let mut out = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for i in (1..=n).rev() {
        carry = &poly[i] + &carry * &r;
        out[i - 1] = carry.clone();
    }
    out
}

/// All roots of `poly` when they are integers of absolute value at most `bound`.
pub fn integer_roots(poly: &[BigInt], bound: i64) -> Result<Vec<(i64, usize)>> {
    let mut p = poly.to_vec();
    let mut out = Vec::new();
    for x in (-bound..=bound).rev() {
        let mut mult = 0;
        while p.len() > 1 && eval(&p, x).is_zero() {
            p = deflate(&p, x);
            mult += 1;
        }
        if mult > 0 {
            out.push((x, mult));
        }
    }
    if p.len() > 1 {
        return Err(Error::NonIntegralRoot);
    }
    Ok(out)
}

/// Solves the three moment equations for the multiplicities of the three
/// nontrivial eigenvalues, given the trivial one with multiplicity 1.
fn solve_moment_system(vertices: &BigInt, valency: i64, others: [i64; 3]) -> Result<[BigInt; 3]> {
    let k = int(valency);
    let v = BigRational::from_integer(vertices.clone());
    let mut a: Vec<Vec<BigRational>> = (0..3)
        .map(|p| {
            let mut row: Vec<BigRational> =
                others.iter().map(|&l| BigRational::from_integer(num_traits::pow(int(l), p))).collect();
            let rhs = match p {
                0 => &v - BigRational::one(),
                1 => -BigRational::from_integer(k.clone()),
                _ => &v * BigRational::from_integer(k.clone()) - BigRational::from_integer(&k * &k),
            };
            row.push(rhs);
            row
        })
        .collect();
    for c in 0..3 {
        let piv = (c..3)
            .find(|&r| !a[r][c].is_zero())
            .ok_or_else(|| Error::InconsistentSystem("singular moment system".into()))?;
        a.swap(c, piv);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..3 {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..4 {
                    let t = &a[c][j] * &f;
                    a[r][j] -= t;
                }
            }
        }
    }
    let mut out = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for i in 0..3 {
        if !a[i][3].is_integer() || a[i][3].is_negative() {
            return Err(Error::InconsistentSystem(format!("multiplicity {} is not a count", a[i][3])));
        }
        out[i] = a[i][3].to_integer();
    }
    Ok(out)
}

/// Spectrum of the second subconstituent of the W(5,q) dual polar graph
/// (the graph on `S_{3,q}` with rank-1 differences as edges), cross-checked
/// against the moment equations and the quotient matrix.
pub fn second_subconstituent_spectrum(q: u32) -> Result<SpectrumReport> {
    check_q(q)?;
    let qi = q as i64;
    let (q2, q3) = (qi * qi, qi * qi * qi);
    let eig = [q3 - 1, q2 - 1, -1, -q2 - 1];
    let q3m = int(q3 - 1);
    let mults = vec![
        BigInt::one(),
        int(qi * (qi + 1)) * &q3m / 2,
        &q3m * int(q3 - q2 + 1),
        int(qi * (qi - 1)) * &q3m / 2,
    ];
    let vertices = pow(q, 6);
    let solved = solve_moment_system(&vertices, q3 - 1, [eig[1], eig[2], eig[3]])?;
    if solved[..] != mults[1..] {
        return Err(Error::InconsistentSystem(format!("moment solution {solved:?} disagrees with closed forms")));
    }
    let quotient = quotient_matrix_w5(q)?;
    let mut qe: Vec<i64> = quotient.eigenvalues()?.into_iter().map(|(l, _)| l).collect();
    qe.sort_unstable();
    let mut expected = eig.to_vec();
    expected.sort_unstable();
    if qe != expected {
        return Err(Error::InconsistentSystem(format!("quotient eigenvalues {qe:?}")));
    }
    let report = SpectrumReport {
        eigenvalues: eig.iter().map(|&l| BigRational::from_integer(int(l))).collect(),
        multiplicities: mults,
        vertices,
        valency: BigRational::from_integer(q3m),
        source: format!("second_subconstituent_w5({q})"),
    };
    report.check_moments()?;
    Ok(report)
}

/// Spectrum of the Hermitian forms graph on `H_{n,q²}` and its Hoffman bound,
/// which must equal `q^{(n−1)²}(q^{2n−1}+1)/(q+1)`.
pub fn hermitian_forms_graph_bounds(n: u32, q: u32) -> Result<(SpectrumReport, BigInt)> {
    if n < 2 {
        return Err(Error::BadParams("n must be at least 2".into()));
    }
    check_q(q)?;
    let mq = -int(q as i64);
    let mpow = |e: u32| num_traits::pow(mq.clone(), e as usize);
    let mut eigenvalues = Vec::new();
    let mut multiplicities = Vec::new();
    for j in 0..=n {
        eigenvalues.push(ratio(mpow(2 * n - j) - 1, int(q as i64 + 1)));
        let mut m = BigRational::one();
        for i in 1..=j {
            m *= ratio(mpow(n + 1 - i) - 1, mpow(i) - 1);
        }
        for i in 0..j {
            m *= BigRational::from_integer(-mpow(n) - mpow(i));
        }
        multiplicities.push(into_integer(m, &format!("hermitian forms multiplicity {j}"))?);
    }
    let report = SpectrumReport {
        valency: eigenvalues[0].clone(),
        eigenvalues,
        multiplicities,
        vertices: pow(q, n * n),
        source: format!("hermitian_forms({n},{q})"),
    };
    report.check_moments()?;
    let hoffman = report.hoffman();
    let closed = ratio(pow(q, (n - 1) * (n - 1)) * (pow(q, 2 * n - 1) + 1), int(q as i64 + 1));
    if hoffman != closed {
        return Err(Error::VerificationFailed(format!("Hoffman bound {hoffman} differs from {closed}")));
    }
    Ok((report, hoffman.floor().to_integer()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(int(v))
    }

    #[test]
    fn additive_bounds() {
        assert_eq!(additive_bound(FormKind::Sym, 3, 2, 3).unwrap(), int(81));
        assert_eq!(additive_bound(FormKind::Sym, 3, 2, 2).unwrap(), int(16));
        assert_eq!(additive_bound(FormKind::Herm, 3, 2, 2).unwrap(), int(64));
        for n in 1..6 {
            assert_eq!(additive_bound(FormKind::Sym, n, n, 5).unwrap(), pow(5, n));
            assert_eq!(additive_bound(FormKind::Herm, n, n, 5).unwrap(), pow(5, n));
        }
        assert!(additive_bound(FormKind::Sym, 3, 0, 2).is_err());
        assert!(additive_bound(FormKind::Sym, 3, 4, 2).is_err());
    }

    #[test]
    fn dual_polar_spectra() {
        let s = gamma_w_spectrum(3, 2).unwrap();
        assert_eq!(s.eigenvalues[0], r(14));
        assert_eq!(s.multiplicities[0], int(1));
        assert_eq!(s.multiplicities[1], int(35));
        assert_eq!(s.multiplicities.iter().sum::<BigInt>(), int(135));
        for n in 1..=5 {
            for q in [2, 3, 4, 5, 7] {
                gamma_w_spectrum(n, q).unwrap().check_moments().unwrap();
                gamma_h_spectrum(n, q).unwrap().check_moments().unwrap();
            }
        }
    }

    #[test]
    fn cvetkovic_values() {
        assert_eq!(cvetkovic_bound(FormKind::Sym, 3, 2).unwrap(), int(36));
        assert_eq!(cvetkovic_bound(FormKind::Sym, 4, 2).unwrap(), int(765));
        assert_eq!(cvetkovic_bound(FormKind::Sym, 3, 3).unwrap(), int(196));
        for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            assert!(cvetkovic_bound(FormKind::Sym, 3, q).unwrap() >= upper_sym3(q));
            assert!(additive_bound(FormKind::Sym, 3, 2, q).unwrap() < pow(q, 4) + pow(q, 3) + 1);
        }
    }

    #[test]
    fn hoffman_even_n_matches_product() {
        for n in [2u32, 4, 6] {
            for q in [2u32, 3, 4, 5] {
                let h = hoffman_gamma_w(n, q).unwrap();
                let p: BigInt = (2..=n).map(|i| pow(q, i) + 1).product();
                assert_eq!(h, BigRational::from_integer(p));
            }
        }
    }

    #[test]
    fn upper_sym3_values() {
        assert_eq!(upper_sym3(2), int(22));
        assert_eq!(upper_sym3(3), int(157));
        assert_eq!(upper_sym3(5), int(1861));
    }

    #[test]
    fn quotient_matrices() {
        let b = quotient_matrix_w5(2).unwrap();
        assert_eq!(
            b.b,
            vec![
                vec![0, 7, 0, 0, 0],
                vec![1, 0, 0, 6, 0],
                vec![0, 0, 0, 3, 4],
                vec![0, 2, 1, 0, 4],
                vec![0, 0, 1, 3, 3]
            ]
        );
        for q in [2u32, 3, 4, 5, 7] {
            let b = quotient_matrix_w5(q).unwrap();
            assert_eq!(b.size(), if q % 2 == 0 { 5 } else { 7 });
            let k = (q * q * q - 1) as i64;
            assert!(b.row_sums().iter().all(|&s| s == k));
            assert!(b.b.iter().flatten().all(|&x| x >= 0));
            let qi = q as i64;
            let ev = b.eigenvalues().unwrap();
            let allowed = [k, qi * qi - 1, -1, -qi * qi - 1];
            assert!(ev.iter().all(|(l, _)| allowed.contains(l)), "{ev:?}");
            let minus_one = ev.iter().find(|(l, _)| *l == -1).unwrap().1;
            assert_eq!(minus_one, if q % 2 == 0 { 2 } else { 4 });
        }
    }

    #[test]
    fn char_poly_small() {
        // [[2,1],[1,2]] has roots 1 and 3
        let p = char_poly(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(p, vec![int(3), int(-4), int(1)]);
        assert_eq!(integer_roots(&p, 3).unwrap(), vec![(3, 1), (1, 1)]);
        let p = char_poly(&[vec![0, 2], vec![1, 0]]);
        assert_eq!(integer_roots(&p, 2), Err(Error::NonIntegralRoot));
    }

    #[test]
    fn second_subconstituent() {
        let s = second_subconstituent_spectrum(2).unwrap();
        assert_eq!(s.eigenvalues, vec![r(7), r(3), r(-1), r(-5)]);
        assert_eq!(s.multiplicities, vec![int(1), int(21), int(35), int(7)]);
        let s = second_subconstituent_spectrum(3).unwrap();
        assert_eq!(s.multiplicities, vec![int(1), int(156), int(494), int(78)]);
        for q in [2u32, 3, 4, 5, 7, 8, 9] {
            let s = second_subconstituent_spectrum(q).unwrap();
            assert_eq!(s.cvetkovic(), upper_sym3(q));
        }
    }

    #[test]
    fn hermitian_forms() {
        let (s, h) = hermitian_forms_graph_bounds(3, 2).unwrap();
        assert_eq!(s.eigenvalues, vec![r(21), r(-11), r(5), r(-3)]);
        assert_eq!(s.multiplicities, vec![int(1), int(21), int(210), int(280)]);
        assert_eq!(h, int(176));
        assert_eq!(hermitian_forms_graph_bounds(2, 2).unwrap().1, int(6));
        for n in 2..=4 {
            for q in [2, 3, 4, 5] {
                hermitian_forms_graph_bounds(n, q).unwrap();
            }
        }
    }
}
