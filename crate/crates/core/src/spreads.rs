//! Partial spreads: Desarguesian line spreads of W(3,q), additive partial
//! spreads of H(3,q²), and the field-reduction construction in H(8m−5,q²).

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, Tower};
use crate::forms::MatrixSpace;
use crate::linalg::{Mat, Subspace};
use crate::polar::{pull_back, Kind, PolarSpace};

#[derive(Clone, Debug)]
pub struct PartialSpread {
    pub space: PolarSpace,
    pub members: Vec<Subspace>,
    pub provenance: String,
}

impl PartialSpread {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// All members are generators and pairwise disjoint.
    pub fn verify(&self) -> Result<()> {
        for (i, m) in self.members.iter().enumerate() {
            if !self.space.is_generator(m) {
                return Err(Error::VerificationFailed(format!("member {i} is not a generator")));
            }
        }
        let bad = (0..self.members.len()).into_par_iter().find_map_any(|i| {
            (i + 1..self.members.len())
                .find(|&j| !self.members[i].is_disjoint(&self.members[j]))
                .map(|j| (i, j))
        });
        match bad {
            Some((i, j)) => Err(Error::VerificationFailed(format!("members {i} and {j} meet"))),
            None => Ok(()),
        }
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.members.contains(s)
    }
}

/// Whether every nonzero `a·s1 + b·s2` with `a, b` in `scalars ∪ {0}` is invertible.
fn spans_anisotropic(s1: &Mat, s2: &Mat, scalars: &[u32]) -> bool {
    let mut all = vec![0];
    all.extend_from_slice(scalars);
    all.iter().all(|&a| {
        all.iter().all(|&b| (a == 0 && b == 0) || s1.scale(a).add(&s2.scale(b)).det() != 0)
    })
}

/// Whether `k` lies in the span of `s1, s2` with coefficients in `scalars`.
fn in_span(k: &Mat, s1: &Mat, s2: &Mat, scalars: &[u32]) -> bool {
    let mut all = vec![0];
    all.extend_from_slice(scalars);
    all.iter().any(|&a| all.iter().any(|&b| s1.scale(a).add(&s2.scale(b)) == *k))
}

/// The members `Π₁, L(a·s1 + b·s2)` of the local spread, `L(0)` first among the latter.
fn spread_from_set(local: &PolarSpace, s1: &Mat, s2: &Mat, scalars: &[u32]) -> Vec<Subspace> {
    let mut all = vec![0];
    all.extend_from_slice(scalars);
    let mut out = vec![local.pi1()];
    for &b in &all {
        for &a in &all {
            out.push(local.l_map(&s1.scale(a).add(&s2.scale(b))).expect("form matrix"));
        }
    }
    out
}

/// First 2×2 form matrix `T` (in index order) for which `span{I, T}` is a spread set.
pub fn spread_set_generator(local: &PolarSpace) -> Result<Mat> {
    let space = MatrixSpace::for_polar(local);
    let id = Mat::identity(local.field(), 2);
    let scalars = local.scalars();
    let found = space.iter().find(|t| spans_anisotropic(&id, t, &scalars));
    found.ok_or_else(|| Error::SearchExhausted("no irreducible 2x2 form matrix".into()))
}

/// Spread set `span{s1, s2}` avoiding every matrix in `forbidden`. Tries
/// `span{I, T}` in index order of `T` first, then general pairs.
fn avoiding_spread_set(local: &PolarSpace, forbidden: &[Mat]) -> Result<(Mat, Mat)> {
    let space = MatrixSpace::for_polar(local);
    let id = Mat::identity(local.field(), 2);
    let scalars = local.scalars();
    let ok = |s1: &Mat, s2: &Mat| {
        spans_anisotropic(s1, s2, &scalars) && forbidden.iter().all(|k| !in_span(k, s1, s2, &scalars))
    };
    let all: Vec<Mat> = space.iter().collect();
    if let Some(t) = all.iter().find(|t| ok(&id, t)) {
        return Ok((id, t.clone()));
    }
    for (i, s1) in all.iter().enumerate() {
        if s1.det() == 0 {
            continue;
        }
        for s2 in &all[i + 1..] {
            if ok(s1, s2) {
                return Ok((s1.clone(), s2.clone()));
            }
        }
    }
    Err(Error::SearchExhausted("no spread set avoids the regulus".into()))
}

fn check_w3(space: &PolarSpace) -> Result<()> {
    if space.kind() != Kind::Symplectic || space.n() != 2 {
        return Err(Error::WrongKind("W(3,q)"));
    }
    Ok(())
}

/// Desarguesian spread of the local standard W(3,q) in the coordinates of
/// `span{I,T}`: local `Π₁` first, then `L(0)`.
pub fn standard_desarguesian(local: &PolarSpace) -> Result<Vec<Subspace>> {
    let t = spread_set_generator(local)?;
    Ok(spread_from_set(local, &Mat::identity(local.field(), 2), &t, &local.scalars()))
}

/// A Desarguesian line spread of W(3,q) containing the disjoint lines `r`, `t`.
pub fn desarguesian_spread_w3(space: &PolarSpace, r: &Subspace, t: &Subspace) -> Result<PartialSpread> {
    check_w3(space)?;
    let frame = space.frame_from_pair(t, r)?;
    let members = standard_desarguesian(space)?.iter().map(|m| m.map(&frame)).collect();
    Ok(PartialSpread { space: space.clone(), members, provenance: "desarguesian".into() })
}

/// Local version of [`spread_avoiding_regulus`]: the regulus is given in
/// standard coordinates and contains local `Π₁` and `L(0)`.
pub fn standard_avoiding(local: &PolarSpace, regulus: &[Subspace]) -> Result<Vec<Subspace>> {
    let (pi1, pi2) = (local.pi1(), local.pi2());
    let mut forbidden = Vec::new();
    for line in regulus {
        if *line == pi1 || *line == pi2 {
            continue;
        }
        if let Ok(k) = local.l_inv(line) {
            forbidden.push(k);
        }
    }
    let (s1, s2) = avoiding_spread_set(local, &forbidden)?;
    let members = spread_from_set(local, &s1, &s2, &local.scalars());
    let shared = members.iter().filter(|m| regulus.contains(m)).count();
    if shared != 2 {
        return Err(Error::VerificationFailed(format!("spread shares {shared} lines with the regulus")));
    }
    Ok(members)
}

/// A Desarguesian line spread of W(3,q) meeting the regulus exactly in `r`, `t`.
pub fn spread_avoiding_regulus(
    space: &PolarSpace,
    r: &Subspace,
    t: &Subspace,
    regulus: &[Subspace],
) -> Result<PartialSpread> {
    check_w3(space)?;
    if !regulus.contains(r) || !regulus.contains(t) {
        return Err(Error::BadParams("regulus must contain r and t".into()));
    }
    let frame = space.frame_from_pair(t, r)?;
    let local: Vec<Subspace> = regulus
        .iter()
        .map(|l| pull_back(&frame, l).ok_or_else(|| Error::BadParams("regulus leaves the space".into())))
        .collect::<Result<_>>()?;
    let members = standard_avoiding(space, &local)?.iter().map(|m| m.map(&frame)).collect();
    Ok(PartialSpread { space: space.clone(), members, provenance: "desarguesian-avoiding".into() })
}

/// Additive partial spread `{Π₁} ∪ {L(aI + bT) : a, b ∈ GF(q)}` of the local H(3,q²).
pub fn standard_additive_h3(local: &PolarSpace) -> Result<Vec<Subspace>> {
    if local.kind() != Kind::Hermitian || local.n() != 2 {
        return Err(Error::WrongKind("H(3,q^2)"));
    }
    let t = spread_set_generator(local)?;
    Ok(spread_from_set(local, &Mat::identity(local.field(), 2), &t, &local.scalars()))
}

/// Additive partial spread of H(3,q²) of size q²+1 containing `r` and `t`.
pub fn additive_partial_spread_h3(space: &PolarSpace, r: &Subspace, t: &Subspace) -> Result<PartialSpread> {
    let members = standard_additive_h3(space)?;
    let frame = space.frame_from_pair(t, r)?;
    let members = members.iter().map(|m| m.map(&frame)).collect();
    Ok(PartialSpread { space: space.clone(), members, provenance: "additive".into() })
}

/// Rows `c_i` with `c_i G conj(c_j)ᵗ = δ_ij` for a nondegenerate Hermitian
/// Gram matrix `G` over GF(q²).
pub fn orthonormal_basis(gram: &Mat, base_q: u32) -> Result<Mat> {
    let f = gram.field().clone();
    let n = gram.rows();
    let s = |u: &[u32], v: &[u32]| -> u32 {
        let gv = gram.mul(&Mat::from_rows(&f, &[v.iter().map(|&x| f.conj_unchecked(x)).collect()]).transpose());
        u.iter().enumerate().fold(0, |acc, (i, &a)| f.add(acc, f.mul(a, gv.get(i, 0))))
    };
    let mut w = Mat::identity(&f, n);
    let mut out: Vec<Vec<u32>> = Vec::new();
    while w.rows() > 0 {
        let rows = w.row_vecs();
        let mut found = rows.iter().find(|v| s(v, v) != 0).cloned();
        if found.is_none() {
            'search: for i in 0..rows.len() {
                for j in i + 1..rows.len() {
                    for c in 1..f.q() {
                        let v: Vec<u32> = rows[i].iter().zip(&rows[j]).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect();
                        if s(&v, &v) != 0 {
                            found = Some(v);
                            break 'search;
                        }
                    }
                }
            }
        }
        let v = found.ok_or(Error::Singular)?;
        let target = f.inv(s(&v, &v));
        let c = (1..f.q())
            .find(|&c| f.pow(c, base_q as u64 + 1) == target)
            .ok_or_else(|| Error::SearchExhausted("norm preimage".into()))?;
        let v: Vec<u32> = v.iter().map(|&x| f.mul(c, x)).collect();
        let col: Vec<Vec<u32>> = rows.iter().map(|r| vec![s(r, &v)]).collect();
        let z = Mat::from_rows(&f, &col).transpose().kernel();
        w = if z.rows() == 0 { Mat::zeros(&f, 0, n) } else { z.mul(&w) };
        out.push(v);
    }
    Ok(Mat::from_rows(&f, &out))
}

/// The spread of PG(4m−3, q²) obtained from the points of PG(1, q^{4m−2}),
/// with the Hermitian form `Tr ∘ h` where `h = x x'^σ + y y'^σ`.
#[derive(Clone, Debug)]
pub struct ReducedSpread {
    pub q: u32,
    pub m: u32,
    pub field: Arc<Field>,
    /// Gram matrix of `Tr ∘ h` in the coordinates of the members.
    pub gram: Mat,
    pub members: Vec<Subspace>,
    /// Representatives `(x, y)` of the points of PG(1, q^{4m−2}).
    pub points: Vec<(u32, u32)>,
    pub hermitian_members: Vec<usize>,
    pub pairing: Vec<(usize, usize)>,
}

pub fn field_reduction_spread(m: u32, q: u32) -> Result<ReducedSpread> {
    let tower = Tower::new(q, m).map_err(|e| Error::IncompatibleTower(e.to_string()))?;
    let big = tower.big.clone();
    let small = tower.small.clone();
    let k = (2 * m - 1) as usize;
    let dim = 2 * k;

    let mut points = vec![(0u32, 1u32)];
    points.extend((0..big.q()).map(|y| (1, y)));
    let index: HashMap<(u32, u32), usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let canon = |(x, y): (u32, u32)| -> (u32, u32) {
        if x == 0 {
            (0, 1)
        } else {
            (1, big.div(y, x))
        }
    };

    let members: Vec<Subspace> = points
        .iter()
        .map(|&(x, y)| {
            let rows: Vec<Vec<u32>> = tower
                .basis
                .iter()
                .map(|&g| {
                    let mut r = tower.coords(big.mul(g, x)).to_vec();
                    r.extend_from_slice(tower.coords(big.mul(g, y)));
                    r
                })
                .collect();
            Subspace::from_vectors(&small, dim, &rows)
        })
        .collect();

    let mut gram = Mat::zeros(&small, dim, dim);
    for a in 0..k {
        for b in 0..k {
            let v = tower.rel_trace(big.mul(tower.basis[a], tower.sigma(tower.basis[b])))?;
            gram.set(a, b, v);
            gram.set(k + a, k + b, v);
        }
    }

    let h = |(x, y): (u32, u32), (u, v): (u32, u32)| {
        big.add(big.mul(x, tower.sigma(u)), big.mul(y, tower.sigma(v)))
    };
    let mut hermitian_members = Vec::new();
    let mut pairing = Vec::new();
    for (i, &p) in points.iter().enumerate() {
        if h(p, p) == 0 {
            hermitian_members.push(i);
            continue;
        }
        let image = canon((tower.sigma(p.1), big.neg(tower.sigma(p.0))));
        let j = index[&image];
        if i < j {
            pairing.push((i, j));
        }
    }
    Ok(ReducedSpread { q, m, field: small, gram, members, points, hermitian_members, pairing })
}

impl ReducedSpread {
    /// `member^⊥` with respect to `Tr ∘ h`.
    pub fn perp(&self, s: &Subspace) -> Subspace {
        let m = s.basis().conj().mul(&self.gram.transpose());
        Subspace::span(&m.kernel())
    }
}

/// The partial spread of H(8m−5, q²) of size `(3q^{4m−2} − q^{2m−1})/2 + 1`,
/// built on `Π₁`, `Π₂ = L(0)` and `Π₃ = L(a)`.
pub fn herm_partial_spread_with(m: u32, q: u32, a: Option<&Mat>) -> Result<PartialSpread> {
    let reduced = field_reduction_spread(m, q)?;
    let f = reduced.field.clone();
    let n = reduced.gram.rows();
    let space = PolarSpace::hermitian(n, &f)?;
    let a = a.cloned().unwrap_or_else(|| Mat::identity(&f, n));
    if a.rank() != n {
        return Err(Error::Singular);
    }
    let (pi1, pi2, pi3) = (space.pi1(), space.pi2(), space.l_map(&a)?);

    // carry the reduced spread onto Π₁ through an isometry with the induced form
    let m1 = space.transversal_polarity(&pi1, &pi2, &pi3)?;
    let ch = orthonormal_basis(&reduced.gram, q)?;
    let cm = orthonormal_basis(&m1, q)?;
    let phi = ch.inverse()?.mul(&cm);
    let delta1: Vec<Subspace> = reduced
        .members
        .iter()
        .map(|y| {
            let b = y.basis().mul(&phi);
            Subspace::span(&Mat::zeros(&f, b.rows(), n).hstack(&b))
        })
        .collect();
    let lookup: HashMap<&Subspace, usize> = delta1.iter().enumerate().map(|(i, d)| (d, i)).collect();

    let mut members = Vec::new();
    for d1 in &delta1 {
        let d2 = pi3.sum(d1).intersect(&pi2);
        let d3 = pi2.sum(d1).intersect(&pi3);
        let rho1 = space.perp_of(&d2).intersect(&pi1);
        if rho1 == *d1 {
            members.push(d1.sum(&d2));
            continue;
        }
        if !lookup.contains_key(&rho1) {
            return Err(Error::VerificationFailed("polar image is not a spread member".into()));
        }
        if d1 > &rho1 {
            continue;
        }
        let rho2 = space.perp_of(d1).intersect(&pi2);
        let rho3 = space.perp_of(d1).intersect(&pi3);
        members.push(d1.sum(&rho2));
        members.push(d3.sum(&rho1));
        members.push(d2.sum(&rho3));
    }
    let spread = PartialSpread { space, members, provenance: format!("herm-partial-spread m={m} q={q}") };
    spread.verify()?;
    Ok(spread)
}

pub fn herm_partial_spread(m: u32, q: u32) -> Result<PartialSpread> {
    herm_partial_spread_with(m, q, None)
}
