//! Symplectic and Hermitian polar spaces in standard coordinates.
//!
//! Vectors have length `2n`. `Π₁` is spanned by the last `n` unit vectors and
//! `Π₂ = L(0)` by the first `n`; `L(M)` is the row space of `(I_n | M)`.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, SquareClass};
use crate::linalg::{all_points, normalize, Mat, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Symplectic,
    Hermitian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointClass {
    P0,
    P1,
    P2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LineClass {
    L0,
    L1,
    L2,
}

#[derive(Clone, Debug)]
pub struct PolarSpace {
    kind: Kind,
    n: usize,
    field: Arc<Field>,
    base_q: u32,
    omega: u32,
    gram: Mat,
}

impl PolarSpace {
    /// W(2n−1, q) over `field`.
    pub fn symplectic(n: usize, field: &Arc<Field>) -> PolarSpace {
        let mut gram = Mat::zeros(field, 2 * n, 2 * n);
        for i in 0..n {
            gram.set(i, n + i, 1);
            gram.set(n + i, i, field.neg(1));
        }
        PolarSpace { kind: Kind::Symplectic, n, field: field.clone(), base_q: field.q(), omega: 1, gram }
    }

    /// H(2n−1, q²) over `field` = GF(q²).
    pub fn hermitian(n: usize, field: &Arc<Field>) -> Result<PolarSpace> {
        let base_q = field.base_order().ok_or(Error::NotAQuadraticExtension { order: field.q(), base: 0 })?;
        let omega = field.omega(base_q)?;
        let omega_q = field.conj_unchecked(omega);
        let mut gram = Mat::zeros(field, 2 * n, 2 * n);
        for i in 0..n {
            gram.set(i, n + i, omega);
            gram.set(n + i, i, omega_q);
        }
        Ok(PolarSpace { kind: Kind::Hermitian, n, field: field.clone(), base_q, omega, gram })
    }

    /// The standard space of the same kind with half-dimension `k`.
    pub fn local(&self, k: usize) -> PolarSpace {
        match self.kind {
            Kind::Symplectic => PolarSpace::symplectic(k, &self.field),
            Kind::Hermitian => PolarSpace::hermitian(k, &self.field).expect("same field"),
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// `q` for W(·, q) and H(·, q²) alike.
    pub fn q(&self) -> u32 {
        self.base_q
    }

    pub fn omega(&self) -> u32 {
        self.omega
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    #[inline]
    fn cj(&self, x: u32) -> u32 {
        match self.kind {
            Kind::Symplectic => x,
            Kind::Hermitian => self.field.conj_unchecked(x),
        }
    }

    fn cj_mat(&self, m: &Mat) -> Mat {
        match self.kind {
            Kind::Symplectic => m.clone(),
            Kind::Hermitian => m.conj(),
        }
    }

    /// Scalars `λ` for which `λM` stays in the matrix space.
    pub fn scalars(&self) -> Vec<u32> {
        match self.kind {
            Kind::Symplectic => (1..self.field.q()).collect(),
            Kind::Hermitian => self.field.subfield(self.base_q).into_iter().filter(|&x| x != 0).collect(),
        }
    }

    pub fn form(&self, u: &[u32], v: &[u32]) -> u32 {
        let f = &self.field;
        let n = self.n;
        let mut acc = 0;
        for i in 0..n {
            acc = f.add(acc, f.mul(f.mul(u[i], self.gram.get(i, n + i)), self.cj(v[n + i])));
            acc = f.add(acc, f.mul(f.mul(u[n + i], self.gram.get(n + i, i)), self.cj(v[i])));
        }
        acc
    }

    pub fn form_eval(&self, u: &[u32], v: &[u32]) -> Result<u32> {
        for w in [u, v] {
            if w.len() != self.dim() {
                return Err(Error::LengthMismatch { expected: self.dim(), got: w.len() });
            }
        }
        Ok(self.form(u, v))
    }

    /// Matrix of pairings `form(a_i, b_j)` between the rows of `a` and `b`.
    pub fn form_mat(&self, a: &Mat, b: &Mat) -> Mat {
        a.mul(&self.gram).mul(&self.cj_mat(b).transpose())
    }

    fn check_ambient(&self, s: &Subspace) -> Result<()> {
        if s.ambient() != self.dim() {
            return Err(Error::AmbientMismatch(format!("{} vs {}", s.ambient(), self.dim())));
        }
        Ok(())
    }

    pub fn perp(&self, s: &Subspace) -> Result<Subspace> {
        self.check_ambient(s)?;
        if s.dim() == 0 {
            return Ok(Subspace::whole(&self.field, self.dim()));
        }
        let m = self.cj_mat(s.basis()).mul(&self.gram.transpose());
        Ok(Subspace::span(&m.kernel()))
    }

    pub fn perp_of(&self, s: &Subspace) -> Subspace {
        self.perp(s).expect("subspace of the ambient")
    }

    pub fn is_totally_isotropic(&self, s: &Subspace) -> bool {
        s.ambient() == self.dim() && self.form_mat(s.basis(), s.basis()).is_zero()
    }

    pub fn is_generator(&self, s: &Subspace) -> bool {
        s.dim() == self.n && self.is_totally_isotropic(s)
    }

    pub fn pi1(&self) -> Subspace {
        let rows: Vec<Vec<u32>> = (0..self.n)
            .map(|i| {
                let mut v = vec![0; self.dim()];
                v[self.n + i] = 1;
                v
            })
            .collect();
        Subspace::from_vectors(&self.field, self.dim(), &rows)
    }

    pub fn pi2(&self) -> Subspace {
        self.l_map(&Mat::zeros(&self.field, self.n, self.n)).expect("zero matrix")
    }

    /// Whether `m` is an `n×n` symmetric (resp. Hermitian) matrix.
    pub fn is_form_matrix(&self, m: &Mat) -> bool {
        m.rows() == self.n
            && match self.kind {
                Kind::Symplectic => m.is_symmetric(),
                Kind::Hermitian => m.is_hermitian(),
            }
    }

    pub fn l_map(&self, m: &Mat) -> Result<Subspace> {
        if !self.is_form_matrix(m) {
            return Err(match self.kind {
                Kind::Symplectic => Error::NotSymmetric,
                Kind::Hermitian => Error::NotHermitian,
            });
        }
        Ok(Subspace::span(&Mat::identity(&self.field, self.n).hstack(m)))
    }

    pub fn l_inv(&self, g: &Subspace) -> Result<Mat> {
        self.check_ambient(g)?;
        if !self.is_generator(g) {
            return Err(Error::NotAGenerator);
        }
        if g.pivots() != (0..self.n).collect::<Vec<_>>() {
            return Err(Error::MeetsPi1);
        }
        Ok(g.basis().block(0, self.n, self.n, self.n))
    }

    /// `[Π₁, Π₂, L(λA) for λ ≠ 0]`.
    pub fn segre_planes(&self, a: &Mat) -> Result<Vec<Subspace>> {
        if a.rank() != self.n {
            return Err(Error::Singular);
        }
        self.l_map(a)?;
        let mut out = vec![self.pi1(), self.pi2()];
        for lambda in self.scalars() {
            out.push(self.l_map(&a.scale(lambda))?);
        }
        Ok(out)
    }

    fn check_disjoint_generators(&self, gs: &[&Subspace]) -> Result<()> {
        for (i, a) in gs.iter().enumerate() {
            self.check_ambient(a)?;
            if !self.is_generator(a) {
                return Err(Error::NotPairwiseDisjoint);
            }
            for b in &gs[i + 1..] {
                if !a.is_disjoint(b) {
                    return Err(Error::NotPairwiseDisjoint);
                }
            }
        }
        Ok(())
    }

    /// Transversal line through `p` meeting the disjoint generators `ga`, `gb`.
    pub fn transversal(&self, p: &[u32], ga: &Subspace, gb: &Subspace) -> Subspace {
        let pt = Subspace::from_vectors(&self.field, self.dim(), &[p.to_vec()]);
        pt.sum(ga).intersect(&pt.sum(gb))
    }

    /// Image of the point `p ∈ gc` under the polarity of `gc` induced by `ga`, `gb`.
    pub fn polarity_image(&self, gc: &Subspace, ga: &Subspace, gb: &Subspace, p: &[u32]) -> Subspace {
        let line = self.transversal(p, ga, gb);
        self.perp_of(&line).intersect(gc)
    }

    /// Gram matrix of the polarity induced on `gc` by `ga`, `gb`, in the
    /// parameters `x ↦ x·B` where `B` is the canonical basis of `gc`: the image
    /// of `x` is `{y : y M conj(x)ᵗ = 0}`. Normalized to be symmetric (resp.
    /// Hermitian) by the first scalar that achieves it.
    pub fn transversal_polarity(&self, gc: &Subspace, ga: &Subspace, gb: &Subspace) -> Result<Mat> {
        self.check_disjoint_generators(&[gc, ga, gb])?;
        let n = self.n;
        let stacked = ga.basis().vstack(gb.basis());
        let inv = stacked.inverse()?;
        let b = gc.basis();
        let coeffs = b.mul(&inv).block(0, 0, n, n);
        let proj = coeffs.mul(ga.basis());
        let m = self.form_mat(b, &proj);
        for c in 1..self.field.q() {
            let cm = m.scale(c);
            if self.is_form_matrix(&cm) {
                return Ok(cm);
            }
        }
        Err(Error::NotReflexive)
    }

    /// Class of a point off `Π₁ ∪ Π₂` (symplectic spaces only).
    pub fn classify_point(&self, r: &[u32]) -> Result<PointClass> {
        if self.kind != Kind::Symplectic {
            return Err(Error::WrongKind("symplectic"));
        }
        if r.len() != self.dim() {
            return Err(Error::LengthMismatch { expected: self.dim(), got: r.len() });
        }
        let (x, y) = r.split_at(self.n);
        if x.iter().all(|&v| v == 0) || y.iter().all(|&v| v == 0) {
            return Err(Error::OnSpecialGenerator);
        }
        let f = &self.field;
        let pairing = x.iter().zip(y).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
        if pairing == 0 {
            return Ok(PointClass::P0);
        }
        if f.p() == 2 {
            return Ok(PointClass::P1);
        }
        Ok(match f.square_class(pairing)? {
            SquareClass::Square => PointClass::P1,
            _ => PointClass::P2,
        })
    }

    /// Points of PG(2n−1) outside `Π₁ ∪ Π₂`, normalized.
    pub fn points_off_specials(&self) -> Vec<Vec<u32>> {
        let n = self.n;
        all_points(&self.field, self.dim())
            .into_iter()
            .filter(|v| v[..n].iter().any(|&x| x != 0) && v[n..].iter().any(|&x| x != 0))
            .collect()
    }

    /// Class of a line of W(5, q) disjoint from `Π₁ ∪ Π₂`.
    pub fn classify_line_w5(&self, line: &Subspace) -> Result<LineClass> {
        if self.kind != Kind::Symplectic || self.n != 3 {
            return Err(Error::WrongKind("W(5,q)"));
        }
        self.check_ambient(line)?;
        let (pi1, pi2) = (self.pi1(), self.pi2());
        if line.dim() != 2
            || !self.is_totally_isotropic(line)
            || !line.is_disjoint(&pi1)
            || !line.is_disjoint(&pi2)
        {
            return Err(Error::NotDisjointLine);
        }
        let r = line.sum(&pi2).intersect(&pi1);
        let t = line.sum(&r).intersect(&pi2);
        let big_t = r.sum(&t);
        if self.is_totally_isotropic(&self.perp_of(&big_t)) {
            return Ok(LineClass::L1);
        }
        let on_p0 = line
            .points()
            .iter()
            .filter(|p| self.classify_point(p) == Ok(PointClass::P0))
            .count() as u32;
        let q = self.field.q();
        let class = if q % 2 == 0 {
            match on_p0 {
                c if c == q + 1 => Some(LineClass::L0),
                1 => Some(LineClass::L2),
                _ => None,
            }
        } else {
            match on_p0 {
                0 => Some(LineClass::L0),
                2 => Some(LineClass::L2),
                _ => None,
            }
        };
        class.ok_or_else(|| Error::VerificationFailed(format!("line meets P0 in {on_p0} points")))
    }

    /// Lines of W(5, q) disjoint from `Π₁ ∪ Π₂`.
    pub fn lines_off_specials(&self) -> Vec<Subspace> {
        let pts = self.points_off_specials();
        let (pi1, pi2) = (self.pi1(), self.pi2());
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for p in &pts {
            let ps = Subspace::from_vectors(&self.field, self.dim(), &[p.clone()]);
            for s in self.perp_of(&ps).points() {
                if s <= *p {
                    continue;
                }
                let line = Subspace::from_vectors(&self.field, self.dim(), &[p.clone(), s]);
                if line.is_disjoint(&pi1) && line.is_disjoint(&pi2) && seen.insert(line.clone()) {
                    out.push(line);
                }
            }
        }
        out.sort();
        out
    }

    /// Rows `u₁..u_k, w₁..w_k` where `uᵢ` is the canonical basis of `first`
    /// and `wⱼ ∈ second` are chosen so the rows have the standard Gram matrix
    /// of dimension `2k`. The rows send the local `L(0)` to `first` and the
    /// local `Π₁` to `second`.
    pub fn frame_from_pair(&self, first: &Subspace, second: &Subspace) -> Result<Mat> {
        self.check_ambient(first)?;
        self.check_ambient(second)?;
        let k = first.dim();
        if second.dim() != k || !self.is_totally_isotropic(first) || !self.is_totally_isotropic(second) {
            return Err(Error::NotPairwiseDisjoint);
        }
        let local = self.local(k);
        let u = first.basis();
        let r = second.basis();
        let pairing = self.form_mat(r, u);
        let target = local.gram().block(k, 0, k, k);
        let c = pairing.solve_left(&target).ok_or(Error::NotPairwiseDisjoint)?;
        let frame = u.vstack(&c.mul(r));
        debug_assert_eq!(self.form_mat(&frame, &frame), *local.gram());
        Ok(frame)
    }

    /// A generator disjoint from `lambda` whose basis `w` pairs with the
    /// canonical basis `u` of `lambda` as in the standard Gram matrix.
    fn witt_partner(&self, lambda: &Subspace) -> Result<Mat> {
        let n = self.n;
        let f = &self.field;
        let u = lambda.basis();
        let mut w = Mat::zeros(f, 0, self.dim());
        for i in 0..n {
            let against = u.vstack(&w);
            let m = self.gram.mul(&self.cj_mat(&against).transpose());
            let mut target = Mat::zeros(f, 1, n + i);
            for j in 0..n {
                target.set(0, j, self.gram.get(i, n + j));
            }
            let sol = m.solve_left(&target).ok_or(Error::NotAGenerator)?;
            let mut v = sol.row(0).to_vec();
            if self.form(&v, &v) != 0 {
                let ui = u.row(i);
                let c = (1..f.q())
                    .find(|&c| {
                        let cand: Vec<u32> = v.iter().zip(ui).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect();
                        self.form(&cand, &cand) == 0
                    })
                    .ok_or_else(|| Error::SearchExhausted("isotropic partner".into()))?;
                v = v.iter().zip(ui).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect();
            }
            w = w.vstack(&Mat::from_rows(f, &[v]));
        }
        Ok(w)
    }

    /// An isometry `g` with `lambda · g = Π₁`.
    pub fn adapt_basis(&self, lambda: &Subspace) -> Result<Mat> {
        self.check_ambient(lambda)?;
        if !self.is_generator(lambda) {
            return Err(Error::NotAGenerator);
        }
        let w = self.witt_partner(lambda)?;
        let frame = w.vstack(lambda.basis());
        debug_assert_eq!(self.form_mat(&frame, &frame), self.gram);
        frame.inverse()
    }

    /// Whether `g` preserves the form exactly.
    pub fn is_isometry(&self, g: &Mat) -> bool {
        g.rows() == self.dim() && self.form_mat(g, g) == self.gram
    }
}

/// Pulls the subspace `s ⊆ row space of frame` back to local coordinates.
pub fn pull_back(frame: &Mat, s: &Subspace) -> Option<Subspace> {
    frame.solve_left(s.basis()).map(|x| Subspace::span(&x))
}

/// Pushes a local subspace forward through the frame.
pub fn push_forward(frame: &Mat, s: &Subspace) -> Subspace {
    s.map(frame)
}

/// Normalized coordinates of the single point spanned by `s`.
pub fn point_of(s: &Subspace) -> Vec<u32> {
    assert_eq!(s.dim(), 1, "not a point");
    normalize(s.field(), s.basis().row(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u32) -> Arc<Field> {
        Field::of_order(q).unwrap()
    }

    fn random_sym(f: &Arc<Field>, n: usize, rng: &mut ChaCha8Rng) -> Mat {
        let mut m = Mat::zeros(f, n, n);
        for i in 0..n {
            for j in i..n {
                let v = rng.gen_range(0..f.q());
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        m
    }

    fn random_generator(space: &PolarSpace, rng: &mut ChaCha8Rng) -> Subspace {
        let f = space.field();
        let mut s = Subspace::zero(f, space.dim());
        while s.dim() < space.n() {
            let perp = space.perp_of(&s);
            let coeffs: Vec<u32> = (0..perp.dim()).map(|_| rng.gen_range(0..f.q())).collect();
            let v = perp.basis().vec_mul(&coeffs);
            if space.form(&v, &v) == 0 && !s.contains(&v) {
                s = s.sum(&Subspace::from_vectors(f, space.dim(), &[v]));
            }
        }
        s
    }

    #[test]
    fn form_examples() {
        let w = PolarSpace::symplectic(3, &gf(3));
        let e = |i: usize| {
            let mut v = vec![0; 6];
            v[i] = 1;
            v
        };
        assert_eq!(w.form_eval(&e(0), &e(3)).unwrap(), 1);
        assert_eq!(w.form_eval(&[1, 2, 0, 1, 1, 2], &[1, 2, 0, 1, 1, 2]).unwrap(), 0);
        assert!(w.form_eval(&[1, 2], &e(0)).is_err());
        let h = PolarSpace::hermitian(2, &gf(9)).unwrap();
        let f = h.field().clone();
        let (u, v) = (vec![1, 4, 7, 2], vec![3, 0, 5, 8]);
        assert_eq!(h.form(&u, &v), f.conj_unchecked(h.form(&v, &u)));
        assert!(h.gram().is_hermitian());
        assert!(w.is_generator(&w.pi1()) && w.is_generator(&w.pi2()));
        let bad = Subspace::from_vectors(&gf(3), 6, &[e(0), e(3), e(1)]);
        assert!(!w.is_generator(&bad));
    }

    #[test]
    fn perp_examples() {
        let w = PolarSpace::symplectic(3, &gf(2));
        let whole = Subspace::whole(w.field(), 6);
        assert_eq!(w.perp_of(&whole).dim(), 0);
        let s = Subspace::from_vectors(w.field(), 6, &[vec![1, 1, 0, 0, 1, 0]]);
        assert_eq!(w.perp_of(&w.perp_of(&s)), s);
        assert_eq!(w.perp_of(&s).dim(), 5);
        assert_eq!(w.perp_of(&w.pi1()), w.pi1());
        let h = PolarSpace::hermitian(3, &gf(4)).unwrap();
        let s = Subspace::from_vectors(h.field(), 6, &[vec![1, 2, 0, 3, 1, 0], vec![0, 1, 1, 0, 0, 2]]);
        assert_eq!(h.perp_of(&h.perp_of(&s)), s);
    }

    #[test]
    fn l_map_round_trip_and_isotropy() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2, 3, 4, 5] {
            let f = gf(q);
            let w = PolarSpace::symplectic(3, &f);
            for _ in 0..1000 / 4 {
                let m = random_sym(&f, 3, &mut rng);
                let g = w.l_map(&m).unwrap();
                assert!(w.is_generator(&g));
                assert_eq!(w.l_inv(&g).unwrap(), m);
            }
        }
        let f = gf(3);
        let w = PolarSpace::symplectic(3, &f);
        assert_eq!(w.l_map(&Mat::zeros(&f, 3, 3)).unwrap(), w.pi2());
        assert_eq!(w.l_inv(&w.pi1()), Err(Error::MeetsPi1));
        let skew = Mat::from_rows(&f, &[vec![0, 1, 0], vec![2, 0, 0], vec![0, 0, 0]]);
        assert_eq!(w.l_map(&skew), Err(Error::NotSymmetric));
        let h = PolarSpace::hermitian(2, &gf(4)).unwrap();
        let nonherm = Mat::from_rows(h.field(), &[vec![2, 0], vec![0, 1]]);
        assert_eq!(h.l_map(&nonherm), Err(Error::NotHermitian));
    }

    #[test]
    fn segre_planes_pairwise_disjoint() {
        for q in [2, 3, 4] {
            let f = gf(q);
            let w = PolarSpace::symplectic(3, &f);
            let planes = w.segre_planes(&Mat::identity(&f, 3)).unwrap();
            assert_eq!(planes.len() as u32, q + 1);
            for i in 0..planes.len() {
                for j in i + 1..planes.len() {
                    assert!(planes[i].is_disjoint(&planes[j]));
                }
            }
        }
        let f = gf(2);
        let w = PolarSpace::symplectic(3, &f);
        let planes = w.segre_planes(&Mat::identity(&f, 3)).unwrap();
        assert_eq!(planes[2], w.l_map(&Mat::identity(&f, 3)).unwrap());
        assert_eq!(w.segre_planes(&Mat::zeros(&f, 3, 3)), Err(Error::Singular));
        let h = PolarSpace::hermitian(2, &gf(9)).unwrap();
        assert_eq!(h.segre_planes(&Mat::identity(h.field(), 2)).unwrap().len(), 4);
    }

    #[test]
    fn transversal_polarity_on_l_a() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2, 3, 4, 5] {
            let f = gf(q);
            let w = PolarSpace::symplectic(3, &f);
            for _ in 0..20 {
                let a = random_sym(&f, 3, &mut rng);
                if a.rank() < 3 {
                    continue;
                }
                let la = w.l_map(&a).unwrap();
                let m = w.transversal_polarity(&la, &w.pi1(), &w.pi2()).unwrap();
                let proportional = (1..q).any(|c| a.scale(c) == m);
                assert!(proportional, "{m:?} vs {a:?}");
                // the Gram matches the geometric image point by point
                for x in all_points(&f, 3) {
                    let p = la.basis().vec_mul(&x);
                    let img = w.polarity_image(&la, &w.pi1(), &w.pi2(), &p);
                    let mx = m.mul(&Mat::from_rows(&f, &[x.clone()]).transpose());
                    let hyper = Subspace::span(&mx.transpose().kernel().mul(la.basis()));
                    assert_eq!(img, hyper);
                }
            }
        }
    }

    #[test]
    fn absolute_sets() {
        for q in [2, 4] {
            let f = gf(q);
            let w = PolarSpace::symplectic(3, &f);
            let m = w.transversal_polarity(&w.pi2(), &w.pi1(), &w.l_map(&Mat::identity(&f, 3)).unwrap()).unwrap();
            let abs: Vec<Vec<u32>> = all_points(&f, 3)
                .into_iter()
                .filter(|x| m.vec_mul(x).iter().zip(x).fold(0, |a, (&u, &v)| f.add(a, f.mul(u, v))) == 0)
                .collect();
            assert_eq!(abs.len() as u32, q + 1);
            let span = Subspace::from_vectors(&f, 3, &abs);
            assert_eq!(span.dim(), 2);
        }
        for q in [3, 5] {
            let f = gf(q);
            let w = PolarSpace::symplectic(3, &f);
            let m = w.transversal_polarity(&w.pi2(), &w.pi1(), &w.l_map(&Mat::identity(&f, 3)).unwrap()).unwrap();
            let abs = all_points(&f, 3)
                .into_iter()
                .filter(|x| m.vec_mul(x).iter().zip(x).fold(0, |a, (&u, &v)| f.add(a, f.mul(u, v))) == 0)
                .count();
            assert_eq!(abs as u32, q + 1);
        }
    }

    #[test]
    fn transversal_polarity_random_triples_nondegenerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut done = 0;
        while done < 200 {
            let q = [2, 3, 4][done % 3];
            let f = gf(q);
            let w = PolarSpace::symplectic(3, &f);
            let gs: Vec<Subspace> = (0..3).map(|_| random_generator(&w, &mut rng)).collect();
            if !(gs[0].is_disjoint(&gs[1]) && gs[0].is_disjoint(&gs[2]) && gs[1].is_disjoint(&gs[2])) {
                assert_eq!(w.transversal_polarity(&gs[0], &gs[1], &gs[2]), Err(Error::NotPairwiseDisjoint));
                continue;
            }
            let m = w.transversal_polarity(&gs[0], &gs[1], &gs[2]).unwrap();
            assert_eq!(m.rank(), 3);
            assert!(m.is_symmetric());
            done += 1;
        }
        let f = gf(4);
        let h = PolarSpace::hermitian(2, &f).unwrap();
        let la = h.l_map(&Mat::identity(&f, 2)).unwrap();
        let m = h.transversal_polarity(&la, &h.pi1(), &h.pi2()).unwrap();
        assert!(m.is_hermitian());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn point_census() {
        let cases = [(3usize, 2u32, [21usize, 28, 0]), (3, 3, [104, 117, 117]), (2, 3, [8, 12, 12])];
        for (n, q, expected) in cases {
            let w = PolarSpace::symplectic(n, &gf(q));
            let mut counts = [0usize; 3];
            for p in w.points_off_specials() {
                counts[w.classify_point(&p).unwrap() as usize] += 1;
            }
            assert_eq!(counts, expected);
            // independent formulas for the class sizes
            let (qn, qn1) = ((q as usize).pow(n as u32), (q as usize).pow(n as u32 - 1));
            assert_eq!(counts[0], (qn - 1) * (qn1 - 1) / (q as usize - 1));
        }
        let w = PolarSpace::symplectic(3, &gf(3));
        assert_eq!(w.classify_point(&[0, 1, 0, 1, 0, 0]).unwrap(), PointClass::P0);
        assert_eq!(w.classify_point(&[1, 0, 0, 0, 0, 0]), Err(Error::OnSpecialGenerator));
    }

    #[test]
    fn line_census() {
        for (q, expected) in [(2u32, [28usize, 42, 84]), (3, [702, 624, 1404])] {
            let w = PolarSpace::symplectic(3, &gf(q));
            let mut counts = [0usize; 3];
            for l in w.lines_off_specials() {
                counts[w.classify_line_w5(&l).unwrap() as usize] += 1;
            }
            assert_eq!(counts, expected);
        }
    }

    #[test]
    fn lines_in_segre_plane_match_conic() {
        let f = gf(3);
        let w = PolarSpace::symplectic(3, &f);
        let la = w.l_map(&Mat::identity(&f, 3)).unwrap();
        let m = w.transversal_polarity(&la, &w.pi1(), &w.pi2()).unwrap();
        let conic: Vec<Vec<u32>> = all_points(&f, 3)
            .into_iter()
            .filter(|x| m.vec_mul(x).iter().zip(x).fold(0, |a, (&u, &v)| f.add(a, f.mul(u, v))) == 0)
            .collect();
        let pts = all_points(&f, 3);
        let mut seen = HashSet::new();
        for a in &pts {
            for b in &pts {
                let pl = Subspace::from_vectors(&f, 3, &[a.clone(), b.clone()]);
                if pl.dim() != 2 || !seen.insert(pl.clone()) {
                    continue;
                }
                let hits = conic.iter().filter(|c| pl.contains(c)).count();
                let line = Subspace::span(&pl.basis().mul(la.basis()));
                let expected = match hits {
                    0 => LineClass::L0,
                    1 => LineClass::L1,
                    _ => LineClass::L2,
                };
                assert_eq!(w.classify_line_w5(&line).unwrap(), expected);
            }
        }
    }

    #[test]
    fn rank_intersection_law_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = gf(5);
        let w = PolarSpace::symplectic(3, &f);
        for _ in 0..200 {
            let a = random_sym(&f, 3, &mut rng);
            let b = random_sym(&f, 3, &mut rng);
            let meet = w.l_map(&a).unwrap().intersect(&w.l_map(&b).unwrap());
            assert_eq!(meet.proj_dim(), 2 - a.sub(&b).rank() as isize);
        }
    }

    #[test]
    fn adapt_basis_maps_to_pi1() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let w = PolarSpace::symplectic(3, &gf(3));
        let g = w.adapt_basis(&w.pi1()).unwrap();
        assert_eq!(w.pi1().map(&g), w.pi1());
        assert!(w.is_isometry(&g));
        for _ in 0..50 {
            let lam = random_generator(&w, &mut rng);
            let g = w.adapt_basis(&lam).unwrap();
            assert!(w.is_isometry(&g));
            assert_eq!(lam.map(&g), w.pi1());
        }
        for q in [4, 9] {
            let h = PolarSpace::hermitian(3, &gf(q)).unwrap();
            for _ in 0..20 {
                let lam = random_generator(&h, &mut rng);
                let g = h.adapt_basis(&lam).unwrap();
                assert!(h.is_isometry(&g));
                assert_eq!(lam.map(&g), h.pi1());
            }
        }
        let bad = Subspace::from_vectors(w.field(), 6, &[vec![1, 0, 0, 1, 0, 0]]);
        assert_eq!(w.adapt_basis(&bad), Err(Error::NotAGenerator));
    }

    #[test]
    fn frame_from_pair_is_local_isometry() {
        let f = gf(9);
        let h = PolarSpace::hermitian(3, &f).unwrap();
        let t = Subspace::from_vectors(&f, 6, &[vec![0, 1, 0, 0, 0, 0], vec![0, 0, 1, 0, 0, 0]]);
        let r = Subspace::from_vectors(&f, 6, &[vec![0, 0, 0, 0, 1, 0], vec![0, 0, 0, 0, 0, 1]]);
        let frame = h.frame_from_pair(&t, &r).unwrap();
        let local = h.local(2);
        assert_eq!(h.form_mat(&frame, &frame), *local.gram());
        assert_eq!(local.pi2().map(&frame), t);
        assert_eq!(local.pi1().map(&frame), r);
    }
}
