//! Rank-distance codes and the generator-based constructions.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::PathBuf;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::forms::MatrixSpace;
use crate::io::read_spread;
use crate::linalg::{all_points, normalize, Mat, Subspace};
use crate::polar::{pull_back, Kind, PolarSpace};
use crate::spreads::{
    herm_partial_spread, standard_additive_h3, standard_avoiding, standard_desarguesian, PartialSpread,
};

/// Largest ambient `is_maximal` will enumerate.
pub const MAX_AMBIENT: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub tag: String,
    pub params: Vec<(String, String)>,
}

impl Provenance {
    pub fn new(tag: &str) -> Self {
        Provenance { tag: tag.to_string(), params: Vec::new() }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct RankCode {
    space: MatrixSpace,
    words: Vec<Mat>,
    min_distance: Option<u32>,
    provenance: Provenance,
}

impl RankCode {
    /// Checks that the words lie in `space` and are pairwise distinct.
    pub fn new(space: MatrixSpace, words: Vec<Mat>, provenance: Provenance) -> Result<RankCode> {
        let mut seen = HashSet::new();
        for (i, w) in words.iter().enumerate() {
            if !space.contains(w) {
                return Err(Error::InvariantViolation(format!("word {i} is not a {} matrix", space.kind().name())));
            }
            if !seen.insert(w) {
                return Err(Error::InvariantViolation(format!("word {i} is repeated")));
            }
        }
        Ok(RankCode { space, words, min_distance: None, provenance })
    }

    /// Words `L⁻¹(G)` of the given generators.
    pub fn from_generators(polar: &PolarSpace, gens: &[Subspace], provenance: Provenance) -> Result<RankCode> {
        let words = gens.iter().map(|g| polar.l_inv(g)).collect::<Result<Vec<_>>>()?;
        RankCode::new(MatrixSpace::for_polar(polar), words, provenance)
    }

    pub fn space(&self) -> &MatrixSpace {
        &self.space
    }

    pub fn words(&self) -> &[Mat] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The verified minimum distance, if [`RankCode::verify`] has run.
    pub fn verified_distance(&self) -> Option<u32> {
        self.min_distance
    }

    /// Minimum of `rank(a − b)` over unordered pairs of words.
    pub fn min_distance(&self) -> Result<u32> {
        if self.words.len() < 2 {
            return Err(Error::TooSmall);
        }
        let w = &self.words;
        let best = (0..w.len())
            .into_par_iter()
            .map(|i| {
                let mut best = u32::MAX;
                for j in i + 1..w.len() {
                    best = best.min(w[i].sub(&w[j]).rank() as u32);
                    if best == 1 {
                        break;
                    }
                }
                best
            })
            .min()
            .unwrap_or(u32::MAX);
        Ok(best)
    }

    /// Computes and records the minimum distance.
    pub fn verify(&mut self) -> Result<u32> {
        let d = self.min_distance()?;
        self.min_distance = Some(d);
        Ok(d)
    }

    /// Number of words of each rank.
    pub fn rank_census(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for w in &self.words {
            *out.entry(w.rank()).or_insert(0) += 1;
        }
        out
    }

    pub fn generators(&self) -> Vec<Subspace> {
        let polar = self.space.polar_space();
        self.words.iter().map(|w| polar.l_map(w).expect("word in space")).collect()
    }
}

/// Whether no matrix outside the code keeps distance at least `d` from every word.
pub fn is_maximal(code: &RankCode) -> Result<bool> {
    let space = code.space();
    if space.size() > MAX_AMBIENT {
        return Err(Error::AmbientTooLarge(space.size()));
    }
    let d = match code.verified_distance() {
        Some(d) => d,
        None if code.len() >= 2 => code.min_distance()?,
        None => 1,
    } as usize;
    let members: HashSet<u64> = code.words().iter().map(|w| space.index(w)).collect();
    let addable = (0..space.size() as u64).into_par_iter().any(|i| {
        if members.contains(&i) {
            return false;
        }
        let m = space.matrix(i);
        code.words().iter().all(|w| m.sub(w).rank() >= d)
    });
    Ok(!addable)
}

/// `(t_P, r_P)` for a point `P = (p, 0)` of `Π₂`: `t_P` is spanned by the
/// unit-vector completion of `p` inside `Π₂`, and `r_P = P^⊥ ∩ Π₁`.
pub fn default_pair(space: &PolarSpace, p: &[u32]) -> (Subspace, Subspace) {
    let n = space.n();
    let f = space.field();
    let dim = space.dim();
    let mut span = Subspace::from_vectors(f, dim, &[p.to_vec()]);
    let mut extra = Vec::new();
    for i in 0..n {
        let mut e = vec![0; dim];
        e[i] = 1;
        if !span.contains(&e) {
            span = span.sum(&Subspace::from_vectors(f, dim, &[e.clone()]));
            extra.push(e);
        }
    }
    let t = Subspace::from_vectors(f, dim, &extra);
    let pt = Subspace::from_vectors(f, dim, &[p.to_vec()]);
    let r = space.perp_of(&pt).intersect(&space.pi1());
    (t, r)
}

/// Planes `⟨P, ℓ·frame⟩` for the local members `ℓ` other than local `Π₁` and `L(0)`.
fn planes_through(space: &PolarSpace, p: &[u32], frame: &Mat, local: &[Subspace]) -> Vec<Subspace> {
    let loc = space.local(frame.rows() / 2);
    let (pi1, pi2) = (loc.pi1(), loc.pi2());
    let pt = Subspace::from_vectors(space.field(), space.dim(), &[p.to_vec()]);
    local
        .iter()
        .filter(|l| **l != pi1 && **l != pi2)
        .map(|l| pt.sum(&l.map(frame)))
        .collect()
}

/// Points of `Π₂` as vectors `(x, 0)`.
fn pi2_points(space: &PolarSpace) -> Vec<Vec<u32>> {
    let n = space.n();
    all_points(space.field(), n)
        .into_iter()
        .map(|mut x| {
            x.resize(2 * n, 0);
            x
        })
        .collect()
}

fn finish(polar: &PolarSpace, gens: &[Subspace], provenance: Provenance) -> Result<RankCode> {
    let mut code = RankCode::from_generators(polar, gens, provenance)?;
    code.verify()?;
    Ok(code)
}

/// 2-code of `S_{3,q}` of size `(q+1)(q³−1)+1` from Desarguesian spreads at
/// every point of `Π₂`.
pub fn sym2_basic(q: u32) -> Result<RankCode> {
    let f = Field::of_order(q)?;
    let space = PolarSpace::symplectic(3, &f);
    let local = standard_desarguesian(&space.local(2))?;
    let mut gens = vec![space.pi2()];
    for p in pi2_points(&space) {
        let (t, r) = default_pair(&space, &p);
        let frame = space.frame_from_pair(&t, &r)?;
        gens.extend(planes_through(&space, &p, &frame, &local));
    }
    finish(&space, &gens, Provenance::new("sym2-basic").with("q", q))
}

/// Points of `Π₂` handled with the default pair in the extended construction:
/// the absolute points of the polarity induced on `Π₂` by `Π₁` and `L(I)`,
/// together with the pole of the absolute line when `q` is even.
pub fn extended_special_points(space: &PolarSpace) -> Result<Vec<Vec<u32>>> {
    let f = space.field();
    let n = space.n();
    let pi3 = space.l_map(&Mat::identity(f, n))?;
    let m = space.transversal_polarity(&space.pi2(), &space.pi1(), &pi3)?;
    let pts = pi2_points(space);
    let is_abs = |v: &[u32]| {
        let x = &v[..n];
        let mx = m.vec_mul(x);
        mx.iter().zip(x).fold(0, |a, (&u, &w)| f.add(a, f.mul(u, w))) == 0
    };
    let mut special: Vec<Vec<u32>> = pts.iter().filter(|v| is_abs(v)).cloned().collect();
    if q_is_even(f) {
        // pole of the absolute line: common point of the images of its points
        let images: Vec<Vec<u32>> = special.iter().map(|v| m.vec_mul(&v[..n])).collect();
        let pole = Mat::from_rows(f, &images).kernel();
        if pole.rows() != 1 {
            return Err(Error::VerificationFailed("absolute set is not a line".into()));
        }
        let mut v = normalize(f, pole.row(0));
        v.resize(2 * n, 0);
        special.push(v);
    }
    Ok(special)
}

fn q_is_even(f: &Field) -> bool {
    f.p() == 2
}

/// 2-code of `S_{3,q}`, `q > 2`, adding regulus-avoiding spreads and the
/// Segre planes `L(λI)` to the basic construction.
pub fn sym2_extended(q: u32) -> Result<RankCode> {
    if q <= 2 {
        return Err(Error::UnsupportedQ(q));
    }
    let f = Field::of_order(q)?;
    let space = PolarSpace::symplectic(3, &f);
    let local_space = space.local(2);
    let default_local = standard_desarguesian(&local_space)?;
    let segre = space.segre_planes(&Mat::identity(&f, 3))?;
    let (pi1, pi2, pi3) = (&segre[0], &segre[1], &segre[2]);
    let special = extended_special_points(&space)?;
    let mut gens: Vec<Subspace> = segre[1..].to_vec();
    for p in pi2_points(&space) {
        if special.contains(&p) {
            let (t, r) = default_pair(&space, &p);
            let frame = space.frame_from_pair(&t, &r)?;
            gens.extend(planes_through(&space, &p, &frame, &default_local));
            continue;
        }
        let t = space.polarity_image(pi2, pi1, pi3, &p);
        let pt = Subspace::from_vectors(&f, 6, &[p.clone()]);
        let r = space.perp_of(&pt).intersect(pi1);
        let sigma = t.sum(&r);
        let frame = space.frame_from_pair(&t, &r)?;
        let mut regulus = Vec::with_capacity(segre.len());
        for plane in &segre {
            let line = sigma.intersect(plane);
            if line.dim() != 2 {
                return Err(Error::VerificationFailed("regulus line is not a line".into()));
            }
            regulus.push(pull_back(&frame, &line).expect("line inside the frame"));
        }
        let local = standard_avoiding(&local_space, &regulus)?;
        gens.extend(planes_through(&space, &p, &frame, &local));
    }
    finish(&space, &gens, Provenance::new("sym2-ext").with("q", q))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpreadProvider {
    FieldReduction,
    Additive,
    File(PathBuf),
}

impl SpreadProvider {
    pub fn name(&self) -> String {
        match self {
            SpreadProvider::FieldReduction => "field_reduction".into(),
            SpreadProvider::Additive => "additive".into(),
            SpreadProvider::File(p) => format!("file:{}", p.display()),
        }
    }
}

/// Moves a partial spread of the standard H(3,q²) so that it contains local
/// `Π₁` and `L(0)`; when it does not already, its two smallest members are sent there.
fn normalize_local(local: &PolarSpace, spread: &PartialSpread) -> Result<Vec<Subspace>> {
    let (pi1, pi2) = (local.pi1(), local.pi2());
    if spread.members.contains(&pi1) && spread.members.contains(&pi2) {
        return Ok(spread.members.clone());
    }
    let mut sorted = spread.members.clone();
    sorted.sort();
    if sorted.len() < 2 {
        return Err(Error::BadProvider("fewer than two members".into()));
    }
    let frame = local.frame_from_pair(&sorted[0], &sorted[1])?;
    let g = frame.inverse()?;
    Ok(spread.members.iter().map(|m| m.map(&g)).collect())
}

/// The local partial spread of H(3,q²) supplied by a provider.
pub fn provider_spread(local: &PolarSpace, provider: &SpreadProvider) -> Result<Vec<Subspace>> {
    let members = match provider {
        SpreadProvider::Additive => standard_additive_h3(local)?,
        SpreadProvider::FieldReduction => {
            let s = herm_partial_spread(1, local.q())?;
            normalize_local(local, &s)?
        }
        SpreadProvider::File(path) => {
            let s = read_spread(path).map_err(|e| Error::BadProvider(e.to_string()))?;
            if s.space.kind() != Kind::Hermitian || s.space.n() != 2 || **s.space.field() != **local.field() {
                return Err(Error::BadProvider("spread is not in H(3,q^2) over the right field".into()));
            }
            normalize_local(local, &s)?
        }
    };
    let spread = PartialSpread { space: local.clone(), members: members.clone(), provenance: provider.name() };
    spread.verify().map_err(|e| Error::BadProvider(e.to_string()))?;
    if !spread.contains(&local.pi1()) || !spread.contains(&local.pi2()) {
        return Err(Error::BadProvider("spread misses r or t".into()));
    }
    Ok(members)
}

/// 2-code of `H_{3,q²}` of size `(q⁴+q²+1)(|F|−2)+1`.
pub fn herm2(q: u32, provider: &SpreadProvider) -> Result<RankCode> {
    let f = Field::of_order(q.checked_mul(q).ok_or(Error::UnsupportedQ(q))?)?;
    let space = PolarSpace::hermitian(3, &f)?;
    let local = provider_spread(&space.local(2), provider)?;
    let mut gens = vec![space.pi2()];
    for p in pi2_points(&space) {
        let (t, r) = default_pair(&space, &p);
        let frame = space.frame_from_pair(&t, &r)?;
        gens.extend(planes_through(&space, &p, &frame, &local));
    }
    let prov = Provenance::new("herm2").with("q", q).with("provider", provider.name());
    finish(&space, &gens, prov)
}

/// `n`-code from a partial spread: the smallest member is moved to `Π₁` and
/// the others are read off through `L⁻¹`.
pub fn ncode_from_partial_spread(spread: &PartialSpread) -> Result<RankCode> {
    if spread.len() < 2 {
        return Err(Error::TooSmall);
    }
    spread.verify()?;
    let lambda = spread.members.iter().min().expect("nonempty");
    let g = spread.space.adapt_basis(lambda)?;
    let gens: Vec<Subspace> = spread.members.iter().filter(|m| *m != lambda).map(|m| m.map(&g)).collect();
    let prov = Provenance::new("ncode").with("from", &spread.provenance);
    finish(&spread.space, &gens, prov)
}
