//! The ambient matrix spaces `S_{n,q}` (symmetric over GF(q)) and `H_{n,q²}`
//! (Hermitian over GF(q²)), with a dense index for enumeration.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Mat;
use crate::polar::{Kind, PolarSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    Sym,
    Herm,
}

impl FormKind {
    pub fn name(self) -> &'static str {
        match self {
            FormKind::Sym => "sym",
            FormKind::Herm => "herm",
        }
    }

    pub fn parse(s: &str) -> Option<FormKind> {
        match s {
            "sym" => Some(FormKind::Sym),
            "herm" => Some(FormKind::Herm),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MatrixSpace {
    kind: FormKind,
    n: usize,
    q: u32,
    field: Arc<Field>,
    diag: Vec<u32>,
    diag_index: Vec<u32>,
}

impl PartialEq for MatrixSpace {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.n == other.n && *self.field == *other.field
    }
}

impl MatrixSpace {
    /// `S_{n,q}` over the given GF(q).
    pub fn sym(n: usize, field: &Arc<Field>) -> MatrixSpace {
        let diag: Vec<u32> = (0..field.q()).collect();
        MatrixSpace { kind: FormKind::Sym, n, q: field.q(), field: field.clone(), diag_index: diag.clone(), diag }
    }

    /// `H_{n,q²}` over the given GF(q²).
    pub fn herm(n: usize, field: &Arc<Field>) -> Result<MatrixSpace> {
        let q = field.base_order().ok_or(Error::NotAQuadraticExtension { order: field.q(), base: 0 })?;
        let diag = field.subfield(q);
        let mut diag_index = vec![u32::MAX; field.q() as usize];
        for (i, &x) in diag.iter().enumerate() {
            diag_index[x as usize] = i as u32;
        }
        Ok(MatrixSpace { kind: FormKind::Herm, n, q, field: field.clone(), diag, diag_index })
    }

    pub fn new(kind: FormKind, n: usize, q: u32) -> Result<MatrixSpace> {
        match kind {
            FormKind::Sym => Ok(MatrixSpace::sym(n, &Field::of_order(q)?)),
            FormKind::Herm => {
                let q2 = q.checked_mul(q).ok_or(Error::UnsupportedQ(q))?;
                MatrixSpace::herm(n, &Field::of_order(q2)?)
            }
        }
    }

    /// Ambient of the generators corresponding to this matrix space.
    pub fn polar_space(&self) -> PolarSpace {
        match self.kind {
            FormKind::Sym => PolarSpace::symplectic(self.n, &self.field),
            FormKind::Herm => PolarSpace::hermitian(self.n, &self.field).expect("quadratic extension"),
        }
    }

    pub fn for_polar(space: &PolarSpace) -> MatrixSpace {
        match space.kind() {
            Kind::Symplectic => MatrixSpace::sym(space.n(), space.field()),
            Kind::Hermitian => MatrixSpace::herm(space.n(), space.field()).expect("quadratic extension"),
        }
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// Number of matrices: `q^{n(n+1)/2}` or `q^{n²}`.
    pub fn size(&self) -> u128 {
        let n = self.n as u32;
        match self.kind {
            FormKind::Sym => (self.q as u128).pow(n * (n + 1) / 2),
            FormKind::Herm => (self.q as u128).pow(n * n),
        }
    }

    pub fn contains(&self, m: &Mat) -> bool {
        m.rows() == self.n
            && m.cols() == self.n
            && *m.field() == self.field
            && match self.kind {
                FormKind::Sym => m.is_symmetric(),
                FormKind::Herm => m.is_hermitian(),
            }
    }

    pub fn zero(&self) -> Mat {
        Mat::zeros(&self.field, self.n, self.n)
    }

    /// Matrix with the given index in `[0, size)`. Digits run over the upper
    /// triangle in row-major order, least significant first.
    pub fn matrix(&self, index: u64) -> Mat {
        let f = &self.field;
        let mut m = self.zero();
        let mut c = index;
        for i in 0..self.n {
            for j in i..self.n {
                if i == j {
                    let radix = self.diag.len() as u64;
                    m.set(i, i, self.diag[(c % radix) as usize]);
                    c /= radix;
                } else {
                    let radix = f.q() as u64;
                    let v = (c % radix) as u32;
                    c /= radix;
                    m.set(i, j, v);
                    m.set(j, i, match self.kind {
                        FormKind::Sym => v,
                        FormKind::Herm => f.conj_unchecked(v),
                    });
                }
            }
        }
        m
    }

    /// Inverse of [`MatrixSpace::matrix`]; assumes `m` lies in the space.
    pub fn index(&self, m: &Mat) -> u64 {
        let mut idx = 0u64;
        let mut place = 1u64;
        for i in 0..self.n {
            for j in i..self.n {
                if i == j {
                    idx += self.diag_index[m.get(i, i) as usize] as u64 * place;
                    place *= self.diag.len() as u64;
                } else {
                    idx += m.get(i, j) as u64 * place;
                    place *= self.field.q() as u64;
                }
            }
        }
        idx
    }

    pub fn iter(&self) -> impl Iterator<Item = Mat> + '_ {
        (0..self.size() as u64).map(move |i| self.matrix(i))
    }
}
