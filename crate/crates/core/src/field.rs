//! Table-driven arithmetic in GF(p^k).
//!
//! Elements are encoded as integers in `[0, q)`: the coefficient vector of the
//! polynomial-basis representative read in base `p`, constant term first.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

const MAX_ORDER: u64 = 1 << 20;
const ADD_TABLE_MAX: u32 = 1024;
const TABLE_PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    irreducible: Vec<u32>,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
    conj: Option<Vec<u32>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})[{}]", self.q, self.descriptor())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.irreducible == other.irreducible
    }
}

impl Eq for Field {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareClass {
    Zero,
    Square,
    NonSquare,
}

fn cache() -> &'static Mutex<HashMap<(u32, u32), Arc<Field>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<Field>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Splits a prime power into `(p, k)`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over GF(p), lowest coefficient first, no trailing zeros.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv_mod_p(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let (mut b, mut e) = (a as u64 % p as u64, p as u64 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        let lead_inv = inv_mod_p(f[df], p);
        while r.len() > df {
            let d = r.len() - 1;
            let c = (r[d] as u64 * lead_inv as u64 % p as u64) as u32;
            for (i, &fi) in f.iter().enumerate() {
                let idx = d - df + i;
                r[idx] = ((r[idx] as u64 + (p - c) as u64 * fi as u64) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut v: Vec<u32> = out.into_iter().map(|x| x as u32).collect();
        trim(&mut v);
        v
    }

    pub fn mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), f, p)
    }

    pub fn powmod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
        let mut r = vec![1];
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(&r, &b, f, p);
            }
            b = mulmod(&b, &b, f, p);
            e >>= 1;
        }
        r
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out: Vec<u32> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }
}

/// Rabin's irreducibility test for a monic polynomial of degree k over GF(p).
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() as u64 - 1;
    if k == 0 || f[k as usize] != 1 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let t = vec![0, 1];
    let frob = |times: u64| {
        let mut x = t.clone();
        for _ in 0..times {
            x = poly::powmod(&x, p as u64, f, p);
        }
        x
    };
    if poly::sub(&frob(k), &t, p).len() > 0 {
        return false;
    }
    for r in prime_factors(k) {
        let g = poly::gcd(&poly::sub(&frob(k / r), &t, p), f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn default_irreducible(p: u32, k: u32) -> Vec<u32> {
    let order = (p as u64).pow(k) - 1;
    let factors = prime_factors(order);
    let t = vec![0, 1];
    let count = (p as u64).pow(k);
    for code in 0..count {
        let mut f: Vec<u32> = (0..k).map(|i| ((code / (p as u64).pow(i)) % p as u64) as u32).collect();
        if f[0] == 0 {
            continue;
        }
        f.push(1);
        if !is_irreducible(&f, p) {
            continue;
        }
        let primitive = factors
            .iter()
            .all(|&r| poly::powmod(&t, order / r, &f, p) != vec![1]);
        if primitive {
            return f;
        }
    }
    unreachable!("a primitive polynomial exists for every degree")
}

impl Field {
    /// The field GF(p^k) defined by the built-in irreducible polynomial.
    pub fn get(p: u32, k: u32) -> Result<Arc<Field>> {
        if !TABLE_PRIMES.contains(&p) || k == 0 || k > 12 || (p as u64).pow(k) > MAX_ORDER {
            return Err(Error::UnsupportedField { p, k });
        }
        let mut guard = cache().lock().unwrap();
        if let Some(f) = guard.get(&(p, k)) {
            return Ok(f.clone());
        }
        let field = Arc::new(Field::build(p, default_irreducible(p, k))?);
        guard.insert((p, k), field.clone());
        Ok(field)
    }

    /// The field of order `q` from the built-in table.
    pub fn of_order(q: u32) -> Result<Arc<Field>> {
        let (p, k) = prime_power(q).ok_or(Error::UnsupportedField { p: q, k: 1 })?;
        Field::get(p, k)
    }

    /// GF(p^k) defined by a caller-supplied monic irreducible polynomial
    /// (coefficients constant term first).
    pub fn with_irreducible(p: u32, irreducible: &[u32]) -> Result<Arc<Field>> {
        let k = irreducible.len() as u32 - 1;
        if prime_power(p) != Some((p, 1)) || k == 0 || (p as u64).pow(k) > MAX_ORDER {
            return Err(Error::UnsupportedField { p, k });
        }
        if irreducible.iter().any(|&c| c >= p) || !is_irreducible(irreducible, p) {
            return Err(Error::Reducible(p));
        }
        if let Ok(table) = Field::get(p, k) {
            if table.irreducible == irreducible {
                return Ok(table);
            }
        }
        Ok(Arc::new(Field::build(p, irreducible.to_vec())?))
    }

    fn build(p: u32, irreducible: Vec<u32>) -> Result<Field> {
        let k = irreducible.len() as u32 - 1;
        let q = p.pow(k);
        let to_poly = |x: u32| -> Vec<u32> {
            let mut v: Vec<u32> = (0..k).map(|i| (x / p.pow(i)) % p).collect();
            poly::trim(&mut v);
            v
        };
        let from_poly = |v: &[u32]| -> u32 { v.iter().enumerate().map(|(i, &c)| c * p.pow(i as u32)).sum() };
        let order = q as u64 - 1;
        let factors = prime_factors(order);
        let primitive = (1..q)
            .find(|&g| {
                let gp = to_poly(g);
                poly::powmod(&gp, order, &irreducible, p) == vec![1]
                    && factors
                        .iter()
                        .all(|&r| poly::powmod(&gp, order / r, &irreducible, p) != vec![1])
            })
            .expect("multiplicative group is cyclic");
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let gp = to_poly(primitive);
        let mut cur = vec![1u32];
        for i in 0..n {
            let v = from_poly(&cur);
            exp[i] = v;
            exp[i + n] = v;
            log[v as usize] = i as u32;
            cur = poly::mulmod(&cur, &gp, &irreducible, p);
        }
        let digit_add = |a: u32, b: u32| -> u32 {
            let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
            while a > 0 || b > 0 {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out
        };
        let neg: Vec<u32> = (0..q)
            .map(|x| {
                let (mut x, mut out, mut place) = (x, 0, 1);
                while x > 0 {
                    out += ((p - x % p) % p) * place;
                    x /= p;
                    place *= p;
                }
                out
            })
            .collect();
        let add = (p != 2 && q <= ADD_TABLE_MAX).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(a, b);
                }
            }
            t
        });
        let mut field = Field { p, k, q, irreducible, primitive, exp, log, neg, add, conj: None };
        if k % 2 == 0 {
            let base = p.pow(k / 2) as u64;
            let conj = (0..q).map(|x| field.pow(x, base)).collect();
            field.conj = Some(conj);
        }
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn irreducible(&self) -> &[u32] {
        &self.irreducible
    }

    pub fn primitive(&self) -> u32 {
        self.primitive
    }

    /// Header descriptor `p^k#c0,c1,...,ck`.
    pub fn descriptor(&self) -> String {
        let coeffs: Vec<String> = self.irreducible.iter().map(|c| c.to_string()).collect();
        format!("{}^{}#{}", self.p, self.k, coeffs.join(","))
    }

    pub fn from_descriptor(s: &str) -> Result<Arc<Field>> {
        let bad = || Error::ParseError { line: 1, msg: format!("bad field descriptor {s:?}") };
        let (pk, coeffs) = s.split_once('#').ok_or_else(bad)?;
        let (p, k) = pk.split_once('^').ok_or_else(bad)?;
        let p: u32 = p.parse().map_err(|_| bad())?;
        let k: u32 = k.parse().map_err(|_| bad())?;
        let coeffs: Vec<u32> = coeffs
            .split(',')
            .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if coeffs.len() as u32 != k + 1 {
            return Err(bad());
        }
        Field::with_irreducible(p, &coeffs).map_err(|e| Error::ParseError { line: 1, msg: e.to_string() })
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            a ^ b
        } else if let Some(t) = &self.add {
            t[(a * self.q + b) as usize]
        } else {
            let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
            while a > 0 || b > 0 {
                out += ((a % self.p + b % self.p) % self.p) * place;
                a /= self.p;
                b /= self.p;
                place *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse; panics on zero (see [`Field::checked_inv`]).
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    pub fn checked_inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv(a))
        }
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// `g^i` for the primitive element `g`.
    pub fn exp(&self, i: u64) -> u32 {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }

    /// Discrete log base the primitive element; `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// Order of the subfield GF(q) when this field is GF(q²).
    pub fn base_order(&self) -> Option<u32> {
        (self.k % 2 == 0).then(|| self.p.pow(self.k / 2))
    }

    fn check_base(&self, base_q: u32) -> Result<()> {
        if self.base_order() == Some(base_q) {
            Ok(())
        } else {
            Err(Error::NotAQuadraticExtension { order: self.q, base: base_q })
        }
    }

    /// `x ↦ x^q` on GF(q²).
    pub fn conj(&self, x: u32, base_q: u32) -> Result<u32> {
        self.check_base(base_q)?;
        Ok(self.conj_unchecked(x))
    }

    /// Conjugation over the index-2 subfield; identity on fields of odd degree.
    #[inline]
    pub fn conj_unchecked(&self, x: u32) -> u32 {
        match &self.conj {
            Some(t) => t[x as usize],
            None => x,
        }
    }

    /// A nonzero `ω` with `ω^q = −ω`.
    pub fn omega(&self, base_q: u32) -> Result<u32> {
        self.check_base(base_q)?;
        if self.p == 2 {
            Ok(1)
        } else {
            Ok(self.exp((base_q as u64 + 1) / 2))
        }
    }

    /// Elements fixed by `x ↦ x^sub_q`, ascending.
    pub fn subfield(&self, sub_q: u32) -> Vec<u32> {
        (0..self.q).filter(|&x| self.pow(x, sub_q as u64) == x).collect()
    }

    /// Square class of `x` in this field (which must have odd order).
    pub fn square_class(&self, x: u32) -> Result<SquareClass> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        Ok(if x == 0 {
            SquareClass::Zero
        } else if self.pow(x, (self.q as u64 - 1) / 2) == 1 {
            SquareClass::Square
        } else {
            SquareClass::NonSquare
        })
    }

    /// Square class of `x` inside the subfield GF(base_q); `x` must lie there.
    pub fn square_class_in(&self, x: u32, base_q: u32) -> Result<SquareClass> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if self.pow(x, base_q as u64) != x {
            return Err(Error::BadParams(format!("{x} is not in GF({base_q})")));
        }
        Ok(if x == 0 {
            SquareClass::Zero
        } else if self.pow(x, (base_q as u64 - 1) / 2) == 1 {
            SquareClass::Square
        } else {
            SquareClass::NonSquare
        })
    }
}

/// A field element carrying its field, with checked arithmetic.
#[derive(Clone, Debug)]
pub struct FieldElement {
    pub value: u32,
    pub field: Arc<Field>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && same_field(&self.field, &other.field)
    }
}

pub fn same_field(a: &Arc<Field>, b: &Arc<Field>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow(u64),
}

impl FieldElement {
    pub fn new(field: &Arc<Field>, value: u32) -> Self {
        assert!(value < field.q(), "element out of range");
        FieldElement { value, field: field.clone() }
    }

    /// Binary and unary arithmetic; `other` is ignored by unary operations.
    pub fn arith(&self, other: &FieldElement, op: ArithOp) -> Result<FieldElement> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::MixedFields);
        }
        let f = &self.field;
        let (a, b) = (self.value, other.value);
        let value = match op {
            ArithOp::Add => f.add(a, b),
            ArithOp::Sub => f.sub(a, b),
            ArithOp::Mul => f.mul(a, b),
            ArithOp::Div => f.mul(a, f.checked_inv(b)?),
            ArithOp::Neg => f.neg(a),
            ArithOp::Inv => f.checked_inv(a)?,
            ArithOp::Pow(e) => f.pow(a, e),
        };
        Ok(FieldElement { value, field: f.clone() })
    }
}

/// GF(q²) ⊂ GF(q^{4m−2}) with an explicit embedding and GF(q²)-coordinates.
pub struct Tower {
    pub q: u32,
    pub m: u32,
    pub small: Arc<Field>,
    pub big: Arc<Field>,
    embed: Vec<u32>,
    project: Vec<u32>,
    /// GF(q²)-basis of the big field: powers of its primitive element.
    pub basis: Vec<u32>,
    coords: Vec<u32>,
}

impl Tower {
    pub fn new(q: u32, m: u32) -> Result<Tower> {
        let (p, e) = prime_power(q).ok_or(Error::UnsupportedQ(q))?;
        if m == 0 {
            return Err(Error::IncompatibleTower("m must be positive".into()));
        }
        let small = Field::get(p, 2 * e)?;
        let big = Field::get(p, (4 * m - 2) * e).map_err(|e| Error::IncompatibleTower(e.to_string()))?;
        let f = small.irreducible();
        let beta = (0..big.q())
            .find(|&x| f.iter().rev().fold(0, |acc, &c| big.add(big.mul(acc, x), c)) == 0)
            .ok_or_else(|| Error::IncompatibleTower("defining polynomial has no root".into()))?;
        let deg = small.k();
        let mut embed = vec![0u32; small.q() as usize];
        let mut project = vec![u32::MAX; big.q() as usize];
        for a in 0..small.q() {
            let mut acc = 0;
            let mut pw = 1;
            let mut x = a;
            for _ in 0..deg {
                acc = big.add(acc, big.mul(x % p, pw));
                pw = big.mul(pw, beta);
                x /= p;
            }
            embed[a as usize] = acc;
            project[acc as usize] = a;
        }
        let dim = (2 * m - 1) as usize;
        let basis: Vec<u32> = (0..dim as u64).map(|j| big.exp(j)).collect();
        let mut coords = vec![0u32; big.q() as usize * dim];
        let qq = small.q() as u64;
        for code in 0..qq.pow(dim as u32) {
            let mut x = 0;
            let mut c = code;
            let mut digits = Vec::with_capacity(dim);
            for &b in &basis {
                let a = (c % qq) as u32;
                c /= qq;
                digits.push(a);
                x = big.add(x, big.mul(embed[a as usize], b));
            }
            coords[x as usize * dim..(x as usize + 1) * dim].copy_from_slice(&digits);
        }
        Ok(Tower { q, m, small, big, embed, project, basis, coords })
    }

    pub fn embed(&self, a: u32) -> u32 {
        self.embed[a as usize]
    }

    /// Inverse of [`Tower::embed`] on the subfield.
    pub fn project(&self, x: u32) -> Option<u32> {
        let v = self.project[x as usize];
        (v != u32::MAX).then_some(v)
    }

    /// Coordinates of `x` over GF(q²) in [`Tower::basis`].
    pub fn coords(&self, x: u32) -> &[u32] {
        let dim = (2 * self.m - 1) as usize;
        &self.coords[x as usize * dim..(x as usize + 1) * dim]
    }

    /// `x ↦ x^{q^{2m−1}}`, the involution of GF(q^{4m−2}).
    pub fn sigma(&self, x: u32) -> u32 {
        self.big.pow(x, (self.q as u64).pow(2 * self.m - 1))
    }

    /// Relative trace to GF(q²), returned as an element of the small field.
    pub fn rel_trace(&self, x: u32) -> Result<u32> {
        let q2 = (self.q as u64).pow(2);
        let mut y = x;
        let mut acc = 0;
        for _ in 0..(2 * self.m - 1) {
            acc = self.big.add(acc, y);
            y = self.big.pow(y, q2);
        }
        self.project(acc)
            .ok_or_else(|| Error::IncompatibleTower("trace left the subfield".into()))
    }
}
