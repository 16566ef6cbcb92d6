//! Arithmetic in GF(2^m) for 2 <= m <= 24.
//!
//! Elements are stored as `m`-bit masks over the polynomial basis of a fixed
//! primitive reduction polynomial, so the class of `x` (bit pattern `0b10`)
//! generates the multiplicative group. Fields with `m <= 16` carry log/antilog
//! tables; larger fields multiply by shift-and-reduce.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 24;

/// Largest degree for which log/antilog tables are built.
const TABLE_LIMIT: u32 = 16;

/// Lexicographically least primitive polynomial of each degree 2..=24,
/// as bitmasks including the leading term.
pub const PRIMITIVE_POLYS: [u32; 23] = [
    0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11d, 0x211, 0x409, 0x805, 0x1053, 0x201b, 0x402b, 0x8003,
    0x1002d, 0x20009, 0x40027, 0x80027, 0x100009, 0x200005, 0x400003, 0x800021, 0x100001b,
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("extension degree {0} outside supported range 2..=24")]
    DegreeOutOfRange(u32),
    #[error("length {0} must be odd and at least 3")]
    InvalidLength(u64),
    #[error("{n} does not divide the multiplicative order {order}")]
    NotADivisor { n: u64, order: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{a} is not invertible modulo {modulus}")]
    NotInvertible { a: i64, modulus: i64 },
}

/// An element of GF(2^m). Meaningless without the [`Field`] it came from.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Gf(pub u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf({:#x})", self.0)
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

// addition in characteristic 2 is xor
#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Add for Gf {
    type Output = Gf;
    #[inline]
    fn add(self, rhs: Gf) -> Gf {
        Gf(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl std::ops::AddAssign for Gf {
    #[inline]
    fn add_assign(&mut self, rhs: Gf) {
        self.0 ^= rhs.0;
    }
}

#[derive(Clone)]
struct LogTables {
    // exp has 2*order entries so that log(a)+log(b) never needs a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// GF(2^m) with a fixed primitive reduction polynomial.
///
/// Immutable after construction; share it freely between threads.
#[derive(Clone)]
pub struct Field {
    m: u32,
    poly: u32,
    order: u32,
    tables: Option<LogTables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("m", &self.m)
            .field("poly", &format_args!("{:#x}", self.poly))
            .field("order", &self.order)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.poly == other.poly
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(2^m) over the shipped primitive polynomial of degree `m`.
    pub fn new(m: u32) -> Result<Self, FieldError> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
            return Err(FieldError::DegreeOutOfRange(m));
        }
        let poly = PRIMITIVE_POLYS[(m - MIN_DEGREE) as usize];
        let order = (1u32 << m) - 1;
        let mut field = Field {
            m,
            poly,
            order,
            tables: None,
        };
        if m <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    fn build_tables(&self) -> LogTables {
        let order = self.order as usize;
        let mut exp = vec![0u32; 2 * order];
        let mut log = vec![0u32; order + 1];
        let mut x = 1u32;
        for i in 0..order {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = self.mul_slow(x, 2);
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        LogTables { exp, log }
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn reduction_poly(&self) -> u32 {
        self.poly
    }

    /// Size of the multiplicative group, 2^m - 1.
    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    #[inline]
    pub fn size(&self) -> u64 {
        self.order as u64 + 1
    }

    /// The fixed generator: the class of `x`.
    #[inline]
    pub fn generator(&self) -> Gf {
        Gf(2)
    }

    pub fn contains(&self, a: Gf) -> bool {
        a.0 <= self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..=self.order).map(Gf)
    }

    #[inline]
    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        a + b
    }

    fn mul_slow(&self, mut a: u32, mut b: u32) -> u32 {
        let top = 1u32 << self.m;
        let mut r = 0u32;
        while b != 0 {
            if b & 1 != 0 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.poly;
            }
        }
        r
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.0 == 0 || b.0 == 0 {
            return Gf::ZERO;
        }
        match &self.tables {
            Some(t) => Gf(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => Gf(self.mul_slow(a.0, b.0)),
        }
    }

    #[inline]
    pub fn square(&self, a: Gf) -> Gf {
        self.mul(a, a)
    }

    pub fn inv(&self, a: Gf) -> Result<Gf, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize];
                Gf(t.exp[((self.order - l) % self.order) as usize])
            }
            None => self.pow_u(a, self.order as u64 - 1),
        })
    }

    pub fn div(&self, a: Gf, b: Gf) -> Result<Gf, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for a non-negative exponent; `0^0 = 1`.
    pub fn pow_u(&self, a: Gf, e: u64) -> Gf {
        if e == 0 {
            return Gf::ONE;
        }
        if a.is_zero() {
            return Gf::ZERO;
        }
        let e = e % self.order as u64;
        if let Some(t) = &self.tables {
            let l = (t.log[a.0 as usize] as u64 * e) % self.order as u64;
            return Gf(t.exp[l as usize]);
        }
        let mut base = a;
        let mut e = e;
        let mut acc = Gf::ONE;
        while e != 0 {
            if e & 1 != 0 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for any integer exponent; negative exponents invert first.
    pub fn pow(&self, a: Gf, e: i64) -> Result<Gf, FieldError> {
        if e >= 0 {
            Ok(self.pow_u(a, e as u64))
        } else {
            let inv = self.inv(a)?;
            Ok(self.pow_u(inv, e.unsigned_abs()))
        }
    }

    /// Discrete logarithm to base [`Field::generator`]. `None` for zero.
    pub fn log(&self, a: Gf) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        if let Some(t) = &self.tables {
            return Some(t.log[a.0 as usize]);
        }
        // only used off the hot path for large fields
        let mut x = Gf::ONE;
        for i in 0..self.order {
            if x == a {
                return Some(i);
            }
            x = self.mul(x, self.generator());
        }
        None
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Gf) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut ord = self.order as u64;
        for (p, _) in factorize(ord) {
            while ord.is_multiple_of(p) && self.pow_u(a, ord / p) == Gf::ONE {
                ord /= p;
            }
        }
        Some(ord)
    }

    /// A primitive `n`-th root of unity, `g^((2^m-1)/n)`.
    pub fn nth_root(&self, n: u64) -> Result<Gf, FieldError> {
        let order = self.order as u64;
        if n == 0 || !order.is_multiple_of(n) {
            return Err(FieldError::NotADivisor { n, order });
        }
        Ok(self.pow_u(self.generator(), order / n))
    }
}

/// Smallest `m` with `n | 2^m - 1`, i.e. the degree of the splitting field
/// of `x^n - 1` over GF(2).
pub fn splitting_degree(n: u64) -> Result<u32, FieldError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(FieldError::InvalidLength(n));
    }
    let mut m = 1u32;
    let mut p = 2 % n;
    while p != 1 {
        p = (p * 2) % n;
        m += 1;
    }
    Ok(m)
}

/// The unique `0 < b < modulus` with `a * b = 1 (mod modulus)`.
pub fn mod_inverse(a: i64, modulus: i64) -> Result<i64, FieldError> {
    if modulus < 1 {
        return Err(FieldError::NotInvertible { a, modulus });
    }
    if modulus == 1 {
        return Err(FieldError::NotInvertible { a, modulus });
    }
    let r = a.rem_euclid(modulus);
    let eg = r.extended_gcd(&modulus);
    if eg.gcd != 1 {
        return Err(FieldError::NotInvertible { a, modulus });
    }
    Ok(eg.x.rem_euclid(modulus))
}

/// Prime factorisation by trial division; fine for the 24-bit orders used here.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
