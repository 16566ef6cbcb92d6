//! Binary cyclic codes: cyclotomic cosets, complete defining sets, generator
//! polynomials, encoding, syndromes and capability checks.
//!
//! Words are `u128` bit masks with bit `i` holding the coefficient `c_i` of
//! `c_0 + c_1 x + ... + c_{n-1} x^{n-1}`, so lengths are limited to `n <= 127`.

use crate::gf2m::{splitting_degree, Field, FieldError, Gf};
use crate::par::Execution;
use itertools::Itertools;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

pub const MAX_LENGTH: u32 = 127;

/// Capability detection stops here; the decoders only handle `t <= 3`.
pub const MAX_T: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("length {0} must be odd with 3 <= n <= 127")]
    InvalidLength(u32),
    #[error("defining set entry {entry} is not in [0, {n})")]
    IndexOutOfRange { entry: u32, n: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("cannot parse code descriptor {0:?}; expected \"n:i1,i2,...\"")]
    Descriptor(String),
    #[error("message has {got} bits, expected {expected}")]
    MessageLength { got: usize, expected: usize },
    #[error("word has {got} bits, expected {expected}")]
    WordLength { got: usize, expected: usize },
    #[error("cannot parse word {0:?}")]
    WordSyntax(String),
    #[error("syndrome exponent {0} is not in the complete defining set")]
    NotAvailable(u32),
    #[error("generator polynomial has coefficients outside GF(2)")]
    NotBinary,
    #[error("capability t={0} exceeds the supported maximum of 3")]
    CapabilityTooLarge(u32),
    #[error("syndromes of patterns with weight <= {0} collide")]
    CapabilityNotMet(u32),
}

/// The 2-cyclotomic coset of `i` modulo `n`, in generation order.
pub fn cyclotomic_coset(n: u32, i: u32) -> Vec<u32> {
    let start = i % n;
    let mut out = vec![start];
    let mut x = (start * 2) % n;
    while x != start {
        out.push(x);
        x = (x * 2) % n;
    }
    out
}

/// Union of the cyclotomic cosets of every member of `set`, sorted.
pub fn complete_defining_set(n: u32, set: &[u32]) -> Vec<u32> {
    let mut all = BTreeSet::new();
    for &i in set {
        all.extend(cyclotomic_coset(n, i));
    }
    all.into_iter().collect()
}

/// A binary polynomial of degree < 128, bit `i` = coefficient of `x^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BinaryPolynomial {
    pub bits: u128,
}

impl BinaryPolynomial {
    pub fn degree(&self) -> Option<u32> {
        if self.bits == 0 {
            None
        } else {
            Some(127 - self.bits.leading_zeros())
        }
    }

    /// Carry-less product; panics if the result would not fit in 128 bits.
    pub fn mul(&self, other: &BinaryPolynomial) -> BinaryPolynomial {
        let (Some(da), Some(db)) = (self.degree(), other.degree()) else {
            return BinaryPolynomial { bits: 0 };
        };
        assert!(da + db < 128, "product degree exceeds 127");
        let mut r = 0u128;
        let mut b = other.bits;
        let mut shift = 0;
        while b != 0 {
            if b & 1 != 0 {
                r ^= self.bits << shift;
            }
            b >>= 1;
            shift += 1;
        }
        BinaryPolynomial { bits: r }
    }

    /// Remainder of division by `divisor`.
    pub fn rem(&self, divisor: &BinaryPolynomial) -> BinaryPolynomial {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut r = self.bits;
        while r != 0 {
            let dr = 127 - r.leading_zeros();
            if dr < dd {
                break;
            }
            r ^= divisor.bits << (dr - dd);
        }
        BinaryPolynomial { bits: r }
    }

    /// `x^n - 1` (= `x^n + 1` over GF(2)).
    pub fn cyclic_modulus(n: u32) -> BinaryPolynomial {
        BinaryPolynomial {
            bits: (1u128 << n) | 1,
        }
    }
}

impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..128).rev() {
            if self.bits >> i & 1 == 1 {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                match i {
                    0 => write!(f, "1")?,
                    1 => write!(f, "x")?,
                    _ => write!(f, "x^{i}")?,
                }
            }
        }
        Ok(())
    }
}

/// A set of error positions, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ErrorPattern {
    pub positions: Vec<u32>,
}

impl ErrorPattern {
    pub fn new(mut positions: Vec<u32>) -> Self {
        positions.sort_unstable();
        positions.dedup();
        ErrorPattern { positions }
    }

    pub fn weight(&self) -> usize {
        self.positions.len()
    }

    pub fn to_word(&self) -> u128 {
        self.positions.iter().fold(0u128, |w, &p| w | 1u128 << p)
    }

    pub fn from_word(word: u128) -> Self {
        ErrorPattern {
            positions: (0..128).filter(|&i| word >> i & 1 == 1).collect(),
        }
    }
}

/// Where a syndrome of a given exponent comes from: the `primary`-th entry of
/// the syndrome vector raised to `2^doublings`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SyndromeSource {
    pub primary: usize,
    pub doublings: u32,
}

/// A validated binary cyclic code.
#[derive(Clone)]
pub struct CodeSpec {
    n: u32,
    defining_set: Vec<u32>,
    primary: Vec<u32>,
    complete: Vec<u32>,
    field: Arc<Field>,
    alpha: Gf,
    alpha_pows: Vec<Gf>,
    t: u32,
}

impl fmt::Debug for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CodeSpec({})", self.descriptor())
    }
}

impl CodeSpec {
    /// Validates `n` and the defining set and detects the capability `t`
    /// (capped at [`MAX_T`]).
    pub fn new(n: u32, defining_set: &[u32]) -> Result<Self, CodeError> {
        Self::with_execution(n, defining_set, Execution::default())
    }

    pub fn with_execution(n: u32, defining_set: &[u32], exec: Execution) -> Result<Self, CodeError> {
        let mut spec = Self::unchecked(n, defining_set)?;
        spec.t = spec.detect_capability(exec);
        Ok(spec)
    }

    /// Builds the code with a caller-supplied capability, verified by enumeration.
    pub fn with_claimed_t(n: u32, defining_set: &[u32], t: u32) -> Result<Self, CodeError> {
        if t > MAX_T {
            return Err(CodeError::CapabilityTooLarge(t));
        }
        let mut spec = Self::unchecked(n, defining_set)?;
        if !spec.verify_capability(t, Execution::default()) {
            return Err(CodeError::CapabilityNotMet(t));
        }
        spec.t = t;
        Ok(spec)
    }

    fn unchecked(n: u32, defining_set: &[u32]) -> Result<Self, CodeError> {
        if n < 3 || n.is_multiple_of(2) || n > MAX_LENGTH {
            return Err(CodeError::InvalidLength(n));
        }
        for &entry in defining_set {
            if entry >= n {
                return Err(CodeError::IndexOutOfRange { entry, n });
            }
        }
        let m = splitting_degree(n as u64)?;
        let field = Arc::new(Field::new(m)?);
        let alpha = field.nth_root(n as u64)?;
        let alpha_pows = (0..n).map(|k| field.pow_u(alpha, k as u64)).collect();
        let mut primary: Vec<u32> = Vec::new();
        for &i in defining_set {
            if !primary.iter().any(|&p| cyclotomic_coset(n, p).contains(&i)) {
                primary.push(i);
            }
        }
        Ok(CodeSpec {
            n,
            defining_set: defining_set.to_vec(),
            complete: complete_defining_set(n, defining_set),
            primary,
            field,
            alpha,
            alpha_pows,
            t: 0,
        })
    }

    /// Parses `"n:i1,i2,..."` (spaces and braces tolerated).
    pub fn parse(descriptor: &str) -> Result<Self, CodeError> {
        let (n, set) = parse_descriptor(descriptor)?;
        Self::new(n, &set)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<Field> {
        self.field.clone()
    }

    pub fn alpha(&self) -> Gf {
        self.alpha
    }

    /// `alpha^k` for `k` taken modulo `n`.
    #[inline]
    pub fn alpha_pow(&self, k: u64) -> Gf {
        self.alpha_pows[(k % self.n as u64) as usize]
    }

    /// The defining set in caller order.
    pub fn defining_set(&self) -> &[u32] {
        &self.defining_set
    }

    /// One representative per cyclotomic coset, in caller order; the
    /// syndrome vector is aligned with this list.
    pub fn primary(&self) -> &[u32] {
        &self.primary
    }

    pub fn complete_set(&self) -> &[u32] {
        &self.complete
    }

    pub fn contains(&self, e: u32) -> bool {
        self.complete.binary_search(&(e % self.n)).is_ok()
    }

    pub fn dimension(&self) -> u32 {
        self.n - self.complete.len() as u32
    }

    pub fn descriptor(&self) -> String {
        format!("{}:{}", self.n, self.defining_set.iter().join(","))
    }

    /// Locates the syndrome of exponent `e` as a power of a primary syndrome.
    pub fn source_of(&self, e: u32) -> Result<SyndromeSource, CodeError> {
        let e = e % self.n;
        for (primary, &p) in self.primary.iter().enumerate() {
            let mut x = p;
            for doublings in 0..self.field.degree().max(1) {
                if x == e {
                    return Ok(SyndromeSource { primary, doublings });
                }
                x = (x * 2) % self.n;
            }
        }
        Err(CodeError::NotAvailable(e))
    }

    /// Syndrome of exponent `e` for the error positions `positions`.
    pub fn power_sum(&self, positions: &[u32], e: u32) -> Gf {
        positions
            .iter()
            .fold(Gf::ZERO, |acc, &l| acc + self.alpha_pow(l as u64 * e as u64))
    }

    /// Primary syndrome vector of an error pattern.
    pub fn pattern_syndromes(&self, positions: &[u32]) -> Vec<Gf> {
        self.primary.iter().map(|&e| self.power_sum(positions, e)).collect()
    }

    /// Primary syndrome vector of a received word.
    pub fn word_syndromes(&self, word: u128) -> Vec<Gf> {
        let positions: Vec<u32> = (0..self.n).filter(|&i| word >> i & 1 == 1).collect();
        self.pattern_syndromes(&positions)
    }

    /// `prod_{i in complete set} (x - alpha^i)`, checked to lie in GF(2)[x].
    pub fn generator_polynomial(&self) -> Result<BinaryPolynomial, CodeError> {
        let f = &self.field;
        let mut coeffs = vec![Gf::ONE];
        for &i in &self.complete {
            let root = self.alpha_pow(i as u64);
            let mut next = vec![Gf::ZERO; coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] += f.mul(c, root);
            }
            coeffs = next;
        }
        let mut bits = 0u128;
        for (k, c) in coeffs.iter().enumerate() {
            match c.bits() {
                0 => {}
                1 => bits |= 1u128 << k,
                _ => return Err(CodeError::NotBinary),
            }
        }
        Ok(BinaryPolynomial { bits })
    }

    /// Non-systematic encoding `m(x) g(x)`; `message[i]` is the coefficient of `x^i`.
    pub fn encode(&self, message: &[bool]) -> Result<u128, CodeError> {
        let k = self.dimension() as usize;
        if message.len() != k {
            return Err(CodeError::MessageLength {
                got: message.len(),
                expected: k,
            });
        }
        let g = self.generator_polynomial()?;
        let m = message
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, &b)| acc | (b as u128) << i);
        Ok(BinaryPolynomial { bits: m }.mul(&g).bits)
    }

    pub fn is_codeword(&self, word: u128) -> bool {
        self.word_syndromes(word).iter().all(|s| s.is_zero())
    }

    /// True iff syndromes of all patterns of weight `<= t` are pairwise distinct.
    pub fn verify_capability(&self, t: u32, exec: Execution) -> bool {
        injective_over(self, 0..=t, exec)
    }

    /// True iff syndromes of weight-exactly-2 patterns are pairwise distinct.
    pub fn is_s2ec(&self) -> bool {
        injective_over(self, 2..=2, Execution::default())
    }

    fn detect_capability(&self, exec: Execution) -> u32 {
        let mut t = 0;
        while t < MAX_T && self.verify_capability(t + 1, exec) {
            t += 1;
        }
        t
    }

    /// Number of error patterns of weight `<= t`.
    pub fn correctable_count(&self) -> u64 {
        (0..=self.t).map(|w| binomial(self.n as u64, w as u64)).sum()
    }
}

fn injective_over(spec: &CodeSpec, weights: std::ops::RangeInclusive<u32>, exec: Execution) -> bool {
    let patterns: Vec<Vec<u32>> = weights
        .flat_map(|w| (0..spec.n).combinations(w as usize))
        .collect();
    let keys = exec.map(&patterns, |p| spec.pattern_syndromes(p));
    let mut seen: HashMap<&[Gf], ()> = HashMap::with_capacity(keys.len());
    keys.iter().all(|k| seen.insert(k.as_slice(), ()).is_none())
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Parses `"n:i1,i2,..."` into its parts without validating the code.
pub fn parse_descriptor(descriptor: &str) -> Result<(u32, Vec<u32>), CodeError> {
    let bad = || CodeError::Descriptor(descriptor.to_string());
    let (n, rest) = descriptor.split_once(':').ok_or_else(bad)?;
    let n: u32 = n.trim().parse().map_err(|_| bad())?;
    let rest = rest.trim().trim_start_matches('{').trim_end_matches('}');
    let set = rest
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u32>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((n, set))
}

/// Parses a received word of length `n`.
///
/// Accepted forms: `0x`-prefixed hex (bit `i` of the integer is `c_i`), or a
/// string of exactly `n` binary digits listed `c_0 c_1 ... c_{n-1}`
/// (optionally `0b`-prefixed, `_` separators ignored).
pub fn parse_word(text: &str, n: u32) -> Result<u128, CodeError> {
    let s: String = text.trim().chars().filter(|&c| c != '_').collect();
    if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        let w = u128::from_str_radix(hex, 16).map_err(|_| CodeError::WordSyntax(text.to_string()))?;
        if n < 128 && w >> n != 0 {
            return Err(CodeError::WordLength {
                got: 128 - w.leading_zeros() as usize,
                expected: n as usize,
            });
        }
        return Ok(w);
    }
    let bits = s.strip_prefix("0b").unwrap_or(&s);
    if !bits.chars().all(|c| c == '0' || c == '1') || bits.is_empty() {
        return Err(CodeError::WordSyntax(text.to_string()));
    }
    if bits.len() != n as usize {
        return Err(CodeError::WordLength {
            got: bits.len(),
            expected: n as usize,
        });
    }
    Ok(bits
        .chars()
        .enumerate()
        .fold(0u128, |w, (i, c)| w | ((c == '1') as u128) << i))
}

/// Formats a word as `n` binary digits `c_0 ... c_{n-1}`.
pub fn format_word(word: u128, n: u32) -> String {
    (0..n).map(|i| if word >> i & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn format_word_hex(word: u128) -> String {
    format!("{word:#x}")
}
