//! Exact modular and multiplicative number theory primitives.
//!
//! All arithmetic is 64-bit with 128-bit intermediates, exact for public
//! inputs below 2^31 (and well beyond). Nothing here is probabilistic:
//! primality is a deterministic Miller–Rabin over a witness set valid for
//! the whole `u64` range.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Value of a quadratic or quartic residue symbol: +1, -1 or 0.
///
/// 0 only occurs when the lower argument shares a factor with the upper one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolValue {
    Plus,
    Minus,
    Zero,
}

impl SymbolValue {
    pub fn from_sign(plus: bool) -> Self {
        if plus {
            SymbolValue::Plus
        } else {
            SymbolValue::Minus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            SymbolValue::Plus => 1,
            SymbolValue::Minus => -1,
            SymbolValue::Zero => 0,
        }
    }

    pub fn try_from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(SymbolValue::Plus),
            -1 => Some(SymbolValue::Minus),
            0 => Some(SymbolValue::Zero),
            _ => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == SymbolValue::Zero
    }

    /// `self^exp` in the multiplicative {+1, -1, 0} monoid; `exp = 0` gives +1.
    pub fn pow(self, exp: u64) -> Self {
        if exp == 0 || (exp % 2 == 0 && self != SymbolValue::Zero) {
            SymbolValue::Plus
        } else {
            self
        }
    }
}

impl std::ops::Mul for SymbolValue {
    type Output = SymbolValue;
    fn mul(self, rhs: SymbolValue) -> SymbolValue {
        use SymbolValue::*;
        match (self, rhs) {
            (Zero, _) | (_, Zero) => Zero,
            (Plus, Plus) | (Minus, Minus) => Plus,
            _ => Minus,
        }
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolValue::Plus => write!(f, "+1"),
            SymbolValue::Minus => write!(f, "-1"),
            SymbolValue::Zero => write!(f, "0"),
        }
    }
}

impl Serialize for SymbolValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i8())
    }
}

impl<'de> Deserialize<'de> for SymbolValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i8::deserialize(d)?;
        SymbolValue::try_from_i64(v as i64)
            .ok_or_else(|| serde::de::Error::custom(format!("symbol value out of range: {v}")))
    }
}

/// Reduce a signed value into `[0, n)`.
pub(crate) fn reduce_mod(a: i64, n: u64) -> u64 {
    debug_assert!(n >= 1 && n <= i64::MAX as u64);
    a.rem_euclid(n as i64) as u64
}

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn mod_pow_u(base: u64, exp: u64, modulus: u64) -> u64 {
    debug_assert!(modulus >= 1);
    let mut b = base % modulus;
    let mut e = exp;
    let mut acc = 1 % modulus;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, modulus);
        }
        b = mulmod(b, b, modulus);
        e >>= 1;
    }
    acc
}

/// `base^exp mod modulus` by binary exponentiation; `exp = 0` gives 1.
/// Negative bases are reduced into `[0, modulus)` first.
pub fn mod_pow(base: i64, exp: u64, modulus: u64) -> u64 {
    assert!(modulus >= 2, "mod_pow needs modulus >= 2");
    mod_pow_u(reduce_mod(base, modulus), exp, modulus)
}

/// Inverse of `a` mod `n` in `(0, n)`, by the extended Euclidean algorithm.
pub fn inv_mod(a: i64, n: u64) -> Result<u64> {
    assert!(n >= 2, "inv_mod needs modulus >= 2");
    let a_red = reduce_mod(a, n);
    let (mut r0, mut r1) = (n as i128, a_red as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible { a, n });
    }
    Ok(t0.rem_euclid(n as i128) as u64)
}

pub(crate) fn inv_mod_u(a: u64, n: u64) -> Result<u64> {
    debug_assert!(a < i64::MAX as u64);
    inv_mod(a as i64, n)
}

/// Jacobi symbol (a/n) for odd n >= 1; equals the Legendre symbol for prime n.
pub fn jacobi(a: i64, n: u64) -> Result<SymbolValue> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::EvenModulus { n });
    }
    let mut num = reduce_mod(a, n);
    let mut den = n;
    let mut sign = 1i32;
    while num != 0 {
        while num % 2 == 0 {
            num /= 2;
            if den % 8 == 3 || den % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut num, &mut den);
        if num % 4 == 3 && den % 4 == 3 {
            sign = -sign;
        }
        num %= den;
    }
    if den == 1 {
        Ok(SymbolValue::from_sign(sign == 1))
    } else {
        Ok(SymbolValue::Zero)
    }
}

/// Square root of `a` mod an odd prime `p`, canonicalized to `min(r, p - r)`.
///
/// Returns 0 when `p | a`; Tonelli–Shanks in the general case with a
/// deterministic non-residue scan, so identical inputs always give identical
/// roots. A composite modulus is rejected up front (the non-residue scan
/// would not terminate on a perfect square).
pub fn sqrt_mod(a: i64, p: u64) -> Result<u64> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::BadResidueClass { n: p });
    }
    let a_red = reduce_mod(a, p);
    if a_red == 0 {
        return Ok(0);
    }
    if jacobi(a_red as i64, p)? != SymbolValue::Plus {
        return Err(Error::NotResidue { a, p });
    }
    let r = if p % 4 == 3 {
        mod_pow_u(a_red, (p + 1) / 4, p)
    } else {
        tonelli_shanks(a_red, p)
    };
    debug_assert_eq!(mulmod(r, r, p), a_red);
    Ok(r.min(p - r))
}

/// Tonelli–Shanks for p ≡ 1 mod 4 and (a/p) = +1.
fn tonelli_shanks(a: u64, p: u64) -> u64 {
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2u64..)
        .find(|&z| jacobi(z as i64, p) == Ok(SymbolValue::Minus))
        .expect("an odd prime has a quadratic non-residue");
    let mut c = mod_pow_u(z, q, p);
    let mut x = mod_pow_u(a, (q + 1) / 2, p);
    let mut t = mod_pow_u(a, q, p);
    let mut m = s;
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mulmod(t2, t2, p);
            i += 1;
        }
        let b = (0..m - i - 1).fold(c, |acc, _| mulmod(acc, acc, p));
        x = mulmod(x, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    x
}

/// Rational quartic residue symbol (p/m)4 for m prime ≡ 1 mod 4.
///
/// Defined as p^((m-1)/4) mod m, which is ±1 exactly when (p/m) = +1; a
/// non-residue upper argument would land in an imaginary class and is
/// rejected instead of silently mapped.
pub fn quartic_symbol(p: i64, m: u64) -> Result<SymbolValue> {
    if m % 4 != 1 || !is_prime(m) {
        return Err(Error::BadResidueClass { n: m });
    }
    let p_red = reduce_mod(p, m);
    if p_red == 0 {
        return Err(Error::SharesFactor { p, m });
    }
    if jacobi(p_red as i64, m)? != SymbolValue::Plus {
        return Err(Error::NotQuadraticResidue { p, m });
    }
    let t = mod_pow_u(p_red, (m - 1) / 4, m);
    if t == 1 {
        Ok(SymbolValue::Plus)
    } else if t == m - 1 {
        Ok(SymbolValue::Minus)
    } else {
        Err(Error::InternalAssertion(format!(
            "quartic power {t} is not +-1 mod {m}"
        )))
    }
}

/// Least f >= 1 with p^f ≡ 1 mod m, for m prime not dividing p.
///
/// f divides m - 1; computed by stripping prime factors from m - 1.
pub fn mult_order(p: i64, m: u64) -> Result<u64> {
    let p_red = reduce_mod(p, m);
    if p_red == 0 {
        return Err(Error::SharesFactor { p, m });
    }
    let phi = m - 1;
    let mut f = phi;
    for ell in distinct_prime_factors(phi) {
        while f % ell == 0 && mod_pow_u(p_red, f / ell, m) == 1 {
            f /= ell;
        }
    }
    debug_assert_eq!(mod_pow_u(p_red, f, m), 1);
    Ok(f)
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

/// Deterministic primality for the whole `u64` range (Miller–Rabin with the
/// twelve-witness set valid below 3.3 * 10^24).
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &sp in &WITNESSES {
        if n == sp {
            return true;
        }
        if n % sp == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = mod_pow_u(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Residue condition applied on top of a prime range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueFilter {
    pub modulus: u64,
    pub residues: Vec<u64>,
}

/// Inclusive range of candidate primes with an optional residue filter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeRange {
    pub lo: u64,
    pub hi: u64,
    pub residue_filter: Option<ResidueFilter>,
}

impl PrimeRange {
    pub fn new(lo: u64, hi: u64) -> Self {
        PrimeRange {
            lo,
            hi,
            residue_filter: None,
        }
    }

    pub fn with_filter(lo: u64, hi: u64, modulus: u64, residues: &[u64]) -> Self {
        PrimeRange {
            lo,
            hi,
            residue_filter: Some(ResidueFilter {
                modulus,
                residues: residues.to_vec(),
            }),
        }
    }
}

/// Strictly increasing stream of exactly the primes in the range that pass
/// the filter. Backed by a segmented sieve.
pub fn prime_stream(range: PrimeRange) -> PrimeStream {
    PrimeStream::new(range)
}

/// All primes up to `hi` inclusive.
pub fn primes_up_to(hi: u64) -> Vec<u64> {
    prime_stream(PrimeRange::new(2, hi)).collect()
}

const SEGMENT_SPAN: u64 = 1 << 16;

pub struct PrimeStream {
    hi: u64,
    filter: Option<ResidueFilter>,
    base: Vec<u64>,
    seg_start: u64,
    seg: Vec<bool>,
    idx: usize,
    done: bool,
}

impl PrimeStream {
    fn new(range: PrimeRange) -> Self {
        let lo = range.lo.max(2);
        let hi = range.hi;
        let done = lo > hi;
        let base = if done { Vec::new() } else { simple_sieve(isqrt(hi)) };
        let mut st = PrimeStream {
            hi,
            filter: range.residue_filter,
            base,
            seg_start: lo,
            seg: Vec::new(),
            idx: 0,
            done,
        };
        if !st.done {
            st.fill_segment();
        }
        st
    }

    fn fill_segment(&mut self) {
        let len = SEGMENT_SPAN.min(self.hi - self.seg_start + 1) as usize;
        self.seg.clear();
        self.seg.resize(len, true);
        let seg_end = self.seg_start + len as u64 - 1;
        for &b in &self.base {
            if b * b > seg_end {
                break;
            }
            let mut j = (b * b).max(self.seg_start.div_ceil(b) * b);
            while j <= seg_end {
                self.seg[(j - self.seg_start) as usize] = false;
                j += b;
            }
        }
        self.idx = 0;
    }

    fn passes(&self, n: u64) -> bool {
        match &self.filter {
            None => true,
            Some(f) => f.residues.contains(&(n % f.modulus)),
        }
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if self.done {
                return None;
            }
            while self.idx < self.seg.len() {
                let i = self.idx;
                self.idx += 1;
                if self.seg[i] {
                    let n = self.seg_start + i as u64;
                    if self.passes(n) {
                        return Some(n);
                    }
                }
            }
            let next_start = self.seg_start.saturating_add(self.seg.len() as u64);
            if self.seg.is_empty() || next_start > self.hi {
                self.done = true;
                return None;
            }
            self.seg_start = next_start;
            self.fill_segment();
        }
    }
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Exact integer square root.
pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while (r as u128) * (r as u128) > n as u128 {
        r -= 1;
    }
    while ((r + 1) as u128) * ((r + 1) as u128) <= n as u128 {
        r += 1;
    }
    r
}
