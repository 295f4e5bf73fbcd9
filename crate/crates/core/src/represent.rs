//! Two-squares decompositions and the parameter triples of the quartic
//! reciprocity theorem, under each sign convention used by the laws.

use crate::arith::{is_prime, isqrt, jacobi, sqrt_mod, SymbolValue};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::gcd;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A prime n ≡ 1 mod 4 with its unique decomposition n = a² + b²,
/// a odd, b even, both positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoSquares {
    pub n: u64,
    pub a: u64,
    pub b: u64,
}

/// Normalization convention of a reciprocity triple.
///
/// `Eq1`: B even positive, C odd positive, sign of A fixed by A + B ≡ 1 mod 4.
/// `Eq4`: A, B, C all positive, B odd, C even.
/// `Eq5`: A, B positive, B even, C odd (sign of C free, normalized positive).
/// `Raw`: only the core invariants hold; carries Burde-style triples and m = 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Convention {
    Eq1,
    Eq4,
    Eq5,
    Raw,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Eq1 => "EQ1",
            Convention::Eq4 => "EQ4",
            Convention::Eq5 => "EQ5",
            Convention::Raw => "RAW",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "eq1" => Ok(Convention::Eq1),
            "eq4" => Ok(Convention::Eq4),
            "eq5" => Ok(Convention::Eq5),
            "raw" => Ok(Convention::Raw),
            other => Err(Error::UnsupportedFormat(format!("convention {other}"))),
        }
    }
}

/// Integers (A, B, C) with A² = m(B² + C²) and pairwise coprime entries,
/// tagged with the convention their signs and parities satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhfTriple {
    pub m: u64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub convention: Convention,
}

impl WhfTriple {
    /// Validating constructor; rejects anything violating the core equation,
    /// the coprimality hypotheses, or the tagged convention.
    pub fn new(m: u64, a: i64, b: i64, c: i64, convention: Convention) -> Result<Self> {
        let fail = |what: String| Error::PrecompositionFailure { what };
        if m < 2 {
            return Err(fail(format!("radicand m = {m} below 2")));
        }
        let norm_lhs = BigInt::from(a) * BigInt::from(a);
        let norm_rhs =
            BigInt::from(m) * (BigInt::from(b) * BigInt::from(b) + BigInt::from(c) * BigInt::from(c));
        if norm_lhs != norm_rhs {
            return Err(fail(format!("A^2 != m(B^2+C^2) for (m,A,B,C)=({m},{a},{b},{c})")));
        }
        if gcd(a, b) != 1 || gcd(b, c) != 1 || gcd(c, a) != 1 {
            return Err(fail(format!("entries of ({a},{b},{c}) are not pairwise coprime")));
        }
        if m % 2 == 1 && a.unsigned_abs() % 4 != 1 {
            return Err(fail(format!("|A| = {} is not 1 mod 4", a.unsigned_abs())));
        }
        match convention {
            Convention::Eq1 => {
                if b % 2 != 0 || b <= 0 || c <= 0 {
                    return Err(fail(format!("EQ1 needs B even positive, C positive; got B={b} C={c}")));
                }
                if (a + b).rem_euclid(4) != 1 {
                    return Err(fail(format!("EQ1 needs A+B = 1 mod 4; got A={a} B={b}")));
                }
            }
            Convention::Eq4 => {
                if a <= 0 || b <= 0 || c <= 0 || b % 2 == 0 || c % 2 != 0 {
                    return Err(fail(format!("EQ4 needs A,B,C > 0 with B odd, C even; got ({a},{b},{c})")));
                }
            }
            Convention::Eq5 => {
                if a <= 0 || b <= 0 || b % 2 != 0 || c % 2 == 0 {
                    return Err(fail(format!("EQ5 needs A,B > 0 with B even, C odd; got ({a},{b},{c})")));
                }
            }
            Convention::Raw => {}
        }
        Ok(WhfTriple { m, a, b, c, convention })
    }
}

impl fmt::Display for WhfTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m={} A={} B={} C={} convention={}",
            self.m, self.a, self.b, self.c, self.convention
        )
    }
}

/// Unique two-squares decomposition of a prime p ≡ 1 mod 4, via a square
/// root of -1 and Euclidean descent.
pub fn two_squares(p: u64) -> Result<TwoSquares> {
    if p % 4 != 1 || !is_prime(p) {
        return Err(Error::BadResidueClass { n: p });
    }
    let root = sqrt_mod(-1, p).expect("-1 is a QR mod p = 1 mod 4");
    // descend until the first remainder below sqrt(p); it is one leg
    let mut a = p;
    let mut b = root;
    while b * b > p {
        let t = a % b;
        a = b;
        b = t;
    }
    let x = b;
    let y2 = p - x * x;
    let y = isqrt(y2);
    if y * y != y2 || x * x + y * y != p {
        return Err(Error::InternalAssertion(format!(
            "two-squares descent failed for {p}"
        )));
    }
    let (odd, even) = if x % 2 == 1 { (x, y) } else { (y, x) };
    debug_assert!(odd % 2 == 1 && even % 2 == 0 && odd > 0 && even > 0);
    debug_assert_eq!(gcd(odd, even), 1);
    Ok(TwoSquares { n: p, a: odd, b: even })
}

/// Canonical EQ1 triple for a prime m ≡ 1 mod 4: A = ±m with the sign fixed
/// by A + B ≡ 1 mod 4, B the even leg of m = r² + s², C the odd leg.
pub fn whf_triple(m: u64) -> Result<WhfTriple> {
    let ts = two_squares(m)?;
    let b = ts.b as i64;
    let c = ts.a as i64;
    let a = if (m as i64 + b).rem_euclid(4) == 1 {
        m as i64
    } else {
        -(m as i64)
    };
    WhfTriple::new(m, a, b, c, Convention::Eq1)
}

/// Re-normalize a triple into `target`, keeping m and the multiset
/// {|A|, |B|, |C|}. Fails for m = 2, where both B and C are odd.
pub fn convert_convention(t: &WhfTriple, target: Convention) -> Result<WhfTriple> {
    if target == Convention::Raw {
        return WhfTriple::new(t.m, t.a, t.b, t.c, Convention::Raw);
    }
    if t.b % 2 == 1 && t.c % 2 == 1 {
        return Err(Error::NotConvertible {
            m: t.m,
            target: target.name(),
        });
    }
    let abs_a = t.a.abs();
    let (even, odd) = if t.b % 2 == 0 {
        (t.b.abs(), t.c.abs())
    } else {
        (t.c.abs(), t.b.abs())
    };
    match target {
        Convention::Eq1 => {
            let a = if (abs_a + even).rem_euclid(4) == 1 { abs_a } else { -abs_a };
            WhfTriple::new(t.m, a, even, odd, Convention::Eq1)
        }
        Convention::Eq4 => WhfTriple::new(t.m, abs_a, odd, even, Convention::Eq4),
        Convention::Eq5 => WhfTriple::new(t.m, abs_a, even, odd, Convention::Eq5),
        Convention::Raw => unreachable!(),
    }
}

/// Burde's composite triple for primes p, q ≡ 1 mod 4 with (p/q) = +1:
/// A = pq, B = b(c²−d²) + 2acd, C = a(c²−d²) − 2bcd over m = p,
/// where p = a² + b² and q = c² + d².
///
/// Every theorem hypothesis is re-checked exactly; a violation is reported
/// as `PrecompositionFailure` since it would indicate a bug, not data.
pub fn burde_params(p_rep: &TwoSquares, q_rep: &TwoSquares) -> Result<WhfTriple> {
    let fail = |what: String| Error::PrecompositionFailure { what };
    for rep in [p_rep, q_rep] {
        if rep.a % 2 != 1 || rep.b % 2 != 0 || rep.a == 0 || rep.b == 0 {
            return Err(fail(format!("decomposition of {} has wrong parities", rep.n)));
        }
        if rep.a * rep.a + rep.b * rep.b != rep.n || !is_prime(rep.n) || rep.n % 4 != 1 {
            return Err(fail(format!("{} = {}^2 + {}^2 is not a valid prime decomposition", rep.n, rep.a, rep.b)));
        }
    }
    let (p, q) = (p_rep.n, q_rep.n);
    if p == q {
        return Err(Error::NotMutualResidue { p, q });
    }
    if jacobi(p as i64, q)? != SymbolValue::Plus {
        return Err(Error::NotMutualResidue { p, q });
    }
    let (a, b) = (p_rep.a as i64, p_rep.b as i64);
    let (c, d) = (q_rep.a as i64, q_rep.b as i64);
    let cd2 = c * c - d * d;
    let big_a = p as i64 * q as i64;
    let big_b = b * cd2 + 2 * a * c * d;
    let big_c = a * cd2 - 2 * b * c * d;
    if big_b % 2 != 0 {
        return Err(fail(format!("Burde B = {big_b} is odd")));
    }
    WhfTriple::new(p, big_a, big_b, big_c, Convention::Raw)
}
