//! Evaluators for the rational quartic reciprocity laws and the prime
//! splitting chain, producing structured verdicts.
//!
//! An evaluator never repairs a failed identity: both sides are computed
//! independently and `holds` records whether they agree.

use crate::arith::{
    inv_mod_u, is_prime, jacobi, mod_pow_u, mulmod, mult_order, quartic_symbol, SymbolValue,
};
use crate::error::{Error, Result};
use crate::quadfield::symbol_surd;
use crate::represent::{
    burde_params, convert_convention, two_squares, whf_triple, Convention, WhfTriple,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Identifier of an evaluated law or identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Law {
    Eq1,
    Eq2,
    Eq3,
    Eq4,
    Eq5,
    Eq6,
    Eq7,
    Eq8,
    Eq9,
    Chain,
    Split,
    Sign,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::Eq1 => "EQ1",
            Law::Eq2 => "EQ2",
            Law::Eq3 => "EQ3",
            Law::Eq4 => "EQ4",
            Law::Eq5 => "EQ5",
            Law::Eq6 => "EQ6",
            Law::Eq7 => "EQ7",
            Law::Eq8 => "EQ8",
            Law::Eq9 => "EQ9",
            Law::Chain => "CHAIN",
            Law::Split => "SPLIT",
            Law::Sign => "SIGN",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type Params = BTreeMap<String, i64>;

pub(crate) fn params_from(pairs: &[(&str, i64)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// One evaluated law instance: every integer entering either side, the two
/// sides, and whether they agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: Law,
    pub params: Params,
    pub lhs: SymbolValue,
    pub rhs: SymbolValue,
    pub holds: bool,
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.law)?;
        for (i, (k, v)) in self.params.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{k}={v}")?;
        }
        write!(f, "] lhs={} rhs={} holds={}", self.lhs, self.rhs, self.holds)
    }
}

/// Decomposition-group data of p in the m-th cyclotomic field:
/// f = mult_order(p, m), g = (m-1)/f.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingData {
    pub f: u64,
    pub g: u64,
}

/// Main-theorem variant selector; `Eq1` is the plain form, the others add
/// the sign/parity factors of the corresponding published variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    Eq1,
    Eq4,
    Eq5,
    Eq6,
}

impl Variant {
    pub fn law(self) -> Law {
        match self {
            Variant::Eq1 => Law::Eq1,
            Variant::Eq4 => Law::Eq4,
            Variant::Eq5 => Law::Eq5,
            Variant::Eq6 => Law::Eq6,
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "eq1" => Ok(Variant::Eq1),
            "eq4" => Ok(Variant::Eq4),
            "eq5" => Ok(Variant::Eq5),
            "eq6" => Ok(Variant::Eq6),
            other => Err(Error::UnsupportedFormat(format!("variant {other}"))),
        }
    }
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::BadResidueClass { n: p });
    }
    Ok(())
}

fn require_prime_1mod4(n: u64) -> Result<()> {
    if n % 4 != 1 || !is_prime(n) {
        return Err(Error::BadResidueClass { n });
    }
    Ok(())
}

/// (-1)^((p-1)(m-1)/8) for odd p and m ≡ 1 mod 4.
fn sign_exponent(m: u64, p: u64) -> SymbolValue {
    let e = ((p - 1) / 2) * ((m - 1) / 4);
    SymbolValue::from_sign(e % 2 == 0)
}

/// Main theorem, plain form: ((A+B√m)/p) = (p/m)4 with the EQ1 triple.
pub fn eval_eq1(m: u64, p: u64) -> Result<LawReport> {
    eval_whf_variant(m, p, Variant::Eq1)
}

/// Main theorem in the requested variant convention.
///
/// `Eq4`: lhs uses the odd-B triple, rhs gains (-1)^((p-1)(m-1)/8) (2/p).
/// `Eq5`: lhs uses the positive even-B triple, rhs gains the sign factor.
/// `Eq6`: same lhs as Eq5, rhs is (p*/m)4 with p* = (-1)^((p-1)/2) p.
pub fn eval_whf_variant(m: u64, p: u64, variant: Variant) -> Result<LawReport> {
    require_prime_1mod4(m)?;
    require_odd_prime(p)?;
    // p = m falls out here too: (m/m) = 0
    if jacobi(m as i64, p)? != SymbolValue::Plus {
        return Err(Error::NotSplit { m, p });
    }
    let base = whf_triple(m)?;
    let t = match variant {
        Variant::Eq1 => base,
        Variant::Eq4 => convert_convention(&base, Convention::Eq4)?,
        Variant::Eq5 | Variant::Eq6 => convert_convention(&base, Convention::Eq5)?,
    };
    let lhs = symbol_surd(t.a, t.b, m, p)?;
    let mut params = params_from(&[
        ("m", m as i64),
        ("p", p as i64),
        ("A", t.a),
        ("B", t.b),
        ("C", t.c),
    ]);
    let rhs = match variant {
        Variant::Eq1 => quartic_symbol(p as i64, m)?,
        Variant::Eq4 => sign_exponent(m, p) * jacobi(2, p)? * quartic_symbol(p as i64, m)?,
        Variant::Eq5 => sign_exponent(m, p) * quartic_symbol(p as i64, m)?,
        Variant::Eq6 => {
            let p_star = if ((p - 1) / 2) % 2 == 0 {
                p as i64
            } else {
                -(p as i64)
            };
            params.insert("p_star".into(), p_star);
            quartic_symbol(p_star, m)?
        }
    };
    Ok(LawReport {
        law: variant.law(),
        params,
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

/// m = 2 law: ((2+√2)/p) = +1 exactly when p ≡ ±1 mod 16,
/// for odd primes p ≡ ±1 mod 8.
pub fn eval_m2_eq3(p: u64) -> Result<LawReport> {
    require_odd_prime(p)?;
    if p % 8 != 1 && p % 8 != 7 {
        return Err(Error::NotSplit { m: 2, p });
    }
    let lhs = symbol_surd(2, 1, 2, p)?;
    let rhs = SymbolValue::from_sign(p % 16 == 1 || p % 16 == 15);
    Ok(LawReport {
        law: Law::Eq3,
        params: params_from(&[("m", 2), ("p", p as i64), ("A", 2), ("B", 1), ("C", 1)]),
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

fn pair_preamble(p: u64, q: u64) -> Result<(crate::represent::TwoSquares, crate::represent::TwoSquares)> {
    require_prime_1mod4(p)?;
    require_prime_1mod4(q)?;
    if p == q {
        return Err(Error::NotMutualResidue { p, q });
    }
    if jacobi(p as i64, q)? != SymbolValue::Plus {
        return Err(Error::NotMutualResidue { p, q });
    }
    Ok((two_squares(p)?, two_squares(q)?))
}

/// Burde's law: (p/q)4 (q/p)4 = ((ac - bd)/q) for p = a²+b², q = c²+d².
pub fn eval_burde_eq7(p: u64, q: u64) -> Result<LawReport> {
    let (pr, qr) = pair_preamble(p, q)?;
    let (a, b) = (pr.a as i64, pr.b as i64);
    let (c, d) = (qr.a as i64, qr.b as i64);
    let lhs = quartic_symbol(p as i64, q)? * quartic_symbol(q as i64, p)?;
    let rhs = jacobi(a * c - b * d, q)?;
    Ok(LawReport {
        law: Law::Eq7,
        params: params_from(&[
            ("p", p as i64),
            ("q", q as i64),
            ("a", a),
            ("b", b),
            ("c", c),
            ("d", d),
        ]),
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

/// Derivation chain behind Burde's law on the composite triple:
/// (q/p)4 = ((A+B√p)/q) = (B/q)(p/q)4, with q dividing A = pq.
///
/// `lhs` is the first route, `rhs` the surd middle; the Jacobi route is in
/// params as `jacobi_route`, and `holds` demands all three agree.
pub fn eval_burde_chain(p: u64, q: u64) -> Result<LawReport> {
    let (pr, qr) = pair_preamble(p, q)?;
    let t = burde_params(&pr, &qr)?;
    let v_quartic = quartic_symbol(q as i64, p)?;
    let v_surd = symbol_surd(t.a, t.b, p, q)?;
    let v_jacobi = jacobi(t.b, q)? * quartic_symbol(p as i64, q)?;
    let mut params = params_from(&[
        ("p", p as i64),
        ("q", q as i64),
        ("A", t.a),
        ("B", t.b),
        ("C", t.c),
        ("a", pr.a as i64),
        ("b", pr.b as i64),
        ("c", qr.a as i64),
        ("d", qr.b as i64),
    ]);
    params.insert("jacobi_route".into(), v_jacobi.as_i8() as i64);
    Ok(LawReport {
        law: Law::Chain,
        params,
        lhs: v_quartic,
        rhs: v_surd,
        holds: v_quartic == v_surd && v_surd == v_jacobi,
    })
}

/// Gosset's congruence: (q/p)4 ≡ ((a/b - c/d)/(a/b + c/d))^((q-1)/4) mod q.
///
/// The fractions live mod q; the power is ±1 there and is compared with the
/// quartic symbol lifted into {1, q-1}.
pub fn eval_gosset_eq8(p: u64, q: u64) -> Result<LawReport> {
    let (pr, qr) = pair_preamble(p, q)?;
    if pr.b % q == 0 || qr.b % q == 0 {
        return Err(Error::DegenerateFraction {
            q,
            what: format!("q divides b*d = {}*{}", pr.b, qr.b),
        });
    }
    let u = mulmod(pr.a % q, inv_mod_u(pr.b % q, q)?, q);
    let v = mulmod(qr.a % q, inv_mod_u(qr.b % q, q)?, q);
    let sum = (u + v) % q;
    if sum == 0 {
        return Err(Error::DegenerateFraction {
            q,
            what: "a/b + c/d vanishes".into(),
        });
    }
    let diff = (u + q - v) % q;
    let ratio = mulmod(diff, inv_mod_u(sum, q)?, q);
    let rhs_residue = mod_pow_u(ratio, (q - 1) / 4, q);
    let rhs = if rhs_residue == 1 {
        SymbolValue::Plus
    } else if rhs_residue == q - 1 {
        SymbolValue::Minus
    } else {
        return Err(Error::InternalAssertion(format!(
            "gosset power {rhs_residue} is not +-1 mod {q}"
        )));
    };
    let lhs = quartic_symbol(q as i64, p)?;
    let mut params = params_from(&[
        ("p", p as i64),
        ("q", q as i64),
        ("a", pr.a as i64),
        ("b", pr.b as i64),
        ("c", qr.a as i64),
        ("d", qr.b as i64),
        ("u", u as i64),
        ("v", v as i64),
    ]);
    params.insert("rhs_residue".into(), rhs_residue as i64);
    Ok(LawReport {
        law: Law::Eq8,
        params,
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

/// Fröhlich's form: (p/q)4 (q/p)4 = ((a + bj)/q) = ((c + di)/p), where
/// i² ≡ -1 mod p and j² ≡ -1 mod q are built from the decompositions.
///
/// `lhs` is the symbol product, `rhs` the q-side Legendre value; the p-side
/// value is in params as `s2`, and `holds` demands all three agree.
pub fn eval_froehlich_eq9(p: u64, q: u64) -> Result<LawReport> {
    let (pr, qr) = pair_preamble(p, q)?;
    let i = mulmod(pr.a % p, inv_mod_u(pr.b % p, p)?, p);
    if mulmod(i, i, p) != p - 1 {
        return Err(Error::RootCheckFailed {
            what: format!("i = {i} has i^2 != -1 mod {p}"),
        });
    }
    let j = mulmod(qr.a % q, inv_mod_u(qr.b % q, q)?, q);
    if mulmod(j, j, q) != q - 1 {
        return Err(Error::RootCheckFailed {
            what: format!("j = {j} has j^2 != -1 mod {q}"),
        });
    }
    let s0 = quartic_symbol(p as i64, q)? * quartic_symbol(q as i64, p)?;
    let s1 = jacobi(pr.a as i64 + pr.b as i64 * j as i64, q)?;
    let s2 = jacobi(qr.a as i64 + qr.b as i64 * i as i64, p)?;
    let mut params = params_from(&[
        ("p", p as i64),
        ("q", q as i64),
        ("a", pr.a as i64),
        ("b", pr.b as i64),
        ("c", qr.a as i64),
        ("d", qr.b as i64),
        ("i", i as i64),
        ("j", j as i64),
    ]);
    params.insert("s2".into(), s2.as_i8() as i64);
    Ok(LawReport {
        law: Law::Eq9,
        params,
        lhs: s0,
        rhs: s1,
        holds: s0 == s1 && s1 == s2,
    })
}

/// Numeric endpoints of the decomposition argument: with f = ord_m(p) and
/// g = (m-1)/f, checks (p/m)4 = +1 ⟺ f | (m-1)/4 ⟺ 4 | g ⟺ ((A+B√m)/p) = +1.
pub fn splitting_chain(m: u64, p: u64) -> Result<(SplittingData, LawReport)> {
    require_prime_1mod4(m)?;
    require_odd_prime(p)?;
    if jacobi(m as i64, p)? != SymbolValue::Plus {
        return Err(Error::NotSplit { m, p });
    }
    let f = mult_order(p as i64, m)?;
    let g = (m - 1) / f;
    let quartic = quartic_symbol(p as i64, m)?;
    let eq1 = eval_eq1(m, p)?;
    let c1 = quartic == SymbolValue::Plus;
    let c2 = ((m - 1) / 4) % f == 0;
    let c3 = g % 4 == 0;
    let c4 = eq1.lhs == SymbolValue::Plus;
    let mut params = eq1.params.clone();
    params.insert("f".into(), f as i64);
    params.insert("g".into(), g as i64);
    let report = LawReport {
        law: Law::Split,
        params,
        lhs: eq1.lhs,
        rhs: quartic,
        holds: c1 == c2 && c2 == c3 && c3 == c4,
    };
    Ok((SplittingData { f, g }, report))
}

/// Sign lemma: ((-1)/p)^(B/2) = (-1)^((p-1)(m-1)/8) for any valid triple
/// with B even over an odd m.
pub fn sign_lemma_check(p: u64, t: &WhfTriple) -> Result<bool> {
    Ok(sign_lemma_report(p, t)?.holds)
}

/// Same check as a structured report (lhs the symbol power, rhs the sign).
pub fn sign_lemma_report(p: u64, t: &WhfTriple) -> Result<LawReport> {
    if t.b % 2 != 0 {
        return Err(Error::OddB { b: t.b });
    }
    require_odd_prime(p)?;
    if t.m % 2 == 0 {
        return Err(Error::BadResidueClass { n: t.m });
    }
    let lhs = jacobi(-1, p)?.pow(t.b.unsigned_abs() / 2);
    let rhs = sign_exponent(t.m, p);
    Ok(LawReport {
        law: Law::Sign,
        params: params_from(&[
            ("m", t.m as i64),
            ("p", p as i64),
            ("A", t.a),
            ("B", t.b),
            ("C", t.c),
        ]),
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::represent::whf_triple;
    use SymbolValue::{Minus, Plus};

    #[test]
    fn eq1_examples() {
        let r = eval_eq1(17, 13).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (Plus, Plus, true));
        let r = eval_eq1(13, 3).unwrap(); // p | C
        assert_eq!((r.lhs, r.rhs, r.holds), (Plus, Plus, true));
        let r = eval_eq1(5, 11).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (Plus, Plus, true));
        assert_eq!(r.params["A"], -5);
    }

    #[test]
    fn eq1_rejects_non_split() {
        assert_eq!(eval_eq1(13, 7), Err(Error::NotSplit { m: 13, p: 7 }));
        assert_eq!(eval_eq1(13, 13), Err(Error::NotSplit { m: 13, p: 13 }));
        assert!(matches!(eval_eq1(12, 7), Err(Error::BadResidueClass { .. })));
        assert!(matches!(eval_eq1(13, 9), Err(Error::BadResidueClass { .. })));
    }

    #[test]
    fn m2_eq3_examples() {
        let r = eval_m2_eq3(17).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (Plus, Plus, true));
        let r = eval_m2_eq3(7).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (Minus, Minus, true));
        let r = eval_m2_eq3(31).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (Plus, Plus, true));
        assert_eq!(eval_m2_eq3(3), Err(Error::NotSplit { m: 2, p: 3 }));
        assert_eq!(eval_m2_eq3(5), Err(Error::NotSplit { m: 2, p: 5 }));
    }

    #[test]
    fn variant_examples_m13_p3() {
        let r = eval_whf_variant(13, 3, Variant::Eq5).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (Minus, Minus, true));
        assert_eq!((r.params["A"], r.params["B"], r.params["C"]), (13, 2, 3));

        let r = eval_whf_variant(13, 3, Variant::Eq6).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (Minus, Minus, true));
        assert_eq!(r.params["p_star"], -3);

        let r = eval_whf_variant(13, 3, Variant::Eq4).unwrap(); // p | B in EQ4
        assert_eq!((r.lhs, r.rhs, r.holds), (Plus, Plus, true));
        assert_eq!((r.params["A"], r.params["B"], r.params["C"]), (13, 3, 2));
    }

    #[test]
    fn burde_eq7_examples() {
        let r = eval_burde_eq7(5, 29).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (Plus, Plus, true));
        let r = eval_burde_eq7(13, 17).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (Minus, Minus, true));
        // same rational side mod the other prime
        let (a, b, c, d) = (3i64, 2, 1, 4);
        assert_eq!(
            jacobi(a * c - b * d, 17).unwrap(),
            jacobi(a * c - b * d, 13).unwrap()
        );
        assert_eq!(
            eval_burde_eq7(5, 13),
            Err(Error::NotMutualResidue { p: 5, q: 13 })
        );
    }

    #[test]
    fn burde_chain_examples() {
        let r = eval_burde_chain(5, 29).unwrap();
        assert_eq!((r.lhs, r.rhs), (Minus, Minus));
        assert_eq!(r.params["jacobi_route"], -1);
        assert!(r.holds);

        let r = eval_burde_chain(13, 17).unwrap();
        assert_eq!((r.lhs, r.rhs), (Minus, Minus));
        assert_eq!(r.params["jacobi_route"], -1);
        assert!(r.holds);

        // chain and eq7 reduce to the same statement
        let chain = eval_burde_chain(13, 17).unwrap();
        let eq7 = eval_burde_eq7(13, 17).unwrap();
        assert_eq!(chain.holds, eq7.holds);
    }

    #[test]
    fn gosset_examples() {
        let r = eval_gosset_eq8(5, 29).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (Minus, Minus, true));
        assert_eq!(r.params["rhs_residue"], 28);
        assert_eq!((r.params["u"], r.params["v"]), (15, 17));

        let r = eval_gosset_eq8(13, 17).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (Minus, Minus, true));
        assert_eq!(r.params["rhs_residue"], 16);
        assert_eq!((r.params["u"], r.params["v"]), (10, 13));
    }

    #[test]
    fn gosset_degenerate_fraction() {
        // 101 = 1^2 + 10^2 and 5 | 10, so a/b is undefined mod q = 5
        assert!(matches!(
            eval_gosset_eq8(101, 5),
            Err(Error::DegenerateFraction { q: 5, .. })
        ));
    }

    #[test]
    fn froehlich_examples() {
        let r = eval_froehlich_eq9(5, 29).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (Plus, Plus, true));
        assert_eq!(r.params["s2"], 1);
        assert_eq!((r.params["i"], r.params["j"]), (3, 17));

        let r = eval_froehlich_eq9(13, 17).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (Minus, Minus, true));
        assert_eq!(r.params["s2"], -1);
        assert_eq!((r.params["i"], r.params["j"]), (8, 13));
    }

    #[test]
    fn splitting_examples() {
        let (sd, r) = splitting_chain(13, 3).unwrap();
        assert_eq!((sd.f, sd.g), (3, 4));
        assert!(r.holds);
        assert_eq!((r.lhs, r.rhs), (Plus, Plus));

        let (sd, r) = splitting_chain(5, 11).unwrap();
        assert_eq!((sd.f, sd.g), (1, 4));
        assert!(r.holds);

        let (sd, r) = splitting_chain(5, 29).unwrap();
        assert_eq!((sd.f, sd.g), (2, 2));
        assert!(r.holds); // all four conditions false together
        assert_eq!((r.lhs, r.rhs), (Minus, Minus));
    }

    #[test]
    fn sign_lemma_examples() {
        let t13 = whf_triple(13).unwrap();
        assert!(sign_lemma_check(3, &t13).unwrap());
        assert!(sign_lemma_check(5, &t13).unwrap());
        let t17 = whf_triple(17).unwrap();
        assert!(sign_lemma_check(13, &t17).unwrap());

        let r = sign_lemma_report(3, &t13).unwrap();
        assert_eq!((r.lhs, r.rhs), (Minus, Minus));
        let r = sign_lemma_report(13, &t17).unwrap();
        assert_eq!((r.lhs, r.rhs), (Plus, Plus));
        let r = sign_lemma_report(5, &t13).unwrap();
        assert_eq!((r.lhs, r.rhs), (Plus, Plus));

        let odd_b = convert_convention(&t13, Convention::Eq4).unwrap();
        assert_eq!(sign_lemma_check(3, &odd_b), Err(Error::OddB { b: 3 }));
    }

    #[test]
    fn exponent_is_integer_for_admissible_inputs() {
        // (p-1)(m-1)/8 integral for p odd, m = 1 mod 4
        for m in [5u64, 13, 17, 29, 97] {
            for p in [3u64, 5, 7, 11, 31] {
                assert_eq!(((p - 1) * (m - 1)) % 8, 0);
            }
        }
    }

    #[test]
    fn report_serializes_to_stable_json() {
        let r = eval_eq1(13, 3).unwrap();
        let line = serde_json::to_string(&r).unwrap();
        assert!(line.contains("\"law\":\"EQ1\""));
        assert!(line.contains("\"holds\":true"));
        let back: LawReport = serde_json::from_str(&line).unwrap();
        assert_eq!(back, r);
    }
}
