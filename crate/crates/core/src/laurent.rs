//! Exact integer Laurent polynomials in one variable.
//!
//! The same type holds Conway polynomials (in `z`) and one-variable Alexander
//! polynomials (in `t`); the variable name only matters when rendering.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("monomial coefficient must be nonzero")]
    ZeroCoefficient,
    #[error("substitution leaves mixed half-integer powers; not the Conway polynomial of a link")]
    MixedParity,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Sparse Laurent polynomial. No stored coefficient is ever zero, so the zero
/// polynomial is the empty map and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.values().next_back()
    }

    /// Multiplies by `coeff * x^exp`.
    pub fn scale_by_monomial(&self, coeff: impl Into<BigInt>, exp: i64) -> Result<Self, LaurentError> {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return Err(LaurentError::ZeroCoefficient);
        }
        Ok(Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + exp, c * &coeff)).collect(),
        })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Equality up to sign, term by term: `self == other` or `self == -other`.
    pub fn eq_up_to_sign(&self, other: &Self) -> bool {
        self == other || *self == -other.clone()
    }

    /// The representative of `±x^k · self` with lowest exponent 0 and a
    /// positive leading coefficient.
    pub fn normalize_units(&self) -> Self {
        let Some(shift) = self.min_exp() else {
            return Self::zero();
        };
        let flip = self.leading_coeff().is_some_and(|c| c.is_negative());
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e - shift, if flip { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// True iff `self = ±x^i · other` for some integer `i`.
    pub fn eq_up_to_units(&self, other: &Self) -> bool {
        self.normalize_units() == other.normalize_units()
    }

    /// Substitutes `z = t^{1/2} - t^{-1/2}` and returns the canonical
    /// unit-normalized Alexander polynomial in `t`.
    ///
    /// The substitution is carried out in `s = t^{1/2}`; a link's Conway
    /// polynomial only has exponents of one parity, so the result has only even
    /// or only odd powers of `s`, and odd ones are cleared by the unit `s`.
    pub fn conway_to_alexander(&self) -> Result<Self, LaurentError> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let z_in_s = Self::from_terms([(1, 1), (-1, -1)]);
        let mut in_s = Self::zero();
        let mut z_pow = Self::one();
        let mut next_exp = 0i64;
        // exponents of a Conway polynomial are non-negative; negative ones
        // use (s - 1/s)^{-1} which is not a Laurent polynomial
        if self.min_exp().unwrap() < 0 {
            return Err(LaurentError::MixedParity);
        }
        for (e, c) in self.terms() {
            while next_exp < e {
                z_pow = &z_pow * &z_in_s;
                next_exp += 1;
            }
            in_s = &in_s + &z_pow.scale_by_monomial(c.clone(), 0).expect("nonzero coefficient");
        }
        if in_s.is_zero() {
            return Ok(in_s);
        }
        let parity = in_s.min_exp().unwrap().rem_euclid(2);
        if in_s.terms().any(|(e, _)| e.rem_euclid(2) != parity) {
            return Err(LaurentError::MixedParity);
        }
        let halved = Self {
            coeffs: in_s
                .coeffs
                .into_iter()
                .map(|(e, c)| ((e + parity) / 2, c))
                .collect(),
        };
        Ok(halved.normalize_units())
    }

    /// Renders with the given variable name, ascending exponents, e.g.
    /// `1 + 2*z^2 - z^4`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let body = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if body.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&body);
            } else {
                out.push_str(&format!("{mag}*{body}"));
            }
        }
        out
    }

    /// Parses the output of [`LaurentPoly::render`] (whitespace-insensitive).
    pub fn parse(text: &str, var: &str) -> Result<Self, LaurentError> {
        TermParser { src: text.as_bytes(), pos: 0, var: var.as_bytes() }.parse()
    }
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
    var: &'a [u8],
}

impl TermParser<'_> {
    fn err(&self, msg: &str) -> LaurentError {
        LaurentError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn var(&mut self) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(self.var) {
            self.pos += self.var.len();
            true
        } else {
            false
        }
    }

    fn exponent(&mut self) -> Result<i64, LaurentError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = self.integer().ok_or_else(|| self.err("expected exponent"))?;
        let e: i64 = e.try_into().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -e } else { e })
    }

    fn parse(mut self) -> Result<LaurentPoly, LaurentError> {
        let mut p = LaurentPoly::zero();
        let mut first = true;
        loop {
            let mut negative = false;
            match self.peek() {
                None if first => return Err(self.err("empty polynomial")),
                None => return Ok(p),
                Some(b'+') if !first => self.pos += 1,
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                Some(_) if first => {}
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
            first = false;
            let (coeff, exp) = if let Some(c) = self.integer() {
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    if !self.var() {
                        return Err(self.err("expected variable after '*'"));
                    }
                    (c, self.exponent()?)
                } else {
                    (c, 0)
                }
            } else if self.var() {
                (BigInt::one(), self.exponent()?)
            } else {
                return Err(self.err("expected term"));
            };
            p.add_term(exp, if negative { -coeff } else { coeff });
        }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.render("x"))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs.clone())
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn add_examples() {
        let a = p(&[(0, 1), (2, 1)]);
        assert_eq!(&a + &LaurentPoly::zero(), a);
        assert!((p(&[(1, 1)]) + p(&[(1, -1)])).is_zero());
        assert_eq!(&a + &p(&[(2, 1)]), p(&[(0, 1), (2, 2)]));
    }

    #[test]
    fn mul_examples() {
        let z3 = p(&[(3, 1)]);
        let tref = p(&[(0, 1), (2, 1)]);
        assert_eq!(&(&z3 * &z3) * &tref, p(&[(6, 1), (8, 1)]));
        assert_eq!(&tref * &LaurentPoly::one(), tref);
        assert!((&tref * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn scale_examples() {
        let tref = p(&[(0, 1), (2, 1)]);
        assert_eq!(tref.scale_by_monomial(1, 3).unwrap(), p(&[(3, 1), (5, 1)]));
        assert_eq!(tref.scale_by_monomial(-1, 3).unwrap(), p(&[(3, -1), (5, -1)]));
        assert!(LaurentPoly::zero().scale_by_monomial(1, 3).unwrap().is_zero());
        assert_eq!(tref.scale_by_monomial(0, 3), Err(LaurentError::ZeroCoefficient));
    }

    #[test]
    fn conway_to_alexander_examples() {
        let tref = p(&[(0, 1), (2, 1)]);
        assert_eq!(tref.conway_to_alexander().unwrap(), p(&[(0, 1), (1, -1), (2, 1)]));
        assert_eq!(LaurentPoly::one().conway_to_alexander().unwrap(), LaurentPoly::one());

        // z^3 (1 + z^2): (t-1)^3 (t^2 - t + 1) up to units
        let lassoed = tref.scale_by_monomial(1, 3).unwrap();
        let t_minus_1 = p(&[(0, -1), (1, 1)]);
        let expected = &t_minus_1.pow(3) * &p(&[(0, 1), (1, -1), (2, 1)]);
        assert!(lassoed.conway_to_alexander().unwrap().eq_up_to_units(&expected));

        // Hopf: z -> t^{1/2} - t^{-1/2} ~ t - 1
        assert_eq!(p(&[(1, 1)]).conway_to_alexander().unwrap(), t_minus_1.normalize_units());
        assert_eq!(p(&[(0, 1), (1, 1)]).conway_to_alexander(), Err(LaurentError::MixedParity));
    }

    #[test]
    fn units_examples() {
        let a = p(&[(0, 1), (1, -1), (2, 1)]);
        let b = a.scale_by_monomial(-1, 3).unwrap();
        assert!(a.eq_up_to_units(&b));
        assert!(!a.eq_up_to_units(&p(&[(0, 1), (1, 1), (2, 1)])));
        assert!(LaurentPoly::zero().eq_up_to_units(&LaurentPoly::zero()));
    }

    #[test]
    fn render_and_parse() {
        let q = p(&[(0, 1), (2, 2), (4, -1)]);
        assert_eq!(q.render("z"), "1 + 2*z^2 - z^4");
        assert_eq!(LaurentPoly::parse("1 + 2*z^2 - z^4", "z").unwrap(), q);
        let r = p(&[(-2, -3), (1, 1)]);
        assert_eq!(r.render("t"), "-3*t^-2 + t");
        assert_eq!(LaurentPoly::parse(&r.render("t"), "t").unwrap(), r);
        assert_eq!(LaurentPoly::parse("0", "z").unwrap(), LaurentPoly::zero());
        assert!(LaurentPoly::parse("1 +", "z").is_err());
        assert!(LaurentPoly::parse("", "z").is_err());
        assert!(LaurentPoly::parse("2*", "z").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i64..6, -20i64..20), 0..6).prop_map(LaurentPoly::from_terms)
    }

    fn arb_conway() -> impl Strategy<Value = LaurentPoly> {
        (0i64..2, proptest::collection::vec(-5i64..5, 1..5)).prop_map(|(parity, cs)| {
            LaurentPoly::from_terms(cs.into_iter().enumerate().map(|(i, c)| (2 * i as i64 + parity, c)))
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn normalization_idempotent(a in arb_poly()) {
            let n = a.normalize_units();
            prop_assert_eq!(n.normalize_units(), n.clone());
            prop_assert!(n.eq_up_to_units(&a));
        }

        #[test]
        fn render_round_trip(a in arb_poly()) {
            prop_assert_eq!(LaurentPoly::parse(&a.render("z"), "z").unwrap(), a);
        }

        #[test]
        fn z_cubed_becomes_t_minus_one_cubed(q in arb_conway(), sign in prop_oneof![Just(1i64), Just(-1i64)]) {
            let t_minus_1 = LaurentPoly::from_terms([(0, -1), (1, 1)]);
            let base = q.conway_to_alexander().unwrap();
            let shifted = q.scale_by_monomial(sign, 3).unwrap().conway_to_alexander().unwrap();
            prop_assert!(shifted.eq_up_to_units(&(&t_minus_1.pow(3) * &base)));
        }
    }
}
