//! Exact Laurent polynomials in `v = q^(1/2)` with integer coefficients.
//!
//! Every polynomial of the engine lives here in `v`-exponents: the structure
//! constants `f` and `h`, the Kazhdan-Lusztig polynomials (which only carry
//! even exponents), and the basis elements `ξ = v - v⁻¹`, `η = v + v⁻¹`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sparse Laurent polynomial: `(exponent, coefficient)` pairs sorted by
/// exponent, with no zero coefficients stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<(i32, i64)>", into = "Vec<(i32, i64)>")]
pub struct LaurentPoly {
    terms: Vec<(i32, i64)>,
}

/// Unit in which a degree is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unit {
    /// Powers of `v = q^(1/2)`.
    V,
    /// Powers of `q`; only valid for polynomials with even `v`-exponents.
    Q,
}

/// The two expansion variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    /// `ξ = v - v⁻¹`
    Xi,
    /// `η = v + v⁻¹`
    Eta,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Xi => "xi",
            Basis::Eta => "eta",
        }
    }

    pub fn element(self) -> LaurentPoly {
        match self {
            Basis::Xi => LaurentPoly::xi(),
            Basis::Eta => LaurentPoly::eta(),
        }
    }
}

impl From<Vec<(i32, i64)>> for LaurentPoly {
    fn from(terms: Vec<(i32, i64)>) -> Self {
        LaurentPoly::from_terms(terms)
    }
}

impl From<LaurentPoly> for Vec<(i32, i64)> {
    fn from(p: LaurentPoly) -> Self {
        p.terms
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · v^exp`
    pub fn monomial(c: i64, exp: i32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Self { terms: vec![(exp, c)] }
        }
    }

    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    pub fn v_inv() -> Self {
        Self::monomial(1, -1)
    }

    pub fn q() -> Self {
        Self::monomial(1, 2)
    }

    pub fn xi() -> Self {
        Self { terms: vec![(-1, -1), (1, 1)] }
    }

    pub fn eta() -> Self {
        Self { terms: vec![(-1, 1), (1, 1)] }
    }

    /// Builds a polynomial from arbitrary terms, merging repeated exponents
    /// and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut terms: Vec<(i32, i64)> = terms.into_iter().collect();
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(i32, i64)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Self { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(i32, i64)] {
        &self.terms
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms
            .binary_search_by_key(&exp, |t| t.0)
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    /// Highest `v`-exponent; `None` stands for the degree of the zero
    /// polynomial (negative infinity).
    pub fn degree_v(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// Lowest `v`-exponent, `None` for zero.
    pub fn low_degree_v(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> i64 {
        self.terms.last().map_or(0, |t| t.1)
    }

    pub fn degree(&self, unit: Unit) -> Result<Option<i32>> {
        match unit {
            Unit::V => Ok(self.degree_v()),
            Unit::Q => {
                if self.terms.iter().any(|t| t.0 % 2 != 0) {
                    return Err(Error::NotAQPolynomial(self.to_string()));
                }
                Ok(self.degree_v().map(|d| d / 2))
            }
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|&(e, c)| (e + k, c)).collect(),
        }
    }

    /// Applies `v -> v⁻¹`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().rev().map(|&(e, c)| (-e, c)).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|&(e, x)| (e, x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.iter().all(|t| t.1 >= 0)
    }

    /// `self += factor * other`
    pub fn add_mul(&mut self, factor: &LaurentPoly, other: &LaurentPoly) {
        if factor.is_zero() || other.is_zero() {
            return;
        }
        let prod = factor * other;
        *self += &prod;
    }

    fn merge(a: &[(i32, i64)], b: &[(i32, i64)], sign: i64) -> Vec<(i32, i64)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (ea, ca) = a[i];
            let (eb, cb) = b[j];
            if ea < eb {
                out.push((ea, ca));
                i += 1;
            } else if eb < ea {
                out.push((eb, sign * cb));
                j += 1;
            } else {
                let c = ca + sign * cb;
                if c != 0 {
                    out.push((ea, c));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(e, c)| (e, sign * c)));
        out
    }

    /// Expands the polynomial as `Σ c_k · basis^k` by peeling the top
    /// coefficient.
    pub fn expand_in(&self, basis: Basis) -> Result<BasisExpansion> {
        let b = basis.element();
        let mut rest = self.clone();
        let mut coeffs: Vec<i64> = Vec::new();
        // powers[k] = basis^k, grown on demand
        let mut powers = vec![LaurentPoly::one()];
        while let Some(d) = rest.degree_v() {
            if d < 0 {
                return Err(Error::NotExpressible {
                    basis: basis.name(),
                    poly: self.to_string(),
                });
            }
            let d = d as usize;
            while powers.len() <= d {
                let next = powers.last().unwrap() * &b;
                powers.push(next);
            }
            let c = rest.leading_coeff();
            if coeffs.len() <= d {
                coeffs.resize(d + 1, 0);
            }
            coeffs[d] = c;
            rest -= &powers[d].scale(c);
        }
        Ok(BasisExpansion { basis, coeffs })
    }

    /// Text form in powers of `q`, e.g. `q^{3/2} - 2 + q^{-1/2}`.
    pub fn to_q_string(&self) -> String {
        self.to_string()
    }
}

fn q_power(e: i32) -> String {
    if e % 2 == 0 {
        match e / 2 {
            0 => String::new(),
            1 => "q".to_string(),
            k => format!("q^{{{k}}}"),
        }
    } else {
        format!("q^{{{e}/2}}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.unsigned_abs();
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let var = q_power(e);
            match (mag, var.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => write!(f, "{var}")?,
                (_, false) => write!(f, "{mag}{var}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly {
            terms: LaurentPoly::merge(&self.terms, &rhs.terms, 1),
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly {
            terms: LaurentPoly::merge(&self.terms, &rhs.terms, -1),
        }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let lo = self.terms[0].0 + rhs.terms[0].0;
        let hi = self.degree_v().unwrap() + rhs.degree_v().unwrap();
        let mut dense = vec![0i64; (hi - lo + 1) as usize];
        for &(ea, ca) in &self.terms {
            for &(eb, cb) in &rhs.terms {
                dense[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        LaurentPoly {
            terms: dense
                .into_iter()
                .enumerate()
                .filter(|t| t.1 != 0)
                .map(|(i, c)| (i as i32 + lo, c))
                .collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        self.terms = LaurentPoly::merge(&self.terms, &rhs.terms, 1);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        self.terms = LaurentPoly::merge(&self.terms, &rhs.terms, -1);
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `Σ coeffs[k] · basis^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisExpansion {
    pub basis: Basis,
    pub coeffs: Vec<i64>,
}

impl BasisExpansion {
    /// Highest power with a nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        let b = self.basis.element();
        let mut power = LaurentPoly::one();
        let mut acc = LaurentPoly::zero();
        for &c in &self.coeffs {
            acc += &power.scale(c);
            power = &power * &b;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_examples() {
        assert_eq!(LaurentPoly::v() * LaurentPoly::v_inv(), LaurentPoly::one());
        let xi2 = LaurentPoly::xi() * LaurentPoly::xi();
        assert_eq!(
            xi2,
            LaurentPoly::from_terms([(2, 1), (0, -2), (-2, 1)])
        );
        assert_eq!(
            LaurentPoly::eta() * LaurentPoly::xi(),
            LaurentPoly::from_terms([(2, 1), (-2, -1)])
        );
    }

    #[test]
    fn expansions() {
        let one = LaurentPoly::one().expand_in(Basis::Xi).unwrap();
        assert_eq!(one.coeffs, vec![1]);
        let eta = LaurentPoly::eta().expand_in(Basis::Eta).unwrap();
        assert_eq!(eta.coeffs, vec![0, 1]);
        let xi2 = (LaurentPoly::xi() * LaurentPoly::xi())
            .expand_in(Basis::Xi)
            .unwrap();
        assert_eq!(xi2.coeffs, vec![0, 0, 1]);
        assert!(LaurentPoly::zero().expand_in(Basis::Xi).unwrap().is_zero());
    }

    #[test]
    fn not_expressible() {
        // v alone is not a polynomial in η: peeling leaves -v⁻¹.
        let err = LaurentPoly::v().expand_in(Basis::Eta).unwrap_err();
        assert!(matches!(err, Error::NotExpressible { .. }));
        assert!(LaurentPoly::v_inv().expand_in(Basis::Xi).is_err());
    }

    #[test]
    fn degrees() {
        assert_eq!(LaurentPoly::zero().degree(Unit::V).unwrap(), None);
        assert_eq!(LaurentPoly::xi().pow(3).degree(Unit::V).unwrap(), Some(3));
        let q_plus_one = LaurentPoly::from_terms([(2, 1), (0, 1)]);
        assert_eq!(q_plus_one.degree(Unit::Q).unwrap(), Some(1));
        assert!(matches!(
            LaurentPoly::v().degree(Unit::Q),
            Err(Error::NotAQPolynomial(_))
        ));
    }

    #[test]
    fn text_form() {
        let p = LaurentPoly::from_terms([(3, 1), (0, -2), (-1, 1)]);
        assert_eq!(p.to_string(), "q^{3/2} - 2 + q^{-1/2}");
        assert_eq!(LaurentPoly::from_terms([(2, 1), (0, 1)]).to_string(), "q + 1");
        assert_eq!(LaurentPoly::from_terms([(4, -3)]).to_string(), "-3q^{2}");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_form() {
        let p = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[-1,1],[1,1]]");
        let back: LaurentPoly = serde_json::from_str("[[1,1],[-1,1],[3,0]]").unwrap();
        assert_eq!(back, p);
    }
}
