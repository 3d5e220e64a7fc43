//! Exact arithmetic in `Z[θ]` with `θ = 2cos(π/N)`.
//!
//! Elements are coefficient vectors in `1, θ, θ², …` reduced modulo the monic
//! minimal polynomial of `θ`, so equality is plain vector equality.

use crate::laurent::{Basis, LaurentPoly};

/// Canonical representative: `degree` coefficients, lowest power first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt(Vec<i64>);

impl CycInt {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }
}

/// The ring `Z[2cos(π/N)]`.
#[derive(Clone, Debug)]
pub struct CycRing {
    n: u32,
    /// Monic minimal polynomial of θ, lowest coefficient first.
    minpoly: Vec<i64>,
}

fn poly_trim(p: &mut Vec<i64>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial; panics on a nonzero remainder.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert_eq!(*den.last().unwrap(), 1, "divisor must be monic");
    if rem.len() <= dd {
        return vec![0];
    }
    let mut quot = vec![0; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    quot
}

/// Cyclotomic polynomial Φ_n, lowest coefficient first.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    let mut p = num;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    poly_trim(&mut p);
    p
}

/// Monic minimal polynomial of `2cos(π/n)`, lowest coefficient first.
pub fn minimal_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    if n == 1 {
        // 2cos(π) = -2
        return vec![2, 1];
    }
    // θ = ζ + ζ⁻¹ with ζ a primitive 2n-th root of unity; Φ_{2n} is
    // palindromic of even degree, so x^{-φ/2}Φ_{2n}(x) is a polynomial in
    // x + x⁻¹ whose coefficients give the minimal polynomial of θ.
    let phi = cyclotomic_poly(2 * n);
    let half = (phi.len() as i32 - 1) / 2;
    let laurent = LaurentPoly::from_terms(
        phi.iter()
            .enumerate()
            .map(|(i, &c)| (i as i32 - half, c)),
    );
    laurent
        .expand_in(Basis::Eta)
        .expect("palindromic cyclotomic polynomial expands in x + 1/x")
        .coeffs
}

impl CycRing {
    pub fn new(n: u32) -> Self {
        Self {
            n,
            minpoly: minimal_polynomial(n),
        }
    }

    /// `N`, so that `θ = 2cos(π/N)`.
    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[i64] {
        &self.minpoly
    }

    pub fn from_int(&self, c: i64) -> CycInt {
        let mut v = vec![0; self.degree()];
        v[0] = c;
        CycInt(v)
    }

    pub fn zero(&self) -> CycInt {
        self.from_int(0)
    }

    pub fn one(&self) -> CycInt {
        self.from_int(1)
    }

    /// Reduces an arbitrary coefficient vector modulo the minimal polynomial.
    pub fn reduce(&self, mut p: Vec<i64>) -> CycInt {
        let d = self.degree();
        for k in (d..p.len()).rev() {
            let c = p[k];
            if c != 0 {
                for i in 0..=d {
                    p[k - d + i] -= c * self.minpoly[i];
                }
            }
        }
        p.resize(d, 0);
        CycInt(p)
    }

    pub fn theta(&self) -> CycInt {
        self.reduce(vec![0, 1])
    }

    pub fn add(&self, a: &CycInt, b: &CycInt) -> CycInt {
        CycInt(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &CycInt, b: &CycInt) -> CycInt {
        CycInt(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn mul(&self, a: &CycInt, b: &CycInt) -> CycInt {
        self.reduce(poly_mul(&a.0, &b.0))
    }

    pub fn is_zero(&self, a: &CycInt) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    /// `2cos(kπ/N)` via the Chebyshev recursion `C_{k+1} = θC_k - C_{k-1}`.
    pub fn two_cos_multiple(&self, k: u32) -> CycInt {
        let theta = self.theta();
        let mut prev = self.from_int(2);
        let mut cur = theta.clone();
        if k == 0 {
            return prev;
        }
        for _ in 1..k {
            let next = self.sub(&self.mul(&theta, &cur), &prev);
            prev = cur;
            cur = next;
        }
        cur
    }

    /// `2cos(π/m)`; requires `m | N`.
    pub fn two_cos_pi_over(&self, m: u32) -> CycInt {
        assert!(m >= 1 && self.n.is_multiple_of(m), "m = {m} must divide N = {}", self.n);
        self.two_cos_multiple(self.n / m)
    }

    /// Numerical value, for diagnostics only.
    pub fn to_f64(&self, a: &CycInt) -> f64 {
        let theta = 2.0 * (std::f64::consts::PI / self.n as f64).cos();
        a.0.iter()
            .rev()
            .fold(0.0, |acc, &c| acc * theta + c as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn minimal_polynomials() {
        // 2cos(π/2) = 0, 2cos(π/3) = 1, 2cos(π/4) = √2, 2cos(π/5) = golden ratio
        assert_eq!(minimal_polynomial(2), vec![0, 1]);
        assert_eq!(minimal_polynomial(3), vec![-1, 1]);
        assert_eq!(minimal_polynomial(4), vec![-2, 0, 1]);
        assert_eq!(minimal_polynomial(5), vec![-1, -1, 1]);
        assert_eq!(minimal_polynomial(6), vec![-3, 0, 1]);
        for n in 1..=30u32 {
            let mp = minimal_polynomial(n);
            let theta = 2.0 * (std::f64::consts::PI / n as f64).cos();
            let val = mp.iter().rev().fold(0.0, |acc, &c| acc * theta + c as f64);
            assert!(val.abs() < 1e-8, "n = {n}: residual {val}");
        }
    }

    #[test]
    fn chebyshev_values_match_cosines() {
        let ring = CycRing::new(12);
        for m in [1, 2, 3, 4, 6, 12] {
            let c = ring.two_cos_pi_over(m);
            let expected = 2.0 * (std::f64::consts::PI / m as f64).cos();
            assert!((ring.to_f64(&c) - expected).abs() < 1e-9, "m = {m}");
        }
        assert_eq!(ring.two_cos_pi_over(2), ring.zero());
        assert_eq!(ring.two_cos_pi_over(3), ring.one());
        assert_eq!(ring.two_cos_pi_over(1), ring.from_int(-2));
    }

    #[test]
    fn ring_identities() {
        let ring = CycRing::new(5);
        let phi = ring.theta();
        // golden ratio: φ² = φ + 1
        assert_eq!(ring.mul(&phi, &phi), ring.add(&phi, &ring.one()));
    }
}
