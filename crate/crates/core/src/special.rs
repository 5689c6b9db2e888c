//! Confluent hypergeometric (Kummer) function in the polynomial regime.
//!
//! Every bound-state radial factor in this crate is `F(-n, b, x)` with a
//! non-negative integer `n`, so the production path is a degree-`n`
//! polynomial with exactly known coefficients. The general power series is
//! kept as a validation oracle only; it sums the same terms in a different
//! order and is the natural cross-check for the coefficient recurrence.

use crate::{r, Error, Real, Result};

/// `F(-n, b, x)` as an explicit polynomial.
///
/// Coefficients are built by the forward recurrence
/// `c_{j+1} = c_j (j - n) / ((b + j)(j + 1))`, which stays in range up to
/// degrees of a few hundred where a factorial-ratio formula would overflow.
#[derive(Debug, Clone, PartialEq)]
pub struct KummerPoly<R: Real> {
    degree: usize,
    second_param: R,
    coefficients: Vec<R>,
}

impl<R: Real> KummerPoly<R> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn second_param(&self) -> R {
        self.second_param
    }

    /// Ascending coefficients; `coefficients()[0] == 1` always.
    pub fn coefficients(&self) -> &[R] {
        &self.coefficients
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: R) -> R {
        let mut acc = *self.coefficients.last().expect("at least one coefficient");
        for &c in self.coefficients.iter().rev().skip(1) {
            acc = acc * x + c;
        }
        acc
    }

    /// Sum of coefficient magnitudes times `|x|^j`: the natural scale against
    /// which evaluation error is measured.
    pub fn evaluation_scale(&self, x: R) -> R {
        let ax = x.abs();
        let mut acc = self.coefficients.last().unwrap().abs();
        for &c in self.coefficients.iter().rev().skip(1) {
            acc = acc * ax + c.abs();
        }
        acc
    }
}

/// Builds `F(-n, b, x)` for `b > 0`.
///
/// All scenarios call this with `b = nu + 1 >= 1`, so `b <= 0` signals an
/// upstream bug rather than a user input problem.
pub fn kummer_poly<R: Real>(n: usize, b: R) -> Result<KummerPoly<R>> {
    if b <= R::zero() {
        return Err(Error::Domain(format!(
            "Kummer second parameter must be positive, got b = {b}"
        )));
    }
    let nf = R::from_usize(n).expect("degree converts");
    let mut coefficients = Vec::with_capacity(n + 1);
    let mut c = R::one();
    coefficients.push(c);
    for j in 0..n {
        let jf = R::from_usize(j).expect("index converts");
        c = c * (jf - nf) / ((b + jf) * (jf + R::one()));
        coefficients.push(c);
    }
    Ok(KummerPoly {
        degree: n,
        second_param: b,
        coefficients,
    })
}

/// General Kummer series `M(a, b, x)` by direct summation.
///
/// Partial sums run until the next term drops below `~1e-16` of the running
/// sum (never below machine epsilon for the scalar type), capped at 500
/// terms. This is the validation oracle for [`kummer_poly`]; for `a = -n`
/// the series terminates exactly at the polynomial.
pub fn kummer_series<R: Real>(a: R, b: R, x: R) -> Result<R> {
    if b <= R::zero() && b.fract() == R::zero() {
        return Err(Error::Domain(format!(
            "Kummer series undefined for non-positive integer b = {b}"
        )));
    }
    let tol = r::<R>(1e-16).max(R::epsilon() / r::<R>(2.0));
    let cap = 500;
    let mut sum = R::one();
    let mut term = R::one();
    for j in 0..cap {
        let jf = R::from_usize(j).expect("index converts");
        term = term * (a + jf) * x / ((b + jf) * (jf + R::one()));
        sum += term;
        // a term of exactly zero means the series has terminated (a = -n)
        if term == R::zero() || term.abs() < tol * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::Numerical(format!(
        "Kummer series did not converge within {cap} terms \
         (a = {a}, b = {b}, x = {x}, last term = {term})"
    )))
}
