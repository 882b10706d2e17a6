//! Dense univariate polynomials over a [`Scalar`] ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde_json::Value;

use crate::scalar::{is_negative, Scalar};

/// Coefficients are stored degree-ascending with no trailing zeros, so the
/// zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![T::one()])
    }

    pub fn monomial(coeff: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = coeff;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, degree: usize) -> T {
        self.coeffs.get(degree).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn eval(&self, at: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    /// Sum of the coefficients, i.e. the value at 1.
    pub fn coeff_sum(&self) -> T {
        self.coeffs.iter().cloned().fold(T::zero(), |a, c| a + c)
    }

    /// `x^n p(1/x)`. Panics if `deg p > n`.
    pub fn reversed(&self, n: usize) -> Self {
        assert!(
            self.coeffs.len() <= n + 1,
            "cannot reverse a degree {:?} polynomial at {n}",
            self.degree()
        );
        Self::new((0..=n).map(|i| self.coeff(n - i)).collect())
    }

    /// `p(x + shift)`.
    pub fn shifted(&self, shift: &T) -> Self {
        let linear = Self::new(vec![shift.clone(), T::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &linear) + &Self::new(vec![c.clone()])
        })
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        !self.coeffs.iter().any(is_negative)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// Converts to integer coefficients if every coefficient is an integer.
    pub fn to_integer_poly(&self) -> Option<Polynomial<BigInt>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(Scalar::as_integer)
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial::new(coeffs))
    }

    /// Renders the polynomial degree-ascending in the given variable, e.g.
    /// `1 + 2ξ + ξ²`.
    pub fn display_in(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (deg, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = is_negative(c);
            let magnitude = if negative {
                T::zero() - c.clone()
            } else {
                c.clone()
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if deg == 0 || !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
            }
            if deg >= 1 {
                out.push_str(var);
            }
            if deg >= 2 {
                out.push_str(&superscript(deg));
            }
        }
        out
    }
}

impl Polynomial<BigInt> {
    /// Degree-ascending coefficient array, numbers where they fit in `i64`.
    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(big_to_json).collect())
    }
}

pub(crate) fn big_to_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(n.to_string()),
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        &Polynomial::zero() - self
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}
