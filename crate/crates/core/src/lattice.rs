//! Exact intersection theory on the Picard lattice of a blowup of the plane.
//!
//! Classes are written in the total-transform basis `(L; E_1, ..., E_n)` with
//! `L^2 = 1`, `E_i^2 = -1` and all cross terms zero. Every quantity is an
//! exact `i64`; arithmetic that would overflow reports [`Error::Overflow`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr;

/// Integer coefficient vector `coeff_l * L + sum coeff_e[i] * E_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    coeff_l: i64,
    coeff_e: Vec<i64>,
}

/// Outcome of dividing a class by two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Halving {
    Half(DivisorClass),
    Indivisible,
}

impl Halving {
    pub fn half(self) -> Option<DivisorClass> {
        match self {
            Halving::Half(c) => Some(c),
            Halving::Indivisible => None,
        }
    }
}

impl DivisorClass {
    pub fn new(coeff_l: i64, coeff_e: Vec<i64>) -> Self {
        DivisorClass { coeff_l, coeff_e }
    }

    pub fn zero(n: usize) -> Self {
        DivisorClass::new(0, vec![0; n])
    }

    /// Builds a class from the full coefficient vector `[l, e_1, ..., e_n]`.
    pub fn from_coefficients(coeffs: &[i64]) -> Result<Self> {
        match coeffs.split_first() {
            Some((&l, e)) => Ok(DivisorClass::new(l, e.to_vec())),
            None => Err(Error::Domain("a class needs at least the L coefficient".into())),
        }
    }

    pub fn coeff_l(&self) -> i64 {
        self.coeff_l
    }

    pub fn coeff_e(&self) -> &[i64] {
        &self.coeff_e
    }

    pub fn arity(&self) -> usize {
        self.coeff_e.len()
    }

    pub fn coefficients(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(self.arity() + 1);
        v.push(self.coeff_l);
        v.extend_from_slice(&self.coeff_e);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeff_l == 0 && self.coeff_e.iter().all(|&c| c == 0)
    }

    fn same_arity(&self, other: &Self) -> Result<()> {
        if self.arity() == other.arity() {
            Ok(())
        } else {
            Err(Error::Arity {
                expected: self.arity(),
                found: other.arity(),
            })
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> Option<i64>) -> Result<Self> {
        self.same_arity(other)?;
        let coeff_l = f(self.coeff_l, other.coeff_l).ok_or(Error::Overflow)?;
        let coeff_e = self
            .coeff_e
            .iter()
            .zip(&other.coeff_e)
            .map(|(&a, &b)| f(a, b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(DivisorClass { coeff_l, coeff_e })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, i64::checked_add)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, i64::checked_sub)
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self> {
        let coeff_l = self.coeff_l.checked_mul(k).ok_or(Error::Overflow)?;
        let coeff_e = self
            .coeff_e
            .iter()
            .map(|&c| c.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(DivisorClass { coeff_l, coeff_e })
    }

    pub fn checked_neg(&self) -> Result<Self> {
        self.checked_scale(-1)
    }

    /// Divides by two when every coefficient is even.
    pub fn halve(&self) -> Halving {
        if self.coefficients().iter().all(|c| c % 2 == 0) {
            Halving::Half(DivisorClass {
                coeff_l: self.coeff_l / 2,
                coeff_e: self.coeff_e.iter().map(|c| c / 2).collect(),
            })
        } else {
            Halving::Indivisible
        }
    }

    /// Applies a permutation of the exceptional slots: slot `i` moves to `perm[i]`.
    pub fn permute_exceptional(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.arity() {
            return Err(Error::Arity {
                expected: self.arity(),
                found: perm.len(),
            });
        }
        let mut coeff_e = vec![0; self.arity()];
        let mut seen = vec![false; self.arity()];
        for (i, &j) in perm.iter().enumerate() {
            if j >= self.arity() || seen[j] {
                return Err(Error::Domain("not a permutation of the exceptional slots".into()));
            }
            seen[j] = true;
            coeff_e[j] = self.coeff_e[i];
        }
        Ok(DivisorClass {
            coeff_l: self.coeff_l,
            coeff_e,
        })
    }
}

// Operator forms panic on arity mismatch or overflow; fallible code paths use
// the `checked_*` methods instead.
impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_add(rhs).expect("divisor addition")
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        &self + &rhs
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_sub(rhs).expect("divisor subtraction")
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        &self - &rhs
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.checked_neg().expect("divisor negation")
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        -&self
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.checked_scale(self).expect("divisor scaling")
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        self * &rhs
    }
}

/// The lattice `Z L + Z E_1 + ... + Z E_n` with diagonal form `(1, -1, ..., -1)`
/// and a canonical class (by default `-3L + sum E_i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceLattice {
    label: String,
    basis: Vec<String>,
    canonical: DivisorClass,
}

pub(crate) fn is_symbol_name(name: &str) -> bool {
    let mut chars = name.chars();
    let head_ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_');
    let body = name.trim_end_matches('\'');
    head_ok
        && body
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl SurfaceLattice {
    /// `basis[0]` names the pullback of a line; the rest name the exceptional
    /// total transforms.
    pub fn new(label: impl Into<String>, basis: Vec<String>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::Domain("basis must contain at least the line class".into()));
        }
        for (i, name) in basis.iter().enumerate() {
            if !is_symbol_name(name) {
                return Err(Error::Domain(format!("`{name}` is not a valid basis name")));
            }
            if name == "K" {
                return Err(Error::Domain("`K` is reserved for the canonical class".into()));
            }
            if basis[..i].contains(name) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        let n = basis.len() - 1;
        Ok(SurfaceLattice {
            label: label.into(),
            canonical: DivisorClass::new(-3, vec![1; n]),
            basis,
        })
    }

    /// Replaces the canonical class. It must be characteristic (all
    /// coefficients odd) so that adjunction divides exactly.
    pub fn with_canonical(mut self, canonical: DivisorClass) -> Result<Self> {
        if canonical.arity() != self.n() {
            return Err(Error::Arity {
                expected: self.n(),
                found: canonical.arity(),
            });
        }
        if canonical.coefficients().iter().any(|c| c % 2 == 0) {
            return Err(Error::Domain(
                "canonical class must be characteristic (all coefficients odd)".into(),
            ));
        }
        self.canonical = canonical;
        Ok(self)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Number of exceptional basis vectors.
    pub fn n(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn has_standard_canonical(&self) -> bool {
        self.canonical == DivisorClass::new(-3, vec![1; self.n()])
    }

    pub fn zero(&self) -> DivisorClass {
        DivisorClass::zero(self.n())
    }

    /// The `i`-th basis vector (`0` is `L`).
    pub fn basis_class(&self, i: usize) -> DivisorClass {
        let mut c = self.zero();
        if i == 0 {
            c.coeff_l = 1;
        } else {
            c.coeff_e[i - 1] = 1;
        }
        c
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn class(&self, coeffs: &[i64]) -> Result<DivisorClass> {
        if coeffs.len() != self.rank() {
            return Err(Error::Arity {
                expected: self.n(),
                found: coeffs.len().saturating_sub(1),
            });
        }
        DivisorClass::from_coefficients(coeffs)
    }

    fn check(&self, a: &DivisorClass) -> Result<()> {
        if a.arity() == self.n() {
            Ok(())
        } else {
            Err(Error::Arity {
                expected: self.n(),
                found: a.arity(),
            })
        }
    }

    /// `a.b = a_L b_L - sum a_i b_i`.
    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        let mut acc = (a.coeff_l as i128) * (b.coeff_l as i128);
        for (&x, &y) in a.coeff_e.iter().zip(&b.coeff_e) {
            acc -= (x as i128) * (y as i128);
        }
        i64::try_from(acc).map_err(|_| Error::Overflow)
    }

    pub fn self_int(&self, a: &DivisorClass) -> Result<i64> {
        self.intersect(a, a)
    }

    pub fn canonical_square(&self) -> i64 {
        self.self_int(&self.canonical)
            .expect("canonical class has lattice arity")
    }

    pub fn k_degree(&self, a: &DivisorClass) -> Result<i64> {
        self.intersect(&self.canonical, a)
    }

    /// `p_a(a) = 1 + (a^2 + K.a)/2`.
    pub fn arithmetic_genus(&self, a: &DivisorClass) -> Result<i64> {
        let s = self
            .self_int(a)?
            .checked_add(self.k_degree(a)?)
            .ok_or(Error::Overflow)?;
        debug_assert_eq!(s % 2, 0, "canonical class is characteristic");
        Ok(1 + s / 2)
    }

    /// `chi(O(a)) = 1 + (a^2 - K.a)/2` on a rational surface.
    pub fn riemann_roch_chi(&self, a: &DivisorClass) -> Result<i64> {
        let s = self
            .self_int(a)?
            .checked_sub(self.k_degree(a)?)
            .ok_or(Error::Overflow)?;
        debug_assert_eq!(s % 2, 0, "canonical class is characteristic");
        Ok(1 + s / 2)
    }

    pub fn gram_matrix(&self, classes: &[DivisorClass]) -> Result<Vec<Vec<i64>>> {
        classes
            .iter()
            .map(|a| classes.iter().map(|b| self.intersect(a, b)).collect())
            .collect()
    }

    /// Gram determinant of the full basis; `(-1)^n` for this form.
    pub fn basis_gram_determinant(&self) -> Result<i128> {
        let basis: Vec<_> = (0..self.rank()).map(|i| self.basis_class(i)).collect();
        determinant(&self.gram_matrix(&basis)?)
    }

    /// Renders a class as `2L - E1 - 3E2'`.
    pub fn format_class(&self, a: &DivisorClass) -> String {
        let mut out = String::new();
        for (coeff, name) in a.coefficients().into_iter().zip(&self.basis) {
            if coeff == 0 {
                continue;
            }
            let mag = coeff.unsigned_abs();
            if out.is_empty() {
                if coeff < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if coeff < 0 { " - " } else { " + " });
            }
            if mag != 1 {
                out.push_str(&mag.to_string());
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parses a class expression over the basis names and `K`.
    pub fn parse_class(&self, text: &str) -> Result<DivisorClass> {
        expr::parse(text, self, &|_| None)
    }
}

/// Algebraic index test `C^2 * D^2 <= (D.C)^2` for `D^2 > 0`, compared as
/// cross-multiplied integers.
pub fn index_bound_holds(d_sq: i64, d_dot_c: i64, c_sq: i64) -> Result<bool> {
    if d_sq <= 0 {
        return Err(Error::Domain(format!(
            "index bound needs a reference class of positive square, got {d_sq}"
        )));
    }
    let lhs = (c_sq as i128) * (d_sq as i128);
    let rhs = (d_dot_c as i128) * (d_dot_c as i128);
    Ok(lhs <= rhs)
}

pub fn is_perfect_square(v: i128) -> bool {
    if v < 0 {
        return false;
    }
    let r = v.isqrt();
    r * r == v
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn determinant(m: &[Vec<i64>]) -> Result<i128> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Domain("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(1);
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| a[i][k].checked_mul(a[k][j]).and_then(|y| x.checked_sub(y)))
                    .ok_or(Error::Overflow)?;
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coefficients())
    }
}
