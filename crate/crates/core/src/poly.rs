//! Sparse exact polynomials and holomorphic differential forms over ℚ.
//!
//! Monomials are keyed by [`ExponentVector`], ordered graded-lexicographically.
//! A [`DifferentialForm`] maps strictly increasing index sets `I` (standing for
//! `dz_I = dz_{i_1} ∧ … ∧ dz_{i_q}`) to polynomial coefficients. Only
//! holomorphic differentials occur; every product and derivative is exact.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational { Rational::from_integer(BigInt::from(n)) }

pub fn ratio(n: i64, d: i64) -> Rational { Rational::new(BigInt::from(n), BigInt::from(d)) }

/// Exponents of a monomial `x^a`, one entry per ambient variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self { ExponentVector(entries) }

    pub fn zeros(n: usize) -> Self { ExponentVector(vec![0; n]) }

    /// The exponent vector of the single variable `x_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize { self.0.len() }

    pub fn is_empty(&self) -> bool { self.0.is_empty() }

    pub fn as_slice(&self) -> &[u32] { &self.0 }

    pub fn get(&self, i: usize) -> u32 { self.0[i] }

    pub fn degree(&self) -> u64 { self.0.iter().map(|&e| e as u64).sum() }

    pub fn is_zero(&self) -> bool { self.0.iter().all(|&e| e == 0) }

    /// Componentwise `self ≤ other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other` if it stays non-negative.
    pub fn checked_sub(&self, other: &ExponentVector) -> Option<ExponentVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }

    /// Componentwise `max(self − other, 0)`.
    pub fn saturating_sub(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a.saturating_sub(*b)).collect())
    }

    /// Least common multiple of the two monomials.
    pub fn join(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Keeps only the listed coordinates, in the listed order.
    pub fn project(&self, coords: &[usize]) -> ExponentVector {
        ExponentVector(coords.iter().map(|&i| self.0[i]).collect())
    }

    /// Variables with a positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }

    /// Lexicographic comparison of the raw entries, without the degree key.
    pub fn lex_cmp(&self, other: &ExponentVector) -> Ordering { self.0.cmp(&other.0) }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> { Some(self.cmp(other)) }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self { ExponentVector(v) }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A single coefficient times a monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    pub coeff: Rational,
    pub exponents: ExponentVector,
}

impl Term {
    pub fn new(coeff: Rational, exponents: ExponentVector) -> Self {
        if coeff.is_zero() {
            let n = exponents.len();
            return Term { coeff, exponents: ExponentVector::zeros(n) };
        }
        Term { coeff, exponents }
    }

    pub fn monomial(exponents: ExponentVector) -> Self { Term { coeff: Rational::one(), exponents } }

    pub fn is_zero(&self) -> bool { self.coeff.is_zero() }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::monomial(self.coeff.clone(), self.exponents.clone())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_one() {
            write!(f, "{}", self.exponents)
        } else if self.exponents.is_zero() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*{}", self.coeff, self.exponents)
        }
    }
}

/// A polynomial in `n` variables with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self { Polynomial { n, terms: BTreeMap::new() } }

    pub fn one(n: usize) -> Self { Self::constant(n, Rational::one()) }

    pub fn constant(n: usize, c: Rational) -> Self { Self::monomial(c, ExponentVector::zeros(n)) }

    pub fn monomial(coeff: Rational, exponents: ExponentVector) -> Self {
        let n = exponents.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponents, coeff);
        }
        Polynomial { n, terms }
    }

    pub fn variable(n: usize, i: usize) -> Self {
        Self::monomial(Rational::one(), ExponentVector::unit(n, i))
    }

    /// Sums the given terms, merging equal exponents and dropping zeros.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Rational, ExponentVector)>) -> Result<Self> {
        let mut p = Polynomial::zero(n);
        for (c, e) in terms {
            check_dim(n, e.len())?;
            p.add_term(c, e);
        }
        Ok(p)
    }

    fn add_term(&mut self, c: Rational, e: ExponentVector) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize { self.n }

    pub fn is_zero(&self) -> bool { self.terms.is_empty() }

    pub fn num_terms(&self) -> usize { self.terms.len() }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> { self.terms.iter() }

    pub fn coefficient(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u64> { self.terms.keys().map(|e| e.degree()).max() }

    /// The single term of a monomial polynomial.
    pub fn as_term(&self) -> Option<Term> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Term { coeff: c.clone(), exponents: e.clone() })
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.n, other.n)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(c.clone(), e.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.n, other.n)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(-c.clone(), e.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.n, other.n)?;
        let mut acc: BTreeMap<ExponentVector, Rational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                *acc.entry(e1.add(e2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Polynomial { n: self.n, terms: acc })
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial { n: self.n, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> Polynomial { self.scale(&-Rational::one()) }

    /// ∂/∂x_i.
    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let a = e.get(i);
            if a == 0 {
                continue;
            }
            let mut v = e.as_slice().to_vec();
            v[i] -= 1;
            terms.insert(ExponentVector(v), c * rat(a as i64));
        }
        Polynomial { n: self.n, terms }
    }

    /// Substitutes `x_j → 1` for every `j` outside `keep` and renumbers the
    /// remaining variables in the order given.
    pub fn restrict_to(&self, keep: &[usize]) -> Polynomial {
        let mut p = Polynomial::zero(keep.len());
        for (e, c) in &self.terms {
            p.add_term(c.clone(), e.project(keep));
        }
        p
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial { self.try_add(rhs).expect("polynomial dimension mismatch") }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial { self.try_sub(rhs).expect("polynomial dimension mismatch") }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial { self.try_mul(rhs).expect("polynomial dimension mismatch") }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest term first reads more naturally
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let t = Term { coeff: c.abs(), exponents: e.clone() };
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-{}", t)?,
                (0, false) => write!(f, "{}", t)?,
                (_, true) => write!(f, " - {}", t)?,
                (_, false) => write!(f, " + {}", t)?,
            }
        }
        Ok(())
    }
}

/// Number of inversions needed to sort the concatenation of two strictly
/// increasing, disjoint index lists.
fn shuffle_sign(a: &[usize], b: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for &x in a {
        inversions += b.iter().filter(|&&y| y < x).count();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A holomorphic differential form `Σ_I p_I dz_I` with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DifferentialForm {
    n: usize,
    components: BTreeMap<Vec<usize>, Polynomial>,
}

impl DifferentialForm {
    pub fn zero(n: usize) -> Self { DifferentialForm { n, components: BTreeMap::new() } }

    /// A 0-form.
    pub fn function(p: Polynomial) -> Self {
        let n = p.nvars();
        let mut components = BTreeMap::new();
        if !p.is_zero() {
            components.insert(Vec::new(), p);
        }
        DifferentialForm { n, components }
    }

    /// `dz_i` (0-based index).
    pub fn dz(n: usize, i: usize) -> Self {
        let mut components = BTreeMap::new();
        components.insert(vec![i], Polynomial::one(n));
        DifferentialForm { n, components }
    }

    /// `p dz_I` for an arbitrary index list; reorders with sign and vanishes on
    /// repeated indices.
    pub fn from_component(indices: &[usize], p: Polynomial) -> Result<Self> {
        let n = p.nvars();
        let mut form = DifferentialForm::function(p);
        for &i in indices {
            if i >= n {
                return Err(crate::Error::domain(format!("dz index {} out of range for {} variables", i + 1, n)));
            }
            form = form.wedge(&DifferentialForm::dz(n, i))?;
        }
        Ok(form)
    }

    pub fn nvars(&self) -> usize { self.n }

    pub fn is_zero(&self) -> bool { self.components.is_empty() }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> { self.components.iter() }

    pub fn component(&self, indices: &[usize]) -> Polynomial {
        self.components.get(indices).cloned().unwrap_or_else(|| Polynomial::zero(self.n))
    }

    /// The form degree if every component has the same number of differentials.
    /// The zero form reports `None`.
    pub fn pure_degree(&self) -> Option<usize> {
        let mut degrees = self.components.keys().map(|k| k.len());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    fn insert(&mut self, key: Vec<usize>, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        match self.components.remove(&key) {
            Some(old) => {
                let s = &old + &p;
                if !s.is_zero() {
                    self.components.insert(key, s);
                }
            }
            None => {
                self.components.insert(key, p);
            }
        }
    }

    pub fn try_add(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        check_dim(self.n, other.n)?;
        let mut out = self.clone();
        for (k, p) in &other.components {
            out.insert(k.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &DifferentialForm) -> Result<DifferentialForm> { self.try_add(&other.neg()) }

    pub fn scale(&self, c: &Rational) -> DifferentialForm {
        if c.is_zero() {
            return DifferentialForm::zero(self.n);
        }
        DifferentialForm { n: self.n, components: self.components.iter().map(|(k, p)| (k.clone(), p.scale(c))).collect() }
    }

    pub fn neg(&self) -> DifferentialForm { self.scale(&-Rational::one()) }

    /// Multiplies every coefficient by a polynomial (a 0-form on the left).
    pub fn mul_function(&self, p: &Polynomial) -> Result<DifferentialForm> {
        check_dim(self.n, p.nvars())?;
        let mut out = DifferentialForm::zero(self.n);
        for (k, q) in &self.components {
            out.insert(k.clone(), p.try_mul(q)?);
        }
        Ok(out)
    }

    /// Exterior product with the usual shuffle signs.
    pub fn wedge(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        check_dim(self.n, other.n)?;
        let mut out = DifferentialForm::zero(self.n);
        for (i, p) in &self.components {
            for (j, q) in &other.components {
                if i.iter().any(|x| j.contains(x)) {
                    continue;
                }
                let sign = shuffle_sign(i, j);
                let mut key: Vec<usize> = i.iter().chain(j.iter()).copied().collect();
                key.sort_unstable();
                let coeff = p.try_mul(q)?;
                out.insert(key, if sign > 0 { coeff } else { coeff.neg() });
            }
        }
        Ok(out)
    }

    /// Holomorphic exterior derivative `d(p dz_I) = Σ_j ∂p/∂z_j dz_j ∧ dz_I`.
    pub fn exterior_d(&self) -> DifferentialForm {
        let mut out = DifferentialForm::zero(self.n);
        for (idx, p) in &self.components {
            for j in 0..self.n {
                if idx.contains(&j) {
                    continue;
                }
                let dp = p.partial_derivative(j);
                if dp.is_zero() {
                    continue;
                }
                let sign = shuffle_sign(&[j], idx);
                let mut key = idx.clone();
                key.push(j);
                key.sort_unstable();
                out.insert(key, if sign > 0 { dp } else { dp.neg() });
            }
        }
        out
    }

    /// `d` of a function, as a 1-form.
    pub fn differential(p: &Polynomial) -> DifferentialForm { DifferentialForm::function(p.clone()).exterior_d() }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        for (k, (idx, p)) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if idx.is_empty() {
                write!(f, "({})", p)?;
            } else {
                let dz: Vec<String> = idx.iter().map(|i| format!("dz{}", i + 1)).collect();
                write!(f, "({}) {}", p, dz.join("^"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[u32]) -> ExponentVector { ExponentVector::new(v.to_vec()) }

    fn mono(c: i64, v: &[u32]) -> Polynomial { Polynomial::monomial(rat(c), ev(v)) }

    #[test]
    fn difference_of_squares() {
        let x1 = Polynomial::variable(2, 0);
        let x2 = Polynomial::variable(2, 1);
        let p = &(&x1 + &x2) * &(&x1 - &x2);
        let expected = &mono(1, &[2, 0]) - &mono(1, &[0, 2]);
        assert_eq!(p, expected);
    }

    #[test]
    fn product_with_zero_is_zero() {
        let p = &mono(3, &[1, 2]) + &mono(-1, &[0, 1]);
        assert!((&p * &Polynomial::zero(2)).is_zero());
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let a = Polynomial::variable(2, 0);
        let b = Polynomial::variable(3, 0);
        assert!(matches!(a.try_mul(&b), Err(crate::Error::Dimension { .. })));
    }

    #[test]
    fn graded_lex_order() {
        let mut v = vec![ev(&[0, 2]), ev(&[1, 0]), ev(&[2, 0]), ev(&[1, 1]), ev(&[0, 0])];
        v.sort();
        assert_eq!(v, vec![ev(&[0, 0]), ev(&[1, 0]), ev(&[0, 2]), ev(&[1, 1]), ev(&[2, 0])]);
    }

    #[test]
    fn wedge_antisymmetry_and_nilpotence() {
        let dz1 = DifferentialForm::dz(2, 0);
        let dz2 = DifferentialForm::dz(2, 1);
        assert_eq!(dz1.wedge(&dz2).unwrap().component(&[0, 1]), Polynomial::one(2));
        assert_eq!(dz2.wedge(&dz1).unwrap().component(&[0, 1]), Polynomial::one(2).neg());
        assert!(dz1.wedge(&dz1).unwrap().is_zero());
    }

    #[test]
    fn wedge_of_one_forms_with_coefficients() {
        // (z2 dz1) ∧ (z1 dz2) = z1 z2 dz1∧dz2
        let a = DifferentialForm::from_component(&[0], Polynomial::variable(2, 1)).unwrap();
        let b = DifferentialForm::from_component(&[1], Polynomial::variable(2, 0)).unwrap();
        let w = a.wedge(&b).unwrap();
        assert_eq!(w.component(&[0, 1]), mono(1, &[1, 1]));
        assert_eq!(w.pure_degree(), Some(2));
    }

    #[test]
    fn power_rule() {
        let d = DifferentialForm::differential(&mono(1, &[2]));
        assert_eq!(d.component(&[0]), mono(2, &[1]));
    }

    #[test]
    fn derivative_of_one_form() {
        // d(z1 z2 dz1) = z1 dz2 ∧ dz1 = −z1 dz1∧dz2
        let w = DifferentialForm::from_component(&[0], mono(1, &[1, 1])).unwrap();
        let dw = w.exterior_d();
        assert_eq!(dw.component(&[0, 1]), mono(-1, &[1, 0]));
        assert_eq!(dw.pure_degree(), Some(2));
    }

    #[test]
    fn reordered_component_picks_up_sign() {
        let f = DifferentialForm::from_component(&[2, 0], Polynomial::one(3)).unwrap();
        assert_eq!(f.component(&[0, 2]), Polynomial::one(3).neg());
        let g = DifferentialForm::from_component(&[1, 1], Polynomial::one(3)).unwrap();
        assert!(g.is_zero());
    }

    #[test]
    fn restriction_substitutes_one() {
        let p = &mono(2, &[1, 3, 1]) + &mono(1, &[1, 0, 0]);
        let r = p.restrict_to(&[0]);
        assert_eq!(r, mono(3, &[1]));
    }
}
