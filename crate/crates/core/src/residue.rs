//! Exact residue functionals for tuples of scaled coordinate powers
//! `f_i = c_i z_{σ(i)}^{a_i}` with distinct variables.
//!
//! A functional is stored by its action on Taylor coefficients at the
//! origin: `ψ ↦ Σ_β c_β (∂^β ψ / β!)(0)`, with the `(2πi)^p` already divided
//! out.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::builders::{koszul, koszul_d_contraction};
use crate::error::{check_dim, Error, Result};
use crate::homology::module_cycle;
use crate::ideal::{MonomialIdeal, PrimeSupport};
use crate::poly::{rat, DifferentialForm, ExponentVector, Polynomial, Rational, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetFunctional {
    n: usize,
    /// Active variables, increasing.
    variables: Vec<usize>,
    /// Multi-indices over the active variables.
    coefficients: BTreeMap<ExponentVector, Rational>,
}

impl JetFunctional {
    pub fn new(n: usize, variables: Vec<usize>, coefficients: BTreeMap<ExponentVector, Rational>) -> Result<Self> {
        let support = PrimeSupport::new(n, variables)?;
        let variables = support.variables().to_vec();
        for beta in coefficients.keys() {
            check_dim(variables.len(), beta.len())?;
        }
        let coefficients = coefficients.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(JetFunctional { n, variables, coefficients })
    }

    /// `m · δ_0` on the given variables.
    pub fn dirac(n: usize, variables: Vec<usize>, m: Rational) -> Result<Self> {
        let p = variables.len();
        JetFunctional::new(n, variables, [(ExponentVector::zeros(p), m)].into())
    }

    pub fn nvars(&self) -> usize { self.n }

    pub fn support_codim(&self) -> usize { self.variables.len() }

    pub fn variables(&self) -> &[usize] { &self.variables }

    pub fn coefficients(&self) -> &BTreeMap<ExponentVector, Rational> { &self.coefficients }

    /// The coefficient of `δ_0` if the functional is a multiple of it.
    pub fn dirac_mass(&self) -> Option<Rational> {
        let origin = ExponentVector::zeros(self.variables.len());
        match self.coefficients.len() {
            0 => Some(Rational::zero()),
            1 => self.coefficients.get(&origin).cloned(),
            _ => None,
        }
    }

    /// Evaluates on a polynomial jet. Inactive variables are set to 0.
    pub fn apply(&self, psi: &Polynomial) -> Result<Rational> {
        check_dim(self.n, psi.nvars())?;
        let mut total = Rational::zero();
        for (e, c) in psi.terms() {
            let inactive_zero = (0..self.n).all(|i| self.variables.contains(&i) || e.get(i) == 0);
            if !inactive_zero {
                continue;
            }
            if let Some(w) = self.coefficients.get(&e.project(&self.variables)) {
                total += w * c;
            }
        }
        Ok(total)
    }
}

impl fmt::Display for JetFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coefficients
            .iter()
            .map(|(beta, c)| if beta.is_zero() { format!("{}·δ0", c) } else { format!("{}·∂^{:?}δ0", c, beta.as_slice()) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Splits a tuple entry `c z_v^a` into `(v, a, c)`.
fn coordinate_power(t: &Term) -> Result<(usize, u32, Rational)> {
    let support = t.exponents.support();
    if t.is_zero() || support.len() != 1 {
        return Err(Error::domain(format!("{} is not a nonzero multiple of a coordinate power", t.to_polynomial())));
    }
    let v = support[0];
    Ok((v, t.exponents.get(v), t.coeff.clone()))
}

/// The one-variable factor `ψ ↦ ⟨∂̄(1/f) ∧ df, ψ⟩` for `f = c z^a`, as
/// coefficients on `z^β`: the `z^{a−1}` coefficient of `ψ · f'` divided by `c`.
fn one_variable_factor(a: u32, c: &Rational) -> BTreeMap<u32, Rational> {
    let f = Polynomial::monomial(c.clone(), ExponentVector::new(vec![a]));
    let df = f.partial_derivative(0);
    let target = ExponentVector::new(vec![a - 1]);
    (0..a)
        .filter_map(|beta| {
            let jet = Polynomial::monomial(Rational::one(), ExponentVector::new(vec![beta]));
            let v = (&jet * &df).coefficient(&target) / c;
            Some((beta, v)).filter(|(_, v)| !v.is_zero())
        })
        .collect()
}

/// The functional `ψ ↦ (2πi)^{−p} ⟨∂̄(1/f_p) ∧ ⋯ ∧ ∂̄(1/f_1) ∧ df_1 ∧ ⋯ ∧ df_p, ψ⟩`.
///
/// The tuple entries must be nonzero multiples of powers of distinct
/// coordinates; the functional is then the tensor product of the
/// one-variable factors.
pub fn ch_product_functional(f: &[Term]) -> Result<JetFunctional> {
    let first = f.first().ok_or_else(|| Error::domain("empty tuple"))?;
    let n = first.exponents.len();
    let mut factors: BTreeMap<usize, BTreeMap<u32, Rational>> = BTreeMap::new();
    for t in f {
        check_dim(n, t.exponents.len())?;
        let (v, a, c) = coordinate_power(t)?;
        if a == 0 {
            return Err(Error::domain("constant entry in the tuple"));
        }
        if factors.insert(v, one_variable_factor(a, &c)).is_some() {
            return Err(Error::domain(format!("variable x{} occurs twice in the tuple", v + 1)));
        }
    }
    let variables: Vec<usize> = factors.keys().copied().collect();
    let mut coefficients: BTreeMap<Vec<u32>, Rational> = [(Vec::new(), Rational::one())].into();
    for factor in factors.values() {
        let mut next = BTreeMap::new();
        for (beta, c) in &coefficients {
            for (b, w) in factor {
                let mut idx = beta.clone();
                idx.push(*b);
                next.insert(idx, c * w);
            }
        }
        coefficients = next;
    }
    JetFunctional::new(n, variables, coefficients.into_iter().map(|(b, c)| (ExponentVector::new(b), c)).collect())
}

/// The three multiplicities compared by [`pl_verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlVerification {
    pub expected: u64,
    /// Mass of the residue functional, if it is a multiple of `δ_0`.
    pub functional: Option<Rational>,
    pub ideal_length: u64,
    pub koszul_h0: i64,
    pub passed: bool,
}

/// Compares the residue functional of `f`, the length of `O/(f)` at the
/// origin and the `H_0` cycle of the Koszul complex, against `Π a_i`.
pub fn pl_verify(f: &[Term]) -> Result<PlVerification> {
    let functional = ch_product_functional(f)?;
    let n = functional.nvars();
    if f.len() != n {
        return Err(Error::precondition(format!("the tuple must have one entry per variable ({} ≠ {})", f.len(), n)));
    }
    let expected: u64 = f.iter().map(|t| t.exponents.degree()).product();
    let origin = PrimeSupport::origin(n);
    let ideal = MonomialIdeal::minimalize(n, f.iter().map(|t| t.exponents.clone()).collect())?;
    let ideal_length = ideal.geometric_multiplicity(&origin)?;
    let koszul_h0 = module_cycle(&koszul(f)?, 0)?.multiplicity(&origin);
    let mass = functional.dirac_mass();
    let passed = mass == Some(rat(expected as i64)) && ideal_length == expected && koszul_h0 == expected as i64;
    Ok(PlVerification { expected, functional: mass, ideal_length, koszul_h0, passed })
}

fn factorial(p: usize) -> Rational { (1..=p as i64).fold(Rational::one(), |acc, k| acc * rat(k)) }

/// `df_1 ∧ ⋯ ∧ df_p` for a tuple of terms.
pub fn wedge_of_differentials(f: &[Term]) -> Result<DifferentialForm> {
    let first = f.first().ok_or_else(|| Error::domain("empty tuple"))?;
    let n = first.exponents.len();
    f.iter().try_fold(DifferentialForm::function(Polynomial::one(n)), |acc, t| {
        acc.wedge(&DifferentialForm::differential(&t.to_polynomial()))
    })
}

/// Checks that `Dφ_1 ⋯ Dφ_p` on the Koszul complex of `f` is the rank one
/// block `E_p → E_0` with entry `p! · df_1 ∧ ⋯ ∧ df_p`.
pub fn disputation_consistency(f: &[Term]) -> Result<bool> {
    let k = koszul(f)?;
    let p = f.len();
    let d = koszul_d_contraction(&k, p)?;
    if d.shape() != (1, 1) {
        return Ok(false);
    }
    let expected = wedge_of_differentials(f)?.scale(&factorial(p));
    Ok(d.entry(0, 0) == expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    fn term(c: Rational, e: &[u32]) -> Term { Term::new(c, ExponentVector::new(e.to_vec())) }

    /// Residue at 0 of `ψ(z) f'(z)/f(z)` for `f = c z^a` and `ψ = z^β`:
    /// `f'/f = a/z`, so only `β = 0` survives, with value `a`.
    fn laurent_residue(a: u32, beta: u32) -> Rational { if beta == 0 { rat(a as i64) } else { rat(0) } }

    #[test]
    fn single_power_is_a_times_dirac() {
        for a in 1..=6 {
            let phi = ch_product_functional(&[term(rat(1), &[a])]).unwrap();
            assert_eq!(phi.dirac_mass(), Some(rat(a as i64)));
        }
    }

    #[test]
    fn scaled_powers_on_test_jets() {
        let f = [term(rat(3), &[2, 0]), term(rat(1), &[0, 3])];
        let phi = ch_product_functional(&f).unwrap();
        for b1 in 0..=1 {
            for b2 in 0..=2 {
                let jet = Polynomial::monomial(rat(1), ExponentVector::new(vec![b1, b2]));
                let expected = laurent_residue(2, b1) * laurent_residue(3, b2);
                assert_eq!(phi.apply(&jet).unwrap(), expected);
            }
        }
        assert_eq!(phi.dirac_mass(), Some(rat(6)));
    }

    #[test]
    fn scaling_and_permutation_invariance() {
        let f = [term(rat(1), &[2, 0, 0]), term(rat(1), &[0, 0, 3]), term(rat(1), &[0, 1, 0])];
        let g = [term(ratio(-7, 2), &[0, 1, 0]), term(rat(5), &[2, 0, 0]), term(ratio(1, 9), &[0, 0, 3])];
        assert_eq!(ch_product_functional(&f).unwrap(), ch_product_functional(&g).unwrap());
    }

    #[test]
    fn repeated_variable_is_rejected() {
        let f = [term(rat(1), &[1, 0]), term(rat(2), &[2, 0])];
        assert!(matches!(ch_product_functional(&f), Err(Error::Domain(_))));
        assert!(matches!(ch_product_functional(&[term(rat(1), &[1, 1])]), Err(Error::Domain(_))));
    }

    #[test]
    fn three_way_agreement() {
        let r = pl_verify(&[term(rat(1), &[2, 0]), term(rat(1), &[0, 3])]).unwrap();
        assert!(r.passed);
        assert_eq!((r.ideal_length, r.koszul_h0), (6, 6));
        assert!(pl_verify(&[term(rat(1), &[1])]).unwrap().passed);
        assert!(matches!(pl_verify(&[term(rat(1), &[1, 0])]), Err(Error::Precondition(_))));
    }

    #[test]
    fn d_contraction_normalization() {
        assert!(disputation_consistency(&[term(rat(1), &[1, 0]), term(rat(1), &[0, 1])]).unwrap());
        assert!(disputation_consistency(&[term(rat(1), &[5])]).unwrap());
        assert!(disputation_consistency(&[term(rat(2), &[3, 0]), term(rat(1), &[0, 2])]).unwrap());
        let three = [term(rat(1), &[1, 0, 0]), term(ratio(1, 2), &[0, 2, 0]), term(rat(-3), &[0, 0, 1])];
        assert!(disputation_consistency(&three).unwrap());
    }
}
