use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::One;

use crate::error::{check_dim, Error, Result};
use crate::ideal::MonomialIdeal;
use crate::poly::{ExponentVector, Rational, Term};
use crate::supercomplex::{Complex, FormEndomorphism, FreeModule, GradedMatrix};

/// Taylor complexes are indexed by generator subsets; beyond this the ranks
/// are out of reach.
const MAX_TAYLOR_GENERATORS: usize = 20;

fn subset_index(m: usize) -> Vec<Vec<Vec<usize>>> {
    (0..=m).map(|j| (0..m).combinations(j).collect()).collect()
}

/// Koszul complex of `f = (f_1, …, f_m)`: `E_j = ∧^j O^m` with basis `e_I`,
/// `|I| = j`, in lexicographic order, and `δ(e_I) = Σ_r (−1)^{r−1} f_{i_r} e_{I∖i_r}`.
pub fn koszul(f: &[Term]) -> Result<Complex> {
    let first = f.first().ok_or_else(|| Error::domain("the Koszul complex needs at least one element"))?;
    let n = first.exponents.len();
    for t in f {
        check_dim(n, t.exponents.len())?;
        if t.is_zero() {
            return Err(Error::domain("zero entry in the Koszul tuple"));
        }
    }
    let m = f.len();
    let subsets = subset_index(m);
    let degree = |set: &[usize]| set.iter().fold(ExponentVector::zeros(n), |acc, &i| acc.add(&f[i].exponents));
    let modules: Vec<FreeModule> = subsets
        .iter()
        .enumerate()
        .map(|(j, sets)| FreeModule::new(n, j as i32, sets.iter().map(|s| degree(s)).collect()))
        .collect::<Result<_>>()?;
    let mut diffs = Vec::with_capacity(m);
    for j in 1..=m {
        let position: BTreeMap<&Vec<usize>, usize> = subsets[j - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut entries = BTreeMap::new();
        for (c, set) in subsets[j].iter().enumerate() {
            for (r, &i) in set.iter().enumerate() {
                let face: Vec<usize> = set.iter().copied().filter(|&x| x != i).collect();
                let coeff = if r % 2 == 0 { f[i].coeff.clone() } else { -f[i].coeff.clone() };
                entries.insert((position[&face], c), coeff);
            }
        }
        diffs.push(GradedMatrix::new(modules[j].clone(), modules[j - 1].clone(), entries)?);
    }
    Complex::new(n, modules, diffs)
}

/// The composite `Dφ_1 ⋯ Dφ_p : E_p → E_0` of a complex, for the trivial
/// connection.
pub fn koszul_d_contraction(k: &Complex, p: usize) -> Result<FormEndomorphism> {
    if p == 0 || p > k.length() {
        return Err(Error::domain(format!("p = {} outside 1..={}", p, k.length())));
    }
    let chain: Vec<FormEndomorphism> = (1..=p as i32).map(|j| k.differential_endo(0, j).connection_d()).collect();
    FormEndomorphism::compose_all(&chain)
}

/// Taylor complex on an arbitrary list of monomials (repeats allowed): basis
/// `e_I` over subsets `I`, `deg e_I = lcm(m_i : i ∈ I)`, and
/// `d(e_I) = Σ_r (−1)^{r−1} (m_I / m_{I∖i_r}) e_{I∖i_r}`.
pub fn taylor_from_monomials(n: usize, gens: &[ExponentVector]) -> Result<Complex> {
    for g in gens {
        check_dim(n, g.len())?;
    }
    let r = gens.len();
    if r > MAX_TAYLOR_GENERATORS {
        return Err(Error::Resource(format!(
            "Taylor complex on {} generators exceeds the limit of {}",
            r, MAX_TAYLOR_GENERATORS
        )));
    }
    let subsets = subset_index(r);
    let lcm = |set: &[usize]| set.iter().fold(ExponentVector::zeros(n), |acc, &i| acc.join(&gens[i]));
    let modules: Vec<FreeModule> = subsets
        .iter()
        .enumerate()
        .map(|(j, sets)| FreeModule::new(n, j as i32, sets.iter().map(|s| lcm(s)).collect()))
        .collect::<Result<_>>()?;
    let mut diffs = Vec::with_capacity(r);
    for j in 1..=r {
        let position: BTreeMap<&Vec<usize>, usize> = subsets[j - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut entries = BTreeMap::new();
        for (c, set) in subsets[j].iter().enumerate() {
            for (k, &i) in set.iter().enumerate() {
                let face: Vec<usize> = set.iter().copied().filter(|&x| x != i).collect();
                let coeff = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
                entries.insert((position[&face], c), coeff);
            }
        }
        diffs.push(GradedMatrix::new(modules[j].clone(), modules[j - 1].clone(), entries)?);
    }
    Complex::new(n, modules, diffs)
}

/// Taylor resolution of `O/I` on the minimal generators of `I`.
pub fn taylor_resolution(i: &MonomialIdeal) -> Result<Complex> {
    if i.is_unit() {
        return Err(Error::domain("the unit ideal has the zero quotient"));
    }
    taylor_from_monomials(i.nvars(), i.generators())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, DifferentialForm, Polynomial};

    fn term(c: i64, e: &[u32]) -> Term { Term::new(rat(c), ExponentVector::new(e.to_vec())) }

    fn ranks(c: &Complex) -> Vec<usize> { (0..=c.length() as i32).map(|l| c.rank(l)).collect() }

    #[test]
    fn koszul_of_one_function() {
        let k = koszul(&[term(1, &[1])]).unwrap();
        assert_eq!(ranks(&k), vec![1, 1]);
        assert_eq!(k.differential(1).polynomial(0, 0), Polynomial::variable(1, 0));
    }

    #[test]
    fn koszul_middle_differential_signs() {
        let k = koszul(&[term(1, &[1, 0]), term(1, &[0, 1])]).unwrap();
        // δ(e_12) = z1 e_2 − z2 e_1
        let d2 = k.differential(2);
        assert_eq!(d2.polynomial(0, 0), Polynomial::variable(2, 1).neg());
        assert_eq!(d2.polynomial(1, 0), Polynomial::variable(2, 0));
    }

    #[test]
    fn koszul_ranks_and_errors() {
        let k = koszul(&[term(1, &[2, 0]), term(1, &[1, 1]), term(1, &[0, 2])]).unwrap();
        assert_eq!(ranks(&k), vec![1, 3, 3, 1]);
        assert!(koszul(&[]).is_err());
        assert!(koszul(&[Term::new(rat(0), ExponentVector::new(vec![1]))]).is_err());
    }

    #[test]
    fn d_contraction_of_coordinates() {
        let k = koszul(&[term(1, &[1, 0]), term(1, &[0, 1])]).unwrap();
        let d = koszul_d_contraction(&k, 2).unwrap();
        let expected = DifferentialForm::dz(2, 0).wedge(&DifferentialForm::dz(2, 1)).unwrap().scale(&rat(2));
        assert_eq!(d.entry(0, 0), expected);
    }

    #[test]
    fn d_contraction_of_a_power() {
        let k = koszul(&[term(1, &[4])]).unwrap();
        let d = koszul_d_contraction(&k, 1).unwrap();
        assert_eq!(d.entry(0, 0), DifferentialForm::differential(&Polynomial::monomial(rat(1), ExponentVector::new(vec![4]))));
    }

    #[test]
    fn taylor_of_variables_is_koszul() {
        let i = MonomialIdeal::minimalize(2, vec![ExponentVector::new(vec![1, 0]), ExponentVector::new(vec![0, 1])]).unwrap();
        let t = taylor_resolution(&i).unwrap();
        let tuple: Vec<Term> = i.generators().iter().map(|g| Term::monomial(g.clone())).collect();
        assert_eq!(t, koszul(&tuple).unwrap());
    }

    #[test]
    fn taylor_ranks() {
        let gens: Vec<ExponentVector> =
            [[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]].iter().map(|g| ExponentVector::new(g.to_vec())).collect();
        let t = taylor_from_monomials(4, &gens).unwrap();
        assert_eq!(ranks(&t), vec![1, 4, 6, 4, 1]);
        let many = vec![ExponentVector::new(vec![1]); 21];
        assert!(matches!(taylor_from_monomials(1, &many), Err(Error::Resource(_))));
        assert!(taylor_resolution(&MonomialIdeal::unit(2)).is_err());
    }

    #[test]
    fn zero_ideal_resolution_is_the_ring() {
        let t = taylor_resolution(&MonomialIdeal::zero(2)).unwrap();
        assert_eq!(ranks(&t), vec![1]);
    }
}
