//! Homology of multigraded complexes strand by strand, localization at
//! coordinate primes, local lengths, and cycles.
//!
//! In multidegree `b` the strand of a complex consists of the basis elements
//! whose degree divides `b`, and the differentials restricted to them. Every
//! homology rank is an exact rational rank computation on such a strand.
//!
//! Localizing at `P = (x_i : i ∈ S)` is done by substituting `x_j = 1` for
//! `j ∉ S`, which collapses the ℤⁿ-grading to a ℤ^S-grading. With `D` the
//! componentwise maximum of the generator degrees, the strand at `b` only
//! depends on `min(b, D)`. So a nonzero strand with some `b_i ≥ D_i` repeats
//! forever along `x_i` (infinite length), and otherwise the length is the sum
//! over the finite box `b < D`.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::builders::{koszul, taylor_from_monomials};
use crate::error::{check_dim, Error, Result};
use crate::ideal::{Filtration, MonomialIdeal, PrimeSupport};
use crate::linalg::{self, QMatrix};
use crate::poly::{ExponentVector, Term};
use crate::supercomplex::{Complex, FreeModule, GradedMatrix};

/// Largest variable count for which all coordinate primes are enumerated.
pub const MAX_ENUMERATION_VARS: usize = 12;

/// Extra width added to generator-degree boxes when certifying exactness.
pub fn box_margin() -> u32 {
    std::env::var("CYCLEKIT_BOX_MARGIN").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(2)
}

/// One multidegree of a complex: per-level dimensions and the maps between them.
#[derive(Clone, Debug)]
pub struct Strand {
    pub multidegree: ExponentVector,
    pub dims: Vec<usize>,
    /// `maps[k−1]` is the strand of `φ_k`.
    pub maps: Vec<QMatrix>,
}

impl Strand {
    pub fn of(e: &Complex, b: &ExponentVector) -> Strand {
        let dims = e.modules().iter().map(|m| m.strand_basis(b).len()).collect();
        let maps = e.differentials().iter().map(|d| d.strand_matrix(b)).collect();
        Strand { multidegree: b.clone(), dims, maps }
    }

    /// `dim H_ℓ` for every level.
    pub fn homology(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.maps.iter().map(linalg::rank).collect();
        let rank_of = |k: usize| if k >= 1 && k <= ranks.len() { ranks[k - 1] } else { 0 };
        (0..self.dims.len()).map(|l| self.dims[l] - rank_of(l) - rank_of(l + 1)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(l, &d)| if l % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }
}

fn strand_rank(d: &GradedMatrix, b: &ExponentVector) -> usize {
    let m = d.strand_matrix(b);
    if m.rows() == 0 || m.cols() == 0 {
        0
    } else {
        linalg::rank(&m)
    }
}

/// `dim_ℚ H_ℓ(E)_b`.
pub fn strand_homology_rank(e: &Complex, l: i32, b: &ExponentVector) -> Result<usize> {
    check_dim(e.nvars(), b.len())?;
    let dim = e.module(l).strand_basis(b).len();
    if dim == 0 {
        return Ok(0);
    }
    Ok(dim - strand_rank(&e.differential(l), b) - strand_rank(&e.differential(l + 1), b))
}

/// `dim H_ℓ(E)_b` for every level `ℓ = 0..=N`.
pub fn strand_homology(e: &Complex, b: &ExponentVector) -> Vec<usize> { Strand::of(e, b).homology() }

/// Every multidegree `0 ≤ b ≤ bound`.
pub fn box_points(bound: &ExponentVector) -> Vec<ExponentVector> {
    if bound.is_empty() {
        return vec![ExponentVector::zeros(0)];
    }
    bound.as_slice().iter().map(|&x| 0..=x).multi_cartesian_product().map(ExponentVector::new).collect()
}

/// Generator-degree box of the given complexes widened by the margin.
pub fn certified_box(complexes: &[&Complex]) -> ExponentVector {
    let n = complexes.first().map_or(0, |c| c.nvars());
    let m = box_margin();
    let bound = complexes.iter().fold(ExponentVector::zeros(n), |acc, c| acc.join(&c.degree_bound()));
    ExponentVector::new(bound.as_slice().iter().map(|x| x + m).collect())
}

/// Homology of every strand in the box, keyed by multidegree.
pub fn homology_table(e: &Complex, bound: &ExponentVector) -> BTreeMap<ExponentVector, Vec<usize>> {
    box_points(bound)
        .into_par_iter()
        .map(|b| {
            let h = strand_homology(e, &b);
            (b, h)
        })
        .collect()
}

/// True if `H_ℓ(E)_b = 0` for all `ℓ > k` and all `b` in the box.
pub fn exact_above(e: &Complex, k: i32, bound: &ExponentVector) -> bool {
    box_points(bound).par_iter().all(|b| {
        strand_homology(e, b).iter().enumerate().all(|(l, &h)| (l as i32) <= k || h == 0)
    })
}

/// Substitutes `x_j = 1` for `j ∉ S`; the result lives in the variables of `S`.
pub fn localize(e: &Complex, p: &PrimeSupport) -> Result<Complex> {
    check_dim(e.nvars(), p.nvars())?;
    let keep = p.variables();
    let modules: Vec<FreeModule> = e
        .modules()
        .iter()
        .map(|m| FreeModule::new(keep.len(), m.level, m.generators.iter().map(|g| g.project(keep)).collect()))
        .collect::<Result<_>>()?;
    let diffs = e
        .differentials()
        .iter()
        .enumerate()
        .map(|(i, d)| d.with_modules(modules[i + 1].clone(), modules[i].clone()))
        .collect::<Result<Vec<_>>>()?;
    Complex::new(keep.len(), modules, diffs)
}

/// Length of a localized homology module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(m) => write!(f, "{}", m),
            Length::Infinite => write!(f, "infinite"),
        }
    }
}

/// Length of `H_ℓ(E)` localized at `P`; infinite exactly when the support of
/// the localized module is larger than the closed point.
pub fn local_length(e: &Complex, l: i32, p: &PrimeSupport) -> Result<Length> {
    let loc = localize(e, p)?;
    let s = loc.nvars();
    let d = [l - 1, l, l + 1]
        .iter()
        .flat_map(|&j| loc.module(j).generators)
        .fold(ExponentVector::zeros(s), |acc, g| acc.join(&g));
    if loc.module(l).rank() == 0 {
        return Ok(Length::Finite(0));
    }
    let points = box_points(&d);
    let results: Vec<(bool, usize)> = points
        .par_iter()
        .map(|b| {
            let h = strand_homology_rank(&loc, l, b).expect("dimension checked");
            let on_boundary = (0..s).any(|i| b.get(i) == d.get(i));
            (on_boundary, h)
        })
        .collect();
    if results.iter().any(|(edge, h)| *edge && *h > 0) {
        return Ok(Length::Infinite);
    }
    let total: usize = results.iter().map(|(_, h)| *h).sum();
    // beyond the box every strand repeats a boundary strand; spot-check that
    let m = box_margin().max(1);
    let far = ExponentVector::new(d.as_slice().iter().map(|x| x + m).collect());
    if s > 0 && strand_homology_rank(&loc, l, &far)? != 0 {
        return Err(Error::InternalConsistency(format!("strand {} of a finite-length module is nonzero", far)));
    }
    Ok(Length::Finite(total as u64))
}

/// A formal ℤ-combination of coordinate primes.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cycle {
    components: BTreeMap<PrimeSupport, i64>,
}

impl Cycle {
    pub fn zero() -> Self { Cycle::default() }

    pub fn single(p: PrimeSupport, m: i64) -> Self {
        let mut c = Cycle::zero();
        c.add_component(p, m);
        c
    }

    pub fn add_component(&mut self, p: PrimeSupport, m: i64) {
        let v = self.components.entry(p.clone()).or_insert(0);
        *v += m;
        if *v == 0 {
            self.components.remove(&p);
        }
    }

    pub fn components(&self) -> &BTreeMap<PrimeSupport, i64> { &self.components }

    pub fn multiplicity(&self, p: &PrimeSupport) -> i64 { self.components.get(p).copied().unwrap_or(0) }

    pub fn is_zero(&self) -> bool { self.components.is_empty() }

    pub fn add(&self, other: &Cycle) -> Cycle {
        let mut out = self.clone();
        for (p, m) in &other.components {
            out.add_component(p.clone(), *m);
        }
        out
    }

    pub fn scale(&self, s: i64) -> Cycle {
        let mut out = Cycle::zero();
        for (p, m) in &self.components {
            out.add_component(p.clone(), m * s);
        }
        out
    }

    pub fn sub(&self, other: &Cycle) -> Cycle { self.add(&other.scale(-1)) }

    /// The part supported in codimension `c`.
    pub fn codim_part(&self, c: usize) -> Cycle {
        Cycle { components: self.components.iter().filter(|(p, _)| p.codim() == c).map(|(p, m)| (p.clone(), *m)).collect() }
    }

    /// Codimension strata: `c ↦` the part of codimension `c`.
    pub fn by_codim(&self) -> BTreeMap<usize, Cycle> {
        let mut out: BTreeMap<usize, Cycle> = BTreeMap::new();
        for (p, m) in &self.components {
            out.entry(p.codim()).or_default().add_component(p.clone(), *m);
        }
        out
    }

    pub fn min_codim(&self) -> Option<usize> { self.components.keys().map(|p| p.codim()).min() }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let lines: Vec<String> = self.components.iter().map(|(p, m)| format!("{}·{}", m, p)).collect();
        write!(f, "{}", lines.join("\n"))
    }
}

/// `[H_ℓ(E)] = Σ m_i [Z_i]` over the minimal primes of the support of `H_ℓ`.
pub fn module_cycle(e: &Complex, l: i32) -> Result<Cycle> {
    let n = e.nvars();
    if n > MAX_ENUMERATION_VARS {
        return Err(Error::Resource(format!(
            "{} variables exceed the prime enumeration bound of {}",
            n, MAX_ENUMERATION_VARS
        )));
    }
    let mut cycle = Cycle::zero();
    let mut found: Vec<PrimeSupport> = Vec::new();
    if e.module(l).rank() == 0 {
        return Ok(cycle);
    }
    for size in 0..=n {
        let candidates: Vec<PrimeSupport> = (0..n)
            .combinations(size)
            .map(|vars| PrimeSupport::new(n, vars).expect("indices in range"))
            .filter(|p| !found.iter().any(|q| q.is_subset(p)))
            .collect();
        let lengths: Vec<Result<Length>> = candidates.par_iter().map(|p| local_length(e, l, p)).collect();
        for (p, len) in candidates.into_iter().zip(lengths) {
            match len? {
                Length::Finite(0) => {}
                Length::Finite(m) => {
                    cycle.add_component(p.clone(), m as i64);
                    found.push(p);
                }
                Length::Infinite => {
                    return Err(Error::InternalConsistency(format!(
                        "homology at level {} has infinite length at {} but no smaller support prime",
                        l, p
                    )))
                }
            }
        }
    }
    Ok(cycle)
}

/// The cycle of a complex together with the cycles of its homology modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexCycle {
    pub levels: Vec<Cycle>,
    pub total: Cycle,
}

/// `[E] = Σ_ℓ (−1)^ℓ [H_ℓ(E)]`.
pub fn complex_cycle_detail(e: &Complex) -> Result<ComplexCycle> {
    let levels: Vec<Cycle> = (0..=e.length() as i32).map(|l| module_cycle(e, l)).collect::<Result<_>>()?;
    let total = levels
        .iter()
        .enumerate()
        .fold(Cycle::zero(), |acc, (l, c)| if l % 2 == 0 { acc.add(c) } else { acc.sub(c) });
    Ok(ComplexCycle { levels, total })
}

pub fn complex_cycle(e: &Complex) -> Result<Cycle> { Ok(complex_cycle_detail(e)?.total) }

/// `[A] = [A′] + [A″]` in the codimension of the support of `A`.
pub fn cycle_additivity_check(sub: &Cycle, whole: &Cycle, quotient: &Cycle) -> bool {
    let Some(p) = whole.min_codim() else {
        return sub.is_zero() && quotient.is_zero();
    };
    whole.codim_part(p) == sub.codim_part(p).add(&quotient.codim_part(p))
}

/// Free resolution of `O/P` shifted to start in degree `m`.
pub fn shifted_prime_resolution(p: &PrimeSupport, m: &ExponentVector) -> Result<Complex> {
    let gens: Vec<ExponentVector> = p.variables().iter().map(|&i| ExponentVector::unit(p.nvars(), i)).collect();
    taylor_from_monomials(p.nvars(), &gens)?.shift_degrees(m)
}

/// Cycles `([O/P_i(−m_i)], [O/J_{i−1}], [O/J_i])` of one filtration step.
pub fn filtration_step_cycles(f: &Filtration, step: usize) -> Result<(Cycle, Cycle, Cycle)> {
    let ideals = f.ideals()?;
    let s = f.steps.get(step).ok_or_else(|| Error::domain(format!("no step {}", step + 1)))?;
    let sub = complex_cycle(&shifted_prime_resolution(&s.prime, &s.witness)?)?;
    let quotient_cycle = |i: &MonomialIdeal| -> Result<Cycle> {
        if i.is_unit() {
            Ok(Cycle::zero())
        } else {
            complex_cycle(&taylor_from_monomials(i.nvars(), i.generators())?)
        }
    };
    Ok((sub, quotient_cycle(&ideals[step])?, quotient_cycle(&ideals[step + 1])?))
}

/// Additivity for one step of a prime filtration.
pub fn filtration_step_additivity(f: &Filtration, step: usize) -> Result<bool> {
    let (sub, whole, quotient) = filtration_step_cycles(f, step)?;
    Ok(cycle_additivity_check(&sub, &whole, &quotient))
}

/// For a monomial tuple `f` of length `m` whose zero set has codimension
/// `p < m`: the Koszul complex has zero cycle while its `H_0` does not.
pub fn koszul_binomial_check(f: &[Term], p: usize) -> Result<bool> {
    let m = f.len();
    if m <= p {
        return Err(Error::precondition(format!("need more functions ({}) than the codimension ({})", m, p)));
    }
    let n = f.first().map_or(0, |t| t.exponents.len());
    let ideal = MonomialIdeal::minimalize(n, f.iter().map(|t| t.exponents.clone()).collect())?;
    let codim = ideal.minimal_primes()?.iter().map(|q| q.codim()).min().unwrap_or(0);
    if codim != p {
        return Err(Error::precondition(format!("the zero set has codimension {}, not {}", codim, p)));
    }
    let k = koszul(f)?;
    let detail = complex_cycle_detail(&k)?;
    Ok(detail.total.is_zero() && !detail.levels[0].is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::taylor_resolution;

    fn ev(v: &[u32]) -> ExponentVector { ExponentVector::new(v.to_vec()) }

    fn mono(v: &[u32]) -> Term { Term::monomial(ev(v)) }

    fn fat_point() -> Vec<Term> { vec![mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])] }

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::minimalize(n, gens.iter().map(|g| ev(g)).collect()).unwrap()
    }

    #[test]
    fn koszul_of_coordinates_resolves_the_origin() {
        let k = koszul(&[mono(&[1, 0]), mono(&[0, 1])]).unwrap();
        assert_eq!(strand_homology_rank(&k, 0, &ev(&[0, 0])).unwrap(), 1);
        assert_eq!(strand_homology_rank(&k, 0, &ev(&[1, 0])).unwrap(), 0);
    }

    #[test]
    fn fat_point_h0_total_is_three() {
        let t = taylor_resolution(&ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        let total: usize = box_points(&ev(&[4, 4])).iter().map(|b| strand_homology_rank(&t, 0, b).unwrap()).sum();
        assert_eq!(total, 3);
    }

    #[test]
    fn koszul_of_fat_point_is_not_exact() {
        let k = koszul(&fat_point()).unwrap();
        let total: usize = box_points(&ev(&[4, 4])).iter().map(|b| strand_homology_rank(&k, 1, b).unwrap()).sum();
        assert!(total > 0);
    }

    #[test]
    fn localization_examples() {
        let t = taylor_resolution(&ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        assert_eq!(localize(&t, &PrimeSupport::origin(2)).unwrap(), t);
        let four = taylor_resolution(&ideal(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]])).unwrap();
        let p = PrimeSupport::new(4, vec![0, 1]).unwrap();
        assert_eq!(local_length(&four, 0, &p).unwrap(), Length::Finite(1));
        let k = koszul(&[mono(&[5])]).unwrap();
        assert_eq!(local_length(&k, 0, &PrimeSupport::origin(1)).unwrap(), Length::Finite(5));
    }

    #[test]
    fn lengths_of_fat_point_complexes() {
        let t = taylor_resolution(&ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        assert_eq!(local_length(&t, 0, &PrimeSupport::origin(2)).unwrap(), Length::Finite(3));
        assert_eq!(local_length(&t, 1, &PrimeSupport::origin(2)).unwrap(), Length::Finite(0));
        let k = koszul(&fat_point()).unwrap();
        assert_eq!(local_length(&k, 1, &PrimeSupport::origin(2)).unwrap(), Length::Finite(3));
        // not minimal: the line x1 = 0 in the support of O/(x1)
        let line = taylor_resolution(&ideal(2, &[&[1, 0]])).unwrap();
        assert_eq!(local_length(&line, 0, &PrimeSupport::origin(2)).unwrap(), Length::Infinite);
    }

    #[test]
    fn module_cycles() {
        let four = taylor_resolution(&ideal(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]])).unwrap();
        let c = module_cycle(&four, 0).unwrap();
        let mut expected = Cycle::single(PrimeSupport::new(4, vec![0, 1]).unwrap(), 1);
        expected.add_component(PrimeSupport::new(4, vec![2, 3]).unwrap(), 1);
        assert_eq!(c, expected);
        let ci = koszul(&[mono(&[2, 0]), mono(&[0, 3])]).unwrap();
        assert_eq!(module_cycle(&ci, 0).unwrap(), Cycle::single(PrimeSupport::origin(2), 6));
    }

    #[test]
    fn koszul_cycle_cancels() {
        let k = koszul(&fat_point()).unwrap();
        let d = complex_cycle_detail(&k).unwrap();
        assert!(d.total.is_zero());
        assert_eq!(d.levels[0], Cycle::single(PrimeSupport::origin(2), 3));
        assert!(koszul_binomial_check(&fat_point(), 2).unwrap());
        assert!(koszul_binomial_check(&[mono(&[1]), mono(&[1])], 1).unwrap());
        assert!(koszul_binomial_check(&[mono(&[1, 0]), mono(&[0, 1]), mono(&[1, 1])], 2).unwrap());
        assert!(koszul_binomial_check(&fat_point(), 1).is_err());
    }

    #[test]
    fn euler_characteristic_matches_homology() {
        let k = koszul(&fat_point()).unwrap();
        for b in box_points(&ev(&[3, 3])) {
            let s = Strand::of(&k, &b);
            let h: i64 = s.homology().iter().enumerate().map(|(l, &x)| if l % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
            assert_eq!(h, s.euler_characteristic());
        }
    }

    #[test]
    fn cycle_arithmetic_and_display() {
        let p = PrimeSupport::origin(2);
        let c = Cycle::single(p.clone(), 3);
        assert!(c.sub(&c).is_zero());
        assert_eq!(c.to_string(), "3·[x1, x2]");
        assert_eq!(Cycle::zero().to_string(), "0");
        assert!(cycle_additivity_check(&c, &c.scale(2), &c));
    }

    #[test]
    fn filtration_steps_are_additive() {
        let i = ideal(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]);
        let f = i.prime_filtration().unwrap();
        for s in 0..f.steps.len() {
            assert!(filtration_step_additivity(&f, s).unwrap());
        }
    }
}
