//! Monomial ideal combinatorics.
//!
//! Ideals are stored by their minimal generators. Decompositions, prime
//! filtrations and the two multiplicities (geometric and Hilbert-Samuel) are
//! computed exactly from the exponent data alone.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, QMatrix};
use crate::poly::{rat, ExponentVector, Rational};

/// The monomial prime `(x_i : i ∈ S)`. Ordered by codimension, then by the
/// index list.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PrimeSupport {
    n: usize,
    variables: Vec<usize>,
}

impl PrimeSupport {
    pub fn new(n: usize, mut variables: Vec<usize>) -> Result<Self> {
        variables.sort_unstable();
        variables.dedup();
        if let Some(&v) = variables.last() {
            if v >= n {
                return Err(Error::domain(format!("variable index {} out of range for {} variables", v + 1, n)));
            }
        }
        Ok(PrimeSupport { n, variables })
    }

    /// The maximal ideal of the origin.
    pub fn origin(n: usize) -> Self { PrimeSupport { n, variables: (0..n).collect() } }

    pub fn nvars(&self) -> usize { self.n }

    pub fn variables(&self) -> &[usize] { &self.variables }

    pub fn codim(&self) -> usize { self.variables.len() }

    pub fn contains_var(&self, i: usize) -> bool { self.variables.binary_search(&i).is_ok() }

    pub fn is_subset(&self, other: &PrimeSupport) -> bool {
        self.variables.iter().all(|v| other.contains_var(*v))
    }

    pub fn to_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::from_minimal(self.n, self.variables.iter().map(|&i| ExponentVector::unit(self.n, i)).collect())
    }
}

impl Ord for PrimeSupport {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.codim().cmp(&other.codim()).then_with(|| self.variables.cmp(&other.variables))
    }
}

impl PartialOrd for PrimeSupport {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> { Some(self.cmp(other)) }
}

impl fmt::Display for PrimeSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.variables.iter().map(|i| format!("x{}", i + 1)).collect();
        write!(f, "[{}]", names.join(", "))
    }
}

/// A monomial ideal given by its minimal generators, sorted graded-lex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<ExponentVector>,
}

fn minimal_set(mut gens: Vec<ExponentVector>) -> Vec<ExponentVector> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<ExponentVector> = Vec::with_capacity(gens.len());
    // sorted by total degree, so a divisor always comes first
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, discarding redundant generators.
    pub fn minimalize(n: usize, gens: Vec<ExponentVector>) -> Result<Self> {
        for g in &gens {
            check_dim(n, g.len())?;
        }
        Ok(MonomialIdeal { n, generators: minimal_set(gens) })
    }

    fn from_minimal(n: usize, gens: Vec<ExponentVector>) -> Self { MonomialIdeal { n, generators: minimal_set(gens) } }

    pub fn zero(n: usize) -> Self { MonomialIdeal { n, generators: Vec::new() } }

    pub fn unit(n: usize) -> Self { MonomialIdeal { n, generators: vec![ExponentVector::zeros(n)] } }

    pub fn nvars(&self) -> usize { self.n }

    pub fn generators(&self) -> &[ExponentVector] { &self.generators }

    pub fn is_zero(&self) -> bool { self.generators.is_empty() }

    pub fn is_unit(&self) -> bool { self.generators.iter().any(|g| g.is_zero()) }

    pub fn contains(&self, m: &ExponentVector) -> bool { self.generators.iter().any(|g| g.divides(m)) }

    /// `J ⊆ self`.
    pub fn contains_ideal(&self, j: &MonomialIdeal) -> bool { j.generators.iter().all(|g| self.contains(g)) }

    /// `(I : m)`.
    pub fn colon(&self, m: &ExponentVector) -> Result<MonomialIdeal> {
        check_dim(self.n, m.len())?;
        Ok(Self::from_minimal(self.n, self.generators.iter().map(|g| g.saturating_sub(m)).collect()))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check_dim(self.n, other.n)?;
        Ok(Self::from_minimal(self.n, self.generators.iter().chain(&other.generators).cloned().collect()))
    }

    pub fn with_generator(&self, m: &ExponentVector) -> Result<MonomialIdeal> {
        check_dim(self.n, m.len())?;
        let mut gens = self.generators.clone();
        gens.push(m.clone());
        Ok(Self::from_minimal(self.n, gens))
    }

    pub fn intersection(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check_dim(self.n, other.n)?;
        let gens = self.generators.iter().cartesian_product(&other.generators).map(|(a, b)| a.join(b)).collect();
        Ok(Self::from_minimal(self.n, gens))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check_dim(self.n, other.n)?;
        let gens = self.generators.iter().cartesian_product(&other.generators).map(|(a, b)| a.add(b)).collect();
        Ok(Self::from_minimal(self.n, gens))
    }

    /// `I^t`, with `I^0 = O`.
    pub fn power(&self, t: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.n);
        for _ in 0..t {
            acc = acc.product(self).expect("same ambient dimension");
        }
        acc
    }

    /// Componentwise maximum of the generators.
    pub fn exponent_bound(&self) -> ExponentVector {
        self.generators.iter().fold(ExponentVector::zeros(self.n), |acc, g| acc.join(g))
    }

    /// Variables that occur in some generator.
    pub fn variables_used(&self) -> Vec<usize> { self.exponent_bound().support() }

    /// Sets every variable outside `keep` to 1 and renumbers the rest.
    pub fn restrict_to(&self, keep: &[usize]) -> MonomialIdeal {
        Self::from_minimal(keep.len(), self.generators.iter().map(|g| g.project(keep)).collect())
    }

    /// The prime this ideal equals, if it is generated by variables.
    pub fn as_prime(&self) -> Option<PrimeSupport> {
        let mut vars = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            if g.degree() != 1 {
                return None;
            }
            vars.push(g.support()[0]);
        }
        Some(PrimeSupport { n: self.n, variables: { vars.sort_unstable(); vars } })
    }

    /// True if, for every variable in `vars`, some pure power of it lies in I.
    pub fn has_pure_powers(&self, vars: &[usize]) -> bool {
        vars.iter().all(|&i| self.generators.iter().any(|g| g.support() == [i]))
    }

    /// Number of monomials outside I. Fails with a domain error if it is
    /// infinite.
    pub fn standard_monomial_count(&self) -> Result<u64> {
        if self.is_unit() {
            return Ok(0);
        }
        if self.n == 0 {
            return Ok(1);
        }
        if !self.has_pure_powers(&(0..self.n).collect::<Vec<_>>()) {
            return Err(Error::domain("quotient is not of finite length"));
        }
        Ok(count_standard(&self.generators, self.n))
    }

    /// Irreducible decomposition by the splitting recursion. Every component
    /// is generated by pure powers and no component is redundant.
    pub fn irreducible_decomposition(&self) -> Result<Vec<MonomialIdeal>> {
        if self.is_zero() {
            return Err(Error::domain("the zero ideal has no irreducible decomposition into proper monomial ideals"));
        }
        if self.is_unit() {
            return Err(Error::domain("the unit ideal is not proper"));
        }
        let mut out = Vec::new();
        split(self.clone(), &mut out);
        out.sort_by(|a, b| a.generators.cmp(&b.generators));
        out.dedup();
        let kept: Vec<MonomialIdeal> = out
            .iter()
            .filter(|j| !out.iter().any(|k| k != *j && j.contains_ideal(k)))
            .cloned()
            .collect();
        Ok(kept)
    }

    /// Minimal primes over I. The zero ideal has the zero prime as its only
    /// minimal prime.
    pub fn minimal_primes(&self) -> Result<Vec<PrimeSupport>> {
        if self.is_unit() {
            return Err(Error::domain("the unit ideal has no primes"));
        }
        if self.is_zero() {
            return Ok(vec![PrimeSupport { n: self.n, variables: Vec::new() }]);
        }
        let radicals: BTreeSet<PrimeSupport> = self
            .irreducible_decomposition()?
            .iter()
            .map(|c| PrimeSupport { n: self.n, variables: c.variables_used() })
            .collect();
        Ok(radicals.iter().filter(|p| !radicals.iter().any(|q| q != *p && q.is_subset(p))).cloned().collect())
    }

    /// Length of `(O/I)_P` for a minimal prime `P`.
    pub fn geometric_multiplicity(&self, p: &PrimeSupport) -> Result<u64> {
        check_dim(self.n, p.nvars())?;
        if !self.minimal_primes()?.contains(p) {
            return Err(Error::domain(format!("{} is not a minimal prime of {}", p, self)));
        }
        self.restrict_to(p.variables()).standard_monomial_count()
    }

    /// Hilbert-Samuel multiplicity of I in the variables it involves,
    /// computed from the lengths of `O/I^t` and cross-checked against the
    /// normalized volume of the region below the Newton polyhedron.
    pub fn hilbert_samuel_multiplicity(&self) -> Result<u64> {
        let (e, vol) = self.hilbert_samuel_both()?;
        if Rational::from_integer(e.into()) != vol {
            return Err(Error::InternalConsistency(format!(
                "power fit gives {} but the Newton region volume gives {}",
                e, vol
            )));
        }
        Ok(e)
    }

    /// The power-fit value and the normalized co-volume, without comparing.
    pub fn hilbert_samuel_both(&self) -> Result<(u64, Rational)> {
        let local = self.artinian_part()?;
        let e = power_fit_multiplicity(&local)?;
        let vol = newton_covolume(local.generators(), local.nvars());
        Ok((e, vol))
    }

    fn artinian_part(&self) -> Result<MonomialIdeal> {
        if self.is_zero() || self.is_unit() {
            return Err(Error::domain("multiplicity needs a nonzero proper ideal"));
        }
        let vars = self.variables_used();
        if !self.has_pure_powers(&vars) {
            return Err(Error::domain(format!("{} is not primary to the maximal ideal of its variables", self)));
        }
        Ok(self.restrict_to(&vars))
    }

    /// Deterministic prime filtration of `O/I`.
    ///
    /// Starting from `J = I`, repeatedly adjoins the smallest monomial `m ∉ J`
    /// (by total degree, then lexicographically) for which `(J : m)` is prime,
    /// until `J = O`.
    pub fn prime_filtration(&self) -> Result<Filtration> {
        if self.is_unit() {
            return Err(Error::domain("O/I is zero for the unit ideal"));
        }
        let bound = self.exponent_bound();
        let mut candidates: Vec<ExponentVector> = bound
            .as_slice()
            .iter()
            .map(|&b| 0..=b)
            .multi_cartesian_product()
            .map(ExponentVector::new)
            .collect();
        if self.n == 0 {
            candidates = vec![ExponentVector::zeros(0)];
        }
        candidates.sort();
        let mut current = self.clone();
        let mut steps = Vec::new();
        while !current.is_unit() {
            let mut found = None;
            for m in &candidates {
                if current.contains(m) {
                    continue;
                }
                if let Some(p) = current.colon(m)?.as_prime() {
                    found = Some((m.clone(), p));
                    break;
                }
            }
            let (m, prime) =
                found.ok_or_else(|| Error::InternalConsistency(format!("no prime witness for {}", current)))?;
            current = current.with_generator(&m)?;
            steps.push(FiltrationStep { witness: m, prime });
        }
        Ok(Filtration { base: self.clone(), steps })
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

fn split(i: MonomialIdeal, out: &mut Vec<MonomialIdeal>) {
    let mixed = i.generators.iter().find(|g| g.support().len() > 1).cloned();
    match mixed {
        None => out.push(i),
        Some(m) => {
            let v = m.support()[0];
            let a = m.get(v);
            let mut pure = ExponentVector::zeros(i.n).as_slice().to_vec();
            pure[v] = a;
            let mut rest = m.as_slice().to_vec();
            rest[v] = 0;
            split(i.with_generator(&ExponentVector::new(pure)).expect("same dimension"), out);
            split(i.with_generator(&ExponentVector::new(rest)).expect("same dimension"), out);
        }
    }
}

/// Counts standard monomials of an Artinian ideal by slicing along the last
/// variable. Slices only change at exponents that occur in the generators.
fn count_standard(gens: &[ExponentVector], n: usize) -> u64 {
    if gens.iter().any(|g| g.is_zero()) {
        return 0;
    }
    if n == 1 {
        return gens.iter().map(|g| g.get(0) as u64).min().expect("artinian ideal has generators");
    }
    let last = n - 1;
    let mut cuts: Vec<u32> = gens.iter().map(|g| g.get(last)).collect();
    cuts.sort_unstable();
    cuts.dedup();
    let top = *cuts.last().expect("nonempty");
    let keep: Vec<usize> = (0..last).collect();
    let mut total = 0;
    for (w, &k) in cuts.iter().enumerate() {
        if k == top {
            break;
        }
        let width = (cuts[w + 1] - k) as u64;
        let slice = minimal_set(gens.iter().filter(|g| g.get(last) <= k).map(|g| g.project(&keep)).collect());
        total += width * count_standard(&slice, last);
    }
    total
}

/// Fits `t ↦ length(O/I^t)` by a polynomial of degree `d` and returns `d!`
/// times its leading coefficient, i.e. the `d`-th finite difference once the
/// function has become polynomial.
fn power_fit_multiplicity(i: &MonomialIdeal) -> Result<u64> {
    const MAX_POWER: u32 = 48;
    let d = i.nvars();
    let mut lengths: Vec<i128> = vec![0]; // t = 0
    let mut power = MonomialIdeal::unit(d);
    let nth_diff = |vals: &[i128], start: usize, order: usize| -> i128 {
        let mut row: Vec<i128> = vals[start..=start + order].to_vec();
        for _ in 0..order {
            row = row.windows(2).map(|w| w[1] - w[0]).collect();
        }
        row[0]
    };
    for _ in 1..=MAX_POWER {
        power = power.product(i)?;
        lengths.push(power.standard_monomial_count()? as i128);
        // (d+1)-th differences must vanish on two consecutive windows starting at s ≥ 1
        let have = lengths.len();
        if have >= d + 4 {
            let s = have - (d + 3);
            if s >= 1 && nth_diff(&lengths, s, d + 1) == 0 && nth_diff(&lengths, s + 1, d + 1) == 0 {
                let e = nth_diff(&lengths, s, d);
                return e.to_u64().ok_or_else(|| Error::InternalConsistency(format!("negative multiplicity {}", e)));
            }
        }
    }
    Err(Error::Resource(format!("lengths of O/I^t did not become polynomial by t = {}", MAX_POWER)))
}

/// `d!` times the volume of `ℝ^d_+ ∖ Γ`, where Γ is the Newton polyhedron of
/// the generators. The region is the union of the cones from the origin over
/// the compact facets of Γ; each facet is triangulated and every simplex
/// contributes `|det|`.
pub fn newton_covolume(gens: &[ExponentVector], d: usize) -> Rational {
    if d == 0 {
        return Rational::zero();
    }
    let pts: Vec<Vec<Rational>> =
        gens.iter().map(|g| g.as_slice().iter().map(|&x| rat(x as i64)).collect()).collect();
    let mut total = Rational::zero();
    for facet in compact_facets(&pts, d) {
        let facet_pts: Vec<Vec<Rational>> = facet.iter().map(|&i| pts[i].clone()).collect();
        let local = affine_coordinates(&facet_pts);
        for simplex in pulling_triangulation(&(0..facet.len()).collect::<Vec<_>>(), &local) {
            let rows: Vec<Vec<Rational>> = simplex.iter().map(|&k| facet_pts[k].clone()).collect();
            total += linalg::determinant(&QMatrix::from_rows(rows)).abs();
        }
    }
    total
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational { a.iter().zip(b).map(|(x, y)| x * y).sum() }

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> { a.iter().zip(b).map(|(x, y)| x - y).collect() }

/// Normal of the hyperplane through `k` points in `ℝ^k`, by cofactors.
fn hyperplane_normal(points: &[&Vec<Rational>]) -> Vec<Rational> {
    let k = points[0].len();
    let diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| sub(p, points[0])).collect();
    (0..k)
        .map(|j| {
            let rows: Vec<Vec<Rational>> =
                diffs.iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
            let minor = if rows.is_empty() { Rational::from_integer(1.into()) } else { linalg::determinant(&QMatrix::from_rows(rows)) };
            if j % 2 == 0 {
                minor
            } else {
                -minor
            }
        })
        .collect()
}

/// Facets of Γ = conv(points) + ℝ^d_+ whose normal is strictly positive.
fn compact_facets(pts: &[Vec<Rational>], d: usize) -> Vec<Vec<usize>> {
    let mut facets = BTreeSet::new();
    for combo in (0..pts.len()).combinations(d) {
        let chosen: Vec<&Vec<Rational>> = combo.iter().map(|&i| &pts[i]).collect();
        let mut w = hyperplane_normal(&chosen);
        if w.iter().all(|x| x.is_zero()) {
            continue;
        }
        if w.iter().all(|x| x.is_negative()) {
            w = w.iter().map(|x| -x).collect();
        }
        if !w.iter().all(|x| x.is_positive()) {
            continue;
        }
        let c = dot(&w, chosen[0]);
        if pts.iter().all(|p| dot(&w, p) >= c) {
            let on: Vec<usize> = (0..pts.len()).filter(|&i| dot(&w, &pts[i]) == c).collect();
            facets.insert(on);
        }
    }
    facets.into_iter().collect()
}

/// Re-expresses points in coordinates of their affine hull, so the result is
/// full-dimensional.
fn affine_coordinates(pts: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let base = &pts[0];
    let mut dirs: Vec<Vec<Rational>> = Vec::new();
    for p in &pts[1..] {
        let v = sub(p, base);
        let mut trial = dirs.clone();
        trial.push(v.clone());
        if linalg::rank(&QMatrix::from_rows(trial)) > dirs.len() {
            dirs.push(v);
        }
    }
    let k = dirs.len();
    if k == 0 {
        return vec![Vec::new(); pts.len()];
    }
    // columns of D are the directions
    let m = base.len();
    let d = QMatrix::from_rows((0..m).map(|r| dirs.iter().map(|v| v[r].clone()).collect()).collect());
    pts.iter()
        .map(|p| {
            let rhs = QMatrix::from_rows(sub(p, base).into_iter().map(|x| vec![x]).collect());
            let x = linalg::solve(&d, &rhs).expect("point lies in the affine hull");
            (0..k).map(|i| x.get(i, 0).clone()).collect()
        })
        .collect()
}

/// All facets of a full-dimensional point configuration in `ℝ^k`.
fn polytope_facets(pts: &[Vec<Rational>]) -> Vec<Vec<usize>> {
    let k = pts[0].len();
    let mut facets = BTreeSet::new();
    for combo in (0..pts.len()).combinations(k) {
        let chosen: Vec<&Vec<Rational>> = combo.iter().map(|&i| &pts[i]).collect();
        let w = hyperplane_normal(&chosen);
        if w.iter().all(|x| x.is_zero()) {
            continue;
        }
        let c = dot(&w, chosen[0]);
        let vals: Vec<Rational> = pts.iter().map(|p| dot(&w, p)).collect();
        if vals.iter().all(|v| *v >= c) || vals.iter().all(|v| *v <= c) {
            facets.insert((0..pts.len()).filter(|&i| vals[i] == c).collect::<Vec<_>>());
        }
    }
    facets.into_iter().collect()
}

/// Pulling triangulation from the first point; simplices are returned as
/// lists of entries of `ids`.
fn pulling_triangulation(ids: &[usize], pts: &[Vec<Rational>]) -> Vec<Vec<usize>> {
    let k = pts[0].len();
    if pts.len() == k + 1 {
        return vec![ids.to_vec()];
    }
    let mut out = Vec::new();
    for facet in polytope_facets(pts) {
        if facet.contains(&0) {
            continue;
        }
        let sub_pts: Vec<Vec<Rational>> = facet.iter().map(|&i| pts[i].clone()).collect();
        let sub_ids: Vec<usize> = facet.iter().map(|&i| ids[i]).collect();
        for mut s in pulling_triangulation(&sub_ids, &affine_coordinates(&sub_pts)) {
            s.push(ids[0]);
            out.push(s);
        }
    }
    out
}

/// One step `J_i = J_{i−1} + (m_i)` of a prime filtration, with
/// `(J_{i−1} : m_i) = P_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationStep {
    pub witness: ExponentVector,
    pub prime: PrimeSupport,
}

/// A chain `I = J_0 ⊂ J_1 ⊂ … ⊂ J_m = O`; the submodules `J_i/I` of `O/I`
/// have successive quotients `O/P_i` (shifted by the witness degree).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub base: MonomialIdeal,
    pub steps: Vec<FiltrationStep>,
}

impl Filtration {
    /// The ideals `J_0 = I, J_1, …, J_m`.
    pub fn ideals(&self) -> Result<Vec<MonomialIdeal>> {
        let mut out = vec![self.base.clone()];
        for s in &self.steps {
            let next = out.last().expect("nonempty").with_generator(&s.witness)?;
            out.push(next);
        }
        Ok(out)
    }

    /// Replays the chain and reports the first step that fails.
    pub fn replay(&self) -> Result<()> {
        let mut current = self.base.clone();
        for (k, s) in self.steps.iter().enumerate() {
            if current.contains(&s.witness) {
                return Err(Error::contract(format!("step {}: witness {} already lies in {}", k + 1, s.witness, current)));
            }
            let colon = current.colon(&s.witness)?;
            if colon != s.prime.to_ideal() {
                return Err(Error::contract(format!(
                    "step {}: ({} : {}) = {} is not {}",
                    k + 1,
                    current,
                    s.witness,
                    colon,
                    s.prime
                )));
            }
            current = current.with_generator(&s.witness)?;
        }
        if !current.is_unit() {
            return Err(Error::contract(format!("chain ends at {} instead of the unit ideal", current)));
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool { self.replay().is_ok() }

    /// Number of steps with each prime.
    pub fn prime_counts(&self) -> std::collections::BTreeMap<PrimeSupport, usize> {
        let mut counts = std::collections::BTreeMap::new();
        for s in &self.steps {
            *counts.entry(s.prime.clone()).or_insert(0) += 1;
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::minimalize(n, gens.iter().map(|g| ExponentVector::new(g.to_vec())).collect()).unwrap()
    }

    fn ev(v: &[u32]) -> ExponentVector { ExponentVector::new(v.to_vec()) }

    fn prime(n: usize, vars: &[usize]) -> PrimeSupport { PrimeSupport::new(n, vars.to_vec()).unwrap() }

    // x, y, z, w = coordinates 0..4
    fn four_cycle() -> MonomialIdeal { ideal(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]) }

    fn fat_point() -> MonomialIdeal { ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]) }

    #[test]
    fn minimalize_prunes_multiples() {
        let i = ideal(2, &[&[2, 0], &[2, 1], &[0, 3]]);
        assert_eq!(i.generators(), &[ev(&[2, 0]), ev(&[0, 3])]);
        assert!(ideal(2, &[]).is_zero());
    }

    #[test]
    fn membership() {
        let i = ideal(2, &[&[2, 0]]);
        assert!(!i.contains(&ev(&[1, 1])));
        assert!(i.contains(&ev(&[3, 0])));
    }

    #[test]
    fn colon_examples() {
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        assert_eq!(i.colon(&ev(&[1, 0])).unwrap(), ideal(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(i.colon(&ev(&[0, 0])).unwrap(), i);
        assert_eq!(four_cycle().colon(&ev(&[1, 0, 0, 0])).unwrap(), prime(4, &[2, 3]).to_ideal());
    }

    #[test]
    fn decomposition_of_the_four_cycle() {
        let comps = four_cycle().irreducible_decomposition().unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.contains(&prime(4, &[0, 1]).to_ideal()));
        assert!(comps.contains(&prime(4, &[2, 3]).to_ideal()));
    }

    #[test]
    fn decomposition_of_the_fat_point() {
        let comps = fat_point().irreducible_decomposition().unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.contains(&ideal(2, &[&[2, 0], &[0, 1]])));
        assert!(comps.contains(&ideal(2, &[&[1, 0], &[0, 2]])));
    }

    #[test]
    fn decomposition_rejects_improper_ideals() {
        assert!(matches!(MonomialIdeal::unit(2).irreducible_decomposition(), Err(Error::Domain(_))));
        assert!(matches!(MonomialIdeal::zero(2).irreducible_decomposition(), Err(Error::Domain(_))));
        let p = prime(3, &[0, 2]).to_ideal();
        assert_eq!(p.irreducible_decomposition().unwrap(), vec![p.clone()]);
    }

    #[test]
    fn minimal_primes_examples() {
        assert_eq!(four_cycle().minimal_primes().unwrap(), vec![prime(4, &[0, 1]), prime(4, &[2, 3])]);
        assert_eq!(fat_point().minimal_primes().unwrap(), vec![PrimeSupport::origin(2)]);
        assert_eq!(ideal(1, &[&[1]]).minimal_primes().unwrap(), vec![prime(1, &[0])]);
    }

    #[test]
    fn geometric_multiplicities() {
        assert_eq!(fat_point().geometric_multiplicity(&PrimeSupport::origin(2)).unwrap(), 3);
        assert_eq!(ideal(1, &[&[5]]).geometric_multiplicity(&prime(1, &[0])).unwrap(), 5);
        assert_eq!(four_cycle().geometric_multiplicity(&prime(4, &[0, 1])).unwrap(), 1);
        assert!(matches!(four_cycle().geometric_multiplicity(&prime(4, &[0, 1, 2])), Err(Error::Domain(_))));
    }

    #[test]
    fn hilbert_samuel_examples() {
        assert_eq!(fat_point().hilbert_samuel_multiplicity().unwrap(), 4);
        assert_eq!(ideal(2, &[&[3, 0], &[0, 5]]).hilbert_samuel_multiplicity().unwrap(), 15);
        assert_eq!(ideal(1, &[&[4]]).hilbert_samuel_multiplicity().unwrap(), 4);
        assert!(matches!(ideal(2, &[&[1, 1]]).hilbert_samuel_multiplicity(), Err(Error::Domain(_))));
    }

    #[test]
    fn newton_covolume_of_fat_point() {
        assert_eq!(newton_covolume(fat_point().generators(), 2), rat(4));
        let i = ideal(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert_eq!(newton_covolume(i.generators(), 3), rat(8));
        // xy lies on the face x + y + z = 2, so it changes nothing
        let j = ideal(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 1, 0]]);
        assert_eq!(newton_covolume(j.generators(), 3), rat(8));
    }

    #[test]
    fn standard_monomials_by_slicing() {
        assert_eq!(fat_point().standard_monomial_count().unwrap(), 3);
        let i = ideal(3, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 2], &[1, 1, 1]]);
        // 12 monomials in the box, minus those divisible by xyz (x=1,y∈{1,2},z=1)
        assert_eq!(i.standard_monomial_count().unwrap(), 10);
    }

    #[test]
    fn filtration_of_the_four_cycle() {
        let f = four_cycle().prime_filtration().unwrap();
        f.replay().unwrap();
        let counts = f.prime_counts();
        assert_eq!(counts.get(&prime(4, &[0, 1])), Some(&1));
        assert_eq!(counts.get(&prime(4, &[2, 3])), Some(&1));
        for p in counts.keys() {
            assert!(p.codim() == 2 || p.codim() >= 3);
        }
    }

    #[test]
    fn filtration_of_a_prime_is_one_step() {
        let f = ideal(2, &[&[1, 0]]).prime_filtration().unwrap();
        assert_eq!(f.steps.len(), 1);
        assert_eq!(f.steps[0].prime, prime(2, &[0]));
    }

    #[test]
    fn replay_detects_bad_steps() {
        let mut f = four_cycle().prime_filtration().unwrap();
        f.steps[0].prime = PrimeSupport::origin(4);
        assert!(!f.is_valid());
    }
}
