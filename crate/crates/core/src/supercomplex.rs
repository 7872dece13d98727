//! Multigraded complexes of free modules and the sign calculus of
//! form-valued endomorphisms.
//!
//! A [`GradedMatrix`] between free modules with fixed generator degrees is
//! determined by its rational coefficients: the monomial of entry `(r, c)` is
//! forced to be `x^(deg src_c − deg tgt_r)`. Composition of such matrices is
//! therefore plain matrix multiplication of the coefficients.
//!
//! A [`FormEndomorphism`] is a matrix of holomorphic forms of one form degree
//! acting between two [`Slot`]s. Each slot carries a parity (level plus the
//! tilde shift); composition, trace and the connection follow the Koszul sign
//! rules of that ℤ₂-grading.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::builders::ChainMap;
use crate::error::{check_dim, Error, Result};
use crate::linalg::QMatrix;
use crate::poly::{DifferentialForm, ExponentVector, Polynomial, Rational, Term};

/// A free module with one multidegree per basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    pub n: usize,
    pub level: i32,
    pub generators: Vec<ExponentVector>,
}

impl FreeModule {
    pub fn new(n: usize, level: i32, generators: Vec<ExponentVector>) -> Result<Self> {
        for g in &generators {
            check_dim(n, g.len())?;
        }
        Ok(FreeModule { n, level, generators })
    }

    pub fn zero(n: usize, level: i32) -> Self { FreeModule { n, level, generators: Vec::new() } }

    pub fn rank(&self) -> usize { self.generators.len() }

    pub fn at_level(&self, level: i32) -> FreeModule { FreeModule { level, ..self.clone() } }

    /// Same generator degrees, ignoring the level label.
    pub fn same_basis(&self, other: &FreeModule) -> bool { self.n == other.n && self.generators == other.generators }

    /// `self ⊕ other`, with the basis of `self` first.
    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        FreeModule { n: self.n, level: self.level, generators }
    }

    pub fn shift_degrees(&self, m: &ExponentVector) -> FreeModule {
        FreeModule { n: self.n, level: self.level, generators: self.generators.iter().map(|g| g.add(m)).collect() }
    }

    /// Indices of the basis elements whose degree divides `b`.
    pub fn strand_basis(&self, b: &ExponentVector) -> Vec<usize> {
        (0..self.generators.len()).filter(|&i| self.generators[i].divides(b)).collect()
    }
}

/// A multigraded homomorphism of degree zero between free modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    pub source: FreeModule,
    pub target: FreeModule,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl GradedMatrix {
    /// Builds the matrix from `(row, col) → coefficient`, checking that every
    /// nonzero entry has a monomial of non-negative degree.
    pub fn new(source: FreeModule, target: FreeModule, entries: BTreeMap<(usize, usize), Rational>) -> Result<Self> {
        check_dim(source.n, target.n)?;
        let mut clean = BTreeMap::new();
        for ((r, c), v) in entries {
            if v.is_zero() {
                continue;
            }
            if r >= target.rank() || c >= source.rank() {
                return Err(Error::domain(format!(
                    "entry ({}, {}) outside a {}×{} matrix",
                    r,
                    c,
                    target.rank(),
                    source.rank()
                )));
            }
            if !target.generators[r].divides(&source.generators[c]) {
                return Err(Error::domain(format!(
                    "entry ({}, {}) would need a negative exponent: {} does not divide {}",
                    r, c, target.generators[r], source.generators[c]
                )));
            }
            clean.insert((r, c), v);
        }
        Ok(GradedMatrix { source, target, entries: clean })
    }

    /// Builds the matrix from explicit terms, checking each exponent equals
    /// the degree difference.
    pub fn from_terms(source: FreeModule, target: FreeModule, terms: Vec<(usize, usize, Term)>) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (r, c, t) in terms {
            if t.is_zero() {
                continue;
            }
            if r >= target.rank() || c >= source.rank() {
                return Err(Error::domain(format!("entry ({}, {}) out of range", r, c)));
            }
            let expected = source.generators[c].checked_sub(&target.generators[r]);
            if expected.as_ref() != Some(&t.exponents) {
                return Err(Error::domain(format!(
                    "entry ({}, {}) has monomial {} but the degrees force {}",
                    r,
                    c,
                    t.exponents,
                    expected.map_or("a negative exponent".to_string(), |e| e.to_string())
                )));
            }
            *entries.entry((r, c)).or_insert_with(Rational::zero) += t.coeff;
        }
        Self::new(source, target, entries)
    }

    pub fn zero(source: FreeModule, target: FreeModule) -> Self {
        GradedMatrix { source, target, entries: BTreeMap::new() }
    }

    pub fn identity(module: FreeModule) -> Self {
        let entries = (0..module.rank()).map(|i| ((i, i), Rational::one())).collect();
        GradedMatrix { source: module.clone(), target: module, entries }
    }

    pub fn rows(&self) -> usize { self.target.rank() }

    pub fn cols(&self) -> usize { self.source.rank() }

    pub fn nvars(&self) -> usize { self.source.n }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> { self.entries.iter() }

    pub fn coefficient(&self, r: usize, c: usize) -> Rational {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool { self.entries.is_empty() }

    /// The monomial forced at position `(r, c)`.
    pub fn exponent(&self, r: usize, c: usize) -> Option<ExponentVector> {
        self.source.generators[c].checked_sub(&self.target.generators[r])
    }

    pub fn term(&self, r: usize, c: usize) -> Term {
        let coeff = self.coefficient(r, c);
        match self.exponent(r, c) {
            Some(e) if !coeff.is_zero() => Term::new(coeff, e),
            _ => Term::new(Rational::zero(), ExponentVector::zeros(self.nvars())),
        }
    }

    pub fn polynomial(&self, r: usize, c: usize) -> Polynomial { self.term(r, c).to_polynomial() }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if !self.source.same_basis(&other.target) {
            return Err(Error::Composition(format!(
                "source of rank {} does not match target of rank {}",
                self.source.rank(),
                other.target.rank()
            )));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
        for ((k, c), v) in &other.entries {
            by_row.entry(*k).or_default().push((*c, v));
        }
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for ((r, k), a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (c, b) in row {
                    *acc.entry((*r, *c)).or_insert_with(Rational::zero) += a * *b;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(GradedMatrix { source: other.source.clone(), target: self.target.clone(), entries: acc })
    }

    pub fn try_add(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if !self.source.same_basis(&other.source) || !self.target.same_basis(&other.target) {
            return Err(Error::Composition("cannot add matrices between different modules".into()));
        }
        let mut acc = self.entries.clone();
        for (k, v) in &other.entries {
            *acc.entry(*k).or_insert_with(Rational::zero) += v;
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(GradedMatrix { source: self.source.clone(), target: self.target.clone(), entries: acc })
    }

    pub fn scale(&self, c: &Rational) -> GradedMatrix {
        let mut out = self.clone();
        if c.is_zero() {
            out.entries.clear();
        } else {
            for v in out.entries.values_mut() {
                *v *= c;
            }
        }
        out
    }

    /// Same coefficients, relabelled source and target.
    pub fn with_modules(&self, source: FreeModule, target: FreeModule) -> Result<GradedMatrix> {
        Self::new(source, target, self.entries.clone())
    }

    /// The strand of this map in multidegree `b`, in the bases given by
    /// [`FreeModule::strand_basis`].
    pub fn strand_matrix(&self, b: &ExponentVector) -> QMatrix {
        let rows = self.target.strand_basis(b);
        let cols = self.source.strand_basis(b);
        self.submatrix(&rows, &cols)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> QMatrix {
        let mut m = QMatrix::zeros(rows.len(), cols.len());
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        for (i, &r) in rows.iter().enumerate() {
            for ((_, c), v) in self.entries.range((r, 0)..(r + 1, 0)) {
                if let Some(&j) = col_pos.get(c) {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    /// All coefficients as a dense matrix.
    pub fn dense(&self) -> QMatrix {
        let rows: Vec<usize> = (0..self.rows()).collect();
        let cols: Vec<usize> = (0..self.cols()).collect();
        self.submatrix(&rows, &cols)
    }

    /// Block matrix assembled from a grid of blocks; `None` means zero.
    pub fn block(
        sources: &[FreeModule],
        targets: &[FreeModule],
        blocks: &[Vec<Option<&GradedMatrix>>],
    ) -> Result<GradedMatrix> {
        let source = sources.iter().skip(1).fold(sources[0].clone(), |acc, m| acc.direct_sum(m));
        let target = targets.iter().skip(1).fold(targets[0].clone(), |acc, m| acc.direct_sum(m));
        let mut entries = BTreeMap::new();
        let mut row_off = 0;
        for (bi, t) in targets.iter().enumerate() {
            let mut col_off = 0;
            for (bj, s) in sources.iter().enumerate() {
                if let Some(m) = blocks[bi][bj] {
                    if !m.source.same_basis(s) || !m.target.same_basis(t) {
                        return Err(Error::Composition(format!("block ({}, {}) has the wrong shape", bi, bj)));
                    }
                    for ((r, c), v) in &m.entries {
                        entries.insert((r + row_off, c + col_off), v.clone());
                    }
                }
                col_off += s.rank();
            }
            row_off += t.rank();
        }
        GradedMatrix::new(source, target, entries)
    }

    /// Rows `rows` and columns `cols` as a new matrix between the
    /// corresponding submodules.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> GradedMatrix {
        let source = FreeModule {
            generators: cols.iter().map(|&c| self.source.generators[c].clone()).collect(),
            ..self.source.clone()
        };
        let target = FreeModule {
            generators: rows.iter().map(|&r| self.target.generators[r].clone()).collect(),
            ..self.target.clone()
        };
        let row_pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let entries = self
            .entries
            .iter()
            .filter_map(|((r, c), v)| Some(((*row_pos.get(r)?, *col_pos.get(c)?), v.clone())))
            .collect();
        GradedMatrix { source, target, entries }
    }
}

/// A bounded complex `0 → E_N → … → E_0 → 0` of multigraded free modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    n: usize,
    modules: Vec<FreeModule>,
    differentials: Vec<GradedMatrix>,
    parity_shift: bool,
}

impl Complex {
    /// Validates shapes, grading and `φ_k φ_{k+1} = 0`. `differentials[k−1]`
    /// is `φ_k : E_k → E_{k−1}`.
    pub fn new(n: usize, modules: Vec<FreeModule>, differentials: Vec<GradedMatrix>) -> Result<Self> {
        if modules.is_empty() {
            return Err(Error::domain("a complex needs at least the module at level 0"));
        }
        if differentials.len() + 1 != modules.len() {
            return Err(Error::domain(format!(
                "{} modules need {} differentials, found {}",
                modules.len(),
                modules.len() - 1,
                differentials.len()
            )));
        }
        let modules: Vec<FreeModule> = modules.into_iter().enumerate().map(|(l, m)| m.at_level(l as i32)).collect();
        for m in &modules {
            check_dim(n, m.n)?;
        }
        let mut diffs = Vec::with_capacity(differentials.len());
        for (i, d) in differentials.into_iter().enumerate() {
            let k = i + 1;
            if !d.source.same_basis(&modules[k]) || !d.target.same_basis(&modules[k - 1]) {
                return Err(Error::domain(format!("differential φ_{} does not map E_{} to E_{}", k, k, k - 1)));
            }
            diffs.push(d.with_modules(modules[k].clone(), modules[k - 1].clone())?);
        }
        let c = Complex { n, modules, differentials: diffs, parity_shift: false };
        for k in 1..c.differentials.len() {
            if !c.differentials[k - 1].compose(&c.differentials[k])?.is_zero() {
                return Err(Error::contract(format!("φ_{} φ_{} ≠ 0", k, k + 1)));
            }
        }
        Ok(c)
    }

    /// Builds a complex from generator degrees and coefficient maps.
    pub fn from_parts(
        n: usize,
        generators: Vec<Vec<ExponentVector>>,
        differentials: Vec<BTreeMap<(usize, usize), Rational>>,
    ) -> Result<Self> {
        let modules: Vec<FreeModule> = generators
            .into_iter()
            .enumerate()
            .map(|(l, g)| FreeModule::new(n, l as i32, g))
            .collect::<Result<_>>()?;
        let diffs = differentials
            .into_iter()
            .enumerate()
            .map(|(i, e)| {
                let src = modules.get(i + 1).cloned().ok_or_else(|| Error::domain("too many differentials"))?;
                GradedMatrix::new(src, modules[i].clone(), e)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, modules, diffs)
    }

    pub fn nvars(&self) -> usize { self.n }

    /// Top level `N`.
    pub fn length(&self) -> usize { self.modules.len() - 1 }

    pub fn parity_shift(&self) -> bool { self.parity_shift }

    pub fn modules(&self) -> &[FreeModule] { &self.modules }

    /// `E_ℓ`, the zero module outside `0..=N`.
    pub fn module(&self, level: i32) -> FreeModule {
        if level < 0 || level as usize >= self.modules.len() {
            FreeModule::zero(self.n, level)
        } else {
            self.modules[level as usize].clone()
        }
    }

    pub fn rank(&self, level: i32) -> usize {
        if level < 0 || level as usize >= self.modules.len() {
            0
        } else {
            self.modules[level as usize].rank()
        }
    }

    /// `φ_k : E_k → E_{k−1}`, zero outside `1..=N`.
    pub fn differential(&self, k: i32) -> GradedMatrix {
        if k >= 1 && (k as usize) <= self.differentials.len() {
            self.differentials[k as usize - 1].clone()
        } else {
            GradedMatrix::zero(self.module(k), self.module(k - 1))
        }
    }

    pub fn differentials(&self) -> &[GradedMatrix] { &self.differentials }

    /// The complex `Ẽ`: same modules and matrices, parity of every level
    /// flipped.
    pub fn tilde(&self) -> Complex { Complex { parity_shift: !self.parity_shift, ..self.clone() } }

    /// Every generator degree shifted by `m`; the matrices are unchanged.
    pub fn shift_degrees(&self, m: &ExponentVector) -> Result<Complex> {
        check_dim(self.n, m.len())?;
        let modules: Vec<FreeModule> = self.modules.iter().map(|x| x.shift_degrees(m)).collect();
        let diffs = self
            .differentials
            .iter()
            .enumerate()
            .map(|(i, d)| d.with_modules(modules[i + 1].clone(), modules[i].clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Complex { n: self.n, modules, differentials: diffs, parity_shift: self.parity_shift })
    }

    /// Moves every module up by `s` levels, padding with zero modules below.
    pub fn shift_levels(&self, s: usize) -> Result<Complex> {
        let mut modules: Vec<FreeModule> = (0..s).map(|l| FreeModule::zero(self.n, l as i32)).collect();
        modules.extend(self.modules.iter().cloned());
        let diffs: Vec<GradedMatrix> = (1..modules.len())
            .map(|k| {
                if k > s {
                    self.differentials[k - s - 1].clone()
                } else {
                    GradedMatrix::zero(modules[k].clone(), modules[k - 1].clone())
                }
            })
            .collect();
        Complex::new(self.n, modules, diffs)
    }

    /// Level-wise direct sum, with the basis of `self` first.
    pub fn direct_sum(&self, other: &Complex) -> Result<Complex> {
        check_dim(self.n, other.n)?;
        let top = self.length().max(other.length()) as i32;
        let modules: Vec<FreeModule> = (0..=top).map(|l| self.module(l).direct_sum(&other.module(l))).collect();
        let diffs = (1..=top)
            .map(|k| {
                GradedMatrix::block(
                    &[self.module(k), other.module(k)],
                    &[self.module(k - 1), other.module(k - 1)],
                    &[vec![Some(&self.differential(k)), None], vec![None, Some(&other.differential(k))]],
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Complex::new(self.n, modules, diffs)
    }

    /// Componentwise maximum of every generator degree.
    pub fn degree_bound(&self) -> ExponentVector {
        self.modules
            .iter()
            .flat_map(|m| m.generators.iter())
            .fold(ExponentVector::zeros(self.n), |acc, g| acc.join(g))
    }

    /// The slot of level `ℓ` of this complex, tagged by `tag`.
    pub fn slot(&self, tag: u32, level: i32) -> Slot { Slot { tag, level, shifted: self.parity_shift } }

    /// `φ_k` as a form endomorphism of form degree 0.
    pub fn differential_endo(&self, tag: u32, k: i32) -> FormEndomorphism {
        FormEndomorphism::from_graded(&self.differential(k), self.slot(tag, k), self.slot(tag, k - 1))
    }
}

/// A graded piece of a complex: which complex (`tag`), which level, and
/// whether the tilde shift is applied. Its parity is `level + shifted`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub tag: u32,
    pub level: i32,
    pub shifted: bool,
}

impl Slot {
    pub fn new(tag: u32, level: i32) -> Self { Slot { tag, level, shifted: false } }

    pub fn parity(&self) -> i32 { (self.level + self.shifted as i32).rem_euclid(2) }

    pub fn tilde(&self) -> Slot { Slot { shifted: !self.shifted, ..*self } }
}

fn sign(exponent: i64) -> Rational {
    if exponent.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// A matrix of forms of a single form degree from `source` to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormEndomorphism {
    n: usize,
    pub source: Slot,
    pub target: Slot,
    rows: usize,
    cols: usize,
    form_degree: usize,
    entries: BTreeMap<(usize, usize), DifferentialForm>,
}

impl FormEndomorphism {
    pub fn zero(n: usize, source: Slot, target: Slot, rows: usize, cols: usize, form_degree: usize) -> Self {
        FormEndomorphism { n, source, target, rows, cols, form_degree, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize, slot: Slot, rank: usize) -> Self {
        let entries = (0..rank).map(|i| ((i, i), DifferentialForm::function(Polynomial::one(n)))).collect();
        FormEndomorphism { n, source: slot, target: slot, rows: rank, cols: rank, form_degree: 0, entries }
    }

    /// Builds from entries, which must all be pure of degree `form_degree`.
    pub fn new(
        n: usize,
        source: Slot,
        target: Slot,
        (rows, cols): (usize, usize),
        form_degree: usize,
        entries: BTreeMap<(usize, usize), DifferentialForm>,
    ) -> Result<Self> {
        let mut clean = BTreeMap::new();
        for ((r, c), f) in entries {
            check_dim(n, f.nvars())?;
            if r >= rows || c >= cols {
                return Err(Error::domain(format!("entry ({}, {}) outside a {}×{} block", r, c, rows, cols)));
            }
            if f.is_zero() {
                continue;
            }
            if f.pure_degree() != Some(form_degree) {
                return Err(Error::domain(format!("entry ({}, {}) is not a pure {}-form", r, c, form_degree)));
            }
            clean.insert((r, c), f);
        }
        Ok(FormEndomorphism { n, source, target, rows, cols, form_degree, entries: clean })
    }

    /// A graded matrix viewed as a form endomorphism of form degree 0.
    pub fn from_graded(m: &GradedMatrix, source: Slot, target: Slot) -> Self {
        let entries = m
            .entries()
            .map(|((r, c), _)| ((*r, *c), DifferentialForm::function(m.polynomial(*r, *c))))
            .collect();
        FormEndomorphism {
            n: m.nvars(),
            source,
            target,
            rows: m.rows(),
            cols: m.cols(),
            form_degree: 0,
            entries,
        }
    }

    /// `ε : E → Ẽ`, the identity on the underlying module; odd of form
    /// degree 0.
    pub fn epsilon(n: usize, slot: Slot, rank: usize) -> Self {
        let mut e = Self::identity(n, slot, rank);
        e.target = slot.tilde();
        e
    }

    /// `ε⁻¹ : Ẽ → E`.
    pub fn epsilon_inverse(n: usize, slot: Slot, rank: usize) -> Self {
        let mut e = Self::identity(n, slot.tilde(), rank);
        e.target = slot;
        e
    }

    pub fn nvars(&self) -> usize { self.n }

    pub fn shape(&self) -> (usize, usize) { (self.rows, self.cols) }

    pub fn form_degree(&self) -> usize { self.form_degree }

    /// Endomorphism degree modulo 2.
    pub fn deg_e(&self) -> i64 { (self.target.parity() - self.source.parity()).rem_euclid(2) as i64 }

    pub fn deg_f(&self) -> i64 { self.form_degree as i64 }

    pub fn total_degree(&self) -> i64 { self.deg_e() + self.deg_f() }

    pub fn entry(&self, r: usize, c: usize) -> DifferentialForm {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(|| DifferentialForm::zero(self.n))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &DifferentialForm)> { self.entries.iter() }

    pub fn is_zero(&self) -> bool { self.entries.is_empty() }

    /// `self ∘ other`, with the sign `(−1)^{deg_e(self)·deg_f(other)}`.
    pub fn compose(&self, other: &FormEndomorphism) -> Result<FormEndomorphism> {
        check_dim(self.n, other.n)?;
        if other.target != self.source || other.rows != self.cols {
            return Err(Error::Composition(format!(
                "cannot compose {:?} ({}×{}) after {:?} ({}×{})",
                self.source, self.rows, self.cols, other.target, other.rows, other.cols
            )));
        }
        let s = sign(self.deg_e() * other.deg_f());
        let mut by_row: BTreeMap<usize, Vec<(usize, &DifferentialForm)>> = BTreeMap::new();
        for ((k, c), f) in &other.entries {
            by_row.entry(*k).or_default().push((*c, f));
        }
        let mut acc: BTreeMap<(usize, usize), DifferentialForm> = BTreeMap::new();
        for ((r, k), a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (c, b) in row {
                    let w = a.wedge(b)?;
                    let slot = acc.entry((*r, *c)).or_insert_with(|| DifferentialForm::zero(self.n));
                    *slot = slot.try_add(&w)?;
                }
            }
        }
        let entries = acc.into_iter().filter(|(_, f)| !f.is_zero()).map(|(k, f)| (k, f.scale(&s))).collect();
        Ok(FormEndomorphism {
            n: self.n,
            source: other.source,
            target: self.target,
            rows: self.rows,
            cols: other.cols,
            form_degree: self.form_degree + other.form_degree,
            entries,
        })
    }

    /// Composes a chain `a_1 ∘ a_2 ∘ … ∘ a_k` (applied right to left).
    pub fn compose_all(chain: &[FormEndomorphism]) -> Result<FormEndomorphism> {
        let (last, rest) = chain.split_last().ok_or_else(|| Error::Composition("empty product".into()))?;
        rest.iter().rev().try_fold(last.clone(), |acc, a| a.compose(&acc))
    }

    pub fn try_add(&self, other: &FormEndomorphism) -> Result<FormEndomorphism> {
        if self.source != other.source
            || self.target != other.target
            || self.shape() != other.shape()
            || (self.form_degree != other.form_degree && !self.is_zero() && !other.is_zero())
        {
            return Err(Error::Composition("cannot add endomorphisms of different bidegree".into()));
        }
        let mut acc = self.entries.clone();
        for (k, f) in &other.entries {
            let slot = acc.entry(*k).or_insert_with(|| DifferentialForm::zero(self.n));
            *slot = slot.try_add(f)?;
        }
        acc.retain(|_, f| !f.is_zero());
        let form_degree = if self.is_zero() { other.form_degree } else { self.form_degree };
        Ok(FormEndomorphism { entries: acc, form_degree, ..self.clone() })
    }

    pub fn scale(&self, c: &Rational) -> FormEndomorphism {
        let entries = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.entries.iter().map(|(k, f)| (*k, f.scale(c))).collect()
        };
        FormEndomorphism { entries, ..self.clone() }
    }

    /// Sum of the diagonal entries of a square block.
    pub fn graded_trace(&self) -> Result<DifferentialForm> {
        if self.source != self.target || self.rows != self.cols {
            return Err(Error::domain("trace of a block that is not an endomorphism of one slot"));
        }
        let mut acc = DifferentialForm::zero(self.n);
        for i in 0..self.rows {
            if let Some(f) = self.entries.get(&(i, i)) {
                acc = acc.try_add(f)?;
            }
        }
        Ok(acc)
    }

    /// `D_End` for the trivial connection: `d` applied entrywise.
    pub fn connection_d(&self) -> FormEndomorphism {
        let entries = self
            .entries
            .iter()
            .map(|(k, f)| (*k, f.exterior_d()))
            .filter(|(_, f)| !f.is_zero())
            .collect();
        FormEndomorphism { form_degree: self.form_degree + 1, entries, ..self.clone() }
    }

    /// `α̃`: the same matrix between the tilde slots.
    pub fn tilde(&self) -> FormEndomorphism {
        FormEndomorphism { source: self.source.tilde(), target: self.target.tilde(), ..self.clone() }
    }

    /// Applies ε on the given side: `ε ∘ α` (left) or `α ∘ ε` (right), where ε
    /// maps to the tilde of the adjacent slot.
    pub fn apply_epsilon(&self, side: Side) -> Result<FormEndomorphism> {
        match side {
            Side::Left => FormEndomorphism::epsilon(self.n, self.target, self.rows).compose(self),
            Side::Right => self.compose(&FormEndomorphism::epsilon(self.n, self.source.tilde(), self.cols)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `Dφ_ℓ ⋯ Dφ_{k−1} φ_k = φ_ℓ Dφ_{ℓ+1} ⋯ Dφ_k`, checked exactly.
pub fn dal_identity_check(e: &Complex, l: i32, k: i32) -> Result<bool> {
    if l >= k {
        return Err(Error::domain(format!("need ℓ < k, got ℓ = {}, k = {}", l, k)));
    }
    let phi = |j: i32| e.differential_endo(0, j);
    let mut left: Vec<FormEndomorphism> = (l..k).map(|j| phi(j).connection_d()).collect();
    left.push(phi(k));
    let mut right = vec![phi(l)];
    right.extend((l + 1..=k).map(|j| phi(j).connection_d()));
    Ok(FormEndomorphism::compose_all(&left)? == FormEndomorphism::compose_all(&right)?)
}

/// `εα = (−1)^{deg_f α} α̃ε`.
pub fn epsilon_sign_check(alpha: &FormEndomorphism) -> Result<bool> {
    let lhs = alpha.apply_epsilon(Side::Left)?;
    let rhs = alpha.tilde().apply_epsilon(Side::Right)?.scale(&sign(alpha.deg_f()));
    Ok(lhs == rhs)
}

/// `tr(αβ) = (−1)^{deg α deg β − deg_e α deg_e β} tr(βα)`.
pub fn trace_law_check(alpha: &FormEndomorphism, beta: &FormEndomorphism) -> Result<bool> {
    let ab = alpha.compose(beta)?.graded_trace()?;
    let ba = beta.compose(alpha)?.graded_trace()?;
    let s = sign(alpha.total_degree() * beta.total_degree() - alpha.deg_e() * beta.deg_e());
    Ok(ab == ba.scale(&s))
}

/// `D(αβ) = Dα β + (−1)^{deg α} α Dβ`.
pub fn leibniz_check(alpha: &FormEndomorphism, beta: &FormEndomorphism) -> Result<bool> {
    let lhs = alpha.compose(beta)?.connection_d();
    let a = alpha.connection_d().compose(beta)?;
    let b = alpha.compose(&beta.connection_d())?.scale(&sign(alpha.total_degree()));
    Ok(lhs == a.try_add(&b)?)
}

/// For `α = ω⊗γ` and `α' = ω'⊗γ'` with scalar forms `ω, ω'` and constant
/// matrices `γ, γ'`: `αα' = (−1)^{deg_e α · deg_f α'} (ω∧ω') ⊗ γγ'`.
pub fn composition_sign_check(
    omega: &DifferentialForm,
    gamma: &FormEndomorphism,
    omega2: &DifferentialForm,
    gamma2: &FormEndomorphism,
) -> Result<bool> {
    let tensor = |w: &DifferentialForm, q: usize, g: &FormEndomorphism| -> Result<FormEndomorphism> {
        let entries = g
            .entries
            .iter()
            .map(|(k, c)| Ok((*k, c.wedge(w)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        FormEndomorphism::new(g.n, g.source, g.target, g.shape(), q, entries)
    };
    let q1 = omega.pure_degree().unwrap_or(0);
    let q2 = omega2.pure_degree().unwrap_or(0);
    let lhs = tensor(omega, q1, gamma)?.compose(&tensor(omega2, q2, gamma2)?)?;
    let rhs = tensor(&omega.wedge(omega2)?, q1 + q2, &gamma.compose(gamma2)?)?.scale(&sign(gamma.deg_e() * q2 as i64));
    Ok(lhs == rhs)
}

/// The four terms of the decomposition of `Dη_{ℓ+1} ⋯ Dη_{ℓ+p} b_{ℓ+p}` for a
/// chain map `b : (E, φ) → (G, η)`.
#[derive(Clone, Debug)]
pub struct SnikenDecomposition {
    pub delta: FormEndomorphism,
    pub alpha: FormEndomorphism,
    pub beta: FormEndomorphism,
    pub gamma: FormEndomorphism,
    pub lhs: FormEndomorphism,
    pub verified: bool,
}

const TAG_E: u32 = 0;
const TAG_G: u32 = 1;

/// `δ_ℓ = Σ_{j=ℓ}^{ℓ+p−1} Dη_{ℓ+1} ⋯ Dη_j Db_j Dφ_{j+1} ⋯ Dφ_{ℓ+p−1}` as a map
/// `E_{ℓ+p−1} → G_ℓ`.
fn sniken_delta(b: &ChainMap, l: i32, p: i32) -> Result<FormEndomorphism> {
    let e = b.source();
    let g = b.target();
    let n = e.nvars();
    let mut acc = FormEndomorphism::zero(
        n,
        e.slot(TAG_E, l + p - 1),
        g.slot(TAG_G, l),
        g.rank(l),
        e.rank(l + p - 1),
        p as usize,
    );
    for j in l..=l + p - 1 {
        let mut chain: Vec<FormEndomorphism> = (l + 1..=j).map(|i| g.differential_endo(TAG_G, i).connection_d()).collect();
        chain.push(b.block_endo(TAG_E, TAG_G, j).connection_d());
        chain.extend((j + 1..=l + p - 1).map(|i| e.differential_endo(TAG_E, i).connection_d()));
        acc = acc.try_add(&FormEndomorphism::compose_all(&chain)?)?;
    }
    Ok(acc)
}

/// Computes `δ_ℓ, α_ℓ = η_{ℓ+1}δ_{ℓ+1}, β_ℓ = δ_ℓ φ_{ℓ+p}` and
/// `γ_ℓ = b_ℓ Dφ_{ℓ+1} ⋯ Dφ_{ℓ+p}`, and checks that they sum to
/// `Dη_{ℓ+1} ⋯ Dη_{ℓ+p} b_{ℓ+p}`. Uses the trivial connection on every level.
pub fn sniken_decomposition(b: &ChainMap, l: i32, p: i32) -> Result<SnikenDecomposition> {
    if b.degree() != 0 {
        return Err(Error::contract("the decomposition needs a degree 0 chain map"));
    }
    if p < 1 {
        return Err(Error::domain("p must be positive"));
    }
    let e = b.source();
    let g = b.target();
    let delta = sniken_delta(b, l, p)?;
    let alpha = g.differential_endo(TAG_G, l + 1).compose(&sniken_delta(b, l + 1, p)?)?;
    let beta = delta.compose(&e.differential_endo(TAG_E, l + p))?;
    let mut gamma_chain = vec![b.block_endo(TAG_E, TAG_G, l)];
    gamma_chain.extend((l + 1..=l + p).map(|i| e.differential_endo(TAG_E, i).connection_d()));
    let gamma = FormEndomorphism::compose_all(&gamma_chain)?;
    let mut lhs_chain: Vec<FormEndomorphism> =
        (l + 1..=l + p).map(|i| g.differential_endo(TAG_G, i).connection_d()).collect();
    lhs_chain.push(b.block_endo(TAG_E, TAG_G, l + p));
    let lhs = FormEndomorphism::compose_all(&lhs_chain)?;
    let verified = lhs == alpha.try_add(&beta)?.try_add(&gamma)?;
    Ok(SnikenDecomposition { delta, alpha, beta, gamma, lhs, verified })
}
