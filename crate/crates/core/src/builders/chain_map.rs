use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::Rational;
use crate::supercomplex::{Complex, FormEndomorphism, GradedMatrix};

/// A morphism of complexes of degree 0 or −1.
///
/// `block(ℓ)` maps `source_ℓ → target_{ℓ+degree}`, and the blocks satisfy
/// `η_{ℓ+degree} ∘ b_ℓ = b_{ℓ−1} ∘ φ_ℓ` for every `ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    degree: i32,
    blocks: Vec<GradedMatrix>,
}

impl ChainMap {
    /// Checks shapes and commutation. `blocks[ℓ]` is the block at source
    /// level `ℓ`; missing trailing blocks are zero.
    pub fn new(source: Complex, target: Complex, degree: i32, blocks: Vec<GradedMatrix>) -> Result<Self> {
        if degree != 0 && degree != -1 {
            return Err(Error::domain(format!("chain maps of degree {} are not supported", degree)));
        }
        if blocks.len() > source.length() + 1 {
            return Err(Error::domain("more blocks than source levels"));
        }
        let mut full = Vec::with_capacity(source.length() + 1);
        for l in 0..=source.length() as i32 {
            let s = source.module(l);
            let t = target.module(l + degree);
            let b = match blocks.get(l as usize) {
                Some(b) => {
                    if !b.source.same_basis(&s) || !b.target.same_basis(&t) {
                        return Err(Error::contract(format!("block {} has the wrong source or target", l)));
                    }
                    b.with_modules(s, t)?
                }
                None => GradedMatrix::zero(s, t),
            };
            full.push(b);
        }
        let map = ChainMap { source, target, degree, blocks: full };
        map.check()?;
        Ok(map)
    }

    fn check(&self) -> Result<()> {
        for l in 1..=self.source.length() as i32 + 1 {
            let lhs = self.target.differential(l + self.degree).compose(&self.block(l))?;
            let rhs = self.block(l - 1).compose(&self.source.differential(l))?;
            if lhs != rhs {
                return Err(Error::contract(format!("chain map fails to commute at level {}", l)));
            }
        }
        Ok(())
    }

    pub fn identity(c: &Complex) -> ChainMap {
        let blocks = c.modules().iter().map(|m| GradedMatrix::identity(m.clone())).collect();
        ChainMap { source: c.clone(), target: c.clone(), degree: 0, blocks }
    }

    pub fn source(&self) -> &Complex { &self.source }

    pub fn target(&self) -> &Complex { &self.target }

    pub fn degree(&self) -> i32 { self.degree }

    /// The block at source level `ℓ`, zero outside the source's range.
    pub fn block(&self, l: i32) -> GradedMatrix {
        if l >= 0 && (l as usize) < self.blocks.len() {
            self.blocks[l as usize].clone()
        } else {
            GradedMatrix::zero(self.source.module(l), self.target.module(l + self.degree))
        }
    }

    pub fn blocks(&self) -> &[GradedMatrix] { &self.blocks }

    /// The block at level `ℓ` as a form endomorphism between tagged slots.
    pub fn block_endo(&self, source_tag: u32, target_tag: u32, l: i32) -> FormEndomorphism {
        FormEndomorphism::from_graded(
            &self.block(l),
            self.source.slot(source_tag, l),
            self.target.slot(target_tag, l + self.degree),
        )
    }
}

/// Solves `φ_ℓ a_ℓ = a_{ℓ−1} ψ_ℓ` for one level. Each column is an
/// independent linear system in the strand of its generator degree.
fn lift_level(
    psi: &GradedMatrix,
    phi: &GradedMatrix,
    prev: &GradedMatrix,
    target_level: i32,
) -> Result<GradedMatrix> {
    let rhs = prev.compose(psi)?;
    let source = psi.source.clone();
    let target = phi.source.clone();
    let columns: Vec<Result<Vec<((usize, usize), Rational)>>> = (0..source.rank())
        .into_par_iter()
        .map(|c| {
            let d = &source.generators[c];
            let unknowns = target.strand_basis(d);
            let eqs = phi.target.strand_basis(d);
            let a = phi.submatrix(&eqs, &unknowns);
            let b = rhs.submatrix(&eqs, &[c]);
            if b.is_zero() {
                return Ok(Vec::new());
            }
            let x = linalg::solve(&a, &b).ok_or_else(|| {
                Error::ResolutionDefect(format!(
                    "no lift for generator {} of degree {} at level {}: the target is not exact there",
                    c, d, target_level
                ))
            })?;
            Ok(unknowns.iter().enumerate().map(|(i, &r)| ((r, c), x.get(i, 0).clone())).collect())
        })
        .collect();
    let mut entries = BTreeMap::new();
    for col in columns {
        entries.extend(col?);
    }
    GradedMatrix::new(source, target, entries)
}

/// Extends the given initial blocks `b_0, …, b_{k}` to a degree 0 chain map
/// `source → target`, solving for the remaining levels one at a time.
pub fn extend_chain_map(source: &Complex, target: &Complex, initial: Vec<GradedMatrix>) -> Result<ChainMap> {
    if initial.is_empty() {
        return Err(Error::domain("at least the block at level 0 is needed"));
    }
    let mut blocks = initial;
    for l in blocks.len()..=source.length() {
        let l = l as i32;
        let next = lift_level(&source.differential(l), &target.differential(l), &blocks[l as usize - 1], l)?;
        blocks.push(next);
    }
    ChainMap::new(source.clone(), target.clone(), 0, blocks)
}

/// Lifts `α : F_0 → E_0`, which must map `im ψ_1` into `im φ_1`, to a chain map
/// `F → E`. `E` must be exact in positive levels on the relevant strands.
pub fn lift_morphism(alpha: &GradedMatrix, f: &Complex, e: &Complex) -> Result<ChainMap> {
    if !alpha.source.same_basis(&f.module(0)) || !alpha.target.same_basis(&e.module(0)) {
        return Err(Error::contract("α must map F_0 to E_0"));
    }
    extend_chain_map(f, e, vec![alpha.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{koszul, taylor_resolution};
    use crate::ideal::MonomialIdeal;
    use crate::poly::{rat, ExponentVector, Term};

    fn ev(v: &[u32]) -> ExponentVector { ExponentVector::new(v.to_vec()) }

    #[test]
    fn identity_lifts_to_identity() {
        let k = koszul(&[Term::monomial(ev(&[1, 0])), Term::monomial(ev(&[0, 1]))]).unwrap();
        let id0 = GradedMatrix::identity(k.module(0));
        let lifted = lift_morphism(&id0, &k, &k).unwrap();
        assert_eq!(lifted, ChainMap::identity(&k));
    }

    #[test]
    fn multiplication_by_a_variable_lifts() {
        // z1 · : O/(z1^2, z2)(−e1) → O/(z1^2, z2)
        let i = MonomialIdeal::minimalize(2, vec![ev(&[2, 0]), ev(&[0, 1])]).unwrap();
        let e = taylor_resolution(&i).unwrap();
        let f = e.shift_degrees(&ev(&[1, 0])).unwrap();
        let alpha = GradedMatrix::new(f.module(0), e.module(0), [((0, 0), rat(1))].into()).unwrap();
        let a = lift_morphism(&alpha, &f, &e).unwrap();
        assert_eq!(a.degree(), 0);
        assert!(!a.block(1).is_zero());
    }

    #[test]
    fn non_commuting_blocks_are_rejected() {
        let k = koszul(&[Term::monomial(ev(&[1]))]).unwrap();
        let id0 = GradedMatrix::identity(k.module(0));
        let zero1 = GradedMatrix::zero(k.module(1), k.module(1));
        assert!(matches!(ChainMap::new(k.clone(), k.clone(), 0, vec![id0, zero1]), Err(Error::Contract(_))));
    }

    #[test]
    fn ill_defined_map_on_cokernels_does_not_lift() {
        let coarse = crate::builders::taylor_from_monomials(1, &[ev(&[1])]).unwrap();
        let fine = crate::builders::taylor_from_monomials(1, &[ev(&[2])]).unwrap();
        let alpha = GradedMatrix::identity(coarse.module(0)).with_modules(coarse.module(0), fine.module(0)).unwrap();
        // 1 ↦ 1 from O/(z) to O/(z^2) would send z to z, which is not in (z^2)
        assert!(matches!(lift_morphism(&alpha, &coarse, &fine), Err(Error::ResolutionDefect(_))));
    }
}
