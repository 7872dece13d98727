use num_traits::One;

use crate::builders::ChainMap;
use crate::error::{Error, Result};
use crate::poly::Rational;
use crate::supercomplex::{Complex, FreeModule, GradedMatrix};

/// The mapping cone of `c : (L, λ) → (K, κ)` together with its structure maps.
///
/// `C_k = K_k ⊕ L̃_{k−1}` with the `K` block first, and
/// `μ_k = [[−κ_k, c_{k−1}], [0, λ_{k−1}]]`. `θ : K → C` has blocks
/// `θ_k = [(−1)^k Id; 0]` (and `θ_0 = Id`); `ϑ : C → L` has degree −1 with
/// blocks `ϑ_k = [0, Id] : C_{k+1} → L_k`.
#[derive(Clone, Debug)]
pub struct MappingCone {
    pub cone: Complex,
    pub theta: ChainMap,
    pub vartheta: ChainMap,
}

pub fn mapping_cone(c: &ChainMap) -> Result<MappingCone> {
    if c.degree() != 0 {
        return Err(Error::contract("the mapping cone needs a degree 0 chain map"));
    }
    let l = c.source();
    let k = c.target();
    let n = k.nvars();
    let top = k.length().max(l.length() + 1) as i32;
    // C_j = K_j ⊕ L_{j−1}
    let cone_module = |j: i32| k.module(j).direct_sum(&l.module(j - 1)).at_level(j);
    let modules: Vec<FreeModule> = (0..=top).map(cone_module).collect();
    let mut diffs = Vec::with_capacity(top as usize);
    for j in 1..=top {
        let neg_kappa = k.differential(j).scale(&-Rational::one());
        let cj = c.block(j - 1);
        let lam = l.differential(j - 1);
        let m = GradedMatrix::block(
            &[k.module(j), l.module(j - 1)],
            &[k.module(j - 1), l.module(j - 2)],
            &[vec![Some(&neg_kappa), Some(&cj)], vec![None, Some(&lam)]],
        )?;
        diffs.push(m.with_modules(modules[j as usize].clone(), modules[j as usize - 1].clone())?);
    }
    let cone = Complex::new(n, modules, diffs)?;

    let theta_blocks = (0..=k.length() as i32)
        .map(|j| {
            let id = GradedMatrix::identity(k.module(j));
            let signed = if j % 2 == 0 { id } else { id.scale(&-Rational::one()) };
            GradedMatrix::block(&[k.module(j)], &[k.module(j), l.module(j - 1)], &[vec![Some(&signed)], vec![None]])
                .and_then(|m| m.with_modules(k.module(j), cone.module(j)))
        })
        .collect::<Result<Vec<_>>>()?;
    let theta = ChainMap::new(k.clone(), cone.clone(), 0, theta_blocks)?;

    let vartheta_blocks = (0..=top)
        .map(|j| {
            let id = GradedMatrix::identity(l.module(j - 1));
            GradedMatrix::block(&[k.module(j), l.module(j - 1)], &[l.module(j - 1)], &[vec![None, Some(&id)]])
                .and_then(|m| m.with_modules(cone.module(j), l.module(j - 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    let vartheta = ChainMap::new(cone.clone(), l.clone(), -1, vartheta_blocks)?;
    Ok(MappingCone { cone, theta, vartheta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::koszul;
    use crate::poly::{ExponentVector, Term};

    #[test]
    fn cone_of_identity_has_expected_ranks() {
        let k = koszul(&[Term::monomial(ExponentVector::new(vec![1, 0])), Term::monomial(ExponentVector::new(vec![0, 1]))])
            .unwrap();
        let mc = mapping_cone(&ChainMap::identity(&k)).unwrap();
        let ranks: Vec<usize> = (0..=mc.cone.length() as i32).map(|j| mc.cone.rank(j)).collect();
        assert_eq!(ranks, vec![1, 3, 3, 1]);
        assert_eq!(mc.theta.degree(), 0);
        assert_eq!(mc.vartheta.degree(), -1);
    }
}
