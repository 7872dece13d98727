//! JSON documents for polynomials, forms, ideals, complexes, chain maps,
//! filtrations and cycles.
//!
//! Variable and form indices are 0-based. Coefficients are strings such as
//! `"3"` or `"-3/2"`.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::builders::{ChainMap, MappingCone};
use crate::error::{Error, Result};
use crate::homology::Cycle;
use crate::ideal::{Filtration, FiltrationStep, MonomialIdeal, PrimeSupport};
use crate::poly::{DifferentialForm, ExponentVector, Polynomial, Rational, Term};
use crate::supercomplex::{Complex, FreeModule, GradedMatrix};

pub type PolynomialJson = Vec<(String, Vec<u32>)>;
pub type FormJson = Vec<(Vec<usize>, PolynomialJson)>;
/// `[row, col, coefficient, monomial]`.
pub type EntryJson = (usize, usize, String, Vec<u32>);

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::Json(format!("bad coefficient {:?}", s)))
}

pub fn polynomial_to_json(p: &Polynomial) -> PolynomialJson {
    p.terms().map(|(e, c)| (c.to_string(), e.as_slice().to_vec())).collect()
}

pub fn polynomial_from_json(n: usize, j: &PolynomialJson) -> Result<Polynomial> {
    let terms = j
        .iter()
        .map(|(c, e)| Ok((parse_rational(c)?, ExponentVector::new(e.clone()))))
        .collect::<Result<Vec<_>>>()?;
    Polynomial::from_terms(n, terms)
}

pub fn form_to_json(w: &DifferentialForm) -> FormJson {
    w.components().map(|(idx, p)| (idx.clone(), polynomial_to_json(p))).collect()
}

pub fn form_from_json(n: usize, j: &FormJson) -> Result<DifferentialForm> {
    j.iter().try_fold(DifferentialForm::zero(n), |acc, (idx, p)| {
        acc.try_add(&DifferentialForm::from_component(idx, polynomial_from_json(n, p)?)?)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub n: usize,
    pub generators: Vec<Vec<u32>>,
}

impl IdealJson {
    pub fn of(i: &MonomialIdeal) -> Self {
        IdealJson { n: i.nvars(), generators: i.generators().iter().map(|g| g.as_slice().to_vec()).collect() }
    }

    pub fn build(&self) -> Result<MonomialIdeal> {
        MonomialIdeal::minimalize(self.n, self.generators.iter().cloned().map(ExponentVector::new).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelJson {
    pub generators: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub entries: Vec<EntryJson>,
}

impl MatrixJson {
    pub fn of(m: &GradedMatrix) -> Self {
        let entries = m
            .entries()
            .map(|(&(r, c), v)| {
                let mono = m.exponent(r, c).expect("stored entries are graded");
                (r, c, v.to_string(), mono.as_slice().to_vec())
            })
            .collect();
        MatrixJson { entries }
    }

    pub fn build(&self, source: FreeModule, target: FreeModule) -> Result<GradedMatrix> {
        let terms = self
            .entries
            .iter()
            .map(|(r, c, v, e)| Ok((*r, *c, Term::new(parse_rational(v)?, ExponentVector::new(e.clone())))))
            .collect::<Result<Vec<_>>>()?;
        GradedMatrix::from_terms(source, target, terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub n: usize,
    pub levels: Vec<LevelJson>,
    pub differentials: Vec<MatrixJson>,
}

impl ComplexJson {
    pub fn of(c: &Complex) -> Self {
        ComplexJson {
            n: c.nvars(),
            levels: c
                .modules()
                .iter()
                .map(|m| LevelJson { generators: m.generators.iter().map(|g| g.as_slice().to_vec()).collect() })
                .collect(),
            differentials: c.differentials().iter().map(MatrixJson::of).collect(),
        }
    }

    pub fn build(&self) -> Result<Complex> {
        if self.levels.is_empty() {
            return Err(Error::Json("a complex needs at least one level".into()));
        }
        if self.differentials.len() + 1 != self.levels.len() {
            return Err(Error::Json(format!(
                "{} levels need {} differentials, found {}",
                self.levels.len(),
                self.levels.len() - 1,
                self.differentials.len()
            )));
        }
        let modules: Vec<FreeModule> = self
            .levels
            .iter()
            .enumerate()
            .map(|(l, g)| FreeModule::new(self.n, l as i32, g.generators.iter().cloned().map(ExponentVector::new).collect()))
            .collect::<Result<_>>()?;
        let diffs = self
            .differentials
            .iter()
            .enumerate()
            .map(|(i, d)| d.build(modules[i + 1].clone(), modules[i].clone()))
            .collect::<Result<Vec<_>>>()?;
        Complex::new(self.n, modules, diffs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockJson {
    pub level: i32,
    pub entries: Vec<EntryJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMapJson {
    pub degree: i32,
    pub blocks: Vec<BlockJson>,
}

impl ChainMapJson {
    pub fn of(a: &ChainMap) -> Self {
        let blocks = a
            .blocks()
            .iter()
            .enumerate()
            .map(|(l, b)| BlockJson { level: l as i32, entries: MatrixJson::of(b).entries })
            .collect();
        ChainMapJson { degree: a.degree(), blocks }
    }

    /// Builds the blocks that are listed; the caller decides how missing
    /// levels are filled.
    pub fn build_blocks(&self, source: &Complex, target: &Complex) -> Result<Vec<GradedMatrix>> {
        let mut blocks: Vec<GradedMatrix> = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            if b.level != i as i32 {
                return Err(Error::Json(format!("block {} is listed for level {}", i, b.level)));
            }
            let m = MatrixJson { entries: b.entries.clone() };
            blocks.push(m.build(source.module(b.level), target.module(b.level + self.degree))?);
        }
        Ok(blocks)
    }
}

/// A chain map together with its source and target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDocument {
    pub source: ComplexJson,
    pub target: ComplexJson,
    pub chain_map: ChainMapJson,
}

impl MapDocument {
    pub fn of(a: &ChainMap) -> Self {
        MapDocument {
            source: ComplexJson::of(a.source()),
            target: ComplexJson::of(a.target()),
            chain_map: ChainMapJson::of(a),
        }
    }

    pub fn build(&self) -> Result<ChainMap> {
        let source = self.source.build()?;
        let target = self.target.build()?;
        let blocks = self.chain_map.build_blocks(&source, &target)?;
        ChainMap::new(source, target, self.chain_map.degree, blocks)
    }
}

/// A mapping cone with the inclusion `θ` and the projection `ϑ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeDocument {
    #[serde(flatten)]
    pub cone: ComplexJson,
    pub chain_map: ConeMapsJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeMapsJson {
    pub theta: ChainMapJson,
    pub vartheta: ChainMapJson,
}

impl ConeDocument {
    pub fn of(c: &MappingCone) -> Self {
        ConeDocument {
            cone: ComplexJson::of(&c.cone),
            chain_map: ConeMapsJson { theta: ChainMapJson::of(&c.theta), vartheta: ChainMapJson::of(&c.vartheta) },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub witness: Vec<u32>,
    pub prime: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationJson {
    pub base: IdealJson,
    pub steps: Vec<StepJson>,
}

impl FiltrationJson {
    pub fn of(f: &Filtration) -> Self {
        FiltrationJson {
            base: IdealJson::of(&f.base),
            steps: f
                .steps
                .iter()
                .map(|s| StepJson { witness: s.witness.as_slice().to_vec(), prime: s.prime.variables().to_vec() })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<Filtration> {
        let base = self.base.build()?;
        let n = base.nvars();
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let witness = ExponentVector::new(s.witness.clone());
                crate::error::check_dim(n, witness.len())?;
                Ok(FiltrationStep { witness, prime: PrimeSupport::new(n, s.prime.clone())? })
            })
            .collect::<Result<_>>()?;
        Ok(Filtration { base, steps })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub variables: Vec<usize>,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleJson {
    pub components: Vec<ComponentJson>,
    pub by_codim: BTreeMap<String, Vec<ComponentJson>>,
}

fn components_of(c: &Cycle) -> Vec<ComponentJson> {
    c.components().iter().map(|(p, m)| ComponentJson { variables: p.variables().to_vec(), multiplicity: *m }).collect()
}

impl CycleJson {
    pub fn of(c: &Cycle) -> Self {
        CycleJson {
            components: components_of(c),
            by_codim: c.by_codim().iter().map(|(k, part)| (k.to_string(), components_of(part))).collect(),
        }
    }

    pub fn build(&self, n: usize) -> Result<Cycle> {
        let mut c = Cycle::zero();
        for comp in &self.components {
            c.add_component(PrimeSupport::new(n, comp.variables.clone())?, comp.multiplicity);
        }
        let regrouped = CycleJson::of(&c);
        if regrouped.by_codim != self.by_codim {
            return Err(Error::Json("by_codim disagrees with the component list".into()));
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{koszul, lift_morphism, mapping_cone, taylor_resolution};
    use crate::homology::complex_cycle_detail;
    use crate::poly::{rat, ratio};

    fn ev(v: &[u32]) -> ExponentVector { ExponentVector::new(v.to_vec()) }

    #[test]
    fn polynomial_and_form_round_trip() {
        let p = Polynomial::from_terms(2, [(ratio(3, 2), ev(&[2, 0])), (rat(-1), ev(&[0, 1]))]).unwrap();
        let j = polynomial_to_json(&p);
        assert!(j.contains(&("3/2".to_string(), vec![2, 0])));
        assert_eq!(polynomial_from_json(2, &j).unwrap(), p);
        let w = DifferentialForm::differential(&p);
        assert_eq!(form_from_json(2, &form_to_json(&w)).unwrap(), w);
    }

    #[test]
    fn complex_text_matches_schema() {
        let k = koszul(&[Term::monomial(ev(&[1, 0])), Term::monomial(ev(&[0, 1]))]).unwrap();
        let v = serde_json::to_value(ComplexJson::of(&k)).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["levels"][1]["generators"], serde_json::json!([[1, 0], [0, 1]]));
        assert_eq!(v["differentials"][0]["entries"][0], serde_json::json!([0, 0, "1", [1, 0]]));
        let back: ComplexJson = serde_json::from_value(v).unwrap();
        assert_eq!(back.build().unwrap(), k);
    }

    #[test]
    fn wrong_monomial_is_rejected() {
        let text = r#"{"n":1,"levels":[{"generators":[[0]]},{"generators":[[2]]}],
            "differentials":[{"entries":[[0,0,"1",[1]]]}]}"#;
        let j: ComplexJson = serde_json::from_str(text).unwrap();
        assert!(matches!(j.build(), Err(Error::Domain(_))));
    }

    #[test]
    fn chain_map_and_cone_round_trip() {
        let i = MonomialIdeal::minimalize(2, vec![ev(&[2, 0]), ev(&[0, 1])]).unwrap();
        let e = taylor_resolution(&i).unwrap();
        let f = e.shift_degrees(&ev(&[1, 0])).unwrap();
        let alpha = GradedMatrix::new(f.module(0), e.module(0), [((0, 0), rat(1))].into()).unwrap();
        let a = lift_morphism(&alpha, &f, &e).unwrap();
        let doc = MapDocument::of(&a);
        let text = serde_json::to_string(&doc).unwrap();
        let back: MapDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back.build().unwrap(), a);
        let cone = ConeDocument::of(&mapping_cone(&a).unwrap());
        let v = serde_json::to_value(&cone).unwrap();
        assert!(v.get("levels").is_some() && v["chain_map"]["vartheta"]["degree"] == -1);
    }

    #[test]
    fn ideal_filtration_and_cycle_round_trip() {
        let i = MonomialIdeal::minimalize(4, vec![ev(&[1, 0, 1, 0]), ev(&[1, 0, 0, 1]), ev(&[0, 1, 1, 0]), ev(&[0, 1, 0, 1])])
            .unwrap();
        assert_eq!(IdealJson::of(&i).build().unwrap(), i);
        let f = i.prime_filtration().unwrap();
        assert_eq!(FiltrationJson::of(&f).build().unwrap(), f);
        let c = complex_cycle_detail(&taylor_resolution(&i).unwrap()).unwrap().total;
        let j = CycleJson::of(&c);
        assert_eq!(j.by_codim["2"].len(), 2);
        assert_eq!(j.build(4).unwrap(), c);
    }
}
