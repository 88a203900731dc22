//! JSON formats for algebras, Hopf algebras, crossed systems and modules.
//!
//! Scalars are JSON integers or strings such as `"-3/2"`. Structure constants are
//! quadruples `[i, j, k, c]` meaning e_i e_j ∋ c e_k; comultiplication quadruples
//! `[i, j, k, c]` mean Δ(e_i) ∋ c e_j ⊗ e_k; the antipode is given by rows with S(e_i)
//! in column i; action quadruples `[h, r, s, c]` mean h·e_r ∋ c e_s; cocycle
//! quadruples `[h, g, r, c]` mean σ(e_h, e_g) ∋ c e_r.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::Algebra;
use crate::crossed::{build_crossed, cocycle_table, trivial_cocycle, CrossedSystem, MeasuringAction};
use crate::hopf::{validate_hopf, HopfAlgebra};
use crate::linalg::{FieldSpec, Matrix, Scalar};
use crate::module::Module;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Int(i64),
    Text(String),
}

impl ScalarJson {
    pub fn parse(&self, field: FieldSpec) -> Result<Scalar, Error> {
        match self {
            ScalarJson::Int(n) => Ok(field.from_i64(*n)),
            ScalarJson::Text(s) => Ok(field.parse(s)?),
        }
    }

    pub fn from_scalar(x: &Scalar) -> Self {
        match x.to_i64() {
            Some(n) => ScalarJson::Int(n),
            None => ScalarJson::Text(x.to_string()),
        }
    }
}

type Quad = (usize, usize, usize, ScalarJson);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldJson {
    #[serde(rename = "char")]
    pub characteristic: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub field: FieldJson,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    pub unit: Vec<ScalarJson>,
    pub mult: Vec<Quad>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HopfJson {
    #[serde(flatten)]
    pub algebra: AlgebraJson,
    pub comul: Vec<Quad>,
    pub counit: Vec<ScalarJson>,
    pub antipode: Vec<Vec<ScalarJson>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemJson {
    #[serde(rename = "R")]
    pub base: AlgebraJson,
    #[serde(rename = "H")]
    pub hopf: HopfJson,
    pub action: Vec<Quad>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<Quad>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub algebra: AlgebraJson,
    pub dim: usize,
    /// One dim × dim matrix (rows) per algebra basis element.
    pub action: Vec<Vec<Vec<ScalarJson>>>,
}

fn field_of(f: &FieldJson) -> Result<FieldSpec, Error> {
    Ok(FieldSpec::new(f.characteristic)?)
}

fn quads(field: FieldSpec, q: &[Quad]) -> Result<Vec<(usize, usize, usize, Scalar)>, Error> {
    q.iter().map(|(i, j, k, c)| Ok((*i, *j, *k, c.parse(field)?))).collect()
}

fn scalars(field: FieldSpec, v: &[ScalarJson]) -> Result<Vec<Scalar>, Error> {
    v.iter().map(|c| c.parse(field)).collect()
}

fn matrix(field: FieldSpec, rows: &[Vec<ScalarJson>]) -> Result<Matrix, Error> {
    let rows = rows.iter().map(|r| scalars(field, r)).collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(field, rows)?)
}

fn matrix_json(m: &Matrix) -> Vec<Vec<ScalarJson>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(ScalarJson::from_scalar).collect()).collect()
}

impl AlgebraJson {
    pub fn to_algebra(&self) -> Result<Algebra, Error> {
        let field = field_of(&self.field)?;
        let names = match &self.basis {
            Some(b) if b.len() != self.dim => {
                return Err(Error::Malformed(format!("{} basis names for dimension {}", b.len(), self.dim)))
            }
            Some(b) => b.clone(),
            None => (0..self.dim).map(|i| format!("e{i}")).collect(),
        };
        Algebra::new(field, names, scalars(field, &self.unit)?, quads(field, &self.mult)?)
    }

    pub fn from_algebra(a: &Algebra) -> Self {
        AlgebraJson {
            field: FieldJson { characteristic: a.field().characteristic() },
            dim: a.dim(),
            basis: Some(a.basis_names().to_vec()),
            unit: a.unit().iter().map(ScalarJson::from_scalar).collect(),
            mult: a.structure_constants().map(|(i, j, k, c)| (i, j, k, ScalarJson::from_scalar(c))).collect(),
        }
    }
}

impl HopfJson {
    pub fn to_hopf(&self) -> Result<HopfAlgebra, Error> {
        let alg = Arc::new(self.algebra.to_algebra()?);
        let field = alg.field();
        HopfAlgebra::new(alg, quads(field, &self.comul)?, scalars(field, &self.counit)?, matrix(field, &self.antipode)?)
    }

    pub fn from_hopf(h: &HopfAlgebra) -> Self {
        HopfJson {
            algebra: AlgebraJson::from_algebra(h.algebra()),
            comul: h.comul_constants().map(|(i, j, k, c)| (i, j, k, ScalarJson::from_scalar(c))).collect(),
            counit: h.counit().iter().map(ScalarJson::from_scalar).collect(),
            antipode: matrix_json(h.antipode()),
        }
    }
}

impl SystemJson {
    pub fn to_system(&self) -> Result<CrossedSystem, Error> {
        let base = Arc::new(self.base.to_algebra()?);
        let hopf = Arc::new(self.hopf.to_hopf()?);
        validate_hopf(&hopf).map_err(|v| Error::MalformedHopf(format!("{}: {}", v.check, v.detail)))?;
        let field = base.field();
        let action = MeasuringAction::new(hopf.clone(), base.clone(), quads(field, &self.action)?)?;
        let sigma = match &self.sigma {
            Some(q) => cocycle_table(&hopf, &base, quads(field, q)?)?,
            None => trivial_cocycle(&hopf, &base),
        };
        build_crossed(action, sigma)
    }

    pub fn from_system(sys: &CrossedSystem) -> Self {
        let (dh, dr) = (sys.hopf().dim(), sys.base().dim());
        let mut action = Vec::new();
        for h in 0..dh {
            let m = sys.action.matrix(h);
            for r in 0..dr {
                for s in 0..dr {
                    if !m.get(s, r).is_zero() {
                        action.push((h, r, s, ScalarJson::from_scalar(m.get(s, r))));
                    }
                }
            }
        }
        let trivial = trivial_cocycle(sys.hopf(), sys.base());
        let sigma = (sys.cocycle.sigma != trivial).then(|| {
            let mut out = Vec::new();
            for h in 0..dh {
                for g in 0..dh {
                    for (r, c) in sys.cocycle.value(dh, h, g).iter().enumerate() {
                        if !c.is_zero() {
                            out.push((h, g, r, ScalarJson::from_scalar(c)));
                        }
                    }
                }
            }
            out
        });
        SystemJson {
            base: AlgebraJson::from_algebra(sys.base()),
            hopf: HopfJson::from_hopf(sys.hopf()),
            action,
            sigma,
        }
    }
}

impl ModuleJson {
    pub fn to_module(&self) -> Result<Module, Error> {
        let alg = Arc::new(self.algebra.to_algebra()?);
        let field = alg.field();
        let action = self.action.iter().map(|m| matrix(field, m)).collect::<Result<Vec<_>, _>>()?;
        if action.iter().any(|m| m.shape() != (self.dim, self.dim)) {
            return Err(Error::Malformed("module action matrices must be dim × dim".into()));
        }
        Module::new(alg, self.dim, action)
    }

    pub fn from_module(m: &Module) -> Self {
        ModuleJson {
            algebra: AlgebraJson::from_algebra(m.algebra()),
            dim: m.dim(),
            action: m.actions().iter().map(matrix_json).collect(),
        }
    }
}

/// What a JSON document describes, decided by its keys.
#[derive(Clone, Debug)]
pub enum Document {
    Algebra(Algebra),
    Hopf(HopfAlgebra),
    System(Box<CrossedSystem>),
    Module(Module),
}

pub fn parse_document(value: Value) -> Result<Document, Error> {
    let has = |k: &str| value.get(k).is_some();
    if has("R") && has("H") {
        Ok(Document::System(Box::new(serde_json::from_value::<SystemJson>(value)?.to_system()?)))
    } else if has("comul") {
        Ok(Document::Hopf(serde_json::from_value::<HopfJson>(value)?.to_hopf()?))
    } else if has("algebra") && has("action") {
        Ok(Document::Module(serde_json::from_value::<ModuleJson>(value)?.to_module()?))
    } else if has("mult") {
        Ok(Document::Algebra(serde_json::from_value::<AlgebraJson>(value)?.to_algebra()?))
    } else {
        Err(Error::Malformed("unrecognized document: expected an algebra, Hopf algebra, system or module".into()))
    }
}

pub fn read_json(path: &Path) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn read_algebra(path: &Path) -> Result<Algebra, Error> {
    serde_json::from_value::<AlgebraJson>(read_json(path)?)?.to_algebra()
}

pub fn read_system(path: &Path) -> Result<CrossedSystem, Error> {
    serde_json::from_value::<SystemJson>(read_json(path)?)?.to_system()
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{split_algebra, CayleyTable};
    use crate::crossed::skew_group_ring;
    use crate::hopf::sweedler;

    #[test]
    fn algebra_round_trip() {
        let a = split_algebra(2, FieldSpec::RATIONALS).unwrap();
        let json = serde_json::to_value(AlgebraJson::from_algebra(&a)).unwrap();
        let back: AlgebraJson = serde_json::from_value(json).unwrap();
        assert_eq!(back.to_algebra().unwrap(), a);
    }

    #[test]
    fn hopf_round_trip() {
        let h = sweedler(FieldSpec::RATIONALS);
        let back = HopfJson::from_hopf(&h).to_hopf().unwrap();
        assert_eq!(back.counit(), h.counit());
        assert_eq!(back.antipode(), h.antipode());
        assert_eq!(*back.algebra().as_ref(), *h.algebra().as_ref());
    }

    #[test]
    fn system_round_trip() {
        let q = FieldSpec::RATIONALS;
        let base = Arc::new(split_algebra(2, q).unwrap());
        let swap = Matrix::from_i64(q, &[&[0, 1], &[1, 0]]);
        let sys = skew_group_ring(base, &CayleyTable::cyclic(2), vec![Matrix::identity(q, 2), swap]).unwrap();
        let text = serde_json::to_string(&SystemJson::from_system(&sys)).unwrap();
        match parse_document(serde_json::from_str(&text).unwrap()).unwrap() {
            Document::System(back) => assert_eq!(*back.product().as_ref(), *sys.product().as_ref()),
            other => panic!("parsed as {other:?}"),
        }
    }

    #[test]
    fn fractions_and_bad_fields() {
        let q = FieldSpec::RATIONALS;
        assert_eq!(ScalarJson::Text("-3/2".into()).parse(q).unwrap(), q.from_ratio(-3, 2).unwrap());
        let bad = r#"{"field":{"char":4},"dim":1,"unit":[1],"mult":[[0,0,0,1]]}"#;
        assert!(parse_document(serde_json::from_str(bad).unwrap()).is_err());
    }
}
