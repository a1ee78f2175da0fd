//! JSON descriptions of algebras and modules, and named presets.
//!
//! An algebra is either a preset string (`ground_field`, `truncated_poly(n)`,
//! `split_pair`, `poly(m)`, `square_zero(m)`) or an object:
//!
//! ```json
//! {"type": "structure_constants", "dim": 2, "mult": [[[1,0],[0,1]],[[0,1],[0,0]]], "unit": [1,0]}
//! {"type": "graded_poly", "vars": [1, 1], "monomial_relations": [[2, 0]]}
//! ```
//!
//! Rational entries are JSON integers or strings like `"-3/4"`.

use num_traits::Zero;
use serde_json::Value;

use super::{AlgebraError, FDAlgebra, FDModule, GradedAlgebra};
use crate::exactlin::{Rat, RatMatrix};

/// A rational read from JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatLiteral(pub Rat);

impl RatLiteral {
    pub fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|i| RatLiteral(Rat::from_integer(i.into())))
                .ok_or_else(|| format!("{n} is not an integer; write fractions as strings like \"1/2\"")),
            Value::String(s) => parse_rat(s).map(RatLiteral),
            other => Err(format!("expected a rational, found {other}")),
        }
    }
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let bad = || format!("cannot read {s:?} as a rational");
    match s.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse::<num_bigint::BigInt>().map_err(|_| bad())?;
            let d = d.trim().parse::<num_bigint::BigInt>().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rat::new(n, d))
        }
        None => s.parse::<num_bigint::BigInt>().map(Rat::from_integer).map_err(|_| bad()),
    }
}

fn field_err(path: &str, msg: impl std::fmt::Display) -> AlgebraError {
    AlgebraError::Invalid(format!("{path}: {msg}"))
}

fn rat_vector(v: &Value, path: &str) -> Result<Vec<Rat>, AlgebraError> {
    let arr = v.as_array().ok_or_else(|| field_err(path, "expected an array"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| RatLiteral::from_json(x).map(|r| r.0).map_err(|e| field_err(&format!("{path}[{i}]"), e)))
        .collect()
}

fn sparse(v: Vec<Rat>) -> Vec<(usize, Rat)> {
    v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

/// A parsed algebra, available as a finite-dimensional algebra, a graded
/// one, or both.
#[derive(Clone, Debug)]
pub struct AlgebraDescription {
    pub label: String,
    pub finite: Option<FDAlgebra>,
    pub graded: Option<GradedAlgebra>,
}

impl AlgebraDescription {
    fn both(g: GradedAlgebra) -> Self {
        AlgebraDescription {
            label: g.name().to_string(),
            finite: g.to_fd_algebra(),
            graded: Some(g),
        }
    }

    pub fn preset(name: &str) -> Result<Self, AlgebraError> {
        let name = name.trim();
        let unknown = || AlgebraError::UnknownPreset(name.to_string());
        let arg = |prefix: &str| -> Option<Result<usize, AlgebraError>> {
            let inner = name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
            Some(inner.trim().parse().map_err(|_| unknown()))
        };
        if name == "ground_field" {
            return Ok(AlgebraDescription {
                label: name.into(),
                finite: Some(FDAlgebra::ground_field()),
                graded: Some(GradedAlgebra::polynomial(0).with_name("ground_field")),
            });
        }
        if name == "split_pair" {
            return Ok(AlgebraDescription {
                label: name.into(),
                finite: Some(FDAlgebra::split_pair()),
                graded: None,
            });
        }
        if let Some(n) = arg("truncated_poly") {
            let n = n?;
            if n == 0 {
                return Err(AlgebraError::Invalid("truncated_poly(0) is the zero ring".into()));
            }
            return Ok(AlgebraDescription::both(GradedAlgebra::truncated(n)));
        }
        if let Some(m) = arg("poly") {
            return Ok(AlgebraDescription::both(GradedAlgebra::polynomial(m?)));
        }
        if let Some(m) = arg("square_zero") {
            return Ok(AlgebraDescription::both(GradedAlgebra::square_zero(m?)));
        }
        Err(unknown())
    }

    /// Parses a preset string or a typed object; error messages carry the
    /// JSON path below the algebra field.
    pub fn from_json(v: &Value) -> Result<Self, AlgebraError> {
        let obj = match v {
            Value::String(s) => return AlgebraDescription::preset(s),
            Value::Object(o) => o,
            _ => return Err(field_err("", "expected a preset name or an object")),
        };
        let ty = obj
            .get("type")
            .and_then(Value::as_str)
            .ok_or_else(|| field_err(".type", "missing or not a string"))?;
        let name = obj.get("name").and_then(Value::as_str);
        match ty {
            "structure_constants" => {
                let dim = obj
                    .get("dim")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| field_err(".dim", "missing or not a non-negative integer"))?
                    as usize;
                let rows = obj
                    .get("mult")
                    .and_then(Value::as_array)
                    .ok_or_else(|| field_err(".mult", "missing or not an array"))?;
                if rows.len() != dim {
                    return Err(field_err(".mult", format!("expected {dim} rows, found {}", rows.len())));
                }
                let mut mult = Vec::with_capacity(dim);
                for (i, row) in rows.iter().enumerate() {
                    let row = row.as_array().ok_or_else(|| field_err(&format!(".mult[{i}]"), "expected an array"))?;
                    if row.len() != dim {
                        return Err(field_err(&format!(".mult[{i}]"), format!("expected {dim} entries")));
                    }
                    let mut out = Vec::with_capacity(dim);
                    for (j, v) in row.iter().enumerate() {
                        let path = format!(".mult[{i}][{j}]");
                        let vec = rat_vector(v, &path)?;
                        if vec.len() != dim {
                            return Err(field_err(&path, format!("expected a vector of length {dim}")));
                        }
                        out.push(sparse(vec));
                    }
                    mult.push(out);
                }
                let unit = rat_vector(
                    obj.get("unit").ok_or_else(|| field_err(".unit", "missing"))?,
                    ".unit",
                )?;
                if unit.len() != dim {
                    return Err(field_err(".unit", format!("expected a vector of length {dim}")));
                }
                let label = name.unwrap_or("structure_constants").to_string();
                let a = FDAlgebra::new(label.clone(), dim, mult, sparse(unit))?;
                Ok(AlgebraDescription {
                    label,
                    finite: Some(a),
                    graded: None,
                })
            }
            "graded_poly" => {
                let vars = obj
                    .get("vars")
                    .and_then(Value::as_array)
                    .ok_or_else(|| field_err(".vars", "missing or not an array of weights"))?
                    .iter()
                    .enumerate()
                    .map(|(i, w)| {
                        w.as_u64()
                            .map(|w| w as u32)
                            .ok_or_else(|| field_err(&format!(".vars[{i}]"), "expected a positive integer"))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let relations = match obj.get("monomial_relations") {
                    None | Some(Value::Null) => Vec::new(),
                    Some(Value::Array(rs)) => rs
                        .iter()
                        .enumerate()
                        .map(|(i, r)| {
                            let path = format!(".monomial_relations[{i}]");
                            r.as_array()
                                .ok_or_else(|| field_err(&path, "expected an exponent vector"))?
                                .iter()
                                .map(|e| e.as_u64().map(|e| e as u32).ok_or_else(|| field_err(&path, "expected non-negative exponents")))
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                    Some(_) => return Err(field_err(".monomial_relations", "expected an array")),
                };
                let label = name.unwrap_or("graded_poly").to_string();
                Ok(AlgebraDescription::both(GradedAlgebra::new(label, vars, relations)?))
            }
            other => Err(field_err(".type", format!("unknown algebra type '{other}'"))),
        }
    }
}

/// Coefficient module for cohomology and Ext.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleDescription {
    Regular,
    /// `ℚ` through the augmentation (every non-unit basis element acts by 0).
    Augmentation,
    Character(Vec<Rat>),
    /// Kähler differentials (Leibniz presentation).
    Omega1,
    /// Explicit action matrices, row-major, one per algebra basis element.
    Explicit { dim: usize, action: Vec<Vec<Vec<Rat>>> },
}

impl ModuleDescription {
    pub fn from_json(v: &Value) -> Result<Self, AlgebraError> {
        match v {
            Value::String(s) => match s.as_str() {
                "regular" => Ok(ModuleDescription::Regular),
                "augmentation" | "trivial" | "residue_field" => Ok(ModuleDescription::Augmentation),
                "omega1" => Ok(ModuleDescription::Omega1),
                other => Err(field_err("", format!("unknown module '{other}'"))),
            },
            Value::Object(o) => {
                if let Some(c) = o.get("character") {
                    return Ok(ModuleDescription::Character(rat_vector(c, ".character")?));
                }
                let dim = o
                    .get("dim")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| field_err(".dim", "missing or not a non-negative integer"))? as usize;
                let mats = o
                    .get("action")
                    .and_then(Value::as_array)
                    .ok_or_else(|| field_err(".action", "missing or not an array of matrices"))?;
                let action = mats
                    .iter()
                    .enumerate()
                    .map(|(k, m)| {
                        let path = format!(".action[{k}]");
                        m.as_array()
                            .ok_or_else(|| field_err(&path, "expected a matrix"))?
                            .iter()
                            .enumerate()
                            .map(|(r, row)| rat_vector(row, &format!("{path}[{r}]")))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ModuleDescription::Explicit { dim, action })
            }
            _ => Err(field_err("", "expected a module name or an object")),
        }
    }

    pub fn build(&self, a: &FDAlgebra) -> Result<FDModule, AlgebraError> {
        match self {
            ModuleDescription::Regular => Ok(FDModule::regular(a)),
            ModuleDescription::Augmentation => FDModule::augmentation(a),
            ModuleDescription::Character(v) => FDModule::character(a, v),
            ModuleDescription::Omega1 => Ok(super::omega1_leibniz(a)),
            ModuleDescription::Explicit { dim, action } => {
                let mats = action
                    .iter()
                    .map(|rows| {
                        if rows.len() != *dim || rows.iter().any(|r| r.len() != *dim) {
                            return Err(AlgebraError::NotAModule(format!("action matrices must be {dim}×{dim}")));
                        }
                        let entries = rows.iter().enumerate().flat_map(|(r, row)| {
                            row.iter().enumerate().map(move |(c, x)| (r, c, x.clone()))
                        });
                        Ok(RatMatrix::from_triplets(*dim, *dim, entries).expect("square"))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                FDModule::new(a, *dim, mats)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            ModuleDescription::Regular => "regular".into(),
            ModuleDescription::Augmentation => "augmentation".into(),
            ModuleDescription::Character(_) => "character".into(),
            ModuleDescription::Omega1 => "omega1".into(),
            ModuleDescription::Explicit { dim, .. } => format!("explicit(dim {dim})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;
    use serde_json::json;

    #[test]
    fn presets() {
        let d = AlgebraDescription::preset("truncated_poly(3)").unwrap();
        assert_eq!(d.finite.unwrap().dim(), 3);
        assert_eq!(d.graded.unwrap().weight_basis(2).len(), 1);
        assert!(AlgebraDescription::preset("poly(2)").unwrap().finite.is_none());
        assert!(AlgebraDescription::preset("split_pair").unwrap().graded.is_none());
        assert!(matches!(
            AlgebraDescription::preset("torus"),
            Err(AlgebraError::UnknownPreset(_))
        ));
    }

    #[test]
    fn structure_constants() {
        let v = json!({"type":"structure_constants","dim":2,
            "mult":[[[1,0],[0,1]],[[0,1],[0,0]]],"unit":[1,0]});
        let d = AlgebraDescription::from_json(&v).unwrap();
        assert_eq!(d.finite.unwrap().mul_basis(1, 1), &[]);
        let bad = json!({"type":"structure_constants","dim":2,"mult":[[[1,0],[0,1]],[[0,1],[0,"x"]]],"unit":[1,0]});
        let err = AlgebraDescription::from_json(&bad).unwrap_err().to_string();
        assert!(err.contains(".mult[1][1][1]"), "{err}");
    }

    #[test]
    fn graded_poly() {
        let v = json!({"type":"graded_poly","vars":[1]});
        let d = AlgebraDescription::from_json(&v).unwrap();
        assert!(d.finite.is_none());
        let v = json!({"type":"graded_poly","vars":[1,1],"monomial_relations":[[2,0],[0,2]]});
        assert_eq!(AlgebraDescription::from_json(&v).unwrap().finite.unwrap().dim(), 4);
    }

    #[test]
    fn rationals() {
        assert_eq!(RatLiteral::from_json(&json!("-3/6")).unwrap().0, Rat::new((-1).into(), 2.into()));
        assert_eq!(RatLiteral::from_json(&json!(4)).unwrap().0, rat(4));
        assert!(RatLiteral::from_json(&json!(0.5)).is_err());
        assert!(RatLiteral::from_json(&json!("1/0")).is_err());
    }

    #[test]
    fn modules() {
        let a = FDAlgebra::truncated_poly(2);
        let m = ModuleDescription::from_json(&json!("trivial")).unwrap();
        assert_eq!(m.build(&a).unwrap().dim(), 1);
        let e = ModuleDescription::from_json(&json!({"dim":1,"action":[[[1]],[[0]]]})).unwrap();
        assert_eq!(e.build(&a).unwrap(), FDModule::augmentation(&a).unwrap());
        let bad = ModuleDescription::from_json(&json!({"character":[1,1]})).unwrap();
        assert!(bad.build(&a).is_err());
    }
}
