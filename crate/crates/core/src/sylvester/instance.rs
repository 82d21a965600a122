use std::collections::BTreeMap;

use serde_json::{Map, Value};

use super::kinds::{EquationSpec, SystemKind, TermSpec};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::recipe::Bindings;
use crate::scalar::Ring;

/// Shapes of the unknowns, keyed by name.
pub type UnknownShapes = BTreeMap<&'static str, (usize, usize)>;

/// A system of one kind together with its coefficients and right-hand sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemInstance {
    pub kind: SystemKind,
    pub ring: Ring,
    pub matrices: BTreeMap<String, Matrix>,
}

fn base_name(name: &str) -> (&str, bool) {
    match name.strip_suffix('*') {
        Some(base) => (base, true),
        None => (name, false),
    }
}

fn describe(term: &TermSpec) -> String {
    let parts: Vec<&str> = [term.left, Some(term.unknown), term.right]
        .into_iter()
        .flatten()
        .collect();
    parts.join("·")
}

impl SystemInstance {
    /// Builds and validates an instance.
    pub fn new(kind: SystemKind, ring: Ring, matrices: BTreeMap<String, Matrix>) -> Result<SystemInstance> {
        let inst = SystemInstance { kind, ring, matrices };
        inst.validate()?;
        Ok(inst)
    }

    pub fn matrix(&self, name: &str) -> Result<&Matrix> {
        self.matrices
            .get(name)
            .ok_or_else(|| Error::MissingMatrix(name.to_string()))
    }

    /// The named matrix, conjugate-transposed when the name ends in `*`.
    pub fn operand(&self, name: &str) -> Result<Matrix> {
        let (base, star) = base_name(name);
        let m = self.matrix(base)?;
        Ok(if star { m.conjugate_transpose() } else { m.clone() })
    }

    fn expected_names(&self) -> Vec<&'static str> {
        let mut names: Vec<&'static str> = self.kind.coefficients().iter().map(|c| c.0).collect();
        names.extend(self.kind.rhs_names());
        names
    }

    pub fn validate(&self) -> Result<()> {
        let expected = self.expected_names();
        for name in &expected {
            let m = self.matrix(name)?;
            if m.ring() != self.ring {
                return Err(Error::RingMismatch {
                    expected: self.ring,
                    found: m.ring(),
                });
            }
        }
        if let Some(extra) = self.matrices.keys().find(|k| !expected.contains(&k.as_str())) {
            return Err(Error::Parse(format!(
                "matrix `{extra}` is not part of a {} system",
                self.kind
            )));
        }
        self.unknown_shapes(self.kind.equations())?;
        if self.kind.is_hermitian() {
            if self.ring.characteristic() == 2 {
                return Err(Error::CharacteristicTwo);
            }
            for name in self.kind.hermitian_rhs() {
                if !self.matrix(name)?.is_hermitian() {
                    return Err(Error::NotHermitianRhs(name.to_string()));
                }
            }
        }
        Ok(())
    }

    /// Infers every unknown's shape from `eqs`, checking each term against
    /// its right-hand side.
    pub fn unknown_shapes(&self, eqs: &[EquationSpec]) -> Result<UnknownShapes> {
        let mut shapes = UnknownShapes::new();
        for eq in eqs {
            let (rows, cols) = self.operand(eq.rhs)?.shape();
            for term in eq.terms {
                let mut u_rows = rows;
                let mut u_cols = cols;
                if let Some(l) = term.left {
                    let l = self.operand(l)?;
                    if l.rows() != rows {
                        return Err(Error::shape(format!(
                            "{} has {} rows but term {} needs {rows}",
                            eq.rhs,
                            l.rows(),
                            describe(term)
                        )));
                    }
                    u_rows = l.cols();
                }
                if let Some(r) = term.right {
                    let r = self.operand(r)?;
                    if r.cols() != cols {
                        return Err(Error::shape(format!(
                            "{} has {} columns but term {} needs {cols}",
                            eq.rhs,
                            r.cols(),
                            describe(term)
                        )));
                    }
                    u_cols = r.rows();
                }
                let (name, star) = base_name(term.unknown);
                let shape = if star { (u_cols, u_rows) } else { (u_rows, u_cols) };
                match shapes.get(name) {
                    Some(&prev) if prev != shape => {
                        return Err(Error::shape(format!(
                            "unknown {name} is {}x{} in term {} but {}x{} elsewhere",
                            shape.0,
                            shape.1,
                            describe(term),
                            prev.0,
                            prev.1
                        )));
                    }
                    _ => {
                        shapes.insert(name, shape);
                    }
                }
            }
        }
        for name in self.kind.hermitian_unknowns() {
            if let Some(&(r, c)) = shapes.get(name) {
                if r != c {
                    return Err(Error::shape(format!("Hermitian unknown {name} would be {r}x{c}")));
                }
            }
        }
        Ok(shapes)
    }

    /// `Σ left·U·right` over the terms of `eq`.
    pub fn evaluate(&self, eq: &EquationSpec, unknowns: &BTreeMap<String, Matrix>) -> Result<Matrix> {
        let (rows, cols) = self.operand(eq.rhs)?.shape();
        let mut total = Matrix::zeros(self.ring, rows, cols);
        for term in eq.terms {
            let (name, star) = base_name(term.unknown);
            let u = unknowns
                .get(name)
                .ok_or_else(|| Error::MissingMatrix(name.to_string()))?;
            let mut value = if star { u.conjugate_transpose() } else { u.clone() };
            if let Some(l) = term.left {
                value = self.operand(l)?.matmul(&value)?;
            }
            if let Some(r) = term.right {
                value = value.matmul(&self.operand(r)?)?;
            }
            total = total.add(&value)?;
        }
        Ok(total)
    }

    /// Whether `unknowns` satisfy every equation as stated.
    pub fn satisfied_by(&self, unknowns: &BTreeMap<String, Matrix>) -> Result<bool> {
        for eq in self.kind.equations() {
            if self.evaluate(eq, unknowns)? != self.operand(eq.rhs)? {
                return Ok(false);
            }
        }
        for name in self.kind.hermitian_unknowns() {
            if let Some(u) = unknowns.get(*name) {
                if !u.is_hermitian() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Matrices visible to the rank conditions. The classical triple reuses
    /// the two-unknown list with an empty `B` and `H`.
    pub fn bindings(&self) -> Result<Bindings> {
        let mut b: Bindings = self.matrices.clone();
        if self.kind == SystemKind::ClassicalTriple {
            let m = self.matrix("A")?.rows();
            let n = self.matrix("E")?.cols();
            b.insert("B".into(), Matrix::zeros(self.ring, m, 0));
            b.insert("H".into(), Matrix::zeros(self.ring, 0, n));
        }
        Ok(b)
    }

    pub fn to_json(&self) -> Value {
        let matrices: Map<String, Value> = self.matrices.iter().map(|(k, m)| (k.clone(), m.to_json())).collect();
        let mut obj = Map::new();
        obj.insert("kind".into(), Value::String(self.kind.name().into()));
        obj.insert("matrices".into(), Value::Object(matrices));
        obj.insert("ring".into(), Value::String(self.ring.to_string()));
        Value::Object(obj)
    }

    pub fn from_json(value: &Value) -> Result<SystemInstance> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("instance must be a JSON object".into()))?;
        let kind: SystemKind = obj
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("`kind` must be a string".into()))?
            .parse()?;
        let ring: Ring = obj
            .get("ring")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("`ring` must be a string".into()))?
            .parse()?;
        let mats = obj
            .get("matrices")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("`matrices` must be an object".into()))?;
        let mut matrices = BTreeMap::new();
        for (name, m) in mats {
            let m = Matrix::from_json(m).map_err(|e| match e {
                Error::Parse(msg) => Error::Parse(format!("matrices.{name}: {msg}")),
                other => other,
            })?;
            matrices.insert(name.clone(), m);
        }
        SystemInstance::new(kind, ring, matrices)
    }
}

impl serde::Serialize for SystemInstance {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for SystemInstance {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = Value::deserialize(deserializer)?;
        SystemInstance::from_json(&value).map_err(serde::de::Error::custom)
    }
}
