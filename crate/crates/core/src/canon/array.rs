use serde_json::{Map, Value};

use super::invariants::{check_dual_shapes, check_quaternity_shapes};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Ring;

/// `A` (m×p), `B` (m×q), `C` (s×p), `D` (t×p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quaternity {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub d: Matrix,
}

/// `E` (p1×m1), `F` (p1×s1), `G` (p1×t1), `H` (q1×m1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualArray {
    pub e: Matrix,
    pub f: Matrix,
    pub g: Matrix,
    pub h: Matrix,
}

fn field(obj: &Map<String, Value>, name: &str) -> Result<Matrix> {
    let v = obj.get(name).ok_or_else(|| Error::MissingMatrix(name.to_string()))?;
    Matrix::from_json(v).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{name}: {msg}")),
        other => other,
    })
}

fn four(value: &Value, names: [&str; 4]) -> Result<[Matrix; 4]> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("expected a JSON object of matrices".into()))?;
    if let Some(extra) = obj.keys().find(|k| !names.contains(&k.as_str())) {
        return Err(Error::Parse(format!("unexpected field `{extra}`")));
    }
    Ok([
        field(obj, names[0])?,
        field(obj, names[1])?,
        field(obj, names[2])?,
        field(obj, names[3])?,
    ])
}

fn to_object(pairs: [(&str, &Matrix); 4]) -> Value {
    Value::Object(pairs.iter().map(|(k, m)| (k.to_string(), m.to_json())).collect())
}

impl Quaternity {
    pub fn new(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Result<Quaternity> {
        check_quaternity_shapes(&a, &b, &c, &d)?;
        Ok(Quaternity { a, b, c, d })
    }

    pub fn ring(&self) -> Ring {
        self.a.ring()
    }

    /// `[m, p, q, s, t]`.
    pub fn dims(&self) -> [usize; 5] {
        [
            self.a.rows(),
            self.a.cols(),
            self.b.cols(),
            self.c.rows(),
            self.d.rows(),
        ]
    }

    pub fn to_json(&self) -> Value {
        to_object([("A", &self.a), ("B", &self.b), ("C", &self.c), ("D", &self.d)])
    }

    pub fn from_json(value: &Value) -> Result<Quaternity> {
        let [a, b, c, d] = four(value, ["A", "B", "C", "D"])?;
        Quaternity::new(a, b, c, d)
    }

    /// `(A*, C*, D*, B*)`, whose dual invariants mirror this quaternity's.
    pub fn transport(&self) -> DualArray {
        DualArray {
            e: self.a.conjugate_transpose(),
            f: self.c.conjugate_transpose(),
            g: self.d.conjugate_transpose(),
            h: self.b.conjugate_transpose(),
        }
    }
}

impl DualArray {
    pub fn new(e: Matrix, f: Matrix, g: Matrix, h: Matrix) -> Result<DualArray> {
        check_dual_shapes(&e, &f, &g, &h)?;
        Ok(DualArray { e, f, g, h })
    }

    pub fn ring(&self) -> Ring {
        self.e.ring()
    }

    pub fn to_json(&self) -> Value {
        to_object([("E", &self.e), ("F", &self.f), ("G", &self.g), ("H", &self.h)])
    }

    pub fn from_json(value: &Value) -> Result<DualArray> {
        let [e, f, g, h] = four(value, ["E", "F", "G", "H"])?;
        DualArray::new(e, f, g, h)
    }
}

macro_rules! json_serde {
    ($t:ty) => {
        impl serde::Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                self.to_json().serialize(s)
            }
        }

        impl<'de> serde::Deserialize<'de> for $t {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let v = Value::deserialize(d)?;
                <$t>::from_json(&v).map_err(serde::de::Error::custom)
            }
        }
    };
}

json_serde!(Quaternity);
json_serde!(DualArray);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_errors() {
        let r = Ring::PrimeField(7);
        let q = Quaternity::new(
            Matrix::identity(r, 2),
            Matrix::zeros(r, 2, 1),
            Matrix::zeros(r, 3, 2),
            Matrix::zeros(r, 1, 2),
        )
        .unwrap();
        let back = Quaternity::from_json(&q.to_json()).unwrap();
        assert_eq!(back, q);
        assert_eq!(q.dims(), [2, 2, 1, 3, 1]);

        let mut v = q.to_json();
        v.as_object_mut().unwrap().remove("C");
        assert_eq!(Quaternity::from_json(&v).unwrap_err(), Error::MissingMatrix("C".into()));

        let t = q.transport();
        assert_eq!(DualArray::from_json(&t.to_json()).unwrap(), t);
        assert!(Quaternity::from_json(&t.to_json()).is_err());
    }
}
