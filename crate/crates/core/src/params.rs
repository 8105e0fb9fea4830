//! Typed access to a JSON parameter object, with schema errors naming the field.

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::scalar::Scalar;
use crate::symbols::SymbolSpec;
use crate::symfunc::Specialization;

#[derive(Clone, Copy, Debug)]
pub struct Params<'a>(&'a Map<String, Value>);

impl<'a> Params<'a> {
    pub fn new(v: &'a Value) -> Result<Self> {
        v.as_object().map(Params).ok_or_else(|| Error::schema("params", "expected a JSON object"))
    }

    pub fn raw(&self, name: &str) -> Option<&'a Value> {
        self.0.get(name)
    }

    fn required(&self, name: &str) -> Result<&'a Value> {
        self.0.get(name).ok_or_else(|| Error::schema(name, "missing"))
    }

    pub fn int(&self, name: &str) -> Result<i64> {
        self.required(name)?.as_i64().ok_or_else(|| Error::schema(name, "expected an integer"))
    }

    pub fn usize(&self, name: &str) -> Result<usize> {
        let v = self.int(name)?;
        usize::try_from(v).map_err(|_| Error::schema(name, "expected a non-negative integer"))
    }

    pub fn u32(&self, name: &str) -> Result<u32> {
        let v = self.int(name)?;
        u32::try_from(v).map_err(|_| Error::schema(name, "expected a non-negative integer"))
    }

    pub fn usize_or(&self, name: &str, default: usize) -> Result<usize> {
        if self.0.contains_key(name) {
            self.usize(name)
        } else {
            Ok(default)
        }
    }

    pub fn str(&self, name: &str) -> Result<&'a str> {
        self.required(name)?.as_str().ok_or_else(|| Error::schema(name, "expected a string"))
    }

    pub fn scalar(&self, name: &str) -> Result<Scalar> {
        Scalar::from_json(self.required(name)?).map_err(|e| rename(e, name))
    }

    pub fn partition(&self, name: &str) -> Result<Partition> {
        partition_from(self.required(name)?, name)
    }

    /// Missing means the empty partition.
    pub fn partition_or_empty(&self, name: &str) -> Result<Partition> {
        match self.0.get(name) {
            Some(v) => partition_from(v, name),
            None => Ok(Partition::empty()),
        }
    }

    pub fn specialization(&self, name: &str) -> Result<Specialization> {
        Specialization::from_json(self.required(name)?).map_err(|e| rename(e, name))
    }

    pub fn symbol(&self, name: &str) -> Result<SymbolSpec> {
        SymbolSpec::from_json(self.required(name)?).map_err(|e| rename(e, name))
    }

    pub fn rationals(&self, name: &str) -> Result<Vec<crate::scalar::Rational>> {
        let arr = self.required(name)?.as_array().ok_or_else(|| Error::schema(name, "expected an array"))?;
        arr.iter()
            .map(|v| match Scalar::from_json(v).map_err(|e| rename(e, name))? {
                Scalar::Rational(r) => Ok(r),
                Scalar::Series(_) => Err(Error::schema(name, "expected rationals")),
            })
            .collect()
    }
}

pub fn partition_from(v: &Value, name: &str) -> Result<Partition> {
    let parts: Vec<usize> = serde_json::from_value(v.clone())
        .map_err(|_| Error::schema(name, "expected an array of non-negative integers"))?;
    Partition::new(parts).map_err(|e| Error::schema(name, e.to_string()))
}

fn rename(e: Error, name: &str) -> Error {
    match e {
        Error::Schema { field, msg } if field == name || field.starts_with(&format!("{name}.")) => Error::schema(field, msg),
        Error::Schema { field, msg } => Error::schema(format!("{name}.{field}"), msg),
        other => other,
    }
}
