//! JSON description of a multi-sequence:
//!
//! ```json
//! {"ring": "Integer", "module_rank": 1,
//!  "axes": [{"coeffs": ["1", "1"]}, {"coeffs": ["1", "3"]}],
//!  "initial": {"shape": [2, 2], "data": ["1", "1", "0", "1"]},
//!  "roots": ["1", "2"]}
//! ```
//!
//! `module_rank` defaults to 1; with rank `m > 1` every data entry is an
//! array of `m` elements. `roots` is optional.

use serde_json::{json, Value};

use crate::closedform::RootPair;
use crate::error::{Error, Result};
use crate::hypercube::Hypercube;
use crate::module::ModuleElem;
use crate::multiseq::{FibSpec, MultiSequence};
use crate::recurrence::RecurrenceType;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
pub struct SpecFile {
    pub sequence: MultiSequence,
    pub roots: Option<RootPair>,
}

fn field<'a>(v: &'a Value, name: &str, path: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| Error::Decode(format!("{path}: missing field {name:?}")))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Decode(format!("{path}: expected an array, found {v}")))
}

fn usize_of(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::Decode(format!("{path}: expected a nonnegative integer, found {v}")))
}

fn at<T>(r: Result<T>, path: &str) -> Result<T> {
    r.map_err(|e| match e {
        Error::Decode(m) => Error::Decode(format!("{path}: {m}")),
        other => Error::Decode(format!("{path}: {other}")),
    })
}

/// Decodes `{"shape": [...], "data": [...]}`.
pub fn block_from_json(ring: &Ring, rank: usize, v: &Value) -> Result<Hypercube<ModuleElem>> {
    let shape = array(field(v, "shape", "initial")?, "initial.shape")?
        .iter()
        .enumerate()
        .map(|(i, s)| usize_of(s, &format!("initial.shape[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let data = array(field(v, "data", "initial")?, "initial.data")?;
    let expected: usize = shape.iter().product();
    if shape.is_empty() || data.len() != expected {
        return Err(Error::Decode(format!(
            "initial.data: shape {shape:?} needs {expected} entries, found {}",
            data.len()
        )));
    }
    let elems = data
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let path = format!("initial.data[{i}]");
            if rank == 1 {
                return Ok(ModuleElem::scalar(at(ring.decode(x), &path)?));
            }
            let xs = array(x, &path)?;
            if xs.len() != rank {
                return Err(Error::Decode(format!("{path}: expected {rank} coordinates, found {}", xs.len())));
            }
            let coords = xs.iter().map(|c| at(ring.decode(c), &path)).collect::<Result<Vec<_>>>()?;
            ModuleElem::new(coords)
        })
        .collect::<Result<Vec<_>>>()?;
    Hypercube::new(shape, elems)
}

pub fn module_elem_to_json(x: &ModuleElem) -> Value {
    if x.rank() == 1 {
        x.coord(0).to_json()
    } else {
        Value::Array(x.coords().iter().map(|c| c.to_json()).collect())
    }
}

/// Encodes a block in the same form [`block_from_json`] reads.
pub fn block_to_json(block: &Hypercube<ModuleElem>) -> Value {
    json!({
        "shape": block.shape(),
        "data": block.data().iter().map(module_elem_to_json).collect::<Vec<_>>(),
    })
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<SpecFile> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Decode(format!("invalid JSON: {e}")))?;
        SpecFile::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<SpecFile> {
        let ring: Ring = serde_json::from_value(field(v, "ring", "spec")?.clone())
            .map_err(|e| Error::Decode(format!("ring: {e}")))?;
        let rank = match v.get("module_rank") {
            None => 1,
            Some(r) => usize_of(r, "module_rank")?,
        };
        if rank == 0 {
            return Err(Error::Decode("module_rank: must be positive".into()));
        }
        let axes = array(field(v, "axes", "spec")?, "axes")?
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let path = format!("axes[{k}].coeffs");
                let coeffs = array(field(a, "coeffs", &format!("axes[{k}]"))?, &path)?
                    .iter()
                    .map(|c| at(ring.decode(c), &path))
                    .collect::<Result<Vec<_>>>()?;
                at(RecurrenceType::new(ring.clone(), coeffs), &path)
            })
            .collect::<Result<Vec<_>>>()?;
        let spec = at(FibSpec::new(axes), "axes")?;
        let block = block_from_json(&ring, rank, field(v, "initial", "spec")?)?;
        let sequence = at(MultiSequence::new(spec, block), "initial")?;
        let roots = match v.get("roots") {
            None | Some(Value::Null) => None,
            Some(r) => {
                let rs = array(r, "roots")?;
                if rs.len() != 2 {
                    return Err(Error::Decode(format!("roots: expected 2 entries, found {}", rs.len())));
                }
                Some(RootPair::new(at(ring.decode(&rs[0]), "roots[0]")?, at(ring.decode(&rs[1]), "roots[1]")?)?)
            }
        };
        Ok(SpecFile { sequence, roots })
    }

    pub fn to_value(&self) -> Value {
        let seq = &self.sequence;
        let mut v = json!({
            "ring": seq.ring(),
            "module_rank": seq.rank(),
            "axes": seq.spec().axes().iter()
                .map(|a| json!({"coeffs": a.coeffs().iter().map(|c| c.to_json()).collect::<Vec<_>>()}))
                .collect::<Vec<_>>(),
            "initial": block_to_json(seq.initial()),
        });
        if let Some(r) = &self.roots {
            v["roots"] = json!([r.r1().to_json(), r.r2().to_json()]);
        }
        v
    }
}
