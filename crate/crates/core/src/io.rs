//! CSV and JSON forms of sampled curves.
//!
//! Floats are written in Rust's shortest round-trip decimal form, so the
//! JSON form reads back bit-identical. Files are written to a sibling
//! temporary and renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{make_generator, GeneratorKind};
use crate::minkowski::Vec3;
use crate::synthesis::{CurveSpec, Orientation, Sample, SampledCurve};

pub const CSV_HEADER: &str = "s,x,y,z,err";
pub const SCHEMA_VERSION: u32 = 1;

/// Serialized form of a [`SampledCurve`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub schema: u32,
    /// Generator in `kind=NAME key=value` form.
    pub generator: String,
    pub epsilon: Orientation,
    pub s0: f64,
    pub alpha0: Vec3,
    pub samples: Vec<Sample>,
}

impl CurveRecord {
    pub fn from_curve(curve: &SampledCurve) -> Self {
        CurveRecord {
            schema: SCHEMA_VERSION,
            generator: curve.spec.gen.kind().to_string(),
            epsilon: curve.spec.epsilon,
            s0: curve.spec.s0,
            alpha0: curve.spec.alpha0,
            samples: curve.samples.clone(),
        }
    }

    /// Rebuilds the curve; fails for generators that have no text form.
    pub fn into_curve(self) -> Result<SampledCurve> {
        let kind: GeneratorKind = self.generator.parse()?;
        let spec = CurveSpec::new(make_generator(kind)?, self.epsilon, self.s0, self.alpha0)?;
        Ok(SampledCurve {
            spec,
            samples: self.samples,
        })
    }
}

pub fn to_json(curve: &SampledCurve) -> Result<String> {
    Ok(serde_json::to_string_pretty(&CurveRecord::from_curve(curve))?)
}

pub fn from_json(text: &str) -> Result<CurveRecord> {
    let record: CurveRecord = serde_json::from_str(text)?;
    if record.schema != SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "unsupported schema {} (expected {SCHEMA_VERSION})",
            record.schema
        )));
    }
    Ok(record)
}

/// Shortest round-trip decimal, switching to exponent form for very small
/// or very large magnitudes.
pub fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) || !a.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub fn samples_to_csv(samples: &[Sample]) -> String {
    let mut out = String::with_capacity(64 * (samples.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for p in samples {
        let row = [p.s, p.pos.x, p.pos.y, p.pos.z, p.err].map(fmt_f64).join(",");
        out.push_str(&row);
        out.push('\n');
    }
    out
}

pub fn to_csv(curve: &SampledCurve) -> String {
    samples_to_csv(&curve.samples)
}

pub fn from_csv(text: &str) -> Result<Vec<Sample>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        other => {
            return Err(Error::Parse(format!(
                "expected CSV header {CSV_HEADER:?}, found {:?}",
                other.unwrap_or("")
            )))
        }
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let vals: Vec<f64> = line
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("CSV line {}: {e}", i + 2)))?;
            match vals[..] {
                [s, x, y, z, err] => Ok(Sample {
                    s,
                    pos: Vec3::new(x, y, z),
                    err,
                }),
                _ => Err(Error::Parse(format!(
                    "CSV line {}: expected 5 columns, got {}",
                    i + 2,
                    vals.len()
                ))),
            }
        })
        .collect()
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let io_err = |p: &Path| {
        let p = p.to_path_buf();
        move |source| Error::Io { path: p, source }
    };
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| Error::Usage(format!("output path {} has no file name", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp: PathBuf = dir.join(tmp_name);
    let result = (|| {
        let mut f = fs::File::create(&tmp).map_err(io_err(&tmp))?;
        f.write_all(contents).map_err(io_err(&tmp))?;
        f.sync_all().map_err(io_err(&tmp))?;
        fs::rename(&tmp, path).map_err(io_err(path))
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}
