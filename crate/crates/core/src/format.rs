//! JSON file formats shared with the command line.
//!
//! Rationals are always strings (`"p/q"` or `"p"`). Tensor files list
//! canonical orbit representatives only. Matrix and metric indices are
//! zero-based positions in the `u.., v.., t..` frame order.

use serde::{Deserialize, Serialize};

use crate::curvature::{CurvatureTensor, Index4, InnerProduct};
use crate::error::{Error, Result};
use crate::geometry::PolynomialMetric;
use crate::linalg::RatMatrix;
use crate::poly::{Chart, Polynomial, Term};
use crate::scalar::Rational;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorEntry {
    pub idx: Index4,
    pub val: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorFile {
    pub dim: usize,
    pub entries: Vec<TensorEntry>,
}

impl From<&CurvatureTensor> for TensorFile {
    fn from(t: &CurvatureTensor) -> Self {
        TensorFile {
            dim: t.dim(),
            entries: t
                .canonical_entries()
                .map(|(idx, val)| TensorEntry { idx: *idx, val: val.clone() })
                .collect(),
        }
    }
}

impl TensorFile {
    /// Entries need not be canonical; inconsistent duplicates are kept as
    /// symmetry violations on the resulting tensor.
    pub fn to_tensor(&self) -> Result<CurvatureTensor> {
        CurvatureTensor::from_raw(self.dim, self.entries.iter().map(|e| (e.idx, e.val.clone())))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub i: usize,
    pub j: usize,
    pub val: Rational,
}

/// Symmetric matrix as its nonzero upper triangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricFile {
    pub dim: usize,
    pub entries: Vec<MatrixEntry>,
}

impl From<&RatMatrix> for SymmetricFile {
    fn from(m: &RatMatrix) -> Self {
        let n = m.rows();
        let entries = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[(i, j)].is_zero())
            .map(|(i, j)| MatrixEntry { i, j, val: m[(i, j)].clone() })
            .collect();
        SymmetricFile { dim: n, entries }
    }
}

impl SymmetricFile {
    pub fn to_matrix(&self) -> Result<RatMatrix> {
        let mut m = RatMatrix::zeros(self.dim, self.dim);
        for e in &self.entries {
            if e.i >= self.dim || e.j >= self.dim {
                return Err(Error::Parse(format!("matrix entry ({}, {}) out of range", e.i, e.j)));
            }
            m[(e.i, e.j)] = e.val.clone();
            m[(e.j, e.i)] = e.val.clone();
        }
        Ok(m)
    }
}

/// An inner product plus curvature tensor on the same frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicSpec {
    pub format: u32,
    pub s: usize,
    pub gram: SymmetricFile,
    pub tensor: TensorFile,
}

impl AlgebraicSpec {
    pub fn new(s: usize, g: &InnerProduct, r: &CurvatureTensor) -> Self {
        AlgebraicSpec { format: FORMAT_VERSION, s, gram: g.gram().into(), tensor: r.into() }
    }

    pub fn build(&self) -> Result<(InnerProduct, CurvatureTensor)> {
        check_version(self.format)?;
        if self.gram.dim != self.tensor.dim {
            return Err(Error::Parse(format!(
                "gram dimension {} differs from tensor dimension {}",
                self.gram.dim, self.tensor.dim
            )));
        }
        let g = InnerProduct::new(self.gram.to_matrix()?)?;
        Ok((g, self.tensor.to_tensor()?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricEntry {
    pub i: usize,
    pub j: usize,
    pub poly: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricSpec {
    pub format: u32,
    pub s: usize,
    pub coords: Vec<String>,
    pub entries: Vec<MetricEntry>,
}

impl From<&PolynomialMetric> for MetricSpec {
    fn from(m: &PolynomialMetric) -> Self {
        MetricSpec {
            format: FORMAT_VERSION,
            s: m.chart().s(),
            coords: m.chart().coord_names(),
            entries: m
                .upper_entries()
                .into_iter()
                .map(|(i, j, p)| MetricEntry { i, j, poly: p.to_terms() })
                .collect(),
        }
    }
}

impl MetricSpec {
    pub fn build(&self) -> Result<PolynomialMetric> {
        check_version(self.format)?;
        let chart = Chart::new(self.s)?;
        if self.coords != chart.coord_names() {
            return Err(Error::Parse(format!(
                "coords {:?} do not match the chart order {:?}",
                self.coords,
                chart.coord_names()
            )));
        }
        let upper = self
            .entries
            .iter()
            .map(|e| Ok((e.i, e.j, Polynomial::from_terms(chart, e.poly.iter().cloned())?)))
            .collect::<Result<Vec<_>>>()?;
        PolynomialMetric::from_upper(chart, upper)
    }
}

/// Either kind of input file; distinguished by its keys.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecFile {
    Algebraic(AlgebraicSpec),
    Metric(MetricSpec),
}

fn check_version(v: u32) -> Result<()> {
    if v != FORMAT_VERSION {
        return Err(Error::Parse(format!("unsupported format version {v}")));
    }
    Ok(())
}

pub fn parse_spec(text: &str) -> Result<SpecFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_tensor(text: &str) -> Result<CurvatureTensor> {
    let f: TensorFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    f.to_tensor()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{constant_curvature_tensor, model_curvature, model_inner_product};
    use crate::geometry::{example_metric, realizing_metric};

    #[test]
    fn metric_file_shape() {
        let spec = MetricSpec::from(&example_metric());
        let json = serde_json::to_value(&spec).unwrap();
        assert_eq!(json["format"], 1);
        assert_eq!(json["coords"][3], "v_2");
        let e = &json["entries"][0];
        assert_eq!((e["i"].as_u64(), e["j"].as_u64()), (Some(0), Some(0)));
        assert_eq!(e["poly"][0]["coeff"], "-2");
        assert_eq!(e["poly"][0]["exps"], serde_json::json!([0, 1, 0, 0, 0, 1]));
        assert_eq!(spec.build().unwrap(), example_metric());
    }

    #[test]
    fn metric_roundtrip_lemma_family() {
        let m = realizing_metric(3, &constant_curvature_tensor(3)).unwrap();
        let text = serde_json::to_string(&MetricSpec::from(&m)).unwrap();
        match parse_spec(&text).unwrap() {
            SpecFile::Metric(spec) => assert_eq!(spec.build().unwrap(), m),
            other => panic!("parsed as {other:?}"),
        }
    }

    #[test]
    fn algebraic_roundtrip() {
        let s = 2;
        let r = model_curvature(&CurvatureTensor::zero(s), &constant_curvature_tensor(s)).unwrap();
        let g = model_inner_product(s, &RatMatrix::zeros(s, s)).unwrap();
        let text = serde_json::to_string(&AlgebraicSpec::new(s, &g, &r)).unwrap();
        assert!(text.contains("\"val\":\"-1\""));
        match parse_spec(&text).unwrap() {
            SpecFile::Algebraic(spec) => {
                let (g2, r2) = spec.build().unwrap();
                assert_eq!(g2.gram(), g.gram());
                assert_eq!(r2, r);
            }
            other => panic!("parsed as {other:?}"),
        }
    }

    #[test]
    fn bad_inputs_are_parse_errors() {
        assert!(matches!(parse_spec("{\"format\": 1}"), Err(Error::Parse(_))));
        let mut spec = MetricSpec::from(&example_metric());
        spec.format = 2;
        assert!(matches!(spec.build(), Err(Error::Parse(_))));
        let mut spec = MetricSpec::from(&example_metric());
        spec.coords.swap(0, 1);
        assert!(matches!(spec.build(), Err(Error::Parse(_))));
        assert!(matches!(parse_tensor("{\"dim\": 2, \"entries\": [{\"idx\": [0,1,0,1], \"val\": \"0.5\"}]}"), Err(Error::Parse(_))));
    }
}
