//! Whole-graph analysis and its JSON report.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pvt::{check_pvt_with, PvtVerdict};
use crate::scheme::{antipodality, eigen_data, krein, tightness, verify_drg_with, DrgParameters, EigenData, Tightness};
use crate::spectra::{graph_spectrum, subconstituent_spectrum, Spectrum};
use crate::terwilliger::terwilliger_algebra;
use crate::tmodules::{
    decompose, decompose_at4_with, dimension_sequence, wedderburn_dim, At4Data, DimensionSequence, ModuleDecomposition,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexSelector {
    One(usize),
    All,
}

#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    pub vertices: VertexSelector,
    /// Accept eigenvalues that could not be certified exactly.
    pub allow_float: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { vertices: VertexSelector::One(0), allow_float: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphInfo {
    pub label: Option<String>,
    pub n: usize,
    pub intersection_array: String,
    pub parameters: DrgParameters,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenRecord {
    pub theta: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct KreinRecord {
    pub exact: bool,
    pub q_polynomial_orderings: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TightnessRecord {
    pub applicable: bool,
    pub reason: Option<String>,
    pub value: Option<Tightness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexRecord {
    pub vertex: usize,
    /// `Spec(Δ_i(x))` for `i = 1..D`.
    pub subconstituent_spectra: Vec<Spectrum>,
    pub dim_t: usize,
    pub block_dims: Vec<Vec<usize>>,
    pub dimension_sequence: Option<DimensionSequence>,
    pub wedderburn_dim: Option<usize>,
    pub decomposition: Option<ModuleDecomposition>,
    pub at4: Option<At4Data>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub exact: bool,
    /// Values that are floating-point estimates.
    pub float_values: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub tool: ToolInfo,
    pub graph: GraphInfo,
    pub spectrum: Spectrum,
    pub eigenvalues: Vec<EigenRecord>,
    pub krein: KreinRecord,
    pub antipodal: bool,
    pub tightness: TightnessRecord,
    pub pvt: PvtVerdict,
    pub vertices: Vec<VertexRecord>,
    pub provenance: Provenance,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn float_values(spec: &Spectrum, what: &str, out: &mut Vec<String>) {
    for (v, m) in spec.pairs() {
        if !v.is_exact() {
            out.push(format!("{what}: {v}^{m}"));
        }
    }
}

fn vertex_record(g: &Graph, x: usize, params: &DrgParameters, ed: &EigenData) -> Result<VertexRecord> {
    let spectra = (1..=params.diameter)
        .map(|i| subconstituent_spectrum(g, x, i))
        .collect::<Result<Vec<_>>>()?;
    let t = terwilliger_algebra(g, x)?;
    let (decomposition, at4) = if params.at4_shape().is_some() {
        let (md, data) = decompose_at4_with(g, x, params, ed)?;
        (Some(md), Some(data))
    } else {
        (decompose(g, x, params, ed)?, None)
    };
    let ds = match (&decomposition, params.srg_params()) {
        (Some(md), Some(p)) => Some(dimension_sequence(md, &p)),
        _ => None,
    };
    let wd = decomposition.as_ref().map(wedderburn_dim);
    if let Some(w) = wd {
        if w != t.dim {
            return Err(Error::Classification(format!(
                "vertex {x}: Wedderburn sum {w} differs from closure dimension {}",
                t.dim
            )));
        }
    }
    Ok(VertexRecord {
        vertex: x,
        subconstituent_spectra: spectra,
        dim_t: t.dim,
        block_dims: t.block_dims,
        dimension_sequence: ds,
        wedderburn_dim: wd,
        decomposition,
        at4,
    })
}

/// Full analysis of a distance-regular graph.
///
/// Fails on graphs that are not distance-regular, and on spectra that could
/// not be certified exactly unless `allow_float` is set.
pub fn analyze(g: &Graph, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let dd = g.distances()?;
    let params = verify_drg_with(&dd)?;
    let ed = eigen_data(&params)?;
    let spectrum = graph_spectrum(g);
    let mut floats = Vec::new();
    float_values(&spectrum, "spectrum", &mut floats);
    let vertices: Vec<usize> = match opts.vertices {
        VertexSelector::One(x) => {
            g.check_vertex(x)?;
            vec![x]
        }
        VertexSelector::All => (0..g.n()).collect(),
    };
    let records = vertices
        .par_iter()
        .map(|&x| vertex_record(g, x, &params, &ed))
        .collect::<Result<Vec<_>>>()?;
    for r in &records {
        for (i, s) in r.subconstituent_spectra.iter().enumerate() {
            float_values(s, &format!("Δ{}({})", i + 1, r.vertex), &mut floats);
        }
    }
    if !floats.is_empty() && !opts.allow_float {
        return Err(Error::FloatMode(format!(
            "{} could not be certified exactly; rerun with float fallback enabled",
            floats.join(", ")
        )));
    }
    let kd = krein(&ed, &params)?;
    let tight = if params.diameter < 3 {
        TightnessRecord { applicable: false, reason: Some("diameter below 3".into()), value: None }
    } else {
        match tightness(&params, &ed) {
            Ok(t) => TightnessRecord { applicable: true, reason: None, value: Some(t) },
            Err(Error::Bipartite) => {
                TightnessRecord { applicable: false, reason: Some(Error::Bipartite.to_string()), value: None }
            }
            Err(e) => return Err(e),
        }
    };
    let pvt = check_pvt_with(g, &params)?;
    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        tool: ToolInfo { name: env!("CARGO_PKG_NAME"), version: env!("CARGO_PKG_VERSION") },
        graph: GraphInfo {
            label: g.label().map(str::to_string),
            n: g.n(),
            intersection_array: params.to_string(),
            parameters: params.clone(),
        },
        spectrum,
        eigenvalues: ed
            .theta
            .iter()
            .zip(&ed.mult)
            .map(|(t, m)| EigenRecord { theta: t.to_string(), multiplicity: *m })
            .collect(),
        krein: KreinRecord { exact: kd.exact, q_polynomial_orderings: kd.qpoly_orderings },
        antipodal: antipodality(&dd).is_some(),
        tightness: tight,
        pvt,
        vertices: records,
        provenance: Provenance { exact: floats.is_empty() && ed.exact, float_values: floats },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::construct;

    #[test]
    fn shrikhande_all_vertices() {
        let g = construct("shrikhande", &[]).unwrap();
        let r = analyze(&g, &AnalyzeOptions { vertices: VertexSelector::All, allow_float: false }).unwrap();
        assert_eq!(r.vertices.len(), 16);
        assert!(r.vertices.iter().all(|v| v.dim_t == 20 && v.wedderburn_dim == Some(20)));
        assert_eq!(r.to_json(), analyze(&g, &AnalyzeOptions { vertices: VertexSelector::All, allow_float: false }).unwrap().to_json());
    }

    #[test]
    fn johnson_8_4_single() {
        let g = construct("johnson", &[8, 4]).unwrap();
        let r = analyze(&g, &AnalyzeOptions::default()).unwrap();
        let v = &r.vertices[0];
        assert_eq!(v.at4.as_ref().unwrap().ell() + 43, v.dim_t);
        assert!(r.tightness.value.as_ref().unwrap().is_tight);
        assert!(r.antipodal);
    }
}
