//! Pseudo-vertex-transitivity and T-isomorphism verdicts.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scheme::{verify_drg, verify_drg_with, DrgParameters};
use crate::spectra::{cospectral, subconstituent_spectrum, Spectrum};
use crate::terwilliger::terwilliger_dim;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pvt,
    NotPvt,
    NecessaryConditionsPass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    SrgTheorem,
    TaylorTheorem,
    At4Theorem,
    GenericNecessary,
}

/// Two vertices and what differs between them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub x: usize,
    pub y: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PvtVerdict {
    pub verdict: Verdict,
    pub method: Method,
    pub witness: Option<Witness>,
}

impl PvtVerdict {
    fn pass(verdict: Verdict, method: Method) -> Self {
        PvtVerdict { verdict, method, witness: None }
    }
}

/// Spectra of `Δ_i(x)` for every vertex, in vertex order.
fn all_spectra(g: &Graph, i: usize) -> Result<Vec<Spectrum>> {
    (0..g.n()).into_par_iter().map(|x| subconstituent_spectrum(g, x, i)).collect()
}

fn first_difference(spectra: &[Spectrum], i: usize) -> Option<Witness> {
    let y = spectra.iter().position(|s| !cospectral(s, &spectra[0]))?;
    Some(Witness {
        x: 0,
        y,
        detail: format!("Spec(Δ{i}(0)) = {} but Spec(Δ{i}({y})) = {}", spectra[0], spectra[y]),
    })
}

/// Decides pseudo-vertex-transitivity where a theorem applies (diameter 2,
/// Taylor graphs, AT4(p, q, 2) graphs) and otherwise runs the necessary
/// conditions: equal subconstituent spectra and constant `dim T(x)`.
pub fn check_pvt(g: &Graph) -> Result<PvtVerdict> {
    let params = verify_drg(g)?;
    check_pvt_with(g, &params)
}

pub(crate) fn check_pvt_with(g: &Graph, params: &DrgParameters) -> Result<PvtVerdict> {
    if params.diameter == 2 {
        let spectra = all_spectra(g, 1)?;
        return Ok(match first_difference(&spectra, 1) {
            None => PvtVerdict::pass(Verdict::Pvt, Method::SrgTheorem),
            Some(w) => PvtVerdict { verdict: Verdict::NotPvt, method: Method::SrgTheorem, witness: Some(w) },
        });
    }
    if params.taylor_shape().is_some_and(|(k, b)| b + 1 < k) && !params.is_bipartite() {
        return Ok(PvtVerdict::pass(Verdict::Pvt, Method::TaylorTheorem));
    }
    if params.at4_shape().is_some() && !params.is_bipartite() {
        return Ok(PvtVerdict::pass(Verdict::Pvt, Method::At4Theorem));
    }
    for i in 1..=params.diameter {
        if let Some(w) = first_difference(&all_spectra(g, i)?, i) {
            return Ok(PvtVerdict { verdict: Verdict::NotPvt, method: Method::GenericNecessary, witness: Some(w) });
        }
    }
    let dims: Vec<usize> = (0..g.n()).into_par_iter().map(|x| terwilliger_dim(g, x)).collect::<Result<_>>()?;
    if let Some(y) = dims.iter().position(|&d| d != dims[0]) {
        let detail = format!("dim T(0) = {} but dim T({y}) = {}", dims[0], dims[y]);
        return Ok(PvtVerdict {
            verdict: Verdict::NotPvt,
            method: Method::GenericNecessary,
            witness: Some(Witness { x: 0, y, detail }),
        });
    }
    Ok(PvtVerdict::pass(Verdict::NecessaryConditionsPass, Method::GenericNecessary))
}

/// Outcome of [`t_isomorphic_srg`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TIsoResult {
    pub isomorphic: bool,
    pub witness: Option<String>,
    pub note: Option<String>,
}

fn require_srg(g: &Graph) -> Result<DrgParameters> {
    let dd = g.distances()?;
    let params = verify_drg_with(&dd).map_err(|e| Error::NotSrg(e.to_string()))?;
    if params.diameter != 2 {
        return Err(Error::NotSrg(format!("diameter {}", params.diameter)));
    }
    Ok(params)
}

fn sorted_local_spectra(g: &Graph) -> Result<Vec<(String, usize)>> {
    let mut s: Vec<(String, usize)> = all_spectra(g, 1)?
        .into_iter()
        .enumerate()
        .map(|(x, sp)| (sp.to_string(), x))
        .collect();
    s.sort();
    Ok(s)
}

/// Whether two strongly regular graphs are T-isomorphic: equal parameters
/// and matching local spectra. For graphs that are not both
/// pseudo-vertex-transitive the multisets of per-vertex local spectra are
/// compared.
pub fn t_isomorphic_srg(g1: &Graph, g2: &Graph) -> Result<TIsoResult> {
    let (p1, p2) = (require_srg(g1)?, require_srg(g2)?);
    if p1 != p2 {
        return Ok(TIsoResult {
            isomorphic: false,
            witness: Some(format!("parameters {p1} and {p2} differ")),
            note: None,
        });
    }
    let (s1, s2) = (sorted_local_spectra(g1)?, sorted_local_spectra(g2)?);
    let pvt = |s: &[(String, usize)]| s.iter().all(|(v, _)| *v == s[0].0);
    let note = (!(pvt(&s1) && pvt(&s2)))
        .then(|| "not both pseudo-vertex-transitive: compared multisets of local spectra".to_string());
    let missing = |a: &[(String, usize)], b: &[(String, usize)], which: (&str, &str)| {
        a.iter().find(|(v, _)| !b.iter().any(|(u, _)| u == v)).map(|(v, x)| {
            format!("local spectrum {v} at vertex {x} of {} does not occur in {}", which.0, which.1)
        })
    };
    let witness = missing(&s1, &s2, ("the first graph", "the second"))
        .or_else(|| missing(&s2, &s1, ("the second graph", "the first")))
        .or_else(|| {
            let a: Vec<&String> = s1.iter().map(|(v, _)| v).collect();
            let b: Vec<&String> = s2.iter().map(|(v, _)| v).collect();
            (a != b).then(|| "local spectra occur with different frequencies".to_string())
        });
    Ok(TIsoResult { isomorphic: witness.is_none(), witness, note })
}

/// `dim T(x)` for the point graph of a generalized quadrangle of order
/// `(s, t)`.
pub fn gq_dim(s: usize, t: usize) -> usize {
    match (s == 1, t == 1) {
        (true, true) => 10,
        (false, true) => 15,
        (true, false) => 11,
        (false, false) if s * s == t => 15,
        (false, false) => 16,
    }
}
