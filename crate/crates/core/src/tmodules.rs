//! Irreducible `T(x)`-module classes for strongly regular graphs, Taylor
//! graphs and AT4(p, q, 2) graphs, described by eigendata only.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{AlgebraicScalar, ExactMatrix, IntMatrix};
use crate::graph::Graph;
use crate::scheme::{eigen_data, tightness, verify_drg, DrgParameters, EigenData};
use crate::spectra::{
    local_duality_check, local_part, second_sigma_tau, subconstituent_spectrum, Spectrum, SrgParams, FLOAT_MATCH_TOL,
};

/// One isomorphism class of thin irreducible modules.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModuleDescriptor {
    pub endpoint: usize,
    pub dual_endpoint: usize,
    pub diameter: usize,
    pub dim: usize,
    pub local_eigenvalue: Option<AlgebraicScalar>,
    /// `a_0(W)..a_d(W)`
    pub a_seq: Vec<AlgebraicScalar>,
    /// `x_1(W)..x_d(W)`
    pub x_seq: Vec<AlgebraicScalar>,
    pub multiplicity: usize,
}

impl ModuleDescriptor {
    fn thin(
        endpoint: usize,
        dual_endpoint: usize,
        local_eigenvalue: Option<AlgebraicScalar>,
        a_seq: Vec<AlgebraicScalar>,
        x_seq: Vec<AlgebraicScalar>,
        multiplicity: usize,
    ) -> Self {
        let diameter = a_seq.len() - 1;
        ModuleDescriptor {
            endpoint,
            dual_endpoint,
            diameter,
            dim: diameter + 1,
            local_eigenvalue,
            a_seq,
            x_seq,
            multiplicity,
        }
    }

    /// Matrix of `A` on the basis `w_i = E*_{r+i} A w_{i-1}`: `a_i(W)` on the
    /// diagonal, ones below, `x_i(W)` above.
    pub fn action_matrix(&self) -> ExactMatrix {
        let s = self.dim;
        ExactMatrix::from_fn(s, s, |i, j| {
            if i == j {
                self.a_seq[i].clone()
            } else if i == j + 1 {
                AlgebraicScalar::one()
            } else if j == i + 1 {
                self.x_seq[i].clone()
            } else {
                AlgebraicScalar::zero()
            }
        })
    }

    /// `Σ a_i(W) = Σ θ_{t+i}`.
    pub fn satisfies_sum_rule(&self, theta: &[AlgebraicScalar]) -> bool {
        let Some(window) = theta.get(self.dual_endpoint..=self.dual_endpoint + self.diameter) else {
            return false;
        };
        let lhs: AlgebraicScalar = self.a_seq.iter().cloned().sum();
        let rhs: AlgebraicScalar = window.iter().cloned().sum();
        lhs.approx_eq(&rhs, FLOAT_MATCH_TOL)
    }

    /// `a_i(W) = a_{d-i}(W)`.
    pub fn is_palindromic(&self) -> bool {
        let d = self.diameter;
        (0..=d).all(|i| self.a_seq[i].approx_eq(&self.a_seq[d - i], FLOAT_MATCH_TOL))
    }
}

/// The standard module split into classes of irreducible modules.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModuleDecomposition {
    pub n: usize,
    pub descriptors: Vec<ModuleDescriptor>,
    /// Identities checked along the way that are worth reporting.
    pub notes: Vec<String>,
}

impl ModuleDecomposition {
    fn new(n: usize, mut descriptors: Vec<ModuleDescriptor>, notes: Vec<String>) -> Self {
        descriptors.retain(|d| d.multiplicity > 0);
        descriptors.sort_by(|x, y| {
            x.endpoint.cmp(&y.endpoint).then(x.dim.cmp(&y.dim)).then_with(|| match (&x.local_eigenvalue, &y.local_eigenvalue) {
                (Some(a), Some(b)) => b.cmp_value(a),
                (None, Some(_)) => std::cmp::Ordering::Less,
                (Some(_), None) => std::cmp::Ordering::Greater,
                (None, None) => std::cmp::Ordering::Equal,
            })
        });
        ModuleDecomposition { n, descriptors, notes }
    }

    /// `Σ multiplicity·dim`.
    pub fn total_dim(&self) -> usize {
        self.descriptors.iter().map(|d| d.multiplicity * d.dim).sum()
    }

    pub fn classes_with(&self, endpoint: usize, dim: usize) -> impl Iterator<Item = &ModuleDescriptor> {
        self.descriptors.iter().filter(move |d| d.endpoint == endpoint && d.dim == dim)
    }

    pub fn primary(&self) -> Option<&ModuleDescriptor> {
        self.descriptors.iter().find(|d| d.endpoint == 0)
    }

    /// Checks completeness, the single primary class and the per-class
    /// identities.
    pub fn validate(&self, theta: &[AlgebraicScalar], antipodal: bool) -> Result<()> {
        let bad = |msg: String| Err(Error::Classification(msg));
        if self.total_dim() != self.n {
            return bad(format!("Σ multiplicity·dim = {} but n = {}", self.total_dim(), self.n));
        }
        let primaries: Vec<_> = self.descriptors.iter().filter(|d| d.endpoint == 0).collect();
        if primaries.len() != 1 || primaries[0].multiplicity != 1 {
            return bad("expected exactly one primary class of multiplicity 1".into());
        }
        for d in &self.descriptors {
            if d.a_seq.len() != d.diameter + 1 || d.x_seq.len() != d.diameter || d.dim != d.diameter + 1 {
                return bad(format!("class at endpoint {} has inconsistent lengths", d.endpoint));
            }
            if !d.satisfies_sum_rule(theta) {
                return bad(format!(
                    "class at endpoint {} (dual endpoint {}) breaks Σ a_i(W) = Σ θ_(t+i)",
                    d.endpoint, d.dual_endpoint
                ));
            }
            if antipodal && !d.is_palindromic() {
                return bad(format!("class at endpoint {} is not palindromic", d.endpoint));
            }
        }
        Ok(())
    }
}

/// Counts `(ℓ₁, ℓ₁′, ℓ₂, ℓ₂′)` of the non-primary classes of a strongly
/// regular graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionSequence {
    pub l1: usize,
    pub l1p: usize,
    pub l2: usize,
    pub l2p: usize,
}

impl std::fmt::Display for DimensionSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.l1, self.l1p, self.l2, self.l2p)
    }
}

/// Dimension of `T(x)` from its classes: `Σ dim²`.
pub fn wedderburn_dim(md: &ModuleDecomposition) -> usize {
    md.descriptors.iter().map(|d| d.dim * d.dim).sum()
}

/// `ℓ₁ + ℓ₂ + 4ℓ₁′ + 9`.
pub fn srg_dim_formula(ds: &DimensionSequence) -> usize {
    ds.l1 + ds.l2 + 4 * ds.l1p + 9
}

/// Same count with `ℓ₂′` in place of `ℓ₁′`.
pub fn srg_dim_formula_second(ds: &DimensionSequence) -> usize {
    ds.l1 + ds.l2 + 4 * ds.l2p + 9
}

/// Dimension sequence of a decomposition produced by [`decompose_srg`].
/// `ℓ₂′` counts the distinct `Δ₂(x)` local eigenvalues outside `{σ, τ}`,
/// which are the values `a₁(W)` of the two-dimensional classes.
pub fn dimension_sequence(md: &ModuleDecomposition, p: &SrgParams) -> DimensionSequence {
    let count = |endpoint, dim| md.classes_with(endpoint, dim).count();
    let mut second: Vec<&AlgebraicScalar> = md.classes_with(1, 2).map(|d| &d.a_seq[1]).collect();
    second.retain(|v| !p.is_sigma_or_tau(v));
    second.dedup_by(|a, b| a.approx_eq(b, FLOAT_MATCH_TOL));
    DimensionSequence { l1: count(1, 1), l1p: count(1, 2), l2: count(2, 1), l2p: second.len() }
}

fn int(v: i64) -> AlgebraicScalar {
    AlgebraicScalar::from_int(v)
}

fn sigma_tau_index(v: &AlgebraicScalar, p: &SrgParams) -> usize {
    if v.approx_eq(p.sigma(), FLOAT_MATCH_TOL) {
        1
    } else {
        2
    }
}

/// `x_i = b_{i-1} c_i` and `a_i` of the primary module.
fn primary_descriptor(params: &DrgParameters) -> ModuleDescriptor {
    let a = params.a.iter().map(|&v| int(v as i64)).collect();
    let x = (1..=params.diameter).map(|i| int((params.b[i - 1] * params.c[i - 1]) as i64)).collect();
    ModuleDescriptor::thin(0, 0, None, a, x, 1)
}

/// Classes of `T(x)`-modules of a strongly regular graph.
///
/// Each local eigenvalue `λ ∉ {σ, τ}` of `Δ(x)` gives a two-dimensional
/// class; σ and τ in `Δ(x)` and in `Δ₂(x)` give one-dimensional classes at
/// endpoints 1 and 2. The `Δ₂(x)` multiplicities of σ and τ must agree with
/// the values forced by `Δ(x)`.
pub fn decompose_srg(g: &Graph, x: usize, p: &SrgParams) -> Result<ModuleDecomposition> {
    g.check_vertex(x)?;
    if g.n() != p.n || g.regular_degree() != Some(p.k) {
        return Err(Error::NotSrg(format!("graph does not have parameters {p}")));
    }
    let s1 = subconstituent_spectrum(g, x, 1)?;
    let s2 = subconstituent_spectrum(g, x, 2)?;
    decompose_srg_spectra(&s1, &s2, p)
}

/// [`decompose_srg`] from the two subconstituent spectra.
pub fn decompose_srg_spectra(s1: &Spectrum, s2: &Spectrum, p: &SrgParams) -> Result<ModuleDecomposition> {
    if s1.total() != p.k || s2.total() != p.n - p.k - 1 {
        return Err(Error::InconsistentSpectrum(format!(
            "subconstituent sizes {} and {} do not fit {p}",
            s1.total(),
            s2.total()
        )));
    }
    let l1 = local_part(s1, p.a)?;
    let l2 = local_part(s2, p.k - p.c)?;
    if !local_duality_check(s1, s2, p) {
        return Err(Error::Classification(format!(
            "local eigenvalues of {s1} and {s2} do not correspond under λ ↦ {} - λ",
            p.a_minus_c()
        )));
    }
    let (g_sigma, g_tau) = second_sigma_tau(s1, p)?;
    if l2.mult(p.sigma()) != g_sigma || l2.mult(p.tau()) != g_tau {
        return Err(Error::InconsistentSpectrum(format!(
            "Δ₂ has σ, τ multiplicities {}, {} but Δ forces {g_sigma}, {g_tau}",
            l2.mult(p.sigma()),
            l2.mult(p.tau())
        )));
    }
    let params = DrgParameters::from_array(&[p.k, p.k - p.a - 1], &[1, p.c])?;
    let mut out = vec![primary_descriptor(&params)];
    let s_plus_t = p.a_minus_c();
    for (lambda, m) in l1.pairs() {
        if p.is_sigma_or_tau(lambda) {
            out.push(ModuleDescriptor::thin(
                1,
                sigma_tau_index(lambda, p),
                Some(lambda.clone()),
                vec![lambda.clone()],
                vec![],
                *m,
            ));
        } else {
            let x1 = -(&(lambda - p.sigma()) * &(lambda - p.tau()));
            out.push(ModuleDescriptor::thin(
                1,
                1,
                Some(lambda.clone()),
                vec![lambda.clone(), &s_plus_t - lambda],
                vec![x1],
                *m,
            ));
        }
    }
    for (lambda, m) in [(p.sigma(), g_sigma), (p.tau(), g_tau)] {
        out.push(ModuleDescriptor::thin(
            2,
            sigma_tau_index(lambda, p),
            Some(lambda.clone()),
            vec![lambda.clone()],
            vec![],
            m,
        ));
    }
    let md = ModuleDecomposition::new(p.n, out, vec![]);
    md.validate(&[int(p.k as i64), p.sigma().clone(), p.tau().clone()], false)?;
    Ok(md)
}

/// Whether `σ = (θ₁+θ₂)/2` and whether `σ = (θ₁-θ₂)/2`, for the Taylor
/// graph with array `{k, b, 1; 1, b, k}`.
pub fn taylor_sigma_forms(k: usize, b: usize) -> (bool, bool) {
    let (theta, sigma, _) = taylor_eigenvalues(k, b);
    let half = AlgebraicScalar::from_frac(1, 2);
    let sum = &(&theta[1] + &theta[2]) * &half;
    let diff = &(&theta[1] - &theta[2]) * &half;
    (sum == sigma, diff == sigma)
}

/// `(θ₀..θ₃, σ, τ)` with `θ₁,₃ = (k-2b-1 ± √𝒟)/2`, `θ₂ = -1`,
/// `σ, τ = (k-2b-3 ± √𝒟)/4` and `𝒟 = (k-2b-1)² + 4k`.
fn taylor_eigenvalues(k: usize, b: usize) -> (Vec<AlgebraicScalar>, AlgebraicScalar, AlgebraicScalar) {
    let (k, b) = (k as i64, b as i64);
    let s = k - 2 * b - 1;
    let disc = (s * s + 4 * k) as u64;
    let root = AlgebraicScalar::sqrt_int(disc);
    let half = AlgebraicScalar::from_frac(1, 2);
    let quarter = AlgebraicScalar::from_frac(1, 4);
    let theta = vec![
        int(k),
        &(&int(s) + &root) * &half,
        int(-1),
        &(&int(s) - &root) * &half,
    ];
    let sigma = &(&int(s - 2) + &root) * &quarter;
    let tau = &(&int(s - 2) - &root) * &quarter;
    (theta, sigma, tau)
}

/// Classes for a Taylor graph `{k, b, 1; 1, b, k}`: the primary module and
/// two-dimensional classes at endpoint 1 for σ and τ.
pub fn decompose_taylor(g: &Graph, x: usize, k: usize, b: usize) -> Result<ModuleDecomposition> {
    let params = verify_drg(g)?;
    if params.taylor_shape() != Some((k, b)) {
        return Err(Error::NotTaylor(format!("array {params} is not {{{k},{b},1;1,{b},{k}}}")));
    }
    let ed = eigen_data(&params)?;
    decompose_taylor_with(g, x, &params, &ed)
}

pub(crate) fn decompose_taylor_with(
    g: &Graph,
    x: usize,
    params: &DrgParameters,
    ed: &EigenData,
) -> Result<ModuleDecomposition> {
    let (k, b) = params
        .taylor_shape()
        .ok_or_else(|| Error::NotTaylor(format!("array {params} does not have the form {{k,b,1;1,b,k}}")))?;
    if b + 1 >= k {
        return Err(Error::NotTaylor(format!("need b < k - 1, got k = {k}, b = {b}")));
    }
    if params.is_bipartite() {
        return Err(Error::Bipartite);
    }
    let (theta, sigma, tau) = taylor_eigenvalues(k, b);
    if theta != ed.theta {
        return Err(Error::Classification(format!(
            "eigenvalues {:?} differ from the closed forms",
            ed.theta.iter().map(ToString::to_string).collect::<Vec<_>>()
        )));
    }
    let two = int(2);
    if &two * &sigma != &theta[1] + &theta[2] || &two * &tau != &theta[2] + &theta[3] {
        return Err(Error::Classification("2σ = θ₁+θ₂ or 2τ = θ₂+θ₃ fails".into()));
    }
    let t = tightness(params, ed)?;
    if t.b_plus != sigma || t.b_minus != tau {
        return Err(Error::Classification(format!(
            "b+ = {}, b- = {} but σ = {sigma}, τ = {tau}",
            t.b_plus, t.b_minus
        )));
    }

    // m_σ = (k-1)/2 - (k+1)(k-2b-1)/(2√𝒟)
    let (ki, bi) = (k as i64, b as i64);
    let s = ki - 2 * bi - 1;
    let root = AlgebraicScalar::sqrt_int((s * s + 4 * ki) as u64);
    let corr = int((ki + 1) * s).checked_div(&(&two * &root)).expect("𝒟 > 0");
    let m_sigma = &AlgebraicScalar::from_frac(ki - 1, 2) - &corr;
    let m_sigma = m_sigma
        .as_integer()
        .and_then(|v| v.to_usize())
        .filter(|&v| v < k)
        .ok_or_else(|| Error::InconsistentSpectrum(format!("m_σ = {m_sigma} is not a multiplicity")))?;
    let m_tau = k - 1 - m_sigma;

    let local = local_part(&subconstituent_spectrum(g, x, 1)?, params.a[1])?;
    if local.mult(&sigma) != m_sigma || local.mult(&tau) != m_tau {
        return Err(Error::InconsistentSpectrum(format!(
            "local spectrum {local} does not have σ^{m_sigma}, τ^{m_tau}"
        )));
    }

    let half = AlgebraicScalar::from_frac(1, 2);
    let diff = &(&theta[1] - &theta[2]) * &half;
    let mut notes = vec![format!("2σ = θ₁+θ₂ and 2τ = θ₂+θ₃ hold; σ = {sigma} equals b+")];
    if diff != sigma {
        notes.push(format!("(θ₁-θ₂)/2 = {diff} differs from σ = {sigma}"));
    }
    let square = |v: AlgebraicScalar| &v * &v;
    let out = vec![
        primary_descriptor(params),
        ModuleDescriptor::thin(
            1,
            1,
            Some(sigma.clone()),
            vec![sigma.clone(), sigma.clone()],
            vec![square(&sigma - &theta[1])],
            m_sigma,
        ),
        ModuleDescriptor::thin(
            1,
            2,
            Some(tau.clone()),
            vec![tau.clone(), tau.clone()],
            vec![square(&tau - &theta[2])],
            m_tau,
        ),
    ];
    let md = ModuleDecomposition::new(g.n(), out, notes);
    md.validate(&theta, true)?;
    Ok(md)
}

/// Quantities of an AT4(p, q, 2) graph at one vertex.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct At4Data {
    pub p: usize,
    pub q: usize,
    /// Parameters of the local graph `Δ(x)`.
    pub local_params: (usize, usize, usize, usize),
    pub m_b_plus: usize,
    pub m_b_minus: usize,
    /// `a₁(W)` for `λ = p` and `λ = -q`.
    pub a1_plus: AlgebraicScalar,
    pub a1_minus: AlgebraicScalar,
    pub second_spectrum: Spectrum,
    /// `Δ₂(x)` spectrum without `a₂` and the endpoint-1 images.
    pub residual: Spectrum,
    /// Endpoint-2 multiplicities from the trace system, indexed by `θ₁..θ₄`.
    pub trace_multiplicities: Vec<usize>,
}

impl At4Data {
    /// Number of endpoint-2 classes.
    pub fn ell(&self) -> usize {
        self.residual.distinct()
    }
}

/// Classes for an AT4(p, q, 2) graph: primary, two three-dimensional
/// classes at endpoint 1 (local eigenvalues `p` and `-q`), and one
/// one-dimensional class at endpoint 2 per eigenvalue of `E*₂AE*₂` left on
/// the complement of the lower-endpoint modules.
pub fn decompose_at4(g: &Graph, x: usize, p: usize, q: usize) -> Result<ModuleDecomposition> {
    let params = verify_drg(g)?;
    if params.at4_shape() != Some((p, q)) {
        return Err(Error::NotAt4(format!("array {params} is not that of AT4({p},{q},2)")));
    }
    let ed = eigen_data(&params)?;
    Ok(decompose_at4_with(g, x, &params, &ed)?.0)
}

pub(crate) fn decompose_at4_with(
    g: &Graph,
    x: usize,
    params: &DrgParameters,
    ed: &EigenData,
) -> Result<(ModuleDecomposition, At4Data)> {
    let (p, q) = params
        .at4_shape()
        .ok_or_else(|| Error::NotAt4(format!("array {params} does not have the AT4(p,q,2) form")))?;
    let (pi, qi) = (p as i64, q as i64);
    let s = pi * qi + pi + qi;
    let theta: Vec<AlgebraicScalar> = [qi * s, s, pi, -qi, -qi * qi].into_iter().map(int).collect();
    if theta != ed.theta {
        return Err(Error::NotAt4("eigenvalues differ from (q(pq+p+q), pq+p+q, p, -q, -q²)".into()));
    }

    // local graph SRG(q(pq+p+q), p(q+1), 2p-q, p)
    let dist = g.bfs(x);
    let layer = |i: usize| -> Vec<usize> { (0..g.n()).filter(|&y| dist[y] == Some(i)).collect() };
    let local = g.induced_subgraph(&layer(1))?;
    let lp = verify_drg(&local)
        .ok()
        .filter(|lp| lp.diameter == 2)
        .ok_or_else(|| Error::NotAt4("local graph is not strongly regular".into()))?;
    let expected = (qi * s, pi * (qi + 1), 2 * pi - qi, pi);
    let found = (lp.n() as i64, lp.k as i64, lp.a[1] as i64, lp.c[1] as i64);
    if found != expected {
        return Err(Error::NotAt4(format!("local graph parameters {found:?}, expected {expected:?}")));
    }
    let (m_plus, m_minus) = ((qi * qi - 1) * s / (pi + qi), pi * qi * (qi + 1) * (pi + 1) / (pi + qi));
    let local_spec = local_part(&crate::spectra::graph_spectrum(&local), lp.k)?;
    if local_spec.mult(&int(pi)) as i64 != m_plus || local_spec.mult(&int(-qi)) as i64 != m_minus {
        return Err(Error::InconsistentSpectrum(format!(
            "local spectrum {local_spec} lacks p^{m_plus}, (-q)^{m_minus}"
        )));
    }

    // a₁(W) = θ_t + θ_{t+1} + θ_{t+2} - 2λ, with t = 1 for λ = p and t = 2 for λ = -q
    let window = |t: usize| &(&theta[t] + &theta[t + 1]) + &theta[t + 2];
    let lambdas = [(int(pi), 1usize, m_plus as usize), (int(-qi), 2, m_minus as usize)];
    let (a1, b1, c2) = (params.a[1] as i64, params.b[1] as i64, params.c[1] as i64);
    let (la, lc) = (lp.a[1] as i64, lp.c[1] as i64);
    let mut out = vec![primary_descriptor(params)];
    let mut images = Vec::new();
    for (lambda, t, m) in &lambdas {
        let a1w = &window(*t) - &(&int(2) * lambda);
        // ‖E*₂Aw‖²/‖w‖² for a local eigenvector w ⊥ 1, by counting common
        // neighbours of two vertices of Δ(x) inside Γ₂(x)
        let x1 = &(&int(b1) + &(&int(a1 - 1 - la) * lambda)) - &(&int(c2 - 1 - lc) * &(lambda + &int(1)));
        let x2 = &(&(&a1w * lambda) - &(&theta[*t] * &theta[t + 2])) - &x1;
        images.push((a1w.clone(), *m));
        out.push(ModuleDescriptor::thin(
            1,
            *t,
            Some(lambda.clone()),
            vec![lambda.clone(), a1w, lambda.clone()],
            vec![x1, x2],
            *m,
        ));
    }

    let sub2 = g.induced_subgraph(&layer(2))?;
    let s2 = crate::spectra::graph_spectrum(&sub2);
    if s2.distinct() > 7 {
        return Err(Error::Classification(format!("Δ₂ spectrum {s2} has more than 7 distinct eigenvalues")));
    }
    let mut residual = s2.without_one(&int(params.a[2] as i64))?;
    for (v, m) in &images {
        residual = remove_copies(&residual, v, *m)?;
    }
    let mut notes = Vec::new();
    let literal = s2.without_one(&int(params.a[2] as i64))?.distinct();
    if literal != residual.distinct() {
        notes.push(format!(
            "Δ₂ has {literal} distinct eigenvalues besides a₂, of which {} are a₁(W) of endpoint-1 classes; {} endpoint-2 classes remain",
            literal - residual.distinct(),
            residual.distinct()
        ));
    }

    let trace_mults = endpoint2_trace_system(&sub2, params, &theta[1..], &images)?;
    for (i, th) in theta[1..].iter().enumerate() {
        if residual.mult(th) != trace_mults[i] {
            return Err(Error::InconsistentSpectrum(format!(
                "trace system gives multiplicity {} for {th}, residual spectrum {residual} gives {}",
                trace_mults[i],
                residual.mult(th)
            )));
        }
    }
    for (eta, m) in residual.pairs() {
        let t = theta
            .iter()
            .skip(1)
            .position(|th| th == eta)
            .ok_or_else(|| Error::Classification(format!("endpoint-2 eigenvalue {eta} is not among θ₁..θ₄")))?
            + 1;
        out.push(ModuleDescriptor::thin(2, t, Some(eta.clone()), vec![eta.clone()], vec![], *m));
    }
    let md = ModuleDecomposition::new(g.n(), out, notes);
    md.validate(&theta, true)?;
    let data = At4Data {
        p,
        q,
        local_params: (lp.n(), lp.k, lp.a[1], lp.c[1]),
        m_b_plus: m_plus as usize,
        m_b_minus: m_minus as usize,
        a1_plus: images[0].0.clone(),
        a1_minus: images[1].0.clone(),
        second_spectrum: s2,
        residual,
        trace_multiplicities: trace_mults,
    };
    Ok((md, data))
}

fn remove_copies(spec: &Spectrum, v: &AlgebraicScalar, m: usize) -> Result<Spectrum> {
    let have = spec.mult(v);
    if have < m {
        return Err(Error::InconsistentSpectrum(format!("{spec} has {v} only {have} times, need {m}")));
    }
    let pairs = spec
        .pairs()
        .iter()
        .map(|(u, k)| (u.clone(), if u.approx_eq(v, FLOAT_MATCH_TOL) { k - m } else { *k }))
        .collect();
    Ok(Spectrum::new(pairs))
}

/// Solves `Σ_i θ_iˡ m_i = trace(Bˡ) - (known part)` for `l = 0..3`, where `B`
/// is the adjacency matrix of `Δ₂(x)` and the known part collects `a₂` and
/// the endpoint-1 images.
fn endpoint2_trace_system(
    sub2: &Graph,
    params: &DrgParameters,
    theta: &[AlgebraicScalar],
    images: &[(AlgebraicScalar, usize)],
) -> Result<Vec<usize>> {
    let b = sub2.adjacency_matrix();
    let b2 = b.mul(&b);
    let traces = [sub2.n() as i64, 0, b2.trace(), trace_of_product(&b2, &b)];
    let rat = |v: &AlgebraicScalar| -> Result<BigRational> {
        v.as_rational()
            .cloned()
            .ok_or_else(|| Error::Precondition(format!("{v} is not rational")))
    };
    let a2 = BigRational::from_integer(BigInt::from(params.a[2]));
    let mut rhs = Vec::with_capacity(4);
    for (l, tr) in traces.iter().enumerate() {
        let e = l as i32;
        let mut r = BigRational::from_integer(BigInt::from(*tr)) - num_traits::pow::Pow::pow(&a2, e as u32);
        for (v, m) in images {
            r -= num_traits::pow::Pow::pow(&rat(v)?, e as u32) * BigRational::from_integer(BigInt::from(*m));
        }
        rhs.push(r);
    }
    let th: Vec<BigRational> = theta.iter().map(rat).collect::<Result<_>>()?;
    let rows: Vec<Vec<BigRational>> =
        (0..4).map(|l| th.iter().map(|t| num_traits::pow::Pow::pow(t, l as u32)).collect()).collect();
    let sol = solve_rational(rows, rhs).ok_or_else(|| Error::Precondition("singular trace system".into()))?;
    sol.iter()
        .map(|m| {
            (m.is_integer() && !m.is_negative())
                .then(|| m.to_integer().to_usize())
                .flatten()
                .ok_or_else(|| Error::InconsistentSpectrum(format!("trace system gives multiplicity {m}")))
        })
        .collect()
}

fn trace_of_product(x: &IntMatrix, y: &IntMatrix) -> i64 {
    let n = x.rows();
    (0..n).map(|i| (0..n).map(|j| x.get(i, j) * y.get(j, i)).sum::<i64>()).sum()
}

fn solve_rational(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                let pivot = a[col].clone();
                for (v, p) in a[r].iter_mut().zip(&pivot).skip(col) {
                    *v -= &f * p;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Decomposition for any graph covered above, chosen by its intersection
/// array; `None` for other arrays.
pub fn decompose(
    g: &Graph,
    x: usize,
    params: &DrgParameters,
    ed: &EigenData,
) -> Result<Option<ModuleDecomposition>> {
    if let Some(p) = params.srg_params() {
        return decompose_srg(g, x, &p).map(Some);
    }
    if params.taylor_shape().is_some_and(|(k, b)| b + 1 < k) && !params.is_bipartite() {
        return decompose_taylor_with(g, x, params, ed).map(Some);
    }
    if params.at4_shape().is_some() {
        return decompose_at4_with(g, x, params, ed).map(|(md, _)| Some(md));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::construct;

    fn srg(name: &str, p: &[i64]) -> (Graph, SrgParams) {
        let g = construct(name, p).unwrap();
        let sp = verify_drg(&g).unwrap().srg_params().unwrap();
        (g, sp)
    }

    #[test]
    fn johnson_8_2_classes() {
        let (g, p) = srg("johnson", &[8, 2]);
        let md = decompose_srg(&g, 0, &p).unwrap();
        let summary: Vec<(usize, usize, String, usize)> = md
            .descriptors
            .iter()
            .map(|d| {
                let l = d.local_eigenvalue.as_ref().map_or("-".into(), ToString::to_string);
                (d.endpoint, d.dim, l, d.multiplicity)
            })
            .collect();
        let expect = |e, d, l: &str, m| (e, d, l.to_string(), m);
        assert_eq!(
            summary,
            vec![
                expect(0, 3, "-", 1),
                expect(1, 1, "4", 1),
                expect(1, 1, "-2", 5),
                expect(1, 2, "0", 5),
                expect(2, 1, "-2", 9),
            ]
        );
        assert_eq!(md.total_dim(), 28);
        let ds = dimension_sequence(&md, &p);
        assert_eq!((ds.l1, ds.l1p, ds.l2, ds.l2p), (2, 1, 1, 1));
        assert_eq!(srg_dim_formula(&ds), 16);
        assert_eq!(wedderburn_dim(&md), 16);
        let two = md.classes_with(1, 2).next().unwrap();
        assert_eq!(two.action_matrix(), ExactMatrix::from_int(&IntMatrix::from_fn(2, 2, |i, j| [[0, 8], [1, 2]][i][j])));
    }

    #[test]
    fn formula_values() {
        let ds = |l1, l1p, l2, l2p| DimensionSequence { l1, l1p, l2, l2p };
        assert_eq!(srg_dim_formula(&ds(1, 4, 1, 4)), 27);
        assert_eq!(srg_dim_formula(&ds(0, 0, 0, 0)), 9);
        assert_eq!(srg_dim_formula(&ds(2, 1, 1, 1)), 16);
    }

    #[test]
    fn shrikhande_and_grid() {
        for (name, p, dim) in [("shrikhande", vec![], 20), ("rook_grid", vec![4], 15)] {
            let (g, sp) = srg(name, &p);
            for x in 0..g.n() {
                let md = decompose_srg(&g, x, &sp).unwrap();
                assert_eq!(md.total_dim(), 16);
                assert_eq!(wedderburn_dim(&md), dim, "{name} at {x}");
            }
        }
    }

    #[test]
    fn taylor_icosahedron() {
        let g = construct("icosahedron", &[]).unwrap();
        let md = decompose_taylor(&g, 0, 5, 2).unwrap();
        assert_eq!(wedderburn_dim(&md), 24);
        assert_eq!(md.total_dim(), 12);
        let sigma: AlgebraicScalar = "-1/2 + 1/2√5".parse().unwrap();
        let cls = md.classes_with(1, 2).next().unwrap();
        assert_eq!(cls.local_eigenvalue.as_ref(), Some(&sigma));
        assert_eq!(cls.multiplicity, 2);
        let x1: AlgebraicScalar = "3/2 + 1/2√5".parse().unwrap();
        assert_eq!(cls.x_seq, vec![x1]);
        assert_eq!(taylor_sigma_forms(5, 2), (true, false));
        assert!(md.notes.iter().any(|n| n.contains("differs")));
    }

    #[test]
    fn taylor_johnson_6_3() {
        let g = construct("johnson", &[6, 3]).unwrap();
        let md = decompose_taylor(&g, 7, 9, 4).unwrap();
        assert_eq!(md.total_dim(), 20);
        assert_eq!(wedderburn_dim(&md), 24);
        assert!(decompose_taylor(&g, 0, 9, 3).is_err());
    }

    #[test]
    fn at4_johnson_8_4() {
        let g = construct("johnson", &[8, 4]).unwrap();
        let params = verify_drg(&g).unwrap();
        let ed = eigen_data(&params).unwrap();
        let (md, data) = decompose_at4_with(&g, 0, &params, &ed).unwrap();
        assert_eq!(data.local_params, (16, 6, 2, 2));
        assert_eq!((data.m_b_plus, data.m_b_minus), (6, 9));
        assert_eq!((data.a1_plus.clone(), data.a1_minus.clone()), (int(4), int(0)));
        assert_eq!(data.ell(), 3);
        assert_eq!(md.total_dim(), 70);
        assert_eq!(wedderburn_dim(&md), 46);
        let e1: Vec<_> = md.classes_with(1, 3).map(|d| d.x_seq.clone()).collect();
        assert_eq!(e1, vec![vec![int(12), int(12)], vec![int(4), int(4)]]);
    }

    #[test]
    fn wrong_family_rejected() {
        let g = construct("johnson", &[8, 2]).unwrap();
        assert!(matches!(decompose_taylor(&g, 0, 12, 5), Err(Error::NotTaylor(_))));
        assert!(matches!(decompose_at4(&g, 0, 2, 2), Err(Error::NotAt4(_))));
    }
}
