//! δ-reciprocal random walks.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::OplusError;
use crate::numlin::{hermitian_eigen, spectral_norm, CMatrix, C64};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
    pub w: f64,
    pub sgn: i8,
    pub bar: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocalWalk {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub delta: f64,
    /// Vertices cut by a truncation; their row sums are reported, not asserted.
    pub boundary: Vec<usize>,
}

/// On-disk form: `{delta, vertices, edges: [{id, src, tgt, w, sgn, bar}]}` with
/// `src`, `tgt` vertex names and `bar` an edge id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkFile {
    pub delta: f64,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boundary: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeFile {
    pub id: String,
    pub src: String,
    pub tgt: String,
    pub w: f64,
    pub sgn: i8,
    pub bar: String,
}

impl WalkFile {
    pub fn into_walk(self) -> Result<ReciprocalWalk, OplusError> {
        let vix: BTreeMap<&str, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let eix: BTreeMap<&str, usize> = self.edges.iter().enumerate().map(|(i, e)| (e.id.as_str(), i)).collect();
        if vix.len() != self.vertices.len() || eix.len() != self.edges.len() {
            return Err(OplusError::Invalid("duplicate vertex or edge names".into()));
        }
        let look = |m: &BTreeMap<&str, usize>, k: &str| m.get(k).copied().ok_or_else(|| OplusError::Invalid(format!("unknown name {k}")));
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            edges.push(Edge { id: e.id.clone(), src: look(&vix, &e.src)?, tgt: look(&vix, &e.tgt)?, w: e.w, sgn: e.sgn, bar: look(&eix, &e.bar)? });
        }
        let boundary = self.boundary.iter().map(|b| look(&vix, b)).collect::<Result<_, _>>()?;
        Ok(ReciprocalWalk { vertices: self.vertices.clone(), edges, delta: self.delta, boundary })
    }

    pub fn from_walk(w: &ReciprocalWalk) -> Self {
        WalkFile {
            delta: w.delta,
            vertices: w.vertices.clone(),
            edges: w
                .edges
                .iter()
                .map(|e| EdgeFile {
                    id: e.id.clone(),
                    src: w.vertices[e.src].clone(),
                    tgt: w.vertices[e.tgt].clone(),
                    w: e.w,
                    sgn: e.sgn,
                    bar: w.edges[e.bar].id.clone(),
                })
                .collect(),
            boundary: w.boundary.iter().map(|&b| w.vertices[b].clone()).collect(),
        }
    }
}

impl ReciprocalWalk {
    /// `M(Γ)_{vw} = #{e : s(e) = v, t(e) = w}`.
    pub fn adjacency(&self) -> nalgebra::DMatrix<f64> {
        let n = self.vertices.len();
        let mut m = nalgebra::DMatrix::zeros(n, n);
        for e in &self.edges {
            m[(e.src, e.tgt)] += 1.0;
        }
        m
    }

    /// Graph distance from each vertex to the nearest boundary vertex.
    pub fn boundary_distance(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut dist = vec![usize::MAX; n];
        let mut q: VecDeque<usize> = self.boundary.iter().copied().collect();
        for &b in &self.boundary {
            dist[b] = 0;
        }
        while let Some(v) = q.pop_front() {
            for e in self.edges.iter().filter(|e| e.src == v) {
                if dist[e.tgt] == usize::MAX {
                    dist[e.tgt] = dist[v] + 1;
                    q.push_back(e.tgt);
                }
            }
        }
        dist
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkReport {
    pub report: Report,
    /// Edge pairs `(e, ē)` with `e ≤ ē` whose weights are not reciprocal.
    pub reciprocity_failures: Vec<(usize, usize)>,
    /// Interior vertices whose normalized row sum is not 1.
    pub row_sum_failures: Vec<usize>,
    /// Boundary vertices with their row-sum defect.
    pub truncation_defects: Vec<(usize, f64)>,
}

impl WalkReport {
    pub fn pass(&self) -> bool {
        self.report.pass()
    }
}

/// Checks every walk axiom; boundary row sums are reported as truncation defects.
pub fn verify_walk(walk: &ReciprocalWalk) -> WalkReport {
    let tol = 1e-12;
    let ne = walk.edges.len();
    let mut rep = Report::new();
    let mut bar_ok = walk.delta != 0.0 && walk.delta.is_finite();
    let mut sign_ok = true;
    let mut recip = Vec::new();
    let mut recip_res: f64 = 0.0;
    let ds = walk.delta.signum() as i8;
    for (i, e) in walk.edges.iter().enumerate() {
        if e.bar >= ne || walk.edges[e.bar].bar != i {
            bar_ok = false;
            continue;
        }
        let f = &walk.edges[e.bar];
        bar_ok &= f.src == e.tgt && f.tgt == e.src && e.w > 0.0;
        sign_ok &= e.sgn.abs() == 1 && e.sgn * f.sgn == ds;
        let r = (e.w * f.w - 1.0).abs();
        recip_res = recip_res.max(r);
        if r > tol && i <= e.bar {
            recip.push((i, e.bar));
        }
    }
    rep.push_bool("bar_involution", bar_ok);
    rep.push_bool("signs", sign_ok);
    rep.push("reciprocal", recip_res, tol);
    let n = walk.vertices.len();
    let mut sums = vec![0.0; n];
    let mut loops = vec![0usize; n];
    for e in &walk.edges {
        sums[e.src] += e.w / walk.delta.abs();
        if e.src == e.tgt {
            loops[e.src] += 1;
        }
    }
    let mut row_res: f64 = 0.0;
    let mut rows = Vec::new();
    let mut defects = Vec::new();
    for v in 0..n {
        let r = (sums[v] - 1.0).abs();
        if walk.boundary.contains(&v) {
            defects.push((v, r));
        } else {
            row_res = row_res.max(r);
            if r > tol {
                rows.push(v);
            }
        }
    }
    rep.push("row_sums", row_res, tol);
    if walk.delta < 0.0 {
        rep.push_bool("even_loops", loops.iter().all(|l| l % 2 == 0));
    }
    WalkReport { report: rep, reciprocity_failures: recip, row_sum_failures: rows, truncation_defects: defects }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormCheck {
    pub norm: f64,
    pub delta: f64,
    pub pass: bool,
}

/// `‖M(Γ)‖ ≤ |δ|`.
pub fn norm_check(walk: &ReciprocalWalk) -> Result<NormCheck, OplusError> {
    let m = walk.adjacency().map(|x| C64::new(x, 0.0));
    let norm = spectral_norm(&m).map_err(|e| OplusError::Invalid(e.to_string()))?;
    let delta = walk.delta.abs();
    Ok(NormCheck { norm, delta, pass: norm <= delta + 1e-9 })
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(s, t) in edges {
            for (a, b) in [(s, t), (t, s)] {
                if a == v && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    seen.into_iter().all(|x| x)
}

/// Perron–Frobenius walk `w(e) = x(t(e)) / x(s(e))`, `δ` the spectral radius, all signs `+1`.
/// `edges[k] = (src, tgt)` and `bar[k]` is the index of `ē`.
pub fn perron_walk(n: usize, edges: &[(usize, usize)], bar: &[usize]) -> Result<ReciprocalWalk, OplusError> {
    if bar.len() != edges.len() || edges.iter().any(|&(s, t)| s >= n || t >= n) {
        return Err(OplusError::Invalid("edge list and involution disagree".into()));
    }
    for (k, &b) in bar.iter().enumerate() {
        if b >= edges.len() || bar[b] != k || edges[b] != (edges[k].1, edges[k].0) {
            return Err(OplusError::Invalid(format!("bar does not reverse edge {k}")));
        }
    }
    if !connected(n, edges) {
        return Err(OplusError::NotConnected);
    }
    let mut m = CMatrix::zeros(n, n);
    for &(s, t) in edges {
        m[(s, t)] += C64::new(1.0, 0.0);
    }
    let (vals, vecs) = hermitian_eigen(&m).map_err(|e| OplusError::Invalid(e.to_string()))?;
    let top = vals.len() - 1;
    let delta = vals[top];
    let mut x: Vec<f64> = (0..n).map(|i| vecs[(i, top)].re).collect();
    if x.iter().sum::<f64>() < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    if x.iter().any(|v| *v <= 0.0) || delta <= 0.0 {
        return Err(OplusError::PerronFailure);
    }
    let edges = edges
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| Edge { id: format!("e{k}"), src: s, tgt: t, w: x[t] / x[s], sgn: 1, bar: bar[k] })
        .collect();
    Ok(ReciprocalWalk { vertices: (0..n).map(|v| format!("v{v}")).collect(), edges, delta, boundary: Vec::new() })
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChainKind {
    /// `O⁺_{N−1}\O⁺_N`: vertices `ℕ`, a weight-1 loop at each vertex, first edge `N − 1`.
    Quotient { n: usize },
    /// One vertex with a loop per index, `w(i) = (λ'_i)²`, `ī` the parameter involution.
    Torsor { param: super::FParam },
    /// Podleś sphere `S²_{q,x}`: vertices `k`, edge `k → k+1` of weight
    /// `(q^{x+k} + q^{−x−k}) / (q^{x+k−1} + q^{−x−k+1})`.
    Podles { q: f64, x: f64 },
}

fn push_pair(edges: &mut Vec<Edge>, s: usize, t: usize, w: f64, sgn: (i8, i8)) {
    let k = edges.len();
    edges.push(Edge { id: format!("e{k}"), src: s, tgt: t, w, sgn: sgn.0, bar: k + 1 });
    edges.push(Edge { id: format!("e{}", k + 1), src: t, tgt: s, w: 1.0 / w, sgn: sgn.1, bar: k });
}

/// The walks drawn in the classification examples, truncated to `len` vertices where infinite.
pub fn chain_walk(kind: &ChainKind, len: usize) -> Result<ReciprocalWalk, OplusError> {
    match kind {
        ChainKind::Quotient { n } => {
            let n = *n;
            if n < 3 || len < 2 {
                return Err(OplusError::ParamOutOfRange(format!("need N ≥ 3 and L ≥ 2, got N = {n}, L = {len}")));
            }
            let delta = n as f64;
            // figure order: loop at 0, the edge pairs along the chain, then the remaining loops
            let loop_at = |edges: &mut Vec<Edge>, v: usize| {
                let k = edges.len();
                edges.push(Edge { id: format!("e{k}"), src: v, tgt: v, w: 1.0, sgn: 1, bar: k });
            };
            let mut edges = Vec::new();
            loop_at(&mut edges, 0);
            let mut prev_back = 0.0;
            for v in 0..len - 1 {
                // 1 + w(v → v−1) + w(v → v+1) = N
                let w = delta - 1.0 - prev_back;
                push_pair(&mut edges, v, v + 1, w, (1, 1));
                prev_back = 1.0 / w;
            }
            for v in 1..len {
                loop_at(&mut edges, v);
            }
            Ok(ReciprocalWalk { vertices: (0..len).map(|v| v.to_string()).collect(), edges, delta, boundary: vec![len - 1] })
        }
        ChainKind::Torsor { param } => {
            let n = param.n();
            let eps = param.epsilon();
            let mut edges: Vec<Edge> = (0..n)
                .map(|i| Edge { id: format!("e{i}"), src: 0, tgt: 0, w: param.lambda[i] * param.lambda[i], sgn: 1, bar: param.bar[i] })
                .collect();
            for i in 0..n {
                if param.bar[i] < i {
                    edges[i].sgn = eps;
                }
            }
            let delta = eps as f64 * param.lambda.iter().map(|l| l * l).sum::<f64>();
            Ok(ReciprocalWalk { vertices: vec!["0".into()], edges, delta, boundary: Vec::new() })
        }
        ChainKind::Podles { q, x } => {
            let (q, x) = (*q, *x);
            if !(q > 0.0 && q < 1.0) || !x.is_finite() || len < 2 {
                return Err(OplusError::ParamOutOfRange(format!("need 0 < q < 1, finite x, L ≥ 2; got q = {q}, x = {x}, L = {len}")));
            }
            let qq = |a: f64| q.powf(a) + q.powf(-a);
            let mut edges = Vec::new();
            for k in 0..len - 1 {
                let a = x + k as f64;
                push_pair(&mut edges, k, k + 1, qq(a) / qq(a - 1.0), (1, -1));
            }
            Ok(ReciprocalWalk {
                vertices: (0..len).map(|v| v.to_string()).collect(),
                edges,
                delta: -(q + 1.0 / q),
                boundary: vec![0, len - 1],
            })
        }
    }
}
