//! Generators-and-relations presentations, emitted as data and never evaluated.

use serde::{Deserialize, Serialize};

use super::{c_invariant, verify_walk, FParam, OplusError, ReciprocalWalk};
use crate::numlin::{inverse, CMatrix, Tolerance, C64};

/// `coeff · m_1 m_2 ⋯`; an empty monomial is the unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: [f64; 2],
    pub monomial: Vec<String>,
}

/// `Σ lhs = Σ rhs`. `factored`, when present, is the rhs written as a product of sums.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factored: Option<Vec<Vec<Term>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PresentationTarget {
    /// `𝒪(X^(Γ))` for a walk and a parameter with `δ = ε Σ λ_i²`.
    Walk { walk: ReciprocalWalk, param: FParam },
    /// `O⁺(F)`.
    OPlus { f: CMatrix },
    /// `S²_{q,x}`.
    Podles { q: f64, x: f64 },
}

fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn term(z: C64, mono: &[&str]) -> Term {
    Term { coeff: [sig12(z.re), sig12(z.im)], monomial: mono.iter().map(|s| s.to_string()).collect() }
}

fn real(x: f64, mono: &[&str]) -> Term {
    term(C64::new(x, 0.0), mono)
}

fn rel(lhs: Vec<Term>, rhs: Vec<Term>) -> Relation {
    Relation { lhs, rhs, factored: None }
}

fn adj(g: &str) -> String {
    format!("{g}*")
}

pub fn emit_presentation(target: &PresentationTarget) -> Result<Presentation, OplusError> {
    match target {
        PresentationTarget::Walk { walk, param } => walk_presentation(walk, param),
        PresentationTarget::OPlus { f } => oplus_presentation(f),
        PresentationTarget::Podles { q, x } => podles_presentation(*q, *x),
    }
}

fn walk_presentation(walk: &ReciprocalWalk, p: &FParam) -> Result<Presentation, OplusError> {
    let rep = verify_walk(walk);
    if !rep.pass() {
        let name = rep.report.first_failure().map(|c| c.name.clone()).unwrap_or_default();
        return Err(OplusError::Invalid(format!("walk fails {name}")));
    }
    let expected = p.epsilon() as f64 * p.lambda.iter().map(|l| l * l).sum::<f64>();
    if (walk.delta - expected).abs() > 1e-9 {
        return Err(OplusError::DeltaMismatch { walk: walk.delta, param: expected });
    }
    let n = p.n();
    let single = walk.vertices.len() == 1;
    let proj: Vec<String> = walk.vertices.iter().map(|v| format!("d_{v}")).collect();
    // δ_v, or the unit when there is only one vertex
    let dv = |v: usize| -> Vec<&str> {
        if single {
            vec![]
        } else {
            vec![proj[v].as_str()]
        }
    };
    let u = |e: usize, i: usize| format!("U_{{{},{}}}", walk.edges[e].id, i + 1);
    let mut gens = if single { vec![] } else { proj.clone() };
    for e in 0..walk.edges.len() {
        for i in 0..n {
            gens.push(u(e, i));
        }
    }
    let mut rels = Vec::new();
    if !single {
        for (v, d) in proj.iter().enumerate() {
            rels.push(rel(vec![real(1.0, &[&adj(d)])], vec![real(1.0, &[d])]));
            for (w, d2) in proj.iter().enumerate() {
                let rhs = if v == w { vec![real(1.0, &[d])] } else { vec![] };
                rels.push(rel(vec![real(1.0, &[d, d2])], rhs));
            }
        }
        rels.push(rel(proj.iter().map(|d| real(1.0, &[d])).collect(), vec![real(1.0, &[])]));
        for (e, edge) in walk.edges.iter().enumerate() {
            for i in 0..n {
                let g = u(e, i);
                rels.push(rel(vec![real(1.0, &[&g])], vec![real(1.0, &[&proj[edge.src], &g, &proj[edge.tgt]])]));
            }
        }
    }
    for w in 0..walk.vertices.len() {
        let into: Vec<usize> = (0..walk.edges.len()).filter(|&e| walk.edges[e].tgt == w).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = into.iter().map(|&g| real(1.0, &[&adj(&u(g, i)), &u(g, j)])).collect();
                let rhs = if i == j { vec![real(1.0, &dv(w))] } else { vec![] };
                rels.push(rel(lhs, rhs));
            }
        }
    }
    for (e, ee) in walk.edges.iter().enumerate() {
        for f in (0..walk.edges.len()).filter(|&f| walk.edges[f].src == ee.src) {
            let lhs = (0..n).map(|i| real(1.0, &[&u(e, i), &adj(&u(f, i))])).collect();
            let rhs = if e == f { vec![real(1.0, &dv(ee.src))] } else { vec![] };
            rels.push(rel(lhs, rhs));
        }
    }
    for (e, ee) in walk.edges.iter().enumerate() {
        for i in 0..n {
            let k = p.eps[i] as f64 * p.lambda[i] / (ee.sgn as f64 * ee.w.sqrt());
            rels.push(rel(vec![real(1.0, &[&adj(&u(e, i))])], vec![real(k, &[&u(ee.bar, p.bar[i])])]));
        }
    }
    Ok(Presentation { generators: gens, relations: rels })
}

fn oplus_presentation(f: &CMatrix) -> Result<Presentation, OplusError> {
    c_invariant(f, 1e-9)?;
    let n = f.nrows();
    let finv = inverse(f, &Tolerance::default())
        .map_err(|e| OplusError::Invalid(e.to_string()))?
        .ok_or_else(|| OplusError::Invalid("F is singular".into()))?;
    let u = |i: usize, j: usize| format!("U_{{{},{}}}", i + 1, j + 1);
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            gens.push(u(i, j));
        }
    }
    let mut rels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let one = if i == j { vec![real(1.0, &[])] } else { vec![] };
            rels.push(rel((0..n).map(|k| real(1.0, &[&adj(&u(k, i)), &u(k, j)])).collect(), one.clone()));
            rels.push(rel((0..n).map(|k| real(1.0, &[&u(i, k), &adj(&u(j, k))])).collect(), one));
        }
    }
    // (F Ū F⁻¹)_{ij} = Σ_{k,l} F_{ik} U_{kl}* (F⁻¹)_{lj}
    for i in 0..n {
        for j in 0..n {
            let mut lhs = Vec::new();
            for k in 0..n {
                for l in 0..n {
                    let z = f[(i, k)] * finv[(l, j)];
                    if z.norm() > 1e-14 {
                        lhs.push(term(z, &[&adj(&u(k, l))]));
                    }
                }
            }
            rels.push(rel(lhs, vec![real(1.0, &[&u(i, j)])]));
        }
    }
    Ok(Presentation { generators: gens, relations: rels })
}

fn podles_presentation(q: f64, x: f64) -> Result<Presentation, OplusError> {
    if !(q != 0.0 && q.abs() < 1.0) || !x.is_finite() {
        return Err(OplusError::ParamOutOfRange(format!("need 0 < |q| < 1 and finite x, got q = {q}, x = {x}")));
    }
    let a = q.abs();
    // (1 − a Z)(1 + b Z) = 1 + (b − a) Z − ab Z²
    let quad = |s: f64, t: f64| {
        let rhs = vec![real(1.0, &[]), real(t - s, &["Z"]), real(-s * t, &["Z", "Z"])];
        let factored = vec![vec![real(1.0, &[]), real(-s, &["Z"])], vec![real(1.0, &[]), real(t, &["Z"])]];
        (rhs, factored)
    };
    let (r1, f1) = quad(a.powf(x - 1.0), a.powf(-x - 1.0));
    let (r2, f2) = quad(a.powf(x + 1.0), a.powf(-x + 1.0));
    let relations = vec![
        rel(vec![real(1.0, &["Z*"])], vec![real(1.0, &["Z"])]),
        rel(vec![real(1.0, &["X", "Z"])], vec![real(q * q, &["Z", "X"])]),
        Relation { lhs: vec![real(1.0, &["X*", "X"])], rhs: r1, factored: Some(f1) },
        Relation { lhs: vec![real(1.0, &["X", "X*"])], rhs: r2, factored: Some(f2) },
    ];
    Ok(Presentation { generators: vec!["X".into(), "Z".into()], relations })
}

/// `x − y ∈ ℤ` or `x + y ∈ ℤ`, within `1e-9`.
pub fn podles_morita(x: f64, y: f64) -> bool {
    let near = |t: f64| (t - t.round()).abs() <= 1e-9;
    near(x - y) || near(x + y)
}
