use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use super::{ChainArgs, ChainKindArg, CliError, Command, Ctx, EmitArgs, Inputs, OplusCommand, PodlesCommand, TargetArg, WalkCommand};
use crate::action::{
    equivariant_blocks, fixed_points, fusion_matrix, homogeneous_data, irrep_data, is_free, is_torsor, isotypical,
    isotypical_residuals, stabilize, verify_coaction, Coaction,
};
use crate::corep::{irreducibles, verify_corep};
use crate::hopf::{double_dual_residual, dual_hopf, haar_state, verify_hopf, StarAlgebra};
use crate::io::{load_json, load_walk, AlgebraFile, IoError, Workspace};
use crate::numlin::{wedderburn_blocks, CMatrix, CVector, WedderburnOptions, C64};
use crate::oplus::{
    c_invariant, c_normalized, c_of_param, chain_walk, emit_presentation, fusion_matrices, monoidally_equivalent,
    norm_check, perron_walk, podles_morita, verify_walk, ChainKind, FParam, FusionLabel, Presentation,
    PresentationTarget, ReciprocalWalk, WalkFile,
};
use crate::products::{
    crossed_product, second_duality_check, smash_dual_checks, smash_identities, smash_product, takesaki_takai_check,
    verify_module,
};
use crate::report::Report;
use crate::twist::{associativity_residual, match_hopf, reflect, twist, verify_cocycle};

type Out = Result<(Report, Value), CliError>;

fn cxs(v: &CVector) -> Value {
    json!(v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
}

fn cmat(m: &CMatrix) -> Value {
    json!((0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn rmat(m: &nalgebra::DMatrix<f64>) -> Value {
    json!((0..m.nrows()).map(|i| m.row(i).iter().copied().collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn block_sizes(a: &StarAlgebra, ctx: &Ctx) -> Result<Vec<usize>, CliError> {
    Ok(wedderburn_blocks(a, &WedderburnOptions { tol: ctx.tol, seed: ctx.seed })?.iter().map(|b| b.n).collect())
}

impl Ctx {
    /// Residual cutoff for derived quantities that accumulate rounding.
    fn loose(&self) -> f64 {
        self.tol.abs_tol.max(1e-8)
    }
}

fn workspace(inputs: &Inputs, ctx: &mut Ctx) -> Result<Workspace, CliError> {
    let mut ws = Workspace::new();
    for f in &inputs.files {
        ws.load_path(f)?;
    }
    ctx.inputs.extend(ws.inputs.iter().cloned());
    Ok(ws)
}

fn coaction(inputs: &Inputs, ctx: &mut Ctx) -> Result<Coaction, CliError> {
    let ws = workspace(inputs, ctx)?;
    Ok(ws.coaction(inputs.name.as_deref())?)
}

pub(crate) fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Out {
    match cmd {
        Command::VerifyHopf(i) => verify_hopf_cmd(i, ctx),
        Command::Haar(i) => haar(i, ctx),
        Command::Dual(i) => dual(i, ctx),
        Command::Irreps(i) => irreps(i, ctx),
        Command::QMatrix(i) => q_matrix(i, ctx),
        Command::CoactionVerify(i) => {
            let a = coaction(i, ctx)?;
            Ok((verify_coaction(&a, &ctx.tol), json!({"algebra_dim": a.algebra().dim(), "hopf_dim": a.hopf().dim()})))
        }
        Command::FixedPoints(i) => fixed(i, ctx),
        Command::Isotypes(i) => isotypes(i, ctx),
        Command::HomogData(i) => homog(i, ctx),
        Command::FreeCheck(i) => free(i, ctx),
        Command::TorsorCheck(i) => torsor(i, ctx),
        Command::Stabilize(i) => stab(i, ctx),
        Command::Fusion(i) => fusion(i, ctx),
        Command::Smash(i) => smash(i, ctx),
        Command::Crossed(i) => crossed(i, ctx),
        Command::TtCheck(i) => tt(i, ctx),
        Command::Twist(i) => twist_cmd(i, ctx),
        Command::Reflect { inputs, against } => reflect_cmd(inputs, against.as_deref(), ctx),
        Command::Walk(w) => walk(w, ctx),
        Command::Oplus(o) => oplus(o, ctx),
        Command::Podles(PodlesCommand::Presentation { q, x }) => presentation(&PresentationTarget::Podles { q: *q, x: *x }),
        Command::Podles(PodlesCommand::Morita { x, y }) => Ok((Report::new(), json!({"x": x, "y": y, "equivalent": podles_morita(*x, *y)}))),
        Command::EmitPresentation(e) => emit(e, ctx),
    }
}

fn verify_hopf_cmd(i: &Inputs, ctx: &mut Ctx) -> Out {
    let h = workspace(i, ctx)?.hopf(i.name.as_deref())?;
    let rep = verify_hopf(&h, &ctx.tol);
    Ok((rep, json!({"hopf": h.name(), "dim": h.dim(), "cocommutative": h.is_cocommutative(&ctx.tol), "kac_residual": h.kac_residual()})))
}

fn haar(i: &Inputs, ctx: &mut Ctx) -> Out {
    let h = workspace(i, ctx)?.hopf(i.name.as_deref())?;
    let hs = haar_state(&h, &ctx.tol)?;
    let mut rep = Report::new();
    rep.push("left_invariance", hs.left_residual, ctx.tol.abs_tol);
    rep.push("right_invariance", hs.right_residual, ctx.tol.abs_tol);
    rep.push_bool("unique", hs.solution_dim == 1);
    rep.push_bool("faithful", hs.gram_min_eig > 0.0);
    Ok((rep, json!({"hopf": h.name(), "phi": cxs(&hs.phi), "gram_min_eig": hs.gram_min_eig})))
}

fn dual(i: &Inputs, ctx: &mut Ctx) -> Out {
    let h = workspace(i, ctx)?.hopf(i.name.as_deref())?;
    let d = dual_hopf(&h)?;
    let mut rep = Report::new();
    rep.extend_prefixed("dual", verify_hopf(&d, &ctx.tol));
    rep.push("double_dual", double_dual_residual(&h)?, ctx.loose());
    Ok((rep, json!({"dual": AlgebraFile::from_hopf(&d)})))
}

fn irreps(i: &Inputs, ctx: &mut Ctx) -> Out {
    let h = workspace(i, ctx)?.hopf(i.name.as_deref())?;
    let irr = irreducibles(&h, &ctx.tol, ctx.seed)?;
    let mut rep = Report::new();
    for (k, u) in irr.iter().enumerate() {
        rep.extend_prefixed(&format!("irrep{k}"), verify_corep(u, &h, &ctx.tol)?);
    }
    let dims: Vec<usize> = irr.iter().map(|u| u.dim()).collect();
    rep.push_bool("sum_of_squares", dims.iter().map(|d| d * d).sum::<usize>() == h.dim());
    Ok((rep, json!({"dims": dims})))
}

fn q_matrix(i: &Inputs, ctx: &mut Ctx) -> Out {
    let h = workspace(i, ctx)?.hopf(i.name.as_deref())?;
    let data = irrep_data(&h, &ctx.tol, ctx.seed)?;
    let mut rep = Report::new();
    let mut out = Vec::new();
    for (k, d) in data.iter().enumerate() {
        rep.push(format!("irrep{k}.orthogonality"), d.q.orthogonality_residual, ctx.loose());
        out.push(json!({"dim": d.irrep.dim(), "dim_q": d.q.dim_q, "Q": cmat(&d.q.q)}));
    }
    Ok((rep, json!({"irreps": out})))
}

fn fixed(i: &Inputs, ctx: &mut Ctx) -> Out {
    let a = coaction(i, ctx)?;
    let mut rep = Report::new();
    rep.extend_prefixed("coaction", verify_coaction(&a, &ctx.tol));
    let f = fixed_points(&a, &ctx.tol)?;
    Ok((rep, json!({"dim": f.ncols(), "homogeneous": f.ncols() == 1, "basis": cmat(&f)})))
}

fn isotypes(i: &Inputs, ctx: &mut Ctx) -> Out {
    let a = coaction(i, ctx)?;
    let irreps = irrep_data(a.hopf(), &ctx.tol, ctx.seed)?;
    let phi = haar_state(a.hopf(), &ctx.tol)?.phi;
    let comps = isotypical(&a, &irreps, &phi, &ctx.tol)?;
    let (sum, idem, orth) = isotypical_residuals(&comps);
    let mut rep = Report::new();
    rep.push("sum_to_identity", sum, ctx.loose());
    rep.push("idempotent", idem, ctx.loose());
    rep.push("orthogonal", orth, ctx.loose());
    rep.push_bool("dimensions_add_up", comps.iter().map(|c| c.basis.ncols()).sum::<usize>() == a.algebra().dim());
    let out: Vec<Value> = comps
        .iter()
        .map(|c| json!({"irrep": c.irrep_index, "irrep_dim": c.dim, "multiplicity": c.multiplicity(), "dim": c.basis.ncols()}))
        .collect();
    Ok((rep, json!({"components": out})))
}

fn homog(i: &Inputs, ctx: &mut Ctx) -> Out {
    let a = coaction(i, ctx)?;
    let irreps = irrep_data(a.hopf(), &ctx.tol, ctx.seed)?;
    let d = homogeneous_data(&a, &irreps, &ctx.tol)?;
    let per: Vec<Value> = d
        .per_irrep
        .iter()
        .map(|p| json!({"irrep": p.irrep_index, "dim": p.dim, "mult": p.mult, "mult_q": p.mult_q, "dim_q": p.dim_q}))
        .collect();
    Ok((d.report, json!({"phi": cxs(&d.phi), "per_irrep": per})))
}

fn free(i: &Inputs, ctx: &mut Ctx) -> Out {
    let a = coaction(i, ctx)?;
    let c = is_free(&a, &ctx.tol)?;
    let mut rep = Report::new();
    rep.push_bool("ellwood_galois_agree", c.ellwood == c.galois);
    Ok((
        rep,
        json!({
            "free": c.ellwood && c.galois,
            "ellwood": c.ellwood,
            "galois": c.galois,
            "ellwood_rank": c.ellwood_rank,
            "galois_rank": c.galois_rank,
            "balanced_dim": c.balanced_dim,
            "target_dim": c.target_dim,
        }),
    ))
}

fn torsor(i: &Inputs, ctx: &mut Ctx) -> Out {
    let a = coaction(i, ctx)?;
    let irreps = irrep_data(a.hopf(), &ctx.tol, ctx.seed)?;
    let c = is_torsor(&a, &irreps, &ctx.tol)?;
    let mut rep = Report::new();
    rep.push_bool("certificates_agree", true);
    let ures = if c.unitarity_residual.is_finite() { json!(c.unitarity_residual) } else { Value::Null };
    Ok((
        rep,
        json!({
            "torsor": c.is_torsor(),
            "free_and_homogeneous": c.free_and_homogeneous,
            "unitary_coefficients": c.unitary_coefficients,
            "multiplicities": c.multiplicities,
            "unitarity_residual": ures,
        }),
    ))
}

fn stab(i: &Inputs, ctx: &mut Ctx) -> Out {
    let a = coaction(i, ctx)?;
    let irreps = irrep_data(a.hopf(), &ctx.tol, ctx.seed)?;
    let s = stabilize(&a, &irreps, &ctx.tol, ctx.seed)?;
    let mut rep = Report::new();
    rep.extend_prefixed("coaction", verify_coaction(&s.coaction, &ctx.tol));
    let f = is_free(&s.coaction, &ctx.tol)?;
    rep.push_bool("free", f.ellwood && f.galois);
    let fixed = fixed_points(&s.coaction, &ctx.tol)?.ncols();
    rep.push_bool("fixed_dim_equals_blocks", fixed == s.blocks);
    Ok((rep, json!({"dim": s.coaction.algebra().dim(), "blocks": s.blocks, "fixed_dim": fixed})))
}

fn fusion(i: &Inputs, ctx: &mut Ctx) -> Out {
    let a = coaction(i, ctx)?;
    let blocks = equivariant_blocks(&a, &ctx.tol, ctx.seed)?;
    let irreps = irrep_data(a.hopf(), &ctx.tol, ctx.seed)?;
    let dims: Vec<i64> = blocks.iter().map(|b| b.n as i64).collect();
    let mut rep = Report::new();
    let mut out = Vec::new();
    for (k, d) in irreps.iter().enumerate() {
        let m = fusion_matrix(&a, &blocks, &d.irrep, &ctx.tol)?;
        // dim(H_π ⊗ E_j) = Σ_k M_jk dim E_k
        let ok = (0..blocks.len()).all(|j| d.irrep.dim() as i64 * dims[j] == (0..blocks.len()).map(|l| m[(j, l)] * dims[l]).sum::<i64>());
        rep.push_bool(format!("irrep{k}.dimension_count"), ok);
        let rows: Vec<Vec<i64>> = (0..m.nrows()).map(|r| m.row(r).iter().copied().collect()).collect();
        out.push(json!({"irrep": k, "dim": d.irrep.dim(), "M": rows}));
    }
    Ok((rep, json!({"block_dims": dims, "fusion": out})))
}

fn smash(i: &Inputs, ctx: &mut Ctx) -> Out {
    let m = workspace(i, ctx)?.module(i.name.as_deref())?;
    let mut rep = Report::new();
    rep.extend_prefixed("module", verify_module(&m, &ctx.tol));
    let s = smash_product(&m, &ctx.tol)?;
    let (r1, r2) = smash_identities(&m, &s)?;
    rep.push("star_identity", r1, ctx.loose());
    rep.push("commutation", r2, ctx.loose());
    rep.push("algebra", s.algebra.verify().max(), ctx.loose());
    let (free, fixed_res) = smash_dual_checks(&m, &s, &ctx.tol)?;
    rep.push_bool("dual_coaction_free", free);
    rep.push("dual_fixed_points", fixed_res, ctx.loose());
    Ok((rep, json!({"dim": s.algebra.dim(), "blocks": block_sizes(&s.algebra, ctx)?})))
}

fn crossed(i: &Inputs, ctx: &mut Ctx) -> Out {
    let a = coaction(i, ctx)?;
    let cp = crossed_product(&a, &ctx.tol)?;
    let mut rep = Report::new();
    rep.push("algebra", cp.algebra.verify().max(), ctx.loose());
    rep.extend_prefixed("dual_module", verify_module(&cp.module, &ctx.tol));
    Ok((rep, json!({"dim": cp.algebra.dim(), "blocks": block_sizes(&cp.algebra, ctx)?})))
}

fn tt(i: &Inputs, ctx: &mut Ctx) -> Out {
    let ws = workspace(i, ctx)?;
    let cert = match ws.coaction(i.name.as_deref()) {
        Ok(a) => takesaki_takai_check(&a, &ctx.tol)?,
        Err(IoError::Empty(_)) | Err(IoError::Missing { .. }) => second_duality_check(&ws.module(i.name.as_deref())?, &ctx.tol)?,
        Err(e) => return Err(e.into()),
    };
    let data = json!({"source_dim": cert.source_dim, "target_dim": cert.target_dim, "rank": cert.rank});
    Ok((cert.report, data))
}

fn twist_cmd(i: &Inputs, ctx: &mut Ctx) -> Out {
    let w = workspace(i, ctx)?.cocycle(i.name.as_deref())?;
    let mut rep = verify_cocycle(&w, &ctx.tol);
    if !rep.pass() {
        return Ok((rep, Value::Null));
    }
    rep.push("associativity", associativity_residual(&w), ctx.loose());
    let t = twist(&w, &ctx.tol)?;
    rep.push("twisted_algebra", t.algebra.verify().max(), ctx.loose());
    rep.extend_prefixed("coaction", verify_coaction(&t.coaction, &ctx.tol));
    Ok((rep, json!({"blocks": block_sizes(&t.algebra, ctx)?, "chi": cxs(&t.chi), "algebra": AlgebraFile::from_algebra("twisted", &t.algebra)})))
}

fn reflect_cmd(i: &Inputs, against: Option<&str>, ctx: &mut Ctx) -> Out {
    let ws = workspace(i, ctx)?;
    let a = ws.coaction(i.name.as_deref())?;
    let r = reflect(&a, &ctx.tol)?;
    let mut rep = Report::new();
    rep.extend_prefixed("reflection", r.report.clone());
    rep.extend_prefixed("hopf", verify_hopf(&r.hopf, &ctx.tol));
    let mut data = json!({"dim": r.hopf.dim(), "hopf": AlgebraFile::from_hopf(&r.hopf)});
    if let Some(name) = against {
        let target = ws.hopf(Some(name))?;
        match match_hopf(&r.hopf, &target, &ctx.tol)? {
            Some(m) => {
                rep.push("isomorphism", m.residual, ctx.loose());
                data["matched"] = json!(name);
            }
            None => rep.push_bool("isomorphism", false),
        }
    }
    Ok((rep, data))
}

#[derive(Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
    bar: Vec<usize>,
}

fn walk_data(w: &ReciprocalWalk) -> Value {
    let r = verify_walk(w);
    json!({
        "delta": w.delta,
        "weights": w.edges.iter().map(|e| e.w).collect::<Vec<_>>(),
        "reciprocity_failures": r.reciprocity_failures.iter().map(|(a, b)| [&w.edges[*a].id, &w.edges[*b].id]).collect::<Vec<_>>(),
        "row_sum_failures": r.row_sum_failures.iter().map(|v| &w.vertices[*v]).collect::<Vec<_>>(),
        "truncation_defects": r.truncation_defects.iter().map(|(v, d)| json!({"vertex": w.vertices[*v], "defect": d})).collect::<Vec<_>>(),
    })
}

fn read_walk(path: &Path, ctx: &mut Ctx) -> Result<ReciprocalWalk, CliError> {
    let (w, h) = load_walk(path)?;
    ctx.inputs.push(h);
    Ok(w)
}

fn with_norm(mut rep: Report, w: &ReciprocalWalk) -> Result<Report, CliError> {
    let nc = norm_check(w)?;
    rep.push("norm_bound", (nc.norm - nc.delta).max(0.0), 1e-9);
    Ok(rep)
}

fn walk(cmd: &WalkCommand, ctx: &mut Ctx) -> Out {
    match cmd {
        WalkCommand::Verify { file } => {
            let w = read_walk(file, ctx)?;
            Ok((verify_walk(&w).report, walk_data(&w)))
        }
        WalkCommand::Norm { file } => {
            let w = read_walk(file, ctx)?;
            let nc = norm_check(&w)?;
            let mut rep = Report::new();
            rep.push("norm_bound", (nc.norm - nc.delta).max(0.0), 1e-9);
            Ok((rep, json!({"norm": nc.norm, "delta": nc.delta})))
        }
        WalkCommand::Perron { file } => {
            let (g, h): (GraphFile, _) = load_json(file)?;
            ctx.inputs.push(h);
            let edges: Vec<(usize, usize)> = g.edges.iter().map(|e| (e[0], e[1])).collect();
            let w = perron_walk(g.n, &edges, &g.bar)?;
            let rep = with_norm(verify_walk(&w).report, &w)?;
            let mut data = walk_data(&w);
            data["walk"] = json!(WalkFile::from_walk(&w));
            Ok((rep, data))
        }
        WalkCommand::Chain(args) => chain(args, ctx),
        WalkCommand::Fusion { file, up_to } => {
            let w = read_walk(file, ctx)?;
            let label = FusionLabel::from_f64(*up_to)?;
            let ms = fusion_matrices(&w, label)?;
            let dist = w.boundary_distance();
            let t = label.twice() as usize;
            // M_a M_b = Σ_{k = |a−b|, step 1}^{a+b} M_k on rows far from the boundary
            let mut res: f64 = 0.0;
            for a in 0..=t {
                for b in 0..=t - a {
                    let lhs = &ms[a] * &ms[b];
                    let rhs = (a.abs_diff(b)..=a + b).step_by(2).fold(nalgebra::DMatrix::zeros(lhs.nrows(), lhs.ncols()), |acc, k| acc + &ms[k]);
                    for r in (0..lhs.nrows()).filter(|&r| dist[r] == usize::MAX || dist[r] > a + b) {
                        res = res.max((lhs.row(r) - rhs.row(r)).amax());
                    }
                }
            }
            let mut rep = Report::new();
            rep.push("multiplicativity", res, 1e-9);
            let out: Vec<Value> = ms.iter().enumerate().map(|(k, m)| json!({"label": FusionLabel(k as u32).to_string(), "M": rmat(m)})).collect();
            Ok((rep, json!({"matrices": out})))
        }
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this chain")))
}

fn chain(args: &ChainArgs, ctx: &mut Ctx) -> Out {
    let kind = match args.kind {
        ChainKindArg::OplusQuotient => ChainKind::Quotient { n: need(args.n, "N")? },
        ChainKindArg::Podles => ChainKind::Podles { q: need(args.q, "q")?, x: args.x.unwrap_or(0.0) },
        ChainKindArg::Torsor => {
            let path = args.param.as_ref().ok_or_else(|| CliError::Usage("--param is required for this chain".into()))?;
            ChainKind::Torsor { param: read_param(path, ctx)? }
        }
    };
    let w = chain_walk(&kind, args.l)?;
    let rep = with_norm(verify_walk(&w).report, &w)?;
    let mut data = walk_data(&w);
    data["walk"] = json!(WalkFile::from_walk(&w));
    Ok((rep, data))
}

fn read_param(path: &Path, ctx: &mut Ctx) -> Result<FParam, CliError> {
    let (p, h): (FParam, _) = load_json(path)?;
    ctx.inputs.push(h);
    FParam::new(p.bar, p.eps, p.lambda).map_err(|e| CliError::Usage(e.to_string()))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FInput {
    Param(FParam),
    Matrix(Vec<Vec<[f64; 2]>>),
}

fn read_f(path: &Path, ctx: &mut Ctx) -> Result<(CMatrix, Option<FParam>), CliError> {
    let (f, h): (FInput, _) = load_json(path)?;
    ctx.inputs.push(h);
    match f {
        FInput::Param(p) => {
            let p = FParam::new(p.bar, p.eps, p.lambda).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok((p.matrix(), Some(p)))
        }
        FInput::Matrix(rows) => {
            let n = rows.len();
            if n == 0 || rows.iter().any(|r| r.len() != n) {
                return Err(CliError::Usage(format!("{}: F must be a nonempty square array", path.display())));
            }
            Ok((CMatrix::from_fn(n, n, |i, j| C64::new(rows[i][j][0], rows[i][j][1])), None))
        }
    }
}

fn oplus(cmd: &OplusCommand, ctx: &mut Ctx) -> Out {
    let mut rep = Report::new();
    match cmd {
        OplusCommand::C { file } => {
            let (f, p) = read_f(file, ctx)?;
            let c = c_invariant(&f, ctx.tol.abs_tol)?;
            let mut data = json!({"c_matrix": c, "c_normalized": c_normalized(&f, ctx.tol.abs_tol)?});
            if let Some(p) = p {
                let cp = c_of_param(&p);
                rep.push("sign_convention", (cp + c).abs(), 1e-12 * c.abs().max(1.0));
                data["c_param"] = json!(cp);
            }
            Ok((rep, data))
        }
        OplusCommand::Moneq { first, second } => {
            let (f1, _) = read_f(first, ctx)?;
            let (f2, _) = read_f(second, ctx)?;
            let eq = monoidally_equivalent(&f1, &f2, ctx.tol.abs_tol)?;
            let c = [c_normalized(&f1, ctx.tol.abs_tol)?, c_normalized(&f2, ctx.tol.abs_tol)?];
            Ok((rep, json!({"equivalent": eq, "c": c})))
        }
    }
}

fn presentation(target: &PresentationTarget) -> Out {
    let p = emit_presentation(target)?;
    let text = serde_json::to_string(&p).expect("presentation serializes");
    let back: Presentation = serde_json::from_str(&text).map_err(|e| CliError::Failed(e.to_string()))?;
    let mut rep = Report::new();
    rep.push_bool("round_trip", back == p);
    Ok((rep, json!(p)))
}

fn emit(e: &EmitArgs, ctx: &mut Ctx) -> Out {
    let missing = |f: &str| CliError::Usage(format!("--{f} is required for this target"));
    let target = match e.target {
        TargetArg::Walk => {
            let walk = read_walk(e.walk.as_deref().ok_or_else(|| missing("walk"))?, ctx)?;
            let param = read_param(e.param.as_deref().ok_or_else(|| missing("param"))?, ctx)?;
            PresentationTarget::Walk { walk, param }
        }
        TargetArg::Oplus => PresentationTarget::OPlus { f: read_f(e.f.as_deref().ok_or_else(|| missing("f"))?, ctx)?.0 },
        TargetArg::Podles => PresentationTarget::Podles { q: e.q.ok_or_else(|| missing("q"))?, x: e.x.ok_or_else(|| missing("x"))? },
    };
    presentation(&target)
}
