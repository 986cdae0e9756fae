use super::*;
use proptest::prelude::*;

#[test]
fn c_examples() {
    let id = FParam::identity(3);
    assert_eq!(c_of_param(&id), -3.0);
    assert!((c_invariant(&id.matrix(), 1e-9).unwrap() - 3.0).abs() < 1e-12);
    for q in [0.5, 0.2, -0.3] {
        let p = FParam::su_q(q).unwrap();
        let c = c_invariant(&p.matrix(), 1e-9).unwrap();
        assert!((c - (-q - 1.0 / q)).abs() < 1e-12);
    }
    let bad = CMatrix::from_row_slice(2, 2, &[C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
    assert!(matches!(c_invariant(&bad, 1e-9), Err(OplusError::NotOrthogonalType(_))));
}

#[test]
fn four_dimensional_torsor_parameter() {
    let (q1, q2) = (0.4_f64, 0.7_f64);
    let (r1, r2) = (q1.sqrt(), q2.sqrt());
    let p = FParam::new(vec![1, 0, 3, 2], vec![-1, 1, -1, 1], vec![r1, 1.0 / r1, r2, 1.0 / r2]).unwrap();
    let expected = q1 + 1.0 / q1 + q2 + 1.0 / q2;
    assert!((c_of_param(&p).abs() - expected).abs() < 1e-12);
    assert!((c_invariant(&p.matrix(), 1e-9).unwrap().abs() - expected).abs() < 1e-12);
}

#[test]
fn monoidal_equivalence() {
    let i3 = FParam::identity(3).matrix();
    let i4 = FParam::identity(4).matrix();
    let r = (3.0 - 5f64.sqrt()) / 2.0;
    assert!(monoidally_equivalent(&i3, &i3, 1e-9).unwrap());
    assert!(!monoidally_equivalent(&i3, &i4, 1e-9).unwrap());
    assert!(monoidally_equivalent(&i3, &FParam::su_q(-r).unwrap().matrix(), 1e-9).unwrap());
    assert!(!monoidally_equivalent(&i3, &FParam::su_q(r).unwrap().matrix(), 1e-9).unwrap());
    let scaled = &i3 * C64::new(2.0, 0.0);
    assert!(monoidally_equivalent(&i3, &scaled, 1e-9).unwrap());
}

#[test]
fn param_validation() {
    assert!(FParam::new(vec![1, 1], vec![1, 1], vec![1.0, 1.0]).is_err());
    assert!(FParam::new(vec![1, 0], vec![1, 1], vec![2.0, 1.0]).is_err());
    assert!(FParam::new(vec![0, 2, 1], vec![1, 1, -1], vec![1.0, 2.0, 0.5]).is_err());
    assert!(FParam::su_q(0.0).is_err());
}

fn param_strategy() -> impl Strategy<Value = FParam> {
    (0usize..3, 0usize..3, any::<bool>(), prop::collection::vec(0.1f64..5.0, 3), prop::collection::vec(any::<bool>(), 6)).prop_map(
        |(fixed, pairs, neg, ls, signs)| {
            let eps_const: i8 = if neg && fixed == 0 { -1 } else { 1 };
            let (mut bar, mut eps, mut lambda) = (vec![], vec![], vec![]);
            for _ in 0..fixed {
                let i = bar.len();
                bar.push(i);
                eps.push(if signs[i % 6] { 1 } else { -1 });
                lambda.push(1.0);
            }
            for k in 0..pairs.max(if fixed == 0 { 1 } else { 0 }) {
                let i = bar.len();
                bar.extend([i + 1, i]);
                let s: i8 = if signs[(i + 1) % 6] { 1 } else { -1 };
                eps.extend([s, s * eps_const]);
                lambda.extend([ls[k], 1.0 / ls[k]]);
            }
            // fixed points force ε = +1
            for e in eps.iter_mut().take(fixed) {
                *e = 1;
            }
            FParam::new(bar, eps, lambda).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn c_formulas_differ_by_sign(p in param_strategy()) {
        let a = c_of_param(&p);
        let b = c_invariant(&p.matrix(), 1e-9).unwrap();
        prop_assert!((a + b).abs() <= 1e-10 * a.abs().max(1.0));
        prop_assert!(a.abs() >= p.n() as f64 - 1e-10);
    }

    #[test]
    fn qdim_is_multiplicative(c in 2.0f64..6.0, m in 0u32..6, n in 0u32..6) {
        // d_{m/2} d_{n/2} = Σ_{k=|m−n|, step 2}^{m+n} d_{k/2}
        let lhs = qdim(c, FusionLabel(m)) * qdim(c, FusionLabel(n));
        let rhs: f64 = (m.abs_diff(n)..=m + n).step_by(2).map(|k| qdim(c, FusionLabel(k))).sum();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1.0));
        let q = (c - (c * c - 4.0).sqrt()) / 2.0;
        let qi = quantum_integer(m + 1, q);
        prop_assert!((qdim(c, FusionLabel(m)) - qi).abs() <= 1e-10 * qi.abs().max(1.0));
    }
}

fn loop_pair(w: f64) -> ReciprocalWalk {
    ReciprocalWalk {
        vertices: vec!["v".into()],
        edges: vec![
            Edge { id: "a".into(), src: 0, tgt: 0, w, sgn: 1, bar: 1 },
            Edge { id: "b".into(), src: 0, tgt: 0, w: 1.0 / w, sgn: 1, bar: 0 },
        ],
        delta: w + 1.0 / w,
        boundary: vec![],
    }
}

#[test]
fn loop_pair_walks() {
    for w in [0.1, 1.0, 3.7] {
        let walk = loop_pair(w);
        assert!(verify_walk(&walk).pass());
        assert!(norm_check(&walk).unwrap().pass);
    }
}

#[test]
fn quotient_chain_weights() {
    let w = chain_walk(&ChainKind::Quotient { n: 4 }, 6).unwrap();
    let weight = |s: usize, t: usize| w.edges.iter().find(|e| (e.src, e.tgt) == (s, t)).unwrap().w;
    let firsts = [weight(0, 0), weight(0, 1), weight(1, 0), weight(1, 2)];
    for (a, b) in firsts.iter().zip([1.0, 3.0, 1.0 / 3.0, 8.0 / 3.0]) {
        assert!((a - b).abs() < 1e-12, "{firsts:?}");
    }
    let rep = verify_walk(&w);
    assert!(rep.pass(), "{:?}", rep.report.first_failure());
    assert_eq!(rep.truncation_defects.len(), 1);
    assert!(norm_check(&w).unwrap().pass);
    assert!(chain_walk(&ChainKind::Quotient { n: 2 }, 6).is_err());
}

#[test]
fn podles_chain() {
    let w = chain_walk(&ChainKind::Podles { q: 0.5, x: 1.0 }, 5).unwrap();
    assert!((w.edges[0].w - 1.25).abs() < 1e-12);
    let w = chain_walk(&ChainKind::Podles { q: 0.5, x: 0.0 }, 10).unwrap();
    let rep = verify_walk(&w);
    assert!(rep.pass(), "{:?}", rep.report.first_failure());
    assert_eq!(rep.truncation_defects.iter().map(|d| d.0).collect::<Vec<_>>(), vec![0, 9]);
    assert!(rep.truncation_defects.iter().all(|d| d.1 > 1e-3));
    let nc = norm_check(&w).unwrap();
    assert!(nc.pass && (nc.delta - 2.5).abs() < 1e-12);
    assert!(chain_walk(&ChainKind::Podles { q: 1.5, x: 0.0 }, 10).is_err());
}

#[test]
fn corrupted_weight_flags_one_pair() {
    let mut w = chain_walk(&ChainKind::Podles { q: 0.5, x: 0.0 }, 10).unwrap();
    w.edges[6].w *= 1.01;
    let rep = verify_walk(&w);
    assert!(!rep.pass());
    assert_eq!(rep.reciprocity_failures, vec![(6, 7)]);
}

#[test]
fn torsor_chain() {
    let (q1, q2) = (0.4_f64, 0.7_f64);
    let p = FParam::new(vec![1, 0, 3, 2], vec![1, 1, 1, 1], vec![q1, 1.0 / q1, q2, 1.0 / q2]).unwrap();
    let w = chain_walk(&ChainKind::Torsor { param: p.clone() }, 1).unwrap();
    assert_eq!(w.edges.len(), 4);
    assert!((w.edges[1].w - q1.powi(-2)).abs() < 1e-12);
    assert!(verify_walk(&w).pass());
    let neg = FParam::new(vec![1, 0, 3, 2], vec![-1, 1, -1, 1], p.lambda.clone()).unwrap();
    let wn = chain_walk(&ChainKind::Torsor { param: neg }, 1).unwrap();
    assert!(wn.delta < 0.0);
    assert!(verify_walk(&wn).pass(), "{:?}", verify_walk(&wn).report.first_failure());
}

#[test]
fn perron_examples() {
    let w = perron_walk(1, &[(0, 0), (0, 0)], &[1, 0]).unwrap();
    assert!((w.delta - 2.0).abs() < 1e-12);
    let p3 = perron_walk(3, &[(0, 1), (1, 0), (1, 2), (2, 1)], &[1, 0, 3, 2]).unwrap();
    assert!((p3.delta - 2f64.sqrt()).abs() < 1e-12);
    assert!((p3.edges[0].w - 2f64.sqrt()).abs() < 1e-12);
    assert!(verify_walk(&p3).pass());
    let k3 = perron_walk(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)], &[1, 0, 3, 2, 5, 4]).unwrap();
    assert!((k3.delta - 2.0).abs() < 1e-12);
    assert!(k3.edges.iter().all(|e| (e.w - 1.0).abs() < 1e-12));
    assert!(verify_walk(&k3).pass() && norm_check(&k3).unwrap().pass);
    assert_eq!(perron_walk(2, &[(0, 0), (1, 1)], &[0, 1]), Err(OplusError::NotConnected));
}

#[test]
fn walk_file_round_trip() {
    let w = chain_walk(&ChainKind::Quotient { n: 5 }, 4).unwrap();
    let json = serde_json::to_string(&WalkFile::from_walk(&w)).unwrap();
    let back: WalkFile = serde_json::from_str(&json).unwrap();
    assert_eq!(back.into_walk().unwrap(), w);
}

#[test]
fn fusion_recursion() {
    let two = fusion_matrices(&perron_walk(1, &[(0, 0), (0, 0)], &[1, 0]).unwrap(), FusionLabel(4)).unwrap();
    let diag: Vec<f64> = two.iter().map(|m| m[(0, 0)]).collect();
    assert_eq!(diag, vec![1.0, 2.0, 3.0, 4.0, 5.0]);
    let k3 = perron_walk(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)], &[1, 0, 3, 2, 5, 4]).unwrap();
    let m = fusion_matrices(&k3, FusionLabel(2)).unwrap();
    assert_eq!(m[2], &m[1] * &m[1] - nalgebra::DMatrix::identity(3, 3));
    let podles = chain_walk(&ChainKind::Podles { q: 0.5, x: 0.0 }, 10).unwrap();
    let m = fusion_matrices(&podles, FusionLabel(3)).unwrap();
    assert_eq!(&m[1] * &m[2], &m[1] + &m[3]);
    assert!((qdim(2.5, FusionLabel::from_f64(1.0).unwrap()) - 5.25).abs() < 1e-10);
    assert!((quantum_integer(3, 0.5) - 5.25).abs() < 1e-12);
}

#[test]
fn fusion_labels() {
    assert_eq!(FusionLabel::from_f64(1.5).unwrap(), FusionLabel(3));
    assert_eq!(FusionLabel(3).to_string(), "3/2");
    assert!(FusionLabel::from_f64(0.3).is_err());
}

fn find<'a>(p: &'a Presentation, lhs: &[&str]) -> Vec<&'a Relation> {
    p.relations.iter().filter(|r| r.lhs.len() == 1 && r.lhs[0].monomial == lhs).collect()
}

#[test]
fn podles_presentation_coefficients() {
    let p = emit_presentation(&PresentationTarget::Podles { q: 0.5, x: 0.0 }).unwrap();
    let xsx = find(&p, &["X*", "X"])[0].factored.clone().unwrap();
    assert_eq!((xsx[0][1].coeff[0], xsx[1][1].coeff[0]), (-2.0, 2.0));
    let xxs = find(&p, &["X", "X*"])[0].factored.clone().unwrap();
    assert_eq!((xxs[0][1].coeff[0], xxs[1][1].coeff[0]), (-0.5, 0.5));
    assert_eq!(find(&p, &["X", "Z"])[0].rhs[0].coeff[0], 0.25);
    let json = serde_json::to_string(&p).unwrap();
    assert_eq!(serde_json::from_str::<Presentation>(&json).unwrap(), p);
}

#[test]
fn oplus_presentation_conjugation() {
    let p = emit_presentation(&PresentationTarget::OPlus { f: FParam::su_q(0.5).unwrap().matrix() }).unwrap();
    let r = p.relations.iter().find(|r| r.rhs.len() == 1 && r.rhs[0].monomial == ["U_{1,1}"]).unwrap();
    assert_eq!(r.lhs.len(), 1);
    assert_eq!(r.lhs[0].monomial, ["U_{2,2}*"]);
    assert!((r.lhs[0].coeff[0] - 1.0).abs() < 1e-12);
}

#[test]
fn walk_presentation_single_vertex() {
    let p = FParam::identity(2);
    let walk = chain_walk(&ChainKind::Torsor { param: p.clone() }, 1).unwrap();
    let pres = emit_presentation(&PresentationTarget::Walk { walk: walk.clone(), param: p }).unwrap();
    assert!(pres.generators.iter().all(|g| g.starts_with("U_")));
    assert_eq!(pres.generators.len(), 4);
    assert!(pres.relations.iter().flat_map(|r| r.rhs.iter()).all(|t| t.monomial.iter().all(|m| !m.starts_with("d_"))));
    let bad = emit_presentation(&PresentationTarget::Walk { walk, param: FParam::identity(3) });
    assert!(matches!(bad, Err(OplusError::DeltaMismatch { .. })));
}

#[test]
fn morita() {
    assert!(podles_morita(0.7, 0.7));
    assert!(podles_morita(0.25, 1.25));
    assert!(!podles_morita(0.25, 0.6));
    assert!(podles_morita(0.3, -0.3));
}
