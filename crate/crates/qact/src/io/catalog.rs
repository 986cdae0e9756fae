//! The example files shipped in `data/`, rebuilt from the library.

use super::{AlgebraFile, CoactionFile, CocycleFile, CorepFile, Document, ModuleFile};
use crate::action::{restriction_coaction, Coaction};
use crate::corep::{symmetric3_standard, Corepresentation};
use crate::hopf::{function_algebra, group_algebra, GroupTable, HopfStarAlgebra, StarAlgebra};
use crate::numlin::{Tolerance, C64};
use crate::oplus::{chain_walk, perron_walk, ChainKind, Edge, ReciprocalWalk, WalkFile};
use crate::products::ModuleAction;
use crate::twist::{twist, Cocycle};

fn hopf_file(name: &str, h: &HopfStarAlgebra) -> AlgebraFile {
    AlgebraFile::from_hopf(&h.clone().with_name(name))
}

fn delta(name: &str, h: &HopfStarAlgebra) -> Document {
    Document {
        algebras: vec![hopf_file(name, h)],
        coactions: vec![CoactionFile::from_coaction("delta", name, name, &Coaction::comultiplication(h))],
        ..Document::default()
    }
}

fn twisted(n: usize) -> Document {
    let g = format!("C[Z{n}xZ{n}]");
    let w = Cocycle::bicharacter(n, C64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64), [[0, 0], [1, 0]]);
    let t = twist(&w, &Tolerance::default()).expect("bicharacter is a unitary cocycle");
    let cop = format!("{g}^cop");
    let alg = format!("{g}_omega");
    Document {
        algebras: vec![hopf_file(&g, w.hopf()), AlgebraFile::from_algebra(&alg, &t.algebra), hopf_file(&cop, t.coaction.hopf())],
        coactions: vec![CoactionFile::from_coaction("twist", &alg, &cop, &t.coaction)],
        cocycles: vec![CocycleFile::from_cocycle("omega", &g, &w)],
        ..Document::default()
    }
}

/// `(file name, contents)` for every shipped algebra, coaction, module and cocycle file.
pub fn catalog() -> Vec<(&'static str, Document)> {
    let s3 = GroupTable::symmetric3();
    let z2 = GroupTable::cyclic(2);
    let group_s3 = group_algebra(&s3);
    let fun_s3 = function_algebra(&s3);
    let swap = [vec![0, 1], vec![1, 0]];

    let standard = Corepresentation::from_group_representation(&symmetric3_standard()).expect("standard rep");
    let adjoint = Coaction::adjoint(&standard, &fun_s3).expect("adjoint action");
    let restriction = restriction_coaction(&s3, &s3.generated_subgroup(&[3])).expect("Z3 is a subgroup");

    let fun_z2 = function_algebra(&z2);
    let group_z2 = group_algebra(&z2);
    let swap_coaction = Coaction::from_permutation_action(&fun_z2, &swap).expect("swap");
    let swap_module = ModuleAction::from_permutation(&group_z2, &swap).expect("swap");
    let trivial = Coaction::trivial(StarAlgebra::one_dim(), group_z2.clone());
    let conj = ModuleAction::conjugation(&group_s3);

    vec![
        ("group_s3.json", Document { algebras: vec![hopf_file("C[S3]", &group_s3)], ..Document::default() }),
        ("functions_s3.json", Document { algebras: vec![hopf_file("C(S3)", &fun_s3)], ..Document::default() }),
        ("delta_group_s3.json", delta("C[S3]", &group_s3)),
        ("delta_functions_s3.json", delta("C(S3)", &fun_s3)),
        ("delta_group_z3.json", delta("C[Z3]", &group_algebra(&GroupTable::cyclic(3)))),
        (
            "adjoint_m2.json",
            Document {
                algebras: vec![AlgebraFile::from_algebra("M2", adjoint.algebra()), hopf_file("C(S3)", &fun_s3)],
                coactions: vec![CoactionFile::from_coaction("adjoint", "M2", "C(S3)", &adjoint)],
                corepresentations: vec![CorepFile::from_corep("standard", "C(S3)", &standard)],
                ..Document::default()
            },
        ),
        (
            "restriction_s3_z3.json",
            Document {
                algebras: vec![hopf_file("C(S3)", &fun_s3), hopf_file("C(Z3)", restriction.hopf())],
                coactions: vec![CoactionFile::from_coaction("restriction", "C(S3)", "C(Z3)", &restriction)],
                ..Document::default()
            },
        ),
        ("twist_z3z3.json", twisted(3)),
        ("twist_z2z2.json", twisted(2)),
        (
            "swap_z2.json",
            Document {
                algebras: vec![
                    AlgebraFile::from_algebra("C^2", swap_coaction.algebra()),
                    hopf_file("C(Z2)", &fun_z2),
                    hopf_file("C[Z2]", &group_z2),
                ],
                coactions: vec![CoactionFile::from_coaction("swap", "C^2", "C(Z2)", &swap_coaction)],
                modules: vec![ModuleFile::from_module("swap", "C^2", "C[Z2]", &swap_module)],
                ..Document::default()
            },
        ),
        (
            "trivial_z2.json",
            Document {
                algebras: vec![AlgebraFile::from_algebra("C", trivial.algebra()), hopf_file("C[Z2]", &group_z2)],
                coactions: vec![CoactionFile::from_coaction("trivial", "C", "C[Z2]", &trivial)],
                ..Document::default()
            },
        ),
        (
            "conjugation_s3.json",
            Document {
                algebras: vec![hopf_file("C[S3]", &group_s3)],
                modules: vec![ModuleFile::from_module("conjugation", "C[S3]", "C[S3]", &conj)],
                ..Document::default()
            },
        ),
    ]
}

/// Shipped walk files.
pub fn walk_catalog() -> Vec<(&'static str, WalkFile)> {
    let loop_pair = ReciprocalWalk {
        vertices: vec!["v".into()],
        edges: vec![
            Edge { id: "a".into(), src: 0, tgt: 0, w: 2.0, sgn: 1, bar: 1 },
            Edge { id: "b".into(), src: 0, tgt: 0, w: 0.5, sgn: 1, bar: 0 },
        ],
        delta: 2.5,
        boundary: vec![],
    };
    let k3 = perron_walk(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)], &[1, 0, 3, 2, 5, 4]).expect("K3 is connected");
    vec![
        ("walk_loop_pair.json", WalkFile::from_walk(&loop_pair)),
        ("walk_quotient_n4.json", WalkFile::from_walk(&chain_walk(&ChainKind::Quotient { n: 4 }, 6).expect("N = 4"))),
        ("walk_podles.json", WalkFile::from_walk(&chain_walk(&ChainKind::Podles { q: 0.5, x: 0.0 }, 10).expect("q = 0.5"))),
        ("walk_k3.json", WalkFile::from_walk(&k3)),
    ]
}

/// Graph and F-parameter files for the `walk perron`, `walk chain` and `oplus` commands.
pub fn aux_catalog() -> Vec<(&'static str, serde_json::Value)> {
    use serde_json::json;
    let su = |q: f64| json!(crate::oplus::FParam::su_q(q).expect("q in range"));
    vec![
        ("graph_k3.json", json!({"n": 3, "edges": [[0, 1], [1, 0], [1, 2], [2, 1], [0, 2], [2, 0]], "bar": [1, 0, 3, 2, 5, 4]})),
        ("f_su_half.json", su(0.5)),
        ("f_su_minus_half.json", su(-0.5)),
        ("f_su_quarter.json", su(0.25)),
        ("f_o3.json", json!(crate::oplus::FParam::identity(3))),
        // F = [[0, 2], [-1/2, 0]] as an explicit matrix
        ("f_matrix_su_quarter.json", json!([[[0.0, 0.0], [2.0, 0.0]], [[-0.5, 0.0], [0.0, 0.0]]])),
    ]
}
