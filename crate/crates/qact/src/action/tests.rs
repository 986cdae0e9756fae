use super::*;
use crate::corep::tests::s3_standard;
use crate::corep::{decompose, tensor};
use crate::hopf::{builders::restriction_to_subgroup, function_algebra, group_algebra, GroupTable};
use crate::numlin::c;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn s3_standard_corep() -> Corepresentation {
    Corepresentation::from_group_representation(&s3_standard()).unwrap()
}

fn adjoint_m2() -> Coaction {
    let h = function_algebra(&GroupTable::symmetric3());
    Coaction::adjoint(&s3_standard_corep(), &h).unwrap()
}

#[test]
fn standard_examples_are_coactions() {
    let z3 = group_algebra(&GroupTable::cyclic(3));
    assert!(verify_coaction(&Coaction::comultiplication(&z3), &tol()).pass());
    assert!(verify_coaction(&Coaction::trivial(StarAlgebra::one_dim(), z3.clone()), &tol()).pass());
    assert!(verify_coaction(&adjoint_m2(), &tol()).pass());
    let g = GroupTable::symmetric3();
    let perm: Vec<Vec<usize>> = (0..6).map(|x| (0..6).map(|y| g.mul(x, y)).collect()).collect();
    let act = Coaction::from_permutation_action(&function_algebra(&g), &perm).unwrap();
    assert!(verify_coaction(&act, &tol()).pass());
}

#[test]
fn broken_coaction_is_flagged() {
    let z3 = group_algebra(&GroupTable::cyclic(3));
    let good = Coaction::comultiplication(&z3);
    let mut alpha = good.alpha_matrix().clone();
    alpha[(0, 1)] += c(0.1, 0.0);
    let bad = Coaction::new(good.algebra().clone(), z3, alpha).unwrap();
    assert!(!verify_coaction(&bad, &tol()).pass());
}

#[test]
fn fixed_points_and_homogeneity() {
    let z3 = group_algebra(&GroupTable::cyclic(3));
    assert_eq!(fixed_points(&Coaction::comultiplication(&z3), &tol()).unwrap().ncols(), 1);
    assert!(is_homogeneous(&adjoint_m2(), &tol()).unwrap());
    let triv = Coaction::trivial(StarAlgebra::functions_on_points(2), z3);
    assert_eq!(fixed_points(&triv, &tol()).unwrap().ncols(), 2);
    assert!(!is_homogeneous(&triv, &tol()).unwrap());
}

#[test]
fn conditional_expectation_is_idempotent() {
    let a = adjoint_m2();
    let phi = haar_state(a.hopf(), &tol()).unwrap().phi;
    let e = conditional_expectation(&a, &phi);
    assert!(max_abs(&(&e * &e - &e)) < 1e-10);
    // lands on the scalars
    let x = a.algebra().basis(1);
    let y = &e * &x;
    assert!(max_abs_vec(&(a.algebra().product(&y, &a.algebra().basis(2)) - a.algebra().product(&a.algebra().basis(2), &y))) < 1e-10);
}

#[test]
fn adjoint_isotypes_match_tensor_decomposition() {
    let a = adjoint_m2();
    let irreps = irrep_data(a.hopf(), &tol(), 0).unwrap();
    let phi = haar_state(a.hopf(), &tol()).unwrap().phi;
    let comps = isotypical(&a, &irreps, &phi, &tol()).unwrap();
    let (sum, idem, orth) = isotypical_residuals(&comps);
    assert!(sum < 1e-9 && idem < 1e-9 && orth < 1e-9);
    // oracle: B(H) ≅ H ⊗ H̄ decomposed by intertwiners
    let u = s3_standard_corep();
    let h = a.hopf();
    let tp = tensor(&u, &u, h).unwrap();
    let dec = decompose(&tp, &tol(), 0).unwrap();
    let mut want: Vec<(usize, usize)> = dec.iter().map(|d| (d.irrep.dim(), d.multiplicity)).collect();
    let mut got: Vec<(usize, usize)> =
        comps.iter().filter(|c| c.multiplicity() > 0).map(|c| (irreps[c.irrep_index].irrep.dim(), c.multiplicity())).collect();
    want.sort();
    got.sort();
    assert_eq!(got, want);
    assert_eq!(got, vec![(1, 1), (1, 1), (2, 1)]);
}

#[test]
fn comultiplication_is_a_torsor() {
    for h in [group_algebra(&GroupTable::cyclic(3)), function_algebra(&GroupTable::symmetric3())] {
        let a = Coaction::comultiplication(&h);
        let irreps = irrep_data(&h, &tol(), 0).unwrap();
        let free = is_free(&a, &tol()).unwrap();
        assert!(free.ellwood && free.galois);
        let t = is_torsor(&a, &irreps, &tol()).unwrap();
        assert!(t.is_torsor() && t.unitary_coefficients && t.multiplicities);
    }
}

#[test]
fn adjoint_is_homogeneous_not_free() {
    let a = adjoint_m2();
    let free = is_free(&a, &tol()).unwrap();
    assert!(!free.ellwood);
    assert!(!free.galois);
    let irreps = irrep_data(a.hopf(), &tol(), 0).unwrap();
    let t = is_torsor(&a, &irreps, &tol()).unwrap();
    assert!(!t.is_torsor());
}

#[test]
fn modular_data_bounds() {
    let a = adjoint_m2();
    let irreps = irrep_data(a.hopf(), &tol(), 0).unwrap();
    let data = homogeneous_data(&a, &irreps, &tol()).unwrap();
    assert!(data.report.pass(), "{:?}", data.report.first_failure());
    for p in &data.per_irrep {
        assert!(p.mult as f64 <= p.mult_q + 1e-9);
        assert!(p.mult_q <= p.dim_q + 1e-9);
    }
}

#[test]
fn comultiplication_embeds() {
    let h = function_algebra(&GroupTable::symmetric3());
    let e = embeddable_check(&Coaction::comultiplication(&h), &tol()).unwrap();
    assert!(e.report.pass());
}

#[test]
fn adjoint_has_no_character() {
    assert_eq!(embeddable_check(&adjoint_m2(), &tol()).unwrap_err(), ActionError::NoCharacter);
}

#[test]
fn quotient_space_is_quotient_type() {
    let g = GroupTable::symmetric3();
    let big = function_algebra(&g);
    let sub = g.generated_subgroup(&[1]);
    let (small, pi) = restriction_to_subgroup(&g, &sub).unwrap();
    let q = invariant_subalgebra(&big, &small, &pi, &tol()).unwrap();
    assert_eq!(q.algebra().dim(), 3);
    assert!(verify_coaction(&q, &tol()).pass());
    assert!(is_homogeneous(&q, &tol()).unwrap());
    let m = quotient_type_check(&q, &[(small, pi)], &tol()).unwrap();
    assert_eq!(m.map(|m| m.quotient_index), Some(0));
}

#[test]
fn restriction_coaction_is_free() {
    let g = GroupTable::symmetric3();
    let a = restriction_coaction(&g, &g.generated_subgroup(&[3])).unwrap();
    assert!(verify_coaction(&a, &tol()).pass());
    let f = is_free(&a, &tol()).unwrap();
    assert!(f.ellwood && f.galois);
    assert!(!is_homogeneous(&a, &tol()).unwrap());
}

#[test]
fn trivial_point_blocks_are_dual_irreps() {
    let h = group_algebra(&GroupTable::cyclic(2));
    let a = Coaction::trivial(StarAlgebra::one_dim(), h.clone());
    let blocks = equivariant_blocks(&a, &tol(), 0).unwrap();
    assert_eq!(blocks.len(), 2);
    let irreps = irrep_data(&h, &tol(), 0).unwrap();
    let mut mats: Vec<Vec<i64>> = irreps
        .iter()
        .map(|ir| fusion_matrix(&a, &blocks, &ir.irrep, &tol()).unwrap().iter().cloned().collect())
        .collect();
    mats.sort();
    assert_eq!(mats, vec![vec![0, 1, 1, 0], vec![1, 0, 0, 1]]);
}

#[test]
fn torsor_has_one_block() {
    let h = group_algebra(&GroupTable::cyclic(3));
    let a = Coaction::comultiplication(&h);
    let blocks = equivariant_blocks(&a, &tol(), 0).unwrap();
    assert_eq!(blocks.len(), 1);
    assert_eq!(blocks[0].n, 3);
    for ir in irrep_data(&h, &tol(), 0).unwrap() {
        let m = fusion_matrix(&a, &blocks, &ir.irrep, &tol()).unwrap();
        assert_eq!(m, nalgebra::DMatrix::from_element(1, 1, 1));
    }
}

#[test]
fn adjoint_fusion_is_multiplicative() {
    let a = adjoint_m2();
    let h = a.hopf();
    let blocks = equivariant_blocks(&a, &tol(), 0).unwrap();
    let irreps = irrep_data(h, &tol(), 0).unwrap();
    let ms: Vec<_> = irreps.iter().map(|ir| fusion_matrix(&a, &blocks, &ir.irrep, &tol()).unwrap()).collect();
    for (i, u) in irreps.iter().enumerate() {
        for (j, v) in irreps.iter().enumerate() {
            let tp = tensor(&u.irrep, &v.irrep, h).unwrap();
            let direct = fusion_matrix(&a, &blocks, &tp, &tol()).unwrap();
            assert_eq!(&ms[i] * &ms[j], direct);
        }
    }
}

#[test]
fn stabilization_is_free() {
    let z2 = group_algebra(&GroupTable::cyclic(2));
    let triv = Coaction::trivial(StarAlgebra::one_dim(), z2.clone());
    let irreps = irrep_data(&z2, &tol(), 0).unwrap();
    let s = stabilize(&triv, &irreps, &tol(), 0).unwrap();
    assert_eq!(s.blocks, 2);
    assert!(verify_coaction(&s.coaction, &tol()).pass());
    assert_eq!(fixed_points(&s.coaction, &tol()).unwrap().ncols(), 2);
    let f = is_free(&s.coaction, &tol()).unwrap();
    assert!(f.ellwood && f.galois);

    let a = adjoint_m2();
    let irreps = irrep_data(a.hopf(), &tol(), 0).unwrap();
    let blocks = equivariant_blocks(&a, &tol(), 0).unwrap();
    let s = stabilize(&a, &irreps, &tol(), 0).unwrap();
    assert_eq!(s.blocks, blocks.len());
    assert!(verify_coaction(&s.coaction, &tol()).pass());
    assert_eq!(fixed_points(&s.coaction, &tol()).unwrap().ncols(), blocks.len());
    let f = is_free(&s.coaction, &tol()).unwrap();
    assert!(f.ellwood && f.galois);
}

#[test]
fn stabilization_ambient_is_a_coaction() {
    let a = adjoint_m2();
    let irreps = irrep_data(a.hopf(), &tol(), 0).unwrap();
    let b = equivariant::ambient_coaction(&a, &irreps).unwrap();
    assert_eq!(b.algebra().dim(), 16 * 4);
    assert!(verify_coaction(&b, &tol()).pass());
}
