use super::*;
use crate::action::homogeneous_data;
use crate::hopf::{function_algebra, group_algebra, haar_state, verify_hopf};
use crate::numlin::{c, wedderburn_blocks, WedderburnOptions};
use rand::{Rng, SeedableRng};

fn tol() -> Tolerance {
    Tolerance::default()
}

fn zeta(n: usize) -> C64 {
    C64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64)
}

/// `ζ^{bc}`
fn torus(n: usize) -> Cocycle {
    Cocycle::bicharacter(n, zeta(n), [[0, 0], [1, 0]])
}

fn blocks(a: &StarAlgebra) -> Vec<usize> {
    wedderburn_blocks(a, &WedderburnOptions::default()).unwrap().iter().map(|b| b.n).collect()
}

#[test]
fn trivial_cocycle_passes() {
    for h in [group_algebra(&GroupTable::symmetric3()), function_algebra(&GroupTable::symmetric3())] {
        let w = Cocycle::trivial(&h);
        assert!(verify_cocycle(&w, &tol()).pass());
        let t = twist(&w, &tol()).unwrap();
        assert!(crate::hopf::structure_distance(&h, &HopfStarAlgebra::new("t", t.algebra.clone(), h.comult_matrix().clone(), h.counit().clone(), h.antipode_matrix().clone()).unwrap()) < 1e-12);
    }
}

#[test]
fn bicharacter_cocycles() {
    assert!(verify_cocycle(&torus(3), &tol()).pass());
    assert!(verify_cocycle(&torus(2), &tol()).pass());
    let bad = Cocycle::bicharacter(3, c(2.0, 0.0), [[0, 0], [1, 0]]);
    let rep = verify_cocycle(&bad, &tol());
    assert!(rep.residual("unitary").unwrap() > 1e-9);
    assert!(matches!(twist(&bad, &tol()), Err(TwistError::CocycleInvalid(_))));
}

#[test]
fn torus_twist_is_matrix_algebra() {
    for (n, size) in [(3, 3), (2, 2)] {
        let t = twist(&torus(n), &tol()).unwrap();
        assert!(t.algebra.verify().max() < 1e-9);
        assert_eq!(blocks(&t.algebra), vec![size]);
        assert!(verify_coaction(&t.coaction, &tol()).pass());
        let irreps = irrep_data(t.coaction.hopf(), &tol(), 0).unwrap();
        assert!(is_torsor(&t.coaction, &irreps, &tol()).unwrap().is_torsor());
    }
}

#[test]
fn quantum_torus_relation() {
    let t = twist(&torus(3), &tol()).unwrap();
    let (u, v) = (t.algebra.basis(3), t.algebra.basis(1));
    // ζ^{bc}: V·U = ζ U·V
    let p = commutation_phase(&t.algebra, &v, &u, &tol()).unwrap();
    assert!((p - zeta(3)).norm() < 1e-12);
    let other = twist(&Cocycle::bicharacter(3, zeta(3), [[0, 1], [0, 0]]), &tol()).unwrap();
    let q = commutation_phase(&other.algebra, &u, &v, &tol()).unwrap();
    assert!((q - zeta(3)).norm() < 1e-12);
}

#[test]
fn twisted_star_is_an_antiinvolution() {
    let t = twist(&torus(3), &tol()).unwrap();
    let r = t.algebra.verify();
    assert!(r.involution < 1e-12 && r.anti_multiplicative < 1e-12);
    assert!(t.algebra.trace_gram_min_eig().unwrap() > 0.0);
}

#[test]
fn associativity_tracks_cocycle_identity() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let base = torus(3);
    let t = tol().abs_tol;
    assert!(associativity_residual(&base) <= t && cocycle_residual(&base) <= t);
    for _ in 0..20 {
        let mut w = base.omega().clone();
        let (i, j) = (rng.gen_range(1..9), rng.gen_range(1..9));
        w[(i, j)] += c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let p = Cocycle::new(base.hopf().clone(), w).unwrap();
        let (a, k) = (associativity_residual(&p), cocycle_residual(&p));
        assert!((a <= t && k <= t) || (a > 10.0 * t && k > 10.0 * t), "assoc {a:e} cocycle {k:e}");
    }
}

#[test]
fn invariant_state_is_haar() {
    let t = twist(&torus(3), &tol()).unwrap();
    let irreps = irrep_data(t.coaction.hopf(), &tol(), 0).unwrap();
    let data = homogeneous_data(&t.coaction, &irreps, &tol()).unwrap();
    let haar = haar_state(t.coaction.hopf(), &tol()).unwrap().phi;
    assert!(max_abs_vec(&(data.phi - haar)) < 1e-10);
    for p in &data.per_irrep {
        assert_eq!(p.mult, p.dim);
    }
}

#[test]
fn mirroring_round_trips() {
    let h = function_algebra(&GroupTable::symmetric3());
    let left = LeftCoaction::comultiplication(&h);
    let right = left.to_right().unwrap();
    assert!(verify_coaction(&right, &tol()).pass());
    let back = LeftCoaction::from_right(&right).unwrap();
    assert!(max_abs(&(back.beta - &left.beta)) < 1e-15);
    assert!(crate::hopf::structure_distance(&back.hopf, &h) < 1e-12);
}

#[test]
fn reflect_recovers_group() {
    for h in [group_algebra(&GroupTable::cyclic(3)), function_algebra(&GroupTable::symmetric3()), group_algebra(&GroupTable::symmetric3())] {
        let r = reflect(&Coaction::comultiplication(&h), &tol()).unwrap();
        assert!(verify_hopf(&r.hopf, &tol()).pass(), "{:?}", verify_hopf(&r.hopf, &tol()).first_failure());
        let m = match_hopf(&r.hopf, &h, &tol()).unwrap().expect("isomorphic");
        assert!(m.residual < 1e-9, "{}", m.residual);
    }
}

#[test]
fn reflect_twisted_torus() {
    for n in [3, 2] {
        let t = twist(&torus(n), &tol()).unwrap();
        let r = reflect(&t.coaction, &tol()).unwrap();
        assert_eq!(r.hopf.dim(), n * n);
        assert!(verify_hopf(&r.hopf, &tol()).pass());
        let target = group_algebra(&GroupTable::cyclic(n).direct_product(&GroupTable::cyclic(n)));
        let m = match_hopf(&r.hopf, &target, &tol()).unwrap().expect("isomorphic");
        assert!(m.residual < 1e-9);
        let b = bitorsor_check(&t.coaction, &r.coaction, &tol()).unwrap();
        assert!(b.pass(), "{:?}", b.first_failure());
    }
}

#[test]
fn bitorsor_examples() {
    let h = function_algebra(&GroupTable::symmetric3());
    let right = Coaction::comultiplication(&h);
    let left = LeftCoaction::comultiplication(&h);
    assert!(bitorsor_check(&right, &left, &tol()).unwrap().pass());
    let triv = LeftCoaction::trivial(h.algebra().clone(), h.clone());
    let rep = bitorsor_check(&right, &triv, &tol()).unwrap();
    assert!(!rep.pass());
    assert_eq!(rep.residual("left_torsor"), Some(1.0));
}

#[test]
fn non_torsor_is_rejected() {
    let h = group_algebra(&GroupTable::cyclic(2));
    let triv = Coaction::trivial(StarAlgebra::functions_on_points(2), h);
    assert!(matches!(reflect(&triv, &tol()), Err(TwistError::NotATorsor) | Err(TwistError::Action(_))));
}
