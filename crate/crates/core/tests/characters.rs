mod common;

use common::y_poly;
use cq_core::graded::{dim_m_bullet, is_l_dominant, DecoratedDim, GradedDim};
use cq_core::qchar::{CharacterEngine, TMode};
use cq_core::sigma::{phi_dim, sigma_dim, tau_minus};
use cq_core::library_bipartite;

fn a3() -> cq_core::BipartiteGraph {
    library_bipartite("a3", Some(&["1".to_string(), "3".to_string()])).unwrap()
}

#[test]
fn kr_closed_forms_on_a3() {
    let bg = a3();
    let e = CharacterEngine::new(&bg, 11);
    assert_eq!(e.f(0).unwrap().at_one(), y_poly(&[(1, &[("Y[1,0]", 1), ("Y[1,2]", 1)])]));
    assert_eq!(e.f(1).unwrap().at_one(), y_poly(&[(1, &[("Y[2,1]", 1), ("Y[2,3]", 1)])]));
    assert_eq!(
        e.x(1).unwrap().at_one(),
        y_poly(&[(1, &[("Y[2,1]", 1)]), (1, &[("Y[1,2]", 1), ("Y[3,2]", 1), ("Y[2,3]", -1)])])
    );
    assert_eq!(
        e.x_prime(0).unwrap().at_one(),
        y_poly(&[
            (1, &[("Y[1,0]", 1)]),
            (1, &[("Y[2,1]", 1), ("Y[1,2]", -1)]),
            (1, &[("Y[3,2]", 1), ("Y[2,3]", -1)]),
        ])
    );
    assert_eq!(e.x(0).unwrap().at_one(), y_poly(&[(1, &[("Y[1,2]", 1)])]));
    assert_eq!(e.x_prime(1).unwrap().at_one(), y_poly(&[(1, &[("Y[2,3]", 1)])]));
}

#[test]
fn highest_weight_has_coefficient_one() {
    let bg = a3();
    let e = CharacterEngine::new(&bg, 3);
    for flat in [[1, 1, 0, 0, 0, 0], [2, 0, 1, 0, 1, 0], [0, 1, 0, 1, 0, 1], [1, 2, 1, 0, 0, 0]] {
        let c = e.character(&DecoratedDim::from_flat(&flat)).unwrap();
        let top = &c.terms[0];
        assert_eq!(top.v, vec![0, 0, 0]);
        assert_eq!(top.counting.coeffs.len(), 1);
        assert_eq!(top.shift, 0);
    }
}

#[test]
fn t_mode_uses_the_pairing_shift() {
    let bg = a3();
    let e = CharacterEngine::new(&bg, 3);
    let c = e.character(&DecoratedDim::simple(3, 1)).unwrap();
    assert_eq!(c.with_t(), c.unnormalized());
    let w = DecoratedDim::principal(vec![1, 1, 1]);
    let c = e.character(&w).unwrap();
    let t1 = c.with_t().specialize_to_one(&["t"]);
    assert_eq!(t1, c.at_one());
    assert!(c.terms.iter().all(|t| t.counting.poincare().is_ok()));
}

#[test]
fn truncated_character_rejects_slots_outside_the_grading() {
    let bg = a3();
    let e = CharacterEngine::new(&bg, 3);
    let mut w = GradedDim::new();
    w.set(0, 5, 1);
    assert!(e.truncated_character(&w, TMode::AtOne).is_err());
    let mut w = GradedDim::new();
    w.set(0, 0, 1);
    w.set(0, 2, 1);
    assert_eq!(
        e.truncated_character(&w, TMode::AtOne).unwrap(),
        y_poly(&[(1, &[("Y[1,0]", 1), ("Y[1,2]", 1)])])
    );
}

#[test]
fn kr_pair_is_dominant_with_shift_one() {
    let bg = a3();
    let w = DecoratedDim::kr(3, 0).to_graded(&bg);
    let mut v = GradedDim::new();
    v.set(0, 1, 1);
    assert!(is_l_dominant(&bg, &v, &w));
    assert_eq!(dim_m_bullet(&bg, &v, &w), 1);
    assert!(is_l_dominant(&bg, &GradedDim::new(), &w));
    assert!(!is_l_dominant(&bg, &v, &GradedDim::new()));
}

#[test]
fn phi_and_sigma_examples() {
    let mut w = DecoratedDim::zero(3);
    w.w[1] = 2;
    w.wf[1] = 1;
    let (phi, kr) = phi_dim(&w);
    assert_eq!(phi.w[1], 1);
    assert_eq!(phi.wf[1], 0);
    assert_eq!(kr, vec![0, 1, 0]);
    let (phi, kr) = phi_dim(&DecoratedDim::kr(3, 2));
    assert!(phi.is_zero());
    assert_eq!(kr, vec![0, 0, 1]);
    assert_eq!(sigma_dim(&a3(), &DecoratedDim::kr(3, 1)).w[1], 0);
}

#[test]
fn tau_minus_matches_sigma_phi() {
    let bg = library_bipartite("a2", None).unwrap();
    assert_eq!(tau_minus(&bg, &[1, 0]), vec![1, 1]);
    assert_eq!(tau_minus(&bg, &[-2, 0]), vec![-2, 0]);
    let bg = a3();
    for flat in [[1, 0, 2, 0, 1, 0], [0, 2, 1, 1, 0, 0], [2, 1, 0, 0, 2, 1]] {
        let w = DecoratedDim::from_flat(&flat);
        let gamma: Vec<i64> = (0..3).map(|i| w.w[i] as i64 - w.wf[i] as i64).collect();
        let (phi, _) = phi_dim(&w);
        let s = sigma_dim(&bg, &phi);
        let t = tau_minus(&bg, &gamma);
        for i in bg.i1() {
            assert_eq!(t[i].max(0) as usize, s.w[i]);
        }
    }
}

#[test]
fn tensor_factorization_examples() {
    let bg = library_bipartite("kronecker", None).unwrap();
    let e = CharacterEngine::new(&bg, 5);
    let f = e.tensor_factorize(&DecoratedDim::principal(vec![2, 2])).unwrap();
    assert_eq!(f, vec![DecoratedDim::principal(vec![1, 1]), DecoratedDim::principal(vec![1, 1])]);
    assert!(!e.condition_c(&DecoratedDim::principal(vec![1, 1])).unwrap());
    assert!(!e.condition_c(&DecoratedDim::principal(vec![2, 2])).unwrap());
    assert!(e.condition_c(&DecoratedDim::zero(2)).unwrap());

    let bg = library_bipartite("a2", None).unwrap();
    let e = CharacterEngine::new(&bg, 5);
    let f = e.tensor_factorize(&DecoratedDim::principal(vec![1, 1])).unwrap();
    assert_eq!(f, vec![DecoratedDim::principal(vec![1, 1])]);
    let mut w = DecoratedDim::zero(2);
    w.wf = vec![2, 1];
    let f = e.tensor_factorize(&w).unwrap();
    assert_eq!(f.len(), 3);
    assert!(f.iter().all(|d| d.w.iter().all(|&x| x == 0)));
    let prod = e.product_at_one(&f).unwrap();
    assert_eq!(prod, e.character(&w).unwrap().at_one());
    assert!(e.condition_c(&DecoratedDim::principal(vec![1, 1])).unwrap());
}

#[test]
fn characters_have_nonnegative_coefficients() {
    let bg = library_bipartite("d4", None).unwrap();
    let e = CharacterEngine::new(&bg, 9);
    let mut w = DecoratedDim::zero(4);
    w.w = vec![1, 2, 1, 1];
    let c = e.character(&w).unwrap();
    assert!(c.at_one().terms().all(|(_, k)| k > &0.into()));
    assert!(c.with_t().terms().all(|(_, k)| k > &0.into()));
}
