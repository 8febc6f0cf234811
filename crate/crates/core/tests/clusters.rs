use cq_core::verify::census;
use cq_core::{
    build_x_quiver, build_z_quiver, enumerate_clusters, library_bipartite, ExchangeMatrix, LaurentPoly, PrincipalSeed, Seed,
    VarNaming,
};

fn coefficient_free(name: &str) -> Seed {
    let bg = library_bipartite(name, None).unwrap();
    Seed::initial(build_x_quiver(&bg).to_matrix().principal_block(), &VarNaming::cluster())
}

fn x_seed(name: &str) -> Seed {
    let bg = library_bipartite(name, None).unwrap();
    Seed::initial(build_x_quiver(&bg).to_matrix(), &VarNaming::cluster())
}

#[test]
fn census_of_finite_types() {
    let c = census(&coefficient_free("a2"), 1000).unwrap();
    assert_eq!((c.variables, c.clusters, c.closed), (5, 5, true));
    let c = census(&x_seed("a3"), 1000).unwrap();
    assert_eq!((c.variables, c.closed), (9, true));
    assert_eq!(c.clusters, 14);
    let c = census(&x_seed("d4"), 1000).unwrap();
    assert_eq!((c.variables, c.clusters), (16, 50));
}

#[test]
fn kronecker_is_not_closed() {
    let c = census(&coefficient_free("kronecker"), 40).unwrap();
    assert!(!c.closed);
    assert_eq!(c.clusters, 40);
}

#[test]
fn a2_first_mutation() {
    let b = ExchangeMatrix::new(vec!["1".into(), "2".into()], vec![false, false], vec![vec![0, -1], vec![1, 0]]).unwrap();
    let s = Seed::initial(b, &VarNaming::cluster());
    let m = s.mutate("1").unwrap();
    assert_eq!(m.variable("1").unwrap(), &"x1^-1 + x1^-1*x2".parse::<LaurentPoly>().unwrap());
    assert_eq!(m.matrix().entries(), &[vec![0, 1], vec![-1, 0]]);
}

#[test]
fn a3_x_quiver_exchange_is_the_t_system_shape() {
    let s = x_seed("a3");
    let x2p = s.mutate("2").unwrap();
    let expect: LaurentPoly = "f2*x2^-1 + x1*x3*x2^-1".parse().unwrap();
    assert_eq!(x2p.variable("2").unwrap(), &expect);
    let x1p = s.mutate("1").unwrap();
    let expect: LaurentPoly = "f1*x1^-1 + x2*x1^-1".parse().unwrap();
    assert_eq!(x1p.variable("1").unwrap(), &expect);
}

#[test]
fn z_quiver_is_the_x_quiver_mutated_at_i1() {
    for g in ["a3", "d4", "e6"] {
        let bg = library_bipartite(g, None).unwrap();
        let mut m = build_x_quiver(&bg).to_matrix();
        for i in bg.i1() {
            m = m.mutate(&bg.ids()[i]).unwrap();
        }
        let z = build_z_quiver(&bg).to_matrix();
        assert_eq!(m.ids(), z.ids());
        assert_eq!(m.entries(), z.entries(), "{g}");
    }
}

#[test]
fn one_step_f_polynomial_and_g_vector() {
    let bg = library_bipartite("d4", None).unwrap();
    let b = build_x_quiver(&bg).to_matrix();
    let ps = PrincipalSeed::new(&b);
    let block = b.principal_block();
    for (k, id) in ps.principal_ids().iter().enumerate() {
        let x = ps.seed().mutate(id).unwrap().variable(id).unwrap().clone();
        let f = ps.f_polynomial(&x).unwrap();
        assert_eq!(f.to_string(), format!("{} + 1", ps.coefficient_var(k)));
        let g = ps.g_vector(&x).unwrap();
        let mut expect = vec![0i64; block.n_rows()];
        expect[k] = -1;
        for i in 0..block.n_rows() {
            let bik = block.entries()[i][k];
            if bik < 0 {
                expect[i] += -bik;
            }
        }
        assert_eq!(g, expect);
    }
    for k in 0..ps.principal_ids().len() {
        let u = LaurentPoly::var(&ps.principal_var(k));
        assert_eq!(ps.f_polynomial(&u).unwrap(), LaurentPoly::one());
        let mut e = vec![0; ps.principal_ids().len()];
        e[k] = 1;
        assert_eq!(ps.g_vector(&u).unwrap(), e);
    }
}

#[test]
fn reconstruction_of_every_a3_variable() {
    let bg = library_bipartite("a3", None).unwrap();
    let b = build_x_quiver(&bg).to_matrix();
    let ps = PrincipalSeed::new(&b);
    let target = Seed::initial(b, &VarNaming::cluster());
    let en = enumerate_clusters(ps.seed(), 1000).unwrap();
    let vars = en.variables();
    assert_eq!(vars.len(), 9);
    for (_, rec) in vars {
        let f = ps.f_polynomial(&rec.value).unwrap();
        let g = ps.g_vector(&rec.value).unwrap();
        let x = ps.reconstruct(&f, &g, &target).unwrap();
        let replay = target.mutate_path(&rec.path).unwrap();
        assert_eq!(&x, replay.variable(&rec.vertex).unwrap());
    }
}

#[test]
fn enumerated_variables_are_laurent_and_positive() {
    let en = enumerate_clusters(&x_seed("d4"), 1000).unwrap();
    for (_, rec) in en.variables() {
        assert!(rec.value.is_subtraction_free());
        let denom = rec.value.min_exponents();
        assert!(rec.value.mul_monomial(&denom.inv()).is_polynomial());
    }
}
