#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use cq_core::graded::DecoratedDim;
use cq_core::rep::{ext1_dim, hom_dim, FpRep, RepQuiver};
use cq_core::rng::rng_for;
use cq_core::sigma::{sigma_dim, sigma_rep, tau_minus, DecoratedQuivers};
use cq_core::{library_bipartite, ExchangeMatrix, LaurentPoly, Monomial, Seed, VarNaming};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// A random exchange matrix with a skew-symmetric principal block.
pub fn exchange_matrix() -> impl Strategy<Value = ExchangeMatrix> {
    (2usize..=5, 0usize..=2).prop_flat_map(|(n, m)| {
        let upper = proptest::collection::vec(-3i64..=3, n * (n - 1) / 2);
        let frozen = proptest::collection::vec(-2i64..=2, m * n);
        (Just(n), Just(m), upper, frozen).prop_map(|(n, m, upper, frozen)| {
            let mut b = vec![vec![0i64; n]; n + m];
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    b[i][j] = upper[k];
                    b[j][i] = -upper[k];
                    k += 1;
                }
            }
            for r in 0..m {
                b[n + r].copy_from_slice(&frozen[r * n..(r + 1) * n]);
            }
            let ids: Vec<String> = (0..n).map(|i| format!("{}", i + 1)).chain((0..m).map(|r| format!("{}'", r + 1))).collect();
            let is_frozen = (0..n + m).map(|i| i >= n).collect();
            ExchangeMatrix::new(ids, is_frozen, b).unwrap()
        })
    })
}

pub fn matrix_and_vertex() -> impl Strategy<Value = (ExchangeMatrix, usize)> {
    exchange_matrix().prop_flat_map(|b| {
        let n = b.principal().len();
        (Just(b), 0..n)
    })
}

pub fn check_matrix_involution((b, k): (ExchangeMatrix, usize)) -> Result<(), TestCaseError> {
    let id = b.ids()[b.principal()[k]].clone();
    let twice = b.mutate(&id).unwrap().mutate(&id).unwrap();
    prop_assert_eq!(twice.entries(), b.entries());
    Ok(())
}

pub fn check_seed_involution((b, k): (ExchangeMatrix, usize)) -> Result<(), TestCaseError> {
    let id = b.ids()[b.principal()[k]].clone();
    let s = Seed::initial(b, &VarNaming::cluster());
    let twice = s.mutate(&id).unwrap().mutate(&id).unwrap();
    prop_assert_eq!(twice.key(), s.key());
    prop_assert_eq!(twice.matrix().entries(), s.matrix().entries());
    Ok(())
}

/// A small Laurent polynomial in `a, b, c` with exponents in `-2..=2`.
pub fn laurent() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(((-2i64..=2, -2i64..=2, -2i64..=2), -4i64..=4), 1..5).prop_map(|terms| {
        LaurentPoly::from_terms(terms.into_iter().map(|((x, y, z), c)| {
            (Monomial::from_exponents([("a", x), ("b", y), ("c", z)]), c.into())
        }))
    })
}

/// Larger polynomials, exercising the packed multiplication and division.
pub fn large_laurent() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(((-6i64..=6, -6i64..=6, 0i64..=3), -9i64..=9), 8..24).prop_map(|terms| {
        LaurentPoly::from_terms(terms.into_iter().map(|((x, y, z), c)| {
            (Monomial::from_exponents([("a", x), ("b", y), ("f", z)]), c.into())
        }))
    })
}

/// Term-by-term product, independent of the library's multiplication.
pub fn naive_product(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    let mut acc: BTreeMap<Monomial, num_bigint::BigInt> = BTreeMap::new();
    for (a, ca) in p.terms() {
        for (b, cb) in q.terms() {
            *acc.entry(a.mul(b)).or_default() += ca * cb;
        }
    }
    LaurentPoly::from_terms(acc)
}

pub fn check_large_product((p, q): (LaurentPoly, LaurentPoly)) -> Result<(), TestCaseError> {
    let prod = &p * &q;
    prop_assert_eq!(&prod, &naive_product(&p, &q));
    if !q.is_zero() {
        prop_assert_eq!(prod.exact_div(&q).unwrap(), p.clone());
        let off = &prod + &LaurentPoly::var("c");
        prop_assert!(off.exact_div(&q).is_err() || q.as_term().is_some());
    }
    Ok(())
}

pub fn check_division((p, q): (LaurentPoly, LaurentPoly)) -> Result<(), TestCaseError> {
    if q.is_zero() {
        return Ok(());
    }
    let prod = &p * &q;
    prop_assert_eq!(prod.exact_div(&q).unwrap(), p.clone());
    let text = prod.to_string();
    prop_assert_eq!(LaurentPoly::parse(&text).unwrap(), prod);
    Ok(())
}

pub fn graph_and_gamma() -> impl Strategy<Value = (String, Vec<i64>)> {
    prop::sample::select(vec!["a2", "a3", "a4", "d4", "d5", "e6", "kronecker"]).prop_flat_map(|g| {
        let n = library_bipartite(g, None).unwrap().len();
        (Just(g.to_string()), proptest::collection::vec(-4i64..=4, n))
    })
}

pub fn check_tau_involution((g, gamma): (String, Vec<i64>)) -> Result<(), TestCaseError> {
    let bg = library_bipartite(&g, None).unwrap();
    prop_assert_eq!(tau_minus(&bg, &tau_minus(&bg, &gamma)), gamma);
    Ok(())
}

/// A random acyclic quiver on up to four vertices, arrows from lower to
/// higher index, two dimension vectors, a prime and a seed.
pub fn quiver_pair() -> impl Strategy<Value = (Vec<(usize, usize)>, Vec<usize>, Vec<usize>, u32, u64)> {
    (2usize..=4).prop_flat_map(|n| {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j));
            }
        }
        let arrows = proptest::collection::vec(prop::sample::select(pairs), 0..=n + 1);
        let d = proptest::collection::vec(0usize..=2, n);
        let e = proptest::collection::vec(0usize..=2, n);
        let p = prop::sample::select(vec![2u32, 3, 5, 7]);
        (arrows, d, e, p, any::<u64>())
    })
}

pub fn check_euler_form((arrows, d, e, p, seed): (Vec<(usize, usize)>, Vec<usize>, Vec<usize>, u32, u64)) -> Result<(), TestCaseError> {
    let n = d.len();
    let q = Arc::new(RepQuiver::new((1..=n).map(|i| i.to_string()).collect(), arrows));
    let mut rng = rng_for(seed, "euler");
    let m = FpRep::random(q.clone(), p, &d, &mut rng);
    let k = FpRep::random(q.clone(), p, &e, &mut rng);
    prop_assert_eq!(hom_dim(&m, &k) as i64 - ext1_dim(&m, &k) as i64, q.euler_form(&d, &e));
    Ok(())
}

pub fn decorated_sample() -> impl Strategy<Value = (String, Vec<usize>, u64)> {
    prop::sample::select(vec!["a2", "a3", "d4"]).prop_flat_map(|g| {
        let n = library_bipartite(g, None).unwrap().len();
        (Just(g.to_string()), proptest::collection::vec(0usize..=2, 2 * n), any::<u64>())
    })
}

/// `σ` of a random decorated representation has the dimension predicted by
/// the reflection formula whenever the maps into each `I1` vertex are onto.
pub fn check_sigma_dimension((g, flat, seed): (String, Vec<usize>, u64)) -> Result<(), TestCaseError> {
    let bg = library_bipartite(&g, None).unwrap();
    let dq = DecoratedQuivers::new(&bg);
    let mut rng = rng_for(seed, "sigma");
    let m = FpRep::random(dq.decorated.clone(), 101, &flat, &mut rng);
    let r = sigma_rep(&dq, &m).unwrap();
    let expect = sigma_dim(&bg, &DecoratedDim::from_flat(&flat)).flat();
    let n = bg.len();
    for i in 0..n {
        prop_assert_eq!(r.dims()[n + i], expect[n + i]);
        if bg.parity(i) == 0 {
            prop_assert_eq!(r.dims()[i], expect[i]);
        } else {
            prop_assert!(r.dims()[i] >= expect[i]);
        }
    }
    Ok(())
}

pub fn y_poly(terms: &[(i64, &[(&str, i64)])]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().map(|(c, m)| {
        let exps: BTreeMap<String, i64> = m.iter().map(|(v, e)| (v.to_string(), *e)).collect();
        (Monomial::from_exponents(exps), (*c).into())
    }))
}
