//! The reflection σ from decorated representations to representations of
//! the σ-quiver, its dimension formula, the KR splitting φ and τ₋.

use std::sync::Arc;

use crate::error::Result;
use crate::graph::BipartiteGraph;
use crate::graded::DecoratedDim;
use crate::quiver::{build_decorated, build_sigma_quiver};
use crate::rep::{FpRep, RepQuiver};

/// The quivers attached to a bipartite graph, as representation carriers.
#[derive(Clone, Debug)]
pub struct DecoratedQuivers {
    pub bg: BipartiteGraph,
    /// Decorated quiver on principal and frozen vertices.
    pub decorated: Arc<RepQuiver>,
    /// Its principal part: arrows `I1 -> I0`.
    pub principal: Arc<RepQuiver>,
    /// Principal arrows `I1 -> I0` and `i -> i'` for every `i`.
    pub sigma: Arc<RepQuiver>,
}

impl DecoratedQuivers {
    pub fn new(bg: &BipartiteGraph) -> DecoratedQuivers {
        let dec = build_decorated(bg);
        DecoratedQuivers {
            bg: bg.clone(),
            decorated: Arc::new(RepQuiver::from_quiver(&dec)),
            principal: Arc::new(RepQuiver::from_quiver(&dec.principal_part())),
            sigma: Arc::new(RepQuiver::from_quiver(&build_sigma_quiver(bg))),
        }
    }

    pub fn len(&self) -> usize {
        self.bg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bg.is_empty()
    }
}

/// `σW_i = max(W_{i'} + sum_j a_ij W_j - W_i, 0)` for `i ∈ I1`; every other
/// entry is unchanged.
pub fn sigma_dim(bg: &BipartiteGraph, w: &DecoratedDim) -> DecoratedDim {
    let mut out = w.clone();
    for i in bg.i1() {
        let s: i64 = bg.graph().neighbors(i).map(|j| bg.a(i, j) as i64 * w.w[j] as i64).sum();
        out.w[i] = (w.wf[i] as i64 + s - w.w[i] as i64).max(0) as usize;
    }
    out
}

/// Principal `W` with `σW = d` on the principal vertices, when it exists:
/// `W_i = d_i` on `I0` and `W_i = sum_j a_ij d_j - d_i` on `I1`.
pub fn sigma_inverse_principal(bg: &BipartiteGraph, d: &[i64]) -> Option<Vec<usize>> {
    let mut w = vec![0usize; bg.len()];
    for i in 0..bg.len() {
        let v = if bg.parity(i) == 0 {
            d[i]
        } else {
            bg.graph().neighbors(i).map(|j| bg.a(i, j) as i64 * d[j]).sum::<i64>() - d[i]
        };
        if v < 0 {
            return None;
        }
        w[i] = v as usize;
    }
    Some(w)
}

/// `φW` removes `min(W_i, W_{i'})` copies of `F^i` at each vertex; the
/// removed multiplicities are returned alongside.
pub fn phi_dim(w: &DecoratedDim) -> (DecoratedDim, Vec<usize>) {
    let kr: Vec<usize> = w.w.iter().zip(&w.wf).map(|(a, b)| *a.min(b)).collect();
    let phi = DecoratedDim {
        w: w.w.iter().zip(&kr).map(|(a, k)| a - k).collect(),
        wf: w.wf.iter().zip(&kr).map(|(a, k)| a - k).collect(),
    };
    (phi, kr)
}

/// `τ₋(γ)_i = -γ_i + sum_j a_ij max(γ_j, 0)` on `I1`, identity on `I0`.
pub fn tau_minus(bg: &BipartiteGraph, gamma: &[i64]) -> Vec<i64> {
    (0..bg.len())
        .map(|i| {
            if bg.parity(i) == 0 {
                gamma[i]
            } else {
                -gamma[i] + bg.graph().neighbors(i).map(|j| bg.a(i, j) as i64 * gamma[j].max(0)).sum::<i64>()
            }
        })
        .collect()
}

/// Dualize, then apply the kernel reflection at every vertex of `I1`.
///
/// `m` is a representation of the decorated quiver; the result is a
/// representation of the σ-quiver whose arrows `i -> j`, `i -> i'` at
/// `i ∈ I1` are the projections out of the kernel.
pub fn sigma_rep(dq: &DecoratedQuivers, m: &FpRep) -> Result<FpRep> {
    let mut r = m.dual();
    for i in dq.bg.i1() {
        r = r.reflect(i)?;
    }
    r.relabel(dq.sigma.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::library_bipartite;
    use crate::rng::rng_for;

    #[test]
    fn sigma_dimension_examples() {
        let bg = library_bipartite("a3", None).unwrap();
        let w = sigma_dim(&bg, &DecoratedDim::kr(3, 1));
        assert_eq!(w.w[1], 0);
        let mut d = DecoratedDim::zero(3);
        d.wf[1] = 1;
        d.w[0] = 1;
        assert_eq!(sigma_dim(&bg, &d).w[1], 2);
        assert_eq!(sigma_dim(&bg, &d).w[0], 1);
    }

    #[test]
    fn sigma_inverse_round_trip() {
        let bg = library_bipartite("d4", None).unwrap();
        let w = vec![1usize, 2, 1, 1];
        let s = sigma_dim(&bg, &DecoratedDim::principal(w.clone()));
        let d: Vec<i64> = s.w.iter().map(|&x| x as i64).collect();
        assert_eq!(sigma_inverse_principal(&bg, &d), Some(w));
    }

    #[test]
    fn phi_examples() {
        let mut w = DecoratedDim::zero(2);
        w.w[0] = 2;
        w.wf[0] = 1;
        let (phi, kr) = phi_dim(&w);
        assert_eq!((phi.w[0], phi.wf[0], kr[0]), (1, 0, 1));
        assert_eq!(phi_dim(&phi).0, phi);
        assert!(phi_dim(&DecoratedDim::kr(2, 1)).0.is_zero());
    }

    #[test]
    fn tau_examples() {
        let bg = library_bipartite("a2", None).unwrap();
        assert_eq!(tau_minus(&bg, &[1, 0]), vec![1, 1]);
        assert_eq!(tau_minus(&bg, &[-1, 0]), vec![-1, 0]);
    }

    #[test]
    fn sigma_rep_has_sigma_dimension() {
        let bg = library_bipartite("a3", None).unwrap();
        let dq = DecoratedQuivers::new(&bg);
        let mut rng = rng_for(0, "sigma");
        let w = DecoratedDim {
            w: vec![1, 1, 1],
            wf: vec![0, 1, 1],
        };
        let m = FpRep::random(dq.decorated.clone(), 101, &w.flat(), &mut rng);
        let s = sigma_rep(&dq, &m).unwrap();
        assert_eq!(s.dims(), sigma_dim(&bg, &w).flat().as_slice());
    }
}
