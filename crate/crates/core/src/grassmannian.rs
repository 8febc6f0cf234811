//! Point counts of quiver Grassmannians over F_p and their interpolation
//! to counting polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fp::{for_each_subspace, gaussian_binomial, Mat};
use crate::laurent::{LaurentPoly, Monomial};
use crate::rep::FpRep;
use crate::rng::{rng_for, Rng};

/// Default limit on the number of subspace tuples an enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 50_000_000;

/// Counts subrepresentations of `m` for every dimension vector at once.
///
/// `fixed[i] = Some(k)` restricts vertex `i` to `k`-dimensional subspaces.
/// Vertices with incoming arrows are enumerated sinks first, each inside
/// the preimage of the subspaces already chosen downstream; sources are
/// counted with Gaussian binomials.
pub fn subrep_counts(m: &FpRep, fixed: &[Option<usize>], budget: u128) -> Result<BTreeMap<Vec<usize>, u128>> {
    let q = m.quiver();
    let order = q
        .sinks_first()
        .ok_or_else(|| Error::Other("quiver has an oriented cycle".into()))?;
    let n = q.len();
    let sources: Vec<usize> = (0..n).filter(|&i| q.is_source(i)).collect();
    let enumerated: Vec<usize> = order.into_iter().filter(|i| !sources.contains(i)).collect();
    let p = m.p() as u64;
    let dims = m.dims();
    for (i, f) in fixed.iter().enumerate() {
        if matches!(f, Some(k) if *k > dims[i]) {
            return Ok(BTreeMap::new());
        }
    }
    let mut bound: u128 = 1;
    for &i in &enumerated {
        let choices: u128 = match fixed[i] {
            Some(k) => gaussian_binomial(dims[i], k, p),
            None => (0..=dims[i]).map(|k| gaussian_binomial(dims[i], k, p)).sum(),
        };
        bound = bound.saturating_mul(choices.max(1));
    }
    if bound > budget {
        return Err(Error::BudgetExceeded { bound, budget });
    }
    let mut st = State {
        m,
        fixed,
        enumerated: &enumerated,
        sources: &sources,
        annihilators: vec![None; n],
        chosen: vec![0; n],
        out: BTreeMap::new(),
    };
    st.recurse(0);
    Ok(st.out)
}

struct State<'a> {
    m: &'a FpRep,
    fixed: &'a [Option<usize>],
    enumerated: &'a [usize],
    sources: &'a [usize],
    annihilators: Vec<Option<Mat>>,
    chosen: Vec<usize>,
    out: BTreeMap<Vec<usize>, u128>,
}

impl State<'_> {
    /// Basis of `{x in M_s : M_a x in X_t for every arrow a: s -> t}`.
    fn allowed(&self, s: usize) -> Mat {
        let q = self.m.quiver();
        let p = self.m.p();
        let d = self.m.dims()[s];
        let mut constraints = Mat::zeros(p, 0, d);
        for (a, &(src, t)) in q.arrows().iter().enumerate() {
            if src == s {
                let ann = self.annihilators[t].as_ref().expect("targets are chosen first");
                constraints = constraints.vstack(&ann.mul(self.m.map(a)));
            }
        }
        constraints.kernel()
    }

    fn recurse(&mut self, depth: usize) {
        if depth == self.enumerated.len() {
            self.leaf();
            return;
        }
        let s = self.enumerated[depth];
        let allowed = self.allowed(s);
        let ks: Vec<usize> = match self.fixed[s] {
            Some(k) => vec![k],
            None => (0..=allowed.cols()).collect(),
        };
        for k in ks {
            let mut subspaces = Vec::new();
            for_each_subspace(&allowed, k, |x| subspaces.push(x.annihilator()));
            for ann in subspaces {
                self.annihilators[s] = Some(ann);
                self.chosen[s] = k;
                self.recurse(depth + 1);
            }
        }
        self.annihilators[s] = None;
    }

    fn leaf(&mut self) {
        let p = self.m.p() as u64;
        let mut partial: Vec<(Vec<usize>, u128)> = vec![(self.chosen.clone(), 1)];
        for &s in self.sources {
            let u = self.allowed(s).cols();
            let ks: Vec<usize> = match self.fixed[s] {
                Some(k) => vec![k],
                None => (0..=u).collect(),
            };
            let mut next = Vec::new();
            for (v, c) in &partial {
                for &k in &ks {
                    let g = gaussian_binomial(u, k, p);
                    if g == 0 {
                        continue;
                    }
                    let mut v = v.clone();
                    v[s] = k;
                    next.push((v, c * g));
                }
            }
            partial = next;
        }
        for (v, c) in partial {
            *self.out.entry(v).or_insert(0) += c;
        }
    }
}

/// Number of subrepresentations of `m` with dimension vector `v`.
pub fn count_subreps(m: &FpRep, v: &[usize], budget: u128) -> Result<u128> {
    let fixed: Vec<Option<usize>> = v.iter().map(|&k| Some(k)).collect();
    Ok(subrep_counts(m, &fixed, budget)?.get(v).copied().unwrap_or(0))
}

/// `sum_i v_i (d_i - v_i)`, the dimension of the ambient product of Grassmannians.
pub fn degree_bound(d: &[usize], v: &[usize]) -> usize {
    d.iter().zip(v).map(|(&di, &vi)| vi * (di - vi)).sum()
}

/// A polynomial in `q` fitted to point counts over several primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingPolynomial {
    /// Coefficients of `1, q, q^2, ...`, trailing zeros removed.
    pub coeffs: Vec<BigInt>,
    pub degree_bound: usize,
    /// `(prime, count)` samples the polynomial was fitted and checked against.
    pub samples: Vec<(u64, u128)>,
}

impl CountingPolynomial {
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Euler number `c(1)`.
    pub fn euler_number(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Poincaré polynomial `c(t^2)`; rejects negative coefficients.
    pub fn poincare(&self) -> Result<LaurentPoly> {
        if self.coeffs.iter().any(Signed::is_negative) {
            return Err(Error::NegativeCoefficient(self.to_string()));
        }
        Ok(self.in_variable("t", 2))
    }

    /// `sum_k c_k x^{step k}` as a Laurent polynomial in `var`.
    pub fn in_variable(&self, var: &str, step: i64) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var(var).pow(step * k as i64), c.clone())),
        )
    }
}

impl std::fmt::Display for CountingPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.in_variable("q", 1))
    }
}

/// Fits a polynomial of degree at most `degree_bound` through the first
/// `degree_bound + 1` samples and checks it against the rest. Fails unless
/// the coefficients are integers and every sample is reproduced.
pub fn interpolate(samples: &[(u64, u128)], degree_bound: usize) -> Result<CountingPolynomial> {
    let need = degree_bound + 1;
    if samples.len() < need {
        return Err(Error::NonPolynomial(format!(
            "{} samples cannot determine a polynomial of degree {degree_bound}",
            samples.len()
        )));
    }
    let pts: Vec<(BigRational, BigRational)> = samples[..need]
        .iter()
        .map(|&(x, y)| (BigRational::from_integer(x.into()), BigRational::from_integer(y.into())))
        .collect();
    let mut coeffs = vec![BigRational::zero(); need];
    for (j, (xj, yj)) in pts.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (m, (xm, _)) in pts.iter().enumerate() {
            if m == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * xm;
            }
            basis = next;
            denom *= xj - xm;
        }
        let scale = yj / denom;
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &scale;
        }
    }
    if let Some(c) = coeffs.iter().find(|c| !c.is_integer()) {
        return Err(Error::NonPolynomial(format!("non-integer coefficient {c} from samples {samples:?}")));
    }
    let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(|c| c.to_integer()).collect();
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    let poly = CountingPolynomial {
        coeffs,
        degree_bound,
        samples: samples.to_vec(),
    };
    for &(x, y) in samples {
        if poly.eval(&BigInt::from(x)) != BigInt::from(y) {
            return Err(Error::NonPolynomial(format!(
                "interpolant {poly} misses the sample ({x}, {y}) among {samples:?}"
            )));
        }
    }
    Ok(poly)
}

/// Per-prime sample: the prime, the dimension vector and the counts by subdimension.
type Counts = BTreeMap<Vec<usize>, u128>;
type PrimeCounts = (u64, Vec<usize>, Counts);

/// Counting polynomials for every subdimension of a family of
/// representations `make(p, rng)`, one fresh draw per prime and `resamples`
/// draws in total per prime to detect non-generic samples.
pub fn counting_polynomials<F>(
    make: F,
    fixed: &[Option<usize>],
    primes: &[u64],
    resamples: usize,
    root_seed: u64,
    budget: u128,
) -> Result<BTreeMap<Vec<usize>, CountingPolynomial>>
where
    F: Fn(u32, &mut Rng) -> Result<FpRep> + Sync,
{
    let per_prime: Vec<Result<PrimeCounts>> = primes
        .par_iter()
        .map(|&p| {
            let mut rng = rng_for(root_seed, &format!("count:{p}"));
            let mut first: Option<(Vec<usize>, Counts)> = None;
            for _ in 0..resamples.max(1) {
                let m = make(p as u32, &mut rng)?;
                let counts = subrep_counts(&m, fixed, budget)?;
                match &first {
                    None => first = Some((m.dims().to_vec(), counts)),
                    Some((_, c)) if *c != counts => {
                        return Err(Error::InconsistentSamples(format!(
                            "over F_{p}: {c:?} versus {counts:?}"
                        )))
                    }
                    _ => {}
                }
            }
            let (d, c) = first.unwrap();
            Ok((p, d, c))
        })
        .collect();
    let per_prime: Vec<PrimeCounts> = per_prime.into_iter().collect::<Result<_>>()?;
    let dims = per_prime[0].1.clone();
    let mut keys: Vec<Vec<usize>> = per_prime.iter().flat_map(|(_, _, c)| c.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let mut out = BTreeMap::new();
    for v in keys {
        let samples: Vec<(u64, u128)> = per_prime
            .iter()
            .map(|(p, _, c)| (*p, c.get(&v).copied().unwrap_or(0)))
            .collect();
        let poly = interpolate(&samples, degree_bound(&dims, &v))?;
        out.insert(v, poly);
    }
    Ok(out)
}

/// The number of primes needed to fit and check every subdimension of `d`.
pub fn primes_needed(d: &[usize]) -> usize {
    let maxdeg: usize = d.iter().map(|&x| (x / 2) * (x - x / 2)).sum();
    maxdeg + 2
}

/// Convenience: `sum_k c_k` as a machine integer when it fits.
pub fn euler_i64(c: &CountingPolynomial) -> Option<i64> {
    c.euler_number().to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::RepQuiver;
    use rand::SeedableRng;
    use std::sync::Arc;

    #[test]
    fn single_vertex_counts() {
        let q = Arc::new(RepQuiver::new(vec!["1".into()], vec![]));
        let m = FpRep::new(q, 2, vec![2], vec![]).unwrap();
        assert_eq!(count_subreps(&m, &[1], DEFAULT_BUDGET).unwrap(), 3);
        assert_eq!(count_subreps(&m, &[0], DEFAULT_BUDGET).unwrap(), 1);
        assert_eq!(count_subreps(&m, &[2], DEFAULT_BUDGET).unwrap(), 1);
    }

    #[test]
    fn kronecker_delta_counts() {
        let q = Arc::new(RepQuiver::new(vec!["1".into(), "2".into()], vec![(1, 0), (1, 0)]));
        let one = Mat::identity(2, 1);
        let m = FpRep::new(q, 2, vec![1, 1], vec![one.clone(), one]).unwrap();
        let all = subrep_counts(&m, &[None, None], DEFAULT_BUDGET).unwrap();
        assert_eq!(all.get(&vec![0, 0]), Some(&1));
        assert_eq!(all.get(&vec![1, 0]), Some(&1));
        assert_eq!(all.get(&vec![0, 1]), None);
        assert_eq!(all.get(&vec![1, 1]), Some(&1));
    }

    #[test]
    fn interpolation_of_grassmannians() {
        let lines_in_plane: Vec<(u64, u128)> = [2u64, 3, 5].iter().map(|&p| (p, (p + 1) as u128)).collect();
        let c = interpolate(&lines_in_plane, 1).unwrap();
        assert_eq!(c.to_string(), "q + 1");
        assert_eq!(c.euler_number(), BigInt::from(2));
        assert_eq!(c.poincare().unwrap().to_string(), "t^2 + 1");
        let lines_in_space: Vec<(u64, u128)> = [2u64, 3, 5, 7].iter().map(|&p| (p, gaussian_binomial(3, 1, p))).collect();
        assert_eq!(interpolate(&lines_in_space, 2).unwrap().to_string(), "q^2 + q + 1");
        assert!(interpolate(&[(2, 1), (3, 5), (5, 2)], 1).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let q = Arc::new(RepQuiver::new(vec!["1".into(), "2".into()], vec![(1, 0)]));
        let mut rng = Rng::seed_from_u64(1);
        let m = FpRep::random(q, 101, &[4, 4], &mut rng);
        assert!(matches!(
            count_subreps(&m, &[2, 2], 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
