//! Laurent polynomials with integer coefficients in named variables.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

pub type Var = Arc<str>;

/// A Laurent monomial: variables sorted by name, nonzero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Var, i64)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Monomial {
        Monomial(vec![(Arc::from(name), 1)])
    }

    pub fn from_exponents<I, S>(exps: I) -> Monomial
    where
        I: IntoIterator<Item = (S, i64)>,
        S: AsRef<str>,
    {
        let mut m: BTreeMap<Var, i64> = BTreeMap::new();
        for (v, e) in exps {
            *m.entry(Arc::from(v.as_ref())).or_insert(0) += e;
        }
        Monomial(m.into_iter().filter(|(_, e)| *e != 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[(Var, i64)] {
        &self.0
    }

    pub fn exponent(&self, var: &str) -> i64 {
        self.0
            .iter()
            .find(|(v, _)| &**v == var)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let take_left = j == other.0.len() || (i < self.0.len() && self.0[i].0 < other.0[j].0);
            let take_right = i == self.0.len() || (j < other.0.len() && other.0[j].0 < self.0[i].0);
            if take_left {
                out.push(self.0[i].clone());
                i += 1;
            } else if take_right {
                out.push(other.0[j].clone());
                j += 1;
            } else {
                let e = self.0[i].1 + other.0[j].1;
                if e != 0 {
                    out.push((self.0[i].0.clone(), e));
                }
                i += 1;
                j += 1;
            }
        }
        Monomial(out)
    }

    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(v, e)| (v.clone(), e * k)).collect())
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    /// Componentwise minimum of exponents, the tropical sum.
    pub fn meet(&self, other: &Monomial) -> Monomial {
        self.combine(other, i64::min)
    }

    pub fn join(&self, other: &Monomial) -> Monomial {
        self.combine(other, i64::max)
    }

    fn combine(&self, other: &Monomial, f: fn(i64, i64) -> i64) -> Monomial {
        let vars: BTreeSet<&Var> = self.0.iter().chain(&other.0).map(|(v, _)| v).collect();
        Monomial(
            vars.into_iter()
                .map(|v| (v.clone(), f(self.exponent(v), other.exponent(v))))
                .filter(|(_, e)| *e != 0)
                .collect(),
        )
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|(_, e)| *e >= 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| e).sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A Laurent polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> LaurentPoly {
        LaurentPoly::term(c, Monomial::one())
    }

    pub fn var(name: &str) -> LaurentPoly {
        LaurentPoly::monomial(Monomial::var(name))
    }

    pub fn monomial(m: Monomial) -> LaurentPoly {
        LaurentPoly::term(1, m)
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// `Some((c, m))` when the polynomial is the single term `c*m`.
    pub fn as_term(&self) -> Option<(&BigInt, &Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.as_term() {
            Some((c, m)) if c.is_one() => Some(m),
            _ => None,
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.to_string()))
            .collect()
    }

    pub fn is_subtraction_free(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_polynomial)
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exponents(&self) -> Monomial {
        self.terms
            .keys()
            .cloned()
            .reduce(|a, b| a.meet(&b))
            .unwrap_or_default()
    }

    pub fn max_exponents(&self) -> Monomial {
        self.terms
            .keys()
            .cloned()
            .reduce(|a, b| a.join(&b))
            .unwrap_or_default()
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`; fails with the remainder as witness
    /// when `divisor` does not divide `self` in the Laurent ring.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::InexactDivision {
                dividend: self.to_string(),
                divisor: "0".into(),
                remainder: self.to_string(),
            });
        }
        if let Some((c, m)) = divisor.as_term() {
            let mut out = LaurentPoly::zero();
            let mut rem = LaurentPoly::zero();
            for (k, v) in &self.terms {
                let (q, r) = v.div_rem(c);
                if r.is_zero() {
                    out.add_term(k.div(m), q);
                } else {
                    rem.add_term(k.clone(), v.clone());
                }
            }
            if !rem.is_zero() {
                return Err(Error::InexactDivision {
                    dividend: self.to_string(),
                    divisor: divisor.to_string(),
                    remainder: rem.to_string(),
                });
            }
            return Ok(out);
        }
        if let Some(q) = packed_div(self, divisor) {
            return Ok(q);
        }
        let shift_p = self.min_exponents();
        let shift_q = divisor.min_exponents();
        let vars: Vec<Var> = {
            let mut s: BTreeSet<Var> = BTreeSet::new();
            for m in self.terms.keys().chain(divisor.terms.keys()) {
                s.extend(m.0.iter().map(|(v, _)| v.clone()));
            }
            s.into_iter().collect()
        };
        let dense = |p: &LaurentPoly, shift: &Monomial| -> BTreeMap<Vec<i64>, BigInt> {
            p.terms
                .iter()
                .map(|(m, c)| {
                    let m = m.div(shift);
                    (vars.iter().map(|v| m.exponent(v)).collect(), c.clone())
                })
                .collect()
        };
        let mut rem = dense(self, &shift_p);
        let q = dense(divisor, &shift_q);
        let (lt_q, lc_q) = q.iter().next_back().map(|(k, v)| (k.clone(), v.clone())).unwrap();
        let mut quot: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        while let Some((lt, lc)) = rem.iter().next_back().map(|(k, v)| (k.clone(), v.clone())) {
            let divisible = lt.iter().zip(&lt_q).all(|(a, b)| a >= b);
            let (c, r) = lc.div_rem(&lc_q);
            if !divisible || !r.is_zero() {
                let back: LaurentPoly = LaurentPoly::from_terms(rem.into_iter().map(|(k, v)| {
                    (
                        Monomial::from_exponents(vars.iter().map(|x| x.as_ref()).zip(k)).mul(&shift_p),
                        v,
                    )
                }));
                return Err(Error::InexactDivision {
                    dividend: self.to_string(),
                    divisor: divisor.to_string(),
                    remainder: back.to_string(),
                });
            }
            let t: Vec<i64> = lt.iter().zip(&lt_q).map(|(a, b)| a - b).collect();
            for (k, v) in &q {
                let key: Vec<i64> = k.iter().zip(&t).map(|(a, b)| a + b).collect();
                let e = rem.entry(key.clone()).or_insert_with(BigInt::zero);
                *e -= v * &c;
                if e.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert(t, c);
        }
        let shift = shift_p.div(&shift_q);
        Ok(LaurentPoly::from_terms(quot.into_iter().map(|(k, v)| {
            (
                Monomial::from_exponents(vars.iter().map(|x| x.as_ref()).zip(k)).mul(&shift),
                v,
            )
        })))
    }

    /// Replaces variables by Laurent polynomials. A variable occurring with a
    /// negative exponent must map to a monomial with coefficient `±1`.
    pub fn substitute(&self, map: &BTreeMap<String, LaurentPoly>) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        let mut cache: BTreeMap<(String, i64), LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut acc = LaurentPoly::constant(c.clone());
            for (v, e) in &m.0 {
                let Some(val) = map.get(&**v) else {
                    acc = acc.mul_monomial(&Monomial(vec![(v.clone(), *e)]));
                    continue;
                };
                let key = (v.to_string(), *e);
                if let Some(p) = cache.get(&key) {
                    acc = &acc * p;
                    continue;
                }
                let p = if *e >= 0 {
                    val.pow(*e as u32)
                } else {
                    match val.as_term() {
                        Some((c, mono)) if c.abs().is_one() => {
                            LaurentPoly::term(c.pow((-*e) as u32), mono.pow(*e))
                        }
                        _ => return Err(Error::NonInvertibleSubstitution(v.to_string())),
                    }
                };
                acc = &acc * &p;
                cache.insert(key, p);
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Sets each listed variable to 1.
    pub fn specialize_to_one<S: AsRef<str>>(&self, vars: &[S]) -> LaurentPoly {
        let drop: BTreeSet<&str> = vars.iter().map(|s| s.as_ref()).collect();
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| {
            (
                Monomial(m.0.iter().filter(|(v, _)| !drop.contains(&**v)).cloned().collect()),
                c.clone(),
            )
        }))
    }

    /// Renames variables; unlisted variables are kept.
    pub fn rename(&self, names: &BTreeMap<String, String>) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| {
            (
                Monomial::from_exponents(
                    m.0.iter()
                        .map(|(v, e)| (names.get(&**v).map(String::as_str).unwrap_or(v).to_string(), *e)),
                ),
                c.clone(),
            )
        }))
    }

    /// Evaluation in the tropical semifield of Laurent monomials, where the
    /// sum is the componentwise minimum. Requires positive coefficients.
    pub fn tropical_eval(&self, map: &BTreeMap<String, Monomial>) -> Result<Monomial> {
        if self.is_zero() || !self.is_subtraction_free() {
            return Err(Error::NotSubtractionFree(self.to_string()));
        }
        let mut acc: Option<Monomial> = None;
        for m in self.terms.keys() {
            let mut val = Monomial::one();
            for (v, e) in &m.0 {
                let x = map.get(&**v).cloned().unwrap_or_else(|| Monomial::var(v));
                val = val.mul(&x.pow(*e));
            }
            acc = Some(match acc {
                None => val,
                Some(a) => a.meet(&val),
            });
        }
        Ok(acc.unwrap())
    }

    /// Renders the polynomial with `·` as the product sign.
    pub fn to_pretty(&self) -> String {
        self.to_string().replace('*', "·")
    }

    /// Renders as `(numerator)/denominator` with a polynomial numerator and a
    /// monomial denominator.
    pub fn to_fraction(&self) -> String {
        let min = self.min_exponents();
        let den = Monomial(min.0.iter().filter(|(_, e)| *e < 0).map(|(v, e)| (v.clone(), -e)).collect());
        if den.is_one() {
            return self.to_string();
        }
        let num = self.mul_monomial(&den);
        let num_s = if num.len() > 1 { format!("({num})") } else { num.to_string() };
        let den_s = if den.0.len() > 1 { format!("({den})") } else { den.to_string() };
        format!("{num_s}/{den_s}")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| TermJson {
                coef: c.to_string(),
                mono: m.0.iter().map(|(v, e)| (v.to_string(), *e)).collect(),
            })
            .collect();
        serde_json::to_value(terms).expect("terms serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<LaurentPoly> {
        let terms: Vec<TermJson> = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = LaurentPoly::zero();
        for t in terms {
            let c: BigInt = t
                .coef
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.coef)))?;
            for v in t.mono.keys() {
                check_var_name(v)?;
            }
            out.add_term(Monomial::from_exponents(t.mono), c);
        }
        Ok(out)
    }

    pub fn parse(s: &str) -> Result<LaurentPoly> {
        s.parse()
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coef: String,
    mono: BTreeMap<String, i64>,
}

fn check_var_name(v: &str) -> Result<()> {
    let bad = |c: char| c.is_whitespace() || "+-*^()/·".contains(c);
    if v.is_empty() || v.chars().any(bad) || v.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad variable name `{v}`")));
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<LaurentPoly> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('·', "*");
        if s.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let chars: Vec<char> = s.chars().collect();
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, &ch) in chars.iter().enumerate() {
            let starts_term = (ch == '+' || ch == '-') && (i == 0 || chars[i - 1] != '^');
            if starts_term {
                if i > 0 {
                    if cur.is_empty() {
                        return Err(Error::Parse(format!("empty term in `{s}`")));
                    }
                    terms.push((neg, std::mem::take(&mut cur)));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse(format!("trailing sign in `{s}`")));
        }
        terms.push((neg, cur));
        let mut out = LaurentPoly::zero();
        for (neg, body) in terms {
            let mut coef = BigInt::one();
            let mut mono = Monomial::one();
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in `{body}`")));
                }
                if factor.chars().all(|c| c.is_ascii_digit()) {
                    coef *= factor.parse::<BigInt>().map_err(|e| Error::Parse(e.to_string()))?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?),
                    None => (factor, 1),
                };
                check_var_name(name)?;
                mono = mono.mul(&Monomial::var(name).pow(exp));
            }
            if neg {
                coef = -coef;
            }
            out.add_term(mono, coef);
        }
        Ok(out)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if let Some(p) = packed_mul(self, rhs) {
            return p;
        }
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                *acc.entry(a.mul(b)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: acc }
    }
}

/// Exponent vectors packed into one `u128` per term: each variable gets a
/// bit field wide enough for the exponent range of the product.
struct Packing {
    vars: Vec<Var>,
    shifts: Vec<u32>,
    widths: Vec<u32>,
    offsets: Vec<i64>,
}

impl Packing {
    fn for_product(a: &LaurentPoly, b: &LaurentPoly) -> Option<Packing> {
        let (amin, amax) = (a.min_exponents(), a.max_exponents());
        let (bmin, bmax) = (b.min_exponents(), b.max_exponents());
        let vars: BTreeSet<Var> = amin
            .0
            .iter()
            .chain(&amax.0)
            .chain(&bmin.0)
            .chain(&bmax.0)
            .map(|(v, _)| v.clone())
            .collect();
        let mut p = Packing {
            vars: Vec::new(),
            shifts: Vec::new(),
            widths: Vec::new(),
            offsets: Vec::new(),
        };
        let mut shift = 0u32;
        for v in vars {
            let lo = amin.exponent(&v) + bmin.exponent(&v);
            let hi = amax.exponent(&v) + bmax.exponent(&v);
            let range = (hi - lo) as u64 + 1;
            let width = 64 - range.leading_zeros();
            if shift + width > 128 {
                return None;
            }
            p.vars.push(v);
            p.shifts.push(shift);
            p.widths.push(width);
            p.offsets.push(lo);
            shift += width;
        }
        Some(p)
    }

    fn key(&self, m: &Monomial, base: &Monomial) -> u128 {
        let mut k = 0u128;
        for (i, v) in self.vars.iter().enumerate() {
            k |= ((m.exponent(v) - base.exponent(v)) as u128) << self.shifts[i];
        }
        k
    }

    fn unpack(&self, k: u128) -> Monomial {
        Monomial::from_exponents(self.vars.iter().enumerate().map(|(i, v)| {
            let mask = (1u128 << self.widths[i]) - 1;
            (v.as_ref(), ((k >> self.shifts[i]) & mask) as i64 + self.offsets[i])
        }))
    }
}

/// Coefficient arithmetic for the packed kernels: machine integers with
/// overflow detection, or big integers.
trait Coef: Clone + Sized {
    fn from_big(c: &BigInt) -> Option<Self>;
    fn into_big(self) -> BigInt;
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    /// `self += a * b`, `None` on overflow.
    fn add_mul(&mut self, a: &Self, b: &Self) -> Option<()>;
    /// `self -= a * b`, `None` on overflow.
    fn sub_mul(&mut self, a: &Self, b: &Self) -> Option<()>;
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

impl Coef for i128 {
    fn from_big(c: &BigInt) -> Option<i128> {
        c.to_i64().map(i128::from)
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
    fn nil() -> i128 {
        0
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn add_mul(&mut self, a: &i128, b: &i128) -> Option<()> {
        *self = self.checked_add(a.checked_mul(*b)?)?;
        Some(())
    }
    fn sub_mul(&mut self, a: &i128, b: &i128) -> Option<()> {
        *self = self.checked_sub(a.checked_mul(*b)?)?;
        Some(())
    }
    fn div_exact(&self, d: &i128) -> Option<i128> {
        (self % d == 0).then(|| self / d)
    }
}

impl Coef for BigInt {
    fn from_big(c: &BigInt) -> Option<BigInt> {
        Some(c.clone())
    }
    fn into_big(self) -> BigInt {
        self
    }
    fn nil() -> BigInt {
        Zero::zero()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_mul(&mut self, a: &BigInt, b: &BigInt) -> Option<()> {
        *self += a * b;
        Some(())
    }
    fn sub_mul(&mut self, a: &BigInt, b: &BigInt) -> Option<()> {
        *self -= a * b;
        Some(())
    }
    fn div_exact(&self, d: &BigInt) -> Option<BigInt> {
        let (q, r) = self.div_rem(d);
        Zero::is_zero(&r).then_some(q)
    }
}

/// Product on packed exponents; `None` when the exponents cannot be packed.
fn packed_mul(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    if a.terms.len() * b.terms.len() < 64 {
        return None;
    }
    let p = Packing::for_product(a, b)?;
    let (amin, bmin) = (a.min_exponents(), b.min_exponents());
    let ka: Vec<u128> = a.terms.keys().map(|m| p.key(m, &amin)).collect();
    let kb: Vec<u128> = b.terms.keys().map(|m| p.key(m, &bmin)).collect();
    packed_mul_with::<i128>(&p, a, b, &ka, &kb).or_else(|| packed_mul_with::<BigInt>(&p, a, b, &ka, &kb))
}

fn packed_mul_with<T: Coef>(p: &Packing, a: &LaurentPoly, b: &LaurentPoly, ka: &[u128], kb: &[u128]) -> Option<LaurentPoly> {
    let ca: Vec<T> = a.terms.values().map(T::from_big).collect::<Option<_>>()?;
    let cb: Vec<T> = b.terms.values().map(T::from_big).collect::<Option<_>>()?;
    let mut acc: HashMap<u128, T> = HashMap::with_capacity(ka.len() * kb.len() / 4 + 1);
    for (x, cx) in ka.iter().zip(&ca) {
        for (y, cy) in kb.iter().zip(&cb) {
            acc.entry(x + y).or_insert_with(T::nil).add_mul(cx, cy)?;
        }
    }
    Some(LaurentPoly::from_terms(
        acc.into_iter().filter(|(_, c)| !c.is_nil()).map(|(k, c)| (p.unpack(k), c.into_big())),
    ))
}

/// Exact quotient computed on packed exponents by heap division in the
/// lexicographic order of the packed keys. Every intermediate term of an
/// exact division stays in the exponent box of the dividend, so leaving it,
/// or any failed step, returns `None` and leaves the diagnosis to the caller.
fn packed_div(p: &LaurentPoly, q: &LaurentPoly) -> Option<LaurentPoly> {
    if p.terms.len() * q.terms.len() < 64 {
        return None;
    }
    let pmin = p.min_exponents();
    let pk = Packing::for_product(p, &LaurentPoly::one())?;
    if q.variables().iter().any(|v| !pk.vars.iter().any(|w| w.as_ref() == v)) {
        return None;
    }
    packed_div_with::<i128>(&pk, p, &pmin, q).or_else(|| packed_div_with::<BigInt>(&pk, p, &pmin, q))
}

fn packed_div_with<T: Coef>(pk: &Packing, p: &LaurentPoly, pmin: &Monomial, q: &LaurentPoly) -> Option<LaurentPoly> {
    let pmax = p.max_exponents();
    let qmin = q.min_exponents();
    let field = |k: u128, i: usize| ((k >> pk.shifts[i]) & ((1u128 << pk.widths[i]) - 1)) as i64;
    let range: Vec<i64> = pk.vars.iter().map(|v| pmax.exponent(v) - pmin.exponent(v)).collect();
    let mut dividend: Vec<(u128, T)> = Vec::with_capacity(p.terms.len());
    for (m, c) in &p.terms {
        dividend.push((pk.key(m, pmin), T::from_big(c)?));
    }
    dividend.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
    let mut qt: Vec<(u128, T)> = Vec::with_capacity(q.terms.len());
    let mut qspan = vec![0i64; pk.vars.len()];
    for (m, c) in &q.terms {
        let mut k = 0u128;
        for (i, v) in pk.vars.iter().enumerate() {
            let e = m.exponent(v) - qmin.exponent(v);
            if e > range[i] {
                return None;
            }
            qspan[i] = qspan[i].max(e);
            k |= (e as u128) << pk.shifts[i];
        }
        qt.push((k, T::from_big(c)?));
    }
    qt.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
    let (lt_q, lc_q) = qt[0].clone();
    // Products quot[i] * qt[j] for j >= 1 enter the heap lazily, largest first.
    let mut heap: BinaryHeap<(u128, usize, usize)> = BinaryHeap::new();
    let mut quot: Vec<(u128, T)> = Vec::new();
    let mut dividend = dividend.into_iter().peekable();
    loop {
        let from_dividend = dividend.peek().map(|t| t.0);
        let from_heap = heap.peek().map(|t| t.0);
        let m = match (from_dividend, from_heap) {
            (None, None) => break,
            (a, b) => a.max(b).unwrap(),
        };
        let mut c = T::nil();
        if from_dividend == Some(m) {
            c = dividend.next().unwrap().1;
        }
        while heap.peek().is_some_and(|t| t.0 == m) {
            let (_, i, j) = heap.pop().unwrap();
            c.sub_mul(&quot[i].1, &qt[j].1)?;
            if j + 1 < qt.len() {
                heap.push((quot[i].0 + qt[j + 1].0, i, j + 1));
            }
        }
        if c.is_nil() {
            continue;
        }
        let mut t = 0u128;
        for i in 0..pk.vars.len() {
            let d = field(m, i) - field(lt_q, i);
            if d < 0 || d + qspan[i] > range[i] {
                return None;
            }
            t |= (d as u128) << pk.shifts[i];
        }
        quot.push((t, c.div_exact(&lc_q)?));
        if qt.len() > 1 {
            heap.push((t + qt[1].0, quot.len() - 1, 1));
        }
    }
    let shift = pmin.div(&qmin);
    let unit = |k: u128| -> Monomial {
        Monomial::from_exponents(pk.vars.iter().enumerate().map(|(i, v)| (v.as_ref(), field(k, i))))
    };
    Some(LaurentPoly::from_terms(
        quot.into_iter().map(|(k, c)| (unit(k).mul(&shift), c.into_big())),
    ))
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
