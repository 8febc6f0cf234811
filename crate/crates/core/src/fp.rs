//! Dense linear algebra over the prime field F_p.

use rand::Rng;

/// Multiplicative inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The first `n` primes in increasing order.
pub fn first_primes(n: usize) -> Vec<u64> {
    (2u64..).filter(|&k| is_prime(k)).take(n).collect()
}

/// A `rows x cols` matrix with entries in F_p, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Mat {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Mat {
        Mat {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Mat {
        let mut m = Mat::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: usize, cols: usize, entries: &[Vec<i64>]) -> Mat {
        let mut m = Mat::zeros(p, rows, cols);
        for (i, row) in entries.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v.rem_euclid(p as i64) as u32);
            }
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(p: u32, rows: usize, cols: usize, rng: &mut R) -> Mat {
        Mat {
            p,
            rows,
            cols,
            data: (0..rows * cols).map(|_| rng.gen_range(0..p)).collect(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let p = self.p as u64;
        let mut out = Mat::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = (*x + *y) % self.p;
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = (*x + self.p - *y) % self.p;
        }
        out
    }

    pub fn scale(&self, c: u32) -> Mat {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = ((*x as u64 * c as u64) % self.p as u64) as u32;
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zeros(self.p, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn row_block(&self, start: usize, len: usize) -> Mat {
        Mat {
            p: self.p,
            rows: len,
            cols: self.cols,
            data: self.data[start * self.cols..(start + len) * self.cols].to_vec(),
        }
    }

    pub fn col_block(&self, start: usize, len: usize) -> Mat {
        let mut out = Mat::zeros(self.p, self.rows, len);
        for i in 0..self.rows {
            for j in 0..len {
                out.set(i, j, self.get(i, start + j));
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let p = self.p as u64;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), m.p) as u64;
            for j in 0..m.cols {
                let v = m.get(r, j) as u64 * inv % p;
                m.data[r * m.cols + j] = v as u32;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = (m.get(i, j) as u64 + p - f * m.get(r, j) as u64 % p) % p;
                    m.data[i * m.cols + j] = v as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, as the columns of a `cols x k` matrix.
    pub fn kernel(&self) -> Mat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(self.p, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                let v = r.get(row, f);
                if v != 0 {
                    out.set(pc, k, self.p - v);
                }
            }
        }
        out
    }

    /// A basis of the column space, chosen among the columns of `self`.
    pub fn column_basis(&self) -> Mat {
        let (_, pivots) = self.rref();
        let mut out = Mat::zeros(self.p, self.rows, pivots.len());
        for (k, &c) in pivots.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, k, self.get(i, c));
            }
        }
        out
    }

    /// Rows of the returned matrix span the left annihilator of the column space.
    pub fn annihilator(&self) -> Mat {
        self.transpose().kernel().transpose()
    }

    /// Solves `self * X = b`, returning `None` if the system is inconsistent.
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows);
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.p, self.cols, b.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(row, self.cols + j));
            }
        }
        Some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        self.solve(&Mat::identity(self.p, self.rows))
    }

    pub fn pow(&self, mut e: u32) -> Mat {
        let mut base = self.clone();
        let mut acc = Mat::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Gaussian binomial coefficient `[n, k]_q`, the number of `k`-dimensional
/// subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = q.pow((n - i) as u32) - 1;
        let den = q.pow((i + 1) as u32) - 1;
        acc = acc * num / den;
    }
    acc
}

/// Calls `f` on a basis (as columns of `ambient`-coordinates) of every
/// `k`-dimensional subspace of the column space of `basis`.
///
/// Subspaces are enumerated once each through their reduced row echelon
/// coordinates relative to `basis`.
pub fn for_each_subspace<F: FnMut(&Mat)>(basis: &Mat, k: usize, mut f: F) {
    let m = basis.cols();
    let p = basis.p();
    if k > m {
        return;
    }
    let mut pivots = Vec::with_capacity(k);
    choose_pivots(m, k, 0, &mut pivots, &mut |piv| {
        let mut slots = Vec::new();
        for (r, &c) in piv.iter().enumerate() {
            for col in c + 1..m {
                if !piv.contains(&col) {
                    slots.push((r, col));
                }
            }
        }
        let mut coords = Mat::zeros(p, k, m);
        for (r, &c) in piv.iter().enumerate() {
            coords.set(r, c, 1);
        }
        let total = (p as u128).pow(slots.len() as u32);
        for code in 0..total {
            let mut c = code;
            for &(r, col) in &slots {
                coords.set(r, col, (c % p as u128) as u32);
                c /= p as u128;
            }
            f(&basis.mul(&coords.transpose()));
        }
    });
}

fn choose_pivots(m: usize, k: usize, start: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if acc.len() == k {
        f(acc);
        return;
    }
    for c in start..m {
        if m - c < k - acc.len() {
            break;
        }
        acc.push(c);
        choose_pivots(m, k, c + 1, acc, f);
        acc.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kernel_is_annihilated() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let a = Mat::random(7, 3, 5, &mut rng);
            let k = a.kernel();
            assert_eq!(k.cols(), 5 - a.rank());
            assert!(a.mul(&k).is_zero());
        }
    }

    #[test]
    fn solve_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = loop {
            let a = Mat::random(11, 4, 4, &mut rng);
            if a.is_invertible() {
                break a;
            }
        };
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(11, 4));
    }

    #[test]
    fn subspace_enumeration_matches_gaussian_binomial() {
        for p in [2u32, 3, 5] {
            let basis = Mat::identity(p, 4);
            for k in 0..=4 {
                let mut n = 0u128;
                for_each_subspace(&basis, k, |_| n += 1);
                assert_eq!(n, gaussian_binomial(4, k, p as u64), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(2, 1, 3), 4);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(3, 0, 5), 1);
    }
}
