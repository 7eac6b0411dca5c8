//! Integer matrices and the characteristic-polynomial oracle.
//!
//! `charpoly_direct` is the independent check against which the spectral
//! recursions are validated: det(λI − L) computed exactly by multipoint
//! evaluation at the integer nodes 0..d, each value a fraction-free (Bareiss)
//! integer determinant, followed by exact Newton interpolation. The Bareiss
//! elimination runs under a greedy minimum-degree symmetric preordering with
//! zero-skipping, which keeps the near-tree Laplacians from filling in.

use crate::poly::IntPoly;
use rug::{Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub n: usize,
    /// Row-major entries.
    pub data: Vec<Integer>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![Integer::new(); n * n] }
    }

    pub fn get(&self, i: usize, j: usize) -> &Integer {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Integer) {
        self.data[i * self.n + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] += v;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut out = IntMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(perm[i], perm[j]).clone());
            }
        }
        out
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|v| v.to_f64()).collect()
    }
}

/// Greedy minimum-degree ordering on the sparsity pattern (symmetric).
/// Returns the elimination order; ties broken by index for determinism.
fn min_degree_order(m: &IntMatrix) -> Vec<usize> {
    let n = m.n;
    let mut adj: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j && (*m.get(i, j) != 0 || *m.get(j, i) != 0) {
                adj[i].insert(j);
            }
        }
    }
    let mut alive: Vec<bool> = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (adj[v].len(), v))
            .expect("vertex remains");
        order.push(v);
        alive[v] = false;
        let neigh: Vec<usize> = adj[v].iter().copied().filter(|&u| alive[u]).collect();
        for &u in &neigh {
            adj[u].remove(&v);
        }
        // Simulate fill-in.
        for (ai, &u) in neigh.iter().enumerate() {
            for &w in &neigh[ai + 1..] {
                adj[u].insert(w);
                adj[w].insert(u);
            }
        }
    }
    order
}

/// Exact determinant by Bareiss fraction-free elimination with partial
/// pivoting by row swap (sign tracked) and zero-skip inner loops.
pub fn bareiss_det(m: &IntMatrix) -> Integer {
    bareiss_det_ordered(m, &(0..m.n).collect::<Vec<_>>())
}

fn bareiss_det_ordered(m: &IntMatrix, order: &[usize]) -> Integer {
    let n = m.n;
    if n == 0 {
        return Integer::from(1);
    }
    let mut a = m.permuted(order).data;
    let mut sign = 1i32;
    let mut prev = Integer::from(1);
    let idx = |i: usize, j: usize| i * n + j;
    for k in 0..n - 1 {
        if a[idx(k, k)] == 0 {
            // Pivot search below row k.
            match (k + 1..n).find(|&r| a[idx(r, k)] != 0) {
                Some(r) => {
                    for j in 0..n {
                        a.swap(idx(k, j), idx(r, j));
                    }
                    sign = -sign;
                }
                None => return Integer::new(), // singular
            }
        }
        let pivot = a[idx(k, k)].clone();
        for i in k + 1..n {
            if a[idx(i, k)] == 0 {
                // Row untouched except for the exact rescale division.
                for j in k + 1..n {
                    if a[idx(i, j)] != 0 {
                        let v = Integer::from(&a[idx(i, j)] * &pivot);
                        a[idx(i, j)] = v.div_exact(&prev);
                    }
                }
                continue;
            }
            let lower = a[idx(i, k)].clone();
            for j in k + 1..n {
                let mut v = Integer::from(&a[idx(i, j)] * &pivot);
                v -= Integer::from(&lower * &a[idx(k, j)]);
                a[idx(i, j)] = v.div_exact(&prev);
            }
            a[idx(i, k)] = Integer::new();
        }
        prev = pivot;
    }
    let mut det = a[idx(n - 1, n - 1)].clone();
    if sign < 0 {
        det = -det;
    }
    det
}

/// Monic characteristic polynomial det(λI − m), exact.
pub fn charpoly_direct(m: &IntMatrix) -> IntPoly {
    assert!(m.data.len() == m.n * m.n, "square matrix required");
    let d = m.n;
    if d == 0 {
        return IntPoly::one();
    }
    // Good elimination order computed once from the sparsity pattern
    // (diagonal shifted by λ never removes off-diagonal structure).
    let order = min_degree_order(m);
    let mut values = Vec::with_capacity(d + 1);
    for x in 0..=d as i64 {
        let mut shifted = IntMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                let mut v = -m.get(i, j).clone();
                if i == j {
                    v += x;
                }
                shifted.set(i, j, v);
            }
        }
        values.push(bareiss_det_ordered(&shifted, &order));
    }
    interpolate_integer_nodes(&values)
}

/// Exact polynomial through (i, values[i]) for i = 0..values.len()-1, via
/// Newton divided differences over the rationals; the result must be an
/// integer polynomial (it is for determinants of integer matrices).
fn interpolate_integer_nodes(values: &[Integer]) -> IntPoly {
    let n = values.len();
    // Divided differences on nodes 0..n-1.
    let mut dd: Vec<Rational> = values.iter().map(|v| Rational::from(v)).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = Rational::from(&dd[i] - &dd[i - 1]);
            dd[i] = num / Rational::from(level as i64);
        }
    }
    // Expand Newton form Σ dd[i] Π_{j<i} (λ − j).
    let mut acc: Vec<Rational> = vec![Rational::new(); n];
    let mut basis: Vec<Rational> = vec![Rational::new(); n];
    basis[0] = Rational::from(1);
    let mut blen = 1;
    for (i, c) in dd.iter().enumerate() {
        for (a, b) in acc.iter_mut().zip(basis.iter()).take(blen) {
            *a += Rational::from(b * c);
        }
        if i + 1 < n {
            // basis *= (λ − i)
            for k in (0..blen).rev() {
                let b = basis[k].clone();
                basis[k + 1] += &b;
                basis[k] = b * Rational::from(-(i as i64));
            }
            blen += 1;
        }
    }
    let coeffs: Vec<Integer> = acc
        .into_iter()
        .map(|r| {
            assert!(r.denom() == &1, "interpolant must be integral");
            r.numer().clone()
        })
        .collect();
    IntPoly::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(n: usize, rows: &[&[i64]]) -> IntMatrix {
        let mut m = IntMatrix::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, Integer::from(v));
            }
        }
        m
    }

    #[test]
    fn det_small() {
        let m = mat(3, &[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(bareiss_det(&m), 4);
    }

    #[test]
    fn det_singular() {
        let m = mat(2, &[&[1, 2], &[2, 4]]);
        assert_eq!(bareiss_det(&m), 0);
    }

    #[test]
    fn charpoly_zero_matrix() {
        assert_eq!(charpoly_direct(&IntMatrix::zeros(2)), IntPoly::from_i64s(&[0, 0, 1]));
    }

    #[test]
    fn charpoly_diagonal() {
        let m = mat(2, &[&[1, 0], &[0, 3]]);
        // (λ−1)(λ−3) = λ²−4λ+3
        assert_eq!(charpoly_direct(&m), IntPoly::from_i64s(&[3, -4, 1]));
    }

    #[test]
    fn charpoly_permutation_similarity() {
        let m = mat(3, &[&[2, -1, 0], &[-1, 3, -2], &[0, -2, 5]]);
        let p = m.permuted(&[2, 0, 1]);
        assert_eq!(charpoly_direct(&m), charpoly_direct(&p));
    }
}
