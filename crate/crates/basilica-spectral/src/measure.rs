//! The empirical spectral measure of G_n and its limit. The eigenvalue set
//! splits by the level k at which each eigenvalue first appears (a root of
//! γ_k); every root of γ_k carries the same weight S_{n−k}/(V_n − 2), which
//! converges to 2^(−k)/6 as n grows.

use crate::recursion::{
    degree_gamma, multiplicity_s_big, rho_phi, vertex_count, Sequences,
};
use crate::sturm::{isolate_spectral_roots, refine_to_width, IsolatingInterval};
use rug::ops::Pow;
use rug::{Integer, Rational};

#[derive(Clone, Debug)]
pub struct Atom {
    /// Level at which this eigenvalue first appears (its γ index).
    pub level_k: usize,
    pub root: IsolatingInterval,
    pub weight: Rational,
}

/// Weight of one level-k atom of the measure for G_n.
pub fn atom_weight(n: usize, k: usize) -> Rational {
    assert!(k >= 1 && k <= n);
    Rational::from((
        multiplicity_s_big((n - k) as u64),
        Integer::from(vertex_count(n) - 2),
    ))
}

/// All atoms of the spectral measure of G_n, roots isolated to width `eps`,
/// sorted by root position. Levels with S_{n−k} = 0 contribute nothing.
pub fn spectral_measure(seq: &mut Sequences, n: usize, eps: &Rational) -> Vec<Atom> {
    let mut atoms = Vec::new();
    for k in 1..=n {
        let w = atom_weight(n, k);
        if w == 0u32 {
            continue;
        }
        let gamma = seq.gamma(k);
        for iv in isolate_spectral_roots(&gamma) {
            let root = refine_to_width(&gamma, &iv, eps);
            atoms.push(Atom { level_k: k, root, weight: w.clone() });
        }
    }
    atoms.sort_by(|a, b| a.root.lo.cmp(&b.root.lo));
    atoms
}

/// Total mass of the measure: must be exactly 1, since
/// Σ_k S_{n−k}·deg γ_k = deg c_n = V_n − 2.
pub fn total_mass(atoms: &[Atom]) -> Rational {
    atoms.iter().fold(Rational::new(), |acc, a| acc + &a.weight)
}

/// Limiting weight of a level-k atom.
pub fn limit_weight(k: usize) -> Rational {
    Rational::from((1u32, 6u32)) / (Integer::from(1) << (k as u32))
}

/// The convergence bound |S_{n−k}/(V_n−2) − 2^(−k)/6| ≤ (n+5)/2^(n+1),
/// checked exactly in rational arithmetic.
pub fn weight_bound_holds(n: usize, k: usize) -> bool {
    let diff = (atom_weight(n, k) - limit_weight(k)).abs();
    let bound = Rational::from((
        Integer::from(n as u64 + 5),
        Integer::from(1) << (n as u32 + 1),
    ));
    diff <= bound
}

/// Σ_{k=m+1}^{n} S_{n−k}·ρ^k by direct summation.
pub fn tail_sum_brute(n: usize, m: usize, rho: &Rational) -> Rational {
    assert!(m <= n);
    let mut acc = Rational::new();
    for k in (m + 1)..=n {
        let rk = rho.clone().pow(k as u32);
        acc += rk * Rational::from(multiplicity_s_big((n - k) as u64));
    }
    acc
}

/// The closed form of the same sum, as a polynomial in ρ scaled by 36:
/// ρ^(m+1)·[2^(n−m+2)ρ(ρ+1) + (5ρ² − 4ρ − 18)(−1)^(n−m)
///          + 6ρ(2 − ρ)(−1)^(n−m)(n−m) + 9(2 − ρ²)].
///
/// This equals 36·Σ S_{n−k}ρ^k only when ρ is a root of ρ³ − ρ² − 2ρ + 1
/// (matching the leading geometric term forces ρ(ρ+1)(2−ρ) = 1), which is
/// how it is applied: the tail is evaluated at those roots. The identity is
/// therefore a congruence modulo the cubic, checked by
/// `tail_sum_identity_holds`.
pub fn tail_sum_closed_poly(n: usize, m: usize) -> crate::poly::IntPoly {
    use crate::poly::IntPoly;
    assert!(m <= n);
    let d = (n - m) as i64;
    let sign = if d % 2 == 0 { 1i64 } else { -1 };
    let rho = IntPoly::lambda();
    let pow2 = Integer::from(1) << (d as u32 + 2);
    let term1 = rho.mul(&rho.add(&IntPoly::one())).scale(&pow2);
    let term2 = IntPoly::from_i64s(&[-18 * sign, -4 * sign, 5 * sign]);
    let term3 = rho
        .mul(&IntPoly::from_i64s(&[2, -1]))
        .scale(&Integer::from(6 * sign * d));
    let term4 = IntPoly::from_i64s(&[18, 0, -9]);
    let bracket = term1.add(&term2).add(&term3).add(&term4);
    IntPoly::lambda().pow(m as u64 + 1).mul(&bracket)
}

/// 36·Σ_{k=m+1}^{n} S_{n−k}·ρ^k as a polynomial in ρ.
pub fn tail_sum_brute_poly(n: usize, m: usize) -> crate::poly::IntPoly {
    let mut coeffs = vec![Integer::from(0); n + 1];
    for k in (m + 1)..=n {
        coeffs[k] = multiplicity_s_big((n - k) as u64) * 36u32;
    }
    crate::poly::IntPoly::from_coeffs(coeffs)
}

/// Congruence of the closed form with the direct sum modulo the cubic.
pub fn tail_sum_identity_holds(n: usize, m: usize) -> bool {
    let cubic = crate::poly::IntPoly::from_i64s(&[1, -2, -1, 1]);
    let diff = tail_sum_closed_poly(n, m).sub(&tail_sum_brute_poly(n, m));
    // The cubic is monic, so the pseudo-remainder is the true remainder.
    diff.pseudo_rem(&cubic).is_zero()
}

/// Mass the measure of G_n puts on eigenvalues of level ≤ m, exactly:
/// Σ_{k=1}^{min(m,n)} S_{n−k}·deg γ_k/(V_n − 2). Needs only degrees and
/// multiplicities, so it scales to levels whose polynomials are out of reach.
pub fn mass_up_to_level(n: usize, m: usize) -> Rational {
    let mut num = Integer::from(0);
    for k in 1..=m.min(n) {
        num += multiplicity_s_big((n - k) as u64) * Integer::from(degree_gamma(k));
    }
    Rational::from((num, Integer::from(vertex_count(n) - 2)))
}

/// Limiting proportion of mass captured by levels ≤ m:
/// 1 − (1/(3√7))·Σ_j cos(φ + 2jπ/3)·ρ_j²(ρ_j + 1)(ρ_j/2)^m.
pub fn limit_proportion(m: usize) -> f64 {
    let (rho, phi) = rho_phi().expect("cubic root isolation");
    let mut tail = 0.0;
    for (j, r) in rho.iter().enumerate() {
        let angle = phi + 2.0 * std::f64::consts::PI * (j as f64) / 3.0;
        tail += angle.cos() * r * r * (r + 1.0) * (r / 2.0).powi(m as i32);
    }
    1.0 - tail / (3.0 * 7f64.sqrt())
}

/// Smallest m whose uncaptured limiting mass bound (12/√7)(|ρ_max|/2)^(m+1)
/// drops below eps.
pub fn mass_horizon(eps: f64) -> usize {
    assert!(eps > 0.0);
    let (rho, _) = rho_phi().expect("cubic root isolation");
    let r = rho.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs())) / 2.0;
    let lead = 12.0 / 7f64.sqrt();
    let mut m = 0usize;
    while lead * r.powi(m as i32 + 1) >= eps {
        m += 1;
        assert!(m < 10_000, "horizon search runaway");
    }
    m
}

/// CSV rows: root_lo,root_hi,level_k,weight_num,weight_den.
pub fn measure_csv(atoms: &[Atom]) -> String {
    let mut out = String::from("root_lo,root_hi,level_k,weight_num,weight_den\n");
    for a in atoms {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            a.root.lo,
            a.root.hi,
            a.level_k,
            a.weight.numer(),
            a.weight.denom()
        ));
    }
    out
}

/// Stem plot: one vertical line per atom, height = weight.
pub fn measure_svg(atoms: &[Atom]) -> String {
    let wmax = atoms
        .iter()
        .map(|a| a.weight.to_f64())
        .fold(0.0f64, f64::max)
        .max(1e-12);
    let mut c = crate::svg::Canvas::new(800.0, 400.0, (-0.3, 8.3), (0.0, wmax * 1.1));
    c.axes();
    for a in atoms {
        let x = a.root.midpoint().to_f64();
        let w = a.weight.to_f64();
        c.line(x, 0.0, x, w, "steelblue", 1.2);
        c.circle(x, w, 2.0, "steelblue");
    }
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measure_sums_to_one() {
        let mut seq = Sequences::without_cache();
        for n in [4usize, 6, 7] {
            let atoms = spectral_measure(&mut seq, n, &Rational::from((1, 1 << 20)));
            assert_eq!(total_mass(&atoms), 1u32, "level {}", n);
            let expected: usize = (1..=n)
                .filter(|&k| multiplicity_s_big((n - k) as u64) != 0u32)
                .map(|k| degree_gamma(k) as usize)
                .sum();
            assert_eq!(atoms.len(), expected, "level {}", n);
        }
    }

    #[test]
    fn atoms_live_inside_the_spectrum() {
        let mut seq = Sequences::without_cache();
        let eps = Rational::from((1, 1 << 20));
        let atoms = spectral_measure(&mut seq, 6, &eps);
        // The Laplacian of a degree-4 graph has spectrum inside [0, 8];
        // interval endpoints may overhang by the isolation width.
        for a in &atoms {
            assert!(a.root.lo >= Rational::new() - &eps);
            assert!(a.root.hi <= Rational::from(8) + &eps);
        }
    }

    #[test]
    fn weight_bound_exact() {
        for n in 2..=24 {
            for k in 1..=n {
                assert!(weight_bound_holds(n, k), "n = {}, k = {}", n, k);
            }
        }
    }

    #[test]
    fn tail_sum_closed_form_congruent_to_brute() {
        for n in 1..=16 {
            for m in 0..n {
                assert!(tail_sum_identity_holds(n, m), "n = {}, m = {}", n, m);
            }
        }
        // The congruence is not an equality away from the cubic's roots.
        let diff = tail_sum_closed_poly(4, 0).sub(&tail_sum_brute_poly(4, 0));
        assert!(!diff.is_zero());
        // At a root of the cubic the two agree numerically.
        let (rho, _) = rho_phi().unwrap();
        let brute: f64 = (1..=6usize)
            .map(|k| multiplicity_s_big((6 - k) as u64).to_f64() * rho[0].powi(k as i32))
            .sum();
        let closed = {
            let p = tail_sum_closed_poly(6, 0);
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| c.to_f64() * rho[0].powi(i as i32))
                .sum::<f64>()
                / 36.0
        };
        assert!((brute - closed).abs() < 1e-6, "{} vs {}", brute, closed);
    }

    #[test]
    fn limit_proportion_matches_degree_series() {
        // Captured limit mass = Σ_{k≤m} deg γ_k / (6·2^k); compare with the
        // closed form, and check convergence to 1.
        for m in 1..=24 {
            let direct: f64 =
                (1..=m).map(|k| degree_gamma(k) as f64 / (6.0 * 2f64.powi(k as i32))).sum();
            let cf = limit_proportion(m);
            assert!((cf - direct).abs() < 1e-9, "m = {}: {} vs {}", m, cf, direct);
        }
        assert!(limit_proportion(200) > 1.0 - 1e-8);
        assert!(limit_proportion(1) < 0.9);
    }

    #[test]
    fn finite_mass_approaches_limit_proportion() {
        // Exact finite-level mass on levels ≤ m against the limiting value.
        for n in [18usize, 22] {
            let exact = mass_up_to_level(n, 6).to_f64();
            let lim = limit_proportion(6);
            assert!((exact - lim).abs() < 0.05, "n = {}: {} vs {}", n, exact, lim);
        }
    }

    #[test]
    fn horizon_is_monotone_and_sound() {
        let m1 = mass_horizon(1e-2);
        let m2 = mass_horizon(1e-4);
        assert!(m2 > m1);
        assert!(1.0 - limit_proportion(m2) < 1e-4 * 1.5);
    }

    #[test]
    fn csv_shape() {
        let mut seq = Sequences::without_cache();
        let atoms = spectral_measure(&mut seq, 4, &Rational::from((1, 1 << 20)));
        let csv = measure_csv(&atoms);
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines[0], "root_lo,root_hi,level_k,weight_num,weight_den");
        assert_eq!(lines.len(), atoms.len() + 1);
        assert!(lines[1].split(',').count() == 5);
    }
}
