//! Brute-force statevector simulation of canonical amplitude estimation.
//!
//! Independent reference for [`ae_outcome_dist`](super::ae_outcome_dist): it
//! builds the actual circuit on a two-atom value register plus one ancilla
//! (`V = R (U ⊗ I)`), forms the Grover operator `Q = -V S₀ V† S_χ` as a dense
//! matrix, prepares `Σ_j |j> ⊗ Q^j V|0>` over an `m`-point phase register,
//! applies the inverse QFT and reads off outcome probabilities. No eigen-
//! decomposition or closed form is used.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::ae_outcome_dist;
use super::amplify::check_prob;
use crate::error::Result;

const DIM: usize = 4;

type Mat = [[Complex64; DIM]; DIM];
type Vector = [Complex64; DIM];

fn zero() -> Mat {
    [[Complex64::new(0.0, 0.0); DIM]; DIM]
}

fn identity() -> Mat {
    let mut m = zero();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    m
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let mut c = zero();
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

fn apply(a: &Mat, v: &Vector) -> Vector {
    let mut out = [Complex64::new(0.0, 0.0); DIM];
    for i in 0..DIM {
        for k in 0..DIM {
            out[i] += a[i][k] * v[k];
        }
    }
    out
}

fn adjoint(a: &Mat) -> Mat {
    let mut c = zero();
    for i in 0..DIM {
        for j in 0..DIM {
            c[i][j] = a[j][i].conj();
        }
    }
    c
}

// basis index = 2 * value_register + ancilla
fn idx(value: usize, ancilla: usize) -> usize {
    2 * value + ancilla
}

/// `V = R (U ⊗ I)`: `U` loads the distribution `{0: 1 - p, 1: p}` into the
/// value register; `R` rotates the ancilla by `arcsin(√x)` for value `x`,
/// which for `x ∈ {0, 1}` is identity or a bit flip.
fn state_prep(p: f64) -> Mat {
    let (c, s) = ((1.0 - p).sqrt(), p.sqrt());
    let mut u = zero();
    for a in 0..2 {
        u[idx(0, a)][idx(0, a)] = Complex64::new(c, 0.0);
        u[idx(1, a)][idx(0, a)] = Complex64::new(s, 0.0);
        u[idx(0, a)][idx(1, a)] = Complex64::new(-s, 0.0);
        u[idx(1, a)][idx(1, a)] = Complex64::new(c, 0.0);
    }
    let mut r = zero();
    r[idx(0, 0)][idx(0, 0)] = Complex64::new(1.0, 0.0);
    r[idx(0, 1)][idx(0, 1)] = Complex64::new(1.0, 0.0);
    r[idx(1, 1)][idx(1, 0)] = Complex64::new(1.0, 0.0);
    r[idx(1, 0)][idx(1, 1)] = Complex64::new(1.0, 0.0);
    mul(&r, &u)
}

fn grover(v: &Mat) -> Mat {
    let mut s_chi = identity();
    for value in 0..2 {
        s_chi[idx(value, 1)][idx(value, 1)] = Complex64::new(-1.0, 0.0);
    }
    let mut s_zero = identity();
    s_zero[0][0] = Complex64::new(-1.0, 0.0);
    let q = mul(&mul(&mul(v, &s_zero), &adjoint(v)), &s_chi);
    let mut neg = zero();
    for i in 0..DIM {
        for j in 0..DIM {
            neg[i][j] = -q[i][j];
        }
    }
    neg
}

/// Outcome probabilities of the phase register after canonical amplitude
/// estimation on amplitude `p` with an `m`-point register.
pub fn qpe_outcome_dist(p: f64, m: usize) -> Result<Vec<f64>> {
    check_prob(p)?;
    let v = state_prep(p);
    let q = grover(&v);
    let mut start = [Complex64::new(0.0, 0.0); DIM];
    start[0] = Complex64::new(1.0, 0.0);
    // branch j of the register holds Q^j V|0>
    let mut branches = Vec::with_capacity(m);
    let mut cur = apply(&v, &start);
    for _ in 0..m {
        branches.push(cur);
        cur = apply(&q, &cur);
    }
    let norm = 1.0 / m as f64;
    let mut probs = Vec::with_capacity(m);
    for y in 0..m {
        let mut amp = [Complex64::new(0.0, 0.0); DIM];
        for (j, branch) in branches.iter().enumerate() {
            let phase = Complex64::from_polar(norm, -2.0 * PI * (j * y) as f64 / m as f64);
            for s in 0..DIM {
                amp[s] += phase * branch[s];
            }
        }
        probs.push(amp.iter().map(|a| a.norm_sqr()).sum());
    }
    Ok(probs)
}

pub fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

/// Amplitudes used by the validation sweep: the endpoints, on-grid angles and
/// generic off-grid values.
pub fn validation_amplitudes() -> Vec<f64> {
    let grid = |k: f64, m: f64| (PI * k / m).sin().powi(2);
    vec![
        0.0,
        1.0,
        0.5,
        grid(1.0, 8.0),
        grid(1.0, 16.0),
        grid(3.0, 16.0),
        grid(5.0, 32.0),
        grid(1.0, 4.0 * 3.0),
        0.001,
        0.01,
        0.05,
        0.1,
        0.2,
        0.3,
        0.42,
        0.6,
        0.7,
        0.85,
        0.9,
        0.99,
    ]
}

/// Largest total-variation distance between the closed-form outcome law and
/// the statevector simulation, over `m ∈ {2, 4, ..., max_m}` and the
/// validation amplitudes.
pub fn max_tv_distance(max_m: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    let mut m = 2;
    while m <= max_m {
        for p in validation_amplitudes() {
            let exact = ae_outcome_dist(p, m as u64)?;
            let brute = qpe_outcome_dist(p, m)?;
            worst = worst.max(total_variation(&exact, &brute));
        }
        m *= 2;
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grover_is_unitary() {
        let q = grover(&state_prep(0.3));
        let prod = mul(&q, &adjoint(&q));
        for (i, row) in prod.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((v - Complex64::new(want, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn good_amplitude_is_p() {
        for p in [0.0, 0.2, 0.7, 1.0] {
            let mut e = [Complex64::new(0.0, 0.0); DIM];
            e[0] = Complex64::new(1.0, 0.0);
            let s = apply(&state_prep(p), &e);
            let good: f64 = (0..2).map(|v| s[idx(v, 1)].norm_sqr()).sum();
            assert!((good - p).abs() < 1e-15);
        }
    }

    #[test]
    fn half_amplitude_m4() {
        let d = qpe_outcome_dist(0.5, 4).unwrap();
        assert!((d[1] - 0.5).abs() < 1e-12);
        assert!((d[3] - 0.5).abs() < 1e-12);
        let tv = total_variation(&d, &ae_outcome_dist(0.5, 4).unwrap());
        assert!(tv <= 1e-10);
    }

    #[test]
    fn zero_amplitude_m8() {
        let d = qpe_outcome_dist(0.0, 8).unwrap();
        assert!((d[0] - 1.0).abs() < 1e-12);
        assert!(total_variation(&d, &ae_outcome_dist(0.0, 8).unwrap()) < 1e-12);
    }

    #[test]
    fn closed_form_matches_brute_force() {
        assert!(max_tv_distance(32).unwrap() <= 1e-9);
    }
}
