//! Explicit 3x3 Green tensors.
//!
//! These exist to check the scalar kernels in the parent module: the free
//! tensors are assembled from `f`, `g` and the dyad structure, the mirror
//! integrand applies both curls to a plane wave component by component.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::fg;

pub type Vec3 = [f64; 3];
pub type Mat3 = [[f64; 3]; 3];
pub type CVec3 = [Complex64; 3];
pub type CMat3 = [[Complex64; 3]; 3];

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

pub fn identity() -> Mat3 {
    [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
}

pub fn outer(a: &Vec3, b: &Vec3) -> Mat3 {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = a[i] * b[j];
        }
    }
    m
}

/// The dyadic `e x I`, i.e. the matrix of `v -> e x v`.
pub fn cross_matrix(e: &Vec3) -> Mat3 {
    let mut m = [[0.0; 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = (0..3).map(|k| levi_civita(i, k, j) * e[k]).sum();
        }
    }
    m
}

pub fn matmul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    m
}

pub fn trace(a: &Mat3) -> f64 {
    a[0][0] + a[1][1] + a[2][2]
}

pub fn transpose(a: &Mat3) -> Mat3 {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = a[j][i];
        }
    }
    m
}

fn scale(a: &Mat3, s: f64) -> Mat3 {
    a.map(|row| row.map(|v| v * s))
}

fn separation(r_a: &Vec3, r_b: &Vec3) -> (f64, Vec3) {
    let d = [r_a[0] - r_b[0], r_a[1] - r_b[1], r_a[2] - r_b[2]];
    let l = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    (l, d.map(|v| v / l))
}

/// `G_mm0(r_a, r_b, i xi) = (xi^2 / c^2) G0`, written out so that `xi = 0`
/// is regular.
pub fn free_gmm(r_a: &Vec3, r_b: &Vec3, xi: f64, c: f64) -> Mat3 {
    let (l, e) = separation(r_a, r_b);
    let x = l * xi / c;
    let (f, g) = fg(x);
    let pref = (-x).exp() / (4.0 * PI * l.powi(3));
    let iso = scale(&identity(), f);
    let rad = scale(&outer(&e, &e), g);
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = pref * (iso[i][j] - rad[i][j]);
        }
    }
    m
}

/// `G_me0(r_a, r_b, i xi) = (xi / 4 pi c l^2)(1 + l xi / c) e^{-l xi / c} e_l x I`.
pub fn free_gme(r_a: &Vec3, r_b: &Vec3, xi: f64, c: f64) -> Mat3 {
    let (l, e) = separation(r_a, r_b);
    let x = l * xi / c;
    let pref = xi / (4.0 * PI * c * l * l) * (1.0 + x) * (-x).exp();
    scale(&cross_matrix(&e), pref)
}

/// `G_em0(r_a, r_b, i xi) = -G_me0(r_a, r_b, i xi)`.
pub fn free_gem(r_a: &Vec3, r_b: &Vec3, xi: f64, c: f64) -> Mat3 {
    scale(&free_gme(r_a, r_b, xi, c), -1.0)
}

/// `Tr[G_mm0(a, b) . G_mm0(b, a)]` by matrix multiplication.
pub fn brute_trace_gmm_gmm(r_a: &Vec3, r_b: &Vec3, xi: f64, c: f64) -> f64 {
    trace(&matmul(
        &free_gmm(r_a, r_b, xi, c),
        &free_gmm(r_b, r_a, xi, c),
    ))
}

/// `Tr[G_em0(a, b) . G_me0(b, a)]` by matrix multiplication.
pub fn brute_trace_gem_gme(r_a: &Vec3, r_b: &Vec3, xi: f64, c: f64) -> f64 {
    trace(&matmul(
        &free_gem(r_a, r_b, xi, c),
        &free_gme(r_b, r_a, xi, c),
    ))
}

fn c_outer(a: &CVec3, b: &CVec3) -> CMat3 {
    let mut m = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = a[i] * b[j];
        }
    }
    m
}

/// `(a x T)_ij = eps_ikl a_k T_lj`.
#[allow(clippy::needless_range_loop)]
fn cross_left(a: &CVec3, t: &CMat3) -> CMat3 {
    let mut m = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let e = levi_civita(i, k, l);
                    if e != 0.0 {
                        m[i][j] += a[k] * t[l][j] * e;
                    }
                }
            }
        }
    }
    m
}

/// `(T x b)_ij = eps_jkl T_ik b_l`.
#[allow(clippy::needless_range_loop)]
fn cross_right(t: &CMat3, b: &CVec3) -> CMat3 {
    let mut m = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let e = levi_civita(j, k, l);
                    if e != 0.0 {
                        m[i][j] += t[i][k] * b[l] * e;
                    }
                }
            }
        }
    }
    m
}

/// Trace of `curl x [e_p+ e_p- - e_s e_s] x curl'` for one plane-wave
/// component of the mirror Green tensor, with in-plane wave vector of
/// length `q` at azimuth `phi`. The exponential and the `1/b` measure are
/// left to the caller.
///
/// The curl on the first argument brings down `i q+`, the curl on the
/// second `-i q-`, where `q+- = q +- i b e_z`.
pub fn mirror_plane_wave_gmm_trace(q: f64, phi: f64, xi: f64, c: f64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let re = |v: f64| Complex64::new(v, 0.0);
    let b = (q * q + xi * xi / (c * c)).sqrt();
    let e_q = [phi.cos(), phi.sin(), 0.0];
    let e_z = [0.0, 0.0, 1.0];
    // e_s = e_q x e_z
    let e_s = [e_q[1], -e_q[0], 0.0].map(re);
    let norm = c / xi;
    let e_p = |sign: f64| -> CVec3 {
        [0, 1, 2].map(|k| (-i * q * e_z[k] - re(sign * b * e_q[k])) * norm)
    };
    let e_p_plus = e_p(1.0);
    let e_p_minus = e_p(-1.0);
    let mut dyad = c_outer(&e_p_plus, &e_p_minus);
    let ss = c_outer(&e_s, &e_s);
    for r in 0..3 {
        for s in 0..3 {
            dyad[r][s] -= ss[r][s];
        }
    }
    let q_plus: CVec3 = [0, 1, 2].map(|k| re(q * e_q[k]) + i * b * e_z[k]);
    let q_minus: CVec3 = [0, 1, 2].map(|k| re(q * e_q[k]) - i * b * e_z[k]);
    let left = q_plus.map(|v| i * v);
    let right = q_minus.map(|v| -i * v);
    let curled = cross_right(&cross_left(&left, &dyad), &right);
    curled[0][0] + curled[1][1] + curled[2][2]
}
